use super::{LinearFieldSystem, WaveSample};
use crate::exactmath::{ExactMatrix, Ring, GR};

fn covector(p_t: &GR, p: &[GR; 3]) -> [GR; 4] {
    [p_t.clone(), p[0].clone(), p[1].clone(), p[2].clone()]
}

/// Amplitudes `a` such that `a·exp(i(p_t t + p·x))` solves the homogeneous
/// system: a basis of the nullspace of the wave symbol.
pub fn plane_wave(sys: &LinearFieldSystem, p_t: &GR, p: &[GR; 3]) -> Vec<ExactMatrix<GR>> {
    sys.symbol.eval_wave(&covector(p_t, p)).nullspace()
}

/// Whether the boosted amplitude `Λ_F(v)·a` with the boosted frequency
/// `p_t + v·p` is again annihilated by the wave symbol.
pub fn boosted_solution_holds(
    sys: &LinearFieldSystem,
    amp: &ExactMatrix<GR>,
    p_t: &GR,
    p: &[GR; 3],
    v: &[GR; 3],
) -> bool {
    let shifted = (0..3).fold(p_t.clone(), |acc, i| acc.add_ref(&v[i].mul_ref(&p[i])));
    let moved = sys.field.boost.eval(v).mul(amp);
    sys.symbol
        .eval_wave(&covector(&shifted, p))
        .mul(&moved)
        .is_zero()
}

/// Outcome of the boosted-solution property over a batch of samples.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoostedSolutionReport {
    pub samples: usize,
    /// Plane-wave amplitudes that were boosted and re-checked.
    pub amplitudes: usize,
    /// Amplitudes whose boosted image fails the boosted symbol.
    pub failures: usize,
    /// Samples where the solution-space dimension changed under the boost.
    pub dimension_changes: usize,
}

impl BoostedSolutionReport {
    pub fn holds(&self) -> bool {
        self.failures == 0 && self.dimension_changes == 0
    }
}

/// Runs the boosted-solution property on the homogeneous part of `sys`.
pub fn boosted_solution_suite(
    sys: &LinearFieldSystem,
    samples: &[WaveSample],
) -> BoostedSolutionReport {
    let mut out = BoostedSolutionReport {
        samples: samples.len(),
        ..Default::default()
    };
    for s in samples {
        let sols = plane_wave(sys, &s.p_t, &s.p);
        let shifted = (0..3).fold(s.p_t.clone(), |acc, i| {
            acc.add_ref(&s.v[i].mul_ref(&s.p[i]))
        });
        if plane_wave(sys, &shifted, &s.p).len() != sols.len() {
            out.dimension_changes += 1;
        }
        out.amplitudes += sols.len();
        out.failures += sols
            .iter()
            .filter(|a| !boosted_solution_holds(sys, a, &s.p_t, &s.p, &s.v))
            .count();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldsys::catalogue;

    fn p(x: i64, y: i64, z: i64) -> [GR; 3] {
        [GR::int(x), GR::int(y), GR::int(z)]
    }

    #[test]
    fn zero_covector_gives_the_full_space() {
        let s = catalogue("extended").unwrap();
        assert_eq!(
            plane_wave(&s, &GR::zero(), &p(0, 0, 0)).len(),
            s.field.dim()
        );
    }

    #[test]
    fn maxwell_light_cone_has_two_polarizations() {
        let s = catalogue("maxwell").unwrap();
        assert_eq!(plane_wave(&s, &GR::one(), &p(1, 0, 0)).len(), 2);
        assert!(plane_wave(&s, &GR::int(2), &p(1, 0, 0)).is_empty());
    }

    #[test]
    fn magnetic_waves_are_transverse_in_h() {
        let s = catalogue("magnetic").unwrap();
        for amp in plane_wave(&s, &GR::frac(3, 7), &p(0, 0, 1)) {
            // p·H_m = H_m.z
            assert!(amp.get(2, 0).is_zero());
        }
    }
}

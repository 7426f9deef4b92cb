//! Numerical check that contracted relativistic waves approach solutions of
//! the Galilean systems as ε → 0.
//!
//! A probe starts from a relativistic potential wave `A·exp(i(k₀x₀ + k·x))`
//! that solves `□A = 0` with `∂₀A⁰ + ∇·A = 0` exactly at each ε, with
//! `x₀ = t/ε` and `k₀ = εΩ`. The amplitude is mapped to Galilean potentials
//! by the contraction matrix `V(ε)`, strengths are formed as
//! `R = ∇A⁴, W = ∇×A, N = −∂_tA − ∇A⁰, B = ∂_tA⁴`, and the target system's
//! homogeneous equations are evaluated on them at fixed sample points.
//!
//! The same pipeline runs over [`EpsSeries`] to give the exact leading
//! ε-order of every residual, which fixes the slope the float fit must show.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::contraction::ContractionScheme;
use crate::exactmath::{rat, EpsSeries, ExactMatrix, Field, Ring, GR};
use crate::fieldsys::{catalogue, LinearFieldSystem};
use crate::par;

pub const SAMPLE_SEED: u64 = 0x06a1_11e1;
pub const SAMPLE_POINTS: usize = 32;
/// Smallest acceptable fitted slope.
pub const MIN_SLOPE: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LimitError {
    #[error("scheme {scheme} is not paired with target {target}")]
    TargetMismatch { scheme: String, target: String },
    #[error("wave does not solve the relativistic system at eps = {eps}: residual {residual:e}")]
    DispersionViolated { eps: f64, residual: f64 },
    #[error("eps values must be strictly decreasing in (0, 1]")]
    InvalidEps,
    #[error("residuals do not decay: slope {slope:.3}")]
    NoConvergence { slope: f64 },
    #[error("wave parameters alpha and omega must be nonzero reals")]
    BadWave,
}

/// Parameters of the probe wave. `alpha` and `omega` fix the covector
/// `k(ε) = (α + ε²Ω²/4α, i(ε²Ω²/4α − α), 0)`, `k₀ = εΩ`, which is null for
/// every ε; `polarization` and `scalar` are the free Galilean amplitudes,
/// the remaining one is fixed by the gauge condition. A nonzero `detune`
/// is added to `k₀` and breaks the dispersion relation.
#[derive(Clone, Debug, PartialEq)]
pub struct NullWave {
    pub alpha: GR,
    pub omega: GR,
    pub polarization: [GR; 3],
    pub scalar: GR,
    pub detune: GR,
}

impl NullWave {
    pub fn generic() -> Self {
        Self {
            alpha: GR::frac(3, 2),
            omega: GR::int(2),
            polarization: [GR::new(rat(1, 1), rat(1, 3)), GR::frac(-2, 5), GR::one()],
            scalar: GR::frac(3, 4),
            detune: GR::zero(),
        }
    }

    pub fn zero() -> Self {
        Self {
            polarization: [GR::zero(), GR::zero(), GR::zero()],
            scalar: GR::zero(),
            ..Self::generic()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitProbe {
    pub scheme: String,
    pub target: String,
    pub eps_values: Vec<f64>,
    pub wave: NullWave,
}

impl LimitProbe {
    pub fn new(scheme: &str, target: &str, eps_values: &[f64]) -> Self {
        Self {
            scheme: scheme.into(),
            target: target.into(),
            eps_values: eps_values.to_vec(),
            wave: NullWave::generic(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualRow {
    pub eps: f64,
    /// Largest residual modulus of each target equation over the samples.
    pub residuals: Vec<(String, f64)>,
}

impl ResidualRow {
    pub fn max(&self) -> f64 {
        self.residuals.iter().map(|r| r.1).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualTable {
    pub scheme: String,
    pub target: String,
    pub rows: Vec<ResidualRow>,
    /// Least-squares slope of `log max residual` against `log ε`; absent
    /// when every residual vanishes exactly.
    pub slope: Option<f64>,
    /// Leading ε-order of the residual from the exact expansion.
    pub expected_order: Option<i32>,
}

impl ResidualTable {
    /// Whitespace-separated `log10 ε  log10 residual` lines for plotting.
    pub fn loglog_text(&self) -> String {
        self.rows
            .iter()
            .map(|r| format!("{:.6} {:.6}\n", r.eps.log10(), r.max().log10()))
            .collect()
    }
}

/// Supported `(scheme, target)` pairs.
pub const PAIRS: [(&str, &str); 3] = [("v1", "magnetic"), ("v2", "electric"), ("v3", "extended")];

/// Target field components as signed potential strengths, following the
/// renames of the reduction lattice.
fn strength_map(target: &str) -> &'static [(&'static str, Strength, i64)] {
    use Strength::*;
    match target {
        "magnetic" => &[("H_m", W, 1), ("E_m", N, -1)],
        "electric" => &[("H_e", W, 1), ("E_e", R, 1)],
        _ => &[("R", R, 1), ("W", W, 1), ("N", N, 1), ("B", B, 1)],
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Strength {
    R,
    W,
    N,
    B,
}

fn check_pair(probe: &LimitProbe) -> Result<(ContractionScheme, LinearFieldSystem), LimitError> {
    let mismatch = || LimitError::TargetMismatch {
        scheme: probe.scheme.clone(),
        target: probe.target.clone(),
    };
    if !PAIRS.contains(&(probe.scheme.as_str(), probe.target.as_str())) {
        return Err(mismatch());
    }
    let scheme = ContractionScheme::by_name(&probe.scheme).ok_or_else(mismatch)?;
    let target = catalogue(&probe.target).map_err(|_| mismatch())?;
    let w = &probe.wave;
    if w.alpha.is_zero() || w.omega.is_zero() || !w.alpha.is_real() || !w.omega.is_real() {
        return Err(LimitError::BadWave);
    }
    Ok((scheme, target))
}

fn check_eps(eps: &[f64]) -> Result<(), LimitError> {
    let in_range = eps.iter().all(|&e| e > 0.0 && e <= 1.0);
    let decreasing = eps.windows(2).all(|w| w[1] < w[0]);
    if eps.is_empty() || !in_range || !decreasing {
        return Err(LimitError::InvalidEps);
    }
    Ok(())
}

/// Arithmetic shared by the exact and the float pipeline.
trait Num: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
}

impl Num for EpsSeries {
    fn add(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
}

impl Num for Complex64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

trait Backend {
    type T: Num;
    fn series(&self, s: &EpsSeries) -> Self::T;
    fn konst(&self, g: &GR) -> Self::T {
        self.series(&EpsSeries::monomial(g.clone(), 0))
    }
    fn eps_pow(&self, k: i32) -> Self::T {
        self.series(&EpsSeries::monomial(GR::one(), k))
    }
}

struct Exact;

impl Backend for Exact {
    type T = EpsSeries;
    fn series(&self, s: &EpsSeries) -> EpsSeries {
        s.clone()
    }
}

struct Float(f64);

impl Backend for Float {
    type T = Complex64;
    fn series(&self, s: &EpsSeries) -> Complex64 {
        let (re, im) = s.eval_f64(self.0);
        Complex64::new(re, im)
    }
}

fn dot<T: Num>(a: &[T], b: &[T], zero: &T) -> T {
    a.iter()
        .zip(b)
        .fold(zero.clone(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// Everything the pipeline produces at one ε.
struct Stage<T> {
    /// `k₀² − k·k` and the Lorentz-gauge residual of the relativistic wave.
    wave_residuals: [T; 2],
    /// Galilean time frequency and spatial covector.
    omega_t: T,
    k: [T; 3],
    /// Target equation rows applied to the strength amplitudes.
    rows: Vec<T>,
}

fn pipeline<B: Backend>(
    b: &B,
    scheme: &ContractionScheme,
    target: &LinearFieldSystem,
    w: &NullWave,
) -> Stage<B::T> {
    let zero = b.konst(&GR::zero());
    let i = b.konst(&GR::i());
    let om = b.konst(&w.omega);
    let inv_om = b.konst(&w.omega.inv().expect("nonzero"));
    let inv_2a = b.konst(&w.alpha.scale(&GR::int(2)).inv().expect("nonzero"));
    // k(ε): polynomial in ε, null with respect to k₀ = εΩ
    let d = EpsSeries::monomial(
        w.omega
            .mul_ref(&w.omega)
            .mul_ref(&w.alpha.scale(&GR::int(4)).inv().expect("nonzero")),
        2,
    );
    let kx = b.series(&d.add_ref(&EpsSeries::monomial(w.alpha.clone(), 0)));
    let ky = b.series(
        &d.sub_ref(&EpsSeries::monomial(w.alpha.clone(), 0))
            .scale(&GR::i()),
    );
    let k = [kx, ky, zero.clone()];
    let k0 = b.eps_pow(1).mul(&om).add(&b.konst(&w.detune));
    let e2 = b.eps_pow(2);

    let pol: Vec<B::T> = w.polarization.iter().map(|p| b.konst(p)).collect();
    let s = b.konst(&w.scalar);
    let kp = dot(&k, &pol, &zero);
    // Galilean amplitude in the scheme's basis, gauge-fixed
    let gal: Vec<B::T> = match scheme.name.as_str() {
        "v1" => {
            // a = pol − c·(1, i, 0) with k·(1, i, 0) = 2α and k·a = −ε²Ωs
            let c = kp.add(&e2.mul(&om).mul(&s)).mul(&inv_2a);
            vec![
                pol[0].sub(&c),
                pol[1].sub(&c.mul(&i)),
                pol[2].clone(),
                s.clone(),
            ]
        }
        "v2" => vec![
            pol[0].clone(),
            pol[1].clone(),
            pol[2].clone(),
            zero.sub(&kp).mul(&inv_om),
        ],
        _ => {
            let half = b.konst(&GR::frac(1, 2));
            let a4 = e2.mul(&om).mul(&s).mul(&half).sub(&kp).mul(&inv_om);
            vec![
                pol[0].clone(),
                pol[1].clone(),
                pol[2].clone(),
                a4,
                s.clone(),
            ]
        }
    };
    let apply = |m: &ExactMatrix<EpsSeries>, v: &[B::T]| -> Vec<B::T> {
        (0..m.rows())
            .map(|r| {
                (0..m.cols()).fold(zero.clone(), |acc, c| {
                    acc.add(&b.series(m.get(r, c)).mul(&v[c]))
                })
            })
            .collect()
    };
    // relativistic amplitude (A, A⁰[, A⁴]) and its checks
    let rel = apply(&scheme.v_inv, &gal);
    let dispersion = k0.mul(&k0).sub(&dot(&k, &k, &zero));
    let gauge = k0.mul(&rel[3]).add(&dot(&k, &rel[..3], &zero));
    // back to Galilean variables, x₀ = t/ε
    let g = apply(&scheme.v, &rel);
    let omega_t = k0.mul(&b.eps_pow(-1));
    let (a, a0, a4) = match scheme.name.as_str() {
        "v1" => (&g[..3], g[3].clone(), zero.clone()),
        "v2" => (&g[..3], zero.clone(), g[3].clone()),
        _ => (&g[..3], g[4].clone(), g[3].clone()),
    };
    let ik: Vec<B::T> = k.iter().map(|x| i.mul(x)).collect();
    let iw = i.mul(&omega_t);
    let cross = |u: &[B::T], v: &[B::T]| -> Vec<B::T> {
        (0..3)
            .map(|c| {
                u[(c + 1) % 3]
                    .mul(&v[(c + 2) % 3])
                    .sub(&u[(c + 2) % 3].mul(&v[(c + 1) % 3]))
            })
            .collect()
    };
    let strength = |st: Strength| -> Vec<B::T> {
        match st {
            Strength::R => ik.iter().map(|x| x.mul(&a4)).collect(),
            Strength::W => cross(&ik, a),
            Strength::N => (0..3)
                .map(|c| zero.sub(&iw.mul(&a[c])).sub(&ik[c].mul(&a0)))
                .collect(),
            Strength::B => vec![iw.mul(&a4)],
        }
    };
    let mut field = vec![zero.clone(); target.field.dim()];
    for (name, st, sign) in strength_map(&target.name) {
        let k = target
            .field
            .index(name)
            .expect("strength table matches the catalogue");
        let sg = b.konst(&GR::int(*sign));
        for (slot, v) in target.field.rep.slots(&[k]).into_iter().zip(strength(*st)) {
            field[slot] = sg.mul(&v);
        }
    }
    // C(iΩ_t, ik)·F
    let q = [iw, ik[0].clone(), ik[1].clone(), ik[2].clone()];
    let mut rows = vec![zero.clone(); target.equation_rows()];
    for (deriv, m) in target.symbol.terms() {
        let mono = (0..4).fold(b.konst(&GR::one()), |acc, mu| {
            (0..deriv[mu]).fold(acc, |x, _| x.mul(&q[mu]))
        });
        for (r, row) in rows.iter_mut().enumerate() {
            let sum = (0..m.cols()).fold(zero.clone(), |acc, c| {
                acc.add(&b.konst(m.get(r, c)).mul(&field[c]))
            });
            *row = row.add(&mono.mul(&sum));
        }
    }
    Stage {
        wave_residuals: [dispersion, gauge],
        omega_t,
        k,
        rows,
    }
}

/// Exact residual rows of the target equations as Laurent polynomials in ε.
pub fn exact_rows(probe: &LimitProbe) -> Result<Vec<(String, EpsSeries)>, LimitError> {
    let (scheme, target) = check_pair(probe)?;
    let st = pipeline(&Exact, &scheme, &target, &probe.wave);
    if st.wave_residuals.iter().any(|r| !r.is_zero()) {
        // reported with ε = 0: the check is symbolic in ε
        return Err(LimitError::DispersionViolated {
            eps: 0.0,
            residual: f64::INFINITY,
        });
    }
    Ok(target.row_names().into_iter().zip(st.rows).collect())
}

/// Float residual rows at one ε, before the plane-wave factor.
pub fn float_rows(probe: &LimitProbe, eps: f64) -> Result<Vec<(String, Complex64)>, LimitError> {
    let (scheme, target) = check_pair(probe)?;
    let st = pipeline(&Float(eps), &scheme, &target, &probe.wave);
    Ok(target.row_names().into_iter().zip(st.rows).collect())
}

/// Leading ε-order of each target equation's residual (`None` when it
/// vanishes identically).
pub fn leading_orders(probe: &LimitProbe) -> Result<Vec<(String, Option<i32>)>, LimitError> {
    let (_, target) = check_pair(probe)?;
    let rows = exact_rows(probe)?;
    let mut out = Vec::new();
    for (k, eq) in target.equations.iter().enumerate() {
        let order = target
            .rows_of(&[k])
            .iter()
            .filter_map(|&r| rows[r].1.min_exp())
            .min();
        out.push((eq.name.clone(), order));
    }
    Ok(out)
}

/// The slope the float fit must reproduce: the lowest leading order.
pub fn expected_order(probe: &LimitProbe) -> Result<Option<i32>, LimitError> {
    Ok(leading_orders(probe)?
        .into_iter()
        .filter_map(|(_, o)| o)
        .min())
}

/// The fixed spacetime sample, coordinates in `[−1, 1]`.
pub fn sample_points() -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    (0..SAMPLE_POINTS)
        .map(|_| std::array::from_fn(|_| rng.gen_range(-1.0..=1.0)))
        .collect()
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| {
        (a + (x - mx) * (y - my), b + (x - mx) * (x - mx))
    });
    num / den
}

fn residual_row(
    probe: &LimitProbe,
    scheme: &ContractionScheme,
    target: &LinearFieldSystem,
    points: &[[f64; 4]],
    eps: f64,
) -> Result<ResidualRow, LimitError> {
    let st = pipeline(&Float(eps), scheme, target, &probe.wave);
    let scale = st.k.iter().map(|x| x.norm_sqr()).sum::<f64>().max(1.0);
    let worst = st
        .wave_residuals
        .iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max);
    if worst > 1e-9 * scale / eps.min(1.0) {
        return Err(LimitError::DispersionViolated {
            eps,
            residual: worst,
        });
    }
    let phase = |p: &[f64; 4]| {
        let arg = st.omega_t * p[0] + st.k[0] * p[1] + st.k[1] * p[2] + st.k[2] * p[3];
        (Complex64::i() * arg).exp().norm()
    };
    let factors: Vec<f64> = points.iter().map(phase).collect();
    let fmax = factors.iter().copied().fold(0.0, f64::max);
    let residuals = target
        .equations
        .iter()
        .enumerate()
        .map(|(k, eq)| {
            let amp = target
                .rows_of(&[k])
                .iter()
                .map(|&r| st.rows[r].norm())
                .fold(0.0, f64::max);
            (eq.name.clone(), amp * fmax)
        })
        .collect();
    Ok(ResidualRow { eps, residuals })
}

/// Runs a probe over its ε values. Fails with [`LimitError::NoConvergence`]
/// unless residuals shrink with ε and the fitted slope is at least
/// [`MIN_SLOPE`].
pub fn run_probe(probe: &LimitProbe) -> Result<ResidualTable, LimitError> {
    check_eps(&probe.eps_values)?;
    let (scheme, target) = check_pair(probe)?;
    let expected_order = expected_order(probe)?;
    let points = sample_points();
    let rows = probe
        .eps_values
        .iter()
        .map(|&e| residual_row(probe, &scheme, &target, &points, e))
        .collect::<Result<Vec<_>, _>>()?;
    let maxima: Vec<f64> = rows.iter().map(ResidualRow::max).collect();
    let slope = if maxima.iter().all(|&m| m == 0.0) {
        None
    } else {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .zip(&maxima)
            .map(|(r, m)| (r.eps.ln(), m.ln()))
            .collect();
        Some(fit_slope(&pts))
    };
    if let Some(s) = slope {
        let monotone = maxima.windows(2).all(|w| w[1] <= w[0]);
        if !monotone || s < MIN_SLOPE || !s.is_finite() {
            return Err(LimitError::NoConvergence { slope: s });
        }
    }
    Ok(ResidualTable {
        scheme: probe.scheme.clone(),
        target: probe.target.clone(),
        rows,
        slope,
        expected_order,
    })
}

/// Runs independent probes, in parallel when enabled; order is preserved.
pub fn run_probes(probes: &[LimitProbe]) -> Vec<Result<ResidualTable, LimitError>> {
    par::map(probes, run_probe)
}

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactmath::{Ring, GR};

/// Velocity and wave covector for one spot check.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveSample {
    pub v: [GR; 3],
    pub p_t: GR,
    pub p: [GR; 3],
}

const PYTHAGOREAN: [([i64; 3], i64); 6] = [
    ([3, 4, 0], 5),
    ([1, 2, 2], 3),
    ([2, 3, 6], 7),
    ([4, 4, 7], 9),
    ([2, 6, 9], 11),
    ([6, 6, 7], 11),
];

fn small(rng: &mut ChaCha8Rng) -> GR {
    GR::frac(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn triple(rng: &mut ChaCha8Rng) -> [GR; 3] {
    std::array::from_fn(|_| small(rng))
}

/// Seeded pairs of small rational velocities.
pub fn velocity_pairs(seed: u64, n: usize) -> Vec<([GR; 3], [GR; 3])> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (triple(&mut rng), triple(&mut rng)))
        .collect()
}

/// Seeded wave samples cycling through three kinds of covector: a generic
/// one, one on the light cone `p_t = |p|` (rational via Pythagorean
/// quadruples) and a static one `p_t = 0`.
pub fn wave_samples(seed: u64, n: usize) -> Vec<WaveSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|k| {
            let v = triple(&mut rng);
            match k % 3 {
                0 => WaveSample {
                    v,
                    p_t: small(&mut rng),
                    p: triple(&mut rng),
                },
                1 => {
                    let (mut q, norm) = *PYTHAGOREAN.choose(&mut rng).expect("non-empty");
                    q.shuffle(&mut rng);
                    let scale = GR::frac(rng.gen_range(1..=4), rng.gen_range(1..=3));
                    let p =
                        q.map(|x| GR::int(if rng.gen_bool(0.5) { -x } else { x }).mul_ref(&scale));
                    WaveSample {
                        v,
                        p_t: GR::int(norm).mul_ref(&scale),
                        p,
                    }
                }
                _ => WaveSample {
                    v,
                    p_t: GR::zero(),
                    p: triple(&mut rng),
                },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_reproducible_and_light_like_when_asked() {
        assert_eq!(wave_samples(7, 9), wave_samples(7, 9));
        for s in wave_samples(7, 9).iter().skip(1).step_by(3) {
            let p2 = s.p.iter().fold(GR::zero(), |a, x| a.add_ref(&x.mul_ref(x)));
            assert_eq!(p2, s.p_t.mul_ref(&s.p_t));
        }
    }
}

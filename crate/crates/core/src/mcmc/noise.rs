//! Noise draws and their decoding into reflection batches.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::moves::{MoveBatch, ReflectionMove};

/// One slot of a draw: continuation variable, plane angle and vertex pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseRecord {
    pub x: f64,
    pub theta: f64,
    pub pair: (usize, usize),
}

/// `N` noise records consumed by one chain step.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseDraw {
    pub records: Vec<NoiseRecord>,
}

/// Unordered pair number `r` in `0..n(n-1)/2`, row-major over `i < j`.
fn pair_from_index(mut r: usize, n: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - 1 - i;
        if r < row {
            return (i, i + 1 + r);
        }
        r -= row;
    }
    unreachable!("pair index out of range")
}

/// The draw for `step` of the chain keyed by `seed`. Each step has its own
/// stream, so any step can be regenerated without replaying the chain.
pub fn draw_noise(seed: u64, step: u64, n: usize, slots: usize) -> NoiseDraw {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(step);
    let pairs = n * (n - 1) / 2;
    let records = (0..slots)
        .map(|_| {
            let x = open_unit(&mut rng);
            let theta = TAU * open_unit(&mut rng);
            let pair = pair_from_index(rng.random_range(0..pairs), n);
            NoiseRecord { x, theta, pair }
        })
        .collect();
    NoiseDraw { records }
}

/// Uniform on the open interval (0, 1).
fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// Batch length `m` (the number of leading records whose fractional part
/// does not exceed its continuation probability) and the first `m` moves.
pub fn decode_noise(d: &NoiseDraw, p: &[f64]) -> (usize, MoveBatch) {
    let m = d
        .records
        .iter()
        .zip(p)
        .take_while(|(r, &pk)| r.x.fract() <= pk)
        .count();
    let moves = d.records[..m]
        .iter()
        .map(|r| ReflectionMove::new(r.pair.0, r.pair.1, r.theta))
        .collect();
    (m, moves)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn draw(xs: &[f64]) -> NoiseDraw {
        NoiseDraw {
            records: xs
                .iter()
                .map(|&x| NoiseRecord {
                    x,
                    theta: 1.0,
                    pair: (0, 2),
                })
                .collect(),
        }
    }

    #[test]
    fn batch_length_rule() {
        let p = [0.5; 6];
        assert_eq!(decode_noise(&draw(&[0.1; 6]), &p).0, 6);
        assert_eq!(decode_noise(&draw(&[0.9, 0.1, 0.1, 0.1, 0.1, 0.1]), &p).0, 0);
        let (m, moves) = decode_noise(&draw(&[0.3, 0.7, 0.1, 0.1, 0.1, 0.1]), &p);
        assert_eq!(m, 1);
        assert_eq!(moves, vec![ReflectionMove::new(0, 2, 1.0)]);
    }

    #[test]
    fn pairs_cover_upper_triangle() {
        let n = 7;
        let all: Vec<_> = (0..n * (n - 1) / 2).map(|r| pair_from_index(r, n)).collect();
        let mut want = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                want.push((i, j));
            }
        }
        assert_eq!(all, want);
    }

    #[test]
    fn draws_are_keyed_by_step() {
        let a = draw_noise(11, 5, 10, 6);
        assert_eq!(a, draw_noise(11, 5, 10, 6));
        assert_ne!(a, draw_noise(11, 6, 10, 6));
        assert_ne!(a, draw_noise(12, 5, 10, 6));
        for r in &a.records {
            assert!(r.x > 0.0 && r.x < 1.0);
            assert!(r.theta > 0.0 && r.theta < TAU);
            assert!(r.pair.0 < r.pair.1 && r.pair.1 < 10);
        }
    }
}

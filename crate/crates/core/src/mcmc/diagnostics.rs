//! Output analysis for scalar observables of a chain. The standard error
//! and autocorrelation time are heuristics, not guarantees.

use crate::error::{Error, Result};

/// Fewest samples accepted by [`diagnostics`].
pub const MIN_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub mean: f64,
    /// Batch-means standard error of the mean.
    pub std_error: f64,
    /// Integrated autocorrelation time (initial positive sequence).
    pub iat: f64,
}

pub fn diagnostics(samples: &[f64]) -> Result<Diagnostics> {
    let n = samples.len();
    if n < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_SAMPLES,
            got: n,
        });
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    Ok(Diagnostics {
        mean,
        std_error: batch_means_se(samples, mean),
        iat: initial_positive_iat(samples, mean),
    })
}

fn batch_means_se(x: &[f64], mean: f64) -> f64 {
    let size = (x.len() as f64).sqrt().floor() as usize;
    let batches = x.len() / size;
    let means: Vec<f64> = (0..batches)
        .map(|b| x[b * size..(b + 1) * size].iter().sum::<f64>() / size as f64)
        .collect();
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (batches - 1) as f64;
    (var / batches as f64).sqrt()
}

fn initial_positive_iat(x: &[f64], mean: f64) -> f64 {
    let n = x.len();
    let autocov = |lag: usize| {
        x[..n - lag]
            .iter()
            .zip(&x[lag..])
            .map(|(a, b)| (a - mean) * (b - mean))
            .sum::<f64>()
            / n as f64
    };
    let g0 = autocov(0);
    if g0 <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut m = 0;
    while 2 * m + 1 < n {
        let pair = autocov(2 * m) + autocov(2 * m + 1);
        if pair <= 0.0 {
            break;
        }
        sum += pair;
        m += 1;
    }
    (2.0 * sum / g0 - 1.0).max(1.0)
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Sample mean with its standard error `s / sqrt(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n: usize,
    pub seed: u64,
}

impl McEstimate {
    /// Whether `value` lies within `k` standard errors of the mean.
    pub fn within(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_error
    }
}

/// Running mean and variance (Welford). Accumulation order is fixed by the
/// caller, so results are bitwise reproducible.
#[derive(Debug, Clone, Copy, Default)]
pub struct Welford {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Welford {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> usize {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero for fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.m2 / (self.n - 1) as f64).max(0.0)
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            (self.variance() / self.n as f64).sqrt()
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mean of `g(sampler(rng))` over `n` draws from a generator seeded with `seed`.
pub fn mc_mean<T, S, G>(seed: u64, n: usize, mut sampler: S, g: G) -> Result<McEstimate>
where
    S: FnMut(&mut ChaCha8Rng) -> T,
    G: Fn(&T) -> f64,
{
    if n < 100 {
        return Err(Error::InvalidParameter(format!("Monte Carlo needs n >= 100, got {n}")));
    }
    let mut rng = seeded_rng(seed);
    let mut acc = Welford::default();
    for _ in 0..n {
        let sample = sampler(&mut rng);
        acc.push(g(&sample));
    }
    Ok(McEstimate { mean: acc.mean(), std_error: acc.std_error(), n, seed })
}

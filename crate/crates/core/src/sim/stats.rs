use statrs::distribution::{ContinuousCDF, StudentsT};

/// Sample mean and the half-width of its two-sided 95% Student-t interval.
/// A single sample has no spread estimate and yields a NaN half-width.
pub fn mean_ci95(samples: &[f64]) -> (f64, f64) {
    let n = samples.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, f64::NAN);
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let t = StudentsT::new(0.0, 1.0, (n - 1) as f64)
        .expect("degrees of freedom are positive")
        .inverse_cdf(0.975);
    (mean, t * (var / n as f64).sqrt())
}

/// Normal-approximation 95% half-width for a binomial proportion.
pub fn binomial_ci95(successes: u64, trials: u64) -> f64 {
    let p = successes as f64 / trials as f64;
    1.959_963_984_540_054 * (p * (1.0 - p) / trials as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_interval() {
        // t_{0.975, 4} = 2.776445
        let (m, h) = mean_ci95(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(m, 3.0);
        assert!((h - 2.776445105 * (2.5f64 / 5.0).sqrt()).abs() < 1e-6);
        assert_eq!(mean_ci95(&[2.0; 3]).1, 0.0);
    }

    #[test]
    fn binomial() {
        assert_eq!(binomial_ci95(10, 10), 0.0);
        assert!((binomial_ci95(50, 100) - 0.0979982).abs() < 1e-6);
    }
}

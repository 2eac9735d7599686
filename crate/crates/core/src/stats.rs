//! Small summary-statistics helpers shared by the Monte Carlo experiments.

use crate::rng::{replicate_rng, StreamRng};
use rayon::prelude::*;

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
    pub n: usize,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Estimate {
        let n = xs.len();
        let mean = mean(xs);
        let se = if n > 1 { (variance(xs) / n as f64).sqrt() } else { f64::NAN };
        Estimate { mean, std_err: se, n }
    }

    /// |mean − target| in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.mean - target).abs() / self.std_err
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

pub fn covariance(xs: &[f64], ys: &[f64]) -> f64 {
    let mx = mean(xs);
    let my = mean(ys);
    xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// Standard error of the sample variance (via the fourth central moment).
pub fn variance_std_err(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let m = mean(xs);
    let m2 = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n;
    let m4 = xs.iter().map(|x| (x - m).powi(4)).sum::<f64>() / n;
    ((m4 - m2 * m2) / n).sqrt()
}

/// Third central moment.
pub fn third_moment(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(3)).sum::<f64>() / xs.len() as f64
}

/// Kolmogorov–Smirnov distance between the empirical law of `xs` and `cdf`.
pub fn ks_distance<F: Fn(f64) -> f64>(xs: &[f64], cdf: F) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in v.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
    }
    d
}

pub fn normal_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2)
}

pub fn gumbel_cdf(x: f64) -> f64 {
    (-(-x).exp()).exp()
}

/// Ordinary least squares for y ≈ X b with design rows `x`; returns coefficients.
pub fn least_squares(x: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let p = x[0].len();
    let mut a = nalgebra::DMatrix::<f64>::zeros(x.len(), p);
    for (i, row) in x.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            a[(i, j)] = *v;
        }
    }
    let b = nalgebra::DVector::from_column_slice(y);
    let svd = a.svd(true, true);
    svd.solve(&b, 1e-14).expect("least squares").iter().copied().collect()
}

/// Slope of the simple linear regression of y on x.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let rows: Vec<Vec<f64>> = x.iter().map(|&v| vec![1.0, v]).collect();
    least_squares(&rows, y)[1]
}

/// Slope s of log M ≈ a + s log N + c N^{−δ}, absorbing a power-law finite-size correction.
pub fn corrected_loglog_slope(ns: &[f64], values: &[f64], delta: f64) -> f64 {
    let rows: Vec<Vec<f64>> = ns.iter().map(|&n| vec![1.0, n.ln(), n.powf(-delta)]).collect();
    let y: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    least_squares(&rows, &y)[1]
}

/// Weighted simple linear regression returning (intercept, slope, slope std. error)
/// given per-point standard errors of y.
pub fn weighted_slope(x: &[f64], y: &[f64], se: &[f64]) -> (f64, f64, f64) {
    let w: Vec<f64> = se.iter().map(|s| 1.0 / (s * s)).collect();
    let sw: f64 = w.iter().sum();
    let sx: f64 = w.iter().zip(x).map(|(w, x)| w * x).sum();
    let sy: f64 = w.iter().zip(y).map(|(w, y)| w * y).sum();
    let sxx: f64 = w.iter().zip(x).map(|(w, x)| w * x * x).sum();
    let sxy: f64 = w.iter().zip(x).zip(y).map(|((w, x), y)| w * x * y).sum();
    let det = sw * sxx - sx * sx;
    let b = (sw * sxy - sx * sy) / det;
    let a = (sy - b * sx) / sw;
    (a, b, (sw / det).sqrt())
}

/// Run `f` on `trials` independent replicate streams in parallel and collect
/// results in replicate order (identical to a serial run).
pub fn replicate<T, F>(seed: u64, label: &str, trials: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut StreamRng) -> T + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|r| {
            let mut rng = replicate_rng(seed, label, r as u64);
            f(&mut rng)
        })
        .collect()
}

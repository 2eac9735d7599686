//! The log-characteristic-polynomial field log|P_N(A, θ)|, its maxima, secular
//! coefficients and the Monte Carlo statistics built on them.

use crate::ensembles::{sample_eigenphases, trace_power, EigenphaseSet, Group, VerblunskyCoeffs};
use crate::error::{invalid, Error, Result};
use crate::stats::{self, Estimate};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use rustfft::FftPlanner;
use std::f64::consts::{PI, TAU};

/// Distance below which θ is treated as sitting on an eigenphase.
pub const SINGULAR_TOL: f64 = 1e-12;
pub const DEFAULT_GRID_FACTOR: usize = 8;
pub const DEFAULT_REFINE_ITERS: usize = 30;

/// Σ_j log|1 − e^{i(θ_j − θ)}|, or −∞ on an eigenphase.
pub fn log_abs_charpoly(eigs: &EigenphaseSet, theta: f64) -> f64 {
    let mut acc = 0.0;
    for &t in &eigs.phases {
        let half = 0.5 * (t - theta);
        let s = half.sin().abs();
        // |1 − e^{iφ}| = 2|sin(φ/2)|; distance to the phase mod 2π
        let d = (t - theta).rem_euclid(TAU);
        if d.min(TAU - d) < SINGULAR_TOL {
            return f64::NEG_INFINITY;
        }
        acc += (2.0 * s).ln();
    }
    acc
}

/// V_N(A, θ) = −2 log|P_N(A, θ)|.
pub fn negative_log_field(eigs: &EigenphaseSet, theta: f64) -> f64 {
    -2.0 * log_abs_charpoly(eigs, theta)
}

/// Anything on which log|P_N| can be evaluated pointwise.
pub trait CharPolyField {
    fn degree(&self) -> usize;
    fn log_abs_at(&self, theta: f64) -> f64;

    /// Values at θ_m = m L / M for m = 0..M.
    fn grid_values(&self, arc: f64, points: usize) -> Vec<f64> {
        (0..points).map(|m| self.log_abs_at(arc * m as f64 / points as f64)).collect()
    }
}

impl CharPolyField for EigenphaseSet {
    fn degree(&self) -> usize {
        self.phases.len()
    }

    fn log_abs_at(&self, theta: f64) -> f64 {
        log_abs_charpoly(self, theta)
    }

    fn grid_values(&self, arc: f64, points: usize) -> Vec<f64> {
        let thetas: Vec<f64> = (0..points).map(|m| arc * m as f64 / points as f64).collect();
        thetas.par_iter().map(|&t| log_abs_charpoly(self, t)).collect()
    }
}

/// Sampled values of log|P_N| on an equispaced grid of [0, L).
#[derive(Debug, Clone)]
pub struct FieldGrid {
    pub thetas: Vec<f64>,
    pub values: Vec<f64>,
    pub arc_length: f64,
}

pub fn field_grid<F: CharPolyField + ?Sized>(f: &F, arc: f64, points: usize) -> Result<FieldGrid> {
    if !(arc > 0.0 && arc <= TAU) {
        return invalid("arc length must lie in (0, 2π]");
    }
    if points == 0 {
        return invalid("grid needs at least one point");
    }
    let thetas = (0..points).map(|m| arc * m as f64 / points as f64).collect();
    Ok(FieldGrid { thetas, values: f.grid_values(arc, points), arc_length: arc })
}

/// Maximum of log|P_N| over [0, L): grid of grid_factor·N points, then
/// golden-section refinement around the three best grid points.
pub fn field_max<F: CharPolyField + ?Sized>(f: &F, arc: f64, grid_factor: usize, refine_iters: usize) -> Result<(f64, f64)> {
    let n = f.degree();
    if n == 0 {
        return invalid("field_max needs a non-empty spectrum");
    }
    if grid_factor < 2 {
        return invalid("grid_factor must be at least 2");
    }
    let points = grid_factor * n;
    let grid = field_grid(f, arc, points)?;
    let mut order: Vec<usize> = (0..points).collect();
    order.sort_by(|&a, &b| grid.values[b].partial_cmp(&grid.values[a]).unwrap_or(std::cmp::Ordering::Equal));
    let h = arc / points as f64;
    let mut best = (grid.thetas[order[0]], grid.values[order[0]]);
    for &i in order.iter().take(3) {
        let centre = grid.thetas[i];
        let (mut a, mut b) = (centre - h, centre + h);
        if arc < TAU {
            a = a.max(0.0);
            b = b.min(arc);
        }
        let cand = golden_max(|t| f.log_abs_at(t), a, b, refine_iters);
        if cand.1 > best.1 {
            best = cand;
        }
    }
    Ok((best.0.rem_euclid(TAU), best.1))
}

fn golden_max<G: Fn(f64) -> f64>(g: G, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    for _ in 0..iters {
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    if gc > gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

/// Coefficients of det(I + xA) = Σ_n Sc_n x^n.
#[derive(Debug, Clone, PartialEq)]
pub struct SecularCoeffs {
    pub coeffs: Vec<Complex64>,
}

impl SecularCoeffs {
    /// From the monic Φ_N(z) = det(zI − A) in ascending powers: Sc_n = (−1)^n [z^{N−n}]Φ_N.
    pub fn from_monic_polynomial(phi: &[Complex64]) -> SecularCoeffs {
        let n = phi.len() - 1;
        let coeffs = (0..=n)
            .map(|k| if k % 2 == 0 { phi[n - k] } else { -phi[n - k] })
            .collect();
        SecularCoeffs { coeffs }
    }

    /// P_N(A, θ) = Σ_n Sc_n (−e^{−iθ})^n.
    pub fn charpoly_at(&self, theta: f64) -> Complex64 {
        let w = -Complex64::from_polar(1.0, -theta);
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c)
    }
}

impl CharPolyField for SecularCoeffs {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn log_abs_at(&self, theta: f64) -> f64 {
        self.charpoly_at(theta).norm().ln()
    }

    fn grid_values(&self, arc: f64, points: usize) -> Vec<f64> {
        if (arc - TAU).abs() > 1e-15 || points <= self.degree() {
            return (0..points).map(|m| self.log_abs_at(arc * m as f64 / points as f64)).collect();
        }
        // P(θ_m) = Σ_n (−1)^n Sc_n e^{−2πi nm/M}: a forward DFT of the padded sequence
        let mut buf = vec![Complex64::new(0.0, 0.0); points];
        for (k, c) in self.coeffs.iter().enumerate() {
            buf[k] = if k % 2 == 0 { *c } else { -*c };
        }
        let fft = FftPlanner::new().plan_fft_forward(points);
        fft.process(&mut buf);
        buf.iter().map(|z| z.norm().ln()).collect()
    }
}

/// Secular coefficients by Newton's identities n e_n = Σ_{i=1}^n (−1)^{i−1} e_{n−i} p_i.
pub fn secular_coefficients(eigs: &EigenphaseSet) -> SecularCoeffs {
    let n = eigs.len();
    let p: Vec<Complex64> = (0..=n).map(|j| if j == 0 { Complex64::new(n as f64, 0.0) } else { trace_power(eigs, j as u32) }).collect();
    let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=k {
            let term = e[k - i] * p[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e[k] = acc / k as f64;
    }
    SecularCoeffs { coeffs: e }
}

/// Secular coefficients by expanding ∏(1 + x λ_j) directly.
pub fn secular_coefficients_by_product(eigs: &EigenphaseSet) -> SecularCoeffs {
    let mut e = vec![Complex64::new(1.0, 0.0)];
    for lam in eigs.eigenvalues() {
        let mut next = vec![Complex64::new(0.0, 0.0); e.len() + 1];
        for (k, c) in e.iter().enumerate() {
            next[k] += c;
            next[k + 1] += c * lam;
        }
        e = next;
    }
    SecularCoeffs { coeffs: e }
}

/// A CUE-distributed characteristic polynomial drawn through Verblunsky
/// coefficients at β = 2 (equal in law to Haar U(N)); O(N²) instead of O(N³).
pub fn sample_unitary_charpoly<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SecularCoeffs> {
    let v = VerblunskyCoeffs::sample(n, 2.0, rng)?;
    Ok(SecularCoeffs::from_monic_polynomial(&v.monic_polynomial()))
}

/// Monte Carlo estimate of E|Σ_{j₁+⋯+j_η=m} Sc_{j₁}⋯Sc_{j_η}|² over U(N).
pub fn secular_sum_moment<R: Rng + ?Sized>(eta: usize, m: usize, n: usize, trials: usize, rng: &mut R) -> Result<Estimate> {
    if eta == 0 || n == 0 || trials == 0 {
        return invalid("eta, N and trials must be positive");
    }
    if m > eta * n {
        return invalid(format!("m = {m} exceeds ηN = {}", eta * n));
    }
    let seed: u64 = rng.random();
    let samples = stats::replicate(seed, "secular-sum", trials, |r| {
        let eigs = sample_eigenphases(Group::Unitary, n, None, r).expect("valid unitary draw");
        let sc = secular_coefficients(&eigs);
        let mut pow = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..eta {
            let mut next = vec![Complex64::new(0.0, 0.0); pow.len() + n];
            for (i, a) in pow.iter().enumerate() {
                for (j, b) in sc.coeffs.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            pow = next;
        }
        pow[m].norm_sqr()
    });
    Ok(Estimate::from_samples(&samples))
}

#[derive(Debug, Clone, Copy)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub third_moment: f64,
    pub ks_normal: f64,
}

impl MomentSummary {
    fn of(xs: &[f64]) -> MomentSummary {
        MomentSummary {
            mean: stats::mean(xs),
            variance: stats::variance(xs),
            third_moment: stats::third_moment(xs),
            ks_normal: stats::ks_distance(xs, stats::normal_cdf),
        }
    }
}

/// Summaries of Re and Im of log P_N(A, 0)/√(½ log N).
#[derive(Debug, Clone, Copy)]
pub struct CltSummary {
    pub real: MomentSummary,
    pub imag: MomentSummary,
}

/// Re/Im log P_N(A, 0) with the imaginary part taken as the sum of principal
/// arguments of the factors 1 − e^{iθ_j}.
pub fn log_charpoly_at_zero(eigs: &EigenphaseSet) -> (f64, f64) {
    let mut re = 0.0;
    let mut im = 0.0;
    for &t in &eigs.phases {
        let z = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, t);
        re += z.norm().ln();
        im += z.arg();
    }
    (re, im)
}

pub fn clt_experiment<R: Rng + ?Sized>(group: Group, n: usize, trials: usize, rng: &mut R) -> Result<CltSummary> {
    if n < 3 {
        return invalid("CLT normalisation needs N ≥ 3");
    }
    if trials < 100 {
        return invalid("CLT experiment needs at least 100 trials");
    }
    if group == Group::CircularBeta {
        return invalid("clt_experiment samples compact groups; use the CβE sampler directly");
    }
    let seed: u64 = rng.random();
    let scale = (0.5 * (n as f64).ln()).sqrt();
    let pairs = stats::replicate(seed, "clt", trials, |r| {
        let eigs = sample_eigenphases(group, n, None, r).expect("valid draw");
        let (re, im) = log_charpoly_at_zero(&eigs);
        (re / scale, im / scale)
    });
    let re: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let im: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    Ok(CltSummary { real: MomentSummary::of(&re), imag: MomentSummary::of(&im) })
}

/// E[V_N(0) V_N(s)] over U(N) for each separation s, with standard errors.
pub fn covariance_profile<R: Rng + ?Sized>(n: usize, separations: &[f64], trials: usize, rng: &mut R) -> Result<Vec<Estimate>> {
    if separations.iter().any(|&s| !(s > 0.0 && s <= PI)) {
        return invalid("separations must lie in (0, π]");
    }
    if trials < 2 || n == 0 {
        return invalid("need N ≥ 1 and at least two trials");
    }
    let seed: u64 = rng.random();
    let rows = stats::replicate(seed, "covariance", trials, |r| {
        let v = VerblunskyCoeffs::sample(n, 2.0, r).expect("valid CβE draw");
        let v0 = -2.0 * v.eval(Complex64::new(1.0, 0.0)).norm().ln();
        separations.iter().map(|&s| v0 * (-2.0 * v.eval(Complex64::from_polar(1.0, s)).norm().ln())).collect::<Vec<f64>>()
    });
    Ok((0..separations.len())
        .map(|j| Estimate::from_samples(&rows.iter().map(|row| row[j]).collect::<Vec<f64>>()))
        .collect())
}

/// Histogram of rescaled phase differences: value at bin b is
/// (1/N)·#{n ≠ m : (φ_n − φ_m) mod N ∈ bin} / bin_width, averaged over samples.
#[derive(Debug, Clone)]
pub struct Histogram {
    pub bin_width: f64,
    pub edges: Vec<f64>,
    pub values: Vec<f64>,
}

impl Histogram {
    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// Σ values·bin_width.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.bin_width
    }
}

pub fn pair_correlation(samples: &[EigenphaseSet], bin_width: f64, x_max: f64) -> Result<Histogram> {
    if samples.is_empty() {
        return invalid("empty batch");
    }
    if !(bin_width > 0.0) || !(x_max > 0.0) {
        return invalid("bin_width and x_max must be positive");
    }
    let n = samples[0].len();
    for s in samples {
        if !matches!(s.group, Group::Unitary | Group::CircularBeta) {
            return invalid("pair correlation is defined here for unitary-type spectra");
        }
        if s.len() != n {
            return Err(Error::InvalidParameter(format!("mixed-N batch: {} vs {}", s.len(), n)));
        }
    }
    let bins = (x_max / bin_width).ceil() as usize;
    let nf = n as f64;
    let counts = samples
        .par_iter()
        .map(|s| {
            let mut c = vec![0u64; bins];
            let phi: Vec<f64> = s.phases.iter().map(|t| t * nf / TAU).collect();
            for (a, pa) in phi.iter().enumerate() {
                for (b, pb) in phi.iter().enumerate() {
                    if a == b {
                        continue;
                    }
                    let d = (pa - pb).rem_euclid(nf);
                    if d < x_max {
                        let k = (d / bin_width) as usize;
                        if k < bins {
                            c[k] += 1;
                        }
                    }
                }
            }
            c
        })
        .reduce(
            || vec![0u64; bins],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                x
            },
        );
    let norm = nf * bin_width * samples.len() as f64;
    Ok(Histogram {
        bin_width,
        edges: (0..=bins).map(|k| k as f64 * bin_width).collect(),
        values: counts.iter().map(|&c| c as f64 / norm).collect(),
    })
}

/// 1 − (sin πx / πx)².
pub fn dyson_kernel(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        return (PI * x).powi(2) / 3.0;
    }
    let s = (PI * x).sin() / (PI * x);
    1.0 - s * s
}

/// Average of the Dyson kernel over [a, b] (Simpson, 64 panels).
pub fn dyson_kernel_average(a: f64, b: f64) -> f64 {
    let m = 64;
    let h = (b - a) / m as f64;
    let mut acc = dyson_kernel(a) + dyson_kernel(b);
    for i in 1..m {
        acc += dyson_kernel(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0 / (b - a)
}

/// Normalising constants for the maximum of n iid standard normals.
pub fn iid_max_norming(n: f64) -> Result<(f64, f64)> {
    if !(n >= 2.0) {
        return invalid("iid_max_norming needs n ≥ 2");
    }
    let l = n.ln();
    let s = (2.0 * l).sqrt();
    Ok((1.0 / s, s - (l.ln() + (4.0 * PI).ln()) / (2.0 * s)))
}

/// Standardised maxima (M − b_n)/a_n of n iid standard normals, one per trial.
pub fn iid_max_experiment<R: Rng + ?Sized>(n: usize, trials: usize, rng: &mut R) -> Result<Vec<f64>> {
    let (a, b) = iid_max_norming(n as f64)?;
    let seed: u64 = rng.random();
    Ok(stats::replicate(seed, "iid-max", trials, |r| {
        let mut m = f64::NEG_INFINITY;
        for _ in 0..n {
            let x: f64 = r.sample(StandardNormal);
            m = m.max(x);
        }
        (m - b) / a
    }))
}

/// Summary of field maxima across an N-range.
#[derive(Debug, Clone)]
pub struct FieldMaxReport {
    pub sizes: Vec<usize>,
    pub mean_max: Vec<Estimate>,
    /// Slope of (mean max − log N) against log log N.
    pub loglog_slope: f64,
    pub loglog_slope_err: f64,
}

/// Maxima of log|P_N| over the full circle for Haar U(N), each size in `sizes`.
///
/// Spectra are drawn as CUE characteristic polynomials through Verblunsky
/// coefficients and evaluated by FFT on the grid, so large N stays cheap.
pub fn field_max_experiment(sizes: &[usize], trials: usize, grid_factor: usize, refine_iters: usize, seed: u64) -> Result<FieldMaxReport> {
    if sizes.len() < 2 {
        return invalid("need at least two sizes for the regression");
    }
    let mut mean_max = Vec::new();
    for &n in sizes {
        let label = format!("field-max-{n}");
        let maxima: Vec<f64> = stats::replicate(seed, &label, trials, |r| {
            let sc = sample_unitary_charpoly(n, r).expect("valid draw");
            field_max(&sc, TAU, grid_factor, refine_iters).expect("non-empty").1
        });
        mean_max.push(Estimate::from_samples(&maxima));
    }
    let x: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln().ln()).collect();
    let y: Vec<f64> = sizes.iter().zip(&mean_max).map(|(&n, e)| e.mean - (n as f64).ln()).collect();
    let se: Vec<f64> = mean_max.iter().map(|e| e.std_err).collect();
    let (_, slope, err) = stats::weighted_slope(&x, &y, &se);
    Ok(FieldMaxReport { sizes: sizes.to_vec(), mean_max, loglog_slope: slope, loglog_slope_err: err })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::replicate_rng;

    fn set(phases: Vec<f64>) -> EigenphaseSet {
        let n = phases.len();
        EigenphaseSet::new(Group::Unitary, n, None, phases).unwrap()
    }

    #[test]
    fn trivial_values() {
        let e = set(vec![PI]);
        assert!((log_abs_charpoly(&e, 0.0) - 2f64.ln()).abs() < 1e-15);
        assert!((negative_log_field(&e, 0.0) + 2.0 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(log_abs_charpoly(&e, PI), f64::NEG_INFINITY);
        assert_eq!(negative_log_field(&e, PI), f64::INFINITY);
        let e = set(vec![PI / 2.0, 1.5 * PI]);
        assert!((log_abs_charpoly(&e, 0.0) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn field_max_trivial() {
        let phi = 1.3;
        let e = set(vec![phi]);
        let (t, v) = field_max(&e, TAU, 8, 40).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-12);
        assert!((t - (phi + PI)).abs() < 1e-5);
        let e = set(vec![0.7; 5]);
        let (_, v) = field_max(&e, TAU, 8, 40).unwrap();
        assert!((v - 5.0 * 2f64.ln()).abs() < 1e-10);
        let empty = EigenphaseSet { group: Group::Unitary, n_half: 0, beta_ensemble: None, phases: vec![] };
        assert!(field_max(&empty, TAU, 8, 1).is_err());
        assert!(field_max(&e, TAU, 1, 1).is_err());
    }

    #[test]
    fn refinement_never_below_grid() {
        let mut rng = replicate_rng(11, "fm", 0);
        for _ in 0..20 {
            let e = sample_eigenphases(Group::Unitary, 16, None, &mut rng).unwrap();
            for arc in [TAU, 1.0] {
                let grid = field_grid(&e, arc, 8 * 16).unwrap();
                let gmax = grid.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let (t, v) = field_max(&e, arc, 8, 30).unwrap();
                assert!(v >= gmax);
                assert!(t <= arc + 1e-12);
            }
        }
    }

    #[test]
    fn secular_coefficient_routes_agree() {
        let mut rng = replicate_rng(12, "sc", 0);
        for n in [1usize, 4, 16, 32] {
            let e = sample_eigenphases(Group::Unitary, n, None, &mut rng).unwrap();
            let a = secular_coefficients(&e);
            let b = secular_coefficients_by_product(&e);
            assert!((a.coeffs[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
            assert!((a.coeffs[1] - trace_power(&e, 1)).norm() < 1e-12);
            assert!((a.coeffs[n].norm() - 1.0).abs() < 1e-8);
            for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
                assert!((x - y).norm() < 1e-8, "N={n}");
            }
        }
    }

    #[test]
    fn direct_and_coefficient_evaluations_agree() {
        let mut rng = replicate_rng(13, "eval", 0);
        for n in [8usize, 64, 256] {
            let e = sample_eigenphases(Group::Unitary, n, None, &mut rng).unwrap();
            let sc = secular_coefficients(&e);
            for _ in 0..128 {
                let t: f64 = rng.random::<f64>() * TAU;
                let a = log_abs_charpoly(&e, t);
                let b = sc.log_abs_at(t);
                assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0), "N={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn fft_grid_matches_horner() {
        let mut rng = replicate_rng(14, "fft", 0);
        let sc = sample_unitary_charpoly(50, &mut rng).unwrap();
        let fast = sc.grid_values(TAU, 400);
        for (m, v) in fast.iter().enumerate() {
            let slow = sc.log_abs_at(TAU * m as f64 / 400.0);
            assert!((v - slow).abs() < 1e-9);
        }
    }

    #[test]
    fn verblunsky_polynomial_matches_its_roots() {
        let mut rng = replicate_rng(15, "vp", 0);
        let v = VerblunskyCoeffs::sample(40, 2.0, &mut rng).unwrap();
        let sc = SecularCoeffs::from_monic_polynomial(&v.monic_polynomial());
        let e = EigenphaseSet::new(Group::CircularBeta, 40, Some(2.0), v.eigenphases().unwrap()).unwrap();
        for k in 0..50 {
            let t = 0.1234 + k as f64 * 0.12;
            assert!((sc.log_abs_at(t) - log_abs_charpoly(&e, t)).abs() < 1e-8);
        }
    }

    #[test]
    fn norming_values() {
        let (a, _) = iid_max_norming(std::f64::consts::E).unwrap();
        assert!((a - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        let (a, _) = iid_max_norming(10.0).unwrap();
        assert!((a - 0.465_991).abs() < 1e-6);
        assert!(iid_max_norming(1.0).is_err());
    }

    #[test]
    fn secular_sum_trivial_cases() {
        let mut rng = replicate_rng(16, "ss", 0);
        assert!(secular_sum_moment(1, 9, 8, 10, &mut rng).is_err());
        let e = secular_sum_moment(2, 16, 8, 50, &mut rng).unwrap();
        // m = ηN picks Sc_N², which has unit modulus
        assert!((e.mean - 1.0).abs() < 1e-8);
    }

    #[test]
    fn clt_variance_matches_finite_n_value() {
        // Var Re log P_N(A,0) = ½ Σ_{j≤N} ψ'(j), with ψ'(j) = π²/6 − Σ_{m<j} 1/m²
        let n = 16;
        let mut tail = 0.0;
        let mut sum = 0.0;
        for j in 1..=n {
            sum += PI * PI / 6.0 - tail;
            tail += 1.0 / (j * j) as f64;
        }
        let want = 0.5 * sum / (0.5 * (n as f64).ln());
        let trials = 4000;
        let mut rng = replicate_rng(17, "clt", 0);
        let s = clt_experiment(Group::Unitary, n, trials, &mut rng).unwrap();
        let se = want * (2.0 / trials as f64).sqrt();
        for m in [s.real, s.imag] {
            assert!((m.variance - want).abs() < 4.0 * se, "{} vs {want}", m.variance);
            assert!(m.mean.abs() < 4.0 * (want / trials as f64).sqrt());
        }
        assert!(clt_experiment(Group::Unitary, 2, 200, &mut rng).is_err());
    }

    #[test]
    fn pair_correlation_rejects_mixed_sizes() {
        let a = set(vec![0.1, 0.2]);
        let b = set(vec![0.1, 0.2, 0.3]);
        assert!(pair_correlation(&[a, b], 0.25, 1.0).is_err());
    }
}

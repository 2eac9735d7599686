//! Prime sieving, the randomised prime-sum model of log|ζ(1/2 + it)|, and small
//! arithmetic ingredients (Kronecker symbol, fundamental discriminants, a_p).

use crate::error::{invalid, Error, Result};
use crate::special;
use crate::stats::{self, Estimate};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::{LN_2, TAU};

pub const SIEVE_LIMIT_MAX: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct PrimeTable {
    pub limit: u64,
    pub primes: Vec<u64>,
}

/// All primes ≤ limit by a segmented sieve of Eratosthenes.
pub fn prime_sieve(limit: u64) -> Result<PrimeTable> {
    if limit > SIEVE_LIMIT_MAX {
        return Err(Error::Budget(format!("sieve limit {limit} exceeds {SIEVE_LIMIT_MAX}")));
    }
    let mut primes = Vec::new();
    if limit < 2 {
        return Ok(PrimeTable { limit, primes });
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let mut small = vec![true; (root + 1) as usize];
    let mut base = Vec::new();
    for i in 2..=root {
        if small[i as usize] {
            base.push(i);
            let mut j = i * i;
            while j <= root {
                small[j as usize] = false;
                j += i;
            }
        }
    }
    const SEG: u64 = 1 << 18;
    let mut lo = 2u64;
    let mut flags = vec![true; SEG as usize];
    while lo <= limit {
        let hi = (lo + SEG - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        flags[..len].iter_mut().for_each(|f| *f = true);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut start = ((lo + p - 1) / p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j <= hi {
                flags[(j - lo) as usize] = false;
                j += p;
            }
        }
        for (i, &f) in flags[..len].iter().enumerate() {
            if f {
                primes.push(lo + i as u64);
            }
        }
        lo = hi + 1;
    }
    Ok(PrimeTable { limit, primes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Steinhaus,
    Gaussian,
}

/// Random model with T = e^{2ⁿ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig {
    pub n: u32,
    pub variant: Variant,
    pub grid_size: usize,
    pub second_order: bool,
}

impl ModelConfig {
    pub fn new(n: u32, variant: Variant) -> ModelConfig {
        ModelConfig { n, variant, grid_size: 1 << (n + 3), second_order: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > 4 {
            return Err(Error::Budget(format!("n = {} outside 1..=4 (prime budget e^16)", self.n)));
        }
        if self.grid_size < (1 << self.n) {
            return invalid(format!("grid_size {} below 2^n = {}", self.grid_size, 1 << self.n));
        }
        Ok(())
    }

    /// log T = 2ⁿ.
    pub fn log_t(&self) -> f64 {
        (1u64 << self.n) as f64
    }
}

/// Precomputed prime data for repeated draws of the model field.
#[derive(Debug, Clone)]
pub struct PrimeModel {
    pub config: ModelConfig,
    log_p: Vec<f64>,
    inv_sqrt_p: Vec<f64>,
}

impl PrimeModel {
    pub fn new(config: ModelConfig) -> Result<PrimeModel> {
        config.validate()?;
        let limit = config.log_t().exp().floor() as u64;
        let primes = prime_sieve(limit)?.primes;
        Ok(PrimeModel {
            config,
            log_p: primes.iter().map(|&p| (p as f64).ln()).collect(),
            inv_sqrt_p: primes.iter().map(|&p| 1.0 / (p as f64).sqrt()).collect(),
        })
    }

    pub fn prime_count(&self) -> usize {
        self.log_p.len()
    }

    pub fn h_grid(&self) -> Vec<f64> {
        let m = self.config.grid_size;
        (0..m).map(|j| j as f64 / m as f64).collect()
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        match self.config.variant {
            Variant::Steinhaus => Complex64::from_polar(1.0, rng.random::<f64>() * TAU),
            Variant::Gaussian => {
                let a: f64 = rng.sample(StandardNormal);
                let b: f64 = rng.sample(StandardNormal);
                Complex64::new(a, b) * std::f64::consts::FRAC_1_SQRT_2
            }
        }
    }

    /// One draw of X(h) on the grid h_j = j/M, j = 0..M.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.sample_levels(rng).into_iter().fold(vec![0.0; self.config.grid_size], |mut acc, lvl| {
            for (a, v) in acc.iter_mut().zip(lvl) {
                *a += v;
            }
            acc
        })
    }

    /// One draw split into multiscale increments: level 0 collects log p ≤ 1,
    /// level m ≥ 1 collects 2^{m−1} < log p ≤ 2^m; the levels sum to X(h).
    pub fn sample_levels<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Vec<f64>> {
        let m = self.config.grid_size;
        let dh = 1.0 / m as f64;
        let mut levels = vec![vec![0.0; m]; self.config.n as usize + 1];
        for (&lp, &isp) in self.log_p.iter().zip(&self.inv_sqrt_p) {
            let u = self.draw(rng);
            let level = if lp <= 1.0 { 0 } else { (lp.log2().ceil() as usize).min(self.config.n as usize) };
            let acc = &mut levels[level];
            let rot = Complex64::from_polar(1.0, -dh * lp);
            let mut z = u * isp;
            for a in acc.iter_mut() {
                *a += z.re;
                z *= rot;
            }
            if self.config.second_order {
                let rot2 = rot * rot;
                let mut z2 = u * u * (0.5 * isp * isp);
                for a in acc.iter_mut() {
                    *a += z2.re;
                    z2 *= rot2;
                }
            }
        }
        levels
    }

    /// ½ Σ_{p ≤ T} cos(Δ log p)/p: the model covariance at separation Δ.
    pub fn covariance(&self, delta: f64) -> f64 {
        self.log_p.iter().zip(&self.inv_sqrt_p).map(|(&lp, &isp)| 0.5 * (delta * lp).cos() * isp * isp).sum()
    }
}

/// X(h) on the configured grid for one random draw.
pub fn model_field<R: Rng + ?Sized>(cfg: ModelConfig, rng: &mut R) -> Result<Vec<f64>> {
    Ok(PrimeModel::new(cfg)?.sample(rng))
}

/// Σ_{2^{m−1} < log p ≤ 2^m} 1/(2p).
pub fn increment_covariance_sum(m: u32) -> Result<f64> {
    if m == 0 || m > 4 {
        return Err(Error::Budget(format!("level {m} outside 1..=4 (prime budget e^16)")));
    }
    let lo = (1u64 << (m - 1)) as f64;
    let hi = (1u64 << m) as f64;
    let primes = prime_sieve(hi.exp().floor() as u64)?;
    Ok(primes
        .primes
        .iter()
        .filter(|&&p| {
            let l = (p as f64).ln();
            l > lo && l <= hi
        })
        .map(|&p| 0.5 / p as f64)
        .sum())
}

#[derive(Debug, Clone)]
pub struct ModelMaxReport {
    pub mean_max: Estimate,
    /// log log T = n log 2
    pub leading: f64,
    /// log log T − ¾ log log log T
    pub corrected: f64,
    pub ratio_leading: f64,
    pub ratio_corrected: f64,
}

/// Mean of max_h X(h) over independent draws.
pub fn model_max_experiment<R: Rng + ?Sized>(cfg: ModelConfig, trials: usize, rng: &mut R) -> Result<ModelMaxReport> {
    if trials < 2 {
        return invalid("need at least two trials");
    }
    let model = PrimeModel::new(cfg)?;
    let seed: u64 = rng.random();
    let maxima = stats::replicate(seed, "zeta-model-max", trials, |r| {
        model.sample(r).into_iter().fold(f64::NEG_INFINITY, f64::max)
    });
    let mean_max = Estimate::from_samples(&maxima);
    let leading = cfg.n as f64 * LN_2;
    let corrected = leading - 0.75 * leading.ln();
    Ok(ModelMaxReport { mean_max, leading, corrected, ratio_leading: mean_max.mean / leading, ratio_corrected: mean_max.mean / corrected })
}

fn is_squarefree(mut m: u64) -> bool {
    let mut p = 2;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        if m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

/// d ≡ 1 mod 4 squarefree, or d = 4m with m ≡ 2, 3 mod 4 squarefree (d = 1 included).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    if d.rem_euclid(4) == 1 {
        return is_squarefree(d.unsigned_abs());
    }
    if d.rem_euclid(4) == 0 {
        let m = d / 4;
        let r = m.rem_euclid(4);
        return (r == 2 || r == 3) && is_squarefree(m.unsigned_abs());
    }
    false
}

/// Jacobi symbol (a/n) for odd n > 0.
fn jacobi(a: i64, n: u64) -> i8 {
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol (d/n).
pub fn kronecker_symbol(d: i64, n: i64) -> i8 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut result = 1i8;
    let mut m = n.unsigned_abs();
    if n < 0 && d < 0 {
        result = -result;
    }
    let twos = m.trailing_zeros();
    if twos > 0 {
        let k2 = if d % 2 == 0 {
            0
        } else {
            match d.rem_euclid(8) {
                1 | 7 => 1,
                _ => -1,
            }
        };
        if k2 == 0 {
            return 0;
        }
        if twos % 2 == 1 {
            result *= k2;
        }
        m >>= twos;
    }
    if m == 1 {
        return result;
    }
    result * jacobi(d, m)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// a_p = p + 1 − #{(x, y) ∈ 𝔽_p²: y² = x³ + ax + b}, counting affine solutions only.
pub fn elliptic_ap(a: i64, b: i64, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if p > 1_000_000 {
        return Err(Error::Budget(format!("p = {p} exceeds the enumeration budget 10^6")));
    }
    let disc = -16 * (4 * (a as i128).pow(3) + 27 * (b as i128).pow(2));
    if disc == 0 {
        return invalid("singular curve: discriminant vanishes");
    }
    if disc.rem_euclid(p as i128) == 0 {
        return invalid(format!("bad prime: {p} divides the discriminant {disc}"));
    }
    let pi = p as i128;
    let mut count: i64 = 0;
    for x in 0..pi {
        let rhs = (x * x % pi * x + (a as i128) * x + b as i128).rem_euclid(pi);
        count += if p == 2 {
            (0..2).filter(|y| (y * y) % 2 == rhs).count() as i64
        } else {
            1 + jacobi(rhs as i64, p) as i64
        };
    }
    Ok(p as i64 + 1 - count)
}

/// ζ(1/2 + it) by Euler–Maclaurin, for |t| ≤ 10⁶.
pub fn zeta_eval(t: f64) -> Result<Complex64> {
    if t.abs() > 1e6 {
        return Err(Error::Budget(format!("|t| = {} exceeds 10^6", t.abs())));
    }
    Ok(special::zeta(Complex64::new(0.5, t)))
}

/// ζ(s) for general complex s (s ≠ 1).
pub fn zeta_complex(s: Complex64) -> Result<Complex64> {
    if s.im.abs() > 1e6 {
        return Err(Error::Budget("imaginary part exceeds 10^6".into()));
    }
    if (s - 1.0).norm() < 1e-14 {
        return invalid("pole at s = 1");
    }
    Ok(special::zeta(s))
}

/// Maximum of log|ζ(1/2 + i(t0 + h))| over h ∈ [0, window] on a grid of
/// at least window·log t0 points, refined by golden-section search.
pub fn zeta_interval_max(t0: f64, window: f64, grid: usize) -> Result<(f64, f64)> {
    if !(window > 0.0) || !(t0 > 1.0) {
        return invalid("need t0 > 1 and window > 0");
    }
    let points = grid.max((window * t0.ln()).ceil() as usize).max(2);
    let f = |h: f64| -> Result<f64> { Ok(zeta_eval(t0 + h)?.norm().ln()) };
    let step = window / (points - 1) as f64;
    let mut best = (0.0, f64::NEG_INFINITY);
    for j in 0..points {
        let h = j as f64 * step;
        let v = f(h)?;
        if v > best.1 {
            best = (h, v);
        }
    }
    let (mut a, mut b) = ((best.0 - step).max(0.0), (best.0 + step).min(window));
    let r = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..40 {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        if f(c)? > f(d)? {
            b = d;
        } else {
            a = c;
        }
    }
    let h = 0.5 * (a + b);
    let v = f(h)?;
    Ok(if v > best.1 { (h, v) } else { best })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_count(n: u64) -> usize {
        (2..=n).filter(|&k| is_prime(k)).count()
    }

    #[test]
    fn sieve_counts() {
        assert_eq!(prime_sieve(10).unwrap().primes, vec![2, 3, 5, 7]);
        assert_eq!(prime_sieve(100).unwrap().primes.len(), 25);
        assert_eq!(prime_sieve(100).unwrap().primes.len(), trial_division_count(100));
        assert_eq!(prime_sieve(5000).unwrap().primes.len(), trial_division_count(5000));
        assert_eq!(prime_sieve(1_000_000).unwrap().primes.len(), 78_498);
        // across a segment boundary
        let big = prime_sieve(600_000).unwrap().primes;
        assert!(big.windows(2).all(|w| w[0] < w[1]));
        assert!(big.iter().all(|&p| is_prime(p)));
        assert!(prime_sieve(0).unwrap().primes.is_empty());
        assert!(prime_sieve(2_000_000_000).is_err());
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_symbol(-3, 5), -1);
        for n in 1..60i64 {
            let want = match n % 3 {
                0 => 0,
                1 => 1,
                _ => -1,
            };
            assert_eq!(kronecker_symbol(-3, n), want, "n={n}");
        }
        for d in -20..20 {
            assert_eq!(kronecker_symbol(d, 1), 1);
        }
        assert_eq!(kronecker_symbol(-5, -1), -1);
        assert_eq!(kronecker_symbol(5, -1), 1);
        assert_eq!(kronecker_symbol(1, 0), 1);
        assert_eq!(kronecker_symbol(-1, 0), 1);
        assert_eq!(kronecker_symbol(4, 0), 0);
        assert_eq!(kronecker_symbol(5, 2), -1);
        assert_eq!(kronecker_symbol(17, 2), 1);
        assert_eq!(kronecker_symbol(12, 2), 0);
    }

    #[test]
    fn fundamental_discriminants() {
        let pos: Vec<i64> = (1..=21).filter(|&d| is_fundamental_discriminant(d)).collect();
        assert_eq!(pos, vec![1, 5, 8, 12, 13, 17, 21]);
        let neg: Vec<i64> = (-8..0).rev().filter(|&d| is_fundamental_discriminant(d)).collect();
        assert_eq!(neg, vec![-3, -4, -7, -8]);
    }

    #[test]
    fn elliptic_examples() {
        assert_eq!(elliptic_ap(0, 1, 5).unwrap(), 1);
        // y² = x³ + 1 has discriminant −432 = −2⁴·3³
        assert!(elliptic_ap(0, 1, 3).is_err());
        assert!(elliptic_ap(0, 0, 7).is_err());
        assert!(elliptic_ap(1, 1, 9).is_err());
    }

    #[test]
    fn zeta_checks() {
        let z2 = zeta_complex(Complex64::new(2.0, 0.0)).unwrap();
        assert!((z2.re - 1.644_934_066_848_226_4).abs() < 1e-12);
        assert!((zeta_eval(0.0).unwrap().re + 1.460_354_5).abs() < 1e-7);
        let s = Complex64::new(0.3, 7.0);
        let one = Complex64::new(1.0, 0.0);
        let pi = Complex64::new(std::f64::consts::PI, 0.0);
        let rhs = Complex64::new(2.0, 0.0).powc(s)
            * pi.powc(s - one)
            * (pi * s / 2.0).sin()
            * special::complex_gamma(one - s)
            * special::zeta(one - s);
        // evaluate the left side directly by Euler–Maclaurin rather than through the reflection branch
        let lhs = special::zeta_direct(s);
        assert!((lhs - rhs).norm() < 1e-6, "{lhs} vs {rhs}");
        assert!(zeta_eval(2e6).is_err());
    }

    #[test]
    fn increment_sums() {
        let v4 = increment_covariance_sum(4).unwrap();
        assert!((v4 - 0.5 * LN_2).abs() < 0.02, "{v4}");
        let v3 = increment_covariance_sum(3).unwrap();
        assert!((v3 - 0.5 * LN_2).abs() < 0.05, "{v3}");
        assert!(increment_covariance_sum(5).is_err());
    }
}

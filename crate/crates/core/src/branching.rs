//! Branching random walks on the binary tree, the random energy model, and the
//! exact moments of the branching partition function.

use crate::error::{invalid, Error, Result};
use crate::poly::RationalPoly;
use crate::stats::{self, Estimate};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_distr::StandardNormal;
use statrs::distribution::{ContinuousCDF, Normal};
use std::collections::BTreeMap;
use std::f64::consts::LN_2;

pub const MAX_DEPTH: u32 = 26;

/// ½ log 2, the increment variance matching log|P_N| at N = 2ⁿ.
pub fn default_sigma2() -> f64 {
    0.5 * LN_2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeConfig {
    pub depth: u32,
    pub sigma2: f64,
}

impl TreeConfig {
    pub fn new(depth: u32, sigma2: f64) -> Result<TreeConfig> {
        if depth == 0 {
            return invalid("depth must be at least 1");
        }
        if depth > MAX_DEPTH {
            return Err(Error::Budget(format!("depth {depth} exceeds the leaf cap 2^{MAX_DEPTH}")));
        }
        if !(sigma2 >= 0.0) {
            return invalid("sigma2 must be non-negative");
        }
        Ok(TreeConfig { depth, sigma2 })
    }

    /// c = √(2σ² log 2)
    pub fn speed(&self) -> f64 {
        (2.0 * self.sigma2 * LN_2).sqrt()
    }
}

/// X_n(l) for the 2ⁿ leaves in left-to-right order.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafField {
    pub values: Vec<f64>,
}

impl LeafField {
    pub fn depth(&self) -> u32 {
        self.values.len().trailing_zeros()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

fn grow<R: Rng + ?Sized>(parent: &[f64], sd: f64, rng: &mut R) -> Vec<f64> {
    let mut child = Vec::with_capacity(2 * parent.len());
    for &p in parent {
        let a: f64 = rng.sample(StandardNormal);
        let b: f64 = rng.sample(StandardNormal);
        child.push(p + sd * a);
        child.push(p + sd * b);
    }
    child
}

/// Each node adds an independent N(0, σ²) to its parent's value.
pub fn simulate_brw<R: Rng + ?Sized>(cfg: TreeConfig, rng: &mut R) -> LeafField {
    let sd = cfg.sigma2.sqrt();
    let mut level = vec![0.0];
    for _ in 0..cfg.depth {
        level = grow(&level, sd, rng);
    }
    LeafField { values: level }
}

/// max_l X_m(l) for m = 1..=n from one walk (the top m levels form a depth-m walk).
pub fn brw_level_maxima<R: Rng + ?Sized>(cfg: TreeConfig, rng: &mut R) -> Vec<f64> {
    let sd = cfg.sigma2.sqrt();
    let mut level = vec![0.0];
    let mut out = Vec::with_capacity(cfg.depth as usize);
    for _ in 0..cfg.depth {
        level = grow(&level, sd, rng);
        out.push(level.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    }
    out
}

/// Level of the last common ancestor of leaves l and l′ in a depth-n tree.
pub fn lca_level(l: u64, l_prime: u64, n: u32) -> Result<u32> {
    if n > 63 || l >> n != 0 || l_prime >> n != 0 {
        return invalid(format!("leaf indices {l}, {l_prime} outside [0, 2^{n})"));
    }
    let diff = l ^ l_prime;
    Ok(if diff == 0 { n } else { n - (64 - diff.leading_zeros()) })
}

fn log_sum_exp(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let m = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// log Z with Z = 2^{−n} Σ_l e^{2βX_n(l)}.
pub fn log_partition_function(field: &LeafField, beta: f64) -> f64 {
    log_sum_exp(field.values.iter().map(|&x| 2.0 * beta * x)) - (field.values.len() as f64).ln()
}

pub fn partition_function(field: &LeafField, beta: f64) -> f64 {
    log_partition_function(field, beta).exp()
}

/// E[(β log 2ⁿ)⁻¹ log(2ⁿ Z)] for each β, i.e. minus the mean free energy.
pub fn free_energy_curve<R: Rng + ?Sized>(cfg: TreeConfig, betas: &[f64], trials: usize, rng: &mut R) -> Result<Vec<Estimate>> {
    if trials < 100 {
        return invalid("need at least 100 trials");
    }
    if betas.iter().any(|&b| !(b > 0.0)) {
        return invalid("betas must be positive");
    }
    let seed: u64 = rng.random();
    let log_n = cfg.depth as f64 * LN_2;
    let rows = stats::replicate(seed, "free-energy", trials, |r| {
        let field = simulate_brw(cfg, r);
        betas.iter().map(|&b| (log_partition_function(&field, b) + log_n) / (b * log_n)).collect::<Vec<f64>>()
    });
    Ok((0..betas.len())
        .map(|i| Estimate::from_samples(&rows.iter().map(|row| row[i]).collect::<Vec<_>>()))
        .collect())
}

#[derive(Debug, Clone)]
pub struct MaxRegression {
    pub depths: Vec<u32>,
    pub mean_max: Vec<Estimate>,
    /// c = √(2σ² log 2)
    pub speed: f64,
    /// slope of (mean max − c n) against log n
    pub log_coefficient: f64,
    pub log_coefficient_se: f64,
    /// c from a free fit of mean max against (1, n, log n)
    pub fitted_speed: f64,
}

fn regress(depths: &[u32], means: Vec<Estimate>, speed: f64) -> MaxRegression {
    let x: Vec<f64> = depths.iter().map(|&n| (n as f64).ln()).collect();
    let y: Vec<f64> = depths.iter().zip(&means).map(|(&n, e)| e.mean - speed * n as f64).collect();
    let se: Vec<f64> = means.iter().map(|e| e.std_err.max(1e-12)).collect();
    let (_, b, se_b) = stats::weighted_slope(&x, &y, &se);
    let rows: Vec<Vec<f64>> = depths.iter().map(|&n| vec![1.0, n as f64, (n as f64).ln()]).collect();
    let fit = stats::least_squares(&rows, &means.iter().map(|e| e.mean).collect::<Vec<_>>());
    MaxRegression { depths: depths.to_vec(), mean_max: means, speed, log_coefficient: b, log_coefficient_se: se_b, fitted_speed: fit[1] }
}

/// Mean BRW maxima over depths, each trial one walk of the largest depth.
pub fn brw_max_experiment<R: Rng + ?Sized>(depths: &[u32], sigma2: f64, trials: usize, rng: &mut R) -> Result<MaxRegression> {
    if trials < 500 {
        return invalid("need at least 500 trials");
    }
    if depths.len() < 3 {
        return invalid("need at least three depths");
    }
    let deepest = *depths.iter().max().unwrap();
    let cfg = TreeConfig::new(deepest, sigma2)?;
    let seed: u64 = rng.random();
    let rows = stats::replicate(seed, "brw-max", trials, |r| brw_level_maxima(cfg, r));
    let means = depths
        .iter()
        .map(|&n| Estimate::from_samples(&rows.iter().map(|row| row[n as usize - 1]).collect::<Vec<_>>()))
        .collect();
    Ok(regress(depths, means, cfg.speed()))
}

/// Max of 2ⁿ independent N(0, nσ²) variables, sampled exactly by inverting Φ^{2ⁿ}.
pub fn rem_max<R: Rng + ?Sized>(n: u32, sigma2: f64, rng: &mut R) -> f64 {
    let count = (n as f64) * LN_2;
    let u: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    // P(max > x) = 1 − Φ(x/s)^{2ⁿ}; the tail probability q solves (1 − q)^{2ⁿ} = u
    let q = -(u.ln() / count.exp()).exp_m1();
    let std = Normal::new(0.0, 1.0).unwrap();
    -std.inverse_cdf(q) * (n as f64 * sigma2).sqrt()
}

pub fn rem_max_experiment<R: Rng + ?Sized>(depths: &[u32], sigma2: f64, trials: usize, rng: &mut R) -> Result<MaxRegression> {
    if trials < 500 {
        return invalid("need at least 500 trials");
    }
    if depths.len() < 3 || depths.iter().any(|&n| n == 0 || n > 60) {
        return invalid("need at least three depths in 1..=60");
    }
    let seed: u64 = rng.random();
    let rows = stats::replicate(seed, "rem-max", trials, |r| depths.iter().map(|&n| rem_max(n, sigma2, r)).collect::<Vec<_>>());
    let means = (0..depths.len()).map(|i| Estimate::from_samples(&rows.iter().map(|row| row[i]).collect::<Vec<_>>())).collect();
    Ok(regress(depths, means, (2.0 * sigma2 * LN_2).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchingMode {
    BruteForce,
    Recursion,
}

/// Σ_e c_e 2^{e/q} · 2^{−shift}, exact for rational β².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pow2Sum {
    pub q: u64,
    pub shift: u64,
    pub terms: BTreeMap<u64, BigUint>,
}

impl Pow2Sum {
    fn one(q: u64) -> Pow2Sum {
        Pow2Sum { q, shift: 0, terms: BTreeMap::from([(0, BigUint::one())]) }
    }

    fn mul(&self, other: &Pow2Sum) -> Pow2Sum {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *terms.entry(ea + eb).or_insert_with(BigUint::zero) += ca * cb;
            }
        }
        Pow2Sum { q: self.q, shift: self.shift + other.shift, terms }
    }

    fn scaled(&self, factor: &BigUint, extra_exp: u64) -> Pow2Sum {
        Pow2Sum { q: self.q, shift: self.shift, terms: self.terms.iter().map(|(e, c)| (e + extra_exp, c * factor)).collect() }
    }

    fn add_assign(&mut self, other: Pow2Sum) {
        for (e, c) in other.terms {
            *self.terms.entry(e).or_insert_with(BigUint::zero) += c;
        }
    }

    /// Exact rational value when every exponent is a multiple of q.
    pub fn to_rational(&self) -> Option<BigRational> {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            if e % self.q != 0 {
                if c.is_zero() {
                    continue;
                }
                return None;
            }
            acc += BigInt::from(c.clone()) << (e / self.q) as usize;
        }
        Some(BigRational::new(acc, BigInt::one() << self.shift as usize))
    }

    pub fn ln_value(&self) -> f64 {
        let q = self.q as f64;
        log_sum_exp(self.terms.iter().map(|(e, c)| *e as f64 / q * LN_2 + ln_big(c))) - self.shift as f64 * LN_2
    }

    pub fn to_f64(&self) -> f64 {
        self.ln_value().exp()
    }
}

fn ln_big(c: &BigUint) -> f64 {
    let bits = c.bits();
    if bits < 1000 {
        c.to_f64().unwrap().ln()
    } else {
        let shifted = c >> (bits - 64) as usize;
        shifted.to_f64().unwrap().ln() + (bits - 64) as f64 * LN_2
    }
}

fn beta_sq_parts(beta: Ratio<i64>) -> Result<(u64, u64)> {
    let b2 = beta * beta;
    let (p, q) = (b2.numer().unsigned_abs(), b2.denom().unsigned_abs());
    if q > 1 << 20 || p > 1 << 20 {
        return Err(Error::Budget("β² numerator/denominator too large for exact powers of 2".into()));
    }
    let g = p.gcd(&q).max(1);
    Ok((p / g, q / g))
}

/// 2^{−kn} Σ_{l_1..l_k} 2^{β² Σ_{i,j} lca(l_i, l_j)} exactly (σ² = ½ log 2).
pub fn mom_branching_exact(k: u32, beta: Ratio<i64>, n: u32, mode: BranchingMode) -> Result<Pow2Sum> {
    let (p, q) = beta_sq_parts(beta)?;
    match mode {
        BranchingMode::BruteForce => {
            if (k as u64) * (n as u64) > 24 {
                return Err(Error::Budget(format!("brute force needs 2^{} tuples (cap 2^24)", k * n)));
            }
            let leaves = 1u64 << n;
            let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
            let mut tuple = vec![0u64; k as usize];
            let total = 1u64 << (k * n);
            for idx in 0..total {
                let mut rest = idx;
                for t in tuple.iter_mut() {
                    *t = rest % leaves;
                    rest /= leaves;
                }
                let mut s = 0u64;
                for a in &tuple {
                    for b in &tuple {
                        s += lca_level(*a, *b, n)? as u64;
                    }
                }
                *counts.entry(p * s).or_insert_with(BigUint::zero) += 1u32;
            }
            Ok(Pow2Sum { q, shift: k as u64 * n as u64, terms: counts })
        }
        BranchingMode::Recursion => {
            if k > 8 || n > 64 {
                return Err(Error::Budget("recursion limited to k ≤ 8, n ≤ 64".into()));
            }
            // m_j(d) for j = 0..=k at the current depth d
            let mut m: Vec<Pow2Sum> = (0..=k).map(|_| Pow2Sum::one(q)).collect();
            for _ in 0..n {
                let next: Vec<Pow2Sum> = (0..=k)
                    .map(|kk| {
                        let mut acc = Pow2Sum { q, shift: 0, terms: BTreeMap::new() };
                        for j in 0..=kk {
                            let c = binomial(kk, j);
                            let left = m[j as usize].scaled(&c, p * (j * j) as u64);
                            let right = m[(kk - j) as usize].scaled(&BigUint::one(), p * ((kk - j) * (kk - j)) as u64);
                            acc.add_assign(left.mul(&right));
                        }
                        acc
                    })
                    .collect();
                m = next;
            }
            let mut out = m.swap_remove(k as usize);
            out.shift = k as u64 * n as u64;
            Ok(out)
        }
    }
}

fn binomial(n: u32, k: u32) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// log of the branching moment of moments for real β by the same recursion in floating point.
pub fn ln_mom_branching(k: u32, beta: f64, n: u32) -> Result<f64> {
    if k > 64 {
        return Err(Error::Budget("k ≤ 64".into()));
    }
    let b2 = beta * beta;
    let ln_binom = |a: u32, b: u32| -> f64 { (0..b).map(|i| ((a - i) as f64 / (i + 1) as f64).ln()).sum() };
    // ln of 2^{−jd} m_j(d)
    let mut r = vec![0.0f64; k as usize + 1];
    for _ in 0..n {
        let next: Vec<f64> = (0..=k)
            .map(|kk| {
                let terms: Vec<f64> = (0..=kk)
                    .map(|j| {
                        ln_binom(kk, j) + b2 * ((j * j + (kk - j) * (kk - j)) as f64) * LN_2 + r[j as usize] + r[(kk - j) as usize]
                            - kk as f64 * LN_2
                    })
                    .collect();
                log_sum_exp(terms.iter().copied())
            })
            .collect();
        r = next;
    }
    Ok(r[k as usize])
}

/// 2^{2β²n−1}(2^{(2β²−1)n} − 1)/(2^{2β²−1} − 1) + 2^{(4β²−1)n} for integer β.
pub fn k2_closed_form(beta: u32, n: u32) -> BigRational {
    let two = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(BigInt::one() << e as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
        }
    };
    let b2 = (beta * beta) as i64;
    let n = n as i64;
    two(2 * b2 * n - 1) * (two((2 * b2 - 1) * n) - BigRational::one()) / (two(2 * b2 - 1) - BigRational::one()) + two((4 * b2 - 1) * n)
}

/// Exact polynomial in x = 2ⁿ of degree k²β² − k + 1, verified at two further depths.
pub fn mom_branching_polynomial(k: u32, beta: u32) -> Result<RationalPoly> {
    if k == 0 || beta == 0 {
        return invalid("k and beta must be positive integers");
    }
    let degree = (k * k * beta * beta - k + 1) as usize;
    if degree + 2 > 64 {
        return Err(Error::Budget("degree too large for the recursion depth cap".into()));
    }
    let beta_r = Ratio::from_integer(beta as i64);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for n in 0..=(degree as u32 + 2) {
        let v = mom_branching_exact(k, beta_r, n, BranchingMode::Recursion)?;
        xs.push(BigRational::from_integer(BigInt::one() << n as usize));
        ys.push(v.to_rational().expect("integer β gives integer exponents"));
    }
    let poly = RationalPoly::interpolate(&xs[..=degree], &ys[..=degree])?;
    for i in degree + 1..xs.len() {
        if poly.eval(&xs[i]) != ys[i] {
            return Err(Error::Verification(format!("interpolant disagrees at depth {i}")));
        }
    }
    if poly.degree() != Some(degree) {
        return Err(Error::Verification(format!("expected degree {degree}, got {:?}", poly.degree())));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::replicate_rng;

    #[test]
    fn lca_examples() {
        assert_eq!(lca_level(5, 5, 4).unwrap(), 4);
        assert_eq!(lca_level(0, 15, 4).unwrap(), 0);
        assert_eq!(lca_level(0, 1, 2).unwrap(), 1);
        assert_eq!(lca_level(2, 3, 2).unwrap(), 1);
        assert_eq!(lca_level(0, 2, 2).unwrap(), 0);
        assert!(lca_level(4, 0, 2).is_err());
    }

    #[test]
    fn brw_basics() {
        let mut rng = replicate_rng(1, "brw", 0);
        let f = simulate_brw(TreeConfig::new(5, 0.0).unwrap(), &mut rng);
        assert!(f.values.iter().all(|&v| v == 0.0));
        assert_eq!(f.depth(), 5);
        assert!(TreeConfig::new(27, 1.0).is_err());
        assert_eq!(log_partition_function(&simulate_brw(TreeConfig::new(6, 1.0).unwrap(), &mut rng), 0.0).exp(), 1.0);
    }

    #[test]
    fn brw_covariance() {
        let cfg = TreeConfig::new(10, 0.5).unwrap();
        let fields = stats::replicate(3, "brw-cov", 10_000, |r| simulate_brw(cfg, r));
        let pairs = [(0u64, 0u64), (0, 1), (0, 1023), (5, 6), (100, 101), (512, 513), (3, 700), (128, 255), (17, 18), (900, 1000)];
        for (a, b) in pairs {
            let xs: Vec<f64> = fields.iter().map(|f| f.values[a as usize]).collect();
            let ys: Vec<f64> = fields.iter().map(|f| f.values[b as usize]).collect();
            let prods: Vec<f64> = xs.iter().zip(&ys).map(|(x, y)| x * y).collect();
            let e = Estimate::from_samples(&prods);
            let want = cfg.sigma2 * lca_level(a, b, 10).unwrap() as f64;
            assert!(e.z_score(want).abs() < 3.5, "pair ({a},{b}): {e:?} vs {want}");
        }
        let var: Vec<f64> = fields.iter().map(|f| f.values[77] * f.values[77]).collect();
        assert!(Estimate::from_samples(&var).z_score(5.0).abs() < 3.0);
    }

    #[test]
    fn rem_partition_mean() {
        // E[2^{−n} Σ e^{−βX}] = e^{β²n/2} for X ~ N(0, n)
        let (n, beta) = (8u32, 0.4);
        let vals = stats::replicate(4, "rem-z", 4000, |r| {
            (0..1 << n)
                .map(|_| {
                    let x: f64 = r.sample(StandardNormal);
                    (-beta * x * (n as f64).sqrt()).exp()
                })
                .sum::<f64>()
                / (1u64 << n) as f64
        });
        let e = Estimate::from_samples(&vals);
        assert!(e.z_score((beta * beta * n as f64 / 2.0).exp()).abs() < 3.0, "{e:?}");
    }

    #[test]
    fn rem_max_distribution() {
        // compare against direct maxima of 2^6 normals
        let direct = stats::replicate(9, "rem-direct", 4000, |r| {
            (0..64).map(|_| r.sample::<f64, _>(StandardNormal) * 6f64.sqrt()).fold(f64::NEG_INFINITY, f64::max)
        });
        let exact = stats::replicate(10, "rem-exact", 4000, |r| rem_max(6, 1.0, r));
        let (a, b) = (Estimate::from_samples(&direct), Estimate::from_samples(&exact));
        assert!((a.mean - b.mean).abs() < 3.0 * (a.std_err.powi(2) + b.std_err.powi(2)).sqrt());
    }

    #[test]
    fn branching_mom_small() {
        let one = Ratio::from_integer(1);
        let v = mom_branching_exact(2, one, 1, BranchingMode::BruteForce).unwrap();
        assert_eq!(v.to_rational().unwrap(), BigRational::from_integer(10.into()));
        for n in 0..6 {
            for b in [Ratio::new(1, 2), one, Ratio::from_integer(2)] {
                let v = mom_branching_exact(1, b, n, BranchingMode::Recursion).unwrap();
                let want = (b * b * Ratio::from_integer(n as i64)).to_f64().unwrap() * LN_2;
                assert!((v.ln_value() - want).abs() < 1e-12);
            }
            let zero = mom_branching_exact(3, Ratio::from_integer(0), n, BranchingMode::Recursion).unwrap();
            assert!((zero.to_f64() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn recursion_equals_brute_force() {
        for k in 1..=3u32 {
            for n in 0..=4u32 {
                for b in [Ratio::new(1, 2), Ratio::from_integer(1), Ratio::from_integer(2)] {
                    let r = mom_branching_exact(k, b, n, BranchingMode::Recursion).unwrap();
                    let f = mom_branching_exact(k, b, n, BranchingMode::BruteForce).unwrap();
                    assert_eq!(r, f, "k={k} n={n} beta={b}");
                }
            }
        }
        assert!(mom_branching_exact(4, Ratio::from_integer(1), 7, BranchingMode::BruteForce).is_err());
    }

    #[test]
    fn k2_formula_and_polynomials() {
        for beta in [1u32, 2] {
            for n in 0..=10 {
                let r = mom_branching_exact(2, Ratio::from_integer(beta as i64), n, BranchingMode::Recursion).unwrap();
                assert_eq!(r.to_rational().unwrap(), k2_closed_form(beta, n));
            }
        }
        assert_eq!(mom_branching_polynomial(1, 1).unwrap(), RationalPoly::from_integers(&[0, 1]));
        let p = mom_branching_polynomial(2, 1).unwrap();
        // x²(x − 1)/2 + x³
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p, RationalPoly::new(vec![BigRational::zero(), BigRational::zero(), -half.clone(), half * BigRational::from_integer(3.into())]));
        assert_eq!(mom_branching_polynomial(2, 2).unwrap().degree(), Some(15));
        assert_eq!(mom_branching_polynomial(3, 1).unwrap().degree(), Some(7));
    }

    #[test]
    fn float_recursion_and_regimes() {
        for n in 0..8 {
            let exact = mom_branching_exact(3, Ratio::new(1, 2), n, BranchingMode::Recursion).unwrap().ln_value();
            assert!((ln_mom_branching(3, 0.5, n).unwrap() - exact).abs() < 1e-10);
        }
        // subcritical: growth rate kβ² log 2
        let rate = (ln_mom_branching(2, 0.5, 400).unwrap() - ln_mom_branching(2, 0.5, 200).unwrap()) / 200.0;
        assert!((rate - 0.5 * LN_2).abs() < 1e-6);
        let rate = (ln_mom_branching(2, 1.0, 60).unwrap() - ln_mom_branching(2, 1.0, 30).unwrap()) / 30.0;
        assert!((rate - 3.0 * LN_2).abs() < 1e-6);
        // leading coefficient: 1/(2 − 2^{2β²}) below 1/√2, (2^{2β²} − 1)/(2^{2β²} − 2) above
        let below = |b: f64| 1.0 / (2.0 - 2f64.powf(2.0 * b * b));
        let above = |b: f64| (2f64.powf(2.0 * b * b) - 1.0) / (2f64.powf(2.0 * b * b) - 2.0);
        for b in [0.5, 0.6] {
            let c = (ln_mom_branching(2, b, 2000).unwrap() - 2.0 * b * b * 2000.0 * LN_2).exp();
            assert!((c - below(b)).abs() < 1e-3 * below(b), "beta={b}: {c}");
        }
        for b in [0.8, 1.0] {
            let n = 400;
            let c = (ln_mom_branching(2, b, n).unwrap() - (4.0 * b * b - 1.0) * n as f64 * LN_2).exp();
            assert!((c - above(b)).abs() < 1e-3 * above(b), "beta={b}: {c}");
            assert!((c - below(b)).abs() > 0.1, "branches coincide at beta={b}");
        }
    }
}

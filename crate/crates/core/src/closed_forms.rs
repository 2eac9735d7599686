//! Closed-form moments, leading-order coefficients, Selberg's integral,
//! extreme-value densities and the moments-of-moments regime predictor.

use crate::ensembles::Group;
use crate::error::{invalid, Error, Result};
use crate::special::{bessel_k0, gamma, ln_abs_gamma_signed, ln_barnes_g1, ln_gamma};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::f64::consts::{LN_2, PI};

/// M_N(β) = E|P_N(A, θ)|^{2β} = ∏_{j=1}^N Γ(j)Γ(j+2β)/Γ(j+β)², as a logarithm.
pub fn ln_keating_snaith_moment(n: u64, beta: f64) -> Result<f64> {
    if !(2.0 * beta > -1.0) {
        return invalid(format!("beta = {beta} must exceed -1/2"));
    }
    let mut acc = 0.0;
    for j in 1..=n {
        let j = j as f64;
        acc += ln_gamma(j) + ln_gamma(j + 2.0 * beta) - 2.0 * ln_gamma(j + beta);
    }
    Ok(acc)
}

pub fn keating_snaith_moment(n: u64, beta: f64) -> Result<f64> {
    Ok(ln_keating_snaith_moment(n, beta)?.exp())
}

/// Exact M_N(β) for integer β: ∏_{0≤i,j≤β−1} (1 + N/(i+j+1)).
pub fn keating_snaith_moment_exact(n: u64, beta: u32) -> BigRational {
    let mut acc = BigRational::one();
    let nn = BigInt::from(n);
    for i in 0..beta {
        for j in 0..beta {
            let d = BigInt::from(i + j + 1);
            acc *= BigRational::new(&d + &nn, d);
        }
    }
    acc
}

/// c_U(β) = G²(1+β)/G(1+2β).
pub fn unitary_coefficient(beta: f64) -> f64 {
    (2.0 * ln_barnes_g1(beta) - ln_barnes_g1(2.0 * beta)).exp()
}

/// c_U(β) for integer β: ∏_{j=0}^{β−1} j!/(j+β)!.
pub fn unitary_coefficient_exact(beta: u32) -> BigRational {
    let fact = |m: u32| -> BigInt { (1..=m).fold(BigInt::one(), |a, k| a * BigInt::from(k)) };
    let mut acc = BigRational::one();
    for j in 0..beta {
        acc *= BigRational::new(fact(j), fact(j + beta));
    }
    acc
}

fn double_factorial(m: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = m;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

fn twice_beta_integer(beta: f64) -> Option<u64> {
    let m = (2.0 * beta).round();
    if m >= 1.0 && (2.0 * beta - m).abs() < 1e-12 {
        Some(m as u64)
    } else {
        None
    }
}

/// Exact c_Sp(β) = 1/∏_{j=1}^{2β}(2j−1)!! for 2β ∈ ℕ.
pub fn symplectic_coefficient_exact(two_beta: u64) -> BigRational {
    let mut den = BigInt::one();
    for j in 1..=two_beta {
        den *= double_factorial(2 * j - 1);
    }
    BigRational::new(BigInt::one(), den)
}

/// Exact c_SO(β) = 2^{2β}/∏_{j=1}^{2β−1}(2j−1)!! for 2β ∈ ℕ.
pub fn orthogonal_coefficient_exact(two_beta: u64) -> BigRational {
    let mut den = BigInt::one();
    for j in 1..two_beta {
        den *= double_factorial(2 * j - 1);
    }
    BigRational::new(BigInt::one() << two_beta as usize, den)
}

/// Leading moment coefficient for the given group.
pub fn symmetry_coefficient(group: Group, beta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return invalid("beta must be positive");
    }
    match group {
        Group::Unitary => Ok(unitary_coefficient(beta)),
        Group::Symplectic => match twice_beta_integer(beta) {
            Some(m) => Ok(symplectic_coefficient_exact(m).to_f64().unwrap_or(0.0)),
            None => invalid("symplectic coefficient needs 2β to be a positive integer"),
        },
        Group::SpecialOrthogonalEven => match twice_beta_integer(beta) {
            Some(m) => Ok(orthogonal_coefficient_exact(m).to_f64().unwrap_or(f64::INFINITY)),
            None => invalid("orthogonal coefficient needs 2β to be a positive integer"),
        },
        other => invalid(format!("no moment coefficient for {:?}", other)),
    }
}

/// Selberg's integral J(a, b, α, β, γ, n) in closed form for real parameters.
pub fn selberg_integral(a: f64, b: f64, alpha: f64, beta: f64, gamma_: f64, n: u32) -> Result<f64> {
    let violated = |s: &str| Err(Error::Constraint(s.to_string()));
    if n == 0 {
        return invalid("n must be at least 1");
    }
    if !(a > 0.0) {
        return violated("a > 0");
    }
    if !(b > 0.0) {
        return violated("b > 0");
    }
    if !(alpha > 0.0) {
        return violated("alpha > 0");
    }
    if !(beta > 0.0) {
        return violated("beta > 0");
    }
    if !(alpha + beta > 1.0) {
        return violated("alpha + beta > 1");
    }
    let nf = n as f64;
    if !(gamma_ > -1.0 / nf) {
        return violated("gamma > -1/n");
    }
    if n > 1 {
        let m = nf - 1.0;
        if !(gamma_ < alpha / m) {
            return violated("gamma < alpha/(n-1)");
        }
        if !(gamma_ < beta / m) {
            return violated("gamma < beta/(n-1)");
        }
        if !(gamma_ < (alpha + beta - 1.0) / (2.0 * m)) {
            return violated("gamma < (alpha+beta-1)/(2(n-1))");
        }
    }
    let mut sign = 1.0;
    let mut acc = nf * (2.0 * PI).ln() - ((alpha + beta) * nf - gamma_ * nf * (nf - 1.0) - nf) * (a + b).ln();
    let mut add = |x: f64, s: f64| {
        let (sg, l) = ln_abs_gamma_signed(x);
        if s > 0.0 {
            sign *= sg;
            acc += l;
        } else {
            sign *= sg;
            acc -= l;
        }
    };
    for j in 0..n {
        let jf = j as f64;
        add(1.0 + gamma_ + jf * gamma_, 1.0);
        add(alpha + beta - (nf - 1.0 + jf) * gamma_ - 1.0, 1.0);
        add(1.0 + gamma_, -1.0);
        add(alpha - jf * gamma_, -1.0);
        add(beta - jf * gamma_, -1.0);
    }
    Ok(sign * acc.exp())
}

/// Density of the sum of two independent standard Gumbel variables,
/// p(y) = 2 e^{−y} K₀(2 e^{−y/2}).
pub fn gumbel_sum_density(y: f64) -> f64 {
    let x = 2.0 * (-0.5 * y).exp();
    if x > 700.0 {
        return 0.0;
    }
    if x == 0.0 {
        return 0.0;
    }
    let k = bessel_k0(x);
    if k == 0.0 {
        return 0.0;
    }
    (LN_2 - y + k.ln()).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

impl Regime {
    /// Classification by comparing kβ² with 1 exactly.
    pub fn classify_rational(k: Ratio<i64>, beta: Ratio<i64>) -> Regime {
        let kb2 = Ratio::<i128>::new(*k.numer() as i128, *k.denom() as i128)
            * Ratio::<i128>::new(*beta.numer() as i128, *beta.denom() as i128).pow(2);
        match kb2.cmp(&Ratio::from_integer(1)) {
            Ordering::Less => Regime::Subcritical,
            Ordering::Equal => Regime::Critical,
            Ordering::Greater => Regime::Supercritical,
        }
    }

    /// Floating-point classification; kβ² within 1e-12 of 1 counts as critical.
    pub fn classify(k: f64, beta: f64) -> Regime {
        let kb2 = k * beta * beta;
        if (kb2 - 1.0).abs() <= 1e-12 {
            Regime::Critical
        } else if kb2 < 1.0 {
            Regime::Subcritical
        } else {
            Regime::Supercritical
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modulation {
    LogN,
}

/// Predicted growth MoM(k, β) ~ coefficient · N^exponent · (log N)^{[critical]}.
#[derive(Debug, Clone, PartialEq)]
pub struct MomPrediction {
    pub regime: Regime,
    pub exponent: f64,
    pub coefficient: Option<f64>,
    pub modulating_factor: Option<Modulation>,
}

impl MomPrediction {
    /// Leading-order value at N when a coefficient is available.
    pub fn value_at(&self, n: f64) -> Option<f64> {
        let c = self.coefficient?;
        let log = match self.modulating_factor {
            Some(Modulation::LogN) => n.ln(),
            None => 1.0,
        };
        Some(c * n.powf(self.exponent) * log)
    }
}

/// Moments-of-moments growth prediction for (group, k, β).
pub fn mom_prediction(group: Group, k: f64, beta: f64, n: u64) -> Result<MomPrediction> {
    mom_prediction_with_regime(group, k, beta, n, Regime::classify(k, beta))
}

/// As [`mom_prediction`] with the regime decided exactly from rational k and β.
pub fn mom_prediction_rational(group: Group, k: Ratio<i64>, beta: Ratio<i64>, n: u64) -> Result<MomPrediction> {
    let kf = *k.numer() as f64 / *k.denom() as f64;
    let bf = *beta.numer() as f64 / *beta.denom() as f64;
    mom_prediction_with_regime(group, kf, bf, n, Regime::classify_rational(k, beta))
}

fn mom_prediction_with_regime(group: Group, k: f64, beta: f64, n: u64, regime: Regime) -> Result<MomPrediction> {
    if !(k > 0.0 && beta > 0.0) {
        return invalid("k and beta must be positive");
    }
    if n == 0 {
        return invalid("N must be positive");
    }
    let kb2 = k * beta * beta;
    match group {
        Group::Unitary => {
            if (k - 1.0).abs() < 1e-15 {
                // k = 1 is the moment itself: c_U(β) N^{β²} in every regime
                return Ok(MomPrediction { regime, exponent: beta * beta, coefficient: Some(unitary_coefficient(beta)), modulating_factor: None });
            }
            match regime {
                Regime::Subcritical => Ok(MomPrediction {
                    regime,
                    exponent: kb2,
                    coefficient: Some(unitary_coefficient(beta).powf(k) * fyodorov_bouchaud_moment(k, beta)?),
                    modulating_factor: None,
                }),
                Regime::Critical => {
                    if k < 1.0 {
                        return Err(Error::InvalidParameter("critical point requires k > 1".into()));
                    }
                    let c = (k - 1.0) / gamma(1.0 - 1.0 / k).powf(k) * unitary_coefficient(1.0 / k.sqrt()).powf(k);
                    Ok(MomPrediction { regime, exponent: 1.0, coefficient: Some(c), modulating_factor: Some(Modulation::LogN) })
                }
                Regime::Supercritical => Ok(MomPrediction { regime, exponent: k * k * beta * beta - k + 1.0, coefficient: None, modulating_factor: None }),
            }
        }
        Group::Symplectic | Group::SpecialOrthogonalEven => {
            let is_int = |x: f64| x >= 1.0 && (x - x.round()).abs() < 1e-12;
            if !(is_int(k) && is_int(beta)) {
                return Err(Error::InvalidParameter("symplectic/orthogonal predictions need positive integer k and beta".into()));
            }
            let kb = k * beta;
            if group == Group::SpecialOrthogonalEven && k == 1.0 && beta == 1.0 {
                return Ok(MomPrediction { regime, exponent: 1.0, coefficient: Some(2.0), modulating_factor: None });
            }
            let exponent = if group == Group::Symplectic { kb * (2.0 * kb + 1.0) - k } else { kb * (2.0 * kb - 1.0) - k };
            Ok(MomPrediction { regime, exponent, coefficient: None, modulating_factor: None })
        }
        other => invalid(format!("no moments-of-moments prediction for {:?}", other)),
    }
}

/// Leading-order log D_N for k Fisher–Hartwig singularities of strength β, up to O(1):
/// kβ² log N − 2β² Σ_{i<j} log(sin|θ_i − θ_j|/2 + 1/N).
pub fn fahs_log_det_prediction(thetas: &[f64], beta: f64, n: u64) -> f64 {
    let nf = n as f64;
    let k = thetas.len() as f64;
    let mut acc = k * beta * beta * nf.ln();
    for i in 0..thetas.len() {
        for j in (i + 1)..thetas.len() {
            acc -= 2.0 * beta * beta * ((0.5 * (thetas[i] - thetas[j]).abs()).sin().abs() + 1.0 / nf).ln();
        }
    }
    acc
}

/// Γ(1 − kβ²)/Γ(1 − β²)^k.
pub fn fyodorov_bouchaud_moment(k: f64, beta: f64) -> Result<f64> {
    if !(k * beta * beta < 1.0) {
        return invalid(format!("k·beta² = {} must be below 1", k * beta * beta));
    }
    Ok((ln_gamma(1.0 - k * beta * beta) - k * ln_gamma(1.0 - beta * beta)).exp())
}

/// Truncated Euler product for the arithmetic factor a_ζ(β) over primes ≤ p_max.
pub fn zeta_arithmetic_factor(beta: f64, p_max: u64) -> Result<f64> {
    if !(beta > 0.0) || p_max < 2 {
        return invalid("need beta > 0 and p_max ≥ 2");
    }
    let primes = crate::number_models::prime_sieve(p_max)?;
    let mut ln_acc = 0.0;
    for &p in &primes.primes {
        let x = 1.0 / p as f64;
        // Σ_m (Γ(β+m)/(m!Γ(β)))² x^m with term ratio ((β+m)/(m+1))² x
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut m = 0.0;
        loop {
            let r = ((beta + m) / (m + 1.0)).powi(2) * x;
            term *= r;
            sum += term;
            m += 1.0;
            // remaining tail is bounded by a geometric series once r < 1
            let r_next = ((beta + m) / (m + 1.0)).powi(2) * x;
            if r_next < 1.0 && term * r_next / (1.0 - r_next) < 1e-18 * sum {
                break;
            }
        }
        ln_acc += beta * beta * (-x).ln_1p() + sum.ln();
    }
    Ok(ln_acc.exp())
}

/// Predicted maximum of a branching random walk and of its independent counterpart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BramsonPrediction {
    /// c = √(2σ² log 2)
    pub c: f64,
    /// c n − (3/2)(σ²/c) log n
    pub log_correlated: f64,
    /// c n − (1/2)(σ²/c) log n
    pub independent: f64,
}

pub fn bramson_prediction(n: f64, sigma2: f64) -> Result<BramsonPrediction> {
    if !(n >= 2.0) || !(sigma2 > 0.0) {
        return invalid("need n ≥ 2 and sigma2 > 0");
    }
    let c = (2.0 * sigma2 * LN_2).sqrt();
    let r = sigma2 / c;
    Ok(BramsonPrediction { c, log_correlated: c * n - 1.5 * r * n.ln(), independent: c * n - 0.5 * r * n.ln() })
}

pub fn to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    r.to_f64().unwrap_or_else(|| if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

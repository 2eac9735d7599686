//! Special functions: complex Gamma, Barnes G, K₀, the Hurwitz-free Riemann zeta
//! by Euler–Maclaurin, and adaptive Gauss–Kronrod quadrature.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;
use std::sync::OnceLock;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// log Γ(x) for real x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Γ(x) for real x (poles return ±inf/NaN like the underlying implementation).
pub fn gamma(x: f64) -> f64 {
    if x > 0.0 {
        statrs::function::gamma::gamma(x)
    } else {
        complex_gamma(Complex64::new(x, 0.0)).re
    }
}

/// Sign and log-magnitude of Γ(x) for real x that is not a non-positive integer.
pub fn ln_abs_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (1.0, ln_gamma(x));
    }
    // reflection: Γ(x) = π / (sin(πx) Γ(1-x))
    let s = (PI * x).sin();
    let sign = if s > 0.0 { 1.0 } else { -1.0 };
    (sign, PI.ln() - s.abs().ln() - ln_gamma(1.0 - x))
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(z) for complex z via the Lanczos approximation (g = 7) and reflection.
pub fn complex_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi / ((pi * z).sin() * complex_gamma(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// Bernoulli numbers B_0..B_{2m} as exact rationals (B_1 = -1/2 convention).
pub fn bernoulli_numbers(count: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(count);
    for m in 0..count {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// B_{2j}/(2j)! for j = 1..=40 as f64.
fn bernoulli_over_factorial() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_numbers(82);
        let mut out = Vec::new();
        let mut fact = BigInt::one();
        for n in 1..=80usize {
            fact *= BigInt::from(n);
            if n % 2 == 0 {
                let v = &b[n] / BigRational::from_integer(fact.clone());
                out.push(v.to_f64().unwrap_or(0.0));
            }
        }
        out
    })
}

/// Riemann zeta ζ(s) for complex s ≠ 1 by Euler–Maclaurin summation.
///
/// The head length grows with |Im s| so the Bernoulli tail converges; the
/// correction depth stops once terms fall below 1e-17 relative or start growing.
pub fn zeta(s: Complex64) -> Complex64 {
    if s.re < 0.5 {
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
        let one = Complex64::new(1.0, 0.0);
        let two = Complex64::new(2.0, 0.0);
        let pi = Complex64::new(PI, 0.0);
        return two.powc(s) * pi.powc(s - one) * (pi * s / 2.0).sin() * complex_gamma(one - s) * zeta(one - s);
    }
    let n_head = 20 + (s.im.abs() / 2.0).ceil() as usize;
    zeta_em(s, n_head)
}

/// Euler–Maclaurin without the reflection branch, valid for any s ≠ 1.
#[cfg(test)]
pub(crate) fn zeta_direct(s: Complex64) -> Complex64 {
    zeta_em(s, 30 + (s.im.abs() / 2.0).ceil() as usize)
}

fn zeta_em(s: Complex64, n_head: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    // add small terms first
    for n in (1..n_head).rev() {
        sum += (-s * (n as f64).ln()).exp();
    }
    let nf = n_head as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp(); // N^{-s}
    sum += n_pow * nf / (s - 1.0) + n_pow * 0.5;
    let table = bernoulli_over_factorial();
    // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    let mut rising = s; // s(s+1)..(s+2j-2) for j=1
    let mut npow = n_pow / nf; // N^{-s-1}
    let mut last = f64::INFINITY;
    for (j, &c) in table.iter().enumerate() {
        let term = rising * npow * c;
        let mag = term.norm();
        if mag > last {
            break;
        }
        sum += term;
        if mag < 1e-17 * sum.norm() {
            break;
        }
        last = mag;
        let a = 2.0 * (j as f64) + 1.0;
        rising = rising * (s + a) * (s + a + 1.0);
        npow /= nf * nf;
    }
    sum
}

/// Real-argument zeta for s > 1.
pub fn zeta_real(s: f64) -> f64 {
    zeta(Complex64::new(s, 0.0)).re
}

/// log G(1+z) for real z > -1, G the Barnes G-function.
///
/// Reduces to |f| ≤ 1/2 with G(2+x) = Γ(1+x) G(1+x) and sums the Taylor series
/// log G(1+f) = f/2 log 2π − (f + (1+γ)f²)/2 + Σ_{k≥2} (−1)^k ζ(k) f^{k+1}/(k+1).
pub fn ln_barnes_g1(z: f64) -> f64 {
    assert!(z > -1.0, "ln_barnes_g1 requires z > -1");
    let m = z.round();
    let f = z - m;
    let mut acc = ln_barnes_g1_series(f);
    if m > 0.0 {
        for j in 0..(m as i64) {
            acc += ln_gamma(1.0 + f + j as f64);
        }
    } else if m < 0.0 {
        // z = f - 1 with f in (0, 1/2]: G(f) = G(1+f) / Γ(f)
        acc -= ln_gamma(f);
    }
    acc
}

fn ln_barnes_g1_series(f: f64) -> f64 {
    static ZETAS: OnceLock<Vec<f64>> = OnceLock::new();
    let zetas = ZETAS.get_or_init(|| (0..80).map(|k| if k < 2 { 0.0 } else { zeta_real(k as f64) }).collect());
    let mut acc = 0.5 * f * (2.0 * PI).ln() - 0.5 * (f + (1.0 + EULER_GAMMA) * f * f);
    let mut p = f * f * f;
    for (k, zk) in zetas.iter().enumerate().skip(2) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * zk * p / (k as f64 + 1.0);
        acc += term;
        if term.abs() < 1e-18 {
            break;
        }
        p *= f;
    }
    acc
}

/// Large-argument asymptotic expansion of log G(1+z); used to cross-check the series.
pub fn ln_barnes_g1_asymptotic(z: f64) -> f64 {
    const ZETA_PRIME_M1: f64 = -0.165_421_143_700_450_93;
    let b = bernoulli_numbers(24);
    let mut acc = 0.5 * z * z * z.ln() - 0.75 * z * z + 0.5 * z * (2.0 * PI).ln() - z.ln() / 12.0 + ZETA_PRIME_M1;
    for k in 1..10usize {
        let b2k2 = b[2 * k + 2].to_f64().unwrap();
        acc += b2k2 / (4.0 * k as f64 * (k as f64 + 1.0) * z.powi(2 * k as i32));
    }
    acc
}

/// Modified Bessel function K₀(x), x > 0.
///
/// Power series for x ≤ 2, trapezoid rule on ∫₀^∞ e^{−x cosh t} dt for
/// 2 < x < 25, asymptotic expansion with optimal truncation beyond.
pub fn bessel_k0(x: f64) -> f64 {
    assert!(x > 0.0, "bessel_k0 requires x > 0");
    if x <= 2.0 {
        bessel_k0_series(x)
    } else if x < 25.0 {
        bessel_k0_integral(x)
    } else {
        bessel_k0_asymptotic(x)
    }
}

pub fn bessel_k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let lead = -((0.5 * x).ln() + EULER_GAMMA);
    let mut term = 1.0; // q^k/(k!)^2
    let mut harmonic = 0.0;
    let mut acc = lead;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        acc += term * (lead + harmonic);
        if term * (1.0 + harmonic) < 1e-18 * acc.abs() {
            break;
        }
    }
    acc
}

pub fn bessel_k0_integral(x: f64) -> f64 {
    let h = 0.02;
    let t_max = (1.0 + 745.0 / x).acosh();
    let mut acc = 0.5;
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        if t > t_max {
            break;
        }
        let v = (-x * (t.cosh() - 1.0)).exp();
        acc += v;
        if v < 1e-18 * acc {
            break;
        }
        k += 1;
    }
    acc * h * (-x).exp()
}

pub fn bessel_k0_asymptotic(x: f64) -> f64 {
    let mut term = 1.0;
    let mut acc = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        let next = -term * (2.0 * kf - 1.0).powi(2) / (8.0 * x * kf);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        acc += term;
        if term.abs() < 1e-17 {
            break;
        }
    }
    (PI / (2.0 * x)).sqrt() * (-x).exp() * acc
}

/// Result of an adaptive quadrature: value and estimated absolute error.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature<T> {
    pub value: T,
    pub error: f64,
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GK_WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * GK_WK[7];
    let mut g = fc * GK_WG[3];
    for i in 0..7 {
        let x = h * GK_NODES[i];
        let s = f(c - x) + f(c + x);
        k += s * GK_WK[i];
        if i % 2 == 1 {
            g += s * GK_WG[i / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Globally adaptive Gauss–Kronrod (7/15) quadrature of a complex integrand on [a, b].
pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Quadrature<Complex64> {
    let mut segs: Vec<(f64, f64, Complex64, f64)> = Vec::new();
    let (v, e) = gk15(&mut f, a, b);
    segs.push((a, b, v, e));
    for _ in 0..5000 {
        let total: Complex64 = segs.iter().map(|s| s.2).sum();
        let err: f64 = segs.iter().map(|s| s.3).sum();
        if err <= abs_tol.max(rel_tol * total.norm()) {
            break;
        }
        let (idx, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap())
            .unwrap();
        let (lo, hi, _, _) = segs.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        segs.push((lo, mid, v1, e1));
        segs.push((mid, hi, v2, e2));
    }
    Quadrature {
        value: segs.iter().map(|s| s.2).sum(),
        error: segs.iter().map(|s| s.3).sum(),
    }
}

/// Real-valued wrapper around [`integrate_complex`].
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Quadrature<f64> {
    let q = integrate_complex(|x| Complex64::new(f(x), 0.0), a, b, abs_tol, rel_tol);
    Quadrature { value: q.value.re, error: q.error }
}

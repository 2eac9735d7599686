//! Unitary moments of moments by Toeplitz determinants, exact restricted
//! counts and Monte Carlo, plus the Sp/SO Monte Carlo and the multiple
//! contour integral for shifted averages.

use crate::charpoly::log_abs_charpoly;
use crate::ensembles::{sample_eigenphases, Group};
use crate::error::{invalid, Error, Result};
use crate::poly::RationalPoly;
use crate::special::ln_gamma;
use crate::stats::{self, Estimate};
use crate::symfunc::restricted_rect_count;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use rustfft::FftPlanner;
use std::f64::consts::TAU;

/// Symbol ∏_j |1 − e^{i(θ − θ_j)}|^{2β}.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSpec {
    pub beta: f64,
    pub singularities: Vec<f64>,
}

impl SymbolSpec {
    pub fn new(beta: f64, singularities: Vec<f64>) -> Result<SymbolSpec> {
        if !(beta > -0.25) {
            return invalid(format!("beta = {beta} must exceed -1/4"));
        }
        if singularities.is_empty() {
            return invalid("at least one singularity is required");
        }
        if singularities.iter().any(|t| !(0.0..TAU).contains(t)) {
            return invalid("singularity angles must lie in [0, 2π)");
        }
        Ok(SymbolSpec { beta, singularities })
    }
}

/// Fourier coefficients ĥ_{−J..J} (index m stored at m + J).
#[derive(Debug, Clone)]
pub struct FourierCoeffs {
    pub order: usize,
    pub coeffs: Vec<Complex64>,
    /// Bound on the error of each coefficient from truncating the factors.
    pub tail_bound: f64,
}

impl FourierCoeffs {
    pub fn get(&self, m: i64) -> Complex64 {
        self.coeffs[(m + self.order as i64) as usize]
    }
}

/// Coefficients of |1 − e^{iθ}|^{2β} for j = 0..=len−1 (the sequence is even):
/// ĝ_0 = Γ(1+2β)/Γ(1+β)², ĝ_{j+1} = ĝ_j (j − β)/(j + 1 + β).
pub fn single_fh_coeffs(beta: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    let mut c = if is_integer(beta) && beta <= 500.0 {
        // central binomial coefficient
        (1..=beta as u64).fold(1.0, |acc, i| acc * (beta + i as f64) / i as f64)
    } else {
        (ln_gamma(1.0 + 2.0 * beta) - 2.0 * ln_gamma(1.0 + beta)).exp()
    };
    for j in 0..len {
        out.push(c);
        c *= (j as f64 - beta) / (j as f64 + 1.0 + beta);
    }
    out
}

fn is_integer(beta: f64) -> bool {
    beta.fract() == 0.0 && beta >= 0.0
}

/// Σ_{|j| > l} |ĝ_j| for one singularity.
pub fn single_fh_tail(beta: f64, l: usize) -> f64 {
    if is_integer(beta) && l as f64 >= beta {
        return 0.0;
    }
    let far = 64 * (l + 1);
    let coeffs = single_fh_coeffs(beta, far + 1);
    let partial: f64 = coeffs[l + 1..=far].iter().map(|c| c.abs()).sum();
    // |ĝ_j| ~ C j^{−1−2β} beyond `far`
    let rest = coeffs[far].abs() * far as f64 / (2.0 * beta).max(1e-3) * 1.01;
    2.0 * (partial + rest)
}

fn truncation_for(beta: f64, n_out: usize) -> usize {
    if is_integer(beta) {
        beta as usize
    } else {
        (1usize << 15).max(64 * n_out)
    }
}

/// Fourier coefficients of the Fisher–Hartwig symbol for |m| ≤ J, built by
/// convolving the closed-form per-singularity sequences.
pub fn fh_fourier_coeffs(spec: &SymbolSpec, order: usize, tol: f64) -> Result<FourierCoeffs> {
    let l = truncation_for(spec.beta, order);
    let (coeffs, tail_bound) = product_coeffs(spec.beta, &spec.singularities, order, l);
    if tail_bound > tol {
        return Err(Error::Numerical(format!("truncation tail bound {tail_bound:.3e} exceeds tolerance {tol:.3e}")));
    }
    Ok(FourierCoeffs { order, coeffs, tail_bound })
}

/// Coefficients −J..=J of ∏_s g(θ − θ_s), each factor truncated at |j| ≤ l.
fn product_coeffs(beta: f64, thetas: &[f64], order: usize, l: usize) -> (Vec<Complex64>, f64) {
    let k = thetas.len();
    let g = single_fh_coeffs(beta, l + 1);
    let factor = |theta: f64| -> Vec<Complex64> {
        (-(l as i64)..=l as i64).map(|j| Complex64::from_polar(g[j.unsigned_abs() as usize], -(j as f64) * theta)).collect()
    };
    // running product on indices −w..=w
    let mut acc = factor(thetas[0]);
    let mut w = l as i64;
    for (s, &theta) in thetas.iter().enumerate().skip(1) {
        let f = factor(theta);
        let remaining = (k - 1 - s) as i64;
        let new_w = if remaining == 0 { order as i64 } else { order as i64 + remaining * l as i64 };
        let mut next = vec![Complex64::zero(); (2 * new_w + 1) as usize];
        for (mi, out) in next.iter_mut().enumerate() {
            let m = mi as i64 - new_w;
            let lo = (m - l as i64).max(-w);
            let hi = (m + l as i64).min(w);
            let mut sum = Complex64::zero();
            for i in lo..=hi {
                sum += acc[(i + w) as usize] * f[(m - i + l as i64) as usize];
            }
            *out = sum;
        }
        acc = next;
        w = new_w;
    }
    let j = order as i64;
    let coeffs = (-j..=j).map(|m| if m.abs() <= w { acc[(m + w) as usize] } else { Complex64::zero() }).collect();
    let tail = if k == 1 {
        0.0
    } else {
        let total: f64 = 2.0 * g.iter().map(|c| c.abs()).sum::<f64>() - g[0].abs();
        let second = (l.saturating_sub(order)) / (k - 1);
        (k * (k - 1)) as f64 * single_fh_tail(beta, l) * single_fh_tail(beta, second) * total.powi(k as i32 - 2)
    };
    (coeffs, tail)
}

/// log |det| of the N×N Toeplitz matrix (ĥ_{j−k}) by LU with partial pivoting; D_0 = 1.
pub fn toeplitz_logdet(coeffs: &FourierCoeffs, n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    if coeffs.order + 1 < n {
        return invalid(format!("coefficients of order {} cannot fill a {n}×{n} Toeplitz matrix", coeffs.order));
    }
    let mut a: Vec<Complex64> = (0..n * n).map(|idx| coeffs.get((idx / n) as i64 - (idx % n) as i64)).collect();
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut log_det = 0.0;
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x * n + c].norm().total_cmp(&a[y * n + c].norm())).unwrap();
        let pivot = a[p * n + c];
        if pivot.norm() <= 1e-13 * scale {
            return Err(Error::Numerical(format!("Toeplitz matrix numerically singular at column {c}")));
        }
        if p != c {
            for k in 0..n {
                a.swap(p * n + k, c * n + k);
            }
        }
        log_det += pivot.norm().ln();
        let inv = 1.0 / pivot;
        for r in c + 1..n {
            let f = a[r * n + c] * inv;
            if f == Complex64::zero() {
                continue;
            }
            for k in c + 1..n {
                let v = a[c * n + k];
                a[r * n + k] -= f * v;
            }
        }
    }
    Ok(log_det)
}

/// log det of the Hermitian positive-definite Toeplitz matrix with first
/// column r_0..r_{N−1}, by the Levinson recursion.
pub fn hermitian_toeplitz_logdet(r: &[Complex64]) -> Result<f64> {
    let n = r.len();
    if n == 0 {
        return Ok(0.0);
    }
    let mut e = r[0].re;
    if !(e > 0.0) {
        return Err(Error::Numerical("Toeplitz matrix is not positive definite".into()));
    }
    let mut log_det = e.ln();
    let mut a = vec![Complex64::one()];
    let mut next = Vec::with_capacity(n);
    for p in 0..n - 1 {
        let delta: Complex64 = (0..=p).map(|k| r[p + 1 - k] * a[k]).sum();
        let gamma = -delta / e;
        let shrink = 1.0 - gamma.norm_sqr();
        if !(shrink > 0.0) {
            return Err(Error::Numerical(format!("Levinson recursion lost positivity at order {}", p + 1)));
        }
        next.clear();
        next.extend((0..=p + 1).map(|k| {
            let ak = if k <= p { a[k] } else { Complex64::zero() };
            ak + gamma * a.get(p + 1 - k).copied().unwrap_or_default().conj()
        }));
        std::mem::swap(&mut a, &mut next);
        e *= shrink;
        log_det += e.ln();
    }
    Ok(log_det)
}

#[derive(Debug, Clone, Copy)]
pub struct TorusQuadOptions {
    /// Nodes per dimension at the first level.
    pub quad_nodes: usize,
    pub rel_tol: f64,
    pub max_nodes: usize,
}

impl TorusQuadOptions {
    pub fn new(quad_nodes: usize) -> TorusQuadOptions {
        TorusQuadOptions { quad_nodes, rel_tol: 1e-7, max_nodes: 1 << 16 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusQuadrature {
    pub value: f64,
    pub previous: f64,
    /// Nodes per dimension at the accepted level.
    pub nodes: usize,
    pub tail_bound: f64,
}

/// (2π)^{−(k−1)} ∫ D_N(f_θ) over the (k−1)-torus with θ₁ = 0.
pub fn mom_toeplitz(k: u32, beta: f64, n: usize, quad_nodes: usize) -> Result<TorusQuadrature> {
    mom_toeplitz_with(k, beta, n, &TorusQuadOptions::new(quad_nodes))
}

pub fn mom_toeplitz_with(k: u32, beta: f64, n: usize, opts: &TorusQuadOptions) -> Result<TorusQuadrature> {
    if k == 0 {
        return invalid("k must be a positive integer");
    }
    if !(beta > 0.0) {
        return invalid("beta must be positive");
    }
    if opts.quad_nodes < 64 {
        return invalid("quad_nodes must be at least 64");
    }
    if n == 0 {
        return Ok(TorusQuadrature { value: 1.0, previous: 1.0, nodes: 0, tail_bound: 0.0 });
    }
    let l = truncation_for(beta, n);
    if k == 1 {
        let r = single_column(beta, n);
        let v = hermitian_toeplitz_logdet(&r)?.exp();
        return Ok(TorusQuadrature { value: v, previous: v, nodes: 1, tail_bound: 0.0 });
    }
    let (_, tail_bound) = product_coeffs(beta, &vec![0.0; k as usize], 0, l.min(64));
    let tail_bound = if is_integer(beta) { 0.0 } else { tail_bound.min(f64::MAX) };
    let mut m = opts.quad_nodes;
    let mut prev = match k {
        2 => two_point_average(beta, n, m, l)?,
        _ => grid_average(k as usize, beta, n, m, l)?,
    };
    loop {
        let m2 = 2 * m;
        if (k == 2 && m2 > opts.max_nodes) || (k > 2 && m2.pow(k - 1) > opts.max_nodes.max(1 << 16)) {
            return Err(Error::NonConvergent { prev, last: prev });
        }
        let cur = match k {
            2 => two_point_average(beta, n, m2, l)?,
            _ => grid_average(k as usize, beta, n, m2, l)?,
        };
        if (cur - prev).abs() <= opts.rel_tol * cur.abs() {
            return Ok(TorusQuadrature { value: cur, previous: prev, nodes: m2, tail_bound });
        }
        if m2 >= opts.max_nodes && k == 2 {
            return Err(Error::NonConvergent { prev, last: cur });
        }
        prev = cur;
        m = m2;
    }
}

fn single_column(beta: f64, n: usize) -> Vec<Complex64> {
    single_fh_coeffs(beta, n).into_iter().map(|c| Complex64::new(c, 0.0)).collect()
}

/// Trapezoid average of D_N over φ ∈ [0, 2π) for the symbol g(θ)g(θ − φ).
///
/// For each m the coefficient ĥ_m(φ_l) = Σ_j ĝ_{m−j} ĝ_j e^{−ijφ_l} is a
/// length-M DFT of the ĝ_{m−j}ĝ_j folded modulo M.
fn two_point_average(beta: f64, n: usize, m_nodes: usize, l: usize) -> Result<f64> {
    let g = single_fh_coeffs(beta, l + n + 1);
    let half = m_nodes / 2;
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(m_nodes);
    let columns: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|m| {
            let mut buf = vec![Complex64::zero(); m_nodes];
            let mi = m as i64;
            let li = l as i64;
            for j in (mi - li)..=li {
                let v = g[(mi - j).unsigned_abs() as usize] * g[j.unsigned_abs() as usize];
                buf[j.rem_euclid(m_nodes as i64) as usize] += v;
            }
            fft.process(&mut buf);
            buf.truncate(half + 1);
            buf
        })
        .collect();
    let dets: Vec<Result<f64>> = (0..=half)
        .into_par_iter()
        .map(|node| {
            let r: Vec<Complex64> = columns.iter().map(|c| c[node]).collect();
            Ok(hermitian_toeplitz_logdet(&r)?.exp())
        })
        .collect();
    let mut sum = 0.0;
    for (node, d) in dets.into_iter().enumerate() {
        let w = if node == 0 || (m_nodes % 2 == 0 && node == half) { 1.0 } else { 2.0 };
        sum += w * d?;
    }
    Ok(sum / m_nodes as f64)
}

/// Product trapezoid rule on the (k−1)-torus.
fn grid_average(k: usize, beta: f64, n: usize, m_nodes: usize, l: usize) -> Result<f64> {
    let total = m_nodes.pow(k as u32 - 1);
    let vals: Vec<Result<f64>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut thetas = vec![0.0];
            let mut rest = idx;
            for _ in 1..k {
                thetas.push(TAU * (rest % m_nodes) as f64 / m_nodes as f64);
                rest /= m_nodes;
            }
            let (coeffs, _) = product_coeffs(beta, &thetas, n, l);
            let r: Vec<Complex64> = coeffs[n..2 * n].to_vec();
            Ok(hermitian_toeplitz_logdet(&r)?.exp())
        })
        .collect();
    let mut sum = 0.0;
    for v in vals {
        sum += v?;
    }
    Ok(sum / total as f64)
}

/// MoM_{U(N)}(k, β) exactly, as a restricted tableau count.
pub fn mom_exact_unitary(k: u32, beta: u32, n: u32) -> Result<BigUint> {
    if k == 0 || beta == 0 {
        return invalid("k and beta must be positive integers");
    }
    restricted_rect_count(n, k, beta)
}

/// MoM_{U(N)}(k, β) as an exact polynomial in N.
#[derive(Debug, Clone, PartialEq)]
pub struct MomPolynomial {
    pub k: u32,
    pub beta: u32,
    pub poly: RationalPoly,
}

impl MomPolynomial {
    pub fn eval(&self, n: i64) -> BigRational {
        self.poly.eval_int(n)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        self.poly.coeffs()
    }
}

/// Interpolates the exact counts through N = 0..=d, d = k²β² − k + 1, and
/// verifies two further values.
pub fn mom_polynomial(k: u32, beta: u32) -> Result<MomPolynomial> {
    if k == 0 || beta == 0 {
        return invalid("k and beta must be positive integers");
    }
    if k * beta > 4 {
        return Err(Error::Budget(format!("k·beta = {} exceeds the exact-count budget of 4", k * beta)));
    }
    let degree = (k * k * beta * beta - k + 1) as usize;
    let ns: Vec<u32> = (0..=degree as u32 + 2).collect();
    let values: Vec<Result<BigUint>> = ns.par_iter().map(|&n| restricted_rect_count(n, k, beta)).collect();
    let values: Vec<BigRational> =
        values.into_iter().map(|v| v.map(|b| BigRational::from_integer(BigInt::from(b)))).collect::<Result<_>>()?;
    let xs: Vec<BigRational> = ns.iter().map(|&n| BigRational::from_integer(BigInt::from(n))).collect();
    let poly = RationalPoly::interpolate(&xs[..=degree], &values[..=degree])?;
    for i in degree + 1..xs.len() {
        if poly.eval(&xs[i]) != values[i] {
            return Err(Error::Verification(format!("interpolant disagrees with the exact count at N = {}", ns[i])));
        }
    }
    if poly.degree() != Some(degree) {
        return Err(Error::Verification(format!("expected degree {degree}, got {:?}", poly.degree())));
    }
    if !poly.leading().is_some_and(|c| c.is_positive()) {
        return Err(Error::Verification("leading coefficient is not positive".into()));
    }
    Ok(MomPolynomial { k, beta, poly })
}

/// Sample mean of g_N(β; A)^k, g_N = (1/2π)∫|P_N|^{2β} dθ by the trapezoid rule.
pub fn mom_monte_carlo<R: Rng + ?Sized>(
    group: Group,
    k: u32,
    beta: f64,
    n: usize,
    trials: usize,
    theta_nodes: usize,
    rng: &mut R,
) -> Result<Estimate> {
    if trials < 100 {
        return invalid("need at least 100 trials");
    }
    if theta_nodes < 4 * n {
        return invalid(format!("theta_nodes = {theta_nodes} is below 4N = {}", 4 * n));
    }
    if group == Group::CircularBeta {
        return invalid("Monte Carlo moments of moments are defined here for the compact groups only");
    }
    if !(beta > 0.0) || k == 0 {
        return invalid("need k ≥ 1 and beta > 0");
    }
    // integer β makes |P|^{2β} a trigonometric polynomial; keep the rule exact
    let degree = if is_integer(beta) { beta as usize * group.dimension(n) } else { 0 };
    let nodes = theta_nodes.max(degree + 1);
    let seed: u64 = rng.random();
    let samples: Vec<Result<f64>> = stats::replicate(seed, "mom-monte-carlo", trials, |r| {
        let eigs = sample_eigenphases(group, n, None, r)?;
        let g: f64 = (0..nodes)
            .map(|j| (2.0 * beta * log_abs_charpoly(&eigs, TAU * (j as f64 + 0.5) / nodes as f64)).exp())
            .sum::<f64>()
            / nodes as f64;
        Ok(g.powi(k as i32))
    });
    let samples: Vec<f64> = samples.into_iter().collect::<Result<_>>()?;
    Ok(Estimate::from_samples(&samples))
}

/// ∫_{U(N)} ∏_{j>m} det(I − A e^{α_j}) ∏_{j≤m} det(I − A* e^{−α_j}) dA by the
/// n-fold contour integral, with product trapezoid rules on circles.
pub fn cfkrs_contour_average(alphas: &[Complex64], m: usize, matrix_size: usize, quad_nodes: usize) -> Result<Complex64> {
    let n = alphas.len();
    if n == 0 || m > n {
        return invalid("need at least one shift and m ≤ n");
    }
    if quad_nodes < 8 {
        return invalid("quad_nodes must be at least 8");
    }
    let evals = (quad_nodes as f64).powi(n as i32);
    if evals > 2e7 {
        return Err(Error::Budget(format!("{evals:.0} integrand evaluations exceed the budget")));
    }
    let center: Complex64 = alphas.iter().sum::<Complex64>() / n as f64;
    let spread = alphas.iter().map(|a| (a - center).norm()).fold(0.0, f64::max);
    let radius = (2.0 * spread).max(1.0);
    if 2.0 * radius >= TAU - 0.5 {
        return Err(Error::Constraint(format!(
            "contour radius {radius:.3} brings z_q − z_l within reach of 2πi; shifts must be closer together"
        )));
    }
    let big_n = matrix_size as f64;
    let mut fact = 1.0;
    for i in 1..=m {
        fact *= i as f64;
    }
    for i in 1..=(n - m) {
        fact *= i as f64;
    }
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let prefactor: Complex64 =
        alphas[m..].iter().map(|a| (a * big_n).exp()).product::<Complex64>() * sign / fact;
    let total = quad_nodes.pow(n as u32);
    let sum: Complex64 = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut rest = idx;
            let z: Vec<Complex64> = (0..n)
                .map(|v| {
                    let j = rest % quad_nodes;
                    rest /= quad_nodes;
                    // stagger the circles' nodes so z_q ≠ z_l
                    let phase = TAU * (j as f64 + v as f64 / (n as f64 + 1.0)) / quad_nodes as f64;
                    center + Complex64::from_polar(radius, phase)
                })
                .collect();
            let mut val: Complex64 = (-big_n * z[m..].iter().sum::<Complex64>()).exp();
            for i in 0..n {
                for j in i + 1..n {
                    let d = z[j] - z[i];
                    val *= d * d;
                }
            }
            for l in 0..m {
                for q in m..n {
                    val /= Complex64::one() - (z[q] - z[l]).exp();
                }
            }
            for zl in &z {
                for a in alphas {
                    val /= zl - a;
                }
            }
            // dz/(2πi) = (z − c) dφ/(2π)
            for zl in &z {
                val *= zl - center;
            }
            val
        })
        .sum();
    Ok(prefactor * sum / total as f64)
}

/// Direct Monte Carlo of the same shifted average.
pub fn shifted_average_monte_carlo<R: Rng + ?Sized>(
    alphas: &[Complex64],
    m: usize,
    matrix_size: usize,
    trials: usize,
    rng: &mut R,
) -> Result<(Estimate, Estimate)> {
    if m > alphas.len() {
        return invalid("m must not exceed the number of shifts");
    }
    let seed: u64 = rng.random();
    let samples: Vec<Result<Complex64>> = stats::replicate(seed, "shifted-average", trials, |r| {
        let eigs = sample_eigenphases(Group::Unitary, matrix_size, None, r)?;
        let lam = eigs.eigenvalues();
        let mut prod = Complex64::one();
        for (j, a) in alphas.iter().enumerate() {
            for &z in &lam {
                prod *= if j < m { Complex64::one() - z.conj() * (-a).exp() } else { Complex64::one() - z * a.exp() };
            }
        }
        Ok(prod)
    });
    let samples: Vec<Complex64> = samples.into_iter().collect::<Result<_>>()?;
    let re: Vec<f64> = samples.iter().map(|z| z.re).collect();
    let im: Vec<f64> = samples.iter().map(|z| z.im).collect();
    Ok((Estimate::from_samples(&re), Estimate::from_samples(&im)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{keating_snaith_moment, mom_prediction};
    use crate::rng::replicate_rng;
    use crate::special::integrate;

    #[test]
    fn single_coefficients() {
        let g = single_fh_coeffs(1.0, 4);
        assert_eq!(g, vec![2.0, -1.0, 0.0, 0.0]);
        let beta = 0.7;
        let g = single_fh_coeffs(beta, 6);
        for (j, &c) in g.iter().enumerate() {
            let q = integrate(
                |t| (2.0 * (t / 2.0).sin()).abs().powf(2.0 * beta) * (j as f64 * t).cos() / TAU,
                0.0,
                TAU,
                1e-13,
                1e-12,
            );
            assert!((q.value - c).abs() < 1e-8, "j={j}: {} vs {c}", q.value);
        }
        assert_eq!(single_fh_tail(2.0, 2), 0.0);
        assert!(single_fh_tail(0.5, 100) > single_fh_tail(0.5, 1000));
    }

    #[test]
    fn two_singularities_convolve() {
        let spec = SymbolSpec::new(1.0, vec![0.0, 1.0]).unwrap();
        let c = fh_fourier_coeffs(&spec, 3, 1e-12).unwrap();
        // (2 − e^{iθ} − e^{−iθ})(2 − e^{i(θ−1)} − e^{−i(θ−1)})
        let w = Complex64::from_polar(1.0, -1.0);
        assert!((c.get(0) - (4.0 + w + w.conj())).norm() < 1e-14);
        assert!((c.get(1) - (-2.0 - 2.0 * w)).norm() < 1e-14);
        assert!((c.get(2) - w).norm() < 1e-14);
        assert!(c.get(3).norm() < 1e-14);
        assert!(SymbolSpec::new(-0.3, vec![0.0]).is_err());
        assert!(SymbolSpec::new(0.5, vec![7.0]).is_err());
    }

    #[test]
    fn toeplitz_heine_szego() {
        for n in 1..=64 {
            let c = fh_fourier_coeffs(&SymbolSpec::new(1.0, vec![0.0]).unwrap(), n, 1e-12).unwrap();
            let d = toeplitz_logdet(&c, n).unwrap().exp();
            assert!((d - (n + 1) as f64).abs() < 1e-9 * (n + 1) as f64, "N={n}: {d}");
        }
        for beta in [0.5, 1.5, 2.0] {
            for n in [1usize, 5, 17, 32] {
                let c = fh_fourier_coeffs(&SymbolSpec::new(beta, vec![0.0]).unwrap(), n, 1e-12).unwrap();
                let d = toeplitz_logdet(&c, n).unwrap();
                let ks = keating_snaith_moment(n as u64, beta).unwrap().ln();
                assert!((d - ks).abs() < 1e-8, "beta={beta} N={n}: {d} vs {ks}");
            }
        }
    }

    #[test]
    fn levinson_matches_lu() {
        let spec = SymbolSpec::new(0.8, vec![0.0, 2.0, 4.5]).unwrap();
        let c = fh_fourier_coeffs(&spec, 20, 1e-6).unwrap();
        let r: Vec<Complex64> = (0..20).map(|m| c.get(m)).collect();
        let lev = hermitian_toeplitz_logdet(&r).unwrap();
        let lu = toeplitz_logdet(&c, 20).unwrap();
        assert!((lev - lu).abs() < 1e-9, "{lev} vs {lu}");
    }

    #[test]
    fn toeplitz_mom_small_cases() {
        for n in 1..=8usize {
            let exact = (n + 1) as f64;
            let v = mom_toeplitz(1, 1.0, n, 64).unwrap().value;
            assert!((v - exact).abs() < 1e-9 * exact);
            let exact = ((n + 1) * (n + 2) * (n + 3)) as f64 / 6.0;
            let v = mom_toeplitz(2, 1.0, n, 64).unwrap().value;
            assert!((v - exact).abs() < 1e-6 * exact, "N={n}: {v} vs {exact}");
        }
        let v = mom_toeplitz(2, 2.0, 3, 64).unwrap().value;
        let exact = mom_polynomial(2, 2).unwrap().eval(3);
        let exact = crate::closed_forms::to_f64(&exact);
        assert!((v - exact).abs() < 1e-6 * exact, "{v} vs {exact}");
        let v = mom_toeplitz(3, 1.0, 3, 64).unwrap().value;
        let exact = crate::closed_forms::to_f64(&BigRational::from_integer(BigInt::from(mom_exact_unitary(3, 1, 3).unwrap())));
        assert!((v - exact).abs() < 1e-6 * exact, "{v} vs {exact}");
        assert!(mom_toeplitz(2, 1.0, 4, 32).is_err());
    }

    #[test]
    fn toeplitz_mom_is_deterministic() {
        let a = mom_toeplitz(2, 0.6, 16, 64).unwrap();
        let b = mom_toeplitz(2, 0.6, 16, 64).unwrap();
        assert_eq!(a, b);
        let p = mom_prediction(Group::Unitary, 2.0, 0.6, 16).unwrap();
        assert!(a.value > 0.5 * p.value_at(16.0).unwrap());
    }

    #[test]
    fn golden_low_order_polynomials() {
        let p = mom_polynomial(1, 1).unwrap();
        assert_eq!(p.poly, RationalPoly::from_integers(&[1, 1]));
        let p = mom_polynomial(2, 1).unwrap();
        let want = (1..=3).fold(RationalPoly::from_integers(&[1]), |acc, a| acc.mul(&RationalPoly::shifted_x(a)));
        assert_eq!(p.poly, want.scale(&BigRational::new(1.into(), 6.into())));
        let p = mom_polynomial(1, 2).unwrap();
        let want = [1, 2, 2, 3].iter().fold(RationalPoly::from_integers(&[1]), |acc, &a| acc.mul(&RationalPoly::shifted_x(a)));
        assert_eq!(p.poly, want.scale(&BigRational::new(1.into(), 12.into())));
        assert!(mom_polynomial(5, 1).is_err());
    }

    #[test]
    fn exact_unitary_values() {
        assert_eq!(mom_exact_unitary(1, 1, 7).unwrap(), BigUint::from(8u32));
        assert_eq!(mom_exact_unitary(2, 1, 2).unwrap(), BigUint::from(10u32));
        assert_eq!(mom_exact_unitary(2, 2, 1).unwrap(), BigUint::from(36u32));
    }

    #[test]
    fn unitary_monte_carlo_small() {
        let mut rng = replicate_rng(5, "mom-test", 0);
        let e = mom_monte_carlo(Group::Unitary, 2, 1.0, 8, 4000, 32, &mut rng).unwrap();
        assert!(e.z_score(165.0).abs() < 3.0, "{e:?}");
        let mut rng = replicate_rng(6, "mom-test", 0);
        let e = mom_monte_carlo(Group::SpecialOrthogonalEven, 1, 1.0, 4, 2000, 16, &mut rng).unwrap();
        assert!(e.z_score(10.0).abs() < 3.0, "{e:?}");
        assert!(mom_monte_carlo(Group::Unitary, 1, 1.0, 8, 50, 32, &mut rng).is_err());
        assert!(mom_monte_carlo(Group::Unitary, 1, 1.0, 8, 200, 16, &mut rng).is_err());
    }

    #[test]
    fn contour_integral() {
        let one = cfkrs_contour_average(&[Complex64::new(0.1, 0.0)], 0, 5, 64).unwrap();
        assert!((one - 1.0).norm() < 1e-10, "{one}");
        for n in [1usize, 4, 6] {
            let v = cfkrs_contour_average(&[Complex64::zero(), Complex64::zero()], 1, n, 64).unwrap();
            assert!((v - (n as f64 + 1.0)).norm() < 1e-6, "N={n}: {v}");
        }
        // Σ_{j≤N} e^{j(α₂ − α₁)} by orthogonality of the elementary symmetric functions
        let a = [Complex64::new(0.05, 0.02), Complex64::new(-0.03, 0.1)];
        let v = cfkrs_contour_average(&a, 1, 6, 64).unwrap();
        let want: Complex64 = (0..=6).map(|j| ((a[1] - a[0]) * j as f64).exp()).sum();
        assert!((v - want).norm() < 1e-8, "{v} vs {want}");
        let mut rng = replicate_rng(8, "contour", 0);
        let (re, im) = shifted_average_monte_carlo(&a, 1, 6, 4000, &mut rng).unwrap();
        assert!(re.z_score(v.re).abs() < 3.0 && im.z_score(v.im).abs() < 3.0, "{re:?} {im:?} {v}");
        assert!(cfkrs_contour_average(&[Complex64::zero(), Complex64::new(3.0, 0.0)], 1, 4, 32).is_err());
    }
}

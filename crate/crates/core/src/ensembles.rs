//! Haar-random spectra of U(N), SO(2N), O⁻(2N), Sp(2N) and the circular β ensemble.

use crate::error::{invalid, Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Beta, Distribution, StandardNormal};
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    Unitary,
    SpecialOrthogonalEven,
    OrthogonalMinus,
    Symplectic,
    CircularBeta,
}

impl Group {
    pub fn name(&self) -> &'static str {
        match self {
            Group::Unitary => "unitary",
            Group::SpecialOrthogonalEven => "so-even",
            Group::OrthogonalMinus => "o-minus",
            Group::Symplectic => "symplectic",
            Group::CircularBeta => "cbe",
        }
    }

    pub fn parse(s: &str) -> Result<Group> {
        match s.to_ascii_lowercase().as_str() {
            "unitary" | "u" | "cue" => Ok(Group::Unitary),
            "so-even" | "so" | "special-orthogonal" => Ok(Group::SpecialOrthogonalEven),
            "o-minus" | "orthogonal-minus" => Ok(Group::OrthogonalMinus),
            "symplectic" | "sp" => Ok(Group::Symplectic),
            "cbe" | "circular-beta" => Ok(Group::CircularBeta),
            other => invalid(format!("unknown group `{other}`")),
        }
    }

    /// Matrix dimension for half-size N.
    pub fn dimension(&self, n_half: usize) -> usize {
        match self {
            Group::Unitary | Group::CircularBeta => n_half,
            _ => 2 * n_half,
        }
    }
}

/// Sorted eigenphases of one sampled matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenphaseSet {
    pub group: Group,
    pub n_half: usize,
    pub beta_ensemble: Option<f64>,
    pub phases: Vec<f64>,
}

impl EigenphaseSet {
    /// Builds a set from raw phases, reducing them to [0, 2π) and sorting.
    pub fn new(group: Group, n_half: usize, beta_ensemble: Option<f64>, phases: Vec<f64>) -> Result<Self> {
        if phases.len() != group.dimension(n_half) {
            return invalid(format!(
                "expected {} phases for {:?} with N={n_half}, got {}",
                group.dimension(n_half),
                group,
                phases.len()
            ));
        }
        let mut phases: Vec<f64> = phases.into_iter().map(wrap_phase).collect();
        phases.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(EigenphaseSet { group, n_half, beta_ensemble, phases })
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.phases.iter().map(|&t| Complex64::from_polar(1.0, t)).collect()
    }
}

pub fn wrap_phase(t: f64) -> f64 {
    let w = t.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Σ_m exp(i j θ_m).
pub fn trace_power(eigs: &EigenphaseSet, j: u32) -> Complex64 {
    eigs.phases.iter().map(|&t| Complex64::from_polar(1.0, j as f64 * t)).sum()
}

/// Samples one spectrum; `beta` is required for (and only for) the circular β ensemble.
pub fn sample_eigenphases<R: Rng + ?Sized>(group: Group, n: usize, beta: Option<f64>, rng: &mut R) -> Result<EigenphaseSet> {
    if n == 0 {
        return invalid("N must be at least 1");
    }
    match (group, beta) {
        (Group::CircularBeta, Some(b)) if b > 0.0 => {
            let v = VerblunskyCoeffs::sample(n, b, rng)?;
            EigenphaseSet::new(group, n, Some(b), v.eigenphases()?)
        }
        (Group::CircularBeta, _) => invalid("circular beta ensemble requires beta > 0"),
        (_, Some(_)) => invalid(format!("beta is only meaningful for the circular beta ensemble, not {:?}", group)),
        (Group::Unitary, None) => {
            let u = haar_unitary(n, rng);
            EigenphaseSet::new(group, n, None, unitary_phases(u)?)
        }
        (Group::SpecialOrthogonalEven, None) | (Group::OrthogonalMinus, None) => {
            let q = haar_orthogonal(2 * n, group == Group::SpecialOrthogonalEven, rng);
            let mut raw = unitary_phases(q.map(|x| Complex64::new(x, 0.0)))?;
            if group == Group::OrthogonalMinus {
                // det = −1 forces one eigenvalue at +1 and one at −1; pin them exactly
                let mut pinned = Vec::new();
                for target in [0.0, PI] {
                    let (idx, _) = raw
                        .iter()
                        .enumerate()
                        .map(|(i, &t)| (i, Complex64::from_polar(1.0, t) - Complex64::from_polar(1.0, target)))
                        .min_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
                        .unwrap();
                    raw.swap_remove(idx);
                    pinned.push(target);
                }
                let mut all = conjugate_symmetrize(&raw);
                all.extend(pinned);
                return EigenphaseSet::new(group, n, None, all);
            }
            EigenphaseSet::new(group, n, None, conjugate_symmetrize(&raw))
        }
        (Group::Symplectic, None) => {
            let s = haar_symplectic(n, rng);
            let raw = unitary_phases(s)?;
            EigenphaseSet::new(group, n, None, conjugate_symmetrize(&raw))
        }
    }
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar unitary via QR of a complex Ginibre matrix with R's diagonal phases moved into Q.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let z = DMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Haar orthogonal matrix of size `dim`, projected to the requested determinant
/// by flipping the last column when needed.
pub fn haar_orthogonal<R: Rng + ?Sized>(dim: usize, special: bool, rng: &mut R) -> DMatrix<f64> {
    let z = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            for i in 0..dim {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    let det = q.determinant();
    if (det > 0.0) != special {
        for i in 0..dim {
            q[(i, dim - 1)] = -q[(i, dim - 1)];
        }
    }
    q
}

/// Haar element of USp(2N) in the complex 2N-dimensional representation.
///
/// Quaternionic Gram–Schmidt: each new Gaussian column u is orthogonalised
/// against every earlier u_j and its partner J u_j = (−ȳ_j; x̄_j); the matrix
/// [u_1..u_N, Ju_1..Ju_N] then satisfies MᵀΩM = Ω with Ω = [[0, I], [−I, 0]].
pub fn haar_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let dim = 2 * n;
    let partner = |u: &[Complex64]| -> Vec<Complex64> {
        let mut w = vec![Complex64::new(0.0, 0.0); dim];
        for i in 0..n {
            w[i] = -u[n + i].conj();
            w[n + i] = u[i].conj();
        }
        w
    };
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        // two passes of modified Gram–Schmidt for stability
        for _ in 0..2 {
            for b in &basis {
                let c: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= c * bi;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for x in v.iter_mut() {
            *x /= norm;
        }
        let w = partner(&v);
        basis.push(v.clone());
        basis.push(w);
        cols.push(v);
    }
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for (j, u) in cols.iter().enumerate() {
        let w = partner(u);
        for i in 0..dim {
            m[(i, j)] = u[i];
            m[(i, n + j)] = w[i];
        }
    }
    m
}

/// Eigenphases of a unitary matrix via the complex Schur form.
pub fn unitary_phases(u: DMatrix<Complex64>) -> Result<Vec<f64>> {
    let n = u.nrows();
    let schur = u.schur();
    let (_, t) = schur.unpack();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let z = t[(i, i)];
        let dev = (z.norm() - 1.0).abs();
        if dev > 1e-8 {
            return Err(Error::Numerical(format!("eigenvalue modulus deviates from 1 by {dev:e}")));
        }
        out.push(wrap_phase(z.arg()));
    }
    Ok(out)
}

/// Pairs phases of a real or symplectic spectrum into exact conjugate pairs.
///
/// Each phase is folded into [0, π]; after sorting, consecutive folded values
/// belong to the same conjugate pair and are averaged, removing the O(ε)
/// asymmetry left by the floating-point eigensolver.
pub fn conjugate_symmetrize(raw: &[f64]) -> Vec<f64> {
    let mut folded: Vec<f64> = raw.iter().map(|&t| if t > PI { TAU - t } else { t }).collect();
    folded.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out = Vec::with_capacity(raw.len());
    for pair in folded.chunks(2) {
        let a = 0.5 * (pair[0] + pair[pair.len() - 1]);
        out.push(a);
        out.push(wrap_phase(TAU - a));
    }
    out
}

/// Verblunsky coefficients α_0..α_{N−1} of a CβE matrix (Killip–Nenciu).
///
/// |α_k|² ~ Beta(1, β(N−k−1)/2) with uniform phase for k < N−1, and α_{N−1} is
/// uniform on the unit circle. The spectrum is the zero set of the monic
/// polynomial Φ_N from the Szegő recursion Φ_{k+1} = zΦ_k − ᾱ_k Φ_k*.
#[derive(Debug, Clone)]
pub struct VerblunskyCoeffs {
    pub beta: f64,
    pub alphas: Vec<Complex64>,
}

impl VerblunskyCoeffs {
    pub fn sample<R: Rng + ?Sized>(n: usize, beta: f64, rng: &mut R) -> Result<Self> {
        if n == 0 || beta <= 0.0 {
            return invalid("CβE requires N ≥ 1 and beta > 0");
        }
        let mut alphas = Vec::with_capacity(n);
        for k in 0..n {
            let phase = Complex64::from_polar(1.0, rng.random::<f64>() * TAU);
            if k + 1 == n {
                alphas.push(phase);
            } else {
                let b = 0.5 * beta * (n - k - 1) as f64;
                let r2: f64 = Beta::new(1.0, b).map_err(|e| Error::InvalidParameter(e.to_string()))?.sample(rng);
                alphas.push(phase * r2.sqrt());
            }
        }
        Ok(VerblunskyCoeffs { beta, alphas })
    }

    pub fn degree(&self) -> usize {
        self.alphas.len()
    }

    /// Coefficients of the monic Φ_N in ascending powers of z.
    pub fn monic_polynomial(&self) -> Vec<Complex64> {
        let n = self.alphas.len();
        let mut phi = vec![Complex64::new(1.0, 0.0)];
        let mut phi_star = vec![Complex64::new(1.0, 0.0)];
        for (k, &a) in self.alphas.iter().enumerate() {
            let mut next = vec![Complex64::new(0.0, 0.0); k + 2];
            let mut next_star = vec![Complex64::new(0.0, 0.0); k + 2];
            for i in 0..=k {
                next[i + 1] += phi[i];
                next[i] -= a.conj() * phi_star[i];
                next_star[i] += phi_star[i];
                next_star[i + 1] -= a * phi[i];
            }
            phi = next;
            phi_star = next_star;
        }
        debug_assert_eq!(phi.len(), n + 1);
        phi
    }

    /// Φ_N(z) by running the Szegő recursion at a single point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut phi = Complex64::new(1.0, 0.0);
        let mut phi_star = Complex64::new(1.0, 0.0);
        for &a in &self.alphas {
            let next = z * phi - a.conj() * phi_star;
            phi_star = phi_star - a * z * phi;
            phi = next;
        }
        phi
    }

    /// Continuous phase ψ_{N−1}(θ) of the Blaschke ratio zΦ_{N−1}/Φ*_{N−1} and its θ-derivative.
    fn prufer_phase(&self, theta: f64) -> (f64, f64) {
        let mut psi = theta;
        let mut dpsi = 1.0;
        for &a in &self.alphas[..self.alphas.len() - 1] {
            let e = a * Complex64::from_polar(1.0, psi);
            let w = Complex64::new(1.0, 0.0) - e;
            let gain = 1.0 + 2.0 * (e / w).re;
            psi = theta + psi - 2.0 * w.arg();
            dpsi = 1.0 + dpsi * gain;
        }
        (psi, dpsi)
    }

    /// Eigenphases: the N solutions of ψ_{N−1}(θ) ≡ arg ᾱ_{N−1} (mod 2π).
    ///
    /// ψ_{N−1} is strictly increasing with total increase 2πN over a period, so
    /// each target level is bracketed on a grid and refined by safeguarded Newton.
    pub fn eigenphases(&self) -> Result<Vec<f64>> {
        let n = self.alphas.len();
        if n == 1 {
            return Ok(vec![wrap_phase(self.alphas[0].conj().arg())]);
        }
        let target = self.alphas[n - 1].conj().arg();
        let m = 4 * n;
        let grid: Vec<f64> = (0..=m).map(|i| self.prufer_phase(TAU * i as f64 / m as f64).0).collect();
        let start = grid[0];
        let first_level = target + TAU * ((start - target) / TAU).ceil();
        let mut out = Vec::with_capacity(n);
        let mut cell = 0usize;
        for j in 0..n {
            let level = first_level + TAU * j as f64;
            while cell < m && grid[cell + 1] < level {
                cell += 1;
            }
            if cell >= m {
                return Err(Error::Numerical("Prüfer phase bracket not found".into()));
            }
            let mut lo = TAU * cell as f64 / m as f64;
            let mut hi = TAU * (cell + 1) as f64 / m as f64;
            let mut x = 0.5 * (lo + hi);
            for _ in 0..100 {
                let (f, df) = self.prufer_phase(x);
                let g = f - level;
                if g > 0.0 {
                    hi = x;
                } else {
                    lo = x;
                }
                let mut nx = x - g / df;
                if !(nx > lo && nx < hi) {
                    nx = 0.5 * (lo + hi);
                }
                if (nx - x).abs() < 1e-15 || hi - lo < 1e-15 {
                    x = nx;
                    break;
                }
                x = nx;
            }
            out.push(wrap_phase(x));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::replicate_rng;

    #[test]
    fn trace_power_trivial() {
        let e = EigenphaseSet::new(Group::Unitary, 2, None, vec![0.0, PI]).unwrap();
        assert!(trace_power(&e, 1).norm() < 1e-15);
        assert!((trace_power(&e, 2) - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        let z = EigenphaseSet::new(Group::Unitary, 5, None, vec![0.0; 5]).unwrap();
        assert!((trace_power(&z, 3) - Complex64::new(5.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn samplers_respect_invariants() {
        let mut rng = replicate_rng(1, "ens", 0);
        for &g in &[Group::Unitary, Group::SpecialOrthogonalEven, Group::OrthogonalMinus, Group::Symplectic] {
            for n in [1usize, 3, 6] {
                let e = sample_eigenphases(g, n, None, &mut rng).unwrap();
                assert_eq!(e.len(), g.dimension(n));
                assert!(e.phases.windows(2).all(|w| w[0] <= w[1]));
                assert!(e.phases.iter().all(|&t| (0.0..TAU).contains(&t)));
                if g != Group::Unitary {
                    let mut mirrored: Vec<f64> = e.phases.iter().map(|&t| wrap_phase(TAU - t)).collect();
                    mirrored.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    for (a, b) in mirrored.iter().zip(&e.phases) {
                        let d = (a - b).abs();
                        assert!(d < 1e-12 || (TAU - d) < 1e-12);
                    }
                }
            }
        }
        let e = sample_eigenphases(Group::CircularBeta, 9, Some(1.5), &mut rng).unwrap();
        assert_eq!(e.len(), 9);
    }

    #[test]
    fn o_minus_has_both_real_eigenvalues() {
        let mut rng = replicate_rng(2, "ens", 0);
        let e = sample_eigenphases(Group::OrthogonalMinus, 4, None, &mut rng).unwrap();
        assert!(e.phases.iter().any(|&t| t.abs() < 1e-7 || (TAU - t) < 1e-7));
        assert!(e.phases.iter().any(|&t| (t - PI).abs() < 1e-7));
    }

    #[test]
    fn symplectic_matrix_preserves_form() {
        let mut rng = replicate_rng(3, "ens", 0);
        let n = 4;
        let m = haar_symplectic(n, &mut rng);
        let mut omega = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
        for i in 0..n {
            omega[(i, n + i)] = Complex64::new(1.0, 0.0);
            omega[(n + i, i)] = Complex64::new(-1.0, 0.0);
        }
        let lhs = m.transpose() * &omega * &m;
        assert!((lhs - &omega).norm() < 1e-12);
        let id = m.adjoint() * &m;
        assert!((id - DMatrix::identity(2 * n, 2 * n)).norm() < 1e-12);
    }

    #[test]
    fn errors_on_bad_arguments() {
        let mut rng = replicate_rng(0, "ens", 0);
        assert!(sample_eigenphases(Group::Unitary, 0, None, &mut rng).is_err());
        assert!(sample_eigenphases(Group::CircularBeta, 3, None, &mut rng).is_err());
        assert!(sample_eigenphases(Group::Unitary, 3, Some(2.0), &mut rng).is_err());
        assert!(sample_eigenphases(Group::CircularBeta, 3, Some(-1.0), &mut rng).is_err());
    }

    #[test]
    fn determinism() {
        for g in [Group::Unitary, Group::Symplectic] {
            let a = sample_eigenphases(g, 5, None, &mut replicate_rng(9, "d", 0)).unwrap();
            let b = sample_eigenphases(g, 5, None, &mut replicate_rng(9, "d", 0)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn cbe_roots_are_zeros_of_szego_polynomial() {
        let mut rng = replicate_rng(4, "cbe", 0);
        for &beta in &[0.5, 2.0, 4.0] {
            let v = VerblunskyCoeffs::sample(12, beta, &mut rng).unwrap();
            let poly = v.monic_polynomial();
            let phases = v.eigenphases().unwrap();
            assert_eq!(phases.len(), 12);
            for &t in &phases {
                let z = Complex64::from_polar(1.0, t);
                let val = poly.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
                assert!(val.norm() < 1e-9, "beta={beta} residual {}", val.norm());
            }
            // roots are simple and distinct
            let mut s = phases.clone();
            s.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert!(s.windows(2).all(|w| w[1] - w[0] > 1e-9));
        }
    }

    #[test]
    fn u1_is_uniform() {
        let xs: Vec<f64> = (0..10_000)
            .map(|r| sample_eigenphases(Group::Unitary, 1, None, &mut replicate_rng(5, "u1", r)).unwrap().phases[0])
            .collect();
        let d = crate::stats::ks_distance(&xs, |x| x / TAU);
        assert!(d < 0.02, "KS {d}");
    }
}

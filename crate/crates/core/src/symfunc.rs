//! Partitions, semistandard tableaux, Gelfand–Tsetlin patterns and the Schur
//! polynomials (unitary, symplectic, orthogonal) they generate.

use crate::error::{invalid, Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::ops::{Add, Div, Mul};

/// Arithmetic needed to evaluate pattern weights. Implemented for f64,
/// BigRational, Complex64 and anything else with field operations.
pub trait Scalar: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> + Div<Output = Self> {}
impl<T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + Div<Output = T>> Scalar for T {}

fn pow<T: Scalar>(x: &T, e: i64) -> T {
    let mut base = if e < 0 { T::one() / x.clone() } else { x.clone() };
    let mut e = e.unsigned_abs();
    let mut acc = T::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}

/// Weakly decreasing positive parts; zeros are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("parts {parts:?} are not weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    /// ⟨width^height⟩
    pub fn rectangle(width: u32, height: usize) -> Partition {
        if width == 0 {
            return Partition { parts: vec![] };
        }
        Partition { parts: vec![width; height] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Parts padded with zeros to length n (n ≥ len).
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.parts.clone();
        v.resize(n.max(v.len()), 0);
        v
    }
}

/// Non-increasing integers of fixed length; trailing zeros are kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    entries: Vec<i64>,
    nonneg: bool,
}

impl Signature {
    pub fn new(entries: Vec<i64>, nonneg: bool) -> Result<Signature> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("signature {entries:?} is not non-increasing"));
        }
        if nonneg && entries.last().is_some_and(|&e| e < 0) {
            return invalid(format!("signature {entries:?} has a negative entry"));
        }
        Ok(Signature { entries, nonneg })
    }

    pub fn from_partition(p: &Partition, len: usize) -> Result<Signature> {
        if p.len() > len {
            return invalid(format!("partition of length {} does not fit {len} entries", p.len()));
        }
        Ok(Signature { entries: p.padded(len).into_iter().map(i64::from).collect(), nonneg: true })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nonneg(&self) -> bool {
        self.nonneg
    }

    /// λ⁻: the last entry negated.
    pub fn minus(&self) -> Signature {
        let mut entries = self.entries.clone();
        if let Some(last) = entries.last_mut() {
            *last = -*last;
        }
        Signature { nonneg: entries.last().is_none_or(|&e| e >= 0), entries }
    }
}

/// μ ≺ λ: for len λ = len μ + 1, λ_1 ≥ μ_1 ≥ λ_2 ≥ … ≥ μ_m ≥ λ_{m+1};
/// for equal lengths, λ_1 ≥ μ_1 ≥ λ_2 ≥ … ≥ λ_m ≥ μ_m.
pub fn interlaces(mu: &[i64], lambda: &[i64]) -> bool {
    let m = mu.len();
    if lambda.len() != m && lambda.len() != m + 1 {
        return false;
    }
    (0..m).all(|j| mu[j] <= lambda[j] && lambda.get(j + 1).is_none_or(|&next| mu[j] >= next))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Tableau> {
        let rows: Vec<Vec<u32>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let shape = Partition::new(rows.iter().map(|r| r.len() as u32).collect())?;
        for (i, row) in rows.iter().enumerate() {
            if row.contains(&0) {
                return invalid("tableau entries start at 1");
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return invalid(format!("row {i} is not weakly increasing"));
            }
            if i > 0 && row.iter().zip(&rows[i - 1]).any(|(b, a)| b <= a) {
                return invalid(format!("column strictness fails between rows {} and {i}", i - 1));
            }
        }
        Ok(Tableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn max_entry(&self) -> u32 {
        self.rows.iter().filter_map(|r| r.last()).copied().max().unwrap_or(0)
    }

    /// t_1..t_n: the number of entries equal to each value.
    pub fn content(&self, n: usize) -> Vec<u64> {
        let mut t = vec![0u64; n];
        for &e in self.rows.iter().flatten() {
            if (e as usize) <= n {
                t[e as usize - 1] += 1;
            }
        }
        t
    }
}

/// Non-negative Gelfand–Tsetlin pattern: rows[i] has i + 1 entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GTPattern {
    rows: Vec<Signature>,
}

impl GTPattern {
    pub fn new(rows: Vec<Signature>) -> Result<GTPattern> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != i + 1 || !r.is_nonneg() {
                return invalid(format!("row {} must be a non-negative signature of length {}", i + 1, i + 1));
            }
            if i > 0 && !interlaces(rows[i - 1].entries(), r.entries()) {
                return invalid(format!("rows {i} and {} do not interlace", i + 1));
            }
        }
        Ok(GTPattern { rows })
    }

    pub fn rows(&self) -> &[Signature] {
        &self.rows
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }
}

/// Row i of the pattern is the shape filled by entries ≤ i.
pub fn ssyt_gt_bijection(t: &Tableau, n: usize) -> Result<GTPattern> {
    if t.max_entry() as usize > n {
        return invalid(format!("entry {} exceeds alphabet size {n}", t.max_entry()));
    }
    if t.shape().len() > n {
        return invalid("tableau has more rows than the alphabet size");
    }
    let rows = (1..=n)
        .map(|i| {
            let mut e: Vec<i64> = t.rows().iter().map(|r| r.iter().filter(|&&v| v as usize <= i).count() as i64).collect();
            e.resize(i, 0);
            e.truncate(i);
            Signature::new(e, true)
        })
        .collect::<Result<Vec<_>>>()?;
    GTPattern::new(rows)
}

pub fn gt_to_ssyt(p: &GTPattern) -> Result<Tableau> {
    let n = p.depth();
    if n == 0 {
        return Tableau::new(vec![]);
    }
    let top = p.rows()[n - 1].entries();
    let mut rows = vec![Vec::new(); n];
    for i in 0..n {
        let cur = p.rows()[i].entries();
        for (j, row) in rows.iter_mut().enumerate().take(i + 1) {
            let prev = if i == 0 || j >= i { 0 } else { p.rows()[i - 1].entries()[j] };
            row.extend(std::iter::repeat_n(i as u32 + 1, (cur[j] - prev) as usize));
        }
    }
    debug_assert!(rows.iter().zip(top).all(|(r, &t)| r.len() as i64 == t));
    Tableau::new(rows)
}

/// |SSYT_n(λ)| = ∏_{i<j} (λ_i − λ_j + j − i)/(j − i).
pub fn count_ssyt(shape: &Partition, n: usize) -> BigUint {
    if shape.len() > n {
        return BigUint::zero();
    }
    let l = shape.padded(n);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigUint::from(l[i] - l[j]) + BigUint::from(j - i);
            den *= BigUint::from(j - i);
        }
    }
    num / den
}

/// All SSYT of the given shape with entries in 1..=n, filled cell by cell.
pub fn enumerate_ssyt(shape: &Partition, n: usize) -> Vec<Tableau> {
    let parts = shape.parts();
    let cells: Vec<(usize, usize)> =
        parts.iter().enumerate().flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c))).collect();
    let mut rows: Vec<Vec<u32>> = parts.iter().map(|&len| vec![0; len as usize]).collect();
    let mut out = Vec::new();
    fn fill(k: usize, cells: &[(usize, usize)], rows: &mut Vec<Vec<u32>>, n: u32, out: &mut Vec<Tableau>) {
        if k == cells.len() {
            out.push(Tableau { shape: Partition::new(rows.iter().map(|r| r.len() as u32).collect()).unwrap(), rows: rows.clone() });
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { rows[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=n {
            rows[r][c] = v;
            fill(k + 1, cells, rows, n, out);
        }
        rows[r][c] = 0;
    }
    if shape.len() <= n {
        fill(0, &cells, &mut rows, n as u32, &mut out);
    }
    out
}

/// Forward dynamic programme over the rows of Gelfand–Tsetlin patterns with
/// top row `shape` (n rows). `step(i, added)` weights the passage to row i
/// adding `added` boxes; `keep(i, row)` prunes intermediate rows.
fn gt_dp<T, S, K>(shape: &[u32], n: usize, step: S, keep: K) -> T
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T> + One,
    S: Fn(usize, u64) -> T,
    K: Fn(usize, &[u32]) -> bool,
{
    let len = shape.len();
    if len > n {
        return T::zero();
    }
    let target = shape.to_vec();
    let mut layer: HashMap<Vec<u32>, T> = HashMap::new();
    layer.insert(vec![0; len], T::one());
    for i in 1..=n {
        let mut next: HashMap<Vec<u32>, T> = HashMap::new();
        // row i has at most i nonzero parts and must still reach the top in n − i strips
        let hi: Vec<u32> = (0..len).map(|j| if j < i { target[j] } else { 0 }).collect();
        let lo: Vec<u32> = (0..len).map(|j| if j + (n - i) < len { target[j + n - i] } else { 0 }).collect();
        for (mu, w) in &layer {
            let mu_size: u64 = mu.iter().map(|&v| v as u64).sum();
            let mut lam = mu.clone();
            strips(mu, &lo, &hi, 0, &mut lam, &mut |lam| {
                if !keep(i, lam) {
                    return;
                }
                let size: u64 = lam.iter().map(|&v| v as u64).sum();
                let contrib = w.clone() * step(i, size - mu_size);
                match next.get_mut(lam) {
                    Some(acc) => *acc = acc.clone() + contrib,
                    None => {
                        next.insert(lam.to_vec(), contrib);
                    }
                }
            });
        }
        layer = next;
    }
    layer.remove(&target).unwrap_or_else(T::zero)
}

/// λ with μ_j ≤ λ_j ≤ μ_{j−1} (horizontal strip) within [lo, hi].
fn strips<F: FnMut(&[u32])>(mu: &[u32], lo: &[u32], hi: &[u32], j: usize, lam: &mut Vec<u32>, f: &mut F) {
    if j == mu.len() {
        f(lam);
        return;
    }
    let upper = if j == 0 { hi[0] } else { hi[j].min(mu[j - 1]) };
    let lower = lo[j].max(mu[j]);
    for v in lower..=upper {
        lam[j] = v;
        strips(mu, lo, hi, j + 1, lam, f);
    }
    lam[j] = mu[j];
}

/// s_λ(x_1, …, x_n) by summing x^T over Gelfand–Tsetlin patterns.
pub fn schur_eval<T: Scalar>(shape: &Partition, x: &[T]) -> T {
    gt_dp(shape.parts(), x.len(), |i, added| pow(&x[i - 1], added as i64), |_, _| true)
}

/// Number of Gelfand–Tsetlin patterns with top row λ and n rows.
pub fn count_gt_patterns(shape: &Partition, n: usize) -> BigUint {
    gt_dp(shape.parts(), n, |_, _| BigUint::one(), |_, _| true)
}

/// Number of SSYT of shape ⟨N^{kβ}⟩ with entries in 1..=2kβ whose entries in
/// each block {2(j−1)β+1, …, 2jβ} number exactly Nβ.
pub fn restricted_rect_count(n: u32, k: u32, beta: u32) -> Result<BigUint> {
    if k == 0 || beta == 0 {
        return invalid("k and beta must be positive");
    }
    let height = (k * beta) as usize;
    let alphabet = 2 * height;
    if n == 0 {
        return Ok(BigUint::one());
    }
    let shape = vec![n; height];
    let block = 2 * beta as usize;
    let per_block = n as u64 * beta as u64;
    Ok(gt_dp(&shape, alphabet, |_, _| BigUint::one(), |i, lam| {
        i % block != 0 || lam.iter().map(|&v| v as u64).sum::<u64>() == per_block * (i / block) as u64
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfKind {
    /// (2n)-symplectic: 2n rows, all entries non-negative.
    Symplectic,
    /// (2n−1)-orthogonal: 2n − 1 rows, odd starters may be negative.
    Orthogonal,
}

/// Half Gelfand–Tsetlin pattern: rows[r] (row r + 1) has ⌈(r + 1)/2⌉ entries;
/// the last entry of each odd row is its odd starter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPattern {
    kind: HalfKind,
    rows: Vec<Signature>,
}

fn is_odd_row(r: usize) -> bool {
    r % 2 == 1
}

impl HalfPattern {
    pub fn new(kind: HalfKind, rows: Vec<Signature>) -> Result<HalfPattern> {
        let depth = rows.len();
        let ok_depth = match kind {
            HalfKind::Symplectic => depth % 2 == 0,
            HalfKind::Orthogonal => depth % 2 == 1,
        };
        if !ok_depth {
            return invalid(format!("{kind:?} pattern cannot have {depth} rows"));
        }
        for (idx, row) in rows.iter().enumerate() {
            let r = idx + 1;
            if row.len() != r.div_ceil(2) {
                return invalid(format!("row {r} must have {} entries", r.div_ceil(2)));
            }
            let e = row.entries();
            let starter_ok = kind == HalfKind::Orthogonal && is_odd_row(r);
            let body = if starter_ok { &e[..e.len() - 1] } else { e };
            if body.iter().any(|&v| v < 0) {
                return invalid(format!("row {r} has a forbidden negative entry"));
            }
            if idx > 0 && !interlaces(&abs_starter(kind, r - 1, rows[idx - 1].entries()), &abs_starter(kind, r, e)) {
                return invalid(format!("rows {} and {r} do not interlace", r - 1));
            }
        }
        Ok(HalfPattern { kind, rows })
    }

    pub fn kind(&self) -> HalfKind {
        self.kind
    }

    pub fn rows(&self) -> &[Signature] {
        &self.rows
    }

    /// Number of variables n.
    pub fn rank(&self) -> usize {
        self.rows.len().div_ceil(2)
    }

    /// Exponent of each x_i in the pattern weight.
    pub fn weight_exponents(&self) -> Vec<i64> {
        let n = self.rank();
        let row = |r: usize| -> &[i64] {
            if r == 0 || r > self.rows.len() {
                &[]
            } else {
                self.rows[r - 1].entries()
            }
        };
        let sum = |r: usize, upto: usize| -> i64 { row(r).iter().take(upto).sum() };
        let abs_sum = |r: usize, upto: usize| -> i64 { row(r).iter().take(upto).map(|v| v.abs()).sum() };
        let sgn = |v: Option<&i64>| -> i64 {
            match v {
                Some(&x) if x < 0 => -1,
                _ => 1,
            }
        };
        (1..=n)
            .map(|i| match self.kind {
                HalfKind::Symplectic => sum(2 * i, i) - 2 * sum(2 * i - 1, i) + sum(2 * i - 2, i - 1),
                HalfKind::Orthogonal => {
                    let s = sgn(row(2 * i - 1).get(i - 1)) * if i >= 2 { sgn(row(2 * i - 3).get(i - 2)) } else { 1 };
                    let bracket = abs_sum(2 * i - 1, i) - 2 * abs_sum(2 * i - 2, i - 1)
                        + if i >= 2 { abs_sum(2 * i - 3, i - 1) } else { 0 };
                    s * bracket
                }
            })
            .collect()
    }

    pub fn weight<T: Scalar>(&self, x: &[T]) -> T {
        self.weight_exponents().iter().zip(x).fold(T::one(), |acc, (&e, xi)| acc * pow(xi, e))
    }
}

fn abs_starter(kind: HalfKind, r: usize, e: &[i64]) -> Vec<i64> {
    let mut v = e.to_vec();
    if kind == HalfKind::Orthogonal && is_odd_row(r) {
        if let Some(last) = v.last_mut() {
            *last = last.abs();
        }
    }
    v
}

/// All half patterns of the given kind with top row ν (desk scale).
pub fn enumerate_half_patterns(kind: HalfKind, nu: &Signature) -> Result<Vec<HalfPattern>> {
    let n = nu.len();
    if n == 0 {
        return invalid("empty top row");
    }
    let depth = match kind {
        HalfKind::Symplectic => 2 * n,
        HalfKind::Orthogonal => 2 * n - 1,
    };
    let top = nu.entries();
    let body = if kind == HalfKind::Orthogonal { &top[..n - 1] } else { top };
    if body.iter().any(|&v| v < 0) {
        return invalid(format!("top row {top:?} has a forbidden negative entry"));
    }
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i64>> = vec![top.to_vec()];
    descend(kind, depth, &mut stack, &mut out);
    out.into_iter()
        .map(|mut rows| {
            rows.reverse();
            let sigs = rows.into_iter().map(|e| Signature::new(e, false)).collect::<Result<Vec<_>>>()?;
            HalfPattern::new(kind, sigs)
        })
        .collect()
}

fn descend(kind: HalfKind, r: usize, stack: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
    if r == 1 {
        out.push(stack.clone());
        return;
    }
    let upper = abs_starter(kind, r, stack.last().unwrap());
    let len = (r - 1).div_ceil(2);
    let starter = kind == HalfKind::Orthogonal && is_odd_row(r - 1);
    let mut row = vec![0i64; len];
    #[allow(clippy::too_many_arguments)]
    fn choose(
        j: usize,
        upper: &[i64],
        starter: bool,
        row: &mut Vec<i64>,
        kind: HalfKind,
        r: usize,
        stack: &mut Vec<Vec<i64>>,
        out: &mut Vec<Vec<Vec<i64>>>,
    ) {
        if j == row.len() {
            stack.push(row.clone());
            descend(kind, r - 1, stack, out);
            stack.pop();
            return;
        }
        let hi = upper[j];
        let lo = upper.get(j + 1).copied().unwrap_or(0);
        let lo = if starter && j + 1 == row.len() { -hi } else { lo };
        for v in lo..=hi {
            row[j] = v;
            choose(j + 1, upper, starter, row, kind, r, stack, out);
        }
    }
    choose(0, &upper, starter, &mut row, kind, r, stack, out);
}

/// sp_ν(x_1, …, x_n) as a sum of w_sp over symplectic patterns with top row ν.
pub fn symplectic_schur_eval<T: Scalar>(nu: &Signature, x: &[T]) -> Result<T> {
    check_top(nu, x.len())?;
    Ok(enumerate_half_patterns(HalfKind::Symplectic, nu)?.iter().fold(T::zero(), |acc, p| acc + p.weight(x)))
}

/// o_ν(x_1, …, x_n) as a sum of w_o over orthogonal patterns with top row ν or ν⁻.
pub fn orthogonal_schur_eval<T: Scalar>(nu: &Signature, x: &[T]) -> Result<T> {
    check_top(nu, x.len())?;
    let mut total = enumerate_half_patterns(HalfKind::Orthogonal, nu)?.iter().fold(T::zero(), |acc, p| acc + p.weight(x));
    if nu.entries().last().is_some_and(|&v| v != 0) {
        total = enumerate_half_patterns(HalfKind::Orthogonal, &nu.minus())?.iter().fold(total, |acc, p| acc + p.weight(x));
    }
    Ok(total)
}

fn check_top(nu: &Signature, n: usize) -> Result<()> {
    if nu.entries().iter().any(|&v| v < 0) {
        return Err(Error::InvalidParameter(format!("{:?} is not a non-negative signature", nu.entries())));
    }
    if nu.len() != n {
        return invalid(format!("signature length {} differs from {} variables", nu.len(), n));
    }
    if nu.entries().iter().sum::<i64>() > 24 {
        return Err(Error::Budget("half-pattern enumeration limited to |ν| ≤ 24".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn sig(v: &[i64]) -> Signature {
        Signature::new(v.to_vec(), false).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn hook_content_examples() {
        for n in 0..8u32 {
            assert_eq!(count_ssyt(&part(&[n]), 2), BigUint::from(n + 1));
        }
        assert_eq!(count_ssyt(&part(&[2, 1]), 3), BigUint::from(8u32));
        assert_eq!(count_ssyt(&part(&[1, 1, 1]), 2), BigUint::zero());
        assert_eq!(enumerate_ssyt(&part(&[2, 1]), 3).len(), 8);
    }

    #[test]
    fn schur_small() {
        let x = [rat(2, 1), rat(3, 1), rat(5, 7)];
        assert_eq!(schur_eval(&part(&[1]), &x), rat(2 * 7 + 3 * 7 + 5, 7));
        let ones = vec![rat(1, 1); 3];
        assert_eq!(schur_eval(&part(&[2, 1]), &ones), rat(8, 1));
        assert_eq!(schur_eval(&Partition::new(vec![]).unwrap(), &x), rat(1, 1));
        // s_{(1,1)}(x1,x2) = x1 x2
        assert_eq!(schur_eval(&part(&[1, 1]), &x[..2]), rat(6, 1));
    }

    #[test]
    fn schur_matches_keating_snaith() {
        use crate::closed_forms::keating_snaith_moment_exact;
        for beta in 1..=2u32 {
            for n in 1..=6u32 {
                let ones = vec![rat(1, 1); 2 * beta as usize];
                let v = schur_eval(&Partition::rectangle(n, beta as usize), &ones);
                assert_eq!(v, keating_snaith_moment_exact(n as u64, beta), "N={n} beta={beta}");
            }
        }
    }

    #[test]
    fn gt_count_equals_ssyt_count() {
        fn partitions(total: u32, max: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
            if total == 0 {
                out.push(cur.clone());
                return;
            }
            for p in (1..=max.min(total)).rev() {
                cur.push(p);
                partitions(total - p, p, out, cur);
                cur.pop();
            }
        }
        for size in 0..=8 {
            let mut all = Vec::new();
            partitions(size, size, &mut all, &mut Vec::new());
            for p in all {
                let p = part(&p);
                for n in 1..=5 {
                    assert_eq!(count_gt_patterns(&p, n), count_ssyt(&p, n), "{p:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn bijection_round_trip() {
        let shape = part(&[4, 3, 2, 1]);
        let tabs = enumerate_ssyt(&shape, 4);
        assert_eq!(BigUint::from(tabs.len()), count_gt_patterns(&shape, 4));
        assert_eq!(tabs.len(), 64);
        for t in &tabs {
            let p = ssyt_gt_bijection(t, 4).unwrap();
            assert_eq!(p.rows()[3].entries(), &[4, 3, 2, 1]);
            assert_eq!(&gt_to_ssyt(&p).unwrap(), t);
        }
        let empty = Tableau::new(vec![]).unwrap();
        let p = ssyt_gt_bijection(&empty, 3).unwrap();
        assert!(p.rows().iter().all(|r| r.entries().iter().all(|&v| v == 0)));
        assert_eq!(gt_to_ssyt(&p).unwrap(), empty);
        let single = Tableau::new(vec![vec![1]]).unwrap();
        let p = ssyt_gt_bijection(&single, 1).unwrap();
        assert_eq!(p.rows()[0].entries(), &[1]);
    }

    #[test]
    fn invalid_objects() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Tableau::new(vec![vec![1, 1], vec![1]]).is_err());
        assert!(Tableau::new(vec![vec![2, 1]]).is_err());
        assert!(Signature::new(vec![1, -1], true).is_err());
        let bad = vec![Signature::new(vec![2], true).unwrap(), Signature::new(vec![1, 0], true).unwrap()];
        assert!(GTPattern::new(bad).is_err());
        assert!(ssyt_gt_bijection(&Tableau::new(vec![vec![3]]).unwrap(), 2).is_err());
    }

    #[test]
    fn restricted_counts() {
        for n in 0..6 {
            assert_eq!(restricted_rect_count(n, 1, 1).unwrap(), BigUint::from(n + 1));
        }
        assert_eq!(restricted_rect_count(2, 2, 1).unwrap(), BigUint::from(10u32));
        assert_eq!(restricted_rect_count(1, 2, 2).unwrap(), BigUint::from(36u32));
    }

    fn brute_restricted(n: u32, k: u32, beta: u32) -> usize {
        let h = (k * beta) as usize;
        let alphabet = 2 * h;
        let block = 2 * beta as usize;
        enumerate_ssyt(&Partition::rectangle(n, h), alphabet)
            .into_iter()
            .filter(|t| {
                let c = t.content(alphabet);
                c.chunks(block).all(|b| b.iter().sum::<u64>() == (n * beta) as u64)
            })
            .count()
    }

    #[test]
    fn restricted_matches_brute_force() {
        for (k, beta) in [(1, 1), (2, 1), (1, 2), (3, 1), (4, 1), (2, 2), (1, 3), (1, 4)] {
            for n in 0..=3u32 {
                if k * beta == 4 && n == 3 {
                    continue;
                }
                let dp = restricted_rect_count(n, k, beta).unwrap();
                assert_eq!(dp, BigUint::from(brute_restricted(n, k, beta)), "N={n} k={k} beta={beta}");
                assert!(dp <= count_ssyt(&Partition::rectangle(n, (k * beta) as usize), (2 * k * beta) as usize));
            }
        }
    }

    #[test]
    fn figure_patterns() {
        let p = HalfPattern::new(HalfKind::Symplectic, vec![sig(&[1]), sig(&[2]), sig(&[2, 1]), sig(&[3, 2])]).unwrap();
        assert_eq!(p.weight_exponents(), vec![0, 1]);
        let o = HalfPattern::new(HalfKind::Orthogonal, vec![sig(&[-1]), sig(&[1]), sig(&[2, 0]), sig(&[2, 2]), sig(&[4, 2, -2])])
            .unwrap();
        assert_eq!(o.weight_exponents(), vec![-1, -1, -2]);
        let x = [rat(2, 1), rat(3, 1), rat(5, 1)];
        assert_eq!(o.weight(&x), rat(1, 150));
        assert!(HalfPattern::new(HalfKind::Symplectic, vec![sig(&[-1]), sig(&[0])]).is_err());
        // odd starter exceeding its bound
        assert!(HalfPattern::new(HalfKind::Orthogonal, vec![sig(&[-2]), sig(&[1]), sig(&[1, 0])]).is_err());
    }

    fn det(mut m: Vec<Vec<f64>>) -> f64 {
        let n = m.len();
        let mut d = 1.0;
        for c in 0..n {
            let p = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
            if p != c {
                m.swap(p, c);
                d = -d;
            }
            d *= m[c][c];
            for r in c + 1..n {
                let f = m[r][c] / m[c][c];
                for k in c..n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
        d
    }

    fn weyl_sp(nu: &[i64], x: &[f64]) -> f64 {
        let n = nu.len();
        let num = (0..n).map(|i| x.iter().map(|&xj| {
            let l = (nu[i] + (n - i) as i64) as i32;
            xj.powi(l) - xj.powi(-l)
        }).collect()).collect();
        let den = (0..n).map(|i| x.iter().map(|&xj| {
            let l = (n - i) as i32;
            xj.powi(l) - xj.powi(-l)
        }).collect()).collect();
        det(num) / det(den)
    }

    fn weyl_o(nu: &[i64], x: &[f64]) -> f64 {
        let n = nu.len();
        let num = (0..n).map(|i| x.iter().map(|&xj| {
            let l = (nu[i] + (n - 1 - i) as i64) as i32;
            xj.powi(l) + xj.powi(-l)
        }).collect()).collect();
        let den = (0..n).map(|i| x.iter().map(|&xj| {
            let l = (n - 1 - i) as i32;
            xj.powi(l) + xj.powi(-l)
        }).collect()).collect();
        let scale = if nu[n - 1] == 0 { 1.0 } else { 2.0 };
        scale * det(num) / det(den)
    }

    #[test]
    fn half_schur_match_weyl_characters() {
        let x = [1.3, 0.7, 1.9];
        for nu in [vec![0i64], vec![3], vec![1, 0], vec![2, 1], vec![2, 2], vec![3, 1, 0], vec![2, 1, 1], vec![2, 2, 2]] {
            let n = nu.len();
            let s = Signature::new(nu.clone(), true).unwrap();
            let sp = symplectic_schur_eval(&s, &x[..n]).unwrap();
            let want = weyl_sp(&nu, &x[..n]);
            assert!((sp - want).abs() < 1e-9 * want.abs().max(1.0), "sp {nu:?}: {sp} vs {want}");
            let o = orthogonal_schur_eval(&s, &x[..n]).unwrap();
            let want = weyl_o(&nu, &x[..n]);
            assert!((o - want).abs() < 1e-9 * want.abs().max(1.0), "o {nu:?}: {o} vs {want}");
        }
        let zero = Signature::new(vec![0, 0, 0], true).unwrap();
        assert_eq!(symplectic_schur_eval(&zero, &[rat(2, 1), rat(3, 1), rat(5, 1)]).unwrap(), rat(1, 1));
        assert_eq!(orthogonal_schur_eval(&zero, &[rat(2, 1), rat(3, 1), rat(5, 1)]).unwrap(), rat(1, 1));
        assert!(symplectic_schur_eval(&zero, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn enumerated_half_patterns_are_valid() {
        for nu in [vec![3i64, 1], vec![2, 2, 1]] {
            let s = Signature::new(nu, true).unwrap();
            for kind in [HalfKind::Symplectic, HalfKind::Orthogonal] {
                for p in enumerate_half_patterns(kind, &s).unwrap() {
                    HalfPattern::new(kind, p.rows().to_vec()).unwrap();
                }
            }
        }
    }
}

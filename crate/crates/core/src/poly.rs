//! Dense univariate polynomials with exact rational coefficients.

use crate::error::{invalid, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    /// Ascending degree, no trailing zeros.
    coeffs: Vec<BigRational>,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> RationalPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> RationalPoly {
        RationalPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: BigRational) -> RationalPoly {
        RationalPoly::new(vec![c])
    }

    /// x + a
    pub fn shifted_x(a: i64) -> RationalPoly {
        RationalPoly::from_integers(&[a, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&int(x))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + crate::closed_forms::to_f64(c))
    }

    pub fn mul(&self, other: &RationalPoly) -> RationalPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return RationalPoly::new(vec![]);
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// The unique polynomial of degree < len through the points (Newton form).
    pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Result<RationalPoly> {
        if xs.len() != ys.len() || xs.is_empty() {
            return invalid("interpolation needs matching, non-empty node and value lists");
        }
        let n = xs.len();
        let mut dd = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = &xs[i] - &xs[i - level];
                if den.is_zero() {
                    return invalid("repeated interpolation node");
                }
                dd[i] = (&dd[i] - &dd[i - 1]) / den;
            }
        }
        // Horner on the Newton basis
        let mut p = RationalPoly::constant(dd[n - 1].clone());
        for i in (0..n - 1).rev() {
            let factor = RationalPoly::new(vec![-xs[i].clone(), BigRational::one()]);
            p = p.mul(&factor);
            let mut c = p.coeffs.clone();
            if c.is_empty() {
                c.push(BigRational::zero());
            }
            c[0] += &dd[i];
            p = RationalPoly::new(c);
        }
        Ok(p)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*N")?,
                _ => write!(f, "{a}*N^{d}")?,
            }
        }
        Ok(())
    }
}

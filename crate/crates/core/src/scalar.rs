//! Exact-rational Laurent polynomials in a single indeterminate `z`.
//!
//! Coefficients of Γ elements live here: the vertex operator brings in
//! negative powers of `z`, so exponents range over all of `ℤ`. Zero
//! coefficients are never stored, making `==` mathematical equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse Laurent polynomial `Σ c_e z^e` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentScalar {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        LaurentScalar::default()
    }

    pub fn one() -> Self {
        LaurentScalar::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        LaurentScalar { coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        LaurentScalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `c * z^e`.
    pub fn monomial(e: i64, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentScalar { coeffs }
    }

    /// `z^e`.
    pub fn z_pow(e: i64) -> Self {
        LaurentScalar::monomial(e, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True if the only exponent present is 0.
    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&e| e == 0)
    }

    /// Coefficient of `z^e`.
    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The value as a plain rational if constant, else `None`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }

    /// Highest exponent with nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn add_assign_term(&mut self, e: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentScalar {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `z -> z^n` (exponent scaling); used by plethysm.
    pub fn stretch(&self, n: i64) -> Self {
        LaurentScalar {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e * n, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentScalar::zero();
        }
        LaurentScalar {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Evaluate at `z = 1`: the sum of all coefficients.
    pub fn eval_one(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.values() {
            acc += c;
        }
        acc
    }

    /// Exact division by `(1 - z)`; panics unless `self` vanishes at `z = 1`.
    pub fn div_one_minus_z(&self) -> Self {
        assert!(
            self.eval_one().is_zero(),
            "division by (1 - z) requires a root at z = 1"
        );
        if self.is_zero() {
            return LaurentScalar::zero();
        }
        let lo = self.low_degree().unwrap();
        let hi = self.degree().unwrap();
        let mut out = BTreeMap::new();
        // self = (1 - z) * q gives b_e = q_e - q_{e-1}, and q_e = 0 for e >= hi,
        // so synthetic division runs top-down via q_{e-1} = q_e - b_e.
        let mut q_prev = BigRational::zero();
        let mut e = hi;
        while e >= lo {
            let q = &q_prev - self.coeff(e);
            if !q.is_zero() {
                out.insert(e - 1, q.clone());
            }
            q_prev = q;
            e -= 1;
        }
        debug_assert!(q_prev.is_zero(), "inexact division by (1 - z)");
        LaurentScalar { coeffs: out }
    }

    /// `(1 - z)^n` for `n >= 0`.
    pub fn one_minus_z_pow(n: u32) -> Self {
        let base = &LaurentScalar::one() - &LaurentScalar::z_pow(1);
        let mut acc = LaurentScalar::one();
        for _ in 0..n {
            acc = &acc * &base;
        }
        acc
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, other: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (&e, c) in other.coeffs.iter() {
            out.add_assign_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, other: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (&e, c) in other.coeffs.iter() {
            out.add_assign_term(e, &-c.clone());
        }
        out
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, other: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (&e1, c1) in self.coeffs.iter() {
            for (&e2, c2) in other.coeffs.iter() {
                out.add_assign_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if e == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if e == 1 {
                    f.write_str("z")?;
                } else {
                    write!(f, "z^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_basics() {
        let a = LaurentScalar::monomial(2, rat(3, 1));
        let b = LaurentScalar::monomial(-1, rat(1, 2));
        let prod = &a * &b;
        assert_eq!(prod, LaurentScalar::monomial(1, rat(3, 2)));
        let sum = &a + &b;
        assert_eq!(sum.coeff(2), rat(3, 1));
        assert_eq!(sum.coeff(-1), rat(1, 2));
        assert!((&sum - &sum).is_zero());
        assert_eq!(&-&a + &a, LaurentScalar::zero());
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let a = LaurentScalar::monomial(1, rat(1, 1));
        let b = LaurentScalar::monomial(1, rat(-1, 1));
        let s = &a + &b;
        assert!(s.is_zero());
        assert_eq!(s.iter().count(), 0);
    }

    #[test]
    fn shift_and_stretch() {
        let a = &LaurentScalar::z_pow(2) + &LaurentScalar::from_int(5);
        assert_eq!(a.shift(3).coeff(5), rat(1, 1));
        assert_eq!(a.shift(3).coeff(3), rat(5, 1));
        let s = a.stretch(-2);
        assert_eq!(s.coeff(-4), rat(1, 1));
        assert_eq!(s.coeff(0), rat(5, 1));
    }

    #[test]
    fn division_by_one_minus_z() {
        // (1 - z^3) / (1 - z) = 1 + z + z^2
        let h = &LaurentScalar::one() - &LaurentScalar::z_pow(3);
        let q = h.div_one_minus_z();
        let expected = &(&LaurentScalar::one() + &LaurentScalar::z_pow(1)) + &LaurentScalar::z_pow(2);
        assert_eq!(q, expected);
        // Reconstruction: q * (1 - z) = h
        assert_eq!(&q * &LaurentScalar::one_minus_z_pow(1), h);
        // Laurent case: (z^{-1} - z) / (1 - z) = z^{-1} + 1
        let h = &LaurentScalar::z_pow(-1) - &LaurentScalar::z_pow(1);
        let q = h.div_one_minus_z();
        assert_eq!(q, &LaurentScalar::z_pow(-1) + &LaurentScalar::one());
    }

    #[test]
    #[should_panic(expected = "root at z = 1")]
    fn division_requires_root() {
        LaurentScalar::one().div_one_minus_z();
    }

    #[test]
    fn display_readable() {
        let a = &LaurentScalar::monomial(2, rat(-3, 2)) + &LaurentScalar::from_int(1);
        assert_eq!(a.to_string(), "1 - 3/2*z^2");
    }
}

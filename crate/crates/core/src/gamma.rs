//! Sparse exact arithmetic in Γ ⊗ ℚ[z, z⁻¹].
//!
//! Elements are stored in the power-sum basis: a [`GammaElement`] maps each
//! monomial `p_μ` (indexed by a [`PowerMonomial`], the exponent multiset) to a
//! [`LaurentScalar`] coefficient. Elements of Γ proper use only odd parts;
//! plethysm intermediates may introduce even power sums, so the key type
//! admits any positive parts and [`GammaElement::is_gamma`] reports whether an
//! element lies in Γ.
//!
//! The generators `q_n` are produced by [`qgen`], which uses the logarithmic
//! derivative of the generating series: `n q_n = 2 Σ_{m odd, m<=n} p_m q_{n-m}`,
//! memoized in a process-wide table safe for concurrent use.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::partitions::format_parts;
use crate::scalar::LaurentScalar;

/// Exponent multiset of a power-sum monomial `p_μ`: positive parts, stored in
/// weakly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PowerMonomial {
    parts: Vec<i64>,
}

impl PowerMonomial {
    /// The empty monomial, i.e. the constant 1.
    pub fn unit() -> Self {
        PowerMonomial { parts: Vec::new() }
    }

    /// Single power sum `p_n`; `n` must be positive.
    pub fn single(n: i64) -> Self {
        assert!(n >= 1, "power sum index must be positive, got {n}");
        PowerMonomial { parts: vec![n] }
    }

    /// Build from arbitrary positive parts; sorts into canonical order.
    pub fn from_parts(mut parts: Vec<i64>) -> Self {
        assert!(parts.iter().all(|&x| x >= 1), "power sum parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        PowerMonomial { parts }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn is_odd(&self) -> bool {
        self.parts.iter().all(|&x| x % 2 == 1)
    }

    /// Multiset union: `p_μ * p_ν`.
    pub fn merge(&self, other: &PowerMonomial) -> PowerMonomial {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            if self.parts[i] >= other.parts[j] {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        parts.extend_from_slice(&self.parts[i..]);
        parts.extend_from_slice(&other.parts[j..]);
        PowerMonomial { parts }
    }

    /// Multiply every part by `n >= 1`; order is preserved.
    pub fn stretch(&self, n: i64) -> PowerMonomial {
        assert!(n >= 1);
        PowerMonomial {
            parts: self.parts.iter().map(|&x| x * n).collect(),
        }
    }

    /// Number of parts equal to `n`.
    pub fn multiplicity(&self, n: i64) -> usize {
        self.parts.iter().filter(|&&x| x == n).count()
    }

    /// Remove `count` copies of part `n`; `None` if fewer are present.
    pub fn remove_copies(&self, n: i64, count: usize) -> Option<PowerMonomial> {
        if self.multiplicity(n) < count {
            return None;
        }
        let mut parts = Vec::with_capacity(self.parts.len() - count);
        let mut left = count;
        for &x in &self.parts {
            if x == n && left > 0 {
                left -= 1;
            } else {
                parts.push(x);
            }
        }
        Some(PowerMonomial { parts })
    }
}

impl fmt::Display for PowerMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            f.write_str("1")
        } else {
            write!(f, "p[{}]", format_parts(&self.parts))
        }
    }
}

/// Element of Γ ⊗ ℚ[z, z⁻¹] in the power-sum basis. No zero coefficients are
/// stored, so derived equality is exact mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GammaElement {
    terms: BTreeMap<PowerMonomial, LaurentScalar>,
}

impl GammaElement {
    pub fn zero() -> Self {
        GammaElement::default()
    }

    pub fn one() -> Self {
        GammaElement::constant(LaurentScalar::one())
    }

    /// A scalar multiple of the unit monomial.
    pub fn constant(c: LaurentScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PowerMonomial::unit(), c);
        }
        GammaElement { terms }
    }

    pub fn from_rational(c: BigRational) -> Self {
        GammaElement::constant(LaurentScalar::from_rational(c))
    }

    pub fn from_int(n: i64) -> Self {
        GammaElement::constant(LaurentScalar::from_int(n))
    }

    /// The letter `z^k` as an element (coefficient `z^k` on the unit monomial).
    pub fn z_pow(k: i64) -> Self {
        GammaElement::constant(LaurentScalar::z_pow(k))
    }

    /// The power sum `p_n`, `n >= 1`.
    pub fn p_n(n: i64) -> Self {
        GammaElement::term(PowerMonomial::single(n), LaurentScalar::one())
    }

    pub fn term(m: PowerMonomial, c: LaurentScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        GammaElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PowerMonomial, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PowerMonomial) -> LaurentScalar {
        self.terms.get(m).cloned().unwrap_or_else(LaurentScalar::zero)
    }

    /// True if every monomial has only odd parts (the element lies in Γ,
    /// possibly tensored with Laurent scalars).
    pub fn is_gamma(&self) -> bool {
        self.terms.keys().all(|m| m.is_odd())
    }

    /// True if no coefficient depends on z.
    pub fn is_z_free(&self) -> bool {
        self.terms.values().all(|c| c.is_constant())
    }

    /// Largest monomial weight present, or `None` for the zero element.
    pub fn max_weight(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.weight()).max()
    }

    /// The set of distinct monomial weights present, ascending.
    pub fn weights(&self) -> Vec<i64> {
        let mut ws: Vec<i64> = self.terms.keys().map(|m| m.weight()).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    pub fn add_assign_term(&mut self, m: &PowerMonomial, c: &LaurentScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        if c.is_zero() {
            return GammaElement::zero();
        }
        let mut out = GammaElement::zero();
        for (m, v) in self.terms.iter() {
            out.add_assign_term(m, &(v * c));
        }
        out
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        self.scale(&LaurentScalar::from_rational(c.clone()))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&LaurentScalar::from_int(n))
    }

    pub fn scale_bigint(&self, n: &BigInt) -> Self {
        self.scale(&LaurentScalar::from_rational(BigRational::from_integer(n.clone())))
    }

    /// Multiply every coefficient by `z^k`.
    pub fn mul_z_pow(&self, k: i64) -> Self {
        GammaElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.shift(k))).collect(),
        }
    }

    /// Restriction to monomials of weight `w`. Requires a z-free element so
    /// the grading is unambiguous.
    pub fn weight_component(&self, w: i64) -> Result<GammaElement> {
        if !self.is_z_free() {
            return Err(Error::NotZFree);
        }
        Ok(self.weight_component_unchecked(w))
    }

    /// Same restriction without the z-free check; the monomial grading is
    /// taken as-is.
    pub fn weight_component_unchecked(&self, w: i64) -> GammaElement {
        GammaElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The z-free element multiplying `z^k`: collects `[z^k]` of every
    /// coefficient.
    pub fn z_coefficient(&self, k: i64) -> GammaElement {
        let mut out = GammaElement::zero();
        for (m, c) in self.terms.iter() {
            let v = c.coeff(k);
            if !v.is_zero() {
                out.add_assign_term(m, &LaurentScalar::from_rational(v));
            }
        }
        out
    }

    /// All z exponents present across coefficients, ascending.
    pub fn z_support(&self) -> Vec<i64> {
        let mut es: Vec<i64> = self
            .terms
            .values()
            .flat_map(|c| c.exponents().collect::<Vec<_>>())
            .collect();
        es.sort_unstable();
        es.dedup();
        es
    }

    /// The constant part (coefficient of the unit monomial).
    pub fn constant_term(&self) -> LaurentScalar {
        self.coeff(&PowerMonomial::unit())
    }

    /// Alphabet-shift substitution `p_n -> p_n + sign * z^{dir * n}` applied as
    /// an algebra homomorphism. Realizes `F(A + z)`, `F(A - z)`, `F(A - 1/z)`
    /// and `F(A + 1/z)` depending on the two flags.
    pub fn substitute_letter(&self, sign: LetterSign, dir: LetterDirection) -> GammaElement {
        let s: i64 = match sign {
            LetterSign::Plus => 1,
            LetterSign::Minus => -1,
        };
        let e: i64 = match dir {
            LetterDirection::Direct => 1,
            LetterDirection::Inverse => -1,
        };
        let mut out = GammaElement::zero();
        for (m, c) in self.terms.iter() {
            // Expand the product of (p_n + s z^{en}) over the parts of m.
            let mut expansion: Vec<(PowerMonomial, LaurentScalar)> =
                vec![(PowerMonomial::unit(), c.clone())];
            for &n in m.parts() {
                let letter = LaurentScalar::monomial(e * n, BigRational::from_integer(s.into()));
                let mut next = Vec::with_capacity(expansion.len() * 2);
                for (mono, coeff) in expansion {
                    next.push((mono.merge(&PowerMonomial::single(n)), coeff.clone()));
                    next.push((mono, &coeff * &letter));
                }
                expansion = next;
            }
            for (mono, coeff) in expansion {
                out.add_assign_term(&mono, &coeff);
            }
        }
        out
    }
}

/// Sign of the adjoined letter in [`GammaElement::substitute_letter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LetterSign {
    Plus,
    Minus,
}

/// Whether the adjoined letter is `z` or `1/z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LetterDirection {
    Direct,
    Inverse,
}

impl Add for &GammaElement {
    type Output = GammaElement;
    fn add(self, other: &GammaElement) -> GammaElement {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_assign_term(m, c);
        }
        out
    }
}

impl Sub for &GammaElement {
    type Output = GammaElement;
    fn sub(self, other: &GammaElement) -> GammaElement {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_assign_term(m, &-c);
        }
        out
    }
}

impl Neg for &GammaElement {
    type Output = GammaElement;
    fn neg(self) -> GammaElement {
        GammaElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GammaElement {
    type Output = GammaElement;
    fn mul(self, other: &GammaElement) -> GammaElement {
        let mut out = GammaElement::zero();
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                out.add_assign_term(&m1.merge(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({})*{}", c, m)?;
        }
        Ok(())
    }
}

fn qgen_table() -> &'static RwLock<BTreeMap<i64, Arc<GammaElement>>> {
    static TABLE: OnceLock<RwLock<BTreeMap<i64, Arc<GammaElement>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(BTreeMap::new()))
}

/// The generator `q_n` of Γ in the power-sum basis.
///
/// `q_0 = 1`, `q_n = 0` for `n < 0`, and for `n >= 1` the memoized recurrence
/// `n q_n = 2 Σ_{m odd, m <= n} p_m q_{n-m}` is used. The memo table is shared
/// process-wide; concurrent recomputation is harmless since results are
/// identical.
pub fn qgen(n: i64) -> GammaElement {
    if n < 0 {
        return GammaElement::zero();
    }
    if n == 0 {
        return GammaElement::one();
    }
    if let Some(hit) = qgen_table().read().unwrap().get(&n) {
        return (**hit).clone();
    }
    // Fill the table bottom-up so recursion depth stays flat.
    let mut prev: Vec<GammaElement> = vec![GammaElement::one()];
    for k in 1..=n {
        let cached = qgen_table().read().unwrap().get(&k).map(|a| (**a).clone());
        let qk = match cached {
            Some(e) => e,
            None => {
                let mut acc = GammaElement::zero();
                let mut m = 1;
                while m <= k {
                    let pm = GammaElement::p_n(m);
                    acc = &acc + &(&pm * &prev[(k - m) as usize]);
                    m += 2;
                }
                let qk = acc.scale_rational(&BigRational::new(BigInt::from(2), BigInt::from(k)));
                qgen_table()
                    .write()
                    .unwrap()
                    .entry(k)
                    .or_insert_with(|| Arc::new(qk.clone()));
                qk
            }
        };
        prev.push(qk);
    }
    prev.pop().unwrap()
}

/// Seed the `q_n` memo table with a precomputed expansion (used by the CLI
/// cache). The entry is ignored unless it matches the shape invariants of a
/// Γ element.
pub fn qgen_seed(n: i64, element: GammaElement) -> bool {
    if n < 1 || !element.is_gamma() || !element.is_z_free() {
        return false;
    }
    qgen_table()
        .write()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::new(element));
    true
}

/// Snapshot of the `q_n` memo table, ascending in `n`.
pub fn qgen_snapshot() -> Vec<(i64, GammaElement)> {
    qgen_table()
        .read()
        .unwrap()
        .iter()
        .map(|(&n, e)| (n, (**e).clone()))
        .collect()
}

/// Truncation `Σ_{n=0}^{max} q_n z^n` of the generating series κ_z.
pub fn kappa_z(max: i64) -> GammaElement {
    let mut acc = GammaElement::zero();
    for n in 0..=max.max(0) {
        acc = &acc + &qgen(n).mul_z_pow(n);
    }
    acc
}

/// Truncation of κ_{-z}: `Σ_{n=0}^{max} (-1)^n q_n z^n`.
pub fn kappa_neg_z(max: i64) -> GammaElement {
    let mut acc = GammaElement::zero();
    for n in 0..=max.max(0) {
        let t = qgen(n).mul_z_pow(n);
        acc = if n % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// Truncation of κ_{-1/z}: `Σ_{n=0}^{max} (-1)^n q_n z^{-n}`.
pub fn kappa_neg_inv_z(max: i64) -> GammaElement {
    let mut acc = GammaElement::zero();
    for n in 0..=max.max(0) {
        let t = qgen(n).mul_z_pow(-n);
        acc = if n % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{odd_partitions, z_mu};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Direct evaluation of `q_n = Σ_{μ odd, |μ|=n} z_μ^{-1} 2^{ℓ(μ)} p_μ`,
    /// independent of the recurrence used by `qgen`.
    fn qgen_by_sum(n: i64) -> GammaElement {
        if n < 0 {
            return GammaElement::zero();
        }
        let mut acc = GammaElement::zero();
        for mu in odd_partitions(n) {
            let zmu = z_mu(mu.parts()).unwrap();
            let coeff = BigRational::new(BigInt::from(1) << mu.len(), zmu);
            acc.add_assign_term(
                &PowerMonomial::from_parts(mu.parts().to_vec()),
                &LaurentScalar::from_rational(coeff),
            );
        }
        acc
    }

    #[test]
    fn qgen_examples() {
        assert_eq!(qgen(0), GammaElement::one());
        assert_eq!(qgen(-2), GammaElement::zero());
        assert_eq!(qgen(1), GammaElement::p_n(1).scale_int(2));

        // q_3 = (2/3) p_3 + (4/3) p_{(1,1,1)}
        let mut expected = GammaElement::zero();
        expected.add_assign_term(
            &PowerMonomial::single(3),
            &LaurentScalar::from_rational(rat(2, 3)),
        );
        expected.add_assign_term(
            &PowerMonomial::from_parts(vec![1, 1, 1]),
            &LaurentScalar::from_rational(rat(4, 3)),
        );
        assert_eq!(qgen(3), expected);
    }

    #[test]
    fn qgen_recurrence_matches_closed_form() {
        for n in 1..=12 {
            assert_eq!(qgen(n), qgen_by_sum(n), "q_{n} mismatch");
        }
    }

    #[test]
    fn ring_operations() {
        // p_1 * p_3 = p_{(3,1)}
        let p13 = &GammaElement::p_n(1) * &GammaElement::p_n(3);
        assert_eq!(
            p13,
            GammaElement::term(PowerMonomial::from_parts(vec![3, 1]), LaurentScalar::one())
        );
        // F + (-1)F = 0
        let f = qgen(4);
        assert!((&f + &f.scale_int(-1)).is_zero());
        // q_1 * q_1 = 2 q_2
        assert_eq!(&qgen(1) * &qgen(1), qgen(2).scale_int(2));
    }

    #[test]
    fn weight_component_examples() {
        let q3 = qgen(3);
        assert_eq!(q3.weight_component(3).unwrap(), q3);
        assert!(q3.weight_component(2).unwrap().is_zero());
        let mixed = &(&qgen(1) * &qgen(2)) + &qgen(1);
        assert_eq!(mixed.weight_component(3).unwrap(), &qgen(1) * &qgen(2));
        assert_eq!(mixed.weight_component(1).unwrap(), qgen(1));
        // Sum of components reassembles the element.
        let mut back = GammaElement::zero();
        for w in mixed.weights() {
            back = &back + &mixed.weight_component(w).unwrap();
        }
        assert_eq!(back, mixed);
        assert!(qgen(1).mul_z_pow(1).weight_component(1).is_err());
    }

    #[test]
    fn substitute_letter_examples() {
        // p_1 -> p_1 + z
        let got = GammaElement::p_n(1).substitute_letter(LetterSign::Plus, LetterDirection::Direct);
        assert_eq!(got, &GammaElement::p_n(1) + &GammaElement::z_pow(1));

        // q_1(A - 1/z) = 2 p_1 - 2 z^{-1}
        let got = qgen(1).substitute_letter(LetterSign::Minus, LetterDirection::Inverse);
        assert_eq!(
            got,
            &GammaElement::p_n(1).scale_int(2) - &GammaElement::z_pow(-1).scale_int(2)
        );

        // q_2(A + z) = q_2 + 2 z q_1 + 2 z^2
        let got = qgen(2).substitute_letter(LetterSign::Plus, LetterDirection::Direct);
        let expected = &(&qgen(2) + &qgen(1).mul_z_pow(1).scale_int(2))
            + &GammaElement::z_pow(2).scale_int(2);
        assert_eq!(got, expected);
    }

    #[test]
    fn substitute_letter_is_homomorphism() {
        let f = &qgen(3) + &qgen(1);
        let g = &qgen(2) * &qgen(2);
        let lhs = (&f * &g).substitute_letter(LetterSign::Minus, LetterDirection::Direct);
        let rhs = &f.substitute_letter(LetterSign::Minus, LetterDirection::Direct)
            * &g.substitute_letter(LetterSign::Minus, LetterDirection::Direct);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn alphabet_negation_scales_by_parity() {
        // p_n -> -p_n multiplies a weight-n homogeneous Γ element by (-1)^n.
        for n in 1..=8 {
            let f = qgen(n);
            let mut negated = GammaElement::zero();
            for (m, c) in f.iter() {
                let sign = if m.len() % 2 == 0 { 1 } else { -1 };
                negated.add_assign_term(m, &c.scale(&rat(sign, 1)));
            }
            let expected = if n % 2 == 0 { f.clone() } else { f.scale_int(-1) };
            assert_eq!(negated, expected);
        }
    }

    #[test]
    fn qgen_seed_rejects_bad_entries() {
        assert!(!qgen_seed(0, GammaElement::one()));
        assert!(!qgen_seed(5, GammaElement::p_n(2)));
        assert!(!qgen_seed(5, qgen(5).mul_z_pow(1)));
    }

    #[test]
    fn kappa_truncations() {
        let k = kappa_z(3);
        assert_eq!(k.z_coefficient(0), GammaElement::one());
        assert_eq!(k.z_coefficient(2), qgen(2));
        let kn = kappa_neg_inv_z(3);
        assert_eq!(kn.z_coefficient(-3), qgen(3).scale_int(-1));
        assert_eq!(kn.z_coefficient(-2), qgen(2));
    }
}

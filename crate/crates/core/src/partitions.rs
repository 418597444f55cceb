//! Integer compositions, partitions and the straightening calculus for
//! Q-function indices.
//!
//! A [`Composition`] is an arbitrary finite integer sequence, stored verbatim.
//! A [`StrictPartition`] has strictly decreasing positive parts and indexes a
//! basis element of Γ. [`straighten`] rewrites Q of any composition as
//! `c * Q_tau` with `c ∈ {0, ±2^j}` and `tau` strict, using the exchange rules
//! for adjacent parts and the cancellation of `(-p, p)` pairs.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// An arbitrary finite sequence of integers indexing a Q-function.
///
/// No normalization is performed: parts may be negative, zero, repeated or
/// unordered, and the stored order is meaningful (it determines the sign of
/// the straightened form).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<i64>,
}

impl Composition {
    pub fn new(parts: Vec<i64>) -> Self {
        Composition { parts }
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
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

    /// Sum of all parts.
    pub fn weight(&self) -> i64 {
        self.parts.iter().sum()
    }
}

impl From<&StrictPartition> for Composition {
    fn from(sp: &StrictPartition) -> Self {
        Composition::new(sp.parts().to_vec())
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        Composition::new(p.parts().to_vec())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_parts(&self.parts))
    }
}

/// A partition: weakly decreasing nonnegative parts. Zero parts are stripped
/// at construction, so the stored length is the number of nonzero parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) || parts.iter().any(|&x| x < 0) {
            return Err(Error::NotAPartition);
        }
        let parts: Vec<i64> = parts.into_iter().filter(|&x| x != 0).collect();
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
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

    /// First part, or 0 for the empty partition.
    pub fn first_part(&self) -> i64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Containment of Young diagrams: every part of `other` fits under ours.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len()
            && other
                .parts
                .iter()
                .zip(self.parts.iter())
                .all(|(&m, &l)| m <= l)
    }
}

impl From<&StrictPartition> for Partition {
    fn from(sp: &StrictPartition) -> Self {
        Partition {
            parts: sp.parts().to_vec(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_parts(&self.parts))
    }
}

/// A strict partition: strictly decreasing, all parts positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPartition {
    parts: Vec<i64>,
}

impl StrictPartition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&x| x <= 0) || !parts.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::NotStrict);
        }
        Ok(StrictPartition { parts })
    }

    pub fn empty() -> Self {
        StrictPartition { parts: Vec::new() }
    }

    /// Single-row partition `(n)`; `n` must be positive.
    pub fn row(n: i64) -> Result<Self> {
        StrictPartition::new(vec![n])
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

    pub fn first_part(&self) -> i64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Position (1-based) of the part equal to `k`, if present.
    pub fn position_of(&self, k: i64) -> Option<usize> {
        self.parts.iter().position(|&x| x == k).map(|i| i + 1)
    }

    /// Partition with the 1-based `i`-th part removed. Strictness is preserved.
    pub fn without_part(&self, i: usize) -> Result<StrictPartition> {
        if i == 0 || i > self.parts.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.parts.len(),
            });
        }
        let mut parts = self.parts.clone();
        parts.remove(i - 1);
        Ok(StrictPartition { parts })
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_parts(&self.parts))
    }
}

/// `pλ := (p, λ_1, ..., λ_n)`.
pub fn prepend(p: i64, lambda: &Composition) -> Composition {
    let mut parts = Vec::with_capacity(lambda.len() + 1);
    parts.push(p);
    parts.extend_from_slice(lambda.parts());
    Composition::new(parts)
}

/// `λ \ {λ_i}`: delete the 1-based `i`-th entry.
pub fn remove_part(lambda: &Composition, i: usize) -> Result<Composition> {
    if i == 0 || i > lambda.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: lambda.len(),
        });
    }
    let mut parts = lambda.parts().to_vec();
    parts.remove(i - 1);
    Ok(Composition::new(parts))
}

/// Centralizer size `z_μ = ∏_i i^{m_i(μ)} m_i(μ)!` for a partition with
/// positive parts (any order).
pub fn z_mu(mu: &[i64]) -> Result<BigInt> {
    let mut result = BigInt::one();
    let mut counts: std::collections::BTreeMap<i64, u32> = std::collections::BTreeMap::new();
    for &part in mu {
        if part <= 0 {
            return Err(Error::NonPositivePart(part));
        }
        *counts.entry(part).or_insert(0) += 1;
    }
    for (part, mult) in counts {
        result *= BigInt::from(part).pow(mult);
        for j in 1..=mult {
            result *= BigInt::from(j);
        }
    }
    Ok(result)
}

/// All partitions of `n` with every part odd, in reverse lexicographic
/// (descending) order. `odd_partitions(0)` is `[()]`.
pub fn odd_partitions(n: i64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let max = if n % 2 == 0 { n - 1 } else { n };
    odd_rec(n, max.max(0), &mut current, &mut out);
    out
}

fn odd_rec(remaining: i64, max_part: i64, current: &mut Vec<i64>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    let mut part = max_part.min(remaining);
    if part % 2 == 0 {
        part -= 1;
    }
    while part >= 1 {
        current.push(part);
        odd_rec(remaining - part, part, current, out);
        current.pop();
        part -= 2;
    }
}

/// All strict partitions of `n`, in reverse lexicographic (descending) order.
pub fn strict_partitions(n: i64) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    strict_rec(n, n, &mut current, &mut out);
    out
}

fn strict_rec(remaining: i64, max_part: i64, current: &mut Vec<i64>, out: &mut Vec<StrictPartition>) {
    if remaining == 0 {
        out.push(StrictPartition {
            parts: current.clone(),
        });
        return;
    }
    let mut part = max_part.min(remaining);
    while part >= 1 {
        current.push(part);
        strict_rec(remaining - part, part - 1, current, out);
        current.pop();
        part -= 1;
    }
}

/// Outcome of straightening a composition: `Q_λ = coefficient * Q_partition`
/// with the partition strict, or `coefficient = 0` and no partition.
///
/// The coefficient is always zero or `±2^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightenResult {
    pub coefficient: BigInt,
    pub partition: Option<StrictPartition>,
}

impl StraightenResult {
    pub fn zero() -> Self {
        StraightenResult {
            coefficient: BigInt::zero(),
            partition: None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }
}

/// Rewrite `Q_λ` for an arbitrary composition as `c * Q_tau` with `tau`
/// strict.
///
/// Rules applied repeatedly, scanning left to right:
/// - zero parts are deleted;
/// - adjacent equal nonzero parts annihilate (`Q_λ = -Q_λ`);
/// - adjacent `(p, -p)` with `p > 0` annihilates;
/// - adjacent `(-p, p)` with `p > 0` contracts to `2(-1)^p` times the
///   composition with both parts removed;
/// - an out-of-order adjacent pair with nonzero sum is swapped with sign `-1`.
///
/// If the fully sorted form still contains a negative part, the result is
/// zero (no cancellation partner exists). Each swap strictly reduces the
/// inversion count and each contraction the length, so this terminates.
pub fn straighten(lambda: &Composition) -> StraightenResult {
    let mut v: Vec<i64> = lambda.parts().iter().copied().filter(|&x| x != 0).collect();
    let mut negative = false;
    let mut pow2: u32 = 0;

    let mut i = 0;
    while i + 1 <= v.len() {
        if i + 1 == v.len() {
            break;
        }
        let (a, b) = (v[i], v[i + 1]);
        if a == b {
            return StraightenResult::zero();
        }
        if a + b == 0 {
            if a > 0 {
                // (p, -p): Q vanishes.
                return StraightenResult::zero();
            }
            // (-p, p): contract, picking up 2(-1)^p.
            if b % 2 != 0 {
                negative = !negative;
            }
            pow2 += 1;
            v.drain(i..i + 2);
            i = i.saturating_sub(1);
            continue;
        }
        if a < b {
            v.swap(i, i + 1);
            negative = !negative;
            i = i.saturating_sub(1);
            continue;
        }
        i += 1;
    }

    if v.iter().any(|&x| x < 0) {
        return StraightenResult::zero();
    }

    let mut coefficient = BigInt::one() << pow2;
    if negative {
        coefficient = -coefficient;
    }
    StraightenResult {
        coefficient,
        partition: Some(StrictPartition { parts: v }),
    }
}

/// `"a,b,c"` comma-separated parts; the empty string denotes the empty
/// sequence. This is the text syntax used by the CLI and the JSON payloads.
pub fn parse_parts(text: &str) -> Result<Vec<i64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| Error::BadPartitionSyntax(text.to_string()))
        })
        .collect()
}

/// Inverse of [`parse_parts`].
pub fn format_parts(parts: &[i64]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

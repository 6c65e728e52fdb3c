//! Puiseux characteristics of plane branches and the planarity criterion
//! for numerical semigroups.
//!
//! A plane branch in the normal form `x = t^m, y = Σ a_i t^i` has a
//! Puiseux characteristic `[λ0; λ1, …, λg]` extracted by repeatedly
//! sieving the support of `y`. Its value semigroup is generated by
//! `b0 = λ0`, `b1 = λ1` and `b_i = λ_i - λ_{i-1} + n_{i-1} b_{i-1}`, and
//! a semigroup is the value semigroup of a plane branch exactly when its
//! minimal generators pass [`teissier_planarity`].

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::semigroup::{NumericalSemigroup, SemigroupError};
use crate::series::{ParamCurve, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PuiseuxError {
    #[error("sequence is empty")]
    Empty,
    #[error("sequence must be strictly increasing (position {index})")]
    NotIncreasing { index: usize },
    #[error("not a Puiseux characteristic: {0}")]
    InvalidCharacteristic(CharacteristicDefect),
    #[error("{0:?} is not the minimal generating sequence of a numerical semigroup")]
    NotMinimalGenerators(Vec<u64>),
    #[error("semigroup is not planar: {0}")]
    NotPlanar(PlanarityFailure),
    #[error("support is exhausted with divisor {divisor} > 1; the branch is not well-parameterized")]
    NotWellParameterized { divisor: u64 },
    #[error("support element {exponent} is below the multiplicity {m}")]
    BadNormalForm { m: u64, exponent: u64 },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// Divisor vector `e_i = gcd(b_0, …, b_i)` and factor vector `n_i = e_{i-1} / e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorData {
    pub e: Vec<u64>,
    pub n: Vec<u64>,
}

pub fn divisor_factor_vectors(b: &[u64]) -> Result<DivisorData, PuiseuxError> {
    check_increasing(b)?;
    let mut e = Vec::with_capacity(b.len());
    e.push(b[0]);
    for &v in &b[1..] {
        let last = *e.last().unwrap();
        e.push(last.gcd(&v));
    }
    let n = e.windows(2).map(|w| w[0] / w[1]).collect();
    Ok(DivisorData { e, n })
}

fn check_increasing(b: &[u64]) -> Result<(), PuiseuxError> {
    if b.is_empty() {
        return Err(PuiseuxError::Empty);
    }
    if let Some(i) = b.windows(2).position(|w| w[0] >= w[1]) {
        return Err(PuiseuxError::NotIncreasing { index: i + 1 });
    }
    Ok(())
}

/// Why a sequence is not a Puiseux characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum CharacteristicDefect {
    Empty,
    /// `λ0` must exceed 1 unless the whole sequence is `[1]`.
    LeadingOne,
    NotIncreasing { index: usize },
    /// `e_{index-1} = e_index`.
    DivisorsStall { index: usize },
    /// The last divisor is not 1.
    DoesNotEndInOne { last: u64 },
}

impl fmt::Display for CharacteristicDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacteristicDefect::Empty => write!(f, "empty sequence"),
            CharacteristicDefect::LeadingOne => write!(f, "leading entry 1 in a sequence longer than [1]"),
            CharacteristicDefect::NotIncreasing { index } => {
                write!(f, "not strictly increasing at position {index}")
            }
            CharacteristicDefect::DivisorsStall { index } => {
                write!(f, "divisor vector does not drop at position {index}")
            }
            CharacteristicDefect::DoesNotEndInOne { last } => {
                write!(f, "divisor vector ends in {last}, not 1")
            }
        }
    }
}

pub fn validate_characteristic(lambda: &[u64]) -> Result<(), CharacteristicDefect> {
    match lambda {
        [] => return Err(CharacteristicDefect::Empty),
        [1] => return Ok(()),
        [first, ..] if *first <= 1 => return Err(CharacteristicDefect::LeadingOne),
        _ => {}
    }
    if let Some(i) = lambda.windows(2).position(|w| w[0] >= w[1]) {
        return Err(CharacteristicDefect::NotIncreasing { index: i + 1 });
    }
    let data = divisor_factor_vectors(lambda).expect("checked increasing");
    if let Some(i) = data.n.iter().position(|&n| n == 1) {
        return Err(CharacteristicDefect::DivisorsStall { index: i + 1 });
    }
    let last = *data.e.last().unwrap();
    if last != 1 {
        return Err(CharacteristicDefect::DoesNotEndInOne { last });
    }
    Ok(())
}

/// A validated Puiseux characteristic `[λ0; λ1, …, λg]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PuiseuxCharacteristic(Vec<u64>);

impl PuiseuxCharacteristic {
    pub fn new(lambda: Vec<u64>) -> Result<Self, PuiseuxError> {
        validate_characteristic(&lambda).map_err(PuiseuxError::InvalidCharacteristic)?;
        Ok(PuiseuxCharacteristic(lambda))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// `λ0`, the multiplicity of the branch.
    pub fn multiplicity(&self) -> u64 {
        self.0[0]
    }

    /// Number of characteristic exponents after `λ0`.
    pub fn genus(&self) -> usize {
        self.0.len() - 1
    }

    pub fn divisor_data(&self) -> DivisorData {
        divisor_factor_vectors(&self.0).expect("validated")
    }
}

impl fmt::Display for PuiseuxCharacteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.0[0])?;
        for (i, l) in self.0[1..].iter().enumerate() {
            if i == 0 {
                write!(f, "; {l}")?;
            } else {
                write!(f, ", {l}")?;
            }
        }
        write!(f, "]")
    }
}

/// Minimal generators of the value semigroup of a branch with this characteristic.
pub fn puiseux_to_generators(lambda: &PuiseuxCharacteristic) -> Vec<u64> {
    let l = lambda.as_slice();
    let n = lambda.divisor_data().n;
    let mut b = Vec::with_capacity(l.len());
    for i in 0..l.len() {
        let next = if i < 2 {
            l[i]
        } else {
            l[i] - l[i - 1] + n[i - 2] * b[i - 1]
        };
        assert!(i < 2 || next > l[i], "recursion must strictly exceed the exponent");
        b.push(next);
    }
    b
}

/// Inverse of [`puiseux_to_generators`] on planar semigroups.
pub fn generators_to_puiseux(b: &[u64]) -> Result<PuiseuxCharacteristic, PuiseuxError> {
    if let PlanarityVerdict::NotPlanar(why) = teissier_planarity(b)? {
        return Err(PuiseuxError::NotPlanar(why));
    }
    let n = divisor_factor_vectors(b)?.n;
    let mut lambda: Vec<u64> = Vec::with_capacity(b.len());
    for i in 0..b.len() {
        let next = if i < 2 {
            b[i]
        } else {
            // condition (3) gives n b_{i-1} < b_i, so this stays above λ_{i-1}
            b[i] - n[i - 2] * b[i - 1] + lambda[i - 1]
        };
        lambda.push(next);
    }
    PuiseuxCharacteristic::new(lambda)
}

/// Which planarity condition failed, and where.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "failed")]
pub enum PlanarityFailure {
    /// The divisor vector is not strictly decreasing down to 1.
    #[serde(rename = "condition1")]
    DivisorVector { e: Vec<u64> },
    /// `n_i b_i` is not in `<b_0, …, b_{i-1}>`.
    #[serde(rename = "condition2")]
    NotInPrefix { index: usize, value: u64 },
    /// `n_i b_i >= b_{i+1}`.
    #[serde(rename = "condition3")]
    NotBelowNext { index: usize, value: u64, next: u64 },
}

impl PlanarityFailure {
    pub fn condition(&self) -> u8 {
        match self {
            PlanarityFailure::DivisorVector { .. } => 1,
            PlanarityFailure::NotInPrefix { .. } => 2,
            PlanarityFailure::NotBelowNext { .. } => 3,
        }
    }
}

impl fmt::Display for PlanarityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarityFailure::DivisorVector { e } => {
                write!(f, "condition 1: divisor vector {e:?} is not strictly decreasing to 1")
            }
            PlanarityFailure::NotInPrefix { index, value } => write!(
                f,
                "condition 2: n_{index} b_{index} = {value} is not generated by b_0..b_{}",
                index - 1
            ),
            PlanarityFailure::NotBelowNext { index, value, next } => write!(
                f,
                "condition 3: n_{index} b_{index} = {value} is not below b_{} = {next}",
                index + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanarityVerdict {
    Planar,
    NotPlanar(PlanarityFailure),
}

impl PlanarityVerdict {
    pub fn is_planar(&self) -> bool {
        matches!(self, PlanarityVerdict::Planar)
    }
}

/// Whether `target` is a nonnegative integer combination of `gens`.
/// Works for any generator set, numerical or not.
pub fn in_span(target: u64, gens: &[u64]) -> bool {
    let mut reach = vec![false; target as usize + 1];
    reach[0] = true;
    for v in 1..=target as usize {
        reach[v] = gens
            .iter()
            .any(|&g| g as usize <= v && reach[v - g as usize]);
    }
    reach[target as usize]
}

fn check_minimal(b: &[u64]) -> Result<(), PuiseuxError> {
    check_increasing(b)?;
    let s = NumericalSemigroup::with_cap(b, u64::MAX)?;
    if s.minimal_generators() != b {
        return Err(PuiseuxError::NotMinimalGenerators(b.to_vec()));
    }
    Ok(())
}

/// Condition (2) for every index, as `(index, n_i b_i, holds)`.
fn prefix_conditions(b: &[u64], data: &DivisorData) -> Vec<(usize, u64, bool)> {
    (1..b.len())
        .map(|i| {
            let value = data.n[i - 1] * b[i];
            (i, value, in_span(value, &b[..i]))
        })
        .collect()
}

/// Planarity test on an increasing minimal generating sequence.
pub fn teissier_planarity(b: &[u64]) -> Result<PlanarityVerdict, PuiseuxError> {
    check_minimal(b)?;
    let data = divisor_factor_vectors(b)?;
    let decreasing = data.e.windows(2).all(|w| w[0] > w[1]);
    if !decreasing || *data.e.last().unwrap() != 1 {
        return Ok(PlanarityVerdict::NotPlanar(PlanarityFailure::DivisorVector {
            e: data.e,
        }));
    }
    if let Some(&(index, value, _)) = prefix_conditions(b, &data).iter().find(|c| !c.2) {
        return Ok(PlanarityVerdict::NotPlanar(PlanarityFailure::NotInPrefix {
            index,
            value,
        }));
    }
    let g = b.len() - 1;
    for i in 1..g {
        let value = data.n[i - 1] * b[i];
        if value >= b[i + 1] {
            return Ok(PlanarityVerdict::NotPlanar(PlanarityFailure::NotBelowNext {
                index: i,
                value,
                next: b[i + 1],
            }));
        }
    }
    Ok(PlanarityVerdict::Planar)
}

/// Number of prime factors of `n`, counted with multiplicity.
pub fn big_omega(mut n: u64) -> u32 {
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            n /= p;
            count += 1;
        }
        p += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

/// Necessary condition for planarity: `e(S) <= 1 + Ω(m(S))`.
pub fn planar_e_bound(b: &[u64]) -> bool {
    match b.first() {
        Some(&m) => b.len() as u32 <= 1 + big_omega(m),
        None => false,
    }
}

/// Advisory upper bound on the minimal embedding dimension from the
/// sufficient condition attributed to Teissier. Not independently proven.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TeissierBound {
    pub d: usize,
    /// Indices `i` in `1..g` with `n_i b_i < b_{i+1}`.
    pub satisfied: Vec<usize>,
    pub verified: bool,
}

/// When condition (2) holds everywhere, the least `d` such that condition
/// (3) holds at `g + 1 - d` or more indices. Positions are not constrained.
pub fn teissier_upper_bound(b: &[u64]) -> Result<Option<TeissierBound>, PuiseuxError> {
    check_minimal(b)?;
    let data = divisor_factor_vectors(b)?;
    if prefix_conditions(b, &data).iter().any(|c| !c.2) {
        return Ok(None);
    }
    let g = b.len() - 1;
    let satisfied: Vec<usize> = (1..g).filter(|&i| data.n[i - 1] * b[i] < b[i + 1]).collect();
    let d = (g + 1 - satisfied.len()).max(1);
    Ok(Some(TeissierBound {
        d,
        satisfied,
        verified: false,
    }))
}

/// `A` with all multiples of `m` removed. `m` must be positive.
pub fn m_sieve(m: u64, a: &BTreeSet<u64>) -> BTreeSet<u64> {
    a.iter().copied().filter(|&v| v % m != 0).collect()
}

/// Puiseux characteristic of `x = t^m, y = Σ_{i ∈ A} a_i t^i` (all `a_i ≠ 0`).
pub fn characteristic_from_support(
    m: u64,
    support: &BTreeSet<u64>,
) -> Result<PuiseuxCharacteristic, PuiseuxError> {
    if m == 1 {
        return PuiseuxCharacteristic::new(vec![1]);
    }
    if let Some(&low) = support.iter().find(|&&v| v < m && v != 0) {
        return Err(PuiseuxError::BadNormalForm { m, exponent: low });
    }
    let mut lambda = vec![m];
    let mut divisor = m;
    let mut remaining = m_sieve(m, support);
    while divisor > 1 {
        let Some(&next) = remaining.iter().next() else {
            return Err(PuiseuxError::NotWellParameterized { divisor });
        };
        lambda.push(next);
        divisor = divisor.gcd(&next);
        remaining = m_sieve(divisor, &remaining);
    }
    PuiseuxCharacteristic::new(lambda)
}

/// `x = t^λ0, y = t^λ1 + … + t^λg`.
pub fn canonical_plane_curve(lambda: &PuiseuxCharacteristic) -> ParamCurve {
    let l = lambda.as_slice();
    ParamCurve::new(vec![
        Polynomial::monomial(l[0]),
        Polynomial::sum_of_powers(&l[1..]),
    ])
    .expect("x = t^λ0 is nonzero and vanishes at 0")
}

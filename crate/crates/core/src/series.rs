//! Exact polynomials and truncated power series in one variable `t`, curves
//! parameterized by such polynomials, and multivariate polynomials to pull
//! back along them.
//!
//! All coefficients are [`BigRational`]; nothing here touches floating point.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("a curve needs at least one coordinate")]
    NoCoordinates,
    #[error("coordinate {name} has a nonzero constant term, so the curve does not pass through 0")]
    NonzeroConstantTerm { name: String },
    #[error("every coordinate of the curve is zero")]
    AllZero,
    #[error("coordinate name {0} is used twice")]
    DuplicateCoordinate(String),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Power series in `t` whose coefficients of `t^0 ..= t^trunc` are known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(trunc: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least the t^0 coefficient");
        TruncatedSeries { coeffs }
    }

    /// Highest exponent whose coefficient is meaningful.
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// Least exponent with a nonzero coefficient; `None` when the series
    /// vanishes up to the truncation order (which does not prove it is zero).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(trunc + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.trunc().min(other.trunc());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.trunc().min(other.trunc());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the smaller truncation order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.trunc().min(other.trunc());
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(u64, BigRational)> =
            self.terms().map(|(k, c)| (k as u64, c.clone())).collect();
        write_terms(f, &terms)?;
        write!(f, " + O(t^{})", self.trunc() + 1)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(u64, BigRational)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (k, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else if c.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        let unit = mag.is_one();
        match (unit, *k) {
            (_, 0) => write!(f, "{mag}")?,
            (true, 1) => f.write_str("t")?,
            (true, _) => write!(f, "t^{k}")?,
            (false, 1) => write!(f, "{mag}*t")?,
            (false, _) => write!(f, "{mag}*t^{k}")?,
        }
    }
    Ok(())
}

/// Exact polynomial in `t`, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<u64, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `t^k`.
    pub fn monomial(k: u64) -> Self {
        Self::from_terms([(k, BigRational::one())])
    }

    /// Sum of `t^k` over the given exponents.
    pub fn sum_of_powers(exps: &[u64]) -> Self {
        let mut p = Self::zero();
        for &k in exps {
            p.add_term(k, BigRational::one());
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: u64, c: BigRational) {
        let entry = self.terms.entry(k).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> Option<u64> {
        self.terms.keys().next().copied()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&0).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn to_series(&self, trunc: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(trunc);
        for (&k, c) in self.terms.range(..=trunc as u64) {
            s.coeffs[k as usize] = c.clone();
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        write_terms(f, &terms)
    }
}

/// Default coordinate names for a curve with `d` coordinates.
pub fn default_names(d: usize) -> Vec<String> {
    match d {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=d).map(|i| format!("x{i}")).collect(),
    }
}

/// A germ `t ↦ (x1(t), …, xd(t))` with polynomial coordinates through the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamCurve {
    names: Vec<String>,
    coords: Vec<Polynomial>,
}

impl ParamCurve {
    pub fn new(coords: Vec<Polynomial>) -> Result<Self, CurveError> {
        let names = default_names(coords.len());
        Self::with_names(names, coords)
    }

    pub fn with_names(names: Vec<String>, coords: Vec<Polynomial>) -> Result<Self, CurveError> {
        assert_eq!(names.len(), coords.len(), "one name per coordinate");
        if coords.is_empty() {
            return Err(CurveError::NoCoordinates);
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(CurveError::DuplicateCoordinate(name.clone()));
            }
        }
        for (name, c) in names.iter().zip(&coords) {
            if !c.constant_term().is_zero() {
                return Err(CurveError::NonzeroConstantTerm { name: name.clone() });
            }
        }
        if coords.iter().all(Polynomial::is_zero) {
            return Err(CurveError::AllZero);
        }
        Ok(ParamCurve { names, coords })
    }

    /// The monomial curve `(t^n1, …, t^nd)`.
    pub fn monomial(exps: &[u64]) -> Result<Self, CurveError> {
        Self::new(exps.iter().map(|&k| Polynomial::monomial(k)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Largest exponent appearing in any coordinate.
    pub fn max_degree(&self) -> u64 {
        self.coords.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }
}

impl fmt::Display for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, c)) in self.names.iter().zip(&self.coords).enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{name} = {c}")?;
        }
        Ok(())
    }
}

/// Polynomial in the coordinates of `d`-space, as a map from exponent
/// vectors to coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonomialPolynomial {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MonomialPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · x^alpha`.
    pub fn term(alpha: Vec<u32>, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(alpha, c);
        p
    }

    /// `x^alpha` with coefficient 1.
    pub fn monomial(alpha: Vec<u32>) -> Self {
        Self::term(alpha, BigRational::one())
    }

    /// The `i`-th coordinate function in `d`-space.
    pub fn coordinate(d: usize, i: usize) -> Self {
        let mut alpha = vec![0; d];
        alpha[i] = 1;
        Self::monomial(alpha)
    }

    pub fn constant(d: usize, c: i64) -> Self {
        Self::term(vec![0; d], rat(c))
    }

    // exponent vectors are stored without trailing zeros so equal
    // polynomials have equal keys
    fn add_term(&mut self, mut alpha: Vec<u32>, c: BigRational) {
        while alpha.last() == Some(&0) {
            alpha.pop();
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(a, c)| (a.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (a, v) in &self.terms {
            out.add_term(a.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            for (b, e) in &other.terms {
                let len = a.len().max(b.len());
                let alpha: Vec<u32> = (0..len)
                    .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(alpha, c * e);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(0, 1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Render with the given coordinate names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        MonomialDisplay { poly: self, names }
    }
}

struct MonomialDisplay<'a> {
    poly: &'a MonomialPolynomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        // highest total degree first, then lexicographically larger exponent first
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (alpha, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = alpha
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    let name = self.names.get(j).cloned().unwrap_or_else(|| format!("x{}", j + 1));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Truncated powers `c^0, c^1, …` of one coordinate, computed on demand.
struct PowerCache {
    base: TruncatedSeries,
    powers: Vec<TruncatedSeries>,
}

impl PowerCache {
    fn new(base: TruncatedSeries) -> Self {
        let trunc = base.trunc();
        PowerCache {
            base,
            powers: vec![TruncatedSeries::one(trunc)],
        }
    }

    fn get(&mut self, k: usize) -> &TruncatedSeries {
        while self.powers.len() <= k {
            let next = self.powers.last().unwrap().mul(&self.base);
            self.powers.push(next);
        }
        &self.powers[k]
    }
}

/// `p ∘ c`, truncated at `t^trunc`.
pub fn pullback(p: &MonomialPolynomial, c: &ParamCurve, trunc: usize) -> TruncatedSeries {
    let mut caches: Vec<PowerCache> = c
        .coords()
        .iter()
        .map(|x| PowerCache::new(x.to_series(trunc)))
        .collect();
    let mut out = TruncatedSeries::zero(trunc);
    for (alpha, coeff) in p.terms() {
        assert!(
            alpha.len() <= c.dim(),
            "polynomial uses more variables than the curve has coordinates"
        );
        let mut term = TruncatedSeries::one(trunc);
        for (i, &e) in alpha.iter().enumerate() {
            if e > 0 {
                term = term.mul(caches[i].get(e as usize));
            }
        }
        out = out.add(&term.scale(coeff));
    }
    out
}

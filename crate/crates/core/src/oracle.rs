//! The value semigroup of a parameterized curve.
//!
//! For a curve `c` the semigroup is the set of orders `ord(p ∘ c)` over all
//! polynomials `p`. Below a truncation order `N` it is computed exactly by
//! linear algebra: pull back every monomial `x^α` whose weighted order
//! `Σ αᵢ·ord(xᵢ)` is at most `N`, truncate at `t^N`, and row-reduce over ℚ.
//! The leading columns of the echelon form are exactly the semigroup
//! elements `≤ N`, because dropping monomials of order `> N` from any
//! polynomial cannot change an order that is `≤ N`.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::semigroup::{NumericalSemigroup, SemigroupError};
use crate::series::{pullback, MonomialPolynomial, ParamCurve, Polynomial};

/// Default ceiling on the truncation order.
pub const DEFAULT_TRUNC_MAX: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(
        "the curve is not well-parameterized: every value is divisible by {gcd}; \
         substitute t -> t^(1/{gcd}) to reparameterize"
    )]
    NotWellParameterized { gcd: u64 },
    #[error("value pivots did not stabilize below truncation order {ceiling}")]
    Divergence { ceiling: usize },
    #[error("every coordinate must vanish to positive order")]
    ConstantCoordinate,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// Knobs for [`semigroup_of_curve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest truncation order the adaptive loop may reach.
    pub trunc_max: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            trunc_max: DEFAULT_TRUNC_MAX,
        }
    }
}

type SparseRow = Vec<(usize, BigRational)>;

/// Multiply a sparse truncated row by a polynomial, dropping exponents past `trunc`.
fn mul_row(row: &SparseRow, poly: &Polynomial, trunc: usize) -> SparseRow {
    let mut dense: Vec<BigRational> = Vec::new();
    let Some(&(lo, _)) = row.first() else {
        return Vec::new();
    };
    let shift = lo + poly.order().unwrap_or(0) as usize;
    if shift > trunc {
        return Vec::new();
    }
    dense.resize(trunc + 1 - shift, BigRational::zero());
    for (i, a) in row {
        for (k, b) in poly.terms() {
            let col = i + k as usize;
            if col > trunc {
                break;
            }
            dense[col - shift] += a * b;
        }
    }
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i + shift, c))
        .collect()
}

/// `row - factor * pivot`, both sorted by column.
fn sub_scaled(row: &SparseRow, factor: &BigRational, pivot: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(factor * &pivot[j].1)));
            j += 1;
        } else {
            let c = &row[i].1 - factor * &pivot[j].1;
            if !c.is_zero() {
                out.push((row[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form built one row at a time; pivots are normalized to a
/// leading coefficient of one and indexed by their leading column.
struct Echelon {
    pivots: Vec<Option<SparseRow>>,
}

impl Echelon {
    fn new(trunc: usize) -> Self {
        Echelon {
            pivots: vec![None; trunc + 1],
        }
    }

    fn insert(&mut self, mut row: SparseRow) {
        while let Some((lead, coeff)) = row.first().cloned() {
            match &self.pivots[lead] {
                Some(pivot) => row = sub_scaled(&row, &coeff, pivot),
                None => {
                    let inv = coeff.recip();
                    for (_, c) in row.iter_mut() {
                        *c *= &inv;
                    }
                    self.pivots[lead] = Some(row);
                    return;
                }
            }
        }
    }

    fn pivot_columns(&self) -> BTreeSet<u64> {
        self.pivots
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_some())
            .map(|(i, _)| i as u64)
            .collect()
    }
}

/// Enumerate exponent vectors with weighted order `<= trunc`, feeding the
/// truncated pullback of each monomial into `sink`.
fn for_each_monomial_row(
    coords: &[(&Polynomial, usize)],
    trunc: usize,
    row: SparseRow,
    weight: usize,
    sink: &mut dyn FnMut(SparseRow),
) {
    let Some((&(poly, ord), rest)) = coords.split_first() else {
        sink(row);
        return;
    };
    let mut row = row;
    let mut weight = weight;
    loop {
        for_each_monomial_row(rest, trunc, row.clone(), weight, sink);
        weight += ord;
        if weight > trunc {
            break;
        }
        row = mul_row(&row, poly, trunc);
        if row.is_empty() {
            break;
        }
    }
}

fn check_orders(c: &ParamCurve) -> Result<Vec<(&Polynomial, usize)>, OracleError> {
    let mut coords = Vec::new();
    for x in c.coords() {
        match x.order() {
            None => continue,
            Some(0) => return Err(OracleError::ConstantCoordinate),
            Some(k) => coords.push((x, k as usize)),
        }
    }
    Ok(coords)
}

/// Pivot columns of the full matrix of truncated monomial pullbacks.
///
/// This is the literal row-echelon computation, one pivot per column. It
/// is quadratic in the number of monomials and is kept as an independent
/// cross-check of [`value_pivots`].
pub fn value_pivots_by_matrix(c: &ParamCurve, trunc: usize) -> Result<BTreeSet<u64>, OracleError> {
    let coords = check_orders(c)?;
    let mut echelon = Echelon::new(trunc);
    let one: SparseRow = vec![(0, BigRational::one())];
    for_each_monomial_row(&coords, trunc, one, 0, &mut |row| echelon.insert(row));
    Ok(echelon.pivot_columns())
}

/// Dense truncated series with a cached leading index.
#[derive(Clone)]
struct DenseRow {
    coeffs: Vec<BigRational>,
}

impl DenseRow {
    fn from_sparse(row: &SparseRow, trunc: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); trunc + 1];
        for (i, c) in row {
            coeffs[*i] = c.clone();
        }
        DenseRow { coeffs }
    }

    fn lead(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn mul_poly(&self, poly: &Polynomial) -> Self {
        let trunc = self.coeffs.len() - 1;
        let mut coeffs = vec![BigRational::zero(); trunc + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in poly.terms() {
                let col = i + k as usize;
                if col > trunc {
                    break;
                }
                coeffs[col] += a * b;
            }
        }
        DenseRow { coeffs }
    }

    /// `self -= factor * other`, touching columns from `start` on.
    fn sub_scaled(&mut self, factor: &BigRational, other: &DenseRow, start: usize) {
        for (a, b) in self.coeffs[start..].iter_mut().zip(&other.coeffs[start..]) {
            if !b.is_zero() {
                *a -= factor * b;
            }
        }
    }

    fn normalize(&mut self, lead: usize) {
        let inv = self.coeffs[lead].recip();
        for c in &mut self.coeffs[lead..] {
            *c *= &inv;
        }
    }
}

/// One pivot per residue class of the leading exponent modulo `ord(x)`,
/// together with its multiples by powers of `x`.
struct Chain {
    lead: usize,
    multiples: Vec<DenseRow>,
}

/// Echelon form of the truncated algebra as a module over `ℚ[x]`, where
/// `x` is a coordinate of least order `m`.
///
/// Multiplying by `x` raises orders by exactly `m`, so the module is
/// described by at most `m` pivots with distinct leading residues mod `m`.
/// Orders of a `ℚ[x]`-combination of such pivots never cancel, and the
/// values below the truncation are `lead_r + k m` for each chain `r`.
struct ModuleEchelon<'a> {
    x: &'a Polynomial,
    m: usize,
    chains: Vec<Option<Chain>>,
}

impl<'a> ModuleEchelon<'a> {
    fn new(x: &'a Polynomial, m: usize) -> Self {
        ModuleEchelon {
            x,
            m,
            chains: (0..m).map(|_| None).collect(),
        }
    }

    fn multiple<'c>(chain: &'c mut Chain, x: &Polynomial, k: usize) -> &'c DenseRow {
        while chain.multiples.len() <= k {
            let next = chain.multiples.last().unwrap().mul_poly(x);
            chain.multiples.push(next);
        }
        &chain.multiples[k]
    }

    fn insert(&mut self, row: DenseRow) {
        let mut pending = vec![row];
        while let Some(mut row) = pending.pop() {
            while let Some(lead) = row.lead() {
                let r = lead % self.m;
                match &mut self.chains[r] {
                    Some(chain) if chain.lead <= lead => {
                        let k = (lead - chain.lead) / self.m;
                        let pivot = Self::multiple(chain, self.x, k);
                        let factor = &row.coeffs[lead] / &pivot.coeffs[lead];
                        row.sub_scaled(&factor, pivot, lead);
                    }
                    slot => {
                        row.normalize(lead);
                        let displaced = slot.replace(Chain {
                            lead,
                            multiples: vec![row],
                        });
                        if let Some(old) = displaced {
                            pending.push(old.multiples.into_iter().next().unwrap());
                        }
                        break;
                    }
                }
            }
        }
    }

    fn values(&self, trunc: usize) -> BTreeSet<u64> {
        self.chains
            .iter()
            .flatten()
            .flat_map(|chain| (chain.lead..=trunc).step_by(self.m).map(|v| v as u64))
            .collect()
    }
}

/// The semigroup elements `<= trunc` realized as orders of polynomial pullbacks.
///
/// Generators of the truncated algebra as a `ℚ[x]`-module are `1` and the
/// monomials in the remaining coordinates of weighted order `<= trunc`;
/// they are reduced into a [`ModuleEchelon`].
pub fn value_pivots(c: &ParamCurve, trunc: usize) -> Result<BTreeSet<u64>, OracleError> {
    let coords = check_orders(c)?;
    let Some(pos) = coords
        .iter()
        .enumerate()
        .min_by_key(|(_, (_, ord))| *ord)
        .map(|(i, _)| i)
    else {
        // every coordinate vanishes identically; only constants remain
        return Ok(BTreeSet::from([0]));
    };
    let (x, m) = coords[pos];
    let rest: Vec<_> = coords
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pos)
        .map(|(_, c)| *c)
        .collect();

    let mut echelon = ModuleEchelon::new(x, m);
    let one: SparseRow = vec![(0, BigRational::one())];
    for_each_monomial_row(&rest, trunc, one, 0, &mut |row| {
        echelon.insert(DenseRow::from_sparse(&row, trunc))
    });
    Ok(echelon.values(trunc))
}

fn gcd_of(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(0, |g, v| g.gcd(&v))
}

/// Value semigroup of a polynomial curve, found by doubling the
/// truncation order until the pivots are closed under addition up to
/// twice the conductor of the semigroup they generate.
pub fn semigroup_of_curve(
    c: &ParamCurve,
    config: &OracleConfig,
) -> Result<NumericalSemigroup, OracleError> {
    check_orders(c)?;
    // Every pullback only involves exponents from the additive span of the
    // supports, so a common divisor there is a proof of bad parameterization.
    let support_gcd = gcd_of(c.coords().iter().flat_map(|x| x.support()));
    if support_gcd > 1 {
        return Err(OracleError::NotWellParameterized { gcd: support_gcd });
    }

    let ceiling = config.trunc_max.max(1);
    let mut trunc = ((4 * c.max_degree()) as usize).clamp(1, ceiling);
    loop {
        let pivots = value_pivots(c, trunc)?;
        let gcd = gcd_of(pivots.iter().copied());
        if gcd == 1 {
            let gens: Vec<u64> = pivots.iter().copied().filter(|&v| v > 0).collect();
            let candidate = NumericalSemigroup::with_cap(&gens, u64::MAX)?;
            let closed = (0..=trunc as u64)
                .all(|v| candidate.contains(v as i64) == pivots.contains(&v));
            if closed && trunc as u64 >= 2 * candidate.conductor() {
                return Ok(candidate);
            }
        } else if 2 * trunc >= ceiling {
            return Err(OracleError::NotWellParameterized { gcd });
        }
        if trunc >= ceiling {
            return Err(OracleError::Divergence { ceiling });
        }
        trunc = (2 * trunc).min(ceiling);
    }
}

/// Checks that `certificate` pulls back to order exactly `target` and that
/// the curve's value semigroup is `s`.
pub fn verify_witness(
    s: &NumericalSemigroup,
    curve: &ParamCurve,
    certificate: &MonomialPolynomial,
    target: u64,
    config: &OracleConfig,
) -> Result<bool, OracleError> {
    let f = pullback(certificate, curve, target as usize + 1);
    if f.order() != Some(target as usize) {
        return Ok(false);
    }
    Ok(semigroup_of_curve(curve, config)? == *s)
}

//! Multiplicity-4 semigroups as lattice points of the Kunz cone.
//!
//! A semigroup of multiplicity 4 is determined by its Apéry set
//! `{0, x1, x2, x3}` with `xi ≡ i (mod 4)`. The points that arise are
//! exactly the lattice points of the cone
//!
//! ```text
//! x1 + x2 >= x3,   x3 + x2 >= x1,   2 x1 >= x2,   2 x3 >= x2
//! ```
//!
//! and the face containing a point in its relative interior gives the
//! embedding dimension: 4 in the interior, 3 on a facet, 2 on a ray.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::semigroup::{NumericalSemigroup, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KunzError {
    #[error("expected multiplicity 4, found {0}")]
    WrongMultiplicity(u64),
    #[error("x{index} = {value} is not an Apéry coordinate (need > 4 and ≡ {index} mod 4)")]
    BadCoordinate { index: usize, value: u64 },
    #[error("point {0} lies outside the Kunz cone")]
    OutsideCone(KunzPoint),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// An Apéry point `(x1, x2, x3)` for multiplicity 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KunzPoint {
    x: [u64; 3],
}

impl KunzPoint {
    pub fn new(x1: u64, x2: u64, x3: u64) -> Result<Self, KunzError> {
        for (i, &v) in [x1, x2, x3].iter().enumerate() {
            let index = i + 1;
            if v <= 4 || v % 4 != index as u64 {
                return Err(KunzError::BadCoordinate { index, value: v });
            }
        }
        Ok(KunzPoint { x: [x1, x2, x3] })
    }

    pub fn x1(&self) -> u64 {
        self.x[0]
    }

    pub fn x2(&self) -> u64 {
        self.x[1]
    }

    pub fn x3(&self) -> u64 {
        self.x[2]
    }

    pub fn coords(&self) -> [u64; 3] {
        self.x
    }

    /// Mirror image under `x1 ↔ x3`. The swapped coordinates break the
    /// residue conditions, so they come back as a raw triple.
    pub fn reflected_coords(&self) -> [u64; 3] {
        [self.x[2], self.x[1], self.x[0]]
    }
}

impl fmt::Display for KunzPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x[0], self.x[1], self.x[2])
    }
}

/// One of the four inequalities cutting out the cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KunzInequality {
    /// `x1 + x2 >= x3`
    SumTwelve,
    /// `x3 + x2 >= x1`
    SumThirtyTwo,
    /// `2 x1 >= x2`
    DoubleOne,
    /// `2 x3 >= x2`
    DoubleThree,
}

impl KunzInequality {
    pub const ALL: [KunzInequality; 4] = [
        KunzInequality::SumTwelve,
        KunzInequality::SumThirtyTwo,
        KunzInequality::DoubleOne,
        KunzInequality::DoubleThree,
    ];

    /// Inward normal: the inequality reads `normal · x >= 0`.
    pub fn normal(self) -> [i64; 3] {
        match self {
            KunzInequality::SumTwelve => [1, 1, -1],
            KunzInequality::SumThirtyTwo => [-1, 1, 1],
            KunzInequality::DoubleOne => [2, -1, 0],
            KunzInequality::DoubleThree => [0, -1, 2],
        }
    }

    /// Slack `normal · x`; negative means violated, zero means binding.
    pub fn slack(self, x: [u64; 3]) -> i64 {
        let n = self.normal();
        (0..3).map(|i| n[i] * x[i] as i64).sum()
    }

    /// Equality form of the constraint, as used in reports.
    pub fn label(self) -> &'static str {
        match self {
            KunzInequality::SumTwelve => "x1+x2=x3",
            KunzInequality::SumThirtyTwo => "x2+x3=x1",
            KunzInequality::DoubleOne => "2x1=x2",
            KunzInequality::DoubleThree => "2x3=x2",
        }
    }
}

impl fmt::Display for KunzInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Position of a point relative to the cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaceClass {
    Interior,
    Facet(Vec<KunzInequality>),
    Ray(Vec<KunzInequality>),
    Outside(Vec<KunzInequality>),
}

impl FaceClass {
    pub fn name(&self) -> &'static str {
        match self {
            FaceClass::Interior => "interior",
            FaceClass::Facet(_) => "facet",
            FaceClass::Ray(_) => "ray",
            FaceClass::Outside(_) => "outside",
        }
    }

    /// Binding constraints for `Facet`/`Ray`, violated ones for `Outside`.
    pub fn constraints(&self) -> &[KunzInequality] {
        match self {
            FaceClass::Interior => &[],
            FaceClass::Facet(c) | FaceClass::Ray(c) | FaceClass::Outside(c) => c,
        }
    }

    pub fn is_inside(&self) -> bool {
        !matches!(self, FaceClass::Outside(_))
    }
}

/// Rank over ℚ of a set of integer row vectors.
fn rational_rank(rows: &[[i64; 3]]) -> usize {
    let mut m: Vec<Vec<Ratio<i64>>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| Ratio::from_integer(v)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != Ratio::from_integer(0)) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][col] != Ratio::from_integer(0) {
                let factor = m[r][col] / m[rank][col];
                for c in 0..3 {
                    let sub = factor * m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn classify_face(p: &KunzPoint) -> FaceClass {
    classify_coords(p.coords())
}

/// Classification of raw coordinates, without the congruence conditions.
pub fn classify_coords(x: [u64; 3]) -> FaceClass {
    let violated: Vec<_> = KunzInequality::ALL
        .into_iter()
        .filter(|c| c.slack(x) < 0)
        .collect();
    if !violated.is_empty() {
        return FaceClass::Outside(violated);
    }
    let binding: Vec<_> = KunzInequality::ALL
        .into_iter()
        .filter(|c| c.slack(x) == 0)
        .collect();
    if binding.is_empty() {
        return FaceClass::Interior;
    }
    let normals: Vec<_> = binding.iter().map(|c| c.normal()).collect();
    if rational_rank(&normals) >= 2 {
        FaceClass::Ray(binding)
    } else {
        FaceClass::Facet(binding)
    }
}

/// The Apéry point of a multiplicity-4 semigroup.
pub fn kunz_point_of(s: &NumericalSemigroup) -> Result<KunzPoint, KunzError> {
    if s.multiplicity() != 4 {
        return Err(KunzError::WrongMultiplicity(s.multiplicity()));
    }
    let w = s.apery_set(4)?;
    KunzPoint::new(w[1], w[2], w[3])
}

/// `<4, x1, x2, x3>`.
///
/// Always numerical since `x1` is odd; fails only when the membership
/// table would exceed its size limit.
pub fn semigroup_of_point(p: &KunzPoint) -> Result<NumericalSemigroup, KunzError> {
    Ok(NumericalSemigroup::with_cap(
        &[4, p.x1(), p.x2(), p.x3()],
        u64::MAX,
    )?)
}

/// Embedding dimension read off the face: interior 4, facet 3, ray 2.
pub fn embedding_dim_from_face(p: &KunzPoint) -> Result<usize, KunzError> {
    match classify_face(p) {
        FaceClass::Interior => Ok(4),
        FaceClass::Facet(_) => Ok(3),
        FaceClass::Ray(_) => Ok(2),
        FaceClass::Outside(_) => Err(KunzError::OutsideCone(*p)),
    }
}

fn axis_values(residue: u64, bound: u64) -> impl Iterator<Item = u64> + Clone {
    (residue + 4..=bound).step_by(4)
}

/// All in-cone Apéry points with every coordinate `<= bound`, in
/// lexicographic order.
pub fn enumerate_points(bound: u64) -> Vec<(KunzPoint, FaceClass)> {
    let x1s: Vec<u64> = axis_values(1, bound).collect();
    x1s.par_iter()
        .map(|&x1| {
            let mut chunk = Vec::new();
            for x2 in axis_values(2, bound) {
                for x3 in axis_values(3, bound) {
                    let p = KunzPoint { x: [x1, x2, x3] };
                    let face = classify_face(&p);
                    if face.is_inside() {
                        chunk.push((p, face));
                    }
                }
            }
            chunk
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// `num/den · √radicand`, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ScaledSurd {
    pub numerator: i64,
    pub denominator: i64,
    pub radicand: u32,
}

impl ScaledSurd {
    fn new(numerator: i64, denominator: i64, radicand: u32) -> Self {
        let r = Ratio::new(numerator, denominator);
        ScaledSurd {
            numerator: *r.numer(),
            denominator: *r.denom(),
            radicand,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.numerator as f64 / self.denominator as f64 * (self.radicand as f64).sqrt()
    }

    pub fn is_zero(self) -> bool {
        self.numerator == 0
    }

    pub fn signum(self) -> i64 {
        self.numerator.signum()
    }
}

impl fmt::Display for ScaledSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numerator == 0 {
            return f.write_str("0");
        }
        if self.denominator == 1 {
            write!(f, "{}*sqrt({})", self.numerator, self.radicand)
        } else {
            write!(f, "{}/{}*sqrt({})", self.numerator, self.denominator, self.radicand)
        }
    }
}

/// Coordinates of a point scaled onto the plane `x1 + x2 + x3 = 1`, in the
/// orthonormal basis `((1,0,-1)/√2, (-1,2,-1)/√6)` of that plane.
///
/// The barycenter maps to the origin, `u < 0` exactly when `x3 > x1`, and
/// `v` grows with `x2`.
pub fn kite_projection(x: [u64; 3]) -> (ScaledSurd, ScaledSurd) {
    let [x1, x2, x3] = x.map(|v| v as i64);
    let sum = x1 + x2 + x3;
    // (x1 - x3) / (sum √2) = (x1 - x3) / (2 sum) · √2
    let u = ScaledSurd::new(x1 - x3, 2 * sum, 2);
    // (2x2 - x1 - x3) / (sum √6) = (2x2 - x1 - x3) / (6 sum) · √6
    let v = ScaledSurd::new(2 * x2 - x1 - x3, 6 * sum, 6);
    (u, v)
}

/// Corners of the slice of the cone by `x1 + x2 + x3 = 1`, in the order
/// bottom, right, top, left, as integer representatives of each ray.
pub const KITE_VERTICES: [[u64; 3]; 4] = [[1, 0, 1], [3, 2, 1], [1, 2, 1], [1, 2, 3]];

/// Per-point record exchanged with the SVG and JSON emitters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub x: [u64; 3],
    pub face: &'static str,
    pub binding: Vec<&'static str>,
    pub e: usize,
    pub me: usize,
}

//! Minimal embedding dimension `me(S)`: the least `d` such that `S` is
//! the value semigroup of a curve germ in `d`-space.
//!
//! The answer is exact for `m(S) <= 4`. Multiplicity 4 with four minimal
//! generators is settled by [`theorem1_test`], and every positive answer
//! there carries a witness curve checked by the valuation oracle. For
//! larger multiplicities only bounds are reported.

use serde::Serialize;
use thiserror::Error;

use crate::kunz::{self, FaceClass, KunzError, KunzPoint, PointRecord};
use crate::oracle::{verify_witness, OracleConfig, OracleError};
use crate::puiseux::{teissier_planarity, teissier_upper_bound, PuiseuxError};
use crate::semigroup::NumericalSemigroup;
use crate::series::{MonomialPolynomial, ParamCurve, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HonestError {
    #[error("point {0} is not in the interior of the Kunz cone")]
    NotInterior(KunzPoint),
    #[error("no witness: {0}")]
    PreconditionFailed(String),
    #[error("witness for {0} did not verify")]
    WitnessVerificationFailed(String),
    #[error("{0} is not of the form <4, 6, n2, n3> with four minimal generators")]
    WrongFamily(String),
    #[error(transparent)]
    Kunz(#[from] KunzError),
    #[error(transparent)]
    Puiseux(#[from] PuiseuxError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MeMethod {
    /// `S = ℕ`.
    Smooth,
    /// The semigroup passed the planarity test.
    PlanarTest,
    /// Multiplicity 4, four generators.
    Theorem1,
    /// Multiplicity 4, three generators, not planar.
    FaceClass,
    /// Upper bound from the advisory Teissier condition.
    TeissierBound,
    /// Upper bound `e(S)` only.
    EChain,
}

/// A 3-coordinate curve realizing `S` and the polynomial whose pullback
/// has order equal to the largest Apéry value.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub curve: ParamCurve,
    pub certificate: MonomialPolynomial,
    pub order: u64,
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("Witness", 3)?;
        st.serialize_field("curve", &self.curve.to_string())?;
        st.serialize_field(
            "certificate",
            &self.certificate.display_with(self.curve.names()).to_string(),
        )?;
        st.serialize_field("order", &self.order)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeVerdict {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub method: MeMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl MeVerdict {
    fn exact(me: usize, method: MeMethod) -> Self {
        MeVerdict {
            lower: me,
            upper: me,
            exact: true,
            method,
            witness: None,
        }
    }

    /// The value when exact.
    pub fn me(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

/// Whether an interior point has `me = 3` (otherwise `me = 4`).
pub fn theorem1_test(p: &KunzPoint) -> Result<bool, HonestError> {
    if kunz::classify_face(p) != FaceClass::Interior {
        return Err(HonestError::NotInterior(*p));
    }
    Ok(theorem1_condition(p.coords()))
}

fn theorem1_condition([x1, x2, x3]: [u64; 3]) -> bool {
    let max = x1.max(x2).max(x3);
    let min = x1.min(x2).min(x3);
    max != x2 && max > 2 * min
}

/// Which of the six strict orderings of `(x1, x2, x3)` holds, numbered
/// `x1<x2<x3`, `x2<x1<x3`, `x1<x3<x2`, `x3<x1<x2`, `x2<x3<x1`, `x3<x2<x1`.
pub fn ordering_case(p: &KunzPoint) -> u8 {
    let [x1, x2, x3] = p.coords();
    match (x1 < x2, x1 < x3, x2 < x3) {
        (true, true, true) => 1,
        (false, true, true) => 2,
        (true, true, false) => 3,
        (true, false, false) => 4,
        (false, false, true) => 5,
        (false, false, false) => 6,
        // x1 < x2 < x3 forces x1 < x3, and so on
        (true, false, true) | (false, true, false) => unreachable!("pairwise distinct"),
    }
}

fn sorted(p: &KunzPoint) -> [u64; 3] {
    let mut n = p.coords();
    n.sort_unstable();
    n
}

/// Builds and verifies a witness curve for an `me = 3` semigroup of multiplicity 4.
pub fn witness_curve(s: &NumericalSemigroup, config: &OracleConfig) -> Result<Witness, HonestError> {
    if s.multiplicity() != 4 || s.embedding_dimension() != 4 {
        return Err(HonestError::PreconditionFailed(format!(
            "{s} does not have multiplicity 4 and four minimal generators"
        )));
    }
    let p = kunz::kunz_point_of(s)?;
    let [n1, n2, n3] = sorted(&p);
    if n3 < 2 * n1 {
        return Err(HonestError::PreconditionFailed(format!(
            "{s}: largest Apéry value {n3} is below twice the smallest, {}",
            2 * n1
        )));
    }
    if !theorem1_test(&p)? {
        return Err(HonestError::PreconditionFailed(format!(
            "{s}: the largest Apéry value is x2"
        )));
    }
    let step = n3 - 2 * n1;
    let curve = ParamCurve::new(vec![
        Polynomial::monomial(4),
        Polynomial::sum_of_powers(&[n1, n1 + step]),
        Polynomial::monomial(n2),
    ])
    .expect("monomial coordinates");
    let x = MonomialPolynomial::coordinate(3, 0);
    let y = MonomialPolynomial::coordinate(3, 1);
    let z = MonomialPolynomial::coordinate(3, 2);
    let subtrahend = if (2 * n1) % 4 == 0 {
        x.pow((2 * n1 / 4) as u32)
    } else {
        let k = (2 * n1 - n2) / 4;
        x.pow(k as u32).mul(&z)
    };
    let certificate = y.pow(2).sub(&subtrahend);
    if !verify_witness(s, &curve, &certificate, n3, config)? {
        return Err(HonestError::WitnessVerificationFailed(s.to_string()));
    }
    Ok(Witness {
        curve,
        certificate,
        order: n3,
    })
}

#[derive(Debug, Clone, Default)]
pub struct MeOptions {
    /// Skip building witness curves; the verdict is unchanged.
    pub skip_witness: bool,
    pub oracle: OracleConfig,
}

pub fn minimal_embedding_dimension(s: &NumericalSemigroup) -> Result<MeVerdict, HonestError> {
    minimal_embedding_dimension_with(s, &MeOptions::default())
}

pub fn minimal_embedding_dimension_with(
    s: &NumericalSemigroup,
    options: &MeOptions,
) -> Result<MeVerdict, HonestError> {
    if s.is_naturals() {
        return Ok(MeVerdict::exact(1, MeMethod::Smooth));
    }
    let b = s.minimal_generators();
    let e = b.len();
    if teissier_planarity(b)?.is_planar() {
        return Ok(MeVerdict::exact(2, MeMethod::PlanarTest));
    }
    let m = s.multiplicity();
    match (m, e) {
        (4, 4) => {
            let p = kunz::kunz_point_of(s)?;
            if theorem1_test(&p)? {
                let witness = if options.skip_witness {
                    None
                } else {
                    Some(witness_curve(s, &options.oracle)?)
                };
                Ok(MeVerdict {
                    witness,
                    ..MeVerdict::exact(3, MeMethod::Theorem1)
                })
            } else {
                Ok(MeVerdict::exact(4, MeMethod::Theorem1))
            }
        }
        (4, 3) => Ok(MeVerdict::exact(3, MeMethod::FaceClass)),
        (_, 3) => Ok(MeVerdict::exact(3, MeMethod::EChain)),
        _ => {
            let (upper, method) = match teissier_upper_bound(b)? {
                Some(bound) if bound.d < e => (bound.d.max(3), MeMethod::TeissierBound),
                _ => (e, MeMethod::EChain),
            };
            Ok(MeVerdict {
                lower: 3,
                upper,
                exact: false,
                method,
                witness: None,
            })
        }
    }
}

/// For `S = <4, 6, n2, n3>`: whether `me(S) = 3` implies `n3 = n2 + 2`.
pub fn four_six_family_check(s: &NumericalSemigroup) -> Result<bool, HonestError> {
    let [4, 6, n2, n3] = *s.minimal_generators() else {
        return Err(HonestError::WrongFamily(s.to_string()));
    };
    let me3 = theorem1_test(&kunz::kunz_point_of(s)?)?;
    Ok(!me3 || n3 == n2 + 2)
}

/// JSON record for an enumerated in-cone point.
pub fn point_record(p: &KunzPoint, face: &FaceClass) -> Result<PointRecord, HonestError> {
    let s = kunz::semigroup_of_point(p)?;
    let verdict = minimal_embedding_dimension_with(
        &s,
        &MeOptions {
            skip_witness: true,
            ..MeOptions::default()
        },
    )?;
    Ok(PointRecord {
        x: p.coords(),
        face: face.name(),
        binding: face.constraints().iter().map(|c| c.label()).collect(),
        e: s.embedding_dimension(),
        me: verdict.lower,
    })
}

//! Numerical semigroups given by generators.
//!
//! A [`NumericalSemigroup`] stores its membership table up to the conductor;
//! everything at or past the conductor is a member. All the standard
//! invariants (minimal generators, Apéry sets, Frobenius number, gaps,
//! genus, symmetry) are read off that table.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

/// Default cap on a single generator value.
pub const DEFAULT_MAX_GENERATOR: u64 = 1_000_000;

/// Hard cap on the length of the dense membership table.
pub const MAX_TABLE_LEN: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("the generator list is empty")]
    EmptyGenerators,
    #[error("generators must be positive, found {0}")]
    ZeroGenerator(u64),
    #[error("generators have gcd {gcd} > 1, so the complement is infinite")]
    NotNumerical { gcd: u64 },
    #[error("generator {value} exceeds the cap {cap}")]
    GeneratorTooLarge { value: u64, cap: u64 },
    #[error("conductor exceeds the membership table limit {limit}")]
    ConductorTooLarge { limit: u64 },
    #[error("{m} is not an element of the semigroup")]
    MNotInSemigroup { m: u64 },
}

/// A numerical semigroup: a submonoid of ℕ with finite complement.
///
/// Equality compares the underlying sets, not the supplied generators.
#[derive(Clone)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    minimal_generators: Vec<u64>,
    conductor: u64,
    // membership[n] for n in 0..=conductor
    membership: Vec<bool>,
}

impl NumericalSemigroup {
    /// The semigroup of all finite sums of `gens`, with the default generator cap.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        Self::with_cap(gens, DEFAULT_MAX_GENERATOR)
    }

    /// Like [`from_generators`](Self::from_generators) with an explicit cap on generator size.
    pub fn with_cap(gens: &[u64], cap: u64) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        if generators[0] == 0 {
            return Err(SemigroupError::ZeroGenerator(0));
        }
        if let Some(&big) = generators.iter().find(|&&g| g > cap) {
            return Err(SemigroupError::GeneratorTooLarge { value: big, cap });
        }
        let gcd = generators.iter().fold(0u64, |acc, &g| acc.gcd(&g));
        if gcd != 1 {
            return Err(SemigroupError::NotNumerical { gcd });
        }

        let m = generators[0];
        // Forward DP; the conductor is reached once m consecutive members appear.
        let mut table: Vec<bool> = vec![true];
        let mut run: u64 = 1;
        let mut last_gap: Option<u64> = None;
        let mut n: u64 = 0;
        while run < m {
            n += 1;
            if n > MAX_TABLE_LEN {
                return Err(SemigroupError::ConductorTooLarge { limit: MAX_TABLE_LEN });
            }
            let member = generators
                .iter()
                .take_while(|&&g| g <= n)
                .any(|&g| table[(n - g) as usize]);
            table.push(member);
            if member {
                run += 1;
            } else {
                run = 0;
                last_gap = Some(n);
            }
        }
        let conductor = last_gap.map_or(0, |f| f + 1);
        table.truncate(conductor as usize + 1);

        let mut semigroup = NumericalSemigroup {
            generators,
            minimal_generators: Vec::new(),
            conductor,
            membership: table,
        };
        semigroup.minimal_generators = semigroup.compute_minimal_generators();
        Ok(semigroup)
    }

    /// ℕ itself.
    pub fn naturals() -> Self {
        NumericalSemigroup {
            generators: vec![1],
            minimal_generators: vec![1],
            conductor: 0,
            membership: vec![true],
        }
    }

    fn compute_minimal_generators(&self) -> Vec<u64> {
        let m = self.generators[0];
        self.generators
            .iter()
            .copied()
            .filter(|&g| {
                // any g >= conductor + m has g - m >= conductor, so g - m + m decomposes
                if g >= self.conductor + m && g != m {
                    return false;
                }
                !(1..=g / 2).any(|a| self.contains(a as i64) && self.contains((g - a) as i64))
            })
            .collect()
    }

    /// The generating set exactly as supplied (sorted, deduplicated).
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// The unique minimal generating set.
    pub fn minimal_generators(&self) -> &[u64] {
        &self.minimal_generators
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Least nonzero element.
    pub fn multiplicity(&self) -> u64 {
        self.minimal_generators[0]
    }

    /// Number of minimal generators.
    pub fn embedding_dimension(&self) -> usize {
        self.minimal_generators.len()
    }

    pub fn is_naturals(&self) -> bool {
        self.conductor == 0
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n = n as u64;
        n >= self.conductor || self.membership[n as usize]
    }

    /// Frobenius number and conductor. For ℕ the Frobenius number is −1.
    pub fn frobenius_and_conductor(&self) -> (i64, u64) {
        (self.conductor as i64 - 1, self.conductor)
    }

    pub fn frobenius(&self) -> i64 {
        self.conductor as i64 - 1
    }

    /// Apéry set with respect to `m`: entry `r` is the least element congruent to `r` mod `m`.
    pub fn apery_set(&self, m: u64) -> Result<Vec<u64>, SemigroupError> {
        if m == 0 || !self.contains(m as i64) {
            return Err(SemigroupError::MNotInSemigroup { m });
        }
        let mut apery = vec![None; m as usize];
        let mut found = 0;
        let mut n = 0u64;
        while found < m {
            if self.contains(n as i64) {
                let slot = &mut apery[(n % m) as usize];
                if slot.is_none() {
                    *slot = Some(n);
                    found += 1;
                }
            }
            n += 1;
        }
        Ok(apery.into_iter().map(|w| w.unwrap()).collect())
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor)
            .filter(|&n| !self.membership[n as usize])
            .collect()
    }

    pub fn genus(&self) -> usize {
        self.membership.iter().filter(|&&b| !b).count()
    }

    /// Symmetric semigroups: exactly half of `[0, conductor)` are gaps.
    pub fn is_self_dual(&self) -> bool {
        2 * self.genus() as u64 == self.conductor
    }

    /// Members in `[0, limit]`.
    pub fn elements_up_to(&self, limit: u64) -> Vec<u64> {
        (0..=limit).filter(|&n| self.contains(n as i64)).collect()
    }
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.membership == other.membership
    }
}

impl Eq for NumericalSemigroup {}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumericalSemigroup{self}")
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.minimal_generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    #[test]
    fn naturals() {
        let s = sg(&[1]);
        assert_eq!(s.conductor(), 0);
        assert_eq!(s.minimal_generators(), &[1]);
        assert_eq!(s.frobenius_and_conductor(), (-1, 0));
        assert!(s.gaps().is_empty());
        assert_eq!(s.genus(), 0);
        assert_eq!(s.apery_set(1).unwrap(), vec![0]);
        assert_eq!(s, NumericalSemigroup::naturals());
    }

    #[test]
    fn four_six_thirteen() {
        let s = sg(&[4, 6, 13]);
        assert_eq!(s.conductor(), 16);
        assert_eq!(s.frobenius(), 15);
        assert_eq!(s.gaps(), vec![1, 2, 3, 5, 7, 9, 11, 15]);
        assert_eq!(s.genus(), 8);
        assert!(!s.contains(15));
        assert!(s.contains(17));
        assert!(s.contains(0));
        assert!(!s.contains(-3));
        assert_eq!(s.apery_set(4).unwrap(), vec![0, 13, 6, 19]);
        assert!(s.is_self_dual());
    }

    #[test]
    fn gcd_obstruction() {
        assert_eq!(
            NumericalSemigroup::from_generators(&[4, 6]),
            Err(SemigroupError::NotNumerical { gcd: 2 })
        );
        assert_eq!(
            NumericalSemigroup::from_generators(&[]),
            Err(SemigroupError::EmptyGenerators)
        );
        assert!(matches!(
            NumericalSemigroup::from_generators(&[0, 3]),
            Err(SemigroupError::ZeroGenerator(_))
        ));
        assert!(matches!(
            NumericalSemigroup::with_cap(&[3, 5], 4),
            Err(SemigroupError::GeneratorTooLarge { value: 5, cap: 4 })
        ));
    }

    #[test]
    fn minimizes_input() {
        assert_eq!(sg(&[4, 6, 13, 17]).minimal_generators(), &[4, 6, 13]);
        assert_eq!(sg(&[4, 6, 13, 17]).generators(), &[4, 6, 13, 17]);
        assert_eq!(sg(&[4, 5, 10, 11]).minimal_generators(), &[4, 5, 11]);
        assert_eq!(sg(&[2, 3]).minimal_generators(), &[2, 3]);
        assert_eq!(sg(&[3, 1000]).minimal_generators(), &[3, 1000]);
        assert_eq!(sg(&[2, 3, 1000]).minimal_generators(), &[2, 3]);
    }

    #[test]
    fn apery_and_conductor() {
        assert_eq!(sg(&[2, 5]).apery_set(2).unwrap(), vec![0, 5]);
        assert_eq!(sg(&[2, 5]).frobenius_and_conductor(), (3, 4));
        assert_eq!(sg(&[9, 21, 22]).frobenius_and_conductor(), (77, 78));
        assert_eq!(
            sg(&[2, 5]).apery_set(3),
            Err(SemigroupError::MNotInSemigroup { m: 3 })
        );
        // any element works, not just the multiplicity
        assert_eq!(sg(&[2, 5]).apery_set(5).unwrap(), vec![0, 6, 2, 8, 4]);
    }

    #[test]
    fn self_duality() {
        let t = sg(&[9, 21, 22]);
        assert_eq!(t.genus(), 39);
        assert!(t.is_self_dual());
        let s = sg(&[3, 4, 5]);
        assert_eq!(s.gaps(), vec![1, 2]);
        assert_eq!(s.conductor(), 3);
        assert!(!s.is_self_dual());
    }

    #[test]
    fn display() {
        assert_eq!(sg(&[13, 4, 6, 17]).to_string(), "<4, 6, 13>");
    }
}

//! Colength of Artinian monomial ideals in two variables by staircase
//! counting. This is the independent ground truth for codimension-2
//! multiplicities: the witness ideal of a degree matrix is monomial, and its
//! colength equals the multiplicity.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("a monomial ideal needs at least one generator")]
    NoGenerators,
    #[error("ideal is not Artinian: it contains no pure power of {0}")]
    NotArtinian(&'static str),
}

/// Minimal generators `x^p y^q` of a monomial ideal in `K[x, y]`, sorted with
/// `p` strictly increasing and `q` strictly decreasing. The first generator
/// is a pure power of `y` and the last a pure power of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<[u64; 2]>", into = "Vec<[u64; 2]>")]
pub struct MonomialStaircase {
    gens: Vec<(u64, u64)>,
}

impl TryFrom<Vec<[u64; 2]>> for MonomialStaircase {
    type Error = OracleError;

    fn try_from(raw: Vec<[u64; 2]>) -> Result<Self, Self::Error> {
        Self::minimalize(raw.into_iter().map(|[p, q]| (p, q)))
    }
}

impl From<MonomialStaircase> for Vec<[u64; 2]> {
    fn from(s: MonomialStaircase) -> Self {
        s.gens.into_iter().map(|(p, q)| [p, q]).collect()
    }
}

impl MonomialStaircase {
    /// Drops generators divisible by another generator and sorts the rest.
    pub fn minimalize(gens: impl IntoIterator<Item = (u64, u64)>) -> Result<Self, OracleError> {
        let mut all: Vec<(u64, u64)> = gens.into_iter().collect();
        if all.is_empty() {
            return Err(OracleError::NoGenerators);
        }
        all.sort_unstable();
        // after sorting by (p, q), a generator is redundant iff some earlier
        // one has q no larger than its own
        let mut kept: Vec<(u64, u64)> = Vec::with_capacity(all.len());
        for (p, q) in all {
            if kept.last().is_none_or(|&(_, lowest_q)| q < lowest_q) {
                kept.push((p, q));
            }
        }
        if kept[0].0 != 0 {
            return Err(OracleError::NotArtinian("y"));
        }
        if kept[kept.len() - 1].1 != 0 {
            return Err(OracleError::NotArtinian("x"));
        }
        Ok(Self { gens: kept })
    }

    pub fn gens(&self) -> &[(u64, u64)] {
        &self.gens
    }

    /// Number of monomials outside the ideal.
    ///
    /// Between consecutive generators `(p_{k-1}, q_{k-1})` and `(p_k, q_k)`
    /// the rows `q_k <= j < q_{k-1}` each contain exactly `p_k` standard
    /// monomials.
    pub fn colength(&self) -> BigInt {
        let mut total = BigInt::zero();
        for pair in self.gens.windows(2) {
            let (_, q_prev) = pair[0];
            let (p, q) = pair[1];
            total += BigInt::from(p) * (q_prev - q);
        }
        total
    }

    /// Swaps the roles of `x` and `y`.
    pub fn transpose(&self) -> Self {
        let mut gens: Vec<(u64, u64)> = self.gens.iter().map(|&(p, q)| (q, p)).collect();
        gens.reverse();
        Self { gens }
    }
}

//! Graded Betti tables and the Hilbert-series route to multiplicity.
//!
//! A table records the ranks `β_{i,j}` of a minimal graded free resolution of
//! `R/I` for steps `i = 1..=p`. Step 0 (the ring itself, one copy of `R` in
//! shift 0) is implicit. The K-polynomial is the alternating sum
//! `Σ_i (-1)^i Σ_j β_{i,j} s^j`, and for a Cohen-Macaulay quotient of
//! codimension `c` the multiplicity is `Q(1)` where `K(s) = (1 - s)^c Q(s)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::KPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BettiError {
    #[error("a Betti table needs at least one step")]
    NoSteps,
    #[error("step {step} has no entries")]
    EmptyStep { step: usize },
    #[error("step {step} has rank 0 at shift {shift}")]
    ZeroRank { step: usize, shift: u64 },
    #[error("step {step} has shift 0; shifts must be positive")]
    NonPositiveShift { step: usize },
    #[error("codimension {codim} exceeds projective dimension {pd}")]
    CodimTooLarge { codim: usize, pd: usize },
    #[error("(1 - s)^{codim} does not divide the K-polynomial {k_polynomial}")]
    Division { codim: usize, k_polynomial: String },
    #[error("resolution is not pure at step {step} (min shift {min}, max shift {max})")]
    NotPure { step: usize, min: u64, max: u64 },
    #[error("codimension {codim} differs from projective dimension {pd}")]
    NotPerfect { codim: usize, pd: usize },
    #[error("{factorial} does not divide the shift product {product}")]
    Divisibility { product: BigInt, factorial: BigInt },
    #[error("pure-resolution formula gives {formula} but the Hilbert series gives {series}")]
    Mismatch { formula: BigInt, series: BigInt },
}

/// Graded Betti numbers of `R/I`, steps `1..=p`, with a declared codimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BettiTableJson", into = "BettiTableJson")]
pub struct BettiTable {
    codim: usize,
    // steps[i - 1] maps shift -> rank for homological step i
    steps: Vec<BTreeMap<u64, u64>>,
}

#[derive(Serialize, Deserialize)]
struct BettiTableJson {
    codim: usize,
    steps: Vec<Vec<[u64; 2]>>,
}

impl TryFrom<BettiTableJson> for BettiTable {
    type Error = BettiError;

    fn try_from(raw: BettiTableJson) -> Result<Self, Self::Error> {
        let steps = raw
            .steps
            .into_iter()
            .map(|step| {
                step.into_iter()
                    .map(|[shift, rank]| (shift, rank))
                    .collect()
            })
            .collect();
        BettiTable::new(raw.codim, steps)
    }
}

impl From<BettiTable> for BettiTableJson {
    fn from(table: BettiTable) -> Self {
        BettiTableJson {
            codim: table.codim,
            steps: table
                .steps
                .iter()
                .map(|step| step.iter().map(|(&s, &r)| [s, r]).collect())
                .collect(),
        }
    }
}

impl BettiTable {
    /// Builds a table from `(shift, rank)` entries per step, merging repeated
    /// shifts within a step.
    pub fn new(codim: usize, steps: Vec<Vec<(u64, u64)>>) -> Result<Self, BettiError> {
        if steps.is_empty() {
            return Err(BettiError::NoSteps);
        }
        let pd = steps.len();
        if codim > pd {
            return Err(BettiError::CodimTooLarge { codim, pd });
        }
        let mut merged = Vec::with_capacity(pd);
        for (idx, entries) in steps.into_iter().enumerate() {
            let step = idx + 1;
            if entries.is_empty() {
                return Err(BettiError::EmptyStep { step });
            }
            let mut map = BTreeMap::new();
            for (shift, rank) in entries {
                if shift == 0 {
                    return Err(BettiError::NonPositiveShift { step });
                }
                if rank == 0 {
                    return Err(BettiError::ZeroRank { step, shift });
                }
                *map.entry(shift).or_insert(0) += rank;
            }
            merged.push(map);
        }
        Ok(Self {
            codim,
            steps: merged,
        })
    }

    /// Builds a table where every listed shift contributes one free summand.
    pub fn from_shift_lists(codim: usize, steps: &[Vec<u64>]) -> Result<Self, BettiError> {
        Self::new(
            codim,
            steps
                .iter()
                .map(|shifts| shifts.iter().map(|&s| (s, 1)).collect())
                .collect(),
        )
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn projective_dimension(&self) -> usize {
        self.steps.len()
    }

    /// `(shift, rank)` pairs of step `i` (1-based), ascending by shift.
    pub fn step(&self, i: usize) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.steps[i - 1].iter().map(|(&s, &r)| (s, r))
    }

    /// Shifts of step `i` repeated by rank, ascending.
    pub fn step_shifts(&self, i: usize) -> Vec<u64> {
        self.step(i)
            .flat_map(|(s, r)| std::iter::repeat_n(s, r as usize))
            .collect()
    }

    pub fn rank(&self, i: usize, shift: u64) -> u64 {
        self.steps[i - 1].get(&shift).copied().unwrap_or(0)
    }

    pub fn k_polynomial(&self) -> KPolynomial {
        let top = self
            .steps
            .iter()
            .filter_map(|step| step.keys().next_back())
            .max()
            .copied()
            .unwrap_or(0) as usize;
        let mut coeffs = vec![BigInt::zero(); top + 1];
        coeffs[0] = BigInt::one();
        for (idx, step) in self.steps.iter().enumerate() {
            let negative = idx % 2 == 0;
            for (&shift, &rank) in step {
                let slot = &mut coeffs[shift as usize];
                if negative {
                    *slot -= rank;
                } else {
                    *slot += rank;
                }
            }
        }
        KPolynomial::new(coeffs)
    }

    /// `Q(s)` with `K(s) = (1 - s)^c Q(s)`.
    pub fn hilbert_numerator(&self) -> Result<KPolynomial, BettiError> {
        let k = self.k_polynomial();
        k.div_one_minus_s_pow(self.codim)
            .ok_or_else(|| BettiError::Division {
                codim: self.codim,
                k_polynomial: k.to_string(),
            })
    }

    pub fn multiplicity(&self) -> Result<BigInt, BettiError> {
        Ok(self.hilbert_numerator()?.eval_at_one())
    }

    pub fn shift_summary(&self) -> ShiftSummary {
        let (min, max) = self
            .steps
            .iter()
            .map(|step| {
                let lo = *step.keys().next().expect("steps are nonempty");
                let hi = *step.keys().next_back().expect("steps are nonempty");
                (lo, hi)
            })
            .unzip();
        ShiftSummary { min, max }
    }

    pub fn purity(&self) -> Purity {
        self.shift_summary().purity()
    }

    /// `(∏ d_i) / p!` for a pure Cohen-Macaulay table, cross-checked against
    /// [`BettiTable::multiplicity`].
    pub fn huneke_miller(&self) -> Result<BigInt, BettiError> {
        let pd = self.projective_dimension();
        if self.codim != pd {
            return Err(BettiError::NotPerfect {
                codim: self.codim,
                pd,
            });
        }
        let shifts = self.shift_summary();
        let mut product = BigInt::one();
        for (i, (&lo, &hi)) in shifts.min.iter().zip(&shifts.max).enumerate() {
            if lo != hi {
                return Err(BettiError::NotPure {
                    step: i + 1,
                    min: lo,
                    max: hi,
                });
            }
            product *= lo;
        }
        let factorial: BigInt = (1..=pd as u64).map(BigInt::from).product();
        if !(&product % &factorial).is_zero() {
            return Err(BettiError::Divisibility { product, factorial });
        }
        let formula = product / factorial;
        let series = self.multiplicity()?;
        if formula != series {
            return Err(BettiError::Mismatch { formula, series });
        }
        Ok(formula)
    }

    /// Arithmetic genus `g = 1 + Σ q_i (i - 1)` of the quotient, read as a
    /// curve: Hilbert polynomial `e·t + 1 - g`. Only meaningful when `R/I` has
    /// Krull dimension 2.
    pub fn arithmetic_genus(&self) -> Result<BigInt, BettiError> {
        let q = self.hilbert_numerator()?;
        let mut g = BigInt::one();
        for (i, c) in q.coeffs().iter().enumerate() {
            g += c * (i as i64 - 1);
        }
        Ok(g)
    }
}

/// Minimal and maximal shifts `m_i`, `M_i` per step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftSummary {
    pub min: Vec<u64>,
    pub max: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Purity {
    pub pure: bool,
    pub quasi_pure: bool,
}

impl ShiftSummary {
    pub fn new(min: Vec<u64>, max: Vec<u64>) -> Self {
        assert_eq!(
            min.len(),
            max.len(),
            "min and max shift lists differ in length"
        );
        Self { min, max }
    }

    pub fn steps(&self) -> usize {
        self.min.len()
    }

    pub fn is_pure(&self) -> bool {
        self.min == self.max
    }

    /// `m_i >= M_{i-1}` for every step `i >= 2`.
    pub fn is_quasi_pure(&self) -> bool {
        self.min
            .iter()
            .skip(1)
            .zip(&self.max)
            .all(|(m, prev)| m >= prev)
    }

    pub fn purity(&self) -> Purity {
        Purity {
            pure: self.is_pure(),
            quasi_pure: self.is_quasi_pure(),
        }
    }

    /// `m_i <= M_i`, and both sequences strictly increasing.
    pub fn is_well_ordered(&self) -> bool {
        self.min.iter().zip(&self.max).all(|(lo, hi)| lo <= hi)
            && self.min.windows(2).all(|w| w[0] < w[1])
            && self.max.windows(2).all(|w| w[0] < w[1])
    }

    pub fn min_product(&self) -> BigInt {
        self.min.iter().map(|&m| BigInt::from(m)).product()
    }

    pub fn max_product(&self) -> BigInt {
        self.max.iter().map(|&m| BigInt::from(m)).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gor_table() -> BettiTable {
        BettiTable::new(
            3,
            vec![
                vec![(2, 2), (3, 2), (4, 1)],
                vec![(3, 1), (4, 2), (5, 2)],
                vec![(7, 1)],
            ],
        )
        .unwrap()
    }

    fn pure_235() -> BettiTable {
        BettiTable::new(3, vec![vec![(2, 5)], vec![(3, 5)], vec![(5, 1)]]).unwrap()
    }

    fn koszul_23() -> BettiTable {
        BettiTable::new(2, vec![vec![(2, 1), (3, 1)], vec![(5, 1)]]).unwrap()
    }

    #[test]
    fn k_polynomial_examples() {
        assert_eq!(
            koszul_23().k_polynomial(),
            KPolynomial::from_i64(&[1, 0, -1, -1, 0, 1])
        );
        assert_eq!(
            gor_table().k_polynomial(),
            KPolynomial::from_i64(&[1, 0, -2, -1, 1, 2, 0, -1])
        );
        let line = BettiTable::new(1, vec![vec![(1, 1)]]).unwrap();
        assert_eq!(line.k_polynomial(), KPolynomial::from_i64(&[1, -1]));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(koszul_23().multiplicity().unwrap(), BigInt::from(6));
        assert_eq!(gor_table().multiplicity().unwrap(), BigInt::from(12));
        assert_eq!(pure_235().multiplicity().unwrap(), BigInt::from(5));
    }

    #[test]
    fn multiplicity_rejects_inconsistent_codim() {
        let quadric = BettiTable::new(1, vec![vec![(2, 1)]]).unwrap();
        assert_eq!(quadric.multiplicity().unwrap(), BigInt::from(2));
        // K = 1 - s^2 - s^3 + s^4 vanishes only to order 1 at s = 1
        let bad = BettiTable::new(2, vec![vec![(2, 1), (3, 1)], vec![(4, 1)]]).unwrap();
        assert!(matches!(
            bad.multiplicity(),
            Err(BettiError::Division { codim: 2, .. })
        ));
    }

    #[test]
    fn shift_summaries() {
        let s = koszul_23().shift_summary();
        assert_eq!((s.min, s.max), (vec![2, 5], vec![3, 5]));
        let s = gor_table().shift_summary();
        assert_eq!((s.min, s.max), (vec![2, 3, 7], vec![4, 5, 7]));
        let s = pure_235().shift_summary();
        assert_eq!(
            (s.min.clone(), s.max.clone()),
            (vec![2, 3, 5], vec![2, 3, 5])
        );
        assert!(s.is_well_ordered());
    }

    #[test]
    fn purity_examples() {
        assert_eq!(
            pure_235().purity(),
            Purity {
                pure: true,
                quasi_pure: true
            }
        );
        assert_eq!(
            gor_table().purity(),
            Purity {
                pure: false,
                quasi_pure: false
            }
        );
        let s = ShiftSummary::new(vec![2, 4], vec![3, 5]);
        assert_eq!(
            s.purity(),
            Purity {
                pure: false,
                quasi_pure: true
            }
        );
    }

    #[test]
    fn huneke_miller_examples() {
        assert_eq!(pure_235().huneke_miller().unwrap(), BigInt::from(5));
        let ci_linear = BettiTable::new(2, vec![vec![(1, 2)], vec![(2, 1)]]).unwrap();
        assert_eq!(ci_linear.huneke_miller().unwrap(), BigInt::from(1));
        let ci_22 = BettiTable::new(2, vec![vec![(2, 2)], vec![(4, 1)]]).unwrap();
        assert_eq!(ci_22.huneke_miller().unwrap(), BigInt::from(4));
    }

    #[test]
    fn huneke_miller_errors() {
        assert!(matches!(
            gor_table().huneke_miller(),
            Err(BettiError::NotPure { step: 1, .. })
        ));
        // 1 * 1 is not divisible by 2!
        let impossible = BettiTable::new(2, vec![vec![(1, 1)], vec![(1, 1)]]).unwrap();
        assert!(matches!(
            impossible.huneke_miller(),
            Err(BettiError::Divisibility { .. })
        ));
        let not_perfect = BettiTable::new(1, vec![vec![(1, 2)], vec![(2, 1)]]).unwrap();
        assert!(matches!(
            not_perfect.huneke_miller(),
            Err(BettiError::NotPerfect { .. })
        ));
    }

    #[test]
    fn genus_examples() {
        let line = BettiTable::new(2, vec![vec![(1, 2)], vec![(2, 1)]]).unwrap();
        assert_eq!(line.arithmetic_genus().unwrap(), BigInt::from(0));
        let quartic = BettiTable::new(2, vec![vec![(2, 2)], vec![(4, 1)]]).unwrap();
        assert_eq!(quartic.arithmetic_genus().unwrap(), BigInt::from(1));
        let cm2 = BettiTable::new(2, vec![vec![(2, 2), (3, 1)], vec![(3, 1), (4, 1)]]).unwrap();
        assert_eq!(cm2.arithmetic_genus().unwrap(), BigInt::from(1));
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(BettiTable::new(0, vec![]), Err(BettiError::NoSteps));
        assert_eq!(
            BettiTable::new(1, vec![vec![(1, 1)], vec![]]),
            Err(BettiError::EmptyStep { step: 2 })
        );
        assert_eq!(
            BettiTable::new(1, vec![vec![(1, 0)]]),
            Err(BettiError::ZeroRank { step: 1, shift: 1 })
        );
        assert_eq!(
            BettiTable::new(1, vec![vec![(0, 1)]]),
            Err(BettiError::NonPositiveShift { step: 1 })
        );
        assert_eq!(
            BettiTable::new(2, vec![vec![(1, 1)]]),
            Err(BettiError::CodimTooLarge { codim: 2, pd: 1 })
        );
    }

    #[test]
    fn aggregates_repeated_shifts() {
        let t =
            BettiTable::new(2, vec![vec![(2, 1), (2, 1), (3, 1)], vec![(3, 1), (4, 1)]]).unwrap();
        assert_eq!(t.rank(1, 2), 2);
        assert_eq!(t.step_shifts(1), vec![2, 2, 3]);
    }

    #[test]
    fn json_shape() {
        let json = r#"{"codim":2,"steps":[[[2,1],[3,1]],[[5,1]]]}"#;
        let t: BettiTable = serde_json::from_str(json).unwrap();
        assert_eq!(t, koszul_23());
        assert_eq!(serde_json::to_string(&t).unwrap(), json);
        assert!(serde_json::from_str::<BettiTable>(r#"{"codim":3,"steps":[[[2,1]]]}"#).is_err());
    }
}

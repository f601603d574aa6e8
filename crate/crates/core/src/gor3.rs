//! Degree matrices of codimension-3 Gorenstein ideals.
//!
//! The Buchsbaum-Eisenbud degree matrix is a `(2t+1) × (2t+1)` grid symmetric
//! about the anti-diagonal. It is determined by the codimension-2 block `A`
//! (diagonal `a`, superdiagonal `b`) of an auxiliary Cohen-Macaulay ideal `J`
//! together with the center entry `d`. Only the numerics are modeled: the
//! Betti table of `I` is assembled from the Betti table of `J`, whose generator
//! degrees and dualized syzygy degrees give the generators of `I`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::betti::{BettiTable, ShiftSummary};
use crate::cm2::{mismatch, DegreeMatrixCm2, Extension, MatrixError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGor3", into = "RawGor3")]
pub struct DegreeMatrixGor3 {
    base: DegreeMatrixCm2,
    d: u64,
}

#[derive(Serialize, Deserialize)]
struct RawGor3 {
    a: Vec<u64>,
    b: Vec<u64>,
    d: u64,
}

impl TryFrom<RawGor3> for DegreeMatrixGor3 {
    type Error = MatrixError;

    fn try_from(raw: RawGor3) -> Result<Self, Self::Error> {
        Self::validate(raw.a, raw.b, raw.d)
    }
}

impl From<DegreeMatrixGor3> for RawGor3 {
    fn from(m: DegreeMatrixGor3) -> Self {
        RawGor3 {
            a: m.base.diagonal().to_vec(),
            b: m.base.superdiagonal().to_vec(),
            d: m.d,
        }
    }
}

impl DegreeMatrixGor3 {
    pub fn validate(a: Vec<u64>, b: Vec<u64>, d: u64) -> Result<Self, MatrixError> {
        let base = DegreeMatrixCm2::validate(a, b)?;
        Self::from_base(base, d)
    }

    pub fn from_base(base: DegreeMatrixCm2, d: u64) -> Result<Self, MatrixError> {
        let a1 = base.diagonal()[0];
        if d < a1 {
            return Err(MatrixError::CenterTooSmall { d, a1 });
        }
        Ok(Self { base, d })
    }

    pub fn base(&self) -> &DegreeMatrixCm2 {
        &self.base
    }

    pub fn center(&self) -> u64 {
        self.d
    }

    pub fn t(&self) -> usize {
        self.base.t()
    }

    /// `m_3 = M_3 = d + 2 Σb`, the single shift of the last step.
    pub fn top_shift(&self) -> u64 {
        self.d + 2 * self.base.superdiagonal().iter().sum::<u64>()
    }

    /// `m_1 = Σa`, `m_2 = m_1 + b_t`, `m_3 = d + 2Σb`, and by self-duality
    /// `M_1 = m_3 - m_2`, `M_2 = m_3 - m_1`, `M_3 = m_3`.
    pub fn shifts(&self) -> ShiftSummary {
        let inner = self.base.shifts();
        let (m1, m2) = (inner.min[0], inner.min[1]);
        let m3 = self.top_shift();
        let s = ShiftSummary::new(vec![m1, m2, m3], vec![m3 - m2, m3 - m1, m3]);
        debug_assert_eq!(s.max[1] - s.min[1], s.max[0] - s.min[0]);
        debug_assert_eq!(s.max[0] - s.min[0], m3 - m1 - m2);
        s
    }

    /// `Σ_j b_j (a_1 + .. + a_j) (d + Σ_{i<j} (2 b_i - a_i) + b_j - a_j)`.
    pub fn multiplicity_pfaffian(&self) -> BigInt {
        let a = self.base.diagonal();
        let b = self.base.superdiagonal();
        let mut total = BigInt::from(0);
        let mut a_prefix = 0u64;
        let mut offset = BigInt::from(self.d);
        for j in 0..self.t() {
            a_prefix += a[j];
            let last = &offset + b[j] - a[j];
            total += BigInt::from(b[j]) * a_prefix * last;
            offset += 2 * b[j];
            offset -= a[j];
        }
        total
    }

    /// Generator shifts: those of `J` together with `m_3` minus the syzygy
    /// shifts of `J`; second step shifts are `m_3` minus the generator shifts.
    pub fn generator_degrees(&self) -> Vec<u64> {
        let m3 = self.top_shift();
        let mut alpha = self.base.generator_degrees();
        alpha.extend(self.base.syzygy_degrees().iter().map(|&f| m3 - f));
        alpha.sort_unstable();
        alpha
    }

    pub fn betti_table(&self) -> BettiTable {
        let m3 = self.top_shift();
        let alpha = self.generator_degrees();
        let beta: Vec<u64> = alpha.iter().map(|&x| m3 - x).collect();
        BettiTable::from_shift_lists(3, &[alpha, beta, vec![m3]])
            .expect("Gorenstein tables are well formed")
    }

    /// `(m_1 + M_2 - 4) e(R/J) - (2g - 2)` with `J` read as a curve of
    /// arithmetic genus `g`.
    pub fn linkage_value(&self) -> Result<BigInt, MatrixError> {
        let j_table = self.base.betti_table();
        let e_j = j_table.multiplicity()?;
        let genus = j_table.arithmetic_genus()?;
        let s = self.shifts();
        let factor = BigInt::from(s.min[0]) + s.max[1] - 4;
        Ok(factor * e_j - (2 * genus - 2))
    }

    /// [`Self::linkage_value`], checked against the Pfaffian formula.
    pub fn linkage_check(&self) -> Result<BigInt, MatrixError> {
        let value = self.linkage_value()?;
        let pfaffian = self.multiplicity_pfaffian();
        if value != pfaffian {
            return Err(mismatch(
                "linkage formula vs Pfaffian formula",
                &value,
                pfaffian,
            ));
        }
        Ok(value)
    }

    pub fn split_last(&self) -> Option<(Self, u64, u64)> {
        self.base
            .split_last()
            .map(|(base, a, b)| (Self { base, d: self.d }, a, b))
    }

    /// Appends `(a, b)` to the block `A`, keeping `d`. Checks the six shift
    /// changes, the recursion `e' = e + b (m_1 + a)(M_2 + b - a)` against the
    /// Pfaffian formula, and the genus recursion
    /// `g' = g + b (m_1 + a)(m_1 + a + b - 4) / 2 + b e(R/J)` for the curves
    /// `J`, `J'`.
    pub fn extend(&self, a: u64, b: u64) -> Result<Extension<Self>, MatrixError> {
        let c = *self.base.superdiagonal().last().expect("t >= 1");
        let base_ext = self.base.extend(a, b)?;
        let extended = Self {
            base: base_ext.matrix,
            d: self.d,
        };

        let before = self.shifts();
        let after = extended.shifts();
        let (m, big) = (&before.min, &before.max);
        let expected = ShiftSummary::new(
            vec![m[0] + a, m[1] + a + b - c, m[2] + 2 * b],
            vec![big[0] + b + c - a, big[1] + 2 * b - a, big[2] + 2 * b],
        );
        if after != expected {
            return Err(mismatch(
                "extension shift deltas",
                format!("{after:?}"),
                format!("{expected:?}"),
            ));
        }

        let m1a = BigInt::from(m[0] + a);
        let multiplicity =
            self.multiplicity_pfaffian() + BigInt::from(b) * &m1a * (BigInt::from(big[1] + b) - a);
        let direct = extended.multiplicity_pfaffian();
        if multiplicity != direct {
            return Err(mismatch("extension multiplicity", &multiplicity, direct));
        }

        let j_table = self.base.betti_table();
        let genus = j_table.arithmetic_genus()?;
        let genus_ext = extended.base.betti_table().arithmetic_genus()?;
        let twice = 2 * genus
            + BigInt::from(b) * &m1a * (&m1a + b - 4)
            + 2 * BigInt::from(b) * j_table.multiplicity()?;
        if 2 * &genus_ext != twice {
            return Err(mismatch("genus recursion (doubled)", 2 * genus_ext, twice));
        }

        Ok(Extension {
            matrix: extended,
            before,
            after,
            multiplicity,
        })
    }
}

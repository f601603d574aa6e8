//! Degree matrices of codimension-2 Cohen-Macaulay ideals.
//!
//! A `t × (t+1)` Hilbert-Burch degree matrix, ordered so its entries increase
//! from bottom to top and from left to right, is determined by its diagonal
//! `a_1..a_t` and superdiagonal `b_1..b_t`. The ordering is equivalent to
//! `b_i >= a_i` and `b_i >= a_{i+1}`, and the diagonal must be positive.
//!
//! Column `j` (1-based) corresponds to a minimal generator of degree
//! `E_j = a_1 + .. + a_{j-1} + b_j + .. + b_t` and row `i` to a syzygy of
//! degree `F_i = a_1 + .. + a_i + b_i + .. + b_t`; entry `(i, j)` is
//! `F_i - E_j`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::betti::{BettiError, BettiTable, ShiftSummary};
use crate::oracle::MonomialStaircase;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("a degree matrix needs t >= 1")]
    Empty,
    #[error("diagonal has {a} entries but superdiagonal has {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("diagonal entry a_{index} = {value} must be at least 1")]
    InvalidDiagonal { index: usize, value: u64 },
    #[error("entries are not monotone: {0}")]
    NotMonotone(String),
    #[error("center entry d = {d} is smaller than a_1 = {a1}")]
    CenterTooSmall { d: u64, a1: u64 },
    #[error(transparent)]
    Betti(#[from] BettiError),
    #[error("internal mismatch in {what}: {left} != {right}")]
    InternalMismatch {
        what: &'static str,
        left: String,
        right: String,
    },
}

pub(crate) fn mismatch(
    what: &'static str,
    left: impl ToString,
    right: impl ToString,
) -> MatrixError {
    MatrixError::InternalMismatch {
        what,
        left: left.to_string(),
        right: right.to_string(),
    }
}

/// Result of appending one diagonal/superdiagonal pair to a degree matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension<M> {
    pub matrix: M,
    pub before: ShiftSummary,
    pub after: ShiftSummary,
    /// Multiplicity of the extended matrix, obtained from the recursion.
    pub multiplicity: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCm2", into = "RawCm2")]
pub struct DegreeMatrixCm2 {
    a: Vec<u64>,
    b: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct RawCm2 {
    pub(crate) a: Vec<u64>,
    pub(crate) b: Vec<u64>,
}

impl TryFrom<RawCm2> for DegreeMatrixCm2 {
    type Error = MatrixError;

    fn try_from(raw: RawCm2) -> Result<Self, Self::Error> {
        Self::validate(raw.a, raw.b)
    }
}

impl From<DegreeMatrixCm2> for RawCm2 {
    fn from(m: DegreeMatrixCm2) -> Self {
        RawCm2 { a: m.a, b: m.b }
    }
}

fn sum(xs: &[u64]) -> u64 {
    xs.iter().sum()
}

impl DegreeMatrixCm2 {
    pub fn validate(a: Vec<u64>, b: Vec<u64>) -> Result<Self, MatrixError> {
        if a.len() != b.len() {
            return Err(MatrixError::LengthMismatch {
                a: a.len(),
                b: b.len(),
            });
        }
        if a.is_empty() {
            return Err(MatrixError::Empty);
        }
        if let Some((i, &v)) = a.iter().enumerate().find(|(_, &v)| v < 1) {
            return Err(MatrixError::InvalidDiagonal {
                index: i + 1,
                value: v,
            });
        }
        for i in 0..a.len() {
            if b[i] < a[i] {
                return Err(MatrixError::NotMonotone(format!(
                    "b_{k} = {} < a_{k} = {}",
                    b[i],
                    a[i],
                    k = i + 1
                )));
            }
            if i + 1 < a.len() && b[i] < a[i + 1] {
                return Err(MatrixError::NotMonotone(format!(
                    "b_{} = {} < a_{} = {}",
                    i + 1,
                    b[i],
                    i + 2,
                    a[i + 1]
                )));
            }
        }
        Ok(Self { a, b })
    }

    pub fn t(&self) -> usize {
        self.a.len()
    }

    pub fn diagonal(&self) -> &[u64] {
        &self.a
    }

    pub fn superdiagonal(&self) -> &[u64] {
        &self.b
    }

    /// `E_1 >= .. >= E_{t+1}` in column order.
    pub fn generator_degrees(&self) -> Vec<u64> {
        (0..=self.t())
            .map(|j| sum(&self.a[..j]) + sum(&self.b[j..]))
            .collect()
    }

    /// `F_1 >= .. >= F_t` in row order.
    pub fn syzygy_degrees(&self) -> Vec<u64> {
        (0..self.t())
            .map(|i| sum(&self.a[..=i]) + sum(&self.b[i..]))
            .collect()
    }

    /// `m_1 = Σa`, `m_2 = m_1 + b_t`, `M_1 = Σb`, `M_2 = a_1 + Σb`.
    pub fn shifts(&self) -> ShiftSummary {
        let m1 = sum(&self.a);
        let big_m1 = sum(&self.b);
        let m2 = m1 + self.b[self.t() - 1];
        let big_m2 = self.a[0] + big_m1;
        ShiftSummary::new(vec![m1, m2], vec![big_m1, big_m2])
    }

    /// All entries `F_i - E_j`; entries off the two bands may be zero or
    /// negative, in which case the corresponding polynomial entry vanishes.
    pub fn full_matrix(&self) -> Vec<Vec<i64>> {
        let e = self.generator_degrees();
        self.syzygy_degrees()
            .iter()
            .map(|&f| e.iter().map(|&g| f as i64 - g as i64).collect())
            .collect()
    }

    pub fn uv_data(&self) -> UvData {
        let mut generators = self.generator_degrees();
        let mut syzygies = self.syzygy_degrees();
        generators.sort_unstable();
        syzygies.sort_unstable();
        let u = syzygies
            .iter()
            .zip(&generators)
            .map(|(&f, &e)| f as i64 - e as i64)
            .collect();
        let v = syzygies
            .iter()
            .zip(&generators[1..])
            .map(|(&f, &e)| f as i64 - e as i64)
            .collect();
        let data = UvData {
            generators,
            syzygies,
            u,
            v,
        };
        debug_assert!(data.satisfies_facts(), "uv facts fail for {self:?}");
        data
    }

    /// `Σ u_i (v_i + .. + v_{m-1})`, checked against `Σ v_i (u_1 + .. + u_i)`.
    pub fn multiplicity_uv(&self) -> Result<BigInt, MatrixError> {
        let uv = self.uv_data();
        let (first, second) = uv.multiplicities();
        if first != second {
            return Err(mismatch("u/v multiplicity expressions", first, second));
        }
        Ok(first)
    }

    /// Both Herzog-Srinivasan identities on the u/v data.
    pub fn hs_identities(&self) -> bool {
        self.uv_data().hs_identities()
    }

    pub fn betti_table(&self) -> BettiTable {
        BettiTable::from_shift_lists(2, &[self.generator_degrees(), self.syzygy_degrees()])
            .expect("degree-matrix tables are well formed")
    }

    /// `(x^{a_1 + .. + a_j} y^{b_{j+1} + .. + b_t})_{j = 0..t}`, a monomial
    /// ideal with this degree matrix.
    pub fn witness_ideal(&self) -> MonomialStaircase {
        let gens = (0..=self.t()).map(|j| (sum(&self.a[..j]), sum(&self.b[j..])));
        MonomialStaircase::minimalize(gens).expect("witness ideal contains x^m1 and y^M1")
    }

    /// Entry `(2, 1)` of the full matrix, used by the corner-condition upper
    /// bound; `None` if t = 1.
    pub fn subdiagonal_corner(&self) -> Option<i64> {
        (self.t() >= 2).then(|| self.a[0] as i64 + self.a[1] as i64 - self.b[0] as i64)
    }

    /// Splits off the last diagonal/superdiagonal pair, if t >= 2.
    pub fn split_last(&self) -> Option<(Self, u64, u64)> {
        let t = self.t();
        (t >= 2).then(|| {
            let prefix = Self {
                a: self.a[..t - 1].to_vec(),
                b: self.b[..t - 1].to_vec(),
            };
            (prefix, self.a[t - 1], self.b[t - 1])
        })
    }

    /// Appends `(a, b)` as `(a_{t+1}, b_{t+1})`. The multiplicity of the
    /// result is `e + m_1' b` (a basic double link), checked against the u/v
    /// formula, and the shift changes are checked against
    /// `m_1' = m_1 + a`, `M_1' = M_1 + b`, `m_2' = m_2 + a + b - b_t`,
    /// `M_2' = M_2 + b`.
    pub fn extend(&self, a: u64, b: u64) -> Result<Extension<Self>, MatrixError> {
        let c = self.b[self.t() - 1];
        let mut new_a = self.a.clone();
        let mut new_b = self.b.clone();
        new_a.push(a);
        new_b.push(b);
        let extended = Self::validate(new_a, new_b)?;

        let before = self.shifts();
        let after = extended.shifts();
        let expected = ShiftSummary::new(
            vec![before.min[0] + a, before.min[1] + a + b - c],
            vec![before.max[0] + b, before.max[1] + b],
        );
        if after != expected {
            return Err(mismatch(
                "extension shift deltas",
                format!("{after:?}"),
                format!("{expected:?}"),
            ));
        }

        let multiplicity = self.multiplicity_uv()? + BigInt::from(after.min[0]) * b;
        let direct = extended.multiplicity_uv()?;
        if multiplicity != direct {
            return Err(mismatch("extension multiplicity", &multiplicity, direct));
        }
        Ok(Extension {
            matrix: extended,
            before,
            after,
            multiplicity,
        })
    }
}

/// Generator degrees `e_1 <= .. <= e_m`, syzygy degrees `f_1 <= .. <= f_{m-1}`,
/// and `u_i = f_i - e_i`, `v_i = f_i - e_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UvData {
    pub generators: Vec<u64>,
    pub syzygies: Vec<u64>,
    pub u: Vec<i64>,
    pub v: Vec<i64>,
}

fn big_sum(xs: &[i64]) -> BigInt {
    xs.iter().map(|&x| BigInt::from(x)).sum()
}

impl UvData {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// The four structural facts: `u_i >= v_i >= 0`, `u_{i+1} >= v_i`,
    /// `e_1 = Σv`, `e_m = Σu`, `f_1 = Σv + u_1`, `f_{m-1} = Σu + v_{m-1}`.
    pub fn satisfies_facts(&self) -> bool {
        let n = self.u.len();
        if n == 0 || self.v.len() != n || self.generators.len() != n + 1 || self.syzygies.len() != n
        {
            return false;
        }
        let ordered = self.u.iter().zip(&self.v).all(|(u, v)| u >= v && *v >= 0)
            && self
                .v
                .iter()
                .zip(&self.u[1..])
                .all(|(v, u_next)| u_next >= v);
        let su: i64 = self.u.iter().sum();
        let sv: i64 = self.v.iter().sum();
        let e = |i: usize| self.generators[i] as i64;
        let f = |i: usize| self.syzygies[i] as i64;
        ordered
            && e(0) == sv
            && e(n) == su
            && f(0) == sv + self.u[0]
            && f(n - 1) == su + self.v[n - 1]
    }

    /// `(Σ u_i (v_i + .. + v_{m-1}), Σ v_i (u_1 + .. + u_i))`.
    pub fn multiplicities(&self) -> (BigInt, BigInt) {
        let n = self.u.len();
        let first = (0..n)
            .map(|i| BigInt::from(self.u[i]) * big_sum(&self.v[i..]))
            .sum();
        let second = (0..n)
            .map(|i| BigInt::from(self.v[i]) * big_sum(&self.u[..=i]))
            .sum();
        (first, second)
    }

    pub fn v_identity_sides(&self) -> (BigInt, BigInt) {
        let v = &self.v;
        let n = v.len();
        let lhs = (1..n)
            .map(|i| BigInt::from(v[i - 1] + v[i]) * big_sum(&v[i..]))
            .sum();
        let rhs = if n >= 1 {
            big_sum(v) * big_sum(&v[1..])
        } else {
            BigInt::zero()
        };
        (lhs, rhs)
    }

    pub fn u_identity_sides(&self) -> (BigInt, BigInt) {
        let u = &self.u;
        let n = u.len();
        let lhs = (0..n.saturating_sub(1))
            .map(|i| BigInt::from(u[i] + u[i + 1]) * big_sum(&u[..=i]))
            .sum();
        let rhs = if n >= 1 {
            big_sum(u) * big_sum(&u[..n - 1])
        } else {
            BigInt::zero()
        };
        (lhs, rhs)
    }

    pub fn hs_identities(&self) -> bool {
        let (vl, vr) = self.v_identity_sides();
        let (ul, ur) = self.u_identity_sides();
        vl == vr && ul == ur
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn m(a: &[u64], b: &[u64]) -> DegreeMatrixCm2 {
        DegreeMatrixCm2::validate(a.to_vec(), b.to_vec()).unwrap()
    }

    fn example() -> DegreeMatrixCm2 {
        m(&[2, 2, 1], &[2, 2, 1])
    }

    #[test]
    fn validate_examples() {
        assert!(DegreeMatrixCm2::validate(vec![2, 2, 1], vec![2, 2, 1]).is_ok());
        assert!(DegreeMatrixCm2::validate(vec![1], vec![1]).is_ok());
        assert!(matches!(
            DegreeMatrixCm2::validate(vec![1, 2], vec![1, 2]),
            Err(MatrixError::NotMonotone(_))
        ));
        assert!(matches!(
            DegreeMatrixCm2::validate(vec![0], vec![1]),
            Err(MatrixError::InvalidDiagonal { index: 1, value: 0 })
        ));
        assert!(matches!(
            DegreeMatrixCm2::validate(vec![2], vec![1]),
            Err(MatrixError::NotMonotone(_))
        ));
        assert_eq!(
            DegreeMatrixCm2::validate(vec![], vec![]),
            Err(MatrixError::Empty)
        );
        assert_eq!(
            DegreeMatrixCm2::validate(vec![1], vec![1, 1]),
            Err(MatrixError::LengthMismatch { a: 1, b: 2 })
        );
    }

    #[test]
    fn shift_examples() {
        let s = example().shifts();
        assert_eq!((s.min, s.max), (vec![5, 6], vec![5, 7]));
        let s = m(&[1], &[1]).shifts();
        assert_eq!((s.min, s.max), (vec![1, 2], vec![1, 2]));
        let s = m(&[1, 1], &[2, 1]).shifts();
        assert_eq!((s.min, s.max), (vec![2, 3], vec![3, 4]));
    }

    #[test]
    fn full_matrix_examples() {
        assert_eq!(
            example().full_matrix(),
            vec![vec![2, 2, 2, 2], vec![2, 2, 2, 2], vec![1, 1, 1, 1]]
        );
        assert_eq!(m(&[1], &[2]).full_matrix(), vec![vec![1, 2]]);
        assert_eq!(m(&[1, 2], &[2, 2]).full_matrix()[1][0], 1);
    }

    #[test]
    fn full_matrix_is_monotone() {
        let grid = m(&[3, 1, 2], &[4, 3, 2]).full_matrix();
        for row in &grid {
            assert!(row.windows(2).all(|w| w[0] <= w[1]));
        }
        for col in 0..grid[0].len() {
            assert!(grid.windows(2).all(|w| w[0][col] >= w[1][col]));
        }
    }

    #[test]
    fn uv_examples() {
        let uv = m(&[1], &[1]).uv_data();
        assert_eq!(
            (uv.generators.clone(), uv.syzygies.clone()),
            (vec![1, 1], vec![2])
        );
        assert_eq!((uv.u.clone(), uv.v.clone()), (vec![1], vec![1]));
        let uv = m(&[1, 1], &[2, 1]).uv_data();
        assert_eq!(uv.generators, vec![2, 2, 3]);
        assert_eq!(uv.syzygies, vec![3, 4]);
        assert_eq!((uv.u.clone(), uv.v.clone()), (vec![1, 2], vec![1, 1]));
        let uv = example().uv_data();
        assert_eq!(uv.u.iter().sum::<i64>(), 5);
        assert_eq!(uv.v.iter().sum::<i64>(), 5);
        assert!(uv.satisfies_facts());
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(example().multiplicity_uv().unwrap(), BigInt::from(17));
        assert_eq!(m(&[1], &[1]).multiplicity_uv().unwrap(), BigInt::from(1));
        assert_eq!(
            m(&[1, 1], &[2, 1]).multiplicity_uv().unwrap(),
            BigInt::from(4)
        );
    }

    #[test]
    fn hs_identity_examples() {
        assert!(m(&[1], &[1]).hs_identities());
        let uv = m(&[1, 1], &[2, 1]).uv_data();
        assert_eq!(uv.u_identity_sides(), (BigInt::from(3), BigInt::from(3)));
        assert!(uv.hs_identities());
        assert!(example().hs_identities());
    }

    #[test]
    fn betti_table_examples() {
        let t = m(&[1], &[1]).betti_table();
        assert_eq!(
            t,
            BettiTable::new(2, vec![vec![(1, 2)], vec![(2, 1)]]).unwrap()
        );
        let t = m(&[1, 1], &[2, 1]).betti_table();
        assert_eq!(
            t,
            BettiTable::new(2, vec![vec![(2, 2), (3, 1)], vec![(3, 1), (4, 1)]]).unwrap()
        );
        assert_eq!(
            example().betti_table().multiplicity().unwrap(),
            BigInt::from(17)
        );
    }

    #[test]
    fn witness_examples() {
        assert_eq!(
            example().witness_ideal().gens(),
            &[(0, 5), (2, 3), (4, 1), (5, 0)]
        );
        assert_eq!(m(&[1], &[1]).witness_ideal().gens(), &[(0, 1), (1, 0)]);
        assert_eq!(
            m(&[1, 1], &[2, 1]).witness_ideal().gens(),
            &[(0, 3), (1, 1), (2, 0)]
        );
    }

    #[test]
    fn extend_examples() {
        let ext = m(&[1, 1], &[2, 1]).extend(1, 1).unwrap();
        assert_eq!(ext.multiplicity, BigInt::from(7));
        assert_eq!(ext.matrix.witness_ideal().colength(), BigInt::from(7));
        let ext = m(&[1], &[1]).extend(1, 1).unwrap();
        assert_eq!(ext.multiplicity, BigInt::from(3));
        assert!(matches!(
            m(&[1], &[1]).extend(2, 1),
            Err(MatrixError::NotMonotone(_))
        ));
        assert!(matches!(
            m(&[2], &[3]).extend(2, 1),
            Err(MatrixError::NotMonotone(_))
        ));
    }

    #[test]
    fn prop24_corner() {
        assert_eq!(example().subdiagonal_corner(), Some(2));
        assert_eq!(m(&[1, 2], &[2, 2]).subdiagonal_corner(), Some(1));
        assert_eq!(m(&[1], &[1]).subdiagonal_corner(), None);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let json = r#"{"a":[2,2,1],"b":[2,2,1]}"#;
        let parsed: DegreeMatrixCm2 = serde_json::from_str(json).unwrap();
        assert_eq!(parsed, example());
        assert_eq!(serde_json::to_string(&parsed).unwrap(), json);
        assert!(serde_json::from_str::<DegreeMatrixCm2>(r#"{"a":[1,2],"b":[1,2]}"#).is_err());
    }

    pub(crate) mod strategy {
        use super::*;
        use proptest::prelude::*;

        /// Valid matrices with t in 1..=max_t and entries up to roughly 8.
        pub fn cm2(max_t: usize) -> impl Strategy<Value = DegreeMatrixCm2> {
            (
                1u64..=6,
                prop::collection::vec((0u64..=3, 0u64..64), 1..=max_t),
            )
                .prop_map(|(a1, steps)| {
                    let mut a = vec![a1];
                    let mut b = Vec::new();
                    for (i, &(extra, pick)) in steps.iter().enumerate() {
                        let bi = a[i] + extra;
                        b.push(bi);
                        if i + 1 < steps.len() {
                            a.push(1 + pick % bi);
                        }
                    }
                    DegreeMatrixCm2::validate(a, b).unwrap()
                })
        }
    }

    mod props {
        use super::strategy::cm2;
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn three_routes_agree(a in cm2(6)) {
                let uv = a.multiplicity_uv().unwrap();
                prop_assert_eq!(&uv, &a.betti_table().multiplicity().unwrap());
                prop_assert_eq!(&uv, &a.witness_ideal().colength());
            }

            #[test]
            fn identities_and_facts(a in cm2(6)) {
                prop_assert!(a.hs_identities());
                prop_assert!(a.uv_data().satisfies_facts());
            }

            #[test]
            fn shifts_match_table(a in cm2(6)) {
                let table = a.betti_table();
                prop_assert_eq!(a.shifts(), table.shift_summary());
                prop_assert!(table.shift_summary().is_well_ordered());
                prop_assert_eq!(table.k_polynomial().order_at_one(), Some(2));
            }

            #[test]
            fn extension_recursion(a in cm2(5), extra in 0u64..4, pick in 0u64..16) {
                let bt = *a.superdiagonal().last().unwrap();
                let new_a = 1 + pick % bt;
                let new_b = new_a + extra;
                let ext = a.extend(new_a, new_b).unwrap();
                let m1 = a.shifts().min[0] + new_a;
                prop_assert_eq!(
                    ext.matrix.multiplicity_uv().unwrap(),
                    a.multiplicity_uv().unwrap() + BigInt::from(m1 * new_b)
                );
            }
        }
    }
}

//! Multiplicity bounds in denominator-cleared integer form.
//!
//! Each bound `e >= X / k` or `e <= X / k` is stored as the comparison of
//! `k·e` with the integer `X`, so half-integral and sixth-integral bounds are
//! compared exactly.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::betti::ShiftSummary;
use crate::cm2::DegreeMatrixCm2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    /// `∏ m_i / p! <= e`
    HhsLower,
    /// `e <= ∏ M_i / p!`
    HhsUpper,
    /// Improved codimension-2 lower bound.
    Cm2Lower,
    /// Improved codimension-2 upper bound.
    Cm2Upper,
    /// Improved codimension-3 Gorenstein lower bound.
    Gor3Lower,
    /// Improved codimension-3 Gorenstein upper bound.
    Gor3Upper,
    /// `e <= M_1 M_2 / 2 - (M_1 - m_1) - (M_2 - m_2)` under the corner conditions.
    CornerUpper,
    /// `m_1 M_2 M_3 / 6 <= e`
    SrinivasanLower,
    /// `e <= M_1 m_2 m_3 / 6`
    SrinivasanUpper,
}

impl BoundName {
    pub const ALL: [BoundName; 9] = [
        BoundName::HhsLower,
        BoundName::HhsUpper,
        BoundName::Cm2Lower,
        BoundName::Cm2Upper,
        BoundName::Gor3Lower,
        BoundName::Gor3Upper,
        BoundName::CornerUpper,
        BoundName::SrinivasanLower,
        BoundName::SrinivasanUpper,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::HhsLower => "hhs_lower",
            BoundName::HhsUpper => "hhs_upper",
            BoundName::Cm2Lower => "cm2_lower",
            BoundName::Cm2Upper => "cm2_upper",
            BoundName::Gor3Lower => "gor3_lower",
            BoundName::Gor3Upper => "gor3_upper",
            BoundName::CornerUpper => "corner_upper",
            BoundName::SrinivasanLower => "srinivasan_lower",
            BoundName::SrinivasanUpper => "srinivasan_upper",
        }
    }

    pub fn kind(self) -> BoundKind {
        match self {
            BoundName::HhsLower
            | BoundName::Cm2Lower
            | BoundName::Gor3Lower
            | BoundName::SrinivasanLower => BoundKind::Lower,
            _ => BoundKind::Upper,
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `lhs = denominator · e` compared with the cleared bound `rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    pub name: BoundName,
    pub kind: BoundKind,
    pub denominator: u32,
    #[serde(serialize_with = "crate::bigint_json::serialize")]
    pub lhs: BigInt,
    #[serde(serialize_with = "crate::bigint_json::serialize")]
    pub rhs: BigInt,
    pub holds: bool,
    pub sharp: bool,
}

impl BoundVerdict {
    pub fn new(name: BoundName, denominator: u32, e: &BigInt, rhs: BigInt) -> Self {
        let lhs = e * denominator;
        let kind = name.kind();
        let holds = match kind {
            BoundKind::Lower => lhs >= rhs,
            BoundKind::Upper => lhs <= rhs,
        };
        let sharp = lhs == rhs;
        Self {
            name,
            kind,
            denominator,
            lhs,
            rhs,
            holds,
            sharp,
        }
    }

    /// `holds`, `sharp`, or `fails`.
    pub fn status(&self) -> &'static str {
        match (self.holds, self.sharp) {
            (_, true) => "sharp",
            (true, false) => "holds",
            (false, _) => "fails",
        }
    }
}

impl fmt::Display for BoundVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let relation = match (self.kind, self.holds, self.sharp) {
            (_, _, true) => "=",
            (BoundKind::Lower, true, _) | (BoundKind::Upper, false, _) => ">",
            (BoundKind::Lower, false, _) | (BoundKind::Upper, true, _) => "<",
        };
        write!(
            f,
            "{}: {}e = {} {} {} [{}]",
            self.name,
            self.denominator,
            self.lhs,
            relation,
            self.rhs,
            self.status()
        )
    }
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn factorial(n: usize) -> u32 {
    (1..=n as u32).product()
}

/// Conjectured bounds `∏ m_i / p! <= e <= ∏ M_i / p!`.
pub fn hhs_bounds(shifts: &ShiftSummary, e: &BigInt) -> (BoundVerdict, BoundVerdict) {
    let k = factorial(shifts.steps());
    (
        BoundVerdict::new(BoundName::HhsLower, k, e, shifts.min_product()),
        BoundVerdict::new(BoundName::HhsUpper, k, e, shifts.max_product()),
    )
}

/// Improved codimension-2 bounds, cleared by 2:
/// `2e >= m_1 m_2 + (M_2 - M_1)(M_2 - m_2 + M_1 - m_1)` and
/// `2e <= M_1 M_2 - (m_2 - m_1)(M_2 - m_2 + M_1 - m_1)`.
///
/// Panics if `shifts` has fewer than two steps.
pub fn cm2_bounds(shifts: &ShiftSummary, e: &BigInt) -> (BoundVerdict, BoundVerdict) {
    let (m1, m2) = (big(shifts.min[0]), big(shifts.min[1]));
    let (big1, big2) = (big(shifts.max[0]), big(shifts.max[1]));
    let spread = (&big2 - &m2) + (&big1 - &m1);
    let lower = &m1 * &m2 + (&big2 - &big1) * &spread;
    let upper = &big1 * &big2 - (&m2 - &m1) * &spread;
    (
        BoundVerdict::new(BoundName::Cm2Lower, 2, e, lower),
        BoundVerdict::new(BoundName::Cm2Upper, 2, e, upper),
    )
}

/// Improved Gorenstein codimension-3 bounds:
/// `6e >= m_1 m_2 m_3 + (M_3 - M_2)^2 (M_2 - m_2 + M_1 - m_1)` and
/// `12e <= 2 M_1 M_2 M_3 - M_3 (M_2 - m_2 + M_1 - m_1)`.
///
/// Panics if `shifts` has fewer than three steps.
pub fn gor3_bounds(shifts: &ShiftSummary, e: &BigInt) -> (BoundVerdict, BoundVerdict) {
    let (m1, m2, m3) = (big(shifts.min[0]), big(shifts.min[1]), big(shifts.min[2]));
    let (big1, big2, big3) = (big(shifts.max[0]), big(shifts.max[1]), big(shifts.max[2]));
    let spread = (&big2 - &m2) + (&big1 - &m1);
    let gap = &big3 - &big2;
    let lower = &m1 * &m2 * &m3 + &gap * &gap * &spread;
    let upper = 2 * &big1 * &big2 * &big3 - &big3 * &spread;
    (
        BoundVerdict::new(BoundName::Gor3Lower, 6, e, lower),
        BoundVerdict::new(BoundName::Gor3Upper, 12, e, upper),
    )
}

/// The same Gorenstein bounds written through the self-duality relations
/// used in their inductive proof:
/// `6e >= m_1 m_2 m_3 + 2 m_1^2 (m_3 - m_1 - m_2)` and
/// `12e <= 2 M_1 M_2 M_3 - 2 M_3 (M_1 + M_2 - M_3)`.
/// On self-dual shifts the right-hand sides coincide with [`gor3_bounds`].
pub fn gor3_bounds_dual_form(shifts: &ShiftSummary, e: &BigInt) -> (BoundVerdict, BoundVerdict) {
    let (m1, m2, m3) = (big(shifts.min[0]), big(shifts.min[1]), big(shifts.min[2]));
    let (big1, big2, big3) = (big(shifts.max[0]), big(shifts.max[1]), big(shifts.max[2]));
    let lower = &m1 * &m2 * &m3 + 2 * &m1 * &m1 * (&m3 - &m1 - &m2);
    let upper = 2 * &big1 * &big2 * &big3 - 2 * &big3 * (&big1 + &big2 - &big3);
    (
        BoundVerdict::new(BoundName::Gor3Lower, 6, e, lower),
        BoundVerdict::new(BoundName::Gor3Upper, 12, e, upper),
    )
}

/// Hypotheses and conclusion of the corner-condition upper bound
/// `e <= M_1 M_2 / 2 - (M_1 - m_1) - (M_2 - m_2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerBoundVerdict {
    /// Every entry of the full degree matrix is at least 2.
    pub entries_at_least_two: bool,
    /// `t >= 2` and `a_1 - 2 d + 1 >= 0` with `d` the `(2, 1)` entry.
    pub corner_condition: bool,
    pub bound: BoundVerdict,
}

impl CornerBoundVerdict {
    pub fn hypotheses_hold(&self) -> bool {
        self.entries_at_least_two || self.corner_condition
    }

    /// The bound fails although one of its hypotheses holds.
    pub fn is_counterexample(&self) -> bool {
        self.hypotheses_hold() && !self.bound.holds
    }
}

/// Evaluates the corner-condition bound; it is reported, never asserted.
pub fn corner_bound(matrix: &DegreeMatrixCm2, e: &BigInt) -> CornerBoundVerdict {
    let s = matrix.shifts();
    let (m1, m2) = (big(s.min[0]), big(s.min[1]));
    let (big1, big2) = (big(s.max[0]), big(s.max[1]));
    let rhs = &big1 * &big2 - 2 * (&big1 - &m1) - 2 * (&big2 - &m2);
    let entries_at_least_two = matrix.full_matrix().iter().flatten().all(|&x| x >= 2);
    let corner_condition = matrix
        .subdiagonal_corner()
        .is_some_and(|d| matrix.diagonal()[0] as i64 - 2 * d + 1 >= 0);
    CornerBoundVerdict {
        entries_at_least_two,
        corner_condition,
        bound: BoundVerdict::new(BoundName::CornerUpper, 2, e, rhs),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SrinivasanVerdict {
    pub lower: BoundVerdict,
    pub upper: BoundVerdict,
    /// The bounds are only known under quasi-purity.
    pub quasi_pure: bool,
}

/// `m_1 M_2 M_3 / 6 <= e <= M_1 m_2 m_3 / 6`, cleared by 6.
pub fn srinivasan_bounds(shifts: &ShiftSummary, e: &BigInt) -> SrinivasanVerdict {
    let (m, big_m) = (&shifts.min, &shifts.max);
    let lower = big(m[0]) * big(big_m[1]) * big(big_m[2]);
    let upper = big(big_m[0]) * big(m[1]) * big(m[2]);
    SrinivasanVerdict {
        lower: BoundVerdict::new(BoundName::SrinivasanLower, 6, e, lower),
        upper: BoundVerdict::new(BoundName::SrinivasanUpper, 6, e, upper),
        quasi_pure: shifts.is_quasi_pure(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sharpness {
    pub lower_sharp: bool,
    pub upper_sharp: bool,
    pub pure: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sharpness does not characterize purity: lower sharp {}, upper sharp {}, pure {}", .0.lower_sharp, .0.upper_sharp, .0.pure)]
pub struct CharacterizationViolated(pub Sharpness);

/// `p!·e = ∏ m_i` and `p!·e = ∏ M_i` must each hold exactly when the
/// resolution is pure.
pub fn sharpness(shifts: &ShiftSummary, e: &BigInt) -> Result<Sharpness, CharacterizationViolated> {
    let (lower, upper) = hhs_bounds(shifts, e);
    let s = Sharpness {
        lower_sharp: lower.sharp,
        upper_sharp: upper.sharp,
        pure: shifts.is_pure(),
    };
    if s.lower_sharp == s.pure && s.upper_sharp == s.pure {
        Ok(s)
    } else {
        Err(CharacterizationViolated(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(min: &[u64], max: &[u64]) -> ShiftSummary {
        ShiftSummary::new(min.to_vec(), max.to_vec())
    }

    fn e(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn sides(v: &BoundVerdict) -> (i64, i64) {
        (
            v.lhs.clone().try_into().unwrap(),
            v.rhs.clone().try_into().unwrap(),
        )
    }

    #[test]
    fn hhs_examples() {
        let (lo, hi) = hhs_bounds(&s(&[5, 6], &[5, 7]), &e(17));
        assert_eq!((sides(&lo), sides(&hi)), ((34, 30), (34, 35)));
        assert!(lo.holds && hi.holds && !lo.sharp && !hi.sharp);

        let (lo, hi) = hhs_bounds(&s(&[2, 3, 5], &[2, 3, 5]), &e(5));
        assert_eq!((sides(&lo), sides(&hi)), ((30, 30), (30, 30)));
        assert!(lo.sharp && hi.sharp);

        let (lo, hi) = hhs_bounds(&s(&[2, 4, 9], &[5, 7, 9]), &e(20));
        assert_eq!((sides(&lo), sides(&hi)), ((120, 72), (120, 315)));
        assert!(lo.holds && hi.holds);
    }

    #[test]
    fn cm2_examples() {
        let (lo, hi) = cm2_bounds(&s(&[2, 3], &[3, 4]), &e(4));
        assert_eq!((sides(&lo), sides(&hi)), ((8, 8), (8, 10)));
        assert!(lo.sharp && hi.holds && !hi.sharp);

        let (lo, hi) = cm2_bounds(&s(&[1, 2], &[1, 2]), &e(1));
        assert!(lo.sharp && hi.sharp);

        let (lo, hi) = cm2_bounds(&s(&[5, 6], &[5, 7]), &e(17));
        assert_eq!(sides(&lo), (34, 32));
        assert_eq!(sides(&hi), (34, 35 - 1));
        assert!(lo.holds && hi.holds);
    }

    #[test]
    fn gor3_examples() {
        let (lo, hi) = gor3_bounds(&s(&[2, 3, 7], &[4, 5, 7]), &e(12));
        assert_eq!((sides(&lo), sides(&hi)), ((72, 58), (144, 252)));
        assert!(lo.holds && hi.holds);

        let (lo, hi) = gor3_bounds(&s(&[2, 3, 5], &[2, 3, 5]), &e(5));
        assert!(lo.sharp && hi.sharp);

        let (lo, hi) = gor3_bounds(&s(&[2, 4, 9], &[5, 7, 9]), &e(20));
        assert_eq!((sides(&lo), sides(&hi)), ((120, 96), (240, 576)));
    }

    #[test]
    fn gor3_dual_form_agrees_on_self_dual_shifts() {
        for (min, max) in [
            ([2, 3, 7], [4, 5, 7]),
            ([2, 4, 9], [5, 7, 9]),
            ([2, 3, 5], [2, 3, 5]),
        ] {
            let shifts = s(&min, &max);
            let (a_lo, a_hi) = gor3_bounds(&shifts, &e(1));
            let (b_lo, b_hi) = gor3_bounds_dual_form(&shifts, &e(1));
            assert_eq!(a_lo.rhs, b_lo.rhs);
            assert_eq!(a_hi.rhs, b_hi.rhs);
        }
    }

    #[test]
    fn corner_bound_examples() {
        let ex = DegreeMatrixCm2::validate(vec![2, 2, 1], vec![2, 2, 1]).unwrap();
        let v = corner_bound(&ex, &e(17));
        assert!(!v.entries_at_least_two && !v.corner_condition);
        assert_eq!(sides(&v.bound), (34, 33));
        assert!(!v.bound.holds);
        assert_eq!(
            ex.diagonal()[0] as i64 - 2 * ex.subdiagonal_corner().unwrap() + 1,
            -1
        );

        let twos = DegreeMatrixCm2::validate(vec![2, 2], vec![2, 2]).unwrap();
        let v = corner_bound(&twos, &e(12));
        assert!(v.entries_at_least_two);
        assert_eq!(sides(&v.bound), (24, 24));
        assert!(v.bound.holds && v.bound.sharp);

        let corner = DegreeMatrixCm2::validate(vec![1, 2], vec![2, 2]).unwrap();
        let v = corner_bound(&corner, &e(8));
        assert!(v.corner_condition);
        assert_eq!(sides(&v.bound), (16, 18));
        assert!(v.bound.holds);
    }

    #[test]
    fn srinivasan_examples() {
        let v = srinivasan_bounds(&s(&[2, 4, 9], &[5, 7, 9]), &e(20));
        assert_eq!(sides(&v.lower), (120, 126));
        assert!(!v.lower.holds);
        assert!(v.upper.holds);

        let v = srinivasan_bounds(&s(&[2, 3, 5], &[2, 3, 5]), &e(5));
        assert!(v.lower.sharp && v.upper.sharp && v.quasi_pure);

        let v = srinivasan_bounds(&s(&[2, 3, 7], &[4, 5, 7]), &e(12));
        assert_eq!(sides(&v.upper), (72, 84));
        assert!(v.upper.holds && !v.quasi_pure);
    }

    #[test]
    fn sharpness_examples() {
        let all = sharpness(&s(&[2, 3, 5], &[2, 3, 5]), &e(5)).unwrap();
        assert!(all.lower_sharp && all.upper_sharp && all.pure);
        let none = sharpness(&s(&[5, 6], &[5, 7]), &e(17)).unwrap();
        assert!(!none.lower_sharp && !none.upper_sharp && !none.pure);
        let none = sharpness(&s(&[2, 3, 7], &[4, 5, 7]), &e(12)).unwrap();
        assert!(!none.pure);
        // fabricated data: sharp lower bound on a non-pure table
        assert!(sharpness(&s(&[2, 3], &[3, 4]), &e(3)).is_err());
    }

    #[test]
    fn display_and_json() {
        let (lo, _) = cm2_bounds(&s(&[5, 6], &[5, 7]), &e(17));
        assert_eq!(lo.to_string(), "cm2_lower: 2e = 34 > 32 [holds]");
        let json = serde_json::to_string(&lo).unwrap();
        assert_eq!(
            json,
            r#"{"name":"cm2_lower","kind":"lower","denominator":2,"lhs":34,"rhs":32,"holds":true,"sharp":false}"#
        );
    }
}

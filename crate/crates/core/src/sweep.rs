//! Exhaustive enumeration of degree matrices with bounded entries, checking
//! every identity and bound on each instance, and targeted counterexample
//! hunts.
//!
//! Instances are enumerated by `t` ascending, then lexicographically on the
//! interleaved tuple `(a_1, b_1, a_2, b_2, ..)`, with `d` last for `gor3`.
//! Reports list anomalies in that order regardless of the thread count.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{
    cm2_bounds, corner_bound, gor3_bounds, gor3_bounds_dual_form, hhs_bounds, sharpness,
    BoundVerdict,
};
use crate::cm2::DegreeMatrixCm2;
use crate::evaluate::Evaluation;
use crate::gor3::DegreeMatrixGor3;
use crate::parallel::{map_ordered, Parallelism};
use crate::schema::DegreeMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("unknown hunt target {0:?} (expected srinivasan_upper_gor3 or prop24_bound)")]
    UnknownTarget(String),
    #[error("unknown family {0:?} (expected cm2 or gor3)")]
    UnknownFamily(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cm2,
    Gor3,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Cm2 => "cm2",
            Family::Gor3 => "gor3",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cm2" => Ok(Family::Cm2),
            "gor3" => Ok(Family::Gor3),
            _ => Err(SweepError::UnknownFamily(s.to_string())),
        }
    }
}

/// One per-instance verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// All multiplicity routes return the same value.
    RouteAgreement,
    /// The two u/v identities (`cm2`).
    UvIdentities,
    /// Structural facts about sorted generator and syzygy degrees (`cm2`).
    UvFacts,
    /// The Betti table is symmetric under `x -> m_3 - x` (`gor3`).
    SelfDuality,
    /// Shifts from the degree matrix equal those read off the Betti table.
    ShiftAgreement,
    /// The improved bounds hold and imply the conjectured ones.
    ImprovedBounds,
    /// The conjectured bounds hold.
    ConjectureBounds,
    /// Sharpness of the conjectured bounds characterizes purity.
    Sharpness,
    /// Removing and re-appending the last diagonal pair reproduces the
    /// multiplicity through the extension recursion.
    Extension,
    /// Pure instances satisfy `p! e = ∏ d_i`.
    PureProduct,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::RouteAgreement,
        Check::UvIdentities,
        Check::UvFacts,
        Check::SelfDuality,
        Check::ShiftAgreement,
        Check::ImprovedBounds,
        Check::ConjectureBounds,
        Check::Sharpness,
        Check::Extension,
        Check::PureProduct,
    ];

    pub fn applies_to(self, family: Family) -> bool {
        match self {
            Check::UvIdentities | Check::UvFacts => family == Family::Cm2,
            Check::SelfDuality => family == Family::Gor3,
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub family: Family,
    pub t_max: usize,
    pub entry_max: u64,
    pub checks: BTreeSet<Check>,
    pub parallelism: Parallelism,
    /// Keep a full [`Evaluation`] per instance (for CSV output).
    pub keep_rows: bool,
}

impl SweepConfig {
    /// All applicable checks, automatic parallelism, no rows kept.
    pub fn new(family: Family, t_max: usize, entry_max: u64) -> Self {
        Self {
            family,
            t_max,
            entry_max,
            checks: Check::ALL
                .into_iter()
                .filter(|c| c.applies_to(family))
                .collect(),
            parallelism: Parallelism::Auto,
            keep_rows: false,
        }
    }

    pub fn with_parallelism(mut self, parallelism: Parallelism) -> Self {
        self.parallelism = parallelism;
        self
    }

    pub fn with_rows(mut self) -> Self {
        self.keep_rows = true;
        self
    }

    fn on(&self, check: Check) -> bool {
        self.checks.contains(&check)
    }
}

/// A failed check on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Anomaly {
    pub instance: DegreeMatrix,
    pub check: Check,
    pub detail: String,
    #[serde(
        with = "crate::bigint_json::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub lhs: Option<BigInt>,
    #[serde(
        with = "crate::bigint_json::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub rhs: Option<BigInt>,
}

/// An instance violating the corner-condition bound; recorded, not an
/// anomaly, since the bound is only claimed under hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerFinding {
    pub instance: DegreeMatrix,
    pub entries_at_least_two: bool,
    pub corner_condition: bool,
    #[serde(serialize_with = "crate::bigint_json::serialize")]
    pub lhs: BigInt,
    #[serde(serialize_with = "crate::bigint_json::serialize")]
    pub rhs: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub family: Family,
    pub t_max: usize,
    pub entry_max: u64,
    pub checks: Vec<Check>,
    pub instances_checked: u64,
    pub pure_instances: u64,
    pub anomalies: Vec<Anomaly>,
    /// Instances where a conjectured bound is attained.
    pub sharp_cases: Vec<DegreeMatrix>,
    /// `cm2` only: every instance where the corner-condition bound fails,
    /// whether or not its hypotheses hold.
    pub corner_bound_findings: Vec<CornerFinding>,
    #[serde(skip)]
    pub rows: Vec<Evaluation>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.anomalies.is_empty()
    }
}

/// Valid `cm2` degree matrices with `t <= t_max` and all band entries in
/// `1..=entry_max`, as an odometer over the interleaved tuple.
#[derive(Clone, Debug)]
pub struct Cm2Enumerator {
    t_max: usize,
    entry_max: u64,
    // interleaved (a_1, b_1, .., a_t, b_t) to emit next
    next: Option<Vec<u64>>,
}

pub fn enumerate_cm2(t_max: usize, entry_max: u64) -> Cm2Enumerator {
    let next = (t_max >= 1 && entry_max >= 1).then(|| vec![1, 1]);
    Cm2Enumerator {
        t_max,
        entry_max,
        next,
    }
}

impl Cm2Enumerator {
    fn bounds(&self, seq: &[u64], k: usize) -> (u64, u64) {
        if k % 2 == 1 {
            // b_i in [a_i, entry_max]
            (seq[k - 1], self.entry_max)
        } else if k == 0 {
            (1, self.entry_max)
        } else {
            // a_{i+1} in [1, b_i]
            (1, seq[k - 1].min(self.entry_max))
        }
    }

    fn advance(&self, seq: &mut [u64]) -> bool {
        for pos in (0..seq.len()).rev() {
            if seq[pos] < self.bounds(seq, pos).1 {
                seq[pos] += 1;
                for k in pos + 1..seq.len() {
                    seq[k] = self.bounds(seq, k).0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Cm2Enumerator {
    type Item = DegreeMatrixCm2;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        let mut seq = current.clone();
        if self.advance(&mut seq) {
            self.next = Some(seq);
        } else if current.len() / 2 < self.t_max {
            self.next = Some(vec![1; current.len() + 2]);
        }
        let a = current.iter().step_by(2).copied().collect();
        let b = current.iter().skip(1).step_by(2).copied().collect();
        Some(DegreeMatrixCm2::validate(a, b).expect("enumerator yields valid matrices"))
    }
}

/// Valid `gor3` degree matrices: every `cm2` block from [`enumerate_cm2`]
/// with `d` in `a_1..=entry_max`.
pub fn enumerate_gor3(t_max: usize, entry_max: u64) -> impl Iterator<Item = DegreeMatrixGor3> {
    enumerate_cm2(t_max, entry_max).flat_map(move |base| {
        let a1 = base.diagonal()[0];
        (a1..=entry_max).map(move |d| {
            DegreeMatrixGor3::from_base(base.clone(), d).expect("d >= a_1 by construction")
        })
    })
}

pub fn enumerate(family: Family, t_max: usize, entry_max: u64) -> Vec<DegreeMatrix> {
    match family {
        Family::Cm2 => enumerate_cm2(t_max, entry_max)
            .map(DegreeMatrix::Cm2)
            .collect(),
        Family::Gor3 => enumerate_gor3(t_max, entry_max)
            .map(DegreeMatrix::Gor3)
            .collect(),
    }
}

#[derive(Default)]
struct Outcome {
    anomalies: Vec<Anomaly>,
    pure: bool,
    sharp: bool,
    corner: Option<CornerFinding>,
    row: Option<Evaluation>,
}

impl Outcome {
    fn flag(&mut self, instance: &DegreeMatrix, check: Check, detail: impl Into<String>) {
        self.anomalies.push(Anomaly {
            instance: instance.clone(),
            check,
            detail: detail.into(),
            lhs: None,
            rhs: None,
        });
    }

    fn flag_bound(&mut self, instance: &DegreeMatrix, check: Check, v: &BoundVerdict) {
        self.anomalies.push(Anomaly {
            instance: instance.clone(),
            check,
            detail: v.to_string(),
            lhs: Some(v.lhs.clone()),
            rhs: Some(v.rhs.clone()),
        });
    }

    fn flag_sides(
        &mut self,
        instance: &DegreeMatrix,
        check: Check,
        what: &str,
        sides: (BigInt, BigInt),
    ) {
        if sides.0 != sides.1 {
            self.anomalies.push(Anomaly {
                instance: instance.clone(),
                check,
                detail: format!("{what}: {} != {}", sides.0, sides.1),
                lhs: Some(sides.0),
                rhs: Some(sides.1),
            });
        }
    }
}

fn describe<E: fmt::Display>(r: &Result<BigInt, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error({e})"),
    }
}

/// Checks shared by both families once the multiplicity is known.
fn common_checks(
    out: &mut Outcome,
    config: &SweepConfig,
    inst: &DegreeMatrix,
    e: &BigInt,
    improved: (BoundVerdict, BoundVerdict),
) {
    let shifts = inst.shifts();
    let table = inst.betti_table();
    let (hhs_lower, hhs_upper) = hhs_bounds(&shifts, e);
    out.pure = shifts.is_pure();
    out.sharp = hhs_lower.sharp || hhs_upper.sharp;

    if config.on(Check::ShiftAgreement) {
        let from_table = table.shift_summary();
        if from_table != shifts || !shifts.is_well_ordered() {
            out.flag(
                inst,
                Check::ShiftAgreement,
                format!("matrix {shifts:?} vs table {from_table:?}"),
            );
        }
    }
    if config.on(Check::ImprovedBounds) {
        let (lower, upper) = &improved;
        for v in [lower, upper] {
            if !v.holds {
                out.flag_bound(inst, Check::ImprovedBounds, v);
            }
        }
        // lhs/denominator are common to both, so compare cleared right-hand
        // sides after scaling to the same denominator
        let scale = |hhs: &BoundVerdict, imp: &BoundVerdict| {
            (&hhs.rhs * imp.denominator, &imp.rhs * hhs.denominator)
        };
        let (h, i) = scale(&hhs_lower, lower);
        if i < h {
            out.flag(
                inst,
                Check::ImprovedBounds,
                format!("improved lower {i} below conjectured {h}"),
            );
        }
        let (h, i) = scale(&hhs_upper, upper);
        if i > h {
            out.flag(
                inst,
                Check::ImprovedBounds,
                format!("improved upper {i} above conjectured {h}"),
            );
        }
    }
    if config.on(Check::ConjectureBounds) {
        for v in [&hhs_lower, &hhs_upper] {
            if !v.holds {
                out.flag_bound(inst, Check::ConjectureBounds, v);
            }
        }
    }
    if config.on(Check::Sharpness) {
        if let Err(err) = sharpness(&shifts, e) {
            out.flag(inst, Check::Sharpness, err.to_string());
        }
    }
    if config.on(Check::PureProduct) && out.pure {
        match table.huneke_miller() {
            Ok(v) if &v == e => {}
            other => out.flag(
                inst,
                Check::PureProduct,
                format!("p! e vs ∏ d_i: {}", describe(&other)),
            ),
        }
    }
    if config.keep_rows {
        out.row = Some(Evaluation::with_multiplicity(inst, e.clone()));
    }
}

fn check_cm2(m: &DegreeMatrixCm2, config: &SweepConfig) -> Outcome {
    let inst = DegreeMatrix::Cm2(m.clone());
    let mut out = Outcome::default();
    let uv = m.multiplicity_uv();
    let staircase = m.witness_ideal().colength();
    let e = uv.clone().unwrap_or_else(|_| staircase.clone());

    if config.on(Check::RouteAgreement) {
        let series = m.betti_table().multiplicity();
        if uv.as_ref().ok() != Some(&staircase) || series.as_ref().ok() != Some(&staircase) {
            out.flag(
                &inst,
                Check::RouteAgreement,
                format!(
                    "uv {}, series {}, staircase {staircase}",
                    describe(&uv),
                    describe(&series)
                ),
            );
        }
    }
    let data = m.uv_data();
    if config.on(Check::UvIdentities) {
        out.flag_sides(
            &inst,
            Check::UvIdentities,
            "v identity",
            data.v_identity_sides(),
        );
        out.flag_sides(
            &inst,
            Check::UvIdentities,
            "u identity",
            data.u_identity_sides(),
        );
    }
    if config.on(Check::UvFacts) && !data.satisfies_facts() {
        out.flag(&inst, Check::UvFacts, format!("{data:?}"));
    }
    if config.on(Check::Extension) {
        if let Some((prefix, a, b)) = m.split_last() {
            match prefix.extend(a, b) {
                Ok(ext) if ext.matrix == *m && ext.multiplicity == e => {}
                Ok(ext) => out.flag(
                    &inst,
                    Check::Extension,
                    format!("recursion gives {}", ext.multiplicity),
                ),
                Err(err) => out.flag(&inst, Check::Extension, err.to_string()),
            }
        }
    }

    let shifts = m.shifts();
    common_checks(&mut out, config, &inst, &e, cm2_bounds(&shifts, &e));

    let corner = corner_bound(m, &e);
    if !corner.bound.holds {
        out.corner = Some(CornerFinding {
            instance: inst,
            entries_at_least_two: corner.entries_at_least_two,
            corner_condition: corner.corner_condition,
            lhs: corner.bound.lhs,
            rhs: corner.bound.rhs,
        });
    }
    out
}

fn check_gor3(g: &DegreeMatrixGor3, config: &SweepConfig) -> Outcome {
    let inst = DegreeMatrix::Gor3(g.clone());
    let mut out = Outcome::default();
    let e = g.multiplicity_pfaffian();
    let table = g.betti_table();

    if config.on(Check::RouteAgreement) {
        let series = table.multiplicity();
        let linkage = g.linkage_value();
        if series.as_ref().ok() != Some(&e) || linkage.as_ref().ok() != Some(&e) {
            out.flag(
                &inst,
                Check::RouteAgreement,
                format!(
                    "pfaffian {e}, series {}, linkage {}",
                    describe(&series),
                    describe(&linkage)
                ),
            );
        }
    }
    if config.on(Check::SelfDuality) {
        let top = g.top_shift();
        let first = table.step_shifts(1);
        let mut dual: Vec<u64> = first.iter().map(|&x| top - x).collect();
        dual.sort_unstable();
        let s = table.shift_summary();
        let ok = dual == table.step_shifts(2)
            && table.step_shifts(3) == vec![top]
            && first.len() == 2 * g.t() + 1
            && first.iter().all(|&x| x > 0 && x < top)
            && s.max[0] == top - s.min[1]
            && s.max[1] == top - s.min[0];
        if !ok {
            out.flag(&inst, Check::SelfDuality, format!("table {table:?}"));
        }
    }
    let shifts = g.shifts();
    let improved = gor3_bounds(&shifts, &e);
    if config.on(Check::ImprovedBounds) {
        let dual = gor3_bounds_dual_form(&shifts, &e);
        if dual.0.rhs != improved.0.rhs || dual.1.rhs != improved.1.rhs {
            out.flag(
                &inst,
                Check::ImprovedBounds,
                format!("dual forms differ: {} / {}", dual.0, dual.1),
            );
        }
    }
    if config.on(Check::Extension) {
        if let Some((prefix, a, b)) = g.split_last() {
            match prefix.extend(a, b) {
                Ok(ext) if ext.matrix == *g && ext.multiplicity == e => {}
                Ok(ext) => out.flag(
                    &inst,
                    Check::Extension,
                    format!("recursion gives {}", ext.multiplicity),
                ),
                Err(err) => out.flag(&inst, Check::Extension, err.to_string()),
            }
        }
    }
    common_checks(&mut out, config, &inst, &e, improved);
    out
}

fn check_instance(inst: &DegreeMatrix, config: &SweepConfig) -> Outcome {
    match inst {
        DegreeMatrix::Cm2(m) => check_cm2(m, config),
        DegreeMatrix::Gor3(g) => check_gor3(g, config),
    }
}

/// Runs every configured check on every instance in range.
pub fn verify_all(config: &SweepConfig) -> SweepReport {
    let start = Instant::now();
    let instances = enumerate(config.family, config.t_max, config.entry_max);
    let outcomes = map_ordered(&instances, config.parallelism, |m| {
        check_instance(m, config)
    });

    let mut report = SweepReport {
        family: config.family,
        t_max: config.t_max,
        entry_max: config.entry_max,
        checks: config.checks.iter().copied().collect(),
        instances_checked: instances.len() as u64,
        pure_instances: 0,
        anomalies: Vec::new(),
        sharp_cases: Vec::new(),
        corner_bound_findings: Vec::new(),
        rows: Vec::new(),
        runtime: Duration::ZERO,
    };
    for (inst, outcome) in instances.into_iter().zip(outcomes) {
        report.pure_instances += u64::from(outcome.pure);
        report.anomalies.extend(outcome.anomalies);
        if outcome.sharp {
            report.sharp_cases.push(inst);
        }
        report.corner_bound_findings.extend(outcome.corner);
        report.rows.extend(outcome.row);
    }
    report.runtime = start.elapsed();
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HuntTarget {
    /// `e <= M_1 m_2 m_3 / 6` over `gor3` instances.
    #[serde(rename = "srinivasan_upper_gor3")]
    SrinivasanUpperGor3,
    /// The corner-condition upper bound over `cm2` instances.
    #[serde(rename = "prop24_bound")]
    CornerBound,
}

impl HuntTarget {
    pub fn as_str(self) -> &'static str {
        match self {
            HuntTarget::SrinivasanUpperGor3 => "srinivasan_upper_gor3",
            HuntTarget::CornerBound => "prop24_bound",
        }
    }

    pub fn family(self) -> Family {
        match self {
            HuntTarget::SrinivasanUpperGor3 => Family::Gor3,
            HuntTarget::CornerBound => Family::Cm2,
        }
    }
}

impl fmt::Display for HuntTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HuntTarget {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "srinivasan_upper_gor3" => Ok(HuntTarget::SrinivasanUpperGor3),
            "prop24_bound" | "corner_bound" => Ok(HuntTarget::CornerBound),
            _ => Err(SweepError::UnknownTarget(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntConfig {
    pub target: HuntTarget,
    pub t_max: usize,
    pub entry_max: u64,
    /// Keep only instances satisfying the hypotheses under which the target
    /// bound is claimed: quasi-purity for the Srinivasan bound, either corner
    /// condition for the corner bound.
    pub hypotheses_only: bool,
    pub parallelism: Parallelism,
}

impl HuntConfig {
    pub fn new(target: HuntTarget, t_max: usize, entry_max: u64) -> Self {
        Self {
            target,
            t_max,
            entry_max,
            hypotheses_only: false,
            parallelism: Parallelism::Auto,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HuntReport {
    pub target: HuntTarget,
    pub t_max: usize,
    pub entry_max: u64,
    pub hypotheses_only: bool,
    pub instances_checked: u64,
    pub candidates: Vec<Evaluation>,
    #[serde(skip)]
    pub runtime: Duration,
}

fn hunt_one(target: HuntTarget, inst: &DegreeMatrix, hypotheses_only: bool) -> Option<Evaluation> {
    let ev = Evaluation::of(inst).ok()?;
    let hit = match target {
        HuntTarget::SrinivasanUpperGor3 => {
            let s = ev.srinivasan.as_ref()?;
            !s.upper.holds && (!hypotheses_only || s.quasi_pure)
        }
        HuntTarget::CornerBound => {
            let c = ev.corner.as_ref()?;
            !c.bound.holds && (!hypotheses_only || c.hypotheses_hold())
        }
    };
    hit.then_some(ev)
}

/// Every instance in range on which the target inequality fails.
pub fn hunt(config: &HuntConfig) -> HuntReport {
    let start = Instant::now();
    let instances = enumerate(config.target.family(), config.t_max, config.entry_max);
    let hits = map_ordered(&instances, config.parallelism, |m| {
        hunt_one(config.target, m, config.hypotheses_only)
    });
    HuntReport {
        target: config.target,
        t_max: config.t_max,
        entry_max: config.entry_max,
        hypotheses_only: config.hypotheses_only,
        instances_checked: instances.len() as u64,
        candidates: hits.into_iter().flatten().collect(),
        runtime: start.elapsed(),
    }
}

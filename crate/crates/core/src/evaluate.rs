//! Per-instance evaluation: shifts, multiplicity, every applicable bound,
//! and purity, plus the fixed-column CSV rendering used by sweeps and hunts.

use std::io;

use num_bigint::BigInt;
use serde::Serialize;

use crate::betti::{BettiError, BettiTable, Purity, ShiftSummary};
use crate::bounds::{
    cm2_bounds, corner_bound, gor3_bounds, hhs_bounds, srinivasan_bounds, BoundVerdict,
    CornerBoundVerdict, SrinivasanVerdict,
};
use crate::cm2::MatrixError;
use crate::oracle::MonomialStaircase;
use crate::schema::DegreeMatrix;

/// Everything computed for one degree matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub instance: DegreeMatrix,
    pub shifts: ShiftSummary,
    #[serde(serialize_with = "crate::bigint_json::serialize")]
    pub multiplicity: BigInt,
    pub hhs_lower: BoundVerdict,
    pub hhs_upper: BoundVerdict,
    /// `cm2_lower` or `gor3_lower`, depending on the family.
    pub improved_lower: BoundVerdict,
    pub improved_upper: BoundVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corner: Option<CornerBoundVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub srinivasan: Option<SrinivasanVerdict>,
    pub purity: Purity,
}

impl Evaluation {
    pub fn of(instance: &DegreeMatrix) -> Result<Self, MatrixError> {
        let multiplicity = instance.multiplicity()?;
        Ok(Self::with_multiplicity(instance, multiplicity))
    }

    /// Evaluates with an already-known multiplicity.
    pub fn with_multiplicity(instance: &DegreeMatrix, multiplicity: BigInt) -> Self {
        let shifts = instance.shifts();
        let (hhs_lower, hhs_upper) = hhs_bounds(&shifts, &multiplicity);
        let ((improved_lower, improved_upper), corner, srinivasan) = match instance {
            DegreeMatrix::Cm2(m) => (
                cm2_bounds(&shifts, &multiplicity),
                Some(corner_bound(m, &multiplicity)),
                None,
            ),
            DegreeMatrix::Gor3(_) => (
                gor3_bounds(&shifts, &multiplicity),
                None,
                Some(srinivasan_bounds(&shifts, &multiplicity)),
            ),
        };
        let purity = shifts.purity();
        Self {
            instance: instance.clone(),
            shifts,
            multiplicity,
            hhs_lower,
            hhs_upper,
            improved_lower,
            improved_upper,
            corner,
            srinivasan,
            purity,
        }
    }

    pub fn verdicts(&self) -> Vec<&BoundVerdict> {
        let mut out = vec![
            &self.hhs_lower,
            &self.hhs_upper,
            &self.improved_lower,
            &self.improved_upper,
        ];
        if let Some(c) = &self.corner {
            out.push(&c.bound);
        }
        if let Some(s) = &self.srinivasan {
            out.push(&s.lower);
            out.push(&s.upper);
        }
        out
    }
}

/// Multiplicity of one input by every available route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouteReport {
    pub routes: Vec<Route>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Route {
    pub name: &'static str,
    #[serde(with = "crate::bigint_json::option")]
    pub value: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Route {
    fn new<E: ToString>(name: &'static str, result: Result<BigInt, E>) -> Self {
        match result {
            Ok(v) => Route {
                name,
                value: Some(v),
                error: None,
            },
            Err(e) => Route {
                name,
                value: None,
                error: Some(e.to_string()),
            },
        }
    }
}

impl RouteReport {
    fn from_routes(routes: Vec<Route>) -> Self {
        let first = routes.first().and_then(|r| r.value.clone());
        let agree = first.is_some() && routes.iter().all(|r| r.value == first);
        Self { routes, agree }
    }

    /// `cm2`: u/v formula, Hilbert series, staircase count of the witness
    /// ideal. `gor3`: Pfaffian formula, Hilbert series, linkage formula.
    pub fn for_matrix(m: &DegreeMatrix) -> Self {
        let routes = match m {
            DegreeMatrix::Cm2(c) => vec![
                Route::new("uv_formula", c.multiplicity_uv()),
                Route::new("hilbert_series", c.betti_table().multiplicity()),
                Route::new::<MatrixError>("staircase", Ok(c.witness_ideal().colength())),
            ],
            DegreeMatrix::Gor3(g) => vec![
                Route::new::<MatrixError>("pfaffian_formula", Ok(g.multiplicity_pfaffian())),
                Route::new("hilbert_series", g.betti_table().multiplicity()),
                Route::new("linkage_formula", g.linkage_value()),
            ],
        };
        Self::from_routes(routes)
    }

    /// Row-by-row count of the staircase and of its transpose.
    pub fn for_staircase(s: &MonomialStaircase) -> Self {
        Self::from_routes(vec![
            Route::new::<MatrixError>("staircase", Ok(s.colength())),
            Route::new::<MatrixError>("transposed_staircase", Ok(s.transpose().colength())),
        ])
    }

    /// Hilbert series, and the Huneke-Miller product when the table is pure.
    pub fn for_table(t: &BettiTable) -> Self {
        let mut routes = vec![Route::new("hilbert_series", t.multiplicity())];
        if t.purity().pure && t.codim() == t.projective_dimension() {
            routes.push(Route::new::<BettiError>("pure_product", t.huneke_miller()));
        }
        Self::from_routes(routes)
    }
}

/// Evaluation of a raw Betti table: only the conjectured bounds apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEvaluation {
    pub table: BettiTable,
    pub shifts: ShiftSummary,
    #[serde(serialize_with = "crate::bigint_json::serialize")]
    pub multiplicity: BigInt,
    pub hhs_lower: BoundVerdict,
    pub hhs_upper: BoundVerdict,
    pub purity: Purity,
    /// `∏ d_i / p!` when the table is pure and perfect.
    #[serde(
        with = "crate::bigint_json::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub pure_product: Option<BigInt>,
}

impl TableEvaluation {
    pub fn of(table: &BettiTable) -> Result<Self, BettiError> {
        let multiplicity = table.multiplicity()?;
        let shifts = table.shift_summary();
        let (hhs_lower, hhs_upper) = hhs_bounds(&shifts, &multiplicity);
        let purity = table.purity();
        let pure_product = if purity.pure && table.codim() == table.projective_dimension() {
            Some(table.huneke_miller()?)
        } else {
            None
        };
        Ok(Self {
            table: table.clone(),
            shifts,
            multiplicity,
            hhs_lower,
            hhs_upper,
            purity,
            pure_product,
        })
    }
}

pub const CSV_HEADER: [&str; 21] = [
    "family",
    "t",
    "a",
    "b",
    "d",
    "m1",
    "m2",
    "m3",
    "M1",
    "M2",
    "M3",
    "e",
    "hhs_lower",
    "hhs_upper",
    "improved_lower",
    "improved_upper",
    "corner_upper",
    "srinivasan_lower",
    "srinivasan_upper",
    "pure",
    "quasi_pure",
];

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn nth(xs: &[u64], i: usize) -> String {
    xs.get(i).map(u64::to_string).unwrap_or_default()
}

impl Evaluation {
    /// One CSV record; lists are space separated and absent values empty.
    pub fn csv_record(&self) -> Vec<String> {
        let s = &self.shifts;
        let opt = |v: Option<&BoundVerdict>| v.map(|v| v.status().to_string()).unwrap_or_default();
        vec![
            self.instance.family().as_str().to_string(),
            self.instance.t().to_string(),
            join(self.instance.diagonal()),
            join(self.instance.superdiagonal()),
            self.instance
                .center()
                .map(|d| d.to_string())
                .unwrap_or_default(),
            nth(&s.min, 0),
            nth(&s.min, 1),
            nth(&s.min, 2),
            nth(&s.max, 0),
            nth(&s.max, 1),
            nth(&s.max, 2),
            self.multiplicity.to_string(),
            self.hhs_lower.status().to_string(),
            self.hhs_upper.status().to_string(),
            self.improved_lower.status().to_string(),
            self.improved_upper.status().to_string(),
            opt(self.corner.as_ref().map(|c| &c.bound)),
            opt(self.srinivasan.as_ref().map(|s| &s.lower)),
            opt(self.srinivasan.as_ref().map(|s| &s.upper)),
            self.purity.pure.to_string(),
            self.purity.quasi_pure.to_string(),
        ]
    }
}

/// Writes the header and one record per evaluation.
pub fn write_csv<'a, W: io::Write>(
    out: W,
    rows: impl IntoIterator<Item = &'a Evaluation>,
) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.csv_record())?;
    }
    w.flush()?;
    Ok(())
}

//! Command-line driver: argument parsing, input loading, and report
//! rendering. [`run`] does all the work and returns an exit status so tests
//! can drive it without spawning a process.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use multconj::evaluate::write_csv;
use multconj::sweep::{hunt, verify_all};
use multconj::{
    BettiTable, BoundVerdict, DegreeMatrix, DegreeMatrixCm2, DegreeMatrixGor3, Evaluation, Family,
    HuntConfig, HuntReport, HuntTarget, InputDoc, MonomialStaircase, Parallelism, RouteReport,
    SweepConfig, SweepReport, TableEvaluation,
};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FOUND: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "multconj",
    version,
    about = "Exact multiplicity bounds for codimension-2 CM and codimension-3 Gorenstein algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate degree matrices, monomial ideals, or Betti tables.
    Validate(InputArgs),
    /// Shifts, multiplicity, and every bound verdict for each input.
    Compute {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check every identity and bound on all matrices in a bounded range.
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search a bounded range for violations of an open bound.
    Hunt {
        /// srinivasan_upper_gor3 or prop24_bound (the corner-condition bound)
        #[arg(long)]
        target: String,
        /// Only report instances satisfying the bound's hypotheses.
        #[arg(long)]
        hypotheses_only: bool,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute each multiplicity by every available route and compare.
    OracleCheck {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Codimension-2 Cohen-Macaulay degree matrices.
    #[arg(long, conflicts_with = "gor3")]
    pub cm2: bool,
    /// Codimension-3 Gorenstein degree matrices.
    #[arg(long)]
    pub gor3: bool,
}

impl FamilyArgs {
    fn family(&self) -> Option<Family> {
        match (self.cm2, self.gor3) {
            (true, _) => Some(Family::Cm2),
            (_, true) => Some(Family::Gor3),
            _ => None,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Diagonal entries, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<u64>,
    /// Superdiagonal entries, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub b: Vec<u64>,
    /// Center entry (gor3 only).
    #[arg(long)]
    pub d: Option<u64>,
    /// JSON file holding one document or an array of documents.
    #[arg(long, conflicts_with_all = ["a", "b", "d"])]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long, default_value_t = 3)]
    pub t_max: usize,
    #[arg(long, default_value_t = 4)]
    pub entry_max: u64,
    /// Worker threads; 1 runs sequentially, omitted uses all cores.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Standard output, standard error, and exit status of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

pub fn run(cli: &Cli) -> Outcome {
    let mut outcome = Outcome::default();
    match dispatch(cli, &mut outcome) {
        Ok(code) => outcome.code = code,
        Err(err) => {
            let _ = writeln!(outcome.stderr, "error: {err:#}");
            outcome.code = EXIT_INVALID;
        }
    }
    outcome
}

fn dispatch(cli: &Cli, outcome: &mut Outcome) -> Result<u8> {
    match &cli.command {
        Command::Validate(input) => {
            let docs = load_inputs(input)?;
            for doc in &docs {
                writeln!(outcome.stdout, "valid: {}", serde_json::to_string(doc)?)?;
            }
            Ok(EXIT_OK)
        }
        Command::Compute { input, output } => {
            let docs = load_inputs(input)?;
            let body = render_compute(&docs, output.format)?;
            emit(outcome, output, body)?;
            Ok(EXIT_OK)
        }
        Command::Sweep {
            family,
            range,
            output,
        } => {
            let family = family.family().context("sweep needs --cm2 or --gor3")?;
            let mut config = SweepConfig::new(family, range.t_max, range.entry_max)
                .with_parallelism(Parallelism::from_jobs(range.jobs));
            if output.format == Format::Csv {
                config = config.with_rows();
            }
            let report = verify_all(&config);
            writeln!(
                outcome.stderr,
                "runtime: {:.3} s",
                report.runtime.as_secs_f64()
            )?;
            let body = render_sweep(&report, output.format)?;
            emit(outcome, output, body)?;
            Ok(if report.is_clean() {
                EXIT_OK
            } else {
                EXIT_FOUND
            })
        }
        Command::Hunt {
            target,
            hypotheses_only,
            range,
            output,
        } => {
            let target: HuntTarget = target.parse()?;
            let mut config = HuntConfig::new(target, range.t_max, range.entry_max);
            config.hypotheses_only = *hypotheses_only;
            config.parallelism = Parallelism::from_jobs(range.jobs);
            let report = hunt(&config);
            writeln!(
                outcome.stderr,
                "runtime: {:.3} s",
                report.runtime.as_secs_f64()
            )?;
            let body = render_hunt(&report, output.format)?;
            emit(outcome, output, body)?;
            Ok(if report.candidates.is_empty() {
                EXIT_OK
            } else {
                EXIT_FOUND
            })
        }
        Command::OracleCheck { input, output } => {
            let docs = load_inputs(input)?;
            let reports: Vec<(String, RouteReport)> = docs.iter().map(route_report).collect();
            let body = render_routes(&reports, output.format)?;
            emit(outcome, output, body)?;
            Ok(if reports.iter().all(|(_, r)| r.agree) {
                EXIT_OK
            } else {
                EXIT_FOUND
            })
        }
    }
}

fn emit(outcome: &mut Outcome, output: &OutputArgs, body: String) -> Result<()> {
    match &output.out {
        Some(path) => {
            let mut f =
                fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            f.write_all(body.as_bytes())?;
            writeln!(outcome.stdout, "wrote {}", path.display())?;
        }
        None => outcome.stdout.push_str(&body),
    }
    Ok(())
}

fn load_inputs(input: &InputArgs) -> Result<Vec<InputDoc>> {
    if let Some(path) = &input.input {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let docs =
            InputDoc::parse_many(&text).with_context(|| format!("parsing {}", path.display()))?;
        if docs.is_empty() {
            bail!("{} holds no documents", path.display());
        }
        return Ok(docs);
    }
    inline_matrix(input).map(|m| vec![InputDoc::Matrix(m)])
}

fn inline_matrix(input: &InputArgs) -> Result<DegreeMatrix> {
    let Some(family) = input.family.family() else {
        bail!("give --cm2 or --gor3 with --a/--b, or --input FILE");
    };
    let (a, b) = (input.a.clone(), input.b.clone());
    Ok(match family {
        Family::Cm2 => {
            if input.d.is_some() {
                bail!("--d only applies to --gor3");
            }
            DegreeMatrixCm2::validate(a, b)?.into()
        }
        Family::Gor3 => {
            let d = input.d.context("--gor3 needs --d")?;
            DegreeMatrixGor3::validate(a, b, d)?.into()
        }
    })
}

fn json_line<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn verdict_line(out: &mut String, v: &BoundVerdict, note: &str) {
    let _ = writeln!(out, "  {v}{note}");
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn shift_lines(out: &mut String, min: &[u64], max: &[u64]) {
    for (i, (lo, hi)) in min.iter().zip(max).enumerate() {
        let _ = writeln!(out, "  m{k}={lo} M{k}={hi}", k = i + 1);
    }
}

fn evaluation_text(out: &mut String, ev: &Evaluation) {
    let _ = writeln!(out, "{}", ev.instance);
    shift_lines(out, &ev.shifts.min, &ev.shifts.max);
    let _ = writeln!(out, "  e={}", ev.multiplicity);
    let _ = writeln!(
        out,
        "  pure: {}  quasi-pure: {}",
        yes_no(ev.purity.pure),
        yes_no(ev.purity.quasi_pure)
    );
    verdict_line(out, &ev.hhs_lower, "");
    verdict_line(out, &ev.hhs_upper, "");
    verdict_line(out, &ev.improved_lower, "");
    verdict_line(out, &ev.improved_upper, "");
    if let Some(c) = &ev.corner {
        let note = format!(
            " (all entries >= 2: {}, corner condition: {})",
            yes_no(c.entries_at_least_two),
            yes_no(c.corner_condition)
        );
        verdict_line(out, &c.bound, &note);
    }
    if let Some(s) = &ev.srinivasan {
        let note = format!(" (quasi-pure: {})", yes_no(s.quasi_pure));
        verdict_line(out, &s.lower, &note);
        verdict_line(out, &s.upper, &note);
    }
}

fn table_text(out: &mut String, ev: &TableEvaluation) {
    let _ = writeln!(out, "betti table, codim {}", ev.table.codim());
    for i in 1..=ev.table.projective_dimension() {
        let entries: Vec<String> = ev.table.step(i).map(|(s, r)| format!("{s}^{r}")).collect();
        let _ = writeln!(out, "  step {i}: {}", entries.join(" "));
    }
    shift_lines(out, &ev.shifts.min, &ev.shifts.max);
    let _ = writeln!(out, "  e={}", ev.multiplicity);
    let _ = writeln!(
        out,
        "  pure: {}  quasi-pure: {}",
        yes_no(ev.purity.pure),
        yes_no(ev.purity.quasi_pure)
    );
    if let Some(p) = &ev.pure_product {
        let _ = writeln!(out, "  pure product ∏d_i/p! = {p}");
    }
    verdict_line(out, &ev.hhs_lower, "");
    verdict_line(out, &ev.hhs_upper, "");
}

fn staircase_text(out: &mut String, s: &MonomialStaircase) {
    let gens: Vec<String> = s
        .gens()
        .iter()
        .map(|(p, q)| format!("x^{p}y^{q}"))
        .collect();
    let _ = writeln!(out, "monomial ideal ({})", gens.join(", "));
    let _ = writeln!(out, "  colength={}", s.colength());
}

#[derive(Serialize)]
#[serde(untagged)]
enum Computed {
    Matrix(Box<Evaluation>),
    Table(Box<TableEvaluation>),
    Monomial {
        gens: MonomialStaircase,
        #[serde(serialize_with = "big_json")]
        colength: num_bigint::BigInt,
    },
}

fn big_json<S: serde::Serializer>(x: &num_bigint::BigInt, s: S) -> Result<S::Ok, S::Error> {
    let n: serde_json::Number = x.to_string().parse().map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

fn compute_one(doc: &InputDoc) -> Result<Computed> {
    Ok(match doc {
        InputDoc::Matrix(m) => Computed::Matrix(Box::new(Evaluation::of(m)?)),
        InputDoc::Betti(t) => Computed::Table(Box::new(TableEvaluation::of(t)?)),
        InputDoc::Monomial(s) => Computed::Monomial {
            gens: s.clone(),
            colength: s.colength(),
        },
    })
}

fn render_compute(docs: &[InputDoc], format: Format) -> Result<String> {
    let computed = docs.iter().map(compute_one).collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => json_line(&computed),
        Format::Csv => {
            let rows: Vec<&Evaluation> = computed
                .iter()
                .map(|c| match c {
                    Computed::Matrix(ev) => Ok(ev.as_ref()),
                    _ => Err(anyhow::anyhow!("csv output needs degree-matrix inputs")),
                })
                .collect::<Result<_>>()?;
            csv_string(rows)
        }
        Format::Text => {
            let mut out = String::new();
            for (i, c) in computed.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                match c {
                    Computed::Matrix(ev) => evaluation_text(&mut out, ev),
                    Computed::Table(ev) => table_text(&mut out, ev),
                    Computed::Monomial { gens, .. } => staircase_text(&mut out, gens),
                }
            }
            Ok(out)
        }
    }
}

fn csv_string<'a>(rows: impl IntoIterator<Item = &'a Evaluation>) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows)?;
    Ok(String::from_utf8(buf)?)
}

fn render_sweep(report: &SweepReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json_line(report),
        Format::Csv => csv_string(&report.rows),
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "sweep {} t<={} entries<={}",
                report.family, report.t_max, report.entry_max
            )?;
            writeln!(out, "instances checked: {}", report.instances_checked)?;
            writeln!(out, "pure instances: {}", report.pure_instances)?;
            writeln!(out, "sharp cases: {}", report.sharp_cases.len())?;
            if report.family == Family::Cm2 {
                let with_hyp = report
                    .corner_bound_findings
                    .iter()
                    .filter(|f| f.entries_at_least_two || f.corner_condition)
                    .count();
                writeln!(
                    out,
                    "corner-bound failures: {} ({} with hypotheses satisfied)",
                    report.corner_bound_findings.len(),
                    with_hyp
                )?;
            }
            writeln!(out, "anomalies: {}", report.anomalies.len())?;
            for a in &report.anomalies {
                writeln!(out, "  {} [{:?}] {}", a.instance, a.check, a.detail)?;
            }
            Ok(out)
        }
    }
}

fn render_hunt(report: &HuntReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json_line(report),
        Format::Csv => csv_string(&report.candidates),
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "hunt {} t<={} entries<={} hypotheses only: {}",
                report.target,
                report.t_max,
                report.entry_max,
                yes_no(report.hypotheses_only)
            )?;
            writeln!(out, "instances checked: {}", report.instances_checked)?;
            writeln!(out, "candidates: {}", report.candidates.len())?;
            for ev in &report.candidates {
                out.push('\n');
                evaluation_text(&mut out, ev);
            }
            Ok(out)
        }
    }
}

fn route_report(doc: &InputDoc) -> (String, RouteReport) {
    match doc {
        InputDoc::Matrix(m) => (m.to_string(), RouteReport::for_matrix(m)),
        InputDoc::Betti(t) => (table_label(t), RouteReport::for_table(t)),
        InputDoc::Monomial(s) => ("monomial2".to_string(), RouteReport::for_staircase(s)),
    }
}

fn table_label(t: &BettiTable) -> String {
    format!(
        "betti table codim {} pd {}",
        t.codim(),
        t.projective_dimension()
    )
}

fn render_routes(reports: &[(String, RouteReport)], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = reports
                .iter()
                .map(|(label, r)| {
                    let mut v = serde_json::to_value(r)?;
                    v["input"] = serde_json::Value::String(label.clone());
                    Ok(v)
                })
                .collect::<Result<_>>()?;
            json_line(&items)
        }
        Format::Csv => bail!("oracle-check supports text and json output"),
        Format::Text => {
            let mut out = String::new();
            for (label, r) in reports {
                let routes: Vec<String> = r
                    .routes
                    .iter()
                    .map(|route| match (&route.value, &route.error) {
                        (Some(v), _) => format!("{}={v}", route.name),
                        (None, Some(e)) => format!("{}=error({e})", route.name),
                        (None, None) => format!("{}=?", route.name),
                    })
                    .collect();
                let verdict = if r.agree { "agree" } else { "DISAGREE" };
                writeln!(out, "{label}: {} {verdict}", routes.join(" "))?;
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let cli =
            Cli::try_parse_from(std::iter::once("multconj").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn inline_matrices() {
        let out = run_args(&["validate", "--cm2", "--a", "1,2", "--b", "2,2"]);
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(
            out.stdout,
            "valid: {\"type\":\"cm2\",\"a\":[1,2],\"b\":[2,2]}\n"
        );
        let out = run_args(&["validate", "--gor3", "--a", "1", "--b", "1"]);
        assert_eq!(out.code, EXIT_INVALID);
        assert!(out.stderr.contains("--gor3 needs --d"));
        let out = run_args(&["validate", "--cm2", "--a", "1", "--b", "1", "--d", "3"]);
        assert_eq!(out.code, EXIT_INVALID);
        let out = run_args(&["validate", "--a", "1", "--b", "1"]);
        assert_eq!(out.code, EXIT_INVALID);
    }

    #[test]
    fn family_flags_conflict() {
        let parsed = Cli::try_parse_from(["multconj", "sweep", "--cm2", "--gor3"]);
        assert!(parsed.is_err());
    }

    #[test]
    fn compute_text_is_stable() {
        let args = ["compute", "--gor3", "--a", "1,1", "--b", "2,1", "--d", "1"];
        let first = run_args(&args);
        assert_eq!(first.code, EXIT_OK);
        assert_eq!(first.stdout, run_args(&args).stdout);
        assert!(first
            .stdout
            .starts_with("gor3 a=1,1 b=2,1 d=1\n  m1=2 M1=4\n  m2=3 M2=5\n  m3=7 M3=7\n  e=12\n"));
    }

    #[test]
    fn oracle_check_csv_is_rejected() {
        let out = run_args(&[
            "oracle-check",
            "--cm2",
            "--a",
            "1",
            "--b",
            "1",
            "--format",
            "csv",
        ]);
        assert_eq!(out.code, EXIT_INVALID);
    }
}

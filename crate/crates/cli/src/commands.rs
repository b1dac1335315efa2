use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;

use qhom::algebra::{parse_table, resolve};
use qhom::homotopy::{
    verify_chain_maps, verify_composite_homotopy, verify_corollary_identities, verify_homotopy_identity_d,
    verify_homotopy_identity_f, verify_precubic_homotopy, PrecubicHomotopyData, VerificationReport, VerifyOptions,
};
use qhom::{AxiomReport, ChainComplex, ComplexTheory, DistributiveSet, FiniteBinaryOp, FiniteQuandle, MultiTermSpec};

use crate::args::{Degrees, Format, Identity, RunArgs, TheoryArg};
use crate::cache::Cache;
use crate::engine::{check_guard, run_jobs, Job};
use crate::record::{csv_row, tables_sha256, text_table, QuandleInfo, ResultRecord, CSV_HEADER};
use crate::{CliError, Outcome};

fn load(source: &str) -> Result<FiniteQuandle, CliError> {
    Ok(resolve(source)?)
}

fn info(q: &FiniteQuandle) -> QuandleInfo {
    QuandleInfo {
        label: q.label().to_string(),
        size: q.size(),
        table_sha256: tables_sha256(&[q.op()]),
    }
}

fn theory_of(arg: TheoryArg, reduced: bool) -> ComplexTheory {
    match arg {
        TheoryArg::Rack => ComplexTheory::Rack,
        TheoryArg::Degenerate => ComplexTheory::Degenerate,
        TheoryArg::Quandle if reduced => ComplexTheory::ReducedQuandle,
        TheoryArg::Quandle => ComplexTheory::Quandle,
        TheoryArg::ReducedQuandle => ComplexTheory::ReducedQuandle,
    }
}

fn mark(passed: bool) -> &'static str {
    if passed {
        "yes"
    } else {
        "no"
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- validate

#[derive(Serialize)]
struct Validation {
    label: String,
    size: usize,
    axioms: AxiomReport,
    orbits: Option<usize>,
    connected: Option<bool>,
    inner_group_order: Option<u64>,
}

pub fn validate(source: &str, inner_group: bool, format: Format) -> Result<Outcome, CliError> {
    let (label, op) = match resolve(source) {
        Ok(q) => (q.label().to_string(), q.op().clone()),
        Err(qhom::Error::NotAQuandle { .. }) if Path::new(source).exists() => {
            let text = std::fs::read_to_string(source).map_err(qhom::Error::from)?;
            let label = Path::new(source)
                .file_stem()
                .map_or_else(|| source.to_string(), |s| s.to_string_lossy().into_owned());
            (label, parse_table(&text)?)
        }
        Err(e) => return Err(e.into()),
    };
    let axioms = op.validate();
    let quandle = FiniteQuandle::new(op.clone(), label.clone()).ok();
    let v = Validation {
        label,
        size: op.size(),
        orbits: quandle.as_ref().map(|q| q.orbits().len()),
        connected: quandle.as_ref().map(FiniteQuandle::is_connected),
        inner_group_order: (inner_group && axioms.rack.passed).then(|| qhom::algebra::inner_group_order(&op)),
        axioms,
    };
    let text = match format {
        Format::Json => json(&v),
        Format::Csv => {
            let opt = |o: Option<String>| o.unwrap_or_default();
            format!(
                "label,size,shelf,rack,quandle,quasigroup,orbits,connected,inner_group_order\n{},{},{},{},{},{},{},{},{}\n",
                v.label,
                v.size,
                v.axioms.shelf.passed,
                v.axioms.rack.passed,
                v.axioms.quandle.passed,
                v.axioms.quasigroup.passed,
                opt(v.orbits.map(|o| o.to_string())),
                opt(v.connected.map(|c| c.to_string())),
                opt(v.inner_group_order.map(|o| o.to_string())),
            )
        }
        Format::Text => validation_text(&v),
    };
    Ok(Outcome::ok(text))
}

fn validation_text(v: &Validation) -> String {
    let mut out = format!("{} (size {})\n", v.label, v.size);
    let checks = [
        ("shelf", &v.axioms.shelf),
        ("rack", &v.axioms.rack),
        ("quandle", &v.axioms.quandle),
        ("quasigroup", &v.axioms.quasigroup),
    ];
    for (name, check) in checks {
        let verdict = if check.passed { "\u{2713}" } else { "\u{2717}" };
        match &check.witness {
            Some(w) => writeln!(out, "  {name:<11}{verdict}  {w}").unwrap(),
            None => writeln!(out, "  {name:<11}{verdict}").unwrap(),
        }
    }
    if let (Some(orbits), Some(connected)) = (v.orbits, v.connected) {
        writeln!(out, "  orbits     {orbits}").unwrap();
        writeln!(out, "  connected  {}", mark(connected)).unwrap();
    }
    if let Some(order) = v.inner_group_order {
        writeln!(out, "  inner group order  {order}").unwrap();
    }
    out
}

// ---------------------------------------------------------------- homology

fn render_records(records: &[ResultRecord], format: Format) -> String {
    match format {
        Format::Json => json(records),
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for r in records {
                out.push_str(&csv_row(r));
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.quandle.label.clone(),
                        r.theory.clone(),
                        r.degree.to_string(),
                        r.group().to_string(),
                        r.free_rank.to_string(),
                        r.exponent_text(),
                        r.ms.to_string(),
                    ]
                })
                .collect();
            text_table(&["quandle", "theory", "n", "H_n", "free", "exponent", "ms"], &rows)
        }
    }
}

pub fn homology(
    sources: &[String],
    theories: &[TheoryArg],
    reduced: bool,
    degrees: Degrees,
    run: &RunArgs,
) -> Result<Outcome, CliError> {
    let quandles = sources.iter().map(|s| load(s)).collect::<Result<Vec<_>, _>>()?;
    let mut jobs = Vec::new();
    for q in &quandles {
        check_guard(q.label(), q.size(), degrees, run.force)?;
        for &t in theories {
            let theory = theory_of(t, reduced);
            jobs.push(Job {
                info: info(q),
                theory: theory.name(),
                complex: ChainComplex::new(q, theory)?,
            });
        }
    }
    let records = run_jobs(&jobs, degrees, &Cache::from_env(run.no_cache))?;
    Ok(Outcome::ok(render_records(&records, run.format)))
}

// ---------------------------------------------------------------- verify

fn identity_reports(
    q: &FiniteQuandle,
    identity: Identity,
    n: usize,
    j: Option<usize>,
    opts: &VerifyOptions,
) -> Result<VerificationReport, CliError> {
    let indexed = |label: &str, one: &dyn Fn(usize) -> qhom::Result<VerificationReport>| {
        let Some(j) = j else {
            let mut all = one(1)?;
            for j in 2..=n {
                all.merge(one(j)?);
            }
            all.identity = format!("{label}^j homotopy, j = 1..{n}");
            return Ok::<_, CliError>(all);
        };
        Ok(one(j)?)
    };
    if j.is_some() && !matches!(identity, Identity::D | Identity::F) {
        return Err(CliError::Input("--j applies only to the D and F identities".into()));
    }
    Ok(match identity {
        Identity::D => indexed("D", &|j| verify_homotopy_identity_d(q, j, n, opts))?,
        Identity::F => indexed("F", &|j| verify_homotopy_identity_f(q, j, n, opts))?,
        Identity::G => verify_composite_homotopy(q, n, opts)?,
        Identity::Corollary => verify_corollary_identities(q, n, opts)?,
        Identity::Precubic => verify_precubic_homotopy(&PrecubicHomotopyData::rack_instance(q), n, opts)?,
        Identity::ChainMaps => verify_chain_maps(q, n, opts)?,
    })
}

fn report_text(report: &VerificationReport) -> String {
    let verdict = if report.passed { "PASS" } else { "FAIL" };
    let mut out = format!(
        "{} on {}, degree {}: {verdict}\n",
        report.identity, report.subject, report.degree
    );
    for note in &report.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    let rows: Vec<Vec<String>> = report
        .clauses
        .iter()
        .map(|c| {
            let result = match (c.passed, c.informational) {
                (true, _) => "pass",
                (false, true) => "fail (info)",
                (false, false) => "FAIL",
            };
            vec![
                c.name.clone(),
                result.to_string(),
                c.checked.to_string(),
                c.basis_size.to_string(),
                mark(c.sampled).to_string(),
            ]
        })
        .collect();
    out.push_str(&text_table(&["clause", "result", "checked", "basis", "sampled"], &rows));
    for c in report.clauses.iter().filter(|c| !c.passed) {
        if let Some(w) = &c.witness {
            writeln!(out, "witness for {}: at {}\n  lhs = {}\n  rhs = {}", c.name, w.tuple, w.lhs, w.rhs).unwrap();
        }
    }
    out
}

fn report_csv(report: &VerificationReport) -> String {
    let mut out = String::from("identity,subject,degree,clause,passed,informational,checked,basis_size,sampled,witness\n");
    for c in &report.clauses {
        let witness = c.witness.as_ref().map(|w| w.tuple.to_string()).unwrap_or_default();
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            quote(&report.identity),
            quote(&report.subject),
            report.degree,
            quote(&c.name),
            c.passed,
            c.informational,
            c.checked,
            c.basis_size,
            c.sampled,
            quote(&witness)
        )
        .unwrap();
    }
    out
}

pub fn verify(
    source: &str,
    identity: Identity,
    degree: usize,
    j: Option<usize>,
    expect_failure: bool,
    sample: bool,
    run: &RunArgs,
) -> Result<Outcome, CliError> {
    if degree == 0 {
        return Err(CliError::Input("--degree must be at least 1".into()));
    }
    let q = load(source)?;
    let basis = (q.size() as u128).saturating_pow(degree as u32);
    if !sample && basis > run.budget as u128 {
        return Err(CliError::Input(format!(
            "{}; pass --sample to check a stratified sample",
            qhom::Error::BudgetExceeded {
                evaluations: basis.min(u64::MAX as u128) as u64,
                budget: run.budget,
            }
        )));
    }
    let opts = VerifyOptions {
        budget: if sample { run.budget } else { u64::MAX },
        expect_failure,
    };
    let report = identity_reports(&q, identity, degree, j, &opts)?;
    let mut text = match run.format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Csv => report_csv(&report),
        Format::Text => report_text(&report),
    };
    let code = match (report.passed, expect_failure) {
        (true, false) | (false, true) => 0,
        (false, false) => 1,
        (true, true) => {
            if run.format == Format::Text {
                text.push_str("expected a failure, but every clause held\n");
            }
            1
        }
    };
    Ok(Outcome { text, code })
}

// ---------------------------------------------------------------- theorem

/// Whether the torsion of a record is killed by the predicted bound.
#[derive(Serialize)]
struct BoundRow {
    #[serde(flatten)]
    record: ResultRecord,
    #[serde(with = "qhom::serde_int")]
    bound: BigInt,
    bound_kind: &'static str,
    divides: bool,
    /// `yes`/`no` when the hypotheses hold, `N-A` otherwise.
    theorem: &'static str,
}

impl BoundRow {
    fn new(record: ResultRecord, bound: BigInt, bound_kind: &'static str, applicable: bool) -> Self {
        let divides = record.group().torsion_annihilated_by(&bound);
        let theorem = match (applicable, divides) {
            (false, _) => "N-A",
            (true, true) => "yes",
            (true, false) => "no",
        };
        BoundRow {
            record,
            bound,
            bound_kind,
            divides,
            theorem,
        }
    }

    fn violated(&self) -> bool {
        self.theorem == "no"
    }
}

fn render_bounds(rows: &[BoundRow], format: Format) -> String {
    match format {
        Format::Json => json(rows),
        Format::Csv => {
            let mut out = format!("{CSV_HEADER},bound,bound_kind,divides,theorem\n");
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    csv_row(&r.record),
                    r.bound,
                    r.bound_kind,
                    r.divides,
                    r.theorem
                )
                .unwrap();
            }
            out
        }
        Format::Text => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.record.quandle.label.clone(),
                        r.record.theory.clone(),
                        r.record.degree.to_string(),
                        r.record.free_rank.to_string(),
                        r.record.group().to_string(),
                        r.record.exponent_text(),
                        format!("{} ({})", r.bound, r.bound_kind),
                        mark(r.divides).to_string(),
                        r.theorem.to_string(),
                    ]
                })
                .collect();
            let mut out = text_table(
                &["quandle", "theory", "n", "free", "H_n", "exponent", "bound", "divides", "theorem"],
                &table,
            );
            let violations = rows.iter().filter(|r| r.violated()).count();
            if violations > 0 {
                writeln!(out, "{violations} row(s) violate the annihilation bound").unwrap();
            }
            out
        }
    }
}

fn outcome_for(rows: &[BoundRow], format: Format) -> Outcome {
    let code = u8::from(rows.iter().any(BoundRow::violated));
    Outcome {
        text: render_bounds(rows, format),
        code,
    }
}

pub fn theorem(sources: &[String], theory: TheoryArg, degrees: Degrees, run: &RunArgs) -> Result<Outcome, CliError> {
    let quandles = sources.iter().map(|s| load(s)).collect::<Result<Vec<_>, _>>()?;
    let theory = theory_of(theory, false);
    let mut jobs = Vec::new();
    for q in &quandles {
        check_guard(q.label(), q.size(), degrees, run.force)?;
        jobs.push(Job {
            info: info(q),
            theory: theory.name(),
            complex: ChainComplex::new(q, theory.clone())?,
        });
    }
    let records = run_jobs(&jobs, degrees, &Cache::from_env(run.no_cache))?;
    let per_quandle = degrees.hi - degrees.lo + 1;
    let rows: Vec<BoundRow> = records
        .into_iter()
        .enumerate()
        .map(|(i, rec)| {
            let q = &quandles[i / per_quandle];
            if q.is_quasigroup() {
                BoundRow::new(rec, BigInt::from(q.size()), "|Q|", true)
            } else {
                BoundRow::new(rec, BigInt::from(q.inner_group_order()), "inner group order", false)
            }
        })
        .collect();
    Ok(outcome_for(&rows, run.format))
}

// ---------------------------------------------------------------- multiterm

pub fn multiterm(ops: &[String], coeffs: &[i64], degrees: Degrees, run: &RunArgs) -> Result<Outcome, CliError> {
    let names: Vec<&String> = ops.iter().skip_while(|s| s.as_str() == "*0").collect();
    if names.is_empty() {
        return Err(CliError::Input("at least one operation besides *0 is required".into()));
    }
    let quandles = names.iter().map(|s| load(s)).collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&FiniteQuandle> = quandles.iter().collect();
    let dset = DistributiveSet::with_trivial(&refs)?;
    if let Some(p) = dset.validate().first_failure() {
        let name = |i: usize| if i == 0 { "*0".to_string() } else { quandles[i - 1].label().to_string() };
        let witness = p.check.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        return Err(CliError::Input(format!(
            "{} does not distribute over {} at {witness}",
            name(p.right),
            name(p.left)
        )));
    }
    let spec = MultiTermSpec::new(dset, coeffs.to_vec())?;
    let hyp = spec.hypotheses();
    if !hyp.coefficient_sum_zero || !hyp.leading_nonzero {
        let v = hyp.violation().expect("a hypothesis failed");
        return Err(qhom::Error::Hypothesis(v.to_string()).into());
    }
    let size = spec.size();
    let label = format!(
        "(*0,{})",
        quandles.iter().map(|q| q.label()).collect::<Vec<_>>().join(",")
    );
    check_guard(&label, size, degrees, run.force)?;
    let tables: Vec<&FiniteBinaryOp> = spec.dset.ops().iter().collect();
    let job = Job {
        info: QuandleInfo {
            label,
            size,
            table_sha256: tables_sha256(&tables),
        },
        theory: spec.theory_label(),
        complex: ChainComplex::multi_term(&spec),
    };
    let records = run_jobs(std::slice::from_ref(&job), degrees, &Cache::from_env(run.no_cache))?;
    let bound = BigInt::from(coeffs[0].unsigned_abs()) * BigInt::from(size);
    let rows: Vec<BoundRow> = records
        .into_iter()
        .map(|rec| BoundRow::new(rec, bound.clone(), "|a_0|*|X|", hyp.quasigroup_quandles))
        .collect();
    Ok(outcome_for(&rows, run.format))
}

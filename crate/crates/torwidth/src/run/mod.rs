//! Job execution: one function per CLI command.
//!
//! Each driver takes a parsed job, runs the engine, and renders a
//! certificate. Errors carry the process exit code: 1 for input problems,
//! 2 for precondition failures (a non-acyclic complex, a degenerate graph
//! factor, a representation that is not good), 3 for an exhausted search
//! budget. A driver that can still say something useful (a zero torsion, a
//! partial search table) returns its certificate together with a
//! non-success status instead of failing.

use std::fmt;

use crate::certificate::Certificate;
use crate::graph::{graph_torsion, GraphEdge, GraphError, GraphStructure, GraphVertex, Side};
use crate::group::{reidemeister_schreier, CosetTable, GroupError, Presentation, SchreierData};
use crate::job::{
    self, print_job, FieldSpec, GraphJob, JobError, JobSpec, PresentationJob, RepSpec,
};
use crate::rep::{RepError, Representation};
use crate::search::{run_search, RowRep, SearchRow};
use crate::torsion::{
    bound_report, find_good_prime, modp_compare, torsion, BoundReport, TorsionError,
};
use crate::algebra::{AlgebraError, Field};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Torsion,
    Search,
    Graph,
    Modp,
    GoodPrime,
    Cover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Success,
    /// The result exists but the complex was not acyclic (or a factor
    /// degenerated); exit code 2.
    Degenerate,
    /// A partial table hit the budget; exit code 3.
    BudgetExhausted,
}

impl RunStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Success => 0,
            RunStatus::Degenerate => 2,
            RunStatus::BudgetExhausted => 3,
        }
    }
}

#[derive(Debug)]
pub struct RunOutput {
    pub certificate: Certificate,
    pub status: RunStatus,
}

/// A failure with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunError {
    pub message: String,
    pub exit_code: i32,
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for RunError {}

fn input_error(message: impl Into<String>) -> RunError {
    RunError { message: message.into(), exit_code: 1 }
}

impl From<JobError> for RunError {
    fn from(e: JobError) -> RunError {
        input_error(e.to_string())
    }
}

impl From<GroupError> for RunError {
    fn from(e: GroupError) -> RunError {
        input_error(e.to_string())
    }
}

impl From<RepError> for RunError {
    fn from(e: RepError) -> RunError {
        input_error(e.to_string())
    }
}

impl From<AlgebraError> for RunError {
    fn from(e: AlgebraError) -> RunError {
        input_error(e.to_string())
    }
}

impl From<TorsionError> for RunError {
    fn from(e: TorsionError) -> RunError {
        let exit_code = match e {
            TorsionError::NotAcyclic | TorsionError::ColumnDisagreement => 2,
            TorsionError::PsiBoundExhausted(_) => 3,
            _ => 1,
        };
        RunError { message: e.to_string(), exit_code }
    }
}

impl From<GraphError> for RunError {
    fn from(e: GraphError) -> RunError {
        let exit_code = match e {
            GraphError::NotGood
            | GraphError::VanishingFactor { .. }
            | GraphError::SeifertVanishing { .. } => 2,
            _ => 1,
        };
        RunError { message: e.to_string(), exit_code }
    }
}

pub fn run_command(cmd: Command, spec: &JobSpec) -> Result<RunOutput, RunError> {
    match cmd {
        Command::Torsion => run_torsion(spec),
        Command::Search => run_search_command(spec),
        Command::Graph => run_graph(spec),
        Command::Modp => run_modp(spec),
        Command::GoodPrime => run_goodprime(spec),
        Command::Cover => run_cover(spec),
    }
}

fn presentation_job(spec: &JobSpec) -> Result<&PresentationJob, RunError> {
    match spec {
        JobSpec::Presentation(job) => Ok(job),
        _ => Err(input_error("this command needs a presentation job")),
    }
}

fn resolve_field(spec: FieldSpec, n: u64) -> Result<Field, RunError> {
    let field = match spec {
        FieldSpec::Rational => Field::rational(),
        FieldSpec::Cyclotomic => {
            let n = u32::try_from(n).map_err(|_| input_error(format!("order {n} too large")))?;
            Field::Cyclotomic(n)
        }
        FieldSpec::Prime(q) => Field::Prime(q),
    };
    field.validate()?;
    Ok(field)
}

/// Builds the representation a presentation job asks for. `alpha` values
/// are read against `p`, which is the base presentation for direct specs
/// and the cover presentation when called from induction.
fn realize_rep(spec: &RepSpec, p: &Presentation) -> Result<Representation, RunError> {
    match spec {
        RepSpec::Trivial => Ok(Representation::trivial(Field::rational(), p.gens())),
        RepSpec::Character { n, j, field, alpha } => {
            let alpha = alpha
                .as_ref()
                .ok_or_else(|| input_error("character spec needs alpha= values here"))?;
            let field = resolve_field(*field, *n)?;
            Ok(Representation::cyclic_character(field, *n, *j)?.restrict(p, alpha)?)
        }
        RepSpec::Augmentation { n, field, alpha } => {
            let alpha = alpha
                .as_ref()
                .ok_or_else(|| input_error("augmentation spec needs alpha= values here"))?;
            let field = resolve_field(*field, *n)?;
            Ok(Representation::augmentation(field, *n)?.restrict(p, alpha)?)
        }
        RepSpec::Induced { n, alpha, inner } => {
            let (schreier, _) = build_cover(p, alpha, *n)?;
            let inner_rep = realize_rep(inner, &schreier.presentation)?;
            Ok(inner_rep.induce(p, &schreier)?)
        }
    }
}

fn build_cover(
    p: &Presentation,
    alpha: &[i64],
    n: u64,
) -> Result<(SchreierData, CosetTable), RunError> {
    let table = CosetTable::from_character(p, alpha, n)?;
    let schreier = reidemeister_schreier(p, &table);
    Ok((schreier, table))
}

fn push_presentation(c: &mut Certificate, job: &PresentationJob) {
    c.push("generators", job.presentation.names().join(" "));
    for r in job.presentation.relators() {
        c.push("relator", job.presentation.word_to_string(r));
    }
    c.push("theta", job::spaced(job.theta.values()));
    c.push("rep", &job.rep);
}

fn push_bound(c: &mut Certificate, report: &BoundReport) {
    c.push("width", report.width);
    c.push("bound", report.lower_bound);
    c.push("ceil-bound", report.ceil_bound);
    if let Some(norm) = report.reference_norm {
        c.push("reference-norm", norm);
        let verdict = match (report.consistent, report.detected) {
            (Some(false), _) => "inconsistent",
            (_, Some(true)) => "detected",
            _ => "bound-only",
        };
        c.push("verdict", verdict);
    }
}

fn run_torsion(spec: &JobSpec) -> Result<RunOutput, RunError> {
    let job = presentation_job(spec)?;
    let canonical = print_job(spec);
    let rep = realize_rep(&job.rep, &job.presentation)?;
    let value = torsion(&job.presentation, &job.theta, &rep)?;
    let report = bound_report(&value, rep.dim(), job.reference.as_ref().map(|r| r.value));
    let mut c = Certificate::head("torsion", &canonical);
    push_presentation(&mut c, job);
    c.push("provenance", rep.provenance());
    c.push("field", rep.field());
    c.push("dim", rep.dim());
    c.push("acyclic", value.is_acyclic());
    let (num, den) = value.normalized();
    c.push("numerator", &num);
    c.push("denominator", &den);
    push_bound(&mut c, &report);
    if let Some(r) = &job.reference {
        c.push("reference-note", &r.note);
    }
    let status = if value.is_acyclic() { RunStatus::Success } else { RunStatus::Degenerate };
    Ok(RunOutput { certificate: c, status })
}

fn format_row(row: &SearchRow, with_reference: bool) -> String {
    let mut out = format!("n={}", row.n);
    match &row.rep {
        RowRep::Trivial => out.push_str(" rep=trivial"),
        RowRep::Character { j } => out.push_str(&format!(" rep=character(j={j})")),
        RowRep::Augmentation => out.push_str(" rep=augmentation"),
    }
    if row.rep != RowRep::Trivial {
        out.push_str(&format!(" alpha={}", job::list(&row.alpha)));
    }
    out.push_str(&format!(
        " field={} dim={} acyclic={} width={} bound={}",
        row.field, row.dim, row.report.acyclic, row.report.width, row.report.lower_bound
    ));
    if with_reference {
        let detected = matches!(row.report.detected, Some(true));
        out.push_str(&format!(" detected={detected}"));
    }
    out
}

fn run_search_command(spec: &JobSpec) -> Result<RunOutput, RunError> {
    let job = presentation_job(spec)?;
    let canonical = print_job(spec);
    let reference = job.reference.as_ref().map(|r| r.value);
    let outcome = run_search(&job.presentation, &job.theta, &job.search, &job.primes, reference)?;
    let mut c = Certificate::head("search", &canonical);
    push_presentation(&mut c, job);
    c.push("n-max", job.search.effective_n_max());
    if !job.primes.is_empty() {
        let listed: Vec<String> = job.primes.iter().map(|q| q.to_string()).collect();
        c.push("primes", listed.join(" "));
    }
    if let Some(r) = &job.reference {
        c.push("reference-norm", r.value);
        c.push("reference-note", &r.note);
    }
    for row in &outcome.rows {
        c.push("row", format_row(row, reference.is_some()));
    }
    c.push("rows", outcome.rows.len());
    c.push("best", format_row(&outcome.rows[outcome.best], reference.is_some()));
    c.push("budget-exhausted", outcome.budget_exhausted);
    let status = if outcome.budget_exhausted {
        RunStatus::BudgetExhausted
    } else {
        RunStatus::Success
    };
    Ok(RunOutput { certificate: c, status })
}

fn graph_structure(job: &GraphJob) -> Result<GraphStructure, RunError> {
    let vertex_index = |name: &str| -> Result<usize, RunError> {
        job.vertices
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| input_error(format!("unknown vertex {name:?}")))
    };
    let vertices = job
        .vertices
        .iter()
        .map(|v| GraphVertex {
            name: v.name.clone(),
            side: if v.plus_side { Side::Plus } else { Side::Minus },
            chi: v.chi,
            m: v.m,
            alpha: v.alpha,
            slots: v.slots,
        })
        .collect();
    let edges = job
        .edges
        .iter()
        .map(|((an, asl), (bn, bsl))| {
            Ok(GraphEdge { from: (vertex_index(an)?, *asl), to: (vertex_index(bn)?, *bsl) })
        })
        .collect::<Result<Vec<_>, RunError>>()?;
    Ok(GraphStructure { vertices, edges })
}

fn realize_cyclic_rep(spec: &RepSpec) -> Result<Representation, RunError> {
    match spec {
        RepSpec::Character { n, j, field, alpha: None } => {
            Ok(Representation::cyclic_character(resolve_field(*field, *n)?, *n, *j)?)
        }
        RepSpec::Augmentation { n, field, alpha: None } => {
            Ok(Representation::augmentation(resolve_field(*field, *n)?, *n)?)
        }
        RepSpec::Character { alpha: Some(_), .. } | RepSpec::Augmentation { alpha: Some(_), .. } => {
            Err(input_error("graph reps act on the cyclic quotient; drop the alpha= values"))
        }
        _ => Err(input_error("graph jobs need a cyclic rep: character or augmentation")),
    }
}

fn run_graph(spec: &JobSpec) -> Result<RunOutput, RunError> {
    let job = match spec {
        JobSpec::Graph(job) => job,
        _ => return Err(input_error("the graph command needs a graph job")),
    };
    let canonical = print_job(spec);
    let g = graph_structure(job)?;
    let rep = realize_cyclic_rep(&job.rep)?;
    let report = graph_torsion(&g, &rep)?;
    let mut c = Certificate::head("graph", &canonical);
    for v in &job.vertices {
        c.push(
            "vertex",
            format!(
                "{} side={} chi={} m={} alpha={} slots={}",
                v.name,
                if v.plus_side { "+" } else { "-" },
                v.chi,
                v.m,
                v.alpha,
                v.slots
            ),
        );
    }
    for ((an, asl), (bn, bsl)) in &job.edges {
        c.push("edge", format!("{an}.{asl} {bn}.{bsl}"));
    }
    c.push("rep", &job.rep);
    c.push("provenance", rep.provenance());
    c.push("field", rep.field());
    c.push("dim", report.dim);
    for f in &report.factors {
        c.push(
            "factor",
            format!(
                "{} chi={} m={} alpha-used={} width={} poly={}",
                f.name, f.chi, f.m, f.alpha_used, f.width, f.poly
            ),
        );
    }
    c.push("width", report.width);
    c.push("signed-width", report.signed_width);
    c.push("en-norm", report.en_norm);
    c.push("verdict", if report.detected { "detected" } else { "bound-only" });
    Ok(RunOutput { certificate: c, status: RunStatus::Success })
}

fn run_modp(spec: &JobSpec) -> Result<RunOutput, RunError> {
    let job = presentation_job(spec)?;
    if job.primes.is_empty() {
        return Err(input_error("the modp command needs a primes line"));
    }
    let canonical = print_job(spec);
    let rep = realize_rep(&job.rep, &job.presentation)?;
    let report = modp_compare(&job.presentation, &job.theta, &rep, &job.primes)?;
    let mut c = Certificate::head("modp", &canonical);
    push_presentation(&mut c, job);
    c.push("provenance", rep.provenance());
    c.push("dim", rep.dim());
    c.push("char0-width", report.char0_width);
    c.push(
        "numerator-extremes",
        format!("{} {}", report.num_extremal.0, report.num_extremal.1),
    );
    c.push(
        "denominator-extremes",
        format!("{} {}", report.den_extremal.0, report.den_extremal.1),
    );
    let bad = if report.bad_primes.is_empty() {
        "none".to_string()
    } else {
        report.bad_primes.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ")
    };
    c.push("bad-primes", bad);
    for row in &report.rows {
        let width = match row.width {
            Some(w) => w.to_string(),
            None => "none".to_string(),
        };
        c.push(
            "modp",
            format!("q={} width={} bad={} match={}", row.prime, width, row.bad, row.matches),
        );
    }
    Ok(RunOutput { certificate: c, status: RunStatus::Success })
}

fn run_goodprime(spec: &JobSpec) -> Result<RunOutput, RunError> {
    let job = match spec {
        JobSpec::Polynomials(job) => job,
        _ => return Err(input_error("the goodprime command needs a polynomials job")),
    };
    let canonical = print_job(spec);
    let found = find_good_prime(&job.polys, job.psi_bound)?;
    let mut c = Certificate::head("goodprime", &canonical);
    c.push("vars", job.nvars);
    for p in &job.polys {
        c.push("poly", p);
    }
    c.push("psi-bound", job.psi_bound);
    c.push("psi", job::spaced(&found.psi));
    c.push("prime", found.prime);
    for proj in &found.projections {
        c.push("projection", proj);
    }
    Ok(RunOutput { certificate: c, status: RunStatus::Success })
}

fn run_cover(spec: &JobSpec) -> Result<RunOutput, RunError> {
    let job = presentation_job(spec)?;
    let cover = job
        .cover
        .as_ref()
        .ok_or_else(|| input_error("the cover command needs a cover line"))?;
    if matches!(job.rep, RepSpec::Induced { .. }) {
        return Err(input_error("the cover command induces by itself; give the inner rep"));
    }
    let canonical = print_job(spec);
    let (schreier, table) = build_cover(&job.presentation, &cover.alpha, cover.n)?;
    let cover_p = &schreier.presentation;
    let cover_theta = schreier.pullback(&job.theta);
    let inner = realize_rep(&job.rep, cover_p)?;
    let upstairs = torsion(cover_p, &cover_theta, &inner)?;
    let induced = inner.induce(&job.presentation, &schreier)?;
    let downstairs = torsion(&job.presentation, &job.theta, &induced)?;
    let agreement = upstairs.eq_up_to_unit(&downstairs);

    let mut c = Certificate::head("cover", &canonical);
    push_presentation(&mut c, job);
    c.push("cover-n", cover.n);
    c.push("cover-alpha", job::list(&cover.alpha));
    c.push("cover-index", table.index());
    c.push("cover-generators", cover_p.names().join(" "));
    for (name, w) in cover_p.names().iter().zip(&schreier.generator_words) {
        c.push("cover-generator-word", format!("{name} = {}", job.presentation.word_to_string(w)));
    }
    for r in cover_p.relators() {
        c.push("cover-relator", cover_p.word_to_string(r));
    }
    c.push("cover-theta", job::spaced(cover_theta.values()));
    c.push("induced-provenance", induced.provenance());
    c.push("cover-width", upstairs.width());
    c.push("base-width", downstairs.width());
    c.push("cover-acyclic", upstairs.is_acyclic());
    c.push("base-acyclic", downstairs.is_acyclic());
    c.push("agreement", agreement);
    let status = if upstairs.is_acyclic() && downstairs.is_acyclic() {
        RunStatus::Success
    } else {
        RunStatus::Degenerate
    };
    Ok(RunOutput { certificate: c, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::job::parse_job;

    const TREFOIL: &str = "torwidth job v1\nkind: presentation\ngenerators: a b\n\
        relator: a b a B A B\ntheta: 1 1\nrep: trivial\nreference-norm: 1\n\
        reference-note: fibered genus one\n";

    #[test]
    fn torsion_certificate_for_the_trefoil() {
        let spec = parse_job(TREFOIL).unwrap();
        let out = run_command(Command::Torsion, &spec).unwrap();
        assert_eq!(out.status, RunStatus::Success);
        let c = &out.certificate;
        assert_eq!(c.get("width"), Some("1"));
        assert_eq!(c.get("verdict"), Some("detected"));
        assert_eq!(c.get("numerator"), Some("1@0 -1@1 1@2"));
        assert_eq!(c.get("denominator"), Some("1@0 -1@1"));
        assert_eq!(c.get("acyclic"), Some("true"));
    }

    #[test]
    fn identical_jobs_emit_identical_bytes() {
        let spec = parse_job(TREFOIL).unwrap();
        let a = run_command(Command::Torsion, &spec).unwrap().certificate.emit();
        let b = run_command(Command::Torsion, &spec).unwrap().certificate.emit();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_torsion_reports_degenerate() {
        let text = "torwidth job v1\nkind: presentation\ngenerators: a b\n\
            relator: a b a B A B\ntheta: 0 0\n";
        let spec = parse_job(text).unwrap();
        let out = run_command(Command::Torsion, &spec).unwrap();
        assert_eq!(out.status, RunStatus::Degenerate);
        assert_eq!(out.status.exit_code(), 2);
        assert_eq!(out.certificate.get("acyclic"), Some("false"));
        assert_eq!(out.certificate.get("numerator"), Some("0"));
    }

    #[test]
    fn cover_command_cross_checks_induction() {
        let text = "torwidth job v1\nkind: presentation\ngenerators: a b\n\
            relator: a b a B A B\ntheta: 1 1\nrep: trivial\ncover: n=2 alpha=1,1\n";
        let spec = parse_job(text).unwrap();
        let out = run_command(Command::Cover, &spec).unwrap();
        assert_eq!(out.status, RunStatus::Success);
        let c = &out.certificate;
        assert_eq!(c.get("cover-index"), Some("2"));
        assert_eq!(c.get("agreement"), Some("true"));
        assert_eq!(c.get("cover-width"), c.get("base-width"));
    }

    #[test]
    fn command_kind_mismatches_are_input_errors() {
        let spec = parse_job(TREFOIL).unwrap();
        let e = run_command(Command::Graph, &spec).unwrap_err();
        assert_eq!(e.exit_code, 1);
        let e = run_command(Command::GoodPrime, &spec).unwrap_err();
        assert_eq!(e.exit_code, 1);
        let e = run_command(Command::Modp, &spec).unwrap_err();
        assert_eq!(e.exit_code, 1);
        let e = run_command(Command::Cover, &spec).unwrap_err();
        assert_eq!(e.exit_code, 1);
    }

    #[test]
    fn graph_job_runs_end_to_end() {
        let text = "torwidth job v1\nkind: graph\n\
            vertex: p side=+ chi=-1 m=1 alpha=1 slots=1\n\
            vertex: q side=- chi=-1 m=1 alpha=2 slots=1\n\
            edge: p.0 q.0\nrep: augmentation n=3 field=cyclo\n";
        let spec = parse_job(text).unwrap();
        let out = run_command(Command::Graph, &spec).unwrap();
        let c = &out.certificate;
        assert_eq!(c.get("width"), Some("4"));
        assert_eq!(c.get("en-norm"), Some("2"));
        assert_eq!(c.get("verdict"), Some("detected"));
        assert_eq!(c.get_all("factor").len(), 2);
    }

    #[test]
    fn modp_and_goodprime_drivers_run() {
        let modp_text = "torwidth job v1\nkind: presentation\ngenerators: a b\n\
            relator: a b a B A B\ntheta: 1 1\n\
            rep: augmentation n=3 field=q alpha=1,1\nprimes: 2 3 5 7\n";
        let spec = parse_job(modp_text).unwrap();
        let out = run_command(Command::Modp, &spec).unwrap();
        assert_eq!(out.certificate.get("char0-width"), Some("2"));
        assert_eq!(out.certificate.get("bad-primes"), Some("none"));
        assert_eq!(out.certificate.get_all("modp").len(), 4);

        let gp_text = "torwidth job v1\nkind: polynomials\nvars: 2\n\
            poly: (1; 1 0) (-1; 0 1)\npsi-bound: 3\n";
        let spec = parse_job(gp_text).unwrap();
        let out = run_command(Command::GoodPrime, &spec).unwrap();
        assert_eq!(out.certificate.get("psi"), Some("-1 0"));
        assert_eq!(out.certificate.get("prime"), Some("2"));
    }

    #[test]
    fn search_driver_emits_table_and_best() {
        let spec = parse_job(
            "torwidth job v1\nkind: presentation\ngenerators: a b\nrelator: a b a B A B\n\
             theta: 1 1\nsearch: n-max=2\nreference-norm: 1\nreference-note: knot tables\n",
        )
        .unwrap();
        let out = run_command(Command::Search, &spec).unwrap();
        assert_eq!(out.status, RunStatus::Success);
        let c = &out.certificate;
        let rows = c.get_all("row");
        assert!(!rows.is_empty());
        assert!(rows[0].contains("rep=trivial"));
        assert!(c.get("best").unwrap().contains("detected=true"));
        assert_eq!(c.get("budget-exhausted"), Some("false"));
    }
}

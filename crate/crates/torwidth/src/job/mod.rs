//! Line-oriented job files.
//!
//! A job is a versioned key-value text file: the header line `torwidth job
//! v1`, a `kind` line, then one key per line. Inverse generators are
//! written as uppercase letters inside relator strings, so the trefoil
//! relator reads `a b a B A B`. Parsing validates structure (the class
//! must vanish on every relator, vertex slots must exist) and reports the
//! line and offending token of the first failure. Printing a parsed job
//! gives the canonical form, and parsing that is the identity.

use std::fmt;

use crate::group::{CohomClass, Presentation};
use crate::torsion::MultiPoly;

/// A parse or validation failure, pinned to a 1-based line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for JobError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, JobError> {
    Err(JobError { line, message: message.into() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    /// `Q(zeta_n)` with `n` taken from the representation's order.
    Cyclotomic,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Cyclotomic => write!(f, "cyclo"),
            FieldSpec::Prime(q) => write!(f, "f{q}"),
        }
    }
}

/// A representation recipe: what to build, against which field, restricted
/// along which character values. `alpha` is required when the job is a
/// presentation (the representation must factor through the group) and
/// absent for graph jobs, where the representation acts on the cyclic
/// quotient directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepSpec {
    Trivial,
    Character { n: u64, j: u64, field: FieldSpec, alpha: Option<Vec<i64>> },
    Augmentation { n: u64, field: FieldSpec, alpha: Option<Vec<i64>> },
    /// Induce an inner representation of the index-`n/gcd` cyclic cover cut
    /// out by the character `alpha`.
    Induced { n: u64, alpha: Vec<i64>, inner: Box<RepSpec> },
}

pub(crate) fn list(values: &[i64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepSpec::Trivial => write!(f, "trivial"),
            RepSpec::Character { n, j, field, alpha } => {
                write!(f, "character n={n} j={j} field={field}")?;
                if let Some(a) = alpha {
                    write!(f, " alpha={}", list(a))?;
                }
                Ok(())
            }
            RepSpec::Augmentation { n, field, alpha } => {
                write!(f, "augmentation n={n} field={field}")?;
                if let Some(a) = alpha {
                    write!(f, " alpha={}", list(a))?;
                }
                Ok(())
            }
            RepSpec::Induced { n, alpha, inner } => {
                write!(f, "induced n={n} alpha={} inner={}", list(alpha), inner.bracketed())
            }
        }
    }
}

impl RepSpec {
    /// The inner-spec form used inside `induced`: spaces become commas so
    /// the whole spec stays one token.
    fn bracketed(&self) -> String {
        match self {
            RepSpec::Trivial => "trivial".into(),
            other => format!("({})", other.to_string().replace(' ', ";")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceNorm {
    pub value: i64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchParams {
    pub n_max: Option<u64>,
    pub det_budget: Option<u64>,
    pub ms_budget: Option<u64>,
}

impl SearchParams {
    pub fn effective_n_max(&self) -> u64 {
        self.n_max.unwrap_or(3)
    }

    fn is_default(&self) -> bool {
        *self == SearchParams::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    pub n: u64,
    pub alpha: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationJob {
    pub presentation: Presentation,
    pub theta: CohomClass,
    pub rep: RepSpec,
    pub primes: Vec<u64>,
    pub cover: Option<CoverSpec>,
    pub search: SearchParams,
    pub reference: Option<ReferenceNorm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphVertexLine {
    pub name: String,
    pub plus_side: bool,
    pub chi: i64,
    pub m: i64,
    pub alpha: i64,
    pub slots: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphJob {
    pub vertices: Vec<GraphVertexLine>,
    /// Edges as `(vertex name, slot)` pairs.
    pub edges: Vec<((String, usize), (String, usize))>,
    pub rep: RepSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialJob {
    pub nvars: usize,
    pub polys: Vec<MultiPoly>,
    pub psi_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JobSpec {
    Presentation(PresentationJob),
    Graph(GraphJob),
    Polynomials(PolynomialJob),
}

pub const JOB_HEADER: &str = "torwidth job v1";

struct Lines<'a> {
    /// `(1-based line number, key, value)` for every key line.
    entries: Vec<(usize, &'a str, &'a str)>,
}

impl<'a> Lines<'a> {
    fn parse(text: &'a str) -> Result<Lines<'a>, JobError> {
        let mut raw = text.lines().enumerate();
        let header = loop {
            match raw.next() {
                Some((i, l)) if relevant(l) => break (i + 1, l.trim()),
                Some(_) => continue,
                None => return err(1, "empty job file"),
            }
        };
        if header.1 != JOB_HEADER {
            return err(header.0, format!("expected header {JOB_HEADER:?}, found {:?}", header.1));
        }
        let mut entries = Vec::new();
        for (i, l) in raw {
            if !relevant(l) {
                continue;
            }
            let line = i + 1;
            let (key, value) = match l.split_once(':') {
                Some(kv) => kv,
                None => return err(line, format!("missing ':' after key in {:?}", l.trim())),
            };
            let key = key.trim();
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_lowercase() || c == '-') {
                return err(line, format!("bad key {key:?}"));
            }
            entries.push((line, key, value.trim()));
        }
        Ok(Lines { entries })
    }

    fn take(&mut self, key: &str) -> Option<(usize, &'a str)> {
        let pos = self.entries.iter().position(|(_, k, _)| *k == key)?;
        let (line, _, value) = self.entries.remove(pos);
        Some((line, value))
    }

    fn take_all(&mut self, key: &str) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        while let Some(found) = self.take(key) {
            out.push(found);
        }
        out
    }

    fn finish(self) -> Result<(), JobError> {
        match self.entries.first() {
            None => Ok(()),
            Some((line, key, _)) => err(*line, format!("unknown or misplaced key {key:?}")),
        }
    }
}

fn relevant(l: &str) -> bool {
    let t = l.trim();
    !t.is_empty() && !t.starts_with('#')
}

fn parse_int<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, JobError> {
    token.parse().map_err(|_| JobError {
        line,
        message: format!("bad {what} {token:?}"),
    })
}

fn parse_int_list(line: usize, text: &str, what: &str) -> Result<Vec<i64>, JobError> {
    text.split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| parse_int(line, t, what))
        .collect()
}

/// Splits a value like `n=3 field=cyclo alpha=1,1` into `(key, value)`
/// pairs.
fn parse_pairs<'a>(line: usize, text: &'a str) -> Result<Vec<(&'a str, &'a str)>, JobError> {
    text.split_whitespace()
        .map(|tok| {
            tok.split_once('=')
                .ok_or_else(|| JobError { line, message: format!("expected key=value, found {tok:?}") })
        })
        .collect()
}

fn parse_field_spec(line: usize, token: &str) -> Result<FieldSpec, JobError> {
    match token {
        "q" => Ok(FieldSpec::Rational),
        "cyclo" => Ok(FieldSpec::Cyclotomic),
        _ => match token.strip_prefix('f') {
            Some(rest) => Ok(FieldSpec::Prime(parse_int(line, rest, "field characteristic")?)),
            None => err(line, format!("bad field {token:?}, expected q, cyclo, or f<prime>")),
        },
    }
}

fn parse_rep_spec(line: usize, text: &str) -> Result<RepSpec, JobError> {
    let text = text.trim();
    let (head, rest) = match text.split_once(char::is_whitespace) {
        Some((h, r)) => (h, r),
        None => (text, ""),
    };
    let pairs = parse_pairs(line, rest)?;
    let lookup = |key: &str| pairs.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
    let require = |key: &str| {
        lookup(key).ok_or_else(|| JobError {
            line,
            message: format!("rep spec {head:?} needs {key}="),
        })
    };
    let reject_unknown = |allowed: &[&str]| -> Result<(), JobError> {
        for (k, _) in &pairs {
            if !allowed.contains(k) {
                return err(line, format!("unknown rep option {k:?}"));
            }
        }
        Ok(())
    };
    match head {
        "trivial" => {
            reject_unknown(&[])?;
            Ok(RepSpec::Trivial)
        }
        "character" => {
            reject_unknown(&["n", "j", "field", "alpha"])?;
            Ok(RepSpec::Character {
                n: parse_int(line, require("n")?, "order")?,
                j: match lookup("j") {
                    Some(t) => parse_int(line, t, "power")?,
                    None => 1,
                },
                field: parse_field_spec(line, require("field")?)?,
                alpha: lookup("alpha")
                    .map(|t| parse_int_list(line, t, "character value"))
                    .transpose()?,
            })
        }
        "augmentation" => {
            reject_unknown(&["n", "field", "alpha"])?;
            Ok(RepSpec::Augmentation {
                n: parse_int(line, require("n")?, "order")?,
                field: parse_field_spec(line, require("field")?)?,
                alpha: lookup("alpha")
                    .map(|t| parse_int_list(line, t, "character value"))
                    .transpose()?,
            })
        }
        "induced" => {
            reject_unknown(&["n", "alpha", "inner"])?;
            let inner_text = require("inner")?;
            let inner = match inner_text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
                Some(body) => parse_rep_spec(line, &body.replace(';', " "))?,
                None if inner_text == "trivial" => RepSpec::Trivial,
                None => {
                    return err(line, format!("bad inner rep {inner_text:?}"));
                }
            };
            if matches!(inner, RepSpec::Induced { .. }) {
                return err(line, "nested induction is not supported");
            }
            Ok(RepSpec::Induced {
                n: parse_int(line, require("n")?, "order")?,
                alpha: parse_int_list(line, require("alpha")?, "character value")?,
                inner: Box::new(inner),
            })
        }
        _ => err(line, format!("unknown rep kind {head:?}")),
    }
}

fn parse_presentation_job(lines: &mut Lines<'_>) -> Result<PresentationJob, JobError> {
    let (gen_line, gen_text) = match lines.take("generators") {
        Some(found) => found,
        None => return err(2, "presentation job needs a generators line"),
    };
    let names: Vec<&str> = gen_text.split_whitespace().collect();
    Presentation::parse(&names, &[])
        .map_err(|e| JobError { line: gen_line, message: e.to_string() })?;
    let relator_lines = lines.take_all("relator");
    let mut relators: Vec<&str> = Vec::new();
    let mut presentation = Presentation::parse(&names, &relators).unwrap();
    for (line, text) in &relator_lines {
        relators.push(text);
        presentation = Presentation::parse(&names, &relators)
            .map_err(|e| JobError { line: *line, message: e.to_string() })?;
    }
    let (theta_line, theta_text) = match lines.take("theta") {
        Some(found) => found,
        None => return err(gen_line, "presentation job needs a theta line"),
    };
    let theta = CohomClass::new(parse_int_list(theta_line, theta_text, "class value")?);
    theta
        .validate(&presentation)
        .map_err(|e| JobError { line: theta_line, message: e.to_string() })?;
    let rep = match lines.take("rep") {
        Some((line, text)) => parse_rep_spec(line, text)?,
        None => RepSpec::Trivial,
    };
    let primes = match lines.take("primes") {
        Some((line, text)) => parse_int_list(line, text, "prime")?
            .into_iter()
            .map(|v| {
                if v < 2 {
                    err(line, format!("bad prime {v}"))
                } else {
                    Ok(v as u64)
                }
            })
            .collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    let cover = match lines.take("cover") {
        Some((line, text)) => {
            let pairs = parse_pairs(line, text)?;
            let lookup = |key: &str| {
                pairs
                    .iter()
                    .find(|(k, _)| *k == key)
                    .map(|(_, v)| *v)
                    .ok_or_else(|| JobError { line, message: format!("cover needs {key}=") })
            };
            Some(CoverSpec {
                n: parse_int(line, lookup("n")?, "cover order")?,
                alpha: parse_int_list(line, lookup("alpha")?, "character value")?,
            })
        }
        None => None,
    };
    let search = match lines.take("search") {
        Some((line, text)) => {
            let mut params = SearchParams::default();
            for (k, v) in parse_pairs(line, text)? {
                match k {
                    "n-max" => params.n_max = Some(parse_int(line, v, "n-max")?),
                    "det-budget" => params.det_budget = Some(parse_int(line, v, "det-budget")?),
                    "ms-budget" => params.ms_budget = Some(parse_int(line, v, "ms-budget")?),
                    _ => return err(line, format!("unknown search option {k:?}")),
                }
            }
            params
        }
        None => SearchParams::default(),
    };
    let reference = match lines.take("reference-norm") {
        Some((line, text)) => {
            let value = parse_int(line, text, "reference norm")?;
            let note = match lines.take("reference-note") {
                Some((_, n)) => n.to_string(),
                None => return err(line, "reference-norm needs a reference-note line naming its source"),
            };
            Some(ReferenceNorm { value, note })
        }
        None => match lines.take("reference-note") {
            Some((line, _)) => return err(line, "reference-note without reference-norm"),
            None => None,
        },
    };
    Ok(PresentationJob { presentation, theta, rep, primes, cover, search, reference })
}

fn parse_graph_job(lines: &mut Lines<'_>) -> Result<GraphJob, JobError> {
    let mut vertices = Vec::new();
    for (line, text) in lines.take_all("vertex") {
        let (name, rest) = match text.split_once(char::is_whitespace) {
            Some((n, r)) => (n, r),
            None => return err(line, "vertex line needs a name and attributes"),
        };
        let pairs = parse_pairs(line, rest)?;
        let lookup = |key: &str| {
            pairs
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| JobError { line, message: format!("vertex needs {key}=") })
        };
        for (k, _) in &pairs {
            if !["side", "chi", "m", "alpha", "slots"].contains(k) {
                return err(line, format!("unknown vertex option {k:?}"));
            }
        }
        let plus_side = match lookup("side")? {
            "+" => true,
            "-" => false,
            other => return err(line, format!("bad side {other:?}, expected + or -")),
        };
        vertices.push(GraphVertexLine {
            name: name.to_string(),
            plus_side,
            chi: parse_int(line, lookup("chi")?, "chi")?,
            m: parse_int(line, lookup("m")?, "fiber class value")?,
            alpha: parse_int(line, lookup("alpha")?, "fiber character value")?,
            slots: parse_int(line, lookup("slots")?, "slot count")?,
        });
    }
    let mut edges = Vec::new();
    for (line, text) in lines.take_all("edge") {
        let ends: Vec<&str> = text.split_whitespace().collect();
        if ends.len() != 2 {
            return err(line, "edge line needs exactly two vertex.slot endpoints");
        }
        let mut parsed = Vec::new();
        for end in ends {
            let (name, slot) = end
                .rsplit_once('.')
                .ok_or_else(|| JobError { line, message: format!("bad endpoint {end:?}") })?;
            if !vertices.iter().any(|v| v.name == name) {
                return err(line, format!("edge references unknown vertex {name:?}"));
            }
            parsed.push((name.to_string(), parse_int(line, slot, "slot")?));
        }
        edges.push((parsed[0].clone(), parsed[1].clone()));
    }
    let rep = match lines.take("rep") {
        Some((line, text)) => parse_rep_spec(line, text)?,
        None => return err(2, "graph job needs a rep line"),
    };
    Ok(GraphJob { vertices, edges, rep })
}

fn parse_polynomial_job(lines: &mut Lines<'_>) -> Result<PolynomialJob, JobError> {
    let (vars_line, vars_text) = match lines.take("vars") {
        Some(found) => found,
        None => return err(2, "polynomial job needs a vars line"),
    };
    let nvars: usize = parse_int(vars_line, vars_text, "variable count")?;
    if nvars == 0 {
        return err(vars_line, "variable count must be positive");
    }
    let mut polys = Vec::new();
    for (line, text) in lines.take_all("poly") {
        polys.push(
            MultiPoly::parse(nvars, text).map_err(|m| JobError { line, message: m })?,
        );
    }
    if polys.is_empty() {
        return err(vars_line, "polynomial job needs at least one poly line");
    }
    let psi_bound = match lines.take("psi-bound") {
        Some((line, text)) => parse_int(line, text, "psi bound")?,
        None => 4,
    };
    Ok(PolynomialJob { nvars, polys, psi_bound })
}

pub fn parse_job(text: &str) -> Result<JobSpec, JobError> {
    let mut lines = Lines::parse(text)?;
    let (kind_line, kind) = match lines.take("kind") {
        Some(found) => found,
        None => return err(2, "missing kind line"),
    };
    let spec = match kind {
        "presentation" => JobSpec::Presentation(parse_presentation_job(&mut lines)?),
        "graph" => JobSpec::Graph(parse_graph_job(&mut lines)?),
        "polynomials" => JobSpec::Polynomials(parse_polynomial_job(&mut lines)?),
        _ => {
            return err(
                kind_line,
                format!("unknown kind {kind:?}, expected presentation, graph, or polynomials"),
            )
        }
    };
    lines.finish()?;
    Ok(spec)
}

/// The canonical text of a job: fixed key order, single spaces, trailing
/// newline. Parsing the result reproduces the spec exactly.
pub fn print_job(spec: &JobSpec) -> String {
    let mut out = String::from(JOB_HEADER);
    out.push('\n');
    let mut push = |key: &str, value: String| {
        out.push_str(key);
        out.push_str(": ");
        out.push_str(&value);
        out.push('\n');
    };
    match spec {
        JobSpec::Presentation(job) => {
            push("kind", "presentation".into());
            push("generators", job.presentation.names().join(" "));
            for r in job.presentation.relators() {
                push("relator", job.presentation.word_to_string(r));
            }
            push("theta", spaced(job.theta.values()));
            push("rep", job.rep.to_string());
            if !job.primes.is_empty() {
                push(
                    "primes",
                    job.primes.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" "),
                );
            }
            if let Some(c) = &job.cover {
                push("cover", format!("n={} alpha={}", c.n, list(&c.alpha)));
            }
            if !job.search.is_default() {
                let mut parts = Vec::new();
                if let Some(n) = job.search.n_max {
                    parts.push(format!("n-max={n}"));
                }
                if let Some(b) = job.search.det_budget {
                    parts.push(format!("det-budget={b}"));
                }
                if let Some(b) = job.search.ms_budget {
                    parts.push(format!("ms-budget={b}"));
                }
                push("search", parts.join(" "));
            }
            if let Some(r) = &job.reference {
                push("reference-norm", r.value.to_string());
                push("reference-note", r.note.clone());
            }
        }
        JobSpec::Graph(job) => {
            push("kind", "graph".into());
            for v in &job.vertices {
                push(
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
                push("edge", format!("{an}.{asl} {bn}.{bsl}"));
            }
            push("rep", job.rep.to_string());
        }
        JobSpec::Polynomials(job) => {
            push("kind", "polynomials".into());
            push("vars", job.nvars.to_string());
            for p in &job.polys {
                push("poly", p.to_string());
            }
            push("psi-bound", job.psi_bound.to_string());
        }
    }
    out
}

pub(crate) fn spaced(values: &[i64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

//! Exhaustive detection search over finite cyclic twists.
//!
//! For `n = 2..n_max` every character of the presented group to `Z/n` is
//! enumerated; each character contributes one row per nontrivial power of
//! the one-dimensional twist over `Q(zeta_n)`, one augmentation row over
//! `Q(zeta_n)`, and one augmentation row per requested prime coprime to
//! `n`. The trivial representation is always row one, which makes
//! `n_max = 1` the bare Alexander bound. Rows are evaluated in a fixed
//! order and the aggregation is order-independent, so any schedule that
//! merges through the single aggregator gives the same table; this driver
//! runs the rows in sequence. Budgets cut the table short but never
//! reorder it: wall-clock when asked for, else the running count of
//! determinant evaluations as the deterministic work unit.

use num::rational::Ratio;

use crate::algebra::{det_eval_count, Field};
use crate::group::{enumerate_characters, CohomClass, Presentation};
use crate::job::SearchParams;
use crate::rep::Representation;
use crate::torsion::{bound_report, torsion, BoundReport, TorsionError};

/// What was twisted in one row of the search table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowRep {
    Trivial,
    Character { j: u64 },
    Augmentation,
}

impl std::fmt::Display for RowRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RowRep::Trivial => write!(f, "trivial"),
            RowRep::Character { j } => write!(f, "character j={j}"),
            RowRep::Augmentation => write!(f, "augmentation"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRow {
    pub n: u64,
    pub alpha: Vec<i64>,
    pub rep: RowRep,
    pub field: Field,
    pub dim: usize,
    pub report: BoundReport,
}

impl SearchRow {
    pub fn lower_bound(&self) -> Ratio<i64> {
        self.report.lower_bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub rows: Vec<SearchRow>,
    /// Index of the best row: maximal `width/dim`, ties to smaller `n`,
    /// then smaller dimension, then field order, then earlier row.
    pub best: usize,
    pub budget_exhausted: bool,
}

struct Budget {
    det_start: u64,
    det_limit: Option<u64>,
    clock: std::time::Instant,
    ms_limit: Option<u64>,
}

impl Budget {
    fn new(params: &SearchParams) -> Budget {
        Budget {
            det_start: det_eval_count(),
            det_limit: params.det_budget,
            clock: std::time::Instant::now(),
            ms_limit: params.ms_budget,
        }
    }

    fn exhausted(&self) -> bool {
        if let Some(limit) = self.det_limit {
            if det_eval_count() - self.det_start > limit {
                return true;
            }
        }
        if let Some(limit) = self.ms_limit {
            if self.clock.elapsed().as_millis() as u64 > limit {
                return true;
            }
        }
        false
    }
}

fn better(candidate: &SearchRow, best: &SearchRow) -> bool {
    let key = |r: &SearchRow| (r.n, r.dim);
    if candidate.lower_bound() != best.lower_bound() {
        return candidate.lower_bound() > best.lower_bound();
    }
    if key(candidate) != key(best) {
        return key(candidate) < key(best);
    }
    candidate.field < best.field
}

/// Runs the table for one presentation: the deterministic row order is
/// trivial first, then ascending `n`, ascending character, powers
/// `j = 1..n-1`, augmentation over `Q(zeta_n)`, augmentation over each
/// listed prime coprime to `n`.
pub fn run_search(
    p: &Presentation,
    theta: &CohomClass,
    params: &SearchParams,
    primes: &[u64],
    reference: Option<i64>,
) -> Result<SearchOutcome, TorsionError> {
    let budget = Budget::new(params);
    let mut rows: Vec<SearchRow> = Vec::new();
    let mut best: usize = 0;
    let mut budget_exhausted = false;
    let mut listed: Vec<u64> = primes.to_vec();
    listed.sort_unstable();
    listed.dedup();

    let mut pending: Vec<(u64, Vec<i64>, RowRep, Field)> =
        vec![(1, vec![0; p.gens()], RowRep::Trivial, Field::rational())];
    for n in 2..=params.effective_n_max() {
        for alpha in enumerate_characters(p, n)? {
            let zn = Field::Cyclotomic(n as u32);
            for j in 1..n {
                pending.push((n, alpha.clone(), RowRep::Character { j }, zn));
            }
            pending.push((n, alpha.clone(), RowRep::Augmentation, zn));
            for &q in &listed {
                if crate::algebra::gcd_u64(q, n) == 1 {
                    pending.push((n, alpha.clone(), RowRep::Augmentation, Field::Prime(q)));
                }
            }
        }
    }

    for (n, alpha, rep_kind, field) in pending {
        if budget.exhausted() {
            budget_exhausted = true;
            break;
        }
        let rep = match &rep_kind {
            RowRep::Trivial => Representation::trivial(field, p.gens()),
            RowRep::Character { j } => {
                Representation::cyclic_character(field, n, *j)?.restrict(p, &alpha)?
            }
            RowRep::Augmentation => {
                Representation::augmentation(field, n)?.restrict(p, &alpha)?
            }
        };
        let value = torsion(p, theta, &rep)?;
        let report = bound_report(&value, rep.dim(), reference);
        let row = SearchRow { n, alpha, rep: rep_kind, field, dim: rep.dim(), report };
        if rows.is_empty() || better(&row, &rows[best]) {
            best = rows.len();
        }
        rows.push(row);
    }
    Ok(SearchOutcome { rows, best, budget_exhausted })
}

//! Twisted Reidemeister torsion from a presentation.
//!
//! For a deficiency-one presentation the torsion is the determinant of the
//! twisted Fox Jacobian with one generator column deleted, divided by the
//! determinant of the deleted generator's twisted `x - 1`; a column is
//! admissible when that denominator is nonzero, and all admissible columns
//! agree up to a unit `c * t^k`, which is checked rather than assumed. For
//! a deficiency-zero presentation one relator row and one generator column
//! are deleted and both `x - 1` determinants divide. A torsion of zero
//! means the twisted complex was not acyclic; its width counts as 0.
//!
//! The width of the torsion is a lower bound for `dim(V)` times the
//! Thurston norm of the class, and equality is what a detection certifies.

mod goodprime;
mod modp;

pub use goodprime::{find_good_prime, GoodPrimeResult, MultiPoly};
pub use modp::{modp_compare, ModpReport, ModpRow};

use num::rational::Ratio;
use thiserror::Error;

use crate::algebra::{AlgebraError, LaurentPoly, PolyMatrix, RatFn};
use crate::group::{fox_derivative, CohomClass, GroupError, Presentation};
use crate::rep::{RepError, RepGroup, Representation, TwistedHom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("presentation has deficiency {got}, expected {want}")]
    WrongDeficiency { got: i64, want: i64 },
    #[error("representation does not match the presentation's generators")]
    GroupMismatch,
    #[error("admissible columns disagree; the torsion is ill defined here")]
    ColumnDisagreement,
    #[error("representation carries no integral witness")]
    NonIntegral,
    #[error("determinants over Q produced a non-integer coefficient")]
    NonIntegerCoefficient,
    #[error("the twisted complex is not acyclic; there is no width to compare")]
    NotAcyclic,
    #[error("polynomial list is empty or mixes variable counts")]
    BadPolynomialList,
    #[error("a zero polynomial admits no nonzero projection")]
    ZeroPolynomial,
    #[error("no primitive projection with max-norm <= {0} kept all polynomials nonzero")]
    PsiBoundExhausted(i64),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A torsion value: a pair of determinants, or zero for a non-acyclic
/// complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorsionValue {
    num: LaurentPoly,
    den: LaurentPoly,
    acyclic: bool,
}

impl TorsionValue {
    pub fn zero(field: crate::algebra::Field) -> TorsionValue {
        TorsionValue {
            num: LaurentPoly::zero(field),
            den: LaurentPoly::one(field),
            acyclic: false,
        }
    }

    fn from_parts(num: LaurentPoly, den: LaurentPoly) -> TorsionValue {
        if num.is_zero() {
            TorsionValue::zero(den.field())
        } else {
            TorsionValue { num, den, acyclic: true }
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    /// Raw numerator determinant, before any unit normalization.
    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    /// Raw denominator determinant.
    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn width(&self) -> i64 {
        if self.acyclic {
            self.num.width() - self.den.width()
        } else {
            0
        }
    }

    pub fn ratfn(&self) -> RatFn {
        RatFn::new(self.num.clone(), self.den.clone()).expect("denominator is a determinant of units")
    }

    /// The canonical representative of the unit orbit: numerator and
    /// denominator both shifted to bottom exponent 0 and scaled to trailing
    /// coefficient 1.
    pub fn normalized(&self) -> (LaurentPoly, LaurentPoly) {
        let canon = |p: &LaurentPoly| -> LaurentPoly {
            if p.is_zero() {
                return p.clone();
            }
            let inv = p.trailing_coeff().inv().expect("trailing coefficient is nonzero");
            p.shift(-p.min_exp().unwrap()).scale(&inv)
        };
        (canon(&self.num), canon(&self.den))
    }

    /// Whether two torsion values agree up to the unit ambiguity.
    pub fn eq_up_to_unit(&self, other: &TorsionValue) -> bool {
        if self.acyclic != other.acyclic {
            return false;
        }
        self.num.mul(&other.den).eq_up_to_monomial(&other.num.mul(&self.den))
    }
}

fn check_inputs(
    p: &Presentation,
    theta: &CohomClass,
    rep: &Representation,
) -> Result<(), TorsionError> {
    theta.validate(p)?;
    match rep.group() {
        RepGroup::Presented { gens } if gens == p.gens() => Ok(()),
        _ => Err(TorsionError::GroupMismatch),
    }
}

/// The twisted Fox Jacobian as a grid of `dim x dim` blocks, rows indexed
/// by relators and columns by generators.
fn jacobian_blocks(p: &Presentation, phi: &TwistedHom) -> Vec<Vec<PolyMatrix>> {
    p.relators()
        .iter()
        .map(|r| {
            (0..p.gens())
                .map(|x| phi.group_ring(&fox_derivative(r, x)))
                .collect()
        })
        .collect()
}

/// Assembles the block grid into one matrix, skipping the given column
/// block and optionally one row block.
fn assemble(
    blocks: &[Vec<PolyMatrix>],
    field: crate::algebra::Field,
    dim: usize,
    skip_col: usize,
    skip_row: Option<usize>,
) -> PolyMatrix {
    let rows: Vec<usize> = (0..blocks.len()).filter(|&i| Some(i) != skip_row).collect();
    let cols: Vec<usize> = (0..blocks[0].len()).filter(|&j| j != skip_col).collect();
    let mut m = PolyMatrix::zeros(field, rows.len() * dim, cols.len() * dim);
    for (bi, &i) in rows.iter().enumerate() {
        for (bj, &j) in cols.iter().enumerate() {
            m.paste(bi * dim, bj * dim, &blocks[i][j]);
        }
    }
    m
}

/// Torsion of a deficiency-one presentation. Every admissible column is
/// computed and cross-checked; the first one's value is returned. No
/// admissible column, or a vanishing numerator, reports the zero torsion.
pub fn torsion_deficiency_one(
    p: &Presentation,
    theta: &CohomClass,
    rep: &Representation,
) -> Result<TorsionValue, TorsionError> {
    if p.deficiency() != 1 {
        return Err(TorsionError::WrongDeficiency { got: p.deficiency(), want: 1 });
    }
    check_inputs(p, theta, rep)?;
    let phi = TwistedHom::new(rep, theta);
    let field = rep.field();
    let dim = rep.dim();
    let blocks = jacobian_blocks(p, &phi);
    let mut found: Option<TorsionValue> = None;
    for j in 0..p.gens() {
        let den = phi.generator_minus_one(j).det();
        if den.is_zero() {
            continue;
        }
        let num = if p.relators().is_empty() {
            LaurentPoly::one(field)
        } else {
            assemble(&blocks, field, dim, j, None).det()
        };
        let value = TorsionValue::from_parts(num, den);
        match &found {
            None => found = Some(value),
            Some(first) => {
                if !first.eq_up_to_unit(&value) {
                    return Err(TorsionError::ColumnDisagreement);
                }
            }
        }
    }
    Ok(found.unwrap_or_else(|| TorsionValue::zero(field)))
}

/// Torsion of a deficiency-zero presentation, deleting the column of
/// generator `g` and the relator row at index `h` while dividing by both
/// twisted `x - 1` determinants. Callers order relators so that row `i` is
/// dual to generator `i`. With no explicit choice, ordered pairs of
/// generators with nonvanishing class value are tried in index order and
/// the first nonzero numerator wins; if every candidate vanishes the
/// torsion is zero.
pub fn torsion_closed(
    p: &Presentation,
    theta: &CohomClass,
    rep: &Representation,
    choice: Option<(usize, usize)>,
) -> Result<TorsionValue, TorsionError> {
    if p.deficiency() != 0 {
        return Err(TorsionError::WrongDeficiency { got: p.deficiency(), want: 0 });
    }
    check_inputs(p, theta, rep)?;
    let phi = TwistedHom::new(rep, theta);
    let field = rep.field();
    let dim = rep.dim();
    let blocks = jacobian_blocks(p, &phi);
    let viable: Vec<(usize, LaurentPoly)> = (0..p.gens())
        .filter(|&j| theta.eval(&crate::group::Word::generator(j)) != 0)
        .map(|j| (j, phi.generator_minus_one(j).det()))
        .filter(|(_, d)| !d.is_zero())
        .collect();
    let candidates: Vec<((usize, LaurentPoly), (usize, LaurentPoly))> = match choice {
        Some((g, h)) => {
            let find = |idx: usize| -> Option<(usize, LaurentPoly)> {
                viable.iter().find(|(j, _)| *j == idx).cloned()
            };
            match (find(g), find(h)) {
                (Some(a), Some(b)) => vec![(a, b)],
                _ => Vec::new(),
            }
        }
        None => viable
            .iter()
            .flat_map(|a| viable.iter().map(move |b| (a.clone(), b.clone())))
            .collect(),
    };
    for ((g, den_g), (h, den_h)) in candidates {
        let num = assemble(&blocks, field, dim, g, Some(h)).det();
        if !num.is_zero() {
            return Ok(TorsionValue::from_parts(num, den_g.mul(&den_h)));
        }
    }
    Ok(TorsionValue::zero(field))
}

/// Dispatches on the deficiency: one column deleted at deficiency one, a
/// row and a column at deficiency zero.
pub fn torsion(
    p: &Presentation,
    theta: &CohomClass,
    rep: &Representation,
) -> Result<TorsionValue, TorsionError> {
    match p.deficiency() {
        1 => torsion_deficiency_one(p, theta, rep),
        0 => torsion_closed(p, theta, rep, None),
        got => Err(TorsionError::WrongDeficiency { got, want: 1 }),
    }
}

/// The width bound packaged with its division by the dimension and the
/// verdict against a reference norm when one is supplied.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundReport {
    pub width: i64,
    pub dim: usize,
    pub acyclic: bool,
    /// `width / dim` as an exact fraction; 0 for a zero-dimensional twist.
    pub lower_bound: Ratio<i64>,
    /// The smallest integer norm consistent with the bound.
    pub ceil_bound: i64,
    pub reference_norm: Option<i64>,
    /// Equality `width = dim * reference`; only with a reference norm.
    pub detected: Option<bool>,
    /// The inequality `width <= dim * reference`; false flags a
    /// contradiction with the supplied norm.
    pub consistent: Option<bool>,
}

pub fn bound_report(
    value: &TorsionValue,
    dim: usize,
    reference_norm: Option<i64>,
) -> BoundReport {
    let width = value.width();
    let lower_bound = if dim == 0 {
        Ratio::new(0, 1)
    } else {
        Ratio::new(width, dim as i64)
    };
    BoundReport {
        width,
        dim,
        acyclic: value.is_acyclic(),
        lower_bound,
        ceil_bound: lower_bound.ceil().to_integer(),
        reference_norm,
        detected: reference_norm.map(|n| width == dim as i64 * n),
        consistent: reference_norm.map(|n| width <= dim as i64 * n),
    }
}

/// Checks that torsion is multiplicative under direct sums:
/// `tau(A + B) = tau(A) tau(B)` up to units, with zero torsion on either
/// side forcing zero on the sum.
pub fn multiplicativity_check(
    p: &Presentation,
    theta: &CohomClass,
    a: &Representation,
    b: &Representation,
) -> Result<bool, TorsionError> {
    let sum = a.direct_sum(b)?;
    let ta = torsion(p, theta, a)?;
    let tb = torsion(p, theta, b)?;
    let tsum = torsion(p, theta, &sum)?;
    if !(ta.is_acyclic() && tb.is_acyclic()) {
        return Ok(!tsum.is_acyclic());
    }
    let product = TorsionValue::from_parts(ta.num().mul(tb.num()), ta.den().mul(tb.den()));
    Ok(tsum.eq_up_to_unit(&product))
}

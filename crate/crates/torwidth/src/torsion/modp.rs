//! Characteristic-zero torsion against its mod-p shadows.
//!
//! A representation with an integral witness is run once over Q to get raw
//! integer numerator and denominator determinants, then rerun over each
//! requested prime field. A prime is bad when it divides an extremal
//! coefficient of either determinant; away from the bad primes the width
//! survives reduction, which is what makes a single lucky prime a cheap
//! certificate for the rational width.

use num::BigInt;

use crate::algebra::Field;
use crate::group::{CohomClass, Presentation};
use crate::rep::Representation;

use super::{torsion, TorsionError, TorsionValue};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModpRow {
    pub prime: u64,
    /// Width of the recomputed torsion over `F_p`; absent when the mod-p
    /// complex stopped being acyclic.
    pub width: Option<i64>,
    pub bad: bool,
    pub matches: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModpReport {
    pub char0: TorsionValue,
    pub char0_width: i64,
    /// Trailing and leading integer coefficients of the raw numerator.
    pub num_extremal: (BigInt, BigInt),
    /// Trailing and leading integer coefficients of the raw denominator.
    pub den_extremal: (BigInt, BigInt),
    /// The supplied primes dividing an extremal coefficient.
    pub bad_primes: Vec<u64>,
    pub rows: Vec<ModpRow>,
}

fn extremal(p: &crate::algebra::LaurentPoly) -> Result<(BigInt, BigInt), TorsionError> {
    let as_int = |s: &crate::algebra::Scalar| -> Result<BigInt, TorsionError> {
        let r = s.rational_value().ok_or(TorsionError::NonIntegerCoefficient)?;
        if !r.is_integer() {
            return Err(TorsionError::NonIntegerCoefficient);
        }
        Ok(r.to_integer())
    };
    Ok((as_int(&p.trailing_coeff())?, as_int(&p.leading_coeff())?))
}

/// Computes the torsion over Q from the representation's integral witness
/// and recomputes it over each listed prime, flagging primes that divide an
/// extremal coefficient of either raw determinant. The characteristic-zero
/// run must be acyclic; zero torsion has no width to compare.
pub fn modp_compare(
    p: &Presentation,
    theta: &CohomClass,
    rep: &Representation,
    primes: &[u64],
) -> Result<ModpReport, TorsionError> {
    let witness = rep.integral_witness().ok_or(TorsionError::NonIntegral)?.to_vec();
    let over_q = Representation::from_integer_matrices(
        Field::rational(),
        rep.group(),
        &witness,
        rep.provenance().clone(),
    )?;
    let char0 = torsion(p, theta, &over_q)?;
    if !char0.is_acyclic() {
        return Err(TorsionError::NotAcyclic);
    }
    let num_extremal = extremal(char0.num())?;
    let den_extremal = extremal(char0.den())?;
    let mut listed: Vec<u64> = primes.to_vec();
    listed.sort_unstable();
    listed.dedup();
    let divides = |c: &BigInt, q: u64| c % BigInt::from(q) == BigInt::from(0);
    let is_bad = |q: u64| {
        divides(&num_extremal.0, q)
            || divides(&num_extremal.1, q)
            || divides(&den_extremal.0, q)
            || divides(&den_extremal.1, q)
    };
    let bad_primes: Vec<u64> = listed.iter().copied().filter(|&q| is_bad(q)).collect();
    let mut rows = Vec::new();
    for &q in &listed {
        let over_fq = Representation::from_integer_matrices(
            Field::Prime(q),
            rep.group(),
            &witness,
            rep.provenance().clone(),
        )?;
        let tv = torsion(p, theta, &over_fq)?;
        let width = if tv.is_acyclic() { Some(tv.width()) } else { None };
        rows.push(ModpRow {
            prime: q,
            width,
            bad: is_bad(q),
            matches: width == Some(char0.width()),
        });
    }
    Ok(ModpReport {
        char0_width: char0.width(),
        char0,
        num_extremal,
        den_extremal,
        bad_primes,
        rows,
    })
}

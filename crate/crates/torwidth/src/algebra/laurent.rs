//! Laurent polynomials in one variable `t` over an exact field.
//!
//! Terms are held in a sorted exponent map with no zero coefficients, so
//! equal values have equal representations. Exponents may be negative; the
//! width of a nonzero polynomial is its top exponent minus its bottom one,
//! and the zero polynomial has width 0 by convention.

use std::collections::BTreeMap;
use std::fmt;

use num::BigRational;

use super::scalar::{Field, Scalar};
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    field: Field,
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero(field: Field) -> LaurentPoly {
        LaurentPoly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: Field) -> LaurentPoly {
        LaurentPoly::monomial(Scalar::one(field), 0)
    }

    pub fn constant(c: Scalar) -> LaurentPoly {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: Scalar, exp: i64) -> LaurentPoly {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { field, terms }
    }

    /// Builds a polynomial from integer coefficients, lowest exponent first.
    pub fn from_integers(field: Field, lowest_exp: i64, coeffs: &[i64]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(field);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(Scalar::from_integer(field, c), lowest_exp + i as i64);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Top exponent minus bottom exponent; 0 for the zero polynomial.
    pub fn width(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn coeff(&self, exp: i64) -> Scalar {
        self.terms.get(&exp).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// Coefficient at the top exponent; zero scalar for the zero polynomial.
    pub fn leading_coeff(&self) -> Scalar {
        self.max_exp().map_or_else(|| Scalar::zero(self.field), |e| self.coeff(e))
    }

    /// Coefficient at the bottom exponent; zero scalar for the zero polynomial.
    pub fn trailing_coeff(&self) -> Scalar {
        self.min_exp().map_or_else(|| Scalar::zero(self.field), |e| self.coeff(e))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    fn add_term(&mut self, c: Scalar, exp: i64) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
        }
    }

    fn same_field(&self, other: &LaurentPoly) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        self.same_field(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(c.clone(), *e);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.same_field(other);
        let mut out = LaurentPoly::zero(self.field);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(c1.mul(c2), e1 + e2);
            }
        }
        out
    }

    /// `add` with the field mismatch surfaced as an error instead of a panic.
    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(self.field, other.field));
        }
        Ok(self.add(other))
    }

    /// `mul` with the field mismatch surfaced as an error instead of a panic.
    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(self.field, other.field));
        }
        Ok(self.mul(other))
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.field);
        for (e, v) in &self.terms {
            out.add_term(v.mul(c), *e);
        }
        out
    }

    /// Multiplies by the monomial `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Whether the polynomial is `c * t^k` for some nonzero scalar `c`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Whether the two polynomials agree up to a monomial factor `c * t^k`.
    pub fn eq_up_to_monomial(&self, other: &LaurentPoly) -> bool {
        if self.field != other.field {
            return false;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let shift = self.min_exp().unwrap() - other.min_exp().unwrap();
        let scale = match self.trailing_coeff().div(&other.trailing_coeff()) {
            Ok(s) => s,
            Err(_) => return false,
        };
        *self == other.shift(shift).scale(&scale)
    }

    /// Exact division; panics if the divisor does not divide evenly. Used by
    /// the fraction-free determinant, where divisibility is guaranteed.
    pub(crate) fn exact_div(&self, den: &LaurentPoly) -> LaurentPoly {
        assert!(!den.is_zero(), "exact division by zero");
        if self.is_zero() {
            return LaurentPoly::zero(self.field);
        }
        let a_shift = self.min_exp().unwrap();
        let b_shift = den.min_exp().unwrap();
        let a = self.shift(-a_shift);
        let b = den.shift(-b_shift);
        let (quot, rem) = div_rem_ordinary(&a, &b);
        assert!(rem.is_zero(), "division was not exact");
        quot.shift(a_shift - b_shift)
    }

    /// Monic gcd, normalized to have bottom exponent 0. The gcd of two zero
    /// polynomials is zero.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        self.same_field(other);
        let normalize = |p: &LaurentPoly| -> LaurentPoly {
            if p.is_zero() {
                return p.clone();
            }
            let lead_inv = p.leading_coeff().inv().expect("nonzero leading coefficient");
            p.shift(-p.min_exp().unwrap()).scale(&lead_inv)
        };
        let mut a = normalize(self);
        let mut b = normalize(other);
        while !b.is_zero() {
            let (_, rem) = div_rem_ordinary(&a, &b);
            a = b;
            b = normalize(&rem);
        }
        normalize(&a)
    }

    /// Applies a scalar map to every coefficient, dropping zero images.
    pub fn map_coeffs<F>(&self, mut f: F) -> Result<LaurentPoly, AlgebraError>
    where
        F: FnMut(&Scalar) -> Result<Scalar, AlgebraError>,
    {
        let mut terms = BTreeMap::new();
        let mut field = None;
        for (e, c) in &self.terms {
            let v = f(c)?;
            field = Some(v.field());
            if !v.is_zero() {
                terms.insert(*e, v);
            }
        }
        Ok(LaurentPoly { field: field.unwrap_or(self.field), terms })
    }

    /// Reduces a polynomial with rational coefficients mod a prime `q`.
    /// Fails on a non-rational host field or a coefficient whose denominator
    /// is divisible by `q`; the width may genuinely drop when `q` divides an
    /// extremal coefficient.
    pub fn reduce_mod_p(&self, q: u64) -> Result<LaurentPoly, AlgebraError> {
        Field::Prime(q).validate()?;
        if self.field != Field::rational() {
            return Err(AlgebraError::FieldMismatch(self.field, Field::Prime(q)));
        }
        let mut out = LaurentPoly::zero(Field::Prime(q));
        for (e, c) in &self.terms {
            out.add_term(c.reduce_mod(q)?, *e);
        }
        Ok(out)
    }

    /// The coefficients as rationals, for polynomials over `Q(zeta_1)`.
    pub fn rational_coeffs(&self) -> Option<Vec<(i64, BigRational)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.rational_value().map(|v| (*e, v)))
            .collect()
    }
}

/// Division with remainder for polynomials with nonnegative exponents.
fn div_rem_ordinary(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let field = a.field();
    let mut rem = a.clone();
    let mut quot = LaurentPoly::zero(field);
    let b_deg = b.max_exp().expect("nonzero divisor");
    let b_lead = b.leading_coeff();
    while !rem.is_zero() && rem.max_exp().unwrap() >= b_deg {
        let shift = rem.max_exp().unwrap() - b_deg;
        let c = rem.leading_coeff().div(&b_lead).expect("field division");
        let term = LaurentPoly::monomial(c, shift);
        rem = rem.sub(&term.mul(b));
        quot = quot.add(&term);
    }
    (quot, rem)
}

impl fmt::Display for LaurentPoly {
    /// Space-separated `coeff@exp` terms, lowest exponent first; `0` for the
    /// zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(e, c)| format!("{c}@{e}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl LaurentPoly {
    /// Parses the output of `Display` back into the given field.
    pub fn parse_in(field: Field, s: &str) -> Result<LaurentPoly, String> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPoly::zero(field));
        }
        let mut p = LaurentPoly::zero(field);
        for part in s.split_whitespace() {
            let (c, e) = part
                .rsplit_once('@')
                .ok_or(format!("term '{part}' is not of the form coeff@exp"))?;
            let exp: i64 = e.parse().map_err(|_| format!("bad exponent '{e}'"))?;
            let coeff = Scalar::parse_in(field, c)?;
            p.add_term(coeff, exp);
        }
        Ok(p)
    }
}

//! Ratios of Laurent polynomials.
//!
//! A `RatFn` is kept canonical: the denominator is an ordinary polynomial
//! with nonzero constant term and leading coefficient 1. The numerator
//! absorbs the unit that normalization peels off, so the value is preserved
//! exactly. Width is numerator width minus denominator width, and the zero
//! function has width 0.

use std::fmt;

use super::laurent::LaurentPoly;
use super::scalar::Field;
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RatFn, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.field() != den.field() {
            return Err(AlgebraError::FieldMismatch(num.field(), den.field()));
        }
        let shift = den.min_exp().unwrap();
        let scale = den.leading_coeff().inv()?;
        Ok(RatFn {
            num: num.shift(-shift).scale(&scale),
            den: den.shift(-shift).scale(&scale),
        })
    }

    pub fn zero(field: Field) -> RatFn {
        RatFn { num: LaurentPoly::zero(field), den: LaurentPoly::one(field) }
    }

    pub fn one(field: Field) -> RatFn {
        RatFn { num: LaurentPoly::one(field), den: LaurentPoly::one(field) }
    }

    pub fn from_poly(p: LaurentPoly) -> RatFn {
        let field = p.field();
        RatFn { num: p, den: LaurentPoly::one(field) }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerator width minus denominator width; 0 for the zero function.
    pub fn width(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.num.width() - self.den.width()
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("product of nonzero denominators is nonzero")
    }

    pub fn inv(&self) -> Result<RatFn, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        RatFn::new(self.den.clone(), self.num.clone())
    }

    /// Removes the polynomial gcd of numerator and denominator.
    pub fn reduce(&self) -> RatFn {
        if self.is_zero() {
            return RatFn::zero(self.field());
        }
        let g = self.num.gcd(&self.den);
        RatFn::new(self.num.exact_div(&g), self.den.exact_div(&g))
            .expect("gcd divides the denominator")
    }

    /// Whether two values differ by a unit `c * t^k`; widths then agree.
    pub fn eq_up_to_monomial(&self, other: &RatFn) -> bool {
        self.num.mul(&other.den).eq_up_to_monomial(&other.num.mul(&self.den))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rational()
    }

    #[test]
    fn canonical_form_has_monic_ordinary_denominator() {
        let num = LaurentPoly::from_integers(q(), 0, &[1, 0, 1]);
        let den = LaurentPoly::from_integers(q(), -1, &[2, 2]);
        let r = RatFn::new(num, den).unwrap();
        assert_eq!(r.den(), &LaurentPoly::from_integers(q(), 0, &[1, 1]));
        assert_eq!(r.den().coeff(0), crate::algebra::Scalar::one(q()));
        assert_eq!(r.width(), 1);
    }

    #[test]
    fn width_of_quotient_subtracts() {
        let num = LaurentPoly::from_integers(q(), 0, &[-1, 0, 1]);
        let den = LaurentPoly::from_integers(q(), 0, &[-1, 1]);
        let r = RatFn::new(num, den).unwrap();
        assert_eq!(r.width(), 1);
        assert_eq!(r.reduce().num(), &LaurentPoly::from_integers(q(), 0, &[1, 1]));
        assert_eq!(RatFn::zero(q()).width(), 0);
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let num = LaurentPoly::one(q());
        assert!(matches!(
            RatFn::new(num, LaurentPoly::zero(q())),
            Err(AlgebraError::ZeroDenominator)
        ));
    }

    #[test]
    fn product_multiplies_widths_additively() {
        let a = RatFn::new(
            LaurentPoly::from_integers(q(), 0, &[1, 0, 1]),
            LaurentPoly::from_integers(q(), 0, &[1, 1]),
        )
        .unwrap();
        let b = RatFn::new(
            LaurentPoly::from_integers(q(), -2, &[1, 1, 1]),
            LaurentPoly::one(q()),
        )
        .unwrap();
        assert_eq!(a.mul(&b).width(), a.width() + b.width());
    }
}

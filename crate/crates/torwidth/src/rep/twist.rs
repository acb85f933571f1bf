//! Twisting a representation by an integral class.
//!
//! The twist sends a word `w` to `t^theta(w) * rho(w)`, a matrix of
//! monomials, and extends linearly to group ring elements. Determinants of
//! twisted generators are monomials (units of the Laurent ring), which is
//! what makes torsion well defined up to units.

use crate::algebra::PolyMatrix;
use crate::group::{CohomClass, GroupRingSum, Word};

use super::Representation;

/// The map `w -> t^theta(w) * rho(w)` for a fixed representation and class.
pub struct TwistedHom<'a> {
    rep: &'a Representation,
    theta: &'a CohomClass,
}

impl<'a> TwistedHom<'a> {
    pub fn new(rep: &'a Representation, theta: &'a CohomClass) -> TwistedHom<'a> {
        TwistedHom { rep, theta }
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn word(&self, w: &Word) -> PolyMatrix {
        self.rep.word_matrix(w).to_poly_shift(self.theta.eval(w))
    }

    /// Linear extension to a group ring element.
    pub fn group_ring(&self, s: &GroupRingSum) -> PolyMatrix {
        let d = self.rep.dim();
        let field = self.rep.field();
        let mut acc = PolyMatrix::zeros(field, d, d);
        for (w, c) in s.terms() {
            let coeff = crate::algebra::LaurentPoly::from_integers(field, 0, &[c]);
            let mut term = self.word(w);
            for i in 0..d {
                for j in 0..d {
                    term.set(i, j, term.get(i, j).mul(&coeff));
                }
            }
            acc = acc.add(&term).expect("shapes agree");
        }
        acc
    }

    /// The twisted image of `x_j - 1`.
    pub fn generator_minus_one(&self, j: usize) -> PolyMatrix {
        let d = self.rep.dim();
        let field = self.rep.field();
        let gen = self.word(&Word::generator(j));
        gen.sub(&PolyMatrix::identity(field, d)).expect("shapes agree")
    }
}

//! Fox's free differential calculus.
//!
//! The derivative of a word with respect to a generator is an element of
//! the integral group ring of the free group: `d(x)/dx = 1`,
//! `d(x^-1)/dx = -x^-1`, and the product rule
//! `d(uv)/dx = du/dx + u dv/dx`. Summing `(dr/dx)(x - 1)` over all
//! generators recovers `r - 1`, which is what the property tests pin.

use std::collections::BTreeMap;

use super::word::Word;

/// A finite integer combination of freely reduced words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupRingSum {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingSum {
    pub fn zero() -> GroupRingSum {
        GroupRingSum::default()
    }

    pub fn one() -> GroupRingSum {
        let mut s = GroupRingSum::zero();
        s.add_term(Word::identity(), 1);
        s
    }

    /// Adds `c * w`, reducing `w` first and dropping cancelled terms.
    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        let w = w.free_reduce();
        let total = self.terms.get(&w).copied().unwrap_or(0) + c;
        if total == 0 {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, total);
        }
    }

    pub fn add(&self, other: &GroupRingSum) -> GroupRingSum {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> GroupRingSum {
        GroupRingSum { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &GroupRingSum) -> GroupRingSum {
        self.add(&other.neg())
    }

    /// Right multiplication by a single word.
    pub fn mul_word(&self, w: &Word) -> GroupRingSum {
        let mut out = GroupRingSum::zero();
        for (u, c) in &self.terms {
            out.add_term(u.concat(w), *c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }
}

/// The Fox derivative `dw/dx` for generator index `x`.
///
/// Scans the word once: a positive letter `x` with prefix `u` contributes
/// `+u`, a negative one contributes `-u x^-1` where `u` includes everything
/// before the letter.
pub fn fox_derivative(w: &Word, x: usize) -> GroupRingSum {
    let mut out = GroupRingSum::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        if l.gen == x {
            if l.inverse {
                let mut term = prefix.clone();
                term.push(l);
                out.add_term(term, -1);
            } else {
                out.add_term(prefix.clone(), 1);
            }
        }
        prefix.push(l);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Presentation;

    fn sum(parts: &[(&str, i64)], p: &Presentation) -> GroupRingSum {
        let mut s = GroupRingSum::zero();
        for (w, c) in parts {
            s.add_term(p.parse_word(w).unwrap(), *c);
        }
        s
    }

    #[test]
    fn single_letter_derivatives() {
        let p = Presentation::parse(&["a", "b"], &[]).unwrap();
        let a = p.parse_word("a").unwrap();
        assert_eq!(fox_derivative(&a, 0), GroupRingSum::one());
        assert_eq!(fox_derivative(&a, 1), GroupRingSum::zero());
        let a_inv = p.parse_word("A").unwrap();
        assert_eq!(fox_derivative(&a_inv, 0), sum(&[("A", -1)], &p));
    }

    #[test]
    fn product_rule_on_ab() {
        let p = Presentation::parse(&["a", "b"], &[]).unwrap();
        let ab = p.parse_word("ab").unwrap();
        assert_eq!(fox_derivative(&ab, 0), GroupRingSum::one());
        assert_eq!(fox_derivative(&ab, 1), sum(&[("a", 1)], &p));
    }

    #[test]
    fn trefoil_relator_derivative() {
        let p = Presentation::parse(&["a", "b"], &["a b a B A B"]).unwrap();
        let r = &p.relators()[0];
        let expected = sum(&[("", 1), ("ab", 1), ("abaBA", -1)], &p);
        assert_eq!(fox_derivative(r, 0), expected);
    }

    #[test]
    fn fundamental_identity_on_the_trefoil_relator() {
        let p = Presentation::parse(&["a", "b"], &["a b a B A B"]).unwrap();
        let r = &p.relators()[0];
        let mut lhs = GroupRingSum::zero();
        for x in 0..2 {
            let dx = fox_derivative(r, x);
            let gen = Word::generator(x);
            lhs = lhs.add(&dx.mul_word(&gen).sub(&dx));
        }
        let mut rhs = GroupRingSum::zero();
        rhs.add_term(r.clone(), 1);
        rhs.add_term(Word::identity(), -1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_ignores_free_insertions() {
        let p = Presentation::parse(&["a", "b"], &[]).unwrap();
        let plain = p.parse_word("ab").unwrap();
        let padded = p.parse_word("a bB b").unwrap();
        assert_eq!(fox_derivative(&plain, 1), fox_derivative(&padded, 1));
    }
}

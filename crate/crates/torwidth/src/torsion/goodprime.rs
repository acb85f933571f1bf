//! Projections of multivariable polynomials that dodge cyclotomic factors.
//!
//! Given the multivariable invariants of a link-like input, a direction
//! `psi` collapses each to a one-variable polynomial. A useful direction
//! keeps every projection nonzero, and a good prime `q` keeps every
//! projection coprime to `1 + t + ... + t^(q-1)`, so that passing to the
//! q-fold cyclic cover loses nothing. Directions are searched shell by
//! shell in the max norm, lexicographically within a shell, primitive
//! vectors only; primes ascend from 2. Both searches are deterministic.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{cyclotomic_polynomial, Field, LaurentPoly, Scalar};

use super::TorsionError;

/// An integer Laurent polynomial in several variables, kept as a sparse
/// exponent-vector map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl MultiPoly {
    pub fn new(nvars: usize) -> MultiPoly {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &i64)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: &[i64], coeff: i64) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        let total = self.terms.get(exps).copied().unwrap_or(0) + coeff;
        if total == 0 {
            self.terms.remove(exps);
        } else {
            self.terms.insert(exps.to_vec(), total);
        }
    }

    pub fn from_terms(nvars: usize, terms: &[(Vec<i64>, i64)]) -> MultiPoly {
        let mut p = MultiPoly::new(nvars);
        for (e, c) in terms {
            p.add_term(e, *c);
        }
        p
    }

    /// Substitutes `x_i = t^(psi_i)`, giving a one-variable polynomial
    /// over Q.
    pub fn project(&self, psi: &[i64]) -> LaurentPoly {
        assert_eq!(psi.len(), self.nvars, "direction length");
        let field = Field::rational();
        let mut out = LaurentPoly::zero(field);
        for (exps, &c) in &self.terms {
            let e: i64 = exps.iter().zip(psi).map(|(a, b)| a * b).sum();
            out = out.add(&LaurentPoly::monomial(Scalar::from_integer(field, c), e));
        }
        out
    }

    /// Parses a term list like `(1; 2 0) (-3; 0 1)`.
    pub fn parse(nvars: usize, text: &str) -> Result<MultiPoly, String> {
        let mut p = MultiPoly::new(nvars);
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(p);
        }
        for chunk in trimmed.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk
                .strip_prefix('(')
                .ok_or_else(|| format!("expected '(' before term, found {chunk:?}"))?;
            let (c_text, e_text) = body
                .split_once(';')
                .ok_or_else(|| format!("missing ';' inside term {chunk:?}"))?;
            let coeff: i64 = c_text
                .trim()
                .parse()
                .map_err(|_| format!("bad coefficient {:?}", c_text.trim()))?;
            let exps: Vec<i64> = e_text
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| format!("bad exponent {t:?}")))
                .collect::<Result<_, String>>()?;
            if exps.len() != nvars {
                return Err(format!(
                    "term has {} exponents, expected {}",
                    exps.len(),
                    nvars
                ));
            }
            p.add_term(&exps, coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "(0;{})", " 0".repeat(self.nvars));
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "({c};")?;
            for e in exps {
                write!(f, " {e}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GoodPrimeResult {
    pub psi: Vec<i64>,
    pub prime: u64,
    pub projections: Vec<LaurentPoly>,
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Walks the max-norm shell of radius `norm` in lexicographic order,
/// yielding only primitive vectors.
fn shell(nvars: usize, norm: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-norm; nvars];
    loop {
        if v.iter().any(|x| x.abs() == norm) {
            let g = v.iter().fold(0i64, |acc, &x| gcd_i64(acc, x));
            if g == 1 {
                out.push(v.clone());
            }
        }
        let mut k = nvars;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if v[k] < norm {
                v[k] += 1;
                for x in v.iter_mut().skip(k + 1) {
                    *x = -norm;
                }
                break;
            }
        }
    }
}

fn next_prime(after: u64) -> u64 {
    let mut q = after + 1;
    while !crate::algebra::is_prime_u64(q) {
        q += 1;
    }
    q
}

/// Finds the first direction of max norm at most `psi_bound` under which
/// every polynomial projects to something nonzero, then the smallest prime
/// `q` whose cyclotomic polynomial is coprime to every projection over Q.
pub fn find_good_prime(
    polys: &[MultiPoly],
    psi_bound: i64,
) -> Result<GoodPrimeResult, TorsionError> {
    if polys.is_empty() || polys.iter().any(|p| p.nvars() != polys[0].nvars()) {
        return Err(TorsionError::BadPolynomialList);
    }
    if polys.iter().any(|p| p.is_zero()) {
        return Err(TorsionError::ZeroPolynomial);
    }
    let nvars = polys[0].nvars();
    for norm in 1..=psi_bound.max(0) {
        for psi in shell(nvars, norm) {
            let projections: Vec<LaurentPoly> = polys.iter().map(|p| p.project(&psi)).collect();
            if projections.iter().any(|p| p.is_zero()) {
                continue;
            }
            let prime = first_coprime_prime(&projections);
            return Ok(GoodPrimeResult { psi, prime, projections });
        }
    }
    Err(TorsionError::PsiBoundExhausted(psi_bound))
}

/// Each projection has finitely many cyclotomic divisors, so some prime in
/// `2..=max_width+2` always works; the loop cannot run past it.
fn first_coprime_prime(projections: &[LaurentPoly]) -> u64 {
    let field = Field::rational();
    let limit = projections.iter().map(|p| p.width()).max().unwrap_or(0) as u64 + 2;
    let mut q: u64 = 2;
    loop {
        let phi_q = {
            let coeffs = cyclotomic_polynomial(q as u32);
            let ints: Vec<i64> = coeffs
                .iter()
                .map(|c| i64::try_from(c).expect("prime cyclotomic coefficients are 0 or 1"))
                .collect();
            LaurentPoly::from_integers(field, 0, &ints)
        };
        let one = LaurentPoly::one(field);
        if projections.iter().all(|p| p.gcd(&phi_q) == one) {
            return q;
        }
        assert!(q <= limit, "projection widths bound the cyclotomic divisors");
        q = next_prime(q);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(terms: &[((i64, i64), i64)]) -> MultiPoly {
        let list: Vec<(Vec<i64>, i64)> =
            terms.iter().map(|((a, b), c)| (vec![*a, *b], *c)).collect();
        MultiPoly::from_terms(2, &list)
    }

    #[test]
    fn projection_collapses_along_the_direction() {
        let p = xy(&[((1, 0), 1), ((0, 1), 1), ((0, 0), -2)]);
        let q = p.project(&[2, 3]);
        assert_eq!(q, LaurentPoly::from_integers(Field::rational(), 0, &[-2, 0, 1, 1]));
        let collapsed = p.project(&[1, 1]);
        assert_eq!(collapsed, LaurentPoly::from_integers(Field::rational(), 0, &[-2, 2]));
    }

    #[test]
    fn difference_of_variables_needs_the_second_shell_vector() {
        let p = xy(&[((1, 0), 1), ((0, 1), -1)]);
        let found = find_good_prime(&[p], 3).unwrap();
        assert_eq!(found.psi, vec![-1, 0]);
        assert_eq!(found.prime, 2);
    }

    #[test]
    fn cyclotomic_projection_pushes_the_prime_up() {
        let p = MultiPoly::from_terms(1, &[(vec![0], 1), (vec![1], 1), (vec![2], 1)]);
        let found = find_good_prime(&[p], 1).unwrap();
        assert_eq!(found.psi, vec![-1]);
        assert_eq!(found.prime, 2);
        let q = MultiPoly::from_terms(1, &[(vec![0], 1), (vec![1], 1)]);
        let found = find_good_prime(&[q], 1).unwrap();
        assert_eq!(found.prime, 3);
    }

    #[test]
    fn both_polynomials_must_survive() {
        let a = xy(&[((1, 0), 1), ((0, 1), -1)]);
        let b = xy(&[((1, 0), 1), ((0, 1), 1), ((0, 0), 1)]);
        let found = find_good_prime(&[a.clone(), b], 2).unwrap();
        assert!(found.projections.iter().all(|p| !p.is_zero()));
        let zero = MultiPoly::new(2);
        assert!(matches!(
            find_good_prime(&[a, zero], 2),
            Err(TorsionError::ZeroPolynomial)
        ));
    }

    #[test]
    fn exhausted_direction_bound_is_reported() {
        let p = xy(&[((1, 0), 1), ((0, 1), -1)]);
        let q = xy(&[((1, 0), 1), ((0, 1), 1), ((0, 0), -2)]);
        let err = find_good_prime(&[p, q], 0);
        assert!(matches!(err, Err(TorsionError::PsiBoundExhausted(0))));
    }

    #[test]
    fn term_list_parses_and_prints_round_trip() {
        let p = xy(&[((2, 0), 1), ((0, 1), -3)]);
        let text = p.to_string();
        assert_eq!(text, "(-3; 0 1) (1; 2 0)");
        assert_eq!(MultiPoly::parse(2, &text).unwrap(), p);
        assert!(MultiPoly::parse(2, "(1; 2)").is_err());
        assert!(MultiPoly::parse(2, "1; 2 0)").is_err());
    }
}

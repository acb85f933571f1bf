//! Finite-image representations and the constructions between them.
//!
//! A representation is attached either to a cyclic group `Z/n` (one matrix)
//! or to a presented group (one matrix per generator). Characters give
//! one-dimensional representations through a root of unity; the
//! augmentation representation of `Z/n` is the multiplication action on the
//! augmentation ideal of its group ring in the basis `g^i - 1`, which is
//! integral. Restriction composes with a character of the base group,
//! induction goes up along a finite cover, and direct sums concatenate
//! blocks. Every constructor validates that generators stay invertible and
//! relators act trivially, and carries enough provenance to rebuild the
//! representation from scratch.

mod twist;

pub use twist::TwistedHom;

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Field, Scalar, ScalarMatrix};
use crate::group::{GroupError, Presentation, SchreierData, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("augmentation representation needs n >= 2, got {0}")]
    BadOrder(u64),
    #[error("generator {gen} maps to a singular matrix")]
    SingularGenerator { gen: usize },
    #[error("relator {relator} does not act trivially")]
    RelatorNotKilled { relator: usize },
    #[error("representations belong to different groups")]
    GroupMismatch,
    #[error("expected a representation of a cyclic group")]
    NotCyclic,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The group a representation is a representation of.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RepGroup {
    Cyclic { n: u64 },
    Presented { gens: usize },
}

/// How a representation was built; printed into certificates so a reader
/// can reconstruct it without this process's state.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Provenance {
    Trivial { dim: usize },
    Character { n: u64, power: u64 },
    Augmentation { n: u64 },
    Restriction { alpha: Vec<i64>, n: u64, inner: Box<Provenance> },
    Induced { action: Vec<Vec<usize>>, inner: Box<Provenance> },
    DirectSum(Box<Provenance>, Box<Provenance>),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Trivial { dim } => write!(f, "trivial(dim={dim})"),
            Provenance::Character { n, power } => write!(f, "character(n={n}, j={power})"),
            Provenance::Augmentation { n } => write!(f, "augmentation(n={n})"),
            Provenance::Restriction { alpha, n, inner } => {
                write!(f, "restrict(alpha={alpha:?} mod {n}; {inner})")
            }
            Provenance::Induced { action, inner } => {
                write!(f, "induce(action={action:?}; {inner})")
            }
            Provenance::DirectSum(a, b) => write!(f, "({a}) + ({b})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Representation {
    group: RepGroup,
    dim: usize,
    field: Field,
    mats: Vec<ScalarMatrix>,
    inv_mats: Vec<ScalarMatrix>,
    integral: Option<Vec<Vec<Vec<i64>>>>,
    provenance: Provenance,
}

impl Representation {
    fn build(
        group: RepGroup,
        field: Field,
        mats: Vec<ScalarMatrix>,
        integral: Option<Vec<Vec<Vec<i64>>>>,
        provenance: Provenance,
    ) -> Result<Representation, RepError> {
        let dim = mats.first().map_or(0, ScalarMatrix::dim);
        let mut inv_mats = Vec::with_capacity(mats.len());
        for (gen, m) in mats.iter().enumerate() {
            if m.field() != field {
                return Err(RepError::FieldMismatch(field, m.field()));
            }
            inv_mats.push(m.inv().map_err(|_| RepError::SingularGenerator { gen })?);
        }
        Ok(Representation { group, dim, field, mats, inv_mats, integral, provenance })
    }

    /// The trivial one-dimensional representation of a presented group.
    pub fn trivial(field: Field, gens: usize) -> Representation {
        Representation::build(
            RepGroup::Presented { gens },
            field,
            vec![ScalarMatrix::identity(field, 1); gens],
            Some(vec![vec![vec![1]]; gens]),
            Provenance::Trivial { dim: 1 },
        )
        .expect("identity matrices are invertible")
    }

    /// Rebuilds a representation from integer generator matrices over any
    /// field, keeping the provenance of the representation they witness.
    pub fn from_integer_matrices(
        field: Field,
        group: RepGroup,
        mats: &[Vec<Vec<i64>>],
        provenance: Provenance,
    ) -> Result<Representation, RepError> {
        let lifted = mats
            .iter()
            .map(|rows| ScalarMatrix::from_integer_rows(field, rows))
            .collect();
        Representation::build(group, field, lifted, Some(mats.to_vec()), provenance)
    }

    /// The zero-dimensional representation; torsion against it is 1.
    pub fn zero_dim(field: Field, gens: usize) -> Representation {
        Representation::build(
            RepGroup::Presented { gens },
            field,
            vec![ScalarMatrix::identity(field, 0); gens],
            Some(vec![vec![]; gens]),
            Provenance::Trivial { dim: 0 },
        )
        .expect("empty matrices are invertible")
    }

    /// The character of `Z/n` sending the generator to the j-th power of
    /// the field's chosen primitive n-th root of unity.
    pub fn cyclic_character(field: Field, n: u64, j: u64) -> Result<Representation, RepError> {
        let zeta = Scalar::root_of_unity(field, n)?;
        let value = zeta.pow(j % n);
        let mat = ScalarMatrix::from_rows(field, vec![vec![value.clone()]])?;
        let integral = match field {
            Field::Cyclotomic(_) => value
                .rational_value()
                .and_then(|v| i64::try_from(v.numer()).ok().filter(|_| v.is_integer()))
                .map(|v| vec![vec![vec![v]]]),
            Field::Prime(_) if j % n == 0 => Some(vec![vec![vec![1]]]),
            Field::Prime(_) if n == 2 => Some(vec![vec![vec![-1]]]),
            Field::Prime(_) => None,
        };
        Representation::build(
            RepGroup::Cyclic { n },
            field,
            vec![mat],
            integral,
            Provenance::Character { n, power: j % n },
        )
    }

    /// The augmentation representation of `Z/n` on the basis
    /// `g - 1, g^2 - 1, .., g^(n-1) - 1`: dimension `n - 1`, integer
    /// entries in `{-1, 0, 1}`.
    pub fn augmentation(field: Field, n: u64) -> Result<Representation, RepError> {
        if n < 2 {
            return Err(RepError::BadOrder(n));
        }
        let d = (n - 1) as usize;
        let mut rows = vec![vec![0i64; d]; d];
        for j in 0..d {
            rows[0][j] = -1;
            if j + 1 < d {
                rows[j + 1][j] = 1;
            }
        }
        let mat = ScalarMatrix::from_integer_rows(field, &rows);
        let rep = Representation::build(
            RepGroup::Cyclic { n },
            field,
            vec![mat],
            Some(vec![rows]),
            Provenance::Augmentation { n },
        )?;
        debug_assert!(rep.mats[0].pow(n).is_identity());
        Ok(rep)
    }

    /// Pulls a representation of `Z/n` back along a character of the
    /// presented group: generator `x_i` maps to `M^alpha(x_i)`.
    pub fn restrict(&self, p: &Presentation, alpha: &[i64]) -> Result<Representation, RepError> {
        let n = match self.group {
            RepGroup::Cyclic { n } => n,
            RepGroup::Presented { .. } => return Err(RepError::NotCyclic),
        };
        if alpha.len() != p.gens() {
            return Err(RepError::Group(GroupError::ClassLengthMismatch {
                got: alpha.len(),
                want: p.gens(),
            }));
        }
        let n_i = n as i64;
        for (ri, r) in p.relators().iter().enumerate() {
            let v = crate::group::CohomClass::new(alpha.to_vec()).eval(r).rem_euclid(n_i);
            if v != 0 {
                return Err(RepError::Group(GroupError::CharacterNotHomomorphism {
                    relator: ri,
                    modulus: n,
                    value: v,
                }));
            }
        }
        let powers: Vec<u64> = alpha.iter().map(|&a| a.rem_euclid(n_i) as u64).collect();
        let mats = powers.iter().map(|&a| self.mats[0].pow(a)).collect();
        let integral = self.integral.as_ref().map(|w| {
            powers.iter().map(|&a| int_matrix_pow(&w[0], a)).collect()
        });
        Representation::build(
            RepGroup::Presented { gens: p.gens() },
            self.field,
            mats,
            integral,
            Provenance::Restriction {
                alpha: alpha.to_vec(),
                n,
                inner: Box::new(self.provenance.clone()),
            },
        )
    }

    /// Induces a representation of the cover subgroup up to the base group.
    /// Blocks are indexed by cosets: for base generator `x`, block
    /// `(i, i.x)` is the inner representation evaluated on the Schreier
    /// rewriting of `x` started at coset `i`; all other blocks vanish.
    pub fn induce(
        &self,
        base: &Presentation,
        cover: &SchreierData,
    ) -> Result<Representation, RepError> {
        match self.group {
            RepGroup::Presented { gens } if gens == cover.presentation.gens() => {}
            _ => return Err(RepError::GroupMismatch),
        }
        let m = cover.table().index();
        let d = self.dim;
        let mut mats = Vec::with_capacity(base.gens());
        let mut integral: Option<Vec<Vec<Vec<i64>>>> =
            self.integral.as_ref().map(|_| Vec::new());
        for g in 0..base.gens() {
            let letter_word = Word::generator(g);
            let mut big = ScalarMatrix::zeros(self.field, m * d);
            let mut big_int = vec![vec![0i64; m * d]; m * d];
            for i in 0..m {
                let target = cover.table().act_word(i, &letter_word);
                let inner_word = cover.rewrite_from(&letter_word, i);
                let block = self.word_matrix(&inner_word);
                for r in 0..d {
                    for c in 0..d {
                        big.set(i * d + r, target * d + c, block.get(r, c).clone());
                    }
                }
                if let Some(witness) = &self.integral {
                    let w = int_word_matrix(witness, &inner_word, d);
                    for r in 0..d {
                        for c in 0..d {
                            big_int[i * d + r][target * d + c] = w[r][c];
                        }
                    }
                }
            }
            if let Some(acc) = integral.as_mut() {
                acc.push(big_int);
            }
            mats.push(big);
        }
        let rep = Representation::build(
            RepGroup::Presented { gens: base.gens() },
            self.field,
            mats,
            integral,
            Provenance::Induced {
                action: cover.table().action_rows().to_vec(),
                inner: Box::new(self.provenance.clone()),
            },
        )?;
        for (ri, r) in base.relators().iter().enumerate() {
            if !rep.word_matrix(r).is_identity() {
                return Err(RepError::RelatorNotKilled { relator: ri });
            }
        }
        Ok(rep)
    }

    /// Block-diagonal sum of two representations of the same group over the
    /// same field.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation, RepError> {
        if self.group != other.group {
            return Err(RepError::GroupMismatch);
        }
        if self.field != other.field {
            return Err(RepError::FieldMismatch(self.field, other.field));
        }
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        let integral = match (&self.integral, &other.integral) {
            (Some(a), Some(b)) => Some(
                a.iter()
                    .zip(b)
                    .map(|(ma, mb)| int_direct_sum(ma, mb))
                    .collect(),
            ),
            _ => None,
        };
        Representation::build(
            self.group,
            self.field,
            mats,
            integral,
            Provenance::DirectSum(
                Box::new(self.provenance.clone()),
                Box::new(other.provenance.clone()),
            ),
        )
    }

    /// Whether a cyclic representation `W` has `det(I - W(g)^k)` nonzero
    /// for every `k = 1.. n-1`; such representations keep every vertex
    /// factor of a graph-manifold torsion away from zero.
    pub fn is_good(&self) -> Result<bool, RepError> {
        let n = match self.group {
            RepGroup::Cyclic { n } => n,
            RepGroup::Presented { .. } => return Err(RepError::NotCyclic),
        };
        let id = ScalarMatrix::identity(self.field, self.dim);
        for k in 1..n {
            if id.sub(&self.mats[0].pow(k)).det().is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn group(&self) -> RepGroup {
        self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn matrix(&self, gen: usize) -> &ScalarMatrix {
        &self.mats[gen]
    }

    /// Integer matrices reducing to the generators, when the representation
    /// is integral.
    pub fn integral_witness(&self) -> Option<&[Vec<Vec<i64>>]> {
        self.integral.as_deref()
    }

    /// Evaluates the representation on a word, left to right.
    pub fn word_matrix(&self, w: &Word) -> ScalarMatrix {
        let mut acc = ScalarMatrix::identity(self.field, self.dim);
        for l in w.letters() {
            let m = if l.inverse { &self.inv_mats[l.gen] } else { &self.mats[l.gen] };
            acc = acc.mul(m);
        }
        acc
    }
}

fn int_matrix_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn int_identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn int_matrix_pow(m: &[Vec<i64>], e: u64) -> Vec<Vec<i64>> {
    let mut acc = int_identity(m.len());
    for _ in 0..e {
        acc = int_matrix_mul(&acc, m);
    }
    acc
}

/// Inverse of an integer matrix of finite order, as the complementary
/// power is not available here; callers only invert witnesses of finite
/// order, so the adjugate route with determinant +-1 applies.
fn int_matrix_inv(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    if n == 0 {
        return Vec::new();
    }
    let det = int_det(m);
    assert!(det == 1 || det == -1, "witness matrices are unimodular");
    let mut adj = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor = int_minor(m, i, j);
            let cof = int_det(&minor) * if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = cof * det;
        }
    }
    adj
}

fn int_minor(m: &[Vec<i64>], row: usize, col: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

fn int_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut acc = 0i64;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc += sign * m[0][j] * int_det(&int_minor(m, 0, j));
    }
    acc
}

fn int_word_matrix(witness: &[Vec<Vec<i64>>], w: &Word, dim: usize) -> Vec<Vec<i64>> {
    let mut acc = int_identity(dim);
    for l in w.letters() {
        let m = if l.inverse {
            int_matrix_inv(&witness[l.gen])
        } else {
            witness[l.gen].clone()
        };
        acc = int_matrix_mul(&acc, &m);
    }
    acc
}

fn int_direct_sum(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len() + b.len();
    let mut out = vec![vec![0i64; n]; n];
    for (i, row) in a.iter().enumerate() {
        out[i][..a.len()].copy_from_slice(row);
    }
    for (i, row) in b.iter().enumerate() {
        out[a.len() + i][a.len()..].copy_from_slice(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CosetTable;

    fn q3() -> Field {
        Field::Cyclotomic(3)
    }

    fn trefoil() -> Presentation {
        Presentation::parse(&["a", "b"], &["a b a B A B"]).unwrap()
    }

    #[test]
    fn trivial_representation_kills_everything() {
        let p = trefoil();
        let rep = Representation::trivial(Field::rational(), p.gens());
        assert_eq!(rep.dim(), 1);
        assert!(rep.word_matrix(&p.relators()[0]).is_identity());
    }

    #[test]
    fn character_restriction_on_the_trefoil() {
        let w = Representation::cyclic_character(q3(), 3, 1).unwrap();
        let p = trefoil();
        let rep = w.restrict(&p, &[1, 1]).unwrap();
        let zeta = Scalar::root_of_unity(q3(), 3).unwrap();
        assert_eq!(rep.matrix(0).get(0, 0), &zeta);
        assert_eq!(rep.matrix(1).get(0, 0), &zeta);
        assert!(rep.word_matrix(&p.relators()[0]).is_identity());
        assert!(w.restrict(&p, &[1, 2]).is_err());
    }

    #[test]
    fn character_over_a_prime_field_uses_smallest_root() {
        let w = Representation::cyclic_character(Field::Prime(5), 4, 1).unwrap();
        assert_eq!(w.matrix(0).get(0, 0).residue(), Some(2));
        assert!(Representation::cyclic_character(Field::Prime(7), 4, 1).is_err());
    }

    #[test]
    fn augmentation_matrix_acts_like_multiplication_by_g() {
        for n in 2..=7u64 {
            let rep = Representation::augmentation(Field::rational(), n).unwrap();
            assert_eq!(rep.dim() as u64, n - 1);
            let m = rep.matrix(0);
            assert!(m.pow(n).is_identity());
            for k in 1..n {
                assert!(!m.pow(k).is_identity());
            }
            let id = ScalarMatrix::identity(Field::rational(), rep.dim());
            let det = id.sub(m).det();
            assert_eq!(det, Scalar::from_integer(Field::rational(), n as i64));
        }
    }

    #[test]
    fn augmentation_n3_matches_the_basis_computation() {
        let rep = Representation::augmentation(Field::rational(), 3).unwrap();
        let w = rep.integral_witness().unwrap();
        assert_eq!(w[0], vec![vec![-1, -1], vec![1, 0]]);
    }

    #[test]
    fn goodness_of_small_representations() {
        let aug3_f5 = Representation::augmentation(Field::Prime(5), 3).unwrap();
        assert!(aug3_f5.is_good().unwrap());
        let aug3_f3 = Representation::augmentation(Field::Prime(3), 3).unwrap();
        assert!(!aug3_f3.is_good().unwrap());
        let trivial_cyclic = Representation::cyclic_character(q3(), 3, 0).unwrap();
        assert!(!trivial_cyclic.is_good().unwrap());
        let aug = Representation::augmentation(q3(), 3).unwrap();
        assert!(aug.is_good().unwrap());
        let p = trefoil();
        assert!(Representation::trivial(q3(), p.gens()).is_good().is_err());
    }

    #[test]
    fn direct_sum_multiplies_determinants() {
        let p = trefoil();
        let a = Representation::augmentation(q3(), 3)
            .unwrap()
            .restrict(&p, &[1, 1])
            .unwrap();
        let b = Representation::cyclic_character(q3(), 3, 1)
            .unwrap()
            .restrict(&p, &[1, 1])
            .unwrap();
        let sum = a.direct_sum(&b).unwrap();
        assert_eq!(sum.dim(), 3);
        let w = p.parse_word("abA").unwrap();
        assert_eq!(
            sum.word_matrix(&w).det(),
            a.word_matrix(&w).det().mul(&b.word_matrix(&w).det())
        );
        let mismatched = Representation::cyclic_character(q3(), 3, 1).unwrap();
        assert!(a.direct_sum(&mismatched).is_err());
    }

    #[test]
    fn induction_from_the_full_group_changes_nothing() {
        let p = trefoil();
        let table = CosetTable::from_character(&p, &[0, 0], 1).unwrap();
        let cover = crate::group::reidemeister_schreier(&p, &table);
        let inner = Representation::trivial(q3(), cover.presentation.gens());
        let induced = inner.induce(&p, &cover).unwrap();
        assert_eq!(induced.dim(), 1);
        assert!(induced.matrix(0).is_identity());
    }

    #[test]
    fn inducing_the_trivial_rep_gives_the_permutation_rep() {
        let p = trefoil();
        let table = CosetTable::from_character(&p, &[1, 1], 2).unwrap();
        let cover = crate::group::reidemeister_schreier(&p, &table);
        let inner = Representation::trivial(Field::rational(), cover.presentation.gens());
        let induced = inner.induce(&p, &cover).unwrap();
        assert_eq!(induced.dim(), 2);
        for g in 0..2 {
            let m = induced.matrix(g);
            assert!(m.get(0, 0).is_zero());
            assert!(m.get(0, 1).is_one());
            assert!(m.get(1, 0).is_one());
            assert!(m.get(1, 1).is_zero());
        }
        assert!(induced.integral_witness().is_some());
    }

    #[test]
    fn induction_scales_dimension_by_the_index() {
        let p = trefoil();
        let table = CosetTable::from_character(&p, &[1, 1], 3).unwrap();
        let cover = crate::group::reidemeister_schreier(&p, &table);
        let chars = crate::group::enumerate_characters(&cover.presentation, 3).unwrap();
        let alpha = chars.last().unwrap();
        let inner = Representation::cyclic_character(q3(), 3, 1)
            .unwrap()
            .restrict(&cover.presentation, alpha)
            .unwrap();
        let induced = inner.induce(&p, &cover).unwrap();
        assert_eq!(induced.dim(), 3);
        for (ri, r) in p.relators().iter().enumerate() {
            assert!(induced.word_matrix(r).is_identity(), "relator {ri} survives");
        }
    }
}

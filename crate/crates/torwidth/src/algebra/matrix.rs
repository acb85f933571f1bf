//! Matrices over an exact field and over its Laurent polynomial ring.
//!
//! `ScalarMatrix` is square and backs representations: products, powers,
//! inverses, determinants by Gaussian elimination. `PolyMatrix` holds
//! Laurent polynomial entries; its determinant clears denominators of `t`,
//! runs fraction-free Bareiss elimination (every division is exact), and
//! restores the cleared monomial at the end. Determinant evaluations are
//! counted in a process-global counter that the search budget reads.

use std::sync::atomic::{AtomicU64, Ordering};

use super::laurent::LaurentPoly;
use super::scalar::{Field, Scalar};
use super::AlgebraError;

static DET_EVALS: AtomicU64 = AtomicU64::new(0);

/// How many polynomial determinants have been evaluated in this process.
pub fn det_eval_count() -> u64 {
    DET_EVALS.load(Ordering::Relaxed)
}

/// A square matrix over an exact field, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarMatrix {
    dim: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(field: Field, dim: usize) -> ScalarMatrix {
        ScalarMatrix { dim, field, entries: vec![Scalar::zero(field); dim * dim] }
    }

    pub fn identity(field: Field, dim: usize) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(field, dim);
        for i in 0..dim {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<ScalarMatrix, AlgebraError> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(AlgebraError::DimensionMismatch(dim, dim, 1, row.len()));
            }
            for v in row {
                if v.field() != field {
                    return Err(AlgebraError::FieldMismatch(field, v.field()));
                }
                entries.push(v);
            }
        }
        Ok(ScalarMatrix { dim, field, entries })
    }

    pub fn from_integer_rows(field: Field, rows: &[Vec<i64>]) -> ScalarMatrix {
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_integer(field, v)).collect())
            .collect();
        ScalarMatrix::from_rows(field, converted).expect("square integer rows")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.dim + j] = v;
    }

    fn same_shape(&self, other: &ScalarMatrix) {
        assert!(self.field == other.field, "field mismatch");
        assert!(self.dim == other.dim, "dimension mismatch");
    }

    pub fn add(&self, other: &ScalarMatrix) -> ScalarMatrix {
        self.same_shape(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        ScalarMatrix { dim: self.dim, field: self.field, entries }
    }

    pub fn sub(&self, other: &ScalarMatrix) -> ScalarMatrix {
        self.same_shape(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        ScalarMatrix { dim: self.dim, field: self.field, entries }
    }

    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        self.same_shape(other);
        let mut out = ScalarMatrix::zeros(self.field, self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                if self.get(i, k).is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    let v = out.get(i, j).add(&self.get(i, k).mul(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> ScalarMatrix {
        let mut acc = ScalarMatrix::identity(self.field, self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == ScalarMatrix::identity(self.field, self.dim)
    }

    /// Gauss-Jordan inverse; fails on singular input.
    pub fn inv(&self) -> Result<ScalarMatrix, AlgebraError> {
        let n = self.dim;
        let mut work = self.clone();
        let mut out = ScalarMatrix::identity(self.field, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !work.get(r, col).is_zero())
                .ok_or(AlgebraError::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    let a = work.get(pivot, j).clone();
                    let b = work.get(col, j).clone();
                    work.set(pivot, j, b);
                    work.set(col, j, a);
                    let a = out.get(pivot, j).clone();
                    let b = out.get(col, j).clone();
                    out.set(pivot, j, b);
                    out.set(col, j, a);
                }
            }
            let inv = work.get(col, col).inv()?;
            for j in 0..n {
                work.set(col, j, work.get(col, j).mul(&inv));
                out.set(col, j, out.get(col, j).mul(&inv));
            }
            for r in 0..n {
                if r == col || work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col).clone();
                for j in 0..n {
                    let w = work.get(r, j).sub(&factor.mul(work.get(col, j)));
                    work.set(r, j, w);
                    let o = out.get(r, j).sub(&factor.mul(out.get(col, j)));
                    out.set(r, j, o);
                }
            }
        }
        Ok(out)
    }

    /// Determinant by Gaussian elimination; the empty matrix has
    /// determinant 1.
    pub fn det(&self) -> Scalar {
        let n = self.dim;
        let mut work = self.clone();
        let mut det = Scalar::one(self.field);
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !work.get(r, col).is_zero()) {
                Some(p) => p,
                None => return Scalar::zero(self.field),
            };
            if pivot != col {
                for j in 0..n {
                    let a = work.get(pivot, j).clone();
                    let b = work.get(col, j).clone();
                    work.set(pivot, j, b);
                    work.set(col, j, a);
                }
                det = det.neg();
            }
            let p = work.get(col, col).clone();
            det = det.mul(&p);
            let inv = p.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col).mul(&inv);
                for j in col..n {
                    let w = work.get(r, j).sub(&factor.mul(work.get(col, j)));
                    work.set(r, j, w);
                }
            }
        }
        det
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert!(self.field == other.field, "field mismatch");
        let n = self.dim + other.dim;
        let mut out = ScalarMatrix::zeros(self.field, n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                out.set(self.dim + i, self.dim + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// The matrix as a polynomial matrix scaled by `t^k`.
    pub fn to_poly_shift(&self, k: i64) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, LaurentPoly::monomial(self.get(i, j).clone(), k));
            }
        }
        out
    }

    /// Applies a scalar map entrywise.
    pub fn map<F>(&self, mut f: F) -> Result<ScalarMatrix, AlgebraError>
    where
        F: FnMut(&Scalar) -> Result<Scalar, AlgebraError>,
    {
        let entries: Result<Vec<Scalar>, AlgebraError> = self.entries.iter().map(&mut f).collect();
        let entries = entries?;
        let field = entries.first().map_or(self.field, Scalar::field);
        Ok(ScalarMatrix { dim: self.dim, field, entries })
    }
}

/// A rectangular matrix of Laurent polynomials, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { rows, cols, field, entries: vec![LaurentPoly::zero(field); rows * cols] }
    }

    pub fn identity(field: Field, dim: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(field, dim, dim);
        for i in 0..dim {
            m.set(i, i, LaurentPoly::one(field));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        assert!(v.field() == self.field, "field mismatch");
        self.entries[i * self.cols + j] = v;
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let entries: Result<Vec<LaurentPoly>, AlgebraError> = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect();
        Ok(PolyMatrix { rows: self.rows, cols: self.cols, field: self.field, entries: entries? })
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(LaurentPoly::neg).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.cols != other.rows || self.field != other.field {
            return Err(AlgebraError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = PolyMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).add(&self.get(i, k).mul(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Copies `block` into position with its top-left corner at `(i0, j0)`.
    pub fn paste(&mut self, i0: usize, j0: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(i0 + i, j0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn without_row(&self, row: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.field, self.rows - 1, self.cols);
        for i in 0..self.rows - 1 {
            let src = if i < row { i } else { i + 1 };
            for j in 0..self.cols {
                out.set(i, j, self.get(src, j).clone());
            }
        }
        out
    }

    pub fn without_col(&self, col: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.field, self.rows, self.cols - 1);
        for i in 0..self.rows {
            for j in 0..self.cols - 1 {
                let src = if j < col { j } else { j + 1 };
                out.set(i, j, self.get(i, src).clone());
            }
        }
        out
    }

    /// Fraction-free determinant. Negative exponents are cleared by a global
    /// `t^s` first and the compensating monomial is restored at the end, so
    /// the Bareiss recurrence only ever divides exactly.
    pub fn det(&self) -> LaurentPoly {
        assert!(self.rows == self.cols, "determinant of a non-square matrix");
        DET_EVALS.fetch_add(1, Ordering::Relaxed);
        let n = self.rows;
        if n == 0 {
            return LaurentPoly::one(self.field);
        }
        let lift = self
            .entries
            .iter()
            .filter_map(LaurentPoly::min_exp)
            .min()
            .unwrap_or(0)
            .min(0);
        let mut m: Vec<LaurentPoly> = self.entries.iter().map(|p| p.shift(-lift)).collect();
        let at = |m: &Vec<LaurentPoly>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = false;
        let mut prev = LaurentPoly::one(self.field);
        for k in 0..n {
            let pivot = match (k..n).find(|&r| !m[r * n + k].is_zero()) {
                Some(p) => p,
                None => return LaurentPoly::zero(self.field),
            };
            if pivot != k {
                for j in 0..n {
                    m.swap(pivot * n + j, k * n + j);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = at(&m, k, k)
                        .mul(&at(&m, i, j))
                        .sub(&at(&m, i, k).mul(&at(&m, k, j)));
                    m[i * n + j] = v.exact_div(&prev);
                }
                m[i * n + k] = LaurentPoly::zero(self.field);
            }
            prev = at(&m, k, k);
        }
        let d = at(&m, n - 1, n - 1).shift(lift * n as i64);
        if sign {
            d.neg()
        } else {
            d
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rational()
    }

    /// Laplace expansion along the first row, the slow reference.
    fn det_cofactor(m: &PolyMatrix) -> LaurentPoly {
        let n = m.rows();
        if n == 0 {
            return LaurentPoly::one(m.field());
        }
        let mut acc = LaurentPoly::zero(m.field());
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let minor = m.without_row(0).without_col(j);
            let term = m.get(0, j).mul(&det_cofactor(&minor));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn identity_determinant_is_one() {
        assert_eq!(PolyMatrix::identity(q(), 4).det(), LaurentPoly::one(q()));
        assert_eq!(PolyMatrix::zeros(q(), 0, 0).det(), LaurentPoly::one(q()));
    }

    #[test]
    fn two_by_two_symbolic_determinant() {
        let t = LaurentPoly::from_integers(q(), 1, &[1]);
        let one = LaurentPoly::one(q());
        let mut m = PolyMatrix::zeros(q(), 2, 2);
        m.set(0, 0, t.clone());
        m.set(0, 1, one.clone());
        m.set(1, 0, one);
        m.set(1, 1, t);
        assert_eq!(m.det(), LaurentPoly::from_integers(q(), 0, &[-1, 0, 1]));
    }

    #[test]
    fn bareiss_handles_zero_pivots_and_laurent_entries() {
        let mut m = PolyMatrix::zeros(q(), 3, 3);
        m.set(0, 1, LaurentPoly::from_integers(q(), -1, &[1]));
        m.set(1, 0, LaurentPoly::from_integers(q(), 0, &[1, 1]));
        m.set(2, 2, LaurentPoly::from_integers(q(), 2, &[3]));
        assert_eq!(m.det(), det_cofactor(&m));
        assert_eq!(m.det(), LaurentPoly::from_integers(q(), 1, &[-3, -3]));
    }

    #[test]
    fn bareiss_matches_cofactor_on_dense_f7_matrix() {
        let f = Field::Prime(7);
        let mut m = PolyMatrix::zeros(f, 4, 4);
        let mut v = 1i64;
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, LaurentPoly::from_integers(f, (v % 3) - 1, &[v % 7, (v + 2) % 7]));
                v = v.wrapping_mul(31).wrapping_add(17) % 101;
            }
        }
        assert_eq!(m.det(), det_cofactor(&m));
    }

    #[test]
    fn scalar_matrix_inverse_and_det() {
        let f = Field::Prime(5);
        let m = ScalarMatrix::from_integer_rows(f, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inv().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.det(), Scalar::from_integer(f, -2));
        let singular = ScalarMatrix::from_integer_rows(f, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inv().is_err());
        assert!(singular.det().is_zero());
    }

    #[test]
    fn determinant_counter_advances() {
        let before = det_eval_count();
        PolyMatrix::identity(q(), 2).det();
        assert!(det_eval_count() > before);
    }
}

//! Dense exact matrices over a [`Field`], with the row-reduction kernel
//! behind inverses, solves, and null spaces.
//!
//! Pivoting always picks the first nonzero entry, so reduced forms (and
//! everything derived from them) are deterministic.

use crate::scalar::Field;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(field: F, entries: &[F::Elem]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zero(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Column vector.
    pub fn column(field: F, entries: &[F::Elem]) -> Self {
        Matrix { field, rows: entries.len(), cols: 1, data: entries.to_vec() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.add(a, b);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.sub(a, b);
        }
        out
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.field.mul(a, s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let f = &self.field;
        let mut out = Matrix::zero(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let prod = f.mul(a, b);
                    let cur = out.get(i, j).clone();
                    out.set(i, j, f.add(&cur, &prod));
                }
            }
        }
        out
    }

    /// Kronecker product: block `(i,j)` of the result is `a[i][j] * other`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let f = self.field.clone();
        Matrix::from_fn(f, self.rows * other.rows, self.cols * other.cols, |i, j| {
            let a = self.get(i / other.rows, j / other.cols);
            let b = other.get(i % other.rows, j % other.cols);
            self.field.mul(a, b)
        })
    }

    /// In-place Gauss-Jordan reduction; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in 0..self.cols {
                    let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Exact inverse; `None` when singular or non-square.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = self.field.clone();
        let mut aug = Matrix::zero(f.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        Some(Matrix::from_fn(f, n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// Solve `self * x = rhs` for `x` (all columns at once).
    /// `None` when inconsistent; for underdetermined systems the free
    /// variables are set to zero.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let f = self.field.clone();
        let mut aug = Matrix::zero(f.clone(), self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                aug.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        let pivots = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None; // a pivot in the rhs block marks inconsistency
        }
        let mut x = Matrix::zero(f, self.cols, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(c, j, aug.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Whether `self * x = rhs` has a *unique* solution.
    pub fn solve_unique(&self, rhs: &Self) -> Option<Self> {
        let x = self.solve(rhs)?;
        if self.rank() == self.cols {
            Some(x)
        } else {
            None
        }
    }

    /// Basis of the null space, returned as the columns of a matrix.
    pub fn kernel(&self) -> Self {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !pivot_set[c]).collect();
        let mut basis = Matrix::zero(f.clone(), self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(m.get(r, fc)));
            }
        }
        basis
    }

    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.field.render(self.get(i, j))).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int, PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn inverse_of_gram_example() {
        // Gram matrix of the 2-dimensional F_2 algebra with eps = (1, 1).
        let f2 = PrimeField::new(2);
        let m = Matrix::from_rows(f2, vec![vec![1, 1], vec![1, 0]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f2, 2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Matrix::from_rows(Rationals, vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]]);
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_inconsistent_detected() {
        let a = Matrix::from_rows(Rationals, vec![vec![rat_int(1), rat_int(1)], vec![rat_int(1), rat_int(1)]]);
        let b = Matrix::column(Rationals, &[rat_int(0), rat_int(1)]);
        assert!(a.solve(&b).is_none());
    }

    #[test]
    fn kronecker_dimensions_and_entries() {
        let a = Matrix::from_rows(Rationals, vec![vec![rat_int(1), rat_int(2)]]);
        let b = Matrix::from_rows(Rationals, vec![vec![rat_int(3)], vec![rat_int(4)]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(*k.get(1, 1), rat_int(8));
    }

    fn small_rat_matrix(n: usize) -> impl Strategy<Value = Matrix<Rationals>> {
        proptest::collection::vec(proptest::collection::vec((-6i64..7, 1i64..4), n), n).prop_map(
            move |rows| {
                Matrix::from_rows(
                    Rationals,
                    rows.into_iter()
                        .map(|r| r.into_iter().map(|(a, b)| rat(a, b)).collect())
                        .collect(),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn inverse_round_trip(m in small_rat_matrix(3)) {
            if let Some(inv) = m.inverse() {
                prop_assert_eq!(m.mul(&inv), Matrix::identity(Rationals, 3));
                prop_assert_eq!(inv.mul(&m), Matrix::identity(Rationals, 3));
            } else {
                prop_assert!(m.rank() < 3);
            }
        }

        #[test]
        fn kernel_is_annihilated(m in small_rat_matrix(4)) {
            let k = m.kernel();
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(m.rank() + k.cols(), 4);
        }
    }
}

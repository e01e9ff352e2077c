//! Dense matrices and sparse row echelon forms over an exact field.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn diagonal(d: Vec<F>) -> Self {
        let n = d.len();
        let mut m = Matrix::zeros(n, n);
        for (i, v) in d.into_iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from column vectors of equal length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &F) {
        let i = r * self.cols + c;
        self.data[i] = self.data[i].add(v);
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(i, v)| (i / self.cols, i % self.cols, v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_at(r, c, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Kronecker product; the first factor indexes the slow coordinate.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for (r1, c1, a) in self.entries() {
            for (r2, c2, b) in o.entries() {
                out.set(r1 * o.rows + r2, c1 * o.cols + c2, a.mul(b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert(dense_to_sparse(self.row(r)));
        }
        e.rank()
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert(dense_to_sparse(self.row(r)));
        }
        e.kernel_basis()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if piv != col {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            let p = a.get(col, col).inv().unwrap();
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                a.axpy_row(r, col, &f.neg());
                inv.axpy_row(r, col, &f.neg());
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &F) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            self.data[i] = self.data[i].mul(s);
        }
    }

    /// row[dst] += s * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, s: &F) {
        for c in 0..self.cols {
            let v = self.get(src, c);
            if v.is_zero() {
                continue;
            }
            let add = v.mul(s);
            self.add_at(dst, c, &add);
        }
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        Matrix::from_fn(self.rows, self.cols + o.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                o.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut m = Matrix::zeros(self.rows + o.rows, self.cols + o.cols);
        for (r, c, v) in self.entries() {
            m.set(r, c, v.clone());
        }
        for (r, c, v) in o.entries() {
            m.set(self.rows + r, self.cols + c, v.clone());
        }
        m
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
}

impl<F: Field + fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub type SparseVec<F> = BTreeMap<usize, F>;

pub fn dense_to_sparse<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn sparse_to_dense<F: Field>(v: &SparseVec<F>, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a += s * b` on sparse vectors.
pub fn sparse_axpy<F: Field>(a: &mut SparseVec<F>, s: &F, b: &SparseVec<F>) {
    if s.is_zero() {
        return;
    }
    for (i, x) in b {
        let add = x.mul(s);
        match a.get_mut(i) {
            Some(v) => {
                *v = v.add(&add);
                if v.is_zero() {
                    a.remove(i);
                }
            }
            None => {
                a.insert(*i, add);
            }
        }
    }
}

/// Fully reduced row echelon basis of a growing row space.
///
/// Every stored row has pivot coefficient one and vanishes at all other
/// pivot columns, so reduction of a vector is a single pass.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ncols: usize,
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec<F>> {
        self.rows.get(&pivot)
    }

    /// Reduces `v` modulo the row space.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let hits: Vec<usize> = v.keys().copied().filter(|k| self.rows.contains_key(k)).collect();
        for p in hits {
            let Some(c) = v.get(&p).cloned() else { continue };
            sparse_axpy(&mut v, &c.neg(), &self.rows[&p]);
        }
        v
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let mut r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let li = lead.inv().unwrap();
        for x in r.values_mut() {
            *x = x.mul(&li);
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                sparse_axpy(row, &c.neg(), &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect()
    }

    /// Basis of the common kernel of the stored rows, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        self.non_pivots()
            .into_iter()
            .map(|f| {
                let mut v = vec![F::zero(); self.ncols];
                v[f] = F::one();
                for (p, row) in &self.rows {
                    if let Some(c) = row.get(&f) {
                        v[*p] = c.neg();
                    }
                }
                v
            })
            .collect()
    }
}

/// Basis of the column space of `m` (as sparse vectors in echelon form).
pub fn column_space<F: Field>(m: &Matrix<F>) -> Echelon<F> {
    let mut e = Echelon::new(m.rows());
    for c in 0..m.cols() {
        e.insert(dense_to_sparse(&m.column(c)));
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Qq, Rat};

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_fn(rows.len(), rows[0].len(), |r, c| Rat::from(rows[r][c]))
    }

    #[test]
    fn rank_nullspace_inverse() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
        let b = m(&[&[2, 1], &[1, 1]]);
        let bi = b.inverse().unwrap();
        assert!(b.mul(&bi).is_identity());
        assert!(a.inverse().is_none());
    }

    #[test]
    fn kron_shape_and_identity() {
        let i2: Matrix<Qq> = Matrix::identity(2);
        let i3: Matrix<Qq> = Matrix::identity(3);
        assert!(i2.kron(&i3).is_identity());
        let a = m(&[&[0, 1], &[0, 0]]);
        let k = a.kron(&Matrix::identity(2));
        assert_eq!(*k.get(0, 2), Rat::from(1));
        assert_eq!(*k.get(1, 3), Rat::from(1));
    }

    #[test]
    fn echelon_reduction_is_projection() {
        let mut e = Echelon::<Rat>::new(3);
        assert!(e.insert(dense_to_sparse(&[Rat::from(1), Rat::from(1), Rat::from(0)])));
        assert!(!e.insert(dense_to_sparse(&[Rat::from(2), Rat::from(2), Rat::from(0)])));
        let r = e.reduce(dense_to_sparse(&[Rat::from(3), Rat::from(0), Rat::from(5)]));
        assert_eq!(r.get(&0), None);
        assert_eq!(r.get(&1), Some(&Rat::from(-3)));
        assert_eq!(e.non_pivots(), vec![1, 2]);
    }
}

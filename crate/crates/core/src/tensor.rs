//! Index bookkeeping for tensor products of several factors and sparse
//! operators acting on two neighbouring factors.

use std::collections::BTreeMap;

use crate::arith::Field;
use crate::linalg::Matrix;

/// Splits a row-major index into per-factor indices (first factor slowest).
pub fn split_index(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (k, &d) in dims.iter().enumerate().rev() {
        out[k] = idx % d;
        idx /= d;
    }
    out
}

pub fn join_index(parts: &[usize], dims: &[usize]) -> usize {
    parts.iter().zip(dims).fold(0, |acc, (&p, &d)| acc * d + p)
}

/// Linear operator stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOp<F: Field> {
    pub nrows: usize,
    pub cols: Vec<BTreeMap<usize, F>>,
}

impl<F: Field> SparseOp<F> {
    pub fn from_dense(m: &Matrix<F>) -> Self {
        let mut cols = vec![BTreeMap::new(); m.cols()];
        for (r, c, v) in m.entries() {
            cols[c].insert(r, v.clone());
        }
        SparseOp { nrows: m.rows(), cols }
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.nrows, self.cols.len());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, c, v.clone());
            }
        }
        m
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseOp<G> {
        SparseOp {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, f(v))).filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }

    /// `self * o`
    pub fn compose(&self, o: &SparseOp<F>) -> SparseOp<F> {
        assert_eq!(self.cols.len(), o.nrows, "shape mismatch in compose");
        let cols = o
            .cols
            .iter()
            .map(|oc| {
                let mut acc: BTreeMap<usize, F> = BTreeMap::new();
                for (k, b) in oc {
                    crate::linalg::sparse_axpy(&mut acc, b, &self.cols[*k]);
                }
                acc
            })
            .collect();
        SparseOp { nrows: self.nrows, cols }
    }

    /// `I (x) op (x) I` where `op` maps factors `pos, pos+1` of a tensor space
    /// with factor dimensions `dims` into a pair of factors with dimensions
    /// `out_pair`. The remaining factors are untouched.
    pub fn two_site(dims: &[usize], pos: usize, op: &SparseOp<F>, out_pair: (usize, usize)) -> SparseOp<F> {
        let mut out_dims = dims.to_vec();
        out_dims[pos] = out_pair.0;
        out_dims[pos + 1] = out_pair.1;
        let total_in: usize = dims.iter().product();
        let total_out: usize = out_dims.iter().product();
        let cols = (0..total_in)
            .map(|c| {
                let parts = split_index(c, dims);
                let local = parts[pos] * dims[pos + 1] + parts[pos + 1];
                let mut col = BTreeMap::new();
                for (r, v) in &op.cols[local] {
                    let mut p = parts.clone();
                    p[pos] = r / out_pair.1;
                    p[pos + 1] = r % out_pair.1;
                    col.insert(join_index(&p, &out_dims), v.clone());
                }
                col
            })
            .collect();
        SparseOp { nrows: total_out, cols }
    }
}

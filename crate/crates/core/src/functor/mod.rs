//! The Schur-Weyl duality functor `F_n(M) = V^n (x)_{R^I(n)} M`.
//!
//! On a finite-dimensional `M` the completion disappears: on the summand
//! `V_nu (x) e(nu)M` the spectral variable `X_a` acts as
//! `X(nu_a)(1 + x_a)` with `x_a` nilpotent, so every power series in the
//! `x_a` is a polynomial. The right action of `tau_a` comes from the
//! normalized R-matrix expanded around the anchor ratio.

mod apply;
mod bimodule;

pub use apply::{
    compare_modules, functor_apply, functor_map, is_intertwiner, verify_exactness, Comparison, ExactnessReport, FunctorOutput, Slice,
};
pub use bimodule::verify_bimodule;

use std::collections::BTreeMap;

use crate::affine_rep::{fundamental_module, FinModule};
use crate::arith::{compose, Field, Qq, Qqz, TruncPoly};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{build_quiver, cartan_and_type, KlrParams, Quiver, SpectralIndex, TypeTag};
use crate::rmatrix::{normalized_rmatrix, Method, SpectralRMatrix};
use crate::tensor::{join_index, split_index};

/// Conventions emitted with every functor computation.
pub const ORIENTATION: &str = "d_ij = order of d_{S(i),S(j)}(z) at z = X(j)/X(i); tau_a on e(nu) uses R_{S(nu_a),S(nu_{a+1})}(X_a/X_{a+1}) in the variables of e(s_a nu)";

/// Index set with its quiver, KLR parameters and the R-matrices needed by
/// the functor.
#[derive(Clone, Debug)]
pub struct SwdContext {
    pub rank_n: usize,
    pub index: Vec<SpectralIndex>,
    pub quiver: Quiver,
    pub params: KlrParams,
    pub type_tag: TypeTag,
    fundamentals: BTreeMap<usize, FinModule<Qq>>,
    rmatrices: BTreeMap<(usize, usize), SpectralRMatrix>,
}

/// A sparse kernel entry: row in `V_l (x) V_k`, column in `V_k (x) V_l`.
pub type KernelEntry = (usize, usize, TruncPoly);

impl SwdContext {
    pub fn new(rank_n: usize, index: Vec<SpectralIndex>) -> Result<Self> {
        let quiver = build_quiver(&index, rank_n)?;
        let (params, type_tag) = cartan_and_type(&quiver);
        let mut fundamentals = BTreeMap::new();
        for i in &index {
            if !fundamentals.contains_key(&i.s) {
                fundamentals.insert(i.s, fundamental_module(rank_n, i.s)?);
            }
        }
        let mut rmatrices = BTreeMap::new();
        for &k in fundamentals.keys() {
            for &l in fundamentals.keys() {
                rmatrices.insert((k, l), normalized_rmatrix(k, l, rank_n, Method::Spectral)?);
            }
        }
        Ok(SwdContext { rank_n, index, quiver, params, type_tag, fundamentals, rmatrices })
    }

    pub fn vertices(&self) -> usize {
        self.index.len()
    }

    /// `X(i)`
    pub fn anchor(&self, i: usize) -> Qq {
        self.index[i].x.to_qq()
    }

    pub fn fundamental(&self, i: usize) -> &FinModule<Qq> {
        &self.fundamentals[&self.index[i].s]
    }

    pub fn vdims(&self, nu: &[usize]) -> Vec<usize> {
        nu.iter().map(|&i| self.fundamental(i).dim()).collect()
    }

    /// `V_{S(nu_1)} (x) ... (x) V_{S(nu_n)}` without spectral parameters.
    pub fn slice_module(&self, nu: &[usize]) -> FinModule<Qq> {
        let mods: Vec<&FinModule<Qq>> = nu.iter().map(|&i| self.fundamental(i)).collect();
        FinModule::tensor_all(&mods)
    }

    /// Per-factor pieces of `E_0` and `F_0` on `V_nu`; the `b`-th piece is
    /// the term of the iterated coproduct acting by `e_0` (`f_0`) on factor
    /// `b`, which carries `X_b` (`X_b^{-1}`).
    pub fn index0_pieces(&self, nu: &[usize]) -> (Vec<Matrix<Qq>>, Vec<Matrix<Qq>>) {
        let mods: Vec<&FinModule<Qq>> = nu.iter().map(|&i| self.fundamental(i)).collect();
        let kron_all = |ms: Vec<Matrix<Qq>>| ms.into_iter().reduce(|a, b| a.kron(&b)).expect("n >= 1");
        let mut es = Vec::new();
        let mut fs = Vec::new();
        for b in 0..mods.len() {
            es.push(kron_all(
                mods.iter()
                    .enumerate()
                    .map(|(c, m)| match c.cmp(&b) {
                        std::cmp::Ordering::Less => m.k_matrix(0),
                        std::cmp::Ordering::Equal => m.e[0].clone(),
                        std::cmp::Ordering::Greater => Matrix::identity(m.dim()),
                    })
                    .collect(),
            ));
            fs.push(kron_all(
                mods.iter()
                    .enumerate()
                    .map(|(c, m)| match c.cmp(&b) {
                        std::cmp::Ordering::Less => Matrix::identity(m.dim()),
                        std::cmp::Ordering::Equal => m.f[0].clone(),
                        std::cmp::Ordering::Greater => m.k_inv_matrix(0),
                    })
                    .collect(),
            ));
        }
        (es, fs)
    }

    /// Matrix of `v -> v tau_a` for colors `(i, j)` at positions `(a, a+1)`,
    /// as series in the `(x_a, x_{a+1})` of the target summand `e(s_a nu)`
    /// truncated to `orders`.
    ///
    /// For `i != j` this is `R(z0 u) (x_a - x_{a+1})^{d_ij}` with
    /// `z0 = X(j)/X(i)` and `u = (1 + x_a)/(1 + x_{a+1})`; the pole of `R`
    /// at `z0` is cancelled exactly. For `i = j` it is
    /// `(R(u) - 1)/(x_a - x_{a+1}) = h(u)/(1 + x_{a+1})` with
    /// `h = (R(z) - 1)/(z - 1)`.
    pub fn tau_kernel(&self, i: usize, j: usize, orders: [usize; 2]) -> Result<Vec<KernelEntry>> {
        let (k, l) = (self.index[i].s, self.index[j].s);
        let r = &self.rmatrices[&(k, l)].dense;
        let one = TruncPoly::constant(&orders, Qq::one());
        let xa = TruncPoly::var(&orders, 0);
        let xb = TruncPoly::var(&orders, 1);
        let ib = one.add(&xb).inv().expect("unit");
        let u = one.add(&xa).mul(&ib);
        let mut out = Vec::new();
        if i == j {
            let z1 = Qq::one();
            for row in 0..r.rows() {
                for col in 0..r.cols() {
                    let mut f = r.get(row, col).clone();
                    if row == col {
                        f = f.sub(&Qqz::one());
                    }
                    if f.is_zero() {
                        continue;
                    }
                    let h = f.times_linear_power(&z1, -1);
                    if h.pole_order(&z1)? > 0 {
                        return Err(Error::Pole { var: "z".into(), factor: "z - 1 in (R(z) - 1)/(z - 1)".into() });
                    }
                    out.push((row, col, compose(&h, &u)?.mul(&ib)));
                }
            }
        } else {
            let z0 = self.index[j].x.div(&self.index[i].x).to_qq();
            let z0i = z0.inv().expect("anchors are nonzero");
            let d = self.params.d[i][j];
            let arg = u.scale(&z0);
            let p = xa.sub(&xb);
            let lift = one.add(&xb).scale(&z0i);
            for (row, col, f) in r.entries() {
                if f.is_zero() {
                    continue;
                }
                let kk = f.pole_order(&z0)?.max(0) as usize;
                if kk > d {
                    return Err(Error::Pole {
                        var: "z".into(),
                        factor: format!("pole of order {kk} at z = {} exceeds the arrow count {d}", self.index[j].x.div(&self.index[i].x)),
                    });
                }
                let nt = f.times_linear_power(&z0, kk as i64);
                let g = compose(&nt, &arg)?.mul(&p.pow((d - kk) as u32)).mul(&lift.pow(kk as u32));
                out.push((row, col, g));
            }
        }
        Ok(out)
    }

    /// Applies a kernel at positions `(a, a+1)` of basis vector `v` of
    /// `V_nu`; returns `(basis index in V_{s_a nu}, kernel entry index)`.
    pub fn kernel_targets(&self, nu: &[usize], a: usize, v: usize, kernel: &[KernelEntry]) -> Vec<(usize, usize)> {
        let dims = self.vdims(nu);
        let mut snu = nu.to_vec();
        snu.swap(a, a + 1);
        let tdims = self.vdims(&snu);
        let parts = split_index(v, &dims);
        let col = join_index(&[parts[a], parts[a + 1]], &[dims[a], dims[a + 1]]);
        let mut out = Vec::new();
        for (e, (row, c, _)) in kernel.iter().enumerate() {
            if *c != col {
                continue;
            }
            let pair = split_index(*row, &[dims[a + 1], dims[a]]);
            let mut w = parts.clone();
            w[a] = pair[0];
            w[a + 1] = pair[1];
            out.push((join_index(&w, &tdims), e));
        }
        out
    }
}

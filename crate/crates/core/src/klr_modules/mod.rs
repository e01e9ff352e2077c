//! Finite-dimensional graded modules over KLR algebras, presented by
//! explicit matrices.

mod convolution;
mod format;
mod maps;

pub use convolution::{convolution, outer_tensor};
pub use format::{parse_module, write_module, MODULE_HEADER};
pub use maps::{build_ses, hom_basis, quotient, submodule, ModuleMap, SesFamily, SesWitness};

use std::collections::BTreeMap;

use crate::affine_rep::RelationReport;
use crate::arith::{Field, LaurentQ, Qq, Rat};
use crate::error::{Error, Result};
use crate::klr::{braid_correction, q_at, straightening_coefficient, Colors, KlrSpec, XPoly};
use crate::linalg::Matrix;
use crate::quiver::KlrParams;

/// A graded `R^I(n)`-module: each basis vector lies in one `e(nu)M` and one
/// degree; `x[k]` and `tau[a]` are 0-based generator matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDModule {
    pub params: KlrParams,
    pub n: usize,
    pub colors: Vec<Colors>,
    pub degrees: Vec<i64>,
    pub x: Vec<Matrix<Qq>>,
    pub tau: Vec<Matrix<Qq>>,
}

impl FDModule {
    pub fn dim(&self) -> usize {
        self.colors.len()
    }

    pub fn spec(&self) -> KlrSpec {
        KlrSpec::new(self.params.clone(), self.n)
    }

    /// Indices of basis vectors in `e(nu)M`.
    pub fn component(&self, nu: &[usize]) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.colors[b] == nu).collect()
    }

    /// Color sequences with nonzero `e(nu)M`, sorted.
    pub fn support(&self) -> Vec<Colors> {
        let mut s: Vec<Colors> = self.colors.clone();
        s.sort();
        s.dedup();
        s
    }

    pub fn idempotent(&self, nu: &[usize]) -> Matrix<Qq> {
        Matrix::diagonal((0..self.dim()).map(|b| if self.colors[b] == nu { Qq::one() } else { Qq::zero() }).collect())
    }

    /// `p(x_1, ..., x_n)` acting on the module.
    pub fn eval_poly(&self, p: &XPoly) -> Matrix<Qq> {
        eval_xpoly(p, &self.x, self.dim())
    }

    /// Smallest `K` with `x_k^K = 0` on `e(nu)M`.
    pub fn nilpotency_order(&self, k: usize, nu: &[usize]) -> usize {
        let idx = self.component(nu);
        let xk = self.x[k].select(&idx, &idx);
        let mut p = Matrix::identity(idx.len());
        for order in 0..=idx.len() {
            if p.is_zero() {
                return order;
            }
            p = p.mul(&xk);
        }
        unreachable!("x is nilpotent on a graded module")
    }

    /// Validates the constructor inputs and every defining relation.
    pub fn new(
        params: KlrParams,
        n: usize,
        colors: Vec<Colors>,
        degrees: Vec<i64>,
        x: Vec<Matrix<Qq>>,
        tau: Vec<Matrix<Qq>>,
    ) -> Result<Self> {
        let m = FDModule { params, n, colors, degrees, x, tau };
        m.check_shape()?;
        let rep = m.check_relations();
        if !rep.is_clean() {
            return Err(Error::Rejected(rep.failures[0].clone()));
        }
        Ok(m)
    }

    fn check_shape(&self) -> Result<()> {
        let d = self.dim();
        let bad = |s: String| Err(Error::Incompatible(s));
        if self.degrees.len() != d {
            return bad(format!("{} degrees for {d} basis vectors", self.degrees.len()));
        }
        if self.x.len() != self.n || self.tau.len() != self.n.saturating_sub(1) {
            return bad(format!("expected {} x and {} tau matrices", self.n, self.n.saturating_sub(1)));
        }
        for c in &self.colors {
            if c.len() != self.n || c.iter().any(|&i| i >= self.params.len()) {
                return bad(format!("invalid color sequence {c:?}"));
            }
        }
        for m in self.x.iter().chain(&self.tau) {
            if m.rows() != d || m.cols() != d {
                return bad(format!("generator matrix of size {}x{} on a module of dimension {d}", m.rows(), m.cols()));
            }
        }
        Ok(())
    }

    /// All defining relations and homogeneity, as exact matrix identities.
    pub fn check_relations(&self) -> RelationReport {
        let mut rep = RelationReport::default();
        let n = self.n;
        let spec = self.spec();
        let support = self.support();
        let zero = Matrix::<Qq>::zeros(self.dim(), self.dim());
        for (k, xk) in self.x.iter().enumerate() {
            for (r, c, _) in xk.entries() {
                rep.record(self.colors[r] == self.colors[c], || format!("x{} does not preserve e(nu)", k + 1));
                rep.record(self.degrees[r] == self.degrees[c] + 2, || format!("x{} is not of degree 2", k + 1));
            }
            for m in k + 1..n {
                rep.record(xk.commutator(&self.x[m]).is_zero(), || format!("x{} x{} != x{} x{}", k + 1, m + 1, m + 1, k + 1));
            }
        }
        for (a, ta) in self.tau.iter().enumerate() {
            for (r, c, _) in ta.entries() {
                let mut s = self.colors[c].clone();
                s.swap(a, a + 1);
                rep.record(self.colors[r] == s, || format!("t{} e(nu) != e(s nu) t{}", a + 1, a + 1));
                rep.record(self.degrees[r] == self.degrees[c] + spec.tau_degree(a, &self.colors[c]), || {
                    format!("t{} is not homogeneous", a + 1)
                });
            }
            for b in a + 2..n.saturating_sub(1) {
                rep.record(ta.commutator(&self.tau[b]).is_zero(), || format!("t{} t{} != t{} t{}", a + 1, b + 1, b + 1, a + 1));
            }
            let sq = ta.mul(ta);
            let mut rhs = zero.clone();
            for nu in &support {
                let q = q_at(&self.params, nu[a], nu[a + 1], a, a + 1, n);
                rhs = rhs.add(&self.eval_poly(&q).mul(&self.idempotent(nu)));
            }
            rep.record(sq == rhs, || format!("t{}^2 != Q(x{}, x{})", a + 1, a + 1, a + 2));
            for m in 0..n {
                let sm = if m == a {
                    a + 1
                } else if m == a + 1 {
                    a
                } else {
                    m
                };
                let lhs = ta.mul(&self.x[m]).sub(&self.x[sm].mul(ta));
                let mut rhs = zero.clone();
                for nu in &support {
                    let c = straightening_coefficient(nu, a, m);
                    if c != 0 {
                        rhs = rhs.add(&self.idempotent(nu).scale(&Qq::int(c)));
                    }
                }
                rep.record(lhs == rhs, || format!("t{} x{} - x{} t{} relation", a + 1, m + 1, sm + 1, a + 1));
            }
        }
        for k in 0..n.saturating_sub(2) {
            let (t0, t1) = (&self.tau[k], &self.tau[k + 1]);
            let lhs = t1.mul(t0).mul(t1).sub(&t0.mul(t1).mul(t0));
            let mut rhs = zero.clone();
            for nu in &support {
                let corr = braid_correction(&self.params, nu, k);
                if !corr.is_zero() {
                    rhs = rhs.add(&self.eval_poly(&corr).mul(&self.idempotent(nu)));
                }
            }
            rep.record(lhs == rhs, || format!("braid relation at t{}", k + 1));
        }
        rep
    }

    /// `nu -> graded dimension of e(nu)M`.
    pub fn graded_character(&self) -> BTreeMap<Colors, LaurentQ> {
        let mut ch: BTreeMap<Colors, LaurentQ> = BTreeMap::new();
        for (c, &d) in self.colors.iter().zip(&self.degrees) {
            ch.entry(c.clone()).or_insert_with(LaurentQ::zero).add_term(d, &Rat::one());
        }
        ch
    }

    /// `q^s M`: every degree raised by `s`.
    pub fn grade_shift(&self, s: i64) -> FDModule {
        let mut m = self.clone();
        for d in &mut m.degrees {
            *d += s;
        }
        m
    }

    pub fn direct_sum(&self, o: &FDModule) -> Result<FDModule> {
        if self.params != o.params || self.n != o.n {
            return Err(Error::Incompatible("direct sum of modules over different algebras".into()));
        }
        Ok(FDModule {
            params: self.params.clone(),
            n: self.n,
            colors: self.colors.iter().chain(&o.colors).cloned().collect(),
            degrees: self.degrees.iter().chain(&o.degrees).copied().collect(),
            x: self.x.iter().zip(&o.x).map(|(a, b)| a.direct_sum(b)).collect(),
            tau: self.tau.iter().zip(&o.tau).map(|(a, b)| a.direct_sum(b)).collect(),
        })
    }

    /// Largest minus smallest degree.
    pub fn degree_span(&self) -> i64 {
        match (self.degrees.iter().max(), self.degrees.iter().min()) {
            (Some(a), Some(b)) => a - b,
            _ => 0,
        }
    }
}

/// Evaluates a polynomial at commuting matrices.
pub fn eval_xpoly(p: &XPoly, xs: &[Matrix<Qq>], dim: usize) -> Matrix<Qq> {
    let mut acc = Matrix::zeros(dim, dim);
    for (e, c) in p.terms() {
        let mut m = Matrix::identity(dim);
        for (k, &ek) in e.iter().enumerate() {
            for _ in 0..ek {
                m = m.mul(&xs[k]);
            }
        }
        acc = acc.add(&m.scale(&Qq::rat(c.clone())));
    }
    acc
}

/// The module `L(nu)`: one vector in `e(nu)M` of degree 0 with `x = tau = 0`.
///
/// Rejected with the failing relation unless consecutive colors are distinct
/// and joined by an arrow.
pub fn one_dim_module(params: &KlrParams, nu: &[usize]) -> Result<FDModule> {
    let n = nu.len();
    if nu.iter().any(|&i| i >= params.len()) {
        return Err(Error::OutOfRange(format!("color sequence {nu:?}")));
    }
    let z = Matrix::zeros(1, 1);
    FDModule::new(params.clone(), n, vec![nu.to_vec()], vec![0], vec![z.clone(); n], vec![z; n.saturating_sub(1)])
}

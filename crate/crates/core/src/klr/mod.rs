//! KLR algebras of a pole quiver: the faithful polynomial representation,
//! exact relation checks and graded dimensions.

mod perm;
mod polyrep;
mod xpoly;

pub use perm::Perm;
pub use polyrep::{artin_monomials, basis_input, content, graded_dim, verify_klr_relations};
pub use polyrep::{Gen, KlrSpec, PolyRep, PolyVec};
pub use xpoly::{monomials_of_degree, XPoly};

use crate::quiver::KlrParams;

/// A color sequence `nu` in `I^n`.
pub type Colors = Vec<usize>;

/// `Q_{ij}(x_a, x_b)` in `n` variables.
pub fn q_at(params: &KlrParams, i: usize, j: usize, a: usize, b: usize, n: usize) -> XPoly {
    XPoly::from_poly2(n, &params.q_poly(i, j), a, b)
}

/// Right-hand side of the braid relation on `e(nu)` at `(k, k+1, k+2)`.
pub fn braid_correction(params: &KlrParams, nu: &[usize], k: usize) -> XPoly {
    let n = nu.len();
    if nu[k] != nu[k + 2] {
        return XPoly::zero(n);
    }
    let (i, j) = (nu[k], nu[k + 1]);
    let num = q_at(params, i, j, k, k + 1, n).sub(&q_at(params, i, j, k + 2, k + 1, n));
    num.div_linear(k, k + 2).expect("Q(u,v) - Q(w,v) is divisible by u - w")
}

/// `c` in `(tau_k x_m - x_{s_k(m)} tau_k) e(nu) = c e(nu)`.
pub fn straightening_coefficient(nu: &[usize], k: usize, m: usize) -> i64 {
    if nu[k] != nu[k + 1] {
        0
    } else if m == k {
        -1
    } else if m == k + 1 {
        1
    } else {
        0
    }
}

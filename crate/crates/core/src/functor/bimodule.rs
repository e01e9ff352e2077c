//! Direct check of the bimodule structure on `V_nu (x) Q(q)[x_1..x_n]`,
//! with power series truncated in total degree.

use std::collections::BTreeMap;

use super::{KernelEntry, SwdContext};
use crate::affine_rep::{FinModule, RelationReport};
use crate::arith::{Field, Qq, TruncPoly};
use crate::error::Result;
use crate::klr::Colors;
use crate::linalg::Matrix;

type Elem = BTreeMap<(Colors, usize), TruncPoly>;

struct Bimodule<'a> {
    ctx: &'a SwdContext,
    n: usize,
    orders: Vec<usize>,
    cap: u32,
    vmods: BTreeMap<Colors, FinModule<Qq>>,
    pieces: BTreeMap<Colors, (Vec<Matrix<Qq>>, Vec<Matrix<Qq>>)>,
    kernels: BTreeMap<(usize, usize, usize), Vec<KernelEntry>>,
    /// `X_b` and `X_b^{-1}` keyed by `(vertex, position)`
    spectral: BTreeMap<(usize, usize), (TruncPoly, TruncPoly)>,
}

#[derive(Clone, Copy, Debug)]
enum Left {
    E(usize),
    F(usize),
    K(usize),
}

fn add_into(out: &mut Elem, key: (Colors, usize), f: TruncPoly) {
    match out.get_mut(&key) {
        Some(g) => {
            let s = g.add(&f);
            if s.is_zero() {
                out.remove(&key);
            } else {
                *g = s;
            }
        }
        None if !f.is_zero() => {
            out.insert(key, f);
        }
        None => {}
    }
}

impl<'a> Bimodule<'a> {
    fn new(ctx: &'a SwdContext, n: usize, cap: u32) -> Result<Self> {
        let orders = vec![cap as usize + 3; n];
        let mut seqs: Vec<Colors> = vec![vec![]];
        for _ in 0..n {
            seqs = seqs.into_iter().flat_map(|s| (0..ctx.vertices()).map(move |i| [s.clone(), vec![i]].concat())).collect();
        }
        let vmods = seqs.iter().map(|nu| (nu.clone(), ctx.slice_module(nu))).collect();
        let pieces = seqs.iter().map(|nu| (nu.clone(), ctx.index0_pieces(nu))).collect();
        let mut kernels = BTreeMap::new();
        for a in 0..n.saturating_sub(1) {
            for i in 0..ctx.vertices() {
                for j in 0..ctx.vertices() {
                    let k = ctx.tau_kernel(i, j, [orders[a], orders[a + 1]])?;
                    let slots = [a, a + 1];
                    let k = k.into_iter().map(|(r, c, g)| (r, c, g.embed(&orders, &slots).truncate_total(cap + 2))).collect();
                    kernels.insert((a, i, j), k);
                }
            }
        }
        let mut spectral = BTreeMap::new();
        let one = TruncPoly::constant(&orders, Qq::one());
        for i in 0..ctx.vertices() {
            let a = ctx.anchor(i);
            for b in 0..n {
                let x = one.add(&TruncPoly::var(&orders, b));
                let xi = x.inv().expect("unit").scale(&a.inv().expect("nonzero anchor")).truncate_total(cap + 2);
                spectral.insert((i, b), (x.scale(&a), xi));
            }
        }
        Ok(Bimodule { ctx, n, orders, cap, vmods, pieces, kernels, spectral })
    }

    /// Products only need total degree `cap + 2`: at most two divided
    /// differences follow.
    fn mul(&self, f: &TruncPoly, g: &TruncPoly) -> TruncPoly {
        f.mul_total(g, self.cap + 2)
    }

    fn left(&self, g: Left, u: &Elem) -> Elem {
        let mut out = Elem::new();
        for ((nu, v), f) in u {
            let m = &self.vmods[nu];
            let mut apply = |mat: &Matrix<Qq>, mult: Option<&TruncPoly>| {
                for w in 0..m.dim() {
                    let c = mat.get(w, *v);
                    if c.is_zero() {
                        continue;
                    }
                    let t = match &mult {
                        Some(p) => self.mul(f, p).scale(c),
                        None => f.scale(c),
                    };
                    add_into(&mut out, (nu.clone(), w), t);
                }
            };
            match g {
                Left::E(0) => {
                    for (b, piece) in self.pieces[nu].0.iter().enumerate() {
                        apply(piece, Some(&self.spectral[&(nu[b], b)].0));
                    }
                }
                Left::F(0) => {
                    for (b, piece) in self.pieces[nu].1.iter().enumerate() {
                        apply(piece, Some(&self.spectral[&(nu[b], b)].1));
                    }
                }
                Left::E(i) => apply(&m.e[i], None),
                Left::F(i) => apply(&m.f[i], None),
                Left::K(i) => apply(&m.k_matrix(i), None),
            }
        }
        out
    }

    fn right_x(&self, b: usize, u: &Elem) -> Elem {
        let x = TruncPoly::var(&self.orders, b);
        u.iter().map(|(k, f)| (k.clone(), f.mul(&x))).filter(|(_, f)| !f.is_zero()).collect()
    }

    fn right_tau(&self, a: usize, u: &Elem) -> Elem {
        let mut out = Elem::new();
        for ((nu, v), f) in u {
            let kernel = &self.kernels[&(a, nu[a], nu[a + 1])];
            let mut snu = nu.clone();
            snu.swap(a, a + 1);
            let sf = f.swap(a, a + 1);
            for (w, e) in self.ctx.kernel_targets(nu, a, *v, kernel) {
                add_into(&mut out, (snu.clone(), w), self.mul(&kernel[e].2, &sf));
            }
            if nu[a] == nu[a + 1] {
                add_into(&mut out, (nu.clone(), *v), f.divided_difference(a, a + 1));
            }
        }
        out
    }

    fn truncated(&self, u: &Elem) -> Elem {
        u.iter().map(|(k, f)| (k.clone(), f.truncate_total(self.cap))).filter(|(_, f)| !f.is_zero()).collect()
    }

    fn q_factor(&self, nu: &[usize], a: usize) -> TruncPoly {
        let mut p = TruncPoly::zero(&self.orders);
        for (&(i, j), c) in &self.ctx.params.q_poly(nu[a], nu[a + 1]) {
            let mut e = vec![0; self.n];
            e[a] = i;
            e[a + 1] = j;
            p.add_term(e, &Qq::rat(c.clone()));
        }
        p
    }
}

/// Checks on every `V_nu (x) x^alpha` with `|alpha| <= cap` that the left
/// generators `e_i, f_i, K_i` commute with the right `tau_a` and `x_b`, and
/// that `tau_a^2` acts by `Q_{nu_a, nu_{a+1}}(x_a, x_{a+1})`.
pub fn verify_bimodule(ctx: &SwdContext, n: usize, cap: u32) -> Result<RelationReport> {
    let bm = Bimodule::new(ctx, n, cap)?;
    let mut rep = RelationReport::default();
    let lefts: Vec<Left> = (0..ctx.rank_n).flat_map(|i| [Left::E(i), Left::F(i), Left::K(i)]).collect();
    let monos = crate::klr::monomials_of_degree;
    for (nu, m) in &bm.vmods {
        for v in 0..m.dim() {
            for d in 0..=cap {
                for alpha in monos(n, d) {
                    let mut f = TruncPoly::zero(&bm.orders);
                    f.add_term(alpha.clone(), &Qq::one());
                    let u: Elem = BTreeMap::from([((nu.clone(), v), f)]);
                    let at = || format!("nu={nu:?} v={v} x^{alpha:?}");
                    let taus: Vec<Elem> = (0..n.saturating_sub(1)).map(|a| bm.right_tau(a, &u)).collect();
                    let xs: Vec<Elem> = (0..n).map(|b| bm.right_x(b, &u)).collect();
                    for &g in &lefts {
                        let gu = bm.left(g, &u);
                        for (a, t) in taus.iter().enumerate() {
                            let lhs = bm.truncated(&bm.left(g, t));
                            let rhs = bm.truncated(&bm.right_tau(a, &gu));
                            rep.record(lhs == rhs, || format!("{g:?} and tau_{} do not commute at {}", a + 1, at()));
                        }
                        for (b, x) in xs.iter().enumerate() {
                            let lhs = bm.truncated(&bm.left(g, x));
                            let rhs = bm.truncated(&bm.right_x(b, &gu));
                            rep.record(lhs == rhs, || format!("{g:?} and x_{} do not commute at {}", b + 1, at()));
                        }
                    }
                    for a in 0..n.saturating_sub(1) {
                        let lhs = bm.truncated(&bm.right_tau(a, &taus[a]));
                        let q = bm.q_factor(nu, a);
                        let rhs = bm.truncated(&u.iter().map(|(k, f)| (k.clone(), bm.mul(f, &q))).filter(|(_, f)| !f.is_zero()).collect());
                        rep.record(lhs == rhs, || format!("tau_{}^2 differs from Q at {}", a + 1, at()));
                    }
                }
            }
        }
    }
    Ok(rep)
}

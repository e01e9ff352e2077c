use std::collections::BTreeMap;
use std::fmt;

use super::{braid_correction, q_at, straightening_coefficient, Colors, Perm, XPoly};
use crate::affine_rep::RelationReport;
use crate::arith::{Field, LaurentQ, Rat};
use crate::linalg::{Echelon, SparseVec};
use crate::quiver::KlrParams;

/// The KLR algebra `R^I(n)` of a parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlrSpec {
    pub params: KlrParams,
    pub n: usize,
}

/// Generators, 0-based: `X(k)` is `x_{k+1}`, `T(a)` is `tau_{a+1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    E(Colors),
    X(usize),
    T(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(nu) => write!(f, "e{nu:?}"),
            Gen::X(k) => write!(f, "x{}", k + 1),
            Gen::T(a) => write!(f, "t{}", a + 1),
        }
    }
}

impl KlrSpec {
    pub fn new(params: KlrParams, n: usize) -> Self {
        KlrSpec { params, n }
    }

    pub fn colors(&self) -> usize {
        self.params.len()
    }

    /// All of `I^n`, lexicographically.
    pub fn sequences(&self) -> Vec<Colors> {
        let m = self.colors();
        let mut out = vec![Vec::new()];
        for _ in 0..self.n {
            out = out
                .into_iter()
                .flat_map(|s: Colors| {
                    (0..m).map(move |c| {
                        let mut t = s.clone();
                        t.push(c);
                        t
                    })
                })
                .collect();
        }
        out
    }

    /// `I^beta` for `beta = sum_i beta[i] alpha_i`.
    pub fn block(&self, beta: &[usize]) -> Vec<Colors> {
        self.sequences().into_iter().filter(|nu| content(nu, self.colors()) == beta).collect()
    }

    /// `deg tau_a e(nu) = -(alpha_{nu_a} | alpha_{nu_{a+1}})`
    pub fn tau_degree(&self, a: usize, nu: &[usize]) -> i64 {
        -self.params.cartan(nu[a], nu[a + 1])
    }

    /// Degree of `tau_{a_1} ... tau_{a_r} e(nu)`.
    pub fn word_degree(&self, word: &[usize], nu: &[usize]) -> i64 {
        let mut cur = nu.to_vec();
        let mut d = 0;
        for &a in word.iter().rev() {
            d += self.tau_degree(a, &cur);
            cur.swap(a, a + 1);
        }
        d
    }

    /// Degree offset of the `e(nu)` summand making the polynomial
    /// representation graded: `sum_{a<b} d_{nu_a nu_b}`.
    pub fn component_shift(&self, nu: &[usize]) -> i64 {
        let mut s = 0;
        for a in 0..nu.len() {
            for b in a + 1..nu.len() {
                s += self.params.d[nu[a]][nu[b]] as i64;
            }
        }
        s
    }

    pub fn generator_degree(&self, g: &Gen, nu: &[usize]) -> i64 {
        match g {
            Gen::E(_) => 0,
            Gen::X(_) => 2,
            Gen::T(a) => self.tau_degree(*a, nu),
        }
    }
}

/// Multiplicity of each color in `nu`.
pub fn content(nu: &[usize], colors: usize) -> Vec<usize> {
    let mut c = vec![0; colors];
    for &i in nu {
        c[i] += 1;
    }
    c
}

/// An element of `sum_nu Q[x_1..x_n] e(nu)`.
pub type PolyVec = BTreeMap<Colors, XPoly>;

fn push(v: &mut PolyVec, nu: Colors, f: XPoly) {
    if f.is_zero() {
        return;
    }
    match v.get_mut(&nu) {
        Some(g) => {
            *g = g.add(&f);
            if g.is_zero() {
                v.remove(&nu);
            }
        }
        None => {
            v.insert(nu, f);
        }
    }
}

pub fn polyvec_sub(a: &PolyVec, b: &PolyVec) -> PolyVec {
    let mut r = a.clone();
    for (nu, f) in b {
        push(&mut r, nu.clone(), f.neg());
    }
    r
}

/// Left polynomial representation: `x_k` multiplies, `tau_a` on `e(nu)` is
/// the divided difference `(s_a f - f)/(x_a - x_{a+1})` when
/// `nu_a = nu_{a+1}` and `f -> P_{nu_a nu_{a+1}}(x_{a+1}, x_a) s_a(f)` landing
/// in `e(s_a nu)` otherwise.
#[derive(Clone, Copy, Debug)]
pub struct PolyRep<'a> {
    pub spec: &'a KlrSpec,
}

impl<'a> PolyRep<'a> {
    pub fn new(spec: &'a KlrSpec) -> Self {
        PolyRep { spec }
    }

    pub fn apply(&self, g: &Gen, v: &PolyVec) -> PolyVec {
        let n = self.spec.n;
        let mut out = PolyVec::new();
        match g {
            Gen::E(mu) => {
                if let Some(f) = v.get(mu) {
                    out.insert(mu.clone(), f.clone());
                }
            }
            Gen::X(k) => {
                let x = XPoly::var(n, *k);
                for (nu, f) in v {
                    push(&mut out, nu.clone(), f.mul(&x));
                }
            }
            Gen::T(a) => {
                let a = *a;
                for (nu, f) in v {
                    if nu[a] == nu[a + 1] {
                        push(&mut out, nu.clone(), f.divided_difference(a, a + 1));
                    } else {
                        let d = self.spec.params.p_exponent(nu[a], nu[a + 1]) as u32;
                        let p = XPoly::var(n, a).sub(&XPoly::var(n, a + 1)).pow(d);
                        let mut mu = nu.clone();
                        mu.swap(a, a + 1);
                        push(&mut out, mu, p.mul(&f.swap(a, a + 1)));
                    }
                }
            }
        }
        out
    }

    /// Applies `g_1 g_2 ... g_r` (rightmost first).
    pub fn apply_word(&self, word: &[Gen], v: &PolyVec) -> PolyVec {
        word.iter().rev().fold(v.clone(), |acc, g| self.apply(g, &acc))
    }

    pub fn apply_taus(&self, word: &[usize], v: &PolyVec) -> PolyVec {
        word.iter().rev().fold(v.clone(), |acc, &a| self.apply(&Gen::T(a), &acc))
    }

    pub fn mul_poly(&self, p: &XPoly, v: &PolyVec) -> PolyVec {
        let mut out = PolyVec::new();
        for (nu, f) in v {
            push(&mut out, nu.clone(), p.mul(f));
        }
        out
    }
}

pub fn basis_input(nu: &[usize], exps: Vec<u32>) -> PolyVec {
    PolyVec::from([(nu.to_vec(), XPoly::monomial(exps, Rat::one()))])
}

/// Checks every defining relation as an operator identity on the inputs
/// `x^alpha e(nu)`, `|alpha| <= cap`, for all `nu` in `I^n`.
pub fn verify_klr_relations(spec: &KlrSpec, cap: u32) -> RelationReport {
    let n = spec.n;
    let rep = PolyRep::new(spec);
    let params = &spec.params;
    let mut report = RelationReport::default();
    let seqs = spec.sequences();
    for nu in &seqs {
        for d in 0..=cap {
            for alpha in super::monomials_of_degree(n, d) {
                let v = basis_input(nu, alpha.clone());
                let at = || format!("on x^{alpha:?} e{nu:?}");
                // idempotents
                let sum = seqs.iter().fold(PolyVec::new(), |acc, mu| {
                    let mut acc = acc;
                    for (k, f) in rep.apply(&Gen::E(mu.clone()), &v) {
                        push(&mut acc, k, f);
                    }
                    acc
                });
                report.record(sum == v, || format!("sum of e(mu) is not 1 {}", at()));
                for mu in &seqs {
                    let once = rep.apply(&Gen::E(mu.clone()), &v);
                    let twice = rep.apply(&Gen::E(mu.clone()), &once);
                    let expect = if mu == nu { v.clone() } else { PolyVec::new() };
                    report.record(once == expect && twice == once, || format!("e{mu:?} not a projection {}", at()));
                }
                let xs: Vec<PolyVec> = (0..n).map(|k| rep.apply(&Gen::X(k), &v)).collect();
                for k in 0..n {
                    for m in k + 1..n {
                        let l = rep.apply(&Gen::X(k), &xs[m]);
                        let r = rep.apply(&Gen::X(m), &xs[k]);
                        report.record(l == r, || format!("x{} x{} != x{} x{} {}", k + 1, m + 1, m + 1, k + 1, at()));
                    }
                    let l = rep.apply(&Gen::E(nu.clone()), &xs[k]);
                    report.record(l == xs[k], || format!("x{} e(nu) != e(nu) x{} {}", k + 1, k + 1, at()));
                }
                let ts: Vec<PolyVec> = (0..n.saturating_sub(1)).map(|a| rep.apply(&Gen::T(a), &v)).collect();
                for a in 0..n.saturating_sub(1) {
                    let mut snu = nu.clone();
                    snu.swap(a, a + 1);
                    let proj = rep.apply(&Gen::E(snu.clone()), &ts[a]);
                    report.record(proj == ts[a], || format!("t{} e(nu) != e(s nu) t{} {}", a + 1, a + 1, at()));
                    for b in a + 2..n - 1 {
                        let l = rep.apply(&Gen::T(a), &ts[b]);
                        let r = rep.apply(&Gen::T(b), &ts[a]);
                        report.record(l == r, || format!("t{} t{} != t{} t{} {}", a + 1, b + 1, b + 1, a + 1, at()));
                    }
                    // tau^2
                    let sq = rep.apply(&Gen::T(a), &ts[a]);
                    let q = q_at(params, nu[a], nu[a + 1], a, a + 1, n);
                    report.record(sq == rep.mul_poly(&q, &v), || format!("t{}^2 != Q {}", a + 1, at()));
                    // straightening
                    for m in 0..n {
                        let sm = if m == a {
                            a + 1
                        } else if m == a + 1 {
                            a
                        } else {
                            m
                        };
                        let l = rep.apply(&Gen::T(a), &xs[m]);
                        let r = rep.apply(&Gen::X(sm), &ts[a]);
                        let c = straightening_coefficient(nu, a, m);
                        let expect = rep.mul_poly(&XPoly::constant(n, Rat::from(c)), &v);
                        report.record(polyvec_sub(&l, &r) == expect, || {
                            format!("t{} x{} - x{} t{} != {c} {}", a + 1, m + 1, sm + 1, a + 1, at())
                        });
                    }
                }
                for k in 0..n.saturating_sub(2) {
                    let l = rep.apply_taus(&[k + 1, k, k + 1], &v);
                    let r = rep.apply_taus(&[k, k + 1, k], &v);
                    let corr = braid_correction(params, nu, k);
                    report.record(polyvec_sub(&l, &r) == rep.mul_poly(&corr, &v), || {
                        format!("braid relation at t{} {}", k + 1, at())
                    });
                }
            }
        }
    }
    report
}

/// Artin monomials `x^gamma` with `gamma_i <= i` (0-based): a basis of the
/// polynomial ring over the symmetric polynomials.
pub fn artin_monomials(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for i in 0..n {
        out = out
            .into_iter()
            .flat_map(|g: Vec<u32>| {
                (0..=i as u32).map(move |e| {
                    let mut h = g.clone();
                    h.push(e);
                    h
                })
            })
            .collect();
    }
    out
}

/// Graded dimension of `e(nu') R(beta) e(nu)` up to degree `cap`: for each
/// degree, the rank of the operators `tau_w x^alpha e(nu)` of that degree.
///
/// The representation commutes with symmetric polynomials, so an operator is
/// determined by its values on the Artin monomials of `e(nu)`.
pub fn graded_dim(spec: &KlrSpec, nu: &[usize], nu2: &[usize], cap: i64) -> LaurentQ {
    let n = spec.n;
    let rep = PolyRep::new(spec);
    let inputs = artin_monomials(n);
    let words: Vec<(Vec<usize>, i64)> = Perm::all(n)
        .into_iter()
        .filter(|w| w.act(nu) == nu2)
        .map(|w| {
            let word = w.reduced_word();
            let d = spec.word_degree(&word, nu);
            (word, d)
        })
        .collect();
    let mut out = LaurentQ::zero();
    let Some(lowest) = words.iter().map(|(_, d)| *d).min() else {
        return out;
    };
    for deg in lowest..=cap {
        let mut coords: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
        let mut rows: Vec<SparseVec<Rat>> = Vec::new();
        for (word, dw) in &words {
            let rest = deg - dw;
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            for alpha in super::monomials_of_degree(n, (rest / 2) as u32) {
                let mut row = SparseVec::new();
                for (gi, g) in inputs.iter().enumerate() {
                    let v = basis_input(nu, g.iter().zip(&alpha).map(|(a, b)| a + b).collect());
                    let img = rep.apply_taus(word, &v);
                    if let Some(f) = img.get(nu2) {
                        for (e, c) in f.terms() {
                            let next = coords.len();
                            let idx = *coords.entry((gi, e.clone())).or_insert(next);
                            row.insert(idx, c.clone());
                        }
                    }
                }
                rows.push(row);
            }
        }
        let mut ech = Echelon::new(coords.len());
        for r in rows {
            ech.insert(r);
        }
        if ech.rank() > 0 {
            out.add_term(deg, &Rat::from(ech.rank() as i64));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klr::monomials_of_degree;

    fn a2() -> KlrParams {
        KlrParams::from_arrows(vec![vec![0, 1], vec![0, 0]])
    }

    fn spec(p: KlrParams, n: usize) -> KlrSpec {
        KlrSpec::new(p, n)
    }

    #[test]
    fn tau_on_equal_colors() {
        let s = spec(a2(), 2);
        let rep = PolyRep::new(&s);
        let nu = vec![0, 0];
        assert!(rep.apply(&Gen::T(0), &basis_input(&nu, vec![0, 0])).is_empty());
        let r = rep.apply(&Gen::T(0), &basis_input(&nu, vec![1, 0]));
        assert_eq!(r, PolyVec::from([(nu.clone(), XPoly::constant(2, Rat::from(-1)))]));
    }

    #[test]
    fn a2_relations_n2() {
        let rep = verify_klr_relations(&spec(a2(), 2), 6);
        assert!(rep.is_clean(), "{rep}");
    }

    #[test]
    fn negative_control_fails_tau_squared() {
        let p = a2().with_q_coefficient(0, 1, Rat::zero());
        let rep = verify_klr_relations(&spec(p, 2), 2);
        assert!(!rep.is_clean());
        assert!(rep.failures.iter().all(|f| f.contains("^2 != Q") || f.contains("braid")));
    }

    #[test]
    fn braid_correction_only_when_outer_colors_match() {
        let p = a2();
        assert!(braid_correction(&p, &[0, 1, 1], 0).is_zero());
        assert_eq!(braid_correction(&p, &[0, 1, 0], 0), XPoly::constant(3, Rat::from(-1)));
        // equal colors: Q = 0
        assert!(braid_correction(&p, &[0, 0, 0], 0).is_zero());
    }

    #[test]
    fn generators_are_homogeneous() {
        let s = spec(KlrParams::from_arrows(vec![vec![0, 1, 0], vec![0, 0, 2], vec![0, 0, 0]]), 3);
        let rep = PolyRep::new(&s);
        for nu in s.sequences() {
            for d in 0..3 {
                for e in monomials_of_degree(3, d) {
                    let deg_in = 2 * d as i64 + s.component_shift(&nu);
                    let v = basis_input(&nu, e);
                    for g in [Gen::X(0), Gen::X(2), Gen::T(0), Gen::T(1)] {
                        let dg = s.generator_degree(&g, &nu);
                        for (mu, f) in rep.apply(&g, &v) {
                            for (ex, _) in f.terms() {
                                let deg_out = 2 * ex.iter().sum::<u32>() as i64 + s.component_shift(&mu);
                                assert_eq!(deg_out, deg_in + dg, "{g} on {nu:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn graded_dim_examples() {
        let s1 = spec(a2(), 1);
        let g = graded_dim(&s1, &[0], &[0], 6);
        assert_eq!(g.to_string(), "1 + q^2 + q^4 + q^6");
        let s2 = spec(a2(), 2);
        let g = graded_dim(&s2, &[0, 1], &[1, 0], 4);
        assert_eq!(g.min_exponent(), Some(1));
        let none = spec(KlrParams::from_arrows(vec![vec![0, 0], vec![0, 0]]), 2);
        let g = graded_dim(&none, &[0, 1], &[1, 0], 4);
        assert_eq!(g.min_exponent(), Some(0));
    }

    #[test]
    fn graded_dim_symmetric() {
        let s = spec(a2(), 3);
        for nu in s.block(&[2, 1]) {
            for nu2 in s.block(&[2, 1]) {
                assert_eq!(graded_dim(&s, &nu, &nu2, 4), graded_dim(&s, &nu2, &nu, 4));
            }
        }
    }
}

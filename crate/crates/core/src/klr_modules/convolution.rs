//! Induction `M1 o M2 = R(n) (x)_{R(n1) (x) R(n2)} (M1 (x) M2)`.
//!
//! The induced module has basis `tau_u (x) m` for shuffles `u`. A product
//! `g tau_u e(mu)` is straightened to `sum c tau_{u'} tau_v x^alpha e(mu)`
//! by solving for its coefficients in the faithful polynomial
//! representation; the trailing `tau_v x^alpha` then acts on `M1 (x) M2`.

use std::collections::BTreeMap;

use super::FDModule;
use crate::arith::{Field, Qq, Rat};
use crate::error::{Error, Result};
use crate::klr::{monomials_of_degree, Gen, KlrSpec, Perm, PolyRep};
use crate::klr::{Colors, XPoly};
use crate::linalg::{Echelon, Matrix, SparseVec};

/// `M1 (x) M2` as a module over `R(n1) (x) R(n2)`, returned with the crossing
/// generator `tau_{n1}` set to zero (it is not part of the subalgebra).
pub fn outer_tensor(m1: &FDModule, m2: &FDModule) -> Result<FDModule> {
    if m1.params != m2.params {
        return Err(Error::Incompatible("modules over different KLR parameters".into()));
    }
    let (n1, n2) = (m1.n, m2.n);
    let (d1, d2) = (m1.dim(), m2.dim());
    let (i1, i2) = (Matrix::<Qq>::identity(d1), Matrix::<Qq>::identity(d2));
    let mut colors = Vec::with_capacity(d1 * d2);
    let mut degrees = Vec::with_capacity(d1 * d2);
    for b1 in 0..d1 {
        for b2 in 0..d2 {
            colors.push(m1.colors[b1].iter().chain(&m2.colors[b2]).copied().collect());
            degrees.push(m1.degrees[b1] + m2.degrees[b2]);
        }
    }
    let x = m1.x.iter().map(|m| m.kron(&i2)).chain(m2.x.iter().map(|m| i1.kron(m))).collect();
    let mut tau: Vec<Matrix<Qq>> = m1.tau.iter().map(|m| m.kron(&i2)).collect();
    if n1 > 0 && n2 > 0 {
        tau.push(Matrix::zeros(d1 * d2, d1 * d2));
    }
    tau.extend(m2.tau.iter().map(|m| i1.kron(m)));
    Ok(FDModule { params: m1.params.clone(), n: n1 + n2, colors, degrees, x, tau })
}

/// PBW word of `w`: the reduced word of its shuffle part followed by that of
/// its block part.
fn pbw_word(w: &Perm, n1: usize) -> (Perm, Vec<usize>) {
    let (u, v) = w.coset_split(n1);
    (u, v.reduced_word())
}

struct Straightener<'a> {
    spec: &'a KlrSpec,
    n1: usize,
    cache: BTreeMap<(Gen, Vec<usize>, Colors), Vec<(Perm, Vec<usize>, Vec<u32>, Rat)>>,
}

impl Straightener<'_> {
    /// Coefficients of `g tau_{word(u)} e(mu)` in the basis
    /// `tau_{word(u')} tau_{word(v)} x^alpha e(mu)`.
    fn expand(&mut self, g: &Gen, u: &Perm, mu: &Colors) -> Result<Vec<(Perm, Vec<usize>, Vec<u32>, Rat)>> {
        let key = (g.clone(), u.0.clone(), mu.clone());
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let spec = self.spec;
        let n = spec.n;
        let rep = PolyRep::new(spec);
        let uword = u.reduced_word();
        let mid = u.act(mu);
        let target = match g {
            Gen::T(a) => {
                let mut t = mid.clone();
                t.swap(*a, a + 1);
                t
            }
            _ => mid.clone(),
        };
        let degree = spec.word_degree(&uword, mu) + spec.generator_degree(g, &mid);
        let inputs = crate::klr::artin_monomials(n);
        let image = |word: &[Gen], alpha: &[u32]| -> Vec<XPoly> {
            inputs
                .iter()
                .map(|gm| {
                    let e: Vec<u32> = gm.iter().zip(alpha).map(|(a, b)| a + b).collect();
                    let v = crate::klr::basis_input(mu, e);
                    rep.apply_word(word, &v).remove(&target).unwrap_or_else(|| XPoly::zero(n))
                })
                .collect()
        };
        let mut lhs_word = vec![g.clone()];
        lhs_word.extend(uword.iter().map(|&a| Gen::T(a)));
        let lhs = image(&lhs_word, &vec![0; n]);
        let mut cands = Vec::new();
        for w in Perm::all(n) {
            if w.act(mu) != target {
                continue;
            }
            let (uw, vword) = pbw_word(&w, self.n1);
            let mut word = uw.reduced_word();
            word.extend(&vword);
            let rest = degree - spec.word_degree(&word, mu);
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            for alpha in monomials_of_degree(n, (rest / 2) as u32) {
                let gens: Vec<Gen> = word.iter().map(|&a| Gen::T(a)).collect();
                cands.push((uw.clone(), vword.clone(), alpha.clone(), image(&gens, &alpha)));
            }
        }
        // solve sum_c coef_c * cand_c = lhs via a kernel vector with last entry 1
        let mut coords: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
        let mut vectors: Vec<SparseVec<Rat>> = Vec::new();
        for img in cands.iter().map(|c| &c.3).chain(std::iter::once(&lhs)) {
            let mut row = SparseVec::new();
            for (gi, f) in img.iter().enumerate() {
                for (e, c) in f.terms() {
                    let next = coords.len();
                    let idx = *coords.entry((gi, e.clone())).or_insert(next);
                    row.insert(idx, c.clone());
                }
            }
            vectors.push(row);
        }
        let ncols = coords.len();
        let k = cands.len();
        let mut sys = Echelon::<Rat>::new(k + 1);
        for r in 0..ncols {
            let mut eq = SparseVec::new();
            for (j, v) in vectors.iter().enumerate() {
                if let Some(c) = v.get(&r) {
                    eq.insert(j, if j == k { c.neg() } else { c.clone() });
                }
            }
            if !eq.is_empty() {
                sys.insert(eq);
            }
        }
        let kernel = sys.kernel_basis();
        let sol = kernel
            .iter()
            .find(|v| !v[k].is_zero())
            .ok_or_else(|| Error::Straightening(format!("{g} t{uword:?} e{mu:?}")))?;
        if kernel.len() != 1 {
            return Err(Error::Straightening(format!("{g} t{uword:?} e{mu:?}: normal form not unique")));
        }
        let scale = sol[k].inv().expect("nonzero");
        let out: Vec<_> = cands
            .into_iter()
            .zip(sol)
            .filter(|(_, c)| !c.is_zero())
            .map(|((uw, vw, alpha, _), c)| (uw, vw, alpha, c.mul(&scale)))
            .collect();
        self.cache.insert(key, out.clone());
        Ok(out)
    }
}

/// Convolution product of graded modules over the same parameters.
pub fn convolution(m1: &FDModule, m2: &FDModule) -> Result<FDModule> {
    let outer = outer_tensor(m1, m2)?;
    let n1 = m1.n;
    let n = outer.n;
    let spec = KlrSpec::new(m1.params.clone(), n);
    let shuffles = Perm::shuffles(n, n1);
    let td = outer.dim();
    let dim = shuffles.len() * td;
    let index = |ui: usize, t: usize| ui * td + t;
    let mut colors = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    for u in &shuffles {
        let word = u.reduced_word();
        for t in 0..td {
            colors.push(u.act(&outer.colors[t]));
            degrees.push(spec.word_degree(&word, &outer.colors[t]) + outer.degrees[t]);
        }
    }
    let pos: BTreeMap<Vec<usize>, usize> = shuffles.iter().enumerate().map(|(i, u)| (u.0.clone(), i)).collect();
    let mut st = Straightener { spec: &spec, n1, cache: BTreeMap::new() };
    // action of tau_{word} x^alpha on the outer tensor, column t
    let act_outer = |word: &[usize], alpha: &[u32], t: usize| -> Vec<Qq> {
        let mut v = vec![Qq::zero(); td];
        v[t] = Qq::one();
        for (k, &e) in alpha.iter().enumerate() {
            for _ in 0..e {
                v = outer.x[k].mul_vec(&v);
            }
        }
        for &a in word.iter().rev() {
            v = outer.tau[a].mul_vec(&v);
        }
        v
    };
    let gens: Vec<Gen> = (0..n).map(Gen::X).chain((0..n.saturating_sub(1)).map(Gen::T)).collect();
    let mut mats: Vec<Matrix<Qq>> = Vec::with_capacity(gens.len());
    for g in &gens {
        let mut m = Matrix::zeros(dim, dim);
        for (ui, u) in shuffles.iter().enumerate() {
            for t in 0..td {
                for (uw, vw, alpha, c) in st.expand(g, u, &outer.colors[t])? {
                    let y = act_outer(&vw, &alpha, t);
                    let row0 = index(pos[&uw.0], 0);
                    let cq = Qq::rat(c);
                    for (r, val) in y.iter().enumerate() {
                        if !val.is_zero() {
                            m.add_at(row0 + r, index(ui, t), &val.mul(&cq));
                        }
                    }
                }
            }
        }
        mats.push(m);
    }
    let tau = mats.split_off(n);
    let module = FDModule { params: m1.params.clone(), n, colors, degrees, x: mats, tau };
    let rep = module.check_relations();
    if !rep.is_clean() {
        return Err(Error::RelationFailure(format!("convolution product: {}", rep.failures[0])));
    }
    Ok(module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LaurentQ;
    use crate::klr_modules::one_dim_module;
    use crate::quiver::KlrParams;

    fn a2() -> KlrParams {
        KlrParams::from_arrows(vec![vec![0, 1], vec![0, 0]])
    }

    #[test]
    fn two_one_dim_modules() {
        let p = a2();
        let li = one_dim_module(&p, &[0]).unwrap();
        let lj = one_dim_module(&p, &[1]).unwrap();
        let m = convolution(&li, &lj).unwrap();
        assert_eq!(m.dim(), 2);
        let ch = m.graded_character();
        assert_eq!(ch[&vec![0, 1]], LaurentQ::one());
        assert_eq!(ch[&vec![1, 0]], LaurentQ::monomial(Rat::one(), 1));
    }

    #[test]
    fn equal_colors() {
        let p = a2();
        let li = one_dim_module(&p, &[0]).unwrap();
        let m = convolution(&li, &li).unwrap();
        // L(i) o L(i) has degrees -2 and 0 (tau_1 has degree -2)
        assert_eq!(m.graded_character()[&vec![0, 0]].to_string(), "q^-2 + 1");
    }

    #[test]
    fn dimension_law_small() {
        let p = KlrParams::from_arrows(vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let l: Vec<FDModule> = (0..3).map(|i| one_dim_module(&p, &[i]).unwrap()).collect();
        let m12 = convolution(&l[0], &l[1]).unwrap();
        let m = convolution(&m12, &l[2]).unwrap();
        assert_eq!(m.dim(), 3 * 2);
        let m2 = convolution(&l[2], &m12).unwrap();
        assert_eq!(m2.dim(), 6);
    }

    #[test]
    fn shift_commutes_with_convolution() {
        let p = a2();
        let li = one_dim_module(&p, &[0]).unwrap();
        let lj = one_dim_module(&p, &[1]).unwrap();
        let a = convolution(&li.grade_shift(1), &lj).unwrap();
        let b = convolution(&li, &lj).unwrap().grade_shift(1);
        assert_eq!(a.graded_character(), b.graded_character());
    }
}

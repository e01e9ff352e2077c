//! The quotient `(V^n (x) M) / (relations)` and what can be done with it.

use std::collections::BTreeMap;
use std::fmt;

use super::{KernelEntry, SwdContext};
use crate::affine_rep::{hom_space, FinModule, RelationReport, WeightVec};
use crate::arith::{Field, Qq, Rat};
use crate::error::{Error, Result};
use crate::klr::Colors;
use crate::klr_modules::{FDModule, ModuleMap, SesWitness};
use crate::linalg::{sparse_axpy, Echelon, Matrix, SparseVec};

/// One summand `V_nu (x) e(nu)M` of the total space.
#[derive(Clone, Debug)]
pub struct Slice {
    pub nu: Colors,
    pub vdim: usize,
    /// Basis indices of `M` spanning `e(nu)M`.
    pub comp: Vec<usize>,
    pub offset: usize,
}

impl Slice {
    fn index(&self, v: usize, p: usize) -> usize {
        self.offset + v * self.comp.len() + p
    }
}

/// `F(M)` together with the projection from the total space.
#[derive(Clone, Debug)]
pub struct FunctorOutput {
    pub module: FinModule<Qq>,
    pub total_dim: usize,
    pub relation_rank: usize,
    pub slices: Vec<Slice>,
    /// Relation span in reduced echelon form.
    pub relations: Echelon<Qq>,
    /// Total-space coordinates that form the quotient basis.
    pub keep: Vec<usize>,
}

impl FunctorOutput {
    fn slice_of(&self, nu: &[usize]) -> Option<&Slice> {
        self.slices.iter().find(|s| s.nu == nu)
    }

    /// Coordinates in `F(M)` of a total-space vector.
    pub fn project(&self, v: SparseVec<Qq>) -> Vec<Qq> {
        let r = self.relations.reduce(v);
        self.keep.iter().map(|k| r.get(k).cloned().unwrap_or_else(Qq::zero)).collect()
    }
}

struct Total<'a> {
    ctx: &'a SwdContext,
    m: &'a FDModule,
    slices: Vec<Slice>,
    /// per slice: slice module of `V_nu`, and the index-0 pieces
    vmods: Vec<FinModule<Qq>>,
    pieces: Vec<(Vec<Matrix<Qq>>, Vec<Matrix<Qq>>)>,
    /// per slice: `X_b` and `X_b^{-1}` on `e(nu)M`
    xs: Vec<(Vec<Matrix<Qq>>, Vec<Matrix<Qq>>)>,
    dim: usize,
}

#[derive(Clone, Copy, Debug)]
enum LeftGen {
    E(usize),
    F(usize),
}

impl<'a> Total<'a> {
    fn new(ctx: &'a SwdContext, m: &'a FDModule) -> Result<Self> {
        if m.params.d != ctx.params.d {
            return Err(Error::Incompatible("module is over the KLR algebra of a different quiver".into()));
        }
        let mut slices = Vec::new();
        let mut offset = 0;
        for nu in m.support() {
            let vdim: usize = ctx.vdims(&nu).iter().product();
            let comp = m.component(&nu);
            let s = Slice { nu, vdim, comp, offset };
            offset += s.vdim * s.comp.len();
            slices.push(s);
        }
        let vmods = slices.iter().map(|s| ctx.slice_module(&s.nu)).collect();
        let pieces = slices.iter().map(|s| ctx.index0_pieces(&s.nu)).collect();
        let xs = slices
            .iter()
            .map(|s| {
                let d = s.comp.len();
                let id = Matrix::<Qq>::identity(d);
                let mut fw = Vec::new();
                let mut bw = Vec::new();
                for (b, &i) in s.nu.iter().enumerate() {
                    let x = m.x[b].select(&s.comp, &s.comp);
                    let anchor = ctx.anchor(i);
                    fw.push(id.add(&x).scale(&anchor));
                    // (1 + x)^{-1} as a finite geometric series
                    let mut inv = id.clone();
                    let mut t = id.clone();
                    let nx = x.scale(&Qq::int(-1));
                    loop {
                        t = t.mul(&nx);
                        if t.is_zero() {
                            break;
                        }
                        inv = inv.add(&t);
                    }
                    bw.push(inv.scale(&anchor.inv().expect("nonzero anchor")));
                }
                (fw, bw)
            })
            .collect();
        Ok(Total { ctx, m, slices, vmods, pieces, xs, dim: offset })
    }

    fn locate(&self, idx: usize) -> (usize, usize, usize) {
        let s = self.slices.iter().rposition(|s| s.offset <= idx).expect("index in range");
        let r = idx - self.slices[s].offset;
        let c = self.slices[s].comp.len();
        (s, r / c, r % c)
    }

    fn weight(&self, idx: usize) -> WeightVec {
        let (s, v, _) = self.locate(idx);
        self.vmods[s].weights[v].clone()
    }

    fn label(&self, idx: usize) -> String {
        let (s, v, p) = self.locate(idx);
        let nu: Vec<String> = self.slices[s].nu.iter().map(|c| c.to_string()).collect();
        format!("{}|e({})m{}", self.vmods[s].labels[v], nu.join(","), self.slices[s].comp[p])
    }

    /// Left generator applied to one basis vector.
    fn apply(&self, g: LeftGen, idx: usize) -> SparseVec<Qq> {
        let (s, v, p) = self.locate(idx);
        let sl = &self.slices[s];
        let mut out = SparseVec::new();
        let mut push = |mat: &Matrix<Qq>, right: Option<&Matrix<Qq>>| {
            for w in 0..sl.vdim {
                let c = mat.get(w, v);
                if c.is_zero() {
                    continue;
                }
                match right {
                    None => sparse_axpy(&mut out, c, &SparseVec::from([(sl.index(w, p), Qq::one())])),
                    Some(x) => {
                        for p2 in 0..sl.comp.len() {
                            let y = x.get(p2, p);
                            if !y.is_zero() {
                                sparse_axpy(&mut out, &c.mul(y), &SparseVec::from([(sl.index(w, p2), Qq::one())]));
                            }
                        }
                    }
                }
            }
        };
        match g {
            LeftGen::E(0) => {
                for (b, piece) in self.pieces[s].0.iter().enumerate() {
                    push(piece, Some(&self.xs[s].0[b]));
                }
            }
            LeftGen::F(0) => {
                for (b, piece) in self.pieces[s].1.iter().enumerate() {
                    push(piece, Some(&self.xs[s].1[b]));
                }
            }
            LeftGen::E(i) => push(&self.vmods[s].e[i], None),
            LeftGen::F(i) => push(&self.vmods[s].f[i], None),
        }
        out
    }

    fn generators(&self) -> Vec<LeftGen> {
        let n = self.ctx.rank_n;
        (0..n).map(LeftGen::E).chain((0..n).map(LeftGen::F)).collect()
    }

    /// Relations `(v tau_a) (x) m' - v (x) tau_a m'` for every target slice.
    fn relations(&self) -> Result<Echelon<Qq>> {
        let mut ech = Echelon::new(self.dim);
        let mut kernels: BTreeMap<(usize, usize, [usize; 2]), Vec<KernelEntry>> = BTreeMap::new();
        for target in &self.slices {
            for a in 0..self.m.n.saturating_sub(1) {
                let mut nu = target.nu.clone();
                nu.swap(a, a + 1);
                let orders = [self.m.nilpotency_order(a, &target.nu).max(1), self.m.nilpotency_order(a + 1, &target.nu).max(1)];
                let key = (nu[a], nu[a + 1], orders);
                if !kernels.contains_key(&key) {
                    kernels.insert(key, self.ctx.tau_kernel(nu[a], nu[a + 1], orders)?);
                }
                let kernel = &kernels[&key];
                let xa = self.m.x[a].select(&target.comp, &target.comp);
                let xb = self.m.x[a + 1].select(&target.comp, &target.comp);
                let gs: Vec<Matrix<Qq>> = kernel.iter().map(|(_, _, g)| g.eval_on(&[&xa, &xb])).collect();
                let source = self.slices.iter().find(|s| s.nu == nu);
                let vdim: usize = self.ctx.vdims(&nu).iter().product();
                for v in 0..vdim {
                    let hits = self.ctx.kernel_targets(&nu, a, v, kernel);
                    for (p, &mp) in target.comp.iter().enumerate() {
                        let mut rel = SparseVec::new();
                        for &(w, e) in &hits {
                            for p2 in 0..target.comp.len() {
                                let c = gs[e].get(p2, p);
                                if !c.is_zero() {
                                    sparse_axpy(&mut rel, c, &SparseVec::from([(target.index(w, p2), Qq::one())]));
                                }
                            }
                        }
                        if let Some(src) = source {
                            for (p2, &m2) in src.comp.iter().enumerate() {
                                let c = self.m.tau[a].get(m2, mp);
                                if !c.is_zero() {
                                    sparse_axpy(&mut rel, &c.neg(), &SparseVec::from([(src.index(v, p2), Qq::one())]));
                                }
                            }
                        }
                        if !rel.is_empty() {
                            ech.insert(rel);
                        }
                    }
                }
            }
        }
        Ok(ech)
    }
}

/// `F(M)` as an explicit module over the quantum affine algebra.
pub fn functor_apply(ctx: &SwdContext, m: &FDModule) -> Result<FunctorOutput> {
    let total = Total::new(ctx, m)?;
    let relations = total.relations()?;
    let gens = total.generators();
    for p in relations.pivots() {
        let row = relations.row(p).expect("pivot row");
        for &g in &gens {
            let mut img = SparseVec::new();
            for (&k, c) in row {
                sparse_axpy(&mut img, c, &total.apply(g, k));
            }
            if !relations.reduce(img).is_empty() {
                return Err(Error::BimoduleViolation(format!("{g:?} does not preserve the relation span")));
            }
        }
    }
    let keep = relations.non_pivots();
    let d = keep.len();
    let project = |v: SparseVec<Qq>| -> Vec<Qq> {
        let r = relations.reduce(v);
        keep.iter().map(|k| r.get(k).cloned().unwrap_or_else(Qq::zero)).collect()
    };
    let induced = |g: LeftGen| -> Matrix<Qq> {
        let cols: Vec<Vec<Qq>> = keep.iter().map(|&k| project(total.apply(g, k))).collect();
        Matrix::from_columns(d, &cols)
    };
    let n = ctx.rank_n;
    let module = FinModule {
        cartan: crate::affine_rep::CartanDatumAff::new(n)?,
        labels: keep.iter().map(|&k| total.label(k)).collect(),
        weights: keep.iter().map(|&k| total.weight(k)).collect(),
        e: (0..n).map(|i| induced(LeftGen::E(i))).collect(),
        f: (0..n).map(|i| induced(LeftGen::F(i))).collect(),
    };
    let rep = module.check_defining_relations();
    if !rep.is_clean() {
        return Err(Error::RelationFailure(rep.to_string()));
    }
    Ok(FunctorOutput {
        module,
        total_dim: total.dim,
        relation_rank: relations.rank(),
        slices: total.slices,
        relations,
        keep,
    })
}

/// `F(f) = [id (x) f]` between already computed images of source and target.
pub fn functor_map(f: &ModuleMap, source: &FunctorOutput, target: &FunctorOutput) -> Result<Matrix<Qq>> {
    let mut cols = Vec::with_capacity(source.keep.len());
    for &k in &source.keep {
        let s = source.slices.iter().rposition(|s| s.offset <= k).expect("index in range");
        let sl = &source.slices[s];
        let r = k - sl.offset;
        let (v, p) = (r / sl.comp.len(), r % sl.comp.len());
        let mut img = SparseVec::new();
        for row in 0..f.target.dim() {
            let c = f.matrix.get(row, sl.comp[p]);
            if c.is_zero() {
                continue;
            }
            let tsl = target.slice_of(&f.target.colors[row]).ok_or_else(|| {
                Error::Incompatible("map target has a component missing from its functor image".into())
            })?;
            let p2 = tsl.comp.iter().position(|&x| x == row).expect("row lies in its component");
            sparse_axpy(&mut img, c, &SparseVec::from([(tsl.index(v, p2), Qq::one())]));
        }
        cols.push(target.project(img));
    }
    Ok(Matrix::from_columns(target.keep.len(), &cols))
}

/// Checks that `U'_q` generators commute with a linear map `A -> B`.
pub fn is_intertwiner(phi: &Matrix<Qq>, a: &FinModule<Qq>, b: &FinModule<Qq>) -> bool {
    a.e.iter()
        .zip(&b.e)
        .chain(a.f.iter().zip(&b.f))
        .all(|(ga, gb)| phi.mul(ga) == gb.mul(phi))
        && (0..a.rank()).all(|i| phi.mul(&a.k_matrix(i)) == b.k_matrix(i).mul(phi))
}

#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub ade: bool,
    pub note: Option<String>,
    pub dims: [usize; 3],
    pub ranks: [usize; 2],
    pub checks: RelationReport,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.checks.is_clean()
    }
}

impl fmt::Display for ExactnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.dims;
        write!(f, "dims {a} -> {b} -> {c}, ranks {} {}; {}", self.ranks[0], self.ranks[1], self.checks)?;
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

/// Applies `F` to a short exact sequence and certifies exactness by ranks.
pub fn verify_exactness(ctx: &SwdContext, ses: &SesWitness) -> Result<ExactnessReport> {
    let ade = ctx.type_tag.is_ade();
    let note = (!ade).then(|| format!("exactness is only expected for ADE quivers; this one has type {}", ctx.type_tag));
    let fs = functor_apply(ctx, &ses.sub)?;
    let fm = functor_apply(ctx, &ses.mid)?;
    let fq = functor_apply(ctx, &ses.quot)?;
    let fi = functor_map(&ses.inj, &fs, &fm)?;
    let fp = functor_map(&ses.surj, &fm, &fq)?;
    let dims = [fs.module.dim(), fm.module.dim(), fq.module.dim()];
    let ranks = [fi.rank(), fp.rank()];
    let mut checks = RelationReport::default();
    checks.record(fp.mul(&fi).is_zero(), || "F(surj) F(inj) is nonzero".into());
    checks.record(ranks[0] == dims[0], || format!("F(inj) has rank {} < {}", ranks[0], dims[0]));
    checks.record(ranks[1] == dims[2], || format!("F(surj) has rank {} < {}", ranks[1], dims[2]));
    checks.record(dims[0] + dims[2] == dims[1], || format!("{} + {} != {}", dims[0], dims[2], dims[1]));
    checks.record(dims[1] - ranks[1] == ranks[0], || "image of F(inj) differs from kernel of F(surj)".into());
    checks.record(is_intertwiner(&fi, &fs.module, &fm.module), || "F(inj) is not U'_q-linear".into());
    checks.record(is_intertwiner(&fp, &fm.module, &fq.module), || "F(surj) is not U'_q-linear".into());
    Ok(ExactnessReport { ade, note, dims, ranks, checks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// An invertible intertwiner `A -> B`.
    Isomorphic(Matrix<Qq>),
    Distinguished(String),
    /// Homomorphisms exist but the search bound for an invertible one was exceeded.
    Inconclusive(String),
}

impl Comparison {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Comparison::Isomorphic(_))
    }
}

const MAX_TRIALS: usize = 4096;

/// Decides `A ≅ B` by characters and the intertwiner space.
///
/// The determinant of `sum c_k h_k` is a polynomial of degree at most `d` in
/// each `c_k`; the substitution `c_k = t^{(d+1)^k}` keeps it nonzero, so
/// trying `d (d+1)^{r-1} + 1` integer values of `t` is decisive.
pub fn compare_modules(a: &FinModule<Qq>, b: &FinModule<Qq>) -> Comparison {
    if a.rank() != b.rank() {
        return Comparison::Distinguished(format!("ranks {} and {}", a.rank(), b.rank()));
    }
    if a.character() != b.character() {
        return Comparison::Distinguished(format!("characters differ (dimensions {} and {})", a.dim(), b.dim()));
    }
    let homs = hom_space(a, b);
    if homs.is_empty() {
        return Comparison::Distinguished("no nonzero intertwiner".into());
    }
    let d = a.dim();
    if let Some(h) = homs.iter().find(|h| h.rank() == d) {
        return Comparison::Isomorphic(h.clone());
    }
    let r = homs.len();
    let mut bound: usize = d;
    for _ in 1..r {
        bound = match bound.checked_mul(d + 1) {
            Some(x) if x < MAX_TRIALS => x,
            _ => {
                return Comparison::Inconclusive(format!("{r} intertwiners, none of the basis elements invertible"));
            }
        };
    }
    let one = num_bigint::BigInt::from(1);
    for t in 1..=(bound as i64 + 1) {
        let mut acc = Matrix::zeros(d, d);
        let mut e = one.clone();
        for h in &homs {
            let c = Qq::rat(Rat::from_big(num_bigint::BigInt::from(t).pow(u32::try_from(&e).expect("small")), one.clone()));
            acc = acc.add(&h.scale(&c));
            e *= d + 1;
        }
        if acc.rank() == d {
            return Comparison::Isomorphic(acc);
        }
    }
    Comparison::Distinguished(format!("{r} intertwiners, none invertible"))
}

//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exit status is nonzero when a criterion fails, except for the
//! documented deviation of criterion 1, which must fail on exactly the
//! known cases and nowhere else.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qswd_core::arith::{Field, LaurentQ, Poly, QMono, Qq, Rat};
use qswd_core::functor::{compare_modules, functor_apply, verify_bimodule, verify_exactness, Comparison, SwdContext};
use qswd_core::klr::{graded_dim, monomials_of_degree, verify_klr_relations, Colors, Gen, KlrSpec, PolyRep, PolyVec, XPoly};
use qswd_core::klr_modules::{build_ses, convolution, one_dim_module, FDModule, SesFamily};
use qswd_core::quiver::{build_quiver, cartan_and_type, KlrParams, SpectralIndex};
use qswd_core::rmatrix::{cross_validate, denominator, verify_unitarity, verify_ybe};

type Outcome = Result<String, String>;

/// Cases where the product over `s <= min(k, l)` is not the denominator:
/// there `k + l > N` and only `min(k, l, N - k, N - l)` poles occur.
const CRITERION1_KNOWN: [(usize, usize, usize); 5] = [(2, 2, 3), (2, 3, 4), (3, 2, 4), (3, 3, 4), (3, 3, 5)];

fn index(ms: &[i64]) -> Vec<SpectralIndex> {
    ms.iter().map(|&m| SpectralIndex::new(1, QMono::neg_q(m))).collect()
}

fn params_of(n: usize, ms: &[i64]) -> KlrParams {
    cartan_and_type(&build_quiver(&index(ms), n).unwrap()).0
}

fn literal_denominator(k: usize, l: usize) -> Poly<Qq> {
    let mut p = Poly::one();
    for s in 1..=k.min(l) {
        let e = (k as i64 - l as i64).abs() + 2 * s as i64;
        p = p.mul(&Poly::linear_root(&Qq::neg_q_pow(e)));
    }
    p
}

fn criterion1() -> (Outcome, Vec<(usize, usize, usize)>) {
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 2..=5 {
        for k in 1..=3.min(n - 1) {
            for l in 1..=3.min(n - 1) {
                let d = match denominator(k, l, n) {
                    Ok(d) => d,
                    Err(e) => return (Err(format!("({k},{l},{n}): {e}")), bad),
                };
                checked += 1;
                if d.poly != literal_denominator(k, l) {
                    bad.push((k, l, n));
                }
            }
        }
    }
    if bad.is_empty() {
        (Ok(format!("{checked} denominators match")), bad)
    } else {
        let list: Vec<String> = bad
            .iter()
            .map(|&(k, l, n)| format!("({k},{l},{n}): {}", denominator(k, l, n).unwrap()))
            .collect();
        (Err(format!("{} of {checked} differ from prod_{{s<=min(k,l)}}: {}", bad.len(), list.join("; "))), bad)
    }
}

const METHOD_CASES: [(usize, usize, usize); 4] = [(1, 1, 2), (1, 1, 3), (1, 2, 3), (2, 2, 4)];

fn criterion2() -> Outcome {
    for (k, l, n) in METHOD_CASES {
        cross_validate(k, l, n).map_err(|e| e.to_string())?;
    }
    Ok(format!("{} cases agree entrywise", METHOD_CASES.len()))
}

fn criterion3() -> Outcome {
    let mut ks: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (k, l, n) in METHOD_CASES {
        ks.entry(n).or_default().extend([k, l]);
    }
    let (mut pairs, mut triples) = (0, 0);
    for (&n, set) in &ks {
        for &k in set {
            for &l in set {
                if !verify_unitarity(k, l, n).map_err(|e| e.to_string())? {
                    return Err(format!("unitarity fails for ({k},{l},{n})"));
                }
                pairs += 1;
                for &m in set {
                    if !verify_ybe(k, l, m, n).map_err(|e| e.to_string())? {
                        return Err(format!("Yang-Baxter fails for ({k},{l},{m},{n})"));
                    }
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("unitarity on {pairs} pairs, Yang-Baxter on {triples} triples"))
}

fn criterion4() -> Outcome {
    let mut total = 0;
    for (name, ms) in [("A_1", &[0][..]), ("A_2", &[0, 2]), ("A_3", &[0, 2, 4])] {
        let q = build_quiver(&index(ms), 3).map_err(|e| e.to_string())?;
        let (params, tag) = cartan_and_type(&q);
        if tag.to_string() != name {
            return Err(format!("anchors {ms:?} give type {tag}, expected {name}"));
        }
        for n in 1..=3 {
            let rep = verify_klr_relations(&KlrSpec::new(params.clone(), n), 8);
            if !rep.is_clean() {
                return Err(format!("{name}, n = {n}: {rep}"));
            }
            total += rep.checked;
        }
    }
    Ok(format!("{total} relation instances hold"))
}

/// Degree of `tau_w e(nu)` from the inversions of `w`.
fn pbw_degree(params: &KlrParams, w: &[usize], nu: &[usize]) -> i64 {
    let mut d = 0;
    for p in 0..w.len() {
        for r in p + 1..w.len() {
            if w[p] > w[r] {
                d -= params.cartan(nu[p], nu[r]);
            }
        }
    }
    d
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Bubble-sort word of `w`, rightmost letter applied first, with
/// `(w nu)[w(p)] = nu[p]`.
fn bubble_word(w: &[usize]) -> Vec<usize> {
    // sort the sequence of destinations; each adjacent swap moves a strand
    let mut cur = w.to_vec();
    let mut word = Vec::new();
    loop {
        let Some(a) = (0..cur.len().saturating_sub(1)).find(|&a| cur[a] > cur[a + 1]) else { break };
        cur.swap(a, a + 1);
        word.push(a);
    }
    // first swap acts first
    word.reverse();
    word
}

/// Rank per degree of `{tau_w x^alpha e(nu) : w nu = nu2}` evaluated on all
/// monomials of degree at most `n(n-1)/2`.
fn oracle_dim(params: &KlrParams, nu: &[usize], nu2: &[usize], cap: i64) -> LaurentQ {
    let n = nu.len();
    let spec = KlrSpec::new(params.clone(), n);
    let rep = PolyRep::new(&spec);
    let inputs: Vec<Vec<u32>> = (0..=(n * (n - 1) / 2) as u32).flat_map(|d| monomials_of_degree(n, d)).collect();
    let mut by_degree: BTreeMap<i64, Vec<Vec<Gen>>> = BTreeMap::new();
    for w in permutations(n) {
        let mut moved = vec![0; n];
        for p in 0..n {
            moved[w[p]] = nu[p];
        }
        if moved != nu2 {
            continue;
        }
        let dw = pbw_degree(params, &w, nu);
        let taus: Vec<Gen> = bubble_word(&w).into_iter().map(Gen::T).collect();
        for e in 0..=((cap - dw).max(0) / 2) as u32 {
            for alpha in monomials_of_degree(n, e) {
                let mut word = taus.clone();
                for (k, &ak) in alpha.iter().enumerate() {
                    word.extend(std::iter::repeat(Gen::X(k)).take(ak as usize));
                }
                word.push(Gen::E(nu.to_vec()));
                by_degree.entry(dw + 2 * e as i64).or_default().push(word);
            }
        }
    }
    let mut out = LaurentQ::zero();
    for (deg, words) in by_degree {
        if deg > cap {
            continue;
        }
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut cols: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
        let mut sparse: Vec<BTreeMap<usize, Rat>> = Vec::new();
        for word in &words {
            let mut row = BTreeMap::new();
            for (gi, g) in inputs.iter().enumerate() {
                let mut x = XPoly::zero(n);
                x.add_term(g.clone(), &Rat::one());
                let v: PolyVec = BTreeMap::from([(nu.to_vec(), x)]);
                let img = rep.apply_word(word, &v);
                if let Some(f) = img.get(nu2) {
                    for (e, c) in f.terms() {
                        let next = cols.len();
                        let idx = *cols.entry((gi, e.clone())).or_insert(next);
                        row.insert(idx, c.clone());
                    }
                }
            }
            sparse.push(row);
        }
        for r in &sparse {
            rows.push((0..cols.len()).map(|c| r.get(&c).cloned().unwrap_or_else(Rat::zero)).collect());
        }
        let rank = rank_rat(rows);
        if rank > 0 {
            out.add_term(deg, &Rat::from(rank as i64));
        }
    }
    out
}

/// Plain Gaussian elimination.
fn rank_rat(mut rows: Vec<Vec<Rat>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().unwrap();
        let pivot: Vec<Rat> = rows[rank].iter().map(|x| x.mul(&inv)).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for k in c..ncols {
                    let v = rows[r][k].sub(&f.mul(&pivot[k]));
                    rows[r][k] = v;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// `sum_w q^{deg tau_w e(nu)} / (1 - q^2)^n` up to degree `cap`.
fn pbw_series(params: &KlrParams, nu: &[usize], nu2: &[usize], cap: i64) -> LaurentQ {
    let n = nu.len();
    let shifts: Vec<i64> = permutations(n)
        .into_iter()
        .filter(|w| {
            let mut moved = vec![0; n];
            for p in 0..n {
                moved[w[p]] = nu[p];
            }
            moved == nu2
        })
        .map(|w| pbw_degree(params, &w, nu))
        .collect();
    // negative shifts pull in polynomial terms above the cap
    let top = cap - shifts.iter().copied().min().unwrap_or(0).min(0);
    let mut poly_part = LaurentQ::zero();
    for d in 0..=top.max(0) / 2 {
        // number of monomials of degree d in n variables
        poly_part.add_term(2 * d, &Rat::from(monomials_of_degree(n, d as u32).len() as i64));
    }
    let mut out = LaurentQ::zero();
    for s in shifts {
        out = out.add(&poly_part.shift(s));
    }
    out.truncate(cap)
}

fn sequences(colors: usize, n: usize) -> Vec<Colors> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|s: Colors| (0..colors).map(move |c| [s.clone(), vec![c]].concat())).collect();
    }
    out
}

fn criterion5() -> Outcome {
    let params = params_of(3, &[0, 2, 4]);
    let mut pairs = 0;
    for n in 1..=3 {
        let seqs = sequences(3, n);
        for nu in &seqs {
            for nu2 in &seqs {
                let mut a = nu.clone();
                let mut b = nu2.clone();
                a.sort();
                b.sort();
                if a != b {
                    continue;
                }
                let got = graded_dim(&KlrSpec::new(params.clone(), n), nu, nu2, 8);
                let oracle = oracle_dim(&params, nu, nu2, 8);
                let pbw = pbw_series(&params, nu, nu2, 8);
                if got != oracle || got != pbw {
                    return Err(format!("{nu:?} -> {nu2:?}: graded_dim {got}, oracle {oracle}, PBW {pbw}"));
                }
                pairs += 1;
            }
        }
    }
    let single = graded_dim(&KlrSpec::new(params_of(3, &[0]), 1), &[0], &[0], 6);
    let mut expect = LaurentQ::zero();
    for e in [0, 2, 4, 6] {
        expect.add_term(e, &Rat::one());
    }
    if single != expect {
        return Err(format!("graded_dim(alpha_i, (i), (i), 6) = {single}"));
    }
    Ok(format!("{pairs} idempotent pairs agree with the rank oracle and the PBW series; single vertex {single}"))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion6() -> Outcome {
    let p = params_of(2, &[0, 2]);
    let l = |nu: &[usize]| one_dim_module(&p, nu).unwrap();
    let conv = |a: &FDModule, b: &FDModule| convolution(a, b).unwrap();
    let mods = vec![
        l(&[0]),
        l(&[1]),
        l(&[0, 1]),
        l(&[1, 0]),
        conv(&l(&[0]), &l(&[1])),
        conv(&l(&[1]), &l(&[1])),
        conv(&l(&[0]), &l(&[0, 1])),
        conv(&l(&[1, 0]), &l(&[1])),
    ];
    let mut count = 0;
    for a in &mods {
        for b in &mods {
            if a.n + b.n > 4 {
                continue;
            }
            let c = convolution(a, b).map_err(|e| e.to_string())?;
            let expect = binomial(a.n + b.n, a.n) * a.dim() * b.dim();
            if c.dim() != expect {
                return Err(format!("dim {} != {expect} for n1 = {}, n2 = {}", c.dim(), a.n, b.n));
            }
            let rep = c.check_relations();
            if !rep.is_clean() {
                return Err(format!("convolution fails relations: {rep}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} pairs satisfy the dimension law"))
}

fn ctx(ms: &[i64]) -> SwdContext {
    SwdContext::new(2, index(ms)).unwrap()
}

fn criterion7() -> Outcome {
    let c = ctx(&[0, 2]);
    if c.type_tag.to_string() != "A_2" {
        return Err(format!("type {}", c.type_tag));
    }
    let rep = verify_bimodule(&c, 2, 3).map_err(|e| e.to_string())?;
    if rep.is_clean() {
        Ok(format!("{} commutator and tau^2 checks vanish (degree cap 3)", rep.checked))
    } else {
        Err(rep.to_string())
    }
}

fn criterion8() -> Outcome {
    let mut out = Vec::new();
    for ms in [[0, 2], [0, 4]] {
        let c = ctx(&ms);
        let li = one_dim_module(&c.params, &[0]).unwrap();
        let lj = one_dim_module(&c.params, &[1]).unwrap();
        let fc = functor_apply(&c, &convolution(&li, &lj).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let ft = functor_apply(&c, &li).unwrap().module.tensor(&functor_apply(&c, &lj).unwrap().module);
        match compare_modules(&fc.module, &ft) {
            Comparison::Isomorphic(phi) => out.push(format!("{} ({}): dim {} rank {}", c.type_tag, ms[1], ft.dim(), phi.rank())),
            other => return Err(format!("anchors {ms:?}: {other:?}")),
        }
    }
    Ok(format!("isomorphisms found: {}", out.join(", ")))
}

fn criterion9() -> Outcome {
    let c = ctx(&[0, 2]);
    if !c.type_tag.is_ade() {
        return Err(format!("type gate: {} is not ADE", c.type_tag));
    }
    let ses = build_ses(&SesFamily::Adjacent { params: c.params.clone(), i: 0, j: 1 }).map_err(|e| e.to_string())?;
    let r = verify_exactness(&c, &ses).map_err(|e| e.to_string())?;
    if r.is_exact() && r.ade {
        Ok(format!("type {} (ADE); {r}", c.type_tag))
    } else {
        Err(r.to_string())
    }
}

fn criterion10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut vertices = 0;
    for trial in 0..200 {
        let size = rng.gen_range(1..=6);
        let mut set = BTreeSet::new();
        while set.len() < size {
            set.insert((rng.gen_range(1..=3usize), rng.gen_range(-6..=6i64)));
        }
        let idx: Vec<SpectralIndex> = set.iter().map(|&(k, m)| SpectralIndex::new(k, QMono::neg_q(m))).collect();
        let q = build_quiver(&idx, 4).map_err(|e| format!("set {trial}: {e}"))?;
        let defects = q.defects();
        if !defects.is_empty() {
            return Err(format!("set {trial}: {}", defects.join(", ")));
        }
        vertices += q.len();
    }
    Ok(format!("200 random index sets ({vertices} vertices), no loops or 2-cycles"))
}

fn run(id: usize, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    report(id, &r, t);
    r.is_ok()
}

fn report(id: usize, r: &Outcome, t: Instant) {
    let secs = t.elapsed().as_secs_f64();
    match r {
        Ok(m) => println!("criterion {id:>2}: PASS  {m}  [{secs:.1}s]"),
        Err(m) => println!("criterion {id:>2}: FAIL  {m}  [{secs:.1}s]"),
    }
}

fn main() {
    let mut unexpected = Vec::new();
    let t = Instant::now();
    let (r1, bad) = criterion1();
    report(1, &r1, t);
    if r1.is_err() && bad != CRITERION1_KNOWN {
        unexpected.push(1);
    }
    let rest: [(usize, fn() -> Outcome); 9] = [
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
        (10, criterion10),
    ];
    for (id, f) in rest {
        if !run(id, f) {
            unexpected.push(id);
        }
    }
    if r1.is_err() && bad == CRITERION1_KNOWN {
        println!("note: criterion 1 fails on exactly the documented cases with k + l > N");
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}

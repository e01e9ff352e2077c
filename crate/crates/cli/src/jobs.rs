//! Running one job into a report of tables.

use qswd_core::affine_rep::FinModule;
use qswd_core::arith::{Field, Qq};
use qswd_core::functor::{compare_modules, functor_apply, verify_bimodule, Comparison, SwdContext};
use qswd_core::klr::{graded_dim, verify_klr_relations, KlrSpec};
use qswd_core::klr_modules::{convolution, parse_module, FDModule};
use qswd_core::quiver::{build_quiver, cartan_and_type, SpectralIndex};
use qswd_core::rmatrix::denominator;
use serde::{Deserialize, Serialize};

use crate::config::{Check, Job, ModuleSource};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(title: &str, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Output of a job; `failures` are hard invariant violations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tables: Vec<Table>,
    pub failures: Vec<String>,
}

pub struct Setting<'a> {
    pub rank: usize,
    pub index: &'a [SpectralIndex],
}

pub fn run_job(job: &Job, s: &Setting) -> Report {
    let mut r = Report::default();
    let res = match job {
        Job::Denominators { max_k } => denominators(s.rank, *max_k, &mut r),
        Job::Quiver => quiver(s, &mut r),
        Job::KlrVerify { n, cap } => klr_verify(s, *n, *cap, &mut r),
        Job::GradedDims { n, cap } => graded_dims(s, *n, *cap, &mut r),
        Job::Functor { modules, check, cap } => functor(s, modules, *check, *cap, &mut r),
    };
    if let Err(e) = res {
        r.failures.push(e.to_string());
    }
    r
}

type Res = Result<(), qswd_core::Error>;

fn denominators(n: usize, max_k: usize, r: &mut Report) -> Res {
    let mut t = Table::new("denominators", &["k", "l", "N", "degree", "d_kl(z)"]);
    let top = max_k.min(n - 1);
    for k in 1..=top {
        for l in 1..=top {
            let d = denominator(k, l, n)?;
            t.push(vec![k.to_string(), l.to_string(), n.to_string(), d.degree().to_string(), d.to_string()]);
        }
    }
    r.tables.push(t);
    Ok(())
}

fn quiver(s: &Setting, r: &mut Report) -> Res {
    let q = build_quiver(s.index, s.rank)?;
    let (_, tag) = cartan_and_type(&q);
    let mut v = Table::new("vertices", &["vertex", "k", "anchor"]);
    for (i, x) in q.vertices.iter().enumerate() {
        v.push(vec![i.to_string(), x.s.to_string(), x.x.to_string()]);
    }
    let mut a = Table::new("arrows", &["source", "target", "multiplicity"]);
    for (i, j, m) in q.arrows() {
        a.push(vec![i.to_string(), j.to_string(), m.to_string()]);
    }
    let mut info = Table::new("summary", &["key", "value"]);
    info.push(vec!["type".into(), tag.to_string()]);
    info.push(vec!["ade".into(), tag.is_ade().to_string()]);
    for note in &q.notes {
        info.push(vec!["note".into(), note.clone()]);
    }
    r.tables.extend([v, a, info]);
    r.failures.extend(q.defects());
    Ok(())
}

fn klr_params(s: &Setting) -> Result<qswd_core::quiver::KlrParams, qswd_core::Error> {
    Ok(cartan_and_type(&build_quiver(s.index, s.rank)?).0)
}

fn klr_verify(s: &Setting, n: usize, cap: u32, r: &mut Report) -> Res {
    let params = klr_params(s)?;
    let mut t = Table::new("klr relations", &["n", "degree-cap", "checked", "failed"]);
    for k in 1..=n {
        let rep = verify_klr_relations(&KlrSpec::new(params.clone(), k), cap);
        t.push(vec![k.to_string(), cap.to_string(), rep.checked.to_string(), rep.failures.len().to_string()]);
        r.failures.extend(rep.failures.into_iter().map(|f| format!("n = {k}: {f}")));
    }
    r.tables.push(t);
    Ok(())
}

fn graded_dims(s: &Setting, n: usize, cap: i64, r: &mut Report) -> Res {
    let params = klr_params(s)?;
    let mut t = Table::new("graded dimensions", &["nu", "nu'", "dim_q e(nu') R e(nu)"]);
    for k in 1..=n {
        let spec = KlrSpec::new(params.clone(), k);
        let seqs = spec.sequences();
        for nu in &seqs {
            for nu2 in &seqs {
                let (mut a, mut b) = (nu.clone(), nu2.clone());
                a.sort();
                b.sort();
                if a == b {
                    t.push(vec![seq(nu), seq(nu2), graded_dim(&spec, nu, nu2, cap).to_string()]);
                }
            }
        }
    }
    r.tables.push(t);
    Ok(())
}

fn seq(nu: &[usize]) -> String {
    nu.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn character(m: &FinModule<Qq>) -> String {
    let parts: Vec<String> = m.character().into_iter().map(|(w, k)| format!("{k}x{w}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

fn module_name(src: &ModuleSource) -> String {
    src.path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default()
}

fn functor(s: &Setting, modules: &[ModuleSource], check: Option<Check>, cap: u32, r: &mut Report) -> Res {
    let ctx = SwdContext::new(s.rank, s.index.to_vec())?;
    let parsed: Vec<FDModule> = modules.iter().map(|m| parse_module(&m.text, &ctx.params)).collect::<Result<_, _>>()?;
    let mut t = Table::new("functor images", &["module", "n", "dim M", "total", "relation rank", "dim F(M)", "character"]);
    let mut images = Vec::new();
    for (src, m) in modules.iter().zip(&parsed) {
        let out = functor_apply(&ctx, m)?;
        t.push(vec![
            module_name(src),
            m.n.to_string(),
            m.dim().to_string(),
            out.total_dim.to_string(),
            out.relation_rank.to_string(),
            out.module.dim().to_string(),
            character(&out.module),
        ]);
        images.push(out.module);
    }
    r.tables.push(t);
    match check {
        None => {}
        Some(Check::Relations) => {
            let mut c = Table::new("relations", &["module", "checked", "failed"]);
            for (src, f) in modules.iter().zip(&images) {
                let rep = f.check_defining_relations();
                c.push(vec![module_name(src), rep.checked.to_string(), rep.failures.len().to_string()]);
                r.failures.extend(rep.failures);
            }
            r.tables.push(c);
        }
        Some(Check::Bimodule) => {
            let n = parsed[0].n;
            let rep = verify_bimodule(&ctx, n, cap)?;
            let mut c = Table::new("bimodule", &["n", "degree-cap", "checked", "failed"]);
            c.push(vec![n.to_string(), cap.to_string(), rep.checked.to_string(), rep.failures.len().to_string()]);
            r.tables.push(c);
            r.failures.extend(rep.failures);
        }
        Some(Check::ConvTensor) => {
            let conv = convolution(&parsed[0], &parsed[1])?;
            let lhs = functor_apply(&ctx, &conv)?.module;
            let rhs = images[0].tensor(&images[1]);
            let mut c = Table::new("conv-tensor", &["key", "value"]);
            c.push(vec!["dim F(M1 o M2)".into(), lhs.dim().to_string()]);
            c.push(vec!["dim F(M1) (x) F(M2)".into(), rhs.dim().to_string()]);
            match compare_modules(&lhs, &rhs) {
                Comparison::Isomorphic(phi) => {
                    c.push(vec!["result".into(), "isomorphic".into()]);
                    r.tables.push(c);
                    let mut w = Table::new("witness", &["row", "col", "entry"]);
                    for (i, j, v) in phi.entries() {
                        if !v.is_zero() {
                            w.push(vec![i.to_string(), j.to_string(), v.to_string()]);
                        }
                    }
                    r.tables.push(w);
                }
                Comparison::Distinguished(why) => {
                    c.push(vec!["result".into(), format!("distinguished: {why}")]);
                    r.tables.push(c);
                    r.failures.push(format!("F(M1 o M2) and F(M1) (x) F(M2) are not isomorphic: {why}"));
                }
                Comparison::Inconclusive(why) => {
                    c.push(vec!["result".into(), format!("inconclusive: {why}")]);
                    r.tables.push(c);
                    r.failures.push(format!("no isomorphism found: {why}"));
                }
            }
        }
    }
    Ok(())
}

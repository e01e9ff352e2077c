//! Job configuration files.
//!
//! ```text
//! qswd-config v1
//! N 2
//! # index k m [c]: the vertex V(w_k) at c(-q)^m
//! index 1 0
//! index 1 2
//! job quiver
//! job klr-verify n 2 cap 6
//! job functor module l01.mod check conv-tensor
//! format tsv
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use qswd_core::arith::{QMono, Rat};
use qswd_core::quiver::SpectralIndex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CONFIG_HEADER: &str = "qswd-config v1";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn perr(line: usize, msg: impl Into<String>) -> ConfigError {
    ConfigError::Parse { line, msg: msg.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Check {
    /// compare F(M1 o M2) with F(M1) (x) F(M2)
    ConvTensor,
    /// left/right commutators on the bimodule in degree n of the module
    Bimodule,
    /// quantum affine relations of F(M)
    Relations,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::ConvTensor => "conv-tensor",
            Check::Bimodule => "bimodule",
            Check::Relations => "relations",
        })
    }
}

/// A module file with its contents; contents take part in cache keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSource {
    pub path: PathBuf,
    pub text: String,
}

impl ModuleSource {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        Ok(ModuleSource { path: path.to_path_buf(), text })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Job {
    Denominators { max_k: usize },
    Quiver,
    KlrVerify { n: usize, cap: u32 },
    GradedDims { n: usize, cap: i64 },
    Functor { modules: Vec<ModuleSource>, check: Option<Check>, cap: u32 },
}

impl Job {
    pub fn name(&self) -> &'static str {
        match self {
            Job::Denominators { .. } => "denominators",
            Job::Quiver => "quiver",
            Job::KlrVerify { .. } => "klr-verify",
            Job::GradedDims { .. } => "graded-dims",
            Job::Functor { .. } => "functor",
        }
    }

    pub fn caps(&self) -> String {
        match self {
            Job::Denominators { max_k } => format!("max-k={max_k}"),
            Job::Quiver => "none".into(),
            Job::KlrVerify { n, cap } => format!("n={n} degree-cap={cap}"),
            Job::GradedDims { n, cap } => format!("n={n} degree-cap={cap}"),
            Job::Functor { cap, .. } => format!("degree-cap={cap}"),
        }
    }
}

/// Index entry `(k, m, c)` for `V(w_k)` at `c (-q)^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub k: usize,
    pub m: i64,
    pub c: String,
}

impl IndexEntry {
    pub fn spectral(&self) -> SpectralIndex {
        SpectralIndex::new(self.k, QMono::new(parse_rat(&self.c).expect("validated at parse time"), self.m))
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<i64>().ok()?, d.parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    (d != 0 && n != 0).then(|| Rat::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub rank: Option<usize>,
    pub index: Vec<IndexEntry>,
    pub jobs: Vec<Job>,
    pub format: Option<Format>,
}

impl JobConfig {
    pub fn spectral_index(&self) -> Vec<SpectralIndex> {
        self.index.iter().map(IndexEntry::spectral).collect()
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    /// Parses a config; module paths are resolved against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, ConfigError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, l)) if l == CONFIG_HEADER => {}
            Some((ln, _)) => return Err(perr(ln, format!("expected header `{CONFIG_HEADER}`"))),
            None => return Err(perr(1, "empty config")),
        }
        let mut cfg = JobConfig { rank: None, index: Vec::new(), jobs: Vec::new(), format: None };
        for (ln, line) in lines {
            let tok: Vec<&str> = line.split_whitespace().collect();
            match tok[0] {
                "N" => {
                    if tok.len() != 2 {
                        return Err(perr(ln, "usage: N <rank>"));
                    }
                    let n: usize = tok[1].parse().map_err(|_| perr(ln, "rank must be an integer"))?;
                    if n < 2 {
                        return Err(perr(ln, "rank must be at least 2"));
                    }
                    cfg.rank = Some(n);
                }
                "index" => {
                    if !(3..=4).contains(&tok.len()) {
                        return Err(perr(ln, "usage: index <k> <m> [c]"));
                    }
                    let k: usize = tok[1].parse().map_err(|_| perr(ln, "k must be a positive integer"))?;
                    let m: i64 = tok[2].parse().map_err(|_| perr(ln, "m must be an integer"))?;
                    let c = tok.get(3).copied().unwrap_or("1");
                    parse_rat(c).ok_or_else(|| perr(ln, "c must be a nonzero rational a or a/b"))?;
                    cfg.index.push(IndexEntry { k, m, c: c.to_string() });
                }
                "format" => {
                    cfg.format = Some(match tok.get(1).copied() {
                        Some("tsv") if tok.len() == 2 => Format::Tsv,
                        Some("text") if tok.len() == 2 => Format::Text,
                        _ => return Err(perr(ln, "usage: format tsv|text")),
                    });
                }
                "job" => cfg.jobs.push(parse_job(&tok[1..], ln, base)?),
                other => return Err(perr(ln, format!("unknown keyword `{other}`"))),
            }
        }
        let Some(n) = cfg.rank else {
            return Err(perr(0, "missing `N` line"));
        };
        for (i, e) in cfg.index.iter().enumerate() {
            if e.k == 0 || e.k >= n {
                return Err(perr(0, format!("index entry {} has k = {} outside 1..{}", i + 1, e.k, n - 1)));
            }
        }
        if cfg.index.is_empty() && cfg.jobs.iter().any(|j| !matches!(j, Job::Denominators { .. })) {
            return Err(perr(0, "jobs other than denominators need at least one `index` line"));
        }
        Ok(cfg)
    }
}

fn positive<T: std::str::FromStr + PartialOrd + Default>(v: Option<&&str>, ln: usize, what: &str) -> Result<T, ConfigError> {
    let v: T = v.ok_or_else(|| perr(ln, format!("missing value for {what}")))?.parse().map_err(|_| perr(ln, format!("invalid {what}")))?;
    if v <= T::default() {
        return Err(perr(ln, format!("{what} must be positive")));
    }
    Ok(v)
}

fn parse_job(tok: &[&str], ln: usize, base: &Path) -> Result<Job, ConfigError> {
    let Some((&kind, rest)) = tok.split_first() else {
        return Err(perr(ln, "job needs a kind"));
    };
    if rest.len() % 2 != 0 {
        return Err(perr(ln, "job options come in `key value` pairs"));
    }
    let opts: Vec<(&str, &&str)> = rest.chunks(2).map(|p| (p[0], &p[1])).collect();
    let get = |key: &str| opts.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
    let allowed: &[&str] = match kind {
        "denominators" => &["max-k"],
        "quiver" => &[],
        "klr-verify" | "graded-dims" => &["n", "cap"],
        "functor" => &["module", "check", "cap"],
        other => return Err(perr(ln, format!("unknown job `{other}`"))),
    };
    if let Some((k, _)) = opts.iter().find(|(k, _)| !allowed.contains(k)) {
        return Err(perr(ln, format!("unknown option `{k}` for job {kind}")));
    }
    Ok(match kind {
        "denominators" => Job::Denominators { max_k: get("max-k").map(|v| positive(Some(v), ln, "max-k")).transpose()?.unwrap_or(3) },
        "quiver" => Job::Quiver,
        "klr-verify" => Job::KlrVerify {
            n: positive(get("n").or(Some(&"2")), ln, "n")?,
            cap: positive(get("cap").or(Some(&"6")), ln, "cap")?,
        },
        "graded-dims" => Job::GradedDims {
            n: positive(get("n").or(Some(&"2")), ln, "n")?,
            cap: positive(get("cap").or(Some(&"6")), ln, "cap")?,
        },
        _ => {
            let modules = opts
                .iter()
                .filter(|(k, _)| *k == "module")
                .map(|(_, v)| ModuleSource::load(&base.join(v)).map_err(|e| perr(ln, e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let check = match get("check").copied() {
                None => None,
                Some("conv-tensor") => Some(Check::ConvTensor),
                Some("bimodule") => Some(Check::Bimodule),
                Some("relations") => Some(Check::Relations),
                Some(o) => return Err(perr(ln, format!("unknown check `{o}`"))),
            };
            validate_functor(&modules, check).map_err(|m| perr(ln, m))?;
            Job::Functor { modules, check, cap: positive(get("cap").or(Some(&"2")), ln, "cap")? }
        }
    })
}

pub fn validate_functor(modules: &[ModuleSource], check: Option<Check>) -> Result<(), String> {
    match (modules.len(), check) {
        (0, _) => Err("functor job needs a module".into()),
        (2, Some(Check::ConvTensor)) | (1, _) => Ok(()),
        (2, _) => Err("two modules are only accepted with `check conv-tensor`".into()),
        (1.., Some(Check::ConvTensor)) => Err("`check conv-tensor` needs exactly two modules".into()),
        _ => Err("at most two modules".into()),
    }
}

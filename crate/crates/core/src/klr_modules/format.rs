//! Text format of a module:
//!
//! ```text
//! klr-module v1
//! n 2
//! basis 2
//! v 0 colors 0 1 degree 0
//! v 1 colors 1 0 degree 1
//! t 1 1 0 1
//! end
//! ```
//!
//! `v` lines give each basis vector's color sequence (vertex indices) and
//! degree. `x k row col value` and `t a row col value` are nonzero entries of
//! `x_k` and `tau_a` (1-based generator, 0-based basis indices); values are
//! elements of Q(q). Lines starting with `#` are comments.

use std::fmt::Write as _;

use super::FDModule;
use crate::arith::{parse_qq, Field, Qq};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::KlrParams;

pub const MODULE_HEADER: &str = "klr-module v1";

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| perr(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| perr(line, format!("invalid {what}")))
}

/// Parses and validates a module over `params`.
pub fn parse_module(text: &str, params: &KlrParams) -> Result<FDModule> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l)) if l == MODULE_HEADER => {}
        Some((i, _)) => return Err(perr(i, format!("expected header `{MODULE_HEADER}`"))),
        None => return Err(perr(0, "empty module file")),
    }
    let mut n: Option<usize> = None;
    let mut dim: Option<usize> = None;
    let mut colors: Vec<Option<Vec<usize>>> = Vec::new();
    let mut degrees: Vec<i64> = Vec::new();
    let mut x: Vec<Matrix<Qq>> = Vec::new();
    let mut tau: Vec<Matrix<Qq>> = Vec::new();
    let mut ended = false;
    for (ln, line) in lines {
        if ended {
            return Err(perr(ln, "content after `end`"));
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("n") => {
                let v: usize = num(tok.next(), ln, "degree n")?;
                n = Some(v);
            }
            Some("basis") => {
                let d: usize = num(tok.next(), ln, "basis size")?;
                let nn = n.ok_or_else(|| perr(ln, "`n` must precede `basis`"))?;
                dim = Some(d);
                colors = vec![None; d];
                degrees = vec![0; d];
                x = vec![Matrix::zeros(d, d); nn];
                tau = vec![Matrix::zeros(d, d); nn.saturating_sub(1)];
            }
            Some("v") => {
                let d = dim.ok_or_else(|| perr(ln, "`basis` must precede `v`"))?;
                let b: usize = num(tok.next(), ln, "basis index")?;
                if b >= d {
                    return Err(perr(ln, format!("basis index {b} out of range")));
                }
                if tok.next() != Some("colors") {
                    return Err(perr(ln, "expected `colors`"));
                }
                let rest: Vec<&str> = tok.collect();
                let split = rest.iter().position(|t| *t == "degree").ok_or_else(|| perr(ln, "expected `degree`"))?;
                let cs = rest[..split]
                    .iter()
                    .map(|t| t.parse::<usize>().map_err(|_| perr(ln, format!("invalid color `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if cs.len() != n.unwrap_or(0) {
                    return Err(perr(ln, format!("expected {} colors", n.unwrap_or(0))));
                }
                if let Some(&c) = cs.iter().find(|&&c| c >= params.len()) {
                    return Err(perr(ln, format!("color {c} is not a vertex")));
                }
                if split + 2 != rest.len() {
                    return Err(perr(ln, "expected a single degree"));
                }
                degrees[b] = num(Some(rest[split + 1]), ln, "degree")?;
                colors[b] = Some(cs);
            }
            Some(kind @ ("x" | "t")) => {
                let d = dim.ok_or_else(|| perr(ln, "`basis` must precede matrix entries"))?;
                let g: usize = num(tok.next(), ln, "generator index")?;
                let r: usize = num(tok.next(), ln, "row")?;
                let c: usize = num(tok.next(), ln, "column")?;
                let val: Vec<&str> = tok.collect();
                if val.is_empty() {
                    return Err(perr(ln, "missing value"));
                }
                let v = parse_qq(&val.join(" ")).map_err(|e| perr(ln, e))?;
                let mats = if kind == "x" { &mut x } else { &mut tau };
                if g == 0 || g > mats.len() {
                    return Err(perr(ln, format!("no generator {kind}{g}")));
                }
                if r >= d || c >= d {
                    return Err(perr(ln, "matrix index out of range"));
                }
                mats[g - 1].set(r, c, v);
            }
            Some("end") => ended = true,
            Some(other) => return Err(perr(ln, format!("unknown directive `{other}`"))),
            None => {}
        }
    }
    let n = n.ok_or_else(|| perr(0, "missing `n`"))?;
    if dim.is_none() {
        return Err(perr(0, "missing `basis`"));
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(b, c)| c.ok_or_else(|| perr(0, format!("basis vector {b} has no `v` line"))))
        .collect::<Result<Vec<_>>>()?;
    FDModule::new(params.clone(), n, colors, degrees, x, tau)
}

/// Deterministic serialization accepted by [`parse_module`].
pub fn write_module(m: &FDModule) -> String {
    let mut s = String::new();
    writeln!(s, "{MODULE_HEADER}").unwrap();
    writeln!(s, "n {}", m.n).unwrap();
    writeln!(s, "basis {}", m.dim()).unwrap();
    for b in 0..m.dim() {
        let cs: Vec<String> = m.colors[b].iter().map(|c| c.to_string()).collect();
        writeln!(s, "v {b} colors {} degree {}", cs.join(" "), m.degrees[b]).unwrap();
    }
    for (kind, mats) in [("x", &m.x), ("t", &m.tau)] {
        for (g, mat) in mats.iter().enumerate() {
            for (r, c, v) in mat.entries() {
                if !v.is_zero() {
                    writeln!(s, "{kind} {} {r} {c} {v}", g + 1).unwrap();
                }
            }
        }
    }
    writeln!(s, "end").unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klr_modules::{convolution, one_dim_module};

    fn a2() -> KlrParams {
        KlrParams::from_arrows(vec![vec![0, 1], vec![0, 0]])
    }

    #[test]
    fn roundtrip() {
        let p = a2();
        let m = convolution(&one_dim_module(&p, &[0]).unwrap(), &one_dim_module(&p, &[1]).unwrap()).unwrap();
        let text = write_module(&m);
        let back = parse_module(&text, &p).unwrap();
        assert_eq!(back, m);
        assert_eq!(write_module(&back), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let p = a2();
        let text = "klr-module v1\nn 1\nbasis 1\nv 0 colors 5 degree 0\nend\n";
        assert!(matches!(parse_module(text, &p), Err(Error::Parse { line: 4, .. })));
        let text = "klr-module v1\nn 1\nbasis 1\nv 0 colors 0 degree 0\nx 1 0 0 q+\nend\n";
        assert!(matches!(parse_module(text, &p), Err(Error::Parse { line: 5, .. })));
        let text = "klr-module v2\n";
        assert!(matches!(parse_module(text, &p), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn invalid_module_rejected() {
        // L(i, i) violates the straightening relation
        let text = "klr-module v1\nn 2\nbasis 1\nv 0 colors 0 0 degree 0\nend\n";
        assert!(matches!(parse_module(text, &a2()), Err(Error::Rejected(_))));
    }
}

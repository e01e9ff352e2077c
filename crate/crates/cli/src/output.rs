//! TSV and plain-text rendering.

use std::fmt::Write as _;

use crate::config::Format;
use crate::jobs::{Report, Table};

pub struct JobResult {
    pub title: String,
    pub report: Report,
}

fn cell(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

fn tsv_table(out: &mut String, t: &Table) {
    writeln!(out, "# table: {}", t.title).unwrap();
    writeln!(out, "{}", t.columns.join("\t")).unwrap();
    for row in &t.rows {
        let r: Vec<String> = row.iter().map(|c| cell(c)).collect();
        writeln!(out, "{}", r.join("\t")).unwrap();
    }
}

fn text_table(out: &mut String, t: &Table) {
    writeln!(out, "  {}:", t.title).unwrap();
    if t.rows.is_empty() {
        writeln!(out, "    (none)").unwrap();
        return;
    }
    let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
    for row in &t.rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("    {}", padded.join("  ").trim_end())
    };
    writeln!(out, "{}", line(&t.columns)).unwrap();
    for row in &t.rows {
        writeln!(out, "{}", line(row)).unwrap();
    }
}

/// Renders job results followed by the metadata block.
pub fn render(results: &[JobResult], metadata: &[(String, String)], format: Format) -> String {
    let mut out = String::new();
    for (i, r) in results.iter().enumerate() {
        match format {
            Format::Tsv => {
                writeln!(out, "# job {}: {}", i + 1, r.title).unwrap();
                for t in &r.report.tables {
                    tsv_table(&mut out, t);
                }
                for f in &r.report.failures {
                    writeln!(out, "# FAILURE: {}", cell(f)).unwrap();
                }
            }
            Format::Text => {
                writeln!(out, "job {}: {}", i + 1, r.title).unwrap();
                for t in &r.report.tables {
                    text_table(&mut out, t);
                }
                for f in &r.report.failures {
                    writeln!(out, "  FAILURE: {f}").unwrap();
                }
            }
        }
        out.push('\n');
    }
    match format {
        Format::Tsv => {
            writeln!(out, "# metadata").unwrap();
            for (k, v) in metadata {
                writeln!(out, "# {k}\t{}", cell(v)).unwrap();
            }
        }
        Format::Text => {
            writeln!(out, "metadata:").unwrap();
            for (k, v) in metadata {
                writeln!(out, "  {k}: {v}").unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<JobResult> {
        let t = Table { title: "t".into(), columns: vec!["a".into(), "bb".into()], rows: vec![vec!["1".into(), "x\ty".into()]] };
        vec![JobResult { title: "demo".into(), report: Report { tables: vec![t], failures: vec![] } }]
    }

    #[test]
    fn tsv_escapes_tabs() {
        let s = render(&sample(), &[("k".into(), "v".into())], Format::Tsv);
        assert_eq!(s, "# job 1: demo\n# table: t\na\tbb\n1\tx y\n\n# metadata\n# k\tv\n");
    }

    #[test]
    fn text_aligns() {
        let s = render(&sample(), &[], Format::Text);
        assert!(s.contains("    a  bb\n    1  x\ty\n"), "{s}");
    }
}

//! Tables of values over a window.

use std::fmt::Write;
use std::str::FromStr;

use serde::Serialize;

use super::Window;
use crate::dihedral::{Grading, GroupSpec, SubgroupTag};
use crate::linalg::FgAbGroup;
use crate::ring;
use crate::tate::{self, TheoryTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" => Ok(Format::Latex),
            _ => Err(format!("unknown format {s:?}")),
        }
    }
}

/// What a table shows: every level of `π_★ HZ`, or the G level of one
/// theory in the assembly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableTheory {
    Pi,
    Theory(TheoryTag),
}

impl FromStr for TableTheory {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "pi" {
            return Ok(TableTheory::Pi);
        }
        s.parse().map(TableTheory::Theory).map_err(|_| format!("unknown theory {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub grading: [i64; 3],
    pub values: Vec<FgAbGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub p: u32,
    pub theory: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

pub fn build_table(spec: GroupSpec, window: &Window, theory: TableTheory) -> Table {
    let (name, columns) = match theory {
        TableTheory::Pi => ("pi".to_string(), SubgroupTag::ALL.iter().map(|l| l.to_string()).collect()),
        TableTheory::Theory(t) => (t.name().to_string(), vec!["G".to_string()]),
    };
    let value = |g: Grading| -> Vec<FgAbGroup> {
        match theory {
            TableTheory::Pi => SubgroupTag::ALL
                .iter()
                .map(|&l| match l {
                    SubgroupTag::G => ring::group_at(spec, g).group(),
                    _ => ring::level_group_at(spec, l, g).group(),
                })
                .collect(),
            TableTheory::Theory(t) => vec![tate::theory_group_at(spec, t, g).group],
        }
    };
    Table {
        p: spec.p(),
        theory: name,
        columns,
        rows: window
            .gradings()
            .into_iter()
            .map(|g| TableRow {
                grading: g.as_array(),
                values: value(g),
            })
            .collect(),
    }
}

fn latex_group(g: &FgAbGroup) -> String {
    let mut parts = Vec::new();
    match g.free_rank {
        0 => {}
        1 => parts.push("\\mathbb{Z}".to_string()),
        n => parts.push(format!("\\mathbb{{Z}}^{{{n}}}")),
    }
    for t in &g.torsion {
        parts.push(format!("\\mathbb{{Z}}/{t}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" \\oplus ")
    }
}

pub fn render(t: &Table, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(t).expect("serializable");
            out.push('\n');
        }
        Format::Csv => {
            writeln!(out, "a,b,c,{}", t.columns.join(",")).unwrap();
            for r in &t.rows {
                let vals: Vec<String> = r.values.iter().map(|v| v.to_string()).collect();
                writeln!(out, "{},{},{},{}", r.grading[0], r.grading[1], r.grading[2], vals.join(",")).unwrap();
            }
        }
        Format::Latex => {
            writeln!(out, "\\begin{{tabular}}{{rrr{}}}", "l".repeat(t.columns.len())).unwrap();
            writeln!(out, "$a$ & $b$ & $c$ & {} \\\\", t.columns.join(" & ")).unwrap();
            writeln!(out, "\\hline").unwrap();
            for r in &t.rows {
                let vals: Vec<String> = r.values.iter().map(|v| format!("${}$", latex_group(v))).collect();
                writeln!(out, "{} & {} & {} & {} \\\\", r.grading[0], r.grading[1], r.grading[2], vals.join(" & ")).unwrap();
            }
            writeln!(out, "\\end{{tabular}}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_window_gives_header_only() {
        let spec = GroupSpec::new(3).unwrap();
        let w: Window = "1..0,0..0,0..0".parse().unwrap();
        let t = build_table(spec, &w, TableTheory::Pi);
        assert!(t.rows.is_empty());
        assert_eq!(render(&t, Format::Csv), "a,b,c,G,Cp,C2,e\n");
    }

    #[test]
    fn integer_degrees() {
        let spec = GroupSpec::new(3).unwrap();
        let w: Window = "-1..1".parse().unwrap();
        let csv = render(&build_table(spec, &w, TableTheory::Pi), Format::Csv);
        assert!(csv.contains("0,0,0,Z,Z,Z,Z\n"), "{csv}");
        assert!(csv.contains("1,0,0,0,0,0,0\n"), "{csv}");
    }
}

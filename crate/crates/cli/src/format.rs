//! Locale-independent numeric text output: CSV tables and matrix files.
//!
//! A matrix file is a run of `# key: value` metadata lines, then one line per
//! axis (`name v0 v1 ...`), then the row-major value block.

use std::fmt::Write;

use crate::CliError;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv(header: &[String], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| num(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub meta: Vec<(String, String)>,
    pub axes: Vec<(String, Vec<f64>)>,
    pub rows: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn axis(&self, name: &str) -> Option<&[f64]> {
        self.axes.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_slice())
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().flatten().copied()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {v}").unwrap();
        }
        for (name, values) in &self.axes {
            let cells: Vec<String> = values.iter().map(|&v| num(v)).collect();
            writeln!(out, "{name} {}", cells.join(" ")).unwrap();
        }
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| num(v)).collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut file = MatrixFile { meta: Vec::new(), axes: Vec::new(), rows: Vec::new() };
        for (i, line) in text.lines().enumerate() {
            let bad = |what: &str| CliError::Config(format!("matrix line {}: {what}", i + 1));
            if line.trim().is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("# ") {
                let (k, v) = rest.split_once(": ").ok_or_else(|| bad("metadata needs `key: value`"))?;
                file.meta.push((k.to_string(), v.to_string()));
                continue;
            }
            let mut tokens = line.split_whitespace();
            let first = tokens.next().expect("non-empty line");
            let parse = |s: &str| s.parse::<f64>().map_err(|_| bad(&format!("`{s}` is not a number")));
            if first.parse::<f64>().is_err() {
                if !file.rows.is_empty() {
                    return Err(bad("axis line after the value block"));
                }
                let values = tokens.map(parse).collect::<Result<Vec<_>, _>>()?;
                file.axes.push((first.to_string(), values));
            } else {
                let row = std::iter::once(first).chain(tokens).map(parse).collect::<Result<Vec<_>, _>>()?;
                file.rows.push(row);
            }
        }
        Ok(file)
    }
}

/// Uniform spacing of an axis written by [`MatrixFile::render`].
pub fn axis_step(axis: &[f64]) -> f64 {
    (axis[axis.len() - 1] - axis[0]) / (axis.len() - 1) as f64
}

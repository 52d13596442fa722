//! The report every subcommand produces, and its three renderings.

use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    /// The relation being verified, written out.
    pub tag: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub seed: u64,
    pub config: Value,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub data: Value,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, seed: u64, config: Value) -> Self {
        Self {
            command,
            seed,
            config,
            pass: true,
            checks: Vec::new(),
            table: None,
            data: Value::Object(Default::default()),
            notes: Vec::new(),
        }
    }

    /// Records `residual <= tolerance`. A NaN residual fails.
    pub fn check(&mut self, tag: impl Into<String>, residual: f64, tolerance: f64) {
        let pass = residual <= tolerance;
        self.pass &= pass;
        self.checks.push(Check { tag: tag.into(), residual, tolerance, pass });
    }

    /// An exact check: `mismatches` must be zero.
    pub fn exact(&mut self, tag: impl Into<String>, mismatches: usize) {
        self.check(tag, mismatches as f64, 0.0);
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report data serializes");
        self.data.as_object_mut().expect("data is an object").insert(key.to_string(), v);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => self.write_csv(out),
            Format::Text => out.write_all(self.to_text().as_bytes()),
        }
    }

    /// The table when there is one, otherwise the checks.
    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        match &self.table {
            Some(t) => {
                w.write_record(&t.columns)?;
                for row in &t.rows {
                    w.write_record(row.iter().map(cell))?;
                }
            }
            None => {
                w.write_record(["tag", "residual", "tolerance", "pass"])?;
                for c in &self.checks {
                    w.write_record([c.tag.clone(), num(c.residual), num(c.tolerance), c.pass.to_string()])?;
                }
            }
        }
        w.flush()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} (seed {}): {}", self.command, self.seed, if self.pass { "PASS" } else { "FAIL" });
        for c in &self.checks {
            let _ = writeln!(
                s,
                "  [{}] {}: {:.3e} (tol {:.0e})",
                if c.pass { "PASS" } else { "FAIL" },
                c.tag,
                c.residual,
                c.tolerance
            );
        }
        if let Some(t) = &self.table {
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|i| cells.iter().map(|r| r[i].len()).chain([t.columns[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |row: &[String]| {
                row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
            };
            let _ = writeln!(s, "  {}", line(&t.columns));
            for r in &cells {
                let _ = writeln!(s, "  {}", line(r));
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}

/// Shortest round-trip form, in exponent notation for very small or large values.
fn num(x: f64) -> String {
    let a = x.abs();
    if x.is_finite() && a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => num(x),
            _ => n.to_string(),
        },
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

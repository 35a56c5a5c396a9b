//! Structured run reports, rendered as TOML so they diff cleanly and parse
//! with any TOML reader.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Float(v) => fmt_float(*v),
            Value::Bool(v) => v.to_string(),
            Value::Text(s) => quote(s),
        }
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

/// Shortest round-trip decimal, spelled the way TOML expects.
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:?}")
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub parameters: Vec<(String, Value)>,
    pub passed: bool,
    pub outcome: Vec<(String, Value)>,
    pub tables: Vec<Table>,
    pub wall_time: f64,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            parameters: Vec::new(),
            passed: true,
            outcome: Vec::new(),
            tables: Vec::new(),
            wall_time: 0.0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.push((key.to_string(), value.into()));
    }

    /// Sets an outcome entry, replacing an earlier value under the same key.
    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        let value = value.into();
        match self.outcome.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.outcome.push((key.to_string(), value)),
        }
    }

    /// Records a named check; the report fails if any check fails.
    pub fn check(&mut self, key: &str, ok: bool) {
        self.passed &= ok;
        self.set(key, if ok { "pass" } else { "fail" });
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.outcome.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// The full report. `wall_time` is the only line that differs between
    /// identical invocations.
    pub fn render(&self) -> String {
        format!("wall_time = {}\n{}", fmt_float(self.wall_time), self.render_deterministic())
    }

    /// The report without `wall_time`.
    pub fn render_deterministic(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command = {}", quote(&self.command));
        let _ = writeln!(s, "status = {}", quote(if self.passed { "pass" } else { "fail" }));
        s.push_str("\n[parameters]\n");
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "{k} = {}", v.render());
        }
        s.push_str("\n[outcome]\n");
        for (k, v) in &self.outcome {
            let _ = writeln!(s, "{k} = {}", v.render());
        }
        for t in &self.tables {
            let _ = writeln!(s, "\n[tables.{}]", t.name);
            let cols: Vec<String> = t.columns.iter().map(|c| quote(c)).collect();
            let _ = writeln!(s, "columns = [{}]", cols.join(", "));
            s.push_str("rows = [\n");
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(Value::render).collect();
                let _ = writeln!(s, "  [{}],", cells.join(", "));
            }
            s.push_str("]\n");
        }
        s
    }
}

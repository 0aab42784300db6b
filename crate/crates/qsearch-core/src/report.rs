// Copyright 2026 The qsearch Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Bit-stable experiment reports.
//!
//! Serialization is hand-rolled so identical `(command, seed, version)`
//! always produce identical bytes: keys keep insertion order, floats print
//! with 17 significant digits in exponent form, lines end with `\n`.

/// A single report value.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Bool(bool),
    U64(u64),
    F64(f64),
    Str(String),
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}
impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::U64(v)
    }
}
impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::U64(v as u64)
    }
}
impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::F64(v)
    }
}
impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Str(v.to_string())
    }
}
impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Str(v)
    }
}

/// Plot-ready rows: one CSV line per row.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

/// A seeded, reproducible experiment record.
#[derive(Clone, Debug, Default)]
pub struct Report {
    /// Subcommand name.
    pub command: String,
    /// The full argument echo.
    pub argv: String,
    pub seed: Option<u64>,
    pub params: Vec<(String, Value)>,
    pub results: Vec<(String, Value)>,
    /// Named pass/fail checks; the run fails (exit 1) if any is false.
    pub verdicts: Vec<(String, bool)>,
    pub warnings: Vec<String>,
    pub table: Option<Table>,
}

impl Report {
    pub fn new(command: &str, argv: String, seed: Option<u64>) -> Self {
        Report {
            command: command.to_string(),
            argv,
            seed,
            ..Report::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.push((key.to_string(), value.into()));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.push((key.to_string(), value.into()));
        self
    }

    pub fn verdict(&mut self, key: &str, pass: bool) -> &mut Self {
        self.verdicts.push((key.to_string(), pass));
        self
    }

    /// All verdicts pass.
    pub fn ok(&self) -> bool {
        self.verdicts.iter().all(|(_, pass)| *pass)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"tool\": {},\n", json_str("qsearch")));
        out.push_str(&format!(
            "  \"version\": {},\n",
            json_str(env!("CARGO_PKG_VERSION"))
        ));
        out.push_str(&format!("  \"command\": {},\n", json_str(&self.command)));
        out.push_str(&format!("  \"argv\": {},\n", json_str(&self.argv)));
        match self.seed {
            Some(seed) => out.push_str(&format!("  \"seed\": {seed},\n")),
            None => out.push_str("  \"seed\": null,\n"),
        }
        out.push_str(&json_object("params", &self.params));
        out.push_str(&json_object("results", &self.results));
        let verdicts: Vec<(String, Value)> = self
            .verdicts
            .iter()
            .map(|(k, v)| (k.clone(), Value::Bool(*v)))
            .collect();
        out.push_str(&json_object("verdicts", &verdicts));
        out.push_str("  \"warnings\": [");
        for (i, w) in self.warnings.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&json_str(w));
        }
        out.push_str("],\n");
        if let Some(table) = &self.table {
            out.push_str("  \"table\": {\n    \"columns\": [");
            for (i, c) in table.columns.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&json_str(c));
            }
            out.push_str("],\n    \"rows\": [\n");
            for (i, row) in table.rows.iter().enumerate() {
                out.push_str("      [");
                for (j, v) in row.iter().enumerate() {
                    if j > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&json_value(v));
                }
                out.push(']');
                if i + 1 < table.rows.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str("    ]\n  },\n");
        }
        out.push_str(&format!("  \"ok\": {}\n", self.ok()));
        out.push_str("}\n");
        out
    }

    /// CSV form: the table when present (header plus one line per row),
    /// otherwise a single header/record pair over params, results and
    /// verdicts.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(table) = &self.table {
            out.push_str(&table.columns.iter().map(|c| csv_str(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
            for row in &table.rows {
                out.push_str(&row.iter().map(csv_value).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
            return out;
        }
        let mut keys = vec!["command".to_string(), "seed".to_string()];
        let mut vals = vec![
            csv_str(&self.command),
            self.seed.map_or(String::new(), |s| s.to_string()),
        ];
        for (k, v) in self.params.iter().chain(&self.results) {
            keys.push(k.clone());
            vals.push(csv_value(v));
        }
        for (k, pass) in &self.verdicts {
            keys.push(k.clone());
            vals.push(pass.to_string());
        }
        keys.push("ok".to_string());
        vals.push(self.ok().to_string());
        out.push_str(&keys.join(","));
        out.push('\n');
        out.push_str(&vals.join(","));
        out.push('\n');
        out
    }
}

/// 17 significant digits in exponent form; parses back to the same f64.
/// Non-finite values become `null` (they never appear in healthy reports).
pub fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    // normalize -0.0 so byte-stability does not depend on its sign
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn json_value(v: &Value) -> String {
    match v {
        Value::Bool(b) => b.to_string(),
        Value::U64(u) => u.to_string(),
        Value::F64(f) => fmt_float(*f),
        Value::Str(s) => json_str(s),
    }
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::Bool(b) => b.to_string(),
        Value::U64(u) => u.to_string(),
        Value::F64(f) => fmt_float(*f),
        Value::Str(s) => csv_str(s),
    }
}

fn json_object(key: &str, entries: &[(String, Value)]) -> String {
    let mut out = format!("  \"{key}\": {{");
    for (i, (k, v)) in entries.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("\n    {}: {}", json_str(k), json_value(v)));
    }
    if !entries.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("},\n");
    out
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn csv_str(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

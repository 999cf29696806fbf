//! Command results and their markdown, JSON and CSV renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Check {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check { name: name.into(), pass: expected == actual, expected, actual }
    }
}

/// One codimension-2 stratum. Numbers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub class_id: String,
    pub r: String,
    pub u: String,
    pub count: String,
    pub d1p: String,
    pub hp: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Value {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub budget: String,
    /// Wall-clock time; only filled in when timings are requested, so that
    /// output stays reproducible by default.
    pub seconds: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub group: String,
    pub checks: Vec<Check>,
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub meta: Meta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Md,
    Json,
    Csv,
}

impl Report {
    pub fn new(group: impl Into<String>, budget: u64) -> Report {
        Report {
            group: group.into(),
            checks: Vec::new(),
            rows: Vec::new(),
            values: Vec::new(),
            notes: Vec::new(),
            meta: Meta { version: crate::cli::VERSION.to_string(), budget: budget.to_string(), seconds: None },
        }
    }

    pub fn value(&mut self, name: impl Into<String>, value: impl ToString) {
        self.values.push(Value { name: name.into(), value: value.to_string() });
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// True iff every check passes.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Md => self.to_markdown(),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# {}\n", self.group);
        let esc = |x: &str| x.replace('|', "\\|");
        if !self.values.is_empty() {
            s.push_str("\n| quantity | value |\n|---|---|\n");
            for v in &self.values {
                let _ = writeln!(s, "| {} | {} |", esc(&v.name), esc(&v.value));
            }
        }
        if !self.checks.is_empty() {
            s.push_str("\n| check | expected | actual | result |\n|---|---|---|---|\n");
            for c in &self.checks {
                let mark = if c.pass { "pass" } else { "**FAIL**" };
                let _ = writeln!(s, "| {} | {} | {} | {mark} |", esc(&c.name), esc(&c.expected), esc(&c.actual));
            }
        }
        if !self.rows.is_empty() {
            s.push_str("\n| class | r | u | count | d1' | h' |\n|---|---|---|---|---|---|\n");
            for r in &self.rows {
                let _ = writeln!(s, "| {} | {} | {} | {} | {} | {} |", r.class_id, r.r, r.u, r.count, r.d1p, r.hp);
            }
        }
        if !self.notes.is_empty() {
            s.push('\n');
            for n in &self.notes {
                let _ = writeln!(s, "- {n}");
            }
        }
        if !self.checks.is_empty() {
            let failed = self.failures().count();
            if failed == 0 {
                let _ = writeln!(s, "\nall {} checks pass", self.checks.len());
            } else {
                let _ = writeln!(s, "\n{failed} of {} checks FAIL", self.checks.len());
            }
        }
        let _ = write!(s, "\nversion {}, budget {}", self.meta.version, self.meta.budget);
        if let Some(sec) = &self.meta.seconds {
            let _ = write!(s, ", {sec} s");
        }
        s.push('\n');
        s
    }

    /// Non-empty sections as CSV blocks separated by blank lines.
    pub fn to_csv(&self) -> String {
        fn block<const N: usize>(header: [&str; N], records: impl Iterator<Item = [String; N]>) -> String {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header).expect("in-memory write");
            for r in records {
                w.write_record(&r).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
        let mut blocks = Vec::new();
        if !self.values.is_empty() {
            blocks.push(block(["name", "value"], self.values.iter().map(|v| [v.name.clone(), v.value.clone()])));
        }
        if !self.checks.is_empty() {
            blocks.push(block(
                ["check", "expected", "actual", "pass"],
                self.checks.iter().map(|c| [c.name.clone(), c.expected.clone(), c.actual.clone(), c.pass.to_string()]),
            ));
        }
        if !self.rows.is_empty() {
            blocks.push(block(
                ["class_id", "r", "u", "count", "d1p", "hp"],
                self.rows.iter().map(|r| [r.class_id.clone(), r.r.clone(), r.u.clone(), r.count.clone(), r.d1p.clone(), r.hp.clone()]),
            ));
        }
        blocks.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("A3", 10);
        r.value("h", 4);
        r.check(Check::new("|NC| = Cat", 14, 14));
        r.check(Check::new("table", "[(2,3), (3,6)]", "[(2,3), (3,6)]"));
        r.rows.push(Row {
            class_id: "ab".into(),
            r: "2".into(),
            u: "3".into(),
            count: "4".into(),
            d1p: "2".into(),
            hp: "2".into(),
        });
        r
    }

    #[test]
    fn pass_iff_all_checks_pass() {
        let mut r = sample();
        assert!(r.pass());
        r.check(Check::new("x", 1, 2));
        assert!(!r.pass());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn json_round_trip_and_schema() {
        let r = sample();
        let json = r.to_json();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v["meta"]["seconds"].is_null());
        assert_eq!(v["rows"][0]["count"], "4");
        assert_eq!(v["checks"][0]["pass"], true);
    }

    #[test]
    fn csv_quotes_commas() {
        let csv = sample().to_csv();
        assert!(csv.contains("\"[(2,3), (3,6)]\""));
        assert_eq!(csv.split("\n\n").count(), 3);
    }

    #[test]
    fn markdown_marks_failures() {
        let mut r = sample();
        r.check(Check::new("bad", 1, 2));
        let md = r.to_markdown();
        assert!(md.contains("**FAIL**"));
        assert!(md.contains("1 of 3 checks FAIL"));
    }
}

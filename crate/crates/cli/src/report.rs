use std::collections::BTreeMap;
use std::fmt::Write as _;

use resolvitor::complexes::{BettiEntry, BettiTable, LocalLinearProfile};
use resolvitor::gradedla::HilbertFunction;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Info => "info",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<[i64; 2]>,
    pub details: Value,
}

impl Check {
    pub fn new(name: &str, status: Status, summary: impl Into<String>, details: Value) -> Self {
        Check {
            name: name.to_string(),
            status,
            summary: summary.into(),
            window: None,
            details,
        }
    }

    pub fn verdict(name: &str, ok: bool, summary: impl Into<String>, details: Value) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Self::new(name, status, summary, details)
    }

    pub fn on(mut self, window: (i64, i64)) -> Self {
        self.window = Some([window.0, window.1]);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbertReport {
    pub values: BTreeMap<i64, usize>,
    pub total: usize,
}

impl From<&HilbertFunction> for HilbertReport {
    fn from(h: &HilbertFunction) -> Self {
        HilbertReport {
            values: h.trimmed().values().clone(),
            total: h.total(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<BettiEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<LocalLinearProfile>,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
    /// Extra text blocks (matrices, tables) for the human-readable form.
    #[serde(skip)]
    pub blocks: Vec<(String, String)>,
    #[serde(skip)]
    betti_table: Option<BettiTable>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            betti: None,
            hilbert: None,
            gap: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timings: None,
            blocks: Vec::new(),
            betti_table: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn block(&mut self, title: &str, body: String) {
        self.blocks.push((title.to_string(), body));
    }

    pub fn set_betti(&mut self, b: &BettiTable) {
        self.betti = Some(b.to_json());
        self.betti_table = Some(b.clone());
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "resolvitor {} ({})", self.command, self.version);
        if !self.params.is_empty() {
            let params: Vec<String> = self
                .params
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}={s}"),
                    other => format!("{k}={other}"),
                })
                .collect();
            let _ = writeln!(out, "params: {}", params.join(" "));
        }
        out.push('\n');
        for c in &self.checks {
            let window = c
                .window
                .map(|[lo, hi]| format!(" [t = {lo}..{hi}]"))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "[{}] {}{}: {}",
                c.status.tag(),
                c.name,
                window,
                c.summary
            );
        }
        for (title, body) in &self.blocks {
            let _ = write!(out, "\n{title}\n{body}");
            if !body.ends_with('\n') {
                out.push('\n');
            }
        }
        if let Some(b) = &self.betti_table {
            let _ = write!(out, "\nBetti table\n{}", b.to_grid());
        }
        if let Some(h) = &self.hilbert {
            let values: Vec<String> = h.values.iter().map(|(t, d)| format!("{t}:{d}")).collect();
            let _ = writeln!(
                out,
                "\nHilbert function {{{}}}, total {}",
                values.join(", "),
                h.total
            );
        }
        if let Some(g) = &self.gap {
            let _ = writeln!(
                out,
                "\ngap = {} (d = {}, e = {}, s = {})",
                g.gap, g.d, g.e, g.s
            );
        }
        if let Some(t) = &self.timings {
            for (k, v) in t {
                let _ = writeln!(out, "time {k}: {v:.3} s");
            }
        }
        let _ = writeln!(
            out,
            "\n{}: {} passed, {} failed, {} info",
            if self.passed() { "OK" } else { "FAILED" },
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Info)
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_has_empty_checks() {
        let r = Report::new("x");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"], Value::Array(vec![]));
        assert!(v.get("timings").is_none());
        assert!(r.passed());
    }

    #[test]
    fn hilbert_keys_keep_numeric_order() {
        let h = HilbertFunction::from_values([(2, 1), (10, 3), (9, 0)]);
        let mut r = Report::new("x");
        r.hilbert = Some((&h).into());
        let s = r.to_json();
        assert!(s.find("\"2\"").unwrap() < s.find("\"10\"").unwrap());
    }
}

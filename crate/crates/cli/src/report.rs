//! Structured result documents, rendered as human-readable text or as a
//! flat machine-readable key/value listing (`--porcelain`).
//!
//! Keys are stable; every FAIL entry carries the violated axiom, the
//! witness basis tuple (1-based, matching the file format) and both sides
//! of the identity.

use nambu_core::algebra::{Check, ViolationReport};
use nambu_core::cohomology::CohomologyDims;
use nambu_core::scalar::Scalar;

#[derive(Debug, Clone)]
pub enum Value {
    Leaf(String),
    Nested(Report),
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.entries.push((key.to_string(), Value::Leaf(value.into())));
        self
    }

    pub fn set_nested(&mut self, key: &str, nested: Report) -> &mut Self {
        self.entries.push((key.to_string(), Value::Nested(nested)));
        self
    }

    pub fn set_check(&mut self, key: &str, check: &Check) -> &mut Self {
        match check {
            Check::Pass => {
                self.set(&format!("{key}.result"), "PASS");
            }
            Check::Fail(v) => {
                self.set(&format!("{key}.result"), "FAIL");
                self.set_nested(&format!("{key}.violation"), violation_report(v));
            }
        }
        self
    }

    pub fn set_dims(&mut self, dims: &CohomologyDims) -> &mut Self {
        self.set("dim_Z2", dims.dim_z2.to_string());
        self.set("dim_B2", dims.dim_b2.to_string());
        self.set("dim_H2", dims.dim_h2.to_string());
        self
    }

    /// Human-readable rendering: `key = value` lines, nested blocks
    /// indented under `key:`.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_text_into(&mut out, 0);
        out
    }

    fn render_text_into(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        for (key, value) in &self.entries {
            match value {
                Value::Leaf(v) => out.push_str(&format!("{pad}{key} = {v}\n")),
                Value::Nested(r) => {
                    out.push_str(&format!("{pad}{key}:\n"));
                    r.render_text_into(out, indent + 1);
                }
            }
        }
    }

    /// Machine-readable rendering: one `dotted.path = value` line per leaf.
    pub fn render_porcelain(&self) -> String {
        let mut out = String::new();
        self.render_porcelain_into(&mut out, "");
        out
    }

    fn render_porcelain_into(&self, out: &mut String, prefix: &str) {
        for (key, value) in &self.entries {
            let path = if prefix.is_empty() {
                key.clone()
            } else {
                format!("{prefix}.{key}")
            };
            match value {
                Value::Leaf(v) => out.push_str(&format!("{path} = {v}\n")),
                Value::Nested(r) => r.render_porcelain_into(out, &path),
            }
        }
    }
}

fn scalars(v: &[Scalar]) -> String {
    let body: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", body.join(", "))
}

/// A violation as a nested report block; witness indices are 1-based.
pub fn violation_report(v: &ViolationReport) -> Report {
    let mut r = Report::new();
    r.set("axiom", v.axiom.clone());
    let witness: Vec<String> = v.witness.iter().map(|i| (i + 1).to_string()).collect();
    r.set("witness", format!("({})", witness.join(", ")));
    r.set("left", scalars(&v.left));
    r.set("right", scalars(&v.right));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use nambu_core::scalar::Field;

    #[test]
    fn renders_both_formats() {
        let mut r = Report::new();
        r.set("command", "check algebra");
        let mut inner = Report::new();
        inner.set("dim", "4");
        r.set_nested("input", inner);
        let text = r.render_text();
        assert!(text.contains("command = check algebra"));
        assert!(text.contains("input:\n  dim = 4"));
        let flat = r.render_porcelain();
        assert!(flat.contains("input.dim = 4"));
    }

    #[test]
    fn fail_carries_witness_and_sides() {
        let v = ViolationReport {
            axiom: "associativity".into(),
            witness: vec![0, 0, 1],
            left: vec![Field::Rational.zero()],
            right: vec![Field::Rational.one()],
        };
        let mut r = Report::new();
        r.set_check("check", &Check::Fail(v));
        let text = r.render_text();
        assert!(text.contains("check.result = FAIL"));
        assert!(text.contains("witness = (1, 1, 2)"));
        assert!(text.contains("left = [0]"));
        assert!(text.contains("right = [1]"));
    }
}

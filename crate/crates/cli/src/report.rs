//! The structured analysis report. JSON mode serializes it directly; text
//! mode is a pure rendering of the same document.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InstanceSummary {
    pub n: usize,
    pub t: usize,
    pub mode: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AnalysisReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceSummary>,
    pub findings: Map<String, Value>,
}

impl AnalysisReport {
    pub fn new(command: &str, instance: Option<InstanceSummary>) -> Self {
        AnalysisReport {
            command: command.to_string(),
            instance,
            findings: Map::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.findings.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Deterministic plain-text rendering, one finding per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.instance {
            Some(s) => out.push_str(&format!(
                "{}: n={} t={} mode={}\n",
                self.command, s.n, s.t, s.mode
            )),
            None => out.push_str(&format!("{}\n", self.command)),
        }
        for (key, value) in &self.findings {
            out.push_str(&format!("  {key} = {}\n", render_value(value)));
        }
        out
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(render_value).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

pub fn summary(inst: &mivote::VotingInstance) -> InstanceSummary {
    InstanceSummary {
        n: inst.n(),
        t: inst.t(),
        mode: inst.mode().to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrips_through_json() {
        let mut r = AnalysisReport::new(
            "paradox",
            Some(InstanceSummary { n: 5, t: 3, mode: "unweighted".into() }),
        );
        r.set("anscombe", true);
        r.set("witness", "(+1,+1,+1)");
        let back: AnalysisReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn text_is_ordered_and_flat() {
        let mut r = AnalysisReport::new("majority", None);
        r.set("b", 1);
        r.set("a", vec!["x", "y"]);
        assert_eq!(r.to_text(), "majority\n  b = 1\n  a = [x, y]\n");
    }
}

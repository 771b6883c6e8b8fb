//! Run reports: a header, echoed inputs, free-form body lines and one
//! PASS/FAIL line per check. Rendered as text or JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const TOOL_NAME: &str = "gallai-books";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Stated in every report so that vertex numbering is never ambiguous.
pub const VERTEX_CONVENTION: &str = "vertices are numbered from 1 in this report and from 0 in coloring files";

/// Prefix of the only line that varies between identical runs.
pub const TIMING_PREFIX: &str = "wall-time-ms:";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub vertex_convention: String,
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub body: Vec<String>,
    pub checks: Vec<CheckLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            vertex_convention: VERTEX_CONVENTION.into(),
            command: command.into(),
            passed: true,
            ..Default::default()
        }
    }

    pub fn input(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.inputs.push((key.into(), value.to_string()));
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.body.push(text.into());
        self
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> &mut Self {
        self.passed &= passed;
        self.checks.push(CheckLine { name: name.into(), passed, detail: detail.into() });
        self
    }

    pub fn set_data(&mut self, data: impl Serialize) -> &mut Self {
        self.data = Some(serde_json::to_value(data).expect("report data serializes"));
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn without_timing(&self) -> Self {
        Self { wall_time_ms: None, ..self.clone() }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {} {}", self.tool, self.version);
        let _ = writeln!(s, "# {}", self.vertex_convention);
        let _ = writeln!(s, "# command: {}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(s, "input {k} = {v}");
        }
        for line in &self.body {
            let _ = writeln!(s, "{line}");
        }
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(s, "{verdict} {}", c.name);
            } else {
                let _ = writeln!(s, "{verdict} {}: {}", c.name, c.detail);
            }
        }
        let _ = writeln!(s, "outcome: {}", if self.passed { "PASS" } else { "FAIL" });
        if let Some(ms) = self.wall_time_ms {
            let _ = writeln!(s, "{TIMING_PREFIX} {ms}");
        }
        s
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Drops timing lines so that two renderings of the same run compare equal.
pub fn strip_timing(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with(TIMING_PREFIX)).map(|l| format!("{l}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_check_flips_exit_code() {
        let mut r = RunReport::new("verify");
        r.check("a", true, "");
        assert_eq!(r.exit_code(), 0);
        r.check("b", false, "found something");
        assert_eq!(r.exit_code(), 1);
        let text = r.render_text();
        assert!(text.contains("PASS a\n"));
        assert!(text.contains("FAIL b: found something\n"));
        assert!(text.contains(VERTEX_CONVENTION));
    }

    #[test]
    fn timing_is_strippable() {
        let mut r = RunReport::new("x");
        r.wall_time_ms = Some(5);
        let mut q = r.clone();
        q.wall_time_ms = Some(9);
        assert_ne!(r.render_text(), q.render_text());
        assert_eq!(strip_timing(&r.render_text()), strip_timing(&q.render_text()));
        assert_eq!(r.without_timing().render_json(), q.without_timing().render_json());
    }
}

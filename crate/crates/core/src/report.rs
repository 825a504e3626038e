//! Structured verdicts rendered as prose plus a `key=value` block.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub passed: bool,
    lines: Vec<String>,
    fields: Vec<(String, String)>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            passed: true,
            lines: Vec::new(),
            fields: Vec::new(),
        }
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    /// Adds a machine-readable field; a later value for the same key replaces the earlier one.
    pub fn field(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        let key = key.into();
        let value = value.to_string();
        match self.fields.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = value,
            None => self.fields.push((key, value)),
        }
        self
    }

    pub fn fail(&mut self, why: impl Into<String>) -> &mut Self {
        self.passed = false;
        self.lines.push(format!("FAIL: {}", why.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn key_values(&self) -> String {
        let mut out = format!("status={}\n", if self.passed { "pass" } else { "fail" });
        for (k, v) in &self.fields {
            out.push_str(&format!("{k}={v}\n"));
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for l in &self.lines {
            writeln!(f, "  {l}")?;
        }
        writeln!(f, "--")?;
        f.write_str(&self.key_values())
    }
}

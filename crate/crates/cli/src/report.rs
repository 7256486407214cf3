//! Deterministic report documents, renderable as text or JSON with the same
//! facts and a fixed key order.

use serde_json::{Map, Value};

/// Ordered key-value sections plus a findings list.
#[derive(Debug, Default)]
pub struct Report {
    input: Vec<(String, String)>,
    sections: Vec<(String, Vec<(String, String)>)>,
    findings: Vec<String>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.input.push((key.to_string(), value.to_string()));
    }

    pub fn section(&mut self, name: &str) -> &mut Vec<(String, String)> {
        self.sections.push((name.to_string(), Vec::new()));
        &mut self.sections.last_mut().expect("just pushed").1
    }

    pub fn entry(rows: &mut Vec<(String, String)>, key: impl ToString, value: impl ToString) {
        rows.push((key.to_string(), value.to_string()));
    }

    pub fn finding(&mut self, text: impl ToString) {
        self.findings.push(text.to_string());
    }

    pub fn has_findings(&self) -> bool {
        !self.findings.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.input {
            out.push_str(&format!("input {k}={v}\n"));
        }
        for (name, rows) in &self.sections {
            out.push_str(&format!("[{name}]\n"));
            for (k, v) in rows {
                out.push_str(&format!("{k} = {v}\n"));
            }
        }
        if !self.findings.is_empty() {
            out.push_str("[findings]\n");
            for f in &self.findings {
                out.push_str(&format!("- {f}\n"));
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut root = Map::new();
        let mut input = Map::new();
        for (k, v) in &self.input {
            input.insert(k.clone(), Value::String(v.clone()));
        }
        root.insert("input".to_string(), Value::Object(input));
        let mut sections = Map::new();
        for (name, rows) in &self.sections {
            let mut section = Map::new();
            for (k, v) in rows {
                section.insert(k.clone(), Value::String(v.clone()));
            }
            sections.insert(name.clone(), Value::Object(section));
        }
        root.insert("sections".to_string(), Value::Object(sections));
        root.insert(
            "findings".to_string(),
            Value::Array(self.findings.iter().cloned().map(Value::String).collect()),
        );
        let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("string maps");
        text.push('\n');
        text
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.render_json()
        } else {
            self.render_text()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_carry_the_same_facts_in_order() {
        let mut r = Report::new();
        r.input("graph", "g.edges");
        let rows = r.section("alpha");
        Report::entry(rows, "k1", "v1");
        Report::entry(rows, "k2", "v2");
        r.finding("something observed");
        let text = r.render_text();
        assert!(text.contains("input graph=g.edges"));
        assert!(text.contains("[alpha]\nk1 = v1\nk2 = v2"));
        assert!(text.contains("- something observed"));
        let json = r.render_json();
        let k1 = json.find("\"k1\"").unwrap();
        let k2 = json.find("\"k2\"").unwrap();
        assert!(k1 < k2, "insertion order preserved");
        assert!(json.contains("something observed"));
    }
}

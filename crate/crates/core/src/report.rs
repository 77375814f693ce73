//! Machine-readable run summaries.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Yes,
    No,
    Infeasible,
    Feasible,
    Valid,
    Invalid,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub status: Status,
    /// Present exactly when the status is `yes`; 1-based ids as in instance
    /// files.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<usize>>,
    /// Omitted when timing is switched off so that reports compare byte for
    /// byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    pub seed: u64,
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl RunReport {
    pub fn new(status: Status, seed: u64) -> Self {
        RunReport {
            status,
            solution: None,
            wall_time_ms: None,
            seed,
            params: BTreeMap::new(),
            message: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialise")
    }

    /// Multi-line `key: value` rendering for terminals.
    pub fn to_text(&self) -> String {
        let status = serde_json::to_value(self.status).expect("status serialises");
        let mut out = format!("status: {}\n", status.as_str().unwrap_or("?"));
        if let Some(s) = &self.solution {
            let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("solution: {}\n", ids.join(" ")));
        }
        if let Some(ms) = self.wall_time_ms {
            out.push_str(&format!("wall_time_ms: {ms}\n"));
        }
        out.push_str(&format!("seed: {}\n", self.seed));
        for (k, v) in &self.params {
            match v {
                serde_json::Value::String(text) => out.push_str(&format!("{k}: {text}\n")),
                other => out.push_str(&format!("{k}: {other}\n")),
            }
        }
        if let Some(m) = &self.message {
            out.push_str(&format!("message: {m}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = RunReport::new(Status::Yes, 3).param("k", 2);
        r.solution = Some(vec![1, 2]);
        assert_eq!(r.to_json(), r#"{"status":"yes","solution":[1,2],"seed":3,"params":{"k":2}}"#);
        assert!(r.to_text().contains("solution: 1 2"));
        let text = RunReport::new(Status::No, 0).param("problem", "sse").to_text();
        assert!(text.contains("problem: sse\n"));
    }
}

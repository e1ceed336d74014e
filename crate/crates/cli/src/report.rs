//! Machine-readable run reports: stable JSON schema with exact string
//! payloads (rationals as "a/b", p-adic scalars in canonical text form).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub cmd: String,
    pub seed: u64,
    pub verdicts: Vec<Verdict>,
    pub values: BTreeMap<String, String>,
    /// Wall-clock duration; excluded from the determinism contract.
    pub timing_ms: u128,
}

impl Report {
    pub fn new(cmd: String, seed: u64) -> Self {
        Report {
            schema: 1,
            cmd,
            seed,
            verdicts: Vec::new(),
            values: BTreeMap::new(),
            timing_ms: 0,
        }
    }

    pub fn value(&mut self, key: &str, value: String) {
        self.values.insert(key.to_string(), value);
    }

    pub fn verdict(&mut self, name: &str, pass: bool, witness: Option<String>) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            pass,
            witness,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.values {
            if self.values.len() == 1 && k == "result" {
                out.push_str(&format!("{v}\n"));
            } else {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        for v in &self.verdicts {
            let status = if v.pass { "PASS" } else { "FAIL" };
            match &v.witness {
                Some(w) => out.push_str(&format!("{status} {} ({w})\n", v.name)),
                None => out.push_str(&format!("{status} {}\n", v.name)),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("heis mul".into(), 7);
        r.value("result", "(1,1;1)".into());
        r.verdict("example", true, None);
        r.verdict("other", false, Some("witness".into()));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn empty_verdict_list_is_serialized() {
        let r = Report::new("padic abs".into(), 0);
        assert!(r.to_json().contains("\"verdicts\": []"));
    }
}

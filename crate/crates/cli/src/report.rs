use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Params {
    pub p: u32,
    pub m: usize,
    pub modulus: Vec<u32>,
    pub form: String,
    pub a: u32,
}

/// Per-method hierarchies, in a fixed key order.
#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct Hierarchies {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wei: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma1: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<Vec<u64>>,
}

impl Hierarchies {
    pub fn entries(&self) -> Vec<(&'static str, &Vec<u64>)> {
        [("wei", &self.wei), ("lemma1", &self.lemma1), ("formula", &self.formula)]
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k, v)))
            .collect()
    }

    /// True iff every computed hierarchy is identical.
    pub fn agree(&self) -> bool {
        let e = self.entries();
        e.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RunReport {
    pub params: Params,
    pub theorem: String,
    pub n: usize,
    pub dimension: usize,
    pub hierarchy: Hierarchies,
    pub agreement: bool,
    /// Empty unless timings were requested, so that output stays
    /// byte-identical across runs.
    pub timings_ms: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Rows `p,m,form,a,theorem,r,d_r,method` with a header line.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["p", "m", "form", "a", "theorem", "r", "d_r", "method"])
            .expect("in-memory write");
        for (method, values) in self.hierarchy.entries() {
            for (i, d) in values.iter().enumerate() {
                w.write_record([
                    self.params.p.to_string(),
                    self.params.m.to_string(),
                    self.params.form.clone(),
                    self.params.a.to_string(),
                    self.theorem.clone(),
                    (i + 1).to_string(),
                    d.to_string(),
                    method.to_string(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

/// Machine-readable failure written in place of a report.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

impl ErrorReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("error serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyCell {
    pub p: u32,
    pub m: usize,
    pub form: String,
    pub a: u32,
    pub theorem: String,
    pub n: usize,
    pub dimension: usize,
    pub hierarchy: Hierarchies,
    pub agreement: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop1Check {
    pub p: u32,
    pub m: usize,
    pub form: String,
    pub comparisons: u64,
    pub mismatches: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub seed: u64,
    pub cells: Vec<VerifyCell>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub prop1: Vec<Prop1Check>,
    pub total: usize,
    pub agreeing: usize,
    pub all_agree: bool,
}

impl VerifySummary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report() -> RunReport {
        RunReport {
            params: Params {
                p: 3,
                m: 2,
                modulus: vec![1, 0, 1],
                form: "diag:1,2".into(),
                a: 1,
            },
            theorem: "T1".into(),
            n: 4,
            dimension: 2,
            hierarchy: Hierarchies {
                wei: Some(vec![2, 4]),
                lemma1: Some(vec![2, 4]),
                formula: None,
            },
            agreement: true,
            timings_ms: BTreeMap::new(),
        }
    }

    #[test]
    fn json_key_order() {
        let json = report().to_json();
        let keys = ["\"params\"", "\"theorem\"", "\"n\"", "\"dimension\"", "\"hierarchy\"", "\"agreement\"", "\"timings_ms\""];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{json}");
        assert!(!json.contains("formula"));
    }

    #[test]
    fn csv_quotes_forms_with_commas() {
        let csv = report().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "p,m,form,a,theorem,r,d_r,method");
        assert_eq!(lines[1], "3,2,\"diag:1,2\",1,T1,1,2,wei");
        assert_eq!(lines.len(), 5);
    }

    #[test]
    fn agreement() {
        let mut h = report().hierarchy;
        assert!(h.agree());
        h.formula = Some(vec![2, 5]);
        assert!(!h.agree());
    }
}

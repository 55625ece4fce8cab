//! Machine-readable experiment reports.

use std::collections::BTreeMap;
use std::time::Instant;

use ohtsuki::algebra::{format_rational, HalfLaurent, Rational, TruncatedSeries};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
    pub wall_time_secs: f64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl ExperimentReport {
    pub fn new(experiment: &str) -> Self {
        Self {
            experiment: experiment.to_string(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            verdicts: Vec::new(),
            wall_time_secs: 0.0,
            started: Some(Instant::now()),
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn output(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), v.into());
        self
    }

    /// Verdict from exact equality of two rationals.
    pub fn equal(&mut self, name: &str, lhs: &Rational, rhs: &Rational) -> &mut Self {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            pass: lhs == rhs,
            lhs: Some(format_rational(lhs)),
            rhs: Some(format_rational(rhs)),
        });
        self
    }

    pub fn holds(&mut self, name: &str, pass: bool) -> &mut Self {
        self.verdicts.push(Verdict { name: name.to_string(), pass, lhs: None, rhs: None });
        self
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn finish(&mut self) {
        if let Some(t) = self.started.take() {
            self.wall_time_secs = t.elapsed().as_secs_f64();
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `section,key,value` rows; verdict rows carry `PASS`/`FAIL`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,key,value\n");
        out += &format!("experiment,name,{}\n", self.experiment);
        for (k, v) in &self.inputs {
            out += &format!("input,{k},{}\n", csv_cell(v));
        }
        for (k, v) in &self.outputs {
            out += &format!("output,{k},{}\n", csv_cell(v));
        }
        for v in &self.verdicts {
            out += &format!("verdict,{},{}\n", v.name, if v.pass { "PASS" } else { "FAIL" });
        }
        out += &format!("timing,wall_time_secs,{:.3}\n", self.wall_time_secs);
        out
    }
}

fn csv_cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

/// Exponent of `q` (`"k"` or `"k/2"`) to coefficient.
pub fn laurent(p: &HalfLaurent) -> Value {
    let mut m = serde_json::Map::new();
    for (d, c) in p.terms() {
        let e = if d % 2 == 0 { (d / 2).to_string() } else { format!("{d}/2") };
        m.insert(e, rational(c));
    }
    Value::Object(m)
}

/// Power of the series variable to coefficient, zero terms omitted.
pub fn series(s: &TruncatedSeries) -> Value {
    let mut m = serde_json::Map::new();
    for (k, c) in s.coeffs().iter().enumerate() {
        if !num_traits::Zero::is_zero(c) {
            m.insert(k.to_string(), rational(c));
        }
    }
    json!({ "order": s.coeffs().len() - 1, "terms": m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ohtsuki::algebra::rat;

    #[test]
    fn verdicts_and_csv() {
        let mut r = ExperimentReport::new("x");
        r.input("link", "a,b").output("v", rational(&rat(3)));
        r.equal("same", &rat(1), &rat(1));
        assert!(r.all_pass());
        r.equal("different", &rat(1), &rat(2));
        assert!(!r.all_pass());
        r.finish();
        let csv = r.to_csv();
        assert!(csv.contains("input,link,\"a,b\""));
        assert!(csv.contains("verdict,different,FAIL"));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["verdicts"][1]["rhs"], "2");
    }
}

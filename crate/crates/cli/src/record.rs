//! Machine-readable output: the JSON report and its CSV flattening.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use gwloc::algebra::Rational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational that serializes as the string `"p/q"` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactValue(pub Rational);

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for ExactValue {
    type Err = String;

    /// Accepts only the canonical form written by `Display`.
    fn from_str(s: &str) -> Result<Self, String> {
        if !s.contains('/') || s.contains('+') || s.len() > 100_000 {
            return Err(format!("not an exact value: {s:?}"));
        }
        let r = Rational::from_str(s).map_err(|_| format!("not an exact value: {s:?}"))?;
        let v = ExactValue(r);
        if v.to_string() != s {
            return Err(format!("non-canonical exact value: {s:?}"));
        }
        Ok(v)
    }
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        ExactValue(r)
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub n: u32,
    /// `[d]`, or `[d1, d2]` for bidegrees.
    pub degree: Vec<u32>,
    pub m: usize,
    pub insertions: Vec<String>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<String>,
    pub format: String,
    pub verbosity: u8,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultRecord {
    pub label: String,
    #[serde(default)]
    pub values: BTreeMap<String, ExactValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_classes: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ResultRecord {
    pub fn new(label: impl Into<String>) -> Self {
        ResultRecord {
            label: label.into(),
            ..Default::default()
        }
    }

    pub fn value(mut self, name: &str, v: Rational) -> Self {
        self.values.insert(name.to_string(), ExactValue(v));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub seed: u64,
    pub version: String,
    /// Wall time, only when requested; omitted output stays byte-identical.
    pub runtime_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub config: JobConfig,
    pub results: Vec<ResultRecord>,
    pub checks: Vec<Check>,
    pub meta: Meta,
}

pub fn parse_result_record(s: &str) -> Result<ResultRecord, serde_json::Error> {
    serde_json::from_str(s)
}

pub fn parse_report(s: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(s)
}

pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

/// One row per `(record, value)`; records without values get one row.
pub fn to_csv(report: &Report) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "label",
        "quantity",
        "value",
        "graph_count",
        "weyl_classes",
        "cache",
        "pass",
        "detail",
    ])?;
    let opt = |x: Option<String>| x.unwrap_or_default();
    for r in &report.results {
        let rest = [
            opt(r.graph_count.map(|x| x.to_string())),
            opt(r.weyl_classes.map(|x| x.to_string())),
            opt(r.cache.clone()),
            opt(r.pass.map(|x| x.to_string())),
            opt(r.detail.clone()),
        ];
        if r.values.is_empty() {
            w.write_record([r.label.clone(), String::new(), String::new()].iter().chain(&rest))?;
        }
        for (k, v) in &r.values {
            w.write_record([r.label.clone(), k.clone(), v.to_string()].iter().chain(&rest))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use gwloc::algebra::rational;

    #[test]
    fn exact_values() {
        assert_eq!(ExactValue(rational(-6, 4)).to_string(), "-3/2");
        assert_eq!(ExactValue(rational(5, 1)).to_string(), "5/1");
        assert_eq!("-3/2".parse::<ExactValue>().unwrap(), ExactValue(rational(-3, 2)));
        for bad in ["3", "6/4", "1/-2", "+1/2", "1/0", "0/2", "01/2", " 1/2", "1.5/1"] {
            assert!(bad.parse::<ExactValue>().is_err(), "{bad}");
        }
    }

    #[test]
    fn record_round_trip() {
        let r = ResultRecord {
            label: "x".into(),
            graph_count: Some(12),
            pass: Some(true),
            ..Default::default()
        }
        .value("gr", rational(7, 3));
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"label":"x","values":{"gr":"7/3"},"graph_count":12,"pass":true}"#);
        assert_eq!(parse_result_record(&s).unwrap(), r);
        assert!(parse_result_record(r#"{"label":"x","bogus":1}"#).is_err());
    }
}

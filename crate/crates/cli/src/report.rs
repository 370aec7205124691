//! Experiment reports and their CSV / JSON serialisation.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;

/// A single verified inequality or identity.
///
/// `asserted` checks decide the exit status; the rest are measurements whose
/// outcome is reported but never fatal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub asserted: bool,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn asserted(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), asserted: true, passed, detail: detail.into() }
    }

    pub fn observed(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { asserted: false, ..Self::asserted(name, passed, detail) }
    }
}

/// Echo of every setting an experiment ran with.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flatness_floor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pv_nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lift: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mesh: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angles: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub radii: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport<R, S = ()> {
    pub experiment: &'static str,
    pub parameters: Parameters,
    pub summary: S,
    pub records: Vec<R>,
    pub checks: Vec<Check>,
    pub artifacts: Vec<String>,
}

impl<R: Serialize, S: Serialize> ExperimentReport<R, S> {
    pub fn new(experiment: &'static str, parameters: Parameters, summary: S) -> Self {
        Self { experiment, parameters, summary, records: Vec::new(), checks: Vec::new(), artifacts: Vec::new() }
    }

    /// True when no asserted check failed.
    pub fn succeeded(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.asserted)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            w.serialize(r)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        out.write_all(b"\n").map_err(serde_json::Error::io)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        n: usize,
        value: f64,
    }

    #[test]
    fn csv_has_header_and_rows() {
        let mut r = ExperimentReport::<Row>::new("t", Parameters::default(), ());
        r.records = vec![Row { n: 0, value: 0.5 }, Row { n: 1, value: 0.25 }];
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,value\n0,0.5\n1,0.25\n");
    }

    #[test]
    fn only_asserted_failures_are_fatal() {
        let mut r = ExperimentReport::<Row>::new("t", Parameters::default(), ());
        r.checks.push(Check::observed("trend", false, ""));
        assert!(r.succeeded());
        r.checks.push(Check::asserted("bound", false, ""));
        assert!(!r.succeeded());
    }

    #[test]
    fn json_skips_unset_parameters() {
        let p = Parameters { nodes: Some(1024), ..Parameters::default() };
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"nodes":1024}"#);
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::svg::render_svg;

pub const CSV_HEADER: &str = "experiment,series,x,y,param_hash,provenance";

/// One data point, traceable to the generator/measure pair named by
/// `series` and to the digit source named by `provenance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub series: String,
    pub x: f64,
    pub y: f64,
    pub provenance: String,
}

/// A measured value set against a published claim it does not match (or
/// that could not be checked at desk scale).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub id: String,
    pub claim: String,
    pub measured: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub param_hash: String,
    pub rows: Vec<Row>,
    pub summary: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub findings: Vec<Finding>,
}

impl ExperimentReport {
    pub(crate) fn new(experiment: &str, parameters: BTreeMap<String, String>, seed: Option<u64>) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(experiment.as_bytes());
        for (k, v) in &parameters {
            hasher.update(format!(";{k}={v}").as_bytes());
        }
        if let Some(s) = seed {
            hasher.update(format!(";seed={s}").as_bytes());
        }
        let param_hash = hex::encode(&hasher.finalize()[..8]);
        ExperimentReport {
            experiment: experiment.to_string(),
            parameters,
            seed,
            param_hash,
            rows: Vec::new(),
            summary: BTreeMap::new(),
            checks: Vec::new(),
            findings: Vec::new(),
        }
    }

    pub(crate) fn row(&mut self, series: impl Into<String>, x: f64, y: f64, provenance: &str) {
        self.rows.push(Row {
            series: series.into(),
            x,
            y,
            provenance: provenance.to_string(),
        });
    }

    pub(crate) fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub(crate) fn finding(&mut self, id: &str, claim: &str, measured: f64, note: impl Into<String>) {
        self.findings.push(Finding {
            id: id.to_string(),
            claim: claim.to_string(),
            measured,
            note: note.into(),
        });
    }

    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn series(&self, name: &str) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.series == name)
            .map(|r| (r.x, r.y))
            .collect()
    }

    /// Data rows followed by one `finding:<id>` row per finding.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        let mut line = |series: &str, x: f64, y: f64, provenance: &str| {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_field(&self.experiment),
                csv_field(series),
                x,
                y,
                self.param_hash,
                csv_field(provenance)
            ));
        };
        for r in &self.rows {
            line(&r.series, r.x, r.y, &r.provenance);
        }
        for f in &self.findings {
            line(&format!("finding:{}", f.id), 0.0, f.measured, "finding");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Writes `<experiment>.csv`, `<experiment>.json` and optionally
    /// `<experiment>.svg` into `dir`.
    pub fn write_to(&self, dir: &Path, svg: bool) -> std::io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let mut put = |ext: &str, body: String| -> std::io::Result<()> {
            let path = dir.join(format!("{}.{ext}", self.experiment));
            fs::write(&path, body)?;
            written.push(path);
            Ok(())
        };
        put("csv", self.to_csv())?;
        put("json", self.to_json())?;
        if svg {
            put("svg", render_svg(self))?;
        }
        Ok(written)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout_and_quoting() {
        let mut params = BTreeMap::new();
        params.insert("n".to_string(), "5".to_string());
        let mut r = ExperimentReport::new("demo", params, Some(3));
        r.row("a", 1.0, 0.5, "file:x,y.txt");
        r.finding("claim", "x -> 0", 0.25, "plateau");
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], format!("demo,a,1,0.5,{},\"file:x,y.txt\"", r.param_hash));
        assert_eq!(lines[2], format!("demo,finding:claim,0,0.25,{},finding", r.param_hash));
        assert_eq!(r.param_hash.len(), 16);
    }

    #[test]
    fn hash_tracks_parameters_and_seed() {
        let p = |v: &str| BTreeMap::from([("n".to_string(), v.to_string())]);
        let a = ExperimentReport::new("e", p("1"), Some(1)).param_hash;
        assert_eq!(a, ExperimentReport::new("e", p("1"), Some(1)).param_hash);
        assert_ne!(a, ExperimentReport::new("e", p("2"), Some(1)).param_hash);
        assert_ne!(a, ExperimentReport::new("e", p("1"), Some(2)).param_hash);
    }
}

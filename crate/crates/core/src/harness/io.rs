//! Instance files and report envelopes.
//!
//! An instance file is
//! `{"dimension": n, "sites": [{"id": "a", "coords": ["1", "-2/3"]}], "S": ["a"]}`
//! with coordinates as strings so rationals survive the round trip. Reports
//! are wrapped as `{"schema": 1, "kind": ..., "report": ...}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cell::CellSpec;
use crate::error::{Error, Result};
use crate::exact::{Point, Site, SiteSet};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteEntry {
    pub id: String,
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dimension: usize,
    pub sites: Vec<SiteEntry>,
    #[serde(rename = "S", default)]
    pub s: Vec<String>,
}

impl InstanceFile {
    pub fn from_sites(sites: &SiteSet, s: &[String]) -> Self {
        InstanceFile {
            dimension: sites.ambient_dim(),
            sites: sites
                .sites()
                .iter()
                .map(|site| SiteEntry {
                    id: site.id.clone(),
                    coords: site.point.to_strings(),
                })
                .collect(),
            s: s.to_vec(),
        }
    }

    pub fn from_spec(spec: &CellSpec) -> Self {
        Self::from_sites(spec.sites(), spec.s_ids())
    }

    pub fn site_set(&self, max_dim: usize) -> Result<SiteSet> {
        let sites = self
            .sites
            .iter()
            .map(|e| Ok(Site::new(e.id.clone(), Point::parse(&e.coords)?)))
            .collect::<Result<Vec<_>>>()?;
        SiteSet::with_max_dim(self.dimension, sites, max_dim)
    }

    pub fn spec(&self, max_dim: usize) -> Result<CellSpec> {
        CellSpec::new(self.site_set(max_dim)?, self.s.iter().cloned())
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files always serialize")
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    kind: &'a str,
    report: &'a T,
}

/// Pretty JSON of a report inside the versioned envelope.
pub fn report_json<T: Serialize>(kind: &str, report: &T) -> String {
    serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA_VERSION,
        kind,
        report,
    })
    .expect("reports always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::DEFAULT_MAX_DIM;

    const SAMPLE: &str = r#"{"dimension": 2,
        "sites": [{"id": "a", "coords": ["1", "-2/3"]}, {"id": "b", "coords": ["0.25", "0"]}],
        "S": ["a"]}"#;

    #[test]
    fn round_trip() {
        let file = InstanceFile::parse(SAMPLE).unwrap();
        let spec = file.spec(DEFAULT_MAX_DIM).unwrap();
        let again = InstanceFile::from_spec(&spec);
        assert_eq!(again.sites[1].coords, vec!["1/4".to_string(), "0".to_string()]);
        let back = InstanceFile::parse(&again.to_json()).unwrap().spec(DEFAULT_MAX_DIM).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn bad_inputs() {
        assert!(InstanceFile::parse("{").is_err());
        assert!(InstanceFile::parse(r#"{"dimension": 2, "sites": [], "extra": 1}"#).is_err());
        let wrong_len = r#"{"dimension": 3, "sites": [{"id": "a", "coords": ["1", "2"]}], "S": ["a"]}"#;
        assert!(InstanceFile::parse(wrong_len).unwrap().spec(DEFAULT_MAX_DIM).is_err());
        let too_big = r#"{"dimension": 5, "sites": [{"id": "a", "coords": ["1","2","3","4","5"]}], "S": ["a"]}"#;
        let file = InstanceFile::parse(too_big).unwrap();
        assert!(matches!(file.spec(DEFAULT_MAX_DIM), Err(Error::DimensionTooLarge { .. })));
        assert!(file.spec(5).is_ok());
    }

    #[test]
    fn envelope() {
        let text = report_json("test", &vec![1, 2]);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["kind"], "test");
        assert_eq!(v["report"][1], 2);
    }
}

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use order_voronoi::cell::CellSpec;
use order_voronoi::exact::{Point, SiteSet};
use order_voronoi::harness::io::InstanceFile;

pub fn example_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

pub fn instance(name: &str) -> InstanceFile {
    InstanceFile::read(&example_path(name)).expect("bundled example parses")
}

pub fn spec(name: &str) -> CellSpec {
    instance(name).spec(4).expect("bundled example is a valid cell")
}

pub fn sites(name: &str) -> SiteSet {
    instance(name).site_set(4).expect("bundled example has valid sites")
}

pub fn point_set(points: &[Point]) -> BTreeSet<Point> {
    points.iter().cloned().collect()
}

pub fn ints(rows: &[&[i64]]) -> BTreeSet<Point> {
    rows.iter().map(|r| Point::from_ints(r)).collect()
}

pub fn ids(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Every bundled example that names a selection.
pub const CELL_EXAMPLES: [&str; 4] = [
    "three_sites_ray.json",
    "quadrant_wedge.json",
    "cocircular_ambiguous.json",
    "cyclic_quadrilateral.json",
];

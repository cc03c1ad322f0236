//! Exact rational scalars, points, site sets and balls.
//!
//! Every geometric quantity in the crate is a [`Scalar`], an arbitrary
//! precision rational kept in lowest terms. Distances are always squared so
//! that all predicates stay inside the rationals.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::linalg;

/// Arbitrary-precision rational number, normalized to lowest terms with a
/// positive denominator.
pub type Scalar = num_rational::BigRational;

/// Largest ambient dimension accepted unless a caller opts into more.
pub const DEFAULT_MAX_DIM: usize = 4;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses an integer (`"-3"`), a fraction (`"2/3"`) or a finite decimal
/// (`"0.25"`) into an exact scalar.
pub fn parse_scalar(literal: &str) -> Result<Scalar> {
    let bad = |reason| Error::InvalidScalar {
        literal: literal.to_string(),
        reason,
    };
    let s = literal.trim();
    if s.is_empty() {
        return Err(bad("empty literal"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num.trim()).ok_or_else(|| bad("numerator is not an integer"))?;
        let den_str = den.trim();
        if den_str.starts_with(['-', '+']) {
            return Err(bad("denominator must be an unsigned integer"));
        }
        let den = parse_int(den_str).ok_or_else(|| bad("denominator is not an integer"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Scalar::new(num, den));
    }
    if let Some((whole, fraction)) = s.split_once('.') {
        if fraction.is_empty() || !fraction.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("malformed decimal fraction"));
        }
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if !digits.bytes().all(|b| b.is_ascii_digit()) || whole.len() - digits.len() > 1 {
            return Err(bad("malformed decimal integer part"));
        }
        let mantissa: BigInt = format!("{digits}{fraction}")
            .parse()
            .map_err(|_| bad("malformed decimal"))?;
        let scale = num_traits::pow(BigInt::from(10), fraction.len());
        let value = Scalar::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    parse_int(s)
        .map(Scalar::from_integer)
        .ok_or_else(|| bad("not an integer, fraction or finite decimal"))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_scalar(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Rounds to `places` decimal digits (half away from zero) and prints the
/// result with exactly that many digits after the point.
pub fn format_decimal(v: &Scalar, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = v * Scalar::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let negative = rounded.is_negative();
    let magnitude = rounded.abs();
    let int_part = &magnitude / &scale;
    let frac_part = &magnitude % &scale;
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places)
    }
}

/// `#[serde(with = "...")]` adaptor writing a scalar as its canonical string.
pub mod scalar_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Scalar, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&format_scalar(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(de)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`scalar_serde`] for optional values; `None` becomes `null`.
pub mod opt_scalar_serde {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &Option<Scalar>,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => ser.serialize_some(&format_scalar(v)),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Option<Scalar>, D::Error> {
        Option::<String>::deserialize(de)?
            .map(|s| parse_scalar(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// A point (or direction vector) in R^n with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| int(c)).collect())
    }

    /// Parses each coordinate with [`parse_scalar`].
    pub fn parse<S: AsRef<str>>(coords: &[S]) -> Result<Self> {
        coords
            .iter()
            .map(|c| parse_scalar(c.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Point)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Scalar::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Point) -> Scalar {
        linalg::dot(&self.0, &other.0)
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &Scalar) -> Point {
        Point(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn neg(&self) -> Point {
        Point(self.0.iter().map(|a| -a).collect())
    }

    /// Arithmetic mean of a nonempty list of points.
    pub fn centroid(points: &[Point]) -> Option<Point> {
        let first = points.first()?;
        let mut acc = first.clone();
        for p in &points[1..] {
            acc = acc.add(p);
        }
        Some(acc.scale(&Scalar::new(BigInt::one(), BigInt::from(points.len()))))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_scalar).collect()
    }
}

impl Index<usize> for Point {
    type Output = Scalar;

    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_scalar(c))?;
        }
        write!(f, ")")
    }
}

impl FromStr for Point {
    type Err = Error;

    /// Accepts comma separated coordinates, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        Point::parse(&parts)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(de)?;
        Point::parse(&raw).map_err(serde::de::Error::custom)
    }
}

/// Squared Euclidean distance.
pub fn sq_dist(p: &Point, q: &Point) -> Result<Scalar> {
    check_dim(p.dim(), q.dim())?;
    Ok(p.sub(q).norm_sq())
}

/// Dimension of the affine hull of a nonempty point list.
pub fn affine_rank(points: &[Point]) -> Result<usize> {
    let (first, rest) = points.split_first().ok_or(Error::EmptyInput("affine_rank"))?;
    for p in rest {
        check_dim(first.dim(), p.dim())?;
    }
    let rows: Vec<Vec<Scalar>> = rest.iter().map(|p| p.sub(first).into_coords()).collect();
    Ok(linalg::rank(&rows))
}

/// A labelled generator point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    pub id: String,
    pub point: Point,
}

impl Site {
    pub fn new(id: impl Into<String>, point: Point) -> Self {
        Site {
            id: id.into(),
            point,
        }
    }
}

/// A finite, labelled collection of pairwise distinct sites in R^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteSet {
    ambient_dim: usize,
    sites: Vec<Site>,
}

impl SiteSet {
    pub fn new(ambient_dim: usize, sites: Vec<Site>) -> Result<Self> {
        Self::with_max_dim(ambient_dim, sites, DEFAULT_MAX_DIM)
    }

    pub fn with_max_dim(ambient_dim: usize, sites: Vec<Site>, max_dim: usize) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if ambient_dim > max_dim {
            return Err(Error::DimensionTooLarge {
                dim: ambient_dim,
                max: max_dim,
            });
        }
        let mut ids = HashSet::new();
        let mut seen = std::collections::HashMap::new();
        for site in &sites {
            check_dim(ambient_dim, site.point.dim())?;
            if !ids.insert(site.id.as_str()) {
                return Err(Error::DuplicateId(site.id.clone()));
            }
            if let Some(prev) = seen.insert(&site.point, site.id.as_str()) {
                return Err(Error::DuplicatePoint(prev.to_string(), site.id.clone()));
            }
        }
        Ok(SiteSet { ambient_dim, sites })
    }

    /// Sites named `p0`, `p1`, ... from integer coordinates.
    pub fn from_int_coords(ambient_dim: usize, coords: &[&[i64]]) -> Result<Self> {
        let sites = coords
            .iter()
            .enumerate()
            .map(|(i, c)| Site::new(format!("p{i}"), Point::from_ints(c)))
            .collect();
        SiteSet::new(ambient_dim, sites)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Site> {
        self.sites.iter().find(|s| s.id == id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.sites.iter().map(|s| s.id.as_str())
    }

    pub fn points(&self) -> Vec<Point> {
        self.sites.iter().map(|s| s.point.clone()).collect()
    }

    /// The sub-collection whose ids pass `keep`, in original order.
    pub fn filtered(&self, mut keep: impl FnMut(&str) -> bool) -> SiteSet {
        SiteSet {
            ambient_dim: self.ambient_dim,
            sites: self.sites.iter().filter(|s| keep(&s.id)).cloned().collect(),
        }
    }
}

/// Where a point sits relative to a closed ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BallPosition {
    Interior,
    Boundary,
    Exterior,
}

/// Closed Euclidean ball stored by its squared radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    #[serde(with = "scalar_serde")]
    pub sq_radius: Scalar,
}

impl Ball {
    pub fn new(center: Point, sq_radius: Scalar) -> Result<Self> {
        if sq_radius.is_negative() {
            return Err(Error::Precondition("squared radius must be nonnegative".into()));
        }
        Ok(Ball { center, sq_radius })
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn position(&self, p: &Point) -> Result<BallPosition> {
        let d = sq_dist(&self.center, p)?;
        Ok(match d.cmp(&self.sq_radius) {
            Ordering::Less => BallPosition::Interior,
            Ordering::Equal => BallPosition::Boundary,
            Ordering::Greater => BallPosition::Exterior,
        })
    }
}

pub fn ball_position(ball: &Ball, p: &Point) -> Result<BallPosition> {
    ball.position(p)
}

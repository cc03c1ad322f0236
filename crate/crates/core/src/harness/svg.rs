//! SVG drawings of planar order-`k` diagrams.
//!
//! Each cell is clipped to the bounding box exactly; coordinates are rounded
//! to six decimals only when written out, so equal input gives byte-equal
//! output.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::hash::Hasher;

use fnv::FnvHasher;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cell::{cell_halfspaces, CellSpec};
use crate::error::{Error, Result};
use crate::exact::{format_decimal, parse_scalar, Point, Scalar, SiteSet};
use crate::lp::LinearConstraint;
use crate::relations::SubsetFamily;

const PLACES: usize = 6;
const WIDTH_PX: i64 = 800;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BBox {
    pub min_x: Scalar,
    pub min_y: Scalar,
    pub max_x: Scalar,
    pub max_y: Scalar,
}

impl BBox {
    pub fn new(min_x: Scalar, min_y: Scalar, max_x: Scalar, max_y: Scalar) -> Result<Self> {
        if min_x >= max_x || min_y >= max_y {
            return Err(Error::Precondition("bounding box must have positive area".into()));
        }
        Ok(BBox {
            min_x,
            min_y,
            max_x,
            max_y,
        })
    }

    /// Parses `"x0,y0,x1,y1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Format(format!("bounding box {text:?} needs four numbers")));
        }
        let v = parts.iter().map(|p| parse_scalar(p)).collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [Scalar; 4] = v.try_into().expect("four parts");
        BBox::new(a, b, c, d)
    }

    /// The sites' bounding box grown by half its size plus one on each side.
    pub fn around(sites: &SiteSet) -> Self {
        let xs: Vec<&Scalar> = sites.sites().iter().map(|s| &s.point[0]).collect();
        let ys: Vec<&Scalar> = sites.sites().iter().map(|s| &s.point[1]).collect();
        let lo_x = (*xs.iter().min().expect("nonempty")).clone();
        let hi_x = (*xs.iter().max().expect("nonempty")).clone();
        let lo_y = (*ys.iter().min().expect("nonempty")).clone();
        let hi_y = (*ys.iter().max().expect("nonempty")).clone();
        let one = Scalar::from_integer(BigInt::from(1));
        let two = Scalar::from_integer(BigInt::from(2));
        let pad_x = (&hi_x - &lo_x) / &two + &one;
        let pad_y = (&hi_y - &lo_y) / &two + &one;
        BBox {
            min_x: lo_x - &pad_x,
            min_y: lo_y - &pad_y,
            max_x: hi_x + pad_x,
            max_y: hi_y + pad_y,
        }
    }

    fn constraints(&self) -> Vec<LinearConstraint> {
        let e = |x: i64, y: i64| Point::from_ints(&[x, y]);
        vec![
            LinearConstraint::le(e(1, 0), self.max_x.clone()),
            LinearConstraint::le(e(-1, 0), -&self.min_x),
            LinearConstraint::le(e(0, 1), self.max_y.clone()),
            LinearConstraint::le(e(0, -1), -&self.min_y),
        ]
    }

    fn width(&self) -> Scalar {
        &self.max_x - &self.min_x
    }

    fn height(&self) -> Scalar {
        &self.max_y - &self.min_y
    }
}

/// Orders points counter-clockwise around `c`, starting from the positive
/// x-direction.
fn angle_cmp(c: &Point, a: &Point, b: &Point) -> Ordering {
    let (da, db) = (a.sub(c), b.sub(c));
    let upper = |d: &Point| d[1].is_positive() || (d[1].is_zero() && d[0].is_positive());
    match (upper(&da), upper(&db)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => {
            let cross = &da[0] * &db[1] - &da[1] * &db[0];
            Scalar::zero().cmp(&cross)
        }
    }
}

/// A clipped cell: its selection and boundary in counter-clockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClippedCell {
    pub s_ids: Vec<String>,
    pub vertices: Vec<Point>,
}

/// Every nonempty order-`k` cell clipped to `bbox`, selections in
/// lexicographic id order.
pub fn clipped_cells(sites: &SiteSet, k: usize, bbox: &BBox) -> Result<Vec<ClippedCell>> {
    if sites.ambient_dim() != 2 {
        return Err(Error::Precondition("rendering needs planar sites".into()));
    }
    let ids: Vec<String> = sites.ids().map(str::to_string).collect();
    let mut out = Vec::new();
    for sel in SubsetFamily::k_subsets(&ids, k)?.members() {
        let spec = CellSpec::new(sites.clone(), sel.iter().cloned())?;
        let mut h = cell_halfspaces(&spec);
        for c in bbox.constraints() {
            h = h.with_constraint(c)?;
        }
        let mut vertices = h.vertices();
        if vertices.is_empty() {
            continue;
        }
        let centre = Point::centroid(&vertices).expect("nonempty");
        vertices.sort_by(|a, b| angle_cmp(&centre, a, b));
        out.push(ClippedCell {
            s_ids: sel.clone(),
            vertices,
        });
    }
    Ok(out)
}

fn colour(s_ids: &[String]) -> String {
    let mut hasher = FnvHasher::default();
    hasher.write(s_ids.join(",").as_bytes());
    let h = hasher.finish();
    let channel = |shift: u32| 128 + ((h >> shift) & 0xff) / 2;
    format!("#{:02x}{:02x}{:02x}", channel(0), channel(8), channel(16))
}

/// Renders the order-`k` diagram of planar `sites` inside `bbox`.
pub fn render_svg(sites: &SiteSet, k: usize, bbox: &BBox) -> Result<String> {
    let cells = clipped_cells(sites, k, bbox)?;
    let x = |p: &Point| format_decimal(&(&p[0] - &bbox.min_x), PLACES);
    let y = |p: &Point| format_decimal(&(&bbox.max_y - &p[1]), PLACES);
    let w = bbox.width();
    let h = bbox.height();
    let unit = &w / Scalar::from_integer(BigInt::from(400));
    let height_px = &h * Scalar::from_integer(BigInt::from(WIDTH_PX)) / &w;

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH_PX}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        format_decimal(&height_px, 2),
        format_decimal(&w, PLACES),
        format_decimal(&h, PLACES)
    )
    .unwrap();
    writeln!(svg, "<title>order-{k} diagram of {} sites</title>", sites.len()).unwrap();
    writeln!(svg, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>", format_decimal(&w, PLACES), format_decimal(&h, PLACES)).unwrap();
    writeln!(
        svg,
        "<g id=\"cells\" stroke=\"#333333\" stroke-width=\"{}\" stroke-linejoin=\"round\">",
        format_decimal(&unit, PLACES)
    )
    .unwrap();
    for cell in &cells {
        let fill = colour(&cell.s_ids);
        let label = cell.s_ids.join(",");
        let pts = &cell.vertices;
        match pts.len() {
            1 => writeln!(
                svg,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"><title>{label}</title></circle>",
                x(&pts[0]),
                y(&pts[0]),
                format_decimal(&(&unit * Scalar::from_integer(BigInt::from(4))), PLACES)
            ),
            2 => writeln!(
                svg,
                "<path d=\"M {} {} L {} {}\" stroke=\"{fill}\" fill=\"none\"><title>{label}</title></path>",
                x(&pts[0]),
                y(&pts[0]),
                x(&pts[1]),
                y(&pts[1])
            ),
            _ => {
                let mut d = String::new();
                for (i, p) in pts.iter().enumerate() {
                    let cmd = if i == 0 { "M" } else { "L" };
                    write!(d, "{cmd} {} {} ", x(p), y(p)).unwrap();
                }
                d.push('Z');
                writeln!(svg, "<path d=\"{d}\" fill=\"{fill}\"><title>{label}</title></path>")
            }
        }
        .unwrap();
    }
    svg.push_str("</g>\n<g id=\"sites\">\n");
    let r = format_decimal(&(&unit * Scalar::from_integer(BigInt::from(3))), PLACES);
    let font = format_decimal(&(&unit * Scalar::from_integer(BigInt::from(12))), PLACES);
    for site in sites.sites() {
        let p = &site.point;
        writeln!(svg, "<circle cx=\"{}\" cy=\"{}\" r=\"{r}\" fill=\"#000000\"/>", x(p), y(p)).unwrap();
        let label_at = p.add(&Point::new(vec![unit.clone() * Scalar::from_integer(BigInt::from(5)), Scalar::zero()]));
        writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-size=\"{font}\" font-family=\"sans-serif\">{}</text>",
            x(&label_at),
            y(&label_at),
            escape(&site.id)
        )
        .unwrap();
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn square() -> SiteSet {
        SiteSet::from_int_coords(2, &[&[1, 1], &[-1, 1], &[-1, -1], &[1, -1]]).unwrap()
    }

    fn bbox() -> BBox {
        BBox::new(int(-3), int(-3), int(3), int(3)).unwrap()
    }

    #[test]
    fn square_order_two() {
        let cells = clipped_cells(&square(), 2, &bbox()).unwrap();
        assert_eq!(cells.len(), 6);
        let by = |a: &str, b: &str| cells.iter().find(|c| c.s_ids == [a.to_string(), b.to_string()]).unwrap();
        // diagonal pairs collapse to the centre
        assert_eq!(by("p0", "p2").vertices, vec![Point::origin(2)]);
        assert_eq!(by("p1", "p3").vertices, vec![Point::origin(2)]);
        // the top pair gets the wedge y >= |x| clipped to the box
        assert_eq!(
            by("p0", "p1").vertices,
            vec![Point::from_ints(&[3, 3]), Point::from_ints(&[-3, 3]), Point::origin(2)]
        );
    }

    #[test]
    fn whole_plane_and_first_order() {
        let all = clipped_cells(&square(), 4, &bbox()).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].vertices.len(), 4);
        let first = clipped_cells(&square(), 1, &bbox()).unwrap();
        assert_eq!(first.len(), 4);
        assert!(first.iter().all(|c| c.vertices.len() == 4));
    }

    #[test]
    fn output_is_deterministic_and_well_formed() {
        let a = render_svg(&square(), 2, &bbox()).unwrap();
        let b = render_svg(&square(), 2, &bbox()).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<?xml"));
        assert!(a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<path").count(), 4);
        assert_eq!(a.matches("<text").count(), 4);
    }

    #[test]
    fn rejects_non_planar_input() {
        let s = SiteSet::from_int_coords(3, &[&[0, 0, 0], &[1, 0, 0]]).unwrap();
        assert!(render_svg(&s, 1, &bbox()).is_err());
        assert!(BBox::new(int(1), int(0), int(0), int(1)).is_err());
        assert_eq!(BBox::parse("-1, -2, 3/2, 4").unwrap().max_x, crate::exact::frac(3, 2));
        assert!(BBox::parse("1,2,3").is_err());
    }
}

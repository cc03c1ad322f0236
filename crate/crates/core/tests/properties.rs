use std::collections::BTreeSet;

use num_bigint::BigInt;
use order_voronoi::cell::{certificate_at, cell_halfspaces, member, CellSpec};
use order_voronoi::dimension::{lp_dim, predicted_dimension};
use order_voronoi::exact::{format_scalar, parse_scalar, Point, Scalar, Site, SiteSet};
use order_voronoi::harness::io::InstanceFile;
use order_voronoi::lp::Relint;
use order_voronoi::neighbors::{all_minimal_neighbor_sets, cells_equal_reduced};
use order_voronoi::polytope::{equal_h, lineality_dim, polar_dim, PolyCone};
use order_voronoi::relations::verify_order_k;
use proptest::prelude::*;

/// Small integer site sets with a random nonempty proper selection.
fn cell_spec(n: usize, max_sites: usize) -> impl Strategy<Value = CellSpec> {
    prop::collection::btree_set(prop::collection::vec(-4i64..=4, n), 2..=max_sites)
        .prop_flat_map(|pts: BTreeSet<Vec<i64>>| {
            let len = pts.len();
            (Just(pts), prop::collection::vec(any::<bool>(), len), 0..len)
        })
        .prop_map(move |(pts, mask, forced)| {
            let sites = pts
                .iter()
                .enumerate()
                .map(|(i, c)| Site::new(format!("p{i}"), Point::from_ints(c)))
                .collect();
            let sites = SiteSet::new(n, sites).unwrap();
            let mut s: Vec<String> = (0..mask.len()).filter(|&i| mask[i]).map(|i| format!("p{i}")).collect();
            if s.is_empty() || s.len() == mask.len() {
                s = vec![format!("p{forced}")];
            }
            CellSpec::new(sites, s).unwrap()
        })
}

fn planar_or_spatial() -> impl Strategy<Value = CellSpec> {
    prop_oneof![cell_spec(2, 6), cell_spec(3, 5)]
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-200i64..=200, 1i64..=12).prop_map(|(p, q)| Scalar::new(BigInt::from(p), BigInt::from(q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scalar_text_round_trips(v in rational()) {
        prop_assert_eq!(parse_scalar(&format_scalar(&v)).unwrap(), v);
    }

    #[test]
    fn membership_matches_halfspaces(spec in planar_or_spatial(), coords in prop::collection::vec(rational(), 3)) {
        let x = Point::new(coords[..spec.ambient_dim()].to_vec());
        let inside = member(&x, &spec).unwrap();
        prop_assert_eq!(inside, cell_halfspaces(&spec).contains(&x));
        prop_assert_eq!(inside, certificate_at(&x, &spec).unwrap().is_some());
    }

    #[test]
    fn relint_point_carries_a_valid_ball(spec in planar_or_spatial()) {
        if let Relint::Point(x) = cell_halfspaces(&spec).relint().unwrap() {
            let cert = certificate_at(&x, &spec).unwrap();
            prop_assert!(cert.is_some());
            prop_assert!(cert.unwrap().validate(&spec).is_ok());
        }
    }

    #[test]
    fn predicted_dimension_matches_lp(spec in planar_or_spatial()) {
        let r = predicted_dimension(&spec).unwrap();
        prop_assert!(r.agree, "{:?}", r);
        prop_assert_eq!(r.lp_dim, lp_dim(&spec).unwrap());
        prop_assert!(r.lp_dim != spec.ambient_dim() as i64 - 1);
    }

    #[test]
    fn redundancy_removal_keeps_the_set(spec in planar_or_spatial()) {
        let h = cell_halfspaces(&spec);
        prop_assert!(equal_h(&h, &h.irredundant().unwrap()).unwrap());
        prop_assert!(equal_h(&h, &h.deduplicated()).unwrap());
    }

    #[test]
    fn order_k_decomposition(spec in cell_spec(2, 5)) {
        for k in 1..=spec.order() {
            let r = verify_order_k(&spec, k).unwrap();
            prop_assert!(r.holds(), "{:?}", r);
        }
    }

    #[test]
    fn minimal_sets_reproduce_the_cell(spec in cell_spec(2, 6)) {
        let report = all_minimal_neighbor_sets(&spec).unwrap();
        prop_assert!(!report.minimal_sets.is_empty());
        for n in &report.minimal_sets {
            prop_assert!(cells_equal_reduced(&spec, n).unwrap());
            for drop in n {
                let smaller: Vec<String> = n.iter().filter(|id| *id != drop).cloned().collect();
                prop_assert!(!cells_equal_reduced(&spec, &smaller).unwrap());
            }
        }
    }

    #[test]
    fn cone_dimensions_add_up(
        n in 2usize..=4,
        gens in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..6),
    ) {
        let gens: Vec<Point> = gens.iter().map(|g| Point::from_ints(&g[..n])).filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let k = PolyCone::new(n, gens).unwrap();
        prop_assert_eq!(lineality_dim(&k).unwrap() + polar_dim(&k).unwrap(), n);
    }

    #[test]
    fn instance_files_round_trip(spec in planar_or_spatial()) {
        let file = InstanceFile::from_spec(&spec);
        let back = InstanceFile::parse(&file.to_json()).unwrap();
        prop_assert_eq!(back.spec(4).unwrap(), spec);
    }
}

mod common;

use common::*;
use order_voronoi::cell::{cell_halfspaces, farthest_nonempty, Farthest};
use order_voronoi::dimension::predicted_dimension;
use order_voronoi::exact::{int, Point};
use order_voronoi::lp::LinearConstraint;
use order_voronoi::neighbors::{all_minimal_neighbor_sets, verify_unique_minimal, UniqueMinimal};
use order_voronoi::polytope::{equal_h, HPolyhedron};

#[test]
fn three_sites_in_space_is_a_vertical_ray() {
    let spec = spec("three_sites_ray.json");
    let ray = HPolyhedron::new(
        3,
        vec![
            LinearConstraint::eq(Point::from_ints(&[1, 0, 0]), int(0)),
            LinearConstraint::eq(Point::from_ints(&[0, 1, 0]), int(0)),
        ],
        vec![LinearConstraint::le(Point::from_ints(&[0, 0, -1]), int(0))],
    )
    .unwrap();
    assert!(equal_h(&cell_halfspaces(&spec), &ray).unwrap());

    let r = predicted_dimension(&spec).unwrap();
    assert_eq!(r.c_point, Some(Point::origin(3)));
    assert_eq!(point_set(r.f_s.as_ref().unwrap().vertices()), ints(&[&[1, 0, 0], &[-1, 0, 0]]));
    assert_eq!(point_set(r.f_t.as_ref().unwrap().vertices()), ints(&[&[0, 1, 0], &[0, -1, 0]]));
    assert_eq!((r.dim_co_faces, r.predicted_dim, r.lp_dim), (2, 1, 1));
    assert!(r.agree);
}

#[test]
fn diagonal_of_a_square_is_its_centre() {
    let spec = spec("cyclic_quadrilateral.json");
    let r = predicted_dimension(&spec).unwrap();
    assert_eq!(r.c_point, Some(Point::origin(2)));
    assert_eq!(point_set(r.f_s.as_ref().unwrap().vertices()), ints(&[&[1, 1], &[-1, -1]]));
    assert_eq!(point_set(r.f_t.as_ref().unwrap().vertices()), ints(&[&[-1, 1], &[1, -1]]));
    assert_eq!((r.dim_co_faces, r.predicted_dim, r.lp_dim), (2, 0, 0));
    assert_eq!(cell_halfspaces(&spec).vertices(), vec![Point::origin(2)]);
}

#[test]
fn quadrant_has_one_minimal_neighbour_set() {
    let spec = spec("quadrant_wedge.json");
    let r = all_minimal_neighbor_sets(&spec).unwrap();
    assert_eq!(r.minimal_sets, vec![ids(&["a", "c"])]);
    assert_eq!(r.neighbor_set, ids(&["a", "c"]));
    assert!(r.unique && r.interior_nonempty);
    // b's bisector touches the cell only at the origin
    assert_eq!(r.facet_pairs, Some(vec![("s".into(), "a".into()), ("s".into(), "c".into())]));
    assert_eq!(verify_unique_minimal(&spec).unwrap(), UniqueMinimal::Confirmed);
}

#[test]
fn cocircular_cell_has_several_minimal_sets() {
    let spec = spec("cocircular_ambiguous.json");
    let r = all_minimal_neighbor_sets(&spec).unwrap();
    assert_eq!(r.lp_dim, 0);
    assert!(r.minimal_sets.len() >= 2, "{:?}", r.minimal_sets);
    assert_eq!(r.neighbor_set, ids(&["n", "ne", "s", "sw"]));
    // one site from each open semicircle is needed and enough
    for set in &r.minimal_sets {
        assert_eq!(set.len(), 2);
        let upper = set.iter().filter(|id| *id == "n" || *id == "ne").count();
        assert_eq!(upper, 1, "{set:?}");
    }
    assert_eq!(r.minimal_sets.len(), 4);
    assert_eq!(verify_unique_minimal(&spec).unwrap(), UniqueMinimal::NotApplicable);
}

#[test]
fn farthest_cells_of_square_and_collinear_sites() {
    let square = sites("farthest_square.json");
    for id in square.ids() {
        match farthest_nonempty(&square, id).unwrap() {
            Farthest::Nonempty { exposed_ball, .. } => {
                assert_eq!(exposed_ball.position(&square.get(id).unwrap().point).unwrap(), order_voronoi::exact::BallPosition::Boundary);
            }
            Farthest::Empty => panic!("{id} is a hull vertex"),
        }
    }
    let line = sites("farthest_collinear.json");
    assert_eq!(farthest_nonempty(&line, "mid").unwrap(), Farthest::Empty);
    assert!(matches!(farthest_nonempty(&line, "left").unwrap(), Farthest::Nonempty { .. }));
    assert!(matches!(farthest_nonempty(&line, "right").unwrap(), Farthest::Nonempty { .. }));
}

#[test]
fn bundled_files_round_trip() {
    for name in CELL_EXAMPLES {
        let file = instance(name);
        let spec = file.spec(4).unwrap();
        let again = order_voronoi::harness::io::InstanceFile::parse(&file.to_json()).unwrap();
        assert_eq!(again, file);
        assert_eq!(again.spec(4).unwrap(), spec);
    }
}

/// Minimal neighbour sets straight from the definition: every subset `N` of
/// the competitors with `V_N(S) = V_T(S)`, keeping the inclusion-minimal ones.
fn brute_force_minimal_sets(spec: &order_voronoi::cell::CellSpec) -> Vec<std::collections::BTreeSet<String>> {
    use std::collections::BTreeSet;
    let others = spec.other_ids();
    let target = cell_halfspaces(spec);
    let mut good: Vec<BTreeSet<String>> = Vec::new();
    for mask in 0u32..(1 << others.len()) {
        let n: Vec<String> = (0..others.len()).filter(|i| mask >> i & 1 == 1).map(|i| others[i].clone()).collect();
        let reduced = spec.reduced(spec.s_ids(), &n).unwrap();
        if equal_h(&cell_halfspaces(&reduced), &target).unwrap() {
            good.push(n.into_iter().collect());
        }
    }
    good.iter().filter(|g| !good.iter().any(|h| h != *g && h.is_subset(g))).cloned().collect()
}

#[test]
fn neighbour_chain_over_all_lower_cells_can_break() {
    use order_voronoi::neighbors::verify_neighbor_chains;
    use order_voronoi::relations::SubsetFamily;
    use std::collections::BTreeSet;

    let spec = spec("neighbor_chain_counterexample.json");
    let union = |k: usize| -> BTreeSet<String> {
        SubsetFamily::k_subsets(spec.s_ids(), k)
            .unwrap()
            .members()
            .iter()
            .flat_map(|sub| brute_force_minimal_sets(&spec.with_selection(sub.iter().cloned()).unwrap()))
            .flatten()
            .collect()
    };
    let top: BTreeSet<String> = brute_force_minimal_sets(&spec).into_iter().flatten().collect();
    let (order2, order1) = (union(2), union(1));
    assert!(top.is_subset(&order2));
    assert!(order2.contains("p6"));
    assert!(!order1.contains("p6"));

    // p6 only enters through the empty cell of {p3, p5}
    let pair = spec.with_selection(["p3", "p5"]).unwrap();
    assert!(cell_halfspaces(&pair).is_empty().unwrap());
    assert!(brute_force_minimal_sets(&pair).contains(&["p1", "p6"].iter().map(|s| s.to_string()).collect()));

    let r = verify_neighbor_chains(&spec).unwrap();
    assert!(r.applicable);
    assert!(r.reduced_holds());
    assert!(r.full_first_link_holds());
    assert!(!r.full_holds());
    assert_eq!(r.full_links[2].missing, ids(&["p6"]));
    assert!(r.full_interior_holds());
}

#[test]
fn reverse_search_matches_brute_force_on_bundled_cells() {
    for name in CELL_EXAMPLES.into_iter().chain(["neighbor_chain_counterexample.json"]) {
        let spec = spec(name);
        let fast: Vec<std::collections::BTreeSet<String>> = all_minimal_neighbor_sets(&spec)
            .unwrap()
            .minimal_sets
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let mut slow = brute_force_minimal_sets(&spec);
        let mut fast_sorted = fast.clone();
        slow.sort();
        fast_sorted.sort();
        assert_eq!(fast_sorted, slow, "{name}");
    }
}

//! Order-k decompositions of a cell and the inclusion chain of unions of
//! lower-order cells.

use order_voronoi::harness::io::InstanceFile;
use order_voronoi::relations::{verify_inclusion_chain, verify_order_k, ChainOptions};

fn main() -> order_voronoi::error::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/three_sites_ray.json");
    let spec = InstanceFile::read(path.as_ref())?.spec(4)?;
    for k in 1..=spec.order() {
        let r = verify_order_k(&spec, k)?;
        println!(
            "order {k}: against T\\S {:?}; against T inclusion {:?}, equality {}",
            r.reduced, r.full_inclusion, r.full_equal
        );
    }
    let chain = verify_inclusion_chain(&spec, ChainOptions { samples: 20, seed: 1 })?;
    for l in &chain.links {
        println!(
            "union of order {} cells inside order {}: {} points, covered {}, drop-farthest {}, strict {}",
            l.from_order, l.to_order, l.points_tested, l.covered, l.drop_farthest_ok, l.strict_evidence
        );
    }
    Ok(())
}

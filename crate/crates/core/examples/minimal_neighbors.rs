//! Minimal neighbour sets: unique for full-dimensional cells, several for a
//! cell pinched to a point by cocircular sites.

use order_voronoi::harness::io::InstanceFile;
use order_voronoi::neighbors::{all_minimal_neighbor_sets, verify_neighbor_chains, verify_unique_minimal};

fn main() -> order_voronoi::error::Result<()> {
    for file in ["quadrant_wedge.json", "cocircular_ambiguous.json"] {
        let path = format!("{}/examples/{file}", env!("CARGO_MANIFEST_DIR"));
        let spec = InstanceFile::read(path.as_ref())?.spec(4)?;
        let r = all_minimal_neighbor_sets(&spec)?;
        println!("{file}: cell dimension {}", r.lp_dim);
        for set in &r.minimal_sets {
            println!("  minimal set {set:?}");
        }
        println!("  facet pairs {:?}", r.facet_pairs);
        println!("  uniqueness check {:?}", verify_unique_minimal(&spec)?);
        let chains = verify_neighbor_chains(&spec)?;
        if chains.applicable {
            println!("  chains: reduced {}, full {}", chains.reduced_holds(), chains.full_holds());
        }
    }
    Ok(())
}

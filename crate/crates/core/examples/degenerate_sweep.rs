//! A small randomised sweep over cocircular and generic planar instances.
//!
//! `cargo run --release --example degenerate_sweep -- 200 7`

use order_voronoi::harness::sweep::{run_sweep, SweepConfig};

fn main() -> order_voronoi::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let instances = args.next().and_then(|a| a.parse().ok()).unwrap_or(40);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);
    let report = run_sweep(&SweepConfig::new(2, instances, seed))?;
    let c = &report.counters;
    println!("{} instances, {} degenerate", c.instances, c.degenerate_instances);
    println!("cells by dimension: {:?}", c.cells_by_dim);
    println!("several minimal neighbour sets: {}", c.multi_minimal_instances);
    println!("farthest cells nonempty/empty: {}/{}", c.farthest_nonempty, c.farthest_empty);
    for f in &report.failures {
        println!("failure #{} [{}]: {}", f.index, f.check, f.detail);
    }
    Ok(())
}

//! Canonicalizes a random hexagon and prints its trace.

use thickknot::canonicalize::{aligned_rms, canonicalize};
use thickknot::mcmc::{run_chain, ChainConfig};
use thickknot::regular_polygon;

fn main() -> thickknot::Result<()> {
    let mut cfg = ChainConfig::new(6, 0.01, 3, 400);
    cfg.stride = 400;
    let k = run_chain(cfg)?.last().expect("one sample")?.polygon;
    let trace = canonicalize(&k)?;
    for (i, e) in trace.entries.iter().enumerate() {
        println!(
            "{i:3} {:<17} thickness {:.6} -> {:.6}  mu {:8.4}  incidence {}  low {}",
            format!("{:?}", e.stage),
            e.thickness_before,
            e.thickness_after,
            e.mu,
            e.incidence,
            e.min_height_count
        );
    }
    let rms = aligned_rms(trace.last_polygon(), &regular_polygon(6)?);
    println!("{} moves, distance to the regular hexagon {rms:.1e}", trace.len());
    Ok(())
}

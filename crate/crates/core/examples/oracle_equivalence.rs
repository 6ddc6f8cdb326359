//! Compares the two thickness routes (doubly critical pairs versus
//! total-curvature-separated pairs) on random polygons.

use thickknot::mcmc::{run_chain, ChainConfig};
use thickknot::{injectivity_radius, radius_via_tc};

fn main() -> thickknot::Result<()> {
    let mut cfg = ChainConfig::new(9, 0.0, 7, 5000);
    cfg.stride = 250;
    let mut worst: f64 = 0.0;
    for s in run_chain(cfg)? {
        let k = s?.polygon;
        let a = injectivity_radius(&k).injectivity_radius;
        let b = radius_via_tc(&k);
        worst = worst.max((a - b).abs());
        println!("{a:.12} {b:.12}");
    }
    println!("largest difference {worst:.2e}");
    Ok(())
}

//! Knot determinants of sampled hexagons and heptagons; determinant 1 is
//! consistent with the unknot, 3 indicates a trefoil.

use std::collections::BTreeMap;

use thickknot::analysis::alexander_determinant;
use thickknot::mcmc::{run_chain, ChainConfig};

fn main() -> thickknot::Result<()> {
    for n in [6, 7, 8] {
        let mut cfg = ChainConfig::new(n, 0.0, 100 + n as u64, 200_000);
        cfg.stride = 20;
        let mut counts = BTreeMap::new();
        for s in run_chain(cfg)? {
            *counts.entry(alexander_determinant(&s?.polygon)?).or_insert(0u32) += 1;
        }
        println!("n={n}: {counts:?}");
    }
    Ok(())
}

//! Writes sampled polygons to a knot file, reads them back, and exports
//! the first one as an OBJ polyline.

use thickknot::analysis::{read_knots, write_knots, write_obj};
use thickknot::mcmc::{run_chain, ChainConfig};

fn main() -> thickknot::Result<()> {
    let mut cfg = ChainConfig::new(12, 0.02, 9, 1000);
    cfg.stride = 100;
    let ks = run_chain(cfg)?
        .map(|s| s.map(|s| s.polygon))
        .collect::<thickknot::Result<Vec<_>>>()?;
    let dir = std::env::temp_dir();
    let path = dir.join("thickknot-example.knot");
    write_knots(&path, &ks)?;
    let back = read_knots(&path)?;
    println!("wrote and read {} polygons; identical: {}", back.len(), back == ks);
    write_obj(std::io::stdout().lock(), &back[..1])?;
    Ok(())
}

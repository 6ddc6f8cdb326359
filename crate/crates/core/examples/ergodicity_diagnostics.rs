//! Two chains from different starts should agree on the mean squared
//! radius of gyration within their standard errors.

use thickknot::analysis::radius_of_gyration_sq;
use thickknot::mcmc::{diagnostics, run_chain, ChainConfig, Start};
use thickknot::KnotPolygon;

fn rg2(start: Start, seed: u64) -> thickknot::Result<thickknot::mcmc::Diagnostics> {
    let mut cfg = ChainConfig::new(10, 0.01, seed, 100_000);
    cfg.stride = 50;
    cfg.start = start;
    let xs = run_chain(cfg)?
        .map(|s| s.map(|s| radius_of_gyration_sq(&s.polygon)))
        .collect::<thickknot::Result<Vec<f64>>>()?;
    diagnostics(&xs)
}

fn main() -> thickknot::Result<()> {
    // a crumpled start: the last state of an unconstrained run that is thick enough
    let mut cfg = ChainConfig::new(10, 0.0, 5, 2000);
    cfg.stride = 20;
    let other: KnotPolygon = run_chain(cfg)?
        .filter_map(|s| s.ok())
        .filter(|s| s.thickness >= 0.01)
        .last()
        .expect("a thick state")
        .polygon;
    let a = rg2(Start::Regular, 1)?;
    let b = rg2(Start::Polygon(other), 2)?;
    for (name, d) in [("regular start", a), ("random start", b)] {
        println!("{name:>14}: mean {:.4}  se {:.4}  iat {:.2}", d.mean, d.std_error, d.iat);
    }
    let se = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
    println!("difference {:.2} combined standard errors", (a.mean - b.mean).abs() / se);
    Ok(())
}

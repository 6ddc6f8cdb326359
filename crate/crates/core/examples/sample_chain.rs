//! Runs the reflection chain on thick decagons and reports acceptance by
//! batch length.

use thickknot::analysis::radius_of_gyration;
use thickknot::mcmc::{run_chain, ChainConfig};

fn main() -> thickknot::Result<()> {
    let mut cfg = ChainConfig::new(10, 0.05, 11, 50_000);
    cfg.burn_in = 5_000;
    cfg.stride = 5_000;
    let mut chain = run_chain(cfg)?;
    for s in chain.by_ref() {
        let s = s?;
        println!("step {:6} thickness {:.5} rg {:.4}", s.step, s.thickness, radius_of_gyration(&s.polygon));
    }
    let st = chain.stats();
    println!("acceptance {:.3}", st.acceptance_rate());
    for (m, (&p, &a)) in st.proposed_by_m.iter().zip(&st.accepted_by_m).enumerate() {
        if p > 0 {
            println!("  m={m}: {a}/{p}");
        }
    }
    Ok(())
}

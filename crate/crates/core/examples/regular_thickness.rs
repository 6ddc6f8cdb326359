//! Thickness of regular polygons, the maximum over each vertex count.

use thickknot::{injectivity_radius, regular_polygon};

fn main() -> thickknot::Result<()> {
    println!("{:>4} {:>12} {:>12} {:>12}", "n", "minrad", "dcsd", "thickness");
    for n in [3, 4, 5, 6, 8, 10, 16, 32] {
        let r = injectivity_radius(&regular_polygon(n)?);
        let dcsd = r.dcsd.map_or("-".to_string(), |d| format!("{d:.6}"));
        println!("{n:>4} {:>12.6} {dcsd:>12} {:>12.6}", r.minrad, r.thickness);
    }
    Ok(())
}

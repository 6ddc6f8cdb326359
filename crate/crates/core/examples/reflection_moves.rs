//! A reflection move, its inverse, and the arc rotation built from two
//! reflections.

use std::f64::consts::FRAC_PI_3;

use thickknot::moves::{apply_arc_rotation, apply_reflection, ArcChoice, ReflectionMove};
use thickknot::{regular_polygon, thickness};

fn main() -> thickknot::Result<()> {
    let k = regular_polygon(8)?;
    let mut m = ReflectionMove::new(1, 5, FRAC_PI_3);
    let once = apply_reflection(&k, &m)?;
    let twice = apply_reflection(&once, &m)?;
    println!("moved vertices {:?}", m.moving(k.len()));
    println!("thickness {:.6} -> {:.6}", thickness(&k), thickness(&once));
    println!("edge error after move {:.1e}", once.max_edge_deviation().1);
    let back = k
        .vertices()
        .iter()
        .zip(twice.vertices())
        .map(|(a, b)| a.dist(*b))
        .fold(0.0, f64::max);
    println!("distance after applying twice {back:.1e}");

    m.arc_choice = ArcChoice::Complement;
    let other = apply_reflection(&k, &m)?;
    println!("complement moves {:?}, thickness {:.6}", m.moving(k.len()), thickness(&other));

    let bent = apply_arc_rotation(&k, 0, 4, 0.4)?;
    for v in bent.vertices() {
        println!("{:9.5} {:9.5} {:9.5}", v.x, v.y, v.z);
    }
    Ok(())
}

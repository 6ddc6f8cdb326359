//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thickknot::analysis::read_knots;
use thickknot::geom::orient2d;
use thickknot::mcmc::{run_chain, ChainConfig};
use thickknot::moves::{reflection_plane, ReflectionMove};
use thickknot::{regular_polygon, KnotPolygon, Point2, Point3};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// State of the reflection chain with thickness bound `t` after `steps`
/// steps from the regular polygon.
pub fn chain_polygon(n: usize, t: f64, seed: u64, steps: u64) -> KnotPolygon {
    let mut cfg = ChainConfig::new(n, t, seed, steps);
    cfg.stride = steps;
    run_chain(cfg)
        .unwrap()
        .last()
        .expect("one sample")
        .unwrap()
        .polygon
}

/// Random polygon from unconstrained reflections of the regular polygon.
pub fn random_polygon(n: usize, seed: u64) -> KnotPolygon {
    chain_polygon(n, 0.0, seed, 200)
}

/// Random polygon whose thickness is at least `t`.
pub fn thick_polygon(n: usize, t: f64, seed: u64) -> KnotPolygon {
    chain_polygon(n, t, seed, 400)
}

/// Centrally symmetric convex planar equilateral polygon with random edge
/// directions (`n` even).
pub fn convex_symmetric(n: usize, seed: u64) -> KnotPolygon {
    assert!(n.is_multiple_of(2) && n >= 4);
    let mut r = rng(seed);
    let m = n / 2;
    let mut a: Vec<f64> = Vec::new();
    // keep directions distinct so no vertex is straight
    while a.len() < m {
        let x = r.random_range(0.0..PI);
        if a.iter().all(|&y: &f64| (x - y).abs() > 0.05 && PI - (x - y).abs() > 0.05) {
            a.push(x);
        }
    }
    a.sort_by(f64::total_cmp);
    let dirs: Vec<f64> = a.iter().copied().chain(a.iter().map(|x| x + PI)).collect();
    let mut p = Point3::ZERO;
    let mut v = Vec::new();
    for d in dirs {
        v.push(p);
        p += Point3::new(d.cos(), d.sin(), 0.0);
    }
    KnotPolygon::new(v).unwrap()
}

pub fn fixture(name: &str) -> KnotPolygon {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.knot"));
    read_knots(path).unwrap().remove(0)
}

pub fn max_coord_diff(a: &KnotPolygon, b: &KnotPolygon) -> f64 {
    a.vertices()
        .iter()
        .zip(b.vertices())
        .map(|(p, q)| (*p - *q).norm())
        .fold(0.0, f64::max)
}

pub fn max_edge_error(k: &KnotPolygon) -> f64 {
    k.max_edge_deviation().1
}

pub fn sorted_distances(k: &KnotPolygon) -> Vec<f64> {
    let v = k.vertices();
    let mut d = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            d.push(v[i].dist(v[j]));
        }
    }
    d.sort_by(f64::total_cmp);
    d
}

/// A reflection whose plane touches the vertex hull only on its boundary,
/// found by scanning plane angles through a random vertex pair.
pub fn supporting_reflection(k: &KnotPolygon, r: &mut ChaCha8Rng) -> Option<ReflectionMove> {
    let n = k.len();
    for _ in 0..50 {
        let i = r.random_range(0..n);
        let j = r.random_range(0..n);
        if i == j || k.vertex(i as isize).dist(k.vertex(j as isize)) < 1e-6 {
            continue;
        }
        let (i, j) = (i.min(j), i.max(j));
        let steps = 720;
        let good: Vec<f64> = (0..steps)
            .map(|s| 2.0 * PI * s as f64 / steps as f64)
            .filter(|&th| {
                let pl = reflection_plane(k, i, j, th).unwrap();
                k.vertices().iter().all(|&v| pl.signed_distance(v) <= 1e-12)
            })
            .collect();
        if let Some(&th) = good.get(good.len() / 2) {
            return Some(ReflectionMove::new(i, j, th));
        }
    }
    None
}

/// Indices of hull vertices by brute force: `(i, j)` is a hull edge when no
/// point is strictly right of `i -> j` and every collinear point lies
/// between them.
pub fn brute_hull(pts: &[Point2]) -> Vec<usize> {
    let n = pts.len();
    let mut on = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || pts[i].dist(pts[j]) == 0.0 {
                continue;
            }
            let ok = (0..n).all(|k| {
                let o = orient2d(pts[i], pts[j], pts[k]);
                if o < 0.0 {
                    return false;
                }
                if o == 0.0 {
                    let d = pts[j] - pts[i];
                    let t = (pts[k] - pts[i]).dot(d) / d.dot(d);
                    return (0.0..=1.0).contains(&t);
                }
                true
            });
            if ok {
                on[i] = true;
                on[j] = true;
            }
        }
    }
    (0..n).filter(|&i| on[i]).collect()
}

/// Smallest distance among grid pairs that are discrete local extrema of
/// distance in both slots. Each edge is sampled at `per_edge` points; pairs
/// closer than 0.9 in arclength are skipped.
pub fn grid_dcsd(k: &KnotPolygon, per_edge: usize) -> Option<f64> {
    let n = k.len();
    let total = n * per_edge;
    let pts: Vec<Point3> = (0..total)
        .map(|g| {
            let (a, b) = k.edge(g / per_edge);
            a.lerp(b, (g % per_edge) as f64 / per_edge as f64)
        })
        .collect();
    let sep_min = (0.9 * per_edge as f64) as usize;
    let row = |p: usize| -> Vec<f64> { pts.iter().map(|&q| (pts[p] - q).norm_sq()).collect() };
    let extremum = |l: f64, c: f64, r: f64| (c <= l && c <= r) || (c >= l && c >= r);
    let mut prev = row(total - 1);
    let mut cur = row(0);
    let mut best: Option<f64> = None;
    for p in 0..total {
        let next = row((p + 1) % total);
        for q in 0..total {
            let sep = (q + total - p) % total;
            if sep.min(total - sep) < sep_min {
                continue;
            }
            let c = cur[q];
            let ql = cur[(q + total - 1) % total];
            let qr = cur[(q + 1) % total];
            if extremum(prev[q], c, next[q]) && extremum(ql, c, qr) {
                let d = c.sqrt();
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        prev = std::mem::replace(&mut cur, next);
    }
    best
}

pub fn regular(n: usize) -> KnotPolygon {
    regular_polygon(n).unwrap()
}

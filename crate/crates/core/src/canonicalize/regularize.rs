use std::f64::consts::FRAC_PI_2;

use crate::geom::Point3;
use crate::error::{Error, Result, Stage};
use crate::moves::{apply_hextuple, hextuple_diagnostic, Quadruple};
use crate::polygon::{regular_angle, AngleClass, KnotPolygon};

use super::{CanonicalizationTrace, Move, StageKind};

fn classes(k: &KnotPolygon) -> Vec<AngleClass> {
    let n = k.len();
    k.interior_angles()
        .into_iter()
        .map(|a| AngleClass::classify(a, n))
        .collect()
}

/// Two small and two large vertices in alternating cyclic order
/// `v1, w1, v2, w2`, for a planar convex polygon that is not regular.
///
/// `v1` and `w1` are neighbours among the non-regular vertices, `w2` is
/// the nearest large vertex on the other side of `v1`, and `v2` the first
/// small vertex between `w1` and `w2`.
pub fn choose_four_vertices(k: &KnotPolygon) -> Result<Quadruple> {
    let n = k.len();
    let cls = classes(k);
    let odd: Vec<usize> = (0..n).filter(|&i| cls[i] != AngleClass::Regular).collect();
    if odd.is_empty() {
        return Err(Error::AlreadyRegular);
    }
    let m = odd.len();
    for t in 0..m {
        let (x, y) = (odd[t], odd[(t + 1) % m]);
        let (v1, w1, forward) = match (cls[x], cls[y]) {
            (AngleClass::Small, AngleClass::Large) => (x, y, true),
            (AngleClass::Large, AngleClass::Small) => (y, x, false),
            _ => continue,
        };
        // walk away from w1 past v1 to the nearest large vertex
        let step = |i: usize, fwd: bool| if fwd { (i + 1) % n } else { (i + n - 1) % n };
        let mut w2 = step(v1, !forward);
        while cls[w2] != AngleClass::Large {
            w2 = step(w2, !forward);
        }
        if w2 == w1 {
            continue;
        }
        // small vertex strictly between w1 and w2, continuing away from v1
        let mut v2 = step(w1, forward);
        while v2 != w2 && cls[v2] != AngleClass::Small {
            v2 = step(v2, forward);
        }
        if v2 == w2 {
            continue;
        }
        let q = if forward {
            Quadruple { v1, w1, v2, w2 }
        } else {
            Quadruple {
                v1,
                w1: w2,
                v2,
                w2: w1,
            }
        };
        return Ok(q);
    }
    Err(Error::NotApplicable(
        "no alternating small/large quadruple (polygon not convex?)".into(),
    ))
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64, tol: f64) -> (f64, f64) {
    let f_lo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if (fm > 0.0) == (f_lo > 0.0) && fm != 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Upper end of the search interval: the first zero of the diagnostic on
/// `[0, pi/2]`, or `pi/2` when it stays positive there.
fn diagnostic_root(k: &KnotPolygon, q: Quadruple) -> Result<f64> {
    let f = |t: f64| hextuple_diagnostic(k, q, t).unwrap_or(f64::NAN);
    let f0 = f(0.0);
    if !(f0 > 0.0) {
        return Err(Error::NoSignChange {
            f0,
            f1: f(FRAC_PI_2),
        });
    }
    const GRID: usize = 64;
    let mut prev = 0.0;
    for g in 1..=GRID {
        let t = FRAC_PI_2 * g as f64 / GRID as f64;
        if !(f(t) > 0.0) {
            return Ok(bisect(prev, t, f, 1e-12).0);
        }
        prev = t;
    }
    Ok(FRAC_PI_2)
}

/// Residuals of the four tracked angles from the regular angle.
fn residuals(k: &KnotPolygon, q: Quadruple, theta: f64) -> Option<[f64; 4]> {
    let out = apply_hextuple(k, q, theta).ok()?;
    let reg = regular_angle(k.len());
    let mut r = [0.0; 4];
    for (slot, i) in r.iter_mut().zip(q.as_array()) {
        *slot = out.vertex_angles(i).ok()?.interior - reg;
    }
    Some(r)
}

/// First angle in `(0, top]` at which a tracked angle becomes regular.
fn first_regular_angle(k: &KnotPolygon, q: Quadruple, top: f64) -> Option<f64> {
    const GRID: usize = 64;
    let r0 = residuals(k, q, 0.0)?;
    let mut prev_t = 0.0;
    let mut prev = r0;
    for g in 1..=GRID {
        let t = top * g as f64 / GRID as f64;
        let cur = residuals(k, q, t)?;
        let crossing: Vec<usize> = (0..4)
            .filter(|&x| cur[x] == 0.0 || (cur[x] > 0.0) != (prev[x] > 0.0))
            .collect();
        if !crossing.is_empty() {
            let mut best = f64::INFINITY;
            for x in crossing {
                let g = |s: f64| residuals(k, q, s).map(|r| r[x]).unwrap_or(f64::NAN);
                let (lo, hi) = bisect(prev_t, t, g, 1e-13);
                let pick = if g(lo).abs() <= g(hi).abs() { lo } else { hi };
                best = best.min(pick);
            }
            return Some(best);
        }
        prev_t = t;
        prev = cur;
    }
    None
}

/// One hextuple move making at least one more vertex regular, or `None`
/// when the polygon is already regular.
pub fn regularize_step(k: &KnotPolygon) -> Result<Option<(Move, KnotPolygon)>> {
    let n = k.len();
    let q = match choose_four_vertices(k) {
        Ok(q) => q,
        Err(Error::AlreadyRegular) => return Ok(None),
        Err(e) => {
            let reg = regular_angle(n);
            let worst = k
                .interior_angles()
                .into_iter()
                .map(|a| (a - reg).abs())
                .fold(0.0, f64::max);
            return if worst < 1e-9 { Ok(None) } else { Err(e) };
        }
    };
    let top = diagnostic_root(k, q)?;
    let theta = first_regular_angle(k, q, top).ok_or_else(|| Error::PipelineStall {
        stage: Stage::Regularize,
        iterations: 0,
        detail: format!("no tracked angle of {q:?} reaches regular below theta0 = {top}"),
    })?;
    let mv = Move::Hextuple { quad: q, theta };
    // the move keeps the plane; drop rounding drift in height
    let next = mv.apply(k)?.map_isometry(|p| Point3::new(p.x, p.y, 0.0));
    Ok(Some((mv, next)))
}

/// Makes every angle of a planar convex polygon regular with hextuple
/// moves; each step makes at least one more vertex regular.
pub fn regularize(k: &KnotPolygon) -> Result<(KnotPolygon, CanonicalizationTrace)> {
    let n = k.len();
    let mut trace = CanonicalizationTrace::new(k.clone());
    let mut cur = k.clone();
    for iter in 0..=n {
        match regularize_step(&cur) {
            Ok(None) => return Ok((cur, trace)),
            Ok(Some((mv, next))) => {
                trace.push(StageKind::Regularize, mv, next.clone());
                cur = next;
            }
            Err(Error::PipelineStall { stage, detail, .. }) => {
                return Err(Error::PipelineStall {
                    stage,
                    iterations: iter,
                    detail,
                })
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::PipelineStall {
        stage: Stage::Regularize,
        iterations: n + 1,
        detail: "angles not regular after n + 1 hextuple moves".into(),
    })
}

//! The reflection chain: one batch of reflections per step, accepted when
//! the result is still thick enough.

use crate::error::{Error, Result};
use crate::geom::Point3;
use crate::moves::apply_batch;
use crate::polygon::{regular_polygon, KnotPolygon};
use crate::thickness::{injectivity_radius, thickness};

use super::noise::{decode_noise, draw_noise, NoiseDraw};

/// Accepted moves between integrity audits.
pub const AUDIT_INTERVAL: u64 = 10_000;
/// Largest edge-length error tolerated after renormalization.
pub const MAX_DRIFT: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum Start {
    Regular,
    Polygon(KnotPolygon),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    pub n: usize,
    /// Lower bound on thickness (injectivity radius over arclength).
    pub t: f64,
    /// Continuation probabilities; the batch cap is `p.len()`.
    pub p: Vec<f64>,
    pub seed: u64,
    pub steps: u64,
    pub burn_in: u64,
    pub stride: u64,
    pub start: Start,
}

impl ChainConfig {
    /// Defaults: batch cap 6, every continuation probability 1/2, no
    /// burn-in, every state emitted, start at the regular polygon.
    pub fn new(n: usize, t: f64, seed: u64, steps: u64) -> Self {
        Self {
            n,
            t,
            p: vec![0.5; 6],
            seed,
            steps,
            burn_in: 0,
            stride: 1,
            start: Start::Regular,
        }
    }

    pub fn cap(&self) -> usize {
        self.p.len()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.n < 3 {
            return bad(format!("n = {} (need at least 3)", self.n));
        }
        if self.p.len() < 6 {
            return bad(format!("batch cap {} (need at least 6)", self.p.len()));
        }
        if let Some(pk) = self.p.iter().find(|&&pk| !(pk > 0.0 && pk <= 1.0)) {
            return bad(format!("continuation probability {pk} outside (0, 1]"));
        }
        if !(self.t >= 0.0) || !self.t.is_finite() {
            return bad(format!("thickness bound {} must be finite and non-negative", self.t));
        }
        if self.stride == 0 {
            return bad("stride must be positive".into());
        }
        let best = thickness(&regular_polygon(self.n)?);
        if self.t > best + 1e-12 {
            log::warn!(
                "thickness bound {} exceeds the regular {}-gon's {best}; the state space may be empty",
                self.t,
                self.n
            );
        }
        if let Start::Polygon(k) = &self.start {
            if k.len() != self.n {
                return bad(format!("start polygon has {} vertices, expected {}", k.len(), self.n));
            }
            let tk = thickness(k);
            if tk < self.t - 1e-12 {
                return bad(format!("start polygon thickness {tk} is below the bound {}", self.t));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub accepted: bool,
    /// Reflections in the batch (0 to the cap).
    pub m: usize,
    pub thickness_after: f64,
    pub state: KnotPolygon,
}

/// One step: apply the decoded batch with no intermediate checks, then
/// keep the result if it is thick enough. A degenerate axis anywhere in
/// the batch counts as a rejection.
pub fn chain_step(k: &KnotPolygon, d: &NoiseDraw, cfg: &ChainConfig) -> StepOutcome {
    let (m, batch) = decode_noise(d, &cfg.p);
    let reject = |thickness_after: f64| StepOutcome {
        accepted: false,
        m,
        thickness_after,
        state: k.clone(),
    };
    if m == 0 {
        return StepOutcome {
            accepted: true,
            m,
            thickness_after: thickness(k),
            state: k.clone(),
        };
    }
    let Ok(next) = apply_batch(k, &batch) else {
        return reject(0.0);
    };
    let t = thickness(&next);
    if t >= cfg.t {
        StepOutcome {
            accepted: true,
            m,
            thickness_after: t,
            state: next,
        }
    } else {
        reject(t)
    }
}

/// An emitted state.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub step: u64,
    pub polygon: KnotPolygon,
    pub accepted: bool,
    pub m: usize,
    pub thickness: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ChainStats {
    pub steps: u64,
    pub accepted: u64,
    /// Proposals by batch length.
    pub proposed_by_m: Vec<u64>,
    /// Acceptances by batch length.
    pub accepted_by_m: Vec<u64>,
    pub audits: u64,
    /// Largest edge-length error seen at an audit, before renormalizing.
    pub max_audit_drift: f64,
}

impl ChainStats {
    pub fn acceptance_rate(&self) -> f64 {
        if self.steps == 0 {
            0.0
        } else {
            self.accepted as f64 / self.steps as f64
        }
    }
}

/// Streams the chain's emitted states. Steps are numbered from 1; state
/// `s` is emitted when `s > burn_in` and `(s - burn_in) % stride == 0`.
pub struct Chain {
    cfg: ChainConfig,
    state: KnotPolygon,
    step: u64,
    since_audit: u64,
    stats: ChainStats,
    failed: bool,
}

pub fn run_chain(cfg: ChainConfig) -> Result<Chain> {
    cfg.validate()?;
    let state = match &cfg.start {
        Start::Regular => regular_polygon(cfg.n)?,
        Start::Polygon(k) => k.clone(),
    };
    let cap = cfg.cap();
    Ok(Chain {
        cfg,
        state,
        step: 0,
        since_audit: 0,
        stats: ChainStats {
            proposed_by_m: vec![0; cap + 1],
            accepted_by_m: vec![0; cap + 1],
            ..ChainStats::default()
        },
        failed: false,
    })
}

impl Chain {
    pub fn stats(&self) -> &ChainStats {
        &self.stats
    }

    pub fn state(&self) -> &KnotPolygon {
        &self.state
    }

    pub fn config(&self) -> &ChainConfig {
        &self.cfg
    }

    /// Advances one step and returns its outcome.
    pub fn advance(&mut self) -> Result<StepOutcome> {
        self.step += 1;
        let draw = draw_noise(self.cfg.seed, self.step, self.cfg.n, self.cfg.cap());
        let out = chain_step(&self.state, &draw, &self.cfg);
        self.stats.steps += 1;
        self.stats.proposed_by_m[out.m] += 1;
        if out.accepted {
            self.stats.accepted += 1;
            self.stats.accepted_by_m[out.m] += 1;
            self.state = out.state.clone();
            self.since_audit += 1;
            if self.since_audit >= AUDIT_INTERVAL {
                self.since_audit = 0;
                self.audit()?;
            }
        }
        Ok(out)
    }

    fn audit(&mut self) -> Result<()> {
        self.stats.audits += 1;
        let (_, drift) = self.state.max_edge_deviation();
        self.stats.max_audit_drift = self.stats.max_audit_drift.max(drift);
        let fixed = renormalize(&self.state);
        let (_, after) = fixed.max_edge_deviation();
        if after > MAX_DRIFT {
            return Err(Error::IntegrityFailure {
                step: self.step,
                detail: format!("edge drift {after:e} after renormalization"),
            });
        }
        let t = injectivity_radius(&fixed).thickness;
        if t < self.cfg.t - 1e-12 {
            return Err(Error::IntegrityFailure {
                step: self.step,
                detail: format!("thickness {t} below the bound after renormalization"),
            });
        }
        self.state = fixed;
        Ok(())
    }
}

impl Iterator for Chain {
    type Item = Result<Sample>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        while self.step < self.cfg.steps {
            let out = match self.advance() {
                Ok(o) => o,
                Err(e) => {
                    self.failed = true;
                    return Some(Err(e));
                }
            };
            let s = self.step;
            if s > self.cfg.burn_in && (s - self.cfg.burn_in).is_multiple_of(self.cfg.stride) {
                return Some(Ok(Sample {
                    step: s,
                    polygon: self.state.clone(),
                    accepted: out.accepted,
                    m: out.m,
                    thickness: if out.accepted {
                        out.thickness_after
                    } else {
                        thickness(&self.state)
                    },
                }));
            }
        }
        None
    }
}

/// Restores unit edges and closure after rounding drift: alternately
/// rescale the edge vectors and spread the closure defect over them. The
/// result is centred at the origin.
pub fn renormalize(k: &KnotPolygon) -> KnotPolygon {
    renormalize_points(k.vertices())
}

/// [`renormalize`] for a raw closed vertex list, e.g. a perturbed polygon
/// that no longer passes validation.
pub fn renormalize_points(v: &[Point3]) -> KnotPolygon {
    let n = v.len();
    assert!(n >= 3, "need at least 3 vertices");
    let mut edges: Vec<Point3> = (0..n).map(|i| v[(i + 1) % n] - v[i]).collect();
    for _ in 0..50 {
        for e in edges.iter_mut() {
            *e = *e / e.norm();
        }
        let gap = edges.iter().fold(Point3::ZERO, |a, &e| a + e);
        if gap.norm() < 1e-15 {
            break;
        }
        for e in edges.iter_mut() {
            *e -= gap / n as f64;
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut p = v[0];
    for e in &edges {
        out.push(p);
        p += *e;
    }
    let c = out.iter().fold(Point3::ZERO, |a, &x| a + x) / n as f64;
    KnotPolygon::from_vertices_unchecked(out.into_iter().map(|x| x - c).collect())
}

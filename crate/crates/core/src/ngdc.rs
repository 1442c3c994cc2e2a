//! The geographical distance coefficient and candidate ranking.
//!
//! For a candidate at distance `D` from the target with a pre-training corpus
//! of `S` million sentences,
//!
//! ```text
//! z = c·(D / d_scale) / ((1 − c)·(S / s_scale))
//! δ = 1                    if D ≥ D_max (penalty on)
//! δ = e^z / (1 + e^z)      otherwise
//! ```
//!
//! Lower δ is better. `d_scale` defaults to 1000, i.e. `D` enters `z` in
//! thousands of kilometres; with that scaling the published coefficients are
//! reproduced.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesy::{resolve_against, DistanceMethod, DistanceSource};
use crate::registry::Registry;

pub const DEFAULT_C: f64 = 0.4;
pub const DEFAULT_D_MAX_KM: f64 = 5000.0;
pub const DEFAULT_D_SCALE: f64 = 1000.0;
pub const DEFAULT_S_SCALE: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NgdcParams {
    /// Weight of distance against corpus size, in (0, 1).
    pub c: f64,
    pub d_max_km: f64,
    pub apply_penalty: bool,
    pub d_scale: f64,
    pub s_scale: f64,
}

impl Default for NgdcParams {
    fn default() -> Self {
        NgdcParams {
            c: DEFAULT_C,
            d_max_km: DEFAULT_D_MAX_KM,
            apply_penalty: true,
            d_scale: DEFAULT_D_SCALE,
            s_scale: DEFAULT_S_SCALE,
        }
    }
}

impl NgdcParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c < 1.0) {
            return Err(Error::Domain(format!("c must lie in (0, 1), got {}", self.c)));
        }
        for (name, v) in [
            ("d_max_km", self.d_max_km),
            ("d_scale", self.d_scale),
            ("s_scale", self.s_scale),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn without_penalty(self) -> Self {
        NgdcParams {
            apply_penalty: false,
            ..self
        }
    }
}

/// Logistic function evaluated without overflow for any finite input.
pub fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

pub fn ngdc_z(d_km: f64, s_m: f64, p: &NgdcParams) -> Result<f64> {
    p.validate()?;
    if !(s_m.is_finite() && s_m > 0.0) {
        return Err(Error::Domain(format!("corpus size must be positive, got {s_m}")));
    }
    if !(d_km.is_finite() && d_km >= 0.0) {
        return Err(Error::Domain(format!("distance must be non-negative, got {d_km}")));
    }
    Ok(p.c * (d_km / p.d_scale) / ((1.0 - p.c) * (s_m / p.s_scale)))
}

/// The coefficient for one (distance, corpus size) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coefficient {
    pub d_km: f64,
    pub s_m: f64,
    pub z: f64,
    pub delta: f64,
    pub penalized: bool,
}

pub fn ngdc_delta(d_km: f64, s_m: f64, p: &NgdcParams) -> Result<Coefficient> {
    let z = ngdc_z(d_km, s_m, p)?;
    let penalized = p.apply_penalty && d_km >= p.d_max_km;
    Ok(Coefficient {
        d_km,
        s_m,
        z,
        delta: if penalized { 1.0 } else { logistic(z) },
        penalized,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NgdcScore {
    pub code: String,
    pub d_km: f64,
    pub s_m: f64,
    pub z: f64,
    pub delta: f64,
    pub penalized: bool,
    pub distance_source: DistanceSource,
}

impl NgdcScore {
    fn new(code: String, c: Coefficient, distance_source: DistanceSource) -> Self {
        NgdcScore {
            code,
            d_km: c.d_km,
            s_m: c.s_m,
            z: c.z,
            delta: c.delta,
            penalized: c.penalized,
            distance_source,
        }
    }
}

/// Ascending δ, then ascending distance, then code.
pub fn ranking_order(a: &NgdcScore, b: &NgdcScore) -> Ordering {
    a.delta
        .total_cmp(&b.delta)
        .then(a.d_km.total_cmp(&b.d_km))
        .then_with(|| a.code.cmp(&b.code))
}

/// Scored candidates, best (lowest δ) first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ranking {
    pub scores: Vec<NgdcScore>,
}

impl Ranking {
    pub fn from_scores(mut scores: Vec<NgdcScore>) -> Self {
        scores.sort_by(ranking_order);
        Ranking { scores }
    }

    pub fn best(&self) -> Option<&NgdcScore> {
        self.scores.first()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, NgdcScore> {
        self.scores.iter()
    }
}

/// Scores every candidate in `registry` (the target is excluded) and orders
/// them. Fails as a whole if any candidate cannot be scored.
pub fn rank_candidates(
    registry: &Registry,
    p: &NgdcParams,
    method: DistanceMethod,
) -> Result<Ranking> {
    p.validate()?;
    let target_centroid = registry.target().and_then(|t| t.centroid);
    let mut scores = Vec::new();
    let mut problems = Vec::new();
    for entry in registry.candidates() {
        let distance = match resolve_against(entry, target_centroid, method) {
            Ok(d) => d,
            Err(e) => {
                problems.push(match e {
                    Error::DistanceUnresolvable { code, reason } => format!("{code}: {reason}"),
                    other => format!("{}: {other}", entry.code),
                });
                continue;
            }
        };
        let Some(size) = entry.corpus_size_m else {
            problems.push(format!("{}: no corpus size", entry.code));
            continue;
        };
        match ngdc_delta(distance.km, size, p) {
            Ok(c) => scores.push(NgdcScore::new(entry.code.clone(), c, distance.source)),
            Err(e) => problems.push(format!("{}: {e}", entry.code)),
        }
    }
    if !problems.is_empty() {
        return Err(Error::Unscorable { problems });
    }
    if scores.is_empty() {
        return Err(Error::NoCandidates);
    }
    Ok(Ranking::from_scores(scores))
}

//! Inverse distance between two points on the Earth.
//!
//! Three algorithms are provided, in increasing order of fidelity:
//!
//! * [`haversine_km`]: great-circle distance on a sphere of mean radius.
//! * [`lambert_km`]: the spherical distance between reduced latitudes with a
//!   first-order flattening correction.
//! * [`vincenty_km`]: Vincenty's iterative inverse solution on the ellipsoid.
//!   It can fail to converge for nearly antipodal points; that outcome is
//!   reported as [`VincentyError`] and never silently replaced.
//!
//! Inputs are always in degrees, outputs in kilometres at full precision.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::registry::LanguageEntry;

/// Mean Earth radius in kilometres used by the spherical formula.
pub const MEAN_RADIUS_KM: f64 = 6371.0;

pub const DEFAULT_VINCENTY_TOL: f64 = 1e-12;
pub const DEFAULT_VINCENTY_MAX_ITER: usize = 200;

/// A latitude/longitude pair in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    lat_deg: f64,
    lon_deg: f64,
}

impl GeoPoint {
    pub fn new(lat_deg: f64, lon_deg: f64) -> Result<Self> {
        if !lat_deg.is_finite() || !(-90.0..=90.0).contains(&lat_deg) {
            return Err(Error::Domain(format!(
                "latitude {lat_deg} outside [-90, 90]"
            )));
        }
        if !lon_deg.is_finite() || !(-180.0..=180.0).contains(&lon_deg) {
            return Err(Error::Domain(format!(
                "longitude {lon_deg} outside [-180, 180]"
            )));
        }
        Ok(GeoPoint { lat_deg, lon_deg })
    }

    pub fn lat_deg(&self) -> f64 {
        self.lat_deg
    }

    pub fn lon_deg(&self) -> f64 {
        self.lon_deg
    }
}

impl fmt::Display for GeoPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lat_deg, self.lon_deg)
    }
}

/// Reference ellipsoid, equatorial radius in kilometres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipsoid {
    equatorial_radius_km: f64,
    flattening: f64,
}

impl Ellipsoid {
    pub const WGS84: Ellipsoid = Ellipsoid {
        equatorial_radius_km: 6378.137,
        flattening: 1.0 / 298.257223563,
    };

    pub fn new(equatorial_radius_km: f64, flattening: f64) -> Result<Self> {
        if !(equatorial_radius_km.is_finite() && equatorial_radius_km > 0.0) {
            return Err(Error::Domain(format!(
                "equatorial radius must be positive, got {equatorial_radius_km}"
            )));
        }
        if !(0.0..1.0).contains(&flattening) {
            return Err(Error::Domain(format!(
                "flattening must lie in [0, 1), got {flattening}"
            )));
        }
        Ok(Ellipsoid {
            equatorial_radius_km,
            flattening,
        })
    }

    pub fn equatorial_radius_km(&self) -> f64 {
        self.equatorial_radius_km
    }

    pub fn flattening(&self) -> f64 {
        self.flattening
    }

    pub fn polar_radius_km(&self) -> f64 {
        self.equatorial_radius_km * (1.0 - self.flattening)
    }

    fn reduced_latitude(&self, lat_rad: f64) -> f64 {
        ((1.0 - self.flattening) * lat_rad.tan()).atan()
    }
}

impl Default for Ellipsoid {
    fn default() -> Self {
        Ellipsoid::WGS84
    }
}

/// Longitude difference `to - from` wrapped into [-180, 180), in degrees.
fn lon_delta_deg(from: f64, to: f64) -> f64 {
    (to - from + 180.0).rem_euclid(360.0) - 180.0
}

/// Central angle on the unit sphere between two (lat, lon) pairs in radians.
fn central_angle(lat1: f64, lat2: f64, dlon: f64) -> f64 {
    let s_lat = ((lat2 - lat1) / 2.0).sin();
    let s_lon = (dlon / 2.0).sin();
    let h = (s_lat * s_lat + lat1.cos() * lat2.cos() * s_lon * s_lon).clamp(0.0, 1.0);
    2.0 * h.sqrt().asin()
}

/// Great-circle distance on a sphere of radius [`MEAN_RADIUS_KM`].
pub fn haversine_km(p1: GeoPoint, p2: GeoPoint) -> f64 {
    let dlon = lon_delta_deg(p1.lon_deg, p2.lon_deg).to_radians();
    MEAN_RADIUS_KM * central_angle(p1.lat_deg.to_radians(), p2.lat_deg.to_radians(), dlon)
}

/// Lambert's formula for long lines: the central angle between reduced
/// latitudes, corrected to first order in the flattening.
pub fn lambert_km(p1: GeoPoint, p2: GeoPoint, e: Ellipsoid) -> f64 {
    let f = e.flattening;
    let beta1 = e.reduced_latitude(p1.lat_deg.to_radians());
    let beta2 = e.reduced_latitude(p2.lat_deg.to_radians());
    let dlon = lon_delta_deg(p1.lon_deg, p2.lon_deg).to_radians();
    let sigma = central_angle(beta1, beta2, dlon);
    if sigma == 0.0 {
        return 0.0;
    }

    let p = (beta1 + beta2) / 2.0;
    let q = (beta2 - beta1) / 2.0;
    let (sin_p, cos_p) = p.sin_cos();
    let (sin_q, cos_q) = q.sin_cos();
    let (sin_half, cos_half) = (sigma / 2.0).sin_cos();

    // Each correction term is 0/0 in its degenerate limit (antipodal for X,
    // coincident for Y); the numerator vanishes faster, so the limit is 0.
    let x_num = (sigma - sigma.sin()) * sin_p * sin_p * cos_q * cos_q;
    let x = if x_num == 0.0 { 0.0 } else { x_num / (cos_half * cos_half) };
    let y_num = (sigma + sigma.sin()) * cos_p * cos_p * sin_q * sin_q;
    let y = if y_num == 0.0 { 0.0 } else { y_num / (sin_half * sin_half) };

    e.equatorial_radius_km * (sigma - f / 2.0 * (x + y))
}

/// Vincenty's inverse method did not settle within the iteration budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VincentyError {
    pub iterations: usize,
    /// Last change in the auxiliary-sphere longitude, radians.
    pub last_update: f64,
}

impl fmt::Display for VincentyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Vincenty inverse did not converge after {} iterations (last update {:e} rad)",
            self.iterations, self.last_update
        )
    }
}

impl std::error::Error for VincentyError {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VincentySolution {
    pub distance_km: f64,
    pub iterations: usize,
}

/// Vincenty's inverse geodesic distance.
///
/// `tol` bounds the change of the auxiliary longitude between iterations.
/// Divergence of the auxiliary longitude is treated the same as running out
/// of iterations.
pub fn vincenty_km(
    p1: GeoPoint,
    p2: GeoPoint,
    e: Ellipsoid,
    tol: f64,
    max_iter: usize,
) -> std::result::Result<VincentySolution, VincentyError> {
    assert!(tol > 0.0, "tolerance must be positive");
    assert!(max_iter >= 1, "max_iter must be at least 1");

    let a = e.equatorial_radius_km;
    let f = e.flattening;
    let b = e.polar_radius_km();

    let l = lon_delta_deg(p1.lon_deg, p2.lon_deg).to_radians();
    let (sin_u1, cos_u1) = e.reduced_latitude(p1.lat_deg.to_radians()).sin_cos();
    let (sin_u2, cos_u2) = e.reduced_latitude(p2.lat_deg.to_radians()).sin_cos();

    // For nearly antipodal configurations λ may legitimately exceed π.
    let antipodal = l.abs() > PI / 2.0
        || (e.reduced_latitude(p2.lat_deg.to_radians()) - e.reduced_latitude(p1.lat_deg.to_radians()))
            .abs()
            > PI / 2.0;

    let mut lambda = l;
    let mut iterations = 0;
    loop {
        iterations += 1;
        let (sin_lambda, cos_lambda) = lambda.sin_cos();
        let t1 = cos_u2 * sin_lambda;
        let t2 = cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_lambda;
        let sin_sigma = (t1 * t1 + t2 * t2).sqrt();
        if sin_sigma == 0.0 {
            return Ok(VincentySolution {
                distance_km: 0.0,
                iterations,
            });
        }
        let cos_sigma = sin_u1 * sin_u2 + cos_u1 * cos_u2 * cos_lambda;
        let sigma = sin_sigma.atan2(cos_sigma);
        let sin_alpha = cos_u1 * cos_u2 * sin_lambda / sin_sigma;
        let cos2_alpha = 1.0 - sin_alpha * sin_alpha;
        // equatorial line: cos²α = 0
        let cos_2sigma_m = if cos2_alpha != 0.0 {
            cos_sigma - 2.0 * sin_u1 * sin_u2 / cos2_alpha
        } else {
            0.0
        };
        let c = f / 16.0 * cos2_alpha * (4.0 + f * (4.0 - 3.0 * cos2_alpha));
        let previous = lambda;
        lambda = l
            + (1.0 - c)
                * f
                * sin_alpha
                * (sigma
                    + c * sin_sigma
                        * (cos_2sigma_m
                            + c * cos_sigma * (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m)));
        let update = (lambda - previous).abs();

        let excursion = if antipodal { lambda.abs() - PI } else { lambda.abs() };
        if excursion > PI || !lambda.is_finite() {
            return Err(VincentyError {
                iterations,
                last_update: update,
            });
        }
        if update < tol {
            let u2 = cos2_alpha * (a * a - b * b) / (b * b);
            let big_a =
                1.0 + u2 / 16384.0 * (4096.0 + u2 * (-768.0 + u2 * (320.0 - 175.0 * u2)));
            let big_b = u2 / 1024.0 * (256.0 + u2 * (-128.0 + u2 * (74.0 - 47.0 * u2)));
            let c2m2 = cos_2sigma_m * cos_2sigma_m;
            let delta_sigma = big_b
                * sin_sigma
                * (cos_2sigma_m
                    + big_b / 4.0
                        * (cos_sigma * (-1.0 + 2.0 * c2m2)
                            - big_b / 6.0
                                * cos_2sigma_m
                                * (-3.0 + 4.0 * sin_sigma * sin_sigma)
                                * (-3.0 + 4.0 * c2m2)));
            return Ok(VincentySolution {
                distance_km: b * big_a * (sigma - delta_sigma),
                iterations,
            });
        }
        if iterations >= max_iter {
            return Err(VincentyError {
                iterations,
                last_update: update,
            });
        }
    }
}

/// How a candidate's distance to the target is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    /// Published distance if recorded, otherwise Vincenty with haversine fallback.
    #[default]
    PublishedFirst,
    Haversine,
    Lambert,
    Vincenty,
}

impl DistanceMethod {
    pub fn name(&self) -> &'static str {
        match self {
            DistanceMethod::PublishedFirst => "published",
            DistanceMethod::Haversine => "haversine",
            DistanceMethod::Lambert => "lambert",
            DistanceMethod::Vincenty => "vincenty",
        }
    }
}

/// Where a resolved distance came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceSource {
    Published,
    Haversine,
    Lambert,
    Vincenty,
    /// Vincenty did not converge; the haversine value was used instead.
    HaversineFallback,
}

impl DistanceSource {
    pub fn name(&self) -> &'static str {
        match self {
            DistanceSource::Published => "published",
            DistanceSource::Haversine => "haversine",
            DistanceSource::Lambert => "lambert",
            DistanceSource::Vincenty => "vincenty",
            DistanceSource::HaversineFallback => "haversine (vincenty fallback)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedDistance {
    pub km: f64,
    pub source: DistanceSource,
}

/// Distance between two points using `method`; `PublishedFirst` behaves like
/// `Vincenty` here since points carry no published value.
pub fn point_distance(p1: GeoPoint, p2: GeoPoint, method: DistanceMethod) -> ResolvedDistance {
    match method {
        DistanceMethod::Haversine => ResolvedDistance {
            km: haversine_km(p1, p2),
            source: DistanceSource::Haversine,
        },
        DistanceMethod::Lambert => ResolvedDistance {
            km: lambert_km(p1, p2, Ellipsoid::WGS84),
            source: DistanceSource::Lambert,
        },
        DistanceMethod::Vincenty | DistanceMethod::PublishedFirst => {
            match vincenty_km(
                p1,
                p2,
                Ellipsoid::WGS84,
                DEFAULT_VINCENTY_TOL,
                DEFAULT_VINCENTY_MAX_ITER,
            ) {
                Ok(sol) => ResolvedDistance {
                    km: sol.distance_km,
                    source: DistanceSource::Vincenty,
                },
                Err(_) => ResolvedDistance {
                    km: haversine_km(p1, p2),
                    source: DistanceSource::HaversineFallback,
                },
            }
        }
    }
}

/// Distance from `entry` to the `target` language.
pub fn resolve_distance_km(
    entry: &LanguageEntry,
    target: &LanguageEntry,
    method: DistanceMethod,
) -> Result<ResolvedDistance> {
    resolve_against(entry, target.centroid, method)
}

pub(crate) fn resolve_against(
    entry: &LanguageEntry,
    target_centroid: Option<GeoPoint>,
    method: DistanceMethod,
) -> Result<ResolvedDistance> {
    if method == DistanceMethod::PublishedFirst {
        if let Some(km) = entry.published_gd_km {
            return Ok(ResolvedDistance {
                km,
                source: DistanceSource::Published,
            });
        }
    }
    match (entry.centroid, target_centroid) {
        (Some(p1), Some(p2)) => Ok(point_distance(p1, p2, method)),
        (None, _) => Err(Error::DistanceUnresolvable {
            code: entry.code.clone(),
            reason: if method == DistanceMethod::PublishedFirst {
                "no published distance and no centroid".into()
            } else {
                format!("{} needs a centroid", method.name())
            },
        }),
        (Some(_), None) => Err(Error::DistanceUnresolvable {
            code: entry.code.clone(),
            reason: "target language has no centroid".into(),
        }),
    }
}

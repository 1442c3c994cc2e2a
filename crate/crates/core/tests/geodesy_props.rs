use std::f64::consts::PI;

use geographiclib_rs::{Geodesic, InverseGeodesic};
use ngdc::geodesy::{
    haversine_km, lambert_km, resolve_distance_km, vincenty_km, DistanceMethod, DistanceSource,
    Ellipsoid, GeoPoint, MEAN_RADIUS_KM,
};
use ngdc::{Error, LanguageEntry};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = GeoPoint> {
    (-90.0f64..=90.0, -180.0f64..=180.0).prop_map(|(lat, lon)| GeoPoint::new(lat, lon).unwrap())
}

fn vincenty(p1: GeoPoint, p2: GeoPoint) -> Option<f64> {
    vincenty_km(p1, p2, Ellipsoid::WGS84, 1e-12, 200)
        .ok()
        .map(|s| s.distance_km)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn identity(p in point()) {
        prop_assert_eq!(haversine_km(p, p), 0.0);
        prop_assert_eq!(lambert_km(p, p, Ellipsoid::WGS84), 0.0);
        prop_assert_eq!(vincenty(p, p), Some(0.0));
    }

    #[test]
    fn symmetry_and_bounds(p1 in point(), p2 in point()) {
        let h = haversine_km(p1, p2);
        prop_assert!((h - haversine_km(p2, p1)).abs() <= 1e-9);
        prop_assert!((0.0..=PI * MEAN_RADIUS_KM).contains(&h));
        let l = lambert_km(p1, p2, Ellipsoid::WGS84);
        prop_assert!((l - lambert_km(p2, p1, Ellipsoid::WGS84)).abs() <= 1e-9);
        if let (Some(a), Some(b)) = (vincenty(p1, p2), vincenty(p2, p1)) {
            prop_assert!((a - b).abs() <= 1e-9, "{} vs {}", a, b);
        }
    }

    #[test]
    fn lambert_tracks_vincenty_and_haversine(p1 in point(), p2 in point()) {
        let l = lambert_km(p1, p2, Ellipsoid::WGS84);
        let h = haversine_km(p1, p2);
        prop_assert!((l - h).abs() / h.max(1.0) < 0.006);
        if let Some(v) = vincenty(p1, p2) {
            prop_assert!((l - v).abs() / v.max(1.0) < 0.005);
        }
    }

    #[test]
    fn vincenty_agrees_with_karney(p1 in point(), p2 in point()) {
        let karney: f64 = Geodesic::wgs84().inverse(p1.lat_deg(), p1.lon_deg(), p2.lat_deg(), p2.lon_deg());
        if let Some(v) = vincenty(p1, p2) {
            prop_assert!((v - karney / 1000.0).abs() < 1e-6, "{} vs {}", v, karney / 1000.0);
        }
    }

    #[test]
    fn longitude_wrap(lat in -90.0f64..=90.0) {
        let a = GeoPoint::new(lat, 180.0).unwrap();
        let b = GeoPoint::new(lat, -180.0).unwrap();
        prop_assert!(haversine_km(a, b) < 1e-6);
        prop_assert!(lambert_km(a, b, Ellipsoid::WGS84) < 1e-6);
        prop_assert!(vincenty(a, b).unwrap() < 1e-6);
    }
}

#[test]
fn near_antipodal_runs_out_of_iterations() {
    let p1 = GeoPoint::new(0.0, 0.0).unwrap();
    let p2 = GeoPoint::new(0.5, 179.7).unwrap();
    let err = vincenty_km(p1, p2, Ellipsoid::WGS84, 1e-12, 200).unwrap_err();
    assert_eq!(err.iterations, 200);
    // A pair close to it that does converge must give the right answer.
    let p3 = GeoPoint::new(0.5, 179.5).unwrap();
    let sol = vincenty_km(p1, p3, Ellipsoid::WGS84, 1e-12, 200).unwrap();
    let karney: f64 = Geodesic::wgs84().inverse(0.0, 0.0, 0.5, 179.5);
    assert!((sol.distance_km - karney / 1000.0).abs() < 1e-6);
    assert!(sol.iterations > 1);
}

fn entry(code: &str, centroid: Option<(f64, f64)>, published: Option<f64>) -> LanguageEntry {
    let mut e = LanguageEntry::new(code, code);
    e.centroid = centroid.map(|(lat, lon)| GeoPoint::new(lat, lon).unwrap());
    e.published_gd_km = published;
    e
}

#[test]
fn resolve_prefers_published_value() {
    let target = entry("zul", Some((-28.5, 31.0)), None);
    let xho = entry("xho", Some((-32.0, 27.0)), Some(1000.0));
    let d = resolve_distance_km(&xho, &target, DistanceMethod::PublishedFirst).unwrap();
    assert_eq!((d.km, d.source), (1000.0, DistanceSource::Published));
    let d = resolve_distance_km(&xho, &target, DistanceMethod::Haversine).unwrap();
    assert_eq!(d.source, DistanceSource::Haversine);
    assert!(d.km > 0.0 && d.km != 1000.0);
}

#[test]
fn resolve_same_centroid_is_zero() {
    let target = entry("zul", Some((-28.5, 31.0)), None);
    let twin = entry("twin", Some((-28.5, 31.0)), None);
    for method in [
        DistanceMethod::PublishedFirst,
        DistanceMethod::Haversine,
        DistanceMethod::Lambert,
        DistanceMethod::Vincenty,
    ] {
        assert_eq!(resolve_distance_km(&twin, &target, method).unwrap().km, 0.0);
    }
}

#[test]
fn resolve_without_source_fails_naming_entry() {
    let target = entry("zul", Some((-28.5, 31.0)), None);
    let lost = entry("lost", None, None);
    match resolve_distance_km(&lost, &target, DistanceMethod::PublishedFirst) {
        Err(Error::DistanceUnresolvable { code, .. }) => assert_eq!(code, "lost"),
        other => panic!("{other:?}"),
    }
    let published_only = entry("pub", None, Some(10.0));
    assert!(resolve_distance_km(&published_only, &target, DistanceMethod::Vincenty).is_err());
}

#[test]
fn resolve_falls_back_to_haversine() {
    let target = entry("a", Some((0.0, 0.0)), None);
    let far = entry("b", Some((0.5, 179.7)), None);
    let d = resolve_distance_km(&far, &target, DistanceMethod::PublishedFirst).unwrap();
    assert_eq!(d.source, DistanceSource::HaversineFallback);
    assert_eq!(d.km, haversine_km(far.centroid.unwrap(), target.centroid.unwrap()));
}

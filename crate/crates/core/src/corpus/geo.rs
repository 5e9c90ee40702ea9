//! Great-circle geometry on the mean-Earth sphere.

use super::CorpusError;

/// IUGG mean Earth radius.
pub const EARTH_RADIUS_KM: f64 = 6371.0088;

/// A latitude/longitude pair in degrees, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPoint {
    lat: f64,
    lon: f64,
}

impl GeoPoint {
    pub fn new(lat: f64, lon: f64) -> Result<Self, CorpusError> {
        if !(-90.0..=90.0).contains(&lat) || !(-180.0..=180.0).contains(&lon) || lat.is_nan() {
            return Err(CorpusError::CoordinatesOutOfBounds {
                id: String::new(),
                lat,
                lon,
            });
        }
        Ok(GeoPoint { lat, lon })
    }

    pub fn lat(&self) -> f64 {
        self.lat
    }

    pub fn lon(&self) -> f64 {
        self.lon
    }
}

/// Haversine great-circle distance in kilometres.
///
/// Symmetric and non-negative; zero for identical points.
pub fn haversine_km(a: GeoPoint, b: GeoPoint) -> f64 {
    let (lat1, lon1) = (a.lat.to_radians(), a.lon.to_radians());
    let (lat2, lon2) = (b.lat.to_radians(), b.lon.to_radians());
    let sin_dlat = ((lat2 - lat1) / 2.0).sin();
    let sin_dlon = ((lon2 - lon1) / 2.0).sin();
    let h = sin_dlat * sin_dlat + lat1.cos() * lat2.cos() * sin_dlon * sin_dlon;
    2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(lat: f64, lon: f64) -> GeoPoint {
        GeoPoint::new(lat, lon).unwrap()
    }

    /// Spherical law of cosines, an independent route to the same distance.
    fn law_of_cosines_km(a: GeoPoint, b: GeoPoint) -> f64 {
        let (lat1, lon1) = (a.lat().to_radians(), a.lon().to_radians());
        let (lat2, lon2) = (b.lat().to_radians(), b.lon().to_radians());
        let c = lat1.sin() * lat2.sin() + lat1.cos() * lat2.cos() * (lon2 - lon1).cos();
        EARTH_RADIUS_KM * c.clamp(-1.0, 1.0).acos()
    }

    #[test]
    fn identical_points_have_zero_distance() {
        assert_eq!(haversine_km(pt(48.85, 2.35), pt(48.85, 2.35)), 0.0);
    }

    #[test]
    fn antipodal_points_are_half_a_great_circle() {
        let d = haversine_km(pt(0.0, 0.0), pt(0.0, 180.0));
        let expected = std::f64::consts::PI * EARTH_RADIUS_KM;
        assert!((d - expected).abs() < 1e-6, "got {d}, want {expected}");
    }

    #[test]
    fn matches_law_of_cosines_on_random_pairs() {
        // 20 fixed pseudo-random pairs; the law-of-cosines formula is the
        // independent oracle. Points kept away from near-antipodal angles
        // where acos loses precision.
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..20 {
            let a = pt(next() * 160.0 - 80.0, next() * 340.0 - 170.0);
            let b = pt(next() * 160.0 - 80.0, next() * 340.0 - 170.0);
            let (h, o) = (haversine_km(a, b), law_of_cosines_km(a, b));
            let rel = (h - o).abs() / o.max(1e-9);
            assert!(rel < 1e-6, "{a:?} {b:?}: haversine {h} vs oracle {o}");
        }
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(GeoPoint::new(90.1, 0.0).is_err());
        assert!(GeoPoint::new(0.0, -180.1).is_err());
        assert!(GeoPoint::new(-90.0, 180.0).is_ok());
    }

    proptest! {
        #[test]
        fn symmetric_and_nonnegative(
            lat1 in -90.0f64..90.0, lon1 in -180.0f64..180.0,
            lat2 in -90.0f64..90.0, lon2 in -180.0f64..180.0,
        ) {
            let (a, b) = (pt(lat1, lon1), pt(lat2, lon2));
            let (ab, ba) = (haversine_km(a, b), haversine_km(b, a));
            prop_assert!(ab >= 0.0);
            prop_assert_eq!(ab, ba);
        }

        #[test]
        fn triangle_inequality_on_the_sphere(
            lat1 in -90.0f64..90.0, lon1 in -180.0f64..180.0,
            lat2 in -90.0f64..90.0, lon2 in -180.0f64..180.0,
            lat3 in -90.0f64..90.0, lon3 in -180.0f64..180.0,
        ) {
            let (a, b, c) = (pt(lat1, lon1), pt(lat2, lon2), pt(lat3, lon3));
            prop_assert!(haversine_km(a, c) <= haversine_km(a, b) + haversine_km(b, c) + 1e-9);
        }
    }
}

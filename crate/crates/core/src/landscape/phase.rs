use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// One angle per vertex, in radians. The oscillator state `θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseConfig(Vec<f64>);

impl PhaseConfig {
    /// Rejects non-finite angles.
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if let Some(i) = angles.iter().position(|a| !a.is_finite()) {
            return Err(Error::InvalidParameters(format!(
                "angle of vertex {} is not finite",
                i + 1
            )));
        }
        Ok(PhaseConfig(angles))
    }

    pub(crate) fn from_raw(angles: Vec<f64>) -> Self {
        PhaseConfig(angles)
    }

    /// All `n` angles equal to `c`.
    pub fn synchronous(n: usize, c: f64) -> Self {
        PhaseConfig(vec![c; n])
    }

    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    pub fn into_angles(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every angle wrapped to `(−π, π]`.
    pub fn wrapped(&self) -> PhaseConfig {
        PhaseConfig(self.0.iter().map(|&a| wrap_angle(a)).collect())
    }

    /// Parses one decimal angle per line; blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut angles = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let a: f64 = line.parse().map_err(|_| Error::MalformedFile {
                line: i + 1,
                message: format!("{line:?} is not a number"),
            })?;
            if !a.is_finite() {
                return Err(Error::MalformedFile {
                    line: i + 1,
                    message: "angle is not finite".into(),
                });
            }
            angles.push(a);
        }
        Ok(PhaseConfig(angles))
    }

    /// One angle per line with 17 significant digits.
    pub fn to_text(&self) -> String {
        self.0
            .iter()
            .map(|&a| format!("{}\n", crate::json::format_f64(a)))
            .collect()
    }
}

/// Wraps to `(−π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Distance between two angles along the circle, in `[0, π]`.
pub fn geodesic(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// Largest pairwise geodesic distance.
///
/// For each point the farthest one is whichever lies closest to its
/// antipode, found by binary search over the sorted wrapped angles.
pub fn circular_diameter(angles: &[f64]) -> f64 {
    let mut sorted: Vec<f64> = angles.iter().map(|&a| wrap_angle(a)).collect();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len();
    if m < 2 {
        return 0.0;
    }
    let mut best = 0.0f64;
    for &a in &sorted {
        let target = wrap_angle(a + PI);
        let idx = sorted.partition_point(|&x| x < target);
        for cand in [idx % m, (idx + m - 1) % m] {
            best = best.max(geodesic(a, sorted[cand]));
        }
    }
    best
}

/// True iff the circular diameter is below `tol`.
pub fn is_synchronous(theta: &PhaseConfig, tol: f64) -> bool {
    circular_diameter(theta.angles()) < tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_diameter(a: &[f64]) -> f64 {
        let mut best = 0.0f64;
        for &x in a {
            for &y in a {
                best = best.max(geodesic(x, y));
            }
        }
        best
    }

    #[test]
    fn wrap_range() {
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_angle(0.0), 0.0);
    }

    #[test]
    fn synchrony_examples() {
        let s = |v: &[f64]| PhaseConfig::new(v.to_vec()).unwrap();
        assert!(is_synchronous(&s(&[0.1, 0.1, 0.1]), 1e-6));
        assert!(!is_synchronous(&s(&[0.0, PI]), 1e-6));
        assert!(is_synchronous(&s(&[-PI + 1e-9, PI - 1e-9]), 1e-6));
        assert!(is_synchronous(&s(&[0.4]), 1e-6));
    }

    #[test]
    fn parse_text() {
        let c = PhaseConfig::parse("0.5\n\n# x\n-1e-3\n").unwrap();
        assert_eq!(c.angles(), &[0.5, -1e-3]);
        assert!(matches!(
            PhaseConfig::parse("0.5\nabc\n"),
            Err(Error::MalformedFile { line: 2, .. })
        ));
        let back = PhaseConfig::parse(&c.to_text()).unwrap();
        assert_eq!(back, c);
        assert!(PhaseConfig::new(vec![f64::NAN]).is_err());
    }

    proptest! {
        #[test]
        fn diameter_matches_brute_force(v in proptest::collection::vec(-10.0f64..10.0, 1..40)) {
            let fast = circular_diameter(&v);
            prop_assert!((fast - brute_diameter(&v)).abs() < 1e-12);
            prop_assert!((0.0..=PI).contains(&fast));
        }

        #[test]
        fn wrap_lands_in_half_open_interval(x in -1e4f64..1e4) {
            let w = wrap_angle(x);
            prop_assert!(w > -PI && w <= PI);
            prop_assert!(geodesic(w, x) < 1e-9);
        }
    }
}

//! Sampled verification of `||T(x) - T(y)|| <= ||x - y||`.

use crate::error::Result;
use crate::map::MapSpec;
use crate::metric::{MetricSpec, Point};
use crate::scalar::Scalar;

/// One sampled expansion.
#[derive(Debug, Clone)]
pub struct ExpansionViolation<T> {
    pub pair: usize,
    pub input_distance: T,
    pub output_distance: T,
    /// Output over input distance, when the input distance is nonzero.
    pub ratio: Option<T>,
}

#[derive(Debug, Clone)]
pub struct NonexpansivenessReport<T> {
    pub pairs_checked: usize,
    pub violations: Vec<ExpansionViolation<T>>,
}

impl<T> NonexpansivenessReport<T> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the Euclidean nonexpansiveness inequality on the given point pairs.
pub fn nonexpansiveness_check<T: Scalar>(
    map: &MapSpec<T>,
    pairs: &[(Point<T>, Point<T>)],
    tol: T,
) -> Result<NonexpansivenessReport<T>> {
    let metric = MetricSpec::Euclidean;
    let mut violations = Vec::new();
    for (idx, (x, y)) in pairs.iter().enumerate() {
        let input_distance = metric.distance(x, y)?;
        let output_distance = metric.distance(&map.eval(x)?, &map.eval(y)?)?;
        if output_distance > input_distance + tol {
            let ratio = if input_distance > T::zero() {
                Some(output_distance / input_distance)
            } else {
                None
            };
            violations.push(ExpansionViolation {
                pair: idx,
                input_distance,
                output_distance,
                ratio,
            });
        }
    }
    Ok(NonexpansivenessReport {
        pairs_checked: pairs.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coords: &[f64]) -> Point<f64> {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn rotation_is_an_isometry_on_samples() {
        let rot = MapSpec::rotation_2d(1.234);
        let pairs: Vec<_> = (0..100)
            .map(|i| {
                let a = i as f64 * 0.37 - 18.0;
                let b = i as f64 * 0.11 + 3.0;
                (p(&[a, b]), p(&[b - a, a * 0.5]))
            })
            .collect();
        let report = nonexpansiveness_check(&rot, &pairs, 1e-10).unwrap();
        assert!(report.passed());
        assert_eq!(report.pairs_checked, 100);
    }

    #[test]
    fn doubling_map_is_flagged_with_ratio_two() {
        let expand = MapSpec::scale(2.0);
        let pairs = vec![(p(&[0.0, 0.0]), p(&[1.0, 0.0]))];
        let report = nonexpansiveness_check(&expand, &pairs, 1e-10).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].ratio, Some(2.0));
    }
}

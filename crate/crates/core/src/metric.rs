//! Points in a finite-dimensional real vector space and the metrics on them.
//!
//! The space is always `R^d` with one of four metrics (Euclidean, l1, l-inf,
//! weighted Euclidean), so completeness holds and every distance is finite.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A dense point of `R^d`, `d >= 1`, with all coordinates finite.
///
/// Finiteness is enforced at construction; scalars are dimension-1 points.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<T> {
    coords: Vec<T>,
}

impl<T: Scalar> Point<T> {
    /// Builds a point, rejecting empty coordinate lists and non-finite entries.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        for (index, c) in coords.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFiniteCoordinate { index });
            }
        }
        Ok(Self { coords })
    }

    /// Dimension-1 convenience constructor.
    pub fn scalar(v: T) -> Result<Self> {
        Self::new(vec![v])
    }

    /// The origin of `R^dim`.
    pub fn origin(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyPoint);
        }
        Ok(Self {
            coords: vec![T::zero(); dim],
        })
    }

    /// Wraps map output, converting non-finite coordinates into an overflow error.
    pub(crate) fn from_map_output(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::EvalOverflow);
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    /// Euclidean norm of the coordinate vector.
    pub fn l2_norm(&self) -> T {
        l2_norm(&self.coords)
    }
}

impl<T> std::ops::Index<usize> for Point<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}

pub(crate) fn check_same_dim(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

/// Euclidean norm of a raw slice.
pub fn l2_norm<T: Scalar>(v: &[T]) -> T {
    v.iter().map(|&c| c * c).sum::<T>().sqrt()
}

/// Dot product of two equal-length slices.
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b.iter()).map(|(&x, &y)| x * y).sum()
}

/// Which metric `d(.,.)` to use on `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricSpec<T> {
    Euclidean,
    L1,
    Linf,
    /// `sqrt(sum_i w_i (x_i - y_i)^2)` with strictly positive weights.
    WeightedEuclidean { weights: Vec<T> },
}

impl<T: Scalar> MetricSpec<T> {
    /// Checks that weights (when present) are usable for points of `dim` coordinates.
    pub fn validate_for_dim(&self, dim: usize) -> Result<()> {
        if let MetricSpec::WeightedEuclidean { weights } = self {
            if weights.len() != dim {
                return Err(Error::InvalidWeights {
                    reason: format!("expected {} weights, got {}", dim, weights.len()),
                });
            }
            for (i, w) in weights.iter().enumerate() {
                if !w.is_finite() || *w <= T::zero() {
                    return Err(Error::InvalidWeights {
                        reason: format!("weight {i} must be finite and strictly positive"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self, MetricSpec::Euclidean)
    }

    /// Distance `d(x, y)`; zero exactly when the coordinate lists are identical.
    pub fn distance(&self, x: &Point<T>, y: &Point<T>) -> Result<T> {
        check_same_dim(x.dim(), y.dim())?;
        self.validate_for_dim(x.dim())?;
        let xs = x.coords();
        let ys = y.coords();
        let d = match self {
            MetricSpec::Euclidean => xs
                .iter()
                .zip(ys)
                .map(|(&a, &b)| {
                    let diff = a - b;
                    diff * diff
                })
                .sum::<T>()
                .sqrt(),
            MetricSpec::L1 => xs.iter().zip(ys).map(|(&a, &b)| (a - b).abs()).sum(),
            MetricSpec::Linf => xs
                .iter()
                .zip(ys)
                .map(|(&a, &b)| (a - b).abs())
                .fold(T::zero(), T::max),
            MetricSpec::WeightedEuclidean { weights } => xs
                .iter()
                .zip(ys)
                .zip(weights)
                .map(|((&a, &b), &w)| {
                    let diff = a - b;
                    w * diff * diff
                })
                .sum::<T>()
                .sqrt(),
        };
        Ok(d)
    }
}

/// One sampled failure of a metric axiom.
#[derive(Debug, Clone)]
pub struct AxiomViolation<T> {
    pub triple: usize,
    pub kind: AxiomKind,
    /// How far past the tolerance the check landed.
    pub magnitude: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    NonNegativity,
    IdentityAtEqualArguments,
    Symmetry,
    Triangle,
}

/// Outcome of sampling the metric axioms on point triples.
#[derive(Debug, Clone)]
pub struct AxiomReport<T> {
    pub triples_checked: usize,
    pub violations: Vec<AxiomViolation<T>>,
    /// Smallest triangle slack `d(x,y) + d(y,z) - d(x,z)` seen; equality cases
    /// show up here as zero without being violations.
    pub min_triangle_slack: Option<T>,
    pub max_symmetry_gap: Option<T>,
}

impl<T> AxiomReport<T> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples symmetry and the triangle inequality (all three rotations) on the
/// given triples, plus nonnegativity and `d(x, x) = 0`.
pub fn check_metric_axioms<T: Scalar>(
    metric: &MetricSpec<T>,
    samples: &[(Point<T>, Point<T>, Point<T>)],
    tol: T,
) -> Result<AxiomReport<T>> {
    if tol <= T::zero() {
        return Err(Error::InvalidParameter {
            reason: "axiom check tolerance must be positive".into(),
        });
    }
    let mut report = AxiomReport {
        triples_checked: samples.len(),
        violations: Vec::new(),
        min_triangle_slack: None,
        max_symmetry_gap: None,
    };
    for (idx, (x, y, z)) in samples.iter().enumerate() {
        check_same_dim(x.dim(), y.dim())?;
        check_same_dim(y.dim(), z.dim())?;
        let points = [x, y, z];
        for p in points {
            let self_dist = metric.distance(p, p)?;
            if self_dist != T::zero() {
                report.violations.push(AxiomViolation {
                    triple: idx,
                    kind: AxiomKind::IdentityAtEqualArguments,
                    magnitude: self_dist,
                });
            }
        }
        for (a, b) in [(x, y), (y, z), (x, z)] {
            let fwd = metric.distance(a, b)?;
            let bwd = metric.distance(b, a)?;
            if fwd < T::zero() {
                report.violations.push(AxiomViolation {
                    triple: idx,
                    kind: AxiomKind::NonNegativity,
                    magnitude: -fwd,
                });
            }
            let gap = (fwd - bwd).abs();
            report.max_symmetry_gap = Some(match report.max_symmetry_gap {
                Some(g) => g.max(gap),
                None => gap,
            });
            if gap > tol {
                report.violations.push(AxiomViolation {
                    triple: idx,
                    kind: AxiomKind::Symmetry,
                    magnitude: gap - tol,
                });
            }
        }
        // d(a, c) <= d(a, b) + d(b, c) for each rotation of the triple.
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            let slack = metric.distance(a, b)? + metric.distance(b, c)? - metric.distance(a, c)?;
            report.min_triangle_slack = Some(match report.min_triangle_slack {
                Some(s) => s.min(slack),
                None => slack,
            });
            if slack < -tol {
                report.violations.push(AxiomViolation {
                    triple: idx,
                    kind: AxiomKind::Triangle,
                    magnitude: -slack - tol,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coords: &[f64]) -> Point<f64> {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn euclidean_three_four_five() {
        let d = MetricSpec::Euclidean
            .distance(&p(&[0.0, 0.0]), &p(&[3.0, 4.0]))
            .unwrap();
        assert_eq!(d, 5.0);
    }

    #[test]
    fn identical_points_have_zero_distance_under_every_metric() {
        let x = p(&[1.5, -2.0]);
        for metric in [
            MetricSpec::Euclidean,
            MetricSpec::L1,
            MetricSpec::Linf,
            MetricSpec::WeightedEuclidean {
                weights: vec![4.0, 1.0],
            },
        ] {
            assert_eq!(metric.distance(&x, &x).unwrap(), 0.0);
        }
    }

    #[test]
    fn weighted_euclidean_hand_value() {
        let metric = MetricSpec::WeightedEuclidean {
            weights: vec![4.0, 1.0],
        };
        let d = metric.distance(&p(&[0.0, 0.0]), &p(&[1.0, 0.0])).unwrap();
        assert_eq!(d, 2.0); // sqrt(4 * 1^2)
    }

    #[test]
    fn unit_weights_match_euclidean_bitwise() {
        let weighted = MetricSpec::WeightedEuclidean {
            weights: vec![1.0, 1.0, 1.0],
        };
        let x = p(&[0.1, -2.7, 3.9]);
        let y = p(&[1.3, 0.2, -0.5]);
        let dw: f64 = weighted.distance(&x, &y).unwrap();
        let de: f64 = MetricSpec::Euclidean.distance(&x, &y).unwrap();
        assert_eq!(dw.to_bits(), de.to_bits());
    }

    #[test]
    fn dimension_mismatch_names_both_dims() {
        let err = MetricSpec::<f64>::Euclidean
            .distance(&p(&[0.0]), &p(&[1.0, 2.0]))
            .unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 1, right: 2 });
    }

    #[test]
    fn missing_weights_are_a_configuration_error() {
        let metric = MetricSpec::WeightedEuclidean {
            weights: vec![1.0],
        };
        assert!(matches!(
            metric.distance(&p(&[0.0, 0.0]), &p(&[1.0, 1.0])),
            Err(Error::InvalidWeights { .. })
        ));
        let nonpositive = MetricSpec::WeightedEuclidean {
            weights: vec![1.0, 0.0],
        };
        assert!(matches!(
            nonpositive.distance(&p(&[0.0, 0.0]), &p(&[1.0, 1.0])),
            Err(Error::InvalidWeights { .. })
        ));
    }

    #[test]
    fn point_construction_rejects_bad_input() {
        assert_eq!(Point::<f64>::new(vec![]).unwrap_err(), Error::EmptyPoint);
        assert_eq!(
            Point::new(vec![0.0, f64::NAN]).unwrap_err(),
            Error::NonFiniteCoordinate { index: 1 }
        );
        assert_eq!(
            Point::new(vec![f64::INFINITY]).unwrap_err(),
            Error::NonFiniteCoordinate { index: 0 }
        );
    }

    #[test]
    fn l1_collinear_triple_reports_zero_slack_without_violation() {
        let samples = vec![(p(&[0.0, 0.0]), p(&[1.0, 0.0]), p(&[1.0, 1.0]))];
        let report = check_metric_axioms(&MetricSpec::L1, &samples, 1e-12).unwrap();
        assert!(report.passed());
        assert_eq!(report.min_triangle_slack, Some(0.0));
    }

    #[test]
    fn degenerate_triple_passes_with_zero_slack() {
        let x = p(&[2.0, -1.0, 0.5]);
        let samples = vec![(x.clone(), x.clone(), x)];
        let report = check_metric_axioms(&MetricSpec::Linf, &samples, 1e-12).unwrap();
        assert!(report.passed());
        assert_eq!(report.min_triangle_slack, Some(0.0));
        assert_eq!(report.max_symmetry_gap, Some(0.0));
    }
}

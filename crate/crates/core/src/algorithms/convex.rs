//! Closed convex sets with closed-form Euclidean projectors.

use crate::error::{Error, Result};
use crate::metric::{check_same_dim, dot, l2_norm, Point};
use crate::scalar::Scalar;

/// Orthonormality slack allowed on affine-subspace bases.
const BASIS_ORTHO_TOL: f64 = 1e-12;

/// A closed convex subset of `R^d` with a closed-form projection.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexSetSpec<T> {
    /// Axis-aligned box `lo <= x <= hi` componentwise.
    Box { lo: Vec<T>, hi: Vec<T> },
    /// Closed Euclidean ball.
    Ball { center: Point<T>, radius: T },
    /// `a . x <= beta`.
    Halfspace { normal: Vec<T>, offset: T },
    /// `a . x = beta`.
    Hyperplane { normal: Vec<T>, offset: T },
    /// `anchor + span(basis)` with an orthonormal direction basis.
    AffineSubspace { basis: Vec<Vec<T>>, anchor: Point<T> },
}

impl<T: Scalar> ConvexSetSpec<T> {
    /// The ambient dimension this set lives in.
    pub fn dim(&self) -> usize {
        match self {
            ConvexSetSpec::Box { lo, .. } => lo.len(),
            ConvexSetSpec::Ball { center, .. } => center.dim(),
            ConvexSetSpec::Halfspace { normal, .. } => normal.len(),
            ConvexSetSpec::Hyperplane { normal, .. } => normal.len(),
            ConvexSetSpec::AffineSubspace { anchor, .. } => anchor.dim(),
        }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        check_same_dim(self.dim(), dim)?;
        let finite = |v: &[T], what: &str| -> Result<()> {
            if v.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidSet {
                    reason: format!("{what} has a non-finite entry"),
                });
            }
            Ok(())
        };
        match self {
            ConvexSetSpec::Box { lo, hi } => {
                if lo.len() != hi.len() {
                    return Err(Error::InvalidSet {
                        reason: format!("box bounds disagree: {} vs {}", lo.len(), hi.len()),
                    });
                }
                finite(lo, "box lower bound")?;
                finite(hi, "box upper bound")?;
                if lo.iter().zip(hi).any(|(l, h)| l > h) {
                    return Err(Error::InvalidSet {
                        reason: "box needs lo <= hi componentwise".into(),
                    });
                }
            }
            ConvexSetSpec::Ball { radius, .. } => {
                if !radius.is_finite() || *radius <= T::zero() {
                    return Err(Error::InvalidSet {
                        reason: "ball radius must be finite and positive".into(),
                    });
                }
            }
            ConvexSetSpec::Halfspace { normal, offset }
            | ConvexSetSpec::Hyperplane { normal, offset } => {
                finite(normal, "normal")?;
                if !offset.is_finite() {
                    return Err(Error::InvalidSet {
                        reason: "offset must be finite".into(),
                    });
                }
                if normal.iter().all(|c| *c == T::zero()) {
                    return Err(Error::InvalidSet {
                        reason: "normal must be nonzero".into(),
                    });
                }
            }
            ConvexSetSpec::AffineSubspace { basis, anchor } => {
                if basis.is_empty() {
                    return Err(Error::InvalidSet {
                        reason: "affine subspace needs at least one direction".into(),
                    });
                }
                if basis.len() > anchor.dim() {
                    return Err(Error::InvalidSet {
                        reason: "more basis directions than ambient dimensions".into(),
                    });
                }
                let tol = T::from_f64(BASIS_ORTHO_TOL);
                for (i, bi) in basis.iter().enumerate() {
                    check_same_dim(bi.len(), anchor.dim())?;
                    finite(bi, "basis direction")?;
                    for (j, bj) in basis.iter().enumerate() {
                        let target = if i == j { T::one() } else { T::zero() };
                        if (dot(bi, bj) - target).abs() > tol {
                            return Err(Error::InvalidSet {
                                reason: format!("basis directions {i},{j} are not orthonormal"),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Euclidean projection of `x` onto the set.
    pub fn project(&self, x: &Point<T>) -> Result<Point<T>> {
        self.validate(x.dim())?;
        let xs = x.coords();
        let out = match self {
            ConvexSetSpec::Box { lo, hi } => xs
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(&c, (&l, &h))| c.max(l).min(h))
                .collect(),
            ConvexSetSpec::Ball { center, radius } => {
                let dist = MetricDistance::euclidean(xs, center.coords());
                if dist <= *radius {
                    return Ok(x.clone());
                }
                let scale = *radius / dist;
                xs.iter()
                    .zip(center.coords())
                    .map(|(&c, &z)| z + scale * (c - z))
                    .collect()
            }
            ConvexSetSpec::Halfspace { normal, offset } => {
                let violation = dot(normal, xs) - *offset;
                if violation <= T::zero() {
                    return Ok(x.clone());
                }
                let scale = violation / dot(normal, normal);
                xs.iter().zip(normal).map(|(&c, &a)| c - scale * a).collect()
            }
            ConvexSetSpec::Hyperplane { normal, offset } => {
                let scale = (dot(normal, xs) - *offset) / dot(normal, normal);
                xs.iter().zip(normal).map(|(&c, &a)| c - scale * a).collect()
            }
            ConvexSetSpec::AffineSubspace { basis, anchor } => {
                let rel: Vec<T> = xs
                    .iter()
                    .zip(anchor.coords())
                    .map(|(&c, &a)| c - a)
                    .collect();
                let mut out: Vec<T> = anchor.coords().to_vec();
                for b in basis {
                    let coeff = dot(&rel, b);
                    for (o, &bc) in out.iter_mut().zip(b) {
                        *o = *o + coeff * bc;
                    }
                }
                out
            }
        };
        Point::from_map_output(out)
    }

    /// How far `x` sits outside the set, in Euclidean terms; zero for members.
    pub fn membership_residual(&self, x: &Point<T>) -> Result<T> {
        self.validate(x.dim())?;
        let xs = x.coords();
        let r = match self {
            ConvexSetSpec::Box { lo, hi } => xs
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(&c, (&l, &h))| (l - c).max(c - h).max(T::zero()))
                .fold(T::zero(), T::max),
            ConvexSetSpec::Ball { center, radius } => {
                (MetricDistance::euclidean(xs, center.coords()) - *radius).max(T::zero())
            }
            ConvexSetSpec::Halfspace { normal, offset } => {
                (dot(normal, xs) - *offset).max(T::zero()) / l2_norm(normal)
            }
            ConvexSetSpec::Hyperplane { normal, offset } => {
                (dot(normal, xs) - *offset).abs() / l2_norm(normal)
            }
            ConvexSetSpec::AffineSubspace { .. } => {
                let proj = self.project(x)?;
                MetricDistance::euclidean(xs, proj.coords())
            }
        };
        Ok(r)
    }
}

struct MetricDistance;

impl MetricDistance {
    fn euclidean<T: Scalar>(a: &[T], b: &[T]) -> T {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                let d = x - y;
                d * d
            })
            .sum::<T>()
            .sqrt()
    }
}

//! Proximal operators with closed forms.

use crate::error::{Error, Result};
use crate::metric::Point;
use crate::scalar::Scalar;

use super::convex::ConvexSetSpec;

/// A function `g` whose proximal operator
/// `prox_{lambda g}(x) = argmin_u g(u) + ||u - x||^2 / (2 lambda)`
/// has a closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum ProxSpec<T> {
    /// `g(u) = (weight / 2) ||u - center||^2`.
    Quadratic { center: Point<T>, weight: T },
    /// `g(u) = weight * ||u||_1`, the componentwise soft threshold.
    L1 { weight: T },
    /// Indicator of a closed convex set; the prox is the projection.
    Indicator(ConvexSetSpec<T>),
}

impl<T: Scalar> ProxSpec<T> {
    /// Ambient dimension when the operator pins one down.
    pub fn dim(&self) -> Option<usize> {
        match self {
            ProxSpec::Quadratic { center, .. } => Some(center.dim()),
            ProxSpec::L1 { .. } => None,
            ProxSpec::Indicator(set) => Some(set.dim()),
        }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        match self {
            ProxSpec::Quadratic { center, weight } => {
                if !weight.is_finite() || *weight <= T::zero() {
                    return Err(Error::InvalidProx {
                        reason: "quadratic weight must be finite and positive".into(),
                    });
                }
                if center.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        left: center.dim(),
                        right: dim,
                    });
                }
            }
            ProxSpec::L1 { weight } => {
                if !weight.is_finite() || *weight <= T::zero() {
                    return Err(Error::InvalidProx {
                        reason: "l1 weight must be finite and positive".into(),
                    });
                }
            }
            ProxSpec::Indicator(set) => set.validate(dim)?,
        }
        Ok(())
    }

    /// `prox_{lambda g}(x)`.
    pub fn prox(&self, lambda: T, x: &Point<T>) -> Result<Point<T>> {
        if !lambda.is_finite() || lambda <= T::zero() {
            return Err(Error::InvalidParameter {
                reason: format!("prox step lambda={lambda} must be finite and positive"),
            });
        }
        self.validate(x.dim())?;
        match self {
            ProxSpec::Quadratic { center, weight } => {
                let lw = lambda * *weight;
                let denom = T::one() + lw;
                let out = x
                    .coords()
                    .iter()
                    .zip(center.coords())
                    .map(|(&c, &z)| (c + lw * z) / denom)
                    .collect();
                Point::from_map_output(out)
            }
            ProxSpec::L1 { weight } => {
                let t = lambda * *weight;
                let out = x.coords().iter().map(|&c| soft_threshold(c, t)).collect();
                Point::from_map_output(out)
            }
            ProxSpec::Indicator(set) => set.project(x),
        }
    }
}

/// Scalar soft threshold: shrink toward zero by `t`, clamping to exact zero.
pub fn soft_threshold<T: Scalar>(v: T, t: T) -> T {
    if v > t {
        v - t
    } else if v < -t {
        v + t
    } else {
        T::zero()
    }
}

/// Free-function form of the proximal step.
pub fn prox_step<T: Scalar>(spec: &ProxSpec<T>, lambda: T, x: &Point<T>) -> Result<Point<T>> {
    spec.prox(lambda, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coords: &[f64]) -> Point<f64> {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn l1_soft_threshold_hand_value() {
        let spec = ProxSpec::L1 { weight: 1.0 };
        let out = spec.prox(1.0, &p(&[3.0, -0.5])).unwrap();
        assert_eq!(out.coords(), &[2.0, 0.0]);
    }

    #[test]
    fn quadratic_prox_at_its_center_is_fixed() {
        let z = p(&[1.0, -2.0]);
        let spec = ProxSpec::Quadratic {
            center: z.clone(),
            weight: 3.0,
        };
        let out = spec.prox(0.7, &z).unwrap();
        for (a, b) in out.coords().iter().zip(z.coords()) {
            assert!((a - b).abs() <= 1e-15);
        }
    }

    #[test]
    fn indicator_prox_is_projection_idempotent_inside() {
        let spec = ProxSpec::Indicator(ConvexSetSpec::Halfspace {
            normal: vec![0.0, 1.0],
            offset: 1.0,
        });
        let inside = p(&[5.0, 0.5]);
        assert_eq!(spec.prox(2.0, &inside).unwrap(), inside);
    }

    #[test]
    fn nonpositive_lambda_is_rejected() {
        let spec = ProxSpec::<f64>::L1 { weight: 1.0 };
        assert!(matches!(
            spec.prox(0.0, &p(&[1.0])),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            spec.prox(-1.0, &p(&[1.0])),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn quadratic_prox_moves_toward_center() {
        // prox = (x + lw z) / (1 + lw); with w=1, lambda=1, z=0: halves x.
        let spec = ProxSpec::Quadratic {
            center: p(&[0.0]),
            weight: 1.0,
        };
        let out = spec.prox(1.0, &p(&[2.0])).unwrap();
        assert_eq!(out.coords(), &[1.0]);
    }
}

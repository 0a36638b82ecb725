//! Deterministic self-map descriptors and their evaluation.
//!
//! A `MapSpec` is a closed, data-driven description of a map `f : R^d -> R^d`:
//! parametric scalar families, affine maps, compositions, relaxed averages,
//! projections, proximal steps and splitting steps. Evaluation is pure; the
//! same input point always produces the bitwise-same output point.

use crate::algorithms::convex::ConvexSetSpec;
use crate::algorithms::prox::ProxSpec;
use crate::algorithms::splitting;
use crate::error::{Error, Result};
use crate::metric::{check_same_dim, Point};
use crate::scalar::Scalar;

/// Named closed-form scalar families, applied componentwise.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarFormula<T> {
    /// `x -> x / 2`.
    Half,
    /// `x -> x + offset`.
    Shift { offset: T },
    /// `x -> sqrt(x^2 + 1)`.
    Hypot,
    /// `x -> factor * x`.
    Scale { factor: T },
}

/// Optional contractivity claim attached to a map.
#[derive(Debug, Clone, PartialEq)]
pub enum MapClass<T> {
    /// Lipschitz modulus `c` in `[0, 1)`.
    StrongContraction(T),
    /// Lipschitz modulus 1 claimed; a reporting tag with no convergence
    /// guarantee attached.
    WeakContraction,
    Nonexpansive,
    General,
}

/// The structural part of a map description.
#[derive(Debug, Clone, PartialEq)]
pub enum MapKind<T> {
    /// `x -> A x + b` with a square matrix in row-major form.
    Affine { matrix: Vec<Vec<T>>, offset: Vec<T> },
    Scalar(ScalarFormula<T>),
    /// Maps applied left to right: `[f, g]` evaluates `g(f(x))`.
    Composition(Vec<MapSpec<T>>),
    /// The alpha-averaged map `x -> (1 - alpha) x + alpha T(x)`.
    Averaged { inner: Box<MapSpec<T>>, alpha: T },
    Projection(ConvexSetSpec<T>),
    Prox { spec: ProxSpec<T>, lambda: T },
    /// One forward-backward splitting step with an exact quadratic gradient.
    ForwardBackward {
        grad_center: Point<T>,
        grad_weight: T,
        reg: ProxSpec<T>,
        step: T,
    },
    /// The half-averaged reflect-reflect Douglas-Rachford step.
    DouglasRachford {
        prox_a: ProxSpec<T>,
        prox_b: ProxSpec<T>,
        lambda: T,
    },
}

/// A deterministic self-map plus an optional contractivity classification.
#[derive(Debug, Clone, PartialEq)]
pub struct MapSpec<T> {
    pub kind: MapKind<T>,
    pub classification: Option<MapClass<T>>,
}

impl<T: Scalar> MapSpec<T> {
    pub fn new(kind: MapKind<T>) -> Self {
        Self {
            kind,
            classification: None,
        }
    }

    pub fn with_classification(mut self, class: MapClass<T>) -> Self {
        self.classification = Some(class);
        self
    }

    pub fn half() -> Self {
        Self::new(MapKind::Scalar(ScalarFormula::Half))
            .with_classification(MapClass::StrongContraction(T::from_f64(0.5)))
    }

    pub fn shift(offset: T) -> Self {
        Self::new(MapKind::Scalar(ScalarFormula::Shift { offset }))
    }

    pub fn hypot() -> Self {
        Self::new(MapKind::Scalar(ScalarFormula::Hypot))
    }

    pub fn scale(factor: T) -> Self {
        Self::new(MapKind::Scalar(ScalarFormula::Scale { factor }))
    }

    pub fn affine(matrix: Vec<Vec<T>>, offset: Vec<T>) -> Self {
        Self::new(MapKind::Affine { matrix, offset })
    }

    /// Rotation of the plane by `theta` radians, as an affine map.
    pub fn rotation_2d(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Self::affine(vec![vec![c, -s], vec![s, c]], vec![T::zero(); 2])
            .with_classification(MapClass::Nonexpansive)
    }

    pub fn composition(maps: Vec<MapSpec<T>>) -> Self {
        Self::new(MapKind::Composition(maps))
    }

    pub fn averaged(inner: MapSpec<T>, alpha: T) -> Self {
        Self::new(MapKind::Averaged {
            inner: Box::new(inner),
            alpha,
        })
    }

    pub fn projection(set: ConvexSetSpec<T>) -> Self {
        Self::new(MapKind::Projection(set)).with_classification(MapClass::Nonexpansive)
    }

    pub fn prox(spec: ProxSpec<T>, lambda: T) -> Self {
        Self::new(MapKind::Prox { spec, lambda }).with_classification(MapClass::Nonexpansive)
    }

    pub fn forward_backward(
        grad_center: Point<T>,
        grad_weight: T,
        reg: ProxSpec<T>,
        step: T,
    ) -> Self {
        Self::new(MapKind::ForwardBackward {
            grad_center,
            grad_weight,
            reg,
            step,
        })
    }

    pub fn douglas_rachford(prox_a: ProxSpec<T>, prox_b: ProxSpec<T>, lambda: T) -> Self {
        Self::new(MapKind::DouglasRachford {
            prox_a,
            prox_b,
            lambda,
        })
        .with_classification(MapClass::Nonexpansive)
    }

    /// Declared strong-contraction modulus, when one is claimed.
    pub fn contraction_modulus(&self) -> Option<T> {
        match &self.classification {
            Some(MapClass::StrongContraction(c)) => Some(*c),
            _ => None,
        }
    }

    /// The dimension this map pins down, if any. Scalar families are
    /// componentwise and work in every dimension.
    pub fn dim_constraint(&self) -> Option<usize> {
        match &self.kind {
            MapKind::Affine { matrix, .. } => Some(matrix.len()),
            MapKind::Scalar(_) => None,
            MapKind::Composition(maps) => maps.iter().find_map(|m| m.dim_constraint()),
            MapKind::Averaged { inner, .. } => inner.dim_constraint(),
            MapKind::Projection(set) => Some(set.dim()),
            MapKind::Prox { spec, .. } => spec.dim(),
            MapKind::ForwardBackward { grad_center, .. } => Some(grad_center.dim()),
            MapKind::DouglasRachford { prox_a, prox_b, .. } => {
                prox_a.dim().or_else(|| prox_b.dim())
            }
        }
    }

    /// Structural validation against a problem dimension. Returns soft
    /// warnings (e.g. a forward-backward step outside its nonexpansive range).
    pub fn validate(&self, dim: usize) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        self.validate_into(dim, &mut warnings)?;
        Ok(warnings)
    }

    fn validate_into(&self, dim: usize, warnings: &mut Vec<String>) -> Result<()> {
        if dim == 0 {
            return Err(Error::EmptyPoint);
        }
        if let Some(MapClass::StrongContraction(c)) = &self.classification {
            if !c.is_finite() || *c < T::zero() || *c >= T::one() {
                return Err(Error::InvalidModulus {
                    value: format!("{c}"),
                });
            }
        }
        match &self.kind {
            MapKind::Affine { matrix, offset } => {
                let square = matrix.len() == dim && matrix.iter().all(|row| row.len() == dim);
                if !square || offset.len() != dim {
                    return Err(Error::InvalidAffine {
                        rows: matrix.len(),
                        cols: matrix.first().map_or(0, |r| r.len()),
                        offset: offset.len(),
                    });
                }
                let all_finite = matrix
                    .iter()
                    .flat_map(|r| r.iter())
                    .chain(offset.iter())
                    .all(|c| c.is_finite());
                if !all_finite {
                    return Err(Error::InvalidParameter {
                        reason: "affine map has a non-finite entry".into(),
                    });
                }
            }
            MapKind::Scalar(formula) => {
                let param_ok = match formula {
                    ScalarFormula::Shift { offset } => offset.is_finite(),
                    ScalarFormula::Scale { factor } => factor.is_finite(),
                    _ => true,
                };
                if !param_ok {
                    return Err(Error::InvalidParameter {
                        reason: "scalar formula has a non-finite parameter".into(),
                    });
                }
            }
            MapKind::Composition(maps) => {
                if maps.is_empty() {
                    return Err(Error::InvalidParameter {
                        reason: "composition needs at least one map".into(),
                    });
                }
                for m in maps {
                    m.validate_into(dim, warnings)?;
                }
            }
            MapKind::Averaged { inner, alpha } => {
                if !alpha.is_finite() || *alpha <= T::zero() || *alpha >= T::one() {
                    return Err(Error::InvalidAlpha {
                        value: format!("{alpha}"),
                    });
                }
                inner.validate_into(dim, warnings)?;
            }
            MapKind::Projection(set) => set.validate(dim)?,
            MapKind::Prox { spec, lambda } => {
                if !lambda.is_finite() || *lambda <= T::zero() {
                    return Err(Error::InvalidParameter {
                        reason: format!("prox step lambda={lambda} must be positive"),
                    });
                }
                spec.validate(dim)?;
            }
            MapKind::ForwardBackward {
                grad_center,
                grad_weight,
                reg,
                step,
            } => {
                check_same_dim(grad_center.dim(), dim)?;
                if !grad_weight.is_finite() || *grad_weight <= T::zero() {
                    return Err(Error::InvalidParameter {
                        reason: "forward-backward gradient weight must be positive".into(),
                    });
                }
                if !step.is_finite() || *step <= T::zero() {
                    return Err(Error::InvalidParameter {
                        reason: format!("forward-backward step {step} must be positive"),
                    });
                }
                reg.validate(dim)?;
                let two = T::from_f64(2.0);
                if *step >= two / *grad_weight {
                    warnings.push(format!(
                        "forward-backward step {step} is outside (0, 2/{grad_weight}); \
                         the step map may not be nonexpansive"
                    ));
                }
            }
            MapKind::DouglasRachford {
                prox_a,
                prox_b,
                lambda,
            } => {
                if !lambda.is_finite() || *lambda <= T::zero() {
                    return Err(Error::InvalidParameter {
                        reason: format!("Douglas-Rachford lambda={lambda} must be positive"),
                    });
                }
                prox_a.validate(dim)?;
                prox_b.validate(dim)?;
            }
        }
        Ok(())
    }

    /// Evaluates `f(x)`. Non-finite output coordinates become an overflow error.
    pub fn eval(&self, x: &Point<T>) -> Result<Point<T>> {
        if let Some(d) = self.dim_constraint() {
            check_same_dim(x.dim(), d)?;
        }
        match &self.kind {
            MapKind::Affine { matrix, offset } => {
                let square = matrix.len() == x.dim() && matrix.iter().all(|r| r.len() == x.dim());
                if !square || offset.len() != x.dim() {
                    return Err(Error::InvalidAffine {
                        rows: matrix.len(),
                        cols: matrix.first().map_or(0, |r| r.len()),
                        offset: offset.len(),
                    });
                }
                let out = matrix
                    .iter()
                    .zip(offset)
                    .map(|(row, &b)| {
                        row.iter()
                            .zip(x.coords())
                            .map(|(&a, &c)| a * c)
                            .sum::<T>()
                            + b
                    })
                    .collect();
                Point::from_map_output(out)
            }
            MapKind::Scalar(formula) => {
                let out = x
                    .coords()
                    .iter()
                    .map(|&c| match formula {
                        ScalarFormula::Half => c * T::from_f64(0.5),
                        ScalarFormula::Shift { offset } => c + *offset,
                        ScalarFormula::Hypot => c.hypot(T::one()),
                        ScalarFormula::Scale { factor } => c * *factor,
                    })
                    .collect();
                Point::from_map_output(out)
            }
            MapKind::Composition(maps) => {
                if maps.is_empty() {
                    return Err(Error::InvalidParameter {
                        reason: "composition needs at least one map".into(),
                    });
                }
                let mut current = x.clone();
                for m in maps {
                    current = m.eval(&current)?;
                }
                Ok(current)
            }
            MapKind::Averaged { inner, alpha } => {
                if *alpha <= T::zero() || *alpha >= T::one() {
                    return Err(Error::InvalidAlpha {
                        value: format!("{alpha}"),
                    });
                }
                let t = inner.eval(x)?;
                let one_minus = T::one() - *alpha;
                let out = x
                    .coords()
                    .iter()
                    .zip(t.coords())
                    .map(|(&c, &tc)| one_minus * c + *alpha * tc)
                    .collect();
                Point::from_map_output(out)
            }
            MapKind::Projection(set) => set.project(x),
            MapKind::Prox { spec, lambda } => spec.prox(*lambda, x),
            MapKind::ForwardBackward {
                grad_center,
                grad_weight,
                reg,
                step,
            } => splitting::forward_backward_step(grad_center, *grad_weight, reg, *step, x),
            MapKind::DouglasRachford {
                prox_a,
                prox_b,
                lambda,
            } => splitting::douglas_rachford_step(prox_a, prox_b, *lambda, x),
        }
    }
}

/// Free-function form of map evaluation.
pub fn eval_map<T: Scalar>(map: &MapSpec<T>, x: &Point<T>) -> Result<Point<T>> {
    map.eval(x)
}

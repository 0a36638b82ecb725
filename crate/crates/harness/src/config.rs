//! Problem configuration: JSON schema, validation, and compilation into the
//! core spec types. One problem per file; a batch file is a JSON array of
//! config paths.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use orbitsum_core::{
    CertifyPolicy64, ConvexSetSpec64, MapClass, MapSpec, MapSpec64, MetricSpec, MetricSpec64,
    Point, Point64, PotentialKind, PotentialSpec64, ProxSpec, ProxSpec64, RelaxationSchedule,
    RelaxationSchedule64, RunOptions64, TruncationPolicy, Verdict,
};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemConfig {
    pub name: String,
    pub dimension: usize,
    pub metric: MetricConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<AlgorithmConfig>,
    pub x0: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<PotentialConfig>,
    #[serde(default)]
    pub options: OptionsConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MetricConfig {
    Euclidean,
    L1,
    Linf,
    WeightedEuclidean { weights: Vec<f64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapConfig {
    #[serde(flatten)]
    pub kind: MapKindConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationConfig>,
}

fn default_shift_offset() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MapKindConfig {
    Half,
    Shift {
        #[serde(default = "default_shift_offset")]
        offset: f64,
    },
    Hypot,
    Scale {
        factor: f64,
    },
    Affine {
        matrix: Vec<Vec<f64>>,
        offset: Vec<f64>,
    },
    Composition {
        maps: Vec<MapConfig>,
    },
    Averaged {
        inner: Box<MapConfig>,
        alpha: f64,
    },
    Projection {
        set: SetConfig,
    },
    Prox {
        prox: ProxConfig,
        lambda: f64,
    },
    ForwardBackward {
        grad_center: Vec<f64>,
        grad_weight: f64,
        reg: ProxConfig,
        step: f64,
    },
    DouglasRachford {
        prox_a: ProxConfig,
        prox_b: ProxConfig,
        lambda: f64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ClassificationConfig {
    StrongContraction { modulus: f64 },
    WeakContraction,
    Nonexpansive,
    General,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SetConfig {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
    Halfspace { normal: Vec<f64>, offset: f64 },
    Hyperplane { normal: Vec<f64>, offset: f64 },
    AffineSubspace { basis: Vec<Vec<f64>>, anchor: Vec<f64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProxConfig {
    Quadratic { center: Vec<f64>, weight: f64 },
    L1 { weight: f64 },
    Indicator { set: SetConfig },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "kebab-case")]
pub enum AlgorithmConfig {
    Contraction {
        map: MapConfig,
    },
    Km {
        inner: MapConfig,
        schedule: ScheduleConfig,
    },
    AlternatingProjections {
        set_a: SetConfig,
        set_b: SetConfig,
    },
    DouglasRachford {
        prox_a: ProxConfig,
        prox_b: ProxConfig,
        lambda: f64,
    },
    ForwardBackward {
        grad_center: Vec<f64>,
        grad_weight: f64,
        reg: ProxConfig,
        step: f64,
    },
    ProximalPoint {
        prox: ProxConfig,
        lambda: f64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ScheduleConfig {
    Constant { alpha: f64 },
    Harmonic { alpha: f64 },
    Explicit { values: Vec<f64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialConfig {
    #[serde(flatten)]
    pub kind: PotentialKindConfig,
    pub lower_bound: f64,
    pub witness: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PotentialKindConfig {
    LinearScalar {
        slope: f64,
    },
    ScaledDistanceToPoint {
        target: Vec<f64>,
        scale: f64,
    },
    OrbitPotential {
        map: Box<MapConfig>,
        #[serde(default)]
        max_terms: Option<usize>,
        #[serde(default)]
        term_tol: Option<f64>,
    },
    Table {
        entries: Vec<TableEntryConfig>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntryConfig {
    pub point: Vec<f64>,
    pub value: f64,
}

/// Run knobs; every tolerance in a comparison lives here, never in code.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptionsConfig {
    pub max_iters: usize,
    pub residual_tol: f64,
    pub displacement_budget: f64,
    pub ratio_window: usize,
    pub ratio_ceiling: f64,
    pub thinning_stride: usize,
    pub caristi_tol: f64,
}

impl Default for OptionsConfig {
    fn default() -> Self {
        Self {
            max_iters: 100_000,
            residual_tol: 1e-10,
            displacement_budget: 1e6,
            ratio_window: 8,
            ratio_ceiling: 0.999,
            thinning_stride: 1,
            caristi_tol: 1e-12,
        }
    }
}

/// Regression baseline; each present field is compared at its own tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExpectedConfig {
    pub verdict: Option<String>,
    pub fixed_point: Option<Vec<f64>>,
    pub fixed_point_tol: f64,
    pub total_displacement: Option<f64>,
    pub total_displacement_tol: f64,
    pub ratio: Option<f64>,
    pub ratio_tol: f64,
    pub caristi_holds: Option<bool>,
}

impl Default for ExpectedConfig {
    fn default() -> Self {
        Self {
            verdict: None,
            fixed_point: None,
            fixed_point_tol: 1e-9,
            total_displacement: None,
            total_displacement_tol: 1e-9,
            ratio: None,
            ratio_tol: 1e-6,
            caristi_holds: None,
        }
    }
}

/// A validated, compiled problem ready to run.
#[derive(Debug, Clone)]
pub struct Problem {
    pub config: ProblemConfig,
    pub name: String,
    pub dimension: usize,
    pub metric: MetricSpec64,
    pub driver: Driver,
    pub x0: Point64,
    pub potential: Option<PotentialSpec64>,
    pub run_options: RunOptions64,
    pub policy: CertifyPolicy64,
    /// Soft validation warnings (e.g. a forward-backward step outside its
    /// nonexpansive range).
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum Driver {
    /// Plain forward orbit of a map.
    Map(MapSpec64),
    /// Contraction solve with the a-priori bound machinery.
    Contraction(MapSpec64),
    Km {
        inner: MapSpec64,
        schedule: RelaxationSchedule64,
    },
    AltProj {
        set_a: ConvexSetSpec64,
        set_b: ConvexSetSpec64,
    },
    DouglasRachford {
        prox_a: ProxSpec64,
        prox_b: ProxSpec64,
        lambda: f64,
    },
}

impl Problem {
    /// The map whose fixed points the certificate talks about: the map itself
    /// for plain orbits, the inner operator for KM, the composed projector
    /// for alternating projections, the DR step map for Douglas-Rachford.
    pub fn certificate_target(&self) -> MapSpec64 {
        match &self.driver {
            Driver::Map(m) | Driver::Contraction(m) => m.clone(),
            Driver::Km { inner, .. } => inner.clone(),
            Driver::AltProj { set_a, set_b } => MapSpec::composition(vec![
                MapSpec::projection(set_a.clone()),
                MapSpec::projection(set_b.clone()),
            ]),
            Driver::DouglasRachford {
                prox_a,
                prox_b,
                lambda,
            } => MapSpec::douglas_rachford(prox_a.clone(), prox_b.clone(), *lambda),
        }
    }
}

fn cfg_err(field: &str, message: impl Into<String>) -> HarnessError {
    HarnessError::Config {
        field: field.to_string(),
        message: message.into(),
    }
}

fn wrap_core(field: &str) -> impl Fn(orbitsum_core::Error) -> HarnessError + '_ {
    move |e| cfg_err(field, e.to_string())
}

fn point_from(field: &str, coords: &[f64]) -> Result<Point64> {
    Point::new(coords.to_vec()).map_err(wrap_core(field))
}

fn build_metric(cfg: &MetricConfig) -> MetricSpec64 {
    match cfg {
        MetricConfig::Euclidean => MetricSpec::Euclidean,
        MetricConfig::L1 => MetricSpec::L1,
        MetricConfig::Linf => MetricSpec::Linf,
        MetricConfig::WeightedEuclidean { weights } => MetricSpec::WeightedEuclidean {
            weights: weights.clone(),
        },
    }
}

fn build_set(field: &str, cfg: &SetConfig) -> Result<ConvexSetSpec64> {
    let set = match cfg {
        SetConfig::Box { lo, hi } => ConvexSetSpec64::Box {
            lo: lo.clone(),
            hi: hi.clone(),
        },
        SetConfig::Ball { center, radius } => ConvexSetSpec64::Ball {
            center: point_from(field, center)?,
            radius: *radius,
        },
        SetConfig::Halfspace { normal, offset } => ConvexSetSpec64::Halfspace {
            normal: normal.clone(),
            offset: *offset,
        },
        SetConfig::Hyperplane { normal, offset } => ConvexSetSpec64::Hyperplane {
            normal: normal.clone(),
            offset: *offset,
        },
        SetConfig::AffineSubspace { basis, anchor } => ConvexSetSpec64::AffineSubspace {
            basis: basis.clone(),
            anchor: point_from(field, anchor)?,
        },
    };
    Ok(set)
}

fn build_prox(field: &str, cfg: &ProxConfig) -> Result<ProxSpec64> {
    let prox = match cfg {
        ProxConfig::Quadratic { center, weight } => ProxSpec::Quadratic {
            center: point_from(field, center)?,
            weight: *weight,
        },
        ProxConfig::L1 { weight } => ProxSpec::L1 { weight: *weight },
        ProxConfig::Indicator { set } => ProxSpec::Indicator(build_set(field, set)?),
    };
    Ok(prox)
}

fn build_map(field: &str, cfg: &MapConfig) -> Result<MapSpec64> {
    let mut map = match &cfg.kind {
        MapKindConfig::Half => MapSpec::half(),
        MapKindConfig::Shift { offset } => MapSpec::shift(*offset),
        MapKindConfig::Hypot => MapSpec::hypot(),
        MapKindConfig::Scale { factor } => MapSpec::scale(*factor),
        MapKindConfig::Affine { matrix, offset } => {
            MapSpec::affine(matrix.clone(), offset.clone())
        }
        MapKindConfig::Composition { maps } => {
            let mut built = Vec::with_capacity(maps.len());
            for (i, m) in maps.iter().enumerate() {
                built.push(build_map(&format!("{field}.maps[{i}]"), m)?);
            }
            MapSpec::composition(built)
        }
        MapKindConfig::Averaged { inner, alpha } => {
            MapSpec::averaged(build_map(&format!("{field}.inner"), inner)?, *alpha)
        }
        MapKindConfig::Projection { set } => {
            MapSpec::projection(build_set(&format!("{field}.set"), set)?)
        }
        MapKindConfig::Prox { prox, lambda } => {
            MapSpec::prox(build_prox(&format!("{field}.prox"), prox)?, *lambda)
        }
        MapKindConfig::ForwardBackward {
            grad_center,
            grad_weight,
            reg,
            step,
        } => MapSpec::forward_backward(
            point_from(&format!("{field}.grad_center"), grad_center)?,
            *grad_weight,
            build_prox(&format!("{field}.reg"), reg)?,
            *step,
        ),
        MapKindConfig::DouglasRachford {
            prox_a,
            prox_b,
            lambda,
        } => MapSpec::douglas_rachford(
            build_prox(&format!("{field}.prox_a"), prox_a)?,
            build_prox(&format!("{field}.prox_b"), prox_b)?,
            *lambda,
        ),
    };
    // A built-in classification (e.g. half is a declared 0.5-contraction) is
    // overridden by an explicit one, and dropped when the config stays silent
    // on an algorithmic wrapper. Explicit wins.
    if let Some(class) = &cfg.classification {
        map.classification = Some(match class {
            ClassificationConfig::StrongContraction { modulus } => {
                if !(*modulus >= 0.0 && *modulus < 1.0) {
                    return Err(cfg_err(
                        &format!("{field}.classification"),
                        format!("strong-contraction modulus must lie in [0, 1), got {modulus}"),
                    ));
                }
                MapClass::StrongContraction(*modulus)
            }
            ClassificationConfig::WeakContraction => MapClass::WeakContraction,
            ClassificationConfig::Nonexpansive => MapClass::Nonexpansive,
            ClassificationConfig::General => MapClass::General,
        });
    }
    Ok(map)
}

fn build_schedule(field: &str, cfg: &ScheduleConfig) -> Result<RelaxationSchedule64> {
    let schedule = match cfg {
        ScheduleConfig::Constant { alpha } => RelaxationSchedule::Constant(*alpha),
        ScheduleConfig::Harmonic { alpha } => RelaxationSchedule::Harmonic { alpha: *alpha },
        ScheduleConfig::Explicit { values } => RelaxationSchedule::Explicit(values.clone()),
    };
    schedule.validate().map_err(wrap_core(field))?;
    Ok(schedule)
}

fn build_potential(
    field: &str,
    cfg: &PotentialConfig,
    options: &OptionsConfig,
) -> Result<PotentialSpec64> {
    let kind = match &cfg.kind {
        PotentialKindConfig::LinearScalar { slope } => PotentialKind::LinearScalar { slope: *slope },
        PotentialKindConfig::ScaledDistanceToPoint { target, scale } => {
            PotentialKind::ScaledDistanceToPoint {
                target: point_from(&format!("{field}.target"), target)?,
                scale: *scale,
            }
        }
        PotentialKindConfig::OrbitPotential {
            map,
            max_terms,
            term_tol,
        } => PotentialKind::OrbitPotential {
            map: Box::new(build_map(&format!("{field}.map"), map)?),
            trunc: TruncationPolicy {
                max_terms: max_terms.unwrap_or(options.max_iters),
                term_tol: term_tol.unwrap_or(options.caristi_tol),
                ratio_window: options.ratio_window,
            },
        },
        PotentialKindConfig::Table { entries } => {
            let mut built = Vec::with_capacity(entries.len());
            for (i, e) in entries.iter().enumerate() {
                built.push((
                    point_from(&format!("{field}.entries[{i}].point"), &e.point)?,
                    e.value,
                ));
            }
            PotentialKind::Table { entries: built }
        }
    };
    Ok(PotentialSpec64 {
        kind,
        declared_lower_bound: cfg.lower_bound,
        proper_witness: point_from(&format!("{field}.witness"), &cfg.witness)?,
    })
}

/// Validates a parsed config and compiles it into core spec types.
pub fn compile(config: ProblemConfig) -> Result<Problem> {
    if config.name.trim().is_empty() {
        return Err(cfg_err("name", "problem name must be nonempty"));
    }
    if config.dimension == 0 {
        return Err(cfg_err("dimension", "dimension must be at least 1"));
    }
    if config.x0.len() != config.dimension {
        return Err(cfg_err(
            "x0",
            format!(
                "start point has {} coordinates but dimension is {}",
                config.x0.len(),
                config.dimension
            ),
        ));
    }
    let x0 = point_from("x0", &config.x0)?;
    let metric = build_metric(&config.metric);
    metric
        .validate_for_dim(config.dimension)
        .map_err(wrap_core("metric.weights"))?;

    let mut warnings = Vec::new();
    let driver = match (&config.map, &config.algorithm) {
        (Some(_), Some(_)) => {
            return Err(cfg_err(
                "map|algorithm",
                "give either a map or an algorithm block, not both",
            ))
        }
        (None, None) => {
            return Err(cfg_err(
                "map|algorithm",
                "a map or an algorithm block is required",
            ))
        }
        (Some(map_cfg), None) => Driver::Map(build_map("map", map_cfg)?),
        (None, Some(algo)) => match algo {
            AlgorithmConfig::Contraction { map } => {
                let built = build_map("algorithm.map", map)?;
                if built.contraction_modulus().is_none() {
                    return Err(cfg_err(
                        "algorithm.map.classification",
                        "contraction scheme needs a strong-contraction classification \
                         with modulus in [0, 1)",
                    ));
                }
                Driver::Contraction(built)
            }
            AlgorithmConfig::Km { inner, schedule } => Driver::Km {
                inner: build_map("algorithm.inner", inner)?,
                schedule: build_schedule("algorithm.schedule", schedule)?,
            },
            AlgorithmConfig::AlternatingProjections { set_a, set_b } => Driver::AltProj {
                set_a: build_set("algorithm.set_a", set_a)?,
                set_b: build_set("algorithm.set_b", set_b)?,
            },
            AlgorithmConfig::DouglasRachford {
                prox_a,
                prox_b,
                lambda,
            } => Driver::DouglasRachford {
                prox_a: build_prox("algorithm.prox_a", prox_a)?,
                prox_b: build_prox("algorithm.prox_b", prox_b)?,
                lambda: *lambda,
            },
            AlgorithmConfig::ForwardBackward {
                grad_center,
                grad_weight,
                reg,
                step,
            } => Driver::Map(MapSpec::forward_backward(
                point_from("algorithm.grad_center", grad_center)?,
                *grad_weight,
                build_prox("algorithm.reg", reg)?,
                *step,
            )),
            AlgorithmConfig::ProximalPoint { prox, lambda } => Driver::Map(MapSpec::prox(
                build_prox("algorithm.prox", prox)?,
                *lambda,
            )),
        },
    };

    // Structural validation of whatever map the driver will evaluate.
    match &driver {
        Driver::Map(m) | Driver::Contraction(m) => {
            warnings.extend(m.validate(config.dimension).map_err(wrap_core("map"))?);
        }
        Driver::Km { inner, .. } => {
            warnings.extend(
                inner
                    .validate(config.dimension)
                    .map_err(wrap_core("algorithm.inner"))?,
            );
            if !metric.is_euclidean() {
                return Err(cfg_err(
                    "metric",
                    "the km scheme requires the euclidean metric",
                ));
            }
        }
        Driver::AltProj { set_a, set_b } => {
            set_a
                .validate(config.dimension)
                .map_err(wrap_core("algorithm.set_a"))?;
            set_b
                .validate(config.dimension)
                .map_err(wrap_core("algorithm.set_b"))?;
        }
        Driver::DouglasRachford { prox_a, prox_b, lambda } => {
            prox_a
                .validate(config.dimension)
                .map_err(wrap_core("algorithm.prox_a"))?;
            prox_b
                .validate(config.dimension)
                .map_err(wrap_core("algorithm.prox_b"))?;
            if !(*lambda > 0.0 && lambda.is_finite()) {
                return Err(cfg_err("algorithm.lambda", "lambda must be positive"));
            }
        }
    }

    let potential = match &config.potential {
        None => None,
        Some(p) => {
            if !matches!(driver, Driver::Map(_) | Driver::Contraction(_)) {
                return Err(cfg_err(
                    "potential",
                    "Caristi verification applies to map-driven problems only",
                ));
            }
            let spec = build_potential("potential", p, &config.options)?;
            spec.validate(&metric, config.options.caristi_tol)
                .map_err(wrap_core("potential"))?;
            Some(spec)
        }
    };

    let run_options = RunOptions64 {
        max_iters: config.options.max_iters,
        residual_tol: config.options.residual_tol,
        displacement_budget: config.options.displacement_budget,
        thinning_stride: config.options.thinning_stride,
    };
    run_options.validate().map_err(wrap_core("options"))?;
    let policy = CertifyPolicy64 {
        ratio_window: config.options.ratio_window,
        ratio_ceiling: config.options.ratio_ceiling,
        residual_tol: config.options.residual_tol,
    };
    policy.validate().map_err(wrap_core("options"))?;
    if !(config.options.caristi_tol > 0.0) {
        return Err(cfg_err("options.caristi_tol", "must be positive"));
    }

    if let Some(expected) = &config.expected {
        if let Some(v) = &expected.verdict {
            parse_verdict(v).ok_or_else(|| {
                cfg_err(
                    "expected.verdict",
                    format!("unknown verdict `{v}`; use CONVERGED, DIVERGENT or INCONCLUSIVE"),
                )
            })?;
        }
        if let Some(fp) = &expected.fixed_point {
            if fp.len() != config.dimension {
                return Err(cfg_err(
                    "expected.fixed_point",
                    format!(
                        "has {} coordinates but dimension is {}",
                        fp.len(),
                        config.dimension
                    ),
                ));
            }
        }
        if expected.caristi_holds.is_some() && config.potential.is_none() {
            return Err(cfg_err(
                "expected.caristi_holds",
                "requires a potential block",
            ));
        }
    }

    Ok(Problem {
        name: config.name.clone(),
        dimension: config.dimension,
        metric,
        driver,
        x0,
        potential,
        run_options,
        policy,
        warnings,
        config,
    })
}

pub fn parse_verdict(s: &str) -> Option<Verdict> {
    match s {
        "CONVERGED" => Some(Verdict::Converged),
        "DIVERGENT" => Some(Verdict::Divergent),
        "INCONCLUSIVE" => Some(Verdict::Inconclusive),
        _ => None,
    }
}

/// Parses a single problem from config text.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let config: ProblemConfig =
        serde_json::from_str(text).map_err(|e| HarnessError::Parse(e.to_string()))?;
    compile(config)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| HarnessError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

/// Loads a problem file, or every problem listed in a batch file (a JSON
/// array of paths, resolved relative to the batch file's directory).
pub fn load_problems(path: &Path) -> Result<Vec<Problem>> {
    let text = read(path)?;
    if text.trim_start().starts_with('[') {
        let entries: Vec<String> =
            serde_json::from_str(&text).map_err(|e| HarnessError::Parse(e.to_string()))?;
        let base = path.parent().map(PathBuf::from).unwrap_or_default();
        let mut problems = Vec::with_capacity(entries.len());
        for entry in entries {
            let sub = base.join(&entry);
            problems.push(parse_problem(&read(&sub)?)?);
        }
        Ok(problems)
    } else {
        Ok(vec![parse_problem(&text)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(extra: &str) -> String {
        format!(
            r#"{{"name": "t", "dimension": 1, "metric": {{"kind": "euclidean"}},
                "x0": [1.0]{extra}}}"#
        )
    }

    #[test]
    fn parses_a_minimal_map_problem() {
        let problem = parse_problem(&minimal(r#", "map": {"kind": "half"}"#)).unwrap();
        assert_eq!(problem.name, "t");
        assert!(matches!(problem.driver, Driver::Map(_)));
        assert_eq!(problem.run_options.max_iters, 100_000);
    }

    #[test]
    fn modulus_of_one_is_a_semantic_error_naming_the_field() {
        let text = minimal(
            r#", "map": {"kind": "half", "classification": {"kind": "strong-contraction", "modulus": 1.0}}"#,
        );
        let err = parse_problem(&text).unwrap_err();
        match err {
            HarnessError::Config { field, message } => {
                assert_eq!(field, "map.classification");
                assert!(message.contains("[0, 1)"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn wrong_x0_length_is_a_dimension_error() {
        let text = r#"{"name": "t", "dimension": 2, "metric": {"kind": "euclidean"},
                       "map": {"kind": "half"}, "x0": [1.0]}"#;
        let err = parse_problem(text).unwrap_err();
        match err {
            HarnessError::Config { field, .. } => assert_eq!(field, "x0"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn map_and_algorithm_together_are_rejected() {
        let text = minimal(
            r#", "map": {"kind": "half"},
                "algorithm": {"scheme": "proximal-point", "prox": {"kind": "l1", "weight": 1.0}, "lambda": 1.0}"#,
        );
        assert!(parse_problem(&text).is_err());
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        let err = parse_problem("{not json").unwrap_err();
        assert!(matches!(err, HarnessError::Parse(_)));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unknown_option_fields_are_rejected() {
        let text = minimal(r#", "map": {"kind": "half"}, "options": {"max_itters": 5}"#);
        assert!(parse_problem(&text).is_err());
    }

    #[test]
    fn shift_offset_defaults_to_one() {
        let problem = parse_problem(&minimal(r#", "map": {"kind": "shift"}"#)).unwrap();
        if let Driver::Map(m) = &problem.driver {
            let out = m.eval(&Point::scalar(0.0).unwrap()).unwrap();
            assert_eq!(out.coords(), &[1.0]);
        } else {
            panic!("expected map driver");
        }
    }
}

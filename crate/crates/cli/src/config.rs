//! Run configurations. Each subcommand reads one JSON document; unknown keys
//! are rejected and every physical parameter is validated before any
//! numerical work starts.

use std::path::{Path, PathBuf};

use burgers_core::exact::{EigenMode, SeparableSolution, Solution, SteadyProfile};
use burgers_core::grid::Grid1D;
use burgers_core::solver::{Boundary, Equation, EvolveSpec, Scheme, TimeStep};
use burgers_core::strain::{SimilarityFrame, StrainModel};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Reads and validates a config file.
pub fn load<T: DeserializeOwned + Validate>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse<T: DeserializeOwned + Validate>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: T = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Validation(format!("config error at `{path}`: {}", e.inner()))
    })?;
    config.validate()?;
    Ok(config)
}

pub trait Validate {
    fn validate(&self) -> Result<(), CliError>;
}

fn check_schema(version: u32) -> Result<(), CliError> {
    if version != SCHEMA_VERSION {
        return Err(CliError::Validation(format!(
            "config error at `schema_version`: expected {SCHEMA_VERSION}, got {version}"
        )));
    }
    Ok(())
}

fn field(path: &str, e: burgers_core::Error) -> CliError {
    CliError::Validation(format!("config error at `{path}`: {e}"))
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub half_width: f64,
    pub num_points: usize,
}

impl GridConfig {
    pub fn build(&self, path: &str) -> Result<Grid1D, CliError> {
        Grid1D::new(self.half_width, self.num_points).map_err(|e| field(path, e))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SolutionConfig {
    Steady {
        alpha: f64,
        #[serde(default = "one")]
        c_amp: f64,
    },
    Eigenmode {
        n: usize,
        alpha: f64,
        #[serde(default = "one")]
        coeff: f64,
    },
    Separable {
        alpha: f64,
        /// `[coefficient, n]` pairs.
        terms: Vec<(f64, usize)>,
    },
}

fn one() -> f64 {
    1.0
}

impl SolutionConfig {
    pub fn build(&self, path: &str) -> Result<Solution, CliError> {
        let built = match self {
            SolutionConfig::Steady { alpha, c_amp } => SteadyProfile::new(*alpha, *c_amp).map(Solution::from),
            SolutionConfig::Eigenmode { n, alpha, coeff } => {
                EigenMode::new(*n, *alpha).and_then(|_| SeparableSolution::single(*n, *alpha, *coeff).map(Solution::from))
            }
            SolutionConfig::Separable { alpha, terms } => SeparableSolution::new(*alpha, terms).map(Solution::from),
        };
        built.map_err(|e| field(path, e))
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameConfig {
    pub strain: StrainModel,
    pub nu: f64,
    /// Physical time of the evaluation.
    #[serde(default)]
    pub t: f64,
}

impl FrameConfig {
    pub fn build(&self, path: &str) -> Result<SimilarityFrame, CliError> {
        let frame = SimilarityFrame::new(self.strain, self.nu).map_err(|e| field(path, e))?;
        self.strain.check_time(self.t).map_err(CliError::from)?;
        Ok(frame)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalConfig {
    pub schema_version: u32,
    pub solution: SolutionConfig,
    pub grid: GridConfig,
    /// Similarity time for the `xi` output.
    #[serde(default)]
    pub tau: f64,
    /// Evaluate in physical coordinates through this frame.
    #[serde(default)]
    pub frame: Option<FrameConfig>,
    #[serde(default)]
    pub include_w: bool,
    #[serde(default = "EvalConfig::default_output")]
    pub output: String,
}

impl EvalConfig {
    fn default_output() -> String {
        "eval.csv".into()
    }
}

impl Validate for EvalConfig {
    fn validate(&self) -> Result<(), CliError> {
        check_schema(self.schema_version)?;
        self.solution.build("solution")?;
        self.grid.build("grid")?;
        if !(self.tau.is_finite() && self.tau >= 0.0) {
            return Err(CliError::Validation(format!("config error at `tau`: must be finite and >= 0, got {}", self.tau)));
        }
        if let Some(frame) = &self.frame {
            frame.build("frame")?;
        }
        check_file_name("output", &self.output)
    }
}

fn check_file_name(path: &str, name: &str) -> Result<(), CliError> {
    let p = Path::new(name);
    if name.is_empty() || p.components().count() != 1 || p.file_name().is_none() {
        return Err(CliError::Validation(format!(
            "config error at `{path}`: `{name}` must be a plain file name"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EquationConfig {
    Similarity { alpha: f64 },
    Physical { strain: StrainModel, nu: f64 },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TimeStepConfig {
    Cfl { factor: f64 },
    Fixed { dt: f64 },
}

#[derive(Debug, Clone, Copy, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SchemeConfig {
    #[default]
    Rk4,
    CrankNicolson,
}

#[derive(Debug, Clone, Copy, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryConfig {
    #[default]
    DirichletZero,
    DirichletHeld,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialConfig {
    Zero { grid: GridConfig },
    /// Closed form sampled at time 0 (in physical coordinates when the
    /// equation is physical).
    Solution { solution: SolutionConfig, grid: GridConfig },
    /// Snapshot CSV from an earlier run; relative paths resolve against the
    /// config file's directory.
    Csv { path: PathBuf },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveConfig {
    pub schema_version: u32,
    pub equation: EquationConfig,
    pub initial: InitialConfig,
    pub end_time: f64,
    #[serde(default = "EvolveConfig::default_step")]
    pub time_step: TimeStepConfig,
    #[serde(default)]
    pub scheme: SchemeConfig,
    #[serde(default)]
    pub boundary: BoundaryConfig,
    #[serde(default)]
    pub snapshot_times: Vec<f64>,
    #[serde(default = "EvolveConfig::default_norm_samples")]
    pub norm_samples: usize,
}

impl EvolveConfig {
    fn default_step() -> TimeStepConfig {
        TimeStepConfig::Cfl {
            factor: burgers_core::solver::DEFAULT_CFL,
        }
    }

    fn default_norm_samples() -> usize {
        burgers_core::solver::DEFAULT_NORM_SAMPLES
    }

    pub fn equation(&self) -> Result<Equation, CliError> {
        Ok(match self.equation {
            EquationConfig::Similarity { alpha } => Equation::Similarity { alpha },
            EquationConfig::Physical { strain, nu } => {
                Equation::Physical(SimilarityFrame::new(strain, nu).map_err(|e| field("equation.nu", e))?)
            }
        })
    }

    pub fn spec(&self) -> Result<EvolveSpec, CliError> {
        let mut spec = match self.equation()? {
            Equation::Similarity { alpha } => EvolveSpec::similarity(alpha, self.end_time),
            Equation::Physical(frame) => EvolveSpec::physical(frame, self.end_time),
        };
        spec = spec
            .with_time_step(match self.time_step {
                TimeStepConfig::Cfl { factor } => TimeStep::Cfl(factor),
                TimeStepConfig::Fixed { dt } => TimeStep::Fixed(dt),
            })
            .with_scheme(match self.scheme {
                SchemeConfig::Rk4 => Scheme::ExplicitRk4,
                SchemeConfig::CrankNicolson => Scheme::ImplicitTrapezoidal,
            })
            .with_boundary(match self.boundary {
                BoundaryConfig::DirichletZero => Boundary::DirichletZero,
                BoundaryConfig::DirichletHeld => Boundary::DirichletHeld,
            })
            .with_snapshots(self.snapshot_times.clone())
            .with_norm_samples(self.norm_samples);
        spec.validate().map_err(|e| match e {
            burgers_core::Error::InvalidParameter { .. } => field("evolve", e),
            other => CliError::from(other),
        })?;
        Ok(spec)
    }
}

impl Validate for EvolveConfig {
    fn validate(&self) -> Result<(), CliError> {
        check_schema(self.schema_version)?;
        self.spec()?;
        match &self.initial {
            InitialConfig::Zero { grid } => {
                grid.build("initial.grid")?;
            }
            InitialConfig::Solution { solution, grid } => {
                solution.build("initial.solution")?;
                grid.build("initial.grid")?;
            }
            InitialConfig::Csv { .. } => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    pub schema_version: u32,
    pub alpha: f64,
    pub k: usize,
    #[serde(default = "SpectrumConfig::default_grid")]
    pub grid: GridConfig,
    #[serde(default = "SpectrumConfig::default_threshold")]
    pub threshold: f64,
}

impl SpectrumConfig {
    fn default_grid() -> GridConfig {
        GridConfig {
            half_width: 10.0,
            num_points: 2001,
        }
    }

    fn default_threshold() -> f64 {
        1e-3
    }
}

impl Validate for SpectrumConfig {
    fn validate(&self) -> Result<(), CliError> {
        check_schema(self.schema_version)?;
        self.grid.build("grid")?;
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(CliError::Validation(format!(
                "config error at `alpha`: must be finite and > 0, got {}",
                self.alpha
            )));
        }
        if self.k > burgers_core::verification::spectrum::MAX_MODES {
            return Err(CliError::Validation(format!(
                "config error at `k`: at most {} eigenvalues",
                burgers_core::verification::spectrum::MAX_MODES
            )));
        }
        positive("threshold", self.threshold)
    }
}

fn positive(path: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Validation(format!("config error at `{path}`: must be finite and > 0, got {v}")))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossCheckConfig {
    pub schema_version: u32,
    pub strain: StrainModel,
    pub nu: f64,
    pub mode_n: usize,
    pub t_end: f64,
    #[serde(default = "CrossCheckConfig::default_points")]
    pub num_points: usize,
    #[serde(default = "CrossCheckConfig::default_threshold")]
    pub threshold: f64,
    #[serde(default)]
    pub implied_alpha: bool,
}

impl CrossCheckConfig {
    fn default_points() -> usize {
        2001
    }

    fn default_threshold() -> f64 {
        burgers_core::verification::crosscheck::DEFAULT_THRESHOLD
    }
}

impl Validate for CrossCheckConfig {
    fn validate(&self) -> Result<(), CliError> {
        check_schema(self.schema_version)?;
        SimilarityFrame::new(self.strain, self.nu).map_err(|e| field("nu", e))?;
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(CliError::Validation(format!(
                "config error at `t_end`: must be finite and > 0, got {}",
                self.t_end
            )));
        }
        Grid1D::new(1.0, self.num_points).map_err(|e| field("num_points", e))?;
        positive("threshold", self.threshold)
        // the horizon is checked when the run starts so that it surfaces as a
        // horizon error rather than a schema error
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceConfig {
    pub schema_version: u32,
    #[serde(default = "ConvergenceConfig::default_alpha")]
    pub alpha: f64,
    #[serde(default = "ConvergenceConfig::default_spatial_mode")]
    pub spatial_mode: usize,
    #[serde(default = "ConvergenceConfig::default_sizes")]
    pub sizes: Vec<usize>,
    #[serde(default = "ConvergenceConfig::default_temporal_mode")]
    pub temporal_mode: usize,
    #[serde(default = "ConvergenceConfig::default_temporal_grid")]
    pub temporal_grid: GridConfig,
    #[serde(default = "ConvergenceConfig::default_dts")]
    pub dts: Vec<f64>,
    #[serde(default = "one")]
    pub tau_end: f64,
}

impl ConvergenceConfig {
    fn default_alpha() -> f64 {
        1.0
    }
    fn default_spatial_mode() -> usize {
        1
    }
    fn default_sizes() -> Vec<usize> {
        vec![201, 401, 801]
    }
    fn default_temporal_mode() -> usize {
        4
    }
    fn default_temporal_grid() -> GridConfig {
        GridConfig {
            half_width: 8.0,
            num_points: 81,
        }
    }
    fn default_dts() -> Vec<f64> {
        vec![0.02, 0.01, 0.005]
    }
}

impl Default for ConvergenceConfig {
    fn default() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            alpha: Self::default_alpha(),
            spatial_mode: Self::default_spatial_mode(),
            sizes: Self::default_sizes(),
            temporal_mode: Self::default_temporal_mode(),
            temporal_grid: Self::default_temporal_grid(),
            dts: Self::default_dts(),
            tau_end: 1.0,
        }
    }
}

impl Validate for ConvergenceConfig {
    fn validate(&self) -> Result<(), CliError> {
        check_schema(self.schema_version)?;
        positive("alpha", self.alpha)?;
        positive("tau_end", self.tau_end)?;
        for (i, n) in self.sizes.iter().enumerate() {
            Grid1D::new(1.0, *n).map_err(|e| field(&format!("sizes[{i}]"), e))?;
        }
        if self.sizes.len() < 2 || self.dts.len() < 2 {
            return Err(CliError::Validation(
                "config error at `sizes`/`dts`: need at least two entries each".into(),
            ));
        }
        for (i, dt) in self.dts.iter().enumerate() {
            positive(&format!("dts[{i}]"), *dt)?;
        }
        self.temporal_grid.build("temporal_grid")?;
        Ok(())
    }
}

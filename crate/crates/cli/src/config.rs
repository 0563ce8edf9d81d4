//! Scenario configuration: TOML schema, defaults and validation.

use std::path::{Path, PathBuf};

use asymlab::{make_flux, FluxFunction, FluxSpec, InitialData, Profile, TailExpansion};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    InitialJump,
    Collision,
    Fold,
    Weakshock,
    LargeGradient,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::InitialJump => "initial-jump",
            ScenarioKind::Collision => "collision",
            ScenarioKind::Fold => "fold",
            ScenarioKind::Weakshock => "weakshock",
            ScenarioKind::LargeGradient => "large-gradient",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Approximation {
    Leading,
    /// Weak shock only: adds the `eps^{1/2} w30` term.
    TwoTerm,
    /// Large gradient only.
    Composite,
    /// Large gradient only.
    Renormalized,
}

/// Evaluation rectangle in inner coordinates; `nx` by `ntau` points including the edges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Window {
    pub xi_min: f64,
    pub xi_max: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub nx: usize,
    pub ntau: usize,
}

impl Window {
    pub fn xi(&self, i: usize) -> f64 {
        lerp(self.xi_min, self.xi_max, i, self.nx)
    }

    pub fn tau(&self, k: usize) -> f64 {
        lerp(self.tau_min, self.tau_max, k, self.ntau)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ntau
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point `n` in row-major order, `tau` outer.
    pub fn point(&self, n: usize) -> (f64, f64) {
        (self.xi(n % self.nx), self.tau(n / self.nx))
    }
}

fn lerp(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    if n < 2 {
        lo
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub kind: ScenarioKind,
    #[serde(default)]
    pub approximation: Option<Approximation>,
    #[serde(default)]
    pub window: Option<Window>,
}

fn default_interval() -> [f64; 2] {
    [-4.0, 4.0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FluxConfig {
    Burgers {
        #[serde(default = "default_interval")]
        interval: [f64; 2],
    },
    Polynomial {
        coefficients: Vec<f64>,
        #[serde(default = "default_interval")]
        interval: [f64; 2],
    },
    Exponential {
        #[serde(default = "default_interval")]
        interval: [f64; 2],
    },
    LogCosh {
        scale: f64,
        #[serde(default = "default_interval")]
        interval: [f64; 2],
    },
}

impl Default for FluxConfig {
    fn default() -> Self {
        FluxConfig::Burgers {
            interval: default_interval(),
        }
    }
}

impl FluxConfig {
    pub fn is_burgers(&self) -> bool {
        matches!(self, FluxConfig::Burgers { .. })
    }

    pub fn build(&self) -> CliResult<FluxFunction> {
        let (spec, interval) = match self {
            FluxConfig::Burgers { interval } => (FluxSpec::Burgers, interval),
            FluxConfig::Polynomial {
                coefficients,
                interval,
            } => (
                FluxSpec::Polynomial {
                    coefficients: coefficients.clone(),
                },
                interval,
            ),
            FluxConfig::Exponential { interval } => (FluxSpec::Exponential, interval),
            FluxConfig::LogCosh { scale, interval } => {
                (FluxSpec::LogCosh { scale: *scale }, interval)
            }
        };
        make_flux(&spec, (interval[0], interval[1]), 8)
            .map_err(|e| CliError::validation(format!("flux: {e}")))
    }
}

fn neg_one() -> f64 {
    -1.0
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum InitialConfig {
    Constant {
        value: f64,
    },
    /// `amplitude * tanh((x - center) / width)`.
    Tanh {
        #[serde(default = "neg_one")]
        amplitude: f64,
        #[serde(default = "one")]
        width: f64,
        #[serde(default)]
        center: f64,
    },
    /// Jump at `at` with one-sided Taylor coefficients `left[n] = u0^(n)(at - 0)`.
    Step {
        #[serde(default)]
        at: f64,
        left: Vec<f64>,
        right: Vec<f64>,
    },
    Piecewise {
        breaks: Vec<f64>,
        values: Vec<f64>,
    },
    /// `-(x + a x^2)` for `x < 0`, zero for `x > 0`, given at `t = -1`.
    WeakDiscontinuity {
        #[serde(default = "one")]
        a: f64,
        /// Width of the smooth cutoff used by finite-volume references.
        #[serde(default)]
        cutoff_width: Option<f64>,
    },
    /// `nu(x / rho)` with `nu(s) = mean + amplitude * tanh(s)`.
    ScaledTanh {
        #[serde(default)]
        mean: f64,
        #[serde(default = "neg_one")]
        amplitude: f64,
    },
}

impl InitialConfig {
    pub fn is_constant(&self) -> bool {
        matches!(self, InitialConfig::Constant { .. })
    }

    pub fn variant(&self) -> &'static str {
        match self {
            InitialConfig::Constant { .. } => "constant",
            InitialConfig::Tanh { .. } => "tanh",
            InitialConfig::Step { .. } => "step",
            InitialConfig::Piecewise { .. } => "piecewise",
            InitialConfig::WeakDiscontinuity { .. } => "weak-discontinuity",
            InitialConfig::ScaledTanh { .. } => "scaled-tanh",
        }
    }

    /// Data for the reference solve; `rho` only matters for `scaled-tanh`.
    pub fn build(&self, rho: Option<f64>) -> CliResult<InitialData> {
        let q = match self {
            InitialConfig::Constant { value } => InitialData::Constant(*value),
            InitialConfig::Tanh {
                amplitude,
                width,
                center,
            } => InitialData::Tanh {
                amplitude: *amplitude,
                width: *width,
                center: *center,
            },
            InitialConfig::Step { at, left, right } => InitialData::Step {
                at: *at,
                left: left.clone(),
                right: right.clone(),
            },
            InitialConfig::Piecewise { breaks, values } => InitialData::Piecewise {
                breaks: breaks.clone(),
                values: values.clone(),
            },
            InitialConfig::WeakDiscontinuity { a, .. } => InitialData::weak_discontinuity(*a),
            InitialConfig::ScaledTanh { .. } => {
                let rho = rho.ok_or_else(|| CliError::validation("scaled-tanh data needs rho"))?;
                let (profile, tails) = self.profile()?;
                InitialData::Scaled {
                    profile,
                    rho,
                    tails,
                }
            }
        };
        q.validate()
            .map_err(|e| CliError::validation(format!("initial data: {e}")))?;
        Ok(q)
    }

    /// Profile and tails of `scaled-tanh` data.
    pub fn profile(&self) -> CliResult<(Profile, TailExpansion)> {
        let InitialConfig::ScaledTanh { mean, amplitude } = *self else {
            return Err(CliError::validation("only scaled-tanh data has a profile"));
        };
        let tails = TailExpansion::new(mean - amplitude, mean + amplitude)
            .map_err(|e| CliError::validation(format!("initial data: {e}")))?;
        let profile = if mean == 0.0 {
            Profile::Tanh { amplitude }
        } else {
            Profile::Custom {
                value: std::sync::Arc::new(move |s: f64| mean + amplitude * s.tanh()),
                derivative: std::sync::Arc::new(move |s: f64| amplitude / s.cosh().powi(2)),
            }
        };
        Ok((profile, tails))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub epsilon: Vec<f64>,
    #[serde(default)]
    pub rho: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceMethod {
    /// Hopf integral; Burgers flux only.
    Hopf,
    /// Finite-volume solve.
    Solver,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    #[serde(default)]
    pub reference: Option<ReferenceMethod>,
    #[serde(default)]
    pub nx: Option<usize>,
    #[serde(default)]
    pub nt: Option<usize>,
    #[serde(default)]
    pub half_width: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportSection {
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    #[serde(default)]
    pub slope_band: Option<[f64; 2]>,
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("asymlab-out")
}

impl Default for ReportSection {
    fn default() -> Self {
        ReportSection {
            out_dir: default_out_dir(),
            slope_band: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioSection,
    #[serde(default)]
    pub flux: FluxConfig,
    #[serde(default)]
    pub initial: Option<InitialConfig>,
    pub sweep: SweepSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub report: ReportSection,
}

impl ScenarioConfig {
    pub fn kind(&self) -> ScenarioKind {
        self.scenario.kind
    }

    pub fn window(&self) -> Window {
        self.scenario
            .window
            .unwrap_or_else(|| default_window(self.kind()))
    }

    pub fn approximation(&self) -> Approximation {
        self.scenario
            .approximation
            .unwrap_or(Approximation::Leading)
    }

    pub fn initial(&self) -> &InitialConfig {
        self.initial
            .as_ref()
            .expect("initial data is filled in by resolve")
    }

    pub fn slope_band(&self) -> [f64; 2] {
        self.report
            .slope_band
            .unwrap_or_else(|| default_band(self.kind(), self.approximation()))
    }

    pub fn reference(&self) -> ReferenceMethod {
        self.grid.reference.unwrap_or(ReferenceMethod::Hopf)
    }

    /// Sweep parameters: `epsilon`, or `mu = rho / eps` for large-gradient.
    pub fn params(&self) -> Vec<f64> {
        match (self.kind(), &self.sweep.rho) {
            (ScenarioKind::LargeGradient, Some(rho)) => {
                rho.iter().map(|r| r / self.sweep.epsilon[0]).collect()
            }
            _ => self.sweep.epsilon.clone(),
        }
    }

    /// Fills every optional field with its default.
    pub fn resolve(mut self) -> Self {
        let kind = self.kind();
        if self.scenario.approximation.is_none() {
            self.scenario.approximation = Some(match kind {
                ScenarioKind::LargeGradient => Approximation::Composite,
                _ => Approximation::Leading,
            });
        }
        self.scenario.window.get_or_insert(default_window(kind));
        self.initial.get_or_insert_with(|| default_initial(kind));
        if kind == ScenarioKind::LargeGradient && self.sweep.rho.is_none() {
            let eps = self.sweep.epsilon.first().copied().unwrap_or(0.05);
            self.sweep.rho = Some([0.2, 0.1, 0.05, 0.025].iter().map(|m| m * eps).collect());
        }
        let burgers = self.flux.is_burgers();
        let reference = *self.grid.reference.get_or_insert(if burgers {
            ReferenceMethod::Hopf
        } else {
            ReferenceMethod::Solver
        });
        if reference == ReferenceMethod::Solver {
            self.grid.nx.get_or_insert(4096);
            self.grid.nt.get_or_insert(2048);
            self.grid.half_width.get_or_insert(match kind {
                ScenarioKind::Weakshock => 6.0,
                ScenarioKind::LargeGradient => 8.0,
                _ => 16.0,
            });
        }
        if let Some(InitialConfig::WeakDiscontinuity { cutoff_width, .. }) = &mut self.initial {
            if reference == ReferenceMethod::Solver {
                cutoff_width.get_or_insert(0.5);
            }
        }
        let band = default_band(kind, self.approximation());
        self.report.slope_band.get_or_insert(band);
        self
    }

    /// Checks the invariants of a resolved config.
    pub fn validate(&self) -> CliResult<()> {
        let kind = self.kind();
        let eps = &self.sweep.epsilon;
        if eps.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
            return Err(CliError::validation(
                "epsilon entries must be positive and finite",
            ));
        }
        if eps.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(CliError::validation(
                "epsilon list must be strictly decreasing",
            ));
        }
        if kind == ScenarioKind::LargeGradient {
            if eps.len() != 1 {
                return Err(CliError::validation(format!(
                    "large-gradient sweeps take a single epsilon, got {}",
                    eps.len()
                )));
            }
            let rho = self.sweep.rho.as_deref().unwrap_or(&[]);
            if rho.len() < 3 {
                return Err(CliError::validation(format!(
                    "rho list needs at least 3 entries for a rate fit, got {}",
                    rho.len()
                )));
            }
            if rho.iter().any(|r| !(*r > 0.0 && *r < eps[0])) {
                return Err(CliError::validation(
                    "rho entries must satisfy 0 < rho < epsilon",
                ));
            }
            if rho.windows(2).any(|w| !(w[1] < w[0])) {
                return Err(CliError::validation("rho list must be strictly decreasing"));
            }
        } else {
            if eps.len() < 3 {
                return Err(CliError::validation(format!(
                    "epsilon list needs at least 3 entries for a rate fit, got {}",
                    eps.len()
                )));
            }
            if self.sweep.rho.is_some() {
                return Err(CliError::validation(
                    "rho is only used by large-gradient sweeps",
                ));
            }
        }

        let w = self.window();
        let finite = [w.xi_min, w.xi_max, w.tau_min, w.tau_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || !(w.xi_min < w.xi_max) || !(w.tau_min < w.tau_max) {
            return Err(CliError::validation(
                "window must be a finite, non-empty rectangle",
            ));
        }
        if w.nx < 2 || w.ntau < 2 {
            return Err(CliError::validation("window needs nx >= 2 and ntau >= 2"));
        }
        if kind == ScenarioKind::LargeGradient && !(w.tau_min > 0.0) {
            return Err(CliError::validation("large-gradient window needs t > 0"));
        }
        if kind == ScenarioKind::InitialJump && !(w.tau_min > 0.0) {
            return Err(CliError::validation("initial-jump window needs tau > 0"));
        }

        let [lo, hi] = self.slope_band();
        if !(lo < hi) {
            return Err(CliError::validation("slope_band must satisfy lo < hi"));
        }

        let approx = self.approximation();
        let approx_ok = match approx {
            Approximation::Leading => kind != ScenarioKind::LargeGradient,
            Approximation::TwoTerm => kind == ScenarioKind::Weakshock,
            Approximation::Composite | Approximation::Renormalized => {
                kind == ScenarioKind::LargeGradient
            }
        };
        if !approx_ok {
            return Err(CliError::validation(format!(
                "approximation {approx:?} does not apply to {}",
                kind.name()
            )));
        }

        let flux = self.flux.build()?;
        let initial = self.initial();
        let variant_ok = initial.is_constant()
            || matches!(
                (kind, initial),
                (ScenarioKind::Fold, InitialConfig::Tanh { .. })
                    | (ScenarioKind::InitialJump, InitialConfig::Step { .. })
                    | (ScenarioKind::Collision, InitialConfig::Piecewise { .. })
                    | (
                        ScenarioKind::Weakshock,
                        InitialConfig::WeakDiscontinuity { .. }
                    )
                    | (
                        ScenarioKind::LargeGradient,
                        InitialConfig::ScaledTanh { .. }
                    )
            );
        if !variant_ok {
            return Err(CliError::validation(format!(
                "initial variant {} does not fit scenario {}",
                initial.variant(),
                kind.name()
            )));
        }
        if let InitialConfig::Piecewise { values, .. } = initial {
            if values.len() != 3 {
                return Err(CliError::validation(
                    "collision data needs exactly three states",
                ));
            }
        }
        let rho = self.sweep.rho.as_ref().and_then(|r| r.first().copied());
        initial.build(rho)?;

        if self.reference() == ReferenceMethod::Hopf && !self.flux.is_burgers() {
            return Err(CliError::validation(
                "the hopf reference needs the burgers flux",
            ));
        }
        if kind == ScenarioKind::Collision && !self.flux.is_burgers() && !initial.is_constant() {
            return Err(CliError::validation(
                "collision inner term needs the burgers flux",
            ));
        }
        if kind == ScenarioKind::Weakshock && !initial.is_constant() {
            if let InitialConfig::WeakDiscontinuity { a, .. } = initial {
                asymlab::weakshock::WeakShockParams::new(*a, &flux)
                    .map_err(|e| CliError::validation(format!("weak shock: {e}")))?;
            }
        }
        if kind == ScenarioKind::LargeGradient {
            let tails_ok = match initial {
                InitialConfig::ScaledTanh { amplitude, .. } => *amplitude < 0.0,
                _ => true,
            };
            if !tails_ok {
                return Err(CliError::validation(
                    "large-gradient data needs nu0- > nu0+ (amplitude < 0)",
                ));
            }
        }
        if self.reference() == ReferenceMethod::Solver {
            let (nx, nt) = (self.grid.nx.unwrap_or(0), self.grid.nt.unwrap_or(0));
            if nx < 16 || nt < 16 {
                return Err(CliError::validation(
                    "solver grid needs nx >= 16 and nt >= 16",
                ));
            }
            if !self
                .grid
                .half_width
                .is_some_and(|h| h > 0.0 && h.is_finite())
            {
                return Err(CliError::validation("solver half_width must be positive"));
            }
        }
        Ok(())
    }
}

pub fn default_window(kind: ScenarioKind) -> Window {
    let (xi, tau, nx, ntau) = match kind {
        ScenarioKind::InitialJump => ((-10.0, 10.0), (1.0, 10.0), 41, 10),
        ScenarioKind::Collision => ((-10.0, 10.0), (-2.0, 2.0), 41, 9),
        ScenarioKind::Fold => ((-3.0, 3.0), (-2.0, 2.0), 25, 17),
        ScenarioKind::Weakshock => ((-3.0, 3.0), (-2.0, 2.0), 13, 9),
        ScenarioKind::LargeGradient => ((-1.0, 1.0), (0.1, 1.0), 81, 10),
    };
    Window {
        xi_min: xi.0,
        xi_max: xi.1,
        tau_min: tau.0,
        tau_max: tau.1,
        nx,
        ntau,
    }
}

pub fn default_initial(kind: ScenarioKind) -> InitialConfig {
    match kind {
        ScenarioKind::InitialJump => InitialConfig::Step {
            at: 0.0,
            left: vec![1.0, -0.25],
            right: vec![-1.0, -0.25],
        },
        ScenarioKind::Collision => InitialConfig::Piecewise {
            breaks: vec![-1.0, 1.0],
            values: vec![2.0, 0.0, -2.0],
        },
        ScenarioKind::Fold => InitialConfig::Tanh {
            amplitude: -1.0,
            width: 1.0,
            center: 0.0,
        },
        ScenarioKind::Weakshock => InitialConfig::WeakDiscontinuity {
            a: 1.0,
            cutoff_width: None,
        },
        ScenarioKind::LargeGradient => InitialConfig::ScaledTanh {
            mean: 0.0,
            amplitude: -1.0,
        },
    }
}

pub fn default_band(kind: ScenarioKind, approx: Approximation) -> [f64; 2] {
    match (kind, approx) {
        (ScenarioKind::InitialJump, _) => [0.8, 10.0],
        (ScenarioKind::Collision, _) => [1.0, 100.0],
        (ScenarioKind::Fold, _) => [0.4, 10.0],
        (ScenarioKind::Weakshock, _) => [0.1, 10.0],
        (ScenarioKind::LargeGradient, Approximation::Renormalized) => [0.15, 0.5],
        (ScenarioKind::LargeGradient, _) => [0.3, 0.8],
    }
}

/// Parses, fills defaults and validates a TOML scenario.
pub fn parse_config(text: &str) -> CliResult<ScenarioConfig> {
    let raw: ScenarioConfig = toml::from_str(text).map_err(|e| parse_error(text, &e))?;
    let cfg = raw.resolve();
    cfg.validate()?;
    Ok(cfg)
}

pub fn parse_config_file(path: &Path) -> CliResult<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config(&text)
}

fn parse_error(text: &str, err: &toml::de::Error) -> CliError {
    let offset = err.span().map(|s| s.start).unwrap_or(0).min(text.len());
    let line = text[..offset].matches('\n').count() + 1;
    let line_text = text.lines().nth(line - 1).unwrap_or("").trim();
    let field = match line_text.split_once('=') {
        Some((key, _)) => key.trim().to_string(),
        None => line_text.to_string(),
    };
    CliError::Parse {
        line,
        field,
        message: err.message().trim().to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL_FOLD: &str = "[scenario]\nkind = \"fold\"\n\n[flux]\nkind = \"burgers\"\n\n[sweep]\nepsilon = [1e-2, 5e-3, 2.5e-3]\n";

    #[test]
    fn minimal_fold_gets_defaults() {
        let cfg = parse_config(MINIMAL_FOLD).unwrap();
        assert_eq!(cfg.kind(), ScenarioKind::Fold);
        assert_eq!(cfg.window(), default_window(ScenarioKind::Fold));
        assert_eq!(cfg.slope_band(), [0.4, 10.0]);
        assert_eq!(cfg.reference(), ReferenceMethod::Hopf);
        assert!(matches!(cfg.initial(), InitialConfig::Tanh { .. }));
    }

    #[test]
    fn two_epsilons_is_a_validation_error() {
        let text = MINIMAL_FOLD.replace("[1e-2, 5e-3, 2.5e-3]", "[1e-2, 5e-3]");
        assert!(matches!(
            parse_config(&text),
            Err(CliError::Validation { .. })
        ));
    }

    #[test]
    fn unknown_kind_is_a_parse_error() {
        let text = MINIMAL_FOLD.replace("\"fold\"", "\"cusp\"");
        match parse_config(&text) {
            Err(CliError::Parse { line, field, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(field, "kind");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn increasing_epsilons_rejected() {
        let text = MINIMAL_FOLD.replace("[1e-2, 5e-3, 2.5e-3]", "[1e-2, 2e-2, 2.5e-3]");
        assert!(matches!(
            parse_config(&text),
            Err(CliError::Validation { .. })
        ));
    }

    #[test]
    fn mismatched_initial_variant_rejected() {
        let text = format!("{MINIMAL_FOLD}\n[initial]\nvariant = \"piecewise\"\nbreaks = [0.0]\nvalues = [1.0, 0.0]\n");
        assert!(matches!(
            parse_config(&text),
            Err(CliError::Validation { .. })
        ));
    }

    #[test]
    fn hopf_needs_burgers() {
        let text = MINIMAL_FOLD.replace(
            "kind = \"burgers\"",
            "kind = \"exponential\"\ninterval = [-1.0, 1.0]",
        ) + "\n[grid]\nreference = \"hopf\"\n";
        assert!(matches!(
            parse_config(&text),
            Err(CliError::Validation { .. })
        ));
    }

    #[test]
    fn large_gradient_defaults() {
        let cfg =
            parse_config("[scenario]\nkind = \"large-gradient\"\n[sweep]\nepsilon = [0.05]\n")
                .unwrap();
        let mu = cfg.params();
        assert_eq!(mu.len(), 4);
        assert!((mu[0] - 0.2).abs() < 1e-12 && (mu[3] - 0.025).abs() < 1e-12);
        assert_eq!(cfg.slope_band(), [0.3, 0.8]);
    }

    #[test]
    fn resolved_config_round_trips() {
        let cfg = parse_config(MINIMAL_FOLD).unwrap();
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(parse_config(&text).unwrap(), cfg);
    }
}

//! Problem configuration for the viscous equation on a truncated domain.

use crate::error::{Error, Result};
use crate::flux::FluxFunction;
use crate::initial::InitialData;

#[derive(Debug, Clone)]
pub struct ProblemConfig {
    pub flux: FluxFunction,
    pub initial: InitialData,
    pub epsilon: f64,
    pub t0: f64,
    pub t_end: f64,
    /// Spatial half-width `L` of `[-L, L]`.
    pub half_width: f64,
}

impl ProblemConfig {
    pub fn new(
        flux: FluxFunction,
        initial: InitialData,
        epsilon: f64,
        t0: f64,
        t_end: f64,
        half_width: f64,
    ) -> Result<Self> {
        let cfg = ProblemConfig {
            flux,
            initial,
            epsilon,
            t0,
            t_end,
            half_width,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidInput(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !(self.t_end > self.t0) {
            return Err(Error::InvalidInput(format!(
                "t_end = {} must exceed t0 = {}",
                self.t_end, self.t0
            )));
        }
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "half width must be positive, got {}",
                self.half_width
            )));
        }
        self.initial.validate()?;
        if let Some((lm, lp)) = self.initial.limits() {
            let dl = (self.initial.value(-self.half_width) - lm).abs();
            let dr = (self.initial.value(self.half_width) - lp).abs();
            if dl.max(dr) > 1e-12 {
                return Err(Error::DomainTooSmall { drift: dl.max(dr) });
            }
        }
        Ok(())
    }

    /// Dirichlet values `(q(-L), q(L))`.
    pub fn boundary_values(&self) -> (f64, f64) {
        (
            self.initial.value(-self.half_width),
            self.initial.value(self.half_width),
        )
    }

    /// Default operating interval `[min q - 1, max q + 1]` over the domain.
    pub fn default_interval(initial: &InitialData, half_width: f64) -> (f64, f64) {
        let (lo, hi) = initial.range_on(-half_width, half_width);
        (lo - 1.0, hi + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_domain() {
        let err = ProblemConfig::new(
            FluxFunction::burgers(),
            InitialData::neg_tanh(),
            0.1,
            0.0,
            1.0,
            5.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DomainTooSmall { .. }));
        ProblemConfig::new(
            FluxFunction::burgers(),
            InitialData::neg_tanh(),
            0.1,
            0.0,
            1.0,
            20.0,
        )
        .unwrap();
    }

    #[test]
    fn rejects_bad_times() {
        assert!(ProblemConfig::new(
            FluxFunction::burgers(),
            InitialData::Constant(1.0),
            0.1,
            1.0,
            1.0,
            1.0
        )
        .is_err());
        assert!(ProblemConfig::new(
            FluxFunction::burgers(),
            InitialData::Constant(1.0),
            0.0,
            0.0,
            1.0,
            1.0
        )
        .is_err());
    }
}

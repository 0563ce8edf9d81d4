use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("flux is not convex: phi''({at}) = {value} <= 0")]
    ConvexityViolation { at: f64, value: f64 },
    #[error("max_derivative_order must be at least 4, got {0}")]
    OrderTooLow(usize),
    #[error("derivative order {requested} exceeds supported maximum {max}")]
    OrderTooHigh { requested: usize, max: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("quadrature did not converge: estimate {estimate:e} after {evaluations} evaluations")]
    NoConvergence { estimate: f64, evaluations: usize },

    #[error("viscous solver unstable at step {step}: value {value} outside [{lo}, {hi}]")]
    Instability {
        step: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("domain too small: boundary cell drifted by {drift:e}")]
    DomainTooSmall { drift: f64 },
    #[error("Hopf integral requested at t = {0:e}; use the initial data instead")]
    SmallTimeBlowup(f64),

    #[error("characteristics cross at x = {x}, t = {t}: {roots} roots")]
    MultivaluedRegion { x: f64, t: f64, roots: usize },
    #[error("data is not compressive anywhere, no gradient catastrophe")]
    NoCatastrophe,
    #[error("shock states collapsed at t = {0}")]
    StatesCollapsed(f64),
    #[error("shock curves do not meet on their common time interval")]
    NoCollision,
    #[error("shocks merge tangentially: |s1' - s2'| = {0:e}")]
    DegenerateMerge(f64),

    #[error("(xi, tau) = ({xi}, {tau}) lies inside the cusp; fold root is not unique")]
    InsideCusp { xi: f64, tau: f64 },
    #[error("comparator window violated: {0}")]
    WindowViolation(String),
    #[error("flux is not normalized: {0}")]
    NotNormalized(String),
    #[error("b = a - phi'''(0)/2 = {0} is not positive")]
    BNonPositive(f64),
    #[error("degenerate jump |nu0+ - nu0-| = {0:e}")]
    DegenerateJump(f64),
}

//! Affine-plus-power maps between outer `(x, t)` and inner coordinates.

/// `xi = (x - x_star - c (t - t_star)) / x_scale`, `tau = (t - t_star) / t_scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerScaling {
    pub x_star: f64,
    pub t_star: f64,
    pub x_exponent: f64,
    pub t_exponent: f64,
    pub x_shift_speed: f64,
    pub x_scale: f64,
    pub t_scale: f64,
}

impl InnerScaling {
    /// Power scaling `x_scale = eps^x_exponent`, `t_scale = eps^t_exponent`.
    pub fn power(
        eps: f64,
        x_exponent: f64,
        t_exponent: f64,
        x_star: f64,
        t_star: f64,
        x_shift_speed: f64,
    ) -> Self {
        InnerScaling {
            x_star,
            t_star,
            x_exponent,
            t_exponent,
            x_shift_speed,
            x_scale: eps.powf(x_exponent),
            t_scale: eps.powf(t_exponent),
        }
    }

    /// `zeta = (x - s(t)) / eps`, `tau = (t - t_star) / eps` in a frame moving at `speed`.
    pub fn jump(eps: f64, x_star: f64, t_star: f64, speed: f64) -> Self {
        Self::power(eps, 1.0, 1.0, x_star, t_star, speed)
    }

    /// Gradient catastrophe: `eps^{3/4}` in space, `eps^{1/2}` in time.
    pub fn fold(eps: f64, x_star: f64, t_star: f64, speed: f64) -> Self {
        Self::power(eps, 0.75, 0.5, x_star, t_star, speed)
    }

    /// Weak discontinuity turning into a shock: `eps^{2/3}` and `eps^{1/3}`.
    pub fn weak_shock(eps: f64, x_star: f64, t_star: f64) -> Self {
        Self::power(eps, 2.0 / 3.0, 1.0 / 3.0, x_star, t_star, 0.0)
    }

    /// `sigma = x / rho`, `omega = eps t / rho^2`.
    pub fn large_gradient_outer(eps: f64, rho: f64) -> Self {
        let mu = rho / eps;
        InnerScaling {
            x_star: 0.0,
            t_star: 0.0,
            x_exponent: 1.0,
            t_exponent: 2.0,
            x_shift_speed: 0.0,
            x_scale: rho,
            t_scale: rho * mu,
        }
    }

    /// `eta = x / eps`, `theta = t / eps`.
    pub fn large_gradient_inner(eps: f64) -> Self {
        Self::power(eps, 1.0, 1.0, 0.0, 0.0, 0.0)
    }

    pub fn to_inner(&self, x: f64, t: f64) -> (f64, f64) {
        let dt = t - self.t_star;
        (
            (x - self.x_star - self.x_shift_speed * dt) / self.x_scale,
            dt / self.t_scale,
        )
    }

    pub fn from_inner(&self, xi: f64, tau: f64) -> (f64, f64) {
        let dt = tau * self.t_scale;
        (
            self.x_star + self.x_shift_speed * dt + xi * self.x_scale,
            self.t_star + dt,
        )
    }
}

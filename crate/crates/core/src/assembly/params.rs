use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a base value turns into a per-edge parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scaling {
    /// `base / h_e`
    #[serde(rename = "inv-edge")]
    InverseEdge,
    /// `base * h_e`
    #[serde(rename = "edge")]
    LinearEdge,
    /// `base`
    #[serde(rename = "const")]
    Constant,
}

impl Scaling {
    pub fn apply(self, base: f64, h_e: f64) -> f64 {
        match self {
            Scaling::InverseEdge => base / h_e,
            Scaling::LinearEdge => base * h_e,
            Scaling::Constant => base,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scaling::InverseEdge => "inv-edge",
            Scaling::LinearEdge => "edge",
            Scaling::Constant => "const",
        }
    }
}

impl std::str::FromStr for Scaling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inv-edge" => Ok(Scaling::InverseEdge),
            "edge" => Ok(Scaling::LinearEdge),
            "const" => Ok(Scaling::Constant),
            other => Err(Error::InvalidArgument(format!(
                "unknown scaling '{other}' (expected inv-edge, edge or const)"
            ))),
        }
    }
}

/// Penalty parameters of the numerical fluxes: `β` multiplies the jump of
/// `u` in the flux for `σ`, `δ` the jump of the gradient (or of `σ`) in the
/// flux for `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxParams {
    pub beta0: f64,
    pub beta_scaling: Scaling,
    pub delta0: f64,
    pub delta_scaling: Scaling,
}

impl Default for FluxParams {
    /// `δ = 0.1 h_e`, `β = 0.001 / h_e`.
    fn default() -> Self {
        FluxParams {
            beta0: 0.001,
            beta_scaling: Scaling::InverseEdge,
            delta0: 0.1,
            delta_scaling: Scaling::LinearEdge,
        }
    }
}

impl FluxParams {
    pub fn new(beta0: f64, beta_scaling: Scaling, delta0: f64, delta_scaling: Scaling) -> Self {
        FluxParams {
            beta0,
            beta_scaling,
            delta0,
            delta_scaling,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta0 > 0.0 && self.beta0.is_finite()) {
            return Err(Error::InvalidArgument("beta0 must be positive".into()));
        }
        if !(self.delta0 > 0.0 && self.delta0.is_finite()) {
            return Err(Error::InvalidArgument("delta0 must be positive".into()));
        }
        Ok(())
    }

    pub fn beta(&self, h_e: f64) -> f64 {
        self.beta_scaling.apply(self.beta0, h_e)
    }

    pub fn delta(&self, h_e: f64) -> f64 {
        self.delta_scaling.apply(self.delta0, h_e)
    }

    /// Short human-readable form, e.g. `β=0.001/h_e δ=0.1h_e`.
    pub fn describe(&self) -> String {
        let fmt = |sym: &str, v: f64, s: Scaling| match s {
            Scaling::InverseEdge => format!("{sym}={v}/h_e"),
            Scaling::LinearEdge => format!("{sym}={v}h_e"),
            Scaling::Constant => format!("{sym}={v}"),
        };
        format!(
            "{} {}",
            fmt("beta", self.beta0, self.beta_scaling),
            fmt("delta", self.delta0, self.delta_scaling)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_scaling() {
        let p = FluxParams::default();
        assert!((p.beta(0.1) - 0.01).abs() < 1e-15);
        assert!((p.delta(0.1) - 0.01).abs() < 1e-15);
        let c = FluxParams::new(1.0, Scaling::Constant, 0.1, Scaling::Constant);
        assert_eq!(c.beta(0.3), 1.0);
        assert_eq!(c.delta(0.3), 0.1);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(
            FluxParams::new(0.0, Scaling::Constant, 1.0, Scaling::Constant)
                .validate()
                .is_err()
        );
        assert!(
            FluxParams::new(1.0, Scaling::Constant, -1.0, Scaling::Constant)
                .validate()
                .is_err()
        );
        assert!(FluxParams::default().validate().is_ok());
    }

    #[test]
    fn scaling_names_round_trip() {
        for s in [Scaling::InverseEdge, Scaling::LinearEdge, Scaling::Constant] {
            assert_eq!(s.name().parse::<Scaling>().unwrap(), s);
            let json = serde_json::to_string(&s).unwrap();
            assert_eq!(json, format!("\"{}\"", s.name()));
        }
        assert!("sideways".parse::<Scaling>().is_err());
    }
}

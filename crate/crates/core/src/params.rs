use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::series::check_order;
use crate::{Error, Result, Scalar};

/// Physical inputs of the driven two-level system: level splitting `omega0`
/// and drive amplitude `A`, in the same angular-frequency units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiParams<F: Scalar> {
    omega0: F,
    amplitude: F,
}

impl<F: Scalar> RabiParams<F> {
    /// Validated constructor: `omega0 > 0`, `amplitude >= 0`, both finite.
    pub fn new(omega0: F, amplitude: F) -> Result<Self> {
        if !omega0.is_finite() || omega0 <= F::zero() {
            return Err(Error::InvalidParams(format!(
                "omega0 must be finite and positive (got {omega0})"
            )));
        }
        if !amplitude.is_finite() || amplitude < F::zero() {
            return Err(Error::InvalidParams(format!(
                "amplitude must be finite and non-negative (got {amplitude})"
            )));
        }
        Ok(Self { omega0, amplitude })
    }

    pub fn omega0(&self) -> F {
        self.omega0
    }

    pub fn amplitude(&self) -> F {
        self.amplitude
    }

    /// Dimensionless drive ratio `x = A / omega0`.
    pub fn drive_ratio(&self) -> F {
        self.amplitude / self.omega0
    }

    /// Informational driving-regime label: weak below `x = 0.5`, strong
    /// above `x = 5`, intermediate between.
    pub fn regime(&self) -> &'static str {
        let x = self.drive_ratio();
        if x < F::from(0.5).unwrap() {
            "weak"
        } else if x > F::from(5.0).unwrap() {
            "strong"
        } else {
            "intermediate"
        }
    }
}

/// Shift-computation method tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    Pt2,
    Pt4,
    Pt6,
    Pt8,
    Extrap2,
    Extrap4,
    Extrap6,
    Extrap8,
    Rwa,
    Asymptotic,
    Floquet,
}

impl Method {
    /// Perturbation-series tag for the given order.
    pub fn pt(order: u32) -> Result<Self> {
        check_order(order)?;
        Ok(match order {
            2 => Method::Pt2,
            4 => Method::Pt4,
            6 => Method::Pt6,
            _ => Method::Pt8,
        })
    }

    /// Extrapolation-formula tag for the given order.
    pub fn extrap(order: u32) -> Result<Self> {
        check_order(order)?;
        Ok(match order {
            2 => Method::Extrap2,
            4 => Method::Extrap4,
            6 => Method::Extrap6,
            _ => Method::Extrap8,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Pt2 => "pt2",
            Method::Pt4 => "pt4",
            Method::Pt6 => "pt6",
            Method::Pt8 => "pt8",
            Method::Extrap2 => "extrap2",
            Method::Extrap4 => "extrap4",
            Method::Extrap6 => "extrap6",
            Method::Extrap8 => "extrap8",
            Method::Rwa => "rwa",
            Method::Asymptotic => "asymptotic",
            Method::Floquet => "floquet",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pt2" => Method::Pt2,
            "pt4" => Method::Pt4,
            "pt6" => Method::Pt6,
            "pt8" => Method::Pt8,
            "extrap2" => Method::Extrap2,
            "extrap4" => Method::Extrap4,
            "extrap6" => Method::Extrap6,
            "extrap8" => Method::Extrap8,
            "rwa" => Method::Rwa,
            "asymptotic" => Method::Asymptotic,
            "floquet" | "numerical" => Method::Floquet,
            other => return Err(Error::InvalidParams(format!("unknown method '{other}'"))),
        })
    }
}

/// Result of one shift computation.
///
/// The shift is the single source of truth; the resonance frequency is always
/// `omega0 + shift`.
#[derive(Debug, Clone)]
pub struct ShiftReport<F: Scalar> {
    pub method: Method,
    pub params: RabiParams<F>,
    pub shift: F,
    /// Method-specific diagnostics (truncation sizes, iteration counts,
    /// residuals, regime label).
    pub diagnostics: BTreeMap<String, serde_json::Value>,
}

impl<F: Scalar> ShiftReport<F> {
    pub fn new(method: Method, params: RabiParams<F>, shift: F) -> Self {
        let mut diagnostics = BTreeMap::new();
        diagnostics.insert(
            "regime".to_string(),
            serde_json::Value::String(params.regime().to_string()),
        );
        Self {
            method,
            params,
            shift,
            diagnostics,
        }
    }

    pub fn with_diagnostic(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.diagnostics.insert(key.to_string(), value.into());
        self
    }

    /// `omega_res = omega0 + shift`.
    pub fn resonance(&self) -> F {
        self.params.omega0() + self.shift
    }

    /// Relative shift `delta / omega0`, the convention of the comparison
    /// table.
    pub fn relative_shift(&self) -> F {
        self.shift / self.params.omega0()
    }

    /// Wire format: `{method, omega0, amplitude, shift, resonance,
    /// diagnostics}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "method": self.method.as_str(),
            "omega0": self.params.omega0().to_f64(),
            "amplitude": self.params.amplitude().to_f64(),
            "shift": self.shift.to_f64(),
            "resonance": self.resonance().to_f64(),
            "diagnostics": self.diagnostics,
        })
    }
}

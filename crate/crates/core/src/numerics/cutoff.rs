//! High-frequency regulators for divergent mode sums.

use std::fmt;

use crate::error::{require_positive, Result};

/// Shape of the regulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CutoffKind {
    /// Step function `Θ(Λ - ν)`.
    Sharp,
    /// `1 - 1/(1 + e^{-ν+Λ})`: unit-width logistic step centred on Λ.
    SmoothLogistic,
    /// `exp(-(ν/Λ)²)`: a second smooth family used to check that
    /// regularized limits do not depend on the regulator.
    SmoothGaussian,
}

impl CutoffKind {
    pub fn is_smooth(self) -> bool {
        !matches!(self, CutoffKind::Sharp)
    }

    pub fn name(self) -> &'static str {
        match self {
            CutoffKind::Sharp => "sharp",
            CutoffKind::SmoothLogistic => "logistic",
            CutoffKind::SmoothGaussian => "gaussian",
        }
    }
}

/// A regulator together with its scale Λ, measured in units of the
/// fundamental transverse mode index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffSpec {
    kind: CutoffKind,
    lambda: f64,
}

impl CutoffSpec {
    pub fn new(kind: CutoffKind, lambda: f64) -> Result<Self> {
        let lambda = require_positive("lambda", lambda)?;
        Ok(CutoffSpec { kind, lambda })
    }

    pub fn sharp(lambda: f64) -> Result<Self> {
        Self::new(CutoffKind::Sharp, lambda)
    }

    pub fn logistic(lambda: f64) -> Result<Self> {
        Self::new(CutoffKind::SmoothLogistic, lambda)
    }

    pub fn gaussian(lambda: f64) -> Result<Self> {
        Self::new(CutoffKind::SmoothGaussian, lambda)
    }

    /// The `Λ = ∞` sentinel: unit weight everywhere, for summands that
    /// already decay on their own.
    pub fn unregulated() -> Self {
        CutoffSpec {
            kind: CutoffKind::SmoothLogistic,
            lambda: f64::INFINITY,
        }
    }

    pub fn kind(&self) -> CutoffKind {
        self.kind
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn is_unregulated(&self) -> bool {
        self.lambda.is_infinite()
    }

    /// Regulator weight at mode index `nu >= 0`.
    pub fn weight(&self, nu: f64) -> f64 {
        if self.is_unregulated() {
            return 1.0;
        }
        match self.kind {
            CutoffKind::Sharp => {
                if nu <= self.lambda {
                    1.0
                } else {
                    0.0
                }
            }
            // 1 - 1/(1+e^{Λ-ν}) == 1/(1+e^{ν-Λ}); the latter does not cancel.
            CutoffKind::SmoothLogistic => 1.0 / (1.0 + (nu - self.lambda).exp()),
            CutoffKind::SmoothGaussian => {
                let r = nu / self.lambda;
                (-r * r).exp()
            }
        }
    }

    /// Index beyond which sums over the regulated modes are truncated:
    /// `ceil(Λ) + 50 Λ`.
    pub fn truncation_bound(&self) -> Option<usize> {
        if self.is_unregulated() {
            None
        } else {
            Some((self.lambda.ceil() + 50.0 * self.lambda) as usize)
        }
    }
}

impl fmt::Display for CutoffSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unregulated() {
            write!(f, "unregulated")
        } else {
            write!(f, "{}(Λ={})", self.kind.name(), self.lambda)
        }
    }
}

/// Free-function form of [`CutoffSpec::weight`].
pub fn cutoff_weight(c: &CutoffSpec, nu: f64) -> f64 {
    c.weight(nu)
}

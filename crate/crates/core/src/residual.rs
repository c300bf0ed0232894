use serde::Serialize;

/// Absolute residual together with the magnitude of the quantities it was
/// computed from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub abs: f64,
    pub scale: f64,
}

impl Residual {
    pub fn zero() -> Self {
        Residual { abs: 0.0, scale: 0.0 }
    }

    pub fn new(abs: f64, scale: f64) -> Self {
        Residual { abs, scale }
    }

    /// `abs / scale`, or `abs` itself when the scale is below one.
    pub fn relative(&self) -> f64 {
        if self.scale > 1.0 {
            self.abs / self.scale
        } else {
            self.abs
        }
    }

    /// `abs ≤ tol · max(scale, 1)`.
    pub fn within(&self, tol: f64) -> bool {
        self.abs <= tol * self.scale.max(1.0)
    }

    /// Componentwise maximum, for folding residuals over a grid.
    pub fn max(self, other: Residual) -> Residual {
        Residual { abs: self.abs.max(other.abs), scale: self.scale.max(other.scale) }
    }

    /// The residual with the larger relative value.
    pub fn worst(self, other: Residual) -> Residual {
        if other.relative() > self.relative() {
            other
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_uses_unit_floor() {
        assert_eq!(Residual::new(1e-12, 0.0).relative(), 1e-12);
        assert!((Residual::new(1e-6, 1e3).relative() - 1e-9).abs() < 1e-24);
        assert!(Residual::new(1e-6, 1e3).within(1e-9));
        assert!(!Residual::new(2e-9, 0.5).within(1e-9));
    }
}

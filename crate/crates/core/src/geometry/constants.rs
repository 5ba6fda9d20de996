use crate::error::{Error, Result};

/// Sectional curvature range of a manifold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureBounds {
    pub kmin: f64,
    pub kmax: f64,
}

impl CurvatureBounds {
    pub fn new(kmin: f64, kmax: f64) -> Result<Self> {
        if !(kmin.is_finite() && kmax.is_finite()) || kmin > kmax || kmax > 0.0 {
            return Err(Error::invalid(format!(
                "curvature bounds must satisfy kmin <= kmax <= 0, got [{kmin}, {kmax}]"
            )));
        }
        Ok(CurvatureBounds { kmin, kmax })
    }

    pub fn flat() -> Self {
        CurvatureBounds {
            kmin: 0.0,
            kmax: 0.0,
        }
    }

    pub fn zeta(&self, d: f64) -> f64 {
        zeta(d, self.kmin).expect("nonnegative diameter")
    }

    pub fn delta(&self, d: f64) -> f64 {
        delta(d, self.kmax).expect("nonpositive kmax")
    }
}

/// Upper Hessian bound of the half squared distance on sets of diameter `d`:
/// `x coth x` with `x = d sqrt|kmin|`.
pub fn zeta(d: f64, kmin: f64) -> Result<f64> {
    if !(d >= 0.0) {
        return Err(Error::invalid(format!(
            "diameter must be nonnegative, got {d}"
        )));
    }
    let x = d * kmin.abs().sqrt();
    if x < 1e-4 {
        return Ok(1.0 + x * x / 3.0);
    }
    if x > 40.0 {
        return Ok(x);
    }
    Ok(x / x.tanh())
}

/// Lower Hessian bound: 1 on nonpositive curvature, `x cot x` otherwise.
pub fn delta(d: f64, kmax: f64) -> Result<f64> {
    if !(d >= 0.0) {
        return Err(Error::invalid(format!(
            "diameter must be nonnegative, got {d}"
        )));
    }
    if kmax <= 0.0 {
        return Ok(1.0);
    }
    let x = d * kmax.sqrt();
    if x >= std::f64::consts::PI {
        return Err(Error::invalid(format!(
            "d*sqrt(kmax) = {x} is at least pi; the constant is undefined"
        )));
    }
    if x < 1e-4 {
        return Ok(1.0 - x * x / 3.0);
    }
    Ok(x / x.tan())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_values() {
        assert_eq!(zeta(3.0, 0.0).unwrap(), 1.0);
        assert_eq!(zeta(0.0, -5.0).unwrap(), 1.0);
        // coth(1) and 4 coth(4), 20-digit references.
        assert!((zeta(1.0, -1.0).unwrap() - 1.313_035_285_499_331_3).abs() < 1e-14);
        assert!((zeta(2.0, -4.0).unwrap() - 4.002_684_601_606_73).abs() < 1e-13);
        assert!(zeta(-1.0, -1.0).is_err());
    }

    #[test]
    fn zeta_series_is_continuous() {
        let below = zeta(0.99999e-4, -1.0).unwrap();
        let above = zeta(1.00001e-4, -1.0).unwrap();
        assert!((below - above).abs() < 1e-12);
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(7.0, -1.0).unwrap(), 1.0);
        assert_eq!(delta(0.0, 1.0).unwrap(), 1.0);
        let q = std::f64::consts::FRAC_PI_4;
        assert!((delta(q, 1.0).unwrap() - q).abs() < 1e-15);
        assert!(delta(std::f64::consts::PI, 1.0).is_err());
    }
}

//! Symmetric matrix functions through the eigendecomposition.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Smallest eigenvalue admitted by `log`/`sqrt`/inverse functions.
pub const EIG_FLOOR: f64 = 1e-14;

pub fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

pub struct SymEig {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

impl SymEig {
    pub fn new(m: &DMatrix<f64>) -> Self {
        let e = SymmetricEigen::new(symmetrize(m));
        SymEig {
            values: e.eigenvalues,
            vectors: e.eigenvectors,
        }
    }

    /// Q diag(f(λ)) Qᵀ.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let q = &self.vectors;
        let mut scaled = q.clone();
        for (j, &l) in self.values.iter().enumerate() {
            let s = f(l);
            scaled.column_mut(j).scale_mut(s);
        }
        symmetrize(&(scaled * q.transpose()))
    }
}

pub fn expm(m: &DMatrix<f64>) -> DMatrix<f64> {
    SymEig::new(m).apply(f64::exp)
}

pub fn logm(m: &DMatrix<f64>) -> DMatrix<f64> {
    SymEig::new(m).apply(|l| l.max(EIG_FLOOR).ln())
}

pub fn sqrtm(m: &DMatrix<f64>) -> DMatrix<f64> {
    SymEig::new(m).apply(|l| l.max(EIG_FLOOR).sqrt())
}

/// Square root and inverse square root of an SPD matrix.
pub struct SpdRoots {
    pub sqrt: DMatrix<f64>,
    pub inv_sqrt: DMatrix<f64>,
}

impl SpdRoots {
    pub fn new(m: &DMatrix<f64>) -> Self {
        let e = SymEig::new(m);
        SpdRoots {
            sqrt: e.apply(|l| l.max(EIG_FLOOR).sqrt()),
            inv_sqrt: e.apply(|l| 1.0 / l.max(EIG_FLOOR).sqrt()),
        }
    }

    /// X^{-1/2} M X^{-1/2}
    pub fn whiten(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        symmetrize(&(&self.inv_sqrt * m * &self.inv_sqrt))
    }

    /// X^{1/2} M X^{1/2}
    pub fn color(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        symmetrize(&(&self.sqrt * m * &self.sqrt))
    }
}

/// First divided difference of `f` at (a, b), with `df` used on the diagonal.
pub fn divided_difference(f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let h = a - b;
    if h.abs() <= 1e-9 * (1.0 + a.abs().max(b.abs())) {
        df(0.5 * (a + b))
    } else {
        (f(a) - f(b)) / h
    }
}

/// Divided difference of exp, stable for nearby arguments.
pub fn exp_divided_difference(a: f64, b: f64) -> f64 {
    let h = a - b;
    if h == 0.0 {
        return a.exp();
    }
    b.exp() * h.exp_m1() / h
}

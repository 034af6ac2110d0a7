//! 1-D stationary Schrodinger machinery in natural units
//! (hbar = mass = 1): the kinetic operator -(1/2) d^2/dy^2 on second-order
//! central differences, eigenvalue residual checks, energy
//! classification, and the classical particle-in-a-box baseline.
//!
//! The point demonstrated here: Phi-valued plane waves k e^{jy} satisfy
//! H q = (1/2) k q, an energy eigenvalue proportional to the basis
//! element k. Since k is the unity of Phi, E = c*1 and E = c*k act
//! identically on Phi waves; the k-proportional form is the one reported.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::analytic::phi_wave;
use crate::error::CoreError;
use crate::hnum::{HFloat, HNum};
use crate::table::{B_I, B_K, B_ONE};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    Dirichlet,
}

/// A wave sampled on a uniform grid.
#[derive(Clone, Debug)]
pub struct GridWave {
    pub values: Vec<HFloat>,
    pub y_min: f64,
    pub y_max: f64,
    pub boundary: Boundary,
}

impl GridWave {
    pub fn new(
        values: Vec<HFloat>,
        y_min: f64,
        y_max: f64,
        boundary: Boundary,
    ) -> Result<Self, CoreError> {
        if values.len() < 3 {
            return Err(CoreError::GridTooCoarse { needed: 3, got: values.len() });
        }
        if !(y_max > y_min) {
            return Err(CoreError::InvalidConfig("y_max must exceed y_min".into()));
        }
        Ok(GridWave { values, y_min, y_max, boundary })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        (self.y_max - self.y_min) / (self.len() - 1) as f64
    }

    /// Periodic sampling of the Phi plane wave k e^{jy} with M points
    /// covering one full period: y_m = 2 pi m / M, so the wrap at the
    /// grid edge is seamless.
    pub fn phi_plane_wave(m: usize) -> Result<Self, CoreError> {
        let h = 2.0 * std::f64::consts::PI / m as f64;
        let values = (0..m).map(|n| phi_wave(n as f64 * h)).collect();
        GridWave::new(values, 0.0, (m - 1) as f64 * h, Boundary::Periodic)
    }

    /// Periodic sampling of the psi plane wave e^{iy}, same layout.
    pub fn psi_plane_wave(m: usize) -> Result<Self, CoreError> {
        let h = 2.0 * std::f64::consts::PI / m as f64;
        let values = (0..m)
            .map(|n| {
                let y = n as f64 * h;
                HNum::new([y.cos(), y.sin(), 0.0, 0.0])
            })
            .collect();
        GridWave::new(values, 0.0, (m - 1) as f64 * h, Boundary::Periodic)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.max_abs()).fold(0.0, f64::max)
    }
}

/// Energy classification by which coefficients are nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyClass {
    Real,
    IImaginary,
    KProportional,
    Mixed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyValue {
    pub value: HFloat,
    pub classification: EnergyClass,
}

/// Classifies with absolute tolerance 1e-10 on float coefficients.
pub fn classify_energy(value: &HFloat) -> EnergyValue {
    const TOL: f64 = 1e-10;
    let nz: Vec<usize> = (0..4).filter(|&n| value.c[n].abs() > TOL).collect();
    let classification = match nz.as_slice() {
        [] | [B_ONE] => EnergyClass::Real,
        [B_I] => EnergyClass::IImaginary,
        [B_K] => EnergyClass::KProportional,
        _ => EnergyClass::Mixed,
    };
    EnergyValue { value: value.clone(), classification }
}

impl EnergyValue {
    pub fn real(e: f64) -> Self {
        classify_energy(&HFloat::scalar(e))
    }

    pub fn k_proportional(e: f64) -> Self {
        let mut v = HFloat::zero();
        v.c[B_K] = e;
        classify_energy(&v)
    }
}

/// Applies -(1/2) d^2/dy^2 by the central second difference
/// (w[m-1] - 2 w[m] + w[m+1]) / h^2, boundary per mode.
pub fn hamiltonian_apply(w: &GridWave) -> Result<GridWave, CoreError> {
    let m = w.len();
    if m < 3 {
        return Err(CoreError::GridTooCoarse { needed: 3, got: m });
    }
    let h2 = w.spacing() * w.spacing();
    let zero = HFloat::zero();
    let at = |n: i64| -> HFloat {
        if n >= 0 && (n as usize) < m {
            return w.values[n as usize].clone();
        }
        match w.boundary {
            Boundary::Periodic => w.values[n.rem_euclid(m as i64) as usize].clone(),
            Boundary::Dirichlet => zero.clone(),
        }
    };
    let values = (0..m as i64)
        .map(|n| {
            let second = at(n - 1) - at(n).scale(&2.0) + at(n + 1);
            second.scale(&(-0.5 / h2))
        })
        .collect();
    Ok(GridWave { values, y_min: w.y_min, y_max: w.y_max, boundary: w.boundary })
}

/// Relative residual max|H w - E w| / max|w|, with E w multiplied in
/// Omega.
pub fn eigencheck(w: &GridWave, energy: &EnergyValue) -> Result<f64, CoreError> {
    if !energy.value.is_finite() {
        return Err(CoreError::InvalidConfig("energy must be finite".into()));
    }
    let scale = w.max_abs();
    if scale == 0.0 {
        return Err(CoreError::ZeroWave);
    }
    let omega = Algebra::omega();
    let hw = hamiltonian_apply(w)?;
    let residual = hw
        .values
        .iter()
        .zip(&w.values)
        .map(|(h, v)| (h.clone() - omega.mul(&energy.value, v)).max_abs())
        .fold(0.0, f64::max);
    Ok(residual / scale)
}

/// Lowest box energies on [0, L] with Dirichlet walls, by dense
/// diagonalization of the interior finite-difference Hamiltonian.
/// Converges to n^2 pi^2 / (2 L^2).
pub fn box_spectrum(levels: usize, l: f64, m: usize) -> Result<Vec<EnergyValue>, CoreError> {
    if levels < 1 {
        return Err(CoreError::InvalidConfig("levels must be >= 1".into()));
    }
    if m < levels * 8 {
        return Err(CoreError::GridTooCoarse { needed: levels * 8, got: m });
    }
    if !(l > 0.0) {
        return Err(CoreError::InvalidConfig("box length must be positive".into()));
    }
    let h = l / (m - 1) as f64;
    let interior = m - 2;
    let mat = DMatrix::from_fn(interior, interior, |r, c| {
        if r == c {
            1.0 / (h * h)
        } else if r.abs_diff(c) == 1 {
            -0.5 / (h * h)
        } else {
            0.0
        }
    });
    let mut eigen: Vec<f64> = mat.symmetric_eigenvalues().iter().copied().collect();
    eigen.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(eigen.into_iter().take(levels).map(EnergyValue::real).collect())
}

/// Log-log slope of residual vs spacing across grid sizes; 2.0 for a
/// second-order scheme.
pub fn convergence_slope(ms: &[usize], residual_at: impl Fn(usize) -> f64) -> f64 {
    let points: Vec<(f64, f64)> = ms
        .iter()
        .map(|&m| {
            let h = 2.0 * std::f64::consts::PI / m as f64;
            (h.ln(), residual_at(m).ln())
        })
        .collect();
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

//! Taylor-series analytic functions over table-defined algebras, the
//! Phi-valued wave q(y) = k * e^{jy}, and the psi<->Phi coupling identity.
//!
//! The series run in float mode. Closed form for Omega:
//! e^{jy} = (1 - k) + k cos y + j sin y, hence
//! k e^{jy} = k cos y + j sin y, a unit "rotation" inside Phi.

use crate::algebra::Algebra;
use crate::error::CoreError;
use crate::hnum::HFloat;
use crate::table::{B_I, B_J, B_K};

/// Truncation control for the Taylor series.
#[derive(Clone, Copy, Debug)]
pub struct SeriesConfig {
    /// Absolute tolerance on the coefficient norm of the next term.
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        // Factorial decay makes this ample for |y| <= 4*pi.
        SeriesConfig { tol: 1e-13, max_terms: 200 }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<(), CoreError> {
        if !(self.tol > 0.0) {
            return Err(CoreError::InvalidConfig("series tol must be > 0".into()));
        }
        if self.max_terms < 1 {
            return Err(CoreError::InvalidConfig("max_terms must be >= 1".into()));
        }
        Ok(())
    }
}

/// x^n by square-and-multiply. Non-associative algebras are refused for
/// n > 2, where the bracketing would be ambiguous.
pub fn power(alg: &Algebra, x: &HFloat, n: u32) -> Result<HFloat, CoreError> {
    if n > 2 && !alg.properties().associative {
        return Err(CoreError::NonAssociativePower(alg.name().to_string()));
    }
    let mut result = HFloat::one();
    let mut base = x.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            result = alg.mul(&result, &base);
        }
        n >>= 1;
        if n > 0 {
            base = alg.mul(&base, &base);
        }
    }
    Ok(result)
}

fn series(
    alg: &Algebra,
    x: &HFloat,
    cfg: &SeriesConfig,
    mut coeff: impl FnMut(usize) -> f64,
) -> Result<HFloat, CoreError> {
    cfg.validate()?;
    if !alg.properties().associative {
        return Err(CoreError::NonAssociativePower(alg.name().to_string()));
    }
    let mut sum = HFloat::zero();
    let mut term = HFloat::one(); // x^0
    for n in 0..cfg.max_terms {
        let scaled = term.scale(&coeff(n));
        sum = sum + scaled.clone();
        // x^n / n! -> x^(n+1) / (n+1)!
        term = alg.mul(&term, x).scale(&(1.0 / (n as f64 + 1.0)));
        if term.coeff_norm() < cfg.tol {
            // One more term for good measure, then stop.
            sum = sum + term.scale(&coeff(n + 1));
            return Ok(sum);
        }
    }
    Err(CoreError::NoConvergence { max_terms: cfg.max_terms, tol: cfg.tol })
}

/// exp by partial sums of x^n / n! until the term norm drops below tol.
pub fn exp(alg: &Algebra, x: &HFloat, cfg: &SeriesConfig) -> Result<HFloat, CoreError> {
    series(alg, x, cfg, |_| 1.0)
}

/// sin by the alternating odd series.
pub fn sin(alg: &Algebra, x: &HFloat, cfg: &SeriesConfig) -> Result<HFloat, CoreError> {
    series(alg, x, cfg, |n| match n % 4 {
        1 => 1.0,
        3 => -1.0,
        _ => 0.0,
    })
}

/// cos by the alternating even series.
pub fn cos(alg: &Algebra, x: &HFloat, cfg: &SeriesConfig) -> Result<HFloat, CoreError> {
    series(alg, x, cfg, |n| match n % 4 {
        0 => 1.0,
        2 => -1.0,
        _ => 0.0,
    })
}

/// The Phi wave q(y) = k * e^{jy} = k cos y + j sin y, evaluated in
/// closed form (the series agrees; see tests).
pub fn phi_wave(y: f64) -> HFloat {
    let mut q = HFloat::zero();
    q.c[B_J] = y.sin();
    q.c[B_K] = y.cos();
    q
}

/// The wave with the i exponent, k * e^{iy}, exposed for comparison with
/// the j-exponent form. Under the Omega table k*i = j, so the two forms
/// coincide; this function computes it by the series route regardless.
pub fn phi_wave_printed_variant(y: f64) -> HFloat {
    let omega = Algebra::omega();
    let cfg = SeriesConfig::default();
    let mut iy = HFloat::zero();
    iy.c[B_I] = y;
    let e_iy = exp(&omega, &iy, &cfg).expect("exp converges on psi");
    omega.mul(&HFloat::basis(B_K), &e_iy)
}

/// e^{ix} as a psi-valued (1, i) number.
pub fn psi_phase(x: f64) -> HFloat {
    let mut z = HFloat::zero();
    z.c[0] = x.cos();
    z.c[B_I] = x.sin();
    z
}

/// Residual of the coupling identity e^{ix} * (k e^{jy}) = k e^{j(x+y)},
/// as a coefficient norm. Series evaluation on the left, closed form on
/// the right.
pub fn verify_coupling_identity(x: f64, y: f64) -> f64 {
    let omega = Algebra::omega();
    let cfg = SeriesConfig::default();
    let mut ix = HFloat::zero();
    ix.c[B_I] = x;
    let left_phase = exp(&omega, &ix, &cfg).expect("exp converges on psi");
    let mut jy = HFloat::zero();
    jy.c[B_J] = y;
    let e_jy = exp(&omega, &jy, &cfg).expect("exp converges on Phi orbit");
    let wave = omega.mul(&HFloat::basis(B_K), &e_jy);
    let lhs = omega.mul(&left_phase, &wave);
    let rhs = phi_wave(x + y);
    (lhs - rhs).coeff_norm()
}

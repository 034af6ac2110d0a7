//! Monte-Carlo simulation of the phase-coupling mechanism: a Phi-phase
//! drift shifts a psi two-path interference probability, and the shift
//! shows up in outcome statistics.
//!
//! The two-path amplitude is a = (e^{i th1} + e^{i (th2 + d')}) / 2 with
//! d' the psi phase induced by the Phi drift through the identity
//! e^{ix} (k e^{jy}) = k e^{j(x+y)}; phase additivity transfers the
//! drift one-to-one. Everything here is a statement about the model,
//! never about nature.

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::algebra::Algebra;
use crate::analytic::{phi_wave, psi_phase};
use crate::error::CoreError;
use crate::hnum::Conjugation;
use crate::table::{B_J, B_K, B_ONE};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CouplingConfig {
    /// Phi-phase drift in radians.
    pub delta: f64,
    /// Base phases (theta1, theta2) of the two paths.
    pub base_phases: (f64, f64),
    pub samples: u64,
    pub rng_seed: u64,
}

impl CouplingConfig {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.samples < 1 {
            return Err(CoreError::InvalidConfig("samples must be >= 1".into()));
        }
        if !(self.delta.is_finite()
            && self.base_phases.0.is_finite()
            && self.base_phases.1.is_finite())
        {
            return Err(CoreError::InvalidConfig("phases must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    /// (hits, misses); sums to `samples`.
    pub counts: (u64, u64),
    /// The modulated outcome probability actually sampled.
    pub expected_probability: f64,
    /// The delta = 0 null probability tested against.
    pub null_probability: f64,
    /// Chi-square against the null expectation; `None` when the null is
    /// degenerate (probability exactly 0 or 1).
    pub chi_square: Option<f64>,
    pub p_value: Option<f64>,
}

/// Recovers the psi phase shift induced by a Phi drift through the
/// table: phi_wave(delta) = k cos d + j sin d, and the psi factor that
/// produces it from k is e^{id}. Equals delta (mod 2 pi) exactly to the
/// extent the coupling identity holds.
pub fn psi_shift_from_phi_drift(delta: f64) -> f64 {
    let drifted = phi_wave(delta);
    drifted.c[B_J].atan2(drifted.c[B_K])
}

/// Two-path interference probability |a|^2 with the Phi drift folded
/// into the second path. Computed with psi-conjugation in the algebra.
pub fn modulated_probability(cfg: &CouplingConfig) -> f64 {
    let omega = Algebra::omega();
    let (th1, th2) = cfg.base_phases;
    // Wrap the drift through Phi and back; identical to adding delta.
    let shift = psi_shift_from_phi_drift(cfg.delta);
    let amp = (psi_phase(th1) + psi_phase(th2 + shift)).scale(&0.5);
    let p = omega.mul(&amp, &amp.conjugate(Conjugation::Psi)).c[B_ONE];
    p.clamp(0.0, 1.0)
}

/// Chi-square (1 dof, no continuity correction) of observed counts
/// against a null probability, with the survival-function p-value.
pub fn chi_square_test(counts: (u64, u64), null_p: f64) -> Result<(f64, f64), CoreError> {
    if null_p <= 0.0 || null_p >= 1.0 {
        return Err(CoreError::DegenerateExpectation);
    }
    let n = (counts.0 + counts.1) as f64;
    let expected = [n * null_p, n * (1.0 - null_p)];
    let observed = [counts.0 as f64, counts.1 as f64];
    let chi2: f64 = observed
        .iter()
        .zip(&expected)
        .map(|(o, e)| (o - e) * (o - e) / e)
        .sum();
    let p_value = erfc((chi2 / 2.0).sqrt());
    Ok((chi2, p_value))
}

/// Draws seeded Bernoulli outcomes at the modulated probability and
/// tests them against the delta = 0 expectation. Fully reproducible
/// from the seed.
pub fn run_experiment(cfg: &CouplingConfig) -> Result<ExperimentResult, CoreError> {
    cfg.validate()?;
    let p_mod = modulated_probability(cfg);
    let null_cfg = CouplingConfig { delta: 0.0, ..cfg.clone() };
    let p_null = modulated_probability(&null_cfg);

    let mut rng = ChaCha12Rng::seed_from_u64(cfg.rng_seed);
    let mut hits = 0u64;
    for _ in 0..cfg.samples {
        if rng.gen_bool(p_mod) {
            hits += 1;
        }
    }
    let counts = (hits, cfg.samples - hits);

    let (chi_square, p_value) = match chi_square_test(counts, p_null) {
        Ok((c, p)) => (Some(c), Some(p)),
        Err(CoreError::DegenerateExpectation) => (None, None),
        Err(e) => return Err(e),
    };

    Ok(ExperimentResult {
        counts,
        expected_probability: p_mod,
        null_probability: p_null,
        chi_square,
        p_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg(delta: f64, th1: f64, th2: f64, samples: u64, seed: u64) -> CouplingConfig {
        CouplingConfig { delta, base_phases: (th1, th2), samples, rng_seed: seed }
    }

    #[test]
    fn interference_extremes() {
        assert!((modulated_probability(&cfg(0.0, 0.0, 0.0, 1, 0)) - 1.0).abs() < 1e-12);
        assert!(modulated_probability(&cfg(PI, 0.0, 0.0, 1, 0)).abs() < 1e-12);
        assert!((modulated_probability(&cfg(PI / 2.0, 0.0, 0.0, 1, 0)) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn probability_stays_in_unit_interval() {
        for n in 0..100 {
            let p = modulated_probability(&cfg(
                n as f64 * 0.37,
                n as f64 * 0.11,
                -(n as f64) * 0.23,
                1,
                0,
            ));
            assert!((0.0..=1.0).contains(&p));
        }
    }

    #[test]
    fn phase_transfer_is_one_to_one() {
        for n in 0..25 {
            let delta = -PI + n as f64 * (2.0 * PI / 25.0);
            let shift = psi_shift_from_phi_drift(delta);
            let err = (shift - delta).rem_euclid(2.0 * PI).min(
                (delta - shift).rem_euclid(2.0 * PI),
            );
            assert!(err < 1e-12, "delta={delta} shift={shift}");
        }
    }

    #[test]
    fn two_pi_periodic_in_delta() {
        for n in 0..20 {
            let d = n as f64 * 0.4;
            let a = modulated_probability(&cfg(d, 0.3, 1.1, 1, 0));
            let b = modulated_probability(&cfg(d + 2.0 * PI, 0.3, 1.1, 1, 0));
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let c = cfg(PI, 0.0, PI / 3.0, 10_000, 12345);
        let a = run_experiment(&c).unwrap();
        let b = run_experiment(&c).unwrap();
        assert_eq!(a, b);
        let other = run_experiment(&cfg(PI, 0.0, PI / 3.0, 10_000, 54321)).unwrap();
        assert_ne!(a.counts, other.counts);
    }

    #[test]
    fn null_vs_null_chi_square_small() {
        // delta = 0: sampling its own expectation; chi-square is small
        // with overwhelming probability (exactly 0 only for exact counts).
        let r = run_experiment(&cfg(0.0, 0.0, PI / 3.0, 10_000, 7)).unwrap();
        assert_eq!(r.expected_probability, r.null_probability);
        assert!(r.p_value.unwrap() > 0.001);
    }

    #[test]
    fn shifted_phase_detected() {
        // null |1 + e^{i pi/3}|^2 / 4 = 0.75; delta = pi gives
        // |1 + e^{i 4pi/3}|^2 / 4 = 0.25: detection with tiny p.
        let r = run_experiment(&cfg(PI, 0.0, PI / 3.0, 10_000, 99)).unwrap();
        assert!((r.null_probability - 0.75).abs() < 1e-12);
        assert!((r.expected_probability - 0.25).abs() < 1e-12);
        assert!(r.p_value.unwrap() < 1e-6);
    }

    #[test]
    fn degenerate_null_reports_counts_only() {
        // th1 = th2 = 0, delta irrelevant for the null: p_null = 1.
        let r = run_experiment(&cfg(PI, 0.0, 0.0, 100, 3)).unwrap();
        assert_eq!(r.counts.0 + r.counts.1, 100);
        assert!(r.chi_square.is_none());
        assert!(r.p_value.is_none());
    }

    #[test]
    fn counts_sum_to_samples() {
        let r = run_experiment(&cfg(1.0, 0.2, 0.9, 5_000, 42)).unwrap();
        assert_eq!(r.counts.0 + r.counts.1, 5_000);
    }

    #[test]
    fn rejects_zero_samples() {
        assert!(run_experiment(&cfg(0.0, 0.0, 0.0, 0, 0)).is_err());
    }
}

//! Discrete Fourier transform over the Phi subalgebra and the embedded
//! complex numbers psi, with the algebra isomorphism between the two.
//!
//! Phi is complex-isomorphic with unity k and imaginary unit j, so the
//! kernel K(t) = k cos(2 pi t / N) + j sin(2 pi t / N) carries the whole
//! classical DFT theory through the linear map 1 -> k, i -> j. Naive
//! O(N^2) summation with compensated accumulation is the reference
//! implementation; N stays small at desk scale.

use crate::algebra::Algebra;
use crate::error::CoreError;
use crate::hnum::{Conjugation, HFloat, HNum};
use crate::table::{B_I, B_J, B_K, B_ONE};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignalKind {
    /// Samples in span(1, i).
    Psi,
    /// Samples in span(j, k).
    Phi,
}

impl SignalKind {
    pub fn support(&self) -> [usize; 2] {
        match self {
            SignalKind::Psi => [B_ONE, B_I],
            SignalKind::Phi => [B_J, B_K],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// A length-N signal confined to one of the two subalgebras.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal {
    kind: SignalKind,
    samples: Vec<HFloat>,
}

impl Signal {
    pub fn new(kind: SignalKind, samples: Vec<HFloat>) -> Result<Self, CoreError> {
        if samples.is_empty() {
            return Err(CoreError::InvalidConfig("signal must have N >= 1".into()));
        }
        let support = kind.support();
        for (index, s) in samples.iter().enumerate() {
            if !s.supported_on(&support) || !s.is_finite() {
                return Err(CoreError::MalformedSignal { index });
            }
        }
        Ok(Signal { kind, samples })
    }

    pub fn kind(&self) -> SignalKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[HFloat] {
        &self.samples
    }
}

/// The subalgebra's rotation kernel at integer phase t (mod N).
fn kernel(kind: SignalKind, t: i64, n: usize) -> HFloat {
    let angle = 2.0 * std::f64::consts::PI * (t.rem_euclid(n as i64) as f64) / n as f64;
    let mut out = HFloat::zero();
    match kind {
        SignalKind::Psi => {
            out.c[B_ONE] = angle.cos();
            out.c[B_I] = angle.sin();
        }
        SignalKind::Phi => {
            out.c[B_K] = angle.cos();
            out.c[B_J] = angle.sin();
        }
    }
    out
}

// Kahan-compensated accumulation per coefficient.
fn compensated_sum(terms: impl Iterator<Item = HFloat>) -> HFloat {
    let mut sum = [0.0f64; 4];
    let mut comp = [0.0f64; 4];
    for t in terms {
        for n in 0..4 {
            let y = t.c[n] - comp[n];
            let s = sum[n] + y;
            comp[n] = (s - sum[n]) - y;
            sum[n] = s;
        }
    }
    HNum::new(sum)
}

/// DFT in the signal's own subalgebra. Forward uses K(-mn), inverse uses
/// K(+mn)/N. The output stays in the same subalgebra exactly: the table
/// never maps products of the support outside it.
pub fn dft(signal: &Signal, direction: Direction) -> Result<Signal, CoreError> {
    let omega = Algebra::omega();
    let n = signal.len();
    let kind = signal.kind();
    let mut out = Vec::with_capacity(n);
    for row in 0..n {
        let sum = compensated_sum((0..n).map(|col| {
            let t = (row * col) as i64;
            let k = match direction {
                Direction::Forward => kernel(kind, -t, n),
                Direction::Inverse => kernel(kind, t, n),
            };
            omega.mul(&signal.samples[col], &k)
        }));
        let sum = match direction {
            Direction::Forward => sum,
            Direction::Inverse => sum.scale(&(1.0 / n as f64)),
        };
        out.push(sum);
    }
    Signal::new(kind, out)
}

/// The linear algebra isomorphism 1 -> k, i -> j between psi and Phi
/// (and its inverse). Errors when the input leaves the source span.
pub fn iso_map(x: &HFloat, from: SignalKind) -> Result<HFloat, CoreError> {
    if !x.supported_on(&from.support()) {
        return Err(CoreError::MalformedSignal { index: 0 });
    }
    let mut out = HFloat::zero();
    match from {
        SignalKind::Psi => {
            out.c[B_K] = x.c[B_ONE];
            out.c[B_J] = x.c[B_I];
        }
        SignalKind::Phi => {
            out.c[B_ONE] = x.c[B_K];
            out.c[B_I] = x.c[B_J];
        }
    }
    Ok(out)
}

/// Maps a whole signal across the isomorphism.
pub fn iso_map_signal(signal: &Signal) -> Result<Signal, CoreError> {
    let from = signal.kind();
    let to = match from {
        SignalKind::Psi => SignalKind::Phi,
        SignalKind::Phi => SignalKind::Psi,
    };
    let samples = signal
        .samples()
        .iter()
        .map(|s| iso_map(s, from))
        .collect::<Result<Vec<_>, _>>()?;
    Signal::new(to, samples)
}

/// Phi inner product <a, b> = k-coefficient of a * conj_phi(b). Under
/// the isomorphism this is the real part of the complex inner product.
pub fn phi_inner(a: &HFloat, b: &HFloat) -> f64 {
    let omega = Algebra::omega();
    omega.mul(a, &b.conjugate(Conjugation::Phi)).c[B_K]
}

/// Energy on both sides of the transform: lhs = sum |x[m]|^2,
/// rhs = (1/N) sum |F[n]|^2. The contract is lhs = rhs.
pub fn parseval_check(signal: &Signal) -> Result<(f64, f64), CoreError> {
    if signal.kind() != SignalKind::Phi {
        return Err(CoreError::MalformedSignal { index: 0 });
    }
    let spectrum = dft(signal, Direction::Forward)?;
    let lhs: f64 = signal.samples().iter().map(|s| phi_inner(s, s)).sum();
    let rhs: f64 =
        spectrum.samples().iter().map(|s| phi_inner(s, s)).sum::<f64>() / signal.len() as f64;
    Ok((lhs, rhs))
}

/// Experimental transform of a full Omega-valued sample list: splits
/// each sample into its psi and Phi parts and transforms each with its
/// own kernel. No correctness contract beyond the per-part transforms.
pub fn dft_omega_experimental(
    samples: &[HFloat],
    direction: Direction,
) -> Result<Vec<HFloat>, CoreError> {
    let psi_part: Vec<HFloat> = samples
        .iter()
        .map(|s| HNum::new([s.c[0], s.c[1], 0.0, 0.0]))
        .collect();
    let phi_part: Vec<HFloat> = samples
        .iter()
        .map(|s| HNum::new([0.0, 0.0, s.c[2], s.c[3]]))
        .collect();
    let psi_out = dft(&Signal::new(SignalKind::Psi, psi_part)?, direction)?;
    let phi_out = dft(&Signal::new(SignalKind::Phi, phi_part)?, direction)?;
    Ok(psi_out
        .samples()
        .iter()
        .zip(phi_out.samples())
        .map(|(p, f)| p.clone() + f.clone())
        .collect())
}

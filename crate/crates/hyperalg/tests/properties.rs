//! Property-based checks of the algebraic laws, run on randomly drawn
//! elements rather than the hand-picked cases in the unit tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use hyperalg::algebra::Algebra;
use hyperalg::analytic::{self, SeriesConfig};
use hyperalg::hnum::{HFloat, HRat};
use hyperalg::spectral::{dft, iso_map_signal, Direction, Signal, SignalKind};

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational hypercomplex numbers with small coefficients; denominators
/// stay modest so products remain cheap to reduce.
fn arb_hrat() -> impl Strategy<Value = HRat> {
    let coeff = (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rat(n, d));
    [coeff.clone(), coeff.clone(), coeff.clone(), coeff]
        .prop_map(|c| HRat::new(c))
}

// Coefficients stay within the range where the truncated Taylor series
// are accurate to well below the assertion tolerances; large arguments
// lose digits to cancellation, which is a float fact, not an algebra one.
fn arb_hfloat() -> impl Strategy<Value = HFloat> {
    let coeff = -3.0f64..3.0;
    [coeff.clone(), coeff.clone(), coeff.clone(), coeff].prop_map(HFloat::new)
}

fn is_zero(x: &HRat) -> bool {
    x.c.iter().all(|v| v.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn omega_commutes(x in arb_hrat(), y in arb_hrat()) {
        let alg = Algebra::omega();
        prop_assert_eq!(alg.mul(&x, &y), alg.mul(&y, &x));
    }

    #[test]
    fn omega_associates(x in arb_hrat(), y in arb_hrat(), z in arb_hrat()) {
        let alg = Algebra::omega();
        let left = alg.mul(&alg.mul(&x, &y), &z);
        let right = alg.mul(&x, &alg.mul(&y, &z));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn quaternions_associate(x in arb_hrat(), y in arb_hrat(), z in arb_hrat()) {
        let alg = Algebra::quaternion();
        let left = alg.mul(&alg.mul(&x, &y), &z);
        let right = alg.mul(&x, &alg.mul(&y, &z));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn omega_distributes(x in arb_hrat(), y in arb_hrat(), z in arb_hrat()) {
        let alg = Algebra::omega();
        let left = alg.mul(&x, &(y.clone() + z.clone()));
        let right = alg.mul(&x, &y) + alg.mul(&x, &z);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn unitality(x in arb_hrat()) {
        for alg in [Algebra::omega(), Algebra::quaternion()] {
            prop_assert_eq!(alg.mul(&HRat::one(), &x), x.clone());
            prop_assert_eq!(alg.mul(&x, &HRat::one()), x.clone());
        }
    }

    /// When an element is invertible at all, the inverse is exact and
    /// two-sided; when it is not, multiplication by it cannot be undone.
    #[test]
    fn invert_round_trip(x in arb_hrat()) {
        let alg = Algebra::omega();
        if is_zero(&x) {
            prop_assert!(alg.invert(&x).is_err());
            return Ok(());
        }
        match alg.invert(&x) {
            Ok(inv) => {
                prop_assert_eq!(alg.mul(&x, &inv), HRat::one());
                prop_assert_eq!(alg.mul(&inv, &x), HRat::one());
            }
            Err(_) => {
                // A genuine zero divisor: some nonzero y with x*y = 0
                // exists, so the left-multiplication map is not injective.
                // Witness it through the structural machinery instead of
                // re-deriving: (1-k, k) generates the annihilator pattern.
                // Here it suffices that x times *something* nonzero can
                // reach zero only for singular x, checked by determinant
                // in the library; trust but verify one consequence:
                let y = alg.mul(&x, &x);
                prop_assert!(alg.invert(&y).is_err());
            }
        }
    }

    /// The span(j, k) plane is closed under Omega multiplication.
    #[test]
    fn phi_plane_closed(c in -50i64..=50, d in -50i64..=50, e in -50i64..=50, f in -50i64..=50) {
        let alg = Algebra::omega();
        let x = HRat::new([rat(0, 1), rat(0, 1), rat(c, 1), rat(d, 1)]);
        let y = HRat::new([rat(0, 1), rat(0, 1), rat(e, 1), rat(f, 1)]);
        let p = alg.mul(&x, &y);
        prop_assert!(p.c[0].is_zero() && p.c[1].is_zero());
    }

    /// Same for span(1, i), in both algebras.
    #[test]
    fn psi_plane_closed(a in -50i64..=50, b in -50i64..=50, e in -50i64..=50, f in -50i64..=50) {
        for alg in [Algebra::omega(), Algebra::quaternion()] {
            let x = HRat::new([rat(a, 1), rat(b, 1), rat(0, 1), rat(0, 1)]);
            let y = HRat::new([rat(e, 1), rat(f, 1), rat(0, 1), rat(0, 1)]);
            let p = alg.mul(&x, &y);
            prop_assert!(p.c[2].is_zero() && p.c[3].is_zero());
        }
    }

    /// exp(x) * exp(-x) = 1 whenever the series converges (floats).
    #[test]
    fn exp_inverse(x in arb_hfloat()) {
        let alg = Algebra::omega();
        let cfg = SeriesConfig::default();
        let a = analytic::exp(&alg, &x, &cfg).unwrap();
        let b = analytic::exp(&alg, &(-x), &cfg).unwrap();
        let p = alg.mul(&a, &b);
        let want = HFloat::one();
        for n in 0..4 {
            prop_assert!((p.c[n] - want.c[n]).abs() < 1e-6, "exp inverse failed: {p:?}");
        }
    }

    /// The coupling identity holds for arbitrary phases, not just the
    /// grid the acceptance check uses.
    #[test]
    fn coupling_identity_everywhere(x in -6.5f64..6.5, y in -6.5f64..6.5) {
        prop_assert!(analytic::verify_coupling_identity(x, y) < 1e-9);
    }

    /// DFT round trip on random Phi signals of random small length.
    #[test]
    fn dft_round_trip(n in 1usize..24, seed_c in proptest::collection::vec(-5.0f64..5.0, 48)) {
        let samples: Vec<HFloat> = (0..n)
            .map(|t| HFloat::new([0.0, 0.0, seed_c[2 * t], seed_c[2 * t + 1]]))
            .collect();
        let signal = Signal::new(SignalKind::Phi, samples.clone()).unwrap();
        let back = dft(&dft(&signal, Direction::Forward).unwrap(), Direction::Inverse).unwrap();
        for (orig, rec) in samples.iter().zip(back.samples()) {
            for k in 0..4 {
                prop_assert!((orig.c[k] - rec.c[k]).abs() < 1e-9);
            }
        }
    }

    /// The psi -> Phi isomorphism is invertible on signals.
    #[test]
    fn iso_signal_round_trip(n in 1usize..16, seed_c in proptest::collection::vec(-5.0f64..5.0, 32)) {
        let samples: Vec<HFloat> = (0..n)
            .map(|t| HFloat::new([seed_c[2 * t], seed_c[2 * t + 1], 0.0, 0.0]))
            .collect();
        let psi = Signal::new(SignalKind::Psi, samples.clone()).unwrap();
        let phi = iso_map_signal(&psi).unwrap();
        let back = iso_map_signal(&phi).unwrap();
        for (orig, rec) in samples.iter().zip(back.samples()) {
            prop_assert_eq!(&orig.c, &rec.c);
        }
    }
}

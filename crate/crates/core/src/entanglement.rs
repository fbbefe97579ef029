//! Concurrence of the excited entangled coherent states.
//!
//! Two routes are provided: [`concurrence_general`], the pure-state
//! two-component formula in terms of the overlaps `(p1, p2)`, and
//! [`concurrence_closed`], the same quantity written directly in Laguerre
//! polynomials of `|alpha|^2`. They agree identically; the test suite checks
//! both against the brute-force Fock oracle.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::{LaguerreData, OverlapPair, Sign, StateSpec, DEGENERACY_TOLERANCE};

/// How a concurrence value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalPath {
    /// Plain double-precision arithmetic.
    Direct,
    /// Log-domain composition for large `|alpha|^2`.
    SignedLog,
    /// Closed-form special case (`m = 0`).
    LimitFormula,
    /// Truncated Fock-space brute force.
    FockOracle,
}

impl EvalPath {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalPath::Direct => "direct",
            EvalPath::SignedLog => "signed-log",
            EvalPath::LimitFormula => "limit-formula",
            EvalPath::FockOracle => "fock-oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceResult {
    /// Concurrence in `[0, 1]`.
    pub value: f64,
    pub path: EvalPath,
    /// `1 / |1 +/- p1 p2|`: amplification of relative error by the
    /// denominator. Large only for the minus branch near `alpha = 0`.
    pub condition: f64,
}

/// Accepts values outside `[0, 1]` by at most this much as rounding.
const RANGE_SLACK: f64 = 1e-12;

fn clamp_unit(value: f64) -> Result<f64> {
    if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&value) {
        return Err(Error::InternalConsistency(format!(
            "concurrence {value} outside [0, 1]"
        )));
    }
    Ok(value.clamp(0.0, 1.0))
}

fn degenerate_error() -> Error {
    Error::DegenerateState("alpha = 0 with the minus sign is the zero vector".into())
}

/// `sqrt((1 - p1^2)(1 - p2^2)) / (1 +/- p1 p2)`.
pub fn concurrence_general(p: OverlapPair, sign: Sign) -> Result<ConcurrenceResult> {
    let OverlapPair { p1, p2 } = p;
    if !(-1.0..=1.0).contains(&p1) || !(p2 > 0.0 && p2 <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "overlaps out of range: p1 = {p1}, p2 = {p2}"
        )));
    }
    let denominator = 1.0 + sign.factor() * p1 * p2;
    if denominator <= DEGENERACY_TOLERANCE {
        return Err(degenerate_error());
    }
    let numerator = ((1.0 - p1) * (1.0 + p1) * (1.0 - p2) * (1.0 + p2)).sqrt();
    Ok(ConcurrenceResult {
        value: clamp_unit(numerator / denominator)?,
        path: EvalPath::Direct,
        condition: denominator.recip(),
    })
}

/// Concurrence written in Laguerre polynomials of `x = |alpha|^2`:
///
/// `C = sqrt((L_m(-x)^2 - e^{-4x} L_m(x)^2)(1 - e^{-4x})) / (L_m(-x) +/- e^{-4x} L_m(x))`.
///
/// Every factor is evaluated relative to `L_m(-x)`, which cancels between
/// numerator and denominator.
pub fn concurrence_closed(spec: &StateSpec) -> Result<ConcurrenceResult> {
    if spec.is_degenerate() {
        return Err(degenerate_error());
    }
    let x = spec.intensity();
    let data = LaguerreData::evaluate(x, spec.m);
    let denominator = data.relative_bracket(spec.sign);
    if denominator <= DEGENERACY_TOLERANCE {
        return Err(degenerate_error());
    }
    // 1 - e^{-4x}
    let coherent_factor = -(-4.0 * x).exp_m1();

    let (value, path) = if data.is_direct() {
        // L_m(-x)^2 - e^{-4x} L_m(x)^2 = (L_m(-x) - e^{-2x} L_m(x)) (L_m(-x) + e^{-2x} L_m(x))
        let diff = data.one_minus_damped_ratio(2.0).max(0.0);
        let sum = data.one_plus_sign_damped_ratio(2.0, Sign::Plus).max(0.0);
        let numerator = diff.sqrt() * sum.sqrt() * coherent_factor.sqrt();
        (numerator / denominator, EvalPath::Direct)
    } else {
        // e^{-4x} L_m(x)^2 / L_m(-x)^2
        let squared_ratio = data.damped_ratio(2.0).powi(2).to_f64();
        let numerator = ((1.0 - squared_ratio) * coherent_factor).max(0.0).sqrt();
        (numerator / denominator, EvalPath::SignedLog)
    };

    Ok(ConcurrenceResult {
        value: clamp_unit(value)?,
        path,
        condition: denominator.recip(),
    })
}

/// Entangled coherent state (`m = 0`): `tanh`-like plus branch, and a
/// maximally entangled minus branch.
pub fn concurrence_m0(sign: Sign, alpha: Complex64) -> Result<ConcurrenceResult> {
    let x = alpha.norm_sqr();
    let damping = (-4.0 * x).exp();
    let (value, condition) = match sign {
        Sign::Plus => (-(-4.0 * x).exp_m1() / (1.0 + damping), (1.0 + damping).recip()),
        Sign::Minus => {
            if x == 0.0 {
                return Err(degenerate_error());
            }
            (1.0, -(-4.0 * x).exp_m1().recip())
        }
    };
    Ok(ConcurrenceResult {
        value,
        path: EvalPath::LimitFormula,
        condition,
    })
}

/// Limit of the concurrence as `|alpha|^2 -> 0+`.
///
/// The plus branch tends to the product state `a^dag^m |0, 0>`. For the minus
/// branch, expanding the overlaps to first order in `x` gives
/// `1 - p2 ~ 2x`, `1 - p1 ~ 2(m+1)x` and `1 - p1 p2 ~ 2(m+2)x`, so the limit
/// is `2 sqrt(m+1) / (m+2)`; the oracle tests extrapolate the Fock-space
/// concurrence to `x = 0` and confirm it.
pub fn concurrence_small_alpha_limit(m: u32, sign: Sign) -> f64 {
    match sign {
        Sign::Plus => 0.0,
        Sign::Minus => {
            let m = f64::from(m);
            2.0 * (m + 1.0).sqrt() / (m + 2.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::overlap_pair;
    use proptest::prelude::*;

    fn spec(x: f64, m: u32, sign: Sign) -> StateSpec {
        StateSpec::from_intensity(x, 0.0, m, sign)
    }

    #[test]
    fn general_formula_examples() {
        let c = concurrence_general(OverlapPair { p1: 0.0, p2: 1e-300 }, Sign::Plus).unwrap();
        assert!((c.value - 1.0).abs() < 1e-15);
        let c = concurrence_general(OverlapPair { p1: 1.0, p2: 1.0 }, Sign::Plus).unwrap();
        assert_eq!(c.value, 0.0);
        for p in [0.01, 0.3, 0.77, 0.999] {
            let c = concurrence_general(OverlapPair { p1: p, p2: p }, Sign::Minus).unwrap();
            assert!((c.value - 1.0).abs() < 1e-12, "p={p}: {}", c.value);
        }
    }

    #[test]
    fn general_formula_rejects_bad_input() {
        assert!(matches!(
            concurrence_general(OverlapPair { p1: 1.0, p2: 1.0 }, Sign::Minus),
            Err(Error::DegenerateState(_))
        ));
        assert!(matches!(
            concurrence_general(OverlapPair { p1: 1.5, p2: 0.5 }, Sign::Plus),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            concurrence_general(OverlapPair { p1: 0.5, p2: 0.0 }, Sign::Plus),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn closed_form_examples() {
        for m in 0..6 {
            let c = concurrence_closed(&spec(0.0, m, Sign::Plus)).unwrap();
            assert_eq!(c.value, 0.0);
            assert!(matches!(
                concurrence_closed(&spec(0.0, m, Sign::Minus)),
                Err(Error::DegenerateState(_))
            ));
        }
        for &x in &[1e-3, 0.2, 1.0, 9.0, 90.0] {
            let c = concurrence_closed(&spec(x, 0, Sign::Minus)).unwrap();
            assert!((c.value - 1.0).abs() < 1e-12);
        }
        // (1 - e^-4) / (1 + e^-4) = tanh(2)
        let c = concurrence_closed(&spec(1.0, 0, Sign::Plus)).unwrap();
        assert!((c.value - 0.964_027_580_075_816_9).abs() < 1e-15);
    }

    #[test]
    fn m0_formula_examples() {
        let a = Complex64::new(0.6, -0.8);
        assert_eq!(concurrence_m0(Sign::Minus, a).unwrap().value, 1.0);
        assert_eq!(concurrence_m0(Sign::Plus, Complex64::new(0.0, 0.0)).unwrap().value, 0.0);
        assert_eq!(concurrence_m0(Sign::Plus, Complex64::new(30.0, 0.0)).unwrap().value, 1.0);
        assert!(concurrence_m0(Sign::Minus, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn small_alpha_limit_values() {
        assert_eq!(concurrence_small_alpha_limit(0, Sign::Minus), 1.0);
        assert!((concurrence_small_alpha_limit(3, Sign::Minus) - 0.8).abs() < 1e-15);
        for m in 0..10 {
            assert_eq!(concurrence_small_alpha_limit(m, Sign::Plus), 0.0);
        }
        for m in 0..10 {
            let c = concurrence_closed(&spec(1e-9, m, Sign::Minus)).unwrap().value;
            assert!((c - concurrence_small_alpha_limit(m, Sign::Minus)).abs() < 1e-7);
        }
    }

    #[test]
    fn closed_matches_general_on_grid() {
        let xs = [0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0];
        let mut worst = 0.0_f64;
        for m in 0..=10 {
            for &x in &xs {
                for sign in [Sign::Plus, Sign::Minus] {
                    let s = spec(x, m, sign);
                    let closed = concurrence_closed(&s).unwrap().value;
                    let general = concurrence_general(overlap_pair(s.alpha, m), sign).unwrap().value;
                    worst = worst.max((closed - general).abs());
                }
            }
        }
        assert!(worst < 1e-12, "worst {worst:e}");
    }

    #[test]
    fn closed_matches_m0_formula() {
        for k in 1..=300 {
            let x = 0.05 * f64::from(k);
            for sign in [Sign::Plus, Sign::Minus] {
                let s = spec(x, 0, sign);
                let closed = concurrence_closed(&s).unwrap().value;
                let limit = concurrence_m0(sign, s.alpha).unwrap().value;
                assert!((closed - limit).abs() < 1e-14, "x={x} {sign}");
            }
        }
    }

    #[test]
    fn large_field_tends_to_one() {
        for m in [0, 1, 3, 5, 20] {
            for sign in [Sign::Plus, Sign::Minus] {
                assert!(concurrence_closed(&spec(20.0, m, sign)).unwrap().value > 0.999);
                let far = concurrence_closed(&spec(100.0, m, sign)).unwrap();
                assert_eq!(far.path, EvalPath::SignedLog);
                assert!(far.value > 1.0 - 1e-6);
            }
        }
    }

    #[test]
    fn path_selection_follows_threshold() {
        assert_eq!(concurrence_closed(&spec(79.9, 3, Sign::Plus)).unwrap().path, EvalPath::Direct);
        assert_eq!(concurrence_closed(&spec(80.5, 3, Sign::Plus)).unwrap().path, EvalPath::SignedLog);
    }

    #[test]
    fn sampled_curves_do_not_decrease() {
        for m in [0, 1, 3, 5, 10, 20] {
            for sign in [Sign::Plus, Sign::Minus] {
                let mut prev: Option<f64> = None;
                for k in 0..=60 {
                    let s = spec(0.1 * f64::from(k), m, sign);
                    let Ok(c) = concurrence_closed(&s) else {
                        assert!(s.is_degenerate());
                        continue;
                    };
                    if let Some(p) = prev {
                        assert!(c.value >= p - 1e-9, "m={m} {sign} k={k}: {} < {p}", c.value);
                    }
                    prev = Some(c.value);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn concurrence_in_unit_interval(x in 0.0..1.0e4_f64, m in 0u32..40, minus in any::<bool>()) {
            let sign = if minus { Sign::Minus } else { Sign::Plus };
            let s = spec(x, m, sign);
            match concurrence_closed(&s) {
                Ok(c) => prop_assert!((0.0..=1.0).contains(&c.value)),
                Err(Error::DegenerateState(_)) => prop_assert!(minus && x < 1e-13),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }

        #[test]
        fn concurrence_phase_invariant(x in 1e-3..150.0_f64, theta in 0.0..std::f64::consts::TAU, m in 0u32..20, minus in any::<bool>()) {
            let sign = if minus { Sign::Minus } else { Sign::Plus };
            let a = concurrence_closed(&StateSpec::from_intensity(x, 0.0, m, sign)).unwrap().value;
            let b = concurrence_closed(&StateSpec::from_intensity(x, theta, m, sign)).unwrap().value;
            prop_assert!((a - b).abs() < 1e-14);
        }
    }
}

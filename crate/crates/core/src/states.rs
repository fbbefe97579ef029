//! State descriptors, normalization constants and the branch overlaps
//! `p1 = <alpha,m|-alpha,m>` (photon-added coherent states) and
//! `p2 = <alpha|-alpha>` (coherent states).
//!
//! Every quantity depends on `alpha` only through `x = |alpha|^2`. Above
//! [`LOG_DOMAIN_THRESHOLD`] the Laguerre values and the damping exponentials
//! are combined as [`SignedLogValue`]s.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{laguerre, laguerre_odd_part, laguerre_signed_log, ln_factorial, SignedLogValue};

/// `|alpha|^2` above which evaluation switches to the signed-log path.
pub const LOG_DOMAIN_THRESHOLD: f64 = 80.0;

/// The normalization bracket `L_m(-x) +/- e^{-4x} L_m(x)` counts as zero when
/// it is at most this fraction of `L_m(-x)`.
pub const DEGENERACY_TOLERANCE: f64 = 1e-14;

/// Relative sign between the two branches of the superposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `a^dag^m (|alpha, alpha> +/- |-alpha, -alpha>)`, up to normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    pub alpha: Complex64,
    pub m: u32,
    pub sign: Sign,
}

impl StateSpec {
    pub fn new(alpha: Complex64, m: u32, sign: Sign) -> Self {
        Self { alpha, m, sign }
    }

    /// State with `alpha = sqrt(x) e^{i phase}`.
    pub fn from_intensity(x: f64, phase: f64, m: u32, sign: Sign) -> Self {
        Self::new(Complex64::from_polar(x.sqrt(), phase), m, sign)
    }

    /// `|alpha|^2`.
    pub fn intensity(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    /// The minus superposition at `alpha = 0` is the zero vector.
    pub fn is_degenerate(&self) -> bool {
        self.sign == Sign::Minus && self.alpha == Complex64::new(0.0, 0.0)
    }
}

/// Overlaps consumed by the two-component concurrence formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapPair {
    pub p1: f64,
    pub p2: f64,
}

/// Laguerre data at `x = |alpha|^2` for a fixed `m`.
#[derive(Debug, Clone, Copy)]
pub(crate) enum LaguerreData {
    Direct {
        x: f64,
        /// `L_m(-x)`
        neg: f64,
        /// `L_m(x)`
        pos: f64,
        /// `(L_m(-x) - L_m(x)) / 2`
        odd: f64,
    },
    SignedLog {
        x: f64,
        neg: SignedLogValue,
        pos: SignedLogValue,
    },
}

impl LaguerreData {
    pub(crate) fn evaluate(x: f64, m: u32) -> Self {
        if x <= LOG_DOMAIN_THRESHOLD {
            let (neg, pos, odd) = (laguerre(m, -x), laguerre(m, x), laguerre_odd_part(m, x));
            if neg.is_finite() && pos.is_finite() && odd.is_finite() {
                return LaguerreData::Direct { x, neg, pos, odd };
            }
        }
        LaguerreData::SignedLog {
            x,
            neg: laguerre_signed_log(m, -x),
            pos: laguerre_signed_log(m, x),
        }
    }

    pub(crate) fn is_direct(&self) -> bool {
        matches!(self, LaguerreData::Direct { .. })
    }

    pub(crate) fn x(&self) -> f64 {
        match *self {
            LaguerreData::Direct { x, .. } | LaguerreData::SignedLog { x, .. } => x,
        }
    }

    pub(crate) fn ln_neg(&self) -> f64 {
        match *self {
            LaguerreData::Direct { neg, .. } => neg.ln(),
            LaguerreData::SignedLog { neg, .. } => neg.log_mag(),
        }
    }

    /// `e^{-kx} L_m(x) / L_m(-x)`.
    pub(crate) fn damped_ratio(&self, k: f64) -> SignedLogValue {
        match *self {
            LaguerreData::Direct { x, neg, pos, .. } => {
                SignedLogValue::from_f64((-k * x).exp() * pos / neg)
            }
            LaguerreData::SignedLog { x, neg, pos } => (pos / neg).scale_exp(-k * x),
        }
    }

    pub(crate) fn damped_ratio_f64(&self, k: f64) -> f64 {
        match *self {
            LaguerreData::Direct { x, neg, pos, .. } => (-k * x).exp() * pos / neg,
            LaguerreData::SignedLog { .. } => self.damped_ratio(k).to_f64(),
        }
    }

    /// `1 - e^{-kx} L_m(x) / L_m(-x)`, without cancellation as `x -> 0`.
    pub(crate) fn one_minus_damped_ratio(&self, k: f64) -> f64 {
        match *self {
            // L_m(-x) - e^{-kx} L_m(x) = 2 odd + (1 - e^{-kx}) L_m(x)
            LaguerreData::Direct { x, neg, pos, odd } => (2.0 * odd - (-k * x).exp_m1() * pos) / neg,
            LaguerreData::SignedLog { .. } => 1.0 - self.damped_ratio_f64(k),
        }
    }

    /// `1 +/- e^{-kx} L_m(x) / L_m(-x)`.
    pub(crate) fn one_plus_sign_damped_ratio(&self, k: f64, sign: Sign) -> f64 {
        match sign {
            Sign::Plus => 1.0 + self.damped_ratio_f64(k),
            Sign::Minus => self.one_minus_damped_ratio(k),
        }
    }

    /// The normalization bracket divided by `L_m(-x)`:
    /// `1 +/- e^{-4x} L_m(x) / L_m(-x) = 1 +/- p1 p2`.
    pub(crate) fn relative_bracket(&self, sign: Sign) -> f64 {
        self.one_plus_sign_damped_ratio(4.0, sign)
    }
}

fn checked_relative_bracket(spec: &StateSpec, data: &LaguerreData) -> Result<f64> {
    if spec.is_degenerate() {
        return Err(Error::DegenerateState(
            "alpha = 0 with the minus sign is the zero vector".into(),
        ));
    }
    let bracket = data.relative_bracket(spec.sign);
    if bracket <= DEGENERACY_TOLERANCE {
        return Err(Error::DegenerateState(format!(
            "normalization bracket {bracket:e} relative to L_m(-|alpha|^2) at |alpha|^2 = {:e}, m = {}",
            data.x(),
            spec.m
        )));
    }
    Ok(bracket)
}

/// `N(alpha, m)` with `N^{-2} = 2 m! [L_m(-x) +/- e^{-4x} L_m(x)]`.
pub fn normalization_n(spec: &StateSpec) -> Result<f64> {
    let data = LaguerreData::evaluate(spec.intensity(), spec.m);
    let bracket = checked_relative_bracket(spec, &data)?;
    let ln_inv_sq = std::f64::consts::LN_2 + ln_factorial(spec.m) + data.ln_neg() + bracket.ln();
    Ok((-0.5 * ln_inv_sq).exp())
}

/// `M(alpha, m)`, the normalization in the photon-added coherent state basis:
/// `M^2 = L_m(-x) / (2 [L_m(-x) +/- e^{-4x} L_m(x)])`.
pub fn normalization_m(spec: &StateSpec) -> Result<f64> {
    let data = LaguerreData::evaluate(spec.intensity(), spec.m);
    let bracket = checked_relative_bracket(spec, &data)?;
    Ok((2.0 * bracket).sqrt().recip())
}

/// `p1 = e^{-2x} L_m(x) / L_m(-x)`.
pub fn overlap_p1(alpha: Complex64, m: u32) -> f64 {
    LaguerreData::evaluate(alpha.norm_sqr(), m).damped_ratio_f64(2.0)
}

pub fn overlap_p1_signed_log(alpha: Complex64, m: u32) -> SignedLogValue {
    LaguerreData::evaluate(alpha.norm_sqr(), m).damped_ratio(2.0)
}

/// `p2 = e^{-2x}`.
pub fn overlap_p2(alpha: Complex64) -> f64 {
    (-2.0 * alpha.norm_sqr()).exp()
}

/// `p2` in log form; never underflows.
pub fn overlap_p2_signed_log(alpha: Complex64) -> SignedLogValue {
    SignedLogValue::from_log(-2.0 * alpha.norm_sqr())
}

pub fn overlap_pair(alpha: Complex64, m: u32) -> OverlapPair {
    OverlapPair {
        p1: overlap_p1(alpha, m),
        p2: overlap_p2(alpha),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{cross_moment, factorial};
    use proptest::prelude::*;

    fn real(x: f64) -> Complex64 {
        Complex64::new(x.sqrt(), 0.0)
    }

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn vacuum_plus_normalizations() {
        for m in 0..8 {
            let spec = StateSpec::new(real(0.0), m, Sign::Plus);
            let n = normalization_n(&spec).unwrap();
            assert!(rel_err(n, 0.5 / factorial(m).sqrt()) < 1e-15);
            assert_eq!(normalization_m(&spec).unwrap(), 0.5);
        }
    }

    #[test]
    fn vacuum_minus_is_degenerate() {
        for m in 0..5 {
            let spec = StateSpec::new(real(0.0), m, Sign::Minus);
            assert!(spec.is_degenerate());
            assert!(matches!(normalization_n(&spec), Err(Error::DegenerateState(_))));
            assert!(matches!(normalization_m(&spec), Err(Error::DegenerateState(_))));
        }
    }

    #[test]
    fn m0_reduces_to_ecs_normalization() {
        for &x in &[1e-4, 0.1, 0.5, 1.0, 3.0, 10.0, 100.0] {
            for sign in [Sign::Plus, Sign::Minus] {
                let spec = StateSpec::new(real(x), 0, sign);
                let expected_inv_sq = 2.0 * (1.0 + sign.factor() * (-4.0 * x).exp());
                let n = normalization_n(&spec).unwrap();
                assert!(rel_err(n.powi(-2), expected_inv_sq) < 1e-12, "x={x} {sign}");
                let m = normalization_m(&spec).unwrap();
                assert!(rel_err(m * m, expected_inv_sq.recip()) < 1e-12);
            }
        }
    }

    #[test]
    fn n_and_m_are_consistent() {
        for m in 0..=12 {
            for &x in &[0.05, 0.3, 1.0, 2.0, 7.5, 30.0] {
                for sign in [Sign::Plus, Sign::Minus] {
                    let spec = StateSpec::new(real(x), m, sign);
                    let n = normalization_n(&spec).unwrap();
                    let mm = normalization_m(&spec).unwrap();
                    let lhs = n * n * factorial(m) * laguerre(m, -x);
                    assert!(rel_err(lhs, mm * mm) < 1e-12, "m={m} x={x} {sign}");
                }
            }
        }
    }

    #[test]
    fn p1_examples() {
        for m in 0..6 {
            assert_eq!(overlap_p1(real(0.0), m), 1.0);
        }
        for &x in &[0.1, 1.0, 5.0] {
            assert_eq!(overlap_p1(real(x), 0), overlap_p2(real(x)));
            assert!(rel_err(overlap_p1(real(x), 0), (-2.0 * x).exp()) < 1e-14);
        }
        assert_eq!(overlap_p1(real(1.0), 1), 0.0);
    }

    #[test]
    fn p2_examples() {
        assert_eq!(overlap_p2(real(0.0)), 1.0);
        assert!((overlap_p2(real(1.0)) - 0.135335).abs() < 1e-6);
        // |10 + 20i|^2 = 500 exactly
        let big = Complex64::new(10.0, 20.0);
        assert_eq!(overlap_p2(big), 0.0);
        let log = overlap_p2_signed_log(big);
        assert_eq!(log.sign(), 1);
        assert_eq!(log.log_mag(), -1000.0);
    }

    #[test]
    fn p1_is_ratio_of_moments() {
        for m in 0..=10 {
            for &x in &[0.01_f64, 0.5, 1.0, 3.0, 6.0, 10.0] {
                let alpha = Complex64::from_polar(x.sqrt(), 1.1);
                let ratio = cross_moment(m, m, alpha, -alpha).re / cross_moment(m, m, alpha, alpha).re;
                let p1 = overlap_p1(alpha, m);
                assert!((p1 - ratio).abs() <= 1e-10 * ratio.abs().max(1e-12), "m={m} x={x}");
            }
        }
    }

    #[test]
    fn log_path_continuity_at_threshold() {
        for m in [0, 1, 5, 20] {
            let below = overlap_p1(real(LOG_DOMAIN_THRESHOLD), m);
            let above = overlap_p1(real(LOG_DOMAIN_THRESHOLD * (1.0 + 1e-12)), m);
            assert!(rel_err(above, below) < 1e-9, "m={m}");
            for sign in [Sign::Plus, Sign::Minus] {
                let a = normalization_m(&StateSpec::new(real(LOG_DOMAIN_THRESHOLD), m, sign)).unwrap();
                let b = normalization_m(&StateSpec::new(real(81.0), m, sign)).unwrap();
                assert!(rel_err(a, b) < 1e-12);
            }
        }
    }

    #[test]
    fn large_intensity_normalization_is_finite() {
        let spec = StateSpec::new(real(1.0e4), 30, Sign::Minus);
        let n = normalization_n(&spec).unwrap();
        assert!(n > 0.0 && n.is_finite());
        assert!((normalization_m(&spec).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn phase_invariance(x in 0.0..120.0_f64, theta in 0.0..std::f64::consts::TAU, m in 0u32..15) {
            let a0 = Complex64::new(x.sqrt(), 0.0);
            let a1 = Complex64::from_polar(x.sqrt(), theta);
            prop_assert!((overlap_p1(a0, m) - overlap_p1(a1, m)).abs() < 1e-14);
            prop_assert!((overlap_p2(a0) - overlap_p2(a1)).abs() < 1e-14);
            for sign in [Sign::Plus, Sign::Minus] {
                let s0 = StateSpec::new(a0, m, sign);
                let s1 = StateSpec::new(a1, m, sign);
                if let (Ok(n0), Ok(n1)) = (normalization_n(&s0), normalization_n(&s1)) {
                    prop_assert!((n0 - n1).abs() <= 1e-14 * n0.max(1.0));
                }
                if let (Ok(m0), Ok(m1)) = (normalization_m(&s0), normalization_m(&s1)) {
                    prop_assert!((m0 - m1).abs() < 1e-14);
                }
            }
        }

        #[test]
        fn overlap_bounds(x in 0.0..2000.0_f64, m in 0u32..40) {
            let pair = overlap_pair(real(x), m);
            prop_assert!(pair.p1.abs() <= 1.0);
            prop_assert!(pair.p2 <= 1.0);
            prop_assert!(overlap_p2_signed_log(real(x)).sign() == 1);
            if x > 1e-15 {
                prop_assert!(pair.p2 < 1.0);
            }
        }

        #[test]
        fn m0_p1_equals_p2(x in 0.0..300.0_f64) {
            prop_assert_eq!(overlap_p1(real(x), 0), overlap_p2(real(x)));
        }
    }
}

//! Laguerre polynomials, two-variable Hermite polynomials and normally ordered
//! coherent-state moments.
//!
//! Everything here is a pure function of its arguments. Values that can leave
//! the double range (Laguerre polynomials at large negative argument, damping
//! exponentials) have a [`SignedLogValue`] counterpart.

use std::ops::{Div, Mul, Neg};

use num_complex::Complex64;
use statrs::function::factorial;

/// Largest `n` for which `n!` is finite in double precision.
pub const DIRECT_FACTORIAL_CAP: u32 = 170;

/// `n!` as a double. Infinite above [`DIRECT_FACTORIAL_CAP`].
pub fn factorial(n: u32) -> f64 {
    factorial::factorial(u64::from(n))
}

/// `ln(n!)`, exact table lookup up to the direct cap, log-gamma above.
pub fn ln_factorial(n: u32) -> f64 {
    factorial::ln_factorial(u64::from(n))
}

/// A real number stored as a sign and the natural log of its magnitude.
///
/// `sign == 0` represents exactly zero; its `log_mag` is `-inf` and carries no
/// information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogValue {
    sign: i8,
    log_mag: f64,
}

impl SignedLogValue {
    pub const ZERO: Self = Self {
        sign: 0,
        log_mag: f64::NEG_INFINITY,
    };
    pub const ONE: Self = Self {
        sign: 1,
        log_mag: 0.0,
    };

    /// Builds a value from a sign (only its signum is kept) and a log-magnitude.
    pub fn new(sign: i8, log_mag: f64) -> Self {
        if sign == 0 || log_mag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            Self {
                sign: sign.signum(),
                log_mag,
            }
        }
    }

    /// Positive value `exp(log_mag)`.
    pub fn from_log(log_mag: f64) -> Self {
        Self::new(1, log_mag)
    }

    pub fn from_f64(value: f64) -> Self {
        if value == 0.0 {
            Self::ZERO
        } else {
            Self::new(if value > 0.0 { 1 } else { -1 }, value.abs().ln())
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_mag(&self) -> f64 {
        self.log_mag
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Materializes the value; underflows to a signed zero and overflows to
    /// an infinity like ordinary arithmetic would.
    pub fn to_f64(&self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_mag.exp(),
        }
    }

    pub fn abs(self) -> Self {
        Self::new(self.sign.abs(), self.log_mag)
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let sign = if n % 2 == 0 { self.sign.abs() } else { self.sign };
        Self::new(sign, self.log_mag * f64::from(n))
    }

    /// Multiplies by `exp(log_factor)`.
    pub fn scale_exp(self, log_factor: f64) -> Self {
        Self::new(self.sign, self.log_mag + log_factor)
    }
}

impl Mul for SignedLogValue {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(self.sign * rhs.sign, self.log_mag + rhs.log_mag)
    }
}

impl Div for SignedLogValue {
    type Output = Self;

    /// Division by zero yields an infinite magnitude with the numerator's sign.
    fn div(self, rhs: Self) -> Self {
        if rhs.is_zero() {
            return Self::new(self.sign, f64::INFINITY);
        }
        Self::new(self.sign * rhs.sign, self.log_mag - rhs.log_mag)
    }
}

impl Neg for SignedLogValue {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.sign, self.log_mag)
    }
}

/// Laguerre polynomial `L_m(x)` by the three-term recurrence
/// `(l+1) L_{l+1} = (2l+1-x) L_l - l L_{l-1}`.
pub fn laguerre(m: u32, x: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    for l in 1..m {
        let lf = f64::from(l);
        let next = ((2.0 * lf + 1.0 - x) * cur - lf * prev) / (lf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_m(x)` as a [`SignedLogValue`], finite for arguments where the plain
/// value overflows.
///
/// For `x < 0` every term of the defining sum is positive and the sum is
/// accumulated with log-sum-exp. For `x > 0` the recurrence runs with a
/// power-of-two rescaling whose exponent is carried into the log-magnitude.
pub fn laguerre_signed_log(m: u32, x: f64) -> SignedLogValue {
    if m == 0 || x == 0.0 {
        return SignedLogValue::ONE;
    }
    if x < 0.0 {
        laguerre_log_sum_exp(m, -x)
    } else {
        laguerre_rescaled_recurrence(m, x)
    }
}

/// `ln L_m(-y)` for `y > 0`.
fn laguerre_log_sum_exp(m: u32, y: f64) -> SignedLogValue {
    let ln_y = y.ln();
    let ln_m_fact = ln_factorial(m);
    let log_terms: Vec<f64> = (0..=m)
        .map(|l| {
            ln_m_fact - 2.0 * ln_factorial(l) - ln_factorial(m - l) + f64::from(l) * ln_y
        })
        .collect();
    let max = log_terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = log_terms.iter().map(|t| (t - max).exp()).sum();
    SignedLogValue::from_log(max + sum.ln())
}

fn laguerre_rescaled_recurrence(m: u32, x: f64) -> SignedLogValue {
    const RESCALE_ABOVE: f64 = 1e100;
    let (mut prev, mut cur) = (1.0_f64, 1.0 - x);
    let mut log_scale = 0.0;
    for l in 1..m {
        let lf = f64::from(l);
        let next = ((2.0 * lf + 1.0 - x) * cur - lf * prev) / (lf + 1.0);
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > RESCALE_ABOVE {
            // power of two, so the rescaling itself is exact
            let exponent = mag.log2().floor() as i32;
            let factor = 2.0_f64.powi(-exponent);
            prev *= factor;
            cur *= factor;
            log_scale += f64::from(exponent) * std::f64::consts::LN_2;
        }
    }
    SignedLogValue::from_f64(cur).scale_exp(log_scale)
}

/// `(L_m(-x) - L_m(x)) / 2` for `x >= 0`: the odd-power part of the
/// defining sum, whose terms are all nonnegative.
///
/// Lets callers form `L_m(-x) - c L_m(x)` with `c` close to one without
/// cancellation.
pub(crate) fn laguerre_odd_part(m: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut odd = 0.0;
    for l in 0..m {
        let lf = f64::from(l);
        term *= x * (f64::from(m) - lf) / ((lf + 1.0) * (lf + 1.0));
        if l % 2 == 0 {
            odd += term;
        }
    }
    odd
}

/// Two-variable Hermite polynomial
/// `H_{m,n}(eta, eta_c) = sum_l (-1)^l m! n! / (l! (m-l)! (n-l)!) eta^(m-l) eta_c^(n-l)`.
///
/// `eta_conj` is an independent argument; it is not required to be the
/// conjugate of `eta`.
pub fn hermite2(m: u32, n: u32, eta: Complex64, eta_conj: Complex64) -> Complex64 {
    let mut coeff = 1.0_f64;
    let mut total = Complex64::new(0.0, 0.0);
    for l in 0..=m.min(n) {
        total += eta.powu(m - l) * eta_conj.powu(n - l) * coeff;
        // (-1)^l l! C(m,l) C(n,l) stays an integer, so this update is exact
        // while it fits in the mantissa
        coeff *= -f64::from(m - l) * f64::from(n - l) / f64::from(l + 1);
    }
    total
}

/// Coherent-state matrix element `<alpha| a^n a^dag^m |beta>` from the
/// normal-ordering identity
/// `a^n a^dag^m = (-i)^(n+m) :H_{m,n}(i a^dag, i a):`.
pub fn cross_moment(n: u32, m: u32, alpha: Complex64, beta: Complex64) -> Complex64 {
    let i = Complex64::i();
    let alpha_c = alpha.conj();
    let hermite = hermite2(m, n, i * alpha_c, i * beta);
    let phase = (-i).powu(n + m);
    let overlap = (alpha_c * beta - 0.5 * (alpha.norm_sqr() + beta.norm_sqr())).exp();
    phase * hermite * overlap
}

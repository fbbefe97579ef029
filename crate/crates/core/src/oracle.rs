//! Brute-force certification in a truncated two-mode Fock basis.
//!
//! The state `a^dag^m (|alpha, alpha> +/- |-alpha, -alpha>)` is expanded on
//! photon numbers `0..trunc` per mode, normalized numerically, and its
//! concurrence is read off the purity of a reduced single-mode state. Only
//! factorials and exponentials enter the amplitudes; no Laguerre or Hermite
//! code is used here.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::entanglement::{ConcurrenceResult, EvalPath};
use crate::error::{Error, Result};
use crate::states::StateSpec;

/// Squared norms below this are treated as the zero vector.
pub const ZERO_NORM_SQ: f64 = 1e-28;

/// Maximum normalized probability allowed in the last two rows and columns.
pub const TAIL_MASS_TOLERANCE: f64 = 1e-14;

/// Concurrence radicands `2 (1 - purity)` this far outside `[0, 2]` are
/// clamped; anything larger is reported as an error.
pub const RADICAND_SLACK: f64 = 1e-12;

/// Fock cutoff `ceil(mu + 10 sqrt(mu + 1) + m + 10)` for `x = |alpha|^2`.
///
/// `mu = x/2 + sqrt(x^2/4 + m x)` is where the mode-a weights
/// `x^j (j+m)! / (j!)^2` of the photon-added branch peak; it equals `x` when
/// `m = 0`.
pub fn default_truncation(x: f64, m: u32) -> usize {
    let m = f64::from(m);
    let mu = 0.5 * x + (0.25 * x * x + m * x).sqrt();
    (mu + 10.0 * (mu + 1.0).sqrt() + m + 10.0).ceil() as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

/// Normalized two-mode amplitudes, rows indexed by the mode-a photon number
/// and columns by mode b.
#[derive(Debug, Clone)]
pub struct BipartiteAmplitudes {
    trunc: usize,
    amps: DMatrix<Complex64>,
    norm_sq: f64,
}

impl BipartiteAmplitudes {
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Amplitude of `|n_a, n_b>`.
    pub fn amplitude(&self, n_a: usize, n_b: usize) -> Complex64 {
        self.amps[(n_a, n_b)]
    }

    pub fn amplitudes(&self) -> &DMatrix<Complex64> {
        &self.amps
    }

    /// Squared norm of the state before normalization.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    /// Probability in the last two rows and columns.
    pub fn tail_mass(&self) -> f64 {
        tail_mass(&self.amps)
    }
}

fn tail_mass(amps: &DMatrix<Complex64>) -> f64 {
    let n = amps.nrows();
    let edge = n.saturating_sub(2);
    let mut mass = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i >= edge || j >= edge {
                mass += amps[(i, j)].norm_sqr();
            }
        }
    }
    mass
}

/// `<k|beta>` for `k < len`.
fn coherent_amplitudes(beta: Complex64, len: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(len);
    let mut cur = Complex64::new((-0.5 * beta.norm_sqr()).exp(), 0.0);
    for k in 0..len {
        out.push(cur);
        cur = cur * beta / ((k + 1) as f64).sqrt();
    }
    out
}

/// `<n| a^dag^m |beta>` for `n < len`: the coherent amplitudes shifted up by
/// `m` with weights `sqrt(n! / (n-m)!)`.
fn photon_added_amplitudes(beta: Complex64, m: usize, len: usize) -> Vec<Complex64> {
    let coherent = coherent_amplitudes(beta, len);
    (0..len)
        .map(|n| {
            if n < m {
                return Complex64::new(0.0, 0.0);
            }
            let weight: f64 = (n - m + 1..=n).map(|k| (k as f64).sqrt()).product();
            coherent[n - m] * weight
        })
        .collect()
}

/// Squared norm of the single branch `a^dag^m |alpha>` in the truncated
/// basis; analytically `m! L_m(-|alpha|^2)`.
pub fn photon_added_norm_sq(alpha: Complex64, m: u32, trunc: usize) -> f64 {
    photon_added_amplitudes(alpha, m as usize, trunc)
        .iter()
        .map(Complex64::norm_sqr)
        .sum()
}

/// `<alpha| a^n a^dag^m |beta>` summed over the first `trunc` Fock states of
/// `|beta>`.
pub fn cross_moment_fock(n: u32, m: u32, alpha: Complex64, beta: Complex64, trunc: usize) -> Complex64 {
    let (n, m) = (n as usize, m as usize);
    let bra = coherent_amplitudes(alpha, trunc + m);
    let ket = photon_added_amplitudes(beta, m, trunc + m);
    // a^n |k> = sqrt(k! / (k-n)!) |k-n>
    (n..trunc + m)
        .map(|k| {
            let lower: f64 = (k - n + 1..=k).map(|j| (j as f64).sqrt()).product();
            ket[k] * lower * bra[k - n].conj()
        })
        .sum()
}

/// Expands the state in the truncated basis and normalizes it.
///
/// Any `trunc` is accepted as long as the excited photons fit below the last
/// two rows and the normalized tail mass stays under
/// [`TAIL_MASS_TOLERANCE`]; [`default_truncation`] always satisfies both for
/// moderate `|alpha|^2`.
pub fn build_state(spec: &StateSpec, trunc: usize) -> Result<BipartiteAmplitudes> {
    let required = default_truncation(spec.intensity(), spec.m);
    if trunc < spec.m as usize + 3 {
        return Err(Error::TruncationTooSmall {
            trunc,
            required,
            tail_mass: f64::NAN,
        });
    }
    let m = spec.m as usize;
    let sign = spec.sign.factor();
    let (plus, minus) = (spec.alpha, -spec.alpha);
    let a_plus = photon_added_amplitudes(plus, m, trunc);
    let a_minus = photon_added_amplitudes(minus, m, trunc);
    let b_plus = coherent_amplitudes(plus, trunc);
    let b_minus = coherent_amplitudes(minus, trunc);

    let mut amps =
        DMatrix::from_fn(trunc, trunc, |i, j| a_plus[i] * b_plus[j] + a_minus[i] * b_minus[j] * sign);
    let norm_sq = amps.norm_squared();
    if norm_sq < ZERO_NORM_SQ {
        return Err(Error::DegenerateState(format!(
            "oracle state has squared norm {norm_sq:e}"
        )));
    }
    amps.unscale_mut(norm_sq.sqrt());

    let tail = tail_mass(&amps);
    if tail > TAIL_MASS_TOLERANCE {
        return Err(Error::TruncationTooSmall {
            trunc,
            required,
            tail_mass: tail,
        });
    }
    Ok(BipartiteAmplitudes {
        trunc,
        amps,
        norm_sq,
    })
}

/// `Tr(rho^2)` of the reduced state of one mode, from the Gram matrix of the
/// amplitude grid (`psi psi^dag` for mode a, `psi^dag psi` for mode b).
pub fn reduced_purity(state: &BipartiteAmplitudes, which: Mode) -> f64 {
    let psi = &state.amps;
    let gram = match which {
        Mode::A => psi * psi.adjoint(),
        Mode::B => psi.adjoint() * psi,
    };
    gram.norm_squared()
}

/// Pure-state concurrence `sqrt(2 (1 - Tr rho_A^2))` of the truncated state.
pub fn concurrence_oracle(spec: &StateSpec, trunc: usize) -> Result<ConcurrenceResult> {
    let state = build_state(spec, trunc)?;
    let purity = reduced_purity(&state, Mode::A);
    let radicand = 2.0 * (1.0 - purity);
    if !(-RADICAND_SLACK..=1.0 + RADICAND_SLACK).contains(&radicand) {
        return Err(Error::InternalConsistency(format!(
            "reduced purity {purity} gives concurrence radicand {radicand:e}"
        )));
    }
    Ok(ConcurrenceResult {
        value: radicand.clamp(0.0, 1.0).sqrt(),
        path: EvalPath::FockOracle,
        condition: f64::NAN,
    })
}

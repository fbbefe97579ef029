//! Claims report: each criterion recomputes one published property of the
//! concurrence on a fixed grid and compares the worst deviation with a
//! tolerance.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use crate::entanglement::{concurrence_closed, concurrence_small_alpha_limit};
use crate::error::{Error, Result};
use crate::oracle::{build_state, concurrence_oracle, cross_moment_fock, default_truncation};
use crate::specfun::{cross_moment, factorial, laguerre};
use crate::states::{normalization_n, Sign, StateSpec};

/// Excitation counts drawn in the plus-branch figure.
pub const FIG1_M: [u32; 5] = [0, 1, 3, 5, 20];
/// Excitation counts drawn in the minus-branch figure.
pub const FIG2_M: [u32; 5] = [0, 3, 5, 10, 20];

const ORACLE_M: [u32; 6] = [0, 1, 2, 3, 4, 5];
const ORACLE_X: [f64; 6] = [0.25, 0.5, 1.0, 2.0, 4.0, 6.0];
const LARGE_FIELD_M: [u32; 5] = [0, 1, 3, 5, 20];
const SIGNS: [Sign; 2] = [Sign::Plus, Sign::Minus];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    EcsMinus,
    EcsPlus,
    OracleEquivalence,
    Normalization,
    LargeField,
    FigureShape,
    Moments,
    SmallAlpha,
}

impl Criterion {
    pub const ALL: [Criterion; 8] = [
        Criterion::EcsMinus,
        Criterion::EcsPlus,
        Criterion::OracleEquivalence,
        Criterion::Normalization,
        Criterion::LargeField,
        Criterion::FigureShape,
        Criterion::Moments,
        Criterion::SmallAlpha,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::EcsMinus => "ecs-minus",
            Criterion::EcsPlus => "ecs-plus",
            Criterion::OracleEquivalence => "oracle-equivalence",
            Criterion::Normalization => "normalization",
            Criterion::LargeField => "large-field",
            Criterion::FigureShape => "figure-shape",
            Criterion::Moments => "moments",
            Criterion::SmallAlpha => "small-alpha",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn description(self) -> &'static str {
        match self {
            Criterion::EcsMinus => "m=0 minus branch is maximally entangled for x in 0.1..=25",
            Criterion::EcsPlus => "m=0 plus branch equals (1-e^-4x)/(1+e^-4x) for x in 0.1..=25",
            Criterion::OracleEquivalence => "closed form equals Fock-space concurrence, m<=5, x<=6",
            Criterion::Normalization => "oracle squared norm equals N^-2, m<=5, x<=6",
            Criterion::LargeField => "C > 0.999 at x=20 and C > 1-1e-6 at x=100",
            Criterion::FigureShape => "sampled figure curves never decrease, x in 0..=6",
            Criterion::Moments => "cross moments match m!L_m(-x), m!e^-2x L_m(x) and a Fock sum",
            Criterion::SmallAlpha => "minus branch at x=1e-6 matches the extrapolated oracle limit",
        }
    }

    /// The tolerance a criterion is judged against unless overridden.
    pub fn default_tolerance(self) -> f64 {
        match self {
            Criterion::EcsMinus | Criterion::EcsPlus => 1e-12,
            Criterion::OracleEquivalence | Criterion::Normalization => 1e-8,
            Criterion::LargeField => 1e-6,
            Criterion::FigureShape => 1e-9,
            Criterion::Moments => 1e-10,
            Criterion::SmallAlpha => 1e-4,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub criterion: Criterion,
    pub passed: bool,
    /// Worst observed deviation, in the criterion's own measure.
    pub worst: f64,
    pub tolerance: f64,
    pub detail: String,
    pub elapsed: Duration,
}

/// Runs each selected criterion; `overrides` replaces default tolerances.
pub fn run_checks(selected: &[Criterion], overrides: &BTreeMap<Criterion, f64>) -> Vec<CheckReport> {
    selected
        .iter()
        .map(|&c| run_check(c, overrides.get(&c).copied().unwrap_or(c.default_tolerance())))
        .collect()
}

pub fn run_check(criterion: Criterion, tolerance: f64) -> CheckReport {
    let start = Instant::now();
    let outcome = match criterion {
        Criterion::EcsMinus => ecs_minus(),
        Criterion::EcsPlus => ecs_plus(),
        Criterion::OracleEquivalence => oracle_equivalence(),
        Criterion::Normalization => normalization_certificate(),
        Criterion::LargeField => large_field(),
        Criterion::FigureShape => figure_shape(),
        Criterion::Moments => moments(tolerance),
        Criterion::SmallAlpha => small_alpha(),
    };
    let elapsed = start.elapsed();
    match outcome {
        Ok(Measured { worst, extra_ok, detail }) => CheckReport {
            criterion,
            passed: extra_ok && worst < tolerance,
            worst,
            tolerance,
            detail,
            elapsed,
        },
        Err(e) => CheckReport {
            criterion,
            passed: false,
            worst: f64::NAN,
            tolerance,
            detail: format!("evaluation failed: {e}"),
            elapsed,
        },
    }
}

struct Measured {
    worst: f64,
    /// Conditions with fixed thresholds that the tolerance does not cover.
    extra_ok: bool,
    detail: String,
}

impl Measured {
    fn worst(worst: f64, detail: String) -> Self {
        Self {
            worst,
            extra_ok: true,
            detail,
        }
    }
}

fn spec(x: f64, m: u32, sign: Sign) -> StateSpec {
    StateSpec::from_intensity(x, 0.0, m, sign)
}

/// `x = 0.1, 0.2, ..., 25`.
fn ecs_grid() -> impl Iterator<Item = f64> {
    (1..=250).map(|k| f64::from(k) / 10.0)
}

fn ecs_minus() -> Result<Measured> {
    let mut worst = 0.0_f64;
    for x in ecs_grid() {
        let c = concurrence_closed(&spec(x, 0, Sign::Minus))?.value;
        worst = worst.max((c - 1.0).abs());
    }
    Ok(Measured::worst(worst, "max |C - 1| over 250 points".into()))
}

fn ecs_plus() -> Result<Measured> {
    let mut worst = 0.0_f64;
    for x in ecs_grid() {
        let s = spec(x, 0, Sign::Plus);
        let c = concurrence_closed(&s)?.value;
        let damping = (-4.0 * s.intensity()).exp();
        worst = worst.max((c - (1.0 - damping) / (1.0 + damping)).abs());
    }
    Ok(Measured::worst(worst, "max |C - (1-e^-4x)/(1+e^-4x)| over 250 points".into()))
}

fn oracle_grid() -> impl Iterator<Item = StateSpec> {
    ORACLE_M.into_iter().flat_map(|m| {
        ORACLE_X
            .into_iter()
            .flat_map(move |x| SIGNS.into_iter().map(move |sign| spec(x, m, sign)))
    })
}

fn oracle_equivalence() -> Result<Measured> {
    let mut worst = 0.0_f64;
    let mut count = 0;
    for s in oracle_grid() {
        let closed = concurrence_closed(&s)?.value;
        let oracle = concurrence_oracle(&s, default_truncation(s.intensity(), s.m))?.value;
        worst = worst.max((closed - oracle).abs());
        count += 1;
    }
    Ok(Measured::worst(worst, format!("max |c_closed - c_oracle| over {count} states")))
}

fn normalization_certificate() -> Result<Measured> {
    let mut worst = 0.0_f64;
    let mut count = 0;
    for s in oracle_grid() {
        let inv_sq = normalization_n(&s)?.powi(-2);
        let state = build_state(&s, default_truncation(s.intensity(), s.m))?;
        worst = worst.max(((state.norm_sq() - inv_sq) / inv_sq).abs());
        count += 1;
    }
    Ok(Measured::worst(worst, format!("max relative |norm_sq - N^-2| over {count} states")))
}

fn large_field() -> Result<Measured> {
    const MODERATE_FLOOR: f64 = 0.999;
    let mut min_moderate = f64::INFINITY;
    let mut worst = 0.0_f64;
    for m in LARGE_FIELD_M {
        for sign in SIGNS {
            min_moderate = min_moderate.min(concurrence_closed(&spec(20.0, m, sign))?.value);
            let far = concurrence_closed(&spec(100.0, m, sign))?;
            if far.path != crate::entanglement::EvalPath::SignedLog {
                return Err(Error::InternalConsistency(format!(
                    "x = 100 evaluated on the {} path",
                    far.path.as_str()
                )));
            }
            worst = worst.max(1.0 - far.value);
        }
    }
    Ok(Measured {
        worst,
        extra_ok: min_moderate > MODERATE_FLOOR,
        detail: format!("min C at x=20: {min_moderate:.12}; max 1-C at x=100 (signed-log)"),
    })
}

fn figure_shape() -> Result<Measured> {
    let curves = FIG1_M
        .into_iter()
        .map(|m| (m, Sign::Plus))
        .chain(FIG2_M.into_iter().map(|m| (m, Sign::Minus)));
    let mut worst = 0.0_f64;
    for (m, sign) in curves {
        let mut prev: Option<f64> = None;
        for k in 0..=60 {
            let s = spec(f64::from(k) / 10.0, m, sign);
            if s.is_degenerate() {
                continue;
            }
            let c = concurrence_closed(&s)?.value;
            if let Some(p) = prev {
                worst = worst.max(p - c);
            }
            prev = Some(c);
        }
    }
    Ok(Measured::worst(worst, "largest decrease between consecutive samples".into()))
}

fn moments(special_tolerance: f64) -> Result<Measured> {
    const FOCK_TOLERANCE: f64 = 1e-8;
    const FOCK_TRUNC: usize = 128;
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
    let mut worst_special = 0.0_f64;
    for m in 0..=10 {
        for k in 0..=20 {
            let x = f64::from(k) / 2.0;
            let alpha = Complex64::new(x.sqrt(), 0.0);
            let x = alpha.norm_sqr();
            let diag = cross_moment(m, m, alpha, alpha).re;
            worst_special = worst_special.max(rel(diag, factorial(m) * laguerre(m, -x)));
            let anti = cross_moment(m, m, alpha, -alpha).re;
            let expected = factorial(m) * (-2.0 * x).exp() * laguerre(m, x);
            // relative to the diagonal moment where L_m(x) has a root
            let scale = expected.abs().max(1e-6 * factorial(m) * (-2.0 * x).exp() * laguerre(m, -x));
            worst_special = worst_special.max((anti - expected).abs() / scale);
        }
    }
    let amplitudes = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.7, 0.2),
        Complex64::new(-1.3, 0.9),
        Complex64::new(0.4, -1.8),
    ];
    let mut worst_fock = 0.0_f64;
    for n in 0..=6 {
        for m in 0..=6 {
            for &a in &amplitudes {
                for &b in &amplitudes {
                    let fast = cross_moment(n, m, a, b);
                    let slow = cross_moment_fock(n, m, a, b, FOCK_TRUNC);
                    worst_fock = worst_fock.max((fast - slow).norm() / slow.norm().max(f64::MIN_POSITIVE));
                }
            }
        }
    }
    Ok(Measured {
        worst: worst_special,
        extra_ok: worst_fock < FOCK_TOLERANCE && worst_special < special_tolerance,
        detail: format!("special cases max rel {worst_special:.3e}; Fock sum max rel {worst_fock:.3e}"),
    })
}

/// Oracle concurrence at `x -> 0+` by Richardson extrapolation from
/// `x = h` and `x = 2h`.
pub fn oracle_small_alpha_limit(m: u32, h: f64) -> Result<f64> {
    let at = |x: f64| {
        let s = spec(x, m, Sign::Minus);
        concurrence_oracle(&s, default_truncation(x, m)).map(|c| c.value)
    };
    Ok(2.0 * at(h)? - at(2.0 * h)?)
}

fn small_alpha() -> Result<Measured> {
    let mut worst = 0.0_f64;
    let mut details = Vec::new();
    for m in [1, 3, 5] {
        let limit = oracle_small_alpha_limit(m, 1e-3)?;
        let closed = concurrence_closed(&spec(1e-6, m, Sign::Minus))?.value;
        let formula = concurrence_small_alpha_limit(m, Sign::Minus);
        worst = worst.max((closed - limit).abs()).max((formula - limit).abs());
        details.push(format!("m={m}: oracle {limit:.8}, closed {closed:.8}"));
    }
    Ok(Measured::worst(worst, details.join("; ")))
}

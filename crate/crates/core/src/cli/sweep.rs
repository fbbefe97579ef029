use std::io::{self, Write};

use rayon::prelude::*;

use crate::checks::{FIG1_M, FIG2_M};
use crate::entanglement::concurrence_closed;
use crate::error::{Error, Result};
use crate::oracle::{concurrence_oracle, default_truncation};
use crate::states::{Sign, StateSpec};

pub const CSV_HEADER: &str = "x,m,sign,c_closed,c_oracle,abs_err,degenerate";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignSelection {
    Plus,
    Minus,
    Both,
}

impl SignSelection {
    pub fn signs(self) -> &'static [Sign] {
        match self {
            SignSelection::Plus => &[Sign::Plus],
            SignSelection::Minus => &[Sign::Minus],
            SignSelection::Both => &[Sign::Plus, Sign::Minus],
        }
    }
}

/// A grid over `x = |alpha|^2` for a set of excitation counts.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub steps: usize,
    pub m_list: Vec<u32>,
    pub sign: SignSelection,
    pub phase: f64,
    pub trunc_override: Option<usize>,
    pub with_oracle: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            x_min: 0.0,
            x_max: 6.0,
            steps: 121,
            m_list: vec![0],
            sign: SignSelection::Both,
            phase: 0.0,
            trunc_override: None,
            with_oracle: false,
        }
    }
}

impl SweepConfig {
    /// Plus branch, `m = 0, 1, 3, 5, 20`, `x` in `[0, 6]`.
    pub fn fig1() -> Self {
        Self {
            m_list: FIG1_M.to_vec(),
            sign: SignSelection::Plus,
            ..Self::default()
        }
    }

    /// Minus branch, `m = 0, 3, 5, 10, 20`, `x` in `[0, 6]`.
    pub fn fig2() -> Self {
        Self {
            m_list: FIG2_M.to_vec(),
            sign: SignSelection::Minus,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidInput(msg));
        if !self.x_min.is_finite() || !self.x_max.is_finite() || self.x_min < 0.0 {
            return invalid(format!("x range must be finite with x_min >= 0 (got {}..{})", self.x_min, self.x_max));
        }
        if self.x_max <= self.x_min {
            return invalid(format!("x_max ({}) must exceed x_min ({})", self.x_max, self.x_min));
        }
        if self.steps < 2 {
            return invalid(format!("steps must be at least 2 (got {})", self.steps));
        }
        if self.m_list.is_empty() {
            return invalid("at least one m is required".into());
        }
        if !self.phase.is_finite() {
            return invalid("phase must be finite".into());
        }
        if self.trunc_override == Some(0) {
            return invalid("truncation must be positive".into());
        }
        Ok(())
    }

    /// Grid points, with both endpoints exact.
    pub fn xs(&self) -> Vec<f64> {
        let last = self.steps - 1;
        let dx = (self.x_max - self.x_min) / last as f64;
        (0..self.steps)
            .map(|i| if i == last { self.x_max } else { self.x_min + i as f64 * dx })
            .collect()
    }

    fn sorted_m(&self) -> Vec<u32> {
        let mut ms = self.m_list.clone();
        ms.sort_unstable();
        ms.dedup();
        ms
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleCell {
    Value { c: f64, trunc: usize },
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub m: u32,
    pub sign: Sign,
    /// `None` exactly when the row is degenerate.
    pub c_closed: Option<f64>,
    pub oracle: Option<OracleCell>,
}

impl SweepRow {
    pub fn degenerate(&self) -> bool {
        self.c_closed.is_none()
    }

    pub fn abs_err(&self) -> Option<f64> {
        match (self.c_closed, &self.oracle) {
            (Some(c), Some(OracleCell::Value { c: o, .. })) => Some((c - o).abs()),
            _ => None,
        }
    }
}

/// 17 significant digits in scientific notation.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

fn evaluate_row(config: &SweepConfig, x: f64, m: u32, sign: Sign) -> Result<SweepRow> {
    let spec = StateSpec::from_intensity(x, config.phase, m, sign);
    let c_closed = match concurrence_closed(&spec) {
        Ok(c) => Some(c.value),
        Err(Error::DegenerateState(_)) => None,
        Err(e) => return Err(e),
    };
    let oracle = match (config.with_oracle, c_closed) {
        (true, Some(_)) => {
            let trunc = config.trunc_override.unwrap_or_else(|| default_truncation(x, m));
            Some(match concurrence_oracle(&spec, trunc) {
                Ok(c) => OracleCell::Value { c: c.value, trunc },
                Err(Error::TruncationTooSmall { .. }) => OracleCell::Failed("truncation".into()),
                Err(e) => OracleCell::Failed(format!("error: {e}")),
            })
        }
        _ => None,
    };
    Ok(SweepRow {
        x,
        m,
        sign,
        c_closed,
        oracle,
    })
}

/// Rows in `(m, sign, x)` order. Points are evaluated in parallel; the order
/// of the result does not depend on scheduling.
pub fn sweep_rows(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let xs = config.xs();
    let points: Vec<(u32, Sign, f64)> = config
        .sorted_m()
        .into_iter()
        .flat_map(|m| {
            let xs = &xs;
            config
                .sign
                .signs()
                .iter()
                .flat_map(move |&sign| xs.iter().map(move |&x| (m, sign, x)))
        })
        .collect();
    points
        .par_iter()
        .map(|&(m, sign, x)| evaluate_row(config, x, m, sign))
        .collect()
}

pub fn write_csv<W: Write>(out: &mut W, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        let c_closed = row.c_closed.map(format_number).unwrap_or_default();
        let c_oracle = match &row.oracle {
            Some(OracleCell::Value { c, .. }) => format_number(*c),
            Some(OracleCell::Failed(reason)) => reason.replace(',', ";"),
            None => String::new(),
        };
        let abs_err = row.abs_err().map(format_number).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            format_number(row.x),
            row.m,
            row.sign.symbol(),
            c_closed,
            c_oracle,
            abs_err,
            u8::from(row.degenerate())
        )?;
    }
    Ok(())
}

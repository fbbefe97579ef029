use crate::entanglement::concurrence_closed;
use crate::error::{Error, Result};
use crate::oracle::{concurrence_oracle, default_truncation};
use crate::states::{normalization_m, normalization_n, overlap_p1, overlap_p2, Sign, StateSpec};

use super::sweep::format_number;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalRequest {
    pub x: f64,
    pub m: u32,
    pub sign: Sign,
    pub phase: f64,
    pub with_oracle: bool,
    pub trunc: Option<usize>,
}

/// Labeled `key = value` lines describing one state.
///
/// A degenerate state yields an explicit record rather than an error.
pub fn eval_record(req: &EvalRequest) -> Result<Vec<(String, String)>> {
    if !req.x.is_finite() || req.x < 0.0 {
        return Err(Error::InvalidInput(format!("x must be finite and nonnegative (got {})", req.x)));
    }
    if !req.phase.is_finite() {
        return Err(Error::InvalidInput("phase must be finite".into()));
    }
    let spec = StateSpec::from_intensity(req.x, req.phase, req.m, req.sign);
    let mut lines = vec![
        ("x".to_string(), format_number(req.x)),
        ("m".to_string(), req.m.to_string()),
        ("sign".to_string(), req.sign.symbol().to_string()),
        ("phase".to_string(), format_number(req.phase)),
        ("p1".to_string(), format_number(overlap_p1(spec.alpha, req.m))),
        ("p2".to_string(), format_number(overlap_p2(spec.alpha))),
    ];
    let closed = match concurrence_closed(&spec) {
        Ok(c) => c,
        Err(Error::DegenerateState(_)) => {
            lines.push(("state".to_string(), "degenerate (zero state)".to_string()));
            return Ok(lines);
        }
        Err(e) => return Err(e),
    };
    lines.push(("N".to_string(), format_number(normalization_n(&spec)?)));
    lines.push(("M".to_string(), format_number(normalization_m(&spec)?)));
    lines.push(("c_closed".to_string(), format_number(closed.value)));
    lines.push(("path".to_string(), closed.path.as_str().to_string()));
    if req.with_oracle {
        let trunc = req.trunc.unwrap_or_else(|| default_truncation(req.x, req.m));
        lines.push(("trunc".to_string(), trunc.to_string()));
        match concurrence_oracle(&spec, trunc) {
            Ok(c) => {
                lines.push(("c_oracle".to_string(), format_number(c.value)));
                lines.push(("abs_err".to_string(), format_number((c.value - closed.value).abs())));
            }
            Err(e) => lines.push(("c_oracle".to_string(), format!("unavailable ({e})"))),
        }
    }
    Ok(lines)
}

//! Concurrence of single-mode excited entangled coherent states
//! `a^dag^m (|alpha, alpha> +/- |-alpha, -alpha>)`.
//!
//! - [`specfun`]: Laguerre and two-variable Hermite polynomials, coherent-state moments.
//! - [`states`]: normalization constants and branch overlaps.
//! - [`entanglement`]: concurrence by the overlap formula and the closed form.
//! - [`oracle`]: truncated Fock-space brute force used to certify the closed forms.
//! - [`cli`]: sweep, eval and check front end behind the `smeecs` binary.

pub mod checks;
pub mod cli;
pub mod entanglement;
pub mod error;
pub mod oracle;
pub mod specfun;
pub mod states;

pub use entanglement::{
    concurrence_closed, concurrence_general, concurrence_m0, concurrence_small_alpha_limit,
    ConcurrenceResult, EvalPath,
};
pub use error::{Error, Result};
pub use oracle::{build_state, concurrence_oracle, default_truncation, reduced_purity, BipartiteAmplitudes, Mode};
pub use specfun::{cross_moment, hermite2, laguerre, laguerre_signed_log, SignedLogValue};
pub use states::{
    normalization_m, normalization_n, overlap_p1, overlap_p2, overlap_pair, OverlapPair, Sign, StateSpec,
};

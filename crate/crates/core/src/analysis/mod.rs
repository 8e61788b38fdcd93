//! The `h` function and its elimination calculus, excursion monotonicity,
//! log-law probes and the predicted limsup values.

mod asymptotics;
mod hseq;
mod limsup;
mod loglaw;

pub use asymptotics::{
    subsequence_asymptotics_check, AsymptoticsOptions, AsymptoticsReport, BlockEndCheck, InteriorCheck,
};
pub use hseq::{
    check_monotonicity, eliminate_max, h, h_rational, reduce_fully, PositiveSequence, Reduction,
};
pub use limsup::{theoretical_limsup, theoretical_limsup_exact};
pub use loglaw::{
    fhat_from_f, loglaw_probe, DeepTracker, loglaw_scan, BlockEndProbe, LogLawOptions, LogLawProbe, LogLawSummary,
    ProbeMarker,
};

use crate::numerics::BigInt;

pub(crate) fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

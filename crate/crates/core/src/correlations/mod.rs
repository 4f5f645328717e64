//! Correlation probabilities of the interface ground state.
//!
//! Every probability is a ratio of polynomials with denominator `Z(n, m)`.
//! Sites are numbered `1..=n+m`; site `x` is the `x`-th step of the path and
//! is down exactly when that step is horizontal.

mod fluctuation;
mod multipoint;
pub mod oracle;
mod query;
mod sampler;
mod single;
mod tail;

pub use fluctuation::{fluctuation_distribution, FluctuationDistribution, FluctuationQuery};
pub use multipoint::{exp_bound, exp_bound_exponent, multipoint_numerator, multipoint_prob};
pub use query::{CorrelationQuery, Spin};
pub use sampler::{exact_q, sample_path, PathSampler};
pub use single::{
    bound_down, down_bound_regime, pair_bound, pair_bound_regime, pair_bound_sharp, pair_down_up_prob,
    point_prob, spin_down_prob, spin_up_bound, spin_up_prob, up_bound_regime,
};
pub use tail::{tail_bound_f64, tail_bound_interval};

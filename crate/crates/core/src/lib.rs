//! Sample-size-aware evaluation of model errors.
//!
//! Computes MAE, RMSE and type-A uncertainty (U_A) for a set of model errors,
//! and shows how each one behaves as the number of samples grows: a bootstrap
//! sweep draws many random subsets at every size and traces the average metric
//! against subset size. MAE stays flat on average, RMSE rises toward its
//! population value, and U_A = RMSE/√n falls.
//!
//! | module | what it holds |
//! |---|---|
//! | [`metrics`] | MAE, RMSE, U_A (both forms), summary rows |
//! | [`distgen`] | seeded normal/exponential/lognormal/uniform error sets, histograms |
//! | [`sweep`] | the subset-size sweep engine |
//! | [`theory`] | MAE spread range, bound chains, envelope curves, closed-form moments |
//! | [`io`] | CSV/JSON readers and writers, SVG charts |
//! | [`cli`] | the `sizetrend` command line |

pub mod cli;
pub mod distgen;
pub mod error;
pub mod io;
pub mod metrics;
pub mod random;
mod sum;
pub mod sweep;
pub mod theory;

pub use error::{Error, Result};
pub use metrics::{ErrorVector, MetricsSummary};

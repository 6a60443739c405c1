//! Reduction of nonnegativity of an even homogeneous form to finitely many
//! univariate sign conditions.

pub mod decide;
pub mod falsify;
mod moddet;
pub mod rg;
pub mod rsystem;
pub mod specialize;

pub use rsystem::{build_r_system, build_r_system_with, support, support_size, DetMethod, RSystem, RSystemOptions, RowKind, SupportOrder};
pub use rg::{build_rg, build_rg_with, check_even_form, RGData};
pub use decide::{decide_nonneg, DecideOptions, DecisionReport, StarMode, Verdict, WitnessSource, WorkLog};
pub use falsify::{falsify_by_sampling, falsify_with_count, Sampling};
pub use specialize::{specialize, Specialization, TripleIndex};

//! The ordered-monoid contract and the generic decision procedures.

mod chain;
mod checks;
mod cut;
mod maps;
mod monoid;
mod report;
mod verdict;

pub use chain::{Chain, TermFn};
pub use checks::*;
pub use cut::{Cut, Tip};
pub use maps::{MonoidMap, Preimage};
pub use monoid::{
    cut_leq, cut_way_below, element, Class, Monoid, MonoidHandle, Probe, SupVerdict,
};
pub use report::{Entry, Report, Status};
pub use verdict::{Budget, Tri, Verdict, Witness};

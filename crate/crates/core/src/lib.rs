//! Exact toolkit for positively ordered abelian monoids in the categories
//! PreCu, 𝒞 and Cu.
//!
//! Monoids are symbolic: each family decides `≤`, `≪` and suprema by
//! closed-form rules where it can, and every other quantifier over chains
//! becomes a budgeted search whose verdicts carry replayable witnesses.
//!
//! * [`order`]: the monoid contract, verdicts, chains and the generic checks.
//! * [`catalog`]: ℕ, ℕ∪{∞}, ℕᵈ, ℚ⁺, the dyadic lattices and the doubled
//!   monoids T₁, T₂.
//! * [`finite`] and [`lab`]: finite tables and the exhaustive laboratory.
//! * [`completion`]: countably generated intervals and the completion M̄.
//! * [`models`]: the `V ⊔ LAff⁺⁺` model over a finite trace simplex.
//! * [`limits`]: inductive limits in 𝒞 and Cu and the PreCu counterexample.
//! * [`spec_file`] and [`commands`]: the document format behind the CLI.

pub mod catalog;
pub mod commands;
pub mod completion;
pub mod element;
pub mod error;
pub mod finite;
pub mod lab;
pub mod limits;
pub mod models;
pub mod number;
pub mod order;
pub mod spec_file;

pub use element::{Element, FamilyId, ModelValue, Value};
pub use error::{Error, Result};
pub use order::{
    Budget, Chain, Class, Cut, Monoid, MonoidHandle, MonoidMap, Report, Status, SupVerdict, Tri,
    Verdict, Witness,
};

//! Balancing, constant and fixing sets of subsets and multisets of F₂ⁿ.
//!
//! A vector `y` balances `S ⊆ F₂ⁿ` when `x·y` takes the values 0 and 1 equally
//! often on `S`, and is constant on `S` when `x·y` never changes. The constant
//! vectors form a subspace `C(S)` and the balancing vectors form a union of
//! its cosets `B(S)`; this crate computes both exactly, along with the fixing
//! space `F(S) = {x : x + S = S}` and closed-form counts for structured sets.

pub mod analysis;
pub mod closed_form;
pub mod error;
pub mod gf2;
pub mod multiset;
pub mod set_model;
pub mod spectrum;
pub mod testkit;

pub use analysis::{
    analyze, balance_sum, balancing_number, balancing_set, balancing_via_quotient, constant_set, constant_value,
    fixing_set, is_balanced, is_constant, is_fully_balanced, quotient, BalanceStructure, Limits, Method, MethodChoice,
    QuotientView,
};
pub use error::{Error, Guard, Result};
pub use gf2::{AffineCoset, BitVec, Gf2Matrix, Subspace};
pub use multiset::{balancing_set_m, constant_set_m, fixing_set_m, is_fully_balanced_m};
pub use set_model::{BoolMultiset, VectorSet, Weighted};
pub use spectrum::{spectrum_analysis, SpectrumTable};

//! Balance analysis of Boolean multisets.
//!
//! `C(M)` depends only on the support. `B(M)` keeps the coset structure of
//! the set case: shifting `y` by an element of `C(M)` multiplies every term of
//! the weighted sum by the same sign, so one representative per system decides
//! the whole coset.

use crate::analysis::{constant_set, coset_sweep, fixing_set, BalanceStructure, Limits};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Subspace};
use crate::set_model::BoolMultiset;

/// `C(M) = C(S_M)`.
pub fn constant_set_m(m: &BoolMultiset) -> Subspace {
    constant_set(&m.support())
}

/// `B(M)` by the coset method with weighted balance sums.
pub fn balancing_set_m(m: &BoolMultiset, limits: &Limits) -> Result<BalanceStructure> {
    coset_sweep(m, limits)
}

/// `F(M) = {x : m(z + x) = m(z) for all z}`, found inside `F(S_M)`.
pub fn fixing_set_m(m: &BoolMultiset) -> Result<Subspace> {
    let support_fixing = fixing_set(&m.support());
    let fixing: Vec<BitVec> = support_fixing
        .enumerate(support_fixing.dimension() as u32)?
        .into_iter()
        .filter(|&x| m.entries().all(|(z, c)| m.multiplicity(&(z ^ x)) == c))
        .collect();
    Subspace::span(m.width(), &fixing)
}

/// Both sides of the fully-balanced classification for a multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FullBalanceWitness {
    pub fully_balanced: bool,
    pub balancing_number: u64,
    pub rank: usize,
    pub affine_support: bool,
    pub constant_multiplicity: bool,
}

/// `B(M) ∪ C(M) = F₂ⁿ`, checked as `b(M) = 2^r - 1` and required to agree with
/// "support is affine and `m` is constant".
pub fn is_fully_balanced_m(m: &BoolMultiset, limits: &Limits) -> Result<FullBalanceWitness> {
    let structure = balancing_set_m(m, limits)?;
    let witness = FullBalanceWitness {
        fully_balanced: structure.is_fully_balanced(),
        balancing_number: structure.balancing_number(),
        rank: structure.rank(),
        affine_support: m.support().is_affine(),
        constant_multiplicity: m.has_constant_multiplicity(),
    };
    if witness.fully_balanced != (witness.affine_support && witness.constant_multiplicity) {
        return Err(Error::Inconsistency(format!(
            "fully balanced by count is {} but structural test gives affine={} constant={}",
            witness.fully_balanced, witness.affine_support, witness.constant_multiplicity
        )));
    }
    Ok(witness)
}

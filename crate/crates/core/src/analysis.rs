//! Balance and constant tests, constant sets, balancing sets as coset
//! unions, balancing numbers, fixing sets and the quotient decomposition.
//!
//! A balancing set is never materialized. It is stored as the constant space
//! `C(S)` plus one canonical representative per balancing coset, so results
//! stay exact for any width up to 64 even when `#B(S)` is astronomically large.
//!
//! The coset method translates `S` so that it contains `0`, picks `r`
//! independent members `s₁ … s_r`, and for every right-hand side
//! `b ∈ F₂^r` solves `{sⱼ·y = bⱼ}`. Each solution set is one coset of `C(S)`,
//! and either every member of it balances `S` or none does, so testing the
//! canonical solution decides the whole coset.

use crate::error::{Error, Guard, Result};
use crate::gf2::{nullspace, solve_affine, AffineCoset, BitVec, Gf2Matrix, Subspace};
use crate::set_model::{VectorSet, Weighted};

/// Default cap on `rk(S)` for the `2^r` coset sweep.
pub const DEFAULT_MAX_RANK: u32 = 24;
/// Default cap on `n` for the `2^n` spectrum table.
pub const DEFAULT_MAX_SPECTRUM_N: u32 = 24;

/// Resource guards for the exponential parts of the analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_rank: u32,
    pub max_spectrum_n: u32,
    pub max_enumerate: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: DEFAULT_MAX_RANK,
            max_spectrum_n: DEFAULT_MAX_SPECTRUM_N,
            max_enumerate: crate::gf2::DEFAULT_ENUMERATION_GUARD,
        }
    }
}

/// Which computation produced a [`BalanceStructure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Coset,
    Quotient,
    Spectrum,
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Coset => "coset",
            Method::Quotient => "quotient",
            Method::Spectrum => "spectrum",
            Method::Oracle => "oracle",
        }
    }
}

/// `C(S)` together with the canonical representatives of the cosets of
/// `C(S)` whose union is `B(S)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BalanceStructure {
    constant_space: Subspace,
    balancing_reps: Vec<BitVec>,
    rank: usize,
    method: Method,
}

impl BalanceStructure {
    /// Checks the structural invariants: reps sorted, canonical, nonzero
    /// coset, and `rank = n - dim C`.
    pub fn new(constant_space: Subspace, mut balancing_reps: Vec<BitVec>, rank: usize, method: Method) -> Result<Self> {
        if rank + constant_space.dimension() != constant_space.width() as usize {
            return Err(Error::Inconsistency(format!(
                "rank {rank} and constant-space dimension {} do not add up to {}",
                constant_space.dimension(),
                constant_space.width()
            )));
        }
        balancing_reps.sort_unstable();
        balancing_reps.dedup();
        for rep in &balancing_reps {
            if constant_space.canonical_rep(rep)? != *rep {
                return Err(Error::Inconsistency(format!(
                    "{rep} is not a canonical coset representative"
                )));
            }
            if rep.is_zero() {
                return Err(Error::Inconsistency("the constant space cannot balance".into()));
            }
        }
        Ok(BalanceStructure {
            constant_space,
            balancing_reps,
            rank,
            method,
        })
    }

    /// `C(S)`.
    pub fn constant_space(&self) -> &Subspace {
        &self.constant_space
    }

    pub fn balancing_reps(&self) -> &[BitVec] {
        &self.balancing_reps
    }

    /// `b(S) = #B(S) / #C(S)`.
    pub fn balancing_number(&self) -> u64 {
        self.balancing_reps.len() as u64
    }

    /// `rk(S) = n - dim C(S)`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn width(&self) -> u32 {
        self.constant_space.width()
    }

    /// `#B(S) = b(S) · 2^{dim C(S)}`.
    pub fn balancing_cardinality(&self) -> u128 {
        (self.balancing_reps.len() as u128) << self.constant_space.dimension()
    }

    /// Membership `y ∈ B(S)`.
    pub fn is_balancing(&self, y: &BitVec) -> Result<bool> {
        let rep = self.constant_space.canonical_rep(y)?;
        Ok(self.balancing_reps.binary_search(&rep).is_ok())
    }

    /// Membership `y ∈ C(S)`.
    pub fn is_constant(&self, y: &BitVec) -> Result<bool> {
        self.constant_space.contains(y)
    }

    /// `B(S) ∪ C(S) = F₂ⁿ`, equivalently `b(S) = 2^r - 1`.
    pub fn is_fully_balanced(&self) -> bool {
        self.rank < 64 && self.balancing_reps.len() as u128 == (1u128 << self.rank) - 1
    }

    pub fn cosets(&self) -> Vec<AffineCoset> {
        self.balancing_reps
            .iter()
            .map(|&r| AffineCoset::new(r, self.constant_space.clone()).expect("same width"))
            .collect()
    }

    /// Every member of `B(S)` in increasing index order, if `#B(S) ≤ 2^guard`.
    pub fn enumerate_balancing(&self, guard: u32) -> Result<Vec<BitVec>> {
        let count = self.balancing_cardinality();
        if count > 1u128 << guard.min(127) {
            return Err(Error::GuardExceeded {
                guard: Guard::Enumeration,
                value: u64::try_from(count).unwrap_or(u64::MAX),
                limit: 1u64 << guard.min(63),
            });
        }
        let members = self.constant_space.enumerate(guard)?;
        let mut out: Vec<BitVec> = self
            .balancing_reps
            .iter()
            .flat_map(|&r| members.iter().map(move |&c| c ^ r))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Same constant space, cosets and rank, ignoring which method produced them.
    pub fn agrees_with(&self, other: &BalanceStructure) -> bool {
        self.constant_space == other.constant_space
            && self.balancing_reps == other.balancing_reps
            && self.rank == other.rank
    }

    pub(crate) fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }
}

fn check_width(expected: u32, y: &BitVec) -> Result<()> {
    if y.width() != expected {
        return Err(Error::WidthMismatch {
            expected,
            found: y.width(),
        });
    }
    Ok(())
}

#[inline]
fn signed_sum(terms: &[(u64, i64)], y: u64) -> i64 {
    terms
        .iter()
        .map(|&(x, m)| if (x & y).count_ones() & 1 == 0 { m } else { -m })
        .sum()
}

fn packed_terms<W: Weighted + ?Sized>(w: &W) -> Vec<(u64, i64)> {
    w.weighted().map(|(x, m)| (x.bits(), m as i64)).collect()
}

/// `Σ m(x)·(-1)^{x·y}`, with `m ≡ 1` for sets.
pub fn balance_sum<W: Weighted + ?Sized>(w: &W, y: &BitVec) -> Result<i64> {
    check_width(w.width(), y)?;
    Ok(w.weighted()
        .map(|(x, m)| if x.pair(y) { -(m as i64) } else { m as i64 })
        .sum())
}

/// `y`-balanced: the balance sum vanishes. `y` must be nonzero.
pub fn is_balanced<W: Weighted + ?Sized>(w: &W, y: &BitVec) -> Result<bool> {
    check_width(w.width(), y)?;
    if y.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(balance_sum(w, y)? == 0)
}

/// `y`-constant: every member pairs to the same value with `y`.
pub fn is_constant<W: Weighted + ?Sized>(w: &W, y: &BitVec) -> Result<bool> {
    Ok(balance_sum(w, y)?.unsigned_abs() == w.total())
}

/// The common pairing value when `w` is `y`-constant.
pub fn constant_value<W: Weighted + ?Sized>(w: &W, y: &BitVec) -> Result<Option<bool>> {
    let sum = balance_sum(w, y)?;
    Ok(if sum.unsigned_abs() != w.total() {
        None
    } else {
        Some(sum < 0)
    })
}

/// `C(S)`: the nullspace of `s₀ + S`, of dimension `n - rk(S)`.
pub fn constant_set(s: &VectorSet) -> Subspace {
    let rows = s.normalized().members().to_vec();
    nullspace(&Gf2Matrix::new(s.width(), rows).expect("uniform width"))
}

pub(crate) fn check_rank_guard(rank: usize, limits: &Limits) -> Result<()> {
    if rank as u64 > limits.max_rank as u64 {
        return Err(Error::GuardExceeded {
            guard: Guard::Rank,
            value: rank as u64,
            limit: limits.max_rank as u64,
        });
    }
    Ok(())
}

/// Coset-method balancing structure for any weighted object.
pub(crate) fn coset_sweep<W: Weighted + ?Sized>(w: &W, limits: &Limits) -> Result<BalanceStructure> {
    let width = w.width();
    let support = w.support_set();
    let shifted = support.normalized();
    let independent = shifted.independent_subset()?;
    let rank = independent.len();
    check_rank_guard(rank, limits)?;

    let system = Gf2Matrix::new(width, independent)?;
    let constant_space = nullspace(&system);
    let mut reps = Vec::new();

    if w.total().is_multiple_of(2) && rank > 0 {
        // Solutions for unit right-hand sides; the canonical solution is
        // linear in b, so the sweep only XORs these.
        let mut unit_solutions = Vec::with_capacity(rank);
        for j in 0..rank {
            let rhs: Vec<bool> = (0..rank).map(|i| i == j).collect();
            let y = solve_affine(&system, &rhs)?
                .ok_or_else(|| Error::Inconsistency("independent rows gave an inconsistent system".into()))?;
            unit_solutions.push(y.bits());
        }
        let s0 = support.first().bits();
        let terms: Vec<(u64, i64)> = packed_terms(w).into_iter().map(|(x, m)| (x ^ s0, m)).collect();
        let mut y = 0u64;
        for i in 1u64..(1u64 << rank) {
            y ^= unit_solutions[i.trailing_zeros() as usize];
            if signed_sum(&terms, y) == 0 {
                reps.push(BitVec::new(width, y)?);
            }
        }
    }
    BalanceStructure::new(constant_space, reps, rank, Method::Coset)
}

/// `B(S)` by the coset method.
pub fn balancing_set(s: &VectorSet, limits: &Limits) -> Result<BalanceStructure> {
    coset_sweep(s, limits)
}

/// `b(S)`.
pub fn balancing_number(s: &VectorSet, limits: &Limits) -> Result<u64> {
    Ok(balancing_set(s, limits)?.balancing_number())
}

/// Fully balanced, computed as `b(S) = 2^r - 1` and cross-checked against
/// the structural test (vector or affine space).
pub fn is_fully_balanced(s: &VectorSet, limits: &Limits) -> Result<bool> {
    let by_count = balancing_set(s, limits)?.is_fully_balanced();
    let by_structure = s.is_affine();
    if by_count != by_structure {
        return Err(Error::Inconsistency(format!(
            "b(S) = 2^r - 1 is {by_count} but affine-space test is {by_structure}"
        )));
    }
    Ok(by_count)
}

/// `F(S) = {x : x + S = S}`.
///
/// After translating so that `0 ∈ S`, `F(S) ⊆ S`, so only members are tested.
pub fn fixing_set(s: &VectorSet) -> Subspace {
    let shifted = s.normalized();
    let fixing: Vec<BitVec> = shifted
        .iter()
        .copied()
        .filter(|&x| shifted.iter().all(|&t| shifted.contains(&(t ^ x))))
        .collect();
    let space = Subspace::span(s.width(), &fixing).expect("uniform width");
    debug_assert_eq!(space.cardinality(), fixing.len() as u128);
    space
}

/// `S/F(S)` with one canonical representative per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientView {
    fixing_space: Subspace,
    h_space: Subspace,
    representatives: VectorSet,
    anchor: BitVec,
}

impl QuotientView {
    /// `F(S)`.
    pub fn fixing_space(&self) -> &Subspace {
        &self.fixing_space
    }

    /// `H = ⋂_{s ∈ F} H_s`.
    pub fn h_space(&self) -> &Subspace {
        &self.h_space
    }

    /// `S_F`.
    pub fn representatives(&self) -> &VectorSet {
        &self.representatives
    }

    pub fn fixing_dimension(&self) -> usize {
        self.fixing_space.dimension()
    }

    /// The representative of the class containing `x`.
    pub fn class_of(&self, x: &BitVec) -> Result<BitVec> {
        let s0 = self.anchor;
        Ok(s0 ^ self.fixing_space.canonical_rep(&(*x ^ s0))?)
    }
}

/// Partition of `S` into cosets of `F(S)`. Each class is represented by
/// `s₀ + canonical_rep(x + s₀, F)` where `s₀` is the first member of `S`.
pub fn quotient(s: &VectorSet) -> QuotientView {
    let fixing_space = fixing_set(s);
    let s0 = s.first();
    let reps = s.iter().map(|&x| s0 ^ fixing_space.canonical_unchecked(x ^ s0));
    let representatives = VectorSet::from_iter_dedup(s.width(), reps).expect("nonempty");
    let h_space = fixing_space.annihilator();
    QuotientView {
        fixing_space,
        h_space,
        representatives,
        anchor: s0,
    }
}

/// `B(S)` through the fixing-set decomposition
/// `B(S) = (F₂ⁿ ∖ H) ∪ (B(S_F) ∩ H)`, with `b(S) = 2^{r-f}(2^f - 1) + b(S_F)`.
///
/// Recurses one level: `S_F` is analyzed with the coset method.
pub fn balancing_via_quotient(s: &VectorSet, limits: &Limits) -> Result<BalanceStructure> {
    let q = quotient(s);
    let f = q.fixing_dimension();
    if f == 0 {
        return Ok(balancing_set(s, limits)?.with_method(Method::Quotient));
    }
    let rank = s.rank();
    check_rank_guard(rank, limits)?;
    let inner = balancing_set(&q.representatives, limits)?;
    let constant_space = constant_set(s);
    let fixing_basis = q.fixing_space.basis();

    // Cosets of C(S) outside H: every canonical rep with a nonzero pairing
    // against some element of F.
    let mut reps: Vec<BitVec> = constant_space
        .coset_representatives(rank as u32)?
        .into_iter()
        .filter(|w| fixing_basis.iter().any(|fb| fb.pair(w)))
        .collect();
    debug_assert_eq!(reps.len() as u64, (1u64 << rank) - (1u64 << (rank - f)));

    // Each balancing coset of C(S_F) meets H in exactly one coset of C(S).
    let class_span = q.representatives.linear_span();
    let mut rows: Vec<BitVec> = class_span.basis().to_vec();
    rows.extend_from_slice(fixing_basis);
    let system = Gf2Matrix::new(s.width(), rows)?;
    for rho in inner.balancing_reps() {
        let mut rhs: Vec<bool> = class_span.basis().iter().map(|a| a.pair(rho)).collect();
        rhs.extend(std::iter::repeat_n(false, f));
        let y = solve_affine(&system, &rhs)?
            .ok_or_else(|| Error::Inconsistency(format!("balancing coset {rho} misses H")))?;
        reps.push(y);
    }
    BalanceStructure::new(constant_space, reps, rank, Method::Quotient)
}

/// Requested computation for [`analyze`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    /// Coset sweep when the rank fits the guard, otherwise the spectrum table.
    #[default]
    Auto,
    Coset,
    Spectrum,
}

/// Balance structure of a set or multiset by the chosen method.
pub fn analyze<W: Weighted + ?Sized>(w: &W, choice: MethodChoice, limits: &Limits) -> Result<BalanceStructure> {
    match choice {
        MethodChoice::Coset => coset_sweep(w, limits),
        MethodChoice::Spectrum => crate::spectrum::spectrum_analysis(w, limits),
        MethodChoice::Auto => {
            let rank = w.support_set().rank();
            if rank as u64 <= limits.max_rank as u64 || w.width() > limits.max_spectrum_n {
                coset_sweep(w, limits)
            } else {
                crate::spectrum::spectrum_analysis(w, limits)
            }
        }
    }
}

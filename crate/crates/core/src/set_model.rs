//! The analyzed objects: finite subsets and multisets of F₂ⁿ.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf2::{rref, BitVec, Gf2Matrix, Subspace};

/// Upper bound on the total multiplicity of a multiset, so that every
/// balance sum fits an `i64`.
pub const MAX_TOTAL_MULTIPLICITY: u64 = 1 << 62;

/// A nonempty set of distinct vectors of one width, sorted by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorSet {
    width: u32,
    members: Vec<BitVec>,
}

impl VectorSet {
    /// Rejects empty input, mixed widths and duplicates.
    pub fn new(width: u32, mut members: Vec<BitVec>) -> Result<Self> {
        BitVec::zero(width)?;
        if members.is_empty() {
            return Err(Error::EmptySet);
        }
        for m in &members {
            if m.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: m.width(),
                });
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember(w[0].to_string()));
        }
        Ok(VectorSet { width, members })
    }

    /// Like [`VectorSet::new`] but silently merges duplicates.
    pub fn from_iter_dedup(width: u32, members: impl IntoIterator<Item = BitVec>) -> Result<Self> {
        let mut members: Vec<BitVec> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self::new(width, members)
    }

    /// Parses a list of 0/1 strings of equal length.
    pub fn from_strs<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let members = items
            .iter()
            .map(|s| s.as_ref().parse::<BitVec>())
            .collect::<Result<Vec<_>>>()?;
        let width = members.first().ok_or(Error::EmptySet)?.width();
        Self::new(width, members)
    }

    /// All of F₂ⁿ.
    pub fn full_space(width: u32) -> Result<Self> {
        let members = Subspace::full(width)?.enumerate(crate::gf2::DEFAULT_ENUMERATION_GUARD)?;
        Ok(VectorSet { width, members })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn members(&self) -> &[BitVec] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false; present for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn first(&self) -> BitVec {
        self.members[0]
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.members.binary_search(v).is_ok()
    }

    /// `s + S`.
    pub fn translate(&self, s: &BitVec) -> Result<VectorSet> {
        if s.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: s.width(),
            });
        }
        let mut members: Vec<BitVec> = self.members.iter().map(|&x| x ^ *s).collect();
        members.sort_unstable();
        Ok(VectorSet {
            width: self.width,
            members,
        })
    }

    /// The translate by the first member, which contains `0`.
    pub fn normalized(&self) -> VectorSet {
        self.translate(&self.first()).expect("same width")
    }

    /// `rk(S)`: dimension of the span of `s₀ + S` for any `s₀ ∈ S`.
    pub fn rank(&self) -> usize {
        let s0 = self.first();
        let rows = self.members.iter().map(|&x| x ^ s0).collect();
        rref(&Gf2Matrix::new(self.width, rows).expect("uniform width")).1
    }

    /// The span of `s₀ + S`, of dimension `rk(S)`.
    pub fn linear_span(&self) -> Subspace {
        let s0 = self.first();
        let rows: Vec<BitVec> = self.members.iter().map(|&x| x ^ s0).collect();
        Subspace::span(self.width, &rows).expect("uniform width")
    }

    /// Greedy choice (in index order) of `rk(S)` independent members; `0 ∈ S` is required.
    pub fn independent_subset(&self) -> Result<Vec<BitVec>> {
        if !self.contains(&BitVec::zero(self.width)?) {
            return Err(Error::MissingZero);
        }
        let mut span = Subspace::zero(self.width)?;
        let mut chosen = Vec::new();
        for &x in &self.members {
            if !span.contains(&x)? {
                chosen.push(x);
                span = Subspace::span(self.width, &chosen)?;
            }
        }
        Ok(chosen)
    }

    /// `0 ∈ S` and `S` closed under addition.
    pub fn is_vector_space(&self) -> bool {
        if !self.members[0].is_zero() {
            return false;
        }
        // S ⊆ ⟨S⟩ and #⟨S⟩ = 2^rank, so equal cardinality means S = ⟨S⟩.
        let r = self.rank();
        r < 64 && self.members.len() as u128 == 1u128 << r
    }

    pub fn is_affine(&self) -> bool {
        self.normalized().is_vector_space()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BitVec> {
        self.members.iter()
    }
}

/// A Boolean multiset `M = (F₂ⁿ, m)` with finite support.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolMultiset {
    width: u32,
    entries: BTreeMap<BitVec, u64>,
    total: u64,
}

impl BoolMultiset {
    /// Accumulates repeated keys and drops zero counts; the result must be
    /// nonempty and its total at most [`MAX_TOTAL_MULTIPLICITY`].
    pub fn from_pairs(width: u32, pairs: impl IntoIterator<Item = (BitVec, u64)>) -> Result<Self> {
        BitVec::zero(width)?;
        let mut entries = BTreeMap::new();
        let mut total: u64 = 0;
        for (x, count) in pairs {
            if x.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: x.width(),
                });
            }
            if count == 0 {
                continue;
            }
            total = total
                .checked_add(count)
                .filter(|&t| t <= MAX_TOTAL_MULTIPLICITY)
                .ok_or(Error::MultiplicityOverflow)?;
            *entries.entry(x).or_insert(0) += count;
        }
        if entries.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(BoolMultiset { width, entries, total })
    }

    /// The multiset with multiplicity one on every member of `s`.
    pub fn from_set(s: &VectorSet) -> Self {
        BoolMultiset {
            width: s.width(),
            entries: s.iter().map(|&x| (x, 1)).collect(),
            total: s.len() as u64,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn multiplicity(&self, x: &BitVec) -> u64 {
        self.entries.get(x).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (BitVec, u64)> + '_ {
        self.entries.iter().map(|(&x, &m)| (x, m))
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// `S_M`.
    pub fn support(&self) -> VectorSet {
        VectorSet {
            width: self.width,
            members: self.entries.keys().copied().collect(),
        }
    }

    /// `s + M`, i.e. `m'(x) = m(s + x)`.
    pub fn translate(&self, s: &BitVec) -> Result<BoolMultiset> {
        if s.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: s.width(),
            });
        }
        Ok(BoolMultiset {
            width: self.width,
            entries: self.entries.iter().map(|(&x, &m)| (x ^ *s, m)).collect(),
            total: self.total,
        })
    }

    pub fn has_constant_multiplicity(&self) -> bool {
        let mut values = self.entries.values();
        let first = values.next().copied();
        values.all(|&m| Some(m) == first)
    }
}

pub fn multiset_from_pairs(width: u32, pairs: impl IntoIterator<Item = (BitVec, u64)>) -> Result<BoolMultiset> {
    BoolMultiset::from_pairs(width, pairs)
}

/// Anything whose balance sums can be taken: a set (every weight one) or a multiset.
pub trait Weighted {
    fn width(&self) -> u32;
    /// Σ m(x).
    fn total(&self) -> u64;
    /// `(x, m(x))` over the support.
    fn weighted(&self) -> Box<dyn Iterator<Item = (BitVec, u64)> + '_>;
    /// The support as a set.
    fn support_set(&self) -> VectorSet;
}

impl Weighted for VectorSet {
    fn width(&self) -> u32 {
        self.width
    }

    fn total(&self) -> u64 {
        self.members.len() as u64
    }

    fn weighted(&self) -> Box<dyn Iterator<Item = (BitVec, u64)> + '_> {
        Box::new(self.members.iter().map(|&x| (x, 1)))
    }

    fn support_set(&self) -> VectorSet {
        self.clone()
    }
}

impl Weighted for BoolMultiset {
    fn width(&self) -> u32 {
        self.width
    }

    fn total(&self) -> u64 {
        self.total
    }

    fn weighted(&self) -> Box<dyn Iterator<Item = (BitVec, u64)> + '_> {
        Box::new(self.entries())
    }

    fn support_set(&self) -> VectorSet {
        self.support()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[&str]) -> VectorSet {
        VectorSet::from_strs(items).unwrap()
    }

    fn v(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    const S1: [&str; 4] = ["1001", "1101", "1100", "1000"];
    const S2: [&str; 6] = ["0001", "0111", "0101", "1000", "0110", "1001"];

    #[test]
    fn translation_examples() {
        assert_eq!(
            set(&S1).translate(&v("1001")).unwrap(),
            set(&["0000", "0100", "0101", "0001"])
        );
        assert_eq!(
            set(&S2).translate(&v("0001")).unwrap(),
            set(&["0000", "0110", "0100", "1001", "0111", "1000"])
        );
        assert_eq!(set(&S2).translate(&v("0000")).unwrap(), set(&S2));
        assert!(set(&S1).translate(&v("10")).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(set(&S1).rank(), 2);
        assert_eq!(set(&S2).rank(), 4);
        assert_eq!(set(&["0110"]).rank(), 0);
    }

    #[test]
    fn independent_subsets() {
        let t = set(&["0000", "0100", "0101", "0001"]);
        assert_eq!(t.independent_subset().unwrap(), vec![v("0001"), v("0100")]);
        assert_eq!(set(&S2).normalized().independent_subset().unwrap().len(), 4);
        let basis = set(&["0000", "1000", "0100", "0010"]);
        assert_eq!(
            basis.independent_subset().unwrap(),
            vec![v("0010"), v("0100"), v("1000")]
        );
        assert_eq!(set(&S1).independent_subset(), Err(Error::MissingZero));
    }

    #[test]
    fn structural_classification() {
        assert!(set(&S1).is_affine());
        assert!(!set(&S1).is_vector_space());
        assert!(set(&S1).translate(&v("1001")).unwrap().is_vector_space());
        assert!(!set(&S2).is_affine());
        assert!(set(&["101"]).is_affine());
        assert!(!set(&["000", "001", "010"]).is_vector_space());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(VectorSet::new(4, vec![]), Err(Error::EmptySet));
        assert!(matches!(set_err(&["1001", "1001"]), Error::DuplicateMember(_)));
        assert!(matches!(set_err(&["1001", "101"]), Error::WidthMismatch { .. }));
        let dedup = VectorSet::from_iter_dedup(2, [v("01"), v("01"), v("10")]).unwrap();
        assert_eq!(dedup.len(), 2);
    }

    fn set_err(items: &[&str]) -> Error {
        VectorSet::from_strs(items).unwrap_err()
    }

    #[test]
    fn multiset_accumulation() {
        let m = BoolMultiset::from_pairs(2, [(v("01"), 2), (v("10"), 2)]).unwrap();
        assert_eq!(m.total(), 4);
        assert_eq!(m.support(), set(&["01", "10"]));
        let m = BoolMultiset::from_pairs(2, [(v("01"), 1), (v("01"), 1)]).unwrap();
        assert_eq!(m.multiplicity(&v("01")), 2);
        assert_eq!(BoolMultiset::from_pairs(2, [(v("01"), 0)]), Err(Error::EmptySet));
        assert_eq!(
            BoolMultiset::from_pairs(2, [(v("01"), 1 << 62), (v("10"), 1)]),
            Err(Error::MultiplicityOverflow)
        );
        let t = m.translate(&v("11")).unwrap();
        assert_eq!(t.multiplicity(&v("10")), 2);
        assert!(t.has_constant_multiplicity());
    }
}

//! Bit-packed vectors over F₂ and the exact linear algebra built on them.
//!
//! A vector `x = (x₁ x₂ … xₙ)` is stored in one `u64` with `x₁` as the most
//! significant of the `n` low bits, so the packed word *is* the Hadamard
//! index `i_x = xₙ + xₙ₋₁·2 + … + x₁·2ⁿ⁻¹`. Coordinate `i` (1-based) lives at
//! bit position `n - i`.
//!
//! Subspaces are kept in reduced row echelon form with the leftmost
//! coordinate of each row as its pivot, which makes basis comparison
//! bit-exact and gives every coset a canonical representative (the member
//! whose pivot coordinates are all zero).

use std::fmt;
use std::ops::BitXor;
use std::str::FromStr;

use crate::error::{Error, Guard, Result};

/// Largest supported dimension: one vector per machine word.
pub const MAX_WIDTH: u32 = 64;

/// Default cap on the dimension of a subspace that may be materialized.
pub const DEFAULT_ENUMERATION_GUARD: u32 = 24;

#[inline]
fn mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

#[inline]
pub(crate) fn parity(a: u64, b: u64) -> bool {
    (a & b).count_ones() & 1 == 1
}

#[inline]
fn pivot_bit(word: u64) -> u32 {
    debug_assert!(word != 0);
    63 - word.leading_zeros()
}

fn check_width(width: u32) -> Result<()> {
    if width == 0 || width > MAX_WIDTH {
        return Err(Error::WidthOutOfRange(width as usize));
    }
    Ok(())
}

fn same_width(expected: u32, found: u32) -> Result<()> {
    if expected != found {
        return Err(Error::WidthMismatch { expected, found });
    }
    Ok(())
}

/// One element of F₂ⁿ, `1 ≤ n ≤ 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    width: u32,
    bits: u64,
}

impl BitVec {
    /// Builds a vector from its packed word; bits above `width` must be clear.
    pub fn new(width: u32, bits: u64) -> Result<Self> {
        check_width(width)?;
        if bits & !mask(width) != 0 {
            return Err(Error::IndexOutOfRange { index: bits, width });
        }
        Ok(BitVec { width, bits })
    }

    pub fn zero(width: u32) -> Result<Self> {
        Self::new(width, 0)
    }

    /// The canonical basis vector `eᵢ` (1-based coordinate).
    pub fn unit(width: u32, coordinate: u32) -> Result<Self> {
        check_width(width)?;
        if coordinate == 0 || coordinate > width {
            return Err(Error::IndexOutOfRange {
                index: coordinate as u64,
                width,
            });
        }
        Ok(BitVec {
            width,
            bits: 1u64 << (width - coordinate),
        })
    }

    /// `vec_of(i, n)`: the vector whose Hadamard index is `index`.
    pub fn from_index(index: u64, width: u32) -> Result<Self> {
        Self::new(width, index)
    }

    pub(crate) fn from_raw(width: u32, bits: u64) -> Self {
        debug_assert!((1..=MAX_WIDTH).contains(&width) && bits & !mask(width) == 0);
        BitVec { width, bits }
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// `i_x`, the position of this vector in the Hadamard ordering.
    #[inline]
    pub fn index(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Number of ones.
    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Value of coordinate `xᵢ` (1-based).
    pub fn coordinate(&self, i: u32) -> bool {
        assert!(i >= 1 && i <= self.width, "coordinate {i} out of range");
        (self.bits >> (self.width - i)) & 1 == 1
    }

    /// The pairing `x·y = Σ xᵢyᵢ mod 2`.
    pub fn dot(&self, other: &BitVec) -> Result<bool> {
        same_width(self.width, other.width)?;
        Ok(parity(self.bits, other.bits))
    }

    /// Componentwise XOR.
    pub fn add(&self, other: &BitVec) -> Result<BitVec> {
        same_width(self.width, other.width)?;
        Ok(BitVec {
            width: self.width,
            bits: self.bits ^ other.bits,
        })
    }

    /// Pairing without the width check; callers guarantee equal widths.
    #[inline]
    pub(crate) fn pair(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.width, other.width);
        parity(self.bits, other.bits)
    }
}

impl BitXor for BitVec {
    type Output = BitVec;

    /// Panics on a width mismatch; use [`BitVec::add`] for a checked sum.
    fn bitxor(self, rhs: BitVec) -> BitVec {
        assert_eq!(self.width, rhs.width, "width mismatch in xor");
        BitVec {
            width: self.width,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.width).rev() {
            f.write_str(if (self.bits >> i) & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_WIDTH as usize {
            return Err(if s.chars().all(|c| c == '0' || c == '1') {
                Error::WidthOutOfRange(s.len())
            } else {
                Error::InvalidBits(s.to_string())
            });
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::InvalidBits(s.to_string())),
                };
        }
        Ok(BitVec {
            width: s.len() as u32,
            bits,
        })
    }
}

/// Pairing of two vectors of equal width.
pub fn dot(x: &BitVec, y: &BitVec) -> Result<bool> {
    x.dot(y)
}

/// XOR sum of two vectors of equal width.
pub fn add(x: &BitVec, y: &BitVec) -> Result<BitVec> {
    x.add(y)
}

pub fn index_of(x: &BitVec) -> u64 {
    x.index()
}

pub fn vec_of(index: u64, width: u32) -> Result<BitVec> {
    BitVec::from_index(index, width)
}

/// An ordered list of rows of one width; row `j` encodes the equation `sⱼ·x = bⱼ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    width: u32,
    rows: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn new(width: u32, rows: Vec<BitVec>) -> Result<Self> {
        check_width(width)?;
        for r in &rows {
            same_width(width, r.width)?;
        }
        Ok(Gf2Matrix { width, rows })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }
}

/// Incremental RREF over packed rows, optionally carrying a right-hand side.
///
/// Rows are kept sorted by decreasing pivot bit (increasing column) and are
/// fully reduced: every pivot bit appears in exactly one row.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: Vec<(u64, bool)>,
}

impl Echelon {
    fn reduce(&self, mut word: u64, mut rhs: bool) -> (u64, bool) {
        for &(row, b) in &self.rows {
            if word >> pivot_bit(row) & 1 == 1 {
                word ^= row;
                rhs ^= b;
            }
        }
        (word, rhs)
    }

    /// Inserts a row. Returns `Some(rhs)` of the reduced remainder when the row
    /// was dependent (a zero row with that right-hand side), `None` otherwise.
    fn insert(&mut self, word: u64, rhs: bool) -> Option<bool> {
        let (word, rhs) = self.reduce(word, rhs);
        if word == 0 {
            return Some(rhs);
        }
        let p = pivot_bit(word);
        for (row, b) in self.rows.iter_mut() {
            if *row >> p & 1 == 1 {
                *row ^= word;
                *b ^= rhs;
            }
        }
        let pos = self.rows.partition_point(|&(row, _)| pivot_bit(row) > p);
        self.rows.insert(pos, (word, rhs));
        None
    }

    fn basis(&self, width: u32) -> Vec<BitVec> {
        self.rows.iter().map(|&(row, _)| BitVec::from_raw(width, row)).collect()
    }
}

/// A linear subspace of F₂ⁿ stored by its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    width: u32,
    basis: Vec<BitVec>,
}

impl Subspace {
    /// `{0}` in F₂ⁿ.
    pub fn zero(width: u32) -> Result<Self> {
        check_width(width)?;
        Ok(Subspace {
            width,
            basis: Vec::new(),
        })
    }

    /// All of F₂ⁿ.
    pub fn full(width: u32) -> Result<Self> {
        check_width(width)?;
        let basis = (1..=width)
            .map(|i| BitVec::unit(width, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace { width, basis })
    }

    /// The span of arbitrary vectors of one width.
    pub fn span(width: u32, vectors: &[BitVec]) -> Result<Self> {
        let (s, _) = rref(&Gf2Matrix::new(width, vectors.to_vec())?);
        Ok(s)
    }

    /// Accepts a basis only if it is already in reduced row echelon form.
    pub fn from_rref_basis(width: u32, basis: Vec<BitVec>) -> Result<Self> {
        check_width(width)?;
        let mut last: Option<u32> = None;
        for b in &basis {
            same_width(width, b.width)?;
            if b.is_zero() {
                return Err(Error::InvalidParams("zero row in basis".into()));
            }
            let p = pivot_bit(b.bits);
            if last.is_some_and(|q| p >= q) {
                return Err(Error::InvalidParams("pivots not strictly increasing".into()));
            }
            last = Some(p);
        }
        for b in &basis {
            let p = pivot_bit(b.bits);
            if basis.iter().filter(|o| o.bits >> p & 1 == 1).count() != 1 {
                return Err(Error::InvalidParams("basis is not reduced".into()));
            }
        }
        Ok(Subspace { width, basis })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    /// Number of members, `2^dimension`.
    pub fn cardinality(&self) -> u128 {
        1u128 << self.basis.len()
    }

    /// Pivot coordinates (1-based), strictly increasing.
    pub fn pivots(&self) -> Vec<u32> {
        self.basis.iter().map(|b| self.width - pivot_bit(b.bits)).collect()
    }

    fn pivot_mask(&self) -> u64 {
        self.basis.iter().fold(0, |m, b| m | 1u64 << pivot_bit(b.bits))
    }

    fn reduce_bits(&self, mut word: u64) -> u64 {
        for b in &self.basis {
            if word >> pivot_bit(b.bits) & 1 == 1 {
                word ^= b.bits;
            }
        }
        word
    }

    /// The member of `v + self` whose pivot coordinates are all zero.
    pub fn canonical_rep(&self, v: &BitVec) -> Result<BitVec> {
        same_width(self.width, v.width)?;
        Ok(BitVec::from_raw(self.width, self.reduce_bits(v.bits)))
    }

    pub(crate) fn canonical_unchecked(&self, v: BitVec) -> BitVec {
        BitVec::from_raw(self.width, self.reduce_bits(v.bits))
    }

    pub fn contains(&self, v: &BitVec) -> Result<bool> {
        Ok(self.canonical_rep(v)?.is_zero())
    }

    /// Whether `other ⊆ self`.
    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        same_width(self.width, other.width)?;
        Ok(other.basis.iter().all(|b| self.reduce_bits(b.bits) == 0))
    }

    /// All members, in increasing index order.
    pub fn enumerate(&self, guard: u32) -> Result<Vec<BitVec>> {
        let d = self.basis.len() as u32;
        if d > guard {
            return Err(Error::GuardExceeded {
                guard: Guard::Enumeration,
                value: d as u64,
                limit: guard as u64,
            });
        }
        let mut out = Vec::with_capacity(1usize << d);
        let mut acc = 0u64;
        out.push(acc);
        for i in 1u64..(1u64 << d) {
            acc ^= self.basis[i.trailing_zeros() as usize].bits;
            out.push(acc);
        }
        out.sort_unstable();
        Ok(out.into_iter().map(|w| BitVec::from_raw(self.width, w)).collect())
    }

    /// The canonical representatives of all `2^(n-d)` cosets: the vectors
    /// supported on the non-pivot coordinates, in increasing index order.
    pub fn coset_representatives(&self, guard: u32) -> Result<Vec<BitVec>> {
        let free = mask(self.width) & !self.pivot_mask();
        let complement = (0..self.width)
            .rev()
            .filter(|&bit| free >> bit & 1 == 1)
            .map(|bit| BitVec::from_raw(self.width, 1u64 << bit))
            .collect();
        Subspace {
            width: self.width,
            basis: complement,
        }
        .enumerate(guard)
    }

    /// The orthogonal complement `{y : b·y = 0 for all b in basis}`.
    pub fn annihilator(&self) -> Subspace {
        nullspace(&Gf2Matrix {
            width: self.width,
            rows: self.basis.clone(),
        })
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("width", &self.width)
            .field("basis", &self.basis)
            .finish()
    }
}

/// Row space of `m` in reduced row echelon form, and its rank.
pub fn rref(m: &Gf2Matrix) -> (Subspace, usize) {
    let mut ech = Echelon::default();
    for r in &m.rows {
        ech.insert(r.bits, false);
    }
    let basis = ech.basis(m.width);
    let rank = basis.len();
    (Subspace { width: m.width, basis }, rank)
}

/// `{y : row·y = 0 for every row of m}`.
pub fn nullspace(m: &Gf2Matrix) -> Subspace {
    let (row_space, _) = rref(m);
    let pivots = row_space.pivot_mask();
    let width = m.width;
    let mut ech = Echelon::default();
    for bit in (0..width).rev() {
        if pivots >> bit & 1 == 1 {
            continue;
        }
        let mut v = 1u64 << bit;
        for row in &row_space.basis {
            if row.bits >> bit & 1 == 1 {
                v |= 1u64 << pivot_bit(row.bits);
            }
        }
        ech.insert(v, false);
    }
    Subspace {
        width,
        basis: ech.basis(width),
    }
}

/// One solution of `{rowⱼ·x = rhsⱼ}`, canonical against `nullspace(m)`, or
/// `None` when the system is inconsistent. The full solution set is the
/// returned vector plus `nullspace(m)`.
pub fn solve_affine(m: &Gf2Matrix, rhs: &[bool]) -> Result<Option<BitVec>> {
    if rhs.len() != m.rows.len() {
        return Err(Error::LengthMismatch {
            expected: m.rows.len(),
            found: rhs.len(),
        });
    }
    let mut ech = Echelon::default();
    for (row, &b) in m.rows.iter().zip(rhs) {
        if ech.insert(row.bits, b) == Some(true) {
            return Ok(None);
        }
    }
    let particular = ech
        .rows
        .iter()
        .filter(|&&(_, b)| b)
        .fold(0u64, |acc, &(row, _)| acc | 1u64 << pivot_bit(row));
    let kernel = nullspace(m);
    Ok(Some(kernel.canonical_unchecked(BitVec::from_raw(m.width, particular))))
}

/// All members of `s`, in increasing index order.
pub fn enumerate(s: &Subspace, guard: u32) -> Result<Vec<BitVec>> {
    s.enumerate(guard)
}

pub fn canonical_rep(v: &BitVec, s: &Subspace) -> Result<BitVec> {
    s.canonical_rep(v)
}

/// An affine subspace `representative + direction` with a canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineCoset {
    representative: BitVec,
    direction: Subspace,
}

impl AffineCoset {
    pub fn new(point: BitVec, direction: Subspace) -> Result<Self> {
        let representative = direction.canonical_rep(&point)?;
        Ok(AffineCoset {
            representative,
            direction,
        })
    }

    pub fn representative(&self) -> BitVec {
        self.representative
    }

    pub fn direction(&self) -> &Subspace {
        &self.direction
    }

    pub fn contains(&self, v: &BitVec) -> Result<bool> {
        Ok(self.direction.canonical_rep(v)? == self.representative)
    }

    pub fn enumerate(&self, guard: u32) -> Result<Vec<BitVec>> {
        let mut out: Vec<BitVec> = self
            .direction
            .enumerate(guard)?
            .into_iter()
            .map(|c| c ^ self.representative)
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn m(rows: &[&str]) -> Gf2Matrix {
        let rows: Vec<BitVec> = rows.iter().map(|r| v(r)).collect();
        Gf2Matrix::new(rows[0].width(), rows).unwrap()
    }

    fn strs(vs: &[BitVec]) -> Vec<String> {
        vs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn pairing_examples() {
        assert!(v("0001").dot(&v("1001")).unwrap());
        assert!(!v("0001").dot(&v("1100")).unwrap());
        assert!(!v("1011").dot(&v("0000")).unwrap());
        assert!(matches!(v("01").dot(&v("011")), Err(Error::WidthMismatch { .. })));
    }

    #[test]
    fn addition_examples() {
        assert_eq!(v("1001").add(&v("1101")).unwrap(), v("0100"));
        assert!(v("1011").add(&v("1011")).unwrap().is_zero());
        let s1 = ["1001", "1101", "1100", "1000"];
        let mut moved: Vec<String> = s1.iter().map(|x| (v(x) ^ v("1001")).to_string()).collect();
        moved.sort();
        assert_eq!(moved, ["0000", "0001", "0100", "0101"]);
        assert!(v("10").add(&v("100")).is_err());
    }

    #[test]
    fn index_map() {
        assert_eq!(index_of(&v("0001")), 1);
        assert_eq!(index_of(&v("1000")), 8);
        assert_eq!(index_of(&v("1111")), 15);
        for i in 0..16 {
            assert_eq!(index_of(&vec_of(i, 4).unwrap()), i);
        }
        assert!(vec_of(16, 4).is_err());
        assert_eq!(vec_of(u64::MAX, 64).unwrap().weight(), 64);
        assert!(v("1000").coordinate(1));
        assert_eq!(BitVec::unit(4, 1).unwrap(), v("1000"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!("10a1".parse::<BitVec>(), Err(Error::InvalidBits(_))));
        assert!(matches!("".parse::<BitVec>(), Err(Error::WidthOutOfRange(0))));
        let long = "0".repeat(65);
        assert!(matches!(long.parse::<BitVec>(), Err(Error::WidthOutOfRange(65))));
        assert!(BitVec::new(4, 16).is_err());
        assert!(BitVec::new(0, 0).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rref(&m(&["0100", "0101", "0001"])).1, 2);
        assert_eq!(rref(&m(&["0110", "0100", "1001", "0111", "1000"])).1, 4);
        assert_eq!(rref(&Gf2Matrix::new(4, vec![]).unwrap()).1, 0);
    }

    #[test]
    fn rref_is_reduced_and_idempotent() {
        let (s, _) = rref(&m(&["1101", "0111", "1010"]));
        assert_eq!(strs(s.basis()), ["1010", "0111"]);
        let again = Subspace::from_rref_basis(4, s.basis().to_vec()).unwrap();
        assert_eq!(again, s);
        assert!(Subspace::from_rref_basis(4, vec![v("1100"), v("0100")]).is_err());
    }

    #[test]
    fn nullspace_examples() {
        let c = nullspace(&m(&["0100", "0101", "0001"]));
        assert_eq!(strs(&c.enumerate(24).unwrap()), ["0000", "0010", "1000", "1010"]);
        assert_eq!(strs(c.basis()), ["1000", "0010"]);
        let c2 = nullspace(&m(&["0110", "0100", "1001", "0111", "1000"]));
        assert_eq!(c2.dimension(), 0);
        let full = nullspace(&Gf2Matrix::new(5, vec![]).unwrap());
        assert_eq!(full.dimension(), 5);
    }

    #[test]
    fn affine_solve_examples() {
        let sys = m(&["1000", "0101", "0001", "0010"]);
        let sol = solve_affine(&sys, &[true, true, false, false]).unwrap();
        assert_eq!(sol, Some(v("1100")));
        let sol = solve_affine(&sys, &[false, true, true, false]).unwrap();
        assert_eq!(sol, Some(v("0001")));
        let sol = solve_affine(&sys, &[false; 4]).unwrap();
        assert_eq!(sol, Some(v("0000")));
        let inconsistent = m(&["1100", "0110", "1010"]);
        assert_eq!(solve_affine(&inconsistent, &[true, false, false]).unwrap(), None);
        assert!(solve_affine(&sys, &[true]).is_err());
    }

    #[test]
    fn enumeration() {
        let s = Subspace::span(4, &[v("0010"), v("1000")]).unwrap();
        assert_eq!(strs(&s.enumerate(24).unwrap()), ["0000", "0010", "1000", "1010"]);
        assert_eq!(strs(&Subspace::zero(4).unwrap().enumerate(24).unwrap()), ["0000"]);
        let full = Subspace::full(10).unwrap();
        let all = full.enumerate(24).unwrap();
        assert_eq!(all.len(), 1024);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(
            full.enumerate(9),
            Err(Error::GuardExceeded {
                guard: Guard::Enumeration,
                ..
            })
        ));
    }

    #[test]
    fn canonical_representatives() {
        let s = Subspace::span(4, &[v("0010"), v("1000")]).unwrap();
        assert_eq!(s.canonical_rep(&v("1011")).unwrap(), v("0001"));
        assert!(s.canonical_rep(&v("1010")).unwrap().is_zero());
        let r = s.canonical_rep(&v("1111")).unwrap();
        assert_eq!(s.canonical_rep(&r).unwrap(), r);
        assert_eq!(
            strs(&s.coset_representatives(24).unwrap()),
            ["0000", "0001", "0100", "0101"]
        );
        let coset = AffineCoset::new(v("1011"), s).unwrap();
        assert_eq!(coset.representative(), v("0001"));
        assert_eq!(strs(&coset.enumerate(24).unwrap()), ["0001", "0011", "1001", "1011"]);
        assert!(coset.contains(&v("0011")).unwrap());
        assert!(!coset.contains(&v("0100")).unwrap());
    }
}

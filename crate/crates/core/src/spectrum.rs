//! The full table of balance sums over every `y`, computed as an unnormalized
//! integer Walsh–Hadamard transform of the multiplicity vector.

use crate::analysis::{BalanceStructure, Limits, Method};
use crate::error::{Error, Guard, Result};
use crate::gf2::{parity, BitVec, Subspace};
use crate::set_model::Weighted;

/// In-place unnormalized fast Walsh–Hadamard transform.
///
/// `out[j] = Σᵢ (-1)^{popcount(i & j)} in[i]`; applying it twice scales by `len`.
pub fn wht_in_place(values: &mut [i64]) -> Result<()> {
    let len = values.len();
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    let mut half = 1;
    while half < len {
        for block in values.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
    Ok(())
}

pub fn wht(values: &[i64]) -> Result<Vec<i64>> {
    let mut out = values.to_vec();
    wht_in_place(&mut out)?;
    Ok(out)
}

/// `(-1)^{x·y}` for `x = vec_of(ix, n)`, `y = vec_of(iy, n)`: the sign of the
/// Hadamard matrix entry at row `ix`, column `iy`.
pub fn hadamard_sign(ix: u64, iy: u64, n: u32) -> Result<i8> {
    let x = BitVec::from_index(ix, n)?;
    let y = BitVec::from_index(iy, n)?;
    Ok(if parity(x.bits(), y.bits()) { -1 } else { 1 })
}

/// `sums[index_of(y)] = Σ m(x)(-1)^{x·y}` for every `y ∈ F₂ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    width: u32,
    total: u64,
    sums: Vec<i64>,
}

impl SpectrumTable {
    pub fn new<W: Weighted + ?Sized>(w: &W, limits: &Limits) -> Result<Self> {
        let width = w.width();
        if width > limits.max_spectrum_n {
            return Err(Error::GuardExceeded {
                guard: Guard::Spectrum,
                value: width as u64,
                limit: limits.max_spectrum_n as u64,
            });
        }
        let mut sums = vec![0i64; 1usize << width];
        for (x, m) in w.weighted() {
            sums[x.index() as usize] = m as i64;
        }
        wht_in_place(&mut sums)?;
        Ok(SpectrumTable {
            width,
            total: w.total(),
            sums,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn sums(&self) -> &[i64] {
        &self.sums
    }

    pub fn sum_at(&self, y: &BitVec) -> i64 {
        self.sums[y.index() as usize]
    }

    /// Groups the zeros of the table into cosets of `C = {y : |sums[y]| = total}`.
    pub fn balance_structure(&self) -> Result<BalanceStructure> {
        let total = self.total;
        let constant_members: Vec<BitVec> = self
            .sums
            .iter()
            .enumerate()
            .filter(|(_, s)| s.unsigned_abs() == total)
            .map(|(i, _)| BitVec::from_index(i as u64, self.width))
            .collect::<Result<_>>()?;
        let constant_space = Subspace::span(self.width, &constant_members)?;
        if constant_space.cardinality() != constant_members.len() as u128 {
            return Err(Error::Inconsistency("constant vectors do not form a subspace".into()));
        }
        let mut reps = Vec::new();
        for (i, &s) in self.sums.iter().enumerate().skip(1) {
            if s != 0 {
                continue;
            }
            let y = BitVec::from_index(i as u64, self.width)?;
            let rep = constant_space.canonical_rep(&y)?;
            if rep == y {
                reps.push(rep);
            } else if self.sum_at(&rep) != 0 {
                return Err(Error::Inconsistency(format!(
                    "{y} balances but its coset representative {rep} does not"
                )));
            }
        }
        let rank = self.width as usize - constant_space.dimension();
        BalanceStructure::new(constant_space, reps, rank, Method::Spectrum)
    }
}

/// `B(·)` and `C(·)` read off the balance-sum spectrum.
pub fn spectrum_analysis<W: Weighted + ?Sized>(w: &W, limits: &Limits) -> Result<BalanceStructure> {
    SpectrumTable::new(w, limits)?.balance_structure()
}

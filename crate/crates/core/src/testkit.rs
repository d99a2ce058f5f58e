//! Witness-family generators and a brute-force oracle.
//!
//! The oracle evaluates the ±1 balance sum at every `y ∈ F₂ⁿ` and assembles
//! `C`, `B` and `b` directly from that table. It shares only [`BitVec`] and the
//! pairing with the rest of the crate; in particular it does not use
//! elimination, nullspaces or the coset sweep.

use std::collections::BTreeSet;

use crate::analysis::{fixing_set, BalanceStructure, Method};
use crate::error::{Error, Guard, Result};
use crate::gf2::{BitVec, Subspace};
use crate::set_model::{BoolMultiset, VectorSet, Weighted};

/// Largest width the oracle accepts.
pub const ORACLE_MAX_N: u32 = 20;

/// SplitMix64: `state += 0x9E3779B97F4A7C15`, then two xor-shift-multiply
/// rounds with `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` by rejection; `bound > 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    pub fn vector(&mut self, width: u32) -> BitVec {
        let bits = if width == 64 {
            self.next_u64()
        } else {
            self.next_u64() & ((1u64 << width) - 1)
        };
        BitVec::new(width, bits).expect("masked")
    }
}

/// `r` linearly independent random vectors of the given width.
pub fn random_independent(rng: &mut SplitMix64, width: u32, r: u32) -> Result<Vec<BitVec>> {
    if r > width {
        return Err(Error::InvalidParams(format!(
            "cannot pick {r} independent vectors in width {width}"
        )));
    }
    let mut chosen: Vec<BitVec> = Vec::with_capacity(r as usize);
    let mut span = Subspace::zero(width)?;
    while chosen.len() < r as usize {
        let v = rng.vector(width);
        if !span.contains(&v)? {
            chosen.push(v);
            span = Subspace::span(width, &chosen)?;
        }
    }
    Ok(chosen)
}

fn units(width: u32, r: u32) -> Result<Vec<BitVec>> {
    (1..=r).map(|i| BitVec::unit(width, i)).collect()
}

fn xor_all(width: u32, vs: &[BitVec]) -> BitVec {
    vs.iter()
        .fold(BitVec::zero(width).expect("valid width"), |acc, &v| acc ^ v)
}

/// An additive map `F₂ⁿ → F₂ᵐ` given by the images of `e₁ … eₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    from: u32,
    to: u32,
    images: Vec<BitVec>,
}

impl LinearMap {
    pub fn new(from: u32, to: u32, images: Vec<BitVec>) -> Result<Self> {
        if images.len() != from as usize {
            return Err(Error::LengthMismatch {
                expected: from as usize,
                found: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|v| v.width() != to) {
            return Err(Error::WidthMismatch {
                expected: to,
                found: bad.width(),
            });
        }
        Ok(LinearMap { from, to, images })
    }

    /// A random invertible map of F₂ⁿ.
    pub fn random_invertible(rng: &mut SplitMix64, n: u32) -> Result<Self> {
        Self::new(n, n, random_independent(rng, n, n)?)
    }

    /// A random injective additive map `F₂ⁿ → F₂ᵐ`, `m ≥ n`.
    pub fn random_embedding(rng: &mut SplitMix64, n: u32, m: u32) -> Result<Self> {
        Self::new(n, m, random_independent(rng, m, n)?)
    }

    pub fn apply(&self, x: &BitVec) -> Result<BitVec> {
        if x.width() != self.from {
            return Err(Error::WidthMismatch {
                expected: self.from,
                found: x.width(),
            });
        }
        let mut out = BitVec::zero(self.to)?;
        for (i, img) in self.images.iter().enumerate() {
            if x.coordinate(i as u32 + 1) {
                out = out ^ *img;
            }
        }
        Ok(out)
    }

    /// Image of a set; errors if the map is not injective on it.
    pub fn apply_set(&self, s: &VectorSet) -> Result<VectorSet> {
        let image = s.iter().map(|x| self.apply(x)).collect::<Result<Vec<_>>>()?;
        VectorSet::new(self.to, image)
    }
}

/// Structured families of test inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// A linear subspace of dimension `r`.
    Subspace {
        r: u32,
    },
    /// A translate of a subspace of dimension `r`.
    Affine {
        r: u32,
    },
    /// `{0} ∪ {s₁ … s_r}` with the `sᵢ` independent.
    Independent {
        r: u32,
    },
    /// `{0, s₁ … s_r, s}` with `s` the sum of `k` of the independent `sᵢ`, `2 ≤ k ≤ r`.
    OneRelation {
        r: u32,
        k: u32,
    },
    /// A union of `classes` distinct cosets of an `f`-dimensional subspace.
    FixedBy {
        f: u32,
        classes: u64,
    },
    RandomSet {
        cardinality: u64,
    },
    RandomMultiset {
        support: u64,
        max_multiplicity: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: u32,
    pub seed: u64,
    /// Use the canonical basis `e₁, e₂, …` instead of random independent vectors.
    pub canonical: bool,
}

impl FamilySpec {
    pub fn new(family: Family, n: u32, seed: u64) -> Self {
        FamilySpec {
            family,
            n,
            seed,
            canonical: false,
        }
    }

    pub fn canonical(mut self) -> Self {
        self.canonical = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Set(VectorSet),
    Multiset(BoolMultiset),
}

impl Generated {
    pub fn into_set(self) -> Option<VectorSet> {
        match self {
            Generated::Set(s) => Some(s),
            Generated::Multiset(_) => None,
        }
    }

    pub fn into_multiset(self) -> Option<BoolMultiset> {
        match self {
            Generated::Multiset(m) => Some(m),
            Generated::Set(_) => None,
        }
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidParams(msg)
}

fn check_params(spec: &FamilySpec) -> Result<()> {
    let n = spec.n;
    BitVec::zero(n)?;
    let space = if n >= 64 { u64::MAX } else { 1u64 << n };
    match spec.family {
        Family::Subspace { r } | Family::Affine { r } | Family::Independent { r } if r > n => {
            Err(invalid(format!("r={r} exceeds n={n}")))
        }
        Family::OneRelation { r, k } if r > n || k < 2 || k > r => Err(invalid(format!(
            "one_relation needs 2 <= k <= r <= n, got k={k}, r={r}, n={n}"
        ))),
        Family::FixedBy { f, classes } => {
            if f > n || classes == 0 || (n - f < 64 && classes > 1u64 << (n - f)) {
                Err(invalid(format!(
                    "fixed_by needs f <= n and 1 <= classes <= 2^(n-f), got f={f}, classes={classes}"
                )))
            } else {
                Ok(())
            }
        }
        Family::RandomSet { cardinality } if cardinality == 0 || (n < 64 && cardinality > space) => {
            Err(invalid(format!("cardinality {cardinality} impossible in width {n}")))
        }
        Family::RandomMultiset {
            support,
            max_multiplicity,
        } if support == 0 || (n < 64 && support > space) || max_multiplicity == 0 => Err(invalid(format!(
            "multiset needs 1 <= support <= 2^n and max_multiplicity >= 1, got {support}, {max_multiplicity}"
        ))),
        _ => Ok(()),
    }
}

fn distinct_vectors(rng: &mut SplitMix64, width: u32, count: u64) -> BTreeSet<BitVec> {
    let mut out = BTreeSet::new();
    while (out.len() as u64) < count {
        out.insert(rng.vector(width));
    }
    out
}

/// Deterministic generation of one member of a family; the family's defining
/// predicate is verified before returning.
pub fn generate(spec: &FamilySpec) -> Result<Generated> {
    check_params(spec)?;
    let n = spec.n;
    let mut rng = SplitMix64::new(spec.seed);
    let basis = |rng: &mut SplitMix64, r: u32| -> Result<Vec<BitVec>> {
        if spec.canonical {
            units(n, r)
        } else {
            random_independent(rng, n, r)
        }
    };

    let out = match spec.family {
        Family::Subspace { r } => {
            let b = basis(&mut rng, r)?;
            Generated::Set(VectorSet::new(n, Subspace::span(n, &b)?.enumerate(r)?)?)
        }
        Family::Affine { r } => {
            let b = basis(&mut rng, r)?;
            let offset = if spec.canonical {
                if r < n {
                    BitVec::unit(n, n)?
                } else {
                    BitVec::zero(n)?
                }
            } else {
                rng.vector(n)
            };
            let space = VectorSet::new(n, Subspace::span(n, &b)?.enumerate(r)?)?;
            Generated::Set(space.translate(&offset)?)
        }
        Family::Independent { r } => {
            let mut members = basis(&mut rng, r)?;
            members.push(BitVec::zero(n)?);
            Generated::Set(VectorSet::new(n, members)?)
        }
        Family::OneRelation { r, k } => {
            let mut members = basis(&mut rng, r)?;
            let relation = if spec.canonical {
                xor_all(n, &members[..k as usize])
            } else {
                let mut idx: Vec<usize> = (0..r as usize).collect();
                for i in (1..idx.len()).rev() {
                    let j = rng.below(i as u64 + 1) as usize;
                    idx.swap(i, j);
                }
                let picked: Vec<BitVec> = idx[..k as usize].iter().map(|&i| members[i]).collect();
                xor_all(n, &picked)
            };
            members.push(relation);
            members.push(BitVec::zero(n)?);
            Generated::Set(VectorSet::new(n, members)?)
        }
        Family::FixedBy { f, classes } => {
            let fixing = Subspace::span(n, &basis(&mut rng, f)?)?;
            let fixing_members = fixing.enumerate(f)?;
            let mut reps = BTreeSet::new();
            while (reps.len() as u64) < classes {
                reps.insert(fixing.canonical_rep(&rng.vector(n))?);
            }
            let members = reps
                .iter()
                .flat_map(|&r| fixing_members.iter().map(move |&c| c ^ r))
                .collect();
            Generated::Set(VectorSet::new(n, members)?)
        }
        Family::RandomSet { cardinality } => {
            let members = distinct_vectors(&mut rng, n, cardinality);
            Generated::Set(VectorSet::new(n, members.into_iter().collect())?)
        }
        Family::RandomMultiset {
            support,
            max_multiplicity,
        } => {
            let members = distinct_vectors(&mut rng, n, support);
            let pairs: Vec<(BitVec, u64)> = members
                .into_iter()
                .map(|x| (x, rng.range(1, max_multiplicity)))
                .collect();
            Generated::Multiset(BoolMultiset::from_pairs(n, pairs)?)
        }
    };
    verify_family(spec, &out)?;
    Ok(out)
}

fn verify_family(spec: &FamilySpec, out: &Generated) -> Result<()> {
    let ok = match (spec.family, out) {
        (Family::Subspace { r }, Generated::Set(s)) => s.is_vector_space() && s.rank() == r as usize,
        (Family::Affine { r }, Generated::Set(s)) => s.is_affine() && s.rank() == r as usize,
        (Family::Independent { r }, Generated::Set(s)) => {
            s.first().is_zero() && s.len() == r as usize + 1 && s.rank() == r as usize
        }
        (Family::OneRelation { r, .. }, Generated::Set(s)) => {
            s.first().is_zero() && s.len() == r as usize + 2 && s.rank() == r as usize
        }
        (Family::FixedBy { f, classes }, Generated::Set(s)) => {
            s.len() as u128 == (classes as u128) << f && fixing_set(s).dimension() >= f as usize
        }
        (Family::RandomSet { cardinality }, Generated::Set(s)) => s.len() as u64 == cardinality,
        (
            Family::RandomMultiset {
                support,
                max_multiplicity,
            },
            Generated::Multiset(m),
        ) => m.support().len() as u64 == support && m.entries().all(|(_, c)| c >= 1 && c <= max_multiplicity),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Inconsistency(format!(
            "generated output violates {:?}",
            spec.family
        )))
    }
}

/// The normalized one-relation witness `{0, e₁ … e_r, 1^k 0^{r-k}}` in F₂^r.
/// For `k = 1` the relation coincides with `e₁` and the set has `r + 1` members.
pub fn one_relation_witness(r: u32, k: u32) -> Result<VectorSet> {
    if k == 0 || k > r {
        return Err(invalid(format!("need 1 <= k <= r, got k={k}, r={r}")));
    }
    let mut members = units(r, r)?;
    members.push(xor_all(r, &members[..k as usize]));
    members.push(BitVec::zero(r)?);
    VectorSet::from_iter_dedup(r, members)
}

/// `{0, e₁ … e_r}` in F₂ⁿ.
pub fn independent_witness(r: u32, n: u32) -> Result<VectorSet> {
    match generate(&FamilySpec::new(Family::Independent { r }, n, 0).canonical())? {
        Generated::Set(s) => Ok(s),
        Generated::Multiset(_) => unreachable!(),
    }
}

/// Balance structure by evaluating the balance sum at every `y`.
pub fn oracle_analyze<W: Weighted + ?Sized>(w: &W) -> Result<BalanceStructure> {
    let n = w.width();
    if n > ORACLE_MAX_N {
        return Err(Error::GuardExceeded {
            guard: Guard::Oracle,
            value: n as u64,
            limit: ORACLE_MAX_N as u64,
        });
    }
    let terms: Vec<(BitVec, i64)> = w.weighted().map(|(x, m)| (x, m as i64)).collect();
    let total = w.total() as i64;
    let size = 1usize << n;
    let sums: Vec<i64> = (0..size as u64)
        .map(|i| {
            let y = BitVec::new(n, i).expect("in range");
            terms
                .iter()
                .map(|(x, m)| if x.dot(&y).expect("same width") { -m } else { *m })
                .sum()
        })
        .collect();

    let constant: Vec<u64> = (0..size as u64).filter(|&i| sums[i as usize].abs() == total).collect();

    // Reduced echelon basis of a subspace listed in full: the pivots are the
    // leading bits that occur, and the row for a pivot is the smallest member
    // with that leading bit.
    let mut rows: Vec<(u32, u64)> = Vec::new();
    for &c in constant.iter().skip(1) {
        let lead = 63 - c.leading_zeros();
        match rows.iter_mut().find(|(p, _)| *p == lead) {
            Some((_, row)) => *row = (*row).min(c),
            None => rows.push((lead, c)),
        }
    }
    rows.sort_by_key(|&(pivot, _)| std::cmp::Reverse(pivot));
    if constant.len() != 1usize << rows.len() {
        return Err(Error::Inconsistency(format!(
            "{} constant vectors cannot form a subspace with {} pivots",
            constant.len(),
            rows.len()
        )));
    }
    let basis = rows
        .into_iter()
        .map(|(_, row)| BitVec::new(n, row))
        .collect::<Result<Vec<_>>>()?;
    let constant_space = Subspace::from_rref_basis(n, basis)?;

    // Walk the zeros upward; the first unvisited zero of each coset is its
    // smallest member, which is the representative with zero pivot coordinates.
    let mut visited = vec![false; size];
    let mut reps = Vec::new();
    for y in 1..size {
        if sums[y] != 0 || visited[y] {
            continue;
        }
        for &c in &constant {
            let z = y ^ c as usize;
            if sums[z] != 0 {
                return Err(Error::Inconsistency(format!(
                    "balancing vector {} shifted by constant vector {} is not balancing",
                    BitVec::new(n, y as u64)?,
                    BitVec::new(n, c)?
                )));
            }
            visited[z] = true;
        }
        reps.push(BitVec::new(n, y as u64)?);
    }
    let rank = n as usize - constant_space.dimension();
    BalanceStructure::new(constant_space, reps, rank, Method::Oracle)
}

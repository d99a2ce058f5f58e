//! Closed-form balancing numbers for structured families: subspaces,
//! independent sets, sets with a single linear relation, and sets with a
//! nontrivial fixing space.

use crate::error::{Error, Result};
use crate::set_model::VectorSet;

/// `binom(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> u128 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    (0..b).fold(1u128, |acc, i| acc * (a - i) / (i + 1))
}

/// `b(S) = 2^r - 1` for a vector or affine space of dimension `r`.
pub fn predict_subspace(r: u32) -> u64 {
    assert!(r < 64, "rank {r} exceeds 63");
    (1u64 << r) - 1
}

/// `(b(S), #B(S))` for `S = {0} ∪ (r independent vectors)` in F₂ⁿ.
///
/// Odd `r`: `b = binom(r, (r+1)/2)` and `#B = b · 2^{n-r}`; even `r`: `(0, 0)`.
pub fn predict_independent(r: u32, n: u32) -> Result<(u64, u128)> {
    if r > n || n > 64 {
        return Err(Error::InvalidParams(format!("need r <= n <= 64, got r={r}, n={n}")));
    }
    if r.is_multiple_of(2) {
        return Ok((0, 0));
    }
    let b = binomial(r as i64, (r as i64 + 1) / 2);
    Ok((b as u64, b << (n - r)))
}

/// Parameters of a set `{0, s₁, …, s_r, s}` with `s = Σ αᵢsᵢ` of weight `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneRelationParams {
    pub r: u32,
    pub k: u32,
}

impl OneRelationParams {
    pub fn new(r: u32, k: u32) -> Result<Self> {
        if r == 0 || r % 2 == 1 {
            return Err(Error::InvalidParams(format!("r must be even and positive, got {r}")));
        }
        if k == 0 || k > r {
            return Err(Error::InvalidParams(format!("need 1 <= k <= r, got k={k}, r={r}")));
        }
        Ok(OneRelationParams { r, k })
    }
}

/// `e(x) = (1 + (-1)^x) / 2`: one for even `x`, zero for odd.
fn parity_indicator(x: i64) -> i64 {
    if x.rem_euclid(2) == 0 {
        1
    } else {
        0
    }
}

/// Summation range `(φ₁(k), φ₂(k))` over the number `i` of ones that a
/// balancing vector puts on the support of the relation.
fn summation_range(r: i64, k: i64) -> (i64, i64) {
    let half = r / 2;
    if k < half {
        (0, k)
    } else if k == half {
        (1, k)
    } else {
        (k - half + parity_indicator(k - half), half + parity_indicator(half + 1))
    }
}

/// The one-relation count exactly as the closed form states it:
/// `Σ_{i=φ₁}^{φ₂} binom(k, i) · binom(r-k, r/2 + e(i) - i)`, or zero when `φ₁ > φ₂`.
///
/// For `k = 1` the relation `s = s₁` duplicates a member, the set has `r + 1`
/// (odd) elements, and this expression no longer counts anything; use
/// [`predict_one_relation`] for the value that matches direct computation.
pub fn one_relation_formula(p: OneRelationParams) -> u64 {
    let (r, k) = (p.r as i64, p.k as i64);
    let (lo, hi) = summation_range(r, k);
    if lo > hi {
        return 0;
    }
    (lo..=hi)
        .map(|i| binomial(k, i) * binomial(r - k, r / 2 + parity_indicator(i) - i))
        .sum::<u128>() as u64
}

/// `b(S)` for `S = {0, s₁, …, s_r, s}` with `s` of weight `k` in the `sᵢ`.
///
/// `k = 1` collapses the witness to `{0, s₁, …, s_r}`, which has odd
/// cardinality and therefore `b = 0`.
pub fn predict_one_relation(p: OneRelationParams) -> u64 {
    if p.k == 1 {
        0
    } else {
        one_relation_formula(p)
    }
}

/// The contribution `2^{r-f}(2^f - 1)` of `F₂ⁿ ∖ H` to `b(S)` when `dim F(S) = f`.
///
/// This is all of `b(S)` when `#S` is not a multiple of `2^{f+1}`; otherwise
/// add `b(S_F)`.
pub fn predict_fixing(r: u32, f: u32) -> Result<u64> {
    if f > r || r > 63 {
        return Err(Error::InvalidParams(format!("need f <= r <= 63, got f={f}, r={r}")));
    }
    Ok((1u64 << (r - f)) * ((1u64 << f) - 1))
}

/// `r` when some translate of `S` is `{0} ∪ (r independent vectors)`.
pub fn detect_independent(s: &VectorSet) -> Option<u32> {
    let r = s.rank();
    (s.len() == r + 1).then_some(r as u32)
}

/// `(r, k)` when some translate of `S` is `{0, s₁, …, s_r, s}` with the `sᵢ`
/// independent and `s` the sum of `k` of them, and `r` is even.
pub fn detect_one_relation(s: &VectorSet) -> Option<OneRelationParams> {
    let r = s.rank();
    if s.len() != r + 2 || r == 0 || r % 2 == 1 {
        return None;
    }
    // Eliminate while tracking which members were combined; the first
    // dependency found is the unique relation.
    let shifted = s.normalized();
    let mut rows: Vec<(u32, u64, u64)> = Vec::new();
    for (i, x) in shifted.iter().filter(|x| !x.is_zero()).enumerate() {
        let (mut v, mut mask) = (x.bits(), 1u64 << i);
        for &(pivot, rv, rm) in &rows {
            if v >> pivot & 1 == 1 {
                v ^= rv;
                mask ^= rm;
            }
        }
        if v == 0 {
            return OneRelationParams::new(r as u32, mask.count_ones() - 1).ok();
        }
        rows.push((63 - v.leading_zeros(), v, mask));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(24, 12), 2_704_156);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn subspace_predictions() {
        assert_eq!(predict_subspace(2), 3);
        assert_eq!(predict_subspace(0), 0);
        assert_eq!(predict_subspace(4), 15);
    }

    #[test]
    fn independent_predictions() {
        assert_eq!(predict_independent(3, 4).unwrap(), (3, 6));
        assert_eq!(predict_independent(2, 7).unwrap(), (0, 0));
        assert_eq!(predict_independent(5, 8).unwrap(), (10, 80));
        assert!(predict_independent(5, 4).is_err());
    }

    #[test]
    fn one_relation_small_cases() {
        // {0, e1, e2, e1+e2} is F₂²
        assert_eq!(predict_one_relation(OneRelationParams::new(2, 2).unwrap()), 3);
        assert_eq!(one_relation_formula(OneRelationParams::new(2, 1).unwrap()), 1);
        assert_eq!(predict_one_relation(OneRelationParams::new(2, 1).unwrap()), 0);
        assert!(OneRelationParams::new(3, 1).is_err());
        assert!(OneRelationParams::new(4, 5).is_err());
        assert!(OneRelationParams::new(4, 0).is_err());
    }

    #[test]
    fn summation_bounds_follow_parity() {
        // k > r/2: lower bound is bumped to odd, upper to r/2+1 only when that is even
        assert_eq!(summation_range(8, 6), (3, 4));
        assert_eq!(summation_range(8, 7), (3, 4));
        assert_eq!(summation_range(6, 5), (3, 4));
        assert_eq!(summation_range(6, 6), (3, 4));
        assert_eq!(summation_range(4, 4), (3, 2));
    }

    #[test]
    fn family_detection() {
        let s3 = VectorSet::from_strs(&["0000", "1000", "0100", "0010"]).unwrap();
        assert_eq!(detect_independent(&s3), Some(3));
        assert_eq!(detect_one_relation(&s3), None);
        // translate of {0, e1, e2, e3, e4, e1+e2+e3}
        let shift: crate::gf2::BitVec = "0110".parse().unwrap();
        let s = VectorSet::from_strs(&["0000", "1000", "0100", "0010", "0001", "1110"]).unwrap();
        let p = detect_one_relation(&s).unwrap();
        assert_eq!((p.r, p.k), (4, 3));
        // the weight depends on the translate, the predicted count does not
        let q = detect_one_relation(&s.translate(&shift).unwrap()).unwrap();
        assert_eq!((q.r, q.k), (4, 2));
        assert_eq!(predict_one_relation(p), predict_one_relation(q));
        assert_eq!(detect_independent(&s), None);
    }

    #[test]
    fn fixing_predictions() {
        assert_eq!(predict_fixing(4, 1).unwrap() + 3, 11);
        assert_eq!(predict_fixing(5, 0).unwrap(), 0);
        assert_eq!(predict_fixing(3, 3).unwrap(), predict_subspace(3));
        assert!(predict_fixing(2, 3).is_err());
    }
}

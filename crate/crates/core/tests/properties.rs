use f2bal::gf2::{nullspace, rref, solve_affine};
use f2bal::spectrum::wht;
use f2bal::testkit::{oracle_analyze, LinearMap, SplitMix64};
use f2bal::{
    analyze, balance_sum, balancing_set, balancing_set_m, balancing_via_quotient, constant_set, fixing_set,
    is_balanced, spectrum_analysis, BitVec, BoolMultiset, Gf2Matrix, Limits, MethodChoice, Subspace, VectorSet,
};
use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

fn vector(n: u32) -> impl Strategy<Value = BitVec> {
    (0..1u64 << n).prop_map(move |i| BitVec::from_index(i, n).unwrap())
}

fn vectors(n: u32, max: usize) -> impl Strategy<Value = Vec<BitVec>> {
    vec(vector(n), 0..=max)
}

fn set_in(n: u32) -> impl Strategy<Value = VectorSet> {
    let max = (1usize << n).min(40);
    btree_set(0..1u64 << n, 1..=max).prop_map(move |ix| {
        VectorSet::new(n, ix.into_iter().map(|i| BitVec::from_index(i, n).unwrap()).collect()).unwrap()
    })
}

fn any_set() -> impl Strategy<Value = VectorSet> {
    (1u32..=8).prop_flat_map(set_in)
}

fn any_multiset() -> impl Strategy<Value = BoolMultiset> {
    (1u32..=7).prop_flat_map(|n| {
        vec((0..1u64 << n, 1u64..=5), 1..=24).prop_map(move |pairs| {
            BoolMultiset::from_pairs(
                n,
                pairs.into_iter().map(|(i, m)| (BitVec::from_index(i, n).unwrap(), m)),
            )
            .unwrap()
        })
    })
}

fn lim() -> Limits {
    Limits::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pairing_is_bilinear_and_symmetric(n in 1u32..=64, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let (x, y, z) = (
            BitVec::new(n, a & mask).unwrap(),
            BitVec::new(n, b & mask).unwrap(),
            BitVec::new(n, c & mask).unwrap(),
        );
        prop_assert_eq!(x.dot(&y).unwrap(), y.dot(&x).unwrap());
        prop_assert_eq!((x ^ y).dot(&z).unwrap(), x.dot(&z).unwrap() ^ y.dot(&z).unwrap());
        prop_assert_eq!(x.to_string().parse::<BitVec>().unwrap(), x);
    }

    #[test]
    fn rank_nullity((n, rows) in (1u32..=16).prop_flat_map(|n| (Just(n), vectors(n, 20)))) {
        let m = Gf2Matrix::new(n, rows.clone()).unwrap();
        let (row_space, rank) = rref(&m);
        let kernel = nullspace(&m);
        prop_assert_eq!(rank + kernel.dimension(), n as usize);
        prop_assert_eq!(row_space.dimension(), rank);
        for k in kernel.basis() {
            for r in &rows {
                prop_assert!(!r.dot(k).unwrap());
            }
        }
        // the echelon form of an echelon basis is itself
        let again = rref(&Gf2Matrix::new(n, row_space.basis().to_vec()).unwrap()).0;
        prop_assert_eq!(again, row_space);
    }

    #[test]
    fn double_annihilator((n, gens) in (1u32..=16).prop_flat_map(|n| (Just(n), vectors(n, 10)))) {
        let s = Subspace::span(n, &gens).unwrap();
        let ann = s.annihilator();
        prop_assert_eq!(ann.dimension() + s.dimension(), n as usize);
        prop_assert_eq!(ann.annihilator(), s);
    }

    #[test]
    fn canonical_rep_is_a_projection(
        (n, gens, x, y) in (1u32..=16).prop_flat_map(|n| (Just(n), vectors(n, 8), vector(n), vector(n)))
    ) {
        let s = Subspace::span(n, &gens).unwrap();
        let rx = s.canonical_rep(&x).unwrap();
        prop_assert!(s.contains(&(rx ^ x)).unwrap());
        prop_assert_eq!(s.canonical_rep(&rx).unwrap(), rx);
        prop_assert_eq!(s.canonical_rep(&(x ^ y)).unwrap(), rx ^ s.canonical_rep(&y).unwrap());
        for p in s.pivots() {
            prop_assert!(!rx.coordinate(p));
        }
    }

    #[test]
    fn solve_affine_solutions_satisfy_system(
        (n, rows, target) in (1u32..=12).prop_flat_map(|n| (Just(n), vectors(n, 10), vector(n)))
    ) {
        let m = Gf2Matrix::new(n, rows.clone()).unwrap();
        let rhs: Vec<bool> = rows.iter().map(|r| r.dot(&target).unwrap()).collect();
        let y = solve_affine(&m, &rhs).unwrap().expect("consistent by construction");
        for (r, b) in rows.iter().zip(&rhs) {
            prop_assert_eq!(r.dot(&y).unwrap(), *b);
        }
        prop_assert!(nullspace(&m).contains(&(y ^ target)).unwrap());
    }

    #[test]
    fn constant_set_has_complementary_dimension(s in any_set()) {
        let c = constant_set(&s);
        prop_assert_eq!(c.dimension() + s.rank(), s.width() as usize);
        let total = s.len() as i64;
        for y in c.enumerate(8).unwrap() {
            prop_assert_eq!(balance_sum(&s, &y).unwrap().abs(), total);
        }
    }

    #[test]
    fn cosets_are_saturated(s in any_set()) {
        let b = balancing_set(&s, &lim()).unwrap();
        for coset in b.cosets() {
            for y in coset.enumerate(8).unwrap() {
                prop_assert!(is_balanced(&s, &y).unwrap());
            }
        }
        prop_assert_eq!(b.balancing_cardinality(), b.balancing_number() as u128 * b.constant_space().cardinality());
        prop_assert!(b.balancing_number() < 1u64 << b.rank());
    }

    #[test]
    fn methods_agree_with_oracle(s in any_set()) {
        let oracle = oracle_analyze(&s).unwrap();
        prop_assert!(balancing_set(&s, &lim()).unwrap().agrees_with(&oracle));
        prop_assert!(balancing_via_quotient(&s, &lim()).unwrap().agrees_with(&oracle));
        prop_assert!(spectrum_analysis(&s, &lim()).unwrap().agrees_with(&oracle));
        prop_assert!(analyze(&s, MethodChoice::Auto, &lim()).unwrap().agrees_with(&oracle));
    }

    #[test]
    fn multiset_methods_agree_with_oracle(m in any_multiset()) {
        let oracle = oracle_analyze(&m).unwrap();
        prop_assert!(balancing_set_m(&m, &lim()).unwrap().agrees_with(&oracle));
        prop_assert!(spectrum_analysis(&m, &lim()).unwrap().agrees_with(&oracle));
        if m.total() % 2 == 1 {
            prop_assert_eq!(oracle.balancing_number(), 0);
        }
    }

    #[test]
    fn translation_invariance((s, shift) in (1u32..=8).prop_flat_map(|n| (set_in(n), vector(n)))) {
        let a = balancing_set(&s, &lim()).unwrap();
        let b = balancing_set(&s.translate(&shift).unwrap(), &lim()).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(fixing_set(&s), fixing_set(&s.translate(&shift).unwrap()));
    }

    #[test]
    fn isomorphism_and_embedding_invariance(s in any_set(), seed in any::<u64>(), extra in 1u32..=4) {
        let n = s.width();
        let mut rng = SplitMix64::new(seed);
        let b = balancing_set(&s, &lim()).unwrap().balancing_number();
        let phi = LinearMap::random_invertible(&mut rng, n).unwrap();
        prop_assert_eq!(balancing_set(&phi.apply_set(&s).unwrap(), &lim()).unwrap().balancing_number(), b);
        let emb = LinearMap::random_embedding(&mut rng, n, n + extra).unwrap();
        prop_assert_eq!(balancing_set(&emb.apply_set(&s).unwrap(), &lim()).unwrap().balancing_number(), b);
    }

    #[test]
    fn odd_sets_balance_nothing(s in any_set()) {
        if s.len() % 2 == 1 {
            prop_assert_eq!(balancing_set(&s, &lim()).unwrap().balancing_number(), 0);
        }
    }

    #[test]
    fn complement_balances_the_same_vectors(s in (1u32..=6).prop_flat_map(set_in)) {
        let n = s.width();
        if s.len() < 1usize << n {
            let rest: Vec<BitVec> = (0..1u64 << n)
                .map(|i| BitVec::from_index(i, n).unwrap())
                .filter(|x| !s.contains(x))
                .collect();
            let complement = VectorSet::new(n, rest).unwrap();
            for y in (1..1u64 << n).map(|i| BitVec::from_index(i, n).unwrap()) {
                prop_assert_eq!(balance_sum(&complement, &y).unwrap(), -balance_sum(&s, &y).unwrap());
            }
        }
    }

    #[test]
    fn fixing_set_fixes(s in any_set()) {
        let f = fixing_set(&s);
        for x in f.enumerate(8).unwrap() {
            prop_assert_eq!(s.translate(&x).unwrap(), s.clone());
        }
        prop_assert_eq!(s.len() % (1usize << f.dimension()), 0);
    }

    #[test]
    fn transform_laws(values in (0u32..=10).prop_flat_map(|n| vec(-1000i64..=1000, 1usize << n))) {
        let len = values.len() as i64;
        let once = wht(&values).unwrap();
        let twice = wht(&once).unwrap();
        prop_assert!(twice.iter().zip(&values).all(|(t, x)| *t == len * x));
        let e_in: i128 = values.iter().map(|&x| (x as i128).pow(2)).sum();
        let e_out: i128 = once.iter().map(|&x| (x as i128).pow(2)).sum();
        prop_assert_eq!(e_out, len as i128 * e_in);
    }

    #[test]
    fn spectrum_is_constant_only_on_c(s in any_set()) {
        let table = f2bal::SpectrumTable::new(&s, &lim()).unwrap();
        prop_assert_eq!(table.sums()[0], s.len() as i64);
        let c = constant_set(&s);
        for (i, &sum) in table.sums().iter().enumerate() {
            let y = BitVec::from_index(i as u64, s.width()).unwrap();
            prop_assert_eq!(sum.unsigned_abs() == s.len() as u64, c.contains(&y).unwrap());
        }
    }
}

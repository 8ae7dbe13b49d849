use proptest::prelude::*;
use relcoh_core::groebner::groebner_basis;
use relcoh_core::local_cohomology::{cd_monomial, pattern_complex, SignPattern};
use relcoh_core::module::free_resolution;
use relcoh_core::relcm::{grade, grade_search, ModulePresentation, SearchConfig};
use relcoh_core::simplicial::projective_dimension;
use relcoh_core::{radical_equal, Cd, Field, Ideal, Monomial, MonomialIdeal, MonomialOrder, Polynomial, Ring};

fn ring(n: usize) -> Ring {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    Ring::new(&names, Field::Rationals, MonomialOrder::GrevLex).unwrap()
}

fn poly(r: &Ring, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    let f = r.field();
    Polynomial::from_terms(
        r.nvars(),
        terms
            .iter()
            .map(|(e, c)| (Monomial::new(e.clone()), f.from_i64(*c)))
            .collect(),
    )
}

fn term(n: usize) -> impl Strategy<Value = (Vec<u32>, i64)> {
    (prop::collection::vec(0u32..3, n), -3i64..=3).prop_filter("nonzero", |(_, c)| *c != 0)
}

fn polys(n: usize, count: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Vec<(Vec<u32>, i64)>>> {
    prop::collection::vec(prop::collection::vec(term(n), 1..4), count)
}

fn squarefree(n: usize, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(1u32..(1 << n), 1..=max_gens).prop_map(move |m| MonomialIdeal::from_masks(n, &m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduced_basis_ignores_generator_order(raw in polys(3, 1..4), seed in any::<u64>()) {
        let r = ring(3);
        let gens: Vec<Polynomial> = raw.iter().map(|t| poly(&r, t)).collect();
        let mut shuffled = gens.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        if seed & 1 == 1 {
            shuffled.reverse();
        }
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            prop_assert_eq!(groebner_basis(&gens, order), groebner_basis(&shuffled, order));
        }
    }

    #[test]
    fn radical_equality_is_an_equivalence(raw in polys(3, 1..3)) {
        let r = ring(3);
        let gens: Vec<Polynomial> = raw.iter().map(|t| poly(&r, t)).collect();
        let i = Ideal::new(&r, gens.clone());
        let squares = Ideal::new(&r, gens.iter().map(|g| g.mul(g)).collect());
        let products = Ideal::new(
            &r,
            gens.iter().flat_map(|g| gens.iter().map(move |h| g.mul(h))).collect(),
        );
        prop_assert!(radical_equal(&i, &i));
        prop_assert!(radical_equal(&i, &squares));
        prop_assert!(radical_equal(&squares, &i));
        prop_assert!(radical_equal(&squares, &products));
        prop_assert!(radical_equal(&i, &products));
    }

    #[test]
    fn quotient_contains_the_ideal(raw in polys(3, 1..3), f in prop::collection::vec(term(3), 1..3)) {
        let r = ring(3);
        let i = Ideal::new(&r, raw.iter().map(|t| poly(&r, t)).collect());
        let f = poly(&r, &f);
        prop_assume!(!f.is_zero());
        let q = i.quotient(&f);
        prop_assert!(q.contains_ideal(&i));
        for g in q.generators() {
            prop_assert!(i.contains(&g.mul(&f)));
        }
    }

    #[test]
    fn alexander_dual_is_an_involution(i in squarefree(5, 6)) {
        prop_assert_eq!(i.alexander_dual().alexander_dual(), i);
    }

    #[test]
    fn pattern_complexes_square_to_zero(
        a in squarefree(4, 5),
        b in prop::collection::vec(1u32..16, 0..3),
        neg in 0u32..16,
        pos in 0u32..16,
    ) {
        let b = MonomialIdeal::from_masks(4, &b);
        let p = SignPattern::new(4, neg, pos & !neg);
        let cx = pattern_complex(a.generators(), &b, p).unwrap();
        prop_assert!(cx.d_squared_zero());
    }

    #[test]
    fn cd_equals_projective_dimension(a in squarefree(4, 5)) {
        prop_assume!(!a.is_unit());
        let cd = cd_monomial(&a, &MonomialIdeal::zero(4), Field::Rationals).unwrap();
        let pd = projective_dimension(&a, Field::Rationals).unwrap();
        prop_assert_eq!(cd, Cd::Finite(pd));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn resolutions_compose_to_zero(a in squarefree(4, 4)) {
        let r = ring(4);
        let res = free_resolution(&a.to_ideal(&r), 6).unwrap();
        prop_assert!(res.composes_to_zero());
        prop_assert!(res.minimal);
        let pd = projective_dimension(&a, Field::Rationals).unwrap();
        prop_assert_eq!(res.length(), pd);
    }

    #[test]
    fn koszul_grade_matches_regular_element_search(a in squarefree(4, 4), c in squarefree(4, 2)) {
        let r = ring(4);
        let mp = ModulePresentation::new(a.to_ideal(&r), c.to_ideal(&r)).unwrap();
        prop_assume!(!mp.is_degenerate());
        let search = grade_search(&mp, &SearchConfig::default()).unwrap();
        if search.certified {
            prop_assert_eq!(grade(&mp).unwrap(), search.sequence.len());
        }
    }
}

//! Randomized structural laws: ring axioms for the coefficient polynomials,
//! intersection and pushforward identities on generated cycles, Pontryagin
//! identities on generated Jacobian classes, and text round-trips.

use std::collections::BTreeMap;

use cyc::cycle::{
    corr_compose, degree, exterior, intersect, pull_proj, push_proj, Block, CycleExpr, Monomial,
    Sym,
};
use cyc::dsl::parse_cycle;
use cyc::jacobian::{mult_push, pont_mul, JacAtom, JacExpr};
use cyc::poly::Poly;
use proptest::prelude::*;

fn arb_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(((-4i64..=4), (0u32..=2), (0u32..=2), (0u32..=1)), 1..=3).prop_map(
        |monomials| {
            let mut p = Poly::int(0);
            for (c, ga, d1a, d2a) in monomials {
                let m = Poly::int(c)
                    .mul(&Poly::g().pow(ga))
                    .mul(&Poly::d(1).pow(d1a))
                    .mul(&Poly::d(2).pow(d2a));
                p = p.add(&m);
            }
            p
        },
    )
}

fn arb_dec() -> impl Strategy<Value = Option<Sym>> {
    prop_oneof![
        Just(None),
        Just(Some(Sym::E)),
        Just(Some(Sym::K)),
        Just(Some(Sym::Z(1))),
    ]
}

fn arb_point_dec() -> impl Strategy<Value = Option<Sym>> {
    prop_oneof![Just(Some(Sym::E)), Just(Some(Sym::K)), Just(Some(Sym::Z(1)))]
}

fn cycle_from_parts(
    n: u32,
    terms: Vec<(Vec<u32>, Vec<Option<Sym>>, i64)>,
) -> CycleExpr {
    let mut w = CycleExpr::zero(n);
    for (buckets, decs, coeff) in terms {
        let mut grouped: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for (i, b) in buckets.iter().enumerate() {
            grouped.entry(*b).or_default().push(i as u32 + 1);
        }
        let blocks: Vec<Block> = grouped
            .into_values()
            .zip(decs)
            .map(|(indices, dec)| Block::new(indices, dec))
            .collect();
        w.add_term(Monomial::new(blocks), Poly::int(coeff));
    }
    w
}

fn arb_cycle(n: u32) -> impl Strategy<Value = CycleExpr> {
    let term = (
        proptest::collection::vec(0..n, n as usize),
        proptest::collection::vec(arb_dec(), n as usize),
        -3i64..=3,
    );
    proptest::collection::vec(term, 1..=3).prop_map(move |terms| cycle_from_parts(n, terms))
}

fn arb_zero_dim_cycle(n: u32) -> impl Strategy<Value = CycleExpr> {
    let term = (
        proptest::collection::vec(0..n, n as usize),
        proptest::collection::vec(arb_point_dec(), n as usize),
        -3i64..=3,
    );
    proptest::collection::vec(term, 1..=3).prop_map(move |terms| cycle_from_parts(n, terms))
}

fn arb_jac(g: i64) -> impl Strategy<Value = JacExpr> {
    let atom = prop_oneof![
        (0..g as u32).prop_map(JacAtom::Cls),
        (2..=g as u32).prop_map(JacAtom::Del),
        (1..=g as u32).prop_map(JacAtom::Kap),
        (1..=g as u32).prop_map(|s| JacAtom::ZPush(1, s)),
    ];
    let word = proptest::collection::vec(atom, 0..=2);
    proptest::collection::vec((word, -3i64..=3), 1..=3).prop_map(move |terms| {
        let mut x = JacExpr::zero(g);
        for (w, c) in terms {
            x.add_term(w, Poly::int(c));
        }
        x
    })
}

proptest! {
    #[test]
    fn poly_ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn genus_substitution_is_a_ring_map(a in arb_poly(), b in arb_poly()) {
        let g = 7;
        prop_assert_eq!(a.add(&b).subst_genus(g), a.subst_genus(g).add(&b.subst_genus(g)));
        prop_assert_eq!(a.mul(&b).subst_genus(g), a.subst_genus(g).mul(&b.subst_genus(g)));
    }

    #[test]
    fn intersection_commutes(
        (a, b) in (1..=3u32).prop_flat_map(|n| (arb_cycle(n), arb_cycle(n)))
    ) {
        prop_assert_eq!(intersect(&a, &b).unwrap(), intersect(&b, &a).unwrap());
    }

    #[test]
    fn intersection_associates(
        (a, b, c) in (1..=3u32).prop_flat_map(|n| (arb_cycle(n), arb_cycle(n), arb_cycle(n)))
    ) {
        let left = intersect(&intersect(&a, &b).unwrap(), &c).unwrap();
        let right = intersect(&a, &intersect(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pushforward_preserves_the_degree_of_points(
        (w, keep_mask) in (2..=4u32).prop_flat_map(|n| {
            (arb_zero_dim_cycle(n), proptest::collection::vec(any::<bool>(), n as usize))
        })
    ) {
        let n = w.ambient();
        let mut keep: Vec<u32> = (1..=n).filter(|i| keep_mask[(*i - 1) as usize]).collect();
        if keep.is_empty() {
            keep.push(1);
        }
        let pushed = push_proj(&w, &keep).unwrap();
        prop_assert_eq!(degree(&pushed).unwrap(), degree(&w).unwrap());
    }

    #[test]
    fn exterior_degree_is_multiplicative(
        a in arb_zero_dim_cycle(2),
        b in arb_zero_dim_cycle(2),
    ) {
        let prod = exterior(&a, &b);
        prop_assert_eq!(
            degree(&prod).unwrap(),
            degree(&a).unwrap().mul(&degree(&b).unwrap())
        );
    }

    #[test]
    fn projection_formula(
        (a, b, keep_mask) in (2..=4u32).prop_flat_map(|n| {
            (
                arb_cycle(n),
                arb_cycle(n),
                proptest::collection::vec(any::<bool>(), n as usize),
            )
        })
    ) {
        let n = a.ambient();
        let mut keep: Vec<u32> = (1..=n).filter(|i| keep_mask[(*i - 1) as usize]).collect();
        if keep.is_empty() {
            keep.push(1);
        }
        if keep.len() == n as usize {
            keep.pop();
        }
        let small = push_proj(&b, &keep).unwrap();
        let pulled = pull_proj(&small, &keep, n).unwrap();
        let left = push_proj(&intersect(&a, &pulled).unwrap(), &keep).unwrap();
        let right = intersect(&push_proj(&a, &keep).unwrap(), &small).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn correspondence_composition_associates(
        a in arb_cycle(2),
        b in arb_cycle(2),
        c in arb_cycle(2),
    ) {
        let ba = corr_compose(&b, &a, (1, 1, 1)).unwrap();
        let cb = corr_compose(&c, &b, (1, 1, 1)).unwrap();
        let left = corr_compose(&c, &ba, (1, 1, 1)).unwrap();
        let right = corr_compose(&cb, &a, (1, 1, 1)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn substitution_of_the_canonical_class_is_idempotent_and_additive(
        (a, b) in (1..=3u32).prop_flat_map(|n| (arb_cycle(n), arb_cycle(n)))
    ) {
        let na = a.xi_normalize();
        prop_assert_eq!(na.xi_normalize(), na.clone());
        prop_assert_eq!(
            a.add(&b).unwrap().xi_normalize(),
            na.add(&b.xi_normalize()).unwrap()
        );
    }

    #[test]
    fn cycle_text_round_trips((n, w) in (1..=4u32).prop_flat_map(|n| (Just(n), arb_cycle(n)))) {
        let _ = n;
        let text = w.to_string();
        let back = parse_cycle(&text).unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn pontryagin_product_is_commutative_and_associative(
        a in arb_jac(4),
        b in arb_jac(4),
        c in arb_jac(4),
    ) {
        prop_assert_eq!(pont_mul(&a, &b).unwrap(), pont_mul(&b, &a).unwrap());
        prop_assert_eq!(
            pont_mul(&pont_mul(&a, &b).unwrap(), &c).unwrap(),
            pont_mul(&a, &pont_mul(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(pont_mul(&a, &JacExpr::unit(4)).unwrap(), a);
    }

    #[test]
    fn multiplication_pushforwards_are_monoidal(
        a in arb_jac(4),
        b in arb_jac(4),
        m in -3i64..=3,
        n in -3i64..=3,
    ) {
        prop_assert_eq!(
            mult_push(&pont_mul(&a, &b).unwrap(), m),
            pont_mul(&mult_push(&a, m), &mult_push(&b, m)).unwrap()
        );
        prop_assert_eq!(mult_push(&mult_push(&a, m), n), mult_push(&a, m * n));
    }
}

//! Exit gate: thirteen exact checks covering the identity engine end to end.
//! Every assertion is an equality of canonical forms or of integers; nothing
//! here is approximate.

use std::collections::{BTreeMap, BTreeSet};

use cyc::cycle::{corr_compose, diag_push, intersect, pull_proj, push_proj, CycleExpr, Sym};
use cyc::genus3::class_c2_xi;
use cyc::inference::{self, Closure, Fact, Flag, IndexSet, Kind};
use cyc::jacobian::{mult_push, pont_mul, sigma_push, zhang_expand, JacAtom, JacExpr};
use cyc::numtheory::{
    big_m, f_sum, factorial, gcd_lemma_check, m_closed_form, stirling2, torsion_bound, valuation,
    BoundDirection,
};
use cyc::ops::{
    b_push, b_push_expected, beta, betaz_check, big_b, big_gamma, fourier_rhs, gamma, projector,
    projector_power_apply, recurrence_residual, BPushTarget, Flavor, PointArg, Projector, Route,
};
use cyc::poly::Poly;
use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn point_args() -> Vec<(&'static str, PointArg)> {
    vec![
        ("e", PointArg::sym(Sym::E)),
        ("K", PointArg::sym(Sym::K)),
        ("z1", PointArg::sym(Sym::Z(1))),
        ("[C]", PointArg::Fundamental),
    ]
}

#[test]
fn a01_projectors_are_orthogonal_idempotents_summing_to_the_diagonal() {
    let tags = [Projector::P0, Projector::P1, Projector::P2];
    for a in tags {
        for b in tags {
            let composed = corr_compose(&projector(a), &projector(b), (1, 1, 1)).unwrap();
            let expected = if a == b {
                projector(a)
            } else {
                CycleExpr::zero(2)
            };
            assert_eq!(composed, expected, "{a:?} after {b:?}");
        }
    }
    let sum = projector(Projector::P0)
        .add(&projector(Projector::P1))
        .unwrap()
        .add(&projector(Projector::P2))
        .unwrap();
    assert_eq!(sum, diag_push(None, 2).unwrap());
    println!("[PASS] 01 projector algebra");
}

#[test]
fn a02_projector_and_explicit_routes_agree_through_arity_5() {
    for n in 1..=5 {
        for (zn, z) in point_args() {
            let gp = gamma(n, &z, Route::Projector).unwrap();
            let ge = gamma(n, &z, Route::Explicit).unwrap();
            assert_eq!(gp, ge, "gamma({n}, {zn})");
            let bp = beta(n, &z, Route::Projector).unwrap();
            let be = beta(n, &z, Route::Explicit).unwrap();
            assert_eq!(bp, be, "beta({n}, {zn})");
        }
    }
    println!("[PASS] 02 route agreement for arity <= 5");
}

#[test]
fn a03_pushforwards_of_the_reduced_diagonal_match_their_closed_forms() {
    for n in 3..=5 {
        for target in [
            BPushTarget::GenericZ,
            BPushTarget::Diagonal,
            BPushTarget::Slice12,
        ] {
            let got = b_push(n, target).unwrap();
            let want = b_push_expected(n, target).unwrap();
            assert_eq!(got, want, "arity {n}, target {target:?}");
        }
    }
    let generic = b_push(3, BPushTarget::GenericZ).unwrap();
    assert!(
        generic.terms().any(|(_, c)| c.as_scalar().is_none()),
        "generic-point pushforward should carry symbolic genus or degree"
    );
    println!("[PASS] 03 reduced-diagonal pushforwards, symbolic coefficients");
}

#[test]
fn a04_recurrence_residuals_vanish_for_both_flavors() {
    for flavor in [Flavor::Gamma, Flavor::Beta] {
        for n in 2..=4u32 {
            for m in 1..=(5 - n) {
                for (zn, z) in point_args() {
                    if zn == "K" {
                        continue;
                    }
                    let r = recurrence_residual(n, m, &z, flavor).unwrap();
                    assert!(
                        r.is_zero(),
                        "{flavor:?} residual at n={n}, m={m}, z={zn}: {r}"
                    );
                }
            }
        }
    }
    println!("[PASS] 04 recurrence residuals vanish, n+m <= 5");
}

#[test]
fn a05_tensor_power_route_reproduces_beta() {
    for n in 1..=4 {
        for (zn, z) in point_args() {
            if zn == "[C]" {
                continue;
            }
            let got = betaz_check(n, &z).unwrap();
            let want = beta(n, &z, Route::Explicit).unwrap();
            assert_eq!(got, want, "arity {n}, z = {zn}");
        }
    }
    println!("[PASS] 05 tensor-power route to beta, arity <= 4");
}

#[test]
fn a06_projected_fourier_pullbacks_reproduce_the_reduced_diagonals() {
    for s in 0..=2u32 {
        let rhs = fourier_rhs(s).unwrap();
        let projected = projector_power_apply(Projector::P1, s + 2, &rhs).unwrap();
        let sign = if s % 2 == 0 { 1 } else { -1 };
        let normalized = projected.scale(&Poly::int(sign));
        assert_eq!(normalized, big_b(s + 2).unwrap(), "s = {s}");
    }
    println!("[PASS] 06 projected fourier pullbacks, s <= 2, sign-normalized");
}

#[test]
fn a07_pushed_3_diagonal_has_ternary_coefficients_and_binomial_shape() {
    for g in 2..=6i64 {
        let filtered = zhang_expand(g, true).unwrap();
        for s in 0..=(g as u32 - 1) {
            let expected = BigInt::from(3).pow(2 + s) - BigInt::from(3) * BigInt::from(2).pow(2 + s)
                + BigInt::from(3);
            let comp = filtered.beauville_component(1, s);
            let want = JacExpr::from_term(
                g,
                vec![JacAtom::Cls(s)],
                Poly::from_scalar(BigRational::from_integer(expected)),
            );
            assert_eq!(comp, want, "g = {g}, s = {s}");
        }
        let full = zhang_expand(g, false).unwrap();
        let sigma_c = sigma_push(&CycleExpr::fundamental(1), g).unwrap();
        let sigma_e = sigma_push(&CycleExpr::point(Sym::E), g).unwrap();
        let mut shape = JacExpr::zero(g);
        for k in 0..=2u32 {
            let binom = [1i64, 3, 3][k as usize];
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let mut term = mult_push(&sigma_c, (3 - k) as i64);
            for _ in 0..k {
                term = pont_mul(&term, &sigma_e).unwrap();
            }
            shape = shape.add(&term.scale(&Poly::int(sign * binom))).unwrap();
        }
        assert_eq!(full, shape, "binomial shape at g = {g}");
    }
    let frozen: Vec<BigInt> = (0..=5u32)
        .map(|s| {
            BigInt::from(3).pow(2 + s) - BigInt::from(3) * BigInt::from(2).pow(2 + s)
                + BigInt::from(3)
        })
        .collect();
    let literal: Vec<BigInt> = [0, 6, 36, 150, 540, 1806]
        .into_iter()
        .map(BigInt::from)
        .collect();
    assert_eq!(frozen, literal);
    println!("[PASS] 07 ternary coefficients and binomial shape, g <= 6");
}

#[test]
fn a08_beauville_zero_components_collapse_to_factorials() {
    let g = 5i64;
    for s in 1..=4u32 {
        let ge = gamma(s, &PointArg::sym(Sym::E), Route::Explicit).unwrap();
        let comp = sigma_push(&ge, g).unwrap().beauville_component(0, s);
        let want = if s == 1 {
            JacExpr::zero(g)
        } else {
            JacExpr::from_term(
                g,
                vec![JacAtom::Del(s)],
                Poly::from_scalar(BigRational::from(factorial(s))),
            )
        };
        assert_eq!(comp, want, "s = {s}");
    }
    println!("[PASS] 08 factorial collapse at genus 5, s <= 4");
}

#[test]
fn a09_canonical_point_relation_reduces_to_zero_at_genus_3() {
    let c = class_c2_xi();
    assert_eq!(c.to_string(), "8*p3 - 4*q1*p2 + q1^2*p1");
    assert!(c.reduce().is_zero(), "reduced to {}", c.reduce());
    println!("[PASS] 09 canonical point relation reduces to zero");
}

#[test]
fn a10_surjection_count_gcds_match_the_squarefree_prime_packages() {
    for s in 0..=15u32 {
        for n in 0..=s {
            assert_eq!(
                f_sum(n, s),
                factorial(n) * stirling2(s, n),
                "oracle at n = {n}, s = {s}"
            );
        }
    }
    for s in (3..=15u32).step_by(2) {
        let r = gcd_lemma_check(s).unwrap();
        assert!(r.equal, "s = {s}: gcd {} vs {}", r.gcd, r.prime_product);
        assert!(r.square_free, "s = {s}: gcd {} not squarefree", r.gcd);
    }
    println!("[PASS] 10 gcd lemma and surjection-count oracle");
}

#[test]
fn a11_universal_constant_valuations_and_torsion_examples() {
    for m in 3..=20u32 {
        let big = big_m(m).unwrap();
        assert_eq!(valuation(&big, 2), m - 2, "2-adic at m = {m}");
        let mut p = 3;
        while p <= m {
            if (2..p).all(|d| p % d != 0) {
                assert_eq!(valuation(&big, p), (m - 1) / (p - 1), "{p}-adic at m = {m}");
            }
            p += 2;
        }
    }
    for g in 2..=19u32 {
        assert_eq!(big_m(g + 1).unwrap(), m_closed_form(g), "closed form at g = {g}");
    }
    let r = torsion_bound(
        BoundDirection::QzCriterion {
            n: BigUint::one(),
            group_order: BigUint::from(48u32),
        },
        3,
    )
    .unwrap();
    assert_eq!(r.gamma3_bound, BigUint::from(192u32));
    assert_eq!(r.ceresa_bound, BigUint::from(2304u32));
    let r = torsion_bound(
        BoundDirection::QzCriterion {
            n: BigUint::one(),
            group_order: BigUint::from(36u32),
        },
        4,
    )
    .unwrap();
    assert_eq!(r.gamma3_bound, BigUint::from(216u32));
    assert_eq!(r.ceresa_bound, BigUint::from(77760u32));
    println!("[PASS] 11 valuations, closed form, torsion examples");
}

#[test]
fn a12_vanishing_closure_is_exact_and_rule_order_invariant() {
    let assumptions = [Fact::Indexed(Kind::Gamma, 3)];
    let mut sets = BTreeMap::new();
    for (kind, t) in [
        (Kind::Gamma, 3u32),
        (Kind::B, 3),
        (Kind::CurveComp, 1),
        (Kind::GammaE, 1),
        (Kind::DeltaComp, 0),
    ] {
        sets.insert(
            kind,
            IndexSet {
                explicit: BTreeSet::new(),
                tail: Some(t),
            },
        );
    }
    let expected = Closure {
        genus: 3,
        sets,
        flags: [Flag::DeltaZero, Flag::CeresaZero, Flag::EIsXi].into(),
    };
    let closure = inference::propagate(3, &assumptions)
        .unwrap()
        .canonical_view();
    assert_eq!(closure, expected);

    let n = inference::rule_count();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for round in 0..100 {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let c = inference::propagate_with_order(3, &assumptions, &order)
            .unwrap()
            .canonical_view();
        assert_eq!(c, expected, "round {round}, order {order:?}");
    }
    println!("[PASS] 12 exact closure, invariant under 100 rule orders");
}

#[test]
fn a13_randomized_algebra_laws_hold() {
    let cfg = cyc::suites::SuiteConfig {
        max_n: 4,
        xi_mode: false,
        genus: 5,
    };
    let results = cyc::suites::run_suite("algebra", &cfg).unwrap();
    assert!(results.len() >= 4);
    for r in &results {
        assert!(r.pass, "{}: {}", r.name, r.detail);
    }
    let keep = [1u32, 3];
    let a = big_gamma(3).unwrap();
    let b = big_b(2).unwrap();
    let pulled = pull_proj(&b, &keep, 3).unwrap();
    let left = push_proj(&intersect(&a, &pulled).unwrap(), &keep).unwrap();
    let right = intersect(&push_proj(&a, &keep).unwrap(), &b).unwrap();
    assert_eq!(left, right, "projection formula on named cycles");
    println!("[PASS] 13 algebra laws on randomized instances");
}

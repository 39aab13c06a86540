//! Named verification suites: each bundles a family of exact identities and
//! reports one pass/fail outcome per identity, with the first counterexample
//! in canonical text form when a check fails.

use crate::cycle::{
    corr_apply, corr_compose, diag_push, diag_pull, exterior, intersect, pull_proj, push_proj,
    Block, CycleExpr, Monomial, Sym,
};
use crate::error::{CycError, Result};
use crate::genus3::{class_c2_xi, relations, TautPoly};
use crate::inference::{self, Fact, Flag, Kind};
use crate::jacobian::{
    ceresa_class, mult_push, pont_mul, sigma_push, zhang_expand, JacAtom, JacExpr,
};
use crate::numtheory::{
    big_m, f_sum, factorial, gcd_lemma_check, m_closed_form, stirling2, torsion_bound, valuation,
    BoundDirection,
};
use crate::ops::{
    b_push, b_push_expected, beta, betaz_check, big_b, big_gamma, fourier_rhs, gamma, projector,
    projector_power_apply, recurrence_residual, BPushTarget, Flavor, PointArg, Projector, Route,
};
use crate::poly::Poly;
use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUITE_NAMES: [&str; 7] = [
    "projectors",
    "moddiag",
    "jacobian",
    "genus3",
    "numtheory",
    "inference",
    "algebra",
];

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Largest arity exercised by the arity-indexed families.
    pub max_n: u32,
    /// Compare cycles after sending K to (2g-2)e and Jacobian words through
    /// the matching substitution.
    pub xi_mode: bool,
    /// Concrete genus for the Jacobian-side suites.
    pub genus: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let max_n = std::env::var("CYC_MAX_N")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(5);
        SuiteConfig {
            max_n,
            xi_mode: false,
            genus: 5,
        }
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<CheckOutcome>> {
    match name {
        "projectors" => Ok(projectors_suite(cfg)),
        "moddiag" => Ok(moddiag_suite(cfg)),
        "jacobian" => Ok(jacobian_suite(cfg)),
        "genus3" => Ok(genus3_suite()),
        "numtheory" => Ok(numtheory_suite()),
        "inference" => Ok(inference_suite()),
        "algebra" => Ok(algebra_suite(cfg)),
        other => Err(CycError::Syntax {
            pos: 0,
            msg: format!(
                "unknown suite {other:?}; available: {}",
                SUITE_NAMES.join(", ")
            ),
        }),
    }
}

fn check(
    out: &mut Vec<CheckOutcome>,
    name: impl Into<String>,
    body: impl FnOnce() -> Result<(bool, String)>,
) {
    let name = name.into();
    let (pass, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    out.push(CheckOutcome { name, pass, detail });
}

fn norm(cfg: &SuiteConfig, w: &CycleExpr) -> CycleExpr {
    if cfg.xi_mode {
        w.xi_normalize()
    } else {
        w.clone()
    }
}

fn cmp_cycles(cfg: &SuiteConfig, lhs: &CycleExpr, rhs: &CycleExpr) -> Result<(bool, String)> {
    let l = norm(cfg, lhs);
    let r = norm(cfg, rhs);
    if l == r {
        Ok((true, String::new()))
    } else {
        Ok((false, format!("lhs = {l}  rhs = {r}")))
    }
}

fn cmp_zero(cfg: &SuiteConfig, w: &CycleExpr) -> Result<(bool, String)> {
    let n = norm(cfg, w);
    if n.is_zero() {
        Ok((true, String::new()))
    } else {
        Ok((false, format!("nonzero residual {n}")))
    }
}

fn cmp_jac(cfg: &SuiteConfig, lhs: &JacExpr, rhs: &JacExpr) -> Result<(bool, String)> {
    let (l, r) = if cfg.xi_mode {
        (lhs.xi_map(), rhs.xi_map())
    } else {
        (lhs.clone(), rhs.clone())
    };
    if l == r {
        Ok((true, String::new()))
    } else {
        Ok((false, format!("lhs = {l}  rhs = {r}")))
    }
}

fn projector_list() -> [(Projector, &'static str); 3] {
    [
        (Projector::P0, "pi0"),
        (Projector::P1, "pi1"),
        (Projector::P2, "pi2"),
    ]
}

fn projectors_suite(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for (a, an) in projector_list() {
        for (b, bn) in projector_list() {
            check(&mut out, format!("compose {an} after {bn}"), || {
                let composed = corr_compose(&projector(a), &projector(b), (1, 1, 1))?;
                let expected = if a == b {
                    projector(a)
                } else {
                    CycleExpr::zero(2)
                };
                cmp_cycles(cfg, &composed, &expected)
            });
        }
    }
    check(&mut out, "projectors sum to the diagonal", || {
        let sum = projector(Projector::P0)
            .add(&projector(Projector::P1))?
            .add(&projector(Projector::P2))?;
        cmp_cycles(cfg, &sum, &diag_push(None, 2)?)
    });
    check(&mut out, "projector actions on points", || {
        let e = CycleExpr::point(Sym::E);
        for z in [
            CycleExpr::point(Sym::E),
            CycleExpr::point(Sym::K),
            CycleExpr::point(Sym::Z(1)),
        ] {
            let d = crate::cycle::degree(&z)?;
            let p0z = corr_apply(&projector(Projector::P0), &z)?;
            let (ok, why) = cmp_cycles(cfg, &p0z, &e.scale(&d))?;
            if !ok {
                return Ok((false, format!("pi0 on {z}: {why}")));
            }
            let p1z = corr_apply(&projector(Projector::P1), &z)?;
            let (ok, why) = cmp_cycles(cfg, &p1z, &z.sub(&e.scale(&d))?)?;
            if !ok {
                return Ok((false, format!("pi1 on {z}: {why}")));
            }
            let p2z = corr_apply(&projector(Projector::P2), &z)?;
            let (ok, why) = cmp_zero(cfg, &p2z)?;
            if !ok {
                return Ok((false, format!("pi2 on {z}: {why}")));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "projector actions on the fundamental class", || {
        let c = CycleExpr::fundamental(1);
        for (tag, expected) in [
            (Projector::P0, CycleExpr::zero(1)),
            (Projector::P1, CycleExpr::zero(1)),
            (Projector::P2, c.clone()),
            (Projector::PPlus, c.clone()),
        ] {
            let got = corr_apply(&projector(tag), &c)?;
            let (ok, why) = cmp_cycles(cfg, &got, &expected)?;
            if !ok {
                return Ok((false, format!("{tag:?} on [C]: {why}")));
            }
        }
        let pe = corr_apply(&projector(Projector::PPlus), &CycleExpr::point(Sym::E))?;
        cmp_zero(cfg, &pe)
    });
    check(&mut out, "correspondence composition associates", || {
        let e_cross_c = exterior(&CycleExpr::point(Sym::E), &CycleExpr::fundamental(1));
        let mut pool = vec![
            projector(Projector::P0),
            projector(Projector::P1),
            projector(Projector::P2),
            diag_push(None, 2)?,
            e_cross_c,
        ];
        pool.dedup();
        for x in &pool {
            for y in &pool {
                for z in &pool {
                    let yx = corr_compose(y, x, (1, 1, 1))?;
                    let zy = corr_compose(z, y, (1, 1, 1))?;
                    let left = corr_compose(z, &yx, (1, 1, 1))?;
                    let right = corr_compose(&zy, x, (1, 1, 1))?;
                    let (ok, why) = cmp_cycles(cfg, &left, &right)?;
                    if !ok {
                        return Ok((
                            false,
                            format!("triple ({x}, {y}, {z}): {why}"),
                        ));
                    }
                }
            }
        }
        Ok((true, String::new()))
    });
    out
}

fn point_args() -> Vec<(&'static str, PointArg)> {
    vec![
        ("e", PointArg::sym(Sym::E)),
        ("K", PointArg::sym(Sym::K)),
        ("z1", PointArg::sym(Sym::Z(1))),
        ("[C]", PointArg::Fundamental),
    ]
}

fn moddiag_suite(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    check(&mut out, "small arities match closed forms", || {
        let c = CycleExpr::fundamental(1);
        let (ok, why) = cmp_cycles(cfg, &big_gamma(1)?, &c)?;
        if !ok {
            return Ok((false, format!("Gamma(1): {why}")));
        }
        let (ok, why) = cmp_zero(cfg, &big_b(1)?)?;
        if !ok {
            return Ok((false, format!("B(1): {why}")));
        }
        let (ok, why) = cmp_cycles(cfg, &big_b(2)?, &big_gamma(2)?)?;
        if !ok {
            return Ok((false, format!("B(2) vs Gamma(2): {why}")));
        }
        let expanded = crate::dsl::parse_cycle("diag(1,2) - diag(1)*e@2 - e@1*diag(2) @@2")?;
        let (ok, why) = cmp_cycles(cfg, &big_gamma(2)?, &expanded)?;
        if !ok {
            return Ok((false, format!("Gamma(2) expansion: {why}")));
        }
        let g1e = gamma(1, &PointArg::sym(Sym::E), Route::Explicit)?;
        let (ok, why) = cmp_zero(cfg, &g1e)?;
        if !ok {
            return Ok((false, format!("gamma(1,e): {why}")));
        }
        let g1k = gamma(1, &PointArg::sym(Sym::K), Route::Explicit)?;
        let expect = crate::dsl::parse_cycle("K@1 - (2*g - 2)*e@1")?;
        cmp_cycles(cfg, &g1k, &expect)
    });
    for n in 1..=cfg.max_n {
        check(&mut out, format!("route agreement at arity {n}"), || {
            for (zn, z) in point_args() {
                for op in ["gamma", "beta"] {
                    let (a, b) = if op == "gamma" {
                        (
                            gamma(n, &z, Route::Projector)?,
                            gamma(n, &z, Route::Explicit)?,
                        )
                    } else {
                        (beta(n, &z, Route::Projector)?, beta(n, &z, Route::Explicit)?)
                    };
                    let (ok, why) = cmp_cycles(cfg, &a, &b)?;
                    if !ok {
                        return Ok((false, format!("{op}({n},{zn}): {why}")));
                    }
                }
            }
            Ok((true, String::new()))
        });
    }
    for n in 3..=cfg.max_n.max(3) {
        check(&mut out, format!("pushforwards of B({n})"), || {
            for target in [
                BPushTarget::GenericZ,
                BPushTarget::Diagonal,
                BPushTarget::Slice12,
            ] {
                let got = b_push(n, target.clone())?;
                let want = b_push_expected(n, target.clone())?;
                let (ok, why) = cmp_cycles(cfg, &got, &want)?;
                if !ok {
                    return Ok((false, format!("target {target:?}: {why}")));
                }
            }
            Ok((true, String::new()))
        });
    }
    for flavor in [Flavor::Gamma, Flavor::Beta] {
        for n in 2..=cfg.max_n {
            for m in 1..=cfg.max_n.saturating_sub(n) {
                let label = format!("recurrence residual {flavor:?} n={n} m={m}");
                check(&mut out, label, || {
                    for (zn, z) in point_args() {
                        if zn == "K" {
                            continue;
                        }
                        let r = recurrence_residual(n, m, &z, flavor)?;
                        let (ok, why) = cmp_zero(cfg, &r)?;
                        if !ok {
                            return Ok((false, format!("z = {zn}: {why}")));
                        }
                    }
                    Ok((true, String::new()))
                });
            }
        }
    }
    for n in 1..=cfg.max_n.min(4) {
        check(&mut out, format!("tensor-power route to beta({n})"), || {
            for (zn, z) in point_args() {
                if zn == "[C]" {
                    continue;
                }
                let got = betaz_check(n, &z)?;
                let want = beta(n, &z, Route::Explicit)?;
                let (ok, why) = cmp_cycles(cfg, &got, &want)?;
                if !ok {
                    return Ok((false, format!("z = {zn}: {why}")));
                }
            }
            Ok((true, String::new()))
        });
    }
    let s_cap = cfg.max_n.saturating_sub(2).min(2);
    for s in 0..=s_cap {
        check(&mut out, format!("fourier transfer at s={s}"), || {
            let rhs = fourier_rhs(s)?;
            let projected = projector_power_apply(Projector::P1, s + 2, &rhs)?;
            let sign = if s % 2 == 0 { 1 } else { -1 };
            let normalized = projected.scale(&Poly::int(sign));
            cmp_cycles(cfg, &normalized, &big_b(s + 2)?)
        });
    }
    for n in 1..=cfg.max_n.min(3) {
        check(&mut out, format!("canonical point shape at arity {n}"), || {
            let lhs = gamma(n, &PointArg::k_plus_e(2), Route::Explicit)?.xi_normalize();
            let rhs = gamma(n, &PointArg::sym(Sym::E), Route::Explicit)?
                .scale(&Poly::g().scale(&crate::poly::int(2)));
            cmp_cycles(cfg, &lhs, &rhs)
        });
    }
    out
}

fn jacobian_suite(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let g = cfg.genus.max(2);
    check(&mut out, "ternary coefficients of the pushed 3-diagonal", || {
        for genus in 2..=6i64 {
            let z = zhang_expand(genus, true)?;
            for s in 0..=(genus as u32 - 1) {
                let expected = BigInt::from(3).pow(2 + s)
                    - BigInt::from(3) * BigInt::from(2).pow(2 + s)
                    + BigInt::from(3);
                let comp = z.beauville_component(1, s);
                let want = JacExpr::from_term(
                    genus,
                    vec![JacAtom::Cls(s)],
                    Poly::from_scalar(BigRational::from_integer(expected)),
                );
                let (ok, why) = cmp_jac(cfg, &comp, &want)?;
                if !ok {
                    return Ok((false, format!("g={genus}, s={s}: {why}")));
                }
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "binomial shape of the pushed 3-diagonal", || {
        let full = zhang_expand(g, false)?;
        let sigma_c = sigma_push(&CycleExpr::fundamental(1), g)?;
        let sigma_e = sigma_push(&CycleExpr::point(Sym::E), g)?;
        let mut shape = JacExpr::zero(g);
        for k in 0..=2u32 {
            let binom = [1i64, 3, 3][k as usize];
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let mut term = mult_push(&sigma_c, (3 - k) as i64);
            for _ in 0..k {
                term = pont_mul(&term, &sigma_e)?;
            }
            shape = shape.add(&term.scale(&Poly::int(sign * binom)))?;
        }
        cmp_jac(cfg, &full, &shape)
    });
    check(&mut out, "factorial collapse at genus 5", || {
        let g5 = 5i64;
        for s in 1..=4u32 {
            let ge = gamma(s, &PointArg::sym(Sym::E), Route::Explicit)?;
            let pushed = sigma_push(&ge, g5)?;
            let comp = pushed.beauville_component(0, s);
            let want = if s == 1 {
                JacExpr::zero(g5)
            } else {
                JacExpr::from_term(
                    g5,
                    vec![JacAtom::Del(s)],
                    Poly::from_scalar(BigRational::from(factorial(s))),
                )
            };
            let (ok, why) = cmp_jac(cfg, &comp, &want)?;
            if !ok {
                return Ok((false, format!("s={s}: {why}")));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "pushforward commutes with the point substitution", || {
        let samples = [
            gamma(2, &PointArg::sym(Sym::K), Route::Explicit)?,
            gamma(3, &PointArg::k_plus_e(2), Route::Explicit)?,
            big_gamma(3)?,
        ];
        for w in &samples {
            let left = sigma_push(&w.xi_normalize(), g)?;
            let right = sigma_push(w, g)?.xi_map();
            if left != right {
                return Ok((false, format!("on {w}: lhs = {left}  rhs = {right}")));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "odd-part identity for the ceresa class", || {
        let sigma_c = sigma_push(&CycleExpr::fundamental(1), g)?;
        let reflected = mult_push(&sigma_c, -1);
        let want = sigma_c.sub(&reflected)?;
        cmp_jac(cfg, &ceresa_class(g)?, &want)
    });
    check(&mut out, "doubling identity for the theta-dual class", || {
        let g2e = gamma(2, &PointArg::sym(Sym::E), Route::Explicit)?;
        let lhs = sigma_push(&g2e, g)?;
        let mut delta = JacExpr::zero(g);
        for s in 2..=g as u32 {
            delta = delta.add(&JacExpr::atom(g, JacAtom::Del(s)))?;
        }
        let doubled = mult_push(&delta, 2);
        let rhs = doubled
            .sub(&delta.scale(&Poly::int(2)))?
            .sub(&pont_mul(&delta, &delta)?)?;
        cmp_jac(cfg, &lhs, &rhs)
    });
    out
}

fn genus3_suite() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    check(&mut out, "canonical point relation reduces to zero", || {
        let c = class_c2_xi();
        if c.to_string() != "8*p3 - 4*q1*p2 + q1^2*p1" {
            return Ok((false, format!("unexpected unreduced form {c}")));
        }
        let r = c.reduce();
        if r.is_zero() {
            Ok((true, String::new()))
        } else {
            Ok((false, format!("nonzero reduction {r}")))
        }
    });
    check(&mut out, "defining relations reduce to zero", || {
        let (quad, cubic) = relations();
        if cubic.to_string() != "8*p3 - 4*q1*p2 - 4*q2*p1 + 2*q1^2*p1" {
            return Ok((false, format!("unexpected cubic relation {cubic}")));
        }
        for r in [quad, cubic] {
            let red = r.reduce();
            if !red.is_zero() {
                return Ok((false, format!("relation {r} reduces to {red}")));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "perturbed relation stays nonzero", || {
        let perturbed = TautPoly::p(3)?
            .scale(&crate::poly::int(8))
            .add(&TautPoly::q(1)?.pow(2).mul(&TautPoly::p(1)?));
        let red = perturbed.reduce();
        if red.is_zero() {
            Ok((false, "perturbation unexpectedly reduced to zero".into()))
        } else {
            Ok((true, String::new()))
        }
    });
    out
}

fn numtheory_suite() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    check(&mut out, "surjection counts match the stirling oracle", || {
        for s in 0..=15u32 {
            for n in 0..=s {
                let direct = f_sum(n, s);
                let oracle = factorial(n) * stirling2(s, n);
                if direct != oracle {
                    return Ok((false, format!("f({n},{s}) = {direct}, oracle {oracle}")));
                }
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "gcd equals the prime package and is squarefree", || {
        for s in (3..=15u32).step_by(2) {
            let r = gcd_lemma_check(s)?;
            if !r.equal || !r.square_free {
                return Ok((
                    false,
                    format!("s={s}: gcd {} vs product {}", r.gcd, r.prime_product),
                ));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "universal constants at small degrees", || {
        let expected = [(3u32, 6u32), (4, 12), (5, 360)];
        for (m, want) in expected {
            let got = big_m(m)?;
            if got != BigUint::from(want) {
                return Ok((false, format!("M_{m} = {got}, expected {want}")));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "prime valuations of the universal constants", || {
        for m in 3..=20u32 {
            let big = big_m(m)?;
            if valuation(&big, 2) != m - 2 {
                return Ok((false, format!("2-adic valuation wrong at m={m}")));
            }
            let mut p = 3;
            while p <= m {
                let is_prime = (2..p).all(|d| p % d != 0);
                if is_prime && valuation(&big, p) != (m - 1) / (p - 1) {
                    return Ok((false, format!("{p}-adic valuation wrong at m={m}")));
                }
                p += 2;
            }
        }
        for g in 2..=19u32 {
            if big_m(g + 1)? != m_closed_form(g) {
                return Ok((false, format!("closed form mismatch at g={g}")));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "torsion bounds on the worked examples", || {
        let r = torsion_bound(
            BoundDirection::QzCriterion {
                n: BigUint::one(),
                group_order: BigUint::from(48u32),
            },
            3,
        )?;
        if r.gamma3_bound != BigUint::from(192u32) || r.ceresa_bound != BigUint::from(2304u32) {
            return Ok((
                false,
                format!("genus 3: got {} and {}", r.gamma3_bound, r.ceresa_bound),
            ));
        }
        let r = torsion_bound(
            BoundDirection::QzCriterion {
                n: BigUint::one(),
                group_order: BigUint::from(36u32),
            },
            4,
        )?;
        if r.gamma3_bound != BigUint::from(216u32) || r.ceresa_bound != BigUint::from(77760u32) {
            return Ok((
                false,
                format!("genus 4: got {} and {}", r.gamma3_bound, r.ceresa_bound),
            ));
        }
        Ok((true, String::new()))
    });
    out
}

fn inference_suite() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    check(&mut out, "closure of the 3-diagonal assumption at genus 3", || {
        let st = inference::propagate(3, &[Fact::Indexed(Kind::Gamma, 3)])?;
        let c = st.canonical_view();
        let expect_tail = |kind: Kind, t: u32| -> Option<String> {
            let s = &c.sets[&kind];
            if s.explicit.is_empty() && s.tail == Some(t) {
                None
            } else {
                Some(format!("{:?}: {:?}", kind, s))
            }
        };
        for (kind, t) in [
            (Kind::Gamma, 3),
            (Kind::B, 3),
            (Kind::CurveComp, 1),
            (Kind::GammaE, 1),
            (Kind::DeltaComp, 0),
        ] {
            if let Some(why) = expect_tail(kind, t) {
                return Ok((false, why));
            }
        }
        let flags: Vec<Flag> = c.flags.iter().copied().collect();
        if flags != vec![Flag::DeltaZero, Flag::CeresaZero, Flag::EIsXi] {
            return Ok((false, format!("flags {flags:?}")));
        }
        Ok((true, String::new()))
    });
    check(&mut out, "assumption-free baseline stays conservative", || {
        let c = inference::propagate(3, &[])?.canonical_view();
        if c.sets[&Kind::Gamma].tail != Some(5) || !c.flags.is_empty() {
            return Ok((false, format!("baseline closure {:?}", c.sets[&Kind::Gamma])));
        }
        let c2 = inference::propagate(2, &[])?.canonical_view();
        if c2.sets[&Kind::Gamma].tail != Some(4) {
            return Ok((false, "genus 2 ceiling missing".into()));
        }
        Ok((true, String::new()))
    });
    check(&mut out, "derivation chain reaches the theta-dual flag", || {
        let st = inference::propagate(3, &[Fact::Indexed(Kind::Gamma, 3)])?;
        let lines = st.explain(&Fact::Flag(Flag::DeltaZero))?.join("\n");
        for rule in ["[R2]", "[R5]", "[R6]", "[R7]"] {
            if !lines.contains(rule) {
                return Ok((false, format!("missing {rule} in chain:\n{lines}")));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "rule order invariance on sample permutations", || {
        let assumptions = [Fact::Indexed(Kind::Gamma, 3)];
        let baseline = inference::propagate(3, &assumptions)?.canonical_view();
        let n = inference::rule_count();
        let reversed: Vec<usize> = (0..n).rev().collect();
        let rotated: Vec<usize> = (0..n).map(|i| (i + 7) % n).collect();
        for order in [reversed, rotated] {
            let c = inference::propagate_with_order(3, &assumptions, &order)?.canonical_view();
            if c != baseline {
                return Ok((false, format!("order {order:?} changed the closure")));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "claimed engine facts hold", || {
        let g1e = gamma(1, &PointArg::sym(Sym::E), Route::Explicit)?;
        if !g1e.is_zero() {
            return Ok((false, format!("gamma(1,e) = {g1e}")));
        }
        let b1 = big_b(1)?;
        if !b1.is_zero() {
            return Ok((false, format!("B(1) = {b1}")));
        }
        let xi_shift = gamma(1, &PointArg::sym(Sym::K), Route::Explicit)?
            .xi_normalize();
        if !xi_shift.is_zero() {
            return Ok((false, format!("gamma(1,K) after substitution = {xi_shift}")));
        }
        Ok((true, String::new()))
    });
    out
}

fn rand_cycle(rng: &mut ChaCha8Rng, ambient: u32, max_terms: u32) -> CycleExpr {
    let mut w = CycleExpr::zero(ambient);
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); ambient as usize];
        for i in 1..=ambient {
            let b = rng.gen_range(0..ambient) as usize;
            buckets[b].push(i);
        }
        let mut blocks = Vec::new();
        for bucket in buckets.into_iter().filter(|b| !b.is_empty()) {
            let dec = match rng.gen_range(0..4u32) {
                0 => None,
                1 => Some(Sym::E),
                2 => Some(Sym::K),
                _ => Some(Sym::Z(1)),
            };
            blocks.push(Block::new(bucket, dec));
        }
        let coeff = Poly::int(rng.gen_range(-3..=3i64));
        w.add_term(Monomial::new(blocks), coeff);
    }
    w
}

fn all_partitions(n: u32) -> Vec<Vec<Vec<u32>>> {
    let mut out = vec![vec![]];
    for i in 1..=n {
        let mut next = Vec::new();
        for p in out {
            for slot in 0..=p.len() {
                let mut q = p.clone();
                if slot == p.len() {
                    q.push(vec![i]);
                } else {
                    q[slot].push(i);
                }
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn algebra_suite(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let instances = 200;
    check(&mut out, "intersection commutes (randomized)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC1C0);
        for i in 0..instances {
            let n = rng.gen_range(1..=4u32);
            let a = rand_cycle(&mut rng, n, 2);
            let b = rand_cycle(&mut rng, n, 2);
            let ab = intersect(&a, &b)?;
            let ba = intersect(&b, &a)?;
            if ab != ba {
                return Ok((false, format!("instance {i}: a = {a}, b = {b}")));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "intersection associates (randomized)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC1C1);
        for i in 0..instances {
            let n = rng.gen_range(1..=4u32);
            let a = rand_cycle(&mut rng, n, 2);
            let b = rand_cycle(&mut rng, n, 2);
            let c = rand_cycle(&mut rng, n, 2);
            let left = intersect(&intersect(&a, &b)?, &c)?;
            let right = intersect(&a, &intersect(&b, &c)?)?;
            if left != right {
                return Ok((
                    false,
                    format!("instance {i}: a = {a}, b = {b}, c = {c}"),
                ));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "projection formula (randomized)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC1C2);
        for i in 0..instances {
            let n = rng.gen_range(2..=4u32);
            let mut keep: Vec<u32> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
            if keep.is_empty() {
                keep.push(rng.gen_range(1..=n));
            }
            let a = rand_cycle(&mut rng, n, 2);
            let b = rand_cycle(&mut rng, keep.len() as u32, 2);
            let pulled = pull_proj(&b, &keep, n)?;
            let left = push_proj(&intersect(&a, &pulled)?, &keep)?;
            let right = intersect(&push_proj(&a, &keep)?, &b)?;
            if left != right {
                return Ok((
                    false,
                    format!("instance {i}: a = {a}, b = {b}, keep {keep:?}"),
                ));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "exterior products push to pontryagin products", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC1C3);
        let g = cfg.genus.max(2);
        for i in 0..instances {
            let m = rng.gen_range(1..=2u32);
            let k = rng.gen_range(1..=2u32);
            let a = rand_cycle(&mut rng, m, 2);
            let b = rand_cycle(&mut rng, k, 2);
            let left = sigma_push(&exterior(&a, &b), g)?;
            let right = pont_mul(&sigma_push(&a, g)?, &sigma_push(&b, g)?)?;
            if left != right {
                return Ok((false, format!("instance {i}: a = {a}, b = {b}")));
            }
        }
        Ok((true, String::new()))
    });
    check(&mut out, "diagonal projection formula (exhaustive)", || {
        let decs = [None, Some(Sym::E), Some(Sym::K), Some(Sym::Z(1))];
        for n in 1..=4u32 {
            let diag_n = diag_push(None, n)?;
            for partition in all_partitions(n) {
                let k = partition.len();
                let mut assignments = vec![0usize; k];
                loop {
                    let blocks: Vec<Block> = partition
                        .iter()
                        .zip(&assignments)
                        .map(|(idx, &d)| Block::new(idx.clone(), decs[d]))
                        .collect();
                    let w = CycleExpr::from_monomial(
                        n,
                        Monomial::new(blocks),
                        Poly::one(),
                    );
                    let left = intersect(&w, &diag_n)?;
                    let right = crate::cycle::diag_push_expr(&diag_pull(&w)?, n)?;
                    if left != right {
                        return Ok((false, format!("w = {w}: lhs = {left}, rhs = {right}")));
                    }
                    let mut pos = 0;
                    loop {
                        if pos == k {
                            break;
                        }
                        assignments[pos] += 1;
                        if assignments[pos] < decs.len() {
                            break;
                        }
                        assignments[pos] = 0;
                        pos += 1;
                    }
                    if pos == k {
                        break;
                    }
                }
            }
        }
        Ok((true, String::new()))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_reduced_depth() {
        let cfg = SuiteConfig {
            max_n: 4,
            xi_mode: false,
            genus: 3,
        };
        for name in SUITE_NAMES {
            let results = run_suite(name, &cfg).unwrap();
            assert!(!results.is_empty(), "suite {name} is empty");
            for r in &results {
                assert!(r.pass, "{name}/{}: {}", r.name, r.detail);
            }
        }
    }

    #[test]
    fn unknown_suites_are_rejected() {
        assert!(run_suite("nope", &SuiteConfig::default()).is_err());
    }

    #[test]
    fn xi_mode_still_passes_the_cycle_suites() {
        let cfg = SuiteConfig {
            max_n: 3,
            xi_mode: true,
            genus: 3,
        };
        for name in ["projectors", "moddiag"] {
            for r in run_suite(name, &cfg).unwrap() {
                assert!(r.pass, "{name}/{}: {}", r.name, r.detail);
            }
        }
    }
}

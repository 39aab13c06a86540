//! Modified diagonal cycles and the projector calculus that generates them.
//!
//! The three rank-one correspondences on C x C split the diagonal:
//! p0 = C x e, p2 = e x C, p1 = diagonal - p0 - p2. Tensor powers of p1
//! (resp. p1 + p2) cut the n-fold small diagonal down to the modified
//! diagonal B^n (resp. Gamma^n); both admit closed-form expansions over
//! decorated partitions, and this module exposes both computation routes so
//! they can be checked against each other.

use crate::cycle::{
    corr_apply, degree, diag_push, diag_push_expr, exterior, intersect, pull_proj, push_proj,
    CycleExpr, Sym,
};
use crate::error::{CycError, Result};
use crate::poly::{int, rat, Poly};
use itertools::Itertools;

/// Mutually orthogonal idempotent correspondences on C x C, plus their
/// partial sum `PPlus` = p1 + p2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projector {
    P0,
    P1,
    P2,
    PPlus,
}

/// The correspondence itself, as a cycle on C^2.
pub fn projector(tag: Projector) -> CycleExpr {
    let c = CycleExpr::fundamental(1);
    let e = CycleExpr::point(Sym::E);
    let p0 = exterior(&c, &e);
    let p2 = exterior(&e, &c);
    let delta = diag_push(None, 2).expect("ambient 2");
    match tag {
        Projector::P0 => p0,
        Projector::P2 => p2,
        Projector::P1 => delta.sub(&p0).and_then(|d| d.sub(&p2)).expect("ambient 2"),
        Projector::PPlus => delta.sub(&p0).expect("ambient 2"),
    }
}

/// Applies the n-fold tensor power of a projector to a class on C^n,
/// realized as one correspondence on C^(2n).
pub fn projector_power_apply(tag: Projector, n: u32, w: &CycleExpr) -> Result<CycleExpr> {
    if w.ambient() != n {
        return Err(CycError::AmbientMismatch(format!(
            "expected a class on C^{n}, got C^{}",
            w.ambient()
        )));
    }
    let p = projector(tag);
    let mut rho = CycleExpr::fundamental(2 * n);
    for i in 1..=n {
        let factor = pull_proj(&p, &[i, n + i], 2 * n)?;
        rho = intersect(&rho, &factor)?;
    }
    corr_apply(&rho, w)
}

/// Argument slot for the diagonal operators: a zero-cycle on C (an exact
/// combination of decorated points) or the fundamental class of C.
#[derive(Debug, Clone)]
pub enum PointArg {
    Fundamental,
    Cycle(CycleExpr),
}

impl PointArg {
    pub fn sym(s: Sym) -> Self {
        PointArg::Cycle(CycleExpr::point(s))
    }

    /// K + c.e, the combination driving the slice and restriction identities.
    pub fn k_plus_e(c: i64) -> Self {
        let k = CycleExpr::point(Sym::K);
        let e = CycleExpr::point(Sym::E).scale(&Poly::int(c));
        PointArg::Cycle(k.add(&e).expect("ambient 1"))
    }

    fn validate(&self) -> Result<()> {
        match self {
            PointArg::Fundamental => Ok(()),
            PointArg::Cycle(z) => {
                if z.ambient() != 1 {
                    return Err(CycError::AmbientMismatch(format!(
                        "point argument must live on C^1, got C^{}",
                        z.ambient()
                    )));
                }
                if !z.is_zero_dimensional() {
                    return Err(CycError::NotZeroDimensional(
                        "point argument must be a zero-cycle".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Degree of the zero-dimensional part (zero for the fundamental class).
    fn deg0(&self) -> Poly {
        match self {
            PointArg::Fundamental => Poly::zero(),
            PointArg::Cycle(z) => degree(z).expect("validated zero-cycle"),
        }
    }

    /// Decorated-point components as (decoration, coefficient) pairs;
    /// `None` decoration encodes the fundamental class.
    fn parts(&self) -> Vec<(Option<Sym>, Poly)> {
        match self {
            PointArg::Fundamental => vec![(None, Poly::one())],
            PointArg::Cycle(z) => z
                .terms()
                .map(|(m, c)| (m.blocks()[0].dec, c.clone()))
                .collect(),
        }
    }

    /// Intersection with the base point on C: kills zero-cycles, sends the
    /// fundamental class to e.
    fn dot_e(&self) -> PointArg {
        let expr = match self {
            PointArg::Fundamental => CycleExpr::fundamental(1),
            PointArg::Cycle(z) => z.clone(),
        };
        let e = CycleExpr::point(Sym::E);
        PointArg::Cycle(intersect(&expr, &e).expect("ambient 1"))
    }

    fn as_expr(&self) -> CycleExpr {
        match self {
            PointArg::Fundamental => CycleExpr::fundamental(1),
            PointArg::Cycle(z) => z.clone(),
        }
    }
}

/// Evaluation route for gamma and beta: through the projector calculus on
/// C^(2n), or through the closed-form partition expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Projector,
    Explicit,
}

/// Diagonal pushforward of a point argument, linearly extended.
fn diag_arg(z: &PointArg, n: u32) -> Result<CycleExpr> {
    match z {
        PointArg::Fundamental => diag_push(None, n),
        PointArg::Cycle(expr) => diag_push_expr(expr, n),
    }
}

/// Closed-form expansion of gamma^n(z), valid for all n >= 0.
///
/// Each nonempty subset I of the coordinates carries the diagonal pushforward
/// of z with alternating sign, the complement filled by base points; the
/// empty subset contributes the sign-weighted degree term. n = 0 yields the
/// degree of the zero-dimensional part on the exterior unit C^0.
fn gamma_explicit_any(n: u32, z: &PointArg) -> CycleExpr {
    if n == 0 {
        let mut out = CycleExpr::zero(0);
        out.add_term(crate::cycle::Monomial::new(vec![]), z.deg0());
        return out;
    }
    let mut out = CycleExpr::zero(n);

    let sign = |k: u32| int(if (n - k) % 2 == 0 { 1 } else { -1 });
    let deg_term = z.deg0().scale(&sign(0));
    if !deg_term.is_zero() {
        let blocks = (1..=n)
            .map(|i| crate::cycle::Block::new(vec![i], Some(Sym::E)))
            .collect();
        out.add_term(crate::cycle::Monomial::new(blocks), deg_term);
    }

    let parts = z.parts();
    for k in 1..=n {
        for subset in (1..=n).combinations(k as usize) {
            for (dec, coeff) in &parts {
                let mut blocks = vec![crate::cycle::Block::new(subset.clone(), *dec)];
                for i in 1..=n {
                    if !subset.contains(&i) {
                        blocks.push(crate::cycle::Block::new(vec![i], Some(Sym::E)));
                    }
                }
                out.add_term(
                    crate::cycle::Monomial::new(blocks),
                    coeff.scale(&sign(k)),
                );
            }
        }
    }
    out
}

/// Pullback along the projection dropping coordinate `skip` from C^n.
fn pull_skipping(w: &CycleExpr, skip: u32, n: u32) -> Result<CycleExpr> {
    let images: Vec<u32> = (1..=n).filter(|&i| i != skip).collect();
    pull_proj(w, &images, n)
}

/// gamma^n(z): the n-fold modified diagonal operator applied to a zero-cycle
/// or to the fundamental class.
pub fn gamma(n: u32, z: &PointArg, route: Route) -> Result<CycleExpr> {
    if n == 0 {
        return Err(CycError::ArityTooSmall("gamma needs n >= 1".into()));
    }
    z.validate()?;
    match route {
        Route::Explicit => Ok(gamma_explicit_any(n, z)),
        Route::Projector => projector_power_apply(Projector::PPlus, n, &diag_arg(z, n)?),
    }
}

/// beta^n(z): the variant cut out by p1 instead of p1 + p2. Explicitly,
/// beta^n(z) = gamma^n(z) minus the pullbacks of gamma^(n-1)(z.e) along the
/// n coordinate-dropping projections.
pub fn beta(n: u32, z: &PointArg, route: Route) -> Result<CycleExpr> {
    if n == 0 {
        return Err(CycError::ArityTooSmall("beta needs n >= 1".into()));
    }
    z.validate()?;
    match route {
        Route::Projector => projector_power_apply(Projector::P1, n, &diag_arg(z, n)?),
        Route::Explicit => {
            let mut out = gamma_explicit_any(n, z);
            let correction = gamma_explicit_any(n - 1, &z.dot_e());
            for i in 1..=n {
                out = out.sub(&pull_skipping(&correction, i, n)?)?;
            }
            Ok(out)
        }
    }
}

/// Gamma^n: the modified diagonal itself (gamma of the fundamental class).
pub fn big_gamma(n: u32) -> Result<CycleExpr> {
    gamma(n, &PointArg::Fundamental, Route::Explicit)
}

/// B^n: the p1-cut modified diagonal (beta of the fundamental class).
pub fn big_b(n: u32) -> Result<CycleExpr> {
    beta(n, &PointArg::Fundamental, Route::Explicit)
}

/// Pushforwards of B^n along coordinate projections, each with a closed-form
/// answer in lower-order operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BPushTarget {
    /// B^n as a correspondence C -> C^(n-1) applied to a generic point z1.
    GenericZ,
    /// B^n as a correspondence C^2 -> C^(n-2) applied to the diagonal.
    Diagonal,
    /// Pushforward to the last n-1 coordinates of B^n restricted to x1 = x2.
    Slice12,
}

/// Computes the pushforward on the left-hand side of the chosen identity.
pub fn b_push(n: u32, target: BPushTarget) -> Result<CycleExpr> {
    if n < 3 {
        return Err(CycError::ArityTooSmall(format!(
            "pushforward identities need n >= 3, got {n}"
        )));
    }
    let b = big_b(n)?;
    match target {
        BPushTarget::GenericZ => corr_apply(&b, &CycleExpr::point(Sym::Z(1))),
        BPushTarget::Diagonal => corr_apply(&b, &diag_push(None, 2)?),
        BPushTarget::Slice12 => {
            let slice = intersect(&b, &pull_proj(&diag_push(None, 2)?, &[1, 2], n)?)?;
            push_proj(&slice, &(2..=n).collect::<Vec<_>>())
        }
    }
}

/// The identity each pushforward target satisfies, built from lower-order
/// operators; `b_push(n, t)` must equal `b_push_expected(n, t)`.
pub fn b_push_expected(n: u32, target: BPushTarget) -> Result<CycleExpr> {
    match target {
        BPushTarget::GenericZ => {
            // B^n_*(z) = gamma^(n-1)(z) - deg(z) gamma^(n-1)(e).
            let gz = gamma(n - 1, &PointArg::sym(Sym::Z(1)), Route::Explicit)?;
            let ge = gamma(n - 1, &PointArg::sym(Sym::E), Route::Explicit)?;
            gz.sub(&ge.scale(&Poly::d(1)))
        }
        BPushTarget::Diagonal => {
            // B^n applied to the diagonal collapses to -beta^(n-2)(K + 2e).
            beta(n - 2, &PointArg::k_plus_e(2), Route::Explicit).map(|w| w.neg())
        }
        BPushTarget::Slice12 => {
            // beta^(n-1)(-K - 4e) - e x beta^(n-2)(K + 2e).
            let first = beta(n - 1, &PointArg::k_plus_e(4), Route::Explicit)?.neg();
            let second = exterior(
                &CycleExpr::point(Sym::E),
                &beta(n - 2, &PointArg::k_plus_e(2), Route::Explicit)?,
            );
            first.sub(&second)
        }
    }
}

/// Which tensor-power recursion to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Gamma,
    Beta,
}

/// Residual of the composition recursion: the difference between
/// gamma^(n+m)(z) (resp. beta) and its reconstruction from gamma^n(z) glued
/// with an (m+1)-fold diagonal plus the split correction terms. Identically
/// zero as an expression; returned so tests can assert exactly that.
pub fn recurrence_residual(n: u32, m: u32, z: &PointArg, flavor: Flavor) -> Result<CycleExpr> {
    if n < 2 {
        return Err(CycError::ArityTooSmall("recursion needs n >= 2".into()));
    }
    if m < 1 {
        return Err(CycError::ArityTooSmall("recursion needs m >= 1".into()));
    }
    z.validate()?;
    let total = n + m;
    let tag = match flavor {
        Flavor::Gamma => Projector::PPlus,
        Flavor::Beta => Projector::P1,
    };

    let main = match flavor {
        Flavor::Gamma => gamma(total, z, Route::Explicit)?,
        Flavor::Beta => beta(total, z, Route::Explicit)?,
    };

    // Glue gamma^n(z) (on the first n coordinates) to the (m+1)-fold
    // diagonal overlapping it in coordinate n, then re-project.
    let w = match flavor {
        Flavor::Gamma => gamma(n, z, Route::Explicit)?,
        Flavor::Beta => beta(n, z, Route::Explicit)?,
    };
    let w_up = pull_proj(&w, &(1..=n).collect::<Vec<_>>(), total)?;
    let gl = pull_proj(
        &diag_push(None, m + 1)?,
        &(n..=total).collect::<Vec<_>>(),
        total,
    )?;
    let glued = projector_power_apply(tag, total, &intersect(&w_up, &gl)?)?;

    let correction = match flavor {
        Flavor::Gamma => exterior(
            &gamma(n - 1, z, Route::Explicit)?,
            &gamma(m + 1, &PointArg::sym(Sym::E), Route::Explicit)?,
        ),
        Flavor::Beta => {
            let split = exterior(
                &beta(n - 1, z, Route::Explicit)?,
                &beta(m + 1, &PointArg::sym(Sym::E), Route::Explicit)?,
            );
            let extra = exterior(
                &beta_any(n - 1, &z.dot_e()),
                &big_b(m + 1)?,
            );
            split.add(&extra)?
        }
    };

    main.sub(&glued)?.sub(&correction)
}

/// beta via the explicit route, extended to n = 0 through the degree
/// convention (only reachable internally).
fn beta_any(n: u32, z: &PointArg) -> CycleExpr {
    if n == 0 {
        return gamma_explicit_any(0, z);
    }
    let mut out = gamma_explicit_any(n, z);
    let correction = gamma_explicit_any(n - 1, &z.dot_e());
    for i in 1..=n {
        out = out
            .sub(&pull_skipping(&correction, i, n).expect("valid skip"))
            .expect("ambient n");
    }
    out
}

/// The pullback of the degree-s Fourier component of the curve class,
/// expanded on C^(s+2): a global sign times B^(s+2) minus two families of
/// lower-order corrections supported off the full diagonal.
pub fn fourier_rhs(s: u32) -> Result<CycleExpr> {
    let n = s + 2;
    let b = big_b(n)?;

    let g_k4 = gamma_explicit_any(s + 1, &PointArg::k_plus_e(4));
    let mut corr1 = CycleExpr::zero(n);
    for j in 1..=n {
        corr1 = corr1.add(&pull_skipping(&g_k4, j, n)?)?;
    }
    corr1 = corr1.scale(&Poly::from_scalar(rat(s as i64 + 1, 2)));

    let g_k2 = gamma_explicit_any(s, &PointArg::k_plus_e(2));
    let mut corr2 = CycleExpr::zero(n);
    for j in 1..=n {
        for k in 1..=n {
            if k == j {
                continue;
            }
            let images: Vec<u32> = (1..=n).filter(|&i| i != j && i != k).collect();
            let pulled = pull_proj(&g_k2, &images, n)?;
            let e_at_k = pull_proj(&CycleExpr::point(Sym::E), &[k], n)?;
            corr2 = corr2.add(&intersect(&e_at_k, &pulled)?)?;
        }
    }
    corr2 = corr2.scale(&Poly::rat(1, 2));

    let inner = b.sub(&corr1)?.sub(&corr2)?;
    Ok(inner.scale(&Poly::int(if s % 2 == 0 { 1 } else { -1 })))
}

/// Cuts beta^n(z) out of C^(n+1) directly: adjoin a zeroth coordinate
/// carrying z, intersect with the n correspondences p1 spanning it against
/// each remaining coordinate, and push the zeroth coordinate away.
pub fn betaz_check(n: u32, z: &PointArg) -> Result<CycleExpr> {
    if n == 0 {
        return Err(CycError::ArityTooSmall("betaz needs n >= 1".into()));
    }
    z.validate()?;
    let total = n + 1;
    let mut acc = pull_proj(&z.as_expr(), &[1], total)?;
    let p1 = projector(Projector::P1);
    for j in 1..=n {
        acc = intersect(&acc, &pull_proj(&p1, &[1, j + 1], total)?)?;
    }
    push_proj(&acc, &(2..=total).collect::<Vec<_>>())
}

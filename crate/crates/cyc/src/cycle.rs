//! Cycle classes on cartesian powers of a fixed curve, in a calculus of
//! decorated set partitions.
//!
//! A monomial on C^n is a partition of {1, ..., n} into blocks, each block
//! carrying at most one zero-cycle decoration. A block {i1, ..., ik} with no
//! decoration is the diagonal "x_{i1} = ... = x_{ik}"; a decoration pins that
//! diagonal to a fixed zero-cycle (the base point e, the canonical class K,
//! or a formal point class z_j of degree d_j). A cycle expression is a finite
//! Q[g, d1, ...]-linear combination of monomials with a common ambient n.
//!
//! Products, pushforwards and pullbacks along coordinate projections, and
//! (co)restriction to diagonals all stay inside this span, which is what makes
//! every identity here decidable by normal form.

use crate::error::{CycError, Result};
use crate::poly::{int, Poly};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Zero-cycle decoration symbols, ordered e < K < z1 < z2 < ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    E,
    K,
    Z(u32),
}

impl Sym {
    /// Degree of the underlying zero-cycle: deg e = 1, deg K = 2g-2,
    /// deg z_j = d_j.
    pub fn degree(&self) -> Poly {
        match self {
            Sym::E => Poly::one(),
            Sym::K => Poly::g().scale(&int(2)).sub(&Poly::int(2)),
            Sym::Z(j) => Poly::d(*j),
        }
    }

    pub fn text(&self) -> String {
        match self {
            Sym::E => "e".into(),
            Sym::K => "K".into(),
            Sym::Z(j) => format!("z{j}"),
        }
    }
}

/// One block of a partition monomial: a sorted set of coordinate indices and
/// an optional decoration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    pub indices: Vec<u32>,
    pub dec: Option<Sym>,
}

impl Block {
    pub fn new(mut indices: Vec<u32>, dec: Option<Sym>) -> Self {
        indices.sort_unstable();
        Block { indices, dec }
    }
}

/// A decorated partition of {1, ..., n}; blocks are kept sorted by their
/// minimum element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    blocks: Vec<Block>,
}

impl Monomial {
    pub fn new(mut blocks: Vec<Block>) -> Self {
        for b in &mut blocks {
            b.indices.sort_unstable();
        }
        blocks.sort();
        Monomial { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Number of undecorated blocks; the dimension of the class.
    pub fn dim(&self) -> u32 {
        self.blocks.iter().filter(|b| b.dec.is_none()).count() as u32
    }

    /// Checks that the blocks partition exactly {1, ..., n}.
    pub fn is_partition_of(&self, n: u32) -> bool {
        let mut seen = vec![false; n as usize];
        for b in &self.blocks {
            for &i in &b.indices {
                if i == 0 || i > n || seen[(i - 1) as usize] {
                    return false;
                }
                seen[(i - 1) as usize] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Fewer blocks first, then lexicographic on the block list; undecorated
    /// blocks precede decorated ones with the same support.
    fn cmp(&self, other: &Self) -> Ordering {
        self.blocks
            .len()
            .cmp(&other.blocks.len())
            .then_with(|| self.blocks.cmp(&other.blocks))
    }
}

/// Exact cycle expression on C^n (n = `ambient`); the zero expression has an
/// empty term map. Ambient 0 is allowed and plays the role of the exterior
/// unit: its only monomial is the empty partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleExpr {
    ambient: u32,
    terms: BTreeMap<Monomial, Poly>,
}

impl CycleExpr {
    pub fn zero(ambient: u32) -> Self {
        CycleExpr {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    /// The class of C^n itself: every index an undecorated singleton.
    pub fn fundamental(ambient: u32) -> Self {
        let blocks = (1..=ambient)
            .map(|i| Block::new(vec![i], None))
            .collect();
        CycleExpr::from_monomial(ambient, Monomial::new(blocks), Poly::one())
    }

    /// The decorated point class on C^1.
    pub fn point(sym: Sym) -> Self {
        CycleExpr::from_monomial(
            1,
            Monomial::new(vec![Block::new(vec![1], Some(sym))]),
            Poly::one(),
        )
    }

    pub fn from_monomial(ambient: u32, m: Monomial, coeff: Poly) -> Self {
        debug_assert!(m.is_partition_of(ambient));
        let mut e = CycleExpr::zero(ambient);
        e.add_term(m, coeff);
        e
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &CycleExpr) -> Result<CycleExpr> {
        if self.ambient != other.ambient {
            return Err(CycError::AmbientMismatch(format!(
                "cannot add expressions on C^{} and C^{}",
                self.ambient, other.ambient
            )));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CycleExpr) -> Result<CycleExpr> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycleExpr {
        self.scale(&Poly::int(-1))
    }

    pub fn scale(&self, p: &Poly) -> CycleExpr {
        let mut out = CycleExpr::zero(self.ambient);
        if p.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(p));
        }
        out
    }

    /// True when every monomial consists solely of decorated blocks.
    pub fn is_zero_dimensional(&self) -> bool {
        self.terms.keys().all(|m| m.dim() == 0)
    }

    /// Rewrites every K decoration as (2g-2) times the base point. After this
    /// the only zero-cycle symbols left are e and the z_j.
    pub fn xi_normalize(&self) -> CycleExpr {
        let kdeg = Sym::K.degree();
        let mut out = CycleExpr::zero(self.ambient);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let blocks = m
                .blocks()
                .iter()
                .map(|b| {
                    if b.dec == Some(Sym::K) {
                        coeff = coeff.mul(&kdeg);
                        Block::new(b.indices.clone(), Some(Sym::E))
                    } else {
                        b.clone()
                    }
                })
                .collect();
            out.add_term(Monomial::new(blocks), coeff);
        }
        out
    }
}

impl fmt::Display for CycleExpr {
    /// Canonical text form, e.g. `1*diag(1,2) - 1*diag(1)*e@2 - 1*e@1*diag(2) @@2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 @@{}", self.ambient);
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (neg, coeff_text) = match c.factor_form() {
                crate::poly::FactorForm::Zero => continue,
                crate::poly::FactorForm::Single { neg, text } => (neg, text),
                crate::poly::FactorForm::Multi { text } => (false, format!("({text})")),
            };
            let mut parts = vec![coeff_text];
            for b in m.blocks() {
                parts.push(block_text(b));
            }
            let body = parts.join("*");
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        write!(f, " @@{}", self.ambient)
    }
}

fn block_text(b: &Block) -> String {
    let idx = |sep: &str| {
        b.indices
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    };
    match (&b.dec, b.indices.len()) {
        (None, _) => format!("diag({})", idx(",")),
        (Some(s), 1) => format!("{}@{}", s.text(), b.indices[0]),
        (Some(s), _) => format!("{}@{{{}}}", s.text(), idx(",")),
    }
}

/// Exterior product: place `b` in the coordinates after `a`.
pub fn exterior(a: &CycleExpr, b: &CycleExpr) -> CycleExpr {
    let shift = a.ambient;
    let mut out = CycleExpr::zero(a.ambient + b.ambient);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let mut blocks = ma.blocks().to_vec();
            for blk in mb.blocks() {
                blocks.push(Block::new(
                    blk.indices.iter().map(|i| i + shift).collect(),
                    blk.dec,
                ));
            }
            out.add_term(Monomial::new(blocks), ca.mul(cb));
        }
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Product of two monomials on C^n.
///
/// Overlay the spanning paths of all blocks of both factors as a multigraph
/// on {1, ..., n}. Each connected component becomes one block of the result;
/// with t the component's first Betti number and D the multiset of inherited
/// decorations, the component contributes nothing if t + |D| >= 2 (excess
/// self-intersection collapses the class), picks up a -K decoration if t = 1,
/// keeps its unique decoration if |D| = 1, and stays undecorated otherwise.
fn intersect_monomials(n: u32, a: &Monomial, b: &Monomial) -> Option<(Monomial, i64)> {
    let n = n as usize;
    let mut uf = UnionFind::new(n);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for m in [a, b] {
        for blk in m.blocks() {
            for w in blk.indices.windows(2) {
                let (u, v) = ((w[0] - 1) as usize, (w[1] - 1) as usize);
                edges.push((u, v));
                uf.union(u, v);
            }
        }
    }

    let mut vertices: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for i in 0..n {
        let r = uf.find(i);
        vertices.entry(r).or_default().push(i as u32 + 1);
    }
    let mut edge_count: BTreeMap<usize, usize> = BTreeMap::new();
    for (u, _) in edges {
        *edge_count.entry(uf.find(u)).or_insert(0) += 1;
    }
    let mut decs: BTreeMap<usize, Vec<Sym>> = BTreeMap::new();
    for m in [a, b] {
        for blk in m.blocks() {
            if let Some(s) = blk.dec {
                let r = uf.find((blk.indices[0] - 1) as usize);
                decs.entry(r).or_default().push(s);
            }
        }
    }

    let mut sign = 1i64;
    let mut blocks = Vec::with_capacity(vertices.len());
    for (root, members) in vertices {
        let e = edge_count.get(&root).copied().unwrap_or(0);
        let t = e + 1 - members.len();
        let d = decs.get(&root).map(|v| v.len()).unwrap_or(0);
        let dec = match (t, d) {
            (0, 0) => None,
            (0, 1) => Some(decs[&root][0]),
            (1, 0) => {
                sign = -sign;
                Some(Sym::K)
            }
            _ => return None,
        };
        blocks.push(Block::new(members, dec));
    }
    Some((Monomial::new(blocks), sign))
}

/// Intersection product on a common ambient power.
pub fn intersect(a: &CycleExpr, b: &CycleExpr) -> Result<CycleExpr> {
    if a.ambient != b.ambient {
        return Err(CycError::AmbientMismatch(format!(
            "cannot intersect expressions on C^{} and C^{}",
            a.ambient, b.ambient
        )));
    }
    let mut out = CycleExpr::zero(a.ambient);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if let Some((m, sign)) = intersect_monomials(a.ambient, ma, mb) {
                out.add_term(m, ca.mul(cb).scale(&int(sign)));
            }
        }
    }
    Ok(out)
}

fn check_keep(keep: &[u32], ambient: u32) -> Result<()> {
    for w in keep.windows(2) {
        if w[0] >= w[1] {
            return Err(CycError::IndexOutOfRange(
                "kept indices must be strictly increasing".into(),
            ));
        }
    }
    if keep.iter().any(|&i| i == 0 || i > ambient) {
        return Err(CycError::IndexOutOfRange(format!(
            "kept indices must lie in 1..={ambient}"
        )));
    }
    Ok(())
}

/// Pushforward along the projection onto the coordinates in `keep`
/// (strictly increasing). Dropped indices integrate out: an undecorated
/// singleton kills the term (positive-dimensional fibers), a decorated
/// singleton contributes its degree, and an index inside a larger block
/// simply disappears.
pub fn push_proj(w: &CycleExpr, keep: &[u32]) -> Result<CycleExpr> {
    check_keep(keep, w.ambient)?;
    let rename: BTreeMap<u32, u32> = keep
        .iter()
        .enumerate()
        .map(|(t, &i)| (i, t as u32 + 1))
        .collect();
    let mut out = CycleExpr::zero(keep.len() as u32);
    'term: for (m, c) in &w.terms {
        let mut coeff = c.clone();
        let mut blocks = Vec::new();
        for b in m.blocks() {
            let kept: Vec<u32> = b
                .indices
                .iter()
                .filter_map(|i| rename.get(i).copied())
                .collect();
            if kept.is_empty() {
                match b.dec {
                    None => continue 'term,
                    Some(s) => coeff = coeff.mul(&s.degree()),
                }
            } else {
                blocks.push(Block::new(kept, b.dec));
            }
        }
        out.add_term(Monomial::new(blocks), coeff);
    }
    Ok(out)
}

/// Pullback along the projection C^n -> C^m determined by `images`
/// (the i-th source coordinate reads coordinate images[i-1] of C^n).
/// Coordinates not in the image become free undecorated singletons.
pub fn pull_proj(w: &CycleExpr, images: &[u32], ambient: u32) -> Result<CycleExpr> {
    if images.len() != w.ambient as usize {
        return Err(CycError::ArityMismatch(format!(
            "map lists {} images for an expression on C^{}",
            images.len(),
            w.ambient
        )));
    }
    let mut seen = BTreeMap::new();
    for (i, &im) in images.iter().enumerate() {
        if im == 0 || im > ambient {
            return Err(CycError::IndexOutOfRange(format!(
                "image {im} outside 1..={ambient}"
            )));
        }
        if seen.insert(im, i).is_some() {
            return Err(CycError::NonInjectiveMap(format!(
                "index {im} hit twice"
            )));
        }
    }
    let mut out = CycleExpr::zero(ambient);
    for (m, c) in &w.terms {
        let mut blocks: Vec<Block> = m
            .blocks()
            .iter()
            .map(|b| {
                Block::new(
                    b.indices
                        .iter()
                        .map(|&i| images[(i - 1) as usize])
                        .collect(),
                    b.dec,
                )
            })
            .collect();
        for i in 1..=ambient {
            if !seen.contains_key(&i) {
                blocks.push(Block::new(vec![i], None));
            }
        }
        out.add_term(Monomial::new(blocks), c.clone());
    }
    Ok(out)
}

/// Image of a point class (or of the whole curve, for `sym = None`) under the
/// small diagonal embedding C -> C^n.
pub fn diag_push(sym: Option<Sym>, n: u32) -> Result<CycleExpr> {
    if n == 0 {
        return Err(CycError::ArityTooSmall(
            "diagonal pushforward needs ambient >= 1".into(),
        ));
    }
    Ok(CycleExpr::from_monomial(
        n,
        Monomial::new(vec![Block::new((1..=n).collect(), sym)]),
        Poly::one(),
    ))
}

/// Linear extension of `diag_push` to expressions on C^1.
pub fn diag_push_expr(z: &CycleExpr, n: u32) -> Result<CycleExpr> {
    if z.ambient != 1 {
        return Err(CycError::AmbientMismatch(format!(
            "diagonal pushforward starts from C^1, got C^{}",
            z.ambient
        )));
    }
    if n == 0 {
        return Err(CycError::ArityTooSmall(
            "diagonal pushforward needs ambient >= 1".into(),
        ));
    }
    let mut out = CycleExpr::zero(n);
    for (m, c) in &z.terms {
        let dec = m.blocks()[0].dec;
        out.add_term(
            Monomial::new(vec![Block::new((1..=n).collect(), dec)]),
            c.clone(),
        );
    }
    Ok(out)
}

/// Pullback along the small diagonal C -> C^n: the self-intersection data of
/// each monomial collapses exactly as in the product rule, with excess
/// e = n - #blocks playing the role of the Betti number.
pub fn diag_pull(w: &CycleExpr) -> Result<CycleExpr> {
    if w.ambient == 0 {
        return Err(CycError::ArityTooSmall(
            "diagonal pullback needs ambient >= 1".into(),
        ));
    }
    let mut out = CycleExpr::zero(1);
    for (m, c) in &w.terms {
        let excess = (w.ambient as usize) - m.blocks().len();
        let decs: Vec<Sym> = m.blocks().iter().filter_map(|b| b.dec).collect();
        let (dec, sign) = match (excess, decs.len()) {
            (0, 0) => (None, 1),
            (0, 1) => (Some(decs[0]), 1),
            (1, 0) => (Some(Sym::K), -1),
            _ => continue,
        };
        out.add_term(
            Monomial::new(vec![Block::new(vec![1], dec)]),
            c.scale(&int(sign)),
        );
    }
    Ok(out)
}

/// Total degree of a zero-dimensional expression: the pushforward to C^0.
pub fn degree(w: &CycleExpr) -> Result<Poly> {
    let mut out = Poly::zero();
    for (m, c) in &w.terms {
        if m.dim() > 0 {
            return Err(CycError::NotZeroDimensional(format!(
                "monomial of dimension {} has no degree",
                m.dim()
            )));
        }
        let mut term = c.clone();
        for b in m.blocks() {
            term = term.mul(&b.dec.unwrap().degree());
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Composition of correspondences: `tau` from C^a to C^b, then `rho` from
/// C^b to C^c, realized on C^(a+b+c).
pub fn corr_compose(
    rho: &CycleExpr,
    tau: &CycleExpr,
    arities: (u32, u32, u32),
) -> Result<CycleExpr> {
    let (a, b, c) = arities;
    if tau.ambient != a + b {
        return Err(CycError::ArityMismatch(format!(
            "first correspondence lives on C^{}, expected C^{}",
            tau.ambient,
            a + b
        )));
    }
    if rho.ambient != b + c {
        return Err(CycError::ArityMismatch(format!(
            "second correspondence lives on C^{}, expected C^{}",
            rho.ambient,
            b + c
        )));
    }
    let total = a + b + c;
    let tau_up = pull_proj(tau, &(1..=a + b).collect::<Vec<_>>(), total)?;
    let rho_up = pull_proj(rho, &(a + 1..=total).collect::<Vec<_>>(), total)?;
    let prod = intersect(&tau_up, &rho_up)?;
    let keep: Vec<u32> = (1..=a).chain(a + b + 1..=total).collect();
    push_proj(&prod, &keep)
}

/// Action of a correspondence rho on C^(a+b) on a class w on C^a, landing on
/// C^b.
pub fn corr_apply(rho: &CycleExpr, w: &CycleExpr) -> Result<CycleExpr> {
    let a = w.ambient;
    if rho.ambient < a {
        return Err(CycError::ArityMismatch(format!(
            "correspondence on C^{} cannot act on C^{}",
            rho.ambient, a
        )));
    }
    let total = rho.ambient;
    let w_up = pull_proj(w, &(1..=a).collect::<Vec<_>>(), total)?;
    let prod = intersect(&w_up, rho)?;
    push_proj(&prod, &(a + 1..=total).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(n: u32) -> CycleExpr {
        diag_push(None, n).unwrap()
    }

    #[test]
    fn pairwise_diagonals_close_up_to_minus_k() {
        // (x1=x2) . (x2=x3) . (x1=x3) on C^3: the third factor adds a cycle
        // edge, so the triple intersection is -K on the small diagonal.
        let d12 = pull_proj(&diag(2), &[1, 2], 3).unwrap();
        let d23 = pull_proj(&diag(2), &[2, 3], 3).unwrap();
        let d13 = pull_proj(&diag(2), &[1, 3], 3).unwrap();
        let prod = intersect(&intersect(&d12, &d23).unwrap(), &d13).unwrap();
        let expected = diag_push(Some(Sym::K), 3).unwrap().neg();
        assert_eq!(prod, expected);
    }

    #[test]
    fn diagonal_self_intersection() {
        let d = diag(2);
        let expected = diag_push(Some(Sym::K), 2).unwrap().neg();
        assert_eq!(intersect(&d, &d).unwrap(), expected);
    }

    #[test]
    fn pushforward_rules() {
        // K pinned on coordinate 2, diagonal on {1,3}: projecting away 2
        // integrates out deg K = 2g-2.
        let m = Monomial::new(vec![
            Block::new(vec![1, 3], None),
            Block::new(vec![2], Some(Sym::K)),
        ]);
        let w = CycleExpr::from_monomial(3, m, Poly::one());
        let pushed = push_proj(&w, &[1, 3]).unwrap();
        let expected = diag(2).scale(&Sym::K.degree());
        assert_eq!(pushed, expected);

        // Undecorated singleton dropped: positive-dimensional fiber, zero.
        let fund = CycleExpr::fundamental(2);
        assert!(push_proj(&fund, &[2]).unwrap().is_zero());

        // Decorated singleton dropped: contributes deg e = 1.
        let e_times_c = exterior(&CycleExpr::point(Sym::E), &CycleExpr::fundamental(1));
        assert_eq!(
            push_proj(&e_times_c, &[2]).unwrap(),
            CycleExpr::fundamental(1)
        );
    }

    #[test]
    fn pullback_fills_missing_coordinates() {
        let e = CycleExpr::point(Sym::E);
        let pulled = pull_proj(&e, &[2], 2).unwrap();
        let expected = exterior(&CycleExpr::fundamental(1), &CycleExpr::point(Sym::E));
        assert_eq!(pulled, expected);
        assert!(matches!(
            pull_proj(&diag(2), &[1, 1], 2),
            Err(CycError::NonInjectiveMap(_))
        ));
    }

    #[test]
    fn diagonal_pull_cases() {
        // Delta restricted to the small diagonal: excess 1, so -K.
        let got = diag_pull(&diag(2)).unwrap();
        assert_eq!(got, CycleExpr::point(Sym::K).neg());
        // Fundamental class restricts to the fundamental class.
        assert_eq!(
            diag_pull(&CycleExpr::fundamental(2)).unwrap(),
            CycleExpr::fundamental(1)
        );
        // Decorated diagonal has excess and a decoration: collapses to zero.
        let dec_diag = diag_push(Some(Sym::E), 2).unwrap();
        assert!(diag_pull(&dec_diag).unwrap().is_zero());
    }

    #[test]
    fn degree_of_zero_cycles() {
        let w = exterior(&CycleExpr::point(Sym::K), &CycleExpr::point(Sym::Z(1)));
        let d = degree(&w).unwrap();
        let expected = Sym::K.degree().mul(&Poly::d(1));
        assert_eq!(d, expected);
        assert!(matches!(
            degree(&CycleExpr::fundamental(1)),
            Err(CycError::NotZeroDimensional(_))
        ));
    }

    #[test]
    fn xi_normalize_rewrites_k() {
        let w = CycleExpr::point(Sym::K);
        assert_eq!(
            w.xi_normalize(),
            CycleExpr::point(Sym::E).scale(&Sym::K.degree())
        );
    }

    #[test]
    fn grading_is_additive_under_intersection() {
        // dim(a.b) = dim a + dim b - n on every surviving monomial.
        let a = diag(3);
        let b = pull_proj(&CycleExpr::point(Sym::E), &[2], 3).unwrap();
        let prod = intersect(&a, &b).unwrap();
        for (m, _) in prod.terms() {
            assert_eq!(m.dim() + 3, a.terms().next().unwrap().0.dim() + 2);
        }
    }

    #[test]
    fn canonical_text() {
        assert_eq!(CycleExpr::fundamental(1).to_string(), "1*diag(1) @@1");
        assert_eq!(CycleExpr::zero(2).to_string(), "0 @@2");
        let gamma2_e = diag_push(Some(Sym::E), 2)
            .unwrap()
            .sub(&exterior(&CycleExpr::point(Sym::E), &CycleExpr::point(Sym::E)))
            .unwrap();
        assert_eq!(gamma2_e.to_string(), "1*e@{1,2} - 1*e@1*e@2 @@2");
    }

    #[test]
    fn ambient_zero_is_the_exterior_unit() {
        let unit = CycleExpr::from_monomial(0, Monomial::new(vec![]), Poly::one());
        let w = diag(2);
        assert_eq!(exterior(&unit, &w), w);
        assert_eq!(exterior(&w, &unit), w);
        assert_eq!(degree(&unit).unwrap(), Poly::one());
    }
}

//! Pontryagin-word model for cycle classes on the Jacobian.
//!
//! Images of curve-power classes under the summation map live in the algebra
//! generated (under Pontryagin product) by the graded components of a few
//! basic classes: the curve class itself, and the pushforwards of the base
//! point, the canonical class, and the formal point classes. Words in those
//! components, with no relations imposed, are a free model: any identity that
//! already holds word-by-word holds on every Jacobian. The genus enters here
//! as a concrete integer because it bounds the grading ranges.

use crate::cycle::{CycleExpr, Sym};
use crate::error::{CycError, Result};
use crate::poly::Poly;
use num::bigint::BigInt;
use num::rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;

/// Graded atom: one Beauville component of a basic class.
///
/// `Cls(s)` is the degree-s component of the curve class (dimension 1,
/// 0 <= s <= g-1); `Del(s)`, `Kap(s)`, `ZPush(j, s)` are components of the
/// pushed-forward base point, canonical class, and j-th formal point class
/// (dimension 0; ranges 2..=g, 1..=g, 1..=g).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JacAtom {
    Cls(u32),
    Del(u32),
    Kap(u32),
    ZPush(u32, u32),
}

impl JacAtom {
    pub fn dim(&self) -> u32 {
        match self {
            JacAtom::Cls(_) => 1,
            _ => 0,
        }
    }

    pub fn index(&self) -> u32 {
        match self {
            JacAtom::Cls(s) | JacAtom::Del(s) | JacAtom::Kap(s) | JacAtom::ZPush(_, s) => *s,
        }
    }

    pub fn text(&self) -> String {
        match self {
            JacAtom::Cls(s) => format!("CLS_{s}"),
            JacAtom::Del(s) => format!("DEL_{s}"),
            JacAtom::Kap(s) => format!("KAP_{s}"),
            JacAtom::ZPush(j, s) => format!("ZP{j}_{s}"),
        }
    }
}

/// Pontryagin word: a sorted multiset of atoms. The empty word is the class
/// of the origin, the unit for the Pontryagin product.
pub type JacWord = Vec<JacAtom>;

fn word_text(w: &JacWord) -> String {
    if w.is_empty() {
        "[0]".into()
    } else {
        w.iter().map(|a| a.text()).collect::<Vec<_>>().join("*")
    }
}

/// Exact linear combination of Pontryagin words at a fixed concrete genus.
/// Coefficients are polynomials so formal point degrees d_j survive; the
/// genus itself is always substituted away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacExpr {
    genus: i64,
    terms: BTreeMap<JacWord, Poly>,
}

impl JacExpr {
    pub fn zero(genus: i64) -> Self {
        JacExpr {
            genus,
            terms: BTreeMap::new(),
        }
    }

    /// The class of the origin.
    pub fn unit(genus: i64) -> Self {
        JacExpr::from_term(genus, vec![], Poly::one())
    }

    pub fn atom(genus: i64, a: JacAtom) -> Self {
        JacExpr::from_term(genus, vec![a], Poly::one())
    }

    pub fn from_term(genus: i64, mut word: JacWord, coeff: Poly) -> Self {
        word.sort_unstable();
        let mut e = JacExpr::zero(genus);
        e.add_term(word, coeff);
        e
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JacWord, &Poly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mut word: JacWord, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        word.sort_unstable();
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
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

    fn check_genus(&self, other: &JacExpr) -> Result<()> {
        if self.genus != other.genus {
            return Err(CycError::GenusMismatch(format!(
                "genus {} vs {}",
                self.genus, other.genus
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &JacExpr) -> Result<JacExpr> {
        self.check_genus(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &JacExpr) -> Result<JacExpr> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> JacExpr {
        self.scale(&Poly::int(-1))
    }

    pub fn scale(&self, p: &Poly) -> JacExpr {
        let mut out = JacExpr::zero(self.genus);
        if p.is_zero() {
            return out;
        }
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.mul(p));
        }
        out
    }

    /// Restriction to the words of total dimension `dim` and total grading
    /// index `s`.
    pub fn beauville_component(&self, dim: u32, s: u32) -> JacExpr {
        let mut out = JacExpr::zero(self.genus);
        for (w, c) in &self.terms {
            let d: u32 = w.iter().map(|a| a.dim()).sum();
            let idx: u32 = w.iter().map(|a| a.index()).sum();
            if d == dim && idx == s {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    /// Rewrites every canonical-class atom through e = xi: KAP_1 vanishes,
    /// KAP_s becomes (2g-2) DEL_s for s >= 2.
    pub fn xi_map(&self) -> JacExpr {
        let factor = Poly::int(2 * self.genus - 2);
        let mut out = JacExpr::zero(self.genus);
        'term: for (w, c) in &self.terms {
            let mut coeff = c.clone();
            let mut word = Vec::with_capacity(w.len());
            for a in w {
                match a {
                    JacAtom::Kap(1) => continue 'term,
                    JacAtom::Kap(s) => {
                        coeff = coeff.mul(&factor);
                        word.push(JacAtom::Del(*s));
                    }
                    other => word.push(*other),
                }
            }
            out.add_term(word, coeff);
        }
        out
    }
}

impl fmt::Display for JacExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let (neg, coeff_text) = match c.factor_form() {
                crate::poly::FactorForm::Zero => continue,
                crate::poly::FactorForm::Single { neg, text } => (neg, text),
                crate::poly::FactorForm::Multi { text } => (false, format!("({text})")),
            };
            let body = format!("{}*{}", coeff_text, word_text(w));
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}

/// Pontryagin product: multiset union of words, genus must agree.
pub fn pont_mul(a: &JacExpr, b: &JacExpr) -> Result<JacExpr> {
    a.check_genus(b)?;
    let mut out = JacExpr::zero(a.genus);
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            out.add_term(w, ca.mul(cb));
        }
    }
    Ok(out)
}

/// Pushforward along multiplication by N on the Jacobian: a word scales by
/// N^(2 dim + index) per atom.
pub fn mult_push(a: &JacExpr, n: i64) -> JacExpr {
    let base = BigInt::from(n);
    let mut out = JacExpr::zero(a.genus);
    for (w, c) in a.terms() {
        let weight: u32 = w.iter().map(|at| 2 * at.dim() + at.index()).sum();
        let factor = BigRational::from_integer(base.pow(weight));
        out.add_term(w.clone(), c.scale(&factor));
    }
    out
}

/// Index range of the graded components of a pushed-forward zero-cycle.
fn zero_cycle_range(sym: Sym, g: i64) -> std::ops::RangeInclusive<u32> {
    match sym {
        Sym::E => 2..=g as u32,
        Sym::K | Sym::Z(_) => 1..=g as u32,
    }
}

/// Pushforward of a curve-power class along the summation map to the
/// Jacobian, at concrete genus g.
///
/// Each block maps independently: an undecorated block of size b spreads the
/// curve class over its graded components weighted by b^(2+s); a block
/// decorated by a zero-cycle of degree d contributes d times the origin plus
/// its graded components weighted by b^s. The genus bounds every range.
pub fn sigma_push(w: &CycleExpr, g: i64) -> Result<JacExpr> {
    if g < 2 {
        return Err(CycError::GenusTooSmall(format!(
            "summation pushforward needs genus >= 2, got {g}"
        )));
    }
    let mut out = JacExpr::zero(g);
    for (m, c) in w.terms() {
        let coeff = c.subst_genus(g);
        let mut acc = JacExpr::from_term(g, vec![], coeff);
        for b in m.blocks() {
            let size = b.indices.len() as i64;
            let factor = match b.dec {
                None => {
                    let mut f = JacExpr::zero(g);
                    for s in 0..=(g as u32 - 1) {
                        let weight =
                            BigRational::from_integer(BigInt::from(size).pow(2 + s));
                        f.add_term(vec![JacAtom::Cls(s)], Poly::from_scalar(weight));
                    }
                    f
                }
                Some(sym) => {
                    let deg = sym.degree().subst_genus(g);
                    let mut f = JacExpr::from_term(g, vec![], deg);
                    for s in zero_cycle_range(sym, g) {
                        let weight = BigRational::from_integer(BigInt::from(size).pow(s));
                        let atom = match sym {
                            Sym::E => JacAtom::Del(s),
                            Sym::K => JacAtom::Kap(s),
                            Sym::Z(j) => JacAtom::ZPush(j, s),
                        };
                        f.add_term(vec![atom], Poly::from_scalar(weight));
                    }
                    f
                }
            };
            acc = pont_mul(&acc, &factor)?;
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

/// Summation pushforward of the n-fold modified diagonal, optionally
/// discarding every word that still contains a base-point component.
pub fn zhang_expand(g: i64, delta_zero: bool) -> Result<JacExpr> {
    let gamma3 = crate::ops::big_gamma(3)?;
    let full = sigma_push(&gamma3, g)?;
    if !delta_zero {
        return Ok(full);
    }
    let mut out = JacExpr::zero(g);
    for (w, c) in full.terms() {
        if w.iter().any(|a| matches!(a, JacAtom::Del(_))) {
            continue;
        }
        out.add_term(w.clone(), c.clone());
    }
    Ok(out)
}

/// The odd part of the curve class, doubled: the obstruction measured by the
/// harmonic-volume side of the story.
pub fn ceresa_class(g: i64) -> Result<JacExpr> {
    if g < 2 {
        return Err(CycError::GenusTooSmall(format!(
            "ceresa class needs genus >= 2, got {g}"
        )));
    }
    let mut out = JacExpr::zero(g);
    for s in (1..=(g as u32 - 1)).step_by(2) {
        out.add_term(vec![JacAtom::Cls(s)], Poly::int(2));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{big_gamma, gamma, PointArg, Route};

    fn sigma_gamma_e(s: u32, g: i64) -> JacExpr {
        let w = gamma(s, &PointArg::sym(Sym::E), Route::Explicit).unwrap();
        sigma_push(&w, g).unwrap()
    }

    #[test]
    fn star_product_is_multiset_union() {
        let g = 4;
        let a = JacExpr::atom(g, JacAtom::Cls(1));
        let b = JacExpr::atom(g, JacAtom::Del(2));
        let ab = pont_mul(&a, &b).unwrap();
        assert_eq!(
            ab,
            JacExpr::from_term(g, vec![JacAtom::Cls(1), JacAtom::Del(2)], Poly::one())
        );
        assert_eq!(ab.to_string(), "1*CLS_1*DEL_2");
        let mismatch = JacExpr::atom(5, JacAtom::Cls(1));
        assert!(matches!(
            pont_mul(&a, &mismatch),
            Err(CycError::GenusMismatch(_))
        ));
    }

    #[test]
    fn multiplication_weights() {
        let g = 3;
        let w = JacExpr::from_term(g, vec![JacAtom::Cls(1), JacAtom::Del(2)], Poly::one());
        // weight = (2 + 1) + (0 + 2) = 5.
        assert_eq!(
            mult_push(&w, 2),
            w.scale(&Poly::int(32))
        );
        assert_eq!(mult_push(&JacExpr::unit(g), 7), JacExpr::unit(g));
    }

    #[test]
    fn sigma_of_gamma2_e_matches_the_doubling_identity() {
        // sigma of the 2-fold diagonal operator on e: [2]-push of the reduced
        // point class, minus twice the class, minus its star square.
        let g = 5;
        let got = sigma_gamma_e(2, g);
        let mut delta = JacExpr::zero(g);
        for s in 2..=g as u32 {
            delta.add_term(vec![JacAtom::Del(s)], Poly::one());
        }
        let expected = mult_push(&delta, 2)
            .sub(&delta.scale(&Poly::int(2)))
            .unwrap()
            .sub(&pont_mul(&delta, &delta).unwrap())
            .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn beauville_pure_components_collapse_to_factorials() {
        let g = 5;
        for s in 2..=4u32 {
            let comp = sigma_gamma_e(s, g).beauville_component(0, s);
            let mut fact = 1i64;
            for i in 2..=s as i64 {
                fact *= i;
            }
            let expected = JacExpr::from_term(g, vec![JacAtom::Del(s)], Poly::int(fact));
            assert_eq!(comp, expected, "component mismatch at s={s}");
        }
        // s = 1: the degree-1 component is trivial, and gamma^1(e) = 0.
        assert!(sigma_gamma_e(1, g).is_zero());
    }

    #[test]
    fn zhang_coefficients_follow_the_ternary_formula() {
        for g in 2..=6i64 {
            let z = zhang_expand(g, true).unwrap();
            for s in 0..=(g as u32 - 1) {
                let expected = BigInt::from(3).pow(2 + s)
                    - BigInt::from(3) * BigInt::from(2).pow(2 + s)
                    + BigInt::from(3);
                let comp = z.beauville_component(1, s);
                let want = JacExpr::from_term(
                    g,
                    vec![JacAtom::Cls(s)],
                    Poly::from_scalar(BigRational::from_integer(expected)),
                );
                assert_eq!(comp, want, "coefficient mismatch at g={g}, s={s}");
            }
            // Nothing outside the pure curve-class words survives the filter.
            let total: usize = z.terms().count();
            assert!(total <= g as usize);
        }
    }

    #[test]
    fn sigma_intertwines_xi_normalization() {
        let g = 4;
        let w = crate::cycle::diag_push(Some(Sym::K), 2).unwrap();
        let lhs = sigma_push(&w.xi_normalize(), g).unwrap();
        let rhs = sigma_push(&w, g).unwrap().xi_map();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ceresa_is_twice_the_odd_part() {
        let g = 5;
        let sigma_c = sigma_push(&CycleExpr::fundamental(1), g).unwrap();
        let expected = sigma_c.sub(&mult_push(&sigma_c, -1)).unwrap();
        assert_eq!(ceresa_class(g).unwrap(), expected);
    }

    #[test]
    fn sigma_sends_exterior_to_star() {
        let g = 3;
        let a = big_gamma(2).unwrap();
        let b = crate::cycle::diag_push(Some(Sym::E), 2).unwrap();
        let ext = crate::cycle::exterior(&a, &b);
        let lhs = sigma_push(&ext, g).unwrap();
        let rhs = pont_mul(&sigma_push(&a, g).unwrap(), &sigma_push(&b, g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

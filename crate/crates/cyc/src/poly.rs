//! Exact coefficient arithmetic: rationals extended by the formal genus `g`
//! and formal point degrees `d1, d2, ...`.
//!
//! Coefficients of cycle expressions live in Q[g, d1, d2, ...]. Keeping `g`
//! symbolic means every verified identity holds for all genera at once;
//! substitution down to a concrete genus happens only at the Jacobian
//! boundary.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Scalar = BigRational;

pub fn rat(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Formal variable: the genus `g`, or the degree `d_j` of the j-th marked
/// point class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    G,
    D(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::G => write!(f, "g"),
            Var::D(j) => write!(f, "d{j}"),
        }
    }
}

/// Power product of variables, e.g. g^2*d1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(BTreeMap<Var, u32>);

impl Mono {
    pub fn unit() -> Self {
        Mono(BTreeMap::new())
    }

    pub fn var(v: Var) -> Self {
        let mut m = BTreeMap::new();
        m.insert(v, 1);
        Mono(m)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut m = self.0.clone();
        for (v, e) in &other.0 {
            *m.entry(*v).or_insert(0) += e;
        }
        Mono(m)
    }

    fn text(&self) -> String {
        self.0
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Polynomial in Q[g, d1, d2, ...] with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Scalar>,
}

/// How a polynomial renders when used as a multiplicative coefficient.
pub enum FactorForm {
    Zero,
    /// Single power product; `neg` carries the extracted sign, `text` the
    /// unsigned body ("1", "3/2", "d1", "2*g").
    Single { neg: bool, text: String },
    /// Sum of several terms; `text` is the full canonical form, to be wrapped
    /// in parentheses by the caller.
    Multi { text: String },
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::from_scalar(Scalar::one())
    }

    pub fn int(n: i64) -> Self {
        Poly::from_scalar(int(n))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Poly::from_scalar(rat(n, d))
    }

    pub fn from_scalar(c: Scalar) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert(Mono::unit(), c);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = Poly::default();
        p.terms.insert(Mono::var(v), Scalar::one());
        p
    }

    /// The genus variable g.
    pub fn g() -> Self {
        Poly::var(Var::G)
    }

    /// The formal degree d_j.
    pub fn d(j: u32) -> Self {
        Poly::var(Var::D(j))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_scalar().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Some(c) when the polynomial is the constant c (including 0).
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_unit() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn insert(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::default();
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Replace `v` by `value` everywhere.
    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::from_scalar(c.clone());
            for (mv, e) in &m.0 {
                if *mv == v {
                    term = term.mul(&value.pow(*e));
                } else {
                    let mut rest = Poly::default();
                    let mut mono = BTreeMap::new();
                    mono.insert(*mv, *e);
                    rest.terms.insert(Mono(mono), Scalar::one());
                    term = term.mul(&rest);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Substitute a concrete integer genus.
    pub fn subst_genus(&self, g: i64) -> Poly {
        self.substitute(Var::G, &Poly::int(g))
    }

    /// Evaluate to a rational when no variables remain after substituting g.
    pub fn eval_genus(&self, g: i64) -> Option<Scalar> {
        self.subst_genus(g).as_scalar()
    }

    /// Rendering for the coefficient slot of a cycle or Jacobian term.
    pub fn factor_form(&self) -> FactorForm {
        if self.is_zero() {
            return FactorForm::Zero;
        }
        if self.terms.len() > 1 {
            return FactorForm::Multi {
                text: self.to_string(),
            };
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let neg = c.is_negative();
        let abs = c.abs();
        let text = if m.is_unit() {
            abs.to_string()
        } else if abs.is_one() {
            m.text()
        } else {
            format!("{abs}*{}", m.text())
        };
        FactorForm::Single { neg, text }
    }
}

impl fmt::Display for Poly {
    /// Canonical text: terms in descending power-product order, unit rational
    /// parts omitted on non-constant terms ("2*g - 2", "1/2*g^2", "0").
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if m.is_unit() {
                abs.to_string()
            } else if abs.is_one() {
                m.text()
            } else {
                format!("{abs}*{}", m.text())
            };
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let p = Poly::g().scale(&int(2)).sub(&Poly::int(2));
        assert_eq!(p.to_string(), "2*g - 2");
        let q = Poly::g().pow(2).scale(&rat(1, 2));
        assert_eq!(q.to_string(), "1/2*g^2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p.sub(&p), Poly::zero());
        assert_eq!(p.mul(&Poly::zero()), Poly::zero());
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let p = Poly::g().mul(&Poly::d(1)).add(&Poly::int(3));
        let q = Poly::g().pow(2).sub(&Poly::d(1));
        let v = Poly::int(7);
        let lhs = p.mul(&q).substitute(Var::G, &v);
        let rhs = p.substitute(Var::G, &v).mul(&q.substitute(Var::G, &v));
        assert_eq!(lhs, rhs);
        let lhs = p.add(&q).substitute(Var::G, &v);
        let rhs = p.substitute(Var::G, &v).add(&q.substitute(Var::G, &v));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn genus_evaluation() {
        let p = Poly::g().scale(&int(2)).sub(&Poly::int(2));
        assert_eq!(p.eval_genus(3), Some(int(4)));
        let with_d = p.mul(&Poly::d(1));
        assert_eq!(with_d.eval_genus(3), None);
        assert_eq!(with_d.subst_genus(3), Poly::d(1).scale(&int(4)));
    }
}

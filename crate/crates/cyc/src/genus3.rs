//! Tautological ring bookkeeping at genus 3.
//!
//! Polynomials in the standard generators p1, p2, p3 (descending filtration)
//! and q1, q2 (divisor powers) with exact rational coefficients. At genus 3
//! two relations hold: 4 q2 = q1^2, and an expression eliminating p3 in terms
//! of p1, p2, q1, q2. `reduce` substitutes both, so a class vanishes in the
//! quotient iff its reduction is the zero polynomial.

use crate::error::{CycError, Result};
use crate::poly::{rat, Scalar};
use num::traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponents of p1, p2, p3, q1, q2, in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TMono {
    pub p: [u32; 3],
    pub q: [u32; 2],
}

impl TMono {
    fn mul(&self, other: &TMono) -> TMono {
        TMono {
            p: [
                self.p[0] + other.p[0],
                self.p[1] + other.p[1],
                self.p[2] + other.p[2],
            ],
            q: [self.q[0] + other.q[0], self.q[1] + other.q[1]],
        }
    }

    /// Display precedence: higher p-generators dominate, ties broken by the
    /// q-exponents ascending.
    fn display_key(&self) -> (u32, u32, u32, u32, u32) {
        (self.p[2], self.p[1], self.p[0], self.q[0], self.q[1])
    }

    fn text(&self) -> String {
        let mut parts = Vec::new();
        for (i, &f) in self.q.iter().enumerate() {
            if f > 0 {
                parts.push(power_text(&format!("q{}", i + 1), f));
            }
        }
        for (i, &e) in self.p.iter().enumerate() {
            if e > 0 {
                parts.push(power_text(&format!("p{}", i + 1), e));
            }
        }
        parts.join("*")
    }
}

fn power_text(base: &str, e: u32) -> String {
    if e == 1 {
        base.into()
    } else {
        format!("{base}^{e}")
    }
}

/// Exact polynomial in p1, p2, p3, q1, q2.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TautPoly {
    terms: BTreeMap<TMono, Scalar>,
}

impl TautPoly {
    pub fn zero() -> Self {
        TautPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut t = TautPoly::default();
        if !c.is_zero() {
            t.terms.insert(TMono::default(), c);
        }
        t
    }

    pub fn one() -> Self {
        TautPoly::constant(Scalar::one())
    }

    /// Generator p_i, 1 <= i <= 3.
    pub fn p(i: u32) -> Result<Self> {
        if !(1..=3).contains(&i) {
            return Err(CycError::IndexOutOfRange(format!(
                "p{i} is outside the genus-3 generator range p1..p3"
            )));
        }
        let mut m = TMono::default();
        m.p[(i - 1) as usize] = 1;
        Ok(TautPoly::from_term(m, Scalar::one()))
    }

    /// Generator q_i, 1 <= i <= 2.
    pub fn q(i: u32) -> Result<Self> {
        if !(1..=2).contains(&i) {
            return Err(CycError::IndexOutOfRange(format!(
                "q{i} is outside the genus-3 generator range q1..q2"
            )));
        }
        let mut m = TMono::default();
        m.q[(i - 1) as usize] = 1;
        Ok(TautPoly::from_term(m, Scalar::one()))
    }

    pub fn from_term(m: TMono, c: Scalar) -> Self {
        let mut t = TautPoly::default();
        t.add_term(m, c);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TMono, &Scalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: TMono, c: Scalar) {
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

    pub fn add(&self, other: &TautPoly) -> TautPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TautPoly) -> TautPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TautPoly {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> TautPoly {
        let mut out = TautPoly::default();
        if c.is_zero() {
            return out;
        }
        for (m, k) in &self.terms {
            out.terms.insert(*m, k * c);
        }
        out
    }

    pub fn mul(&self, other: &TautPoly) -> TautPoly {
        let mut out = TautPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> TautPoly {
        let mut out = TautPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Normal form modulo the genus-3 relations: q2 -> q1^2/4, then
    /// p3 -> p2 q1 / 2 - p1 q1^2 / 8. The image contains neither q2 nor p3,
    /// so reduce is idempotent; it is linear by construction.
    pub fn reduce(&self) -> TautPoly {
        let q2_image = {
            let mut m = TMono::default();
            m.q[0] = 2;
            TautPoly::from_term(m, rat(1, 4))
        };
        let p3_image = {
            let mut a = TMono::default();
            a.p[1] = 1;
            a.q[0] = 1;
            let mut b = TMono::default();
            b.p[0] = 1;
            b.q[0] = 2;
            TautPoly::from_term(a, rat(1, 2)).add(&TautPoly::from_term(b, rat(-1, 8)))
        };
        let mut out = TautPoly::zero();
        for (m, c) in &self.terms {
            let mut base = TMono::default();
            base.p[0] = m.p[0];
            base.p[1] = m.p[1];
            base.q[0] = m.q[0];
            let mut term = TautPoly::from_term(base, c.clone());
            term = term.mul(&p3_image.pow(m.p[2]));
            term = term.mul(&q2_image.pow(m.q[1]));
            out = out.add(&term);
        }
        out
    }
}

impl fmt::Display for TautPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut entries: Vec<(&TMono, &Scalar)> = self.terms.iter().collect();
        entries.sort_by(|a, b| {
            let (ka, kb) = (a.0.display_key(), b.0.display_key());
            (kb.0, kb.1, kb.2)
                .cmp(&(ka.0, ka.1, ka.2))
                .then((ka.3, ka.4).cmp(&(kb.3, kb.4)))
        });
        let mut first = true;
        for (m, c) in entries {
            let neg = c.is_negative();
            let abs = c.abs();
            let vars = m.text();
            let body = if vars.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                vars
            } else {
                format!("{abs}*{vars}")
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

/// The obstruction class tested at genus 3: eight times the degree-2 Fourier
/// component of the curve class in its xi-normalized embedding, expanded in
/// the p/q generators as 8 (p3 - q1 p2 / 2 + q1^2 p1 / 8).
pub fn class_c2_xi() -> TautPoly {
    let p1 = TautPoly::p(1).expect("in range");
    let p2 = TautPoly::p(2).expect("in range");
    let p3 = TautPoly::p(3).expect("in range");
    let q1 = TautPoly::q(1).expect("in range");
    let inner = p3
        .add(&p2.mul(&q1).scale(&rat(-1, 2)))
        .add(&p1.mul(&q1.pow(2)).scale(&rat(1, 8)));
    inner.scale(&rat(8, 1))
}

/// The two defining relations, as polynomials that reduce to zero.
pub fn relations() -> (TautPoly, TautPoly) {
    let p1 = TautPoly::p(1).expect("in range");
    let p2 = TautPoly::p(2).expect("in range");
    let p3 = TautPoly::p(3).expect("in range");
    let q1 = TautPoly::q(1).expect("in range");
    let q2 = TautPoly::q(2).expect("in range");
    let r_q = q2.scale(&rat(4, 1)).sub(&q1.pow(2));
    let r_p = p3
        .scale(&rat(8, 1))
        .sub(&p2.mul(&q1).scale(&rat(4, 1)))
        .sub(&q2.mul(&p1).scale(&rat(4, 1)))
        .add(&p1.mul(&q1.pow(2)).scale(&rat(2, 1)));
    (r_q, r_p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_obstruction_class_vanishes() {
        assert!(class_c2_xi().reduce().is_zero());
    }

    #[test]
    fn relations_reduce_to_zero() {
        let (r_q, r_p) = relations();
        assert!(r_q.reduce().is_zero());
        assert!(r_p.reduce().is_zero());
    }

    #[test]
    fn perturbed_class_does_not_vanish() {
        // Dropping the middle term leaves a genuine nonzero residue.
        let p1 = TautPoly::p(1).unwrap();
        let p3 = TautPoly::p(3).unwrap();
        let q1 = TautPoly::q(1).unwrap();
        let wrong = p3.scale(&rat(8, 1)).add(&p1.mul(&q1.pow(2)));
        assert!(!wrong.reduce().is_zero());
    }

    #[test]
    fn reduce_is_idempotent_and_linear() {
        let (r_q, r_p) = relations();
        let mix = r_p.mul(&r_q).add(&class_c2_xi().scale(&rat(3, 7)));
        let once = mix.reduce();
        assert_eq!(once.reduce(), once);
        let a = TautPoly::p(3).unwrap().mul(&TautPoly::q(2).unwrap());
        let b = TautPoly::p(2).unwrap().pow(2);
        let lhs = a.add(&b).reduce();
        let rhs = a.reduce().add(&b.reduce());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_text_form() {
        assert_eq!(class_c2_xi().to_string(), "8*p3 - 4*q1*p2 + q1^2*p1");
        let (_, r_p) = relations();
        assert_eq!(
            r_p.to_string(),
            "8*p3 - 4*q1*p2 - 4*q2*p1 + 2*q1^2*p1"
        );
        assert_eq!(TautPoly::zero().to_string(), "0");
    }
}

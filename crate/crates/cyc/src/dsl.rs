//! Expression language and serialization for the cycle calculus.
//!
//! One grammar covers four value domains: scalar polynomials in g and the
//! degree variables, cycles on powers of the curve, Pontryagin expressions
//! on the Jacobian, and the genus-3 tautological ring. A cycle factor is
//! parsed at its intrinsic ambient (the largest factor index it mentions,
//! or the arity of a named construct) and promoted by pullback when it
//! meets a wider factor; a trailing `@@ n` fixes the ambient of the whole
//! expression. Multiplication is the intersection product on cycles, the
//! Pontryagin product on Jacobian values, and the ring product elsewhere.

use crate::cycle::{intersect, pull_proj, Block, CycleExpr, Monomial, Sym};
use crate::error::{CycError, Result};
use crate::genus3::TautPoly;
use crate::jacobian::{pont_mul, JacAtom, JacExpr};
use crate::ops::{self, PointArg, Projector, Route};
use crate::poly::Poly;
use num::bigint::BigInt;
use num::rational::BigRational;
use serde_json::{json, Value as Json};

#[derive(Debug, Clone)]
pub enum Value {
    Scalar(Poly),
    Cycle(CycleExpr),
    Jac(JacExpr),
    Taut(TautPoly),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Cycle(_) => "cycle",
            Value::Jac(_) => "jacobian",
            Value::Taut(_) => "tautological",
        }
    }
}

/// Extract a cycle, refusing values whose ambient cannot be determined.
pub fn as_cycle(v: &Value) -> Result<CycleExpr> {
    match v {
        Value::Cycle(c) => Ok(c.clone()),
        Value::Scalar(_) => Err(CycError::AmbientAmbiguous(
            "scalar expression has no ambient; append `@@ n`".into(),
        )),
        other => Err(CycError::AmbientMismatch(format!(
            "expected a cycle, got a {} value",
            other.kind()
        ))),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    At,
    AtAt,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = bytes[i..j].iter().collect();
                out.push((Tok::Int(text.parse().unwrap()), pos));
                i = j;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == '_') {
                    j += 1;
                }
                out.push((Tok::Ident(bytes[i..j].iter().collect()), pos));
                i = j;
            }
            '@' => {
                if i + 1 < bytes.len() && bytes[i + 1] == '@' {
                    out.push((Tok::AtAt, pos));
                    i += 2;
                } else {
                    out.push((Tok::At, pos));
                    i += 1;
                }
            }
            '+' => {
                out.push((Tok::Plus, pos));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, pos));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, pos));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, pos));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, pos));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, pos));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, pos));
                i += 1;
            }
            '{' => {
                out.push((Tok::LBrace, pos));
                i += 1;
            }
            '}' => {
                out.push((Tok::RBrace, pos));
                i += 1;
            }
            '[' => {
                out.push((Tok::LBracket, pos));
                i += 1;
            }
            ']' => {
                out.push((Tok::RBracket, pos));
                i += 1;
            }
            other => {
                return Err(CycError::Syntax {
                    pos,
                    msg: format!("unexpected character {other:?}"),
                });
            }
        }
    }
    Ok(out)
}

fn promote(c: &CycleExpr, ambient: u32) -> Result<CycleExpr> {
    if c.ambient() == ambient {
        return Ok(c.clone());
    }
    let images: Vec<u32> = (1..=c.ambient()).collect();
    pull_proj(c, &images, ambient)
}

fn type_error(pos: usize, op: &str, a: &Value, b: &Value) -> CycError {
    CycError::Syntax {
        pos,
        msg: format!("cannot {op} {} and {} values", a.kind(), b.kind()),
    }
}

fn mul_values(a: Value, b: Value, pos: usize) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.mul(&y)),
        (Value::Scalar(x), Value::Cycle(c)) | (Value::Cycle(c), Value::Scalar(x)) => {
            Value::Cycle(c.scale(&x))
        }
        (Value::Scalar(x), Value::Jac(j)) | (Value::Jac(j), Value::Scalar(x)) => {
            Value::Jac(j.scale(&x))
        }
        (Value::Scalar(x), Value::Taut(t)) | (Value::Taut(t), Value::Scalar(x)) => {
            let c = x.as_scalar().ok_or(CycError::Syntax {
                pos,
                msg: "tautological coefficients must be rational constants".into(),
            })?;
            Value::Taut(t.scale(&c))
        }
        (Value::Cycle(x), Value::Cycle(y)) => {
            let n = x.ambient().max(y.ambient());
            Value::Cycle(intersect(&promote(&x, n)?, &promote(&y, n)?)?)
        }
        (Value::Jac(x), Value::Jac(y)) => Value::Jac(pont_mul(&x, &y)?),
        (Value::Taut(x), Value::Taut(y)) => Value::Taut(x.mul(&y)),
        (a, b) => return Err(type_error(pos, "multiply", &a, &b)),
    })
}

fn add_values(a: Value, b: Value, pos: usize) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.add(&y)),
        (Value::Scalar(x), Value::Cycle(c)) | (Value::Cycle(c), Value::Scalar(x)) => {
            let unit = CycleExpr::fundamental(c.ambient()).scale(&x);
            Value::Cycle(c.add(&unit)?)
        }
        (Value::Scalar(x), Value::Jac(j)) | (Value::Jac(j), Value::Scalar(x)) => {
            let unit = JacExpr::unit(j.genus()).scale(&x);
            Value::Jac(j.add(&unit)?)
        }
        (Value::Scalar(x), Value::Taut(t)) | (Value::Taut(t), Value::Scalar(x)) => {
            let c = x.as_scalar().ok_or(CycError::Syntax {
                pos,
                msg: "tautological coefficients must be rational constants".into(),
            })?;
            Value::Taut(t.add(&TautPoly::constant(c)))
        }
        (Value::Cycle(x), Value::Cycle(y)) => {
            let n = x.ambient().max(y.ambient());
            Value::Cycle(promote(&x, n)?.add(&promote(&y, n)?)?)
        }
        (Value::Jac(x), Value::Jac(y)) => Value::Jac(x.add(&y)?),
        (Value::Taut(x), Value::Taut(y)) => Value::Taut(x.add(&y)),
        (a, b) => return Err(type_error(pos, "add", &a, &b)),
    })
}

fn neg_value(v: Value) -> Value {
    match v {
        Value::Scalar(x) => Value::Scalar(x.neg()),
        Value::Cycle(c) => Value::Cycle(c.neg()),
        Value::Jac(j) => Value::Jac(j.neg()),
        Value::Taut(t) => Value::Taut(t.neg()),
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    cursor: usize,
    end: usize,
    genus: Option<i64>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cursor).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.cursor)
            .map(|&(_, p)| p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.cursor).map(|(t, _)| t.clone());
        self.cursor += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> CycError {
        CycError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.cursor += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn expect_u32(&mut self, what: &str) -> Result<u32> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let Some(Tok::Int(n)) = self.bump() else {
                    unreachable!()
                };
                u32::try_from(&n).map_err(|_| self.err(format!("{what} out of range")))
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn index_list(&mut self) -> Result<Vec<u32>> {
        let mut out = vec![self.factor_index()?];
        while self.peek() == Some(&Tok::Comma) {
            self.cursor += 1;
            out.push(self.factor_index()?);
        }
        let mut seen = std::collections::BTreeSet::new();
        for &i in &out {
            if !seen.insert(i) {
                return Err(CycError::IndexOutOfRange(format!(
                    "factor index {i} repeated"
                )));
            }
        }
        Ok(out)
    }

    fn factor_index(&mut self) -> Result<u32> {
        let i = self.expect_u32("a factor index")?;
        if i == 0 {
            return Err(CycError::IndexOutOfRange(
                "factor indices start at 1".into(),
            ));
        }
        Ok(i)
    }

    fn expr(&mut self) -> Result<Value> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.cursor += 1;
                true
            }
            Some(Tok::Plus) => {
                self.cursor += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = neg_value(acc);
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    let pos = self.pos();
                    self.cursor += 1;
                    let t = self.term()?;
                    acc = add_values(acc, t, pos)?;
                }
                Some(Tok::Minus) => {
                    let pos = self.pos();
                    self.cursor += 1;
                    let t = self.term()?;
                    acc = add_values(acc, neg_value(t), pos)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            let pos = self.pos();
            self.cursor += 1;
            let f = self.factor()?;
            acc = mul_values(acc, f, pos)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let pos = self.pos();
        self.cursor += 1;
        let k = self.expect_u32("a nonnegative integer exponent")?;
        match base {
            Value::Scalar(p) => Ok(Value::Scalar(p.pow(k))),
            Value::Taut(t) => Ok(Value::Taut(t.pow(k))),
            other => Err(CycError::Syntax {
                pos,
                msg: format!("exponents apply to scalar and tautological values, not {}", other.kind()),
            }),
        }
    }

    fn base(&mut self) -> Result<Value> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let Some(Tok::Int(n)) = self.bump() else {
                    unreachable!()
                };
                if self.peek() == Some(&Tok::Slash) {
                    let pos = self.pos();
                    self.cursor += 1;
                    let Some(Tok::Int(d)) = self.bump() else {
                        return Err(self.err("expected a denominator"));
                    };
                    if d == BigInt::from(0) {
                        return Err(CycError::Syntax {
                            pos,
                            msg: "division by zero".into(),
                        });
                    }
                    return Ok(Value::Scalar(Poly::from_scalar(BigRational::new(n, d))));
                }
                Ok(Value::Scalar(Poly::from_scalar(BigRational::from(n))))
            }
            Some(Tok::LParen) => {
                self.cursor += 1;
                let v = self.expr()?;
                self.expect(Tok::RParen, "a closing parenthesis")?;
                Ok(v)
            }
            Some(Tok::LBracket) => {
                self.cursor += 1;
                let z = self.expect_u32("the zero of the unit class [0]")?;
                if z != 0 {
                    return Err(self.err("the only bracket class is the unit [0]"));
                }
                self.expect(Tok::RBracket, "a closing bracket")?;
                Ok(Value::Jac(JacExpr::unit(self.require_genus()?)))
            }
            Some(Tok::Ident(_)) => {
                let pos = self.pos();
                let Some(Tok::Ident(name)) = self.bump() else {
                    unreachable!()
                };
                self.named(&name, pos)
            }
            _ => Err(self.err("expected a value")),
        }
    }

    fn require_genus(&self) -> Result<i64> {
        self.genus.ok_or_else(|| {
            CycError::InvalidGenus("jacobian classes need a concrete genus".into())
        })
    }

    fn named(&mut self, name: &str, pos: usize) -> Result<Value> {
        match name {
            "diag" => {
                self.expect(Tok::LParen, "an opening parenthesis")?;
                let indices = self.index_list()?;
                self.expect(Tok::RParen, "a closing parenthesis")?;
                Ok(Value::Cycle(block_cycle(indices, None)))
            }
            "e" | "K" => {
                let sym = if name == "e" { Sym::E } else { Sym::K };
                self.decorated_block(sym)
            }
            "Gamma" => {
                self.expect(Tok::LParen, "an opening parenthesis")?;
                let n = self.expect_u32("an arity")?;
                self.expect(Tok::RParen, "a closing parenthesis")?;
                Ok(Value::Cycle(ops::big_gamma(n)?))
            }
            "B" => {
                self.expect(Tok::LParen, "an opening parenthesis")?;
                let n = self.expect_u32("an arity")?;
                self.expect(Tok::RParen, "a closing parenthesis")?;
                Ok(Value::Cycle(ops::big_b(n)?))
            }
            "gamma" | "beta" => {
                self.expect(Tok::LParen, "an opening parenthesis")?;
                let n = self.expect_u32("an arity")?;
                self.expect(Tok::Comma, "a comma")?;
                let arg = self.point_arg()?;
                self.expect(Tok::RParen, "a closing parenthesis")?;
                let out = if name == "gamma" {
                    ops::gamma(n, &arg, Route::Explicit)?
                } else {
                    ops::beta(n, &arg, Route::Explicit)?
                };
                Ok(Value::Cycle(out))
            }
            "pi0" => Ok(Value::Cycle(ops::projector(Projector::P0))),
            "pi1" => Ok(Value::Cycle(ops::projector(Projector::P1))),
            "pi2" => Ok(Value::Cycle(ops::projector(Projector::P2))),
            "piplus" => Ok(Value::Cycle(ops::projector(Projector::PPlus))),
            "g" => Ok(Value::Scalar(Poly::g())),
            _ => self.family(name, pos),
        }
    }

    /// Names built from a family prefix and numeric suffixes: z1, d2, p3,
    /// q1, CLS_2, DEL_3, KAP_1, ZP1_2.
    fn family(&mut self, name: &str, pos: usize) -> Result<Value> {
        let unknown = || CycError::Syntax {
            pos,
            msg: format!("unknown name {name:?}"),
        };
        if let Some(rest) = name.strip_prefix('z') {
            if let Ok(j) = rest.parse::<u32>() {
                if j == 0 {
                    return Err(CycError::IndexOutOfRange(
                        "point labels z1, z2, ... start at 1".into(),
                    ));
                }
                return self.decorated_block(Sym::Z(j));
            }
            return Err(unknown());
        }
        if let Some(rest) = name.strip_prefix('d') {
            if let Ok(j) = rest.parse::<u32>() {
                if j == 0 {
                    return Err(CycError::IndexOutOfRange(
                        "degree variables d1, d2, ... start at 1".into(),
                    ));
                }
                return Ok(Value::Scalar(Poly::d(j)));
            }
            return Err(unknown());
        }
        if let Some(rest) = name.strip_prefix('p') {
            if let Ok(i) = rest.parse::<u32>() {
                return Ok(Value::Taut(TautPoly::p(i)?));
            }
            return Err(unknown());
        }
        if let Some(rest) = name.strip_prefix('q') {
            if let Ok(i) = rest.parse::<u32>() {
                return Ok(Value::Taut(TautPoly::q(i)?));
            }
            return Err(unknown());
        }
        for (prefix, family) in [("CLS_", 0u8), ("DEL_", 1), ("KAP_", 2)] {
            if let Some(rest) = name.strip_prefix(prefix) {
                let s: u32 = rest.parse().map_err(|_| unknown())?;
                let g = self.require_genus()?;
                let atom = match family {
                    0 => JacAtom::Cls(s),
                    1 => JacAtom::Del(s),
                    _ => JacAtom::Kap(s),
                };
                check_atom_range(&atom, g)?;
                return Ok(Value::Jac(JacExpr::atom(g, atom)));
            }
        }
        if let Some(rest) = name.strip_prefix("ZP") {
            let (j, s) = rest.split_once('_').ok_or_else(unknown)?;
            let j: u32 = j.parse().map_err(|_| unknown())?;
            let s: u32 = s.parse().map_err(|_| unknown())?;
            let g = self.require_genus()?;
            let atom = JacAtom::ZPush(j, s);
            check_atom_range(&atom, g)?;
            return Ok(Value::Jac(JacExpr::atom(g, atom)));
        }
        Err(unknown())
    }

    /// `sym @ i` or `sym @ {i, j, ...}`.
    fn decorated_block(&mut self, sym: Sym) -> Result<Value> {
        match self.peek() {
            Some(Tok::At) => {
                self.cursor += 1;
            }
            _ => {
                return Err(self.err(format!(
                    "point class {} needs a factor position, as in {}@1",
                    sym.text(),
                    sym.text()
                )))
            }
        }
        let indices = if self.peek() == Some(&Tok::LBrace) {
            self.cursor += 1;
            let list = self.index_list()?;
            self.expect(Tok::RBrace, "a closing brace")?;
            list
        } else {
            vec![self.factor_index()?]
        };
        Ok(Value::Cycle(block_cycle(indices, Some(sym))))
    }

    fn point_arg(&mut self) -> Result<PointArg> {
        let pos = self.pos();
        let Some(Tok::Ident(name)) = self.bump() else {
            return Err(CycError::Syntax {
                pos,
                msg: "expected a point class (e, K, z1, ...) or C".into(),
            });
        };
        match name.as_str() {
            "C" => Ok(PointArg::Fundamental),
            "e" => Ok(PointArg::sym(Sym::E)),
            "K" => Ok(PointArg::sym(Sym::K)),
            _ => {
                if let Some(rest) = name.strip_prefix('z') {
                    if let Ok(j) = rest.parse::<u32>() {
                        if j >= 1 {
                            return Ok(PointArg::sym(Sym::Z(j)));
                        }
                    }
                }
                Err(CycError::Syntax {
                    pos,
                    msg: format!("unknown point class {name:?}"),
                })
            }
        }
    }
}

fn check_atom_range(atom: &JacAtom, g: i64) -> Result<()> {
    let (s, lo, hi, what) = match *atom {
        JacAtom::Cls(s) => (s, 0i64, g - 1, "CLS"),
        JacAtom::Del(s) => (s, 2, g, "DEL"),
        JacAtom::Kap(s) => (s, 1, g, "KAP"),
        JacAtom::ZPush(_, s) => (s, 1, g, "ZP"),
    };
    if (s as i64) < lo || (s as i64) > hi {
        return Err(CycError::IndexOutOfRange(format!(
            "{what} degree {s} outside {lo}..={hi} at genus {g}"
        )));
    }
    Ok(())
}

/// Single decorated or plain block, padded with singleton factors up to the
/// largest mentioned index.
fn block_cycle(indices: Vec<u32>, dec: Option<Sym>) -> CycleExpr {
    let ambient = *indices.iter().max().unwrap();
    let mut blocks = vec![Block::new(indices.clone(), dec)];
    for i in 1..=ambient {
        if !indices.contains(&i) {
            blocks.push(Block::new(vec![i], None));
        }
    }
    CycleExpr::from_monomial(ambient, Monomial::new(blocks), Poly::one())
}

/// Evaluate an expression. `genus` is only needed when Jacobian classes
/// appear. A trailing `@@ n` resolves the result to a cycle on C^n.
pub fn eval_str(input: &str, genus: Option<i64>) -> Result<Value> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        cursor: 0,
        end: input.len(),
        genus,
    };
    let v = p.expr()?;
    let declared = if p.peek() == Some(&Tok::AtAt) {
        p.cursor += 1;
        Some(p.expect_u32("an ambient")?)
    } else {
        None
    };
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    match declared {
        None => Ok(v),
        Some(n) => match v {
            Value::Scalar(x) => Ok(Value::Cycle(CycleExpr::fundamental(n).scale(&x))),
            Value::Cycle(c) => {
                if c.ambient() > n {
                    return Err(CycError::AmbientMismatch(format!(
                        "expression mentions factor {} but is declared on C^{n}",
                        c.ambient()
                    )));
                }
                Ok(Value::Cycle(promote(&c, n)?))
            }
            other => Err(CycError::AmbientMismatch(format!(
                "`@@` fixes a cycle ambient, but the expression is a {} value",
                other.kind()
            ))),
        },
    }
}

/// Evaluate and require a cycle result.
pub fn parse_cycle(input: &str) -> Result<CycleExpr> {
    as_cycle(&eval_str(input, None)?)
}

/// Parse a scalar polynomial (coefficient notation: integers, rationals,
/// g, and the degree variables d1, d2, ...).
pub fn parse_poly(input: &str) -> Result<Poly> {
    match eval_str(input, None)? {
        Value::Scalar(p) => Ok(p),
        other => Err(CycError::Syntax {
            pos: 0,
            msg: format!("expected a scalar polynomial, got a {} value", other.kind()),
        }),
    }
}

pub fn cycle_to_json(w: &CycleExpr) -> Json {
    let terms: Vec<Json> = w
        .terms()
        .map(|(m, c)| {
            let blocks: Vec<Json> = m
                .blocks()
                .iter()
                .map(|b| {
                    json!({
                        "indices": b.indices,
                        "dec": b.dec.map(|s| s.text()),
                    })
                })
                .collect();
            json!({ "coeff": c.to_string(), "blocks": blocks })
        })
        .collect();
    json!({
        "schema": "cycleexpr/1",
        "ambient": w.ambient(),
        "terms": terms,
    })
}

fn json_err(msg: impl Into<String>) -> CycError {
    CycError::Syntax {
        pos: 0,
        msg: msg.into(),
    }
}

fn parse_dec(v: &Json) -> Result<Option<Sym>> {
    match v {
        Json::Null => Ok(None),
        Json::String(s) => match s.as_str() {
            "e" => Ok(Some(Sym::E)),
            "K" => Ok(Some(Sym::K)),
            other => {
                let j: u32 = other
                    .strip_prefix('z')
                    .and_then(|r| r.parse().ok())
                    .ok_or_else(|| json_err(format!("unknown decoration {other:?}")))?;
                Ok(Some(Sym::Z(j)))
            }
        },
        _ => Err(json_err("decoration must be a string or null")),
    }
}

pub fn cycle_from_json(v: &Json) -> Result<CycleExpr> {
    if v.get("schema").and_then(Json::as_str) != Some("cycleexpr/1") {
        return Err(json_err("expected schema \"cycleexpr/1\""));
    }
    let ambient = v
        .get("ambient")
        .and_then(Json::as_u64)
        .ok_or_else(|| json_err("missing ambient"))? as u32;
    let mut out = CycleExpr::zero(ambient);
    let terms = v
        .get("terms")
        .and_then(Json::as_array)
        .ok_or_else(|| json_err("missing terms"))?;
    for t in terms {
        let coeff = parse_poly(
            t.get("coeff")
                .and_then(Json::as_str)
                .ok_or_else(|| json_err("missing coeff"))?,
        )?;
        let blocks = t
            .get("blocks")
            .and_then(Json::as_array)
            .ok_or_else(|| json_err("missing blocks"))?;
        let mut parsed = Vec::new();
        for b in blocks {
            let indices: Vec<u32> = b
                .get("indices")
                .and_then(Json::as_array)
                .ok_or_else(|| json_err("missing indices"))?
                .iter()
                .map(|x| x.as_u64().map(|v| v as u32))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| json_err("indices must be integers"))?;
            let dec = parse_dec(b.get("dec").unwrap_or(&Json::Null))?;
            parsed.push(Block::new(indices, dec));
        }
        let m = Monomial::new(parsed);
        if !m.is_partition_of(ambient) {
            return Err(json_err(format!(
                "blocks do not partition 1..={ambient}"
            )));
        }
        out.add_term(m, coeff);
    }
    Ok(out)
}

pub fn jac_to_json(x: &JacExpr) -> Json {
    let terms: Vec<Json> = x
        .terms()
        .map(|(word, c)| {
            let atoms: Vec<Json> = word
                .iter()
                .map(|a| match *a {
                    JacAtom::Cls(s) => json!({"family": "CLS", "s": s}),
                    JacAtom::Del(s) => json!({"family": "DEL", "s": s}),
                    JacAtom::Kap(s) => json!({"family": "KAP", "s": s}),
                    JacAtom::ZPush(j, s) => json!({"family": "ZPUSH", "j": j, "s": s}),
                })
                .collect();
            json!({ "coeff": c.to_string(), "word": atoms })
        })
        .collect();
    json!({
        "schema": "jacexpr/1",
        "genus": x.genus(),
        "terms": terms,
    })
}

pub fn jac_from_json(v: &Json) -> Result<JacExpr> {
    if v.get("schema").and_then(Json::as_str) != Some("jacexpr/1") {
        return Err(json_err("expected schema \"jacexpr/1\""));
    }
    let genus = v
        .get("genus")
        .and_then(Json::as_i64)
        .ok_or_else(|| json_err("missing genus"))?;
    let mut out = JacExpr::zero(genus);
    let terms = v
        .get("terms")
        .and_then(Json::as_array)
        .ok_or_else(|| json_err("missing terms"))?;
    for t in terms {
        let coeff = parse_poly(
            t.get("coeff")
                .and_then(Json::as_str)
                .ok_or_else(|| json_err("missing coeff"))?,
        )?;
        let mut word = Vec::new();
        for a in t
            .get("word")
            .and_then(Json::as_array)
            .ok_or_else(|| json_err("missing word"))?
        {
            let s = a
                .get("s")
                .and_then(Json::as_u64)
                .ok_or_else(|| json_err("missing s"))? as u32;
            let atom = match a.get("family").and_then(Json::as_str) {
                Some("CLS") => JacAtom::Cls(s),
                Some("DEL") => JacAtom::Del(s),
                Some("KAP") => JacAtom::Kap(s),
                Some("ZPUSH") => {
                    let j = a
                        .get("j")
                        .and_then(Json::as_u64)
                        .ok_or_else(|| json_err("missing j"))? as u32;
                    JacAtom::ZPush(j, s)
                }
                other => return Err(json_err(format!("unknown family {other:?}"))),
            };
            word.push(atom);
        }
        out.add_term(word, coeff);
    }
    Ok(out)
}

/// Serialize any value; scalars and tautological polynomials use their
/// canonical text form.
pub fn value_to_json(v: &Value) -> Json {
    match v {
        Value::Scalar(p) => json!({"schema": "scalar/1", "text": p.to_string()}),
        Value::Cycle(c) => cycle_to_json(c),
        Value::Jac(j) => jac_to_json(j),
        Value::Taut(t) => json!({"schema": "taut/1", "text": t.to_string()}),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobian::zhang_expand;

    fn cycle(src: &str) -> CycleExpr {
        parse_cycle(src).unwrap()
    }

    #[test]
    fn diagonal_self_intersection_prints_canonically() {
        let w = cycle("diag(1,2)*diag(1,2) @@2");
        assert_eq!(w.to_string(), "-1*K@{1,2} @@2");
    }

    #[test]
    fn named_operators_match_their_expansions() {
        let gamma2 = cycle("Gamma(2)");
        let by_hand = cycle("diag(1,2) - diag(1)*e@2 - e@1*diag(2) @@2");
        assert_eq!(gamma2, by_hand);
        assert!(cycle("gamma(1,e)").is_zero());
        assert_eq!(cycle("pi0 + pi1 + pi2"), cycle("diag(1,2)"));
    }

    #[test]
    fn factors_promote_to_the_widest_ambient() {
        let w = cycle("e@1*K@3");
        assert_eq!(w.ambient(), 3);
        assert_eq!(w, cycle("e@1 * diag(2) * K@3 @@3"));
        let scalar_term = cycle("diag(1,2) - 2 @@2");
        let expected = cycle("diag(1,2) @@2")
            .sub(&cycle("diag(1)*diag(2) @@2").scale(&Poly::int(2)))
            .unwrap();
        assert_eq!(scalar_term, expected);
    }

    #[test]
    fn ambient_declarations_are_checked() {
        assert!(matches!(
            eval_str("diag(1,2) @@1", None),
            Err(CycError::AmbientMismatch(_))
        ));
        assert!(matches!(
            eval_str("2*g", None),
            Ok(Value::Scalar(p)) if p == Poly::g().scale(&crate::poly::int(2))
        ));
        assert!(matches!(
            as_cycle(&eval_str("2*g", None).unwrap()),
            Err(CycError::AmbientAmbiguous(_))
        ));
    }

    #[test]
    fn rationals_and_powers_evaluate() {
        assert_eq!(cycle("1/2*K@1 + 1/2*K@1"), cycle("K@1"));
        let p = parse_poly("(2*g - 2)^2").unwrap();
        assert_eq!(p.eval_genus(3), Some(crate::poly::int(16)));
    }

    #[test]
    fn jacobian_values_need_a_genus_and_respect_ranges() {
        assert!(matches!(
            eval_str("CLS_1", None),
            Err(CycError::InvalidGenus(_))
        ));
        assert!(matches!(
            eval_str("CLS_9", Some(3)),
            Err(CycError::IndexOutOfRange(_))
        ));
        let v = eval_str("CLS_1 + 2*DEL_2 + ZP1_2 + [0]", Some(3)).unwrap();
        let Value::Jac(j) = v else { panic!("expected jac") };
        assert_eq!(j.genus(), 3);
        assert_eq!(j.terms().count(), 4);
    }

    #[test]
    fn tautological_names_evaluate_and_reduce() {
        let v = eval_str("8*p3 - 4*q1*p2 + q1^2*p1", None).unwrap();
        let Value::Taut(t) = v else { panic!("expected taut") };
        assert_eq!(t.to_string(), "8*p3 - 4*q1*p2 + q1^2*p1");
        assert!(t.reduce().is_zero());
        assert!(matches!(
            eval_str("p4", None),
            Err(CycError::IndexOutOfRange(_))
        ));
        assert!(matches!(
            eval_str("q3", None),
            Err(CycError::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn error_positions_point_into_the_source() {
        let Err(CycError::Syntax { pos, .. }) = eval_str("diag(1,2) %", None) else {
            panic!("expected a syntax error");
        };
        assert_eq!(pos, 10);
        assert!(matches!(eval_str("e", None), Err(CycError::Syntax { .. })));
        assert!(matches!(
            eval_str("diag(1,1)", None),
            Err(CycError::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn display_text_parses_back_to_the_same_cycle() {
        for src in [
            "Gamma(3)",
            "B(3)",
            "beta(2,K)",
            "gamma(2,z1)",
            "pi1*pi1",
            "diag(1,2,3)*e@4",
        ] {
            let w = cycle(src);
            assert_eq!(cycle(&w.to_string()), w, "round trip failed for {src}");
        }
    }

    #[test]
    fn json_round_trips() {
        let w = cycle("Gamma(3)");
        assert_eq!(cycle_from_json(&cycle_to_json(&w)).unwrap(), w);
        let j = zhang_expand(5, false).unwrap();
        assert_eq!(jac_from_json(&jac_to_json(&j)).unwrap(), j);
    }
}

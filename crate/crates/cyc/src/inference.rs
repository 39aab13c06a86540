//! Forward-chaining closure over vanishing statements.
//!
//! Facts live in five indexed families plus three standalone flags. A state
//! stores, per family, an explicit index set together with an optional tail
//! ("everything from t on vanishes"). Propagation applies a fixed table of
//! implication rules to a fixpoint, recording for every fact the rule and
//! premises that first produced it, so any derived fact can be explained as
//! a chain back to the assumptions.

use crate::error::{CycError, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Indexed fact families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    /// Gamma(n) = 0: the n-fold modified diagonal on the curve power.
    Gamma,
    /// B(n) = 0: the reduced n-fold modified diagonal.
    B,
    /// cls(s) = 0: the degree-s Beauville component of the curve class.
    CurveComp,
    /// gamma(n, e) = 0: the n-fold modified diagonal of the base point.
    GammaE,
    /// delta(s) = 0: the degree-s Beauville component of the theta-dual class.
    DeltaComp,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::Gamma,
        Kind::B,
        Kind::CurveComp,
        Kind::GammaE,
        Kind::DeltaComp,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Kind::Gamma => "Gamma",
            Kind::B => "B",
            Kind::CurveComp => "cls",
            Kind::GammaE => "gammaE",
            Kind::DeltaComp => "delta",
        }
    }
}

/// Unindexed facts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Flag {
    /// The full theta-dual class vanishes.
    DeltaZero,
    /// The ceresa class vanishes.
    CeresaZero,
    /// The base point agrees with xi = K/(2g-2).
    EIsXi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Fact {
    Indexed(Kind, u32),
    Tail(Kind, u32),
    Flag(Flag),
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::Indexed(Kind::Gamma, n) => write!(f, "Gamma({n})=0"),
            Fact::Indexed(Kind::B, n) => write!(f, "B({n})=0"),
            Fact::Indexed(Kind::CurveComp, s) => write!(f, "cls({s})=0"),
            Fact::Indexed(Kind::GammaE, n) => write!(f, "gamma({n},e)=0"),
            Fact::Indexed(Kind::DeltaComp, s) => write!(f, "delta({s})=0"),
            Fact::Tail(Kind::Gamma, t) => write!(f, "Gamma(k)=0 for all k >= {t}"),
            Fact::Tail(Kind::B, t) => write!(f, "B(k)=0 for all k >= {t}"),
            Fact::Tail(Kind::CurveComp, t) => write!(f, "cls(k)=0 for all k >= {t}"),
            Fact::Tail(Kind::GammaE, t) => write!(f, "gamma(k,e)=0 for all k >= {t}"),
            Fact::Tail(Kind::DeltaComp, t) => write!(f, "delta(k)=0 for all k >= {t}"),
            Fact::Flag(Flag::DeltaZero) => write!(f, "delta=0"),
            Fact::Flag(Flag::CeresaZero) => write!(f, "ceresa=0"),
            Fact::Flag(Flag::EIsXi) => write!(f, "e=xi"),
        }
    }
}

/// Parse a fact in the same notation Display produces for indexed facts and
/// flags: `Gamma(3)=0`, `B(4)=0`, `cls(1)=0`, `gamma(2,e)=0`, `delta(2)=0`,
/// `delta=0`, `ceresa=0`, `e=xi`. Whitespace is ignored.
pub fn parse_fact(input: &str) -> Result<Fact> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| CycError::Syntax {
        pos: 0,
        msg: format!("{msg} in assumption {input:?}"),
    };
    match s.as_str() {
        "delta=0" => return Ok(Fact::Flag(Flag::DeltaZero)),
        "ceresa=0" => return Ok(Fact::Flag(Flag::CeresaZero)),
        "e=xi" => return Ok(Fact::Flag(Flag::EIsXi)),
        _ => {}
    }
    let (kind, rest) = if let Some(r) = s.strip_prefix("Gamma(") {
        (Kind::Gamma, r)
    } else if let Some(r) = s.strip_prefix("B(") {
        (Kind::B, r)
    } else if let Some(r) = s.strip_prefix("cls(") {
        (Kind::CurveComp, r)
    } else if let Some(r) = s.strip_prefix("gamma(") {
        (Kind::GammaE, r)
    } else if let Some(r) = s.strip_prefix("delta(") {
        (Kind::DeltaComp, r)
    } else {
        return Err(err("unrecognized fact"));
    };
    let tail_pattern = match kind {
        Kind::GammaE => ",e)=0",
        _ => ")=0",
    };
    let digits = rest
        .strip_suffix(tail_pattern)
        .ok_or_else(|| err("malformed index"))?;
    let n: u32 = digits.parse().map_err(|_| err("malformed index"))?;
    Ok(Fact::Indexed(kind, n))
}

/// One family's knowledge: sporadic indices plus an optional tail threshold.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IndexSet {
    pub explicit: BTreeSet<u32>,
    pub tail: Option<u32>,
}

impl IndexSet {
    pub fn contains(&self, i: u32) -> bool {
        self.explicit.contains(&i) || self.tail.is_some_and(|t| i >= t)
    }

    fn insert_index(&mut self, i: u32) -> bool {
        if self.contains(i) {
            return false;
        }
        self.explicit.insert(i);
        true
    }

    fn insert_tail(&mut self, t: u32) -> bool {
        match self.tail {
            Some(old) if old <= t => false,
            _ => {
                self.tail = Some(t);
                true
            }
        }
    }

    /// Absorb explicit indices into the tail and slide the tail down over a
    /// contiguous run of explicit indices just below it.
    pub fn canonical(&self) -> IndexSet {
        let mut explicit = self.explicit.clone();
        let mut tail = self.tail;
        if let Some(mut t) = tail {
            explicit.retain(|&i| i < t);
            while t > 0 && explicit.remove(&(t - 1)) {
                t -= 1;
            }
            tail = Some(t);
        }
        IndexSet { explicit, tail }
    }
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub rule: &'static str,
    pub premises: Vec<Fact>,
    pub statement: String,
}

struct Derivation {
    fact: Fact,
    rule: &'static str,
    premises: Vec<Fact>,
    statement: String,
}

/// Raw propagation state. Explicit indices are never deleted during
/// propagation even when a tail later covers them, so recorded premises stay
/// valid; use `canonical_view` for comparison and output.
#[derive(Debug, Clone)]
pub struct State {
    genus: i64,
    cap: u32,
    sets: BTreeMap<Kind, IndexSet>,
    flags: BTreeSet<Flag>,
    traces: BTreeMap<Fact, Trace>,
}

/// Normal form of a state: tails absorb the explicit indices they cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub genus: i64,
    pub sets: BTreeMap<Kind, IndexSet>,
    pub flags: BTreeSet<Flag>,
}

impl Closure {
    /// All facts of the closure in family order.
    pub fn facts(&self) -> Vec<Fact> {
        let mut out = Vec::new();
        for kind in Kind::ALL {
            let set = &self.sets[&kind];
            for &i in &set.explicit {
                out.push(Fact::Indexed(kind, i));
            }
            if let Some(t) = set.tail {
                out.push(Fact::Tail(kind, t));
            }
        }
        for &flag in &self.flags {
            out.push(Fact::Flag(flag));
        }
        out
    }

    /// All facts of the closure, one rendered line each, in family order.
    pub fn fact_lines(&self) -> Vec<String> {
        self.facts().iter().map(Fact::to_string).collect()
    }
}

impl State {
    fn new(genus: i64) -> Result<State> {
        if genus < 2 {
            return Err(CycError::InvalidGenus(format!(
                "propagation needs genus >= 2, got {genus}"
            )));
        }
        let cap = (2 * genus + 4) as u32;
        let sets = Kind::ALL
            .into_iter()
            .map(|k| (k, IndexSet::default()))
            .collect();
        Ok(State {
            genus,
            cap,
            sets,
            flags: BTreeSet::new(),
            traces: BTreeMap::new(),
        })
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    fn set(&self, kind: Kind) -> &IndexSet {
        &self.sets[&kind]
    }

    fn contains(&self, kind: Kind, i: u32) -> bool {
        self.set(kind).contains(i)
    }

    fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    /// The stored fact that justifies `kind(i) = 0`: the explicit index when
    /// present, otherwise the covering tail.
    fn witness(&self, kind: Kind, i: u32) -> Fact {
        let set = self.set(kind);
        if set.explicit.contains(&i) {
            Fact::Indexed(kind, i)
        } else if let Some(t) = set.tail {
            assert!(t <= i, "witness requested for an unknown fact");
            Fact::Tail(kind, t)
        } else {
            panic!("witness requested for an unknown fact");
        }
    }

    fn admit(&mut self, d: Derivation) -> bool {
        let changed = match d.fact {
            Fact::Indexed(kind, i) => self.sets.get_mut(&kind).unwrap().insert_index(i),
            Fact::Tail(kind, t) => self.sets.get_mut(&kind).unwrap().insert_tail(t),
            Fact::Flag(flag) => self.flags.insert(flag),
        };
        if changed {
            self.traces.entry(d.fact).or_insert(Trace {
                rule: d.rule,
                premises: d.premises,
                statement: d.statement,
            });
        }
        changed
    }

    pub fn canonical_view(&self) -> Closure {
        Closure {
            genus: self.genus,
            sets: self
                .sets
                .iter()
                .map(|(k, v)| (*k, v.canonical()))
                .collect(),
            flags: self.flags.clone(),
        }
    }

    pub fn trace(&self, fact: &Fact) -> Option<&Trace> {
        self.traces.get(fact)
    }

    /// Derivation chain for a fact, rendered one step per line in dependency
    /// order. An indexed fact with no explicit trace is explained through the
    /// covering tail, with a final specialization line.
    pub fn explain(&self, fact: &Fact) -> Result<Vec<String>> {
        let missing = || CycError::FactNotDerived(format!("{fact} is not in the closure"));
        let (root, specialization) = if self.traces.contains_key(fact) {
            (*fact, None)
        } else if let Fact::Indexed(kind, i) = fact {
            match self.set(*kind).tail {
                Some(t) if t <= *i && self.traces.contains_key(&Fact::Tail(*kind, t)) => {
                    let tail_fact = Fact::Tail(*kind, t);
                    (
                        tail_fact,
                        Some(format!("{fact}  [specializes {tail_fact} at k = {i}]")),
                    )
                }
                _ => return Err(missing()),
            }
        } else {
            return Err(missing());
        };
        let mut seen = BTreeSet::new();
        let mut lines = Vec::new();
        self.render_chain(&root, &mut seen, &mut lines);
        if let Some(s) = specialization {
            lines.push(s);
        }
        Ok(lines)
    }

    fn render_chain(&self, fact: &Fact, seen: &mut BTreeSet<Fact>, lines: &mut Vec<String>) {
        if !seen.insert(*fact) {
            return;
        }
        let trace = &self.traces[fact];
        for p in &trace.premises {
            self.render_chain(p, seen, lines);
        }
        let mut line = format!("{fact}  [{}]", trace.rule);
        if !trace.premises.is_empty() {
            let ps: Vec<String> = trace.premises.iter().map(|p| p.to_string()).collect();
            line.push_str(&format!(" from: {}", ps.join(", ")));
        }
        if !trace.statement.is_empty() {
            line.push_str(&format!(" | {}", trace.statement));
        }
        lines.push(line);
    }
}

type RuleFn = fn(&State) -> Vec<Derivation>;

/// The rule table in canonical order. Propagation reaches the same closure
/// under any permutation of this order.
fn rule_table() -> Vec<(&'static str, RuleFn)> {
    vec![
        ("R1", r1_curve_component),
        ("R2", r2_reduced_diagonal),
        ("R3", r3_consecutive_pair),
        ("R4", r4_self_composition),
        ("R5", r5_point_slices),
        ("R6", r6_theta_components),
        ("R7", r7_delta_doubling),
        ("R8", r8_arity_ceiling),
        ("R9", r9_canonical_point),
        ("R10", r10_ceresa_odd_parts),
        ("R11", r11_beauville_support),
        ("R12", r12_progression),
        ("R14", r14_three_point_collapse),
    ]
}

pub fn rule_count() -> usize {
    rule_table().len()
}

fn r1_curve_component(st: &State) -> Vec<Derivation> {
    let mut out = Vec::new();
    let cls = st.set(Kind::CurveComp);
    for &s in &cls.explicit {
        if s >= 1 {
            out.push(Derivation {
                fact: Fact::Indexed(Kind::Gamma, s + 2),
                rule: "R1",
                premises: vec![Fact::Indexed(Kind::CurveComp, s)],
                statement: format!(
                    "cls({s}) = 0 forces Gamma({}) = 0: under the symmetrized sum map the \
                     {}-fold modified diagonal corresponds to the degree-{s} Beauville \
                     component of the curve class",
                    s + 2,
                    s + 2
                ),
            });
        }
    }
    if let Some(t) = cls.tail {
        let t = t.max(1);
        out.push(Derivation {
            fact: Fact::Tail(Kind::Gamma, t + 2),
            rule: "R1",
            premises: vec![Fact::Tail(Kind::CurveComp, cls.tail.unwrap())],
            statement: format!(
                "cls(k) = 0 for k >= {t} forces Gamma(k) = 0 for k >= {}: the correspondence \
                 between curve components and modified diagonals applies in each degree",
                t + 2
            ),
        });
    }
    let gamma = st.set(Kind::Gamma);
    for &n in &gamma.explicit {
        if n >= 3 {
            out.push(Derivation {
                fact: Fact::Indexed(Kind::CurveComp, n - 2),
                rule: "R1",
                premises: vec![Fact::Indexed(Kind::Gamma, n)],
                statement: format!(
                    "Gamma({n}) = 0 forces cls({}) = 0: the symmetrized pushforward of the \
                     {n}-fold modified diagonal isolates a nonzero multiple of the degree-{} \
                     curve component",
                    n - 2,
                    n - 2
                ),
            });
        }
    }
    if let Some(t) = gamma.tail {
        let target = t.saturating_sub(2).max(1);
        out.push(Derivation {
            fact: Fact::Tail(Kind::CurveComp, target),
            rule: "R1",
            premises: vec![Fact::Tail(Kind::Gamma, t)],
            statement: format!(
                "Gamma(k) = 0 for k >= {t} forces cls(k) = 0 for k >= {target}: the \
                 correspondence between modified diagonals and curve components applies in \
                 each degree"
            ),
        });
    }
    out
}

fn r2_reduced_diagonal(st: &State) -> Vec<Derivation> {
    let mut out = Vec::new();
    let statement = |n: u32| {
        format!(
            "B({n}) is the projection of Gamma({n}) onto reduced factors and Gamma({n}) is \
             recovered from B({n}) by a triangular change of basis, so for arity >= 2 the two \
             vanish together"
        )
    };
    for (src, dst) in [(Kind::Gamma, Kind::B), (Kind::B, Kind::Gamma)] {
        let set = st.set(src);
        for &n in &set.explicit {
            if n >= 2 {
                out.push(Derivation {
                    fact: Fact::Indexed(dst, n),
                    rule: "R2",
                    premises: vec![Fact::Indexed(src, n)],
                    statement: statement(n),
                });
            }
        }
        if let Some(t) = set.tail {
            let target = t.max(2);
            out.push(Derivation {
                fact: Fact::Tail(dst, target),
                rule: "R2",
                premises: vec![Fact::Tail(src, t)],
                statement: format!(
                    "{} and {} determine each other in every arity >= 2, so the tails match",
                    src.label(),
                    dst.label()
                ),
            });
        }
    }
    out
}

fn r3_consecutive_pair(st: &State) -> Vec<Derivation> {
    let mut out = Vec::new();
    for n in 1..=st.cap {
        if st.contains(Kind::Gamma, n) && st.contains(Kind::Gamma, n + 1) {
            out.push(Derivation {
                fact: Fact::Tail(Kind::Gamma, n),
                rule: "R3",
                premises: vec![st.witness(Kind::Gamma, n), st.witness(Kind::Gamma, n + 1)],
                statement: format!(
                    "Gamma({n}) = 0 and Gamma({}) = 0 together force Gamma(k) = 0 for every \
                     k >= {n}: the recurrence writing each modified diagonal through two \
                     consecutive lower ones collapses",
                    n + 1
                ),
            });
        }
    }
    out
}

fn r4_self_composition(st: &State) -> Vec<Derivation> {
    let mut out = Vec::new();
    for &n in &st.set(Kind::Gamma).explicit {
        if n >= 3 {
            out.push(Derivation {
                fact: Fact::Tail(Kind::Gamma, 2 * n - 2),
                rule: "R4",
                premises: vec![Fact::Indexed(Kind::Gamma, n)],
                statement: format!(
                    "Gamma({n}) = 0 forces Gamma(k) = 0 for all k >= {}: composing the \
                     vanishing cycle with itself as a correspondence reaches every arity \
                     from 2*{n}-2 on",
                    2 * n - 2
                ),
            });
        }
    }
    out
}

fn r5_point_slices(st: &State) -> Vec<Derivation> {
    let mut out = Vec::new();
    let b = st.set(Kind::B);
    let mut emit = |n: u32, premise: Fact| {
        out.push(Derivation {
            fact: Fact::Tail(Kind::GammaE, n - 1),
            rule: "R5",
            premises: vec![premise],
            statement: format!(
                "B({n}) = 0 forces gamma(k, e) = 0 for all k >= {}: slicing B({n}) along \
                 partial diagonals expresses each higher modified diagonal of the base point \
                 through it",
                n - 1
            ),
        });
    };
    for &n in &b.explicit {
        if n >= 3 {
            emit(n, Fact::Indexed(Kind::B, n));
        }
    }
    if let Some(t) = b.tail {
        emit(t.max(3), Fact::Tail(Kind::B, t));
    }
    out
}

fn r6_theta_components(st: &State) -> Vec<Derivation> {
    let mut out = Vec::new();
    let statement = |s: u32, src: Kind| match src {
        Kind::DeltaComp => format!(
            "delta({s}) = 0 forces gamma({s}, e) = 0: the symmetrized sum map sends \
             gamma({s}, e) to an invertible multiple of delta({s})"
        ),
        _ => format!(
            "gamma({s}, e) = 0 forces delta({s}) = 0: delta({s}) is the symmetrized \
             pushforward of an invertible multiple of gamma({s}, e)"
        ),
    };
    for (src, dst) in [
        (Kind::DeltaComp, Kind::GammaE),
        (Kind::GammaE, Kind::DeltaComp),
    ] {
        let set = st.set(src);
        for &s in &set.explicit {
            if s >= 1 {
                out.push(Derivation {
                    fact: Fact::Indexed(dst, s),
                    rule: "R6",
                    premises: vec![Fact::Indexed(src, s)],
                    statement: statement(s, src),
                });
            }
        }
        if let Some(t) = set.tail {
            let target = t.max(1);
            out.push(Derivation {
                fact: Fact::Tail(dst, target),
                rule: "R6",
                premises: vec![Fact::Tail(src, t)],
                statement: format!(
                    "{} and {} determine each other in every degree >= 1, so the tails match",
                    src.label(),
                    dst.label()
                ),
            });
        }
    }
    out
}

fn r7_delta_doubling(st: &State) -> Vec<Derivation> {
    let mut out = Vec::new();
    if st.contains(Kind::DeltaComp, 2) {
        out.push(Derivation {
            fact: Fact::Flag(Flag::DeltaZero),
            rule: "R7",
            premises: vec![st.witness(Kind::DeltaComp, 2)],
            statement: "delta(2) = 0 forces delta = 0: under the doubling relation the \
                        components delta(s) for s > 2 are generated by delta(2)"
                .to_string(),
        });
    }
    if st.has_flag(Flag::DeltaZero) {
        out.push(Derivation {
            fact: Fact::Tail(Kind::DeltaComp, 0),
            rule: "R7",
            premises: vec![Fact::Flag(Flag::DeltaZero)],
            statement: "delta = 0 specializes to delta(k) = 0 for every degree k >= 0"
                .to_string(),
        });
    }
    out
}

fn r8_arity_ceiling(st: &State) -> Vec<Derivation> {
    let g = st.genus;
    vec![Derivation {
        fact: Fact::Tail(Kind::Gamma, (g + 2) as u32),
        rule: "R8",
        premises: vec![],
        statement: format!(
            "on a genus {g} curve every modified diagonal with at least {} points vanishes \
             identically",
            g + 2
        ),
    }]
}

fn r9_canonical_point(st: &State) -> Vec<Derivation> {
    let mut out = Vec::new();
    if st.contains(Kind::Gamma, 3) {
        out.push(Derivation {
            fact: Fact::Flag(Flag::EIsXi),
            rule: "R9",
            premises: vec![st.witness(Kind::Gamma, 3)],
            statement: "Gamma(3) = 0 forces e = xi: the base point and the normalized \
                        canonical class xi = K/(2g-2) then induce the same cycles"
                .to_string(),
        });
    }
    out
}

fn r10_ceresa_odd_parts(st: &State) -> Vec<Derivation> {
    let mut out = Vec::new();
    let g = st.genus as u32;
    let odd: Vec<u32> = (1..g).filter(|s| s % 2 == 1).collect();
    if odd.iter().all(|&s| st.contains(Kind::CurveComp, s)) {
        out.push(Derivation {
            fact: Fact::Flag(Flag::CeresaZero),
            rule: "R10",
            premises: odd
                .iter()
                .map(|&s| st.witness(Kind::CurveComp, s))
                .collect(),
            statement: format!(
                "the ceresa class is twice the sum of the odd-degree curve components cls(s) \
                 for s in 1..={}, each of which vanishes",
                g - 1
            ),
        });
    }
    if st.has_flag(Flag::CeresaZero) {
        for &s in &odd {
            out.push(Derivation {
                fact: Fact::Indexed(Kind::CurveComp, s),
                rule: "R10",
                premises: vec![Fact::Flag(Flag::CeresaZero)],
                statement: format!(
                    "ceresa = 0 forces cls({s}) = 0: the odd components live in independent \
                     Beauville degrees, so the vanishing of their sum kills each one"
                ),
            });
        }
    }
    out
}

fn r11_beauville_support(st: &State) -> Vec<Derivation> {
    let g = st.genus;
    let delta_support = format!("delta has Beauville components only in degrees 2..={g}");
    vec![
        Derivation {
            fact: Fact::Tail(Kind::CurveComp, g as u32),
            rule: "R11",
            premises: vec![],
            statement: format!(
                "the curve class on a genus {g} Jacobian has Beauville components only in \
                 degrees 0..={}, so cls(k) = 0 identically for k >= {g}",
                g - 1
            ),
        },
        Derivation {
            fact: Fact::Indexed(Kind::DeltaComp, 0),
            rule: "R11",
            premises: vec![],
            statement: format!("delta(0) = 0 identically: {delta_support}"),
        },
        Derivation {
            fact: Fact::Indexed(Kind::DeltaComp, 1),
            rule: "R11",
            premises: vec![],
            statement: format!("delta(1) = 0 identically: {delta_support}"),
        },
        Derivation {
            fact: Fact::Tail(Kind::DeltaComp, (g + 1) as u32),
            rule: "R11",
            premises: vec![],
            statement: format!(
                "delta(k) = 0 identically for k >= {}: {delta_support}",
                g + 1
            ),
        },
    ]
}

fn r12_progression(st: &State) -> Vec<Derivation> {
    let mut out = Vec::new();
    let ge = st.set(Kind::GammaE);
    for &n in &ge.explicit {
        if n == 2 {
            out.push(Derivation {
                fact: Fact::Tail(Kind::GammaE, 1),
                rule: "R12",
                premises: vec![Fact::Indexed(Kind::GammaE, 2)],
                statement: "gamma(2, e) = 0 propagates along the progression k + 1, giving \
                            gamma(k, e) = 0 for all k >= 1"
                    .to_string(),
            });
        } else if n >= 3 {
            let mut i = 1;
            while i <= st.cap {
                out.push(Derivation {
                    fact: Fact::Indexed(Kind::GammaE, i),
                    rule: "R12",
                    premises: vec![Fact::Indexed(Kind::GammaE, n)],
                    statement: format!(
                        "gamma({n}, e) = 0 propagates along the progression k*({}) + 1, \
                         giving gamma({i}, e) = 0",
                        n - 1
                    ),
                });
                i += n - 1;
            }
        }
    }
    if let Some(t) = ge.tail {
        let n = t.max(2);
        out.push(Derivation {
            fact: Fact::Indexed(Kind::GammaE, 1),
            rule: "R12",
            premises: vec![Fact::Tail(Kind::GammaE, t)],
            statement: format!(
                "gamma({n}, e) = 0 gives gamma(1, e) = 0 as the k = 0 member of the \
                 progression k*({}) + 1",
                n - 1
            ),
        });
        if t <= 2 {
            out.push(Derivation {
                fact: Fact::Tail(Kind::GammaE, 1),
                rule: "R12",
                premises: vec![Fact::Tail(Kind::GammaE, t)],
                statement: "gamma(2, e) = 0 propagates along the progression k + 1, giving \
                            gamma(k, e) = 0 for all k >= 1"
                    .to_string(),
            });
        }
    }
    out
}

fn r14_three_point_collapse(st: &State) -> Vec<Derivation> {
    let mut out = Vec::new();
    if st.contains(Kind::Gamma, 3) {
        out.push(Derivation {
            fact: Fact::Tail(Kind::Gamma, 3),
            rule: "R14",
            premises: vec![st.witness(Kind::Gamma, 3)],
            statement: "Gamma(3) = 0 forces Gamma(k) = 0 for every k >= 3: the modified \
                        diagonal recurrences bootstrap from the 3-point case to all higher \
                        arities"
                .to_string(),
        });
    }
    out
}

/// Propagate assumptions to their closure with the canonical rule order.
pub fn propagate(genus: i64, assumptions: &[Fact]) -> Result<State> {
    let order: Vec<usize> = (0..rule_count()).collect();
    propagate_with_order(genus, assumptions, &order)
}

/// Propagate with the rule table permuted; the resulting canonical view does
/// not depend on the permutation.
pub fn propagate_with_order(genus: i64, assumptions: &[Fact], order: &[usize]) -> Result<State> {
    let table = rule_table();
    assert_eq!(order.len(), table.len(), "order must permute the rule table");
    let mut state = State::new(genus)?;
    for &fact in assumptions {
        state.admit(Derivation {
            fact,
            rule: "assumed",
            premises: vec![],
            statement: String::new(),
        });
    }
    loop {
        let mut changed = false;
        for &idx in order {
            let (_, rule) = table[idx];
            for d in rule(&state) {
                changed |= state.admit(d);
            }
        }
        if !changed {
            break;
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closure_of(genus: i64, assumptions: &[Fact]) -> Closure {
        propagate(genus, assumptions).unwrap().canonical_view()
    }

    fn set(explicit: &[u32], tail: Option<u32>) -> IndexSet {
        IndexSet {
            explicit: explicit.iter().copied().collect(),
            tail,
        }
    }

    #[test]
    fn assumption_free_baseline_genus_3() {
        let c = closure_of(3, &[]);
        assert_eq!(c.sets[&Kind::Gamma], set(&[], Some(5)));
        assert_eq!(c.sets[&Kind::B], set(&[], Some(5)));
        assert_eq!(c.sets[&Kind::CurveComp], set(&[], Some(3)));
        assert_eq!(c.sets[&Kind::GammaE], set(&[1], Some(4)));
        assert_eq!(c.sets[&Kind::DeltaComp], set(&[0, 1], Some(4)));
        assert!(c.flags.is_empty());
    }

    #[test]
    fn three_point_vanishing_closes_everything_at_genus_3() {
        let c = closure_of(3, &[Fact::Indexed(Kind::Gamma, 3)]);
        assert_eq!(c.sets[&Kind::Gamma], set(&[], Some(3)));
        assert_eq!(c.sets[&Kind::B], set(&[], Some(3)));
        assert_eq!(c.sets[&Kind::CurveComp], set(&[], Some(1)));
        assert_eq!(c.sets[&Kind::GammaE], set(&[], Some(1)));
        assert_eq!(c.sets[&Kind::DeltaComp], set(&[], Some(0)));
        assert_eq!(
            c.flags,
            [Flag::DeltaZero, Flag::CeresaZero, Flag::EIsXi]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn empty_genus_2_reaches_the_arity_ceiling() {
        let c = closure_of(2, &[]);
        assert_eq!(c.sets[&Kind::Gamma].tail, Some(4));
    }

    #[test]
    fn two_curve_components_collapse_at_genus_5() {
        let c = closure_of(
            5,
            &[
                Fact::Indexed(Kind::CurveComp, 1),
                Fact::Indexed(Kind::CurveComp, 2),
            ],
        );
        assert_eq!(c.sets[&Kind::CurveComp], set(&[], Some(1)));
        assert_eq!(c.sets[&Kind::Gamma], set(&[], Some(3)));
        assert!(c.flags.contains(&Flag::CeresaZero));
    }

    #[test]
    fn explanation_chain_for_delta_zero() {
        let st = propagate(3, &[Fact::Indexed(Kind::Gamma, 3)]).unwrap();
        let lines = st.explain(&Fact::Flag(Flag::DeltaZero)).unwrap();
        let text = lines.join("\n");
        for rule in ["[assumed]", "[R2]", "[R5]", "[R6]", "[R7]"] {
            assert!(text.contains(rule), "missing {rule} in:\n{text}");
        }
        assert!(lines.last().unwrap().starts_with("delta=0"));
    }

    #[test]
    fn tail_specialization_explains_covered_indices() {
        let st = propagate(3, &[Fact::Indexed(Kind::Gamma, 3)]).unwrap();
        let lines = st.explain(&Fact::Indexed(Kind::Gamma, 7)).unwrap();
        assert!(lines.last().unwrap().contains("specializes"));
        let err = st.explain(&Fact::Indexed(Kind::Gamma, 2)).unwrap_err();
        assert!(matches!(err, CycError::FactNotDerived(_)));
    }

    #[test]
    fn rule_order_does_not_change_the_closure() {
        let assumptions = [Fact::Indexed(Kind::Gamma, 3)];
        let baseline = closure_of(3, &assumptions);
        let n = rule_count();
        let reversed: Vec<usize> = (0..n).rev().collect();
        let rotated: Vec<usize> = (0..n).map(|i| (i + 5) % n).collect();
        for order in [reversed, rotated] {
            let c = propagate_with_order(3, &assumptions, &order)
                .unwrap()
                .canonical_view();
            assert_eq!(c, baseline);
        }
    }

    #[test]
    fn assumptions_only_grow_the_closure() {
        let base = closure_of(4, &[Fact::Indexed(Kind::Gamma, 4)]);
        let more = closure_of(
            4,
            &[Fact::Indexed(Kind::Gamma, 4), Fact::Flag(Flag::CeresaZero)],
        );
        for kind in Kind::ALL {
            let b = &base.sets[&kind];
            let m = &more.sets[&kind];
            for &i in &b.explicit {
                assert!(m.contains(i));
            }
            if let Some(t) = b.tail {
                assert!(m.tail.is_some_and(|mt| mt <= t));
            }
        }
        assert!(more.flags.is_superset(&base.flags));
    }

    #[test]
    fn fact_notation_round_trips() {
        let facts = [
            Fact::Indexed(Kind::Gamma, 3),
            Fact::Indexed(Kind::B, 4),
            Fact::Indexed(Kind::CurveComp, 1),
            Fact::Indexed(Kind::GammaE, 2),
            Fact::Indexed(Kind::DeltaComp, 2),
            Fact::Flag(Flag::DeltaZero),
            Fact::Flag(Flag::CeresaZero),
            Fact::Flag(Flag::EIsXi),
        ];
        for f in facts {
            assert_eq!(parse_fact(&f.to_string()).unwrap(), f);
        }
        assert_eq!(
            parse_fact(" gamma( 2 , e ) = 0 ").unwrap(),
            Fact::Indexed(Kind::GammaE, 2)
        );
        assert!(matches!(
            parse_fact("Gamma(3)=1"),
            Err(CycError::Syntax { .. })
        ));
        assert!(matches!(parse_fact("xyz"), Err(CycError::Syntax { .. })));
    }

    #[test]
    fn invalid_genus_is_rejected() {
        assert!(matches!(
            propagate(1, &[]),
            Err(CycError::InvalidGenus(_))
        ));
    }
}

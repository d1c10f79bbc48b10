//! Metric properties (P1)–(P3) and the structural recognizers they
//! characterize: block graphs, extended block graphs and vertebrate graphs.
//!
//! Every checker is exhaustive and reports the lexicographically first
//! violation, so checkers can serve as oracles for one another.

mod backbone;
mod metric;
mod recognize;

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::graph::{blocks, gates, DistanceMatrix, Graph};

pub use backbone::{
    certify_backbone, exhaustive_p3_guard_set, find_backbone, verify_backbone, BackboneCertificate, BackboneSearch,
    BackboneStage, DominationWitness, DEFAULT_EXHAUSTIVE_LIMIT,
};
pub use metric::{check_p1, check_p2, check_p3_with_r, compute_c, p3_blocker};
pub use recognize::{is_block_graph, is_extended_block_graph, twin_contraction, JointStructure};

/// Which property a [`Violation`] refutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Property {
    P1,
    P2,
    P3,
    Block,
    Backbone,
}

/// A concrete counterexample. Vertex ids refer to the graph that was checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The two largest of `d(c,c')+d(x,y)`, `d(c,x)+d(c',y)`, `d(c,y)+d(c',x)`
    /// differ. `sums` lists them in that order.
    FourPoint {
        c: usize,
        c_prime: usize,
        x: usize,
        y: usize,
        sums: [u32; 3],
    },
    /// `c' ∈ N(c,x)`, `d(c',y) >= 2`, and neither path equality holds.
    P2 {
        c: usize,
        x: usize,
        c_prime: usize,
        y: usize,
    },
    /// `v` lies outside N[R].
    Uncovered { v: usize },
    /// No `c' ∈ N_R(c,x)` satisfies the (P3) inner condition. Each candidate
    /// is listed with a blocking `y`.
    NoP3Gate {
        c: usize,
        x: usize,
        blockers: Vec<(usize, usize)>,
    },
    /// `u` and `v` share a block but are not adjacent. With `contracted`
    /// set, the block is one of the closed-twin contraction and `u`, `v` are
    /// the smallest members of their twin classes.
    NonCliqueBlock { u: usize, v: usize, contracted: bool },
    /// The candidate backbone does not induce an extended block graph. The
    /// inner violation uses parent ids.
    BackboneNotExtended(Box<Violation>),
    /// No gate of `c` towards `x` inside the backbone dominates all of N(c,x).
    NoDominatingGate { c: usize, x: usize },
}

impl Violation {
    pub fn property(&self) -> Property {
        match self {
            Violation::FourPoint { .. } => Property::P1,
            Violation::P2 { .. } => Property::P2,
            Violation::Uncovered { .. } | Violation::NoP3Gate { .. } => Property::P3,
            Violation::NonCliqueBlock { .. } => Property::Block,
            Violation::BackboneNotExtended(_) | Violation::NoDominatingGate { .. } => {
                Property::Backbone
            }
        }
    }

    /// The offending tuple, in the order the property names them.
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            Violation::FourPoint { c, c_prime, x, y, .. } => vec![*c, *c_prime, *x, *y],
            Violation::P2 { c, x, c_prime, y } => vec![*c, *x, *c_prime, *y],
            Violation::Uncovered { v } => vec![*v],
            Violation::NoP3Gate { c, x, .. } | Violation::NoDominatingGate { c, x } => vec![*c, *x],
            Violation::NonCliqueBlock { u, v, .. } => vec![*u, *v],
            Violation::BackboneNotExtended(inner) => inner.vertices(),
        }
    }

    /// Re-evaluates the recorded failure on `g`. `set` is the guard set R
    /// for (P3) violations and the backbone B for backbone violations.
    pub fn reproduces(&self, g: &Graph, d: &DistanceMatrix, set: Option<&[usize]>) -> bool {
        let in_set = |v: usize| set.is_some_and(|s| s.contains(&v));
        match self {
            &Violation::FourPoint { c, c_prime, x, y, sums } => {
                let now = [
                    d.get(c, c_prime) + d.get(x, y),
                    d.get(c, x) + d.get(c_prime, y),
                    d.get(c, y) + d.get(c_prime, x),
                ];
                let mut sorted = now;
                sorted.sort_unstable();
                now == sums && sorted[1] != sorted[2]
            }
            &Violation::P2 { c, x, c_prime, y } => {
                d.get(c, x) >= 2
                    && g.has_edge(c, c_prime)
                    && d.get(c_prime, x) + 1 == d.get(c, x)
                    && metric::blocks_gate(d, c, x, c_prime, y)
            }
            &Violation::Uncovered { v } => {
                set.is_some() && !g.closed_neighborhood(v).ones().any(in_set)
            }
            Violation::NoP3Gate { c, x, blockers } => {
                let (c, x) = (*c, *x);
                if !in_set(c) || d.get(c, x) < 2 {
                    return false;
                }
                let candidates: Vec<usize> = gates(g, d, c, x).filter(|&v| in_set(v)).collect();
                candidates.len() == blockers.len()
                    && candidates
                        .iter()
                        .zip(blockers)
                        .all(|(&cp, &(bp, y))| cp == bp && metric::blocks_gate(d, c, x, cp, y))
            }
            &Violation::NonCliqueBlock { u, v, contracted } => {
                if g.has_edge(u, v) || !g.is_connected() {
                    return false;
                }
                if contracted {
                    let (h, class_of) = twin_contraction(g);
                    let (a, b) = (class_of[u], class_of[v]);
                    blocks(&h)
                        .map(|bd| bd.blocks.iter().any(|bl| bl.contains(&a) && bl.contains(&b)))
                        .unwrap_or(false)
                } else {
                    blocks(g)
                        .map(|bd| bd.blocks.iter().any(|bl| bl.contains(&u) && bl.contains(&v)))
                        .unwrap_or(false)
                }
            }
            Violation::BackboneNotExtended(inner) => {
                let Some(b) = set else { return false };
                let sub = g.induced(b);
                let local = |p: usize| b.iter().position(|&v| v == p);
                let relabelled = inner.map_ids(|p| local(p).expect("witness lies in the backbone"));
                let ds = DistanceMatrix::new(&sub);
                relabelled.reproduces(&sub, &ds, None)
            }
            &Violation::NoDominatingGate { c, x } => {
                in_set(c)
                    && d.get(c, x) >= 2
                    && !gates(g, d, c, x)
                        .filter(|&cp| in_set(cp))
                        .any(|cp| gates(g, d, c, x).all(|v| g.dominates(cp, v)))
            }
        }
    }

    /// Applies `f` to every vertex id in the violation.
    pub fn map_ids(&self, f: impl Fn(usize) -> usize + Copy) -> Violation {
        match self {
            &Violation::FourPoint { c, c_prime, x, y, sums } => Violation::FourPoint {
                c: f(c),
                c_prime: f(c_prime),
                x: f(x),
                y: f(y),
                sums,
            },
            &Violation::P2 { c, x, c_prime, y } => Violation::P2 {
                c: f(c),
                x: f(x),
                c_prime: f(c_prime),
                y: f(y),
            },
            &Violation::Uncovered { v } => Violation::Uncovered { v: f(v) },
            Violation::NoP3Gate { c, x, blockers } => Violation::NoP3Gate {
                c: f(*c),
                x: f(*x),
                blockers: blockers.iter().map(|&(a, b)| (f(a), f(b))).collect(),
            },
            &Violation::NonCliqueBlock { u, v, contracted } => Violation::NonCliqueBlock {
                u: f(u),
                v: f(v),
                contracted,
            },
            Violation::BackboneNotExtended(inner) => {
                Violation::BackboneNotExtended(Box::new(inner.map_ids(f)))
            }
            &Violation::NoDominatingGate { c, x } => Violation::NoDominatingGate { c: f(c), x: f(x) },
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FourPoint { c, c_prime, x, y, sums } => write!(
                f,
                "four-point sums for (c={c}, c'={c_prime}, x={x}, y={y}) are {}, {}, {}; the largest two differ",
                sums[0], sums[1], sums[2]
            ),
            Violation::P2 { c, x, c_prime, y } => write!(
                f,
                "c'={c_prime} is a gate of c={c} towards x={x}, but neither d(c,y) = 1 + d(c',y) nor d(x,y) = d(x,c') + d(c',y) for y={y}"
            ),
            Violation::Uncovered { v } => write!(f, "vertex {v} is not in N[R]"),
            Violation::NoP3Gate { c, x, blockers } => {
                write!(f, "no gate of c={c} towards x={x} in R satisfies the path condition")?;
                for (cp, y) in blockers {
                    write!(f, "; c'={cp} blocked by y={y}")?;
                }
                Ok(())
            }
            Violation::NonCliqueBlock { u, v, contracted: false } => {
                write!(f, "{u} and {v} share a block but are not adjacent")
            }
            Violation::NonCliqueBlock { u, v, contracted: true } => write!(
                f,
                "the twin classes of {u} and {v} share a block of the twin contraction but are not adjacent"
            ),
            Violation::BackboneNotExtended(inner) => {
                write!(f, "backbone is not an extended block graph: {inner}")
            }
            Violation::NoDominatingGate { c, x } => write!(
                f,
                "no backbone gate of c={c} towards x={x} dominates every vertex of N(c,x)"
            ),
        }
    }
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Violation", 3)?;
        st.serialize_field("property", &self.property())?;
        st.serialize_field("vertices", &self.vertices())?;
        st.serialize_field("detail", &self.to_string())?;
        st.end()
    }
}

/// Outcome of a check: the property holds (with an optional payload such as
/// a joint structure) or fails with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T = ()> {
    Holds(T),
    Fails(Violation),
}

impl<T> Verdict<T> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Holds(_) => None,
            Verdict::Fails(v) => Some(v),
        }
    }

    pub fn ok(self) -> Option<T> {
        match self {
            Verdict::Holds(t) => Some(t),
            Verdict::Fails(_) => None,
        }
    }
}

//! Closed forms for projective dimensions of simples, strings and
//! injectives, the global and self-injective dimensions, and the
//! Gorenstein report.

use std::fmt;

use crate::forbidden::{ForbiddenPaths, ForbiddenWalk, LengthOrInf};
use crate::quiver::{AlmostGentlePair, ArrowId, Path, VertexId};
use crate::strings::{anticlaw_of, is_right_maximal, socle_supports};
use crate::syzygy::{is_invalid_vertex, omega1_directed_string, Summand};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Longest forbidden path leaving a vertex.
    ForbiddenFromVertex,
    /// Longest forbidden path continuing or branching off a string.
    ForbiddenFromString,
    /// One syzygy step, then the string formula on each summand.
    OneStepThenStrings,
    /// Anti-claw branches and the kernel block at the vertex.
    InjectiveAntiClaw,
    /// Maximum over vertices.
    Maximum,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::ForbiddenFromVertex => "forbidden-from-vertex",
            Method::ForbiddenFromString => "forbidden-from-string",
            Method::OneStepThenStrings => "one-step-then-strings",
            Method::InjectiveAntiClaw => "injective-anticlaw",
            Method::Maximum => "maximum-over-vertices",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimReport {
    pub value: LengthOrInf,
    /// A forbidden path realising the value; empty for value zero.
    pub witness: ForbiddenWalk,
    pub method: Method,
    pub attained_at: Option<VertexId>,
}

impl DimReport {
    fn at(mut self, v: VertexId) -> Self {
        self.attained_at = Some(v);
        self
    }

    fn new((value, witness): (LengthOrInf, ForbiddenWalk), method: Method) -> Self {
        DimReport { value, witness, method, attained_at: None }
    }
}

/// Which of the two local configurations puts a vertex of a relation cycle
/// into the infinite case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleCondition {
    /// Another arrow into `v` is zero with the cycle arrow leaving `v`.
    A,
    /// The cycle arrow into `v` is zero with another arrow leaving `v`.
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    /// Relation cycle, starting with the arrow into `vertex`.
    pub cycle: Vec<ArrowId>,
    pub vertex: VertexId,
    pub condition: CycleCondition,
    /// The extra arrow: into `vertex` for A, out of it for B.
    pub arrow: ArrowId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinReport {
    pub gldim: DimReport,
    pub injdim: DimReport,
    pub gorenstein: bool,
    pub cycle_criterion: bool,
    pub cycle_witness: Option<CycleWitness>,
    pub envelope_pdim: LengthOrInf,
    pub auslander_note: String,
}

fn longer(a: &DimReport, b: &DimReport) -> bool {
    match a.value.cmp(&b.value) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => a.witness.unrolled() < b.witness.unrolled(),
    }
}

/// Prefixes `alpha` to a walk whose first arrow is zero after `alpha`.
fn prepend(alpha: ArrowId, (len, walk): (LengthOrInf, ForbiddenWalk)) -> (LengthOrInf, ForbiddenWalk) {
    let walk = match walk {
        ForbiddenWalk::Finite(mut w) => {
            w.insert(0, alpha);
            ForbiddenWalk::Finite(w)
        }
        ForbiddenWalk::Lasso { mut stem, cycle } => {
            stem.insert(0, alpha);
            ForbiddenWalk::Lasso { stem, cycle }
        }
    };
    (len.plus(1), walk)
}

/// Dimension queries sharing one relation digraph.
#[derive(Clone, Debug)]
pub struct HomDim<'a> {
    pair: &'a AlmostGentlePair,
    fp: ForbiddenPaths<'a>,
}

impl<'a> HomDim<'a> {
    pub fn new(pair: &'a AlmostGentlePair) -> Self {
        HomDim { pair, fp: ForbiddenPaths::new(pair) }
    }

    pub fn forbidden(&self) -> &ForbiddenPaths<'a> {
        &self.fp
    }

    pub fn pdim_simple(&self, v: VertexId) -> DimReport {
        let mut r = DimReport::new(self.fp.from_vertex(v), Method::ForbiddenFromVertex);
        r.attained_at = Some(v);
        r
    }

    /// Projective dimension of the string module `M(δ)`.
    pub fn pdim_directed_string(&self, delta: &Path) -> DimReport {
        if delta.is_empty() {
            return self.pdim_simple(delta.start());
        }
        if is_right_maximal(self.pair, delta) {
            return DimReport::new(self.fp.delta_sup(delta), Method::ForbiddenFromString);
        }
        // the own-branch remainder of a shorter string, and the other
        // branches, are right maximal strings or simples
        let syzygy = omega1_directed_string(self.pair, delta);
        if syzygy.is_empty() {
            return DimReport::new((LengthOrInf::Finite(0), ForbiddenWalk::empty()), Method::OneStepThenStrings);
        }
        let mut best: Option<DimReport> = None;
        for s in syzygy.keys() {
            let r = match s {
                Summand::Projective(v) => {
                    DimReport::new((LengthOrInf::Finite(0), ForbiddenWalk::Finite(vec![])), Method::OneStepThenStrings)
                        .at(*v)
                }
                Summand::Simple(v) => self.pdim_simple(*v),
                Summand::DirString(p) => self.pdim_directed_string(p),
                Summand::PsiBlock(_) => unreachable!("strings have directed syzygies"),
            };
            if best.as_ref().map_or(true, |b| longer(&r, b)) {
                best = Some(r);
            }
        }
        let r = best.expect("nonzero syzygy");
        DimReport { value: r.value.plus(1), method: Method::OneStepThenStrings, ..r }
    }

    /// Projective dimension of the injective `E(v)`.
    ///
    /// With one incoming arrow `E(v)` is the string of its anti-claw branch.
    /// With `c ≥ 2` its first syzygy splits into the remainders of the other
    /// claw branches at each anti-claw source, each contributing the longest
    /// forbidden path starting with that branch, and the block `Ψ₀`, which
    /// contributes one more than the longest forbidden path starting with an
    /// arrow that at least two incoming arrows are zero with.
    pub fn pdim_injective(&self, v: VertexId) -> DimReport {
        let pair = self.pair;
        let anti = anticlaw_of(pair, v);
        let mut report = match anti.branches.as_slice() {
            [] => self.pdim_simple(v),
            [s] => DimReport::new(self.fp.delta_sup(s), Method::InjectiveAntiClaw),
            branches => {
                let mut cands = Vec::new();
                for s in branches {
                    for &b in pair.outgoing(s.start()) {
                        if Some(b) != s.first() {
                            cands.push(self.fp.from_arrow(b));
                        }
                    }
                }
                let ins = pair.incoming(v);
                let mut block = (LengthOrInf::Finite(1), ForbiddenWalk::Finite(vec![ins[0]]));
                for &g in pair.outgoing(v) {
                    let zero: Vec<ArrowId> = ins.iter().copied().filter(|&a| pair.is_relation(a, g)).collect();
                    if zero.len() >= 2 {
                        let c = prepend(zero[0], self.fp.from_arrow(g));
                        if c.0 > block.0 || (c.0 == block.0 && c.1.unrolled() < block.1.unrolled()) {
                            block = c;
                        }
                    }
                }
                cands.push(block);
                let mut best = cands.swap_remove(0);
                for c in cands {
                    if c.0 > best.0 || (c.0 == best.0 && c.1.unrolled() < best.1.unrolled()) {
                        best = c;
                    }
                }
                DimReport::new(best, Method::InjectiveAntiClaw)
            }
        };
        report.attained_at = Some(v);
        report
    }

    fn maximum(&self, f: impl Fn(VertexId) -> DimReport) -> DimReport {
        let mut best = DimReport {
            value: LengthOrInf::Finite(0),
            witness: ForbiddenWalk::empty(),
            method: Method::Maximum,
            attained_at: None,
        };
        for v in self.pair.vertices() {
            let r = f(v);
            if best.attained_at.is_none() || longer(&r, &best) {
                best = DimReport { method: Method::Maximum, ..r };
            }
        }
        best
    }

    pub fn global_dimension(&self) -> DimReport {
        self.maximum(|v| self.pdim_simple(v))
    }

    pub fn self_injective_dimension(&self) -> DimReport {
        self.maximum(|v| self.pdim_injective(v))
    }

    /// Looks for a relation cycle through `v` (entering by `p`, leaving by
    /// `q`) with another arrow zero against one of them.
    pub fn self_injective_infinite_by_cycle(&self) -> Option<CycleWitness> {
        let pair = self.pair;
        let g = self.fp.graph();
        for (p, q) in g.edges() {
            if !g.on_common_cycle(p, q) {
                continue;
            }
            let v = pair.target(p);
            let found = pair
                .incoming(v)
                .iter()
                .find(|&&a| a != p && pair.is_relation(a, q))
                .map(|&a| (CycleCondition::A, a))
                .or_else(|| {
                    pair.outgoing(v)
                        .iter()
                        .find(|&&b| b != q && pair.is_relation(p, b))
                        .map(|&b| (CycleCondition::B, b))
                });
            if let Some((condition, arrow)) = found {
                return Some(CycleWitness { cycle: g.cycle_through_edge(p, q), vertex: v, condition, arrow });
            }
        }
        None
    }

    /// Vertices lying on a relation cycle that are not invalid.
    pub fn valid_vertices_on_cycles(&self) -> Vec<VertexId> {
        let g = self.fp.graph();
        let mut out: Vec<VertexId> = self
            .pair
            .arrows()
            .filter(|&a| g.on_cycle(a))
            .map(|a| self.pair.source(a))
            .filter(|&v| is_invalid_vertex(self.pair, v).is_none())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Projective dimension of the injective envelope of the regular module.
    pub fn pdim_injective_envelope(&self) -> LengthOrInf {
        let mut supports = socle_supports(self.pair);
        supports.dedup();
        supports.into_iter().map(|u| self.pdim_injective(u).value).max().unwrap_or(LengthOrInf::Finite(0))
    }

    pub fn gorenstein_report(&self) -> GorensteinReport {
        let gldim = self.global_dimension();
        let injdim = self.self_injective_dimension();
        let cycle_witness = self.self_injective_infinite_by_cycle();
        let envelope_pdim = self.pdim_injective_envelope();
        let gorenstein = injdim.value.is_finite();
        let auslander_note = if gorenstein {
            format!("self-injective dimension {} is finite on both sides, so the algebra is Gorenstein", injdim.value)
        } else if envelope_pdim == LengthOrInf::Infinite {
            "the Auslander condition fails: the injective envelope of the regular module has infinite projective dimension"
                .to_string()
        } else {
            format!("self-injective dimension is infinite but the injective envelope has projective dimension {envelope_pdim}")
        };
        GorensteinReport {
            gldim,
            injdim,
            gorenstein,
            cycle_criterion: cycle_witness.is_some(),
            cycle_witness,
            envelope_pdim,
            auslander_note,
        }
    }
}

pub fn pdim_simple(pair: &AlmostGentlePair, v: VertexId) -> DimReport {
    HomDim::new(pair).pdim_simple(v)
}

pub fn pdim_directed_string(pair: &AlmostGentlePair, delta: &Path) -> DimReport {
    HomDim::new(pair).pdim_directed_string(delta)
}

pub fn pdim_injective(pair: &AlmostGentlePair, v: VertexId) -> DimReport {
    HomDim::new(pair).pdim_injective(v)
}

pub fn global_dimension(pair: &AlmostGentlePair) -> DimReport {
    HomDim::new(pair).global_dimension()
}

pub fn self_injective_dimension(pair: &AlmostGentlePair) -> DimReport {
    HomDim::new(pair).self_injective_dimension()
}

pub fn self_injective_infinite_by_cycle(pair: &AlmostGentlePair) -> Option<CycleWitness> {
    HomDim::new(pair).self_injective_infinite_by_cycle()
}

pub fn pdim_injective_envelope(pair: &AlmostGentlePair) -> LengthOrInf {
    HomDim::new(pair).pdim_injective_envelope()
}

pub fn gorenstein_report(pair: &AlmostGentlePair) -> GorensteinReport {
    HomDim::new(pair).gorenstein_report()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use LengthOrInf::{Finite, Infinite};

    #[test]
    fn simple_and_global() {
        let p = fixtures::fig1();
        assert_eq!(pdim_simple(&p, p.vertex("1").unwrap()).value, Finite(4));
        assert_eq!(pdim_simple(&p, p.vertex("5").unwrap()).value, Finite(0));
        let g = global_dimension(&p);
        assert_eq!(g.value, Finite(4));
        assert_eq!(g.witness.display(&p), "a_1_2 a_2_3 a_3_4 a_4_5");
        assert_eq!(global_dimension(&fixtures::a2()).value, Finite(1));
        assert_eq!(global_dimension(&fixtures::loop_()).value, Infinite);
        let c = fixtures::cyc2();
        assert_eq!(pdim_simple(&c, c.vertex("1").unwrap()).value, Infinite);
    }

    #[test]
    fn strings() {
        let p = fixtures::fig1();
        assert_eq!(pdim_directed_string(&p, &p.path_from_names("a_1_2").unwrap()).value, Finite(2));
        let g = fixtures::gate();
        assert_eq!(pdim_directed_string(&g, &g.path_from_names("a,b").unwrap()).value, Finite(0));
        let c = fixtures::cyc2();
        // M(a) is P(1) since ab = 0
        assert_eq!(pdim_directed_string(&c, &c.path_from_names("a").unwrap()).value, Finite(0));
        // not right maximal: M(a_1_2R) has syzygy S(3R) plus branch remainders
        let short = p.path_from_names("a_1_2R").unwrap();
        let r = pdim_directed_string(&p, &short);
        assert_eq!(r.method, Method::OneStepThenStrings);
        assert_eq!(r.value, HomDim::new(&p).forbidden().delta_sup(&short).0);
    }

    #[test]
    fn injectives() {
        let p = fixtures::fig1();
        let r = pdim_injective(&p, p.vertex("2R").unwrap());
        assert_eq!(r.value, Finite(4));
        assert!(r.witness.is_forbidden(&p));
        let g = fixtures::gate();
        assert_eq!(pdim_injective(&g, g.vertex("3").unwrap()).value, Finite(0));
        let a2 = fixtures::a2();
        assert_eq!(pdim_injective(&a2, a2.vertex("1").unwrap()).value, Finite(1));
        assert_eq!(self_injective_dimension(&a2).value, Finite(1));
        assert_eq!(self_injective_dimension(&fixtures::cyc2()).value, Finite(0));
    }

    #[test]
    fn cycle_criterion() {
        assert!(self_injective_infinite_by_cycle(&fixtures::cyc2()).is_none());
        assert!(self_injective_infinite_by_cycle(&fixtures::fig1()).is_none());
        let p = fixtures::cyc2e();
        let w = self_injective_infinite_by_cycle(&p).unwrap();
        assert_eq!(w.condition, CycleCondition::B);
        assert_eq!(p.vertex_name(w.vertex), "1");
        assert_eq!(p.arrow_name(w.arrow), "e");
    }

    #[test]
    fn envelopes_and_reports() {
        assert_eq!(pdim_injective_envelope(&fixtures::cyc2()), Finite(0));
        assert_eq!(pdim_injective_envelope(&fixtures::cyc2e()), Infinite);
        assert_eq!(pdim_injective_envelope(&fixtures::a2()), Finite(0));
        let r = gorenstein_report(&fixtures::cyc2e());
        assert!(!r.gorenstein && r.cycle_criterion);
        assert!(r.auslander_note.contains("Auslander condition fails"));
        let r = gorenstein_report(&fixtures::cyc2());
        assert!(r.gorenstein);
        assert_eq!((r.gldim.value, r.injdim.value), (Infinite, Finite(0)));
        assert!(gorenstein_report(&fixtures::fig1()).gorenstein);
    }
}

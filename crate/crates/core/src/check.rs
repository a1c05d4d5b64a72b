//! Cross-validation of the closed forms against the linear algebra oracle.

use std::collections::BTreeMap;
use std::fmt;

use crate::forbidden::LengthOrInf;
use crate::homdim::HomDim;
use crate::oracle::{Oracle, OraclePdim, OracleResolution};
use crate::quiver::{AlmostGentlePair, VertexId};
use crate::strings::ModuleSpec;
use crate::syzygy::{decomposition_dims, is_invalid_vertex, resolve_symbolic};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// Vertex name, or the module for string checks.
    pub subject: String,
    pub quantity: String,
    pub formula: String,
    pub oracle: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: formula {} oracle {}", self.subject, self.quantity, self.formula, self.oracle)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub algebra: String,
    pub cutoff: u64,
    /// Number of individual comparisons made.
    pub comparisons: usize,
    pub mismatches: Vec<Mismatch>,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Finite values agree exactly. An infinite formula value agrees with a
/// nonzero syzygy at the cutoff, as does a finite one at least the cutoff
/// unless the oracle found the resolution to be periodic.
pub fn pdim_agrees(formula: LengthOrInf, oracle: &OracleResolution) -> bool {
    match (formula, oracle.pdim) {
        (LengthOrInf::Finite(n), OraclePdim::Finite(m)) => n == m,
        (LengthOrInf::Infinite, OraclePdim::AtLeast(_)) => true,
        (LengthOrInf::Finite(n), OraclePdim::AtLeast(c)) => !oracle.periodic && n >= c,
        (LengthOrInf::Infinite, OraclePdim::Finite(_)) => false,
    }
}

fn show_oracle(r: &OracleResolution) -> String {
    match (r.pdim, r.periodic) {
        (OraclePdim::AtLeast(_), true) => "periodic".to_string(),
        (p, _) => p.to_string(),
    }
}

fn show_map(pair: &AlmostGentlePair, m: &BTreeMap<VertexId, u64>) -> String {
    let parts: Vec<String> = m.iter().map(|(v, n)| format!("{}:{n}", pair.vertex_name(*v))).collect();
    format!("{{{}}}", parts.join(", "))
}

fn show_dims(pair: &AlmostGentlePair, d: &[u64]) -> String {
    let m: BTreeMap<VertexId, u64> =
        d.iter().enumerate().filter(|(_, x)| **x > 0).map(|(i, x)| (VertexId(i), *x)).collect();
    show_map(pair, &m)
}

struct Checker<'a> {
    pair: &'a AlmostGentlePair,
    hd: HomDim<'a>,
    oracle: Oracle<'a>,
    cutoff: u64,
    comparisons: usize,
    mismatches: Vec<Mismatch>,
}

impl<'a> Checker<'a> {
    fn compare(&mut self, subject: &str, quantity: String, ok: bool, formula: String, oracle: String) {
        self.comparisons += 1;
        if !ok {
            self.mismatches.push(Mismatch { subject: subject.to_string(), quantity, formula, oracle });
        }
    }

    fn module(&mut self, subject: &str, label: &str, spec: &ModuleSpec, formula: LengthOrInf) {
        let rep = self.oracle.rep(spec).expect("module of this algebra");
        let res = self.oracle.resolve(&rep, self.cutoff);
        self.compare(
            subject,
            format!("pdim {label}"),
            pdim_agrees(formula, &res),
            formula.to_string(),
            show_oracle(&res),
        );
        let pair = self.pair;
        let sym = resolve_symbolic(pair, spec, res.levels.len() - 1);
        for (k, (s, o)) in sym.levels.iter().zip(&res.levels).enumerate() {
            let sdims = decomposition_dims(pair, &s.syzygy);
            let saturated =
                s.cover.values().chain(&sdims).chain(o.top.values()).chain(&o.syzygy_dims).any(|&x| x == u64::MAX);
            if saturated {
                break;
            }
            self.compare(
                subject,
                format!("{label} level {k} cover"),
                s.cover == o.top,
                show_map(pair, &s.cover),
                show_map(pair, &o.top),
            );
            self.compare(
                subject,
                format!("{label} level {k} syzygy dims"),
                sdims == o.syzygy_dims,
                show_dims(pair, &sdims),
                show_dims(pair, &o.syzygy_dims),
            );
        }
    }

    fn vertex(&mut self, v: VertexId) {
        let pair = self.pair;
        let name = pair.vertex_name(v).to_string();
        let f = self.hd.pdim_simple(v).value;
        self.module(&name, "S", &ModuleSpec::Simple(v), f);
        let f = self.hd.pdim_injective(v).value;
        self.module(&name, "E", &ModuleSpec::Injective(v), f);
        if let Some(block) = self.oracle.psi0_block(v) {
            let invalid = is_invalid_vertex(pair, v);
            self.compare(
                &name,
                "psi0 projective".into(),
                invalid.is_some() == block.projective,
                format!("{:?}", invalid.is_some()),
                format!("{:?}", block.projective),
            );
            let c = pair.incoming(v).len() as u64;
            if c >= 2 {
                let expected = BTreeMap::from([(v, c - 1)]);
                self.compare(
                    &name,
                    "psi0 top".into(),
                    block.top == expected,
                    show_map(pair, &expected),
                    show_map(pair, &block.top),
                );
            }
        }
    }

    fn arrow_strings(&mut self) {
        let pair = self.pair;
        for a in pair.arrows() {
            let p = pair.path(None, &[a]).expect("arrow");
            let subject = format!("M({})", pair.format_path(&p));
            let f = self.hd.pdim_directed_string(&p).value;
            self.module(&subject, "M", &ModuleSpec::DirString(p), f);
        }
    }
}

/// Compares, at every vertex, the projective dimensions of the simple and
/// the injective, the projectivity and top of the kernel block of the
/// injective, and the covers and syzygy dimensions of the symbolic
/// resolutions level by level; then the same for the string of each arrow.
pub fn check_against_formulas(pair: &AlmostGentlePair, cutoff: u64) -> AgreementReport {
    let mut c = Checker {
        pair,
        hd: HomDim::new(pair),
        oracle: Oracle::new(pair),
        cutoff: cutoff.max(1),
        comparisons: 0,
        mismatches: Vec::new(),
    };
    for v in pair.vertices() {
        c.vertex(v);
    }
    c.arrow_strings();
    AgreementReport {
        algebra: pair.name().to_string(),
        cutoff: c.cutoff,
        comparisons: c.comparisons,
        mismatches: c.mismatches,
    }
}

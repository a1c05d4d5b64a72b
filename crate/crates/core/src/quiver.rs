//! Quivers with quadratic monomial relations, validation of the almost
//! gentle and admissibility conditions, and the nonzero path basis.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver. Vertices and arrows keep their declaration order, which
/// every report and tie-break relies on.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_lookup: HashMap<String, VertexId>,
    arrow_lookup: HashMap<String, ArrowId>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Builds a quiver from names. Arrow endpoints must be declared vertices.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, Vec<Violation>>
    where
        V: IntoIterator<Item = String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut violations = Vec::new();
        let mut names = Vec::new();
        let mut vertex_lookup = HashMap::new();
        for name in vertices {
            if vertex_lookup.contains_key(&name) {
                violations.push(Violation::DuplicateVertex { vertex: name });
                continue;
            }
            vertex_lookup.insert(name.clone(), VertexId(names.len()));
            names.push(name);
        }
        let mut list = Vec::new();
        let mut arrow_lookup = HashMap::new();
        for (name, source, target) in arrows {
            if arrow_lookup.contains_key(&name) {
                violations.push(Violation::DuplicateArrow { arrow: name });
                continue;
            }
            let mut endpoint = |vertex: &String| match vertex_lookup.get(vertex) {
                Some(&id) => Some(id),
                None => {
                    violations.push(Violation::DanglingEndpoint { arrow: name.clone(), vertex: vertex.clone() });
                    None
                }
            };
            let (s, t) = (endpoint(&source), endpoint(&target));
            if let (Some(source), Some(target)) = (s, t) {
                arrow_lookup.insert(name.clone(), ArrowId(list.len()));
                list.push(Arrow { name, source, target });
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        let mut outgoing = vec![Vec::new(); names.len()];
        let mut incoming = vec![Vec::new(); names.len()];
        for (i, arrow) in list.iter().enumerate() {
            outgoing[arrow.source.0].push(ArrowId(i));
            incoming[arrow.target.0].push(ArrowId(i));
        }
        Ok(Quiver { vertices: names, arrows: list, vertex_lookup, arrow_lookup, outgoing, incoming })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_lookup.get(name).copied()
    }

    /// Arrows starting at `v`, in declaration order.
    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        &self.outgoing[v.0]
    }

    /// Arrows ending at `v`, in declaration order.
    pub fn incoming(&self, v: VertexId) -> &[ArrowId] {
        &self.incoming[v.0]
    }

    /// Number of connected components of the underlying graph.
    pub fn component_count(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for arrow in &self.arrows {
            let (a, b) = (find(&mut parent, arrow.source.0), find(&mut parent, arrow.target.0));
            parent[a] = b;
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }
}

/// Length-two zero relations. `(a, b)` means the path `a` then `b` is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationSet {
    pairs: BTreeSet<(ArrowId, ArrowId)>,
}

impl RelationSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns false if the pair was already present.
    pub fn insert(&mut self, a: ArrowId, b: ArrowId) -> bool {
        self.pairs.insert((a, b))
    }

    pub fn contains(&self, a: ArrowId, b: ArrowId) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ArrowId, ArrowId)> + '_ {
        self.pairs.iter().copied()
    }
}

impl FromIterator<(ArrowId, ArrowId)> for RelationSet {
    fn from_iter<I: IntoIterator<Item = (ArrowId, ArrowId)>>(iter: I) -> Self {
        RelationSet { pairs: iter.into_iter().collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("vertex {vertex} declared twice")]
    DuplicateVertex { vertex: String },
    #[error("arrow {arrow} declared twice")]
    DuplicateArrow { arrow: String },
    #[error("arrow {arrow} uses undeclared vertex {vertex}")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("relation {first}·{second} uses undeclared arrow {arrow}")]
    UnknownArrow { first: String, second: String, arrow: String },
    #[error("relation {first}·{second} listed twice")]
    DuplicateRelation { first: String, second: String },
    #[error("relation {first}·{second} is not composable: {first} ends at {end}, {second} starts at {start}")]
    NonComposableRelation { first: String, second: String, end: String, start: String },
    #[error("arrow {arrow} has {} nonzero successors: {}", .successors.len(), .successors.join(", "))]
    TooManyNonzeroSuccessors { arrow: String, successors: Vec<String> },
    #[error("arrow {arrow} has {} nonzero predecessors: {}", .predecessors.len(), .predecessors.join(", "))]
    TooManyNonzeroPredecessors { arrow: String, predecessors: Vec<String> },
    #[error("nonzero cycle {}: its powers never vanish", .arrows.join(" "))]
    NonzeroCycle { arrows: Vec<String> },
}

impl Violation {
    /// The variant name, for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::DuplicateVertex { .. } => "DuplicateVertex",
            Violation::DuplicateArrow { .. } => "DuplicateArrow",
            Violation::DanglingEndpoint { .. } => "DanglingEndpoint",
            Violation::UnknownArrow { .. } => "UnknownArrow",
            Violation::DuplicateRelation { .. } => "DuplicateRelation",
            Violation::NonComposableRelation { .. } => "NonComposableRelation",
            Violation::TooManyNonzeroSuccessors { .. } => "TooManyNonzeroSuccessors",
            Violation::TooManyNonzeroPredecessors { .. } => "TooManyNonzeroPredecessors",
            Violation::NonzeroCycle { .. } => "NonzeroCycle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Warning {
    #[error("quiver is disconnected ({components} components); dimensions are computed componentwise")]
    Disconnected { components: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "violation {}: {v}", v.kind())?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

fn nonzero_successors(q: &Quiver, r: &RelationSet, a: ArrowId) -> Vec<ArrowId> {
    q.outgoing(q.target(a)).iter().copied().filter(|&b| !r.contains(a, b)).collect()
}

fn nonzero_predecessors(q: &Quiver, r: &RelationSet, a: ArrowId) -> Vec<ArrowId> {
    q.incoming(q.source(a)).iter().copied().filter(|&c| !r.contains(c, a)).collect()
}

/// Checks composability, the almost gentle conditions and admissibility.
pub fn validate_bound_quiver(q: &Quiver, r: &RelationSet) -> ValidationReport {
    let mut report = ValidationReport::default();
    let name = |a: ArrowId| q.arrow_name(a).to_string();
    for (a, b) in r.iter() {
        if q.target(a) != q.source(b) {
            report.violations.push(Violation::NonComposableRelation {
                first: name(a),
                second: name(b),
                end: q.vertex_name(q.target(a)).to_string(),
                start: q.vertex_name(q.source(b)).to_string(),
            });
        }
    }
    let mut succ = vec![None; q.arrow_count()];
    for a in q.arrows() {
        let s = nonzero_successors(q, r, a);
        if s.len() > 1 {
            report.violations.push(Violation::TooManyNonzeroSuccessors {
                arrow: name(a),
                successors: s.iter().map(|&b| name(b)).collect(),
            });
        } else {
            succ[a.0] = s.first().copied();
        }
        let p = nonzero_predecessors(q, r, a);
        if p.len() > 1 {
            report.violations.push(Violation::TooManyNonzeroPredecessors {
                arrow: name(a),
                predecessors: p.iter().map(|&c| name(c)).collect(),
            });
        }
    }
    for cycle in successor_cycles(&succ) {
        report.violations.push(Violation::NonzeroCycle { arrows: cycle.iter().map(|&a| name(a)).collect() });
    }
    let components = q.component_count();
    if components > 1 {
        report.warnings.push(Warning::Disconnected { components });
    }
    report
}

/// Cycles of a partial functional graph on arrows, each rotated to start at
/// its smallest arrow.
fn successor_cycles(succ: &[Option<ArrowId>]) -> Vec<Vec<ArrowId>> {
    // 0 = unvisited, 1 = on the current walk, 2 = finished
    let mut state = vec![0u8; succ.len()];
    let mut cycles = Vec::new();
    for start in 0..succ.len() {
        let mut walk = Vec::new();
        let mut cur = Some(start);
        while let Some(x) = cur {
            match state[x] {
                0 => {
                    state[x] = 1;
                    walk.push(x);
                    cur = succ[x].map(|b| b.0);
                }
                1 => {
                    let pos = walk.iter().position(|&y| y == x).expect("on walk");
                    let mut cycle: Vec<ArrowId> = walk[pos..].iter().map(|&y| ArrowId(y)).collect();
                    let min = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
                    cycle.rotate_left(min);
                    cycles.push(cycle);
                    break;
                }
                _ => break,
            }
        }
        for x in walk {
            state[x] = 2;
        }
    }
    cycles.sort();
    cycles
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("arrows {0} and {1} are not composable")]
    NotComposable(String, String),
    #[error("path contains the zero relation {0}·{1}")]
    ZeroPath(String, String),
    #[error("empty path needs an anchor vertex")]
    Empty,
}

/// A nonzero path of the bound quiver. Length zero paths carry their vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    start: VertexId,
    end: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn first(&self) -> Option<ArrowId> {
        self.arrows.first().copied()
    }

    pub fn last(&self) -> Option<ArrowId> {
        self.arrows.last().copied()
    }

    /// Vertices visited in order, `len() + 1` of them.
    pub fn vertices(&self, q: &Quiver) -> Vec<VertexId> {
        let mut out = vec![self.start];
        out.extend(self.arrows.iter().map(|&a| q.target(a)));
        out
    }

    /// Drops the first `k` arrows.
    pub fn suffix(&self, q: &Quiver, k: usize) -> Path {
        assert!(k <= self.arrows.len());
        let start = if k == 0 { self.start } else { q.target(self.arrows[k - 1]) };
        Path { start, end: self.end, arrows: self.arrows[k..].to_vec() }
    }

    /// Keeps the first `k` arrows.
    pub fn prefix(&self, q: &Quiver, k: usize) -> Path {
        assert!(k <= self.arrows.len());
        let end = if k == 0 { self.start } else { q.target(self.arrows[k - 1]) };
        Path { start: self.start, end, arrows: self.arrows[..k].to_vec() }
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.start == other.start && other.arrows.starts_with(&self.arrows)
    }
}

/// A validated almost gentle pair: every arrow has at most one nonzero
/// successor and predecessor, and no nonzero cycle exists.
#[derive(Clone, Debug)]
pub struct AlmostGentlePair {
    name: String,
    quiver: Quiver,
    relations: RelationSet,
    zero: Vec<bool>,
    succ: Vec<Option<ArrowId>>,
    pred: Vec<Option<ArrowId>>,
}

impl PartialEq for AlmostGentlePair {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.quiver == other.quiver && self.relations == other.relations
    }
}

impl Eq for AlmostGentlePair {}

impl AlmostGentlePair {
    pub fn new(name: impl Into<String>, quiver: Quiver, relations: RelationSet) -> Result<Self, ValidationReport> {
        let report = validate_bound_quiver(&quiver, &relations);
        if !report.is_valid() {
            return Err(report);
        }
        let m = quiver.arrow_count();
        let mut zero = vec![false; m * m];
        for (a, b) in relations.iter() {
            zero[a.0 * m + b.0] = true;
        }
        let succ = quiver.arrows().map(|a| nonzero_successors(&quiver, &relations, a).first().copied()).collect();
        let pred = quiver.arrows().map(|a| nonzero_predecessors(&quiver, &relations, a).first().copied()).collect();
        Ok(AlmostGentlePair { name: name.into(), quiver, relations, zero, succ, pred })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrow_count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.quiver.vertices()
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.quiver.arrows()
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.quiver.source(a)
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.quiver.target(a)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        self.quiver.vertex_name(v)
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        self.quiver.arrow_name(a)
    }

    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        self.quiver.outgoing(v)
    }

    pub fn incoming(&self, v: VertexId) -> &[ArrowId] {
        self.quiver.incoming(v)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, PathError> {
        self.quiver.vertex_id(name).ok_or_else(|| PathError::UnknownVertex(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<ArrowId, PathError> {
        self.quiver.arrow_id(name).ok_or_else(|| PathError::UnknownArrow(name.to_string()))
    }

    /// True when `a` then `b` is a zero relation.
    pub fn is_relation(&self, a: ArrowId, b: ArrowId) -> bool {
        self.zero[a.0 * self.arrow_count() + b.0]
    }

    /// The unique arrow `b` with `ab` nonzero, if any.
    pub fn nonzero_successor(&self, a: ArrowId) -> Option<ArrowId> {
        self.succ[a.0]
    }

    /// The unique arrow `c` with `ca` nonzero, if any.
    pub fn nonzero_predecessor(&self, a: ArrowId) -> Option<ArrowId> {
        self.pred[a.0]
    }

    /// `(in-degree, out-degree)`.
    pub fn vertex_type(&self, v: VertexId) -> (usize, usize) {
        (self.incoming(v).len(), self.outgoing(v).len())
    }

    /// Number of nonzero length-two paths passing through `v`.
    pub fn crossing_nonzero_count(&self, v: VertexId) -> usize {
        self.incoming(v)
            .iter()
            .flat_map(|&a| self.outgoing(v).iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| !self.is_relation(a, b))
            .count()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.outgoing(v).is_empty()
    }

    /// Checks composability and nonvanishing.
    pub fn path(&self, start: Option<VertexId>, arrows: &[ArrowId]) -> Result<Path, PathError> {
        let Some(&first) = arrows.first() else {
            return start.map(Path::trivial).ok_or(PathError::Empty);
        };
        if let Some(v) = start {
            if self.source(first) != v {
                return Err(PathError::NotComposable(
                    self.vertex_name(v).to_string(),
                    self.arrow_name(first).to_string(),
                ));
            }
        }
        for w in arrows.windows(2) {
            let (a, b) = (w[0], w[1]);
            if self.target(a) != self.source(b) {
                return Err(PathError::NotComposable(self.arrow_name(a).to_string(), self.arrow_name(b).to_string()));
            }
            if self.is_relation(a, b) {
                return Err(PathError::ZeroPath(self.arrow_name(a).to_string(), self.arrow_name(b).to_string()));
            }
        }
        Ok(Path {
            start: self.source(first),
            end: self.target(*arrows.last().expect("nonempty")),
            arrows: arrows.to_vec(),
        })
    }

    /// Parses a comma or whitespace separated list of arrow names.
    pub fn path_from_names(&self, names: &str) -> Result<Path, PathError> {
        let arrows = names
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| self.arrow(s))
            .collect::<Result<Vec<_>, _>>()?;
        self.path(None, &arrows)
    }

    /// Appends `a` if the result is a nonzero path.
    pub fn extend(&self, p: &Path, a: ArrowId) -> Option<Path> {
        if self.source(a) != p.end {
            return None;
        }
        if let Some(last) = p.last() {
            if self.is_relation(last, a) {
                return None;
            }
        }
        let mut arrows = p.arrows.clone();
        arrows.push(a);
        Some(Path { start: p.start, end: self.target(a), arrows })
    }

    /// Concatenation in the algebra: `None` when the product is zero or the
    /// paths do not meet.
    pub fn concat(&self, p: &Path, q: &Path) -> Option<Path> {
        if p.end != q.start {
            return None;
        }
        if let (Some(a), Some(b)) = (p.last(), q.first()) {
            if self.is_relation(a, b) {
                return None;
            }
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path { start: p.start, end: q.end, arrows })
    }

    /// All nonzero paths including the trivial ones, sorted by length and
    /// then lexicographically by arrow declaration order.
    pub fn basis_paths(&self) -> Vec<Path> {
        let mut out: Vec<Path> = self.vertices().map(Path::trivial).collect();
        let mut level: Vec<Path> =
            self.arrows().map(|a| Path { start: self.source(a), end: self.target(a), arrows: vec![a] }).collect();
        while !level.is_empty() {
            level.sort_by(|x, y| x.arrows.cmp(&y.arrows));
            let next: Vec<Path> = level
                .iter()
                .filter_map(|p| self.nonzero_successor(p.last().expect("nonempty")).and_then(|b| self.extend(p, b)))
                .collect();
            out.append(&mut level);
            level = next;
        }
        out
    }

    /// Reverses every arrow and every relation.
    pub fn opposite(&self) -> AlmostGentlePair {
        let q = &self.quiver;
        let quiver = Quiver::new(
            q.vertices().map(|v| q.vertex_name(v).to_string()),
            q.arrows().map(|a| {
                (
                    q.arrow_name(a).to_string(),
                    q.vertex_name(q.target(a)).to_string(),
                    q.vertex_name(q.source(a)).to_string(),
                )
            }),
        )
        .expect("opposite of a valid quiver");
        let relations = self.relations.iter().map(|(a, b)| (b, a)).collect();
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        AlmostGentlePair::new(name, quiver, relations).expect("opposite of an almost gentle pair")
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.is_empty() {
            format!("e_{}", self.vertex_name(p.start))
        } else {
            self.format_arrows(&p.arrows)
        }
    }

    pub fn format_arrows(&self, arrows: &[ArrowId]) -> String {
        arrows.iter().map(|&a| self.arrow_name(a)).collect::<Vec<_>>().join(" ")
    }
}

/// A bound quiver described by names, as read from a file or written in a
/// test. Vertices are taken from the arrows when none are declared.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundQuiverSpec {
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<(String, String)>,
}

impl BoundQuiverSpec {
    pub fn new(name: &str) -> Self {
        BoundQuiverSpec { name: Some(name.to_string()), ..Default::default() }
    }

    pub fn vertex(mut self, name: &str) -> Self {
        self.vertices.push(name.to_string());
        self
    }

    pub fn arrow(mut self, name: &str, source: &str, target: &str) -> Self {
        self.arrows.push((name.to_string(), source.to_string(), target.to_string()));
        self
    }

    pub fn rel(mut self, first: &str, second: &str) -> Self {
        self.relations.push((first.to_string(), second.to_string()));
        self
    }

    /// Vertex list after auto-declaration.
    pub fn effective_vertices(&self) -> Vec<String> {
        if !self.vertices.is_empty() {
            return self.vertices.clone();
        }
        let mut seen = Vec::new();
        for (_, s, t) in &self.arrows {
            for v in [s, t] {
                if !seen.contains(v) {
                    seen.push(v.clone());
                }
            }
        }
        seen
    }

    /// Resolves names and validates.
    pub fn build(&self) -> Result<AlmostGentlePair, ValidationReport> {
        let quiver = Quiver::new(self.effective_vertices(), self.arrows.iter().cloned())
            .map_err(|violations| ValidationReport { violations, warnings: Vec::new() })?;
        let mut violations = Vec::new();
        let mut relations = RelationSet::new();
        for (first, second) in &self.relations {
            match (quiver.arrow_id(first), quiver.arrow_id(second)) {
                (Some(a), Some(b)) => {
                    if !relations.insert(a, b) {
                        violations.push(Violation::DuplicateRelation { first: first.clone(), second: second.clone() });
                    }
                }
                (a, _) => violations.push(Violation::UnknownArrow {
                    first: first.clone(),
                    second: second.clone(),
                    arrow: if a.is_none() { first.clone() } else { second.clone() },
                }),
            }
        }
        let mut report = validate_bound_quiver(&quiver, &relations);
        if !violations.is_empty() {
            violations.append(&mut report.violations);
            report.violations = violations;
            return Err(report);
        }
        let name = self.name.clone().unwrap_or_else(|| "A".to_string());
        AlmostGentlePair::new(name, quiver, relations)
    }

    /// The spec of an existing pair, in declaration order.
    pub fn of(pair: &AlmostGentlePair) -> Self {
        let q = pair.quiver();
        BoundQuiverSpec {
            name: Some(pair.name().to_string()),
            vertices: q.vertices().map(|v| q.vertex_name(v).to_string()).collect(),
            arrows: q
                .arrows()
                .map(|a| {
                    (
                        q.arrow_name(a).to_string(),
                        q.vertex_name(q.source(a)).to_string(),
                        q.vertex_name(q.target(a)).to_string(),
                    )
                })
                .collect(),
            relations: pair
                .relations()
                .iter()
                .map(|(a, b)| (q.arrow_name(a).to_string(), q.arrow_name(b).to_string()))
                .collect(),
        }
    }
}

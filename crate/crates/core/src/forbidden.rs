//! Forbidden paths: walks in the relation digraph, whose nodes are arrows
//! and whose edges `a -> b` are the zero relations `ab`.
//!
//! Lengths count arrows, so the supremum from an arrow is one more than the
//! longest edge path leaving it. The supremum over nothing is zero.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use crate::quiver::{AlmostGentlePair, ArrowId, Path, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LengthOrInf {
    Finite(u64),
    Infinite,
}

impl LengthOrInf {
    pub fn is_finite(self) -> bool {
        matches!(self, LengthOrInf::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            LengthOrInf::Finite(n) => Some(n),
            LengthOrInf::Infinite => None,
        }
    }

    pub fn plus(self, k: u64) -> Self {
        match self {
            LengthOrInf::Finite(n) => LengthOrInf::Finite(n + k),
            LengthOrInf::Infinite => LengthOrInf::Infinite,
        }
    }
}

impl Ord for LengthOrInf {
    fn cmp(&self, other: &Self) -> Ordering {
        use LengthOrInf::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for LengthOrInf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LengthOrInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthOrInf::Finite(n) => write!(f, "{n}"),
            LengthOrInf::Infinite => write!(f, "inf"),
        }
    }
}

/// A forbidden path, or an infinite one given as `stem` followed by
/// `cycle` repeated forever.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ForbiddenWalk {
    Finite(Vec<ArrowId>),
    Lasso { stem: Vec<ArrowId>, cycle: Vec<ArrowId> },
}

impl ForbiddenWalk {
    pub fn empty() -> Self {
        ForbiddenWalk::Finite(Vec::new())
    }

    pub fn length(&self) -> LengthOrInf {
        match self {
            ForbiddenWalk::Finite(a) => LengthOrInf::Finite(a.len() as u64),
            ForbiddenWalk::Lasso { .. } => LengthOrInf::Infinite,
        }
    }

    /// The arrows of the stem followed by one turn of the cycle.
    pub fn unrolled(&self) -> Vec<ArrowId> {
        match self {
            ForbiddenWalk::Finite(a) => a.clone(),
            ForbiddenWalk::Lasso { stem, cycle } => stem.iter().chain(cycle).copied().collect(),
        }
    }

    /// Every consecutive pair is a relation, cyclically for the lasso.
    pub fn is_forbidden(&self, pair: &AlmostGentlePair) -> bool {
        let walk = self.unrolled();
        let linear = walk.windows(2).all(|w| pair.is_relation(w[0], w[1]));
        match self {
            ForbiddenWalk::Finite(_) => linear,
            ForbiddenWalk::Lasso { cycle, .. } => {
                linear && !cycle.is_empty() && pair.is_relation(*cycle.last().unwrap(), cycle[0])
            }
        }
    }

    pub fn display(&self, pair: &AlmostGentlePair) -> String {
        match self {
            ForbiddenWalk::Finite(a) if a.is_empty() => "(empty)".to_string(),
            ForbiddenWalk::Finite(a) => pair.format_arrows(a),
            ForbiddenWalk::Lasso { stem, cycle } => {
                let cyc = format!("({})^inf", pair.format_arrows(cycle));
                if stem.is_empty() {
                    cyc
                } else {
                    format!("{} {cyc}", pair.format_arrows(stem))
                }
            }
        }
    }
}

/// Longer walks first, then the lexicographically least arrow sequence.
fn better(a: &(LengthOrInf, ForbiddenWalk), b: &(LengthOrInf, ForbiddenWalk)) -> bool {
    match a.0.cmp(&b.0) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a.1.unrolled() < b.1.unrolled(),
    }
}

fn best_of(items: impl IntoIterator<Item = (LengthOrInf, ForbiddenWalk)>) -> (LengthOrInf, ForbiddenWalk) {
    let mut best = (LengthOrInf::Finite(0), ForbiddenWalk::empty());
    for item in items {
        if better(&item, &best) {
            best = item;
        }
    }
    best
}

/// Elementary cycles of the relation digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleList {
    pub cycles: Vec<Vec<ArrowId>>,
    /// Set when the cap was hit or only one cycle per component was listed.
    pub truncated: bool,
}

pub const DEFAULT_CYCLE_CAP: usize = 10_000;
const FULL_ENUMERATION_MAX_ARROWS: usize = 64;

/// The relation digraph with its strongly connected components and the
/// longest walk from every node.
#[derive(Clone, Debug)]
pub struct RelationDigraph {
    succ: Vec<Vec<ArrowId>>,
    component: Vec<usize>,
    cyclic_component: Vec<bool>,
    /// `None` when an infinite walk starts here.
    longest: Vec<Option<u64>>,
    next: Vec<Option<ArrowId>>,
}

impl RelationDigraph {
    pub fn new(pair: &AlmostGentlePair) -> Self {
        let m = pair.arrow_count();
        let mut succ = vec![Vec::new(); m];
        for (a, b) in pair.relations().iter() {
            succ[a.0].push(b);
        }
        for s in &mut succ {
            s.sort();
        }
        let (component, order) = tarjan(&succ);
        let mut cyclic_component = vec![false; order.len()];
        for a in 0..m {
            for b in &succ[a] {
                if component[a] == component[b.0] {
                    cyclic_component[component[a]] = true;
                }
            }
        }
        let mut longest: Vec<Option<u64>> = vec![Some(0); m];
        let mut next = vec![None; m];
        // Tarjan emits components in reverse topological order, so every
        // successor component is finished before its predecessors.
        for members in &order {
            let c = component[members[0]];
            for &a in members {
                if cyclic_component[c] {
                    longest[a] = None;
                    continue;
                }
                let mut best: Option<(u64, ArrowId)> = None;
                let mut infinite = false;
                for &b in &succ[a] {
                    match longest[b.0] {
                        None => infinite = true,
                        Some(len) => {
                            if best.map_or(true, |(l, _)| len > l) {
                                best = Some((len, b));
                            }
                        }
                    }
                }
                if infinite {
                    longest[a] = None;
                } else {
                    longest[a] = Some(1 + best.map_or(0, |(l, _)| l));
                    next[a] = best.map(|(_, b)| b);
                }
            }
        }
        RelationDigraph { succ, component, cyclic_component, longest, next }
    }

    pub fn node_count(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self, a: ArrowId) -> &[ArrowId] {
        &self.succ[a.0]
    }

    pub fn edges(&self) -> impl Iterator<Item = (ArrowId, ArrowId)> + '_ {
        self.succ.iter().enumerate().flat_map(|(a, bs)| bs.iter().map(move |&b| (ArrowId(a), b)))
    }

    pub fn is_acyclic(&self) -> bool {
        !self.cyclic_component.iter().any(|&c| c)
    }

    /// Both arrows lie on a common cycle.
    pub fn on_common_cycle(&self, a: ArrowId, b: ArrowId) -> bool {
        self.component[a.0] == self.component[b.0] && self.cyclic_component[self.component[a.0]]
    }

    pub fn on_cycle(&self, a: ArrowId) -> bool {
        self.cyclic_component[self.component[a.0]]
    }

    /// Supremum of forbidden path lengths starting with `a`, with the
    /// lexicographically least longest witness.
    pub fn from_arrow(&self, a: ArrowId) -> (LengthOrInf, ForbiddenWalk) {
        match self.longest[a.0] {
            Some(n) => {
                let mut walk = vec![a];
                let mut cur = a;
                while let Some(b) = self.next[cur.0] {
                    walk.push(b);
                    cur = b;
                }
                debug_assert_eq!(walk.len() as u64, n);
                (LengthOrInf::Finite(n), ForbiddenWalk::Finite(walk))
            }
            None => (LengthOrInf::Infinite, self.lasso(a)),
        }
    }

    /// Shortest stem to the nearest cycle, then a shortest cycle there.
    fn lasso(&self, a: ArrowId) -> ForbiddenWalk {
        let m = self.node_count();
        let mut parent: Vec<Option<ArrowId>> = vec![None; m];
        let mut seen = vec![false; m];
        let mut queue = VecDeque::from([a]);
        seen[a.0] = true;
        let mut entry = None;
        while let Some(x) = queue.pop_front() {
            if self.on_cycle(x) {
                entry = Some(x);
                break;
            }
            for &y in &self.succ[x.0] {
                if !seen[y.0] {
                    seen[y.0] = true;
                    parent[y.0] = Some(x);
                    queue.push_back(y);
                }
            }
        }
        let entry = entry.expect("infinite walks reach a cycle");
        let mut stem = Vec::new();
        let mut cur = entry;
        while let Some(p) = parent[cur.0] {
            stem.push(p);
            cur = p;
        }
        stem.reverse();
        let cycle = self.shortest_cycle_through(entry, None);
        ForbiddenWalk::Lasso { stem, cycle }
    }

    /// A shortest cycle starting at `a`, optionally forced to use the edge
    /// `a -> via` first.
    fn shortest_cycle_through(&self, a: ArrowId, via: Option<ArrowId>) -> Vec<ArrowId> {
        let c = self.component[a.0];
        let starts: Vec<ArrowId> = match via {
            Some(b) => vec![b],
            None => self.succ[a.0].iter().copied().filter(|b| self.component[b.0] == c).collect(),
        };
        if starts.contains(&a) {
            return vec![a];
        }
        let m = self.node_count();
        let mut parent: Vec<Option<ArrowId>> = vec![None; m];
        let mut seen = vec![false; m];
        let mut queue = VecDeque::new();
        for &b in &starts {
            seen[b.0] = true;
            queue.push_back(b);
        }
        while let Some(x) = queue.pop_front() {
            for &y in &self.succ[x.0] {
                if y == a {
                    let mut back = vec![x];
                    let mut cur = x;
                    while let Some(p) = parent[cur.0] {
                        back.push(p);
                        cur = p;
                    }
                    back.push(a);
                    back.reverse();
                    return back;
                }
                if self.component[y.0] == c && !seen[y.0] {
                    seen[y.0] = true;
                    parent[y.0] = Some(x);
                    queue.push_back(y);
                }
            }
        }
        unreachable!("arrow lies on a cycle of its component")
    }

    /// A cycle through the relation edge `a -> b`, starting with `a`.
    pub fn cycle_through_edge(&self, a: ArrowId, b: ArrowId) -> Vec<ArrowId> {
        assert!(self.on_common_cycle(a, b));
        if a == b {
            return vec![a];
        }
        self.shortest_cycle_through(a, Some(b))
    }

    /// All elementary cycles, each rotated to start at its least arrow,
    /// capped at `cap`. Large digraphs get one cycle per component.
    pub fn cycles(&self, cap: usize) -> CycleList {
        let m = self.node_count();
        if m > FULL_ENUMERATION_MAX_ARROWS {
            let mut cycles = Vec::new();
            let mut done = vec![false; self.cyclic_component.len()];
            for a in 0..m {
                let c = self.component[a];
                if self.cyclic_component[c] && !done[c] {
                    done[c] = true;
                    cycles.push(canonical_rotation(self.shortest_cycle_through(ArrowId(a), None)));
                }
            }
            cycles.sort();
            return CycleList { cycles, truncated: true };
        }
        let adj: Vec<Vec<usize>> = self.succ.iter().map(|s| s.iter().map(|b| b.0).collect()).collect();
        let (raw, truncated) = johnson(&adj, cap);
        let mut cycles: Vec<Vec<ArrowId>> =
            raw.into_iter().map(|c| canonical_rotation(c.into_iter().map(ArrowId).collect())).collect();
        cycles.sort();
        CycleList { cycles, truncated }
    }
}

fn canonical_rotation(mut cycle: Vec<ArrowId>) -> Vec<ArrowId> {
    if let Some(i) = (0..cycle.len()).min_by_key(|&i| cycle[i]) {
        cycle.rotate_left(i);
    }
    cycle
}

/// Iterative Tarjan. Returns the component of each node and the components
/// in the order they were completed.
fn tarjan(succ: &[Vec<ArrowId>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut component = vec![usize::MAX; n];
    let mut order: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if top.1 < succ[v].len() {
                let w = succ[v][top.1].0;
                top.1 += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let id = order.len();
                    let mut members = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        component[w] = id;
                        members.push(w);
                        if w == v {
                            break;
                        }
                    }
                    members.sort_unstable();
                    order.push(members);
                }
            }
        }
    }
    (component, order)
}

/// Johnson's elementary cycle enumeration, stopping after `cap` cycles.
fn johnson(adj: &[Vec<usize>], cap: usize) -> (Vec<Vec<usize>>, bool) {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        allowed: Vec<bool>,
        blocked: Vec<bool>,
        blocked_by: Vec<Vec<usize>>,
        stack: Vec<usize>,
        out: Vec<Vec<usize>>,
        cap: usize,
    }

    impl State<'_> {
        fn unblock(&mut self, v: usize) {
            self.blocked[v] = false;
            while let Some(w) = self.blocked_by[v].pop() {
                if self.blocked[w] {
                    self.unblock(w);
                }
            }
        }

        fn circuit(&mut self, v: usize, s: usize) -> bool {
            if self.out.len() >= self.cap {
                return false;
            }
            let mut found = false;
            self.stack.push(v);
            self.blocked[v] = true;
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                if !self.allowed[w] {
                    continue;
                }
                if w == s {
                    if self.out.len() < self.cap {
                        self.out.push(self.stack.clone());
                    }
                    found = true;
                } else if !self.blocked[w] && self.circuit(w, s) {
                    found = true;
                }
            }
            if found {
                self.unblock(v);
            } else {
                for i in 0..self.adj[v].len() {
                    let w = self.adj[v][i];
                    if self.allowed[w] && !self.blocked_by[w].contains(&v) {
                        self.blocked_by[w].push(v);
                    }
                }
            }
            self.stack.pop();
            found
        }
    }

    let n = adj.len();
    let mut state = State {
        adj,
        allowed: vec![false; n],
        blocked: vec![false; n],
        blocked_by: vec![Vec::new(); n],
        stack: Vec::new(),
        out: Vec::new(),
        cap,
    };
    for s in 0..n {
        // strongly connected component of s among nodes >= s
        let sub: Vec<Vec<ArrowId>> = (0..n)
            .map(|v| if v < s { Vec::new() } else { adj[v].iter().filter(|&&w| w >= s).map(|&w| ArrowId(w)).collect() })
            .collect();
        let (component, _) = tarjan(&sub);
        for v in 0..n {
            state.allowed[v] = v >= s && component[v] == component[s];
            state.blocked[v] = false;
            state.blocked_by[v].clear();
        }
        state.circuit(s, s);
        if state.out.len() >= cap {
            return (state.out, true);
        }
    }
    (state.out, false)
}

/// Forbidden path queries for one pair, sharing a single digraph.
#[derive(Clone, Debug)]
pub struct ForbiddenPaths<'a> {
    pair: &'a AlmostGentlePair,
    graph: RelationDigraph,
}

impl<'a> ForbiddenPaths<'a> {
    pub fn new(pair: &'a AlmostGentlePair) -> Self {
        ForbiddenPaths { pair, graph: RelationDigraph::new(pair) }
    }

    pub fn pair(&self) -> &'a AlmostGentlePair {
        self.pair
    }

    pub fn graph(&self) -> &RelationDigraph {
        &self.graph
    }

    pub fn from_arrow(&self, a: ArrowId) -> (LengthOrInf, ForbiddenWalk) {
        self.graph.from_arrow(a)
    }

    /// Supremum over forbidden paths starting at `v`.
    pub fn from_vertex(&self, v: VertexId) -> (LengthOrInf, ForbiddenWalk) {
        best_of(self.pair.outgoing(v).iter().map(|&a| self.from_arrow(a)))
    }

    /// Supremum over forbidden paths that start right after `δ` or leave
    /// its source by another arrow.
    pub fn delta_sup(&self, delta: &Path) -> (LengthOrInf, ForbiddenWalk) {
        let Some(first) = delta.first() else {
            return self.from_vertex(delta.start());
        };
        let last = delta.last().expect("nonempty");
        let starts = self
            .pair
            .nonzero_successor(last)
            .into_iter()
            .chain(self.pair.outgoing(delta.start()).iter().copied().filter(|&b| b != first));
        best_of(starts.map(|b| self.from_arrow(b)))
    }

    pub fn cycles(&self, cap: usize) -> CycleList {
        self.graph.cycles(cap)
    }
}

pub fn sup_forbidden_from_arrow(pair: &AlmostGentlePair, a: ArrowId) -> (LengthOrInf, ForbiddenWalk) {
    ForbiddenPaths::new(pair).from_arrow(a)
}

pub fn sup_forbidden_from_vertex(pair: &AlmostGentlePair, v: VertexId) -> (LengthOrInf, ForbiddenWalk) {
    ForbiddenPaths::new(pair).from_vertex(v)
}

pub fn delta_forbidden_sup(pair: &AlmostGentlePair, delta: &Path) -> (LengthOrInf, ForbiddenWalk) {
    ForbiddenPaths::new(pair).delta_sup(delta)
}

pub fn forbidden_cycles(pair: &AlmostGentlePair) -> CycleList {
    RelationDigraph::new(pair).cycles(DEFAULT_CYCLE_CAP)
}

/// A length-zero forbidden path sits at `v`.
pub fn zero_length_forbidden(pair: &AlmostGentlePair, v: VertexId) -> bool {
    match (pair.incoming(v), pair.outgoing(v)) {
        ([a], [b]) => pair.is_relation(*a, *b),
        ([], [_]) | ([_], []) => true,
        _ => false,
    }
}

/// Some arrow `β` leaving `t(α)` has `αβ` zero.
pub fn is_down_relational(pair: &AlmostGentlePair, alpha: ArrowId) -> bool {
    pair.outgoing(pair.target(alpha)).iter().any(|&b| pair.is_relation(alpha, b))
}

/// Some arrow `β` entering `s(α)` has `βα` zero.
pub fn is_up_relational(pair: &AlmostGentlePair, alpha: ArrowId) -> bool {
    pair.incoming(pair.source(alpha)).iter().any(|&b| pair.is_relation(b, alpha))
}

/// Some zero relation passes through `v`.
pub fn is_relational_vertex(pair: &AlmostGentlePair, v: VertexId) -> bool {
    pair.incoming(v).iter().any(|&a| is_down_relational(pair, a))
}

//! Quiver representations with exact arithmetic, minimal projective covers
//! and syzygies computed by linear algebra alone.
//!
//! Syzygies past the first are kept as submodules of explicit free modules
//! `⊕ e_w A`, split along their support and interned, so each distinct
//! piece is resolved once and a repeated set of pieces proves the
//! resolution is infinite.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};
use thiserror::Error;

use super::linalg::{Matrix, Q};
use super::sparse::{self, Echelon, SVec};
use crate::quiver::{AlmostGentlePair, ArrowId, Path, VertexId};
use crate::strings::ModuleSpec;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("not a nonzero path: {0}")]
    InvalidString(String),
}

/// Dimension vector plus one matrix per arrow, `dims[s(a)] × dims[t(a)]`,
/// acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
    /// Path labelling each basis vector, when the module comes from
    /// `rep_of`; empty otherwise.
    pub labels: Vec<Vec<Path>>,
}

impl Representation {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Matrix shapes match the dimension vector.
    pub fn is_well_formed(&self, pair: &AlmostGentlePair) -> bool {
        self.dims.len() == pair.vertex_count()
            && self.maps.len() == pair.arrow_count()
            && pair.arrows().all(|a| {
                let m = &self.maps[a.0];
                m.rows() == self.dims[pair.source(a).0] && m.cols() == self.dims[pair.target(a).0]
            })
    }

    /// Every relation acts as zero.
    pub fn satisfies_relations(&self, pair: &AlmostGentlePair) -> bool {
        pair.relations().iter().all(|(a, b)| self.maps[a.0].mul(&self.maps[b.0]).is_zero())
    }
}

/// The pair's nonzero paths with their tree structure.
#[derive(Clone, Debug)]
pub struct PathTable {
    pub paths: Vec<Path>,
    index: HashMap<(VertexId, Vec<ArrowId>), usize>,
    /// Paths starting at each vertex, shortest first.
    from: Vec<Vec<usize>>,
    /// For each path, its nonzero one-arrow extensions.
    children: Vec<Vec<(ArrowId, usize)>>,
}

impl PathTable {
    pub fn new(pair: &AlmostGentlePair) -> Self {
        let paths = pair.basis_paths();
        let index: HashMap<_, _> =
            paths.iter().enumerate().map(|(i, p)| ((p.start(), p.arrows().to_vec()), i)).collect();
        let mut from = vec![Vec::new(); pair.vertex_count()];
        let mut children = vec![Vec::new(); paths.len()];
        for (i, p) in paths.iter().enumerate() {
            from[p.start().0].push(i);
            for &a in pair.outgoing(p.end()) {
                if let Some(q) = pair.extend(p, a) {
                    children[i].push((a, index[&(q.start(), q.arrows().to_vec())]));
                }
            }
        }
        PathTable { paths, index, from, children }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn lookup(&self, p: &Path) -> Option<usize> {
        self.index.get(&(p.start(), p.arrows().to_vec())).copied()
    }

    pub fn from_vertex(&self, v: VertexId) -> &[usize] {
        &self.from[v.0]
    }

    pub fn extend(&self, pid: usize, a: ArrowId) -> Option<usize> {
        self.children[pid].iter().find(|(b, _)| *b == a).map(|&(_, q)| q)
    }
}

/// Builds the representation of a simple, projective, injective or string
/// module with 0/1 incidence matrices.
pub fn rep_of(pair: &AlmostGentlePair, spec: &ModuleSpec) -> Result<Representation, OracleError> {
    rep_with_table(pair, &PathTable::new(pair), spec)
}

pub(crate) fn rep_with_table(
    pair: &AlmostGentlePair,
    table: &PathTable,
    spec: &ModuleSpec,
) -> Result<Representation, OracleError> {
    let n = pair.vertex_count();
    let check = |v: VertexId| if v.0 < n { Ok(v) } else { Err(OracleError::UnknownVertex(v.0)) };
    let mut labels: Vec<Vec<Path>> = vec![Vec::new(); n];
    // entries (arrow, source basis index, target basis index)
    let mut ones: Vec<(ArrowId, usize, usize)> = Vec::new();
    match spec {
        ModuleSpec::Simple(v) => labels[check(*v)?.0].push(Path::trivial(*v)),
        ModuleSpec::Projective(v) => {
            let mut pos = HashMap::new();
            for &pid in table.from_vertex(check(*v)?) {
                let p = &table.paths[pid];
                pos.insert(pid, labels[p.end().0].len());
                labels[p.end().0].push(p.clone());
            }
            for &pid in table.from_vertex(*v) {
                for &(a, q) in &table.children[pid] {
                    ones.push((a, pos[&pid], pos[&q]));
                }
            }
        }
        ModuleSpec::Injective(v) => {
            let v = check(*v)?;
            let ending: Vec<&Path> = table.paths.iter().filter(|p| p.end() == v).collect();
            let mut pos = HashMap::new();
            for p in &ending {
                pos.insert(p.arrows().to_vec(), labels[p.start().0].len());
                labels[p.start().0].push((*p).clone());
            }
            // p* · a = r* when p = a r
            for p in &ending {
                if let Some(a) = p.first() {
                    let r = p.arrows()[1..].to_vec();
                    ones.push((a, pos[p.arrows()], pos[&r]));
                }
            }
        }
        ModuleSpec::DirString(delta) => {
            check(delta.start())?;
            let p = pair
                .path(Some(delta.start()), delta.arrows())
                .map_err(|_| OracleError::InvalidString(pair.format_path(delta)))?;
            if table.lookup(&p).is_none() {
                return Err(OracleError::InvalidString(pair.format_path(delta)));
            }
            let q = pair.quiver();
            let mut idx = Vec::new();
            for (i, u) in p.vertices(q).into_iter().enumerate() {
                idx.push(labels[u.0].len());
                labels[u.0].push(p.prefix(q, i));
            }
            for (i, &a) in p.arrows().iter().enumerate() {
                ones.push((a, idx[i], idx[i + 1]));
            }
        }
    }
    let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
    let mut maps: Vec<Matrix> =
        pair.arrows().map(|a| Matrix::zeros(dims[pair.source(a).0], dims[pair.target(a).0])).collect();
    for (a, i, j) in ones {
        maps[a.0].set(i, j, Q::one());
    }
    Ok(Representation { dims, maps, labels })
}

/// A module given by a spanning set at each vertex inside some ambient
/// coordinate space, with the arrows acting on ambient vectors.
trait ModuleView {
    fn basis(&self, u: VertexId) -> Vec<SVec>;
    fn act(&self, a: ArrowId, x: &SVec) -> SVec;
}

impl ModuleView for Representation {
    fn basis(&self, u: VertexId) -> Vec<SVec> {
        (0..self.dims[u.0]).map(sparse::unit).collect()
    }

    fn act(&self, a: ArrowId, x: &SVec) -> SVec {
        let m = &self.maps[a.0];
        let mut out = vec![Q::zero(); m.cols()];
        for &(i, xi) in x {
            for (j, o) in out.iter_mut().enumerate() {
                let y = m.get(i, j);
                if !y.is_zero() {
                    *o += xi * y;
                }
            }
        }
        sparse::from_dense(&out)
    }
}

/// `⊕_j e_{w_j} A` with coordinates `(j, path)` at each vertex.
#[derive(Clone, Debug)]
struct FreeModule {
    coords: Vec<Vec<(usize, usize)>>,
    pos: HashMap<(usize, usize), usize>,
    /// For each arrow, the image of each coordinate at its source.
    act: Vec<Vec<Option<usize>>>,
}

impl FreeModule {
    fn new(pair: &AlmostGentlePair, table: &PathTable, summands: &[VertexId]) -> Self {
        let mut coords = vec![Vec::new(); pair.vertex_count()];
        let mut pos = HashMap::new();
        for (j, &w) in summands.iter().enumerate() {
            for &pid in table.from_vertex(w) {
                let u = table.paths[pid].end().0;
                pos.insert((j, pid), coords[u].len());
                coords[u].push((j, pid));
            }
        }
        let act = pair
            .arrows()
            .map(|a| {
                coords[pair.source(a).0].iter().map(|&(j, pid)| table.extend(pid, a).map(|q| pos[&(j, q)])).collect()
            })
            .collect();
        FreeModule { coords, pos, act }
    }

    fn apply(&self, a: ArrowId, x: &SVec) -> SVec {
        // distinct coordinates have distinct images, and order is kept
        // within each summand but not across them
        let mut out: SVec = x.iter().filter_map(|&(i, xi)| self.act[a.0][i].map(|k| (k, xi))).collect();
        out.sort_by_key(|e| e.0);
        out
    }
}

/// A submodule of `⊕_j e_{w_j} A`, given by a basis in the free
/// coordinates at each vertex that is determined by the submodule. Equal
/// keys are equal submodules.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PieceKey {
    pub summands: Vec<VertexId>,
    pub rows: Vec<Vec<SVec>>,
}

struct PieceView<'k> {
    key: &'k PieceKey,
    free: &'k FreeModule,
}

impl ModuleView for PieceView<'_> {
    fn basis(&self, u: VertexId) -> Vec<SVec> {
        self.key.rows[u.0].clone()
    }

    fn act(&self, a: ArrowId, x: &SVec) -> SVec {
        self.free.apply(a, x)
    }
}

struct CoverStep {
    /// Generator vertex and its vector in the module's ambient coordinates.
    gens: Vec<(VertexId, SVec)>,
    summands: Vec<VertexId>,
    free: Rc<FreeModule>,
    /// Kernel of the cover, per vertex, in the free coordinates.
    kernel: Vec<Vec<SVec>>,
}

#[derive(Clone, Debug)]
struct PieceStep {
    top: Vec<VertexId>,
    children: BTreeMap<usize, u64>,
}

/// Projective dimension as seen by the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OraclePdim {
    Finite(u64),
    /// The syzygy at the cutoff is nonzero.
    AtLeast(u64),
}

impl fmt::Display for OraclePdim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OraclePdim::Finite(n) => write!(f, "{n}"),
            OraclePdim::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleLevel {
    /// Top of the previous syzygy, that is the projective cover.
    pub top: BTreeMap<VertexId, u64>,
    /// Dimension vector of the kernel of the cover.
    pub syzygy_dims: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResolution {
    pub levels: Vec<OracleLevel>,
    pub pdim: OraclePdim,
    /// A set of syzygy pieces recurred, so the resolution never ends.
    pub periodic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Psi0Block {
    pub top: BTreeMap<VertexId, u64>,
    pub dims: Vec<u64>,
    pub projective: bool,
}

fn add_count<K: Ord>(m: &mut BTreeMap<K, u64>, k: K, n: u64) {
    let e = m.entry(k).or_insert(0);
    *e = e.saturating_add(n);
}

/// Exact resolutions over one bound quiver algebra, sharing the syzygy
/// pieces found so far.
pub struct Oracle<'a> {
    pair: &'a AlmostGentlePair,
    table: PathTable,
    frees: HashMap<Vec<VertexId>, Rc<FreeModule>>,
    keys: Vec<Rc<PieceKey>>,
    index: HashMap<Rc<PieceKey>, usize>,
    steps: Vec<Option<Rc<PieceStep>>>,
}

impl<'a> Oracle<'a> {
    pub fn new(pair: &'a AlmostGentlePair) -> Self {
        Oracle {
            pair,
            table: PathTable::new(pair),
            frees: HashMap::new(),
            keys: Vec::new(),
            index: HashMap::new(),
            steps: Vec::new(),
        }
    }

    pub fn table(&self) -> &PathTable {
        &self.table
    }

    /// Number of distinct syzygy pieces met so far.
    pub fn piece_count(&self) -> usize {
        self.keys.len()
    }

    pub fn rep(&self, spec: &ModuleSpec) -> Result<Representation, OracleError> {
        rep_with_table(self.pair, &self.table, spec)
    }

    fn free(&mut self, summands: &[VertexId]) -> Rc<FreeModule> {
        if let Some(f) = self.frees.get(summands) {
            return f.clone();
        }
        let f = Rc::new(FreeModule::new(self.pair, &self.table, summands));
        self.frees.insert(summands.to_vec(), f.clone());
        f
    }

    fn cover_step(&mut self, m: &dyn ModuleView) -> CoverStep {
        let pair = self.pair;
        let mut gens = Vec::new();
        for u in pair.vertices() {
            let basis = m.basis(u);
            let mut span = Echelon::new();
            'arrows: for &a in pair.incoming(u) {
                for x in m.basis(pair.source(a)) {
                    span.insert(&m.act(a, &x));
                    if span.dim() == basis.len() {
                        break 'arrows;
                    }
                }
            }
            for x in basis {
                if span.insert(&x) {
                    gens.push((u, x));
                }
            }
        }
        let summands: Vec<VertexId> = gens.iter().map(|g| g.0).collect();
        let free = self.free(&summands);
        // image of (g, q) is x_g · q, filled along the path tree
        let mut images: Vec<HashMap<usize, SVec>> = Vec::with_capacity(gens.len());
        for (u, x) in &gens {
            let mut img: HashMap<usize, SVec> = HashMap::new();
            let from = self.table.from_vertex(*u);
            img.insert(from[0], x.clone());
            for &pid in from {
                let here = img[&pid].clone();
                for &(a, q) in &self.table.children[pid] {
                    img.insert(q, m.act(a, &here));
                }
            }
            images.push(img);
        }
        let kernel: Vec<Vec<SVec>> = pair
            .vertices()
            .map(|w| {
                let rows: Vec<SVec> = free.coords[w.0].iter().map(|(g, pid)| images[*g][pid].clone()).collect();
                let k = sparse::left_nullspace(&rows);
                debug_assert!(
                    k.iter().all(|r| r.iter().all(|&(i, _)| !self.table.paths[free.coords[w.0][i].1].is_empty())),
                    "kernel of a minimal cover lies in the radical"
                );
                k
            })
            .collect();
        CoverStep { gens, summands, free, kernel }
    }

    /// Splits a kernel along the generators its basis rows involve.
    fn split(&mut self, step: &CoverStep) -> BTreeMap<usize, u64> {
        let n = step.summands.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (w, rows) in step.kernel.iter().enumerate() {
            for r in rows {
                let g0 = step.free.coords[w][r[0].0].0;
                for &(i, _) in &r[1..] {
                    let g = step.free.coords[w][i].0;
                    let (a, b) = (find(&mut parent, g0), find(&mut parent, g));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        // rows per group root, per vertex
        let mut groups: BTreeMap<usize, Vec<Vec<&SVec>>> = BTreeMap::new();
        for (w, rows) in step.kernel.iter().enumerate() {
            for r in rows {
                let root = find(&mut parent, step.free.coords[w][r[0].0].0);
                groups.entry(root).or_insert_with(|| vec![Vec::new(); step.kernel.len()])[w].push(r);
            }
        }
        let mut out = BTreeMap::new();
        for per_vertex in groups.values() {
            let mut members: Vec<usize> = per_vertex
                .iter()
                .enumerate()
                .flat_map(|(w, rows)| rows.iter().flat_map(move |r| r.iter().map(move |&(i, _)| (w, i))))
                .map(|(w, i)| step.free.coords[w][i].0)
                .collect();
            members.sort_unstable();
            members.dedup();
            let local: HashMap<usize, usize> = members.iter().enumerate().map(|(j, &g)| (g, j)).collect();
            let summands: Vec<VertexId> = members.iter().map(|&g| step.summands[g]).collect();
            let free = self.free(&summands);
            // the coordinate order within the group is preserved, so the
            // restricted basis is still the canonical one
            let rows = per_vertex
                .iter()
                .enumerate()
                .map(|(w, rows)| {
                    rows.iter()
                        .map(|r| {
                            r.iter()
                                .map(|&(i, x)| {
                                    let (g, pid) = step.free.coords[w][i];
                                    (free.pos[&(local[&g], pid)], x)
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let id = self.intern(PieceKey { summands, rows });
            add_count(&mut out, id, 1);
        }
        out
    }

    fn intern(&mut self, key: PieceKey) -> usize {
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let key = Rc::new(key);
        let id = self.keys.len();
        self.keys.push(key.clone());
        self.index.insert(key, id);
        self.steps.push(None);
        id
    }

    fn piece_dims(&self, id: usize) -> Vec<u64> {
        self.keys[id].rows.iter().map(|r| r.len() as u64).collect()
    }

    fn piece_step(&mut self, id: usize) -> Rc<PieceStep> {
        if let Some(s) = &self.steps[id] {
            return s.clone();
        }
        let key = self.keys[id].clone();
        let free = self.free(&key.summands);
        let step = self.cover_step(&PieceView { key: &key, free: &free });
        let children = self.split(&step);
        let s = Rc::new(PieceStep { top: step.summands, children });
        self.steps[id] = Some(s.clone());
        s
    }

    fn dims_of(&self, pieces: &BTreeMap<usize, u64>) -> Vec<u64> {
        let mut dims = vec![0u64; self.pair.vertex_count()];
        for (&id, &n) in pieces {
            for (d, x) in dims.iter_mut().zip(self.piece_dims(id)) {
                *d = d.saturating_add(x.saturating_mul(n));
            }
        }
        dims
    }

    /// Minimal projective resolution of `rep` until a zero syzygy, a
    /// repeated set of syzygy pieces, or the syzygy at `cutoff`.
    pub fn resolve(&mut self, rep: &Representation, cutoff: u64) -> OracleResolution {
        let cutoff = cutoff.max(1);
        let step = self.cover_step(rep);
        let mut top = BTreeMap::new();
        for (u, _) in &step.gens {
            add_count(&mut top, *u, 1);
        }
        let mut current = self.split(&step);
        let mut levels = vec![OracleLevel { top, syzygy_dims: self.dims_of(&current) }];
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        loop {
            if current.is_empty() {
                let n = levels.len() as u64 - 1;
                return OracleResolution { levels, pdim: OraclePdim::Finite(n), periodic: false };
            }
            if levels.len() as u64 >= cutoff {
                return OracleResolution { levels, pdim: OraclePdim::AtLeast(cutoff), periodic: false };
            }
            if !seen.insert(current.keys().copied().collect()) {
                return OracleResolution { levels, pdim: OraclePdim::AtLeast(cutoff), periodic: true };
            }
            let mut top = BTreeMap::new();
            let mut next = BTreeMap::new();
            for (&id, &n) in &current {
                let s = self.piece_step(id);
                for &u in &s.top {
                    add_count(&mut top, u, n);
                }
                for (&c, &k) in &s.children {
                    add_count(&mut next, c, k.saturating_mul(n));
                }
            }
            current = next;
            levels.push(OracleLevel { top, syzygy_dims: self.dims_of(&current) });
        }
    }

    pub fn pdim(&mut self, rep: &Representation, cutoff: u64) -> OraclePdim {
        self.resolve(rep, cutoff).pdim
    }

    /// The part of the first syzygy of `E(v)` lying over the anti-claw
    /// branches themselves: coordinates `(i, q)` of the cover where the
    /// branch `s_i` labelling generator `i` is a prefix of `q`.
    pub fn psi0_block(&mut self, v: VertexId) -> Option<Psi0Block> {
        if self.pair.incoming(v).is_empty() {
            return None;
        }
        let rep = self.rep(&ModuleSpec::Injective(v)).expect("vertex exists");
        let step = self.cover_step(&rep);
        let labels: Vec<&Path> = step.gens.iter().map(|(u, x)| &rep.labels[u.0][x[0].0]).collect();
        let rows = self
            .pair
            .vertices()
            .map(|w| {
                let coords = &step.free.coords[w.0];
                let keep: Vec<bool> =
                    coords.iter().map(|&(g, pid)| labels[g].is_prefix_of(&self.table.paths[pid])).collect();
                let r = &step.kernel[w.0];
                let outside: Vec<SVec> =
                    r.iter().map(|row| row.iter().copied().filter(|&(i, _)| !keep[i]).collect()).collect();
                let inside: Vec<SVec> = sparse::left_nullspace(&outside)
                    .iter()
                    .map(|c| c.iter().fold(SVec::new(), |acc, &(i, x)| sparse::axpy(&acc, x, &r[i])))
                    .collect();
                sparse::rref(&inside)
            })
            .collect();
        let id = self.intern(PieceKey { summands: step.summands, rows });
        let s = self.piece_step(id);
        let mut top = BTreeMap::new();
        for &u in &s.top {
            add_count(&mut top, u, 1);
        }
        Some(Psi0Block { top, dims: self.piece_dims(id), projective: s.children.is_empty() })
    }

    /// Top of a representation: `dims[u]` minus the rank of the arrow
    /// images into `u`.
    pub fn top(&self, rep: &Representation) -> BTreeMap<VertexId, u64> {
        top_of(self.pair, rep)
    }

    /// Kernel of the minimal projective cover, as a representation.
    pub fn cover_kernel(&mut self, rep: &Representation) -> Representation {
        let step = self.cover_step(rep);
        let pair = self.pair;
        let coords: Vec<Vec<usize>> = step.kernel.iter().map(|r| sparse::identity_coordinates(r)).collect();
        let dims: Vec<usize> = step.kernel.iter().map(Vec::len).collect();
        let maps = pair
            .arrows()
            .map(|a| {
                let (s, t) = (pair.source(a).0, pair.target(a).0);
                let mut m = Matrix::zeros(dims[s], dims[t]);
                for (i, row) in step.kernel[s].iter().enumerate() {
                    let y = step.free.apply(a, row);
                    for (j, &c) in coords[t].iter().enumerate() {
                        m.set(i, j, sparse::get(&y, c));
                    }
                }
                m
            })
            .collect();
        Representation { dims, maps, labels: Vec::new() }
    }
}

pub fn top_of(pair: &AlmostGentlePair, rep: &Representation) -> BTreeMap<VertexId, u64> {
    let mut out = BTreeMap::new();
    for u in pair.vertices() {
        let images: Vec<Vec<Q>> = pair.incoming(u).iter().flat_map(|&a| rep.maps[a.0].row_vecs()).collect();
        let rank = Matrix::from_rows(rep.dims[u.0], &images).rank();
        let k = rep.dims[u.0] - rank;
        if k > 0 {
            out.insert(u, k as u64);
        }
    }
    out
}

/// Kernel of the minimal projective cover of `rep`.
pub fn projective_cover_kernel(pair: &AlmostGentlePair, rep: &Representation) -> Representation {
    Oracle::new(pair).cover_kernel(rep)
}

pub fn oracle_pdim(pair: &AlmostGentlePair, rep: &Representation, cutoff: u64) -> OraclePdim {
    Oracle::new(pair).pdim(rep, cutoff)
}

/// Twice the number of nonzero paths, plus four.
pub fn default_cutoff(pair: &AlmostGentlePair) -> u64 {
    2 * pair.basis_paths().len() as u64 + 4
}

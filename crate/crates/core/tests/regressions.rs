//! Small algebras pinned because they separate statements that look
//! equivalent. Each claim is confirmed by the oracle, not only the formulas.

use std::collections::BTreeSet;

use agq_core::generate::{random_ag_pair, GeneratorParams};
use agq_core::oracle::{left_nullspace, Matrix, Oracle, OraclePdim};
use agq_core::strings::socle_supports;
use agq_core::{load_agq, AlmostGentlePair, HomDim, LengthOrInf, ModuleSpec, VertexId};

const R7: &str = "algebra R7
vertex 1 2
arrow a0 : 2 -> 2
arrow a1 : 2 -> 1
rel a0 a0
rel a0 a1
";

const R3141: &str = "algebra R3141
vertex 1 2 3 4
arrow a0 : 2 -> 1
arrow a1 : 4 -> 2
arrow a2 : 4 -> 4
rel a1 a0
rel a2 a2
";

const R2128: &str = "algebra R2128
vertex 1 2 3 4
arrow a0 : 4 -> 3
arrow a1 : 3 -> 1
arrow a2 : 4 -> 2
arrow a3 : 4 -> 4
arrow a4 : 1 -> 4
rel a0 a1
rel a3 a2
rel a3 a3
rel a4 a0
rel a4 a3
";

fn oracle_injective_pdims(pair: &AlmostGentlePair, cutoff: u64) -> Vec<(OraclePdim, bool)> {
    let mut o = Oracle::new(pair);
    pair.vertices()
        .map(|v| {
            let rep = o.rep(&ModuleSpec::Injective(v)).unwrap();
            let r = o.resolve(&rep, cutoff);
            (r.pdim, r.periodic)
        })
        .collect()
}

fn finite(p: OraclePdim) -> Option<u64> {
    match p {
        OraclePdim::Finite(n) => Some(n),
        OraclePdim::AtLeast(_) => None,
    }
}

/// Vertices where the socle of the regular module is nonzero, from the
/// kernels of the outgoing maps of each indecomposable projective.
fn oracle_socle_supports(pair: &AlmostGentlePair) -> BTreeSet<VertexId> {
    let o = Oracle::new(pair);
    let mut out = BTreeSet::new();
    for v in pair.vertices() {
        let rep = o.rep(&ModuleSpec::Projective(v)).unwrap();
        for u in pair.vertices() {
            let d = rep.dims[u.0];
            if d == 0 {
                continue;
            }
            let outs = pair.outgoing(u);
            let width: usize = outs.iter().map(|a| rep.maps[a.0].cols()).sum();
            let rows: Vec<Vec<_>> =
                (0..d).map(|i| outs.iter().flat_map(|a| rep.maps[a.0].row(i).to_vec()).collect()).collect();
            if width == 0 || !left_nullspace(&Matrix::from_rows(width, &rows)).is_empty() {
                out.insert(u);
            }
        }
    }
    out
}

#[test]
fn seeds_reproduce_the_pinned_texts() {
    for (seed, text) in [(7, R7), (3141, R3141), (2128, R2128)] {
        assert_eq!(random_ag_pair(&GeneratorParams::with_seed(seed)).1, text);
    }
}

#[test]
fn infinite_injective_dimension_without_a_valid_vertex_on_a_cycle() {
    let pair = load_agq(R7).unwrap();
    let hd = HomDim::new(&pair);
    assert!(hd.valid_vertices_on_cycles().is_empty());
    assert!(!hd.forbidden().cycles(16).cycles.is_empty());
    assert_eq!(hd.self_injective_dimension().value, LengthOrInf::Infinite);
    assert!(hd.self_injective_infinite_by_cycle().is_some());
    let oracle = oracle_injective_pdims(&pair, 20);
    assert!(oracle.iter().any(|&(p, periodic)| matches!(p, OraclePdim::AtLeast(_)) && periodic));
}

#[test]
fn valid_vertex_on_a_cycle_with_finite_injective_dimension() {
    let pair = load_agq(R3141).unwrap();
    let hd = HomDim::new(&pair);
    assert_eq!(hd.valid_vertices_on_cycles(), vec![pair.vertex("4").unwrap()]);
    assert_eq!(hd.self_injective_dimension().value, LengthOrInf::Finite(2));
    assert!(hd.self_injective_infinite_by_cycle().is_none());
    let oracle = oracle_injective_pdims(&pair, 20);
    let finite: Vec<u64> = oracle.iter().filter_map(|&(p, _)| finite(p)).collect();
    assert_eq!(finite.len(), oracle.len());
    assert_eq!(finite.iter().max(), Some(&2));
}

#[test]
fn infinite_injective_dimension_with_envelope_of_finite_dimension() {
    let pair = load_agq(R2128).unwrap();
    let hd = HomDim::new(&pair);
    assert_eq!(hd.self_injective_dimension().value, LengthOrInf::Infinite);
    assert_eq!(hd.pdim_injective_envelope(), LengthOrInf::Finite(2));

    let formula_socle: BTreeSet<VertexId> = socle_supports(&pair).into_iter().collect();
    assert_eq!(formula_socle, oracle_socle_supports(&pair));
    let names: Vec<&str> = formula_socle.iter().map(|&v| pair.vertex_name(v)).collect();
    assert_eq!(names, ["2", "3"]);

    let oracle = oracle_injective_pdims(&pair, 30);
    let envelope: Option<Vec<u64>> = formula_socle.iter().map(|v| finite(oracle[v.0].0)).collect();
    assert_eq!(envelope.unwrap().into_iter().max(), Some(2));
    assert!(oracle.iter().any(|&(p, _)| matches!(p, OraclePdim::AtLeast(_))));
}

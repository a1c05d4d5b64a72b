//! Directed strings and the claw / anti-claw shapes of indecomposable
//! projective and injective modules.

use thiserror::Error;

use crate::forbidden::is_down_relational;
use crate::quiver::{AlmostGentlePair, Path, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StringError {
    #[error("directed string {0} is not right maximal")]
    NotRightMaximal(String),
}

/// Extends by nonzero successors until none is left.
pub fn right_maximal_extension(pair: &AlmostGentlePair, p: &Path) -> Path {
    let mut out = p.clone();
    while let Some(b) = out.last().and_then(|a| pair.nonzero_successor(a)) {
        out = pair.extend(&out, b).expect("nonzero successor extends");
    }
    out
}

/// Extends by nonzero predecessors until none is left.
pub fn left_maximal_extension(pair: &AlmostGentlePair, p: &Path) -> Path {
    let mut arrows: Vec<_> = p.arrows().to_vec();
    while let Some(c) = arrows.first().and_then(|&a| pair.nonzero_predecessor(a)) {
        arrows.insert(0, c);
    }
    if arrows.is_empty() {
        return p.clone();
    }
    pair.path(None, &arrows).expect("nonzero predecessor chain")
}

pub fn is_right_maximal(pair: &AlmostGentlePair, p: &Path) -> bool {
    p.last().map_or(true, |a| pair.nonzero_successor(a).is_none())
}

/// The projective `P(apex)`: one right maximal branch per outgoing arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claw {
    pub apex: VertexId,
    pub branches: Vec<Path>,
}

/// The injective `E(apex)`: one left maximal branch per incoming arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiClaw {
    pub apex: VertexId,
    pub branches: Vec<Path>,
}

pub fn claw_of(pair: &AlmostGentlePair, v: VertexId) -> Claw {
    let branches = pair
        .outgoing(v)
        .iter()
        .map(|&a| right_maximal_extension(pair, &pair.path(None, &[a]).expect("arrow")))
        .collect();
    Claw { apex: v, branches }
}

pub fn anticlaw_of(pair: &AlmostGentlePair, v: VertexId) -> AntiClaw {
    let branches = pair
        .incoming(v)
        .iter()
        .map(|&a| left_maximal_extension(pair, &pair.path(None, &[a]).expect("arrow")))
        .collect();
    AntiClaw { apex: v, branches }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleSpec {
    Simple(VertexId),
    Projective(VertexId),
    Injective(VertexId),
    DirString(Path),
}

pub fn module_dims(pair: &AlmostGentlePair, spec: &ModuleSpec) -> Vec<usize> {
    let mut dims = vec![0; pair.vertex_count()];
    let q = pair.quiver();
    match spec {
        ModuleSpec::Simple(v) => dims[v.0] = 1,
        ModuleSpec::Projective(v) => {
            dims[v.0] += 1;
            for b in claw_of(pair, *v).branches {
                for &a in b.arrows() {
                    dims[pair.target(a).0] += 1;
                }
            }
        }
        ModuleSpec::Injective(v) => {
            dims[v.0] += 1;
            for b in anticlaw_of(pair, *v).branches {
                for &a in b.arrows() {
                    dims[pair.source(a).0] += 1;
                }
            }
        }
        ModuleSpec::DirString(p) => {
            for u in p.vertices(q) {
                dims[u.0] += 1;
            }
        }
    }
    dims
}

/// Vertices carrying the socle of the regular module, with multiplicity:
/// the end of every claw branch, and each sink once for its simple
/// projective.
pub fn socle_supports(pair: &AlmostGentlePair) -> Vec<VertexId> {
    let mut out = Vec::new();
    for v in pair.vertices() {
        let claw = claw_of(pair, v);
        if claw.branches.is_empty() {
            out.push(v);
        }
        out.extend(claw.branches.iter().map(|b| b.end()));
    }
    out.sort();
    out
}

/// Whether the first syzygy of the string module `M(δ)` is projective, for
/// right maximal `δ`. Each other branch `b` of the claw at `s(δ)` leaves the
/// summand `M(b)` minus its first arrow, which is projective exactly when
/// the second vertex of `b` has no zero relation after the first arrow.
pub fn is_omega1_projective_dirstring(pair: &AlmostGentlePair, delta: &Path) -> Result<bool, StringError> {
    if !is_right_maximal(pair, delta) {
        return Err(StringError::NotRightMaximal(pair.format_path(delta)));
    }
    let claw = claw_of(pair, delta.start());
    Ok(claw
        .branches
        .iter()
        .filter(|b| delta.is_empty() || b.first() != delta.first())
        .all(|b| !is_down_relational(pair, b.first().expect("branch"))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fig1_claw_and_anticlaw_shapes() {
        let p = fixtures::fig1();
        let v1 = p.vertex("1").unwrap();
        let claw: Vec<String> = claw_of(&p, v1).branches.iter().map(|b| p.format_path(b)).collect();
        assert_eq!(claw, ["a_1_2L", "a_1_2", "b_1_2R", "a_1_2R a_2R_3R a_3R_4R"]);
        let anti: Vec<String> =
            anticlaw_of(&p, p.vertex("2R").unwrap()).branches.iter().map(|b| p.format_path(b)).collect();
        assert_eq!(anti, ["b_1_2R", "a_1_2R"]);
        assert!(claw_of(&p, p.vertex("5").unwrap()).branches.is_empty());
    }

    #[test]
    fn fig1_extensions() {
        let p = fixtures::fig1();
        let s = p.path_from_names("a_2R_3R").unwrap();
        assert_eq!(p.format_path(&left_maximal_extension(&p, &s)), "a_1_2R a_2R_3R");
        let s = p.path_from_names("a_3_4").unwrap();
        assert_eq!(p.format_path(&left_maximal_extension(&p, &s)), "a_3_4");
        let s = p.path_from_names("a_1_2R").unwrap();
        assert_eq!(p.format_path(&right_maximal_extension(&p, &s)), "a_1_2R a_2R_3R a_3R_4R");
    }

    #[test]
    fn module_dims_fig1() {
        let p = fixtures::fig1();
        let total = |s: ModuleSpec| module_dims(&p, &s).iter().sum::<usize>();
        assert_eq!(total(ModuleSpec::Projective(p.vertex("1").unwrap())), 7);
        assert_eq!(total(ModuleSpec::Injective(p.vertex("2R").unwrap())), 3);
        assert_eq!(total(ModuleSpec::Injective(p.vertex("4").unwrap())), 4);
        let five = p.vertex("5").unwrap();
        assert!(socle_supports(&p).iter().filter(|&&v| v == five).count() >= 3);
    }

    #[test]
    fn socle_supports_small() {
        let a2 = fixtures::a2();
        let names: Vec<&str> = socle_supports(&a2).iter().map(|&v| a2.vertex_name(v)).collect();
        assert_eq!(names, ["2", "2"]);
        let c = fixtures::cyc2();
        let names: Vec<&str> = socle_supports(&c).iter().map(|&v| c.vertex_name(v)).collect();
        assert_eq!(names, ["1", "2"]);
    }

    #[test]
    fn omega1_projectivity_of_strings() {
        let p = fixtures::fig1();
        let e2l = Path::trivial(p.vertex("2L").unwrap());
        assert!(is_omega1_projective_dirstring(&p, &e2l).unwrap());
        let a12 = p.path_from_names("a_1_2").unwrap();
        assert!(!is_omega1_projective_dirstring(&p, &a12).unwrap());
        let a2 = fixtures::a2();
        assert!(is_omega1_projective_dirstring(&a2, &a2.path_from_names("a").unwrap()).unwrap());
        let short = p.path_from_names("a_1_2R").unwrap();
        assert!(is_omega1_projective_dirstring(&p, &short).is_err());
    }
}

use std::collections::BTreeSet;

use agq_core::check::check_against_formulas;
use agq_core::forbidden::{ForbiddenWalk, LengthOrInf};
use agq_core::generate::{random_ag_pair, GeneratorParams};
use agq_core::homdim::HomDim;
use agq_core::oracle::{bareiss_rank, projective_cover_kernel, rep_of, Matrix, Oracle, PivotOrder};
use agq_core::quiver::{validate_bound_quiver, AlmostGentlePair, Path};
use agq_core::strings::{module_dims, ModuleSpec};
use agq_core::syzygy::{
    decomposition_dims, is_invalid_vertex, omega1_directed_string, psi0_is_projective, resolve_symbolic,
};
use agq_core::{emit_agq, load_agq};
use num_rational::Ratio;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = GeneratorParams> {
    (any::<u64>(), 1usize..=8, 0usize..=14, any::<bool>(), 0u32..=4).prop_map(|(seed, v, a, loops, d)| {
        GeneratorParams {
            seed,
            max_vertices: v,
            max_arrows: a,
            loop_allowed: loops,
            relation_density: Ratio::new(d, 4),
        }
    })
}

fn pair_strategy() -> impl Strategy<Value = AlmostGentlePair> {
    params().prop_map(|p| random_ag_pair(&p).0)
}

fn total(d: &[usize]) -> usize {
    d.iter().sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn emit_then_parse_is_identity(p in params()) {
        let (pair, text) = random_ag_pair(&p);
        let again = load_agq(&text).unwrap();
        prop_assert_eq!(&again, &pair);
        prop_assert_eq!(emit_agq(&again), text);
    }

    #[test]
    fn generator_is_pure_and_valid(p in params()) {
        let (pair, text) = random_ag_pair(&p);
        prop_assert_eq!(random_ag_pair(&p).1, text);
        prop_assert!(validate_bound_quiver(pair.quiver(), pair.relations()).is_valid());
        prop_assert!(pair.vertex_count() <= p.max_vertices && pair.arrow_count() <= p.max_arrows);
        if !p.loop_allowed {
            prop_assert!(pair.arrows().all(|a| pair.source(a) != pair.target(a)));
        }
    }

    #[test]
    fn almost_gentle_by_brute_force(pair in pair_strategy()) {
        for a in pair.arrows() {
            let succ = pair.arrows().filter(|&b| pair.source(b) == pair.target(a) && !pair.is_relation(a, b)).count();
            let pred = pair.arrows().filter(|&b| pair.target(b) == pair.source(a) && !pair.is_relation(b, a)).count();
            prop_assert!(succ <= 1 && pred <= 1);
        }
        // a nonzero path repeating an arrow would give arbitrarily long ones
        for p in pair.basis_paths() {
            let distinct: BTreeSet<_> = p.arrows().iter().collect();
            prop_assert_eq!(distinct.len(), p.len());
        }
    }

    #[test]
    fn opposite_is_an_involution(pair in pair_strategy()) {
        let op = pair.opposite();
        prop_assert!(validate_bound_quiver(op.quiver(), op.relations()).is_valid());
        prop_assert_eq!(op.opposite(), pair);
    }

    #[test]
    fn regular_module_dimension_from_claws_and_anticlaws(pair in pair_strategy()) {
        let n = pair.basis_paths().len();
        let by_proj: usize = pair.vertices().map(|v| total(&module_dims(&pair, &ModuleSpec::Projective(v)))).sum();
        let by_inj: usize = pair.vertices().map(|v| total(&module_dims(&pair, &ModuleSpec::Injective(v)))).sum();
        prop_assert_eq!(by_proj, n);
        prop_assert_eq!(by_inj, n);
        for v in pair.vertices() {
            for spec in [ModuleSpec::Projective(v), ModuleSpec::Injective(v), ModuleSpec::Simple(v)] {
                let rep = rep_of(&pair, &spec).unwrap();
                prop_assert_eq!(&rep.dims, &module_dims(&pair, &spec));
                prop_assert!(rep.is_well_formed(&pair) && rep.satisfies_relations(&pair));
            }
        }
    }

    #[test]
    fn witnesses_are_forbidden_and_realise_the_value(pair in pair_strategy()) {
        let hd = HomDim::new(&pair);
        let mut reports = vec![hd.global_dimension(), hd.self_injective_dimension()];
        reports.extend(pair.vertices().map(|v| hd.pdim_simple(v)));
        reports.extend(pair.vertices().map(|v| hd.pdim_injective(v)));
        for r in reports {
            prop_assert!(r.witness.is_forbidden(&pair));
            match r.value {
                LengthOrInf::Finite(n) => prop_assert_eq!(r.witness.length(), LengthOrInf::Finite(n)),
                LengthOrInf::Infinite => {
                    let lasso = matches!(r.witness, ForbiddenWalk::Lasso { .. });
                    prop_assert!(lasso);
                }
            }
        }
    }

    #[test]
    fn first_syzygy_of_simples_three_ways(pair in pair_strategy()) {
        for v in pair.vertices() {
            let symbolic = decomposition_dims(&pair, &omega1_directed_string(&pair, &Path::trivial(v)));
            let kernel = projective_cover_kernel(&pair, &rep_of(&pair, &ModuleSpec::Simple(v)).unwrap());
            let mut radical = module_dims(&pair, &ModuleSpec::Projective(v));
            radical[v.0] -= 1;
            let oracle: Vec<u64> = kernel.dims.iter().map(|&x| x as u64).collect();
            let radical: Vec<u64> = radical.iter().map(|&x| x as u64).collect();
            prop_assert_eq!(&symbolic, &oracle);
            prop_assert_eq!(&symbolic, &radical);
        }
    }

    #[test]
    fn symbolic_resolutions_conserve_dimension(pair in pair_strategy()) {
        for v in pair.vertices() {
            for spec in [ModuleSpec::Simple(v), ModuleSpec::Injective(v)] {
                let res = resolve_symbolic(&pair, &spec, 6);
                let mut module: Vec<u64> = module_dims(&pair, &spec).iter().map(|&x| x as u64).collect();
                for level in &res.levels {
                    let mut cover = vec![0u64; pair.vertex_count()];
                    for (u, n) in &level.cover {
                        for (c, d) in cover.iter_mut().zip(module_dims(&pair, &ModuleSpec::Projective(*u))) {
                            *c += d as u64 * n;
                        }
                    }
                    let syz = decomposition_dims(&pair, &level.syzygy);
                    let sum: Vec<u64> = module.iter().zip(&syz).map(|(a, b)| a + b).collect();
                    prop_assert_eq!(&cover, &sum);
                    module = syz;
                }
            }
        }
    }

    #[test]
    fn kernel_block_is_projective_exactly_at_invalid_vertices(pair in pair_strategy()) {
        let mut o = Oracle::new(&pair);
        for v in pair.vertices().filter(|&v| !pair.incoming(v).is_empty()) {
            let block = o.psi0_block(v).unwrap();
            prop_assert_eq!(block.projective, is_invalid_vertex(&pair, v).is_some());
            prop_assert_eq!(psi0_is_projective(&pair, v).unwrap(), block.projective);
        }
    }

    #[test]
    fn dimension_inequalities_and_symmetry(pair in pair_strategy()) {
        let hd = HomDim::new(&pair);
        let (gl, inj) = (hd.global_dimension().value, hd.self_injective_dimension().value);
        if !inj.is_finite() {
            prop_assert_eq!(gl, LengthOrInf::Infinite);
        }
        if gl.is_finite() {
            prop_assert!(inj <= gl);
        }
        let op = pair.opposite();
        let ho = HomDim::new(&op);
        prop_assert_eq!(ho.self_injective_dimension().value, inj);
        prop_assert_eq!(ho.global_dimension().value, gl);
        prop_assert_eq!(hd.self_injective_infinite_by_cycle().is_some(), !inj.is_finite());
    }

    #[test]
    fn formulas_agree_with_the_oracle(pair in pair_strategy()) {
        let r = check_against_formulas(&pair, 24);
        let lines: Vec<String> = r.mismatches.iter().map(ToString::to_string).collect();
        prop_assert!(r.agrees(), "{}\n{}", emit_agq(&pair), lines.join("\n"));
    }

    #[test]
    fn oracle_projectives_have_dimension_zero(pair in pair_strategy()) {
        let mut o = Oracle::new(&pair);
        for v in pair.vertices() {
            let rep = o.rep(&ModuleSpec::Projective(v)).unwrap();
            prop_assert_eq!(o.pdim(&rep, 5), agq_core::oracle::OraclePdim::Finite(0));
        }
    }

    #[test]
    fn rank_does_not_depend_on_pivot_order(rows in 0usize..7, cols in 0usize..7, seed in prop::collection::vec(-3i64..=3, 49)) {
        let m = Matrix::from_i64(rows, cols, &seed[..rows * cols]);
        let r = m.rank();
        for order in [PivotOrder::Natural, PivotOrder::Reversed, PivotOrder::SmallestEntry] {
            prop_assert_eq!(bareiss_rank(&m, order), r);
        }
        prop_assert_eq!(m.transpose().rank(), r);
    }

    #[test]
    fn representation_ranks_do_not_depend_on_pivot_order(pair in pair_strategy()) {
        for v in pair.vertices() {
            let rep = rep_of(&pair, &ModuleSpec::Injective(v)).unwrap();
            let kernel = projective_cover_kernel(&pair, &rep);
            // dense elimination is cubic, so very large kernels are left to the sparse path
            let maps = if kernel.total_dim() <= 64 { &kernel.maps[..] } else { &[] };
            for m in rep.maps.iter().chain(maps) {
                let r = m.rank();
                prop_assert_eq!(bareiss_rank(m, PivotOrder::Reversed), r);
                prop_assert_eq!(bareiss_rank(m, PivotOrder::SmallestEntry), r);
            }
        }
    }
}

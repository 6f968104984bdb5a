//! Values checked against computations that do not go through the
//! structure-constant machinery: path counting, the quiver itself, Yoneda.

mod common;

use std::collections::BTreeMap;

use recollement::fixtures::{self, TriangularSpec, QUIVERS};
use recollement::hochschild::{center_dim_oracle, hh_dims, DEFAULT_DIM_CAP};
use recollement::module::sample::random_module;
use recollement::resolution::{ext_dim, global_invariant, resolve, DimBound, GlobalKind};
use recollement::{parse_algebra_file, seeded_rng, ModuleRep, QuiverPresentation};

use common::{algebra, f101, POOL};

/// Composable arrow words of length `len` (leftmost arrow acts last).
fn words(qp: &QuiverPresentation, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..qp.arrows.len()).map(|a| vec![a]).collect();
    for _ in 1..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                let last = qp.arrows[*w.last().unwrap()].source;
                (0..qp.arrows.len()).filter(move |&b| qp.arrows[b].target == last).map(move |b| {
                    let mut x = w.clone();
                    x.push(b);
                    x
                })
            })
            .collect();
    }
    out
}

/// `dim Λ` for a monomial presentation: vertices plus arrow words that
/// contain no relation as a factor.
fn monomial_dimension(qp: &QuiverPresentation, maxlen: usize) -> Option<usize> {
    let rels: Vec<&Vec<usize>> = qp
        .relations
        .iter()
        .map(|r| (r.terms.len() == 1).then(|| &r.terms[0].1))
        .collect::<Option<_>>()?;
    let survives = |w: &Vec<usize>| !rels.iter().any(|r| w.windows(r.len()).any(|f| f == r.as_slice()));
    let mut total = qp.vertices.len();
    for len in 1..=maxlen {
        total += words(qp, len).iter().filter(|w| survives(w)).count();
    }
    Some(total)
}

#[test]
fn dimensions_match_path_counting() {
    let f = f101();
    for (name, text) in QUIVERS {
        let qp = parse_algebra_file(text).unwrap();
        let Some(expected) = monomial_dimension(&qp, qp.default_maxlen()) else { continue };
        assert_eq!(fixtures::algebra(name, &f).unwrap().dim(), expected, "{name}");
    }
}

#[test]
fn worked_dimensions() {
    let f = f101();
    let dims: BTreeMap<&str, usize> = POOL.iter().map(|n| (*n, algebra(n, &f).dim())).collect();
    assert_eq!(dims["fix_a"], 5);
    assert_eq!(dims["fix_b"], 13);
    assert_eq!(dims["fix_c"], 2);
    assert_eq!(dims["fix_t"], 4);
    assert_eq!(dims["a2"], 3);
}

/// `Ext¹` between simples counts arrows and `Ext²` counts minimal relations.
#[test]
fn low_ext_between_simples_reads_off_the_quiver() {
    let f = f101();
    for (name, text) in QUIVERS {
        let qp = parse_algebra_file(text).unwrap();
        let lambda = fixtures::algebra(name, &f).unwrap();
        let n = qp.vertices.len();
        let mut arrows = vec![vec![0; n]; n];
        for a in &qp.arrows {
            arrows[a.source][a.target] += 1;
        }
        let mut relations = vec![vec![0; n]; n];
        for r in &qp.relations {
            relations[r.source][r.target] += 1;
        }
        for u in 0..n {
            let su = ModuleRep::simple(&lambda, u);
            for v in 0..n {
                let sv = ModuleRep::simple(&lambda, v);
                assert_eq!(ext_dim(&su, &sv, 1).unwrap(), arrows[u][v], "{name} Ext1(S{u}, S{v})");
                assert_eq!(ext_dim(&su, &sv, 2).unwrap(), relations[u][v], "{name} Ext2(S{u}, S{v})");
            }
        }
    }
}

#[test]
fn yoneda_for_projectives() {
    let f = f101();
    let mut rng = seeded_rng(11);
    for name in POOL {
        let lambda = algebra(name, &f);
        for _ in 0..5 {
            let m = random_module(&lambda, &mut rng);
            for v in 0..lambda.vertex_count() {
                assert_eq!(ModuleRep::projective(&lambda, v).hom_dim(&m).unwrap(), m.vertex_dims()[v], "{name}");
            }
        }
    }
}

#[test]
fn fix_a_projectives_and_injectives() {
    let f = f101();
    let lambda = algebra("fix_a", &f);
    let p1 = ModuleRep::projective(&lambda, 0);
    assert_eq!((p1.dim(), p1.vertex_dims()), (3, vec![2, 1]));
    assert_eq!(ModuleRep::injective(&lambda, 1).dim(), 2);
    assert_eq!(p1.hom_dim(&ModuleRep::simple(&lambda, 1)).unwrap(), 0);
    // one arrow from 2 into the cover of 1
    assert_eq!(ext_dim(&ModuleRep::simple(&lambda, 1), &ModuleRep::simple(&lambda, 0), 1).unwrap(), 1);
}

#[test]
fn dual_numbers_simple_has_period_one() {
    let f = f101();
    let c = algebra("fix_c", &f);
    let r = resolve(&ModuleRep::simple(&c, 0), 7);
    assert!(r.length().is_none());
    assert!((0..7).all(|j| r.multiplicities(j) == vec![1]));
    assert_eq!(global_invariant(&c, GlobalKind::Spli, 10).value, DimBound::Finite(0));
    assert_eq!(global_invariant(&c, GlobalKind::Silp, 10).value, DimBound::Finite(0));
    assert_eq!(global_invariant(&c, GlobalKind::Gldim, 10).value, DimBound::AtLeast(10));
}

#[test]
fn triangular_of_fields_is_a2() {
    let f = f101();
    let spec = TriangularSpec::from_json(r#"{"sigma": "k", "gamma": "k", "bimodule": {"dim": 1}}"#).unwrap();
    let data = spec.build(&f, |p| Ok(fixtures::quiver_source(p).unwrap().to_string())).unwrap();
    let t = data.algebra().unwrap();
    assert_eq!(t.dim(), 3);
    assert_eq!(global_invariant(&t, GlobalKind::Gldim, 10).value, DimBound::Finite(1));
    assert_eq!(hh_dims(&t, 3).unwrap(), vec![1, 0, 0, 0]);
}

#[test]
fn center_matches_hh_zero() {
    let f = f101();
    for name in POOL {
        let lambda = algebra(name, &f);
        if lambda.dim() > DEFAULT_DIM_CAP {
            continue;
        }
        assert_eq!(hh_dims(&lambda, 0).unwrap()[0], center_dim_oracle(&lambda), "{name}");
    }
}

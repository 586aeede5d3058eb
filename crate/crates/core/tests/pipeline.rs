//! Geometry through planarization, treewidth, grid minors and the solver.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bidim::geometry::{xi, Arrangement};
use bidim::graph::{are_isomorphic, Multigraph};
use bidim::gridminor::{bg_exact_small, make_grid};
use bidim::harness::{generate, minor_by_operations};
use bidim::intersect::{check_bundle, intersection_graph, planarize, theorem1_bound, BgCertificate};
use bidim::minor::validate_minor_model;
use bidim::solver::{vc_brute, vc_dp, winwin_vc};
use bidim::treewidth::{treewidth_exact, treewidth_lower, treewidth_upper, validate_decomposition};
use bidim::Limits;

fn hash(side: i64) -> Arrangement {
    let mut text = String::from(r#"{"polysegments": ["#);
    let mut parts = Vec::new();
    for i in 0..side {
        let c = 2 * i + 1;
        parts.push(format!("[[0,{c}],[{},{c}]]", 2 * side));
        parts.push(format!("[[{c},0],[{c},{}]]", 2 * side));
    }
    text.push_str(&parts.join(","));
    text.push_str("]}");
    serde_json::from_str(&text).unwrap()
}

#[test]
fn grid_of_segments_end_to_end() {
    // 3 horizontals against 3 verticals: K_{3,3}.
    let arr = hash(3);
    assert_eq!(xi(&arr), 3);
    let g = intersection_graph(&arr);
    assert_eq!((g.vertex_count(), g.edge_count()), (6, 9));

    let bundle = planarize(&arr).unwrap();
    assert!(check_bundle(&bundle, &arr).unwrap().passed());
    assert!(are_isomorphic(&bundle.gb, &g));

    let limits = Limits::default();
    let (tw, d) = treewidth_exact(&g, limits.tw_exact).unwrap();
    assert_eq!(tw, 3);
    assert!(validate_decomposition(&g, &d).is_ok());
    assert!(treewidth_lower(&g) <= tw && tw <= treewidth_upper(&g).0);

    let bg = bg_exact_small(&bundle.gb, limits.bg_exact).unwrap();
    assert_eq!(bg, 2);
    assert!(
        theorem1_bound(&bundle, BgCertificate::Exact(bg), &limits)
            .unwrap()
            .holds
    );

    assert_eq!(vc_dp(&g, &d).unwrap().size, 3);
    assert!(!winwin_vc(&g, 3, 2, &limits).unwrap().is_yes());
    assert!(winwin_vc(&g, 3, 3, &limits).unwrap().is_yes());
}

#[test]
fn grid_minor_models_come_back_valid() {
    let arr = hash(3);
    let g = intersection_graph(&arr);
    let l2 = make_grid(2).unwrap();
    let model = minor_by_operations(l2.graph(), &g).unwrap().unwrap();
    assert_eq!(validate_minor_model(&model), Ok(()));
    assert!(minor_by_operations(make_grid(3).unwrap().graph(), &g)
        .unwrap()
        .is_none());
}

#[test]
fn generated_instances_agree_with_the_oracles() {
    let limits = Limits::default();
    for seed in 0..12 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arr = generate::polysegments(9, Some(3), &mut rng).unwrap();
        let bundle = planarize(&arr).unwrap();
        assert!(check_bundle(&bundle, &arr).unwrap().passed());
        let g: &Multigraph = &bundle.gb;
        let opt = vc_brute(g, limits.vc_brute).unwrap().size;
        for k in opt.saturating_sub(1)..=opt {
            assert_eq!(winwin_vc(g, bundle.xi, k, &limits).unwrap().is_yes(), k >= opt);
        }
    }
}

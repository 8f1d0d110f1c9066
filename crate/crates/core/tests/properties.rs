use proptest::prelude::*;

use bandsub::constructions::{
    extremal, power_cycle, power_path, sample_condition_subgraph, SampleCondition,
};
use bandsub::oracle::{
    has_rooted_spanning_subdivision, is_hamilton_cycle, min_root_separator, separates,
};
use bandsub::rgg::{resilience_trial, sample_rgg, sandwich_check};
use bandsub::{
    build_subdivision, check_theorem_condition, effective_min_degree, run_algorithm,
    verify_subdivision, Certificate, LabeledGraph, Params, RootedSubdivision, TheoremCondition,
};

/// `(n, k, l)` with `k >= l >= 1` and `n >= l + 2`.
fn params(max_n: usize) -> impl Strategy<Value = Params> {
    (1usize..=4)
        .prop_flat_map(|k| (Just(k), 1..=k))
        .prop_flat_map(move |(k, l)| ((l + 2)..=max_n, Just(k), Just(l)))
        .prop_map(|(n, k, l)| Params::new(n, k, l).unwrap())
}

/// A spanning subgraph of `P_n^k` that keeps each edge with probability 3/4.
fn subgraph_of_power_path(p: Params) -> impl Strategy<Value = LabeledGraph> {
    let host = power_path(p.n, p.k);
    let m = host.edge_count();
    prop::collection::vec(prop::bool::weighted(0.75), m).prop_map(move |keep| {
        let edges = host.edges().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e);
        LabeledGraph::from_edges(p.n, edges).unwrap()
    })
}

/// `None` when `P_n^k` itself misses the condition.
fn deg_seq_sample(p: Params, seed: u64) -> Option<LabeledGraph> {
    let cond = SampleCondition::Theorem {
        params: p,
        which: TheoremCondition::DegSeq,
    };
    match sample_condition_subgraph(&power_path(p.n, p.k), &cond, seed) {
        Ok(g) => Some(g),
        Err(bandsub::Error::HostFailsCondition(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

fn passes(g: &LabeledGraph, p: &Params, which: TheoremCondition) -> bool {
    check_theorem_condition(g, p, which).unwrap().passed()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn effective_min_degree_is_label_equivariant(
        (g, h, perm) in params(12).prop_flat_map(|p| {
            (subgraph_of_power_path(p), Just(power_path(p.n, p.k)), permutation(p.n))
        })
    ) {
        let before = effective_min_degree(&g, &h).unwrap();
        let after = effective_min_degree(&g.relabel(&perm).unwrap(), &h.relabel(&perm).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn host_against_itself_is_max_degree(n in 1usize..20, k in 1usize..6) {
        let h = power_path(n, k);
        prop_assert_eq!(effective_min_degree(&h, &h).unwrap(), h.max_degree());
    }

    #[test]
    fn adding_an_edge_is_monotone(
        (p, g, pick) in params(12).prop_flat_map(|p| (Just(p), subgraph_of_power_path(p), any::<prop::sample::Index>()))
    ) {
        let h = power_path(p.n, p.k);
        let missing: Vec<_> = h.edges().filter(|&(u, v)| !g.has_edge(u, v)).collect();
        prop_assume!(!missing.is_empty());
        let bigger = g.with_edges([missing[pick.index(missing.len())]]).unwrap();
        prop_assert!(effective_min_degree(&bigger, &h).unwrap() >= effective_min_degree(&g, &h).unwrap());
        for which in [TheoremCondition::General, TheoremCondition::DegSeq] {
            prop_assert!(!passes(&g, &p, which) || passes(&bigger, &p, which));
        }
    }

    #[test]
    fn general_implies_deg_seq(
        (p, g) in params(12)
            .prop_filter("n >= k + l", |p| p.n >= p.k + p.l)
            .prop_flat_map(|p| (Just(p), subgraph_of_power_path(p)))
    ) {
        if passes(&g, &p, TheoremCondition::General) {
            prop_assert!(passes(&g, &p, TheoremCondition::DegSeq));
        }
    }

    #[test]
    fn builder_is_deterministic(p in params(16), seed in any::<u64>()) {
        let Some(g) = deg_seq_sample(p, seed) else { return Ok(()) };
        prop_assert_eq!(run_algorithm(&g, &p).unwrap(), run_algorithm(&g, &p).unwrap());
    }

    #[test]
    fn crashes_only_at_the_right_end_and_no_gaps(p in params(16), seed in any::<u64>()) {
        let Some(g) = deg_seq_sample(p, seed) else { return Ok(()) };
        let ps = run_algorithm(&g, &p).unwrap();
        let expected: Vec<usize> = (p.n - p.l + 1..=p.n).collect();
        prop_assert_eq!(ps.crash_vertices(), expected);
        prop_assert!(ps.covered()[1..].iter().all(|&c| c));
        let s = build_subdivision(&g, &p).unwrap();
        prop_assert_eq!(verify_subdivision(&g, &s, &p), Ok(()));
    }

    #[test]
    fn builder_never_returns_an_invalid_subdivision(
        (p, g) in params(12).prop_flat_map(|p| (Just(p), subgraph_of_power_path(p)))
    ) {
        if let Ok(s) = build_subdivision(&g, &p) {
            prop_assert_eq!(verify_subdivision(&g, &s, &p), Ok(()));
        }
    }

    #[test]
    fn power_inclusions(n in 3usize..30, k in 1usize..8) {
        prop_assume!(2 * k <= n);
        let cycle = power_cycle(n, k).unwrap();
        prop_assert!(power_path(n, k).is_spanning_subgraph_of(&cycle));
        // Folded order 1, n, 2, n - 1, ... puts the cycle power inside P_n^{2k}.
        let fold: Vec<usize> = (1..=n)
            .map(|v| if 2 * v <= n + 1 { 2 * v - 1 } else { 2 * (n + 1 - v) })
            .collect();
        prop_assert!(cycle.relabel(&fold).unwrap().is_spanning_subgraph_of(&power_path(n, 2 * k)));
    }

    #[test]
    fn extremal_sits_one_below_the_bound(k in 2usize..=4, l in 1usize..=3, extra in 0usize..3) {
        prop_assume!(l <= k);
        let n = 2 * k + l + 1 + extra;
        let p = Params::new(n, k, l).unwrap();
        let g = extremal(n, k, l).unwrap();
        prop_assert!(bandsub::bandwidth_witness_ok(&g, k));
        let report = check_theorem_condition(&g, &p, TheoremCondition::DegSeq).unwrap();
        let v = report.first_violation.expect("extremal fails deg_seq").vertex;
        prop_assert!((2..=k + 1).contains(&v));
        prop_assert_eq!(effective_min_degree(&g, &power_path(n, k)).unwrap(), k + l - 1);
    }

    #[test]
    fn geometric_graph_is_unit_interval(n in 2usize..150, r in 0.0f64..0.3, seed in any::<u64>()) {
        let g = sample_rgg(n, r, seed).unwrap().graph();
        for (i, j) in g.edges() {
            for m in i + 1..j {
                prop_assert!(g.has_edge(i, m) && g.has_edge(m, j));
            }
        }
    }

    #[test]
    fn upper_sandwich_is_a_witness(n in 20usize..150, nr in 2.0f64..20.0, seed in any::<u64>()) {
        let s = sample_rgg(n, nr / n as f64, seed).unwrap();
        let rep = sandwich_check(&s, 0.3);
        prop_assert_eq!(rep.upper_ok, bandsub::bandwidth_witness_ok(&s.graph(), rep.k_high));
    }
}

/// A random graph on `n <= 10` vertices with `v_1 v_n` absent.
fn small_graph() -> impl Strategy<Value = LabeledGraph> {
    (4usize..=10).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .filter(|&e| e != (1, n))
            .collect();
        let m = pairs.len();
        prop::collection::vec(prop::bool::weighted(0.45), m).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
            LabeledGraph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn oracle_agrees_with_builder(p in params(12), seed in any::<u64>()) {
        let Some(g) = deg_seq_sample(p, seed) else { return Ok(()) };
        let witness = has_rooted_spanning_subdivision(&g, (1, p.n), p.l, 14).unwrap();
        let witness = witness.expect("condition holds, so a subdivision exists");
        prop_assert_eq!(verify_subdivision(&g, &witness, &p), Ok(()));
        let built = build_subdivision(&g, &p).unwrap();
        prop_assert_eq!(verify_subdivision(&g, &built, &p), Ok(()));
    }

    #[test]
    fn small_separators_rule_out_subdivisions(g in small_graph(), l in 1usize..=4) {
        let n = g.n();
        let Certificate::Separator(cut) = min_root_separator(&g, (1, n)).unwrap() else {
            unreachable!()
        };
        prop_assert!(separates(&g, (1, n), &cut));
        let found = has_rooted_spanning_subdivision(&g, (1, n), l, 14).unwrap();
        if cut.len() < l {
            prop_assert!(found.is_none());
        }
    }

    #[test]
    fn two_branch_witness_is_a_hamilton_cycle(g in small_graph()) {
        let n = g.n();
        if let Some(s) = has_rooted_spanning_subdivision(&g, (1, n), 2, 14).unwrap() {
            let cycle = s.as_cycle().unwrap();
            prop_assert!(is_hamilton_cycle(&g, &cycle));
        }
    }

    #[test]
    fn single_edits_are_rejected(p in params(12), seed in any::<u64>(), edit in 0usize..3, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let Some(g) = deg_seq_sample(p, seed) else { return Ok(()) };
        let s = build_subdivision(&g, &p).unwrap();
        let mutated = mutate(&s, edit, a, b);
        prop_assume!(mutated != s);
        prop_assert!(verify_subdivision(&g, &mutated, &p).is_err());
    }
}

// Drops an internal vertex, swaps two vertices, or reroutes a branch
// through a vertex of another branch.
fn mutate(
    s: &RootedSubdivision,
    edit: usize,
    a: prop::sample::Index,
    b: prop::sample::Index,
) -> RootedSubdivision {
    let mut out = s.clone();
    let positions: Vec<(usize, usize)> = s
        .branches
        .iter()
        .enumerate()
        .flat_map(|(i, br)| (0..br.len()).map(move |j| (i, j)))
        .collect();
    let (bi, bj) = positions[a.index(positions.len())];
    let (ci, cj) = positions[b.index(positions.len())];
    match edit {
        0 => {
            let len = out.branches[bi].len();
            if len > 2 {
                out.branches[bi].remove(1 + bj % (len - 2));
            }
        }
        1 => {
            let x = out.branches[bi][bj];
            let y = out.branches[ci][cj];
            out.branches[bi][bj] = y;
            out.branches[ci][cj] = x;
        }
        _ => {
            let len = out.branches[bi].len();
            if len > 2 {
                let v = s.branches[ci][cj];
                out.branches[bi][1 + bj % (len - 2)] = v;
            }
        }
    }
    out
}

#[test]
fn resilience_cycles_pass_the_validity_check() {
    for seed in 0..20 {
        let s = sample_rgg(150, 20.0 / 150.0, seed).unwrap();
        if let Ok(out) = resilience_trial(&s, 0.5, seed + 100) {
            assert_eq!(out.verified, out.cycle.is_some());
        }
    }
    let evenly: Vec<f64> = (1..=100).map(|i| i as f64 / 100.0).collect();
    let s = bandsub::rgg::GeometricSample::from_points(evenly, 0.2).unwrap();
    for seed in 0..10 {
        let out = resilience_trial(&s, 0.5, seed).unwrap();
        assert!(out.verified, "seed {seed}: {:?}", out.failure);
    }
}

#[test]
fn resilience_cycle_is_checked_against_the_pruned_graph() {
    let n = 150;
    let s = sample_rgg(n, 20.0 / n as f64, 3).unwrap();
    if let Ok(out) = resilience_trial(&s, 0.5, 7) {
        if let Some(cycle) = &out.cycle {
            assert!(is_hamilton_cycle(&s.graph(), cycle));
        }
    }
}

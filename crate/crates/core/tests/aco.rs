use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;
use ssein_core::aco::*;
use ssein_core::contact::{EdgeKind, SseEdge, SseInGraph};
use ssein_core::metrics::{recovery_rate, shortcut_score, topological_profile};
use ssein_core::protein::SseId;
use ssein_core::rng;
use ssein_core::synth::{planted_instance, PlantedConfig};

fn params() -> AcoParams {
    AcoParams::default()
}

fn pair(n: usize, m: usize) -> SsePair {
    let x: Vec<usize> = (0..n).collect();
    let y: Vec<usize> = (n..n + m).collect();
    let mut intra = Vec::new();
    for s in [&x, &y] {
        for w in s.windows(2) {
            intra.push((w[0], w[1]));
        }
    }
    SsePair { x_sse: SseId(0), y_sse: SseId(1), x, y, intra }
}

/// A two-SSE network: residues 0..n in SSE 0, n..n+m in SSE 1, with chain
/// contacts inside each SSE.
fn two_sse_network(n: usize, m: usize) -> SseInGraph {
    let p = pair(n, m);
    let mut sse_of = BTreeMap::new();
    for &r in &p.x {
        sse_of.insert(r, SseId(0));
    }
    for &r in &p.y {
        sse_of.insert(r, SseId(1));
    }
    let edges = p.intra.iter().map(|&(a, b)| SseEdge { a, b, kind: EdgeKind::IntraSse }).collect();
    SseInGraph { vertices: (0..n + m).collect(), edges, sse_of }
}

#[test]
fn eq7_substitution() {
    let mut c = Colony::new(2, &[(0, 1, 1.0)], &[]);
    c.update_pheromone(&[2], &params());
    assert!((c.pheromone(0) - 8000.3).abs() < 1e-9);
    c.update_pheromone(&[0], &params());
    assert!((c.pheromone(0) - 0.3 * 8000.3).abs() < 1e-9);
}

#[test]
fn small_transition_examples() {
    let c = Colony::new(5, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)], &[]);
    for (_, _, p) in c.transition_distribution(0, &params()) {
        assert!((p - 0.25).abs() < 1e-12);
    }
    let mut c = Colony::new(3, &[(0, 1, 1.0), (0, 2, 1.0)], &[]);
    c.set_pheromone(0, 2.0);
    let p = AcoParams { alpha: 1.0, beta: 0.0, ..params() };
    let d = c.transition_distribution(0, &p);
    assert!((d[0].2 - 2.0 / 3.0).abs() < 1e-12 && (d[1].2 - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn single_boosted_cell_is_selected() {
    let (n, m) = (8, 9);
    let mut hits = 0;
    for s in 0..20 {
        let evidence = PairEvidence { len_x: n, len_y: m, edges: vec![(3, 5); 20] };
        let q = build_occurrence_matrix(&[evidence], n, m);
        let h = HeuristicMatrix::new(q, n, m, 2.0).unwrap();
        let out = local_aco(&pair(n, m), &h, &params(), &mut rng::stream(s, rng::streams::ACO_BASE));
        if out.iter().any(|c| c.pair() == (3, n + 5)) {
            hits += 1;
        }
    }
    assert!(hits >= 19, "selected {hits}/20");
}

#[test]
fn uniform_q_full_threshold_keeps_only_the_maximum() {
    let (n, m) = (6, 7);
    let h = HeuristicMatrix::new(build_occurrence_matrix(&[], n, m), n, m, 2.0).unwrap();
    let strict = AcoParams { lambda_min: 1.0, ..params() };
    for s in 0..20 {
        let out = local_aco(&pair(n, m), &h, &strict, &mut rng::stream(s, 9));
        assert!(out.iter().all(|c| c.pheromone == 1.0));
    }
}

#[test]
fn global_size_and_trivial_cases() {
    let net = two_sse_network(5, 5);
    let cand = |a, b, w| Candidate::new(a, b, SseId(0), SseId(1), w, 1.0);
    let cands = vec![cand(0, 5, 0.5), cand(2, 7, 0.5), cand(4, 9, 0.5)];
    let mut r = rng::stream(1, 2);
    let all = global_aco(&net, &cands, 3, &params(), &mut r).unwrap();
    let mut got: Vec<_> = all.selected.iter().map(|c| c.pair()).collect();
    got.sort_unstable();
    assert_eq!(got, vec![(0, 5), (2, 7), (4, 9)]);
    let more = global_aco(&net, &cands, 5, &params(), &mut r).unwrap();
    assert_eq!((more.selected.len(), more.shortfall), (3, 2));
    let one = global_aco(&net, &cands, 1, &params(), &mut r).unwrap();
    assert_eq!(one.selected.len(), 1);
    assert_eq!(one.selected[0].pheromone, 1.0);
    assert!(global_aco(&net, &cands, 0, &params(), &mut r).is_err());
}

#[test]
fn budget_example_and_convergence() {
    let t = TemplateSummary { sizes: vec![10, 12, 8], residues: 30, shortcut_edges: 12 };
    let est = estimate_edge_budget(&[11, 12, 9], &[t.clone()]).unwrap();
    assert_eq!((est.e_total, est.source), (13, BudgetSource::Template(0)));
    assert_eq!(estimate_edge_budget(&[10, 12, 8], &[t.clone()]).unwrap().e_total, 12);
    assert!(estimate_edge_budget(&[10, 12], &[t]).is_err());

    // a family with one edge rate: the estimate per residue tends to it
    let rate = 0.35;
    let mut r = rng::stream(4, 0);
    for scale in [10usize, 100, 1000] {
        let family: Vec<TemplateSummary> = (0..6)
            .map(|_| {
                let sizes: Vec<usize> = (0..4).map(|_| scale + rng::index(&mut r, scale / 5 + 1)).collect();
                let residues: usize = sizes.iter().sum();
                TemplateSummary { sizes, residues, shortcut_edges: (rate * residues as f64).round() as usize }
            })
            .collect();
        let seq: Vec<usize> = (0..4).map(|_| scale + rng::index(&mut r, scale / 5 + 1)).collect();
        let est = estimate_edge_budget(&seq, &family).unwrap();
        let per = est.e_total as f64 / seq.iter().sum::<usize>() as f64;
        assert!((per - rate).abs() <= 1.0 / scale as f64, "scale {scale}: {per}");
    }
}

/// Acceptance rate of `samples` random perturbations with `edits` inserted
/// inter-SSE pairs each.
fn acceptance_rate(inst: &ssein_core::synth::PlantedInstance, edits: usize, samples: u64) -> f64 {
    let family = topological_profile(&inst.network.to_graph()).unwrap();
    let residues: Vec<usize> = inst.network.vertices.clone();
    let sse = |r: usize| inst.network.sse_of[&r];
    let mut accepted = 0;
    for s in 0..samples {
        let mut r = rng::stream(s, edits as u64);
        let mut shortcuts = inst.true_shortcuts.clone();
        let mut done = 0;
        while done < edits {
            let (a, b) = (residues[rng::index(&mut r, residues.len())], residues[rng::index(&mut r, residues.len())]);
            if sse(a) != sse(b) && !shortcuts.contains(&(a.min(b), a.max(b))) {
                shortcuts.push((a.min(b), a.max(b)));
                done += 1;
            }
        }
        if validate_built_network(&inst.network.with_shortcuts(shortcuts), &family, 0.2) {
            accepted += 1;
        }
    }
    accepted as f64 / samples as f64
}

#[test]
fn perturbation_sweep_rejects_more_with_distance() {
    let cfg = PlantedConfig { cluster_sizes: vec![6], ..PlantedConfig::default() };
    let templates: Vec<_> = (0..7).map(|t| planted_instance(&cfg, &mut rng::stream(t, 0)).unwrap()).collect();
    for inst in &templates {
        let family = topological_profile(&inst.network.to_graph()).unwrap();
        assert!(validate_built_network(&inst.network, &family, 0.2));
    }
    let mut medians = Vec::new();
    for edits in [0usize, 2, 4, 8, 16, 32, 64] {
        let mut rates: Vec<f64> = templates.iter().map(|t| acceptance_rate(t, edits, 15)).collect();
        rates.sort_by(f64::total_cmp);
        medians.push(rates[3]);
    }
    assert_eq!(medians[0], 1.0);
    assert!(medians.windows(2).all(|w| w[1] <= w[0]), "{medians:?}");
    assert_eq!(*medians.last().unwrap(), 0.0, "{medians:?}");
}

#[test]
fn planted_recovery_follows_boost_share() {
    let mut previous = 0.0;
    for f in [0.5, 0.6, 0.7, 0.8, 0.9, 1.0] {
        let mut locals = Vec::new();
        let mut scores = Vec::new();
        for s in 0..20u64 {
            let cfg = PlantedConfig { boost_fraction: f, ..PlantedConfig::default() };
            let inst = planted_instance(&cfg, &mut rng::stream(s, 0)).unwrap();
            let e = inst.true_shortcuts.len();
            let plans = plan_pairs(&inst.network, inst.sse_count(), &inst.sse_truth, &inst.templates, e).unwrap();
            let out = run_aco(&inst.network, &plans, e, &params(), &mut rng::stream(s, rng::streams::ACO_BASE)).unwrap();
            let cand: Vec<_> = out.candidates.iter().map(|c| c.pair()).collect();
            let sel: Vec<_> = out.selected().iter().map(|c| c.pair()).collect();
            assert!(recovery_rate(&cand, &inst.boosted) >= 0.999, "boosted edge missed locally");
            locals.push(recovery_rate(&cand, &inst.true_shortcuts));
            scores.push(shortcut_score(&sel, &inst.true_shortcuts));
        }
        scores.sort_by(f64::total_cmp);
        let median = (scores[9] + scores[10]) / 2.0;
        assert!(median >= previous, "median fell at f = {f}");
        if f >= 0.8 {
            assert!(median >= 0.8, "median {median} at f = {f}");
        }
        previous = median;
    }
}

fn positive_q() -> impl Strategy<Value = (usize, usize, Vec<f64>)> {
    (1usize..12, 1usize..12).prop_flat_map(|(n, m)| (Just(n), Just(m), prop::collection::vec(1e-6f64..1e3, n * m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn eq3_conservation((n, m, q) in positive_q(), e in 0.0f64..50.0) {
        let s = edge_probabilities(&q, e).unwrap();
        prop_assert!((s.iter().sum::<f64>() - e).abs() <= 1e-9 * e.max(1.0));
        let h = HeuristicMatrix::new(q.clone(), n, m, e).unwrap();
        let total: f64 = q.iter().sum();
        for (k, &v) in q.iter().enumerate() {
            prop_assert!((h.s[k] - e * v / total).abs() <= 1e-12 * e.max(1.0));
        }
    }

    #[test]
    fn transitions_match_exact_integer_weights(taus in prop::collection::vec(1u32..6, 1..7), ss in prop::collection::vec(1u32..4, 7)) {
        let k = taus.len();
        let edges: Vec<(usize, usize, f64)> = (0..k).map(|j| (0, j + 1, ss[j] as f64)).collect();
        let mut c = Colony::new(k + 1, &edges, &[]);
        for (j, &t) in taus.iter().enumerate() {
            c.set_pheromone(j, t as f64);
        }
        let d = c.transition_distribution(0, &params());
        // tau^25 * s^12 fits in u128 for these ranges
        let w: Vec<u128> = (0..k).map(|j| (taus[j] as u128).pow(25) * (ss[j] as u128).pow(12)).collect();
        let total: u128 = w.iter().sum();
        for (j, &(_, id, p)) in d.iter().enumerate() {
            prop_assert_eq!(id, j);
            let exact = w[j] as f64 / total as f64;
            prop_assert!((p - exact).abs() <= 1e-12, "{} vs {}", p, exact);
        }
    }

    #[test]
    fn transitions_are_distributions(n in 2usize..9, seed in any::<u64>()) {
        let mut r = rng::stream(seed, 0);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if r.random_bool(0.6) {
                    edges.push((a, b, 10f64.powf(r.random_range(-6.0..2.0))));
                }
            }
        }
        let mut c = Colony::new(n, &edges, &[]);
        for id in 0..edges.len() {
            c.set_pheromone(id, 10f64.powf(r.random_range(-3.0..7.0)));
        }
        for v in 0..n {
            let d = c.transition_distribution(v, &params());
            if d.is_empty() {
                continue;
            }
            prop_assert!(d.iter().all(|&(_, _, p)| p.is_finite() && p >= 0.0));
            prop_assert!((d.iter().map(|x| x.2).sum::<f64>() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn pheromone_stays_positive_and_pinned(n in 2usize..7, m in 2usize..7, seed in any::<u64>(), rho in 0.05f64..0.95) {
        let p = AcoParams { rho, ..params() };
        let sc: Vec<(usize, usize, f64)> = (0..n).flat_map(|i| (0..m).map(move |j| (i, n + j, 0.1 + ((i * 7 + j * 3) % 5) as f64))).collect();
        let pr = pair(n, m);
        let mut c = Colony::new(n + m, &sc, &pr.intra);
        let mut r = rng::stream(seed, 1);
        let mut ants: Vec<usize> = (0..n + m).collect();
        for _ in 0..40 {
            let moves = c.step(&mut ants, &p, &mut r);
            c.update_pheromone(&moves, &p);
            let mean = c.mean_shortcut_pheromone();
            for (id, e) in c.edges().iter().enumerate() {
                prop_assert!(c.pheromone(id) > 0.0);
                if !e.shortcut {
                    prop_assert!((c.pheromone(id) - mean).abs() <= 1e-9 * mean);
                }
            }
        }
    }

    #[test]
    fn global_output_size(k in 1usize..15, e_p in 1usize..20, seed in any::<u64>()) {
        let net = two_sse_network(5, 5);
        let mut cands = Vec::new();
        for t in 0..k {
            cands.push(Candidate::new(t % 5, 5 + (t * 3) % 5, SseId(0), SseId(1), 0.2 + t as f64 * 0.1, 1.0));
        }
        cands.sort_by_key(|c| c.pair());
        cands.dedup_by_key(|c| c.pair());
        let out = global_aco(&net, &cands, e_p, &params(), &mut rng::stream(seed, 0)).unwrap();
        prop_assert_eq!(out.selected.len(), e_p.min(cands.len()));
        prop_assert_eq!(out.shortfall, e_p.saturating_sub(cands.len()));
    }

    #[test]
    fn average_chromosome_matches_mean(ts in prop::collection::vec(prop::collection::vec(1usize..40, 5), 1..8)) {
        let refs: Vec<&[usize]> = ts.iter().map(|t| t.as_slice()).collect();
        let avg = average_family_chromosome(&refs).unwrap();
        for i in 0..5 {
            let mean = ts.iter().map(|t| t[i] as f64).sum::<f64>() / ts.len() as f64;
            prop_assert_eq!(avg[i], (mean + 0.5).floor() as usize);
        }
        let l1: usize = ts[0].iter().zip(&avg).map(|(a, b)| a.abs_diff(*b)).sum();
        prop_assert_eq!(allele_distance(&ts[0], &avg).unwrap(), l1);
    }

    #[test]
    fn occurrence_matches_counting(n in 1usize..10, m in 1usize..10, ev in prop::collection::vec((2usize..12, 2usize..12, prop::collection::vec((0usize..12, 0usize..12), 0..6)), 0..5)) {
        let evidence: Vec<PairEvidence> = ev.iter().map(|(lx, ly, e)| PairEvidence {
            len_x: *lx,
            len_y: *ly,
            edges: e.iter().map(|&(a, b)| (a % lx, b % ly)).collect(),
        }).collect();
        let q = build_occurrence_matrix(&evidence, n, m);
        // nearest relative position in exact integer arithmetic, ties upward
        let nearest = |p: usize, len: usize, target: usize| -> usize {
            if target == 1 {
                return 0;
            }
            let gap = |a: usize| (a * (len - 1)).abs_diff(p * (target - 1));
            (0..target).rev().min_by_key(|&a| gap(a)).unwrap()
        };
        for i in 0..n {
            for j in 0..m {
                let count = evidence.iter().flat_map(|t| t.edges.iter().map(move |&(a, b)| (t, a, b)))
                    .filter(|&(t, a, b)| nearest(a, t.len_x, n) == i && nearest(b, t.len_y, m) == j).count();
                prop_assert_eq!(q[i * m + j], 1.0 + count as f64);
            }
        }
    }

    #[test]
    fn allocation_sums_exactly(total in 0usize..200, w in prop::collection::vec(0.01f64..10.0, 1..12)) {
        let shares = allocate_budget(total, &w);
        prop_assert_eq!(shares.iter().sum::<usize>(), total);
        let sum: f64 = w.iter().sum();
        for (s, x) in shares.iter().zip(&w) {
            prop_assert!((*s as f64 - total as f64 * x / sum).abs() < 1.0 + 1e-9);
        }
    }
}

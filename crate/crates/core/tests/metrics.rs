use proptest::prelude::*;
use ssein_core::graph::Graph;
use ssein_core::matrix::AdjacencyMatrix;
use ssein_core::metrics::{is_compatible, matrix_error_rate, modularity, topological_profile, TopologicalProfile};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), prop::collection::vec(prop::bool::weighted(0.12), pairs))
    })
    .prop_map(|(n, bits)| {
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k] {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        (n, edges)
    })
}

// Floyd–Warshall distances, components by reachability, triangles by
// triple loop.
fn profile_oracle(n: usize, edges: &[(usize, usize)]) -> TopologicalProfile {
    const INF: usize = usize::MAX / 4;
    let mut adj = vec![vec![false; n]; n];
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
    }
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    // largest component, ties to the one holding the smallest vertex
    let mut best: Vec<usize> = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&v| d[s][v] < INF).collect();
        for &v in &comp {
            seen[v] = true;
        }
        if comp.len() > best.len() {
            best = comp;
        }
    }
    let mut diameter = 0;
    let mut total = 0;
    for &i in &best {
        for &j in &best {
            diameter = diameter.max(d[i][j]);
            total += d[i][j];
        }
    }
    let k = best.len();
    let cc: f64 = (0..n)
        .map(|v| {
            let nb: Vec<usize> = (0..n).filter(|&u| adj[v][u]).collect();
            if nb.len() < 2 {
                return 0.0;
            }
            let mut t = 0;
            for a in 0..nb.len() {
                for b in a + 1..nb.len() {
                    if adj[nb[a]][nb[b]] {
                        t += 1;
                    }
                }
            }
            t as f64 / (nb.len() * (nb.len() - 1) / 2) as f64
        })
        .sum();
    TopologicalProfile {
        diameter: diameter as f64,
        char_path_length: if k > 1 { total as f64 / (k * (k - 1)) as f64 } else { 0.0 },
        mean_degree: 2.0 * edges.len() as f64 / n as f64,
        clustering_coeff: cc / n as f64,
    }
}

fn modularity_oracle(n: usize, edges: &[(usize, usize)], labels: &[usize]) -> f64 {
    if edges.is_empty() {
        return 0.0;
    }
    let m2 = 2.0 * edges.len() as f64;
    let mut a = vec![vec![0.0; n]; n];
    let mut deg = vec![0.0; n];
    for &(x, y) in edges {
        a[x][y] = 1.0;
        a[y][x] = 1.0;
        deg[x] += 1.0;
        deg[y] += 1.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - deg[i] * deg[j] / m2;
            }
        }
    }
    q / m2
}

#[test]
fn spec_examples() {
    let path = Graph::new(4, [(0, 1), (1, 2), (2, 3)]);
    let p = topological_profile(&path).unwrap();
    assert_eq!((p.diameter, p.mean_degree, p.clustering_coeff), (3.0, 1.5, 0.0));
    let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let p = topological_profile(&k4).unwrap();
    assert_eq!((p.diameter, p.char_path_length, p.clustering_coeff), (1.0, 1.0, 1.0));
    let triangles = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
    assert!((modularity(&triangles, &[0, 0, 0, 1, 1, 1]).unwrap() - 0.5).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn profile_matches_oracle((n, edges) in graph_strategy(50)) {
        let got = topological_profile(&Graph::new(n, edges.iter().copied())).unwrap();
        let want = profile_oracle(n, &edges);
        prop_assert_eq!(got.diameter, want.diameter);
        prop_assert!((got.char_path_length - want.char_path_length).abs() < 1e-12);
        prop_assert!((got.mean_degree - want.mean_degree).abs() < 1e-12);
        prop_assert!((got.clustering_coeff - want.clustering_coeff).abs() < 1e-12);
        prop_assert!(got.fields().iter().all(|&f| f >= 0.0));
        prop_assert!(got.clustering_coeff <= 1.0);
        prop_assert!(got.char_path_length <= got.diameter);
    }

    #[test]
    fn profile_ignores_labels((n, edges) in graph_strategy(30), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let g = Graph::new(n, edges.iter().copied());
        let labels = g.components();
        let mut sizes = vec![0usize; n];
        for &l in &labels {
            sizes[l] += 1;
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        // with two largest components of equal size the choice depends on labels
        prop_assume!(n < 2 || sizes[0] > sizes[1]);
        let a = topological_profile(&g).unwrap();
        let b = topological_profile(&Graph::new(n, edges.iter().map(|&(x, y)| (perm[x], perm[y])))).unwrap();
        prop_assert_eq!(a.diameter, b.diameter);
        prop_assert!((a.char_path_length - b.char_path_length).abs() < 1e-12);
        prop_assert!((a.mean_degree - b.mean_degree).abs() < 1e-12);
        prop_assert!((a.clustering_coeff - b.clustering_coeff).abs() < 1e-12);
    }

    #[test]
    fn modularity_matches_pairwise_oracle((n, edges) in graph_strategy(25), labels in prop::collection::vec(0usize..4, 25)) {
        let g = Graph::new(n, edges.iter().copied());
        let got = modularity(&g, &labels[..n]).unwrap();
        prop_assert!((got - modularity_oracle(n, &edges, &labels[..n])).abs() < 1e-12);
        if edges.is_empty() {
            prop_assert_eq!(got, 0.0);
        }
    }

    #[test]
    fn single_cluster_modularity_is_zero((n, edges) in graph_strategy(20)) {
        let g = Graph::new(n, edges.iter().copied());
        prop_assert!(modularity(&g, &vec![0; n]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn error_rate_matches_elementwise((n, a) in graph_strategy(15), b in prop::collection::vec((0usize..15, 0usize..15), 0..30)) {
        let b: Vec<(usize, usize)> = b.into_iter().filter(|&(x, y)| x < n && y < n).collect();
        let (ma, mb) = (AdjacencyMatrix::from_pairs(n, a.iter().copied()), AdjacencyMatrix::from_pairs(n, b.iter().copied()));
        let mut diff = 0;
        for i in 0..n {
            for j in 0..n {
                if ma.get(i, j) != mb.get(i, j) {
                    diff += 1;
                }
            }
        }
        let got = matrix_error_rate(&ma, &mb).unwrap();
        prop_assert!((got - diff as f64 / (n * n) as f64).abs() < 1e-15);
        prop_assert_eq!(got, matrix_error_rate(&mb, &ma).unwrap());
        prop_assert_eq!(matrix_error_rate(&ma, &ma).unwrap(), 0.0);
    }

    #[test]
    fn compatible_with_itself(f in prop::array::uniform4(0.0f64..50.0), tol in 1e-6f64..1.0) {
        let p = TopologicalProfile { diameter: f[0], char_path_length: f[1], mean_degree: f[2], clustering_coeff: f[3] };
        prop_assert!(is_compatible(&p, &p, tol));
    }
}

#![allow(clippy::needless_range_loop)]

use emoframe::graph::Graph;
use emoframe::graphan::louvain::louvain_trace;
use emoframe::graphan::metrics::closeness;
use emoframe::graphan::{degree_assortativity, louvain, mean_local_clustering, modularity};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn name(i: usize) -> String {
    format!("v{i:02}")
}

/// Random graph with adjacency matrix; node i is labelled so that it sorts to
/// index i.
fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> (Graph, Vec<Vec<bool>>) {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.05..0.7);
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                adj[i][j] = true;
                adj[j][i] = true;
                edges.push((name(i), name(j)));
            }
        }
    }
    let g = Graph::from_nodes_and_edges((0..n).map(name), edges);
    (g, adj)
}

fn floyd_warshall(adj: &[Vec<bool>]) -> Vec<Vec<Option<u64>>> {
    let n = adj.len();
    let mut d: Vec<Vec<Option<u64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Some(0)
                    } else if adj[i][j] {
                        Some(1)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

fn closeness_oracle(adj: &[Vec<bool>]) -> Vec<f64> {
    let n = adj.len();
    let d = floyd_warshall(adj);
    (0..n)
        .map(|v| {
            let reach: Vec<u64> = (0..n).filter(|&u| u != v).filter_map(|u| d[v][u]).collect();
            if reach.is_empty() {
                return 0.0;
            }
            let r = reach.len() as f64;
            let s = reach.iter().sum::<u64>() as f64;
            (r / (n - 1) as f64) * (r / s)
        })
        .collect()
}

fn clustering_oracle(adj: &[Vec<bool>]) -> f64 {
    let n = adj.len();
    let mut total = 0.0;
    for v in 0..n {
        let nb: Vec<usize> = (0..n).filter(|&u| adj[v][u]).collect();
        let k = nb.len();
        if k < 2 {
            continue;
        }
        let mut t = 0;
        for a in 0..k {
            for b in 0..k {
                if a != b && adj[nb[a]][nb[b]] {
                    t += 1;
                }
            }
        }
        total += t as f64 / (k * (k - 1)) as f64;
    }
    total / n as f64
}

/// Pearson correlation over both orientations of every edge; None when
/// undefined.
fn assortativity_oracle(adj: &[Vec<bool>]) -> Option<f64> {
    let n = adj.len();
    let deg: Vec<f64> = (0..n)
        .map(|i| adj[i].iter().filter(|&&b| b).count() as f64)
        .collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if adj[i][j] {
                xs.push(deg[i]);
                ys.push(deg[j]);
            }
        }
    }
    if xs.len() < 4 {
        return None;
    }
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if vx < 1e-12 || vy < 1e-12 {
        return None;
    }
    Some(cov / (vx * vy).sqrt())
}

#[test]
fn closeness_matches_all_pairs_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut disconnected = 0;
    for _ in 0..300 {
        let (g, adj) = random_graph(&mut rng, 12);
        let d = floyd_warshall(&adj);
        if d.iter().flatten().any(Option::is_none) {
            disconnected += 1;
        }
        let got = closeness(&g);
        let want = closeness_oracle(&adj);
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }
    assert!(disconnected > 50);
}

#[test]
fn clustering_and_assortativity_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut defined = 0;
    for _ in 0..300 {
        let (g, adj) = random_graph(&mut rng, 10);
        let c = mean_local_clustering(&g).unwrap();
        assert!((c - clustering_oracle(&adj)).abs() < 1e-9);
        match (degree_assortativity(&g), assortativity_oracle(&adj)) {
            (Ok(r), Some(want)) => {
                defined += 1;
                assert!((r - want).abs() < 1e-9, "{r} vs {want}");
            }
            (Err(_), None) => {}
            (got, want) => panic!("{got:?} vs {want:?}"),
        }
    }
    assert!(defined > 100);
}

/// All set partitions of 0..n as restricted growth strings.
fn for_each_partition(n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(a: &mut Vec<usize>, i: usize, max: usize, n: usize, f: &mut impl FnMut(&[usize])) {
        if i == n {
            f(a);
            return;
        }
        for c in 0..=max + 1 {
            a[i] = c;
            rec(a, i + 1, max.max(c), n, f);
        }
    }
    if n == 0 {
        return;
    }
    let mut a = vec![0; n];
    rec(&mut a, 1, 0, n, f);
}

/// Modularity straight from the definition over node pairs.
fn modularity_oracle(adj: &[Vec<bool>], part: &[usize]) -> f64 {
    let n = adj.len();
    let deg: Vec<f64> = (0..n)
        .map(|i| adj[i].iter().filter(|&&b| b).count() as f64)
        .collect();
    let two_m: f64 = deg.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if part[i] == part[j] {
                q += (adj[i][j] as u8 as f64) - deg[i] * deg[j] / two_m;
            }
        }
    }
    q / two_m
}

fn two_cliques() -> (Graph, Vec<Vec<bool>>) {
    let mut adj = vec![vec![false; 10]; 10];
    let mut edges = Vec::new();
    let mut link = |i: usize, j: usize| {
        adj[i][j] = true;
        adj[j][i] = true;
        edges.push((name(i), name(j)));
    };
    for base in [0, 5] {
        for i in 0..5 {
            for j in i + 1..5 {
                link(base + i, base + j);
            }
        }
    }
    link(4, 5);
    (Graph::from_edges(edges), adj)
}

#[test]
fn louvain_reaches_exhaustive_optimum_on_two_cliques() {
    let (g, adj) = two_cliques();
    let mut best = f64::NEG_INFINITY;
    let mut count = 0;
    for_each_partition(10, &mut |p| {
        count += 1;
        best = best.max(modularity_oracle(&adj, p));
    });
    assert_eq!(count, 115_975);
    assert!((best - 2.0 * (10.0 / 21.0 - 0.25)).abs() < 1e-12);
    for seed in 0..10 {
        let p = louvain(&g, seed, 1.0);
        assert_eq!(p.community_count(), 2);
        assert!((p.modularity - best).abs() < 1e-6);
        assert_eq!(p, louvain(&g, seed, 1.0));
    }
}

#[test]
fn modularity_agrees_with_pair_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let (g, adj) = random_graph(&mut rng, 10);
        if g.edge_count() == 0 {
            continue;
        }
        let part: Vec<usize> = (0..adj.len()).map(|_| rng.gen_range(0..3)).collect();
        assert!((modularity(&g, &part, 1.0) - modularity_oracle(&adj, &part)).abs() < 1e-12);
    }
}

#[test]
fn louvain_near_optimal_on_small_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..20 {
        let (g, adj) = random_graph(&mut rng, 8);
        if g.edge_count() == 0 {
            continue;
        }
        let mut best = f64::NEG_INFINITY;
        for_each_partition(adj.len(), &mut |p| {
            best = best.max(modularity_oracle(&adj, p))
        });
        let got = louvain(&g, 3, 1.0).modularity;
        assert!(got <= best + 1e-12);
        // greedy local optimum; allow a modest gap
        assert!(got >= best - 0.1, "{got} vs optimum {best}");
    }
}

/// Four dense groups of 8 with sparse bridges, in the spirit of small social
/// network benchmarks.
#[test]
fn planted_groups_recovered_across_seeds() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let groups = 4;
    let size = 8;
    let n = groups * size;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = if i / size == j / size { 0.8 } else { 0.02 };
            if rng.gen_bool(p) {
                edges.push((name(i), name(j)));
            }
        }
    }
    let g = Graph::from_edges(edges);
    for seed in 0..8 {
        let t = louvain_trace(&g, seed, 1.0);
        for w in t.level_modularity.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
        let p = louvain(&g, seed, 1.0);
        assert_eq!(p.community_count(), groups, "seed {seed}");
        for i in 0..n {
            assert_eq!(
                p.community_of(&name(i)),
                p.community_of(&name(i - i % size)),
                "seed {seed} node {i}"
            );
        }
    }
}

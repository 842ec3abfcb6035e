#![allow(dead_code)]

use pwgraph::graph::boundary;
use pwgraph::{Graph, GraphKind, Signal, SpectralDecomposition, VertexSet};
use rand::distributions::uniform::SampleRange;
use rand::seq::SliceRandom;
use rand::Rng;

/// Every connected labelled simple graph on `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            Graph::from_edges(n, edges).ok().filter(Graph::is_connected)
        })
        .collect()
}

/// Random spanning tree plus each remaining pair with a probability `p` drawn
/// once from `density`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, density: impl SampleRange<f64>) -> Graph {
    let p = rng.gen_range(density);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (1..n)
        .map(|i| (order[rng.gen_range(0..i)], order[i]))
        .collect();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p)
                && !edges
                    .iter()
                    .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid random graph")
}

/// Small generated graphs of every family.
pub fn family_graphs() -> Vec<Graph> {
    let kinds = [
        GraphKind::Path(2),
        GraphKind::Path(7),
        GraphKind::Cycle(3),
        GraphKind::Cycle(8),
        GraphKind::Grid(vec![3, 3]),
        GraphKind::Grid(vec![2, 5]),
        GraphKind::Torus(vec![3, 4]),
        GraphKind::Tree { q: 2, depth: 2 },
        GraphKind::Tree { q: 3, depth: 1 },
    ];
    let mut graphs: Vec<Graph> = kinds.iter().map(|k| Graph::generate(k).unwrap()).collect();
    graphs.push(Graph::complete(6).unwrap());
    graphs.push(Graph::star(5).unwrap());
    graphs
}

/// Random non-empty `S` with non-empty boundary.
pub fn random_proper_subset<R: Rng>(rng: &mut R, g: &Graph, max_len: usize) -> VertexSet {
    loop {
        let len = rng.gen_range(1..=max_len.min(g.n() - 1));
        let mut ids: Vec<usize> = (0..g.n()).collect();
        ids.shuffle(rng);
        let s = VertexSet::new(ids[..len].to_vec());
        if !boundary(g, &s).unwrap().is_empty() {
            return s;
        }
    }
}

/// Random unit-norm element of `PW_ω`.
pub fn random_bandlimited<R: Rng>(
    rng: &mut R,
    g: &Graph,
    dec: &SpectralDecomposition,
    omega: f64,
) -> Signal {
    let space = dec.pw_space(omega);
    let coefficients: Vec<f64> = space
        .indices
        .iter()
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    let f = dec.synthesize_on(&space.indices, &coefficients);
    let scale = f.norm().recip();
    let values: Vec<f64> = f.values().iter().map(|x| x * scale).collect();
    Signal::new(g, values).unwrap()
}

//! Shared corpus and independent oracles for the acceptance suite.

use folner_core::families::{generate, GeneratorSpec};
use folner_core::Graph;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The named-family test corpus. Filter by vertex count per criterion.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut graphs: Vec<(String, GeneratorSpec)> = Vec::new();
    for n in [3usize, 4, 5, 6, 7, 8, 10, 12, 14, 16, 18] {
        graphs.push((format!("cycle-{n}"), GeneratorSpec::Cycle { n }));
    }
    for n in [2usize, 3, 4, 5, 6, 8, 10, 12, 13, 14, 16] {
        graphs.push((format!("path-{n}"), GeneratorSpec::Path { n }));
    }
    for n in [2usize, 3, 4, 5, 6, 7, 8, 10] {
        graphs.push((format!("complete-{n}"), GeneratorSpec::Complete { n }));
    }
    for (left, right) in [
        (1usize, 3usize),
        (2, 2),
        (2, 3),
        (3, 3),
        (2, 5),
        (3, 4),
        (4, 4),
    ] {
        graphs.push((
            format!("bipartite-{left}-{right}"),
            GeneratorSpec::CompleteBipartite { left, right },
        ));
    }
    for clique in [3usize, 4, 5, 6, 7, 8, 9] {
        graphs.push((
            format!("barbell-{clique}"),
            GeneratorSpec::Barbell { clique },
        ));
    }
    for (clique, tail) in [
        (4usize, 2usize),
        (5, 2),
        (5, 3),
        (6, 3),
        (7, 3),
        (8, 4),
        (9, 3),
        (10, 4),
    ] {
        graphs.push((
            format!("lollipop-{clique}-{tail}"),
            GeneratorSpec::Lollipop { clique, tail },
        ));
    }
    for dim in [1usize, 2, 3, 4] {
        graphs.push((format!("hypercube-{dim}"), GeneratorSpec::Hypercube { dim }));
    }
    for (n, degree, seed) in [
        (6usize, 3usize, 1u64),
        (8, 3, 7),
        (10, 3, 42),
        (12, 4, 3),
        (14, 3, 5),
        (16, 3, 9),
    ] {
        graphs.push((
            format!("random-regular-{n}-{degree}-{seed}"),
            GeneratorSpec::RandomRegular { n, degree, seed },
        ));
    }
    graphs
        .into_iter()
        .map(|(name, spec)| (name, generate(&spec).expect("corpus specs are valid")))
        .collect()
}

/// Seeded Erdős–Rényi-style graph with edge probability 1/2 and
/// 2 <= n <= 12, used for oracle-equivalence sweeps.
pub fn random_graph(seed: u64) -> Graph {
    let n = 2 + (seed % 11) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0xF01_4E5 ^ seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.next_u64() & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are valid")
}

/// Independent naive Cheeger enumerator. Shares no code with the engine's
/// scan: subsets are built as sorted vertex vectors in lexicographic order,
/// boundaries are counted by scanning the edge list, and ratios are compared
/// by integer cross-multiplication.
///
/// Returns `(boundary, size, members)` of the optimum under the
/// (ratio, cardinality, canonical) tie-break, or `None` when no admissible
/// subset exists.
pub fn naive_cheeger(g: &Graph) -> Option<(u64, u64, Vec<u32>)> {
    let n = g.vertex_count();
    if n <= 1 {
        return None;
    }
    let mut best: Option<(u64, u64, Vec<u32>)> = None;
    let mut current: Vec<u32> = Vec::new();
    explore(g, n, 0, &mut current, &mut best);
    best
}

fn explore(
    g: &Graph,
    n: usize,
    start: u32,
    current: &mut Vec<u32>,
    best: &mut Option<(u64, u64, Vec<u32>)>,
) {
    for v in start..n as u32 {
        current.push(v);
        if 2 * current.len() <= n {
            let boundary = naive_boundary(g, current);
            let candidate = (boundary, current.len() as u64, current.clone());
            let replace = match best {
                None => true,
                Some(incumbent) => naive_better(&candidate, incumbent),
            };
            if replace {
                *best = Some(candidate);
            }
            explore(g, n, v + 1, current, best);
        }
        current.pop();
    }
}

pub fn naive_boundary(g: &Graph, members: &[u32]) -> u64 {
    g.edges()
        .iter()
        .filter(|(u, v)| members.contains(u) != members.contains(v))
        .count() as u64
}

fn naive_better(a: &(u64, u64, Vec<u32>), b: &(u64, u64, Vec<u32>)) -> bool {
    let lhs = a.0 as u128 * b.1 as u128;
    let rhs = b.0 as u128 * a.1 as u128;
    (lhs, a.1, &a.2) < (rhs, b.1, &b.2)
}

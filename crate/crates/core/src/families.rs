//! Deterministic graph generators for the test corpus and the CLI.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Attempts before the configuration model gives up on a degree sequence.
const RETRY_CAP: u32 = 1000;

/// A named graph family with its size parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Complete {
        n: usize,
    },
    CompleteBipartite {
        left: usize,
        right: usize,
    },
    /// Two disjoint `K_clique`s joined by a single bridge edge.
    Barbell {
        clique: usize,
    },
    /// `K_clique` with a pendant path of `tail` extra vertices.
    Lollipop {
        clique: usize,
        tail: usize,
    },
    Hypercube {
        dim: usize,
    },
    /// Seeded configuration model with rejection of loops and multi-edges.
    RandomRegular {
        n: usize,
        degree: usize,
        seed: u64,
    },
}

/// Generates the graph described by `spec`. Deterministic: equal specs yield
/// identical graphs, including the seeded random family.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    match *spec {
        GeneratorSpec::Cycle { n } => {
            if n < 3 {
                return Err(Error::Parameter(format!("cycle requires n >= 3, got {n}")));
            }
            Graph::new(n, (0..n as u32).map(|i| (i, ((i + 1) % n as u32))))
        }
        GeneratorSpec::Path { n } => {
            if n < 1 {
                return Err(Error::Parameter("path requires n >= 1".into()));
            }
            Graph::new(n, (1..n as u32).map(|i| (i - 1, i)))
        }
        GeneratorSpec::Complete { n } => {
            if n < 1 {
                return Err(Error::Parameter("complete graph requires n >= 1".into()));
            }
            Graph::new(n, clique_edges(0, n as u32))
        }
        GeneratorSpec::CompleteBipartite { left, right } => {
            if left < 1 || right < 1 {
                return Err(Error::Parameter(
                    "complete bipartite graph requires both sides nonempty".into(),
                ));
            }
            let l = left as u32;
            let mut edges = Vec::new();
            for u in 0..l {
                for v in 0..right as u32 {
                    edges.push((u, l + v));
                }
            }
            Graph::new(left + right, edges)
        }
        GeneratorSpec::Barbell { clique } => {
            if clique < 2 {
                return Err(Error::Parameter(format!(
                    "barbell requires clique size >= 2, got {clique}"
                )));
            }
            let m = clique as u32;
            let mut edges = clique_edges(0, m);
            edges.extend(clique_edges(m, m));
            edges.push((m - 1, m));
            Graph::new(2 * clique, edges)
        }
        GeneratorSpec::Lollipop { clique, tail } => {
            if clique < 2 || tail < 1 {
                return Err(Error::Parameter(format!(
                    "lollipop requires clique >= 2 and tail >= 1, got ({clique}, {tail})"
                )));
            }
            let m = clique as u32;
            let mut edges = clique_edges(0, m);
            edges.push((m - 1, m));
            for i in 0..(tail as u32 - 1) {
                edges.push((m + i, m + i + 1));
            }
            Graph::new(clique + tail, edges)
        }
        GeneratorSpec::Hypercube { dim } => {
            if dim > 20 {
                return Err(Error::Parameter(format!(
                    "hypercube dimension {dim} is too large"
                )));
            }
            let n = 1usize << dim;
            let mut edges = Vec::new();
            for v in 0..n as u32 {
                for b in 0..dim {
                    let w = v ^ (1 << b);
                    if w > v {
                        edges.push((v, w));
                    }
                }
            }
            Graph::new(n, edges)
        }
        GeneratorSpec::RandomRegular { n, degree, seed } => random_regular(n, degree, seed),
    }
}

fn clique_edges(offset: u32, size: u32) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for u in 0..size {
        for v in (u + 1)..size {
            edges.push((offset + u, offset + v));
        }
    }
    edges
}

fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Graph> {
    if degree >= n {
        return Err(Error::Parameter(format!(
            "random regular graph requires degree < n, got degree {degree} with n = {n}"
        )));
    }
    if !(n * degree).is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "random regular graph requires n * degree even, got {n} * {degree}"
        )));
    }
    if degree == 0 {
        return Graph::new(n, []);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<u32> = Vec::with_capacity(n * degree);
    for _ in 0..RETRY_CAP {
        stubs.clear();
        for v in 0..n as u32 {
            stubs.extend(std::iter::repeat_n(v, degree));
        }
        shuffle(&mut stubs, &mut rng);
        let mut edges = std::collections::BTreeSet::new();
        let mut ok = true;
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !edges.insert((u.min(v), u.max(v))) {
                ok = false;
                break;
            }
        }
        if ok {
            return Graph::new(n, edges);
        }
    }
    Err(Error::RetriesExhausted(RETRY_CAP))
}

/// Fisher–Yates over explicit u64 draws so the result is identical on every
/// platform for a fixed seed.
fn shuffle(items: &mut [u32], rng: &mut ChaCha8Rng) {
    for i in (1..items.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

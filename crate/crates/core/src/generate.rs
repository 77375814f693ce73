//! Deterministic graph generators.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Names accepted by [`generate`].
pub const GENERATORS: &[&str] = &[
    "path",
    "cycle",
    "complete",
    "star",
    "caterpillar",
    "cycle_with_hairs",
    "random_degenerate",
    "two_blocks_bridge",
    "spider_T2",
];

/// Generator parameters. Each generator reads the fields it needs and
/// rejects missing or out-of-range ones.
///
/// * `n`: vertex count (path, cycle, complete, random_degenerate), number of
///   leaves (star), spine length (caterpillar), cycle length
///   (cycle_with_hairs), block size (two_blocks_bridge).
/// * `hairs`: pendant vertices per spine/cycle vertex.
/// * `eta`: maximum number of back-edges per inserted vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GenParams {
    pub n: Option<usize>,
    pub hairs: Option<usize>,
    pub eta: Option<usize>,
}

impl GenParams {
    pub fn with_n(n: usize) -> Self {
        GenParams {
            n: Some(n),
            ..Self::default()
        }
    }
}

fn need(value: Option<usize>, name: &str, kind: &str) -> Result<usize> {
    value.ok_or_else(|| Error::InvalidArgument(format!("generator `{kind}` needs --{name}")))
}

pub fn generate(kind: &str, params: &GenParams, seed: u64) -> Result<Graph> {
    match kind {
        "path" => Ok(path(need(params.n, "n", kind)?)),
        "cycle" => cycle(need(params.n, "n", kind)?),
        "complete" => Ok(complete(need(params.n, "n", kind)?)),
        "star" => Ok(star(need(params.n, "n", kind)?)),
        "caterpillar" => Ok(caterpillar(
            need(params.n, "n", kind)?,
            params.hairs.unwrap_or(1),
        )),
        "cycle_with_hairs" => cycle_with_hairs(need(params.n, "n", kind)?, params.hairs.unwrap_or(1)),
        "random_degenerate" => random_degenerate(
            need(params.n, "n", kind)?,
            need(params.eta, "eta", kind)?,
            seed,
        ),
        "two_blocks_bridge" => two_blocks_bridge(params.n.unwrap_or(3)),
        "spider_T2" => Ok(spider_t2()),
        other => Err(Error::UnknownGenerator(other.to_string())),
    }
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path edges are simple")
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("complete graph edges are simple")
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_edges(leaves + 1, &edges).expect("star edges are simple")
}

/// Spine `0..spine` with `hairs` leaves attached to every spine vertex.
pub fn caterpillar(spine: usize, hairs: usize) -> Graph {
    attach_hairs(&path(spine), spine, hairs)
}

/// Cycle `0..len` with `hairs` leaves attached to every cycle vertex.
pub fn cycle_with_hairs(len: usize, hairs: usize) -> Result<Graph> {
    Ok(attach_hairs(&cycle(len)?, len, hairs))
}

fn attach_hairs(g: &Graph, body: usize, hairs: usize) -> Graph {
    let n = body + body * hairs;
    let mut edges = g.edges().to_vec();
    let mut next = body;
    for v in 0..body {
        for _ in 0..hairs {
            edges.push((v, next));
            next += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("hair edges are simple")
}

/// Connected graph built by insertion: vertex `i >= 1` is joined to between
/// 1 and `min(eta, i)` uniformly chosen earlier vertices, so the insertion
/// order witnesses degeneracy at most `eta`.
pub fn random_degenerate(n: usize, eta: usize, seed: u64) -> Result<Graph> {
    if eta == 0 && n > 1 {
        return Err(Error::InvalidArgument("random_degenerate needs eta >= 1 for n > 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let cap = eta.min(v);
        let count = rng.gen_range(1..=cap);
        let mut picks = sample(&mut rng, v, count).into_vec();
        picks.sort_unstable();
        edges.extend(picks.into_iter().map(|u| (u, v)));
    }
    Graph::from_edges(n, &edges)
}

/// Two copies of `K_block` joined by a single edge between vertex
/// `block - 1` and vertex `block`.
pub fn two_blocks_bridge(block: usize) -> Result<Graph> {
    if block == 0 {
        return Err(Error::InvalidArgument("block size must be positive".into()));
    }
    let mut edges = Vec::new();
    for offset in [0, block] {
        for u in 0..block {
            for v in u + 1..block {
                edges.push((offset + u, offset + v));
            }
        }
    }
    edges.push((block - 1, block));
    Graph::from_edges(2 * block, &edges)
}

/// The spider with centre 0 and legs 0-1-2, 0-3-4, 0-5-6.
pub fn spider_t2() -> Graph {
    Graph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).expect("spider edges")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degeneracy_ordering;

    #[test]
    fn cycle_five() {
        let g = generate("cycle", &GenParams::with_n(5), 0).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.m(), 5);
        assert!((0..5).all(|v| g.degree(v) == 2));
        assert!(g.is_connected());
    }

    #[test]
    fn spider_shape() {
        let g = generate("spider_T2", &GenParams::default(), 0).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.m(), 6);
        let mut degrees: Vec<_> = (0..7).map(|v| g.degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 1, 2, 2, 2, 3]);
        assert!(g.is_connected());
    }

    #[test]
    fn random_degenerate_bound() {
        let params = GenParams {
            n: Some(20),
            eta: Some(2),
            hairs: None,
        };
        let g = generate("random_degenerate", &params, 7).unwrap();
        assert!(degeneracy_ordering(&g, &[]).claimed_degeneracy <= 2);
        assert!(g.is_connected());
        assert_eq!(g, generate("random_degenerate", &params, 7).unwrap());
    }

    #[test]
    fn unknown_and_invalid() {
        assert_eq!(
            generate("hypercube", &GenParams::with_n(3), 0),
            Err(Error::UnknownGenerator("hypercube".into()))
        );
        assert!(generate("cycle", &GenParams::with_n(2), 0).is_err());
        assert!(generate("path", &GenParams::default(), 0).is_err());
    }

    #[test]
    fn hairy_shapes() {
        let g = caterpillar(3, 2);
        assert_eq!((g.n(), g.m()), (9, 8));
        let g = cycle_with_hairs(5, 1).unwrap();
        assert_eq!((g.n(), g.m()), (10, 10));
        let g = two_blocks_bridge(3).unwrap();
        assert_eq!((g.n(), g.m()), (6, 7));
    }
}

//! Vertex deletion into a graph class while keeping the deleted set
//! p-edge-connected.
//!
//! Every solver first lists the inclusion-minimal deletion sets of size at
//! most `k` by branching on forbidden subgraphs, then asks the extension
//! solver whether one of them grows into a p-edge-connected set of size at
//! most `k`. Any solution contains some minimal deletion set, so this is
//! exact.

mod pw1;
mod scattered;
mod treedepth;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Graph;
use crate::sse::{solve_extension, SolveOptions, SseResult};

pub use pw1::{
    find_obstruction_t2c3c4, is_pathwidth_le1, pw1_structure, solve_pw1ds, ComponentShape, Pw1Component, Pw1Structure,
};
pub use scattered::{
    closest_forbidden_pair, find_subgraph_embedding, solve_scattered, ClosestPair, ScatteredFamilies,
};
pub use treedepth::{find_path_subgraph, find_td_obstruction, solve_pvc, solve_tdds, treedepth, TREEDEPTH_VERTEX_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    Star,
    T2,
    C3,
    C4,
    Path,
    TdObstruction,
    Custom,
}

/// A forbidden subgraph found in a graph, by vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub vertices: Vec<usize>,
    pub kind: ObstructionKind,
}

impl Obstruction {
    pub fn new(mut vertices: Vec<usize>, kind: ObstructionKind) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Obstruction { vertices, kind }
    }
}

pub type Finder<'a> = dyn Fn(&Graph) -> Result<Option<Obstruction>> + Sync + 'a;

/// All inclusion-minimal sets of at most `k` vertices whose deletion leaves
/// a graph on which `finder` reports nothing, sorted by size then
/// lexicographically. `finder` must report some obstruction whenever the
/// graph is not clean, and obstructions must survive the deletion of
/// vertices outside them.
pub fn enumerate_minimal_hitting_sets(g: &Graph, k: usize, finder: &Finder) -> Result<Vec<Vec<usize>>> {
    let mut found = BTreeSet::new();
    let mut chosen = Vec::new();
    let mut frozen = vec![false; g.n()];
    branch(g, k, finder, &mut chosen, &mut frozen, &mut found)?;
    let mut sets: Vec<Vec<usize>> = found.into_iter().collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|m| m.iter().all(|v| s.binary_search(v).is_ok())) {
            minimal.push(s);
        }
    }
    Ok(minimal)
}

// Branch `i` deletes the i-th obstruction vertex and keeps the earlier ones,
// so every deletion set is produced at most once.
fn branch(
    g: &Graph,
    k: usize,
    finder: &Finder,
    chosen: &mut Vec<usize>,
    frozen: &mut [bool],
    found: &mut BTreeSet<Vec<usize>>,
) -> Result<()> {
    let (rest, map) = g.without(chosen);
    let Some(obstruction) = finder(&rest)? else {
        let mut set = chosen.clone();
        set.sort_unstable();
        found.insert(set);
        return Ok(());
    };
    if chosen.len() == k {
        return Ok(());
    }
    let candidates: Vec<usize> = obstruction.vertices.iter().map(|&v| map[v]).collect();
    let mut released = Vec::new();
    for &v in &candidates {
        if frozen[v] {
            continue;
        }
        chosen.push(v);
        branch(g, k, finder, chosen, frozen, found)?;
        chosen.pop();
        frozen[v] = true;
        released.push(v);
    }
    for v in released {
        frozen[v] = false;
    }
    Ok(())
}

/// Tries every minimal deletion set in order and returns the first that
/// extends; the empty set answers immediately.
pub(crate) fn extend_first(
    candidates: &[Vec<usize>],
    solve: &(dyn Fn(&[usize]) -> Result<SseResult> + Sync),
) -> Result<SseResult> {
    if candidates.first().is_some_and(|c| c.is_empty()) {
        return Ok(SseResult::yes(Vec::new(), None));
    }
    let hit = candidates
        .par_iter()
        .map(|c| solve(c))
        .find_map_first(|r| match r {
            Ok(res) if !res.is_yes() => None,
            other => Some(other),
        });
    hit.unwrap_or_else(|| Ok(SseResult::no()))
}

/// Enumerate-then-extend with the plain extension solver.
pub(crate) fn solve_by_hitting_sets(
    g: &Graph,
    k: usize,
    p: usize,
    finder: &Finder,
    opts: &SolveOptions,
) -> Result<SseResult> {
    let candidates = enumerate_minimal_hitting_sets(g, k, finder)?;
    extend_first(&candidates, &|x| solve_extension(g, x, k, p, opts))
}

/// A vertex of degree above `eta` together with `eta + 1` of its
/// neighbours.
pub fn find_high_degree_star(g: &Graph, eta: usize) -> Option<Obstruction> {
    let centre = (0..g.n()).find(|&v| g.degree(v) > eta)?;
    let mut vertices = vec![centre];
    vertices.extend_from_slice(&g.neighbors(centre)[..=eta]);
    Some(Obstruction::new(vertices, ObstructionKind::Star))
}

/// Deletes a p-edge-connected set of at most `k` vertices so that every
/// remaining vertex has degree at most `eta`.
pub fn solve_bdds(g: &Graph, k: usize, p: usize, eta: usize, opts: &SolveOptions) -> Result<SseResult> {
    solve_by_hitting_sets(g, k, p, &|h: &Graph| Ok(find_high_degree_star(h, eta)), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, star};

    fn triangles(g: &Graph) -> Result<Option<Obstruction>> {
        for &(u, v) in g.edges() {
            if let Some(&w) = g.neighbors(u).iter().find(|&&w| w > v && g.has_edge(v, w)) {
                return Ok(Some(Obstruction::new(vec![u, v, w], ObstructionKind::C3)));
            }
        }
        Ok(None)
    }

    #[test]
    fn hitting_sets_examples() {
        let degree_one = |h: &Graph| Ok(find_high_degree_star(h, 1));
        assert_eq!(enumerate_minimal_hitting_sets(&star(3), 1, &degree_one).unwrap(), vec![vec![0]]);
        assert_eq!(
            enumerate_minimal_hitting_sets(&Graph::empty(3), 2, &degree_one).unwrap(),
            vec![Vec::<usize>::new()]
        );
        assert_eq!(
            enumerate_minimal_hitting_sets(&complete(3), 1, &triangles).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
        assert!(enumerate_minimal_hitting_sets(&complete(4), 1, &triangles).unwrap().is_empty());
    }

    #[test]
    fn hitting_sets_are_minimal() {
        let sets = enumerate_minimal_hitting_sets(&complete(5), 3, &triangles).unwrap();
        // deleting three of five vertices is the only way to kill every triangle
        assert_eq!(sets.len(), 10);
        assert!(sets.iter().all(|s| s.len() == 3));
    }

    #[test]
    fn bdds_examples() {
        let opts = SolveOptions::default();
        let r = solve_bdds(&star(5), 1, 1, 1, &opts).unwrap();
        assert_eq!(r.solution, Some(vec![0]));
        assert!(!solve_bdds(&cycle(4).unwrap(), 2, 2, 1, &opts).unwrap().is_yes());
        assert_eq!(solve_bdds(&cycle(4).unwrap(), 0, 3, 2, &opts).unwrap().solution, Some(vec![]));
    }
}

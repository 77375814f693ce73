//! Treedepth and path-freeness targets.

use std::collections::HashMap;

use super::{solve_by_hitting_sets, Obstruction, ObstructionKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sse::{SolveOptions, SseResult};

pub const TREEDEPTH_VERTEX_CAP: usize = 16;

/// Exact treedepth, memoised on connected vertex sets.
pub fn treedepth(g: &Graph) -> Result<usize> {
    if g.n() > TREEDEPTH_VERTEX_CAP {
        return Err(Error::CapExceeded(format!(
            "treedepth is computed exactly only up to {TREEDEPTH_VERTEX_CAP} vertices, got {}",
            g.n()
        )));
    }
    let adj: Vec<u32> = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let mut memo = HashMap::new();
    let all = if g.n() == 0 { 0 } else { u32::MAX >> (32 - g.n()) };
    Ok(split(&adj, all, &mut memo))
}

fn split(adj: &[u32], set: u32, memo: &mut HashMap<u32, usize>) -> usize {
    let mut left = set;
    let mut depth = 0;
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        loop {
            let mut grown = comp;
            let mut bits = comp;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grown |= adj[v] & set;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        depth = depth.max(connected(adj, comp, memo));
        left &= !comp;
    }
    depth
}

fn connected(adj: &[u32], comp: u32, memo: &mut HashMap<u32, usize>) -> usize {
    if comp.count_ones() == 1 {
        return 1;
    }
    if let Some(&d) = memo.get(&comp) {
        return d;
    }
    let mut best = usize::MAX;
    let mut bits = comp;
    while bits != 0 {
        let v = bits.trailing_zeros();
        bits &= bits - 1;
        best = best.min(1 + split(adj, comp & !(1 << v), memo));
    }
    memo.insert(comp, best);
    best
}

/// A connected vertex set inducing treedepth above `eta`, for `eta` in
/// `{1, 2}`: an edge for 1; a path on four vertices or a triangle for 2
/// (a connected graph with neither is a star).
pub fn find_td_obstruction(g: &Graph, eta: usize) -> Result<Option<Obstruction>> {
    match eta {
        1 => Ok(g
            .edges()
            .first()
            .map(|&(u, v)| Obstruction::new(vec![u, v], ObstructionKind::TdObstruction))),
        2 => {
            if let Some(path) = find_path_subgraph(g, 4)? {
                return Ok(Some(Obstruction::new(path.vertices, ObstructionKind::TdObstruction)));
            }
            Ok(g.edges().iter().find_map(|&(u, v)| {
                g.neighbors(u)
                    .iter()
                    .find(|&&w| w > v && g.has_edge(v, w))
                    .map(|&w| Obstruction::new(vec![u, v, w], ObstructionKind::TdObstruction))
            }))
        }
        _ => Err(Error::InvalidArgument(format!(
            "treedepth target {eta} is unsupported: minimal obstructions can have up to 2^(2^{eta}) vertices; \
             only 1 and 2 are handled"
        ))),
    }
}

/// Some path on `eta` vertices, by depth-first search from every vertex.
pub fn find_path_subgraph(g: &Graph, eta: usize) -> Result<Option<Obstruction>> {
    if eta < 2 {
        return Err(Error::InvalidArgument(format!("path length {eta} must be at least 2")));
    }
    fn extend(g: &Graph, eta: usize, path: &mut Vec<usize>, on_path: &mut [bool]) -> bool {
        if path.len() == eta {
            return true;
        }
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if !on_path[w] {
                on_path[w] = true;
                path.push(w);
                if extend(g, eta, path, on_path) {
                    return true;
                }
                path.pop();
                on_path[w] = false;
            }
        }
        false
    }
    let mut on_path = vec![false; g.n()];
    for v in 0..g.n() {
        let mut path = vec![v];
        on_path[v] = true;
        if extend(g, eta, &mut path, &mut on_path) {
            return Ok(Some(Obstruction::new(path, ObstructionKind::Path)));
        }
        on_path[v] = false;
    }
    Ok(None)
}

/// Deletes a p-edge-connected set of at most `k` vertices leaving treedepth
/// at most `eta` (1 or 2).
pub fn solve_tdds(g: &Graph, k: usize, p: usize, eta: usize, opts: &SolveOptions) -> Result<SseResult> {
    find_td_obstruction(&Graph::empty(0), eta)?;
    solve_by_hitting_sets(g, k, p, &|h: &Graph| find_td_obstruction(h, eta), opts)
}

/// Deletes a p-edge-connected set of at most `k` vertices hitting every path
/// on `eta` vertices.
pub fn solve_pvc(g: &Graph, k: usize, p: usize, eta: usize, opts: &SolveOptions) -> Result<SseResult> {
    find_path_subgraph(&Graph::empty(0), eta)?;
    solve_by_hitting_sets(g, k, p, &|h: &Graph| find_path_subgraph(h, eta), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, path, random_degenerate, star};
    use crate::oracle::{longest_path_vertices, masks_of, treedepth_of_masks};

    #[test]
    fn treedepth_examples() {
        assert_eq!(treedepth(&Graph::empty(1)).unwrap(), 1);
        assert_eq!(treedepth(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(treedepth(&complete(5)).unwrap(), 5);
        assert_eq!(treedepth(&path(4)).unwrap(), 3);
        assert_eq!(treedepth(&path(7)).unwrap(), 3);
        assert!(treedepth(&Graph::empty(17)).is_err());
        for seed in 0..20 {
            let g = random_degenerate(9, 2, seed).unwrap();
            assert_eq!(treedepth(&g).unwrap(), treedepth_of_masks(&masks_of(&g)));
        }
    }

    #[test]
    fn td_obstruction_examples() {
        let edge = find_td_obstruction(&path(2), 1).unwrap().unwrap();
        assert_eq!(edge.vertices, vec![0, 1]);
        let p4 = find_td_obstruction(&path(4), 2).unwrap().unwrap();
        assert_eq!(p4.vertices.len(), 4);
        assert_eq!(treedepth(&path(4).induced_subgraph(&p4.vertices).0).unwrap(), 3);
        assert!(find_td_obstruction(&Graph::empty(3), 1).unwrap().is_none());
        assert!(find_td_obstruction(&star(4), 2).unwrap().is_none());
        assert!(find_td_obstruction(&path(3), 3).is_err());
        for seed in 0..20 {
            let g = random_degenerate(8, 2, seed).unwrap();
            for eta in 1..=2 {
                let found = find_td_obstruction(&g, eta).unwrap();
                assert_eq!(found.is_some(), treedepth(&g).unwrap() > eta);
                if let Some(obs) = found {
                    let sub = g.induced_subgraph(&obs.vertices).0;
                    assert!(sub.is_connected() && treedepth(&sub).unwrap() > eta);
                }
            }
        }
    }

    #[test]
    fn path_search_examples() {
        let p = find_path_subgraph(&path(5), 3).unwrap().unwrap();
        assert_eq!(p.vertices.len(), 3);
        assert!(find_path_subgraph(&star(5), 4).unwrap().is_none());
        for seed in 0..10 {
            let tree = random_degenerate(12, 1, seed).unwrap();
            let longest = longest_path_vertices(&masks_of(&tree));
            assert!(find_path_subgraph(&tree, longest).unwrap().is_some());
            assert!(find_path_subgraph(&tree, longest + 1).unwrap().is_none());
        }
    }

    #[test]
    fn solver_examples() {
        let opts = SolveOptions::default();
        assert_eq!(solve_tdds(&path(4), 2, 1, 1, &opts).unwrap().solution, Some(vec![1, 2]));
        assert_eq!(solve_tdds(&Graph::empty(4), 0, 1, 1, &opts).unwrap().solution, Some(vec![]));
        assert!(!solve_tdds(&complete(4), 3, 3, 1, &opts).unwrap().is_yes());
        assert_eq!(solve_tdds(&complete(4), 4, 3, 1, &opts).unwrap().solution, Some(vec![0, 1, 2, 3]));
        assert_eq!(solve_pvc(&path(5), 1, 1, 3, &opts).unwrap().solution, Some(vec![2]));
        assert_eq!(solve_pvc(&star(3), 2, 1, 4, &opts).unwrap().solution, Some(vec![]));
        assert!(!solve_pvc(&cycle(6).unwrap(), 3, 2, 3, &opts).unwrap().is_yes());
    }
}

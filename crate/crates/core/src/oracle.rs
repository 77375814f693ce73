//! Brute-force reference answers. Nothing here calls the solvers or the
//! connectivity module; every property is checked from its definition.

use std::collections::HashMap;

use crate::connectivity::SingletonRule;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matroid::{GroundElement, LinearMatroid};
use crate::repfam::SetFamily;
use crate::sse::SseResult;

pub const SSE_VERTEX_CAP: usize = 14;
pub const DELETION_VERTEX_CAP: usize = 12;
const REPFAM_QUERY_CAP: usize = 2_000_000;

/// Which residual property a deletion problem asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Residual {
    /// Maximum degree at most `eta`.
    MaxDegree(usize),
    /// Pathwidth at most one.
    PathwidthOne,
    /// Treedepth at most `eta`.
    Treedepth(usize),
    /// No path on `eta` vertices.
    PathFree(usize),
    /// Every component has maximum degree at most `alpha` or no path on
    /// `beta` vertices.
    Scattered { alpha: usize, beta: usize },
}

/// Adjacency bitmasks of `g[s]`, indexed by position in `s`.
fn local_masks(g: &Graph, s: &[usize]) -> Vec<u64> {
    s.iter()
        .map(|&u| {
            let mut mask = 0u64;
            for (j, &w) in s.iter().enumerate() {
                if g.has_edge(u, w) {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect()
}

fn connected_after_removal(n: usize, edges: &[(usize, usize)], removed: &[usize]) -> bool {
    let mut adj = vec![0u64; n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        if !removed.contains(&i) {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        for v in 0..n {
            if frontier >> v & 1 == 1 {
                next |= adj[v];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == n
}

/// `g[s]` stays connected after deleting any `p - 1` edges.
pub fn edge_connected_by_deletion(g: &Graph, s: &[usize], p: usize) -> bool {
    let n = s.len();
    if n < 2 {
        return n == 1;
    }
    let masks = local_masks(g, s);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if masks[a] >> b & 1 == 1 {
                edges.push((a, b));
            }
        }
    }
    let mut removed = Vec::new();
    all_removals(n, &edges, p.saturating_sub(1), 0, &mut removed)
}

fn all_removals(n: usize, edges: &[(usize, usize)], left: usize, from: usize, removed: &mut Vec<usize>) -> bool {
    if !connected_after_removal(n, edges, removed) {
        return false;
    }
    if left == 0 {
        return true;
    }
    for i in from..edges.len() {
        removed.push(i);
        let ok = all_removals(n, edges, left - 1, i + 1, removed);
        removed.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Edmonds-Karp on a capacity matrix; each undirected edge has capacity
/// one in both directions.
fn matrix_max_flow(cap: &[Vec<i32>], s: usize, t: usize) -> usize {
    let n = cap.len();
    let mut residual = cap.to_vec();
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in 0..n {
                if parent[w] == usize::MAX && residual[u][w] > 0 {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[t] == usize::MAX {
            return flow;
        }
        let mut v = t;
        while v != s {
            let u = parent[v];
            residual[u][v] -= 1;
            residual[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
}

/// `g[s]` has `p` edge-disjoint paths between every pair, by max-flow over
/// all pairs.
pub fn edge_connected_by_flow(g: &Graph, s: &[usize], p: usize) -> bool {
    let n = s.len();
    if n < 2 {
        return n == 1;
    }
    let mut cap = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a != b && g.has_edge(s[a], s[b]) {
                cap[a][b] = 1;
            }
        }
    }
    (0..n).all(|a| (a + 1..n).all(|b| matrix_max_flow(&cap, a, b) >= p))
}

/// Definitional p-edge-connectivity of `g[s]` under `rule`.
pub fn oracle_edge_connected(g: &Graph, s: &[usize], p: usize, rule: SingletonRule) -> bool {
    match s.len() {
        0 => false,
        1 => rule == SingletonRule::Lenient,
        n if n <= 64 && choose(edge_count(g, s), p.saturating_sub(1)) <= 20_000 => {
            edge_connected_by_deletion(g, s, p)
        }
        _ => edge_connected_by_flow(g, s, p),
    }
}

fn edge_count(g: &Graph, s: &[usize]) -> usize {
    let mut m = 0;
    for (i, &u) in s.iter().enumerate() {
        for &w in &s[i + 1..] {
            if g.has_edge(u, w) {
                m += 1;
            }
        }
    }
    m
}

fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Subsets of `pool` of exactly `size` elements, in lexicographic order.
fn for_each_subset(pool: &[usize], size: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(pool: &[usize], size: usize, from: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if acc.len() == size {
            return f(acc);
        }
        for i in from..pool.len() {
            if pool.len() - i < size - acc.len() {
                break;
            }
            acc.push(pool[i]);
            let stop = rec(pool, size, i + 1, acc, f);
            acc.pop();
            if stop {
                return true;
            }
        }
        false
    }
    rec(pool, size, 0, &mut Vec::new(), f)
}

/// Scans every `S ⊇ x` with `|S| <= k` by increasing size.
pub fn brute_solve_sse(g: &Graph, x: &[usize], k: usize, p: usize, rule: SingletonRule) -> Result<SseResult> {
    if g.n() > SSE_VERTEX_CAP {
        return Err(Error::CapExceeded(format!(
            "brute-force extension is limited to {SSE_VERTEX_CAP} vertices"
        )));
    }
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    let rest: Vec<usize> = (0..g.n()).filter(|v| !x.contains(v)).collect();
    for size in x.len()..=k.min(g.n()) {
        let mut found = None;
        for_each_subset(&rest, size - x.len(), &mut |extra| {
            let mut s: Vec<usize> = x.iter().chain(extra).copied().collect();
            s.sort_unstable();
            if oracle_edge_connected(g, &s, p, rule) {
                found = Some(s);
                true
            } else {
                false
            }
        });
        if let Some(s) = found {
            return Ok(SseResult::yes(s, None));
        }
    }
    Ok(SseResult::no())
}

/// Scans every `S` with `|S| <= k`: `S` empty is accepted when the graph
/// already has the residual property, otherwise `g[S]` must be
/// p-edge-connected and `g - S` must have the property.
pub fn brute_deletion(g: &Graph, residual: Residual, k: usize, p: usize, rule: SingletonRule) -> Result<SseResult> {
    if g.n() > DELETION_VERTEX_CAP {
        return Err(Error::CapExceeded(format!(
            "brute-force deletion is limited to {DELETION_VERTEX_CAP} vertices"
        )));
    }
    let all: Vec<usize> = (0..g.n()).collect();
    for size in 0..=k.min(g.n()) {
        let mut found = None;
        for_each_subset(&all, size, &mut |s| {
            let connected = s.is_empty() || oracle_edge_connected(g, s, p, rule);
            if connected && residual_holds(g, s, residual) {
                found = Some(s.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(s) = found {
            return Ok(SseResult::yes(s, None));
        }
    }
    Ok(SseResult::no())
}

/// `g - removed` has the residual property.
pub fn residual_holds(g: &Graph, removed: &[usize], residual: Residual) -> bool {
    let keep: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    let masks = local_masks(g, &keep);
    match residual {
        Residual::MaxDegree(eta) => masks.iter().all(|m| m.count_ones() as usize <= eta),
        Residual::PathwidthOne => vertex_separation(&masks) <= 1,
        Residual::Treedepth(eta) => treedepth_of_masks(&masks) <= eta,
        Residual::PathFree(eta) => longest_path_vertices(&masks) < eta,
        Residual::Scattered { alpha, beta } => components_of_masks(&masks).into_iter().all(|comp| {
            let sub = restrict_masks(&masks, comp);
            let star = sub.iter().any(|m| m.count_ones() as usize > alpha);
            let path = longest_path_vertices(&sub) >= beta;
            !(star && path)
        }),
    }
}

fn components_of_masks(masks: &[u64]) -> Vec<u64> {
    let n = masks.len();
    let mut left: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in 0..n {
                if frontier >> v & 1 == 1 {
                    next |= masks[v];
                }
            }
            frontier = next & !comp;
            comp |= next;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

fn restrict_masks(masks: &[u64], subset: u64) -> Vec<u64> {
    let idx: Vec<usize> = (0..masks.len()).filter(|&v| subset >> v & 1 == 1).collect();
    idx.iter()
        .map(|&v| {
            let mut m = 0;
            for (j, &w) in idx.iter().enumerate() {
                if masks[v] >> w & 1 == 1 {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect()
}

/// Vertex separation number (equal to pathwidth): the best linear order
/// minimising the largest number of placed vertices with an unplaced
/// neighbour, by dynamic programming over placed sets.
pub fn vertex_separation(masks: &[u64]) -> usize {
    let n = masks.len();
    assert!(n <= 24, "vertex separation oracle is limited to 24 vertices");
    let full = (1usize << n) - 1;
    let mut best = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for set in 1..=full {
        let boundary = (0..n)
            .filter(|&v| set >> v & 1 == 1 && (masks[v] as usize) & !set != 0)
            .count();
        let mut value = usize::MAX;
        for v in 0..n {
            if set >> v & 1 == 1 {
                value = value.min(best[set & !(1 << v)]);
            }
        }
        best[set] = value.max(boundary);
    }
    best[full]
}

/// Treedepth by `td = 1 + min_u td(G - u)` on connected graphs and the
/// maximum over components otherwise.
pub fn treedepth_of_masks(masks: &[u64]) -> usize {
    let n = masks.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    td_subset(masks, all, &mut memo)
}

fn td_subset(masks: &[u64], set: u64, memo: &mut HashMap<u64, usize>) -> usize {
    if set == 0 {
        return 0;
    }
    if set.count_ones() == 1 {
        return 1;
    }
    if let Some(&v) = memo.get(&set) {
        return v;
    }
    let sub: Vec<u64> = masks
        .iter()
        .enumerate()
        .map(|(v, m)| if set >> v & 1 == 1 { m & set } else { 0 })
        .collect();
    let comps: Vec<u64> = components_of_masks(&sub)
        .into_iter()
        .map(|c| c & set)
        .filter(|&c| c != 0)
        .collect();
    let value = if comps.len() > 1 {
        comps.iter().map(|&c| td_subset(masks, c, memo)).max().unwrap_or(0)
    } else {
        (0..masks.len())
            .filter(|&v| set >> v & 1 == 1)
            .map(|v| 1 + td_subset(masks, set & !(1 << v), memo))
            .min()
            .unwrap_or(0)
    };
    memo.insert(set, value);
    value
}

/// Number of vertices on a longest simple path.
pub fn longest_path_vertices(masks: &[u64]) -> usize {
    fn extend(masks: &[u64], v: usize, visited: u64) -> usize {
        let mut best = visited.count_ones() as usize;
        let mut next = masks[v] & !visited;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            best = best.max(extend(masks, w, visited | 1 << w));
        }
        best
    }
    (0..masks.len()).map(|v| extend(masks, v, 1 << v)).max().unwrap_or(0)
}

/// Adjacency bitmasks of the whole graph.
pub fn masks_of(g: &Graph) -> Vec<u64> {
    let all: Vec<usize> = (0..g.n()).collect();
    local_masks(g, &all)
}

/// Checks the definition of q-representation: for every `Y` of at most `q`
/// ground elements, some member of `fam` extends `Y` iff some member of
/// `reduced` does, and `reduced ⊆ fam`.
pub fn brute_repfam_check(m: &LinearMatroid, fam: &SetFamily, reduced: &SetFamily, q: usize) -> Result<bool> {
    let ground = m.ground();
    let queries: usize = (0..=q).map(|i| choose(ground.len(), i)).sum();
    if queries > REPFAM_QUERY_CAP {
        return Err(Error::CapExceeded(format!("{queries} query sets exceed {REPFAM_QUERY_CAP}")));
    }
    if reduced.sets.iter().any(|s| !fam.sets.contains(s)) {
        return Ok(false);
    }
    let extends = |x: &[GroundElement], y: &[GroundElement]| -> Result<bool> {
        if x.iter().any(|e| y.contains(e)) {
            return Ok(false);
        }
        let union: Vec<GroundElement> = x.iter().chain(y).copied().collect();
        m.is_independent(&union)
    };
    let idx: Vec<usize> = (0..ground.len()).collect();
    let mut verdict = Ok(true);
    for size in 0..=q {
        for_each_subset(&idx, size, &mut |ys| {
            let y: Vec<GroundElement> = ys.iter().map(|&i| ground[i]).collect();
            let check = || -> Result<bool> {
                let mut in_fam = false;
                for x in &fam.sets {
                    if extends(x, &y)? {
                        in_fam = true;
                        break;
                    }
                }
                let mut in_reduced = false;
                for x in &reduced.sets {
                    if extends(x, &y)? {
                        in_reduced = true;
                        break;
                    }
                }
                Ok(in_fam == in_reduced)
            };
            match check() {
                Ok(true) => false,
                Ok(false) => {
                    verdict = Ok(false);
                    true
                }
                Err(e) => {
                    verdict = Err(e);
                    true
                }
            }
        });
        if !matches!(verdict, Ok(true)) {
            return verdict;
        }
    }
    verdict
}

/// All out-branchings of the bidirected graph rooted at `root`, each as a
/// bitmask over arc ids (`2e` is `u -> v`, `2e + 1` is `v -> u` for the
/// `e`-th edge `u < v`). Every non-root vertex picks one in-arc; choices
/// that leave a vertex unreachable from the root are discarded.
pub fn all_out_branchings(g: &Graph, root: usize) -> Vec<u64> {
    let n = g.n();
    assert!(2 * g.m() <= 64, "branching oracle is limited to 32 edges");
    let mut parents: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        parents[v].push((u, 2 * e));
        parents[u].push((v, 2 * e + 1));
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let mut out = Vec::new();
    let mut choice = vec![usize::MAX; n];
    fn rec(
        i: usize,
        others: &[usize],
        parents: &[Vec<(usize, usize)>],
        choice: &mut Vec<usize>,
        root: usize,
        mask: u64,
        out: &mut Vec<u64>,
    ) {
        if i == others.len() {
            // every vertex must reach the root by following parents
            let ok = others.iter().all(|&v| {
                let mut cur = v;
                for _ in 0..choice.len() {
                    if cur == root {
                        return true;
                    }
                    cur = choice[cur];
                }
                cur == root
            });
            if ok {
                out.push(mask);
            }
            return;
        }
        let v = others[i];
        for &(parent, arc) in &parents[v] {
            choice[v] = parent;
            rec(i + 1, others, parents, choice, root, mask | 1 << arc, out);
        }
        choice[v] = usize::MAX;
    }
    if n == 0 {
        return out;
    }
    rec(0, &others, &parents, &mut choice, root, 0, &mut out);
    out
}

/// Whether `p` pairwise arc-disjoint out-branchings rooted at `root` exist.
pub fn packs_out_branchings(g: &Graph, root: usize, p: usize) -> bool {
    let all = all_out_branchings(g, root);
    fn pick(all: &[u64], from: usize, left: usize, used: u64) -> bool {
        if left == 0 {
            return true;
        }
        (from..all.len()).any(|i| all[i] & used == 0 && pick(all, i + 1, left - 1, used | all[i]))
    }
    pick(&all, 0, p, 0)
}

/// `arcs` (as `(tail, head)` pairs) form an out-branching of `g`'s
/// vertices rooted at `root`.
pub fn is_out_branching(n: usize, arcs: &[(usize, usize)], root: usize) -> bool {
    if n == 0 || arcs.len() != n - 1 {
        return false;
    }
    let mut parent = vec![usize::MAX; n];
    for &(t, h) in arcs {
        if h == root || parent[h] != usize::MAX {
            return false;
        }
        parent[h] = t;
    }
    (0..n).all(|v| {
        let mut cur = v;
        for _ in 0..n {
            if cur == root {
                return true;
            }
            cur = parent[cur];
            if cur == usize::MAX {
                return false;
            }
        }
        cur == root
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, path, star};

    #[test]
    fn sse_examples() {
        let rule = SingletonRule::Lenient;
        assert!(brute_solve_sse(&complete(3), &[0], 3, 2, rule).unwrap().is_yes());
        assert!(!brute_solve_sse(&path(4), &[0, 3], 4, 2, rule).unwrap().is_yes());
        assert!(brute_solve_sse(&Graph::empty(15), &[], 1, 1, rule).is_err());
    }

    #[test]
    fn deletion_examples() {
        let rule = SingletonRule::Lenient;
        assert!(brute_deletion(&star(5), Residual::MaxDegree(1), 1, 1, rule).unwrap().is_yes());
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!brute_deletion(&two_triangles, Residual::PathwidthOne, 3, 2, rule).unwrap().is_yes());
        let r = brute_deletion(&Graph::empty(4), Residual::Treedepth(1), 0, 1, rule).unwrap();
        assert_eq!(r.solution, Some(vec![]));
    }

    #[test]
    fn connectivity_paths_agree() {
        let g = complete(5);
        let all: Vec<usize> = (0..5).collect();
        for p in 1..=5 {
            assert_eq!(edge_connected_by_deletion(&g, &all, p), p <= 4);
            assert_eq!(edge_connected_by_flow(&g, &all, p), p <= 4);
        }
        let c = cycle(6).unwrap();
        let all: Vec<usize> = (0..6).collect();
        assert!(edge_connected_by_deletion(&c, &all, 2));
        assert!(!edge_connected_by_flow(&c, &all, 3));
    }

    #[test]
    fn width_measures() {
        assert_eq!(vertex_separation(&masks_of(&path(5))), 1);
        assert_eq!(vertex_separation(&masks_of(&cycle(5).unwrap())), 2);
        assert_eq!(vertex_separation(&masks_of(&crate::generate::spider_t2())), 2);
        assert_eq!(treedepth_of_masks(&masks_of(&path(4))), 3);
        assert_eq!(treedepth_of_masks(&masks_of(&complete(4))), 4);
        assert_eq!(treedepth_of_masks(&masks_of(&Graph::empty(1))), 1);
        assert_eq!(longest_path_vertices(&masks_of(&star(3))), 3);
    }

    #[test]
    fn branchings() {
        assert_eq!(all_out_branchings(&complete(3), 0).len(), 3);
        assert!(packs_out_branchings(&complete(4), 0, 3));
        assert!(!packs_out_branchings(&cycle(4).unwrap(), 0, 3));
        assert!(packs_out_branchings(&cycle(4).unwrap(), 0, 2));
        assert!(is_out_branching(3, &[(0, 1), (1, 2)], 0));
        assert!(!is_out_branching(3, &[(1, 2), (2, 1)], 0));
    }
}

//! Deletion into a union of two classes, one per component: every
//! component of the remainder must avoid all patterns of the first family
//! or all patterns of the second.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{solve_by_hitting_sets, Obstruction, ObstructionKind};
use crate::error::{Error, Result};
use crate::generate::{path, star};
use crate::graph::Graph;
use crate::sse::{SolveOptions, SseResult};

const PATTERN_VERTEX_CAP: usize = 8;
const EMBEDDING_CAP: usize = 2_000_000;

/// Two finite families of forbidden patterns (as subgraphs) and the path
/// length `lambda` whose path must belong to one of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScatteredFamilies {
    pub first: Vec<Graph>,
    pub second: Vec<Graph>,
    pub lambda: usize,
}

impl ScatteredFamilies {
    /// Components of maximum degree at most `alpha` or without a path on
    /// `beta` vertices.
    pub fn degree_or_path(alpha: usize, beta: usize) -> Self {
        ScatteredFamilies {
            first: vec![star(alpha + 1)],
            second: vec![path(beta)],
            lambda: beta,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for h in self.first.iter().chain(&self.second) {
            if h.n() == 0 || h.n() > PATTERN_VERTEX_CAP {
                return Err(Error::CapExceeded(format!(
                    "forbidden patterns need 1 to {PATTERN_VERTEX_CAP} vertices, got {}",
                    h.n()
                )));
            }
        }
        if self.first.is_empty() || self.second.is_empty() {
            return Err(Error::InvalidArgument("both forbidden families must be nonempty".into()));
        }
        if !self.first.iter().chain(&self.second).any(|h| is_path_on(h, self.lambda)) {
            return Err(Error::InvalidArgument(format!(
                "the path on {} vertices must belong to one of the families",
                self.lambda
            )));
        }
        Ok(())
    }
}

fn is_path_on(h: &Graph, vertices: usize) -> bool {
    h.n() == vertices && h.m() + 1 == vertices && h.is_connected() && h.max_degree() <= 2
}

/// Pattern vertices in an order where each one after the first of its
/// component has an earlier neighbour.
fn search_order(pattern: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(pattern.n());
    let mut seen = vec![false; pattern.n()];
    for s in 0..pattern.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in pattern.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Calls `visit` with every injective edge-preserving map of `pattern` into
/// `g` (indexed by pattern vertex) until it returns true.
fn embeddings(g: &Graph, pattern: &Graph, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
    let order = search_order(pattern);
    let mut image = vec![usize::MAX; pattern.n()];
    let mut used = vec![false; g.n()];
    let mut budget = EMBEDDING_CAP;
    fn rec(
        g: &Graph,
        pattern: &Graph,
        order: &[usize],
        i: usize,
        image: &mut [usize],
        used: &mut [bool],
        budget: &mut usize,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool> {
        if i == order.len() {
            if *budget == 0 {
                return Err(Error::CapExceeded(format!("more than {EMBEDDING_CAP} pattern embeddings")));
            }
            *budget -= 1;
            return Ok(visit(image));
        }
        let v = order[i];
        let anchor = pattern.neighbors(v).iter().copied().find(|&w| image[w] != usize::MAX);
        let candidates: Vec<usize> = match anchor {
            Some(w) => g.neighbors(image[w]).to_vec(),
            None => (0..g.n()).collect(),
        };
        for c in candidates {
            if used[c] {
                continue;
            }
            let fits = pattern
                .neighbors(v)
                .iter()
                .all(|&w| image[w] == usize::MAX || g.has_edge(c, image[w]));
            if !fits {
                continue;
            }
            image[v] = c;
            used[c] = true;
            let stop = rec(g, pattern, order, i + 1, image, used, budget, visit)?;
            used[c] = false;
            image[v] = usize::MAX;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
    rec(g, pattern, &order, 0, &mut image, &mut used, &mut budget, visit)
}

/// Images of the pattern vertices for some subgraph embedding, if any.
pub fn find_subgraph_embedding(g: &Graph, pattern: &Graph) -> Result<Option<Vec<usize>>> {
    let mut found = None;
    embeddings(g, pattern, &mut |image| {
        found = Some(image.to_vec());
        true
    })?;
    Ok(found)
}

fn embedded_sets(g: &Graph, family: &[Graph]) -> Result<BTreeSet<Vec<usize>>> {
    let mut sets = BTreeSet::new();
    for pattern in family {
        embeddings(g, pattern, &mut |image| {
            let mut s = image.to_vec();
            s.sort_unstable();
            sets.insert(s);
            false
        })?;
    }
    Ok(sets)
}

/// Embedded vertex sets of one pattern from each family at minimum
/// distance, with a shortest path joining them (`None` when they lie in
/// different components).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosestPair {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub path: Option<Vec<usize>>,
}

impl ClosestPair {
    /// Vertex count of the joining path.
    pub fn path_vertices(&self) -> Option<usize> {
        self.path.as_ref().map(Vec::len)
    }
}

/// `None` when either family has no embedding.
pub fn closest_forbidden_pair(g: &Graph, first: &[Graph], second: &[Graph]) -> Result<Option<ClosestPair>> {
    let ones = embedded_sets(g, first)?;
    let twos = embedded_sets(g, second)?;
    let (Some(j1), Some(j2)) = (ones.first(), twos.first()) else {
        return Ok(None);
    };
    let mut best = (usize::MAX, j1, j2);
    for a in &ones {
        let dist = g.bfs_distances(a);
        for b in &twos {
            let d = b.iter().map(|&v| dist[v]).min().unwrap_or(usize::MAX);
            if d < best.0 {
                best = (d, a, b);
            }
        }
        if best.0 == 0 {
            break;
        }
    }
    let (d, a, b) = best;
    let path = (d != usize::MAX).then(|| shortest_path(g, a, b));
    Ok(Some(ClosestPair {
        first: a.clone(),
        second: b.clone(),
        path,
    }))
}

/// A shortest path from `from` to `to` (both nonempty, assumed connected),
/// endpoints included.
fn shortest_path(g: &Graph, from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut parent = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for &s in from {
        parent[s] = s;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        if to.contains(&u) {
            let mut path = vec![u];
            let mut cur = u;
            while parent[cur] != cur {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return path;
        }
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    Vec::new()
}

fn scattered_obstruction(g: &Graph, families: &ScatteredFamilies) -> Result<Option<Obstruction>> {
    let Some(pair) = closest_forbidden_pair(g, &families.first, &families.second)? else {
        return Ok(None);
    };
    let Some(path) = pair.path else {
        return Ok(None);
    };
    let vertices = pair.first.into_iter().chain(pair.second).chain(path).collect();
    Ok(Some(Obstruction::new(vertices, ObstructionKind::Custom)))
}

/// Deletes a p-edge-connected set of at most `k` vertices so that every
/// remaining component avoids one of the two families.
pub fn solve_scattered(
    g: &Graph,
    k: usize,
    p: usize,
    families: &ScatteredFamilies,
    opts: &SolveOptions,
) -> Result<SseResult> {
    families.validate()?;
    solve_by_hitting_sets(g, k, p, &|h: &Graph| scattered_obstruction(h, families), opts)
}

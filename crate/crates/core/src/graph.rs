//! Simple undirected graphs, vertex orderings and the bidirected arc view.
//!
//! Vertices are `0..n`. Adjacency lists are kept sorted, so neighbourhood
//! queries are binary searches and iteration order is deterministic.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from an edge list. Rejects self-loops, parallel edges
    /// and endpoints outside `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange(u));
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange(v));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        match self.adj[a].binary_search(&b) {
            Ok(_) => Err(Error::InvalidGraph(format!("duplicate edge {{{a}, {b}}}"))),
            Err(pos) => {
                self.adj[a].insert(pos, b);
                let pos = self.adj[b].binary_search(&a).unwrap_err();
                self.adj[b].insert(pos, a);
                let pos = self.edges.binary_search(&(a, b)).unwrap_err();
                self.edges.insert(pos, (a, b));
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Induced subgraph on `vertices` (any order, duplicates ignored). Returns
    /// the subgraph and the map from new ids to original ids, which is sorted.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut keep: Vec<usize> = vertices.iter().copied().filter(|&v| v < self.n).collect();
        keep.sort_unstable();
        keep.dedup();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut h = Graph::empty(keep.len());
        for &(u, v) in &self.edges {
            if new_id[u] != usize::MAX && new_id[v] != usize::MAX {
                h.push_sorted_edge(new_id[u], new_id[v]);
            }
        }
        h.finish_sorted();
        (h, keep)
    }

    /// `G - removed`, with the map from new ids to original ids.
    pub fn without(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n];
        for &v in removed {
            if v < self.n {
                gone[v] = true;
            }
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    // Bulk construction helpers: edges arrive in sorted order from a graph
    // that already satisfies the invariants.
    fn push_sorted_edge(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges.push((u.min(v), u.max(v)));
    }

    fn finish_sorted(&mut self) {
        for list in &mut self.adj {
            list.sort_unstable();
        }
        self.edges.sort_unstable();
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// BFS distances from a set of sources; `usize::MAX` marks unreachable.
    pub fn bfs_distances(&self, sources: &[usize]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Number of back-neighbours of every position of `sequence`, i.e.
    /// `|N(sequence[i]) ∩ sequence[..i]|`.
    pub fn back_degrees(&self, sequence: &[usize]) -> Vec<usize> {
        let mut placed = vec![false; self.n];
        sequence
            .iter()
            .map(|&v| {
                let d = self.adj[v].iter().filter(|&&w| placed[w]).count();
                placed[v] = true;
                d
            })
            .collect()
    }
}

/// A sequence over a vertex subset together with an upper bound on the
/// number of earlier neighbours of every vertex in it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ordering {
    pub sequence: Vec<usize>,
    pub claimed_degeneracy: usize,
}

impl Ordering {
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// True if every vertex has at most `claimed_degeneracy` neighbours
    /// among the vertices placed before it.
    pub fn respects_bound(&self, g: &Graph) -> bool {
        g.back_degrees(&self.sequence)
            .iter()
            .all(|&d| d <= self.claimed_degeneracy)
    }
}

/// Degeneracy ordering of `g - excluded` by repeated removal of a minimum
/// degree vertex (smallest id on ties). The removal order is reversed so
/// that every vertex has at most `claimed_degeneracy` earlier neighbours.
pub fn degeneracy_ordering(g: &Graph, excluded: &[usize]) -> Ordering {
    let n = g.n();
    let mut alive = vec![true; n];
    for &v in excluded {
        if v < n {
            alive[v] = false;
        }
    }
    let mut deg: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&&w| alive[w]).count())
        .collect();
    let remaining = alive.iter().filter(|&&a| a).count();
    let mut removal = Vec::with_capacity(remaining);
    let mut degeneracy = 0;
    for _ in 0..remaining {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("remaining vertex");
        degeneracy = degeneracy.max(deg[v]);
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
        removal.push(v);
    }
    removal.reverse();
    Ordering {
        sequence: removal,
        claimed_degeneracy: degeneracy,
    }
}

/// A rooted tree decomposition. Bag `root` is the traversal start.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
    pub root: usize,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Checks the three decomposition axioms against `g` and that the bag
    /// tree is a tree.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let t = self.bags.len();
        if t == 0 {
            if g.n() == 0 {
                return Ok(());
            }
            return Err(Error::InvalidDecomposition("no bags".into()));
        }
        if self.root >= t {
            return Err(Error::InvalidDecomposition(format!("root bag {} does not exist", self.root)));
        }
        let mut tree_adj = vec![Vec::new(); t];
        for &(a, b) in &self.tree_edges {
            if a >= t || b >= t || a == b {
                return Err(Error::InvalidDecomposition(format!("bad tree edge ({a}, {b})")));
            }
            tree_adj[a].push(b);
            tree_adj[b].push(a);
        }
        if self.tree_edges.len() != t - 1 || !reaches_all(&tree_adj, self.root, |_| true) {
            return Err(Error::InvalidDecomposition("bag graph is not a tree".into()));
        }
        for bag in &self.bags {
            if let Some(&v) = bag.iter().find(|&&v| v >= g.n()) {
                return Err(Error::InvalidDecomposition(format!("bag mentions unknown vertex {v}")));
            }
        }
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (b, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                holders[v].push(b);
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.is_empty() {
                return Err(Error::InvalidDecomposition(format!(
                    "vertex coverage violated: vertex {v} is in no bag"
                )));
            }
        }
        for &(u, v) in g.edges() {
            let covered = holders[u].iter().any(|b| self.bags[*b].contains(&v));
            if !covered {
                return Err(Error::InvalidDecomposition(format!(
                    "edge coverage violated: no bag contains edge {{{u}, {v}}}"
                )));
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            let mut member = vec![false; t];
            for &b in hs {
                member[b] = true;
            }
            if !reaches_all_marked(&tree_adj, hs[0], &member) {
                return Err(Error::InvalidDecomposition(format!(
                    "connectivity violated: bags containing vertex {v} are not a subtree"
                )));
            }
        }
        Ok(())
    }
}

fn reaches_all(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> bool {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] && allowed(w) {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == (0..adj.len()).filter(|&b| allowed(b)).count()
}

fn reaches_all_marked(adj: &[Vec<usize>], start: usize, member: &[bool]) -> bool {
    reaches_all(adj, start, |b| member[b])
}

/// Emits bag contents in pre-order from the root bag, skipping vertices
/// already emitted. `claimed_degeneracy` is the largest back-degree of the
/// produced sequence, which never exceeds twice the width.
pub fn ordering_from_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<Ordering> {
    td.validate(g)?;
    let mut sequence = Vec::with_capacity(g.n());
    if td.bags.is_empty() {
        return Ok(Ordering {
            sequence,
            claimed_degeneracy: 0,
        });
    }
    let t = td.bags.len();
    let mut tree_adj = vec![Vec::new(); t];
    for &(a, b) in &td.tree_edges {
        tree_adj[a].push(b);
        tree_adj[b].push(a);
    }
    for list in &mut tree_adj {
        list.sort_unstable();
    }
    let mut emitted = vec![false; g.n()];
    let mut visited = vec![false; t];
    let mut stack = vec![td.root];
    while let Some(b) = stack.pop() {
        if visited[b] {
            continue;
        }
        visited[b] = true;
        let mut bag = td.bags[b].clone();
        bag.sort_unstable();
        for v in bag {
            if !emitted[v] {
                emitted[v] = true;
                sequence.push(v);
            }
        }
        for &c in tree_adj[b].iter().rev() {
            if !visited[c] {
                stack.push(c);
            }
        }
    }
    let claimed_degeneracy = g.back_degrees(&sequence).into_iter().max().unwrap_or(0);
    Ok(Ordering {
        sequence,
        claimed_degeneracy,
    })
}

/// Width of a linear layout: the largest number of edges crossing a cut
/// between a prefix and the corresponding suffix.
pub fn cutwidth_of_layout(g: &Graph, layout: &[usize]) -> Result<usize> {
    let pos = layout_positions(g, layout)?;
    let n = layout.len();
    if n < 2 {
        return Ok(0);
    }
    let mut delta = vec![0isize; n];
    for &(u, v) in g.edges() {
        let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        // edge crosses cuts a, a+1, .., b-1
        delta[a] += 1;
        delta[b] -= 1;
    }
    let mut width = 0;
    let mut running = 0isize;
    for d in delta.iter().take(n - 1) {
        running += d;
        width = width.max(running as usize);
    }
    Ok(width)
}

fn layout_positions(g: &Graph, layout: &[usize]) -> Result<Vec<usize>> {
    if layout.len() != g.n() {
        return Err(Error::NotAPermutation(format!(
            "layout has {} entries, graph has {} vertices",
            layout.len(),
            g.n()
        )));
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in layout.iter().enumerate() {
        if v >= g.n() {
            return Err(Error::NotAPermutation(format!("vertex {v} out of range")));
        }
        if pos[v] != usize::MAX {
            return Err(Error::NotAPermutation(format!("vertex {v} repeated")));
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// A cutwidth layout used directly as an ordering: every vertex has at most
/// `width` earlier neighbours.
pub fn ordering_from_cutwidth_layout(g: &Graph, layout: &[usize]) -> Result<Ordering> {
    let width = cutwidth_of_layout(g, layout)?;
    Ok(Ordering {
        sequence: layout.to_vec(),
        claimed_degeneracy: width,
    })
}

/// Arc of the bidirected graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

/// Both orientations of every edge plus a root vertex. Arc `2e` is
/// `(u, v)` and arc `2e + 1` is `(v, u)` for edge `e = (u, v)`, `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalentDigraph {
    pub base: Graph,
    pub arcs: Vec<Arc>,
    pub root: usize,
}

impl EquivalentDigraph {
    /// Arc id of `(tail, head)`, if the underlying edge exists.
    pub fn arc_id(&self, tail: usize, head: usize) -> Option<usize> {
        let (a, b) = (tail.min(head), tail.max(head));
        let e = self.base.edges().binary_search(&(a, b)).ok()?;
        Some(if tail < head { 2 * e } else { 2 * e + 1 })
    }

    /// Id of the arc with the opposite orientation.
    pub fn reverse(arc: usize) -> usize {
        arc ^ 1
    }

    /// Index of the underlying undirected edge.
    pub fn edge_of(arc: usize) -> usize {
        arc / 2
    }
}

pub fn equivalent_digraph(g: &Graph, root: usize) -> Result<EquivalentDigraph> {
    if root >= g.n() {
        return Err(Error::VertexOutOfRange(root));
    }
    let arcs = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [Arc { tail: u, head: v }, Arc { tail: v, head: u }])
        .collect();
    Ok(EquivalentDigraph {
        base: g.clone(),
        arcs,
        root,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    /// Smallest d such that repeatedly deleting any vertex of degree <= d
    /// empties the graph, found by trying d = 0, 1, ...
    fn peeling_degeneracy(g: &Graph) -> usize {
        for d in 0..=g.n() {
            let mut alive = vec![true; g.n()];
            loop {
                let next = (0..g.n()).find(|&v| {
                    alive[v] && g.neighbors(v).iter().filter(|&&w| alive[w]).count() <= d
                });
                match next {
                    Some(v) => alive[v] = false,
                    None => break,
                }
            }
            if alive.iter().all(|a| !a) {
                return d;
            }
        }
        unreachable!()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::from_edges(3, &[(1, 1)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert_eq!(Graph::from_edges(3, &[(0, 3)]), Err(Error::VertexOutOfRange(3)));
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy_ordering(&path(4), &[]).claimed_degeneracy, 1);
        assert_eq!(degeneracy_ordering(&complete(4), &[]).claimed_degeneracy, 3);
        let pet = petersen();
        assert_eq!(peeling_degeneracy(&pet), 3);
        let o = degeneracy_ordering(&pet, &[]);
        assert_eq!(o.claimed_degeneracy, 3);
        assert!(o.respects_bound(&pet));
    }

    #[test]
    fn degeneracy_excluding_vertices() {
        let g = complete(5);
        let o = degeneracy_ordering(&g, &[0, 1]);
        assert_eq!(o.sequence.len(), 3);
        assert!(!o.sequence.contains(&0) && !o.sequence.contains(&1));
        assert_eq!(o.claimed_degeneracy, 2);
        let empty = degeneracy_ordering(&g, &[0, 1, 2, 3, 4]);
        assert!(empty.is_empty());
        assert_eq!(empty.claimed_degeneracy, 0);
    }

    #[test]
    fn tree_decomposition_path() {
        let g = path(3);
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2]],
            tree_edges: vec![(0, 1)],
            root: 0,
        };
        let o = ordering_from_tree_decomposition(&g, &td).unwrap();
        assert_eq!(o.sequence, vec![0, 1, 2]);
        assert!(o.claimed_degeneracy <= 2);
        assert!(o.respects_bound(&g));
    }

    #[test]
    fn tree_decomposition_single_bag() {
        let g = complete(4);
        let td = TreeDecomposition {
            bags: vec![vec![3, 1, 0, 2]],
            tree_edges: vec![],
            root: 0,
        };
        let o = ordering_from_tree_decomposition(&g, &td).unwrap();
        assert_eq!(o.sequence.len(), 4);
        assert!(o.claimed_degeneracy <= 3);
    }

    #[test]
    fn tree_decomposition_axioms_named() {
        let g = path(3);
        let missing_edge = TreeDecomposition {
            bags: vec![vec![0, 1], vec![2]],
            tree_edges: vec![(0, 1)],
            root: 0,
        };
        let err = ordering_from_tree_decomposition(&g, &missing_edge).unwrap_err();
        assert!(err.to_string().contains("edge coverage"));
        let missing_vertex = TreeDecomposition {
            bags: vec![vec![0, 1]],
            tree_edges: vec![],
            root: 0,
        };
        let err = missing_vertex.validate(&g).unwrap_err();
        assert!(err.to_string().contains("vertex coverage"));
        let split = TreeDecomposition {
            bags: vec![vec![0, 1], vec![2], vec![1, 2]],
            tree_edges: vec![(0, 1), (1, 2)],
            root: 0,
        };
        let err = split.validate(&g).unwrap_err();
        assert!(err.to_string().contains("connectivity"));
    }

    #[test]
    fn cutwidth_examples() {
        let o = ordering_from_cutwidth_layout(&path(4), &[0, 1, 2, 3]).unwrap();
        assert_eq!(o.claimed_degeneracy, 1);
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let o = ordering_from_cutwidth_layout(&c4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(o.claimed_degeneracy, 2);
        assert!(matches!(
            ordering_from_cutwidth_layout(&c4, &[0, 1, 1, 3]),
            Err(Error::NotAPermutation(_))
        ));
        assert!(matches!(
            ordering_from_cutwidth_layout(&c4, &[0, 1, 2]),
            Err(Error::NotAPermutation(_))
        ));
    }

    #[test]
    fn equivalent_digraph_examples() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let d = equivalent_digraph(&edge, 0).unwrap();
        assert_eq!(d.arcs, vec![Arc { tail: 0, head: 1 }, Arc { tail: 1, head: 0 }]);
        assert_eq!(d.arc_id(1, 0), Some(1));
        assert_eq!(equivalent_digraph(&complete(3), 0).unwrap().arcs.len(), 6);
        assert!(equivalent_digraph(&Graph::empty(3), 0).unwrap().arcs.is_empty());
        assert_eq!(equivalent_digraph(&Graph::empty(3), 3).unwrap_err(), Error::VertexOutOfRange(3));
    }

    #[test]
    fn induced_subgraph_maps_ids() {
        let g = complete(4);
        let (h, map) = g.induced_subgraph(&[3, 1]);
        assert_eq!(map, vec![1, 3]);
        assert_eq!(h.edges(), &[(0, 1)]);
        let (h, map) = g.without(&[0]);
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(h.m(), 3);
    }
}

//! Steiner subgraph extension: find `S ⊇ X` with `|S| <= k` and `G[S]`
//! p-edge-connected.
//!
//! For a fixed target size `k'` the solver looks for `p` arc-disjoint
//! out-branchings of the bidirected graph on `X ∪ S'`, encoded as an
//! independent set of size `3p(k' - 1)` in the layered matroid of
//! [`build_sse_matroid`]. Vertices of `G - X` are added along an ordering
//! with few back-neighbours; when a vertex is added, arcs between it and its
//! already chosen back-neighbours or its terminal neighbours are added, each
//! assigned to one branching. Partial sets are grouped by
//! [`SlotKey`] and every group is cut down to a representative subfamily
//! when the minor-vector dimension is small enough.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::connectivity::{feasible_superset, is_p_edge_connected_with, SingletonRule};
use crate::error::{Error, Result};
use crate::field::{IncrementalBasis, PrimeField};
use crate::graph::{degeneracy_ordering, equivalent_digraph, EquivalentDigraph, Graph, Ordering};
use crate::matroid::{build_sse_matroid, GroundElement, SseMatroid};
use crate::repfam::{binomial, representative_indices};

/// Knobs shared by every solver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub seed: u64,
    pub rule: SingletonRule,
    /// Field modulus; defaults to the smallest prime above
    /// `max(n², 2m, 2^31)`.
    pub field_prime: Option<u64>,
    /// Largest number of candidate arcs at one vertex.
    pub arc_cap: usize,
    /// Largest minor-vector dimension `C(r, q)` for which a slot is reduced;
    /// larger slots are kept whole (a family always represents itself).
    pub reduce_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            rule: SingletonRule::Lenient,
            field_prime: None,
            arc_cap: 14,
            reduce_cap: 512,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SseResult {
    /// Sorted solution vertices, `None` for a no-instance.
    pub solution: Option<Vec<usize>>,
    /// Size of the independent set that certified the solution, when the
    /// table produced it.
    pub certificate_size: Option<usize>,
}

impl SseResult {
    pub fn no() -> Self {
        SseResult {
            solution: None,
            certificate_size: None,
        }
    }

    pub fn yes(mut solution: Vec<usize>, certificate_size: Option<usize>) -> Self {
        solution.sort_unstable();
        solution.dedup();
        SseResult {
            solution: Some(solution),
            certificate_size,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.solution.is_some()
    }
}

/// `A_j`: earlier neighbours of each ordering position, terminals excluded.
pub fn back_neighbor_sets(g: &Graph, x: &[usize], ordering: &[usize]) -> Vec<Vec<usize>> {
    let mut placed = vec![false; g.n()];
    let mut terminal = vec![false; g.n()];
    for &t in x {
        terminal[t] = true;
    }
    ordering
        .iter()
        .map(|&v| {
            let back = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| placed[w] && !terminal[w])
                .collect();
            placed[v] = true;
            back
        })
        .collect()
}

pub fn default_field(g: &Graph) -> Result<PrimeField> {
    let n = g.n() as u64;
    PrimeField::above((n * n).max(2 * g.m() as u64).max(1 << 31))
}

/// Solves with the degeneracy ordering of `G - X`.
pub fn solve_extension(g: &Graph, x: &[usize], k: usize, p: usize, opts: &SolveOptions) -> Result<SseResult> {
    solve_guarded(g, x, k, p, None, &[], &|_| true, opts, true)
}

/// Solves along a caller-supplied ordering of `V(G) \ X`, e.g. one derived
/// from a tree decomposition or a cutwidth layout.
pub fn solve_extension_with_ordering(
    g: &Graph,
    x: &[usize],
    k: usize,
    p: usize,
    ordering: &Ordering,
    opts: &SolveOptions,
) -> Result<SseResult> {
    solve_guarded(g, x, k, p, Some(ordering), &[], &|_| true, opts, true)
}

fn normalize_terminals(g: &Graph, x: &[usize]) -> Result<Vec<usize>> {
    if let Some(&v) = x.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange(v));
    }
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    Ok(x)
}

fn check_ordering(g: &Graph, x: &[usize], ordering: &[usize]) -> Result<()> {
    let mut seen = vec![false; g.n()];
    for &t in x {
        seen[t] = true;
    }
    for &v in ordering {
        if v >= g.n() || seen[v] {
            return Err(Error::InvalidArgument(format!(
                "ordering entry {v} is a terminal, repeated or out of range"
            )));
        }
        seen[v] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidArgument("ordering does not cover every non-terminal vertex".into()));
    }
    Ok(())
}

/// Shared entry point. `cycles` are vertex sets each of which must meet the
/// solution; every cycle must occupy consecutive positions of the ordering
/// (after terminals are dropped). `accept` is an extra test applied to
/// shortcut answers. With `restrict`, the search first shrinks the graph to
/// the set returned by the segment descent, which contains every solution.
#[allow(clippy::too_many_arguments)]
pub(crate) fn solve_guarded(
    g: &Graph,
    x: &[usize],
    k: usize,
    p: usize,
    ordering: Option<&Ordering>,
    cycles: &[Vec<usize>],
    accept: &(dyn Fn(&[usize]) -> bool + Sync),
    opts: &SolveOptions,
    restrict: bool,
) -> Result<SseResult> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be at least 1".into()));
    }
    let x = normalize_terminals(g, x)?;
    let full_order: Vec<usize> = match ordering {
        Some(o) => {
            check_ordering(g, &x, &o.sequence)?;
            o.sequence.clone()
        }
        None => degeneracy_ordering(g, &x).sequence,
    };
    if x.len() > k {
        return Ok(SseResult::no());
    }
    let valid = |s: &[usize]| is_p_edge_connected_with(g, s, p, opts.rule) && hits_all(s, cycles) && accept(s);
    if x.len() >= 2 && valid(&x) {
        return Ok(SseResult::yes(x, None));
    }
    // sets of two or more vertices first; a single vertex is the fallback
    let starts: Vec<Vec<usize>> = if x.is_empty() {
        (0..g.n()).map(|u| vec![u]).collect()
    } else {
        vec![x.clone()]
    };
    if k >= 2 {
        for start in &starts {
            let order: Vec<usize> = full_order.iter().copied().filter(|v| !start.contains(v)).collect();
            let result = solve_with_terminals(g, start, k, p, &order, cycles, accept, opts, restrict)?;
            if result.is_yes() {
                return Ok(result);
            }
        }
    }
    if k >= 1 && x.len() <= 1 {
        if let Some(single) = starts.into_iter().find(|s| valid(s)) {
            return Ok(SseResult::yes(single, None));
        }
    }
    Ok(SseResult::no())
}

fn hits_all(s: &[usize], cycles: &[Vec<usize>]) -> bool {
    cycles.iter().all(|c| c.iter().any(|v| s.contains(v)))
}

#[allow(clippy::too_many_arguments)]
fn solve_with_terminals(
    g: &Graph,
    x: &[usize],
    k: usize,
    p: usize,
    order: &[usize],
    cycles: &[Vec<usize>],
    accept: &(dyn Fn(&[usize]) -> bool + Sync),
    opts: &SolveOptions,
    restrict: bool,
) -> Result<SseResult> {
    // Work on a subgraph `h` whose vertex `i` is `map[i]` in `g`.
    let (h, map) = if restrict {
        let comp = g
            .components()
            .into_iter()
            .find(|c| c.binary_search(&x[0]).is_ok())
            .expect("terminal belongs to a component");
        if x.iter().any(|v| comp.binary_search(v).is_err()) {
            return Ok(SseResult::no());
        }
        let (cg, cmap) = g.induced_subgraph(&comp);
        let local_x: Vec<usize> = x.iter().map(|v| cmap.binary_search(v).unwrap()).collect();
        let Some(region) = feasible_superset(&cg, &local_x, p, SingletonRule::Strict)? else {
            return Ok(SseResult::no());
        };
        let region: Vec<usize> = region.into_iter().map(|v| cmap[v]).collect();
        if region.len() <= k && hits_all(&region, cycles) && accept(&region) {
            return Ok(SseResult::yes(region, None));
        }
        g.induced_subgraph(&region)
    } else {
        (g.clone(), (0..g.n()).collect())
    };
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        local[v] = i;
    }
    let lx: Vec<usize> = x.iter().map(|&v| local[v]).collect();
    let lorder: Vec<usize> = order.iter().filter(|&&v| local[v] != usize::MAX).map(|&v| local[v]).collect();
    let mut lcycles = Vec::new();
    for c in cycles {
        if c.iter().any(|&v| local[v] == usize::MAX) {
            // a cycle outside the working graph can never be hit
            return Ok(SseResult::no());
        }
        lcycles.push(c.iter().map(|&v| local[v]).collect::<Vec<_>>());
    }
    let field = match opts.field_prime {
        Some(q) => PrimeField::new(q)?,
        None => default_field(&h)?,
    };
    let accept_local = |s: &[usize]| {
        let lifted: Vec<usize> = s.iter().map(|&v| map[v]).collect();
        accept(&lifted)
    };
    for target in x.len().max(2)..=k.min(h.n()) {
        let engine = Engine::new(&h, &lx, &lorder, &lcycles, target, p, field, opts)?;
        let Some(engine) = engine else { continue };
        if let Some((set, size)) = engine.run(Mode::FirstSolution, &accept_local)?.0 {
            let lifted: Vec<usize> = set.into_iter().map(|v| map[v]).collect();
            return Ok(SseResult::yes(lifted, Some(size)));
        }
    }
    Ok(SseResult::no())
}

/// Identifies a group of partial solutions that behave identically for
/// every future step: the number of chosen non-terminals, the position of
/// the last one, the set size, and the chosen vertices that still have a
/// neighbour later in the ordering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SlotKey {
    pub chosen: usize,
    /// 1-based ordering position of the last chosen vertex; 0 before any.
    pub last: usize,
    pub size: usize,
    /// Sorted vertex ids.
    pub frontier: Vec<usize>,
}

/// Every slot of a completed table for one target size.
#[derive(Debug, Clone)]
pub struct DpTable {
    pub ordering: Vec<usize>,
    pub target_rank: usize,
    pub slots: BTreeMap<SlotKey, Vec<Vec<GroundElement>>>,
}

/// Runs the full table (no early exit) for target size `target` along the
/// degeneracy ordering of `G - X`. `x` must be nonempty.
pub fn build_table(g: &Graph, x: &[usize], target: usize, p: usize, opts: &SolveOptions) -> Result<DpTable> {
    let x = normalize_terminals(g, x)?;
    if x.is_empty() || target < 2 || p == 0 {
        return Err(Error::InvalidArgument("table needs terminals, target >= 2 and p >= 1".into()));
    }
    let order = degeneracy_ordering(g, &x).sequence;
    let field = match opts.field_prime {
        Some(q) => PrimeField::new(q)?,
        None => default_field(g)?,
    };
    let Some(engine) = Engine::new(g, &x, &order, &[], target, p, field, opts)? else {
        return Ok(DpTable {
            ordering: order,
            target_rank: 3 * p * (target - 1),
            slots: BTreeMap::new(),
        });
    };
    let slots = engine.run(Mode::Full, &|_| true)?.1;
    let a = engine.arc_count;
    let target_rank = engine.r;
    drop(engine);
    let slots = slots
        .into_iter()
        .map(|(key, members)| {
            let sets = members
                .into_iter()
                .map(|m| m.into_iter().map(|c| GroundElement::new(c as usize / a, c as usize % a)).collect())
                .collect();
            (key, sets)
        })
        .collect();
    Ok(DpTable {
        ordering: order,
        target_rank,
        slots,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    FirstSolution,
    Full,
}

type Member = Vec<u32>;

#[derive(Default)]
struct Family {
    members: Vec<Member>,
    seen: HashSet<Member>,
}

impl Family {
    fn push(&mut self, m: Member) {
        if self.seen.insert(m.clone()) {
            self.members.push(m);
        }
    }
}

struct Engine<'a> {
    g: &'a Graph,
    terminals: &'a [usize],
    is_terminal: Vec<bool>,
    order: &'a [usize],
    /// Largest ordering position among non-terminal neighbours.
    last_neighbor: Vec<usize>,
    digraph: EquivalentDigraph,
    sse: SseMatroid,
    arc_count: usize,
    p: usize,
    r: usize,
    target_chosen: usize,
    field: PrimeField,
    columns: Vec<Vec<u64>>,
    in_arcs: Vec<Vec<usize>>,
    /// `allowed[a][b]`: no cycle lies strictly between positions `a < b`.
    allowed: Vec<Vec<bool>>,
    opts: &'a SolveOptions,
}

impl<'a> Engine<'a> {
    #[allow(clippy::too_many_arguments)]
    fn new(
        g: &'a Graph,
        x: &'a [usize],
        order: &'a [usize],
        cycles: &[Vec<usize>],
        target: usize,
        p: usize,
        field: PrimeField,
        opts: &'a SolveOptions,
    ) -> Result<Option<Self>> {
        let root = x[0];
        let digraph = equivalent_digraph(g, root)?;
        let sse = build_sse_matroid(&digraph, target, p, field, opts.seed)?;
        let r = 3 * p * (target - 1);
        if sse.matroid.rank() < r {
            return Ok(None);
        }
        let n = g.n();
        let mut is_terminal = vec![false; n];
        for &t in x {
            is_terminal[t] = true;
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i + 1;
        }
        let last_neighbor = (0..n)
            .map(|v| g.neighbors(v).iter().map(|&w| pos[w]).max().unwrap_or(0))
            .collect();
        let matrix = sse.matroid.matrix();
        let columns = (0..matrix.cols()).map(|c| matrix.column(c)).collect();
        let mut in_arcs = vec![Vec::new(); n];
        for (a, arc) in digraph.arcs.iter().enumerate() {
            in_arcs[arc.head].push(a);
        }
        let len = order.len();
        let mut ranges = Vec::new();
        for c in cycles {
            if c.iter().any(|&v| is_terminal[v]) {
                continue;
            }
            let lo = c.iter().map(|&v| pos[v]).min().unwrap_or(0);
            let hi = c.iter().map(|&v| pos[v]).max().unwrap_or(0);
            if hi - lo + 1 != c.len() {
                return Err(Error::InvalidArgument("a cycle to hit is not contiguous in the ordering".into()));
            }
            ranges.push((lo, hi));
        }
        // position len + 1 stands for "after the end"
        let allowed = (0..=len + 1)
            .map(|a| {
                (0..=len + 1)
                    .map(|b| a < b && !ranges.iter().any(|&(lo, hi)| a < lo && hi < b))
                    .collect()
            })
            .collect();
        Ok(Some(Engine {
            g,
            terminals: x,
            is_terminal,
            order,
            last_neighbor,
            arc_count: digraph.arcs.len(),
            digraph,
            sse,
            p,
            r,
            target_chosen: target - x.len(),
            field,
            columns,
            in_arcs,
            allowed,
            opts,
        }))
    }

    fn col(&self, layer: usize, arc: usize) -> u32 {
        (layer * self.arc_count + arc) as u32
    }

    fn triple(&self, arc: usize, branch: usize) -> [u32; 3] {
        let t = self.sse.triple(arc, branch);
        t.elements.map(|e| self.sse.column_index(e) as u32)
    }

    /// Every branching has an arc into `w`.
    fn covered(&self, member: &[u32], w: usize) -> bool {
        (0..self.p).all(|h| {
            self.in_arcs[w]
                .iter()
                .any(|&a| member.binary_search(&self.col(2 * h + 1, a)).is_ok())
        })
    }

    fn basis_of(&self, member: &[u32]) -> IncrementalBasis {
        let mut basis = IncrementalBasis::new(self.r, self.field);
        for &c in member {
            let added = basis.insert(&self.columns[c as usize]);
            debug_assert!(added, "stored sets are independent");
        }
        basis
    }

    /// Extends `member` by every assignment of the candidate arcs to a
    /// branching or to nothing, keeping independence and the size budget.
    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        arcs: &[usize],
        idx: usize,
        basis: &IncrementalBasis,
        member: &[u32],
        used: &mut Vec<u32>,
        budget: usize,
        emit: &mut dyn FnMut(&[u32]),
    ) {
        if idx == arcs.len() {
            emit(used);
            return;
        }
        self.assign(arcs, idx + 1, basis, member, used, budget, emit);
        if budget < 3 {
            return;
        }
        for h in 0..self.p {
            let cols = self.triple(arcs[idx], h);
            if cols.iter().any(|c| member.binary_search(c).is_ok() || used.contains(c)) {
                continue;
            }
            let mut next = basis.clone();
            if cols.iter().all(|&c| next.insert(&self.columns[c as usize])) {
                used.extend_from_slice(&cols);
                self.assign(arcs, idx + 1, &next, member, used, budget - 3, emit);
                used.truncate(used.len() - 3);
            }
        }
    }

    fn merged(member: &[u32], used: &[u32]) -> Member {
        let mut out: Member = member.iter().chain(used).copied().collect();
        out.sort_unstable();
        out
    }

    fn base_family(&self) -> BTreeMap<SlotKey, Family> {
        let mut arcs = Vec::new();
        for (a, arc) in self.digraph.arcs.iter().enumerate() {
            if self.is_terminal[arc.tail] && self.is_terminal[arc.head] {
                arcs.push(a);
            }
        }
        let mut slots: BTreeMap<SlotKey, Family> = BTreeMap::new();
        let basis = IncrementalBasis::new(self.r, self.field);
        let budget = self.r - 3 * self.p * self.target_chosen;
        let mut used = Vec::new();
        self.assign(&arcs, 0, &basis, &[], &mut used, budget, &mut |extra| {
            let m = Self::merged(&[], extra);
            let key = SlotKey {
                chosen: 0,
                last: 0,
                size: m.len(),
                frontier: Vec::new(),
            };
            slots.entry(key).or_default().push(m);
        });
        slots
    }

    fn reduce(&self, key: &SlotKey, family: Family) -> Vec<Member> {
        let members = family.members;
        let dimension = binomial(self.r, key.size);
        if members.len() <= dimension || dimension > self.opts.reduce_cap {
            return members;
        }
        let as_indices: Vec<Vec<usize>> = members
            .iter()
            .map(|m| m.iter().map(|&c| c as usize).collect())
            .collect();
        let keep = representative_indices(&self.field, self.sse.matroid.matrix(), &as_indices, key.size);
        let mut members = members;
        let mut kept = Vec::with_capacity(keep.len());
        for i in keep.into_iter().rev() {
            kept.push(std::mem::take(&mut members[i]));
        }
        kept.reverse();
        kept
    }

    fn is_final(&self, key: &SlotKey) -> bool {
        key.chosen == self.target_chosen && key.size == self.r && self.allowed[key.last][self.order.len() + 1]
    }

    /// Vertex set spanned by a final member together with the terminals.
    fn vertices_of(&self, member: &[u32]) -> Vec<usize> {
        let mut vs: Vec<usize> = self.terminals.to_vec();
        for &c in member {
            let arc = self.digraph.arcs[c as usize % self.arc_count];
            vs.push(arc.tail);
            vs.push(arc.head);
        }
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    #[allow(clippy::type_complexity)]
    fn run(
        &self,
        mode: Mode,
        accept: &dyn Fn(&[usize]) -> bool,
    ) -> Result<(Option<(Vec<usize>, usize)>, BTreeMap<SlotKey, Vec<Member>>)> {
        let len = self.order.len();
        // pending[j]: slots whose last chosen position is j
        let mut pending: Vec<BTreeMap<SlotKey, Family>> = (0..=len).map(|_| BTreeMap::new()).collect();
        pending[0] = self.base_family();
        let mut done: BTreeMap<SlotKey, Vec<Member>> = BTreeMap::new();
        for j in 0..=len {
            let slots = std::mem::take(&mut pending[j]);
            let mut finished = Vec::with_capacity(slots.len());
            for (key, family) in slots {
                let members = self.reduce(&key, family);
                if self.is_final(&key) {
                    for m in &members {
                        let vs = self.vertices_of(m);
                        if vs.len() == self.terminals.len() + self.target_chosen
                            && is_p_edge_connected_with(self.g, &vs, self.p, self.opts.rule)
                            && accept(&vs)
                        {
                            if mode == Mode::FirstSolution {
                                return Ok((Some((vs, m.len())), BTreeMap::new()));
                            }
                            break;
                        }
                    }
                }
                finished.push((key, members));
            }
            for (key, members) in &finished {
                if key.chosen < self.target_chosen {
                    for m in members {
                        self.advance(key, m, &mut pending)?;
                    }
                }
            }
            if mode == Mode::Full {
                done.extend(finished);
            }
        }
        Ok((None, done))
    }

    /// All extensions of `member` (in slot `key`) by one more chosen vertex.
    fn advance(&self, key: &SlotKey, member: &[u32], pending: &mut [BTreeMap<SlotKey, Family>]) -> Result<()> {
        let len = self.order.len();
        let mut basis: Option<IncrementalBasis> = None;
        let remaining_after = self.target_chosen - key.chosen - 1;
        let budget = self.r - key.size;
        if budget < 3 * self.p * (remaining_after + 1) {
            return Ok(());
        }
        for t in key.last + 1..=len {
            if !self.allowed[key.last][t] {
                // every later target skips the same cycle
                break;
            }
            let v = self.order[t - 1];
            // frontier vertices whose last neighbour precedes t are final
            if key
                .frontier
                .iter()
                .any(|&u| self.last_neighbor[u] < t && !self.covered(member, u))
            {
                // positions only grow, so this stays violated
                break;
            }
            let live: Vec<usize> = key.frontier.iter().copied().filter(|&u| self.last_neighbor[u] >= t).collect();
            let mut arcs = Vec::new();
            for &w in self.g.neighbors(v) {
                if self.is_terminal[w] || live.binary_search(&w).is_ok() {
                    arcs.push(self.digraph.arc_id(v, w).expect("edge exists"));
                    arcs.push(self.digraph.arc_id(w, v).expect("edge exists"));
                }
            }
            if arcs.len() > self.opts.arc_cap {
                return Err(Error::CapExceeded(format!(
                    "{} candidate arcs at vertex {v} exceed the arc cap {}",
                    arcs.len(),
                    self.opts.arc_cap
                )));
            }
            // v needs an in-arc per branching from somewhere
            if arcs.is_empty() && self.last_neighbor[v] <= t {
                continue;
            }
            let mut frontier: Vec<usize> = live.iter().copied().filter(|&u| self.last_neighbor[u] > t).collect();
            let mut leaving: Vec<usize> = live.iter().copied().filter(|&u| self.last_neighbor[u] <= t).collect();
            if self.last_neighbor[v] > t {
                let at = frontier.binary_search(&v).unwrap_err();
                frontier.insert(at, v);
            } else {
                leaving.push(v);
            }
            let basis = basis.get_or_insert_with(|| self.basis_of(member));
            let max_add = budget - 3 * self.p * remaining_after;
            let exact = remaining_after == 0;
            let mut used = Vec::new();
            let slot_map = &mut pending[t];
            self.assign(&arcs, 0, basis, member, &mut used, max_add, &mut |extra| {
                if exact && extra.len() != max_add {
                    return;
                }
                let m = Self::merged(member, extra);
                if leaving.iter().any(|&u| !self.covered(&m, u)) {
                    return;
                }
                let next = SlotKey {
                    chosen: key.chosen + 1,
                    last: t,
                    size: m.len(),
                    frontier: frontier.clone(),
                };
                slot_map.entry(next).or_default().push(m);
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, path};

    fn solve(g: &Graph, x: &[usize], k: usize, p: usize) -> SseResult {
        solve_extension(g, x, k, p, &SolveOptions::default()).unwrap()
    }

    #[test]
    fn back_neighbors() {
        let g = path(3);
        assert_eq!(back_neighbor_sets(&g, &[], &[0, 1, 2]), vec![vec![], vec![0], vec![1]]);
        let c4 = cycle(4).unwrap();
        let sets = back_neighbor_sets(&c4, &[], &[0, 1, 2, 3]);
        assert_eq!(sets[3].len(), 2);
    }

    #[test]
    fn triangle_two_connected() {
        let r = solve(&complete(3), &[0], 3, 2);
        assert_eq!(r.solution, Some(vec![0, 1, 2]));
    }

    #[test]
    fn five_cycle_needs_everything() {
        let c5 = cycle(5).unwrap();
        assert!(!solve(&c5, &[0, 2], 4, 2).is_yes());
        assert_eq!(solve(&c5, &[0, 2], 5, 2).solution, Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn k4_minus_edge_not_three_connected() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let strict = SolveOptions {
            rule: SingletonRule::Strict,
            ..SolveOptions::default()
        };
        assert!(!solve_extension(&g, &[], 4, 3, &strict).unwrap().is_yes());
        assert!(solve_extension(&g, &[], 4, 2, &strict).unwrap().is_yes());
        assert_eq!(solve_extension(&g, &[], 3, 2, &strict).unwrap().solution.unwrap().len(), 3);
        // one vertex alone counts under the lenient rule
        assert_eq!(solve(&g, &[], 4, 3).solution, Some(vec![0]));
    }

    #[test]
    fn table_search_without_shortcuts() {
        // the region shortcut would answer directly; run the table instead
        let g = complete(4);
        let opts = SolveOptions::default();
        let field = default_field(&g).unwrap();
        let order = degeneracy_ordering(&g, &[0]).sequence;
        let engine = Engine::new(&g, &[0], &order, &[], 4, 3, field, &opts).unwrap().unwrap();
        let (found, _) = engine.run(Mode::FirstSolution, &|_| true).unwrap();
        assert_eq!(found.unwrap().0, vec![0, 1, 2, 3]);
        let engine = Engine::new(&g, &[0], &order, &[], 3, 2, field, &opts).unwrap().unwrap();
        let (found, _) = engine.run(Mode::FirstSolution, &|_| true).unwrap();
        assert_eq!(found.unwrap().0.len(), 3);
    }

    #[test]
    fn chosen_vertex_without_back_arcs() {
        // C_4 with terminal 0: the vertex opposite 0 may come first in the
        // ordering and only receives arcs later
        let g = cycle(4).unwrap();
        let opts = SolveOptions::default();
        let field = default_field(&g).unwrap();
        let order = vec![2, 1, 3];
        let engine = Engine::new(&g, &[0], &order, &[], 4, 2, field, &opts).unwrap().unwrap();
        let (found, _) = engine.run(Mode::FirstSolution, &|_| true).unwrap();
        assert_eq!(found.unwrap().0, vec![0, 1, 2, 3]);
    }

    #[test]
    fn table_sets_are_consistent() {
        let g = complete(4);
        let table = build_table(&g, &[0], 3, 1, &SolveOptions::default()).unwrap();
        assert!(!table.slots.is_empty());
        for (key, sets) in &table.slots {
            for set in sets {
                assert_eq!(set.len(), key.size);
                // no arc carries two branchings
                let mut arcs: Vec<usize> = set.iter().filter(|e| e.layer == 2).map(|e| e.element).collect();
                let before = arcs.len();
                arcs.dedup();
                assert_eq!(arcs.len(), before);
            }
        }
    }

    #[test]
    fn ordering_must_cover_non_terminals() {
        let g = path(3);
        let bad = Ordering {
            sequence: vec![1],
            claimed_degeneracy: 1,
        };
        assert!(solve_extension_with_ordering(&g, &[0], 3, 1, &bad, &SolveOptions::default()).is_err());
        let good = Ordering {
            sequence: vec![2, 1],
            claimed_degeneracy: 1,
        };
        let r = solve_extension_with_ordering(&g, &[0], 3, 1, &good, &SolveOptions::default()).unwrap();
        assert!(r.is_yes());
    }
}

//! Pathwidth at most one: forests of caterpillars.
//!
//! A graph without a triangle, a 4-cycle or the spider `T2` (a centre with
//! three legs of two edges) has only caterpillar components and components
//! made of one long cycle with pendant vertices. Deleting `X'` that hits
//! every such subgraph leaves exactly this shape, and the rest of a
//! solution only has to meet every remaining cycle.

use serde::{Deserialize, Serialize};

use super::{enumerate_minimal_hitting_sets, extend_first, Obstruction, ObstructionKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sse::{solve_extension, solve_guarded, SolveOptions, SseResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentShape {
    Caterpillar,
    CycleWithHairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pw1Component {
    pub shape: ComponentShape,
    /// Spine path or cycle, in walking order.
    pub core: Vec<usize>,
    /// Pendant vertices, sorted.
    pub hairs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pw1Structure {
    pub components: Vec<Pw1Component>,
    /// Each component's core followed by its hairs; every vertex has at most
    /// two earlier neighbours.
    pub ordering: Vec<usize>,
}

fn find_triangle(g: &Graph) -> Option<Obstruction> {
    g.edges().iter().find_map(|&(u, v)| {
        g.neighbors(u)
            .iter()
            .find(|&&w| w > v && g.has_edge(v, w))
            .map(|&w| Obstruction::new(vec![u, v, w], ObstructionKind::C3))
    })
}

fn find_four_cycle(g: &Graph) -> Option<Obstruction> {
    for u in 0..g.n() {
        let nb = g.neighbors(u);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                let across = g.neighbors(a).iter().find(|&&w| w != u && w != b && g.has_edge(w, b));
                if let Some(&w) = across {
                    return Some(Obstruction::new(vec![u, a, w, b], ObstructionKind::C4));
                }
            }
        }
    }
    None
}

/// A centre, three of its neighbours, and a further distinct neighbour of
/// each.
fn find_spider(g: &Graph) -> Option<Obstruction> {
    fn legs(g: &Graph, centre: usize, arms: &[usize], used: &mut Vec<usize>) -> bool {
        let i = used.len() - 1 - arms.len();
        if i == arms.len() {
            return true;
        }
        for &b in g.neighbors(arms[i]) {
            if b != centre && !arms.contains(&b) && !used.contains(&b) {
                used.push(b);
                if legs(g, centre, arms, used) {
                    return true;
                }
                used.pop();
            }
        }
        false
    }
    for c in 0..g.n() {
        let nb: Vec<usize> = g.neighbors(c).iter().copied().filter(|&a| g.degree(a) >= 2).collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                for l in j + 1..nb.len() {
                    let arms = [nb[i], nb[j], nb[l]];
                    let mut used = vec![c, arms[0], arms[1], arms[2]];
                    if legs(g, c, &arms, &mut used) {
                        return Some(Obstruction::new(used, ObstructionKind::T2));
                    }
                }
            }
        }
    }
    None
}

/// Some triangle, 4-cycle or `T2` subgraph, looked for in that order.
pub fn find_obstruction_t2c3c4(g: &Graph) -> Option<Obstruction> {
    find_triangle(g).or_else(|| find_four_cycle(g)).or_else(|| find_spider(g))
}

/// Forest without a `T2` subgraph.
pub fn is_pathwidth_le1(g: &Graph) -> bool {
    g.m() + g.components().len() == g.n() && find_spider(g).is_none()
}

/// Splits every component into its core and hairs and lists them in a
/// 2-degenerate order. Fails when a triangle, 4-cycle or `T2` is present.
pub fn pw1_structure(g: &Graph) -> Result<Pw1Structure> {
    if let Some(obs) = find_obstruction_t2c3c4(g) {
        return Err(Error::ObstructionPresent(format!("{:?} on vertices {:?}", obs.kind, obs.vertices)));
    }
    let mut components = Vec::new();
    let mut ordering = Vec::with_capacity(g.n());
    for comp in g.components() {
        let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        let component = if edges + 1 == comp.len() {
            caterpillar(g, &comp)?
        } else if edges == comp.len() {
            cycle_with_hairs(g, &comp)?
        } else {
            return Err(Error::InvalidGraph(format!("component {comp:?} has more than one cycle")));
        };
        ordering.extend_from_slice(&component.core);
        ordering.extend_from_slice(&component.hairs);
        components.push(component);
    }
    Ok(Pw1Structure { components, ordering })
}

/// Walks a path or cycle inside `members` starting from `start`.
fn walk(g: &Graph, members: &[usize], start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w != prev && members.binary_search(&w).is_ok() && !order.contains(&w));
        match next {
            Some(w) => {
                order.push(w);
                prev = cur;
                cur = w;
            }
            None => return order,
        }
    }
}

fn caterpillar(g: &Graph, comp: &[usize]) -> Result<Pw1Component> {
    let spine: Vec<usize> = comp.iter().copied().filter(|&v| g.degree(v) >= 2).collect();
    let (core, hairs) = if spine.is_empty() {
        (walk(g, comp, comp[0]), Vec::new())
    } else {
        let end = spine
            .iter()
            .copied()
            .find(|&v| g.neighbors(v).iter().filter(|w| spine.binary_search(w).is_ok()).count() <= 1)
            .unwrap_or(spine[0]);
        let core = walk(g, &spine, end);
        if core.len() != spine.len() {
            return Err(Error::InvalidGraph(format!("tree component {comp:?} is not a caterpillar")));
        }
        let hairs = comp.iter().copied().filter(|v| spine.binary_search(v).is_err()).collect();
        (core, hairs)
    };
    Ok(Pw1Component {
        shape: ComponentShape::Caterpillar,
        core,
        hairs,
    })
}

fn cycle_with_hairs(g: &Graph, comp: &[usize]) -> Result<Pw1Component> {
    // peel degree-one vertices until only the cycle remains
    let mut degree: Vec<usize> = comp.iter().map(|&v| g.degree(v)).collect();
    let idx = |v: usize| comp.binary_search(&v).unwrap();
    let mut alive = vec![true; comp.len()];
    let mut stack: Vec<usize> = (0..comp.len()).filter(|&i| degree[i] == 1).collect();
    while let Some(i) = stack.pop() {
        if !alive[i] {
            continue;
        }
        alive[i] = false;
        for &w in g.neighbors(comp[i]) {
            let j = idx(w);
            if alive[j] {
                degree[j] -= 1;
                if degree[j] == 1 {
                    stack.push(j);
                }
            }
        }
    }
    let ring: Vec<usize> = (0..comp.len()).filter(|&i| alive[i]).map(|i| comp[i]).collect();
    let hairs: Vec<usize> = (0..comp.len()).filter(|&i| !alive[i]).map(|i| comp[i]).collect();
    let pendant = hairs
        .iter()
        .all(|&h| g.degree(h) == 1 && ring.binary_search(&g.neighbors(h)[0]).is_ok());
    if !pendant {
        return Err(Error::InvalidGraph(format!(
            "component {comp:?} is a cycle with trees longer than one edge attached"
        )));
    }
    Ok(Pw1Component {
        shape: ComponentShape::CycleWithHairs,
        core: walk(g, &ring, ring[0]),
        hairs,
    })
}

/// Deletes a p-edge-connected set of at most `k` vertices leaving a graph
/// of pathwidth at most one.
pub fn solve_pw1ds(g: &Graph, k: usize, p: usize, opts: &SolveOptions) -> Result<SseResult> {
    if is_pathwidth_le1(g) {
        return Ok(SseResult::yes(Vec::new(), None));
    }
    let candidates = enumerate_minimal_hitting_sets(g, k, &|h: &Graph| Ok(find_obstruction_t2c3c4(h)))?;
    let accept = |s: &[usize]| is_pathwidth_le1(&g.without(s).0);
    let extend = |x: &[usize]| -> Result<SseResult> {
        let (rest, map) = g.without(x);
        let shape = pw1_structure(&rest)?;
        let cycles: Vec<Vec<usize>> = shape
            .components
            .iter()
            .filter(|c| c.shape == ComponentShape::CycleWithHairs)
            .map(|c| c.core.iter().map(|&v| map[v]).collect())
            .collect();
        if cycles.is_empty() {
            return solve_extension(g, x, k, p, opts);
        }
        let ordering = crate::graph::Ordering {
            sequence: shape.ordering.iter().map(|&v| map[v]).collect(),
            claimed_degeneracy: 2,
        };
        solve_guarded(g, x, k, p, Some(&ordering), &cycles, &accept, opts, false)
    };
    // the empty set is only a candidate here, not an answer: cycles may remain
    let nonempty_first: Vec<Vec<usize>> = candidates.into_iter().filter(|c| !c.is_empty()).collect();
    let mut result = extend_first(&nonempty_first, &extend)?;
    if !result.is_yes() && g.n() > 0 && find_obstruction_t2c3c4(g).is_none() {
        result = extend(&[])?;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{caterpillar as make_caterpillar, complete, cycle, cycle_with_hairs as make_hairy, path, spider_t2};
    use crate::oracle::{masks_of, vertex_separation};

    #[test]
    fn obstruction_examples() {
        let c4 = find_obstruction_t2c3c4(&cycle(4).unwrap()).unwrap();
        assert_eq!((c4.kind, c4.vertices), (ObstructionKind::C4, vec![0, 1, 2, 3]));
        let t2 = find_obstruction_t2c3c4(&spider_t2()).unwrap();
        assert_eq!((t2.kind, t2.vertices.len()), (ObstructionKind::T2, 7));
        assert!(find_obstruction_t2c3c4(&path(6)).is_none());
        assert_eq!(find_obstruction_t2c3c4(&complete(3)).unwrap().kind, ObstructionKind::C3);
    }

    #[test]
    fn pathwidth_one_examples() {
        assert!(is_pathwidth_le1(&make_caterpillar(4, 2)));
        assert!(!is_pathwidth_le1(&complete(3)));
        assert!(!is_pathwidth_le1(&spider_t2()));
        assert!(is_pathwidth_le1(&Graph::empty(3)));
    }

    #[test]
    fn structure_examples() {
        let g = make_hairy(5, 1).unwrap();
        let s = pw1_structure(&g).unwrap();
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].shape, ComponentShape::CycleWithHairs);
        assert_eq!(s.components[0].core.len(), 5);
        let cat = pw1_structure(&make_caterpillar(3, 2)).unwrap();
        assert_eq!(cat.components[0].shape, ComponentShape::Caterpillar);
        assert_eq!(cat.components[0].core.len(), 3);
        assert!(matches!(pw1_structure(&cycle(4).unwrap()), Err(Error::ObstructionPresent(_))));
    }

    #[test]
    fn alternate_hairs_order_is_two_degenerate() {
        let mut g = cycle(6).unwrap();
        let mut h = Graph::empty(9);
        for &(u, v) in g.edges() {
            h.add_edge(u, v).unwrap();
        }
        for (i, c) in [0, 2, 4].into_iter().enumerate() {
            h.add_edge(c, 6 + i).unwrap();
        }
        g = h;
        let s = pw1_structure(&g).unwrap();
        let back = g.back_degrees(&s.ordering);
        assert!(back.iter().all(|&b| b <= 2));
        assert_eq!(back.iter().filter(|&&b| b == 2).count(), 1);
    }

    #[test]
    fn agrees_with_vertex_separation() {
        for seed in 0..40 {
            let g = crate::generate::random_degenerate(7, 1 + (seed % 2) as usize, seed).unwrap();
            assert_eq!(is_pathwidth_le1(&g), vertex_separation(&masks_of(&g)) <= 1, "seed {seed}");
        }
    }

    #[test]
    fn pw1ds_examples() {
        let opts = SolveOptions::default();
        let mut g = complete(3);
        let mut h = Graph::empty(6);
        for &(u, v) in g.edges() {
            h.add_edge(u, v).unwrap();
        }
        for v in 0..3 {
            h.add_edge(v, v + 3).unwrap();
        }
        g = h;
        let r = solve_pw1ds(&g, 1, 1, &opts).unwrap();
        assert!(r.solution.as_ref().is_some_and(|s| s.len() == 1 && s[0] < 3));
        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!solve_pw1ds(&two, 3, 2, &opts).unwrap().is_yes());
        assert_eq!(solve_pw1ds(&path(5), 0, 2, &opts).unwrap().solution, Some(vec![]));
        let c6 = cycle(6).unwrap();
        assert_eq!(solve_pw1ds(&c6, 1, 1, &opts).unwrap().solution.map(|s| s.len()), Some(1));
        let strict = SolveOptions {
            rule: crate::connectivity::SingletonRule::Strict,
            ..SolveOptions::default()
        };
        assert!(!solve_pw1ds(&c6, 5, 2, &strict).unwrap().is_yes());
        assert_eq!(solve_pw1ds(&c6, 6, 2, &strict).unwrap().solution.map(|s| s.len()), Some(6));
    }
}

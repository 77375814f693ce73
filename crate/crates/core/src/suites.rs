//! Seeded self-check suites comparing the solvers with the exhaustive
//! oracles. Reports carry no timing so reruns compare byte for byte.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::connectivity::{is_p_edge_connected_with, min_cut_value, SingletonRule};
use crate::deletion::{enumerate_minimal_hitting_sets, find_obstruction_t2c3c4, pw1_structure};
use crate::error::{Error, Result};
use crate::field::{Matrix, PrimeField};
use crate::generate::random_degenerate;
use crate::graph::{
    cutwidth_of_layout, equivalent_digraph, ordering_from_cutwidth_layout, ordering_from_tree_decomposition, Graph,
    TreeDecomposition,
};
use crate::matroid::{graphic_representation, out_partition_representation, GroundElement, LinearMatroid};
use crate::oracle::{
    brute_repfam_check, edge_connected_by_deletion, edge_connected_by_flow, is_out_branching, packs_out_branchings,
};
use crate::problem::Problem;
use crate::repfam::{binomial, reduce_family, SetFamily};
use crate::sse::{solve_extension, SolveOptions};
use crate::verify::verify_solution;

pub const SUITE_NAMES: &[&str] = &[
    "sse", "repfam", "matroid", "menger", "bdds", "pw1ds", "tdds", "pvc", "scattered", "ordering", "structure",
];

const MAX_EXAMPLES: usize = 10;
const SUITE_PRIME: u64 = 1_000_003;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: usize,
    /// Named counters, e.g. how many cases were yes-instances.
    pub counts: BTreeMap<String, usize>,
    /// The first few failures, described.
    pub examples: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str, seed: u64) -> Self {
        SuiteReport {
            name: name.to_string(),
            seed,
            cases: 0,
            failures: 0,
            counts: BTreeMap::new(),
            examples: Vec::new(),
        }
    }

    fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(what);
        }
    }

    fn bump(&mut self, key: &str) {
        *self.counts.entry(key.to_string()).or_insert(0) += 1;
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("suite reports serialise")
    }
}

fn case_rng(seed: u64, salt: u64, case: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt.wrapping_add(case as u64).rotate_left(17))
}

/// Erdős–Rényi graph with edge probability `percent / 100`.
fn random_graph(n: usize, percent: u32, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_range(0..100) < percent {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

/// Runs a suite by name with its acceptance-sized defaults.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "sse" => sse_suite(seed, 200),
        "repfam" => repfam_suite(seed, 50),
        "matroid" => matroid_suite(seed, 120, 500),
        "menger" => menger_suite(seed, 100),
        "bdds" | "pw1ds" | "tdds" | "pvc" | "scattered" => deletion_suite(name, seed, 100),
        "ordering" => ordering_suite(seed, 50),
        "structure" => structure_suite(seed, 100),
        other => Err(Error::InvalidArgument(format!(
            "unknown suite `{other}`; expected one of {}",
            SUITE_NAMES.join(", ")
        ))),
    }
}

/// Random extension instances on graphs of low degeneracy, solved and
/// compared with the exhaustive search; yes-witnesses are re-verified.
pub fn sse_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let outcomes: Vec<Result<(bool, Vec<String>)>> = (0..cases).into_par_iter().map(|case| sse_case(seed, case)).collect();
    let mut report = SuiteReport::new("sse", seed);
    for outcome in outcomes {
        let (yes, failures) = outcome?;
        report.cases += 1;
        if yes {
            report.bump("yes");
        }
        for f in failures {
            report.fail(f);
        }
    }
    Ok(report)
}

fn sse_case(seed: u64, case: usize) -> Result<(bool, Vec<String>)> {
    let mut rng = case_rng(seed, 1, case);
    let n = rng.gen_range(2..=10);
    let eta = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=5);
    let p = rng.gen_range(1..=3);
    let g = random_degenerate(n, eta, rng.gen())?;
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.shuffle(&mut rng);
    let mut x: Vec<usize> = vertices[..rng.gen_range(0..=3.min(n))].to_vec();
    x.sort_unstable();
    let opts = SolveOptions {
        seed: rng.gen(),
        ..SolveOptions::default()
    };
    let got = solve_extension(&g, &x, k, p, &opts)?;
    let want = Problem::Sse.brute(&g, &x, k, p, &opts)?;
    let label = format!("case {case}: n={n} k={k} p={p} x={x:?} edges={:?}", g.edges());
    if got.is_yes() != want.is_yes() {
        let msg = format!("{label}: solver {:?}, oracle {:?}", got.solution, want.solution);
        return Ok((false, vec![msg]));
    }
    let mut failures = Vec::new();
    if let Some(s) = &got.solution {
        if let Err(v) = verify_solution(&g, &Problem::Sse, &x, k, p, opts.rule, s)? {
            failures.push(format!("{label}: witness {s:?} rejected: {v}"));
        }
    }
    Ok((got.is_yes(), failures))
}

/// Random matrices with many zero entries (so that the matroids have
/// structure), random families and budgets; every reduction is checked
/// against the definition.
pub fn repfam_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("repfam", seed);
    let field = PrimeField::new(SUITE_PRIME)?;
    for case in 0..cases {
        let mut rng = case_rng(seed, 2, case);
        let (m, ground) = loop {
            let rows = rng.gen_range(2..=8);
            let cols = rng.gen_range(rows..=rows + 4);
            let mut matrix = Matrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_bool(0.5) {
                        matrix.set(r, c, rng.gen_range(1..=3));
                    }
                }
            }
            let elements: Vec<GroundElement> = (0..cols).map(|c| GroundElement::new(0, c)).collect();
            let m = LinearMatroid::from_matrix(field, matrix, elements.clone())?;
            if m.rank() >= 1 {
                break (m, elements);
            }
        };
        let s = rng.gen_range(1..=m.rank().min(4));
        let q = rng.gen_range(0..=(m.rank() - s).min(4));
        let members = rng.gen_range(1..=20);
        let mut sets = Vec::new();
        for _ in 0..members {
            let mut pick: Vec<GroundElement> = ground.choose_multiple(&mut rng, s).copied().collect();
            pick.sort();
            if !sets.contains(&pick) {
                sets.push(pick);
            }
        }
        let fam = SetFamily::new(s, sets)?;
        let reduced = reduce_family(&m, &fam, q)?;
        report.cases += 1;
        let label = format!("case {case}: rank={} s={s} q={q} |fam|={}", m.rank(), fam.len());
        if reduced.len() > binomial(s + q, q) {
            report.fail(format!("{label}: kept {} > C(s+q, q)", reduced.len()));
        }
        if !brute_repfam_check(&m, &fam, &reduced, q)? {
            report.fail(format!("{label}: kept subfamily does not represent"));
        }
    }
    Ok(report)
}

fn connected_corpus(seed: u64, graphs: usize, max_n: usize) -> Vec<Graph> {
    let mut out = Vec::with_capacity(graphs);
    let mut attempt = 0;
    while out.len() < graphs {
        let mut rng = case_rng(seed, 3, attempt);
        attempt += 1;
        let n = rng.gen_range(2..=max_n);
        let percent = rng.gen_range(30..=100);
        let g = random_graph(n, percent, &mut rng);
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// p-edge-connectivity against packings of arc-disjoint out-branchings,
/// and out-branchings against common independent sets of the graphic and
/// out-partition matroids.
pub fn matroid_suite(seed: u64, graphs: usize, arc_sets: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("matroid", seed);
    let corpus = connected_corpus(seed, graphs, 6);
    for (i, g) in corpus.iter().enumerate() {
        let all: Vec<usize> = (0..g.n()).collect();
        for p in 1..=3 {
            let connected = is_p_edge_connected_with(g, &all, p, SingletonRule::Strict);
            let packs = packs_out_branchings(g, 0, p);
            report.cases += 1;
            if connected {
                report.bump("connected");
            }
            if connected != packs {
                report.fail(format!("graph {i} {:?}, p={p}: connected {connected}, packing {packs}", g.edges()));
            }
        }
    }
    let field = PrimeField::new(SUITE_PRIME)?;
    for j in 0..arc_sets {
        let mut rng = case_rng(seed, 4, j);
        let g = &corpus[j % corpus.len()];
        let n = g.n();
        let d = equivalent_digraph(g, 0)?;
        let arcs: Vec<usize> = match j % 3 {
            // one random in-arc per non-root vertex
            0 => (1..n)
                .map(|v| {
                    let u = *g.neighbors(v).choose(&mut rng).expect("connected");
                    d.arc_id(u, v).expect("edge present")
                })
                .collect(),
            1 => (0..d.arcs.len()).collect::<Vec<_>>().choose_multiple(&mut rng, (n - 1).min(d.arcs.len())).copied().collect(),
            _ => {
                let size = rng.gen_range(0..=d.arcs.len());
                (0..d.arcs.len()).collect::<Vec<_>>().choose_multiple(&mut rng, size).copied().collect()
            }
        };
        let elements: Vec<GroundElement> = arcs.iter().map(|&a| GroundElement::new(0, a)).collect();
        let graphic = graphic_representation(&d, field);
        let partition = out_partition_representation(&d, field);
        let by_matroids =
            arcs.len() + 1 == n && graphic.is_independent(&elements)? && partition.is_independent(&elements)?;
        let pairs: Vec<(usize, usize)> = arcs.iter().map(|&a| (d.arcs[a].tail, d.arcs[a].head)).collect();
        let by_definition = is_out_branching(n, &pairs, 0);
        report.cases += 1;
        if by_definition {
            report.bump("branchings");
        }
        if by_matroids != by_definition {
            report.fail(format!("arc set {j} {pairs:?}: matroids {by_matroids}, definition {by_definition}"));
        }
    }
    Ok(report)
}

/// Edge connectivity from minimum cuts against the smallest disconnecting
/// edge set; the oracle's own max-flow is cross-checked up to 7 vertices.
pub fn menger_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("menger", seed);
    for case in 0..cases {
        let mut rng = case_rng(seed, 5, case);
        let n = rng.gen_range(2..=8);
        let percent = rng.gen_range(20..=100);
        let g = random_graph(n, percent, &mut rng);
        let all: Vec<usize> = (0..n).collect();
        let mut by_flow = usize::MAX;
        for v in 1..n {
            by_flow = by_flow.min(min_cut_value(&g, 0, v)?);
        }
        let by_deletion = (1..n).take_while(|&p| edge_connected_by_deletion(&g, &all, p)).count();
        report.cases += 1;
        if by_flow != by_deletion {
            report.fail(format!("case {case} {:?}: flow {by_flow}, deletion {by_deletion}", g.edges()));
        }
        if n <= 7 {
            let oracle_flow = (1..n).take_while(|&p| edge_connected_by_flow(&g, &all, p)).count();
            if oracle_flow != by_deletion {
                report.fail(format!("case {case}: oracle flow {oracle_flow}, deletion {by_deletion}"));
            }
        }
        *report.counts.entry(format!("lambda_{by_deletion}")).or_insert(0) += 1;
    }
    Ok(report)
}

/// The seeded deletion instance `case` of a suite.
pub fn deletion_instance(problem: &str, seed: u64, case: usize) -> Result<(Graph, Problem, usize, usize)> {
    let mut rng = case_rng(seed, 6, case);
    let n = rng.gen_range(3..=10);
    let eta = rng.gen_range(1..=3);
    let k = rng.gen_range(0..=4);
    let p = rng.gen_range(1..=2);
    let g = random_degenerate(n, eta, rng.gen())?;
    let problem = match problem {
        "bdds" => Problem::Bdds {
            eta: rng.gen_range(0..=3),
        },
        "pw1ds" => Problem::Pw1ds,
        "tdds" => Problem::Tdds {
            eta: rng.gen_range(1..=2),
        },
        "pvc" => Problem::Pvc {
            eta: rng.gen_range(2..=5),
        },
        "scattered" => {
            let beta = rng.gen_range(3..=5);
            Problem::Scattered {
                alpha: rng.gen_range(1..=3),
                beta,
                lambda: beta,
            }
        }
        other => return Err(Error::InvalidArgument(format!("unknown deletion problem `{other}`"))),
    };
    Ok((g, problem, k, p))
}

pub fn deletion_suite(name: &str, seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(name, seed);
    for case in 0..cases {
        let (g, problem, k, p) = deletion_instance(name, seed, case)?;
        let opts = SolveOptions {
            seed: seed.wrapping_add(case as u64),
            ..SolveOptions::default()
        };
        let got = problem.solve(&g, &[], k, p, &opts)?;
        let want = problem.brute(&g, &[], k, p, &opts)?;
        report.cases += 1;
        let label = format!("case {case}: {problem:?} n={} k={k} p={p} edges={:?}", g.n(), g.edges());
        if got.is_yes() != want.is_yes() {
            report.fail(format!("{label}: solver {:?}, oracle {:?}", got.solution, want.solution));
            continue;
        }
        if let Some(s) = &got.solution {
            report.bump("yes");
            if s.is_empty() {
                report.bump("already_clean");
            }
            if let Err(v) = verify_solution(&g, &problem, &[], k, p, opts.rule, s)? {
                report.fail(format!("{label}: witness {s:?} rejected: {v}"));
            }
        }
    }
    Ok(report)
}

/// Tree decomposition from eliminating vertices in `order`: the bag of `v`
/// is `v` and its later neighbours in the filled graph, attached to the
/// bag of the earliest of them.
pub fn elimination_decomposition(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut filled: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = filled[v].iter().copied().filter(|&w| pos[w] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                filled[x].insert(y);
                filled[y].insert(x);
            }
        }
        parent[i] = later.iter().map(|&w| pos[w]).min();
        let mut bag = vec![v];
        bag.extend(&later);
        bag.sort_unstable();
        bags.push(bag);
    }
    let root = n.saturating_sub(1);
    let tree_edges = (0..n.saturating_sub(1)).map(|i| (i, parent[i].unwrap_or(root))).collect();
    TreeDecomposition { bags, tree_edges, root }
}

/// Orderings derived from tree decompositions and from linear layouts stay
/// within their degeneracy bounds.
pub fn ordering_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("ordering", seed);
    for case in 0..cases {
        let mut rng = case_rng(seed, 7, case);
        let n = rng.gen_range(2..=14);
        let g = random_degenerate(n, rng.gen_range(1..=4), rng.gen())?;
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let td = elimination_decomposition(&g, &order);
        report.cases += 1;
        if let Err(e) = td.validate(&g) {
            report.fail(format!("case {case}: built decomposition rejected: {e}"));
            continue;
        }
        let width = td.width();
        let from_td = ordering_from_tree_decomposition(&g, &td)?;
        let worst = g.back_degrees(&from_td.sequence).into_iter().max().unwrap_or(0);
        if worst > 2 * width || !from_td.respects_bound(&g) {
            report.fail(format!("case {case}: decomposition width {width}, back-degree {worst}"));
        }
        let mut layout: Vec<usize> = (0..n).collect();
        layout.shuffle(&mut rng);
        let cutwidth = cutwidth_of_layout(&g, &layout)?;
        let from_layout = ordering_from_cutwidth_layout(&g, &layout)?;
        let worst = g.back_degrees(&from_layout.sequence).into_iter().max().unwrap_or(0);
        report.cases += 1;
        if worst > cutwidth || !from_layout.respects_bound(&g) {
            report.fail(format!("case {case}: cutwidth {cutwidth}, back-degree {worst}"));
        }
    }
    Ok(report)
}

/// Tree, or a cycle on the non-leaf vertices with every leaf hanging off it.
fn tree_or_hairy_cycle(h: &Graph) -> bool {
    if h.m() + 1 == h.n() {
        return true;
    }
    if h.m() != h.n() {
        return false;
    }
    let ring: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) >= 2).collect();
    let leaves_ok = (0..h.n())
        .filter(|&v| h.degree(v) < 2)
        .all(|v| h.degree(v) == 1 && h.degree(h.neighbors(v)[0]) >= 2);
    let (core, _) = h.induced_subgraph(&ring);
    leaves_ok && core.is_connected() && (0..core.n()).all(|v| core.degree(v) == 2)
}

/// After every minimal hitting set of triangles, 4-cycles and `T2` on the
/// pathwidth-one corpus, each component is a tree or a cycle with hairs and
/// the structural ordering has back-degree at most two.
pub fn structure_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("structure", seed);
    for case in 0..cases {
        let (g, _, k, _) = deletion_instance("pw1ds", seed, case)?;
        let sets = enumerate_minimal_hitting_sets(&g, k, &|h: &Graph| Ok(find_obstruction_t2c3c4(h)))?;
        for x in sets {
            let rest = g.without(&x).0;
            report.cases += 1;
            for comp in rest.components() {
                let h = rest.induced_subgraph(&comp).0;
                if !tree_or_hairy_cycle(&h) {
                    report.fail(format!("case {case}: after deleting {x:?} component {comp:?} has the wrong shape"));
                }
            }
            match pw1_structure(&rest) {
                Ok(structure) => {
                    let mut sorted = structure.ordering.clone();
                    sorted.sort_unstable();
                    let worst = rest.back_degrees(&structure.ordering).into_iter().max().unwrap_or(0);
                    if sorted != (0..rest.n()).collect::<Vec<_>>() || worst > 2 {
                        report.fail(format!("case {case}: ordering after {x:?} has back-degree {worst}"));
                    }
                }
                Err(e) => report.fail(format!("case {case}: structure after {x:?} failed: {e}")),
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_are_clean_and_repeatable() {
        let a = sse_suite(5, 10).unwrap();
        assert!(a.passed(), "{:?}", a.examples);
        assert_eq!(a.to_json(), sse_suite(5, 10).unwrap().to_json());
        assert!(ordering_suite(1, 10).unwrap().passed());
        assert!(menger_suite(1, 10).unwrap().passed());
        assert!(run_suite("nope", 0).is_err());
    }

    #[test]
    fn elimination_decomposition_is_valid() {
        let g = crate::generate::complete(4);
        let td = elimination_decomposition(&g, &[2, 0, 3, 1]);
        td.validate(&g).unwrap();
        assert_eq!(td.width(), 3);
    }
}

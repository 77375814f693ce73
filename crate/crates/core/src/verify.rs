//! Re-checks a claimed solution from the definitions.

use std::fmt;

use crate::connectivity::SingletonRule;
use crate::deletion::{find_path_subgraph, find_subgraph_embedding, is_pathwidth_le1, treedepth};
use crate::error::Result;
use crate::generate::{path, star};
use crate::graph::Graph;
use crate::oracle::{oracle_edge_connected, residual_holds, Residual};
use crate::problem::Problem;

/// Remainders up to this size are checked by the exhaustive oracles.
const EXHAUSTIVE_RESIDUAL_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange(usize),
    Repeated(usize),
    TerminalNotCovered(usize),
    TooLarge { size: usize, k: usize },
    Connectivity { p: usize },
    Residual(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange(v) => write!(f, "vertex out of range: {v}"),
            Violation::Repeated(v) => write!(f, "vertex listed twice: {v}"),
            Violation::TerminalNotCovered(v) => write!(f, "terminal not covered: {v}"),
            Violation::TooLarge { size, k } => write!(f, "size {size} exceeds k = {k}"),
            Violation::Connectivity { p } => write!(f, "connectivity: the solution does not induce a {p}-edge-connected graph"),
            Violation::Residual(what) => write!(f, "residual: {what}"),
        }
    }
}

/// `Ok(Ok(()))` when `solution` solves the instance, `Ok(Err(_))` naming
/// the first violated condition, `Err` when a check itself cannot run.
#[allow(clippy::too_many_arguments)]
pub fn verify_solution(
    g: &Graph,
    problem: &Problem,
    terminals: &[usize],
    k: usize,
    p: usize,
    rule: SingletonRule,
    solution: &[usize],
) -> Result<std::result::Result<(), Violation>> {
    let mut seen = vec![false; g.n()];
    for &v in solution {
        if v >= g.n() {
            return Ok(Err(Violation::VertexOutOfRange(v)));
        }
        if seen[v] {
            return Ok(Err(Violation::Repeated(v)));
        }
        seen[v] = true;
    }
    if *problem == Problem::Sse {
        if let Some(&t) = terminals.iter().find(|&&t| t >= g.n() || !seen[t]) {
            return Ok(Err(Violation::TerminalNotCovered(t)));
        }
    }
    if solution.len() > k {
        return Ok(Err(Violation::TooLarge { size: solution.len(), k }));
    }
    let mut sorted = solution.to_vec();
    sorted.sort_unstable();
    let empty_deletion = sorted.is_empty() && *problem != Problem::Sse;
    if !empty_deletion && !oracle_edge_connected(g, &sorted, p, rule) {
        return Ok(Err(Violation::Connectivity { p }));
    }
    if let Some(residual) = problem.residual() {
        if !remainder_ok(g, &sorted, residual)? {
            return Ok(Err(Violation::Residual(describe(residual))));
        }
    }
    Ok(Ok(()))
}

fn describe(residual: Residual) -> String {
    match residual {
        Residual::MaxDegree(eta) => format!("a remaining vertex has degree above {eta}"),
        Residual::PathwidthOne => "the remainder has pathwidth above one".into(),
        Residual::Treedepth(eta) => format!("the remainder has treedepth above {eta}"),
        Residual::PathFree(eta) => format!("the remainder has a path on {eta} vertices"),
        Residual::Scattered { alpha, beta } => format!(
            "a remaining component has a vertex of degree above {alpha} and a path on {beta} vertices"
        ),
    }
}

fn remainder_ok(g: &Graph, removed: &[usize], residual: Residual) -> Result<bool> {
    if g.n() - removed.len() <= EXHAUSTIVE_RESIDUAL_CAP {
        return Ok(residual_holds(g, removed, residual));
    }
    let rest = g.without(removed).0;
    Ok(match residual {
        Residual::MaxDegree(eta) => rest.max_degree() <= eta,
        Residual::PathwidthOne => is_pathwidth_le1(&rest),
        Residual::Treedepth(eta) => {
            let mut ok = true;
            for comp in rest.components() {
                ok &= treedepth(&rest.induced_subgraph(&comp).0)? <= eta;
            }
            ok
        }
        Residual::PathFree(eta) => eta >= 2 && find_path_subgraph(&rest, eta)?.is_none(),
        Residual::Scattered { alpha, beta } => {
            let mut ok = true;
            for comp in rest.components() {
                let h = rest.induced_subgraph(&comp).0;
                let high_degree = find_subgraph_embedding(&h, &star(alpha + 1))?.is_some();
                let long_path = find_subgraph_embedding(&h, &path(beta))?.is_some();
                ok &= !(high_degree && long_path);
            }
            ok
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, path as make_path};

    #[test]
    fn sse_checks() {
        let g = complete(3);
        let lenient = SingletonRule::Lenient;
        let check = |s: &[usize], t: &[usize]| verify_solution(&g, &Problem::Sse, t, 3, 2, lenient, s).unwrap();
        assert_eq!(check(&[0, 1, 2], &[0]), Ok(()));
        assert_eq!(check(&[1, 2], &[0]), Err(Violation::TerminalNotCovered(0)));
        assert_eq!(check(&[0, 1], &[0]), Err(Violation::Connectivity { p: 2 }));
        assert_eq!(check(&[0, 5], &[0]), Err(Violation::VertexOutOfRange(5)));
        assert!(Violation::Connectivity { p: 2 }.to_string().contains("connectivity"));
        assert!(Violation::TerminalNotCovered(1).to_string().contains("terminal not covered"));
    }

    #[test]
    fn deletion_checks() {
        let lenient = SingletonRule::Lenient;
        let pvc = Problem::Pvc { eta: 3 };
        let p5 = make_path(5);
        assert_eq!(verify_solution(&p5, &pvc, &[], 1, 1, lenient, &[2]).unwrap(), Ok(()));
        assert!(matches!(
            verify_solution(&p5, &pvc, &[], 1, 1, lenient, &[1]).unwrap(),
            Err(Violation::Residual(_))
        ));
        assert_eq!(
            verify_solution(&p5, &pvc, &[], 0, 1, lenient, &[1]).unwrap(),
            Err(Violation::TooLarge { size: 1, k: 0 })
        );
        let big = cycle(20).unwrap();
        assert_eq!(verify_solution(&big, &Problem::Pw1ds, &[], 1, 1, lenient, &[4]).unwrap(), Ok(()));
        assert!(verify_solution(&big, &Problem::Pw1ds, &[], 0, 1, lenient, &[]).unwrap().is_err());
    }
}

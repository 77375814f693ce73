//! One name for every problem the library solves, with its parameters.

use serde::{Deserialize, Serialize};

use crate::deletion::{solve_bdds, solve_pvc, solve_pw1ds, solve_scattered, solve_tdds, ScatteredFamilies};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{brute_deletion, brute_solve_sse, Residual};
use crate::sse::{solve_extension, SolveOptions, SseResult};

pub const PROBLEM_NAMES: &[&str] = &["sse", "bdds", "pw1ds", "tdds", "pvc", "scattered"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum Problem {
    /// Extend the instance terminals.
    Sse,
    /// Maximum degree at most `eta` after deletion.
    Bdds { eta: usize },
    /// Pathwidth at most one after deletion.
    Pw1ds,
    /// Treedepth at most `eta` after deletion.
    Tdds { eta: usize },
    /// No path on `eta` vertices after deletion.
    Pvc { eta: usize },
    /// Every component has maximum degree at most `alpha` or no path on
    /// `beta` vertices; `lambda` is the path length that must be one of the
    /// two patterns.
    Scattered { alpha: usize, beta: usize, lambda: usize },
}

/// Optional numeric parameters as they arrive from flags or instance files.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProblemParams {
    pub eta: Option<usize>,
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
    pub lambda: Option<usize>,
}

fn need(value: Option<usize>, flag: &str, problem: &str) -> Result<usize> {
    value.ok_or_else(|| Error::InvalidArgument(format!("problem `{problem}` needs --{flag}")))
}

impl Problem {
    pub fn from_name(name: &str, params: &ProblemParams) -> Result<Problem> {
        Ok(match name {
            "sse" => Problem::Sse,
            "bdds" => Problem::Bdds {
                eta: need(params.eta, "eta", name)?,
            },
            "pw1ds" => Problem::Pw1ds,
            "tdds" => Problem::Tdds {
                eta: need(params.eta, "eta", name)?,
            },
            "pvc" => Problem::Pvc {
                eta: need(params.eta, "eta", name)?,
            },
            "scattered" => {
                let beta = need(params.beta, "beta", name)?;
                Problem::Scattered {
                    alpha: need(params.alpha, "alpha", name)?,
                    beta,
                    lambda: params.lambda.unwrap_or(beta),
                }
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown problem `{other}`; expected one of {}",
                    PROBLEM_NAMES.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Problem::Sse => "sse",
            Problem::Bdds { .. } => "bdds",
            Problem::Pw1ds => "pw1ds",
            Problem::Tdds { .. } => "tdds",
            Problem::Pvc { .. } => "pvc",
            Problem::Scattered { .. } => "scattered",
        }
    }

    /// What the remaining graph must satisfy; `None` for extension.
    pub fn residual(&self) -> Option<Residual> {
        match *self {
            Problem::Sse => None,
            Problem::Bdds { eta } => Some(Residual::MaxDegree(eta)),
            Problem::Pw1ds => Some(Residual::PathwidthOne),
            Problem::Tdds { eta } => Some(Residual::Treedepth(eta)),
            Problem::Pvc { eta } => Some(Residual::PathFree(eta)),
            Problem::Scattered { alpha, beta, .. } => Some(Residual::Scattered { alpha, beta }),
        }
    }

    fn families(alpha: usize, beta: usize, lambda: usize) -> ScatteredFamilies {
        ScatteredFamilies {
            lambda,
            ..ScatteredFamilies::degree_or_path(alpha, beta)
        }
    }

    /// Runs the solver. `terminals` only matter for extension.
    pub fn solve(&self, g: &Graph, terminals: &[usize], k: usize, p: usize, opts: &SolveOptions) -> Result<SseResult> {
        match *self {
            Problem::Sse => solve_extension(g, terminals, k, p, opts),
            Problem::Bdds { eta } => solve_bdds(g, k, p, eta, opts),
            Problem::Pw1ds => solve_pw1ds(g, k, p, opts),
            Problem::Tdds { eta } => solve_tdds(g, k, p, eta, opts),
            Problem::Pvc { eta } => solve_pvc(g, k, p, eta, opts),
            Problem::Scattered { alpha, beta, lambda } => {
                solve_scattered(g, k, p, &Self::families(alpha, beta, lambda), opts)
            }
        }
    }

    /// Exhaustive reference answer.
    pub fn brute(&self, g: &Graph, terminals: &[usize], k: usize, p: usize, opts: &SolveOptions) -> Result<SseResult> {
        if let Problem::Scattered { alpha, beta, lambda } = *self {
            Self::families(alpha, beta, lambda).validate()?;
        }
        match self.residual() {
            None => brute_solve_sse(g, terminals, k, p, opts.rule),
            Some(residual) => brute_deletion(g, residual, k, p, opts.rule),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        let params = ProblemParams {
            eta: Some(2),
            alpha: Some(1),
            beta: Some(3),
            lambda: None,
        };
        for name in PROBLEM_NAMES {
            assert_eq!(Problem::from_name(name, &params).unwrap().name(), *name);
        }
        assert!(Problem::from_name("bdds", &ProblemParams::default()).is_err());
        assert!(Problem::from_name("fvs", &params).is_err());
        assert_eq!(
            Problem::from_name("scattered", &params).unwrap(),
            Problem::Scattered {
                alpha: 1,
                beta: 3,
                lambda: 3
            }
        );
    }
}

//! Independent exhaustive solver, the cross-validation baseline.
//!
//! Depth-first over edges in input order, colours tried ascending,
//! pruning on A-side and B-side conflicts. Deliberately boring: no
//! reordering, no symmetry breaking, budget measured in node expansions
//! so runs reproduce exactly. Within budget, `Unsat` is a proof of
//! infeasibility. Works for any d up to 63, independent of the d = 3
//! engine.

use crate::distortion::Colour;
use crate::instance::{DistortionInstance, EdgeColouring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleStatus {
    Found(EdgeColouring),
    Unsat,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub status: OracleStatus,
    /// Consistent colour placements performed.
    pub nodes: u64,
}

impl OracleResult {
    pub fn witness(&self) -> Option<&EdgeColouring> {
        match &self.status {
            OracleStatus::Found(f) => Some(f),
            _ => None,
        }
    }
}

/// Searches for a proper distortion-colouring with all `d + 1` colours.
pub fn exhaustive_solve(inst: &DistortionInstance, node_budget: u64) -> OracleResult {
    exhaustive_solve_capped(inst, inst.d as usize + 1, node_budget)
}

/// Same search restricted to the colours `{0, …, num_colours-1}`.
pub fn exhaustive_solve_capped(
    inst: &DistortionInstance,
    num_colours: usize,
    node_budget: u64,
) -> OracleResult {
    let mut search = Search::new(inst, num_colours);
    match search.run(Some(node_budget), 1) {
        Outcome::Solutions(1) => OracleResult {
            status: OracleStatus::Found(EdgeColouring::from_colours(search.placed)),
            nodes: search.nodes,
        },
        Outcome::Solutions(_) => OracleResult {
            status: OracleStatus::Unsat,
            nodes: search.nodes,
        },
        Outcome::OutOfBudget => OracleResult {
            status: OracleStatus::BudgetExceeded,
            nodes: search.nodes,
        },
    }
}

/// Counts proper distortion-colourings, saturating at `cap`.
pub fn count_solutions(inst: &DistortionInstance, cap: u64) -> u64 {
    if cap == 0 {
        return 0;
    }
    let mut search = Search::new(inst, inst.d as usize + 1);
    match search.run(None, cap) {
        Outcome::Solutions(n) => n,
        Outcome::OutOfBudget => unreachable!("counting runs without a budget"),
    }
}

enum Outcome {
    Solutions(u64),
    OutOfBudget,
}

struct Search<'a> {
    inst: &'a DistortionInstance,
    num_colours: usize,
    used_a: Vec<u64>,
    used_b: Vec<u64>,
    placed: Vec<Colour>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(inst: &'a DistortionInstance, num_colours: usize) -> Self {
        assert!((1..=64).contains(&num_colours));
        Search {
            inst,
            num_colours,
            used_a: vec![0; inst.size_a],
            used_b: vec![0; inst.size_b],
            placed: vec![0; inst.num_edges()],
            nodes: 0,
        }
    }

    /// Explores until `max_solutions` complete assignments were seen or the
    /// space (or budget) is exhausted. On `Solutions(n)` with n ≥ 1 and a
    /// stop at the first solution, `placed` holds the witness.
    fn run(&mut self, budget: Option<u64>, max_solutions: u64) -> Outcome {
        let n = self.inst.num_edges();
        if n == 0 {
            return Outcome::Solutions(1.min(max_solutions));
        }
        let mut solutions = 0u64;
        let mut cursor: Vec<Colour> = vec![0; n];
        let mut depth = 0usize;
        loop {
            let edge = &self.inst.edges[depth];
            let mut placed = false;
            let mut c = cursor[depth];
            while (c as usize) < self.num_colours {
                let bc = edge.distortion.apply(c);
                if self.used_a[edge.a] & (1 << c) == 0 && self.used_b[edge.b] & (1 << bc) == 0 {
                    if let Some(limit) = budget {
                        if self.nodes >= limit {
                            return Outcome::OutOfBudget;
                        }
                    }
                    self.nodes += 1;
                    self.used_a[edge.a] |= 1 << c;
                    self.used_b[edge.b] |= 1 << bc;
                    self.placed[depth] = c;
                    cursor[depth] = c;
                    placed = true;
                    break;
                }
                c += 1;
            }

            if placed {
                if depth + 1 == n {
                    solutions += 1;
                    if solutions >= max_solutions {
                        return Outcome::Solutions(solutions);
                    }
                    self.unplace(depth);
                    cursor[depth] += 1;
                } else {
                    depth += 1;
                    cursor[depth] = 0;
                }
            } else if depth == 0 {
                return Outcome::Solutions(solutions);
            } else {
                depth -= 1;
                self.unplace(depth);
                cursor[depth] += 1;
            }
        }
    }

    fn unplace(&mut self, depth: usize) {
        let edge = &self.inst.edges[depth];
        let c = self.placed[depth];
        self.used_a[edge.a] &= !(1 << c);
        self.used_b[edge.b] &= !(1 << self.inst.edges[depth].distortion.apply(c));
    }
}

//! Coefficient-level backtracking.
//!
//! The constraints are the polynomials of the generated system (weight kept
//! symbolic, then fixed to the problem's weight) plus linear equations for an
//! image constraint. Each one is evaluated as soon as the last of its
//! variables is bound. Checking at the granularity of whole images is not
//! enough: the right-hand side `R(R(x)y + …)` reads images that are not yet
//! assigned, so those checks could only be done at the leaves.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::{SearchOptions, SearchStats};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::identities::Problem;
use crate::linalg;
use crate::operator::Op4;
use crate::polysys::{generate_system, CompiledPoly, WeightSpec, NVARS};

/// Number of leading positions expanded serially to make parallel tasks.
const SPLIT_DEPTH: usize = 4;
const FLUSH_EVERY: u64 = 1 << 14;

/// Identity constraints, then the linear equations of the image constraint.
pub(super) fn constraints(prob: &Problem, opts: &SearchOptions) -> (Vec<CompiledPoly>, Vec<CompiledPoly>) {
    let field = prob.field();
    let identity: Vec<CompiledPoly> =
        generate_system(prob.product, prob.identity, WeightSpec::Symbolic, None)
            .iter()
            .map(|p| p.compile(field, Some(prob.weight)))
            .filter(|c| !c.is_zero())
            .collect();
    let mut out = Vec::new();
    if let Some(basis) = &opts.image_constraint {
        let rows: Vec<linalg::Row> = basis.iter().map(|m| m.entries().to_vec()).collect();
        for normal in linalg::nullspace(field, &rows, 4) {
            for j in 0..4 {
                let terms: Vec<(usize, FieldElement)> =
                    (0..4).map(|c| (4 * j + c, normal[c])).collect();
                out.push(CompiledPoly::linear(field, &terms));
            }
        }
    }
    (identity, out)
}

/// Greedy order: next is the variable completing the most constraints, then
/// the one occurring in the most nearly complete constraints, then the lowest index.
fn variable_order(cons: &[CompiledPoly]) -> [usize; 16] {
    let mut order = [0usize; 16];
    let mut chosen = 0u32;
    for slot in order.iter_mut() {
        let best = (0..16)
            .filter(|v| chosen & (1 << v) == 0)
            .max_by_key(|&v| {
                let with = chosen | (1 << v);
                let complete = cons
                    .iter()
                    .filter(|c| c.var_mask() & !with == 0 && c.var_mask() & (1 << v) != 0)
                    .count();
                let closeness: u32 = cons
                    .iter()
                    .filter(|c| c.var_mask() & (1 << v) != 0)
                    .map(|c| 16 - (c.var_mask() & !with).count_ones())
                    .sum();
                (complete, closeness, std::cmp::Reverse(v))
            })
            .expect("unchosen variable remains");
        *slot = best;
        chosen |= 1 << best;
    }
    order
}

struct Plan {
    field: FieldSpec,
    order: [usize; 16],
    /// `checks[k]`: constraints whose last variable is `order[k]`.
    checks: Vec<Vec<CompiledPoly>>,
    elems: Vec<FieldElement>,
}

impl Plan {
    fn new(prob: &Problem, opts: &SearchOptions) -> Plan {
        let (identity, space) = constraints(prob, opts);
        let all: Vec<CompiledPoly> = identity.iter().chain(&space).cloned().collect();
        let order = variable_order(&all);
        let mut checks = vec![Vec::new(); 16];
        let last_position = |c: &CompiledPoly| {
            (0..16)
                .rev()
                .find(|&k| c.var_mask() & (1 << order[k]) != 0)
                .unwrap_or(0)
        };
        // Space constraints always apply eagerly; with pruning off the
        // identity waits for the leaf.
        for c in space {
            checks[last_position(&c)].push(c);
        }
        for c in identity {
            let at = if opts.prune { last_position(&c) } else { 15 };
            checks[at].push(c);
        }
        Plan {
            field: prob.field(),
            order,
            checks,
            elems: prob.field().elements().collect(),
        }
    }
}

#[derive(Default)]
struct Counters {
    nodes: u64,
    prune_hits: u64,
    unflushed: u64,
}

struct Shared<'a> {
    total: &'a AtomicU64,
    abort: &'a AtomicBool,
    budget: u64,
}

impl Shared<'_> {
    fn tick(&self, ctr: &mut Counters) -> bool {
        ctr.nodes += 1;
        ctr.unflushed += 1;
        if ctr.unflushed >= FLUSH_EVERY {
            self.flush(ctr);
        }
        !self.abort.load(Ordering::Relaxed)
    }

    fn flush(&self, ctr: &mut Counters) {
        let t = self.total.fetch_add(ctr.unflushed, Ordering::Relaxed) + ctr.unflushed;
        ctr.unflushed = 0;
        if t > self.budget {
            self.abort.store(true, Ordering::Relaxed);
        }
    }
}

fn dfs(
    plan: &Plan,
    shared: &Shared,
    k: usize,
    point: &mut [FieldElement; NVARS],
    ctr: &mut Counters,
    out: &mut Vec<Op4>,
) -> bool {
    if k == 16 {
        let coeffs: [FieldElement; 16] = point[..16].try_into().expect("16 coefficients");
        out.push(Op4::from_coeffs(&coeffs));
        return true;
    }
    let var = plan.order[k];
    for &e in &plan.elems {
        if !shared.tick(ctr) {
            return false;
        }
        point[var] = e;
        if plan.checks[k].iter().all(|c| c.vanishes(&point[..])) {
            if !dfs(plan, shared, k + 1, point, ctr, out) {
                return false;
            }
        } else {
            ctr.prune_hits += 1;
        }
    }
    point[var] = plan.field.zero();
    true
}

/// Partial assignments surviving the first `depth` positions.
fn prefixes(
    plan: &Plan,
    depth: usize,
    ctr: &mut Counters,
) -> Vec<[FieldElement; NVARS]> {
    let mut layer = vec![[plan.field.zero(); NVARS]];
    for k in 0..depth {
        let var = plan.order[k];
        let mut next = Vec::new();
        for pt in &layer {
            for &e in &plan.elems {
                ctr.nodes += 1;
                let mut p = *pt;
                p[var] = e;
                if plan.checks[k].iter().all(|c| c.vanishes(&p[..])) {
                    next.push(p);
                } else {
                    ctr.prune_hits += 1;
                }
            }
        }
        layer = next;
    }
    layer
}

pub(super) fn search(prob: &Problem, opts: &SearchOptions) -> Result<(Vec<Op4>, SearchStats)> {
    let plan = Plan::new(prob, opts);
    let budget_error = || Error::BudgetExceeded {
        budget: opts.node_budget,
        what: "search nodes".to_string(),
    };
    let mut head = Counters::default();
    let seeds = prefixes(&plan, SPLIT_DEPTH, &mut head);
    if head.nodes > opts.node_budget {
        return Err(budget_error());
    }
    let total = AtomicU64::new(head.nodes);
    let abort = AtomicBool::new(false);
    let shared = Shared {
        total: &total,
        abort: &abort,
        budget: opts.node_budget,
    };
    let results: Vec<(Vec<Op4>, Counters)> = seeds
        .into_par_iter()
        .map(|mut pt| {
            let mut ctr = Counters::default();
            let mut out = Vec::new();
            dfs(&plan, &shared, SPLIT_DEPTH, &mut pt, &mut ctr, &mut out);
            shared.flush(&mut ctr);
            (out, ctr)
        })
        .collect();
    if abort.load(Ordering::Relaxed) {
        return Err(budget_error());
    }
    let mut stats = SearchStats {
        mode: opts.mode().to_string(),
        nodes: head.nodes,
        prune_hits: head.prune_hits,
    };
    let mut ops = Vec::new();
    for (part, ctr) in results {
        stats.nodes += ctr.nodes;
        stats.prune_hits += ctr.prune_hits;
        ops.extend(part);
    }
    ops.sort_unstable();
    ops.dedup();
    Ok((ops, stats))
}

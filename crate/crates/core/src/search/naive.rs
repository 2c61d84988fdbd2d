//! The independent oracle: every coefficient vector, each checked with
//! `check_identity`. No constraint system is involved.

use rayon::prelude::*;

use super::{SearchOptions, SearchStats};
use crate::error::{Error, Result};
use crate::identities::{satisfies, Problem};
use crate::matrix::Mat2;
use crate::operator::Op4;

/// All matrices in the span of `basis` (the whole space when `None`), in
/// lexicographic order of their coordinates.
fn candidate_images(prob: &Problem, basis: Option<&[Mat2]>) -> Vec<Mat2> {
    let field = prob.field();
    let mut out: Vec<Mat2> = match basis {
        None => crate::matrix::all_matrices(field).collect(),
        Some(b) => {
            let mut acc = vec![Mat2::zero(field)];
            for v in b {
                acc = acc
                    .iter()
                    .flat_map(|m| field.elements().map(move |c| *m + v.scale(c)))
                    .collect();
            }
            acc
        }
    };
    out.sort_unstable();
    out.dedup();
    out
}

pub(super) fn scan(prob: &Problem, opts: &SearchOptions) -> Result<(Vec<Op4>, SearchStats)> {
    let cands = candidate_images(prob, opts.image_constraint.as_deref());
    let n = cands.len() as u64;
    let total = n
        .checked_pow(4)
        .filter(|&t| t <= opts.node_budget)
        .ok_or_else(|| Error::BudgetExceeded {
            budget: opts.node_budget,
            what: format!("naive scan of {n}^4 operators"),
        })?;
    // Outer two images split across workers; the inner two run serially.
    let pairs: Vec<(usize, usize)> = (0..cands.len())
        .flat_map(|i| (0..cands.len()).map(move |j| (i, j)))
        .collect();
    let parts: Vec<Vec<Op4>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut out = Vec::new();
            for c in &cands {
                for d in &cands {
                    let r = Op4::new([cands[i], cands[j], *c, *d]);
                    if satisfies(&r, prob) {
                        out.push(r);
                    }
                }
            }
            out
        })
        .collect();
    let ops: Vec<Op4> = parts.into_iter().flatten().collect();
    Ok((
        ops,
        SearchStats {
            mode: opts.mode().to_string(),
            nodes: total,
            prune_hits: 0,
        },
    ))
}

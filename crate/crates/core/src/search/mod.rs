//! Exhaustive solution sets of operator identities, and the census of
//! subalgebras of `M₂(F)`.

mod backtrack;
mod naive;
mod rbset;
mod subalgebra;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::identities::Problem;
use crate::matrix::Mat2;
use crate::operator::Op4;

pub use rbset::{read_rbset, write_rbset};
pub use subalgebra::{enumerate_subalgebras, enumerate_subspaces, Subalgebra};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Check constraints as soon as their variables are bound.
    pub prune: bool,
    /// Every image must lie in this span.
    pub image_constraint: Option<Vec<Mat2>>,
    /// Plain scan of all `q¹⁶` coefficient vectors through `check_identity`.
    pub naive_oracle: bool,
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            prune: true,
            image_constraint: None,
            naive_oracle: false,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchOptions {
    pub fn naive() -> SearchOptions {
        SearchOptions {
            prune: false,
            naive_oracle: true,
            ..SearchOptions::default()
        }
    }

    pub fn mode(&self) -> &'static str {
        match (self.naive_oracle, self.prune) {
            (true, _) => "naive",
            (false, true) => "pruned",
            (false, false) => "unpruned",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchStats {
    pub mode: String,
    pub nodes: u64,
    pub prune_hits: u64,
}

/// A sorted, duplicate-free list of operators satisfying one problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSet {
    pub problem: Problem,
    pub field: FieldSpec,
    pub ops: Vec<Op4>,
    pub metadata: SearchStats,
}

impl OperatorSet {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn contains(&self, r: &Op4) -> bool {
        self.ops.binary_search(r).is_ok()
    }

    /// Whether every member of `self` belongs to `other`.
    pub fn is_subset_of(&self, other: &OperatorSet) -> bool {
        self.ops.iter().all(|r| other.contains(r))
    }
}

pub fn enumerate_operators(
    prob: &Problem,
    field: FieldSpec,
    opts: &SearchOptions,
) -> Result<OperatorSet> {
    if prob.field() != field {
        return Err(Error::FieldMismatch);
    }
    if opts.naive_oracle && opts.prune {
        return Err(Error::InvalidOptions(
            "the naive oracle never prunes".into(),
        ));
    }
    if let Some(basis) = &opts.image_constraint {
        if basis.iter().any(|m| m.field() != field) {
            return Err(Error::FieldMismatch);
        }
    }
    let (ops, metadata) = if opts.naive_oracle {
        naive::scan(prob, opts)?
    } else {
        backtrack::search(prob, opts)?
    };
    debug_assert!(ops.windows(2).all(|w| w[0] < w[1]));
    Ok(OperatorSet {
        problem: *prob,
        field,
        ops,
        metadata,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::identities::{satisfies, IdentityKind};
    use crate::matrix::{ProductKind, E11, E12};

    #[test]
    fn pruned_matches_naive_on_small_problems() {
        // Full F_3 oracle runs live in the integration tests; here a
        // restricted image keeps the naive scan cheap.
        let f = make_field(3, 1).unwrap();
        let span = vec![Mat2::unit(f, E11), Mat2::unit(f, E12)];
        for prod in ProductKind::ALL {
            for id in [IdentityKind::Rb, IdentityKind::Symmetrized] {
                for w in 0..2 {
                    let prob = Problem::new(prod, id, f.from_int(w));
                    let constrained = SearchOptions {
                        image_constraint: Some(span.clone()),
                        ..SearchOptions::default()
                    };
                    let pruned = enumerate_operators(&prob, f, &constrained).unwrap();
                    let unpruned = enumerate_operators(
                        &prob,
                        f,
                        &SearchOptions {
                            prune: false,
                            ..constrained.clone()
                        },
                    )
                    .unwrap();
                    let naive = enumerate_operators(
                        &prob,
                        f,
                        &SearchOptions {
                            image_constraint: Some(span.clone()),
                            ..SearchOptions::naive()
                        },
                    )
                    .unwrap();
                    assert_eq!(pruned.ops, naive.ops, "{prob}");
                    assert_eq!(unpruned.ops, naive.ops, "{prob}");
                    assert!(pruned.ops.contains(&Op4::zero(f)));
                    assert!(pruned.ops.iter().all(|r| satisfies(r, &prob)));
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f5 = make_field(5, 1).unwrap();
        let prob = Problem::new(ProductKind::Jordan, IdentityKind::Rb, f5.zero());
        let err = enumerate_operators(&prob, f5, &SearchOptions::naive()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        let tight = SearchOptions {
            node_budget: 1000,
            ..SearchOptions::default()
        };
        let err = enumerate_operators(&prob, f5, &tight).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 1000, .. }));
        let bad = SearchOptions {
            prune: true,
            naive_oracle: true,
            ..SearchOptions::default()
        };
        assert!(enumerate_operators(&prob, f5, &bad).is_err());
    }
}

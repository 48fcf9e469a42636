//! Resolving-set verification and search.

mod baselines;
mod embed;
mod ich;
mod partition;
mod target;

pub use baselines::{contiguous_members, greedy_baseline, preorder_baseline, preorder_scores, random_baseline};
pub use embed::{embed, Embedding};
pub use ich::ich;
pub use target::{brute_force_beta, is_resolving, NodeSet, ResolvingTarget, TargetKind, BRUTE_FORCE_CAP};

//! Backwards induction over a materialized prefix tree.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::perm::Permutation;
use crate::tally::Tally;
use crate::tree::{cmp_prefix_order, is_antichain, NodeId, PrefixTree, StrikeSet};

#[derive(Debug, Clone)]
pub struct OptimalResult {
    pub strike_set: StrikeSet,
    pub value: Tally,
    /// Best tally achievable inside each node's subtree, indexed by node id.
    pub per_node_values: Vec<Tally>,
}

/// A set of trigger prefixes. `null` stands for triggering before the first
/// interview, which accepts the very first candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriggerSet {
    pub null: bool,
    pub members: Vec<Permutation>,
}

impl TriggerSet {
    pub fn null_only() -> Self {
        TriggerSet {
            null: true,
            members: vec![],
        }
    }

    pub fn new(mut members: Vec<Permutation>) -> Self {
        members.sort_by(cmp_prefix_order);
        members.dedup();
        TriggerSet {
            null: false,
            members,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimalTrigger {
    pub trigger_set: TriggerSet,
    pub value: Tally,
    pub per_node_values: Vec<Tally>,
}

/// Sweeps the tree from the leaves up, replacing the chosen descendants of an
/// eligible prefix by the prefix itself whenever its strike tally is strictly
/// larger. Ties keep the deeper choice.
pub fn optimal_strike_set(tree: &PrefixTree) -> OptimalResult {
    let n = tree.len();
    let mut best: Vec<Option<Tally>> = vec![None; n];
    let mut chosen = vec![false; n];
    for id in tree.bottom_up() {
        let node = tree.node(id);
        if node.is_leaf() {
            best[id] = Some(node.strike.clone());
            chosen[id] = true;
            continue;
        }
        let below: Tally = node
            .children
            .iter()
            .map(|&c| best[c].as_ref().expect("children first"))
            .sum();
        if node.eligible && node.strike.cmp_as_rational(&below) == Ordering::Greater {
            best[id] = Some(node.strike.clone());
            chosen[id] = true;
        } else {
            best[id] = Some(below);
        }
    }
    let per_node_values: Vec<Tally> = best.into_iter().map(|t| t.expect("filled")).collect();
    let members = collect_topmost(tree, &chosen);
    OptimalResult {
        strike_set: StrikeSet::from_unsorted(members, true),
        value: per_node_values[PrefixTree::ROOT].clone(),
        per_node_values,
    }
}

/// Same induction with trigger tallies; every node of size at most `N-1`
/// may trigger, and the null prefix competes with the root.
pub fn optimal_trigger_set(tree: &PrefixTree) -> OptimalTrigger {
    let rank = tree.rank();
    let n = tree.len();
    let mut best: Vec<Option<Tally>> = vec![None; n];
    let mut chosen = vec![false; n];
    for id in tree.bottom_up() {
        let node = tree.node(id);
        let size = node.size();
        if size == rank {
            continue;
        }
        if size + 1 == rank {
            best[id] = Some(node.trigger.clone());
            chosen[id] = true;
            continue;
        }
        let below: Tally = node
            .children
            .iter()
            .map(|&c| best[c].as_ref().expect("children first"))
            .sum();
        if node.trigger.cmp_as_rational(&below) == Ordering::Greater {
            best[id] = Some(node.trigger.clone());
            chosen[id] = true;
        } else {
            best[id] = Some(below);
        }
    }
    // leaves carry no trigger choice; report their own (zero) tally
    let per_node_values: Vec<Tally> = best
        .into_iter()
        .enumerate()
        .map(|(id, t)| t.unwrap_or_else(|| tree.node(id).trigger.clone()))
        .collect();
    let root_value = &per_node_values[PrefixTree::ROOT];
    let null = tree.null_trigger();
    if rank == 1 || null.cmp_as_rational(root_value) == Ordering::Greater {
        return OptimalTrigger {
            trigger_set: TriggerSet::null_only(),
            value: null.clone(),
            per_node_values,
        };
    }
    let value = root_value.clone();
    OptimalTrigger {
        trigger_set: TriggerSet::new(collect_topmost(tree, &chosen)),
        value,
        per_node_values,
    }
}

fn collect_topmost(tree: &PrefixTree, chosen: &[bool]) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut stack = vec![PrefixTree::ROOT];
    while let Some(id) = stack.pop() {
        if chosen[id] {
            out.push(tree.node(id).prefix.clone());
        } else {
            stack.extend(tree.node(id).children.iter().copied());
        }
    }
    out
}

fn resolve(tree: &PrefixTree, members: &[Permutation]) -> Result<Vec<NodeId>> {
    if !is_antichain(members) {
        return Err(invalid("set is not an antichain"));
    }
    members.iter().map(|p| tree.find(p)).collect()
}

/// `P(A)`: the mediant sum of the strike tallies of a complete antichain.
pub fn evaluate_strike(tree: &PrefixTree, set: &StrikeSet) -> Result<Tally> {
    let ids = resolve(tree, &set.members)?;
    if !tree.covers_all_leaves(&ids) {
        return Err(invalid("strike set is not complete"));
    }
    Ok(ids.iter().map(|&i| &tree.node(i).strike).sum())
}

/// Success tally of a complete trigger set.
pub fn evaluate_trigger(tree: &PrefixTree, set: &TriggerSet) -> Result<Tally> {
    if set.null {
        if !set.members.is_empty() {
            return Err(invalid("the null trigger already covers every prefix"));
        }
        return Ok(tree.null_trigger().clone());
    }
    let ids = resolve(tree, &set.members)?;
    if let Some(p) = set.members.iter().find(|p| p.len() >= tree.rank()) {
        return Err(invalid(format!("trigger {p} has full size")));
    }
    if !tree.covers_all_leaves(&ids) {
        return Err(invalid("trigger set is not complete"));
    }
    Ok(ids.iter().map(|&i| &tree.node(i).trigger).sum())
}

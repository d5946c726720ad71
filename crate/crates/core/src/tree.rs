//! Prefix trees of restricted classes with counted strike and trigger tallies.
//!
//! Level `k` of the tree for rank `N` holds every prefix flattening of size
//! `k` of the class members of size `N`; level `N` holds the members
//! themselves. Tallies are filled in a single pass over the members: each
//! member bumps the counters along its own prefix path.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::class::{Limits, PatternClass};
use crate::error::{invalid, Error, Result};
use crate::perm::Permutation;
use crate::tally::Tally;

pub type NodeId = usize;

#[derive(Debug, Clone)]
pub struct TreeNode {
    pub prefix: Permutation,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub eligible: bool,
    pub strike: Tally,
    pub trigger: Tally,
}

impl TreeNode {
    pub fn size(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of class members below (or at) this node.
    pub fn leaf_count(&self) -> &BigUint {
        self.strike.total()
    }
}

/// An antichain of prefixes used as a strike strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrikeSet {
    pub members: Vec<Permutation>,
    pub complete: bool,
}

impl StrikeSet {
    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.binary_search_by(|m| cmp_prefix_order(m, p)).is_ok()
    }

    pub(crate) fn from_unsorted(mut members: Vec<Permutation>, complete: bool) -> Self {
        members.sort_by(cmp_prefix_order);
        members.dedup();
        StrikeSet { members, complete }
    }
}

/// Orders prefixes by size, then lexicographically.
pub fn cmp_prefix_order(a: &Permutation, b: &Permutation) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// True iff no element is a prefix flattening of another.
pub fn is_antichain(set: &[Permutation]) -> bool {
    for (i, a) in set.iter().enumerate() {
        for (j, b) in set.iter().enumerate() {
            if i != j && a.is_prefix_of(b) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct PrefixTree {
    class: PatternClass,
    rank: usize,
    nodes: Vec<TreeNode>,
    index: HashMap<Permutation, NodeId>,
    null_trigger: Tally,
}

struct Counters {
    total: u64,
    strike: u64,
    trigger: u64,
}

struct Builder<'a> {
    class: &'a PatternClass,
    rank: usize,
    limit: u64,
    nodes: Vec<(Permutation, Option<NodeId>, Vec<NodeId>)>,
    counts: Vec<Counters>,
    path: Vec<NodeId>,
    null_wins: u64,
    leaves: u64,
}

impl Builder<'_> {
    fn visit(&mut self, prefix: Permutation, parent: Option<NodeId>) -> Result<Option<NodeId>> {
        let id = self.nodes.len();
        let size = prefix.len();
        self.nodes.push((prefix, parent, Vec::new()));
        self.counts.push(Counters {
            total: 0,
            strike: 0,
            trigger: 0,
        });
        self.path.push(id);
        if size == self.rank {
            let member = &self.nodes[id].0;
            if size > 1 || self.class.contains(member) {
                self.record_leaf(id)?;
            }
        } else {
            let prefix = self.nodes[id].0.clone();
            for c in self.class.child_indices_unchecked(&prefix) {
                if let Some(child) = self.visit(prefix.append_value(c), Some(id))? {
                    self.nodes[id].2.push(child);
                }
            }
        }
        self.path.pop();
        if self.counts[id].total == 0 {
            // dead end: no member of full size lies below
            self.nodes.truncate(id);
            self.counts.truncate(id);
            return Ok(None);
        }
        Ok(Some(id))
    }

    fn record_leaf(&mut self, id: NodeId) -> Result<()> {
        self.leaves += 1;
        if self.leaves > self.limit {
            return Err(Error::Limit {
                what: format!("class {} at size {}", self.class, self.rank),
                limit: self.limit,
            });
        }
        let maxima = self.nodes[id].0.ltr_maxima();
        let last = *maxima.last().expect("nonempty");
        let second = if maxima.len() >= 2 {
            maxima[maxima.len() - 2]
        } else {
            0
        };
        for (depth0, &node) in self.path.iter().enumerate() {
            let depth = depth0 + 1;
            let c = &mut self.counts[node];
            c.total += 1;
            if depth == last {
                c.strike += 1;
            }
            if second <= depth && depth < last {
                c.trigger += 1;
            }
        }
        if second == 0 {
            self.null_wins += 1;
        }
        Ok(())
    }
}

impl PrefixTree {
    /// Materializes the prefix tree of `class` at rank `n`.
    pub fn build(class: &PatternClass, n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(invalid("rank must be at least 1"));
        }
        if n > limits.max_tree_rank {
            return Err(Error::Limit {
                what: format!("tree rank {n}"),
                limit: limits.max_tree_rank as u64,
            });
        }
        if let Some(size) = class.closed_size(n) {
            if size > BigUint::from(limits.max_class_size) {
                return Err(Error::Limit {
                    what: format!("class {class} at size {n} ({size} members)"),
                    limit: limits.max_class_size,
                });
            }
        }
        let mut b = Builder {
            class,
            rank: n,
            limit: limits.max_class_size,
            nodes: Vec::new(),
            counts: Vec::new(),
            path: Vec::new(),
            null_wins: 0,
            leaves: 0,
        };
        let root = b.visit(Permutation::identity(1), None)?;
        if root.is_none() {
            return Err(invalid(format!("class {class} has no members of size {n}")));
        }
        let null_trigger = Tally::new(b.null_wins, b.leaves)?;
        let nodes: Vec<TreeNode> = b
            .nodes
            .into_iter()
            .zip(b.counts)
            .map(|((prefix, parent, children), c)| {
                let eligible = prefix.is_eligible();
                TreeNode {
                    prefix,
                    parent,
                    children,
                    eligible,
                    strike: Tally::new(c.strike, c.total).expect("wins <= total"),
                    trigger: Tally::new(c.trigger, c.total).expect("wins <= total"),
                }
            })
            .collect();
        let index = nodes
            .iter()
            .enumerate()
            .map(|(i, node)| (node.prefix.clone(), i))
            .collect();
        Ok(PrefixTree {
            class: class.clone(),
            rank: n,
            nodes,
            index,
            null_trigger,
        })
    }

    pub fn class(&self) -> &PatternClass {
        &self.class
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub const ROOT: NodeId = 0;

    pub fn root(&self) -> &TreeNode {
        &self.nodes[Self::ROOT]
    }

    pub fn node(&self, id: NodeId) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, p: &Permutation) -> Option<NodeId> {
        self.index.get(p).copied()
    }

    pub fn find(&self, p: &Permutation) -> Result<NodeId> {
        self.get(p).ok_or_else(|| {
            Error::NotFound(format!("{p} is not a node of the {} tree at rank {}", self.class, self.rank))
        })
    }

    /// Number of class members at the full rank.
    pub fn class_size(&self) -> &BigUint {
        self.root().leaf_count()
    }

    pub fn leaves(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_leaf())
    }

    /// Node ids in an order where every child precedes its parent.
    pub fn bottom_up(&self) -> impl Iterator<Item = NodeId> {
        // children are always allocated after their parent
        (0..self.nodes.len()).rev()
    }

    pub fn strike_prob(&self, p: &Permutation) -> Result<&Tally> {
        Ok(&self.nodes[self.find(p)?].strike)
    }

    /// Trigger tally at `p`, or at the null prefix when `p` is `None`.
    pub fn trigger_prob(&self, p: Option<&Permutation>) -> Result<&Tally> {
        match p {
            None => Ok(&self.null_trigger),
            Some(p) => Ok(&self.nodes[self.find(p)?].trigger),
        }
    }

    pub fn null_trigger(&self) -> &Tally {
        &self.null_trigger
    }

    /// The antichain covering the proper descendants of eligible `p`: its
    /// minimal eligible strict descendants, plus full-size descendants with
    /// no eligible prefix strictly between.
    pub fn successors(&self, p: &Permutation) -> Result<Vec<NodeId>> {
        let id = self.find(p)?;
        if !self.nodes[id].eligible {
            return Err(invalid(format!("{p} is not eligible")));
        }
        let mut out = Vec::new();
        let mut stack: Vec<NodeId> = self.nodes[id].children.iter().rev().copied().collect();
        while let Some(q) = stack.pop() {
            let node = &self.nodes[q];
            if node.eligible || node.is_leaf() {
                out.push(q);
            } else {
                stack.extend(node.children.iter().rev());
            }
        }
        Ok(out)
    }

    /// `set` plus every full-size member not below any of its elements.
    pub fn completion(&self, set: &[Permutation]) -> Result<StrikeSet> {
        for p in set {
            self.find(p)?;
        }
        if !is_antichain(set) {
            return Err(invalid("strike set is not an antichain"));
        }
        let chosen: BTreeSet<NodeId> = set.iter().map(|p| self.index[p]).collect();
        let mut members: Vec<Permutation> = set.to_vec();
        let mut stack = vec![Self::ROOT];
        while let Some(id) = stack.pop() {
            if chosen.contains(&id) {
                continue;
            }
            let node = &self.nodes[id];
            if node.is_leaf() {
                members.push(node.prefix.clone());
            } else {
                stack.extend(node.children.iter().copied());
            }
        }
        Ok(StrikeSet::from_unsorted(members, true))
    }

    /// True iff every leaf lies at or below some member of `set`.
    pub fn covers_all_leaves(&self, set: &[NodeId]) -> bool {
        let chosen: BTreeSet<NodeId> = set.iter().copied().collect();
        self.leaves().all(|leaf| {
            let mut cur = Some(leaf);
            while let Some(id) = cur {
                if chosen.contains(&id) {
                    return true;
                }
                cur = self.nodes[id].parent;
            }
            false
        })
    }

    pub fn to_dump(&self) -> TreeDump {
        TreeDump {
            class: self.class.clone(),
            rank: self.rank,
            null_trigger: self.null_trigger.clone(),
            root: self.dump_node(Self::ROOT),
        }
    }

    fn dump_node(&self, id: NodeId) -> NodeDump {
        let n = &self.nodes[id];
        NodeDump {
            prefix: n.prefix.clone(),
            eligible: n.eligible,
            strike: n.strike.clone(),
            trigger: n.trigger.clone(),
            children: n.children.iter().map(|&c| self.dump_node(c)).collect(),
        }
    }
}

/// Serialized form of a prefix tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDump {
    pub class: PatternClass,
    pub rank: usize,
    pub null_trigger: Tally,
    pub root: NodeDump,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDump {
    pub prefix: Permutation,
    pub eligible: bool,
    pub strike: Tally,
    pub trigger: Tally,
    pub children: Vec<NodeDump>,
}

impl TreeDump {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree dump serializes")
    }

    /// Parses a dump and checks its structural invariants.
    pub fn from_json(s: &str) -> Result<Self> {
        let dump: TreeDump =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("tree JSON: {e}")))?;
        dump.validate()?;
        Ok(dump)
    }

    fn validate(&self) -> Result<()> {
        fn walk(n: &NodeDump, rank: usize, depth: usize) -> Result<()> {
            if n.prefix.len() != depth {
                return Err(Error::Parse(format!("node {} at depth {depth}", n.prefix)));
            }
            if depth > rank {
                return Err(Error::Parse(format!("node {} deeper than rank {rank}", n.prefix)));
            }
            if n.eligible != n.prefix.is_eligible() {
                return Err(Error::Parse(format!("eligibility flag wrong at {}", n.prefix)));
            }
            if n.strike.total() != n.trigger.total() {
                return Err(Error::Parse(format!("strike/trigger totals differ at {}", n.prefix)));
            }
            if !n.children.is_empty() {
                let sum: BigUint = n.children.iter().map(|c| c.strike.total().clone()).sum();
                if &sum != n.strike.total() {
                    return Err(Error::Parse(format!("totals do not partition at {}", n.prefix)));
                }
            }
            for c in &n.children {
                if !n.prefix.is_prefix_of(&c.prefix) {
                    return Err(Error::Parse(format!("{} is not below {}", c.prefix, n.prefix)));
                }
                walk(c, rank, depth + 1)?;
            }
            Ok(())
        }
        walk(&self.root, self.rank, 1)
    }
}

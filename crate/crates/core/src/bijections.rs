//! Structural maps between prefix trees: the 231 max-slide `φ`, removal of
//! value 1, the block map `Υ` from 231- to 132-avoiders, and West's
//! correspondence between the 321- and 312-avoiding trees.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::class::{KnownClass, Limits, PatternClass};
use crate::error::{invalid, Error, Result};
use crate::perm::Permutation;
use crate::tally::Tally;
use crate::tree::{NodeId, PrefixTree};

/// Slides the value `N` right one step at a time, at least once, until the
/// permutation avoids 231.
pub fn phi(pi: &Permutation) -> Result<Permutation> {
    let n = pi.len();
    if n == 0 || pi.last() as usize == n {
        return Err(Error::Domain(format!("{pi} has its maximum in the last position")));
    }
    let av231 = PatternClass::av("231");
    if !av231.contains(pi) {
        return Err(invalid(format!("{pi} contains 231")));
    }
    let mut e = pi.entries().to_vec();
    let mut at = pi.position_of(n as u32).expect("maximum present") - 1;
    loop {
        e.swap(at, at + 1);
        at += 1;
        let cand = Permutation::from_vec_unchecked(e.clone());
        if av231.contains(&cand) {
            return Ok(cand);
        }
        if at + 1 == n {
            unreachable!("the maximum in last place always avoids 231 when the rest does");
        }
    }
}

/// Removes value 1 and flattens.
pub fn pcheck(p: &Permutation) -> Result<Permutation> {
    if !p.has_inversion() {
        return Err(Error::Domain(format!("{p} is increasing")));
    }
    Ok(p.remove_value(1).expect("value 1 present"))
}

/// Inverse of [`pcheck`]: inserts a new minimum at 1-based `position`.
pub fn insert_minimum(p: &Permutation, position: usize) -> Result<Permutation> {
    if position == 0 || position > p.len() + 1 {
        return Err(invalid(format!("position {position} out of range for {p}")));
    }
    let mut e: Vec<u32> = p.entries().iter().map(|v| v + 1).collect();
    e.insert(position - 1, 1);
    Ok(Permutation::from_vec_unchecked(e))
}

/// `Υ`: splits at the maximum, maps both blocks recursively, and swaps their
/// value ranges (left block on top, right block at the bottom).
pub fn upsilon(pi: &Permutation) -> Result<Permutation> {
    if !PatternClass::av("231").contains(pi) {
        return Err(invalid(format!("{pi} contains 231")));
    }
    let mut out = vec![0u32; pi.len()];
    upsilon_into(pi.entries(), 0, &mut out, 0);
    Ok(Permutation::from_vec_unchecked(out))
}

// `src` is a 231-avoider on values `base+1..=base+len`; writes its image on
// the same value range into `out`.
fn upsilon_into(src: &[u32], base: u32, out: &mut [u32], out_base: u32) {
    let len = src.len() as u32;
    if len == 0 {
        return;
    }
    let top = base + len;
    let at = src.iter().position(|&v| v == top).expect("block maximum");
    let k = at as u32;
    out[at] = out_base + len;
    // left block holds the k smallest values, right block the rest
    upsilon_into(&src[..at], base, &mut out[..at], out_base + (len - 1 - k));
    upsilon_into(&src[at + 1..], base + k, &mut out[at + 1..], out_base);
}

/// The 321 ↔ 312 node correspondence at one rank.
#[derive(Debug, Clone)]
pub struct WestMap {
    tree_321: PrefixTree,
    tree_312: PrefixTree,
    forward: HashMap<Permutation, Permutation>,
    backward: HashMap<Permutation, Permutation>,
}

/// Builds the correspondence by walking both generating trees together. With
/// child indices `c_1 < .. < c_m` and `c'_1 < .. < c'_m`, `c_m` pairs with
/// `c'_m` and `c_i` with `c'_{m-i}`.
pub fn west_map(n: usize, limits: &Limits) -> Result<WestMap> {
    let c321 = PatternClass::av("321");
    let c312 = PatternClass::av("312");
    let tree_321 = PrefixTree::build(&c321, n, limits)?;
    let tree_312 = PrefixTree::build(&c312, n, limits)?;
    let mut forward = HashMap::new();
    let mut stack = vec![(Permutation::identity(1), Permutation::identity(1))];
    while let Some((a, b)) = stack.pop() {
        if a.len() < n {
            let ia = c321.child_indices(&a)?;
            let ib = c312.child_indices(&b)?;
            let m = ia.len();
            if ib.len() != m {
                return Err(Error::Domain(format!(
                    "{a} has {m} children but its partner {b} has {}",
                    ib.len()
                )));
            }
            for i in 0..m {
                let j = if i + 1 == m { m - 1 } else { m - 2 - i };
                stack.push((a.append_value(ia[i]), b.append_value(ib[j])));
            }
        }
        forward.insert(a, b);
    }
    let backward = forward.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
    Ok(WestMap {
        tree_321,
        tree_312,
        forward,
        backward,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WestGroup {
    pub parent: (Permutation, Permutation),
    pub children: Vec<(Permutation, Permutation)>,
}

impl WestMap {
    pub fn rank(&self) -> usize {
        self.tree_321.rank()
    }

    pub fn tree_321(&self) -> &PrefixTree {
        &self.tree_321
    }

    pub fn tree_312(&self) -> &PrefixTree {
        &self.tree_312
    }

    pub fn to_312(&self, p: &Permutation) -> Option<&Permutation> {
        self.forward.get(p)
    }

    pub fn to_321(&self, p: &Permutation) -> Option<&Permutation> {
        self.backward.get(p)
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// The full-size members grouped under their size `N-1` parents, parents
    /// in depth-first order of the 321 tree and children by increasing index.
    pub fn table(&self) -> Vec<WestGroup> {
        let t = &self.tree_321;
        let n = t.rank();
        let mut out = Vec::new();
        let mut stack = vec![PrefixTree::ROOT];
        while let Some(id) = stack.pop() {
            let node = t.node(id);
            if node.size() + 1 == n || (n == 1 && id == PrefixTree::ROOT) {
                let pair = |id: NodeId| {
                    let p = t.node(id).prefix.clone();
                    let q = self.forward[&p].clone();
                    (p, q)
                };
                out.push(WestGroup {
                    parent: pair(id),
                    children: node.children.iter().map(|&c| pair(c)).collect(),
                });
                continue;
            }
            stack.extend(node.children.iter().rev());
        }
        out
    }

    /// The table laid out as two indented columns per class.
    pub fn table_text(&self) -> String {
        let mut out = String::from("321-avoiding,,312-avoiding,\n");
        for g in self.table() {
            writeln!(out, "{},,{},", g.parent.0.to_compact(), g.parent.1.to_compact()).unwrap();
            for (a, b) in &g.children {
                writeln!(out, ",{},,{}", a.to_compact(), b.to_compact()).unwrap();
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsomorphismMethod {
    Upsilon,
    West,
    /// Canonical-form comparison of unlabelled trees, for other class pairs.
    ExhaustiveSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeIsomorphismReport {
    pub classes: (PatternClass, PatternClass),
    pub n: usize,
    pub method: IsomorphismMethod,
    pub structure_ok: bool,
    pub strike_values_ok: bool,
    pub first_mismatch: Option<(Permutation, Permutation)>,
}

impl TreeIsomorphismReport {
    pub fn is_isomorphic(&self) -> bool {
        self.structure_ok && self.strike_values_ok
    }
}

/// Largest rank for the unlabelled search on unsupported class pairs.
pub const EXHAUSTIVE_SEARCH_MAX_RANK: usize = 8;

pub fn verify_tree_isomorphism(
    a: &PatternClass,
    b: &PatternClass,
    n: usize,
    limits: &Limits,
) -> Result<TreeIsomorphismReport> {
    use KnownClass::*;
    match (a.known(), b.known()) {
        (Some(Av231), Some(Av132)) | (Some(Av132), Some(Av231)) => {
            let t231 = PrefixTree::build(&PatternClass::av("231"), n, limits)?;
            let t132 = PrefixTree::build(&PatternClass::av("132"), n, limits)?;
            let map: HashMap<Permutation, Permutation> = t231
                .nodes()
                .iter()
                .map(|node| Ok((node.prefix.clone(), upsilon(&node.prefix)?)))
                .collect::<Result<_>>()?;
            let mut r = check_explicit(&t231, &t132, &map);
            r.classes = (a.clone(), b.clone());
            r.method = IsomorphismMethod::Upsilon;
            orient(&mut r, a.known() == Some(Av132));
            Ok(r)
        }
        (Some(Av321), Some(Av312)) | (Some(Av312), Some(Av321)) => {
            let w = west_map(n, limits)?;
            let mut r = check_explicit(&w.tree_321, &w.tree_312, &w.forward);
            r.classes = (a.clone(), b.clone());
            r.method = IsomorphismMethod::West;
            orient(&mut r, a.known() == Some(Av312));
            Ok(r)
        }
        _ => {
            if n > EXHAUSTIVE_SEARCH_MAX_RANK {
                return Err(Error::Limit {
                    what: format!("exhaustive isomorphism search at rank {n}"),
                    limit: EXHAUSTIVE_SEARCH_MAX_RANK as u64,
                });
            }
            let ta = PrefixTree::build(a, n, limits)?;
            let tb = PrefixTree::build(b, n, limits)?;
            let mut r = compare_unlabelled(&ta, &tb);
            r.classes = (a.clone(), b.clone());
            Ok(r)
        }
    }
}

fn orient(r: &mut TreeIsomorphismReport, swap: bool) {
    if swap {
        if let Some((x, y)) = r.first_mismatch.take() {
            r.first_mismatch = Some((y, x));
        }
    }
}

fn check_explicit(
    ta: &PrefixTree,
    tb: &PrefixTree,
    map: &HashMap<Permutation, Permutation>,
) -> TreeIsomorphismReport {
    let mut report = TreeIsomorphismReport {
        classes: (ta.class().clone(), tb.class().clone()),
        n: ta.rank(),
        method: IsomorphismMethod::ExhaustiveSearch,
        structure_ok: ta.len() == tb.len(),
        strike_values_ok: true,
        first_mismatch: None,
    };
    let mut stack = vec![PrefixTree::ROOT];
    while let Some(id) = stack.pop() {
        let node = ta.node(id);
        let image = map.get(&node.prefix);
        let target = image.and_then(|q| tb.get(q));
        let Some(tid) = target else {
            report.structure_ok = false;
            report.first_mismatch.get_or_insert((node.prefix.clone(), image.cloned().unwrap_or_else(|| node.prefix.clone())));
            continue;
        };
        let tnode = tb.node(tid);
        let mapped: BTreeSet<Option<&Permutation>> =
            node.children.iter().map(|&c| map.get(&ta.node(c).prefix)).collect();
        let actual: BTreeSet<Option<&Permutation>> =
            tnode.children.iter().map(|&c| Some(&tb.node(c).prefix)).collect();
        let mut bad = false;
        if mapped != actual || node.children.len() != tnode.children.len() {
            report.structure_ok = false;
            bad = true;
        }
        if node.strike != tnode.strike {
            report.strike_values_ok = false;
            bad = true;
        }
        if bad && report.first_mismatch.is_none() {
            report.first_mismatch = Some((node.prefix.clone(), tnode.prefix.clone()));
        }
        stack.extend(node.children.iter().rev());
    }
    report
}

fn compare_unlabelled(ta: &PrefixTree, tb: &PrefixTree) -> TreeIsomorphismReport {
    let joint_shape = joint_signatures(ta, tb, true);
    let joint_full = joint_signatures(ta, tb, false);
    let structure_ok = joint_shape.0 == joint_shape.1;
    let strike_values_ok = joint_full.0 == joint_full.1;
    let first_mismatch = (!(structure_ok && strike_values_ok))
        .then(|| (ta.root().prefix.clone(), tb.root().prefix.clone()));
    TreeIsomorphismReport {
        classes: (ta.class().clone(), tb.class().clone()),
        n: ta.rank(),
        method: IsomorphismMethod::ExhaustiveSearch,
        structure_ok,
        strike_values_ok,
        first_mismatch,
    }
}

// Canonical root signatures under one shared interning table: a node is
// keyed by its strike tally (unless `shape_only`) and its sorted child keys.
fn joint_signatures(ta: &PrefixTree, tb: &PrefixTree, shape_only: bool) -> (usize, usize) {
    let mut intern: HashMap<(Option<Tally>, Vec<usize>), usize> = HashMap::new();
    let mut root = |t: &PrefixTree| {
        let mut sig = vec![0usize; t.len()];
        for id in t.bottom_up() {
            let node = t.node(id);
            let mut kids: Vec<usize> = node.children.iter().map(|&c| sig[c]).collect();
            kids.sort_unstable();
            let key = ((!shape_only).then(|| node.strike.clone()), kids);
            let next = intern.len();
            sig[id] = *intern.entry(key).or_insert(next);
        }
        sig[PrefixTree::ROOT]
    };
    let ra = root(ta);
    let rb = root(tb);
    (ra, rb)
}

/// `p`-winnable members of the tree: leaves below `p` whose maximum sits at
/// position `|p|`.
pub fn winnable(t: &PrefixTree, p: &Permutation) -> Result<Vec<Permutation>> {
    let id = t.find(p)?;
    let k = p.len();
    let n = t.rank();
    let mut out = Vec::new();
    let mut stack = vec![id];
    while let Some(i) = stack.pop() {
        let node = t.node(i);
        if node.is_leaf() {
            if node.prefix.at(k) as usize == n {
                out.push(node.prefix.clone());
            }
        } else {
            stack.extend(node.children.iter().copied());
        }
    }
    out.sort();
    Ok(out)
}

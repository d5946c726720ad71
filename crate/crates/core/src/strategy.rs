//! Stopping rules, exhaustive evaluation, uniform sampling and seeded
//! simulation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bijections::west_map;
use crate::class::{KnownClass, Limits, PatternClass};
use crate::closed_form::{boundary_sigma, subtree_size_321, BTriangle, Mode, SigmaTable};
use crate::error::{invalid, Error, Result};
use crate::perm::Permutation;
use crate::tally::{ExactRational, Tally};
use crate::tree::{cmp_prefix_order, is_antichain, PrefixTree, StrikeSet};

/// Depth of the threshold tables built when parsing a descriptor.
pub const DEFAULT_SIGMA_DEPTH: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// Accept at the first prefix flattening found in `members`. With
    /// `completed`, reaching the last interview accepts it (the completion).
    Strike {
        members: Vec<Permutation>,
        completed: bool,
    },
    /// Reject at a trigger prefix, then accept the next left-to-right maximum.
    Trigger(TriggerSpec),
    /// Reject the first `k` candidates, then accept the next left-to-right
    /// maximum.
    Positional(usize),
    /// Stop (or trigger) at the first prefix of size `k` whose
    /// value-saturated count reaches `σ(N - k)`.
    Threshold { mode: Mode, sigma: SigmaTable },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriggerSpec {
    Explicit {
        null: bool,
        members: Vec<Permutation>,
    },
    BySize(usize),
}

impl Strategy {
    pub fn strike(members: Vec<Permutation>, completed: bool) -> Result<Self> {
        if !is_antichain(&members) {
            return Err(invalid("strike set is not an antichain"));
        }
        let mut members = members;
        members.sort_by(cmp_prefix_order);
        members.dedup();
        Ok(Strategy::Strike { members, completed })
    }

    pub fn from_strike_set(set: &StrikeSet) -> Result<Self> {
        Strategy::strike(set.members.clone(), false)
    }

    pub fn trigger(null: bool, members: Vec<Permutation>) -> Result<Self> {
        if !is_antichain(&members) {
            return Err(invalid("trigger set is not an antichain"));
        }
        if null && !members.is_empty() {
            return Err(invalid("the null trigger already covers every prefix"));
        }
        let mut members = members;
        members.sort_by(cmp_prefix_order);
        members.dedup();
        Ok(Strategy::Trigger(TriggerSpec::Explicit { null, members }))
    }

    /// Threshold rule backed by the optimal triangle computed to `depth` rows.
    pub fn threshold(mode: Mode, depth: usize) -> Self {
        let sigma = boundary_sigma(&BTriangle::compute(mode, depth.max(1)));
        Strategy::Threshold { mode, sigma }
    }

    pub fn player(&self, n: usize) -> Player<'_> {
        Player {
            strategy: self,
            n,
            step: 0,
            armed: matches!(
                self,
                Strategy::Trigger(TriggerSpec::Explicit { null: true, .. })
                    | Strategy::Trigger(TriggerSpec::BySize(0))
                    | Strategy::Positional(0)
            ),
            done: false,
        }
    }

    /// Plays one interview order. Decisions at step `i` see only the prefix
    /// flattening of the first `i` entries.
    pub fn play(&self, pi: &Permutation) -> Result<PlayTrace> {
        let n = pi.len();
        let mut player = self.player(n);
        let mut decisions = Vec::with_capacity(n);
        for i in 1..=n {
            let prefix = pi.prefix_flattening(i)?;
            let action = player.observe(&prefix)?;
            decisions.push(Decision {
                eligible: prefix.is_eligible(),
                statistic: prefix.value_saturated_count(),
                prefix,
                action,
            });
            if action.stops() {
                return Ok(PlayTrace {
                    stop_position: i,
                    stopped_value_is_max: pi.at(i) as usize == n,
                    decisions,
                });
            }
        }
        Err(Error::Incomplete(pi.to_string()))
    }

    /// Position where play stops, without a trace.
    pub fn stop_position(&self, pi: &Permutation) -> Result<usize> {
        let n = pi.len();
        let mut player = self.player(n);
        for i in 1..=n {
            if player.observe(&pi.prefix_flattening(i)?)?.stops() {
                return Ok(i);
            }
        }
        Err(Error::Incomplete(pi.to_string()))
    }

    pub fn wins(&self, pi: &Permutation) -> Result<bool> {
        Ok(pi.at(self.stop_position(pi)?) as usize == pi.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Continue,
    /// A trigger fired; the next left-to-right maximum will be accepted.
    Arm,
    Accept,
    /// Accepted the last candidate because nothing else fired.
    Forced,
}

impl Action {
    pub fn stops(self) -> bool {
        matches!(self, Action::Accept | Action::Forced)
    }
}

/// Incremental state of one game; fed one prefix flattening per interview.
pub struct Player<'a> {
    strategy: &'a Strategy,
    n: usize,
    step: usize,
    armed: bool,
    done: bool,
}

impl Player<'_> {
    pub fn observe(&mut self, prefix: &Permutation) -> Result<Action> {
        if self.done {
            return Err(invalid("game already stopped"));
        }
        self.step += 1;
        let k = self.step;
        if prefix.len() != k || k > self.n {
            return Err(invalid(format!(
                "expected a prefix of size {k} (rank {}), got {prefix}",
                self.n
            )));
        }
        let action = self.decide(prefix)?;
        if action.stops() {
            self.done = true;
        } else if action == Action::Arm {
            self.armed = true;
        }
        Ok(action)
    }

    fn decide(&self, prefix: &Permutation) -> Result<Action> {
        let (k, n) = (self.step, self.n);
        let eligible = prefix.is_eligible();
        if self.armed {
            if eligible {
                return Ok(Action::Accept);
            }
            return Ok(self.fallback());
        }
        match self.strategy {
            Strategy::Strike { members, completed } => {
                if members.binary_search_by(|m| cmp_prefix_order(m, prefix)).is_ok() {
                    return Ok(Action::Accept);
                }
                if k == n && *completed {
                    return Ok(Action::Forced);
                }
                Ok(Action::Continue)
            }
            Strategy::Trigger(TriggerSpec::Explicit { members, .. }) => {
                if k < n && members.binary_search_by(|m| cmp_prefix_order(m, prefix)).is_ok() {
                    return Ok(Action::Arm);
                }
                Ok(self.fallback())
            }
            Strategy::Trigger(TriggerSpec::BySize(size)) | Strategy::Positional(size) => {
                if k == *size && k < n {
                    return Ok(Action::Arm);
                }
                Ok(self.fallback())
            }
            Strategy::Threshold { mode, sigma } => {
                let fires = match sigma.threshold(n - k, n)? {
                    Some(s) => prefix.value_saturated_count() >= s,
                    None => false,
                };
                match mode {
                    Mode::Strike if fires && eligible => Ok(Action::Accept),
                    Mode::Trigger if fires && k < n => Ok(Action::Arm),
                    _ => Ok(self.fallback()),
                }
            }
        }
    }

    fn fallback(&self) -> Action {
        if self.step == self.n {
            Action::Forced
        } else {
            Action::Continue
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub prefix: Permutation,
    pub eligible: bool,
    /// Value-saturated left-to-right maxima of the prefix.
    pub statistic: usize,
    pub action: Action,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayTrace {
    pub stop_position: usize,
    pub stopped_value_is_max: bool,
    pub decisions: Vec<Decision>,
}

/// Threshold strategy for `class` at rank `n`. On `Av(321)` this is the
/// statistic rule itself; on `Av(312)` it is the rule transported through the
/// West correspondence, returned as an explicit strike or trigger set.
pub fn threshold_strategy(mode: Mode, class: &PatternClass, n: usize, limits: &Limits) -> Result<Strategy> {
    let rule = Strategy::threshold(mode, n.max(2));
    match class.known() {
        Some(KnownClass::Av321) => Ok(rule),
        Some(KnownClass::Av312) => {
            let map = west_map(n, limits)?;
            let tree = map.tree_321();
            let image = |p: &Permutation| map.to_312(p).cloned().expect("west map is total");
            match mode {
                Mode::Strike => {
                    let set = induced_strike_set(&rule, tree)?;
                    Strategy::strike(set.iter().map(image).collect(), false)
                }
                Mode::Trigger => {
                    let (null, set) = induced_trigger_set(&rule, tree)?;
                    Strategy::trigger(null, set.iter().map(image).collect())
                }
            }
        }
        _ => Err(Error::Domain(format!(
            "threshold strategies are defined for Av(321) and Av(312), not {class:?}"
        ))),
    }
}

/// Prefixes at which `s` stops, over every leaf of `tree`.
pub fn induced_strike_set(s: &Strategy, tree: &PrefixTree) -> Result<Vec<Permutation>> {
    let mut out = BTreeSet::new();
    for leaf in tree.leaves() {
        let pi = &tree.node(leaf).prefix;
        let at = s.stop_position(pi)?;
        out.insert(pi.prefix_flattening(at)?);
    }
    let mut v: Vec<Permutation> = out.into_iter().collect();
    v.sort_by(cmp_prefix_order);
    Ok(v)
}

/// Prefixes at which `s` arms, over every leaf of `tree`; the flag reports
/// arming before the first interview. Leaves where play never arms (forced at
/// the last step) contribute their size `N-1` prefix, which is equivalent.
pub fn induced_trigger_set(s: &Strategy, tree: &PrefixTree) -> Result<(bool, Vec<Permutation>)> {
    let n = tree.rank();
    let mut null = false;
    let mut out = BTreeSet::new();
    for leaf in tree.leaves() {
        let pi = &tree.node(leaf).prefix;
        let trace = s.play(pi)?;
        if matches!(
            s,
            Strategy::Trigger(TriggerSpec::Explicit { null: true, .. })
                | Strategy::Trigger(TriggerSpec::BySize(0))
                | Strategy::Positional(0)
        ) {
            null = true;
            continue;
        }
        let armed_at = trace
            .decisions
            .iter()
            .position(|d| d.action == Action::Arm)
            .map_or(n.saturating_sub(1), |i| i + 1);
        if armed_at == 0 {
            null = true;
        } else {
            out.insert(pi.prefix_flattening(armed_at)?);
        }
    }
    let mut v: Vec<Permutation> = out.into_iter().collect();
    v.sort_by(cmp_prefix_order);
    Ok((null, v))
}

/// Exhaustive play over every member of the class at rank `n`.
pub fn exact_success(s: &Strategy, class: &PatternClass, n: usize, limits: &Limits) -> Result<Tally> {
    let members = class.enumerate(n, limits)?;
    let wins = members
        .par_iter()
        .map(|pi| s.wins(pi).map(u64::from))
        .sum::<Result<u64>>()?;
    Tally::new(wins, members.len() as u64)
}

/// Exactly uniform sampling by unranking a uniform integer below the class
/// size along the generating tree.
pub struct Sampler {
    class: PatternClass,
    n: usize,
    total: BigUint,
    counts: Counts,
}

enum Counts {
    Unrestricted,
    Av321,
    Tree(Box<PrefixTree>),
}

impl Sampler {
    pub fn new(class: &PatternClass, n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(invalid("rank must be at least 1"));
        }
        let counts = match class.known() {
            Some(KnownClass::Unrestricted) => Counts::Unrestricted,
            Some(KnownClass::Av321) => Counts::Av321,
            _ => Counts::Tree(Box::new(PrefixTree::build(class, n, limits)?)),
        };
        let total = match &counts {
            Counts::Unrestricted => factorial(n),
            Counts::Av321 => subtree_size_321(&Permutation::identity(1), n)?,
            Counts::Tree(t) => t.class_size().clone(),
        };
        Ok(Sampler {
            class: class.clone(),
            n,
            total,
            counts,
        })
    }

    pub fn class(&self) -> &PatternClass {
        &self.class
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    fn children(&self, p: &Permutation) -> Vec<(Permutation, BigUint)> {
        let n = self.n;
        match &self.counts {
            Counts::Unrestricted => {
                let each = factorial(n) / factorial(p.len() + 1);
                (1..=p.len() as u32 + 1)
                    .map(|c| (p.append_value(c), each.clone()))
                    .collect()
            }
            Counts::Av321 => self
                .class
                .child_indices_unchecked(p)
                .into_iter()
                .map(|c| {
                    let child = p.append_value(c);
                    let size = subtree_size_321(&child, n).expect("child is a member");
                    (child, size)
                })
                .collect(),
            Counts::Tree(t) => {
                let id = t.get(p).expect("walk stays inside the tree");
                t.node(id)
                    .children
                    .iter()
                    .map(|&c| {
                        let node = t.node(c);
                        (node.prefix.clone(), node.leaf_count().clone())
                    })
                    .collect()
            }
        }
    }

    /// The member of rank `r` (0-based) in depth-first order.
    pub fn unrank(&self, r: &BigUint) -> Result<Permutation> {
        if r >= &self.total {
            return Err(invalid(format!("rank {r} is not below {}", self.total)));
        }
        let mut r = r.clone();
        let mut p = Permutation::identity(1);
        while p.len() < self.n {
            let mut next = None;
            for (child, count) in self.children(&p) {
                if r < count {
                    next = Some(child);
                    break;
                }
                r -= count;
            }
            p = next.expect("counts partition the subtree");
        }
        Ok(p)
    }

    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let r = rng.gen_biguint_below(&self.total);
        self.unrank(&r).expect("rank below total")
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product::<BigUint>().max(BigUint::one())
}

/// Trials per independently seeded block.
pub const SIM_BLOCK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub strategy: String,
    pub class: PatternClass,
    pub n: usize,
    pub trials: u64,
    pub wins: u64,
    pub estimate: ExactRational,
    pub std_error: f64,
    pub seed: u64,
}

/// Monte Carlo estimate. Block `b` draws from ChaCha8 seeded with `seed` on
/// stream `b`, so the result does not depend on how blocks are scheduled.
pub fn simulate(s: &Strategy, sampler: &Sampler, trials: u64, seed: u64) -> Result<SimReport> {
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    let blocks = trials.div_ceil(SIM_BLOCK);
    let wins = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let len = SIM_BLOCK.min(trials - b * SIM_BLOCK);
            let mut w = 0u64;
            for _ in 0..len {
                if s.wins(&sampler.sample(&mut rng))? {
                    w += 1;
                }
            }
            Ok(w)
        })
        .sum::<Result<u64>>()?;
    let estimate = ExactRational::new(wins, trials)?;
    let p = wins as f64 / trials as f64;
    Ok(SimReport {
        strategy: s.to_string(),
        class: sampler.class().clone(),
        n: sampler.rank(),
        trials,
        wins,
        estimate,
        std_error: (p * (1.0 - p) / trials as f64).sqrt(),
        seed,
    })
}

impl SimReport {
    /// `|estimate - exact|` in units of `sqrt(p(1-p)/trials)` at the exact `p`.
    pub fn z_score(&self, exact: &Tally) -> f64 {
        let p = exact.to_f64();
        let se = (p * (1.0 - p) / self.trials as f64).sqrt();
        let diff = (self.estimate.to_f64() - p).abs();
        if se == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / se
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn set(items: impl Iterator<Item = String>) -> String {
            items.collect::<Vec<_>>().join(",")
        }
        let lit = |p: &Permutation| {
            if p.len() <= 9 {
                p.to_compact()
            } else {
                format!("[{}]", p.to_compact())
            }
        };
        match self {
            Strategy::Strike { members, .. } => {
                write!(f, "strike:{{{}}}", set(members.iter().map(lit)))
            }
            Strategy::Trigger(TriggerSpec::BySize(k)) => write!(f, "trigger:{{size={k}}}"),
            Strategy::Trigger(TriggerSpec::Explicit { null, members }) => {
                let mut items: Vec<String> = members.iter().map(lit).collect();
                if *null {
                    items.push("null".into());
                }
                write!(f, "trigger:{{{}}}", items.join(","))
            }
            Strategy::Positional(k) => write!(f, "positional:{k}"),
            Strategy::Threshold { mode, .. } => write!(f, "threshold:{mode}"),
        }
    }
}

/// Splits on commas outside square brackets.
fn split_items(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.retain(|x| !x.is_empty());
    out
}

fn braced(body: &str) -> Result<&str> {
    body.trim()
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected {{...}}, got {body:?}")))
}

impl FromStr for Strategy {
    type Err = Error;

    /// Parses `strike:{12,213}`, `trigger:{size=2}`, `trigger:{1,21,null}`,
    /// `positional:3`, `threshold:strike` or `threshold:trigger`. Strike sets
    /// from descriptors are completed implicitly.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, body) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("strategy descriptor {s:?} has no kind")))?;
        let parse_err = |e: Error| Error::Parse(format!("strategy {s:?}: {e}"));
        match kind.trim() {
            "strike" => {
                let members = split_items(braced(body)?)
                    .into_iter()
                    .map(str::parse)
                    .collect::<Result<Vec<Permutation>>>()
                    .map_err(parse_err)?;
                Strategy::strike(members, true).map_err(parse_err)
            }
            "trigger" => {
                let inner = braced(body)?;
                if let Some(k) = inner.trim().strip_prefix("size=") {
                    let k = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad trigger size in {s:?}")))?;
                    return Ok(Strategy::Trigger(TriggerSpec::BySize(k)));
                }
                let mut null = false;
                let mut members = Vec::new();
                for item in split_items(inner) {
                    if item == "null" || item == "∅" {
                        null = true;
                    } else {
                        members.push(item.parse().map_err(parse_err)?);
                    }
                }
                Strategy::trigger(null, members).map_err(parse_err)
            }
            "positional" => body
                .trim()
                .parse()
                .map(Strategy::Positional)
                .map_err(|_| Error::Parse(format!("bad positional index in {s:?}"))),
            "threshold" => Ok(Strategy::threshold(body.parse()?, DEFAULT_SIGMA_DEPTH)),
            other => Err(Error::Parse(format!("unknown strategy kind {other:?}"))),
        }
    }
}

impl Serialize for Strategy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Strategy {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

//! Permutations in one-line notation and the statistics the game observes.
//!
//! Positions and values are 1-based throughout. A permutation of size `n`
//! holds each of `1..=n` exactly once.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// An arrangement of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Validates that `entries` is a bijection on `1..=n`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid("permutation must be nonempty"));
        }
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            let idx = v as usize;
            if idx == 0 || idx > n {
                return Err(invalid(format!("value {v} out of range 1..={n}")));
            }
            if seen[idx] {
                return Err(invalid(format!("value {v} repeated")));
            }
            seen[idx] = true;
        }
        Ok(Permutation(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation(entries)
    }

    /// The increasing permutation `[12⋯n]`.
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn last(&self) -> u32 {
        *self.0.last().expect("nonempty")
    }

    /// 1-based position of `value`.
    pub fn position_of(&self, value: u32) -> Option<usize> {
        self.0.iter().position(|&v| v == value).map(|p| p + 1)
    }

    /// Flattening of the first `i` entries.
    pub fn prefix_flattening(&self, i: usize) -> Result<Permutation> {
        if i == 0 || i > self.len() {
            return Err(invalid(format!(
                "prefix length {i} out of range 1..={}",
                self.len()
            )));
        }
        Ok(flatten_unchecked(&self.0[..i]))
    }

    /// True iff `rho` occurs as a pattern.
    pub fn contains(&self, rho: &Permutation) -> bool {
        contains_pattern(self, rho)
    }

    pub fn avoids(&self, rho: &Permutation) -> bool {
        !contains_pattern(self, rho)
    }

    /// Positions of the left-to-right maxima, ascending.
    pub fn ltr_maxima(&self) -> Vec<usize> {
        let mut best = 0;
        let mut out = Vec::new();
        for (i, &v) in self.0.iter().enumerate() {
            if v > best {
                best = v;
                out.push(i + 1);
            }
        }
        out
    }

    /// True iff the last entry is a left-to-right maximum, i.e. it equals the size.
    pub fn is_eligible(&self) -> bool {
        self.last() as usize == self.len()
    }

    /// Number of value-saturated left-to-right maxima: the largest `i` with
    /// `k-i+1, …, k` all left-to-right maxima, where `k` is the size.
    pub fn value_saturated_count(&self) -> usize {
        let k = self.len();
        let mut is_max = vec![false; k + 1];
        let mut best = 0;
        for &v in &self.0 {
            if v > best {
                best = v;
                is_max[v as usize] = true;
            }
        }
        (1..=k).rev().take_while(|&v| is_max[v]).count()
    }

    pub fn has_inversion(&self) -> bool {
        self.0.windows(2).any(|w| w[0] > w[1])
    }

    /// The child obtained by appending `c` as the new last entry and
    /// incrementing every existing value `>= c`.
    pub fn append_value(&self, c: u32) -> Permutation {
        debug_assert!(c >= 1 && c as usize <= self.len() + 1);
        let mut v: Vec<u32> = self
            .0
            .iter()
            .map(|&x| if x >= c { x + 1 } else { x })
            .collect();
        v.push(c);
        Permutation(v)
    }

    /// Removes the entry of value `value` and flattens; `None` when the
    /// result would be empty.
    pub fn remove_value(&self, value: u32) -> Option<Permutation> {
        if self.len() == 1 {
            return None;
        }
        let v = self
            .0
            .iter()
            .filter(|&&x| x != value)
            .map(|&x| if x > value { x - 1 } else { x })
            .collect();
        Some(Permutation(v))
    }

    /// True iff `other` has `self` as its prefix flattening.
    pub fn is_prefix_of(&self, other: &Permutation) -> bool {
        self.len() <= other.len() && flatten_equals(&other.0[..self.len()], &self.0)
    }

    /// Compact form: digits when every value is a single digit, commas otherwise.
    pub fn to_compact(&self) -> String {
        if self.len() <= 9 {
            self.0.iter().map(|v| char::from(b'0' + *v as u8)).collect()
        } else {
            self.0
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_compact())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"2516374"`, `"[2516374]"` or `"10,2,1,…"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(s)
            .trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation literal".into()));
        }
        let entries: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad entry {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(entries).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_compact())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Flattening of a sequence of distinct integers.
pub fn flatten<T: Ord + Copy>(seq: &[T]) -> Result<Permutation> {
    if seq.is_empty() {
        return Err(invalid("cannot flatten an empty sequence"));
    }
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by_key(|&i| seq[i]);
    if order.windows(2).any(|w| seq[w[0]] == seq[w[1]]) {
        return Err(invalid("flatten requires distinct entries"));
    }
    let mut out = vec![0u32; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    Ok(Permutation(out))
}

fn flatten_unchecked(seq: &[u32]) -> Permutation {
    let mut out = vec![0u32; seq.len()];
    for (i, &v) in seq.iter().enumerate() {
        out[i] = 1 + seq.iter().filter(|&&w| w < v).count() as u32;
    }
    Permutation(out)
}

fn flatten_equals(seq: &[u32], pattern: &[u32]) -> bool {
    debug_assert_eq!(seq.len(), pattern.len());
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if (seq[i] < seq[j]) != (pattern[i] < pattern[j]) {
                return false;
            }
        }
    }
    true
}

/// True iff some subsequence of `pi` flattens to `rho`.
pub fn contains_pattern(pi: &Permutation, rho: &Permutation) -> bool {
    if rho.len() > pi.len() {
        return false;
    }
    match rho.len() {
        1 => true,
        2 => {
            if rho.0[0] < rho.0[1] {
                !is_decreasing(&pi.0)
            } else {
                pi.has_inversion()
            }
        }
        3 => contains_size3(&pi.0, [rho.0[0], rho.0[1], rho.0[2]]),
        _ => {
            let mut chosen = Vec::with_capacity(rho.len());
            search(&pi.0, &rho.0, 0, &mut chosen)
        }
    }
}

fn is_decreasing(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}

/// Quadratic scan with the middle entry of the pattern fixed.
fn contains_size3(p: &[u32], rho: [u32; 3]) -> bool {
    let n = p.len();
    for j in 1..n.saturating_sub(1) {
        let y = p[j];
        let (left, right) = (&p[..j], &p[j + 1..]);
        let found = match rho {
            // x < y < z
            [1, 2, 3] => left.iter().any(|&x| x < y) && right.iter().any(|&z| z > y),
            // x > y > z
            [3, 2, 1] => left.iter().any(|&x| x > y) && right.iter().any(|&z| z < y),
            // x < z < y
            [1, 3, 2] => {
                let lo = left.iter().filter(|&&x| x < y).min();
                let hi = right.iter().filter(|&&z| z < y).max();
                matches!((lo, hi), (Some(a), Some(b)) if a < b)
            }
            // z < x < y
            [2, 3, 1] => {
                let hi = left.iter().filter(|&&x| x < y).max();
                let lo = right.iter().filter(|&&z| z < y).min();
                matches!((hi, lo), (Some(a), Some(b)) if b < a)
            }
            // y < x < z
            [2, 1, 3] => {
                let lo = left.iter().filter(|&&x| x > y).min();
                let hi = right.iter().filter(|&&z| z > y).max();
                matches!((lo, hi), (Some(a), Some(b)) if a < b)
            }
            // y < z < x
            [3, 1, 2] => {
                let hi = left.iter().filter(|&&x| x > y).max();
                let lo = right.iter().filter(|&&z| z > y).min();
                matches!((hi, lo), (Some(a), Some(b)) if b < a)
            }
            _ => unreachable!("not a permutation of size 3"),
        };
        if found {
            return true;
        }
    }
    false
}

/// Backtracking subsequence search; each newly chosen entry must agree in
/// relative order with every previously chosen one.
fn search(p: &[u32], rho: &[u32], start: usize, chosen: &mut Vec<usize>) -> bool {
    let m = chosen.len();
    if m == rho.len() {
        return true;
    }
    // leave room for the remaining pattern entries
    let last_start = p.len() - (rho.len() - m);
    for pos in start..=last_start {
        let v = p[pos];
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(t, &q)| (p[q] < v) == (rho[t] < rho[m]));
        if ok {
            chosen.push(pos);
            if search(p, rho, pos + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// True iff `pi` contains `rho` using its last entry as the last entry of
/// the occurrence.
pub(crate) fn contains_pattern_ending_last(pi: &[u32], rho: &[u32]) -> bool {
    let (n, m) = (pi.len(), rho.len());
    if m > n {
        return false;
    }
    if m == 1 {
        return true;
    }
    let last = pi[n - 1];
    let last_rho = rho[m - 1];
    // candidates for the first m-1 pattern entries must sit on the correct
    // side of the fixed last entry
    let head: Vec<u32> = pi[..n - 1].to_vec();
    let mut chosen = Vec::with_capacity(m);
    search_with_last(&head, rho, last, last_rho, 0, &mut chosen)
}

fn search_with_last(
    p: &[u32],
    rho: &[u32],
    last: u32,
    last_rho: u32,
    start: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let m = chosen.len();
    if m == rho.len() - 1 {
        return true;
    }
    let need = rho.len() - 1 - m;
    if p.len() < need {
        return false;
    }
    for pos in start..=p.len() - need {
        let v = p[pos];
        if (v < last) != (rho[m] < last_rho) {
            continue;
        }
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(t, &q)| (p[q] < v) == (rho[t] < rho[m]));
        if ok {
            chosen.push(pos);
            if search_with_last(p, rho, last, last_rho, pos + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(flatten(&[5, 1, 6]).unwrap(), p("213"));
        assert_eq!(flatten(&[7]).unwrap(), p("1"));
        assert_eq!(flatten(&[2, 5, 1, 6, 3]).unwrap(), p("24153"));
        assert!(matches!(flatten(&[3, 1, 3]), Err(Error::InvalidInput(_))));
        assert!(flatten::<u32>(&[]).is_err());
    }

    #[test]
    fn prefix_flattening_examples() {
        let pi = p("2516374");
        assert_eq!(pi.prefix_flattening(3).unwrap(), p("231"));
        assert_eq!(pi.prefix_flattening(5).unwrap(), p("24153"));
        assert_eq!(pi.prefix_flattening(7).unwrap(), pi);
        assert!(pi.prefix_flattening(0).is_err());
        assert!(pi.prefix_flattening(8).is_err());
        let seen: Vec<String> = (1..=7)
            .map(|i| pi.prefix_flattening(i).unwrap().to_string())
            .collect();
        assert_eq!(
            seen,
            ["1", "12", "231", "2314", "24153", "241536", "2516374"]
        );
    }

    #[test]
    fn containment_examples() {
        assert!(p("574239618").contains(&p("321")));
        assert!(p("574239618").avoids(&p("54321")));
        assert!(p("123").avoids(&p("321")));
        assert!(p("132").contains(&p("12")));
        assert!(p("321").avoids(&p("12")));
        assert!(p("1").avoids(&p("12")));
    }

    #[test]
    fn ltr_maxima_examples() {
        assert_eq!(p("2516374").ltr_maxima(), vec![1, 2, 4, 6]);
        assert_eq!(p("123").ltr_maxima(), vec![1, 2, 3]);
        assert_eq!(p("321").ltr_maxima(), vec![1]);
    }

    #[test]
    fn value_saturated_examples() {
        assert_eq!(p("1234").value_saturated_count(), 4);
        assert_eq!(p("1324").value_saturated_count(), 2);
        assert_eq!(p("2314").value_saturated_count(), 3);
        assert_eq!(p("2143").value_saturated_count(), 1);
    }

    #[test]
    fn inversion_examples() {
        assert!(!p("12").has_inversion());
        assert!(p("1324").has_inversion());
        assert!(!p("1").has_inversion());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("[213]"), p("213"));
        let big = p("10,2,1,3,4,5,6,7,8,9");
        assert_eq!(big.len(), 10);
        assert_eq!(big.to_string(), "10,2,1,3,4,5,6,7,8,9");
        assert!("1a".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert!("113".parse::<Permutation>().is_err());
        assert!("0".parse::<Permutation>().is_err());
    }

    #[test]
    fn append_and_remove() {
        assert_eq!(p("213").append_value(2), p("3142"));
        assert_eq!(p("213").append_value(4), p("2134"));
        assert_eq!(p("2143").remove_value(1), Some(p("132")));
        assert_eq!(p("1").remove_value(1), None);
    }

    #[test]
    fn contains_ending_last_matches_full_search() {
        let pats = [p("321"), p("231"), p("1234"), p("2143")];
        for n in 1..=6u32 {
            for perm in crate::class::PatternClass::unrestricted().members(n as usize) {
                for rho in &pats {
                    let e = perm.entries();
                    let head_avoids = e.len() == 1
                        || !contains_pattern(&flatten_unchecked(&e[..e.len() - 1]), rho);
                    if head_avoids {
                        assert_eq!(
                            contains_pattern_ending_last(e, rho.entries()),
                            contains_pattern(&perm, rho),
                            "{perm} {rho}"
                        );
                    }
                }
            }
        }
    }
}

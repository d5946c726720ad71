//! Pattern classes and their generating trees.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::numbers;
use crate::perm::{contains_pattern, contains_pattern_ending_last, Permutation};

/// The classes with closed-form identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KnownClass {
    Unrestricted,
    Av123,
    Av132,
    Av213,
    Av231,
    Av312,
    Av321,
}

/// The set of permutations avoiding every forbidden pattern.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternClass {
    forbidden: Vec<Permutation>,
}

/// Resource guard applied to enumeration and tree building.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest class size (number of members of the requested size) allowed.
    pub max_class_size: u64,
    /// Largest rank for which a prefix tree is materialized.
    pub max_tree_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_class_size: 5_000_000,
            max_tree_rank: 12,
        }
    }
}

impl PatternClass {
    pub fn unrestricted() -> Self {
        PatternClass { forbidden: vec![] }
    }

    pub fn avoiding(pattern: Permutation) -> Self {
        PatternClass {
            forbidden: vec![pattern],
        }
    }

    pub fn avoiding_all(mut patterns: Vec<Permutation>) -> Self {
        patterns.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        patterns.dedup();
        PatternClass {
            forbidden: patterns,
        }
    }

    /// Shorthand for `Av(pattern)` from a compact literal such as `"321"`.
    pub fn av(pattern: &str) -> Self {
        PatternClass::avoiding(pattern.parse().expect("valid pattern literal"))
    }

    pub fn forbidden(&self) -> &[Permutation] {
        &self.forbidden
    }

    pub fn known(&self) -> Option<KnownClass> {
        match self.forbidden.as_slice() {
            [] => Some(KnownClass::Unrestricted),
            [p] => match p.entries() {
                [1, 2, 3] => Some(KnownClass::Av123),
                [1, 3, 2] => Some(KnownClass::Av132),
                [2, 1, 3] => Some(KnownClass::Av213),
                [2, 3, 1] => Some(KnownClass::Av231),
                [3, 1, 2] => Some(KnownClass::Av312),
                [3, 2, 1] => Some(KnownClass::Av321),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn contains(&self, pi: &Permutation) -> bool {
        self.forbidden.iter().all(|rho| !contains_pattern(pi, rho))
    }

    /// Number of members of size `n`, when a closed form is known.
    pub fn closed_size(&self, n: usize) -> Option<BigUint> {
        match self.known()? {
            KnownClass::Unrestricted => Some((1..=n as u64).map(BigUint::from).product()),
            _ => Some(numbers::catalan(n)),
        }
    }

    /// Values `c` such that appending `c` (and shifting larger values up)
    /// keeps `p` in the class. Returned ascending.
    pub fn child_indices(&self, p: &Permutation) -> Result<Vec<u32>> {
        if !self.contains(p) {
            return Err(invalid(format!("{p} is not a member of {self}")));
        }
        Ok(self.child_indices_unchecked(p))
    }

    pub(crate) fn child_indices_unchecked(&self, p: &Permutation) -> Vec<u32> {
        let k = p.len() as u32;
        match self.known() {
            Some(KnownClass::Av321) => {
                // everything at or below the largest inversion bottom is excluded
                let floor = largest_inversion_bottom(p.entries());
                (floor + 1..=k + 1).collect()
            }
            Some(KnownClass::Av312) => {
                let mut excluded = vec![false; k as usize + 2];
                let e = p.entries();
                for i in 0..e.len() {
                    for j in i + 1..e.len() {
                        let (b, a) = (e[i], e[j]);
                        if b > a {
                            for x in a + 1..=b {
                                excluded[x as usize] = true;
                            }
                        }
                    }
                }
                (1..=k + 1).filter(|&c| !excluded[c as usize]).collect()
            }
            Some(KnownClass::Unrestricted) => (1..=k + 1).collect(),
            _ => self.child_indices_generic(p),
        }
    }

    /// Candidate test that only looks for occurrences using the new last entry.
    pub fn child_indices_generic(&self, p: &Permutation) -> Vec<u32> {
        let k = p.len() as u32;
        (1..=k + 1)
            .filter(|&c| {
                let child = p.append_value(c);
                self.forbidden
                    .iter()
                    .all(|rho| !contains_pattern_ending_last(child.entries(), rho.entries()))
            })
            .collect()
    }

    /// Child indices by full membership re-test of every candidate child.
    pub fn child_indices_by_membership(&self, p: &Permutation) -> Vec<u32> {
        let k = p.len() as u32;
        (1..=k + 1)
            .filter(|&c| self.contains(&p.append_value(c)))
            .collect()
    }

    /// Depth-first walk of the generating tree, yielding the members of size `n`.
    pub fn members(&self, n: usize) -> Members<'_> {
        Members {
            class: self,
            n,
            stack: if n == 0 {
                vec![]
            } else {
                vec![Permutation::identity(1)]
            },
        }
    }

    /// All members of size `n`, guarded by `limits.max_class_size`.
    pub fn enumerate(&self, n: usize, limits: &Limits) -> Result<Vec<Permutation>> {
        if n == 0 {
            return Err(invalid("enumeration size must be at least 1"));
        }
        if let Some(size) = self.closed_size(n) {
            if size > BigUint::from(limits.max_class_size) {
                return Err(Error::Limit {
                    what: format!("class {self} at size {n} ({size} members)"),
                    limit: limits.max_class_size,
                });
            }
        }
        let mut out = Vec::new();
        for pi in self.members(n) {
            if out.len() as u64 >= limits.max_class_size {
                return Err(Error::Limit {
                    what: format!("class {self} at size {n}"),
                    limit: limits.max_class_size,
                });
            }
            out.push(pi);
        }
        Ok(out)
    }
}

pub(crate) fn largest_inversion_bottom(e: &[u32]) -> u32 {
    let mut best_before = 0u32;
    let mut floor = 0u32;
    for &v in e {
        if v < best_before {
            floor = floor.max(v);
        }
        best_before = best_before.max(v);
    }
    floor
}

/// Iterator over class members of a fixed size.
pub struct Members<'a> {
    class: &'a PatternClass,
    n: usize,
    stack: Vec<Permutation>,
}

impl Iterator for Members<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        while let Some(p) = self.stack.pop() {
            if p.len() == self.n {
                if self.class.contains_cheap(&p) {
                    return Some(p);
                }
                continue;
            }
            // push in reverse so that smaller indices come out first
            for c in self.class.child_indices_unchecked(&p).into_iter().rev() {
                self.stack.push(p.append_value(c));
            }
        }
        None
    }
}

impl PatternClass {
    // The root [1] is only a member when no forbidden pattern has size 1.
    fn contains_cheap(&self, p: &Permutation) -> bool {
        p.len() > 1 || self.forbidden.iter().all(|r| r.len() > 1)
    }
}

impl fmt::Display for PatternClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.forbidden.is_empty() {
            return f.write_str("none");
        }
        let parts: Vec<String> = self.forbidden.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl fmt::Debug for PatternClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Av({self})")
    }
}

impl FromStr for PatternClass {
    type Err = Error;

    /// `"none"` for the unrestricted class, otherwise patterns joined by `+`
    /// (e.g. `"321"`, `"av(231)"`, `"321+1234"`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("none") || s.eq_ignore_ascii_case("unrestricted") {
            return Ok(PatternClass::unrestricted());
        }
        let inner = s
            .strip_prefix("av(")
            .or_else(|| s.strip_prefix("Av("))
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        let pats = inner
            .split('+')
            .map(str::parse)
            .collect::<Result<Vec<Permutation>>>()?;
        Ok(PatternClass::avoiding_all(pats))
    }
}

impl Serialize for PatternClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PatternClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn child_index_examples() {
        assert_eq!(
            PatternClass::av("321").child_indices(&p("213")).unwrap(),
            vec![2, 3, 4]
        );
        assert_eq!(
            PatternClass::av("312").child_indices(&p("213")).unwrap(),
            vec![1, 3, 4]
        );
        for class in ["321", "312"] {
            assert_eq!(
                PatternClass::av(class)
                    .child_indices(&Permutation::identity(5))
                    .unwrap(),
                vec![1, 2, 3, 4, 5, 6]
            );
        }
        assert!(PatternClass::av("321").child_indices(&p("321")).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let lim = Limits::default();
        let av321 = PatternClass::av("321").enumerate(4, &lim).unwrap();
        assert_eq!(av321.len(), 14);
        assert!(av321.contains(&p("2314")));
        assert!(!av321.contains(&p("3214")));

        let mut av231: Vec<String> = PatternClass::av("231")
            .enumerate(3, &lim)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        av231.sort();
        assert_eq!(av231, ["123", "132", "213", "312", "321"]);

        assert_eq!(
            PatternClass::unrestricted().enumerate(3, &lim).unwrap().len(),
            6
        );
    }

    #[test]
    fn enumerate_respects_cap() {
        let lim = Limits {
            max_class_size: 100,
            ..Limits::default()
        };
        assert!(matches!(
            PatternClass::unrestricted().enumerate(6, &lim),
            Err(Error::Limit { .. })
        ));
        let generic = PatternClass::from_str("4321+1234").unwrap();
        let small = Limits {
            max_class_size: 10,
            ..Limits::default()
        };
        assert!(matches!(
            generic.enumerate(5, &small),
            Err(Error::Limit { .. })
        ));
    }

    #[test]
    fn class_parse_and_display() {
        assert_eq!(PatternClass::from_str("none").unwrap().known(), Some(KnownClass::Unrestricted));
        assert_eq!(PatternClass::from_str("av(231)").unwrap().known(), Some(KnownClass::Av231));
        let c = PatternClass::from_str("1234+321").unwrap();
        assert_eq!(c.to_string(), "321+1234");
        assert_eq!(c.known(), None);
        assert!(PatternClass::from_str("12a").is_err());
    }
}

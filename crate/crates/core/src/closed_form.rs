//! Ballot-number closed forms for 321-avoiding interview orders and the
//! remaining size-3 classes, the B° triangles, and threshold extraction.
//!
//! Triangle entries are kept as numerators; the entry at `(N, k)` is always
//! over `ballot(N, k)`.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::class::PatternClass;
use crate::error::{invalid, Error, Result};
use crate::numbers::{ballot, ballot_signed, binomial, catalan, shifted_ballot};
use crate::perm::Permutation;
use crate::tally::{ExactRational, Tally};

fn check_321(p: &Permutation, n: usize) -> Result<()> {
    if p.len() > n {
        return Err(invalid(format!("prefix {p} is longer than rank {n}")));
    }
    if !PatternClass::av("321").contains(p) {
        return Err(invalid(format!("{p} contains 321")));
    }
    Ok(())
}

/// Strips value 1 from `p` until it is increasing. Returns the increasing
/// size reached and the number of strips.
fn reduce_321(p: &Permutation) -> (usize, usize) {
    let mut cur = p.clone();
    let mut steps = 0;
    while cur.has_inversion() {
        cur = cur.remove_value(1).expect("size at least 2");
        steps += 1;
    }
    (cur.len(), steps)
}

/// Number of members of `Av_N(321)` with prefix flattening `p`.
pub fn subtree_size_321(p: &Permutation, n: usize) -> Result<BigUint> {
    check_321(p, n)?;
    let (k, steps) = reduce_321(p);
    ballot(n - steps, k)
}

pub fn strike_prob_321(p: &Permutation, n: usize) -> Result<Tally> {
    check_321(p, n)?;
    let (k, steps) = reduce_321(p);
    let total = ballot(n - steps, k)?;
    if !p.is_eligible() {
        return Tally::new(0u8, total);
    }
    let m = n - steps;
    Tally::new(binomial(m as i64 - 1, k as i64 - 1), total)
}

/// `T_N(p)`; `None` is the null prefix.
pub fn trigger_prob_321(p: Option<&Permutation>, n: usize) -> Result<Tally> {
    let (k, m) = match p {
        None => (0, n),
        Some(p) => {
            check_321(p, n)?;
            let (k, steps) = reduce_321(p);
            (k, n - steps)
        }
    };
    Tally::new(trigger_numerator(m, k), ballot(m, k)?)
}

fn trigger_numerator(n: usize, k: usize) -> BigUint {
    let (n, k) = (n as i64, k as i64);
    binomial(n - 1, k + 1) * k as u64 + binomial(n - 1, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strike,
    Trigger,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Strike => "strike",
            Mode::Trigger => "trigger",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "strike" => Ok(Mode::Strike),
            "trigger" => Ok(Mode::Trigger),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// Threshold rules indexed by `i = N - k`: entry `(N, k)` is selected iff
/// `rules[N-k]` is `Some(s)` with `k >= s`. Indices past the end never select.
pub type Rules = Vec<Option<usize>>;

/// One row of a B° triangle. Vectors are indexed by `k` in `0..=n`;
/// index 0 is unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleRow {
    pub n: usize,
    /// B° numerators: best value of the open subforest under `[12..k]`.
    pub interior: Vec<BigUint>,
    /// Strike or trigger numerators at `[12..k]` itself.
    pub value: Vec<BigUint>,
    /// Whether the strategy stops (or triggers) at `[12..k]`.
    pub selected: Vec<bool>,
}

impl TriangleRow {
    /// Closed value: the better of stopping at `[12..k]` and continuing.
    pub fn closed(&self, k: usize) -> &BigUint {
        if self.selected[k] {
            &self.value[k]
        } else {
            &self.interior[k]
        }
    }

    /// `(N, k)` is optimal when stopping there is at least as good as
    /// continuing. Trigger mode has no entry at `k = N`.
    pub fn is_optimal(&self, mode: Mode, k: usize) -> bool {
        if mode == Mode::Trigger && k == self.n {
            return false;
        }
        self.value[k] >= self.interior[k]
    }
}

/// Streams triangle rows `1, 2, 3, ...`, holding only the previous row.
pub struct RowStream {
    mode: Mode,
    rules: Option<Rules>,
    prev: Option<TriangleRow>,
    // row n-1 of Pascal's triangle
    pascal: Vec<BigUint>,
}

impl RowStream {
    pub fn new(mode: Mode, rules: Option<Rules>) -> Self {
        RowStream {
            mode,
            rules,
            prev: None,
            pascal: vec![BigUint::one()],
        }
    }

    fn select(&self, n: usize, k: usize, value: &BigUint, interior: &BigUint) -> bool {
        select(self.mode, self.rules.as_ref(), n, k, value, interior)
    }
}

fn select(mode: Mode, rules: Option<&Rules>, n: usize, k: usize, value: &BigUint, interior: &BigUint) -> bool {
    if mode == Mode::Trigger {
        if k == n {
            return false;
        }
        if k + 1 == n {
            // triggering at N-1 and being forced at N are the same play
            return true;
        }
    }
    match rules {
        None => value >= interior,
        Some(rules) => matches!(rules.get(n - k), Some(Some(s)) if k >= *s),
    }
}

// Stop (or trigger) numerator at `[12..k]`, given row `N-1` of Pascal's
// triangle.
fn stop_value(mode: Mode, pascal: &[BigUint], k: usize) -> BigUint {
    let b = |j: usize| pascal.get(j).cloned().unwrap_or_default();
    match mode {
        Mode::Strike => b(k - 1),
        Mode::Trigger => b(k + 1) * k as u64 + b(k),
    }
}

fn next_pascal(p: &[BigUint]) -> Vec<BigUint> {
    let mut next = Vec::with_capacity(p.len() + 1);
    next.push(BigUint::one());
    for j in 1..p.len() {
        next.push(&p[j - 1] + &p[j]);
    }
    next.push(BigUint::one());
    next
}

impl Iterator for RowStream {
    type Item = TriangleRow;

    fn next(&mut self) -> Option<TriangleRow> {
        let n = self.prev.as_ref().map_or(1, |r| r.n + 1);
        let zero = BigUint::zero();
        let mut interior = vec![zero.clone(); n + 1];
        let mut value = vec![zero.clone(); n + 1];
        let mut selected = vec![false; n + 1];
        let mut closed = vec![zero; n + 2];
        for k in (1..=n).rev() {
            value[k] = stop_value(self.mode, &self.pascal, k);
            interior[k] = match (self.mode, self.prev.as_ref()) {
                (_, None) => BigUint::zero(),
                (_, Some(_)) if k == n => BigUint::zero(),
                (Mode::Trigger, Some(_)) if k + 1 == n => BigUint::zero(),
                (Mode::Strike, Some(prev)) if k == 1 => &closed[2] + &prev.interior[1],
                (Mode::Strike, Some(prev)) => {
                    &closed[k + 1] + &prev.interior[k] + &prev.interior[k - 1] - prev.closed(k)
                }
                (Mode::Trigger, Some(prev)) if k == 1 => &closed[2] + prev.closed(1),
                (Mode::Trigger, Some(prev)) => &closed[k + 1] + &prev.interior[k - 1],
            };
            selected[k] = self.select(n, k, &value[k], &interior[k]);
            closed[k] = if selected[k] {
                value[k].clone()
            } else {
                interior[k].clone()
            };
        }
        let row = TriangleRow {
            n,
            interior,
            value,
            selected,
        };
        self.pascal = next_pascal(&self.pascal);
        self.prev = Some(row.clone());
        Some(row)
    }
}

/// Rows `1..=max_n` of a B° triangle.
#[derive(Debug, Clone)]
pub struct BTriangle {
    mode: Mode,
    rules: Option<Rules>,
    rows: Vec<TriangleRow>,
}

impl BTriangle {
    /// The optimal triangle: every entry picks the better of stopping and
    /// continuing.
    pub fn compute(mode: Mode, max_n: usize) -> Self {
        Self::build(mode, None, max_n)
    }

    /// A triangle whose boundary follows fixed `rules` instead of optimizing.
    pub fn frozen(mode: Mode, rules: Rules, max_n: usize) -> Self {
        Self::build(mode, Some(rules), max_n)
    }

    fn build(mode: Mode, rules: Option<Rules>, max_n: usize) -> Self {
        let rows = RowStream::new(mode, rules.clone()).take(max_n).collect();
        BTriangle { mode, rules, rows }
    }

    /// A triangle given directly by its interior numerators; `rows[j]` is
    /// row `j + 1` with entries for `k = 1..=N`.
    pub fn from_interior(mode: Mode, rows: Vec<Vec<BigUint>>) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for (j, entries) in rows.into_iter().enumerate() {
            let n = j + 1;
            if entries.len() != n {
                return Err(invalid(format!("row {n} has {} entries", entries.len())));
            }
            let mut interior = vec![BigUint::zero()];
            interior.extend(entries);
            out.push(TriangleRow {
                n,
                interior,
                value: vec![BigUint::zero(); n + 1],
                selected: vec![false; n + 1],
            });
        }
        Ok(BTriangle {
            mode,
            rules: Some(vec![]),
            rows: out,
        })
    }

    /// Rebuilds an optimal triangle from stored interior numerators
    /// (`rows[j]` is row `j + 1`, entries `k = 1..=N`), recomputing stop
    /// values and selections.
    pub fn restore(mode: Mode, rows: Vec<Vec<BigUint>>) -> Result<Self> {
        let mut pascal = vec![BigUint::one()];
        let mut out = Vec::with_capacity(rows.len());
        for (j, entries) in rows.into_iter().enumerate() {
            let n = j + 1;
            if entries.len() != n {
                return Err(invalid(format!("row {n} has {} entries", entries.len())));
            }
            if !entries[n - 1].is_zero() || (mode == Mode::Trigger && n > 1 && !entries[n - 2].is_zero()) {
                return Err(invalid(format!("row {n} has a nonzero entry past the open subforest")));
            }
            let mut interior = vec![BigUint::zero()];
            interior.extend(entries);
            let mut value = vec![BigUint::zero(); n + 1];
            let mut selected = vec![false; n + 1];
            for k in 1..=n {
                value[k] = stop_value(mode, &pascal, k);
                selected[k] = select(mode, None, n, k, &value[k], &interior[k]);
            }
            out.push(TriangleRow {
                n,
                interior,
                value,
                selected,
            });
            pascal = next_pascal(&pascal);
        }
        Ok(BTriangle {
            mode,
            rules: None,
            rows: out,
        })
    }

    /// The first `max_n` rows.
    pub fn truncated(&self, max_n: usize) -> Self {
        BTriangle {
            mode: self.mode,
            rules: self.rules.clone(),
            rows: self.rows.iter().take(max_n).cloned().collect(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rules(&self) -> Option<&Rules> {
        self.rules.as_ref()
    }

    pub fn max_n(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, n: usize) -> Option<&TriangleRow> {
        n.checked_sub(1).and_then(|j| self.rows.get(j))
    }

    pub fn rows(&self) -> &[TriangleRow] {
        &self.rows
    }

    fn entry_row(&self, n: usize, k: usize) -> Result<&TriangleRow> {
        let row = self.row(n).ok_or(Error::Depth {
            requested: n,
            available: self.max_n(),
        })?;
        if k == 0 || k > n {
            return Err(invalid(format!("no triangle entry at ({n},{k})")));
        }
        Ok(row)
    }

    pub fn interior(&self, n: usize, k: usize) -> Result<&BigUint> {
        Ok(&self.entry_row(n, k)?.interior[k])
    }

    pub fn is_optimal(&self, n: usize, k: usize) -> Result<bool> {
        Ok(self.entry_row(n, k)?.is_optimal(self.mode, k))
    }

    pub fn is_selected(&self, n: usize, k: usize) -> Result<bool> {
        Ok(self.entry_row(n, k)?.selected[k])
    }

    /// `B°_N(12..k)` as a tally over its ballot denominator.
    pub fn interior_tally(&self, n: usize, k: usize) -> Result<Tally> {
        Tally::new(self.interior(n, k)?.clone(), ballot(n, k)?)
    }

    /// Success of the triangle's strategy on all of `Av_N(321)`.
    pub fn success(&self, n: usize) -> Result<Tally> {
        let row = self.entry_row(n, 1)?;
        let wins = match self.mode {
            Mode::Strike => row.closed(1).clone(),
            // the null trigger (accept the first candidate) wins once
            Mode::Trigger => row.closed(1).clone().max(BigUint::one()),
        };
        Tally::new(wins, catalan(n))
    }

    /// CSV with header `N,k,numerator,denominator,optimal`, entries
    /// `1 <= k <= N-1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,k,numerator,denominator,optimal\n");
        for row in &self.rows {
            for k in 1..row.n {
                let den = ballot(row.n, k).expect("k <= n");
                let opt = row.is_optimal(self.mode, k);
                writeln!(out, "{},{},{},{},{}", row.n, k, row.interior[k], den, opt).unwrap();
            }
        }
        out
    }

    /// Rows where the optimal entries are not a suffix `k >= s`, or where an
    /// optimal entry's lower-right diagonal neighbour is not optimal.
    pub fn boundary_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for row in &self.rows {
            let top = if self.mode == Mode::Trigger { row.n - 1 } else { row.n };
            let mut seen = false;
            for k in 1..=top {
                let opt = row.is_optimal(self.mode, k);
                if seen && !opt {
                    bad.push((row.n, k));
                }
                seen |= opt;
                if opt {
                    if let Some(next) = self.row(row.n + 1) {
                        if !next.is_optimal(self.mode, k + 1) {
                            bad.push((row.n + 1, k + 1));
                        }
                    }
                }
            }
        }
        bad
    }
}

/// `σ(i)`: the leftmost optimal column on the diagonal `N - k = i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaTable {
    pub mode: Mode,
    pub values: Vec<Option<usize>>,
    /// Rows inspected; diagonals without an optimal entry up to here read as
    /// "never" for ranks at most `depth`.
    pub depth: usize,
}

impl SigmaTable {
    pub fn get(&self, i: usize) -> Option<usize> {
        self.values.get(i).copied().flatten()
    }

    /// Threshold for diagonal `i` in a game of rank `n`: `Some(s)` means stop
    /// once `k >= s`, `None` means this diagonal never stops at rank `n`.
    pub fn threshold(&self, i: usize, n: usize) -> Result<Option<usize>> {
        if let Some(s) = self.get(i) {
            return Ok(Some(s));
        }
        if self.depth >= n {
            return Ok(None);
        }
        Err(Error::Depth {
            requested: n,
            available: self.depth,
        })
    }

    /// The leading known values as frozen rules.
    pub fn rules(&self, len: usize) -> Rules {
        (0..len).map(|i| self.get(i)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,sigma\n");
        for (i, s) in self.values.iter().enumerate() {
            match s {
                Some(s) => writeln!(out, "{i},{s}").unwrap(),
                None => writeln!(out, "{i},").unwrap(),
            }
        }
        out
    }
}

pub fn boundary_sigma(t: &BTriangle) -> SigmaTable {
    let depth = t.max_n();
    let mut values = vec![None; depth];
    for row in t.rows() {
        for k in 1..=row.n {
            let i = row.n - k;
            if values[i].is_none() && row.is_optimal(t.mode(), k) {
                values[i] = Some(k);
            }
        }
    }
    SigmaTable {
        mode: t.mode(),
        values,
        depth,
    }
}

/// A linear combination `Σ c_i · C_i(N, k)` of shifted ballot triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedBallotFit {
    pub diagonal: usize,
    pub terms: Vec<(usize, ExactRational)>,
    pub verified: RangeInclusive<usize>,
}

impl ShiftedBallotFit {
    pub fn coefficient(&self, shift: usize) -> ExactRational {
        self.terms
            .iter()
            .find(|(s, _)| *s == shift)
            .map_or_else(ExactRational::zero, |(_, c)| c.clone())
    }

    /// The integer coefficients, when all of them are integers.
    pub fn integer_coefficients(&self) -> Option<Vec<(usize, BigInt)>> {
        self.terms
            .iter()
            .map(|(s, c)| c.inner().is_integer().then(|| (*s, c.numer().clone())))
            .collect()
    }

    pub fn evaluate(&self, n: usize, k: usize) -> ExactRational {
        evaluate_combination(&self.terms, n, k)
    }

    pub fn limit(&self) -> ExactRational {
        limit_of_combination(&self.terms)
    }
}

pub fn evaluate_combination(terms: &[(usize, ExactRational)], n: usize, k: usize) -> ExactRational {
    let mut acc = BigRational::zero();
    for (shift, c) in terms {
        let b = BigInt::from(shifted_ballot(*shift, n, k));
        acc += c.inner() * BigRational::from_integer(b);
    }
    ExactRational::from_inner(acc)
}

/// `Σ c_i / 4^i`, the limit of the combination at `k = 1` over `C_N`.
pub fn limit_of_combination(terms: &[(usize, ExactRational)]) -> ExactRational {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let mut acc = BigRational::zero();
    for (shift, c) in terms {
        acc += c.inner() * num_traits::pow(quarter.clone(), *shift);
    }
    ExactRational::from_inner(acc)
}

/// Solves for coefficients of the shifted ballot triangles at `shifts` that
/// match every entry with `k <= N - diagonal` over `fit_rows`, then checks
/// agreement over `verify_rows`.
pub fn fit_shifted_ballot(
    t: &BTriangle,
    diagonal: usize,
    shifts: RangeInclusive<usize>,
    fit_rows: RangeInclusive<usize>,
    verify_rows: RangeInclusive<usize>,
) -> Result<ShiftedBallotFit> {
    let shifts: Vec<usize> = shifts.collect();
    if shifts.is_empty() {
        return Err(Error::Fit("no shifts requested".into()));
    }
    let need = (*fit_rows.end()).max(*verify_rows.end());
    if need > t.max_n() {
        return Err(Error::Depth {
            requested: need,
            available: t.max_n(),
        });
    }
    let mut eqs: Vec<(Vec<BigRational>, BigRational, (usize, usize))> = Vec::new();
    for n in fit_rows.clone() {
        for k in 1..=n.saturating_sub(diagonal) {
            let lhs = shifts
                .iter()
                .map(|&s| BigRational::from_integer(shifted_ballot(s, n, k).into()))
                .collect();
            let rhs = BigRational::from_integer(t.interior(n, k)?.clone().into());
            eqs.push((lhs, rhs, (n, k)));
        }
    }
    let coeffs = solve_exact(eqs, shifts.len())?;
    let terms: Vec<(usize, ExactRational)> = shifts
        .into_iter()
        .zip(coeffs)
        .map(|(s, c)| (s, ExactRational::from_inner(c)))
        .collect();
    for n in verify_rows.clone() {
        for k in 1..=n.saturating_sub(diagonal) {
            let want = BigRational::from_integer(t.interior(n, k)?.clone().into());
            if evaluate_combination(&terms, n, k).inner() != &want {
                return Err(Error::Inconsistent { n, k });
            }
        }
    }
    Ok(ShiftedBallotFit {
        diagonal,
        terms,
        verified: verify_rows,
    })
}

type Equation = (Vec<BigRational>, BigRational, (usize, usize));

/// Gauss-Jordan elimination on an overdetermined system. The system must
/// have full column rank and be consistent.
fn solve_exact(mut eqs: Vec<Equation>, unknowns: usize) -> Result<Vec<BigRational>> {
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(pivot) = (rank..eqs.len()).find(|&r| !eqs[r].0[col].is_zero()) else {
            return Err(Error::Fit(format!("column {col} has no pivot; the system is singular")));
        };
        eqs.swap(rank, pivot);
        let p = eqs[rank].0[col].clone();
        for x in eqs[rank].0.iter_mut() {
            *x /= &p;
        }
        eqs[rank].1 /= &p;
        let (pivot_lhs, pivot_rhs) = (eqs[rank].0.clone(), eqs[rank].1.clone());
        for (r, eq) in eqs.iter_mut().enumerate() {
            if r == rank || eq.0[col].is_zero() {
                continue;
            }
            let f = eq.0[col].clone();
            for (x, y) in eq.0.iter_mut().zip(&pivot_lhs) {
                *x -= &f * y;
            }
            eq.1 -= &f * &pivot_rhs;
        }
        rank += 1;
    }
    if let Some((_, _, (n, k))) = eqs[rank..].iter().find(|e| !e.1.is_zero()) {
        return Err(Error::Inconsistent { n: *n, k: *k });
    }
    Ok(eqs.into_iter().take(unknowns).map(|e| e.1).collect())
}

/// `C_{N-1} / C_N`, optimal for `Av(231)` under every complete strategy.
pub fn optimal_success_231(n: usize) -> Result<Tally> {
    if n == 0 {
        return Err(Error::Domain("rank must be at least 1".into()));
    }
    Tally::new(catalan(n - 1), catalan(n))
}

/// Positional strategy on `Av(321)` that switches to hiring after `N-3`
/// interviews: `(3C_{N-1} - 4C_{N-2} - C_{N-3}) / C_N`.
pub fn positional_success_321(n: usize) -> Result<Tally> {
    if n < 4 {
        return Err(Error::Domain(format!("closed form needs N >= 4, got {n}")));
    }
    let wins = catalan(n - 1) * 3u8 - catalan(n - 2) * 4u8 - catalan(n - 3);
    Tally::new(wins, catalan(n))
}

/// Limit of [`positional_success_321`], `31/64`.
pub fn positional_limit_321() -> ExactRational {
    let terms = [(1, 3), (2, -4), (3, -1)].map(|(s, c)| (s, ExactRational::from_integer(c)));
    limit_of_combination(&terms)
}

/// Optimal play on `Av(123)`: accept the second left-to-right maximum, which
/// wins `C(N,2) / C_N`.
pub fn closed_123(n: usize) -> Result<(String, Tally)> {
    if n < 2 {
        return Err(Error::Domain(format!("closed form needs N >= 2, got {n}")));
    }
    Ok(("positional:1".into(), Tally::new(ballot(n, 2)?, catalan(n))?))
}

/// Exact strike probability of a prefix in `Av_N(123)`, as a rational:
/// 1 on `[(k-1)..1 k]`, `C_{N-1}/C_N` on `[1]`, 0 otherwise.
pub fn strike_ratio_123(p: &Permutation, n: usize) -> Result<ExactRational> {
    if p.len() > n || !PatternClass::av("123").contains(p) {
        return Err(invalid(format!("{p} is not a prefix in Av_{n}(123)")));
    }
    let k = p.len() as u32;
    if k == 1 {
        return Ok(ExactRational::from_biguints(&catalan(n - 1), &catalan(n)));
    }
    let descending_then_top = p.last() == k
        && p.entries()[..k as usize - 1]
            .iter()
            .enumerate()
            .all(|(j, &v)| v == k - 1 - j as u32);
    Ok(if descending_then_top {
        ExactRational::one()
    } else {
        ExactRational::zero()
    })
}

/// Optimal play on `Av(213)`: accept the first left-to-right maximum (the
/// second ties), which wins `C_{N-1} / C_N`.
pub fn closed_213(n: usize) -> Result<(String, Tally)> {
    Ok(("positional:0".into(), optimal_success_231(n)?))
}

/// `S_N(12..k) = C(N-1, k-1) / C(N, k)` in `Av(213)`.
pub fn strike_prob_213_increasing(n: usize, k: usize) -> Result<Tally> {
    if k == 0 || k > n {
        return Err(invalid(format!("need 1 <= k <= N, got k={k}, N={n}")));
    }
    Tally::new(ballot_signed(n as i64 - 1, k as i64 - 1), ballot(n, k)?)
}

//! Binomial, Catalan and ballot numbers over arbitrary-precision integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

/// `binom(n, k)`, zero whenever `n < 0`, `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    // acc = binom(n-k+i, i) after step i, so every division is exact
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `C_n = binom(2n, n) / (n+1)`.
pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n as i64, n as i64) / (n as u64 + 1)
}

/// Ballot number `C(n,k) = (k+1)/(n+1) · binom(2n-k, n)` for `0 <= k <= n`.
pub fn ballot(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(invalid(format!("ballot({n},{k}) needs k <= n")));
    }
    Ok(ballot_signed(n as i64, k as i64))
}

/// The ballot formula with out-of-range binomials read as zero.
pub(crate) fn ballot_signed(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 {
        return BigUint::zero();
    }
    let b = binomial(2 * n - k, n);
    if b.is_zero() {
        return b;
    }
    b * (k as u64 + 1) / (n as u64 + 1)
}

/// The `i`-shifted ballot triangle `C_i(n,k) = C(n-i, k)`.
pub fn shifted_ballot(shift: usize, n: usize, k: usize) -> BigUint {
    ballot_signed(n as i64 - shift as i64, k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan_by_recurrence(max: usize) -> Vec<BigUint> {
        let mut c = vec![BigUint::one()];
        for n in 1..=max {
            let s = (0..n).map(|i| &c[i] * &c[n - 1 - i]).sum();
            c.push(s);
        }
        c
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(4), 14u32.into());
        assert_eq!(catalan(8), 1430u32.into());
        assert_eq!(catalan(0), 1u32.into());
        let listed: Vec<u32> = vec![1, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (n, &c) in listed.iter().enumerate() {
            assert_eq!(catalan(n), c.into());
        }
    }

    #[test]
    fn catalan_formula_matches_recurrence() {
        for (n, c) in catalan_by_recurrence(30).into_iter().enumerate() {
            assert_eq!(catalan(n), c, "n={n}");
        }
    }

    #[test]
    fn ballot_examples() {
        assert_eq!(ballot(6, 3).unwrap(), 48u32.into());
        assert_eq!(ballot(9, 4).unwrap(), 1001u32.into());
        assert_eq!(ballot(7, 7).unwrap(), 1u32.into());
        assert!(ballot(3, 4).is_err());
    }

    #[test]
    fn ballot_table_rows() {
        let rows: [&[u32]; 9] = [
            &[1, 1],
            &[2, 2, 1],
            &[5, 5, 3, 1],
            &[14, 14, 9, 4, 1],
            &[42, 42, 28, 14, 5, 1],
            &[132, 132, 90, 48, 20, 6, 1],
            &[429, 429, 297, 165, 75, 27, 7, 1],
            &[1430, 1430, 1001, 572, 275, 110, 35, 8, 1],
            &[4862, 4862, 3432, 2002, 1001, 429, 154, 44, 9, 1],
        ];
        for (i, row) in rows.iter().enumerate() {
            let n = i + 1;
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(ballot(n, k).unwrap(), v.into(), "C({n},{k})");
            }
        }
    }

    #[test]
    fn ballot_recurrences() {
        for n in 1..=50usize {
            assert_eq!(ballot(n, 1).unwrap(), catalan(n));
            assert_eq!(ballot(n, 0).unwrap(), catalan(n));
            assert_eq!(ballot(n, n).unwrap(), BigUint::one());
            for k in 1..n {
                let rhs = ballot(n - 1, k - 1).unwrap() + ballot(n, k + 1).unwrap();
                assert_eq!(ballot(n, k).unwrap(), rhs, "C({n},{k})");
            }
        }
    }

    #[test]
    fn shifted_examples() {
        assert_eq!(shifted_ballot(0, 5, 2), 28u32.into());
        assert_eq!(shifted_ballot(2, 7, 2), 28u32.into());
        assert_eq!(shifted_ballot(6, 4, 1), BigUint::zero());
        assert_eq!(shifted_ballot(5, 5, 0), BigUint::one());
        assert_eq!(shifted_ballot(5, 5, 1), BigUint::zero());
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), 10u32.into());
        assert_eq!(binomial(-1, 0), BigUint::zero());
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(60, 30), "118264581564861424".parse::<BigUint>().unwrap());
    }
}

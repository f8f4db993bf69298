//! Length and distance bounds for codes with multi-erasure repair locality.
//!
//! Everything here is integer arithmetic. The two length bounds are
//!
//! * `n >= d + k - 1 + mu`, with
//!   `mu = ceil(((k-1)(delta-1) + 1) / ((r-1)(delta-1) + 1)) - 1`, for codes whose
//!   repair sets are pairwise disjoint ([`bound_c_min_length`]);
//! * `n >= d + k - 1 + (ceil(k/r) - 1)(delta-1)` for locality defined through
//!   punctured subcodes ([`bound_prakash_min_length`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Validated `(k, r, delta)`.
///
/// `r = 1` means plain repetition and `delta = 1` means no locality, so both
/// are rejected. `r = k` is accepted: `mu` is then 0 and the length bound
/// reduces to the Singleton bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalityParams {
    pub k: u64,
    pub r: u64,
    pub delta: u64,
}

impl LocalityParams {
    pub fn new(k: u64, r: u64, delta: u64) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParams(format!("r = {r}: need r >= 2")));
        }
        if delta < 2 {
            return Err(Error::InvalidParams(format!("delta = {delta}: need delta >= 2")));
        }
        if r > k {
            return Err(Error::InvalidParams(format!("r = {r} exceeds k = {k}")));
        }
        Ok(LocalityParams { k, r, delta })
    }

    pub fn mu(&self) -> u64 {
        let (k, r, t) = (self.k, self.r, self.delta - 1);
        let mu = div_ceil((k - 1) * t + 1, (r - 1) * t + 1) - 1;
        debug_assert_eq!(mu, self.mu_floor_form());
        mu
    }

    /// `floor((k-1)(delta-1) / ((r-1)(delta-1) + 1))`, the same value as
    /// [`mu`](Self::mu) written without the ceiling.
    pub fn mu_floor_form(&self) -> u64 {
        let (k, r, t) = (self.k, self.r, self.delta - 1);
        ((k - 1) * t) / ((r - 1) * t + 1)
    }

    /// `(ceil(k/r) - 1)(delta - 1)`.
    pub fn prakash_penalty(&self) -> u64 {
        (div_ceil(self.k, self.r) - 1) * (self.delta - 1)
    }

    /// Length of a block in the disjoint-group construction: `r(delta-1) + 1`.
    pub fn block_len(&self) -> u64 {
        self.r * (self.delta - 1) + 1
    }
}

fn div_ceil(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

pub fn mu(k: u64, r: u64, delta: u64) -> Result<u64> {
    Ok(LocalityParams::new(k, r, delta)?.mu())
}

pub fn mu_floor_form(k: u64, r: u64, delta: u64) -> Result<u64> {
    Ok(LocalityParams::new(k, r, delta)?.mu_floor_form())
}

fn check_d(d: u64) -> Result<()> {
    if d == 0 {
        Err(Error::InvalidParams("d must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Smallest `n` allowed for given `d`: `d + k - 1 + mu`.
pub fn bound_c_min_length(k: u64, d: u64, r: u64, delta: u64) -> Result<u64> {
    check_d(d)?;
    Ok(d + k - 1 + mu(k, r, delta)?)
}

/// Smallest `n` under the punctured-subcode locality bound.
pub fn bound_prakash_min_length(k: u64, d: u64, r: u64, delta: u64) -> Result<u64> {
    check_d(d)?;
    Ok(d + k - 1 + LocalityParams::new(k, r, delta)?.prakash_penalty())
}

/// `mu <= (ceil(k/r) - 1)(delta - 1)`: the disjoint-set bound never demands
/// more length than the punctured-subcode bound.
pub fn comparison_holds(k: u64, r: u64, delta: u64) -> Result<bool> {
    let p = LocalityParams::new(k, r, delta)?;
    Ok(p.mu() <= p.prakash_penalty())
}

/// `(1/r)(k + mu - ceil((k + mu) / (r(delta-1) + 1))) < mu + 1`, evaluated
/// exactly by clearing the denominator `r`.
pub fn lemma3_check(k: u64, r: u64, delta: u64) -> Result<bool> {
    let p = LocalityParams::new(k, r, delta)?;
    let mu = p.mu();
    let lhs = (k + mu) as i128 - div_ceil(k + mu, p.block_len()) as i128;
    Ok(lhs < (r * (mu + 1)) as i128)
}

/// Both bounds for fixed `(k, r, delta)`, queried per `d` or per `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub k: u64,
    pub r: u64,
    pub delta: u64,
    pub mu: u64,
    pub prakash_penalty: u64,
    pub lemma3: bool,
}

impl BoundsReport {
    pub fn new(k: u64, r: u64, delta: u64) -> Result<Self> {
        let p = LocalityParams::new(k, r, delta)?;
        Ok(BoundsReport {
            k,
            r,
            delta,
            mu: p.mu(),
            prakash_penalty: p.prakash_penalty(),
            lemma3: lemma3_check(k, r, delta)?,
        })
    }

    pub fn bound_c_min_n(&self, d: u64) -> u64 {
        d + self.k - 1 + self.mu
    }

    pub fn bound_prakash_min_n(&self, d: u64) -> u64 {
        d + self.k - 1 + self.prakash_penalty
    }

    /// Largest `d` the disjoint-set bound permits at length `n`.
    pub fn d_upper_c(&self, n: u64) -> i64 {
        n as i64 - self.k as i64 + 1 - self.mu as i64
    }

    pub fn d_upper_prakash(&self, n: u64) -> i64 {
        n as i64 - self.k as i64 + 1 - self.prakash_penalty as i64
    }

    pub fn gap(&self, n: u64) -> i64 {
        self.d_upper_c(n) - self.d_upper_prakash(n)
    }
}

/// `f(x)` for the `(r+1) x (r+1)` grid code: `x(r+1) - floor(x^2 / 4)`.
///
/// For even `x` this is `x(r+1) - x^2/4`, for odd `x` it is
/// `x(r+1) - (x^2 - 1)/4`; both are the floor expression.
pub fn square_f(x: u64, r: u64) -> u64 {
    x * (r + 1) - (x * x) / 4
}

fn check_square(k: u64, r: u64) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("r = {r}: need r >= 2")));
    }
    if k < r + 1 || k > r * r {
        return Err(Error::InvalidParams(format!(
            "k = {k} outside [r+1, r^2] = [{}, {}]",
            r + 1,
            r * r
        )));
    }
    Ok(())
}

/// `max { x in [0, 2r+1] : f(x) - x <= k - 1 }`.
pub fn mu_k_square(k: u64, r: u64) -> Result<u64> {
    check_square(k, r)?;
    let mut best = 0;
    for x in 0..=2 * r + 1 {
        if square_f(x, r) - x < k {
            best = x;
        } else {
            // f(x) - x is nondecreasing
            break;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareBoundsReport {
    pub r: u64,
    pub k: u64,
    pub n: u64,
    pub mu_k: u64,
    /// `n - k + 1 - mu_k`.
    pub d_guarantee: u64,
    /// `f(0), ..., f(2r+1)`.
    pub f_table: Vec<u64>,
}

impl SquareBoundsReport {
    pub fn new(k: u64, r: u64) -> Result<Self> {
        let mu_k = mu_k_square(k, r)?;
        let n = (r + 1) * (r + 1);
        Ok(SquareBoundsReport {
            r,
            k,
            n,
            mu_k,
            d_guarantee: n - k + 1 - mu_k,
            f_table: (0..=2 * r + 1).map(|x| square_f(x, r)).collect(),
        })
    }
}

/// Distance advantage of the grid code over the punctured-subcode bound at
/// `k = r^2 - r + 1`, `n = (r+1)^2`, `delta = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub r: u64,
    pub k: u64,
    pub n: u64,
    pub mu_k: u64,
    /// `2(r - floor(sqrt(r-1))) - 1`.
    pub mu_k_cap: u64,
    pub d_guarantee: u64,
    pub d_upper_prakash: i64,
    pub gap: i64,
    /// `2(floor(sqrt(r-1)) - 1) + 1`.
    pub gap_floor: i64,
}

impl GapReport {
    pub fn holds(&self) -> bool {
        self.mu_k <= self.mu_k_cap && self.gap >= self.gap_floor
    }
}

pub fn gap_report(r: u64) -> Result<GapReport> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("r = {r}: need r >= 2")));
    }
    let k = r * r - r + 1;
    let n = (r + 1) * (r + 1);
    let sq = SquareBoundsReport::new(k, r)?;
    let s = (r - 1).isqrt();
    let prakash = BoundsReport::new(k, r, 3)?;
    let d_upper_prakash = prakash.d_upper_prakash(n);
    Ok(GapReport {
        r,
        k,
        n,
        mu_k: sq.mu_k,
        mu_k_cap: 2 * (r - s) - 1,
        d_guarantee: sq.d_guarantee,
        d_upper_prakash,
        gap: sq.d_guarantee as i64 - d_upper_prakash,
        gap_floor: 2 * (s as i64 - 1) + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_examples() {
        assert_eq!(mu(3, 2, 4), Ok(1));
        assert_eq!(mu(3, 2, 3), Ok(1));
        for k in 3..30 {
            for r in 2..k {
                assert_eq!(mu(k, r, 2).unwrap(), k.div_ceil(r) - 1);
            }
        }
        assert_eq!(mu(21, 5, 3), Ok(4));
        assert_eq!(mu(4, 2, 3), Ok(2));
    }

    #[test]
    fn guard_rails() {
        assert!(mu(3, 1, 3).is_err());
        assert!(mu(3, 2, 1).is_err());
        assert!(mu(3, 4, 2).is_err());
        assert_eq!(mu(2, 2, 3), Ok(0));
        assert!(bound_c_min_length(3, 0, 2, 2).is_err());
    }

    #[test]
    fn length_bound_examples() {
        assert_eq!(bound_c_min_length(3, 4, 2, 4), Ok(7));
        assert_eq!(bound_c_min_length(3, 3, 2, 3), Ok(6));
        assert_eq!(bound_c_min_length(3, 1, 2, 2), Ok(4));
        assert_eq!(bound_prakash_min_length(3, 4, 2, 4), Ok(9));
        assert_eq!(bound_prakash_min_length(3, 3, 2, 3), Ok(7));
        for m in 1..6 {
            let (r, k, d) = (3, 3 * m, 5);
            assert_eq!(bound_prakash_min_length(k, d, r, 2).unwrap(), d + k - 1 + (m - 1));
        }
    }

    #[test]
    fn report_queries() {
        let b = BoundsReport::new(3, 2, 4).unwrap();
        assert_eq!(b.bound_c_min_n(4), 7);
        assert_eq!(b.bound_prakash_min_n(4), 9);
        assert_eq!(b.d_upper_c(7), 4);
        assert_eq!(b.d_upper_prakash(7), 2);
        assert_eq!(b.gap(7), 2);
        assert!(b.lemma3);
    }

    #[test]
    fn square_f_matches_case_split() {
        for r in 2..20u64 {
            for x in 0..=2 * r + 1 {
                let expected = if x % 2 == 0 {
                    x * (r + 1) - x * x / 4
                } else {
                    x * (r + 1) - (x * x - 1) / 4
                };
                assert_eq!(square_f(x, r), expected);
            }
            assert_eq!(square_f(2 * r + 1, r) - (2 * r + 1), r * r);
        }
    }

    #[test]
    fn mu_k_examples() {
        assert_eq!(mu_k_square(3, 2), Ok(1));
        assert_eq!(mu_k_square(4, 2), Ok(2));
        assert_eq!(mu_k_square(21, 5), Ok(5));
        for r in 2..15 {
            for k in r + 1..=2 * r - 1 {
                assert_eq!(mu_k_square(k, r), Ok(1));
            }
        }
        assert!(mu_k_square(2, 2).is_err());
        assert!(mu_k_square(5, 2).is_err());
    }

    #[test]
    fn gap_examples() {
        let g = gap_report(5).unwrap();
        assert_eq!((g.k, g.n, g.mu_k, g.mu_k_cap), (21, 36, 5, 5));
        assert_eq!((g.d_guarantee, g.d_upper_prakash, g.gap, g.gap_floor), (11, 8, 3, 3));
        let g = gap_report(2).unwrap();
        assert_eq!((g.k, g.n, g.d_guarantee, g.d_upper_prakash), (3, 9, 6, 5));
        assert!(g.gap >= 1);
        assert_eq!(gap_report(10).unwrap().gap_floor, 5);
        assert!(gap_report(1).is_err());
    }

    #[test]
    fn lemma3_examples() {
        assert_eq!(lemma3_check(3, 2, 4), Ok(true));
        assert_eq!(lemma3_check(3, 2, 3), Ok(true));
    }
}

//! Linear codes given by a generator matrix, and the minimum-distance oracles.
//!
//! Coordinates are 0-based in the API. File formats and printed reports add
//! one, matching the `[n] = {1, ..., n}` convention of the coding literature.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combin::{binomial, count_with_first, for_each_with_first};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::FieldMatrix;
use crate::rng::CodeRng;

/// Default cap on `q^k` for codeword enumeration.
pub const DEFAULT_WORD_BUDGET: u128 = 1 << 24;
/// Default cap on subset-rank evaluations for the rank oracle.
pub const DEFAULT_RANK_BUDGET: u128 = 100_000_000;

/// An `[n, k]` linear code over GF(q), given by a full-rank `k × n` generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: FieldMatrix,
}

/// A codeword in which any symbol may be marked erased (`None`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    symbols: Vec<Option<u64>>,
}

impl Codeword {
    pub fn new(symbols: Vec<u64>) -> Self {
        Codeword {
            symbols: symbols.into_iter().map(Some).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u64> {
        self.symbols.get(i).copied().flatten()
    }

    pub fn is_erased(&self, i: usize) -> bool {
        matches!(self.symbols.get(i), Some(None))
    }

    pub fn erase(&mut self, i: usize) {
        if let Some(s) = self.symbols.get_mut(i) {
            *s = None;
        }
    }

    pub fn erase_all(&mut self, coords: &[usize]) {
        for &i in coords {
            self.erase(i);
        }
    }

    pub fn symbols(&self) -> &[Option<u64>] {
        &self.symbols
    }

    /// Hamming weight of the non-erased part.
    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|s| matches!(s, Some(v) if *v != 0)).count()
    }
}

/// How a distance lower bound is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum VerifyMode {
    /// Every subset of the critical size.
    Exhaustive,
    /// `trials` subsets drawn uniformly (with replacement) from `seed`.
    Sampled { trials: u64, seed: u64 },
}

/// Outcome of [`LinearCode::verify_distance_at_least`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub d_min: usize,
    /// Size `n - d_min + 1` of the subsets that must all have rank `k`.
    pub subset_size: usize,
    #[serde(flatten)]
    pub mode: VerifyMode,
    pub passed: bool,
    /// First failing subset found (1-based in serialized form).
    #[serde(with = "one_based_opt")]
    pub witness: Option<Vec<usize>>,
    pub checked: u128,
    pub total: u128,
    /// True only for a passing exhaustive check.
    pub is_proof: bool,
    /// For a passing sampled run: with 95% confidence, the fraction of
    /// rank-deficient subsets is below this value.
    pub miss_fraction_95: Option<f64>,
}

impl LinearCode {
    /// Validates the generator: at least one row and full row rank.
    pub fn new(gen: FieldMatrix) -> Result<Self> {
        let k = gen.rows();
        if k == 0 || gen.cols() < k {
            return Err(Error::InvalidParams(format!(
                "generator must be k x n with 1 <= k <= n, got {} x {}",
                gen.rows(),
                gen.cols()
            )));
        }
        let rank = gen.rank();
        if rank < k {
            return Err(Error::RankDeficient {
                found: rank,
                expected: k,
            });
        }
        Ok(LinearCode { gen })
    }

    pub fn from_rows(field: Field, rows: &[Vec<u64>]) -> Result<Self> {
        Self::new(FieldMatrix::from_rows(field, rows)?)
    }

    pub fn field(&self) -> Field {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.gen
    }

    /// Column `g_i` of the generator.
    pub fn column(&self, i: usize) -> Vec<u64> {
        self.gen.column(i)
    }

    pub fn encode(&self, msg: &[u64]) -> Result<Codeword> {
        for &m in msg {
            self.field().check(m)?;
        }
        Ok(Codeword::new(self.gen.vec_mul(msg)?))
    }

    fn check_coords(&self, coords: &[usize]) -> Result<()> {
        match coords.iter().find(|&&i| i >= self.n()) {
            Some(&index) => Err(Error::IndexOutOfRange { index, n: self.n() }),
            None => Ok(()),
        }
    }

    /// Rank of `{g_i : i in coords}`.
    pub fn subset_rank(&self, coords: &[usize]) -> Result<usize> {
        self.check_coords(coords)?;
        let mut scratch = Vec::new();
        Ok(self.gen.column_subset_rank(coords, &mut scratch))
    }

    /// Lowest-index information set, chosen greedily left to right.
    pub fn find_information_set(&self) -> Vec<usize> {
        let mut chosen = Vec::with_capacity(self.k());
        let mut scratch = Vec::new();
        for i in 0..self.n() {
            chosen.push(i);
            if self.gen.column_subset_rank(&chosen, &mut scratch) < chosen.len() {
                chosen.pop();
            }
            if chosen.len() == self.k() {
                break;
            }
        }
        chosen
    }

    /// Minimum distance by enumerating all `q^k` messages.
    ///
    /// Messages are walked as an odometer; each step adds one generator row to
    /// the running codeword, so no encoding is repeated from scratch.
    pub fn min_distance_words(&self, budget: u128) -> Result<usize> {
        let q = self.field().modulus() as u128;
        let required = (0..self.k())
            .try_fold(1u128, |acc, _| acc.checked_mul(q))
            .unwrap_or(u128::MAX);
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let f = self.field();
        let n = self.n();
        let mut digits = vec![0u64; self.k()];
        let mut word = vec![0u64; n];
        let mut best = n;
        'outer: loop {
            let mut j = 0;
            loop {
                if j == self.k() {
                    break 'outer;
                }
                for (w, &g) in word.iter_mut().zip(self.gen.row(j)) {
                    *w = f.add(*w, g);
                }
                digits[j] += 1;
                if digits[j] == f.modulus() {
                    digits[j] = 0;
                    j += 1;
                } else {
                    break;
                }
            }
            let weight = word.iter().filter(|&&v| v != 0).count();
            best = best.min(weight);
        }
        Ok(best)
    }

    /// Minimum distance as `n` minus the largest rank-deficient coordinate set.
    ///
    /// Sizes are scanned from `n - 1` downwards and the scan stops at the first
    /// size holding a subset of rank below `k`. Every level is charged its full
    /// `C(n, m)` against the budget before it runs.
    pub fn min_distance_rank(&self, budget: u128) -> Result<usize> {
        let (n, k) = (self.n(), self.k());
        let mut spent: u128 = 0;
        for m in (k..n).rev() {
            spent = spent.saturating_add(binomial(n as u64, m as u64));
            if spent > budget {
                return Err(Error::BudgetExceeded {
                    required: spent,
                    budget,
                });
            }
            if self.first_deficient_subset(m).0.is_some() {
                return Ok(n - m);
            }
        }
        // every set of size k-1 is deficient
        Ok(n - k + 1)
    }

    /// Lexicographically first `m`-subset of rank below `k`, and the number
    /// of subsets scanned up to and including it (or all of them).
    ///
    /// The search space is split by smallest element across the rayon pool;
    /// the answer does not depend on the number of workers.
    fn first_deficient_subset(&self, m: usize) -> (Option<Vec<usize>>, u128) {
        let (n, k) = (self.n(), self.k());
        if m == 0 {
            return (Some(Vec::new()), 1);
        }
        let best = AtomicUsize::new(usize::MAX);
        let found: Vec<(usize, Option<(Vec<usize>, u64)>)> = (0..=n - m)
            .into_par_iter()
            .map(|first| {
                if best.load(Ordering::Relaxed) < first {
                    return (first, None);
                }
                let mut scratch = Vec::with_capacity(k * m);
                let mut hit = None;
                let scanned = for_each_with_first(n, m, first, |s| {
                    if self.gen.column_subset_rank(s, &mut scratch) < k {
                        hit = Some(s.to_vec());
                        false
                    } else {
                        true
                    }
                });
                if hit.is_some() {
                    best.fetch_min(first, Ordering::Relaxed);
                }
                (first, hit.map(|h| (h, scanned)))
            })
            .collect();
        match found.into_iter().find_map(|(first, hit)| hit.map(|h| (first, h))) {
            Some((first, (witness, scanned))) => {
                let before: u128 = (0..first).map(|f| count_with_first(n, m, f)).sum();
                (Some(witness), before + scanned as u128)
            }
            None => (None, binomial(n as u64, m as u64)),
        }
    }

    /// Checks that every coordinate subset of size `n - d_min + 1` has rank
    /// `k`, which by the rank characterisation of distance means `d >= d_min`.
    pub fn verify_distance_at_least(
        &self,
        d_min: usize,
        mode: VerifyMode,
        budget: u128,
    ) -> Result<DistanceReport> {
        if d_min == 0 {
            return Err(Error::InvalidParams("d_min must be at least 1".into()));
        }
        let (n, k) = (self.n(), self.k());
        let m = (n + 1).saturating_sub(d_min);
        let total = binomial(n as u64, m as u64);
        let mut report = DistanceReport {
            d_min,
            subset_size: m,
            mode,
            passed: false,
            witness: None,
            checked: 0,
            total,
            is_proof: false,
            miss_fraction_95: None,
        };
        if m < k {
            // too small to ever reach rank k
            report.witness = Some((0..m).collect());
            report.checked = 1;
            return Ok(report);
        }
        match mode {
            VerifyMode::Exhaustive => {
                if total > budget {
                    return Err(Error::BudgetExceeded {
                        required: total,
                        budget,
                    });
                }
                let (witness, checked) = self.first_deficient_subset(m);
                report.passed = witness.is_none();
                report.is_proof = report.passed;
                report.witness = witness;
                report.checked = checked;
            }
            VerifyMode::Sampled { trials, seed } => {
                let mut rng = CodeRng::new(seed);
                let mut scratch = Vec::with_capacity(k * m);
                report.passed = true;
                for t in 0..trials {
                    let s = rng.subset(n, m);
                    if self.gen.column_subset_rank(&s, &mut scratch) < k {
                        report.passed = false;
                        report.witness = Some(s);
                        report.checked = t as u128 + 1;
                        return Ok(report);
                    }
                }
                report.checked = trials as u128;
                if trials > 0 {
                    report.miss_fraction_95 = Some(1.0 - 0.05f64.powf(1.0 / trials as f64));
                }
            }
        }
        Ok(report)
    }

    pub fn to_file(&self) -> CodeFile {
        CodeFile {
            q: self.field().modulus(),
            n: self.n(),
            k: self.k(),
            gen: self.gen.to_rows(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("code file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CodeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_code()
    }
}

/// On-disk form of a code: `{"q", "n", "k", "gen"}` with `gen` row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub gen: Vec<Vec<u64>>,
}

impl CodeFile {
    pub fn into_code(self) -> Result<LinearCode> {
        let field = Field::new(self.q)?;
        if self.gen.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: self.gen.len(),
            });
        }
        if let Some(row) = self.gen.iter().find(|r| r.len() != self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: row.len(),
            });
        }
        LinearCode::from_rows(field, &self.gen)
    }
}

/// Serde adapter writing 0-based coordinate lists as 1-based.
pub(crate) mod one_based_opt {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<usize>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|xs| xs.iter().map(|x| x + 1).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<usize>>, D::Error> {
        let v: Option<Vec<usize>> = Option::deserialize(d)?;
        v.map(|xs| {
            xs.into_iter()
                .map(|x| x.checked_sub(1).ok_or_else(|| serde::de::Error::custom("coordinates are 1-based")))
                .collect()
        })
        .transpose()
    }
}

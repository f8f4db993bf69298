//! Repair certificates, locality classification and local repair.
//!
//! A coordinate `i` has `(r, delta)` locality when there are `delta - 1`
//! pairwise disjoint sets of other coordinates, each of size at most `r`,
//! whose generator columns each span `g_i`. Any `delta - 2` further erasures
//! can block at most `delta - 2` of those sets, so one always survives.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{Codeword, LinearCode};
use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::rng::CodeRng;

/// Default cap on span tests when listing repair-set candidates.
pub const DEFAULT_SEARCH_BUDGET: u128 = 10_000_000;
/// Default cap on backtracking nodes when packing disjoint candidates.
pub const DEFAULT_PACKING_BUDGET: u64 = 10_000_000;

/// `delta - 1` disjoint repair sets for one coordinate, with the coefficients
/// that rebuild `g_i` from each set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairCertificate {
    pub coordinate: usize,
    pub r: usize,
    pub delta: usize,
    pub repair_sets: Vec<Vec<usize>>,
    pub coefficients: Vec<Vec<u64>>,
}

/// JSON form of a certificate. Coordinates are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub i: usize,
    pub r: usize,
    pub delta: usize,
    pub sets: Vec<Vec<usize>>,
    pub coeffs: Vec<Vec<u64>>,
}

impl RepairCertificate {
    /// Re-checks every certificate invariant against `code` directly, without
    /// going through the search that produced it.
    pub fn verify(&self, code: &LinearCode) -> Result<()> {
        let bad = |msg: String| Err(Error::CertificateMismatch(msg));
        let n = code.n();
        let i = self.coordinate;
        if i >= n {
            return bad(format!("coordinate {} outside length {n}", i + 1));
        }
        if self.delta < 2 || self.r < 1 {
            return bad(format!("r = {}, delta = {} out of range", self.r, self.delta));
        }
        if self.repair_sets.len() != self.delta - 1 {
            return bad(format!(
                "{} repair sets, expected delta - 1 = {}",
                self.repair_sets.len(),
                self.delta - 1
            ));
        }
        if self.coefficients.len() != self.repair_sets.len() {
            return bad("one coefficient vector is needed per repair set".into());
        }
        let f = code.field();
        let target = code.column(i);
        let mut used = vec![false; n];
        for (set, coeffs) in self.repair_sets.iter().zip(&self.coefficients) {
            if set.len() > self.r {
                return bad(format!("repair set of size {} exceeds r = {}", set.len(), self.r));
            }
            if set.len() != coeffs.len() {
                return bad("coefficient vector length differs from its set".into());
            }
            let mut acc = vec![0u64; code.k()];
            for (&j, &lambda) in set.iter().zip(coeffs) {
                if j >= n {
                    return bad(format!("coordinate {} outside length {n}", j + 1));
                }
                if j == i {
                    return bad(format!("repair set contains its own coordinate {}", i + 1));
                }
                if used[j] {
                    return bad(format!("coordinate {} appears in two repair sets", j + 1));
                }
                used[j] = true;
                if lambda >= f.modulus() {
                    return bad(format!("coefficient {lambda} not reduced"));
                }
                for (a, g) in acc.iter_mut().zip(code.column(j)) {
                    *a = f.mul_add(*a, lambda, g);
                }
            }
            if acc != target {
                return bad(format!("set {:?} does not rebuild g_{}", one_based(set), i + 1));
            }
        }
        Ok(())
    }

    pub fn to_file(&self) -> CertificateFile {
        CertificateFile {
            i: self.coordinate + 1,
            r: self.r,
            delta: self.delta,
            sets: self.repair_sets.iter().map(|s| one_based(s)).collect(),
            coeffs: self.coefficients.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("certificate serializes")
    }

    /// Parses a certificate and verifies it against `code`.
    pub fn from_json(text: &str, code: &LinearCode) -> Result<Self> {
        let file: CertificateFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let cert = file.into_certificate()?;
        cert.verify(code)?;
        Ok(cert)
    }

    /// Largest repair set actually stored.
    pub fn max_set_size(&self) -> usize {
        self.repair_sets.iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl CertificateFile {
    pub fn into_certificate(self) -> Result<RepairCertificate> {
        let zero_based = |x: usize| {
            x.checked_sub(1)
                .ok_or_else(|| Error::Parse("coordinates are 1-based".into()))
        };
        Ok(RepairCertificate {
            coordinate: zero_based(self.i)?,
            r: self.r,
            delta: self.delta,
            repair_sets: self
                .sets
                .into_iter()
                .map(|s| s.into_iter().map(zero_based).collect())
                .collect::<Result<_>>()?,
            coefficients: self.coeffs,
        })
    }
}

pub(crate) fn one_based(s: &[usize]) -> Vec<usize> {
    s.iter().map(|x| x + 1).collect()
}

fn check_coordinate(code: &LinearCode, i: usize) -> Result<()> {
    if i >= code.n() {
        Err(Error::IndexOutOfRange { index: i, n: code.n() })
    } else {
        Ok(())
    }
}

/// All inclusion-minimal sets `S` of other coordinates with `|S| <= r` whose
/// columns span `g_i`, in lexicographic order.
pub fn candidate_repair_sets(
    code: &LinearCode,
    i: usize,
    r: usize,
    budget: u128,
) -> Result<Vec<Vec<usize>>> {
    check_coordinate(code, i)?;
    if r == 0 {
        return Err(Error::InvalidParams("r must be positive".into()));
    }
    let n = code.n();
    let required: u128 = (1..=r.min(n - 1))
        .map(|j| binomial((n - 1) as u64, j as u64))
        .fold(0u128, |a, b| a.saturating_add(b));
    if required > budget {
        return Err(Error::SearchBudgetExceeded { required, budget });
    }
    let target = code.column(i);
    if target.iter().all(|&v| v == 0) {
        return Err(Error::InvalidParams(format!(
            "column {} is zero; the empty set already repairs it",
            i + 1
        )));
    }
    let gen = code.generator();
    let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for size in 1..=r.min(others.len()) {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let set: Vec<usize> = pick.iter().map(|&p| others[p]).collect();
            // a minimal subset found at a smaller size makes this one redundant
            let redundant = found.iter().any(|f| f.iter().all(|x| set.contains(x)));
            if !redundant && gen.select_columns(&set).express_in_span(&target)?.is_some() {
                found.push(set);
            }
            if !crate::combin::next_combination(&mut pick, others.len()) {
                break;
            }
        }
    }
    found.sort();
    Ok(found)
}

/// Picks `count` pairwise disjoint sets from `candidates` by exact
/// backtracking, trying smaller candidates first.
fn pack_disjoint(
    candidates: &[Vec<usize>],
    count: usize,
    n: usize,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by_key(|&c| candidates[c].len());
    let mut used = vec![false; n];
    let mut chosen = Vec::with_capacity(count);
    let mut nodes = 0u64;

    fn go(
        candidates: &[Vec<usize>],
        order: &[usize],
        start: usize,
        count: usize,
        used: &mut [bool],
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        if chosen.len() == count {
            return Ok(true);
        }
        // not enough candidates left to finish
        if order.len() - start < count - chosen.len() {
            return Ok(false);
        }
        for pos in start..order.len() {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::SearchBudgetExceeded {
                    required: *nodes as u128,
                    budget: budget as u128,
                });
            }
            let c = order[pos];
            if candidates[c].iter().any(|&x| used[x]) {
                continue;
            }
            for &x in &candidates[c] {
                used[x] = true;
            }
            chosen.push(c);
            if go(candidates, order, pos + 1, count, used, chosen, nodes, budget)? {
                return Ok(true);
            }
            chosen.pop();
            for &x in &candidates[c] {
                used[x] = false;
            }
        }
        Ok(false)
    }

    let ok = go(
        candidates, &order, 0, count, &mut used, &mut chosen, &mut nodes, budget,
    )?;
    Ok(ok.then_some(chosen))
}

fn check_locality_params(r: usize, delta: usize) -> Result<()> {
    if r < 2 || delta < 2 {
        return Err(Error::InvalidParams(format!(
            "need r >= 2 and delta >= 2, got r = {r}, delta = {delta}"
        )));
    }
    Ok(())
}

/// Builds a certificate from explicit repair sets, computing coefficients.
/// Returns `None` if some set does not span `g_i`.
pub fn certificate_from_sets(
    code: &LinearCode,
    i: usize,
    r: usize,
    delta: usize,
    sets: Vec<Vec<usize>>,
) -> Result<Option<RepairCertificate>> {
    check_coordinate(code, i)?;
    let target = code.column(i);
    let mut coefficients = Vec::with_capacity(sets.len());
    for set in &sets {
        match code.generator().select_columns(set).express_in_span(&target)? {
            Some(lambda) => coefficients.push(lambda),
            None => return Ok(None),
        }
    }
    Ok(Some(RepairCertificate {
        coordinate: i,
        r,
        delta,
        repair_sets: sets,
        coefficients,
    }))
}

/// Searches for `delta - 1` disjoint repair sets of size at most `r` for
/// coordinate `i`.
pub fn certify_locality(
    code: &LinearCode,
    i: usize,
    r: usize,
    delta: usize,
) -> Result<Option<RepairCertificate>> {
    certify_locality_with_budget(code, i, r, delta, DEFAULT_SEARCH_BUDGET, DEFAULT_PACKING_BUDGET)
}

pub fn certify_locality_with_budget(
    code: &LinearCode,
    i: usize,
    r: usize,
    delta: usize,
    search_budget: u128,
    packing_budget: u64,
) -> Result<Option<RepairCertificate>> {
    check_locality_params(r, delta)?;
    check_coordinate(code, i)?;
    if code.column(i).iter().all(|&v| v == 0) {
        // a zero symbol carries no information and needs no repair sets
        return certificate_from_sets(code, i, r, delta, vec![Vec::new(); delta - 1]);
    }
    let candidates = candidate_repair_sets(code, i, r, search_budget)?;
    let Some(picked) = pack_disjoint(&candidates, delta - 1, code.n(), packing_budget)? else {
        return Ok(None);
    };
    let sets = picked.into_iter().map(|c| candidates[c].clone()).collect();
    certificate_from_sets(code, i, r, delta, sets)
}

/// Which kind of locality a code has been shown to have.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum LocalityClass {
    None,
    /// Every coordinate of the information set `info_set` is certified.
    Information {
        #[serde(with = "one_based_vec")]
        info_set: Vec<usize>,
    },
    AllSymbol,
}

impl LocalityClass {
    pub fn name(&self) -> &'static str {
        match self {
            LocalityClass::None => "none",
            LocalityClass::Information { .. } => "information",
            LocalityClass::AllSymbol => "all_symbol",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityProfile {
    pub r: usize,
    pub delta: usize,
    /// Indexed by coordinate.
    pub certificates: Vec<Option<RepairCertificate>>,
    pub class: LocalityClass,
}

impl LocalityProfile {
    pub fn certified(&self) -> impl Iterator<Item = &RepairCertificate> {
        self.certificates.iter().flatten()
    }

    pub fn certified_coordinates(&self) -> Vec<usize> {
        self.certified().map(|c| c.coordinate).collect()
    }

    /// Assembles a profile from per-coordinate results and classifies it.
    pub fn from_certificates(
        code: &LinearCode,
        r: usize,
        delta: usize,
        certificates: Vec<Option<RepairCertificate>>,
    ) -> Self {
        let class = if certificates.iter().all(Option::is_some) {
            LocalityClass::AllSymbol
        } else {
            let mut chosen = Vec::new();
            let mut scratch = Vec::new();
            for (i, _) in certificates.iter().enumerate().filter(|(_, c)| c.is_some()) {
                chosen.push(i);
                if code.generator().column_subset_rank(&chosen, &mut scratch) < chosen.len() {
                    chosen.pop();
                }
                if chosen.len() == code.k() {
                    break;
                }
            }
            if chosen.len() == code.k() {
                LocalityClass::Information { info_set: chosen }
            } else {
                LocalityClass::None
            }
        };
        LocalityProfile {
            r,
            delta,
            certificates,
            class,
        }
    }
}

/// Certifies every coordinate (in parallel) and classifies the code.
pub fn locality_profile(code: &LinearCode, r: usize, delta: usize) -> Result<LocalityProfile> {
    check_locality_params(r, delta)?;
    let certificates = (0..code.n())
        .into_par_iter()
        .map(|i| certify_locality(code, i, r, delta))
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalityProfile::from_certificates(code, r, delta, certificates))
}

/// A successful local repair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Repair {
    pub value: u64,
    /// Index of the repair set used within the certificate.
    pub set_index: usize,
    pub symbols_read: usize,
}

/// Rebuilds erased symbol `cert.coordinate` from the first repair set that
/// has no erased member. `Ok(None)` means every set is blocked.
pub fn local_repair(
    code: &LinearCode,
    word: &Codeword,
    cert: &RepairCertificate,
) -> Result<Option<Repair>> {
    let i = cert.coordinate;
    if word.len() != code.n() {
        return Err(Error::CertificateMismatch(format!(
            "codeword length {} differs from code length {}",
            word.len(),
            code.n()
        )));
    }
    let out_of_range = cert.repair_sets.iter().flatten().any(|&j| j >= code.n());
    if i >= code.n() || out_of_range || cert.coefficients.len() != cert.repair_sets.len() {
        return Err(Error::CertificateMismatch(
            "certificate refers to coordinates outside this code".into(),
        ));
    }
    if !word.is_erased(i) {
        return Err(Error::InvalidParams(format!("symbol {} is not erased", i + 1)));
    }
    let f = code.field();
    for (set_index, (set, coeffs)) in cert.repair_sets.iter().zip(&cert.coefficients).enumerate() {
        if set.iter().any(|&j| word.is_erased(j)) {
            continue;
        }
        let value = set.iter().zip(coeffs).fold(0, |acc, (&j, &lambda)| {
            f.mul_add(acc, lambda, word.get(j).expect("unerased"))
        });
        return Ok(Some(Repair {
            value,
            set_index,
            symbols_read: set.len(),
        }));
    }
    Ok(None)
}

/// Per-node costs as fractions of the original data size `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairMetrics {
    #[serde(with = "ratio_str")]
    pub storage_per_node: Ratio<u64>,
    pub repair_locality: usize,
    pub local_repair_tolerance: usize,
    #[serde(with = "ratio_str")]
    pub repair_bandwidth: Ratio<u64>,
}

pub fn repair_metrics(code: &LinearCode, profile: &LocalityProfile) -> Result<RepairMetrics> {
    if profile.class == LocalityClass::None {
        return Err(Error::NotLocal {
            r: profile.r,
            delta: profile.delta,
        });
    }
    let k = code.k() as u64;
    let locality = profile
        .certified()
        .map(RepairCertificate::max_set_size)
        .max()
        .unwrap_or(0);
    Ok(RepairMetrics {
        storage_per_node: Ratio::new(1, k),
        repair_locality: locality,
        local_repair_tolerance: profile.delta - 1,
        repair_bandwidth: Ratio::new(locality as u64, k),
    })
}

/// Settings for [`simulate_repairs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepairSimConfig {
    pub trials: u64,
    pub seed: u64,
    /// Largest erasure pattern drawn, target included. `None` means
    /// `delta - 1`, the guaranteed tolerance.
    pub max_erasures: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepairSimSummary {
    pub trials: u64,
    pub successes: u64,
    /// Episodes where every repair set was blocked.
    pub blocked: u64,
    /// Episodes that repaired to a value different from the encoding.
    pub wrong_value: u64,
    pub max_erasures: usize,
    pub symbols_read: u64,
    pub mean_symbols_read: f64,
    /// Mean symbols read divided by `k`, i.e. the fraction of `B` fetched.
    pub bandwidth_fraction: f64,
}

/// Random repair episodes over the certified coordinates of `profile`.
///
/// Each episode draws, from one seeded stream and in this order: a message,
/// a target coordinate among the certified ones, a pattern size in
/// `1..=max_erasures`, and the other erased coordinates. The repaired value
/// is compared against the re-encoded message.
pub fn simulate_repairs(
    code: &LinearCode,
    profile: &LocalityProfile,
    config: RepairSimConfig,
) -> Result<RepairSimSummary> {
    let targets: Vec<&RepairCertificate> = profile.certified().collect();
    if targets.is_empty() || profile.class == LocalityClass::None {
        return Err(Error::NotLocal {
            r: profile.r,
            delta: profile.delta,
        });
    }
    let max_erasures = config
        .max_erasures
        .unwrap_or(profile.delta - 1)
        .clamp(1, code.n());
    let q = code.field().modulus();
    let mut rng = CodeRng::new(config.seed);
    let mut summary = RepairSimSummary {
        trials: config.trials,
        successes: 0,
        blocked: 0,
        wrong_value: 0,
        max_erasures,
        symbols_read: 0,
        mean_symbols_read: 0.0,
        bandwidth_fraction: 0.0,
    };
    for _ in 0..config.trials {
        let msg: Vec<u64> = (0..code.k()).map(|_| rng.below(q)).collect();
        let cert = targets[rng.below(targets.len() as u64) as usize];
        let size = 1 + rng.below(max_erasures as u64) as usize;
        let others: Vec<usize> = (0..code.n()).filter(|&j| j != cert.coordinate).collect();
        let mut word = code.encode(&msg)?;
        let original = word.get(cert.coordinate).expect("fresh codeword");
        word.erase(cert.coordinate);
        for p in rng.subset(others.len(), size - 1) {
            word.erase(others[p]);
        }
        match local_repair(code, &word, cert)? {
            Some(rep) if rep.value == original => {
                summary.successes += 1;
                summary.symbols_read += rep.symbols_read as u64;
            }
            Some(_) => summary.wrong_value += 1,
            None => summary.blocked += 1,
        }
    }
    if summary.successes > 0 {
        summary.mean_symbols_read = summary.symbols_read as f64 / summary.successes as f64;
        summary.bandwidth_fraction = summary.mean_symbols_read / code.k() as f64;
    }
    Ok(summary)
}

mod ratio_str {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{}/{}", v.numer(), v.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let text = String::deserialize(d)?;
        let (a, b) = text
            .split_once('/')
            .ok_or_else(|| serde::de::Error::custom("expected a/b"))?;
        let a: u64 = a.trim().parse().map_err(serde::de::Error::custom)?;
        let b: u64 = b.trim().parse().map_err(serde::de::Error::custom)?;
        if b == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(a, b))
    }
}

mod one_based_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
        super::one_based(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
        Vec::<usize>::deserialize(d)?
            .into_iter()
            .map(|x| x.checked_sub(1).ok_or_else(|| serde::de::Error::custom("coordinates are 1-based")))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::matrix::FieldMatrix;

    fn fano() -> LinearCode {
        LinearCode::from_rows(
            Field::binary(),
            &[
                vec![1, 0, 0, 0, 1, 1, 1],
                vec![0, 1, 0, 1, 0, 1, 1],
                vec![0, 0, 1, 1, 1, 0, 1],
            ],
        )
        .unwrap()
    }

    fn c633() -> LinearCode {
        LinearCode::from_rows(
            Field::binary(),
            &[
                vec![1, 0, 0, 1, 1, 1],
                vec![0, 1, 0, 1, 0, 1],
                vec![0, 0, 1, 0, 1, 1],
            ],
        )
        .unwrap()
    }

    /// Brute force over every subset of the other coordinates of size <= r.
    fn candidates_oracle(code: &LinearCode, i: usize, r: usize) -> Vec<Vec<usize>> {
        let n = code.n();
        let spans = |s: &[usize]| {
            let mut with: Vec<usize> = s.to_vec();
            let base = code.subset_rank(&with).unwrap();
            with.push(i);
            code.subset_rank(&with).unwrap() == base
        };
        let mut hits: Vec<Vec<usize>> = Vec::new();
        for mask in 1u32..(1 << n) {
            if mask & (1 << i) != 0 || mask.count_ones() as usize > r {
                continue;
            }
            let s: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
            if !spans(&s) {
                continue;
            }
            let minimal = s.iter().all(|&x| {
                let t: Vec<usize> = s.iter().copied().filter(|&y| y != x).collect();
                !spans(&t)
            });
            if minimal {
                hits.push(s);
            }
        }
        hits.sort();
        hits
    }

    #[test]
    fn fano_candidates() {
        let c = fano();
        let got = candidate_repair_sets(&c, 0, 2, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(got, vec![vec![1, 5], vec![2, 4], vec![3, 6]]);
        assert_eq!(got, candidates_oracle(&c, 0, 2));
        for i in 0..7 {
            assert_eq!(
                candidate_repair_sets(&c, i, 2, DEFAULT_SEARCH_BUDGET).unwrap(),
                candidates_oracle(&c, i, 2)
            );
        }
    }

    #[test]
    fn c633_candidates() {
        let c = c633();
        let got = candidate_repair_sets(&c, 0, 2, DEFAULT_SEARCH_BUDGET).unwrap();
        // columns 2 + 4 and 3 + 5 (1-based) each sum to (1, 0, 0)
        assert_eq!(got, vec![vec![1, 3], vec![2, 4]]);
        for i in 0..6 {
            assert_eq!(
                candidate_repair_sets(&c, i, 2, DEFAULT_SEARCH_BUDGET).unwrap(),
                candidates_oracle(&c, i, 2)
            );
        }
        // r = 3 admits larger minimal sets as well
        assert_eq!(
            candidate_repair_sets(&c, 0, 3, DEFAULT_SEARCH_BUDGET).unwrap(),
            candidates_oracle(&c, 0, 3)
        );
    }

    #[test]
    fn identity_code_has_no_candidates() {
        let id = LinearCode::new(FieldMatrix::identity(Field::binary(), 2)).unwrap();
        assert!(candidate_repair_sets(&id, 0, 2, DEFAULT_SEARCH_BUDGET).unwrap().is_empty());
        assert!(certify_locality(&id, 0, 2, 2).unwrap().is_none());
    }

    #[test]
    fn candidate_budget() {
        assert!(matches!(
            candidate_repair_sets(&fano(), 0, 2, 20),
            Err(Error::SearchBudgetExceeded { required: 21, budget: 20 })
        ));
    }

    #[test]
    fn certificates() {
        let cert = certify_locality(&fano(), 0, 2, 4).unwrap().unwrap();
        assert_eq!(cert.repair_sets, vec![vec![1, 5], vec![2, 4], vec![3, 6]]);
        assert_eq!(cert.coefficients, vec![vec![1, 1]; 3]);
        cert.verify(&fano()).unwrap();
        assert!(certify_locality(&fano(), 0, 2, 5).unwrap().is_none());

        let cert = certify_locality(&c633(), 0, 2, 3).unwrap().unwrap();
        assert_eq!(cert.repair_sets.len(), 2);
        cert.verify(&c633()).unwrap();
        assert!(certify_locality(&c633(), 0, 2, 4).unwrap().is_none());
        assert!(certify_locality(&c633(), 0, 1, 3).is_err());
    }

    #[test]
    fn packing_needs_backtracking() {
        // greedy on {0,1} would block both {0,2} and {1,3}
        let cands = vec![vec![0, 1], vec![0, 2], vec![1, 3]];
        assert_eq!(pack_disjoint(&cands, 2, 4, 100).unwrap(), Some(vec![1, 2]));
        assert_eq!(pack_disjoint(&cands, 3, 4, 100).unwrap(), None);
        assert!(pack_disjoint(&cands, 2, 4, 1).is_err());
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let code = fano();
        let good = certify_locality(&code, 0, 2, 4).unwrap().unwrap();

        let mut overlap = good.clone();
        overlap.repair_sets[1] = vec![1, 4];
        assert!(overlap.verify(&code).is_err());

        let mut wrong = good.clone();
        wrong.repair_sets[0] = vec![1, 2];
        assert!(wrong.verify(&code).is_err());

        let mut own = good.clone();
        own.repair_sets[0] = vec![0];
        own.coefficients[0] = vec![1];
        assert!(own.verify(&code).is_err());

        let mut short = good.clone();
        short.repair_sets.pop();
        assert!(short.verify(&code).is_err());

        let mut big = good.clone();
        big.r = 1;
        assert!(big.verify(&code).is_err());
    }

    #[test]
    fn certificate_json() {
        let code = fano();
        let cert = certify_locality(&code, 0, 2, 4).unwrap().unwrap();
        let json = cert.to_json();
        let file: CertificateFile = serde_json::from_str(&json).unwrap();
        assert_eq!(file.i, 1);
        assert_eq!(file.sets, vec![vec![2, 6], vec![3, 5], vec![4, 7]]);
        assert_eq!(RepairCertificate::from_json(&json, &code).unwrap(), cert);
        // a valid non-minimal set is accepted on load
        let loose = r#"{"i":1,"r":3,"delta":2,"sets":[[2,3,4]],"coeffs":[[1,1,1]]}"#;
        assert!(RepairCertificate::from_json(loose, &code).is_err());
        let loose = r#"{"i":1,"r":3,"delta":2,"sets":[[2,6,3]],"coeffs":[[1,1,0]]}"#;
        assert!(RepairCertificate::from_json(loose, &code).is_ok());
        let zero = r#"{"i":0,"r":2,"delta":2,"sets":[[2,6]],"coeffs":[[1,1]]}"#;
        assert!(RepairCertificate::from_json(zero, &code).is_err());
    }

    #[test]
    fn profiles() {
        assert_eq!(locality_profile(&fano(), 2, 4).unwrap().class, LocalityClass::AllSymbol);
        assert_eq!(locality_profile(&c633(), 2, 3).unwrap().class, LocalityClass::AllSymbol);
        assert_eq!(locality_profile(&fano(), 2, 5).unwrap().class, LocalityClass::None);

        // [1 0 1 0 1; 0 1 0 1 0]: coordinate 1 and its copies have locality,
        // coordinate 2 has one copy only
        let code = LinearCode::from_rows(
            Field::binary(),
            &[vec![1, 0, 1, 0, 1], vec![0, 1, 0, 1, 0]],
        )
        .unwrap();
        let p = locality_profile(&code, 2, 3).unwrap();
        assert_eq!(p.class, LocalityClass::None);
        let p = locality_profile(&code, 2, 2).unwrap();
        assert_eq!(p.class, LocalityClass::AllSymbol);
    }

    #[test]
    fn information_classification() {
        // three copies of each unit vector plus one all-ones parity, which
        // needs three columns and so has no repair set of size 2
        let code = LinearCode::from_rows(
            Field::binary(),
            &[
                vec![1, 0, 0, 1, 0, 0, 1, 0, 0, 1],
                vec![0, 1, 0, 0, 1, 0, 0, 1, 0, 1],
                vec![0, 0, 1, 0, 0, 1, 0, 0, 1, 1],
            ],
        )
        .unwrap();
        let p = locality_profile(&code, 2, 3).unwrap();
        assert!(p.certificates[9].is_none());
        assert_eq!(p.certified_coordinates(), (0..9).collect::<Vec<_>>());
        assert_eq!(p.class, LocalityClass::Information { info_set: vec![0, 1, 2] });
        let m = repair_metrics(&code, &p).unwrap();
        assert_eq!(m.repair_locality, 1);
    }

    #[test]
    fn repairs() {
        let code = fano();
        let cert = certify_locality(&code, 0, 2, 4).unwrap().unwrap();
        let original = code.encode(&[1, 1, 0]).unwrap();

        let mut w = original.clone();
        w.erase_all(&[0, 1, 5]);
        let rep = local_repair(&code, &w, &cert).unwrap().unwrap();
        assert_eq!(cert.repair_sets[rep.set_index], vec![2, 4]);
        assert_eq!(rep.value, original.get(0).unwrap());

        let mut w = original.clone();
        w.erase(0);
        let rep = local_repair(&code, &w, &cert).unwrap().unwrap();
        assert_eq!(rep.set_index, 0);
        assert_eq!(rep.symbols_read, 2);

        assert!(local_repair(&code, &original, &cert).is_err());

        let code = c633();
        let cert = certify_locality(&code, 0, 2, 3).unwrap().unwrap();
        let mut w = code.encode(&[1, 0, 1]).unwrap();
        w.erase_all(&[0, 1, 2]);
        assert_eq!(local_repair(&code, &w, &cert).unwrap(), None);

        let short = Codeword::new(vec![0; 3]);
        assert!(matches!(
            local_repair(&code, &short, &cert),
            Err(Error::CertificateMismatch(_))
        ));
    }

    #[test]
    fn metrics() {
        let code = fano();
        let m = repair_metrics(&code, &locality_profile(&code, 2, 4).unwrap()).unwrap();
        assert_eq!(m.storage_per_node, Ratio::new(1, 3));
        assert_eq!(m.repair_locality, 2);
        assert_eq!(m.local_repair_tolerance, 3);
        assert_eq!(m.repair_bandwidth, Ratio::new(2, 3));
        let json = serde_json::to_value(m).unwrap();
        assert_eq!(json["storage_per_node"], "1/3");
        assert_eq!(json["repair_bandwidth"], "2/3");

        let code = c633();
        let m = repair_metrics(&code, &locality_profile(&code, 2, 3).unwrap()).unwrap();
        assert_eq!(
            (m.storage_per_node, m.repair_locality, m.local_repair_tolerance, m.repair_bandwidth),
            (Ratio::new(1, 3), 2, 2, Ratio::new(2, 3))
        );

        let id = LinearCode::new(FieldMatrix::identity(Field::binary(), 3)).unwrap();
        let p = locality_profile(&id, 2, 2).unwrap();
        assert!(matches!(repair_metrics(&id, &p), Err(Error::NotLocal { .. })));
    }

    #[test]
    fn simulation() {
        let code = fano();
        let p = locality_profile(&code, 2, 4).unwrap();
        let cfg = RepairSimConfig { trials: 2000, seed: 5, max_erasures: None };
        let s = simulate_repairs(&code, &p, cfg).unwrap();
        assert_eq!(s.successes, 2000);
        assert_eq!(s.mean_symbols_read, 2.0);
        assert_eq!(simulate_repairs(&code, &p, cfg).unwrap(), s);

        let zero = simulate_repairs(&code, &p, RepairSimConfig { trials: 0, ..cfg }).unwrap();
        assert_eq!((zero.trials, zero.successes), (0, 0));

        let code = c633();
        let p = locality_profile(&code, 2, 3).unwrap();
        let over = RepairSimConfig { trials: 3000, seed: 9, max_erasures: Some(3) };
        let s = simulate_repairs(&code, &p, over).unwrap();
        assert!(s.blocked > 0);
        assert_eq!(s.wrong_value, 0);
        assert_eq!(s.successes + s.blocked, 3000);
    }
}

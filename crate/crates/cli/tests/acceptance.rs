//! Acceptance suite. Runs every criterion, prints one line each and exits
//! non-zero if any failed.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lrc_cli::{analyze, fig5_points};
use lrc_core::bounds::{self, bound_c_min_length, bound_prakash_min_length, gap_report, LocalityParams};
use lrc_core::code::{DEFAULT_RANK_BUDGET, DEFAULT_WORD_BUDGET};
use lrc_core::combin::next_combination;
use lrc_core::constructions::{
    code_633, construct_square, construct_theorem2, fano_code, verify_optimality,
    ConstructionReport, LocalityClaim, SquareSpec, Theorem2Spec, Verdict, VerifyPlan,
};
use lrc_core::field::is_prime;
use lrc_core::locality::{local_repair, locality_profile, simulate_repairs, RepairSimConfig};
use lrc_core::rng::CodeRng;
use lrc_core::{Field, LinearCode, LocalityClass};

fn all_symbol(code: &LinearCode, r: usize, delta: usize) {
    let profile = locality_profile(code, r, delta).unwrap();
    assert_eq!(profile.class, LocalityClass::AllSymbol);
    for cert in profile.certified() {
        cert.verify(code).unwrap();
        assert_eq!(cert.repair_sets.len(), delta - 1);
        assert!(cert.repair_sets.iter().all(|s| s.len() <= r));
    }
}

fn both_distances(code: &LinearCode) -> (usize, usize) {
    (
        code.min_distance_words(DEFAULT_WORD_BUDGET).unwrap(),
        code.min_distance_rank(DEFAULT_RANK_BUDGET).unwrap(),
    )
}

fn criterion_1() -> String {
    let code = fano_code();
    assert_eq!((code.n(), code.k()), (7, 3));
    assert_eq!(both_distances(&code), (4, 4));
    all_symbol(&code, 2, 4);
    assert_eq!(bound_c_min_length(3, 4, 2, 4).unwrap(), 7);
    "Fano [7,3,4], all-symbol (2,4), length bound 7 met".into()
}

fn criterion_2() -> String {
    let code = code_633();
    assert_eq!((code.n(), code.k()), (6, 3));
    assert_eq!(both_distances(&code), (3, 3));
    all_symbol(&code, 2, 3);
    assert_eq!(bound_c_min_length(3, 3, 2, 3).unwrap(), 6);
    assert_eq!(bound_prakash_min_length(3, 3, 2, 3).unwrap(), 7);
    "[6,3,3], all-symbol (2,3), bound n >= 6 met while the other demands 7".into()
}

fn criterion_3() -> String {
    let report = analyze(&fano_code(), 2, 4).unwrap();
    let m = serde_json::to_value(report.metrics.unwrap()).unwrap();
    assert_eq!(m["storage_per_node"], "1/3");
    assert_eq!(m["repair_locality"], 2);
    assert_eq!(m["local_repair_tolerance"], 3);
    assert_eq!(m["repair_bandwidth"], "2/3");
    "Fano metrics: storage 1/3 B, locality 2, tolerance 3, bandwidth 2/3 B".into()
}

fn theorem2(k: usize, r: usize, delta: usize, q: u64) -> ConstructionReport {
    let mut spec = Theorem2Spec::new(k, r, delta, q);
    spec.verify = VerifyPlan::Exhaustive;
    spec.max_retries = 5;
    construct_theorem2(spec).unwrap()
}

fn square(r: usize, k: usize, q: u64) -> ConstructionReport {
    let mut spec = SquareSpec::new(r, k, q);
    spec.verify = VerifyPlan::Exhaustive;
    construct_square(spec).unwrap()
}

fn criterion_4() -> String {
    let mut out = Vec::new();
    for (delta, q, n, d) in [(2, 17, 6, 5), (3, 211, 10, 9)] {
        let start = Instant::now();
        let rep = theorem2(2, 2, delta, q);
        assert!(rep.retries_used <= 5);
        assert_eq!(rep.code.n(), n);
        let dist = rep.conditions.distance.as_ref().unwrap();
        assert!(dist.passed && dist.is_proof);
        let opt = verify_optimality(&rep.code, 2, 2, delta, LocalityClaim::Information).unwrap();
        assert_eq!(opt.d_rank, Some(d));
        assert_eq!(opt.verdict, Verdict::Optimal);
        let took = start.elapsed();
        assert!(took < Duration::from_secs(10), "{took:?}");
        out.push(format!("d={d} at n={n} ({} retries)", rep.retries_used));
    }
    out.join(", ")
}

fn criterion_5() -> String {
    let start = Instant::now();
    let a = square(2, 3, 131);
    assert_eq!(a.target_distance, 6);
    assert!(a.conditions.passed());
    let opt = verify_optimality(&a.code, 3, 2, 3, LocalityClaim::AllSymbol).unwrap();
    assert_eq!(opt.verdict, Verdict::Optimal);
    let b = square(2, 4, 131);
    assert_eq!(b.target_distance, 4);
    assert!(b.conditions.passed());

    let q = 50_021;
    assert!(is_prime(q));
    let mut checked = 0u128;
    for k in 5..=9 {
        let rep = square(3, k, q);
        let d = rep.conditions.distance.as_ref().unwrap();
        assert!(d.passed && d.is_proof, "r=3 k={k}");
        assert_eq!(rep.target_distance as u64, bounds::SquareBoundsReport::new(k as u64, 3).unwrap().d_guarantee);
        checked += d.checked;
    }
    let took = start.elapsed();
    assert!(took < Duration::from_secs(120), "{took:?}");
    format!("r=2 k=3,4 at q=131 and r=3 k=5..9 at q={q} verified exhaustively ({checked} subsets)")
}

fn criterion_6() -> String {
    let start = Instant::now();
    let pts = fig5_points(5, Some(36)).unwrap();
    assert_eq!(pts.len(), 20);
    assert_eq!(pts.iter().map(|p| p.k).collect::<Vec<_>>(), (6..=25).collect::<Vec<_>>());
    assert!(pts.iter().all(|p| p.d_bound1 <= p.d_square && p.d_square <= p.d_bound2));
    let p21 = pts.iter().find(|p| p.k == 21).unwrap();
    assert_eq!((p21.d_square, p21.d_bound1), (11, 8));
    assert!(start.elapsed() < Duration::from_secs(1));
    "20 rows, ordering holds, k=21: d_square 11, d_bound1 8".into()
}

fn criterion_7() -> String {
    for r in 2..=17 {
        let g = gap_report(r).unwrap();
        assert!(g.gap >= g.gap_floor, "{g:?}");
        assert!(g.mu_k <= g.mu_k_cap, "{g:?}");
    }
    "gap floor and mu_k cap hold for r = 2..17".into()
}

fn criterion_8() -> String {
    let start = Instant::now();
    let mut rows = 0u64;
    for k in 3..=200u64 {
        for r in 2..k {
            for delta in 2..=12 {
                let p = LocalityParams::new(k, r, delta).unwrap();
                assert_eq!(p.mu(), p.mu_floor_form(), "({k},{r},{delta})");
                assert!(p.mu() <= p.prakash_penalty(), "({k},{r},{delta})");
                assert!(bounds::lemma3_check(k, r, delta).unwrap(), "({k},{r},{delta})");
                rows += 1;
            }
        }
    }
    let took = start.elapsed();
    assert!(took < Duration::from_secs(30), "{took:?}");
    format!("{rows} parameter sets, zero counterexamples")
}

/// Every erasure pattern of size at most `delta - 1` containing each
/// coordinate, for every message.
fn exhaustive_tolerance(code: &LinearCode, r: usize, delta: usize) -> u64 {
    let profile = locality_profile(code, r, delta).unwrap();
    assert_eq!(profile.class, LocalityClass::AllSymbol);
    let q = code.field().modulus();
    let n = code.n();
    let mut cases = 0;
    for cert in profile.certified() {
        let i = cert.coordinate;
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        for extra in 0..delta - 1 {
            let mut pick: Vec<usize> = (0..extra).collect();
            loop {
                cases += 1;
                for m in 0..q.pow(code.k() as u32) {
                    let msg: Vec<u64> = (0..code.k()).map(|t| m / q.pow(t as u32) % q).collect();
                    let original = code.encode(&msg).unwrap();
                    let mut word = original.clone();
                    word.erase(i);
                    for &p in &pick {
                        word.erase(others[p]);
                    }
                    let rep = local_repair(code, &word, cert).unwrap().unwrap();
                    assert_eq!(Some(rep.value), original.get(i));
                }
                if extra == 0 || !next_combination(&mut pick, others.len()) {
                    break;
                }
            }
        }
    }
    cases
}

fn criterion_9() -> String {
    let fano = exhaustive_tolerance(&fano_code(), 2, 4);
    let c633 = exhaustive_tolerance(&code_633(), 2, 3);
    assert_eq!(fano, 7 * (1 + 6 + 15));
    assert_eq!(c633, 6 * (1 + 5));
    let mut codes = vec![
        (theorem2(2, 2, 2, 17), 2),
        (theorem2(2, 2, 3, 211), 3),
        (square(2, 3, 131), 3),
        (square(2, 4, 131), 3),
    ];
    for k in 5..=9 {
        codes.push((square(3, k, 50_021), 3));
    }
    for (rep, delta) in &codes {
        let profile = locality_profile(&rep.code, rep.r, *delta).unwrap();
        let cfg = RepairSimConfig { trials: 1000, seed: 17, max_erasures: None };
        let s = simulate_repairs(&rep.code, &profile, cfg).unwrap();
        assert_eq!(s.successes, 1000, "{} k={}", rep.kind, rep.k);
    }
    format!("{fano} Fano and {c633} [6,3,3] patterns exhaustive, 1000/1000 episodes on {} constructed codes", codes.len())
}

fn criterion_10() -> String {
    let mut rng = CodeRng::new(2024);
    let mut tested = 0;
    while tested < 50 {
        let q = [2u64, 3, 5][rng.below(3) as usize];
        let k = 1 + rng.below(4) as usize;
        let n = k + rng.below((13 - k) as u64) as usize;
        let rows: Vec<Vec<u64>> = (0..k).map(|_| (0..n).map(|_| rng.below(q)).collect()).collect();
        let Ok(code) = LinearCode::from_rows(Field::new(q).unwrap(), &rows) else { continue };
        let (a, b) = both_distances(&code);
        assert_eq!(a, b, "q={q} rows={rows:?}");
        tested += 1;
    }
    "50 random codes, word and rank oracles agree".into()
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> String); 10] = [
        ("Fano code", criterion_1),
        ("[6,3,3] code", criterion_2),
        ("repair metrics", criterion_3),
        ("block construction", criterion_4),
        ("square construction", criterion_5),
        ("square curves", criterion_6),
        ("square gap", criterion_7),
        ("bound sweeps", criterion_8),
        ("erasure tolerance", criterion_9),
        ("distance oracles", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL criterion {:>2} {name}: {msg} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

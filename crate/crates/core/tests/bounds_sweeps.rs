use lrc_core::bounds::{
    comparison_holds, gap_report, lemma3_check, mu, mu_floor_form, mu_k_square, square_f,
    BoundsReport, LocalityParams,
};

/// Exact ceiling of a rational, computed through the float-free identity
/// `ceil(a/b) = (a + b - 1) / b`, independently of the library helper.
fn ceil_div(a: u64, b: u64) -> u64 {
    (a + b - 1) / b
}

#[test]
fn mu_two_forms_agree() {
    for k in 3..=200 {
        for r in 2..k {
            for delta in 2..=12 {
                assert_eq!(mu(k, r, delta).unwrap(), mu_floor_form(k, r, delta).unwrap());
            }
        }
    }
}

#[test]
fn mu_matches_an_independent_ceiling() {
    for k in 3..=60 {
        for r in 2..k {
            for delta in 2..=8 {
                let t = delta - 1;
                let expected = ceil_div((k - 1) * t + 1, (r - 1) * t + 1) - 1;
                assert_eq!(mu(k, r, delta).unwrap(), expected);
            }
        }
    }
}

#[test]
fn comparison_and_lemma3_sweep() {
    for k in 3..=200 {
        for r in 2..k {
            for delta in 2..=12 {
                assert!(comparison_holds(k, r, delta).unwrap(), "({k},{r},{delta})");
                assert!(lemma3_check(k, r, delta).unwrap(), "({k},{r},{delta})");
                let b = BoundsReport::new(k, r, delta).unwrap();
                for n in [k, k + 10, 3 * k] {
                    assert!(b.gap(n) >= 0);
                }
            }
        }
    }
}

#[test]
fn lemma3_exhaustive_small_range() {
    for k in 3..=40 {
        for r in 2..k {
            for delta in 2..=8 {
                assert!(lemma3_check(k, r, delta).unwrap());
            }
        }
    }
}

#[test]
fn mu_is_monotone() {
    for delta in 2..=12 {
        for r in 2..100 {
            for k in r + 1..200 {
                assert!(mu(k, r, delta).unwrap() <= mu(k + 1, r, delta).unwrap());
                if r + 1 < k {
                    assert!(mu(k, r + 1, delta).unwrap() <= mu(k, r, delta).unwrap());
                }
            }
        }
    }
}

#[test]
fn square_sandwich() {
    for r in 2..=30 {
        for k in r + 1..=r * r {
            let p = LocalityParams::new(k, r, 3).unwrap();
            let mk = mu_k_square(k, r).unwrap();
            assert!(p.mu() <= mk, "r={r} k={k}");
            assert!(mk <= p.prakash_penalty(), "r={r} k={k}");
        }
    }
}

#[test]
fn f_minus_x_is_nondecreasing() {
    for r in 2..=50u64 {
        let g: Vec<u64> = (0..=2 * r + 1).map(|x| square_f(x, r) - x).collect();
        assert!(g.windows(2).all(|w| w[0] <= w[1]), "r={r}: {g:?}");
        assert_eq!(g[0], 0);
        assert_eq!(g[(2 * r + 1) as usize], r * r);
        // strict everywhere except the last step, where both equal r^2
        assert!(g[..(2 * r) as usize].windows(2).all(|w| w[0] < w[1]), "r={r}: {g:?}");
    }
}

#[test]
fn mu_k_is_the_largest_admissible_x() {
    for r in 2..=20u64 {
        for k in r + 1..=r * r {
            let mk = mu_k_square(k, r).unwrap();
            assert!(square_f(mk, r) - mk < k);
            let all: Vec<u64> = (0..=2 * r + 1).filter(|&x| square_f(x, r) - x < k).collect();
            assert_eq!(*all.iter().max().unwrap(), mk);
        }
    }
}

#[test]
fn gap_grows_like_sqrt_r() {
    for r in 2..=17 {
        let g = gap_report(r).unwrap();
        assert!(g.holds(), "{g:?}");
        assert_eq!(g.d_upper_prakash, (g.n - g.k + 1) as i64 - 2 * (r as i64 - 1));
    }
}

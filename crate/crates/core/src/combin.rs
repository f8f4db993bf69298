//! Binomial coefficients and lexicographic subset enumeration.

/// C(n, m), saturating at `u128::MAX`.
pub fn binomial(n: u64, m: u64) -> u128 {
    if m > n {
        return 0;
    }
    let m = m.min(n - m);
    let mut acc: u128 = 1;
    for i in 0..m {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i + 1) as u128,
            None => return u128::MAX,
        };
    }
    acc
}

/// Advances `idx` to the next `idx.len()`-subset of `0..n` in lexicographic
/// order. Returns `false` once the last subset has been passed.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let m = idx.len();
    let mut i = m;
    while i > 0 {
        i -= 1;
        if idx[i] < n - m + i {
            idx[i] += 1;
            for j in i + 1..m {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Visits every `m`-subset of `0..n` whose smallest element is `first`, in
/// lexicographic order, until `visit` returns `false`. Returns the number of
/// subsets visited (including the one that stopped the scan).
pub fn for_each_with_first<F>(n: usize, m: usize, first: usize, mut visit: F) -> u64
where
    F: FnMut(&[usize]) -> bool,
{
    if m == 0 || first + m > n {
        return 0;
    }
    let mut subset: Vec<usize> = (first..first + m).collect();
    let mut count = 0;
    loop {
        count += 1;
        if !visit(&subset) {
            return count;
        }
        // advance the tail only; the head stays pinned to `first`
        if m == 1 || !next_combination(&mut subset[1..], n) {
            return count;
        }
    }
}

/// Number of `m`-subsets of `0..n` with smallest element `first`.
pub fn count_with_first(n: usize, m: usize, first: usize) -> u128 {
    if m == 0 || first + m > n {
        return 0;
    }
    binomial((n - first - 1) as u64, (m - 1) as u64)
}

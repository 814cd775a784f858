//! Binomials and lexicographic subset (un)ranking used throughout the crate.

/// Binomial coefficient with the convention `binomial(n, k) = 0` for `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    usize::try_from(acc).expect("binomial overflow")
}

pub fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// All k-element subsets of `{1, .., n}` in lexicographic order.
pub fn subsets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next subset: bump the rightmost element that still has room.
        let mut i = k;
        while i > 0 && cur[i - 1] == n - (k - i) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Lexicographic rank of a sorted subset of `{1, .., n}`.
pub fn subset_rank(n: usize, set: &[usize]) -> usize {
    let k = set.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &c) in set.iter().enumerate() {
        for v in prev + 1..c {
            rank += binomial(n - v, k - i - 1);
        }
        prev = c;
    }
    rank
}

/// Inverse of [`subset_rank`].
pub fn subset_unrank(n: usize, k: usize, mut rank: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut prev = 0;
    for i in 0..k {
        let mut c = prev + 1;
        loop {
            let block = binomial(n - c, k - i - 1);
            if rank < block {
                break;
            }
            rank -= block;
            c += 1;
        }
        out.push(c);
        prev = c;
    }
    out
}

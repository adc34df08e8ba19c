//! Binomials and lexicographic ranking of k-subsets of `{1, …, P}`.

pub fn binomial(n: u64, k: u64) -> u64 {
    checked_binomial(n, k).expect("binomial overflow")
}

pub fn checked_binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Position of the strictly increasing `subset` among all subsets of the
/// same size of `{1, …, points}`, in lexicographic order.
pub fn rank_subset(points: u32, subset: &[u32]) -> u64 {
    let p = points as u64;
    let k = subset.len() as u64;
    let mut rank = 0;
    let mut prev = 0u64;
    for (t, &z) in subset.iter().enumerate() {
        let remaining = k - t as u64;
        let z = z as u64;
        // subsets agreeing so far whose next element lies in (prev, z)
        rank += binomial(p - prev, remaining) - binomial(p - z + 1, remaining);
        prev = z;
    }
    rank
}

pub fn unrank_subset(points: u32, size: usize, mut rank: u64) -> Vec<u32> {
    let p = points as u64;
    let mut out = Vec::with_capacity(size);
    let mut next = 1u64;
    for t in 0..size {
        let remaining = (size - t - 1) as u64;
        loop {
            let block = binomial(p - next, remaining);
            if rank < block {
                break;
            }
            rank -= block;
            next += 1;
        }
        out.push(next as u32);
        next += 1;
    }
    out
}

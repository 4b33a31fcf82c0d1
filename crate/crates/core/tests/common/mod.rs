//! Test-only oracles shared by the integration suites.

/// Minimum Σ f·depth over all full binary trees with the given leaves,
/// by trying every split of every subset.
pub fn brute_force_min_cost(freqs: &[u64]) -> u64 {
    let k = freqs.len();
    if k == 1 {
        return freqs[0];
    }
    let full = (1usize << k) - 1;
    let weight: Vec<u64> = (0..=full)
        .map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| freqs[i]).sum())
        .collect();
    // best[mask]: cost of a subtree over `mask`, depth counted from its root.
    let mut best = vec![u64::MAX; full + 1];
    for mask in 1..=full {
        if mask.count_ones() == 1 {
            best[mask] = 0;
            continue;
        }
        let mut sub = (mask - 1) & mask;
        while sub > 0 {
            let rest = mask ^ sub;
            if sub < rest {
                let c = best[sub] + best[rest] + weight[mask];
                best[mask] = best[mask].min(c);
            }
            sub = (sub - 1) & mask;
        }
    }
    best[full]
}

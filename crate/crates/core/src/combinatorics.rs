//! Small enumeration helpers shared by the measure and hike modules:
//! signed permutations, set partitions, subsets and multi-indices.

/// Visits every permutation of `0..n` together with its signature.
///
/// Uses Heap's algorithm, which moves from one permutation to the next
/// by a single transposition, so the signature simply alternates.
pub fn for_each_permutation<F: FnMut(&[usize], i64)>(n: usize, mut visit: F) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1i64;
    visit(&perm, sign);
    if n < 2 {
        return;
    }
    // state of the iterative Heap's algorithm
    let mut counters = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            sign = -sign;
            visit(&perm, sign);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Signature of a permutation of `0..n`, computed from its cycle type.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut transpositions = 0usize;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = perm[at];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All partitions of `items` into nonempty blocks.
///
/// Blocks keep the input order of their elements and the list of
/// partitions is deterministic, so results are reproducible across runs.
pub fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let first = items[0];
    let rest = set_partitions(&items[1..]);
    let mut out = Vec::new();
    for partition in rest {
        // insert `first` into each existing block
        for slot in 0..partition.len() {
            let mut extended = partition.clone();
            extended[slot].insert(0, first);
            out.push(extended);
        }
        // or open a new block
        let mut extended = partition;
        extended.insert(0, vec![first]);
        out.push(extended);
    }
    out
}

/// All subsets of `items`, in bitmask order (the empty set first).
pub fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let n = items.len();
    assert!(n < 32, "subset enumeration is capped at 31 elements");
    (0..1u32 << n)
        .map(|mask| {
            (0..n)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| items[i])
                .collect()
        })
        .collect()
}

/// All vectors of `len` nonnegative integers with sum at most `max_total`.
pub fn multi_indices_total_at_most(len: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; len];
    fn rec(out: &mut Vec<Vec<usize>>, current: &mut Vec<usize>, pos: usize, budget: usize) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for value in 0..=budget {
            current[pos] = value;
            rec(out, current, pos + 1, budget - value);
        }
        current[pos] = 0;
    }
    rec(&mut out, &mut current, 0, max_total);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_exhaustive_and_signed() {
        let mut count = 0usize;
        let mut sign_sum = 0i64;
        for_each_permutation(4, |perm, sign| {
            count += 1;
            sign_sum += sign;
            assert_eq!(sign, permutation_sign(perm));
        });
        assert_eq!(count, 24);
        assert_eq!(sign_sum, 0);
    }

    #[test]
    fn partition_counts_follow_bell_numbers() {
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
            let items: Vec<usize> = (0..n).collect();
            assert_eq!(set_partitions(&items).len(), bell);
        }
    }

    #[test]
    fn subsets_of_three() {
        let s = subsets(&[7, 8, 9]);
        assert_eq!(s.len(), 8);
        assert!(s.contains(&vec![]));
        assert!(s.contains(&vec![7, 9]));
    }

    #[test]
    fn multi_index_count() {
        // #{k in N^2 : k1+k2 <= 3} = C(3+2,2) = 10
        assert_eq!(multi_indices_total_at_most(2, 3).len(), 10);
    }
}

//! Permutations of `{0, .., n-1}` in one-line form: `p[i]` is the image of `i`.

use crate::partitions::YoungDiagram;

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// `(s t)(i) = s(t(i))`.
pub fn compose(s: &[usize], t: &[usize]) -> Vec<usize> {
    t.iter().map(|&i| s[i]).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Disjoint cycles `(i_1 i_2 .. i_r)` with `p(i_k) = i_{k+1}`, each starting
/// at its smallest element, ordered by that element.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = p[i];
        }
        out.push(cycle);
    }
    out
}

pub fn cycle_type(p: &[usize]) -> YoungDiagram {
    YoungDiagram::from_unsorted(cycles(p).iter().map(Vec::len).collect())
}

/// The `k`-th permutation of `n` letters in lexicographic order.
pub fn nth_permutation(n: usize, mut k: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut fact = vec![1u64; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i as u64;
    }
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let idx = (k / fact[i]) as usize;
        k %= fact[i];
        out.push(pool.remove(idx));
    }
    out
}

/// All permutations of `n` letters, lexicographic.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let total: u64 = (1..=n as u64).product();
    (0..total).map(|k| nth_permutation(n, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_and_cycles() {
        let all = all_permutations(4);
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], vec![0, 1, 2, 3]);
        assert_eq!(all[23], vec![3, 2, 1, 0]);
        let p = vec![4, 0, 3, 2, 1]; // (0 4 1)(2 3)
        assert_eq!(cycles(&p), vec![vec![0, 4, 1], vec![2, 3]]);
        assert_eq!(cycle_type(&p).parts(), &[3, 2]);
        assert_eq!(compose(&p, &inverse(&p)), identity(5));
        assert!(is_permutation(&p));
        assert!(!is_permutation(&[0, 0]));
    }
}

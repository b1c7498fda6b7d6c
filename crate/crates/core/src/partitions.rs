//! Young diagrams and symmetric-group bookkeeping.
//!
//! Diagrams are immutable values. Partitions of `n` are always listed in
//! reverse-lexicographic order, e.g. `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::factorial;

/// A Young diagram given by its weakly decreasing positive row lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungDiagram {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        YoungDiagram::new(parts)
    }
}

impl From<YoungDiagram> for Vec<usize> {
    fn from(d: YoungDiagram) -> Self {
        d.parts
    }
}

/// A box in row `row`, column `col` (both 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxCoord {
    pub row: usize,
    pub col: usize,
}

impl BoxCoord {
    pub fn new(row: usize, col: usize) -> Self {
        BoxCoord { row, col }
    }

    /// Content `c = col - row`.
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl YoungDiagram {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Input(format!("diagram {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Input(format!("diagram {parts:?} is not weakly decreasing")));
        }
        Ok(YoungDiagram { parts })
    }

    /// Builds a diagram from parts in any order, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        YoungDiagram { parts }
    }

    pub fn empty() -> Self {
        YoungDiagram { parts: Vec::new() }
    }

    /// The one-row diagram `(n)`, or the empty diagram for `n = 0`.
    pub fn row(n: usize) -> Self {
        Self::from_unsorted(vec![n])
    }

    /// The one-column diagram `(1^n)`.
    pub fn column(n: usize) -> Self {
        YoungDiagram { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length `lambda_i` (1-based), zero beyond the last row.
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, b: BoxCoord) -> bool {
        b.row >= 1 && b.col >= 1 && b.col <= self.row_len(b.row)
    }

    pub fn transpose(&self) -> YoungDiagram {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        YoungDiagram { parts }
    }

    /// All boxes in row-major order.
    pub fn boxes(&self) -> impl Iterator<Item = BoxCoord> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| BoxCoord::new(i + 1, j)))
    }

    /// Hook lengths of all boxes, row-major.
    pub fn hooks(&self) -> Vec<usize> {
        let t = self.transpose();
        self.boxes()
            .map(|b| self.row_len(b.row) - b.col + t.row_len(b.col) - b.row + 1)
            .collect()
    }

    /// Multiplicities `m_i`: the number of rows equal to `i`.
    pub fn cycle_structure(&self) -> CycleStructure {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        CycleStructure { multiplicities: m }
    }

    /// The diagram obtained by adding `b`, if the result is a diagram.
    pub fn add_box(&self, b: BoxCoord) -> Option<YoungDiagram> {
        let row_len = self.row_len(b.row);
        if b.col != row_len + 1 || b.row > self.len() + 1 {
            return None;
        }
        if b.row > 1 && self.row_len(b.row - 1) < b.col {
            return None;
        }
        let mut parts = self.parts.clone();
        if b.row == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[b.row - 1] += 1;
        }
        Some(YoungDiagram { parts })
    }

    /// The diagram obtained by removing the corner box `b`.
    pub fn remove_box(&self, b: BoxCoord) -> Option<YoungDiagram> {
        if !self.contains(b) || b.col != self.row_len(b.row) || self.row_len(b.row + 1) >= b.col {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[b.row - 1] -= 1;
        if parts[b.row - 1] == 0 {
            parts.pop();
        }
        Some(YoungDiagram { parts })
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Cycle-type multiplicities `1^{m_1} 2^{m_2} ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleStructure {
    pub multiplicities: BTreeMap<usize, usize>,
}

impl CycleStructure {
    pub fn degree(&self) -> usize {
        self.multiplicities.iter().map(|(i, m)| i * m).sum()
    }

    pub fn to_diagram(&self) -> YoungDiagram {
        let mut parts = Vec::new();
        for (&i, &m) in self.multiplicities.iter().rev() {
            parts.extend(std::iter::repeat_n(i, m));
        }
        YoungDiagram::from_unsorted(parts)
    }
}

/// All partitions of `n`, reverse-lexicographic.
pub fn enumerate_partitions(n: usize) -> Vec<YoungDiagram> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if rest == 0 {
            out.push(YoungDiagram { parts: prefix.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn content(b: BoxCoord) -> i64 {
    b.content()
}

/// Hook length `h = lambda_i - i + lambda'_j - j + 1`.
pub fn hook(lambda: &YoungDiagram, b: BoxCoord) -> Result<usize> {
    if !lambda.contains(b) {
        return domain(format!("box ({},{}) lies outside {lambda}", b.row, b.col));
    }
    let t = lambda.transpose();
    Ok(lambda.row_len(b.row) - b.col + t.row_len(b.col) - b.row + 1)
}

/// Dimension of the irreducible `S_n`-module, by the hook-length formula.
pub fn dim_sym(lambda: &YoungDiagram) -> BigInt {
    let prod = lambda
        .hooks()
        .into_iter()
        .fold(BigInt::one(), |acc, h| acc * BigInt::from(h));
    factorial(lambda.size()) / prod
}

/// `z_rho = prod_i i^{m_i} m_i!`.
pub fn z_rho(rho: &YoungDiagram) -> BigInt {
    rho.cycle_structure()
        .multiplicities
        .iter()
        .fold(BigInt::one(), |acc, (&i, &m)| {
            acc * num_traits::pow(BigInt::from(i), m) * factorial(m)
        })
}

type CharKey = (Vec<usize>, Vec<usize>);

static CHARACTER_CACHE: LazyLock<RwLock<HashMap<CharKey, i64>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Drops all memoized symmetric-group character values.
pub fn clear_character_cache() {
    CHARACTER_CACHE.write().unwrap().clear();
}

pub fn character_cache_len() -> usize {
    CHARACTER_CACHE.read().unwrap().len()
}

/// The irreducible character `chi^lambda` at the class `rho`, by the
/// Murnaghan-Nakayama rule.
pub fn mn_character(lambda: &YoungDiagram, rho: &YoungDiagram) -> Result<i64> {
    if lambda.size() != rho.size() {
        return domain(format!(
            "character of {lambda} (size {}) at class {rho} (size {})",
            lambda.size(),
            rho.size()
        ));
    }
    Ok(mn_rec(&lambda.parts, &rho.parts))
}

fn mn_rec(lambda: &[usize], rho: &[usize]) -> i64 {
    if rho.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(&v) = CHARACTER_CACHE.read().unwrap().get(&key) {
        return v;
    }
    let r = rho[0];
    let rest = &rho[1..];
    let l = lambda.len();
    // beta numbers lambda_i + (l - i), strictly decreasing
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > target && c < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let mut shape: Vec<usize> = nb.iter().enumerate().map(|(i, &c)| c - (l - 1 - i)).collect();
        shape.retain(|&p| p > 0);
        total += sign * mn_rec(&shape, rest);
    }
    CHARACTER_CACHE.write().unwrap().insert(key, total);
    total
}

/// Addable and removable boxes of `lambda`, each listed by increasing row.
pub fn corner_moves(lambda: &YoungDiagram) -> (Vec<BoxCoord>, Vec<BoxCoord>) {
    let l = lambda.len();
    let mut addable = Vec::new();
    for i in 1..=l + 1 {
        let len = lambda.row_len(i);
        if i == 1 || lambda.row_len(i - 1) > len {
            addable.push(BoxCoord::new(i, len + 1));
        }
    }
    let removable = (1..=l)
        .filter(|&i| lambda.row_len(i) > lambda.row_len(i + 1))
        .map(|i| BoxCoord::new(i, lambda.row_len(i)))
        .collect();
    (addable, removable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm;
    use proptest::prelude::*;

    fn d(parts: &[usize]) -> YoungDiagram {
        YoungDiagram::new(parts.to_vec()).unwrap()
    }

    // Partition counts p(n) via Euler's pentagonal recurrence.
    fn partition_count(n: usize) -> usize {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut k = 1i64;
            let mut acc = 0i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * p[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    acc += sign * p[m - g2];
                }
                k += 1;
            }
            p[m] = acc;
        }
        p[n] as usize
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_partitions(0), vec![YoungDiagram::empty()]);
        assert_eq!(enumerate_partitions(2), vec![d(&[2]), d(&[1, 1])]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(
            enumerate_partitions(4),
            vec![d(&[4]), d(&[3, 1]), d(&[2, 2]), d(&[2, 1, 1]), d(&[1, 1, 1, 1])]
        );
        for n in 0..=15 {
            assert_eq!(enumerate_partitions(n).len(), partition_count(n), "n={n}");
        }
    }

    #[test]
    fn contents_and_hooks() {
        assert_eq!(content(BoxCoord::new(1, 1)), 0);
        assert_eq!(hook(&d(&[2, 1]), BoxCoord::new(1, 1)).unwrap(), 3);
        assert_eq!(hook(&d(&[1]), BoxCoord::new(1, 1)).unwrap(), 1);
        assert_eq!(content(BoxCoord::new(1, 3)), 2);
        assert_eq!(hook(&d(&[3]), BoxCoord::new(1, 3)).unwrap(), 1);
        assert!(matches!(hook(&d(&[2, 1]), BoxCoord::new(2, 2)), Err(Error::Domain(_))));
    }

    // Number of standard Young tableaux by removing corners recursively.
    fn count_syt(lambda: &YoungDiagram) -> u64 {
        if lambda.is_empty() {
            return 1;
        }
        corner_moves(lambda)
            .1
            .into_iter()
            .map(|b| count_syt(&lambda.remove_box(b).unwrap()))
            .sum()
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_sym(&d(&[5])), BigInt::from(1));
        assert_eq!(dim_sym(&d(&[2, 1])), BigInt::from(2));
        assert_eq!(dim_sym(&d(&[2, 2])), BigInt::from(2));
        for n in 0..=9 {
            for lam in enumerate_partitions(n) {
                assert_eq!(dim_sym(&lam), BigInt::from(count_syt(&lam)));
            }
        }
    }

    #[test]
    fn hook_length_product() {
        for n in 0..=12 {
            for lam in enumerate_partitions(n) {
                let prod: BigInt = lam.hooks().into_iter().map(BigInt::from).product();
                assert_eq!(dim_sym(&lam) * prod, factorial(n));
            }
        }
    }

    #[test]
    fn z_rho_values() {
        assert_eq!(z_rho(&d(&[1, 1, 1])), BigInt::from(6));
        assert_eq!(z_rho(&d(&[2, 1])), BigInt::from(2));
        assert_eq!(z_rho(&d(&[7])), BigInt::from(7));
        // class sizes of S_3 by brute force
        let mut counts: HashMap<YoungDiagram, u64> = HashMap::new();
        for p in perm::all_permutations(3) {
            *counts.entry(perm::cycle_type(&p)).or_default() += 1;
        }
        assert_eq!(counts[&d(&[2, 1])], 3);
        for n in 0..=10 {
            let total: BigInt = enumerate_partitions(n).iter().map(|r| factorial(n) / z_rho(r)).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn characters_against_brute_force() {
        // chi^{(2,1)} = (number of fixed points) - 1 on S_3.
        for p in perm::all_permutations(3) {
            let fixed = p.iter().enumerate().filter(|(i, &v)| *i == v).count() as i64;
            let rho = perm::cycle_type(&p);
            assert_eq!(mn_character(&d(&[2, 1]), &rho).unwrap(), fixed - 1);
        }
        assert_eq!(mn_character(&d(&[2, 1]), &d(&[3])).unwrap(), -1);
        for n in 1..=6 {
            let sign = YoungDiagram::column(n);
            for rho in enumerate_partitions(n) {
                let s = if (n - rho.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(mn_character(&sign, &rho).unwrap(), s);
            }
            for lam in enumerate_partitions(n) {
                assert_eq!(
                    BigInt::from(mn_character(&lam, &YoungDiagram::column(n)).unwrap()),
                    dim_sym(&lam)
                );
            }
        }
        assert!(mn_character(&d(&[2]), &d(&[1])).is_err());
    }

    #[test]
    fn first_orthogonality() {
        for n in 0..=8 {
            let parts = enumerate_partitions(n);
            for a in &parts {
                for b in &parts {
                    let mut acc = num_rational::BigRational::from_integer(BigInt::from(0));
                    for rho in &parts {
                        let v = mn_character(a, rho).unwrap() * mn_character(b, rho).unwrap();
                        acc += num_rational::BigRational::new(BigInt::from(v), z_rho(rho));
                    }
                    let expect = if a == b { 1 } else { 0 };
                    assert_eq!(acc, num_rational::BigRational::from_integer(BigInt::from(expect)));
                }
            }
        }
    }

    #[test]
    fn transposition_symmetry() {
        for n in 1..=8 {
            for lam in enumerate_partitions(n) {
                for rho in enumerate_partitions(n) {
                    let s = if (n - rho.len()) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(
                        mn_character(&lam.transpose(), &rho).unwrap(),
                        s * mn_character(&lam, &rho).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn cache_clear_keeps_values() {
        let lam = d(&[3, 2, 1]);
        let rho = d(&[3, 3]);
        let before = mn_character(&lam, &rho).unwrap();
        clear_character_cache();
        assert_eq!(mn_character(&lam, &rho).unwrap(), before);
    }

    #[test]
    fn corners() {
        let (a, r) = corner_moves(&YoungDiagram::empty());
        assert_eq!(a, vec![BoxCoord::new(1, 1)]);
        assert!(r.is_empty());
        let (a, r) = corner_moves(&d(&[2, 1]));
        assert_eq!(a, vec![BoxCoord::new(1, 3), BoxCoord::new(2, 2), BoxCoord::new(3, 1)]);
        assert_eq!(r, vec![BoxCoord::new(1, 2), BoxCoord::new(2, 1)]);
        assert_eq!(corner_moves(&d(&[4])).0.len(), 2);
    }

    #[test]
    fn corner_moves_are_exhaustive() {
        for n in 0..=7 {
            for lam in enumerate_partitions(n) {
                let (add, rem) = corner_moves(&lam);
                let mut grown: Vec<_> = add.iter().map(|&b| lam.add_box(b).unwrap()).collect();
                grown.sort();
                let mut expect: Vec<_> = enumerate_partitions(n + 1)
                    .into_iter()
                    .filter(|mu| mu.len() >= lam.len() && (1..=mu.len()).all(|i| mu.row_len(i) >= lam.row_len(i)))
                    .collect();
                expect.sort();
                assert_eq!(grown, expect);
                for b in rem {
                    assert_eq!(lam.remove_box(b).unwrap().size() + 1, n);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        assert_eq!(serde_json::to_string(&d(&[3, 1])).unwrap(), "[3,1]");
        assert_eq!(serde_json::to_string(&YoungDiagram::empty()).unwrap(), "[]");
        let back: YoungDiagram = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(back, d(&[3, 1]));
        assert!(serde_json::from_str::<YoungDiagram>("[1,3]").is_err());
    }

    proptest! {
        #[test]
        fn transpose_is_involution(mut parts in prop::collection::vec(1usize..8, 0..7)) {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lam = YoungDiagram::new(parts).unwrap();
            prop_assert_eq!(lam.transpose().transpose(), lam.clone());
            prop_assert_eq!(lam.transpose().size(), lam.size());
            prop_assert_eq!(lam.cycle_structure().to_diagram(), lam.clone());
            prop_assert_eq!(lam.cycle_structure().degree(), lam.size());
        }
    }
}

//! Block characters against traces of explicit operators on `V^{⊗k}`:
//! `(g, s)` acts by `pi(g_1) ⊗ .. ⊗ pi(g_k)` after permuting tensor factors.

// Matrix code reads best with explicit row/column indices.
#![allow(clippy::needless_range_loop)]

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zmw_core::finite_characters::block_character;
use zmw_core::perm;
use zmw_core::scalar::{cx_int, Cx};
use zmw_core::spectral_group::{cyclic_group, s3, GroupModel};
use zmw_core::wreath::{self, ColoredPermutation};

type Matrix = Vec<Vec<Cx>>;

/// The standard representation of `S_3` on `{v : sum v = 0}` in the basis
/// `e0 - e1, e1 - e2`, where permutation `a` sends `e_i` to `e_{a(i)}`.
fn s3_standard(a: &[usize]) -> Matrix {
    let basis = [[1i64, -1, 0], [0, 1, -1]];
    let mut m = vec![vec![Cx::zero(); 2]; 2];
    for (j, f) in basis.iter().enumerate() {
        let mut v = [0i64; 3];
        for i in 0..3 {
            v[a[i]] += f[i];
        }
        // v = c1 (e0 - e1) + c2 (e1 - e2) has v0 = c1, v2 = -c2
        m[0][j] = cx_int(v[0]);
        m[1][j] = cx_int(-v[2]);
    }
    m
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b[0].len();
    (0..n)
        .map(|i| (0..k).map(|j| (0..b.len()).fold(Cx::zero(), |acc, l| acc + &a[i][l] * &b[l][j])).collect())
        .collect()
}

/// `T(g, s)` on `V^{⊗k}` with multi-indices read most significant first.
fn tensor_operator(x: &ColoredPermutation, pi: &dyn Fn(usize) -> Matrix, d: usize) -> Matrix {
    let k = x.degree();
    let size = d.pow(k as u32);
    let digits = |mut idx: usize| {
        let mut out = vec![0; k];
        for i in (0..k).rev() {
            out[i] = idx % d;
            idx /= d;
        }
        out
    };
    let index = |ds: &[usize]| ds.iter().fold(0, |acc, &v| acc * d + v);
    // I(s): e_{i_1} ⊗ .. ⊗ e_{i_k} -> factor at position s(j) is e_{i_j}
    let mut perm_op = vec![vec![Cx::zero(); size]; size];
    for col in 0..size {
        let src = digits(col);
        let mut dst = vec![0; k];
        for j in 0..k {
            dst[x.perm[j]] = src[j];
        }
        perm_op[index(&dst)][col] = Cx::one();
    }
    let mats: Vec<Matrix> = x.colors.iter().map(|&g| pi(g)).collect();
    let mut diag = vec![vec![Cx::zero(); size]; size];
    for row in 0..size {
        let r = digits(row);
        for col in 0..size {
            let c = digits(col);
            diag[row][col] = (0..k).fold(Cx::one(), |acc, i| acc * &mats[i][r[i]][c[i]]);
        }
    }
    matmul(&diag, &perm_op)
}

fn trace(m: &Matrix) -> Cx {
    (0..m.len()).fold(Cx::zero(), |acc, i| acc + &m[i][i])
}

fn random_element(model: &GroupModel, n: usize, rng: &mut ChaCha8Rng) -> ColoredPermutation {
    let total = wreath::group_order(model, n).unwrap();
    wreath::element_at(model, n, rng.random_range(0..total))
}

#[test]
fn standard_matrices_form_the_standard_representation() {
    let m = s3();
    let el = m.elements().unwrap();
    let perms = perm::all_permutations(3);
    let std = m.irrep_index("std").unwrap();
    for a in 0..6 {
        for b in 0..6 {
            assert_eq!(s3_standard(&perms[el.mul(a, b)]), matmul(&s3_standard(&perms[a]), &s3_standard(&perms[b])));
        }
        assert_eq!(trace(&s3_standard(&perms[a])), m.char_value(std, el.class_of(a)).clone());
    }
}

#[test]
fn tensor_operators_are_a_representation() {
    let m = s3();
    let perms = perm::all_permutations(3);
    let pi = |g: usize| s3_standard(&perms[g]);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let x = random_element(&m, 3, &mut rng);
        let y = random_element(&m, 3, &mut rng);
        let xy = wreath::multiply(&m, &x, &y).unwrap();
        assert_eq!(tensor_operator(&xy, &pi, 2), matmul(&tensor_operator(&x, &pi, 2), &tensor_operator(&y, &pi, 2)));
    }
}

#[test]
fn block_character_is_a_tensor_trace_over_s3() {
    let m = s3();
    let perms = perm::all_permutations(3);
    let pi = |g: usize| s3_standard(&perms[g]);
    let std = m.irrep_index("std").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let x = random_element(&m, 3, &mut rng);
        assert_eq!(block_character(&m, std, &x).unwrap(), trace(&tensor_operator(&x, &pi, 2)), "{x}");
    }
}

#[test]
fn block_character_is_a_tensor_trace_over_z4() {
    let m = Arc::new(cyclic_group(4, 20));
    let el = m.elements().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for zeta in 0..4 {
        let pi = |g: usize| vec![vec![m.char_value(zeta, el.class_of(g)).clone()]];
        for _ in 0..100 {
            let x = random_element(&m, 4, &mut rng);
            assert_eq!(block_character(&m, zeta, &x).unwrap(), trace(&tensor_operator(&x, &pi, 1)));
        }
    }
}

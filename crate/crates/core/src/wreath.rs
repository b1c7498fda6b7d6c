//! The wreath product `S_n(G)` of a finite group `G` with `S_n`: colored
//! permutations, their types, the Ewens measure, the canonical projection
//! `S_{n+1}(G) -> S_n(G)` and the consistent sequential sampler built on it,
//! virtual-permutation prefixes with the two-sided action, cocycles and
//! Radon-Nikodym derivatives, and the restriction of `chi_z` to `S_n(G)`.
//!
//! Letters are zero-based internally; [`ColoredPermutation`]'s `Display`
//! prints them one-based.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::par;
use crate::partitions::YoungDiagram;
use crate::perm;
use crate::scalar::{factorial, pochhammer, powi, powu_cx, to_f64, Cx};
use crate::spectral_group::{CentralFunction, ElementData, GroupModel};
use crate::zmeasure::DiagramFamily;

/// Largest `|S_n(G)| = n! |G|^n` enumerated by default.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

/// The type of an element: a diagram family keyed by class index.
pub type WreathType = DiagramFamily;

/// `((g_1, .., g_n), s)` with `g_i` element indices of a finite model and `s`
/// in one-line form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColoredPermutation {
    pub colors: Vec<usize>,
    pub perm: Vec<usize>,
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "((")?;
        for (i, g) in self.colors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "),")?;
        let cycles = perm::cycles(&self.perm);
        if cycles.iter().all(|c| c.len() == 1) {
            write!(f, "id")?;
        }
        for c in cycles.iter().filter(|c| c.len() > 1) {
            write!(f, "(")?;
            for (k, i) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
            }
            write!(f, ")")?;
        }
        write!(f, ")")
    }
}

impl ColoredPermutation {
    /// Checks lengths, bijectivity and element indices against `model`.
    pub fn new(model: &GroupModel, colors: Vec<usize>, perm: Vec<usize>) -> Result<Self> {
        let el = model.elements()?;
        if colors.len() != perm.len() {
            return domain(format!("{} colors for a permutation of {} letters", colors.len(), perm.len()));
        }
        if !perm::is_permutation(&perm) {
            return domain(format!("{perm:?} is not a permutation"));
        }
        if let Some(&g) = colors.iter().find(|&&g| g >= el.order()) {
            return domain(format!("color {g} is not an element of `{}`", model.name()));
        }
        Ok(ColoredPermutation { colors, perm })
    }

    pub fn identity(model: &GroupModel, n: usize) -> Result<Self> {
        let e = model.elements()?.identity;
        Ok(ColoredPermutation { colors: vec![e; n], perm: perm::identity(n) })
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    /// The same element inside `S_m(G)`, `m >= n`, fixing the new letters.
    pub fn pad(&self, model: &GroupModel, m: usize) -> Result<Self> {
        let n = self.degree();
        if m < n {
            return domain(format!("cannot embed degree {n} into degree {m}"));
        }
        let e = model.elements()?.identity;
        let mut out = self.clone();
        out.colors.resize(m, e);
        out.perm.extend(n..m);
        Ok(out)
    }

    /// Degree after stripping trailing fixed points with identity color.
    pub fn support_degree(&self, model: &GroupModel) -> Result<usize> {
        let e = model.elements()?.identity;
        let mut n = self.degree();
        while n > 0 && self.perm[n - 1] == n - 1 && self.colors[n - 1] == e {
            n -= 1;
        }
        Ok(n)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "colors": self.colors, "perm": self.perm.iter().map(|i| i + 1).collect::<Vec<_>>() })
    }
}

fn same_degree(x: &ColoredPermutation, y: &ColoredPermutation) -> Result<()> {
    if x.degree() != y.degree() {
        return domain(format!("degrees {} and {} differ", x.degree(), y.degree()));
    }
    Ok(())
}

/// `(g, s)(h, t) = ((g_i h_{s^{-1}(i)})_i, st)`.
pub fn multiply(model: &GroupModel, x: &ColoredPermutation, y: &ColoredPermutation) -> Result<ColoredPermutation> {
    same_degree(x, y)?;
    let el = model.elements()?;
    let s_inv = perm::inverse(&x.perm);
    let colors = (0..x.degree()).map(|i| el.mul(x.colors[i], y.colors[s_inv[i]])).collect();
    Ok(ColoredPermutation { colors, perm: perm::compose(&x.perm, &y.perm) })
}

/// `(g, s)^{-1} = ((g_{s(j)}^{-1})_j, s^{-1})`.
pub fn inverse(model: &GroupModel, x: &ColoredPermutation) -> Result<ColoredPermutation> {
    let el = model.elements()?;
    let colors = (0..x.degree()).map(|j| el.inv(x.colors[x.perm[j]])).collect();
    Ok(ColoredPermutation { colors, perm: perm::inverse(&x.perm) })
}

/// Class of `g_{i_r} .. g_{i_1}` for the cycle `i_1 -> i_2 -> .. -> i_r`.
fn cycle_class(el: &ElementData, x: &ColoredPermutation, cycle: &[usize]) -> usize {
    let mut acc = el.identity;
    for &i in cycle {
        acc = el.mul(x.colors[i], acc);
    }
    el.class_of(acc)
}

/// `(length, class)` for every cycle, in the order of [`perm::cycles`].
pub fn colored_cycles(model: &GroupModel, x: &ColoredPermutation) -> Result<Vec<(usize, usize)>> {
    let el = model.elements()?;
    Ok(perm::cycles(&x.perm).iter().map(|c| (c.len(), cycle_class(el, x, c))).collect())
}

/// The type: one row per cycle, filed under the class of its cycle product.
pub fn cycle_type(model: &GroupModel, x: &ColoredPermutation) -> Result<WreathType> {
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (len, c) in colored_cycles(model, x)? {
        rows.entry(c).or_default().push(len);
    }
    Ok(DiagramFamily::new(rows.into_iter().map(|(c, r)| (c, YoungDiagram::from_unsorted(r))).collect()))
}

/// `[x](c)`: the number of cycles of each class.
pub fn cycle_counts(model: &GroupModel, x: &ColoredPermutation) -> Result<Vec<usize>> {
    let mut counts = vec![0; model.classes().len()];
    for (_, c) in colored_cycles(model, x)? {
        counts[c] += 1;
    }
    Ok(counts)
}

/// `[rho](c)` for a type.
pub fn type_counts(model: &GroupModel, rho: &WreathType) -> Vec<usize> {
    let mut counts = vec![0; model.classes().len()];
    for (&c, d) in rho.iter() {
        counts[c] = d.len();
    }
    counts
}

/// `|S_n(G)| = n! |G|^n`, or `None` on overflow.
pub fn group_order(model: &GroupModel, n: usize) -> Option<u64> {
    let g = model.order() as u64;
    let mut acc: u64 = 1;
    for i in 1..=n as u64 {
        acc = acc.checked_mul(i)?.checked_mul(g)?;
    }
    Some(acc)
}

fn checked_order(model: &GroupModel, n: usize, bound: u64) -> Result<u64> {
    match group_order(model, n) {
        Some(k) if k <= bound => Ok(k),
        _ => Err(Error::Resource(format!(
            "|S_{n}({})| exceeds the enumeration bound {bound}",
            model.name()
        ))),
    }
}

/// The `k`-th element of `S_n(G)`: permutations in lexicographic order,
/// colors as base-`|G|` digits (last letter fastest).
pub fn element_at(model: &GroupModel, n: usize, k: u64) -> ColoredPermutation {
    let g = model.order() as u64;
    let per_perm = g.pow(n as u32);
    let perm = perm::nth_permutation(n, k / per_perm);
    let mut rest = k % per_perm;
    let mut colors = vec![0; n];
    for i in (0..n).rev() {
        colors[i] = (rest % g) as usize;
        rest /= g;
    }
    ColoredPermutation { colors, perm }
}

/// All of `S_n(G)` in [`element_at`] order.
pub fn all_elements(model: &GroupModel, n: usize, bound: u64) -> Result<Vec<ColoredPermutation>> {
    model.elements()?;
    let total = checked_order(model, n, bound)?;
    Ok(par::map_range(total, |k| element_at(model, n, k)))
}

// ---------------------------------------------------------------------------
// Ewens measure

/// `n! / (I)_n`.
fn ewens_prefactor(z: &CentralFunction, n: usize) -> Result<BigRational> {
    let total = z.total();
    if total.is_zero() {
        return domain("z vanishes identically, so I = 0");
    }
    Ok(BigRational::from_integer(factorial(n)) / pochhammer(total, n))
}

/// `n! prod_c t(c)^{[x](c)} / (I)_n` with `t = |z|^2`: the density of the
/// Ewens measure against the uniform probability on `S_n(G)`.
pub fn ewens_density(z: &CentralFunction, x: &ColoredPermutation) -> Result<BigRational> {
    z.require_nonvanishing()?;
    let t = z.t_values()?;
    let counts = cycle_counts(z.model(), x)?;
    let mut acc = ewens_prefactor(z, x.degree())?;
    for (c, &k) in counts.iter().enumerate() {
        acc *= powi(&t[c], k as i64);
    }
    Ok(acc)
}

/// Ewens probability of the single element `x`: density / `|S_n(G)|`.
pub fn ewens_mass(z: &CentralFunction, x: &ColoredPermutation) -> Result<BigRational> {
    let n = x.degree();
    let size = factorial(n) * BigInt::from(z.model().order()).pow(n as u32);
    Ok(ewens_density(z, x)? / BigRational::from_integer(size))
}

/// Exact Ewens probability of every type, by exhaustive enumeration.
pub fn ewens_type_distribution(
    z: &CentralFunction,
    n: usize,
    bound: u64,
) -> Result<BTreeMap<WreathType, BigRational>> {
    z.require_nonvanishing()?;
    let model = z.model();
    let total = checked_order(model, n, bound)?;
    let t = z.t_values()?;
    let pre = ewens_prefactor(z, n)?;
    let size = BigRational::from_integer(BigInt::from(total));
    // weights are grouped by type, so only the count per type is needed
    let counts: BTreeMap<WreathType, u64> = par::fold_chunks(
        total,
        4096,
        BTreeMap::new,
        |mut acc: BTreeMap<WreathType, u64>, k| {
            let x = element_at(model, n, k);
            *acc.entry(cycle_type(model, &x).expect("finite model")).or_default() += 1;
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    );
    Ok(counts
        .into_iter()
        .map(|(rho, k)| {
            let mut w = &pre * BigRational::from_integer(BigInt::from(k)) / &size;
            for (c, m) in type_counts(model, &rho).into_iter().enumerate() {
                w *= powi(&t[c], m as i64);
            }
            (rho, w)
        })
        .collect())
}

/// `sum_{x in S_n(G)} P(x) / |S_n(G)|`, summed element by element.
pub fn total_mass(z: &CentralFunction, n: usize, bound: u64) -> Result<BigRational> {
    z.require_nonvanishing()?;
    let model = z.model();
    let total = checked_order(model, n, bound)?;
    let t = z.t_values()?;
    let sum = par::fold_chunks(
        total,
        4096,
        BigRational::zero,
        |acc, k| {
            let x = element_at(model, n, k);
            let counts = cycle_counts(model, &x).expect("finite model");
            let w = counts
                .iter()
                .enumerate()
                .fold(BigRational::one(), |w, (c, &m)| w * powi(&t[c], m as i64));
            acc + w
        },
        |a, b| a + b,
    );
    Ok(ewens_prefactor(z, n)? * sum / BigRational::from_integer(BigInt::from(total)))
}

// ---------------------------------------------------------------------------
// Canonical projection and fibers

/// `p_{n,n+1}`: removes the last letter from its cycle, folding its color
/// into its successor: `g_{s(n+1)} <- g_{s(n+1)} g_{n+1}`.
pub fn project(model: &GroupModel, x: &ColoredPermutation) -> Result<ColoredPermutation> {
    let el = model.elements()?;
    let m = x.degree();
    if m == 0 {
        return domain("cannot project an element of degree 0");
    }
    let last = m - 1;
    let mut colors = x.colors.clone();
    let mut perm = x.perm.clone();
    let succ = perm[last];
    if succ != last {
        let pred = perm.iter().position(|&v| v == last).expect("bijection");
        perm[pred] = succ;
        colors[succ] = el.mul(colors[succ], colors[last]);
    }
    colors.pop();
    perm.pop();
    Ok(ColoredPermutation { colors, perm })
}

/// Projects down to degree `m <= n`.
pub fn project_to(model: &GroupModel, x: &ColoredPermutation, m: usize) -> Result<ColoredPermutation> {
    if m > x.degree() {
        return domain(format!("cannot project degree {} up to {m}", x.degree()));
    }
    let mut y = x.clone();
    while y.degree() > m {
        y = project(model, &y)?;
    }
    Ok(y)
}

/// Appends `n+1` as a fixed point with color `g`.
pub fn append_fixed(x: &ColoredPermutation, g: usize) -> ColoredPermutation {
    let mut y = x.clone();
    y.perm.push(y.colors.len());
    y.colors.push(g);
    y
}

/// Inserts `n+1` right after `j` in its cycle with color `h`, and replaces
/// `g_{s(j)}` by `g_{s(j)} h^{-1}` so that projecting gives `x` back.
pub fn insert_after(model: &GroupModel, x: &ColoredPermutation, j: usize, h: usize) -> Result<ColoredPermutation> {
    let el = model.elements()?;
    let n = x.degree();
    if j >= n {
        return domain(format!("letter {} out of range", j + 1));
    }
    let mut y = x.clone();
    let succ = y.perm[j];
    y.perm[j] = n;
    y.perm.push(succ);
    y.colors[succ] = el.mul(y.colors[succ], el.inv(h));
    y.colors.push(h);
    Ok(y)
}

/// `{x' : p(x') = x}`: fixed-point insertions first, then insertions into cycles.
pub fn fiber(model: &GroupModel, x: &ColoredPermutation) -> Result<Vec<ColoredPermutation>> {
    let order = model.elements()?.order();
    let mut out = Vec::with_capacity((x.degree() + 1) * order);
    out.extend((0..order).map(|g| append_fixed(x, g)));
    for j in 0..x.degree() {
        for h in 0..order {
            out.push(insert_after(model, x, j, h)?);
        }
    }
    Ok(out)
}

/// Probability that [`sample_step`] moves `x` to `y`.
pub fn transition_probability(
    z: &CentralFunction,
    x: &ColoredPermutation,
    y: &ColoredPermutation,
) -> Result<BigRational> {
    let model = z.model();
    let n = x.degree();
    if y.degree() != n + 1 || project(model, y)? != *x {
        return Ok(BigRational::zero());
    }
    let t = z.t_values()?;
    let el = model.elements()?;
    let denom = BigRational::from_integer(BigInt::from(model.order())) * (z.total() + BigRational::from_integer(n.into()));
    if y.perm[n] == n {
        Ok(t[el.class_of(y.colors[n])].clone() / denom)
    } else {
        Ok(BigRational::one() / denom)
    }
}

/// Sequential sampler of the consistent Ewens family.
#[derive(Clone, Debug)]
pub struct EwensSampler {
    model: std::sync::Arc<GroupModel>,
    total: f64,
    // cumulative law of the color of a new fixed point
    fixed_color: Vec<f64>,
}

impl EwensSampler {
    pub fn new(z: &CentralFunction) -> Result<Self> {
        z.require_nonvanishing()?;
        let model = z.model().clone();
        let el = model.elements()?;
        let t = z.t_values()?;
        let weights: Vec<BigRational> = (0..el.order()).map(|g| t[el.class_of(g)].clone()).collect();
        let sum: BigRational = weights.iter().cloned().sum();
        let mut acc = BigRational::zero();
        let fixed_color = weights
            .iter()
            .map(|w| {
                acc += w;
                to_f64(&(&acc / &sum))
            })
            .collect();
        Ok(EwensSampler { total: to_f64(z.total()), fixed_color, model })
    }

    /// One step `x_n -> x_{n+1}`; always `project(step(x)) = x`.
    pub fn step<R: Rng + ?Sized>(&self, x: &ColoredPermutation, rng: &mut R) -> ColoredPermutation {
        let n = x.degree();
        let stay_fixed = self.total / (self.total + n as f64);
        if rng.random::<f64>() < stay_fixed {
            let u = rng.random::<f64>();
            let g = self.fixed_color.partition_point(|&c| c <= u).min(self.fixed_color.len() - 1);
            append_fixed(x, g)
        } else {
            let j = rng.random_range(0..n);
            let h = rng.random_range(0..self.model.order());
            insert_after(&self.model, x, j, h).expect("letter in range")
        }
    }

    /// `x_1, .., x_n` grown from the empty element.
    pub fn prefix<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> VirtualPrefix {
        let mut levels = Vec::with_capacity(n);
        let mut x = ColoredPermutation { colors: Vec::new(), perm: Vec::new() };
        for _ in 0..n {
            x = self.step(&x, rng);
            levels.push(x.clone());
        }
        VirtualPrefix { levels }
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> ColoredPermutation {
        let mut x = ColoredPermutation { colors: Vec::new(), perm: Vec::new() };
        for _ in 0..n {
            x = self.step(&x, rng);
        }
        x
    }
}

/// One transition of the consistent sampler.
pub fn sample_step<R: Rng + ?Sized>(
    z: &CentralFunction,
    x: &ColoredPermutation,
    rng: &mut R,
) -> Result<ColoredPermutation> {
    Ok(EwensSampler::new(z)?.step(x, rng))
}

/// A draw from the Ewens measure on `S_n(G)`.
pub fn sample_ewens<R: Rng + ?Sized>(z: &CentralFunction, n: usize, rng: &mut R) -> Result<ColoredPermutation> {
    Ok(EwensSampler::new(z)?.sample(n, rng))
}

// ---------------------------------------------------------------------------
// Virtual permutations and the two-sided action

/// A finite prefix `(x_1, .., x_N)` of a virtual permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualPrefix {
    levels: Vec<ColoredPermutation>,
}

impl VirtualPrefix {
    /// The prefix generated by projecting `x_N` down.
    pub fn from_top(model: &GroupModel, top: ColoredPermutation) -> Result<Self> {
        let mut levels = vec![top];
        while levels.last().expect("nonempty").degree() > 1 {
            let next = project(model, levels.last().expect("nonempty"))?;
            levels.push(next);
        }
        levels.reverse();
        Ok(VirtualPrefix { levels })
    }

    /// Errors unless `x_n` has degree `n` and projects onto `x_{n-1}`.
    pub fn from_levels(model: &GroupModel, levels: Vec<ColoredPermutation>) -> Result<Self> {
        for (i, x) in levels.iter().enumerate() {
            if x.degree() != i + 1 {
                return domain(format!("level {} has degree {}", i + 1, x.degree()));
            }
            if i > 0 && project(model, x)? != levels[i - 1] {
                return domain(format!("levels {} and {} are not consistent", i, i + 1));
            }
        }
        Ok(VirtualPrefix { levels })
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `x_n`, `1 <= n <= len`.
    pub fn level(&self, n: usize) -> &ColoredPermutation {
        &self.levels[n - 1]
    }

    pub fn top(&self) -> &ColoredPermutation {
        self.levels.last().expect("nonempty prefix")
    }
}

/// `W = (w_1, w_2)` acting on the right by `x W = w_2^{-1} x w_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiGroupElement {
    pub w1: ColoredPermutation,
    pub w2: ColoredPermutation,
}

impl BiGroupElement {
    pub fn new(w1: ColoredPermutation, w2: ColoredPermutation) -> Result<Self> {
        same_degree(&w1, &w2)?;
        Ok(BiGroupElement { w1, w2 })
    }

    pub fn degree(&self) -> usize {
        self.w1.degree()
    }

    /// Smallest `m` with `W` in `S_m(G) x S_m(G)`.
    pub fn support_degree(&self, model: &GroupModel) -> Result<usize> {
        Ok(self.w1.support_degree(model)?.max(self.w2.support_degree(model)?))
    }

    pub fn pad(&self, model: &GroupModel, m: usize) -> Result<Self> {
        Ok(BiGroupElement { w1: self.w1.pad(model, m)?, w2: self.w2.pad(model, m)? })
    }

    /// `(W W')` with `x (W W') = (x W) W'`: componentwise product.
    pub fn compose(&self, model: &GroupModel, other: &BiGroupElement) -> Result<Self> {
        let m = self.degree().max(other.degree());
        let (a, b) = (self.pad(model, m)?, other.pad(model, m)?);
        Ok(BiGroupElement { w1: multiply(model, &a.w1, &b.w1)?, w2: multiply(model, &a.w2, &b.w2)? })
    }
}

/// `w_2^{-1} x w_1` at a fixed level `n >= deg W`.
pub fn act_at_level(model: &GroupModel, x: &ColoredPermutation, w: &BiGroupElement) -> Result<ColoredPermutation> {
    let n = x.degree();
    let m = w.support_degree(model)?;
    if n < m {
        return domain(format!("level {n} is below the degree {m} of W"));
    }
    let w = w.pad(model, n.max(w.degree()))?;
    let w = BiGroupElement {
        w1: project_to(model, &w.w1, n)?,
        w2: project_to(model, &w.w2, n)?,
    };
    multiply(model, &inverse(model, &w.w2)?, &multiply(model, x, &w.w1)?)
}

/// `x W` on a prefix: the action at the top level, projected down.
pub fn act(model: &GroupModel, x: &VirtualPrefix, w: &BiGroupElement) -> Result<VirtualPrefix> {
    if x.is_empty() {
        return domain("empty prefix");
    }
    let top = act_at_level(model, x.top(), w)?;
    VirtualPrefix::from_top(model, top)
}

/// `C_c(x, W) = [p_n(xW)](c) - [p_n(x)](c)` at level `n`.
pub fn cocycle_at(model: &GroupModel, x: &VirtualPrefix, w: &BiGroupElement, n: usize) -> Result<Vec<i64>> {
    let m = w.support_degree(model)?.max(1);
    if n < m {
        return domain(format!("level {n} is below the degree {m} of W"));
    }
    if n > x.len() {
        return domain(format!("prefix has only {} levels, level {n} requested", x.len()));
    }
    let xn = x.level(n);
    let after = cycle_counts(model, &act_at_level(model, xn, w)?)?;
    let before = cycle_counts(model, xn)?;
    Ok(after.iter().zip(&before).map(|(&a, &b)| a as i64 - b as i64).collect())
}

/// All `C_c(x, W)` at the smallest valid level.
pub fn cocycle_all(model: &GroupModel, x: &VirtualPrefix, w: &BiGroupElement) -> Result<Vec<i64>> {
    cocycle_at(model, x, w, w.support_degree(model)?.max(1))
}

/// `C_c(x, W)` for one class `c`.
pub fn cocycle(model: &GroupModel, x: &VirtualPrefix, w: &BiGroupElement, c: usize) -> Result<i64> {
    if c >= model.classes().len() {
        return domain(format!("class index {c} out of range"));
    }
    Ok(cocycle_all(model, x, w)?[c])
}

/// `d mu(xW) / d mu(x) = prod_c t(c)^{C_c(x, W)}`.
pub fn radon_nikodym(z: &CentralFunction, x: &VirtualPrefix, w: &BiGroupElement) -> Result<BigRational> {
    z.require_nonvanishing()?;
    let t = z.t_values()?;
    let c = cocycle_all(z.model(), x, w)?;
    Ok(c.iter().enumerate().fold(BigRational::one(), |acc, (k, &e)| acc * powi(&t[k], e)))
}

/// `chi_z(w) = n!/(I)_n * avg_x prod_c z(c)^{[xw](c)} conj(z(c))^{[x](c)}`.
pub fn chi_z_restricted(z: &CentralFunction, w: &ColoredPermutation, bound: u64) -> Result<Cx> {
    let model = z.model();
    let n = w.degree();
    let total = checked_order(model, n, bound)?;
    let values = z
        .class_values()
        .ok_or_else(|| Error::Unsupported("chi_z needs class values of z".into()))?;
    let conj: Vec<Cx> = values.iter().map(|v| v.conj()).collect();
    let sum = par::fold_chunks(
        total,
        1024,
        Cx::zero,
        |acc, k| {
            let x = element_at(model, n, k);
            let xw = multiply(model, &x, w).expect("same degree");
            let a = cycle_counts(model, &xw).expect("finite model");
            let b = cycle_counts(model, &x).expect("finite model");
            let mut term = Cx::one();
            for c in 0..a.len() {
                term = term * powu_cx(&values[c], a[c]) * powu_cx(&conj[c], b[c]);
            }
            acc + term
        },
        |a, b| a + b,
    );
    let scale = ewens_prefactor(z, n)? / BigRational::from_integer(BigInt::from(total));
    Ok(sum * Cx::from(scale))
}

//! The z-measures `m_a^{(k)}` on `Y_k` and `M_z^{(n)}` on `Y_n(G^)`, the
//! dimension formula and the harmonic function `phi_z` on the branching graph,
//! and an exact two-stage sampler.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::Value;

use crate::error::{domain, Error, Result};
use crate::partitions::{content, corner_moves, dim_sym, enumerate_partitions, hook, YoungDiagram};
use crate::scalar::{factorial, norm_sqr, pochhammer, to_f64, Cx};
use crate::spectral_group::{CentralFunction, GroupModel};

/// Largest `n` accepted by the family sampler.
pub const DEFAULT_SAMPLE_BOUND: usize = 20;

/// A finitely supported map from labels (irreps, or classes for wreath
/// types) to Young diagrams. Empty diagrams are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramFamily {
    blocks: BTreeMap<usize, YoungDiagram>,
}

/// Counts `p(zeta) > 0` with `sum p = n`.
pub type BlockAllocation = BTreeMap<usize, usize>;

fn empty_diagram() -> &'static YoungDiagram {
    static EMPTY: OnceLock<YoungDiagram> = OnceLock::new();
    EMPTY.get_or_init(YoungDiagram::empty)
}

impl DiagramFamily {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Drops empty diagrams.
    pub fn new(blocks: BTreeMap<usize, YoungDiagram>) -> Self {
        DiagramFamily { blocks: blocks.into_iter().filter(|(_, d)| !d.is_empty()).collect() }
    }

    /// Errors on a repeated label.
    pub fn from_pairs(pairs: Vec<(usize, YoungDiagram)>) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for (k, d) in pairs {
            if blocks.insert(k, d).is_some() {
                return domain(format!("label {k} appears twice in a diagram family"));
            }
        }
        Ok(Self::new(blocks))
    }

    pub fn single_box(label: usize) -> Self {
        Self::new(BTreeMap::from([(label, YoungDiagram::row(1))]))
    }

    /// The diagram at `label`, empty if absent.
    pub fn get(&self, label: usize) -> &YoungDiagram {
        self.blocks.get(&label).unwrap_or_else(|| empty_diagram())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &YoungDiagram)> {
        self.blocks.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.keys().copied()
    }

    pub fn size(&self) -> usize {
        self.blocks.values().map(YoungDiagram::size).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block sizes `zeta -> |Lambda(zeta)|`.
    pub fn allocation(&self) -> BlockAllocation {
        self.blocks.iter().map(|(&k, d)| (k, d.size())).collect()
    }

    /// Copy with the diagram at `label` replaced.
    pub fn with_block(&self, label: usize, diagram: YoungDiagram) -> Self {
        let mut blocks = self.blocks.clone();
        if diagram.is_empty() {
            blocks.remove(&label);
        } else {
            blocks.insert(label, diagram);
        }
        DiagramFamily { blocks }
    }

    pub fn max_label(&self) -> Option<usize> {
        self.blocks.keys().next_back().copied()
    }

    /// `{"label": [parts], ..}`.
    pub fn to_json(&self, labels: &[String]) -> Value {
        Value::Object(
            self.blocks
                .iter()
                .map(|(&k, d)| (labels[k].clone(), serde_json::json!(d.parts())))
                .collect(),
        )
    }

    pub fn from_json(v: &Value, labels: &[String]) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Input("a diagram family must be a JSON object".into()))?;
        let mut pairs = Vec::new();
        for (label, parts) in obj {
            let k = labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::Input(format!("unknown label `{label}` in diagram family")))?;
            let d: YoungDiagram = serde_json::from_value(parts.clone())
                .map_err(|e| Error::Input(format!("diagram at `{label}`: {e}")))?;
            pairs.push((k, d));
        }
        Self::from_pairs(pairs)
    }
}

impl std::fmt::Display for DiagramFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, (k, d)) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}:{d}")?;
        }
        write!(f, "}}")
    }
}

pub fn irrep_labels(model: &GroupModel) -> Vec<String> {
    model.irreps().iter().map(|r| r.label.clone()).collect()
}

fn check_support(model: &GroupModel, family: &DiagramFamily) -> Result<()> {
    match family.max_label() {
        Some(k) if k >= model.irreps().len() => {
            domain(format!("diagram family uses irrep index {k} outside model `{}`", model.name()))
        }
        _ => Ok(()),
    }
}

/// `prod_box (a + c)(conj a + c) / h^2`.
pub fn box_product(a: &Cx, lambda: &YoungDiagram) -> BigRational {
    let mut acc = BigRational::one();
    for b in lambda.boxes() {
        let c = BigRational::from_integer(content(b).into());
        let h = BigRational::from_integer(BigInt::from(hook(lambda, b).expect("box of lambda")));
        let shifted = Cx::new(&a.re + c, a.im.clone());
        acc = acc * norm_sqr(&shifted) / (&h * &h);
    }
    acc
}

/// `m_a^{(k)}(lambda) = k!/(a conj a)_k * prod_box (a+c)(conj a+c)/h^2`, `k = |lambda|`.
pub fn sym_zmeasure(a: &Cx, lambda: &YoungDiagram) -> Result<BigRational> {
    let k = lambda.size();
    if k == 0 {
        return Ok(BigRational::one());
    }
    let aa = norm_sqr(a);
    if aa.is_zero() {
        return domain("the z-measure m_a needs a != 0 on nonempty diagrams");
    }
    Ok(BigRational::from_integer(factorial(k)) / pochhammer(&aa, k) * box_product(a, lambda))
}

fn nonzero_total(z: &CentralFunction) -> Result<&BigRational> {
    let total = z.total();
    if total.is_zero() {
        return domain("z vanishes identically, so I = 0");
    }
    Ok(total)
}

/// `M_z^{(n)}(Lambda) = n!/(I)_n prod_zeta prod_box (alpha+c)(conj alpha+c)/h^2`.
pub fn family_zmeasure(z: &CentralFunction, family: &DiagramFamily) -> Result<BigRational> {
    check_support(z.model(), family)?;
    let total = nonzero_total(z)?;
    let n = family.size();
    let mut direct = BigRational::from_integer(factorial(n)) / pochhammer(total, n);
    for (&zeta, lambda) in family.iter() {
        direct *= box_product(&z.alphas()[zeta], lambda);
    }
    debug_assert_eq!(direct, factorized_zmeasure(z, family), "factorized z-measure disagrees");
    Ok(direct)
}

/// `n!/(I)_n prod_zeta (tau)_p/p! * m_alpha^{(p)}(Lambda(zeta))`.
fn factorized_zmeasure(z: &CentralFunction, family: &DiagramFamily) -> BigRational {
    let n = family.size();
    let mut acc = BigRational::from_integer(factorial(n)) / pochhammer(z.total(), n);
    for (&zeta, lambda) in family.iter() {
        let tau = z.tau(zeta);
        if tau.is_zero() {
            return BigRational::zero();
        }
        let p = lambda.size();
        let m = sym_zmeasure(&z.alphas()[zeta], lambda).expect("tau > 0");
        acc = acc * pochhammer(&tau, p) / BigRational::from_integer(factorial(p)) * m;
    }
    acc
}

/// `DIM Lambda = n! prod_zeta (dim zeta)^{|Lambda(zeta)|} dim Lambda(zeta) / |Lambda(zeta)|!`.
pub fn dim_wreath(model: &GroupModel, family: &DiagramFamily) -> Result<BigInt> {
    check_support(model, family)?;
    let mut num = factorial(family.size());
    let mut den = BigInt::one();
    for (&zeta, lambda) in family.iter() {
        num *= BigInt::from(model.irrep_dim(zeta)).pow(lambda.size() as u32) * dim_sym(lambda);
        den *= factorial(lambda.size());
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// `phi_z(Lambda) = M_z^{(n)}(Lambda) / DIM Lambda`.
pub fn phi_z(z: &CentralFunction, family: &DiagramFamily) -> Result<BigRational> {
    let m = family_zmeasure(z, family)?;
    Ok(m / BigRational::from_integer(dim_wreath(z.model(), family)?))
}

/// `phi_z` through the product form
/// `1/(I)_n prod_zeta (tau)_p / (dim zeta)^p * m^{(p)}(Lambda(zeta)) / dim Lambda(zeta)`.
pub fn phi_z_product_form(z: &CentralFunction, family: &DiagramFamily) -> Result<BigRational> {
    check_support(z.model(), family)?;
    let total = nonzero_total(z)?;
    let mut acc = BigRational::one() / pochhammer(total, family.size());
    for (&zeta, lambda) in family.iter() {
        let tau = z.tau(zeta);
        if tau.is_zero() {
            return Ok(BigRational::zero());
        }
        let p = lambda.size();
        let dim_pow = BigInt::from(z.model().irrep_dim(zeta)).pow(p as u32);
        acc = acc * pochhammer(&tau, p) * sym_zmeasure(&z.alphas()[zeta], lambda)?
            / BigRational::from_integer(dim_pow * dim_sym(lambda));
    }
    Ok(acc)
}

/// Compositions of `n` into `k` labelled parts, reverse-lexicographic on the
/// count vector (label 0 first).
pub fn enumerate_allocations(n: usize, k: usize) -> Vec<BlockAllocation> {
    fn rec(n: usize, k: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<BlockAllocation>) {
        if i + 1 == k {
            cur.push(n);
            out.push(cur.iter().enumerate().filter(|(_, &c)| c > 0).map(|(z, &c)| (z, c)).collect());
            cur.pop();
            return;
        }
        for c in (0..=n).rev() {
            cur.push(c);
            rec(n - c, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(BlockAllocation::new());
        }
        return out;
    }
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// All families with the given block sizes; labels in increasing order vary
/// slowest first, each block in partition order.
pub fn families_with_allocation(p: &BlockAllocation) -> Vec<DiagramFamily> {
    let mut out = vec![DiagramFamily::empty()];
    for (&zeta, &size) in p {
        let shapes = enumerate_partitions(size);
        out = out
            .iter()
            .flat_map(|f| shapes.iter().map(move |d| f.with_block(zeta, d.clone())))
            .collect();
    }
    out
}

/// `Y_n(G^)` over the irreps of `model`: allocations first, then shapes.
pub fn enumerate_families(n: usize, model: &GroupModel) -> Vec<DiagramFamily> {
    enumerate_families_over(n, model.irreps().len())
}

pub fn enumerate_families_over(n: usize, labels: usize) -> Vec<DiagramFamily> {
    enumerate_allocations(n, labels).iter().flat_map(families_with_allocation).collect()
}

/// A family one step up or down, tagged with the label whose diagram changed.
pub type Neighbor = (DiagramFamily, usize);

/// Up-neighbors over `labels` irreps, and down-neighbors.
pub fn family_neighbors(family: &DiagramFamily, labels: usize) -> (Vec<Neighbor>, Vec<Neighbor>) {
    let mut up = Vec::new();
    let mut down = Vec::new();
    for zeta in 0..labels {
        let lambda = family.get(zeta);
        let (addable, removable) = corner_moves(lambda);
        for b in addable {
            up.push((family.with_block(zeta, lambda.add_box(b).expect("addable corner")), zeta));
        }
        for b in removable {
            down.push((family.with_block(zeta, lambda.remove_box(b).expect("removable corner")), zeta));
        }
    }
    (up, down)
}

/// `sum_{Lambda ↘ M} dim(zeta_{M,Lambda}) phi_z(Lambda) - phi_z(M)`.
pub fn harmonicity_residual(z: &CentralFunction, m: &DiagramFamily) -> Result<BigRational> {
    let model = z.model();
    let (up, _) = family_neighbors(m, model.irreps().len());
    let mut acc = BigRational::zero();
    for (lambda, zeta) in &up {
        acc += BigRational::from_integer(model.irrep_dim(*zeta).into()) * phi_z(z, lambda)?;
    }
    Ok(acc - phi_z(z, m)?)
}

/// `n!/(I)_n prod_zeta (tau(zeta))_{p(zeta)} / p(zeta)!`: the probability
/// that `M_z^{(n)}` has block sizes `p`.
pub fn allocation_weight(z: &CentralFunction, p: &BlockAllocation) -> Result<BigRational> {
    let total = nonzero_total(z)?;
    if let Some((&k, _)) = p.iter().find(|(&k, _)| k >= z.model().irreps().len()) {
        return domain(format!("allocation uses irrep index {k} outside the model"));
    }
    let n: usize = p.values().sum();
    let mut acc = BigRational::from_integer(factorial(n)) / pochhammer(total, n);
    for (&zeta, &c) in p {
        acc = acc * pochhammer(&z.tau(zeta), c) / BigRational::from_integer(factorial(c));
    }
    Ok(acc)
}

/// Both sides of `sum_{m_1+..+m_k=n} prod (a_i)_{m_i}/m_i! = (a_1+..+a_k)_n / n!`.
pub fn pochhammer_multinomial(a: &[BigRational], n: usize) -> (BigRational, BigRational) {
    let mut lhs = BigRational::zero();
    for p in enumerate_allocations(n, a.len()) {
        let mut term = BigRational::one();
        for (i, ai) in a.iter().enumerate() {
            let m = p.get(&i).copied().unwrap_or(0);
            term = term * pochhammer(ai, m) / BigRational::from_integer(factorial(m));
        }
        lhs += term;
    }
    let sum = a.iter().fold(BigRational::zero(), |s, x| s + x);
    let rhs = pochhammer(&sum, n) / BigRational::from_integer(factorial(n));
    (lhs, rhs)
}

/// Both sides of `sum_{Lambda in Y_n} prod_zeta prod_box |alpha+c|^2/h^2 = (sum |alpha|^2)_n / n!`.
pub fn box_product_identity(z: &CentralFunction, n: usize) -> (BigRational, BigRational) {
    let mut lhs = BigRational::zero();
    for fam in enumerate_families(n, z.model()) {
        lhs += fam
            .iter()
            .fold(BigRational::one(), |acc, (&zeta, l)| acc * box_product(&z.alphas()[zeta], l));
    }
    let sum = z.alphas().iter().map(norm_sqr).fold(BigRational::zero(), |a, b| a + b);
    (lhs, pochhammer(&sum, n) / BigRational::from_integer(factorial(n)))
}

/// Precomputed tables for drawing from `M_z^{(n)}`: block sizes from
/// [`allocation_weight`], then each block from `m_{alpha(zeta)}`.
#[derive(Clone, Debug)]
pub struct FamilySampler {
    n: usize,
    allocations: Vec<(BlockAllocation, f64)>,
    // (zeta, size) -> shapes with cumulative probabilities
    blocks: BTreeMap<(usize, usize), Vec<(YoungDiagram, f64)>>,
}

fn cumulative<T>(items: Vec<(T, BigRational)>) -> Vec<(T, f64)> {
    let total: BigRational = items.iter().map(|(_, w)| w.clone()).fold(BigRational::zero(), |a, b| a + b);
    let mut acc = BigRational::zero();
    items
        .into_iter()
        .map(|(x, w)| {
            acc += w;
            (x, to_f64(&(&acc / &total)))
        })
        .collect()
}

fn pick<T>(table: &[(T, f64)], u: f64) -> &T {
    let i = table.partition_point(|(_, c)| *c <= u);
    &table[i.min(table.len() - 1)].0
}

impl FamilySampler {
    pub fn new(z: &CentralFunction, n: usize) -> Result<Self> {
        Self::with_bound(z, n, DEFAULT_SAMPLE_BOUND)
    }

    pub fn with_bound(z: &CentralFunction, n: usize, bound: usize) -> Result<Self> {
        if n > bound {
            return Err(Error::Resource(format!("family sampling at n = {n} exceeds the bound {bound}")));
        }
        nonzero_total(z)?;
        let k = z.model().irreps().len();
        let weighted = enumerate_allocations(n, k)
            .into_iter()
            .map(|p| {
                let w = allocation_weight(z, &p)?;
                Ok((p, w))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .collect::<Vec<_>>();
        let mut blocks = BTreeMap::new();
        for (p, _) in &weighted {
            for (&zeta, &size) in p {
                if blocks.contains_key(&(zeta, size)) {
                    continue;
                }
                let a = &z.alphas()[zeta];
                let table = enumerate_partitions(size)
                    .into_iter()
                    .map(|l| {
                        let w = sym_zmeasure(a, &l)?;
                        Ok((l, w))
                    })
                    .collect::<Result<Vec<_>>>()?;
                blocks.insert((zeta, size), cumulative(table));
            }
        }
        Ok(FamilySampler { n, allocations: cumulative(weighted), blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> DiagramFamily {
        let p = pick(&self.allocations, rng.random::<f64>());
        let mut fam = DiagramFamily::empty();
        for (&zeta, &size) in p {
            let shape = pick(&self.blocks[&(zeta, size)], rng.random::<f64>());
            fam = fam.with_block(zeta, shape.clone());
        }
        fam
    }
}

/// One draw from `M_z^{(n)}`. Build a [`FamilySampler`] for repeated draws.
pub fn sample_family<R: Rng + ?Sized>(z: &CentralFunction, n: usize, rng: &mut R) -> Result<DiagramFamily> {
    Ok(FamilySampler::new(z, n)?.sample(rng))
}

/// The exact law `M_z^{(n)}` as a table in enumeration order.
pub fn zmeasure_table(z: &CentralFunction, n: usize) -> Result<Vec<(DiagramFamily, BigRational)>> {
    let families = enumerate_families(n, z.model());
    let values = crate::par::map(&families, |f| family_zmeasure(z, f));
    families.into_iter().zip(values).map(|(f, v)| Ok((f, v?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cx, cx_int, int, rat};
    use crate::spectral_group::{s3, z2, z_from_ints, CentralFunction};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn d(parts: &[usize]) -> YoungDiagram {
        YoungDiagram::new(parts.to_vec()).unwrap()
    }

    fn z2_31() -> CentralFunction {
        z_from_ints(&Arc::new(z2()), &[3, 1]).unwrap()
    }

    fn s3_620() -> CentralFunction {
        z_from_ints(&Arc::new(s3()), &[6, 2, 0]).unwrap()
    }

    #[test]
    fn sym_zmeasure_values() {
        let a = cx(rat(1, 3), rat(-2, 5));
        assert_eq!(sym_zmeasure(&a, &d(&[1])).unwrap(), int(1));
        let aa = norm_sqr(&a);
        let two_rows = sym_zmeasure(&a, &d(&[2])).unwrap();
        let two_cols = sym_zmeasure(&a, &d(&[1, 1])).unwrap();
        let one = cx_int(1);
        let expect = norm_sqr(&(&a + &one)) / (int(2) * (&aa + int(1)));
        assert_eq!(two_rows, expect);
        assert_eq!(two_cols, norm_sqr(&(&a - &one)) / (int(2) * (&aa + int(1))));
        assert_eq!(two_rows + two_cols, int(1));
        assert_eq!(sym_zmeasure(&cx_int(2), &d(&[2])).unwrap(), rat(9, 10));
        assert_eq!(sym_zmeasure(&cx_int(2), &d(&[1, 1])).unwrap(), rat(1, 10));
        assert!(sym_zmeasure(&cx_int(0), &d(&[1])).is_err());
        assert_eq!(sym_zmeasure(&cx_int(0), &YoungDiagram::empty()).unwrap(), int(1));
    }

    #[test]
    fn family_values() {
        let z = z2_31();
        assert_eq!(family_zmeasure(&z, &DiagramFamily::single_box(0)).unwrap(), rat(4, 5));
        assert_eq!(family_zmeasure(&z, &DiagramFamily::single_box(1)).unwrap(), rat(1, 5));
        assert_eq!(family_zmeasure(&z, &DiagramFamily::empty()).unwrap(), int(1));
        assert!(family_zmeasure(&z, &DiagramFamily::single_box(2)).is_err());
        let s = s3_620();
        assert_eq!(family_zmeasure(&s, &DiagramFamily::single_box(1)).unwrap(), int(0));
        let fam = DiagramFamily::from_pairs(vec![(0, d(&[1])), (1, d(&[2]))]).unwrap();
        assert_eq!(family_zmeasure(&s, &fam).unwrap(), int(0));
        assert_eq!(family_zmeasure(&s, &DiagramFamily::single_box(2)).unwrap(), rat(1, 2));
        assert_eq!(phi_z(&s, &DiagramFamily::single_box(2)).unwrap(), rat(1, 4));
        assert_eq!(phi_z(&z, &DiagramFamily::single_box(0)).unwrap(), rat(4, 5));
        assert_eq!(phi_z(&z, &DiagramFamily::empty()).unwrap(), int(1));
    }

    #[test]
    fn dims() {
        let m2 = z2();
        let m3 = s3();
        assert_eq!(dim_wreath(&m3, &DiagramFamily::single_box(2)).unwrap(), BigInt::from(2));
        let split = DiagramFamily::from_pairs(vec![(0, d(&[1])), (1, d(&[1]))]).unwrap();
        assert_eq!(dim_wreath(&m2, &split).unwrap(), BigInt::from(2));
        let std2 = DiagramFamily::from_pairs(vec![(2, d(&[2]))]).unwrap();
        assert_eq!(dim_wreath(&m3, &std2).unwrap(), BigInt::from(4));
        for (m, n, expect) in [(&m2, 2, 8u64), (&m3, 2, 72), (&m2, 3, 48), (&m3, 1, 6), (&m2, 4, 384)] {
            let sum: BigInt = enumerate_families(n, m).iter().map(|f| dim_wreath(m, f).unwrap().pow(2)).sum();
            assert_eq!(sum, BigInt::from(expect));
        }
    }

    #[test]
    fn enumeration() {
        let m = z2();
        assert_eq!(enumerate_families(0, &m), vec![DiagramFamily::empty()]);
        assert_eq!(enumerate_families(1, &s3()).len(), 3);
        let two = enumerate_families(2, &m);
        assert_eq!(two.len(), 5);
        assert_eq!(two[0], DiagramFamily::from_pairs(vec![(0, d(&[2]))]).unwrap());
        let set: std::collections::BTreeSet<_> = enumerate_families(5, &s3()).into_iter().collect();
        assert_eq!(set.len(), enumerate_families(5, &s3()).len());
        assert!(set.iter().all(|f| f.size() == 5));
        assert_eq!(enumerate_allocations(3, 2).len(), 4);
    }

    #[test]
    fn neighbors() {
        let (up, down) = family_neighbors(&DiagramFamily::empty(), 2);
        assert_eq!(up.len(), 2);
        assert!(down.is_empty());
        let (_, down) = family_neighbors(&DiagramFamily::single_box(0), 2);
        assert_eq!(down, vec![(DiagramFamily::empty(), 0)]);
        for fam in enumerate_families(4, &s3()) {
            let (up, down) = family_neighbors(&fam, 3);
            let expect: usize = (0..3).map(|z| corner_moves(fam.get(z)).0.len()).sum();
            assert_eq!(up.len(), expect);
            assert!(up.iter().all(|(f, _)| f.size() == 5));
            assert!(down.iter().all(|(f, _)| f.size() == 3));
            for (g, zeta) in &down {
                let (back, _) = family_neighbors(g, 3);
                assert!(back.contains(&(fam.clone(), *zeta)));
            }
        }
    }

    #[test]
    fn normalization_and_harmonicity() {
        for z in [z2_31(), s3_620()] {
            for n in 0..=5 {
                let total: BigRational =
                    enumerate_families(n, z.model()).iter().map(|f| family_zmeasure(&z, f).unwrap()).sum();
                assert_eq!(total, int(1));
                for f in enumerate_families(n, z.model()) {
                    assert_eq!(harmonicity_residual(&z, &f).unwrap(), int(0), "{f}");
                    assert_eq!(phi_z(&z, &f).unwrap(), phi_z_product_form(&z, &f).unwrap());
                }
            }
        }
    }

    #[test]
    fn single_irrep_reduces_to_symmetric_group() {
        let m = Arc::new(crate::spectral_group::trivial_group());
        let a = cx(rat(3, 2), int(0));
        let z = CentralFunction::constant(m, a.clone()).unwrap();
        for n in 0..=5 {
            for l in enumerate_partitions(n) {
                let fam = DiagramFamily::new(BTreeMap::from([(0, l.clone())]));
                assert_eq!(family_zmeasure(&z, &fam).unwrap(), sym_zmeasure(&a, &l).unwrap());
            }
        }
    }

    #[test]
    fn allocation_weights() {
        let z = z2_31();
        assert_eq!(allocation_weight(&z, &BTreeMap::from([(0, 1)])).unwrap(), rat(4, 5));
        for n in 0..=5 {
            let mut sum = BigRational::zero();
            for p in enumerate_allocations(n, 2) {
                let w = allocation_weight(&z, &p).unwrap();
                let direct: BigRational =
                    families_with_allocation(&p).iter().map(|f| family_zmeasure(&z, f).unwrap()).sum();
                assert_eq!(w, direct);
                sum += w;
            }
            assert_eq!(sum, int(1));
        }
        let only = CentralFunction::character(Arc::new(s3()), 2).unwrap();
        assert_eq!(allocation_weight(&only, &BTreeMap::from([(2, 4)])).unwrap(), int(1));
        let (l, r) = pochhammer_multinomial(&[rat(1, 2), rat(3, 7), int(2), rat(-1, 3)], 6);
        assert_eq!(l, r);
    }

    #[test]
    fn sampler_matches_table() {
        let z = z2_31();
        let sampler = FamilySampler::new(&z, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 40_000;
        let mut counts: BTreeMap<DiagramFamily, usize> = BTreeMap::new();
        for _ in 0..draws {
            *counts.entry(sampler.sample(&mut rng)).or_default() += 1;
        }
        let tv: f64 = zmeasure_table(&z, 3)
            .unwrap()
            .iter()
            .map(|(f, p)| (to_f64(p) - *counts.get(f).unwrap_or(&0) as f64 / draws as f64).abs())
            .sum::<f64>()
            / 2.0;
        assert!(tv < 0.02, "tv = {tv}");
        assert_eq!(sample_family(&z, 0, &mut rng).unwrap(), DiagramFamily::empty());
        assert!(matches!(FamilySampler::new(&z, 21), Err(Error::Resource(_))));
    }

    #[test]
    fn family_json() {
        let labels = irrep_labels(&s3());
        let fam = DiagramFamily::from_pairs(vec![(0, d(&[2, 1])), (2, d(&[1]))]).unwrap();
        let v = fam.to_json(&labels);
        assert_eq!(v.to_string(), r#"{"triv":[2,1],"std":[1]}"#);
        assert_eq!(DiagramFamily::from_json(&v, &labels).unwrap(), fam);
        assert_eq!(fam.to_string(), "{0:[2,1],2:[1]}");
    }
}

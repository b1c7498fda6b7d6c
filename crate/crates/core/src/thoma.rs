//! Generalized Thoma parameters `omega = (alpha, beta, delta)`, the
//! supersymmetric power sums and extended Schur functions they define, the
//! kernel `K(Lambda, omega)`, and the Dirichlet mixing that produces points
//! of the spectral measure from per-irrep component samplers.
//!
//! Everything numeric is generic over [`ThomaReal`], so identities can be
//! checked exactly with `BigRational` and sampled with `f64`.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use rand::RngCore;
use rand_distr::{Distribution, Gamma};
use serde_json::{json, Value};
use statrs::function::gamma::ln_gamma;

use crate::error::{domain, Error, Result};
use crate::partitions::{enumerate_partitions, mn_character, z_rho, YoungDiagram};
use crate::scalar::{fmt_rat, parse_cx_json, to_f64};
use crate::spectral_group::{CentralFunction, GroupModel};
use crate::symfunc::DEFAULT_SCHUR_BOUND;
use crate::zmeasure::DiagramFamily;

/// Real scalars the Thoma layer runs on.
pub trait ThomaReal: Clone + Debug + PartialOrd + Num + Signed + Send + Sync {
    fn from_rational(r: &BigRational) -> Self;
    fn to_f64(&self) -> f64;
    /// Slack allowed when checking the simplex constraints.
    fn slack() -> Self;
}

impl ThomaReal for f64 {
    fn from_rational(r: &BigRational) -> Self {
        to_f64(r)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn slack() -> Self {
        1e-9
    }
}

impl ThomaReal for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
    fn slack() -> Self {
        BigRational::zero()
    }
}

/// The coordinates `(alpha, beta, delta)` attached to one irrep.
#[derive(Clone, Debug, PartialEq)]
pub struct ThomaBlock<T> {
    pub alpha: Vec<T>,
    pub beta: Vec<T>,
    pub delta: T,
}

impl<T: ThomaReal> ThomaBlock<T> {
    pub fn zero() -> Self {
        ThomaBlock { alpha: Vec::new(), beta: Vec::new(), delta: T::zero() }
    }

    /// Every coordinate multiplied by `t`.
    pub fn scaled(&self, t: &T) -> Self {
        ThomaBlock {
            alpha: self.alpha.iter().map(|a| a.clone() * t.clone()).collect(),
            beta: self.beta.iter().map(|b| b.clone() * t.clone()).collect(),
            delta: self.delta.clone() * t.clone(),
        }
    }

    fn mass(&self) -> T {
        self.alpha.iter().chain(&self.beta).fold(T::zero(), |acc, v| acc + v.clone())
    }

    /// Nonnegative, weakly decreasing sequences with `sum alpha + sum beta <= delta`.
    pub fn validate(&self) -> Result<()> {
        for (name, seq) in [("alpha", &self.alpha), ("beta", &self.beta)] {
            if seq.iter().any(|v| v.is_negative()) {
                return domain(format!("{name} has a negative entry"));
            }
            if seq.windows(2).any(|w| w[0] < w[1]) {
                return domain(format!("{name} is not weakly decreasing"));
            }
        }
        if self.delta.is_negative() {
            return domain("delta is negative");
        }
        if self.mass() > self.delta.clone() + T::slack() {
            return domain("sum of alpha and beta exceeds delta");
        }
        Ok(())
    }
}

/// A point of the generalized Thoma set with finitely many nonzero coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ThomaPoint<T> {
    blocks: BTreeMap<usize, ThomaBlock<T>>,
}

impl<T: ThomaReal> ThomaPoint<T> {
    /// Checks every block and `sum delta = 1`.
    pub fn new(blocks: BTreeMap<usize, ThomaBlock<T>>) -> Result<Self> {
        for (zeta, b) in &blocks {
            if let Err(Error::Domain(m)) = b.validate() {
                return domain(format!("block {zeta}: {m}"));
            }
        }
        let total = blocks.values().fold(T::zero(), |acc, b| acc + b.delta.clone());
        if (total - T::one()).abs() > T::slack() {
            return domain("the deltas do not sum to 1");
        }
        Ok(ThomaPoint { blocks })
    }

    pub fn blocks(&self) -> &BTreeMap<usize, ThomaBlock<T>> {
        &self.blocks
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.keys().copied()
    }

    /// The block at `zeta`, zero outside the support.
    pub fn block(&self, zeta: usize) -> ThomaBlock<T> {
        self.blocks.get(&zeta).cloned().unwrap_or_else(ThomaBlock::zero)
    }
}

impl ThomaPoint<f64> {
    pub fn to_json(&self, labels: &[String]) -> Value {
        let blocks: serde_json::Map<String, Value> = self
            .blocks
            .iter()
            .map(|(z, b)| (labels[*z].clone(), json!({ "alpha": b.alpha, "beta": b.beta, "delta": b.delta })))
            .collect();
        json!({ "blocks": blocks })
    }
}

impl ThomaPoint<BigRational> {
    /// `{"blocks": {label: {"alpha": [..], "beta": [..], "delta": v}}}` with
    /// exact numbers; missing `alpha`/`beta` are empty.
    pub fn from_json(v: &Value, model: &GroupModel) -> Result<Self> {
        let blocks = v
            .get("blocks")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Input("omega needs a `blocks` object".into()))?;
        let real = |x: &Value| -> Result<BigRational> {
            let c = parse_cx_json(x)?;
            if !c.im.is_zero() {
                return Err(Error::Input("Thoma coordinates are real".into()));
            }
            Ok(c.re)
        };
        let seq = |b: &Value, key: &str| -> Result<Vec<BigRational>> {
            match b.get(key) {
                None => Ok(Vec::new()),
                Some(Value::Array(items)) => items.iter().map(real).collect(),
                Some(_) => Err(Error::Input(format!("`{key}` must be an array"))),
            }
        };
        let mut out = BTreeMap::new();
        for (label, b) in blocks {
            let zeta = model.irrep_index(label).map_err(|e| Error::Input(e.to_string()))?;
            let delta = real(b.get("delta").ok_or_else(|| Error::Input(format!("block `{label}` has no delta")))?)?;
            out.insert(zeta, ThomaBlock { alpha: seq(b, "alpha")?, beta: seq(b, "beta")?, delta });
        }
        ThomaPoint::new(out).map_err(|e| match e {
            Error::Domain(m) => Error::Input(m),
            other => other,
        })
    }

    pub fn to_json_exact(&self, labels: &[String]) -> Value {
        let s = |v: &BigRational| Value::String(fmt_rat(v));
        let blocks: serde_json::Map<String, Value> = self
            .blocks
            .iter()
            .map(|(z, b)| {
                (
                    labels[*z].clone(),
                    json!({
                        "alpha": b.alpha.iter().map(s).collect::<Vec<_>>(),
                        "beta": b.beta.iter().map(s).collect::<Vec<_>>(),
                        "delta": s(&b.delta),
                    }),
                )
            })
            .collect();
        json!({ "blocks": blocks })
    }
}

fn pow<T: ThomaReal>(x: &T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, _| acc * x.clone())
}

/// `p_1 = delta`, `p_k = sum alpha^k + (-1)^{k-1} sum beta^k` for `k >= 2`.
pub fn supersym_power<T: ThomaReal>(block: &ThomaBlock<T>, k: usize) -> Result<T> {
    match k {
        0 => domain("power sums start at degree 1"),
        1 => Ok(block.delta.clone()),
        _ => {
            let a = block.alpha.iter().fold(T::zero(), |acc, x| acc + pow(x, k));
            let b = block.beta.iter().fold(T::zero(), |acc, x| acc + pow(x, k));
            Ok(if k.is_multiple_of(2) { a - b } else { a + b })
        }
    }
}

/// `s_lambda(omega_zeta) = sum_rho chi^lambda_rho p_rho / z_rho`.
pub fn extended_schur<T: ThomaReal>(lambda: &YoungDiagram, block: &ThomaBlock<T>) -> Result<T> {
    let n = lambda.size();
    if n > DEFAULT_SCHUR_BOUND {
        return Err(Error::Resource(format!("Schur evaluation at |lambda| = {n} exceeds the bound {DEFAULT_SCHUR_BOUND}")));
    }
    let powers = (1..=n).map(|k| supersym_power(block, k)).collect::<Result<Vec<_>>>()?;
    let mut acc = T::zero();
    for rho in enumerate_partitions(n) {
        let chi = mn_character(lambda, &rho)?;
        if chi == 0 {
            continue;
        }
        let w = T::from_rational(&BigRational::new(BigInt::from(chi), z_rho(&rho)));
        acc = acc + rho.parts().iter().fold(w, |p, &r| p * powers[r - 1].clone());
    }
    Ok(acc)
}

/// `prod_zeta (dim zeta)^{-|Lambda(zeta)|} s_{Lambda(zeta)}` over raw blocks,
/// without the simplex constraints (used for homogeneity).
pub fn kernel_blocks<T: ThomaReal>(
    model: &GroupModel,
    family: &DiagramFamily,
    blocks: &BTreeMap<usize, ThomaBlock<T>>,
) -> Result<T> {
    let k = model.irreps().len();
    if let Some(z) = family.max_label().into_iter().chain(blocks.keys().copied()).find(|&z| z >= k) {
        return domain(format!("irrep index {z} is not in `{}`", model.name()));
    }
    let mut acc = T::one();
    for (&zeta, lambda) in family.iter() {
        let block = blocks.get(&zeta).cloned().unwrap_or_else(ThomaBlock::zero);
        let dim = T::from_rational(&BigRational::from_integer(BigInt::from(model.irrep_dim(zeta))));
        acc = acc * extended_schur(lambda, &block)? / pow(&dim, lambda.size());
    }
    Ok(acc)
}

/// `K(Lambda, omega)`.
pub fn kernel<T: ThomaReal>(model: &GroupModel, family: &DiagramFamily, omega: &ThomaPoint<T>) -> Result<T> {
    kernel_blocks(model, family, &omega.blocks)
}

/// Parameters `tau(zeta) > 0` of a Dirichlet law on a finite simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletParams {
    tau: BTreeMap<usize, f64>,
}

impl DirichletParams {
    pub fn new(tau: BTreeMap<usize, f64>) -> Result<Self> {
        if tau.is_empty() {
            return domain("Dirichlet law needs at least one component");
        }
        if let Some((z, t)) = tau.iter().find(|(_, t)| !(t.is_finite() && **t > 0.0)) {
            return domain(format!("tau({z}) = {t} is not positive"));
        }
        Ok(DirichletParams { tau })
    }

    /// `tau(zeta) = |alpha(zeta)|^2` over the support of `z`.
    pub fn from_z(z: &CentralFunction) -> Result<Self> {
        Self::new(z.support().into_iter().map(|zeta| (zeta, to_f64(&z.tau(zeta)))).collect())
    }

    pub fn tau(&self) -> &BTreeMap<usize, f64> {
        &self.tau
    }

    pub fn total(&self) -> f64 {
        self.tau.values().sum()
    }

    /// `E[delta_zeta] = tau(zeta) / sum tau`.
    pub fn mean(&self) -> BTreeMap<usize, f64> {
        let s = self.total();
        self.tau.iter().map(|(&z, &t)| (z, t / s)).collect()
    }
}

/// A draw from `D(tau)` by normalizing independent `Gamma(tau, 1)` variables.
pub fn dirichlet_sample<R: RngCore + ?Sized>(params: &DirichletParams, rng: &mut R) -> BTreeMap<usize, f64> {
    loop {
        let draws: Vec<(usize, f64)> = params
            .tau
            .iter()
            .map(|(&z, &t)| (z, Gamma::new(t, 1.0).expect("positive shape").sample(rng)))
            .collect();
        let s: f64 = draws.iter().map(|(_, g)| g).sum();
        // all-zero draws only happen through underflow at tiny shapes
        if s > 0.0 {
            return draws.into_iter().map(|(z, g)| (z, g / s)).collect();
        }
    }
}

/// `ln [Gamma(sum tau) / prod Gamma(tau) prod delta^{tau - 1}]`.
pub fn dirichlet_log_density(params: &DirichletParams, point: &BTreeMap<usize, f64>) -> Result<f64> {
    if point.keys().ne(params.tau.keys()) {
        return domain("point and parameters have different supports");
    }
    let s: f64 = point.values().sum();
    if point.values().any(|&d| d < 0.0) || (s - 1.0).abs() > 1e-9 {
        return domain("point is not on the simplex");
    }
    let mut acc = ln_gamma(params.total());
    for (z, &t) in &params.tau {
        acc += (t - 1.0) * point[z].ln() - ln_gamma(t);
    }
    Ok(acc)
}

/// A sampler of points `(alpha, beta)` of `Omega_0`, where `sum alpha + sum beta = 1`.
pub trait ComponentSampler: Send + Sync {
    fn sample(&self, rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>);
}

/// Always returns the same point.
#[derive(Clone, Debug)]
pub struct PointMass {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl PointMass {
    /// `alpha = (1)`, `beta = 0`.
    pub fn unit_alpha() -> Self {
        PointMass { alpha: vec![1.0], beta: Vec::new() }
    }
}

impl ComponentSampler for PointMass {
    fn sample(&self, _rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>) {
        (self.alpha.clone(), self.beta.clone())
    }
}

/// Uniform over a finite list of points.
#[derive(Clone, Debug)]
pub struct UniformAtoms {
    pub atoms: Vec<(Vec<f64>, Vec<f64>)>,
}

impl ComponentSampler for UniformAtoms {
    fn sample(&self, rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>) {
        let i = (rng.next_u64() % self.atoms.len() as u64) as usize;
        self.atoms[i].clone()
    }
}

fn check_omega0(zeta: usize, alpha: &[f64], beta: &[f64]) -> Result<()> {
    let block = ThomaBlock { alpha: alpha.to_vec(), beta: beta.to_vec(), delta: 1.0 };
    let ok = block.validate().is_ok() && (block.mass() - 1.0).abs() <= f64::slack();
    if !ok {
        return Err(Error::Contract(format!(
            "component sampler for irrep {zeta} returned ({alpha:?}, {beta:?}), which is not in Omega_0"
        )));
    }
    Ok(())
}

/// Draws `delta ~ D(tau)` and `(alpha_zeta, beta_zeta)` from each component
/// sampler, and returns `(delta_zeta alpha_zeta, delta_zeta beta_zeta, delta_zeta)`.
pub fn mix_spectral<R: RngCore>(
    params: &DirichletParams,
    samplers: &BTreeMap<usize, Box<dyn ComponentSampler>>,
    rng: &mut R,
) -> Result<ThomaPoint<f64>> {
    if let Some(z) = params.tau.keys().find(|z| !samplers.contains_key(z)) {
        return domain(format!("no component sampler for irrep {z}"));
    }
    let delta = dirichlet_sample(params, rng);
    let mut blocks = BTreeMap::new();
    for (z, d) in delta {
        let (alpha, beta) = samplers[&z].sample(rng);
        check_omega0(z, &alpha, &beta)?;
        let block = ThomaBlock { alpha, beta, delta: 1.0 }.scaled(&d);
        blocks.insert(z, block);
    }
    ThomaPoint::new(blocks).map_err(|e| Error::Contract(e.to_string()))
}

/// `E[K(Lambda, omega)]` when every component is the point mass `alpha = (1)`:
/// then `s_lambda = delta^{|lambda|}` on one-row diagrams and 0 otherwise, and
/// `E[prod delta^{k}] = prod (tau)_k / (sum tau)_n`.
pub fn point_mass_kernel_mean(model: &GroupModel, family: &DiagramFamily, tau: &BTreeMap<usize, BigRational>) -> Result<BigRational> {
    use crate::scalar::pochhammer;
    let total: BigRational = tau.values().cloned().sum();
    let mut acc = BigRational::one() / pochhammer(&total, family.size());
    for (zeta, lambda) in family.iter() {
        if lambda.len() > 1 {
            return Ok(BigRational::zero());
        }
        let Some(t) = tau.get(zeta) else {
            return Ok(BigRational::zero());
        };
        let dim = BigRational::from_integer(BigInt::from(model.irrep_dim(*zeta)));
        acc *= pochhammer(t, lambda.size()) / crate::scalar::powi(&dim, lambda.size() as i64);
    }
    Ok(acc)
}

/// Monte Carlo mean and standard error of `f` over `count` draws.
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

/// An exact block rounded to `f64`.
pub fn block_to_f64(block: &ThomaBlock<BigRational>) -> ThomaBlock<f64> {
    ThomaBlock {
        alpha: block.alpha.iter().map(to_f64).collect(),
        beta: block.beta.iter().map(to_f64).collect(),
        delta: to_f64(&block.delta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::spectral_group::{s3, z2, z_from_ints};
    use crate::zmeasure::phi_z;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn d(parts: &[usize]) -> YoungDiagram {
        YoungDiagram::new(parts.to_vec()).unwrap()
    }

    fn block(alpha: &[(i64, i64)], beta: &[(i64, i64)], delta: (i64, i64)) -> ThomaBlock<BigRational> {
        ThomaBlock {
            alpha: alpha.iter().map(|&(p, q)| rat(p, q)).collect(),
            beta: beta.iter().map(|&(p, q)| rat(p, q)).collect(),
            delta: rat(delta.0, delta.1),
        }
    }

    #[test]
    fn power_sums() {
        let b = block(&[(3, 10)], &[(2, 10)], (1, 1));
        assert_eq!(supersym_power(&b, 1).unwrap(), int(1));
        assert_eq!(supersym_power(&b, 2).unwrap(), rat(5, 100));
        assert_eq!(supersym_power(&b, 3).unwrap(), rat(27 + 8, 1000));
        assert!(supersym_power(&b, 0).is_err());
        let f = ThomaBlock { alpha: vec![0.3], beta: vec![0.2], delta: 1.0 };
        assert!((supersym_power(&f, 2).unwrap() - 0.05).abs() < 1e-15);
    }

    #[test]
    fn one_row_indicator() {
        let b = block(&[(1, 1)], &[], (1, 1));
        for n in 1..=5 {
            for lambda in enumerate_partitions(n) {
                let expect = if lambda.len() == 1 { int(1) } else { int(0) };
                assert_eq!(extended_schur(&lambda, &b).unwrap(), expect, "{lambda}");
            }
        }
        let c = block(&[(1, 3)], &[(1, 4)], (2, 3));
        assert_eq!(extended_schur(&d(&[1]), &c).unwrap(), rat(2, 3));
    }

    #[test]
    fn homogeneity() {
        let b = block(&[(1, 3), (1, 5)], &[(1, 7)], (4, 5));
        let t = rat(1, 2);
        for n in 0..=6 {
            for lambda in enumerate_partitions(n) {
                let lhs = extended_schur(&lambda, &b.scaled(&t)).unwrap();
                let rhs = crate::scalar::powi(&t, n as i64) * extended_schur(&lambda, &b).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn kernel_cases() {
        let m = s3();
        let std = m.irrep_index("std").unwrap();
        let omega = ThomaPoint::new(BTreeMap::from([
            (0, block(&[(1, 4)], &[], (1, 2))),
            (std, block(&[(1, 8)], &[(1, 8)], (1, 2))),
        ]))
        .unwrap();
        assert_eq!(kernel(&m, &DiagramFamily::empty(), &omega).unwrap(), int(1));
        assert_eq!(kernel(&m, &DiagramFamily::single_box(std), &omega).unwrap(), rat(1, 4));
        assert_eq!(kernel(&m, &DiagramFamily::single_box(1), &omega).unwrap(), int(0));
        assert!(kernel(&m, &DiagramFamily::single_box(7), &omega).is_err());
        let fam = DiagramFamily::from_pairs(vec![(0, d(&[2])), (std, d(&[1, 1]))]).unwrap();
        let mut blocks = omega.blocks().clone();
        let base = kernel_blocks(&m, &fam, &blocks).unwrap();
        let t = rat(2, 3);
        blocks.insert(std, blocks[&std].scaled(&t));
        assert_eq!(kernel_blocks(&m, &fam, &blocks).unwrap(), base * &t * &t);
    }

    #[test]
    fn point_validation() {
        assert!(ThomaPoint::new(BTreeMap::from([(0, block(&[(1, 2)], &[], (1, 1)))])).is_ok());
        assert!(ThomaPoint::new(BTreeMap::from([(0, block(&[(1, 2)], &[], (1, 2)))])).is_err());
        assert!(ThomaPoint::new(BTreeMap::from([(0, block(&[(1, 2), (3, 4)], &[], (1, 1)))])).is_err());
        assert!(ThomaPoint::new(BTreeMap::from([(0, block(&[(1, 2)], &[(1, 1)], (1, 1)))])).is_err());
        let m = z2();
        let v = serde_json::json!({"blocks": {"triv": {"alpha": ["1/4"], "delta": "1/3"}, "sgn": {"beta": [0.25], "delta": "2/3"}}});
        let p = ThomaPoint::from_json(&v, &m).unwrap();
        assert_eq!(p.block(1).beta, vec![rat(1, 4)]);
        assert_eq!(ThomaPoint::from_json(&p.to_json_exact(&["triv".into(), "sgn".into()]), &m).unwrap(), p);
    }

    #[test]
    fn dirichlet() {
        let one = DirichletParams::new(BTreeMap::from([(3, 0.7)])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert_eq!(dirichlet_sample(&one, &mut rng), BTreeMap::from([(3, 1.0)]));
        assert!(DirichletParams::new(BTreeMap::from([(0, 0.0)])).is_err());
        // midpoint quadrature of the Beta(2, 3) density
        let p = DirichletParams::new(BTreeMap::from([(0, 2.0), (1, 3.0)])).unwrap();
        let k = 20_000;
        let integral: f64 = (0..k)
            .map(|i| {
                let x = (i as f64 + 0.5) / k as f64;
                dirichlet_log_density(&p, &BTreeMap::from([(0, x), (1, 1.0 - x)])).unwrap().exp() / k as f64
            })
            .sum();
        assert!((integral - 1.0).abs() < 1e-6, "{integral}");
        let draws: Vec<f64> = (0..20_000).map(|_| dirichlet_sample(&p, &mut rng)[&0]).collect();
        let (mean, se) = mean_and_stderr(&draws);
        assert!((mean - 0.4).abs() < 3.0 * se + 1e-12, "{mean} {se}");
    }

    #[test]
    fn mixing() {
        let m = Arc::new(z2());
        let z = z_from_ints(&m, &[3, 1]).unwrap();
        let params = DirichletParams::from_z(&z).unwrap();
        let mut samplers: BTreeMap<usize, Box<dyn ComponentSampler>> = BTreeMap::new();
        samplers.insert(0, Box::new(PointMass::unit_alpha()));
        samplers.insert(1, Box::new(UniformAtoms { atoms: vec![(vec![0.5], vec![0.5]), (vec![], vec![1.0])] }));
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut k1 = Vec::new();
        for _ in 0..20_000 {
            let w = mix_spectral(&params, &samplers, &mut rng).unwrap();
            let b = w.block(0);
            assert_eq!(b.alpha, vec![b.delta]);
            k1.push(kernel(&m, &DiagramFamily::single_box(1), &w).unwrap());
        }
        let (mean, se) = mean_and_stderr(&k1);
        let target = to_f64(&phi_z(&z, &DiagramFamily::single_box(1)).unwrap());
        assert!((mean - target).abs() < 3.0 * se, "{mean} vs {target}");
        samplers.insert(1, Box::new(PointMass { alpha: vec![0.5], beta: vec![] }));
        assert!(matches!(mix_spectral(&params, &samplers, &mut rng), Err(Error::Contract(_))));
        samplers.remove(&1);
        assert!(mix_spectral(&params, &samplers, &mut rng).is_err());
    }

    #[test]
    fn point_mass_mean_at_degree_two() {
        let m = Arc::new(z2());
        let tau = BTreeMap::from([(0, int(4)), (1, int(1))]);
        let params = DirichletParams::new(tau.iter().map(|(&k, v)| (k, to_f64(v))).collect()).unwrap();
        let samplers: BTreeMap<usize, Box<dyn ComponentSampler>> =
            [0, 1].into_iter().map(|z| (z, Box::new(PointMass::unit_alpha()) as Box<dyn ComponentSampler>)).collect();
        let fam = DiagramFamily::from_pairs(vec![(0, d(&[1])), (1, d(&[1]))]).unwrap();
        assert_eq!(point_mass_kernel_mean(&m, &fam, &tau).unwrap(), rat(4, 30));
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let vals: Vec<f64> =
            (0..20_000).map(|_| kernel(&m, &fam, &mix_spectral(&params, &samplers, &mut rng).unwrap()).unwrap()).collect();
        let (mean, se) = mean_and_stderr(&vals);
        assert!((mean - 4.0 / 30.0).abs() < 3.0 * se);
    }
}

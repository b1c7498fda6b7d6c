//! Irreducible characters of `S_n(G)` for small finite `G`, induced from
//! block subgroups `prod_zeta S_{|Lambda(zeta)|}(G)`, and the inner products
//! that connect them to power sums, Schur functions and z-measures.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::par;
use crate::partitions::{mn_character, YoungDiagram};
use crate::scalar::{cx_int, cx_real, factorial, pochhammer, Cx};
use crate::spectral_group::{inner_product_g, CentralFunction, GroupModel};
use crate::symfunc::{schur_eval, PowerSumAssignment};
use crate::wreath::{self, ColoredPermutation, WreathType};
use crate::zmeasure::{dim_wreath, enumerate_families, enumerate_families_over, family_zmeasure, DiagramFamily};

/// Largest `|S_n(G)|` accepted by the averaging formula.
pub const DEFAULT_CHARACTER_BOUND: u64 = 50_000;

/// Classes of `S_n(G)`: all types of size `n` over the classes of `G`.
pub fn wreath_classes(model: &GroupModel, n: usize) -> Vec<WreathType> {
    enumerate_families_over(n, model.classes().len())
}

/// Centralizer order `prod_c prod_r m_{c,r}! (r |G| / |c|)^{m_{c,r}}`.
pub fn centralizer_order(model: &GroupModel, rho: &WreathType) -> BigInt {
    let g = BigInt::from(model.order());
    let mut acc = BigInt::one();
    for (&c, d) in rho.iter() {
        let size = BigInt::from(model.classes()[c].size);
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &r in d.parts() {
            *mult.entry(r).or_default() += 1;
        }
        for (r, m) in mult {
            let per = BigInt::from(r) * &g / &size;
            acc *= factorial(m) * per.pow(m as u32);
        }
    }
    acc
}

/// `|class rho| / |S_n(G)|`.
pub fn class_weight(model: &GroupModel, rho: &WreathType) -> BigRational {
    BigRational::new(BigInt::one(), centralizer_order(model, rho))
}

/// An element of type `rho`: each row is a cycle on consecutive letters whose
/// first color represents its class and the rest are the identity.
pub fn type_representative(model: &GroupModel, rho: &WreathType) -> Result<ColoredPermutation> {
    let el = model.elements()?;
    let reps = el.class_representatives(model.classes().len());
    let n = rho.size();
    let mut colors = vec![el.identity; n];
    let mut perm = Vec::with_capacity(n);
    let mut start = 0;
    for (&c, d) in rho.iter() {
        for &r in d.parts() {
            colors[start] = reps[c];
            for i in 0..r {
                perm.push(start + (i + 1) % r);
            }
            start += r;
        }
    }
    Ok(ColoredPermutation { colors, perm })
}

/// A central function on `S_n(G)`, one value per type.
#[derive(Clone, Debug)]
pub struct ClassFunctionTable {
    model: Arc<GroupModel>,
    n: usize,
    values: BTreeMap<WreathType, Cx>,
}

impl ClassFunctionTable {
    /// Errors unless `values` has exactly one entry per class of `S_n(G)`.
    pub fn new(model: Arc<GroupModel>, n: usize, values: BTreeMap<WreathType, Cx>) -> Result<Self> {
        let classes = wreath_classes(&model, n);
        if classes.len() != values.len() || classes.iter().any(|c| !values.contains_key(c)) {
            return domain(format!("a class function on S_{n}(G) needs one value per class"));
        }
        Ok(ClassFunctionTable { model, n, values })
    }

    /// Tabulates `f` on type representatives.
    pub fn from_fn<F>(model: Arc<GroupModel>, n: usize, f: F) -> Result<Self>
    where
        F: Fn(&ColoredPermutation) -> Result<Cx> + Sync + Send,
    {
        let classes = wreath_classes(&model, n);
        let values = par::map(&classes, |rho| f(&type_representative(&model, rho)?));
        let values = classes.into_iter().zip(values).map(|(k, v)| Ok((k, v?))).collect::<Result<_>>()?;
        Ok(ClassFunctionTable { model, n, values })
    }

    pub fn model(&self) -> &Arc<GroupModel> {
        &self.model
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &BTreeMap<WreathType, Cx> {
        &self.values
    }

    pub fn value(&self, rho: &WreathType) -> Result<&Cx> {
        self.values.get(rho).ok_or_else(|| Error::Domain(format!("{rho} is not a class of S_{}(G)", self.n)))
    }

    pub fn evaluate(&self, x: &ColoredPermutation) -> Result<&Cx> {
        self.value(&wreath::cycle_type(&self.model, x)?)
    }

    /// Value at the identity.
    pub fn degree_value(&self) -> Cx {
        let e = DiagramFamily::new(if self.n == 0 {
            BTreeMap::new()
        } else {
            BTreeMap::from([(self.model.identity_class(), YoungDiagram::column(self.n))])
        });
        self.values[&e].clone()
    }

    /// `<f, g> = sum_rho |class rho| / |S_n(G)| f(rho) conj g(rho)`.
    pub fn inner_product(&self, other: &ClassFunctionTable) -> Result<Cx> {
        if self.n != other.n || self.model.name() != other.model.name() {
            return domain("class functions live on different groups");
        }
        let mut acc = Cx::zero();
        for (rho, v) in &self.values {
            acc += cx_real(class_weight(&self.model, rho)) * v * other.value(rho)?.conj();
        }
        Ok(acc)
    }
}

/// `prod_cycles chi^zeta(cycle product)` for `x` in `S_k(G)`.
pub fn block_character(model: &GroupModel, zeta: usize, x: &ColoredPermutation) -> Result<Cx> {
    if zeta >= model.irreps().len() {
        return domain(format!("irrep index {zeta} out of range"));
    }
    let mut acc = Cx::one();
    for (_, c) in wreath::colored_cycles(model, x)? {
        acc *= model.char_value(zeta, c);
    }
    Ok(acc)
}

/// The letters `lo..hi` of `x`, which must be stable under its permutation.
fn restrict(x: &ColoredPermutation, lo: usize, hi: usize) -> Option<ColoredPermutation> {
    let mut perm = Vec::with_capacity(hi - lo);
    for i in lo..hi {
        let j = x.perm[i];
        if !(lo..hi).contains(&j) {
            return None;
        }
        perm.push(j - lo);
    }
    Some(ColoredPermutation { colors: x.colors[lo..hi].to_vec(), perm })
}

/// The character of the block subgroup extended by zero, with blocks
/// laid out consecutively in the order `order` (irrep indices).
fn block_subgroup_character(
    model: &GroupModel,
    family: &DiagramFamily,
    order: &[usize],
    x: &ColoredPermutation,
) -> Result<Cx> {
    let mut acc = Cx::one();
    let mut lo = 0;
    for &zeta in order {
        let lambda = family.get(zeta);
        let hi = lo + lambda.size();
        let Some(part) = restrict(x, lo, hi) else {
            return Ok(Cx::zero());
        };
        let s_part = mn_character(lambda, &crate::perm::cycle_type(&part.perm))?;
        acc = acc * block_character(model, zeta, &part)? * cx_int(s_part);
        lo = hi;
    }
    Ok(acc)
}

fn subgroup_order(model: &GroupModel, family: &DiagramFamily) -> BigInt {
    family
        .iter()
        .map(|(_, d)| factorial(d.size()) * BigInt::from(model.order()).pow(d.size() as u32))
        .product()
}

/// `chi^Lambda` by averaging the block character over all of `S_n(G)`.
pub fn induced_character(family: &DiagramFamily, model: &Arc<GroupModel>) -> Result<ClassFunctionTable> {
    let order: Vec<usize> = family.support().collect();
    induced_character_with_order(family, model, &order, DEFAULT_CHARACTER_BOUND)
}

/// As [`induced_character`], with an explicit block order (a permutation of
/// the support of `family`) and enumeration bound.
pub fn induced_character_with_order(
    family: &DiagramFamily,
    model: &Arc<GroupModel>,
    order: &[usize],
    bound: u64,
) -> Result<ClassFunctionTable> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != family.support().collect::<Vec<_>>() {
        return domain("block order must list the support of the family once each");
    }
    if let Some(z) = family.max_label().filter(|&z| z >= model.irreps().len()) {
        return domain(format!("irrep index {z} out of range"));
    }
    let n = family.size();
    let group = wreath::all_elements(model, n, bound)?;
    let h = cx_real(BigRational::from_integer(subgroup_order(model, family)));
    ClassFunctionTable::from_fn(model.clone(), n, |x| {
        let mut acc = Cx::zero();
        for g in &group {
            let y = wreath::multiply(model, &wreath::multiply(model, g, x)?, &wreath::inverse(model, g)?)?;
            acc += block_subgroup_character(model, family, order, &y)?;
        }
        Ok(acc / &h)
    })
}

/// Every irreducible character of `S_n(G)`, keyed by family.
pub fn character_table(model: &Arc<GroupModel>, n: usize) -> Result<Vec<(DiagramFamily, ClassFunctionTable)>> {
    character_table_bounded(model, n, DEFAULT_CHARACTER_BOUND)
}

pub fn character_table_bounded(
    model: &Arc<GroupModel>,
    n: usize,
    bound: u64,
) -> Result<Vec<(DiagramFamily, ClassFunctionTable)>> {
    enumerate_families(n, model)
        .into_iter()
        .map(|f| {
            let order: Vec<usize> = f.support().collect();
            let t = induced_character_with_order(&f, model, &order, bound)?;
            Ok((f, t))
        })
        .collect()
}

/// `Psi(x) = prod_cycles p_len(class)`, with `p[r-1]` standing for `p_r`.
pub fn psi_eval(p: &[CentralFunction], x: &ColoredPermutation) -> Result<Cx> {
    let Some(first) = p.first() else {
        return if x.degree() == 0 { Ok(Cx::one()) } else { domain("no power sums supplied") };
    };
    let model = first.model();
    let mut acc = Cx::one();
    for (len, c) in wreath::colored_cycles(model, x)? {
        let pr = p
            .get(len - 1)
            .ok_or_else(|| Error::Domain(format!("power sum p_{len} is not supplied")))?;
        acc *= pr.class_value(c)?;
    }
    Ok(acc)
}

/// `<Psi, chi^Lambda>` and `prod_zeta s_{Lambda(zeta)}(p_hat(zeta))` with
/// `p_hat_r(zeta) = <p_r, chi^zeta>_G`.
pub fn theorem_psi_check(family: &DiagramFamily, p: &[CentralFunction]) -> Result<(Cx, Cx)> {
    let model = p
        .first()
        .ok_or_else(|| Error::Domain("no power sums supplied".into()))?
        .model()
        .clone();
    let chi = induced_character(family, &model)?;
    let psi = ClassFunctionTable::from_fn(model.clone(), family.size(), |x| psi_eval(p, x))?;
    let lhs = psi.inner_product(&chi)?;
    let mut rhs = Cx::one();
    for (&zeta, lambda) in family.iter() {
        let chi_zeta = CentralFunction::character(model.clone(), zeta)?;
        let hat = p.iter().map(|pr| inner_product_g(pr, &chi_zeta)).collect::<Result<Vec<_>>>()?;
        rhs *= schur_eval(lambda, &PowerSumAssignment::from_slice(&hat))?;
    }
    Ok((lhs, rhs))
}

/// `phi_z(x) = prod_c z(c)^{[x](c)}` tabulated on `S_n(G)`.
pub fn phi_z_table(z: &CentralFunction, n: usize) -> Result<ClassFunctionTable> {
    let p = vec![z.clone(); n.max(1)];
    ClassFunctionTable::from_fn(z.model().clone(), n, |x| psi_eval(&p, x))
}

/// `a(Lambda) = <phi_z, chi^Lambda>`.
pub fn a_coefficient(z: &CentralFunction, family: &DiagramFamily) -> Result<Cx> {
    let chi = induced_character(family, z.model())?;
    phi_z_table(z, family.size())?.inner_product(&chi)
}

/// `n!/(I)_n |a(Lambda)|^2`, to be compared with the z-measure.
pub fn zmeasure_from_characters(z: &CentralFunction, family: &DiagramFamily) -> Result<BigRational> {
    let n = family.size();
    let a = a_coefficient(z, family)?;
    Ok(BigRational::from_integer(factorial(n)) / pochhammer(z.total(), n) * crate::scalar::norm_sqr(&a))
}

/// `sum_Lambda M(Lambda) chi^Lambda / DIM Lambda` as a table on `S_n(G)`.
pub fn chi_z_expansion(z: &CentralFunction, n: usize) -> Result<ClassFunctionTable> {
    let model = z.model();
    let mut values: BTreeMap<WreathType, Cx> = wreath_classes(model, n).into_iter().map(|k| (k, Cx::zero())).collect();
    for (family, chi) in character_table(model, n)? {
        let m = family_zmeasure(z, &family)?;
        let dim = BigRational::from_integer(dim_wreath(model, &family)?);
        let w = cx_real(m / dim);
        for (rho, v) in values.iter_mut() {
            *v += &w * chi.value(rho)?;
        }
    }
    ClassFunctionTable::new(model.clone(), n, values)
}

/// `chi_z` restricted to `S_n(G)` by the direct sum over the group.
pub fn chi_z_table(z: &CentralFunction, n: usize, bound: u64) -> Result<ClassFunctionTable> {
    ClassFunctionTable::from_fn(z.model().clone(), n, |w| wreath::chi_z_restricted(z, w, bound))
}

//! Desk-scale models of a compact group `G`: irreducible representations with
//! their dimensions, conjugacy classes with Haar weights, character tables,
//! and central functions `z` together with their Fourier coefficients
//! `alpha(zeta) = <z, chi^zeta>_G` and `I = <z, z>_G`.
//!
//! Two kinds of model exist. A finite group carries a character table and
//! optionally a Cayley table; a truncated `U(1)` model only knows the modes
//! `-L..=L`, each one-dimensional, so a central function on it is given by its
//! Fourier coefficients.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{domain, Error, Result};
use crate::perm;
use crate::scalar::{
    approx_eq, approx_eq_real, cx_int, norm_sqr, parse_cx_json, parse_rational, root_of_unity,
    ten_pow_neg, Cx, DEFAULT_TOLERANCE_EXP,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irrep {
    pub label: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub label: String,
    pub size: usize,
}

/// Element-level data of a finite group: elements are `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementData {
    /// `mul[a][b] = a * b`.
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
    pub class_of: Vec<usize>,
}

impl ElementData {
    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// A fixed representative element of every class.
    pub fn class_representatives(&self, n_classes: usize) -> Vec<usize> {
        let mut reps = vec![usize::MAX; n_classes];
        for (g, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = g;
            }
        }
        reps
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Finite,
    U1Truncated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupModel {
    name: String,
    kind: ModelKind,
    irreps: Vec<Irrep>,
    classes: Vec<ConjClass>,
    order: usize,
    identity_class: usize,
    /// `char_table[irrep][class]`.
    char_table: Vec<Vec<Cx>>,
    elements: Option<ElementData>,
    window: i64,
    tolerance: Option<BigRational>,
}

impl GroupModel {
    /// A finite model. Structural invariants are checked here; character
    /// orthogonality is checked separately by [`GroupModel::orthogonality_failures`].
    pub fn finite(
        name: impl Into<String>,
        classes: Vec<ConjClass>,
        irreps: Vec<Irrep>,
        char_table: Vec<Vec<Cx>>,
        identity_class: usize,
        elements: Option<ElementData>,
        tolerance: Option<BigRational>,
    ) -> Result<Self> {
        let order: usize = classes.iter().map(|c| c.size).sum();
        let model = GroupModel {
            name: name.into(),
            kind: ModelKind::Finite,
            irreps,
            classes,
            order,
            identity_class,
            char_table,
            elements,
            window: 0,
            tolerance,
        };
        model.check_structure()?;
        Ok(model)
    }

    /// Truncated `U(1)`: irreps are the characters `e^{i l phi}`, `|l| <= window`.
    pub fn u1(window: i64) -> Result<Self> {
        if window < 0 {
            return Err(Error::Input(format!("U(1) window L = {window} must be >= 0")));
        }
        let irreps = (-window..=window)
            .map(|l| Irrep { label: l.to_string(), dim: 1 })
            .collect();
        Ok(GroupModel {
            name: format!("U(1)[L={window}]"),
            kind: ModelKind::U1Truncated,
            irreps,
            classes: Vec::new(),
            order: 0,
            identity_class: 0,
            char_table: Vec::new(),
            elements: None,
            window,
            tolerance: None,
        })
    }

    fn check_structure(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Input(format!("model `{}`: {msg}", self.name)));
        if self.irreps.is_empty() {
            return bad("no irreducible representations".into());
        }
        if let Some(z) = self.irreps.iter().find(|r| r.dim == 0) {
            return bad(format!("irrep `{}` has dimension 0", z.label));
        }
        let mut labels = HashSet::new();
        if let Some(r) = self.irreps.iter().find(|r| !labels.insert(r.label.as_str())) {
            return bad(format!("duplicate irrep label `{}`", r.label));
        }
        if self.kind == ModelKind::U1Truncated {
            return Ok(());
        }
        if self.classes.is_empty() {
            return bad("no conjugacy classes".into());
        }
        let mut labels = HashSet::new();
        if let Some(c) = self.classes.iter().find(|c| !labels.insert(c.label.as_str())) {
            return bad(format!("duplicate class label `{}`", c.label));
        }
        if let Some(c) = self.classes.iter().find(|c| c.size == 0) {
            return bad(format!("class `{}` has size 0", c.label));
        }
        if self.classes.len() != self.irreps.len() {
            return bad(format!(
                "{} classes but {} irreps; a finite group has equally many",
                self.classes.len(),
                self.irreps.len()
            ));
        }
        let sum_sq: usize = self.irreps.iter().map(|r| r.dim * r.dim).sum();
        if sum_sq != self.order {
            return bad(format!("sum of squared irrep dimensions {sum_sq} != |G| = {}", self.order));
        }
        if self.identity_class >= self.classes.len() || self.classes[self.identity_class].size != 1 {
            return bad("identity class must exist and have size 1".into());
        }
        if self.char_table.len() != self.irreps.len()
            || self.char_table.iter().any(|row| row.len() != self.classes.len())
        {
            return bad("character table must have one row per irrep and one column per class".into());
        }
        if let Some(el) = &self.elements {
            self.check_elements(el).or_else(bad)?;
        }
        Ok(())
    }

    fn check_elements(&self, el: &ElementData) -> std::result::Result<(), String> {
        let n = el.mul.len();
        if n != self.order {
            return Err(format!("Cayley table has {n} elements but |G| = {}", self.order));
        }
        if el.mul.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err("Cayley table is not a square table of element indices".into());
        }
        if el.class_of.len() != n || el.class_of.iter().any(|&c| c >= self.classes.len()) {
            return Err("element_classes must assign a valid class to every element".into());
        }
        if (0..n).any(|a| el.mul[el.identity][a] != a || el.mul[a][el.identity] != a) {
            return Err("Cayley table has no two-sided identity".into());
        }
        if (0..n).any(|a| el.mul[a][el.inv[a]] != el.identity) {
            return Err("Cayley table has an element without inverse".into());
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if el.mul[el.mul[a][b]][c] != el.mul[a][el.mul[b][c]] {
                        return Err("Cayley table is not associative".into());
                    }
                }
            }
        }
        if el.class_of[el.identity] != self.identity_class {
            return Err("identity element is not in the identity class".into());
        }
        for a in 0..n {
            for h in 0..n {
                let conj = el.mul[el.mul[h][a]][el.inv[h]];
                if el.class_of[conj] != el.class_of[a] {
                    return Err(format!("element_classes is not conjugation invariant at element {a}"));
                }
            }
        }
        for (ci, c) in self.classes.iter().enumerate() {
            let members: Vec<usize> = (0..n).filter(|&a| el.class_of[a] == ci).collect();
            if members.len() != c.size {
                return Err(format!("class `{}` declares size {} but has {} elements", c.label, c.size, members.len()));
            }
            let orbit: HashSet<usize> = (0..n).map(|h| el.mul[el.mul[h][members[0]]][el.inv[h]]).collect();
            if orbit.len() != c.size {
                return Err(format!("class `{}` is a union of several conjugacy classes", c.label));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn irrep_dim(&self, zeta: usize) -> usize {
        self.irreps[zeta].dim
    }

    pub fn irrep_index(&self, label: &str) -> Result<usize> {
        self.irreps
            .iter()
            .position(|r| r.label == label)
            .ok_or_else(|| Error::Domain(format!("unknown irrep `{label}` in model `{}`", self.name)))
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_index(&self, label: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| Error::Domain(format!("unknown class `{label}` in model `{}`", self.name)))
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    /// `|G|` (finite kind only).
    pub fn order(&self) -> usize {
        self.order
    }

    /// Haar weight `|c| / |G|` of a class.
    pub fn class_weight(&self, c: usize) -> BigRational {
        BigRational::new(BigInt::from(self.classes[c].size), BigInt::from(self.order))
    }

    pub fn char_value(&self, zeta: usize, c: usize) -> &Cx {
        &self.char_table[zeta][c]
    }

    pub fn char_table(&self) -> &[Vec<Cx>] {
        &self.char_table
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn has_elements(&self) -> bool {
        self.elements.is_some()
    }

    pub fn elements(&self) -> Result<&ElementData> {
        self.elements.as_ref().ok_or_else(|| match self.kind {
            ModelKind::U1Truncated => {
                Error::Unsupported(format!("model `{}` carries no element-level data", self.name))
            }
            ModelKind::Finite => Error::Capability(format!(
                "model `{}` has no Cayley table; element-level operations need one",
                self.name
            )),
        })
    }

    /// `None` for exact models.
    pub fn tolerance(&self) -> Option<&BigRational> {
        self.tolerance.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.tolerance.is_none()
    }

    pub fn approx_eq(&self, a: &Cx, b: &Cx) -> bool {
        approx_eq(a, b, self.tolerance())
    }

    pub fn approx_eq_real(&self, a: &BigRational, b: &BigRational) -> bool {
        approx_eq_real(a, b, self.tolerance())
    }

    /// Returns a copy whose character table value at `(zeta, c)` is replaced.
    pub fn with_char_value(&self, zeta: usize, c: usize, value: Cx) -> GroupModel {
        let mut m = self.clone();
        m.char_table[zeta][c] = value;
        m
    }

    /// Every violated character-table identity: first orthogonality
    /// `sum_c w(c) chi^zeta(c) conj(chi^eta(c)) = delta`, and
    /// `chi^zeta(e) = dim zeta`. Empty for a consistent table.
    pub fn orthogonality_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.kind != ModelKind::Finite {
            return out;
        }
        for (z, irrep) in self.irreps.iter().enumerate() {
            let at_e = &self.char_table[z][self.identity_class];
            if !self.approx_eq(at_e, &cx_int(irrep.dim as i64)) {
                out.push(format!(
                    "character of `{}` at the identity is {} but dim = {}",
                    irrep.label,
                    crate::scalar::fmt_cx(at_e),
                    irrep.dim
                ));
            }
        }
        for z in 0..self.irreps.len() {
            for e in 0..self.irreps.len() {
                let mut acc = Cx::zero();
                for c in 0..self.classes.len() {
                    acc += Cx::from(self.class_weight(c)) * &self.char_table[z][c] * self.char_table[e][c].conj();
                }
                let expect = if z == e { Cx::one() } else { Cx::zero() };
                if !self.approx_eq(&acc, &expect) {
                    out.push(format!(
                        "first orthogonality fails for (`{}`, `{}`): sum = {}",
                        self.irreps[z].label,
                        self.irreps[e].label,
                        crate::scalar::fmt_cx(&acc)
                    ));
                }
            }
        }
        out
    }

    pub fn check_orthogonality(&self) -> Result<()> {
        match self.orthogonality_failures().into_iter().next() {
            None => Ok(()),
            Some(msg) => Err(Error::Input(format!("model `{}`: {msg}", self.name))),
        }
    }
}

/// Class of the right-to-left product `g_r ... g_2 g_1` of `elements = [g_1, .., g_r]`.
pub fn class_of_product(model: &GroupModel, elements: &[usize]) -> Result<usize> {
    let el = model.elements()?;
    let mut acc = el.identity;
    for &g in elements {
        if g >= el.order() {
            return domain(format!("element index {g} out of range"));
        }
        acc = el.mul(g, acc);
    }
    Ok(el.class_of(acc))
}

// ---------------------------------------------------------------------------
// Central functions

/// A central function on `G`, stored with its Fourier coefficients and `I`.
#[derive(Clone, Debug)]
pub struct CentralFunction {
    model: Arc<GroupModel>,
    class_values: Option<Vec<Cx>>,
    alpha: Vec<Cx>,
    total: BigRational,
}

impl CentralFunction {
    /// `z` given by its value on every class (finite models only).
    pub fn from_class_values(model: Arc<GroupModel>, values: Vec<Cx>) -> Result<Self> {
        if model.kind() != ModelKind::Finite {
            return domain("class values require a finite model");
        }
        if values.len() != model.classes().len() {
            return domain(format!(
                "{} class values for {} classes",
                values.len(),
                model.classes().len()
            ));
        }
        let alpha = (0..model.irreps().len())
            .map(|z| {
                let mut acc = Cx::zero();
                for (c, v) in values.iter().enumerate() {
                    acc += Cx::from(model.class_weight(c)) * v * model.char_value(z, c).conj();
                }
                acc
            })
            .collect();
        let total = values
            .iter()
            .enumerate()
            .map(|(c, v)| model.class_weight(c) * norm_sqr(v))
            .fold(BigRational::zero(), |a, b| a + b);
        Ok(CentralFunction { model, class_values: Some(values), alpha, total })
    }

    /// `z = sum_zeta alpha(zeta) chi^zeta` from finitely many coefficients.
    pub fn from_fourier(model: Arc<GroupModel>, coeffs: &BTreeMap<usize, Cx>) -> Result<Self> {
        let k = model.irreps().len();
        if let Some(&z) = coeffs.keys().find(|&&z| z >= k) {
            return domain(format!("Fourier coefficient for irrep index {z} outside the model"));
        }
        let mut alpha = vec![Cx::zero(); k];
        for (&z, a) in coeffs {
            alpha[z] = a.clone();
        }
        let class_values = match model.kind() {
            ModelKind::Finite => Some(
                (0..model.classes().len())
                    .map(|c| {
                        alpha
                            .iter()
                            .enumerate()
                            .fold(Cx::zero(), |acc, (z, a)| acc + a * model.char_value(z, c))
                    })
                    .collect::<Vec<_>>(),
            ),
            ModelKind::U1Truncated => None,
        };
        let total = match &class_values {
            Some(v) => v
                .iter()
                .enumerate()
                .map(|(c, x)| model.class_weight(c) * norm_sqr(x))
                .fold(BigRational::zero(), |a, b| a + b),
            None => u1_constant_term_of_square(&alpha),
        };
        Ok(CentralFunction { model, class_values, alpha, total })
    }

    /// The irreducible character `chi^zeta` as a central function.
    pub fn character(model: Arc<GroupModel>, zeta: usize) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(zeta, Cx::one());
        Self::from_fourier(model, &coeffs)
    }

    pub fn constant(model: Arc<GroupModel>, value: Cx) -> Result<Self> {
        let n = model.classes().len();
        Self::from_class_values(model, vec![value; n])
    }

    pub fn model(&self) -> &Arc<GroupModel> {
        &self.model
    }

    pub fn class_values(&self) -> Option<&[Cx]> {
        self.class_values.as_deref()
    }

    pub fn class_value(&self, c: usize) -> Result<&Cx> {
        self.class_values
            .as_ref()
            .map(|v| &v[c])
            .ok_or_else(|| Error::Unsupported("central function has no class values".into()))
    }

    /// Fourier coefficients `alpha(zeta)` for all irreps, in model order.
    pub fn alphas(&self) -> &[Cx] {
        &self.alpha
    }

    /// `tau(zeta) = alpha(zeta) conj(alpha(zeta))`.
    pub fn tau(&self, zeta: usize) -> BigRational {
        norm_sqr(&self.alpha[zeta])
    }

    /// Irreps with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.alpha.len()).filter(|&z| !self.alpha[z].is_zero()).collect()
    }

    /// `I = <z, z>_G`.
    pub fn total(&self) -> &BigRational {
        &self.total
    }

    /// `t(c) = z(c) conj(z(c))` for every class.
    pub fn t_values(&self) -> Result<Vec<BigRational>> {
        let v = self
            .class_values
            .as_ref()
            .ok_or_else(|| Error::Unsupported("central function has no class values".into()))?;
        Ok(v.iter().map(norm_sqr).collect())
    }

    /// Errors unless `z` vanishes nowhere (needed for Ewens measures).
    pub fn require_nonvanishing(&self) -> Result<()> {
        let v = self
            .class_values
            .as_ref()
            .ok_or_else(|| Error::Unsupported("Ewens measures need class values of z".into()))?;
        if let Some(c) = v.iter().position(|x| x.is_zero()) {
            return domain(format!(
                "z vanishes on class `{}`; Ewens measures need z: G -> C \\ {{0}}",
                self.model.classes()[c].label
            ));
        }
        Ok(())
    }
}

/// Constant Fourier mode of `|z|^2` for `z = sum_l alpha_l e^{i l phi}`, i.e.
/// `(1/2pi) int |z|^2`.
fn u1_constant_term_of_square(alpha: &[Cx]) -> BigRational {
    // (z conj z)_0 = sum_{l - m = 0} alpha_l conj(alpha_m)
    let mut acc = Cx::zero();
    for (l, a) in alpha.iter().enumerate() {
        for (m, b) in alpha.iter().enumerate() {
            if l == m {
                acc += a * b.conj();
            }
        }
    }
    acc.re
}

fn same_model(a: &CentralFunction, b: &CentralFunction) -> Result<()> {
    if Arc::ptr_eq(&a.model, &b.model) || a.model == b.model {
        Ok(())
    } else {
        domain(format!("central functions live on different models (`{}`, `{}`)", a.model.name, b.model.name))
    }
}

/// `<phi, psi>_G = int phi conj(psi) d mu_G`.
pub fn inner_product_g(phi: &CentralFunction, psi: &CentralFunction) -> Result<Cx> {
    same_model(phi, psi)?;
    match (&phi.class_values, &psi.class_values) {
        (Some(a), Some(b)) => Ok(a
            .iter()
            .zip(b)
            .enumerate()
            .fold(Cx::zero(), |acc, (c, (x, y))| acc + Cx::from(phi.model.class_weight(c)) * x * y.conj())),
        _ => Ok(phi
            .alpha
            .iter()
            .zip(&psi.alpha)
            .fold(Cx::zero(), |acc, (x, y)| acc + x * y.conj())),
    }
}

pub fn alpha_of(z: &CentralFunction, zeta: usize) -> Result<Cx> {
    z.alpha
        .get(zeta)
        .cloned()
        .ok_or_else(|| Error::Domain(format!("irrep index {zeta} not in model `{}`", z.model.name)))
}

pub fn total_i(z: &CentralFunction) -> BigRational {
    z.total.clone()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParsevalCheck {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub residual: BigRational,
}

/// `<z, z>_G` against `sum_zeta |alpha(zeta)|^2`.
pub fn parseval_check(z: &CentralFunction) -> ParsevalCheck {
    let lhs = z.total.clone();
    let rhs = z.alpha.iter().map(norm_sqr).fold(BigRational::zero(), |a, b| a + b);
    let residual = &lhs - &rhs;
    ParsevalCheck { lhs, rhs, residual }
}

// ---------------------------------------------------------------------------
// Shipped models

fn elements_from_mul(mul: Vec<Vec<usize>>, class_of: Vec<usize>) -> ElementData {
    let n = mul.len();
    let identity = (0..n).find(|&e| (0..n).all(|a| mul[e][a] == a)).expect("group has identity");
    let inv = (0..n).map(|a| (0..n).find(|&b| mul[a][b] == identity).expect("inverse")).collect();
    ElementData { mul, inv, identity, class_of }
}

/// The trivial group.
pub fn trivial_group() -> GroupModel {
    GroupModel::finite(
        "trivial",
        vec![ConjClass { label: "e".into(), size: 1 }],
        vec![Irrep { label: "triv".into(), dim: 1 }],
        vec![vec![cx_int(1)]],
        0,
        Some(elements_from_mul(vec![vec![0]], vec![0])),
        None,
    )
    .expect("trivial group model")
}

/// `Z/m` with elements `0..m`, classes `"0".."m-1"` and irreps `"chi0"..`.
/// Character values outside `Q(i)` are rounded to `precision` digits.
pub fn cyclic_group(m: usize, precision: u32) -> GroupModel {
    assert!(m >= 1);
    let classes = (0..m).map(|j| ConjClass { label: j.to_string(), size: 1 }).collect();
    let irreps = (0..m).map(|k| Irrep { label: format!("chi{k}"), dim: 1 }).collect();
    let table: Vec<Vec<Cx>> = (0..m)
        .map(|k| (0..m).map(|j| root_of_unity((j * k) as i64, m as u64, precision)).collect())
        .collect();
    let mul = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
    let exact = 4 % m == 0;
    let tolerance = (!exact).then(|| ten_pow_neg(DEFAULT_TOLERANCE_EXP));
    GroupModel::finite(
        format!("Z/{m}"),
        classes,
        irreps,
        table,
        0,
        Some(elements_from_mul(mul, (0..m).collect())),
        tolerance,
    )
    .expect("cyclic group model")
}

/// `Z/2` with classes `e`, `s` and irreps `triv`, `sgn`.
pub fn z2() -> GroupModel {
    let mul = vec![vec![0, 1], vec![1, 0]];
    GroupModel::finite(
        "Z/2",
        vec![ConjClass { label: "e".into(), size: 1 }, ConjClass { label: "s".into(), size: 1 }],
        vec![Irrep { label: "triv".into(), dim: 1 }, Irrep { label: "sgn".into(), dim: 1 }],
        vec![vec![cx_int(1), cx_int(1)], vec![cx_int(1), cx_int(-1)]],
        0,
        Some(elements_from_mul(mul, vec![0, 1])),
        None,
    )
    .expect("Z/2 model")
}

pub fn z3(precision: u32) -> GroupModel {
    cyclic_group(3, precision)
}

/// `Z/2 x Z/2`; element `a` has coordinates `(a & 1, a >> 1)`.
pub fn z2xz2() -> GroupModel {
    let labels = ["e", "a", "b", "ab"];
    let classes = labels.iter().map(|l| ConjClass { label: l.to_string(), size: 1 }).collect();
    let irreps = ["triv", "chi_a", "chi_b", "chi_ab"]
        .iter()
        .map(|l| Irrep { label: l.to_string(), dim: 1 })
        .collect();
    // chi_k(g) = (-1)^{popcount(k & g)}
    let table = (0..4)
        .map(|k: usize| {
            (0..4)
                .map(|g: usize| cx_int(if (k & g).count_ones().is_multiple_of(2) { 1 } else { -1 }))
                .collect()
        })
        .collect();
    let mul = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    GroupModel::finite(
        "Z/2xZ/2",
        classes,
        irreps,
        table,
        0,
        Some(elements_from_mul(mul, vec![0, 1, 2, 3])),
        None,
    )
    .expect("Z/2xZ/2 model")
}

/// `S_3` with classes `e` (1), `t` transpositions (3), `c` 3-cycles (2),
/// irreps `triv`, `sgn`, `std`. Elements are the permutations of three
/// letters in lexicographic order; `mul[a][b]` applies `b` first.
pub fn s3() -> GroupModel {
    let perms = perm::all_permutations(3);
    let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let mul = perms
        .iter()
        .map(|a| perms.iter().map(|b| index(&perm::compose(a, b))).collect())
        .collect();
    let class_of = perms
        .iter()
        .map(|p| match perm::cycle_type(p).parts() {
            [1, 1, 1] => 0,
            [2, 1] => 1,
            _ => 2,
        })
        .collect();
    GroupModel::finite(
        "S3",
        vec![
            ConjClass { label: "e".into(), size: 1 },
            ConjClass { label: "t".into(), size: 3 },
            ConjClass { label: "c".into(), size: 2 },
        ],
        vec![
            Irrep { label: "triv".into(), dim: 1 },
            Irrep { label: "sgn".into(), dim: 1 },
            Irrep { label: "std".into(), dim: 2 },
        ],
        vec![
            vec![cx_int(1), cx_int(1), cx_int(1)],
            vec![cx_int(1), cx_int(-1), cx_int(1)],
            vec![cx_int(2), cx_int(0), cx_int(-1)],
        ],
        0,
        Some(elements_from_mul(mul, class_of)),
        None,
    )
    .expect("S3 model")
}

/// Looks up a shipped model by name: `trivial`, `z2`, `z3`, `z2xz2`, `s3`,
/// `z<m>` for any cyclic group.
pub fn builtin(name: &str, precision: u32) -> Result<GroupModel> {
    match name {
        "trivial" => Ok(trivial_group()),
        "z2" => Ok(z2()),
        "z3" => Ok(z3(precision)),
        "z2xz2" => Ok(z2xz2()),
        "s3" => Ok(s3()),
        _ => match name.strip_prefix('z').and_then(|m| m.parse::<usize>().ok()) {
            Some(m) if m >= 1 => Ok(cyclic_group(m, precision)),
            _ => Err(Error::Input(format!("unknown built-in model `{name}`"))),
        },
    }
}

// ---------------------------------------------------------------------------
// JSON documents

/// A parsed model document. `U(1)` documents also carry the Fourier
/// coefficients of `z`.
#[derive(Clone, Debug)]
pub struct ModelDocument {
    pub model: GroupModel,
    pub u1_coeffs: Option<BTreeMap<usize, Cx>>,
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Input(format!("missing field `{key}`")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Input(format!("`{what}` must be a nonnegative integer")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Input(format!("`{what}` must be a string")))
}

fn parse_char_entry(v: &Value, precision: u32, approximate: &mut bool) -> Result<Cx> {
    if let Some(root) = v.get("root") {
        let pair = root
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Input("`root` must be [k, m]".into()))?;
        let k = pair[0].as_i64().ok_or_else(|| Error::Input("root k must be an integer".into()))?;
        let m = pair[1].as_u64().filter(|&m| m > 0).ok_or_else(|| Error::Input("root m must be positive".into()))?;
        let reduced = m / num_integer::gcd(k.unsigned_abs(), m);
        if 4 % reduced != 0 {
            *approximate = true;
        }
        return Ok(root_of_unity(k, m, precision));
    }
    parse_cx_json(v)
}

/// Parses a model document.
///
/// Finite: `{"kind":"finite","order":N,"classes":[{"label","size"}..],
/// "irreps":[{"label","dim"}..],"char_table":[[entry..]..],
/// "cayley":[[..]..]?, "element_classes":[..]?, "identity_class":0?,
/// "tolerance":"1e-30"?}` where an entry is a number, `"p/q"`, `[re, im]`
/// or `{"root":[k,m]}` for `exp(2 pi i k/m)`.
///
/// `U(1)`: `{"kind":"u1","L":int,"coeffs":{"l":[re,im],..}}`.
pub fn parse_model(v: &Value, precision: u32) -> Result<ModelDocument> {
    let kind = as_str(field(v, "kind")?, "kind")?;
    match kind {
        "u1" => {
            let window = field(v, "L")?
                .as_i64()
                .ok_or_else(|| Error::Input("`L` must be an integer".into()))?;
            let model = GroupModel::u1(window)?;
            let mut coeffs = BTreeMap::new();
            if let Some(obj) = v.get("coeffs") {
                let obj = obj.as_object().ok_or_else(|| Error::Input("`coeffs` must be an object".into()))?;
                for (label, val) in obj {
                    let l: i64 = label
                        .trim()
                        .parse()
                        .map_err(|_| Error::Input(format!("U(1) mode `{label}` is not an integer")))?;
                    if l.abs() > window {
                        return Err(Error::Input(format!("U(1) mode {l} lies outside the window L = {window}")));
                    }
                    coeffs.insert((l + window) as usize, parse_cx_json(val)?);
                }
            }
            Ok(ModelDocument { model, u1_coeffs: Some(coeffs) })
        }
        "finite" => {
            let classes = field(v, "classes")?
                .as_array()
                .ok_or_else(|| Error::Input("`classes` must be an array".into()))?
                .iter()
                .map(|c| {
                    Ok(ConjClass {
                        label: as_str(field(c, "label")?, "classes[].label")?.to_string(),
                        size: as_usize(field(c, "size")?, "classes[].size")?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let irreps = field(v, "irreps")?
                .as_array()
                .ok_or_else(|| Error::Input("`irreps` must be an array".into()))?
                .iter()
                .map(|r| {
                    Ok(Irrep {
                        label: as_str(field(r, "label")?, "irreps[].label")?.to_string(),
                        dim: as_usize(field(r, "dim")?, "irreps[].dim")?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let mut approximate = false;
            let table = field(v, "char_table")?
                .as_array()
                .ok_or_else(|| Error::Input("`char_table` must be an array of rows".into()))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| Error::Input("`char_table` rows must be arrays".into()))?
                        .iter()
                        .map(|e| parse_char_entry(e, precision, &mut approximate))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let order = as_usize(field(v, "order")?, "order")?;
            let class_total: usize = classes.iter().map(|c| c.size).sum();
            if class_total != order {
                return Err(Error::Input(format!("class sizes sum to {class_total} but order = {order}")));
            }
            let identity_class = match v.get("identity_class") {
                Some(x) => as_usize(x, "identity_class")?,
                None => 0,
            };
            let elements = match v.get("cayley") {
                None | Some(Value::Null) => None,
                Some(t) => {
                    let mul = t
                        .as_array()
                        .ok_or_else(|| Error::Input("`cayley` must be an array of rows".into()))?
                        .iter()
                        .map(|row| {
                            row.as_array()
                                .ok_or_else(|| Error::Input("`cayley` rows must be arrays".into()))?
                                .iter()
                                .map(|x| as_usize(x, "cayley entry"))
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let class_of = field(v, "element_classes")
                        .map_err(|_| Error::Input("`cayley` requires `element_classes`".into()))?
                        .as_array()
                        .ok_or_else(|| Error::Input("`element_classes` must be an array".into()))?
                        .iter()
                        .map(|x| as_usize(x, "element_classes entry"))
                        .collect::<Result<Vec<_>>>()?;
                    let n = mul.len();
                    if mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
                        return Err(Error::Input("Cayley table is not a square table of element indices".into()));
                    }
                    let identity = (0..n)
                        .find(|&e| (0..n).all(|a| mul[e][a] == a))
                        .ok_or_else(|| Error::Input("Cayley table has no identity".into()))?;
                    let inv = (0..n)
                        .map(|a| {
                            (0..n)
                                .find(|&b| mul[a][b] == identity)
                                .ok_or_else(|| Error::Input("Cayley table has an element without inverse".into()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Some(ElementData { mul, inv, identity, class_of })
                }
            };
            let tolerance = match v.get("tolerance") {
                Some(t) => Some(match t {
                    Value::String(s) => parse_rational(s)?,
                    other => parse_rational(&other.to_string())?,
                }),
                None if approximate => Some(ten_pow_neg(DEFAULT_TOLERANCE_EXP)),
                None => None,
            };
            let name = v.get("name").and_then(Value::as_str).unwrap_or("model").to_string();
            let model = GroupModel::finite(name, classes, irreps, table, identity_class, elements, tolerance)?;
            Ok(ModelDocument { model, u1_coeffs: None })
        }
        other => Err(Error::Input(format!("unknown model kind `{other}`"))),
    }
}

/// Parses a `z` document against a model:
/// `{"class_values": {"label": value, ..}}` or `{"fourier": {"label": value, ..}}`.
/// Every class must be given a value in the first form.
pub fn parse_central_function(v: &Value, model: Arc<GroupModel>) -> Result<CentralFunction> {
    if let Some(obj) = v.get("class_values") {
        let obj = obj.as_object().ok_or_else(|| Error::Input("`class_values` must be an object".into()))?;
        let mut values = vec![None; model.classes().len()];
        for (label, val) in obj {
            let c = model
                .class_index(label)
                .map_err(|_| Error::Input(format!("z names unknown class `{label}`")))?;
            values[c] = Some(parse_cx_json(val)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(c, x)| x.ok_or_else(|| Error::Input(format!("z has no value on class `{}`", model.classes()[c].label))))
            .collect::<Result<Vec<_>>>()?;
        return CentralFunction::from_class_values(model, values);
    }
    if let Some(obj) = v.get("fourier") {
        let obj = obj.as_object().ok_or_else(|| Error::Input("`fourier` must be an object".into()))?;
        let mut coeffs = BTreeMap::new();
        for (label, val) in obj {
            let z = model
                .irrep_index(label)
                .map_err(|_| Error::Input(format!("z names unknown irrep `{label}`")))?;
            coeffs.insert(z, parse_cx_json(val)?);
        }
        return CentralFunction::from_fourier(model, &coeffs);
    }
    Err(Error::Input("z document needs `class_values` or `fourier`".into()))
}

/// Serializes a model back into the document format (exact entries as `p/q`).
pub fn model_to_json(model: &GroupModel) -> Value {
    use crate::scalar::cx_to_json;
    match model.kind() {
        ModelKind::U1Truncated => serde_json::json!({ "kind": "u1", "L": model.window() }),
        ModelKind::Finite => {
            let mut doc = serde_json::json!({
                "kind": "finite",
                "name": model.name(),
                "order": model.order(),
                "classes": model.classes().iter().map(|c| serde_json::json!({"label": c.label, "size": c.size})).collect::<Vec<_>>(),
                "irreps": model.irreps().iter().map(|r| serde_json::json!({"label": r.label, "dim": r.dim})).collect::<Vec<_>>(),
                "char_table": model.char_table().iter().map(|row| row.iter().map(cx_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "identity_class": model.identity_class(),
            });
            if let Some(el) = &model.elements {
                doc["cayley"] = serde_json::json!(el.mul);
                doc["element_classes"] = serde_json::json!(el.class_of);
            }
            if let Some(t) = model.tolerance() {
                doc["tolerance"] = Value::String(crate::scalar::fmt_rat(t));
            }
            doc
        }
    }
}

/// `z(c) = value` for class labels given as `(label, value)` pairs, with
/// integer values. Convenience for tests and examples.
pub fn z_from_ints(model: &Arc<GroupModel>, values: &[i64]) -> Result<CentralFunction> {
    CentralFunction::from_class_values(model.clone(), values.iter().map(|&v| cx_int(v)).collect())
}

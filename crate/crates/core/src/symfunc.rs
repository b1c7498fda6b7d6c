//! Power sums and Schur functions evaluated at concrete values of the power
//! sums, as in the per-irrep algebras used for the wreath-product z-measures.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::partitions::{content, enumerate_partitions, hook, mn_character, z_rho, YoungDiagram};
use crate::scalar::{cx_int, cx_real, Cx};
use crate::spectral_group::{alpha_of, CentralFunction};
use crate::zmeasure::DiagramFamily;

/// Largest `|lambda|` accepted by [`schur_eval`].
pub const DEFAULT_SCHUR_BOUND: usize = 12;

/// What a [`PowerSumAssignment`] returns for degrees it was not given.
#[derive(Clone, Debug, PartialEq)]
pub enum DefaultRule {
    /// Asking for an unspecified degree is an error.
    Error,
    /// Every unspecified degree takes this value.
    Constant(Cx),
}

/// Values `p_1, p_2, ..` of the power sums.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSumAssignment {
    values: BTreeMap<usize, Cx>,
    default: DefaultRule,
}

impl PowerSumAssignment {
    /// Only the listed degrees are defined.
    pub fn new(values: BTreeMap<usize, Cx>) -> Self {
        PowerSumAssignment { values, default: DefaultRule::Error }
    }

    /// `p_1, .., p_k` from a slice.
    pub fn from_slice(values: &[Cx]) -> Self {
        Self::new(values.iter().cloned().enumerate().map(|(i, v)| (i + 1, v)).collect())
    }

    /// `p_r = value` for every `r`.
    pub fn constant(value: Cx) -> Self {
        PowerSumAssignment { values: BTreeMap::new(), default: DefaultRule::Constant(value) }
    }

    pub fn with_default(mut self, default: DefaultRule) -> Self {
        self.default = default;
        self
    }

    pub fn get(&self, r: usize) -> Result<Cx> {
        if r == 0 {
            return domain("power sums start at degree 1");
        }
        match (self.values.get(&r), &self.default) {
            (Some(v), _) => Ok(v.clone()),
            (None, DefaultRule::Constant(v)) => Ok(v.clone()),
            (None, DefaultRule::Error) => domain(format!("power sum p_{r} is not specified")),
        }
    }

    /// `p_r -> t^r p_r` for `r <= max_degree`; the result has no default.
    pub fn scaled(&self, t: &Cx, max_degree: usize) -> Result<Self> {
        let mut out = BTreeMap::new();
        let mut tr = Cx::one();
        for r in 1..=max_degree {
            tr *= t;
            out.insert(r, &tr * self.get(r)?);
        }
        Ok(Self::new(out))
    }
}

/// `p_rho = prod_i p_{rho_i}`; `p_empty = 1`.
pub fn newton_product(rho: &YoungDiagram, a: &PowerSumAssignment) -> Result<Cx> {
    rho.parts().iter().try_fold(Cx::one(), |acc, &r| Ok(acc * a.get(r)?))
}

/// `s_lambda = sum_nu chi^lambda_nu p_nu / z_nu`, with `|lambda| <= DEFAULT_SCHUR_BOUND`.
pub fn schur_eval(lambda: &YoungDiagram, a: &PowerSumAssignment) -> Result<Cx> {
    schur_eval_bounded(lambda, a, DEFAULT_SCHUR_BOUND)
}

pub fn schur_eval_bounded(lambda: &YoungDiagram, a: &PowerSumAssignment, bound: usize) -> Result<Cx> {
    let n = lambda.size();
    if n > bound {
        return Err(Error::Resource(format!("Schur evaluation at |lambda| = {n} exceeds the bound {bound}")));
    }
    let mut acc = Cx::zero();
    for nu in enumerate_partitions(n) {
        let chi = mn_character(lambda, &nu)?;
        if chi == 0 {
            continue;
        }
        let weight = num_rational::BigRational::new(chi.into(), z_rho(&nu));
        acc += cx_real(weight) * newton_product(&nu, a)?;
    }
    Ok(acc)
}

/// `prod_box (alpha + c(box)) / h(box)`: the Schur function at `p_r = alpha` for all `r`.
pub fn principal_specialization(lambda: &YoungDiagram, alpha: &Cx) -> Cx {
    let mut num = Cx::one();
    let mut den: i64 = 1;
    for b in lambda.boxes() {
        num *= alpha + cx_int(content(b));
        den *= hook(lambda, b).expect("box of lambda") as i64;
    }
    num / cx_int(den)
}

/// `a(Lambda) = prod_zeta prod_box (alpha(zeta) + c(box)) / h(box)`.
pub fn a_lambda_product(family: &DiagramFamily, z: &CentralFunction) -> Result<Cx> {
    family
        .iter()
        .try_fold(Cx::one(), |acc, (&zeta, lambda)| Ok(acc * principal_specialization(lambda, &alpha_of(z, zeta)?)))
}

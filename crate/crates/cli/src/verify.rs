//! `zmw verify <suite>`: one record per checked identity, then a summary.
//! Every record has the columns `check, k, item, lhs, rhs, ok`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use zmw_core::finite_characters::{character_table_bounded, zmeasure_from_characters};
use zmw_core::scalar::{cx_int, cx_real, fmt_cx, Cx};
use zmw_core::spectral_group::{parseval_check, CentralFunction, GroupModel};
use zmw_core::wreath::{all_elements, ewens_mass, fiber, project, total_mass, transition_probability};
use zmw_core::zmeasure::{
    box_product_identity, dim_wreath, enumerate_families, family_zmeasure, harmonicity_residual, irrep_labels,
    zmeasure_table,
};
use zmw_core::Result;

use crate::commands::show;
use crate::load::{load_model, load_z};
use crate::output::rec;
use crate::{Ctx, ModelArgs, Suite};

struct Checker<'a> {
    ctx: &'a mut Ctx,
    total: usize,
    failed: usize,
}

impl Checker<'_> {
    fn emit(&mut self, check: &str, k: Option<usize>, item: String, lhs: String, rhs: String, ok: bool) -> Result<()> {
        self.total += 1;
        if !ok {
            self.failed += 1;
        }
        self.ctx.out.record(rec([
            ("check", json!(check)),
            ("k", k.map_or(Value::Null, |k| json!(k))),
            ("item", json!(item)),
            ("lhs", json!(lhs)),
            ("rhs", json!(rhs)),
            ("ok", json!(ok)),
        ]))?;
        Ok(())
    }

    fn real(&mut self, model: &GroupModel, check: &str, k: usize, item: String, lhs: &BigRational, rhs: &BigRational) -> Result<()> {
        let p = self.ctx.precision;
        let ok = model.approx_eq_real(lhs, rhs);
        self.emit(check, Some(k), item, show(lhs, model, p), show(rhs, model, p), ok)
    }

    fn complex(&mut self, model: &GroupModel, check: &str, k: usize, item: String, lhs: &Cx, rhs: &Cx) -> Result<()> {
        let ok = model.approx_eq(lhs, rhs);
        self.emit(check, Some(k), item, fmt_cx(lhs), fmt_cx(rhs), ok)
    }

    /// Returns false if the model's own character table is inconsistent.
    fn orthogonality(&mut self, model: &GroupModel) -> Result<bool> {
        let failures = model.orthogonality_failures();
        for msg in &failures {
            self.emit("orthogonality", None, msg.clone(), String::new(), String::new(), false)?;
        }
        if failures.is_empty() {
            self.emit("orthogonality", None, model.name().to_string(), "ok".into(), "ok".into(), true)?;
        }
        Ok(failures.is_empty())
    }

    fn finish(self) -> Result<u8> {
        let passed = self.total - self.failed;
        let ok = self.failed == 0;
        self.ctx.out.record(rec([
            ("check", json!("summary")),
            ("k", Value::Null),
            ("item", json!(format!("{passed} of {} passed", self.total))),
            ("lhs", json!(passed.to_string())),
            ("rhs", json!(self.total.to_string())),
            ("ok", json!(ok)),
        ]))?;
        Ok(if ok { 0 } else { 1 })
    }
}

fn z_required(z: Option<CentralFunction>) -> Result<CentralFunction> {
    z.ok_or_else(|| zmw_core::Error::Input("--z is required for this suite".into()))
}

pub fn run(ctx: &mut Ctx, suite: Suite, m: &ModelArgs, n: usize) -> Result<u8> {
    let loaded = load_model(&m.model, ctx.precision)?;
    let model = loaded.model.clone();
    // characters only need the model; everything else needs z
    let z = match (suite, m.z.as_deref(), &loaded.u1_coeffs) {
        (Suite::Characters, None, None) => None,
        (_, spec, _) => Some(load_z(&loaded, spec)?),
    };
    let bound = ctx.bound;
    let mut c = Checker { ctx, total: 0, failed: 0 };
    let one = BigRational::one();
    let zero = BigRational::zero();
    match suite {
        Suite::Normalization => {
            let z = z_required(z)?;
            for k in 0..=n {
                let sum = zmeasure_table(&z, k)?.into_iter().fold(BigRational::zero(), |a, (_, w)| a + w);
                c.real(&model, "normalization", k, "sum of M".into(), &sum, &one)?;
            }
        }
        Suite::Harmonicity => {
            let z = z_required(z)?;
            let labels = irrep_labels(&model);
            for k in 0..n {
                let mut worst = (BigRational::zero(), String::new());
                for f in enumerate_families(k, &model) {
                    let r = harmonicity_residual(&z, &f)?.abs();
                    if r > worst.0 || worst.1.is_empty() {
                        worst = (r, f.to_json(&labels).to_string());
                    }
                }
                c.real(&model, "harmonicity", k, format!("max residual at {}", worst.1), &worst.0, &zero)?;
            }
        }
        Suite::Ewens => {
            let z = z_required(z)?;
            for k in 0..=n {
                c.real(&model, "ewens", k, "total mass".into(), &total_mass(&z, k, bound)?, &one)?;
            }
        }
        Suite::Projection => {
            let z = z_required(z)?;
            for k in 0..n {
                let mut bad_projection = 0usize;
                let mut worst_push = BigRational::zero();
                let mut worst_step = BigRational::zero();
                for x in all_elements(&model, k, bound)? {
                    let ys = fiber(&model, &x)?;
                    let mut push = BigRational::zero();
                    let mut step = BigRational::zero();
                    for y in &ys {
                        if project(&model, y)? != x {
                            bad_projection += 1;
                        }
                        push += ewens_mass(&z, y)?;
                        step += transition_probability(&z, &x, y)?;
                    }
                    worst_push = worst_push.max((push - ewens_mass(&z, &x)?).abs());
                    worst_step = worst_step.max((step - &one).abs());
                }
                c.emit(
                    "projection",
                    Some(k),
                    "fiber elements not projecting back".into(),
                    bad_projection.to_string(),
                    "0".into(),
                    bad_projection == 0,
                )?;
                c.real(&model, "pushforward", k, "max |sum over fiber - mass|".into(), &worst_push, &zero)?;
                c.real(&model, "transition", k, "max |sum of step probabilities - 1|".into(), &worst_step, &zero)?;
            }
        }
        Suite::Characters => {
            if c.orthogonality(&model)? {
                let labels = irrep_labels(&model);
                for k in 1..=n {
                    let table = character_table_bounded(&model, k, bound)?;
                    for (i, (f, chi)) in table.iter().enumerate() {
                        let name = f.to_json(&labels).to_string();
                        let dim = Cx::from(BigRational::from_integer(dim_wreath(&model, f)?));
                        c.complex(&model, "degree", k, name.clone(), &chi.degree_value(), &dim)?;
                        c.complex(&model, "norm", k, name.clone(), &chi.inner_product(chi)?, &cx_int(1))?;
                        let mut worst = (Cx::zero(), String::new());
                        for (g, psi) in table.iter().skip(i + 1) {
                            let ip = chi.inner_product(psi)?;
                            if worst.1.is_empty() || !model.approx_eq(&ip, &Cx::zero()) {
                                worst = (ip, g.to_json(&labels).to_string());
                            }
                        }
                        if !worst.1.is_empty() {
                            let item = format!("{name} against {}", worst.1);
                            c.complex(&model, "cross", k, item, &worst.0, &Cx::zero())?;
                        }
                        if let Some(z) = &z {
                            let lhs = zmeasure_from_characters(z, f)?;
                            c.real(&model, "a_squared", k, name, &lhs, &family_zmeasure(z, f)?)?;
                        }
                    }
                }
            }
        }
        Suite::Parseval => {
            let z = z_required(z)?;
            c.orthogonality(&model)?;
            let p = parseval_check(&z);
            c.complex(&model, "parseval", 0, "<z,z> against sum |alpha|^2".into(), &cx_real(p.lhs), &cx_real(p.rhs))?;
        }
        Suite::U1 => {
            let z = z_required(z)?;
            for k in 0..=n {
                let (lhs, rhs) = box_product_identity(&z, k);
                c.real(&model, "box_product", k, "sum over families".into(), &lhs, &rhs)?;
            }
        }
    }
    c.finish()
}

use std::collections::BTreeMap;
use std::path::Path;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use zmw_core::finite_characters::{character_table_bounded, class_weight, wreath_classes};
use zmw_core::scalar::{cx_to_json, fmt_decimal, fmt_rat};
use zmw_core::spectral_group::GroupModel;
use zmw_core::thoma::{kernel, mix_spectral, ComponentSampler, DirichletParams, PointMass, ThomaPoint};
use zmw_core::wreath::{cycle_type, total_mass, EwensSampler};
use zmw_core::zmeasure::{self, dim_wreath, irrep_labels, phi_z, FamilySampler};
use zmw_core::par::{self, ChaCha8Rng};
use zmw_core::{DiagramFamily, Error, Result};

use crate::load::{load_model, load_z, read_json};
use crate::output::{rec, Format};
use crate::{Ctx, ModelArgs, Target};

/// Draws per random stream.
pub const SAMPLE_CHUNK: u64 = 4096;
/// Streams generated between writes.
const CHUNKS_PER_BATCH: u64 = 64;

type Draw = Box<dyn Fn(&mut ChaCha8Rng) -> Result<Value> + Sync + Send>;

pub fn class_labels(model: &GroupModel) -> Vec<String> {
    model.classes().iter().map(|c| c.label.clone()).collect()
}

/// `p/q` for exact models, a decimal otherwise.
pub fn show(r: &BigRational, model: &GroupModel, precision: u32) -> String {
    if model.is_exact() {
        fmt_rat(r)
    } else {
        fmt_decimal(r, precision)
    }
}

pub fn zmeasure_table(ctx: &mut Ctx, m: &ModelArgs, n: usize) -> Result<u8> {
    let loaded = load_model(&m.model, ctx.precision)?;
    let z = load_z(&loaded, m.z.as_deref())?;
    let model = z.model().clone();
    let labels = irrep_labels(&model);
    let rows = zmeasure::zmeasure_table(&z, n)?;
    let mut sum = BigRational::zero();
    for (family, mass) in &rows {
        sum += mass;
        ctx.out.record(rec([
            ("family", family.to_json(&labels)),
            ("M", Value::String(show(mass, &model, ctx.precision))),
            ("DIM", Value::String(dim_wreath(&model, family)?.to_string())),
            ("phi", Value::String(show(&phi_z(&z, family)?, &model, ctx.precision))),
        ]))?;
    }
    ctx.out.checksum(show(&sum, &model, ctx.precision))?;
    Ok(0)
}

pub fn ewens_sum(ctx: &mut Ctx, m: &ModelArgs, n: usize) -> Result<u8> {
    let loaded = load_model(&m.model, ctx.precision)?;
    let z = load_z(&loaded, m.z.as_deref())?;
    let mass = total_mass(&z, n, ctx.bound)?;
    ctx.out.record(rec([
        ("model", json!(z.model().name())),
        ("n", json!(n)),
        ("total_mass", Value::String(show(&mass, z.model(), ctx.precision))),
    ]))?;
    Ok(0)
}

fn family_json(f: &DiagramFamily, labels: &[String]) -> Value {
    f.to_json(labels)
}

pub fn sample(ctx: &mut Ctx, target: Target, m: &ModelArgs, n: usize, count: u64, seed: u64) -> Result<u8> {
    let loaded = load_model(&m.model, ctx.precision)?;
    let z = load_z(&loaded, m.z.as_deref())?;
    let model = z.model().clone();
    let irreps = irrep_labels(&model);
    let classes = class_labels(&model);
    let name = match target {
        Target::Ewens => "ewens",
        Target::Family => "family",
        Target::Thoma => "thoma",
    };
    // build the sampler before writing anything, so bad input yields no stream
    let draw: Draw = match target {
        Target::Ewens => {
            let s = EwensSampler::new(&z)?;
            let model = model.clone();
            Box::new(move |rng| {
                let x = s.sample(n, rng);
                let t = cycle_type(&model, &x)?;
                Ok(json!({ "colors": x.colors, "perm": x.to_json()["perm"], "type": t.to_json(&classes) }))
            })
        }
        Target::Family => {
            let s = FamilySampler::new(&z, n)?;
            Box::new(move |rng| Ok(json!({ "family": family_json(&s.sample(rng), &irreps) })))
        }
        Target::Thoma => {
            let params = DirichletParams::from_z(&z)?;
            let samplers: BTreeMap<usize, Box<dyn ComponentSampler>> = params
                .tau()
                .keys()
                .map(|&k| (k, Box::new(PointMass::unit_alpha()) as Box<dyn ComponentSampler>))
                .collect();
            Box::new(move |rng| Ok(json!({ "omega": mix_spectral(&params, &samplers, rng)?.to_json(&irreps)["blocks"] })))
        }
    };
    ctx.out.header(rec([
        ("generator", json!("ChaCha8Rng")),
        ("seed", json!(seed)),
        ("chunk", json!(SAMPLE_CHUNK)),
        ("target", json!(name)),
        ("model", json!(model.name())),
        ("n", json!(n)),
        ("count", json!(count)),
    ]))?;
    let chunks = count.div_ceil(SAMPLE_CHUNK);
    let mut first = 0;
    while first < chunks {
        let last = (first + CHUNKS_PER_BATCH).min(chunks);
        let batch = par::sample_chunk_range(seed, count, SAMPLE_CHUNK, first..last, |rng| draw(rng));
        for v in batch {
            let Value::Object(obj) = v? else { unreachable!("draws are objects") };
            ctx.out.record(obj.into_iter().collect())?;
        }
        first = last;
    }
    Ok(0)
}

pub fn characters_table(ctx: &mut Ctx, model_spec: &str, n: usize) -> Result<u8> {
    let loaded = load_model(model_spec, ctx.precision)?;
    let model = loaded.model;
    let classes = class_labels(&model);
    let irreps = irrep_labels(&model);
    let table = character_table_bounded(&model, n, ctx.bound)?;
    let types = wreath_classes(&model, n);
    let class_key = |t: &DiagramFamily| t.to_json(&classes).to_string();
    match ctx.format {
        Format::Json => {
            let doc = json!({
                "model": model.name(),
                "n": n,
                "classes": types.iter().map(|t| json!({
                    "type": t.to_json(&classes),
                    "weight": fmt_rat(&class_weight(&model, t)),
                })).collect::<Vec<_>>(),
                "characters": table.iter().map(|(f, chi)| Ok(json!({
                    "family": f.to_json(&irreps),
                    "values": types.iter().map(|t| Ok(cx_to_json(chi.value(t)?))).collect::<Result<Vec<_>>>()?,
                }))).collect::<Result<Vec<_>>>()?,
            });
            let Value::Object(obj) = doc else { unreachable!() };
            ctx.out.record(obj.into_iter().collect())?;
        }
        Format::Csv => {
            for (f, chi) in &table {
                let mut r = vec![("family".to_string(), f.to_json(&irreps))];
                for t in &types {
                    r.push((class_key(t), Value::String(zmw_core::scalar::fmt_cx(chi.value(t)?))));
                }
                ctx.out.record(r)?;
            }
        }
    }
    Ok(0)
}

pub fn thoma_kernel(ctx: &mut Ctx, model_spec: &str, family: &Path, omega: &Path) -> Result<u8> {
    let loaded = load_model(model_spec, ctx.precision)?;
    let model = loaded.model;
    let labels = irrep_labels(&model);
    let family = DiagramFamily::from_json(&read_json(family)?, &labels)?;
    let omega = ThomaPoint::from_json(&read_json(omega)?, &model)?;
    let k: BigRational = kernel(&model, &family, &omega).map_err(|e| match e {
        Error::Domain(m) => Error::Input(m),
        other => other,
    })?;
    ctx.out.record(rec([
        ("family", family.to_json(&labels)),
        ("kernel", Value::String(fmt_decimal(&k, ctx.precision))),
        ("exact", Value::String(fmt_rat(&k))),
    ]))?;
    Ok(0)
}

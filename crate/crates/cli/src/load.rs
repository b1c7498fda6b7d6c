//! Model and `z` inputs: JSON files, or built-in names and inline values.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::Value;
use zmw_core::scalar::{cx_real, parse_rational, Cx};
use zmw_core::spectral_group::{builtin, parse_central_function, parse_model, CentralFunction, GroupModel};
use zmw_core::{Error, Result};

pub struct Loaded {
    pub model: Arc<GroupModel>,
    pub u1_coeffs: Option<BTreeMap<usize, Cx>>,
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// A path to a model document, or a built-in name such as `z2` or `s3`.
pub fn load_model(spec: &str, precision: u32) -> Result<Loaded> {
    let path = Path::new(spec);
    if path.is_file() {
        let doc = parse_model(&read_json(path)?, precision)?;
        return Ok(Loaded { model: Arc::new(doc.model), u1_coeffs: doc.u1_coeffs });
    }
    let model = builtin(spec, precision)
        .map_err(|_| Error::Input(format!("`{spec}` is neither a readable file nor a built-in model")))?;
    Ok(Loaded { model: Arc::new(model), u1_coeffs: None })
}

/// A path to a `z` document, or comma-separated exact class values in class order.
pub fn load_z(loaded: &Loaded, spec: Option<&str>) -> Result<CentralFunction> {
    let model = loaded.model.clone();
    match spec {
        Some(s) if Path::new(s).is_file() => parse_central_function(&read_json(Path::new(s))?, model),
        Some(s) => {
            let values = s
                .split(',')
                .map(|v| parse_rational(v.trim()).map(cx_real))
                .collect::<Result<Vec<_>>>()?;
            if values.len() != model.classes().len() {
                return Err(Error::Input(format!(
                    "--z gives {} values but `{}` has {} classes",
                    values.len(),
                    model.name(),
                    model.classes().len()
                )));
            }
            CentralFunction::from_class_values(model, values)
        }
        None => match &loaded.u1_coeffs {
            Some(c) => CentralFunction::from_fourier(model, c),
            None => Err(Error::Input("--z is required for this command".into())),
        },
    }
}

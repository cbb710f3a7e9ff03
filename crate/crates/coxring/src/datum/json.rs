//! Datum file I/O. The schema is exact: unknown keys are rejected at every
//! level, integers are arbitrary precision, and errors carry the path of the
//! offending field. `save` emits a canonical form (fixed key order, fixed
//! indentation) so identical data always produce identical bytes.

use std::fs;
use std::path::Path;

use serde_json::{Map, Number, Value};
use thiserror::Error;

use super::{ClassDatum, Color, DimMode, SphericalDatum, StructError};
use crate::intlin::Int;
use crate::rootsys::{build_root_system, Weight};

#[derive(Debug, Error)]
pub enum DatumError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("inconsistent datum: {0}")]
    Struct(#[from] StructError),
}

fn schema(path: &str, message: impl Into<String>) -> DatumError {
    DatumError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

pub fn load(path: &Path) -> Result<SphericalDatum, DatumError> {
    let text = fs::read_to_string(path).map_err(|source| DatumError::Read {
        path: path.display().to_string(),
        source,
    })?;
    from_str(&text)
}

pub fn save(d: &SphericalDatum, path: &Path) -> Result<(), DatumError> {
    fs::write(path, to_canonical_string(d)).map_err(|source| DatumError::Write {
        path: path.display().to_string(),
        source,
    })
}

pub fn from_str(text: &str) -> Result<SphericalDatum, DatumError> {
    let value: Value = serde_json::from_str(text)?;
    parse_datum(&value)
}

fn as_object<'v>(v: &'v Value, path: &str) -> Result<&'v Map<String, Value>, DatumError> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn as_array<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>, DatumError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn as_string(v: &Value, path: &str) -> Result<String, DatumError> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| schema(path, "expected a string"))
}

fn as_int(v: &Value, path: &str) -> Result<Int, DatumError> {
    let Value::Number(n) = v else {
        return Err(schema(path, "expected an integer"));
    };
    let text = n.to_string();
    if text.contains(['.', 'e', 'E']) {
        return Err(schema(path, format!("expected an integer, got {text}")));
    }
    text.parse::<Int>()
        .map_err(|_| schema(path, format!("cannot parse integer {text}")))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, DatumError> {
    let n = as_int(v, path)?;
    let (sign, digits) = n.to_u64_digits();
    if sign == num_bigint::Sign::Minus || digits.len() > 1 {
        return Err(schema(path, "expected a small non-negative integer"));
    }
    Ok(digits.first().copied().unwrap_or(0) as usize)
}

fn as_int_vec(v: &Value, path: &str) -> Result<Vec<Int>, DatumError> {
    let arr = as_array(v, path)?;
    arr.iter()
        .enumerate()
        .map(|(k, x)| as_int(x, &format!("{path}[{k}]")))
        .collect()
}

fn as_int_matrix(v: &Value, path: &str) -> Result<Vec<Vec<Int>>, DatumError> {
    let arr = as_array(v, path)?;
    arr.iter()
        .enumerate()
        .map(|(k, x)| as_int_vec(x, &format!("{path}[{k}]")))
        .collect()
}

fn require<'v>(
    obj: &'v Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<&'v Value, DatumError> {
    obj.get(key)
        .ok_or_else(|| schema(path, format!("missing field {key:?}")))
}

fn reject_unknown(
    obj: &Map<String, Value>,
    allowed: &[&str],
    path: &str,
) -> Result<(), DatumError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(schema(path, format!("unknown field {key:?}")));
        }
    }
    Ok(())
}

fn parse_datum(value: &Value) -> Result<SphericalDatum, DatumError> {
    let obj = as_object(value, "$")?;
    reject_unknown(
        obj,
        &[
            "name",
            "ambient",
            "rank",
            "spherical_roots",
            "colors",
            "module_dim_mode",
            "boundary_names",
            "class_datum",
        ],
        "$",
    )?;

    let name = as_string(require(obj, "name", "$")?, "name")?;
    let ambient_spec = as_string(require(obj, "ambient", "$")?, "ambient")?;
    let ambient = build_root_system(&ambient_spec)
        .map_err(|e| schema("ambient", e.to_string()))?;
    let rank = as_usize(require(obj, "rank", "$")?, "rank")?;

    let roots_value = require(obj, "spherical_roots", "$")?;
    let spherical_roots: Vec<Weight> = as_int_matrix(roots_value, "spherical_roots")?
        .into_iter()
        .map(Weight)
        .collect();

    let colors_value = as_array(require(obj, "colors", "$")?, "colors")?;
    let mut colors = Vec::with_capacity(colors_value.len());
    for (k, cv) in colors_value.iter().enumerate() {
        let base = format!("colors[{k}]");
        let cobj = as_object(cv, &base)?;
        // name the color in diagnostics as soon as it is known
        let label = match cobj.get("name").and_then(Value::as_str) {
            Some(n) => format!("{base} ({n:?})"),
            None => base.clone(),
        };
        reject_unknown(cobj, &["name", "omega", "pairing"], &label)?;
        let cname = as_string(require(cobj, "name", &label)?, &format!("{label}.name"))?;
        let omega = Weight(as_int_vec(
            require(cobj, "omega", &label)?,
            &format!("{label}.omega"),
        )?);
        let pairing = as_int_vec(
            require(cobj, "pairing", &label)?,
            &format!("{label}.pairing"),
        )?;
        colors.push(Color {
            name: cname,
            omega,
            pairing,
        });
    }

    let mode_text = as_string(
        require(obj, "module_dim_mode", "$")?,
        "module_dim_mode",
    )?;
    let module_dim_mode = match mode_text.as_str() {
        "simple" => DimMode::Simple,
        "squared" => DimMode::Squared,
        other => {
            return Err(schema(
                "module_dim_mode",
                format!("expected \"simple\" or \"squared\", got {other:?}"),
            ))
        }
    };

    let boundary_value = as_array(require(obj, "boundary_names", "$")?, "boundary_names")?;
    let boundary_names: Vec<String> = boundary_value
        .iter()
        .enumerate()
        .map(|(k, v)| as_string(v, &format!("boundary_names[{k}]")))
        .collect::<Result<_, _>>()?;

    let class_datum = match obj.get("class_datum") {
        None | Some(Value::Null) => None,
        Some(cv) => Some(parse_class_datum(cv)?),
    };

    Ok(SphericalDatum::new(
        name,
        ambient,
        rank,
        spherical_roots,
        colors,
        module_dim_mode,
        boundary_names,
        class_datum,
    )?)
}

fn parse_class_datum(value: &Value) -> Result<ClassDatum, DatumError> {
    let path = "class_datum";
    let obj = as_object(value, path)?;
    reject_unknown(
        obj,
        &[
            "lattice_rank",
            "boundary_valuations",
            "color_valuations",
            "central_restriction",
        ],
        path,
    )?;
    Ok(ClassDatum {
        lattice_rank: as_usize(
            require(obj, "lattice_rank", path)?,
            "class_datum.lattice_rank",
        )?,
        boundary_valuations: as_int_matrix(
            require(obj, "boundary_valuations", path)?,
            "class_datum.boundary_valuations",
        )?,
        color_valuations: as_int_matrix(
            require(obj, "color_valuations", path)?,
            "class_datum.color_valuations",
        )?,
        central_restriction: as_int_matrix(
            require(obj, "central_restriction", path)?,
            "class_datum.central_restriction",
        )?,
    })
}

fn int_value(n: &Int) -> Value {
    Value::Number(
        n.to_string()
            .parse::<Number>()
            .expect("integer text is a valid JSON number"),
    )
}

fn int_vec_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

fn int_matrix_value(m: &[Vec<Int>]) -> Value {
    Value::Array(m.iter().map(|r| int_vec_value(r)).collect())
}

pub fn to_value(d: &SphericalDatum) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), Value::String(d.name.clone()));
    obj.insert("ambient".into(), Value::String(d.ambient.spec().to_string()));
    obj.insert("rank".into(), Value::Number(Number::from(d.rank)));
    obj.insert(
        "spherical_roots".into(),
        Value::Array(d.spherical_roots.iter().map(|g| int_vec_value(&g.0)).collect()),
    );
    obj.insert(
        "colors".into(),
        Value::Array(
            d.colors
                .iter()
                .map(|c| {
                    let mut co = Map::new();
                    co.insert("name".into(), Value::String(c.name.clone()));
                    co.insert("omega".into(), int_vec_value(&c.omega.0));
                    co.insert("pairing".into(), int_vec_value(&c.pairing));
                    Value::Object(co)
                })
                .collect(),
        ),
    );
    obj.insert(
        "module_dim_mode".into(),
        Value::String(d.module_dim_mode.as_str().to_string()),
    );
    obj.insert(
        "boundary_names".into(),
        Value::Array(
            d.boundary_names
                .iter()
                .map(|n| Value::String(n.clone()))
                .collect(),
        ),
    );
    if let Some(cd) = &d.class_datum {
        let mut co = Map::new();
        co.insert(
            "lattice_rank".into(),
            Value::Number(Number::from(cd.lattice_rank)),
        );
        co.insert(
            "boundary_valuations".into(),
            int_matrix_value(&cd.boundary_valuations),
        );
        co.insert(
            "color_valuations".into(),
            int_matrix_value(&cd.color_valuations),
        );
        co.insert(
            "central_restriction".into(),
            int_matrix_value(&cd.central_restriction),
        );
        obj.insert("class_datum".into(), Value::Object(co));
    }
    Value::Object(obj)
}

pub fn to_canonical_string(d: &SphericalDatum) -> String {
    let mut text = serde_json::to_string_pretty(&to_value(d)).expect("serialization is total");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::group_compactification;

    #[test]
    fn round_trip_group_data() {
        for spec in ["G2", "A1", "B2xG2", "A1xA1xA2"] {
            let d = group_compactification(spec).unwrap();
            let text = to_canonical_string(&d);
            let back = from_str(&text).unwrap();
            assert_eq!(d, back, "{spec}");
        }
    }

    #[test]
    fn round_trip_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g2.json");
        let d = group_compactification("G2").unwrap();
        d.save(&path).unwrap();
        assert_eq!(SphericalDatum::load(&path).unwrap(), d);
    }

    #[test]
    fn missing_pairing_names_the_color() {
        let text = r#"{
          "name": "broken", "ambient": "A1", "rank": 1,
          "spherical_roots": [[2]],
          "colors": [{"name": "D1", "omega": [1]}],
          "module_dim_mode": "squared",
          "boundary_names": ["X1"]
        }"#;
        let err = from_str(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("D1"), "{msg}");
        assert!(msg.contains("pairing"), "{msg}");
    }

    #[test]
    fn non_integer_pairing_entry_is_a_type_error() {
        let text = r#"{
          "name": "broken", "ambient": "A1", "rank": 1,
          "spherical_roots": [[2]],
          "colors": [{"name": "D1", "omega": [1], "pairing": [1.5]}],
          "module_dim_mode": "squared",
          "boundary_names": ["X1"]
        }"#;
        let err = from_str(text).unwrap_err();
        assert!(err.to_string().contains("expected an integer"), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let d = group_compactification("A1").unwrap();
        let mut v = to_value(&d);
        v.as_object_mut()
            .unwrap()
            .insert("extra".into(), Value::Null);
        let err = parse_datum(&v).unwrap_err();
        assert!(err.to_string().contains("unknown field"), "{err}");
    }

    #[test]
    fn huge_integers_survive_the_round_trip() {
        let mut d = group_compactification("A1").unwrap();
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        d.colors[0].omega = Weight(vec![big.clone()]);
        let back = from_str(&to_canonical_string(&d)).unwrap();
        assert_eq!(back.colors[0].omega.0[0], big);
    }

    #[test]
    fn canonical_bytes_are_stable() {
        let d = group_compactification("B2").unwrap();
        assert_eq!(to_canonical_string(&d), to_canonical_string(&d));
    }
}

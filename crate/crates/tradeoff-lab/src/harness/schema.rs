//! JSON instance format (`tradeoff-lab/1`).
//!
//! Complex numbers are `[re, im]` pairs; matrices are row-major arrays of
//! rows of pairs; pure states may be given as bare vectors of pairs.
//! Validation errors carry a JSON path to the offending node.
//!
//! ```json
//! {
//!   "format": "tradeoff-lab/1",
//!   "ensemble": {
//!     "dim": 2,
//!     "entries": [
//!       {"label": "0", "p": 0.5, "state": [[1.0,0.0],[0.0,0.0]]}
//!     ]
//!   },
//!   "instrument": {
//!     "in_dim": 2,
//!     "out_dim": 2,
//!     "outcomes": [
//!       {"label": "0", "kraus": [[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.0]]]}
//!     ]
//!   }
//! }
//! ```

use serde::Serialize;
use serde_json::Value;

use crate::ensemble::{Ensemble, EnsembleEntry};
use crate::instrument::{OutcomeBranch, QuantumInstrument};
use crate::qmat::{c, CMat, CVec, DensityOperator, PureState};
use crate::{Error, Result};

use super::Instance;

pub const FORMAT_TAG: &str = "tradeoff-lab/1";

fn fail(path: &str, message: impl Into<String>) -> Error {
    Error::Validation {
        path: path.to_string(),
        message: message.into(),
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a serde_json::Map<String, Value>> {
    v.as_object().ok_or_else(|| fail(path, "expected object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| fail(path, "expected array"))
}

fn as_f64(v: &Value, path: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| fail(path, "expected number"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| fail(path, "expected nonnegative integer"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| fail(path, "expected string"))
}

fn get<'a>(obj: &'a serde_json::Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| fail(path, format!("missing field '{key}'")))
}

fn parse_complex(v: &Value, path: &str) -> Result<crate::qmat::C64> {
    let pair = as_array(v, path)?;
    if pair.len() != 2 {
        return Err(fail(path, "complex number must be a [re, im] pair"));
    }
    Ok(c(
        as_f64(&pair[0], &format!("{path}[0]"))?,
        as_f64(&pair[1], &format!("{path}[1]"))?,
    ))
}

fn parse_vector(v: &Value, path: &str) -> Result<CVec> {
    let rows = as_array(v, path)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, item) in rows.iter().enumerate() {
        out.push(parse_complex(item, &format!("{path}[{i}]"))?);
    }
    Ok(CVec::from_vec(out))
}

fn parse_matrix(v: &Value, path: &str) -> Result<CMat> {
    let rows = as_array(v, path)?;
    if rows.is_empty() {
        return Err(fail(path, "matrix needs at least one row"));
    }
    let ncols = as_array(&rows[0], &format!("{path}[0]"))?.len();
    let mut data = Vec::with_capacity(rows.len() * ncols);
    for (i, row_v) in rows.iter().enumerate() {
        let row = as_array(row_v, &format!("{path}[{i}]"))?;
        if row.len() != ncols {
            return Err(fail(
                &format!("{path}[{i}]"),
                format!("ragged matrix: row has {} entries, expected {ncols}", row.len()),
            ));
        }
        for (j, item) in row.iter().enumerate() {
            data.push(parse_complex(item, &format!("{path}[{i}][{j}]"))?);
        }
    }
    Ok(CMat::from_row_slice(rows.len(), ncols, &data))
}

// A state is either a matrix (array of rows) or a pure-state vector
// (array of pairs); distinguished by nesting depth.
fn parse_state(v: &Value, dim: usize, path: &str) -> Result<DensityOperator> {
    let outer = as_array(v, path)?;
    if outer.is_empty() {
        return Err(fail(path, "empty state"));
    }
    let first = as_array(&outer[0], &format!("{path}[0]"))?;
    let is_vector = first.len() == 2 && first.iter().all(|x| x.is_number());
    if is_vector {
        let vec = parse_vector(v, path)?;
        if vec.len() != dim {
            return Err(fail(
                path,
                format!("state vector has length {}, expected {dim}", vec.len()),
            ));
        }
        let psi = PureState::new(vec).map_err(|e| fail(path, e.to_string()))?;
        Ok(DensityOperator::from_pure(&psi))
    } else {
        let m = parse_matrix(v, path)?;
        if m.nrows() != dim || m.ncols() != dim {
            return Err(fail(
                path,
                format!("state matrix is {}x{}, expected {dim}x{dim}", m.nrows(), m.ncols()),
            ));
        }
        DensityOperator::new(m).map_err(|e| fail(path, e.to_string()))
    }
}

pub fn parse_ensemble(v: &Value, path: &str) -> Result<Ensemble> {
    let obj = as_object(v, path)?;
    let dim = as_usize(get(obj, "dim", path)?, &format!("{path}.dim"))?;
    let entries_v = as_array(get(obj, "entries", path)?, &format!("{path}.entries"))?;
    let mut entries = Vec::with_capacity(entries_v.len());
    for (i, e_v) in entries_v.iter().enumerate() {
        let e_path = format!("{path}.entries[{i}]");
        let e = as_object(e_v, &e_path)?;
        let label = as_str(get(e, "label", &e_path)?, &format!("{e_path}.label"))?.to_string();
        let p = as_f64(get(e, "p", &e_path)?, &format!("{e_path}.p"))?;
        let state = parse_state(get(e, "state", &e_path)?, dim, &format!("{e_path}.state"))?;
        entries.push(EnsembleEntry { label, p, state });
    }
    Ensemble::new(entries).map_err(|e| fail(path, e.to_string()))
}

pub fn parse_instrument(v: &Value, path: &str) -> Result<QuantumInstrument> {
    let obj = as_object(v, path)?;
    let in_dim = as_usize(get(obj, "in_dim", path)?, &format!("{path}.in_dim"))?;
    let out_dim = as_usize(get(obj, "out_dim", path)?, &format!("{path}.out_dim"))?;
    let outcomes_v = as_array(get(obj, "outcomes", path)?, &format!("{path}.outcomes"))?;
    let mut outcomes = Vec::with_capacity(outcomes_v.len());
    for (i, o_v) in outcomes_v.iter().enumerate() {
        let o_path = format!("{path}.outcomes[{i}]");
        let o = as_object(o_v, &o_path)?;
        let label = as_str(get(o, "label", &o_path)?, &format!("{o_path}.label"))?.to_string();
        let kraus_v = as_array(get(o, "kraus", &o_path)?, &format!("{o_path}.kraus"))?;
        let mut kraus = Vec::with_capacity(kraus_v.len());
        for (k, k_v) in kraus_v.iter().enumerate() {
            let k_path = format!("{o_path}.kraus[{k}]");
            let m = parse_matrix(k_v, &k_path)?;
            if m.nrows() != out_dim || m.ncols() != in_dim {
                return Err(fail(
                    &k_path,
                    format!(
                        "Kraus operator is {}x{}, expected {out_dim}x{in_dim}",
                        m.nrows(),
                        m.ncols()
                    ),
                ));
            }
            kraus.push(m);
        }
        outcomes.push(OutcomeBranch::new(label, kraus).map_err(|e| fail(&o_path, e.to_string()))?);
    }
    QuantumInstrument::new(outcomes).map_err(|e| fail(path, e.to_string()))
}

/// Parses a full instance document, checking the format tag and that the
/// ensemble lives on the instrument's input space.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| fail("$", format!("invalid JSON: {e}")))?;
    let obj = as_object(&v, "$")?;
    let format = as_str(get(obj, "format", "$")?, "$.format")?;
    if format != FORMAT_TAG {
        return Err(fail(
            "$.format",
            format!("unsupported format '{format}', expected '{FORMAT_TAG}'"),
        ));
    }
    let ensemble = parse_ensemble(get(obj, "ensemble", "$")?, "$.ensemble")?;
    let instrument = parse_instrument(get(obj, "instrument", "$")?, "$.instrument")?;
    if ensemble.d() != instrument.in_dim() {
        return Err(fail(
            "$.instrument.in_dim",
            format!(
                "instrument input dimension {} does not match ensemble dimension {}",
                instrument.in_dim(),
                ensemble.d()
            ),
        ));
    }
    Ok(Instance {
        ensemble,
        instrument,
    })
}

// --- writer -----------------------------------------------------------

#[derive(Serialize)]
struct InstanceDto {
    format: &'static str,
    ensemble: EnsembleDto,
    instrument: InstrumentDto,
}

#[derive(Serialize)]
struct EnsembleDto {
    dim: usize,
    entries: Vec<EntryDto>,
}

#[derive(Serialize)]
struct EntryDto {
    label: String,
    p: f64,
    state: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
struct InstrumentDto {
    in_dim: usize,
    out_dim: usize,
    outcomes: Vec<OutcomeDto>,
}

#[derive(Serialize)]
struct OutcomeDto {
    label: String,
    kraus: Vec<Vec<Vec<[f64; 2]>>>,
}

fn matrix_to_rows(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Serializes an instance back to the `tradeoff-lab/1` JSON form (states
/// always written as matrices).
pub fn write_instance(instance: &Instance) -> String {
    let dto = InstanceDto {
        format: FORMAT_TAG,
        ensemble: EnsembleDto {
            dim: instance.ensemble.d(),
            entries: instance
                .ensemble
                .entries()
                .iter()
                .map(|e| EntryDto {
                    label: e.label.clone(),
                    p: e.p,
                    state: matrix_to_rows(e.state.matrix()),
                })
                .collect(),
        },
        instrument: InstrumentDto {
            in_dim: instance.instrument.in_dim(),
            out_dim: instance.instrument.out_dim(),
            outcomes: instance
                .instrument
                .outcomes()
                .iter()
                .map(|b| OutcomeDto {
                    label: b.label().to_string(),
                    kraus: b.kraus().iter().map(matrix_to_rows).collect(),
                })
                .collect(),
        },
    };
    serde_json::to_string_pretty(&dto).expect("instance serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_instance() -> Instance {
        Instance {
            ensemble: Ensemble::zero_plus_uniform(),
            instrument: QuantumInstrument::von_neumann(2),
        }
    }

    #[test]
    fn roundtrip_preserves_numbers() {
        let inst = sample_instance();
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back.ensemble.len(), 2);
        assert_eq!(back.instrument.n_outcomes(), 2);
        let again = write_instance(&back);
        assert_eq!(text, again, "write∘read is idempotent");
    }

    #[test]
    fn vector_states_accepted() {
        let text = r#"{
            "format": "tradeoff-lab/1",
            "ensemble": {"dim": 2, "entries": [
                {"label": "0", "p": 0.5, "state": [[1.0,0.0],[0.0,0.0]]},
                {"label": "1", "p": 0.5, "state": [[0.0,0.0],[1.0,0.0]]}
            ]},
            "instrument": {"in_dim": 2, "out_dim": 2, "outcomes": [
                {"label": "0", "kraus": [[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.0]]]]},
                {"label": "1", "kraus": [[[[0.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]]}
            ]}
        }"#;
        let inst = parse_instance(text).unwrap();
        assert!(inst.ensemble.entries()[0].state.is_pure(1e-9));
    }

    #[test]
    fn errors_carry_json_paths() {
        let bad = r#"{"format": "tradeoff-lab/1", "ensemble": {"dim": 2, "entries": [
            {"label": "0", "p": "half", "state": [[1.0,0.0],[0.0,0.0]]}
        ]}, "instrument": {"in_dim": 2, "out_dim": 2, "outcomes": []}}"#;
        match parse_instance(bad) {
            Err(Error::Validation { path, .. }) => {
                assert_eq!(path, "$.ensemble.entries[0].p");
            }
            other => panic!("expected validation error, got {other:?}"),
        }
        let bad_format = r#"{"format": "nope/9", "ensemble": {}, "instrument": {}}"#;
        match parse_instance(bad_format) {
            Err(Error::Validation { path, .. }) => assert_eq!(path, "$.format"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }
}

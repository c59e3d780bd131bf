//! JSON readers and writers for states and density matrices, and the
//! `re+imi` complex-number syntax used on the command line.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qstate::{Matrix8, MixedState3, PureState3, PureState4, C64};

/// A pure state read from JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyState {
    Three(PureState3),
    Four(PureState4),
}

pub fn c64_to_json(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn c64_from_json(v: &Value) -> Result<C64> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Parse(format!("expected [re, im], got {v}")))?;
    let num = |x: &Value| {
        x.as_f64()
            .ok_or_else(|| Error::Parse(format!("expected a number, got {x}")))
    };
    let z = C64::new(num(&pair[0])?, num(&pair[1])?);
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(z)
}

fn amps_from_json(v: &Value) -> Result<Vec<C64>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("\"amps\" must be an array".into()))?
        .iter()
        .map(c64_from_json)
        .collect()
}

pub fn state_from_value(v: &Value) -> Result<AnyState> {
    let n = v
        .get("n_qubits")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer \"n_qubits\"".into()))?;
    let amps = amps_from_json(
        v.get("amps")
            .ok_or_else(|| Error::Parse("missing \"amps\"".into()))?,
    )?;
    match n {
        3 => Ok(AnyState::Three(PureState3::from_slice(&amps)?)),
        4 => Ok(AnyState::Four(PureState4::from_slice(&amps)?)),
        other => Err(Error::Parse(format!(
            "n_qubits must be 3 or 4, got {other}"
        ))),
    }
}

pub fn state_from_json(text: &str) -> Result<AnyState> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    state_from_value(&v)
}

/// Reads a four-qubit state, rejecting three-qubit input.
pub fn state4_from_json(text: &str) -> Result<PureState4> {
    match state_from_json(text)? {
        AnyState::Four(s) => Ok(s),
        AnyState::Three(_) => Err(Error::Parse("expected a four-qubit state".into())),
    }
}

pub fn state3_to_json(s: &PureState3) -> Value {
    json!({ "n_qubits": 3, "amps": s.amps().iter().map(|z| c64_to_json(*z)).collect::<Vec<_>>() })
}

pub fn state4_to_json(s: &PureState4) -> Value {
    json!({ "n_qubits": 4, "amps": s.amps().iter().map(|z| c64_to_json(*z)).collect::<Vec<_>>() })
}

pub fn rho_from_value(v: &Value) -> Result<MixedState3> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer \"dim\"".into()))?;
    if dim != 8 {
        return Err(Error::Parse(format!("dim must be 8, got {dim}")));
    }
    let rows = v
        .get("rho")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("\"rho\" must be an array of rows".into()))?;
    if rows.len() != 8 {
        return Err(Error::WrongLength {
            expected: 8,
            got: rows.len(),
        });
    }
    let mut m = Matrix8::zeros();
    for (r, row) in rows.iter().enumerate() {
        let row = amps_from_json(row)?;
        if row.len() != 8 {
            return Err(Error::WrongLength {
                expected: 8,
                got: row.len(),
            });
        }
        for (c, z) in row.into_iter().enumerate() {
            m[(r, c)] = z;
        }
    }
    MixedState3::new(m)
}

pub fn rho_from_json(text: &str) -> Result<MixedState3> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    rho_from_value(&v)
}

pub fn rho_to_json(rho: &MixedState3) -> Value {
    let m = rho.matrix();
    let rows: Vec<Value> = (0..8)
        .map(|r| Value::Array((0..8).map(|c| c64_to_json(m[(r, c)])).collect()))
        .collect();
    json!({ "dim": 8, "rho": rows })
}

/// Parses `2`, `-0.5i`, `i`, `2+0i`, `0.5-1.2i`, `1e-3+2e-1i`.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("bad complex number {s:?}, expected re+imi"));
    if t.is_empty() {
        return Err(bad());
    }
    let imag = |part: &str| -> Result<f64> {
        match part {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            p => p.parse().map_err(|_| bad()),
        }
    };
    let z = match t.strip_suffix('i').or_else(|| t.strip_suffix('j')) {
        None => C64::new(t.parse().map_err(|_| bad())?, 0.0),
        Some(body) => {
            let b = body.as_bytes();
            // last sign that is neither leading nor part of an exponent
            let split = (1..b.len())
                .rev()
                .find(|&k| (b[k] == b'+' || b[k] == b'-') && !matches!(b[k - 1], b'e' | b'E'));
            match split {
                Some(k) => C64::new(body[..k].parse().map_err(|_| bad())?, imag(&body[k..])?),
                None => C64::new(0.0, imag(body)?),
            }
        }
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(z)
}

pub fn format_complex(z: C64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

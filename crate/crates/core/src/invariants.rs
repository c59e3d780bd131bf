//! Degree-four three-qubit invariants of three- and four-qubit states, the
//! endpoint transformation under a unitary on the traced qubit, and the
//! degree-eight four-qubit correlation quantities.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fonts::{compute_fonts3, compute_fonts4};
use crate::qstate::{PureState3, PureState4, C64};

/// Qubit traced out of a four-qubit state (A1 is the focus and never traced).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Traced {
    A2,
    A3,
    A4,
}

/// Qubit triple containing the focus qubit A1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Triple {
    A1A2A3,
    A1A2A4,
    A1A3A4,
}

impl Traced {
    pub const ALL: [Traced; 3] = [Traced::A4, Traced::A3, Traced::A2];

    pub fn label(self) -> &'static str {
        match self {
            Traced::A2 => "A2",
            Traced::A3 => "A3",
            Traced::A4 => "A4",
        }
    }

    pub fn triple(self) -> Triple {
        match self {
            Traced::A4 => Triple::A1A2A3,
            Traced::A3 => Triple::A1A2A4,
            Traced::A2 => Triple::A1A3A4,
        }
    }

    /// Permutation that moves the traced qubit to position 4, keeping A1
    /// first and the other two in ascending order.
    pub fn permutation(self) -> [usize; 4] {
        match self {
            Traced::A4 => [1, 2, 3, 4],
            Traced::A3 => [1, 2, 4, 3],
            Traced::A2 => [1, 3, 4, 2],
        }
    }
}

impl Triple {
    pub const ALL: [Triple; 3] = [Triple::A1A2A3, Triple::A1A2A4, Triple::A1A3A4];

    pub fn label(self) -> &'static str {
        match self {
            Triple::A1A2A3 => "A1A2A3",
            Triple::A1A2A4 => "A1A2A4",
            Triple::A1A3A4 => "A1A3A4",
        }
    }

    pub fn traced(self) -> Traced {
        match self {
            Triple::A1A2A3 => Traced::A4,
            Triple::A1A2A4 => Traced::A3,
            Triple::A1A3A4 => Traced::A2,
        }
    }
}

impl fmt::Display for Traced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Traced {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A2" | "2" => Ok(Traced::A2),
            "A3" | "3" => Ok(Traced::A3),
            "A4" | "4" => Ok(Traced::A4),
            "A1" | "1" => Err(Error::BadQubitLabel("A1".into())),
            other => Err(Error::Parse(format!("unknown qubit label {other:?}"))),
        }
    }
}

impl FromStr for Triple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1A2A3" | "123" => Ok(Triple::A1A2A3),
            "A1A2A4" | "124" => Ok(Triple::A1A2A4),
            "A1A3A4" | "134" => Ok(Triple::A1A3A4),
            "A2A3A4" | "234" => Err(Error::BadQubitLabel("A1".into())),
            other => Err(Error::Parse(format!("unknown qubit triple {other:?}"))),
        }
    }
}

/// The five invariants `(I3)^{4-m,m}`, `m = 0..4`, for one traced qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeQubitInvariantSet {
    pub traced: Traced,
    pub i40: C64,
    pub i31: C64,
    pub i22: C64,
    pub i13: C64,
    pub i04: C64,
}

impl ThreeQubitInvariantSet {
    pub fn from_coeffs(traced: Traced, c: [C64; 5]) -> Self {
        Self {
            traced,
            i40: c[0],
            i31: c[1],
            i22: c[2],
            i13: c[3],
            i04: c[4],
        }
    }

    /// `[i40, i31, i22, i13, i04]`.
    pub fn coeffs(&self) -> [C64; 5] {
        [self.i40, self.i31, self.i22, self.i13, self.i04]
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs()
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn n48(&self) -> f64 {
        6.0 * self.i22.norm_sqr()
            + 4.0 * self.i31.norm_sqr()
            + 4.0 * self.i13.norm_sqr()
            + self.i40.norm_sqr()
            + self.i04.norm_sqr()
    }

    pub fn i48(&self) -> C64 {
        3.0 * self.i22 * self.i22 - 4.0 * self.i31 * self.i13 + self.i40 * self.i04
    }

    pub fn to_json(&self) -> Value {
        let p = |z: C64| json!([z.re, z.im]);
        json!({
            "40": p(self.i40),
            "31": p(self.i31),
            "22": p(self.i22),
            "13": p(self.i13),
            "04": p(self.i04),
        })
    }
}

static FAULT: AtomicBool = AtomicBool::new(false);

/// Mutation-test hook: when enabled, the `1/6` weight in the `(I3)^{2,2}`
/// expression is replaced by `1/5`. Process-wide; intended for `selftest`.
pub fn set_fault_injection(on: bool) {
    FAULT.store(on, Ordering::SeqCst);
}

pub fn fault_injection() -> bool {
    FAULT.load(Ordering::SeqCst)
}

/// `I_{3,4}` of a three-qubit vector of any norm.
pub fn i34(s: &PureState3) -> C64 {
    let f = compute_fonts3(s);
    let t = f.d3way[0] + f.d3way[1];
    t * t - 4.0 * f.d2way[0] * f.d2way[1]
}

/// `4 |I_{3,4}|`.
pub fn three_tangle_pure(s: &PureState3) -> Result<f64> {
    let n = s.norm_sqr();
    if (n - 1.0).abs() > crate::qstate::NORMALIZED_TOL {
        return Err(Error::NotNormalized(n));
    }
    Ok(4.0 * i34(s).norm())
}

/// Evaluates the five invariants from the font table without a norm check.
pub(crate) fn invariant_coeffs(s: &PureState4) -> [C64; 5] {
    let f = compute_fonts4(s);
    let d2 = &f.d2_a3a4;
    let s4_0 = f.d3_a4[0][0] + f.d3_a4[1][0];
    let s4_1 = f.d3_a4[0][1] + f.d3_a4[1][1];
    let s3 = |i3: usize| f.d3_a3[0][i3] + f.d3_a3[1][i3];
    let d4 = f.d4[0][0] + f.d4[0][1] + f.d4[1][0] + f.d4[1][1];
    let sixth = if fault_injection() {
        1.0 / 5.0
    } else {
        1.0 / 6.0
    };

    let i40 = s4_0 * s4_0 - 4.0 * d2[1][0] * d2[0][0];
    let i31 = 0.5 * s4_0 * d4 - (d2[1][0] * s3(0) + d2[0][0] * s3(1));
    let i22 = sixth * d4 * d4 - (2.0 / 3.0) * s3(1) * s3(0) + (1.0 / 3.0) * s4_0 * s4_1
        - (2.0 / 3.0) * (d2[1][0] * d2[0][1] + d2[0][0] * d2[1][1]);
    let i13 = 0.5 * d4 * s4_1 - (d2[1][1] * s3(0) + s3(1) * d2[0][1]);
    let i04 = s4_1 * s4_1 - 4.0 * d2[1][1] * d2[0][1];
    [i40, i31, i22, i13, i04]
}

pub fn invariant_set_a4(s: &PureState4) -> Result<ThreeQubitInvariantSet> {
    s.require_normalized()?;
    Ok(ThreeQubitInvariantSet::from_coeffs(
        Traced::A4,
        invariant_coeffs(s),
    ))
}

pub fn invariant_set(s: &PureState4, traced: Traced) -> Result<ThreeQubitInvariantSet> {
    s.require_normalized()?;
    let t = s.permute_qubits(traced.permutation())?;
    Ok(ThreeQubitInvariantSet::from_coeffs(
        traced,
        invariant_coeffs(&t),
    ))
}

/// Endpoint invariants `(I3)^{4,0}(x)` and `(I3)^{0,4}(x)` after `U(x)` on the
/// traced qubit.
pub fn transform_endpoints(set: &ThreeQubitInvariantSet, x: C64) -> Result<(C64, C64)> {
    if !x.re.is_finite() || !x.im.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(endpoints(set, x))
}

pub(crate) fn endpoints(set: &ThreeQubitInvariantSet, x: C64) -> (C64, C64) {
    let [i40, i31, i22, i13, i04] = set.coeffs();
    let n = 1.0 + x.norm_sqr();
    let n2 = n * n;
    let w = x.conj();
    let a = i40 + w * (-4.0 * i31 + w * (6.0 * i22 + w * (-4.0 * i13 + w * i04)));
    let b = i04 + x * (4.0 * i13 + x * (6.0 * i22 + x * (4.0 * i31 + x * i40)));
    (a / n2, b / n2)
}

/// `(|i40(x)|, |i04(x)|)` in the limit `|x| -> infinity`.
pub fn endpoint_moduli_at_infinity(set: &ThreeQubitInvariantSet) -> (f64, f64) {
    (set.i04.norm(), set.i40.norm())
}

/// Degree-eight correlation quantities of one qubit triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationSummary {
    pub triple: Triple,
    pub n48: f64,
    pub i48: C64,
    pub tau48: f64,
    pub three_way: f64,
}

impl CorrelationSummary {
    pub fn from_set(set: &ThreeQubitInvariantSet) -> Self {
        let n48 = set.n48();
        let i48 = set.i48();
        Self {
            triple: set.traced.triple(),
            n48,
            i48,
            tau48: 16.0 * (12.0 * i48).norm(),
            three_way: 16.0 * (n48 - 2.0 * i48.norm()),
        }
    }
}

pub fn correlation_summary(s: &PureState4, triple: Triple) -> Result<CorrelationSummary> {
    Ok(CorrelationSummary::from_set(&invariant_set(
        s,
        triple.traced(),
    )?))
}

/// Invariant report in the CLI JSON layout.
pub fn report_json(set: &ThreeQubitInvariantSet) -> Value {
    let c = CorrelationSummary::from_set(set);
    json!({
        "traced": set.traced.label(),
        "I": set.to_json(),
        "N48": c.n48,
        "absI48": c.i48.norm(),
        "tau48": c.tau48,
        "three_way": c.three_way,
    })
}

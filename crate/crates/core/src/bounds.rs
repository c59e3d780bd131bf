//! Upper bounds on the three-tangle of a three-qubit reduced state.
//!
//! Every method works on the invariant set of the traced qubit: zeros of the
//! endpoint quartics (unitary on the traced qubit), the weighted variant acting
//! on the two branch vectors, a Riemann-sphere grid over the witness parameter,
//! closed forms for the six special invariant patterns, and the correlation cap.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::{
    endpoints, invariant_set, CorrelationSummary, ThreeQubitInvariantSet, Triple,
};
use crate::qstate::{PureState4, C64, ZERO};
use crate::quartic::{PolyDeg4, DEFAULT_SCALE_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    QuarticA4,
    Unitary3q,
    Grid,
    ClosedForm,
    Cap,
    /// Rank-2 construction from zero-tangle states plus one extra member.
    Hull,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::QuarticA4 => "quartic_A4",
            Method::Unitary3q => "unitary_3q",
            Method::Grid => "grid",
            Method::ClosedForm => "closed_form",
            Method::Cap => "cap",
            Method::Hull => "hull",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Invariant patterns with a closed-form bound, plus the generic case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupCase {
    I,
    II,
    III,
    IV,
    V,
    VI,
    Generic,
}

impl GroupCase {
    pub fn label(self) -> &'static str {
        match self {
            GroupCase::I => "i",
            GroupCase::II => "ii",
            GroupCase::III => "iii",
            GroupCase::IV => "iv",
            GroupCase::V => "v",
            GroupCase::VI => "vi",
            GroupCase::Generic => "generic",
        }
    }

    /// Invariants allowed to be nonzero, in `[i40, i31, i22, i13, i04]` order.
    fn support(self) -> [bool; 5] {
        match self {
            GroupCase::II => [true, false, false, false, false],
            GroupCase::III => [false, false, false, false, true],
            GroupCase::IV => [true, false, true, false, false],
            GroupCase::V => [false, false, true, false, true],
            GroupCase::VI => [false, false, false, true, true],
            GroupCase::I | GroupCase::Generic => [true; 5],
        }
    }
}

impl fmt::Display for GroupCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A point of the Riemann sphere used as the `U(x)` parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Witness {
    Finite(C64),
    Infinity,
}

impl Witness {
    fn key(self) -> (f64, f64) {
        match self {
            Witness::Finite(x) => (x.norm(), x.arg()),
            Witness::Infinity => (f64::INFINITY, 0.0),
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            Witness::Finite(x) => json!([x.re, x.im]),
            Witness::Infinity => json!("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundWitness {
    pub method: Method,
    /// Upper bound on the three-tangle.
    pub value: f64,
    pub witness_x: Option<Witness>,
    pub roots_used: Vec<C64>,
    pub group_case: Option<GroupCase>,
    /// False for constructions that do not reproduce the reduced state.
    pub certified: bool,
}

impl BoundWitness {
    pub(crate) fn plain(method: Method, value: f64) -> Self {
        Self {
            method,
            value,
            witness_x: None,
            roots_used: Vec::new(),
            group_case: None,
            certified: true,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "method": self.method.label(),
            "value": self.value,
            "x": self.witness_x.map(Witness::to_json),
            "case": self.group_case.map(GroupCase::label),
            "certified": self.certified,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub triple: Triple,
    pub methods: Vec<BoundWitness>,
    /// Minimum over the certified methods.
    pub best: f64,
    pub best_method: Method,
    /// `best / cap`, absent when the cap vanishes.
    pub tightness_f: Option<f64>,
}

impl BoundReport {
    pub fn method(&self, m: Method) -> Option<&BoundWitness> {
        self.methods.iter().find(|w| w.method == m)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "triple": self.triple.label(),
            "methods": self.methods.iter().map(BoundWitness::to_json).collect::<Vec<_>>(),
            "best": self.best,
            "best_method": self.best_method.label(),
            "F": self.tightness_f,
        })
    }
}

/// Candidate ordering: value, then `|x|`, then `arg x`.
fn cmp_candidates(a: &(f64, Witness), b: &(f64, Witness)) -> Ordering {
    let (ka, kb) = (a.1.key(), b.1.key());
    a.0.total_cmp(&b.0)
        .then(ka.0.total_cmp(&kb.0))
        .then(ka.1.total_cmp(&kb.1))
}

fn binom_poly(c: [C64; 5]) -> PolyDeg4 {
    PolyDeg4::new(c)
}

/// Zeros of both endpoint families with the complementary endpoint modulus at
/// each zero. Degree deficiency contributes the zero at `x = infinity`.
pub(crate) fn endpoint_zeros(set: &ThreeQubitInvariantSet) -> Result<Vec<(f64, Witness)>> {
    let [i40, i31, i22, i13, i04] = set.coeffs();
    let mut out = Vec::new();

    // i40(x) = 0 is a quartic in w = conj(x)
    let pa = binom_poly([i40, -4.0 * i31, 6.0 * i22, -4.0 * i13, i04]);
    let ra = pa.roots(DEFAULT_SCALE_TOL)?;
    let deg_a = ra.len();
    for w in ra {
        let x = w.conj();
        out.push((endpoints(set, x).1.norm(), Witness::Finite(x)));
    }
    if deg_a < 4 {
        out.push((i40.norm(), Witness::Infinity));
    }

    let pb = binom_poly([i04, 4.0 * i13, 6.0 * i22, 4.0 * i31, i40]);
    let rb = pb.roots(DEFAULT_SCALE_TOL)?;
    let deg_b = rb.len();
    for x in rb {
        out.push((endpoints(set, x).0.norm(), Witness::Finite(x)));
    }
    if deg_b < 4 {
        out.push((i04.norm(), Witness::Infinity));
    }
    Ok(out)
}

pub fn bound_quartic_a4(set: &ThreeQubitInvariantSet) -> Result<BoundWitness> {
    if set.max_abs() == 0.0 {
        return Ok(BoundWitness {
            witness_x: Some(Witness::Finite(ZERO)),
            ..BoundWitness::plain(Method::QuarticA4, 0.0)
        });
    }
    let cands = endpoint_zeros(set)?;
    let best = cands
        .iter()
        .min_by(|a, b| cmp_candidates(a, b))
        .copied()
        .expect("a nonzero quartic family has at least one zero");
    Ok(BoundWitness {
        method: Method::QuarticA4,
        value: 4.0 * best.0,
        witness_x: Some(best.1),
        roots_used: cands
            .iter()
            .filter_map(|c| match c.1 {
                Witness::Finite(x) => Some(x),
                Witness::Infinity => None,
            })
            .collect(),
        group_case: None,
        certified: true,
    })
}

/// Below this a branch probability counts as zero.
pub const MIN_PROBABILITY: f64 = 1e-12;

/// Weighted construction on the normalized branch vectors. Only certified
/// when `p0 == p1`, where it coincides with [`bound_quartic_a4`].
pub fn bound_unitary_3q(set: &ThreeQubitInvariantSet, p0: f64, p1: f64) -> Result<BoundWitness> {
    if !(p0.is_finite() && p1.is_finite()) {
        return Err(Error::NonFinite);
    }
    if p0 < MIN_PROBABILITY {
        return Err(Error::DegenerateProbability(p0));
    }
    if p1 < MIN_PROBABILITY {
        return Err(Error::DegenerateProbability(p1));
    }
    let [i40, i31, i22, i13, i04] = set.coeffs();
    let a40 = i40 / (p0 * p0);
    let a31 = i31 / (p0.powi(3) * p1).sqrt();
    let a22 = i22 / (p0 * p1);
    let a13 = i13 / (p0 * p1.powi(3)).sqrt();
    let a04 = i04 / (p1 * p1);
    let certified = (p0 - p1).abs() <= 1e-12;

    if [a40, a31, a22, a13, a04].iter().all(|z| *z == ZERO) {
        return Ok(BoundWitness {
            witness_x: Some(Witness::Finite(ZERO)),
            certified,
            ..BoundWitness::plain(Method::Unitary3q, 0.0)
        });
    }

    let scale = |y: C64| (1.0 + y.norm_sqr()).powi(2);
    let big_i40 =
        |y: C64| (a40 + y * (4.0 * a31 + y * (6.0 * a22 + y * (4.0 * a13 + y * a04)))) / scale(y);
    let big_i04 = |y: C64| {
        let w = y.conj();
        (a04 + w * (-4.0 * a13 + w * (6.0 * a22 + w * (-4.0 * a31 + w * a40)))) / scale(y)
    };

    let mut cands: Vec<(f64, Witness)> = Vec::new();
    let mut roots_used = Vec::new();

    let p_a = binom_poly([a40, 4.0 * a31, 6.0 * a22, 4.0 * a13, a04]);
    let ra = p_a.roots(DEFAULT_SCALE_TOL)?;
    if ra.len() < 4 {
        cands.push((4.0 * p0 * p0 * a40.norm(), Witness::Infinity));
    }
    for y in ra {
        cands.push((4.0 * p0 * p0 * big_i04(y).norm(), Witness::Finite(y)));
        roots_used.push(y);
    }

    let p_b = binom_poly([a04, -4.0 * a13, 6.0 * a22, -4.0 * a31, a40]);
    let rb = p_b.roots(DEFAULT_SCALE_TOL)?;
    if rb.len() < 4 {
        cands.push((4.0 * p1 * p1 * a04.norm(), Witness::Infinity));
    }
    for w in rb {
        let y = w.conj();
        cands.push((4.0 * p1 * p1 * big_i40(y).norm(), Witness::Finite(y)));
        roots_used.push(y);
    }

    let best = cands
        .iter()
        .min_by(|a, b| cmp_candidates(a, b))
        .copied()
        .expect("nonzero coefficient set has candidates");
    Ok(BoundWitness {
        method: Method::Unitary3q,
        value: best.0,
        witness_x: Some(best.1),
        roots_used,
        group_case: None,
        certified,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct GridOptions {
    pub n_theta: usize,
    pub n_phi: usize,
    pub refine_iters: usize,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            n_theta: 256,
            n_phi: 256,
            refine_iters: 50,
        }
    }
}

/// `2 (sqrt|i40(x)| + sqrt|i04(x)|)` on the Riemann sphere.
fn objective(set: &ThreeQubitInvariantSet, w: Witness) -> f64 {
    let (a, b) = match w {
        Witness::Finite(x) => {
            let (a, b) = endpoints(set, x);
            (a.norm(), b.norm())
        }
        Witness::Infinity => (set.i04.norm(), set.i40.norm()),
    };
    2.0 * (a.sqrt() + b.sqrt())
}

fn sphere_point(theta: f64, phi: f64) -> Witness {
    if theta >= PI {
        Witness::Infinity
    } else {
        Witness::Finite(C64::from_polar((theta / 2.0).tan(), phi))
    }
}

fn sphere_coords(w: Witness) -> (f64, f64) {
    match w {
        Witness::Finite(x) => (2.0 * x.norm().atan(), x.arg()),
        Witness::Infinity => (PI, 0.0),
    }
}

/// Coordinate descent in `(theta, phi)` starting from `start`.
fn refine(
    set: &ThreeQubitInvariantSet,
    start: (f64, Witness),
    step0: (f64, f64),
    iters: usize,
) -> (f64, Witness) {
    let (mut th, mut ph) = sphere_coords(start.1);
    let mut best = start;
    let (mut dt, mut dp) = step0;
    for _ in 0..iters {
        let mut improved = false;
        for (ddt, ddp) in [(dt, 0.0), (-dt, 0.0), (0.0, dp), (0.0, -dp)] {
            let t = (th + ddt).clamp(0.0, PI);
            let p = ph + ddp;
            let w = sphere_point(t, p);
            let f = objective(set, w);
            if f < best.0 {
                best = (f, w);
                th = t;
                ph = p;
                improved = true;
            }
        }
        if !improved {
            dt *= 0.5;
            dp *= 0.5;
        }
    }
    best
}

pub fn bound_grid(set: &ThreeQubitInvariantSet, opts: GridOptions) -> BoundWitness {
    if set.max_abs() == 0.0 {
        return BoundWitness {
            witness_x: Some(Witness::Finite(ZERO)),
            ..BoundWitness::plain(Method::Grid, 0.0)
        };
    }
    let nt = opts.n_theta.max(1);
    let np = opts.n_phi.max(1);
    let grid_best = (0..nt)
        .into_par_iter()
        .map(|j| {
            let theta = PI * (j as f64 + 0.5) / nt as f64;
            (0..np)
                .map(|k| {
                    let w = sphere_point(theta, 2.0 * PI * k as f64 / np as f64);
                    (objective(set, w), w)
                })
                .min_by(cmp_candidates)
                .expect("n_phi >= 1")
        })
        .min_by(cmp_candidates)
        .expect("n_theta >= 1");

    let mut cands = vec![grid_best];
    for w in [Witness::Finite(ZERO), Witness::Infinity] {
        cands.push((objective(set, w), w));
    }
    if let Ok(zeros) = endpoint_zeros(set) {
        cands.extend(zeros.iter().map(|&(_, w)| (objective(set, w), w)));
    }
    cands.sort_by(cmp_candidates);

    let step = (PI / nt as f64, 2.0 * PI / np as f64);
    let mut best = cands[0];
    for start in [grid_best, cands[0]] {
        let r = refine(set, start, step, opts.refine_iters);
        if cmp_candidates(&r, &best) == Ordering::Less {
            best = r;
        }
    }
    BoundWitness {
        witness_x: Some(best.1),
        ..BoundWitness::plain(Method::Grid, best.0 * best.0)
    }
}

pub const DEFAULT_REL_TOL: f64 = 1e-10;

pub fn classify_group(set: &ThreeQubitInvariantSet, three_way: f64, rel_tol: f64) -> GroupCase {
    let m = set.max_abs();
    let n48 = set.n48();
    if m == 0.0 || three_way <= 16.0 * rel_tol * n48 {
        return GroupCase::I;
    }
    let nz = set.coeffs().map(|z| z.norm() >= rel_tol * m);
    for case in [
        GroupCase::II,
        GroupCase::III,
        GroupCase::IV,
        GroupCase::V,
        GroupCase::VI,
    ] {
        let support = case.support();
        // the listed invariants must all be present
        if (0..5).all(|k| nz[k] == support[k]) {
            return case;
        }
    }
    GroupCase::Generic
}

fn pattern_allows(set: &ThreeQubitInvariantSet, case: GroupCase, rel_tol: f64) -> bool {
    let m = set.max_abs();
    let support = case.support();
    set.coeffs()
        .iter()
        .zip(support)
        .all(|(z, allowed)| allowed || z.norm() < rel_tol * m)
}

pub fn bound_closed_form(set: &ThreeQubitInvariantSet, case: GroupCase) -> Result<BoundWitness> {
    let wrong = || Error::WrongCase(case.label().to_string());
    let value = match case {
        GroupCase::Generic => return Err(wrong()),
        GroupCase::I => {
            let c = CorrelationSummary::from_set(set);
            if c.three_way > 16.0 * DEFAULT_REL_TOL * c.n48 {
                return Err(wrong());
            }
            0.0
        }
        _ if !pattern_allows(set, case, DEFAULT_REL_TOL) => return Err(wrong()),
        GroupCase::II => 4.0 * set.i40.norm(),
        GroupCase::III => 4.0 * set.i04.norm(),
        GroupCase::IV => two_term(set.i40.norm(), 6.0 * set.i22.norm()),
        GroupCase::V => two_term(set.i04.norm(), 6.0 * set.i22.norm()),
        GroupCase::VI => {
            let t = set.i04.norm();
            let u = 4.0 * set.i13.norm();
            if t == 0.0 {
                0.0
            } else {
                4.0 * t.powi(3) / (u * u + t * t)
            }
        }
    };
    Ok(BoundWitness {
        group_case: Some(case),
        ..BoundWitness::plain(Method::ClosedForm, value)
    })
}

/// `4 t |s - t| / (s + t)`.
fn two_term(t: f64, s: f64) -> f64 {
    if s + t == 0.0 {
        0.0
    } else {
        4.0 * t * (s - t).abs() / (s + t)
    }
}

pub fn bound_cap(summary: &CorrelationSummary) -> BoundWitness {
    let v = 4.0 * (summary.n48 - 2.0 * summary.i48.norm()).max(0.0).sqrt();
    BoundWitness::plain(Method::Cap, v)
}

#[derive(Debug, Clone, Copy)]
pub struct BestOptions {
    pub grid: GridOptions,
    /// Relative threshold for treating an invariant as zero when classifying.
    pub rel_tol: f64,
}

impl Default for BestOptions {
    fn default() -> Self {
        Self {
            grid: GridOptions::default(),
            rel_tol: DEFAULT_REL_TOL,
        }
    }
}

pub fn best_bound(s: &PureState4, triple: Triple) -> Result<BoundReport> {
    best_bound_with(s, triple, &BestOptions::default())
}

pub fn best_bound_with(s: &PureState4, triple: Triple, opts: &BestOptions) -> Result<BoundReport> {
    let set = invariant_set(s, triple.traced())?;
    let (b0, b1) = s.permute_qubits(triple.traced().permutation())?.branches();
    bound_report(&set, b0.norm_sqr(), b1.norm_sqr(), opts)
}

/// All methods for one invariant set with branch probabilities `p0`, `p1`.
pub fn bound_report(
    set: &ThreeQubitInvariantSet,
    p0: f64,
    p1: f64,
    opts: &BestOptions,
) -> Result<BoundReport> {
    if !set.is_finite() {
        return Err(Error::NonFinite);
    }
    let summary = CorrelationSummary::from_set(set);
    let cap = bound_cap(&summary);
    let cap_value = cap.value;
    let mut methods = vec![cap];

    let case = classify_group(set, summary.three_way, opts.rel_tol);
    // a looser classifier tolerance can pick a case the closed form rejects
    if let Ok(w) = bound_closed_form(set, case) {
        methods.push(w);
    }
    let mut quartic = bound_quartic_a4(set)?;
    quartic.group_case = Some(case);
    methods.push(quartic);
    if p0 >= MIN_PROBABILITY && p1 >= MIN_PROBABILITY {
        methods.push(bound_unitary_3q(set, p0, p1)?);
    }
    methods.push(bound_grid(set, opts.grid));

    let (best_method, best) = methods
        .iter()
        .filter(|w| w.certified)
        .map(|w| (w.method, w.value))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("cap is always present");
    Ok(BoundReport {
        triple: set.traced.triple(),
        methods,
        best,
        best_method,
        tightness_f: (cap_value > 0.0).then(|| best / cap_value),
    })
}

//! Upper bounds and explicit decompositions for rank-2 three-qubit states,
//! including the GHZ/W mixture.
//!
//! A rank-2 state lives on the span of its two eigenvectors `v0`, `v1`. Pure
//! states of the span are `v0 + s v1` (with `s = infinity` meaning `v1`) and
//! correspond to points on a Bloch sphere; the state itself sits at
//! `(0, 0, l0 - l1)`. Two constructions are combined:
//!
//! * purify with a relative phase `theta`, rotate the ancilla by `U(x)` and
//!   read off the two branches (two-member decompositions);
//! * write the Bloch point of the state as a convex combination of the
//!   zero-tangle points of the span plus at most one further pure state.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bounds::{
    bound_grid, bound_quartic_a4, bound_unitary_3q, BoundWitness, GridOptions, Method, Witness,
};
use crate::error::{Error, Result};
use crate::invariants::{invariant_coeffs, invariant_set_a4, three_tangle_pure};
use crate::qstate::{u_of_x, MixedState3, PureState3, PureState4, C64, ONE, RANK_TOL, ZERO};
use crate::quartic::{PolyDeg4, DEFAULT_SCALE_TOL};

/// Weighted pure states realizing a mixed state.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub members: Vec<(f64, PureState3)>,
    pub reconstructed: MixedState3,
}

impl Decomposition {
    /// Normalizes each member and rebuilds the mixed state.
    pub fn from_members(members: Vec<(f64, PureState3)>) -> Result<Self> {
        let members = members
            .into_iter()
            .map(|(w, s)| Ok((w, s.normalize()?)))
            .collect::<Result<Vec<_>>>()?;
        let reconstructed = MixedState3::mixture(&members)?;
        Ok(Self {
            members,
            reconstructed,
        })
    }

    pub fn weight_sum(&self) -> f64 {
        self.members.iter().map(|m| m.0).sum()
    }

    pub fn member_tangles(&self) -> Vec<f64> {
        self.members
            .iter()
            .map(|(_, s)| three_tangle_pure(s).expect("members are normalized"))
            .collect()
    }

    /// `(sum_k w_k sqrt(tau_k))^2`, the bound this decomposition certifies.
    pub fn tangle_bound(&self) -> f64 {
        let s: f64 = self
            .members
            .iter()
            .zip(self.member_tangles())
            .map(|((w, _), t)| w * t.sqrt())
            .sum();
        s * s
    }

    pub fn to_json(&self) -> Value {
        let members: Vec<Value> = self
            .members
            .iter()
            .zip(self.member_tangles())
            .map(|((w, s), t)| {
                json!({
                    "weight": w,
                    "tangle": t,
                    "amps": s.amps().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "members": members, "bound": self.tangle_bound() })
    }
}

// GHZ/W mixture

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(p));
    }
    Ok(())
}

/// `((I3)^{4,0}, |(I3)^{1,3}|)` of the purification; the phase of the second
/// entry is `e^{3 i theta}`.
pub fn ghzw_invariants(p: f64) -> Result<(f64, f64)> {
    check_p(p)?;
    Ok((
        p * p / 4.0,
        (p * (1.0 - p).powi(3)).sqrt() / (3.0 * 6f64.sqrt()),
    ))
}

pub fn ghzw_x0(p: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::OutOfRange(p));
    }
    Ok((3.0 * 2f64.powf(5.0 / 3.0) * p / (16.0 * (1.0 - p))).sqrt())
}

/// GHZ weight at which `x0 = 1`.
pub fn ghzw_threshold() -> f64 {
    16.0 / (16.0 + 3.0 * 2f64.powf(5.0 / 3.0))
}

fn above_threshold_i3(p: f64) -> f64 {
    (p * p / 4.0 - 4.0 * (p * (1.0 - p).powi(3)).sqrt() / (3.0 * 6f64.sqrt())).abs()
}

/// Three-tangle of each member of the three-state decomposition above the
/// threshold, zero below it.
pub fn ghzw_bound(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(if p <= ghzw_threshold() {
        0.0
    } else {
        4.0 * above_threshold_i3(p)
    })
}

/// `|p^2/4 - 4 sqrt(p (1-p)^3) / (3 sqrt 6)|` above the threshold, zero below.
/// This is the invariant of each member rather than its three-tangle.
pub fn ghzw_printed_bound(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(if p <= ghzw_threshold() {
        0.0
    } else {
        above_threshold_i3(p)
    })
}

pub fn ghzw_state(p: f64) -> Result<MixedState3> {
    check_p(p)?;
    let members: Vec<(f64, PureState3)> = [(p, PureState3::ghz()), (1.0 - p, PureState3::w())]
        .into_iter()
        .filter(|m| m.0 > 0.0)
        .collect();
    MixedState3::mixture(&members)
}

/// `sqrt(p) |GHZ>|0> + e^{i theta} sqrt(1-p) |W>|1>`.
pub fn ghzw_purification(p: f64, theta: f64) -> Result<PureState4> {
    check_p(p)?;
    let b0 = PureState3::ghz().scale(C64::new(p.sqrt(), 0.0));
    let b1 = PureState3::w().scale(C64::from_polar((1.0 - p).sqrt(), theta));
    Ok(PureState4::from_branches(&b0, &b1))
}

/// Normalized `sqrt(p) GHZ - conj(x) e^{i theta} sqrt(1-p) W`.
pub fn ghzw_phi0(p: f64, x: C64, theta: f64) -> Result<PureState3> {
    check_p(p)?;
    let g = C64::new(p.sqrt(), 0.0);
    let w = -x.conj() * C64::from_polar((1.0 - p).sqrt(), theta);
    PureState3::ghz()
        .combine(g, &PureState3::w(), w)
        .normalize()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhzwBranch {
    Below,
    Above,
}

impl GhzwBranch {
    pub fn label(self) -> &'static str {
        match self {
            GhzwBranch::Below => "below",
            GhzwBranch::Above => "above",
        }
    }
}

pub fn ghzw_decomposition(p: f64, branch: GhzwBranch) -> Result<Decomposition> {
    check_p(p)?;
    let ps = ghzw_threshold();
    let mismatch = || Error::BranchMismatch {
        p,
        branch: branch.label().into(),
    };
    let thetas = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0];
    let members = match branch {
        GhzwBranch::Below => {
            if p > ps {
                return Err(mismatch());
            }
            let weight = p * (1.0 + 0.375 * 2f64.powf(2.0 / 3.0));
            // weight <= 1 holds exactly on this branch; guard the rounding
            if weight > 1.0 + 1e-12 {
                return Err(mismatch());
            }
            let weight = weight.min(1.0);
            let x0 = C64::new(ghzw_x0(p)?, 0.0);
            let mut m = Vec::new();
            if weight > 0.0 {
                for &t in &thetas {
                    m.push((weight / 3.0, ghzw_phi0(p, x0, t)?));
                }
            }
            if 1.0 - weight > 0.0 {
                m.push((1.0 - weight, PureState3::w()));
            }
            m
        }
        GhzwBranch::Above => {
            if p <= ps {
                return Err(mismatch());
            }
            thetas
                .iter()
                .map(|&t| Ok((1.0 / 3.0, ghzw_phi0(p, ONE, t)?)))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Decomposition::from_members(members)
}

// General rank-2 states

#[derive(Debug, Clone, Copy)]
pub struct Rank2Options {
    pub theta_samples: usize,
    pub grid: usize,
}

impl Default for Rank2Options {
    fn default() -> Self {
        Self {
            theta_samples: 24,
            grid: 128,
        }
    }
}

/// Eigen-data of a rank-<=2 state: `l0 >= l1` and the phase-fixed eigenvectors.
#[derive(Debug, Clone)]
struct Span {
    l0: f64,
    l1: f64,
    v0: PureState3,
    v1: PureState3,
    /// Polarization coefficients of `I3(v0 + s v1)`.
    beta: [C64; 5],
}

impl Span {
    fn new(rho: &MixedState3) -> Result<Self> {
        let spec = rho.spectrum();
        if spec.values[2] >= RANK_TOL {
            return Err(Error::RankTooHigh(spec.values[2]));
        }
        let l0 = spec.values[0].max(0.0);
        let l1 = spec.values[1].max(0.0);
        let v0 = spec.vectors[0].clone();
        let v1 = spec.vectors[1].clone();
        let beta = invariant_coeffs(&PureState4::from_branches(&v0, &v1));
        Ok(Self {
            l0: l0 / (l0 + l1),
            l1: l1 / (l0 + l1),
            v0,
            v1,
            beta,
        })
    }

    /// State at Bloch angles `(theta, phi)`.
    fn state(&self, theta: f64, phi: f64) -> PureState3 {
        self.v0.combine(
            C64::new((theta / 2.0).cos(), 0.0),
            &self.v1,
            C64::from_polar((theta / 2.0).sin(), phi),
        )
    }

    fn tangle(&self, theta: f64, phi: f64) -> f64 {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let e = C64::from_polar(1.0, phi);
        let binom = [1.0, 4.0, 6.0, 4.0, 1.0];
        let q: C64 = (0..5)
            .map(|m| {
                binom[m] * self.beta[m] * c.powi(4 - m as i32) * s.powi(m as i32) * e.powu(m as u32)
            })
            .sum();
        4.0 * q.norm()
    }

    fn target(&self) -> [f64; 3] {
        [0.0, 0.0, self.l0 - self.l1]
    }

    /// Bloch angles of the zero-tangle states, without repetition.
    fn zero_points(&self) -> Result<Vec<(f64, f64)>> {
        let binom = [1.0, 4.0, 6.0, 4.0, 1.0];
        let mut c = [ZERO; 5];
        for m in 0..5 {
            c[m] = binom[m] * self.beta[m];
        }
        let roots = PolyDeg4::new(c).roots(DEFAULT_SCALE_TOL)?;
        let mut pts: Vec<(f64, f64)> = Vec::new();
        let mut push = |p: (f64, f64)| {
            let b = bloch(p);
            if !pts.iter().any(|q| dist(bloch(*q), b) < 1e-9) {
                pts.push(p);
            }
        };
        if roots.len() < 4 {
            push((PI, 0.0));
        }
        for s in roots {
            push((2.0 * s.norm().atan(), s.arg()));
        }
        Ok(pts)
    }
}

fn bloch((theta, phi): (f64, f64)) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Nonnegative weights `w` with `sum w_k = 1` and `sum w_k p_k = target`, if any.
fn convex_weights(points: &[[f64; 3]], target: [f64; 3]) -> Option<Vec<f64>> {
    let k = points.len();
    let a = DMatrix::from_fn(4, k, |r, c| if r < 3 { points[c][r] } else { 1.0 });
    let b = DVector::from_vec(vec![target[0], target[1], target[2], 1.0]);
    let w = a.clone().svd(true, true).solve(&b, 1e-13).ok()?;
    if (&a * &w - &b).norm() > 1e-10 || w.iter().any(|&x| x < -1e-12) {
        return None;
    }
    let mut w: Vec<f64> = w.iter().map(|&x| x.max(0.0)).collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    Some(w)
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .filter(|m| m.count_ones() as usize <= max)
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
        .collect()
}

/// Smallest weight on `extra` over convex representations of `target` by the
/// zero points plus `extra`, with the weights of the zero points.
fn min_extra_weight(
    zeros: &[[f64; 3]],
    subs: &[Vec<usize>],
    extra: [f64; 3],
    target: [f64; 3],
) -> Option<(f64, Vec<(usize, f64)>)> {
    let mut best: Option<(f64, Vec<(usize, f64)>)> = None;
    let mut consider = |idx: &[usize]| {
        let mut pts: Vec<[f64; 3]> = idx.iter().map(|&i| zeros[i]).collect();
        pts.push(extra);
        if let Some(w) = convex_weights(&pts, target) {
            let nu = *w.last().expect("extra point present");
            if best.as_ref().is_none_or(|b| nu < b.0) {
                let zw = idx.iter().copied().zip(w.iter().copied()).collect();
                best = Some((nu, zw));
            }
        }
    };
    consider(&[]);
    for s in subs.iter().filter(|s| s.len() <= 3) {
        consider(s);
    }
    best
}

struct HullResult {
    value: f64,
    decomposition: Decomposition,
}

fn hull_construction(span: &Span, grid: usize) -> Result<HullResult> {
    let target = span.target();
    let zero_angles = span.zero_points()?;
    let zeros: Vec<[f64; 3]> = zero_angles.iter().map(|&a| bloch(a)).collect();
    let subs = subsets(zeros.len(), 4);

    // the state may already be a mixture of zero-tangle states
    let mut exact: Option<Vec<(usize, f64)>> = None;
    for s in &subs {
        let pts: Vec<[f64; 3]> = s.iter().map(|&i| zeros[i]).collect();
        if let Some(w) = convex_weights(&pts, target) {
            exact = Some(s.iter().copied().zip(w).collect());
            break;
        }
    }
    let members: Vec<(f64, PureState3)> = if let Some(zw) = exact {
        zw.into_iter()
            .filter(|(_, w)| *w > 1e-15)
            .map(|(i, w)| (w, span.state(zero_angles[i].0, zero_angles[i].1)))
            .collect()
    } else {
        let n = grid.max(4);
        let objective = |theta: f64, phi: f64| -> f64 {
            match min_extra_weight(&zeros, &subs, bloch((theta, phi)), target) {
                Some((nu, _)) => nu * nu * span.tangle(theta, phi),
                None => f64::INFINITY,
            }
        };
        let (mut f, mut th, mut ph) = (0..n)
            .into_par_iter()
            .map(|j| {
                let theta = PI * (j as f64 + 0.5) / n as f64;
                (0..n)
                    .map(|k| {
                        let phi = 2.0 * PI * k as f64 / n as f64;
                        (objective(theta, phi), theta, phi)
                    })
                    .min_by(|a, b| a.0.total_cmp(&b.0))
                    .expect("n >= 1")
            })
            .collect::<Vec<_>>()
            .into_iter()
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .expect("n >= 1");
        if !f.is_finite() {
            // every sphere point leaves the target outside the hull; cannot
            // happen for a point inside the ball, kept as a guard
            return Err(Error::DidNotConverge);
        }
        let (mut dt, mut dp) = (PI / n as f64, 2.0 * PI / n as f64);
        for _ in 0..60 {
            let mut improved = false;
            for (a, b) in [(dt, 0.0), (-dt, 0.0), (0.0, dp), (0.0, -dp)] {
                let (t, p) = ((th + a).clamp(0.0, PI), ph + b);
                let v = objective(t, p);
                if v < f {
                    (f, th, ph) = (v, t, p);
                    improved = true;
                }
            }
            if !improved {
                dt *= 0.5;
                dp *= 0.5;
            }
        }
        let (nu, zw) = min_extra_weight(&zeros, &subs, bloch((th, ph)), target)
            .expect("objective was finite here");
        let mut m: Vec<(f64, PureState3)> = zw
            .into_iter()
            .filter(|(_, w)| *w > 1e-15)
            .map(|(i, w)| (w, span.state(zero_angles[i].0, zero_angles[i].1)))
            .collect();
        m.push((nu, span.state(th, ph)));
        m
    };
    let decomposition = Decomposition::from_members(members)?;
    Ok(HullResult {
        value: decomposition.tangle_bound(),
        decomposition,
    })
}

fn purification(span: &Span, theta: f64) -> Result<PureState4> {
    let b0 = span.v0.scale(C64::new(span.l0.sqrt(), 0.0));
    let b1 = span.v1.scale(C64::from_polar(span.l1.sqrt(), theta));
    PureState4::from_branches(&b0, &b1).normalize()
}

/// Two-member decomposition from the branches after `U(x)` on the ancilla.
fn branch_decomposition(psi: &PureState4, w: Witness) -> Result<Decomposition> {
    let (b0, b1) = match w {
        Witness::Finite(x) => psi.apply_local_unitary(4, &u_of_x(x)?)?.branches(),
        Witness::Infinity => {
            let (b0, b1) = psi.branches();
            (b1, b0)
        }
    };
    let members = [b0, b1]
        .into_iter()
        .filter(|b| b.norm_sqr() > 1e-15)
        .map(|b| (b.norm_sqr(), b))
        .collect();
    Decomposition::from_members(members)
}

/// Best two-member witness for the purification with relative phase `theta`.
pub fn rank2_theta_bound(rho: &MixedState3, theta: f64, grid: usize) -> Result<BoundWitness> {
    let span = Span::new(rho)?;
    theta_bound(&span, theta, grid).map(|(w, _)| w)
}

fn theta_bound(span: &Span, theta: f64, grid: usize) -> Result<(BoundWitness, PureState4)> {
    let psi = purification(span, theta)?;
    let set = invariant_set_a4(&psi)?;
    let mut cands = vec![bound_quartic_a4(&set)?];
    if span.l1 >= crate::bounds::MIN_PROBABILITY {
        let (b0, b1) = psi.branches();
        let u = bound_unitary_3q(&set, b0.norm_sqr(), b1.norm_sqr())?;
        if u.certified {
            cands.push(u);
        }
    }
    cands.push(bound_grid(
        &set,
        GridOptions {
            n_theta: grid,
            n_phi: grid,
            refine_iters: 50,
        },
    ));
    let best = cands
        .into_iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .expect("candidates present");
    Ok((best, psi))
}

/// Upper bound on the three-tangle of a rank-<=2 state with a decomposition
/// that realizes it.
pub fn decompose_rank2(
    rho: &MixedState3,
    opts: Rank2Options,
) -> Result<(BoundWitness, Decomposition)> {
    let span = Span::new(rho)?;
    if span.l1 < RANK_TOL {
        let d = Decomposition::from_members(vec![(1.0, span.v0.clone())])?;
        let w = BoundWitness {
            method: Method::QuarticA4,
            value: d.tangle_bound(),
            witness_x: Some(Witness::Finite(ZERO)),
            roots_used: Vec::new(),
            group_case: None,
            certified: true,
        };
        return Ok((w, d));
    }

    let n = opts.theta_samples.max(1);
    let scans = (0..n)
        .into_par_iter()
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / n as f64;
            theta_bound(&span, theta, opts.grid)
        })
        .collect::<Result<Vec<_>>>()?;
    let (two_member, psi) = scans
        .into_iter()
        .reduce(|a, b| if b.0.value < a.0.value { b } else { a })
        .expect("at least one sample");

    let hull = hull_construction(&span, opts.grid)?;
    if hull.value < two_member.value {
        let w = BoundWitness {
            method: Method::Hull,
            value: hull.value,
            witness_x: None,
            roots_used: Vec::new(),
            group_case: None,
            certified: true,
        };
        return Ok((w, hull.decomposition));
    }
    let d = branch_decomposition(&psi, two_member.witness_x.expect("methods set a witness"))?;
    Ok((two_member, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::bound_cap;
    use crate::invariants::CorrelationSummary;
    use crate::qstate::random_state;

    fn fast() -> Rank2Options {
        Rank2Options {
            theta_samples: 6,
            grid: 32,
        }
    }

    #[test]
    fn invariants_endpoints() {
        assert_eq!(ghzw_invariants(1.0).unwrap(), (0.25, 0.0));
        assert_eq!(ghzw_invariants(0.0).unwrap(), (0.0, 0.0));
        assert!(matches!(ghzw_invariants(1.5), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn invariants_match_purification() {
        for (p, theta) in [(0.5, 0.0), (0.8, 0.0), (0.3, 0.7)] {
            let set = invariant_set_a4(&ghzw_purification(p, theta).unwrap()).unwrap();
            let (i40, i13) = ghzw_invariants(p).unwrap();
            assert!((set.i40 - C64::new(i40, 0.0)).norm() < 1e-10);
            assert!((set.i13 - C64::from_polar(i13, 3.0 * theta)).norm() < 1e-10);
            for z in [set.i31, set.i22, set.i04] {
                assert!(z.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn purification_of_mixture_matches() {
        // eigenbranches of the mixture at p = 0.8 are GHZ then W
        let rho = ghzw_state(0.8).unwrap();
        let psi = crate::qstate::purify_rank2(&rho, 0.4).unwrap();
        let want = ghzw_purification(0.8, 0.4).unwrap();
        let a = invariant_set_a4(&psi).unwrap();
        let b = invariant_set_a4(&want).unwrap();
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn x0_and_threshold() {
        assert_eq!(ghzw_x0(0.0).unwrap(), 0.0);
        assert!((ghzw_x0(0.5).unwrap() - 0.77155).abs() < 1e-5);
        assert!(matches!(ghzw_x0(1.0), Err(Error::OutOfRange(_))));
        let ps = ghzw_threshold();
        assert!((ps - 0.626851).abs() < 1e-5);
        assert!((ghzw_x0(ps).unwrap() - 1.0).abs() < 1e-12);
        assert!(ghzw_x0(ps - 1e-6).unwrap() < 1.0 && ghzw_x0(ps + 1e-6).unwrap() > 1.0);

        let (mut lo, mut hi) = (0.0f64, 0.99f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if ghzw_x0(mid).unwrap() < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((0.5 * (lo + hi) - ps).abs() < 1e-12);
    }

    #[test]
    fn bound_values() {
        assert_eq!(ghzw_bound(0.5).unwrap(), 0.0);
        assert!((ghzw_printed_bound(0.8).unwrap() - 0.11645).abs() < 1e-5);
        assert!((ghzw_printed_bound(1.0).unwrap() - 0.25).abs() < 1e-15);
        assert!((ghzw_bound(1.0).unwrap() - 1.0).abs() < 1e-15);

        // small just above the threshold and decreasing towards it
        let ps = ghzw_threshold();
        let v: Vec<f64> = [1e-4, 1e-3, 1e-2]
            .iter()
            .map(|d| ghzw_bound(ps + d).unwrap())
            .collect();
        assert!(v[0] < 0.02 && v[0] < v[1] && v[1] < v[2]);
    }

    #[test]
    fn decompositions() {
        for p in [0.3, 0.5] {
            let d = ghzw_decomposition(p, GhzwBranch::Below).unwrap();
            assert!((d.weight_sum() - 1.0).abs() < 1e-10);
            assert!(d.reconstructed.max_abs_diff(&ghzw_state(p).unwrap()) < 1e-8);
            assert!(d.member_tangles().iter().all(|&t| t < 1e-9));
        }
        let d = ghzw_decomposition(0.8, GhzwBranch::Above).unwrap();
        assert!(d.reconstructed.max_abs_diff(&ghzw_state(0.8).unwrap()) < 1e-8);
        let b = ghzw_bound(0.8).unwrap();
        for t in d.member_tangles() {
            assert!((t - b).abs() < 1e-9);
        }
        let d = ghzw_decomposition(0.0, GhzwBranch::Below).unwrap();
        assert_eq!(d.members.len(), 1);
        assert!(matches!(
            ghzw_decomposition(0.8, GhzwBranch::Below),
            Err(Error::BranchMismatch { .. })
        ));
        assert!(matches!(
            ghzw_decomposition(0.5, GhzwBranch::Above),
            Err(Error::BranchMismatch { .. })
        ));
    }

    #[test]
    fn pure_input() {
        let rho = MixedState3::from_pure(&PureState3::ghz()).unwrap();
        let (w, d) = decompose_rank2(&rho, fast()).unwrap();
        assert!((w.value - 1.0).abs() < 1e-12);
        assert_eq!(d.members.len(), 1);
        assert!((d.members[0].0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mixture_below_threshold_is_zero() {
        let rho = ghzw_state(0.5).unwrap();
        let (w, d) = decompose_rank2(&rho, fast()).unwrap();
        assert!(w.value < 1e-6, "{}", w.value);
        assert!(d.reconstructed.max_abs_diff(&rho) < 1e-8);
    }

    #[test]
    fn theta_period() {
        let rho = ghzw_state(0.8).unwrap();
        for theta in [0.1, 0.9] {
            let a = rank2_theta_bound(&rho, theta, 32).unwrap().value;
            let b = rank2_theta_bound(&rho, theta + 2.0 * PI / 3.0, 32)
                .unwrap()
                .value;
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn random_rank_two_states() {
        for seed in 0..4 {
            let psi = random_state(seed);
            let (rho, _, _) = psi.partial_trace_last().unwrap();
            let (w, d) = decompose_rank2(&rho, fast()).unwrap();
            assert!(d.reconstructed.max_abs_diff(&rho) < 1e-8);
            assert!((d.weight_sum() - 1.0).abs() < 1e-10);
            assert!((d.tangle_bound() - w.value).abs() < 1e-8);
            let cap = bound_cap(&CorrelationSummary::from_set(
                &invariant_set_a4(&psi).unwrap(),
            ));
            assert!(w.value >= 0.0 && w.value <= cap.value + 1e-8);
        }
    }

    #[test]
    fn rejects_rank_three() {
        let rho = MixedState3::mixture(&[
            (0.5, PureState3::basis(0)),
            (0.3, PureState3::basis(3)),
            (0.2, PureState3::basis(5)),
        ])
        .unwrap();
        assert!(matches!(
            decompose_rank2(&rho, fast()),
            Err(Error::RankTooHigh(_))
        ));
    }
}

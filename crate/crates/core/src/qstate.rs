//! Three- and four-qubit pure states, rank-2 three-qubit mixed states and
//! single-qubit unitaries.
//!
//! Amplitudes are stored with the first qubit most significant: the
//! four-qubit index of `|i1 i2 i3 i4>` is `8*i1 + 4*i2 + 2*i3 + i4`.

use nalgebra::{SMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Matrix8 = SMatrix<C64, 8, 8>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Squared norms below this are treated as the zero vector.
pub const ZERO_NORM_SQR: f64 = 1e-28;
/// Tolerance on `|<psi|psi> - 1|` for operations that require a unit state.
pub const NORMALIZED_TOL: f64 = 1e-10;

fn parse_ket(bits: &str, n: usize) -> usize {
    assert_eq!(bits.len(), n, "ket label {bits:?} must have {n} bits");
    bits.chars().fold(0, |acc, ch| match ch {
        '0' => acc << 1,
        '1' => (acc << 1) | 1,
        _ => panic!("ket label {bits:?} must be binary"),
    })
}

/// A four-qubit pure state (not necessarily normalized).
#[derive(Debug, Clone, PartialEq)]
pub struct PureState4 {
    amps: [C64; 16],
}

/// A three-qubit pure state (not necessarily normalized).
#[derive(Debug, Clone, PartialEq)]
pub struct PureState3 {
    amps: [C64; 8],
}

impl PureState4 {
    pub fn new(amps: [C64; 16]) -> Self {
        Self { amps }
    }

    pub fn from_slice(amps: &[C64]) -> Result<Self> {
        let amps: [C64; 16] = amps.try_into().map_err(|_| Error::WrongLength {
            expected: 16,
            got: amps.len(),
        })?;
        Ok(Self { amps })
    }

    /// Sum of `coefficient * |bits>` terms, e.g. `[(c, "0101")]`.
    pub fn from_kets(terms: &[(C64, &str)]) -> Self {
        let mut amps = [ZERO; 16];
        for (c, bits) in terms {
            amps[parse_ket(bits, 4)] += *c;
        }
        Self { amps }
    }

    pub fn basis(index: usize) -> Self {
        let mut amps = [ZERO; 16];
        amps[index] = ONE;
        Self { amps }
    }

    /// `(|0000> + |1111>)/sqrt(2)`.
    pub fn ghz() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::from_kets(&[(h, "0000"), (h, "1111")])
    }

    pub fn amps(&self) -> &[C64; 16] {
        &self.amps
    }

    #[inline]
    pub fn amp(&self, i1: usize, i2: usize, i3: usize, i4: usize) -> C64 {
        self.amps[8 * (i1 & 1) + 4 * (i2 & 1) + 2 * (i3 & 1) + (i4 & 1)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORMALIZED_TOL
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() > NORMALIZED_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(())
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        if n < ZERO_NORM_SQR {
            return Err(Error::ZeroState);
        }
        let s = 1.0 / n.sqrt();
        Ok(Self {
            amps: self.amps.map(|a| a * s),
        })
    }

    pub fn scale(&self, lambda: C64) -> Self {
        Self {
            amps: self.amps.map(|a| a * lambda),
        }
    }

    /// Contracts the amplitude tensor with `u` on qubit `qubit` (1-based).
    pub fn apply_local_unitary(&self, qubit: usize, u: &Qubit2Unitary) -> Result<Self> {
        if !(1..=4).contains(&qubit) {
            return Err(Error::BadQubitIndex(qubit));
        }
        let shift = 4 - qubit;
        let mask = 1usize << shift;
        let m = u.matrix();
        let mut out = [ZERO; 16];
        for (idx, slot) in out.iter_mut().enumerate() {
            let b = (idx >> shift) & 1;
            let base = idx & !mask;
            *slot = m[b][0] * self.amps[base] + m[b][1] * self.amps[base | mask];
        }
        Ok(Self { amps: out })
    }

    /// Reorders qubits so that new qubit `k` carries old qubit `perm[k-1]`.
    ///
    /// `perm` is a 1-based permutation of `{1,2,3,4}`.
    pub fn permute_qubits(&self, perm: [usize; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &p in &perm {
            if !(1..=4).contains(&p) || seen[p - 1] {
                return Err(Error::BadPermutation(perm.to_vec()));
            }
            seen[p - 1] = true;
        }
        let mut out = [ZERO; 16];
        for (old, amp) in self.amps.iter().enumerate() {
            let bit = |q: usize| (old >> (4 - q)) & 1;
            let new = perm.iter().fold(0, |acc, &q| (acc << 1) | bit(q));
            out[new] = *amp;
        }
        Ok(Self { amps: out })
    }

    /// Subnormalized three-qubit branches `|Phi^(i4)>` conditioned on the last qubit.
    pub fn branches(&self) -> (PureState3, PureState3) {
        let mut b0 = [ZERO; 8];
        let mut b1 = [ZERO; 8];
        for k in 0..8 {
            b0[k] = self.amps[2 * k];
            b1[k] = self.amps[2 * k + 1];
        }
        (PureState3 { amps: b0 }, PureState3 { amps: b1 })
    }

    /// `|b0>|0> + |b1>|1>`.
    pub fn from_branches(b0: &PureState3, b1: &PureState3) -> Self {
        let mut amps = [ZERO; 16];
        for k in 0..8 {
            amps[2 * k] = b0.amps[k];
            amps[2 * k + 1] = b1.amps[k];
        }
        Self { amps }
    }

    /// Traces out qubit A4 and returns `(rho, p0, p1)` with `p_i = <Phi^(i)|Phi^(i)>`.
    pub fn partial_trace_last(&self) -> Result<(MixedState3, f64, f64)> {
        self.require_normalized()?;
        let (b0, b1) = self.branches();
        let p0 = b0.norm_sqr();
        let p1 = b1.norm_sqr();
        let rho = b0.outer() + b1.outer();
        Ok((MixedState3 { rho }, p0, p1))
    }
}

impl PureState3 {
    pub fn new(amps: [C64; 8]) -> Self {
        Self { amps }
    }

    pub fn from_slice(amps: &[C64]) -> Result<Self> {
        let amps: [C64; 8] = amps.try_into().map_err(|_| Error::WrongLength {
            expected: 8,
            got: amps.len(),
        })?;
        Ok(Self { amps })
    }

    pub fn from_kets(terms: &[(C64, &str)]) -> Self {
        let mut amps = [ZERO; 8];
        for (c, bits) in terms {
            amps[parse_ket(bits, 3)] += *c;
        }
        Self { amps }
    }

    pub fn basis(index: usize) -> Self {
        let mut amps = [ZERO; 8];
        amps[index] = ONE;
        Self { amps }
    }

    /// `(|000> + |111>)/sqrt(2)`.
    pub fn ghz() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::from_kets(&[(h, "000"), (h, "111")])
    }

    /// `(|100> + |010> + |001>)/sqrt(3)`.
    pub fn w() -> Self {
        let t = C64::new(1.0 / 3f64.sqrt(), 0.0);
        Self::from_kets(&[(t, "100"), (t, "010"), (t, "001")])
    }

    pub fn amps(&self) -> &[C64; 8] {
        &self.amps
    }

    #[inline]
    pub fn amp(&self, i1: usize, i2: usize, i3: usize) -> C64 {
        self.amps[4 * (i1 & 1) + 2 * (i2 & 1) + (i3 & 1)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORMALIZED_TOL
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        if n < ZERO_NORM_SQR {
            return Err(Error::ZeroState);
        }
        let s = 1.0 / n.sqrt();
        Ok(Self {
            amps: self.amps.map(|a| a * s),
        })
    }

    pub fn scale(&self, lambda: C64) -> Self {
        Self {
            amps: self.amps.map(|a| a * lambda),
        }
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: C64, other: &PureState3, beta: C64) -> Self {
        let mut amps = [ZERO; 8];
        for (k, slot) in amps.iter_mut().enumerate() {
            *slot = alpha * self.amps[k] + beta * other.amps[k];
        }
        Self { amps }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState3) -> C64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|self><self|` as an 8x8 matrix (no normalization applied).
    pub fn outer(&self) -> Matrix8 {
        Matrix8::from_fn(|r, c| self.amps[r] * self.amps[c].conj())
    }
}

/// An 8x8 three-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState3 {
    rho: Matrix8,
}

/// Eigenpairs of a density matrix, sorted by descending eigenvalue.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: [f64; 8],
    pub vectors: Vec<PureState3>,
}

impl MixedState3 {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(rho: Matrix8) -> Result<Self> {
        if rho.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let herm_dev = (rho - rho.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm_dev > 1e-12 {
            return Err(Error::NotDensityMatrix(format!(
                "not Hermitian (deviation {herm_dev:e})"
            )));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::NotDensityMatrix(format!("trace {tr}")));
        }
        let state = Self { rho };
        let spec = state.spectrum();
        if spec.values[7] < -1e-10 {
            return Err(Error::NotDensityMatrix(format!(
                "negative eigenvalue {:e}",
                spec.values[7]
            )));
        }
        Ok(state)
    }

    pub fn from_pure(psi: &PureState3) -> Result<Self> {
        let psi = psi.normalize()?;
        Ok(Self { rho: psi.outer() })
    }

    /// `sum_k w_k |psi_k><psi_k|` with each `psi_k` normalized first.
    pub fn mixture(members: &[(f64, PureState3)]) -> Result<Self> {
        let mut rho = Matrix8::zeros();
        for (w, psi) in members {
            rho += psi.normalize()?.outer() * C64::new(*w, 0.0);
        }
        Self::new(rho)
    }

    pub fn matrix(&self) -> &Matrix8 {
        &self.rho
    }

    pub fn spectrum(&self) -> Spectrum {
        let eig = SymmetricEigen::new(self.rho);
        let mut order: Vec<usize> = (0..8).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let mut values = [0.0; 8];
        let mut vectors = Vec::with_capacity(8);
        for (slot, &k) in order.iter().enumerate() {
            values[slot] = eig.eigenvalues[k];
            let col = eig.eigenvectors.column(k);
            let mut amps = [ZERO; 8];
            for (r, a) in amps.iter_mut().enumerate() {
                *a = col[r];
            }
            vectors.push(fix_phase(PureState3 { amps }));
        }
        Spectrum { values, vectors }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &MixedState3) -> f64 {
        (self.rho - other.rho)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Rotates the global phase so that the first component with modulus above
/// `1e-12` is real and positive.
pub(crate) fn fix_phase(psi: PureState3) -> PureState3 {
    match psi.amps.iter().find(|a| a.norm() > 1e-12) {
        Some(a) => {
            let ph = a.conj() / a.norm();
            psi.scale(ph)
        }
        None => psi,
    }
}

/// Largest eigenvalue index that may be nonzero in rank-2 workflows.
pub const RANK_TOL: f64 = 1e-10;

/// Purifies a rank-<=2 density matrix onto an ancilla appended as qubit A4:
/// `sqrt(l0)|v0>|0> + e^{i theta} sqrt(l1)|v1>|1>` with `l0 >= l1`.
pub fn purify_rank2(rho: &MixedState3, theta: f64) -> Result<PureState4> {
    if !theta.is_finite() {
        return Err(Error::NonFinite);
    }
    let spec = rho.spectrum();
    if spec.values[2] >= RANK_TOL {
        return Err(Error::RankTooHigh(spec.values[2]));
    }
    let l0 = spec.values[0].max(0.0);
    let l1 = spec.values[1].max(0.0);
    let b0 = spec.vectors[0].scale(C64::new(l0.sqrt(), 0.0));
    let b1 = spec.vectors[1].scale(C64::from_polar(l1.sqrt(), theta));
    PureState4::from_branches(&b0, &b1).normalize()
}

/// A 2x2 unitary acting on one qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct Qubit2Unitary {
    u: [[C64; 2]; 2],
    special: bool,
}

const UNITARY_TOL: f64 = 1e-12;

impl Qubit2Unitary {
    pub fn new(u: [[C64; 2]; 2]) -> Result<Self> {
        if u.iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let mut dev: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let e: C64 = (0..2).map(|k| u[r][k] * u[c][k].conj()).sum();
                let target = if r == c { 1.0 } else { 0.0 };
                dev = dev.max((e - target).norm());
            }
        }
        if dev > UNITARY_TOL {
            return Err(Error::NotUnitary(dev));
        }
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        Ok(Self {
            u,
            special: (det - ONE).norm() <= UNITARY_TOL,
        })
    }

    pub fn identity() -> Self {
        Self {
            u: [[ONE, ZERO], [ZERO, ONE]],
            special: true,
        }
    }

    /// Pauli X.
    pub fn bit_flip() -> Self {
        Self {
            u: [[ZERO, ONE], [ONE, ZERO]],
            special: false,
        }
    }

    pub fn matrix(&self) -> &[[C64; 2]; 2] {
        &self.u
    }

    pub fn is_special(&self) -> bool {
        self.special
    }

    pub fn det(&self) -> C64 {
        self.u[0][0] * self.u[1][1] - self.u[0][1] * self.u[1][0]
    }
}

/// `U(x) = [[1, -x*], [x, 1]] / sqrt(1 + |x|^2)`.
pub fn u_of_x(x: C64) -> Result<Qubit2Unitary> {
    if !x.re.is_finite() || !x.im.is_finite() {
        return Err(Error::NonFinite);
    }
    let s = 1.0 / (1.0 + x.norm_sqr()).sqrt();
    let u = [[C64::new(s, 0.0), -x.conj() * s], [x * s, C64::new(s, 0.0)]];
    Ok(Qubit2Unitary { u, special: true })
}

fn gaussian_c64(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

/// Normalized state with independent complex Gaussian amplitudes.
pub fn random_state(seed: u64) -> PureState4 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amps = [ZERO; 16];
    for a in amps.iter_mut() {
        *a = gaussian_c64(&mut rng);
    }
    PureState4 { amps }
        .normalize()
        .expect("Gaussian draw with zero norm")
}

fn random_unitary_from(rng: &mut ChaCha8Rng) -> [[C64; 2]; 2] {
    // Gram-Schmidt on the columns of a complex Gaussian matrix.
    let a = [gaussian_c64(rng), gaussian_c64(rng)];
    let b = [gaussian_c64(rng), gaussian_c64(rng)];
    let na = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt();
    let e0 = [a[0] / na, a[1] / na];
    let proj = e0[0].conj() * b[0] + e0[1].conj() * b[1];
    let r = [b[0] - proj * e0[0], b[1] - proj * e0[1]];
    let nr = (r[0].norm_sqr() + r[1].norm_sqr()).sqrt();
    let e1 = [r[0] / nr, r[1] / nr];
    [[e0[0], e1[0]], [e0[1], e1[1]]]
}

/// Haar-like random unitary with arbitrary determinant phase.
pub fn random_unitary(seed: u64) -> Qubit2Unitary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unitary_from(&mut rng);
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    Qubit2Unitary {
        u,
        special: (det - ONE).norm() <= UNITARY_TOL,
    }
}

/// Random unitary rescaled to determinant one.
pub fn random_special_unitary(seed: u64) -> Qubit2Unitary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unitary_from(&mut rng);
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    let ph = C64::from_polar(1.0, -det.arg() / 2.0);
    Qubit2Unitary {
        u: u.map(|row| row.map(|z| z * ph)),
        special: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn max_diff4(a: &PureState4, b: &PureState4) -> f64 {
        a.amps()
            .iter()
            .zip(b.amps())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn normalize_examples() {
        let s = PureState4::basis(0);
        assert_eq!(s.normalize().unwrap(), s);

        let all = PureState4::new([ONE; 16]).normalize().unwrap();
        for a in all.amps() {
            assert!((a - c(0.25, 0.0)).norm() < 1e-15);
        }

        assert_eq!(
            PureState4::new([ZERO; 16]).normalize(),
            Err(Error::ZeroState)
        );
        let tiny = PureState4::new([c(1e-15, 0.0); 16]);
        assert_eq!(tiny.normalize(), Err(Error::ZeroState));
    }

    #[test]
    fn normalize_keeps_global_phase() {
        let s = PureState4::basis(3).scale(c(0.0, 2.0));
        let n = s.normalize().unwrap();
        assert!((n.amps()[3] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn u_of_x_examples() {
        let u0 = u_of_x(ZERO).unwrap();
        assert_eq!(u0.matrix(), Qubit2Unitary::identity().matrix());

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u1 = u_of_x(ONE).unwrap();
        let want = [[c(h, 0.0), c(-h, 0.0)], [c(h, 0.0), c(h, 0.0)]];
        let got = u1.matrix().iter().flatten();
        for (g, w) in got.zip(want.iter().flatten()) {
            assert!((g - w).norm() < 1e-15);
        }

        let ui = u_of_x(c(0.0, 1.0)).unwrap();
        let want = [[c(h, 0.0), c(0.0, h)], [c(0.0, h), c(h, 0.0)]];
        let got = ui.matrix().iter().flatten();
        for (g, w) in got.zip(want.iter().flatten()) {
            assert!((g - w).norm() < 1e-15);
        }
        assert!(ui.is_special());
        assert!((ui.det() - ONE).norm() < 1e-15);

        assert_eq!(u_of_x(c(f64::NAN, 0.0)), Err(Error::NonFinite));
        assert_eq!(u_of_x(c(0.0, f64::INFINITY)), Err(Error::NonFinite));
    }

    #[test]
    fn local_unitary_examples() {
        let s = random_state(11);
        for q in 1..=4 {
            let t = s
                .apply_local_unitary(q, &Qubit2Unitary::identity())
                .unwrap();
            assert_eq!(t, s);
        }
        let t = s.apply_local_unitary(4, &u_of_x(ZERO).unwrap()).unwrap();
        assert!(max_diff4(&s, &t) < 1e-15);

        let flipped = PureState4::ghz()
            .apply_local_unitary(4, &Qubit2Unitary::bit_flip())
            .unwrap();
        let h = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let want = PureState4::from_kets(&[(h, "0001"), (h, "1110")]);
        assert!(max_diff4(&flipped, &want) < 1e-15);

        assert_eq!(
            s.apply_local_unitary(0, &Qubit2Unitary::identity()),
            Err(Error::BadQubitIndex(0))
        );
        assert_eq!(
            s.apply_local_unitary(5, &Qubit2Unitary::identity()),
            Err(Error::BadQubitIndex(5))
        );
    }

    #[test]
    fn not_unitary_rejected() {
        let m = [[ONE, ONE], [ZERO, ONE]];
        assert!(matches!(Qubit2Unitary::new(m), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn permutation_examples() {
        let s = random_state(5);
        assert_eq!(s.permute_qubits([1, 2, 3, 4]).unwrap(), s);

        let k = PureState4::from_kets(&[(ONE, "0010")]);
        let swapped = k.permute_qubits([1, 2, 4, 3]).unwrap();
        assert_eq!(swapped, PureState4::from_kets(&[(ONE, "0001")]));

        // [2,3,4,1] followed by its inverse [4,1,2,3]
        let p = s.permute_qubits([2, 3, 4, 1]).unwrap();
        assert_eq!(p.permute_qubits([4, 1, 2, 3]).unwrap(), s);

        assert!(matches!(
            s.permute_qubits([1, 1, 2, 3]),
            Err(Error::BadPermutation(_))
        ));
        assert!(matches!(
            s.permute_qubits([0, 1, 2, 3]),
            Err(Error::BadPermutation(_))
        ));
    }

    #[test]
    fn partial_trace_examples() {
        let (rho, p0, p1) = PureState4::basis(0).partial_trace_last().unwrap();
        assert_eq!((p0, p1), (1.0, 0.0));
        let want = MixedState3::from_pure(&PureState3::basis(0)).unwrap();
        assert!(rho.max_abs_diff(&want) < 1e-15);

        let (rho, p0, p1) = PureState4::ghz().partial_trace_last().unwrap();
        assert!((p0 - 0.5).abs() < 1e-15 && (p1 - 0.5).abs() < 1e-15);
        let want =
            MixedState3::mixture(&[(0.5, PureState3::basis(0)), (0.5, PureState3::basis(7))])
                .unwrap();
        assert!(rho.max_abs_diff(&want) < 1e-15);

        let unnormalized = PureState4::basis(0).scale(c(2.0, 0.0));
        assert!(matches!(
            unnormalized.partial_trace_last(),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn density_validation() {
        let mut m = Matrix8::zeros();
        m[(0, 0)] = c(0.5, 0.0);
        assert!(matches!(
            MixedState3::new(m),
            Err(Error::NotDensityMatrix(_))
        ));
        m[(1, 1)] = c(0.5, 0.0);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(
            MixedState3::new(m),
            Err(Error::NotDensityMatrix(_))
        ));
        m[(1, 0)] = c(0.1, 0.0);
        assert!(MixedState3::new(m).is_ok());
        // indefinite
        m[(0, 1)] = c(0.9, 0.0);
        m[(1, 0)] = c(0.9, 0.0);
        assert!(matches!(
            MixedState3::new(m),
            Err(Error::NotDensityMatrix(_))
        ));
    }

    #[test]
    fn purify_pure_input() {
        let rho = MixedState3::from_pure(&PureState3::basis(0)).unwrap();
        for theta in [0.0, 1.3, -2.0] {
            let psi = purify_rank2(&rho, theta).unwrap();
            let overlap = psi.amps()[0].norm();
            assert!((overlap - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn purify_ghz_marginal() {
        let rho = MixedState3::mixture(&[(0.5, PureState3::basis(0)), (0.5, PureState3::basis(7))])
            .unwrap();
        let psi = purify_rank2(&rho, 0.0).unwrap();
        let (back, p0, p1) = psi.partial_trace_last().unwrap();
        assert!(back.max_abs_diff(&rho) < 1e-12);
        assert!((p0 - 0.5).abs() < 1e-12 && (p1 - 0.5).abs() < 1e-12);
        // only |0000>,|1110> or |1111>,|0000>-type supports are possible
        let support: Vec<usize> = (0..16).filter(|&k| psi.amps()[k].norm() > 1e-9).collect();
        assert_eq!(support.len(), 2);
    }

    #[test]
    fn purify_rejects_rank_three() {
        let rho = MixedState3::mixture(&[
            (0.4, PureState3::basis(0)),
            (0.3, PureState3::basis(1)),
            (0.3, PureState3::basis(2)),
        ])
        .unwrap();
        assert!(matches!(
            purify_rank2(&rho, 0.0),
            Err(Error::RankTooHigh(_))
        ));
    }

    #[test]
    fn random_generators_are_deterministic() {
        assert_eq!(random_state(42), random_state(42));
        assert_ne!(random_state(42), random_state(43));
        assert!((random_state(42).norm_sqr() - 1.0).abs() < 1e-12);
        let u = random_special_unitary(9);
        assert_eq!(u, random_special_unitary(9));
        assert!((u.det() - ONE).norm() < 1e-12);
        assert!(Qubit2Unitary::new(*u.matrix()).is_ok());
    }
}

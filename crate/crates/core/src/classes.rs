//! Representatives of the nine four-qubit SLOCC classes and the closed-form
//! three-tangle bounds quoted for them, together with earlier literature values.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::invariants::Triple;
use crate::qstate::{PureState4, C64, ONE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
}

impl ClassId {
    pub const ALL: [ClassId; 9] = [
        ClassId::I,
        ClassId::II,
        ClassId::III,
        ClassId::IV,
        ClassId::V,
        ClassId::VI,
        ClassId::VII,
        ClassId::VIII,
        ClassId::IX,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ClassId::I => "I",
            ClassId::II => "II",
            ClassId::III => "III",
            ClassId::IV => "IV",
            ClassId::V => "V",
            ClassId::VI => "VI",
            ClassId::VII => "VII",
            ClassId::VIII => "VIII",
            ClassId::IX => "IX",
        }
    }

    /// Which of `(a, b, c, d)` the class takes.
    pub fn params(self) -> [bool; 4] {
        match self {
            ClassId::I => [true, true, true, true],
            ClassId::II => [true, false, true, true],
            ClassId::III | ClassId::IV => [true, true, false, false],
            ClassId::V | ClassId::VI => [true, false, false, false],
            ClassId::VII | ClassId::VIII | ClassId::IX => [false; 4],
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ClassId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        let by_num = t.parse::<usize>().ok().and_then(|n| n.checked_sub(1));
        ClassId::ALL
            .iter()
            .enumerate()
            .find(|(k, id)| id.label() == t || by_num == Some(*k))
            .map(|(_, id)| *id)
            .ok_or_else(|| Error::Parse(format!("unknown class {s:?}")))
    }
}

/// A class id with its complex parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassSpec {
    id: ClassId,
    a: C64,
    b: C64,
    c: C64,
    d: C64,
}

impl ClassSpec {
    /// Parameters not taken by the class must be `None`, the others `Some`.
    pub fn new(
        id: ClassId,
        a: Option<C64>,
        b: Option<C64>,
        c: Option<C64>,
        d: Option<C64>,
    ) -> Result<Self> {
        let given = [a, b, c, d];
        if given
            .iter()
            .zip(id.params())
            .any(|(p, want)| p.is_some() != want)
        {
            let names: Vec<&str> = ["a", "b", "c", "d"]
                .iter()
                .zip(id.params())
                .filter(|(_, w)| *w)
                .map(|(n, _)| *n)
                .collect();
            return Err(Error::BadArity(format!(
                "{id}: expects parameters [{}]",
                names.join(", ")
            )));
        }
        if given
            .iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let z = C64::default();
        Ok(Self {
            id,
            a: a.unwrap_or(z),
            b: b.unwrap_or(z),
            c: c.unwrap_or(z),
            d: d.unwrap_or(z),
        })
    }

    pub fn id(&self) -> ClassId {
        self.id
    }

    /// `(name, value)` for the parameters the class takes.
    pub fn params(&self) -> Vec<(&'static str, C64)> {
        ["a", "b", "c", "d"]
            .into_iter()
            .zip([self.a, self.b, self.c, self.d])
            .zip(self.id.params())
            .filter(|(_, used)| *used)
            .map(|(p, _)| p)
            .collect()
    }

    /// The class ket, normalized.
    pub fn representative(&self) -> Result<PureState4> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let i = C64::new(0.0, 1.0);
        let h = |z: C64| z / 2.0;
        let kets: Vec<(C64, &str)> = match self.id {
            ClassId::I => vec![
                (h(a + d), "0000"),
                (h(a + d), "1111"),
                (h(a - d), "0011"),
                (h(a - d), "1100"),
                (h(b + c), "0101"),
                (h(b + c), "1010"),
                (h(b - c), "0110"),
                (h(b - c), "1001"),
            ],
            ClassId::II => vec![
                (h(a + d), "0000"),
                (h(a + d), "1111"),
                (h(a - d), "0011"),
                (h(a - d), "1100"),
                (c, "0101"),
                (c, "1010"),
                (ONE, "0110"),
            ],
            ClassId::III => vec![
                (a, "0000"),
                (a, "1111"),
                (b, "0101"),
                (b, "1010"),
                (ONE, "0011"),
                (ONE, "0110"),
            ],
            ClassId::IV => {
                let r = i / 2f64.sqrt();
                vec![
                    (a, "0000"),
                    (a, "1111"),
                    (h(a + b), "1010"),
                    (h(a + b), "0101"),
                    (h(a - b), "0110"),
                    (h(a - b), "1001"),
                    (r, "0010"),
                    (r, "0001"),
                    (r, "0111"),
                    (r, "1011"),
                ]
            }
            ClassId::V => vec![
                (a, "0000"),
                (a, "1111"),
                (a, "0101"),
                (a, "1010"),
                (i, "0001"),
                (ONE, "0110"),
                (-i, "1011"),
            ],
            ClassId::VI => vec![
                (a, "0000"),
                (a, "1111"),
                (ONE, "0011"),
                (ONE, "0101"),
                (ONE, "0110"),
            ],
            ClassId::VII => vec![(ONE, "0000"), (ONE, "0101"), (ONE, "1000"), (ONE, "1110")],
            ClassId::VIII => vec![(ONE, "0000"), (ONE, "1011"), (ONE, "1101"), (ONE, "1110")],
            ClassId::IX => vec![(ONE, "0000"), (ONE, "0111")],
        };
        PureState4::from_kets(&kets).normalize()
    }
}

/// A closed-form value quoted for a (class, triple) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PaperBound {
    /// The three-tangle is stated to vanish.
    Zero,
    Value(f64),
    NotPrinted,
}

impl PaperBound {
    pub fn value(self) -> Option<f64> {
        match self {
            PaperBound::Zero => Some(0.0),
            PaperBound::Value(v) => Some(v),
            PaperBound::NotPrinted => None,
        }
    }
}

fn class_two_parts(s: &ClassSpec) -> (f64, f64, f64) {
    let (a, c, d) = (s.a, s.c, s.d);
    let n = a.norm_sqr() + d.norm_sqr() + 2.0 * c.norm_sqr() + 1.0;
    let t = (c * (a * a - d * d)).norm();
    let u = ((a * a - c * c) * (d * d - c * c)).norm();
    (t, u, n * n)
}

fn class_three_parts(s: &ClassSpec) -> (f64, f64, f64) {
    let (a, b) = (s.a, s.b);
    let m = a.norm_sqr() + b.norm_sqr() + 1.0;
    ((a * b).norm(), (a * a - b * b).norm_sqr(), m)
}

fn class_four(s: &ClassSpec) -> f64 {
    let (a, b) = (s.a, s.b);
    2.0 * (a * a - b * b).norm() / (2.0 + 3.0 * a.norm_sqr() + b.norm_sqr()).powi(2)
}

fn class_five_denominator(s: &ClassSpec) -> f64 {
    (3.0 + 4.0 * s.a.norm_sqr()).powi(2)
}

pub fn paper_bound(spec: &ClassSpec, triple: Triple) -> PaperBound {
    use PaperBound::*;
    match spec.id {
        ClassId::I | ClassId::VI => Zero,
        ClassId::II => {
            let (t, u, n2) = class_two_parts(spec);
            if t + u == 0.0 {
                Value(0.0)
            } else {
                Value(4.0 * t / n2 * (t - u).abs() / (t + u))
            }
        }
        ClassId::III => match triple {
            Triple::A1A2A4 => {
                let (ab, diff2, m) = class_three_parts(spec);
                let den = 4.0 * ab + diff2;
                if den == 0.0 {
                    Value(0.0)
                } else {
                    Value(4.0 * ab / (m * m) * (4.0 * ab - diff2).abs() / den)
                }
            }
            _ => Zero,
        },
        ClassId::IV => Value(class_four(spec)),
        ClassId::V => {
            let den = class_five_denominator(spec);
            match triple {
                Triple::A1A2A3 | Triple::A1A3A4 => Value(16.0 * spec.a.norm_sqr() / den),
                Triple::A1A2A4 => Value(4.0 / den / (1.0 + 64.0 * spec.a.norm_sqr().powi(2))),
            }
        }
        ClassId::VII | ClassId::VIII => Value(0.25),
        ClassId::IX => NotPrinted,
    }
}

/// Values for the triple A2A3A4, which excludes the focus qubit. Stored as
/// reference data only; nothing in this crate computes them.
pub fn focus_excluded_fixture(id: ClassId) -> Option<f64> {
    match id {
        ClassId::VII | ClassId::VIII => Some(0.0),
        ClassId::IX => Some(0.25),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiteratureSource {
    /// Monogamy-based bounds from Regula et al.
    Regu,
    /// Convex-roof values from Osterloh.
    Osterloh,
}

impl LiteratureSource {
    pub fn label(self) -> &'static str {
        match self {
            LiteratureSource::Regu => "regu",
            LiteratureSource::Osterloh => "osterloh",
        }
    }
}

impl FromStr for LiteratureSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "regu" => Ok(LiteratureSource::Regu),
            "osterloh" => Ok(LiteratureSource::Osterloh),
            other => Err(Error::Parse(format!("unknown literature source {other:?}"))),
        }
    }
}

pub fn literature_bound(spec: &ClassSpec, triple: Triple, source: LiteratureSource) -> Result<f64> {
    use LiteratureSource::*;
    match (spec.id, source, triple) {
        (ClassId::II, Regu, _) => {
            let (t, _, n2) = class_two_parts(spec);
            Ok(4.0 * t / n2)
        }
        (ClassId::III, Regu, Triple::A1A2A4) => {
            let (ab, _, m) = class_three_parts(spec);
            Ok(4.0 * ab / (m * m))
        }
        (ClassId::III, Osterloh, Triple::A1A2A4) => {
            let (ab, diff2, m) = class_three_parts(spec);
            if ab == 0.0 {
                return Ok(0.0);
            }
            let root = (2.0 * ab.sqrt() / m * (4.0 * ab - diff2) / (4.0 * ab)).max(0.0);
            Ok(root * root)
        }
        (ClassId::IV, Regu, _) => Ok(class_four(spec)),
        (ClassId::V, Regu | Osterloh, Triple::A1A2A3 | Triple::A1A3A4) => {
            Ok(16.0 * spec.a.norm_sqr() / class_five_denominator(spec))
        }
        (ClassId::V, Osterloh, Triple::A1A2A4) => {
            let a2 = spec.a.norm_sqr();
            Ok(4.0 / class_five_denominator(spec) * (1.0 + 64.0 * a2)
                / (1.0 + 64.0 * a2 * a2).powi(2))
        }
        _ => Err(Error::NotPrinted),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::best_bound;
    use crate::invariants::{invariant_set, Traced};

    fn r(x: f64) -> Option<C64> {
        Some(C64::new(x, 0.0))
    }

    fn max_diff(a: &PureState4, b: &PureState4) -> f64 {
        a.amps()
            .iter()
            .zip(b.amps())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn representatives() {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let nine = ClassSpec::new(ClassId::IX, None, None, None, None).unwrap();
        let want = PureState4::from_kets(&[(h, "0000"), (h, "0111")]);
        assert!(max_diff(&nine.representative().unwrap(), &want) < 1e-15);

        let one = ClassSpec::new(ClassId::I, r(1.0), r(0.0), r(0.0), r(1.0)).unwrap();
        assert!(max_diff(&one.representative().unwrap(), &PureState4::ghz()) < 1e-15);

        let five = ClassSpec::new(ClassId::V, r(0.0), None, None, None).unwrap();
        let t = C64::new(1.0 / 3f64.sqrt(), 0.0);
        let i = C64::new(0.0, 1.0);
        let want = PureState4::from_kets(&[(i * t, "0001"), (t, "0110"), (-i * t, "1011")]);
        assert!(max_diff(&five.representative().unwrap(), &want) < 1e-15);

        // collapses to |0110>, still a valid state
        let two = ClassSpec::new(ClassId::II, r(0.0), None, r(0.0), r(0.0)).unwrap();
        assert_eq!(two.representative().unwrap(), PureState4::basis(6));
    }

    #[test]
    fn class_two_norm() {
        let s = ClassSpec::new(ClassId::II, r(2.0), None, r(1.0), r(1.0)).unwrap();
        let raw = PureState4::from_kets(&[
            (C64::new(1.5, 0.0), "0000"),
            (C64::new(1.5, 0.0), "1111"),
            (C64::new(0.5, 0.0), "0011"),
            (C64::new(0.5, 0.0), "1100"),
            (ONE, "0101"),
            (ONE, "1010"),
            (ONE, "0110"),
        ]);
        assert!((raw.norm_sqr() - 8.0).abs() < 1e-15);
        assert!(max_diff(&s.representative().unwrap(), &raw.normalize().unwrap()) < 1e-15);
    }

    #[test]
    fn arity() {
        assert!(matches!(
            ClassSpec::new(ClassId::III, r(1.0), None, None, None),
            Err(Error::BadArity(_))
        ));
        assert!(matches!(
            ClassSpec::new(ClassId::VII, r(1.0), None, None, None),
            Err(Error::BadArity(_))
        ));
        assert!(ClassSpec::new(ClassId::VII, None, None, None, None).is_ok());
        assert_eq!("viii".parse::<ClassId>(), Ok(ClassId::VIII));
        assert_eq!("4".parse::<ClassId>(), Ok(ClassId::IV));
    }

    #[test]
    fn printed_values() {
        let two = ClassSpec::new(ClassId::II, r(2.0), None, r(1.0), r(1.0)).unwrap();
        for t in Triple::ALL {
            let v = paper_bound(&two, t).value().unwrap();
            assert!((v - 3.0 / 16.0).abs() < 1e-15);
        }
        let five = ClassSpec::new(ClassId::V, r(1.0), None, None, None).unwrap();
        assert!((paper_bound(&five, Triple::A1A2A3).value().unwrap() - 16.0 / 49.0).abs() < 1e-15);
        let nine = ClassSpec::new(ClassId::IX, None, None, None, None).unwrap();
        assert_eq!(paper_bound(&nine, Triple::A1A2A3), PaperBound::NotPrinted);
        assert_eq!(focus_excluded_fixture(ClassId::IX), Some(0.25));
        assert_eq!(focus_excluded_fixture(ClassId::VII), Some(0.0));
    }

    #[test]
    fn literature_values() {
        let three = ClassSpec::new(ClassId::III, r(1.0), r(1.0), None, None).unwrap();
        let regu = literature_bound(&three, Triple::A1A2A4, LiteratureSource::Regu).unwrap();
        assert!((regu - 4.0 / 9.0).abs() < 1e-15);
        let ost = literature_bound(&three, Triple::A1A2A4, LiteratureSource::Osterloh).unwrap();
        assert!((ost - 4.0 / 9.0).abs() < 1e-15);
        let five = ClassSpec::new(ClassId::V, r(1.0), None, None, None).unwrap();
        let ost = literature_bound(&five, Triple::A1A2A4, LiteratureSource::Osterloh).unwrap();
        assert!((ost - 4.0 / (49.0 * 65.0)).abs() < 1e-15);
        assert_eq!(
            literature_bound(&three, Triple::A1A2A3, LiteratureSource::Regu),
            Err(Error::NotPrinted)
        );
    }

    #[test]
    fn fixed_classes_bounds() {
        for id in [ClassId::VII, ClassId::VIII] {
            let s = ClassSpec::new(id, None, None, None, None)
                .unwrap()
                .representative()
                .unwrap();
            for t in Triple::ALL {
                let b = best_bound(&s, t).unwrap().best;
                assert!((b - 0.25).abs() < 1e-12, "{id} {t}: {b}");
            }
        }
        let s = ClassSpec::new(ClassId::IX, None, None, None, None)
            .unwrap()
            .representative()
            .unwrap();
        for t in Traced::ALL {
            assert_eq!(invariant_set(&s, t).unwrap().max_abs(), 0.0);
        }
    }

    #[test]
    fn class_six_vanishes() {
        let s = ClassSpec::new(ClassId::VI, Some(C64::new(0.9, 0.4)), None, None, None)
            .unwrap()
            .representative()
            .unwrap();
        for t in Triple::ALL {
            assert!(best_bound(&s, t).unwrap().best < 1e-10);
        }
    }
}

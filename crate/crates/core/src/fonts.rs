//! Determinants of negativity fonts with qubit A1 as the focus qubit.

use serde_json::{Map, Value};

use crate::qstate::{PureState3, PureState4, C64};

/// Fonts of a three-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FontSet3 {
    /// `D^{00}_{(A3)_{i3}}`
    pub d2way: [C64; 2],
    /// `D^{00 i3}`
    pub d3way: [C64; 2],
}

/// Fonts of a four-qubit state. Array indices follow the field docs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FontSet4 {
    /// `[i3][i4]`: `D^{00}_{(A3)_{i3}(A4)_{i4}}`
    pub d2_a3a4: [[C64; 2]; 2],
    /// `[i2][i4]`: `D^{00}_{(A2)_{i2}(A4)_{i4}}`
    pub d2_a2a4: [[C64; 2]; 2],
    /// `[i2][i3]`: `D^{00}_{(A2)_{i2}(A3)_{i3}}`
    pub d2_a2a3: [[C64; 2]; 2],
    /// `[i3][i4]`: `D^{00 i3}_{(A4)_{i4}}`
    pub d3_a4: [[C64; 2]; 2],
    /// `[i4][i3]`: `D^{00 i4}_{(A3)_{i3}}`
    pub d3_a3: [[C64; 2]; 2],
    /// `[i4][i2]`: `D^{00 i4}_{(A2)_{i2}}`
    pub d3_a2: [[C64; 2]; 2],
    /// `[i3][i4]`: `D^{00 i3 i4}`
    pub d4: [[C64; 2]; 2],
}

pub fn compute_fonts3(s: &PureState3) -> FontSet3 {
    let a = |i: usize, j: usize, k: usize| s.amp(i, j, k);
    let mut d2way = [C64::default(); 2];
    let mut d3way = [C64::default(); 2];
    for i3 in 0..2 {
        d2way[i3] = a(0, 0, i3) * a(1, 1, i3) - a(1, 0, i3) * a(0, 1, i3);
        d3way[i3] = a(0, 0, i3) * a(1, 1, i3 ^ 1) - a(1, 0, i3) * a(0, 1, i3 ^ 1);
    }
    FontSet3 { d2way, d3way }
}

pub fn compute_fonts4(s: &PureState4) -> FontSet4 {
    let a = |i1: usize, i2: usize, i3: usize, i4: usize| s.amp(i1, i2, i3, i4);
    let z = [[C64::default(); 2]; 2];
    let mut f = FontSet4 {
        d2_a3a4: z,
        d2_a2a4: z,
        d2_a2a3: z,
        d3_a4: z,
        d3_a3: z,
        d3_a2: z,
        d4: z,
    };
    for x in 0..2 {
        for y in 0..2 {
            let (i3, i4) = (x, y);
            f.d2_a3a4[i3][i4] =
                a(0, 0, i3, i4) * a(1, 1, i3, i4) - a(1, 0, i3, i4) * a(0, 1, i3, i4);
            f.d3_a4[i3][i4] =
                a(0, 0, i3, i4) * a(1, 1, i3 ^ 1, i4) - a(1, 0, i3, i4) * a(0, 1, i3 ^ 1, i4);
            f.d3_a3[i4][i3] =
                a(0, 0, i3, i4) * a(1, 1, i3, i4 ^ 1) - a(1, 0, i3, i4) * a(0, 1, i3, i4 ^ 1);
            f.d4[i3][i4] = a(0, 0, i3, i4) * a(1, 1, i3 ^ 1, i4 ^ 1)
                - a(1, 0, i3, i4) * a(0, 1, i3 ^ 1, i4 ^ 1);

            let (i2, i4) = (x, y);
            f.d2_a2a4[i2][i4] =
                a(0, i2, 0, i4) * a(1, i2, 1, i4) - a(1, i2, 0, i4) * a(0, i2, 1, i4);
            f.d3_a2[i4][i2] =
                a(0, i2, 0, i4) * a(1, i2, 1, i4 ^ 1) - a(1, i2, 0, i4) * a(0, i2, 1, i4 ^ 1);

            let (i2, i3) = (x, y);
            f.d2_a2a3[i2][i3] =
                a(0, i2, i3, 0) * a(1, i2, i3, 1) - a(1, i2, i3, 0) * a(0, i2, i3, 1);
        }
    }
    f
}

fn pair(z: C64) -> Value {
    Value::from(vec![z.re, z.im])
}

impl FontSet4 {
    /// All twenty determinants keyed by their `D` labels.
    pub fn labelled(&self) -> Vec<(String, C64)> {
        let mut out = Vec::with_capacity(28);
        for i in 0..2 {
            for j in 0..2 {
                out.push((format!("D^{{00}}_{{(A3){i}(A4){j}}}"), self.d2_a3a4[i][j]));
                out.push((format!("D^{{00}}_{{(A2){i}(A4){j}}}"), self.d2_a2a4[i][j]));
                out.push((format!("D^{{00}}_{{(A2){i}(A3){j}}}"), self.d2_a2a3[i][j]));
                out.push((format!("D^{{00{i}}}_{{(A4){j}}}"), self.d3_a4[i][j]));
                out.push((format!("D^{{00{i}}}_{{(A3){j}}}"), self.d3_a3[i][j]));
                out.push((format!("D^{{00{i}}}_{{(A2){j}}}"), self.d3_a2[i][j]));
                out.push((format!("D^{{00{i}{j}}}"), self.d4[i][j]));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in self.labelled() {
            m.insert(k, pair(v));
        }
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::random_state;

    // Generic font evaluator: a font is fixed by the bits of (A2, A3, A4) on
    // the "00" amplitude and on the "11" partner, with A1 flipped in between.
    fn font(s: &PureState4, lo: [usize; 3], hi: [usize; 3]) -> C64 {
        let a = |bits: [usize; 4]| s.amp(bits[0], bits[1], bits[2], bits[3]);
        a([0, lo[0], lo[1], lo[2]]) * a([1, hi[0], hi[1], hi[2]])
            - a([1, lo[0], lo[1], lo[2]]) * a([0, hi[0], hi[1], hi[2]])
    }

    fn brute(s: &PureState4) -> FontSet4 {
        let z = [[C64::default(); 2]; 2];
        let mut f = FontSet4 {
            d2_a3a4: z,
            d2_a2a4: z,
            d2_a2a3: z,
            d3_a4: z,
            d3_a3: z,
            d3_a2: z,
            d4: z,
        };
        for x in 0..2 {
            for y in 0..2 {
                f.d2_a3a4[x][y] = font(s, [0, x, y], [1, x, y]);
                f.d3_a4[x][y] = font(s, [0, x, y], [1, 1 - x, y]);
                f.d3_a3[y][x] = font(s, [0, x, y], [1, x, 1 - y]);
                f.d4[x][y] = font(s, [0, x, y], [1, 1 - x, 1 - y]);
                f.d2_a2a4[x][y] = font3(s, x, y, false);
                f.d3_a2[y][x] = font3(s, x, y, true);
                f.d2_a2a3[x][y] = font4(s, x, y);
            }
        }
        f
    }

    // D^{00}_{(A2)i2(A4)i4} and D^{00 i4}_{(A2)i2}: A1 and A3 are the font pair.
    fn font3(s: &PureState4, i2: usize, i4: usize, flip4: bool) -> C64 {
        let j4 = if flip4 { 1 - i4 } else { i4 };
        s.amp(0, i2, 0, i4) * s.amp(1, i2, 1, j4) - s.amp(1, i2, 0, i4) * s.amp(0, i2, 1, j4)
    }

    // D^{00}_{(A2)i2(A3)i3}: A1 and A4 are the font pair.
    fn font4(s: &PureState4, i2: usize, i3: usize) -> C64 {
        s.amp(0, i2, i3, 0) * s.amp(1, i2, i3, 1) - s.amp(1, i2, i3, 0) * s.amp(0, i2, i3, 1)
    }

    fn all(f: &FontSet4) -> Vec<C64> {
        f.labelled().into_iter().map(|(_, v)| v).collect()
    }

    #[test]
    fn three_qubit_examples() {
        let f = compute_fonts3(&PureState3::basis(0));
        assert!(f.d2way.iter().chain(&f.d3way).all(|z| z.norm() == 0.0));

        let f = compute_fonts3(&PureState3::ghz());
        assert!((f.d3way[0] - C64::new(0.5, 0.0)).norm() < 1e-15);
        assert!(f.d3way[1].norm() < 1e-15);
        assert!(f.d2way.iter().all(|z| z.norm() < 1e-15));

        let f = compute_fonts3(&PureState3::w());
        assert!((f.d2way[0] - C64::new(-1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!(f.d2way[1].norm() < 1e-15);
        assert!(f.d3way.iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn four_qubit_examples() {
        let f = compute_fonts4(&PureState4::basis(0));
        assert!(all(&f).iter().all(|z| z.norm() == 0.0));

        let f = compute_fonts4(&PureState4::ghz());
        for (k, v) in f.labelled() {
            let want = if k == "D^{0000}" { 0.5 } else { 0.0 };
            assert!((v - C64::new(want, 0.0)).norm() < 1e-15, "{k}");
        }
    }

    #[test]
    fn brute_force_agreement() {
        let one = C64::new(1.0, 0.0);
        let (a, d, c) = (C64::new(2.0, 0.0), one, one);
        let g2 = PureState4::from_kets(&[
            ((a + d) / 2.0, "0000"),
            ((a + d) / 2.0, "1111"),
            ((a - d) / 2.0, "0011"),
            ((a - d) / 2.0, "1100"),
            (c, "0101"),
            (c, "1010"),
            (one, "0110"),
        ])
        .normalize()
        .unwrap();
        for s in [g2, random_state(1), random_state(2)] {
            let got = all(&compute_fonts4(&s));
            let want = all(&brute(&s));
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn quadratic_scaling() {
        let s = random_state(3);
        let l = C64::new(0.3, -1.7);
        let f = all(&compute_fonts4(&s));
        let g = all(&compute_fonts4(&s.scale(l)));
        for (x, y) in f.iter().zip(&g) {
            assert!((x * l * l - y).norm() < 1e-13);
        }
    }

    #[test]
    fn factorized_last_qubit_matches_three_qubit_fonts() {
        let phi = random_state(4).branches().0;
        let s = PureState4::from_branches(&phi, &PureState3::new([C64::default(); 8]));
        let f3 = compute_fonts3(&phi);
        let f4 = compute_fonts4(&s);
        for i3 in 0..2 {
            assert!((f4.d2_a3a4[i3][0] - f3.d2way[i3]).norm() < 1e-14);
            assert!((f4.d3_a4[i3][0] - f3.d3way[i3]).norm() < 1e-14);
            assert!(f4.d2_a3a4[i3][1].norm() < 1e-14);
            assert!(f4.d3_a4[i3][1].norm() < 1e-14);
            assert!(f4.d4[i3][0].norm() < 1e-14 && f4.d4[i3][1].norm() < 1e-14);
        }
    }

    #[test]
    fn json_keys() {
        let v = compute_fonts4(&PureState4::ghz()).to_json();
        let m = v.as_object().unwrap();
        assert_eq!(m.len(), 28);
        assert!(m.contains_key("D^{00}_{(A3)0(A4)1}"));
        assert!(m.contains_key("D^{0011}"));
    }
}

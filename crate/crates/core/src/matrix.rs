//! Independent 2x2 matrix oracle for the Pauli group.
//!
//! Entries are Gaussian integers, so all arithmetic is exact. The matrices
//! of Pauli words only ever have entries in {0, ±1, ±i}, but nothing here
//! relies on that; it is asserted by tests instead.

use std::fmt;

use crate::pauli::PauliElement;

/// Gaussian integer re + im*i.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

}

impl std::ops::Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re + o.re, self.im + o.im)
    }
}

impl std::ops::Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re - o.re, self.im - o.im)
    }
}

impl std::ops::Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl std::ops::Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

/// 2x2 matrix over the Gaussian integers, row major.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussMatrix {
    pub e: [[GaussInt; 2]; 2],
}

pub const MAT_IDENTITY: GaussMatrix = GaussMatrix {
    e: [[GaussInt::ONE, GaussInt::ZERO], [GaussInt::ZERO, GaussInt::ONE]],
};

/// X = ((0,1),(1,0))
pub const MAT_X: GaussMatrix = GaussMatrix {
    e: [[GaussInt::ZERO, GaussInt::ONE], [GaussInt::ONE, GaussInt::ZERO]],
};

/// Y = ((0,-i),(i,0))
pub const MAT_Y: GaussMatrix = GaussMatrix {
    e: [
        [GaussInt::ZERO, GaussInt::new(0, -1)],
        [GaussInt::I, GaussInt::ZERO],
    ],
};

/// Z = ((1,0),(0,-1))
pub const MAT_Z: GaussMatrix = GaussMatrix {
    e: [
        [GaussInt::ONE, GaussInt::ZERO],
        [GaussInt::ZERO, GaussInt::new(-1, 0)],
    ],
};

impl GaussMatrix {
    pub fn mul(&self, o: &GaussMatrix) -> GaussMatrix {
        let mut r = [[GaussInt::ZERO; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.e[i][0] * o.e[0][j] + self.e[i][1] * o.e[1][j];
            }
        }
        GaussMatrix { e: r }
    }

    pub fn add(&self, o: &GaussMatrix) -> GaussMatrix {
        let mut r = [[GaussInt::ZERO; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.e[i][j] + o.e[i][j];
            }
        }
        GaussMatrix { e: r }
    }

    pub fn sub(&self, o: &GaussMatrix) -> GaussMatrix {
        let mut r = [[GaussInt::ZERO; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.e[i][j] - o.e[i][j];
            }
        }
        GaussMatrix { e: r }
    }

    pub fn scale(&self, s: GaussInt) -> GaussMatrix {
        let mut r = [[GaussInt::ZERO; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.e[i][j] * s;
            }
        }
        GaussMatrix { e: r }
    }
}

impl fmt::Debug for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}+{}i, {}+{}i], [{}+{}i, {}+{}i]]",
            self.e[0][0].re, self.e[0][0].im,
            self.e[0][1].re, self.e[0][1].im,
            self.e[1][0].re, self.e[1][0].im,
            self.e[1][1].re, self.e[1][1].im
        )
    }
}

/// The matrix `i^c X^a Z^b` of a normal-form element.
pub fn to_matrix(g: PauliElement) -> GaussMatrix {
    let mut m = MAT_IDENTITY;
    for _ in 0..g.phase {
        m = m.scale(GaussInt::I);
    }
    if g.xbit == 1 {
        m = m.mul(&MAT_X);
    }
    if g.zbit == 1 {
        m = m.mul(&MAT_Z);
    }
    m
}

/// One named relation check, computed in the matrix representation.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs the defining-relation checks against a given generator triple.
///
/// Splitting the generators out lets tests feed a tampered triple and watch
/// the corresponding checks fail.
pub fn relation_checks(x: &GaussMatrix, y: &GaussMatrix, z: &GaussMatrix) -> CheckReport {
    let two_i = GaussInt::new(0, 2);
    let mut checks = Vec::new();
    let mut push = |name: &'static str, pass: bool| checks.push(Check { name, pass });

    // Commutators: XY - YX = 2iZ and cyclic.
    push("commutator_xy_eq_2iz", x.mul(y).sub(&y.mul(x)) == z.scale(two_i));
    push("commutator_yz_eq_2ix", y.mul(z).sub(&z.mul(y)) == x.scale(two_i));
    push("commutator_zx_eq_2iy", z.mul(x).sub(&x.mul(z)) == y.scale(two_i));

    // Squares.
    push("square_x", x.mul(x) == MAT_IDENTITY);
    push("square_y", y.mul(y) == MAT_IDENTITY);
    push("square_z", z.mul(z) == MAT_IDENTITY);

    // Normalization: X^2 + Y^2 + Z^2 = 3.
    let three = MAT_IDENTITY.scale(GaussInt::new(3, 0));
    push(
        "normalization_x2_y2_z2_eq_3",
        x.mul(x).add(&y.mul(y)).add(&z.mul(z)) == three,
    );

    // Products: XY = iZ and cyclic.
    push("product_xy_eq_iz", x.mul(y) == z.scale(GaussInt::I));
    push("product_yz_eq_ix", y.mul(z) == x.scale(GaussInt::I));
    push("product_zx_eq_iy", z.mul(x) == y.scale(GaussInt::I));

    // i = XYZ is central in the generated group.
    let i_mat = x.mul(y).mul(z);
    let group = generate(&[*x, *y, *z]);
    push(
        "xyz_central",
        group.iter().all(|g| i_mat.mul(g) == g.mul(&i_mat)),
    );
    push("group_order_16", group.len() == 16);

    // The three length-6 ring identities.
    let w = |ls: &[&GaussMatrix]| ls.iter().fold(MAT_IDENTITY, |m, l| m.mul(l));
    push("ring_word_xyxzyz", w(&[x, y, x, z, y, z]) == MAT_IDENTITY);
    push("ring_word_yzyxzx", w(&[y, z, y, x, z, x]) == MAT_IDENTITY);
    push("ring_word_zxzyxy", w(&[z, x, z, y, x, y]) == MAT_IDENTITY);

    CheckReport { checks }
}

/// Closure of a generating set under multiplication.
pub fn generate(gens: &[GaussMatrix]) -> Vec<GaussMatrix> {
    let mut elems = vec![MAT_IDENTITY];
    let mut frontier = vec![MAT_IDENTITY];
    while let Some(g) = frontier.pop() {
        for gen in gens {
            let h = g.mul(gen);
            if !elems.contains(&h) {
                elems.push(h);
                frontier.push(h);
            }
        }
    }
    elems
}

/// Checks the intro relations plus the normal form / oracle agreement.
pub fn verify_defining_relations() -> CheckReport {
    let mut report = relation_checks(&MAT_X, &MAT_Y, &MAT_Z);
    let oracle_match = PauliElement::all().all(|a| {
        PauliElement::all().all(|b| {
            to_matrix(crate::pauli::pauli_mul(a, b)) == to_matrix(a).mul(&to_matrix(b))
        })
    });
    report.checks.push(Check {
        name: "normal_form_matches_oracle",
        pass: oracle_match,
    });
    let injective = {
        let mats: Vec<_> = PauliElement::all().map(to_matrix).collect();
        (0..16).all(|i| (i + 1..16).all(|j| mats[i] != mats[j]))
    };
    report.checks.push(Check {
        name: "oracle_injective_on_p",
        pass: injective,
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli;

    #[test]
    fn generator_matrices() {
        assert_eq!(to_matrix(pauli::X), MAT_X);
        assert_eq!(to_matrix(pauli::Y), MAT_Y);
        assert_eq!(to_matrix(pauli::Z), MAT_Z);
        assert_eq!(to_matrix(pauli::IDENTITY), MAT_IDENTITY);
    }

    #[test]
    fn iz_matrix() {
        // iZ = ((i,0),(0,-i))
        let m = to_matrix(pauli::pauli_mul(pauli::X, pauli::Y));
        assert_eq!(m.e[0][0], GaussInt::I);
        assert_eq!(m.e[0][1], GaussInt::ZERO);
        assert_eq!(m.e[1][0], GaussInt::ZERO);
        assert_eq!(m.e[1][1], GaussInt::new(0, -1));
    }

    #[test]
    fn all_relations_pass() {
        let report = verify_defining_relations();
        for c in &report.checks {
            assert!(c.pass, "check {} failed", c.name);
        }
    }

    #[test]
    fn tampered_generator_fails() {
        // Swap a sign in Z; the commutator and product checks must notice.
        let bad_z = GaussMatrix {
            e: [
                [GaussInt::ONE, GaussInt::ZERO],
                [GaussInt::ZERO, GaussInt::ONE],
            ],
        };
        let report = relation_checks(&MAT_X, &MAT_Y, &bad_z);
        assert!(!report.all_pass());
        let failed: Vec<_> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect();
        assert!(failed.contains(&"commutator_xy_eq_2iz"));
    }

    #[test]
    fn entries_stay_in_unit_gaussians() {
        for g in PauliElement::all() {
            let m = to_matrix(g);
            for row in &m.e {
                for v in row {
                    assert!(v.re.abs() <= 1 && v.im.abs() <= 1 && (v.re == 0 || v.im == 0));
                }
            }
        }
    }

    #[test]
    fn pauli_matrix_group_has_16_elements() {
        assert_eq!(generate(&[MAT_X, MAT_Y, MAT_Z]).len(), 16);
    }
}

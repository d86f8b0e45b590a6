//! Exact arithmetic for the Pauli group P = <X, Y, Z>.
//!
//! Every element is kept in the normal form `i^c X^a Z^b` with `c` mod 4 and
//! `a`, `b` mod 2, so the group has exactly 4 * 2 * 2 = 16 elements and
//! multiplication is O(1) via the commutation rule
//! `Z^b X^a' = (-1)^{b a'} X^a' Z^b`.

use std::fmt;

/// Element of the Pauli group in normal form `i^phase X^xbit Z^zbit`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliElement {
    /// Exponent of the central element i, mod 4.
    pub phase: u8,
    /// Exponent of X, mod 2.
    pub xbit: u8,
    /// Exponent of Z, mod 2.
    pub zbit: u8,
}

pub const IDENTITY: PauliElement = PauliElement::new(0, 0, 0);
pub const X: PauliElement = PauliElement::new(0, 1, 0);
pub const Z: PauliElement = PauliElement::new(0, 0, 1);
/// Y = i X Z, from XZ = -iY.
pub const Y: PauliElement = PauliElement::new(1, 1, 1);
pub const I_UNIT: PauliElement = PauliElement::new(1, 0, 0);

impl PauliElement {
    pub const fn new(phase: u8, xbit: u8, zbit: u8) -> Self {
        PauliElement {
            phase: phase % 4,
            xbit: xbit % 2,
            zbit: zbit % 2,
        }
    }

    /// Packed index in 0..16, used to index tables: `phase * 4 + xbit * 2 + zbit`.
    pub fn index(self) -> usize {
        (self.phase as usize) * 4 + (self.xbit as usize) * 2 + self.zbit as usize
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < 16);
        PauliElement::new((i / 4) as u8, ((i / 2) % 2) as u8, (i % 2) as u8)
    }

    pub fn is_identity(self) -> bool {
        self == IDENTITY
    }

    pub fn inverse(self) -> Self {
        // (i^c X^a Z^b)^-1 = i^-c Z^b X^a = i^{-c + 2ab} X^a Z^b
        PauliElement::new((4 - self.phase + 2 * self.xbit * self.zbit) % 4, self.xbit, self.zbit)
    }

    /// The three generators in the fixed letter order X < Y < Z.
    pub fn generators() -> [PauliElement; 3] {
        [X, Y, Z]
    }

    /// All 16 elements in index order.
    pub fn all() -> impl Iterator<Item = PauliElement> {
        (0..16).map(PauliElement::from_index)
    }
}

/// Normal-form product: `i^{c+c'+2 b a'} X^{a+a'} Z^{b+b'}`.
pub fn pauli_mul(a: PauliElement, b: PauliElement) -> PauliElement {
    PauliElement::new(
        (a.phase + b.phase + 2 * a.zbit * b.xbit) % 4,
        a.xbit ^ b.xbit,
        a.zbit ^ b.zbit,
    )
}

/// Left-to-right product of letters drawn from {X, Y, Z} (0, 1, 2).
pub fn pauli_eval(letters: &[u8]) -> PauliElement {
    letters.iter().fold(IDENTITY, |acc, &l| {
        pauli_mul(acc, [X, Y, Z][l as usize])
    })
}

impl fmt::Debug for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let phase = ["", "i", "-", "-i"][self.phase as usize];
        let body = match (self.xbit, self.zbit) {
            (0, 0) => "1",
            (1, 0) => "X",
            (0, 1) => "Z",
            (1, 1) => "XZ",
            _ => unreachable!(),
        };
        write!(f, "{phase}{body}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::to_matrix;

    #[test]
    fn products_of_generators() {
        // XY = iZ, YZ = iX, ZX = iY
        assert_eq!(pauli_mul(X, Y), pauli_mul(I_UNIT, Z));
        assert_eq!(pauli_mul(Y, Z), pauli_mul(I_UNIT, X));
        assert_eq!(pauli_mul(Z, X), pauli_mul(I_UNIT, Y));
        assert_eq!(pauli_mul(X, X), IDENTITY);
        assert_eq!(pauli_mul(Y, Y), IDENTITY);
        assert_eq!(pauli_mul(Z, Z), IDENTITY);
    }

    #[test]
    fn identity_is_neutral() {
        for g in PauliElement::all() {
            assert_eq!(pauli_mul(IDENTITY, g), g);
            assert_eq!(pauli_mul(g, IDENTITY), g);
        }
    }

    #[test]
    fn inverses() {
        for g in PauliElement::all() {
            assert_eq!(pauli_mul(g, g.inverse()), IDENTITY);
            assert_eq!(pauli_mul(g.inverse(), g), IDENTITY);
        }
    }

    #[test]
    fn closed_and_associative() {
        for a in PauliElement::all() {
            for b in PauliElement::all() {
                let ab = pauli_mul(a, b);
                assert!(ab.index() < 16);
                for c in PauliElement::all() {
                    assert_eq!(pauli_mul(pauli_mul(a, b), c), pauli_mul(a, pauli_mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn every_order_divides_4() {
        for g in PauliElement::all() {
            let g2 = pauli_mul(g, g);
            let g4 = pauli_mul(g2, g2);
            assert_eq!(g4, IDENTITY);
        }
    }

    #[test]
    fn eval_ring_words() {
        // XYXZYZ = 1 and the empty word.
        assert_eq!(pauli_eval(&[0, 1, 0, 2, 1, 2]), IDENTITY);
        assert_eq!(pauli_eval(&[]), IDENTITY);
        assert_eq!(pauli_eval(&[0, 1]), PauliElement::new(1, 0, 1)); // XY = iZ
    }

    #[test]
    fn xyz_is_central() {
        let i = pauli_eval(&[0, 1, 2]);
        assert_eq!(i, I_UNIT);
        for g in PauliElement::all() {
            assert_eq!(pauli_mul(i, g), pauli_mul(g, i));
        }
    }

    #[test]
    fn index_roundtrip() {
        for i in 0..16 {
            assert_eq!(PauliElement::from_index(i).index(), i);
        }
    }

    #[test]
    fn normal_form_agrees_with_matrix_oracle() {
        for a in PauliElement::all() {
            for b in PauliElement::all() {
                let lhs = to_matrix(pauli_mul(a, b));
                let rhs = to_matrix(a).mul(&to_matrix(b));
                assert_eq!(lhs, rhs, "mismatch at {a} * {b}");
            }
        }
    }
}

//! Finite groups as explicit multiplication tables.
//!
//! Orders here stay tiny (at most 48), so the table representation is
//! validated exhaustively on construction: rows and columns must be
//! permutations and associativity is checked on all triples.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::Error;
use crate::pauli::{pauli_mul, PauliElement};

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    /// Row-major: table[a * order + b] = a * b.
    table: Vec<u16>,
    inverse: Vec<u16>,
    identity: u16,
    /// Marked generators by label.
    labels: BTreeMap<String, u16>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<u16>, labels: BTreeMap<String, u16>) -> Result<Self, Error> {
        let order = (table.len() as f64).sqrt() as usize;
        if order * order != table.len() || order == 0 {
            return Err(Error::NotAGroup("table is not square".into()));
        }
        if table.iter().any(|&v| v as usize >= order) {
            return Err(Error::NotAGroup("entry out of range".into()));
        }

        // Latin square.
        for i in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for j in 0..order {
                row[table[i * order + j] as usize] = true;
                col[table[j * order + i] as usize] = true;
            }
            if row.iter().any(|&b| !b) || col.iter().any(|&b| !b) {
                return Err(Error::NotAGroup(format!("row/column {i} is not a permutation")));
            }
        }

        // Two-sided identity.
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e * order + a] as usize == a && table[a * order + e] as usize == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))? as u16;

        // Associativity, exhaustive.
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b] as usize;
                for c in 0..order {
                    let bc = table[b * order + c] as usize;
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(Error::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }

        let mut inverse = vec![0u16; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| table[a * order + b] == identity)
                .unwrap() as u16;
        }

        Ok(FiniteGroup { order, table, inverse, identity, labels })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u16 {
        self.identity
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inverse[a as usize]
    }

    pub fn conjugate(&self, g: u16, h: u16) -> u16 {
        // h g h^-1
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn element(&self, label: &str) -> Option<u16> {
        self.labels.get(label).copied()
    }

    pub fn labels(&self) -> &BTreeMap<String, u16> {
        &self.labels
    }

    pub fn element_order(&self, g: u16) -> usize {
        let mut n = 1;
        let mut acc = g;
        while acc != self.identity {
            acc = self.mul(acc, g);
            n += 1;
        }
        n
    }

    pub fn is_involution(&self, g: u16) -> bool {
        g != self.identity && self.mul(g, g) == self.identity
    }

    /// Subgroup generated by the given elements (closure under product).
    pub fn subgroup(&self, gens: &[u16]) -> Vec<u16> {
        let mut seen = vec![false; self.order];
        seen[self.identity as usize] = true;
        let mut elems = vec![self.identity];
        let mut frontier = vec![self.identity];
        while let Some(g) = frontier.pop() {
            for &s in gens {
                let h = self.mul(g, s);
                if !seen[h as usize] {
                    seen[h as usize] = true;
                    elems.push(h);
                    frontier.push(h);
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    /// Conjugacy class of g, sorted; the first entry is the canonical representative.
    pub fn conjugacy_class(&self, g: u16) -> Vec<u16> {
        let mut class: Vec<u16> = (0..self.order as u16).map(|h| self.conjugate(g, h)).collect();
        class.sort_unstable();
        class.dedup();
        class
    }

    /// Cyclic group Z/n, elements 0..n with addition, generator labeled "g".
    pub fn cyclic(n: usize) -> FiniteGroup {
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a + b) % n) as u16;
            }
        }
        let mut labels = BTreeMap::new();
        labels.insert("g".to_string(), 1.min(n - 1) as u16);
        FiniteGroup::from_table(table, labels).expect("cyclic group table")
    }

    /// Symmetric group S3 on {1,2,3}; generators labeled "(1,2)" and "(2,3)".
    ///
    /// Elements are permutations in one-line notation, indexed in lexicographic
    /// order; composition is (f*g)(x) = f(g(x)).
    pub fn symmetric_3() -> FiniteGroup {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let idx = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
        let mut table = vec![0u16; 36];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let comp = [pa[pb[0]], pa[pb[1]], pa[pb[2]]];
                table[a * 6 + b] = idx(&comp) as u16;
            }
        }
        let mut labels = BTreeMap::new();
        labels.insert("(1,2)".to_string(), idx(&[1, 0, 2]) as u16);
        labels.insert("(2,3)".to_string(), idx(&[0, 2, 1]) as u16);
        labels.insert("(1,3)".to_string(), idx(&[2, 1, 0]) as u16);
        FiniteGroup::from_table(table, labels).expect("s3 table")
    }

    /// The Pauli group P as a 16-element table, generators labeled X, Y, Z, i.
    ///
    /// Element indices agree with [`PauliElement::index`].
    pub fn pauli_group() -> FiniteGroup {
        let mut table = vec![0u16; 256];
        for a in PauliElement::all() {
            for b in PauliElement::all() {
                table[a.index() * 16 + b.index()] = pauli_mul(a, b).index() as u16;
            }
        }
        let mut labels = BTreeMap::new();
        labels.insert("X".to_string(), crate::pauli::X.index() as u16);
        labels.insert("Y".to_string(), crate::pauli::Y.index() as u16);
        labels.insert("Z".to_string(), crate::pauli::Z.index() as u16);
        labels.insert("i".to_string(), crate::pauli::I_UNIT.index() as u16);
        FiniteGroup::from_table(table, labels).expect("pauli table")
    }
}

/// Order-3 automorphism of P sending X -> Y -> Z -> X (and fixing i).
pub fn rotate_pauli(p: PauliElement) -> PauliElement {
    // phi(i^c X^a Z^b) = i^{c+a+2ab} X^{a+b} Z^a
    PauliElement::new(
        (p.phase + p.xbit + 2 * p.xbit * p.zbit) % 4,
        p.xbit ^ p.zbit,
        p.xbit,
    )
}

/// The semidirect product U = P ⋊ Z/3 where the Z/3 generator T acts by
/// the cyclic permutation X -> Y -> Z.
///
/// Element (p, t) has index `p.index() * 3 + t`; generators are labeled
/// T, X, Y, Z.
pub fn build_u() -> FiniteGroup {
    let n = 48;
    let phi = |p: PauliElement, k: u8| -> PauliElement {
        let mut q = p;
        for _ in 0..k {
            q = rotate_pauli(q);
        }
        q
    };
    let mut table = vec![0u16; n * n];
    for p1 in PauliElement::all() {
        for t1 in 0..3u8 {
            for p2 in PauliElement::all() {
                for t2 in 0..3u8 {
                    let a = p1.index() * 3 + t1 as usize;
                    let b = p2.index() * 3 + t2 as usize;
                    let prod = pauli_mul(p1, phi(p2, t1));
                    table[a * n + b] = (prod.index() * 3 + ((t1 + t2) % 3) as usize) as u16;
                }
            }
        }
    }
    let mut labels = BTreeMap::new();
    labels.insert("T".to_string(), 1u16);
    labels.insert("X".to_string(), (crate::pauli::X.index() * 3) as u16);
    labels.insert("Y".to_string(), (crate::pauli::Y.index() * 3) as u16);
    labels.insert("Z".to_string(), (crate::pauli::Z.index() * 3) as u16);
    FiniteGroup::from_table(table, labels).expect("U table")
}

/// Length of the shortest nonempty reduced word of A*B mapping to the
/// identity of the target group.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KernelLength {
    Finite(u32),
    Infinite,
}

/// BFS over reduced alternating words in the free product of the cyclic
/// subgroups <gen_a> and <gen_b> of `target`.
///
/// A reduced word alternates nontrivial elements of the two factors; the BFS
/// state is (image in target, factor of the last letter), so consecutive
/// letters from one factor never occur. Returns the syllable length of the
/// shortest word whose image is the identity, or `Infinite` when the induced
/// map A*B -> target is injective.
pub fn shortest_kernel_word(target: &FiniteGroup, gen_a: u16, gen_b: u16) -> KernelLength {
    assert_ne!(gen_a, target.identity(), "factor generator must be nontrivial");
    assert_ne!(gen_b, target.identity(), "factor generator must be nontrivial");

    let powers = |g: u16| -> Vec<u16> {
        let mut out = Vec::new();
        let mut acc = g;
        while acc != target.identity() {
            out.push(acc);
            acc = target.mul(acc, g);
        }
        out
    };
    let factor = [powers(gen_a), powers(gen_b)];

    // dist[g][last]: length of shortest reduced word with image g whose last
    // letter lies in `factor[last]`.
    let order = target.order();
    let mut dist = vec![[u32::MAX; 2]; order];
    let mut queue = std::collections::VecDeque::new();
    for (side, elems) in factor.iter().enumerate() {
        for &e in elems {
            if dist[e as usize][side] == u32::MAX {
                dist[e as usize][side] = 1;
                queue.push_back((e, side));
            }
        }
    }
    let mut best: Option<u32> = None;
    while let Some((g, side)) = queue.pop_front() {
        let d = dist[g as usize][side];
        if let Some(b) = best {
            if d >= b {
                continue;
            }
        }
        let next_side = 1 - side;
        for &e in &factor[next_side] {
            let h = target.mul(g, e);
            let nd = d + 1;
            if h == target.identity() {
                best = Some(best.map_or(nd, |b| b.min(nd)));
            }
            if dist[h as usize][next_side] > nd {
                dist[h as usize][next_side] = nd;
                queue.push_back((h, next_side));
            }
        }
    }
    match best {
        Some(n) => KernelLength::Finite(n),
        None => KernelLength::Infinite,
    }
}

/// An exact rational multiple of pi.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct Angle(pub Ratio<i64>);

impl Angle {
    pub const ZERO: Angle = Angle(Ratio::new_raw(0, 1));

    pub fn new(num: i64, den: i64) -> Angle {
        Angle(Ratio::new(num, den))
    }

    /// True when the angle is at most pi.
    pub fn at_most_pi(self) -> bool {
        self.0 <= Ratio::new(1, 1)
    }
}

impl std::ops::Add for Angle {
    type Output = Angle;
    fn add(self, o: Angle) -> Angle {
        Angle(self.0 + o.0)
    }
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (n, d) = (*self.0.numer(), *self.0.denom());
        if n == 0 {
            write!(f, "0")
        } else if d == 1 && n == 1 {
            write!(f, "pi")
        } else if d == 1 {
            write!(f, "{n}pi")
        } else if n == 1 {
            write!(f, "pi/{d}")
        } else {
            write!(f, "{n}pi/{d}")
        }
    }
}

/// The angle 2*pi/n attached to a kernel-word length; zero for infinite n.
pub fn gersten_stallings_angle(n: KernelLength) -> Angle {
    match n {
        KernelLength::Finite(n) => Angle::new(2, n as i64),
        KernelLength::Infinite => Angle::ZERO,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: enumerate all reduced alternating words up to the
    /// given syllable length and return the shortest hitting the identity.
    fn shortest_kernel_brute(target: &FiniteGroup, gen_a: u16, gen_b: u16, max_len: u32) -> KernelLength {
        let powers = |g: u16| -> Vec<u16> {
            let mut out = Vec::new();
            let mut acc = g;
            while acc != target.identity() {
                out.push(acc);
                acc = target.mul(acc, g);
            }
            out
        };
        let factor = [powers(gen_a), powers(gen_b)];
        // words as (image, last_side) frontier per length
        let mut frontier: Vec<(u16, usize)> = Vec::new();
        for (side, elems) in factor.iter().enumerate() {
            for &e in elems {
                frontier.push((e, side));
            }
        }
        let mut len = 1;
        loop {
            if frontier.iter().any(|&(g, _)| g == target.identity()) {
                return KernelLength::Finite(len);
            }
            if len >= max_len {
                return KernelLength::Infinite;
            }
            let mut next = Vec::new();
            for &(g, side) in &frontier {
                for &e in &factor[1 - side] {
                    next.push((target.mul(g, e), 1 - side));
                }
            }
            frontier = next;
            len += 1;
        }
    }

    #[test]
    fn u_has_order_48_and_t_acts_cyclically() {
        let u = build_u();
        assert_eq!(u.order(), 48);
        let t = u.element("T").unwrap();
        let x = u.element("X").unwrap();
        let y = u.element("Y").unwrap();
        let z = u.element("Z").unwrap();
        assert_eq!(u.conjugate(x, t), y);
        assert_eq!(u.conjugate(y, t), z);
        assert_eq!(u.conjugate(z, t), x);
        assert_eq!(u.element_order(t), 3);
        assert_eq!(u.subgroup(&[x, y, z]).len(), 16);
    }

    #[test]
    fn kernel_word_lengths() {
        let u = build_u();
        let n_u = shortest_kernel_word(&u, u.element("T").unwrap(), u.element("X").unwrap());
        assert_eq!(n_u, KernelLength::Finite(12));

        let v = FiniteGroup::symmetric_3();
        let n_v = shortest_kernel_word(&v, v.element("(1,2)").unwrap(), v.element("(2,3)").unwrap());
        assert_eq!(n_v, KernelLength::Finite(6));

        // Z/3 = <2> and Z/2 = <3> inside Z/6 commute and intersect trivially,
        // so the commutator 2+3+4+3 = 12 = 0 (mod 6) is a reduced alternating
        // word of syllable length 4 in the kernel, and nothing shorter works.
        let w = FiniteGroup::cyclic(6);
        let n_w = shortest_kernel_word(&w, 2, 3);
        assert_eq!(n_w, KernelLength::Finite(4));
    }

    #[test]
    fn kernel_bfs_matches_brute_force() {
        let u = build_u();
        let t = u.element("T").unwrap();
        let x = u.element("X").unwrap();
        assert_eq!(
            shortest_kernel_word(&u, t, x),
            shortest_kernel_brute(&u, t, x, 14)
        );
        let v = FiniteGroup::symmetric_3();
        let b = v.element("(1,2)").unwrap();
        let c = v.element("(2,3)").unwrap();
        assert_eq!(shortest_kernel_word(&v, b, c), shortest_kernel_brute(&v, b, c, 8));
        let w = FiniteGroup::cyclic(6);
        assert_eq!(shortest_kernel_word(&w, 2, 3), shortest_kernel_brute(&w, 2, 3, 10));
    }

    #[test]
    fn kernel_word_symmetry() {
        let u = build_u();
        let t = u.element("T").unwrap();
        let x = u.element("X").unwrap();
        assert_eq!(shortest_kernel_word(&u, t, x), shortest_kernel_word(&u, x, t));
        // Replacing a generator by its inverse generates the same factor.
        assert_eq!(shortest_kernel_word(&u, u.inv(t), x), shortest_kernel_word(&u, t, x));
        let w = FiniteGroup::cyclic(6);
        assert_eq!(shortest_kernel_word(&w, 4, 3), shortest_kernel_word(&w, 2, 3));
    }

    #[test]
    fn coincident_factors_give_length_2() {
        // Both factors the same Z/2 inside Z/2: the word a*b maps to 0.
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(shortest_kernel_word(&c2, 1, 1), KernelLength::Finite(2));
    }

    #[test]
    fn angles() {
        assert_eq!(gersten_stallings_angle(KernelLength::Finite(12)), Angle::new(1, 6));
        assert_eq!(gersten_stallings_angle(KernelLength::Finite(6)), Angle::new(1, 3));
        assert_eq!(gersten_stallings_angle(KernelLength::Finite(4)), Angle::new(1, 2));
        assert_eq!(gersten_stallings_angle(KernelLength::Infinite), Angle::ZERO);
        let sum = Angle::new(1, 6) + Angle::new(1, 3) + Angle::new(1, 2);
        assert_eq!(sum, Angle::new(1, 1));
        assert!(sum.at_most_pi());
        assert_eq!(format!("{}", Angle::new(1, 6)), "pi/6");
        assert_eq!(format!("{sum}"), "pi");
    }

    #[test]
    fn s3_structure() {
        let v = FiniteGroup::symmetric_3();
        assert_eq!(v.order(), 6);
        let b = v.element("(1,2)").unwrap();
        let c = v.element("(2,3)").unwrap();
        assert!(v.is_involution(b) && v.is_involution(c));
        assert_eq!(v.element_order(v.mul(b, c)), 3);
    }

    #[test]
    fn pauli_group_table_matches_normal_form() {
        let p = FiniteGroup::pauli_group();
        assert_eq!(p.order(), 16);
        let x = p.element("X").unwrap();
        let y = p.element("Y").unwrap();
        let iz = p.mul(x, y);
        let expected = pauli_mul(crate::pauli::X, crate::pauli::Y).index() as u16;
        assert_eq!(iz, expected);
    }

    #[test]
    fn bad_table_rejected() {
        // 2x2 table that is not a Latin square.
        let err = FiniteGroup::from_table(vec![0, 0, 0, 0], BTreeMap::new());
        assert!(err.is_err());
    }
}

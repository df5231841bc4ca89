//! Representation rings of `SL2` and `Z/2 × SL2`, matrix rings over them,
//! and the maps sending based-ring basis elements of the supported cells to
//! single-entry matrices.
//!
//! `V(k)` is the irreducible `SL2`-representation of highest weight `k`
//! (dimension `k + 1`); `ε` is the sign character of `Z/2`.  Products use
//! the Clebsch-Gordan rule `V(k) ⊗ V(l) = ⊕_{i=0}^{min(k,l)} V(k+l−2i)`
//! and `ε² = 1`.
//!
//! The cell maps send a cell coordinate to `ε^e V(k)` sitting at matrix
//! position (right cell index, left cell index):
//!
//! * cell `E` (6×6): `u_i τ^t x_k u_j^{-1} ↦ ε^t V(k)_{ij}`;
//! * cell `F` (8×8): `u_i x_k u_j^{-1} ↦ V(k)_{ij}` (no `ε` in the target);
//! * cell `D` (12×12): the infinite family `p_i τ^t u_k p_j^{-1}` maps to
//!   `ε^t V(m)_{ij}` where `m` is `2k`, `2k+2`, or `2k+1` according to
//!   whether `i, j ≤ 3`, `i, j ≥ 4`, or mixed; the 162 finite elements map
//!   to `V(0)` or `ε V(0)` at their `(l, m)` position according to which of
//!   the two seed involutions they are star-reachable from.  That
//!   2-coloring is computed, not assumed: a breadth-first closure under all
//!   left/right star operations from each seed must reach every finite
//!   element exactly once ([`DColoring::compute`]).

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::Serialize;
use thiserror::Error;

use crate::cells::{d_x, d_x_prime, enumerate, CellCoords, CellId};
use crate::fasthash::FastMap;
use crate::kl::Side;
use crate::star::{star, string_pairs};
use crate::weyl::Element;

/// An irreducible `ε^eps ⊗ V(k)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Irr {
    pub eps: bool,
    pub k: u32,
}

impl std::fmt::Display for Irr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.eps {
            write!(f, "eV({})", self.k)
        } else {
            write!(f, "V({})", self.k)
        }
    }
}

/// An integer combination of irreducibles, i.e. an element of the
/// representation ring.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct RepElt {
    terms: BTreeMap<Irr, i64>,
}

impl RepElt {
    pub fn zero() -> RepElt {
        RepElt::default()
    }

    pub fn irr(eps: bool, k: u32) -> RepElt {
        let mut terms = BTreeMap::new();
        terms.insert(Irr { eps, k }, 1);
        RepElt { terms }
    }

    pub fn v(k: u32) -> RepElt {
        RepElt::irr(false, k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, irr: Irr, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(irr).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&irr);
        }
    }

    pub fn add(&self, other: &RepElt) -> RepElt {
        let mut out = self.clone();
        for (&irr, &c) in &other.terms {
            out.add_term(irr, c);
        }
        out
    }

    pub fn scaled(&self, c: i64) -> RepElt {
        let mut out = RepElt::zero();
        for (&irr, &m) in &self.terms {
            out.add_term(irr, m * c);
        }
        out
    }

    /// Clebsch-Gordan product, extended bilinearly.
    pub fn tensor(&self, other: &RepElt) -> RepElt {
        let mut out = RepElt::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let eps = a.eps ^ b.eps;
                let (k, l) = (a.k, b.k);
                for i in 0..=k.min(l) {
                    out.add_term(Irr { eps, k: k + l - 2 * i }, ca * cb);
                }
            }
        }
        out
    }

    /// Sorted `(irr, multiplicity)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (Irr, i64)> + '_ {
        self.terms.iter().map(|(&i, &c)| (i, c))
    }
}

impl std::fmt::Display for RepElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (irr, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, "+")?;
            }
            if c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "{irr}")?;
        }
        Ok(())
    }
}

impl Serialize for RepElt {
    /// `[[eps, k, multiplicity], ...]` in sorted order.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (irr, c) in self.terms() {
            seq.serialize_element(&(u8::from(irr.eps), irr.k, c))?;
        }
        seq.end()
    }
}

/// A sparse square matrix over the representation ring, 1-based indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepMat {
    n: usize,
    entries: BTreeMap<(usize, usize), RepElt>,
}

impl RepMat {
    pub fn zero(n: usize) -> RepMat {
        RepMat { n, entries: BTreeMap::new() }
    }

    pub fn single(n: usize, i: usize, j: usize, elt: RepElt) -> RepMat {
        let mut m = RepMat::zero(n);
        m.add_entry(i, j, &elt);
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, i: usize, j: usize, elt: &RepElt) {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j), "index out of range");
        if elt.is_zero() {
            return;
        }
        let cell = self.entries.entry((i, j)).or_default();
        *cell = cell.add(elt);
        if cell.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> RepElt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &RepMat) -> RepMat {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = self.clone();
        for (&(i, j), elt) in &other.entries {
            out.add_entry(i, j, elt);
        }
        out
    }

    pub fn scaled(&self, c: i64) -> RepMat {
        let mut out = RepMat::zero(self.n);
        for (&(i, j), elt) in &self.entries {
            out.add_entry(i, j, &elt.scaled(c));
        }
        out
    }

    pub fn mat_mul(&self, other: &RepMat) -> RepMat {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = RepMat::zero(self.n);
        for (&(i, j), a) in &self.entries {
            for (&(j2, k), b) in &other.entries {
                if j == j2 {
                    out.add_entry(i, k, &a.tensor(b));
                }
            }
        }
        out
    }

    /// The dual: every irreducible here is self-dual, so this is the
    /// transpose.
    pub fn dual(&self) -> RepMat {
        let mut out = RepMat::zero(self.n);
        for (&(i, j), elt) in &self.entries {
            out.add_entry(j, i, elt);
        }
        out
    }

    /// Sorted nonzero entries.
    pub fn sorted_entries(&self) -> impl Iterator<Item = ((usize, usize), &RepElt)> + '_ {
        self.entries.iter().map(|(&p, e)| (p, e))
    }
}

impl std::fmt::Display for RepMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((i, j), elt)) in self.sorted_entries().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({elt})[{i},{j}]")?;
        }
        Ok(())
    }
}

#[derive(Error, Debug)]
pub enum ColoringError {
    #[error("star closure from both seeds reached {0}; the components are not disjoint")]
    Overlap(String),
    #[error("{0} finite elements unreachable from either seed, e.g. {1}")]
    Unreached(usize, String),
}

/// The star-reachability 2-coloring of the 162 finite cell-`D` elements:
/// each is reachable (under left/right star operations) from exactly one of
/// the two seed involutions `x_0 = s1s2s1` and `x_0' = τs2s0s1s2s1`.
pub struct DColoring {
    /// `element ↦ true` when reachable from `x_0'` (the `ε` side).
    map: FastMap<Element, bool>,
}

impl DColoring {
    /// Breadth-first closure under all left/right star operations from both
    /// seeds, then a completeness check over the enumerated finite
    /// elements.  Star operations never change the length-zero component of
    /// an element, so the two closures cannot meet; overlap or
    /// unreachability would mean the parameterization itself is wrong, and
    /// is reported rather than patched.
    pub fn compute() -> Result<DColoring, ColoringError> {
        let finite: Vec<(CellCoords, Element)> = enumerate(CellId::D, 0)
            .into_iter()
            .filter(|(c, _)| !matches!(c, CellCoords::DInf { .. }))
            .collect();
        // Strings can pass through elements somewhat longer than any finite
        // element (max length 11); the bound needs headroom for such
        // excursions but keeps the search finite.
        let max_len = 20;
        let closure = |seed: Element| -> FastMap<Element, ()> {
            let mut seen: FastMap<Element, ()> = FastMap::default();
            let mut queue = std::collections::VecDeque::new();
            seen.insert(seed, ());
            queue.push_back(seed);
            while let Some(w) = queue.pop_front() {
                for (s, t) in string_pairs() {
                    for side in [Side::Left, Side::Right] {
                        if let Some(img) = star(&w, s, t, side) {
                            if img.length() <= max_len && !seen.contains_key(&img) {
                                seen.insert(img, ());
                                queue.push_back(img);
                            }
                        }
                    }
                }
            }
            seen
        };
        let from_plain = closure(d_x(0));
        let from_primed = closure(d_x_prime(0));
        let mut map = FastMap::default();
        let mut unreached = Vec::new();
        for (coords, w) in &finite {
            let plain = from_plain.contains_key(w);
            let primed = from_primed.contains_key(w);
            match (plain, primed) {
                (true, true) => return Err(ColoringError::Overlap(coords.to_string())),
                (true, false) => {
                    map.insert(*w, false);
                }
                (false, true) => {
                    map.insert(*w, true);
                }
                (false, false) => unreached.push(coords.to_string()),
            }
        }
        if !unreached.is_empty() {
            return Err(ColoringError::Unreached(unreached.len(), unreached[0].clone()));
        }
        Ok(DColoring { map })
    }

    /// `Some(true)` if `w` is on the `ε` (primed-seed) side, `Some(false)`
    /// on the plain side, `None` if `w` is not a finite cell-`D` element.
    pub fn eps_of(&self, w: &Element) -> Option<bool> {
        self.map.get(w).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Matrix size of the target ring for each supported cell.
pub fn pi_dim(cell: CellId) -> usize {
    match cell {
        CellId::E => 6,
        CellId::F => 8,
        CellId::D => 12,
        _ => panic!("no representation-ring map for cell {cell}"),
    }
}

/// The cell maps, bundled with the computed coloring for cell `D`.
pub struct PiMaps {
    coloring: DColoring,
}

impl PiMaps {
    pub fn new() -> Result<PiMaps, ColoringError> {
        Ok(PiMaps { coloring: DColoring::compute()? })
    }

    pub fn coloring(&self) -> &DColoring {
        &self.coloring
    }

    /// The single-entry matrix attached to a basis element.
    pub fn pi(&self, c: &CellCoords) -> RepMat {
        let n = pi_dim(c.cell());
        let row = c.right_cell_index() as usize;
        let col = c.left_cell_index() as usize;
        let elt = match *c {
            CellCoords::E { k, tau, .. } => RepElt::irr(tau, k),
            CellCoords::F { k, .. } => RepElt::v(k),
            CellCoords::DInf { i, k, tau, j } => {
                let m = if i <= 3 && j <= 3 {
                    2 * k
                } else if i >= 4 && j >= 4 {
                    2 * k + 2
                } else {
                    2 * k + 1
                };
                RepElt::irr(tau, m)
            }
            _ => {
                let eps = self
                    .coloring
                    .eps_of(&c.realize())
                    .expect("finite cell-D element missing from the coloring");
                RepElt::irr(eps, 0)
            }
        };
        RepMat::single(n, row, col, elt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clebsch_gordan_products() {
        assert_eq!(RepElt::v(1).tensor(&RepElt::v(1)), RepElt::v(0).add(&RepElt::v(2)));
        assert_eq!(RepElt::v(7).tensor(&RepElt::v(0)), RepElt::v(7));
        // ε² = 1.
        assert_eq!(
            RepElt::irr(true, 1).tensor(&RepElt::irr(true, 2)),
            RepElt::v(1).add(&RepElt::v(3))
        );
        // Dimension count: dim(V(k) ⊗ V(l)) = (k+1)(l+1).
        let dim = |e: &RepElt| -> i64 { e.terms().map(|(i, c)| c * (i.k as i64 + 1)).sum() };
        let p = RepElt::v(3).tensor(&RepElt::v(5));
        assert_eq!(dim(&p), 4 * 6);
        // Associativity on a mixed example.
        let (a, b, c) = (RepElt::irr(true, 2), RepElt::v(3), RepElt::irr(true, 1));
        assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
    }

    #[test]
    fn matrix_arithmetic() {
        let a = RepMat::single(6, 1, 2, RepElt::v(1));
        let b = RepMat::single(6, 2, 3, RepElt::v(1));
        let prod = a.mat_mul(&b);
        assert_eq!(prod, RepMat::single(6, 1, 3, RepElt::v(0).add(&RepElt::v(2))));
        // Mismatched middle index annihilates.
        assert!(a.mat_mul(&a).is_zero());
        // Dual transposes.
        let c = RepMat::single(6, 2, 5, RepElt::irr(true, 2));
        assert_eq!(c.dual(), RepMat::single(6, 5, 2, RepElt::irr(true, 2)));
        assert_eq!(format!("{prod}"), "(V(0)+V(2))[1,3]");
    }

    #[test]
    fn coloring_exists_and_matches_the_flag() {
        let coloring = DColoring::compute().expect("star closure failed to 2-color");
        assert_eq!(coloring.len(), 162);
        // Star operations preserve the length-zero component, so the two
        // closure components are exactly the unflagged/flagged halves.
        for (coords, w) in enumerate(CellId::D, 0) {
            if matches!(coords, CellCoords::DInf { .. }) {
                continue;
            }
            assert_eq!(coloring.eps_of(&w), Some(w.tau_flag()), "color mismatch at {coords}");
        }
        assert_eq!(coloring.eps_of(&Element::identity()), None);
    }

    #[test]
    fn pi_examples() {
        let maps = PiMaps::new().unwrap();
        assert_eq!(
            maps.pi(&CellCoords::E { i: 2, j: 3, k: 1, tau: false }),
            RepMat::single(6, 2, 3, RepElt::v(1))
        );
        assert_eq!(
            maps.pi(&CellCoords::E { i: 4, j: 4, k: 0, tau: true }),
            RepMat::single(6, 4, 4, RepElt::irr(true, 0))
        );
        assert_eq!(
            maps.pi(&CellCoords::F { i: 7, k: 2, j: 1 }),
            RepMat::single(8, 7, 1, RepElt::v(2))
        );
        // The three parity blocks of the 12×12 map.
        assert_eq!(
            maps.pi(&CellCoords::DInf { i: 1, k: 0, tau: false, j: 1 }),
            RepMat::single(12, 1, 1, RepElt::v(0))
        );
        assert_eq!(
            maps.pi(&CellCoords::DInf { i: 4, k: 0, tau: false, j: 4 }),
            RepMat::single(12, 4, 4, RepElt::v(2))
        );
        assert_eq!(
            maps.pi(&CellCoords::DInf { i: 1, k: 0, tau: false, j: 4 }),
            RepMat::single(12, 1, 4, RepElt::v(1))
        );
        assert_eq!(
            maps.pi(&CellCoords::DInf { i: 9, k: 1, tau: true, j: 2 }),
            RepMat::single(12, 9, 2, RepElt::irr(true, 3))
        );
        // Finite family: position (l, m), ε by flag.
        assert_eq!(
            maps.pi(&CellCoords::DFin { l: 4, m: 4, prime: false }),
            RepMat::single(12, 4, 4, RepElt::v(0))
        );
        assert_eq!(
            maps.pi(&CellCoords::DFin { l: 4, m: 4, prime: true }),
            RepMat::single(12, 4, 4, RepElt::irr(true, 0))
        );
        assert_eq!(
            maps.pi(&CellCoords::DSix { l: 9, tau: true }),
            RepMat::single(12, 9, 6, RepElt::irr(true, 0))
        );
        assert_eq!(
            maps.pi(&CellCoords::DSixInv { m: 9 }),
            RepMat::single(12, 6, 9, RepElt::irr(true, 0))
        );
        // q5 x0 q4^{-1} = τ·s1s2s1 carries the flag, so lands on the ε side.
        assert_eq!(
            maps.pi(&CellCoords::DFin { l: 5, m: 4, prime: false }),
            RepMat::single(12, 5, 4, RepElt::irr(true, 0))
        );
    }

    #[test]
    fn pi_is_injective_on_enumerated_coords() {
        let maps = PiMaps::new().unwrap();
        for cell in [CellId::E, CellId::F, CellId::D] {
            let mut seen: std::collections::BTreeMap<String, CellCoords> = Default::default();
            for (coords, _) in enumerate(cell, 2) {
                let img = format!("{}", maps.pi(&coords));
                if let Some(prev) = seen.insert(img.clone(), coords) {
                    panic!("pi collision in {cell}: {prev} and {coords} both map to {img}");
                }
            }
        }
    }

    #[test]
    fn serialization_formats() {
        let e = RepElt::v(0).add(&RepElt::irr(true, 2)).add(&RepElt::v(0));
        assert_eq!(serde_json::to_string(&e).unwrap(), "[[0,0,2],[1,2,1]]");
        assert_eq!(format!("{e}"), "2*V(0)+eV(2)");
    }
}

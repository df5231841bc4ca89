//! Explicit parameterizations of the three supported two-sided cells and
//! the `a`-function table for all eight cells.
//!
//! The three supported cells, named here by their letters:
//!
//! * cell `E` (`a = 2`, the cell containing `s0s1`): elements
//!   `u_i τ^t x_k u_j^{-1}` with `x_k = (s0s1s2s3s2)^k s1s0` and six fixed
//!   short elements `u_1..u_6`; the left cells are indexed by `j`;
//! * cell `F` (`a = 2`, containing `s1s3`): elements `u_i x_k u_j^{-1}` with
//!   `x_k = (τs0s3s2)^k s1s3` and eight fixed `u_1..u_8` (four carry `τ`);
//! * cell `D` (`a = 3`, containing `s1s2s1`): an infinite family
//!   `p_i τ^t u_k p_j^{-1}` with `u_k = (s0s1s3s2)^k s0s1s3` and twelve
//!   `p_1..p_12`, plus 162 finite elements built from `x0 = s1s2s1` and
//!   `x0' = τs2s0s1s2s1` conjugated by nine elements `q_4..q_12`:
//!   `q_l x0 q_m^{-1}` (`m ≠ 6`), `q_l x0' q_m^{-1}` (`l, m ≠ 6`),
//!   `q_l x0 q_6^{-1} τ^t` (the finite part of the sixth left cell), and
//!   the inverses of the latter's `τ`-twisted half, `τ q_6 x0 q_m^{-1}`
//!   (`m ≠ 6`).  The printed source for this cell gives the ranges loosely:
//!   read literally it would include `q_6 x0' q_m^{-1}`, whose right descent
//!   set contains `{s0, s1, s2}` and which therefore lies in the `a = 6`
//!   cell, while omitting the `τ q_6 x0 q_m^{-1}` family even though the
//!   cell is closed under inversion.  The ranges used here restore
//!   inverse-closure, keep the element count at 162, and are validated by
//!   the collision, transpose, and descent-set tests below.
//!
//! Every coordinate tuple realizes a distinct group element; this is
//! validated when the lookup tables are built, so `locate` is exact: it
//! returns the unique coordinates of a supported element and `None` for
//! elements of the five unsupported cells.

use serde::ser::SerializeMap;
use serde::Serialize;
use thiserror::Error;

use crate::fasthash::FastMap;
use crate::weyl::Element;

/// The eight two-sided cells, in the order of decreasing `a`-value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CellId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl CellId {
    pub const ALL: [CellId; 8] =
        [CellId::A, CellId::B, CellId::C, CellId::D, CellId::E, CellId::F, CellId::G, CellId::H];

    /// Lusztig's `a`-function, constant on each two-sided cell.
    pub fn a_value(self) -> u32 {
        match self {
            CellId::A => 9,
            CellId::B => 6,
            CellId::C => 4,
            CellId::D => 3,
            CellId::E => 2,
            CellId::F => 2,
            CellId::G => 1,
            CellId::H => 0,
        }
    }

    /// Number of left cells contained in the cell.
    pub fn left_cell_count(self) -> u32 {
        match self {
            CellId::A => 48,
            CellId::B => 24,
            CellId::C => 18,
            CellId::D => 12,
            CellId::E => 6,
            CellId::F => 8,
            CellId::G => 4,
            CellId::H => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CellId::A => "A",
            CellId::B => "B",
            CellId::C => "C",
            CellId::D => "D",
            CellId::E => "E",
            CellId::F => "F",
            CellId::G => "G",
            CellId::H => "H",
        }
    }
}

impl std::fmt::Display for CellId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for CellId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// Coordinates of an element in one of the three supported cells.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CellCoords {
    /// `u_i τ^tau x_k u_j^{-1}` in cell `E`; `i, j ∈ 1..=6`.
    E { i: u8, j: u8, k: u32, tau: bool },
    /// `u_i x_k u_j^{-1}` in cell `F`; `i, j ∈ 1..=8`.
    F { i: u8, k: u32, j: u8 },
    /// `p_i τ^tau u_k p_j^{-1}` in cell `D`; `i, j ∈ 1..=12`.
    DInf { i: u8, k: u32, tau: bool, j: u8 },
    /// `q_l x0 q_m^{-1}` (or `q_l x0' q_m^{-1}` when `prime`) in cell `D`;
    /// `l, m ∈ 4..=12`, `m ≠ 6`, and additionally `l ≠ 6` when `prime`.
    DFin { l: u8, m: u8, prime: bool },
    /// `q_l x0 q_6^{-1} τ^tau` in cell `D` (the finite part of the sixth
    /// left cell); `l ∈ 4..=12`.
    DSix { l: u8, tau: bool },
    /// `τ q_6 x0 q_m^{-1}` in cell `D`, the inverse of
    /// `DSix { l: m, tau: true }`; `m ∈ 4..=12`, `m ≠ 6`.
    DSixInv { m: u8 },
}

#[derive(Error, Debug)]
pub enum CellError {
    #[error("coordinate index out of range in {0}")]
    BadIndex(String),
    #[error("two coordinate tuples realize the same element {word}: {a} and {b}")]
    Collision { word: String, a: String, b: String },
}

// ---- fixed word data ---------------------------------------------------

/// `u_1..u_6` of cell `E`.  The printed source for this family has a plain
/// typo in the last entry (a doubled letter making it shorter than its
/// neighbors); the corrected value `s0s2s3s2` is validated by the
/// uniqueness, length-additivity, and left-cell tests below.
const E_U: [&str; 6] = ["", "2", "32", "232", "1232", "0232"];

/// `u_1..u_8` of cell `F`.
const F_U: [&str; 8] = ["", "2", "32", "02", "t", "t2", "t32", "t02"];

/// `p_1..p_12` of cell `D`.
const D_P: [&str; 12] =
    ["", "2", "32", "12", "02", "012", "312", "302", "2312", "2302", "02312", "12302"];

/// `q_4..q_12` of cell `D` (index 0 here is `q_4`).
const D_Q: [&str; 9] = ["", "t", "0", "3", "3t", "23", "23t", "023", "123t"];

fn parse(s: &str) -> Element {
    Element::parse(s).expect("bad built-in word")
}

/// `x_k = (s0s1s2s3s2)^k s1s0` of cell `E`.
pub fn e_x(k: u32) -> Element {
    let mut w = Element::identity();
    let block = parse("01232");
    for _ in 0..k {
        w = w.mul(&block);
    }
    w.mul(&parse("10"))
}

/// `x_k = (τs0s3s2)^k s1s3` of cell `F`.
pub fn f_x(k: u32) -> Element {
    let mut w = Element::identity();
    let block = parse("t032");
    for _ in 0..k {
        w = w.mul(&block);
    }
    w.mul(&parse("13"))
}

/// `u_k = (s0s1s3s2)^k s0s1s3` of cell `D`.
pub fn d_u(k: u32) -> Element {
    let mut w = Element::identity();
    let block = parse("0132");
    for _ in 0..k {
        w = w.mul(&block);
    }
    w.mul(&parse("013"))
}

/// `x_k = (s1s2s3s0)^k s1s2s1` of cell `D` (so `x_0 = s1s2s1`).
pub fn d_x(k: u32) -> Element {
    let mut w = Element::identity();
    let block = parse("1230");
    for _ in 0..k {
        w = w.mul(&block);
    }
    w.mul(&parse("121"))
}

/// `x_0' = τs2s0s1s2s1`; `x_{k+1}' = τs0s2s3s0·x_k` of cell `D`.
pub fn d_x_prime(k: u32) -> Element {
    if k == 0 {
        parse("t20121")
    } else {
        parse("t0230").mul(&d_x(k - 1))
    }
}

pub fn e_u(i: u8) -> Element {
    parse(E_U[(i - 1) as usize])
}

pub fn f_u(i: u8) -> Element {
    parse(F_U[(i - 1) as usize])
}

pub fn d_p(i: u8) -> Element {
    parse(D_P[(i - 1) as usize])
}

pub fn d_q(l: u8) -> Element {
    parse(D_Q[(l - 4) as usize])
}

impl CellCoords {
    pub fn cell(&self) -> CellId {
        match self {
            CellCoords::E { .. } => CellId::E,
            CellCoords::F { .. } => CellId::F,
            _ => CellId::D,
        }
    }

    pub fn a_value(&self) -> u32 {
        self.cell().a_value()
    }

    /// The family parameter `k`, when the coordinates lie in an infinite
    /// family.
    pub fn k(&self) -> Option<u32> {
        match self {
            CellCoords::E { k, .. } | CellCoords::F { k, .. } | CellCoords::DInf { k, .. } => {
                Some(*k)
            }
            _ => None,
        }
    }

    fn check_range(&self) -> Result<(), CellError> {
        let ok = match self {
            CellCoords::E { i, j, .. } => (1..=6).contains(i) && (1..=6).contains(j),
            CellCoords::F { i, j, .. } => (1..=8).contains(i) && (1..=8).contains(j),
            CellCoords::DInf { i, j, .. } => (1..=12).contains(i) && (1..=12).contains(j),
            CellCoords::DFin { l, m, prime } => {
                (4..=12).contains(l)
                    && (4..=12).contains(m)
                    && *m != 6
                    && !(*prime && *l == 6)
            }
            CellCoords::DSix { l, .. } => (4..=12).contains(l),
            CellCoords::DSixInv { m } => (4..=12).contains(m) && *m != 6,
        };
        if ok {
            Ok(())
        } else {
            Err(CellError::BadIndex(format!("{self}")))
        }
    }

    /// The group element these coordinates name.
    pub fn realize(&self) -> Element {
        self.check_range().expect("coordinates out of range");
        let tau = Element::tau();
        match *self {
            CellCoords::E { i, j, k, tau: t } => {
                let mid = if t { tau.mul(&e_x(k)) } else { e_x(k) };
                e_u(i).mul(&mid).mul(&e_u(j).inverse())
            }
            CellCoords::F { i, k, j } => f_u(i).mul(&f_x(k)).mul(&f_u(j).inverse()),
            CellCoords::DInf { i, k, tau: t, j } => {
                let mid = if t { tau.mul(&d_u(k)) } else { d_u(k) };
                d_p(i).mul(&mid).mul(&d_p(j).inverse())
            }
            CellCoords::DFin { l, m, prime } => {
                let mid = if prime { d_x_prime(0) } else { d_x(0) };
                d_q(l).mul(&mid).mul(&d_q(m).inverse())
            }
            CellCoords::DSix { l, tau: t } => {
                let base = d_q(l).mul(&d_x(0)).mul(&d_q(6).inverse());
                if t {
                    base.mul(&tau)
                } else {
                    base
                }
            }
            CellCoords::DSixInv { m } => {
                tau.mul(&d_q(6)).mul(&d_x(0)).mul(&d_q(m).inverse())
            }
        }
    }

    /// Index of the left cell containing the element (the `Γ_j` numbering of
    /// the source parameterization; determined by the right-hand coordinate).
    pub fn left_cell_index(&self) -> u8 {
        match self {
            CellCoords::E { j, .. } => *j,
            CellCoords::F { j, .. } => *j,
            CellCoords::DInf { j, .. } => *j,
            CellCoords::DFin { m, .. } => *m,
            CellCoords::DSix { .. } => 6,
            CellCoords::DSixInv { m } => *m,
        }
    }

    /// Index of the right cell (= left cell of the inverse; determined by
    /// the left-hand coordinate).
    pub fn right_cell_index(&self) -> u8 {
        match self {
            CellCoords::E { i, .. } => *i,
            CellCoords::F { i, .. } => *i,
            CellCoords::DInf { i, .. } => *i,
            CellCoords::DFin { l, .. } => *l,
            CellCoords::DSix { l, .. } => *l,
            CellCoords::DSixInv { .. } => 6,
        }
    }

    /// Coordinates of the inverse element.  The middle elements of every
    /// family are involutions, so inversion acts on coordinates by swapping
    /// the two conjugator indices; the sixth-cell families trade places with
    /// the matching `DFin`/`DSixInv` coordinates.
    pub fn transpose(&self) -> CellCoords {
        match *self {
            CellCoords::E { i, j, k, tau } => CellCoords::E { i: j, j: i, k, tau },
            CellCoords::F { i, k, j } => CellCoords::F { i: j, k, j: i },
            CellCoords::DInf { i, k, tau, j } => CellCoords::DInf { i: j, k, tau, j: i },
            CellCoords::DFin { l: 6, m, prime: false } => {
                CellCoords::DSix { l: m, tau: false }
            }
            CellCoords::DFin { l, m, prime } => CellCoords::DFin { l: m, m: l, prime },
            CellCoords::DSix { l: 6, tau } => CellCoords::DSix { l: 6, tau },
            CellCoords::DSix { l, tau: false } => CellCoords::DFin { l: 6, m: l, prime: false },
            CellCoords::DSix { l, tau: true } => CellCoords::DSixInv { m: l },
            CellCoords::DSixInv { m } => CellCoords::DSix { l: m, tau: true },
        }
    }
}

impl std::fmt::Display for CellCoords {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CellCoords::E { i, j, k, tau } => {
                write!(f, "E(i={i},j={j},k={k},tau={})", u8::from(*tau))
            }
            CellCoords::F { i, k, j } => write!(f, "F(i={i},k={k},j={j})"),
            CellCoords::DInf { i, k, tau, j } => {
                write!(f, "D.inf(i={i},k={k},tau={},j={j})", u8::from(*tau))
            }
            CellCoords::DFin { l, m, prime } => {
                write!(f, "D.fin(l={l},m={m},prime={})", u8::from(*prime))
            }
            CellCoords::DSix { l, tau } => write!(f, "D.six(l={l},tau={})", u8::from(*tau)),
            CellCoords::DSixInv { m } => write!(f, "D.sixinv(m={m})"),
        }
    }
}

impl Serialize for CellCoords {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("cell", self.cell().label())?;
        match self {
            CellCoords::E { i, j, k, tau } => {
                map.serialize_entry("i", i)?;
                map.serialize_entry("j", j)?;
                map.serialize_entry("k", k)?;
                map.serialize_entry("tau", &u8::from(*tau))?;
            }
            CellCoords::F { i, k, j } => {
                map.serialize_entry("i", i)?;
                map.serialize_entry("k", k)?;
                map.serialize_entry("j", j)?;
            }
            CellCoords::DInf { i, k, tau, j } => {
                map.serialize_entry("family", "infinite")?;
                map.serialize_entry("i", i)?;
                map.serialize_entry("k", k)?;
                map.serialize_entry("tau", &u8::from(*tau))?;
                map.serialize_entry("j", j)?;
            }
            CellCoords::DFin { l, m, prime } => {
                map.serialize_entry("family", "finite")?;
                map.serialize_entry("l", l)?;
                map.serialize_entry("m", m)?;
                map.serialize_entry("prime", &u8::from(*prime))?;
            }
            CellCoords::DSix { l, tau } => {
                map.serialize_entry("family", "six")?;
                map.serialize_entry("l", l)?;
                map.serialize_entry("tau", &u8::from(*tau))?;
            }
            CellCoords::DSixInv { m } => {
                map.serialize_entry("family", "six-inverse")?;
                map.serialize_entry("m", m)?;
            }
        }
        map.end()
    }
}

/// All coordinates of the given cell with family parameter `k ≤ k_max`
/// (finite families are always fully included), in a fixed deterministic
/// order, together with their realizations.
pub fn enumerate(cell: CellId, k_max: u32) -> Vec<(CellCoords, Element)> {
    let mut out = Vec::new();
    match cell {
        CellId::E => {
            for k in 0..=k_max {
                for tau in [false, true] {
                    for i in 1..=6u8 {
                        for j in 1..=6u8 {
                            out.push(CellCoords::E { i, j, k, tau });
                        }
                    }
                }
            }
        }
        CellId::F => {
            for k in 0..=k_max {
                for i in 1..=8u8 {
                    for j in 1..=8u8 {
                        out.push(CellCoords::F { i, k, j });
                    }
                }
            }
        }
        CellId::D => {
            for k in 0..=k_max {
                for tau in [false, true] {
                    for i in 1..=12u8 {
                        for j in 1..=12u8 {
                            out.push(CellCoords::DInf { i, k, tau, j });
                        }
                    }
                }
            }
            for prime in [false, true] {
                for l in (4..=12u8).filter(|&l| !(prime && l == 6)) {
                    for m in (4..=12u8).filter(|&m| m != 6) {
                        out.push(CellCoords::DFin { l, m, prime });
                    }
                }
            }
            for tau in [false, true] {
                for l in 4..=12u8 {
                    out.push(CellCoords::DSix { l, tau });
                }
            }
            for m in (4..=12u8).filter(|&m| m != 6) {
                out.push(CellCoords::DSixInv { m });
            }
        }
        _ => panic!("enumeration is only available for cells D, E, F"),
    }
    out.into_iter().map(|c| (c, c.realize())).collect()
}

/// Exact reverse-lookup tables for the three supported cells, complete for
/// all elements of length ≤ `covered_length`.
pub struct CellTables {
    covered_length: u32,
    map: FastMap<Element, CellCoords>,
}

impl CellTables {
    /// Family parameter needed so that every supported element of length
    /// ≤ `len` is enumerated.  The slowest-growing infinite family gains 3
    /// per step and its conjugators can both be trivial, so `k` up to
    /// roughly `len / 3` is required; one extra step of margin is kept.
    fn k_needed(len: u32) -> u32 {
        len / 3 + 2
    }

    /// Build tables covering all supported elements of length ≤ `len`,
    /// verifying that no two coordinate tuples realize the same element.
    pub fn build(len: u32) -> Result<CellTables, CellError> {
        let k_max = Self::k_needed(len);
        let mut map = FastMap::default();
        for cell in [CellId::E, CellId::F, CellId::D] {
            for (coords, w) in enumerate(cell, k_max) {
                if let Some(prev) = map.insert(w, coords) {
                    return Err(CellError::Collision {
                        word: w.to_string(),
                        a: prev.to_string(),
                        b: coords.to_string(),
                    });
                }
            }
        }
        Ok(CellTables { covered_length: len, map })
    }

    pub fn covered_length(&self) -> u32 {
        self.covered_length
    }

    /// The unique coordinates of `w` if `w` lies in a supported cell and
    /// within the covered length; `None` for unsupported elements.
    pub fn lookup(&self, w: &Element) -> Option<CellCoords> {
        debug_assert!(w.length() <= self.covered_length, "lookup beyond covered length");
        self.map.get(w).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Left-cell representative words as printed in the source tables, by cell
/// and 1-based left-cell index; used by the validation suites.
pub fn left_cell_representative(cell: CellId, j: u8) -> Element {
    let word = match (cell, j) {
        (CellId::E, 1) => "01",
        (CellId::E, 2) => "012",
        (CellId::E, 3) => "0123",
        (CellId::E, 4) => "01232",
        (CellId::E, 5) => "012321",
        (CellId::E, 6) => "012320",
        (CellId::F, 1) => "13",
        (CellId::F, 2) => "132",
        (CellId::F, 3) => "1323",
        (CellId::F, 4) => "1320",
        (CellId::F, 5) => "03",
        (CellId::F, 6) => "032",
        (CellId::F, 7) => "0323",
        (CellId::F, 8) => "0321",
        (CellId::D, 1) => "013",
        (CellId::D, 2) => "0132",
        (CellId::D, 3) => "01323",
        (CellId::D, 4) => "01321",
        (CellId::D, 5) => "01320",
        (CellId::D, 6) => "013201",
        (CellId::D, 7) => "013213",
        (CellId::D, 8) => "013203",
        (CellId::D, 9) => "0132132",
        (CellId::D, 10) => "0132032",
        (CellId::D, 11) => "01321320",
        (CellId::D, 12) => "01320321",
        _ => panic!("no representative for {cell} left cell {j}"),
    };
    parse(word)
}

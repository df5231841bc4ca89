//! The based ring attached to each supported two-sided cell: `γ`
//! structure constants and products `t_x · t_y = Σ_z γ_{x,y,z} t_z`.
//!
//! `γ_{x,y,z}` is the coefficient of `v^{a(z)}` in the canonical-basis
//! structure constant `h_{x,y,z}` — that is the *definition* method, and it
//! requires a full canonical-basis product.  The *fastpath* method avoids
//! canonical bases entirely: when the standard-basis product
//! `T̃_x T̃_y = Σ f_{x,y,z} T̃_z` satisfies the global degree bound
//! `deg_v f_{x,y,z} ≤ a` for every `z`, the top coefficient of `f_{x,y,z}`
//! already equals `γ_{x,y,z}`.  The bound is checked on the computed
//! product, never assumed; if it fails the fastpath falls back to the
//! definition.
//!
//! Products restrict their support using two exact facts about `γ`:
//! `γ_{x,y,z} ≠ 0` forces `x ∼_L y^{-1}` (else the product is zero) and
//! `y ∼_L z`, `x ∼_R z` (which confines `z` to one left cell and one right
//! cell); the length bound `l(z) ≤ l(x) + l(y)` comes from the support of
//! the standard-basis product.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::Serialize;
use thiserror::Error;

use crate::cells::{enumerate, CellCoords, CellId};
use crate::engine::Engine;
use crate::product;
use crate::weyl::Element;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GammaMethod {
    /// Coefficient of `v^a` in `h_{x,y,z}` from a canonical-basis product.
    Definition,
    /// Coefficient of `v^a` in `f_{x,y,z}` when the degree hypothesis
    /// holds, with automatic fallback to the definition when it does not.
    Fastpath,
}

#[derive(Error, Debug)]
pub enum JringError {
    #[error("element {0} lies outside the supported cells; its a-value is unavailable here")]
    Unsupported(String),
    #[error("factors lie in different two-sided cells: {0} and {1}")]
    MixedCells(CellId, CellId),
}

fn locate_required(engine: &Engine, w: &Element) -> Result<CellCoords, JringError> {
    engine.locate(w).ok_or_else(|| JringError::Unsupported(w.to_string()))
}

/// `γ_{x,y,z}` as the coefficient of `v^{a(z)}` in `h_{x,y,z}`.
pub fn gamma_definition(
    engine: &Engine,
    x: &Element,
    y: &Element,
    z: &Element,
) -> Result<i64, JringError> {
    let zc = locate_required(engine, z)?;
    let a = zc.a_value() as i32;
    Ok(product::h_coeff(engine.kl(), x, y, z).coeff(a))
}

/// `γ_{x,y,z}` via the standard-basis degree shortcut: `Some(λ)` when the
/// product `T̃_x T̃_y` meets the global bound `deg_v ≤ a(z)` (and `x`, `y`,
/// `z` share a two-sided cell, so that `a` is the right exponent
/// everywhere); `None` when the hypothesis is not satisfied.
pub fn gamma_fastpath(
    engine: &Engine,
    x: &Element,
    y: &Element,
    z: &Element,
) -> Result<Option<i64>, JringError> {
    let zc = locate_required(engine, z)?;
    let (Some(xc), Some(yc)) = (engine.locate(x), engine.locate(y)) else {
        return Ok(None);
    };
    if xc.cell() != zc.cell() || yc.cell() != zc.cell() {
        return Ok(None);
    }
    let a = zc.a_value() as i32;
    let tv = product::t_mul(x, y);
    if tv.max_degree() > crate::laurent::Degree::Finite(a) {
        return Ok(None);
    }
    Ok(Some(tv.coeff(z).coeff(a)))
}

/// `γ_{x,y,z}` by the requested method.
pub fn gamma(
    engine: &Engine,
    x: &Element,
    y: &Element,
    z: &Element,
    method: GammaMethod,
) -> Result<i64, JringError> {
    match method {
        GammaMethod::Definition => gamma_definition(engine, x, y, z),
        GammaMethod::Fastpath => match gamma_fastpath(engine, x, y, z)? {
            Some(g) => Ok(g),
            None => gamma_definition(engine, x, y, z),
        },
    }
}

/// An integer combination of based-ring basis elements of one cell.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JElement {
    cell: CellId,
    terms: BTreeMap<CellCoords, i64>,
}

impl JElement {
    pub fn zero(cell: CellId) -> JElement {
        JElement { cell, terms: BTreeMap::new() }
    }

    pub fn basis(coords: CellCoords) -> JElement {
        let mut e = JElement::zero(coords.cell());
        e.add_term(coords, 1);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (CellCoords, i64)>>(
        cell: CellId,
        terms: I,
    ) -> JElement {
        let mut e = JElement::zero(cell);
        for (c, n) in terms {
            e.add_term(c, n);
        }
        e
    }

    pub fn cell(&self) -> CellId {
        self.cell
    }

    pub fn add_term(&mut self, coords: CellCoords, c: i64) {
        assert_eq!(coords.cell(), self.cell, "term from a different cell");
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(coords).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&coords);
        }
    }

    pub fn add(&self, other: &JElement) -> JElement {
        assert_eq!(self.cell, other.cell);
        let mut out = self.clone();
        for (&c, &n) in &other.terms {
            out.add_term(c, n);
        }
        out
    }

    pub fn coeff(&self, coords: &CellCoords) -> i64 {
        self.terms.get(coords).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in coordinate order.
    pub fn terms(&self) -> impl Iterator<Item = (CellCoords, i64)> + '_ {
        self.terms.iter().map(|(&c, &n)| (c, n))
    }
}

impl std::fmt::Display for JElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (coords, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "t[{coords}]")?;
        }
        Ok(())
    }
}

impl Serialize for JElement {
    /// `[[coords, coefficient], ...]` in coordinate order.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (coords, c) in self.terms() {
            seq.serialize_element(&(coords, c))?;
        }
        seq.end()
    }
}

/// All coordinates of `cell` that can carry a nonzero `γ_{x,y,·}`: left
/// cell of `y`, right cell of `x`, length within the product support.
fn candidates(
    cell: CellId,
    right_index: u8,
    left_index: u8,
    max_len: u32,
) -> Vec<(CellCoords, Element)> {
    let k_bound = max_len / 3 + 2;
    enumerate(cell, k_bound)
        .into_iter()
        .filter(|(c, w)| {
            c.right_cell_index() == right_index
                && c.left_cell_index() == left_index
                && w.length() <= max_len
        })
        .collect()
}

/// The based-ring product `t_x · t_y`.
pub fn t_mul(
    engine: &Engine,
    x: &CellCoords,
    y: &CellCoords,
    method: GammaMethod,
) -> Result<JElement, JringError> {
    if x.cell() != y.cell() {
        return Err(JringError::MixedCells(x.cell(), y.cell()));
    }
    let mut out = JElement::zero(x.cell());
    // γ_{x,y,z} ≠ 0 requires x ∼_L y^{-1}: the left cell of x must be the
    // right cell of y.
    if x.left_cell_index() != y.right_cell_index() {
        return Ok(out);
    }
    let rx = x.realize();
    let ry = y.realize();
    let budget = rx.length() + ry.length();
    let cands = candidates(x.cell(), x.right_cell_index(), y.left_cell_index(), budget);
    let a = x.a_value() as i32;
    match method {
        GammaMethod::Fastpath => {
            let tv = product::t_mul(&rx, &ry);
            if tv.max_degree() <= crate::laurent::Degree::Finite(a) {
                for (c, w) in &cands {
                    out.add_term(*c, tv.coeff(w).coeff(a));
                }
                return Ok(out);
            }
            // Hypothesis failed: fall through to the definition.
        }
        GammaMethod::Definition => {}
    }
    let ch = product::c_mul(engine.kl(), &rx, &ry);
    for (c, w) in &cands {
        out.add_term(*c, ch.coeff(w).coeff(a));
    }
    Ok(out)
}

/// The unit of the based ring: the sum of `t_d` over the distinguished
/// involutions of the cell, one per left cell, all of which occur at
/// family parameter `k ≤ 1`.
pub fn unit(engine: &Engine, cell: CellId) -> JElement {
    let a = cell.a_value();
    let mut out = JElement::zero(cell);
    let mut seen = std::collections::BTreeSet::new();
    for (coords, w) in enumerate(cell, 1) {
        if engine.kl().is_distinguished(&w, a) {
            assert!(
                seen.insert(coords.left_cell_index()),
                "two distinguished involutions in left cell {} of {cell}",
                coords.left_cell_index()
            );
            out.add_term(coords, 1);
        }
    }
    assert_eq!(
        seen.len() as u32,
        cell.left_cell_count(),
        "missing distinguished involutions in {cell}"
    );
    out
}

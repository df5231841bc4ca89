//! Kazhdan-Lusztig polynomials `P_{y,w}`, the `μ`/`μ̃` coefficients, the
//! canonical-basis expansion `C_w = Σ_y v^{l(y)-l(w)} P_{y,w} T̃_y`, and
//! distinguished-involution testing.
//!
//! Polynomials are stored in the variable `v` with `q = v²`, so a `P_{y,w}`
//! only carries even exponents.  Computation is by the classical descent
//! recursion: pick a descent `s` of `w` and set `w = s·v` (left version) —
//! then for `sy < y`
//!
//! ```text
//! P_{y,w} = P_{sy,v} + q·P_{y,v} − Σ_{y ≤ z ≺ v, sz < z} μ(z,v)·q^{(l(w)−l(z))/2}·P_{y,z}
//! ```
//!
//! and `P_{y,w} = P_{sy,w}` when `sy > y`.  The mirrored right-descent
//! recursion is also implemented; the two must agree, which the verification
//! suites check exhaustively on all pairs up to length 10.
//!
//! Rows (all `P_{·,w}` for one `w`) are memoized behind a mutex and shared;
//! recomputation races are harmless because insertion is idempotent.

use std::sync::{Arc, Mutex};

use crate::fasthash::FastMap;
use crate::laurent::{Degree, Laurent};
use crate::weyl::{Element, Gen};

/// Which one-sided recursion to use.  Both produce the same polynomials;
/// having the two independent implementations is a deliberate cross-check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    #[inline]
    pub fn is_descent(self, w: &Element, g: Gen) -> bool {
        match self {
            Side::Left => w.has_left_descent(g),
            Side::Right => w.has_right_descent(g),
        }
    }

    /// Multiply by the generator on this side (`s·w` or `w·s`).
    #[inline]
    pub fn apply(self, w: &Element, g: Gen) -> Element {
        match self {
            Side::Left => w.left_mul_gen(g),
            Side::Right => w.right_mul_gen(g),
        }
    }

    #[inline]
    fn smallest_descent(self, w: &Element) -> Option<Gen> {
        match self {
            Side::Left => w.left_descents().smallest(),
            Side::Right => w.right_descents().smallest(),
        }
    }
}

/// All KL data attached to a single `τ`-free element `w`: the polynomials
/// `P_{y,w}` for every `y ≤ w` together with cached lengths, and the list of
/// `y` with `μ(y,w) ≠ 0`.
pub struct KlRow {
    pub w: Element,
    pub length: u32,
    /// `y ↦ (l(y), P_{y,w})` for every `y ≤ w`; every stored polynomial is
    /// nonzero (KL polynomials have constant term 1).
    pub polys: FastMap<Element, (u32, Laurent)>,
    /// `(y, l(y), μ(y,w))` for exactly the `y < w` with `μ(y,w) ≠ 0`.
    pub mu: Vec<(Element, u32, i64)>,
}

impl KlRow {
    /// `P_{y,w}`, zero when `y ≰ w`.
    pub fn poly(&self, y: &Element) -> Laurent {
        self.polys.get(y).map(|(_, p)| p.clone()).unwrap_or_else(Laurent::zero)
    }

    /// `μ(y,w)`: the coefficient of `P_{y,w}` at `v^{l(w)-l(y)-1}`.
    pub fn mu_of(&self, y: &Element) -> i64 {
        match self.polys.get(y) {
            Some((ly, p)) if *ly < self.length => p.coeff((self.length - ly - 1) as i32),
            _ => 0,
        }
    }
}

/// Shared, thread-safe store of KL rows for both recursion directions.
pub struct KlContext {
    rows_left: Mutex<FastMap<Element, Arc<KlRow>>>,
    rows_right: Mutex<FastMap<Element, Arc<KlRow>>>,
}

impl Default for KlContext {
    fn default() -> Self {
        Self::new()
    }
}

impl KlContext {
    pub fn new() -> Self {
        KlContext {
            rows_left: Mutex::new(FastMap::default()),
            rows_right: Mutex::new(FastMap::default()),
        }
    }

    fn store(&self, side: Side) -> &Mutex<FastMap<Element, Arc<KlRow>>> {
        match side {
            Side::Left => &self.rows_left,
            Side::Right => &self.rows_right,
        }
    }

    /// The row of `w` under the default (left) recursion.  `w` must be
    /// `τ`-free; callers strip the flag first.
    pub fn row(&self, w: &Element) -> Arc<KlRow> {
        self.row_side(w, Side::Left)
    }

    pub fn row_side(&self, w: &Element, side: Side) -> Arc<KlRow> {
        assert!(!w.tau_flag(), "KL rows are computed in W'; strip τ first");
        if let Some(r) = self.store(side).lock().unwrap().get(w) {
            return Arc::clone(r);
        }
        // Compute outside the lock; a concurrent thread may duplicate the
        // work, but the first insertion wins and results are identical.
        let row = Arc::new(self.compute_row(w, side));
        Arc::clone(self.store(side).lock().unwrap().entry(*w).or_insert(row))
    }

    /// Installs a precomputed left-recursion row for `w` if the entries form
    /// a complete, structurally valid row: the support is exactly the Bruhat
    /// lower interval of `w`, every polynomial is monic at `v^0`, the
    /// diagonal entry is 1, and the degree bound holds.  Returns whether the
    /// row was accepted; rejected rows are recomputed on demand, so a stale
    /// or truncated cache can never change results.
    pub fn preload_row(&self, w: &Element, entries: &[(Element, Laurent)]) -> bool {
        if w.tau_flag() {
            return false;
        }
        let interval = w.lower_interval();
        if entries.len() != interval.len() {
            return false;
        }
        let lw = w.length();
        let mut polys: FastMap<Element, (u32, Laurent)> =
            FastMap::with_capacity_and_hasher(entries.len(), Default::default());
        for (y, p) in entries {
            if y.tau_flag() || p.coeff(0) != 1 || p.valuation() != Degree::Finite(0) {
                return false;
            }
            let ly = y.length();
            if y == w {
                if *p != Laurent::one() {
                    return false;
                }
            } else if ly >= lw || p.degree() > Degree::Finite((lw - ly - 1) as i32) {
                return false;
            }
            if polys.insert(*y, (ly, p.clone())).is_some() {
                return false;
            }
        }
        if interval.iter().any(|y| !polys.contains_key(y)) {
            return false;
        }
        let mut mu_list = Vec::new();
        for (y, (ly, p)) in polys.iter() {
            if *ly < lw {
                let m = p.coeff((lw - ly - 1) as i32);
                if m != 0 {
                    mu_list.push((*y, *ly, m));
                }
            }
        }
        mu_list.sort_by_cached_key(|(y, _, _)| y.sort_key());
        let row = Arc::new(KlRow { w: *w, length: lw, polys, mu: mu_list });
        self.rows_left.lock().unwrap().entry(*w).or_insert(row);
        true
    }

    fn compute_row(&self, w: &Element, side: Side) -> KlRow {
        let s = match side.smallest_descent(w) {
            Some(s) => s,
            None => {
                // w = e.
                let mut polys = FastMap::default();
                polys.insert(Element::identity(), (0, Laurent::one()));
                return KlRow { w: *w, length: 0, polys, mu: Vec::new() };
            }
        };
        let v = side.apply(w, s);
        let rv = self.row_side(&v, side);
        let lw = rv.length + 1;

        // Accumulate P_{y,w} for the descent-side half {y ≤ w : s-descent}.
        let mut acc: FastMap<Element, (u32, Laurent)> =
            FastMap::with_capacity_and_hasher(rv.polys.len() * 2, Default::default());
        for (u, (lu, p)) in rv.polys.iter() {
            if side.is_descent(u, s) {
                // Contributes q·P_{y,v} with y = u.
                let e = acc.entry(*u).or_insert_with(|| (*lu, Laurent::zero()));
                e.1 += &p.shifted(2);
            } else {
                // Contributes P_{sy,v} with sy = u, i.e. y = s·u.
                let y = side.apply(u, s);
                let e = acc.entry(y).or_insert_with(|| (lu + 1, Laurent::zero()));
                e.1 += p;
            }
        }
        // μ-corrections: z ≺ v with an s-descent.
        for (z, lz, mu) in rv.mu.iter() {
            if !side.is_descent(z, s) {
                continue;
            }
            let rz = self.row_side(z, side);
            let shift = (lw - lz) as i32;
            for (y, (_, pyz)) in rz.polys.iter() {
                if side.is_descent(y, s) {
                    let e = acc.get_mut(y).expect("correction outside the seeded support");
                    e.1.add_scaled(&pyz.shifted(shift), -mu);
                }
            }
        }

        // Fill in the ascent half by P_{y,w} = P_{sy,w} and collect μ.
        let mut polys: FastMap<Element, (u32, Laurent)> =
            FastMap::with_capacity_and_hasher(acc.len() * 2, Default::default());
        let mut mu_list = Vec::new();
        for (y, (ly, p)) in acc.into_iter() {
            debug_assert!(!p.is_zero(), "KL polynomial vanished for a Bruhat-comparable pair");
            debug_assert!(
                y == *w || p.degree() <= Degree::Finite((lw - ly - 1) as i32),
                "KL degree bound violated at l(w)={lw}, l(y)={ly}"
            );
            let partner = side.apply(&y, s);
            polys.insert(partner, (ly - 1, p.clone()));
            polys.insert(y, (ly, p));
        }
        for (y, (ly, p)) in polys.iter() {
            if *ly < lw {
                let m = p.coeff((lw - ly - 1) as i32);
                if m != 0 {
                    mu_list.push((*y, *ly, m));
                }
            }
        }
        mu_list.sort_by_cached_key(|(y, _, _)| y.sort_key());
        KlRow { w: *w, length: lw, polys, mu: mu_list }
    }

    /// `P_{y,w}` in the extended group: zero across different `τ`-flags,
    /// otherwise the polynomial for the `W'`-components.
    pub fn kl_poly(&self, y: &Element, w: &Element) -> Laurent {
        self.kl_poly_side(y, w, Side::Left)
    }

    pub fn kl_poly_side(&self, y: &Element, w: &Element, side: Side) -> Laurent {
        if y.tau_flag() != w.tau_flag() {
            return Laurent::zero();
        }
        self.row_side(&w.linear_part(), side).poly(&y.linear_part())
    }

    /// `μ(y,w)` (zero unless `y < w` with equal flags).
    pub fn mu(&self, y: &Element, w: &Element) -> i64 {
        if y.tau_flag() != w.tau_flag() {
            return 0;
        }
        self.row(&w.linear_part()).mu_of(&y.linear_part())
    }

    /// Symmetrized `μ̃(y,w) = μ(y,w)` if `y < w`, `μ(w,y)` if `w < y`, else 0.
    pub fn mu_tilde(&self, y: &Element, w: &Element) -> i64 {
        match y.length().cmp(&w.length()) {
            std::cmp::Ordering::Less => self.mu(y, w),
            std::cmp::Ordering::Greater => self.mu(w, y),
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// The T̃-basis expansion of the canonical basis element:
    /// `C_w = Σ_{y ≤ w} v^{l(y)−l(w)} P_{y,w} T̃_y`, with `C_{τx} = T̃_τ C_x`
    /// carried through on the indices.  Sorted by the canonical element order.
    pub fn c_expansion(&self, w: &Element) -> Vec<(Element, Laurent)> {
        let row = self.row(&w.linear_part());
        let lw = row.length as i32;
        let mut out: Vec<(Element, Laurent)> = row
            .polys
            .iter()
            .map(|(y, (ly, p))| {
                let key =
                    if w.tau_flag() { Element::tau().mul(y) } else { *y };
                (key, p.shifted(*ly as i32 - lw))
            })
            .collect();
        out.sort_by_cached_key(|(y, _)| y.sort_key());
        out
    }

    /// `δ(w) = deg_q P_{e,w}` (computed on the `W'`-component).
    pub fn delta(&self, w: &Element) -> u32 {
        let p = self.row(&w.linear_part()).poly(&Element::identity());
        match p.degree() {
            Degree::Finite(d) => {
                debug_assert!(d >= 0 && d % 2 == 0);
                (d / 2) as u32
            }
            Degree::NegInf => unreachable!("P_{{e,w}} is never zero"),
        }
    }

    /// Whether `w` is a distinguished involution, given the `a`-value of its
    /// two-sided cell: `w` lies in the Coxeter part, `w² = e`, and
    /// `l(w) − a − 2δ(w) = 0`.  The restriction to the Coxeter part matters:
    /// for a length-zero `ω ≠ e` the element `ωd` can be an involution with
    /// the same length and `δ` as `d`, yet the units of the based rings are
    /// supported on the Coxeter part alone.
    pub fn is_distinguished(&self, w: &Element, a_val: u32) -> bool {
        if w.tau_flag() || w.inverse() != *w {
            return false;
        }
        w.length() == a_val + 2 * self.delta(w)
    }

    /// Every computed pair `(y, w, P_{y,w})` of the left store, sorted; used
    /// to persist the memo across runs.
    pub fn computed_pairs(&self) -> Vec<(Element, Element, Laurent)> {
        let store = self.rows_left.lock().unwrap();
        let mut out = Vec::new();
        for row in store.values() {
            for (y, (_, p)) in row.polys.iter() {
                out.push((*y, row.w, p.clone()));
            }
        }
        drop(store);
        out.sort_by_cached_key(|(y, w, _)| (w.sort_key(), y.sort_key()));
        out
    }

    /// Number of memoized rows (left store); a cheap progress metric.
    pub fn rows_computed(&self) -> usize {
        self.rows_left.lock().unwrap().len()
    }
}

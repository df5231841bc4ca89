//! Products in the Hecke algebra over `Z[v, v^{-1}]` in the two bases:
//! the standard basis `T̃_w = q^{-l(w)/2} T_w` and the canonical basis `C_w`.
//!
//! Multiplication is grounded in the rank-one relation
//! `T̃_w T̃_s = T̃_{ws}` if `l(ws) > l(w)`, else `T̃_{ws} + ζ T̃_w` with
//! `ζ = v − v^{-1}`; the length-zero element `τ` multiplies indices directly.
//! A product by a linear combination (such as a canonical-basis expansion)
//! folds generator by generator along a shared prefix tree of canonical
//! words, so common subproducts are computed once.
//!
//! Conversion from the T̃-basis back to the C-basis is by greedy elimination
//! from the top length down; it terminates because the canonical basis is
//! unitriangular over the standard one.

use crate::fasthash::FastMap;
use crate::kl::KlContext;
use crate::laurent::{Degree, Laurent};
use crate::weyl::{Element, Gen};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    /// Normalized standard basis `T̃_w`.
    Ttilde,
    /// Canonical (Kazhdan-Lusztig) basis `C_w`.
    C,
}

/// A sparse Hecke-algebra element: finitely many `w ↦ coefficient` terms in
/// a fixed basis.  Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct HeckeVec {
    pub basis: Basis,
    pub terms: FastMap<Element, Laurent>,
}

impl HeckeVec {
    pub fn zero(basis: Basis) -> Self {
        HeckeVec { basis, terms: FastMap::default() }
    }

    /// The single basis element `w` with coefficient 1.
    pub fn unit(basis: Basis, w: Element) -> Self {
        let mut terms = FastMap::default();
        terms.insert(w, Laurent::one());
        HeckeVec { basis, terms }
    }

    pub fn coeff(&self, w: &Element) -> Laurent {
        self.terms.get(w).cloned().unwrap_or_else(Laurent::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Element, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    /// `self += other · c` (same basis).
    pub fn add_scaled_vec(&mut self, other: &HeckeVec, c: &Laurent) {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        for (w, cw) in other.terms.iter() {
            self.add_term(*w, &(cw * c));
        }
    }

    /// Terms sorted by the canonical element order; the deterministic view.
    pub fn sorted_terms(&self) -> Vec<(Element, Laurent)> {
        let mut v: Vec<(Element, Laurent)> =
            self.terms.iter().map(|(w, c)| (*w, c.clone())).collect();
        v.sort_by_cached_key(|(w, _)| w.sort_key());
        v
    }

    /// Largest exponent of `v` over all coefficients.
    pub fn max_degree(&self) -> Degree {
        self.terms.values().map(|c| c.degree()).max().unwrap_or(Degree::NegInf)
    }

    /// Right multiplication by `T̃_g` (T̃-basis only).
    pub fn fold_gen(&self, g: Gen) -> HeckeVec {
        assert_eq!(self.basis, Basis::Ttilde, "generator folding is a T̃-basis operation");
        let zeta = Laurent::zeta();
        let mut out = HeckeVec {
            basis: Basis::Ttilde,
            terms: FastMap::with_capacity_and_hasher(self.terms.len() * 2, Default::default()),
        };
        for (u, c) in self.terms.iter() {
            let ug = u.right_mul_gen(g);
            if u.has_right_descent(g) {
                out.add_term(ug, c);
                out.add_term(*u, &(c * &zeta));
            } else {
                out.add_term(ug, c);
            }
        }
        out
    }

    /// Right multiplication by `T̃_τ`: a bijective index shift.
    pub fn fold_tau(&self) -> HeckeVec {
        assert_eq!(self.basis, Basis::Ttilde);
        let tau = Element::tau();
        let terms = self.terms.iter().map(|(u, c)| (u.mul(&tau), c.clone())).collect();
        HeckeVec { basis: Basis::Ttilde, terms }
    }

    /// Right multiplication by the single basis element `T̃_w`.
    pub fn fold_element(&self, w: &Element) -> HeckeVec {
        let mut cur = if w.tau_flag() {
            // T̃_u T̃_{τ x} = T̃_{uτ} T̃_x.
            self.fold_tau()
        } else {
            self.clone()
        };
        for g in w.canonical_word() {
            cur = cur.fold_gen(g);
        }
        cur
    }
}

/// `T̃_x · T̃_y` expanded in the T̃-basis: the `f_{x,y,z}` generating vector.
pub fn t_mul(x: &Element, y: &Element) -> HeckeVec {
    HeckeVec::unit(Basis::Ttilde, *x).fold_element(y)
}

/// Structure constant `f_{x,y,z}` of the T̃-basis.
pub fn f_coeff(x: &Element, y: &Element, z: &Element) -> Laurent {
    t_mul(x, y).coeff(z)
}

/// `xvec · (Σ c_w T̃_w)` for a T̃-basis `xvec` and an arbitrary list of
/// terms.  Shared canonical-word prefixes of the `w` are folded once: the
/// terms are organized into a prefix tree and visited depth-first, carrying
/// the partial product `xvec · T̃_{prefix}` down the tree.
pub fn t_mul_terms(xvec: &HeckeVec, yterms: &[(Element, Laurent)]) -> HeckeVec {
    assert_eq!(xvec.basis, Basis::Ttilde);
    let mut out = HeckeVec::zero(Basis::Ttilde);
    for flag in [false, true] {
        let sub: FastMap<Element, Laurent> = yterms
            .iter()
            .filter(|(w, _)| w.tau_flag() == flag)
            .map(|(w, c)| (w.linear_part(), c.clone()))
            .collect();
        if sub.is_empty() {
            continue;
        }
        // Prefix-closed node set with parent edges (drop the last letter of
        // the canonical word; for canonical-basis supports — full Bruhat
        // intervals — this adds no extra nodes).
        let mut children: FastMap<Element, Vec<(Gen, Element)>> = FastMap::default();
        let mut known: FastMap<Element, ()> = FastMap::default();
        known.insert(Element::identity(), ());
        for w in sub.keys() {
            let word = w.canonical_word();
            let mut node = Element::identity();
            for g in word {
                let next = node.right_mul_gen(g);
                if known.insert(next, ()).is_none() {
                    children.entry(node).or_default().push((g, next));
                }
                node = next;
            }
        }
        for kids in children.values_mut() {
            kids.sort_by_key(|(g, _)| g.index());
        }

        let base = if flag { xvec.fold_tau() } else { xvec.clone() };
        fn dfs(
            node: &Element,
            vec: &HeckeVec,
            children: &FastMap<Element, Vec<(Gen, Element)>>,
            sub: &FastMap<Element, Laurent>,
            out: &mut HeckeVec,
        ) {
            if let Some(c) = sub.get(node) {
                out.add_scaled_vec(vec, c);
            }
            if let Some(kids) = children.get(node) {
                for (g, child) in kids {
                    let next = vec.fold_gen(*g);
                    dfs(child, &next, children, sub, out);
                }
            }
        }
        dfs(&Element::identity(), &base, &children, &sub, &mut out);
    }
    out
}

/// Convert a T̃-basis vector to the C-basis by greedy elimination from the
/// top length down.  When a maximal-length element `z` remains in the
/// accumulator its T̃-coefficient is exactly its C-coefficient, so subtract
/// that multiple of `C_z` and continue.
pub fn convert_to_c(kl: &KlContext, tvec: &HeckeVec) -> HeckeVec {
    assert_eq!(tvec.basis, Basis::Ttilde);
    let mut acc = tvec.terms.clone();
    let mut buckets: std::collections::BTreeMap<u32, Vec<Element>> = Default::default();
    let mut bucketed: FastMap<Element, ()> = FastMap::default();
    for w in acc.keys() {
        buckets.entry(w.length()).or_default().push(*w);
        bucketed.insert(*w, ());
    }
    let mut out = HeckeVec::zero(Basis::C);
    while let Some((&len, _)) = buckets.last_key_value() {
        let mut zs = buckets.remove(&len).unwrap();
        zs.sort_by_cached_key(|z| z.sort_key());
        for z in zs {
            let h = match acc.remove(&z) {
                Some(h) if !h.is_zero() => h,
                _ => continue,
            };
            // Subtract h · C_z (in T̃ terms); the (z, 1) head was removed above.
            for (u, cu) in kl.c_expansion(&z) {
                if u == z {
                    continue;
                }
                let delta = &cu * &h;
                use std::collections::hash_map::Entry;
                match acc.entry(u) {
                    Entry::Occupied(mut e) => {
                        *e.get_mut() -= &delta;
                    }
                    Entry::Vacant(e) => {
                        e.insert(-&delta);
                        if bucketed.insert(u, ()).is_none() {
                            buckets.entry(u.length()).or_default().push(u);
                        }
                    }
                }
            }
            out.terms.insert(z, h);
        }
    }
    debug_assert!(acc.values().all(|c| c.is_zero()), "conversion left a nonzero remainder");
    out
}

/// `C_x · C_y` in the C-basis: the full vector of `h_{x,y,z}`.
pub fn c_mul(kl: &KlContext, x: &Element, y: &Element) -> HeckeVec {
    let cx = kl.c_expansion(x);
    let cy = kl.c_expansion(y);
    let xvec = HeckeVec { basis: Basis::Ttilde, terms: cx.into_iter().collect() };
    let tprod = t_mul_terms(&xvec, &cy);
    convert_to_c(kl, &tprod)
}

/// `C_x · C_y` left in the T̃-basis (no conversion).
pub fn c_mul_ttilde(kl: &KlContext, x: &Element, y: &Element) -> HeckeVec {
    let cx = kl.c_expansion(x);
    let cy = kl.c_expansion(y);
    let xvec = HeckeVec { basis: Basis::Ttilde, terms: cx.into_iter().collect() };
    t_mul_terms(&xvec, &cy)
}

/// Structure constant `h_{x,y,z}` of the canonical basis.
pub fn h_coeff(kl: &KlContext, x: &Element, y: &Element, z: &Element) -> Laurent {
    c_mul(kl, x, y).coeff(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> Element {
        Element::parse(s).unwrap()
    }

    fn small_ball(max_len: u32) -> Vec<Element> {
        let mut all = vec![Element::identity(), Element::tau()];
        let mut frontier = all.clone();
        while let Some(w) = frontier.pop() {
            for g in Gen::ALL {
                let next = w.right_mul_gen(g);
                if next.length() > w.length() && next.length() <= max_len && !all.contains(&next) {
                    all.push(next);
                    frontier.push(next);
                }
            }
        }
        all
    }

    #[test]
    fn quadratic_relation() {
        for g in Gen::ALL {
            let s = Element::generator(g);
            let p = t_mul(&s, &s);
            assert_eq!(p.coeff(&Element::identity()), Laurent::one());
            assert_eq!(p.coeff(&s), Laurent::zeta());
            assert_eq!(p.terms.len(), 2);
        }
    }

    #[test]
    fn units_and_length_additive_products() {
        let x = el("0132");
        assert_eq!(t_mul(&x, &Element::identity()).sorted_terms(), vec![(x, Laurent::one())]);
        let p = t_mul(&el("2"), &el("3"));
        assert_eq!(p.sorted_terms(), vec![(el("23"), Laurent::one())]);
        // τ on either side shifts indices only.
        let p = t_mul(&el("t2"), &el("t3"));
        assert_eq!(p.sorted_terms(), vec![(el("t2").mul(&el("t3")), Laurent::one())]);
    }

    #[test]
    fn f_support_bound() {
        let x = el("232");
        let y = el("320");
        let p = t_mul(&x, &y);
        for (z, c) in p.sorted_terms() {
            assert!(z.length() <= x.length() + y.length());
            assert!(!c.is_zero());
        }
        assert!(f_coeff(&x, &y, &el("01232132")).is_zero());
    }

    #[test]
    fn c_products_rank_one() {
        let kl = KlContext::new();
        let s0 = el("0");
        // C_s·C_s = ξ·C_s.
        let p = c_mul(&kl, &s0, &s0);
        assert_eq!(p.sorted_terms(), vec![(s0, Laurent::xi())]);
        assert_eq!(h_coeff(&kl, &s0, &s0, &s0), Laurent::xi());
        // C_e is the unit.
        let y = el("0232");
        assert_eq!(c_mul(&kl, &Element::identity(), &y).sorted_terms(), vec![(y, Laurent::one())]);
        assert_eq!(c_mul(&kl, &y, &Element::identity()).sorted_terms(), vec![(y, Laurent::one())]);
    }

    /// C_s·C_w for sw > w must equal C_{sw} + Σ_{y≺w, sy<y} μ(y,w)·C_y:
    /// the defining recurrence of the canonical basis, checked against the
    /// independently computed KL μ-table for every w up to length 4.
    #[test]
    fn c_mul_matches_mu_recurrence() {
        let kl = KlContext::new();
        for w in small_ball(4) {
            for g in Gen::ALL {
                let s = Element::generator(g);
                let p = c_mul(&kl, &s, &w);
                if w.has_left_descent(g) {
                    // C_s C_w = ξ C_w.
                    assert_eq!(p.sorted_terms(), vec![(w, Laurent::xi())], "ξ-case failed at {w}");
                    continue;
                }
                let sw = w.left_mul_gen(g);
                let mut expected = HeckeVec::zero(Basis::C);
                expected.add_term(sw, &Laurent::one());
                let row = kl.row(&w.linear_part());
                for (y, _, m) in row.mu.iter() {
                    let key = if w.tau_flag() { Element::tau().mul(y) } else { *y };
                    if key.has_left_descent(g) {
                        expected.add_term(key, &Laurent::constant(*m));
                    }
                }
                assert_eq!(
                    p.sorted_terms(),
                    expected.sorted_terms(),
                    "1.1(e) recurrence failed at s={s}, w={w}"
                );
            }
        }
    }

    #[test]
    fn h_coefficients_are_bar_invariant() {
        let kl = KlContext::new();
        for (x, y) in [(el("232"), el("232")), (el("010"), el("0102")), (el("t23"), el("320"))] {
            let p = c_mul(&kl, &x, &y);
            for (z, h) in p.sorted_terms() {
                assert_eq!(h.bar(), h, "h at {z} not bar-invariant");
            }
        }
    }

    #[test]
    fn c_associativity_spot_check() {
        let kl = KlContext::new();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let ball = small_ball(4);
        for _ in 0..20 {
            let a = ball[rng.gen_range(0..ball.len())];
            let b = ball[rng.gen_range(0..ball.len())];
            let c = ball[rng.gen_range(0..ball.len())];
            let ab = c_mul(&kl, &a, &b);
            let mut ab_c = HeckeVec::zero(Basis::C);
            for (z, h) in ab.sorted_terms() {
                ab_c.add_scaled_vec(&c_mul(&kl, &z, &c), &h);
            }
            let bc = c_mul(&kl, &b, &c);
            let mut a_bc = HeckeVec::zero(Basis::C);
            for (z, h) in bc.sorted_terms() {
                a_bc.add_scaled_vec(&c_mul(&kl, &a, &z), &h);
            }
            assert_eq!(
                ab_c.sorted_terms(),
                a_bc.sorted_terms(),
                "associativity failed at ({a})({b})({c})"
            );
        }
    }

    #[test]
    fn tau_shifts_products() {
        let kl = KlContext::new();
        let x = el("232");
        let y = el("021");
        let tau = Element::tau();
        let plain = c_mul(&kl, &x, &y);
        let shifted = c_mul(&kl, &tau.mul(&x), &y);
        for (z, h) in plain.sorted_terms() {
            assert_eq!(shifted.coeff(&tau.mul(&z)), h);
        }
        assert_eq!(plain.terms.len(), shifted.terms.len());
    }

    #[test]
    fn roundtrip_t_to_c() {
        let kl = KlContext::new();
        // Converting the T̃-expansion of C_w must give exactly C_w.
        for w in [el("2323"), el("0123"), el("t0213")] {
            let tvec =
                HeckeVec { basis: Basis::Ttilde, terms: kl.c_expansion(&w).into_iter().collect() };
            let back = convert_to_c(&kl, &tvec);
            assert_eq!(back.sorted_terms(), vec![(w, Laurent::one())]);
        }
    }
}

//! Left and right strings with respect to a pair of generators whose braid
//! order is 3 or 4, and the star operations they define.
//!
//! Fix generators `s ≠ t` with `m = m(s,t) ∈ {3, 4}` and a base element `w`
//! having neither `s` nor `t` as a left descent.  The two left strings over
//! `w` are the `m − 1` element sequences
//!
//! ```text
//! sw, tsw, stsw, ...      and      tw, stw, tstw, ...
//! ```
//!
//! Every element with exactly one left descent among `{s, t}` lies in
//! exactly one left string, at a well-defined (1-based) position `i`; its
//! left star image is the element at position `m − i` of the same string.
//! Right strings and right stars are defined symmetrically with
//! multiplication on the right.  For `m = 3` the star swaps the two string
//! positions; for `m = 4` it swaps positions 1 and 3 and fixes position 2.

use crate::kl::Side;
use crate::weyl::{Element, Gen};

/// The generator pairs with braid order ≥ 3, i.e. those admitting strings.
pub fn string_pairs() -> Vec<(Gen, Gen)> {
    let mut out = Vec::new();
    for a in Gen::ALL {
        for b in Gen::ALL {
            if a < b && a.braid_order(b) >= 3 {
                out.push((a, b));
            }
        }
    }
    out
}

/// A string together with the position of the element it was computed from.
#[derive(Clone, Debug)]
pub struct StringInfo {
    pub side: Side,
    pub pair: (Gen, Gen),
    /// The `m − 1` string members in string order.
    pub members: Vec<Element>,
    /// 1-based position of the query element within `members`.
    pub position: usize,
}

impl StringInfo {
    /// The star image: the element at position `m − i`.
    pub fn star(&self) -> Element {
        self.members[self.members.len() - self.position]
    }
}

/// The string through `w` with respect to `{s, t}` on the given side, or
/// `None` if `w` has zero or two descents among `{s, t}` on that side.
pub fn string_of(w: &Element, s: Gen, t: Gen, side: Side) -> Option<StringInfo> {
    let m = s.braid_order(t);
    assert!(m >= 3, "strings require braid order ≥ 3, got {m}");
    if side.is_descent(w, s) == side.is_descent(w, t) {
        return None;
    }
    // Strip the {s,t}-part to reach the base of the coset.
    let mut base = *w;
    loop {
        if side.is_descent(&base, s) {
            base = side.apply(&base, s);
        } else if side.is_descent(&base, t) {
            base = side.apply(&base, t);
        } else {
            break;
        }
    }
    let build = |first: Gen, second: Gen| -> Vec<Element> {
        let mut members = Vec::with_capacity((m - 1) as usize);
        let mut cur = side.apply(&base, first);
        members.push(cur);
        let mut next = second;
        for _ in 1..m - 1 {
            cur = side.apply(&cur, next);
            members.push(cur);
            next = if next == first { second } else { first };
        }
        members
    };
    for members in [build(s, t), build(t, s)] {
        if let Some(idx) = members.iter().position(|e| e == w) {
            return Some(StringInfo { side, pair: (s, t), members, position: idx + 1 });
        }
    }
    unreachable!("element with one descent in {{s,t}} must lie in a string")
}

/// The star image of `w` with respect to `{s, t}` on the given side, if `w`
/// lies in a string.
pub fn star(w: &Element, s: Gen, t: Gen, side: Side) -> Option<Element> {
    string_of(w, s, t, side).map(|info| info.star())
}

//! Mechanical verification suites.
//!
//! Each suite checks a family of exact identities — closed-form products in
//! the based rings, star/string laws, matrix-ring isomorphism properties,
//! distinguished involutions, or cross-model oracles — and returns a
//! [`Report`] listing every case with a pass flag and enough detail to
//! pinpoint a failure.  Sampled suites draw from a fixed-seed generator so
//! results are reproducible run to run and across thread counts.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cells::{enumerate, CellCoords, CellId};
use crate::engine::Engine;
use crate::jring::{self, GammaMethod, JElement, JringError};
use crate::kl::Side;
use crate::laurent::Degree;
use crate::product;
use crate::rep::{pi_dim, PiMaps, RepMat};
use crate::star;
use crate::weyl::{Element, Gen, GenSet};
use crate::wordmodel;

/// Fixed seed for all sampled suites.
const SEED: u64 = 0xB3;

/// Largest factor length accepted without an explicit override.
pub const FACTOR_BUDGET: u32 = 22;

/// One verified instance.
#[derive(Debug, Clone, Serialize)]
pub struct Case {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    pub pass: bool,
    pub details: String,
}

impl Case {
    fn at(k: u32, l: u32, pass: bool, details: String) -> Case {
        Case { k: Some(k), l: Some(l), pass, details }
    }

    fn labeled(pass: bool, details: String) -> Case {
        Case { k: None, l: None, pass, details }
    }
}

/// Outcome of a verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub pass: bool,
    pub instances: usize,
    pub cases: Vec<Case>,
}

impl Report {
    fn new(instances: usize, cases: Vec<Case>) -> Report {
        Report { pass: cases.iter().all(|c| c.pass), instances, cases }
    }
}

#[derive(Error, Debug)]
pub enum VerifyError {
    #[error(
        "factor of length {0} exceeds the per-factor budget {1}; run with force to proceed anyway"
    )]
    Budget(u32, u32),
    #[error(transparent)]
    Jring(#[from] JringError),
}

/// The supported closed-form product identities.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LemmaId {
    /// `t_{x_k} t_{x_l} = Σ_{i=0}^{min(k,l)} t_{x_{k+l−2i}}` on the diagonal
    /// family of the six-by-six cell.
    DiagonalSix,
    /// The same recursion on the diagonal family of the eight-by-eight cell.
    DiagonalEight,
    /// `t_{u_k} t_{u_l} = Σ_{0≤i≤min(2k,2l)} t_{u_{k+l−i}}` in the
    /// twelve-by-twelve cell.
    USeries,
    /// `t_{s1s2·u_k} t_{u_l} = t_{s1s2τ·u_k} t_{τu_l}
    ///  = Σ_{0≤i≤min(2k+1,2l)} t_{s1s2·u_{k+l−i}}`.
    ClubB,
    /// The flag-twisted companion of [`LemmaId::ClubB`], landing on the
    /// flagged family.
    ClubC,
    /// `t_{s1s2·u_k} t_{u_l·s2s1} = t_{s1s2τ·u_k} t_{u_l·τs2s1}
    ///  = Σ_{0≤i≤min(2k+1,2l+1)} t_{x_{k+l+1−i}}` into the corner family.
    SpadeB,
    /// The flag-twisted companion of [`LemmaId::SpadeB`], landing on the
    /// flagged corner family.
    SpadeC,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::DiagonalSix,
        LemmaId::DiagonalEight,
        LemmaId::USeries,
        LemmaId::ClubB,
        LemmaId::ClubC,
        LemmaId::SpadeB,
        LemmaId::SpadeC,
    ];

    /// Stable identifier used on the command line and in reports.
    pub fn id(self) -> &'static str {
        match self {
            LemmaId::DiagonalSix => "L3.5",
            LemmaId::DiagonalEight => "L4.4",
            LemmaId::USeries => "QX15",
            LemmaId::ClubB => "club_b",
            LemmaId::ClubC => "club_c",
            LemmaId::SpadeB => "spade_b",
            LemmaId::SpadeC => "spade_c",
        }
    }

    pub fn parse(s: &str) -> Option<LemmaId> {
        match s {
            "L3.5" | "lemma3.5" | "3.5" => Some(LemmaId::DiagonalSix),
            "L4.4" | "lemma4.4" | "4.4" => Some(LemmaId::DiagonalEight),
            "QX15" | "qx15" => Some(LemmaId::USeries),
            "club_b" => Some(LemmaId::ClubB),
            "club_c" => Some(LemmaId::ClubC),
            "spade_b" => Some(LemmaId::SpadeB),
            "spade_c" => Some(LemmaId::SpadeC),
            _ => None,
        }
    }
}

impl std::fmt::Display for LemmaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

// Coordinates used by the closed-form identities, all in the
// twelve-by-twelve cell: the `u`-series sits at block (1,1), its
// `s1s2`-translates at (4,1) and (1,4), and the corner series `x_n` at
// (4,4) with the finite base element at n = 0.
fn u_series(k: u32, tau: bool) -> CellCoords {
    CellCoords::DInf { i: 1, k, tau, j: 1 }
}

fn s12_u(k: u32, tau: bool) -> CellCoords {
    CellCoords::DInf { i: 4, k, tau, j: 1 }
}

fn u_s21(l: u32, tau: bool) -> CellCoords {
    CellCoords::DInf { i: 1, k: l, tau, j: 4 }
}

fn corner_series(n: u32, flagged: bool) -> CellCoords {
    if n == 0 {
        CellCoords::DFin { l: 4, m: 4, prime: flagged }
    } else {
        CellCoords::DInf { i: 4, k: n - 1, tau: flagged, j: 4 }
    }
}

/// The factor pairs and the closed-form right-hand side of one lemma
/// instance.  Every listed pair must multiply to the same right-hand side.
pub fn lemma_instance(id: LemmaId, k: u32, l: u32) -> (Vec<(CellCoords, CellCoords)>, Vec<CellCoords>) {
    match id {
        LemmaId::DiagonalSix => (
            vec![(
                CellCoords::E { i: 1, j: 1, k, tau: false },
                CellCoords::E { i: 1, j: 1, k: l, tau: false },
            )],
            (0..=k.min(l)).map(|i| CellCoords::E { i: 1, j: 1, k: k + l - 2 * i, tau: false }).collect(),
        ),
        LemmaId::DiagonalEight => (
            vec![(CellCoords::F { i: 1, k, j: 1 }, CellCoords::F { i: 1, k: l, j: 1 })],
            (0..=k.min(l)).map(|i| CellCoords::F { i: 1, k: k + l - 2 * i, j: 1 }).collect(),
        ),
        LemmaId::USeries => (
            vec![(u_series(k, false), u_series(l, false))],
            (0..=(2 * k).min(2 * l)).map(|i| u_series(k + l - i, false)).collect(),
        ),
        LemmaId::ClubB => (
            vec![(s12_u(k, false), u_series(l, false)), (s12_u(k, true), u_series(l, true))],
            (0..=(2 * k + 1).min(2 * l)).map(|i| s12_u(k + l - i, false)).collect(),
        ),
        LemmaId::ClubC => (
            vec![(s12_u(k, true), u_series(l, false)), (s12_u(k, false), u_series(l, true))],
            (0..=(2 * k + 1).min(2 * l)).map(|i| s12_u(k + l - i, true)).collect(),
        ),
        LemmaId::SpadeB => (
            vec![(s12_u(k, false), u_s21(l, false)), (s12_u(k, true), u_s21(l, true))],
            (0..=(2 * k + 1).min(2 * l + 1)).map(|i| corner_series(k + l + 1 - i, false)).collect(),
        ),
        LemmaId::SpadeC => (
            vec![(s12_u(k, true), u_s21(l, false)), (s12_u(k, false), u_s21(l, true))],
            (0..=(2 * k + 1).min(2 * l + 1)).map(|i| corner_series(k + l + 1 - i, true)).collect(),
        ),
    }
}

/// Verifies one closed-form identity over the full `(k, l)` grid.  The
/// left-hand sides are computed with the definition method; the degree
/// shortcut is run alongside and must agree.
pub fn verify_lemma(
    engine: &Engine,
    id: LemmaId,
    kmax: u32,
    lmax: u32,
    force: bool,
) -> Result<Report, VerifyError> {
    let mut grid = Vec::new();
    for k in 0..=kmax {
        for l in 0..=lmax {
            grid.push((k, l));
        }
    }
    if !force {
        for &(k, l) in &grid {
            for (x, y) in lemma_instance(id, k, l).0 {
                for f in [x, y] {
                    let len = f.realize().length();
                    if len > FACTOR_BUDGET {
                        return Err(VerifyError::Budget(len, FACTOR_BUDGET));
                    }
                }
            }
        }
    }
    let cases: Vec<Case> = grid
        .par_iter()
        .map(|&(k, l)| {
            let (pairs, rhs) = lemma_instance(id, k, l);
            let cell = rhs[0].cell();
            let expected = JElement::from_terms(cell, rhs.iter().map(|c| (*c, 1)));
            let mut notes = Vec::new();
            for (x, y) in &pairs {
                for method in [GammaMethod::Definition, GammaMethod::Fastpath] {
                    match jring::t_mul(engine, x, y, method) {
                        Ok(got) if got == expected => {}
                        Ok(got) => notes.push(format!(
                            "t[{x}]*t[{y}] ({method:?}) = {got}; expected {expected}"
                        )),
                        Err(e) => notes.push(format!("t[{x}]*t[{y}] ({method:?}): {e}")),
                    }
                }
            }
            let pass = notes.is_empty();
            let details = if pass {
                format!("{} factor pair(s) -> {} closed-form terms", pairs.len(), expected.len())
            } else {
                notes.join("; ")
            };
            Case::at(k, l, pass, details)
        })
        .collect();
    Ok(Report::new(grid.len(), cases))
}

fn random_element(rng: &mut ChaCha8Rng, max_len: u32) -> Element {
    let mut w = if rng.gen_bool(0.5) { Element::tau() } else { Element::identity() };
    let steps = rng.gen_range(0..=max_len);
    for _ in 0..steps {
        w = w.right_mul_gen(Gen::new(rng.gen_range(0..4)).unwrap());
    }
    w
}

/// Star commutation: when an element lies in a left string and a right
/// string, the two star images commute.
pub fn verify_stars(samples: usize, max_len: u32) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pairs = star::string_pairs();
    let mut checked = 0usize;
    let mut attempts = 0usize;
    let mut failures = Vec::new();
    while checked < samples && attempts < samples * 400 {
        attempts += 1;
        let w = random_element(&mut rng, max_len);
        let &(s, t) = pairs.choose(&mut rng).unwrap();
        let &(s2, t2) = pairs.choose(&mut rng).unwrap();
        let (Some(lw), Some(rw)) =
            (star::star(&w, s, t, Side::Left), star::star(&w, s2, t2, Side::Right))
        else {
            continue;
        };
        match (star::star(&lw, s2, t2, Side::Right), star::star(&rw, s, t, Side::Left)) {
            (Some(a), Some(b)) if a == b => checked += 1,
            other => {
                checked += 1;
                failures.push(format!(
                    "w={w}: left *({},{}) then right *({},{}) gave {:?}, the other order {:?}",
                    s, t, s2, t2, other.0, other.1
                ));
            }
        }
    }
    let case = Case::labeled(
        failures.is_empty() && checked >= samples,
        if failures.is_empty() {
            format!("star commutation on {checked} doubly-stringed elements")
        } else {
            failures.join("; ")
        },
    );
    Report::new(checked, vec![case])
}

fn mu_matrix(
    engine: &Engine,
    st: GenSet,
    xs: &[Element],
    ys: &[Element],
) -> Vec<Vec<i64>> {
    xs.iter()
        .map(|x| {
            ys.iter()
                .map(|y| {
                    if x.left_descents().intersect(st) == y.left_descents().intersect(st) {
                        engine.kl().mu_tilde(x, y)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

fn string_relation_case(
    engine: &Engine,
    s: Gen,
    t: Gen,
    order: u32,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> (usize, Case) {
    let st: GenSet = [s, t].into_iter().collect();
    let mut checked = 0usize;
    let mut nonzero = 0usize;
    let mut attempts = 0usize;
    let mut failures = Vec::new();
    while checked < samples && attempts < samples * 400 {
        attempts += 1;
        let w1 = random_element(rng, 12);
        // Unrelated second elements give all-zero matrices, so bias towards
        // Bruhat-adjacent pairs, where μ̃ = 1 entries are common.
        let w2 = if rng.gen_bool(0.7) {
            w1.right_mul_gen(Gen::new(rng.gen_range(0..4)).unwrap())
        } else {
            random_element(rng, 12)
        };
        let (Some(sx), Some(sy)) = (
            star::string_of(&w1, s, t, Side::Left),
            star::string_of(&w2, s, t, Side::Left),
        ) else {
            continue;
        };
        let a = mu_matrix(engine, st, &sx.members, &sy.members);
        let ok = if order == 3 {
            a[0][0] == a[1][1] && a[0][1] == a[1][0]
        } else {
            a[0][0] == a[2][2]
                && a[0][2] == a[2][0]
                && a[1][1] == a[0][0] + a[0][2]
                && a[0][1] == a[1][0]
                && a[1][0] == a[1][2]
                && a[1][2] == a[2][1]
        };
        checked += 1;
        if a.iter().flatten().any(|&v| v != 0) {
            nonzero += 1;
        }
        if !ok {
            failures.push(format!(
                "strings through {} and {} (pair {s},{t}): matrix {a:?}",
                sx.members[0], sy.members[0]
            ));
        }
    }
    let pass = failures.is_empty() && checked >= samples && nonzero > 0;
    let details = if failures.is_empty() {
        format!(
            "mu-matrix relations for order-{order} pair ({s},{t}): {checked} string pairs, {nonzero} with a nonzero entry"
        )
    } else {
        failures.join("; ")
    };
    (checked, Case::labeled(pass, details))
}

/// Left strings of a minimal coset representative: the `s`-side
/// `[sw, tsw, stsw]` and the `t`-side `[tw, stw, tstw]`.
fn left_strings(base: &Element, s: Gen, t: Gen) -> Option<([Element; 3], [Element; 3])> {
    let build = |a: Gen, b: Gen| -> Option<[Element; 3]> {
        let m1 = base.left_mul_gen(a);
        let m2 = m1.left_mul_gen(b);
        let m3 = m2.left_mul_gen(a);
        (m1.length() == base.length() + 1
            && m2.length() == base.length() + 2
            && m3.length() == base.length() + 3)
            .then_some([m1, m2, m3])
    };
    Some((build(s, t)?, build(t, s)?))
}

/// Right strings of a minimal coset representative: the `s`-side
/// `[us, ust, usts]` and the `t`-side `[ut, uts, utst]`.
fn right_strings(base: &Element, s: Gen, t: Gen) -> Option<([Element; 3], [Element; 3])> {
    let build = |a: Gen, b: Gen| -> Option<[Element; 3]> {
        let m1 = base.right_mul_gen(a);
        let m2 = m1.right_mul_gen(b);
        let m3 = m2.right_mul_gen(a);
        (m1.length() == base.length() + 1
            && m2.length() == base.length() + 2
            && m3.length() == base.length() + 3)
            .then_some([m1, m2, m3])
    };
    Some((build(s, t)?, build(t, s)?))
}

fn strip_left(mut w: Element, st: GenSet) -> Element {
    loop {
        match st.iter().find(|&g| w.has_left_descent(g)) {
            Some(g) => w = w.left_mul_gen(g),
            None => return w,
        }
    }
}

fn strip_right(mut w: Element, st: GenSet) -> Element {
    loop {
        match st.iter().find(|&g| w.has_right_descent(g)) {
            Some(g) => w = w.right_mul_gen(g),
            None => return w,
        }
    }
}

fn gamma_of(engine: &Engine, x: &Element, y: &Element, z: &Element) -> Option<i64> {
    jring::gamma(engine, x, y, z, GammaMethod::Fastpath).ok()
}

/// All located bases in the supported corner cell whose six left (or right)
/// string members all locate, paired with those members.
fn string_bases(
    engine: &Engine,
    s: Gen,
    t: Gen,
    left: bool,
    pool: &[Element],
) -> Vec<(Element, [Element; 3], [Element; 3])> {
    let st: GenSet = [s, t].into_iter().collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for w in pool {
        let base = if left { strip_left(*w, st) } else { strip_right(*w, st) };
        if !seen.insert(base.sort_key()) {
            continue;
        }
        let strings = if left { left_strings(&base, s, t) } else { right_strings(&base, s, t) };
        let Some((side_s, side_t)) = strings else { continue };
        if side_s.iter().chain(side_t.iter()).all(|m| engine.locate(m).is_some()) {
            out.push((base, side_s, side_t));
        }
    }
    out
}

/// The six left-string identities for an order-4 pair: each relates γ-values
/// across positions of the strings through bases `w` and `v`, for any `u`.
fn left_string_identities(
    engine: &Engine,
    u: &Element,
    ws: &[Element; 3],
    wt: &[Element; 3],
    vs: &[Element; 3],
    vt: &[Element; 3],
) -> Option<[(i64, i64, &'static str); 6]> {
    let g = |x: &Element, z: &Element| gamma_of(engine, x, u, z);
    Some([
        (g(&ws[1], &vt[0])?, g(&ws[0], &vt[1])?, "a"),
        (g(&ws[1], &vs[1])?, g(&ws[0], &vs[0])? + g(&ws[0], &vs[2])?, "b"),
        (g(&ws[1], &vt[2])?, g(&ws[0], &vt[1])?, "c"),
        (g(&wt[2], &vt[0])? + g(&wt[0], &vt[0])?, g(&wt[1], &vt[1])?, "d"),
        (g(&wt[2], &vs[1])?, g(&wt[1], &vs[2])?, "e"),
        (g(&wt[2], &vt[2])? + g(&wt[0], &vt[2])?, g(&wt[1], &vt[1])?, "f"),
    ])
}

/// The six right-string identities: `u` and `v` carry the strings, the first
/// slot `w` is a free element.
fn right_string_identities(
    engine: &Engine,
    w: &Element,
    us: &[Element; 3],
    ut: &[Element; 3],
    vs: &[Element; 3],
    vt: &[Element; 3],
) -> Option<[(i64, i64, &'static str); 6]> {
    let g = |y: &Element, z: &Element| gamma_of(engine, w, y, z);
    Some([
        (g(&ut[0], &vs[1])?, g(&ut[1], &vs[0])?, "a'"),
        (g(&us[1], &vs[1])?, g(&us[0], &vs[0])? + g(&us[2], &vs[0])?, "b'"),
        (g(&ut[2], &vs[1])?, g(&ut[1], &vs[0])?, "c'"),
        (g(&ut[0], &vt[2])? + g(&ut[0], &vt[0])?, g(&ut[1], &vt[1])?, "d'"),
        (g(&us[1], &vt[2])?, g(&us[2], &vt[1])?, "e'"),
        (g(&ut[2], &vt[2])? + g(&ut[2], &vt[0])?, g(&ut[1], &vt[1])?, "f'"),
    ])
}

fn order4_gamma_case(
    engine: &Engine,
    rng: &mut ChaCha8Rng,
    left: bool,
    configs: usize,
) -> (usize, Case) {
    let pool: Vec<Element> = enumerate(CellId::D, 1)
        .into_iter()
        .map(|(_, w)| w)
        .filter(|w| w.length() <= 9)
        .collect();
    let mut instances = 0usize;
    let mut nonzero = 0usize;
    let mut failures = Vec::new();
    for (s, t) in [(Gen::new(2).unwrap(), Gen::new(3).unwrap()), (Gen::new(3).unwrap(), Gen::new(2).unwrap())] {
        let bases = string_bases(engine, s, t, left, &pool);
        if bases.is_empty() {
            failures.push(format!("no usable string bases for pair ({s},{t})"));
            continue;
        }
        for config in 0..configs {
            let (_, ws, wt) = bases.choose(rng).unwrap();
            // Identical bases guarantee slots with matching right cells, so
            // γ(x, d, x) = 1 configurations appear; alternate with
            // independent bases for breadth.
            let (vs, vt) = if config % 2 == 0 {
                (ws, wt)
            } else {
                let (_, vs, vt) = bases.choose(rng).unwrap();
                (vs, vt)
            };
            // Free-slot candidates: favour elements whose cell indices can
            // give a nonzero γ against either string side, padded with
            // arbitrary short elements when nothing matches.
            let reps: Vec<(Element, Element)> = if left {
                vec![(ws[1], vt[0]), (wt[1], vt[1]), (ws[0], vs[0]), (wt[2], vs[1])]
            } else {
                vec![(wt[0], vs[1]), (ws[1], vs[1]), (wt[1], vt[1]), (ws[0], vt[0])]
            };
            let mut picks: Vec<Element> = Vec::new();
            for (x_rep, z_rep) in reps {
                let (Some(xc), Some(zc)) = (engine.locate(&x_rep), engine.locate(&z_rep)) else {
                    continue;
                };
                for (c, free) in enumerate(CellId::D, 1) {
                    if free.length() > 9 || picks.contains(&free) {
                        continue;
                    }
                    let compatible = if left {
                        // x-slot on the string through w, z-slot on the
                        // string through v, free element in the middle slot.
                        c.right_cell_index() == xc.left_cell_index()
                            && c.left_cell_index() == zc.left_cell_index()
                    } else {
                        // y-slot on the string through u, z-slot on the
                        // string through v, free element in the first slot.
                        c.left_cell_index() == xc.right_cell_index()
                            && c.right_cell_index() == zc.right_cell_index()
                    };
                    if compatible {
                        picks.push(free);
                    }
                }
            }
            if picks.is_empty() {
                picks.extend(pool.iter().take(2).copied());
            }
            picks.shuffle(rng);
            for u in picks.into_iter().take(3) {
                let res = if left {
                    left_string_identities(engine, &u, ws, wt, vs, vt)
                } else {
                    right_string_identities(engine, &u, ws, wt, vs, vt)
                };
                let Some(rows) = res else { continue };
                instances += 1;
                for (lhs, rhs, name) in rows {
                    if lhs != 0 || rhs != 0 {
                        nonzero += 1;
                    }
                    if lhs != rhs {
                        failures.push(format!(
                            "identity ({name}) failed for pair ({s},{t}), u={u}: {lhs} != {rhs}"
                        ));
                    }
                }
            }
        }
    }
    let pass = failures.is_empty() && instances > 0 && nonzero > 0;
    let details = if failures.is_empty() {
        format!(
            "{} order-4 γ-identities ({}-string versions): {instances} configurations, {nonzero} nonzero equations",
            6,
            if left { "left" } else { "right" },
        )
    } else {
        failures.join("; ")
    };
    (instances, Case::labeled(pass, details))
}

/// String μ-matrix relations (orders 3 and 4) and the order-4 γ-identities.
pub fn verify_strings15(engine: &Engine, samples: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = Vec::new();
    let mut instances = 0usize;
    for (s, t, order) in [(0u8, 2u8, 3u32), (1, 2, 3), (2, 3, 4)] {
        let (n, case) = string_relation_case(
            engine,
            Gen::new(s).unwrap(),
            Gen::new(t).unwrap(),
            order,
            samples,
            &mut rng,
        );
        instances += n;
        cases.push(case);
    }
    for left in [true, false] {
        let (n, case) = order4_gamma_case(engine, &mut rng, left, samples.div_ceil(3).max(2));
        instances += n;
        cases.push(case);
    }
    Report::new(instances, cases)
}

fn map_j(pi: &PiMaps, el: &JElement) -> RepMat {
    let mut out = RepMat::zero(pi_dim(el.cell()));
    for (c, n) in el.terms() {
        out = out.add(&pi.pi(&c).scaled(n));
    }
    out
}

/// Checks `π(t_x · t_y) = π(x) · π(y)` for each pair; returns failures.
fn homomorphism_failures(
    engine: &Engine,
    pi: &PiMaps,
    pairs: &[(CellCoords, CellCoords)],
    check_parity: bool,
) -> (Vec<String>, usize) {
    let results: Vec<(Option<String>, bool)> = pairs
        .par_iter()
        .map(|(x, y)| {
            let prod = match jring::t_mul(engine, x, y, GammaMethod::Fastpath) {
                Ok(p) => p,
                Err(e) => return (Some(format!("t[{x}]*t[{y}]: {e}")), false),
            };
            let expected = pi.pi(x).mat_mul(&pi.pi(y));
            let got = map_j(pi, &prod);
            if got != expected {
                return (
                    Some(format!("t[{x}]*t[{y}]: π(product) = {got} but π(x)π(y) = {expected}")),
                    false,
                );
            }
            if check_parity {
                for m in [&got, &pi.pi(x), &pi.pi(y)] {
                    if let Some(msg) = parity_violation(m) {
                        return (Some(format!("t[{x}]*t[{y}]: {msg}")), false);
                    }
                }
            }
            (None, !prod.is_zero())
        })
        .collect();
    let nonzero = results.iter().filter(|(_, nz)| *nz).count();
    (results.into_iter().filter_map(|(f, _)| f).collect(), nonzero)
}

/// In the twelve-by-twelve model the spin parity of every entry is fixed by
/// its block: rows/columns 1–3 against 4–12.  Returns a description of the
/// first violation, if any.
fn parity_violation(m: &RepMat) -> Option<String> {
    for ((r, c), elt) in m.sorted_entries() {
        let expected = u32::from((r <= 3) != (c <= 3));
        for (irr, _) in elt.terms() {
            if irr.k % 2 != expected {
                return Some(format!("entry ({r},{c}) holds {irr} but the block is parity-{expected}"));
            }
        }
    }
    None
}

fn grid_pairs_e() -> Vec<(CellCoords, CellCoords)> {
    let mut pairs = Vec::new();
    for i in 1..=6 {
        for j in 1..=6 {
            for n in 1..=6 {
                for a in [false, true] {
                    for b in [false, true] {
                        pairs.push((
                            CellCoords::E { i, j, k: 0, tau: a },
                            CellCoords::E { i: j, j: n, k: 0, tau: b },
                        ));
                    }
                }
            }
        }
    }
    pairs
}

fn grid_pairs_f() -> Vec<(CellCoords, CellCoords)> {
    let mut pairs = Vec::new();
    for i in 1..=8 {
        for j in 1..=8 {
            for n in 1..=8 {
                pairs.push((CellCoords::F { i, k: 0, j }, CellCoords::F { i: j, k: 0, j: n }));
            }
        }
    }
    pairs
}

fn injectivity_and_duality_cases(pi: &PiMaps, cell: CellId, k_max: u32) -> (usize, Vec<Case>) {
    let coords = enumerate(cell, k_max);
    let mut keys = std::collections::BTreeMap::new();
    let mut collisions = Vec::new();
    for (c, _) in &coords {
        let key = pi.pi(c).to_string();
        if let Some(prev) = keys.insert(key, *c) {
            collisions.push(format!("π({prev}) = π({c})"));
        }
    }
    let inj = Case::labeled(
        collisions.is_empty(),
        if collisions.is_empty() {
            format!("π injective on {} enumerated basis elements", coords.len())
        } else {
            collisions.join("; ")
        },
    );
    let mut dual_failures = Vec::new();
    for (c, _) in &coords {
        if pi.pi(&c.transpose()) != pi.pi(c).dual() {
            dual_failures.push(format!("π({}) is not the transpose of π({c})", c.transpose()));
        }
    }
    let dual = Case::labeled(
        dual_failures.is_empty(),
        if dual_failures.is_empty() {
            format!("π intertwines inversion with matrix transpose on {} elements", coords.len())
        } else {
            dual_failures.join("; ")
        },
    );
    (coords.len() * 2, vec![inj, dual])
}

fn random_pairs_e(rng: &mut ChaCha8Rng, n: usize, kmax: u32) -> Vec<(CellCoords, CellCoords)> {
    (0..n)
        .map(|_| {
            let k = rng.gen_range(0..=kmax);
            let l = rng.gen_range(0..=(kmax - k));
            (
                CellCoords::E {
                    i: rng.gen_range(1..=6),
                    j: rng.gen_range(1..=6),
                    k,
                    tau: rng.gen_bool(0.5),
                },
                CellCoords::E {
                    i: rng.gen_range(1..=6),
                    j: rng.gen_range(1..=6),
                    k: l,
                    tau: rng.gen_bool(0.5),
                },
            )
        })
        .collect()
}

fn random_pairs_f(rng: &mut ChaCha8Rng, n: usize, kmax: u32) -> Vec<(CellCoords, CellCoords)> {
    (0..n)
        .map(|_| {
            let k = rng.gen_range(0..=kmax);
            let l = rng.gen_range(0..=(kmax - k));
            (
                CellCoords::F { i: rng.gen_range(1..=8), k, j: rng.gen_range(1..=8) },
                CellCoords::F { i: rng.gen_range(1..=8), k: l, j: rng.gen_range(1..=8) },
            )
        })
        .collect()
}

/// The six-by-six matrix-ring model: multiplicative on the full inner-index
/// grid at k = l = 0, on random pairs, injective, and compatible with
/// inversion/transpose.
pub fn verify_thm32(engine: &Engine, samples: usize, kmax: u32) -> Result<Report, String> {
    let pi = PiMaps::new().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = Vec::new();
    let mut instances = 0usize;

    let grid = grid_pairs_e();
    let (failures, nonzero) = homomorphism_failures(engine, &pi, &grid, false);
    instances += grid.len();
    cases.push(Case::labeled(
        failures.is_empty() && nonzero > 0,
        if failures.is_empty() {
            format!("π multiplicative on all {} matched-index pairs at k=l=0 ({nonzero} nonzero)", grid.len())
        } else {
            failures.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    ));

    let random = random_pairs_e(&mut rng, samples, kmax);
    let (failures, nonzero) = homomorphism_failures(engine, &pi, &random, false);
    instances += random.len();
    cases.push(Case::labeled(
        failures.is_empty(),
        if failures.is_empty() {
            format!("π multiplicative on {} random pairs with k+l ≤ {kmax} ({nonzero} nonzero)", random.len())
        } else {
            failures.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    ));

    let (n, extra) = injectivity_and_duality_cases(&pi, CellId::E, kmax);
    instances += n;
    cases.extend(extra);
    Ok(Report::new(instances, cases))
}

/// The eight-by-eight matrix-ring model, same checks as the six-by-six one.
pub fn verify_thm42(engine: &Engine, samples: usize, kmax: u32) -> Result<Report, String> {
    let pi = PiMaps::new().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = Vec::new();
    let mut instances = 0usize;

    let grid = grid_pairs_f();
    let (failures, nonzero) = homomorphism_failures(engine, &pi, &grid, false);
    instances += grid.len();
    cases.push(Case::labeled(
        failures.is_empty() && nonzero > 0,
        if failures.is_empty() {
            format!("π multiplicative on all {} matched-index pairs at k=l=0 ({nonzero} nonzero)", grid.len())
        } else {
            failures.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    ));

    let random = random_pairs_f(&mut rng, samples, kmax);
    let (failures, nonzero) = homomorphism_failures(engine, &pi, &random, false);
    instances += random.len();
    cases.push(Case::labeled(
        failures.is_empty(),
        if failures.is_empty() {
            format!("π multiplicative on {} random pairs with k+l ≤ {kmax} ({nonzero} nonzero)", random.len())
        } else {
            failures.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    ));

    let (n, extra) = injectivity_and_duality_cases(&pi, CellId::F, kmax);
    instances += n;
    cases.extend(extra);
    Ok(Report::new(instances, cases))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum BlockKind {
    EvenSmall,
    Odd,
    EvenLarge,
    FiniteUnflagged,
    FiniteFlagged,
    Sixth,
}

fn block_kind(c: &CellCoords) -> BlockKind {
    match c {
        CellCoords::DInf { i, j, .. } => {
            if *i <= 3 && *j <= 3 {
                BlockKind::EvenSmall
            } else if *i >= 4 && *j >= 4 {
                BlockKind::EvenLarge
            } else {
                BlockKind::Odd
            }
        }
        CellCoords::DFin { prime: false, .. } => BlockKind::FiniteUnflagged,
        CellCoords::DFin { prime: true, .. } => BlockKind::FiniteFlagged,
        _ => BlockKind::Sixth,
    }
}

/// The twelve-by-twelve model: the star 2-coloring of the finite part, the
/// block-parity pattern, and multiplicativity on a structured sample.
pub fn verify_thm55(engine: &Engine, samples: usize, kmax: u32) -> Report {
    let mut cases = Vec::new();
    let mut instances = 1usize;
    let pi = match PiMaps::new() {
        Ok(pi) => pi,
        Err(e) => {
            cases.push(Case::labeled(false, format!("star-reachability 2-coloring failed: {e}")));
            return Report::new(1, cases);
        }
    };
    cases.push(Case::labeled(
        true,
        format!(
            "star-reachability 2-colors all {} finite elements consistently",
            pi.coloring().len()
        ),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pool: Vec<(CellCoords, Element)> = enumerate(CellId::D, kmax)
        .into_iter()
        .filter(|(_, w)| w.length() <= 12)
        .collect();
    let of_kind = |kind: BlockKind| -> Vec<CellCoords> {
        pool.iter().filter(|(c, _)| block_kind(c) == kind).map(|(c, _)| *c).collect()
    };
    let kinds = [
        BlockKind::EvenSmall,
        BlockKind::Odd,
        BlockKind::EvenLarge,
        BlockKind::FiniteUnflagged,
        BlockKind::FiniteFlagged,
        BlockKind::Sixth,
    ];
    let by_kind: Vec<Vec<CellCoords>> = kinds.iter().map(|&k| of_kind(k)).collect();

    let mut pairs: Vec<(CellCoords, CellCoords)> = Vec::new();
    // Forced coverage: for every ordered kind pair, one product whose inner
    // indices match (so the product is generically nonzero).
    for xs in &by_kind {
        for ys in &by_kind {
            let found = xs.iter().find_map(|x| {
                ys.iter()
                    .find(|y| y.right_cell_index() == x.left_cell_index())
                    .map(|y| (*x, *y))
            });
            if let Some(p) = found {
                pairs.push(p);
            }
        }
    }
    // Fill with random pairs, mostly index-matched.
    while pairs.len() < samples {
        let (x, _) = pool[rng.gen_range(0..pool.len())];
        if rng.gen_bool(0.7) {
            let matched: Vec<&(CellCoords, Element)> = pool
                .iter()
                .filter(|(y, _)| y.right_cell_index() == x.left_cell_index())
                .collect();
            if let Some((y, _)) = matched.choose(&mut rng) {
                pairs.push((x, *y));
                continue;
            }
        }
        let (y, _) = pool[rng.gen_range(0..pool.len())];
        pairs.push((x, y));
    }

    let covered: std::collections::BTreeSet<(usize, usize)> = pairs
        .iter()
        .map(|(x, y)| {
            (
                kinds.iter().position(|k| *k == block_kind(x)).unwrap(),
                kinds.iter().position(|k| *k == block_kind(y)).unwrap(),
            )
        })
        .collect();
    let (failures, nonzero) = homomorphism_failures(engine, &pi, &pairs, true);
    instances += pairs.len();
    cases.push(Case::labeled(
        failures.is_empty() && nonzero > 0,
        if failures.is_empty() {
            format!(
                "π multiplicative with the block-parity pattern intact on {} pairs ({nonzero} nonzero, {} kind combinations)",
                pairs.len(),
                covered.len()
            )
        } else {
            failures.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    ));
    Report::new(instances, cases)
}

/// Distinguished involutions: the pinned small representatives, and
/// exactly one per left cell in each supported cell.
pub fn verify_dinv(engine: &Engine) -> Report {
    let mut cases = Vec::new();
    let mut instances = 0usize;
    let pinned = [
        (Element::identity(), 0u32, "identity"),
        (Element::parse("0").unwrap(), 1, "one-generator cell"),
        (Element::parse("10").unwrap(), 2, "six-by-six cell"),
        (Element::parse("13").unwrap(), 2, "eight-by-eight cell"),
        (Element::parse("013").unwrap(), 3, "twelve-by-twelve cell"),
        (Element::parse("2323").unwrap(), 4, "a-value-four cell"),
    ];
    for (w, a, label) in pinned {
        let ok = engine.kl().is_distinguished(&w, a);
        instances += 1;
        cases.push(Case::labeled(ok, format!("{w} distinguished with a = {a} ({label})")));
    }
    for cell in [CellId::E, CellId::F, CellId::D] {
        let a = cell.a_value();
        let mut per_left: std::collections::BTreeMap<u8, Vec<CellCoords>> =
            std::collections::BTreeMap::new();
        for idx in 1..=cell.left_cell_count() as u8 {
            per_left.insert(idx, Vec::new());
        }
        for (c, w) in enumerate(cell, 1) {
            if engine.kl().is_distinguished(&w, a) {
                per_left.entry(c.left_cell_index()).or_default().push(c);
            }
        }
        for (idx, found) in per_left {
            instances += 1;
            let ok = found.len() == 1;
            let listing = found.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
            cases.push(Case::labeled(
                ok,
                format!(
                    "left cell {idx} of {cell}: {} distinguished involution(s) [{listing}]",
                    found.len()
                ),
            ));
        }
    }
    Report::new(instances, cases)
}

/// Cross-model oracles: word-model versus matrix-model enumeration,
/// left- versus right-recursion KL tables, definition- versus
/// shortcut-computed γ on every lemma triple, and the KL degree bound with
/// descent constancy.
pub fn verify_oracle(engine: &Engine, bfs_len: u32, kl_len: u32) -> Report {
    let mut cases = Vec::new();
    let mut instances = 0usize;

    let cmp = wordmodel::compare_models(bfs_len);
    instances += cmp.products_checked;
    cases.push(Case::labeled(
        cmp.pass,
        format!(
            "word model matches matrix model to length {}: {} elements, {} products, {} mismatches",
            cmp.max_length, cmp.elements, cmp.products_checked, cmp.mismatches
        ),
    ));

    // Breadth-first enumeration of the Coxeter part.
    let mut frontier = vec![Element::identity()];
    let mut all = vec![Element::identity()];
    let mut seen: std::collections::BTreeSet<_> = [Element::identity().sort_key()].into();
    for _ in 1..=kl_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in Gen::ALL {
                let e = w.right_mul_gen(g);
                if e.length() > w.length() && seen.insert(e.sort_key()) {
                    next.push(e);
                }
            }
        }
        all.extend(next.iter().copied());
        frontier = next;
    }
    all.sort_by_key(|w| w.sort_key());

    let kl = engine.kl();
    let results: Vec<(usize, usize, usize, Vec<String>)> = all
        .par_iter()
        .map(|w| {
            let mut side_checked = 0usize;
            let mut degree_checked = 0usize;
            let mut constancy_checked = 0usize;
            let mut failures = Vec::new();
            let interval = w.lower_interval();
            let lw = w.length() as i32;
            for y in &interval {
                let p_left = kl.kl_poly_side(y, w, Side::Left);
                let p_right = kl.kl_poly_side(y, w, Side::Right);
                side_checked += 1;
                if p_left != p_right {
                    failures.push(format!(
                        "left/right recursions disagree at P({y}, {w}): {p_left} vs {p_right}"
                    ));
                }
                if y != w {
                    degree_checked += 1;
                    if p_left.degree() > Degree::Finite(lw - y.length() as i32 - 1) {
                        failures.push(format!("degree bound violated at P({y}, {w}) = {p_left}"));
                    }
                }
            }
            for s in w.left_descents().iter() {
                for y in &interval {
                    if !y.has_left_descent(s) {
                        let sy = y.left_mul_gen(s);
                        constancy_checked += 1;
                        if kl.kl_poly(y, w) != kl.kl_poly(&sy, w) {
                            failures.push(format!(
                                "descent constancy violated: P({y}, {w}) != P({sy}, {w})"
                            ));
                        }
                    }
                }
            }
            (side_checked, degree_checked, constancy_checked, failures)
        })
        .collect();
    let sides: usize = results.iter().map(|r| r.0).sum();
    let degrees: usize = results.iter().map(|r| r.1).sum();
    let constancies: usize = results.iter().map(|r| r.2).sum();
    let failures: Vec<String> = results.into_iter().flat_map(|r| r.3).collect();
    instances += sides + degrees + constancies;
    cases.push(Case::labeled(
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "KL tables over {} elements to length {kl_len}: {sides} left/right agreements, {degrees} degree bounds, {constancies} descent constancies",
                all.len()
            )
        } else {
            failures.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    ));

    // γ methods on every closed-form identity pair at k, l ≤ 1.
    let mut pairs_checked = 0usize;
    let mut triples = 0usize;
    let mut genuine = 0usize;
    let mut failures = Vec::new();
    for id in LemmaId::ALL {
        for k in 0..=1 {
            for l in 0..=1 {
                for (x, y) in lemma_instance(id, k, l).0 {
                    pairs_checked += 1;
                    let a = x.cell().a_value() as i32;
                    let bound_holds = product::t_mul(&x.realize(), &y.realize()).max_degree()
                        <= Degree::Finite(a);
                    if bound_holds {
                        genuine += 1;
                    }
                    let def = jring::t_mul(engine, &x, &y, GammaMethod::Definition);
                    let fast = jring::t_mul(engine, &x, &y, GammaMethod::Fastpath);
                    match (def, fast) {
                        (Ok(d), Ok(f)) => {
                            triples += d.len().max(f.len());
                            if d != f {
                                failures.push(format!(
                                    "{id}: methods disagree on t[{x}]*t[{y}]: {d} vs {f}"
                                ));
                            }
                        }
                        (d, f) => failures.push(format!(
                            "{id}: product failed on t[{x}]*t[{y}]: {d:?} / {f:?}"
                        )),
                    }
                }
            }
        }
    }
    instances += triples;
    cases.push(Case::labeled(
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "γ methods agree on {triples} structure constants over {pairs_checked} identity pairs ({genuine} met the degree hypothesis directly)"
            )
        } else {
            failures.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    ));

    Report::new(instances, cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_instances_have_expected_shapes() {
        // k = l = 0 closed forms collapse to a single term except the
        // corner identity, which keeps two.
        for id in LemmaId::ALL {
            let (pairs, rhs) = lemma_instance(id, 0, 0);
            match id {
                LemmaId::SpadeB | LemmaId::SpadeC => assert_eq!(rhs.len(), 2),
                _ => assert_eq!(rhs.len(), 1),
            }
            assert!(!pairs.is_empty());
        }
        let (_, rhs) = lemma_instance(LemmaId::DiagonalSix, 2, 2);
        assert_eq!(rhs.len(), 3);
        let (_, rhs) = lemma_instance(LemmaId::USeries, 1, 2);
        assert_eq!(rhs.len(), 3);
        assert_eq!(LemmaId::parse("lemma3.5"), Some(LemmaId::DiagonalSix));
        assert_eq!(LemmaId::parse("qx15"), Some(LemmaId::USeries));
        assert_eq!(LemmaId::parse("nope"), None);
    }

    #[test]
    fn small_lemma_grids_pass() {
        let engine = Engine::new();
        for id in LemmaId::ALL {
            let report = verify_lemma(&engine, id, 1, 1, false).unwrap();
            assert!(report.pass, "{id} failed: {:?}", report.cases);
            assert_eq!(report.instances, 4);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let engine = Engine::new();
        // k = 6 gives a factor of length 3 + 4·6 = 27 > 22.
        match verify_lemma(&engine, LemmaId::USeries, 6, 0, false) {
            Err(VerifyError::Budget(len, cap)) => {
                assert!(len > cap);
                assert_eq!(cap, FACTOR_BUDGET);
            }
            other => panic!("expected a budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn star_commutation_suite() {
        let report = verify_stars(40, 14);
        assert!(report.pass, "{:?}", report.cases);
        assert_eq!(report.instances, 40);
    }

    #[test]
    fn distinguished_involutions_suite() {
        let engine = Engine::new();
        let report = verify_dinv(&engine);
        assert!(report.pass, "{:?}", report.cases);
        // 6 pinned + 6 + 8 + 12 per-left-cell scans.
        assert_eq!(report.instances, 32);
    }

    #[test]
    fn oracle_suite_small() {
        let engine = Engine::new();
        let report = verify_oracle(&engine, 4, 5);
        assert!(report.pass, "{:?}", report.cases);
    }

    #[test]
    fn matrix_model_six_small_sample() {
        let engine = Engine::new();
        let report = verify_thm32(&engine, 10, 2).unwrap();
        assert!(report.pass, "{:?}", report.cases);
    }

    #[test]
    fn matrix_model_eight_small_sample() {
        let engine = Engine::new();
        let report = verify_thm42(&engine, 10, 2).unwrap();
        assert!(report.pass, "{:?}", report.cases);
    }

    #[test]
    fn matrix_model_twelve_forced_coverage() {
        let engine = Engine::new();
        let report = verify_thm55(&engine, 36, 1);
        assert!(report.pass, "{:?}", report.cases);
    }

    #[test]
    fn string_suites_small_sample() {
        let engine = Engine::new();
        let report = verify_strings15(&engine, 6);
        assert!(report.pass, "{:?}", report.cases);
    }
}

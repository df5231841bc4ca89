//! Command-line interface to the Hecke-algebra engine.
//!
//! Every command writes a single JSON document to standard output; all
//! diagnostics go to standard error.  Exit codes: 0 on success (and on
//! all-pass verification), 1 when a verification ran and found failing
//! instances, 2 on usage errors (bad words, unknown suites, out-of-budget
//! inputs without `--force`).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hecke::cells::{enumerate, CellId};
use hecke::jring::{self, GammaMethod};
use hecke::kl::Side;
use hecke::laurent::Laurent;
use hecke::product;
use hecke::verify::{self, LemmaId, Report, VerifyError, FACTOR_BUDGET};
use hecke::weyl::{Element, Gen};
use hecke::Engine;

#[derive(Parser)]
#[command(
    name = "hecke",
    version,
    about = "Exact computations in the affine-B3 Hecke algebra and the based rings of its cells"
)]
struct Cli {
    /// Worker threads: 0 = automatic, 1 = deterministic single-threaded.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Kazhdan-Lusztig table cache file; the HECKE_CACHE environment
    /// variable takes precedence.  Missing or damaged caches are ignored.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Accept inputs beyond the per-factor length budget.
    #[arg(long, global = true, default_value_t = false)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Kazhdan-Lusztig polynomial P_{y,w}.
    Kl {
        #[arg(long)]
        y: String,
        #[arg(long)]
        w: String,
    },
    /// Symmetrized leading coefficient μ̃(y, w).
    Mu {
        #[arg(long)]
        y: String,
        #[arg(long)]
        w: String,
    },
    /// Canonical-basis product C_x · C_y, expanded in the canonical basis.
    Hprod {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Standard-basis product T̃_x · T̃_y, expanded in the standard basis.
    Fprod {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Structure constant γ_{x,y,z} of the based ring.
    Gamma {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
    /// Based-ring product t_x · t_y for two elements of one supported cell.
    Jprod {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Two-sided-cell coordinates: locate one element or enumerate a cell.
    Cell {
        #[command(subcommand)]
        action: CellCommand,
    },
    /// The left/right string through an element and its star image.
    Star {
        /// Generator pair, e.g. "23".
        pair: String,
        /// "left" or "right".
        side: String,
        #[arg(long)]
        w: String,
    },
    /// Run a verification suite; exits 1 if any instance fails.
    Verify {
        /// Suite name: lemma3.5, lemma4.4, qx15, club, spade, club_b,
        /// club_c, spade_b, spade_c, stars, strings15, thm3.2, thm4.2,
        /// thm5.5, dinv, oracle.
        suite: String,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        lmax: Option<u32>,
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long)]
        maxlen: Option<u32>,
    },
    /// Replay a directory of recorded commands against expected output.
    Golden {
        /// Directory of *.json case files; defaults to ./golden.
        dir: Option<PathBuf>,
    },
}

#[derive(Subcommand, Clone)]
enum CellCommand {
    /// Coordinates of one element, or null if it lies outside E, F, D.
    Locate {
        #[arg(long)]
        w: String,
    },
    /// All elements of a cell with family parameter k ≤ kmax.
    Enum {
        /// Cell label: E, F, or D.
        cell: String,
        #[arg(long, default_value_t = 1)]
        kmax: u32,
    },
}

/// A usage-level failure: reported on standard error, exit code 2.
struct UsageError(String);

impl<T: std::fmt::Display> From<T> for UsageError {
    fn from(e: T) -> Self {
        UsageError(e.to_string())
    }
}

fn parse_word(label: &str, s: &str) -> Result<Element, UsageError> {
    Element::parse(s)
        .map_err(|e| UsageError(format!("--{label} {s:?} is not a valid word: {e}")))
}

fn check_budget(w: &Element, force: bool) -> Result<(), UsageError> {
    if !force && w.length() > FACTOR_BUDGET {
        return Err(UsageError(format!(
            "element of length {} exceeds the per-factor budget {FACTOR_BUDGET}; pass --force to proceed",
            w.length()
        )));
    }
    Ok(())
}

fn parse_gen(c: char) -> Result<Gen, UsageError> {
    c.to_digit(10)
        .and_then(|d| u8::try_from(d).ok())
        .and_then(|d| Gen::new(d).ok())
        .ok_or_else(|| UsageError(format!("{c:?} is not a generator (0-3)")))
}

fn terms_json(terms: &[(Element, Laurent)]) -> Value {
    Value::Array(
        terms.iter().map(|(w, p)| json!([w.to_string(), p])).collect(),
    )
}

fn report_json(report: &Report) -> (Value, i32) {
    let code = if report.pass { 0 } else { 1 };
    (serde_json::to_value(report).expect("report serialization"), code)
}

fn lemma_report(
    engine: &Engine,
    ids: &[LemmaId],
    kmax: u32,
    lmax: u32,
    force: bool,
) -> Result<Report, VerifyError> {
    let mut instances = 0;
    let mut cases = Vec::new();
    for id in ids {
        let r = verify::verify_lemma(engine, *id, kmax, lmax, force)?;
        instances += r.instances;
        if ids.len() == 1 {
            cases.extend(r.cases);
        } else {
            cases.extend(r.cases.into_iter().map(|mut c| {
                c.details = format!("{id}: {}", c.details);
                c
            }));
        }
    }
    Ok(Report { pass: cases.iter().all(|c| c.pass), instances, cases })
}

/// Executes one command, returning the JSON document and the exit code.
fn execute(engine: &Engine, cmd: &Command, force: bool) -> Result<(Value, i32), UsageError> {
    match cmd {
        Command::Kl { y, w } => {
            let (y, w) = (parse_word("y", y)?, parse_word("w", w)?);
            check_budget(&w, force)?;
            Ok((json!({ "poly": engine.kl().kl_poly(&y, &w) }), 0))
        }
        Command::Mu { y, w } => {
            let (y, w) = (parse_word("y", y)?, parse_word("w", w)?);
            check_budget(&y, force)?;
            check_budget(&w, force)?;
            Ok((json!({ "mu": engine.kl().mu_tilde(&y, &w) }), 0))
        }
        Command::Hprod { x, y } => {
            let (x, y) = (parse_word("x", x)?, parse_word("y", y)?);
            check_budget(&x, force)?;
            check_budget(&y, force)?;
            let prod = product::c_mul(engine.kl(), &x, &y);
            Ok((json!({ "basis": "C", "terms": terms_json(&prod.sorted_terms()) }), 0))
        }
        Command::Fprod { x, y } => {
            let (x, y) = (parse_word("x", x)?, parse_word("y", y)?);
            check_budget(&x, force)?;
            check_budget(&y, force)?;
            let prod = product::t_mul(&x, &y);
            Ok((json!({ "basis": "T", "terms": terms_json(&prod.sorted_terms()) }), 0))
        }
        Command::Gamma { x, y, z } => {
            let (x, y, z) =
                (parse_word("x", x)?, parse_word("y", y)?, parse_word("z", z)?);
            for w in [&x, &y, &z] {
                check_budget(w, force)?;
            }
            let g = jring::gamma(engine, &x, &y, &z, GammaMethod::Fastpath)?;
            Ok((json!({ "gamma": g }), 0))
        }
        Command::Jprod { x, y } => {
            let (xw, yw) = (parse_word("x", x)?, parse_word("y", y)?);
            check_budget(&xw, force)?;
            check_budget(&yw, force)?;
            let xc = engine
                .locate(&xw)
                .ok_or_else(|| UsageError(format!("{xw} lies outside the supported cells")))?;
            let yc = engine
                .locate(&yw)
                .ok_or_else(|| UsageError(format!("{yw} lies outside the supported cells")))?;
            let prod = jring::t_mul(engine, &xc, &yc, GammaMethod::Fastpath)?;
            Ok((json!({ "cell": prod.cell().to_string(), "terms": prod }), 0))
        }
        Command::Cell { action } => match action {
            CellCommand::Locate { w } => {
                let w = parse_word("w", w)?;
                check_budget(&w, force)?;
                Ok((json!({ "coords": engine.locate(&w) }), 0))
            }
            CellCommand::Enum { cell, kmax } => {
                let id = match cell.to_ascii_uppercase().as_str() {
                    "E" => CellId::E,
                    "F" => CellId::F,
                    "D" => CellId::D,
                    other => {
                        return Err(UsageError(format!(
                            "cell {other:?} is not enumerable; choose E, F, or D"
                        )))
                    }
                };
                let items: Vec<Value> = enumerate(id, *kmax)
                    .into_iter()
                    .map(|(c, w)| json!({ "coords": c, "word": w.to_string() }))
                    .collect();
                Ok((json!({ "cell": id.to_string(), "count": items.len(), "elements": items }), 0))
            }
        },
        Command::Star { pair, side, w } => {
            let w = parse_word("w", w)?;
            check_budget(&w, force)?;
            let chars: Vec<char> = pair.chars().collect();
            if chars.len() != 2 {
                return Err(UsageError(format!("pair {pair:?} must name two generators, e.g. 23")));
            }
            let (s, t) = (parse_gen(chars[0])?, parse_gen(chars[1])?);
            if !hecke::star::string_pairs().iter().any(|&(a, b)| {
                (a, b) == (s, t) || (a, b) == (t, s)
            }) {
                return Err(UsageError(format!(
                    "generators {s} and {t} do not braid with order 3 or 4"
                )));
            }
            let side = match side.as_str() {
                "left" => Side::Left,
                "right" => Side::Right,
                other => return Err(UsageError(format!("side {other:?} must be left or right"))),
            };
            let string = hecke::star::string_of(&w, s, t, side).map(|info| {
                json!({
                    "members": info.members.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    "position": info.position,
                    "star": info.star().to_string(),
                })
            });
            Ok((json!({ "string": string }), 0))
        }
        Command::Verify { suite, kmax, lmax, sample, maxlen } => {
            let kmax_or = |d: u32| kmax.unwrap_or(d);
            let report = match suite.as_str() {
                "club" => lemma_report(
                    engine,
                    &[LemmaId::ClubB, LemmaId::ClubC],
                    kmax_or(1),
                    lmax.unwrap_or(1),
                    force,
                )?,
                "spade" => lemma_report(
                    engine,
                    &[LemmaId::SpadeB, LemmaId::SpadeC],
                    kmax_or(1),
                    lmax.unwrap_or(1),
                    force,
                )?,
                "stars" => verify::verify_stars(sample.unwrap_or(50), maxlen.unwrap_or(14)),
                "strings15" => verify::verify_strings15(engine, sample.unwrap_or(30)),
                "thm3.2" => verify::verify_thm32(engine, sample.unwrap_or(50), kmax_or(2))?,
                "thm4.2" => verify::verify_thm42(engine, sample.unwrap_or(50), kmax_or(2))?,
                "thm5.5" => verify::verify_thm55(engine, sample.unwrap_or(100), kmax_or(2)),
                "dinv" => verify::verify_dinv(engine),
                "oracle" => {
                    let kl_len = maxlen.unwrap_or(10);
                    verify::verify_oracle(engine, kl_len.min(8), kl_len)
                }
                other => match LemmaId::parse(other) {
                    Some(id) => {
                        lemma_report(engine, &[id], kmax_or(2), lmax.unwrap_or(2), force)?
                    }
                    None => {
                        return Err(UsageError(format!("unknown verification suite {other:?}")))
                    }
                },
            };
            let (value, code) = report_json(&report);
            Ok((value, code))
        }
        Command::Golden { dir } => {
            let dir = dir.clone().unwrap_or_else(|| PathBuf::from("golden"));
            run_golden(engine, &dir, force)
        }
    }
}

/// Recursively sorted-key, compact rendering; `serde_json`'s map is already
/// ordered, so parsing and re-serializing normalizes key order.
fn normalize(v: &Value) -> String {
    serde_json::to_string(v).expect("json rendering")
}

fn run_golden(engine: &Engine, dir: &Path, force: bool) -> Result<(Value, i32), UsageError> {
    let mut files: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect(),
        Err(e) => return Err(UsageError(format!("cannot read golden directory {dir:?}: {e}"))),
    };
    files.sort();
    let mut failures = Vec::new();
    let mut cases = 0usize;
    for file in &files {
        cases += 1;
        let name = file.file_name().unwrap_or_default().to_string_lossy().into_owned();
        let text = match std::fs::read_to_string(file) {
            Ok(t) => t,
            Err(e) => {
                failures.push(json!({ "file": name, "error": format!("unreadable: {e}") }));
                continue;
            }
        };
        let case: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(e) => {
                failures.push(json!({ "file": name, "error": format!("not JSON: {e}") }));
                continue;
            }
        };
        let (Some(command), Some(expected)) = (
            case.get("command").and_then(Value::as_str),
            case.get("expected"),
        ) else {
            failures.push(json!({
                "file": name,
                "error": "case must carry string `command` and `expected`",
            }));
            continue;
        };
        let argv = std::iter::once("hecke").chain(command.split_whitespace());
        let sub = match Cli::try_parse_from(argv) {
            Ok(cli) => cli.command,
            Err(e) => {
                failures.push(json!({ "file": name, "error": format!("bad command: {e}") }));
                continue;
            }
        };
        if matches!(sub, Command::Golden { .. }) {
            failures.push(json!({ "file": name, "error": "golden cases cannot nest" }));
            continue;
        }
        match execute(engine, &sub, force) {
            Ok((actual, _)) => {
                let (a, e) = (normalize(&actual), normalize(expected));
                if a != e {
                    failures.push(json!({ "file": name, "expected": e, "actual": a }));
                }
            }
            Err(UsageError(e)) => {
                failures.push(json!({ "file": name, "error": e }));
            }
        }
    }
    let pass = failures.is_empty();
    let code = i32::from(!pass);
    Ok((json!({ "pass": pass, "cases": cases, "failures": failures }), code))
}

fn cache_path(cli: &Cli) -> Option<PathBuf> {
    std::env::var_os("HECKE_CACHE").map(PathBuf::from).or_else(|| cli.cache.clone())
}

/// Best-effort preload of the KL memo.  Damaged files, malformed keys, and
/// structurally invalid rows are skipped; results never depend on the cache.
fn load_cache(engine: &Engine, path: &Path) {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(_) => return,
    };
    let map: BTreeMap<String, Vec<(i32, i64)>> = match serde_json::from_str(&text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("ignoring cache {path:?}: {e}");
            return;
        }
    };
    let mut rows: BTreeMap<Element, Vec<(Element, Laurent)>> = BTreeMap::new();
    let mut bad = std::collections::BTreeSet::new();
    for (key, pairs) in map {
        let Some((ys, ws)) = key.split_once('|') else {
            eprintln!("ignoring cache {path:?}: malformed key {key:?}");
            return;
        };
        match (Element::parse(ys).ok(), Element::parse(ws).ok()) {
            (Some(y), Some(w)) => {
                rows.entry(w).or_default().push((y, Laurent::from_pairs(pairs)));
            }
            (None, Some(w)) => {
                bad.insert(w);
            }
            _ => {
                eprintln!("ignoring cache {path:?}: malformed key {key:?}");
                return;
            }
        }
    }
    let mut accepted = 0usize;
    let total = rows.len();
    for (w, entries) in rows {
        if !bad.contains(&w) && engine.kl().preload_row(&w, &entries) {
            accepted += 1;
        }
    }
    if accepted < total {
        eprintln!("cache {path:?}: preloaded {accepted} of {total} rows; the rest recompute");
    }
}

fn save_cache(engine: &Engine, path: &Path) {
    let mut map: BTreeMap<String, Vec<(i32, i64)>> = BTreeMap::new();
    for (y, w, p) in engine.kl().computed_pairs() {
        map.insert(format!("{y}|{w}"), p.terms().to_vec());
    }
    let body = match serde_json::to_string(&map) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("cache not written: {e}");
            return;
        }
    };
    if let Err(e) = std::fs::write(path, body + "\n") {
        eprintln!("cache not written to {path:?}: {e}");
    }
}

fn main() {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global()
        {
            eprintln!("thread pool: {e}");
        }
    }
    let engine = Engine::new();
    let cache = cache_path(&cli);
    if let Some(path) = &cache {
        load_cache(&engine, path);
    }
    let result = execute(&engine, &cli.command, cli.force);
    if let Some(path) = &cache {
        save_cache(&engine, path);
    }
    match result {
        Ok((value, code)) => {
            println!("{}", normalize(&value));
            std::process::exit(code);
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}

//! Command layer behind the `freetl` binary. Every command renders to a
//! string so that output can be compared byte for byte.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coeff::{quantum_int_at, DeltaMode, RationalFunction, Scalar};
use crate::diagram::{basis, loops_of_overlay, Mode, Morphism, Side, Tl};
use crate::error::{Error, Result};
use crate::freeprod::{realization_verify, sigma0_enumerate};
use crate::freext::{
    all_annular_tangles, annular_adjoint_check, compressed_hom_rank, f_vv, form_compatibility_check, jones_wenzl,
    overlay, overlay_spanning_set, phi, simple_objects, spanning_set,
};
use crate::gram::{fixed_gram, symbolic_gram, GramReport};
use crate::sample::{random_morphism, rng};
use crate::ustl::{
    check_injectivity, check_intertwining_exhaustive, check_intertwining_random, iso_f_plusminus,
    ustl_compressed_rank, ustl_dim, ustl_simples, EmbeddingReport,
};
use crate::word::{Sign, Word, WordClass};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CACHE_ENV: &str = "FREETL_CACHE_DIR";
pub const MAX_LEN_LIMIT: usize = 12;
pub const DEFAULT_MAX_LEN: usize = 8;
pub const DEFAULT_SEED: u64 = 1729;

/// Per-suite word-length caps applied by `verify` on top of `--max-len`.
pub const VERIFY_CAPS: &[(&str, usize)] = &[
    ("positivity", 8),
    ("mas_assertion", 10),
    ("form_compatibility", 8),
    ("jones_wenzl", 5),
    ("minimality", 3),
    ("embedding", 8),
    ("embedding_intertwining", 6),
    ("realization", 8),
    ("rotation", 6),
    ("annular_adjoint", 6),
];

fn cap(name: &str, max_len: usize) -> usize {
    let c = VERIFY_CAPS.iter().find(|(n, _)| *n == name).map_or(max_len, |&(_, c)| c);
    c.min(max_len)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Deliberate corruption used to exercise the failure path of `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Perturb one Gram entry before it is checked.
    Gram,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub delta: DeltaMode,
    pub max_len: usize,
    pub format: Format,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            delta: DeltaMode::fixed(3, 1),
            max_len: DEFAULT_MAX_LEN,
            format: Format::Json,
            seed: DEFAULT_SEED,
            output: None,
            cache_dir: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_len > MAX_LEN_LIMIT {
            return Err(Error::Config(format!("--max-len {} exceeds the limit {MAX_LEN_LIMIT}", self.max_len)));
        }
        Ok(())
    }

    /// The fixed δ, or 3 in symbolic mode, for checks that need a number.
    fn numeric_delta(&self) -> BigRational {
        self.delta.value().cloned().unwrap_or_else(|| BigRational::from_integer(3.into()))
    }
}

/// A rendered command result; `pass` is false when a check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub pass: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, pass: true }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        "∅".to_string()
    } else {
        w.to_string()
    }
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = header.join(",") + "\n";
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            width[i] = width[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> =
            cells.iter().zip(&width).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header.to_vec());
    for r in rows {
        s.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    s
}

// ---------------------------------------------------------------- cache

fn cache_file(dir: &Path, word: &Word, delta: &DeltaMode) -> PathBuf {
    let w: String = word.signs().iter().map(|s| if *s == Sign::Plus { 'p' } else { 'm' }).collect();
    let d = delta.to_string().replace('/', "_");
    dir.join(format!("gram-{ENGINE_VERSION}-{d}-{}.json", if w.is_empty() { "empty".into() } else { w }))
}

fn cache_read(cfg: &RunConfig, word: &Word) -> Option<Value> {
    let path = cache_file(cfg.cache_dir.as_ref()?, word, &cfg.delta);
    let v: Value = serde_json::from_str(&fs::read_to_string(path).ok()?).ok()?;
    let fresh = v["engine_version"] == ENGINE_VERSION
        && v["word"] == word.to_string()
        && v["delta"] == cfg.delta.to_string()
        && v["rank"].is_u64();
    fresh.then_some(v)
}

fn cache_write(cfg: &RunConfig, word: &Word, v: &Value) {
    if let Some(dir) = &cfg.cache_dir {
        // the cache only accelerates; a failed write is not an error
        let _ = fs::create_dir_all(dir).and_then(|_| fs::write(cache_file(dir, word, &cfg.delta), pretty(v)));
    }
}

fn gram_json(word: &Word, cfg: &RunConfig) -> Result<Value> {
    if let Some(v) = cache_read(cfg, word) {
        return Ok(v);
    }
    let mut v = match &cfg.delta {
        DeltaMode::Symbolic => symbolic_gram(word)?.to_json(&cfg.delta),
        DeltaMode::Fixed(d) => fixed_gram(word, d)?.to_json(&cfg.delta),
    };
    v["engine_version"] = json!(ENGINE_VERSION);
    cache_write(cfg, word, &v);
    Ok(v)
}

// ------------------------------------------------------------- commands

#[derive(Serialize)]
struct DimsRow {
    word: Word,
    oriented_dim: usize,
    unshaded_dim: u64,
    quotient_dim: usize,
}

/// Dimensions of every word up to `max_len`.
pub fn cmd_dims(cfg: &RunConfig) -> Result<Outcome> {
    let rows: Vec<DimsRow> = Word::all_up_to(cfg.max_len)
        .map(|w| {
            let oriented_dim = spanning_set(&w).len();
            let quotient_dim = if oriented_dim == 0 {
                0
            } else {
                gram_json(&w, cfg)?["rank"].as_u64().expect("rank is recorded") as usize
            };
            Ok(DimsRow { unshaded_dim: ustl_dim(&w), oriented_dim, quotient_dim, word: w })
        })
        .collect::<Result<_>>()?;
    let header = ["word", "oriented_dim", "unshaded_dim", "quotient_dim"];
    let cells = |show_word: fn(&Word) -> String| -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| {
                vec![show_word(&r.word), r.oriented_dim.to_string(), r.unshaded_dim.to_string(), r.quotient_dim.to_string()]
            })
            .collect()
    };
    Ok(Outcome::ok(match cfg.format {
        Format::Json => pretty(&json!({"delta": cfg.delta.to_string(), "max_len": cfg.max_len, "rows": rows})),
        Format::Csv => csv(&header, &cells(|w| w.to_string())),
        Format::Text => table(&header, &cells(show)),
    }))
}

/// Gram report of the oriented basis of `word`.
pub fn cmd_gram(word: &Word, cfg: &RunConfig) -> Result<Outcome> {
    fn render<K: Scalar>(r: GramReport<K>, cfg: &RunConfig) -> String {
        match cfg.format {
            Format::Csv => r.to_csv(),
            _ => r.to_text(),
        }
    }
    Ok(Outcome::ok(match (cfg.format, &cfg.delta) {
        (Format::Json, _) => pretty(&gram_json(word, cfg)?),
        (_, DeltaMode::Symbolic) => render(symbolic_gram(word)?, cfg),
        (_, DeltaMode::Fixed(d)) => render(fixed_gram(word, d)?, cfg),
    }))
}

fn pairs_text(d: &crate::diagram::PairingDiagram) -> String {
    d.pairs().iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
}

fn morphism_rows<K: Scalar>(m: &Morphism<K>) -> Vec<Vec<String>> {
    m.terms().map(|(d, c)| vec![pairs_text(d), c.to_string()]).collect()
}

fn jw_render<K: Scalar>(tl: &Tl<K>, n: usize, sign: Sign, cfg: &RunConfig) -> Result<String> {
    let f = jones_wenzl(tl, n, sign)?;
    let trace = tl.trace_close(f.element(), Side::Right)?;
    Ok(match cfg.format {
        Format::Json => pretty(&json!({
            "n": n,
            "sign": sign,
            "delta": cfg.delta.to_string(),
            "projection": f.element().to_json(),
            "trace": trace.to_json(),
        })),
        Format::Csv => csv(&["pairs", "coeff"], &morphism_rows(f.element())),
        Format::Text => {
            let mut s = format!("f_{n}^{sign} on {}  (delta = {})\n", show(f.word()), cfg.delta);
            for r in morphism_rows(f.element()) {
                let _ = writeln!(s, "  {}  [{}]", r[1], r[0]);
            }
            let _ = writeln!(s, "trace = {trace}");
            s
        }
    })
}

/// Jones-Wenzl projection `f_n^sign`.
pub fn cmd_jw(n: usize, sign: Sign, cfg: &RunConfig) -> Result<Outcome> {
    Ok(Outcome::ok(match &cfg.delta {
        DeltaMode::Symbolic => jw_render(&Tl::<RationalFunction>::symbolic(), n, sign, cfg)?,
        DeltaMode::Fixed(d) => jw_render(&Tl::fixed(d.clone()), n, sign, cfg)?,
    }))
}

fn require_numeric(cfg: &RunConfig, what: &str) -> Result<BigRational> {
    cfg.delta.value().cloned().ok_or_else(|| Error::Config(format!("{what} needs a numeric --delta")))
}

/// Minimality of `f_vv(v)` in the oriented category and inside USTL.
pub fn cmd_minimal(v: &Word, cfg: &RunConfig) -> Result<Outcome> {
    let tl = Tl::fixed(require_numeric(cfg, "minimal")?);
    let p = f_vv(&tl, v)?;
    let end_rank = compressed_hom_rank(&tl, &p, &p)?;
    let ustl_rank = ustl_compressed_rank(&tl, v, v)?;
    let row = vec![show(v), end_rank.to_string(), (end_rank == 1).to_string(), ustl_rank.to_string(), (ustl_rank == 1).to_string()];
    let header = ["word", "end_rank", "minimal", "ustl_end_rank", "ustl_minimal"];
    Ok(Outcome::ok(match cfg.format {
        Format::Json => pretty(&json!({
            "word": v,
            "delta": cfg.delta.to_string(),
            "end_rank": end_rank,
            "minimal": end_rank == 1,
            "ustl_end_rank": ustl_rank,
            "ustl_minimal": ustl_rank == 1,
            "projection": p.element().to_json(),
        })),
        Format::Csv => csv(&header, &[row]),
        Format::Text => table(&header, &[row]),
    }))
}

/// Simple objects up to `max_len`, with the non-isomorphism checks.
pub fn cmd_simples(cfg: &RunConfig) -> Result<Outcome> {
    let tl = Tl::fixed(require_numeric(cfg, "simples")?);
    let r = simple_objects(&tl, cfg.max_len)?;
    let u = ustl_simples(&tl, cfg.max_len)?;
    let pass = r.pass() && u.pass();
    let body = match cfg.format {
        Format::Json => pretty(&json!({
            "delta": cfg.delta.to_string(),
            "max_len": cfg.max_len,
            "simples": r.words,
            "pairs_checked": r.pairs_checked,
            "failures": r.failures,
            "ustl": u,
            "pass": pass,
        })),
        Format::Csv => csv(&["word"], &r.words.iter().map(|w| vec![w.to_string()]).collect::<Vec<_>>()),
        Format::Text => {
            let mut s: String = r.words.iter().map(|w| show(w) + "\n").collect();
            let _ = writeln!(s, "pairs checked {}  failures {}", r.pairs_checked, r.failures.len());
            let _ = writeln!(s, "ustl labels 0..={}  pass {}", cfg.max_len, u.pass());
            s
        }
    };
    Ok(Outcome { body, pass })
}

fn embedding_report(cfg: &RunConfig, report: &mut EmbeddingReport) -> Result<()> {
    let exhaustive = cap("embedding_intertwining", cfg.max_len);
    let mut r = rng(cfg.seed);
    match &cfg.delta {
        DeltaMode::Symbolic => {
            let tl = Tl::<RationalFunction>::symbolic();
            check_intertwining_exhaustive(&tl, exhaustive, report)?;
            check_intertwining_random(&tl, exhaustive.min(3), 100, &mut r, report)
        }
        DeltaMode::Fixed(d) => {
            let tl = Tl::fixed(d.clone());
            check_intertwining_exhaustive(&tl, exhaustive, report)?;
            check_intertwining_random(&tl, exhaustive.min(3), 100, &mut r, report)
        }
    }
}

struct IsoCheck {
    u: Morphism<BigRational>,
    unitary: bool,
    oriented_rank: usize,
    ustl_rank_k1: usize,
    ustl_rank_k2: usize,
    plus_plus_ustl_end_rank: usize,
}

fn iso_check(delta: &BigRational) -> Result<IsoCheck> {
    let tl = Tl::fixed(delta.clone());
    let u = iso_f_plusminus(delta)?;
    let unitary = tl.compose(&u.star(), &u)? == Morphism::identity(u.source(), Mode::Unshaded)
        && tl.compose(&u, &u.star())? == Morphism::identity(u.target(), Mode::Unshaded);
    let pm = Word::alternating(Sign::Plus, 2);
    let mp = Word::alternating(Sign::Minus, 2);
    Ok(IsoCheck {
        unitary,
        oriented_rank: compressed_hom_rank(&tl, &f_vv(&tl, &pm)?, &f_vv(&tl, &mp)?)?,
        ustl_rank_k1: ustl_compressed_rank(&tl, &pm, &mp)?,
        ustl_rank_k2: ustl_compressed_rank(&tl, &pm.concat(&pm), &mp.concat(&mp))?,
        plus_plus_ustl_end_rank: ustl_compressed_rank(&tl, &"++".parse()?, &"++".parse()?)?,
        u,
    })
}

/// Checks of the embedding into USTL.
pub fn cmd_ustl_embed(cfg: &RunConfig) -> Result<Outcome> {
    let mut report = EmbeddingReport::default();
    check_injectivity(cap("embedding", cfg.max_len), &mut report);
    embedding_report(cfg, &mut report)?;
    let iso = iso_check(&cfg.numeric_delta())?;
    let pass = report.pass() && iso.unitary && iso.ustl_rank_k1 == 1 && iso.ustl_rank_k2 == 1;
    let header = ["check", "value"];
    let rows = vec![
        vec!["injectivity_words".into(), report.injectivity_words.to_string()],
        vec!["intertwining_checks".into(), report.checks.to_string()],
        vec!["failures".into(), report.failures.len().to_string()],
        vec!["u_unitary".into(), iso.unitary.to_string()],
        vec!["oriented_rank_+-_-+".into(), iso.oriented_rank.to_string()],
        vec!["ustl_rank_+-_-+".into(), iso.ustl_rank_k1.to_string()],
        vec!["ustl_rank_+-+-_-+-+".into(), iso.ustl_rank_k2.to_string()],
        vec!["ustl_end_rank_++".into(), iso.plus_plus_ustl_end_rank.to_string()],
    ];
    let body = match cfg.format {
        Format::Json => pretty(&json!({
            "delta": cfg.delta.to_string(),
            "max_len": cfg.max_len,
            "seed": cfg.seed,
            "embedding": report,
            "iso_f_plusminus": {
                "u": iso.u.to_json(),
                "unitary": iso.unitary,
                "oriented_compressed_rank": iso.oriented_rank,
                "ustl_compressed_rank": iso.ustl_rank_k1,
                "ustl_compressed_rank_k2": iso.ustl_rank_k2,
            },
            "plus_plus_ustl_end_rank": iso.plus_plus_ustl_end_rank,
            "pass": pass,
        })),
        Format::Csv => csv(&header, &rows),
        Format::Text => table(&header, &rows),
    };
    Ok(Outcome { body, pass })
}

/// Realization counts against oriented TL counts, plus optional Σ₀ listing.
pub fn cmd_freeprod(cfg: &RunConfig, gram: bool, left: &[String], right: &[String]) -> Result<Outcome> {
    let r = realization_verify(cfg.max_len, gram)?;
    let mut header = vec!["word", "ncp_count", "tl_count", "match"];
    if gram {
        header.push("gram_rank");
    }
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            let mut v = vec![row.word.to_string(), row.ncp_count.to_string(), row.tl_count.to_string(), row.matches.to_string()];
            if let Some(g) = row.gram_rank {
                v.push(g.to_string());
            }
            v
        })
        .collect();
    let body = match cfg.format {
        Format::Json => {
            let mut v = json!({"max_len": cfg.max_len, "rows": r.rows, "pass": r.pass});
            if !left.is_empty() || !right.is_empty() {
                let words = sigma0_enumerate(left, right, cfg.max_len)?;
                v["sigma0"] = words.iter().map(|w| w.to_json()).collect();
            }
            pretty(&v)
        }
        Format::Csv => csv(&header, &rows),
        Format::Text => {
            let shown: Vec<Vec<String>> = rows
                .into_iter()
                .map(|mut row| {
                    if row[0].is_empty() {
                        row[0] = "∅".into();
                    }
                    row
                })
                .collect();
            table(&header, &shown)
        }
    };
    Ok(Outcome { body, pass: r.pass })
}

// --------------------------------------------------------------- verify

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerifyEntry {
    pub check: String,
    pub word: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

struct Suite {
    entries: Vec<VerifyEntry>,
}

impl Suite {
    fn new() -> Self {
        Suite { entries: Vec::new() }
    }

    fn push(&mut self, check: &str, word: impl ToString, witness: Option<Value>) {
        self.entries.push(VerifyEntry { check: check.into(), word: word.to_string(), pass: witness.is_none(), witness });
    }
}

fn suite_positivity(cfg: &RunConfig, delta: &BigRational, fault: Option<Fault>, s: &mut Suite) -> Result<()> {
    let mut corrupt = fault == Some(Fault::Gram);
    for w in Word::all_up_to(cap("positivity", cfg.max_len)) {
        let diagrams = spanning_set(&w);
        let mut g = fixed_gram(&w, delta)?;
        if corrupt && !g.matrix.is_empty() {
            g.matrix[0][0] += <BigRational as Scalar>::one();
            corrupt = false;
        }
        let mut witness = None;
        'entries: for (i, a) in diagrams.iter().enumerate() {
            for (j, b) in diagrams.iter().enumerate() {
                let loops = loops_of_overlay(a.partners(), b.partners());
                let expected = delta.pow(loops as i32);
                if g.matrix[i][j] != expected {
                    witness = Some(json!({"entry": [i, j], "found": g.matrix[i][j].to_string(), "expected": expected.to_string()}));
                    break 'entries;
                }
            }
        }
        if witness.is_none() {
            let minors = crate::gram::leading_principal_minors(&g.matrix);
            if let Some(k) = minors.iter().position(|m| !m.is_positive()) {
                witness = Some(json!({"leading_minor": k + 1, "value": minors[k].to_string()}));
            }
        }
        s.push("positivity", &w, witness);
    }
    Ok(())
}

fn suite_mas(cfg: &RunConfig, s: &mut Suite) -> Result<()> {
    for w in Word::all_up_to(cap("mas_assertion", cfg.max_len)) {
        let direct = spanning_set(&w);
        let mut witness = (overlay_spanning_set(&w) != direct).then(|| json!({"reason": "overlay recursion differs from the direct basis"}));
        if witness.is_none() && w.classify() == WordClass::SameEnds {
            let mut seen = std::collections::BTreeSet::new();
            for d in &direct {
                let split = match phi(&w, d) {
                    Ok(x) => x,
                    Err(e) => {
                        witness = Some(json!({"diagram": d.to_string(), "error": e.to_string()}));
                        break;
                    }
                };
                let back = overlay(&w, &split.odd_part, &split.even_part)?;
                if back.as_ref() != Some(d) || !seen.insert((split.odd_part, split.even_part)) {
                    witness = Some(json!({"diagram": d.to_string(), "reason": "overlay does not invert phi injectively"}));
                    break;
                }
            }
        }
        s.push("mas_assertion", &w, witness);
    }
    Ok(())
}

fn suite_form<K: Scalar>(tl: &Tl<K>, cfg: &RunConfig, s: &mut Suite) -> Result<()> {
    for w in Word::all_up_to(cap("form_compatibility", cfg.max_len)).filter(|w| w.classify() == WordClass::SameEnds) {
        let r = form_compatibility_check(tl, &w)?;
        s.push("form_compatibility", &w, r.witness.map(Value::String));
    }
    Ok(())
}

fn suite_jw<K: Scalar>(tl: &Tl<K>, cfg: &RunConfig, s: &mut Suite) -> Result<()> {
    for n in 0..=cap("jones_wenzl", cfg.max_len) {
        let signs: &[Sign] = if n == 0 { &[Sign::Plus] } else { &[Sign::Plus, Sign::Minus] };
        for &sign in signs {
            let obj = Word::alternating(sign, n);
            let f = match jones_wenzl(tl, n, sign) {
                Ok(f) => f,
                Err(e) => {
                    s.push("jones_wenzl", &obj, Some(json!({"error": e.to_string()})));
                    continue;
                }
            };
            let p = f.element();
            let mut fails = Vec::new();
            if &tl.compose(p, p)? != p {
                fails.push("idempotent".to_string());
            }
            if &p.star() != p {
                fails.push("self-adjoint".to_string());
            }
            for i in 0..n.saturating_sub(1) {
                let e = Morphism::cup_cap(&obj, i, Mode::Oriented)?;
                if !tl.compose(&e, p)?.is_zero() || !tl.compose(p, &e)?.is_zero() {
                    fails.push(format!("e_{} does not annihilate", i + 1));
                }
            }
            let expected = quantum_int_at(n + 1, tl.delta());
            for side in [Side::Left, Side::Right] {
                if tl.trace_close(p, side)? != expected {
                    fails.push(format!("{side:?} trace is not [{}]", n + 1));
                }
            }
            s.push("jones_wenzl", &obj, (!fails.is_empty()).then(|| json!(fails)));
        }
    }
    Ok(())
}

fn suite_minimality(cfg: &RunConfig, delta: &BigRational, s: &mut Suite) -> Result<()> {
    let tl = Tl::fixed(delta.clone());
    let max = cap("minimality", cfg.max_len);
    for v in Word::all_up_to(max).filter(|v| !v.is_empty()) {
        let p = f_vv(&tl, &v)?;
        let rank = compressed_hom_rank(&tl, &p, &p)?;
        s.push("minimality", &v, (rank != 1).then(|| json!({"end_rank": rank})));
    }
    let r = simple_objects(&tl, max)?;
    s.push("simple_objects", "*", (!r.pass()).then(|| json!({"isomorphic_pairs": r.failures})));
    Ok(())
}

fn suite_embedding(cfg: &RunConfig, delta: &BigRational, s: &mut Suite) -> Result<()> {
    for w in Word::all_up_to(cap("embedding", cfg.max_len)) {
        let basis = basis(&w, Mode::Oriented);
        let mut images: Vec<_> = basis.iter().map(|d| d.with_mode(Mode::Unshaded)).collect::<Result<_>>()?;
        images.sort();
        images.dedup();
        s.push("embedding_injective", &w, (images.len() != basis.len()).then(|| json!({"basis": basis.len(), "images": images.len()})));
    }
    let mut r = EmbeddingReport::default();
    embedding_report(cfg, &mut r)?;
    s.push("embedding_intertwining", "*", r.failures.first().cloned());
    let iso = iso_check(delta)?;
    let ok = iso.unitary && iso.ustl_rank_k1 == 1 && iso.oriented_rank == 0;
    s.push("iso_f_plusminus", "+-", (!ok).then(|| json!({"unitary": iso.unitary, "ustl_rank": iso.ustl_rank_k1, "oriented_rank": iso.oriented_rank})));
    if cfg.max_len >= 2 {
        let ok = iso.plus_plus_ustl_end_rank == 2;
        s.push("ustl_non_minimal", "++", (!ok).then(|| json!({"ustl_end_rank": iso.plus_plus_ustl_end_rank})));
    }
    Ok(())
}

fn suite_realization(cfg: &RunConfig, s: &mut Suite) -> Result<()> {
    for row in realization_verify(cap("realization", cfg.max_len), false)?.rows {
        let witness = (!row.matches).then(|| json!({"ncp_count": row.ncp_count, "tl_count": row.tl_count}));
        s.push("realization", &row.word, witness);
    }
    Ok(())
}

fn suite_rotation<K: Scalar>(tl: &Tl<K>, cfg: &RunConfig, s: &mut Suite) -> Result<()> {
    let max = cap("rotation", cfg.max_len);
    let mut r = rng(cfg.seed);
    for w in Word::all_up_to(max) {
        let elems: Vec<Morphism<K>> = basis(&w, Mode::Oriented).into_iter().map(Morphism::element).collect();
        let mut witness = None;
        'outer: for x in &elems {
            if &x.rotate(w.len())? != x {
                witness = Some(json!({"element": x.to_json(), "reason": "full rotation is not the identity"}));
                break;
            }
            for k in 0..=w.len() {
                if &x.rotate(k)?.rotate(w.len() - k)? != x {
                    witness = Some(json!({"element": x.to_json(), "k": k, "reason": "rotation does not invert"}));
                    break 'outer;
                }
                for y in &elems {
                    if tl.inner_product(&x.rotate(k)?, &y.rotate(k)?)? != tl.inner_product(x, y)? {
                        witness = Some(json!({"x": x.to_json(), "y": y.to_json(), "k": k}));
                        break 'outer;
                    }
                }
            }
        }
        if witness.is_none() && w.len() * 2 <= max {
            for _ in 0..4 {
                let f: Morphism<K> = random_morphism(&mut r, &w, &w, Mode::Oriented, 4);
                if tl.trace_close(&f, Side::Left)? != tl.trace_close(&f, Side::Right)? {
                    witness = Some(json!({"endomorphism": f.to_json(), "reason": "left and right traces differ"}));
                    break;
                }
            }
        }
        s.push("rotation", &w, witness);
    }
    for w in Word::all_up_to(cap("annular_adjoint", cfg.max_len)) {
        let mut witness = None;
        for t in all_annular_tangles(&w) {
            let rep = annular_adjoint_check(tl, t, &w, usize::MAX, &mut r)?;
            if !rep.pass {
                witness = Some(serde_json::to_value(&rep).expect("report serializes"));
                break;
            }
        }
        s.push("annular_adjoint", &w, witness);
    }
    Ok(())
}

fn run_generic_suites<K: Scalar>(tl: &Tl<K>, cfg: &RunConfig, s: &mut Suite) -> Result<()> {
    suite_form(tl, cfg, s)?;
    suite_jw(tl, cfg, s)?;
    suite_rotation(tl, cfg, s)
}

/// Every verification suite. The report lists one entry per check and
/// word; `pass` is false if any entry failed. The cache is never read.
pub fn cmd_verify(cfg: &RunConfig, fault: Option<Fault>) -> Result<Outcome> {
    let delta = cfg.numeric_delta();
    if delta < BigRational::from_integer(2.into()) {
        return Err(Error::Config(format!("verify needs delta >= 2, got {delta}")));
    }
    let mut s = Suite::new();
    suite_positivity(cfg, &delta, fault, &mut s)?;
    suite_mas(cfg, &mut s)?;
    match &cfg.delta {
        DeltaMode::Symbolic => run_generic_suites(&Tl::<RationalFunction>::symbolic(), cfg, &mut s)?,
        DeltaMode::Fixed(d) => run_generic_suites(&Tl::fixed(d.clone()), cfg, &mut s)?,
    }
    suite_minimality(cfg, &delta, &mut s)?;
    suite_embedding(cfg, &delta, &mut s)?;
    suite_realization(cfg, &mut s)?;

    let entries = s.entries;
    let pass = entries.iter().all(|e| e.pass);
    let mut names: Vec<&str> = Vec::new();
    for e in &entries {
        if !names.contains(&e.check.as_str()) {
            names.push(&e.check);
        }
    }
    let summary: Vec<(String, usize, usize)> = names
        .iter()
        .map(|n| {
            let of: Vec<&VerifyEntry> = entries.iter().filter(|e| e.check == *n).collect();
            (n.to_string(), of.len(), of.iter().filter(|e| !e.pass).count())
        })
        .collect();
    let body = match cfg.format {
        Format::Json => pretty(&json!({
            "engine_version": ENGINE_VERSION,
            "delta": cfg.delta.to_string(),
            "max_len": cfg.max_len,
            "seed": cfg.seed,
            "pass": pass,
            "summary": summary.iter().map(|(n, c, f)| json!({"check": n, "entries": c, "failures": f})).collect::<Vec<_>>(),
            "entries": entries,
        })),
        Format::Csv => csv(
            &["check", "word", "pass"],
            &entries.iter().map(|e| vec![e.check.clone(), e.word.clone(), e.pass.to_string()]).collect::<Vec<_>>(),
        ),
        Format::Text => {
            let rows: Vec<Vec<String>> = summary
                .iter()
                .map(|(n, c, f)| vec![n.clone(), c.to_string(), f.to_string(), if *f == 0 { "pass" } else { "FAIL" }.into()])
                .collect();
            let mut t = table(&["check", "entries", "failures", "status"], &rows);
            for e in entries.iter().filter(|e| !e.pass) {
                let w = if e.word.is_empty() { "∅" } else { &e.word };
                let _ = writeln!(t, "FAIL {} {}: {}", e.check, w, e.witness.clone().unwrap_or(Value::Null));
            }
            let _ = writeln!(t, "{}", if pass { "all checks passed" } else { "verification failed" });
            t
        }
    };
    Ok(Outcome { body, pass })
}

// ------------------------------------------------------------------ CLI

#[derive(Debug, Parser)]
#[command(name = "freetl", version, about = "Exact diagram calculus for the free oriented extension of Temperley-Lieb")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Loop value: "p/q", an integer, or "symbolic".
    #[arg(long, global = true, default_value = "3")]
    pub delta: String,
    /// Largest word length to enumerate (at most 12).
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LEN)]
    pub max_len: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for the randomized property samples.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Oriented, unshaded and quotient dimensions of every word.
    Dims,
    /// Gram matrix of the oriented basis of a word.
    Gram {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Jones-Wenzl projection on n alternating points.
    Jw {
        n: usize,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
    },
    /// Minimality of f_vv for a word v.
    Minimal {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Simple objects up to --max-len.
    Simples,
    /// Checks of the embedding into unshaded Temperley-Lieb.
    UstlEmbed,
    /// Realization counts in the free product.
    FreeprodCount {
        /// Also require full Gram rank at delta = 3.
        #[arg(long)]
        gram: bool,
        /// Comma-separated left labels for listing alternating words.
        #[arg(long, value_delimiter = ',')]
        left: Vec<String>,
        /// Comma-separated right labels.
        #[arg(long, value_delimiter = ',')]
        right: Vec<String>,
    },
    /// Run every verification suite.
    Verify {
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

/// Process exit status plus captured streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exit {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_) | Error::Config(_) | Error::OutOfRange(_) | Error::Singular { .. } | Error::Pole(_) | Error::Undefined(_)
    )
}

fn config_from(g: &GlobalArgs) -> Result<RunConfig> {
    let cfg = RunConfig {
        delta: g.delta.parse()?,
        max_len: g.max_len,
        format: g.format,
        seed: g.seed,
        output: g.output.clone(),
        cache_dir: std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn parse_sign(s: &str) -> Result<Sign> {
    let mut chars = s.chars();
    match (chars.next().and_then(Sign::from_char), chars.next()) {
        (Some(sign), None) => Ok(sign),
        _ => Err(Error::Parse(format!("sign must be + or -, got {s:?}"))),
    }
}

/// Dispatch a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let cfg = config_from(&cli.global)?;
    match &cli.command {
        Command::Dims => cmd_dims(&cfg),
        Command::Gram { word } => cmd_gram(&word.parse()?, &cfg),
        Command::Jw { n, sign } => cmd_jw(*n, parse_sign(sign)?, &cfg),
        Command::Minimal { word } => cmd_minimal(&word.parse()?, &cfg),
        Command::Simples => cmd_simples(&cfg),
        Command::UstlEmbed => cmd_ustl_embed(&cfg),
        Command::FreeprodCount { gram, left, right } => cmd_freeprod(&cfg, *gram, left, right),
        Command::Verify { inject_fault } => cmd_verify(&cfg, *inject_fault),
    }
}

/// Parse arguments (including the program name), run, and write output.
/// Exit codes: 0 success, 1 failed check, 2 usage error.
pub fn run<I, T>(args: I) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let fail = |code, msg: String| Exit { code, stdout: String::new(), stderr: msg };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Exit { code, stdout: text, stderr: String::new() } } else { fail(2, text) };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let code = if out.pass { 0 } else { 1 };
            match &cli.global.output {
                Some(path) => match fs::write(path, &out.body) {
                    Ok(()) => Exit { code, stdout: String::new(), stderr: String::new() },
                    Err(e) => fail(2, format!("error: cannot write {}: {e}\n", path.display())),
                },
                None => Exit { code, stdout: out.body, stderr: String::new() },
            }
        }
        Err(e) => fail(if is_usage_error(&e) { 2 } else { 1 }, format!("error: {e}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn dims_rows() {
        let out = cmd_dims(&RunConfig { max_len: 4, format: Format::Csv, ..cfg() }).unwrap();
        let lines: Vec<&str> = out.body.lines().collect();
        assert_eq!(lines[0], "word,oriented_dim,unshaded_dim,quotient_dim");
        assert_eq!(lines[1], ",1,1,1");
        assert!(lines.contains(&"+-+-,2,2,2"));
        assert!(lines.contains(&"++,0,1,0"));
        assert_eq!(lines.len(), 1 + 31);
    }

    #[test]
    fn gram_symbolic_json() {
        let c = RunConfig { delta: DeltaMode::Symbolic, ..cfg() };
        let v: Value = serde_json::from_str(&cmd_gram(&"+-+-".parse().unwrap(), &c).unwrap().body).unwrap();
        let d2 = json!({"num": ["0", "0", "1"], "den": ["1"]});
        let d1 = json!({"num": ["0", "1"], "den": ["1"]});
        assert_eq!(v["matrix"], json!([[d2, d1], [d1, d2]]));
    }

    #[test]
    fn jw_two_plus() {
        let c = RunConfig { delta: DeltaMode::Symbolic, format: Format::Csv, ..cfg() };
        let out = cmd_jw(2, Sign::Plus, &c).unwrap().body;
        assert_eq!(out, "pairs,coeff\n0-1 2-3,-1/δ\n0-3 1-2,1\n");
    }

    #[test]
    fn simples_list() {
        let out = cmd_simples(&RunConfig { max_len: 1, format: Format::Text, ..cfg() }).unwrap();
        assert!(out.pass);
        assert!(out.body.starts_with("∅\n+\n-\n"));
    }

    #[test]
    fn verify_small_and_fault() {
        let c = RunConfig { max_len: 4, ..cfg() };
        assert!(cmd_verify(&c, None).unwrap().pass);
        let bad = cmd_verify(&c, Some(Fault::Gram)).unwrap();
        assert!(!bad.pass);
        assert!(bad.body.contains("\"witness\""));
        let zero = cmd_verify(&RunConfig { max_len: 0, ..cfg() }, None).unwrap();
        assert!(zero.pass);
        assert!(zero.body.contains("\"positivity\""));
    }

    #[test]
    fn run_exit_codes() {
        assert_eq!(run(["freetl", "dims", "--max-len", "13"]).code, 2);
        assert_eq!(run(["freetl", "dims", "--delta", "x"]).code, 2);
        assert_eq!(run(["freetl", "bogus"]).code, 2);
        assert_eq!(run(["freetl", "gram", "-+-+", "--max-len", "2"]).code, 0);
        assert_eq!(run(["freetl", "verify", "--max-len", "2", "--inject-fault", "gram"]).code, 1);
        assert_eq!(run(["freetl", "minimal", "+-", "--delta", "symbolic"]).code, 2);
        assert_eq!(run(["freetl", "--help"]).code, 0);
    }
}

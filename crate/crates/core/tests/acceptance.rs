// SPDX-License-Identifier: Apache-2.0

//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Built with `harness = false` so the lines show up in plain
//! `cargo test` output. The process fails on any FAIL that is not listed
//! in [`KNOWN_FAILURES`], and on a listed criterion that starts passing.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use vpt_hedge::hedges::{fcns_inv_word, fcns_word, hedge_of, product_labels, Tree};
use vpt_hedge::oracle::mutate::{h2s_mutants, vpt_mutants};
use vpt_hedge::oracle::random::{self, input_alphabet, GenConfig};
use vpt_hedge::oracle::{
    enum_flat_words, enum_hedges, enum_wn_words, equiv_fcns_on_bounded, equiv_on_bounded, equiv_on_words,
    fact2_bound_check, separation_witness, Encoding, Verdict,
};
use vpt_hedge::text::{parse_model, Model};
use vpt_hedge::translate::{h2b_to_h2h, h2s_to_vpt_fcns, h2s_tr_to_vpt, vpt_fcns_to_h2s, vpt_to_h2s_tr};
use vpt_hedge::{Error, H2s, Hedge, Label, NestedWord, StructuredAlphabet, Vpt, Word};

type Res<T> = Result<T, Error>;

const CORPUS: usize = 50;
const H2B_CORPUS: usize = 20;
const BOUND: usize = 8;
const MIRROR_FLAT_BOUND: usize = 10;
const H2B_HEDGE_NODES: usize = 5;
const FACT1_NODES: usize = 8;
const ENCODING_NODES: usize = 6;
const WITNESS_N: usize = 10;
const WITNESS_MIN_RATIO: f64 = 100.0;
const T2_HEDGE_NODES: usize = 4;
const MAX_MUTANTS: usize = 40;

const BUDGET_TAIL: Duration = Duration::from_secs(60);
const BUDGET_FCNS: Duration = Duration::from_secs(120);
const BUDGET_WITNESS: Duration = Duration::from_secs(30);

const SEED_VPT: u64 = 0x1000;
const SEED_H2S_TR: u64 = 0x2000;
const SEED_H2S: u64 = 0x3000;
const SEED_VPT_BOT: u64 = 0x4000;
const SEED_H2B: u64 = 0x5000;

/// Criteria expected to fail, with the reason. Criterion 7 asks for
/// `height(T(h)) <= k_T * height(h)` on H2B transducers; that bound is false
/// for flat input hedges, whose `fcns` image is as deep as they are long.
const KNOWN_FAILURES: &[(usize, &str)] = &[(
    7,
    "the H2B height bound measured by input height fails on flat hedges",
)];

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when a FAIL is only the documented gap.
    known_gap: bool,
}

impl Outcome {
    fn check(pass: bool, detail: String) -> Self {
        Outcome {
            pass,
            detail,
            known_gap: false,
        }
    }
}

fn cfg(well_nested: bool, tail_recursive: bool) -> GenConfig {
    GenConfig {
        well_nested,
        tail_recursive,
        ..GenConfig::default()
    }
}

fn with_budget(mut o: Outcome, start: Instant, budget: Duration) -> Outcome {
    let t = start.elapsed();
    if t > budget {
        o.pass = false;
        o.known_gap = false;
    }
    o.detail = format!("{}; {:.1}s of {}s", o.detail, t.as_secs_f64(), budget.as_secs());
    o
}

struct Corpora {
    vpt: Vec<Vpt>,
    h2s_tr: Vec<H2s>,
    h2s: Vec<H2s>,
    vpt_bot: Vec<Vpt>,
    h2b: Vec<H2s>,
}

/// Even indices are generated in the well-nested (H2H) mode.
fn corpora() -> Corpora {
    let sigma = input_alphabet();
    Corpora {
        vpt: (0..CORPUS)
            .map(|i| random::random_vpt(&mut random::rng(SEED_VPT + i as u64), &sigma, &cfg(i % 2 == 0, false)))
            .collect(),
        h2s_tr: (0..CORPUS)
            .map(|i| random::random_h2s(&mut random::rng(SEED_H2S_TR + i as u64), &cfg(i % 2 == 0, true)))
            .collect(),
        h2s: (0..CORPUS)
            .map(|i| random::random_h2s(&mut random::rng(SEED_H2S + i as u64), &cfg(i % 2 == 0, false)))
            .collect(),
        vpt_bot: (0..CORPUS)
            .map(|i| {
                random::random_vpt(
                    &mut random::rng(SEED_VPT_BOT + i as u64),
                    &sigma.with_bottom(),
                    &cfg(i % 2 == 0, false),
                )
            })
            .collect(),
        h2b: (0..H2B_CORPUS)
            .map(|i| random::random_h2b(&mut random::rng(SEED_H2B + i as u64), &GenConfig::default()))
            .collect(),
    }
}

/// Tallies a batch of verdicts: (all equivalent, inputs with output, first failure).
fn tally(verdicts: &[Verdict]) -> (bool, usize, Option<String>) {
    let nonempty = verdicts.iter().map(|v| v.nonempty).sum();
    let first = verdicts
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_equivalent())
        .map(|(i, v)| format!("model {i}: {v}"));
    (first.is_none(), nonempty, first)
}

fn equivalence_line(what: &str, verdicts: &[Verdict], extra_ok: bool, extra: &str) -> Outcome {
    let (all, nonempty, first) = tally(verdicts);
    let mut detail = format!(
        "{what}: {}/{} equivalent at bound {BOUND}, {nonempty} inputs with output",
        verdicts.iter().filter(|v| v.is_equivalent()).count(),
        verdicts.len()
    );
    if !extra.is_empty() {
        detail = format!("{detail}; {extra}");
    }
    if let Some(f) = first {
        detail = format!("{detail}; {}", f.replace('\n', " | "));
    }
    Outcome::check(all && extra_ok && nonempty > 0, detail)
}

fn criterion_1(c: &Corpora) -> Res<Outcome> {
    let start = Instant::now();
    let mut verdicts = Vec::new();
    let mut tail = 0;
    for a in &c.vpt {
        let t = vpt_to_h2s_tr(a);
        tail += usize::from(t.is_tail_recursive());
        verdicts.push(equiv_on_bounded(a, &t, BOUND)?);
    }
    let o = equivalence_line(
        "vpt→h2s",
        &verdicts,
        tail == c.vpt.len(),
        &format!("{tail}/{} tail-recursive", c.vpt.len()),
    );
    Ok(with_budget(o, start, BUDGET_TAIL))
}

fn t2() -> Res<H2s> {
    let labels: BTreeSet<Label> = ["f", "a", "b", "c", "d"].iter().map(|n| Label::atom(n)).collect();
    H2s::builtin("subhedge_root", &labels)
}

fn criterion_2(c: &Corpora) -> Res<Outcome> {
    let mut verdicts = Vec::new();
    for t in &c.h2s_tr {
        verdicts.push(equiv_on_bounded(&h2s_tr_to_vpt(t)?, t, BOUND)?);
    }
    // T2 through a VPT and back, compared on every hedge up to a size
    let t2 = t2()?;
    let a = h2s_tr_to_vpt(&t2)?;
    let back = vpt_to_h2s_tr(&a);
    let pairs: BTreeSet<Label> = t2.input().iter().map(|l| Label::Pair(l.call_symbol(), l.return_symbol())).collect();
    let words: Vec<NestedWord> = enum_hedges(&pairs, T2_HEDGE_NODES).iter().map(Hedge::lin).collect();
    let forth = equiv_on_words(&a, &t2, &words, Encoding::Hedge)?;
    let again = equiv_on_words(&a, &back, &words, Encoding::Hedge)?;
    let outputs = t2.eval(&Hedge::parse("f(a b c d)")?)?;
    let expected = [
        "c_f c_a r_a c_# c_b r_b c_c r_c r_# c_d r_d r_f",
        "c_f c_# c_a r_a c_b r_b r_# c_# c_c r_c c_d r_d r_# r_f",
    ];
    let shown = expected.iter().filter(|e| outputs.contains(&Word::parse(e))).count();
    let t2_ok = forth.is_equivalent() && again.is_equivalent() && shown == expected.len();
    Ok(equivalence_line(
        "h2s→vpt",
        &verdicts,
        t2_ok,
        &format!(
            "T2 via vpt and back on {} hedges: {} / {}; {shown}/2 displayed outputs of f(a b c d) among {}",
            words.len(),
            if forth.is_equivalent() { "equal" } else { "differs" },
            if again.is_equivalent() { "equal" } else { "differs" },
            outputs.len()
        ),
    ))
}

fn criterion_3(c: &Corpora) -> Res<Outcome> {
    let mut checked = 0;
    let mut violations = Vec::new();
    for (i, a) in c.vpt.iter().enumerate() {
        if !a.is_wn_vpt()? {
            continue;
        }
        checked += 1;
        let t = vpt_to_h2s_tr(a);
        if !t.is_h2h()? || !h2s_tr_to_vpt(&t)?.is_wn_vpt()? {
            violations.push(format!("vpt {i}"));
        }
    }
    for (i, t) in c.h2s_tr.iter().enumerate() {
        if !t.is_h2h()? {
            continue;
        }
        checked += 1;
        let a = h2s_tr_to_vpt(t)?;
        if !a.is_wn_vpt()? || !vpt_to_h2s_tr(&a).is_h2h()? {
            violations.push(format!("h2s {i}"));
        }
    }
    Ok(Outcome::check(
        violations.is_empty() && checked > 0,
        format!("{checked} well-nested models, violations: {violations:?}"),
    ))
}

/// The mirror over the four pair labels, against exact reversal on flat words.
fn mirror_check() -> Res<(bool, String)> {
    let labels = product_labels(&input_alphabet());
    let mirror = H2s::builtin("mirror", &labels)?;
    let a = h2s_to_vpt_fcns(&mirror)?;
    let words = enum_flat_words(&input_alphabet(), MIRROR_FLAT_BOUND);
    let v = equiv_on_words(&a, &mirror, &words, Encoding::Fcns)?;
    let mut reversal = true;
    for w in words.iter().filter(|w| !w.is_empty()) {
        let h = hedge_of(w)?;
        let reversed: Word = Word(h.trees().iter().rev().map(|t| t.label.as_symbol()).collect());
        reversal &= a.run_all(&fcns_word(w)?)? == BTreeSet::from([reversed]);
    }
    let ok = v.is_equivalent() && reversal && v.nonempty == v.inputs_checked;
    Ok((
        ok,
        format!(
            "mirror: {} flat words up to length {MIRROR_FLAT_BOUND}, {}, reversal {}",
            v.inputs_checked,
            if v.is_equivalent() { "equivalent" } else { "differs" },
            if reversal { "exact" } else { "wrong" }
        ),
    ))
}

fn criterion_4(c: &Corpora) -> Res<Outcome> {
    let start = Instant::now();
    let mut to_vpt = Vec::new();
    for t in &c.h2s {
        to_vpt.push(equiv_fcns_on_bounded(&h2s_to_vpt_fcns(t)?, t, BOUND)?);
    }
    let mut to_h2s = Vec::new();
    for a in &c.vpt_bot {
        to_h2s.push(equiv_fcns_on_bounded(a, &vpt_fcns_to_h2s(a)?, BOUND)?);
    }
    let (mirror_ok, mirror) = mirror_check()?;
    let first = equivalence_line("h2s→vpt⊥", &to_vpt, mirror_ok, &mirror);
    let second = equivalence_line("vpt⊥→h2s", &to_h2s, true, "");
    let o = Outcome::check(first.pass && second.pass, format!("{}; {}", first.detail, second.detail));
    Ok(with_budget(o, start, BUDGET_FCNS))
}

fn criterion_5(c: &Corpora) -> Res<Outcome> {
    let mut checked = 0;
    let mut violations = Vec::new();
    for (i, a) in c.vpt_bot.iter().enumerate() {
        if !a.is_wn_vpt()? {
            continue;
        }
        checked += 1;
        let t = vpt_fcns_to_h2s(a)?;
        if !t.is_h2h()? || !h2s_to_vpt_fcns(&t)?.is_wn_vpt()? {
            violations.push(format!("vpt {i}"));
        }
    }
    for (i, t) in c.h2s.iter().enumerate() {
        if !t.is_h2h()? {
            continue;
        }
        checked += 1;
        let a = h2s_to_vpt_fcns(t)?;
        if !a.is_wn_vpt()? || !vpt_fcns_to_h2s(&a)?.is_h2h()? {
            violations.push(format!("h2s {i}"));
        }
    }
    Ok(Outcome::check(
        violations.is_empty() && checked > 0,
        format!("{checked} well-nested models, violations: {violations:?}"),
    ))
}

/// `eval(T', h) = fcns⁻¹(eval(T, h))` on every hedge up to `nodes`; returns
/// the number of hedges compared and the first mismatch.
fn binary_equation(t: &H2s, t2: &H2s, nodes: usize) -> Res<(usize, Option<Hedge>)> {
    let out = t.output().require_structured()?;
    let hedges = enum_hedges(t.input(), nodes);
    for h in &hedges {
        let mut decoded = BTreeSet::new();
        for o in t.eval(h)? {
            decoded.insert(fcns_inv_word(&out.tag_word(&o)?)?.to_word());
        }
        if t2.eval(h)? != decoded {
            return Ok((hedges.len(), Some(h.clone())));
        }
    }
    Ok((hedges.len(), None))
}

fn criterion_6(c: &Corpora) -> Res<Outcome> {
    let mut h2h = 0;
    let mut mismatches = Vec::new();
    let mut outputs = 0;
    let mut hedges = 0;
    for (i, t) in c.h2b.iter().enumerate() {
        let u = h2b_to_h2h(t)?;
        h2h += usize::from(u.is_h2h()?);
        let (n, bad) = binary_equation(t, &u, H2B_HEDGE_NODES)?;
        hedges += n;
        outputs += enum_hedges(t.input(), H2B_HEDGE_NODES)
            .iter()
            .filter(|h| t.eval(h).is_ok_and(|o| !o.is_empty()))
            .count();
        if let Some(h) = bad {
            mismatches.push(format!("model {i} on {h}"));
        }
    }
    Ok(Outcome::check(
        h2h == c.h2b.len() && mismatches.is_empty() && outputs > 0,
        format!(
            "{h2h}/{} h2h, {hedges} hedge checks ({outputs} with output), mismatches: {mismatches:?}",
            c.h2b.len()
        ),
    ))
}

fn criterion_7(c: &Corpora) -> Res<Outcome> {
    let start = Instant::now();
    let rows = separation_witness(WITNESS_N)?;
    let increasing = rows.windows(2).all(|w| w[1].ratio > w[0].ratio);
    let last = rows.last().map_or(0.0, |r| r.ratio);
    let witness_ok = increasing && rows.len() == WITNESS_N && last > WITNESS_MIN_RATIO;

    let labels: BTreeSet<Label> = [Label::atom("a"), Label::atom("b")].into();
    let flatten = H2s::builtin("flatten", &labels)?;
    let out = flatten.output().require_structured()?.clone();
    let hedges = enum_hedges(&labels, FACT1_NODES);
    let mut fact1_bad = None;
    for h in &hedges {
        let o = flatten.eval(h)?;
        let ok = o.len() == 1
            && o.iter().all(|w| {
                w.len() == 2 * h.node_count()
                    && out.tag_word(w).and_then(|n| n.height()).is_ok_and(|d| d == usize::from(!h.is_empty()))
            });
        if !ok && fact1_bad.is_none() {
            fact1_bad = Some(h.to_string());
        }
    }

    let mut literal_fail = 0;
    let mut via_fcns_fail = 0;
    let mut example = String::new();
    for t in &c.h2b {
        let r = fact2_bound_check(t, H2B_HEDGE_NODES)?;
        if let Some(v) = &r.literal {
            literal_fail += 1;
            if example.is_empty() {
                example = format!(", e.g. {} gives height {} > {}", v.hedge, v.output_height, v.bound);
            }
        }
        via_fcns_fail += usize::from(!r.via_fcns_holds());
    }
    let n = c.h2b.len();
    let rest_ok = witness_ok && fact1_bad.is_none() && via_fcns_fail == 0;
    let detail = format!(
        "ratio strictly increasing: {increasing}, {last:.1} at n = {WITNESS_N}; \
         flatten size and height on {} hedges: {}; \
         height bound by input height: {}/{n} hold{example}; \
         height bound by fcns height: {}/{n} hold",
        hedges.len(),
        fact1_bad.map_or("ok".into(), |h| format!("fails on {h}")),
        n - literal_fail,
        n - via_fcns_fail,
    );
    let o = Outcome {
        pass: rest_ok && literal_fail == 0,
        detail,
        known_gap: rest_ok && literal_fail > 0,
    };
    Ok(with_budget(o, start, BUDGET_WITNESS))
}

fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn criterion_8() -> Res<Outcome> {
    let dir = std::env::temp_dir().join(format!("vpth-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| Error::Model(e.to_string()))?;
    let mirror = models_dir().join("mirror.h2s");
    let run = |direction: &str, out: &str| {
        Command::new(env!("CARGO_BIN_EXE_vpth"))
            .arg("translate")
            .arg(direction)
            .arg(&mirror)
            .arg(dir.join(out))
            .output()
            .map_err(|e| Error::Model(e.to_string()))
    };
    let plain = run("h2s→vpt", "plain.vpt")?;
    let fcns = run("h2s→vpt⊥", "fcns.vpt")?;
    let plain_err = String::from_utf8_lossy(&plain.stderr).trim().to_string();
    let refused = plain.status.code() == Some(2) && plain_err.contains("rule q(") && plain_err.contains("w3");

    let src = std::fs::read_to_string(dir.join("fcns.vpt")).unwrap_or_default();
    let mut translated_ok = fcns.status.success();
    if let (true, Ok(Model::Vpt(a))) = (translated_ok, parse_model(&src)) {
        // every flat hedge up to five nodes over the file's labels
        let Model::H2s(t) = parse_model(&std::fs::read_to_string(&mirror).unwrap_or_default())? else {
            return Ok(Outcome::check(false, "mirror.h2s is not an h2s model".into()));
        };
        let words: Vec<NestedWord> = enum_hedges(t.input(), 5)
            .iter()
            .filter(|h| h.height() <= 1)
            .map(Hedge::lin)
            .collect();
        translated_ok = equiv_on_words(&a, &t, &words, Encoding::Fcns)?.is_equivalent();
    } else {
        translated_ok = false;
    }
    let (mirror_ok, mirror_detail) = mirror_check()?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok(Outcome::check(
        refused && translated_ok && mirror_ok,
        format!(
            "h2s→vpt exit {:?} ({plain_err}); h2s→vpt⊥ exit {:?}, output equivalent: {translated_ok}; {mirror_detail}",
            plain.status.code(),
            fcns.status.code()
        ),
    ))
}

fn as_pairs(h: &Hedge) -> Hedge {
    Hedge(
        h.trees()
            .iter()
            .map(|t| Tree {
                label: Label::Pair(t.label.call_symbol(), t.label.return_symbol()),
                children: as_pairs(&t.children),
            })
            .collect(),
    )
}

fn criterion_9() -> Res<Outcome> {
    let labels: BTreeSet<Label> = [Label::atom("a"), Label::atom("b")].into();
    let hedges = enum_hedges(&labels, ENCODING_NODES);
    let mut failures = Vec::new();
    for h in &hedges {
        let w = h.lin();
        if hedge_of(&w)? != as_pairs(h) {
            failures.push(format!("hedge_of∘lin on {h}"));
        }
        if hedge_of(&w)?.lin() != w {
            failures.push(format!("lin∘hedge_of on {h}"));
        }
        let f = fcns_word(&w)?;
        if fcns_inv_word(&f)? != w {
            failures.push(format!("fcns_inv_word∘fcns_word on {h}"));
        }
        if f != h.fcns().lin() {
            failures.push(format!("fcns_word∘lin vs lin∘fcns on {h}"));
        }
    }
    let one = StructuredAlphabet::from_names(&["c"], &["r"])?;
    let words = enum_wn_words(&one, 2 * 5);
    let word_counts: Vec<usize> = (0..=5).map(|n| words.iter().filter(|w| w.len() == 2 * n).count()).collect();
    let single: BTreeSet<Label> = [Label::atom("a")].into();
    let forests = enum_hedges(&single, 5);
    let hedge_counts: Vec<usize> = (0..=5).map(|n| forests.iter().filter(|h| h.node_count() == n).count()).collect();
    let catalan = [1, 1, 2, 5, 14, 42];
    Ok(Outcome::check(
        failures.is_empty() && word_counts == catalan && hedge_counts == catalan,
        format!(
            "{} hedges, failures: {:?}; word counts {word_counts:?}, hedge counts {hedge_counts:?}",
            hedges.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    ))
}

/// Mutants of a correct translation caught by its own equivalence check.
fn caught<M>(mutants: Vec<M>, mut detect: impl FnMut(&M) -> Res<bool>) -> Res<(usize, usize)> {
    let mut hits = 0;
    let mutants: Vec<M> = mutants.into_iter().take(MAX_MUTANTS).collect();
    for m in &mutants {
        hits += usize::from(detect(m)?);
    }
    Ok((hits, mutants.len()))
}

/// The model in `models` with the most inputs producing output, if any does.
fn busy<M>(models: &[M], mut score: impl FnMut(&M) -> Res<usize>) -> Res<Option<&M>> {
    let mut best: Option<(usize, &M)> = None;
    for m in models {
        let s = score(m)?;
        if s > 0 && best.is_none_or(|(b, _)| s > b) {
            best = Some((s, m));
        }
    }
    Ok(best.map(|(_, m)| m))
}

fn criterion_10(c: &Corpora) -> Res<Outcome> {
    let mut lines = Vec::new();
    let mut all = true;
    let mut record = |name: &str, r: Option<(usize, usize)>| {
        let ok = r.is_some_and(|(hits, _)| hits > 0);
        all &= ok;
        lines.push(match r {
            Some((hits, total)) => format!("{name} {hits}/{total}"),
            None => format!("{name} no model with output"),
        });
    };

    let a = busy(&c.vpt, |a| Ok(equiv_on_bounded(a, &vpt_to_h2s_tr(a), BOUND)?.nonempty))?;
    let r = match a {
        Some(a) => Some(caught(h2s_mutants(&vpt_to_h2s_tr(a)), |m| {
            let v = equiv_on_bounded(a, m, BOUND)?;
            Ok(!v.is_equivalent() && v.reverify(a, m)?)
        })?),
        None => None,
    };
    record("vpt→h2s", r);

    let t = busy(&c.h2s_tr, |t| Ok(equiv_on_bounded(&h2s_tr_to_vpt(t)?, t, BOUND)?.nonempty))?;
    let r = match t {
        Some(t) => Some(caught(vpt_mutants(&h2s_tr_to_vpt(t)?), |m| {
            let v = equiv_on_bounded(m, t, BOUND)?;
            Ok(!v.is_equivalent() && v.reverify(m, t)?)
        })?),
        None => None,
    };
    record("h2s→vpt", r);

    let a = busy(&c.vpt_bot, |a| Ok(equiv_fcns_on_bounded(a, &vpt_fcns_to_h2s(a)?, BOUND)?.nonempty))?;
    let r = match a {
        Some(a) => Some(caught(h2s_mutants(&vpt_fcns_to_h2s(a)?), |m| {
            let v = equiv_fcns_on_bounded(a, m, BOUND)?;
            Ok(!v.is_equivalent() && v.reverify(a, m)?)
        })?),
        None => None,
    };
    record("vpt⊥→h2s", r);

    let t = busy(&c.h2s, |t| Ok(equiv_fcns_on_bounded(&h2s_to_vpt_fcns(t)?, t, BOUND)?.nonempty))?;
    let r = match t {
        Some(t) => Some(caught(vpt_mutants(&h2s_to_vpt_fcns(t)?), |m| {
            let v = equiv_fcns_on_bounded(m, t, BOUND)?;
            Ok(!v.is_equivalent() && v.reverify(m, t)?)
        })?),
        None => None,
    };
    record("h2s→vpt⊥", r);

    let t = busy(&c.h2b, |t| {
        Ok(enum_hedges(t.input(), H2B_HEDGE_NODES)
            .iter()
            .filter(|h| t.eval(h).is_ok_and(|o| !o.is_empty()))
            .count())
    })?;
    let r = match t {
        Some(t) => Some(caught(h2s_mutants(&h2b_to_h2h(t)?), |m| {
            Ok(binary_equation(t, m, H2B_HEDGE_NODES)?.1.is_some())
        })?),
        None => None,
    };
    record("h2b→h2h", r);

    Ok(Outcome::check(all, format!("mutants caught: {}", lines.join(", "))))
}

fn main() {
    let total = Instant::now();
    let c = corpora();
    type Criterion<'a> = (usize, &'a str, Box<dyn Fn() -> Res<Outcome> + 'a>);
    let criteria: Vec<Criterion> = vec![
        (1, "vpt→h2s equivalence", Box::new(|| criterion_1(&c))),
        (2, "h2s→vpt equivalence", Box::new(|| criterion_2(&c))),
        (3, "well-nestedness kept by the tail translations", Box::new(|| criterion_3(&c))),
        (4, "fcns translations in both directions", Box::new(|| criterion_4(&c))),
        (5, "well-nestedness kept by the fcns translations", Box::new(|| criterion_5(&c))),
        (6, "h2b→h2h semantic equation", Box::new(|| criterion_6(&c))),
        (7, "separation witness and height facts", Box::new(|| criterion_7(&c))),
        (8, "tail recursion obstruction via the CLI", Box::new(criterion_8)),
        (9, "encoding laws", Box::new(criterion_9)),
        (10, "mutation sensitivity", Box::new(|| criterion_10(&c))),
    ];
    let mut unexpected = Vec::new();
    for (n, title, run) in &criteria {
        let start = Instant::now();
        let o = run().unwrap_or_else(|e| Outcome::check(false, format!("error: {e}")));
        let known = KNOWN_FAILURES.iter().find(|(k, _)| k == n);
        println!(
            "criterion {n:>2} {} {title} ({:.1}s): {}",
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
        match (o.pass, known) {
            (true, None) => {}
            (false, Some((_, why))) if o.known_gap => println!("             known failure: {why}"),
            (true, Some(_)) => unexpected.push(format!("criterion {n} passes but is listed as a known failure")),
            (false, _) => unexpected.push(format!("criterion {n} failed")),
        }
    }
    println!("acceptance finished in {:.1}s", total.elapsed().as_secs_f64());
    if !unexpected.is_empty() {
        for u in &unexpected {
            eprintln!("{u}");
        }
        std::process::exit(1);
    }
}

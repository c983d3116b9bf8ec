// SPDX-License-Identifier: Apache-2.0

//! The `vpth` command line. Each verb wraps one library call and returns
//! its output as an [`Outcome`]; the binary only prints it.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::h2s::H2s;
use crate::hedges::{fcns_inv_word, fcns_word, hedge_of, Hedge, Label};
use crate::oracle::random::{self, GenConfig};
use crate::oracle::{
    enum_hedges, enum_wn_words, equiv_fcns_on_bounded, equiv_on_bounded, separation_witness, WitnessRow,
};
use crate::text::{parse_model, write_h2s, write_vpt, Model};
use crate::translate::{self, Direction, TranslationReport};
use crate::vpt::{fmt_call, fmt_return, Vpt};
use crate::words::{Letter, NestedWord, StructuredAlphabet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "vpth", version, about = "Visibly pushdown and hedge-to-string transducers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the output set of a model on one input.
    Run {
        model: PathBuf,
        input: String,
        /// Read the input as a nested word (token syntax).
        #[arg(long, conflicts_with = "as_hedge")]
        as_word: bool,
        /// Read the input as a hedge term, e.g. `f(a b) c`.
        #[arg(long)]
        as_hedge: bool,
    },
    /// Translate a model; the report goes to standard error.
    Translate {
        /// h2b→h2h, vpt→h2s, h2s→vpt, vpt⊥→h2s or h2s→vpt⊥ (ASCII: h2s-vpt-fcns, ...)
        direction: String,
        input: PathBuf,
        output: PathBuf,
    },
    /// Decide a class predicate.
    Check { predicate: Predicate, file: PathBuf },
    /// Compare a VPT and an H2S on all inputs up to a length.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        /// Feed the VPT `fcns(w)` instead of `w`.
        #[arg(long)]
        fcns: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply an encoding to a word or hedge.
    Encode {
        codec: Codec,
        input: String,
        /// Call symbols, separated by commas or spaces. Without `--calls` and
        /// `--returns`, names starting with `c` are calls and names starting
        /// with `r` are returns.
        #[arg(long)]
        calls: Option<String>,
        #[arg(long)]
        returns: Option<String>,
    },
    /// Heights of the flattened exponential family under `fcns`.
    Witness {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List bounded hedges or words, or generate seeded random models.
    Enum {
        kind: EnumKind,
        /// Nodes for hedges, length for words.
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value = "a,b")]
        labels: String,
        #[arg(long, default_value = "c")]
        calls: String,
        #[arg(long, default_value = "r")]
        returns: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        well_nested: bool,
        #[arg(long)]
        tail_recursive: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Predicate {
    /// Well-nested VPT.
    Wn,
    /// Tail-recursive H2S.
    Tr,
    H2h,
    H2b,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Codec {
    /// Word to its first-child next-sibling word.
    Fcns,
    /// Binary well-nested word back to the word it encodes.
    FcnsInv,
    /// Word to hedge term.
    Hedge,
    /// Hedge term to word.
    Lin,
    /// Hedge term to its binary tree.
    Tree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumKind {
    Hedges,
    Words,
    Vpt,
    H2s,
    H2b,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_USAGE,
        }
    }
}

pub fn execute(cmd: &Command) -> Outcome {
    let result = match cmd {
        Command::Run {
            model,
            input,
            as_word,
            as_hedge,
        } => cmd_run(model, input, *as_word, *as_hedge),
        Command::Translate {
            direction,
            input,
            output,
        } => cmd_translate(direction, input, output),
        Command::Check { predicate, file } => cmd_check(*predicate, file),
        Command::Equiv {
            a,
            b,
            bound,
            fcns,
            format,
        } => cmd_equiv(a, b, *bound, *fcns, *format),
        Command::Encode {
            codec,
            input,
            calls,
            returns,
        } => cmd_encode(*codec, input, calls.as_deref(), returns.as_deref()).map(Outcome::ok),
        Command::Witness { max_n, format } => cmd_witness(*max_n, *format).map(Outcome::ok),
        Command::Enum {
            kind,
            bound,
            labels,
            calls,
            returns,
            seed,
            count,
            well_nested,
            tail_recursive,
        } => {
            let cfg = GenConfig {
                well_nested: *well_nested,
                tail_recursive: *tail_recursive,
                ..GenConfig::default()
            };
            cmd_enum(*kind, *bound, labels, calls, returns, *seed, *count, &cfg).map(Outcome::ok)
        }
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

pub fn load_model(path: &Path) -> Result<Model> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::Model(format!("cannot read {}: {e}", path.display())))?;
    parse_model(&src)
}

fn lines<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let mut s = String::new();
    for i in items {
        let _ = writeln!(s, "{i}");
    }
    s
}

fn verdict(yes: bool, stdout: String) -> Outcome {
    Outcome {
        stdout,
        stderr: String::new(),
        code: if yes { EXIT_OK } else { EXIT_NO },
    }
}

pub fn cmd_run(path: &Path, input: &str, as_word: bool, as_hedge: bool) -> Result<Outcome> {
    let outputs = match load_model(path)? {
        Model::Vpt(a) => {
            let w = if as_hedge {
                let word = Hedge::parse(input)?.lin().to_word();
                a.input().tag_word(&word)?
            } else {
                a.input().parse_word(input)?
            };
            a.run_all(&w)?
        }
        Model::H2s(t) => {
            let h = if as_word {
                let w = t.product_base()?.parse_word(input)?;
                match hedge_of(&w) {
                    Ok(h) => h,
                    Err(Error::NotWellNested { .. }) => return Ok(verdict(false, String::new())),
                    Err(e) => return Err(e),
                }
            } else {
                Hedge::parse(input)?
            };
            t.eval(&h)?
        }
    };
    Ok(verdict(!outputs.is_empty(), lines(&outputs)))
}

pub fn cmd_translate(direction: &str, input: &Path, output: &Path) -> Result<Outcome> {
    let d = Direction::parse(direction).ok_or_else(|| {
        let known: Vec<&str> = Direction::ALL.iter().map(|d| d.name()).collect();
        Error::Precondition(format!("unknown direction `{direction}` (expected one of {})", known.join(", ")))
    })?;
    let (text, report) = match (d, load_model(input)?) {
        (Direction::VptToH2s, Model::Vpt(a)) => {
            let t = translate::vpt_to_h2s_tr(&a);
            (write_h2s(&t), TranslationReport::to_h2s(d, "vpt", a.states().len(), &t))
        }
        (Direction::VptFcnsToH2s, Model::Vpt(a)) => {
            let t = translate::vpt_fcns_to_h2s(&a)?;
            (write_h2s(&t), TranslationReport::to_h2s(d, "vpt", a.states().len(), &t))
        }
        (Direction::H2bToH2h, Model::H2s(t)) => {
            let u = translate::h2b_to_h2h(&t)?;
            (write_h2s(&u), TranslationReport::to_h2s(d, "h2s", t.states().len(), &u))
        }
        (Direction::H2sToVpt, Model::H2s(t)) => {
            let a = translate::h2s_tr_to_vpt(&t)?;
            (write_vpt(&a), TranslationReport::to_vpt(d, "h2s", t.states().len(), &a))
        }
        (Direction::H2sToVptFcns, Model::H2s(t)) => {
            let a = translate::h2s_to_vpt_fcns(&t)?;
            (write_vpt(&a), TranslationReport::to_vpt(d, "h2s", t.states().len(), &a))
        }
        (d, m) => {
            let found = if matches!(m, Model::Vpt(_)) { "vpt" } else { "h2s" };
            return Err(Error::Precondition(format!("{d} cannot read a {found} model")));
        }
    };
    std::fs::write(output, text).map_err(|e| Error::Model(format!("cannot write {}: {e}", output.display())))?;
    Ok(Outcome {
        stdout: String::new(),
        stderr: format!("{report}\n"),
        code: EXIT_OK,
    })
}

pub fn cmd_check(predicate: Predicate, path: &Path) -> Result<Outcome> {
    let m = load_model(path)?;
    let violation: Option<String> = match (predicate, &m) {
        (Predicate::Wn, Model::Vpt(a)) => a
            .wn_violation()?
            .map(|(c, r)| format!("{} / {}", fmt_call(&c), fmt_return(&r))),
        (Predicate::Tr, Model::H2s(t)) => t.first_non_tail_recursive().map(|r| format!("rule {r}")),
        (Predicate::H2h, Model::H2s(t)) => t.h2h_violation()?,
        (Predicate::H2b, Model::H2s(t)) => t.h2b_violation()?,
        (p, _) => {
            let wanted = if p == Predicate::Wn { "vpt" } else { "h2s" };
            return Err(Error::Precondition(format!("this predicate needs a {wanted} model")));
        }
    };
    Ok(match violation {
        None => verdict(true, "yes\n".into()),
        Some(v) => verdict(false, format!("no\n{v}\n")),
    })
}

pub fn cmd_equiv(a: &Path, b: &Path, bound: usize, fcns: bool, format: Format) -> Result<Outcome> {
    let (vpt, h2s): (Vpt, H2s) = match (load_model(a)?, load_model(b)?) {
        (Model::Vpt(v), Model::H2s(t)) | (Model::H2s(t), Model::Vpt(v)) => (v, t),
        _ => return Err(Error::Precondition("equiv needs one vpt and one h2s model".into())),
    };
    let v = if fcns {
        equiv_fcns_on_bounded(&vpt, &h2s, bound)?
    } else {
        equiv_on_bounded(&vpt, &h2s, bound)?
    };
    let mut stdout = match format {
        Format::Text => String::new(),
        Format::Records => v.to_records(),
    };
    let _ = writeln!(stdout, "{v}");
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if v.is_equivalent() { EXIT_OK } else { EXIT_COUNTEREXAMPLE },
    })
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect()
}

fn infer_letter(name: &str) -> Result<Letter> {
    if name.starts_with("⊥c") || name.starts_with('c') {
        Ok(Letter::call(name))
    } else if name.starts_with("⊥r") || name.starts_with('r') {
        Ok(Letter::ret(name))
    } else {
        Err(Error::UnknownSymbol(format!(
            "{name} (cannot tell call from return; pass --calls and --returns)"
        )))
    }
}

fn parse_tagged(input: &str, calls: Option<&str>, returns: Option<&str>) -> Result<NestedWord> {
    if calls.is_none() && returns.is_none() {
        return input
            .split_whitespace()
            .filter(|t| *t != "ε")
            .map(infer_letter)
            .collect::<Result<Vec<_>>>()
            .map(NestedWord);
    }
    let sigma = StructuredAlphabet::from_names(
        &split_list(calls.unwrap_or_default()),
        &split_list(returns.unwrap_or_default()),
    )?;
    sigma.with_bottom().parse_word(input)
}

pub fn cmd_encode(codec: Codec, input: &str, calls: Option<&str>, returns: Option<&str>) -> Result<String> {
    let text = match codec {
        Codec::Fcns => fcns_word(&parse_tagged(input, calls, returns)?)?.to_string(),
        Codec::FcnsInv => fcns_inv_word(&parse_tagged(input, calls, returns)?)?.to_string(),
        Codec::Hedge => hedge_of(&parse_tagged(input, calls, returns)?)?.to_string(),
        Codec::Lin => Hedge::parse(input)?.lin().to_string(),
        Codec::Tree => Hedge::parse(input)?.fcns().to_string(),
    };
    Ok(text + "\n")
}

pub fn format_witness_table(rows: &[WitnessRow]) -> String {
    let mut s = format!("{:>3} {:>8} {:>9} {:>15} {:>8}\n", "n", "nodes", "height_in", "height_fcns_out", "ratio");
    for r in rows {
        let _ = writeln!(
            s,
            "{:>3} {:>8} {:>9} {:>15} {:>8.3}",
            r.n, r.nodes, r.height_in, r.height_fcns_out, r.ratio
        );
    }
    s
}

pub fn cmd_witness(max_n: usize, format: Format) -> Result<String> {
    let rows = separation_witness(max_n)?;
    Ok(match format {
        Format::Text => format_witness_table(&rows),
        Format::Records => crate::oracle::format_witness(&rows),
    })
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_enum(
    kind: EnumKind,
    bound: usize,
    labels: &str,
    calls: &str,
    returns: &str,
    seed: u64,
    count: usize,
    cfg: &GenConfig,
) -> Result<String> {
    let mut rng = random::rng(seed);
    let mut models = Vec::new();
    match kind {
        EnumKind::Hedges => {
            let labels = split_list(labels)
                .into_iter()
                .map(Label::parse)
                .collect::<Result<BTreeSet<_>>>()?;
            return Ok(lines(enum_hedges(&labels, bound)));
        }
        EnumKind::Words => {
            let sigma = StructuredAlphabet::from_names(&split_list(calls), &split_list(returns))?;
            return Ok(lines(enum_wn_words(&sigma, bound)));
        }
        EnumKind::Vpt => {
            for _ in 0..count {
                models.push(write_vpt(&random::random_vpt(&mut rng, &random::input_alphabet(), cfg)));
            }
        }
        EnumKind::H2s => {
            for _ in 0..count {
                models.push(write_h2s(&random::random_h2s(&mut rng, cfg)));
            }
        }
        EnumKind::H2b => {
            for _ in 0..count {
                models.push(write_h2s(&random::random_h2b(&mut rng, cfg)));
            }
        }
    }
    Ok(models.join("\n"))
}

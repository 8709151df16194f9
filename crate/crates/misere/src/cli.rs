//! Command-line front end. `run_command` is the whole program minus process exit.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr::GRAMMAR;
use crate::genus::DEFAULT_MAX_DIGITS;
use crate::heap::{HeapGame, PeriodicityBounds, SubtractionGameSpec};
use crate::outcome::{Outcome, SumPosition};
use crate::position::{Engine, Side, SumKind};
use crate::quotient::{compute_poset, poset_at_bound, format_word, QuotientReport, DEFAULT_CONTEXT_BOUND, DEFAULT_SUM_BOUND};
use crate::star::{IsoCheck, DEFAULT_MAX_DAY};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "misere", version, about = "Misère-play analysis of partizan games", after_help = GRAMMAR)]
pub struct Cli {
    /// emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Outcome class of a position or sum
    Outcome {
        expr: String,
        #[arg(long, value_enum, default_value_t = ConventionArg::Misere)]
        convention: ConventionArg,
    },
    /// Structural profile
    Props { expr: String },
    /// Genus of an impartial position
    Genus {
        expr: String,
        #[arg(long, default_value_t = DEFAULT_MAX_DIGITS)]
        max_digits: usize,
    },
    /// Tameness of an impartial position
    Tame { expr: String },
    /// Misère monoid of the closure of some positions
    Monoid(MonoidArgs),
    /// Partial order on the monoid classes
    Poset {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long)]
        dot: bool,
        /// report the order even when the quotient did not stabilize
        #[arg(long)]
        at_bound: bool,
    },
    /// Positions with the monoid of *
    #[command(subcommand)]
    Star(StarCommand),
    /// Partizan subtraction games on several heaps
    Heap(HeapArgs),
    /// Play the mirroring strategy on Σ(ξ + conj ξ)
    Strategy {
        /// comma-separated ab3 positions ξ
        #[arg(short = 'c', long = "components")]
        components: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        mover: SideArg,
    },
    /// Game tree as a DOT digraph
    Dot { expr: String },
    /// o⁻(α □ conj α) for one of the alternative sums
    AltsumCheck {
        #[arg(value_enum)]
        kind: KindArg,
        expr: String,
    },
    /// o⁻(α + α°) = P
    AdjointCheck { expr: String },
}

#[derive(Args, Debug, Clone)]
pub struct MonoidArgs {
    /// comma-separated generators
    #[arg(short = 'g', long = "generators")]
    pub generators: String,
    #[arg(long, default_value_t = DEFAULT_SUM_BOUND)]
    pub sum_bound: usize,
    #[arg(long, default_value_t = DEFAULT_CONTEXT_BOUND)]
    pub context_bound: usize,
    /// check `lhs=rhs` over the closure instead of printing the monoid
    #[arg(long)]
    pub verify: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum StarCommand {
    /// Is the position *-built, and its image in {1, a}
    Classify { expr: String },
    /// Count *-built positions by birthday
    Enumerate {
        #[arg(long, default_value_t = DEFAULT_MAX_DAY)]
        day: u32,
        #[arg(long)]
        list: bool,
    },
    /// Check the conditions for cl(generators) to have the monoid of *
    Iso {
        #[arg(short = 'g', long = "generators")]
        generators: String,
        #[arg(long, default_value_t = DEFAULT_SUM_BOUND)]
        sum_bound: usize,
    },
    /// Outcome of a sum of *-built positions through the monoid of *
    Sum { expr: String },
}

#[derive(Args, Debug)]
pub struct HeapArgs {
    #[arg(long, value_delimiter = ',')]
    pub left: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    pub right: Vec<u32>,
    #[arg(long, default_value_t = 6)]
    pub max_heap: u32,
    /// table extent per coordinate, e.g. `7,6`
    #[arg(long, value_delimiter = ',')]
    pub prefix: Option<Vec<u32>>,
    #[arg(long)]
    pub periodicity: bool,
    #[arg(long)]
    pub quotient: bool,
    #[arg(long, default_value_t = DEFAULT_SUM_BOUND)]
    pub sum_bound: usize,
    #[arg(long, default_value_t = DEFAULT_CONTEXT_BOUND)]
    pub context_bound: usize,
    #[arg(long, default_value_t = 4)]
    pub max_u: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConventionArg {
    Misere,
    Normal,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    And,
    Or,
    Disand,
    Disor,
    Seq,
    Ord,
}

impl From<KindArg> for SumKind {
    fn from(k: KindArg) -> SumKind {
        match k {
            KindArg::And => SumKind::And,
            KindArg::Or => SumKind::Or,
            KindArg::Disand => SumKind::Disand,
            KindArg::Disor => SumKind::Disor,
            KindArg::Seq => SumKind::Seqjoin,
            KindArg::Ord => SumKind::Ordinal,
        }
    }
}

struct Output {
    code: i32,
    text: String,
    json: Value,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { code: EXIT_OK, text, json }
    }

    fn verdict(holds: bool, text: String, json: Value) -> Output {
        Output { code: if holds { EXIT_OK } else { EXIT_REFUTED }, text, json }
    }
}

/// Runs one command; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let engine = Engine::new();
    match dispatch(&engine, &cli.command) {
        Ok(o) => {
            if cli.json {
                let mut v = o.json;
                if let Value::Object(m) = &mut v {
                    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
                }
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                let _ = write!(out, "{}", o.text);
                if !o.text.ends_with('\n') {
                    let _ = writeln!(out);
                }
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::Parse { .. }) {
                let _ = writeln!(err, "\n{GRAMMAR}");
            }
            EXIT_USAGE
        }
    }
}

fn dispatch(e: &Engine, cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Outcome { expr, convention } => outcome(e, expr, *convention),
        Command::Props { expr } => {
            let p = e.parse_position(expr)?;
            let prof = e.profile(p);
            let rank = prof.ab_rank.map_or("none".to_string(), |r| r.to_string());
            let text = format!(
                "position: {}\nbirthday: {}\nimpartial: {}\nall_small: {}\nbinary: {}\nab_rank: {}\nleft_end: {}\nright_end: {}\nstar_built: {}\n",
                e.format_position(p),
                prof.birthday,
                prof.impartial,
                prof.all_small,
                prof.binary,
                rank,
                prof.left_end,
                prof.right_end,
                e.is_star_built(p)
            );
            let json = json!({"position": e.format_position(p), "profile": prof, "star_built": e.is_star_built(p)});
            Ok(Output::ok(text, json))
        }
        Command::Genus { expr, max_digits } => {
            let p = e.parse_position(expr)?;
            let g = e.genus(p, *max_digits)?;
            Ok(Output::ok(format!("{g}"), json!({"position": e.format_position(p), "genus": g.to_string(), "g_plus": g.g_plus, "digits": g.digits})))
        }
        Command::Tame { expr } => {
            let p = e.parse_position(expr)?;
            let t = e.is_tame(p)?;
            Ok(Output::ok(if t { "tame" } else { "wild" }.into(), json!({"position": e.format_position(p), "tame": t})))
        }
        Command::Monoid(args) => monoid(e, args),
        Command::Poset { monoid, dot, at_bound } => poset(e, monoid, *dot, *at_bound),
        Command::Star(sc) => star(e, sc),
        Command::Heap(args) => heap(args),
        Command::Strategy { components, mover } => {
            let comps = e.parse_list(components)?;
            let side = match mover {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let play = e.tweedle_playout(&comps, side)?;
            let text = format!("{}\nresult: {}\n", play.trace.join("\n"), if play.win { "win" } else { "loss" });
            Ok(Output::verdict(play.win, text, json!({"win": play.win, "trace": play.trace})))
        }
        Command::Dot { expr } => {
            let p = e.parse_position(expr)?;
            let dot = e.to_dot(p);
            Ok(Output::ok(dot.clone(), json!({"dot": dot})))
        }
        Command::AltsumCheck { kind, expr } => {
            let kind = SumKind::from(*kind);
            let a = e.parse_position(expr)?;
            let s = e.alt_sum(kind, a, e.conjugate(a))?;
            let o = e.misere(s);
            let plain = e.misere_outcome(&SumPosition::new(vec![a, e.conjugate(a)]));
            let left_first_loses = !o.left_first_wins();
            let text = format!(
                "{} {} conj: {o}\ndisjunctive sum: {plain}\nfirst-player Left {}\n",
                e.format_position(a),
                kind.keyword(),
                if left_first_loses { "loses" } else { "wins" }
            );
            let json = json!({"kind": kind.keyword(), "position": e.format_position(a), "outcome": o, "disjunctive_outcome": plain, "left_first_loses": left_first_loses});
            Ok(Output::verdict(!left_first_loses, text, json))
        }
        Command::AdjointCheck { expr } => {
            let p = e.parse_position(expr)?;
            let adj = e.adjoint(p);
            let o = e.misere_outcome(&SumPosition::new(vec![p, adj]));
            let text = format!("adjoint: {}\noutcome of sum: {o}\n", e.format_position(adj));
            Ok(Output::verdict(o == Outcome::P, text, json!({"position": e.format_position(p), "adjoint": e.format_position(adj), "outcome": o})))
        }
    }
}

fn outcome(e: &Engine, expr: &str, conv: ConventionArg) -> Result<Output> {
    let s = e.parse_expression(expr)?;
    let m = e.misere_outcome(&s);
    let n = e.normal_outcome(&s);
    let (text, json) = match conv {
        ConventionArg::Misere => (format!("{m}"), json!({"expression": e.format_sum(&s), "misere": m})),
        ConventionArg::Normal => (format!("{n}"), json!({"expression": e.format_sum(&s), "normal": n})),
        ConventionArg::Both => (format!("misere: {m}\nnormal: {n}"), json!({"expression": e.format_sum(&s), "misere": m, "normal": n})),
    };
    Ok(Output::ok(text, json))
}

fn render_report(r: &QuotientReport) -> String {
    let mut t = String::new();
    let base: Vec<String> = r.base.iter().map(|b| format!("{} = {}", b.symbol, b.label)).collect();
    t.push_str(&format!("base: {}\n", base.join(", ")));
    t.push_str(&format!("status: {}\n", serde_json::to_value(r.status).unwrap().as_str().unwrap()));
    t.push_str(&format!("bounds: sum {} context {}\n", r.sum_bound, r.context_bound));
    t.push_str(&format!("classes ({}):\n", r.classes.len()));
    for c in &r.classes {
        t.push_str(&format!("  {:<8} {}\n", c.word, c.outcome));
    }
    t.push_str("relations:\n");
    for rel in &r.relations {
        t.push_str(&format!("  {} = {}\n", rel.lhs, rel.rhs));
    }
    for o in Outcome::ALL {
        let words: Vec<&str> = r.tetrapartition[&o].iter().map(|&c| r.classes[c].word.as_str()).collect();
        t.push_str(&format!("{o}: {{{}}}\n", words.join(", ")));
    }
    t.push_str(&format!("note: {}\n", r.certificate));
    t
}

fn monoid(e: &Engine, args: &MonoidArgs) -> Result<Output> {
    let gens = e.parse_list(&args.generators)?;
    if let Some(rel) = &args.verify {
        let (lhs, rhs) = rel
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument("--verify expects `lhs=rhs`".into()))?;
        let (lhs, rhs) = (e.parse_expression(lhs)?, e.parse_expression(rhs)?);
        let base = e.option_closure(&gens);
        let check = e.verify_relation(&lhs, &rhs, &base, args.context_bound);
        let text = match &check {
            crate::quotient::RelationCheck::HoldsAtBound => {
                format!("holds for every context of at most {} base elements", args.context_bound)
            }
            crate::quotient::RelationCheck::Refuted(z) => format!(
                "refuted by context {}: {} vs {}",
                e.format_sum(z),
                e.misere_outcome(&lhs.add(z)),
                e.misere_outcome(&rhs.add(z))
            ),
        };
        return Ok(Output::verdict(check.holds(), text, json!({"relation": rel, "check": check})));
    }
    let q = e.compute_quotient(&gens, args.sum_bound, args.context_bound)?;
    Ok(Output::ok(render_report(q.report()), serde_json::to_value(q.report()).unwrap()))
}

fn poset(e: &Engine, args: &MonoidArgs, dot: bool, at_bound: bool) -> Result<Output> {
    let gens = e.parse_list(&args.generators)?;
    let q = e.compute_quotient(&gens, args.sum_bound, args.context_bound)?;
    let p = if at_bound { poset_at_bound(&q.quotient) } else { compute_poset(&q.quotient)? };
    let words: Vec<String> = q.report().classes.iter().map(|c| c.word.clone()).collect();
    let text = if dot {
        p.to_dot(&words)
    } else {
        let mut t = String::new();
        for &(a, b) in &p.covers {
            t.push_str(&format!("{} > {}\n", words[a], words[b]));
        }
        let name = |c: Option<usize>| c.map_or("none".to_string(), |c| words[c].clone());
        t.push_str(&format!("bottom: {}\ntop: {}\n", name(p.bottom), name(p.top)));
        t.push_str(&format!("incomparable pairs: {}\n", p.incomparable.len()));
        t.push_str(&format!("down-directed: {}\nup-directed: {}\nlattice: {}\n", p.down_directed, p.up_directed, p.lattice));
        t
    };
    Ok(Output::ok(text, json!({"classes": words, "poset": p})))
}

fn star(e: &Engine, cmd: &StarCommand) -> Result<Output> {
    match cmd {
        StarCommand::Classify { expr } => {
            let p = e.parse_position(expr)?;
            let built = e.is_star_built(p);
            let image = e.star_image(p).ok();
            let text = match image {
                Some(i) => format!("*-built: {built}\nimage: {}", if i == crate::star::StarImage::One { "1" } else { "a" }),
                None => format!("*-built: {built}"),
            };
            Ok(Output::ok(text, json!({"position": e.format_position(p), "star_built": built, "image": image})))
        }
        StarCommand::Enumerate { day, list } => {
            let all = e.enumerate_star_built(*day, DEFAULT_MAX_DAY)?;
            let counts: Vec<usize> = (1..=*day).map(|d| all.iter().filter(|&&p| e.birthday(p) == d).count()).collect();
            let mut text: String =
                counts.iter().enumerate().map(|(i, c)| format!("day {}: {c}\n", i + 1)).collect();
            let names: Vec<String> = all.iter().map(|&p| e.format_position(p)).collect();
            if *list {
                for n in &names {
                    text.push_str(&format!("{n}\n"));
                }
            }
            Ok(Output::ok(text, json!({"counts_by_day": counts, "positions": if *list { json!(names) } else { Value::Null }})))
        }
        StarCommand::Iso { generators, sum_bound } => {
            let gens = e.parse_list(generators)?;
            let check = e.star_iso_check(&gens, *sum_bound);
            let text = match &check {
                IsoCheck::Passes => format!("passes at sum bound {sum_bound}"),
                IsoCheck::Fails { condition, element, option, outcome } => format!(
                    "fails condition {condition}: {}{} has outcome {outcome}",
                    e.format_sum(element),
                    option.as_ref().map_or(String::new(), |o| format!(" -> {}", e.format_sum(o)))
                ),
            };
            Ok(Output::verdict(check.passes(), text, json!({"check": check})))
        }
        StarCommand::Sum { expr } => {
            let s = e.parse_expression(expr)?;
            let via = e.sum_outcome_via_star(s.components())?;
            let direct = e.misere_outcome(&s);
            Ok(Output::verdict(
                via == direct,
                format!("via monoid of *: {via}\ndirect: {direct}"),
                json!({"via_star": via, "direct": direct}),
            ))
        }
    }
}

fn heap(args: &HeapArgs) -> Result<Output> {
    let spec = SubtractionGameSpec::new(&args.left, &args.right, args.max_heap)?;
    let game = HeapGame::new(spec);
    let mut text = String::new();
    let mut json = serde_json::Map::new();
    json.insert("game".into(), json!(game.spec));
    let prefix = args.prefix.clone().unwrap_or_else(|| if args.periodicity || args.quotient { Vec::new() } else { vec![6] });
    if !prefix.is_empty() {
        if prefix.len() > args.max_heap as usize {
            return Err(Error::InvalidArgument(format!("prefix has {} coordinates but max_heap is {}", prefix.len(), args.max_heap)));
        }
        let table = game.outcome_table(&prefix)?;
        text.push_str(&table.render());
        json.insert("table".into(), json!(table.cells.iter().map(|(v, o)| json!({"vector": v, "outcome": o})).collect::<Vec<_>>()));
    }
    if args.periodicity {
        let bounds = PeriodicityBounds { max_u: args.max_u, ..PeriodicityBounds::default() };
        let rep = game.detect_periodicity(bounds);
        for c in &rep.coordinates {
            let line = match c.status {
                crate::heap::CoordinateStatus::Found => {
                    format!("h{}: R = {:?}, D = {:?} (u checked to {})\n", c.heap, c.pre_period, c.period, c.checked_u)
                }
                crate::heap::CoordinateStatus::NotFound => format!(
                    "h{}: NOT_FOUND{}\n",
                    c.heap,
                    c.diagonal.as_ref().map_or(String::new(), |d| format!(", diagonal shift {d:?}"))
                ),
            };
            text.push_str(&line);
        }
        text.push_str(&format!("candidate relations: {}\n", rep.candidate_relations.join(", ")));
        json.insert("periodicity".into(), json!(rep));
    }
    if args.quotient {
        let hq = game.heap_quotient(args.sum_bound, args.context_bound)?;
        text.push_str(&render_report(&hq.quotient.report));
        let syms = hq.quotient.symbols();
        let images: Vec<String> = (1..=args.max_heap as usize)
            .map(|n| {
                let mut c = vec![0; n];
                c[n - 1] = 1;
                let class = hq.class_of(&c).map_or("?".to_string(), |k| format_word(hq.quotient.representative(k), &syms));
                format!("h{n} -> {class}")
            })
            .collect();
        text.push_str(&format!("heaps: {}\n", images.join(", ")));
        json.insert("quotient".into(), json!(hq.quotient.report));
    }
    Ok(Output::ok(text, Value::Object(json)))
}

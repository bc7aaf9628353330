//! Command-line front end. `run` is the whole program minus process exit,
//! so tests drive it with in-memory writers.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::catalogue::{standard_catalogue, verify_catalogue};
use crate::error::FinringError;
use crate::expr::{eval_in, parse, ExprError};
use crate::ring::{set_order_cap, FiniteRing};
use crate::semidirect::{build_sdprod, enumerate_action_pairs};
use crate::star::{classify, star_report, PairWitness};
use crate::structure::{analyze, is_local};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "finring", version, about = "Finite rings, semidirect products and the section property")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest ring order any constructor may produce (also FINRING_CAP).
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<usize>,
    /// Read the expression(s) from a file, one per non-empty line.
    #[arg(long, global = true, value_name = "PATH")]
    pub seedfile: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, units, ideals, maximal ideals, subfields.
    Analyze { expr: Option<String> },
    /// Decide (★) and print the witness or the exhausted search space.
    Star { expr: Option<String> },
    /// Membership in classes (A) and (B).
    Classify { expr: Option<String> },
    /// Addition and multiplication tables.
    Cayley { expr: Option<String> },
    /// Enumerate every action pair of S on B.
    SearchActions { b: Option<String>, s: Option<String> },
    /// Run the catalogue verification matrix.
    VerifyPaper,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<FinringError> for Failure {
    fn from(e: FinringError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INPUT
        }
    }
}

fn apply_cap(cli: &Cli) -> Result<(), Failure> {
    if let Ok(v) = std::env::var("FINRING_CAP") {
        let n = v.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("FINRING_CAP={v:?} is not a number")))?;
        set_order_cap(n);
    }
    if let Some(n) = cli.cap {
        set_order_cap(n);
    }
    Ok(())
}

/// The expressions for a command: positional arguments, else the seed file.
fn sources(cli: &Cli, given: &[&Option<String>]) -> Result<(Vec<String>, PathBuf), Failure> {
    let positional: Vec<String> = given.iter().filter_map(|g| (*g).clone()).collect();
    match (&cli.seedfile, positional.is_empty()) {
        (Some(_), false) => Err(Failure::Usage("give expressions either inline or via --seedfile, not both".into())),
        (Some(path), true) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let lines: Vec<String> = text.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect();
            let base = path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
            Ok((lines, base))
        }
        (None, _) => Ok((positional, PathBuf::from("."))),
    }
}

fn ring_args(cli: &Cli, given: &[&Option<String>]) -> Result<Vec<FiniteRing>, Failure> {
    let (texts, base) = sources(cli, given)?;
    if texts.len() != given.len() {
        return Err(Failure::Usage(format!("expected {} expression(s), got {}", given.len(), texts.len())));
    }
    texts.iter().map(|t| Ok(eval_in(&parse(t).map_err(ExprError::from)?, &base)?)).collect()
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    apply_cap(cli)?;
    let mut text = String::new();
    let code = match &cli.command {
        Command::Analyze { expr } => {
            let r = ring_args(cli, &[expr])?.remove(0);
            let rep = analyze(&r)?;
            if cli.json {
                text = to_json(&rep);
            } else {
                let _ = writeln!(text, "ring: {}", rep.ring);
                let _ = writeln!(text, "order: {}", rep.order);
                let _ = writeln!(text, "commutative: {}", yes(rep.commutative));
                match r.one() {
                    Some(e) => {
                        let _ = writeln!(text, "unital: yes, 1 = {}", r.label(e));
                    }
                    None => text.push_str("unital: no\n"),
                }
                if let Some(n) = rep.unit_count {
                    let _ = writeln!(text, "units: {n}");
                }
                let _ = writeln!(text, "ideals: {}", rep.ideal_count);
                for m in &rep.maximal_ideals {
                    let _ = writeln!(text, "maximal ideal: {}", set(&r, m));
                }
                if let Some(l) = rep.local {
                    let _ = writeln!(text, "local: {}", yes(l));
                }
                for k in &rep.subfields {
                    let _ = writeln!(text, "subfield: {}", set(&r, k));
                }
            }
            EXIT_OK
        }
        Command::Star { expr } => {
            let r = ring_args(cli, &[expr])?.remove(0);
            let rep = star_report(&r)?;
            if cli.json {
                text = to_json(&rep);
            } else if rep.holds {
                let (m, k) = (rep.maximal_ideal.as_ref().unwrap(), rep.subfield.as_ref().unwrap());
                let _ = writeln!(text, "(★) holds: M = {}, κ = {}", set(&r, m), set(&r, k));
                let section = rep.section.as_ref().unwrap();
                let pairs: Vec<String> = section.iter().enumerate().map(|(c, &a)| format!("[{c}] -> {}", r.label(a))).collect();
                let _ = writeln!(text, "section: {}", pairs.join(", "));
            } else {
                let _ = writeln!(text, "(★) fails: {}", rep.reason.as_deref().unwrap_or("no witness"));
                let _ = writeln!(
                    text,
                    "searched: {} maximal ideal(s) × {} subfield(s)",
                    rep.maximal_ideals_checked, rep.subfields_checked
                );
            }
            if rep.holds {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Command::Classify { expr } => {
            let r = ring_args(cli, &[expr])?.remove(0);
            let c = classify(&r)?;
            if cli.json {
                text = to_json(&c.report(&r));
            } else {
                let describe = |w: &Option<PairWitness>| match w {
                    Some(w) => format!("yes (M = {}, κ = {})", set(&r, &w.maximal_ideal), set(&r, &w.subfield)),
                    None => "no".into(),
                };
                let _ = writeln!(text, "ring: {}", r.provenance());
                let _ = writeln!(text, "(★): {}", yes(c.star.is_some()));
                let _ = writeln!(text, "class (A): {}", describe(&c.class_a));
                let _ = writeln!(text, "class (B): {}", describe(&c.class_b));
                let _ = writeln!(text, "field: {}", yes(c.is_field));
                let _ = writeln!(text, "local: {}", yes(c.local));
            }
            EXIT_OK
        }
        Command::Cayley { expr } => {
            let r = ring_args(cli, &[expr])?.remove(0);
            if cli.json {
                let grid = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<String>> {
                    r.elements().map(|a| r.elements().map(|b| r.label(f(a, b)).to_string()).collect()).collect()
                };
                text = to_json(&json!({
                    "labels": r.labels(),
                    "add": grid(&|a, b| r.add(a, b)),
                    "mul": grid(&|a, b| r.mul(a, b)),
                }));
            } else {
                text = cayley_tables(&r);
            }
            EXIT_OK
        }
        Command::SearchActions { b, s } => {
            let mut rings = ring_args(cli, &[b, s])?;
            let s = rings.pop().unwrap();
            let b = rings.pop().unwrap();
            let pairs = enumerate_action_pairs(&b, &s)?;
            let mut rows = Vec::new();
            for spec in &pairs {
                let prod = if s.is_unital() { Some(build_sdprod(spec)?) } else { None };
                let local = match &prod {
                    Some(p) => is_local(p)?.is_some(),
                    None => false,
                };
                rows.push((spec, local));
            }
            if cli.json {
                let items: Vec<_> = rows
                    .iter()
                    .map(|(spec, local)| json!({"lambda": spec.lambda, "rho": spec.rho, "local": local}))
                    .collect();
                text = to_json(&json!({"B": b.provenance(), "S": s.provenance(), "count": pairs.len(), "pairs": items}));
            } else {
                let _ = writeln!(text, "{} action pair(s) of {} on {}", pairs.len(), s.provenance(), b.provenance());
                for (i, (spec, local)) in rows.iter().enumerate() {
                    let _ = writeln!(text, "pair {}: product {}", i + 1, if *local { "local" } else { "not local" });
                    for u in s.elements() {
                        let image = |m: &Vec<usize>| m.iter().map(|&x| b.label(x).to_string()).collect::<Vec<_>>().join(" ");
                        let _ = writeln!(text, "  λ({}) = [{}]  ρ({}) = [{}]", s.label(u), image(&spec.lambda[u]), s.label(u), image(&spec.rho[u]));
                    }
                }
            }
            EXIT_OK
        }
        Command::VerifyPaper => {
            if cli.seedfile.is_some() {
                return Err(Failure::Usage("verify-paper takes no expression".into()));
            }
            let rep = verify_catalogue(&standard_catalogue()?);
            text = if cli.json { rep.to_json() } else { rep.to_table() };
            if rep.all_pass() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    out.write_all(text.as_bytes()).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(code)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set(r: &FiniteRing, members: &[usize]) -> String {
    let labels: Vec<&str> = members.iter().map(|&a| r.label(a)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports always serialize")
}

fn table(r: &FiniteRing, symbol: &str, op: impl Fn(usize, usize) -> usize) -> String {
    let w = r.labels().iter().map(|l| l.chars().count()).max().unwrap_or(1).max(symbol.chars().count());
    let pad = |s: &str| format!("{s}{}", " ".repeat(w - s.chars().count()));
    let mut out = String::new();
    let header: Vec<String> = r.labels().iter().map(|l| pad(l)).collect();
    let _ = writeln!(out, "{} | {}", pad(symbol), header.join(" ").trim_end());
    let _ = writeln!(out, "{}-+-{}", "-".repeat(w), "-".repeat(header.join(" ").trim_end().chars().count()));
    for a in r.elements() {
        let cells: Vec<String> = r.elements().map(|b| pad(r.label(op(a, b)))).collect();
        let _ = writeln!(out, "{} | {}", pad(r.label(a)), cells.join(" ").trim_end());
    }
    out
}

/// Addition then multiplication table, row label × column label, rows and
/// columns in element order.
pub fn cayley_tables(r: &FiniteRing) -> String {
    format!("{}\n{}", table(r, "+", |a, b| r.add(a, b)), table(r, "*", |a, b| r.mul(a, b)))
}

/// Reads the `*` table back out of [`cayley_tables`] output as label rows.
pub fn parse_cayley_block(text: &str, symbol: &str) -> Option<(Vec<String>, Vec<Vec<String>>)> {
    let mut lines = text.lines().skip_while(|l| l.split(" | ").next().map(str::trim) != Some(symbol));
    let header = lines.next()?;
    let cols: Vec<String> = header.split_once(" | ")?.1.split_whitespace().map(String::from).collect();
    lines.next()?;
    let mut rows = Vec::new();
    for line in lines.take(cols.len()) {
        let (label, cells) = line.split_once(" | ")?;
        let mut row = vec![label.trim().to_string()];
        row.extend(cells.split_whitespace().map(String::from));
        rows.push(row);
    }
    Some((cols, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn star_on_zmod8_reports_missing_subfield() {
        let (code, out, _) = run_capture(&["finring", "star", "Zmod(8)"]);
        assert_eq!(code, EXIT_CHECK_FAILED);
        assert!(out.starts_with("(★) fails: no subfield exists"), "{out}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["finring", "frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["finring", "analyze", "Zmod(4"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["finring", "analyze", "Zmod(0)"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["finring", "analyze", "Zmod(4)"]).0, EXIT_OK);
        assert_eq!(run_capture(&["finring", "analyze"]).0, EXIT_USAGE);
    }

    #[test]
    fn cayley_layout() {
        let (code, out, _) = run_capture(&["finring", "cayley", "Zmod(2)"]);
        assert_eq!(code, 0);
        assert_eq!(out, "+ | 0 1\n--+----\n0 | 0 1\n1 | 1 0\n\n* | 0 1\n--+----\n0 | 0 0\n1 | 0 1\n");
        let (cols, rows) = parse_cayley_block(&out, "*").unwrap();
        assert_eq!(cols, vec!["0", "1"]);
        assert_eq!(rows, vec![vec!["0", "0", "0"], vec!["1", "0", "1"]]);
    }

    #[test]
    fn json_outputs_parse() {
        for cmd in ["analyze", "star", "classify", "cayley"] {
            let (_, out, _) = run_capture(&["finring", cmd, "GF(4)", "--json"]);
            serde_json::from_str::<serde_json::Value>(&out).unwrap();
        }
    }
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 internal failure or theorem mismatch,
//! 2 invalid configuration or input.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::abacus::{multicore, multiweight, MultiAbacus, DEFAULT_POSITIONS, DEFAULT_ROWS};
use crate::blocks::{blocks_by_jantzen_in, blocks_by_residue_in, verify_theorem_in, BlockPartition};
use crate::error::{Error, Result};
use crate::jantzen::{jantzen_bruteforce, jantzen_fast, JantzenContext, DEFAULT_SEED};
use crate::modulus::Modulus;
use crate::partition::Multipartition;
use crate::residue::{fayers_weight, hub, Regime};

#[derive(Parser, Debug)]
#[command(name = "hecke-blocks", version, about = "Blocks of cyclotomic Hecke and Schur algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the block partition of Λ⁺_{r,n}.
    Blocks {
        #[command(flatten)]
        regime: RegimeArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the Jantzen coefficient J_{λμ}.
    Jantzen {
        #[command(flatten)]
        regime: RegimeArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Also evaluate the defining sum and compare.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare Jantzen and residue blocks over a grid of regimes.
    Verify(VerifyArgs),
    /// Show the abacus display, cores and weights of a multipartition.
    Abacus {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        e: Modulus,
        /// One charge per component; zeros if omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        charges: Option<Vec<i64>>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RegimeArgs {
    /// 1-5, or "auto" to infer from e, p, r and --zero.
    #[arg(long, default_value = "auto")]
    pub case: String,
    #[arg(long)]
    pub e: Option<Modulus>,
    /// Characteristic: a prime or "inf". Defaults to e in cases 2-4 and to inf otherwise.
    #[arg(long)]
    pub p: Option<Modulus>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Case 1 multicharge; zeros if omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub charges: Option<Vec<i64>>,
    /// All parameters Q_a are zero (cases 4 and 5).
    #[arg(long)]
    pub zero: bool,
    /// With e = p = inf under --case auto: take q = 1.
    #[arg(long)]
    pub q_one: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for the sampled audit of the fast Jantzen path.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    pub r_max: usize,
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,inf")]
    pub e_list: Vec<Modulus>,
    #[arg(long, value_delimiter = ',', default_value = "2,3,inf")]
    pub p_list: Vec<Modulus>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
    pub cases: Vec<u8>,
    /// Also check that cases 3 and 4 give identical partitions.
    #[arg(long)]
    pub cross_check_34: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Failure modes, mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::AuditMismatch { .. } => Failure::Internal(e.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }
}

/// Result of a command: text for stdout and whether every check passed.
pub struct Outcome {
    pub stdout: String,
    pub ok: bool,
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

pub fn run(command: &Command) -> std::result::Result<Outcome, Failure> {
    match command {
        Command::Blocks { regime, n, output } => cmd_blocks(&regime.resolve(None)?, *n, output),
        Command::Jantzen {
            regime,
            lambda,
            mu,
            oracle,
            output,
        } => {
            let l = parse_multipartition(lambda)?;
            let m = parse_multipartition(mu)?;
            let reg = regime.resolve(Some(l.r()))?;
            cmd_jantzen(&reg, &l, &m, *oracle, output.format)
        }
        Command::Verify(args) => cmd_verify(args),
        Command::Abacus {
            lambda,
            e,
            charges,
            output,
        } => {
            let l = parse_multipartition(lambda)?;
            let charges = charges.clone().unwrap_or_else(|| vec![0; l.r()]);
            cmd_abacus(&l, *e, &charges, output.format)
        }
    }
}

fn parse_multipartition(s: &str) -> std::result::Result<Multipartition, Failure> {
    s.parse()
        .map_err(|e: Error| Failure::Config(format!("bad multipartition {s:?}: {e}")))
}

impl RegimeArgs {
    /// Builds the regime, naming the violated constraint on failure.
    /// `r` falls back to the charge count, then `fallback_r`, then 1;
    /// case 1 without charges takes them all zero.
    pub fn resolve(&self, fallback_r: Option<usize>) -> Result<Regime> {
        let r = self
            .r
            .or(self.charges.as_ref().map(Vec::len))
            .or(fallback_r)
            .unwrap_or(1);
        if self.case == "auto" {
            let e = self
                .e
                .ok_or_else(|| Error::Regime("--case auto requires --e".into()))?;
            let p = self.p.unwrap_or(Modulus::Infinite);
            let charges = Some(self.charges.clone().unwrap_or_else(|| vec![0; r]));
            return Regime::auto(e, p, r, self.zero, self.q_one, charges);
        }
        let case: u8 = self
            .case
            .parse()
            .map_err(|_| Error::Regime(format!("case must be 1-5 or auto, got {:?}", self.case)))?;
        let p = match (case, self.p, self.e) {
            (_, Some(p), _) => p,
            (2..=4, None, Some(e)) => e,
            (2..=4, None, None) => {
                return Err(Error::Regime(format!("case {case} requires --p")));
            }
            _ => Modulus::Infinite,
        };
        if self.zero && !matches!(case, 4 | 5) {
            return Err(Error::Regime(format!(
                "--zero describes cases 4 and 5, got case {case}"
            )));
        }
        let charges = match (case, &self.charges) {
            (1, None) => Some(vec![0; r]),
            _ => self.charges.clone(),
        };
        Regime::new(case, self.e, p, r, charges)
    }
}

fn classes_json(bp: &BlockPartition, ctx: &JantzenContext) -> Value {
    json!(bp.resolve(ctx.universe()))
}

pub fn cmd_blocks(regime: &Regime, n: usize, output: &OutputArgs) -> std::result::Result<Outcome, Failure> {
    let ctx = JantzenContext::new(regime.r(), n);
    let by_residue = blocks_by_residue_in(regime, ctx.universe())?;
    let by_jantzen = blocks_by_jantzen_in(regime, &ctx, output.seed)?;
    if by_residue != by_jantzen {
        return Err(Failure::Internal(format!(
            "Jantzen and residue blocks differ for {regime}, n={n}"
        )));
    }
    let stdout = match output.format {
        Format::Json => {
            let doc = json!({
                "regime": regime,
                "n": n,
                "classes": classes_json(&by_jantzen, &ctx),
            });
            format!("{doc}\n")
        }
        Format::Table => blocks_table(regime, n, &by_jantzen.resolve(ctx.universe())),
    };
    Ok(Outcome { stdout, ok: true })
}

fn multipartition_json(m: &Multipartition) -> String {
    serde_json::to_string(m).expect("serializable")
}

/// Table rendering of a block partition; parsed back by [`parse_blocks_table`].
pub fn blocks_table(regime: &Regime, n: usize, classes: &[Vec<Multipartition>]) -> String {
    let mut out = String::new();
    writeln!(out, "regime: {regime}").unwrap();
    writeln!(out, "n: {n}").unwrap();
    writeln!(out, "classes: {}", classes.len()).unwrap();
    for (k, class) in classes.iter().enumerate() {
        let members: Vec<String> = class.iter().map(multipartition_json).collect();
        writeln!(out, "{:>4}  {}", k + 1, members.join(" ")).unwrap();
    }
    out
}

/// Parses the output of [`blocks_table`] into `(regime line, n, classes)`.
pub fn parse_blocks_table(text: &str) -> Result<(String, usize, Vec<Vec<Multipartition>>)> {
    let bad = |what: &str| Error::Parse(format!("blocks table: {what}"));
    let mut lines = text.lines();
    let regime = lines
        .next()
        .and_then(|l| l.strip_prefix("regime: "))
        .ok_or_else(|| bad("missing regime line"))?
        .to_string();
    let n = lines
        .next()
        .and_then(|l| l.strip_prefix("n: "))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| bad("missing n line"))?;
    let count: usize = lines
        .next()
        .and_then(|l| l.strip_prefix("classes: "))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| bad("missing class count"))?;
    let mut classes = Vec::new();
    for line in lines {
        let (_, members) = line
            .trim_start()
            .split_once("  ")
            .ok_or_else(|| bad("malformed class line"))?;
        let class = members
            .split(' ')
            .map(|m| serde_json::from_str(m).map_err(|e| bad(&e.to_string())))
            .collect::<Result<Vec<Multipartition>>>()?;
        classes.push(class);
    }
    if classes.len() != count {
        return Err(bad("class count does not match"));
    }
    Ok((regime, n, classes))
}

pub fn cmd_jantzen(
    regime: &Regime,
    lambda: &Multipartition,
    mu: &Multipartition,
    oracle: bool,
    format: Format,
) -> std::result::Result<Outcome, Failure> {
    for m in [lambda, mu] {
        if m.r() != regime.r() {
            return Err(Failure::Config(format!(
                "multipartition {m} has {} components but the regime has r={}",
                m.r(),
                regime.r()
            )));
        }
    }
    let fast = jantzen_fast(lambda, mu, regime)?;
    let brute = if oracle {
        Some(jantzen_bruteforce(lambda, mu, regime)?)
    } else {
        None
    };
    let matches = brute.map(|b| b == fast);
    let stdout = match format {
        Format::Json => {
            let mut doc = json!({
                "regime": regime,
                "lambda": lambda,
                "mu": mu,
                "J": fast,
            });
            if let (Some(b), Some(m)) = (brute, matches) {
                doc["oracle"] = json!(b);
                doc["match"] = json!(m);
            }
            format!("{doc}\n")
        }
        Format::Table => {
            let mut out = format!("regime: {regime}\nlambda: {lambda}\nmu: {mu}\nJ: {fast}\n");
            if let (Some(b), Some(m)) = (brute, matches) {
                writeln!(out, "oracle: {b}\nmatch: {m}").unwrap();
            }
            out
        }
    };
    Ok(Outcome {
        stdout,
        ok: matches != Some(false),
    })
}

/// All valid regimes of the grid for a given `r`, in a fixed order.
pub fn grid_regimes(r: usize, cases: &[u8], e_list: &[Modulus], p_list: &[Modulus]) -> Vec<Regime> {
    let mut out = Vec::new();
    for &case in cases {
        for &e in e_list {
            for &p in p_list {
                match case {
                    1 => {
                        for charges in charge_grid(e, r) {
                            if let Ok(reg) = Regime::case1(e, p, charges) {
                                out.push(reg);
                            }
                        }
                    }
                    2..=4 if e == p => {
                        if let Ok(reg) = Regime::new(case, Some(e), p, r, None) {
                            out.push(reg);
                        }
                    }
                    5 => {
                        if let Ok(reg) = Regime::case5(e, p, r) {
                            out.push(reg);
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    out
}

/// Charges in `[0,e)^r`, or `[-2,2]^r` when `e = ∞`, lexicographically.
pub fn charge_grid(e: Modulus, r: usize) -> Vec<Vec<i64>> {
    let values: Vec<i64> = match e {
        Modulus::Finite(m) => (0..m as i64).collect(),
        Modulus::Infinite => (-2..=2).collect(),
    };
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

pub fn cmd_verify(args: &VerifyArgs) -> std::result::Result<Outcome, Failure> {
    if let Some(bad) = args.cases.iter().find(|c| !(1..=5).contains(*c)) {
        return Err(Failure::Config(format!("case must be 1-5, got {bad}")));
    }
    if let Some(bad) = args
        .p_list
        .iter()
        .find(|p| matches!(p, Modulus::Finite(m) if !crate::modulus::is_prime(*m)))
    {
        return Err(Failure::Config(format!("p must be prime or inf, got {bad}")));
    }
    let mut lines = Vec::new();
    let (mut cells, mut passed) = (0usize, 0usize);
    let mut cross = Vec::new();
    for r in 1..=args.r_max {
        let regimes = grid_regimes(r, &args.cases, &args.e_list, &args.p_list);
        for n in 1..=args.n_max {
            let ctx = JantzenContext::new(r, n);
            let mut by_case34: Vec<(u8, Modulus, BlockPartition)> = Vec::new();
            for reg in &regimes {
                let report = verify_theorem_in(reg, &ctx, args.output.seed)?;
                cells += 1;
                if report.equal {
                    passed += 1;
                }
                if matches!(reg.case(), 3 | 4) {
                    by_case34.push((reg.case(), reg.p(), report.by_jantzen.clone()));
                }
                lines.push(match args.output.format {
                    Format::Json => json!({
                        "regime": reg,
                        "n": n,
                        "classes": report.by_jantzen.len(),
                        "equal": report.equal,
                        "witness": report.witness,
                    })
                    .to_string(),
                    Format::Table => {
                        let mut line = format!(
                            "{reg} n={n} classes={} {}",
                            report.by_jantzen.len(),
                            if report.equal { "ok" } else { "MISMATCH" }
                        );
                        if let Some(w) = &report.witness {
                            write!(line, " witness={} vs {}", w.lambda, w.mu).unwrap();
                        }
                        line
                    }
                });
            }
            if args.cross_check_34 {
                for (case, p, bp) in by_case34.iter().filter(|(c, _, _)| *c == 3) {
                    if let Some((_, _, other)) = by_case34.iter().find(|(c, q, _)| *c == 4 && q == p) {
                        cross.push((*case, *p, r, n, bp == other));
                    }
                }
            }
        }
    }
    let cross_ok = cross.iter().all(|c| c.4);
    let ok = passed == cells && cross_ok;
    let mut stdout = String::new();
    match args.output.format {
        Format::Json => {
            stdout.push_str("{\"cells\":[\n");
            stdout.push_str(&lines.join(",\n"));
            stdout.push_str("\n],\n");
            if args.cross_check_34 {
                let items: Vec<Value> = cross
                    .iter()
                    .map(|(_, p, r, n, same)| json!({"p": p, "r": r, "n": n, "identical": same}))
                    .collect();
                writeln!(stdout, "\"cross_check_34\":{},", Value::Array(items)).unwrap();
            }
            writeln!(
                stdout,
                "\"summary\":{}}}",
                json!({"cells": cells, "passed": passed, "failed": cells - passed, "ok": ok})
            )
            .unwrap();
        }
        Format::Table => {
            for line in &lines {
                writeln!(stdout, "{line}").unwrap();
            }
            for (_, p, r, n, same) in &cross {
                writeln!(
                    stdout,
                    "cases 3/4 p={p} r={r} n={n} {}",
                    if *same { "identical" } else { "DIFFER" }
                )
                .unwrap();
            }
            writeln!(stdout, "cells={cells} passed={passed} failed={}", cells - passed).unwrap();
        }
    }
    Ok(Outcome { stdout, ok })
}

pub fn cmd_abacus(
    lambda: &Multipartition,
    e: Modulus,
    charges: &[i64],
    format: Format,
) -> std::result::Result<Outcome, Failure> {
    let display = MultiAbacus::new(lambda, charges, e)?;
    let core = multicore(lambda, charges, e);
    let weight = multiweight(lambda, e);
    let (wt, hub_value) = match e {
        Modulus::Finite(_) => {
            let reg = Regime::case1(e, Modulus::Infinite, charges.to_vec())?;
            (json!(fayers_weight(lambda, &reg)?), json!(hub(lambda, &reg)?))
        }
        Modulus::Infinite => (Value::Null, Value::Null),
    };
    let beta: Vec<Vec<i64>> = display
        .displays()
        .iter()
        .map(|d| d.beads_head(d.partition().len() + 2))
        .collect();
    let render = display.render_default();
    let window = match e {
        Modulus::Finite(_) => DEFAULT_ROWS,
        Modulus::Infinite => DEFAULT_POSITIONS,
    };
    let mut doc = json!({
        "e": e,
        "charges": charges,
        "lambda": lambda,
        "beta": beta,
        "core": core,
        "weight": weight,
        "Wt": wt,
        "hub": hub_value,
    });
    let stdout = match format {
        Format::Json => {
            doc["window"] = json!([window.0, window.1]);
            doc["ascii"] = json!(render);
            format!("{doc}\n")
        }
        Format::Table => format!("{render}\n{doc}\n"),
    };
    Ok(Outcome { stdout, ok: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regime_args(case: &str) -> RegimeArgs {
        RegimeArgs {
            case: case.into(),
            e: None,
            p: None,
            r: None,
            charges: None,
            zero: false,
            q_one: false,
        }
    }

    #[test]
    fn resolve_names_violated_constraint() {
        let mut a = regime_args("2");
        a.p = Some(Modulus::Finite(3));
        a.r = Some(2);
        let err = a.resolve(None).unwrap_err().to_string();
        assert!(err.contains("case 2 requires r=1"), "{err}");
        let mut b = regime_args("1");
        b.e = Some(Modulus::Finite(2));
        assert_eq!(b.resolve(Some(2)).unwrap().charges(), &[0, 0]);
        b.r = Some(3);
        b.charges = Some(vec![0, 1]);
        let err = b.resolve(None).unwrap_err().to_string();
        assert!(err.contains("case 1 requires exactly r=3 charges"), "{err}");
        let mut c = regime_args("3");
        c.e = Some(Modulus::Finite(3));
        c.r = Some(2);
        assert_eq!(c.resolve(None).unwrap().p(), Modulus::Finite(3));
        let mut d = regime_args("1");
        d.e = Some(Modulus::Finite(2));
        d.p = Some(Modulus::Finite(4));
        d.charges = Some(vec![0]);
        assert!(d.resolve(None).unwrap_err().to_string().contains("prime"));
    }

    #[test]
    fn charge_grid_shape() {
        assert_eq!(charge_grid(Modulus::Finite(2), 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(charge_grid(Modulus::Infinite, 1).len(), 5);
        assert_eq!(charge_grid(Modulus::Finite(3), 0), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn grid_respects_case_constraints() {
        let e = [Modulus::Finite(2), Modulus::Finite(3), Modulus::Finite(4), Modulus::Infinite];
        let p = [Modulus::Finite(2), Modulus::Finite(3), Modulus::Infinite];
        let r1 = grid_regimes(1, &[1, 2, 3, 4, 5], &e, &p);
        assert!(r1.iter().all(|r| matches!(r.case(), 1 | 2)));
        assert_eq!(r1.iter().filter(|r| r.case() == 2).count(), 3);
        assert_eq!(r1.iter().filter(|r| r.case() == 1).count(), 2 * 2 + 2 * 3 + 2 * 4 + 3 * 5);
        let r2 = grid_regimes(2, &[3, 4, 5], &e, &p);
        assert_eq!(r2.iter().filter(|r| r.case() == 3).count(), 3);
        assert_eq!(r2.iter().filter(|r| r.case() == 5).count(), 9);
    }

    #[test]
    fn table_round_trip() {
        let reg = Regime::case2(Modulus::Finite(3)).unwrap();
        let out = OutputArgs {
            format: Format::Table,
            seed: DEFAULT_SEED,
        };
        let table = cmd_blocks(&reg, 4, &out).unwrap().stdout;
        let (line, n, classes) = parse_blocks_table(&table).unwrap();
        assert_eq!(line, reg.to_string());
        assert_eq!(n, 4);
        let json_out = OutputArgs {
            format: Format::Json,
            seed: DEFAULT_SEED,
        };
        let doc: Value = serde_json::from_str(&cmd_blocks(&reg, 4, &json_out).unwrap().stdout).unwrap();
        let from_json: Vec<Vec<Multipartition>> = serde_json::from_value(doc["classes"].clone()).unwrap();
        assert_eq!(classes, from_json);
        assert_eq!(doc["n"], json!(4));
        assert_eq!(doc["regime"], json!({"case": 2, "e": 3, "p": 3, "r": 1}));
    }
}

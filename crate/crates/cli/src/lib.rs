//! Command-line front end. [`run`] takes an argument vector and returns the
//! exit code together with everything that would be written to stdout and
//! stderr, so the binary is a thin wrapper and tests can drive it directly.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 claim violation.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use weylsig::e8::{reproduce_e8, ReproductionReport};
use weylsig::signature::{DEFAULT_SOLUTION_CAP, EXHAUSTIVE_MAX_ROOTS};
use weylsig::weyl::DEFAULT_ORBIT_CAP;
use weylsig::{
    analyze, apply_word, length_census, orbit, poincare_polynomial, rho, verify_statement, AlgebraId, ClaimReport,
    Composition, Error, RootEntry, RootSystem, SignatureRecord, Strategy, VerifyOptions, Weight, WeylWord,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "weylsig", version, about = "Signatures of Weyl group elements from weights")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Compose {
    /// Rightmost letter acts first.
    Right,
    /// Leftmost letter acts first.
    Left,
}

impl From<Compose> for Composition {
    fn from(c: Compose) -> Self {
        match c {
            Compose::Right => Composition::Right,
            Compose::Left => Composition::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    #[value(name = "dfs_all", alias = "dfs-all")]
    DfsAll,
}

#[derive(Debug, Args)]
struct AlgebraArg {
    /// Algebra, e.g. A2, B3, E8.
    #[arg(long, short = 'a', value_parser = parse_algebra)]
    algebra: AlgebraId,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the positive roots in canonical order.
    Roots(AlgebraArg),
    /// Enumerate the Weyl orbit of a weight.
    Orbit {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Dominant weight as comma-separated labels, or `rho`.
        #[arg(long, default_value = "rho", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        max_orbit: usize,
    },
    /// Signature of μ = word(λ) or of an explicit μ.
    Signature {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value = "rho", allow_hyphen_values = true)]
        lambda: String,
        /// Comma-separated 1-based reflection indices.
        #[arg(long, conflicts_with = "mu", required_unless_present = "mu")]
        word: Option<String>,
        /// Orbit element as comma-separated labels.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, value_enum, default_value_t = Compose::Right)]
        compose: Compose,
        /// Maximum number of decompositions to count.
        #[arg(long, default_value_t = DEFAULT_SOLUTION_CAP)]
        cap: usize,
    },
    /// Check uniqueness and length agreement over an orbit.
    Verify {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value = "rho", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        max_orbit: usize,
        #[arg(long, default_value_t = DEFAULT_SOLUTION_CAP)]
        cap: usize,
    },
    /// Exponents, Poincaré polynomial and the orbit length census.
    Poincare {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Run the length census only when |W| is at most this.
        #[arg(long, default_value_t = 100_000)]
        census_limit: u64,
    },
    /// Reproduce the length-29 E8 example end to end.
    #[command(name = "reproduce-e8")]
    ReproduceE8 {
        #[arg(long, value_enum, default_value_t = Compose::Right)]
        compose: Compose,
        /// Replace the built-in word.
        #[arg(long)]
        word: Option<String>,
    },
}

fn parse_algebra(s: &str) -> Result<AlgebraId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, violation: bool) -> Self {
        Self {
            code: if violation { EXIT_VIOLATION } else { EXIT_OK },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: String) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsOutput {
    pub algebra: AlgebraId,
    pub count: usize,
    pub roots: Vec<RootEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitOutput {
    pub algebra: AlgebraId,
    pub seed: Weight,
    pub size: usize,
    pub elements: Vec<weylsig::weyl::OrbitElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareOutput {
    pub algebra: AlgebraId,
    pub positive_roots: usize,
    pub exponents: Vec<u32>,
    pub weyl_order: String,
    pub coefficients: Vec<u128>,
    pub top_degree: usize,
    pub census: Option<Vec<u64>>,
    pub census_matches: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproduceOutput {
    pub passed: bool,
    #[serde(flatten)]
    pub report: ReproductionReport,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text, false),
                _ => Outcome::usage(text),
            };
        }
    };
    match execute(cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

fn parse_weight(s: &str, algebra: AlgebraId) -> Result<Weight, Error> {
    let w = if s.trim().eq_ignore_ascii_case("rho") {
        rho(algebra)
    } else {
        s.parse()?
    };
    if w.rank() != algebra.rank() {
        return Err(Error::DimensionMismatch {
            expected: algebra.rank(),
            actual: w.rank(),
        });
    }
    Ok(w)
}

fn parse_word(s: &str, algebra: AlgebraId) -> Result<WeylWord, Error> {
    let word: WeylWord = s.parse()?;
    word.validate(algebra.rank())?;
    Ok(word)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn execute(cli: Cli) -> Result<Outcome, Error> {
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Roots(AlgebraArg { algebra }) => {
            let rs = RootSystem::generate(algebra);
            let out = RootsOutput {
                algebra,
                count: rs.len(),
                roots: rs.entries(),
            };
            let text = if json {
                to_json(&out)
            } else {
                let mut s = format!("# {algebra}: {} positive roots\n# index height coeffs\n", out.count);
                for r in &out.roots {
                    writeln!(s, "{}", r.to_line()).unwrap();
                }
                s
            };
            Ok(Outcome::ok(text, false))
        }
        Command::Orbit {
            algebra: AlgebraArg { algebra },
            lambda,
            max_orbit,
        } => {
            let seed = parse_weight(&lambda, algebra)?;
            let rs = RootSystem::generate(algebra);
            let o = orbit(&seed, rs.cartan(), max_orbit)?;
            let out = OrbitOutput {
                algebra,
                seed: o.seed().clone(),
                size: o.len(),
                elements: o.elements().to_vec(),
            };
            let text = if json {
                to_json(&out)
            } else {
                let mut s = format!("# orbit of {} in {algebra}: {} elements\n# length weight\n", out.seed, out.size);
                for e in &out.elements {
                    writeln!(s, "{} {}", e.length, e.weight).unwrap();
                }
                s
            };
            Ok(Outcome::ok(text, false))
        }
        Command::Signature {
            algebra: AlgebraArg { algebra },
            lambda,
            word,
            mu,
            compose,
            cap,
        } => {
            let rs = RootSystem::generate(algebra);
            let lambda = parse_weight(&lambda, algebra)?;
            let mu = match (word, mu) {
                (Some(word), _) => {
                    let word = parse_word(&word, algebra)?.normalized(compose.into());
                    apply_word(&word, &lambda, rs.cartan())?
                }
                (None, Some(mu)) => parse_weight(&mu, algebra)?,
                (None, None) => unreachable!("clap requires --word or --mu"),
            };
            let record = analyze(&lambda, &mu, &rs, cap)?;
            let text = if json { to_json(&record) } else { signature_text(&record) };
            Ok(Outcome::ok(text, !record.agree))
        }
        Command::Verify {
            algebra: AlgebraArg { algebra },
            lambda,
            strategy,
            max_orbit,
            cap,
        } => {
            let rs = RootSystem::generate(algebra);
            let seed = parse_weight(&lambda, algebra)?;
            let strategy = match strategy {
                StrategyArg::Exhaustive => Strategy::Exhaustive,
                StrategyArg::DfsAll => Strategy::DfsAll,
            };
            let report = verify_statement(
                &rs,
                &seed,
                VerifyOptions {
                    strategy,
                    orbit_cap: max_orbit,
                    solution_cap: cap,
                },
            )?;
            let text = if json { to_json(&report) } else { verify_text(&report) };
            Ok(Outcome::ok(text, !report.all_agree()))
        }
        Command::Poincare {
            algebra: AlgebraArg { algebra },
            census_limit,
        } => {
            let rs = RootSystem::generate(algebra);
            let coefficients = poincare_polynomial(&rs);
            let order = rs.weyl_order();
            let census = if order <= census_limit.into() {
                Some(length_census(&rs, DEFAULT_ORBIT_CAP)?)
            } else {
                None
            };
            let census_matches = census.as_ref().map(|c| {
                c.len() == coefficients.len() && c.iter().zip(&coefficients).all(|(&a, &b)| a as u128 == b)
            });
            let out = PoincareOutput {
                algebra,
                positive_roots: rs.len(),
                exponents: rs.exponents().0,
                weyl_order: order.to_string(),
                top_degree: coefficients.len() - 1,
                coefficients,
                census,
                census_matches,
            };
            let violation = out.top_degree != out.positive_roots || out.census_matches == Some(false);
            let text = if json { to_json(&out) } else { poincare_text(&out) };
            Ok(Outcome::ok(text, violation))
        }
        Command::ReproduceE8 { compose, word } => {
            let e8: AlgebraId = "E8".parse().expect("E8 is supported");
            let word = word.map(|w| parse_word(&w, e8)).transpose()?;
            let report = reproduce_e8(word.as_ref(), compose.into())?;
            let out = ReproduceOutput {
                passed: report.passed(),
                report,
            };
            let text = if json { to_json(&out) } else { reproduce_text(&out) };
            Ok(Outcome::ok(text, !out.passed))
        }
    }
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn signature_text(r: &SignatureRecord) -> String {
    let mut s = String::new();
    writeln!(s, "algebra        {}", r.algebra).unwrap();
    writeln!(s, "lambda         {}", r.lambda).unwrap();
    writeln!(s, "mu             {}", r.mu).unwrap();
    if let Some(g) = &r.gamma {
        writeln!(s, "gamma          {}", Weight::new(g.clone())).unwrap();
    }
    match (r.k, r.epsilon) {
        (Some(k), Some(e)) => {
            writeln!(s, "k              {k}").unwrap();
            writeln!(s, "epsilon        {e:+}").unwrap();
        }
        _ => writeln!(s, "k              none (no 0/1 decomposition)").unwrap(),
    }
    writeln!(s, "oracle length  {}", r.oracle_length).unwrap();
    writeln!(s, "solutions      {}", r.solution_count).unwrap();
    writeln!(s, "agree          {}", r.agree).unwrap();
    writeln!(s, "subset         {}", list(&r.subset_indices)).unwrap();
    for (i, e) in r.subset_indices.iter().zip(&r.subset_expansions) {
        writeln!(s, "  alpha_{i:<4} {}", Weight::new(e.clone())).unwrap();
    }
    s
}

fn verify_text(r: &ClaimReport) -> String {
    let mut s = format!(
        "{} seed {} strategy {}: {}/{} agree\n",
        r.algebra, r.seed, r.strategy, r.agree_count, r.orbit_size
    );
    if r.strategy == Strategy::Exhaustive {
        writeln!(s, "(exhaustive scan limit: {EXHAUSTIVE_MAX_ROOTS} positive roots)").unwrap();
    }
    for c in &r.counterexamples {
        writeln!(
            s,
            "counterexample mu={} gamma={} solutions={} k={} oracle_length={}",
            c.mu,
            c.gamma.as_ref().map_or("none".into(), |g| Weight::new(g.clone()).to_string()),
            c.solution_count,
            c.k.map_or("none".into(), |k| k.to_string()),
            c.oracle_length
        )
        .unwrap();
    }
    s
}

fn poincare_text(p: &PoincareOutput) -> String {
    let mut s = String::new();
    writeln!(s, "algebra         {}", p.algebra).unwrap();
    writeln!(s, "positive roots  {}", p.positive_roots).unwrap();
    let ex: Vec<String> = p.exponents.iter().map(u32::to_string).collect();
    writeln!(s, "exponents       {}", ex.join(",")).unwrap();
    writeln!(s, "|W|             {}", p.weyl_order).unwrap();
    writeln!(s, "top degree      {}", p.top_degree).unwrap();
    let co: Vec<String> = p.coefficients.iter().map(u128::to_string).collect();
    writeln!(s, "coefficients    {}", co.join(",")).unwrap();
    match (&p.census, p.census_matches) {
        (Some(c), Some(m)) => {
            let c: Vec<String> = c.iter().map(u64::to_string).collect();
            writeln!(s, "length census   {}", c.join(",")).unwrap();
            writeln!(s, "census matches  {m}").unwrap();
        }
        _ => writeln!(s, "length census   skipped (|W| above --census-limit)").unwrap(),
    }
    s
}

fn reproduce_text(out: &ReproduceOutput) -> String {
    let r = &out.report;
    let mut s = format!("word  {}\nmu    {}\n", r.word, r.mu);
    for c in &r.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        writeln!(s, "[{status}] {}", c.name).unwrap();
        if !c.passed {
            writeln!(s, "  expected: {}", c.expected).unwrap();
            writeln!(s, "  actual:   {}", c.actual).unwrap();
        }
    }
    writeln!(s, "{}", if out.passed { "all checks passed" } else { "reproduction FAILED" }).unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &str) -> Outcome {
        run(std::iter::once("weylsig").chain(args.split_whitespace()))
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args("").code, EXIT_USAGE);
        assert_eq!(run_args("roots").code, EXIT_USAGE);
        assert_eq!(run_args("roots --algebra H3").code, EXIT_USAGE);
        assert_eq!(run_args("roots --algebra A2 --bogus").code, EXIT_USAGE);
        assert_eq!(run_args("signature --algebra A2 --word 1,x").code, EXIT_USAGE);
        assert_eq!(run_args("signature --algebra A2 --word 1,3").code, EXIT_USAGE);
        assert_eq!(run_args("signature --algebra A2 --lambda 1,1,1 --word 1").code, EXIT_USAGE);
        assert_eq!(run_args("signature --algebra A2 --mu 2,1").code, EXIT_USAGE);
        assert_eq!(run_args("signature --algebra A2").code, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let out = run_args("--help");
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("reproduce-e8"));
    }

    #[test]
    fn roots_text() {
        let out = run_args("roots --algebra A2");
        assert_eq!(out.code, 0);
        assert!(out.stdout.ends_with("1 1 1 0\n2 1 0 1\n3 2 1 1\n"));
    }

    #[test]
    fn orbit_text() {
        let out = run_args("orbit --algebra A2 --lambda 1,0");
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("3 elements"));
    }

    #[test]
    fn signature_a2() {
        let out = run_args("signature --algebra A2 --word 1,2 --format json");
        assert_eq!(out.code, 0, "{}", out.stderr);
        let r: SignatureRecord = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(r.mu, Weight::new(vec![-2, 1]));
        assert_eq!((r.k, r.epsilon, r.oracle_length), (Some(2), Some(1), 2));
    }

    #[test]
    fn poincare_text_output() {
        let out = run_args("poincare --algebra B2");
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("coefficients    1,2,2,2,1"));
        assert!(out.stdout.contains("census matches  true"));
        let out = run_args("poincare --algebra E8");
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("skipped"));
        assert!(out.stdout.contains("top degree      120"));
    }
}

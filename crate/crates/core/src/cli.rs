//! Command-line front end. [`run`] does all the work so it can be tested
//! without spawning a process; `main` only forwards arguments and stdio.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};

use crate::deformation::StarContext;
use crate::error::AlgebraError;
use crate::frontend::{parse_poly, parse_weyl, print_poly, OutputRecord};
use crate::laguerre::{self, LaguerreSpec};
use crate::mathieu::{self, MembershipOracle, PowerKind, DEFAULT_DEGREE_CAP};
use crate::multi_index::MultiIndex;
use crate::poly::{Poly, Rat};
use crate::report::CheckReport;
use crate::weyl::WeylOp;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "star-algebra", version, about = "Exact star-product, symbol and Laguerre computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f ∗_t g
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Φ_t f = e^{tΛ} f, or its inverse
    Phi {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Star-Taylor coefficients a_α(z) of f
    Taylor {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Convert between operators and their left/right total symbols
    Symbol {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        dir: SymbolDir,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
    },
    /// Apply an operator in z, d to a polynomial in z
    Apply {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Multivariate Laguerre polynomial L_α^[k]
    Laguerre {
        #[arg(long)]
        n: usize,
        /// comma-separated multi-index
        #[arg(long)]
        alpha: String,
        /// comma-separated multi-index
        #[arg(long)]
        k: String,
        #[arg(long, value_enum, default_value_t = Via::Explicit)]
        via: Via,
    },
    /// Run a verification suite; exits 1 if any case fails
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        degmax: u32,
        #[arg(long, default_value_t = 8)]
        mmax: u32,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        /// series truncation order
        #[arg(long = "order", default_value_t = 8)]
        order: u32,
        /// t for the oracle suite; all of 0, 1, -1, 2/3 when omitted
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// print every case, not just failures and the summary
        #[arg(long)]
        verbose: bool,
    },
    /// Power-closure experiment: membership of f^m and b·f^m for m ≤ mmax
    Mathieu {
        #[arg(long, value_enum)]
        oracle: OracleChoice,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        /// comma-separated multi-index (laguerre oracle)
        #[arg(long)]
        k: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        b: String,
        #[arg(long, default_value_t = 8)]
        mmax: u32,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: i64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SymbolDir {
    /// operator → left symbol
    Left,
    /// operator → right symbol
    Right,
    /// left symbol → right symbol
    L2r,
    /// right symbol → left symbol
    R2l,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Via {
    Explicit,
    Star,
    Genfun,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Ortho,
    Recur,
    Ode,
    Genfun,
    Starexp,
    Even,
    Interchange,
    Oracles,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleChoice {
    Image,
    Laguerre,
}

/// Captured result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Algebra(AlgebraError),
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Algebra(e)
    }
}

type CmdResult = std::result::Result<(i32, String), Failure>;

/// Resolves `-` to the contents of stdin (read at most once).
struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    cached: Option<String>,
}

impl Inputs<'_> {
    fn text(&mut self, arg: &str) -> std::result::Result<String, Failure> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.cached.is_none() {
            let mut buf = String::new();
            self.stdin
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
            self.cached = Some(buf.trim().to_string());
        }
        Ok(self.cached.clone().unwrap_or_default())
    }

    fn poly(&mut self, arg: &str, n: usize, what: &str) -> std::result::Result<Poly, Failure> {
        let text = self.text(arg)?;
        parse_poly(&text, n).map_err(|e| Failure::Usage(format!("--{what}: {e}")))
    }

    fn weyl(&mut self, arg: &str, n: usize, what: &str) -> std::result::Result<WeylOp, Failure> {
        let text = self.text(arg)?;
        parse_weyl(&text, n).map_err(|e| Failure::Usage(format!("--{what}: {e}")))
    }
}

fn parse_rat(text: &str, what: &str) -> std::result::Result<Rat, Failure> {
    text.trim()
        .parse::<Rat>()
        .map_err(|_| Failure::Usage(format!("--{what}: expected a rational number like 2/3, got '{text}'")))
}

fn parse_index(text: &str, n: usize, what: &str) -> std::result::Result<MultiIndex, Failure> {
    let entries: std::result::Result<Vec<u32>, _> = text.split(',').map(|s| s.trim().parse::<u32>()).collect();
    let entries =
        entries.map_err(|_| Failure::Usage(format!("--{what}: expected comma-separated non-negative integers")))?;
    if entries.len() != n {
        return Err(Failure::Usage(format!("--{what}: expected {n} entries, got {}", entries.len())));
    }
    Ok(MultiIndex::new(entries))
}

fn ctx(n: usize, t: &str) -> std::result::Result<StarContext, Failure> {
    Ok(StarContext::new(n, parse_rat(t, "t")?)?)
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut inputs = Inputs { stdin, cached: None };
    match dispatch(cli.command, &mut inputs) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Algebra(e)) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn line(s: String) -> (i32, String) {
    (EXIT_OK, s + "\n")
}

fn dispatch(command: Command, inputs: &mut Inputs) -> CmdResult {
    match command {
        Command::Star { n, t, f, g } => {
            let c = ctx(n, &t)?;
            let f = inputs.poly(&f, n, "f")?;
            let g = inputs.poly(&g, n, "g")?;
            Ok(line(print_poly(&c.star(&f, &g)?)))
        }
        Command::Phi { n, t, f, inverse } => {
            let c = ctx(n, &t)?;
            let f = inputs.poly(&f, n, "f")?;
            let out = if inverse { c.phi_inverse(&f)? } else { c.phi(&f)? };
            Ok(line(print_poly(&out)))
        }
        Command::Taylor { n, t, f } => {
            let c = ctx(n, &t)?;
            let f = inputs.poly(&f, n, "f")?;
            let expansion = c.star_taylor(&f)?;
            let mut out = String::new();
            for (alpha, a) in expansion.coefficients() {
                let idx: Vec<String> = alpha.entries().iter().map(u32::to_string).collect();
                out.push_str(&format!("alpha={}\t{}\n", idx.join(","), print_poly(a)));
            }
            if out.is_empty() {
                out.push_str("0\n");
            }
            Ok((EXIT_OK, out))
        }
        Command::Symbol { n, dir, input } => {
            let out = match dir {
                SymbolDir::Left => inputs.weyl(&input, n, "input")?.left_symbol(),
                SymbolDir::Right => inputs.weyl(&input, n, "input")?.right_symbol(),
                SymbolDir::L2r => WeylOp::from_left_symbol(&inputs.poly(&input, n, "input")?).right_symbol(),
                SymbolDir::R2l => WeylOp::from_right_symbol(&inputs.poly(&input, n, "input")?).left_symbol(),
            };
            Ok(line(print_poly(&out)))
        }
        Command::Apply { n, op, poly } => {
            let op = inputs.weyl(&op, n, "op")?;
            let p = crate::poly::ZPoly::new(inputs.poly(&poly, n, "poly")?)
                .map_err(|_| Failure::Usage("--poly: operators act on polynomials in z only".into()))?;
            Ok(line(print_poly(op.apply(&p)?.as_poly())))
        }
        Command::Laguerre { n, alpha, k, via } => {
            let spec = LaguerreSpec::new(parse_index(&alpha, n, "alpha")?, parse_index(&k, n, "k")?)?;
            let out = match via {
                Via::Explicit => laguerre::laguerre(&spec),
                Via::Star => laguerre::laguerre_from_star_at_one(&spec)?,
                Via::Genfun => laguerre::laguerre_from_genfun(&spec),
            };
            Ok(line(print_poly(&out)))
        }
        Command::Check { suite, n, degmax, mmax, kmax, order, t, samples, seed, verbose } => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let reports = run_suite(suite, n, degmax, mmax, kmax, order, t.as_deref(), samples, seed)?;
            Ok(render_reports(&reports, verbose))
        }
        Command::Mathieu { oracle, n, t, k, f, b, mmax, degree_cap } => {
            let oracle = match oracle {
                OracleChoice::Image => {
                    let t = t.ok_or_else(|| Failure::Usage("--t is required with --oracle image".into()))?;
                    MembershipOracle::ImageEt { t: parse_rat(&t, "t")? }
                }
                OracleChoice::Laguerre => {
                    let k = k.ok_or_else(|| Failure::Usage("--k is required with --oracle laguerre".into()))?;
                    MembershipOracle::LaguerreSpan { k: parse_index(&k, n, "k")? }
                }
            };
            let kind = match oracle {
                MembershipOracle::LaguerreSpan { .. } => PowerKind::Ordinary,
                _ => PowerKind::Star,
            };
            let f = inputs.poly(&f, n, "f")?;
            let b = inputs.poly(&b, n, "b")?;
            let report = mathieu::power_experiment(&oracle, &f, &b, mmax, kind, degree_cap)?;
            Ok(render_experiment(&report))
        }
    }
}

fn member(flag: bool) -> &'static str {
    if flag {
        "member"
    } else {
        "non-member"
    }
}

/// One record per exponent, then a summary record.
pub fn render_experiment(report: &mathieu::ExperimentReport) -> (i32, String) {
    let mut out = String::new();
    let (pkey, pval) = report.oracle.parameter().split_once('=').map(|(a, b)| (a.to_string(), b.to_string())).unwrap();
    for v in &report.verdicts {
        let rec = OutputRecord::new("mathieu")
            .param("oracle", report.oracle.name())
            .param(&pkey, &pval)
            .param("m", v.m)
            .param("power", member(v.power_member))
            .verdict(member(v.product_member))
            .payload(print_poly(&v.power));
        out.push_str(&rec.to_string());
        out.push('\n');
    }
    let stable = report.first_stable_n.map_or_else(|| "none".to_string(), |m| m.to_string());
    let (verdict, payload, code) = match &report.aborted {
        Some(e) => ("aborted", e.to_string(), EXIT_CHECK_FAILED),
        None => (
            if report.all_powers_member() && report.all_products_member() { "all-member" } else { "mixed" },
            String::new(),
            EXIT_OK,
        ),
    };
    let summary = OutputRecord::new("mathieu-summary")
        .param("oracle", report.oracle.name())
        .param(&pkey, &pval)
        .param("f", print_poly(&report.f))
        .param("b", print_poly(&report.b))
        .param("mmax", report.mmax)
        .param("first_stable_N", stable)
        .verdict(verdict)
        .payload(payload);
    out.push_str(&summary.to_string());
    out.push('\n');
    (code, out)
}

fn render_reports(reports: &[CheckReport], verbose: bool) -> (i32, String) {
    let mut out = String::new();
    let mut ok = true;
    for report in reports {
        for case in &report.cases {
            if verbose || !case.passed {
                let rec = OutputRecord::new("check")
                    .param("suite", &report.suite)
                    .param("case", &case.label)
                    .verdict(if case.passed { "pass" } else { "fail" })
                    .payload(case.detail.clone().unwrap_or_default());
                out.push_str(&rec.to_string());
                out.push('\n');
            }
        }
        ok &= report.passed();
        let rec = OutputRecord::new("check-summary")
            .param("suite", &report.suite)
            .param("cases", report.len())
            .param("failures", report.failures())
            .verdict(if report.passed() { "pass" } else { "fail" });
        out.push_str(&rec.to_string());
        out.push('\n');
    }
    (if ok { EXIT_OK } else { EXIT_CHECK_FAILED }, out)
}

/// Every `k` in `ℕⁿ` with `|k| ≤ kmax`.
fn ks(n: usize, kmax: u32) -> Vec<MultiIndex> {
    MultiIndex::up_to_total(n, kmax)
}

#[allow(clippy::too_many_arguments)]
fn run_suite(
    suite: Suite,
    n: usize,
    degmax: u32,
    mmax: u32,
    kmax: u32,
    order: u32,
    t: Option<&str>,
    samples: usize,
    seed: u64,
) -> std::result::Result<Vec<CheckReport>, Failure> {
    let mut reports = Vec::new();
    match suite {
        Suite::Ortho => {
            for k in ks(n, kmax) {
                reports.push(laguerre::orthogonality_check(&k, degmax)?);
            }
        }
        Suite::Recur => {
            reports.push(laguerre::recurrence_check(mmax.max(1))?);
            reports.push(laguerre::rodrigues_check(mmax));
        }
        Suite::Ode => reports.push(laguerre::ode_check(mmax, kmax)),
        Suite::Genfun => {
            for k in 0..=kmax {
                reports.push(laguerre::generating_check(k, order as usize));
            }
        }
        Suite::Starexp => {
            for k in ks(n, kmax) {
                reports.push(laguerre::star_exp_check(&k, order)?);
            }
        }
        Suite::Even => {
            let mut report = CheckReport::new(format!("even n={n} degmax={degmax}"));
            let basis = MultiIndex::up_to_total(n, degmax);
            for alpha in &basis {
                for beta in &basis {
                    report.record(format!("alpha={alpha} beta={beta}"), laguerre::even_identity_check(alpha, beta)?);
                }
            }
            reports.push(report);
        }
        Suite::Interchange => reports.push(crate::weyl::interchange_check(n, degmax)?),
        Suite::Oracles => {
            let ts: Vec<Rat> = match t {
                Some(t) => vec![parse_rat(t, "t")?],
                None => ["0", "1", "-1", "2/3"].iter().map(|s| s.parse().expect("literal")).collect(),
            };
            for t in ts {
                reports.push(mathieu::oracle_equivalence_scan(&t, n, degmax, samples, seed)?);
            }
        }
    }
    Ok(reports)
}

//! Command line front end. Every subcommand produces one [`Report`] as JSON.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::albert::AlbertAlgebra;
use crate::descent::{check_brown, check_quatconst, e7_real_table, quatconst_build, symplem_verify, SymplemParams};
use crate::error::{AlgebraError, Result};
use crate::fts::classify::ms_structured_witness;
use crate::fts::{build_albert, build_ms_formal, build_ms_standard, check_axioms, classify, ms_diagnostics, TripleSystem, Verdict};
use crate::gift::axioms::{pi_rank, printed_sign_audit, sym_skew_dims};
use crate::gift::{check_gift_axioms, derivation_suite, end_of, ideal_predicates, Gift, RightIdeal};
use crate::matrix::basis_vector;
use crate::report::{CheckRecord, CheckReport, Evidence, Report, Status};
use crate::sampling::Budget;
use crate::scalar::Scalar;

#[derive(Debug, Parser)]
#[command(name = "freudenthal", version, about = "Exact checks for triple systems, gifts and real forms of E7")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunConfig,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random rational samples per identity.
    #[arg(long, global = true, default_value_t = 100, value_parser = at_least_one)]
    pub samples: usize,
    /// Random 62-bit primes for modular checks.
    #[arg(long, global = true, default_value_t = 3, value_parser = at_least_one)]
    pub primes: usize,
    /// Also run the exhaustive multilinear checks modulo the primes.
    #[arg(long, global = true)]
    pub exhaustive: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn budget(&self) -> Budget {
        Budget::new(self.seed, self.samples, self.primes, self.exhaustive)
    }
}

fn at_least_one(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Ms,
    AlbertSplit,
    AlbertDivision,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Dimension of `W` for `--kind ms`. Must be even; 27 selects the formal
    /// system with a degenerate skew form.
    #[arg(long, default_value_t = 26)]
    pub w_dim: usize,
}

#[derive(Debug, Clone, Args)]
pub struct QuaternionArgs {
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    pub a: Scalar,
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    pub b: Scalar,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Triple systems: construction, axioms and the trace criterion.
    #[command(subcommand)]
    Fts(FtsCommand),
    /// Gifts `End(𝔐)`: axioms, the rank of π and right ideals.
    #[command(subcommand)]
    Gift(GiftCommand),
    /// The gift descended along a quaternion algebra `(a, b)`.
    #[command(subcommand)]
    Descent(DescentCommand),
    /// The hermitian descent lemma on random diagonal data.
    #[command(subcommand)]
    Symplem(SymplemCommand),
    /// Witt indices of the real forms of E7.
    RealTable,
}

#[derive(Debug, Subcommand)]
pub enum FtsCommand {
    Build(SystemArgs),
    Check(SystemArgs),
    Classify(SystemArgs),
}

#[derive(Debug, Subcommand)]
pub enum GiftCommand {
    Check(SystemArgs),
    RankPi(SystemArgs),
    Ideals(SystemArgs),
}

#[derive(Debug, Subcommand)]
pub enum DescentCommand {
    Build(QuaternionArgs),
    Check(QuaternionArgs),
}

#[derive(Debug, Subcommand)]
pub enum SymplemCommand {
    Verify {
        #[command(flatten)]
        quaternion: QuaternionArgs,
        /// Number of diagonal blocks.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

impl Command {
    pub fn name(&self) -> String {
        let kind = |s: &SystemArgs| match s.kind {
            Kind::Ms => format!("ms --w-dim {}", s.w_dim),
            Kind::AlbertSplit => "albert-split".into(),
            Kind::AlbertDivision => "albert-division".into(),
        };
        let quat = |q: &QuaternionArgs| format!("--a {} --b {}", q.a, q.b);
        match self {
            Command::Fts(FtsCommand::Build(s)) => format!("fts build --kind {}", kind(s)),
            Command::Fts(FtsCommand::Check(s)) => format!("fts check --kind {}", kind(s)),
            Command::Fts(FtsCommand::Classify(s)) => format!("fts classify --kind {}", kind(s)),
            Command::Gift(GiftCommand::Check(s)) => format!("gift check --kind {}", kind(s)),
            Command::Gift(GiftCommand::RankPi(s)) => format!("gift rank-pi --kind {}", kind(s)),
            Command::Gift(GiftCommand::Ideals(s)) => format!("gift ideals --kind {}", kind(s)),
            Command::Descent(DescentCommand::Build(q)) => format!("descent build {}", quat(q)),
            Command::Descent(DescentCommand::Check(q)) => format!("descent check {}", quat(q)),
            Command::Symplem(SymplemCommand::Verify { quaternion, n }) => {
                format!("symplem verify {} --n {n}", quat(quaternion))
            }
            Command::RealTable => "real-table".into(),
        }
    }
}

pub fn build_system(args: &SystemArgs) -> Result<TripleSystem> {
    match args.kind {
        Kind::Ms if args.w_dim == 27 => Ok(build_ms_formal()),
        Kind::Ms if args.w_dim % 2 == 1 || args.w_dim == 0 => {
            Err(AlgebraError::InvalidParameter(format!("--w-dim must be even and positive, got {}", args.w_dim)))
        }
        Kind::Ms => build_ms_standard(args.w_dim),
        Kind::AlbertSplit => build_albert(&AlbertAlgebra::split()),
        Kind::AlbertDivision => build_albert(&AlbertAlgebra::division()),
    }
}

fn system_data(ts: &TripleSystem) -> Value {
    json!({
        "dim": ts.dim(),
        "provenance": ts.provenance(),
        "b_nondegenerate": ts.is_b_nondegenerate(),
        "tensor_entries": ts.tensor().len(),
    })
}

fn gift_of(args: &SystemArgs) -> Result<(TripleSystem, Gift<Scalar>)> {
    let ts = build_system(args)?;
    let g = end_of(&ts)?;
    Ok((ts, g))
}

/// Coordinate ideals `Hom(V, U)` with `U` spanned by basis vectors.
fn coordinate_ideals(n: usize) -> Vec<(String, Vec<usize>)> {
    let half = n / 2;
    vec![
        ("<e_0>".into(), vec![0]),
        (format!("<e_{}>", n - 1), vec![n - 1]),
        (format!("<e_0, e_{}>", n - 1), vec![0, n - 1]),
        (format!("<e_0..e_{}>", half - 1), (0..half).collect()),
    ]
}

fn run_command(cmd: &Command, budget: &Budget) -> Result<(CheckReport, Value)> {
    match cmd {
        Command::Fts(FtsCommand::Build(s)) => {
            let ts = build_system(s)?;
            let mut report = CheckReport::default();
            let rec = if ts.is_b_nondegenerate() {
                CheckRecord::pass("b nondegenerate", Evidence::exact_exhaustive())
            } else {
                CheckRecord::inconclusive("b nondegenerate", Evidence::exact_exhaustive(), "skew form has a radical")
            };
            report.push(rec);
            Ok((report, system_data(&ts)))
        }
        Command::Fts(FtsCommand::Check(s)) => {
            let ts = build_system(s)?;
            Ok((check_axioms(&ts, budget), system_data(&ts)))
        }
        Command::Fts(FtsCommand::Classify(s)) => {
            let ts = build_system(s)?;
            let c = classify(&ts, budget);
            let mut report = CheckReport::default();
            let mut data = json!({ "system": system_data(&ts), "classification": c });
            let mut rec = CheckRecord::pass("classify", c.evidence.clone()).with_detail(json!({
                "verdict": c.verdict,
                "source": c.source,
            }));
            if let Some(w) = &c.witness {
                rec = rec.with_witness(w.clone());
            }
            report.push(rec);
            if let Some((w_dim, _)) = ts.provenance().ms() {
                let (x, y) = ms_structured_witness(w_dim);
                let d = ms_diagnostics(&ts, &x, &y)?;
                let name = "trace expansion at structured pair";
                report.push(if d.trform_check {
                    CheckRecord::pass(name, Evidence::samples(1))
                } else {
                    CheckRecord::fail(name, json!({ "trace": d.trace, "expansion": d.expansion }), Evidence::samples(1))
                });
                data["diagnostics"] = serde_json::to_value(&d).expect("serializable");
            }
            if c.verdict == Verdict::Nondegenerate {
                data["nondegenerate"] = json!(true);
            }
            Ok((report, data))
        }
        Command::Gift(GiftCommand::Check(s)) => {
            let (ts, g) = gift_of(s)?;
            let report = check_gift_axioms(&g, budget);
            let audit = printed_sign_audit(&g, budget);
            Ok((report, json!({ "system": system_data(&ts), "printed_sign_audit": audit.checks })))
        }
        Command::Gift(GiftCommand::RankPi(s)) => {
            let (ts, g) = gift_of(s)?;
            let d = derivation_suite(&g, budget);
            let (sym, skew) = sym_skew_dims(&g);
            let mut report = CheckReport::default();
            report.push(d.gd);
            let rank = pi_rank(&g, &budget.prime_list());
            let rank_rec = if rank.per_prime.is_empty() {
                CheckRecord::inconclusive("pi rank", Evidence::default(), "every prime divided a denominator")
            } else {
                CheckRecord::pass("pi rank", Evidence::modular(rank.per_prime.iter().map(|(p, _)| *p).collect()))
                    .with_detail(json!({ "rank": rank.rank }))
            };
            report.push(rank_rec);
            Ok((report, json!({ "system": system_data(&ts), "pi_rank": rank, "sym_dim": sym, "skew_dim": skew })))
        }
        Command::Gift(GiftCommand::Ideals(s)) => {
            let (ts, g) = gift_of(s)?;
            let n = g.degree();
            let mut report = CheckReport::default();
            let mut rows = Vec::new();
            for (label, coords) in coordinate_ideals(n) {
                let vectors: Vec<Vec<Scalar>> = coords.iter().map(|&i| basis_vector(n, i)).collect();
                let ideal = RightIdeal::hom_onto(&g, &vectors)?;
                let p = ideal_predicates(&g, &ideal);
                let name = format!("ideal {label}: singular or inner implies isotropic");
                report.push(if !(p.singular || p.inner) || p.isotropic {
                    CheckRecord::pass(name, Evidence::exact_exhaustive())
                } else {
                    CheckRecord::fail(name, json!(label), Evidence::exact_exhaustive())
                });
                rows.push(json!({ "ideal": label, "predicates": p }));
            }
            Ok((report, json!({ "system": system_data(&ts), "ideals": rows })))
        }
        Command::Descent(DescentCommand::Build(q)) => {
            let qc = quatconst_build(q.a.clone(), q.b.clone())?;
            let mut report = CheckReport::default();
            let dim = qc.fixed_dimension();
            let rank = qc.basis_rank();
            let name = "fixed dimension";
            report.push(if dim == rank {
                CheckRecord::pass(name, Evidence::exact_exhaustive()).with_detail(json!({ "f_dimension": dim }))
            } else {
                CheckRecord::fail(name, json!({ "f_dimension": dim, "basis_rank": rank }), Evidence::exact_exhaustive())
            });
            let h = qc.hermitian_form()?;
            Ok((report, json!({ "f_dimension": dim, "basis_len": qc.basis().len(), "hermitian_form": h })))
        }
        Command::Descent(DescentCommand::Check(q)) => {
            let qc = quatconst_build(q.a.clone(), q.b.clone())?;
            let mut report = check_quatconst(&qc, budget)?;
            report.extend(check_gift_axioms(&qc.gift, budget));
            report.extend(check_brown(&AlbertAlgebra::split(), &q.a, budget)?);
            Ok((report, json!({ "f_dimension": qc.fixed_dimension() })))
        }
        Command::Symplem(SymplemCommand::Verify { quaternion, n }) => {
            let mut rng = budget.rng("symplem");
            let params = SymplemParams::random(&mut rng, quaternion.a.clone(), quaternion.b.clone(), *n)?;
            let out = symplem_verify(&params)?;
            Ok((out.checks, json!({ "params": out.params, "hermitian": out.hermitian })))
        }
        Command::RealTable => {
            let rows = e7_real_table()?;
            let mut report = CheckReport::default();
            for r in &rows {
                report.push(
                    CheckRecord::pass(format!("{} over {}", r.albert, r.quaternion), Evidence::exact_exhaustive())
                        .with_detail(json!({ "witt_index": r.witt_index, "tits_index": r.tits_index })),
                );
            }
            Ok((report, json!({ "rows": rows })))
        }
    }
}

/// Runs one parsed invocation and returns its report.
pub fn execute(cli: &Cli) -> Result<Report> {
    let budget = cli.run.budget();
    let start = Instant::now();
    let (checks, data) = run_command(&cli.command, &budget)?;
    Ok(Report::new(cli.command.name(), budget, checks, data, start.elapsed().as_millis()))
}

fn summarize(report: &Report) -> String {
    let count = |s: Status| report.checks.iter().filter(|c| c.status == s).count();
    let mut line = format!(
        "{}: {:?} ({} pass, {} fail, {} inconclusive, {} ms)",
        report.command,
        report.status,
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Inconclusive),
        report.elapsed_ms
    );
    for c in report.checks.iter().filter(|c| c.status != Status::Pass) {
        line.push_str(&format!("\n  {:?}: {}", c.status, c.name));
    }
    line
}

/// Parses `args`, runs the command and writes the report. Returns the
/// process exit code: 0 pass or inconclusive, 1 check failure, 2 usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    let written = match &cli.run.out {
        Some(path) => std::fs::write(path, json + "\n"),
        None => writeln!(std::io::stdout(), "{json}"),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return 2;
    }
    eprintln!("{}", summarize(&report));
    report.exit_code()
}

//! Command-line front end. [`execute`] does all the work and returns the exit
//! code with the text for each stream, so tests can drive it in-process.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::chevalley::{build_chevalley, ChevalleyAlgebra};
use crate::formalconn::connection_from_json;
use crate::report::{CheckRecord, Config, Report, Skipped};
use crate::rootdata::{build_root_system, CartanType, RootSystem, SUPPORTED_TYPES};
use crate::suites;

#[derive(Parser, Debug)]
#[command(
    name = "lie-cert",
    version,
    about = "Exact certificates for root-system and formal-connection statements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Group type such as E6; repeat or comma-separate for several. Defaults to every supported type.
    #[arg(long = "type", global = true, value_delimiter = ',')]
    pub types: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Emit::Json)]
    pub emit: Emit,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest Weyl group order that may be enumerated.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub budget: u64,
    /// Denominator bound D for alcove scans; defaults to 2h times the lcm of the marks.
    #[arg(long, global = true)]
    pub denominator_bound: Option<u64>,
    /// Random Jordan forms per type in the inequality-chain suite.
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,
    /// Accept E7 and E8.
    #[arg(long, global = true)]
    pub allow_large: bool,
    /// Record wall-clock time per check (makes the report nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Eigenspace lower bound for N(x) over all Weyl eigenvalue orders.
    CheckWeyl,
    /// Frenkel-Gross connection properties and torus classification.
    CheckFg,
    /// Alcove scans for fundamental strata of small depth.
    CheckStrata,
    /// Validate a Jordan form read from JSON and run the inequality chain.
    CheckConn {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Every suite, plus the cross-type checks.
    CheckAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Md,
}

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

fn usage(msg: String) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: msg,
        report: None,
    }
}

/// `argv` excludes the program name.
pub fn execute(argv: &[String]) -> Outcome {
    let cli = match Cli::try_parse_from(std::iter::once("lie-cert".to_string()).chain(argv.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                    report: None,
                },
                _ => usage(text),
            };
        }
    };
    match run(&cli, argv) {
        Ok(report) => {
            let stdout = match cli.emit {
                Emit::Json => report.to_json() + "\n",
                Emit::Md => report.to_markdown(),
            };
            Outcome {
                code: if report.passed() { 0 } else { 1 },
                stdout,
                stderr: String::new(),
                report: Some(report),
            }
        }
        Err(msg) => usage(format!("error: {msg}\n")),
    }
}

fn resolve_types(cli: &Cli) -> Result<Vec<RootSystem>, String> {
    let labels: Vec<String> = if cli.types.is_empty() {
        SUPPORTED_TYPES.iter().map(|s| s.to_string()).collect()
    } else {
        cli.types.clone()
    };
    labels
        .iter()
        .map(|l| {
            let ct = CartanType::parse(l).map_err(|e| e.to_string())?;
            build_root_system(ct.family, ct.rank, cli.allow_large).map_err(|e| e.to_string())
        })
        .collect()
}

fn check_budget(systems: &[RootSystem], budget: u64) -> Result<(), String> {
    match systems.iter().find(|rs| rs.weyl_order() > budget) {
        Some(rs) => Err(format!(
            "{}: Weyl group of order {} exceeds the enumeration budget {budget} (raise --budget)",
            rs.label(),
            rs.weyl_order()
        )),
        None => Ok(()),
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    checks: Vec<CheckRecord>,
    skipped: Vec<Skipped>,
}

impl Ctx<'_> {
    fn skip(&mut self, name: &str, reason: impl Into<String>) {
        self.skipped.push(Skipped {
            name: name.to_string(),
            reason: reason.into(),
        });
    }

    fn weyl(&mut self, rs: &RootSystem) {
        self.checks.push(suites::weyl_theorem(rs, self.cli.budget));
        if rs.label() == "E6" {
            self.checks.push(suites::e6_numerology(rs));
        }
    }

    fn strata(&mut self, alg: &ChevalleyAlgebra) {
        self.checks.push(suites::alcove_lemmas(alg, self.cli.denominator_bound));
    }

    fn fg(&mut self, alg: &ChevalleyAlgebra) {
        self.checks.push(suites::fg_properties(alg, self.cli.seed));
        self.checks.push(suites::fg_orbits(alg, self.cli.seed, 20));
        let label = alg.root_system().label();
        self.skip(
            &format!("fg-relative-weyl/{label}"),
            "quotient by the relative Weyl group of the Coxeter torus: its order is not tabulated and depends on the isogeny type",
        );
    }
}

fn run(cli: &Cli, argv: &[String]) -> Result<Report, String> {
    let mut ctx = Ctx {
        cli,
        checks: Vec::new(),
        skipped: Vec::new(),
    };
    let mut labels = Vec::new();
    match &cli.command {
        Command::CheckConn { input } => {
            let text = std::fs::read_to_string(input).map_err(|e| format!("{}: {e}", input.display()))?;
            let (rs, conn) = connection_from_json(&text).map_err(|e| e.to_string())?;
            check_budget(std::slice::from_ref(&rs), cli.budget)?;
            labels.push(rs.label());
            let alg = build_chevalley(&rs).map_err(|e| e.to_string())?;
            match suites::weyl_group(&rs, cli.budget) {
                Ok(group) => ctx.checks.push(suites::connection_check(&alg, &group, &conn)),
                Err(rec) => ctx.checks.push(*rec),
            }
        }
        cmd => {
            let systems = resolve_types(cli)?;
            if matches!(cmd, Command::CheckWeyl | Command::CheckAll) {
                check_budget(&systems, cli.budget)?;
            }
            for rs in &systems {
                labels.push(rs.label());
                let alg = build_chevalley(rs).map_err(|e| e.to_string())?;
                match cmd {
                    Command::CheckWeyl => ctx.weyl(rs),
                    Command::CheckFg => ctx.fg(&alg),
                    Command::CheckStrata => ctx.strata(&alg),
                    _ => {
                        ctx.weyl(rs);
                        ctx.strata(&alg);
                        ctx.fg(&alg);
                        match suites::weyl_group(rs, cli.budget) {
                            Ok(group) => {
                                ctx.checks
                                    .push(suites::jordan_chain(&alg, &group, cli.seed, cli.samples));
                                if rs.cartan_type().family == 'A' && rs.rank() <= 5 {
                                    ctx.checks.push(suites::springer_type_a(rs, &group, cli.seed, 20));
                                }
                                if rs.label() == "A1" {
                                    ctx.checks.push(suites::sl2_end_to_end(&alg, &group));
                                }
                            }
                            Err(rec) => ctx.checks.push(*rec),
                        }
                        if rs.cartan_type().family == 'A' && rs.rank() > 5 {
                            ctx.skip(
                                &format!("springer-type-a/{}", rs.label()),
                                "symmetric-function cross-check limited to A1..A5",
                            );
                        }
                    }
                }
            }
            if matches!(cmd, Command::CheckAll) {
                ctx.checks.push(suites::gl2_counterexample());
            }
        }
    }
    if !cli.timing {
        for c in &mut ctx.checks {
            c.timing_ms = None;
        }
    }
    let config = Config {
        types: labels,
        seed: cli.seed,
        budget: cli.budget,
        denominator_bound: cli.denominator_bound,
        samples: cli.samples,
        allow_large: cli.allow_large,
    };
    Ok(Report::new(argv.to_vec(), config, ctx.checks, ctx.skipped))
}

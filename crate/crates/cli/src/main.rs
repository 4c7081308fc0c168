//! Command-line front end for the `hodgela` checks. Every subcommand exits
//! with status 0 exactly when all of its checks pass.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hodgela::exteralg::{SignedPermutation, TemperedCohomologyModel};
use hodgela::ggpcheck::{self, parse_matrix, rotation_check, torsion_ledger, torsion_ledger_without};
use hodgela::hodge::{adjoint_motive, multiset_string, standard_motive};
use hodgela::lgamma::table1_row;
use hodgela::periodring::cases::{relations, Factor};
use hodgela::periodring::{parse_expr, Modulus, RelationSet};
use hodgela::rootsys::{chamber_check, invariants, GroupDescriptor};
use hodgela::Case;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hodgela", version, about = "Exact checks of Hodge-theoretic period identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Show {
    #[value(name = "M")]
    M,
    #[value(name = "N")]
    N,
    #[value(name = "AdM")]
    AdM,
    #[value(name = "AdN")]
    AdN,
    #[value(name = "MxN")]
    MxN,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModArg {
    Q,
    Sqrtq,
}

#[derive(clap::Args)]
struct Format {
    /// Markdown output.
    #[arg(long, conflicts_with = "json")]
    md: bool,
    /// JSON output.
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct CaseArgs {
    /// One of pgl-q, pgl-e, so-even, so-odd.
    #[arg(long)]
    case: Case,
    #[arg(long)]
    n: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a real group, e.g. `SL(4)/R x SO(3,5)/R`.
    Invariants {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        format: Format,
    },
    /// Graded dimensions and checks of the exterior-algebra cohomology model.
    CohomologyModel {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Hodge numbers of a motive attached to a case.
    Hodge {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum)]
        show: Show,
    },
    /// The archimedean table row: computed against closed-form exponents.
    Lfactor {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        format: Format,
    },
    /// Reduces a period expression modulo the rational relations.
    Period {
        /// S-expression, e.g. `(mul (pow pi 2) (inv twopii))`.
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, value_enum, default_value = "q")]
        r#mod: ModArg,
        /// Use the relations of this case (requires --n).
        #[arg(long, requires = "n")]
        case: Option<Case>,
        #[arg(long)]
        n: Option<i64>,
    },
    /// All checks for one case: table row, gamma reductions, condensate.
    Check {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        format: Format,
    },
    /// Derives the torsion-ledger targets from the axioms.
    Torsion {
        /// Drop the axiom with this label before deriving.
        #[arg(long)]
        without: Vec<String>,
    },
    /// Checks the rotation lemma for two lattices and an order-three rotation.
    Rotation {
        #[arg(long)]
        v1: std::path::PathBuf,
        #[arg(long)]
        v2: std::path::PathBuf,
        #[arg(long)]
        sigma: std::path::PathBuf,
    },
    /// Every case for n = 1..=n_max plus the module self-checks.
    VerifyAll {
        #[arg(long, default_value_t = 8)]
        n_max: i64,
        /// Shift the expected value of the named quantity by one.
        #[arg(long)]
        perturb: Option<String>,
    },
}

fn status(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Invariants { group, format } => {
            let g: GroupDescriptor = group.parse()?;
            let inv = invariants(&g)?;
            let mut pass = 2 * inv.q + inv.delta == inv.d_symm;
            for s in &g.factors {
                if let Ok(r) = chamber_check(s) {
                    pass &= r.ok();
                }
            }
            if format.json {
                println!("{}", serde_json::to_string_pretty(&inv)?);
            } else {
                let rows = [
                    ("dim G", inv.d_g.to_string()),
                    ("rank G", inv.r_g.to_string()),
                    ("dim K", inv.d_k.to_string()),
                    ("rank K", inv.r_k.to_string()),
                    ("delta", inv.delta.to_string()),
                    ("q", inv.q.to_string()),
                    ("dim G/K", inv.d_symm.to_string()),
                    ("[W_G:W_K]", inv.weyl_index.map_or("-".into(), |w| w.to_string())),
                    ("Delta_K", inv.delta_k.clone()),
                    ("Delta_G/K", inv.delta_g_over_k.clone()),
                ];
                if format.md {
                    println!("| invariant | value |\n|---|---|");
                    rows.iter().for_each(|(k, v)| println!("| {k} | {v} |"));
                } else {
                    rows.iter().for_each(|(k, v)| println!("{k:<10} {v}"));
                }
            }
            Ok(status(pass))
        }
        Command::CohomologyModel { delta, q, k } => {
            let m = TemperedCohomologyModel::new(delta, q, k, SignedPermutation::minus_reversal(delta))?;
            println!("degree  dim");
            for (j, d) in m.dims() {
                println!("{j:>6}  {d}");
            }
            let checks = [("freeness", m.freeness_check()), ("w-twisted adjointness", m.poincare_adjoint_check())];
            for (name, ok) in checks {
                println!("{} {name}", verdict(ok));
            }
            Ok(status(checks.iter().all(|c| c.1)))
        }
        Command::Hodge { case, show } => {
            let (c, n) = (case.case, case.n);
            let h = match show {
                Show::M => standard_motive(c, n, Factor::M, false)?,
                Show::N => standard_motive(c, n, Factor::N, false)?,
                Show::AdM => adjoint_motive(c, n, Factor::M)?,
                Show::AdN => adjoint_motive(c, n, Factor::N)?,
                Show::MxN => standard_motive(c, n, Factor::M, false)?.tensor(&standard_motive(c, n, Factor::N, false)?)?,
            };
            println!("weight {}, rank {}, F+ {}, F- {}", h.weight, h.rank(), h.fplus, h.fminus);
            println!("{}", multiset_string(h.multiset()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Lfactor { case, format } => {
            let row = table1_row(case.case, case.n)?;
            let pass = row.iter().all(|e| e.pass);
            if format.json {
                let v: Vec<_> = row
                    .iter()
                    .map(|e| {
                        serde_json::json!({
                            "name": e.name,
                            "computed_exp": ggpcheck::q_json(&e.computed),
                            "expected_exp": ggpcheck::q_json(&e.expected),
                            "pass": e.pass,
                            "detail": e.detail,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else if format.md {
                println!("| quantity | computed | expected | pass | detail |\n|---|---|---|---|---|");
                for e in &row {
                    println!("| {} | {} | {} | {} | {} |", e.name, e.computed, e.expected, verdict(e.pass), e.detail);
                }
            } else {
                for e in &row {
                    println!("{} {:<16} {:>8} {:>8}  {}", verdict(e.pass), e.name, e.computed, e.expected, e.detail);
                }
            }
            Ok(status(pass))
        }
        Command::Period { expr, r#mod, case, n } => {
            let rels = match (case, n) {
                (Some(c), Some(n)) => relations(c, n)?,
                _ => RelationSet::new(Vec::new())?,
            };
            let modulus = match r#mod {
                ModArg::Q => Modulus::Q,
                ModArg::Sqrtq => Modulus::SqrtQ,
            };
            let x = match (expr, case, n) {
                (Some(e), _, _) => parse_expr(&e)?,
                (None, Some(c), Some(n)) => hodgela::periodring::cases::condensate(c, n, hodgela::periodring::cases::Sign::Plus)?,
                _ => bail!("give --expr, or --case and --n for the condensate"),
            };
            println!("input:   {x}");
            println!("reduced: {}", rels.reduce(&x, modulus));
            println!("trivial: {}", rels.is_trivial(&x, modulus));
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { case, format } => {
            let r = ggpcheck::run_case(case.case, case.n)?;
            if format.json {
                println!("{}", serde_json::to_string_pretty(&r.to_json())?);
            } else {
                print!("{}", r.to_markdown());
            }
            if let Some(f) = r.first_failure() {
                eprintln!("first failing identity: {f}");
            }
            Ok(status(r.pass()))
        }
        Command::Torsion { without } => {
            let labels: Vec<&str> = without.iter().map(String::as_str).collect();
            let ledger = if labels.is_empty() { torsion_ledger() } else { torsion_ledger_without(&labels) };
            print!("{ledger}");
            if let Some(d) = ledger.derivations.iter().find(|d| !d.pass()) {
                eprintln!("first failing identity: {}", d.target);
            }
            Ok(status(ledger.pass()))
        }
        Command::Rotation { v1, v2, sigma } => {
            let read = |p: &std::path::Path| -> Result<_> {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                parse_matrix(&text).with_context(|| format!("parsing {}", p.display()))
            };
            let r = rotation_check(&read(&v1)?, &read(&v2)?, &read(&sigma)?)?;
            println!("{} {}", verdict(r.holds), r.description);
            if let Some(m) = &r.matrix {
                print!("{}", ggpcheck::format_matrix(m));
            }
            Ok(status(r.holds))
        }
        Command::VerifyAll { n_max, perturb } => {
            let report = ggpcheck::verify_all(n_max, perturb.as_deref())?;
            print!("{}", report.summary_table());
            match report.first_failure() {
                Some(f) => {
                    eprintln!("first failing identity: {f}");
                    Ok(ExitCode::FAILURE)
                }
                None => {
                    println!("all {} case reports and {} self-checks pass", report.cases.len(), report.checks.len());
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

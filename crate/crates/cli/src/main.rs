//! Command-line front end: evaluate the library's functions at exact
//! rational inputs, export Euler tables, run numeric integrals, and drive
//! the identity-check suite.
//!
//! Exit codes: 0 ok, 1 check failures, 2 usage errors, 3 violated
//! mathematical preconditions.

mod checks;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use padic_euler::error::Error;
use padic_euler::euler::EulerTable;
use padic_euler::fermionic::{fermionic_integral_numeric, Integrand};
use padic_euler::loggamma::{log_gamma, log_gamma_star, psi, LogGammaRequest};
use padic_euler::projection;
use padic_euler::rational::{parse_rational, render, Rational};
use padic_euler::zeta::{zeta, zeta_star, Strategy, ZetaRequest};
use padic_euler::{EvalConfig, PAdicNumber};

#[derive(Parser)]
#[command(
    name = "padic-euler",
    version,
    about = "p-adic multiple Barnes-Euler zeta and Diamond-Euler Log Gamma functions"
)]
struct Cli {
    /// Odd prime p.
    #[arg(long = "p", global = true, default_value_t = 5)]
    prime: u64,
    /// Guaranteed absolute precision of printed values.
    #[arg(long, global = true, default_value_t = 20)]
    prec: i64,
    /// Guard digits used internally.
    #[arg(long, global = true, default_value_t = 10)]
    guard: i64,
    /// Term budget for reduction sums (PADIC_EULER_BUDGET overrides).
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,
    /// Largest reduction exponent accepted.
    #[arg(long = "kcap", global = true, default_value_t = 4)]
    kcap: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized identity instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    Series,
    Reduce,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate zeta_{p,E,N}(s, x; omega).
    Zeta {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        s: Rational,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        omega: Vec<Rational>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        /// Reduction exponent k for --strategy reduce.
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Evaluate the starred zeta on the parameter span Lambda.
    ZetaStar {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        s: Rational,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        omega: Vec<Rational>,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Evaluate the Diamond-Euler Log Gamma function.
    Loggamma {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        omega: Vec<Rational>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Evaluate the starred Log Gamma on Lambda.
    LoggammaStar {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        omega: Vec<Rational>,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Evaluate psi^(k), the k-th derivative of Log Gamma.
    Psi {
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        omega: Vec<Rational>,
    },
    /// Exact higher-order Euler polynomial E_{N,n}(x; omega).
    EulerPoly {
        /// Order N; must match the number of omega entries.
        #[arg(long = "N")]
        order: usize,
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        omega: Vec<Rational>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        x: Rational,
        /// Dump the coefficient table E_{N,k}(0; omega), k <= n, as JSON.
        #[arg(long)]
        table: bool,
    },
    /// Teichmuller representative of a p-adic unit.
    Teichmuller {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        a: Rational,
    },
    /// Numeric fermionic integral of a named integrand at level L.
    Integrate {
        #[arg(long, value_enum)]
        kind: IntegrandKind,
        /// Degree for --kind poly.
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Exponent parameter s for --kind angle.
        #[arg(long, value_parser = parse_rat, default_value = "0", allow_hyphen_values = true)]
        s: Rational,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        omega: Vec<Rational>,
        #[arg(long)]
        level: u32,
    },
    /// Run the registered identity checks.
    Check {
        #[arg(long, value_enum, default_value_t = checks::Suite::All)]
        suite: checks::Suite,
        /// Randomized instances per identity.
        #[arg(long, default_value_t = 3)]
        instances: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IntegrandKind {
    Poly,
    Log,
    Xlogx,
    Angle,
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut budget = cli.budget;
    if let Ok(v) = std::env::var("PADIC_EULER_BUDGET") {
        match v.parse::<u64>() {
            Ok(b) => budget = b,
            Err(_) => {
                eprintln!("error: PADIC_EULER_BUDGET must be an integer, got '{v}'");
                return ExitCode::from(2);
            }
        }
    }
    let config = match EvalConfig::new(cli.prime, cli.prec) {
        Ok(c) => c
            .with_guard(cli.guard)
            .with_budget(budget)
            .with_k_cap(cli.kcap),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    match run(&cli, config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_math_precondition() { 3 } else { 2 })
        }
    }
}

fn run(cli: &Cli, config: EvalConfig) -> Result<ExitCode, Error> {
    let json = cli.format == Format::Json;
    match &cli.cmd {
        Cmd::Zeta {
            s,
            x,
            omega,
            strategy,
            level,
        } => {
            let strat = match strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Series => Strategy::Series,
                StrategyArg::Reduce => Strategy::Reduce(*level),
            };
            let v = zeta(
                &ZetaRequest::new(config, s.clone(), x.clone(), omega.clone())
                    .with_strategy(strat),
            )?;
            print_zeta_value(&v, json);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ZetaStar { s, x, omega, level } => {
            let v = zeta_star(
                &ZetaRequest::new(config, s.clone(), x.clone(), omega.clone())
                    .with_strategy(Strategy::Reduce(*level)),
            )?;
            print_zeta_value(&v, json);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Loggamma {
            x,
            omega,
            strategy,
            level,
        } => {
            let strat = match strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Series => Strategy::Series,
                StrategyArg::Reduce => Strategy::Reduce(*level),
            };
            let v = log_gamma(
                &LogGammaRequest::new(config, x.clone(), omega.clone()).with_strategy(strat),
            )?;
            print_gamma_value(&v.value, &v.strategy, v.guaranteed_prec, json);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::LoggammaStar { x, omega, level } => {
            let v = log_gamma_star(
                &LogGammaRequest::new(config, x.clone(), omega.clone())
                    .with_strategy(Strategy::Reduce(*level)),
            )?;
            print_gamma_value(&v.value, &v.strategy, v.guaranteed_prec, json);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Psi { k, x, omega } => {
            let v = psi(
                *k,
                &LogGammaRequest::new(config.clone(), x.clone(), omega.clone()),
            )?;
            print_gamma_value(&v, "series", config.prec, json);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::EulerPoly {
            order,
            omega,
            n,
            x,
            table,
        } => {
            if *order != omega.len() {
                eprintln!(
                    "error: --N {} does not match {} omega entries",
                    order,
                    omega.len()
                );
                return Ok(ExitCode::from(2));
            }
            let t = EulerTable::build(omega, *n)?;
            if *table {
                println!("{}", t.to_json());
            } else {
                let value = t.euler_poly(*n, x)?;
                if json {
                    println!(
                        "{}",
                        serde_json::json!({"schema": 1, "value": render(&value)})
                    );
                } else {
                    println!("{}", render(&value));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Teichmuller { a } => {
            let ap = PAdicNumber::from_rational(a, config.prime, config.prec)?;
            let t = projection::teichmuller(&ap)?;
            if json {
                println!("{}", serde_json::json!({"schema": 1, "value": t.to_json()}));
            } else {
                println!("{t}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Integrate {
            kind,
            n,
            s,
            x,
            omega,
            level,
        } => {
            let spec = match kind {
                IntegrandKind::Poly => Integrand::Polynomial {
                    degree: *n,
                    x: x.clone(),
                    omega: omega.clone(),
                },
                IntegrandKind::Log => Integrand::LogShift {
                    x: x.clone(),
                    omega: omega.clone(),
                },
                IntegrandKind::Xlogx => Integrand::XLogXShift {
                    x: x.clone(),
                    omega: omega.clone(),
                },
                IntegrandKind::Angle => Integrand::AnglePower {
                    x: x.clone(),
                    omega: omega.clone(),
                    s: s.clone(),
                },
            };
            let r = fermionic_integral_numeric(
                &spec,
                config.prime,
                *level,
                config.prec + config.guard,
            )?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": 1,
                        "value": r.value.truncate(config.prec).to_json(),
                        "stabilized_digits": r.stabilized_digits.min(config.prec),
                        "level": r.level,
                        "terms": r.terms,
                    })
                );
            } else {
                println!(
                    "{}  (stabilized digits: {}, level {}, {} terms)",
                    r.value.truncate(config.prec),
                    r.stabilized_digits.min(config.prec),
                    r.level,
                    r.terms
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Check { suite, instances } => {
            let ctx = checks::CheckCtx {
                config,
                seed: cli.seed,
                instances: *instances,
            };
            let reports = checks::run_suite(*suite, &ctx);
            let failed = reports.iter().filter(|r| !r.pass).count();
            if json {
                for r in &reports {
                    println!("{}", r.to_json());
                }
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": 1,
                        "summary": {
                            "total": reports.len(),
                            "failed": failed,
                            "seed": cli.seed,
                        }
                    })
                );
            } else {
                for r in &reports {
                    println!(
                        "{} {} [{}] agreement {}/{}",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.name,
                        r.params,
                        r.agreement_digits,
                        r.required_digits
                    );
                }
                println!("{} checks, {} failed", reports.len(), failed);
            }
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn print_zeta_value(v: &padic_euler::ZetaValue, json: bool) {
    if json {
        let mut j = v.to_json();
        j["schema"] = serde_json::json!(1);
        println!("{j}");
    } else {
        println!(
            "{}  (strategy {}, {} terms, {} digits guaranteed)",
            v.value, v.strategy, v.terms, v.guaranteed_prec
        );
    }
}

fn print_gamma_value(value: &PAdicNumber, strategy: &str, prec: i64, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::json!({
                "schema": 1,
                "value": value.to_json(),
                "strategy": strategy,
                "guaranteed_prec": prec,
            })
        );
    } else {
        println!("{value}  (strategy {strategy}, {prec} digits guaranteed)");
    }
}

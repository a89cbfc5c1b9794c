//! Command-line surface: ad-hoc normal-form queries, the verification
//! suites with JSON reports, the curvature matrix printout, and morphism
//! table listings.
//!
//! Exit codes: 0 on success, 1 on verification failure, 2 on usage or
//! parse errors. `NQS_RULE_BUDGET` overrides the reduction budget.

use clap::{Parser, Subcommand};
use nqs_core::dga::graded_catalog;
use nqs_core::ncalg::catalog::{catalog, PRESENTATION_NAMES};
use nqs_core::parse::{eval, eval_twisted, parse};
use nqs_core::suites::{curvature_json, run_suite, SUITE_NAMES};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nqs", version, about = "Exact verification suite for a q-deformed 4-sphere, its Hopf bundle and instanton connection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal-form an expression in a named algebra
    Nf {
        /// presentation name (see `nqs list`), `dga-*` for graded ones,
        /// or `twisted-ai` for the twisted tensor product
        #[arg(long)]
        algebra: String,
        /// expression, e.g. "q^-1*(b13*b24 - b14*b23)"
        expr: String,
    },
    /// Run a verification suite and print the report
    Verify {
        /// one of: all, algebra, dga, hopf, twist, sheaf, cocycle,
        /// principality, associated, instanton
        #[arg(long)]
        suite: String,
        /// write the JSON report here
        #[arg(long)]
        json: Option<std::path::PathBuf>,
    },
    /// Compute the curvature matrix and compare with its closed form
    Curvature {
        #[arg(long)]
        json: Option<std::path::PathBuf>,
    },
    /// Print a morphism generator table and its relation checks
    Morphism {
        /// one of: Q, Qtilde, fSN, fNS, rhoN, rhoS (and the other catalog
        /// tables by their listed names)
        #[arg(long)]
        name: String,
    },
    /// List the catalog presentations, morphisms and suites
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Nf { algebra, expr } => {
            let tree = parse(&expr).map_err(|e| e.to_string())?;
            if algebra == "twisted-ai" {
                let su2 = catalog().presentation("su2").map_err(|e| e.to_string())?;
                let v = eval_twisted(&tree, su2).map_err(|e| e.to_string())?;
                println!("{}", v);
                return Ok(ExitCode::SUCCESS);
            }
            if algebra.starts_with("dga-") {
                let g = graded_catalog()
                    .get(&algebra)
                    .map_err(|_| format!("unknown algebra `{}`", algebra))?;
                let v = eval(&tree, &g.pres, Some(g)).map_err(|e| e.to_string())?;
                println!("{}", g.pres.display(&v));
                return Ok(ExitCode::SUCCESS);
            }
            let p = catalog()
                .presentation(&algebra)
                .map_err(|_| format!("unknown algebra `{}`", algebra))?;
            let v = eval(&tree, p, None).map_err(|e| e.to_string())?;
            println!("{}", p.display(&v));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, json } => {
            let report = run_suite(&suite).map_err(|e| e.to_string())?;
            print!("{}", report.render_text());
            if let Some(path) = json {
                std::fs::write(
                    &path,
                    serde_json::to_string_pretty(&report.to_json()).unwrap(),
                )
                .map_err(|e| format!("writing {}: {}", path.display(), e))?;
            }
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Curvature { json } => {
            let v = curvature_json();
            let pretty = serde_json::to_string_pretty(&v).unwrap();
            println!("{}", pretty);
            if let Some(path) = json {
                std::fs::write(&path, pretty.as_bytes())
                    .map_err(|e| format!("writing {}: {}", path.display(), e))?;
            }
            Ok(if v["verdict"] == "pass" {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Morphism { name } => {
            // the factorization maps are tables into the twisted tensor
            // product; everything else is a catalog morphism
            match name.as_str() {
                "fSN" | "fNS" => {
                    let f = nqs_core::twist::factorization();
                    let (src, label): (&nqs_core::ncalg::Presentation, _) = if name == "fSN" {
                        (f.sn, "chart-sn-ext -> su2 (x) radius")
                    } else {
                        (f.ns, "chart-ns-ext -> su2 (x) radius")
                    };
                    println!("# {} ({})", name, label);
                    for g in src.gens() {
                        let x = src.gen_elem(&g.name).unwrap();
                        let img = if name == "fSN" { f.f_sn(&x) } else { f.f_ns(&x) }
                            .map_err(|e| e.to_string())?;
                        println!("  {} -> {}", g.name, img);
                    }
                    Ok(ExitCode::SUCCESS)
                }
                _ => {
                    let c = catalog();
                    let m = c
                        .morphism(&name)
                        .map_err(|_| format!("unknown morphism `{}`", name))?;
                    let src = c.presentation(&m.source).unwrap();
                    let tgt = c.presentation(&m.target).unwrap();
                    println!(
                        "# {} ({} -> {}){}",
                        name,
                        m.source,
                        m.target,
                        if m.involute { ", coefficients involuted" } else { "" }
                    );
                    for (g, img) in &m.images {
                        println!("  {} -> {}", src.gen_name(*g), tgt.display(img));
                    }
                    let checks = m.check(src, tgt).map_err(|e| e.to_string())?;
                    let bad = checks.iter().filter(|ch| !ch.ok).count();
                    println!(
                        "# {} relation checks, {} failing",
                        checks.len(),
                        bad
                    );
                    Ok(if bad == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
                }
            }
        }
        Command::List => {
            println!("presentations:");
            for p in PRESENTATION_NAMES {
                println!("  {}", p);
            }
            println!("graded presentations:");
            for p in ["dga-n", "dga-s", "dga-sn-ext"] {
                println!("  {}", p);
            }
            println!("morphisms:");
            for m in nqs_core::ncalg::catalog::MORPHISM_NAMES {
                println!("  {}", m);
            }
            println!("  fSN");
            println!("  fNS");
            println!("suites:");
            for s in SUITE_NAMES {
                println!("  {}", s);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use toricgw::coefrings::{parse_rational, Rational};
use toricgw::document::{Document, GvDocument};
use toricgw::suites::{run_suite, SUITE_NAMES};
use toricgw::toric::{derive_tau, gv_extract, preset, presets, to_classes, z_localization, z_product, ToricSurface, PRESET_NAMES};

#[derive(Parser)]
#[command(name = "toricgw", version, about = "Exact Gromov–Witten partition functions of local toric Fano surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in surfaces.
    Presets {
        #[arg(long, value_enum, default_value = "text")]
        output: Format,
    },
    /// Partition function from the product formula.
    Compute {
        /// Preset name or path to a surface JSON file.
        #[arg(long)]
        surface: String,
        /// Bound on total edge degree.
        #[arg(long)]
        max_degree: u32,
        /// Torus direction (1, c) used by the localization cross-check.
        #[arg(long, default_value = "2")]
        torus_c: String,
        #[arg(long, value_enum, default_value = "json")]
        output: Format,
        /// Also evaluate the localization graph sum and require equality.
        #[arg(long)]
        cross_check: bool,
        /// Attach the ξ-expansion (q = e^ξ) of every coefficient through ξ^N.
        #[arg(long)]
        xi_order: Option<i32>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITE_NAMES))]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Gopakumar–Vafa invariants of the free energy.
    Gv {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, default_value = "json")]
        output: Format,
    },
}

fn load_surface(arg: &str) -> Result<ToricSurface, String> {
    if PRESET_NAMES.contains(&arg) {
        return preset(arg).map_err(|e| e.to_string());
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(format!("`{arg}` is neither a preset ({}) nor a readable file", PRESET_NAMES.join(", ")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
    let mut surf = ToricSurface::from_json(&text).map_err(|e| format!("{arg}: {e}"))?;
    if surf.name.is_empty() {
        surf.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    }
    Ok(surf)
}

fn parse_c(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|_| format!("--torus-c `{s}` is not a rational number"))
}

fn presets_output(format: Format) -> Result<String, String> {
    let all = presets();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&all).map_err(|e| e.to_string())?,
        Format::Csv => {
            let mut out = String::from("name,k,s,variables\n");
            for p in &all {
                let s: Vec<String> = p.s.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("{},{},\"{}\",\"{}\"\n", p.name, p.k, s.join(" "), p.variables.join(" ")));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for p in &all {
                let s: Vec<String> = p.s.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("{:<6} k={} s=({}) variables: {}\n", p.name, p.k, s.join(","), p.variables.join(", ")));
            }
            out
        }
    })
}

fn emit_document(doc: &Document, format: Format) -> Result<String, String> {
    Ok(match format {
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv().map_err(|e| e.to_string())?,
        Format::Text => doc.to_text(),
    })
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Presets { output } => {
            print!("{}", ensure_newline(presets_output(output)?));
            Ok(true)
        }
        Command::Compute { surface, max_degree, torus_c, output, cross_check, xi_order } => {
            let surf = load_surface(&surface)?;
            let c = parse_c(&torus_c)?;
            let product = z_product(&surf, max_degree);
            let mut ok = true;
            if cross_check {
                let tau = derive_tau(&surf, &c).map_err(|e| e.to_string())?;
                let loc = z_localization(&surf, &tau, max_degree).map_err(|e| e.to_string())?;
                if loc == product {
                    eprintln!("cross-check passed: localization graph sum equals product formula (c = {c})");
                } else {
                    eprintln!("cross-check FAILED: localization graph sum differs from product formula (c = {c})");
                    ok = false;
                }
            }
            let series = to_classes(&surf, &product, true);
            let doc = Document::from_series(&series, xi_order).map_err(|e| e.to_string())?;
            print!("{}", ensure_newline(emit_document(&doc, output)?));
            Ok(ok)
        }
        Command::Verify { suite, seed } => {
            let report = run_suite(&suite, seed).ok_or_else(|| format!("unknown suite `{suite}`"))?;
            for c in &report.checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            println!("suite {}: {} passed, {failed} failed", report.suite, report.checks.len() - failed);
            Ok(report.passed())
        }
        Command::Gv { surface, max_degree, output } => {
            let surf = load_surface(&surface)?;
            let table = gv_extract(&surf, max_degree).map_err(|e| e.to_string())?;
            let doc = GvDocument::new(&table, max_degree);
            let text = match output {
                Format::Json => doc.to_json(),
                Format::Csv => doc.to_csv().map_err(|e| e.to_string())?,
                Format::Text => doc.to_text(),
            };
            print!("{}", ensure_newline(text));
            Ok(true)
        }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

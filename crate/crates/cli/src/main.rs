//! Command-line front end: single shifts, the comparison table, derived
//! coefficients and amplitude scans, rendered as text, CSV or JSON.
//!
//! Exit codes: 0 success, 2 usage error, 3 computation failure.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use bloch_siegert::approx::{asymptotic_shift, extrapolated_shift, pt_shift, rwa_shift};
use bloch_siegert::floquet::{find_resonance, FloquetConfig};
use bloch_siegert::series::derive_formula;
use bloch_siegert::{RabiParams, ShiftReport};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "bloch-siegert",
    version,
    about = "Bloch-Siegert shift of the driven two-level system"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for table rows and scan points (default: all cores).
    #[arg(long, global = true)]
    parallel: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Shift for one parameter set, by one or more methods.
    Shift {
        /// Level splitting (angular frequency units).
        #[arg(long)]
        omega0: f64,
        /// Drive amplitude, same units.
        #[arg(long)]
        amplitude: f64,
        /// Comma-separated methods: pt, extrap, rwa, asymptotic, floquet
        /// (or explicit pt2..pt8, extrap2..extrap8).
        #[arg(long, value_delimiter = ',', default_value = "extrap")]
        method: Vec<String>,
        /// Order for the pt and extrap methods.
        #[arg(long, default_value_t = 8)]
        order: u32,
    },
    /// Relative-shift comparison table at omega0 = 1.
    Table {
        /// Drive ratios A/omega0 (default: the nine reference values
        /// 1.0, 3.5, ..., 21.0).
        #[arg(long, value_delimiter = ',')]
        ratios: Option<Vec<f64>>,
        /// Comma-separated column methods: numerical, extrap2..8, pt2..8,
        /// rwa, asymptotic.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "numerical,extrap6,extrap8"
        )]
        methods: Vec<String>,
        /// Fill the numerical column from the order-8 formula instead of the
        /// Floquet solver (fast, approximate).
        #[arg(long)]
        fast: bool,
    },
    /// Exact radicand coefficients and asymptotic divisor of one
    /// extrapolation formula.
    Coeffs {
        #[arg(long)]
        order: u32,
    },
    /// Shift versus amplitude on an evenly spaced grid.
    Scan {
        #[arg(long, default_value_t = 1.0)]
        omega0: f64,
        #[arg(long, default_value_t = 0.0)]
        a_min: f64,
        #[arg(long)]
        a_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long, value_delimiter = ',', default_value = "extrap8")]
        methods: Vec<String>,
    },
}

/// A method column: what to run and how to label it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MethodSpec {
    Pt(u32),
    Extrap(u32),
    Rwa,
    Asymptotic,
    Floquet,
}

impl MethodSpec {
    /// Parse a CLI token; bare "pt"/"extrap" take the given default order.
    fn parse(token: &str, default_order: u32) -> Result<Self, String> {
        let spec = match token {
            "pt" => MethodSpec::Pt(default_order),
            "extrap" => MethodSpec::Extrap(default_order),
            "rwa" => MethodSpec::Rwa,
            "asymptotic" => MethodSpec::Asymptotic,
            "floquet" | "numerical" => MethodSpec::Floquet,
            _ => {
                let (kind, order) = token.split_at(token.len().saturating_sub(1));
                let order: u32 = order.parse().map_err(|_| unknown(token))?;
                match kind {
                    "pt" => MethodSpec::Pt(order),
                    "extrap" => MethodSpec::Extrap(order),
                    _ => return Err(unknown(token)),
                }
            }
        };
        let valid_order = match spec {
            MethodSpec::Pt(o) | MethodSpec::Extrap(o) => matches!(o, 2 | 4 | 6 | 8),
            _ => true,
        };
        if !valid_order {
            return Err(format!("order must be one of 2, 4, 6, 8 in '{token}'"));
        }
        Ok(spec)
    }

    fn label(&self) -> String {
        match self {
            MethodSpec::Pt(o) => format!("pt{o}"),
            MethodSpec::Extrap(o) => format!("extrap{o}"),
            MethodSpec::Rwa => "rwa".to_string(),
            MethodSpec::Asymptotic => "asymptotic".to_string(),
            MethodSpec::Floquet => "numerical".to_string(),
        }
    }

    fn run(&self, params: &RabiParams<f64>) -> Result<ShiftReport<f64>, String> {
        let out = match self {
            MethodSpec::Pt(order) => pt_shift(params, *order),
            MethodSpec::Extrap(order) => extrapolated_shift(params, *order),
            MethodSpec::Rwa => rwa_shift(params),
            MethodSpec::Asymptotic => asymptotic_shift(params),
            MethodSpec::Floquet => {
                find_resonance(params, &FloquetConfig::for_omega0(params.omega0()))
            }
        };
        out.map_err(|e| e.to_string())
    }
}

fn unknown(token: &str) -> String {
    format!(
        "unknown method '{token}' (expected pt, extrap, rwa, asymptotic, floquet, \
         numerical, or ptN/extrapN with N in 2,4,6,8)"
    )
}

enum Failure {
    /// Bad flags or values: exit code 2.
    Usage(String),
    /// A computation could not finish: exit code 3.
    Compute(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.parallel {
        if threads == 0 {
            eprintln!("error: --parallel must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }

    let outcome = match &cli.command {
        Command::Shift {
            omega0,
            amplitude,
            method,
            order,
        } => cmd_shift(*omega0, *amplitude, method, *order, cli.format),
        Command::Table {
            ratios,
            methods,
            fast,
        } => cmd_table(ratios.as_deref(), methods, *fast, cli.format),
        Command::Coeffs { order } => cmd_coeffs(*order, cli.format),
        Command::Scan {
            omega0,
            a_min,
            a_max,
            points,
            methods,
        } => cmd_scan(*omega0, *a_min, *a_max, *points, methods, cli.format),
    };

    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn parse_methods(tokens: &[String], default_order: u32) -> Result<Vec<MethodSpec>, Failure> {
    if tokens.is_empty() {
        return Err(Failure::Usage("at least one method is required".into()));
    }
    tokens
        .iter()
        .map(|t| MethodSpec::parse(t, default_order).map_err(Failure::Usage))
        .collect()
}

fn json_envelope(rows: Vec<serde_json::Value>, config: serde_json::Value) -> String {
    serde_json::to_string_pretty(&serde_json::json!({
        "rows": rows,
        "config": config,
        "version": VERSION,
    }))
    .expect("serializable")
}

fn cmd_shift(
    omega0: f64,
    amplitude: f64,
    tokens: &[String],
    order: u32,
    format: Format,
) -> Result<(), Failure> {
    let methods = parse_methods(tokens, order)?;
    let params = RabiParams::new(omega0, amplitude).map_err(|e| Failure::Usage(e.to_string()))?;
    let reports: Vec<ShiftReport<f64>> = methods
        .iter()
        .map(|m| m.run(&params))
        .collect::<Result<_, _>>()
        .map_err(Failure::Compute)?;

    match format {
        Format::Text => {
            println!("{:<12} {:>12} {:>12}", "method", "shift", "resonance");
            for r in &reports {
                println!(
                    "{:<12} {:>12.6} {:>12.6}",
                    r.method.as_str(),
                    r.shift,
                    r.resonance()
                );
            }
        }
        Format::Csv => {
            println!("method,omega0,amplitude,shift,resonance");
            for r in &reports {
                println!(
                    "{},{},{},{:.6},{:.6}",
                    r.method.as_str(),
                    omega0,
                    amplitude,
                    r.shift,
                    r.resonance()
                );
            }
        }
        Format::Json => {
            let rows = reports.iter().map(ShiftReport::to_json).collect();
            let config = serde_json::json!({
                "omega0": omega0,
                "amplitude": amplitude,
            });
            println!("{}", json_envelope(rows, config));
        }
    }
    Ok(())
}

fn cmd_table(
    ratios: Option<&[f64]>,
    tokens: &[String],
    fast: bool,
    format: Format,
) -> Result<(), Failure> {
    const DEFAULT_RATIOS: [f64; 9] = [1.0, 3.5, 6.0, 8.5, 11.0, 13.5, 16.0, 18.5, 21.0];
    let ratios: Vec<f64> = ratios
        .map(<[f64]>::to_vec)
        .unwrap_or(DEFAULT_RATIOS.to_vec());
    if ratios.is_empty() {
        return Err(Failure::Usage("at least one ratio is required".into()));
    }
    if let Some(bad) = ratios.iter().find(|r| !r.is_finite() || **r <= 0.0) {
        return Err(Failure::Usage(format!(
            "ratio must be positive (got {bad})"
        )));
    }
    let mut methods = parse_methods(tokens, 8)?;
    if fast {
        // Keep the column, swap the solver for the order-8 formula.
        for m in &mut methods {
            if *m == MethodSpec::Floquet {
                *m = MethodSpec::Extrap(8);
            }
        }
    }
    let labels: Vec<String> = tokens
        .iter()
        .map(|t| {
            // Column headers keep the requested names even under --fast.
            MethodSpec::parse(t, 8)
                .map(|m| m.label())
                .unwrap_or_else(|_| t.clone())
        })
        .collect();

    // One row per ratio, cells in method order; failures become None.
    let rows: Vec<(f64, Vec<Option<f64>>)> = ratios
        .par_iter()
        .map(|&ratio| {
            let params = RabiParams::new(1.0, ratio).expect("validated above");
            let cells = methods
                .iter()
                .map(|m| m.run(&params).ok().map(|r| r.shift))
                .collect();
            (ratio, cells)
        })
        .collect();
    let failed = rows
        .iter()
        .any(|(_, cells)| cells.iter().any(Option::is_none));

    let cell = |c: &Option<f64>| match c {
        Some(v) => format!("{v:.6}"),
        None => "ERR".to_string(),
    };
    match format {
        Format::Text => {
            print!("{:<10}", "A/omega0");
            for label in &labels {
                print!(" {label:>12}");
            }
            println!();
            for (ratio, cells) in &rows {
                print!("{ratio:<10}");
                for c in cells {
                    print!(" {:>12}", cell(c));
                }
                println!();
            }
        }
        Format::Csv => {
            println!("ratio,{}", labels.join(","));
            for (ratio, cells) in &rows {
                let rendered: Vec<String> = cells.iter().map(cell).collect();
                println!("{ratio},{}", rendered.join(","));
            }
        }
        Format::Json => {
            let json_rows = rows
                .iter()
                .map(|(ratio, cells)| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("ratio".into(), (*ratio).into());
                    for (label, c) in labels.iter().zip(cells) {
                        obj.insert(label.clone(), (*c).into());
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            let config = serde_json::json!({
                "omega0": 1.0,
                "methods": labels,
                "fast": fast,
            });
            println!("{}", json_envelope(json_rows, config));
        }
    }

    if failed {
        Err(Failure::Compute("one or more table cells failed".into()))
    } else {
        Ok(())
    }
}

fn cmd_coeffs(order: u32, format: Format) -> Result<(), Failure> {
    let formula = derive_formula(order).map_err(|e| Failure::Usage(e.to_string()))?;
    let divisor = formula
        .asymptotic_divisor()
        .map_err(|e| Failure::Compute(e.to_string()))?;
    let mut radicand = vec!["1".to_string()];
    radicand.extend(formula.coefficients().iter().map(ToString::to_string));

    match format {
        Format::Text => {
            println!("order: {order}");
            println!("radicand: {}", radicand.join(", "));
            println!("divisor: {divisor:.5}");
        }
        Format::Csv => {
            println!("order,index,coefficient");
            for (k, c) in radicand.iter().enumerate() {
                println!("{order},{k},{c}");
            }
            println!("{order},divisor,{divisor:.5}");
        }
        Format::Json => {
            let mut row = formula.to_json();
            row["divisor"] = divisor.into();
            println!("{}", json_envelope(vec![row], serde_json::json!({})));
        }
    }
    Ok(())
}

fn cmd_scan(
    omega0: f64,
    a_min: f64,
    a_max: f64,
    points: usize,
    tokens: &[String],
    format: Format,
) -> Result<(), Failure> {
    if !(a_min >= 0.0 && a_min < a_max) {
        return Err(Failure::Usage(format!(
            "need 0 <= a-min < a-max (got {a_min}, {a_max})"
        )));
    }
    if points < 2 {
        return Err(Failure::Usage("need at least 2 grid points".into()));
    }
    let methods = parse_methods(tokens, 8)?;
    RabiParams::new(omega0, a_min).map_err(|e| Failure::Usage(e.to_string()))?;

    let step = (a_max - a_min) / (points - 1) as f64;
    let grid: Vec<f64> = (0..points).map(|i| a_min + i as f64 * step).collect();

    let rows: Vec<(f64, String, f64)> = grid
        .par_iter()
        .flat_map_iter(|&amplitude| {
            let params = RabiParams::new(omega0, amplitude).expect("validated above");
            methods
                .iter()
                .map(move |m| m.run(&params).map(|r| (amplitude, m.label(), r.shift)))
        })
        .collect::<Result<_, _>>()
        .map_err(Failure::Compute)?;

    match format {
        Format::Text => {
            println!("{:<12} {:<12} {:>12}", "amplitude", "method", "shift");
            for (amplitude, label, shift) in &rows {
                println!("{amplitude:<12.6} {label:<12} {shift:>12.6}");
            }
        }
        Format::Csv => {
            println!("amplitude,method,shift");
            for (amplitude, label, shift) in &rows {
                println!("{amplitude:.6},{label},{shift:.6}");
            }
        }
        Format::Json => {
            let json_rows = rows
                .iter()
                .map(|(amplitude, label, shift)| {
                    serde_json::json!({
                        "amplitude": amplitude,
                        "method": label,
                        "shift": shift,
                    })
                })
                .collect();
            let config = serde_json::json!({
                "omega0": omega0,
                "a_min": a_min,
                "a_max": a_max,
                "points": points,
            });
            println!("{}", json_envelope(json_rows, config));
        }
    }
    Ok(())
}

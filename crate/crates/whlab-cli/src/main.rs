//! Command-line front end: wires parameters into the certification suites and
//! emits text or JSON reports.
//!
//! Exit status: 0 when every report item passes, 1 on verification failure,
//! 2 on configuration or construction errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use whlab::mub::{canonical_basis, quantized_basis};
use whlab::suites;
use whlab::{AlgebraParams, FockSpace};

#[derive(Debug, Parser)]
#[command(
    name = "whlab",
    version,
    about = "certify deformed oscillator algebras, phase states, MUBs, and coherent states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
enum CoherentType {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

#[derive(Debug, Clone, Args)]
struct CommonArgs {
    /// Deformation parameter; repeat the flag for a multi-parameter algebra.
    #[arg(long = "kappa", value_name = "K", allow_hyphen_values = true, default_values_t = [0.0])]
    kappa: Vec<f64>,

    /// Phase reference of the representation.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phi: f64,

    /// Space size: the exact dimension for a finite algebra, or the
    /// truncation order for an infinite one (also the triangle side for
    /// `twomode`).
    #[arg(
        long = "dim",
        visible_alias = "trunc",
        visible_alias = "jmax",
        value_name = "N"
    )]
    dim_or_trunc: usize,

    /// Tolerance for the generically-checked identities.
    #[arg(long, env = "WHLAB_TOL", default_value_t = 1e-10)]
    tol: f64,

    /// Seed for randomized property checks.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,

    /// Write the report to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify the defining relations of the one-mode algebra.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Certify phase operators, phase states, and closure relations.
    Phase {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Certify the quantized bases and their mutual unbiasedness.
    Mub {
        #[command(flatten)]
        common: CommonArgs,
        /// Dump all cross-basis overlap moduli as CSV (`row,col,modulus`).
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Certify coherent states of type I and II.
    Coherent {
        #[command(flatten)]
        common: CommonArgs,
        /// Restrict to one family (type II in finite dimension requires z = 0).
        #[arg(long = "type", value_enum)]
        flavor: Option<CoherentType>,
        /// Real part of the coherent-state label z.
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        z_re: f64,
        /// Imaginary part of the coherent-state label z.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        z_im: f64,
    },
    /// Certify the two-mode algebra on a triangular space.
    Twomode {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run every applicable suite with one configuration.
    All {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        z_im: f64,
    },
}

/// Configuration echo embedded in every report. The output path is omitted
/// on purpose: the report must not depend on where it is written.
#[derive(Debug, Serialize)]
struct ConfigEcho {
    subcommand: &'static str,
    kappa: Vec<f64>,
    phi: f64,
    dim_or_trunc: usize,
    tol: f64,
    seed: u64,
    output: OutputFormat,
    #[serde(skip_serializing_if = "Option::is_none")]
    coherent_type: Option<CoherentType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<[f64; 2]>,
}

impl ConfigEcho {
    fn new(subcommand: &'static str, common: &CommonArgs) -> Self {
        Self {
            subcommand,
            kappa: common.kappa.clone(),
            phi: common.phi,
            dim_or_trunc: common.dim_or_trunc,
            tol: common.tol,
            seed: common.seed,
            output: common.output,
            coherent_type: None,
            z: None,
        }
    }
}

#[derive(Debug, Serialize)]
struct Summary {
    passed: usize,
    total: usize,
    all_pass: bool,
}

#[derive(Debug, Serialize)]
struct FullReport {
    version: u32,
    config: ConfigEcho,
    items: Vec<whlab::ReportItem>,
    summary: Summary,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

fn run(command: Command) -> Result<bool, AnyError> {
    if let Some(common) = command.common() {
        if common.tol <= 0.0 {
            return Err(format!("tolerance must be positive, got {}", common.tol).into());
        }
        if common.dim_or_trunc < 2 && !matches!(command, Command::Twomode { .. }) {
            return Err(
                format!("space size must be at least 2, got {}", common.dim_or_trunc).into(),
            );
        }
    }

    let (config, out, mut report) = match &command {
        Command::Verify { common } => {
            let params = AlgebraParams::new(common.kappa.clone(), common.phi)?;
            let report = suites::algebra_suite(&params, common.dim_or_trunc, common.tol)?;
            (
                ConfigEcho::new("verify", common),
                common.out.clone(),
                report,
            )
        }
        Command::Phase { common } => {
            let params = AlgebraParams::new(common.kappa.clone(), common.phi)?;
            let report =
                suites::phase_suite(&params, common.dim_or_trunc, common.tol, common.seed)?;
            (ConfigEcho::new("phase", common), common.out.clone(), report)
        }
        Command::Mub { common, csv } => {
            if let Some(path) = csv {
                write_overlap_csv(common.dim_or_trunc, path)?;
            }
            let report = suites::mub_suite(common.dim_or_trunc, common.tol)?;
            (ConfigEcho::new("mub", common), common.out.clone(), report)
        }
        Command::Coherent {
            common,
            flavor,
            z_re,
            z_im,
        } => {
            let params = AlgebraParams::new(common.kappa.clone(), common.phi)?;
            let z = C64::new(*z_re, *z_im);
            let space = FockSpace::for_params(&params, common.dim_or_trunc)?;
            // surface construction errors for an explicitly requested family
            match flavor {
                Some(CoherentType::I) => {
                    whlab::coherent::kp_state(&params, z, &space, 0.0)?;
                }
                Some(CoherentType::II) => {
                    whlab::coherent::bg_state(&params, z, &space, 0.0)?;
                }
                None => {}
            }
            let mut report =
                suites::coherent_suite(&params, common.dim_or_trunc, z, common.tol, common.seed)?;
            if let Some(f) = flavor {
                let keep: &[&str] = match f {
                    CoherentType::I => &["coherent/kp", "coherent/glauber", "coherent/grassmann"],
                    CoherentType::II => &["coherent/bg", "coherent/glauber", "coherent/grassmann"],
                };
                report
                    .items
                    .retain(|i| keep.iter().any(|p| i.name.starts_with(p)));
            }
            let mut config = ConfigEcho::new("coherent", common);
            config.coherent_type = *flavor;
            config.z = Some([*z_re, *z_im]);
            (config, common.out.clone(), report)
        }
        Command::Twomode { common } => {
            if common.kappa.len() != 1 {
                return Err(Box::new(whlab::Error::NotSingleParameter(
                    common.kappa.len(),
                )));
            }
            let report = suites::twomode_suite(common.kappa[0], common.dim_or_trunc, common.tol)?;
            (
                ConfigEcho::new("twomode", common),
                common.out.clone(),
                report,
            )
        }
        Command::All { common, z_re, z_im } => {
            let params = AlgebraParams::new(common.kappa.clone(), common.phi)?;
            let z = C64::new(*z_re, *z_im);
            let mut report = suites::algebra_suite(&params, common.dim_or_trunc, common.tol)?;
            report.merge(suites::phase_suite(
                &params,
                common.dim_or_trunc,
                common.tol,
                common.seed,
            )?);
            report.merge(suites::coherent_suite(
                &params,
                common.dim_or_trunc,
                z,
                common.tol,
                common.seed,
            )?);
            report.merge(suites::mub_suite(common.dim_or_trunc, common.tol)?);
            if params.r() == 1 {
                let jmax = match params.dimension() {
                    whlab::Dimension::Finite(d) => d - 1,
                    whlab::Dimension::Infinite => common.dim_or_trunc,
                };
                report.merge(suites::twomode_suite(params.kappas()[0], jmax, common.tol)?);
            }
            let mut config = ConfigEcho::new("all", common);
            config.z = Some([*z_re, *z_im]);
            (config, common.out.clone(), report)
        }
    };

    report.sort_by_name();
    let all_pass = report.all_pass();
    let full = FullReport {
        version: 1,
        summary: Summary {
            passed: report.passed(),
            total: report.total(),
            all_pass,
        },
        config,
        items: report.items,
    };

    let rendered = match full.config.output {
        OutputFormat::Json => serde_json::to_string_pretty(&full)? + "\n",
        OutputFormat::Text => render_text(&full),
    };
    match out {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| format!("writing report to {}: {e}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(all_pass)
}

impl Command {
    fn common(&self) -> Option<&CommonArgs> {
        match self {
            Command::Verify { common }
            | Command::Phase { common }
            | Command::Mub { common, .. }
            | Command::Coherent { common, .. }
            | Command::Twomode { common }
            | Command::All { common, .. } => Some(common),
        }
    }
}

fn render_text(full: &FullReport) -> String {
    let name_width = full
        .items
        .iter()
        .map(|i| i.name.len())
        .chain([4])
        .max()
        .unwrap()
        .min(60);
    let mut out = String::new();
    out.push_str(&format!(
        "{:<name_width$}  {:>13}  {:>9}  {:<4}  {}\n",
        "name", "max deviation", "tolerance", "ok", "provenance"
    ));
    for item in &full.items {
        out.push_str(&format!(
            "{:<name_width$}  {:>13.3e}  {:>9.1e}  {:<4}  {}\n",
            item.name,
            item.max_deviation,
            item.tolerance,
            if item.pass { "PASS" } else { "FAIL" },
            item.provenance,
        ));
    }
    out.push_str(&format!(
        "summary: {}/{} passed\n",
        full.summary.passed, full.summary.total
    ));
    out
}

/// All cross-basis overlap moduli of the `d+1` bases, one row per vector
/// pair across distinct bases. Vector `m` of quantized basis `a` has global
/// index `a*d + m`; the canonical vectors occupy `d*d ..`.
fn write_overlap_csv(d: usize, path: &Path) -> Result<(), AnyError> {
    let mut bases: Vec<Vec<whlab::StateVector>> = Vec::with_capacity(d + 1);
    for a in 0..d {
        bases.push(quantized_basis(d, a)?.vectors().to_vec());
    }
    bases.push(canonical_basis(d));

    let mut csv = String::from("row,col,modulus\n");
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            let moduli = whlab::mub::overlap_moduli(&bases[i], &bases[j]);
            for m in 0..d {
                for mp in 0..d {
                    csv.push_str(&format!(
                        "{},{},{}\n",
                        i * d + m,
                        j * d + mp,
                        moduli[(m, mp)]
                    ));
                }
            }
        }
    }
    std::fs::write(path, csv).map_err(|e| format!("writing CSV to {}: {e}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty_report() -> FullReport {
        FullReport {
            version: 1,
            config: ConfigEcho {
                subcommand: "verify",
                kappa: vec![0.0],
                phi: 0.0,
                dim_or_trunc: 4,
                tol: 1e-10,
                seed: 42,
                output: OutputFormat::Json,
                coherent_type: None,
                z: None,
            },
            items: Vec::new(),
            summary: Summary {
                passed: 0,
                total: 0,
                all_pass: true,
            },
        }
    }

    #[test]
    fn empty_item_list_is_valid_json() {
        let v: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&empty_report()).unwrap()).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["summary"]["passed"], 0);
        assert_eq!(v["summary"]["total"], 0);
        assert_eq!(v["items"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn text_rendering_handles_empty_reports() {
        let text = render_text(&empty_report());
        assert!(text.contains("summary: 0/0 passed"));
        for line in text.lines() {
            assert!(line.len() <= 120);
        }
    }
}

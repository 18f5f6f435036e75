//! The `th` command line. Every number it prints is a library result
//! formatted with [`fmt_e`].

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::catalog::{load_catalog, parse_catalog, CatalogEntry, CatalogError, TABLE1_FIXTURE};
use crate::model::{classify_regime, potential_th, Case, ModelError, MoleculeParams, Regime};
use crate::oracle::{molecule_levels, OracleError, DEFAULT_POINTS};
use crate::spectrum::{
    solve, wavefunction_case_iii, wavefunction_case_iv, NormalizedState, SolveOptions,
    SpectrumError, SpectrumReport,
};

/// Reference thresholds e^{−b_h r_e} for the built-in fixture.
pub const TABLE1_REFERENCE: [(&str, f64); 6] = [
    ("HF", 0.168490115),
    ("N2", 0.047071975),
    ("I2", 0.003478812),
    ("H2", 0.301313237),
    ("O2", 0.043832785),
    ("O2+", 0.040649248),
];

pub const TABLE1_TOL: f64 = 1e-8;
/// Largest relative deviation from the oracle accepted by `--validate`.
pub const VALIDATE_RTOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("self-test mismatch: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Catalog(_) | CliError::Model(_) | CliError::Usage(_) => 2,
            CliError::Spectrum(e) => match e {
                SpectrumError::Model(_)
                | SpectrumError::WrongRegime { .. }
                | SpectrumError::Energy { .. }
                | SpectrumError::NoSuchState { .. }
                | SpectrumError::Radius { .. } => 2,
                _ => 3,
            },
            CliError::Oracle(_) | CliError::Io { .. } => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "th", version, about = "Tietz-Hua bound states of diatomic molecules")]
pub struct Cli {
    /// Molecule catalog; the built-in six-molecule shape table when absent.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Restrict to one catalog entry.
    #[arg(long, global = true)]
    pub molecule: Option<String>,
    /// Override c_h for the selected molecules.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub ch: Option<f64>,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cross-check spectra against the Numerov oracle.
    #[arg(long, global = true)]
    pub validate: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    Potential,
    Wavefunction,
}

#[derive(Debug, clap::Args)]
pub struct Range {
    #[arg(long, allow_hyphen_values = true)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long, default_value_t = 1001)]
    pub samples: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regime, threshold e^{−b_h r_e} and singular point r₀.
    Classify,
    /// Bound-state energies.
    Spectrum,
    /// Normalized radial function of state n_r on a grid (CSV).
    Wavefunction {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        range: Range,
    },
    /// Potential or wavefunction on a grid (CSV).
    Curve {
        #[arg(value_enum)]
        what: CurveKind,
        /// Bound state index.
        #[arg(long, conflicts_with = "energy")]
        n: Option<usize>,
        /// Unnormalized solution at an arbitrary energy (cases III and IV).
        #[arg(long)]
        energy: Option<f64>,
        #[command(flatten)]
        range: Range,
    },
    /// Thresholds of the built-in shape table against their reference values.
    Table1,
    /// Check every catalog entry; complete ones are solved and compared with the oracle.
    Validate,
}

/// C-style `%.10e`: `1.2345678900e+04`.
pub fn fmt_e(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    let s = format!("{x:.10e}");
    let (mant, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mant}e{sign}{:02}", exp.abs())
}

/// Parse `args` (program name first), run, print errors, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("th: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let mut out = String::new();
    let result = match &cli.command {
        Command::Classify => cmd_classify(cli, &mut out),
        Command::Spectrum => cmd_spectrum(cli, &mut out),
        Command::Wavefunction { n, range } => {
            let p = single_params(cli)?;
            wavefunction_curve(&p, *n, range, &mut out)
        }
        Command::Curve {
            what,
            n,
            energy,
            range,
        } => cmd_curve(cli, *what, *n, *energy, range, &mut out),
        Command::Table1 => cmd_table1(&mut out),
        Command::Validate => cmd_validate(cli, &mut out),
    };
    // tables are emitted even when a self-test fails
    if result.is_ok() || matches!(result, Err(CliError::Mismatch(_))) {
        emit(cli, &out)?;
    }
    result
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn entries(cli: &Cli) -> Result<Vec<CatalogEntry>, CliError> {
    let all = match &cli.catalog {
        Some(path) => load_catalog(path)?,
        None => parse_catalog(TABLE1_FIXTURE)?,
    };
    match &cli.molecule {
        None => Ok(all),
        Some(name) => {
            let hit: Vec<_> = all.into_iter().filter(|e| &e.name == name).collect();
            if hit.is_empty() {
                Err(CliError::Usage(format!("no molecule named {name:?} in the catalog")))
            } else {
                Ok(hit)
            }
        }
    }
}

fn single_params(cli: &Cli) -> Result<MoleculeParams, CliError> {
    let list = entries(cli)?;
    if list.len() != 1 {
        return Err(CliError::Usage(
            "select one molecule with --molecule".into(),
        ));
    }
    Ok(list[0].params(cli.ch)?)
}

fn cmd_classify(cli: &Cli, out: &mut String) -> Result<(), CliError> {
    out.push_str("molecule\tc_h\tcase\tthreshold\tr0\n");
    for e in entries(cli)? {
        let regime = e.regime(cli.ch)?;
        let ch = cli.ch.or(e.c_h).expect("regime() checked c_h");
        let r0 = regime.r0.map_or_else(|| "-".to_string(), fmt_e);
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            e.name,
            fmt_e(ch),
            regime.case,
            fmt_e(regime.threshold),
            r0
        )
        .unwrap();
    }
    Ok(())
}

/// Per-level relative deviations from the oracle, or a description of a
/// level-count mismatch.
fn oracle_deviations(report: &SpectrumReport) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let levels = molecule_levels(&report.params, DEFAULT_POINTS)?;
    let oracle: Vec<f64> = levels.iter().map(|l| l.e).collect();
    let dev = report
        .states
        .iter()
        .zip(&oracle)
        .map(|(s, o)| ((s.e - o) / o).abs())
        .collect();
    Ok((oracle, dev))
}

fn cmd_spectrum(cli: &Cli, out: &mut String) -> Result<(), CliError> {
    out.push_str("molecule\tn_r\tE_cm1\tmethod");
    if cli.validate {
        out.push_str("\tE_oracle_cm1\trel_dev");
    }
    out.push('\n');
    let mut failures = Vec::new();
    for e in entries(cli)? {
        let params = e.params(cli.ch)?;
        let report = solve(&params, &SolveOptions::default())?;
        for w in &report.warnings {
            eprintln!("th: {}: {w}", e.name);
        }
        let (oracle, dev) = if cli.validate {
            oracle_deviations(&report)?
        } else {
            (Vec::new(), Vec::new())
        };
        if cli.validate && oracle.len() != report.states.len() {
            failures.push(format!(
                "{}: {} levels, oracle finds {}",
                e.name,
                report.states.len(),
                oracle.len()
            ));
        }
        for (i, s) in report.states.iter().enumerate() {
            write!(out, "{}\t{}\t{}\t{}", e.name, s.n_r, fmt_e(s.e), s.method).unwrap();
            if cli.validate {
                let o = oracle.get(i).copied().unwrap_or(f64::NAN);
                let d = dev.get(i).copied().unwrap_or(f64::NAN);
                if !(d <= VALIDATE_RTOL) {
                    failures.push(format!("{} n_r={}: relative deviation {d:e}", e.name, s.n_r));
                }
                write!(out, "\t{}\t{}", fmt_e(o), fmt_e(d)).unwrap();
            }
            out.push('\n');
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(failures.join("; ")))
    }
}

fn grid(params: &MoleculeParams, regime: &Regime, range: &Range) -> Result<Vec<f64>, CliError> {
    let lo = range.r_min.unwrap_or(match regime.case {
        Case::I => regime.domain_lo + 1e-3 * (params.r_e - regime.domain_lo),
        _ => 0.0,
    });
    let hi = range.r_max.unwrap_or(params.r_e + 60.0 / params.b_h);
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Usage(format!("bad radial range [{lo}, {hi}]")));
    }
    if range.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    let m = (range.samples - 1) as f64;
    Ok((0..range.samples)
        .map(|i| if i == range.samples - 1 { hi } else { lo + (hi - lo) * i as f64 / m })
        .collect())
}

fn wavefunction_curve(
    params: &MoleculeParams,
    n: usize,
    range: &Range,
    out: &mut String,
) -> Result<(), CliError> {
    let report = solve(params, &SolveOptions::default())?;
    let state = report.states.get(n).ok_or(SpectrumError::NoSuchState {
        n_r: n,
        n_r_max: report.n_r_max,
    })?;
    let wf = NormalizedState::new(params, state)?;
    out.push_str("r_A,psi\n");
    for r in grid(params, &report.regime, range)? {
        writeln!(out, "{},{}", fmt_e(r), fmt_e(wf.value(r)?)).unwrap();
    }
    Ok(())
}

fn cmd_curve(
    cli: &Cli,
    what: CurveKind,
    n: Option<usize>,
    energy: Option<f64>,
    range: &Range,
    out: &mut String,
) -> Result<(), CliError> {
    let params = single_params(cli)?;
    let regime = classify_regime(&params);
    match (what, n, energy) {
        (CurveKind::Potential, None, None) => {
            out.push_str("r_A,V_cm1\n");
            for r in grid(&params, &regime, range)? {
                writeln!(out, "{},{}", fmt_e(r), fmt_e(potential_th(&params, r)?)).unwrap();
            }
            Ok(())
        }
        (CurveKind::Potential, _, _) => Err(CliError::Usage(
            "--n and --energy apply to wavefunction curves only".into(),
        )),
        (CurveKind::Wavefunction, Some(n), None) => wavefunction_curve(&params, n, range, out),
        (CurveKind::Wavefunction, None, Some(e)) => {
            let f = match regime.case {
                Case::III => wavefunction_case_iii,
                Case::IV => wavefunction_case_iv,
                other => {
                    return Err(CliError::Usage(format!(
                        "--energy needs a case III or IV molecule, this one is case {other}; use --n"
                    )))
                }
            };
            out.push_str("r_A,psi\n");
            for r in grid(&params, &regime, range)? {
                writeln!(out, "{},{}", fmt_e(r), fmt_e(f(&params, e, r)?)).unwrap();
            }
            Ok(())
        }
        (CurveKind::Wavefunction, _, _) => {
            Err(CliError::Usage("wavefunction curves need --n or --energy".into()))
        }
    }
}

/// One row of the threshold self-test.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub name: String,
    pub b_h: f64,
    pub r_e: f64,
    /// Computed e^{−b_h r_e}.
    pub threshold: f64,
    pub reference: f64,
}

impl Table1Row {
    pub fn abs_dev(&self) -> f64 {
        (self.threshold - self.reference).abs()
    }
}

/// Thresholds of the built-in shape fixture next to their reference values.
pub fn table1_rows() -> Result<Vec<Table1Row>, CliError> {
    parse_catalog(TABLE1_FIXTURE)?
        .into_iter()
        .map(|e| {
            let reference = TABLE1_REFERENCE
                .iter()
                .find(|(n, _)| *n == e.name)
                .map(|&(_, v)| v)
                .ok_or_else(|| CliError::Mismatch(format!("no reference for {}", e.name)))?;
            Ok(Table1Row {
                threshold: crate::model::threshold_from_shape(e.b_h, e.r_e),
                name: e.name,
                b_h: e.b_h,
                r_e: e.r_e,
                reference,
            })
        })
        .collect()
}

fn cmd_table1(out: &mut String) -> Result<(), CliError> {
    out.push_str("molecule\tbh_invA\tre_A\tch_min\treference\tabs_dev\n");
    let mut failures = Vec::new();
    for row in table1_rows()? {
        let dev = row.abs_dev();
        if !(dev <= TABLE1_TOL) {
            failures.push(format!("{}: {} vs {}", row.name, row.threshold, row.reference));
        }
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            row.name,
            fmt_e(row.b_h),
            fmt_e(row.r_e),
            fmt_e(row.threshold),
            fmt_e(row.reference),
            fmt_e(dev)
        )
        .unwrap();
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(failures.join("; ")))
    }
}

fn cmd_validate(cli: &Cli, out: &mut String) -> Result<(), CliError> {
    out.push_str("molecule\tcase\tstates\toracle_states\tmax_rel_dev\tstatus\n");
    let mut failures = Vec::new();
    for e in entries(cli)? {
        let complete = e.d.is_some() && e.mu.is_some() && cli.ch.or(e.c_h).is_some();
        if !complete {
            let case = match e.regime(cli.ch) {
                Ok(r) => r.case.to_string(),
                Err(_) => "-".into(),
            };
            writeln!(out, "{}\t{case}\t-\t-\t-\tthreshold-only", e.name).unwrap();
            continue;
        }
        let params = e.params(cli.ch)?;
        let report = solve(&params, &SolveOptions::default())?;
        let (oracle, dev) = oracle_deviations(&report)?;
        let worst = dev.iter().copied().fold(0.0, f64::max);
        let ok = oracle.len() == report.states.len() && worst <= VALIDATE_RTOL;
        if !ok {
            failures.push(e.name.clone());
        }
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            e.name,
            report.regime.case,
            report.states.len(),
            oracle.len(),
            fmt_e(worst),
            if ok { "ok" } else { "mismatch" }
        )
        .unwrap();
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("oracle disagrees for {}", failures.join(", "))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_style_exponent() {
        assert_eq!(fmt_e(12345.6789), "1.2345678900e+04");
        assert_eq!(fmt_e(-0.00012), "-1.2000000000e-04");
        assert_eq!(fmt_e(0.0), "0.0000000000e+00");
        assert_eq!(fmt_e(1e-300), "1.0000000000e-300");
        assert_eq!(fmt_e(f64::NAN), "nan");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Mismatch("x".into()).exit_code(), 4);
        let numerical = SpectrumError::SpecFun(crate::specfun::SpecFunError::Convergence { partial: 0.0, terms: 1 });
        assert_eq!(CliError::Spectrum(numerical).exit_code(), 3);
        let wrong = SpectrumError::NoSuchState { n_r: 5, n_r_max: 2 };
        assert_eq!(CliError::Spectrum(wrong).exit_code(), 2);
    }

    #[test]
    fn table1_self_test_passes() {
        let mut out = String::new();
        cmd_table1(&mut out).unwrap();
        assert_eq!(out.lines().count(), 7);
    }
}

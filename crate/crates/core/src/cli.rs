//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input (bad flag, parameter out of range,
//! non-Fibonacci size for `dual-check`), 3 numerical failure (singular site,
//! QR non-convergence), 1 IO failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::duality::{dual_residual, duality_params, fourier_dual, random_residuals};
use crate::eigen::{eigenpairs, EigenOptions};
use crate::error::{Error, Result};
use crate::lyapunov::{le_analytic, le_transfer, TransferOptions, DEFAULT_BURN_IN, DEFAULT_STEPS};
use crate::model::{build_hamiltonian, Boundary, ModelParams, DEFAULT_SINGULAR_EPS, DEFAULT_SITES, GOLDEN_ALPHA};
use crate::observables::{classify, median, SpectralTag, Tolerances, DEFAULT_IM_TOL, DEFAULT_RE_TOL};
use crate::sweep::{
    emit_table, fmt_float, le_map, model_metadata, run_sweep, spectrum_row, v_range, write_table, EnergyGrid,
    Metadata, SweepConfig, Table, TableFormat,
};

pub const JOBS_ENV: &str = "QUASISPEC_JOBS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "quasispec", version, about = "Spectra and Lyapunov exponents of the i*cot quasiperiodic chain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Diagonalize one Hamiltonian and write the classified spectrum.
    Spectrum(SpectrumArgs),
    /// Lyapunov exponent at one energy, or a closed-form map over an energy grid.
    Le(LeArgs),
    /// Spectra over a range of potential strengths.
    Sweep(SweepArgs),
    /// Per-state inverse participation ratios.
    Ipr(SpectrumArgs),
    /// Residual of eigenstates in the Fourier-dual equation (Fibonacci L only).
    DualCheck(DualCheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BcArg {
    Open,
    Periodic,
}

impl From<BcArg> for Boundary {
    fn from(b: BcArg) -> Self {
        match b {
            BcArg::Open => Boundary::Open,
            BcArg::Periodic => Boundary::Periodic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Gnuplot,
}

impl From<FormatArg> for TableFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => TableFormat::Csv,
            FormatArg::Gnuplot => TableFormat::Gnuplot,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Analytic,
    Transfer,
    Both,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// Number of sites.
    #[arg(long = "L", default_value_t = DEFAULT_SITES)]
    pub sites: usize,
    /// Frequency alpha in (0, 1).
    #[arg(long, default_value_t = GOLDEN_ALPHA)]
    pub alpha: f64,
    /// Phase offset phi in [0, 1).
    #[arg(long, default_value_t = 0.0)]
    pub phase: f64,
    #[arg(long, value_enum, default_value_t = BcArg::Open)]
    pub bc: BcArg,
    /// Smallest accepted |sin(pi(alpha n + phi))|.
    #[arg(long = "singular-eps", default_value_t = DEFAULT_SINGULAR_EPS)]
    pub singular_eps: f64,
}

impl LatticeArgs {
    fn params(&self, strength: f64) -> ModelParams {
        ModelParams::new(self.sites, strength)
            .with_alpha(self.alpha)
            .with_phase(self.phase)
            .with_boundary(self.bc.into())
            .with_singular_eps(self.singular_eps)
    }
}

#[derive(Debug, Args)]
pub struct TolArgs {
    #[arg(long = "re-tol", default_value_t = DEFAULT_RE_TOL)]
    pub re_tol: f64,
    #[arg(long = "im-tol", default_value_t = DEFAULT_IM_TOL)]
    pub im_tol: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Result<Tolerances> {
        let t = Tolerances {
            re_tol: self.re_tol,
            im_tol: self.im_tol,
        };
        t.validate()?;
        Ok(t)
    }
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output file; `-` writes the table to standard output. Required for tables.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Potential strength V >= 0.
    #[arg(long = "V", default_value_t = 1.0)]
    pub strength: f64,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct LeArgs {
    /// Energy as `a`, `bi` or `a+bi`.
    #[arg(long = "E", allow_hyphen_values = true)]
    pub energy: Option<String>,
    #[arg(long = "V", default_value_t = 1.0)]
    pub strength: f64,
    #[arg(long, value_enum, default_value_t = Method::Analytic)]
    pub method: Method,
    /// Transfer-matrix product length.
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    pub steps: usize,
    #[arg(long = "burn-in", default_value_t = DEFAULT_BURN_IN)]
    pub burn_in: usize,
    #[arg(long, default_value_t = GOLDEN_ALPHA)]
    pub alpha: f64,
    /// Orbit phase for the transfer matrices.
    #[arg(long = "seed-phase", default_value_t = 0.0)]
    pub seed_phase: f64,
    #[arg(long = "singular-eps", default_value_t = DEFAULT_SINGULAR_EPS)]
    pub singular_eps: f64,
    /// Real-axis grid `min:max:points` (closed-form map mode).
    #[arg(long = "re-range", allow_hyphen_values = true)]
    pub re_range: Option<String>,
    /// Imaginary-axis grid `min:max:points` (closed-form map mode).
    #[arg(long = "im-range", allow_hyphen_values = true)]
    pub im_range: Option<String>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    #[arg(long = "v-from", default_value_t = 0.0)]
    pub v_from: f64,
    #[arg(long = "v-to", default_value_t = 3.0)]
    pub v_to: f64,
    #[arg(long = "v-step", default_value_t = 0.1)]
    pub v_step: f64,
    #[command(flatten)]
    pub tol: TolArgs,
    /// Worker threads; defaults to $QUASISPEC_JOBS, else 1.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Keep going when a V point fails; failures are reported on stderr.
    #[arg(long = "skip-errors")]
    pub skip_errors: bool,
    /// Also write closed-form exponent maps on this file.
    #[arg(long = "le-map-out")]
    pub le_map_out: Option<PathBuf>,
    #[arg(long = "re-range", allow_hyphen_values = true)]
    pub re_range: Option<String>,
    #[arg(long = "im-range", allow_hyphen_values = true)]
    pub im_range: Option<String>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct DualCheckArgs {
    /// Number of sites; must be a Fibonacci number.
    #[arg(long = "L", default_value_t = DEFAULT_SITES)]
    pub sites: usize,
    #[arg(long = "V", default_value_t = 1.0)]
    pub strength: f64,
    #[arg(long, value_enum, default_value_t = BcArg::Periodic)]
    pub bc: BcArg,
    /// Random unit vectors in the baseline.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (also `i`, `-i`, exponents like `1e-3`).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::invalid("E", format!("cannot parse complex number {s:?} (use a, bi or a+bi)"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let parse_real = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(&t)?, 0.0));
    };
    // Split before the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => parse_real(x)?,
    };
    let re = if re.is_empty() { 0.0 } else { parse_real(re)? };
    Ok(Complex64::new(re, im))
}

/// Parses `min:max:points`.
pub fn parse_range(name: &'static str, s: &str) -> Result<(f64, f64, usize)> {
    let bad = || Error::invalid(name, format!("expected min:max:points, got {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo = parts[0].trim().parse::<f64>().map_err(|_| bad())?;
    let hi = parts[1].trim().parse::<f64>().map_err(|_| bad())?;
    let n = parts[2].trim().parse::<usize>().map_err(|_| bad())?;
    Ok((lo, hi, n))
}

fn energy_grid(re: Option<&str>, im: Option<&str>) -> Result<Option<EnergyGrid>> {
    if re.is_none() && im.is_none() {
        return Ok(None);
    }
    let (re_min, re_max, re_points) = re.map(|s| parse_range("re-range", s)).transpose()?.unwrap_or((0.0, 0.0, 1));
    let (im_min, im_max, im_points) = im.map(|s| parse_range("im-range", s)).transpose()?.unwrap_or((0.0, 0.0, 1));
    let g = EnergyGrid {
        re_min,
        re_max,
        re_points,
        im_min,
        im_max,
        im_points,
    };
    g.validate()?;
    Ok(Some(g))
}

fn resolve_jobs(flag: Option<usize>) -> Result<usize> {
    let jobs = match flag {
        Some(j) => j,
        None => match std::env::var(JOBS_ENV) {
            Ok(v) => v
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid("jobs", format!("{JOBS_ENV}={v:?} is not a positive integer")))?,
            Err(_) => 1,
        },
    };
    if jobs == 0 {
        return Err(Error::invalid("jobs", "jobs must be >= 1"));
    }
    Ok(jobs)
}

fn require_out(out: &OutArgs) -> Result<&PathBuf> {
    out.out
        .as_ref()
        .ok_or_else(|| Error::invalid("out", "--out is required for tables (use '-' for standard output)"))
}

fn write_out(out: &OutArgs, table: Table<'_>, meta: &Metadata, stdout: &mut dyn Write) -> Result<()> {
    let path = require_out(out)?;
    let format = out.format.into();
    if path.as_os_str() == "-" {
        write_table(table, format, meta, stdout).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })
    } else {
        emit_table(table, format, meta, path)
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_validation() {
        EXIT_INVALID
    } else if e.is_numeric() {
        EXIT_NUMERIC
    } else {
        EXIT_IO
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_INVALID
                }
            };
        }
    };
    match execute(&cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Spectrum(a) => cmd_spectrum(a, stdout),
        Command::Le(a) => cmd_le(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout, stderr),
        Command::Ipr(a) => cmd_ipr(a, stdout),
        Command::DualCheck(a) => cmd_dual_check(a, stdout, stderr),
    }
}

fn cmd_spectrum(a: &SpectrumArgs, stdout: &mut dyn Write) -> Result<()> {
    let p = a.lattice.params(a.strength);
    p.validate()?;
    let tol = a.tol.tolerances()?;
    require_out(&a.out)?;
    let row = spectrum_row(&p, tol, &EigenOptions::default())?;
    let mut meta = model_metadata(&p, Some(tol));
    meta.insert(0, ("V".into(), fmt_float(p.strength)));
    write_out(&a.out, Table::Spectrum(std::slice::from_ref(&row)), &meta, stdout)
}

fn cmd_le(a: &LeArgs, stdout: &mut dyn Write) -> Result<()> {
    crate::model::validate_strength(a.strength)?;
    let io = |source| Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };

    if let Some(grid) = energy_grid(a.re_range.as_deref(), a.im_range.as_deref())? {
        if a.energy.is_some() {
            return Err(Error::invalid("E", "--E cannot be combined with --re-range/--im-range"));
        }
        if a.method != Method::Analytic {
            return Err(Error::invalid("method", "grid maps use the closed form only (--method analytic)"));
        }
        require_out(&a.out)?;
        let map = le_map(a.strength, &grid)?;
        let meta = vec![("V".to_string(), fmt_float(a.strength))];
        return write_out(&a.out, Table::LeMap(std::slice::from_ref(&map)), &meta, stdout);
    }

    let energy = parse_complex(
        a.energy
            .as_deref()
            .ok_or_else(|| Error::invalid("E", "--E is required unless a grid is given"))?,
    )?;
    let transfer = || {
        let p = ModelParams::new(2, a.strength)
            .with_alpha(a.alpha)
            .with_singular_eps(a.singular_eps);
        p.validate()?;
        if !(0.0..1.0).contains(&a.seed_phase) {
            return Err(Error::invalid("seed-phase", format!("0 <= seed-phase < 1 required, got {}", a.seed_phase)));
        }
        le_transfer(
            energy,
            &p,
            &TransferOptions {
                n_steps: a.steps,
                burn_in: a.burn_in,
                seed_phase: a.seed_phase,
                ..TransferOptions::default()
            },
        )
    };
    match a.method {
        Method::Analytic => {
            let g = le_analytic(energy, a.strength)?;
            writeln!(stdout, "gamma_analytic = {g}").map_err(io)?;
        }
        Method::Transfer => {
            let est = transfer()?;
            writeln!(stdout, "gamma_transfer = {}", est.gamma).map_err(io)?;
            writeln!(stdout, "n_steps = {}\nburn_in = {}\nlog_growth = {}", est.n_steps, est.burn_in, est.log_growth)
                .map_err(io)?;
        }
        Method::Both => {
            let g = le_analytic(energy, a.strength)?;
            let est = transfer()?;
            writeln!(stdout, "gamma_analytic = {g}").map_err(io)?;
            writeln!(stdout, "gamma_transfer = {}", est.gamma).map_err(io)?;
            writeln!(stdout, "difference = {}", est.gamma - g).map_err(io)?;
        }
    }
    Ok(())
}

fn cmd_sweep(a: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let v_grid = v_range(a.v_from, a.v_to, a.v_step)?;
    let base = a.lattice.params(v_grid[0]);
    let e_grid = energy_grid(a.re_range.as_deref(), a.im_range.as_deref())?;
    if e_grid.is_some() != a.le_map_out.is_some() {
        return Err(Error::invalid(
            "le-map-out",
            "--le-map-out and --re-range/--im-range must be given together",
        ));
    }
    let cfg = SweepConfig {
        tolerances: a.tol.tolerances()?,
        e_grid,
        jobs: resolve_jobs(a.jobs)?,
        skip_errors: a.skip_errors,
        ..SweepConfig::new(v_grid, base)
    };
    cfg.validate()?;
    require_out(&a.out)?;

    let out = run_sweep(&cfg)?;
    for f in &out.failures {
        let _ = writeln!(stderr, "skipped: {f}");
    }
    if out.rows.is_empty() {
        return Err(out.failures.into_iter().next().unwrap_or_else(|| Error::invalid("v_grid", "no V points")));
    }
    let mut meta = model_metadata(&cfg.base, Some(cfg.tolerances));
    meta.insert(0, ("v_step".into(), fmt_float(a.v_step)));
    meta.insert(0, ("v_to".into(), fmt_float(a.v_to)));
    meta.insert(0, ("v_from".into(), fmt_float(a.v_from)));
    write_out(&a.out, Table::Spectrum(&out.rows), &meta, stdout)?;
    if let Some(path) = &a.le_map_out {
        emit_table(Table::LeMap(&out.le_maps), a.out.format.into(), &Metadata::new(), path)?;
    }
    Ok(())
}

fn cmd_ipr(a: &SpectrumArgs, stdout: &mut dyn Write) -> Result<()> {
    let p = a.lattice.params(a.strength);
    p.validate()?;
    let tol = a.tol.tolerances()?;
    let path = require_out(&a.out)?.clone();
    let row = spectrum_row(&p, tol, &EigenOptions::default())?;

    let mut text = Vec::new();
    let mut meta = model_metadata(&p, Some(tol));
    meta.insert(0, ("V".into(), fmt_float(p.strength)));
    let sep = match a.out.format {
        FormatArg::Csv => ",",
        FormatArg::Gnuplot => " ",
    };
    let mut render = || -> std::io::Result<()> {
        writeln!(text, "# quasispec ipr schema={} version={}", crate::sweep::SCHEMA_VERSION, crate::sweep::TOOL_VERSION)?;
        let line: Vec<String> = meta.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(text, "# {}", line.join(" "))?;
        for tag in [SpectralTag::RealBand, SpectralTag::ImaginaryAxis, SpectralTag::Other] {
            let iprs: Vec<f64> = row.with_tag(tag).map(|s| s.ipr).collect();
            let med = median(&iprs).map(fmt_float).unwrap_or_else(|| "nan".into());
            writeln!(text, "# {tag}: count={} median_ipr={med}", iprs.len())?;
        }
        let head = ["index", "re_E", "im_E", "class", "ipr"].join(sep);
        match a.out.format {
            FormatArg::Csv => writeln!(text, "{head}")?,
            FormatArg::Gnuplot => writeln!(text, "# {head}")?,
        }
        for (i, s) in row.states.iter().enumerate() {
            writeln!(
                text,
                "{i}{sep}{}{sep}{}{sep}{}{sep}{}",
                fmt_float(s.energy.re),
                fmt_float(s.energy.im),
                s.tag,
                fmt_float(s.ipr)
            )?;
        }
        Ok(())
    };
    render().map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    write_bytes(&path, &text, stdout)
}

fn write_bytes(path: &PathBuf, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    let res = if path.as_os_str() == "-" {
        stdout.write_all(bytes)
    } else {
        std::fs::write(path, bytes)
    };
    res.map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })
}

fn cmd_dual_check(a: &DualCheckArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    crate::model::validate_strength(a.strength)?;
    let (p, alpha) = duality_params(a.sites, a.strength)?;
    let p = p.with_boundary(a.bc.into());
    let tol = a.tol.tolerances()?;
    if a.samples == 0 {
        return Err(Error::invalid("samples", "at least one random sample is required"));
    }
    let path = require_out(&a.out)?.clone();

    let h = build_hamiltonian(&p)?;
    let pairs = eigenpairs(h.matrix())?;
    let residuals: Vec<f64> = pairs
        .iter()
        .map(|pair| dual_residual(&fourier_dual(&pair.vector)?, pair.value, p.strength, alpha, p.phase))
        .collect::<Result<_>>()?;
    let energies: Vec<Complex64> = pairs.iter().map(|q| q.value).collect();
    let random = random_residuals(&energies, p.strength, alpha, p.phase, a.samples, a.seed)?;
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (mean_eig, mean_rand) = (mean(&residuals), mean(&random));

    let sep = match a.out.format {
        FormatArg::Csv => ",",
        FormatArg::Gnuplot => " ",
    };
    let mut text = Vec::new();
    let mut render = || -> std::io::Result<()> {
        writeln!(text, "# quasispec dual_check schema={} version={}", crate::sweep::SCHEMA_VERSION, crate::sweep::TOOL_VERSION)?;
        writeln!(
            text,
            "# L={} V={} alpha={}/{} phase={} bc={} samples={} seed={}",
            p.sites,
            fmt_float(p.strength),
            alpha.numerator,
            alpha.denominator,
            fmt_float(p.phase),
            p.boundary,
            a.samples,
            a.seed
        )?;
        writeln!(
            text,
            "# mean_eigen_residual={} mean_random_residual={}",
            fmt_float(mean_eig),
            fmt_float(mean_rand)
        )?;
        let head = ["index", "re_E", "im_E", "class", "residual"].join(sep);
        match a.out.format {
            FormatArg::Csv => writeln!(text, "{head}")?,
            FormatArg::Gnuplot => writeln!(text, "# {head}")?,
        }
        for (i, (pair, r)) in pairs.iter().zip(&residuals).enumerate() {
            let tag = classify(pair.value, p.strength, tol).tag;
            writeln!(
                text,
                "{i}{sep}{}{sep}{}{sep}{tag}{sep}{}",
                fmt_float(pair.value.re),
                fmt_float(pair.value.im),
                fmt_float(*r)
            )?;
        }
        Ok(())
    };
    render().map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    write_bytes(&path, &text, stdout)?;
    let _ = writeln!(
        stderr,
        "mean eigenstate residual {mean_eig:e}, mean random residual {mean_rand:e}, ratio {:.3e}",
        mean_rand / mean_eig
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_grammar() {
        assert_eq!(parse_complex("1.5").unwrap(), c(1.5, 0.0));
        assert_eq!(parse_complex("-1.5").unwrap(), c(-1.5, 0.0));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("1-i").unwrap(), c(1.0, -1.0));
        assert_eq!(parse_complex("-0.5-0.25i").unwrap(), c(-0.5, -0.25));
        assert_eq!(parse_complex("1e-3+2e-2i").unwrap(), c(1e-3, 2e-2));
        assert_eq!(parse_complex("1e-3").unwrap(), c(1e-3, 0.0));
        assert_eq!(parse_complex(" 3 + 4i ").unwrap(), c(3.0, 4.0));
        for bad in ["", "abc", "1+2", "1+2j", "i2", "1++2i"] {
            assert!(parse_complex(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn range_grammar() {
        assert_eq!(parse_range("re-range", "-3:3:601").unwrap(), (-3.0, 3.0, 601));
        assert!(parse_range("re-range", "-3:3").is_err());
        assert!(parse_range("re-range", "a:3:4").is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::invalid("L", "x")), EXIT_INVALID);
        assert_eq!(exit_code(&Error::NoConvergence { index: 3 }), EXIT_NUMERIC);
        assert_eq!(
            exit_code(&Error::SingularPotential {
                site: 2,
                sin_abs: 0.0,
                eps: 1e-12
            }),
            EXIT_NUMERIC
        );
        assert_eq!(
            exit_code(&Error::GridMismatch {
                denominator: 3,
                len: 4
            }),
            EXIT_INVALID
        );
    }
}

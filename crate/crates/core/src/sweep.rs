//! Potential-strength sweeps, Lyapunov-exponent maps and their tables.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::eigen::{eigenpairs_with, EigenOptions};
use crate::error::{Error, Result};
use crate::lyapunov::le_analytic;
use crate::model::{build_hamiltonian, validate_strength, ModelParams};
use crate::observables::{diagnose_spectrum, SpectralTag, Tolerances};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One eigenvalue with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateRecord {
    pub energy: Complex64,
    pub tag: SpectralTag,
    pub ipr: f64,
    pub gamma: f64,
}

/// Full spectrum at one potential strength, in canonical (Re, Im) order.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagramRow {
    pub strength: f64,
    pub states: Vec<StateRecord>,
}

impl PhaseDiagramRow {
    pub fn count(&self, tag: SpectralTag) -> usize {
        self.states.iter().filter(|s| s.tag == tag).count()
    }

    pub fn with_tag(&self, tag: SpectralTag) -> impl Iterator<Item = &StateRecord> {
        self.states.iter().filter(move |s| s.tag == tag)
    }
}

/// Diagonalizes the model at `p` and diagnoses every state.
pub fn spectrum_row(p: &ModelParams, tol: Tolerances, eig: &EigenOptions) -> Result<PhaseDiagramRow> {
    let h = build_hamiltonian(p)?;
    let pairs = eigenpairs_with(h.matrix(), eig)?;
    let diag = diagnose_spectrum(&pairs, p, tol)?;
    Ok(PhaseDiagramRow {
        strength: p.strength,
        states: pairs
            .iter()
            .zip(&diag)
            .map(|(pair, d)| StateRecord {
                energy: pair.value,
                tag: d.class.tag,
                ipr: d.ipr,
                gamma: d.gamma_analytic,
            })
            .collect(),
    })
}

/// Rectangular grid over (Re E, Im E), endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyGrid {
    pub re_min: f64,
    pub re_max: f64,
    pub re_points: usize,
    pub im_min: f64,
    pub im_max: f64,
    pub im_points: usize,
}

impl EnergyGrid {
    pub fn validate(&self) -> Result<()> {
        for (name, x) in [
            ("re_min", self.re_min),
            ("re_max", self.re_max),
            ("im_min", self.im_min),
            ("im_max", self.im_max),
        ] {
            if !x.is_finite() {
                return Err(Error::invalid(name, "grid bounds must be finite"));
            }
        }
        if self.re_points == 0 || self.im_points == 0 {
            return Err(Error::invalid("grid", "grid needs at least one point per axis"));
        }
        if self.re_max < self.re_min || self.im_max < self.im_min {
            return Err(Error::invalid("grid", "grid bounds must satisfy min <= max"));
        }
        Ok(())
    }

    /// Nodes in lexicographic (Re, Im) order.
    pub fn nodes(&self) -> Vec<Complex64> {
        let re = linspace(self.re_min, self.re_max, self.re_points);
        let im = linspace(self.im_min, self.im_max, self.im_points);
        re.iter()
            .flat_map(|&x| im.iter().map(move |&y| Complex64::new(x, y)))
            .collect()
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

/// γ on an energy grid at fixed V.
#[derive(Debug, Clone, PartialEq)]
pub struct LeGrid {
    pub strength: f64,
    pub grid: EnergyGrid,
    /// `(E, γ)` in lexicographic (Re, Im) order.
    pub nodes: Vec<(Complex64, f64)>,
}

pub fn le_map(strength: f64, grid: &EnergyGrid) -> Result<LeGrid> {
    validate_strength(strength)?;
    grid.validate()?;
    let nodes = grid
        .nodes()
        .into_iter()
        .map(|e| Ok((e, le_analytic(e, strength)?)))
        .collect::<Result<_>>()?;
    Ok(LeGrid {
        strength,
        grid: *grid,
        nodes,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Ascending potential strengths.
    pub v_grid: Vec<f64>,
    /// Model parameters; `strength` is overwritten per grid point.
    pub base: ModelParams,
    pub tolerances: Tolerances,
    pub eigen: EigenOptions,
    /// Also evaluate γ on this grid at every V.
    pub e_grid: Option<EnergyGrid>,
    /// Worker threads, at least 1.
    pub jobs: usize,
    /// Record per-V failures instead of aborting.
    pub skip_errors: bool,
}

impl SweepConfig {
    pub fn new(v_grid: Vec<f64>, base: ModelParams) -> Self {
        Self {
            v_grid,
            base,
            tolerances: Tolerances::default(),
            eigen: EigenOptions::default(),
            e_grid: None,
            jobs: 1,
            skip_errors: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.v_grid.is_empty() {
            return Err(Error::invalid("v_grid", "at least one V is required"));
        }
        for &v in &self.v_grid {
            validate_strength(v)?;
        }
        if self.v_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("v_grid", "V values must be strictly ascending"));
        }
        let mut base = self.base;
        base.strength = self.v_grid[0];
        base.validate()?;
        self.tolerances.validate()?;
        if let Some(g) = &self.e_grid {
            g.validate()?;
        }
        if self.jobs == 0 {
            return Err(Error::invalid("jobs", "jobs must be >= 1"));
        }
        Ok(())
    }
}

/// `from, from + step, …` up to `to` inclusive, snapped to 1e-12 so that
/// decimal steps print cleanly.
pub fn v_range(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) {
        return Err(Error::invalid("v-range", "bounds and step must be finite"));
    }
    if step <= 0.0 {
        return Err(Error::invalid("v-step", format!("step must be > 0, got {step}")));
    }
    if to < from {
        return Err(Error::invalid("v-to", "v-to must be >= v-from"));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|k| ((from + step * k as f64) * 1e12).round() / 1e12)
        .collect())
}

#[derive(Debug)]
pub struct SweepOutput {
    pub rows: Vec<PhaseDiagramRow>,
    pub le_maps: Vec<LeGrid>,
    /// Failed V points, only populated with `skip_errors`.
    pub failures: Vec<Error>,
}

struct PointResult {
    row: PhaseDiagramRow,
    le: Option<LeGrid>,
}

fn run_point(cfg: &SweepConfig, v: f64) -> Result<PointResult> {
    let mut p = cfg.base;
    p.strength = v;
    let row = spectrum_row(&p, cfg.tolerances, &cfg.eigen)?;
    let le = cfg.e_grid.as_ref().map(|g| le_map(v, g)).transpose()?;
    Ok(PointResult { row, le })
}

/// Runs every V point (in parallel up to `jobs`) and assembles results in
/// grid order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::invalid("jobs", e.to_string()))?;
    let results: Vec<Result<PointResult>> = pool.install(|| {
        cfg.v_grid
            .par_iter()
            .map(|&v| {
                run_point(cfg, v).map_err(|e| Error::SweepPoint {
                    strength: v,
                    source: Box::new(e),
                })
            })
            .collect()
    });

    let mut out = SweepOutput {
        rows: Vec::with_capacity(results.len()),
        le_maps: Vec::new(),
        failures: Vec::new(),
    };
    for r in results {
        match r {
            Ok(point) => {
                out.rows.push(point.row);
                out.le_maps.extend(point.le);
            }
            Err(e) if cfg.skip_errors => out.failures.push(e),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    /// Whitespace-separated, blank line between blocks.
    Gnuplot,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "gnuplot" => Ok(TableFormat::Gnuplot),
            _ => Err(Error::invalid("format", format!("expected csv or gnuplot, got {s:?}"))),
        }
    }
}

/// 17 significant digits; round-trips every f64.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Key/value pairs echoed into the table header.
pub type Metadata = Vec<(String, String)>;

pub fn model_metadata(p: &ModelParams, tol: Option<Tolerances>) -> Metadata {
    let mut m = vec![
        ("L".to_string(), p.sites.to_string()),
        ("alpha".to_string(), fmt_float(p.alpha)),
        ("phase".to_string(), fmt_float(p.phase)),
        ("bc".to_string(), p.boundary.to_string()),
        ("singular_eps".to_string(), fmt_float(p.singular_eps)),
    ];
    if let Some(t) = tol {
        m.push(("re_tol".to_string(), fmt_float(t.re_tol)));
        m.push(("im_tol".to_string(), fmt_float(t.im_tol)));
    }
    m
}

/// Something [`write_table`] knows how to lay out.
#[derive(Debug, Clone, Copy)]
pub enum Table<'a> {
    Spectrum(&'a [PhaseDiagramRow]),
    LeMap(&'a [LeGrid]),
}

impl Table<'_> {
    fn kind(&self) -> &'static str {
        match self {
            Table::Spectrum(_) => "spectrum",
            Table::LeMap(_) => "le_map",
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            Table::Spectrum(rows) => rows.iter().all(|r| r.states.is_empty()),
            Table::LeMap(grids) => grids.iter().all(|g| g.nodes.is_empty()),
        }
    }
}

fn write_header<W: Write + ?Sized>(w: &mut W, kind: &str, meta: &Metadata) -> io::Result<()> {
    writeln!(
        w,
        "# quasispec {kind} schema={SCHEMA_VERSION} version={TOOL_VERSION}"
    )?;
    if !meta.is_empty() {
        let line: Vec<String> = meta.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(w, "# {}", line.join(" "))?;
    }
    Ok(())
}

/// Writes `table` with a `#` comment header echoing `meta`.
///
/// Spectrum columns: `V,re_E,im_E,class,ipr,gamma`. LE-map columns:
/// `re_E,im_E,gamma` (with a leading `V` column when several maps are
/// written).
pub fn write_table<W: Write + ?Sized>(table: Table<'_>, format: TableFormat, meta: &Metadata, w: &mut W) -> io::Result<()> {
    write_header(w, table.kind(), meta)?;
    let sep = match format {
        TableFormat::Csv => ",",
        TableFormat::Gnuplot => " ",
    };
    let columns: &[&str] = match table {
        Table::Spectrum(_) => &["V", "re_E", "im_E", "class", "ipr", "gamma"],
        Table::LeMap(grids) if grids.len() > 1 => &["V", "re_E", "im_E", "gamma"],
        Table::LeMap(_) => &["re_E", "im_E", "gamma"],
    };
    match format {
        TableFormat::Csv => writeln!(w, "{}", columns.join(sep))?,
        TableFormat::Gnuplot => writeln!(w, "# {}", columns.join(sep))?,
    }

    match table {
        Table::Spectrum(rows) => {
            for (i, row) in rows.iter().enumerate() {
                if format == TableFormat::Gnuplot && i > 0 {
                    writeln!(w)?;
                }
                let v = fmt_float(row.strength);
                for s in &row.states {
                    writeln!(
                        w,
                        "{v}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}",
                        fmt_float(s.energy.re),
                        fmt_float(s.energy.im),
                        s.tag,
                        fmt_float(s.ipr),
                        fmt_float(s.gamma),
                    )?;
                }
            }
        }
        Table::LeMap(grids) => {
            let with_v = grids.len() > 1;
            for (i, g) in grids.iter().enumerate() {
                if format == TableFormat::Gnuplot && i > 0 {
                    writeln!(w)?;
                }
                let v = fmt_float(g.strength);
                for (k, (e, gamma)) in g.nodes.iter().enumerate() {
                    // pm3d wants a blank line whenever Re E changes.
                    if format == TableFormat::Gnuplot && k > 0 && k % g.grid.im_points == 0 {
                        writeln!(w)?;
                    }
                    if with_v {
                        write!(w, "{v}{sep}")?;
                    }
                    writeln!(
                        w,
                        "{}{sep}{}{sep}{}",
                        fmt_float(e.re),
                        fmt_float(e.im),
                        fmt_float(*gamma)
                    )?;
                }
            }
        }
    }
    Ok(())
}

/// Writes `table` to `path`, attaching the path to any IO error.
pub fn emit_table(table: Table<'_>, format: TableFormat, meta: &Metadata, path: &Path) -> Result<()> {
    if table.is_empty() {
        return Err(Error::invalid("table", "nothing to write"));
    }
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    write_table(table, format, meta, &mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

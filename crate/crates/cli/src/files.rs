//! Reading and writing signals by file extension.
//!
//! Lattice signals: `.csv` (`index,value`, 1-d) or `.pgm` (2-d) with an
//! optional `<file>.meta` sidecar holding `origin`, `scale` and `offset`.
//! Float grids: `.csv` (`x,value`, 1-d), `.raw` with a `<file>.desc`
//! descriptor, or `.pgm` with a `<file>.meta` sidecar that must give
//! `spacing` and `origin`.

use std::fs;
use std::path::{Path, PathBuf};

use convinv_core::io::{
    lattice_image, parse_grid_csv, parse_lattice_csv, parse_measure, parse_pgm, quantize, read_raw, write_grid_csv,
    write_lattice_csv, write_measure, write_pgm, write_raw, Header, PgmImage,
};
use convinv_core::{AtomicMeasure, GridGeometry, GridSignal, LatticeSignal, Mode};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Pgm,
    Raw,
}

fn format_of(path: &Path) -> Result<Format, CliError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(Format::Csv),
        Some("pgm") => Ok(Format::Pgm),
        Some("raw") => Ok(Format::Raw),
        _ => Err(CliError::parse(format!("{}: unknown signal format (use .csv, .pgm or .raw)", path.display()))),
    }
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

/// Fails early when an output cannot be created in its directory.
pub fn check_output(path: &Path) -> Result<(), CliError> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if !parent.is_dir() {
        return Err(CliError::parse(format!("{}: output directory does not exist", path.display())));
    }
    Ok(())
}

pub fn load_measure(path: &Path, mode: Mode) -> Result<AtomicMeasure, CliError> {
    parse_measure(&read_text(path)?, mode).map_err(|e| CliError::from(e).context(path.display()))
}

pub fn save_measure(path: &Path, m: &AtomicMeasure, header: &Header) -> Result<(), CliError> {
    write_file(path, write_measure(m, header).as_bytes())
}

pub fn save_text(path: &Path, text: &str) -> Result<(), CliError> {
    write_file(path, text.as_bytes())
}

fn optional_sidecar(path: &Path, suffix: &str) -> Result<Header, CliError> {
    let side = sidecar(path, suffix);
    if !side.exists() {
        return Ok(Header::new());
    }
    Header::parse_sidecar(&read_text(&side)?).map_err(|e| CliError::from(e).context(side.display()))
}

pub fn load_lattice_signal(path: &Path, mode: Mode) -> Result<LatticeSignal, CliError> {
    let located = |e: CliError| e.context(path.display());
    match format_of(path)? {
        Format::Csv => parse_lattice_csv(&read_text(path)?, mode).map_err(|e| located(e.into())),
        Format::Pgm => {
            let image = parse_pgm(&read_bytes(path)?).map_err(|e| located(e.into()))?;
            let meta = optional_sidecar(path, ".meta")?;
            lattice_image(&image, &meta, mode).map_err(|e| located(e.into()))
        }
        Format::Raw => {
            Err(CliError::parse(format!("{}: raw files hold float grids, not lattice signals", path.display())))
        }
    }
}

/// Checks that a lattice signal of dimension `dim` can be written to `path`.
pub fn check_lattice_output(path: &Path, dim: usize) -> Result<(), CliError> {
    check_output(path)?;
    match (format_of(path)?, dim) {
        (Format::Csv, 1) | (Format::Pgm, 2) => Ok(()),
        (_, 1) => Err(CliError::dimension(format!("{}: 1-d lattice signals are written as .csv", path.display()))),
        _ => Err(CliError::dimension(format!("{}: 2-d lattice signals are written as .pgm", path.display()))),
    }
}

fn maxval_for(values: &[f64]) -> u16 {
    if values.iter().all(|v| v.fract() == 0.0 && (0.0..=255.0).contains(v)) {
        255
    } else {
        u16::MAX
    }
}

pub fn save_lattice_signal(path: &Path, signal: &LatticeSignal, header: &Header, binary: bool) -> Result<(), CliError> {
    check_lattice_output(path, signal.dim())?;
    if signal.dim() == 1 {
        return write_file(path, write_lattice_csv(signal, header)?.as_bytes());
    }
    let window = signal.window();
    let (height, width) = ((window.width(0) + 1) as usize, (window.width(1) + 1) as usize);
    let values: Vec<f64> = window.points().map(|p| signal.get(&p).to_f64()).collect();
    let maxval = maxval_for(&values);
    let (pixels, scale, offset) = quantize(&values, maxval);
    let image = PgmImage { width, height, maxval, pixels };
    write_file(path, &write_pgm(&image, binary, header))?;
    let mut meta = header.clone();
    meta.set("origin", format!("{} {}", window.lo(0), window.lo(1)))
        .set("scale", format!("{scale:?}"))
        .set("offset", format!("{offset:?}"));
    write_file(&sidecar(path, ".meta"), meta.as_sidecar().as_bytes())
}

pub fn load_grid_signal(path: &Path) -> Result<GridSignal, CliError> {
    let located = |e: CliError| e.context(path.display());
    match format_of(path)? {
        Format::Csv => parse_grid_csv(&read_text(path)?).map_err(|e| located(e.into())),
        Format::Raw => {
            let desc = read_text(&sidecar(path, ".desc"))?;
            read_raw(&read_bytes(path)?, &desc).map_err(|e| located(e.into()))
        }
        Format::Pgm => {
            let image = parse_pgm(&read_bytes(path)?).map_err(|e| located(e.into()))?;
            let side = sidecar(path, ".meta");
            let meta =
                Header::parse_sidecar(&read_text(&side)?).map_err(|e| CliError::from(e).context(side.display()))?;
            let first = |key: &str, default: f64| -> Result<f64, CliError> {
                match meta.get(key) {
                    Some(_) => Ok(meta.floats(key)?.first().copied().unwrap_or(default)),
                    None => Ok(default),
                }
            };
            let (scale, offset) = (first("scale", 1.0)?, first("offset", 0.0)?);
            let geometry =
                GridGeometry::new(vec![image.height, image.width], meta.floats("spacing")?, meta.floats("origin")?)
                    .map_err(|e| located(e.into()))?;
            let samples = image.pixels.iter().map(|&p| offset + scale * p as f64).collect();
            GridSignal::new(geometry, samples).map_err(|e| located(e.into()))
        }
    }
}

pub fn check_grid_output(path: &Path, dim: usize) -> Result<(), CliError> {
    check_output(path)?;
    match (format_of(path)?, dim) {
        (Format::Raw, _) | (Format::Csv, 1) | (Format::Pgm, 2) => Ok(()),
        (Format::Csv, _) => {
            Err(CliError::dimension(format!("{}: 2-d grids are written as .pgm or .raw", path.display())))
        }
        _ => Err(CliError::dimension(format!("{}: 1-d grids are written as .csv or .raw", path.display()))),
    }
}

pub fn save_grid_signal(path: &Path, signal: &GridSignal, header: &Header, binary: bool) -> Result<(), CliError> {
    check_grid_output(path, signal.dim())?;
    match format_of(path)? {
        Format::Csv => write_file(path, write_grid_csv(signal, header)?.as_bytes()),
        Format::Raw => {
            let (bytes, desc) = write_raw(signal, header);
            write_file(path, &bytes)?;
            write_file(&sidecar(path, ".desc"), desc.as_bytes())
        }
        Format::Pgm => {
            let shape = signal.geometry().shape();
            let (pixels, scale, offset) = quantize(signal.samples(), u16::MAX);
            let image = PgmImage { width: shape[1], height: shape[0], maxval: u16::MAX, pixels };
            write_file(path, &write_pgm(&image, binary, header))?;
            let join = |v: &[f64]| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(" ");
            let mut meta = header.clone();
            meta.set("spacing", join(signal.geometry().spacing()))
                .set("origin", join(signal.geometry().origin()))
                .set("scale", format!("{scale:?}"))
                .set("offset", format!("{offset:?}"));
            write_file(&sidecar(path, ".meta"), meta.as_sidecar().as_bytes())
        }
    }
}

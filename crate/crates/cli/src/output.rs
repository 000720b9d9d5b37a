//! CSV and JSON writers. Every CSV has one header row; floats are written with
//! 17 significant digits so files round-trip exactly.

use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use flashsim_core::{RegimeGrid, TransientResult};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// `dir/base.ext`, creating `dir` (and any directory inside `base`).
pub fn artifact_path(dir: &Path, base: &Path, format: Format) -> Result<PathBuf, CliError> {
    let path = dir.join(base).with_extension(format.extension());
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|source| CliError::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    Ok(path)
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> CliError + '_ {
    move |e| CliError::Io {
        path: path.to_path_buf(),
        source: e.into(),
    }
}

/// Writes a table of already formatted cells to a file, or to stdout when
/// `path` is `None`.
pub fn write_table(path: Option<&Path>, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(File::create(p).map_err(io_err(p))?),
        None => Box::new(io::stdout().lock()),
    };
    let label = path.unwrap_or(Path::new("<stdout>"));
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(header).map_err(csv_err(label))?;
    for row in rows {
        w.write_record(row).map_err(csv_err(label))?;
    }
    w.flush().map_err(io_err(label))?;
    Ok(())
}

pub fn write_json<T: Serialize + ?Sized>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    let label = path.unwrap_or(Path::new("<stdout>"));
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io {
        path: label.to_path_buf(),
        source: e.into(),
    })?;
    match path {
        Some(p) => fs::write(p, text + "\n").map_err(io_err(p)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

pub const TIMESERIES_HEADER: [&str; 7] = ["t", "V", "I", "P", "theta_min", "theta_max", "control_mode"];

pub fn timeseries_rows(res: &TransientResult) -> Vec<Vec<String>> {
    (0..res.len())
        .map(|k| {
            vec![
                num(res.times[k]),
                num(res.voltage[k]),
                num(res.current[k]),
                num(res.power[k]),
                num(res.theta_min[k]),
                num(res.theta_max[k]),
                res.control[k].as_str().to_string(),
            ]
        })
        .collect()
}

/// Long-form snapshot rows `(time, coord, theta)`.
pub fn snapshot_rows(res: &TransientResult) -> Vec<Vec<String>> {
    res.snapshots
        .iter()
        .flat_map(|s| {
            res.nodes
                .iter()
                .zip(&s.theta)
                .map(move |(x, th)| vec![num(s.time), num(*x), num(*th)])
        })
        .collect()
}

/// Long-form potential rows `(time, z, phi)`.
pub fn potential_rows(res: &TransientResult) -> Vec<Vec<String>> {
    res.snapshots
        .iter()
        .flat_map(|s| {
            res.potential_nodes
                .iter()
                .zip(&s.potential)
                .map(move |(z, phi)| vec![num(s.time), num(*z), num(*phi)])
        })
        .collect()
}

pub fn profile_rows(coords: &[f64], theta: &[f64]) -> Vec<Vec<String>> {
    coords.iter().zip(theta).map(|(x, t)| vec![num(*x), num(*t)]).collect()
}

pub fn regime_rows(grid: &RegimeGrid) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
    let mut points = Vec::with_capacity(grid.t_values.len() * grid.e_values.len());
    for (t, row) in grid.t_values.iter().zip(&grid.flash) {
        for (e, flag) in grid.e_values.iter().zip(row) {
            points.push(vec![num(*t), num(*e), flag.to_string()]);
        }
    }
    let boundary = grid
        .t_values
        .iter()
        .zip(&grid.boundary)
        .map(|(t, e)| vec![num(*t), num(*e)])
        .collect();
    (points, boundary)
}

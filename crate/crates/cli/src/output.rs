//! CSV, JSON and two-column plot files. Formatting is fixed so that equal
//! inputs give byte-identical files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;
use crate::run::{PointOutput, ResultRow};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
const UNITS: &str = "lengths m, times s, velocities m/s, phases rad, energies J, temperatures K";

/// 12 significant digits in scientific notation.
pub fn num(x: f64) -> String {
    // no "-0" in the tables
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn header(id: &str, hash: &str) -> String {
    format!("# casimir-phase {VERSION}\n# scenario {id}\n# config_sha256 {hash}\n# units: {UNITS}\n")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv(id: &str, hash: &str, rows: &[ResultRow]) -> String {
    let mut s = header(id, hash);
    s.push_str("scenario,sweep_parameter,sweep_value,quantity,value,unit,error,regime,operation,config_sha256\n");
    for r in rows {
        let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            csv_field(&r.scenario),
            r.sweep_parameter,
            opt(r.sweep_value),
            r.quantity,
            num(r.value),
            r.unit,
            opt(r.error),
            r.regime,
            r.operation,
            r.config_sha256
        );
    }
    s
}

#[derive(Serialize)]
struct JsonMirror<'a> {
    scenario: &'a str,
    version: &'a str,
    config_sha256: &'a str,
    units: &'a str,
    rows: &'a [ResultRow],
    warnings: &'a [String],
}

pub fn json(id: &str, hash: &str, rows: &[ResultRow], warnings: &[String]) -> String {
    let m = JsonMirror {
        scenario: id,
        version: VERSION,
        config_sha256: hash,
        units: UNITS,
        rows,
        warnings,
    };
    serde_json::to_string_pretty(&m).expect("rows serialize") + "\n"
}

fn two_column(id: &str, hash: &str, columns: (&str, &str), data: &[(f64, f64)]) -> String {
    let mut s = header(id, hash);
    let _ = writeln!(s, "# {} {}", columns.0, columns.1);
    for &(x, y) in data {
        let _ = writeln!(s, "{} {}", num(x), num(y));
    }
    s
}

/// Writes `<id>.csv`, `<id>.json` and the `.dat` plot files; returns the
/// paths written, in a fixed order.
pub fn write_all(dir: &Path, id: &str, hash: &str, points: &[PointOutput]) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(format!("creating {}", dir.display()), e))?;
    let rows: Vec<ResultRow> = points.iter().flat_map(|p| p.rows.iter().cloned()).collect();
    let warnings: Vec<String> = points.iter().flat_map(|p| p.warnings.iter().cloned()).collect();
    let mut files = vec![
        (dir.join(format!("{id}.csv")), csv(id, hash, &rows)),
        (dir.join(format!("{id}.json")), json(id, hash, &rows, &warnings)),
    ];

    // one file per quantity across the sweep
    if points.len() > 1 {
        let mut series: BTreeMap<&str, (&str, Vec<(f64, f64)>)> = BTreeMap::new();
        for r in &rows {
            if let Some(x) = r.sweep_value {
                let e = series.entry(&r.quantity).or_insert((&r.sweep_parameter, Vec::new()));
                e.1.push((x, r.value));
            }
        }
        for (q, (param, data)) in series {
            files.push((dir.join(format!("{id}_{q}.dat")), two_column(id, hash, (param, q), &data)));
        }
    }
    for (i, p) in points.iter().enumerate() {
        if let Some(curve) = &p.potential {
            let name = if points.len() > 1 {
                format!("{id}_potential_{i}.dat")
            } else {
                format!("{id}_potential.dat")
            };
            files.push((dir.join(name), two_column(id, hash, ("z_m", "V_J"), curve)));
        }
    }
    for (path, text) in &files {
        fs::write(path, text).map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
    }
    Ok(files.into_iter().map(|f| f.0).collect())
}

//! Plain-text exports: scan CSV, its key-value sidecar, and a long-format
//! table. Floats are written with 17 significant digits so a re-parsed
//! file reproduces the in-memory values bit for bit.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use crate::model::UnitMode;
use crate::response::CrossSectionSet;
use crate::scan::{ColumnScales, Normalization, ScanGrid};

pub const SCAN_HEADER: &str =
    "omega,Omega,sigma_mech,sigma_abs,sigma_elastic,sigma_in_plus,sigma_in_minus,sigma_ext,singular";

const QUANTITIES: [&str; 6] = [
    "sigma_mech",
    "sigma_abs",
    "sigma_elastic",
    "sigma_in_plus",
    "sigma_in_minus",
    "sigma_ext",
];

/// 17-significant-digit scientific notation.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_scan_csv<W: Write>(grid: &ScanGrid, mut out: W) -> io::Result<()> {
    writeln!(out, "{SCAN_HEADER}")?;
    for (w, r, cell) in grid.iter() {
        write!(out, "{},{}", fmt_f64(w), fmt_f64(r))?;
        for v in cell.sections.as_array() {
            write!(out, ",{}", fmt_f64(v))?;
        }
        writeln!(out, ",{}", u8::from(cell.singular))?;
    }
    Ok(())
}

/// One `(ω, Ω, quantity, value)` line per cell and quantity.
pub fn write_long_csv<W: Write>(grid: &ScanGrid, mut out: W) -> io::Result<()> {
    writeln!(out, "omega,Omega,quantity,value")?;
    for (w, r, cell) in grid.iter() {
        for (name, v) in QUANTITIES.iter().zip(cell.sections.as_array()) {
            writeln!(out, "{},{},{name},{}", fmt_f64(w), fmt_f64(r), fmt_f64(v))?;
        }
    }
    Ok(())
}

fn unit_labels(grid: &ScanGrid) -> (&'static str, &'static str) {
    match (grid.normalization, grid.model.mode) {
        (Normalization::FigureUnits, _) => ("Q^2*gamma/(m*c*omega0^2)", "Q^2*tau/(m*c)"),
        (Normalization::Raw, UnitMode::Physical) => ("cm^2", "cm^2"),
        (Normalization::Raw, UnitMode::Normalized) => ("Q^2/(m*c*omega0)", "Q^2/(m*c*omega0)"),
    }
}

/// Sidecar metadata: `key = value` lines.
pub fn write_scan_metadata<W: Write>(grid: &ScanGrid, mut out: W) -> io::Result<()> {
    let m = &grid.model;
    let (dissipative, radiative) = unit_labels(grid);
    let mode = match m.mode {
        UnitMode::Physical => "physical",
        UnitMode::Normalized => "normalized",
    };
    let frequency_unit = match m.mode {
        UnitMode::Physical => "rad/s",
        UnitMode::Normalized => "omega0",
    };
    let lines: Vec<(&str, String)> = vec![
        ("format", "rotospin-scan".into()),
        ("version", env!("CARGO_PKG_VERSION").into()),
        ("mode", mode.into()),
        ("coupling", fmt_f64(m.coupling)),
        ("natural_frequency", fmt_f64(m.natural_frequency)),
        ("damping_rate", fmt_f64(m.damping_rate)),
        ("radiative_time", fmt_f64(m.radiative_time)),
        ("light_speed", fmt_f64(m.light_speed)),
        ("polarization", grid.polarization.name().into()),
        ("omega_count", grid.omegas.len().to_string()),
        ("Omega_count", grid.rotations.len().to_string()),
        ("frequency_unit", frequency_unit.into()),
        ("normalization", grid.normalization.name().into()),
        ("unit_mech_abs_ext", dissipative.into()),
        ("unit_scattering", radiative.into()),
        ("scale_mech_abs_ext", fmt_f64(grid.scales.dissipative)),
        ("scale_scattering", fmt_f64(grid.scales.radiative)),
        ("singular_cells", grid.singular_count().to_string()),
    ];
    for (k, v) in lines {
        writeln!(out, "{k} = {v}")?;
    }
    Ok(())
}

/// Parse `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_metadata<R: BufRead>(input: R) -> io::Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| bad_data(format!("line {}: expected `key = value`", n + 1)))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

/// Column scales recorded in a sidecar.
pub fn scales_from_metadata(meta: &BTreeMap<String, String>) -> io::Result<ColumnScales> {
    let get = |k: &str| -> io::Result<f64> {
        meta.get(k)
            .ok_or_else(|| bad_data(format!("missing key `{k}`")))?
            .parse()
            .map_err(|e| bad_data(format!("key `{k}`: {e}")))
    };
    Ok(ColumnScales {
        dissipative: get("scale_mech_abs_ext")?,
        radiative: get("scale_scattering")?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub omega: f64,
    pub rotation: f64,
    pub sections: CrossSectionSet,
    pub singular: bool,
}

fn bad_data(msg: String) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg)
}

pub fn parse_scan_csv<R: BufRead>(input: R) -> io::Result<Vec<ScanRow>> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| bad_data("empty file".into()))??;
    if header.trim() != SCAN_HEADER {
        return Err(bad_data(format!("unexpected header `{header}`")));
    }
    let mut rows = Vec::new();
    for (n, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(bad_data(format!(
                "row {}: expected 9 fields, got {}",
                n + 2,
                fields.len()
            )));
        }
        let num = |i: usize| -> io::Result<f64> {
            fields[i]
                .trim()
                .parse()
                .map_err(|e| bad_data(format!("row {}, column {}: {e}", n + 2, i + 1)))
        };
        let mut v = [0.0; 6];
        for (k, slot) in v.iter_mut().enumerate() {
            *slot = num(k + 2)?;
        }
        let singular = match fields[8].trim() {
            "0" => false,
            "1" => true,
            other => {
                return Err(bad_data(format!(
                    "row {}: bad singular flag `{other}`",
                    n + 2
                )))
            }
        };
        rows.push(ScanRow {
            omega: num(0)?,
            rotation: num(1)?,
            sections: CrossSectionSet::from_array(v),
            singular,
        });
    }
    Ok(rows)
}

/// Rows (by index) whose raw-unit balance residual exceeds
/// `rel_tol · Σ|partials|`. Singular rows are skipped.
pub fn unbalanced_rows(rows: &[ScanRow], scales: &ColumnScales, rel_tol: f64) -> Vec<usize> {
    rows.iter()
        .enumerate()
        .filter(|(_, r)| !r.singular && !scales.undo(&r.sections).is_balanced(rel_tol))
        .map(|(i, _)| i)
        .collect()
}

/// Two-column CSV with the given header.
pub fn write_pairs_csv<W: Write>(header: &str, pairs: &[(f64, f64)], mut out: W) -> io::Result<()> {
    writeln!(out, "{header}")?;
    for &(a, b) in pairs {
        writeln!(out, "{},{}", fmt_f64(a), fmt_f64(b))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Polarization;
    use crate::model::OscillatorModel;
    use crate::scan::{grid_scan, Axis, ScanRequest};

    fn grid() -> ScanGrid {
        grid_scan(&ScanRequest {
            model: OscillatorModel::normalized(0.1, 1e-3).unwrap(),
            polarization: Polarization::Linear,
            omega: Axis::new(0.0, 2.0, 7).unwrap(),
            rotation: Axis::new(-1.0, 1.0, 5).unwrap(),
            normalization: Normalization::FigureUnits,
        })
        .unwrap()
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let g = grid();
        let mut buf = Vec::new();
        write_scan_csv(&g, &mut buf).unwrap();
        let rows = parse_scan_csv(buf.as_slice()).unwrap();
        assert_eq!(rows.len(), g.cells.len());
        for (row, (w, r, cell)) in rows.iter().zip(g.iter()) {
            assert_eq!(row.omega.to_bits(), w.to_bits());
            assert_eq!(row.rotation.to_bits(), r.to_bits());
            for (a, b) in row.sections.as_array().iter().zip(cell.sections.as_array()) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
            assert_eq!(row.singular, cell.singular);
        }
        assert!(unbalanced_rows(&rows, &g.scales, 1e-10).is_empty());
    }

    #[test]
    fn metadata_round_trip() {
        let g = grid();
        let mut buf = Vec::new();
        write_scan_metadata(&g, &mut buf).unwrap();
        let meta = parse_metadata(buf.as_slice()).unwrap();
        assert_eq!(meta["polarization"], "linear");
        assert_eq!(meta["normalization"], "figure");
        assert_eq!(scales_from_metadata(&meta).unwrap(), g.scales);
    }

    #[test]
    fn long_format_has_six_rows_per_cell() {
        let g = grid();
        let mut buf = Vec::new();
        write_long_csv(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 6 * g.cells.len());
    }

    #[test]
    fn rejects_malformed_rows() {
        let text = format!("{SCAN_HEADER}\n1,2,3\n");
        assert!(parse_scan_csv(text.as_bytes()).is_err());
        assert!(parse_scan_csv("a,b\n".as_bytes()).is_err());
    }

    #[test]
    fn nan_survives_round_trip() {
        assert_eq!(fmt_f64(f64::NAN), "NaN");
        assert!("NaN".parse::<f64>().unwrap().is_nan());
    }
}

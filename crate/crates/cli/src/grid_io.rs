//! Scan grid emission: long-form CSV and a dependency-free SVG heatmap.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use qutrit_sle::ScanGrid;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridIoError {
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed grid row")]
    MalformedRow { path: String, line: usize },
    #[error("{path}: missing header line")]
    MissingHeader { path: String },
}

/// Prints with 12 significant digits, the precision the CSV commits to.
pub fn format_value(value: f64) -> String {
    format!("{value:.11e}")
}

/// Long-form CSV: header `<axis1>,<axis2>,fidelity`, one row per grid point
/// in row-major order with the first axis outermost.
pub fn grid_to_csv(grid: &ScanGrid) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{},{},fidelity", grid.axes.0.name(), grid.axes.1.name());
    for (i, &value1) in grid.axis1_values.iter().enumerate() {
        for (j, &value2) in grid.axis2_values.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{}",
                format_value(value1),
                format_value(value2),
                format_value(grid.fidelities[i][j])
            );
        }
    }
    out
}

pub fn write_csv(grid: &ScanGrid, path: &Path) -> Result<(), GridIoError> {
    fs::write(path, grid_to_csv(grid)).map_err(|source| GridIoError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// A parsed grid CSV: axis names and the rows as (axis1, axis2, fidelity).
#[derive(Debug, Clone, PartialEq)]
pub struct CsvGrid {
    pub axis_names: (String, String),
    pub rows: Vec<(f64, f64, f64)>,
}

pub fn read_csv(path: &Path) -> Result<CsvGrid, GridIoError> {
    let text = fs::read_to_string(path).map_err(|source| GridIoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let mut lines = text.lines().enumerate();
    let header = lines
        .next()
        .ok_or_else(|| GridIoError::MissingHeader {
            path: path.display().to_string(),
        })?
        .1;
    let mut names = header.split(',');
    let axis1 = names.next().unwrap_or_default().to_string();
    let axis2 = names.next().unwrap_or_default().to_string();
    let mut rows = Vec::new();
    for (index, line) in lines {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let parse = |field: Option<&str>| field.and_then(|f| f.parse::<f64>().ok());
        match (
            parse(fields.next()),
            parse(fields.next()),
            parse(fields.next()),
        ) {
            (Some(a), Some(b), Some(f)) if fields.next().is_none() => rows.push((a, b, f)),
            _ => {
                return Err(GridIoError::MalformedRow {
                    path: path.display().to_string(),
                    line: index + 1,
                })
            }
        }
    }
    Ok(CsvGrid {
        axis_names: (axis1, axis2),
        rows,
    })
}

const RASTER: f64 = 512.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;

/// SVG 1.1 heatmap: a 512x512 raster of cells in linear grayscale (0 black,
/// 1 white), axis labels, and a marker on the best cell.
pub fn grid_to_svg(grid: &ScanGrid) -> String {
    let columns = grid.axis1_values.len();
    let rows = grid.axis2_values.len();
    let cell_w = RASTER / columns as f64;
    let cell_h = RASTER / rows as f64;
    let width = MARGIN_LEFT + RASTER + MARGIN_RIGHT;
    let height = MARGIN_TOP + RASTER + MARGIN_BOTTOM;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    );

    // axis1 runs left to right, axis2 bottom to top
    for (i, _) in grid.axis1_values.iter().enumerate() {
        for (j, _) in grid.axis2_values.iter().enumerate() {
            let level = (grid.fidelities[i][j].clamp(0.0, 1.0) * 255.0).round() as u8;
            let x = MARGIN_LEFT + i as f64 * cell_w;
            let y = MARGIN_TOP + (rows - 1 - j) as f64 * cell_h;
            let _ = writeln!(
                out,
                r#"<rect x="{x:.3}" y="{y:.3}" width="{cell_w:.3}" height="{cell_h:.3}" fill="rgb({level},{level},{level})"/>"#
            );
        }
    }

    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{RASTER}" height="{RASTER}" fill="none" stroke="black" stroke-width="1"/>"#
    );

    let label_y = MARGIN_TOP + RASTER + 20.0;
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{label_y:.1}" font-family="monospace" font-size="14" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + RASTER / 2.0,
        grid.axes.0.name()
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.1}" font-family="monospace" font-size="14" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
        MARGIN_TOP + RASTER / 2.0,
        MARGIN_TOP + RASTER / 2.0,
        grid.axes.1.name()
    );

    // tick labels at the raster corners
    let first1 = grid.axis1_values[0];
    let last1 = grid.axis1_values[columns - 1];
    let first2 = grid.axis2_values[0];
    let last2 = grid.axis2_values[rows - 1];
    let tick_y = MARGIN_TOP + RASTER + 36.0;
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN_LEFT:.1}" y="{tick_y:.1}" font-family="monospace" font-size="12" text-anchor="middle">{first1}</text>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{tick_y:.1}" font-family="monospace" font-size="12" text-anchor="middle">{last1}</text>"#,
        MARGIN_LEFT + RASTER
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="12" text-anchor="end">{first2}</text>"#,
        MARGIN_LEFT - 6.0,
        MARGIN_TOP + RASTER
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="12" text-anchor="end">{last2}</text>"#,
        MARGIN_LEFT - 6.0,
        MARGIN_TOP + 10.0
    );

    // best-point marker
    let (bi, bj) = grid.best;
    let cx = MARGIN_LEFT + (bi as f64 + 0.5) * cell_w;
    let cy = MARGIN_TOP + (rows as f64 - 1.0 - bj as f64 + 0.5) * cell_h;
    let _ = writeln!(
        out,
        r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="5" fill="none" stroke="red" stroke-width="2"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="12" text-anchor="start">best {:.6} at ({:.6}, {:.6})</text>"#,
        MARGIN_LEFT,
        MARGIN_TOP + RASTER + 52.0,
        grid.best_fidelity(),
        grid.best_values().0,
        grid.best_values().1
    );
    let _ = writeln!(out, "</svg>");
    out
}

pub fn write_svg(grid: &ScanGrid, path: &Path) -> Result<(), GridIoError> {
    fs::write(path, grid_to_svg(grid)).map_err(|source| GridIoError::Write {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qutrit_sle::RotationAxis;

    fn small_grid() -> ScanGrid {
        ScanGrid {
            axes: (RotationAxis::R1, RotationAxis::R2),
            axis1_values: vec![-1.0, 1.0],
            axis2_values: vec![-1.0, 1.0],
            fidelities: vec![vec![0.25, 0.5], vec![0.75, 1.0]],
            best: (1, 1),
        }
    }

    #[test]
    fn csv_layout_is_long_form_row_major() {
        let text = grid_to_csv(&small_grid());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "r1,r2,fidelity");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("-1.00000000000e0,-1.00000000000e0,"));
        assert!(lines[2].starts_with("-1.00000000000e0,1.00000000000e0,"));
        assert!(lines[4].ends_with("1.00000000000e0"));
    }

    #[test]
    fn csv_round_trips_at_declared_precision() {
        let dir = std::env::temp_dir().join("qutrit-sle-grid-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("grid.csv");
        let grid = ScanGrid {
            axes: (RotationAxis::R1, RotationAxis::R3),
            axis1_values: vec![-1.0, 0.0],
            axis2_values: vec![0.25, 0.75],
            fidelities: vec![
                vec![0.123456789012345, 0.9999999999999],
                vec![1.0 / 3.0, 5.43e-13],
            ],
            best: (0, 1),
        };
        write_csv(&grid, &path).unwrap();
        let parsed = read_csv(&path).unwrap();
        assert_eq!(parsed.axis_names, ("r1".to_string(), "r3".to_string()));
        assert_eq!(parsed.rows.len(), 4);
        for (k, &(a, b, f)) in parsed.rows.iter().enumerate() {
            let i = k / 2;
            let j = k % 2;
            // the parsed value reprints to the identical 12-digit form
            assert_eq!(format_value(f), format_value(grid.fidelities[i][j]));
            assert_eq!(format_value(a), format_value(grid.axis1_values[i]));
            assert_eq!(format_value(b), format_value(grid.axis2_values[j]));
            assert!((f - grid.fidelities[i][j]).abs() <= 1e-11 * grid.fidelities[i][j].abs());
        }
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn read_rejects_malformed_rows() {
        let dir = std::env::temp_dir().join("qutrit-sle-grid-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.csv");
        std::fs::write(&path, "r1,r2,fidelity\n1.0,2.0\n").unwrap();
        assert!(matches!(
            read_csv(&path).unwrap_err(),
            GridIoError::MalformedRow { line: 2, .. }
        ));
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let text = grid_to_svg(&small_grid());
        assert!(text.starts_with("<?xml"));
        assert!(text.contains(r#"version="1.1""#));
        assert!(text.contains("rgb(64,64,64)")); // 0.25 of 255
        assert!(text.contains("rgb(255,255,255)"));
        assert!(text.contains("circle"));
        assert!(text.trim_end().ends_with("</svg>"));
        // 4 cells + background + frame
        assert_eq!(text.matches("<rect").count(), 6);
    }
}

//! Figure data as CSV: the relaxation functions Psi and Phi on linear and
//! logarithmic grids, and the Gross spectral density over a decade range.
//!
//! Output is RFC-4180-style CSV with a mandatory header row and every value
//! printed with 12 significant digits, so golden-file regression is
//! byte-exact.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::relaxation::{solve, RelaxationProblem};
use crate::signal::{geomspace, linspace};
use crate::viscoelastic::gross_spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// Psi(t) = E_mu(-t^mu) for mu in {1/4, 1/2, 3/4, 1}.
    Fig1,
    /// Phi(t) = t^{mu-1} E_{mu,mu}(-t^mu), same orders.
    Fig2,
    /// Gross density R(tau) for nu in {0.25, 0.50, 0.75, 0.90}, tau* = 1.
    Fig5,
}

impl std::str::FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fig1" => Ok(FigureId::Fig1),
            "fig2" => Ok(FigureId::Fig2),
            "fig5" => Ok(FigureId::Fig5),
            other => Err(format!("unknown figure id {other:?} (expected fig1, fig2, or fig5)")),
        }
    }
}

/// 12 significant digits in scientific notation; fixed formatting for golden
/// files.
pub fn format_value(x: f64) -> String {
    format!("{x:.11e}")
}

const MU_VALUES: [f64; 4] = [0.25, 0.5, 0.75, 1.0];
const NU_VALUES: [f64; 4] = [0.25, 0.50, 0.75, 0.90];

fn relaxation_csv(kind: &str, grid: &[f64], include_zero: bool) -> String {
    let mut out = String::new();
    out.push('t');
    for &mu in &MU_VALUES {
        out.push_str(&format!(",{kind}_mu_{mu}"));
    }
    out.push('\n');

    let mut columns = Vec::new();
    for &mu in &MU_VALUES {
        let problem = if kind == "psi" {
            RelaxationProblem::caputo(mu)
        } else {
            RelaxationProblem::riemann_liouville(mu)
        };
        let sig = solve(&problem, grid).expect("figure grid is valid");
        columns.push(sig.values().to_vec());
    }

    if include_zero {
        // Psi(0+) = 1 for every order
        out.push_str(&format_value(0.0));
        for _ in &MU_VALUES {
            out.push(',');
            out.push_str(&format_value(1.0));
        }
        out.push('\n');
    }
    for (i, &t) in grid.iter().enumerate() {
        out.push_str(&format_value(t));
        for col in &columns {
            out.push(',');
            out.push_str(&format_value(col[i]));
        }
        out.push('\n');
    }
    out
}

fn spectrum_csv() -> String {
    let grid = geomspace(1e-2, 1e2, 401);
    let mut out = String::from("tau,r_nu_0.25,r_nu_0.5,r_nu_0.75,r_nu_0.9\n");
    for &tau in &grid {
        out.push_str(&format_value(tau));
        for &nu in &NU_VALUES {
            out.push(',');
            out.push_str(&format_value(gross_spectrum(nu, 1.0, tau).expect("valid order")));
        }
        out.push('\n');
    }
    out
}

/// The CSV files of a figure as (file name, content) pairs.
pub fn figure_files(id: FigureId) -> Vec<(&'static str, String)> {
    match id {
        FigureId::Fig1 => {
            // linear grid includes t = 0, where Psi = 1 exactly
            let linear: Vec<f64> = linspace(0.0, 5.0, 501).into_iter().skip(1).collect();
            vec![
                ("fig1_linear.csv", relaxation_csv("psi", &linear, true)),
                ("fig1_log.csv", relaxation_csv("psi", &geomspace(1e-2, 1e2, 201), false)),
            ]
        }
        FigureId::Fig2 => {
            // Phi diverges at the origin for mu < 1: start the linear grid
            // at t = 1e-3 instead of 0
            let mut linear = linspace(0.0, 5.0, 501);
            linear[0] = 1e-3;
            vec![
                ("fig2_linear.csv", relaxation_csv("phi", &linear, false)),
                ("fig2_log.csv", relaxation_csv("phi", &geomspace(1e-2, 1e2, 201), false)),
            ]
        }
        FigureId::Fig5 => vec![("fig5.csv", spectrum_csv())],
    }
}

/// Write a figure's CSV files into `out_dir`; returns the written paths.
pub fn write_figure(id: FigureId, out_dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let mut paths = Vec::new();
    for (name, content) in figure_files(id) {
        let path = out_dir.join(name);
        let mut f = std::fs::File::create(&path)?;
        f.write_all(content.as_bytes())?;
        paths.push(path);
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_is_fixed_width_scientific() {
        assert_eq!(format_value(0.0), "0.00000000000e0");
        assert_eq!(format_value(1.0), "1.00000000000e0");
        assert_eq!(format_value(0.36787944117144233), "3.67879441171e-1");
    }

    #[test]
    fn fig1_linear_rows_and_header() {
        let files = figure_files(FigureId::Fig1);
        assert_eq!(files[0].0, "fig1_linear.csv");
        let lines: Vec<&str> = files[0].1.lines().collect();
        assert_eq!(lines[0], "t,psi_mu_0.25,psi_mu_0.5,psi_mu_0.75,psi_mu_1");
        assert_eq!(lines.len(), 502); // header + 501 rows
        // first row is t = 0 with all columns 1
        let first: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(first[0], "0.00000000000e0");
        for v in &first[1..] {
            assert_eq!(*v, "1.00000000000e0");
        }
    }

    #[test]
    fn fig1_exponential_column() {
        let files = figure_files(FigureId::Fig1);
        for line in files[1].1.lines().skip(1) {
            let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            assert!((cells[4] - (-cells[0]).exp()).abs() <= 1e-10);
        }
    }

    #[test]
    fn fig2_linear_grid_starts_off_origin() {
        let files = figure_files(FigureId::Fig2);
        let lines: Vec<&str> = files[0].1.lines().collect();
        assert_eq!(lines[0], "t,phi_mu_0.25,phi_mu_0.5,phi_mu_0.75,phi_mu_1");
        assert_eq!(lines.len(), 502);
        let first: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(first[0], "1.00000000000e-3");
    }

    #[test]
    fn fig5_shape_by_order() {
        let files = figure_files(FigureId::Fig5);
        let lines: Vec<&str> = files[0].1.lines().collect();
        assert_eq!(lines[0], "tau,r_nu_0.25,r_nu_0.5,r_nu_0.75,r_nu_0.9");
        assert_eq!(lines.len(), 402);
        let rows: Vec<Vec<f64>> = lines[1..]
            .iter()
            .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
            .collect();
        // nu = 0.25 and 0.5 columns strictly decreasing
        for col in [1, 2] {
            assert!(rows.windows(2).all(|w| w[1][col] < w[0][col]), "column {col}");
        }
        // nu = 0.9 column: exactly one interior minimum and one maximum
        let col: Vec<f64> = rows.iter().map(|r| r[4]).collect();
        let mut minima = 0;
        let mut maxima = 0;
        for i in 1..col.len() - 1 {
            if col[i] < col[i - 1] && col[i] < col[i + 1] {
                minima += 1;
            }
            if col[i] > col[i - 1] && col[i] > col[i + 1] {
                maxima += 1;
            }
        }
        assert_eq!((minima, maxima), (1, 1));
    }
}

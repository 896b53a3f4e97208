//! Joint probability density on a grid, and its text format.
//!
//! File layout: one header line
//! `# t=<t> x1_min=<a> x1_max=<b> nx1=<n> x2_min=<c> x2_max=<d> nx2=<m>`
//! followed by `nx2` comma-separated rows of `nx1` values. Row index runs
//! along x2, column index along x1. Values are written in shortest
//! round-trip exponent form.

use crate::grid::{trapezoid, Axis, Grid};
use crate::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Debug)]
pub struct Snapshot {
    pub t: f64,
    pub grid: Grid,
    /// Shape (nx2, nx1).
    pub pdf: Array2<f64>,
}

impl Snapshot {
    pub fn from_amplitude(t: f64, grid: Grid, psi: &Array2<Complex64>) -> Self {
        Snapshot {
            t,
            grid,
            pdf: psi.mapv(|z| z.norm_sqr()),
        }
    }

    /// Integral of the density over the grid.
    pub fn norm(&self) -> f64 {
        let rows: Vec<f64> = self
            .pdf
            .rows()
            .into_iter()
            .map(|r| trapezoid(r.as_slice().expect("contiguous"), self.grid.x1.step()))
            .collect();
        trapezoid(&rows, self.grid.x2.step())
    }

    /// Largest density value on the grid.
    pub fn peak(&self) -> f64 {
        self.pdf.iter().cloned().fold(0.0, f64::max)
    }

    pub fn value(&self, i1: usize, i2: usize) -> f64 {
        self.pdf[[i2, i1]]
    }

    pub fn header(&self) -> String {
        let (a, b) = (self.grid.x1, self.grid.x2);
        format!(
            "# t={:e} x1_min={:e} x1_max={:e} nx1={} x2_min={:e} x2_max={:e} nx2={}",
            self.t, a.min, a.max, a.n, b.min, b.max, b.n
        )
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header();
        s.push('\n');
        for row in self.pdf.rows() {
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{v:e}");
            }
            s.push('\n');
        }
        s
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Format("empty snapshot".into()))?;
        let body = header
            .strip_prefix("# ")
            .ok_or_else(|| Error::Format("header must start with '# '".into()))?;
        let mut fields = std::collections::HashMap::new();
        for tok in body.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("bad header token `{tok}`")))?;
            fields.insert(k, v);
        }
        let num = |k: &str| -> Result<f64> {
            fields
                .get(k)
                .ok_or_else(|| Error::Format(format!("header lacks `{k}`")))?
                .parse::<f64>()
                .map_err(|e| Error::Format(format!("header `{k}`: {e}")))
        };
        let count = |k: &str| -> Result<usize> {
            fields
                .get(k)
                .ok_or_else(|| Error::Format(format!("header lacks `{k}`")))?
                .parse::<usize>()
                .map_err(|e| Error::Format(format!("header `{k}`: {e}")))
        };
        let grid = Grid::new(
            Axis::new(num("x1_min")?, num("x1_max")?, count("nx1")?)?,
            Axis::new(num("x2_min")?, num("x2_max")?, count("nx2")?)?,
        );
        let mut pdf = Array2::zeros((grid.x2.n, grid.x1.n));
        let mut rows = 0;
        for (i, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
            if i >= grid.x2.n {
                return Err(Error::Format(format!("more than {} rows", grid.x2.n)));
            }
            let vals: Vec<&str> = line.split(',').collect();
            if vals.len() != grid.x1.n {
                return Err(Error::Format(format!("row {} has {} values, expected {}", i + 1, vals.len(), grid.x1.n)));
            }
            for (j, v) in vals.iter().enumerate() {
                pdf[[i, j]] = v
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Format(format!("row {} column {}: {e}", i + 1, j + 1)))?;
            }
            rows += 1;
        }
        if rows != grid.x2.n {
            return Err(Error::Format(format!("{rows} rows, expected {}", grid.x2.n)));
        }
        Ok(Snapshot {
            t: num("t")?,
            grid,
            pdf,
        })
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        Self::parse_csv(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let grid = Grid::new(Axis::new(-1.0, 2.0, 4).unwrap(), Axis::new(0.1, 0.3, 3).unwrap());
        let pdf = Array2::from_shape_fn((3, 4), |(i, j)| ((i * 4 + j) as f64 * 0.37).sin().powi(2) / 3.0 + 1e-300);
        let s = Snapshot { t: 1.5e-10, grid, pdf };
        let back = Snapshot::parse_csv(&s.to_csv()).unwrap();
        assert_eq!(back.t.to_bits(), s.t.to_bits());
        for (a, b) in s.pdf.iter().zip(back.pdf.iter()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert!(s.to_csv().starts_with("# t=1.5e-10 x1_min=-1e0 x1_max=2e0 nx1=4"));
    }

    #[test]
    fn rejects_short_rows() {
        let text = "# t=0e0 x1_min=0e0 x1_max=1e0 nx1=2 x2_min=0e0 x2_max=1e0 nx2=2\n1,2\n3\n";
        assert!(Snapshot::parse_csv(text).is_err());
    }
}

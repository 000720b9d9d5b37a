use serde::{Deserialize, Serialize};

use super::SolveError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    /// `r` in `[0, 1]`, symmetry at `r = 0`.
    Radial,
    /// `z` in `[-1/2, 1/2]`.
    Axial,
}

/// Uniform node grid with `n_cells + 1` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpatialGrid {
    pub n_cells: usize,
    pub geometry: Geometry,
}

pub const MIN_CELLS: usize = 8;

impl SpatialGrid {
    pub fn new(n_cells: usize, geometry: Geometry) -> Result<Self, SolveError> {
        let grid = Self { n_cells, geometry };
        grid.validate()?;
        Ok(grid)
    }

    pub fn radial(n_cells: usize) -> Result<Self, SolveError> {
        Self::new(n_cells, Geometry::Radial)
    }

    pub fn axial(n_cells: usize) -> Result<Self, SolveError> {
        Self::new(n_cells, Geometry::Axial)
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        if self.n_cells < MIN_CELLS {
            return Err(SolveError::InvalidInput {
                field: "n_cells",
                constraint: "n_cells >= 8",
                value: self.n_cells as f64,
            });
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.n_cells as f64
    }

    pub fn len(&self) -> usize {
        self.n_cells + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        let offset = match self.geometry {
            Geometry::Radial => 0.0,
            Geometry::Axial => -0.5,
        };
        (0..=self.n_cells).map(|i| offset + i as f64 * h).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_span_the_domain() {
        let r = SpatialGrid::radial(8).unwrap().nodes();
        assert_eq!(r.len(), 9);
        assert_eq!((r[0], r[8]), (0.0, 1.0));
        let z = SpatialGrid::axial(10).unwrap().nodes();
        assert_eq!((z[0], z[10]), (-0.5, 0.5));
        assert!(z[5].abs() < 1e-15);
    }

    #[test]
    fn coarse_grids_are_rejected() {
        assert!(SpatialGrid::radial(7).is_err());
    }
}

//! Functions on the discrete phase space `Z_N × Z_N`.

use std::borrow::Cow;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::phasespace::{ModelDim, PhasePoint};
use crate::scalar::Real;

/// A value per phase point, stored with the time index `k` as the slow axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<V> {
    dim: ModelDim,
    cells: Vec<V>,
}

/// Complex-valued field, e.g. `V_g f` or a complex symbol.
pub type ScalarField<T> = Grid<Complex<T>>;
/// Real-valued field, e.g. a spectrogram, a symbol `h`, or raw weight values.
pub type RealGrid<T> = Grid<T>;
/// Operator-valued field `Ψ : Z_N × Z_N → C^{N×N}`.
pub type OperatorField<T> = Grid<OperatorMatrix<T>>;

impl<V> Grid<V> {
    pub fn from_fn(dim: ModelDim, mut f: impl FnMut(PhasePoint) -> V) -> Self {
        let cells = dim.points().map(&mut f).collect();
        Self { dim, cells }
    }

    /// Builds cells in parallel; the result is identical to [`Grid::from_fn`].
    pub fn from_fn_par(dim: ModelDim, f: impl Fn(PhasePoint) -> V + Sync) -> Self
    where
        V: Send,
    {
        let n = dim.n();
        let cells = (0..n * n).into_par_iter().map(|idx| f(PhasePoint { k: idx / n, l: idx % n })).collect();
        Self { dim, cells }
    }

    /// Builds from cells listed with `k` as the slow index.
    pub fn from_cells(dim: ModelDim, cells: Vec<V>) -> Result<Self> {
        let n = dim.n();
        if cells.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: cells.len() });
        }
        Ok(Self { dim, cells })
    }

    pub fn dim(&self) -> ModelDim {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.dim.n()
    }

    #[inline]
    pub fn get(&self, z: PhasePoint) -> &V {
        &self.cells[z.k * self.dim.n() + z.l]
    }

    #[inline]
    pub fn get_mut(&mut self, z: PhasePoint) -> &mut V {
        let n = self.dim.n();
        &mut self.cells[z.k * n + z.l]
    }

    pub fn cells(&self) -> &[V] {
        &self.cells
    }

    pub fn iter(&self) -> impl Iterator<Item = (PhasePoint, &V)> {
        self.dim.points().zip(self.cells.iter())
    }

    pub fn map<W>(&self, f: impl FnMut(&V) -> W) -> Grid<W> {
        Grid { dim: self.dim, cells: self.cells.iter().map(f).collect() }
    }
}

impl<T: Real> RealGrid<T> {
    pub fn constant(dim: ModelDim, value: T) -> Self {
        Self::from_fn(dim, |_| value)
    }

    pub fn max_value(&self) -> T {
        self.cells.iter().copied().fold(T::neg_infinity(), T::max)
    }

    pub fn min_value(&self) -> T {
        self.cells.iter().copied().fold(T::infinity(), T::min)
    }
}

impl<T: Real> ScalarField<T> {
    /// Lifts a real grid to a complex field.
    pub fn from_real(grid: &RealGrid<T>) -> Self {
        grid.map(|&x| Complex::new(x, T::zero()))
    }
}

impl<T: Real> OperatorField<T> {
    pub fn zeros(dim: ModelDim) -> Self {
        Self::from_fn(dim, |_| OperatorMatrix::zeros(dim.n()))
    }

    /// `z ↦ ‖Ψ(z)‖_HS`.
    pub fn hs_norm_grid(&self) -> RealGrid<T> {
        self.map(|a| a.hs_norm())
    }

    /// Pointwise product with a scalar field.
    pub fn multiply_scalar(&self, f: &ScalarField<T>) -> Self {
        Self::from_fn(self.dim, |z| self.get(z).scale(*f.get(z)))
    }

    /// `max_z ‖self(z) − other(z)‖_HS`.
    pub fn max_cell_distance(&self, other: &Self) -> T {
        self.cells.iter().zip(&other.cells).map(|(a, b)| a.hs_distance(b)).fold(T::zero(), T::max)
    }

    /// Checks that the grid size and every cell share the ambient dimension.
    pub fn check_cells(&self) -> Result<()> {
        let n = self.n();
        for a in &self.cells {
            a.check_dim(n)?;
        }
        Ok(())
    }
}

/// Cell-by-cell access to an operator field, dense or evaluated on demand.
pub trait FieldSource<T: Real>: Sync {
    fn dim(&self) -> ModelDim;
    fn cell(&self, z: PhasePoint) -> Cow<'_, OperatorMatrix<T>>;

    /// Materializes every cell.
    fn to_dense(&self) -> OperatorField<T> {
        OperatorField::from_fn_par(self.dim(), |z| self.cell(z).into_owned())
    }
}

impl<T: Real> FieldSource<T> for OperatorField<T> {
    fn dim(&self) -> ModelDim {
        self.dim
    }

    fn cell(&self, z: PhasePoint) -> Cow<'_, OperatorMatrix<T>> {
        Cow::Borrowed(self.get(z))
    }

    fn to_dense(&self) -> OperatorField<T> {
        self.clone()
    }
}

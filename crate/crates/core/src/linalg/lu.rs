//! Direct solves through a fill-reducing, row-pivoted sparse LU (faer).

use faer::prelude::Solve;
use faer::sparse::linalg::LuError;
use faer::sparse::{SparseColMat, Triplet};
use faer::Mat;

use super::sparse::{matvec, norm2, CsrMatrix};
use crate::error::{Error, Result};
use crate::problem::C64;

/// Relative residual every checked solve must reach.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// A factorization that can be reused for any number of right-hand sides.
/// Immutable once built, so concurrent solves are fine.
pub struct SparseLu {
    n: usize,
    lu: faer::sparse::linalg::solvers::Lu<usize, C64>,
}

impl std::fmt::Debug for SparseLu {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SparseLu").field("n", &self.n).finish()
    }
}

impl SparseLu {
    pub fn factor(a: &CsrMatrix) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: a.ncols(),
            });
        }
        if let Some(&row) = a.empty_rows().first() {
            return Err(Error::SingularMatrix { pivot: row });
        }
        let triplets: Vec<Triplet<usize, usize, C64>> = a
            .triplets()
            .map(|(i, j, v)| Triplet::new(i, j, v))
            .collect();
        let mat = SparseColMat::<usize, C64>::try_new_from_triplets(n, n, &triplets)
            .map_err(|e| Error::SolverFailure(format!("{e:?}")))?;
        let lu = mat.sp_lu().map_err(|e| match e {
            LuError::SymbolicSingular { index } => Error::SingularMatrix { pivot: index },
            LuError::Generic(err) => Error::SolverFailure(format!("{err:?}")),
        })?;
        Ok(SparseLu { n, lu })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve(&self, b: &[C64]) -> Result<Vec<C64>> {
        Ok(self.solve_many(&[b.to_vec()])?.pop().unwrap())
    }

    pub fn solve_many(&self, rhs: &[Vec<C64>]) -> Result<Vec<Vec<C64>>> {
        for b in rhs {
            if b.len() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    got: b.len(),
                });
            }
        }
        let b = Mat::<C64>::from_fn(self.n, rhs.len(), |i, j| rhs[j][i]);
        let x = self.lu.solve(&b);
        let out: Vec<Vec<C64>> = (0..rhs.len())
            .map(|j| (0..self.n).map(|i| x[(i, j)]).collect())
            .collect();
        if let Some(pos) = out
            .iter()
            .flat_map(|col| col.iter().enumerate())
            .find(|(_, v)| !v.re.is_finite() || !v.im.is_finite())
            .map(|(i, _)| i)
        {
            return Err(Error::SingularMatrix { pivot: pos });
        }
        Ok(out)
    }
}

/// `‖Ax - b‖ / ‖b‖`, or the absolute residual when `b = 0`.
pub fn relative_residual(a: &CsrMatrix, x: &[C64], b: &[C64]) -> Result<f64> {
    let ax = matvec(a, x)?;
    let r: Vec<C64> = ax.iter().zip(b).map(|(p, q)| p - q).collect();
    let nb = norm2(b);
    Ok(if nb > 0.0 { norm2(&r) / nb } else { norm2(&r) })
}

/// Factor, solve and verify the residual.
pub fn sparse_lu_solve(a: &CsrMatrix, b: &[C64]) -> Result<Vec<C64>> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.len(),
        });
    }
    let lu = SparseLu::factor(a)?;
    let x = lu.solve(b)?;
    let res = relative_residual(a, &x, b)?;
    if res > RESIDUAL_TOLERANCE {
        return Err(Error::SolverFailure(format!(
            "relative residual {res:.3e} exceeds {RESIDUAL_TOLERANCE:.0e}"
        )));
    }
    Ok(x)
}

//! End-to-end solves producing discontinuous P1 fields `u_h`, `σ_h`.

use std::time::Instant;

use crate::assembly::{assemble_system, reconstruct_flux, DofLayout, DofMap, FluxParams, Method};
use crate::error::Result;
use crate::linalg::{relative_residual, SparseLu, RESIDUAL_TOLERANCE};
use crate::mesh::{Mesh, Point};
use crate::problem::{HelmholtzProblem, C64};
use crate::quadrature::P1Basis;

/// Discrete fields on the discontinuous P1 layout of [`DofMap`], whatever
/// method produced them: continuous solutions are copied per triangle, and
/// `σ_h` is `∇u_h` for the conforming method and the reconstructed flux for
/// the primal one.
#[derive(Debug, Clone)]
pub struct DiscreteSolution {
    pub method: Method,
    /// `3` values per triangle.
    pub u: Vec<C64>,
    /// `6` values per triangle (`x` component nodes, then `y`).
    pub sigma: Vec<C64>,
    /// Relative residual of the linear solve.
    pub residual: f64,
    pub solve_seconds: f64,
}

impl DiscreteSolution {
    pub fn zeros(mesh: &Mesh, method: Method) -> Self {
        let d = DofMap::new(mesh);
        DiscreteSolution {
            method,
            u: vec![C64::new(0.0, 0.0); d.n_u()],
            sigma: vec![C64::new(0.0, 0.0); d.n_sigma()],
            residual: 0.0,
            solve_seconds: 0.0,
        }
    }

    /// Nodal interpolant of `field` (discontinuous layout, `σ_h = ∇u_h`).
    pub fn interpolate<F: Fn(Point) -> C64>(mesh: &Mesh, method: Method, field: F) -> Self {
        let vals: Vec<C64> = mesh.vertices().iter().map(|&p| field(p)).collect();
        from_vertex_values(mesh, method, &vals)
    }

    pub fn scaled(&self, c: C64) -> Self {
        DiscreteSolution {
            u: self.u.iter().map(|v| v * c).collect(),
            sigma: self.sigma.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    pub fn u_local(&self, t: usize) -> [C64; 3] {
        [self.u[3 * t], self.u[3 * t + 1], self.u[3 * t + 2]]
    }

    /// `σ_h` nodal values on triangle `t`, `[component][node]`.
    pub fn sigma_local(&self, t: usize) -> [[C64; 3]; 2] {
        let s = &self.sigma[6 * t..6 * t + 6];
        [[s[0], s[1], s[2]], [s[3], s[4], s[5]]]
    }

    /// Mixed-layout coefficient vector `[u | σ]`.
    pub fn mixed_coefficients(&self) -> Vec<C64> {
        self.u.iter().chain(&self.sigma).copied().collect()
    }
}

fn from_vertex_values(mesh: &Mesh, method: Method, vals: &[C64]) -> DiscreteSolution {
    let mut sol = DiscreteSolution::zeros(mesh, method);
    for (t, tri) in mesh.triangles().iter().enumerate() {
        let basis = P1Basis::new(mesh.triangle_points(t)).expect("valid mesh");
        let local = tri.vertices.map(|v| vals[v]);
        let mut grad = [C64::new(0.0, 0.0); 2];
        for i in 0..3 {
            sol.u[3 * t + i] = local[i];
            for (c, g) in grad.iter_mut().enumerate() {
                *g += local[i] * basis.gradients[i][c];
            }
        }
        for c in 0..2 {
            for i in 0..3 {
                sol.sigma[6 * t + 3 * c + i] = grad[c];
            }
        }
    }
    sol
}

/// Assembles, factors and solves one discretization; the residual is
/// checked against [`RESIDUAL_TOLERANCE`].
pub fn solve(
    method: Method,
    mesh: &Mesh,
    problem: &dyn HelmholtzProblem,
    params: &FluxParams,
) -> Result<DiscreteSolution> {
    let start = Instant::now();
    let system = assemble_system(method, mesh, problem, params)?;
    let lu = SparseLu::factor(&system.matrix)?;
    let x = lu.solve(&system.rhs)?;
    let residual = relative_residual(&system.matrix, &x, &system.rhs)?;
    if residual > RESIDUAL_TOLERANCE {
        return Err(crate::error::Error::SolverFailure(format!(
            "{method}: relative residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE:.0e}"
        )));
    }
    let mut sol = match system.layout {
        DofLayout::Mixed(d) => DiscreteSolution {
            method,
            u: x[..d.n_u()].to_vec(),
            sigma: x[d.n_u()..].to_vec(),
            residual,
            solve_seconds: 0.0,
        },
        DofLayout::Scalar(_) => {
            let sigma = reconstruct_flux(mesh, params, &x)?;
            DiscreteSolution {
                method,
                u: x,
                sigma,
                residual,
                solve_seconds: 0.0,
            }
        }
        DofLayout::Vertex(_) => {
            let mut s = from_vertex_values(mesh, method, &x);
            s.residual = residual;
            s
        }
    };
    sol.solve_seconds = start.elapsed().as_secs_f64();
    Ok(sol)
}

use serde::{Deserialize, Serialize};

use crate::assembly::{FluxParams, Method, DATA_EDGE_DEGREE, DATA_TRIANGLE_DEGREE};
use crate::error::{Error, Result};
use crate::mesh::{Mesh, Point};
use crate::problem::{HelmholtzProblem, C64};
use crate::quadrature::{edge_rule, triangle_rule, P1Basis};
use crate::solve::DiscreteSolution;

/// Value, gradient and flux of a field at one point.
#[derive(Debug, Clone, Copy)]
pub struct Sample {
    pub u: C64,
    pub grad: [C64; 2],
    pub sigma: [C64; 2],
}

/// Broken norms of a (piecewise smooth) scalar/flux pair.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct FieldNorms {
    /// `‖u‖_{L²(Ω)}`
    pub l2: f64,
    /// `|u|_{1,h}`
    pub h1: f64,
    /// `‖σ‖_{L²(Ω)}`
    pub sigma: f64,
    /// `‖u‖_{L²(Γ)}`
    pub l2_boundary: f64,
    /// `‖∇_h u‖_{L²(Γ)}`
    pub grad_boundary: f64,
}

impl FieldNorms {
    /// `‖u‖_DG = (k²‖u‖² + k²‖u‖²_Γ + c_Ω‖∇_h u‖²_Γ + |u|²_{1,h})^{1/2}`.
    pub fn dg(&self, k: f64, c_omega: f64) -> f64 {
        (k * k * self.l2.powi(2)
            + k * k * self.l2_boundary.powi(2)
            + c_omega * self.grad_boundary.powi(2)
            + self.h1.powi(2))
        .sqrt()
    }

    /// `⦀(u, σ)⦀_DG = (k²‖u‖² + k²‖u‖²_Γ + ‖σ‖² + c_Ω‖∇_h u‖²_Γ)^{1/2}`.
    pub fn dg_pair(&self, k: f64, c_omega: f64) -> f64 {
        (k * k * self.l2.powi(2)
            + k * k * self.l2_boundary.powi(2)
            + self.sigma.powi(2)
            + c_omega * self.grad_boundary.powi(2))
        .sqrt()
    }
}

/// Evaluates the discrete fields of triangle `t` at barycentric point `l`.
pub fn discrete_sample(sol: &DiscreteSolution, basis: &P1Basis, t: usize, l: [f64; 3]) -> Sample {
    let u = sol.u_local(t);
    let s = sol.sigma_local(t);
    let mut out = Sample {
        u: C64::new(0.0, 0.0),
        grad: [C64::new(0.0, 0.0); 2],
        sigma: [C64::new(0.0, 0.0); 2],
    };
    for i in 0..3 {
        out.u += u[i] * l[i];
        for c in 0..2 {
            out.grad[c] += u[i] * basis.gradients[i][c];
            out.sigma[c] += s[c][i] * l[i];
        }
    }
    out
}

/// Integrates the squared field with the data-accuracy rules. `field` gets
/// the triangle index, its basis, the barycentric and physical point.
pub fn field_norms<F>(mesh: &Mesh, field: F) -> FieldNorms
where
    F: Fn(usize, &P1Basis, [f64; 3], Point) -> Sample,
{
    let tri_rule = triangle_rule(DATA_TRIANGLE_DEGREE).expect("supported degree");
    let bnd_rule = edge_rule(DATA_EDGE_DEGREE).expect("supported degree");
    let mut acc = [0.0f64; 5];
    let mut bases = Vec::with_capacity(mesh.num_triangles());
    for t in 0..mesh.num_triangles() {
        let basis = P1Basis::new(mesh.triangle_points(t)).expect("valid mesh");
        for (l, w) in tri_rule.barycentric_nodes() {
            let w = w * basis.area;
            let s = field(t, &basis, l, basis.point(l));
            acc[0] += w * s.u.norm_sqr();
            acc[1] += w * (s.grad[0].norm_sqr() + s.grad[1].norm_sqr());
            acc[2] += w * (s.sigma[0].norm_sqr() + s.sigma[1].norm_sqr());
        }
        bases.push(basis);
    }
    for edge in mesh.boundary_edges() {
        let t = edge.primary.triangle;
        let p = mesh.vertices()[edge.vertices[0]];
        let q = mesh.vertices()[edge.vertices[1]];
        for (s, w) in bnd_rule.segment_nodes() {
            let x = [p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])];
            let w = w * edge.length;
            let sample = field(t, &bases[t], bases[t].barycentric(x), x);
            acc[3] += w * sample.u.norm_sqr();
            acc[4] += w * (sample.grad[0].norm_sqr() + sample.grad[1].norm_sqr());
        }
    }
    FieldNorms {
        l2: acc[0].sqrt(),
        h1: acc[1].sqrt(),
        sigma: acc[2].sqrt(),
        l2_boundary: acc[3].sqrt(),
        grad_boundary: acc[4].sqrt(),
    }
}

pub fn discrete_norms(mesh: &Mesh, sol: &DiscreteSolution) -> FieldNorms {
    field_norms(mesh, |t, basis, l, _| discrete_sample(sol, basis, t, l))
}

pub fn exact_norms(mesh: &Mesh, problem: &dyn HelmholtzProblem) -> Result<FieldNorms> {
    if !problem.has_exact() {
        return Err(Error::MissingExactSolution);
    }
    Ok(field_norms(mesh, |_, _, _, x| {
        let (u, g) = problem.exact(x).expect("has exact solution");
        Sample {
            u,
            grad: g,
            sigma: g,
        }
    }))
}

/// Norms of `u - u_h` (and `∇u - σ_h` for the flux).
pub fn difference_norms(
    mesh: &Mesh,
    sol: &DiscreteSolution,
    problem: &dyn HelmholtzProblem,
) -> Result<FieldNorms> {
    if !problem.has_exact() {
        return Err(Error::MissingExactSolution);
    }
    Ok(field_norms(mesh, |t, basis, l, x| {
        let (u, g) = problem.exact(x).expect("has exact solution");
        let d = discrete_sample(sol, basis, t, l);
        Sample {
            u: u - d.u,
            grad: [g[0] - d.grad[0], g[1] - d.grad[1]],
            sigma: [g[0] - d.sigma[0], g[1] - d.sigma[1]],
        }
    }))
}

/// Absolute and relative value of one error measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorPair {
    pub abs: f64,
    pub rel: f64,
}

impl ErrorPair {
    fn new(abs: f64, reference: f64) -> Self {
        ErrorPair {
            abs,
            rel: if reference > 0.0 {
                abs / reference
            } else {
                f64::NAN
            },
        }
    }
}

/// Errors of one solve against the exact solution, tagged with the discretization that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub method: Method,
    pub k: f64,
    pub m: usize,
    pub h: f64,
    pub params: Option<FluxParams>,
    pub triangle_quadrature_degree: usize,
    pub edge_quadrature_degree: usize,
    /// `|u - u_h|_{1,h}`
    pub h1: ErrorPair,
    /// `‖u - u_h‖_{L²(Ω)}`
    pub l2: ErrorPair,
    /// `‖u - u_h‖_{L²(Γ)}`
    pub l2_boundary: ErrorPair,
    /// `‖σ - σ_h‖_{L²(Ω)}`
    pub sigma: ErrorPair,
    /// `‖u - u_h‖_DG`
    pub dg: ErrorPair,
    /// `⦀(u - u_h, σ - σ_h)⦀_DG`
    pub dg_pair: ErrorPair,
    /// `‖u_h‖_DG`
    pub solution_dg_norm: f64,
    /// `⦀(u_h, σ_h)⦀_DG`
    pub solution_dg_pair_norm: f64,
    pub residual: f64,
    pub solve_seconds: f64,
}

pub fn error_norms(
    mesh: &Mesh,
    solution: &DiscreteSolution,
    problem: &dyn HelmholtzProblem,
    params: Option<&FluxParams>,
) -> Result<ErrorReport> {
    let k = problem.wave_number();
    let c_omega = mesh.domain_info().star_constant;
    let exact = exact_norms(mesh, problem)?;
    let err = difference_norms(mesh, solution, problem)?;
    let disc = discrete_norms(mesh, solution);
    Ok(ErrorReport {
        method: solution.method,
        k,
        m: mesh.subdivisions(),
        h: mesh.h(),
        params: if solution.method.uses_flux_params() {
            params.copied()
        } else {
            None
        },
        triangle_quadrature_degree: DATA_TRIANGLE_DEGREE,
        edge_quadrature_degree: DATA_EDGE_DEGREE,
        h1: ErrorPair::new(err.h1, exact.h1),
        l2: ErrorPair::new(err.l2, exact.l2),
        l2_boundary: ErrorPair::new(err.l2_boundary, exact.l2_boundary),
        sigma: ErrorPair::new(err.sigma, exact.sigma),
        dg: ErrorPair::new(err.dg(k, c_omega), exact.dg(k, c_omega)),
        dg_pair: ErrorPair::new(err.dg_pair(k, c_omega), exact.dg_pair(k, c_omega)),
        solution_dg_norm: disc.dg(k, c_omega),
        solution_dg_pair_norm: disc.dg_pair(k, c_omega),
        residual: solution.residual,
        solve_seconds: solution.solve_seconds,
    })
}

/// Relative `|u - I_h u|_{1,h} / |u|_{1,h}` for the continuous nodal interpolant.
pub fn interpolation_baseline(mesh: &Mesh, problem: &dyn HelmholtzProblem) -> Result<f64> {
    if !problem.has_exact() {
        return Err(Error::MissingExactSolution);
    }
    let interp = DiscreteSolution::interpolate(mesh, Method::FemP1, |p| {
        problem.exact(p).expect("has exact solution").0
    });
    let err = difference_norms(mesh, &interp, problem)?;
    let exact = exact_norms(mesh, problem)?;
    Ok(err.h1 / exact.h1)
}

use serde::{Deserialize, Serialize};

use super::norms::discrete_norms;
use crate::assembly::{FluxParams, Method, DATA_EDGE_DEGREE, DATA_TRIANGLE_DEGREE};
use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::problem::HelmholtzProblem;
use crate::quadrature::{edge_rule, triangle_rule, P1Basis};
use crate::solve::solve;

/// Interior edge data entering the stability constants.
#[derive(Debug, Clone, Copy)]
pub struct EdgePenalty {
    pub h_e: f64,
    pub beta: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityConstants {
    pub gamma1: f64,
    pub gamma2: f64,
}

/// `γ1 = 1 + k + √(β/δ) + max_e ((k²+1)/(βh_e) + 1/h_e² + 1/(βh_e³))` and
/// `γ2 = k + max_e ((k²+1)/(βh_e) + (β+δ)/h_e + δ/h_e³ + 1/(βh_e³))`,
/// with `√(β/δ)` taken on the edge that maximizes it.
pub fn gamma_from_edges<I>(k: f64, edges: I) -> Result<StabilityConstants>
where
    I: IntoIterator<Item = EdgePenalty>,
{
    let k2 = k * k;
    let mut ratio = f64::NEG_INFINITY;
    let mut t1 = f64::NEG_INFINITY;
    let mut t2 = f64::NEG_INFINITY;
    for EdgePenalty {
        h_e: h,
        beta,
        delta,
    } in edges
    {
        ratio = ratio.max((beta / delta).sqrt());
        t1 = t1.max((k2 + 1.0) / (beta * h) + 1.0 / (h * h) + 1.0 / (beta * h.powi(3)));
        t2 = t2.max(
            (k2 + 1.0) / (beta * h)
                + (beta + delta) / h
                + delta / h.powi(3)
                + 1.0 / (beta * h.powi(3)),
        );
    }
    if t1 == f64::NEG_INFINITY {
        return Err(Error::NoInteriorEdges);
    }
    Ok(StabilityConstants {
        gamma1: 1.0 + k + ratio + t1,
        gamma2: k + t2,
    })
}

pub fn stability_constants(k: f64, mesh: &Mesh, params: &FluxParams) -> Result<StabilityConstants> {
    gamma_from_edges(
        k,
        mesh.interior_edges().map(|e| EdgePenalty {
            h_e: e.length,
            beta: params.beta(e.length),
            delta: params.delta(e.length),
        }),
    )
}

/// `M(f, g) = ‖f‖_{L²(Ω)} + ‖g‖_{L²(Γ)}`.
pub fn data_functional(mesh: &Mesh, problem: &dyn HelmholtzProblem) -> f64 {
    let tri_rule = triangle_rule(DATA_TRIANGLE_DEGREE).expect("supported degree");
    let bnd_rule = edge_rule(DATA_EDGE_DEGREE).expect("supported degree");
    let mut f2 = 0.0;
    for t in 0..mesh.num_triangles() {
        let basis = P1Basis::new(mesh.triangle_points(t)).expect("valid mesh");
        for (l, w) in tri_rule.barycentric_nodes() {
            f2 += w * basis.area * problem.source(basis.point(l)).norm_sqr();
        }
    }
    let mut g2 = 0.0;
    for e in mesh.boundary_edges() {
        let p = mesh.vertices()[e.vertices[0]];
        let q = mesh.vertices()[e.vertices[1]];
        for (s, w) in bnd_rule.segment_nodes() {
            let x = [p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])];
            g2 += w * e.length * problem.boundary_datum(x, e.normal).norm_sqr();
        }
    }
    f2.sqrt() + g2.sqrt()
}

/// Observed stability ratio `k‖u_h‖_DG / (γ1 M(f,g))` (LDG #1 and its
/// primal form) or `k⦀(u_h,σ_h)⦀_DG / (γ2 M(f,g))` (LDG #2).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityAudit {
    pub method: Method,
    pub k: f64,
    pub m: usize,
    pub params: FluxParams,
    pub gamma: f64,
    pub data_norm: f64,
    pub solution_norm: f64,
    pub ratio: f64,
}

pub fn stability_audit(
    method: Method,
    mesh: &Mesh,
    params: &FluxParams,
    problem: &dyn HelmholtzProblem,
) -> Result<StabilityAudit> {
    if method == Method::FemP1 {
        return Err(Error::InvalidArgument(
            "stability audit applies to the LDG methods only".into(),
        ));
    }
    let k = problem.wave_number();
    let data_norm = data_functional(mesh, problem);
    if !(data_norm > 0.0) {
        return Err(Error::InvalidArgument(
            "stability ratio is undefined for zero data".into(),
        ));
    }
    let gammas = stability_constants(k, mesh, params)?;
    let sol = solve(method, mesh, problem, params)?;
    let norms = discrete_norms(mesh, &sol);
    let c_omega = mesh.domain_info().star_constant;
    let (gamma, solution_norm) = match method {
        Method::Ldg2 => (gammas.gamma2, norms.dg_pair(k, c_omega)),
        _ => (gammas.gamma1, norms.dg(k, c_omega)),
    };
    Ok(StabilityAudit {
        method,
        k,
        m: mesh.subdivisions(),
        params: *params,
        gamma,
        data_norm,
        solution_norm,
        ratio: solution_norm * k / (gamma * data_norm),
    })
}

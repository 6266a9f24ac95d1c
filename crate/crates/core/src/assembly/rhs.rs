use super::geometry::{EdgeQuadrature, ElementGeometry};
use super::{DofMap, DATA_EDGE_DEGREE, DATA_TRIANGLE_DEGREE};
use crate::mesh::Mesh;
use crate::problem::{HelmholtzProblem, C64};
use crate::quadrature::{edge_rule, triangle_rule};

/// Per-triangle load contributions `(f, φ_i)_K + ⟨g, φ_i⟩_{∂K ∩ Γ}`.
fn element_loads(mesh: &Mesh, problem: &dyn HelmholtzProblem) -> Vec<[C64; 3]> {
    // a mesh that passed construction has no degenerate triangles
    let geom = ElementGeometry::new(mesh).expect("valid mesh");
    let tri_rule = triangle_rule(DATA_TRIANGLE_DEGREE).expect("supported degree");
    let bnd_rule = edge_rule(DATA_EDGE_DEGREE).expect("supported degree");
    let mut loads = vec![[C64::new(0.0, 0.0); 3]; mesh.num_triangles()];
    for (t, basis) in geom.basis.iter().enumerate() {
        for (l, w) in tri_rule.barycentric_nodes() {
            let f = problem.source(basis.point(l)) * (w * basis.area);
            for i in 0..3 {
                loads[t][i] += f * l[i];
            }
        }
    }
    for edge in mesh.boundary_edges() {
        let eq = EdgeQuadrature::new(mesh, &geom, edge, &bnd_rule);
        let t = edge.primary.triangle;
        for (q, &x) in eq.points.iter().enumerate() {
            let g = problem.boundary_datum(x, edge.normal) * eq.weights[q];
            for i in 0..3 {
                loads[t][i] += g * eq.values[0][q][i];
            }
        }
    }
    loads
}

/// `F(v, τ) = (f, v) + ⟨g, v⟩_Γ` on the mixed layout; the `σ` rows are zero.
pub fn assemble_rhs(mesh: &Mesh, problem: &dyn HelmholtzProblem, dofs: &DofMap) -> Vec<C64> {
    let mut rhs = vec![C64::new(0.0, 0.0); dofs.total()];
    for (t, load) in element_loads(mesh, problem).into_iter().enumerate() {
        for (i, v) in load.into_iter().enumerate() {
            rhs[dofs.u(t, i)] = v;
        }
    }
    rhs
}

/// `F(v)` on continuous P1 vertex unknowns.
pub fn assemble_vertex_rhs(mesh: &Mesh, problem: &dyn HelmholtzProblem) -> Vec<C64> {
    let mut rhs = vec![C64::new(0.0, 0.0); mesh.vertices().len()];
    for (t, load) in element_loads(mesh, problem).into_iter().enumerate() {
        for (i, v) in load.into_iter().enumerate() {
            rhs[mesh.triangles()[t].vertices[i]] += v;
        }
    }
    rhs
}

use super::geometry::{dot, poly_rules, EdgeQuadrature, ElementGeometry, ElementIntegrals};
use super::{check_inputs, AssembledSystem, DofLayout, Method};
use crate::error::Result;
use crate::linalg::TripletBuilder;
use crate::mesh::Mesh;
use crate::problem::{C64, I};

/// Continuous P1 system `(∇u, ∇v) - k²(u, v) + ik⟨u, v⟩_Γ` on vertex unknowns.
pub fn assemble_conforming_fem(mesh: &Mesh, k: f64) -> Result<AssembledSystem> {
    check_inputs(k, None)?;
    let geom = ElementGeometry::new(mesh)?;
    let n = mesh.vertices().len();
    let mut b = TripletBuilder::with_capacity(n, n, 9 * mesh.num_triangles());
    let (tri_rule, edge_rule) = poly_rules();
    let k2 = k * k;
    for (t, basis) in geom.basis.iter().enumerate() {
        let ints = ElementIntegrals::new(basis, &tri_rule);
        let v = mesh.triangles()[t].vertices;
        for i in 0..3 {
            for j in 0..3 {
                let stiff = basis.area * dot(basis.gradients[i], basis.gradients[j]);
                b.push(v[i], v[j], C64::from(stiff - k2 * ints.mass[i][j]));
            }
        }
    }
    for edge in mesh.boundary_edges() {
        let eq = EdgeQuadrature::new(mesh, &geom, edge, &edge_rule);
        let v = mesh.triangles()[edge.primary.triangle].vertices;
        for i in 0..3 {
            for j in 0..3 {
                b.push(v[i], v[j], I * k * eq.product(0, j, 0, i));
            }
        }
    }
    Ok(AssembledSystem {
        matrix: b.build(),
        rhs: vec![C64::new(0.0, 0.0); n],
        layout: DofLayout::Vertex(n),
        method: Method::FemP1,
        k,
        params: None,
    })
}

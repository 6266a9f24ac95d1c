use super::geometry::{dot, poly_rules, sides, EdgeQuadrature, ElementGeometry, ElementIntegrals};
use super::{check_inputs, AssembledSystem, DofLayout, DofMap, FluxParams, Method};
use crate::error::Result;
use crate::linalg::TripletBuilder;
use crate::mesh::Mesh;
use crate::problem::{C64, I};

/// Interior-penalty form equivalent to LDG #1 after eliminating `σ`:
///
/// `(∇u, ∇v) - k²(u, v) + ik⟨u, v⟩_Γ + iΣ_e (δ⟨[[∇u]], [[∇v]]⟩ + β⟨[[u]], [[v]]⟩)
///  - Σ_e (⟨[[u]], {∇v}⟩ + ⟨{∇u}, [[v]]⟩)`.
pub fn assemble_primal_ipdg(mesh: &Mesh, k: f64, params: &FluxParams) -> Result<AssembledSystem> {
    check_inputs(k, Some(params))?;
    let geom = ElementGeometry::new(mesh)?;
    let dofs = DofMap::new(mesh);
    let n = dofs.n_u();
    let mut b = TripletBuilder::with_capacity(n, n, 45 * mesh.num_triangles());
    let (tri_rule, edge_rule) = poly_rules();
    let k2 = k * k;

    for (t, basis) in geom.basis.iter().enumerate() {
        let ints = ElementIntegrals::new(basis, &tri_rule);
        for i in 0..3 {
            for j in 0..3 {
                let stiff = basis.area * dot(basis.gradients[i], basis.gradients[j]);
                b.push(
                    dofs.u(t, i),
                    dofs.u(t, j),
                    C64::from(stiff - k2 * ints.mass[i][j]),
                );
            }
        }
    }

    for edge in mesh.edges() {
        let eq = EdgeQuadrature::new(mesh, &geom, edge, &edge_rule);
        if !edge.is_interior() {
            let t = edge.primary.triangle;
            for i in 0..3 {
                for j in 0..3 {
                    b.push(dofs.u(t, i), dofs.u(t, j), I * k * eq.product(0, j, 0, i));
                }
            }
            continue;
        }
        let n_e = edge.normal;
        let beta = params.beta(edge.length);
        let delta = params.delta(edge.length);
        let sides = sides(edge);
        for &(sa, ta, sign_a) in &sides {
            for &(sb, tb, sign_b) in &sides {
                for i in 0..3 {
                    for j in 0..3 {
                        let trial_gn = dot(geom.basis[ta].gradients[j], n_e);
                        let test_gn = dot(geom.basis[tb].gradients[i], n_e);
                        let pp = eq.product(sa, j, sb, i);
                        let jump_grad = sign_a * trial_gn * sign_b * test_gn * edge.length;
                        let consistency = 0.5 * sign_a * test_gn * eq.integral(sa, j)
                            + 0.5 * trial_gn * sign_b * eq.integral(sb, i);
                        let v = I * (delta * jump_grad + beta * sign_a * sign_b * pp)
                            - C64::from(consistency);
                        b.push(dofs.u(tb, i), dofs.u(ta, j), v);
                    }
                }
            }
        }
    }

    Ok(AssembledSystem {
        matrix: b.build(),
        rhs: vec![C64::new(0.0, 0.0); n],
        layout: DofLayout::Scalar(dofs),
        method: Method::IpdgPrimal,
        k,
        params: Some(*params),
    })
}

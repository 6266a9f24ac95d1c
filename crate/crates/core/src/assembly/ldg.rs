use super::geometry::{dot, poly_rules, sides, EdgeQuadrature, ElementGeometry, ElementIntegrals};
use super::{check_inputs, AssembledSystem, DofLayout, DofMap, FluxParams, Method};
use crate::error::Result;
use crate::linalg::TripletBuilder;
use crate::mesh::Mesh;
use crate::problem::{C64, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Variant {
    /// Fluxes built from `∇_h u`.
    Gradient,
    /// Fluxes built from `σ`.
    Flux,
}

/// Mixed LDG #1 matrix: the fluxes use `{∇_h u}` and `[[∇_h u]]`.
pub fn assemble_ldg1(mesh: &Mesh, k: f64, params: &FluxParams) -> Result<AssembledSystem> {
    assemble_mixed(mesh, k, params, Variant::Gradient)
}

/// Mixed LDG #2 matrix: the fluxes use `{σ}` and `[[σ]]`.
pub fn assemble_ldg2(mesh: &Mesh, k: f64, params: &FluxParams) -> Result<AssembledSystem> {
    assemble_mixed(mesh, k, params, Variant::Flux)
}

fn assemble_mixed(
    mesh: &Mesh,
    k: f64,
    params: &FluxParams,
    variant: Variant,
) -> Result<AssembledSystem> {
    check_inputs(k, Some(params))?;
    let geom = ElementGeometry::new(mesh)?;
    let dofs = DofMap::new(mesh);
    let n = dofs.total();
    let mut b = TripletBuilder::with_capacity(n, n, 120 * mesh.num_triangles());
    let (tri_rule, edge_rule) = poly_rules();
    let k2 = k * k;

    for (t, basis) in geom.basis.iter().enumerate() {
        let ints = ElementIntegrals::new(basis, &tri_rule);
        for i in 0..3 {
            for j in 0..3 {
                // -k²(w, v)
                b.push(dofs.u(t, i), dofs.u(t, j), C64::from(-k2 * ints.mass[i][j]));
                for c in 0..2 {
                    // (χ, ∇v)
                    b.push(
                        dofs.u(t, i),
                        dofs.sigma(t, c, j),
                        C64::from(basis.gradients[i][c] * ints.integral[j]),
                    );
                    // (χ, τ)
                    b.push(
                        dofs.sigma(t, c, i),
                        dofs.sigma(t, c, j),
                        C64::from(ints.mass[i][j]),
                    );
                }
            }
        }
    }

    for edge in mesh.edges() {
        let eq = EdgeQuadrature::new(mesh, &geom, edge, &edge_rule);
        let n_e = edge.normal;
        if !edge.is_interior() {
            // ik⟨w, v⟩_Γ
            let t = edge.primary.triangle;
            for i in 0..3 {
                for j in 0..3 {
                    b.push(dofs.u(t, i), dofs.u(t, j), I * k * eq.product(0, j, 0, i));
                }
            }
            continue;
        }
        let beta = params.beta(edge.length);
        let sides = sides(edge);
        for &(sa, ta, sign_a) in &sides {
            for &(sb, tb, sign_b) in &sides {
                for i in 0..3 {
                    for j in 0..3 {
                        let pp = eq.product(sa, j, sb, i);
                        // iβ⟨[[w]], [[v]]⟩
                        let mut uu = I * beta * sign_a * sign_b * pp;
                        match variant {
                            Variant::Gradient => {
                                // -⟨{∇w}, [[v]]⟩
                                let g_n = dot(geom.basis[ta].gradients[j], n_e);
                                uu -= C64::from(0.5 * g_n * sign_b * eq.integral(sb, i));
                            }
                            Variant::Flux => {
                                for c in 0..2 {
                                    // -⟨{χ}, [[v]]⟩
                                    b.push(
                                        dofs.u(tb, i),
                                        dofs.sigma(ta, c, j),
                                        C64::from(-0.5 * n_e[c] * sign_b * pp),
                                    );
                                }
                            }
                        }
                        b.push(dofs.u(tb, i), dofs.u(ta, j), uu);
                    }
                }
            }
        }
        if variant == Variant::Flux {
            let delta = params.delta(edge.length);
            for &(sa, ta, sign_a) in &sides {
                for &(sb, tb, sign_b) in &sides {
                    for i in 0..3 {
                        for j in 0..3 {
                            let pp = eq.product(sa, j, sb, i);
                            for c in 0..2 {
                                for d in 0..2 {
                                    // -iδ⟨[[χ]], [[τ]]⟩
                                    b.push(
                                        dofs.sigma(tb, d, i),
                                        dofs.sigma(ta, c, j),
                                        -I * delta * sign_a * sign_b * n_e[c] * n_e[d] * pp,
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    push_flux_rows(mesh, &geom, params, variant, &mut b, dofs.n_u());

    Ok(AssembledSystem {
        matrix: b.build(),
        rhs: vec![C64::new(0.0, 0.0); n],
        layout: DofLayout::Mixed(dofs),
        method: match variant {
            Variant::Gradient => Method::Ldg1,
            Variant::Flux => Method::Ldg2,
        },
        k,
        params: Some(*params),
    })
}

/// Rows tested with `τ`, columns `u`:
/// `-(∇w, τ) + Σ_e ⟨[[w]], {τ}⟩`, plus `-Σ_e iδ⟨[[∇w]], [[τ]]⟩` for LDG #1.
/// Row `row_offset + σ-local index`, column the `u` index.
pub(crate) fn push_flux_rows(
    mesh: &Mesh,
    geom: &ElementGeometry,
    params: &FluxParams,
    variant: Variant,
    b: &mut TripletBuilder,
    row_offset: usize,
) {
    let dofs = DofMap::new(mesh);
    let (tri_rule, edge_rule) = poly_rules();
    for (t, basis) in geom.basis.iter().enumerate() {
        let ints = ElementIntegrals::new(basis, &tri_rule);
        for i in 0..3 {
            for j in 0..3 {
                for c in 0..2 {
                    b.push(
                        row_offset + dofs.sigma_local(t, c, i),
                        dofs.u(t, j),
                        C64::from(-basis.gradients[j][c] * ints.integral[i]),
                    );
                }
            }
        }
    }
    for edge in mesh.interior_edges() {
        let eq = EdgeQuadrature::new(mesh, geom, edge, &edge_rule);
        let n_e = edge.normal;
        let delta = params.delta(edge.length);
        let sides = sides(edge);
        for &(sa, ta, sign_a) in &sides {
            for &(sb, tb, sign_b) in &sides {
                for i in 0..3 {
                    for j in 0..3 {
                        let pp = eq.product(sa, j, sb, i);
                        let g_n = dot(geom.basis[ta].gradients[j], n_e);
                        let test_int = eq.integral(sb, i);
                        for c in 0..2 {
                            // ⟨[[w]], {τ}⟩
                            let mut v = C64::from(0.5 * sign_a * n_e[c] * pp);
                            if variant == Variant::Gradient {
                                // -iδ⟨[[∇w]], [[τ]]⟩
                                v -= I * delta * sign_a * g_n * sign_b * n_e[c] * test_int;
                            }
                            b.push(row_offset + dofs.sigma_local(tb, c, i), dofs.u(ta, j), v);
                        }
                    }
                }
            }
        }
    }
}

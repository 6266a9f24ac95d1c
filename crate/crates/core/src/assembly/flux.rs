//! Elementwise recovery of `σ_h` from `u_h` and the matching static
//! condensation of the LDG #1 mixed matrix.

use super::geometry::{poly_rules, ElementGeometry, ElementIntegrals};
use super::ldg::{push_flux_rows, Variant};
use super::{AssembledSystem, DofLayout, DofMap, FluxParams, Method};
use crate::error::{Error, Result};
use crate::linalg::{matvec, CsrMatrix, TripletBuilder};
use crate::mesh::Mesh;
use crate::problem::C64;

type Mat3 = [[f64; 3]; 3];

fn invert3(m: &Mat3) -> Option<Mat3> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let scale = m.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    if !(det.abs() > 1e-13 * scale.powi(3)) {
        return None;
    }
    let mut inv = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            inv[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / det;
        }
    }
    Some(inv)
}

/// Solves `(σ_h, τ) = (∇_h u_h, τ) + Σ_e (iδ⟨[[∇_h u_h]], [[τ]]⟩ - ⟨[[u_h]], {τ}⟩)`
/// for all `τ`. The `σ` mass matrix is block diagonal, so this is one 3x3
/// solve per triangle and component.
pub fn reconstruct_flux(mesh: &Mesh, params: &FluxParams, u: &[C64]) -> Result<Vec<C64>> {
    params.validate()?;
    let dofs = DofMap::new(mesh);
    if u.len() != dofs.n_u() {
        return Err(Error::DimensionMismatch {
            expected: dofs.n_u(),
            got: u.len(),
        });
    }
    let geom = ElementGeometry::new(mesh)?;
    let mut coupling = TripletBuilder::new(dofs.n_sigma(), dofs.n_u());
    push_flux_rows(mesh, &geom, params, Variant::Gradient, &mut coupling, 0);
    let coupling = coupling.build();
    let rhs: Vec<C64> = matvec(&coupling, u)?.into_iter().map(|v| -v).collect();

    let (tri_rule, _) = poly_rules();
    let mut sigma = vec![C64::new(0.0, 0.0); dofs.n_sigma()];
    for (t, basis) in geom.basis.iter().enumerate() {
        let mass = ElementIntegrals::new(basis, &tri_rule).mass;
        let inv = invert3(&mass).ok_or(Error::DegenerateTriangle(t))?;
        for c in 0..2 {
            for i in 0..3 {
                sigma[dofs.sigma_local(t, c, i)] = (0..3)
                    .map(|j| rhs[dofs.sigma_local(t, c, j)] * inv[i][j])
                    .sum();
            }
        }
    }
    Ok(sigma)
}

/// Schur complement `A_uu - A_uσ A_σσ^{-1} A_σu` of an LDG #1 mixed matrix.
/// Requires the `σ`-`σ` block to be block diagonal per triangle and component.
pub fn eliminate_flux(system: &AssembledSystem) -> Result<CsrMatrix> {
    let dofs = match system.layout {
        DofLayout::Mixed(d) if system.method == Method::Ldg1 => d,
        _ => {
            return Err(Error::InvalidArgument(
                "flux elimination needs an LDG #1 mixed system".into(),
            ))
        }
    };
    let a = &system.matrix;
    let (nu, ns) = (dofs.n_u(), dofs.n_sigma());
    let a_uu = a.block(0..nu, 0..nu);
    let a_us = a.block(0..nu, nu..nu + ns);
    let a_su = a.block(nu..nu + ns, 0..nu);
    let a_ss = a.block(nu..nu + ns, nu..nu + ns);

    // inverse of the block-diagonal σ mass, triangle by triangle and component by component
    let mut inv_b = TripletBuilder::new(ns, ns);
    for blk in 0..ns / 3 {
        let base = 3 * blk;
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, col) in a_ss.row(base + i) {
                if !(base..base + 3).contains(&j) {
                    return Err(Error::InvalidArgument(
                        "σ-σ block is not block diagonal".into(),
                    ));
                }
                if col.im != 0.0 {
                    return Err(Error::InvalidArgument(
                        "σ-σ block is not a real mass matrix".into(),
                    ));
                }
                row[j - base] = col.re;
            }
        }
        let inv = invert3(&m).ok_or(Error::DegenerateTriangle(blk / 2))?;
        for i in 0..3 {
            for j in 0..3 {
                inv_b.push(base + i, base + j, C64::from(inv[i][j]));
            }
        }
    }
    let inv = inv_b.build();
    let x = multiply(&inv, &a_su);
    let correction = multiply(&a_us, &x);
    let mut out = TripletBuilder::with_capacity(nu, nu, a_uu.nnz() + correction.nnz());
    for (i, j, v) in a_uu.triplets() {
        out.push(i, j, v);
    }
    for (i, j, v) in correction.triplets() {
        out.push(i, j, -v);
    }
    Ok(out.build())
}

fn multiply(a: &CsrMatrix, b: &CsrMatrix) -> CsrMatrix {
    let mut out = TripletBuilder::new(a.nrows(), b.ncols());
    let mut acc = vec![C64::new(0.0, 0.0); b.ncols()];
    let mut touched: Vec<usize> = Vec::new();
    for i in 0..a.nrows() {
        for (k, av) in a.row(i) {
            for (j, bv) in b.row(k) {
                if acc[j] == C64::new(0.0, 0.0) {
                    touched.push(j);
                }
                acc[j] += av * bv;
            }
        }
        touched.sort_unstable();
        touched.dedup();
        for &j in &touched {
            out.push(i, j, acc[j]);
            acc[j] = C64::new(0.0, 0.0);
        }
        touched.clear();
    }
    out.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_p1_mass() {
        let a = 0.5;
        let m = [
            [a / 6.0, a / 12.0, a / 12.0],
            [a / 12.0, a / 6.0, a / 12.0],
            [a / 12.0, a / 12.0, a / 6.0],
        ];
        let inv = invert3(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = 3.0 / a * if i == j { 3.0 } else { -1.0 };
                assert!((inv[i][j] - expected).abs() < 1e-12);
            }
        }
        assert!(invert3(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, 1.0]]).is_none());
    }

    #[test]
    fn sparse_product_matches_dense() {
        let c = |re: f64| C64::new(re, 0.5 * re);
        let a =
            CsrMatrix::from_dense(&[vec![c(1.0), c(0.0), c(2.0)], vec![c(0.0), c(3.0), c(0.0)]]);
        let b = CsrMatrix::from_dense(&[
            vec![c(1.0), c(1.0)],
            vec![c(0.0), c(2.0)],
            vec![c(4.0), c(0.0)],
        ]);
        let p = multiply(&a, &b).to_dense();
        let ad = a.to_dense();
        let bd = b.to_dense();
        for i in 0..2 {
            for j in 0..2 {
                let e: C64 = (0..3).map(|k| ad[i][k] * bd[k][j]).sum();
                assert!((p[i][j] - e).norm() < 1e-14);
            }
        }
    }
}

//! Per-element and per-edge data shared by the assemblers.

use crate::error::{Error, Result};
use crate::mesh::{EdgeInfo, Mesh, Point};
use crate::quadrature::{edge_rule, triangle_rule, P1Basis, QuadratureRule};

pub(crate) struct ElementGeometry {
    pub basis: Vec<P1Basis>,
}

impl ElementGeometry {
    pub fn new(mesh: &Mesh) -> Result<Self> {
        let basis = (0..mesh.num_triangles())
            .map(|t| {
                P1Basis::new(mesh.triangle_points(t)).map_err(|_| Error::DegenerateTriangle(t))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementGeometry { basis })
    }
}

/// Quadrature nodes on one edge with the traces of the P1 basis of each
/// adjacent triangle.
pub(crate) struct EdgeQuadrature {
    pub points: Vec<Point>,
    /// Physical weights (already multiplied by the edge length).
    pub weights: Vec<f64>,
    /// `values[side][q][i]`: basis `i` of the side's triangle at node `q`.
    pub values: [Vec<[f64; 3]>; 2],
}

impl EdgeQuadrature {
    pub fn new(
        mesh: &Mesh,
        geom: &ElementGeometry,
        edge: &EdgeInfo,
        rule: &QuadratureRule,
    ) -> Self {
        let p = mesh.vertices()[edge.vertices[0]];
        let q = mesh.vertices()[edge.vertices[1]];
        let mut points = Vec::with_capacity(rule.len());
        let mut weights = Vec::with_capacity(rule.len());
        for (t, w) in rule.segment_nodes() {
            points.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
            weights.push(w * edge.length);
        }
        let trace = |tri: usize| {
            points
                .iter()
                .map(|&x| geom.basis[tri].barycentric(x))
                .collect::<Vec<_>>()
        };
        let values = [
            trace(edge.primary.triangle),
            edge.secondary.map_or_else(Vec::new, |s| trace(s.triangle)),
        ];
        EdgeQuadrature {
            points,
            weights,
            values,
        }
    }

    /// `∫_e φ_{a,i} φ_{b,j}` for sides `a`, `b`.
    pub fn product(&self, a: usize, i: usize, b: usize, j: usize) -> f64 {
        self.weights
            .iter()
            .enumerate()
            .map(|(q, w)| w * self.values[a][q][i] * self.values[b][q][j])
            .sum()
    }

    /// `∫_e φ_{a,i}`.
    pub fn integral(&self, a: usize, i: usize) -> f64 {
        self.weights
            .iter()
            .enumerate()
            .map(|(q, w)| w * self.values[a][q][i])
            .sum()
    }
}

/// P1 mass matrix and basis integrals on one triangle, by quadrature.
pub(crate) struct ElementIntegrals {
    pub mass: [[f64; 3]; 3],
    pub integral: [f64; 3],
}

impl ElementIntegrals {
    pub fn new(basis: &P1Basis, rule: &QuadratureRule) -> Self {
        let mut mass = [[0.0; 3]; 3];
        let mut integral = [0.0; 3];
        for (l, w) in rule.barycentric_nodes() {
            let w = w * basis.area;
            for i in 0..3 {
                integral[i] += w * l[i];
                for j in 0..3 {
                    mass[i][j] += w * l[i] * l[j];
                }
            }
        }
        ElementIntegrals { mass, integral }
    }
}

pub(crate) fn poly_rules() -> (QuadratureRule, QuadratureRule) {
    (
        triangle_rule(super::POLY_TRIANGLE_DEGREE).expect("supported degree"),
        edge_rule(super::POLY_EDGE_DEGREE).expect("supported degree"),
    )
}

/// The two adjacent triangles of an interior edge (`K` first) with the sign
/// that turns the outward normal of each into `n_e`.
pub(crate) fn sides(edge: &EdgeInfo) -> Vec<(usize, usize, f64)> {
    let mut out = vec![(0, edge.primary.triangle, 1.0)];
    if let Some(s) = edge.secondary {
        out.push((1, s.triangle, -1.0));
    }
    out
}

#[inline]
pub(crate) fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

//! Quadrature on triangles and segments, and the P1 nodal basis.

use crate::error::{Error, Result};
use crate::mesh::{signed_area, Point};

/// A quadrature rule on the reference triangle (barycentric points) or the
/// unit segment `[0, 1]` (first coordinate only). Weights sum to one, so the
/// physical rule is obtained by scaling with the area or length.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
    pub degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Segment nodes as parameters `t ∈ [0, 1]` with their weights.
    pub fn segment_nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, &w)| (p[0], w))
    }

    pub fn barycentric_nodes(&self) -> impl Iterator<Item = ([f64; 3], f64)> + '_ {
        self.points
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
    }
}

pub const TRIANGLE_DEGREES: &[usize] = &[1, 2, 5];
pub const EDGE_DEGREES: &[usize] = &[1, 3, 7];

pub fn triangle_rule(degree: usize) -> Result<QuadratureRule> {
    let (points, weights) = match degree {
        1 => (vec![[1.0 / 3.0; 3]], vec![1.0]),
        2 => (
            vec![[0.5, 0.5, 0.0], [0.0, 0.5, 0.5], [0.5, 0.0, 0.5]],
            vec![1.0 / 3.0; 3],
        ),
        5 => {
            // Radon's seven point rule
            let s15 = 15f64.sqrt();
            let a1 = (6.0 - s15) / 21.0;
            let a2 = (6.0 + s15) / 21.0;
            let w1 = (155.0 - s15) / 1200.0;
            let w2 = (155.0 + s15) / 1200.0;
            let b1 = 1.0 - 2.0 * a1;
            let b2 = 1.0 - 2.0 * a2;
            (
                vec![
                    [1.0 / 3.0; 3],
                    [a1, a1, b1],
                    [a1, b1, a1],
                    [b1, a1, a1],
                    [a2, a2, b2],
                    [a2, b2, a2],
                    [b2, a2, a2],
                ],
                vec![9.0 / 40.0, w1, w1, w1, w2, w2, w2],
            )
        }
        _ => {
            return Err(Error::UnsupportedQuadrature {
                degree,
                supported: TRIANGLE_DEGREES,
            })
        }
    };
    Ok(QuadratureRule {
        points,
        weights,
        degree,
    })
}

/// Gauss-Legendre rules on `[0, 1]` with 1, 2 and 4 points.
pub fn edge_rule(degree: usize) -> Result<QuadratureRule> {
    let (nodes, weights): (Vec<f64>, Vec<f64>) = match degree {
        1 => (vec![0.0], vec![2.0]),
        3 => {
            let x = 1.0 / 3f64.sqrt();
            (vec![-x, x], vec![1.0, 1.0])
        }
        7 => {
            let r = 2.0 / 7.0 * (6.0f64 / 5.0).sqrt();
            let inner = (3.0 / 7.0 - r).sqrt();
            let outer = (3.0 / 7.0 + r).sqrt();
            let w_in = (18.0 + 30f64.sqrt()) / 36.0;
            let w_out = (18.0 - 30f64.sqrt()) / 36.0;
            (
                vec![-outer, -inner, inner, outer],
                vec![w_out, w_in, w_in, w_out],
            )
        }
        _ => {
            return Err(Error::UnsupportedQuadrature {
                degree,
                supported: EDGE_DEGREES,
            })
        }
    };
    Ok(QuadratureRule {
        points: nodes.iter().map(|&x| [0.5 * (x + 1.0), 0.0, 0.0]).collect(),
        weights: weights.iter().map(|w| 0.5 * w).collect(),
        degree,
    })
}

/// Affine P1 basis on one triangle: barycentric coordinates and their
/// (constant) gradients.
#[derive(Debug, Clone, Copy)]
pub struct P1Basis {
    pub vertices: [Point; 3],
    pub area: f64,
    pub gradients: [Point; 3],
}

impl P1Basis {
    pub fn new(vertices: [Point; 3]) -> Result<Self> {
        let area = signed_area(vertices[0], vertices[1], vertices[2]);
        if area.abs() < f64::EPSILON * 1e-4 || !area.is_finite() {
            return Err(Error::DegenerateTriangle(0));
        }
        let two_a = 2.0 * area;
        let gradients = std::array::from_fn(|i| {
            let p = vertices[(i + 1) % 3];
            let q = vertices[(i + 2) % 3];
            [(p[1] - q[1]) / two_a, (q[0] - p[0]) / two_a]
        });
        Ok(P1Basis {
            vertices,
            area,
            gradients,
        })
    }

    pub fn barycentric(&self, p: Point) -> [f64; 3] {
        let [a, b, c] = self.vertices;
        [
            signed_area(p, b, c) / self.area,
            signed_area(a, p, c) / self.area,
            signed_area(a, b, p) / self.area,
        ]
    }

    pub fn point(&self, bary: [f64; 3]) -> Point {
        let [a, b, c] = self.vertices;
        [
            bary[0] * a[0] + bary[1] * b[0] + bary[2] * c[0],
            bary[0] * a[1] + bary[1] * b[1] + bary[2] * c[1],
        ]
    }
}

/// Values and gradients of the three nodal functions at `point`.
pub fn p1_eval(triangle: [Point; 3], point: Point) -> Result<([f64; 3], [Point; 3])> {
    let basis = P1Basis::new(triangle)?;
    Ok((basis.barycentric(point), basis.gradients))
}

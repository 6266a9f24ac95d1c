//! Structured triangulations of the square `[-0.5, 0.5]^2` with the edge
//! bookkeeping needed by discontinuous Galerkin forms.
//!
//! Every unit cell of an `m x m` grid is split by its lower-left to
//! upper-right diagonal. Triangles carry a global label; on an interior edge
//! the triangle with the larger label is called `K`, the other `K'`, and the
//! edge normal `n_e` is the outward normal of `K`. Jumps and averages built on
//! top of this are orientation free, so relabeling only flips signs that
//! cancel in the assembled forms.

use std::collections::HashMap;
use std::io::Write;

use crate::error::{Error, Result};

pub type Point = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Interior,
    Boundary,
}

/// One side of an edge: the adjacent triangle and which of its local sides
/// the edge is (local side `s` is opposite local vertex `s`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeSide {
    pub triangle: usize,
    pub local_side: usize,
}

#[derive(Debug, Clone)]
pub struct EdgeInfo {
    pub vertices: [usize; 2],
    pub kind: EdgeKind,
    /// `K`: the adjacent triangle with the larger label (the only one on the boundary).
    pub primary: EdgeSide,
    /// `K'`: absent on boundary edges.
    pub secondary: Option<EdgeSide>,
    pub length: f64,
    /// Outward unit normal of `K` (of the domain, on boundary edges).
    pub normal: Point,
    pub midpoint: Point,
}

impl EdgeInfo {
    pub fn is_interior(&self) -> bool {
        self.kind == EdgeKind::Interior
    }
}

#[derive(Debug, Clone)]
pub struct Triangle {
    /// Counterclockwise vertex indices.
    pub vertices: [usize; 3],
    pub label: usize,
    /// Edge index of local side `s` (opposite vertex `s`).
    pub edges: [usize; 3],
    /// `+1` if this triangle is `K` on that edge (its outward normal is
    /// `n_e`), `-1` if it is `K'`.
    pub edge_signs: [f64; 3],
}

/// Star-shape data of the domain: center `x_Ω` and constant
/// `c_Ω = min_{∂Ω} (x - x_Ω)·n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainInfo {
    pub center: Point,
    pub star_constant: f64,
}

#[derive(Debug, Clone)]
pub struct Mesh {
    subdivisions: usize,
    vertices: Vec<Point>,
    triangles: Vec<Triangle>,
    edges: Vec<EdgeInfo>,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MeshSummary {
    pub triangles: usize,
    pub vertices: usize,
    pub interior_edges: usize,
    pub boundary_edges: usize,
    pub min_edge_length: f64,
    pub max_edge_length: f64,
}

/// Builds `T_{1/m}`: `2m^2` right isosceles triangles with legs `1/m`.
pub fn build_structured_mesh(m: usize) -> Result<Mesh> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "mesh subdivision count m must be at least 1".into(),
        ));
    }
    let h = 1.0 / m as f64;
    let np = m + 1;
    let mut vertices = Vec::with_capacity(np * np);
    for j in 0..np {
        for i in 0..np {
            vertices.push([-0.5 + i as f64 * h, -0.5 + j as f64 * h]);
        }
    }
    let vid = |i: usize, j: usize| j * np + i;
    let mut triangles = Vec::with_capacity(2 * m * m);
    for j in 0..m {
        for i in 0..m {
            let (v00, v10, v11, v01) = (vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1));
            // label 2c: below the diagonal, 2c + 1: above it
            triangles.push([v00, v10, v11]);
            triangles.push([v00, v11, v01]);
        }
    }
    let labels = (0..triangles.len()).collect::<Vec<_>>();
    Mesh::from_parts(m, vertices, triangles, labels)
}

impl Mesh {
    /// Assembles a mesh from raw vertex/triangle lists and unique labels.
    /// Triangles must be counterclockwise.
    pub fn from_parts(
        subdivisions: usize,
        vertices: Vec<Point>,
        triangles: Vec<[usize; 3]>,
        labels: Vec<usize>,
    ) -> Result<Self> {
        if labels.len() != triangles.len() {
            return Err(Error::DimensionMismatch {
                expected: triangles.len(),
                got: labels.len(),
            });
        }
        {
            let mut sorted = labels.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(
                    "triangle labels must be unique".into(),
                ));
            }
        }
        for (t, tri) in triangles.iter().enumerate() {
            if tri.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::InvalidArgument(format!(
                    "triangle {t} references a missing vertex"
                )));
            }
            let [a, b, c] = tri.map(|v| vertices[v]);
            if signed_area(a, b, c) <= 0.0 {
                return Err(Error::DegenerateTriangle(t));
            }
        }

        // edge key -> (edge id); sides collected in storage order
        let mut lookup: HashMap<(usize, usize), usize> = HashMap::new();
        let mut sides: Vec<Vec<EdgeSide>> = Vec::new();
        let mut endpoints: Vec<[usize; 2]> = Vec::new();
        for (t, tri) in triangles.iter().enumerate() {
            for s in 0..3 {
                let a = tri[(s + 1) % 3];
                let b = tri[(s + 2) % 3];
                let key = (a.min(b), a.max(b));
                let id = *lookup.entry(key).or_insert_with(|| {
                    sides.push(Vec::with_capacity(2));
                    endpoints.push([a, b]);
                    sides.len() - 1
                });
                sides[id].push(EdgeSide {
                    triangle: t,
                    local_side: s,
                });
            }
        }

        let mut tris: Vec<Triangle> = triangles
            .iter()
            .zip(&labels)
            .map(|(v, &label)| Triangle {
                vertices: *v,
                label,
                edges: [usize::MAX; 3],
                edge_signs: [0.0; 3],
            })
            .collect();

        let mut edges = Vec::with_capacity(sides.len());
        for (id, (adj, ends)) in sides.into_iter().zip(endpoints).enumerate() {
            let (primary, secondary, kind) = match adj.as_slice() {
                [one] => (*one, None, EdgeKind::Boundary),
                [a, b] => {
                    if labels[a.triangle] > labels[b.triangle] {
                        (*a, Some(*b), EdgeKind::Interior)
                    } else {
                        (*b, Some(*a), EdgeKind::Interior)
                    }
                }
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "edge {ends:?} is shared by {} triangles",
                        adj.len()
                    )))
                }
            };
            let p = vertices[ends[0]];
            let q = vertices[ends[1]];
            let d = [q[0] - p[0], q[1] - p[1]];
            let length = d[0].hypot(d[1]);
            let normal =
                outward_normal(&vertices, &triangles[primary.triangle], primary.local_side);
            tris[primary.triangle].edges[primary.local_side] = id;
            tris[primary.triangle].edge_signs[primary.local_side] = 1.0;
            if let Some(sec) = secondary {
                tris[sec.triangle].edges[sec.local_side] = id;
                tris[sec.triangle].edge_signs[sec.local_side] = -1.0;
            }
            edges.push(EdgeInfo {
                vertices: ends,
                kind,
                primary,
                secondary,
                length,
                normal,
                midpoint: [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])],
            });
        }

        Ok(Mesh {
            subdivisions,
            vertices,
            triangles: tris,
            edges,
        })
    }

    /// Same geometry and storage order with new labels, so only the `K`/`K'`
    /// roles (and hence the interior edge normals) change.
    pub fn relabeled(&self, labels: &[usize]) -> Result<Self> {
        Mesh::from_parts(
            self.subdivisions,
            self.vertices.clone(),
            self.triangles.iter().map(|t| t.vertices).collect(),
            labels.to_vec(),
        )
    }

    pub fn subdivisions(&self) -> usize {
        self.subdivisions
    }

    /// Nominal mesh size `h = 1/m`.
    pub fn h(&self) -> f64 {
        1.0 / self.subdivisions as f64
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn edges(&self) -> &[EdgeInfo] {
        &self.edges
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = &EdgeInfo> {
        self.edges.iter().filter(|e| e.is_interior())
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = &EdgeInfo> {
        self.edges.iter().filter(|e| !e.is_interior())
    }

    pub fn triangle_points(&self, t: usize) -> [Point; 3] {
        self.triangles[t].vertices.map(|v| self.vertices[v])
    }

    pub fn area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangle_points(t);
        signed_area(a, b, c)
    }

    pub fn domain_info(&self) -> DomainInfo {
        let center = [0.0, 0.0];
        let star_constant = self
            .boundary_edges()
            .flat_map(|e| {
                e.vertices.iter().map(move |&v| {
                    let p = self.vertices[v];
                    (p[0] - center[0]) * e.normal[0] + (p[1] - center[1]) * e.normal[1]
                })
            })
            .fold(f64::INFINITY, f64::min);
        DomainInfo {
            center,
            star_constant,
        }
    }

    pub fn summary(&self) -> MeshSummary {
        mesh_summary(self)
    }

    /// Triangles whose closure contains `p` (up to a small tolerance).
    pub fn triangles_containing(&self, p: Point) -> Vec<usize> {
        const TOL: f64 = 1e-12;
        (0..self.triangles.len())
            .filter(|&t| {
                let [a, b, c] = self.triangle_points(t);
                let area = signed_area(a, b, c);
                let l0 = signed_area(p, b, c) / area;
                let l1 = signed_area(a, p, c) / area;
                let l2 = signed_area(a, b, p) / area;
                l0 >= -TOL && l1 >= -TOL && l2 >= -TOL
            })
            .collect()
    }

    /// Plain-text dump: a `vertices N` header followed by one `x y` line per
    /// vertex, then a `triangles T` header and one `i j k` line per triangle
    /// (zero-based, counterclockwise, in label order).
    pub fn write_ascii<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "vertices {}", self.vertices.len())?;
        for p in &self.vertices {
            writeln!(out, "{:.17e} {:.17e}", p[0], p[1])?;
        }
        let mut order: Vec<usize> = (0..self.triangles.len()).collect();
        order.sort_by_key(|&t| self.triangles[t].label);
        writeln!(out, "triangles {}", self.triangles.len())?;
        for t in order {
            let [i, j, k] = self.triangles[t].vertices;
            writeln!(out, "{i} {j} {k}")?;
        }
        Ok(())
    }
}

pub fn mesh_summary(mesh: &Mesh) -> MeshSummary {
    let (min_edge_length, max_edge_length) = mesh
        .edges
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), e| {
            (lo.min(e.length), hi.max(e.length))
        });
    let boundary_edges = mesh.boundary_edges().count();
    MeshSummary {
        triangles: mesh.triangles.len(),
        vertices: mesh.vertices.len(),
        interior_edges: mesh.edges.len() - boundary_edges,
        boundary_edges,
        min_edge_length,
        max_edge_length,
    }
}

pub(crate) fn signed_area(a: Point, b: Point, c: Point) -> f64 {
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
}

fn outward_normal(vertices: &[Point], tri: &[usize; 3], side: usize) -> Point {
    let p = vertices[tri[(side + 1) % 3]];
    let q = vertices[tri[(side + 2) % 3]];
    let d = [q[0] - p[0], q[1] - p[1]];
    let len = d[0].hypot(d[1]);
    // counterclockwise orientation puts the exterior on the right of p -> q
    [d[1] / len, -d[0] / len]
}

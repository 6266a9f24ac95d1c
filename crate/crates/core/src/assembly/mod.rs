//! Assembly of the discrete Helmholtz systems.
//!
//! Four discretizations share the same mesh and data:
//!
//! * `ldg1`: mixed LDG with flux `σ̂ = {∇_h u} - iβ[[u]]`, `û = {u} + iδ[[∇_h u]]`;
//! * `ldg2`: mixed LDG with flux `σ̂ = {σ} - iβ[[u]]`, `û = {u} + iδ[[σ]]`;
//! * `ipdg-primal`: the `u`-only form obtained from `ldg1` by eliminating `σ`;
//! * `fem-p1`: continuous P1 elements.
//!
//! All forms are conjugate-linear in the test function. Matrix rows index
//! test functions, columns trial functions. Mixed unknowns are laid out as
//! `[u | σ]`, see [`DofMap`].

mod fem;
mod flux;
mod geometry;
mod ldg;
mod params;
mod primal;
mod rhs;

use serde::{Deserialize, Serialize};

pub use fem::assemble_conforming_fem;
pub use flux::{eliminate_flux, reconstruct_flux};
pub use ldg::{assemble_ldg1, assemble_ldg2};
pub use params::{FluxParams, Scaling};
pub use primal::assemble_primal_ipdg;
pub use rhs::{assemble_rhs, assemble_vertex_rhs};

use crate::error::{Error, Result};
use crate::linalg::CsrMatrix;
use crate::mesh::Mesh;
use crate::problem::{HelmholtzProblem, C64};

/// Quadrature degrees used for polynomial (exact) and data terms.
pub const POLY_TRIANGLE_DEGREE: usize = 2;
pub const POLY_EDGE_DEGREE: usize = 3;
pub const DATA_TRIANGLE_DEGREE: usize = 5;
pub const DATA_EDGE_DEGREE: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "ldg1")]
    Ldg1,
    #[serde(rename = "ldg2")]
    Ldg2,
    #[serde(rename = "ipdg-primal")]
    IpdgPrimal,
    #[serde(rename = "fem-p1")]
    FemP1,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Ldg1,
        Method::Ldg2,
        Method::IpdgPrimal,
        Method::FemP1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Ldg1 => "ldg1",
            Method::Ldg2 => "ldg2",
            Method::IpdgPrimal => "ipdg-primal",
            Method::FemP1 => "fem-p1",
        }
    }

    /// Whether the method depends on `β`, `δ`.
    pub fn uses_flux_params(self) -> bool {
        self != Method::FemP1
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown method '{s}' (expected ldg1, ldg2, ipdg-primal or fem-p1)"
                ))
            })
    }
}

/// Degrees of freedom of the discontinuous spaces: three scalar values per
/// triangle for `u`, then three values per component per triangle for `σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DofMap {
    num_triangles: usize,
}

impl DofMap {
    pub fn new(mesh: &Mesh) -> Self {
        DofMap {
            num_triangles: mesh.num_triangles(),
        }
    }

    pub fn num_triangles(&self) -> usize {
        self.num_triangles
    }

    pub fn n_u(&self) -> usize {
        3 * self.num_triangles
    }

    pub fn n_sigma(&self) -> usize {
        6 * self.num_triangles
    }

    pub fn total(&self) -> usize {
        self.n_u() + self.n_sigma()
    }

    #[inline]
    pub fn u(&self, triangle: usize, node: usize) -> usize {
        3 * triangle + node
    }

    /// Index inside the `σ` block (add [`DofMap::n_u`] for the mixed system).
    #[inline]
    pub fn sigma_local(&self, triangle: usize, component: usize, node: usize) -> usize {
        6 * triangle + 3 * component + node
    }

    #[inline]
    pub fn sigma(&self, triangle: usize, component: usize, node: usize) -> usize {
        self.n_u() + self.sigma_local(triangle, component, node)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DofLayout {
    /// `[u | σ]`, both discontinuous.
    Mixed(DofMap),
    /// Discontinuous `u` only.
    Scalar(DofMap),
    /// Continuous P1, one unknown per vertex.
    Vertex(usize),
}

impl DofLayout {
    pub fn len(&self) -> usize {
        match self {
            DofLayout::Mixed(d) => d.total(),
            DofLayout::Scalar(d) => d.n_u(),
            DofLayout::Vertex(n) => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub matrix: CsrMatrix,
    pub rhs: Vec<C64>,
    pub layout: DofLayout,
    pub method: Method,
    pub k: f64,
    pub params: Option<FluxParams>,
}

impl AssembledSystem {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

pub(crate) fn check_inputs(k: f64, params: Option<&FluxParams>) -> Result<()> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if let Some(p) = params {
        p.validate()?;
    }
    Ok(())
}

/// Matrix and right-hand side for `method` applied to `problem`.
pub fn assemble_system(
    method: Method,
    mesh: &Mesh,
    problem: &dyn HelmholtzProblem,
    params: &FluxParams,
) -> Result<AssembledSystem> {
    let k = problem.wave_number();
    let mut system = match method {
        Method::Ldg1 => assemble_ldg1(mesh, k, params)?,
        Method::Ldg2 => assemble_ldg2(mesh, k, params)?,
        Method::IpdgPrimal => assemble_primal_ipdg(mesh, k, params)?,
        Method::FemP1 => assemble_conforming_fem(mesh, k)?,
    };
    system.rhs = match system.layout {
        DofLayout::Mixed(d) | DofLayout::Scalar(d) => {
            let mut rhs = assemble_rhs(mesh, problem, &d);
            rhs.truncate(system.layout.len());
            rhs
        }
        DofLayout::Vertex(_) => assemble_vertex_rhs(mesh, problem),
    };
    Ok(system)
}

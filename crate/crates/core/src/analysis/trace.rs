use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::problem::HelmholtzProblem;
use crate::quadrature::P1Basis;
use crate::solve::DiscreteSolution;

pub enum TraceField<'a> {
    Discrete(&'a DiscreteSolution),
    Exact(&'a dyn HelmholtzProblem),
}

/// `(x, Re u(x, 0))` at `n` equispaced points of `[-0.5, 0.5]`.
///
/// Discontinuous fields are evaluated in the element containing the point
/// whose centroid lies lowest, i.e. the element below the line `y = 0` when
/// the line runs along element edges. Ties go to the smaller label.
pub fn trace_sample(mesh: &Mesh, field: TraceField<'_>, n: usize) -> Result<Vec<(f64, f64)>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "trace needs at least two samples".into(),
        ));
    }
    let xs = (0..n).map(|j| -0.5 + j as f64 / (n - 1) as f64);
    match field {
        TraceField::Exact(problem) => xs
            .map(|x| {
                problem
                    .exact([x, 0.0])
                    .map(|(u, _)| (x, u.re))
                    .ok_or(Error::MissingExactSolution)
            })
            .collect(),
        TraceField::Discrete(sol) => xs
            .map(|x| {
                let p = [x, 0.0];
                let t = mesh
                    .triangles_containing(p)
                    .into_iter()
                    .min_by(|&a, &b| {
                        let ca = centroid_y(mesh, a);
                        let cb = centroid_y(mesh, b);
                        ca.total_cmp(&cb)
                            .then(mesh.triangles()[a].label.cmp(&mesh.triangles()[b].label))
                    })
                    .ok_or_else(|| {
                        Error::InvalidArgument(format!("point {p:?} is outside the mesh"))
                    })?;
                let basis = P1Basis::new(mesh.triangle_points(t))?;
                let l = basis.barycentric(p);
                let u = sol.u_local(t);
                Ok((x, (0..3).map(|i| u[i].re * l[i]).sum()))
            })
            .collect(),
    }
}

fn centroid_y(mesh: &Mesh, t: usize) -> f64 {
    mesh.triangle_points(t).iter().map(|p| p[1]).sum::<f64>() / 3.0
}

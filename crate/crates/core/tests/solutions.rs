mod common;

use common::rel_diff;
use ldg_helmholtz::assembly::{
    assemble_ldg1, assemble_ldg2, assemble_primal_ipdg, assemble_system, eliminate_flux,
    reconstruct_flux, FluxParams, Method,
};
use ldg_helmholtz::mesh::build_structured_mesh;
use ldg_helmholtz::problem::{LinearProblem, RadialProblem, ZeroProblem, C64};
use ldg_helmholtz::solve::{solve, DiscreteSolution};

#[test]
fn elimination_yields_primal_matrix() {
    let p = FluxParams::default();
    for m in [1, 2, 8] {
        let mesh = build_structured_mesh(m).unwrap();
        for k in [1.0, 10.0] {
            let mixed = assemble_ldg1(&mesh, k, &p).unwrap();
            let reduced = eliminate_flux(&mixed).unwrap();
            let primal = assemble_primal_ipdg(&mesh, k, &p).unwrap().matrix;
            let d = reduced.max_abs_diff(&primal);
            assert!(d <= 1e-12, "m={m} k={k}: {d:e}");
        }
    }
}

#[test]
fn elimination_requires_ldg1() {
    let mesh = build_structured_mesh(2).unwrap();
    let sys = assemble_ldg2(&mesh, 1.0, &FluxParams::default()).unwrap();
    assert!(eliminate_flux(&sys).is_err());
}

#[test]
fn mixed_and_primal_solutions_agree() {
    let p = FluxParams::default();
    for m in [2, 8] {
        let mesh = build_structured_mesh(m).unwrap();
        for k in [1.0, 10.0] {
            let problem = RadialProblem::new(k).unwrap();
            let mixed = solve(Method::Ldg1, &mesh, &problem, &p).unwrap();
            let primal = solve(Method::IpdgPrimal, &mesh, &problem, &p).unwrap();
            assert!(rel_diff(&primal.u, &mixed.u) <= 1e-8);
            assert!(rel_diff(&primal.sigma, &mixed.sigma) <= 1e-8);
            // the σ part of the mixed solution is the reconstruction of its u part
            let rec = reconstruct_flux(&mesh, &p, &mixed.u).unwrap();
            assert!(rel_diff(&rec, &mixed.sigma) <= 1e-10);
        }
    }
}

fn linear_interpolant(mesh: &ldg_helmholtz::Mesh, method: Method) -> DiscreteSolution {
    DiscreteSolution::interpolate(mesh, method, |x| C64::new(x[0], x[1]))
}

#[test]
fn linear_solution_is_reproduced() {
    let p = FluxParams::default();
    for m in [1, 4] {
        let mesh = build_structured_mesh(m).unwrap();
        for k in [1.0, 10.0] {
            let problem = LinearProblem::new(k).unwrap();
            for method in Method::ALL {
                let sol = solve(method, &mesh, &problem, &p).unwrap();
                let exact = linear_interpolant(&mesh, method);
                let e = rel_diff(&sol.mixed_coefficients(), &exact.mixed_coefficients());
                assert!(e <= 1e-9, "{method} m={m} k={k}: {e:e}");
                assert!(sol.residual <= 1e-10);
            }
        }
    }
}

#[test]
fn zero_data_gives_zero_solution() {
    let p = FluxParams::default();
    for m in [1, 3, 6] {
        let mesh = build_structured_mesh(m).unwrap();
        for k in [0.5, 5.0, 40.0] {
            for method in Method::ALL {
                let sol = solve(method, &mesh, &ZeroProblem { k }, &p).unwrap();
                assert!(sol.mixed_coefficients().iter().all(|v| v.norm() <= 1e-12));
            }
        }
    }
}

#[test]
fn relabeling_leaves_fields_unchanged() {
    let p = FluxParams::default();
    let mesh = build_structured_mesh(4).unwrap();
    let n = mesh.num_triangles();
    // reverse the labels, then an interleaving permutation
    let reversed: Vec<usize> = (0..n).rev().collect();
    let shuffled: Vec<usize> = (0..n).map(|t| (7 * t + 3) % n).collect();
    let problem = RadialProblem::new(6.0).unwrap();
    for method in [Method::Ldg1, Method::Ldg2, Method::IpdgPrimal] {
        let base = solve(method, &mesh, &problem, &p).unwrap();
        for labels in [&reversed, &shuffled] {
            let other = mesh.relabeled(labels).unwrap();
            let sol = solve(method, &other, &problem, &p).unwrap();
            assert!(
                rel_diff(&sol.mixed_coefficients(), &base.mixed_coefficients()) <= 1e-12,
                "{method}"
            );
        }
    }
}

#[test]
fn assembled_rhs_matches_layout() {
    let mesh = build_structured_mesh(2).unwrap();
    let problem = RadialProblem::new(3.0).unwrap();
    let p = FluxParams::default();
    for method in Method::ALL {
        let sys = assemble_system(method, &mesh, &problem, &p).unwrap();
        assert_eq!(sys.rhs.len(), sys.dim());
        assert_eq!(sys.layout.len(), sys.dim());
    }
}

#[test]
fn conforming_method_has_larger_phase_error_at_high_frequency() {
    let p = FluxParams::default();
    let mesh = build_structured_mesh(50).unwrap();
    let problem = RadialProblem::new(100.0).unwrap();
    let err = |method| {
        let sol = solve(method, &mesh, &problem, &p).unwrap();
        ldg_helmholtz::error_norms(&mesh, &sol, &problem, Some(&p))
            .unwrap()
            .h1
            .rel
    };
    let (fem, ldg) = (err(Method::FemP1), err(Method::Ldg1));
    assert!(fem > ldg, "fem {fem} ldg1 {ldg}");
}

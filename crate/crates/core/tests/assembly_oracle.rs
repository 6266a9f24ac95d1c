mod common;

use common::dense::{dense_dg, dense_fem, dense_solve, max_abs_diff, Form};
use ldg_helmholtz::assembly::{
    assemble_conforming_fem, assemble_ldg1, assemble_ldg2, assemble_primal_ipdg, assemble_rhs,
    reconstruct_flux, DofMap, FluxParams, Scaling,
};
use ldg_helmholtz::mesh::{build_structured_mesh, Mesh, Point};
use ldg_helmholtz::problem::{HelmholtzProblem, C64};

const TOL: f64 = 1e-12;

fn param_sets() -> Vec<FluxParams> {
    vec![
        FluxParams::default(),
        FluxParams::new(0.7, Scaling::Constant, 0.3, Scaling::Constant),
        FluxParams::new(2.0, Scaling::InverseEdge, 5.0, Scaling::LinearEdge),
    ]
}

fn oracle(mesh: &Mesh, form: Form, k: f64, p: &FluxParams) -> Vec<Vec<C64>> {
    let beta = |h: f64| p.beta(h);
    let delta = |h: f64| p.delta(h);
    dense_dg(mesh, form, k, &beta, &delta)
}

#[test]
fn ldg1_matches_dense_oracle() {
    for m in [1, 2] {
        let mesh = build_structured_mesh(m).unwrap();
        for k in [1.0, 10.0] {
            for p in param_sets() {
                let a = assemble_ldg1(&mesh, k, &p).unwrap().matrix.to_dense();
                let d = max_abs_diff(&a, &oracle(&mesh, Form::Ldg1, k, &p));
                assert!(d <= TOL, "m={m} k={k} {p:?}: {d:e}");
            }
        }
    }
}

#[test]
fn ldg2_matches_dense_oracle() {
    for m in [1, 2] {
        let mesh = build_structured_mesh(m).unwrap();
        for k in [1.0, 10.0] {
            for p in param_sets() {
                let a = assemble_ldg2(&mesh, k, &p).unwrap().matrix.to_dense();
                let d = max_abs_diff(&a, &oracle(&mesh, Form::Ldg2, k, &p));
                assert!(d <= TOL, "m={m} k={k} {p:?}: {d:e}");
            }
        }
    }
}

#[test]
fn primal_matches_dense_oracle() {
    for m in [1, 2] {
        let mesh = build_structured_mesh(m).unwrap();
        for k in [1.0, 10.0] {
            for p in param_sets() {
                let a = assemble_primal_ipdg(&mesh, k, &p)
                    .unwrap()
                    .matrix
                    .to_dense();
                let d = max_abs_diff(&a, &oracle(&mesh, Form::Primal, k, &p));
                assert!(d <= TOL, "m={m} k={k} {p:?}: {d:e}");
            }
        }
    }
}

#[test]
fn fem_matches_dense_oracle() {
    for m in [1, 2] {
        let mesh = build_structured_mesh(m).unwrap();
        for k in [1.0, 10.0] {
            let a = assemble_conforming_fem(&mesh, k).unwrap().matrix.to_dense();
            let d = max_abs_diff(&a, &dense_fem(&mesh, k));
            assert!(d <= TOL, "m={m} k={k}: {d:e}");
        }
    }
}

#[test]
fn dimensions() {
    let mesh = build_structured_mesh(1).unwrap();
    let p = FluxParams::default();
    assert_eq!(assemble_ldg1(&mesh, 1.0, &p).unwrap().dim(), 18);
    assert_eq!(assemble_ldg2(&mesh, 1.0, &p).unwrap().dim(), 18);
    assert_eq!(assemble_primal_ipdg(&mesh, 1.0, &p).unwrap().dim(), 6);
    assert_eq!(assemble_conforming_fem(&mesh, 1.0).unwrap().dim(), 4);
}

#[test]
fn no_stored_zero_rows() {
    let mesh = build_structured_mesh(3).unwrap();
    let p = FluxParams::default();
    for a in [
        assemble_ldg1(&mesh, 4.0, &p).unwrap(),
        assemble_ldg2(&mesh, 4.0, &p).unwrap(),
        assemble_primal_ipdg(&mesh, 4.0, &p).unwrap(),
        assemble_conforming_fem(&mesh, 4.0).unwrap(),
    ] {
        assert!(a.matrix.empty_rows().is_empty());
    }
}

#[test]
fn invalid_inputs_rejected() {
    let mesh = build_structured_mesh(1).unwrap();
    let p = FluxParams::default();
    for k in [0.0, -1.0, f64::NAN] {
        let e = assemble_ldg1(&mesh, k, &p).unwrap_err();
        assert!(e.to_string().contains("k must be positive"));
    }
    let mut bad = p;
    bad.delta0 = 0.0;
    assert!(assemble_ldg2(&mesh, 1.0, &bad).is_err());
    bad = p;
    bad.beta0 = -1.0;
    assert!(assemble_primal_ipdg(&mesh, 1.0, &bad).is_err());
}

/// The triangle (0,0), (1,0), (0,1) as a one-element mesh.
fn single_triangle() -> Mesh {
    Mesh::from_parts(
        1,
        vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
        vec![[0, 1, 2]],
        vec![0],
    )
    .unwrap()
}

#[test]
fn ldg_methods_coincide_without_interior_edges() {
    let mesh = single_triangle();
    let p = FluxParams::default();
    let a = assemble_ldg1(&mesh, 3.0, &p).unwrap().matrix.to_dense();
    let b = assemble_ldg2(&mesh, 3.0, &p).unwrap().matrix.to_dense();
    assert!(max_abs_diff(&a, &b) == 0.0);
}

#[test]
fn primal_on_one_element_is_the_conforming_matrix() {
    let mesh = single_triangle();
    let p = FluxParams::new(1e-8, Scaling::Constant, 1e-8, Scaling::Constant);
    let a = assemble_primal_ipdg(&mesh, 2.5, &p)
        .unwrap()
        .matrix
        .to_dense();
    let b = assemble_conforming_fem(&mesh, 2.5)
        .unwrap()
        .matrix
        .to_dense();
    assert!(max_abs_diff(&a, &b) < 1e-14);
}

#[test]
fn sigma_block_sparsity() {
    let mesh = build_structured_mesh(2).unwrap();
    let d = DofMap::new(&mesh);
    let p = FluxParams::default();
    let cross_triangle = |a: &ldg_helmholtz::CsrMatrix| {
        let ss = a.block(d.n_u()..d.total(), d.n_u()..d.total());
        (0..ss.nrows()).any(|i| ss.row(i).any(|(j, _)| i / 6 != j / 6))
    };
    assert!(!cross_triangle(
        &assemble_ldg1(&mesh, 1.0, &p).unwrap().matrix
    ));
    assert!(cross_triangle(
        &assemble_ldg2(&mesh, 1.0, &p).unwrap().matrix
    ));
}

#[test]
fn relabeling_permutes_the_operator() {
    let mesh = build_structured_mesh(1).unwrap();
    let swapped = mesh.relabeled(&[1, 0]).unwrap();
    let p = FluxParams::default();
    for k in [1.0, 10.0] {
        for (a, b) in [
            (
                assemble_ldg1(&mesh, k, &p).unwrap(),
                assemble_ldg1(&swapped, k, &p).unwrap(),
            ),
            (
                assemble_ldg2(&mesh, k, &p).unwrap(),
                assemble_ldg2(&swapped, k, &p).unwrap(),
            ),
            (
                assemble_primal_ipdg(&mesh, k, &p).unwrap(),
                assemble_primal_ipdg(&swapped, k, &p).unwrap(),
            ),
        ] {
            // storage order is kept, so the induced permutation is the identity
            assert!(a.matrix.max_abs_diff(&b.matrix) < 1e-14);
        }
    }
}

struct Data {
    f: C64,
    g: C64,
}

impl HelmholtzProblem for Data {
    fn wave_number(&self) -> f64 {
        1.0
    }
    fn source(&self, _p: Point) -> C64 {
        self.f
    }
    fn boundary_datum(&self, _p: Point, _n: Point) -> C64 {
        self.g
    }
}

#[test]
fn rhs_of_constant_source() {
    let mesh = build_structured_mesh(1).unwrap();
    let d = DofMap::new(&mesh);
    let rhs = assemble_rhs(
        &mesh,
        &Data {
            f: C64::new(1.0, 0.0),
            g: C64::new(0.0, 0.0),
        },
        &d,
    );
    assert_eq!(rhs.len(), d.total());
    for (i, v) in rhs.iter().enumerate() {
        let expected = if i < d.n_u() { 0.5 / 3.0 } else { 0.0 };
        assert!((v - expected).norm() < 1e-15, "{i}: {v}");
    }
    let zero = assemble_rhs(
        &mesh,
        &Data {
            f: C64::new(0.0, 0.0),
            g: C64::new(0.0, 0.0),
        },
        &d,
    );
    assert!(zero.iter().all(|v| v.norm() == 0.0));
}

#[test]
fn rhs_of_constant_boundary_datum() {
    // g = i on the boundary: each boundary node of a boundary edge gets i·len/2
    let mesh = build_structured_mesh(1).unwrap();
    let d = DofMap::new(&mesh);
    let rhs = assemble_rhs(
        &mesh,
        &Data {
            f: C64::new(0.0, 0.0),
            g: C64::new(0.0, 1.0),
        },
        &d,
    );
    let total: C64 = rhs.iter().sum();
    assert!((total - C64::new(0.0, 4.0)).norm() < 1e-14);
    assert!(rhs[d.n_u()..].iter().all(|v| v.norm() == 0.0));
}

#[test]
fn reconstruction_matches_dense_elementwise_solve() {
    let mesh = build_structured_mesh(1).unwrap();
    let d = DofMap::new(&mesh);
    let p = FluxParams::default();
    // triangle 0 carries 1 + x, triangle 1 carries 2 - y: a jump across the diagonal
    let mut u = vec![C64::new(0.0, 0.0); d.n_u()];
    for (t, tri) in mesh.triangles().iter().enumerate() {
        for i in 0..3 {
            let x = mesh.vertices()[tri.vertices[i]];
            u[3 * t + i] = if t == 0 {
                C64::new(1.0 + x[0], 0.0)
            } else {
                C64::new(2.0 - x[1], 0.5)
            };
        }
    }
    let sigma = reconstruct_flux(&mesh, &p, &u).unwrap();

    let a = oracle(&mesh, Form::Ldg1, 1.0, &p);
    let (nu, n) = (d.n_u(), d.total());
    let mass: Vec<Vec<C64>> = (nu..n).map(|r| a[r][nu..n].to_vec()).collect();
    let rhs: Vec<C64> = (nu..n)
        .map(|r| -(0..nu).map(|c| a[r][c] * u[c]).sum::<C64>())
        .collect();
    let expected = dense_solve(&mass, &rhs);
    for (s, e) in sigma.iter().zip(&expected) {
        assert!((s - e).norm() < 1e-13, "{s} vs {e}");
    }
}

#[test]
fn reconstruction_of_continuous_linear_field_is_its_gradient() {
    let mesh = build_structured_mesh(3).unwrap();
    let p = FluxParams::default();
    let u: Vec<C64> = mesh
        .triangles()
        .iter()
        .flat_map(|t| {
            t.vertices.map(|v| {
                let x = mesh.vertices()[v];
                C64::new(2.0 * x[0] - x[1], 3.0 * x[1])
            })
        })
        .collect();
    let sigma = reconstruct_flux(&mesh, &p, &u).unwrap();
    for t in 0..mesh.num_triangles() {
        for i in 0..3 {
            assert!((sigma[6 * t + i] - C64::new(2.0, 0.0)).norm() < 1e-12);
            assert!((sigma[6 * t + 3 + i] - C64::new(-1.0, 3.0)).norm() < 1e-12);
        }
    }
}

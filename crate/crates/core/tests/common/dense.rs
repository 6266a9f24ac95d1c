//! Dense reference assembly from closed-form P1 integrals, evaluated pair by
//! pair over basis functions. Jumps use each triangle's own outward normal,
//! so the global labels never enter.

use ldg_helmholtz::mesh::Mesh;
use ldg_helmholtz::C64;

type P = [f64; 2];

const ZERO: C64 = C64::new(0.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug)]
pub enum Basis {
    /// scalar hat of local node `i` on triangle `t`
    U { t: usize, i: usize },
    /// vector hat `φ_i e_c` on triangle `t`
    S { t: usize, c: usize, i: usize },
}

pub struct Geometry {
    pub pts: Vec<[P; 3]>,
    pub verts: Vec<[usize; 3]>,
    pub area: Vec<f64>,
    pub grad: Vec<[P; 3]>,
    /// (v0, v1, length, adjacent triangles)
    pub edges: Vec<(usize, usize, f64, Vec<usize>)>,
}

impl Geometry {
    pub fn new(mesh: &Mesh) -> Self {
        let verts: Vec<[usize; 3]> = mesh.triangles().iter().map(|t| t.vertices).collect();
        let pts: Vec<[P; 3]> = verts
            .iter()
            .map(|v| v.map(|i| mesh.vertices()[i]))
            .collect();
        let mut area = Vec::new();
        let mut grad = Vec::new();
        for p in &pts {
            let a = 0.5
                * ((p[1][0] - p[0][0]) * (p[2][1] - p[0][1])
                    - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1]));
            area.push(a);
            // λ_i = (a_i + b_i x + c_i y) / 2A
            let mut g = [[0.0; 2]; 3];
            for i in 0..3 {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                g[i] = [
                    (p[j][1] - p[k][1]) / (2.0 * a),
                    (p[k][0] - p[j][0]) / (2.0 * a),
                ];
            }
            grad.push(g);
        }
        // edges from scratch, by vertex pairs
        let mut edges: Vec<(usize, usize, f64, Vec<usize>)> = Vec::new();
        for (t, v) in verts.iter().enumerate() {
            for s in 0..3 {
                let (a, b) = (v[s].min(v[(s + 1) % 3]), v[s].max(v[(s + 1) % 3]));
                if let Some(e) = edges.iter_mut().find(|e| e.0 == a && e.1 == b) {
                    e.3.push(t);
                } else {
                    let pa = mesh.vertices()[a];
                    let pb = mesh.vertices()[b];
                    edges.push((
                        a,
                        b,
                        ((pa[0] - pb[0]).powi(2) + (pa[1] - pb[1]).powi(2)).sqrt(),
                        vec![t],
                    ));
                }
            }
        }
        Geometry {
            pts,
            verts,
            area,
            grad,
            edges,
        }
    }

    /// Outward unit normal of triangle `t` on edge `(a, b)`.
    fn normal(&self, t: usize, a: usize, b: usize, mesh: &Mesh) -> P {
        let pa = mesh.vertices()[a];
        let pb = mesh.vertices()[b];
        let d = [pb[0] - pa[0], pb[1] - pa[1]];
        let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
        let mut n = [d[1] / len, -d[0] / len];
        let opp = self.verts[t]
            .iter()
            .copied()
            .find(|&v| v != a && v != b)
            .unwrap();
        let po = mesh.vertices()[opp];
        if (po[0] - pa[0]) * n[0] + (po[1] - pa[1]) * n[1] > 0.0 {
            n = [-n[0], -n[1]];
        }
        n
    }
}

fn tri_of(b: Basis) -> usize {
    match b {
        Basis::U { t, .. } | Basis::S { t, .. } => t,
    }
}

fn node_of(b: Basis) -> usize {
    match b {
        Basis::U { i, .. } | Basis::S { i, .. } => i,
    }
}

pub fn mixed_index(b: Basis, n_tri: usize) -> usize {
    match b {
        Basis::U { t, i } => 3 * t + i,
        Basis::S { t, c, i } => 3 * n_tri + 6 * t + 3 * c + i,
    }
}

pub fn mixed_basis(n_tri: usize) -> Vec<Basis> {
    let mut out = Vec::new();
    for t in 0..n_tri {
        for i in 0..3 {
            out.push(Basis::U { t, i });
        }
    }
    for t in 0..n_tri {
        for c in 0..2 {
            for i in 0..3 {
                out.push(Basis::S { t, c, i });
            }
        }
    }
    out
}

/// Closed-form volume integrals on triangle t.
fn mass(g: &Geometry, t: usize, i: usize, j: usize) -> f64 {
    g.area[t] * if i == j { 1.0 / 6.0 } else { 1.0 / 12.0 }
}

/// Edge trace data of a basis function: global vertex of its node if the
/// node lies on the edge and the triangle is adjacent.
fn on_edge(g: &Geometry, b: Basis, e: &(usize, usize, f64, Vec<usize>)) -> Option<usize> {
    let t = tri_of(b);
    if !e.3.contains(&t) {
        return None;
    }
    let v = g.verts[t][node_of(b)];
    (v == e.0 || v == e.1).then_some(v)
}

fn adjacent(b: Basis, e: &(usize, usize, f64, Vec<usize>)) -> bool {
    e.3.contains(&tri_of(b))
}

/// ∫_e hat_v hat_w
fn edge_pair(len: f64, v: Option<usize>, w: Option<usize>) -> f64 {
    match (v, w) {
        (Some(a), Some(b)) if a == b => len / 3.0,
        (Some(_), Some(_)) => len / 6.0,
        _ => 0.0,
    }
}

fn edge_single(len: f64, v: Option<usize>) -> f64 {
    if v.is_some() {
        len / 2.0
    } else {
        0.0
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Ldg1,
    Ldg2,
    Primal,
}

/// Value of the sesquilinear form on (trial, test) for real basis functions.
pub fn form(
    mesh: &Mesh,
    g: &Geometry,
    which: Form,
    k: f64,
    beta: &dyn Fn(f64) -> f64,
    delta: &dyn Fn(f64) -> f64,
    trial: Basis,
    test: Basis,
) -> C64 {
    let mut val = ZERO;
    // volume terms
    if tri_of(trial) == tri_of(test) {
        let t = tri_of(trial);
        let gr = &g.grad[t];
        match (trial, test) {
            (Basis::U { i: j, .. }, Basis::U { i, .. }) => {
                val += -k * k * mass(g, t, i, j);
                if which == Form::Primal {
                    val += g.area[t] * (gr[i][0] * gr[j][0] + gr[i][1] * gr[j][1]);
                }
            }
            (Basis::S { c, .. }, Basis::U { i, .. }) => val += gr[i][c] * g.area[t] / 3.0,
            (Basis::U { i: j, .. }, Basis::S { c, .. }) => val -= gr[j][c] * g.area[t] / 3.0,
            (Basis::S { c: cj, i: j, .. }, Basis::S { c: ci, i, .. }) => {
                if ci == cj {
                    val += mass(g, t, i, j);
                }
            }
        }
    }
    for e in &g.edges {
        let len = e.2;
        if !(adjacent(trial, e) && adjacent(test, e)) {
            continue;
        }
        let ta = tri_of(trial);
        let tb = tri_of(test);
        let na = g.normal(ta, e.0, e.1, mesh);
        let nb = g.normal(tb, e.0, e.1, mesh);
        let va = on_edge(g, trial, e);
        let vb = on_edge(g, test, e);
        if e.3.len() == 1 {
            if let (Basis::U { .. }, Basis::U { .. }) = (trial, test) {
                val += I * k * edge_pair(len, va, vb);
            }
            continue;
        }
        let (be, de) = (beta(len), delta(len));
        let dot = |a: P, b: P| a[0] * b[0] + a[1] * b[1];
        match (trial, test) {
            (Basis::U { i: j, .. }, Basis::U { i, .. }) => {
                // [[w]]·[[v]] = (n_a · n_b) w v
                let jj = dot(na, nb) * edge_pair(len, va, vb);
                val += I * be * jj;
                // -⟨{∇w}, [[v]]⟩
                if which != Form::Ldg2 {
                    val -= 0.5 * dot(g.grad[ta][j], nb) * edge_single(len, vb);
                }
                if which == Form::Primal {
                    // -⟨[[w]], {∇v}⟩
                    val -= 0.5 * dot(g.grad[tb][i], na) * edge_single(len, va);
                    // iδ⟨[[∇w]], [[∇v]]⟩
                    val += I * de * dot(g.grad[ta][j], na) * dot(g.grad[tb][i], nb) * len;
                }
            }
            (Basis::S { c, .. }, Basis::U { .. }) => {
                if which == Form::Ldg2 {
                    // -⟨{χ}, [[v]]⟩
                    val -= 0.5 * nb[c] * edge_pair(len, va, vb);
                }
            }
            (Basis::U { i: j, .. }, Basis::S { c, .. }) => {
                // ⟨[[w]], {τ}⟩
                val += 0.5 * na[c] * edge_pair(len, va, vb);
                if which == Form::Ldg1 {
                    // -iδ⟨[[∇w]], [[τ]]⟩
                    val -= I * de * dot(g.grad[ta][j], na) * nb[c] * edge_single(len, vb);
                }
            }
            (Basis::S { c: cj, .. }, Basis::S { c: ci, .. }) => {
                if which == Form::Ldg2 {
                    // -iδ⟨[[χ]], [[τ]]⟩
                    val -= I * de * na[cj] * nb[ci] * edge_pair(len, va, vb);
                }
            }
        }
    }
    val
}

/// Dense matrix of a DG form; rows = test, columns = trial.
pub fn dense_dg(
    mesh: &Mesh,
    which: Form,
    k: f64,
    beta: &dyn Fn(f64) -> f64,
    delta: &dyn Fn(f64) -> f64,
) -> Vec<Vec<C64>> {
    let g = Geometry::new(mesh);
    let n_tri = g.verts.len();
    let basis: Vec<Basis> = match which {
        Form::Primal => (0..n_tri)
            .flat_map(|t| (0..3).map(move |i| Basis::U { t, i }))
            .collect(),
        _ => mixed_basis(n_tri),
    };
    let n = basis.len();
    let mut out = vec![vec![ZERO; n]; n];
    for &test in &basis {
        for &trial in &basis {
            let (r, c) = (mixed_index(test, n_tri), mixed_index(trial, n_tri));
            out[r][c] = form(mesh, &g, which, k, beta, delta, trial, test);
        }
    }
    out
}

/// Dense conforming P1 matrix from element matrices in closed form.
pub fn dense_fem(mesh: &Mesh, k: f64) -> Vec<Vec<C64>> {
    let g = Geometry::new(mesh);
    let n = mesh.vertices().len();
    let mut out = vec![vec![ZERO; n]; n];
    for t in 0..g.verts.len() {
        for i in 0..3 {
            for j in 0..3 {
                let gr = &g.grad[t];
                let stiff = g.area[t] * (gr[i][0] * gr[j][0] + gr[i][1] * gr[j][1]);
                out[g.verts[t][i]][g.verts[t][j]] += C64::from(stiff - k * k * mass(&g, t, i, j));
            }
        }
    }
    for e in g.edges.iter().filter(|e| e.3.len() == 1) {
        for (a, b) in [(e.0, e.0), (e.1, e.1), (e.0, e.1), (e.1, e.0)] {
            out[a][b] += I * k * if a == b { e.2 / 3.0 } else { e.2 / 6.0 };
        }
    }
    out
}

pub fn max_abs_diff(a: &[Vec<C64>], b: &[Vec<C64>]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).norm()))
        .fold(0.0, f64::max)
}

/// Gaussian elimination with partial pivoting.
pub fn dense_solve(a: &[Vec<C64>], b: &[C64]) -> Vec<C64> {
    let n = b.len();
    let mut m: Vec<Vec<C64>> = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&p, &q| m[p][col].norm().total_cmp(&m[q][col].norm()))
            .unwrap();
        m.swap(col, piv);
        x.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f == ZERO {
                continue;
            }
            for cc in col..n {
                let v = m[col][cc];
                m[r][cc] -= f * v;
            }
            let v = x[col];
            x[r] -= f * v;
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for cc in col + 1..n {
            s -= m[col][cc] * x[cc];
        }
        x[col] = s / m[col][col];
    }
    x
}

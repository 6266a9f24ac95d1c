//! Helmholtz problem data: `-Δu - k²u = f` in Ω, `∂u/∂n + iku = g` on ∂Ω.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mesh::Point;
use crate::special::{bessel_j0, bessel_j1};

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

/// Source, boundary datum and (optionally) the exact solution of a
/// Helmholtz problem with wave number `k`.
pub trait HelmholtzProblem: Send + Sync {
    fn wave_number(&self) -> f64;

    fn source(&self, p: Point) -> C64;

    /// Robin datum `g` at boundary point `p` with outward unit normal `n`.
    fn boundary_datum(&self, p: Point, n: Point) -> C64;

    /// Exact `u` and `∇u`, if known.
    fn exact(&self, _p: Point) -> Option<(C64, [C64; 2])> {
        None
    }

    fn has_exact(&self) -> bool {
        false
    }
}

/// `g = ∇u·n + iku` for an exact solution.
pub fn robin_datum(k: f64, u: C64, grad: [C64; 2], n: Point) -> C64 {
    grad[0] * n[0] + grad[1] * n[1] + I * k * u
}

/// `sin(kr)/r` with its removable singularity at the origin.
pub fn source_f(k: f64, p: Point) -> C64 {
    let r = p[0].hypot(p[1]);
    let kr = k * r;
    let v = if kr < 1e-4 {
        let z = kr * kr;
        k * (1.0 - z / 6.0 + z * z / 120.0)
    } else {
        (kr).sin() / r
    };
    C64::new(v, 0.0)
}

/// The radial test problem on the unit square: `f = sin(kr)/r` and `g`
/// matched to
/// `u = cos(kr)/k - (cos k + i sin k) / (k (J0(k) + i J1(k))) · J0(kr)`.
#[derive(Debug, Clone, Copy)]
pub struct RadialProblem {
    k: f64,
    coefficient: C64,
}

impl RadialProblem {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        let denom = C64::new(bessel_j0(k)?, bessel_j1(k)?);
        if denom.norm() < 1e-14 {
            return Err(Error::InvalidArgument(format!(
                "J0(k) + iJ1(k) vanishes at k = {k}"
            )));
        }
        let coefficient = C64::new(k.cos(), k.sin()) / (denom * k);
        Ok(RadialProblem { k, coefficient })
    }

    /// Coefficient of `J0(kr)` (with a minus sign) in the exact solution.
    pub fn coefficient(&self) -> C64 {
        self.coefficient
    }
}

/// Exact radial solution and gradient; fails for non-positive `k`.
pub fn exact_solution(k: f64, p: Point) -> Result<(C64, [C64; 2])> {
    let problem = RadialProblem::new(k)?;
    Ok(problem.evaluate(p))
}

/// Robin datum of the radial problem.
pub fn boundary_g(k: f64, p: Point, n: Point) -> Result<C64> {
    let problem = RadialProblem::new(k)?;
    Ok(problem.boundary_datum(p, n))
}

impl RadialProblem {
    fn evaluate(&self, p: Point) -> (C64, [C64; 2]) {
        let k = self.k;
        let r = p[0].hypot(p[1]);
        let kr = k * r;
        // arguments are bounded by k·√2/2, well inside the valid range
        let j0 = bessel_j0(kr).expect("finite argument");
        let j1 = bessel_j1(kr).expect("finite argument");
        let u = C64::new(kr.cos() / k, 0.0) - self.coefficient * j0;
        if r == 0.0 {
            return (u, [C64::new(0.0, 0.0); 2]);
        }
        let du_dr = C64::new(-kr.sin(), 0.0) + self.coefficient * (k * j1);
        (u, [du_dr * (p[0] / r), du_dr * (p[1] / r)])
    }
}

impl HelmholtzProblem for RadialProblem {
    fn wave_number(&self) -> f64 {
        self.k
    }

    fn source(&self, p: Point) -> C64 {
        source_f(self.k, p)
    }

    fn boundary_datum(&self, p: Point, n: Point) -> C64 {
        let (u, grad) = self.evaluate(p);
        robin_datum(self.k, u, grad, n)
    }

    fn exact(&self, p: Point) -> Option<(C64, [C64; 2])> {
        Some(self.evaluate(p))
    }

    fn has_exact(&self) -> bool {
        true
    }
}

/// Manufactured problem with exact solution `u = x + iy`, which lies in
/// every discrete space used here.
#[derive(Debug, Clone, Copy)]
pub struct LinearProblem {
    k: f64,
}

impl LinearProblem {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        Ok(LinearProblem { k })
    }
}

impl HelmholtzProblem for LinearProblem {
    fn wave_number(&self) -> f64 {
        self.k
    }

    fn source(&self, p: Point) -> C64 {
        -self.k * self.k * C64::new(p[0], p[1])
    }

    fn boundary_datum(&self, p: Point, n: Point) -> C64 {
        C64::new(n[0], n[1]) + I * self.k * C64::new(p[0], p[1])
    }

    fn exact(&self, p: Point) -> Option<(C64, [C64; 2])> {
        Some((
            C64::new(p[0], p[1]),
            [C64::new(1.0, 0.0), C64::new(0.0, 1.0)],
        ))
    }

    fn has_exact(&self) -> bool {
        true
    }
}

/// Homogeneous data; the exact solution is zero.
#[derive(Debug, Clone, Copy)]
pub struct ZeroProblem {
    pub k: f64,
}

impl HelmholtzProblem for ZeroProblem {
    fn wave_number(&self) -> f64 {
        self.k
    }

    fn source(&self, _p: Point) -> C64 {
        C64::new(0.0, 0.0)
    }

    fn boundary_datum(&self, _p: Point, _n: Point) -> C64 {
        C64::new(0.0, 0.0)
    }

    fn exact(&self, _p: Point) -> Option<(C64, [C64; 2])> {
        Some((C64::new(0.0, 0.0), [C64::new(0.0, 0.0); 2]))
    }

    fn has_exact(&self) -> bool {
        true
    }
}

/// Data `(c f, c g)` of an inner problem; the exact solution scales along.
#[derive(Debug, Clone, Copy)]
pub struct Scaled<P> {
    pub inner: P,
    pub factor: f64,
}

impl<P: HelmholtzProblem> HelmholtzProblem for Scaled<P> {
    fn wave_number(&self) -> f64 {
        self.inner.wave_number()
    }

    fn source(&self, p: Point) -> C64 {
        self.inner.source(p) * self.factor
    }

    fn boundary_datum(&self, p: Point, n: Point) -> C64 {
        self.inner.boundary_datum(p, n) * self.factor
    }

    fn exact(&self, p: Point) -> Option<(C64, [C64; 2])> {
        self.inner
            .exact(p)
            .map(|(u, g)| (u * self.factor, [g[0] * self.factor, g[1] * self.factor]))
    }

    fn has_exact(&self) -> bool {
        self.inner.has_exact()
    }
}

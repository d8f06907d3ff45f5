//! The specific complex n-th root behind the covering, the n sheets
//! `eta = w_k (xi^(n-n0) (1-xi)^(n-n1))^(1/n)`, the tangent field X and the
//! flat metric.
//!
//! Branch convention: write `xi = r0 e^(i t0)` and `1 - xi = r1 e^(i t1)`.
//! On the real interval `(0,1)` both angles are zero and the root is a
//! positive real. Off that interval the angles are continued so that the
//! root is holomorphic on the doubly cut plane, with the cuts along
//! `(-inf, 0]` and `[1, +inf)`; equivalently both factors carry their
//! principal argument. This is the unique reading of the `[0, 2pi)`
//! prescription that keeps the root continuous up to the interval `(0,1)`
//! from both half-planes, which the Schwarz reflection extension requires.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signature::TriangleSignature;

/// Inputs closer than this to a branch point are rejected: the polar angles
/// below lose all precision there.
pub const BRANCH_EPS: f64 = 1e-13;

/// Relative tolerance on the curve-equation residual of a [`SurfacePoint`].
pub const CURVE_TOL: f64 = 1e-10;

pub(crate) fn check_branch_point(xi: Complex64) -> Result<()> {
    if xi.norm() < BRANCH_EPS || (Complex64::new(1.0, 0.0) - xi).norm() < BRANCH_EPS {
        return Err(Error::BranchPoint { xi });
    }
    Ok(())
}

/// Polar decomposition of `xi` and `1 - xi` at a regular base point. The
/// stored angles are normalized into `[0, 2pi)`.
#[derive(Clone, Copy, Debug)]
pub struct BranchPoint {
    pub xi: Complex64,
    pub r0: f64,
    pub r1: f64,
    pub theta0: f64,
    pub theta1: f64,
}

impl BranchPoint {
    pub fn decompose(xi: Complex64) -> Result<Self> {
        check_branch_point(xi)?;
        let one_minus = Complex64::new(1.0, 0.0) - xi;
        let wrap = |t: f64| if t < 0.0 { t + 2.0 * std::f64::consts::PI } else { t };
        Ok(BranchPoint {
            xi,
            r0: xi.norm(),
            r1: one_minus.norm(),
            theta0: wrap(xi.arg()),
            theta1: wrap(one_minus.arg()),
        })
    }
}

/// The root `(r0^(n-n0) r1^(n-n1))^(1/n) e^(i ((n-n0) a0 + (n-n1) a1) / n)`
/// on the sheet that is positive on `(0, 1)`; see the module docs for the
/// cut placement. Computed in log space to avoid overflow for large `n`.
pub fn principal_root(xi: Complex64, sig: &TriangleSignature) -> Result<Complex64> {
    check_branch_point(xi)?;
    Ok(root_with_args(xi, sig, xi.arg(), (Complex64::new(1.0, 0.0) - xi).arg()))
}

pub(crate) fn root_with_args(
    xi: Complex64,
    sig: &TriangleSignature,
    arg0: f64,
    arg1: f64,
) -> Complex64 {
    let n = sig.n() as f64;
    let e0 = (sig.n() - sig.n0()) as f64;
    let e1 = (sig.n() - sig.n1()) as f64;
    let r0 = xi.norm();
    let r1 = (Complex64::new(1.0, 0.0) - xi).norm();
    let ln_mod = (e0 * r0.ln() + e1 * r1.ln()) / n;
    let arg = (e0 * arg0 + e1 * arg1) / n;
    Complex64::from_polar(ln_mod.exp(), arg)
}

/// A point of the affine curve together with the sheet index `k` for which
/// `eta = e^(2 pi i k / n) * principal_root(xi)`.
#[derive(Clone, Copy, Debug)]
pub struct SurfacePoint {
    pub xi: Complex64,
    pub eta: Complex64,
    pub sheet: usize,
}

impl SurfacePoint {
    /// Builds the sheet-`k` point over `xi` and checks the curve equation.
    pub fn from_sheet(xi: Complex64, sheet: usize, sig: &TriangleSignature) -> Result<Self> {
        let n = sig.n() as usize;
        let k = sheet % n;
        let root = principal_root(xi, sig)?;
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
        let p = SurfacePoint {
            xi,
            eta: omega * root,
            sheet: k,
        };
        let res = curve_residual(&p, sig);
        if res > CURVE_TOL {
            return Err(Error::OffCurve {
                xi,
                eta: p.eta,
                residual: res,
            });
        }
        Ok(p)
    }

    /// Image under the deck transformation `(xi, eta) -> (xi, e^(2 pi i/n) eta)`.
    pub fn deck(&self, sig: &TriangleSignature) -> SurfacePoint {
        let n = sig.n() as usize;
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
        SurfacePoint {
            xi: self.xi,
            eta: omega * self.eta,
            sheet: (self.sheet + 1) % n,
        }
    }
}

/// Relative residual of the curve equation `eta^n = xi^(n-n0) (1-xi)^(n-n1)`.
pub fn curve_residual(p: &SurfacePoint, sig: &TriangleSignature) -> f64 {
    let n = sig.n();
    let lhs = p.eta.powi(n as i32);
    let rhs = p.xi.powi((n - sig.n0()) as i32)
        * (Complex64::new(1.0, 0.0) - p.xi).powi((n - sig.n1()) as i32);
    (lhs - rhs).norm() / (1.0 + p.xi.norm().powi(n as i32))
}

/// The full fiber over `xi`: `n` points, sheet 0 carrying the fundamental
/// domain representative.
pub fn fiber(xi: Complex64, sig: &TriangleSignature) -> Result<Vec<SurfacePoint>> {
    let n = sig.n() as usize;
    let root = principal_root(xi, sig)?;
    let mut points = Vec::with_capacity(n);
    for k in 0..n {
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
        points.push(SurfacePoint {
            xi,
            eta: omega * root,
            sheet: k,
        });
    }
    Ok(points)
}

/// The tangent field
/// `X = eta d/dxi + ((n-n0)/n) xi^(n-n0-1) (1-xi)^(n-n1-1) (1 - ((2n-n0-n1)/(n-n0)) xi) / eta^(n-2) d/deta`,
/// nowhere vanishing on the regular part of the curve. Returned as the pair
/// of components `(d/dxi, d/deta)`.
pub fn vector_field(p: &SurfacePoint, sig: &TriangleSignature) -> Result<(Complex64, Complex64)> {
    if p.eta.norm() == 0.0 {
        return Err(Error::SingularPoint);
    }
    let n = sig.n();
    let (n0, n1) = (sig.n0(), sig.n1());
    let one = Complex64::new(1.0, 0.0);
    let coeff = (n - n0) as f64 / n as f64;
    let slope = (2 * n - n0 - n1) as f64 / (n - n0) as f64;
    let numer = p.xi.powi((n - n0 - 1) as i32)
        * (one - p.xi).powi((n - n1 - 1) as i32)
        * (one - slope * p.xi);
    let d_eta = coeff * numer / p.eta.powi((n - 2) as i32);
    Ok((p.eta, d_eta))
}

/// Squared length of a tangent vector in the flat metric
/// `Gamma = (1/eta) dxi . (1/conj(eta)) conj(dxi)`: only the `dxi` component
/// enters, giving `|v_xi|^2 / |eta|^2`.
pub fn metric_norm(p: &SurfacePoint, v: (Complex64, Complex64)) -> Result<f64> {
    if p.eta.norm() == 0.0 {
        return Err(Error::SingularPoint);
    }
    Ok(v.0.norm_sqr() / p.eta.norm_sqr())
}

/// Contraction of X with the differential of `g = eta^n - xi^(n-n0)(1-xi)^(n-n1)`,
/// relative to the sizes of the two terms. Zero (to rounding) exactly when X
/// is tangent to the curve.
pub fn tangency_residual(p: &SurfacePoint, sig: &TriangleSignature) -> Result<f64> {
    let (vx, ve) = vector_field(p, sig)?;
    let n = sig.n();
    let (n0, n1) = (sig.n0(), sig.n1());
    let one = Complex64::new(1.0, 0.0);
    let slope = (2 * n - n0 - n1) as f64 / (n - n0) as f64;
    let dg_dxi = -((n - n0) as f64)
        * p.xi.powi((n - n0 - 1) as i32)
        * (one - p.xi).powi((n - n1 - 1) as i32)
        * (one - slope * p.xi);
    let dg_deta = n as f64 * p.eta.powi((n - 1) as i32);
    let a = vx * dg_dxi;
    let b = ve * dg_deta;
    Ok((a + b).norm() / (a.norm() + b.norm() + f64::MIN_POSITIVE))
}

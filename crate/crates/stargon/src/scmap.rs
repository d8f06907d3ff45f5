//! Numerical evaluation of the Schwarz-Christoffel maps onto the rational
//! triangle and its Schwarz double, the per-sheet developing maps, and the
//! straightening check.
//!
//! The integrand `w^(n0/n - 1) (1 - w)^(n1/n - 1)` has integrable algebraic
//! singularities at 0 and 1. Legs of the contour that end at a branch point
//! remove the singularity exactly with the substitution `w = P t^(n/n0)`
//! (mirrored at 1); plain adaptive quadrature is used only on legs where the
//! integrand is analytic.

use num_complex::Complex64;

use crate::branch::{check_branch_point, BRANCH_EPS};
use crate::error::{Error, Result};
use crate::signature::TriangleSignature;

/// Default quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

fn check_tol(tol: f64) -> Result<()> {
    if !(1e-13..=1e-6).contains(&tol) {
        return Err(Error::ToleranceRange(tol));
    }
    Ok(())
}

/// Argument of `w` on the branch used throughout: principal.
fn arg0(w: Complex64) -> f64 {
    w.arg()
}

/// Argument of `1 - w`. Principal, except on the ray `w in (1, +inf)` where
/// the upper-half-plane limit `-pi` is taken so that boundary evaluations of
/// the triangle map land on the edge through C and D.
fn arg1(w: Complex64) -> f64 {
    let om = Complex64::new(1.0, 0.0) - w;
    if w.im == 0.0 && om.re < 0.0 {
        -std::f64::consts::PI
    } else {
        om.arg()
    }
}

/// `z^p` on the branch carried by `arg_z`, in log space.
fn cpow(modulus: f64, arg_z: f64, p: f64) -> Complex64 {
    Complex64::from_polar((p * modulus.ln()).exp(), p * arg_z)
}

/// The Schwarz-Christoffel integrand `1/eta` on the sheet fixed above.
fn integrand(w: Complex64, sig: &TriangleSignature) -> Complex64 {
    let n = sig.n() as f64;
    let p0 = sig.n0() as f64 / n - 1.0;
    let p1 = sig.n1() as f64 / n - 1.0;
    let r0 = w.norm();
    let r1 = (Complex64::new(1.0, 0.0) - w).norm();
    cpow(r0, arg0(w), p0) * cpow(r1, arg1(w), p1)
}

mod quad {
    use super::Complex64;

    // 15-point Kronrod nodes and weights with the embedded 7-point Gauss rule.
    const XGK: [f64; 8] = [
        0.0,
        0.207784955007898467600689403773245,
        0.405845151377397166906606412076961,
        0.586087235467691130294144838258730,
        0.741531185599394439863864773280788,
        0.864864423359769072789712788640926,
        0.949107912342758524526189684047851,
        0.991455371120812639206854697526329,
    ];
    const WGK: [f64; 8] = [
        0.209482141084727828012999174891714,
        0.204432940075298892414161999234649,
        0.190350578064785409913256402421014,
        0.169004726639267902826583426598550,
        0.140653259715525918745189590510238,
        0.104790010322250183839876322541518,
        0.063092092629978553290700663189204,
        0.022935322010529224963732008058970,
    ];
    const WG: [f64; 4] = [
        0.417959183673469387755102040816327,
        0.381830050505118944950369775488975,
        0.279705391489276667901467771423780,
        0.129484966168869693270611432679082,
    ];

    fn gk15(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let fc = f(c);
        let mut kron = WGK[0] * fc;
        let mut gauss = WG[0] * fc;
        for i in 1..8 {
            let x = h * XGK[i];
            let fsum = f(c - x) + f(c + x);
            kron += WGK[i] * fsum;
            if i % 2 == 0 {
                gauss += WG[i / 2] * fsum;
            }
        }
        ((h * kron), (h * (kron - gauss)).norm())
    }

    /// Adaptive bisection on [0, 1]; the per-interval budget is proportional
    /// to the interval length, so the total error stays below `abs_tol`.
    pub fn adaptive(f: &dyn Fn(f64) -> Complex64, abs_tol: f64) -> (Complex64, f64, bool) {
        let mut stack = vec![(0.0f64, 1.0f64)];
        let mut total = Complex64::new(0.0, 0.0);
        let mut err_sum = 0.0f64;
        let mut evals = 0usize;
        while let Some((a, b)) = stack.pop() {
            let (val, err) = gk15(f, a, b);
            evals += 15;
            if err <= abs_tol * (b - a) || b - a < 1e-12 || evals > 600_000 {
                total += val;
                err_sum += err;
            } else {
                let m = 0.5 * (a + b);
                stack.push((a, m));
                stack.push((m, b));
            }
        }
        (total, err_sum, err_sum <= abs_tol * 1.001 && evals <= 600_000)
    }
}

fn run_leg(f: impl Fn(f64) -> Complex64, abs_tol: f64, requested: f64) -> Result<Complex64> {
    let (val, err, ok) = quad::adaptive(&f, abs_tol);
    if !ok {
        return Err(Error::Quadrature {
            requested,
            achieved: err,
        });
    }
    Ok(val)
}

/// Leg from 0 to `p_end` along a straight segment, with the singularity at 0
/// removed by `w = P t^(n/n0)`.
fn leg_from_zero(p_end: Complex64, sig: &TriangleSignature, tol: f64) -> Result<Complex64> {
    let n = sig.n() as f64;
    let q = n / sig.n0() as f64;
    let p1 = sig.n1() as f64 / n - 1.0;
    let scale = q * cpow(p_end.norm(), arg0(p_end), sig.n0() as f64 / n);
    let f = move |t: f64| -> Complex64 {
        let w = p_end * t.powf(q);
        let om = Complex64::new(1.0, 0.0) - w;
        cpow(om.norm(), arg1(w), p1)
    };
    Ok(scale * run_leg(f, tol / scale.norm().max(1e-300), tol)?)
}

/// Leg from `a_start` to 1, with the singularity at 1 removed by
/// `w = 1 - (1 - A) s^(n/n1)`.
fn leg_to_one(a_start: Complex64, sig: &TriangleSignature, tol: f64) -> Result<Complex64> {
    let n = sig.n() as f64;
    let q1 = n / sig.n1() as f64;
    let p0 = sig.n0() as f64 / n - 1.0;
    let om_a = Complex64::new(1.0, 0.0) - a_start;
    let scale = q1 * cpow(om_a.norm(), arg1(a_start), sig.n1() as f64 / n);
    let f = move |s: f64| -> Complex64 {
        let w = Complex64::new(1.0, 0.0) - om_a * s.powf(q1);
        cpow(w.norm(), arg0(w), p0)
    };
    Ok(scale * run_leg(f, tol / scale.norm().max(1e-300), tol)?)
}

/// Leg from 1 to `b_end`, with the singularity at 1 removed by
/// `w = 1 + (B - 1) s^(n/n1)`.
fn leg_from_one(b_end: Complex64, sig: &TriangleSignature, tol: f64) -> Result<Complex64> {
    let n = sig.n() as f64;
    let q1 = n / sig.n1() as f64;
    let p0 = sig.n0() as f64 / n - 1.0;
    let om_b = Complex64::new(1.0, 0.0) - b_end;
    // arg of (1 - w) along the open leg; for real b_end > 1 this is the
    // upper-half-plane limit -pi.
    let a1 = arg1(Complex64::new(1.0, 0.0) + 0.5 * (b_end - Complex64::new(1.0, 0.0)));
    let scale = -q1 * cpow(om_b.norm(), a1, sig.n1() as f64 / n);
    let f = move |s: f64| -> Complex64 {
        let w = Complex64::new(1.0, 0.0) - om_b * s.powf(q1);
        cpow(w.norm(), arg0(w), p0)
    };
    Ok(scale * run_leg(f, tol / scale.norm().max(1e-300), tol)?)
}

/// Leg along the straight segment `[a, b]` where the integrand is analytic.
fn leg_smooth(a: Complex64, b: Complex64, sig: &TriangleSignature, tol: f64) -> Result<Complex64> {
    let d = b - a;
    let sig = *sig;
    let f = move |t: f64| -> Complex64 { integrand(a + t * d, &sig) * d };
    run_leg(f, tol, tol)
}

/// The map `F_T(xi) = int_0^xi dw / (w^(1-n0/n) (1-w)^(1-n1/n))` for `xi` in
/// the closed upper half-plane (real `xi` included). The contour runs
/// `0 -> i max(1, |xi|) -> xi` for interior points, along the real axis with
/// endpoint substitutions for boundary points, and is rerouted through 1
/// when `xi` is close to that branch point. Absolute error is kept below
/// `tol * (1 + |result|)`.
pub fn sc_integral(xi: Complex64, sig: &TriangleSignature, tol: f64) -> Result<Complex64> {
    check_tol(tol)?;
    if xi.norm() < BRANCH_EPS {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if xi.im < 0.0 {
        return Err(Error::Domain(format!(
            "sc_integral needs Im(xi) >= 0 or real xi, got {xi}; use f_q below the axis"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    if xi.im == 0.0 {
        let x = xi.re;
        if x > 0.0 {
            if (x - 1.0).abs() < BRANCH_EPS {
                return Ok(leg_from_zero(0.5 * one, sig, tol)? + leg_to_one(0.5 * one, sig, tol)?);
            }
            if x < 0.9 {
                let m = 0.5 * x;
                return Ok(leg_from_zero(m * one, sig, tol)?
                    + leg_smooth(m * one, x * one, sig, tol)?);
            }
            if x < 1.0 {
                let c = leg_from_zero(0.5 * one, sig, tol)? + leg_to_one(0.5 * one, sig, tol)?;
                return Ok(c - leg_to_one(x * one, sig, tol)?);
            }
            // x > 1: pass through the singularity at 1 with substitutions on
            // both sides.
            let c = leg_from_zero(0.5 * one, sig, tol)? + leg_to_one(0.5 * one, sig, tol)?;
            return Ok(c + leg_from_one(x * one, sig, tol)?);
        }
        // x < 0: only the endpoint at 0 is singular.
        let m = 0.5 * xi;
        return Ok(leg_from_zero(m, sig, tol)? + leg_smooth(m, xi, sig, tol)?);
    }
    if xi.norm() <= 0.5 {
        return leg_from_zero(xi, sig, tol);
    }
    if (xi - one).norm() <= 0.5 {
        let c = leg_from_zero(0.5 * one, sig, tol)? + leg_to_one(0.5 * one, sig, tol)?;
        return Ok(c + leg_from_one(xi, sig, tol)?);
    }
    let m = Complex64::new(0.0, xi.norm().max(1.0));
    Ok(leg_from_zero(m, sig, tol)? + leg_smooth(m, xi, sig, tol)?)
}

/// Image triangle of `F_T`: vertices `O = 0`, `C = F_T(1)` on the positive
/// real axis and `D = e^(i pi n0/n) (sin(pi n1/n)/sin(pi n_inf/n)) C`, with
/// the interior angles recorded as exact rational multiples of pi.
#[derive(Clone, Copy, Debug)]
pub struct TriangleImage {
    pub c: Complex64,
    pub d: Complex64,
    /// Angles at O, C, D as reduced fractions `(p, q)` meaning `p*pi/q`.
    pub angles: [(u64, u64); 3],
}

impl TriangleImage {
    /// Interior angles measured numerically from the vertex coordinates,
    /// in the order O, C, D.
    pub fn measured_angles(&self) -> [f64; 3] {
        let o = Complex64::new(0.0, 0.0);
        let angle = |at: Complex64, p: Complex64, q: Complex64| ((p - at) / (q - at)).arg().abs();
        [
            angle(o, self.c, self.d),
            angle(self.c, self.d, o),
            angle(self.d, o, self.c),
        ]
    }
}

fn reduced(p: u64, q: u64) -> (u64, u64) {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(p, q);
    (p / g, q / g)
}

pub fn triangle_image(sig: &TriangleSignature, tol: f64) -> Result<TriangleImage> {
    let c = sc_integral(Complex64::new(1.0, 0.0), sig, tol)?;
    let n = sig.n() as f64;
    let ratio =
        (std::f64::consts::PI * sig.n1() as f64 / n).sin() / (std::f64::consts::PI * sig.n_inf() as f64 / n).sin();
    let d = Complex64::from_polar(1.0, std::f64::consts::PI * sig.n0() as f64 / n) * ratio * c;
    Ok(TriangleImage {
        c,
        d,
        angles: [
            reduced(sig.n0(), sig.n()),
            reduced(sig.n1(), sig.n()),
            reduced(sig.n_inf(), sig.n()),
        ],
    })
}

/// Consistency probe for the vertex at infinity: `|F_T(i R) - D|`, which
/// decays only like `R^(-n_inf/n)`, so this is a coarse check by nature.
pub fn vertex_at_infinity_probe(sig: &TriangleSignature, radius: f64, tol: f64) -> Result<f64> {
    let t = triangle_image(sig, tol)?;
    let far = sc_integral(Complex64::new(0.0, radius), sig, tol)?;
    Ok((far - t.d).norm() / t.d.norm())
}

/// The Schwarz reflection extension: `F_T` on the closed upper half-plane,
/// `conj(F_T(conj(xi)))` below it.
pub fn f_q(xi: Complex64, sig: &TriangleSignature, tol: f64) -> Result<Complex64> {
    check_branch_point(xi)?;
    if xi.im >= 0.0 {
        sc_integral(xi, sig, tol)
    } else {
        Ok(sc_integral(xi.conj(), sig, tol)?.conj())
    }
}

/// The developing map on sheet `k`: `e^(2 pi i k/n) F_Q(xi)`, carrying sheet
/// `k` of the covering onto the k-th rotated copy of the quadrilateral.
pub fn developing_map(
    p: &crate::branch::SurfacePoint,
    sig: &TriangleSignature,
    tol: f64,
) -> Result<Complex64> {
    let rot = Complex64::from_polar(
        1.0,
        2.0 * std::f64::consts::PI * p.sheet as f64 / sig.n() as f64,
    );
    Ok(rot * f_q(p.xi, sig, tol)?)
}

/// Finite-difference check of the straightening identity `dz = dxi / eta` in
/// the sheet chart: moves the base point by `h * eta`, evaluates the chart
/// increment and returns `|increment/h - 1|`. First order in `h`, with
/// leading coefficient `|eta'(xi)|/2`.
///
/// The sheet chart is `e^(-2 pi i k/n) F_Q`, whose differential is exactly
/// `dxi/eta` on sheet `k`; the developing map above differs from it by the
/// constant sheet rotation.
pub fn straightening_residual(
    p: &crate::branch::SurfacePoint,
    sig: &TriangleSignature,
    h: f64,
    tol: f64,
) -> Result<f64> {
    check_tol(tol)?;
    if !(h.is_finite() && h > 1e-300) {
        return Err(Error::StepUnderflow(h));
    }
    let xi1 = p.xi + h * p.eta;
    check_branch_point(xi1)?;
    // The two points must sit on the same side of the cuts for the segment
    // integral below to equal the F_Q increment.
    if (p.xi.im > 0.0) != (xi1.im > 0.0) && !(p.xi.re > 0.0 && p.xi.re < 1.0) {
        return Err(Error::Domain(
            "straightening step crosses a branch cut".into(),
        ));
    }
    let delta = leg_smooth(p.xi, xi1, sig, tol.min(1e-12))?;
    let omega_k = Complex64::from_polar(
        1.0,
        2.0 * std::f64::consts::PI * p.sheet as f64 / sig.n() as f64,
    );
    Ok((delta / (omega_k * h) - Complex64::new(1.0, 0.0)).norm())
}

/// Increment `F_Q(b) - F_Q(a)` through a single smooth quadrature leg; both
/// points must lie strictly on the same side of the cuts.
pub fn f_q_increment(
    a: Complex64,
    b: Complex64,
    sig: &TriangleSignature,
    tol: f64,
) -> Result<Complex64> {
    check_branch_point(a)?;
    check_branch_point(b)?;
    leg_smooth(a, b, sig, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::SurfacePoint;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    /// Independent Beta-function oracle through a Lanczos log-gamma.
    fn ln_gamma(x: f64) -> f64 {
        const COEF: [f64; 9] = [
            0.99999999999980993,
            676.5203681218851,
            -1259.1392167224028,
            771.32342877765313,
            -176.61502916214059,
            12.507343278686905,
            -0.13857109526572012,
            9.9843695780195716e-6,
            1.5056327351493116e-7,
        ];
        if x < 0.5 {
            (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)
        } else {
            let x = x - 1.0;
            let mut a = COEF[0];
            for (i, &c) in COEF.iter().enumerate().skip(1) {
                a += c / (x + i as f64);
            }
            let t = x + 7.5;
            0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
        }
    }

    fn beta(a: f64, b: f64) -> f64 {
        (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
    }

    #[test]
    fn value_at_zero() {
        let sig = TriangleSignature::new(1, 2, 3).unwrap();
        let z = sc_integral(Complex64::new(0.0, 0.0), &sig, 1e-10).unwrap();
        assert_eq!(z, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn c_matches_beta_oracle() {
        // Frozen from the oracle: B(1/3, 1/3) = 5.299916...
        let sig = TriangleSignature::new(1, 1, 1).unwrap();
        let c = sc_integral(Complex64::new(1.0, 0.0), &sig, 1e-12).unwrap();
        assert!((c.re - 5.2999).abs() < 1e-3);
        assert!(c.im.abs() < 1e-12);
        for (a, b, cc) in [(1, 1, 1), (1, 1, 4), (1, 2, 3), (2, 2, 3), (3, 4, 5)] {
            let sig = TriangleSignature::new(a, b, cc).unwrap();
            let n = sig.n() as f64;
            let want = beta(sig.n0() as f64 / n, sig.n1() as f64 / n);
            let got = sc_integral(Complex64::new(1.0, 0.0), &sig, 1e-12).unwrap();
            assert!(
                (got.re - want).abs() / want < 1e-9,
                "C mismatch for ({a},{b},{cc}): {} vs {want}",
                got.re
            );
        }
    }

    #[test]
    fn path_independence_interior() {
        // The two-leg contour and a direct singular leg agree for |xi| <= 1/2,
        // and real evaluations match the limit from above.
        let sig = TriangleSignature::new(1, 2, 3).unwrap();
        let xi = Complex64::new(0.3, 0.2);
        let direct = leg_from_zero(xi, &sig, 1e-12).unwrap();
        let m = Complex64::new(0.0, 1.0);
        let two_leg = leg_from_zero(m, &sig, 1e-12).unwrap()
            + leg_smooth(m, xi, &sig, 1e-12).unwrap();
        assert!((direct - two_leg).norm() < 1e-10);

        let x = Complex64::new(0.4, 0.0);
        let on_axis = sc_integral(x, &sig, 1e-12).unwrap();
        let above = sc_integral(x + Complex64::new(0.0, 1e-9), &sig, 1e-12).unwrap();
        assert!((on_axis - above).norm() < 1e-6);
    }

    #[test]
    fn triangle_image_examples() {
        let sig = TriangleSignature::new(1, 1, 1).unwrap();
        let t = triangle_image(&sig, 1e-11).unwrap();
        // Equilateral: D = C e^(i pi/3).
        let want = t.c * Complex64::from_polar(1.0, PI / 3.0);
        assert!((t.d - want).norm() < 1e-10 * t.c.norm());

        for (a, b, c) in [(1, 1, 1), (1, 1, 4), (1, 2, 3), (2, 2, 3), (1, 3, 4)] {
            let sig = TriangleSignature::new(a, b, c).unwrap();
            let t = triangle_image(&sig, 1e-11).unwrap();
            let n = sig.n() as f64;
            let want = [
                PI * sig.n0() as f64 / n,
                PI * sig.n1() as f64 / n,
                PI * sig.n_inf() as f64 / n,
            ];
            let got = t.measured_angles();
            for (g, w) in got.iter().zip(want.iter()) {
                assert!((g - w).abs() < 1e-6, "({a},{b},{c}): angles {got:?} vs {want:?}");
            }
            // OC is the longest side.
            let oc = t.c.norm();
            assert!(oc >= (t.d - t.c).norm() - 1e-9);
            assert!(oc >= t.d.norm() - 1e-9);
        }
    }

    #[test]
    fn boundary_rays_map_to_edge_lines() {
        let sig = TriangleSignature::new(1, 2, 3).unwrap();
        let t = triangle_image(&sig, 1e-12).unwrap();
        let line_dist = |z: Complex64, a: Complex64, b: Complex64| {
            ((z - a) * (b - a).conj()).im.abs() / (b - a).norm()
        };
        // (0,1) -> segment O C on the real axis.
        for x in [0.1, 0.5, 0.9] {
            let z = sc_integral(Complex64::new(x, 0.0), &sig, 1e-12).unwrap();
            assert!(z.im.abs() < 1e-8);
            assert!(z.re > 0.0 && z.re < t.c.re);
        }
        // (1, inf) -> line through C and D.
        for x in [1.5, 3.0, 10.0] {
            let z = sc_integral(Complex64::new(x, 0.0), &sig, 1e-12).unwrap();
            assert!(line_dist(z, t.c, t.d) < 1e-8, "x={x}");
        }
        // (-inf, 0) -> line through O and D.
        for x in [-0.5, -2.0, -8.0] {
            let z = sc_integral(Complex64::new(x, 0.0), &sig, 1e-12).unwrap();
            assert!(line_dist(z, Complex64::new(0.0, 0.0), t.d) < 1e-8, "x={x}");
        }
    }

    #[test]
    fn f_q_symmetry_and_midpoint() {
        let sig = TriangleSignature::new(1, 1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let xi = Complex64::new(rng.gen_range(-1.5..2.5), rng.gen_range(0.05..1.5));
            let a = f_q(xi.conj(), &sig, 1e-10).unwrap();
            let b = f_q(xi, &sig, 1e-10).unwrap().conj();
            assert!((a - b).norm() < 1e-10 * (1.0 + b.norm()));
        }
        // Symmetric signature: F(1/2) = C/2.
        let c = sc_integral(Complex64::new(1.0, 0.0), &sig, 1e-12).unwrap();
        let half = f_q(Complex64::new(0.5, 0.0), &sig, 1e-12).unwrap();
        assert!((half - 0.5 * c).norm() < 1e-9);
    }

    #[test]
    fn developing_map_sheets() {
        let sig = TriangleSignature::new(1, 1, 4).unwrap();
        let xi = Complex64::new(0.4, 0.3);
        let base = f_q(xi, &sig, 1e-10).unwrap();
        let fiber = crate::branch::fiber(xi, &sig).unwrap();
        for p in &fiber {
            let z = developing_map(p, &sig, 1e-10).unwrap();
            let rot = Complex64::from_polar(1.0, 2.0 * PI * p.sheet as f64 / 6.0);
            assert!((z - rot * base).norm() < 1e-10 * (1.0 + base.norm()));
        }
        // Equivariance: delta(deck(p)) = R * delta(p).
        let r = Complex64::from_polar(1.0, 2.0 * PI / 6.0);
        for p in &fiber {
            let lhs = developing_map(&p.deck(&sig), &sig, 1e-10).unwrap();
            let rhs = r * developing_map(p, &sig, 1e-10).unwrap();
            assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
        }
    }

    /// Sampling region for the straightening check: near the interior zero of
    /// eta', where the first-order finite-difference coefficient is small
    /// enough for the (h, tolerance) pair in use.
    pub(crate) fn straightening_sample(
        sig: &TriangleSignature,
        rng: &mut ChaCha8Rng,
    ) -> Complex64 {
        let n = sig.n() as f64;
        let star = (n - sig.n0() as f64) / (2.0 * n - sig.n0() as f64 - sig.n1() as f64);
        Complex64::new(
            star + rng.gen_range(-0.08..0.08),
            rng.gen_range(-0.08..0.08f64),
        )
    }

    #[test]
    fn straightening_residual_small_and_first_order() {
        let sig = TriangleSignature::new(1, 1, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..40 {
            let xi = straightening_sample(&sig, &mut rng);
            let sheet = rng.gen_range(0..sig.n()) as usize;
            let p = SurfacePoint::from_sheet(xi, sheet, &sig).unwrap();
            let r1 = straightening_residual(&p, &sig, 1e-5, 1e-10).unwrap();
            assert!(r1 < 1e-6, "residual {r1} at {xi}");
            let r2 = straightening_residual(&p, &sig, 2e-5, 1e-10).unwrap();
            // First order: doubling h roughly doubles the residual.
            if r1 > 1e-9 {
                assert!(r2 / r1 > 1.2 && r2 / r1 < 4.0, "ratio {}", r2 / r1);
            }
            // Deck invariance of the residual.
            let rd = straightening_residual(&p.deck(&sig), &sig, 1e-5, 1e-10).unwrap();
            assert!((rd - r1).abs() < 1e-6);
        }
    }

    #[test]
    fn local_isometry_spot_check() {
        // Euclidean length downstairs matches Gamma-length upstairs.
        let sig = TriangleSignature::new(1, 2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let xi = Complex64::new(rng.gen_range(0.3..0.7), rng.gen_range(0.1..0.5));
            let step = Complex64::from_polar(1e-6, rng.gen_range(0.0..2.0 * PI));
            let p = SurfacePoint::from_sheet(xi, 0, &sig).unwrap();
            let dz = f_q_increment(xi, xi + step, &sig, 1e-13).unwrap();
            let gamma_len = step.norm() / p.eta.norm();
            assert!((dz.norm() - gamma_len).abs() / gamma_len < 1e-6);
        }
    }

    #[test]
    fn conformality_derivative_identity() {
        // |F_T'(xi) * eta(xi) - 1| < 1e-6 with a central finite difference.
        for (a, b, c) in [(1, 1, 1), (1, 1, 4), (2, 2, 3)] {
            let sig = TriangleSignature::new(a, b, c).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(41);
            for _ in 0..10 {
                let xi = Complex64::new(rng.gen_range(0.25..0.75), rng.gen_range(0.2..0.8));
                let d = 1e-4;
                let plus = sc_integral(xi + Complex64::new(d, 0.0), &sig, 1e-13).unwrap();
                let minus = sc_integral(xi - Complex64::new(d, 0.0), &sig, 1e-13).unwrap();
                let deriv = (plus - minus) / (2.0 * d);
                let eta = crate::branch::principal_root(xi, &sig).unwrap();
                assert!(
                    (deriv * eta - Complex64::new(1.0, 0.0)).norm() < 1e-6,
                    "({a},{b},{c}) at {xi}"
                );
            }
        }
    }

    #[test]
    fn tolerance_range_enforced() {
        let sig = TriangleSignature::new(1, 1, 1).unwrap();
        assert!(matches!(
            sc_integral(Complex64::new(0.5, 0.5), &sig, 1e-5),
            Err(Error::ToleranceRange(_))
        ));
        assert!(matches!(
            sc_integral(Complex64::new(0.5, -0.5), &sig, 1e-10),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn infinity_probe_is_coarse_but_sane() {
        let sig = TriangleSignature::new(1, 1, 4).unwrap();
        let rel = vertex_at_infinity_probe(&sig, 1e6, 1e-10).unwrap();
        assert!(rel < 0.05, "probe {rel}");
    }
}

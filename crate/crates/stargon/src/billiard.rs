//! Billiard motions in the closed stellated polygon (center removed):
//! specular reflection, vertex/center termination, the G-invariant extended
//! motion, and the unfolding of a trajectory into a straight ray carrying
//! exact affine frames.

use num_complex::Complex64;

use crate::dihedral::AffineElement;
use crate::error::{Error, Result};
use crate::signature::TriangleSignature;
use crate::star::StellatedPolygon;

/// Position and unit direction of a billiard particle.
#[derive(Clone, Copy, Debug)]
pub struct BilliardState {
    pub position: Complex64,
    pub direction: Complex64,
}

impl BilliardState {
    /// Validates the start: inside the closed star (possibly on an open
    /// edge), not at the center, not at a vertex, direction normalizable.
    pub fn new(
        position: Complex64,
        direction: Complex64,
        poly: &StellatedPolygon,
        eps_vertex: f64,
    ) -> Result<Self> {
        let r = poly.outer_radius();
        if !position.is_finite() || !direction.is_finite() {
            return Err(Error::InvalidState("non-finite state".into()));
        }
        if direction.norm() < 1e-300 {
            return Err(Error::InvalidState("zero direction".into()));
        }
        if !poly.contains(position, 1e-12 * r) {
            return Err(Error::InvalidState(format!(
                "start {position} lies outside the closed star"
            )));
        }
        if position.norm() <= eps_vertex {
            return Err(Error::InvalidState(
                "start coincides with the excluded center".into(),
            ));
        }
        for m in 0..poly.vertex_count() {
            if (position - poly.vertex(m)).norm() <= eps_vertex {
                return Err(Error::InvalidState(format!(
                    "start coincides with vertex {m}"
                )));
            }
        }
        Ok(BilliardState {
            position,
            direction: direction / direction.norm(),
        })
    }
}

/// Why a simulation stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    BudgetExhausted,
    VertexHit,
    CenterHit,
}

/// One specular reflection record.
#[derive(Clone, Copy, Debug)]
pub struct Reflection {
    pub edge: usize,
    pub point: Complex64,
    pub incoming: Complex64,
    pub outgoing: Complex64,
}

/// A piecewise-straight billiard path. Consecutive segments share endpoints;
/// the final segment ends on the boundary (budget) or at the terminating
/// vertex/center approach.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub segments: Vec<(Complex64, Complex64)>,
    pub reflections: Vec<Reflection>,
    pub terminated: Termination,
    pub length: f64,
}

impl Trajectory {
    pub fn initial_direction(&self) -> Complex64 {
        let (a, b) = self.segments[0];
        (b - a) / (b - a).norm()
    }

    /// Indices of the edges the motion reflects off.
    pub fn edge_set(&self) -> std::collections::BTreeSet<usize> {
        self.reflections.iter().map(|r| r.edge).collect()
    }
}

/// Specular reflection of a unit direction in the line of `edge`.
pub fn reflect_direction(
    v: Complex64,
    edge: usize,
    poly: &StellatedPolygon,
) -> Result<Complex64> {
    let (a, b) = poly.edge(edge);
    let d = (b - a) / (b - a).norm();
    // v parallel to the edge: grazing, no transversal reflection.
    if (v * d.conj()).im.abs() < 1e-12 * v.norm() {
        return Err(Error::Grazing { edge });
    }
    Ok(d * d * v.conj())
}

struct Hit {
    t: f64,
    edge: usize,
    point: Complex64,
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Nearest forward intersection of `pos + t dir` with the boundary,
/// excluding the edge the motion just left. The forward-progress guard keeps
/// degenerate re-hits of the current corner out.
fn next_hit(
    poly: &StellatedPolygon,
    pos: Complex64,
    dir: Complex64,
    skip_edge: Option<usize>,
) -> Result<Hit> {
    let guard = 1e-13 * poly.outer_radius();
    let mut best: Option<Hit> = None;
    for e in 0..poly.edge_count() {
        if skip_edge == Some(e) {
            continue;
        }
        let (a, b) = poly.edge(e);
        let d = b - a;
        let denom = cross(dir, d);
        if denom.abs() < 1e-15 * d.norm() {
            continue;
        }
        let w = a - pos;
        let t = cross(w, d) / denom;
        let s = cross(w, dir) / denom;
        if t > guard && (-1e-12..=1.0 + 1e-12).contains(&s) {
            if best.as_ref().map_or(true, |h| t < h.t) {
                best = Some(Hit {
                    t,
                    edge: e,
                    point: pos + t * dir,
                });
            }
        }
    }
    best.ok_or_else(|| Error::InvalidState("no forward boundary intersection".into()))
}

/// Distance of the segment `[p, q]` from the origin, with the parameter of
/// the closest approach.
fn segment_center_approach(p: Complex64, q: Complex64) -> (f64, f64) {
    let d = q - p;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p.norm(), 0.0);
    }
    let t = (-(p.re * d.re + p.im * d.im) / len2).clamp(0.0, 1.0);
    ((p + t * d).norm(), t)
}

/// Runs a billiard motion for up to `max_bounces` reflections, then one more
/// advance to the wall. A hit within `eps_vertex` of a vertex, or a segment
/// passing within `eps_vertex` of the excluded center, ends the motion.
pub fn simulate(
    start: &BilliardState,
    poly: &StellatedPolygon,
    max_bounces: usize,
    eps_vertex: f64,
) -> Result<Trajectory> {
    let state = BilliardState::new(start.position, start.direction, poly, eps_vertex)?;
    let mut pos = state.position;
    let mut dir = state.direction;
    let mut skip = None;
    let mut segments = Vec::new();
    let mut reflections = Vec::new();
    let mut length = 0.0;
    for k in 0..=max_bounces {
        let hit = next_hit(poly, pos, dir, skip)?;
        let (center_dist, tc) = segment_center_approach(pos, hit.point);
        if center_dist <= eps_vertex {
            let stop = pos + tc * (hit.point - pos);
            length += (stop - pos).norm();
            segments.push((pos, stop));
            return Ok(Trajectory {
                segments,
                reflections,
                terminated: Termination::CenterHit,
                length,
            });
        }
        length += hit.t;
        segments.push((pos, hit.point));
        let near_vertex = (hit.point - poly.vertex(hit.edge)).norm() <= eps_vertex
            || (hit.point - poly.vertex(hit.edge + 1)).norm() <= eps_vertex;
        if near_vertex {
            return Ok(Trajectory {
                segments,
                reflections,
                terminated: Termination::VertexHit,
                length,
            });
        }
        if k == max_bounces {
            break;
        }
        let outgoing = reflect_direction(dir, hit.edge, poly)?;
        reflections.push(Reflection {
            edge: hit.edge,
            point: hit.point,
            incoming: dir,
            outgoing,
        });
        pos = hit.point;
        dir = outgoing;
        skip = Some(hit.edge);
    }
    Ok(Trajectory {
        segments,
        reflections,
        terminated: Termination::BudgetExhausted,
        length,
    })
}

/// The G-invariant extended motion: the billiard from `z` and the one from
/// `conj(z)`, the latter verified to be the pointwise U-image of the former.
pub fn extended_motion(
    z: Complex64,
    dir: Complex64,
    poly: &StellatedPolygon,
    max_bounces: usize,
    eps: f64,
) -> Result<(Trajectory, Trajectory)> {
    if z.im.abs() <= eps {
        return Err(Error::Domain(
            "extended motion needs a start not fixed by the reflection U".into(),
        ));
    }
    let t1 = simulate(&BilliardState::new(z, dir, poly, eps)?, poly, max_bounces, eps)?;
    let t2 = simulate(
        &BilliardState::new(z.conj(), dir.conj(), poly, eps)?,
        poly,
        max_bounces,
        eps,
    )?;
    let tol = 1e-9 * poly.outer_radius();
    for (s1, s2) in t1.segments.iter().zip(t2.segments.iter()) {
        if (s1.0.conj() - s2.0).norm() > tol || (s1.1.conj() - s2.1).norm() > tol {
            return Err(Error::InvalidState(
                "mirror motion deviates from the U-image of the base motion".into(),
            ));
        }
    }
    Ok((t1, t2))
}

/// A straight ray with the exact affine frames mapping each unfolded copy of
/// the polygon back onto the base copy: folding sub-segment `k` by
/// `frames[k]^(-1)` reproduces trajectory segment `k`.
#[derive(Clone, Debug)]
pub struct UnfoldedRay {
    pub origin: Complex64,
    pub direction: Complex64,
    pub length: f64,
    pub frames: Vec<AffineElement>,
}

/// Unfolds a trajectory into a straight ray. Frames are composed
/// symbolically from the exact edge mirrors, never accumulated numerically.
pub fn unfold(
    traj: &Trajectory,
    poly: &StellatedPolygon,
    sig: &TriangleSignature,
) -> Result<UnfoldedRay> {
    if traj.terminated == Termination::VertexHit {
        return Err(Error::Domain(
            "a trajectory ending in a vertex hit does not unfold".into(),
        ));
    }
    let origin = traj.segments[0].0;
    let direction = traj.initial_direction();
    let c_mag = poly.outer_radius();
    let mut frames = Vec::with_capacity(traj.segments.len());
    let mut frame = AffineElement::identity(sig.n());
    frames.push(frame.clone());
    for r in &traj.reflections {
        frame = frame.mul(&poly.edge_mirror(r.edge));
        frames.push(frame.clone());
    }
    // Consistency: every unfolded segment endpoint must sit on the ray line.
    let scale = poly.outer_radius() + traj.length;
    let mut reach = 0.0;
    for (k, seg) in traj.segments.iter().enumerate() {
        for (which, z) in [seg.0, seg.1].into_iter().enumerate() {
            let image = frames[k].apply(z, sig, c_mag);
            let off = cross(image - origin, direction).abs();
            if off > 1e-8 * scale {
                return Err(Error::FrameMismatch { error: off / scale });
            }
            let along = ((image - origin) * direction.conj()).re;
            if which == 1 && along < reach - 1e-8 * scale {
                return Err(Error::FrameMismatch {
                    error: (reach - along) / scale,
                });
            }
            reach = reach.max(along);
        }
    }
    Ok(UnfoldedRay {
        origin,
        direction,
        length: traj.length,
        frames,
    })
}

/// Folds a straight ray back into the polygon, reconstructing the billiard
/// trajectory from the ray and the polygon geometry alone. The ray must stay
/// at least `eps` away from every vertex or center image.
pub fn fold(
    ray: &UnfoldedRay,
    poly: &StellatedPolygon,
    sig: &TriangleSignature,
    eps: f64,
) -> Result<Trajectory> {
    let mut pos = ray.origin;
    let mut dir = ray.direction / ray.direction.norm();
    let mut remaining = ray.length;
    let mut skip = None;
    let mut segments = Vec::new();
    let mut reflections = Vec::new();
    let mut frame = AffineElement::identity(sig.n());
    let mut frame_idx = 0usize;
    loop {
        let hit = next_hit(poly, pos, dir, skip)?;
        let reach = hit.t.min(remaining);
        let (center_dist, _) = segment_center_approach(pos, pos + reach * dir);
        if center_dist <= eps {
            return Err(Error::FoldBlocked { eps });
        }
        if hit.t >= remaining {
            segments.push((pos, pos + remaining * dir));
            break;
        }
        let near_vertex = (hit.point - poly.vertex(hit.edge)).norm() <= eps
            || (hit.point - poly.vertex(hit.edge + 1)).norm() <= eps;
        if near_vertex {
            return Err(Error::FoldBlocked { eps });
        }
        segments.push((pos, hit.point));
        let outgoing = reflect_direction(dir, hit.edge, poly)?;
        reflections.push(Reflection {
            edge: hit.edge,
            point: hit.point,
            incoming: dir,
            outgoing,
        });
        frame = frame.mul(&poly.edge_mirror(hit.edge));
        frame_idx += 1;
        if let Some(expected) = ray.frames.get(frame_idx) {
            if *expected != frame {
                return Err(Error::FrameMismatch { error: 1.0 });
            }
        }
        remaining -= hit.t;
        pos = hit.point;
        dir = outgoing;
        skip = Some(hit.edge);
    }
    Ok(Trajectory {
        segments,
        reflections,
        terminated: Termination::BudgetExhausted,
        length: ray.length,
    })
}

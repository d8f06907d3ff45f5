//! The regular stellated n-gon: geometry, edge identifications, orbit
//! combinatorics and triangulation counts.
//!
//! The polygon has `2n` vertices `V_m` at angles `m pi / n`, outer radius
//! `|C|` at even `m` and inner radius `|D'|` at odd `m`, and `2n` edges
//! joining consecutive vertices. All identifications are computed as exact
//! index maps through [`GroupElement`]; floating-point geometry is used only
//! for cross-checks and rendering.
//!
//! Edge pairing. The reflections `S^(j)_m` relate many nonadjacent edge
//! pairs; the pairing actually used to glue the surface is a
//! rotation-invariant perfect matching among them, i.e. the R-orbit of a
//! single mirror pair, determined by its odd-edge offset `delta`. Where
//! several realizable offsets exist, the one whose identification space has
//! the Euler characteristic of the branched cover is preferred, then the
//! parallel-edge pairing, then the smallest offset. For some signatures no
//! rotation-invariant offset matches the cover's Euler characteristic; the
//! choice is still made (and flagged) so the combinatorics stays total.

use num_complex::Complex64;

use crate::dihedral::{u_vector, AffineElement, GroupElement, TranslationVector};
use crate::error::{Error, Result};
use crate::signature::{BranchIndex, TriangleSignature};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Concrete geometry of the stellated polygon.
#[derive(Clone, Debug)]
pub struct StellatedPolygon {
    sig: TriangleSignature,
    outer_radius: f64,
    inner_radius: f64,
    vertices: Vec<Complex64>,
}

impl StellatedPolygon {
    /// Builds the polygon with outer radius `c_magnitude`. The inner radius
    /// comes from the sine rule in the spoke triangle with angles
    /// `pi/n, n1 pi/n, (n-1-n1) pi/n`:
    /// `|D'| = |C| sin(pi n1/n) / sin(pi (n1+1)/n)`.
    pub fn build(sig: &TriangleSignature, c_magnitude: f64) -> Result<Self> {
        let n = sig.n();
        if sig.n1() + 1 >= n {
            return Err(Error::DegenerateStar(format!(
                "spoke triangle collapses: n1 + 1 = {} >= n = {n}",
                sig.n1() + 1
            )));
        }
        if !(c_magnitude.is_finite() && c_magnitude > 0.0) {
            return Err(Error::DegenerateStar(format!(
                "outer radius must be positive, got {c_magnitude}"
            )));
        }
        let nf = n as f64;
        let inner = c_magnitude * (std::f64::consts::PI * sig.n1() as f64 / nf).sin()
            / (std::f64::consts::PI * (sig.n1() + 1) as f64 / nf).sin();
        // Equality |D'| = |C| (regular 2n-gon) occurs for n = 2 n1 + 1 and is
        // a valid flat star; only a strictly larger inner radius is broken.
        if inner > c_magnitude * (1.0 + 1e-12) {
            return Err(Error::DegenerateStar(format!(
                "inner radius {inner} exceeds outer radius {c_magnitude}"
            )));
        }
        let two_n = 2 * n as usize;
        let vertices = (0..two_n)
            .map(|m| {
                let r = if m % 2 == 0 { c_magnitude } else { inner };
                Complex64::from_polar(r, std::f64::consts::PI * m as f64 / nf)
            })
            .collect();
        Ok(StellatedPolygon {
            sig: *sig,
            outer_radius: c_magnitude,
            inner_radius: inner,
            vertices,
        })
    }

    pub fn signature(&self) -> &TriangleSignature {
        &self.sig
    }

    pub fn outer_radius(&self) -> f64 {
        self.outer_radius
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, m: usize) -> Complex64 {
        self.vertices[m % self.vertices.len()]
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    /// Endpoints of edge `e` (joins `V_e` and `V_(e+1)`).
    pub fn edge(&self, e: usize) -> (Complex64, Complex64) {
        let k = self.vertices.len();
        (self.vertices[e % k], self.vertices[(e + 1) % k])
    }

    /// Whether two edges share a vertex.
    pub fn adjacent(&self, e: usize, f: usize) -> bool {
        let k = self.vertices.len();
        let d = (e as i64 - f as i64).rem_euclid(k as i64);
        d == 0 || d == 1 || d == k as i64 - 1
    }

    /// Index of the boundary line containing edge `e` (lines are indexed so
    /// that `u_m` of [`crate::dihedral::u_vector`] is the foot of line `m`):
    /// even edges sit on the line of the same index, odd edges on index `e+2`.
    pub fn edge_line_index(&self, e: usize) -> usize {
        let two_n = self.vertices.len();
        if e % 2 == 0 {
            e % two_n
        } else {
            (e + 2) % two_n
        }
    }

    /// The affine reflection across the line containing edge `e`, as an exact
    /// element `(R^p U, 2 u_lambda)` of the affine group. It fixes the edge
    /// pointwise.
    pub fn edge_mirror(&self, e: usize) -> AffineElement {
        let n = self.sig.n();
        let lambda = self.edge_line_index(e);
        let p = if e % 2 == 0 {
            e as i64 - self.sig.n1() as i64
        } else {
            self.sig.n1() as i64 + e as i64 + 1
        };
        AffineElement {
            g: GroupElement::new(n, p, true),
            t: TranslationVector::unit(n, lambda),
        }
    }

    /// Point-in-polygon by the radial sector test: the boundary piece over
    /// the angular sector of `z` is a single known edge line.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        let n = self.sig.n() as f64;
        if z.norm() <= tol {
            return true;
        }
        let step = std::f64::consts::PI / n;
        let mut phi = z.arg();
        if phi < 0.0 {
            phi += 2.0 * std::f64::consts::PI;
        }
        let sector = ((phi / step) as usize).min(self.vertices.len() - 1);
        let u = u_vector(self.edge_line_index(sector), &self.sig, self.outer_radius);
        let dist = (z * u.conj()).re / u.norm();
        dist <= u.norm() + tol
    }
}

/// An unordered pair of identified edges, with the reflection witnessing the
/// identification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgePair {
    pub e: usize,
    pub e_prime: usize,
    pub witness_j: BranchIndex,
    pub witness_m: u64,
}

impl EdgePair {
    pub fn pair(&self) -> (usize, usize) {
        (self.e, self.e_prime)
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.e == e || self.e_prime == e
    }
}

/// How the canonical matching offset for `(sig, j)` was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchingInfo {
    /// Offset from each odd edge to its partner, modulo `2n`.
    pub delta: u64,
    /// Whether the identification space of this matching has the Euler
    /// characteristic `d0 + d1 + d_inf - n` of the branched cover.
    pub chi_consistent: bool,
    /// Whether the paired edges are parallel.
    pub parallel: bool,
}

fn realizable(sig: &TriangleSignature, j: BranchIndex, delta: u64) -> bool {
    let n = sig.n();
    n % 2 == 1 || (delta as i64 - (2 * sig.part(j) as i64 + 1)).rem_euclid(4) == 0
}

/// Number of vertex classes of the identification space for offset `delta`
/// (odd-vertex classes + even-vertex classes + the center).
fn identification_classes(n: u64, delta: u64) -> u64 {
    (gcd(delta + 1, 2 * n) + gcd(delta - 1, 2 * n)) / 2 + 1
}

fn parallel_family(sig: &TriangleSignature, delta: u64) -> bool {
    (delta as i64 - (2 * sig.n1() as i64 + 1)).rem_euclid(sig.n() as i64) == 0
}

/// Selects the canonical matching offset for the pair set of `(sig, j)`.
pub fn matching_info(sig: &TriangleSignature, j: BranchIndex) -> MatchingInfo {
    let n = sig.n();
    let d_sum = sig.cover_profile().d_sum();
    let candidates: Vec<u64> = (3..=2 * n - 3)
        .step_by(2)
        .filter(|&d| realizable(sig, j, d))
        .collect();
    assert!(
        !candidates.is_empty(),
        "every signature admits a realizable mirror matching"
    );
    let consistent: Vec<u64> = candidates
        .iter()
        .copied()
        .filter(|&d| identification_classes(n, d) == d_sum)
        .collect();
    let pool = if consistent.is_empty() {
        &candidates
    } else {
        &consistent
    };
    let delta = pool
        .iter()
        .copied()
        .find(|&d| parallel_family(sig, d))
        .unwrap_or(pool[0]);
    MatchingInfo {
        delta,
        chi_consistent: identification_classes(n, delta) == d_sum,
        parallel: parallel_family(sig, delta),
    }
}

/// The canonical equivalent-edge pairs for branch index `j`: the R-orbit of
/// the matching's base mirror pair, one pair per generator index, each edge
/// in exactly one pair. Sorted by the smaller edge index.
pub fn edge_pairs(sig: &TriangleSignature, j: BranchIndex) -> Vec<EdgePair> {
    let n = sig.n();
    let two_n = (2 * n) as usize;
    let info = matching_info(sig, j);
    let mut pairs = Vec::with_capacity(n as usize);
    for e in (1..two_n).step_by(2) {
        let f = (e + info.delta as usize) % two_n;
        let m = witness_for(sig, j, e, f)
            .expect("matching offsets are chosen to be realizable");
        let (lo, hi) = (e.min(f), e.max(f));
        pairs.push(EdgePair {
            e: lo,
            e_prime: hi,
            witness_j: j,
            witness_m: m,
        });
    }
    pairs.sort_by_key(|p| p.e);
    pairs
}

/// Smallest `m` with `S^(j)_m(e) = f` as an edge-index map, if any.
pub fn witness_for(sig: &TriangleSignature, j: BranchIndex, e: usize, f: usize) -> Option<u64> {
    (0..sig.n()).find(|&m| {
        crate::dihedral::reflection_s(sig, j, m as i64).edge_image(e) == f
    })
}

/// Every nonadjacent mirror pair `[E, S^(j)_m(E)]`, deduplicated: the raw
/// relation before a matching is extracted. Used by the property checks.
pub fn mirror_pairs_raw(sig: &TriangleSignature, j: BranchIndex) -> Vec<(usize, usize)> {
    let n = sig.n();
    let two_n = (2 * n) as usize;
    let poly_adjacent = |e: usize, f: usize| {
        let d = (e as i64 - f as i64).rem_euclid(two_n as i64);
        d == 0 || d == 1 || d == two_n as i64 - 1
    };
    let mut seen = std::collections::BTreeSet::new();
    for m in 0..n {
        let s = crate::dihedral::reflection_s(sig, j, m as i64);
        for e in 0..two_n {
            let f = s.edge_image(e);
            if !poly_adjacent(e, f) {
                seen.insert((e.min(f), e.max(f)));
            }
        }
    }
    seen.into_iter().collect()
}

/// Brute-force decomposition of the canonical pair set into orbits of the
/// reflection group `G^j`: repeatedly apply all generators `S^(j)_k` until
/// closure. Orbits are sorted for deterministic output.
pub fn orbit_decomposition(sig: &TriangleSignature, j: BranchIndex) -> Vec<Vec<EdgePair>> {
    let n = sig.n();
    let pairs = edge_pairs(sig, j);
    let index_of = |e: usize, f: usize| -> usize {
        let (lo, hi) = (e.min(f), e.max(f));
        pairs
            .iter()
            .position(|p| (p.e, p.e_prime) == (lo, hi))
            .expect("the canonical pair set is closed under the group action")
    };
    let generators: Vec<GroupElement> = (0..n)
        .map(|k| crate::dihedral::reflection_s(sig, j, k as i64))
        .collect();
    let mut orbit_of = vec![usize::MAX; pairs.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..pairs.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut frontier = vec![start];
        orbit_of[start] = id;
        let mut members = vec![start];
        while let Some(i) = frontier.pop() {
            for g in &generators {
                let img = index_of(g.edge_image(pairs[i].e), g.edge_image(pairs[i].e_prime));
                if orbit_of[img] == usize::MAX {
                    orbit_of[img] = id;
                    members.push(img);
                    frontier.push(img);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits.sort_by_key(|o| o[0]);
    orbits
        .into_iter()
        .map(|o| o.into_iter().map(|i| pairs[i]).collect())
        .collect()
}

/// A class of polygon vertices attached to a branch index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub branch: BranchIndex,
    pub members: Vec<usize>,
}

/// The `d_j` vertex classes attached to branch index `j`: orbits of the
/// rotation subgroup `<R^(d_j)>` on the outer vertices for `j = 1` (they
/// carry the image of the branch value C) and on the inner vertices
/// otherwise. Their total count over the three branch indices is
/// `d0 + d1 + d_inf`, the vertex count of the triangulated surface.
pub fn vertex_orbits(sig: &TriangleSignature, j: BranchIndex) -> Vec<VertexClass> {
    let n = sig.n();
    let two_n = (2 * n) as usize;
    let d = sig.cover_profile().d(j) as usize;
    let base = if j == BranchIndex::One { 0 } else { 1 };
    (0..d)
        .map(|l| {
            let mut members: Vec<usize> = (0..(n as usize / d))
                .map(|t| (base + 2 * l + 2 * d * t) % two_n)
                .collect();
            members.sort_unstable();
            VertexClass {
                branch: j,
                members,
            }
        })
        .collect()
}

/// All vertex classes across the three branch indices; the count equals
/// `d0 + d1 + d_inf`.
pub fn vertex_class_census(sig: &TriangleSignature) -> Vec<VertexClass> {
    BranchIndex::ALL
        .into_iter()
        .flat_map(|j| vertex_orbits(sig, j))
        .collect()
}

/// Cell counts of the triangulated surface: the spoke triangulation has
/// `2n` triangles and `3n` edge orbits, and the vertex classes number
/// `d0 + d1 + d_inf`, giving `chi = d0 + d1 + d_inf - n = 2 - 2g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangulationCount {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub genus: u64,
}

pub fn triangulation_counts(sig: &TriangleSignature) -> Result<TriangulationCount> {
    let n = sig.n() as usize;
    let census = vertex_class_census(sig);
    let expected = sig.cover_profile().d_sum() as usize;
    if census.len() != expected {
        return Err(Error::VertexClassMismatch {
            enumerated: census.len(),
            expected,
        });
    }
    let vertices = census.len();
    let edges = 3 * n;
    let faces = 2 * n;
    let euler = vertices as i64 - edges as i64 + faces as i64;
    if (2 - euler) % 2 != 0 || euler > 2 {
        return Err(Error::VertexClassMismatch {
            enumerated: vertices,
            expected,
        });
    }
    Ok(TriangulationCount {
        vertices,
        edges,
        faces,
        euler,
        genus: ((2 - euler) / 2) as u64,
    })
}

/// Euler characteristic of the identification space defined by the canonical
/// matching for `(sig, j)`: endpoint classes plus the center, minus `3n` edge
/// cells, plus `2n` triangles. Matches `d0+d1+d_inf - n` exactly when the
/// matching is chi-consistent.
pub fn identification_euler(sig: &TriangleSignature, j: BranchIndex) -> i64 {
    let n = sig.n();
    let info = matching_info(sig, j);
    identification_classes(n, info.delta) as i64 - 3 * n as i64 + 2 * n as i64
}

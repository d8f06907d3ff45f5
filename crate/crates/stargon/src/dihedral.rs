//! The dihedral group `D_2n` in the symbolic normal form `R^p U^ell`, its
//! distinguished reflections `S^(j)_k = R^(2k + n_j) U`, the edge translation
//! vectors `u_m`, and the affine group they generate.
//!
//! Elements are `(p, ell)` pairs, never floating-point matrices, so all
//! composition and conjugation is exact. Translations are integer coefficient
//! vectors over the `2n` generators `2 u_m`; the group acts on them by index
//! permutations, and numeric evaluation is deferred to the end.

use num_complex::Complex64;

use crate::signature::{BranchIndex, TriangleSignature};

/// `R^p U^ell` with `R^n = U^2 = e` and `R U = U R^(-1)`; `p` is reduced
/// modulo `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    n: u64,
    p: u64,
    ell: bool,
}

impl GroupElement {
    pub fn new(n: u64, p: i64, ell: bool) -> Self {
        assert!(n >= 1);
        GroupElement {
            n,
            p: p.rem_euclid(n as i64) as u64,
            ell,
        }
    }

    pub fn identity(n: u64) -> Self {
        Self::new(n, 0, false)
    }

    pub fn rotation(n: u64, p: i64) -> Self {
        Self::new(n, p, false)
    }

    pub fn reflection_u(n: u64) -> Self {
        Self::new(n, 0, true)
    }

    pub fn order_n(&self) -> u64 {
        self.n
    }

    pub fn rot_exponent(&self) -> u64 {
        self.p
    }

    pub fn is_reflection(&self) -> bool {
        self.ell
    }

    /// Product `self * other` (apply `other` first).
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.n, other.n, "mixing dihedral groups of different order");
        let sign = if self.ell { -1 } else { 1 };
        GroupElement::new(
            self.n,
            self.p as i64 + sign * other.p as i64,
            self.ell ^ other.ell,
        )
    }

    pub fn inverse(&self) -> GroupElement {
        if self.ell {
            *self
        } else {
            GroupElement::new(self.n, -(self.p as i64), false)
        }
    }

    /// Numeric action on the plane: `z -> e^(2 pi i p/n) * (conj(z))^ell`.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        let base = if self.ell { z.conj() } else { z };
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * self.p as f64 / self.n as f64)
            * base
    }

    /// Action on star-polygon vertex indices (`2n` vertices, `V_m` at angle
    /// `m pi/n`): `U: m -> -m`, `R: m -> m + 2`.
    pub fn vertex_image(&self, v: usize) -> usize {
        let two_n = 2 * self.n as i64;
        let m = if self.ell { -(v as i64) } else { v as i64 };
        (m + 2 * self.p as i64).rem_euclid(two_n) as usize
    }

    /// Action on star-polygon edge indices (edge `m` joins `V_m` and
    /// `V_(m+1)`): `U: m -> -m - 1`, `R: m -> m + 2`.
    pub fn edge_image(&self, e: usize) -> usize {
        let two_n = 2 * self.n as i64;
        let m = if self.ell { -(e as i64) - 1 } else { e as i64 };
        (m + 2 * self.p as i64).rem_euclid(two_n) as usize
    }

    /// Action on the `u`-vector indices: `U: m -> 1 - m` (conjugation swaps
    /// the even and odd families), `R: m -> m + 2`.
    pub fn u_image(&self, m: usize) -> usize {
        let two_n = 2 * self.n as i64;
        let k = if self.ell { 1 - m as i64 } else { m as i64 };
        (k + 2 * self.p as i64).rem_euclid(two_n) as usize
    }
}

/// The reflection `S^(j)_k = R^k S^(j) R^(-k) = R^(2k + n_j) U` in the ray
/// `R^k l^j`. For even `n` the indexing is 2-to-1: `S^(j)_(k + n/2) = S^(j)_k`.
pub fn reflection_s(sig: &TriangleSignature, j: BranchIndex, k: i64) -> GroupElement {
    let n = sig.n();
    GroupElement::new(n, 2 * k + sig.part(j) as i64, true)
}

/// The index `r` with `g S^(j)_k g^(-1) = S^(j)_r`, solved exactly:
/// `r = k + p` for `g = R^p` and `r = p - k - n_j` for `g = R^p U`. The value
/// is canonical in `[0, n)`; for even `n` the index `r + n/2` names the same
/// reflection.
pub fn conjugate_index(
    sig: &TriangleSignature,
    j: BranchIndex,
    k: i64,
    by: &GroupElement,
) -> u64 {
    let n = sig.n() as i64;
    let p = by.rot_exponent() as i64;
    let r = if by.is_reflection() {
        p - k - sig.part(j) as i64
    } else {
        p + k
    };
    r.rem_euclid(n) as u64
}

/// The foot of the perpendicular from the center to the m-th edge line of the
/// stellated polygon:
/// `u_(2j) = |C| sin(pi n1/n) e^(i (1/2 - n1/n + 2j/n) pi)` and
/// `u_(2j+1) = |C| sin(pi n1/n) e^(i (-1/2 + n1/n - 1/n + (2j+1)/n) pi)`.
pub fn u_vector(index: usize, sig: &TriangleSignature, c_magnitude: f64) -> Complex64 {
    let n = sig.n() as f64;
    let len = c_magnitude * (std::f64::consts::PI * sig.n1() as f64 / n).sin();
    let theta = if index % 2 == 0 {
        let j = (index / 2) as f64;
        (0.5 - sig.n1() as f64 / n + 2.0 * j / n) * std::f64::consts::PI
    } else {
        let j = (index / 2) as f64;
        (-0.5 + sig.n1() as f64 / n - 1.0 / n + (2.0 * j + 1.0) / n) * std::f64::consts::PI
    };
    Complex64::from_polar(len, theta)
}

/// Integer coefficient vector over the `2n` translation generators `2 u_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TranslationVector {
    n: u64,
    coeffs: Vec<i64>,
}

impl TranslationVector {
    pub fn zero(n: u64) -> Self {
        TranslationVector {
            n,
            coeffs: vec![0; 2 * n as usize],
        }
    }

    /// The generator `2 u_index`.
    pub fn unit(n: u64, index: usize) -> Self {
        let mut t = Self::zero(n);
        t.coeffs[index % (2 * n as usize)] = 1;
        t
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &TranslationVector) -> TranslationVector {
        assert_eq!(self.n, other.n);
        TranslationVector {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> TranslationVector {
        TranslationVector {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Image under a group element: coefficients move along the exact index
    /// permutation `m -> g(m)` of the generators.
    pub fn permuted(&self, g: &GroupElement) -> TranslationVector {
        assert_eq!(self.n, g.order_n());
        let mut out = vec![0i64; self.coeffs.len()];
        for (m, &c) in self.coeffs.iter().enumerate() {
            out[g.u_image(m)] += c;
        }
        TranslationVector {
            n: self.n,
            coeffs: out,
        }
    }

    /// Numeric displacement `sum coeffs[m] * 2 u_m`.
    pub fn evaluate(&self, sig: &TriangleSignature, c_magnitude: f64) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (m, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                z += 2.0 * c as f64 * u_vector(m, sig, c_magnitude);
            }
        }
        z
    }
}

/// An element `(g, t)` of the affine group `G x| T`, acting by
/// `z -> g(z) + t`. Two elements are equal exactly when their normal forms
/// match coefficient-wise; numeric coincidences among the `u_m` are not
/// quotiented out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineElement {
    pub g: GroupElement,
    pub t: TranslationVector,
}

impl AffineElement {
    pub fn identity(n: u64) -> Self {
        AffineElement {
            g: GroupElement::identity(n),
            t: TranslationVector::zero(n),
        }
    }

    pub fn from_group(g: GroupElement) -> Self {
        let t = TranslationVector::zero(g.order_n());
        AffineElement { g, t }
    }

    pub fn from_translation(t: TranslationVector) -> Self {
        AffineElement {
            g: GroupElement::identity(t.n),
            t,
        }
    }

    /// Composition of affine maps: `(g_a, t_a) (g_b, t_b) = (g_a g_b, g_a(t_b) + t_a)`.
    pub fn mul(&self, other: &AffineElement) -> AffineElement {
        AffineElement {
            g: self.g.compose(&other.g),
            t: other.t.permuted(&self.g).add(&self.t),
        }
    }

    pub fn inverse(&self) -> AffineElement {
        let gi = self.g.inverse();
        AffineElement {
            g: gi,
            t: self.t.permuted(&gi).neg(),
        }
    }

    pub fn apply(&self, z: Complex64, sig: &TriangleSignature, c_magnitude: f64) -> Complex64 {
        self.g.apply(z) + self.t.evaluate(sig, c_magnitude)
    }

    /// Linear part only (used when transporting directions).
    pub fn apply_linear(&self, z: Complex64) -> Complex64 {
        self.g.apply(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::TriangleSignature;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sig114() -> TriangleSignature {
        TriangleSignature::new(1, 1, 4).unwrap()
    }

    #[test]
    fn defining_relations() {
        for n in 3..=8u64 {
            let r = GroupElement::rotation(n, 1);
            let u = GroupElement::reflection_u(n);
            // R U = U R^(-1)
            assert_eq!(r.compose(&u), u.compose(&r.inverse()));
            // U^2 = e, R^(n-1) R = e
            assert_eq!(u.compose(&u), GroupElement::identity(n));
            assert_eq!(
                GroupElement::rotation(n, n as i64 - 1).compose(&r),
                GroupElement::identity(n)
            );
        }
    }

    #[test]
    fn cayley_closure_small_n() {
        for n in 3..=12u64 {
            let mut elems = Vec::new();
            for p in 0..n {
                for ell in [false, true] {
                    elems.push(GroupElement::new(n, p as i64, ell));
                }
            }
            assert_eq!(elems.len(), 2 * n as usize);
            for a in &elems {
                for b in &elems {
                    let c = a.compose(b);
                    assert!(elems.contains(&c));
                    // check against the numeric action
                    let z = Complex64::new(0.37, -0.81);
                    assert!((c.apply(z) - a.apply(b.apply(z))).norm() < 1e-12);
                }
                assert_eq!(a.compose(&a.inverse()), GroupElement::identity(n));
            }
        }
    }

    #[test]
    fn reflection_examples() {
        let sig = sig114();
        // S^(0) = R U for the stellated hexagon.
        assert_eq!(
            reflection_s(&sig, BranchIndex::Zero, 0),
            GroupElement::new(6, 1, true)
        );
        for j in BranchIndex::ALL {
            for k in 0..6 {
                let s = reflection_s(&sig, j, k);
                assert_eq!(s.compose(&s), GroupElement::identity(6));
                // R S_k R^(-1) = S_(k+1)
                let r = GroupElement::rotation(6, 1);
                let conj = r.compose(&s).compose(&r.inverse());
                assert_eq!(conj, reflection_s(&sig, j, k + 1));
            }
        }
    }

    #[test]
    fn conjugate_index_solves_conjugation() {
        for (a, b, c) in [(1, 1, 4), (1, 2, 3), (2, 2, 3), (1, 1, 1)] {
            let sig = TriangleSignature::new(a, b, c).unwrap();
            let n = sig.n();
            for j in BranchIndex::ALL {
                for k in 0..n as i64 {
                    for p in 0..n as i64 {
                        for ell in [false, true] {
                            let g = GroupElement::new(n, p, ell);
                            let r = conjugate_index(&sig, j, k, &g);
                            let lhs = g
                                .compose(&reflection_s(&sig, j, k))
                                .compose(&g.inverse());
                            assert_eq!(lhs, reflection_s(&sig, j, r as i64), "{sig} j={j} k={k}");
                        }
                    }
                }
            }
        }
        // by = e and by = R reproduce k and k+1.
        let sig = sig114();
        let e = GroupElement::identity(6);
        let r = GroupElement::rotation(6, 1);
        assert_eq!(conjugate_index(&sig, BranchIndex::Zero, 2, &e), 2);
        assert_eq!(conjugate_index(&sig, BranchIndex::Zero, 2, &r), 3);
        // U-conjugation of S_2 for n_j = 1: the exact index is
        // -(k + n_j) = 3 mod 6, and S_3 = S_0 = R U here.
        let u = GroupElement::reflection_u(6);
        let r_idx = conjugate_index(&sig, BranchIndex::Zero, 2, &u);
        assert_eq!(r_idx, 3);
        assert_eq!(
            reflection_s(&sig, BranchIndex::Zero, r_idx as i64),
            GroupElement::new(6, 1, true)
        );
    }

    #[test]
    fn u_vector_identities() {
        for (a, b, c) in [(1, 1, 4), (1, 2, 3), (2, 3, 5), (3, 4, 5)] {
            let sig = TriangleSignature::new(a, b, c).unwrap();
            let n = sig.n() as usize;
            let len = (std::f64::consts::PI * sig.n1() as f64 / sig.n() as f64).sin();
            let r = GroupElement::rotation(sig.n(), 1);
            for m in 0..2 * n {
                let u = u_vector(m, &sig, 1.0);
                assert!((u.norm() - len).abs() < 1e-12);
                // conj(u_2j) = u_(2(n-j)+1), both parities covered by m -> 1-m.
                let conj_index = (1 - m as i64).rem_euclid(2 * n as i64) as usize;
                assert!((u.conj() - u_vector(conj_index, &sig, 1.0)).norm() < 1e-12);
                // R u_m = u_(m+2)
                assert!((r.apply(u) - u_vector((m + 2) % (2 * n), &sig, 1.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn affine_semidirect_law() {
        let sig = sig114();
        let n = sig.n();
        // (e, 2u_(j+2k)) (R^k, 0) = (R^k, 0) (e, 2u_j), coefficient-exact.
        for j in 0..12usize {
            for k in 0..n as i64 {
                let lhs = AffineElement::from_translation(TranslationVector::unit(
                    n,
                    (j + 2 * k as usize) % 12,
                ))
                .mul(&AffineElement::from_group(GroupElement::rotation(n, k)));
                let rhs = AffineElement::from_group(GroupElement::rotation(n, k)).mul(
                    &AffineElement::from_translation(TranslationVector::unit(n, j)),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn affine_apply_homomorphism() {
        let sig = sig114();
        let n = sig.n();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c_mag = 1.7;
        for _ in 0..1000 {
            let rand_el = |rng: &mut ChaCha8Rng| {
                let g = GroupElement::new(n, rng.gen_range(0..n as i64), rng.gen());
                let mut t = TranslationVector::zero(n);
                for _ in 0..3 {
                    let idx = rng.gen_range(0..2 * n as usize);
                    t = t.add(&TranslationVector::unit(n, idx));
                }
                AffineElement { g, t }
            };
            let a = rand_el(&mut rng);
            let b = rand_el(&mut rng);
            let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let lhs = a.mul(&b).apply(z, &sig, c_mag);
            let rhs = a.apply(b.apply(z, &sig, c_mag), &sig, c_mag);
            assert!((lhs - rhs).norm() < 1e-10);
            // a * a^(-1) = identity
            assert_eq!(a.mul(&a.inverse()), AffineElement::identity(n));
        }
    }

    proptest! {
        #[test]
        fn prop_group_associativity(
            n in 3u64..20,
            pa in 0i64..40, pb in 0i64..40, pc in 0i64..40,
            ea: bool, eb: bool, ec: bool,
        ) {
            let a = GroupElement::new(n, pa, ea);
            let b = GroupElement::new(n, pb, eb);
            let c = GroupElement::new(n, pc, ec);
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }

        #[test]
        fn prop_affine_associativity(
            pa in 0i64..12, pb in 0i64..12, pc in 0i64..12,
            ea: bool, eb: bool, ec: bool,
            ia in 0usize..12, ib in 0usize..12, ic in 0usize..12,
        ) {
            let n = 6;
            let el = |p, e, i| AffineElement {
                g: GroupElement::new(n, p, e),
                t: TranslationVector::unit(n, i),
            };
            let a = el(pa, ea, ia);
            let b = el(pb, eb, ib);
            let c = el(pc, ec, ic);
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}

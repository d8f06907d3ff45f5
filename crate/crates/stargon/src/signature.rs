//! Exact integer arithmetic on triangle signatures: validation, branch
//! degrees, ramification, genus, singular-point classification and the
//! genus table.

use crate::error::{Error, Result};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Index of a branch point of the covering `(xi, eta) -> xi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchIndex {
    /// The branch point `xi = 0`.
    Zero,
    /// The branch point `xi = 1`.
    One,
    /// The branch point at infinity.
    Infinity,
}

impl BranchIndex {
    pub const ALL: [BranchIndex; 3] = [BranchIndex::Zero, BranchIndex::One, BranchIndex::Infinity];
}

impl std::fmt::Display for BranchIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BranchIndex::Zero => write!(f, "0"),
            BranchIndex::One => write!(f, "1"),
            BranchIndex::Infinity => write!(f, "inf"),
        }
    }
}

/// The integer triple `(n0, n1, n_inf)` normalized by `1 <= n0 <= n1 <= n_inf`,
/// with `n = n0 + n1 + n_inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TriangleSignature {
    n0: u64,
    n1: u64,
    n_inf: u64,
}

impl TriangleSignature {
    /// Validates and builds a signature. The ordering `n0 <= n1 <= n_inf` is
    /// required, not repaired: a caller that hands parts in the wrong order
    /// has a bug that silent sorting would hide.
    pub fn new(n0: i64, n1: i64, n_inf: i64) -> Result<Self> {
        if n0 < 1 || n1 < 1 || n_inf < 1 {
            return Err(Error::NonPositiveSignature { n0, n1, n_inf });
        }
        if !(n0 <= n1 && n1 <= n_inf) {
            return Err(Error::UnorderedSignature { n0, n1, n_inf });
        }
        Ok(TriangleSignature {
            n0: n0 as u64,
            n1: n1 as u64,
            n_inf: n_inf as u64,
        })
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    pub fn n_inf(&self) -> u64 {
        self.n_inf
    }

    /// `n = n0 + n1 + n_inf`.
    pub fn n(&self) -> u64 {
        self.n0 + self.n1 + self.n_inf
    }

    /// The part attached to a branch index.
    pub fn part(&self, j: BranchIndex) -> u64 {
        match j {
            BranchIndex::Zero => self.n0,
            BranchIndex::One => self.n1,
            BranchIndex::Infinity => self.n_inf,
        }
    }

    /// Whether the underlying triangle is isosceles (`n0 == n1`).
    pub fn is_isosceles(&self) -> bool {
        self.n0 == self.n1
    }

    /// Branch degrees, ramification index and genus of the compactified curve.
    pub fn cover_profile(&self) -> CoverProfile {
        let n = self.n();
        let d = [gcd(self.n0, n), gcd(self.n1, n), gcd(self.n_inf, n)];
        let r = (n - d[0]) + (n - d[1]) + (n - d[2]);
        // 2g = n + 2 - (d0 + d1 + d_inf); the right-hand side is always even.
        let two_g = n + 2 - (d[0] + d[1] + d[2]);
        debug_assert_eq!(two_g % 2, 0);
        CoverProfile {
            d0: d[0],
            d1: d[1],
            d_inf: d[2],
            degree0: n / d[0],
            degree1: n / d[1],
            degree_inf: n / d[2],
            ramification_r: r,
            genus: two_g / 2,
        }
    }

    /// Singular points of the projective closure.
    pub fn singular_points(&self) -> SingularSet {
        SingularSet {
            affine_points: [[0, 0, 1], [1, 0, 1]],
            point_at_infinity_singular: self.n_inf > 1,
        }
    }
}

impl std::fmt::Display for TriangleSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{};{})", self.n0, self.n1, self.n_inf, self.n())
    }
}

/// Branch data of the n-fold covering: `d_j = gcd(n_j, n)`, local degrees
/// `n/d_j`, total ramification `r = sum(n - d_j)` and the genus from
/// `2g = n + 2 - (d0 + d1 + d_inf)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverProfile {
    pub d0: u64,
    pub d1: u64,
    pub d_inf: u64,
    pub degree0: u64,
    pub degree1: u64,
    pub degree_inf: u64,
    pub ramification_r: u64,
    pub genus: u64,
}

impl CoverProfile {
    pub fn d(&self, j: BranchIndex) -> u64 {
        match j {
            BranchIndex::Zero => self.d0,
            BranchIndex::One => self.d1,
            BranchIndex::Infinity => self.d_inf,
        }
    }

    pub fn d_sum(&self) -> u64 {
        self.d0 + self.d1 + self.d_inf
    }
}

/// Singular points of the projective curve, as projective coordinate triples.
/// `[0:0:1]` and `[1:0:1]` are always singular; `[0:1:0]` only when `n_inf > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingularSet {
    pub affine_points: [[i64; 3]; 2],
    pub point_at_infinity_singular: bool,
}

/// All normalized partitions of every `n <= n_max` into three parts, with the
/// genus of the attached curve, sorted by `(genus, n, n0, n1)`.
pub fn genus_table(n_max: u64) -> Vec<(TriangleSignature, u64)> {
    let mut rows = Vec::new();
    for n in 3..=n_max {
        for n0 in 1..=n / 3 {
            for n1 in n0..=(n - n0) / 2 {
                let n_inf = n - n0 - n1;
                let sig = TriangleSignature::new(n0 as i64, n1 as i64, n_inf as i64)
                    .expect("enumeration yields normalized parts");
                rows.push((sig, sig.cover_profile().genus));
            }
        }
    }
    rows.sort_by_key(|(sig, g)| (*g, sig.n(), sig.n0(), sig.n1()));
    rows
}

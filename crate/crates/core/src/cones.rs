//! Closed-form cohomology for affine cones over smooth projective
//! hypersurfaces: line-bundle cohomology on plane curves, cone Du Bois
//! invariants, the twisted-forms vanishing criterion, and the
//! K-regularity ladder for homogeneous cones.
//!
//! Everything here is exact integer arithmetic; no Gröbner machinery.

use crate::table::{DuBoisTable, EntryState, VanishingEntry};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConesError {
    #[error("argument out of range: {0}")]
    OutOfRange(String),
}

/// The cone over a smooth degree-δ hypersurface S ⊂ ℙⁿ. The hypersurface
/// has dimension n−1; the affine cone has dimension n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConeSpec {
    ambient: u32,
    degree: u32,
}

impl ConeSpec {
    pub fn new(ambient: u32, degree: u32) -> Result<Self, ConesError> {
        if ambient < 1 {
            return Err(ConesError::OutOfRange("ambient dimension must be ≥ 1".into()));
        }
        if degree < 1 {
            return Err(ConesError::OutOfRange("degree must be ≥ 1".into()));
        }
        Ok(ConeSpec { ambient, degree })
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Dimension of the hypersurface S.
    pub fn hypersurface_dim(&self) -> u32 {
        self.ambient - 1
    }

    /// Dimension of the affine cone.
    pub fn cone_dim(&self) -> u32 {
        self.ambient
    }

    /// The cone is smooth exactly in degree 1 (a hyperplane cone).
    pub fn is_smooth(&self) -> bool {
        self.degree == 1
    }
}

fn binom(n: i64, k: i64) -> u64 {
    if n < k || k < 0 {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Genus of a smooth plane curve of degree δ.
pub fn plane_curve_genus(delta: u32) -> u64 {
    let d = delta as i64;
    ((d - 1) * (d - 2) / 2) as u64
}

/// h⁰(C, O_C(m)) for a smooth plane curve C of degree δ, from the
/// restriction sequence off ℙ².
pub fn h0_plane_curve(delta: u32, twist: i64) -> u64 {
    if twist < 0 {
        return 0;
    }
    let d = delta as i64;
    binom(twist + 2, 2) - binom(twist - d + 2, 2)
}

/// h¹(C, O_C(m)) for a smooth plane curve C of degree δ, by duality
/// against h⁰(O_C(δ−3−m)). For m ≥ 0 this is binomial(δ−m−1, 2) clamped
/// at zero; for any m it agrees with h⁰ − χ, χ = mδ + 1 − g.
pub fn h1_plane_curve(delta: u32, twist: i64) -> u64 {
    h0_plane_curve(delta, delta as i64 - 3 - twist)
}

/// b^{0,1} of the plane-curve cone: Σ_{m ≥ 1} h¹(O_C(m)). The sum is
/// finite (terms vanish once m ≥ δ−2).
pub fn cone_b01(delta: u32) -> u64 {
    (1..delta.max(3) as i64).map(|m| h1_plane_curve(delta, m)).sum()
}

/// Geometric genus of the plane-curve cone: Σ_{m ≥ 0} h¹(O_C(m)), which
/// closes to binomial(δ, 3).
pub fn cone_pg(delta: u32) -> u64 {
    (0..delta.max(3) as i64).map(|m| h1_plane_curve(delta, m)).sum()
}

/// Vanishing state of ⊕_{l ≥ 1} H^q(S, Ω^p_S(l)) on the critical
/// antidiagonal p + q = dim S: zero exactly when (p+1)·δ ≤ n+1. Off the
/// antidiagonal the positive twists vanish outright (handled by the table
/// builder, not here).
pub fn bott_nonvanishing(n: u32, delta: u32, p: u32) -> Result<VanishingEntry, ConesError> {
    if n < 1 || delta < 1 {
        return Err(ConesError::OutOfRange("need n ≥ 1 and δ ≥ 1".into()));
    }
    if p > n - 1 {
        return Err(ConesError::OutOfRange(format!(
            "form degree p = {p} exceeds dim S = {}",
            n - 1
        )));
    }
    let state = if (p as u64 + 1) * delta as u64 <= n as u64 + 1 {
        EntryState::Zero
    } else {
        EntryState::NonZero
    };
    Ok(VanishingEntry::new(state, "bott-criterion"))
}

/// Du Bois table of the affine cone of dimension d = n over a smooth
/// degree-δ hypersurface in ℙⁿ. Rows q = 1..d−1, columns p = 0..d. The
/// only possibly nonzero cells sit at (p, d−1−p) and (p+1, d−1−p); both
/// carry ⊕_{m≥1} H^{d−1−p}(Ω^p_S(m)), so their state comes from the
/// vanishing criterion, with exact values filled in for plane-curve cones.
pub fn cone_dubois_table(spec: &ConeSpec) -> DuBoisTable {
    let d = spec.cone_dim();
    let n = spec.ambient;
    let delta = spec.degree;
    DuBoisTable::build(d, |p, q| {
        // The pattern row for this q uses forms of degree p* = d−1−q.
        let p_star = d - 1 - q;
        if p == p_star || p == p_star + 1 {
            if n == 2 {
                let value = cone_b01(delta);
                VanishingEntry::new(EntryState::Value(value), "plane-curve-cone")
            } else {
                bott_nonvanishing(n, delta, p_star).expect("p* < n by construction")
            }
        } else {
            VanishingEntry::zero("cone-cohomology")
        }
    })
}

/// One rung of the homogeneous-cone ladder: for p ≤ d−2, the cone is
/// pre-p-Du Bois iff it is K_{−d+2+2p}-regular iff (p+1)·δ ≤ d+1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderRow {
    pub p: u32,
    pub passes: bool,
    pub k_index: i64,
}

/// The full ladder plus the top certified K-regularity index, or `None`
/// when not even K_{−d+2}-regular (p = 0 already fails).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KLadder {
    pub rows: Vec<LadderRow>,
    pub max_regular: Option<i64>,
}

pub fn homog_k_ladder(d: u32, delta: u32) -> KLadder {
    let mut rows = Vec::new();
    let mut max_regular = None;
    if d >= 2 {
        for p in 0..=(d - 2) {
            let passes = (p as u64 + 1) * delta as u64 <= d as u64 + 1;
            let k_index = -(d as i64) + 2 + 2 * p as i64;
            if passes {
                max_regular = Some(k_index);
            }
            rows.push(LadderRow { p, passes, k_index });
        }
    }
    KLadder { rows, max_regular }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h1_examples() {
        assert_eq!(h1_plane_curve(3, 1), 0);
        assert_eq!(h1_plane_curve(4, 1), 1);
        // h¹(O) is the genus.
        assert_eq!(h1_plane_curve(3, 0), 1);
        assert_eq!(h1_plane_curve(5, 0), plane_curve_genus(5));
    }

    #[test]
    fn h1_agrees_with_euler_characteristic() {
        // h¹ = h⁰ − χ with χ = mδ + 1 − g, for every twist.
        for delta in 1..=7u32 {
            let g = plane_curve_genus(delta) as i64;
            for m in -4..=9i64 {
                let chi = m * delta as i64 + 1 - g;
                let h0 = h0_plane_curve(delta, m) as i64;
                let h1 = h1_plane_curve(delta, m) as i64;
                assert_eq!(h1, h0 - chi, "δ={delta}, m={m}");
            }
        }
    }

    #[test]
    fn cone_invariant_examples() {
        assert_eq!((cone_b01(3), cone_pg(3)), (0, 1));
        assert_eq!((cone_b01(4), cone_pg(4)), (1, 4));
        assert_eq!((cone_b01(1), cone_pg(1)), (0, 0));
        assert_eq!((cone_b01(2), cone_pg(2)), (0, 0));
    }

    #[test]
    fn cone_pg_closes_to_binomial() {
        for delta in 1..=8u32 {
            assert_eq!(cone_pg(delta), binom(delta as i64, 3));
            assert_eq!(cone_b01(delta), binom(delta as i64 - 1, 3));
        }
    }

    #[test]
    fn bott_examples() {
        assert!(bott_nonvanishing(2, 3, 0).unwrap().is_zero());
        assert_eq!(
            bott_nonvanishing(2, 4, 0).unwrap().state,
            EntryState::NonZero
        );
        assert!(bott_nonvanishing(3, 2, 1).unwrap().is_zero());
        assert!(matches!(
            bott_nonvanishing(2, 3, 2),
            Err(ConesError::OutOfRange(_))
        ));
    }

    #[test]
    fn table_quartic_curve_cone() {
        let t = cone_dubois_table(&ConeSpec::new(2, 4).unwrap());
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.get(0, 1).unwrap().state, EntryState::Value(1));
        assert_eq!(t.get(1, 1).unwrap().state, EntryState::Value(1));
        assert!(t.get(2, 1).unwrap().is_zero());
        assert!(t.zero_pattern_ok());
    }

    #[test]
    fn table_elliptic_cone_all_zero() {
        let t = cone_dubois_table(&ConeSpec::new(2, 3).unwrap());
        for row in &t.entries {
            for e in row {
                assert!(e.is_zero());
            }
        }
    }

    #[test]
    fn table_quadric_fourfold_cone() {
        // n = 4, δ = 2: (p+1)·2 ≤ 5 holds for p ≤ 1 and fails at p* = 2.
        let t = cone_dubois_table(&ConeSpec::new(4, 2).unwrap());
        assert!(t.get(0, 3).unwrap().is_zero());
        assert!(t.get(1, 3).unwrap().is_zero());
        assert!(t.get(1, 2).unwrap().is_zero());
        assert!(t.get(2, 2).unwrap().is_zero());
        assert_eq!(t.get(2, 1).unwrap().state, EntryState::NonZero);
        assert_eq!(t.get(3, 1).unwrap().state, EntryState::NonZero);
        assert!(t.zero_pattern_ok());
    }

    #[test]
    fn ladder_examples() {
        let l = homog_k_ladder(2, 3);
        assert_eq!(l.rows.len(), 1);
        assert!(l.rows[0].passes);
        assert_eq!(l.max_regular, Some(0));

        let l = homog_k_ladder(2, 4);
        assert!(!l.rows[0].passes);
        assert_eq!(l.max_regular, None);

        let l = homog_k_ladder(5, 2);
        let passing: Vec<u32> = l.rows.iter().filter(|r| r.passes).map(|r| r.p).collect();
        assert_eq!(passing, vec![0, 1, 2]);
        assert_eq!(l.max_regular, Some(1));
    }

    #[test]
    fn ladder_is_monotone() {
        for d in 1..=8u32 {
            for delta in 1..=8u32 {
                let l = homog_k_ladder(d, delta);
                for pair in l.rows.windows(2) {
                    assert!(pair[1].passes <= pair[0].passes, "d={d}, δ={delta}");
                }
            }
        }
    }

    #[test]
    fn b01_vanishes_iff_low_degree_iff_k0() {
        for delta in 1..=8u32 {
            let b01_zero = cone_b01(delta) == 0;
            assert_eq!(b01_zero, delta <= 3);
            let grants_k0 = homog_k_ladder(2, delta)
                .max_regular
                .is_some_and(|m| m >= 0);
            assert_eq!(b01_zero, grants_k0, "δ={delta}");
        }
    }

    #[test]
    fn smooth_hyperplane_cone() {
        let spec = ConeSpec::new(3, 1).unwrap();
        assert!(spec.is_smooth());
        let t = cone_dubois_table(&spec);
        for row in &t.entries {
            for e in row {
                assert!(e.is_zero());
            }
        }
        assert_eq!(homog_k_ladder(3, 1).max_regular, Some(1));
    }
}

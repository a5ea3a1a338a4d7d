//! Exact q-combinatorics: Gaussian binomial coefficients, the number of
//! subspaces with a prescribed intersection profile along a flag, and the
//! number of subspaces with prescribed intersections against two subspaces
//! meeting in a line or in zero.
//!
//! All counts are arbitrary-precision; the multiplicities these feed grow
//! past 64 bits already at moderate parameters.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact nonnegative count.
pub type BigCount = BigUint;

/// The q-ary Gaussian binomial coefficient: the number of r-dimensional
/// subspaces of F_q^k. Returns 1 for r in {0, k} and 0 outside [0, k].
pub fn gaussian_binomial(k: i64, r: i64, q: u64) -> BigCount {
    if r < 0 || r > k {
        return BigUint::zero();
    }
    if r == 0 || r == k {
        return BigUint::one();
    }
    let (k, r) = (k as u32, r as u32);
    let q = BigUint::from(q);
    let qk = q.pow(k);
    let qr = q.pow(r);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= &qk - q.pow(i);
        den *= &qr - q.pow(i);
    }
    num / den
}

/// Intersection profile along a flag U_1 ⊆ U_2 ⊆ ... ⊆ U_s with
/// dim U_i = u_i: asks for v_s-dimensional subspaces V of U_s with
/// dim(U_i ∩ V) = v_i for every i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainProfile {
    q: u64,
    u: Vec<usize>,
    v: Vec<usize>,
}

impl ChainProfile {
    pub fn new(q: u64, u: Vec<usize>, v: Vec<usize>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidProfile(format!("field order {q} below 2")));
        }
        if u.is_empty() || u.len() != v.len() {
            return Err(Error::InvalidProfile(
                "u and v must be nonempty lists of equal length".into(),
            ));
        }
        if u[0] == 0 || u.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidProfile(
                "u must be strictly increasing and positive".into(),
            ));
        }
        if v.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidProfile("v must be nondecreasing".into()));
        }
        if u.iter().zip(&v).any(|(ui, vi)| vi > ui) {
            return Err(Error::InvalidProfile("v_i must not exceed u_i".into()));
        }
        Ok(ChainProfile { q, u, v })
    }

    pub fn depth(&self) -> usize {
        self.u.len()
    }
}

/// The number of v_s-dimensional subspaces of U_s whose intersection with the
/// flag matches the profile:
/// prod_i q^{(u_{i-1}-v_{i-1})(v_i-v_{i-1})} [u_i-u_{i-1} choose v_i-v_{i-1}]_q
/// with u_0 = v_0 = 0. Profiles whose increments are infeasible count zero.
pub fn chain_subspace_count(profile: &ChainProfile) -> BigCount {
    let q = profile.q;
    let mut acc = BigUint::one();
    let (mut u_prev, mut v_prev) = (0usize, 0usize);
    for (&ui, &vi) in profile.u.iter().zip(&profile.v) {
        let du = ui - u_prev;
        let dv = vi - v_prev;
        if dv > du {
            return BigUint::zero();
        }
        let exponent = ((u_prev - v_prev) * dv) as u32;
        acc *= BigUint::from(q).pow(exponent);
        acc *= gaussian_binomial(du as i64, dv as i64, q);
        u_prev = ui;
        v_prev = vi;
    }
    acc
}

/// Configuration of two subspaces U_2, U_3 of F_q^k with dim U_1 = u1 for
/// U_1 = U_2 ∩ U_3, where u1 is 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionConfig {
    pub q: u64,
    pub u1: usize,
    pub u2: usize,
    pub u3: usize,
    pub k: usize,
}

impl IntersectionConfig {
    pub fn new(q: u64, u1: usize, u2: usize, u3: usize, k: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidIntersection(format!(
                "field order {q} below 2"
            )));
        }
        if u1 > 1 {
            return Err(Error::InvalidIntersection(format!(
                "u1 must be 0 or 1, got {u1}"
            )));
        }
        if !(u1 < u2 && u2 < u3 && u3 < k) {
            return Err(Error::InvalidIntersection(format!(
                "need u1 < u2 < u3 < k, got ({u1}, {u2}, {u3}, {k})"
            )));
        }
        if u2 + u3 - u1 > k {
            return Err(Error::InvalidIntersection(format!(
                "U_2 + U_3 has dimension {} which does not fit in {k}",
                u2 + u3 - u1
            )));
        }
        Ok(IntersectionConfig { q, u1, u2, u3, k })
    }
}

/// The number of r-dimensional subspaces V of F_q^k with
/// dim(U_i ∩ V) = v_i for i = 1, 2, 3. Infeasible (v1, v2, v3, r)
/// combinations count zero; malformed configurations are rejected by
/// [`IntersectionConfig::new`].
pub fn intersection_count(
    cfg: &IntersectionConfig,
    v1: usize,
    v2: usize,
    v3: usize,
    r: usize,
) -> BigCount {
    let &IntersectionConfig { q, u1, u2, u3, k } = cfg;
    if r > k || v1 > u1 || v2 > u2 || v3 > u3 {
        return BigUint::zero();
    }
    if v1 > v2 || v1 > v3 || v1 > r || v2 > r || v3 > r {
        return BigUint::zero();
    }
    if r == k {
        // V is the whole space, so the profile is forced.
        return if (v1, v2, v3) == (u1, u2, u3) {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    if u1 == 1 {
        if v1 == 1 {
            // Quotient by U_1.
            disjoint_pair_count(q, u2 - 1, u3 - 1, k - 1, v2 - 1, v3 - 1, r - 1)
        } else {
            // Each subspace counted once per complement of U_1 inside V + U_1.
            BigUint::from(q).pow(r as u32)
                * disjoint_pair_count(q, u2 - 1, u3 - 1, k - 1, v2, v3, r)
        }
    } else {
        disjoint_pair_count(q, u2, u3, k, v2, v3, r)
    }
}

/// Core case: U_2 ∩ U_3 = 0 with u2 + u3 <= k. Counts r-dimensional V with
/// dim(U_2 ∩ V) = v2 and dim(U_3 ∩ V) = v3, summing over the dimension t of
/// the part of V inside U_2 + U_3 but across both summands.
fn disjoint_pair_count(
    q: u64,
    u2: usize,
    u3: usize,
    k: usize,
    v2: usize,
    v3: usize,
    r: usize,
) -> BigCount {
    if v2 > u2 || v3 > u3 || v2 + v3 > r {
        return BigUint::zero();
    }
    let t_max = (u2 - v2).min(u3 - v3).min(r - v2 - v3);
    let big_q = BigUint::from(q);
    let mut total = BigUint::zero();
    for t in 0..=t_max {
        let mut inside = gaussian_binomial((u2 - v2) as i64, t as i64, q)
            * gaussian_binomial((u3 - v3) as i64, t as i64, q)
            * gaussian_binomial(u2 as i64, v2 as i64, q)
            * gaussian_binomial(u3 as i64, v3 as i64, q);
        let qt = big_q.pow(t as u32);
        for i in 0..t {
            inside *= &qt - big_q.pow(i as u32);
        }
        let outside = gaussian_binomial((k - u2 - u3) as i64, (r - v2 - v3 - t) as i64, q);
        if outside.is_zero() || inside.is_zero() {
            continue;
        }
        let exponent = ((u2 + u3 - v2 - v3 - t) * (r - v2 - v3 - t)) as u32;
        total += big_q.pow(exponent) * inside * outside;
    }
    total
}

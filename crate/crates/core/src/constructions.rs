//! Four families of few-weight linear codes built from punctured simplex
//! matrices and complements of generalized Reed-Solomon matrices, together
//! with closed-form evaluators for their weight distributions, generalized
//! Hamming weights and subcode support weight distributions, and a
//! verification harness that compares every closed form against the
//! brute-force oracles field by field.
//!
//! Family tags (also the JSON `family` values):
//! - `T33`: t simplex copies, each of the first s punctured along a flag of
//!   coordinate-prefix subspaces; these meet the Griesmer bound at r = 1.
//! - `T35`: like `T33` but with the single column of the first flag subspace
//!   kept instead of punctured; Griesmer-tight first at r = u_2.
//! - `T42`: one simplex copy punctured along two subspaces meeting in a
//!   line; Griesmer-tight first at r = u_2.
//! - `T51`: one simplex copy with the m Vandermonde columns of a length-m
//!   GRS code removed; Griesmer-tight at r = 1 (m < q) or r = 2 (m = q).

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::codes::{LinearCode, OptimalityStatus, TableRole, WeightTable};
use crate::error::{Error, Result};
use crate::field::{field_from_order, FiniteField};
use crate::linalg::{projective_points, MatrixGF};
use crate::qcombinat::{
    chain_subspace_count, gaussian_binomial, intersection_count, ChainProfile,
    IntersectionConfig,
};

/// Parameters of one code from one of the four families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionSpec {
    T33 {
        q: u64,
        k: usize,
        t: usize,
        u: Vec<usize>,
    },
    T35 {
        q: u64,
        k: usize,
        t: usize,
        u: Vec<usize>,
    },
    T42 {
        q: u64,
        k: usize,
        u2: usize,
        u3: usize,
    },
    T51 {
        q: u64,
        k: usize,
        m: usize,
    },
}

/// JSON shape: `{"family":"T42","q":2,"k":5,"u2":2,"u3":3}` and the obvious
/// variants for the other families.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecJson {
    pub family: String,
    pub q: u64,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u3: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

impl ConstructionSpec {
    pub fn q(&self) -> u64 {
        match *self {
            ConstructionSpec::T33 { q, .. }
            | ConstructionSpec::T35 { q, .. }
            | ConstructionSpec::T42 { q, .. }
            | ConstructionSpec::T51 { q, .. } => q,
        }
    }

    pub fn k(&self) -> usize {
        match *self {
            ConstructionSpec::T33 { k, .. }
            | ConstructionSpec::T35 { k, .. }
            | ConstructionSpec::T42 { k, .. }
            | ConstructionSpec::T51 { k, .. } => k,
        }
    }

    pub fn family_tag(&self) -> &'static str {
        match self {
            ConstructionSpec::T33 { .. } => "T33",
            ConstructionSpec::T35 { .. } => "T35",
            ConstructionSpec::T42 { .. } => "T42",
            ConstructionSpec::T51 { .. } => "T51",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.q();
        let k = self.k();
        field_from_order(q)?;
        if k < 2 {
            return Err(Error::InvalidSpec("k must be at least 2".into()));
        }
        // All weight formulas are evaluated in u64/usize; q^k must fit.
        checked_pow(q, k as u32)?;
        match self {
            ConstructionSpec::T33 { t, u, .. } => {
                let s = u.len();
                if s == 0 {
                    return Err(Error::InvalidSpec("u must be nonempty".into()));
                }
                if *t < s {
                    return Err(Error::InvalidSpec(format!("need t >= s, got t={t} s={s}")));
                }
                if u[0] == 0 || u.windows(2).any(|w| w[0] >= w[1]) || u[s - 1] >= k {
                    return Err(Error::InvalidSpec(
                        "u must satisfy 0 < u_1 < ... < u_s < k".into(),
                    ));
                }
            }
            ConstructionSpec::T35 { t, u, .. } => {
                let s = u.len();
                if s < 2 || s > t + 1 {
                    return Err(Error::InvalidSpec(format!(
                        "need 2 <= s <= t + 1, got s={s} t={t}"
                    )));
                }
                if u[0] != 1 {
                    return Err(Error::InvalidSpec("u must start with u_1 = 1".into()));
                }
                if u.windows(2).any(|w| w[0] >= w[1]) || u[s - 1] >= k {
                    return Err(Error::InvalidSpec(
                        "u must satisfy 1 = u_1 < ... < u_s < k".into(),
                    ));
                }
            }
            ConstructionSpec::T42 { u2, u3, .. } => {
                if !(1 < *u2 && u2 < u3 && *u3 < k) {
                    return Err(Error::InvalidSpec(format!(
                        "need 1 < u2 < u3 < k, got u2={u2} u3={u3} k={k}"
                    )));
                }
                if u2 + u3 > k + 1 {
                    return Err(Error::InvalidSpec(format!(
                        "need u2 + u3 <= k + 1, got {}",
                        u2 + u3
                    )));
                }
            }
            ConstructionSpec::T51 { m, .. } => {
                if !(3 <= k && k <= *m && *m as u64 <= q) {
                    return Err(Error::InvalidSpec(format!(
                        "need 3 <= k <= m <= q, got k={k} m={m} q={q}"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConstructionSpec::T33 { q, k, t, u } => {
                write!(f, "t33(q={q},k={k},t={t},u={u:?})")
            }
            ConstructionSpec::T35 { q, k, t, u } => {
                write!(f, "t35(q={q},k={k},t={t},u={u:?})")
            }
            ConstructionSpec::T42 { q, k, u2, u3 } => {
                write!(f, "t42(q={q},k={k},u2={u2},u3={u3})")
            }
            ConstructionSpec::T51 { q, k, m } => write!(f, "t51(q={q},k={k},m={m})"),
        }
    }
}

impl From<&ConstructionSpec> for SpecJson {
    fn from(s: &ConstructionSpec) -> Self {
        let mut j = SpecJson {
            family: s.family_tag().to_string(),
            q: s.q(),
            k: s.k(),
            t: None,
            u: None,
            u2: None,
            u3: None,
            m: None,
        };
        match s {
            ConstructionSpec::T33 { t, u, .. } | ConstructionSpec::T35 { t, u, .. } => {
                j.t = Some(*t);
                j.u = Some(u.clone());
            }
            ConstructionSpec::T42 { u2, u3, .. } => {
                j.u2 = Some(*u2);
                j.u3 = Some(*u3);
            }
            ConstructionSpec::T51 { m, .. } => {
                j.m = Some(*m);
            }
        }
        j
    }
}

impl TryFrom<&SpecJson> for ConstructionSpec {
    type Error = Error;

    fn try_from(j: &SpecJson) -> Result<ConstructionSpec> {
        let missing = |what: &str| Error::InvalidSpec(format!("{} requires {what}", j.family));
        let spec = match j.family.to_ascii_uppercase().as_str() {
            "T33" => ConstructionSpec::T33 {
                q: j.q,
                k: j.k,
                t: j.t.ok_or_else(|| missing("t"))?,
                u: j.u.clone().ok_or_else(|| missing("u"))?,
            },
            "T35" => ConstructionSpec::T35 {
                q: j.q,
                k: j.k,
                t: j.t.ok_or_else(|| missing("t"))?,
                u: j.u.clone().ok_or_else(|| missing("u"))?,
            },
            "T42" => ConstructionSpec::T42 {
                q: j.q,
                k: j.k,
                u2: j.u2.ok_or_else(|| missing("u2"))?,
                u3: j.u3.ok_or_else(|| missing("u3"))?,
            },
            "T51" => ConstructionSpec::T51 {
                q: j.q,
                k: j.k,
                m: j.m.ok_or_else(|| missing("m"))?,
            },
            other => {
                return Err(Error::InvalidSpec(format!("unknown family {other:?}")));
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn checked_pow(q: u64, e: u32) -> Result<u64> {
    q.checked_pow(e)
        .ok_or_else(|| Error::Overflow(format!("{q}^{e} does not fit in 64 bits")))
}

/// (q^d - 1)/(q - 1): the number of projective points of a d-dimensional
/// space, i.e. the length of the d-dimensional simplex code.
fn rep_count(q: u64, d: usize) -> Result<usize> {
    Ok(((checked_pow(q, d as u32)? - 1) / (q - 1)) as usize)
}

/// The k x (q^k - 1)/(q - 1) matrix whose columns are the canonical
/// projective points; it generates the simplex code.
pub fn simplex_matrix(field: &FiniteField, k: usize) -> Result<MatrixGF> {
    if k < 2 {
        return Err(Error::InvalidSpec("simplex matrix needs k >= 2".into()));
    }
    let pts = projective_points(field, k)?;
    MatrixGF::from_columns(field.clone(), k, &pts)
}

/// The k x m Vandermonde matrix with columns (g^{k-1}, ..., g, 1) over the
/// first m field elements; it generates an [m, k] MDS code.
pub fn grs_matrix(field: &FiniteField, k: usize, m: usize) -> Result<MatrixGF> {
    let q = field.order();
    if !(3 <= k && k <= m && m as u64 <= q) {
        return Err(Error::InvalidSpec(format!(
            "need 3 <= k <= m <= q, got k={k} m={m} q={q}"
        )));
    }
    let cols: Vec<Vec<u64>> = (0..m as u64)
        .map(|g| vandermonde_column(field, k, g))
        .collect();
    MatrixGF::from_columns(field.clone(), k, &cols)
}

fn vandermonde_column(field: &FiniteField, k: usize, g: u64) -> Vec<u64> {
    (0..k)
        .map(|row| field.pow_idx(g, (k - 1 - row) as u64))
        .collect()
}

/// True iff every nonzero coordinate of `col` belongs to `coords`, i.e. the
/// column lies in the span of those standard basis vectors.
fn supported_within(col: &[u64], coords: &[bool]) -> bool {
    col.iter().enumerate().all(|(i, &x)| x == 0 || coords[i])
}

fn prefix_mask(k: usize, len: usize) -> Vec<bool> {
    (0..k).map(|i| i < len).collect()
}

/// Builds the generator matrix of the specified code, with the flags fixed
/// at standard-basis coordinates so that outputs are reproducible:
/// U_i = <e_1, ..., e_{u_i}>, except T42's U_3 = <e_1, e_{k-u3+2}, ..., e_k>.
/// Block order: punctured blocks in u order, then the full simplex copies;
/// columns inside each block keep the canonical projective order.
pub fn construct(spec: &ConstructionSpec) -> Result<LinearCode> {
    spec.validate()?;
    let q = spec.q();
    let k = spec.k();
    let field = field_from_order(q)?;
    let pts = projective_points(&field, k)?;
    let mut cols: Vec<Vec<u64>> = Vec::new();
    match spec {
        ConstructionSpec::T33 { t, u, .. } => {
            for &ui in u {
                let mask = prefix_mask(k, ui);
                cols.extend(pts.iter().filter(|c| !supported_within(c, &mask)).cloned());
            }
            for _ in 0..(t - u.len()) {
                cols.extend(pts.iter().cloned());
            }
        }
        ConstructionSpec::T35 { t, u, .. } => {
            let mask1 = prefix_mask(k, 1);
            cols.extend(pts.iter().filter(|c| supported_within(c, &mask1)).cloned());
            for &ui in &u[1..] {
                let mask = prefix_mask(k, ui);
                cols.extend(pts.iter().filter(|c| !supported_within(c, &mask)).cloned());
            }
            for _ in 0..(t + 1 - u.len()) {
                cols.extend(pts.iter().cloned());
            }
        }
        ConstructionSpec::T42 { u2, u3, .. } => {
            let mask2 = prefix_mask(k, *u2);
            let mut mask3 = vec![false; k];
            mask3[0] = true;
            for m in mask3.iter_mut().skip(k - u3 + 1) {
                *m = true;
            }
            cols.extend(
                pts.iter()
                    .filter(|c| !supported_within(c, &mask2) && !supported_within(c, &mask3))
                    .cloned(),
            );
        }
        ConstructionSpec::T51 { m, .. } => {
            let removed: HashSet<Vec<u64>> = (0..*m as u64)
                .map(|g| vandermonde_column(&field, k, g))
                .collect();
            assert_eq!(removed.len(), *m, "Vandermonde columns must be distinct");
            cols.extend(pts.iter().filter(|c| !removed.contains(*c)).cloned());
            assert_eq!(
                cols.len() + m,
                pts.len(),
                "every Vandermonde column must be a canonical projective point"
            );
        }
    }
    let gen = MatrixGF::from_columns(field, k, &cols)?;
    let code = LinearCode::from_generator(gen)?;
    let expected_n = expected_length(spec)?;
    if code.n() != expected_n {
        return Err(Error::Internal(format!(
            "{spec} built length {} instead of {expected_n}",
            code.n()
        )));
    }
    Ok(code)
}

fn expected_length(spec: &ConstructionSpec) -> Result<usize> {
    let q = spec.q();
    let k = spec.k();
    Ok(match spec {
        ConstructionSpec::T33 { t, u, .. } => {
            let mut n = t * rep_count(q, k)?;
            for &ui in u {
                n -= rep_count(q, ui)?;
            }
            n
        }
        ConstructionSpec::T35 { t, u, .. } => {
            let mut n = t * rep_count(q, k)? + 1;
            for &ui in &u[1..] {
                n -= rep_count(q, ui)?;
            }
            n
        }
        ConstructionSpec::T42 { u2, u3, .. } => {
            rep_count(q, k)? - rep_count(q, *u2)? - rep_count(q, *u3)? + 1
        }
        ConstructionSpec::T51 { m, .. } => rep_count(q, k)? - m,
    })
}

/// What the family claims about Griesmer defects and optimality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OptimalityClaims {
    /// Smallest r at which the Griesmer bound is met with equality.
    pub griesmer_index: usize,
    /// Whether the defect at r = 1 is exactly one.
    pub almost_griesmer: bool,
    /// Whether the code is claimed distance-optimal.
    pub distance_optimal: bool,
}

/// Everything the closed forms assert about one code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormBundle {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub weight_distribution: WeightTable,
    /// d_r at index r - 1.
    pub ghw: Vec<usize>,
    /// The r-SSWD at index r - 1.
    pub sswd: Vec<WeightTable>,
    pub claims: OptimalityClaims,
}

/// Evaluates every closed-form statement for the given spec. The T51 SSWDs
/// go through the complement bijection against the (tiny) GRS code, whose
/// r-SSWDs are computed by the oracle within `budget`.
pub fn closed_form(spec: &ConstructionSpec, budget: u64) -> Result<ClosedFormBundle> {
    spec.validate()?;
    let bundle = match spec {
        ConstructionSpec::T33 { q, k, t, u } => closed_form_t33(*q, *k, *t, u)?,
        ConstructionSpec::T35 { q, k, t, u } => closed_form_t35(*q, *k, *t, u)?,
        ConstructionSpec::T42 { q, k, u2, u3 } => closed_form_t42(*q, *k, *u2, *u3)?,
        ConstructionSpec::T51 { q, k, m } => closed_form_t51(*q, *k, *m, budget)?,
    };
    validate_bundle(spec, &bundle)?;
    Ok(bundle)
}

fn closed_form_t33(q: u64, k: usize, t: usize, u: &[usize]) -> Result<ClosedFormBundle> {
    let s = u.len();
    let n = expected_length(&ConstructionSpec::T33 {
        q,
        k,
        t,
        u: u.to_vec(),
    })?;
    let mut d = t * checked_pow(q, (k - 1) as u32)? as usize;
    for &ui in u {
        d -= checked_pow(q, (ui - 1) as u32)? as usize;
    }

    let pow = |e: usize| BigUint::from(q).pow(e as u32);
    let mut wd = WeightTable::new(TableRole::FullDistribution);
    wd.add(0, BigUint::one());
    let mut w = d;
    for j in 0..=s {
        if j > 0 {
            w += checked_pow(q, (u[j - 1] - 1) as u32)? as usize;
        }
        let hi = if j == 0 { k } else { k - u[j - 1] };
        let lo = if j == s { 0 } else { k - u[j] };
        wd.add(w, pow(hi) - pow(lo));
    }

    let mut ghw = Vec::with_capacity(k);
    for r in 1..=k {
        let jr = u.iter().filter(|&&ui| ui <= r).count();
        let mut dr = t * simplex_ghw(q, k, r)?;
        for &ui in u {
            dr -= rep_count(q, ui)?;
        }
        for &ui in &u[jr..] {
            dr += rep_count(q, ui - r)?;
        }
        ghw.push(dr);
    }

    let mut sswd = Vec::with_capacity(k);
    for r in 1..=k {
        let mut table = WeightTable::new(TableRole::Sswd(r));
        let base = t as i64 * simplex_ghw(q, k, r)? as i64
            - u.iter()
                .map(|&ui| rep_count(q, ui).map(|x| x as i64))
                .sum::<Result<i64>>()?;
        for v in chain_box_tuples(u, r, k) {
            let m: i64 = v
                .iter()
                .map(|&vi| rep_count(q, vi).map(|x| x as i64))
                .sum::<Result<i64>>()?;
            let j = base + m;
            debug_assert!(j >= 0);
            table.add(j as usize, chain_count_extended(q, u, &v, k, k - r)?);
        }
        sswd.push(table);
    }

    Ok(ClosedFormBundle {
        q,
        n,
        k,
        d,
        weight_distribution: wd,
        ghw,
        sswd,
        claims: OptimalityClaims {
            griesmer_index: 1,
            almost_griesmer: false,
            distance_optimal: true,
        },
    })
}

fn closed_form_t35(q: u64, k: usize, t: usize, u: &[usize]) -> Result<ClosedFormBundle> {
    let s = u.len();
    let n = expected_length(&ConstructionSpec::T35 {
        q,
        k,
        t,
        u: u.to_vec(),
    })?;
    let mut d = t * checked_pow(q, (k - 1) as u32)? as usize;
    for &ui in &u[1..] {
        d -= checked_pow(q, (ui - 1) as u32)? as usize;
    }

    let pow = |e: usize| BigUint::from(q).pow(e as u32);
    let mut wd = WeightTable::new(TableRole::FullDistribution);
    wd.add(0, BigUint::one());
    wd.add(d, pow(k - 1) - pow(k - u[1]));
    wd.add(d + 1, pow(k) - pow(k - 1));
    let mut w = d;
    for j in 2..=s {
        w += checked_pow(q, (u[j - 1] - 1) as u32)? as usize;
        let hi = k - u[j - 1];
        let lo = if j == s { 0 } else { k - u[j] };
        wd.add(w, pow(hi) - pow(lo));
    }

    let u2 = u[1];
    let mut ghw = Vec::with_capacity(k);
    for r in 1..=k {
        let dr = if r < u2 {
            let mut dr = t * simplex_ghw(q, k, r)?;
            for &ui in &u[1..] {
                dr -= rep_count(q, ui)? - rep_count(q, ui - r)?;
            }
            dr
        } else {
            let jr = u.iter().filter(|&&ui| ui <= r).count();
            let mut dr = t * simplex_ghw(q, k, r)? + 1;
            for &ui in &u[1..] {
                dr -= rep_count(q, ui)?;
            }
            for &ui in &u[jr..] {
                dr += rep_count(q, ui - r)?;
            }
            dr
        };
        ghw.push(dr);
    }

    let mut sswd = Vec::with_capacity(k);
    for r in 1..=k {
        let mut table = WeightTable::new(TableRole::Sswd(r));
        let base = t as i64 * simplex_ghw(q, k, r)? as i64 + 1
            - u[1..]
                .iter()
                .map(|&ui| rep_count(q, ui).map(|x| x as i64))
                .sum::<Result<i64>>()?;
        for v in chain_box_tuples(u, r, k) {
            let m: i64 = v[1..]
                .iter()
                .map(|&vi| rep_count(q, vi).map(|x| x as i64))
                .sum::<Result<i64>>()?
                - v[0] as i64;
            let j = base + m;
            debug_assert!(j >= 0);
            table.add(j as usize, chain_count_extended(q, u, &v, k, k - r)?);
        }
        sswd.push(table);
    }

    Ok(ClosedFormBundle {
        q,
        n,
        k,
        d,
        weight_distribution: wd,
        ghw,
        sswd,
        claims: OptimalityClaims {
            griesmer_index: u2,
            almost_griesmer: true,
            distance_optimal: d % q as usize == 0,
        },
    })
}

fn closed_form_t42(q: u64, k: usize, u2: usize, u3: usize) -> Result<ClosedFormBundle> {
    let n = expected_length(&ConstructionSpec::T42 { q, k, u2, u3 })?;
    let d = checked_pow(q, (k - 1) as u32)? as usize
        - checked_pow(q, (u2 - 1) as u32)? as usize
        - checked_pow(q, (u3 - 1) as u32)? as usize;

    let pow = |e: usize| BigUint::from(q).pow(e as u32);
    let mut wd = WeightTable::new(TableRole::FullDistribution);
    wd.add(0, BigUint::one());
    wd.add(
        d,
        pow(k - 1) + pow(k + 1 - u2 - u3) - pow(k - u2) - pow(k - u3),
    );
    wd.add(d + 1, pow(k) - pow(k - 1));
    let qu2 = checked_pow(q, (u2 - 1) as u32)? as usize;
    let qu3 = checked_pow(q, (u3 - 1) as u32)? as usize;
    wd.add(d + qu2, pow(k - u2) - pow(k + 1 - u2 - u3));
    wd.add(d + qu3, pow(k - u3) - pow(k + 1 - u2 - u3));
    wd.add(d + qu2 + qu3, pow(k + 1 - u2 - u3) - BigUint::one());

    let mut ghw = Vec::with_capacity(k);
    for r in 1..=k {
        let w = simplex_ghw(q, k, r)?;
        let dr = if r < u2 {
            w - (rep_count(q, u2)? - rep_count(q, u2 - r)?)
                - (rep_count(q, u3)? - rep_count(q, u3 - r)?)
        } else if r < u3 {
            w - rep_count(q, u2)? - (rep_count(q, u3)? - rep_count(q, u3 - r)?) + 1
        } else {
            w - rep_count(q, u2)? - rep_count(q, u3)? + 1
        };
        ghw.push(dr);
    }

    let cfg = IntersectionConfig::new(q, 1, u2, u3, k)?;
    let mut sswd = Vec::with_capacity(k);
    for r in 1..=k {
        let mut table = WeightTable::new(TableRole::Sswd(r));
        let base = simplex_ghw(q, k, r)? as i64
            - rep_count(q, u2)? as i64
            - rep_count(q, u3)? as i64
            + 1;
        let cod = k - r;
        for v1 in 0..=1usize.min(cod) {
            let lo2 = v1.max(u2.saturating_sub(r));
            let hi2 = u2.min(cod).min(v1 + u2 - 1);
            if lo2 > hi2 {
                continue;
            }
            for v2 in lo2..=hi2 {
                let lo3 = v1.max(u3.saturating_sub(r));
                let hi3 = u3.min(cod).min(v1 + u3 - 1);
                if lo3 > hi3 {
                    continue;
                }
                for v3 in lo3..=hi3 {
                    if v2 + v3 > cod + v1 {
                        continue;
                    }
                    let m = rep_count(q, v2)? as i64 + rep_count(q, v3)? as i64 - v1 as i64;
                    let j = base + m;
                    debug_assert!(j >= 0);
                    table.add(j as usize, intersection_count(&cfg, v1, v2, v3, cod));
                }
            }
        }
        sswd.push(table);
    }

    Ok(ClosedFormBundle {
        q,
        n,
        k,
        d,
        weight_distribution: wd,
        ghw,
        sswd,
        claims: OptimalityClaims {
            griesmer_index: u2,
            almost_griesmer: true,
            distance_optimal: d % q as usize == 0,
        },
    })
}

fn closed_form_t51(q: u64, k: usize, m: usize, budget: u64) -> Result<ClosedFormBundle> {
    let n = rep_count(q, k)? - m;
    let d = checked_pow(q, (k - 1) as u32)? as usize - m;

    // Weight distribution by reflecting the classical MDS distribution of
    // the removed [m, k] code: A_j = A_{q^{k-1}-j}(GRS).
    let mds_d = m - k + 1;
    let qk1 = checked_pow(q, (k - 1) as u32)? as usize;
    let mut wd = WeightTable::new(TableRole::FullDistribution);
    wd.add(0, BigUint::one());
    for w in mds_d..=m {
        wd.add(qk1 - w, mds_weight_count(q, m, k, w)?);
    }

    let mut ghw = Vec::with_capacity(k);
    for r in 1..=k {
        ghw.push(simplex_ghw(q, k, r)? - m);
    }

    // The generator of this code and the GRS matrix partition the simplex
    // columns, so one message subspace V has support weights summing to the
    // constant simplex subcode weight: w(V on C) = W_r - w(V on GRS).
    let field = field_from_order(q)?;
    let grs = LinearCode::from_generator(grs_matrix(&field, k, m)?)?;
    let mut sswd = Vec::with_capacity(k);
    for r in 1..=k {
        let w_total = simplex_ghw(q, k, r)?;
        let grs_table = grs.sswd_bruteforce(r, budget, 1)?;
        let mut table = WeightTable::new(TableRole::Sswd(r));
        for (w, c) in grs_table.pairs() {
            table.add(w_total - w, c.clone());
        }
        sswd.push(table);
    }

    t51_corollary_checks(q, k, m, &sswd)?;

    let claims = if (m as u64) < q {
        OptimalityClaims {
            griesmer_index: 1,
            almost_griesmer: false,
            distance_optimal: true,
        }
    } else {
        OptimalityClaims {
            griesmer_index: 2,
            almost_griesmer: true,
            distance_optimal: d % q as usize == 0,
        }
    };

    Ok(ClosedFormBundle {
        q,
        n,
        k,
        d,
        weight_distribution: wd,
        ghw,
        sswd,
        claims,
    })
}

/// Independent closed multiplicities for the top two SSWDs of the T51
/// family; the bijection-derived tables must match them exactly.
fn t51_corollary_checks(q: u64, k: usize, m: usize, sswd: &[WeightTable]) -> Result<()> {
    let n = rep_count(q, k)? - m;
    let m64 = m as u64;
    let mut top = WeightTable::new(TableRole::Sswd(k - 1));
    top.add(n, BigUint::from(m64));
    top.add(n - 1, BigUint::from(rep_count(q, k)? as u64 - m64));
    if sswd[k - 2] != top {
        return Err(Error::Internal(
            "t51 (k-1)-SSWD disagrees with its closed multiplicities".into(),
        ));
    }

    let w2 = simplex_ghw(q, k, k - 2)?;
    let rep_k1 = rep_count(q, k - 1)? as u64;
    let choose2 = BigUint::from(m64) * BigUint::from(m64 - 1) / BigUint::from(2u32);
    let mut second = WeightTable::new(TableRole::Sswd(k - 2));
    second.add(
        w2 - m,
        gaussian_binomial(k as i64, 2, q) + choose2.clone()
            - BigUint::from(m64) * BigUint::from(rep_k1),
    );
    second.add(
        w2 - m + 1,
        BigUint::from(m64) * BigUint::from(rep_k1 - m64 + 1),
    );
    second.add(w2 - m + 2, choose2);
    if sswd[k - 3] != second {
        return Err(Error::Internal(
            "t51 (k-2)-SSWD disagrees with its closed multiplicities".into(),
        ));
    }
    Ok(())
}

/// Codeword count of weight w in an [m, k] MDS code over GF(q):
/// C(m, w) * sum_{t=0}^{w-d} (-1)^t C(w, t) (q^{w-d+1-t} - 1) with
/// d = m - k + 1.
fn mds_weight_count(q: u64, m: usize, k: usize, w: usize) -> Result<BigUint> {
    let d = m - k + 1;
    if w < d || w > m {
        return Ok(BigUint::zero());
    }
    let mut acc = BigInt::zero();
    for t in 0..=(w - d) {
        let term = BigInt::from(binomial(w as u64, t as u64))
            * BigInt::from(BigUint::from(q).pow((w - d + 1 - t) as u32) - BigUint::one());
        if t % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc *= BigInt::from(binomial(m as u64, w as u64));
    if acc.sign() == Sign::Minus {
        return Err(Error::Internal(format!("negative MDS multiplicity at w={w}")));
    }
    Ok(acc.to_biguint().expect("nonnegative"))
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Support weight of every r-dimensional subcode of the k-dimensional
/// simplex code: (q^k - q^{k-r})/(q - 1).
fn simplex_ghw(q: u64, k: usize, r: usize) -> Result<usize> {
    Ok(((checked_pow(q, k as u32)? - checked_pow(q, (k - r) as u32)?) / (q - 1)) as usize)
}

/// The number of (k-r)-dimensional subspaces meeting the standard flag
/// (u_1, ..., u_s, k) in dimensions (v_1, ..., v_s, k-r).
fn chain_count_extended(
    q: u64,
    u: &[usize],
    v: &[usize],
    k: usize,
    cod: usize,
) -> Result<BigUint> {
    let mut full_u = u.to_vec();
    full_u.push(k);
    let mut full_v = v.to_vec();
    full_v.push(cod);
    let profile = ChainProfile::new(q, full_u, full_v)?;
    Ok(chain_subspace_count(&profile))
}

/// All tuples (v_1, ..., v_s) with v_0 = 0, 0 <= v_i - v_{i-1} <= u_i - u_{i-1}
/// and max(0, u_i - r) <= v_i <= min(u_i, k - r).
fn chain_box_tuples(u: &[usize], r: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(u.len());
    push_chain_tuples(u, r, k, 0, 0, 0, &mut cur, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn push_chain_tuples(
    u: &[usize],
    r: usize,
    k: usize,
    i: usize,
    prev_u: usize,
    prev_v: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if i == u.len() {
        out.push(cur.clone());
        return;
    }
    let ui = u[i];
    let lo = prev_v.max(ui.saturating_sub(r));
    let hi = (prev_v + (ui - prev_u)).min(ui).min(k - r);
    if lo > hi {
        return;
    }
    for vi in lo..=hi {
        cur.push(vi);
        push_chain_tuples(u, r, k, i + 1, ui, vi, cur, out);
        cur.pop();
    }
}

/// Internal consistency of a closed-form bundle: totals, minima, the
/// full-distribution scaling, and monotone weight hierarchy.
fn validate_bundle(spec: &ConstructionSpec, b: &ClosedFormBundle) -> Result<()> {
    let fail = |msg: String| Err(Error::Internal(format!("{spec}: {msg}")));
    if b.ghw.len() != b.k || b.sswd.len() != b.k {
        return fail("bundle must cover r = 1..=k".into());
    }
    if b.weight_distribution.total() != BigUint::from(b.q).pow(b.k as u32) {
        return fail("weight distribution does not total q^k".into());
    }
    if b.d != b.ghw[0] {
        return fail(format!("d = {} but d_1 = {}", b.d, b.ghw[0]));
    }
    let scale = BigUint::from(b.q - 1);
    for (w, c) in b.sswd[0].pairs() {
        if b.weight_distribution.get(w) != c * &scale {
            return fail(format!("A_{w} != (q-1) A_{w}^1"));
        }
    }
    for r in 1..=b.k {
        let table = &b.sswd[r - 1];
        if table.total() != gaussian_binomial(b.k as i64, r as i64, b.q) {
            return fail(format!("r = {r} SSWD does not total [k r]_q"));
        }
        if table.min_positive_weight() != Some(b.ghw[r - 1]) {
            return fail(format!(
                "r = {r} SSWD minimum {:?} differs from d_r = {}",
                table.min_positive_weight(),
                b.ghw[r - 1]
            ));
        }
        if r > 1 && b.ghw[r - 1] <= b.ghw[r - 2] {
            return fail("weight hierarchy is not strictly increasing".into());
        }
        if table.pairs().any(|(w, _)| w > b.n) {
            return fail(format!("r = {r} SSWD has weights above n"));
        }
    }
    Ok(())
}

/// Upper bound on the number of distinct nonzero r-SSWD weights, available
/// for the three shapes with a closed bound: T33 with s = 1, T35 with s = 2,
/// and T42.
pub fn fewness_bound(spec: &ConstructionSpec, r: usize) -> Result<usize> {
    spec.validate()?;
    let k = spec.k();
    if r == 0 || r > k {
        return Err(Error::InvalidSpec(format!("r = {r} outside 1..={k}")));
    }
    match spec {
        ConstructionSpec::T33 { u, .. } if u.len() == 1 => {
            let u1 = u[0];
            Ok((u1 + 1).min(r + 1).min(k - r + 1).min(k - u1 + 1))
        }
        ConstructionSpec::T35 { u, .. } if u.len() == 2 => {
            let u2 = u[1];
            Ok((2 * u2)
                .min(2 * (r + 1))
                .min(2 * (k - r + 1))
                .min(2 * (k - u2 + 1)))
        }
        ConstructionSpec::T42 { u2, u3, .. } => Ok(2 * (u2 * u3)
            .min((r + 1) * (r + 1))
            .min((k - r + 1) * (k - r + 1))),
        _ => Err(Error::InvalidSpec(format!(
            "no closed fewness bound for {spec} (only t33 with s=1, t35 with s=2, t42)"
        ))),
    }
}

/// One disagreement between a closed form and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<usize>,
    pub expected: String,
    pub actual: String,
}

/// A check that could not run, with the reason (typically budget).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub spec: ConstructionSpec,
    pub n: usize,
    pub k: usize,
    pub checks_run: usize,
    pub mismatches: Vec<Mismatch>,
    pub skipped: Vec<Skipped>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "status": if self.ok() { "ok" } else { "mismatch" },
            "spec": SpecJson::from(&self.spec),
            "n": self.n,
            "k": self.k,
            "checks_run": self.checks_run,
            "mismatches": self.mismatches,
            "skipped": self.skipped,
        })
    }
}

/// Builds the code, evaluates the closed forms, and compares them against
/// the oracles for every r in `r_set`.
pub fn verify(
    spec: &ConstructionSpec,
    r_set: &[usize],
    budget: u64,
    threads: usize,
) -> Result<VerificationReport> {
    let bundle = closed_form(spec, budget)?;
    verify_against(spec, &bundle, r_set, budget, threads)
}

/// Like [`verify`] but with an externally supplied bundle, so harness tests
/// can inject corrupted claims and watch them get caught.
pub fn verify_against(
    spec: &ConstructionSpec,
    bundle: &ClosedFormBundle,
    r_set: &[usize],
    budget: u64,
    threads: usize,
) -> Result<VerificationReport> {
    let code = construct(spec)?;
    let k = code.k();
    for &r in r_set {
        if r == 0 || r > k {
            return Err(Error::InvalidSpec(format!("r = {r} outside 1..={k}")));
        }
    }
    let mut rs: Vec<usize> = r_set.to_vec();
    rs.sort_unstable();
    rs.dedup();

    let mut report = VerificationReport {
        spec: spec.clone(),
        n: code.n(),
        k,
        checks_run: 0,
        mismatches: Vec::new(),
        skipped: Vec::new(),
    };

    check_scalar(&mut report, "n", None, bundle.n, code.n());
    check_scalar(&mut report, "k", None, bundle.k, code.k());
    check_scalar(&mut report, "full_support", None, true, code.full_support());

    match code.weight_distribution(budget, threads) {
        Ok(wd) => compare_tables(
            &mut report,
            "weight_distribution",
            None,
            &bundle.weight_distribution,
            &wd,
        ),
        Err(Error::BudgetExceeded { needed, budget }) => report.skipped.push(Skipped {
            check: "weight_distribution".into(),
            r: None,
            reason: format!("needs {needed} items, budget {budget}"),
        }),
        Err(e) => return Err(e),
    }

    for &r in &rs {
        match code.sswd_bruteforce(r, budget, threads) {
            Ok(oracle) => {
                compare_tables(&mut report, "sswd", Some(r), &bundle.sswd[r - 1], &oracle);
                check_scalar(
                    &mut report,
                    "sswd_min_weight",
                    Some(r),
                    bundle.ghw[r - 1],
                    oracle.min_positive_weight().unwrap_or(0),
                );
                if let Ok(bound) = fewness_bound(spec, r) {
                    check_scalar(
                        &mut report,
                        "fewness_bound_holds",
                        Some(r),
                        true,
                        oracle.positive_weight_count() <= bound,
                    );
                }
            }
            Err(Error::BudgetExceeded { needed, budget }) => report.skipped.push(Skipped {
                check: "sswd".into(),
                r: Some(r),
                reason: format!("needs {needed} items, budget {budget}"),
            }),
            Err(e) => return Err(e),
        }
        match code.ghw(r, budget, threads) {
            Ok(dr) => check_scalar(&mut report, "ghw", Some(r), bundle.ghw[r - 1], dr),
            Err(Error::BudgetExceeded { needed, budget }) => report.skipped.push(Skipped {
                check: "ghw".into(),
                r: Some(r),
                reason: format!("needs {needed} items, budget {budget}"),
            }),
            Err(e) => return Err(e),
        }
    }

    match code.griesmer_report(budget, threads) {
        Ok(g) => {
            check_scalar(
                &mut report,
                "griesmer_index",
                None,
                Some(bundle.claims.griesmer_index),
                g.r_griesmer_index,
            );
            check_scalar(
                &mut report,
                "almost_griesmer",
                None,
                bundle.claims.almost_griesmer,
                g.defect(1) == 1,
            );
            if bundle.claims.distance_optimal {
                check_scalar(
                    &mut report,
                    "distance_optimal",
                    None,
                    OptimalityStatus::ProvenOptimal,
                    g.distance_optimal,
                );
            }
            check_scalar(
                &mut report,
                "defects_nonnegative",
                None,
                true,
                g.rows.iter().all(|row| row.defect >= 0),
            );
        }
        Err(Error::BudgetExceeded { needed, budget }) => report.skipped.push(Skipped {
            check: "griesmer_report".into(),
            r: None,
            reason: format!("needs {needed} items, budget {budget}"),
        }),
        Err(e) => return Err(e),
    }

    Ok(report)
}

fn check_scalar<T: PartialEq + std::fmt::Debug>(
    report: &mut VerificationReport,
    check: &str,
    r: Option<usize>,
    expected: T,
    actual: T,
) {
    report.checks_run += 1;
    if expected != actual {
        report.mismatches.push(Mismatch {
            check: check.to_string(),
            r,
            weight: None,
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
        });
    }
}

fn compare_tables(
    report: &mut VerificationReport,
    check: &str,
    r: Option<usize>,
    expected: &WeightTable,
    actual: &WeightTable,
) {
    report.checks_run += 1;
    let weights: std::collections::BTreeSet<usize> = expected
        .pairs()
        .map(|(w, _)| w)
        .chain(actual.pairs().map(|(w, _)| w))
        .collect();
    for w in weights {
        let e = expected.get(w);
        let a = actual.get(w);
        if e != a {
            report.mismatches.push(Mismatch {
                check: check.to_string(),
                r,
                weight: Some(w),
                expected: e.to_string(),
                actual: a.to_string(),
            });
        }
    }
}

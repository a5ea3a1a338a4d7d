//! Dense matrices over a finite field: RREF, rank, kernels, canonical
//! enumeration of subspaces and projective points, and the column-membership
//! count used by every weight computation.
//!
//! Subspaces are always represented by their unique reduced-row-echelon
//! basis, so equality of subspaces is equality of matrices.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement, FiniteField};
use crate::qcombinat::gaussian_binomial;

/// Dense row-major matrix over a finite field. Entries are stored as element
/// enumeration indices.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixGF {
    field: FiniteField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

/// JSON shape: `{"field": ..., "rows": 2, "cols": 3, "entries": [[..],[..]]}`
/// with entries given as element enumeration indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: FieldDescriptor,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u64>>,
}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixGF {}x{} over GF({})", self.rows, self.cols, self.field.order())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl MatrixGF {
    pub fn new(field: FiniteField, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        let q = field.order();
        if let Some(&bad) = entries.iter().find(|&&x| x >= q) {
            return Err(Error::ElementOutOfRange {
                index: bad,
                order: q,
            });
        }
        Ok(MatrixGF {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(field: FiniteField, rows: usize, cols: usize) -> Self {
        MatrixGF {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FiniteField, k: usize) -> Self {
        let mut m = Self::zero(field, k, k);
        for i in 0..k {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: FiniteField, rows: Vec<Vec<u64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn from_columns(field: FiniteField, k: usize, cols: &[Vec<u64>]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != k) {
            return Err(Error::DimensionMismatch(format!(
                "every column must have length {k}"
            )));
        }
        let mut m = Self::zero(field, k, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m.validate_entries()?;
        Ok(m)
    }

    fn validate_entries(&self) -> Result<()> {
        let q = self.field.order();
        if let Some(&bad) = self.entries.iter().find(|&&x| x >= q) {
            return Err(Error::ElementOutOfRange {
                index: bad,
                order: q,
            });
        }
        Ok(())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn get_element(&self, r: usize, c: usize) -> FieldElement {
        self.field.element(self.get(r, c)).expect("entry in range")
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: u64) {
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, self.field.mul_idx(v, factor));
        }
    }

    /// row dst -= coef * row src
    fn row_sub_scaled(&mut self, dst: usize, src: usize, coef: u64) {
        for c in 0..self.cols {
            let s = self.field.mul_idx(coef, self.get(src, c));
            let v = self.field.sub_idx(self.get(dst, c), s);
            self.set(dst, c, v);
        }
    }

    pub fn matmul(&self, other: &MatrixGF) -> Result<MatrixGF> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = MatrixGF::zero(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add_idx(out.get(i, j), f.mul_idx(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form, with the rank and the pivot columns.
    pub fn rref(&self) -> (MatrixGF, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(sel) = (pr..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(sel, pr);
            let inv = m.field.inv_idx(m.get(pr, c)).expect("pivot nonzero");
            m.scale_row(pr, inv);
            for r in 0..m.rows {
                if r != pr {
                    let coef = m.get(r, c);
                    if coef != 0 {
                        m.row_sub_scaled(r, pr, coef);
                    }
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pr, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// An RREF basis of the right null space {x : self . x^T = 0}, one basis
    /// vector per row. The row count is cols - rank.
    pub fn kernel_basis(&self) -> MatrixGF {
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let f = &self.field;
        let mut entries = Vec::with_capacity(free.len() * self.cols);
        for &fc in &free {
            let mut x = vec![0u64; self.cols];
            x[fc] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = f.neg_idx(r.get(i, fc));
            }
            entries.extend(x);
        }
        let stacked = MatrixGF::new(self.field.clone(), free.len(), self.cols, entries)
            .expect("kernel rows");
        let (canon, krank, _) = stacked.rref();
        debug_assert_eq!(krank, self.cols - rank);
        canon
    }
}

impl From<&MatrixGF> for MatrixJson {
    fn from(m: &MatrixGF) -> Self {
        MatrixJson {
            field: m.field.descriptor(),
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows).map(|r| m.row(r).to_vec()).collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for MatrixGF {
    type Error = Error;

    fn try_from(j: &MatrixJson) -> Result<MatrixGF> {
        let field = FiniteField::from_descriptor(&j.field)?;
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::InvalidInput(
                "entry grid does not match declared dimensions".into(),
            ));
        }
        MatrixGF::from_rows(field, j.entries.clone())
    }
}

/// Canonical (RREF) basis of an r-dimensional subspace of the row space
/// F_q^k. Two values represent the same subspace iff they are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceBasis {
    basis: MatrixGF,
    pivot_cols: Vec<usize>,
    ambient: usize,
    dim: usize,
}

impl SubspaceBasis {
    /// Canonicalizes the row space of an arbitrary spanning matrix.
    pub fn from_spanning(m: &MatrixGF) -> Self {
        let (r, rank, pivots) = m.rref();
        let mut entries = Vec::with_capacity(rank * m.cols());
        for i in 0..rank {
            entries.extend_from_slice(r.row(i));
        }
        let basis =
            MatrixGF::new(m.field().clone(), rank, m.cols(), entries).expect("rref rows");
        SubspaceBasis {
            basis,
            pivot_cols: pivots,
            ambient: m.cols(),
            dim: rank,
        }
    }

    /// Trusted constructor for matrices already in RREF with the given pivots.
    fn from_rref_unchecked(basis: MatrixGF, pivot_cols: Vec<usize>) -> Self {
        let ambient = basis.cols();
        let dim = basis.rows();
        SubspaceBasis {
            basis,
            pivot_cols,
            ambient,
            dim,
        }
    }

    pub fn basis(&self) -> &MatrixGF {
        &self.basis
    }

    pub fn field(&self) -> &FiniteField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// The orthogonal complement {x : b . x = 0 for every basis row b}.
    pub fn orthogonal_complement(&self) -> SubspaceBasis {
        if self.dim == 0 {
            return SubspaceBasis::from_spanning(&MatrixGF::identity(
                self.field().clone(),
                self.ambient,
            ));
        }
        SubspaceBasis::from_spanning(&self.basis.kernel_basis())
    }

    /// Membership by elimination against the RREF basis.
    pub fn contains(&self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let f = self.field();
        let mut x = v.to_vec();
        for (i, &p) in self.pivot_cols.iter().enumerate() {
            let coef = x[p];
            if coef != 0 {
                for c in p..self.ambient {
                    let s = f.mul_idx(coef, self.basis.get(i, c));
                    x[c] = f.sub_idx(x[c], s);
                }
            }
        }
        x.iter().all(|&c| c == 0)
    }

    /// All q^dim vectors of the subspace.
    pub fn member_vectors(&self) -> Vec<Vec<u64>> {
        let f = self.field();
        let q = f.order();
        let mut out = Vec::new();
        let mut coeffs = vec![0u64; self.dim];
        loop {
            let mut v = vec![0u64; self.ambient];
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for j in 0..self.ambient {
                        v[j] = f.add_idx(v[j], f.mul_idx(c, self.basis.get(i, j)));
                    }
                }
            }
            out.push(v);
            let mut pos = 0;
            loop {
                if pos == self.dim {
                    return out;
                }
                coeffs[pos] += 1;
                if coeffs[pos] < q {
                    break;
                }
                coeffs[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// Number of member vectors below which membership queries go through a
/// hash set instead of per-column elimination.
const HASH_STRATEGY_MAX_VECTORS: u64 = 4096;

enum MembershipStrategy {
    Hash(HashSet<Vec<u64>>),
    Eliminate,
}

/// Answers many "is this column in the subspace" queries for one subspace.
pub struct MembershipTester<'a> {
    subspace: &'a SubspaceBasis,
    strategy: MembershipStrategy,
}

impl<'a> MembershipTester<'a> {
    pub fn new(subspace: &'a SubspaceBasis) -> Self {
        let q = subspace.field().order();
        let small = q
            .checked_pow(subspace.dim() as u32)
            .is_some_and(|n| n <= HASH_STRATEGY_MAX_VECTORS);
        let strategy = if small {
            MembershipStrategy::Hash(subspace.member_vectors().into_iter().collect())
        } else {
            MembershipStrategy::Eliminate
        };
        MembershipTester {
            subspace,
            strategy,
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        match &self.strategy {
            MembershipStrategy::Hash(set) => set.contains(v),
            MembershipStrategy::Eliminate => self.subspace.contains(v),
        }
    }
}

/// m_G(V): the number of columns of `g` that lie in the subspace `v`.
pub fn membership_count(g: &MatrixGF, v: &SubspaceBasis) -> Result<usize> {
    if g.rows() != v.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but the subspace lives in dimension {}",
            g.rows(),
            v.ambient_dim()
        )));
    }
    let tester = MembershipTester::new(v);
    let mut count = 0;
    let mut col = vec![0u64; g.rows()];
    for c in 0..g.cols() {
        for r in 0..g.rows() {
            col[r] = g.get(r, c);
        }
        if tester.contains(&col) {
            count += 1;
        }
    }
    Ok(count)
}

/// One representative per 1-dimensional subspace of F_q^k, each normalized so
/// that its last nonzero coordinate is 1. Points are grouped by the position
/// of that coordinate in ascending order; inside a group the earlier
/// coordinates run through a base-q counter with the first coordinate varying
/// fastest.
pub fn projective_points(field: &FiniteField, k: usize) -> Result<Vec<Vec<u64>>> {
    let q = field.order();
    let mut out = Vec::new();
    for t in 0..k {
        let block = q
            .checked_pow(t as u32)
            .ok_or_else(|| Error::Overflow(format!("q^{t} points in one block")))?;
        for j in 0..block {
            let mut v = vec![0u64; k];
            let mut rest = j;
            for coord in v.iter_mut().take(t) {
                *coord = rest % q;
                rest /= q;
            }
            v[t] = 1;
            out.push(v);
        }
    }
    Ok(out)
}

/// Streams every r-dimensional subspace of F_q^k exactly once as its
/// canonical RREF basis.
///
/// Order: pivot-column sets in lexicographic order, and inside one pivot set
/// the free entries run through a base-q counter (row-major slot order, first
/// slot varying fastest). The order is what makes disjoint index ranges of
/// one enumeration safe to process concurrently.
pub fn enumerate_subspaces(field: &FiniteField, k: usize, r: usize) -> Result<SubspaceIter> {
    if r > k {
        return Err(Error::DimensionMismatch(format!(
            "subspace dimension {r} exceeds ambient dimension {k}"
        )));
    }
    Ok(SubspaceIter::new(field.clone(), k, r))
}

/// The number of r-dimensional subspaces of F_q^k.
pub fn subspace_count(q: u64, k: usize, r: usize) -> BigUint {
    gaussian_binomial(k as i64, r as i64, q)
}

pub struct SubspaceIter {
    field: FiniteField,
    k: usize,
    r: usize,
    q: u64,
    /// Current pivot columns, None once exhausted.
    combo: Option<Vec<usize>>,
    /// Free entry slots (row, col) for the current pivot set, in scan order.
    slots: Vec<(usize, usize)>,
    /// Base-q odometer over the slots; digits[0] varies fastest.
    digits: Vec<u64>,
}

impl SubspaceIter {
    fn new(field: FiniteField, k: usize, r: usize) -> Self {
        let q = field.order();
        let combo: Vec<usize> = (0..r).collect();
        let mut it = SubspaceIter {
            field,
            k,
            r,
            q,
            combo: Some(combo),
            slots: Vec::new(),
            digits: Vec::new(),
        };
        it.rebuild_slots();
        it
    }

    fn rebuild_slots(&mut self) {
        self.slots.clear();
        if let Some(combo) = &self.combo {
            for (i, &p) in combo.iter().enumerate() {
                for c in p + 1..self.k {
                    if !combo.contains(&c) {
                        self.slots.push((i, c));
                    }
                }
            }
        }
        self.digits = vec![0; self.slots.len()];
    }

    fn advance_combo(&mut self) {
        let Some(combo) = &mut self.combo else {
            return;
        };
        if self.r == 0 {
            self.combo = None;
        } else {
            // Lexicographically next r-combination of 0..k.
            let mut i = self.r;
            loop {
                if i == 0 {
                    self.combo = None;
                    break;
                }
                i -= 1;
                if combo[i] < self.k - self.r + i {
                    combo[i] += 1;
                    for j in i + 1..self.r {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        self.rebuild_slots();
    }

    fn bump(&mut self) {
        let mut pos = 0;
        loop {
            if pos == self.digits.len() {
                self.advance_combo();
                return;
            }
            self.digits[pos] += 1;
            if self.digits[pos] < self.q {
                return;
            }
            self.digits[pos] = 0;
            pos += 1;
        }
    }

    /// Skips the first `n` subspaces. Must be called before any iteration.
    pub fn seek(&mut self, n: u64) {
        debug_assert!(self.digits.iter().all(|&d| d == 0));
        let mut remaining = n;
        while self.combo.is_some() {
            let block = BigUint::from(self.q).pow(self.slots.len() as u32);
            if BigUint::from(remaining) < block {
                let mut rest = remaining;
                for d in self.digits.iter_mut() {
                    *d = rest % self.q;
                    rest /= self.q;
                }
                return;
            }
            remaining -= block.to_u64().expect("block smaller than remaining u64");
            self.advance_combo();
        }
    }

    fn current(&self) -> SubspaceBasis {
        let combo = self.combo.as_ref().expect("iterator not exhausted");
        let mut m = MatrixGF::zero(self.field.clone(), self.r, self.k);
        for (i, &p) in combo.iter().enumerate() {
            m.set(i, p, 1);
        }
        for (slot, &(i, c)) in self.slots.iter().enumerate() {
            m.set(i, c, self.digits[slot]);
        }
        SubspaceBasis::from_rref_unchecked(m, combo.clone())
    }
}

impl Iterator for SubspaceIter {
    type Item = SubspaceBasis;

    fn next(&mut self) -> Option<SubspaceBasis> {
        self.combo.as_ref()?;
        let basis = self.current();
        self.bump();
        Some(basis)
    }
}

//! The oracle layer: linear codes as generator matrices, exact weight
//! distributions, subcode support weight distributions (SSWDs), generalized
//! Hamming weights and Griesmer defects, all by exhaustive enumeration.
//!
//! Every enumerating operation takes an explicit budget (the number of
//! subspaces or codewords it is allowed to touch) and fails hard when the
//! budget is too small; nothing is ever sampled. Enumerations can be split
//! across threads; tallies merge by addition, so the result is identical for
//! any thread count.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FiniteField};
use crate::linalg::{
    enumerate_subspaces, membership_count, subspace_count, MatrixGF, MatrixJson, SubspaceBasis,
};
use crate::qcombinat::BigCount;

/// Default enumeration budget for direct library use.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// What a [`WeightTable`] tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableRole {
    /// Codeword weights; includes weight 0 with multiplicity 1.
    FullDistribution,
    /// Support weights of the r-dimensional subcodes.
    Sswd(usize),
}

/// Exact map from weight to multiplicity. Zero multiplicities are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    role: TableRole,
    entries: BTreeMap<usize, BigCount>,
}

impl WeightTable {
    pub fn new(role: TableRole) -> Self {
        WeightTable {
            role,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I, C>(role: TableRole, pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigCount>,
    {
        let mut t = Self::new(role);
        for (w, c) in pairs {
            t.add(w, c.into());
        }
        t
    }

    pub fn role(&self) -> TableRole {
        self.role
    }

    pub fn add(&mut self, weight: usize, count: BigCount) {
        if !count.is_zero() {
            *self.entries.entry(weight).or_insert_with(BigUint::zero) += count;
        }
    }

    pub fn get(&self, weight: usize) -> BigCount {
        self.entries.get(&weight).cloned().unwrap_or_default()
    }

    /// Weight/multiplicity pairs in ascending weight order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, &BigCount)> {
        self.entries.iter().map(|(&w, c)| (w, c))
    }

    pub fn total(&self) -> BigCount {
        self.entries.values().sum()
    }

    /// Smallest weight >= 1 with nonzero multiplicity.
    pub fn min_positive_weight(&self) -> Option<usize> {
        self.entries.keys().find(|&&w| w > 0).copied()
    }

    /// Number of distinct weights >= 1 with nonzero multiplicity.
    pub fn positive_weight_count(&self) -> usize {
        self.entries.keys().filter(|&&w| w > 0).count()
    }
}

/// JSON shape: `{"role":"sswd","r":2,"entries":[[15,"16"],...]}` with
/// multiplicities as decimal strings, sorted by weight.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightTableJson {
    pub role: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub entries: Vec<(usize, String)>,
}

impl From<&WeightTable> for WeightTableJson {
    fn from(t: &WeightTable) -> Self {
        let (role, r) = match t.role {
            TableRole::FullDistribution => ("full_distribution".to_string(), None),
            TableRole::Sswd(r) => ("sswd".to_string(), Some(r)),
        };
        WeightTableJson {
            role,
            r,
            entries: t.pairs().map(|(w, c)| (w, c.to_string())).collect(),
        }
    }
}

impl TryFrom<&WeightTableJson> for WeightTable {
    type Error = Error;

    fn try_from(j: &WeightTableJson) -> Result<WeightTable> {
        let role = match (j.role.as_str(), j.r) {
            ("full_distribution", None) => TableRole::FullDistribution,
            ("sswd", Some(r)) => TableRole::Sswd(r),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "bad weight table role {:?} with r {:?}",
                    j.role, j.r
                )))
            }
        };
        let mut t = WeightTable::new(role);
        for (w, c) in &j.entries {
            let count = c
                .parse::<BigUint>()
                .map_err(|_| Error::InvalidInput(format!("bad multiplicity {c:?}")))?;
            t.add(*w, count);
        }
        Ok(t)
    }
}

/// A linear [n, k]_q code given by a full-row-rank generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: MatrixGF,
    n: usize,
    k: usize,
    full_support: bool,
}

/// JSON shape: `{"field": ..., "n": 20, "k": 4, "generator": <matrix>}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: FieldDescriptor,
    pub n: usize,
    pub k: usize,
    pub generator: MatrixJson,
}

impl LinearCode {
    /// Wraps a generator matrix, rejecting rank-deficient ones.
    pub fn from_generator(gen: MatrixGF) -> Result<Self> {
        let k = gen.rows();
        let n = gen.cols();
        if k == 0 || n == 0 {
            return Err(Error::InvalidInput("empty generator matrix".into()));
        }
        let rank = gen.rank();
        if rank < k {
            return Err(Error::RankDeficient { rank, rows: k });
        }
        let full_support =
            (0..n).all(|c| (0..k).any(|r| gen.get(r, c) != 0));
        Ok(LinearCode {
            gen,
            n,
            k,
            full_support,
        })
    }

    pub fn generator(&self) -> &MatrixGF {
        &self.gen
    }

    pub fn field(&self) -> &FiniteField {
        self.gen.field()
    }

    pub fn q(&self) -> u64 {
        self.gen.field().order()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// True iff no generator column is zero, i.e. every coordinate carries
    /// some codeword support.
    pub fn full_support(&self) -> bool {
        self.full_support
    }

    /// Support weight of the subcode {yG : y in V}: n minus the number of
    /// generator columns lying in the orthogonal complement of V.
    pub fn subcode_support_weight(&self, v: &SubspaceBasis) -> Result<usize> {
        if v.ambient_dim() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "subspace lives in dimension {} but the message space is {}",
                v.ambient_dim(),
                self.k
            )));
        }
        let perp = v.orthogonal_complement();
        Ok(self.n - membership_count(&self.gen, &perp)?)
    }

    /// Independent route to the same quantity: the support of a subcode is
    /// the union of the supports of any basis, so count the nonzero columns
    /// of (basis of V) * G.
    pub fn support_weight_direct(&self, v: &SubspaceBasis) -> Result<usize> {
        if v.ambient_dim() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "subspace lives in dimension {} but the message space is {}",
                v.ambient_dim(),
                self.k
            )));
        }
        if v.dim() == 0 {
            return Ok(0);
        }
        let prod = v.basis().matmul(&self.gen)?;
        Ok((0..prod.cols())
            .filter(|&c| (0..prod.rows()).any(|r| prod.get(r, c) != 0))
            .count())
    }

    /// Exact weight distribution by walking all q^k codewords.
    pub fn weight_distribution_exhaustive(&self, budget: u64) -> Result<WeightTable> {
        let q = self.q();
        let words = BigUint::from(q).pow(self.k as u32);
        check_budget(&words, budget)?;
        let f = self.field().clone();
        // scaled[i][c] = c * row_i of the generator.
        let scaled: Vec<Vec<Vec<u64>>> = (0..self.k)
            .map(|i| {
                (0..q)
                    .map(|c| self.gen.row(i).iter().map(|&x| f.mul_idx(c, x)).collect())
                    .collect()
            })
            .collect();
        let mut tally: HashMap<usize, u64> = HashMap::new();
        let mut bufs: Vec<Vec<u64>> = vec![vec![0u64; self.n]; self.k + 1];
        walk_messages(&f, q, &scaled, &mut bufs, 0, &mut tally);
        let mut table = WeightTable::new(TableRole::FullDistribution);
        for (w, c) in tally {
            table.add(w, BigUint::from(c));
        }
        Ok(table)
    }

    /// Exact weight distribution through the 1-dimensional SSWD:
    /// A_0 = 1 and A_j = (q - 1) A_j^1.
    pub fn weight_distribution(&self, budget: u64, threads: usize) -> Result<WeightTable> {
        let one_sswd = self.sswd_bruteforce(1, budget, threads)?;
        let mut table = WeightTable::new(TableRole::FullDistribution);
        table.add(0, BigUint::from(1u32));
        let scale = BigUint::from(self.q() - 1);
        for (w, c) in one_sswd.pairs() {
            table.add(w, c * &scale);
        }
        Ok(table)
    }

    /// Exact r-SSWD by enumerating every r-dimensional subspace of the
    /// message space and tallying subcode support weights.
    pub fn sswd_bruteforce(&self, r: usize, budget: u64, threads: usize) -> Result<WeightTable> {
        if r > self.k {
            return Err(Error::DimensionMismatch(format!(
                "r = {r} exceeds the code dimension {}",
                self.k
            )));
        }
        let total_big = subspace_count(self.q(), self.k, r);
        check_budget(&total_big, budget)?;
        let total = total_big.to_u64().expect("within budget");
        let tallies = self.fold_subspaces(
            r,
            total,
            threads,
            HashMap::<usize, u64>::new,
            |tally, sub| {
                let w = self.subcode_support_weight(&sub).expect("same ambient dim");
                *tally.entry(w).or_insert(0) += 1;
            },
        );
        let mut table = WeightTable::new(TableRole::Sswd(r));
        for tally in tallies {
            for (w, c) in tally {
                table.add(w, BigUint::from(c));
            }
        }
        Ok(table)
    }

    /// The r-th generalized Hamming weight: n minus the largest number of
    /// generator columns any (k-r)-dimensional subspace can capture.
    pub fn ghw(&self, r: usize, budget: u64, threads: usize) -> Result<usize> {
        if r == 0 || r > self.k {
            return Err(Error::DimensionMismatch(format!(
                "r = {r} outside 1..={}",
                self.k
            )));
        }
        let cod = self.k - r;
        let total_big = subspace_count(self.q(), self.k, cod);
        check_budget(&total_big, budget)?;
        let total = total_big.to_u64().expect("within budget");
        let maxima = self.fold_subspaces(
            cod,
            total,
            threads,
            || 0usize,
            |best, sub| {
                let m = membership_count(&self.gen, &sub).expect("same ambient dim");
                *best = (*best).max(m);
            },
        );
        let best = maxima.into_iter().max().unwrap_or(0);
        Ok(self.n - best)
    }

    /// All generalized Hamming weights d_1, ..., d_k.
    pub fn ghw_all(&self, budget: u64, threads: usize) -> Result<Vec<usize>> {
        (1..=self.k).map(|r| self.ghw(r, budget, threads)).collect()
    }

    /// Griesmer defects for every r, the smallest r meeting the bound with
    /// equality, and the sufficient distance-optimality test.
    pub fn griesmer_report(&self, budget: u64, threads: usize) -> Result<GriesmerReport> {
        let hierarchy = self.ghw_all(budget, threads)?;
        Ok(GriesmerReport::from_hierarchy(
            self.q(),
            self.n,
            self.k,
            &hierarchy,
            self.full_support,
        ))
    }

    /// The same code with columns permuted and scaled:
    /// new column j = scalars[j] * old column perm[j].
    pub fn monomial_transform(&self, perm: &[usize], scalars: &[u64]) -> Result<LinearCode> {
        if perm.len() != self.n || scalars.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "need {} column indices and scalars",
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::InvalidInput("not a permutation".into()));
            }
            seen[p] = true;
        }
        if scalars.iter().any(|&s| s == 0 || s >= self.q()) {
            return Err(Error::InvalidInput("scalars must be nonzero".into()));
        }
        let f = self.field();
        let mut gen = MatrixGF::zero(f.clone(), self.k, self.n);
        for j in 0..self.n {
            for i in 0..self.k {
                gen.set(i, j, f.mul_idx(scalars[j], self.gen.get(i, perm[j])));
            }
        }
        LinearCode::from_generator(gen)
    }

    /// Runs `fold` over every r-dimensional subspace, split into contiguous
    /// index chunks across threads. Each chunk returns its own accumulator;
    /// callers must merge them with an order-independent operation.
    fn fold_subspaces<T, I, F>(
        &self,
        r: usize,
        total: u64,
        threads: usize,
        init: I,
        fold: F,
    ) -> Vec<T>
    where
        T: Send,
        I: Fn() -> T + Sync,
        F: Fn(&mut T, SubspaceBasis) + Sync,
    {
        let threads = threads.max(1).min(total.max(1) as usize);
        let chunk = total.div_ceil(threads as u64);
        let field = self.field();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let start = t as u64 * chunk;
                    let len = chunk.min(total.saturating_sub(start));
                    let (init, fold) = (&init, &fold);
                    scope.spawn(move || {
                        let mut acc = init();
                        if len > 0 {
                            let mut it =
                                enumerate_subspaces(field, self.k, r).expect("r <= k");
                            it.seek(start);
                            for sub in it.take(len as usize) {
                                fold(&mut acc, sub);
                            }
                        }
                        acc
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration thread"))
                .collect()
        })
    }
}

fn walk_messages(
    f: &FiniteField,
    q: u64,
    scaled: &[Vec<Vec<u64>>],
    bufs: &mut [Vec<u64>],
    level: usize,
    tally: &mut HashMap<usize, u64>,
) {
    if level == scaled.len() {
        let w = bufs[level].iter().filter(|&&x| x != 0).count();
        *tally.entry(w).or_insert(0) += 1;
        return;
    }
    for c in 0..q {
        let (head, tail) = bufs.split_at_mut(level + 1);
        let cur = &head[level];
        let next = &mut tail[0];
        let row = &scaled[level][c as usize];
        for (dst, (&a, &b)) in next.iter_mut().zip(cur.iter().zip(row)) {
            *dst = f.add_idx(a, b);
        }
        walk_messages(f, q, scaled, bufs, level + 1, tally);
    }
}

fn check_budget(needed: &BigUint, budget: u64) -> Result<()> {
    if *needed > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.clone(),
            budget,
        });
    }
    Ok(())
}

impl From<&LinearCode> for CodeJson {
    fn from(c: &LinearCode) -> Self {
        CodeJson {
            field: c.field().descriptor(),
            n: c.n,
            k: c.k,
            generator: MatrixJson::from(&c.gen),
        }
    }
}

impl TryFrom<&CodeJson> for LinearCode {
    type Error = Error;

    fn try_from(j: &CodeJson) -> Result<LinearCode> {
        let gen = MatrixGF::try_from(&j.generator)?;
        let code = LinearCode::from_generator(gen)?;
        if code.n != j.n || code.k != j.k {
            return Err(Error::InvalidInput(format!(
                "declared [{},{}] but the generator is [{},{}]",
                j.n, j.k, code.n, code.k
            )));
        }
        Ok(code)
    }
}

/// Tri-state optimality verdict: the library only ever proves optimality,
/// never non-optimality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimalityStatus {
    ProvenOptimal,
    NotDetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GriesmerRow {
    pub r: usize,
    pub d_r: usize,
    pub griesmer_sum: u64,
    pub defect: i64,
}

/// Per-r Griesmer data for a code, plus the smallest r meeting the bound
/// with equality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GriesmerReport {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub rows: Vec<GriesmerRow>,
    pub r_griesmer_index: Option<usize>,
    pub distance_optimal: OptimalityStatus,
    pub full_support: bool,
}

impl GriesmerReport {
    /// Builds the report from a known weight hierarchy d_1, ..., d_k.
    pub fn from_hierarchy(
        q: u64,
        n: usize,
        k: usize,
        hierarchy: &[usize],
        full_support: bool,
    ) -> Self {
        assert_eq!(hierarchy.len(), k, "need one d_r per 1..=k");
        let rows: Vec<GriesmerRow> = hierarchy
            .iter()
            .enumerate()
            .map(|(i, &d_r)| {
                let r = i + 1;
                let sum = griesmer_sum(q, k, r, d_r);
                GriesmerRow {
                    r,
                    d_r,
                    griesmer_sum: sum,
                    defect: n as i64 - sum as i64,
                }
            })
            .collect();
        let r_griesmer_index = rows.iter().find(|row| row.defect == 0).map(|row| row.r);
        let distance_optimal = if proves_distance_optimal(q, n, k, hierarchy[0]) {
            OptimalityStatus::ProvenOptimal
        } else {
            OptimalityStatus::NotDetermined
        };
        GriesmerReport {
            q,
            n,
            k,
            rows,
            r_griesmer_index,
            distance_optimal,
            full_support,
        }
    }

    pub fn defect(&self, r: usize) -> i64 {
        self.rows[r - 1].defect
    }
}

/// d_r + sum_{i=1}^{k-r} ceil((q-1) d_r / (q^i (q^r - 1))).
pub fn griesmer_sum(q: u64, k: usize, r: usize, d_r: usize) -> u64 {
    let num = (q as u128 - 1) * d_r as u128;
    let qr_minus_1 = pow_saturating(q as u128, r as u32) - 1;
    let mut sum = d_r as u128;
    let mut den = qr_minus_1;
    for _ in 1..=(k - r) {
        den = den.saturating_mul(q as u128);
        sum += ceil_div(num, den);
    }
    sum.try_into().expect("griesmer sum fits u64")
}

/// True iff no [n, k, d+1]_q code can satisfy the length form of the
/// Griesmer bound, which proves an [n, k, d]_q code distance-optimal.
pub fn proves_distance_optimal(q: u64, n: usize, k: usize, d: usize) -> bool {
    let target = (d + 1) as u128;
    let mut sum: u128 = 0;
    let mut den: u128 = 1;
    for _ in 0..k {
        sum += ceil_div(target, den);
        den = den.saturating_mul(q as u128);
    }
    sum > n as u128
}

fn ceil_div(num: u128, den: u128) -> u128 {
    if num == 0 {
        0
    } else if den > num {
        1
    } else {
        (num + den - 1) / den
    }
}

fn pow_saturating(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

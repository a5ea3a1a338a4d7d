//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Criteria 1-4 reproduce the four bundled reference tables exactly from
//! frozen interior data. Criterion 5 sweeps >= 40 specs across all four
//! families and demands exact closed-form/oracle agreement. Criteria 6-10
//! are property hardening: counting-formula oracles, per-code invariants,
//! fewness bounds, exhaustive field axioms, and byte determinism.
//!
//! Run with `cargo test -p ghwcodes --test acceptance -- --nocapture` to see
//! the per-criterion PASS lines and timings.

use std::collections::HashMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ghwcodes::codes::{GriesmerReport, LinearCode, OptimalityStatus, TableRole, WeightTable};
use ghwcodes::constructions::{
    closed_form, construct, fewness_bound, verify, ClosedFormBundle, ConstructionSpec,
};
use ghwcodes::field::field_from_order;
use ghwcodes::linalg::{enumerate_subspaces, subspace_count, MatrixGF, SubspaceBasis};
use ghwcodes::qcombinat::{
    chain_subspace_count, gaussian_binomial, intersection_count, ChainProfile,
    IntersectionConfig,
};

const BUDGET: u64 = 10_000_000;
const THREADS: usize = 2;

fn frozen(r: usize, pairs: &[(usize, u64)]) -> WeightTable {
    WeightTable::from_pairs(TableRole::Sswd(r), pairs.iter().map(|&(w, c)| (w, c)))
}

/// (label, spec, printed r values, frozen r-SSWDs) for one reference table.
type TableData = Vec<(
    &'static str,
    ConstructionSpec,
    Vec<usize>,
    Vec<WeightTable>,
)>;

fn reference_table(idx: u8) -> TableData {
    match idx {
        1 => vec![
            (
                "C1",
                ConstructionSpec::T33 {
                    q: 2,
                    k: 4,
                    t: 2,
                    u: vec![2, 3],
                },
                vec![1, 2, 3],
                vec![
                    frozen(1, &[(10, 12), (12, 2), (16, 1)]),
                    frozen(2, &[(15, 16), (16, 12), (18, 6), (20, 1)]),
                    frozen(3, &[(18, 8), (19, 4), (20, 3)]),
                ],
            ),
            (
                "C2",
                ConstructionSpec::T33 {
                    q: 2,
                    k: 4,
                    t: 3,
                    u: vec![2, 3],
                },
                vec![1, 2, 3],
                vec![
                    frozen(1, &[(18, 12), (20, 2), (24, 1)]),
                    frozen(2, &[(27, 16), (28, 12), (30, 6), (32, 1)]),
                    frozen(3, &[(32, 8), (33, 4), (34, 3)]),
                ],
            ),
        ],
        2 => vec![
            (
                "C1",
                ConstructionSpec::T35 {
                    q: 3,
                    k: 4,
                    t: 1,
                    u: vec![1, 2],
                },
                vec![1, 2, 3],
                vec![
                    frozen(1, &[(24, 9), (25, 27), (27, 4)]),
                    frozen(2, &[(33, 93), (34, 36), (36, 1)]),
                    frozen(3, &[(36, 37), (37, 3)]),
                ],
            ),
            (
                "C2",
                ConstructionSpec::T35 {
                    q: 3,
                    k: 4,
                    t: 1,
                    u: vec![1, 3],
                },
                vec![1, 2, 3],
                vec![
                    frozen(1, &[(18, 12), (19, 27), (27, 1)]),
                    frozen(2, &[(24, 9), (25, 108), (27, 4), (28, 9)]),
                    frozen(3, &[(27, 28), (28, 12)]),
                ],
            ),
        ],
        3 => vec![
            (
                "C1",
                ConstructionSpec::T42 {
                    q: 2,
                    k: 5,
                    u2: 2,
                    u3: 3,
                },
                vec![1, 2, 3, 4],
                vec![
                    frozen(1, &[(10, 6), (11, 16), (12, 6), (14, 2), (16, 1)]),
                    frozen(
                        2,
                        &[(16, 60), (17, 48), (18, 35), (19, 8), (20, 3), (22, 1)],
                    ),
                    frozen(3, &[(19, 48), (20, 87), (21, 12), (22, 8)]),
                    frozen(4, &[(21, 22), (22, 9)]),
                ],
            ),
            (
                "C2",
                ConstructionSpec::T42 {
                    q: 2,
                    k: 5,
                    u2: 2,
                    u3: 4,
                },
                vec![1, 2, 3, 4],
                vec![
                    // A_6^1 = 7, not 6: the multiplicities must total
                    // [5 1]_2 = 31, and the closed form q^4 - q^3 - q + 1 = 7
                    // agrees with the enumeration oracle.
                    frozen(1, &[(6, 7), (7, 16), (8, 7), (14, 1)]),
                    frozen(2, &[(10, 77), (11, 56), (12, 7), (14, 15)]),
                    frozen(3, &[(12, 91), (13, 28), (14, 36)]),
                    frozen(4, &[(13, 14), (14, 17)]),
                ],
            ),
        ],
        4 => vec![
            (
                "C1",
                ConstructionSpec::T51 { q: 3, k: 3, m: 3 },
                vec![1, 2, 3],
                vec![
                    frozen(1, &[(6, 4), (7, 6), (8, 3)]),
                    frozen(2, &[(9, 10), (10, 3)]),
                    frozen(3, &[(10, 1)]),
                ],
            ),
            (
                "C2",
                ConstructionSpec::T51 { q: 5, k: 4, m: 5 },
                vec![1, 2, 3],
                vec![
                    frozen(1, &[(120, 51), (121, 65), (122, 30), (123, 10)]),
                    frozen(2, &[(145, 661), (146, 135), (147, 10)]),
                    frozen(3, &[(150, 151), (151, 5)]),
                ],
            ),
        ],
        _ => unreachable!(),
    }
}

/// Runs `verify` for every code of one table and checks oracle SSWDs equal
/// the frozen values.
fn reproduce_table(idx: u8, threads: usize) -> Duration {
    let start = Instant::now();
    for (label, spec, rs, frozen_tables) in reference_table(idx) {
        let report = verify(&spec, &rs, BUDGET, threads).unwrap();
        assert!(
            report.ok() && report.skipped.is_empty(),
            "table {idx} {label}: {:?}",
            report.mismatches
        );
        let code = construct(&spec).unwrap();
        for (&r, expect) in rs.iter().zip(&frozen_tables) {
            let got = code.sswd_bruteforce(r, BUDGET, threads).unwrap();
            assert_eq!(got, *expect, "table {idx} {label} r={r}");
        }
    }
    start.elapsed()
}

#[test]
fn c01_table1_reproduction() {
    let elapsed = reproduce_table(1, 1);
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("[PASS] criterion 1: table 1 reproduced exactly in {elapsed:?}");
}

#[test]
fn c02_table2_reproduction() {
    let start = Instant::now();
    reproduce_table(2, 1);
    // Flag checks: defect 1 at r = 1, defect 0 at r = u_2, proven optimal.
    for (label, spec, _, _) in reference_table(2) {
        let code = construct(&spec).unwrap();
        let g = code.griesmer_report(BUDGET, 1).unwrap();
        let u2 = match &spec {
            ConstructionSpec::T35 { u, .. } => u[1],
            _ => unreachable!(),
        };
        assert_eq!(g.defect(1), 1, "{label}");
        assert_eq!(g.defect(u2), 0, "{label}");
        assert_eq!(g.r_griesmer_index, Some(u2), "{label}");
        assert_eq!(g.distance_optimal, OptimalityStatus::ProvenOptimal, "{label}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("[PASS] criterion 2: table 2 reproduced with flags in {elapsed:?}");
}

#[test]
fn c03_table3_reproduction() {
    let elapsed = reproduce_table(3, 1);
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("[PASS] criterion 3: table 3 reproduced exactly in {elapsed:?}");
}

#[test]
fn c04_table4_reproduction() {
    let start = Instant::now();
    reproduce_table(4, 1);
    // Both reference codes have m = q, so they miss the bound by one at
    // r = 1 and meet it at r = 2.
    for (label, spec, _, _) in reference_table(4) {
        let code = construct(&spec).unwrap();
        let g = code.griesmer_report(BUDGET, 1).unwrap();
        assert_eq!(g.defect(1), 1, "{label}");
        assert_eq!(g.defect(2), 0, "{label}");
        assert_eq!(g.r_griesmer_index, Some(2), "{label}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("[PASS] criterion 4: table 4 reproduced with flags in {elapsed:?}");
}

// ---------------------------------------------------------------------------
// The closed-form-versus-oracle sweep shared by criteria 5, 7 and 8.

struct SweepEntry {
    spec: ConstructionSpec,
    code: LinearCode,
    bundle: ClosedFormBundle,
    oracle_wd: WeightTable,
    oracle_sswd: Vec<WeightTable>,
    oracle_ghw: Vec<usize>,
    griesmer: GriesmerReport,
}

struct Sweep {
    entries: Vec<SweepEntry>,
    elapsed: Duration,
}

fn sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let start = Instant::now();
        let entries: Vec<SweepEntry> = sweep_specs()
            .into_iter()
            .map(|spec| {
                let code = construct(&spec).unwrap();
                let bundle = closed_form(&spec, BUDGET).unwrap();
                let k = code.k();
                let oracle_wd = code.weight_distribution(BUDGET, THREADS).unwrap();
                let oracle_sswd: Vec<WeightTable> = (1..=k)
                    .map(|r| code.sswd_bruteforce(r, BUDGET, THREADS).unwrap())
                    .collect();
                let oracle_ghw: Vec<usize> = (1..=k)
                    .map(|r| code.ghw(r, BUDGET, THREADS).unwrap())
                    .collect();
                let griesmer = GriesmerReport::from_hierarchy(
                    code.q(),
                    code.n(),
                    k,
                    &oracle_ghw,
                    code.full_support(),
                );
                SweepEntry {
                    spec,
                    code,
                    bundle,
                    oracle_wd,
                    oracle_sswd,
                    oracle_ghw,
                    griesmer,
                }
            })
            .collect();
        Sweep {
            entries,
            elapsed: start.elapsed(),
        }
    })
}

/// Sweep work estimate: subspaces touched across all r, times the length.
fn sweep_cost(spec: &ConstructionSpec, n: usize) -> f64 {
    let (q, k) = (spec.q(), spec.k());
    let subs: f64 = (0..=k)
        .map(|r| subspace_count(q, k, r).to_f64().unwrap_or(f64::MAX))
        .sum();
    subs * n as f64
}

fn push_if_cheap(out: &mut Vec<ConstructionSpec>, spec: ConstructionSpec) {
    if spec.validate().is_err() {
        return;
    }
    let n = match construct(&spec) {
        Ok(c) => c.n(),
        Err(_) => return,
    };
    if sweep_cost(&spec, n) <= 2.5e7 && !out.contains(&spec) {
        out.push(spec);
    }
}

fn sweep_specs() -> Vec<ConstructionSpec> {
    let mut specs = Vec::new();
    for q in [2u64, 3, 4] {
        for k in 3..=6usize {
            for t in 1..=2usize {
                // Single puncturing at the ends and the middle.
                for u1 in [1, k / 2, k - 1] {
                    push_if_cheap(
                        &mut specs,
                        ConstructionSpec::T33 {
                            q,
                            k,
                            t,
                            u: vec![u1],
                        },
                    );
                }
            }
            // Double puncturings.
            push_if_cheap(
                &mut specs,
                ConstructionSpec::T33 {
                    q,
                    k,
                    t: 2,
                    u: vec![1, k - 1],
                },
            );
            push_if_cheap(
                &mut specs,
                ConstructionSpec::T33 {
                    q,
                    k,
                    t: 2,
                    u: vec![k - 2, k - 1],
                },
            );
            for u2 in 2..k {
                push_if_cheap(
                    &mut specs,
                    ConstructionSpec::T35 {
                        q,
                        k,
                        t: 1,
                        u: vec![1, u2],
                    },
                );
            }
            if k >= 4 {
                push_if_cheap(
                    &mut specs,
                    ConstructionSpec::T35 {
                        q,
                        k,
                        t: 2,
                        u: vec![1, 2, 3],
                    },
                );
                for u2 in 2..k {
                    for u3 in u2 + 1..k {
                        if u2 + u3 <= k + 1 {
                            push_if_cheap(
                                &mut specs,
                                ConstructionSpec::T42 { q, k, u2, u3 },
                            );
                        }
                    }
                }
            }
            if (3..=4).contains(&k) {
                for m in k..=q as usize {
                    push_if_cheap(&mut specs, ConstructionSpec::T51 { q, k, m });
                }
            }
        }
    }
    specs
}

#[test]
fn c05_closed_form_equals_oracle_sweep() {
    let sweep = sweep();
    assert!(
        sweep.elapsed < Duration::from_secs(600),
        "sweep took {:?}",
        sweep.elapsed
    );
    assert!(
        sweep.entries.len() >= 40,
        "only {} specs in the sweep",
        sweep.entries.len()
    );
    for fam in ["T33", "T35", "T42", "T51"] {
        assert!(
            sweep.entries.iter().any(|e| e.spec.family_tag() == fam),
            "family {fam} missing from the sweep"
        );
    }
    assert!(
        sweep.entries.iter().any(|e| e.spec.q() == 4),
        "no extension-field specs in the sweep"
    );
    for e in &sweep.entries {
        assert_eq!(
            e.bundle.weight_distribution, e.oracle_wd,
            "{}: weight distribution",
            e.spec
        );
        assert_eq!(e.bundle.ghw, e.oracle_ghw, "{}: weight hierarchy", e.spec);
        for r in 1..=e.code.k() {
            assert_eq!(
                e.bundle.sswd[r - 1],
                e.oracle_sswd[r - 1],
                "{}: r = {r} SSWD",
                e.spec
            );
        }
    }
    println!(
        "[PASS] criterion 5: closed form == oracle on {} specs in {:?}",
        sweep.entries.len(),
        sweep.elapsed
    );
}

#[test]
fn c06_combinatorics_oracles() {
    let start = Instant::now();

    // Gaussian binomials against full enumeration, wherever the subspace
    // count itself stays enumerable.
    for q in [2u64, 3, 4, 5, 8, 9] {
        let field = field_from_order(q).unwrap();
        for k in 0..=12usize {
            if q.checked_pow(k as u32).is_none_or(|v| v > 1 << 14) {
                continue;
            }
            for r in 0..=k {
                let expected = gaussian_binomial(k as i64, r as i64, q);
                if expected > BigUint::from(200_000u64) {
                    continue;
                }
                let count = enumerate_subspaces(&field, k, r).unwrap().count();
                assert_eq!(
                    BigUint::from(count as u64),
                    expected,
                    "q={q} k={k} r={r}"
                );
            }
        }
    }

    // Chain counts: all flags with s <= 3, u_s <= 5, q in {2, 3}, checked by
    // one profile-tally scan per (u, v_s) and the sum rule.
    for q in [2u64, 3] {
        let field = field_from_order(q).unwrap();
        for u in increasing_lists(5, 3) {
            let s = u.len();
            let ambient = *u.last().unwrap();
            for vs in 0..=ambient {
                let mut tally: HashMap<Vec<usize>, u64> = HashMap::new();
                for sub in enumerate_subspaces(&field, ambient, vs).unwrap() {
                    let profile: Vec<usize> = u
                        .iter()
                        .map(|&ui| prefix_intersection_dim(&sub, ui))
                        .collect();
                    *tally.entry(profile).or_insert(0) += 1;
                }
                let mut covered = BigUint::zero();
                for v in box_lists(&u, vs) {
                    let formula = match ChainProfile::new(q, u.clone(), v.clone()) {
                        Ok(p) => chain_subspace_count(&p),
                        Err(_) => BigUint::zero(),
                    };
                    let counted = tally.get(&v).copied().unwrap_or(0);
                    assert_eq!(
                        formula,
                        BigUint::from(counted),
                        "chain q={q} u={u:?} v={v:?}"
                    );
                    covered += formula;
                }
                assert_eq!(
                    covered,
                    gaussian_binomial(ambient as i64, vs as i64, q),
                    "chain sum rule q={q} u={u:?} vs={vs}"
                );
                assert_eq!(
                    tally.values().sum::<u64>(),
                    gaussian_binomial(ambient as i64, vs as i64, q)
                        .to_u64()
                        .unwrap(),
                    "profile tally total q={q} u={u:?} vs={vs}"
                );
                let _ = s;
            }
        }
    }

    // Intersection counts: every configuration with k <= 6, q in {2, 3},
    // every r, every (v1, v2, v3) box point, plus the sum rule.
    for q in [2u64, 3] {
        let field = field_from_order(q).unwrap();
        for k in 3..=6usize {
            for u1 in 0..=1usize {
                for u2 in u1 + 1..k {
                    for u3 in u2 + 1..k {
                        if u2 + u3 - u1 > k {
                            continue;
                        }
                        let cfg = IntersectionConfig::new(q, u1, u2, u3, k).unwrap();
                        let (c2, c3) = standard_pair_coords(u1, u2, u3, k);
                        let c1: Vec<usize> =
                            c2.iter().copied().filter(|c| c3.contains(c)).collect();
                        assert_eq!(c1.len(), u1);
                        for r in 0..=k {
                            let mut tally: HashMap<(usize, usize, usize), u64> =
                                HashMap::new();
                            for sub in enumerate_subspaces(&field, k, r).unwrap() {
                                let key = (
                                    coord_intersection_dim(&sub, &c1),
                                    coord_intersection_dim(&sub, &c2),
                                    coord_intersection_dim(&sub, &c3),
                                );
                                *tally.entry(key).or_insert(0) += 1;
                            }
                            let mut covered = BigUint::zero();
                            for v1 in 0..=u1 {
                                for v2 in 0..=u2 {
                                    for v3 in 0..=u3 {
                                        let formula =
                                            intersection_count(&cfg, v1, v2, v3, r);
                                        let counted = tally
                                            .get(&(v1, v2, v3))
                                            .copied()
                                            .unwrap_or(0);
                                        assert_eq!(
                                            formula,
                                            BigUint::from(counted),
                                            "M q={q} u=({u1},{u2},{u3},{k}) \
                                             v=({v1},{v2},{v3}) r={r}"
                                        );
                                        covered += formula;
                                    }
                                }
                            }
                            assert_eq!(
                                covered,
                                gaussian_binomial(k as i64, r as i64, q),
                                "M sum rule q={q} u=({u1},{u2},{u3},{k}) r={r}"
                            );
                        }
                    }
                }
            }
        }
    }

    println!(
        "[PASS] criterion 6: combinatorics formulas match enumeration in {:?}",
        start.elapsed()
    );
}

#[test]
fn c07_invariant_suite() {
    let sweep = sweep();
    let start = Instant::now();
    for (idx, e) in sweep.entries.iter().enumerate() {
        let q = e.code.q();
        let k = e.code.k();
        // Totals and the (q-1) scaling law.
        assert_eq!(
            e.oracle_wd.total(),
            BigUint::from(q).pow(k as u32),
            "{}",
            e.spec
        );
        let scale = BigUint::from(q - 1);
        for (w, c) in e.oracle_sswd[0].pairs() {
            assert_eq!(e.oracle_wd.get(w), c * &scale, "{} A_{w}", e.spec);
        }
        for r in 1..=k {
            assert_eq!(
                e.oracle_sswd[r - 1].total(),
                subspace_count(q, k, r),
                "{} r={r}",
                e.spec
            );
            assert_eq!(
                e.oracle_sswd[r - 1].min_positive_weight(),
                Some(e.oracle_ghw[r - 1]),
                "{} r={r}",
                e.spec
            );
        }
        // Strict weight hierarchy and nonnegative defects.
        assert!(
            e.oracle_ghw.windows(2).all(|w| w[0] < w[1]),
            "{}: hierarchy {:?}",
            e.spec,
            e.oracle_ghw
        );
        assert!(
            e.griesmer.rows.iter().all(|row| row.defect >= 0),
            "{}: defects {:?}",
            e.spec,
            e.griesmer.rows
        );

        // Monomial invariance under 100 seeded random transforms.
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE + idx as u64);
        let n = e.code.n();
        let reference_wd = e.code.weight_distribution_exhaustive(BUDGET).unwrap();
        assert_eq!(reference_wd, e.oracle_wd, "{}", e.spec);
        let check_sswd = subspace_count(q, k, 2.min(k))
            .to_u64()
            .is_some_and(|c| c <= 2000);
        for trial in 0..100 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let scalars: Vec<u64> = (0..n).map(|_| rng.gen_range(1..q)).collect();
            let transformed = e.code.monomial_transform(&perm, &scalars).unwrap();
            assert_eq!(
                transformed.weight_distribution_exhaustive(BUDGET).unwrap(),
                reference_wd,
                "{} trial {trial}",
                e.spec
            );
            if trial < 3 && check_sswd {
                let r = 2.min(k);
                assert_eq!(
                    transformed.sswd_bruteforce(r, BUDGET, 1).unwrap(),
                    e.oracle_sswd[r - 1],
                    "{} trial {trial} r={r}",
                    e.spec
                );
            }
        }
    }
    println!(
        "[PASS] criterion 7: invariants hold on {} codes in {:?}",
        sweep.entries.len(),
        start.elapsed()
    );
}

#[test]
fn c08_fewness_bounds() {
    let sweep = sweep();
    let mut applicable = 0;
    for e in &sweep.entries {
        for r in 1..=e.code.k() {
            if let Ok(bound) = fewness_bound(&e.spec, r) {
                applicable += 1;
                let observed = e.oracle_sswd[r - 1].positive_weight_count();
                assert!(
                    observed <= bound,
                    "{} r={r}: {observed} weights exceed bound {bound}",
                    e.spec
                );
            }
        }
    }
    assert!(applicable > 40, "only {applicable} applicable (spec, r) pairs");
    println!("[PASS] criterion 8: fewness bounds hold on {applicable} (spec, r) pairs");
}

#[test]
fn c09_field_axioms_exhaustive() {
    let start = Instant::now();
    let prime_powers: Vec<u64> = (2..=64u64)
        .filter(|&q| field_from_order(q).is_ok())
        .collect();
    assert!(prime_powers.contains(&4));
    assert!(prime_powers.contains(&8));
    assert!(prime_powers.contains(&9));
    assert_eq!(prime_powers.len(), 27);
    for &q in &prime_powers {
        let f = field_from_order(q).unwrap();
        for a in 0..q {
            assert_eq!(f.add_idx(a, 0), a);
            assert_eq!(f.mul_idx(a, 1), a);
            assert_eq!(f.mul_idx(a, 0), 0);
            assert_eq!(f.add_idx(a, f.neg_idx(a)), 0);
            if a != 0 {
                assert_eq!(f.mul_idx(a, f.inv_idx(a).unwrap()), 1, "q={q} a={a}");
                assert_eq!(f.pow_idx(a, q - 1), 1, "q={q} a={a}");
            }
            for b in 0..q {
                assert_eq!(f.add_idx(a, b), f.add_idx(b, a));
                assert_eq!(f.mul_idx(a, b), f.mul_idx(b, a));
                for c in 0..q {
                    assert_eq!(
                        f.add_idx(f.add_idx(a, b), c),
                        f.add_idx(a, f.add_idx(b, c))
                    );
                    assert_eq!(
                        f.mul_idx(f.mul_idx(a, b), c),
                        f.mul_idx(a, f.mul_idx(b, c))
                    );
                    assert_eq!(
                        f.mul_idx(a, f.add_idx(b, c)),
                        f.add_idx(f.mul_idx(a, b), f.mul_idx(a, c))
                    );
                }
            }
        }
        // The enumeration is a stable bijection.
        let indices: Vec<u64> = f.elements().map(|e| e.index()).collect();
        assert_eq!(indices, (0..q).collect::<Vec<u64>>());
    }
    println!(
        "[PASS] criterion 9: field axioms exhaustive for all {} prime powers <= 64 in {:?}",
        prime_powers.len(),
        start.elapsed()
    );
}

#[test]
fn c10_determinism_across_threads_and_runs() {
    let one_a = reference_artifacts(1);
    let one_b = reference_artifacts(1);
    let four = reference_artifacts(4);
    assert_eq!(one_a, one_b, "outputs differ across runs");
    assert_eq!(one_a, four, "outputs differ across thread counts");
    println!(
        "[PASS] criterion 10: {} bytes of table output identical across runs and threads 1/4",
        one_a.len()
    );
}

/// Canonical serialization of everything criteria 1-4 produce, at a given
/// thread count.
fn reference_artifacts(threads: usize) -> String {
    let mut out = String::new();
    for idx in 1..=4u8 {
        for (label, spec, rs, _) in reference_table(idx) {
            let report = verify(&spec, &rs, BUDGET, threads).unwrap();
            out.push_str(&serde_json::to_string(&report.to_json()).unwrap());
            out.push('\n');
            let code = construct(&spec).unwrap();
            for &r in &rs {
                let table = code.sswd_bruteforce(r, BUDGET, threads).unwrap();
                let json = ghwcodes::codes::WeightTableJson::from(&table);
                out.push_str(&format!(
                    "{label} {}\n",
                    serde_json::to_string(&json).unwrap()
                ));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Enumeration-side helpers for criterion 6.

/// Strictly increasing lists over 1..=max with length 1..=maxlen.
fn increasing_lists(max: usize, maxlen: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, max: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for next in start..=max {
            cur.push(next);
            rec(next + 1, max, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    rec(1, max, maxlen, &mut cur, &mut out);
    out
}

/// All nondecreasing v-lists with v_i <= u_i and final entry vs.
fn box_lists(u: &[usize], vs: usize) -> Vec<Vec<usize>> {
    let s = u.len();
    let mut out = Vec::new();
    let mut cur = vec![0usize; s];
    fn rec(
        u: &[usize],
        vs: usize,
        i: usize,
        prev: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == u.len() - 1 {
            if vs >= prev && vs <= u[i] {
                cur[i] = vs;
                out.push(cur.clone());
            }
            return;
        }
        for v in prev..=u[i].min(vs) {
            cur[i] = v;
            rec(u, vs, i + 1, v, cur, out);
        }
    }
    rec(u, vs, 0, 0, &mut cur, &mut out);
    out
}

/// dim(<e_1..e_u> ∩ V) = dim V - rank of the basis restricted to the
/// remaining coordinates.
fn prefix_intersection_dim(v: &SubspaceBasis, u: usize) -> usize {
    let coords: Vec<usize> = (0..u).collect();
    coord_intersection_dim(v, &coords)
}

fn coord_intersection_dim(v: &SubspaceBasis, coords: &[usize]) -> usize {
    let k = v.ambient_dim();
    if v.dim() == 0 {
        return 0;
    }
    let rest: Vec<usize> = (0..k).filter(|c| !coords.contains(c)).collect();
    let rows: Vec<Vec<u64>> = (0..v.dim())
        .map(|i| rest.iter().map(|&c| v.basis().get(i, c)).collect())
        .collect();
    let m = MatrixGF::from_rows(v.field().clone(), rows).unwrap();
    v.dim() - m.rank()
}

/// Standard coordinate supports for the intersection configuration:
/// U_2 on a prefix; U_3 disjoint after it (u1 = 0) or anchored at the first
/// coordinate plus a suffix (u1 = 1).
fn standard_pair_coords(
    u1: usize,
    u2: usize,
    u3: usize,
    k: usize,
) -> (Vec<usize>, Vec<usize>) {
    let c2: Vec<usize> = (0..u2).collect();
    let c3: Vec<usize> = if u1 == 0 {
        (u2..u2 + u3).collect()
    } else {
        let mut c = vec![0usize];
        c.extend(k - u3 + 1..k);
        c
    };
    (c2, c3)
}

//! Integer-valued vertex functions on P(q²) and exact spectral certificates.
//!
//! Everything here is exact: the half-integer eigenvalue (q−1)/2 is handled
//! through the formulation θ_den·(A·v) = θ_num·v, and all ranks come from
//! fraction-free elimination over the integers with a mandatory
//! arbitrary-precision fallback. No floating point appears anywhere.
//!
//! Two families of eigenfunctions are built from the canonical clique
//! partitions: "contrast" functions (+1 on a partition's first clique, −1 on
//! another, 0 elsewhere) and "balanced" functions (q−1 on one clique, −1 off
//! it, the integer rescaling of the clique's balanced characteristic vector).

use crate::graph::Graph;
use crate::plane::CliquePartition;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectraError {
    IndexOutOfRange {
        j: usize,
        i: usize,
    },
    EmptySet,
    ZeroFunction,
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    NotAQClique(String),
    EigenCheckFailed {
        family: String,
        j: usize,
        i: usize,
    },
    IdentityFailed(String),
    RankMismatch {
        family: String,
        got: usize,
        expected: usize,
    },
}

impl fmt::Display for SpectraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectraError::IndexOutOfRange { j, i } => {
                write!(f, "indices (j={j}, i={i}) out of range")
            }
            SpectraError::EmptySet => write!(f, "vertex set is empty"),
            SpectraError::ZeroFunction => write!(f, "function is identically zero"),
            SpectraError::DimensionMismatch { expected, got } => {
                write!(f, "expected length {expected}, got {got}")
            }
            SpectraError::NotAQClique(why) => write!(f, "not a q-clique: {why}"),
            SpectraError::EigenCheckFailed { family, j, i } => {
                write!(
                    f,
                    "{family} function (j={j}, i={i}) failed the eigenvalue equation"
                )
            }
            SpectraError::IdentityFailed(which) => write!(f, "identity failed: {which}"),
            SpectraError::RankMismatch {
                family,
                got,
                expected,
            } => write!(f, "{family} family has rank {got}, expected {expected}"),
        }
    }
}

impl std::error::Error for SpectraError {}

/// An integer vector over the vertices together with a positive denominator;
/// the mathematical function is values/denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFn {
    values: Vec<i64>,
    denominator: i64,
}

impl VertexFn {
    pub fn new(values: Vec<i64>, denominator: i64) -> Self {
        assert!(denominator >= 1, "denominator must be positive");
        VertexFn {
            values,
            denominator,
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }

    /// Divides values and denominator by their common gcd.
    pub fn reduced(mut self) -> Self {
        let mut g = self.denominator as u64;
        for &v in &self.values {
            g = gcd(g, v.unsigned_abs());
        }
        if g > 1 {
            for v in &mut self.values {
                *v /= g as i64;
            }
            self.denominator /= g as i64;
        }
        self
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn partition_shape(parts: &[CliquePartition]) -> (usize, usize, usize) {
    let m = parts.len();
    let q = parts.first().map(|p| p.cliques().len()).unwrap_or(0);
    let n = parts.first().map(|p| p.n_vertices()).unwrap_or(0);
    (m, q, n)
}

/// The contrast function of partition j (1-based): +1 on the partition's
/// first clique, −1 on its i-th clique (1-based, i ≥ 2), 0 elsewhere.
pub fn contrast_fn(
    parts: &[CliquePartition],
    j: usize,
    i: usize,
) -> Result<VertexFn, SpectraError> {
    let (m, q, n) = partition_shape(parts);
    if j < 1 || j > m || i < 2 || i > q {
        return Err(SpectraError::IndexOutOfRange { j, i });
    }
    let part = &parts[j - 1];
    let mut values = vec![0i64; n];
    for &v in &part.cliques()[0] {
        values[v] = 1;
    }
    for &v in &part.cliques()[i - 1] {
        values[v] = -1;
    }
    Ok(VertexFn::new(values, 1))
}

/// The balanced clique function of partition j (1-based): q−1 on the
/// partition's i-th clique (1-based), −1 everywhere else. This is q times
/// the balanced characteristic vector of that clique.
pub fn balanced_fn(
    parts: &[CliquePartition],
    j: usize,
    i: usize,
) -> Result<VertexFn, SpectraError> {
    let (m, q, n) = partition_shape(parts);
    if j < 1 || j > m || i < 1 || i > q {
        return Err(SpectraError::IndexOutOfRange { j, i });
    }
    let part = &parts[j - 1];
    let mut values = vec![-1i64; n];
    for &v in &part.cliques()[i - 1] {
        values[v] = (q - 1) as i64;
    }
    Ok(VertexFn::new(values, 1))
}

/// The balanced characteristic vector of S: the indicator of S shifted
/// orthogonal to the all-ones vector, kept exact as (n·1_S − |S|)/n and
/// reduced once by the common gcd.
pub fn balanced_char_vec(s: &[usize], n: usize) -> Result<VertexFn, SpectraError> {
    let mut set: Vec<usize> = s.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() {
        return Err(SpectraError::EmptySet);
    }
    if let Some(&v) = set.iter().find(|&&v| v >= n) {
        return Err(SpectraError::DimensionMismatch {
            expected: n,
            got: v + 1,
        });
    }
    let size = set.len() as i64;
    let mut values = vec![-size; n];
    for &v in &set {
        values[v] = n as i64 - size;
    }
    Ok(VertexFn::new(values, n as i64).reduced())
}

/// Exact eigenvalue-equation test: θ_den·(A·v) = θ_num·v entrywise, i.e. the
/// neighbourhood sums of v equal θ·v for θ = θ_num/θ_den.
pub fn check_eigenfunction(
    g: &Graph,
    v: &VertexFn,
    theta_num: i64,
    theta_den: i64,
) -> Result<bool, SpectraError> {
    assert!(theta_den > 0, "theta_den must be positive");
    if v.len() != g.n_vertices() {
        return Err(SpectraError::DimensionMismatch {
            expected: g.n_vertices(),
            got: v.len(),
        });
    }
    if v.is_zero() {
        return Err(SpectraError::ZeroFunction);
    }
    let values = v.values();
    for gamma in 0..g.n_vertices() {
        let sum: i128 = g.neighbors(gamma).iter().map(|&d| values[d] as i128).sum();
        if theta_den as i128 * sum != theta_num as i128 * values[gamma] as i128 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when the balanced characteristic vector of a q-clique satisfies the
/// eigenvalue equation at θ = (q−1)/2.
pub fn verify_q_clique_eigen(g: &Graph, s: &[usize]) -> Result<bool, SpectraError> {
    let n = g.n_vertices();
    let q = n.isqrt();
    if q * q != n {
        return Err(SpectraError::NotAQClique(format!(
            "graph order {n} is not a square"
        )));
    }
    let mut set: Vec<usize> = s.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != q {
        return Err(SpectraError::NotAQClique(format!(
            "set has {} distinct vertices, need {q}",
            set.len()
        )));
    }
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            if !g.has_edge(set[i], set[j]) {
                return Err(SpectraError::NotAQClique(format!(
                    "vertices {} and {} are not adjacent",
                    set[i], set[j]
                )));
            }
        }
    }
    let v = balanced_char_vec(&set, n)?;
    check_eigenfunction(g, &v, q as i64 - 1, 2)
}

// ---------------------------------------------------------------------------
// Exact integer rank
// ---------------------------------------------------------------------------

/// Outcome of one exact rank computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// SHA-256 over the (step, row, col) pivot sequence, so a second
    /// implementation can replay the elimination.
    pub pivot_hash: String,
    pub used_bigint: bool,
}

/// Rank over the rationals by fraction-free elimination with full pivoting
/// on magnitude. Runs in checked i128 first and restarts in arbitrary
/// precision if any product overflows.
pub fn int_rank(matrix: &[Vec<i64>]) -> usize {
    int_rank_detailed(matrix).rank
}

pub fn int_rank_detailed(matrix: &[Vec<i64>]) -> RankCertificate {
    let rows = matrix.len();
    let cols = matrix.first().map(|r| r.len()).unwrap_or(0);
    assert!(
        matrix.iter().all(|r| r.len() == cols),
        "matrix rows must have equal length"
    );
    if rows == 0 || cols == 0 {
        return RankCertificate {
            rows,
            cols,
            rank: 0,
            pivot_hash: hash_pivots(&[]),
            used_bigint: false,
        };
    }
    let mut pivots = Vec::new();
    if let Some(rank) = rank_i128(matrix, &mut pivots) {
        return RankCertificate {
            rows,
            cols,
            rank,
            pivot_hash: hash_pivots(&pivots),
            used_bigint: false,
        };
    }
    pivots.clear();
    let rank = rank_bigint(matrix, &mut pivots);
    RankCertificate {
        rows,
        cols,
        rank,
        pivot_hash: hash_pivots(&pivots),
        used_bigint: true,
    }
}

fn hash_pivots(pivots: &[(usize, usize, usize)]) -> String {
    let mut hasher = Sha256::new();
    for &(step, r, c) in pivots {
        hasher.update((step as u64).to_le_bytes());
        hasher.update((r as u64).to_le_bytes());
        hasher.update((c as u64).to_le_bytes());
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn rank_i128(matrix: &[Vec<i64>], pivots: &mut Vec<(usize, usize, usize)>) -> Option<usize> {
    let rows = matrix.len();
    let cols = matrix[0].len();
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut prev: i128 = 1;
    let mut step = 0;
    while step < rows.min(cols) {
        let (mut pr, mut pc, mut best) = (step, step, 0u128);
        for (r, row) in m.iter().enumerate().skip(step) {
            for (c, entry) in row.iter().enumerate().skip(step) {
                let a = entry.unsigned_abs();
                if a > best {
                    best = a;
                    pr = r;
                    pc = c;
                }
            }
        }
        if best == 0 {
            break;
        }
        m.swap(step, pr);
        if pc != step {
            for row in m.iter_mut() {
                row.swap(step, pc);
            }
        }
        pivots.push((step, pr, pc));
        let p = m[step][step];
        for r in step + 1..rows {
            for c in step + 1..cols {
                let a = p.checked_mul(m[r][c])?;
                let b = m[r][step].checked_mul(m[step][c])?;
                let num = a.checked_sub(b)?;
                if num.checked_rem(prev)? != 0 {
                    return None;
                }
                m[r][c] = num.checked_div(prev)?;
            }
            m[r][step] = 0;
        }
        prev = p;
        step += 1;
    }
    Some(step)
}

fn rank_bigint(matrix: &[Vec<i64>], pivots: &mut Vec<(usize, usize, usize)>) -> usize {
    let rows = matrix.len();
    let cols = matrix[0].len();
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::from(1);
    let mut step = 0;
    while step < rows.min(cols) {
        let (mut pr, mut pc) = (step, step);
        let mut best = BigInt::zero();
        for (r, row) in m.iter().enumerate().skip(step) {
            for (c, entry) in row.iter().enumerate().skip(step) {
                let a = entry.abs();
                if a > best {
                    best = a;
                    pr = r;
                    pc = c;
                }
            }
        }
        if best.is_zero() {
            break;
        }
        m.swap(step, pr);
        if pc != step {
            for row in m.iter_mut() {
                row.swap(step, pc);
            }
        }
        pivots.push((step, pr, pc));
        let p = m[step][step].clone();
        for r in step + 1..rows {
            for c in step + 1..cols {
                let num = &p * &m[r][c] - &m[r][step] * &m[step][c];
                debug_assert!((&num % &prev).is_zero(), "fraction-free step must divide");
                m[r][c] = num / &prev;
            }
            m[r][step] = BigInt::zero();
        }
        prev = p;
        step += 1;
    }
    step
}

// ---------------------------------------------------------------------------
// Span certificates
// ---------------------------------------------------------------------------

/// A replayable record of one family's eigenfunction and rank verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanCertificate {
    pub q: u64,
    pub family: String,
    pub dims: (usize, usize),
    pub rank: usize,
    pub expected: usize,
    pub eigen_checks: usize,
    pub identities: Vec<String>,
    pub pivot_hash: String,
    pub exhaustive: bool,
}

/// The two balanced-family certificates plus the complementary rank check on
/// the adjacency side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedSpanOutcome {
    pub full: SpanCertificate,
    pub reduced: SpanCertificate,
    /// rank(2A − (q−1)·I) — the codimension of the (q−1)/2 eigenspace.
    pub complement_rank: usize,
    pub complement_expected: usize,
}

fn checked_shape(
    g: &Graph,
    parts: &[CliquePartition],
) -> Result<(usize, usize, usize), SpectraError> {
    let (m, q, n) = partition_shape(parts);
    if n != g.n_vertices() || q * q != n || m != (q + 1) / 2 {
        return Err(SpectraError::DimensionMismatch {
            expected: g.n_vertices(),
            got: n,
        });
    }
    Ok((m, q, n))
}

/// Builds every contrast function, checks each against the eigenvalue
/// equation at θ = (q−1)/2, verifies the pairwise orthogonality across
/// partitions and the per-partition independence, and certifies that the
/// whole family has rank (q²−1)/2 — a basis of the eigenspace.
pub fn verify_contrast_basis(
    g: &Graph,
    parts: &[CliquePartition],
) -> Result<SpanCertificate, SpectraError> {
    let (m, q, n) = checked_shape(g, parts)?;
    let expected = (n - 1) / 2;
    let theta_num = q as i64 - 1;

    let mut fns = Vec::with_capacity(m * (q - 1));
    let mut eigen_checks = 0;
    for j in 1..=m {
        for i in 2..=q {
            let f = contrast_fn(parts, j, i)?;
            if !check_eigenfunction(g, &f, theta_num, 2)? {
                return Err(SpectraError::EigenCheckFailed {
                    family: "contrast".into(),
                    j,
                    i,
                });
            }
            eigen_checks += 1;
            fns.push(((j, i), f));
        }
    }

    let mut orthogonality_pairs = 0;
    for (a, (ja_ia, fa)) in fns.iter().enumerate() {
        for (jb_ib, fb) in fns.iter().skip(a + 1) {
            if ja_ia.0 == jb_ib.0 {
                continue;
            }
            let dot: i64 = fa
                .values()
                .iter()
                .zip(fb.values())
                .map(|(x, y)| x * y)
                .sum();
            if dot != 0 {
                return Err(SpectraError::IdentityFailed(format!(
                    "cross-partition dot product (j={},i={})·(j={},i={}) = {dot}",
                    ja_ia.0, ja_ia.1, jb_ib.0, jb_ib.1
                )));
            }
            orthogonality_pairs += 1;
        }
    }

    for j in 1..=m {
        let rows: Vec<Vec<i64>> = fns
            .iter()
            .filter(|((jj, _), _)| *jj == j)
            .map(|(_, f)| f.values().to_vec())
            .collect();
        let rank = int_rank(&rows);
        if rank != q - 1 {
            return Err(SpectraError::RankMismatch {
                family: format!("contrast partition {j}"),
                got: rank,
                expected: q - 1,
            });
        }
    }

    let matrix: Vec<Vec<i64>> = fns.iter().map(|(_, f)| f.values().to_vec()).collect();
    let cert = int_rank_detailed(&matrix);
    if cert.rank != expected {
        return Err(SpectraError::RankMismatch {
            family: "contrast".into(),
            got: cert.rank,
            expected,
        });
    }

    Ok(SpanCertificate {
        q: q as u64,
        family: "contrast".into(),
        dims: (matrix.len(), n),
        rank: cert.rank,
        expected,
        eigen_checks,
        identities: vec![
            format!("cross-partition orthogonality: {orthogonality_pairs} dot products vanish"),
            format!(
                "per-partition independence: rank {} for each of {m} partitions",
                q - 1
            ),
        ],
        pivot_hash: cert.pivot_hash,
        exhaustive: true,
    })
}

/// Verifies the balanced family: every function satisfies the eigenvalue
/// equation at θ = (q−1)/2, q·contrast_ji = balanced_j1 − balanced_ji, each
/// partition's functions sum to zero, the full and the reduced (i ≥ 2)
/// families both have rank (q²−1)/2, and rank(2A − (q−1)I) confirms the
/// eigenspace dimension from the adjacency side.
pub fn verify_balanced_span(
    g: &Graph,
    parts: &[CliquePartition],
) -> Result<BalancedSpanOutcome, SpectraError> {
    let (m, q, n) = checked_shape(g, parts)?;
    let expected = (n - 1) / 2;
    let theta_num = q as i64 - 1;

    let mut all = Vec::with_capacity(m * q);
    let mut eigen_checks = 0;
    for j in 1..=m {
        for i in 1..=q {
            let gf = balanced_fn(parts, j, i)?;
            if !check_eigenfunction(g, &gf, theta_num, 2)? {
                return Err(SpectraError::EigenCheckFailed {
                    family: "balanced".into(),
                    j,
                    i,
                });
            }
            eigen_checks += 1;
            all.push(((j, i), gf));
        }
    }
    let get = |j: usize, i: usize| &all[(j - 1) * q + (i - 1)].1;

    // q·contrast = balanced_1 − balanced_i, entrywise.
    let mut scaling_checks = 0;
    for j in 1..=m {
        for i in 2..=q {
            let f = contrast_fn(parts, j, i)?;
            let g1 = get(j, 1);
            let gi = get(j, i);
            for v in 0..n {
                if q as i64 * f.values()[v] != g1.values()[v] - gi.values()[v] {
                    return Err(SpectraError::IdentityFailed(format!(
                        "q·contrast(j={j},i={i}) != balanced(j={j},1) - balanced(j={j},{i}) at vertex {v}"
                    )));
                }
            }
            scaling_checks += 1;
        }
    }

    // The q functions of each partition sum to the zero vector.
    for j in 1..=m {
        for v in 0..n {
            let s: i64 = (1..=q).map(|i| get(j, i).values()[v]).sum();
            if s != 0 {
                return Err(SpectraError::IdentityFailed(format!(
                    "sum of balanced functions of partition {j} is {s} at vertex {v}"
                )));
            }
        }
    }

    let full_matrix: Vec<Vec<i64>> = all.iter().map(|(_, f)| f.values().to_vec()).collect();
    let full_cert = int_rank_detailed(&full_matrix);
    if full_cert.rank != expected {
        return Err(SpectraError::RankMismatch {
            family: "balanced".into(),
            got: full_cert.rank,
            expected,
        });
    }

    let reduced_matrix: Vec<Vec<i64>> = all
        .iter()
        .filter(|((_, i), _)| *i >= 2)
        .map(|(_, f)| f.values().to_vec())
        .collect();
    let reduced_cert = int_rank_detailed(&reduced_matrix);
    if reduced_cert.rank != expected {
        return Err(SpectraError::RankMismatch {
            family: "balanced_reduced".into(),
            got: reduced_cert.rank,
            expected,
        });
    }

    let complement = eigenspace_complement_rank(g, theta_num, 2);
    let complement_expected = n - expected;
    if complement.rank != complement_expected {
        return Err(SpectraError::RankMismatch {
            family: "eigenspace complement".into(),
            got: complement.rank,
            expected: complement_expected,
        });
    }

    let identities = vec![
        format!("q·contrast = balanced_1 − balanced_i for all {scaling_checks} index pairs"),
        format!("balanced functions of each of the {m} partitions sum to zero"),
        format!(
            "rank(2A − {theta_num}I) = {} confirms eigenspace dimension {expected}",
            complement.rank
        ),
    ];
    Ok(BalancedSpanOutcome {
        full: SpanCertificate {
            q: q as u64,
            family: "balanced".into(),
            dims: (full_matrix.len(), n),
            rank: full_cert.rank,
            expected,
            eigen_checks,
            identities: identities.clone(),
            pivot_hash: full_cert.pivot_hash,
            exhaustive: true,
        },
        reduced: SpanCertificate {
            q: q as u64,
            family: "balanced_reduced".into(),
            dims: (reduced_matrix.len(), n),
            rank: reduced_cert.rank,
            expected,
            eigen_checks: reduced_matrix.len(),
            identities,
            pivot_hash: reduced_cert.pivot_hash,
            exhaustive: true,
        },
        complement_rank: complement.rank,
        complement_expected,
    })
}

/// Rank of θ_den·A − θ_num·I; the nullity is the θ-eigenspace dimension.
pub fn eigenspace_complement_rank(g: &Graph, theta_num: i64, theta_den: i64) -> RankCertificate {
    let n = g.n_vertices();
    let mut matrix = vec![vec![0i64; n]; n];
    for (u, row) in matrix.iter_mut().enumerate() {
        for (v, entry) in row.iter_mut().enumerate() {
            let a = i64::from(g.has_edge(u, v));
            *entry = theta_den * a - if u == v { theta_num } else { 0 };
        }
    }
    int_rank_detailed(&matrix)
}

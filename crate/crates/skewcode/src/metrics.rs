//! Hamming weight, minimum distance and the Singleton bound.

use std::fmt;

use thiserror::Error;

use crate::chain::{ChainRing, RingElem};
use crate::code::LeftIdealCode;
use crate::field::{Field, Fq};
use crate::linalg::{column_dependency, FieldEchelon};

/// Codes with at most `2^22` words are searched exhaustively by default.
pub const DEFAULT_EXHAUSTIVE_LOG2: f64 = 22.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("code too large for exhaustive search and not over a field")]
    Infeasible,
    #[error("not a code over a field")]
    NotFieldCode,
    #[error("witness check failed: {0}")]
    WitnessFailed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exhaustive,
    ColumnRank,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::ColumnRank => "column_rank",
        })
    }
}

/// `[n, k, d]` with the method used and a minimum-weight codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    /// Dimension for codes over a field.
    pub k_dim: Option<usize>,
    pub log_p_cardinality: u64,
    pub d: usize,
    /// `d = n - k + 1`, for codes over a field.
    pub mds: Option<bool>,
    pub method: Method,
    pub witness: Vec<RingElem>,
}

impl CodeParams {
    /// `n - k + 1 - d`, for codes over a field.
    pub fn singleton_defect(&self) -> Option<isize> {
        self.k_dim.map(|k| self.n as isize - k as isize + 1 - self.d as isize)
    }
}

/// Number of nonzero coordinates.
pub fn weight(ring: &ChainRing, v: &[RingElem]) -> usize {
    v.iter().filter(|c| !ring.is_zero(c)).count()
}

/// Whether a field code meets the Singleton bound.
pub fn is_mds(params: &CodeParams) -> Result<bool, MetricsError> {
    params.singleton_defect().map(|d| d == 0).ok_or(MetricsError::NotFieldCode)
}

/// Exact minimum distance, by exhaustive search when `|C| ≤ 2^22` and by
/// column dependencies of a parity-check matrix otherwise.
pub fn min_distance(code: &LeftIdealCode) -> Result<CodeParams, MetricsError> {
    min_distance_capped(code, DEFAULT_EXHAUSTIVE_LOG2)
}

/// [`min_distance`] with a custom exhaustive bound `log2 |C|`.
pub fn min_distance_capped(code: &LeftIdealCode, exhaustive_log2: f64) -> Result<CodeParams, MetricsError> {
    if code.is_zero() {
        return Err(MetricsError::ZeroCode);
    }
    let log2 = code.log_p_cardinality() as f64 * (code.ambient().field().p() as f64).log2();
    if log2 <= exhaustive_log2 + 1e-9 {
        min_distance_with(code, Method::Exhaustive)
    } else if code.ambient().k() == 1 {
        min_distance_with(code, Method::ColumnRank)
    } else {
        Err(MetricsError::Infeasible)
    }
}

/// Minimum distance by a fixed method.
pub fn min_distance_with(code: &LeftIdealCode, method: Method) -> Result<CodeParams, MetricsError> {
    if code.is_zero() {
        return Err(MetricsError::ZeroCode);
    }
    let amb = code.ambient();
    let (d, flat) = match method {
        Method::Exhaustive => exhaustive(code),
        Method::ColumnRank => {
            if amb.k() != 1 {
                return Err(MetricsError::NotFieldCode);
            }
            column_rank(code)?
        }
    };
    let witness_poly = amb.from_flat(&flat);
    let witness = amb.to_vector(&witness_poly);
    if !code.contains_poly(&witness_poly) || witness_poly.is_zero() || weight(amb.ring(), &witness) != d {
        return Err(MetricsError::WitnessFailed(format!("weight {d} witness rejected")));
    }
    let n = code.length();
    let k_dim = code.dimension();
    Ok(CodeParams {
        n,
        k_dim,
        log_p_cardinality: code.log_p_cardinality(),
        d,
        mds: k_dim.map(|k| d + k == n + 1),
        method,
        witness,
    })
}

fn flat_weight(n: usize, k: usize, v: &[Fq]) -> usize {
    (0..n).filter(|&c| (0..k).any(|t| !v[t * n + c].is_zero())).count()
}

/// Walks all codewords as an odometer over the `F_p`-basis `w^j·row`, adding
/// one basis vector per digit change.
fn exhaustive(code: &LeftIdealCode) -> (usize, Vec<Fq>) {
    let amb = code.ambient();
    let f: &Field = amb.field();
    let (n, k, m, p) = (amb.length(), amb.k(), f.m(), f.p());
    let mut gens: Vec<Vec<Fq>> = Vec::new();
    for row in code.basis().rows() {
        let mut scale = f.one();
        let w = f.generator();
        for _ in 0..m {
            gens.push(row.iter().map(|x| f.mul(x, &scale)).collect());
            scale = f.mul(&scale, &w);
        }
    }
    let mut digits = vec![0u32; gens.len()];
    let mut cur = vec![Fq::ZERO; n * k];
    let mut best = (usize::MAX, Vec::new());
    loop {
        let mut pos = 0;
        loop {
            if pos == gens.len() {
                return best;
            }
            for (x, g) in cur.iter_mut().zip(&gens[pos]) {
                *x = f.add(x, g);
            }
            digits[pos] += 1;
            if digits[pos] == p {
                digits[pos] = 0;
                pos += 1;
            } else {
                break;
            }
        }
        let w = flat_weight(n, k, &cur);
        if w > 0 && w < best.0 {
            best = (w, cur.clone());
            if w == 1 {
                return best;
            }
        }
    }
}

/// Smallest set of dependent columns of `H`, scanned by size and then
/// lexicographically over coordinate positions.
fn column_rank(code: &LeftIdealCode) -> Result<(usize, Vec<Fq>), MetricsError> {
    let amb = code.ambient();
    let f = amb.field();
    let n = amb.length();
    let h: Vec<Vec<Fq>> = code.basis().null_space();
    let h_rank = FieldEchelon::from_rows(f, n, h.iter()).rank();
    for w in 1..=h_rank + 1 {
        let mut subset: Vec<usize> = (0..w).collect();
        loop {
            // coordinate i sits at flat column n-1-i
            let cols: Vec<usize> = subset.iter().map(|&i| n - 1 - i).collect();
            if let Some(y) = column_dependency(f, &h, &cols) {
                let mut flat = vec![Fq::ZERO; n];
                for (c, v) in cols.iter().zip(&y) {
                    flat[*c] = *v;
                }
                return Ok((w, flat));
            }
            if !next_subset(&mut subset, n) {
                break;
            }
        }
    }
    Err(MetricsError::WitnessFailed("no dependent column set within the Singleton bound".into()))
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let w = s.len();
    let mut i = w;
    while i > 0 {
        i -= 1;
        if s[i] < n - w + i {
            s[i] += 1;
            for j in i + 1..w {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

//! Idempotents and the Chinese-remainder isomorphism
//! `R_k[x; Θ]/(M) ≅ Π R_k[x; Θ]/(f_j^{k_j})` for a central coprime factorization.

use thiserror::Error;

use crate::factor::CentralFactorization;
use crate::skew::{SkewError, SkewPoly, SkewRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrtError {
    #[error("block {0} does not divide the modulus")]
    NotADivisor(usize),
    #[error("block {0} is not coprime to its complement")]
    NotCoprime(usize),
    #[error("expected {expected} components, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("idempotent identity failed: {0}")]
    IdentityFailed(String),
    #[error(transparent)]
    Skew(#[from] SkewError),
}

/// Blocks `B_j = f_j^{k_j}`, complements `F_j = M / B_j` and idempotents
/// `ε_j = v_j·F_j mod M` with `v_j·F_j + w_j·B_j = 1`.
#[derive(Debug, Clone)]
pub struct CrtSystem {
    skew: SkewRing,
    factorization: CentralFactorization,
    blocks: Vec<SkewPoly>,
    complements: Vec<SkewPoly>,
    idempotents: Vec<SkewPoly>,
}

/// Identities checked after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub sum_is_one: bool,
    pub idempotent: Vec<bool>,
    pub orthogonal: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.sum_is_one && self.orthogonal && self.idempotent.iter().all(|&b| b)
    }
}

impl CrtSystem {
    pub fn new(s: &SkewRing, fact: &CentralFactorization) -> Result<CrtSystem, CrtError> {
        let m = &fact.modulus;
        let blocks = fact.blocks(s);
        let mut complements = Vec::with_capacity(blocks.len());
        let mut idempotents = Vec::with_capacity(blocks.len());
        for (j, b) in blocks.iter().enumerate() {
            let (f, rem) = s.right_divmod(m, b)?;
            if !rem.is_zero() {
                return Err(CrtError::NotADivisor(j));
            }
            let v = bezout_left(s, b, &f).ok_or(CrtError::NotCoprime(j))?;
            let eps = s.rem_right(&s.mul(&v, &f), m)?;
            complements.push(f);
            idempotents.push(eps);
        }
        let sys = CrtSystem { skew: s.clone(), factorization: fact.clone(), blocks, complements, idempotents };
        let report = sys.identities()?;
        if !report.all_hold() {
            return Err(CrtError::IdentityFailed(format!("{report:?}")));
        }
        Ok(sys)
    }

    pub fn skew(&self) -> &SkewRing {
        &self.skew
    }

    pub fn factorization(&self) -> &CentralFactorization {
        &self.factorization
    }

    pub fn modulus(&self) -> &SkewPoly {
        &self.factorization.modulus
    }

    pub fn blocks(&self) -> &[SkewPoly] {
        &self.blocks
    }

    pub fn complements(&self) -> &[SkewPoly] {
        &self.complements
    }

    pub fn idempotents(&self) -> &[SkewPoly] {
        &self.idempotents
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn mulmod(&self, a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly, CrtError> {
        Ok(self.skew.rem_right(&self.skew.mul(a, b), self.modulus())?)
    }

    /// Sum to one, idempotency and pairwise orthogonality, all mod `M`.
    pub fn identities(&self) -> Result<IdentityReport, CrtError> {
        let s = &self.skew;
        let sum = self.idempotents.iter().fold(SkewPoly::zero(), |acc, e| s.add(&acc, e));
        let sum_is_one = s.rem_right(&sum, self.modulus())? == s.rem_right(&s.one(), self.modulus())?;
        let mut idempotent = Vec::new();
        let mut orthogonal = true;
        for (j, e) in self.idempotents.iter().enumerate() {
            idempotent.push(self.mulmod(e, e)? == *e);
            for (l, f) in self.idempotents.iter().enumerate() {
                if j != l && !self.mulmod(e, f)?.is_zero() {
                    orthogonal = false;
                }
            }
        }
        Ok(IdentityReport { sum_is_one, idempotent, orthogonal })
    }

    /// `g ↦ (g mod B_j)_j`.
    pub fn decompose(&self, g: &SkewPoly) -> Result<Vec<SkewPoly>, CrtError> {
        self.blocks.iter().map(|b| Ok(self.skew.rem_right(g, b)?)).collect()
    }

    /// `(a_j)_j ↦ Σ ε_j·a_j mod M`.
    pub fn recompose(&self, components: &[SkewPoly]) -> Result<SkewPoly, CrtError> {
        if components.len() != self.blocks.len() {
            return Err(CrtError::ArityMismatch { expected: self.blocks.len(), got: components.len() });
        }
        let s = &self.skew;
        let mut acc = SkewPoly::zero();
        for (e, a) in self.idempotents.iter().zip(components) {
            acc = s.add(&acc, &s.mul(e, a));
        }
        Ok(s.rem_right(&acc, self.modulus())?)
    }
}

/// `v` with `v·f + w·b = 1` for some `w`, or `None` when `b` and `f` are not
/// coprime. Over `R_k` a residue-level identity `e = v·f + w·b ≡ 1 mod u` is
/// corrected by the left factor `Σ_{i<k} (1 - e)^i`, which inverts `e`.
fn bezout_left(s: &SkewRing, b: &SkewPoly, f: &SkewPoly) -> Option<SkewPoly> {
    if let Ok((d, _, v)) = s.gcd_right_extended(b, f) {
        if d == s.one() {
            return Some(v);
        }
        if s.ring().k() == 1 {
            return None;
        }
    }
    hensel_bezout(s, b, f)
}

fn hensel_bezout(s: &SkewRing, b: &SkewPoly, f: &SkewPoly) -> Option<SkewPoly> {
    let res = s.residue();
    let (d, w0, v0) = res.gcd_right_extended(&s.mu_poly(b), &s.mu_poly(f)).ok()?;
    if d != res.one() {
        return None;
    }
    let (w, v) = (s.lift_poly(&w0), s.lift_poly(&v0));
    let e = s.add(&s.mul(&v, f), &s.mul(&w, b));
    let n = s.sub(&s.one(), &e);
    let mut corr = s.one();
    let mut pw = s.one();
    for _ in 1..s.ring().k() {
        pw = s.mul(&pw, &n);
        corr = s.add(&corr, &pw);
    }
    let v = s.mul(&corr, &v);
    let w = s.mul(&corr, &w);
    debug_assert_eq!(s.add(&s.mul(&v, f), &s.mul(&w, b)), s.one());
    Some(v)
}

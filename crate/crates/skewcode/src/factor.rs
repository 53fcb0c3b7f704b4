//! Factorizations of `x^N - λ` in `R_k[x; Θ]`.
//!
//! Central factorizations follow a case analysis on `p mod 3`, `p mod 12`, the
//! parity of `m` and whether a root is a cube. A base factor `b` with
//! `Θ`-fixed coefficients yields the central block `b^t`, `t = |Θ|`, repeated
//! `p^s / t` times; `t | p^s` makes `b^t` a sum of `Θ^t`-invariant terms.
//!
//! Linear and quadratic right factors are found by exhaustive scans in encoding
//! order, so every result is deterministic.

use thiserror::Error;

use crate::chain::{ChainError, ChainRing, RingElem};
use crate::field::FieldError;
use crate::skew::{SkewError, SkewPoly, SkewRing};

/// Default bound on field size for exhaustive root scans.
pub const DEFAULT_FIELD_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("field has {order} elements, above the scan cap {cap}")]
    FieldTooLarge { order: u64, cap: u64 },
    #[error("polynomial must have field coefficients (k = 1)")]
    NotFieldLevel,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("characteristic 3 is excluded")]
    CharacteristicThree,
    #[error("λ has no p^s-th root in R_k")]
    NoPsRoot,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("factorization check failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// One block `f_i^{k_i}` of a central factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralFactor {
    /// The base factor `b` before raising to `|Θ|`.
    pub base: SkewPoly,
    /// The central polynomial `f_i = b^{|Θ|}`.
    pub poly: SkewPoly,
    pub multiplicity: usize,
    pub irreducible: bool,
}

/// `modulus = Π f_i^{k_i}` with central, pairwise coprime `f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralFactorization {
    pub modulus: SkewPoly,
    pub factors: Vec<CentralFactor>,
    pub case_tag: String,
}

impl CentralFactorization {
    /// The blocks `f_i^{k_i}`.
    pub fn blocks(&self, s: &SkewRing) -> Vec<SkewPoly> {
        self.factors.iter().map(|f| s.pow(&f.poly, f.multiplicity as u64)).collect()
    }

    /// A single block equal to the modulus.
    pub fn trivial(modulus: &SkewPoly) -> CentralFactorization {
        CentralFactorization {
            modulus: modulus.clone(),
            factors: vec![CentralFactor {
                base: modulus.clone(),
                poly: modulus.clone(),
                multiplicity: 1,
                irreducible: false,
            }],
            case_tag: "single block".to_string(),
        }
    }

    /// Checks the product, centrality of each factor and pairwise coprimality
    /// of the residue projections.
    pub fn verify(&self, s: &SkewRing) -> Result<(), FactorError> {
        let product = s.product(self.blocks(s).iter());
        if product != self.modulus {
            return Err(FactorError::VerificationFailed("product differs from the modulus".into()));
        }
        for (i, f) in self.factors.iter().enumerate() {
            if let Some(v) = s.centrality_violation(&f.poly)? {
                return Err(FactorError::VerificationFailed(format!("factor {i} not central: {v:?}")));
            }
        }
        let res = s.residue();
        let projected: Vec<SkewPoly> = self.factors.iter().map(|f| s.mu_poly(&f.poly)).collect();
        for i in 0..projected.len() {
            for j in i + 1..projected.len() {
                let (d, _, _) = res.gcd_right_extended(&projected[i], &projected[j])?;
                if d != res.one() {
                    return Err(FactorError::VerificationFailed(format!("factors {i} and {j} share a right divisor")));
                }
            }
        }
        Ok(())
    }
}

/// `b` with `b^{p^s} = λ`, or `None` when `λ` has terms at `u`-indices not
/// divisible by `p^s`.
pub fn ps_root_chain_ring(ring: &ChainRing, lambda: &RingElem, s: u32) -> Result<Option<RingElem>, FactorError> {
    if !ring.is_unit(lambda) {
        return Err(FactorError::NotAUnit);
    }
    let f = ring.field();
    let ps = (f.p() as u64).pow(s) as usize;
    let mut root = ring.zero();
    for (j, b) in lambda.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        if j % ps != 0 {
            return Ok(None);
        }
        root[j / ps] = f.pth_power_root(b, s as u64)?;
    }
    debug_assert_eq!(ring.pow(&root, ps as u64), *lambda);
    Ok(Some(root))
}

/// `δ` with `δ^3 = λ_0`, lifting the least cube root of the residue.
pub fn cube_root_unit(ring: &ChainRing, lambda0: &RingElem) -> Result<Option<RingElem>, FactorError> {
    let f = ring.field();
    if f.p() == 3 {
        return Err(FactorError::CharacteristicThree);
    }
    if !ring.is_unit(lambda0) {
        return Err(FactorError::NotAUnit);
    }
    let Some(d0) = f.cube_roots(&lambda0[0])?.first().copied() else {
        return Ok(None);
    };
    let mut delta = ring.lift(&d0);
    // coefficient n of δ^3 is 3 δ_0^2 δ_n plus terms in δ_0..δ_{n-1}
    let denom_inv = f.inv(&f.scale(&f.square(&d0), 3))?;
    for n in 1..ring.k() {
        let cube = ring.pow(&delta, 3);
        let rest = f.sub(&lambda0[n], &cube[n]);
        delta[n] = f.mul(&rest, &denom_inv);
    }
    if ring.pow(&delta, 3) != *lambda0 {
        return Err(FactorError::VerificationFailed("cube root lift".into()));
    }
    Ok(Some(delta))
}

fn require_field_level(s: &SkewRing, cap: u64) -> Result<(), FactorError> {
    if s.ring().k() != 1 {
        return Err(FactorError::NotFieldLevel);
    }
    let order = s.field().order();
    if order > cap {
        return Err(FactorError::FieldTooLarge { order, cap });
    }
    Ok(())
}

/// All `a` with `(x - a)` a right divisor of `f`, in encoding order.
pub fn linear_right_factors(s: &SkewRing, f: &SkewPoly, cap: u64) -> Result<Vec<RingElem>, FactorError> {
    require_field_level(s, cap)?;
    let ring = s.ring();
    Ok(s.field()
        .elements()
        .map(|a| ring.lift(&a))
        .filter(|a| ring.is_zero(&s.eval_right_remainder(f, a)))
        .collect())
}

/// The least `a` with `(x - a)` a right divisor of `f`.
pub fn first_right_root(s: &SkewRing, f: &SkewPoly, cap: u64) -> Result<Option<RingElem>, FactorError> {
    require_field_level(s, cap)?;
    let ring = s.ring();
    Ok(s.field()
        .elements()
        .map(|a| ring.lift(&a))
        .find(|a| ring.is_zero(&s.eval_right_remainder(f, a))))
}

/// Monic linear factors whose left-to-right product is `f`, found by
/// repeatedly splitting off the least right root. The first root found is the
/// rightmost factor.
pub fn peel_linear_factorization(s: &SkewRing, f: &SkewPoly, cap: u64) -> Result<Option<Vec<SkewPoly>>, FactorError> {
    require_field_level(s, cap)?;
    if !s.is_monic(f) {
        return Err(FactorError::NotMonic);
    }
    let mut rest = f.clone();
    let mut extracted = Vec::new();
    while rest.degree().unwrap_or(0) > 0 {
        let Some(a) = first_right_root(s, &rest, cap)? else {
            return Ok(None);
        };
        let lin = s.sub(&s.x(), &s.constant(&a));
        let (q, r) = s.right_divmod(&rest, &lin)?;
        debug_assert!(r.is_zero());
        extracted.push(lin);
        rest = q;
    }
    extracted.reverse();
    if s.product(extracted.iter()) != *f {
        return Err(FactorError::VerificationFailed("linear factors do not recompose".into()));
    }
    Ok(Some(extracted))
}

/// The least `(b, c)` in encoding order with `x^2 + b x + c` a right divisor of `g`.
pub fn first_quadratic_right_factor(s: &SkewRing, g: &SkewPoly, cap: u64) -> Result<Option<SkewPoly>, FactorError> {
    require_field_level(s, cap)?;
    let f = s.field();
    let theta = s.auto().theta();
    let coeffs: Vec<_> = g.coeffs().iter().map(|c| c[0]).collect();
    for b in f.elements() {
        for c in f.elements() {
            // x^i ≡ α_i x + β_i (mod_r x^2 + b x + c)
            let (mut alpha, mut beta) = (f.zero(), f.one());
            let (mut ra, mut rb) = (f.zero(), f.zero());
            for (i, gi) in coeffs.iter().enumerate() {
                if i > 0 {
                    let ta = f.apply(theta, &alpha);
                    let tb = f.apply(theta, &beta);
                    alpha = f.sub(&tb, &f.mul(&ta, &b));
                    beta = f.neg(&f.mul(&ta, &c));
                }
                if !gi.is_zero() {
                    ra = f.add(&ra, &f.mul(gi, &alpha));
                    rb = f.add(&rb, &f.mul(gi, &beta));
                }
            }
            if ra.is_zero() && rb.is_zero() {
                return Ok(Some(s.from_field_coeffs(&[c, b, f.one()])));
            }
        }
    }
    Ok(None)
}

/// Monic quadratic factors whose product is `f`, splitting off the least
/// quadratic right divisor each time; `None` if some stage has none.
pub fn peel_quadratic_factorization(s: &SkewRing, f: &SkewPoly, cap: u64) -> Result<Option<Vec<SkewPoly>>, FactorError> {
    require_field_level(s, cap)?;
    if !s.is_monic(f) {
        return Err(FactorError::NotMonic);
    }
    let mut rest = f.clone();
    let mut extracted = Vec::new();
    while rest.degree().unwrap_or(0) > 0 {
        let Some(q2) = first_quadratic_right_factor(s, &rest, cap)? else {
            return Ok(None);
        };
        let (q, r) = s.right_divmod(&rest, &q2)?;
        debug_assert!(r.is_zero());
        extracted.push(q2);
        rest = q;
    }
    extracted.reverse();
    if s.product(extracted.iter()) != *f {
        return Err(FactorError::VerificationFailed("quadratic factors do not recompose".into()));
    }
    Ok(Some(extracted))
}

/// `|Θ|`, required to divide `p^s`.
fn theta_order_dividing_ps(s: &SkewRing, s_exp: u32) -> Result<u64, FactorError> {
    let ring = s.ring();
    let p = s.field().p() as u64;
    let mut t = 1u64;
    for _ in 0..=s_exp {
        if ring.automorphism_pow(s.auto(), t).is_identity() {
            return Ok(t);
        }
        t *= p;
    }
    Err(FactorError::PreconditionViolated(format!("|Θ| does not divide p^{s_exp}")))
}

struct Builder<'a> {
    s: &'a SkewRing,
    t: u64,
    ps: u64,
    factors: Vec<CentralFactor>,
}

impl Builder<'_> {
    fn push(&mut self, coeffs_low_to_high: Vec<RingElem>, irreducible_base: bool) {
        let base = SkewPoly::new(coeffs_low_to_high);
        let poly = self.s.pow(&base, self.t);
        self.factors.push(CentralFactor {
            base,
            poly,
            multiplicity: (self.ps / self.t) as usize,
            irreducible: irreducible_base && self.t == 1,
        });
    }

    fn finish(self, modulus: SkewPoly, tag: impl Into<String>) -> Result<CentralFactorization, FactorError> {
        let fact = CentralFactorization { modulus, factors: self.factors, case_tag: tag.into() };
        fact.verify(self.s)?;
        Ok(fact)
    }
}

fn common_preconditions(s: &SkewRing, lambda: &RingElem, s_exp: u32) -> Result<u64, FactorError> {
    let ring = s.ring();
    let p = s.field().p();
    if p == 3 {
        return Err(FactorError::CharacteristicThree);
    }
    if !ring.is_unit(lambda) {
        return Err(FactorError::NotAUnit);
    }
    if ring.apply(s.auto(), lambda) != *lambda {
        return Err(FactorError::PreconditionViolated("Θ(λ) ≠ λ".into()));
    }
    theta_order_dividing_ps(s, s_exp)
}

/// Central factorization of `x^{3p^s} - λ`.
pub fn factor_length3(s: &SkewRing, lambda: &RingElem, s_exp: u32) -> Result<CentralFactorization, FactorError> {
    let t = common_preconditions(s, lambda, s_exp)?;
    let ring = s.ring();
    let f = s.field();
    let p = f.p() as u64;
    let ps = p.pow(s_exp);
    let lambda0 = ps_root_chain_ring(ring, lambda, s_exp)?.ok_or(FactorError::NoPsRoot)?;
    let modulus = s.binomial(3 * ps as usize, lambda);
    let mut b = Builder { s, t, ps, factors: Vec::new() };
    let one = ring.one();
    let zero = ring.zero();
    let Some(delta) = cube_root_unit(ring, &lambda0)? else {
        b.push(vec![ring.neg(&lambda0), zero.clone(), zero, one], true);
        return b.finish(modulus, "λ_0 not a cube");
    };
    if p % 3 == 1 || f.m().is_multiple_of(2) {
        let omega = ring.lift(&f.primitive_cube_root_of_unity().expect("3 | p^m - 1"));
        let mut root = delta.clone();
        for _ in 0..3 {
            b.push(vec![ring.neg(&root), one.clone()], true);
            root = ring.mul(&root, &omega);
        }
        let tag = if p % 3 == 1 { "λ_0 a cube, p≡1 mod 3" } else { "λ_0 a cube, p≡2 mod 3, m even" };
        b.finish(modulus, tag)
    } else {
        b.push(vec![ring.neg(&delta), one.clone()], true);
        b.push(vec![ring.mul(&delta, &delta), delta.clone(), one], true);
        b.finish(modulus, "λ_0 a cube, p≡2 mod 3, m odd")
    }
}

/// Central factorization of `x^{6p^s} - λ` for `λ = ±1`.
pub fn factor_length6(s: &SkewRing, lambda: &RingElem, s_exp: u32) -> Result<CentralFactorization, FactorError> {
    let ring = s.ring();
    let f = s.field();
    let p = f.p() as u64;
    let m = f.m();
    let negacyclic = if ring.is_one(lambda) {
        false
    } else if *lambda == ring.from_int(-1) {
        true
    } else {
        return Err(FactorError::PreconditionViolated("λ must be 1 or -1".into()));
    };
    let t = common_preconditions(s, lambda, s_exp)?;
    let ps = p.pow(s_exp);
    let modulus = s.binomial(6 * ps as usize, lambda);
    let mut b = Builder { s, t, ps, factors: Vec::new() };
    let one = ring.one();
    let c = |v: i64| ring.from_int(v);
    let lift = |a: &crate::field::Fq| ring.lift(a);
    if !negacyclic {
        if p % 6 == 1 || m.is_multiple_of(2) {
            let alpha = lift(&f.primitive_root_of_unity(6).expect("6 | p^m - 1"));
            let mut root = ring.one();
            for _ in 0..6 {
                b.push(vec![ring.neg(&root), one.clone()], true);
                root = ring.mul(&root, &alpha);
            }
            let tag = if p % 6 == 1 { "cyclic, p≡1 mod 6" } else { "cyclic, m even" };
            return b.finish(modulus, tag);
        }
        b.push(vec![c(-1), one.clone()], true);
        b.push(vec![c(1), one.clone()], true);
        b.push(vec![c(1), c(-1), one.clone()], true);
        b.push(vec![c(1), c(1), one], true);
        return b.finish(modulus, "cyclic, p≡5 mod 6, m odd");
    }
    if m.is_multiple_of(2) || p % 12 == 1 {
        // roots of x^6 + 1 are the odd powers of a primitive 12th root
        let gamma = lift(&f.primitive_root_of_unity(12).expect("12 | p^m - 1"));
        let gamma2 = ring.mul(&gamma, &gamma);
        let mut root = gamma;
        for _ in 0..6 {
            b.push(vec![ring.neg(&root), one.clone()], true);
            root = ring.mul(&root, &gamma2);
        }
        let tag = if p % 12 == 1 { "negacyclic, p≡1 mod 12" } else { "negacyclic, m even" };
        return b.finish(modulus, tag);
    }
    let xi = f.prime_field_generator();
    match p % 12 {
        5 => {
            let alpha = lift(&f.pow(&xi, (p - 1) / 4));
            let alpha_inv = ring.inv(&alpha)?;
            b.push(vec![ring.neg(&alpha), one.clone()], true);
            b.push(vec![alpha.clone(), one.clone()], true);
            b.push(vec![c(-1), alpha, one.clone()], true);
            b.push(vec![c(-1), alpha_inv, one], true);
            b.finish(modulus, "negacyclic, p≡5 mod 12, m odd")
        }
        7 => {
            let alpha = lift(&f.pow(&xi, (p - 1) / 6));
            let alpha_inv = ring.inv(&alpha)?;
            let zero = ring.zero();
            b.push(vec![c(1), zero.clone(), one.clone()], true);
            b.push(vec![ring.neg(&alpha), zero.clone(), one.clone()], true);
            b.push(vec![ring.neg(&alpha_inv), zero, one], true);
            b.finish(modulus, "negacyclic, p≡7 mod 12, m odd")
        }
        11 => {
            let beta = lift(f.square_roots(&f.from_int(3))?.first().expect("3 is a square mod p"));
            b.push(vec![c(1), ring.zero(), one.clone()], true);
            b.push(vec![c(1), beta.clone(), one.clone()], true);
            b.push(vec![c(1), ring.neg(&beta), one], true);
            b.finish(modulus, "negacyclic, p≡11 mod 12, m odd")
        }
        _ => unreachable!("p ≡ 1 mod 12 handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FieldAutomorphism};

    fn comm(p: u32, m: usize, k: usize) -> SkewRing {
        SkewRing::commutative(ChainRing::new(Field::conway(p, m).unwrap(), k).unwrap())
    }

    fn elt(r: &ChainRing, c: &[i64]) -> RingElem {
        r.from_coeffs(&c.iter().map(|&v| r.field().from_int(v)).collect::<Vec<_>>())
    }

    #[test]
    fn ps_roots() {
        let r2 = ChainRing::new(Field::prime(5).unwrap(), 2).unwrap();
        assert_eq!(ps_root_chain_ring(&r2, &elt(&r2, &[1, 1]), 1).unwrap(), None);
        let r6 = ChainRing::new(Field::prime(5).unwrap(), 6).unwrap();
        let root = ps_root_chain_ring(&r6, &elt(&r6, &[1, 0, 0, 0, 0, 1]), 1).unwrap().unwrap();
        assert_eq!(root, elt(&r6, &[1, 1]));
        assert_eq!(ps_root_chain_ring(&r2, &elt(&r2, &[0, 1]), 1), Err(FactorError::NotAUnit));
    }

    #[test]
    fn cube_root_lift_example() {
        let r2 = ChainRing::new(Field::prime(7).unwrap(), 2).unwrap();
        assert_eq!(cube_root_unit(&r2, &elt(&r2, &[6, 1])).unwrap(), Some(elt(&r2, &[3, 6])));
        assert_eq!(cube_root_unit(&r2, &elt(&r2, &[1])).unwrap(), Some(elt(&r2, &[1])));
        assert_eq!(cube_root_unit(&r2, &elt(&r2, &[2, 1])).unwrap(), None);
        let r3 = ChainRing::new(Field::prime(3).unwrap(), 2).unwrap();
        assert_eq!(cube_root_unit(&r3, &elt(&r3, &[1])), Err(FactorError::CharacteristicThree));
    }

    #[test]
    fn classical_linear_factors() {
        let s = comm(7, 1, 1);
        let f = s.binomial(2, &s.ring().one());
        let roots = linear_right_factors(&s, &f, DEFAULT_FIELD_CAP).unwrap();
        assert_eq!(roots, vec![s.ring().from_int(1), s.ring().from_int(6)]);
        let fs = peel_linear_factorization(&s, &f, DEFAULT_FIELD_CAP).unwrap().unwrap();
        assert_eq!(s.product(fs.iter()), f);
        let s5 = comm(5, 1, 1);
        let irr = SkewPoly::new(vec![s5.ring().from_int(1), s5.ring().from_int(1), s5.ring().one()]);
        assert!(linear_right_factors(&s5, &irr, DEFAULT_FIELD_CAP).unwrap().is_empty());
        assert_eq!(peel_linear_factorization(&s5, &irr, DEFAULT_FIELD_CAP).unwrap(), None);
    }

    #[test]
    fn length3_over_f7() {
        let s = comm(7, 1, 1);
        let fact = factor_length3(&s, &s.ring().one(), 1).unwrap();
        let polys: Vec<SkewPoly> = fact.factors.iter().map(|f| s.pow(&f.poly, f.multiplicity as u64)).collect();
        for c in [1, 2, 4] {
            assert!(polys.contains(&s.binomial(7, &s.ring().from_int(c))));
        }
        let nc = factor_length3(&s, &s.ring().from_int(2), 0).unwrap();
        assert_eq!(nc.factors.len(), 1);
        assert!(nc.factors[0].irreducible);
    }

    #[test]
    fn length3_over_f55_with_frobenius() {
        let r = ChainRing::new(Field::conway(5, 5).unwrap(), 1).unwrap();
        let a = r.automorphism(FieldAutomorphism { exponent: 1 }, &[]).unwrap();
        let s = SkewRing::new(r, a);
        let fact = factor_length3(&s, &s.ring().one(), 1).unwrap();
        let one = s.ring().one();
        let x5m1 = s.binomial(5, &one);
        let big = s.add(&s.add(&s.x_pow(10), &s.x_pow(5)), &s.one());
        let polys: Vec<_> = fact.factors.iter().map(|f| f.poly.clone()).collect();
        assert_eq!(polys, vec![x5m1, big]);
        assert!(fact.factors.iter().all(|f| f.multiplicity == 1 && !f.irreducible));
    }

    #[test]
    fn length6_examples() {
        let s = comm(5, 1, 1);
        let fact = factor_length6(&s, &s.ring().from_int(-1), 0).unwrap();
        let bases: Vec<Vec<i64>> = fact
            .factors
            .iter()
            .map(|f| f.base.coeffs().iter().map(|c| c[0].coeffs()[0] as i64).collect())
            .collect();
        assert_eq!(bases, vec![vec![3, 1], vec![2, 1], vec![4, 2, 1], vec![4, 3, 1]]);
        let s7 = comm(7, 1, 1);
        assert_eq!(factor_length6(&s7, &s7.ring().one(), 0).unwrap().factors.len(), 6);
        let s11 = comm(11, 1, 1);
        let fact = factor_length6(&s11, &s11.ring().from_int(-1), 0).unwrap();
        assert_eq!(fact.factors[1].base.coeffs()[1][0].coeffs()[0], 5);
    }

    #[test]
    fn quadratic_factor_search_finds_classical_divisors() {
        let s = comm(5, 1, 1);
        let f = s.binomial(6, &s.ring().one());
        let q = first_quadratic_right_factor(&s, &f, DEFAULT_FIELD_CAP).unwrap().unwrap();
        assert!(s.right_divides(&q, &f).unwrap());
        let fs = peel_quadratic_factorization(&s, &f, DEFAULT_FIELD_CAP).unwrap().unwrap();
        assert_eq!(fs.len(), 3);
    }
}

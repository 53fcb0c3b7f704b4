//! The finite chain ring `R_k = F_{p^m}[u]/(u^k)` and its automorphisms.
//!
//! Every automorphism has the shape `Σ a_i u^i ↦ Σ θ(a_i)·H^i·u^i` for a field
//! automorphism `θ` and a unit `H = η_1·η_2⋯η_{k-1}` with `η_1 ∈ F^*` and
//! `η_i ∈ 1 + u^{i-1}F`. Only `H mod u^{k-1}` affects the action, and the
//! factorization of that residue into the `η_i` is unique, which gives
//! automorphisms a canonical form.

use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::field::{Field, FieldAutomorphism, FieldError, Fq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("element is not a unit")]
    NotAUnit,
    #[error("nilpotency index must be at least {0}")]
    KTooSmall(usize),
    #[error("elements belong to different rings")]
    MismatchedRing,
    #[error("invalid eta_{index}: {reason}")]
    InvalidEta { index: usize, reason: &'static str },
    #[error("expected {expected} eta values, got {got}")]
    EtaCount { expected: usize, got: usize },
    #[error("enumeration needs {count} items, above the cap {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `Σ a_i u^i`; always exactly `k` coefficients.
pub type RingElem = SmallVec<[Fq; 3]>;

/// Handle on `R_k` over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRing {
    field: Field,
    k: usize,
}

impl ChainRing {
    pub fn new(field: Field, k: usize) -> Result<ChainRing, ChainError> {
        if k == 0 {
            return Err(ChainError::KTooSmall(1));
        }
        Ok(ChainRing { field, k })
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of elements `p^{mk}` as a power of `p`.
    pub fn log_p_order(&self) -> u64 {
        (self.field.m() * self.k) as u64
    }

    pub fn zero(&self) -> RingElem {
        SmallVec::from_elem(Fq::ZERO, self.k)
    }

    pub fn one(&self) -> RingElem {
        self.lift(&self.field.one())
    }

    pub fn from_int(&self, v: i64) -> RingElem {
        self.lift(&self.field.from_int(v))
    }

    /// Embeds `F_{p^m}` as the constants of `R_k`.
    pub fn lift(&self, a: &Fq) -> RingElem {
        let mut out = self.zero();
        out[0] = *a;
        out
    }

    /// `u^i` (zero once `i >= k`).
    pub fn u_pow(&self, i: usize) -> RingElem {
        let mut out = self.zero();
        if i < self.k {
            out[i] = self.field.one();
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[Fq]) -> RingElem {
        let mut out = self.zero();
        for (slot, c) in out.iter_mut().zip(coeffs) {
            *slot = *c;
        }
        out
    }

    #[inline]
    pub fn is_zero(&self, a: &RingElem) -> bool {
        a.iter().all(Fq::is_zero)
    }

    #[inline]
    pub fn is_unit(&self, a: &RingElem) -> bool {
        !a[0].is_zero()
    }

    pub fn is_one(&self, a: &RingElem) -> bool {
        *a == self.one()
    }

    /// The `u`-adic valuation; `None` for zero.
    pub fn valuation(&self, a: &RingElem) -> Option<usize> {
        a.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        a.iter().map(|x| self.field.neg(x)).collect()
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let f = &self.field;
        if self.k == 1 {
            return smallvec::smallvec![f.mul(&a[0], &b[0])];
        }
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate().take(self.k - i) {
                if !bj.is_zero() {
                    out[i + j] = f.add(&out[i + j], &f.mul(ai, bj));
                }
            }
        }
        out
    }

    /// Multiplication by a field scalar.
    pub fn scale(&self, a: &RingElem, c: &Fq) -> RingElem {
        a.iter().map(|x| self.field.mul(x, c)).collect()
    }

    /// `a·u^t`.
    pub fn shift_up(&self, a: &RingElem, t: usize) -> RingElem {
        let mut out = self.zero();
        for i in 0..self.k.saturating_sub(t) {
            out[i + t] = a[i];
        }
        out
    }

    /// The unique `b` of degree `< k - t` with `b·u^t = a`; requires `valuation(a) >= t`.
    pub fn shift_down(&self, a: &RingElem, t: usize) -> RingElem {
        debug_assert!(a.iter().take(t).all(Fq::is_zero));
        let mut out = self.zero();
        for i in t..self.k {
            out[i - t] = a[i];
        }
        out
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a unit: residue inverse times a truncated geometric series.
    pub fn inv(&self, a: &RingElem) -> Result<RingElem, ChainError> {
        if !self.is_unit(a) {
            return Err(ChainError::NotAUnit);
        }
        let a0_inv = self.field.inv(&a[0])?;
        let normalized = self.scale(a, &a0_inv);
        let nil = self.sub(&self.one(), &normalized);
        let mut term = self.one();
        let mut acc = self.one();
        for _ in 1..self.k {
            term = self.mul(&term, &nil);
            acc = self.add(&acc, &term);
        }
        Ok(self.scale(&acc, &a0_inv))
    }

    /// Residue map `μ: R_k → F_{p^m}`.
    pub fn mu(&self, a: &RingElem) -> Fq {
        a[0]
    }

    /// The ring `R_{k-1}`.
    pub fn truncated(&self) -> Result<ChainRing, ChainError> {
        if self.k < 2 {
            return Err(ChainError::KTooSmall(2));
        }
        ChainRing::new(self.field.clone(), self.k - 1)
    }

    /// The projection `π: R_k → R_{k-1}`, killing `u^{k-1}`.
    pub fn pi(&self, a: &RingElem) -> Result<RingElem, ChainError> {
        if self.k < 2 {
            return Err(ChainError::KTooSmall(2));
        }
        Ok(a[..self.k - 1].iter().copied().collect())
    }

    /// All elements in encoding order (coefficient of `u^0` most significant).
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        let q = self.field.order();
        let total = q.checked_pow(self.k as u32).expect("ring too large to enumerate");
        (0..total).map(move |mut r| {
            let mut out = self.zero();
            for i in (0..self.k).rev() {
                out[i] = self.field.element(r % q);
                r /= q;
            }
            out
        })
    }

    /// Renders `Σ a_i u^i` with `u` powers ascending.
    pub fn format(&self, a: &RingElem) -> String {
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = f.format(c);
            let upart = match i {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            };
            terms.push(match (i, coeff.as_str()) {
                (0, _) => coeff,
                (_, "1") => upart,
                _ if f.term_count(c) > 1 => format!("({coeff})*{upart}"),
                _ => format!("{coeff}*{upart}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Number of monomials `c·w^j·u^i` in `a`.
    pub fn term_count(&self, a: &RingElem) -> usize {
        a.iter().map(|c| self.field.term_count(c)).sum()
    }

    pub fn apply(&self, phi: &Automorphism, a: &RingElem) -> RingElem {
        let f = &self.field;
        if self.k == 1 {
            return smallvec::smallvec![f.apply(phi.theta, &a[0])];
        }
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let t = f.apply(phi.theta, ai);
            let h = &phi.mult_pows[i];
            for n in i..self.k {
                let c = &h[n - i];
                if !c.is_zero() {
                    out[n] = f.add(&out[n], &f.mul(&t, c));
                }
            }
        }
        out
    }

    /// The identity automorphism of this ring.
    pub fn identity(&self) -> Automorphism {
        self.automorphism_from_multiplier(FieldAutomorphism::identity(), &self.one())
            .expect("1 is a unit")
    }

    /// `Θ_{θ, η_1, …, η_{k-1}}` from the spec's parameters.
    pub fn automorphism(
        &self,
        theta: FieldAutomorphism,
        eta: &[RingElem],
    ) -> Result<Automorphism, ChainError> {
        let expected = self.k - 1;
        if eta.len() != expected {
            return Err(ChainError::EtaCount { expected, got: eta.len() });
        }
        let mut mult = self.one();
        for (idx, e) in eta.iter().enumerate() {
            let i = idx + 1;
            if i == 1 {
                if !self.is_unit(e) || e[1..].iter().any(|c| !c.is_zero()) {
                    return Err(ChainError::InvalidEta { index: 1, reason: "must be a nonzero field element" });
                }
            } else {
                let ok = self.is_one(&{
                    let mut t = e.clone();
                    t[i - 1] = Fq::ZERO;
                    t
                });
                if !ok {
                    return Err(ChainError::InvalidEta { index: i, reason: "must lie in 1 + u^(i-1)F" });
                }
            }
            mult = self.mul(&mult, e);
        }
        self.automorphism_from_multiplier(theta, &mult)
    }

    /// The automorphism with `θ` and `u ↦ H·u`.
    pub fn automorphism_from_multiplier(
        &self,
        theta: FieldAutomorphism,
        mult: &RingElem,
    ) -> Result<Automorphism, ChainError> {
        if !self.is_unit(mult) {
            return Err(ChainError::NotAUnit);
        }
        let theta = FieldAutomorphism { exponent: theta.exponent % self.field.m() };
        let mut h = mult.clone();
        if self.k >= 1 {
            h[self.k - 1] = Fq::ZERO;
        }
        if self.k == 1 {
            h = self.one();
        }
        let mut mult_pows = Vec::with_capacity(self.k);
        let mut cur = self.one();
        for _ in 0..self.k {
            mult_pows.push(cur.clone());
            cur = self.mul(&cur, &h);
        }
        let eta = self.unit_decomposition(&h)?;
        Ok(Automorphism { theta, mult: h, mult_pows, eta })
    }

    /// Unique `η_1 ∈ F^*`, `η_i ∈ 1 + u^{i-1}F` with `Π η_i ≡ h (mod u^{k-1})`.
    pub fn unit_decomposition(&self, h: &RingElem) -> Result<Vec<RingElem>, ChainError> {
        if self.k == 1 {
            return Ok(Vec::new());
        }
        let eta1 = self.lift(&h[0]);
        let mut cur = self.mul(h, &self.inv(&eta1)?);
        let mut out = vec![eta1];
        for i in 2..self.k {
            let mut e = self.one();
            e[i - 1] = cur[i - 1];
            cur = self.mul(&cur, &self.inv(&e)?);
            out.push(e);
        }
        Ok(out)
    }

    /// `a ∘ b`.
    pub fn compose(&self, a: &Automorphism, b: &Automorphism) -> Automorphism {
        let theta = a.theta.compose(b.theta, self.field.m());
        let mult = self.mul(&self.apply(a, &b.mult), &a.mult);
        self.automorphism_from_multiplier(theta, &mult).expect("product of units")
    }

    /// The inverse automorphism, solved coefficient by coefficient.
    pub fn inverse(&self, a: &Automorphism) -> Automorphism {
        let f = &self.field;
        let theta_inv = a.theta.inverse(f.m());
        if self.k == 1 {
            return self.automorphism_from_multiplier(theta_inv, &self.one()).expect("unit");
        }
        // Θ(H')·H = 1 with H' the inverse's multiplier
        let g = self.inv(&a.mult).expect("multiplier is a unit");
        let mut hp = self.zero();
        let mut image = self.zero();
        for n in 0..self.k {
            let rhs = f.sub(&g[n], &image[n]);
            let lead = &a.mult_pows[n][0];
            let coeff = f.div(&rhs, lead).expect("unit");
            hp[n] = f.apply(theta_inv, &coeff);
            // accumulate Θ(hp[n] u^n) into image
            let t = f.apply(a.theta, &hp[n]);
            for (j, c) in a.mult_pows[n].iter().enumerate().take(self.k - n) {
                image[n + j] = f.add(&image[n + j], &f.mul(&t, c));
            }
        }
        self.automorphism_from_multiplier(theta_inv, &hp).expect("unit")
    }

    /// `a^e` for `e >= 0`.
    pub fn automorphism_pow(&self, a: &Automorphism, mut e: u64) -> Automorphism {
        let mut base = a.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.compose(&acc, &base);
            }
            base = self.compose(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `|Aut(R_k)| = m·(q-1)·q^{k-2}` for `k >= 2`, `m` for `k = 1`.
    pub fn automorphism_count(&self) -> u128 {
        let m = self.field.m() as u128;
        let q = self.field.order() as u128;
        if self.k == 1 {
            m
        } else {
            m * (q - 1) * q.pow(self.k as u32 - 2)
        }
    }

    /// Least `t >= 1` with `a^t = id`, found by iterating the action on `u`
    /// and on the field generator.
    pub fn automorphism_order(&self, a: &Automorphism) -> u64 {
        let w = self.lift(&self.field.generator());
        let u = self.u_pow(1);
        let (mut cw, mut cu) = (self.apply(a, &w), self.apply(a, &u));
        let mut t = 1;
        while cw != w || (self.k > 1 && cu != u) {
            cw = self.apply(a, &cw);
            cu = self.apply(a, &cu);
            t += 1;
        }
        t
    }

    /// Every automorphism exactly once, ordered by `(θ, η_1, …)`.
    pub fn enumerate_automorphisms(&self, cap: u128) -> Result<Vec<Automorphism>, ChainError> {
        let count = self.automorphism_count();
        if count > cap {
            return Err(ChainError::CapExceeded { count, cap });
        }
        let f = &self.field;
        let m = f.m();
        let mut out = Vec::with_capacity(count as usize);
        for e in 0..m {
            let theta = FieldAutomorphism { exponent: e };
            if self.k == 1 {
                out.push(self.automorphism(theta, &[])?);
                continue;
            }
            let q = f.order();
            let free = q.pow(self.k as u32 - 2);
            for e1 in f.elements().skip(1) {
                for idx in 0..free {
                    let mut eta = vec![self.lift(&e1)];
                    let mut r = idx;
                    for i in 2..self.k {
                        let mut e = self.one();
                        e[i - 1] = f.element(r % q);
                        r /= q;
                        eta.push(e);
                    }
                    out.push(self.automorphism(theta, &eta)?);
                }
            }
        }
        Ok(out)
    }
}

/// A ring automorphism `Θ_{θ, η_1, …, η_{k-1}}` in canonical form.
#[derive(Clone)]
pub struct Automorphism {
    theta: FieldAutomorphism,
    // H mod u^{k-1}
    mult: RingElem,
    mult_pows: Vec<RingElem>,
    eta: Vec<RingElem>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.theta == other.theta && self.mult == other.mult
    }
}

impl Eq for Automorphism {}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Automorphism")
            .field("theta", &self.theta.exponent)
            .field("multiplier", &self.mult)
            .finish()
    }
}

impl Automorphism {
    pub fn theta(&self) -> FieldAutomorphism {
        self.theta
    }

    /// `H` with `Θ(u) = H·u`, reduced mod `u^{k-1}`.
    pub fn multiplier(&self) -> &RingElem {
        &self.mult
    }

    /// The canonical `η_1, …, η_{k-1}`.
    pub fn eta(&self) -> &[RingElem] {
        &self.eta
    }

    pub fn is_identity(&self) -> bool {
        self.theta.exponent == 0
            && self.mult.first().map(|c| c.coeffs()[0] == 1 && c.coeffs()[1..].iter().all(|&x| x == 0)).unwrap_or(true)
            && self.mult.iter().skip(1).all(Fq::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, m: usize, k: usize) -> ChainRing {
        ChainRing::new(Field::conway(p, m).unwrap(), k).unwrap()
    }

    fn elt(r: &ChainRing, c: &[i64]) -> RingElem {
        let f = r.field();
        r.from_coeffs(&c.iter().map(|&v| f.from_int(v)).collect::<Vec<_>>())
    }

    #[test]
    fn basic_products() {
        let r2 = ring(7, 1, 2);
        let u = r2.u_pow(1);
        assert!(r2.is_zero(&r2.mul(&u, &u)));
        let r3 = ring(5, 1, 3);
        let lhs = r3.mul(&elt(&r3, &[1, 1]), &elt(&r3, &[1, -1]));
        assert_eq!(lhs, elt(&r3, &[1, 0, -1]));
        let a = elt(&r2, &[3, 6]);
        assert_eq!(r2.pow(&a, 3), elt(&r2, &[6, 1]));
    }

    #[test]
    fn inverses() {
        let r2 = ring(7, 1, 2);
        assert_eq!(r2.inv(&elt(&r2, &[1, 1])).unwrap(), elt(&r2, &[1, -1]));
        assert_eq!(r2.inv(&elt(&r2, &[3])).unwrap(), elt(&r2, &[5]));
        assert_eq!(r2.inv(&elt(&r2, &[0, 1])), Err(ChainError::NotAUnit));
        let r3 = ring(7, 1, 3);
        assert_eq!(r3.inv(&elt(&r3, &[1, 1])).unwrap(), elt(&r3, &[1, -1, 1]));
    }

    #[test]
    fn unit_criterion_is_exhaustive() {
        for (p, m, k) in [(3, 1, 2), (3, 2, 2), (5, 1, 3), (3, 1, 4), (7, 1, 2)] {
            let r = ring(p, m, k);
            for a in r.elements() {
                let has_inverse = r.elements().any(|b| r.is_one(&r.mul(&a, &b)));
                assert_eq!(has_inverse, r.mu(&a) != Fq::ZERO);
            }
        }
    }

    #[test]
    fn projections() {
        let r3 = ring(7, 1, 3);
        let a = elt(&r3, &[3, 5, 2]);
        assert_eq!(r3.mu(&a), r3.field().from_int(3));
        assert_eq!(r3.pi(&a).unwrap().as_slice(), &elt(&r3, &[3, 5])[..2]);
        assert_eq!(ring(7, 1, 1).pi(&elt(&ring(7, 1, 1), &[1])), Err(ChainError::KTooSmall(2)));
    }

    #[test]
    fn automorphism_examples() {
        let r2 = ring(7, 1, 2);
        let phi = r2.automorphism(FieldAutomorphism::identity(), &[elt(&r2, &[2])]).unwrap();
        assert_eq!(r2.apply(&phi, &r2.u_pow(1)), elt(&r2, &[0, 2]));
        let r3 = ring(3, 1, 3);
        let phi = r3
            .automorphism(FieldAutomorphism::identity(), &[elt(&r3, &[2]), elt(&r3, &[1, 1])])
            .unwrap();
        assert_eq!(r3.apply(&phi, &r3.u_pow(1)), elt(&r3, &[0, 2, 2]));
        let eta3 = r2.automorphism(FieldAutomorphism::identity(), &[elt(&r2, &[3])]).unwrap();
        assert_eq!(r2.automorphism_order(&eta3), 6);
        let f55 = ChainRing::new(Field::conway(5, 5).unwrap(), 1).unwrap();
        let frob = f55.automorphism(FieldAutomorphism { exponent: 1 }, &[]).unwrap();
        assert_eq!(f55.automorphism_order(&frob), 5);
        assert_eq!(f55.automorphism_order(&f55.identity()), 1);
    }

    #[test]
    fn eta_validation() {
        let r3 = ring(3, 1, 3);
        let id = FieldAutomorphism::identity();
        assert!(matches!(r3.automorphism(id, &[elt(&r3, &[2])]), Err(ChainError::EtaCount { .. })));
        assert!(matches!(
            r3.automorphism(id, &[elt(&r3, &[1, 1]), elt(&r3, &[1])]),
            Err(ChainError::InvalidEta { index: 1, .. })
        ));
        assert!(matches!(
            r3.automorphism(id, &[elt(&r3, &[1]), elt(&r3, &[2, 1])]),
            Err(ChainError::InvalidEta { index: 2, .. })
        ));
    }

    #[test]
    fn inverse_and_compose_agree() {
        let r = ring(5, 2, 3);
        let autos = r.enumerate_automorphisms(1_000_000).unwrap();
        for a in autos.iter().step_by(37) {
            let inv = r.inverse(a);
            assert!(r.compose(a, &inv).is_identity());
            assert!(r.compose(&inv, a).is_identity());
            let x = elt(&r, &[1, 2, 3]);
            let y = r.apply(a, &r.apply(a, &x));
            assert_eq!(r.apply(&r.compose(a, a), &x), y);
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(ring(3, 1, 2).enumerate_automorphisms(1000).unwrap().len(), 2);
        assert_eq!(ring(3, 1, 3).enumerate_automorphisms(1000).unwrap().len(), 6);
        assert_eq!(ring(3, 2, 1).enumerate_automorphisms(1000).unwrap().len(), 2);
        assert!(matches!(
            ring(7, 2, 3).enumerate_automorphisms(10),
            Err(ChainError::CapExceeded { .. })
        ));
    }

    #[test]
    fn canonical_eta_round_trips() {
        let r = ring(3, 2, 4);
        for a in r.enumerate_automorphisms(100_000).unwrap().iter().step_by(11) {
            let again = r.automorphism(a.theta(), a.eta()).unwrap();
            assert_eq!(&again, a);
        }
    }

    #[test]
    fn format_examples() {
        let r = ring(7, 1, 3);
        assert_eq!(r.format(&elt(&r, &[3, 1, 2])), "3+u+2*u^2");
        assert_eq!(r.format(&r.zero()), "0");
        let r = ChainRing::new(Field::conway(5, 2).unwrap(), 2).unwrap();
        let w = r.field().generator();
        let a = r.from_coeffs(&[w, r.field().add(&w, &r.field().one())]);
        assert_eq!(r.format(&a), "w+(w+1)*u");
    }
}

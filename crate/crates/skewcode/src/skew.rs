//! The skew polynomial ring `R_k[x; Θ]`, with `x·a = Θ(a)·x`.
//!
//! Polynomials are coefficient vectors, lowest degree first, with trailing
//! zeros trimmed. The zero polynomial has degree `None`.

use std::fmt;

use thiserror::Error;

use crate::chain::{Automorphism, ChainError, ChainRing, RingElem};
use crate::field::{Field, Fq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error("leading coefficient of the divisor is not a unit")]
    NonUnitLeadingCoeff,
    #[error("Euclidean step met a non-unit leading coefficient")]
    NonUnitPivot,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("operands live in different skew polynomial rings")]
    MismatchedContext,
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// `Σ c_i x^i` with coefficients in `R_k`, trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SkewPoly {
    coeffs: Vec<RingElem>,
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl SkewPoly {
    /// Trims trailing zero coefficients.
    pub fn new(mut coeffs: Vec<RingElem>) -> SkewPoly {
        while coeffs.last().map(|c| c.iter().all(Fq::is_zero)).unwrap_or(false) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn zero() -> SkewPoly {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<RingElem> {
        self.coeffs
    }

    pub fn leading(&self) -> Option<&RingElem> {
        self.coeffs.last()
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| c.iter().any(|x| !x.is_zero())).count()
    }
}

/// Why a polynomial fails to be central.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralityViolation {
    /// `Θ(a_i) ≠ a_i`.
    CoefficientNotFixed { index: usize },
    /// `a_i·r ≠ Θ^i(r)·a_i` for the generator `r`.
    Commutation { index: usize, generator: RingElem },
    /// `Θ^n` is not the identity.
    PowerNotIdentity { degree: usize },
}

/// `R_k[x; Θ]`.
#[derive(Clone, Debug)]
pub struct SkewRing {
    ring: ChainRing,
    auto: Automorphism,
    auto_inv: Automorphism,
    trivial: bool,
}

impl PartialEq for SkewRing {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.auto == other.auto
    }
}

impl Eq for SkewRing {}

impl SkewRing {
    pub fn new(ring: ChainRing, auto: Automorphism) -> SkewRing {
        let auto_inv = ring.inverse(&auto);
        let trivial = auto.is_identity();
        SkewRing { ring, auto, auto_inv, trivial }
    }

    /// `R_k[x; id]`.
    pub fn commutative(ring: ChainRing) -> SkewRing {
        let id = ring.identity();
        SkewRing::new(ring, id)
    }

    #[inline]
    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    #[inline]
    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    #[inline]
    pub fn auto(&self) -> &Automorphism {
        &self.auto
    }

    /// Whether `Θ` is the identity.
    pub fn is_commutative(&self) -> bool {
        self.trivial
    }

    /// The same ring with `Θ` replaced by the identity.
    pub fn with_identity(&self) -> SkewRing {
        SkewRing::commutative(self.ring.clone())
    }

    /// `F_{p^m}[x; θ]`, the residue of this ring mod `u`.
    pub fn residue(&self) -> SkewRing {
        let ring = ChainRing::new(self.field().clone(), 1).expect("k = 1");
        let auto = ring
            .automorphism_from_multiplier(self.auto.theta(), &ring.one())
            .expect("unit multiplier");
        SkewRing::new(ring, auto)
    }

    /// `Θ^i(a)`.
    pub fn twist(&self, a: &RingElem, i: usize) -> RingElem {
        if self.trivial {
            return a.clone();
        }
        let mut out = a.clone();
        for _ in 0..i {
            out = self.ring.apply(&self.auto, &out);
        }
        out
    }

    /// `Θ^{-i}(a)`.
    pub fn untwist(&self, a: &RingElem, i: usize) -> RingElem {
        if self.trivial {
            return a.clone();
        }
        let mut out = a.clone();
        for _ in 0..i {
            out = self.ring.apply(&self.auto_inv, &out);
        }
        out
    }

    /// `Θ` applied to every coefficient.
    pub fn twist_poly(&self, f: &SkewPoly, i: usize) -> SkewPoly {
        if self.trivial || i == 0 {
            return f.clone();
        }
        SkewPoly::new(f.coeffs.iter().map(|c| self.twist(c, i)).collect())
    }

    pub fn one(&self) -> SkewPoly {
        self.constant(&self.ring.one())
    }

    pub fn x(&self) -> SkewPoly {
        self.monomial(&self.ring.one(), 1)
    }

    pub fn x_pow(&self, n: usize) -> SkewPoly {
        self.monomial(&self.ring.one(), n)
    }

    pub fn constant(&self, a: &RingElem) -> SkewPoly {
        SkewPoly::new(vec![a.clone()])
    }

    pub fn monomial(&self, a: &RingElem, i: usize) -> SkewPoly {
        let mut c = vec![self.ring.zero(); i + 1];
        c[i] = a.clone();
        SkewPoly::new(c)
    }

    /// `x^n - λ`.
    pub fn binomial(&self, n: usize, lambda: &RingElem) -> SkewPoly {
        let mut c = vec![self.ring.zero(); n + 1];
        c[n] = self.ring.one();
        c[0] = self.ring.sub(&c[0], lambda);
        SkewPoly::new(c)
    }

    /// Polynomial from field coefficients, lifted to `R_k`.
    pub fn from_field_coeffs(&self, coeffs: &[Fq]) -> SkewPoly {
        SkewPoly::new(coeffs.iter().map(|c| self.ring.lift(c)).collect())
    }

    /// Coefficient `i` (zero past the degree).
    pub fn coeff(&self, f: &SkewPoly, i: usize) -> RingElem {
        f.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_monic(&self, f: &SkewPoly) -> bool {
        f.leading().map(|c| self.ring.is_one(c)).unwrap_or(false)
    }

    pub fn add(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let n = f.coeffs.len().max(g.coeffs.len());
        SkewPoly::new((0..n).map(|i| self.ring.add(&self.coeff(f, i), &self.coeff(g, i))).collect())
    }

    pub fn sub(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let n = f.coeffs.len().max(g.coeffs.len());
        SkewPoly::new((0..n).map(|i| self.ring.sub(&self.coeff(f, i), &self.coeff(g, i))).collect())
    }

    pub fn neg(&self, f: &SkewPoly) -> SkewPoly {
        SkewPoly::new(f.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }

    /// `a·f`.
    pub fn scale_left(&self, a: &RingElem, f: &SkewPoly) -> SkewPoly {
        SkewPoly::new(f.coeffs.iter().map(|c| self.ring.mul(a, c)).collect())
    }

    /// `f·a = Σ f_i Θ^i(a) x^i`.
    pub fn scale_right(&self, f: &SkewPoly, a: &RingElem) -> SkewPoly {
        let mut tw = a.clone();
        let mut out = Vec::with_capacity(f.coeffs.len());
        for c in &f.coeffs {
            out.push(self.ring.mul(c, &tw));
            if !self.trivial {
                tw = self.ring.apply(&self.auto, &tw);
            }
        }
        SkewPoly::new(out)
    }

    /// `f·u^t` (equal to `u^t·f` when `Θ` fixes `u^t` up to units).
    pub fn shift_u(&self, f: &SkewPoly, t: usize) -> SkewPoly {
        SkewPoly::new(f.coeffs.iter().map(|c| self.ring.shift_up(c, t)).collect())
    }

    /// `x^n·f`.
    pub fn mul_x_left(&self, f: &SkewPoly, n: usize) -> SkewPoly {
        if f.is_zero() {
            return SkewPoly::zero();
        }
        let mut c = vec![self.ring.zero(); n];
        c.extend(f.coeffs.iter().map(|a| self.twist(a, n)));
        SkewPoly::new(c)
    }

    /// `f·g`, using `(a x^i)(b x^j) = a Θ^i(b) x^{i+j}`.
    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        if f.is_zero() || g.is_zero() {
            return SkewPoly::zero();
        }
        let ring = &self.ring;
        let mut out = vec![ring.zero(); f.coeffs.len() + g.coeffs.len() - 1];
        let mut tw: Vec<RingElem> = g.coeffs.clone();
        for (i, a) in f.coeffs.iter().enumerate() {
            if i > 0 && !self.trivial {
                for c in tw.iter_mut() {
                    *c = ring.apply(&self.auto, c);
                }
            }
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in tw.iter().enumerate() {
                if !ring.is_zero(b) {
                    out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
                }
            }
        }
        SkewPoly::new(out)
    }

    pub fn pow(&self, f: &SkewPoly, mut e: u64) -> SkewPoly {
        let mut base = f.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Product of a list, left to right.
    pub fn product<'a>(&self, fs: impl IntoIterator<Item = &'a SkewPoly>) -> SkewPoly {
        fs.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `(q, r)` with `g = q·f + r` and `deg r < deg f`.
    pub fn right_divmod(&self, g: &SkewPoly, f: &SkewPoly) -> Result<(SkewPoly, SkewPoly), SkewError> {
        let d = f.degree().ok_or(SkewError::ZeroPolynomial)?;
        let lc = f.leading().expect("nonzero");
        if !self.ring.is_unit(lc) {
            return Err(SkewError::NonUnitLeadingCoeff);
        }
        let ring = &self.ring;
        let mut r = g.coeffs.clone();
        let Some(dg) = g.degree().filter(|&e| e >= d) else {
            return Ok((SkewPoly::zero(), g.clone()));
        };
        let mut q = vec![ring.zero(); dg - d + 1];
        // twisted[j] = Θ^j(f)
        let mut twisted: Vec<Vec<RingElem>> = Vec::with_capacity(dg - d + 1);
        twisted.push(f.coeffs.clone());
        for j in 1..=dg - d {
            let prev = &twisted[j - 1];
            let next = if self.trivial {
                prev.clone()
            } else {
                prev.iter().map(|c| ring.apply(&self.auto, c)).collect()
            };
            twisted.push(next);
        }
        let lc_inv: Vec<RingElem> = twisted
            .iter()
            .map(|t| ring.inv(t.last().expect("nonzero")).expect("twist of a unit"))
            .collect();
        for e in (d..=dg).rev() {
            if ring.is_zero(&r[e]) {
                continue;
            }
            let j = e - d;
            let c = ring.mul(&r[e], &lc_inv[j]);
            for (i, fi) in twisted[j].iter().enumerate() {
                if !ring.is_zero(fi) {
                    r[i + j] = ring.sub(&r[i + j], &ring.mul(&c, fi));
                }
            }
            debug_assert!(ring.is_zero(&r[e]));
            q[j] = c;
        }
        r.truncate(d);
        Ok((SkewPoly::new(q), SkewPoly::new(r)))
    }

    /// `g mod_r f`.
    pub fn rem_right(&self, g: &SkewPoly, f: &SkewPoly) -> Result<SkewPoly, SkewError> {
        Ok(self.right_divmod(g, f)?.1)
    }

    /// `(q, r)` with `g = f·q + r` and `deg r < deg f`.
    pub fn left_divmod(&self, g: &SkewPoly, f: &SkewPoly) -> Result<(SkewPoly, SkewPoly), SkewError> {
        let d = f.degree().ok_or(SkewError::ZeroPolynomial)?;
        let lc = f.leading().expect("nonzero");
        if !self.ring.is_unit(lc) {
            return Err(SkewError::NonUnitLeadingCoeff);
        }
        let ring = &self.ring;
        let lc_inv = ring.inv(lc)?;
        let mut r = g.clone();
        let Some(dg) = g.degree().filter(|&e| e >= d) else {
            return Ok((SkewPoly::zero(), g.clone()));
        };
        let mut q = vec![ring.zero(); dg - d + 1];
        while let Some(e) = r.degree().filter(|&e| e >= d) {
            let j = e - d;
            let c = self.untwist(&ring.mul(&lc_inv, r.leading().expect("nonzero")), d);
            let term = self.mul_x_right(&self.scale_right(f, &c), j);
            r = self.sub(&r, &term);
            debug_assert!(r.degree().map(|x| x < e).unwrap_or(true));
            q[j] = c;
        }
        Ok((SkewPoly::new(q), r))
    }

    /// `f·x^n`.
    pub fn mul_x_right(&self, f: &SkewPoly, n: usize) -> SkewPoly {
        if f.is_zero() {
            return SkewPoly::zero();
        }
        let mut c = vec![self.ring.zero(); n];
        c.extend(f.coeffs.iter().cloned());
        SkewPoly::new(c)
    }

    /// Whether `f` right-divides `g`.
    pub fn right_divides(&self, f: &SkewPoly, g: &SkewPoly) -> Result<bool, SkewError> {
        Ok(self.rem_right(g, f)?.is_zero())
    }

    /// Multiplies by the inverse of the leading coefficient on the left.
    pub fn make_monic(&self, f: &SkewPoly) -> Result<SkewPoly, SkewError> {
        let lc = f.leading().ok_or(SkewError::ZeroPolynomial)?;
        let inv = self.ring.inv(lc).map_err(|_| SkewError::NonUnitLeadingCoeff)?;
        Ok(self.scale_left(&inv, f))
    }

    /// `(d, a, b)` with `a·f + b·g = d`, `d` the monic right gcd.
    pub fn gcd_right_extended(
        &self,
        f: &SkewPoly,
        g: &SkewPoly,
    ) -> Result<(SkewPoly, SkewPoly, SkewPoly), SkewError> {
        let (mut r0, mut a0, mut b0) = (f.clone(), self.one(), SkewPoly::zero());
        let (mut r1, mut a1, mut b1) = (g.clone(), SkewPoly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r2) = self.right_divmod(&r0, &r1).map_err(|e| match e {
                SkewError::NonUnitLeadingCoeff => SkewError::NonUnitPivot,
                other => other,
            })?;
            let a2 = self.sub(&a0, &self.mul(&q, &a1));
            let b2 = self.sub(&b0, &self.mul(&q, &b1));
            (r0, a0, b0) = (r1, a1, b1);
            (r1, a1, b1) = (r2, a2, b2);
        }
        if r0.is_zero() {
            return Ok((r0, a0, b0));
        }
        let lc = r0.leading().expect("nonzero");
        let inv = self.ring.inv(lc).map_err(|_| SkewError::NonUnitPivot)?;
        let d = self.scale_left(&inv, &r0);
        let a = self.scale_left(&inv, &a0);
        let b = self.scale_left(&inv, &b0);
        debug_assert_eq!(self.add(&self.mul(&a, f), &self.mul(&b, g)), d);
        Ok((d, a, b))
    }

    /// Monic right gcd of a list of polynomials.
    pub fn gcd_right_all<'a>(
        &self,
        fs: impl IntoIterator<Item = &'a SkewPoly>,
    ) -> Result<SkewPoly, SkewError> {
        let mut acc = SkewPoly::zero();
        for f in fs {
            acc = self.gcd_right_extended(&acc, f)?.0;
        }
        Ok(acc)
    }

    /// First failing condition of the centrality criterion for a monic `f`,
    /// or `None` when `f` is central.
    pub fn centrality_violation(&self, f: &SkewPoly) -> Result<Option<CentralityViolation>, SkewError> {
        if !self.is_monic(f) {
            return Err(SkewError::NonMonic);
        }
        let n = f.degree().expect("monic");
        let ring = &self.ring;
        for (i, a) in f.coeffs.iter().enumerate().take(n) {
            if ring.apply(&self.auto, a) != *a {
                return Ok(Some(CentralityViolation::CoefficientNotFixed { index: i }));
            }
        }
        let generators = [ring.lift(&self.field().generator()), ring.u_pow(1)];
        for (i, a) in f.coeffs.iter().enumerate().take(n) {
            if ring.is_zero(a) {
                continue;
            }
            for r in &generators {
                if ring.mul(a, r) != ring.mul(&self.twist(r, i), a) {
                    return Ok(Some(CentralityViolation::Commutation { index: i, generator: r.clone() }));
                }
            }
        }
        if !ring.automorphism_pow(&self.auto, n as u64).is_identity() {
            return Ok(Some(CentralityViolation::PowerNotIdentity { degree: n }));
        }
        Ok(None)
    }

    pub fn is_central(&self, f: &SkewPoly) -> Result<bool, SkewError> {
        Ok(self.centrality_violation(f)?.is_none())
    }

    /// `f* = Σ Θ(b_{r-i}) x^i` for `f` of degree `r`.
    pub fn reciprocal(&self, f: &SkewPoly) -> Result<SkewPoly, SkewError> {
        let r = f.degree().ok_or(SkewError::ZeroPolynomial)?;
        Ok(SkewPoly::new(
            (0..=r).map(|i| self.ring.apply(&self.auto, &f.coeffs[r - i])).collect(),
        ))
    }

    /// `Σ Θ^i(b_{r-i}) x^i` for a chosen `r >= deg f`: the vector orthogonal to
    /// every codeword `c` whose product `c·f` has vanishing coefficient at `x^r`.
    pub fn orthogonal_reciprocal(&self, f: &SkewPoly, r: usize) -> SkewPoly {
        SkewPoly::new(
            (0..=r)
                .map(|i| {
                    let b = f.coeffs.get(r - i).cloned().unwrap_or_else(|| self.ring.zero());
                    self.twist(&b, i)
                })
                .collect(),
        )
    }

    /// Remainder of `f` on right division by `x - a`, via `N_i(a) = Θ^{i-1}(a)·N_{i-1}(a)`.
    pub fn eval_right_remainder(&self, f: &SkewPoly, a: &RingElem) -> RingElem {
        let ring = &self.ring;
        let mut acc = ring.zero();
        let mut norm = ring.one();
        let mut tw = a.clone();
        for (i, c) in f.coeffs.iter().enumerate() {
            if i > 0 {
                norm = ring.mul(&tw, &norm);
                if !self.trivial {
                    tw = ring.apply(&self.auto, &tw);
                }
            }
            acc = ring.add(&acc, &ring.mul(c, &norm));
        }
        acc
    }

    /// The residue polynomial `μ(f)` in [`SkewRing::residue`].
    pub fn mu_poly(&self, f: &SkewPoly) -> SkewPoly {
        let res = self.residue();
        SkewPoly::new(f.coeffs.iter().map(|c| res.ring.lift(&c[0])).collect())
    }

    /// Embeds a residue-ring polynomial into this ring.
    pub fn lift_poly(&self, f: &SkewPoly) -> SkewPoly {
        SkewPoly::new(f.coeffs.iter().map(|c| self.ring.lift(&c[0])).collect())
    }

    /// Coefficient vector of length `n` (zero padded).
    pub fn to_vector(&self, f: &SkewPoly, n: usize) -> Vec<RingElem> {
        (0..n).map(|i| self.coeff(f, i)).collect()
    }

    pub fn from_vector(&self, v: &[RingElem]) -> SkewPoly {
        SkewPoly::new(v.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldAutomorphism;

    fn f9_frob() -> SkewRing {
        let f = Field::new(3, &[1, 0, 1]).unwrap();
        let r = ChainRing::new(f, 1).unwrap();
        let a = r.automorphism(FieldAutomorphism { exponent: 1 }, &[]).unwrap();
        SkewRing::new(r, a)
    }

    fn poly(s: &SkewRing, c: &[i64]) -> SkewPoly {
        SkewPoly::new(c.iter().map(|&v| s.ring().from_int(v)).collect())
    }

    #[test]
    fn x_times_t_twists() {
        let s = f9_frob();
        let t = s.constant(&s.ring().lift(&s.field().generator()));
        let lhs = s.mul(&s.x(), &t);
        let expected = s.monomial(&s.ring().lift(&s.field().scale(&s.field().generator(), 2)), 1);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn non_commutative_products() {
        let s = f9_frob();
        let t = s.ring().lift(&s.field().generator());
        let two_t = s.ring().lift(&s.field().scale(&s.field().generator(), 2));
        let a = s.sub(&s.x(), &s.constant(&t));
        let b = s.sub(&s.x(), &s.constant(&two_t));
        assert_ne!(s.mul(&a, &b), s.mul(&b, &a));
    }

    #[test]
    fn commutative_division_and_gcd() {
        let s = SkewRing::commutative(ChainRing::new(Field::prime(7).unwrap(), 1).unwrap());
        let g = poly(&s, &[-1, 0, 1]);
        let f = poly(&s, &[-1, 1]);
        let (q, r) = s.right_divmod(&g, &f).unwrap();
        assert_eq!(q, poly(&s, &[1, 1]));
        assert!(r.is_zero());
        let (d, _, _) = s.gcd_right_extended(&g, &poly(&s, &[0, 1, 1])).unwrap();
        assert_eq!(d, poly(&s, &[1, 1]));
        let (d, _, _) = s.gcd_right_extended(&poly(&s, &[2, 4]), &SkewPoly::zero()).unwrap();
        assert_eq!(d, poly(&s, &[4, 1]));
    }

    #[test]
    fn centrality_examples() {
        let s = f9_frob();
        let v = s.centrality_violation(&poly(&s, &[-1, 1])).unwrap();
        assert_eq!(v, Some(CentralityViolation::PowerNotIdentity { degree: 1 }));
        assert!(s.is_central(&poly(&s, &[-1, 0, 1])).unwrap());
        assert_eq!(s.is_central(&poly(&s, &[1, 2])), Err(SkewError::NonMonic));
        let t = s.ring().lift(&s.field().generator());
        let f = SkewPoly::new(vec![t, s.ring().zero(), s.ring().one()]);
        assert_eq!(
            s.centrality_violation(&f).unwrap(),
            Some(CentralityViolation::CoefficientNotFixed { index: 0 })
        );
    }

    #[test]
    fn reciprocal_examples() {
        let s = SkewRing::commutative(ChainRing::new(Field::prime(7).unwrap(), 1).unwrap());
        assert_eq!(s.reciprocal(&poly(&s, &[0, 0, 0, 1])).unwrap(), s.one());
        let pal = poly(&s, &[2, 3, 2]);
        assert_eq!(s.reciprocal(&pal).unwrap(), pal);
        let d = 3;
        let f = poly(&s, &[d * d, d, 1]);
        assert_eq!(s.reciprocal(&f).unwrap(), poly(&s, &[1, d, d * d]));
        assert_eq!(s.reciprocal(&SkewPoly::zero()), Err(SkewError::ZeroPolynomial));
    }

    #[test]
    fn freshman_power() {
        let s = SkewRing::commutative(ChainRing::new(Field::prime(5).unwrap(), 1).unwrap());
        let f = poly(&s, &[-1, 1]);
        assert_eq!(s.pow(&f, 5), poly(&s, &[-1, 0, 0, 0, 0, 1]));
        assert_eq!(s.pow(&f, 0), s.one());
    }

    #[test]
    fn evaluation_of_linear_factor_vanishes() {
        let s = f9_frob();
        let t = s.ring().lift(&s.field().generator());
        let f = s.sub(&s.x(), &s.constant(&t));
        assert!(s.ring().is_zero(&s.eval_right_remainder(&f, &t)));
    }
}

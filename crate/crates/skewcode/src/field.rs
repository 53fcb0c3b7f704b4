//! Arithmetic in `F_p` and `F_{p^m}`.
//!
//! A [`Field`] is a cheap-to-clone handle on immutable parameters. Elements
//! ([`Fq`]) are plain residue vectors interpreted by the handle that created
//! them, so all operations go through the handle:
//!
//! ```
//! use skewcode::field::Field;
//!
//! let f9 = Field::new(3, &[1, 0, 1]).unwrap(); // F_3[t]/(t^2 + 1)
//! let t = f9.generator();
//! assert_eq!(f9.mul(&t, &t), f9.from_int(2));
//! assert_eq!(f9.frobenius(&t, 1), f9.scale(&t, 2));
//! ```

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::conway;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 8;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("extension degree {0} outside 1..={MAX_DEGREE}")]
    UnsupportedDegree(usize),
    #[error("field order {0} exceeds {MAX_ORDER}")]
    TooLarge(u64),
    #[error("modulus must be monic")]
    NotMonic,
    #[error("modulus is reducible over F_p")]
    Reducible,
    #[error("no built-in Conway polynomial for F_{{{p}^{m}}}")]
    NoConwayPolynomial { p: u32, m: usize },
    #[error("coefficient vector has {got} entries, expected at most {max}")]
    BadLength { got: usize, max: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined at zero")]
    ZeroInput,
    #[error("elements belong to different fields")]
    MismatchedField,
}

/// Element of `F_{p^m}`: residues of `c_0 + c_1 w + ... + c_{m-1} w^{m-1}`.
///
/// Unused slots are zero, so derived equality, hashing and ordering are
/// canonical. The derived order compares `c_0` first; it is the encoding order
/// used for every "least element" tie-break in the crate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq([u32; MAX_DEGREE]);

impl Fq {
    pub const ZERO: Fq = Fq([0; MAX_DEGREE]);

    #[inline]
    pub fn coeffs(&self) -> &[u32; MAX_DEGREE] {
        &self.0
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// The map `a -> a^{p^e}` with `0 <= e < m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldAutomorphism {
    pub exponent: usize,
}

impl FieldAutomorphism {
    pub fn identity() -> Self {
        FieldAutomorphism { exponent: 0 }
    }

    pub fn compose(self, other: Self, m: usize) -> Self {
        FieldAutomorphism { exponent: (self.exponent + other.exponent) % m }
    }

    pub fn inverse(self, m: usize) -> Self {
        FieldAutomorphism { exponent: (m - self.exponent % m) % m }
    }

    pub fn order(self, m: usize) -> usize {
        m / gcd(m, self.exponent % m)
    }
}

struct Inner {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
    order: u64,
    // frob[e][j] = w^{j p^e}
    frob: Vec<Vec<Fq>>,
}

/// Handle on `F_p[w]/(modulus)`.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.m, self.0.modulus)
    }
}

impl Field {
    /// Builds `F_p[w]/(modulus)`; `modulus` is low-to-high, monic, irreducible.
    pub fn new(p: u32, modulus: &[u32]) -> Result<Field, FieldError> {
        if !is_odd_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        let modulus: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        let m = modulus.len().saturating_sub(1);
        if m == 0 || m > MAX_DEGREE {
            return Err(FieldError::UnsupportedDegree(m));
        }
        let order = (p as u64).checked_pow(m as u32).filter(|&q| q <= MAX_ORDER);
        let order = order.ok_or(FieldError::TooLarge((p as u64).saturating_pow(m as u32)))?;
        if modulus[m] != 1 {
            return Err(FieldError::NotMonic);
        }
        if !is_irreducible_mod_p(&modulus, p) {
            return Err(FieldError::Reducible);
        }
        let mut field = Field(Arc::new(Inner { p, m, modulus, order, frob: Vec::new() }));
        let frob = field.build_frobenius_tables();
        Arc::get_mut(&mut field.0).expect("fresh handle").frob = frob;
        Ok(field)
    }

    /// The prime field `F_p`, represented with modulus `w - g` for the least
    /// primitive root `g`, so that `w` is a generator of `F_p^*`.
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Field::conway(p, 1)
    }

    /// `F_{p^m}` defined by the built-in Conway polynomial.
    pub fn conway(p: u32, m: usize) -> Result<Field, FieldError> {
        if !is_odd_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        match conway::lookup(p, m) {
            Some(c) => Field::new(p, &c),
            None if m == 1 => {
                let g = (2..p).find(|&g| prime_root_order(g, p) == p - 1).unwrap_or(1);
                Field::new(p, &[p - g, 1])
            }
            None => Err(FieldError::NoConwayPolynomial { p, m }),
        }
    }

    fn build_frobenius_tables(&self) -> Vec<Vec<Fq>> {
        let m = self.m();
        let mut tables = Vec::with_capacity(m);
        let mut images: Vec<Fq> = (0..m).map(|j| self.monomial(j)).collect();
        for _ in 0..m {
            tables.push(images.clone());
            images = images.iter().map(|a| self.pow(a, self.p() as u64)).collect();
        }
        tables
    }

    fn monomial(&self, j: usize) -> Fq {
        let mut w = self.one();
        let g = self.raw_generator();
        for _ in 0..j {
            w = self.mul(&w, &g);
        }
        w
    }

    fn raw_generator(&self) -> Fq {
        if self.m() == 1 {
            self.from_int(-(self.0.modulus[0] as i64))
        } else {
            let mut c = [0; MAX_DEGREE];
            c[1] = 1;
            Fq(c)
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.0.m
    }

    /// Number of elements `p^m`.
    #[inline]
    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Modulus coefficients, low-to-high.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        self.from_int(1)
    }

    /// The class of `w`.
    pub fn generator(&self) -> Fq {
        self.raw_generator()
    }

    pub fn from_int(&self, v: i64) -> Fq {
        let mut c = [0; MAX_DEGREE];
        c[0] = v.rem_euclid(self.p() as i64) as u32;
        Fq(c)
    }

    /// Element from low-to-high coefficients, reduced mod `p`.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fq, FieldError> {
        if coeffs.len() > self.m() {
            return Err(FieldError::BadLength { got: coeffs.len(), max: self.m() });
        }
        let mut c = [0; MAX_DEGREE];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v % self.p();
        }
        Ok(Fq(c))
    }

    /// The `m` coefficients of `a`, low-to-high.
    pub fn coeffs<'a>(&self, a: &'a Fq) -> &'a [u32] {
        &a.0[..self.m()]
    }

    /// The element at position `rank` of the encoding order.
    pub fn element(&self, rank: u64) -> Fq {
        debug_assert!(rank < self.order());
        let p = self.p() as u64;
        let mut c = [0; MAX_DEGREE];
        let mut r = rank;
        for i in (0..self.m()).rev() {
            c[i] = (r % p) as u32;
            r /= p;
        }
        Fq(c)
    }

    /// Position of `a` in the encoding order.
    pub fn rank(&self, a: &Fq) -> u64 {
        let p = self.p() as u64;
        self.coeffs(a).iter().fold(0, |acc, &c| acc * p + c as u64)
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.order()).map(move |r| self.element(r))
    }

    #[inline]
    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        let p = self.p();
        let mut c = [0; MAX_DEGREE];
        for i in 0..self.m() {
            let s = a.0[i] + b.0[i];
            c[i] = if s >= p { s - p } else { s };
        }
        Fq(c)
    }

    #[inline]
    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        let p = self.p();
        let mut c = [0; MAX_DEGREE];
        for i in 0..self.m() {
            c[i] = if a.0[i] >= b.0[i] { a.0[i] - b.0[i] } else { a.0[i] + p - b.0[i] };
        }
        Fq(c)
    }

    #[inline]
    pub fn neg(&self, a: &Fq) -> Fq {
        self.sub(&Fq::ZERO, a)
    }

    /// Multiplication by the integer `s`.
    pub fn scale(&self, a: &Fq, s: u32) -> Fq {
        let p = self.p() as u64;
        let s = s as u64 % p;
        let mut c = [0; MAX_DEGREE];
        for i in 0..self.m() {
            c[i] = (a.0[i] as u64 * s % p) as u32;
        }
        Fq(c)
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let m = self.m();
        let p = self.p() as u64;
        if m == 1 {
            return self.from_int((a.0[0] as u64 * b.0[0] as u64 % p) as i64);
        }
        // p < 3163 whenever m >= 2, so the unreduced sums below stay far from u64::MAX
        let mut t = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            let ai = a.0[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..m {
                t[i + j] += ai * b.0[j] as u64;
            }
        }
        let modulus = &self.0.modulus;
        for d in (m..2 * m - 1).rev() {
            let c = t[d] % p;
            if c != 0 {
                for i in 0..m {
                    t[d - m + i] += (p - modulus[i] as u64) * c;
                }
            }
        }
        let mut out = [0; MAX_DEGREE];
        for i in 0..m {
            out[i] = (t[i] % p) as u32;
        }
        Fq(out)
    }

    pub fn square(&self, a: &Fq) -> Fq {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Fq, mut e: u64) -> Fq {
        let mut base = *a;
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

    pub fn inv(&self, a: &Fq) -> Result<Fq, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: &Fq, b: &Fq) -> Result<Fq, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^{p^e}`; the exponent is taken mod `m`.
    pub fn frobenius(&self, a: &Fq, e: usize) -> Fq {
        let m = self.m();
        let e = e % m;
        if e == 0 || m == 1 {
            return *a;
        }
        let p = self.p() as u64;
        let table = &self.0.frob[e];
        let mut acc = [0u64; MAX_DEGREE];
        for j in 0..m {
            let c = a.0[j] as u64;
            if c == 0 {
                continue;
            }
            for (i, slot) in acc.iter_mut().enumerate().take(m) {
                *slot += c * table[j].0[i] as u64;
            }
        }
        let mut out = [0; MAX_DEGREE];
        for i in 0..m {
            out[i] = (acc[i] % p) as u32;
        }
        Fq(out)
    }

    pub fn apply(&self, theta: FieldAutomorphism, a: &Fq) -> Fq {
        self.frobenius(a, theta.exponent)
    }

    pub fn is_in_prime_field(&self, a: &Fq) -> bool {
        a.0[1..].iter().all(|&c| c == 0)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &Fq) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        let mut ord = self.order() - 1;
        for (r, _) in factorize(ord) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// The least generator `xi` of `F_p^*`, found by scanning `2, 3, ...`.
    pub fn prime_field_generator(&self) -> Fq {
        let p = self.p();
        let g = (1..p).find(|&g| prime_root_order(g, p) == p - 1).expect("F_p^* is cyclic");
        self.from_int(g as i64)
    }

    /// Least-encoded element of multiplicative order exactly `n`.
    pub fn primitive_root_of_unity(&self, n: u64) -> Option<Fq> {
        if n == 0 || !(self.order() - 1).is_multiple_of(n) {
            return None;
        }
        self.elements()
            .skip(1)
            .find(|a| self.multiplicative_order(a).ok() == Some(n))
    }

    /// Least-encoded `omega` with `omega^2 + omega + 1 = 0`, if `3 | p^m - 1`.
    pub fn primitive_cube_root_of_unity(&self) -> Option<Fq> {
        let roots = self.cube_roots(&self.one()).ok()?;
        roots.into_iter().find(|w| *w != self.one())
    }

    /// All `x` with `x^r = a` for a prime `r`, sorted by encoding.
    pub fn prime_roots(&self, a: &Fq, r: u64) -> Result<Vec<Fq>, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        let n = self.order() - 1;
        if !n.is_multiple_of(r) {
            let e = mod_inverse(r % n, n).expect("r coprime to q - 1");
            return Ok(vec![self.pow(a, e)]);
        }
        if self.pow(a, n / r) != self.one() {
            return Ok(Vec::new());
        }
        let mut t = 0;
        let mut odd = n;
        while odd.is_multiple_of(r) {
            odd /= r;
            t += 1;
        }
        // x^r = a * b with b in the r-Sylow subgroup
        let e = if odd == 1 { 0 } else { mod_inverse(r % odd, odd).expect("coprime") };
        let x = self.pow(a, e);
        let b = self.div(&self.pow(&x, r), a)?;
        let z = self
            .elements()
            .skip(1)
            .find(|z| self.pow(z, n / r) != self.one())
            .expect("a non-residue exists when r | q - 1");
        let g = self.pow(&z, odd);
        let sylow = r.pow(t);
        let target = self.inv(&b)?;
        let mut acc = self.one();
        let mut log = None;
        for l in 0..sylow {
            if acc == target {
                log = Some(l);
                break;
            }
            acc = self.mul(&acc, &g);
        }
        let log = log.expect("b lies in the cyclic Sylow subgroup");
        debug_assert_eq!(log % r, 0);
        let root = self.mul(&x, &self.pow(&g, log / r));
        let zeta = self.pow(&g, sylow / r);
        let mut roots = Vec::with_capacity(r as usize);
        let mut cur = root;
        for _ in 0..r {
            roots.push(cur);
            cur = self.mul(&cur, &zeta);
        }
        roots.sort();
        Ok(roots)
    }

    /// All cube roots of a nonzero element, sorted by encoding.
    pub fn cube_roots(&self, a: &Fq) -> Result<Vec<Fq>, FieldError> {
        self.prime_roots(a, 3)
    }

    /// All square roots of a nonzero element, sorted by encoding.
    pub fn square_roots(&self, a: &Fq) -> Result<Vec<Fq>, FieldError> {
        self.prime_roots(a, 2)
    }

    pub fn is_cube(&self, a: &Fq) -> bool {
        a.is_zero() || !self.cube_roots(a).map(|v| v.is_empty()).unwrap_or(true)
    }

    /// The unique `b` with `b^{p^s} = a`.
    pub fn pth_power_root(&self, a: &Fq, s: u64) -> Result<Fq, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        let m = self.m() as u64;
        let r = (s % m) as usize;
        let b = self.frobenius(a, (self.m() - r) % self.m());
        debug_assert_eq!(self.frobenius(&b, r), *a);
        Ok(b)
    }

    /// Renders `a` as a polynomial in `w`, highest power first.
    pub fn format(&self, a: &Fq) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs(a).iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "w".to_string(),
                (1, _) => format!("{c}*w"),
                (_, 1) => format!("w^{i}"),
                _ => format!("{c}*w^{i}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Number of nonzero `w`-terms of `a`.
    pub fn term_count(&self, a: &Fq) -> usize {
        self.coeffs(a).iter().filter(|&&c| c != 0).count()
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_odd_prime(p: u32) -> bool {
    p > 2 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(n as i128) as u64)
}

fn prime_root_order(g: u32, p: u32) -> u32 {
    let mut x = g as u64 % p as u64;
    let mut k = 1;
    while x != 1 {
        x = x * g as u64 % p as u64;
        k += 1;
        if k > p {
            return 0;
        }
    }
    k
}

/// Low-to-high polynomial arithmetic over `F_p`, used for modulus checks.
mod fp_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let p64 = p as u64;
        let mut r: Vec<u32> = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = super::mod_inverse(b[db] as u64, p64).expect("nonzero lead");
        while r.len() > db {
            let c = *r.last().unwrap() as u64 * lead_inv % p64;
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                let sub = c * bi as u64 % p64;
                r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
            }
            r = trim(r);
        }
        r
    }
}

/// Trial division by every monic polynomial of degree at most `deg/2`.
pub fn is_irreducible_mod_p(poly: &[u32], p: u32) -> bool {
    let poly = fp_poly::trim(poly.iter().map(|&c| c % p).collect());
    let n = match poly.len().checked_sub(1) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut r = idx;
            for _ in 0..d {
                div.push((r % p as u64) as u32);
                r /= p as u64;
            }
            div.push(1);
            if fp_poly::rem(&poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

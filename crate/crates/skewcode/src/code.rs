//! Codes as left ideals of `R_k[x; Θ]/(M)` with `M` monic and central.
//!
//! A code is stored as an `F_{p^m}`-subspace of `F^{kN}` in reduced row echelon
//! form. A polynomial `Σ_i Σ_t c_{t,i} u^t x^i` is flattened so that
//! coordinate `t·N + (N-1-i)` holds `c_{t,i}`: lower `u`-layers come first and
//! degrees run downwards inside a layer. With this order the echelon rows that
//! pivot in layer `t` span the layer-`t` parts of the codewords divisible by
//! `u^t`, which is exactly the torsion code `Tor_{t+1}`.

use thiserror::Error;

use crate::chain::{ChainError, ChainRing, RingElem};
use crate::crt::{CrtError, CrtSystem};
use crate::field::{Field, FieldError, Fq};
use crate::linalg::{ChainEchelon, FieldEchelon};
use crate::skew::{SkewError, SkewPoly, SkewRing};

/// Largest ambient `|R_k|^N` accepted by [`enumerate_ideals`].
pub const ENUMERATION_SIZE_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("modulus must be monic of positive degree")]
    NonMonicModulus,
    #[error("modulus is not central")]
    NotCentral,
    #[error("generator of degree {degree} is not reduced mod a modulus of degree {n}")]
    NotReduced { degree: usize, n: usize },
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("unsupported ambient: {0}")]
    UnsupportedAmbient(String),
    #[error("index {index} outside 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("ambient has p^{log_p} elements, above the exhaustive cap")]
    NotDeskScale { log_p: u64 },
    #[error("more than {cap} candidates")]
    CapExceeded { cap: u64 },
    #[error("the automorphism moves the scaling element")]
    AutomorphismMovesAlpha,
    #[error("codes live in different ambients")]
    AmbientMismatch,
    #[error("internal check failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Crt(#[from] CrtError),
}

/// `R_k[x; Θ]/(M)` for a monic central `M` of degree `N`.
#[derive(Debug, Clone)]
pub struct Ambient {
    skew: SkewRing,
    modulus: SkewPoly,
    n: usize,
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        self.skew == other.skew && self.modulus == other.modulus
    }
}

impl Eq for Ambient {}

impl Ambient {
    pub fn new(skew: &SkewRing, modulus: SkewPoly) -> Result<Ambient, CodeError> {
        let n = modulus.degree().filter(|&d| d > 0).ok_or(CodeError::NonMonicModulus)?;
        if !skew.is_monic(&modulus) {
            return Err(CodeError::NonMonicModulus);
        }
        if !skew.is_central(&modulus)? {
            return Err(CodeError::NotCentral);
        }
        Ok(Ambient { skew: skew.clone(), modulus, n })
    }

    /// `R_k[x; Θ]/(x^N - λ)`.
    pub fn constacyclic(skew: &SkewRing, n: usize, lambda: &RingElem) -> Result<Ambient, CodeError> {
        Ambient::new(skew, skew.binomial(n, lambda))
    }

    pub fn skew(&self) -> &SkewRing {
        &self.skew
    }

    pub fn ring(&self) -> &ChainRing {
        self.skew.ring()
    }

    pub fn field(&self) -> &Field {
        self.skew.field()
    }

    pub fn modulus(&self) -> &SkewPoly {
        &self.modulus
    }

    /// Code length `N`.
    pub fn length(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.ring().k()
    }

    /// Dimension of the ambient over `F_{p^m}`.
    pub fn flat_len(&self) -> usize {
        self.k() * self.n
    }

    /// `log_p` of the number of elements.
    pub fn log_p_size(&self) -> u64 {
        (self.field().m() * self.flat_len()) as u64
    }

    /// `λ` when the modulus is `x^N - λ`.
    pub fn constacyclic_lambda(&self) -> Option<RingElem> {
        let c = self.modulus.coeffs();
        if c[1..self.n].iter().all(|x| self.ring().is_zero(x)) {
            Some(self.ring().neg(&c[0]))
        } else {
            None
        }
    }

    /// The residue ambient `F_{p^m}[x; θ]/(μ(M))`.
    pub fn residue(&self) -> Result<Ambient, CodeError> {
        let res = self.skew.residue();
        Ambient::new(&res, self.skew.mu_poly(&self.modulus))
    }

    pub fn reduce(&self, f: &SkewPoly) -> SkewPoly {
        self.skew.rem_right(f, &self.modulus).expect("monic modulus")
    }

    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        self.reduce(&self.skew.mul(f, g))
    }

    pub fn is_reduced(&self, f: &SkewPoly) -> bool {
        f.degree().map(|d| d < self.n).unwrap_or(true)
    }

    /// Flat coordinates; see the module documentation for the order.
    pub fn to_flat(&self, f: &SkewPoly) -> Vec<Fq> {
        let n = self.n;
        let mut out = vec![Fq::ZERO; self.flat_len()];
        for (i, c) in f.coeffs().iter().enumerate().take(n) {
            for (t, x) in c.iter().enumerate() {
                out[t * n + n - 1 - i] = *x;
            }
        }
        out
    }

    pub fn from_flat(&self, v: &[Fq]) -> SkewPoly {
        let n = self.n;
        let k = self.k();
        SkewPoly::new((0..n).map(|i| (0..k).map(|t| v[t * n + n - 1 - i]).collect()).collect())
    }

    /// Coordinate vector `(c_0, …, c_{N-1})`.
    pub fn to_vector(&self, f: &SkewPoly) -> Vec<RingElem> {
        self.skew.to_vector(f, self.n)
    }

    pub fn from_vector(&self, v: &[RingElem]) -> Result<SkewPoly, CodeError> {
        self.check_len(v.len())?;
        Ok(self.skew.from_vector(v))
    }

    fn check_len(&self, got: usize) -> Result<(), CodeError> {
        if got != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, got });
        }
        Ok(())
    }

    /// The polycyclic shift, i.e. multiplication by `x` in coordinates.
    pub fn shift(&self, v: &[RingElem]) -> Result<Vec<RingElem>, CodeError> {
        polycyclic_shift(&self.skew, v, &self.modulus)
    }

    /// Layer `t` of a flat vector as a residue polynomial.
    fn layer_poly(&self, res: &SkewRing, v: &[Fq], t: usize) -> SkewPoly {
        let n = self.n;
        res.from_field_coeffs(&(0..n).map(|i| v[t * n + n - 1 - i]).collect::<Vec<_>>())
    }
}

/// The skew `(f, Θ)`-polycyclic shift for `f = x^N - Σ a_i x^i`:
/// `(c_0, …, c_{N-1}) ↦ (Θ(c_{N-1})a_0, Θ(c_0) + Θ(c_{N-1})a_1, …)`.
pub fn polycyclic_shift(s: &SkewRing, v: &[RingElem], f: &SkewPoly) -> Result<Vec<RingElem>, CodeError> {
    let n = f.degree().filter(|&d| d > 0 && s.is_monic(f)).ok_or(CodeError::NonMonicModulus)?;
    if v.len() != n {
        return Err(CodeError::LengthMismatch { expected: n, got: v.len() });
    }
    let r = s.ring();
    let top = s.twist(&v[n - 1], 1);
    Ok((0..n)
        .map(|i| {
            let a_i = r.neg(&f.coeffs()[i]);
            let wrap = r.mul(&top, &a_i);
            if i == 0 {
                wrap
            } else {
                r.add(&s.twist(&v[i - 1], 1), &wrap)
            }
        })
        .collect())
}

/// A left ideal of an [`Ambient`], stored by its `F_{p^m}`-basis.
#[derive(Debug, Clone)]
pub struct LeftIdealCode {
    ambient: Ambient,
    generators: Vec<SkewPoly>,
    basis: FieldEchelon,
}

impl PartialEq for LeftIdealCode {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.n == other.ambient.n && self.basis == other.basis
    }
}

impl Eq for LeftIdealCode {}

/// Monic generators `a_i` of `Tor_i` and the tails `r_{i,j}` so that
/// `C = Σ_i ⟨u^{i-1}a_i + Σ_j u^{i-1+j} r_{i,j}⟩` over the `i` with `a_i ≠ 0`.
///
/// `r[i-1][j-1]` holds `r_{i,j}`; it is empty when `a_i` is zero. All entries
/// are residue polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalIdealForm {
    pub a: Vec<Option<SkewPoly>>,
    pub r: Vec<Vec<SkewPoly>>,
}

/// The four classes of left ideals over `R_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealType {
    /// `{0}` or the whole ambient.
    Trivial,
    /// `⟨u·a_2⟩`.
    NonMonicPrincipal,
    /// `⟨a_1 + u·r⟩`.
    Principal,
    /// `⟨a_1 + u·r, u·a_2⟩` and not principal.
    NonPrincipal,
}

impl IdealType {
    pub fn label(self) -> &'static str {
        match self {
            IdealType::Trivial => "trivial",
            IdealType::NonMonicPrincipal => "non-monic principal",
            IdealType::Principal => "principal",
            IdealType::NonPrincipal => "non-principal",
        }
    }
}

impl LeftIdealCode {
    /// The left ideal generated by `gens`, each of degree below `N`.
    pub fn from_generators(ambient: &Ambient, gens: &[SkewPoly]) -> Result<LeftIdealCode, CodeError> {
        for g in gens {
            if !ambient.is_reduced(g) {
                return Err(CodeError::NotReduced { degree: g.degree().unwrap_or(0), n: ambient.n });
            }
        }
        let s = &ambient.skew;
        let k = ambient.k();
        let full = ambient.flat_len();
        let mut basis = FieldEchelon::new(ambient.field(), full);
        'outer: for g in gens {
            let mut cur = g.clone();
            for _ in 0..ambient.n {
                if cur.is_zero() {
                    break;
                }
                for a in 0..k {
                    basis.insert(ambient.to_flat(&s.shift_u(&cur, a)));
                    if basis.rank() == full {
                        break 'outer;
                    }
                }
                cur = ambient.reduce(&s.mul_x_left(&cur, 1));
            }
        }
        Ok(LeftIdealCode { ambient: ambient.clone(), generators: gens.to_vec(), basis })
    }

    /// The linear code with generator matrix rows `x^i·g`, `0 ≤ i < N - deg g`.
    ///
    /// It equals the left ideal `⟨g⟩` when `g` is monic and right-divides the
    /// modulus; otherwise it need not be closed under the polycyclic shift.
    pub fn from_generator_matrix(ambient: &Ambient, g: &SkewPoly) -> Result<LeftIdealCode, CodeError> {
        let d = g.degree().ok_or(SkewError::ZeroPolynomial)?;
        if d >= ambient.n {
            return Err(CodeError::NotReduced { degree: d, n: ambient.n });
        }
        let s = &ambient.skew;
        let mut basis = FieldEchelon::new(ambient.field(), ambient.flat_len());
        for i in 0..ambient.n - d {
            for a in 0..ambient.k() {
                basis.insert(ambient.to_flat(&s.shift_u(&s.mul_x_left(g, i), a)));
            }
        }
        Ok(LeftIdealCode { ambient: ambient.clone(), generators: vec![g.clone()], basis })
    }

    pub fn zero(ambient: &Ambient) -> LeftIdealCode {
        LeftIdealCode { ambient: ambient.clone(), generators: Vec::new(), basis: FieldEchelon::new(ambient.field(), ambient.flat_len()) }
    }

    pub fn whole(ambient: &Ambient) -> LeftIdealCode {
        LeftIdealCode::from_generators(ambient, &[ambient.skew.one()]).expect("1 is reduced")
    }

    /// Wraps a subspace after checking that it is closed under `x·`.
    pub fn from_subspace(ambient: &Ambient, basis: FieldEchelon) -> Result<LeftIdealCode, CodeError> {
        let code = LeftIdealCode { ambient: ambient.clone(), generators: Vec::new(), basis };
        if !code.is_left_ideal() {
            return Err(CodeError::VerificationFailed("subspace is not closed under multiplication by x and u".into()));
        }
        Ok(code)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    /// Generators as supplied at construction (empty for derived codes).
    pub fn generators(&self) -> &[SkewPoly] {
        &self.generators
    }

    pub fn basis(&self) -> &FieldEchelon {
        &self.basis
    }

    pub fn length(&self) -> usize {
        self.ambient.n
    }

    /// Dimension over `F_{p^m}`.
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// `log_p |C|`.
    pub fn log_p_cardinality(&self) -> u64 {
        (self.ambient.field().m() * self.rank()) as u64
    }

    /// `|C|`, when it fits.
    pub fn cardinality(&self) -> Option<u128> {
        (self.ambient.field().p() as u128).checked_pow(self.log_p_cardinality() as u32)
    }

    /// Dimension for codes over a field (`k = 1`).
    pub fn dimension(&self) -> Option<usize> {
        (self.ambient.k() == 1).then(|| self.rank())
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_whole(&self) -> bool {
        self.rank() == self.ambient.flat_len()
    }

    /// Basis rows as polynomials.
    pub fn basis_polys(&self) -> Vec<SkewPoly> {
        self.basis.rows().iter().map(|r| self.ambient.from_flat(r)).collect()
    }

    pub fn contains_poly(&self, f: &SkewPoly) -> bool {
        self.ambient.is_reduced(f) && self.basis.contains(&self.ambient.to_flat(f))
    }

    /// Membership of a coordinate vector.
    pub fn contains(&self, v: &[RingElem]) -> Result<bool, CodeError> {
        let f = self.ambient.from_vector(v)?;
        Ok(self.contains_poly(&f))
    }

    pub fn is_subcode_of(&self, other: &LeftIdealCode) -> bool {
        other.basis.contains_span(&self.basis)
    }

    /// Closure of the basis under left multiplication by `x` and `u`.
    pub fn is_left_ideal(&self) -> bool {
        let s = &self.ambient.skew;
        self.basis_polys().iter().all(|g| {
            self.contains_poly(&self.ambient.reduce(&s.mul_x_left(g, 1))) && self.contains_poly(&s.shift_u(g, 1))
        })
    }

    /// Chain-ring echelon form of an `R_k`-spanning set, columns in flat order.
    pub fn chain_echelon(&self) -> ChainEchelon {
        let n = self.ambient.n;
        let rows = self
            .basis_polys()
            .iter()
            .map(|g| (0..n).rev().map(|i| self.ambient.skew.coeff(g, i)).collect())
            .collect();
        ChainEchelon::new(self.ambient.ring(), n, rows)
    }

    fn layer_of(&self, pivot: usize) -> usize {
        pivot / self.ambient.n
    }

    /// `dim Tor_i` for `i = 1..k`.
    pub fn torsion_profile(&self) -> Vec<usize> {
        let mut out = vec![0; self.ambient.k()];
        for &p in self.basis.pivots() {
            out[self.layer_of(p)] += 1;
        }
        out
    }

    /// `Tor_i(C) = μ((C : u^{i-1}))` as a code over the residue ambient.
    pub fn torsion_code(&self, i: usize) -> Result<LeftIdealCode, CodeError> {
        let k = self.ambient.k();
        if i == 0 || i > k {
            return Err(CodeError::IndexOutOfRange { index: i, k });
        }
        let res_amb = self.ambient.residue()?;
        let res = res_amb.skew.clone();
        let gens: Vec<SkewPoly> = self
            .basis
            .rows()
            .iter()
            .zip(self.basis.pivots())
            .filter(|(_, &p)| self.layer_of(p) == i - 1)
            .map(|(row, _)| self.ambient.layer_poly(&res, row, i - 1))
            .collect();
        let code = LeftIdealCode::from_generators(&res_amb, &gens)?;
        if code.rank() != gens.len() {
            return Err(CodeError::VerificationFailed(format!("torsion layer {i} is not closed")));
        }
        Ok(code)
    }

    /// The canonical form; regenerating it reproduces this code.
    pub fn canonical_form(&self) -> Result<CanonicalIdealForm, CodeError> {
        let k = self.ambient.k();
        let res = self.ambient.skew.residue();
        let mut a = Vec::with_capacity(k);
        let mut r = Vec::with_capacity(k);
        for t in 0..k {
            // the lowest-degree pivot of the layer sits in the last row of the layer
            let row = self
                .basis
                .rows()
                .iter()
                .zip(self.basis.pivots())
                .filter(|(_, &p)| self.layer_of(p) == t)
                .map(|(row, _)| row)
                .next_back();
            match row {
                None => {
                    a.push(None);
                    r.push(Vec::new());
                }
                Some(row) => {
                    a.push(Some(self.ambient.layer_poly(&res, row, t)));
                    r.push((t + 1..k).map(|l| self.ambient.layer_poly(&res, row, l)).collect());
                }
            }
        }
        let form = CanonicalIdealForm { a, r };
        if form.regenerate(&self.ambient)? != *self {
            return Err(CodeError::VerificationFailed("canonical form does not regenerate the code".into()));
        }
        Ok(form)
    }

    /// A generating set with at most `k` elements.
    pub fn minimal_generators(&self) -> Result<Vec<SkewPoly>, CodeError> {
        Ok(self.canonical_form()?.generators(&self.ambient))
    }

    /// `{d : Σ c_i d_i = 0 ∀ c ∈ C}` as a subspace of the same flat space.
    ///
    /// A product in `R_k` vanishes on all of `C` iff its `u^{k-1}` coefficient
    /// does, since `C` is closed under multiplication by `u`.
    pub fn euclidean_dual_space(&self) -> FieldEchelon {
        let n = self.ambient.n;
        let k = self.ambient.k();
        let mut paired = FieldEchelon::new(self.ambient.field(), n * k);
        for row in self.basis.rows() {
            let mut v = vec![Fq::ZERO; n * k];
            for b in 0..k {
                v[b * n..(b + 1) * n].copy_from_slice(&row[(k - 1 - b) * n..(k - b) * n]);
            }
            paired.insert(v);
        }
        FieldEchelon::from_rows(self.ambient.field(), n * k, paired.null_space().iter())
    }

    /// Euclidean dual in the same ambient coordinates; a left ideal only when
    /// the ambient permits, so this returns the subspace wrapped without checks.
    pub fn euclidean_dual(&self) -> LeftIdealCode {
        LeftIdealCode { ambient: self.ambient.clone(), generators: Vec::new(), basis: self.euclidean_dual_space() }
    }

    /// `F_p`-basis of the right annihilator `{h : g·h ≡ 0 ∀ g ∈ C}`.
    pub fn right_annihilator(&self) -> Result<Vec<SkewPoly>, CodeError> {
        let amb = &self.ambient;
        let s = &amb.skew;
        let f = amb.field();
        let fp = Field::prime(f.p())?;
        let (m, k, n) = (f.m(), amb.k(), amb.n);
        let gens = self.minimal_generators()?;
        // columns: w^j u^t x^i
        let mut basis_elems = Vec::with_capacity(m * k * n);
        for i in 0..n {
            for t in 0..k {
                for j in 0..m {
                    let mut c = vec![0u32; m];
                    c[j] = 1;
                    let mut e = amb.ring().zero();
                    e[t] = f.from_coeffs(&c)?;
                    basis_elems.push(s.monomial(&e, i));
                }
            }
        }
        let out_len = gens.len() * amb.flat_len() * m;
        let mut columns: Vec<Vec<u32>> = Vec::with_capacity(basis_elems.len());
        for e in &basis_elems {
            let mut col = Vec::with_capacity(out_len);
            for g in &gens {
                for x in amb.to_flat(&amb.mul(g, e)) {
                    col.extend_from_slice(f.coeffs(&x));
                }
            }
            columns.push(col);
        }
        let mut rows = FieldEchelon::new(&fp, basis_elems.len());
        for o in 0..out_len {
            rows.insert(columns.iter().map(|c| fp.from_int(c[o] as i64)).collect());
        }
        Ok(rows
            .null_space()
            .iter()
            .map(|y| {
                y.iter().zip(&basis_elems).fold(SkewPoly::zero(), |acc, (c, e)| {
                    let reps = f.coeffs(c)[0] as usize;
                    (0..reps).fold(acc, |a, _| s.add(&a, e))
                })
            })
            .filter(|h| !h.is_zero())
            .collect())
    }

    /// `C^⊥` as a left ideal of `R_k[x; Θ]/(x^N - λ^{-1})`, generated by the
    /// twisted reversals `Σ_i Θ^i(h_{N-1-i}) x^i` of the right annihilator.
    ///
    /// The result is checked against [`LeftIdealCode::euclidean_dual_space`],
    /// the cardinality identity `|C|·|C^⊥| = |R_k|^N` and pairwise
    /// orthogonality of basis rows.
    pub fn dual_code(&self) -> Result<LeftIdealCode, CodeError> {
        let amb = &self.ambient;
        let lambda = amb
            .constacyclic_lambda()
            .ok_or_else(|| CodeError::UnsupportedAmbient("dual codes need a modulus x^N - λ".into()))?;
        let s = &amb.skew;
        let n = amb.n;
        let lambda_inv = amb.ring().inv(&lambda)?;
        let dual_amb = Ambient::constacyclic(s, n, &lambda_inv)?;
        let gens: Vec<SkewPoly> = self.right_annihilator()?.iter().map(|h| s.orthogonal_reciprocal(h, n - 1)).collect();
        let dual = LeftIdealCode::from_generators(&dual_amb, &gens)?;
        if dual.basis != self.euclidean_dual_space() {
            return Err(CodeError::VerificationFailed("annihilator dual differs from the Euclidean dual".into()));
        }
        if self.log_p_cardinality() + dual.log_p_cardinality() != amb.log_p_size() {
            return Err(CodeError::VerificationFailed("|C|·|C^⊥| differs from the ambient size".into()));
        }
        if !self.is_orthogonal_to(&dual) {
            return Err(CodeError::VerificationFailed("dual rows are not orthogonal".into()));
        }
        Ok(dual)
    }

    /// Whether every basis row of `self` is orthogonal to every basis row of `other`.
    pub fn is_orthogonal_to(&self, other: &LeftIdealCode) -> bool {
        let r = self.ambient.ring();
        let a: Vec<Vec<RingElem>> = self.basis_polys().iter().map(|g| self.ambient.to_vector(g)).collect();
        let b: Vec<Vec<RingElem>> = other.basis_polys().iter().map(|g| other.ambient.to_vector(g)).collect();
        a.iter().all(|x| {
            b.iter().all(|y| r.is_zero(&x.iter().zip(y).fold(r.zero(), |acc, (p, q)| r.add(&acc, &r.mul(p, q)))))
        })
    }

    /// `C = C^⊥` as sets of vectors.
    pub fn is_self_dual(&self) -> bool {
        2 * self.log_p_cardinality() == self.ambient.log_p_size() && self.basis == self.euclidean_dual_space()
    }

    /// The image of `C` in each block ambient `R_k[x; Θ]/(f_j^{k_j})`.
    pub fn decompose(&self, sys: &CrtSystem) -> Result<Vec<LeftIdealCode>, CodeError> {
        if sys.modulus() != self.ambient.modulus() || sys.skew() != self.ambient.skew() {
            return Err(CodeError::AmbientMismatch);
        }
        let gens = self.minimal_generators()?;
        let mut out = Vec::with_capacity(sys.len());
        for b in sys.blocks() {
            let amb = Ambient::new(&self.ambient.skew, b.clone())?;
            let comp: Vec<SkewPoly> = gens.iter().map(|g| amb.reduce(g)).collect();
            out.push(LeftIdealCode::from_generators(&amb, &comp)?);
        }
        let total: u64 = out.iter().map(|c| c.log_p_cardinality()).sum();
        if total != self.log_p_cardinality() {
            return Err(CodeError::VerificationFailed("component sizes do not multiply to |C|".into()));
        }
        Ok(out)
    }

    /// `⊕_j ε_j·C_j` for component codes in the block ambients of `sys`.
    pub fn recompose(ambient: &Ambient, sys: &CrtSystem, parts: &[LeftIdealCode]) -> Result<LeftIdealCode, CodeError> {
        if parts.len() != sys.len() {
            return Err(CrtError::ArityMismatch { expected: sys.len(), got: parts.len() }.into());
        }
        let mut gens = Vec::new();
        for (part, e) in parts.iter().zip(sys.idempotents()) {
            for g in part.minimal_generators()? {
                gens.push(ambient.mul(e, &g));
            }
        }
        LeftIdealCode::from_generators(ambient, &gens)
    }

    /// `C = C^⊥` decided block by block.
    pub fn self_dual_report(&self, sys: &CrtSystem) -> Result<SelfDualReport, CodeError> {
        let direct = self.is_self_dual();
        let amb = &self.ambient;
        let s = &amb.skew;
        let blocks = sys.blocks();
        let pairing = blocks
            .iter()
            .map(|b| {
                let rec = s.make_monic(&s.reciprocal(b)?)?;
                Ok(blocks.iter().position(|c| *c == rec))
            })
            .collect::<Result<Vec<_>, CodeError>>()?;
        let componentwise = if amb.constacyclic_lambda().is_some() && 2 * self.log_p_cardinality() == amb.log_p_size() {
            let dual = self.dual_code()?;
            if dual.ambient.modulus() == amb.modulus() {
                let mine = self.decompose(sys)?;
                let theirs = dual.decompose(sys)?;
                let agree: Vec<bool> = mine.iter().zip(&theirs).map(|(a, b)| a == b).collect();
                Some(agree)
            } else {
                None
            }
        } else {
            None
        };
        let comp_all = componentwise.as_ref().map(|v| v.iter().all(|&b| b)).unwrap_or(false);
        if componentwise.is_some() && comp_all != direct {
            return Err(CodeError::VerificationFailed("componentwise and direct self-duality disagree".into()));
        }
        Ok(SelfDualReport { self_dual: direct, pairing, componentwise })
    }
}

/// Outcome of [`LeftIdealCode::self_dual_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDualReport {
    pub self_dual: bool,
    /// Block `j` maps to the block holding its monic reciprocal.
    pub pairing: Vec<Option<usize>>,
    /// Per block, whether `C` and `C^⊥` have the same component; `None` when
    /// the sizes already rule out self-duality or the dual lives elsewhere.
    pub componentwise: Option<Vec<bool>>,
}

impl CanonicalIdealForm {
    /// The generators `u^{i-1}a_i + Σ_j u^{i-1+j} r_{i,j}`.
    pub fn generators(&self, ambient: &Ambient) -> Vec<SkewPoly> {
        let s = &ambient.skew;
        let mut out = Vec::new();
        for (i, a) in self.a.iter().enumerate() {
            let Some(a) = a else { continue };
            let mut g = s.shift_u(&s.lift_poly(a), i);
            for (j, r) in self.r[i].iter().enumerate() {
                g = s.add(&g, &s.shift_u(&s.lift_poly(r), i + 1 + j));
            }
            out.push(g);
        }
        out
    }

    pub fn regenerate(&self, ambient: &Ambient) -> Result<LeftIdealCode, CodeError> {
        LeftIdealCode::from_generators(ambient, &self.generators(ambient))
    }
}

/// Monic right divisors of `f` of degree below `deg f`, by exhaustive search.
pub fn monic_right_divisors(s: &SkewRing, f: &SkewPoly, cap: u64) -> Result<Vec<SkewPoly>, CodeError> {
    let field = s.field();
    let q = field.order();
    let n = f.degree().ok_or(SkewError::ZeroPolynomial)?;
    let mut out = Vec::new();
    let mut budget = cap;
    for d in 0..n {
        let count = q.checked_pow(d as u32).filter(|&c| c <= budget).ok_or(CodeError::CapExceeded { cap })?;
        budget -= count;
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                coeffs.push(field.element(rest % q));
                rest /= q;
            }
            coeffs.push(field.one());
            let g = s.from_field_coeffs(&coeffs);
            if s.right_divides(&g, f)? {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// One left ideal from [`enumerate_ideals`].
#[derive(Debug, Clone)]
pub struct EnumeratedIdeal {
    pub form: CanonicalIdealForm,
    pub code: LeftIdealCode,
    /// Set for `k = 2`.
    pub kind: Option<IdealType>,
}

/// Every left ideal of the ambient, each exactly once.
///
/// Candidates are chains `a_k |_r … |_r a_1` of monic right divisors of `μ(M)`
/// (zero allowed at the top) with tails of bounded degree; a candidate is kept
/// iff it is the canonical form of the ideal it generates.
pub fn enumerate_ideals(ambient: &Ambient, cap: u64) -> Result<Vec<EnumeratedIdeal>, CodeError> {
    if ambient.log_p_size() as f64 * (ambient.field().p() as f64).log2() > (ENUMERATION_SIZE_CAP as f64).log2() + 1e-9 {
        return Err(CodeError::NotDeskScale { log_p: ambient.log_p_size() });
    }
    let k = ambient.k();
    let res = ambient.skew.residue();
    let field = ambient.field();
    let q = field.order();
    let divisors = monic_right_divisors(&res, &ambient.skew.mu_poly(&ambient.modulus), cap)?;
    // chains indexed by divisor positions, None = zero torsion
    let mut chains: Vec<Vec<Option<usize>>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for c in &chains {
            match c.last() {
                Some(Some(prev)) => {
                    for (d, g) in divisors.iter().enumerate() {
                        if res.right_divides(g, &divisors[*prev])? {
                            let mut c2 = c.clone();
                            c2.push(Some(d));
                            next.push(c2);
                        }
                    }
                }
                _ => {
                    let mut c2 = c.clone();
                    c2.push(None);
                    next.push(c2);
                    for d in 0..divisors.len() {
                        let mut c2 = c.clone();
                        c2.push(Some(d));
                        next.push(c2);
                    }
                }
            }
        }
        chains = next;
    }
    let mut out: Vec<EnumeratedIdeal> = Vec::new();
    let mut seen = 0u64;
    for chain in chains {
        let degs: Vec<usize> = chain.iter().map(|c| c.map(|d| divisors[d].degree().unwrap_or(0)).unwrap_or(0)).collect();
        // slots (i, j) with a_i present; r_{i,j} ranges over deg < deg a_{i+j}
        let mut slots: Vec<(usize, usize, usize)> = Vec::new();
        for i in 0..k {
            if chain[i].is_some() {
                for j in 1..k - i {
                    slots.push((i, j, degs[i + j]));
                }
            }
        }
        let total_digits: usize = slots.iter().map(|s| s.2).sum();
        let count = q.checked_pow(total_digits as u32).ok_or(CodeError::CapExceeded { cap })?;
        seen = seen.checked_add(count).filter(|&x| x <= cap).ok_or(CodeError::CapExceeded { cap })?;
        for idx in 0..count {
            let mut rest = idx;
            let mut r: Vec<Vec<SkewPoly>> = vec![Vec::new(); k];
            for &(i, _, d) in &slots {
                let mut cs = Vec::with_capacity(d);
                for _ in 0..d {
                    cs.push(field.element(rest % q));
                    rest /= q;
                }
                r[i].push(res.from_field_coeffs(&cs));
            }
            let form = CanonicalIdealForm { a: chain.iter().map(|c| c.map(|d| divisors[d].clone())).collect(), r };
            let code = form.regenerate(ambient)?;
            if code.canonical_form()? != form {
                continue;
            }
            let kind = if k == 2 { Some(classify_k2(&code, &form, cap)?) } else { None };
            out.push(EnumeratedIdeal { form, code, kind });
        }
    }
    Ok(out)
}

/// The class of a left ideal over `R_2`.
pub fn classify_k2(code: &LeftIdealCode, form: &CanonicalIdealForm, cap: u64) -> Result<IdealType, CodeError> {
    let amb = code.ambient();
    if amb.k() != 2 {
        return Err(CodeError::UnsupportedAmbient("classification is defined for k = 2".into()));
    }
    if code.is_zero() || code.is_whole() {
        return Ok(IdealType::Trivial);
    }
    let s = &amb.skew;
    let Some(a1) = &form.a[0] else {
        return Ok(IdealType::NonMonicPrincipal);
    };
    let field = amb.field();
    let q = field.order();
    let d = a1.degree().unwrap_or(0);
    let count = q.checked_pow(d as u32).filter(|&c| c <= cap).ok_or(CodeError::CapExceeded { cap })?;
    let base = s.lift_poly(a1);
    for idx in 0..count {
        let mut rest = idx;
        let mut cs = Vec::with_capacity(d);
        for _ in 0..d {
            cs.push(field.element(rest % q));
            rest /= q;
        }
        let g = s.add(&base, &s.shift_u(&s.from_field_coeffs(&cs), 1));
        if code.contains_poly(&g) && LeftIdealCode::from_generators(amb, &[g])? == *code {
            return Ok(IdealType::Principal);
        }
    }
    Ok(IdealType::NonPrincipal)
}

/// `λ = α_0'^{-N}`, the constant of the ambient reached by [`psi_map`].
pub fn psi_lambda(field: &Field, alpha0: &Fq, n: usize) -> Result<Fq, CodeError> {
    Ok(field.inv(&field.pow(alpha0, n as u64))?)
}

/// `f(x) ↦ f(α_0'·x)`, i.e. `c_i ↦ c_i·α_0'^i`, for a `Θ`-fixed `α_0'`.
pub fn psi_map(s: &SkewRing, alpha0: &Fq, g: &SkewPoly) -> Result<SkewPoly, CodeError> {
    let ring = s.ring();
    let a = ring.lift(alpha0);
    if ring.apply(s.auto(), &a) != a {
        return Err(CodeError::AutomorphismMovesAlpha);
    }
    let mut pw = ring.one();
    let mut out = Vec::with_capacity(g.coeffs().len());
    for c in g.coeffs() {
        out.push(ring.mul(c, &pw));
        pw = ring.mul(&pw, &a);
    }
    Ok(SkewPoly::new(out))
}

/// The image of a code of `x^N - 1` in `x^N - α_0'^{-N}` under [`psi_map`].
pub fn psi_map_code(code: &LeftIdealCode, alpha0: &Fq) -> Result<LeftIdealCode, CodeError> {
    let amb = code.ambient();
    let s = &amb.skew;
    if amb.constacyclic_lambda().map(|l| amb.ring().is_one(&l)) != Some(true) {
        return Err(CodeError::UnsupportedAmbient("the source must be x^N - 1".into()));
    }
    let lambda = psi_lambda(amb.field(), alpha0, amb.n)?;
    let target = Ambient::constacyclic(s, amb.n, &amb.ring().lift(&lambda))?;
    let gens = code.basis_polys().iter().map(|g| psi_map(s, alpha0, g)).collect::<Result<Vec<_>, _>>()?;
    LeftIdealCode::from_generators(&target, &gens)
}

//! Acceptance gate: ten criteria, one PASS/FAIL line each.
//!
//! Every tolerance is exact. Oracles are written here independently of the
//! library's algorithms and only borrow its field arithmetic.

use std::collections::{BTreeSet, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewcode::code::{enumerate_ideals, psi_lambda, psi_map, psi_map_code, Ambient, IdealType, LeftIdealCode};
use skewcode::crt::CrtSystem;
use skewcode::factor::{factor_length3, factor_length6, CentralFactorization};
use skewcode::field::FieldAutomorphism;
use skewcode::metrics::{min_distance, weight};
use skewcode::tables::{frobenius_ring, verify_remark, verify_table, FactorSource, TableId, TableSpec};
use skewcode::text::parse_poly;
use skewcode::{Automorphism, ChainRing, Field, Fq, RingElem, SkewPoly, SkewRing};

const SEED: u64 = 0x5EED_C0DE;
const CRT_ROUND_TRIPS: usize = 200;
const RANDOM_DUAL_CODES: usize = 50;
const PSI_PRODUCT_PAIRS: usize = 200;
const PSI_WEIGHT_SAMPLES: usize = 500;
const IDEAL_AMBIENT_CAP: u64 = 1 << 20;

type Check = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("tables 1-3 over F_{7^7} from peeled factors", c1_tables_1_to_3),
        ("table 4 over F_{5^5} from quadratic factors", c2_table_4),
        ("skew versus commutative comparison", c3_remark),
        ("cyclic rows of x^7 - 1 and x^5 - 1", c4_cyclic_rows),
        ("central factorization matrix", c5_factorizations),
        ("CRT idempotents and round trips", c6_idempotents),
        ("ideal enumeration against brute force", c7_ideal_oracle),
        ("duality suite", c8_duality),
        ("automorphism group against endomorphism search", c9_automorphisms),
        ("cyclic to constacyclic isomorphism", c10_psi),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

// ---------------------------------------------------------------- oracles

/// Rank of the columns `cols` of `rows` by plain elimination.
fn column_subset_rank(f: &Field, rows: &[Vec<Fq>], cols: &[usize]) -> usize {
    let mut m: Vec<Vec<Fq>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = f.inv(&m[rank][c]).expect("nonzero pivot");
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let factor = f.mul(&m[i][c], &inv);
                for j in c..cols.len() {
                    let t = f.mul(&factor, &m[rank][j]);
                    m[i][j] = f.sub(&m[i][j], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subsets(n: usize, w: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, w: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == w {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, w, cur, out);
            cur.pop();
        }
    }
    rec(0, n, w, &mut cur, &mut out);
    out
}

/// `d` of a field code from a generator matrix `G` (rank `kd`): the largest
/// `δ` such that every `n - δ + 1` columns of `G` have rank `kd`.
fn generator_matrix_distance(code: &LeftIdealCode) -> (usize, usize) {
    let f = code.ambient().field();
    let n = code.length();
    let rows = code.basis().rows().to_vec();
    let kd = rows.len();
    for delta in (1..=n - kd + 1).rev() {
        if subsets(n, n - delta + 1).iter().all(|cols| column_subset_rank(f, &rows, cols) == kd) {
            return (kd, delta);
        }
    }
    unreachable!("δ = 1 always holds for a nonzero code")
}

fn table_codes(id: TableId, source: FactorSource) -> Result<Vec<(LeftIdealCode, [usize; 3], String)>, String> {
    let spec: &TableSpec = id.spec();
    let report = ok(verify_table(id, source), "verify_table")?;
    let s = ok(frobenius_ring(spec.p, spec.m), "ring")?;
    let modulus = ok(parse_poly(&s, spec.modulus), "modulus")?;
    let amb = ok(Ambient::new(&s, modulus.clone()), "ambient")?;
    ensure(report.product_ok, || format!("table {id} ({source}): factors do not multiply to the modulus"))?;
    let mut out = Vec::new();
    for row in &report.rows {
        ensure(row.pass, || format!("table {id} ({source}) {}: got {:?} expected {:?}", row.generator, row.got(), row.expected))?;
        ensure(row.params.mds == Some(true), || format!("table {id} {}: not MDS", row.generator))?;
        ensure(ok(s.right_divides(&row.generator_poly, &modulus), "divides")?, || format!("{} does not divide", row.generator))?;
        let code = ok(LeftIdealCode::from_generators(&amb, std::slice::from_ref(&row.generator_poly)), "code")?;
        let (kd, d) = generator_matrix_distance(&code);
        let got = [code.length(), kd, d];
        ensure(got == row.expected, || format!("oracle: table {id} {} gives {got:?}, expected {:?}", row.generator, row.expected))?;
        ensure(d + kd == code.length() + 1, || format!("oracle: {} not MDS", row.generator))?;
        out.push((code, got, format!("table {id} {}", row.generator)));
    }
    Ok(out)
}

// ---------------------------------------------------------------- 1 to 4

fn c1_tables_1_to_3() -> Result<String, String> {
    let mut rows = 0;
    for id in [TableId::X7Minus2, TableId::X7Minus4, TableId::X7Minus1] {
        rows += table_codes(id, FactorSource::Derived)?.len();
    }
    ensure(rows == 12, || format!("{rows} rows"))?;
    Ok(format!("{rows} rows exact and MDS"))
}

fn c2_table_4() -> Result<String, String> {
    let rows = table_codes(TableId::Quadratic, FactorSource::Derived)?;
    let got: Vec<[usize; 3]> = rows.iter().map(|r| r.1).collect();
    ensure(got == [[10, 8, 3], [10, 6, 5], [10, 4, 7], [10, 4, 7]], || format!("{got:?}"))?;
    Ok("[10,8,3] [10,6,5] [10,4,7] [10,4,7] MDS".into())
}

fn c3_remark() -> Result<String, String> {
    let cmp = ok(verify_remark(), "remark")?;
    let mut parts = Vec::new();
    for c in &cmp {
        ensure(c.pass(), || format!("{}: skew d={} commutative d={}", c.modulus, c.skew.d, c.commutative.d))?;
        ensure(c.skew_divides, || format!("{}: skew product does not divide", c.modulus))?;
        parts.push(format!("{}: skew d={} commutative d={}", c.modulus, c.skew.d, c.commutative.d));
    }
    ensure(cmp.len() == 2 && cmp[0].skew.d == 7 && cmp[0].commutative.d == 6, || "first comparison".into())?;
    ensure(cmp[1].skew.d == 6 && cmp[1].commutative.d == 7, || "second comparison".into())?;
    Ok(parts.join(", "))
}

fn c4_cyclic_rows() -> Result<String, String> {
    let mut rows = 0;
    for source in [FactorSource::Derived, FactorSource::Published] {
        rows += table_codes(TableId::X7Minus1, source)?.len();
        let five = table_codes(TableId::X5Minus1, source)?;
        let got: Vec<[usize; 3]> = five.iter().map(|r| r.1).collect();
        ensure(got == [[5, 3, 3], [5, 2, 4], [5, 2, 4]], || format!("{got:?}"))?;
        rows += five.len();
    }
    Ok(format!("{rows} rows over both factor sources"))
}

// ---------------------------------------------------------------- 5 and 6

struct Case {
    s: SkewRing,
    lambda: RingElem,
    s_exp: u32,
    len6: bool,
    fact: CentralFactorization,
}

fn ring_automorphisms(ring: &ChainRing, s_exp: u32) -> Vec<Automorphism> {
    let p = ring.field().p() as u64;
    let m = ring.field().m();
    let mut out = Vec::new();
    for theta in [0, 1] {
        if theta >= m && theta > 0 {
            continue;
        }
        let variants = if ring.k() >= 3 { 2 } else { 1 };
        for v in 0..variants {
            let mut eta = vec![ring.one(); ring.k().saturating_sub(1)];
            if v == 1 {
                eta[1] = ring.add(&ring.one(), &ring.u_pow(1));
            }
            let a = ring.automorphism(FieldAutomorphism { exponent: theta }, &eta).expect("valid automorphism");
            if p.pow(s_exp).is_multiple_of(ring.automorphism_order(&a)) && !out.contains(&a) {
                out.push(a);
            }
        }
    }
    out
}

fn lambda_candidates(s: &SkewRing, s_exp: u32) -> Vec<RingElem> {
    let ring = s.ring();
    let f = ring.field();
    let mut out = vec![ring.one(), ring.lift(&f.prime_field_generator()), ring.lift(&f.generator())];
    if s_exp == 0 && ring.k() >= 2 {
        out.push(ring.add(&ring.one(), &ring.u_pow(1)));
        out.push(ring.add(&ring.lift(&f.prime_field_generator()), &ring.u_pow(1)));
    }
    let mut uniq = Vec::new();
    for l in out {
        if ring.apply(s.auto(), &l) == l && !uniq.contains(&l) {
            uniq.push(l);
        }
    }
    uniq
}

/// Shared by criteria 5 and 6.
fn factorization_matrix() -> Result<&'static [Case], String> {
    static CASES: OnceLock<Result<Vec<Case>, String>> = OnceLock::new();
    CASES.get_or_init(build_factorization_matrix).as_deref().map_err(Clone::clone)
}

fn build_factorization_matrix() -> Result<Vec<Case>, String> {
    let mut cases = Vec::new();
    for p in [5u32, 7, 11, 13] {
        let mut degrees = vec![1usize, 2];
        if p == 5 {
            degrees.push(5);
        }
        if p == 7 {
            degrees.push(7);
        }
        for m in degrees {
            let field = ok(Field::conway(p, m), "field")?;
            for k in 1..=3 {
                let ring = ok(ChainRing::new(field.clone(), k), "ring")?;
                for s_exp in 0..=1 {
                    for auto in ring_automorphisms(&ring, s_exp) {
                        let s = SkewRing::new(ring.clone(), auto);
                        for lambda in lambda_candidates(&s, s_exp) {
                            let fact = factor_length3(&s, &lambda, s_exp)
                                .map_err(|e| format!("len3 p={p} m={m} k={k} s={s_exp} λ={}: {e}", ring.format(&lambda)))?;
                            cases.push(Case { s: s.clone(), lambda: lambda.clone(), s_exp, len6: false, fact });
                        }
                        for lambda in [ring.one(), ring.from_int(-1)] {
                            let fact = factor_length6(&s, &lambda, s_exp)
                                .map_err(|e| format!("len6 p={p} m={m} k={k} s={s_exp} λ={}: {e}", ring.format(&lambda)))?;
                            cases.push(Case { s: s.clone(), lambda, s_exp, len6: true, fact });
                        }
                    }
                }
            }
        }
    }
    Ok(cases)
}

/// Centrality from the generators of the skew ring: `f` commutes with `x`,
/// with the field generator and with `u`.
fn commutes_with_generators(s: &SkewRing, f: &SkewPoly) -> bool {
    let ring = s.ring();
    let mut gens = vec![s.x(), s.constant(&ring.lift(&ring.field().generator()))];
    if ring.k() > 1 {
        gens.push(s.constant(&ring.u_pow(1)));
    }
    gens.iter().all(|g| s.mul(f, g) == s.mul(g, f))
}

fn check_case(c: &Case) -> Result<(), String> {
    let s = &c.s;
    let ring = s.ring();
    let p = ring.field().p() as usize;
    let n = if c.len6 { 6 } else { 3 } * p.pow(c.s_exp);
    let want = s.binomial(n, &c.lambda);
    let blocks: Vec<SkewPoly> = c.fact.factors.iter().map(|f| s.pow(&f.poly, f.multiplicity as u64)).collect();
    ensure(s.product(blocks.iter()) == want, || format!("{}: product differs", c.fact.case_tag))?;
    for f in &c.fact.factors {
        ensure(commutes_with_generators(s, &f.poly), || format!("{}: a factor is not central", c.fact.case_tag))?;
    }
    // coprime residues: explicit Bézout certificates a·f + b·g = 1
    let res = s.residue();
    let proj: Vec<SkewPoly> = c.fact.factors.iter().map(|f| s.mu_poly(&f.poly)).collect();
    for i in 0..proj.len() {
        for j in i + 1..proj.len() {
            let (d, a, b) = ok(res.gcd_right_extended(&proj[i], &proj[j]), "gcd")?;
            let combo = res.add(&res.mul(&a, &proj[i]), &res.mul(&b, &proj[j]));
            ensure(d == res.one() && combo == res.one(), || format!("{}: factors {i},{j} not coprime", c.fact.case_tag))?;
        }
    }
    Ok(())
}

fn c5_factorizations() -> Result<String, String> {
    let cases = factorization_matrix()?;
    for c in cases {
        check_case(c)?;
    }
    let tags: BTreeSet<&str> = cases.iter().map(|c| c.fact.case_tag.as_str()).collect();
    let expected = [
        "λ_0 not a cube",
        "λ_0 a cube, p≡1 mod 3",
        "λ_0 a cube, p≡2 mod 3, m even",
        "λ_0 a cube, p≡2 mod 3, m odd",
        "cyclic, p≡1 mod 6",
        "cyclic, m even",
        "cyclic, p≡5 mod 6, m odd",
        "negacyclic, p≡1 mod 12",
        "negacyclic, m even",
        "negacyclic, p≡5 mod 12, m odd",
        "negacyclic, p≡7 mod 12, m odd",
        "negacyclic, p≡11 mod 12, m odd",
    ];
    for t in expected {
        ensure(tags.contains(t), || format!("branch {t:?} never exercised"))?;
    }
    let skew = cases.iter().filter(|c| !c.s.is_commutative()).count();
    Ok(format!("{} factorizations, {} branches, {skew} with nontrivial Θ", cases.len(), tags.len()))
}

fn random_elem(rng: &mut ChaCha8Rng, ring: &ChainRing) -> RingElem {
    let f = ring.field();
    let coeffs: Vec<Fq> = (0..ring.k()).map(|_| f.element(rng.gen_range(0..f.order()))).collect();
    ring.from_coeffs(&coeffs)
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &ChainRing, len: usize) -> SkewPoly {
    SkewPoly::new((0..len).map(|_| random_elem(rng, ring)).collect())
}

fn c6_idempotents() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cases = factorization_matrix()?;
    let mut trips = 0;
    for c in cases {
        let s = &c.s;
        let sys = ok(CrtSystem::new(s, &c.fact), "CRT")?;
        let m = sys.modulus().clone();
        let n = m.degree().expect("nonzero modulus");
        let eps = sys.idempotents();
        let reduce = |f: &SkewPoly| s.rem_right(f, &m).expect("monic modulus");
        let sum = eps.iter().fold(SkewPoly::zero(), |acc, e| s.add(&acc, e));
        ensure(reduce(&sum) == s.one(), || format!("{}: Σ ε ≠ 1", c.fact.case_tag))?;
        for (i, e) in eps.iter().enumerate() {
            ensure(reduce(&s.mul(e, e)) == *e, || format!("{}: ε_{i} not idempotent", c.fact.case_tag))?;
            for (j, e2) in eps.iter().enumerate() {
                if i != j {
                    ensure(reduce(&s.mul(e, e2)).is_zero(), || format!("{}: ε_{i}ε_{j} ≠ 0", c.fact.case_tag))?;
                }
            }
            ensure(commutes_with_generators(s, e) || reduce(&s.mul(&s.x(), e)) == reduce(&s.mul(e, &s.x())), || {
                format!("{}: ε_{i} not central modulo M", c.fact.case_tag)
            })?;
        }
        let report = ok(sys.identities(), "identities")?;
        ensure(report.all_hold(), || format!("{}: identity report fails", c.fact.case_tag))?;
        for _ in 0..CRT_ROUND_TRIPS {
            let g = random_poly(&mut rng, s.ring(), n);
            let parts = ok(sys.decompose(&g), "decompose")?;
            let back = ok(sys.recompose(&parts), "recompose")?;
            ensure(back == g, || format!("{}: round trip failed", c.fact.case_tag))?;
            trips += 1;
        }
    }
    Ok(format!("{} systems, {trips} round trips", cases.len()))
}

// ---------------------------------------------------------------- 7

/// Elements of `F_p[u]/(u^k)[x]/(M)` as `k·N` residues mod `p`, index `t·N + i`
/// for `u^t x^i`. Multiplication by `x` and `u` are written out directly.
struct PlainAmbient {
    p: u32,
    k: usize,
    n: usize,
    /// monic modulus, low to high, length `n + 1`
    modulus: Vec<u32>,
}

impl PlainAmbient {
    fn new(p: u32, k: usize, a: u32, j: usize) -> PlainAmbient {
        // (x - a)^j
        let mut poly = vec![1u32];
        for _ in 0..j {
            let mut next = vec![0u32; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = (next[i + 1] + c) % p;
                next[i] = (next[i] + (p - a % p) * c) % p;
            }
            poly = next;
        }
        PlainAmbient { p, k, n: j, modulus: poly }
    }

    fn dim(&self) -> usize {
        self.k * self.n
    }

    fn times_x(&self, v: &[u32]) -> Vec<u32> {
        let (n, p) = (self.n, self.p);
        let mut out = vec![0u32; v.len()];
        for t in 0..self.k {
            let top = v[t * n + n - 1];
            for i in (1..n).rev() {
                out[t * n + i] = v[t * n + i - 1];
            }
            out[t * n] = 0;
            for i in 0..n {
                out[t * n + i] = (out[t * n + i] + (p - self.modulus[i]) * top) % p;
            }
        }
        out
    }

    fn times_u(&self, v: &[u32]) -> Vec<u32> {
        let n = self.n;
        let mut out = vec![0u32; v.len()];
        for t in 1..self.k {
            out[t * n..(t + 1) * n].copy_from_slice(&v[(t - 1) * n..t * n]);
        }
        out
    }
}

/// Reduced row echelon form over `F_p`; the canonical key of a subspace.
fn rref(p: u32, rows: Vec<Vec<u32>>, dim: usize) -> Vec<Vec<u32>> {
    let inv = |a: u32| (1..p).find(|b| a * b % p == 1).expect("nonzero");
    let mut m: Vec<Vec<u32>> = rows;
    let mut r = 0;
    for c in 0..dim {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..dim {
                    m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

fn in_span(p: u32, basis: &[Vec<u32>], v: &[u32], dim: usize) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    rref(p, rows, dim).len() == basis.len()
}

/// The smallest subspace containing `seeds` and closed under `x` and `u`.
fn ideal_closure(amb: &PlainAmbient, seeds: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let dim = amb.dim();
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut queue = seeds;
    while let Some(v) = queue.pop() {
        if v.iter().all(|&c| c == 0) || in_span(amb.p, &basis, &v, dim) {
            continue;
        }
        basis.push(v.clone());
        basis = rref(amb.p, basis, dim);
        queue.push(amb.times_x(&v));
        queue.push(amb.times_u(&v));
    }
    rref(amb.p, basis, dim)
}

struct IdealLattice {
    all: HashSet<Vec<Vec<u32>>>,
    principal: HashSet<Vec<Vec<u32>>>,
}

/// All principal ideals, then all sums until nothing new appears.
fn brute_force_ideals(amb: &PlainAmbient) -> IdealLattice {
    let dim = amb.dim();
    let total = (amb.p as u64).pow(dim as u32);
    let mut principal = HashSet::new();
    for idx in 0..total {
        let mut v = vec![0u32; dim];
        let mut r = idx;
        for c in v.iter_mut() {
            *c = (r % amb.p as u64) as u32;
            r /= amb.p as u64;
        }
        principal.insert(ideal_closure(amb, vec![v]));
    }
    let mut all: HashSet<Vec<Vec<u32>>> = principal.clone();
    loop {
        let list: Vec<_> = all.iter().cloned().collect();
        let mut fresh = Vec::new();
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let mut rows = list[i].clone();
                rows.extend(list[j].iter().cloned());
                let sum = rref(amb.p, rows, dim);
                if !all.contains(&sum) {
                    fresh.push(sum);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        all.extend(fresh);
    }
    IdealLattice { all, principal }
}

fn plain_key(amb: &PlainAmbient, code: &LeftIdealCode) -> Vec<Vec<u32>> {
    let a = code.ambient();
    let f = a.field();
    let rows: Vec<Vec<u32>> = code
        .basis_polys()
        .iter()
        .map(|g| {
            let coeffs = a.to_vector(g);
            let mut v = vec![0u32; amb.dim()];
            for (i, c) in coeffs.iter().enumerate() {
                for t in 0..amb.k {
                    v[t * amb.n + i] = f.coeffs(&c[t])[0];
                }
            }
            v
        })
        .collect();
    rref(amb.p, rows, amb.dim())
}

fn c7_ideal_oracle() -> Result<String, String> {
    let mut configs = 0;
    let mut ideals = 0;
    for p in [3u32, 5] {
        for k in 1..=3 {
            for j in 1..=2usize {
                for a in [0u32, 1, 2] {
                    if (p as u64).pow((k * j) as u32) > IDEAL_AMBIENT_CAP {
                        continue;
                    }
                    let plain = PlainAmbient::new(p, k, a, j);
                    let ring = ok(ChainRing::new(ok(Field::prime(p), "field")?, k), "ring")?;
                    let s = SkewRing::commutative(ring);
                    let f = SkewPoly::new(vec![s.ring().from_int(-(a as i64)), s.ring().one()]);
                    let amb = ok(Ambient::new(&s, s.pow(&f, j as u64)), "ambient")?;
                    let found = ok(enumerate_ideals(&amb, 1 << 24), "enumerate")?;
                    let lattice = brute_force_ideals(&plain);
                    let label = format!("p={p} k={k} f=x-{a} j={j}");
                    let keys: Vec<_> = found.iter().map(|e| plain_key(&plain, &e.code)).collect();
                    let key_set: HashSet<_> = keys.iter().cloned().collect();
                    ensure(key_set.len() == keys.len(), || format!("{label}: an ideal is listed twice"))?;
                    ensure(key_set == lattice.all, || {
                        format!("{label}: {} enumerated vs {} by brute force", key_set.len(), lattice.all.len())
                    })?;
                    let forms: HashSet<_> = found.iter().map(|e| e.form.clone()).collect();
                    ensure(forms.len() == found.len(), || format!("{label}: canonical forms collide"))?;
                    for e in &found {
                        check_canonical(&amb, e.code.clone(), &e.form, &label)?;
                        if k == 2 {
                            check_type(&plain, &lattice, e, &label)?;
                        } else {
                            ensure(e.kind.is_none(), || format!("{label}: type label outside k = 2"))?;
                        }
                    }
                    configs += 1;
                    ideals += found.len();
                }
            }
        }
    }
    Ok(format!("{configs} ambients, {ideals} ideals matched"))
}

fn check_canonical(amb: &Ambient, code: LeftIdealCode, form: &skewcode::code::CanonicalIdealForm, label: &str) -> Result<(), String> {
    ensure(ok(code.canonical_form(), "canonical")? == *form, || format!("{label}: form is not canonical"))?;
    ensure(ok(form.regenerate(amb), "regenerate")? == code, || format!("{label}: form does not regenerate"))?;
    let k = form.a.len();
    for i in 0..k {
        let Some(_) = &form.a[i] else {
            ensure(form.r[i].is_empty(), || format!("{label}: tail without a_{}", i + 1))?;
            continue;
        };
        ensure(form.r[i].len() == k - 1 - i, || format!("{label}: tail length"))?;
        for (jj, r) in form.r[i].iter().enumerate() {
            let target = form.a[i + 1 + jj].as_ref();
            let bound = target.and_then(|t| t.degree());
            let fine = match (r.degree(), bound) {
                (None, _) => true,
                (Some(dr), Some(db)) => dr < db,
                (Some(_), None) => false,
            };
            ensure(fine, || format!("{label}: deg r_{{{},{}}} too large", i + 1, jj + 1))?;
        }
    }
    Ok(())
}

fn check_type(plain: &PlainAmbient, lattice: &IdealLattice, e: &skewcode::code::EnumeratedIdeal, label: &str) -> Result<(), String> {
    let kind = e.kind.ok_or_else(|| format!("{label}: missing k = 2 label"))?;
    let key = plain_key(plain, &e.code);
    let trivial = e.code.is_zero() || e.code.is_whole();
    let principal = lattice.principal.contains(&key);
    let tor1_zero = e.code.torsion_profile()[0] == 0;
    let expected = if trivial {
        IdealType::Trivial
    } else if tor1_zero {
        IdealType::NonMonicPrincipal
    } else if principal {
        IdealType::Principal
    } else {
        IdealType::NonPrincipal
    };
    ensure(kind == expected, || format!("{label}: labelled {kind:?}, oracle says {expected:?}"))?;
    ensure(!tor1_zero || principal || trivial, || format!("{label}: u-multiple ideal that is not principal"))
}

// ---------------------------------------------------------------- 8

fn inner(ring: &ChainRing, a: &[RingElem], b: &[RingElem]) -> RingElem {
    a.iter().zip(b).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
}

/// Uses the ideal-theoretic dual for binomial moduli, where it must equal the
/// Euclidean dual, and the Euclidean dual otherwise.
fn check_duality(code: &LeftIdealCode, label: &str, ideal: bool) -> Result<(), String> {
    let amb = code.ambient();
    let ring = amb.ring();
    let use_ideal_dual = ideal && amb.constacyclic_lambda().is_some();
    if use_ideal_dual {
        let (a, b) = (ok(code.dual_code(), "dual")?, code.euclidean_dual());
        ensure(a.basis() == b.basis(), || format!("{label}: ideal dual differs from the Euclidean dual"))?;
    }
    let dual = if use_ideal_dual { ok(code.dual_code(), "dual")? } else { code.euclidean_dual() };
    let total = amb.field().m() as u64 * amb.k() as u64 * amb.length() as u64;
    ensure(code.log_p_cardinality() + dual.log_p_cardinality() == total, || {
        format!("{label}: |C||C⊥| = p^{} not p^{total}", code.log_p_cardinality() + dual.log_p_cardinality())
    })?;
    let mine: Vec<Vec<RingElem>> = code.basis_polys().iter().map(|g| amb.to_vector(g)).collect();
    let theirs: Vec<Vec<RingElem>> = dual.basis_polys().iter().map(|g| dual.ambient().to_vector(g)).collect();
    for a in &mine {
        for b in &theirs {
            ensure(ring.is_zero(&inner(ring, a, b)), || format!("{label}: generators not orthogonal"))?;
        }
    }
    let back = if use_ideal_dual { ok(dual.dual_code(), "dual of dual")? } else { dual.euclidean_dual() };
    ensure(back == *code, || format!("{label}: dual of dual differs"))
}

fn random_small_code(rng: &mut ChaCha8Rng) -> Result<LeftIdealCode, String> {
    let rings = [(3u32, 1usize, 1usize), (3, 1, 2), (3, 1, 3), (5, 1, 1), (5, 1, 2), (3, 2, 1), (3, 2, 2), (7, 1, 2), (5, 2, 1)];
    loop {
        let (p, m, k) = rings[rng.gen_range(0..rings.len())];
        let ring = ok(ChainRing::new(ok(Field::conway(p, m), "field")?, k), "ring")?;
        let autos = ok(ring.enumerate_automorphisms(10_000), "automorphisms")?;
        let auto = autos[rng.gen_range(0..autos.len())].clone();
        let ord = ring.automorphism_order(&auto) as usize;
        if ord > 4 {
            continue;
        }
        let s = SkewRing::new(ring.clone(), auto);
        let n = ord * rng.gen_range(1..=(4 / ord).max(1)) + if ord == 1 { rng.gen_range(0..2) } else { 0 };
        let fixed: Vec<RingElem> = ring.elements().filter(|l| ring.is_unit(l) && ring.apply(s.auto(), l) == *l).collect();
        let lambda = fixed[rng.gen_range(0..fixed.len())].clone();
        let Ok(amb) = Ambient::constacyclic(&s, n, &lambda) else { continue };
        let gens: Vec<SkewPoly> = (0..rng.gen_range(1..=2)).map(|_| random_poly(rng, &ring, n)).collect();
        return ok(LeftIdealCode::from_generators(&amb, &gens), "code");
    }
}

fn c8_duality() -> Result<String, String> {
    let mut count = 0;
    for (id, source) in [
        (TableId::X7Minus2, FactorSource::Derived),
        (TableId::X7Minus4, FactorSource::Derived),
        (TableId::X7Minus1, FactorSource::Derived),
        (TableId::Quadratic, FactorSource::Derived),
        (TableId::X5Minus1, FactorSource::Derived),
        (TableId::X7Minus1, FactorSource::Published),
        (TableId::X5Minus1, FactorSource::Published),
    ] {
        for (code, _, label) in table_codes(id, source)? {
            check_duality(&code, &label, true)?;
            count += 1;
        }
    }
    // the comparison codes: skew ones are ideals; commutative ones are linear codes only
    let spec = TableId::Quadratic.spec();
    let s = ok(frobenius_ring(5, 5), "ring")?;
    for (ring, ideal) in [(s.clone(), true), (s.with_identity(), false)] {
        let g = ring.product(
            spec.published[2..5]
                .iter()
                .map(|t| parse_poly(&ring, &format!("x^2 + {t}")).expect("parses"))
                .collect::<Vec<_>>()
                .iter(),
        );
        let amb = ok(Ambient::new(&ring, ok(parse_poly(&ring, spec.modulus), "modulus")?), "ambient")?;
        let code = ok(LeftIdealCode::from_generator_matrix(&amb, &g), "code")?;
        check_duality(&code, if ideal { "skew comparison code" } else { "commutative comparison code" }, ideal)?;
        count += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for i in 0..RANDOM_DUAL_CODES {
        let code = random_small_code(&mut rng)?;
        check_duality(&code, &format!("random code {i}"), true)?;
        count += 1;
    }
    Ok(format!("{count} codes"))
}

// ---------------------------------------------------------------- 9

fn c9_automorphisms() -> Result<String, String> {
    let mut parts = Vec::new();
    for (p, m, k) in [(3u32, 1usize, 2usize), (3, 1, 3), (5, 1, 2)] {
        let ring = ok(ChainRing::new(ok(Field::conway(p, m), "field")?, k), "ring")?;
        let elems: Vec<RingElem> = ring.elements().collect();
        // an endomorphism fixes F_p and is determined by the image t of u
        let mut brute: Vec<Vec<RingElem>> = Vec::new();
        for t in &elems {
            if !ring.is_zero(&ring.pow(t, k as u64)) {
                continue;
            }
            let image = |a: &RingElem| {
                let mut acc = ring.zero();
                let mut tp = ring.one();
                for c in a.iter() {
                    acc = ring.add(&acc, &ring.scale(&tp, c));
                    tp = ring.mul(&tp, t);
                }
                acc
            };
            let table: Vec<RingElem> = elems.iter().map(image).collect();
            let hom = elems.iter().enumerate().all(|(i, a)| {
                elems.iter().enumerate().all(|(j, b)| {
                    let sum = elems.iter().position(|e| *e == ring.add(a, b)).expect("closed");
                    let prod = elems.iter().position(|e| *e == ring.mul(a, b)).expect("closed");
                    table[sum] == ring.add(&table[i], &table[j]) && table[prod] == ring.mul(&table[i], &table[j])
                })
            });
            let distinct: HashSet<&RingElem> = table.iter().collect();
            if hom && distinct.len() == elems.len() {
                brute.push(table);
            }
        }
        let lib = ok(ring.enumerate_automorphisms(1 << 20), "enumerate")?;
        ensure(lib.len() == brute.len(), || format!("({p},{m},{k}): {} listed, {} found", lib.len(), brute.len()))?;
        ensure(ring.automorphism_count() == brute.len() as u128, || format!("({p},{m},{k}): count formula"))?;
        let lib_tables: HashSet<Vec<RingElem>> =
            lib.iter().map(|a| elems.iter().map(|e| ring.apply(a, e)).collect()).collect();
        let brute_tables: HashSet<Vec<RingElem>> = brute.into_iter().collect();
        ensure(lib_tables == brute_tables, || format!("({p},{m},{k}): actions differ"))?;
        parts.push(format!("({p},{m},{k}): {}", lib.len()));
    }
    Ok(parts.join(", "))
}

// ---------------------------------------------------------------- 10

fn c10_psi() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    let field = ok(Field::prime(7), "field")?;
    let n = 3;
    let mut cases = 0;
    let mut ideal_count = 0;
    for k in 1..=2 {
        let ring = ok(ChainRing::new(field.clone(), k), "ring")?;
        let mut autos = vec![ring.identity()];
        if k == 2 {
            // u ↦ 2u has order 3, so x^3 stays central
            autos.push(ok(ring.automorphism(FieldAutomorphism { exponent: 0 }, &[ring.from_int(2)]), "Θ")?);
        }
        for auto in autos {
            let s = SkewRing::new(ring.clone(), auto);
            let cyclic = ok(Ambient::constacyclic(&s, n, &ring.one()), "cyclic")?;
            let source_ideals = ok(enumerate_ideals(&cyclic, 1 << 24), "enumerate")?;
            for alpha in field.elements().skip(1) {
                let alpha0 = ok(field.inv(&alpha), "inverse")?;
                let lambda = ok(psi_lambda(&field, &alpha0, n), "λ")?;
                ensure(lambda == field.pow(&alpha, 3), || "λ is not α^3".into())?;
                let target = ok(Ambient::constacyclic(&s, n, &ring.lift(&lambda)), "target")?;
                let psi = |g: &SkewPoly| psi_map(&s, &alpha0, g).expect("α is fixed");
                // bijective: injective on the whole finite ambient
                let total = (7u64).pow((k * n) as u32);
                let mut seen = HashSet::new();
                for idx in 0..total {
                    let mut r = idx;
                    let coeffs: Vec<RingElem> = (0..n)
                        .map(|_| {
                            let c: Vec<Fq> = (0..k)
                                .map(|_| {
                                    let v = field.from_int((r % 7) as i64);
                                    r /= 7;
                                    v
                                })
                                .collect();
                            ring.from_coeffs(&c)
                        })
                        .collect();
                    let img = psi(&SkewPoly::new(coeffs));
                    ensure(target.is_reduced(&img), || "image not reduced".into())?;
                    seen.insert(img);
                }
                ensure(seen.len() as u64 == total, || format!("α={}: not injective", field.format(&alpha)))?;
                for _ in 0..PSI_PRODUCT_PAIRS {
                    let a = random_poly(&mut rng, &ring, n);
                    let b = random_poly(&mut rng, &ring, n);
                    let lhs = psi(&cyclic.mul(&a, &b));
                    let rhs = target.mul(&psi(&a), &psi(&b));
                    ensure(lhs == rhs, || format!("α={}: not multiplicative", field.format(&alpha)))?;
                }
                for _ in 0..PSI_WEIGHT_SAMPLES {
                    let a = random_poly(&mut rng, &ring, n);
                    let wa = weight(&ring, &cyclic.to_vector(&a));
                    let wb = weight(&ring, &target.to_vector(&psi(&a)));
                    ensure(wa == wb, || format!("α={}: weight changed", field.format(&alpha)))?;
                }
                let target_ideals = ok(enumerate_ideals(&target, 1 << 24), "enumerate target")?;
                let mut images = Vec::new();
                for e in &source_ideals {
                    let img = ok(psi_map_code(&e.code, &alpha0), "psi code")?;
                    ensure(img.is_left_ideal(), || "image is not a left ideal".into())?;
                    ensure(img.log_p_cardinality() == e.code.log_p_cardinality(), || "size changed".into())?;
                    for g in e.code.basis_polys() {
                        ensure(img.contains_poly(&psi(&g)), || "image misses ψ(c)".into())?;
                    }
                    if !e.code.is_zero() {
                        let (a, b) = (ok(min_distance(&e.code), "d")?, ok(min_distance(&img), "d image")?);
                        ensure((a.n, a.k_dim, a.log_p_cardinality, a.d) == (b.n, b.k_dim, b.log_p_cardinality, b.d), || {
                            format!("α={}: [n,k,d] changed", field.format(&alpha))
                        })?;
                    }
                    images.push(img);
                }
                ensure(images.len() == target_ideals.len(), || "ideal counts differ".into())?;
                for t in &target_ideals {
                    ensure(images.contains(&t.code), || "a target ideal has no preimage".into())?;
                }
                ideal_count += images.len();
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (Θ, α) cases, {ideal_count} ideals mapped"))
}

//! Reference MDS tables of skew codes over `F_{7^7}` and `F_{5^5}` with the
//! Frobenius `θ(a) = a^p`.
//!
//! Every table pairs a central modulus with a list of monic factors whose
//! left-to-right product is the modulus, and each row takes the product of
//! a run of consecutive factors as a code generator. Rows are checked against
//! either a factorization derived here by peeling least right factors or the
//! published list of factors.

use std::fmt;

use crate::chain::ChainRing;
use crate::code::{Ambient, CodeError, LeftIdealCode};
use crate::factor::{peel_linear_factorization, peel_quadratic_factorization, FactorError, DEFAULT_FIELD_CAP};
use crate::field::{Field, FieldAutomorphism};
use crate::metrics::{min_distance, CodeParams, MetricsError};
use crate::skew::{SkewPoly, SkewRing};
use crate::text::{format_poly, parse_poly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("no Conway modulus for F_{p}^{m}")]
    ModulusUnavailable { p: u32, m: usize },
    #[error("unknown table {0}")]
    UnknownTable(String),
    #[error("no factorization into {degree}-degree factors was found")]
    NoFactorization { degree: usize },
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// The tables, numbered as in the command-line interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableId {
    /// `x^7 - 2` over `F_{7^7}`.
    X7Minus2,
    /// `x^7 - 4` over `F_{7^7}`.
    X7Minus4,
    /// `x^7 - 1` over `F_{7^7}`.
    X7Minus1,
    /// `x^10 + x^5 + 1` over `F_{5^5}`.
    Quadratic,
    /// `x^5 - 1` over `F_{5^5}`.
    X5Minus1,
}

impl TableId {
    pub const ALL: [TableId; 5] = [TableId::X7Minus2, TableId::X7Minus4, TableId::X7Minus1, TableId::Quadratic, TableId::X5Minus1];

    pub fn number(self) -> u32 {
        match self {
            TableId::X7Minus2 => 1,
            TableId::X7Minus4 => 2,
            TableId::X7Minus1 => 3,
            TableId::Quadratic => 4,
            TableId::X5Minus1 => 5,
        }
    }

    pub fn from_number(n: u32) -> Option<TableId> {
        TableId::ALL.into_iter().find(|t| t.number() == n)
    }

    pub fn spec(self) -> &'static TableSpec {
        match self {
            TableId::X7Minus2 => &X7_MINUS_2,
            TableId::X7Minus4 => &X7_MINUS_4,
            TableId::X7Minus1 => &X7_MINUS_1,
            TableId::Quadratic => &QUADRATIC,
            TableId::X5Minus1 => &X5_MINUS_1,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// One row: a run of factors and the expected `[n, k, d]`.
#[derive(Debug, Clone, Copy)]
pub struct RowSpec {
    pub factors: &'static [usize],
    pub expected: [usize; 3],
}

#[derive(Debug)]
pub struct TableSpec {
    pub p: u32,
    pub m: usize,
    pub modulus: &'static str,
    pub factor_degree: usize,
    /// Published factors, low-degree part only (`x + a_i` or `x^2 + f_i`).
    pub published: &'static [&'static str],
    pub rows: &'static [RowSpec],
}

const PREFIX_ROWS_7: &[RowSpec] = &[
    RowSpec { factors: &[0, 1], expected: [7, 5, 3] },
    RowSpec { factors: &[0, 1, 2], expected: [7, 4, 4] },
    RowSpec { factors: &[0, 1, 2, 3], expected: [7, 3, 5] },
    RowSpec { factors: &[0, 1, 2, 3, 4], expected: [7, 2, 6] },
];

static X7_MINUS_2: TableSpec = TableSpec {
    p: 7,
    m: 7,
    modulus: "x^7 - 2",
    factor_degree: 1,
    published: &[
        "5*w^6 + w^5 + 2*w^4 + w^3 + 3*w^2 + 6*w + 2",
        "4*w^5 + 4*w^3 + w^2 + 1",
        "4*w^6 + 6*w^4 + w^3 + 6*w + 2",
        "5*w^6 + 5*w^5 + 3*w^4 + 5*w^3 + 2*w^2 + 3*w + 2",
        "4*w^6 + 6*w^5 + 6*w^4 + 3*w^3 + 2*w^2 + 4*w + 3",
        "6*w^5 + 6*w^4 + 2*w^3 + 3*w^2 + 4*w + 6",
        "3*w^6 + 2*w^5 + 4*w^3 + 4*w + 2",
    ],
    rows: PREFIX_ROWS_7,
};

static X7_MINUS_4: TableSpec = TableSpec {
    p: 7,
    m: 7,
    modulus: "x^7 - 4",
    factor_degree: 1,
    published: &[
        "5*w^6 + w^4 + 3*w + 2",
        "w^6 + 3*w^5 + w^4 + 3*w^3 + 6*w^2 + 2*w + 5",
        "3*w^6 + w^5 + 4*w^4 + 5*w^3 + 4*w^2 + 3",
        "2*w^6 + 4*w^5 + 5*w^4 + 5*w^3 + 4*w^2 + 3*w + 2",
        "6*w^5 + w^4 + w^3 + w^2 + 3*w + 4",
        "4*w^6 + 3*w^5 + 3*w^4 + 6*w^3 + 2*w + 1",
        "6*w^6 + w^5 + 6*w^4 + 4*w^3 + 6",
    ],
    rows: PREFIX_ROWS_7,
};

static X7_MINUS_1: TableSpec = TableSpec {
    p: 7,
    m: 7,
    modulus: "x^7 - 1",
    factor_degree: 1,
    published: &[
        "w^6 + 3*w^5 + 5*w^4 + 6*w^3 + 5*w^2 + 5*w + 6",
        "w^6 + w^4 + 4*w^2 + 6*w",
        "3*w^6 + w^5 + 3*w^4 + 6*w^3 + w^2 + w",
        "3*w^5 + w^3 + 3*w^2 + 2*w + 4",
        "2*w^6 + 5*w^5 + 6*w^4 + 5*w^2 + w + 6",
        "5*w^6 + 2*w^5 + 3*w^4 + w^3 + 6*w^2 + 3*w + 3",
        "2*w^6 + 2*w^5 + 5*w^4 + w^3 + 2*w^2 + w + 2",
    ],
    rows: PREFIX_ROWS_7,
};

static X5_MINUS_1: TableSpec = TableSpec {
    p: 5,
    m: 5,
    modulus: "x^5 - 1",
    factor_degree: 1,
    published: &[
        "4*w^4 + 2*w^3 + 2*w^2 + 4*w",
        "2*w^4 + 2*w^3 + 3*w^2 + w + 4",
        "4*w^4 + 4*w^3 + 3*w + 2",
        "2*w^4 + w^3 + 4*w^2 + 3*w + 2",
        "3*w^4 + 2*w^3 + 4*w^2 + 2*w + 4",
    ],
    rows: &[
        RowSpec { factors: &[0, 1], expected: [5, 3, 3] },
        RowSpec { factors: &[0, 1, 2], expected: [5, 2, 4] },
        RowSpec { factors: &[2, 3, 4], expected: [5, 2, 4] },
    ],
};

static QUADRATIC: TableSpec = TableSpec {
    p: 5,
    m: 5,
    modulus: "x^10 + x^5 + 1",
    factor_degree: 2,
    published: &[
        "(4*w^4 + 3*w^3 + 2*w^2 + 3*w + 1)*x + 3*w^3 + 2*w^2 + w + 2",
        "(3*w^4 + w^3 + 4*w^2 + w + 4)*x + 4*w^4 + w^3 + 3*w^2 + 4*w + 2",
        "(w^4 + 4*w^3 + 4*w)*x + w^4 + 3*w^3 + 3*w^2 + w",
        "4*x + 2*w^4 + w^3 + 4*w^2 + 3*w",
        "(2*w^4 + 4*w^3 + 3*w + 1)*x + 4*w^4 + 2*w^3 + 2*w^2 + 2*w + 4",
    ],
    rows: &[
        RowSpec { factors: &[0], expected: [10, 8, 3] },
        RowSpec { factors: &[0, 1], expected: [10, 6, 5] },
        RowSpec { factors: &[0, 1, 2], expected: [10, 4, 7] },
        RowSpec { factors: &[2, 3, 4], expected: [10, 4, 7] },
    ],
};

/// Low-degree parts of the three quadratic factors used for `x^10 - x^5 + 1`.
pub const ALTERNATING_FACTORS: [&str; 3] = [
    "(4*w^3 + 4*w + 1)*x + 2*w^4 + 3*w^3 + w^2 + 3*w + 3",
    "(2*w^4 + 4*w^3 + 4*w^2 + 2*w)*x + 4*w^4 + w^3 + 4*w^2 + 2*w + 4",
    "(4*w^4 + 2*w^3 + 2*w^2 + 3)*x + 4*w^4 + 3*w^3 + 2*w^2 + 3*w",
];

/// Where the factors of a table come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorSource {
    /// Peeled least right factors.
    Derived,
    /// The published list.
    Published,
}

impl fmt::Display for FactorSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorSource::Derived => "derived",
            FactorSource::Published => "published",
        })
    }
}

/// `F_{p^m}[x; θ]` with `θ(a) = a^p`.
pub fn frobenius_ring(p: u32, m: usize) -> Result<SkewRing, TableError> {
    let field = Field::conway(p, m).map_err(|_| TableError::ModulusUnavailable { p, m })?;
    let ring = ChainRing::new(field, 1).map_err(|e| TableError::Code(e.into()))?;
    let auto = ring
        .automorphism(FieldAutomorphism { exponent: 1 }, &[])
        .map_err(|e| TableError::Code(e.into()))?;
    Ok(SkewRing::new(ring, auto))
}

fn parse(s: &SkewRing, text: &str) -> SkewPoly {
    parse_poly(s, text).expect("built-in polynomial text parses")
}

/// The published factors as monic polynomials.
pub fn published_factors(s: &SkewRing, spec: &TableSpec) -> Vec<SkewPoly> {
    let lead = if spec.factor_degree == 1 { "x" } else { "x^2" };
    spec.published.iter().map(|t| parse(s, &format!("{lead} + {t}"))).collect()
}

/// Factors whose left-to-right product is the modulus.
pub fn factors(s: &SkewRing, spec: &TableSpec, source: FactorSource) -> Result<Vec<SkewPoly>, TableError> {
    match source {
        FactorSource::Published => Ok(published_factors(s, spec)),
        FactorSource::Derived => {
            let modulus = parse(s, spec.modulus);
            let found = if spec.factor_degree == 1 {
                peel_linear_factorization(s, &modulus, DEFAULT_FIELD_CAP)?
            } else {
                peel_quadratic_factorization(s, &modulus, DEFAULT_FIELD_CAP)?
            };
            found.ok_or(TableError::NoFactorization { degree: spec.factor_degree })
        }
    }
}

/// Result of checking one row.
#[derive(Debug, Clone)]
pub struct RowReport {
    pub generator: String,
    pub generator_poly: SkewPoly,
    pub expected: [usize; 3],
    pub params: CodeParams,
    pub pass: bool,
}

impl RowReport {
    pub fn got(&self) -> [usize; 3] {
        [self.params.n, self.params.k_dim.unwrap_or(0), self.params.d]
    }
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub id: TableId,
    pub source: FactorSource,
    pub modulus: String,
    pub factors: Vec<String>,
    /// Whether the factors multiply back to the modulus.
    pub product_ok: bool,
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn pass(&self) -> bool {
        self.product_ok && self.rows.iter().all(|r| r.pass)
    }
}

fn label(spec: &TableSpec, idx: &[usize]) -> String {
    idx.iter()
        .map(|i| if spec.factor_degree == 1 { format!("(x+a{})", i + 1) } else { format!("(x^2+f{})", i + 1) })
        .collect()
}

/// Builds each row's code and computes its parameters.
pub fn verify_table(id: TableId, source: FactorSource) -> Result<TableReport, TableError> {
    let spec = id.spec();
    let s = frobenius_ring(spec.p, spec.m)?;
    let modulus = parse(&s, spec.modulus);
    let fs = factors(&s, spec, source)?;
    let product_ok = s.product(fs.iter()) == modulus;
    let amb = Ambient::new(&s, modulus)?;
    let mut rows = Vec::new();
    for row in spec.rows {
        let g = s.product(row.factors.iter().map(|&i| &fs[i]));
        let code = LeftIdealCode::from_generators(&amb, std::slice::from_ref(&g))?;
        let params = min_distance(&code)?;
        let got = [params.n, params.k_dim.unwrap_or(0), params.d];
        let pass = got == row.expected && params.mds == Some(true);
        rows.push(RowReport { generator: label(spec, row.factors), generator_poly: g, expected: row.expected, params, pass });
    }
    Ok(TableReport {
        id,
        source,
        modulus: spec.modulus.to_string(),
        factors: fs.iter().map(|f| format_poly(&s, f)).collect(),
        product_ok,
        rows,
    })
}

/// One skew-versus-commutative comparison.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub modulus: String,
    pub generator: String,
    pub skew: CodeParams,
    pub commutative: CodeParams,
    /// Whether the product right-divides the modulus in each ring; when it
    /// does, the generator-matrix code is the left ideal it generates.
    pub skew_divides: bool,
    pub commutative_divides: bool,
    pub expected_skew: [usize; 3],
    pub expected_commutative: [usize; 3],
}

impl Comparison {
    pub fn pass(&self) -> bool {
        let get = |p: &CodeParams| [p.n, p.k_dim.unwrap_or(0), p.d];
        get(&self.skew) == self.expected_skew && get(&self.commutative) == self.expected_commutative
    }
}

/// The same factor product taken in `F[x; θ]` and in `F[x]`, each giving the
/// code with generator matrix rows `x^i·g`, `i < N - deg g`.
pub fn compare_skew_and_commutative(
    modulus: &str,
    factor_texts: &[&str],
    expected_skew: [usize; 3],
    expected_commutative: [usize; 3],
) -> Result<Comparison, TableError> {
    let s = frobenius_ring(5, 5)?;
    let c = s.with_identity();
    let mut params = Vec::new();
    let mut divides = Vec::new();
    for ring in [&s, &c] {
        let g = ring.product(factor_texts.iter().map(|t| parse(ring, &format!("x^2 + {t}"))).collect::<Vec<_>>().iter());
        let amb = Ambient::new(ring, parse(ring, modulus))?;
        divides.push(ring.right_divides(&g, amb.modulus()).map_err(CodeError::from)?);
        let code = LeftIdealCode::from_generator_matrix(&amb, &g)?;
        params.push(min_distance(&code)?);
    }
    let commutative = params.pop().expect("two codes");
    let skew = params.pop().expect("two codes");
    Ok(Comparison {
        modulus: modulus.to_string(),
        generator: format!("{} quadratic factors", factor_texts.len()),
        skew,
        commutative,
        skew_divides: divides[0],
        commutative_divides: divides[1],
        expected_skew,
        expected_commutative,
    })
}

/// Both comparisons: the last three factors of `x^10 + x^5 + 1` gain distance
/// under `θ`, the three factors listed for `x^10 - x^5 + 1` lose it.
pub fn verify_remark() -> Result<Vec<Comparison>, TableError> {
    let spec = TableId::Quadratic.spec();
    Ok(vec![
        compare_skew_and_commutative(spec.modulus, &spec.published[2..5], [10, 4, 7], [10, 4, 6])?,
        compare_skew_and_commutative("x^10 - x^5 + 1", &ALTERNATING_FACTORS, [10, 4, 6], [10, 4, 7])?,
    ])
}

//! One function per subcommand.

use serde_json::{json, Value};
use skewcode::code::{enumerate_ideals, Ambient, IdealType, LeftIdealCode};
use skewcode::crt::CrtSystem;
use skewcode::factor::{factor_length3, factor_length6, peel_linear_factorization, CentralFactorization};
use skewcode::metrics::min_distance_capped;
use skewcode::tables::{verify_remark, verify_table, FactorSource, TableId};
use skewcode::text::format_poly;
use skewcode::{SkewPoly, SkewRing};

use crate::context::{elem, emit, fail, header, poly, skew_ring, CliResult, Context};
use crate::{CodeArgs, EnumerateArgs, FactorArgs, Format, Outcome, Shape, Source, VerifyArgs};

fn fmt_all(s: &SkewRing, fs: &[SkewPoly]) -> Vec<String> {
    fs.iter().map(|f| format_poly(s, f)).collect()
}

fn central_factorization(s: &SkewRing, a: &FactorArgs) -> CliResult<CentralFactorization> {
    let lambda = elem(s, &a.lambda, "lambda")?;
    match a.shape() {
        Shape::Len3 => factor_length3(s, &lambda, a.s).ctx("factor"),
        Shape::Len6 => factor_length6(s, &lambda, a.s).ctx("factor"),
        Shape::Generic => fail("--generic gives linear factors, not a central factorization"),
    }
}

pub fn factor(a: &FactorArgs) -> CliResult<Outcome> {
    let s = skew_ring(&a.ring)?;
    let mut out = header(&s);
    if a.shape() == Shape::Generic {
        let Some(n) = a.n else { return fail("--generic needs --n") };
        let lambda = elem(&s, &a.lambda, "lambda")?;
        let modulus = s.binomial(n, &lambda);
        let peeled = peel_linear_factorization(&s, &modulus, a.cap_field).ctx("factor")?;
        out.insert("modulus".into(), json!(format_poly(&s, &modulus)));
        out.insert("case_tag".into(), json!("linear peel"));
        let outcome = match &peeled {
            Some(fs) => {
                let ok = s.product(fs.iter()) == modulus;
                out.insert("factors".into(), json!(fmt_all(&s, fs)));
                out.insert("product_ok".into(), json!(ok));
                if ok { Outcome::Pass } else { Outcome::Mismatch }
            }
            None => {
                out.insert("factors".into(), Value::Null);
                out.insert("product_ok".into(), Value::Null);
                Outcome::Pass
            }
        };
        emit(&Value::Object(out), a.ring.format);
        return Ok(outcome);
    }
    let fact = central_factorization(&s, a)?;
    let verified = fact.verify(&s);
    let mut factors = Vec::new();
    for f in &fact.factors {
        factors.push(json!({
            "base": format_poly(&s, &f.base),
            "poly": format_poly(&s, &f.poly),
            "multiplicity": f.multiplicity,
            "irreducible": f.irreducible,
            "central": s.is_central(&f.poly).ctx("centrality")?,
        }));
    }
    out.insert("modulus".into(), json!(format_poly(&s, &fact.modulus)));
    out.insert("case_tag".into(), json!(fact.case_tag));
    out.insert("factors".into(), Value::Array(factors));
    out.insert("verified".into(), json!(verified.is_ok()));
    if let Err(e) = &verified {
        out.insert("verification_error".into(), json!(e.to_string()));
    }
    emit(&Value::Object(out), a.ring.format);
    Ok(if verified.is_ok() { Outcome::Pass } else { Outcome::Mismatch })
}

pub fn idempotents(a: &FactorArgs) -> CliResult<Outcome> {
    let s = skew_ring(&a.ring)?;
    let fact = central_factorization(&s, a)?;
    let sys = CrtSystem::new(&s, &fact).ctx("idempotents")?;
    let report = sys.identities().ctx("identities")?;
    let mut out = header(&s);
    out.insert("modulus".into(), json!(format_poly(&s, sys.modulus())));
    out.insert("blocks".into(), json!(fmt_all(&s, sys.blocks())));
    out.insert("idempotents".into(), json!(fmt_all(&s, sys.idempotents())));
    out.insert(
        "identities".into(),
        json!({
            "sum_is_one": report.sum_is_one,
            "idempotent": report.idempotent,
            "orthogonal": report.orthogonal,
        }),
    );
    emit(&Value::Object(out), a.ring.format);
    Ok(if report.all_hold() { Outcome::Pass } else { Outcome::Mismatch })
}

fn build_code(a: &CodeArgs) -> CliResult<(SkewRing, LeftIdealCode)> {
    let s = skew_ring(&a.ring)?;
    let amb = match (&a.modulus, a.n) {
        (Some(m), _) => Ambient::new(&s, poly(&s, m, "modulus")?).ctx("ambient")?,
        (None, Some(n)) => Ambient::constacyclic(&s, n, &elem(&s, &a.lambda, "lambda")?).ctx("ambient")?,
        (None, None) => return fail("give --modulus or --n"),
    };
    let gens = a.generators.iter().map(|g| poly(&s, g, "generator")).collect::<CliResult<Vec<_>>>()?;
    let code = if a.generator_matrix {
        if gens.len() != 1 {
            return fail("--generator-matrix takes exactly one --gen");
        }
        LeftIdealCode::from_generator_matrix(&amb, &gens[0]).ctx("code")?
    } else {
        LeftIdealCode::from_generators(&amb, &gens).ctx("code")?
    };
    Ok((s, code))
}

pub fn code_info(a: &CodeArgs) -> CliResult<Outcome> {
    let (s, code) = build_code(a)?;
    let amb = code.ambient();
    let mut out = header(&s);
    out.insert("modulus".into(), json!(format_poly(&s, amb.modulus())));
    out.insert("length".into(), json!(code.length()));
    out.insert("cardinality".into(), json!(code.cardinality().map(|c| c.to_string())));
    out.insert("log_p_cardinality".into(), json!(code.log_p_cardinality()));
    out.insert("k_dim".into(), json!(code.dimension()));
    out.insert("torsion_profile".into(), json!(code.torsion_profile()));
    out.insert("is_left_ideal".into(), json!(code.is_left_ideal()));
    let gens = code.minimal_generators().ok();
    out.insert("generators".into(), json!(gens.map(|g| fmt_all(&s, &g))));
    let dual = match code.dual_code() {
        Ok(d) => Some(d),
        Err(_) => Some(code.euclidean_dual()),
    };
    let dual_gens = dual.as_ref().and_then(|d| d.minimal_generators().ok());
    out.insert("dual_generators".into(), json!(dual_gens.map(|g| fmt_all(&s, &g))));
    out.insert("dual_log_p_cardinality".into(), json!(dual.as_ref().map(|d| d.log_p_cardinality())));
    out.insert("self_dual".into(), json!(code.is_self_dual()));
    emit(&Value::Object(out), a.ring.format);
    Ok(Outcome::Pass)
}

pub fn distance(a: &CodeArgs) -> CliResult<Outcome> {
    let (s, code) = build_code(a)?;
    let params = min_distance_capped(&code, a.cap_exhaustive).ctx("distance")?;
    let mut out = header(&s);
    out.insert("n".into(), json!(params.n));
    out.insert("k".into(), json!(params.k_dim));
    out.insert("log_p_cardinality".into(), json!(params.log_p_cardinality));
    out.insert("d".into(), json!(params.d));
    out.insert("mds".into(), json!(params.mds));
    out.insert("singleton_defect".into(), json!(params.singleton_defect()));
    out.insert("method".into(), json!(params.method.to_string()));
    let witness: Vec<String> = params.witness.iter().map(|c| s.ring().format(c)).collect();
    out.insert("witness".into(), json!(witness));
    emit(&Value::Object(out), a.ring.format);
    Ok(Outcome::Pass)
}

pub fn enumerate(a: &EnumerateArgs) -> CliResult<Outcome> {
    let s = skew_ring(&a.ring)?;
    let f = poly(&s, &a.f, "f")?;
    let amb = Ambient::new(&s, s.pow(&f, a.j)).ctx("ambient")?;
    let ideals = enumerate_ideals(&amb, a.cap_candidates).ctx("enumerate")?;
    let mut out = header(&s);
    out.insert("modulus".into(), json!(format_poly(&s, amb.modulus())));
    out.insert("count".into(), json!(ideals.len()));
    if s.ring().k() == 2 {
        let mut counts = serde_json::Map::new();
        for t in [IdealType::Trivial, IdealType::NonMonicPrincipal, IdealType::Principal, IdealType::NonPrincipal] {
            counts.insert(t.label().into(), json!(ideals.iter().filter(|i| i.kind == Some(t)).count()));
        }
        out.insert("types".into(), Value::Object(counts));
    }
    let list: Vec<Value> = ideals
        .iter()
        .map(|i| {
            json!({
                "generators": fmt_all(&s, &i.form.generators(&amb)),
                "log_p_cardinality": i.code.log_p_cardinality(),
                "torsion_profile": i.code.torsion_profile(),
                "type": i.kind.map(|t| t.label()),
            })
        })
        .collect();
    out.insert("ideals".into(), Value::Array(list));
    emit(&Value::Object(out), a.ring.format);
    Ok(Outcome::Pass)
}

pub fn verify_tables(a: &VerifyArgs) -> CliResult<Outcome> {
    let (ids, remark): (Vec<TableId>, bool) = match a.table.as_str() {
        "all" => (TableId::ALL.to_vec(), true),
        "remark" => (Vec::new(), true),
        n => match n.parse().ok().and_then(TableId::from_number) {
            Some(id) => (vec![id], false),
            None => return fail(format!("unknown table {n:?}; expected 1-5, remark or all")),
        },
    };
    let sources: &[FactorSource] = match a.source {
        Source::Derived => &[FactorSource::Derived],
        Source::Published => &[FactorSource::Published],
        Source::Both => &[FactorSource::Derived, FactorSource::Published],
    };
    let mut all_pass = true;
    let mut reports = Vec::new();
    for &id in &ids {
        for &src in sources {
            let r = verify_table(id, src).ctx("verify")?;
            all_pass &= r.pass();
            if a.format == Format::Table {
                println!("table {} ({}) {}: product {}", id.number(), src, r.modulus, if r.product_ok { "ok" } else { "WRONG" });
                for row in &r.rows {
                    println!(
                        "  {:<40} expected {:?} got {:?} {} {}",
                        row.generator,
                        row.expected,
                        row.got(),
                        row.params.method,
                        if row.pass { "PASS" } else { "FAIL" }
                    );
                }
            }
            let rows: Vec<Value> = r
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "generator": row.generator,
                        "expected": row.expected,
                        "got": row.got(),
                        "mds": row.params.mds,
                        "method": row.params.method.to_string(),
                        "pass": row.pass,
                    })
                })
                .collect();
            reports.push(json!({
                "table": id.number(),
                "source": src.to_string(),
                "modulus": r.modulus,
                "factors": r.factors,
                "product_ok": r.product_ok,
                "rows": rows,
                "pass": r.pass(),
            }));
        }
    }
    if remark {
        for c in verify_remark().ctx("remark")? {
            all_pass &= c.pass();
            let get = |p: &skewcode::metrics::CodeParams| [p.n, p.k_dim.unwrap_or(0), p.d];
            if a.format == Format::Table {
                println!(
                    "remark {}: skew {:?} (expected {:?}) commutative {:?} (expected {:?}) {}",
                    c.modulus,
                    get(&c.skew),
                    c.expected_skew,
                    get(&c.commutative),
                    c.expected_commutative,
                    if c.pass() { "PASS" } else { "FAIL" }
                );
            }
            reports.push(json!({
                "table": "remark",
                "modulus": c.modulus,
                "skew": get(&c.skew),
                "commutative": get(&c.commutative),
                "expected_skew": c.expected_skew,
                "expected_commutative": c.expected_commutative,
                "skew_divides": c.skew_divides,
                "commutative_divides": c.commutative_divides,
                "pass": c.pass(),
            }));
        }
    }
    if a.format == Format::Json {
        emit(&json!({ "reports": reports, "pass": all_pass }), Format::Json);
    }
    Ok(if all_pass { Outcome::Pass } else { Outcome::Mismatch })
}

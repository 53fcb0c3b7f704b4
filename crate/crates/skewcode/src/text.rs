//! Text formats.
//!
//! - Field spec: `p^m` (Conway modulus) or `p^m:c0,c1,…,cm` (modulus low-to-high).
//! - Ring spec: a field spec followed by `|k`, e.g. `7^1|2`.
//! - Automorphism spec: `theta=e;eta1=<elt>;eta2=<elt>;…`.
//! - Polynomials: sums of products of integers, `w` (field generator),
//!   `u` and `x`, with `^`, `*`, `+`, `-` and parentheses. Products are taken
//!   in the skew ring, so `x*w` means `θ(w)·x`.
//!
//! Printing is canonical: `c0 + c1*x + c2*x^2 + …` with coefficients
//! `a0+a1*u+…` and field elements as polynomials in `w`, highest power first.
//!
//! ```
//! use skewcode::text::{format_poly, parse_poly, parse_ring_spec, parse_automorphism};
//! use skewcode::SkewRing;
//!
//! let ring = parse_ring_spec("5^2|2").unwrap();
//! let auto = parse_automorphism(&ring, "theta=1;eta1=3").unwrap();
//! let s = SkewRing::new(ring, auto);
//! let f = parse_poly(&s, "x*w").unwrap();
//! assert_eq!(format_poly(&s, &f), "(4*w+1)*x");
//! assert_eq!(parse_poly(&s, &format_poly(&s, &f)).unwrap(), f);
//! ```

use thiserror::Error;

use crate::chain::{Automorphism, ChainRing, RingElem};
use crate::field::{Field, FieldAutomorphism, Fq};
use crate::skew::{SkewPoly, SkewRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, message: message.into() })
}

/// Parses `p^m` or `p^m:c0,…,cm`; a bare `p` means `p^1`.
pub fn parse_field_spec(spec: &str) -> Result<Field, ParseError> {
    let spec = spec.trim();
    let (head, modulus) = match spec.split_once(':') {
        Some((h, m)) => (h, Some(m)),
        None => (spec, None),
    };
    let (p_text, m_text) = head.split_once('^').unwrap_or((head, "1"));
    let p: u32 = p_text.trim().parse().or_else(|_| err(0, format!("bad prime {p_text:?}")))?;
    let m: usize = m_text
        .trim()
        .parse()
        .or_else(|_| err(p_text.len() + 1, format!("bad degree {m_text:?}")))?;
    let field = match modulus {
        None => Field::conway(p, m),
        Some(list) => {
            let offset = head.len() + 1;
            let mut coeffs = Vec::new();
            let mut pos = offset;
            for part in list.split(',') {
                let c: u32 = part
                    .trim()
                    .parse()
                    .or_else(|_| err(pos, format!("bad coefficient {part:?}")))?;
                coeffs.push(c);
                pos += part.len() + 1;
            }
            if coeffs.len() != m + 1 {
                return err(offset, format!("modulus needs {} coefficients, got {}", m + 1, coeffs.len()));
            }
            Field::new(p, &coeffs)
        }
    };
    field.or_else(|e| err(0, e.to_string()))
}

/// Parses `<field spec>|k`; a missing `|k` means `k = 1`.
pub fn parse_ring_spec(spec: &str) -> Result<ChainRing, ParseError> {
    let (fs, ks) = spec.rsplit_once('|').unwrap_or((spec, "1"));
    let field = parse_field_spec(fs)?;
    let k: usize = ks.trim().parse().or_else(|_| err(fs.len() + 1, format!("bad k {ks:?}")))?;
    ChainRing::new(field, k).or_else(|e| err(fs.len() + 1, e.to_string()))
}

/// Parses `theta=e;eta1=…;…`; omitted etas default to 1, omitted theta to 0.
pub fn parse_automorphism(ring: &ChainRing, spec: &str) -> Result<Automorphism, ParseError> {
    let mut theta = 0usize;
    let mut eta: Vec<RingElem> = vec![ring.one(); ring.k() - 1];
    let mut pos = 0;
    for part in spec.split(';') {
        let trimmed = part.trim();
        if trimmed.is_empty() {
            pos += part.len() + 1;
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            return err(pos, format!("expected key=value, got {trimmed:?}"));
        };
        let key = key.trim();
        if key == "theta" {
            theta = value.trim().parse().or_else(|_| err(pos, format!("bad theta {value:?}")))?;
        } else if let Some(idx) = key.strip_prefix("eta") {
            let i: usize = idx.parse().or_else(|_| err(pos, format!("bad key {key:?}")))?;
            if i == 0 || i >= ring.k() {
                return err(pos, format!("eta{i} out of range for k = {}", ring.k()));
            }
            eta[i - 1] = parse_ring_elem(ring, value).map_err(|e| ParseError {
                pos: pos + key.len() + 1 + e.pos,
                message: e.message,
            })?;
        } else {
            return err(pos, format!("unknown key {key:?}"));
        }
        pos += part.len() + 1;
    }
    ring.automorphism(FieldAutomorphism { exponent: theta % ring.field().m() }, &eta)
        .or_else(|e| err(0, e.to_string()))
}

/// Canonical automorphism spec.
pub fn format_automorphism(ring: &ChainRing, a: &Automorphism) -> String {
    let mut out = format!("theta={}", a.theta().exponent);
    for (i, e) in a.eta().iter().enumerate() {
        out.push_str(&format!(";eta{}={}", i + 1, ring.format(e)));
    }
    out
}

/// Canonical ring spec with the explicit modulus.
pub fn format_ring_spec(ring: &ChainRing) -> String {
    let f = ring.field();
    let coeffs: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
    format!("{}^{}:{}|{}", f.p(), f.m(), coeffs.join(","), ring.k())
}

pub fn parse_poly(s: &SkewRing, text: &str) -> Result<SkewPoly, ParseError> {
    let mut parser = Parser { s, bytes: text.as_bytes(), pos: 0 };
    let out = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return err(parser.pos, "unexpected trailing input");
    }
    Ok(out)
}

pub fn parse_ring_elem(ring: &ChainRing, text: &str) -> Result<RingElem, ParseError> {
    let s = SkewRing::commutative(ring.clone());
    let f = parse_poly(&s, text)?;
    match f.degree() {
        None => Ok(ring.zero()),
        Some(0) => Ok(f.coeffs()[0].clone()),
        Some(_) => err(0, "ring element may not contain x"),
    }
}

pub fn parse_field_elem(field: &Field, text: &str) -> Result<Fq, ParseError> {
    let ring = ChainRing::new(field.clone(), 1).expect("k = 1");
    parse_ring_elem(&ring, text).map(|a| a[0])
}

/// `c0 + c1*x + …`, skipping zero terms.
pub fn format_poly(s: &SkewRing, f: &SkewPoly) -> String {
    let ring = s.ring();
    let mut terms = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if ring.is_zero(c) {
            continue;
        }
        let coeff = ring.format(c);
        let xpart = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        terms.push(match (i, coeff.as_str()) {
            (0, _) => coeff,
            (_, "1") => xpart,
            _ if ring.term_count(c) > 1 => format!("({coeff})*{xpart}"),
            _ => format!("{coeff}*{xpart}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

struct Parser<'a> {
    s: &'a SkewRing,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<SkewPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { self.s.add(&acc, &rhs) } else { self.s.sub(&acc, &rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SkewPoly, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = self.s.mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SkewPoly, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(self.s.neg(&inner));
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        self.power()
    }

    fn power(&mut self) -> Result<SkewPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.integer()?;
            if e > 1_000_000 {
                return err(start, "exponent too large");
            }
            return Ok(self.s.pow(&base, e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected an integer");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .or_else(|_| err(start, "integer overflow"))
    }

    fn atom(&mut self) -> Result<SkewPoly, ParseError> {
        let ring = self.s.ring();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let v = self.integer()?;
                let p = ring.field().p() as u64;
                Ok(self.s.constant(&ring.from_int((v % p) as i64)))
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(self.s.constant(&ring.lift(&ring.field().generator())))
            }
            Some(b'u') => {
                if ring.k() < 2 {
                    return err(self.pos, "u requires k >= 2");
                }
                self.pos += 1;
                Ok(self.s.constant(&ring.u_pow(1)))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(self.s.x())
            }
            Some(c) => err(self.pos, format!("unexpected character {:?}", c as char)),
            None => err(self.pos, "unexpected end of input"),
        }
    }
}

//! Row reduction over `F_{p^m}` and over `R_k`.

use crate::chain::{ChainRing, RingElem};
use crate::field::{Field, Fq};

/// Reduced row echelon form over a field, built incrementally.
///
/// Rows are kept sorted by pivot column with every pivot equal to 1 and
/// cleared above and below, so two spans are equal iff their forms are equal.
#[derive(Clone, Debug)]
pub struct FieldEchelon {
    field: Field,
    ncols: usize,
    rows: Vec<Vec<Fq>>,
    pivots: Vec<usize>,
}

impl PartialEq for FieldEchelon {
    fn eq(&self, other: &Self) -> bool {
        self.ncols == other.ncols && self.rows == other.rows
    }
}

impl Eq for FieldEchelon {}

impl FieldEchelon {
    pub fn new(field: &Field, ncols: usize) -> Self {
        FieldEchelon { field: field.clone(), ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<'a>(field: &Field, ncols: usize, rows: impl IntoIterator<Item = &'a Vec<Fq>>) -> Self {
        let mut e = FieldEchelon::new(field, ncols);
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Fq>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection on the span; zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: Vec<Fq>) -> Vec<Fq> {
        let f = &self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row).skip(pc) {
                if !r.is_zero() {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Fq]) -> bool {
        self.reduce(v.to_vec()).iter().all(Fq::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<Fq>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(&v[pc]).expect("nonzero pivot");
        for x in v.iter_mut().skip(pc) {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c.is_zero() {
                continue;
            }
            for (x, r) in row.iter_mut().zip(&v).skip(pc) {
                if !r.is_zero() {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }

    /// Whether every row of `other` lies in this span.
    pub fn contains_span(&self, other: &FieldEchelon) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Basis of `{y : <r, y> = 0 for every row r}`.
    pub fn null_space(&self) -> Vec<Vec<Fq>> {
        let f = &self.field;
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut y = vec![Fq::ZERO; self.ncols];
            y[free] = f.one();
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                y[pc] = f.neg(&row[free]);
            }
            out.push(y);
        }
        out
    }

    /// Rank of the column submatrix on `cols`.
    pub fn column_rank(field: &Field, rows: &[Vec<Fq>], cols: &[usize]) -> usize {
        let mut e = FieldEchelon::new(field, cols.len());
        for r in rows {
            e.insert(cols.iter().map(|&c| r[c]).collect());
        }
        e.rank()
    }
}

/// Nonzero solution `y` of `A y = 0` restricted to `cols`, when one exists.
pub fn column_dependency(field: &Field, rows: &[Vec<Fq>], cols: &[usize]) -> Option<Vec<Fq>> {
    // null space of the |cols|-column submatrix
    let mut e = FieldEchelon::new(field, cols.len());
    for r in rows {
        e.insert(cols.iter().map(|&c| r[c]).collect());
    }
    e.null_space().into_iter().next()
}

/// Echelon form over `R_k` with pivots `u^{v_i}` and the extra rows
/// `u^{k - v_i}·(pivot row)` folded back in, so that membership can be decided
/// by forward reduction.
#[derive(Clone, Debug)]
pub struct ChainEchelon {
    ring: ChainRing,
    ncols: usize,
    rows: Vec<Vec<RingElem>>,
    pivots: Vec<(usize, usize)>,
}

impl ChainEchelon {
    pub fn new(ring: &ChainRing, ncols: usize, generators: Vec<Vec<RingElem>>) -> Self {
        let r = ring;
        let k = r.k();
        let mut pool: Vec<Vec<RingElem>> =
            generators.into_iter().filter(|v| v.iter().any(|c| !r.is_zero(c))).collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..ncols {
            let best = pool
                .iter()
                .enumerate()
                .filter_map(|(i, v)| r.valuation(&v[col]).map(|val| (val, i)))
                .min();
            let Some((val, idx)) = best else { continue };
            let mut piv = pool.swap_remove(idx);
            // scale so the pivot entry is exactly u^val
            let unit = r.shift_down(&piv[col], val);
            let unit_inv = r.inv(&unit).expect("unit part");
            for x in piv.iter_mut() {
                *x = r.mul(x, &unit_inv);
            }
            for v in pool.iter_mut() {
                if r.is_zero(&v[col]) {
                    continue;
                }
                let t = r.shift_down(&v[col], val);
                for (x, y) in v.iter_mut().zip(&piv) {
                    *x = r.sub(x, &r.mul(&t, y));
                }
            }
            let extra: Vec<RingElem> = piv.iter().map(|x| r.shift_up(x, k - val)).collect();
            pool.push(extra);
            pool.retain(|v| v.iter().any(|c| !r.is_zero(c)));
            rows.push(piv);
            pivots.push((col, val));
        }
        ChainEchelon { ring: ring.clone(), ncols, rows, pivots }
    }

    /// `(column, valuation)` of each pivot.
    pub fn pivots(&self) -> &[(usize, usize)] {
        &self.pivots
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// `log_p` of the span's cardinality: `m·Σ (k - v_i)`.
    pub fn log_p_cardinality(&self) -> u64 {
        let m = self.ring.field().m() as u64;
        let k = self.ring.k() as u64;
        self.pivots.iter().map(|&(_, v)| m * (k - v as u64)).sum()
    }

    pub fn contains(&self, v: &[RingElem]) -> bool {
        let r = &self.ring;
        let mut v = v.to_vec();
        for (row, &(col, val)) in self.rows.iter().zip(&self.pivots) {
            if r.is_zero(&v[col]) {
                continue;
            }
            match r.valuation(&v[col]) {
                Some(x) if x >= val => {}
                _ => return false,
            }
            let t = r.shift_down(&v[col], val);
            for (x, y) in v.iter_mut().zip(row) {
                *x = r.sub(x, &r.mul(&t, y));
            }
        }
        v.iter().all(|c| r.is_zero(c))
    }
}

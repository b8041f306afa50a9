//! Exact matrices over `F_q[x]`: Hermite normal form with a unimodular
//! transform, determinants, exact triangular factor solving, and entrywise
//! Frobenius and trace maps.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::poly::{LaurentPoly, Poly};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
    spec: Arc<FieldSpec>,
}

impl PolyMatrix {
    pub fn zeros(spec: &Arc<FieldSpec>, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(spec); rows * cols],
            spec: spec.clone(),
        }
    }

    pub fn identity(spec: &Arc<FieldSpec>, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(spec, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(spec));
        }
        m
    }

    pub fn diagonal(spec: &Arc<FieldSpec>, diag: Vec<Poly>) -> PolyMatrix {
        let n = diag.len();
        let mut m = PolyMatrix::zeros(spec, n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn from_rows(spec: &Arc<FieldSpec>, rows: Vec<Vec<Poly>>) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for p in row {
                if !p.spec().compatible(spec) {
                    return Err(Error::SpecMismatch);
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix { rows: r, cols: c, entries, spec: spec.clone() })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Poly> {
        self.row(i).to_vec()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(&self.spec, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.entry(i, j).clone());
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = PolyMatrix::zeros(&self.spec, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Poly::zero(&self.spec);
                for k in 0..self.cols {
                    if self.entry(i, k).is_zero() || rhs.entry(k, j).is_zero() {
                        continue;
                    }
                    acc = &acc + &(self.entry(i, k) * rhs.entry(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn stack_vertical(&self, below: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, below.cols, "matrix shape mismatch");
        let mut entries = self.entries.clone();
        entries.extend(below.entries.iter().cloned());
        PolyMatrix { rows: self.rows + below.rows, cols: self.cols, entries, spec: self.spec.clone() }
    }

    /// The top-left `rows x cols` block.
    pub fn submatrix(&self, rows: usize, cols: usize) -> PolyMatrix {
        assert!(rows <= self.rows && cols <= self.cols);
        let mut out = PolyMatrix::zeros(&self.spec, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.entry(i, j).clone());
            }
        }
        out
    }

    pub fn map<F: Fn(&Poly) -> Poly>(&self, f: F) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
            spec: self.spec.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn is_upper_triangular(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..i.min(self.cols) {
                if !self.entry(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_lower_triangular(&self) -> bool {
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if !self.entry(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Entrywise, coefficientwise sigma^mu.
    pub fn frobenius(&self, mu: usize) -> PolyMatrix {
        self.map(|p| p.frobenius(mu))
    }

    /// Entrywise, coefficientwise relative trace onto F_{p^upsilon}.
    pub fn trace_to_subfield(&self, upsilon: usize) -> Result<PolyMatrix> {
        self.spec.check_subfield_index(upsilon)?;
        let entries = self
            .entries
            .iter()
            .map(|p| p.trace_to_subfield(upsilon))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { rows: self.rows, cols: self.cols, entries, spec: self.spec.clone() })
    }

    pub fn entries_in_subfield(&self, upsilon: usize) -> Result<bool> {
        for p in &self.entries {
            if !p.coeffs_in_subfield(upsilon)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn row_sub_scaled(&mut self, target: usize, source: usize, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.entry(target, j) - &(factor * self.entry(source, j));
            self.set(target, j, v);
        }
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn row_scale(&mut self, i: usize, c: &FieldElement) {
        for j in 0..self.cols {
            let v = self.entry(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    /// Hermite normal form by Euclidean column elimination: pivots are the
    /// monic column gcds, entries below a pivot are zero, entries above have
    /// lower degree than the pivot. The output is the canonical basis of the
    /// row module, with `transform * self = hnf` for a unimodular transform.
    pub fn hermite_normal_form(&self) -> HnfResult {
        let mut h = self.clone();
        let mut u = PolyMatrix::identity(&self.spec, self.rows);
        let mut pivot = 0;
        for col in 0..self.cols {
            if pivot >= self.rows {
                break;
            }
            loop {
                let best = (pivot..h.rows)
                    .filter(|&r| !h.entry(r, col).is_zero())
                    .min_by_key(|&r| (h.entry(r, col).degree().unwrap(), r));
                let Some(best) = best else { break };
                h.row_swap(pivot, best);
                u.row_swap(pivot, best);
                let mut settled = true;
                for r in pivot + 1..h.rows {
                    if h.entry(r, col).is_zero() {
                        continue;
                    }
                    let (q, rem) = h.entry(r, col).divmod(h.entry(pivot, col)).unwrap();
                    h.row_sub_scaled(r, pivot, &q);
                    u.row_sub_scaled(r, pivot, &q);
                    if !rem.is_zero() {
                        settled = false;
                    }
                }
                if settled {
                    break;
                }
            }
            if h.entry(pivot, col).is_zero() {
                continue;
            }
            let lead_inv = h.entry(pivot, col).leading_coeff().unwrap().inv().unwrap();
            h.row_scale(pivot, &lead_inv);
            u.row_scale(pivot, &lead_inv);
            for r in 0..pivot {
                let (q, _) = h.entry(r, col).divmod(h.entry(pivot, col)).unwrap();
                h.row_sub_scaled(r, pivot, &q);
                u.row_sub_scaled(r, pivot, &q);
            }
            pivot += 1;
        }
        HnfResult { hnf: h, transform: u, rank: pivot }
    }

    /// Exact determinant: diagonal product for triangular inputs, otherwise
    /// fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(&self.spec));
        }
        if self.is_upper_triangular() || self.is_lower_triangular() {
            let mut acc = Poly::one(&self.spec);
            for i in 0..n {
                acc = &acc * self.entry(i, i);
            }
            return Ok(acc);
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = Poly::one(&self.spec);
        for k in 0..n - 1 {
            if m.entry(k, k).is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m.entry(r, k).is_zero()) else {
                    return Ok(Poly::zero(&self.spec));
                };
                m.row_swap(k, r);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(m.entry(i, j) * m.entry(k, k)) - &(m.entry(i, k) * m.entry(k, j));
                    let v = num.exact_div(&prev).map_err(|_| {
                        Error::Internal("Bareiss division not exact".into())
                    })?;
                    m.set(i, j, v);
                }
                m.set(i, k, Poly::zero(&self.spec));
            }
            prev = m.entry(k, k).clone();
        }
        let det = m.entry(n - 1, n - 1).clone();
        Ok(if negate { -&det } else { det })
    }

    /// Canonical matrix text block: one row per line, entries separated by
    /// `" | "`.
    pub fn parse(text: &str, spec: &Arc<FieldSpec>) -> Result<PolyMatrix> {
        let mut rows = Vec::new();
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split('|')
                .map(|cell| Poly::parse(cell, spec))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        PolyMatrix::from_rows(spec, rows)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            write!(f, "{}", cells.join(" | "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  {}", cells.join(" | "))?;
        }
        write!(f, "]")
    }
}

/// Result of a Hermite normal form computation.
#[derive(Clone, Debug)]
pub struct HnfResult {
    /// Echelon form with the reduced-GPM normalization; zero rows come last.
    pub hnf: PolyMatrix,
    /// Unimodular matrix with `transform * input = hnf`.
    pub transform: PolyMatrix,
    pub rank: usize,
}

impl HnfResult {
    /// The nonzero rows as a square matrix, for full-column-rank inputs.
    pub fn square(&self) -> Result<PolyMatrix> {
        if self.rank < self.hnf.cols() {
            return Err(Error::RankDeficient);
        }
        Ok(self.hnf.submatrix(self.hnf.cols(), self.hnf.cols()))
    }
}

/// Solves `X * g = d` for `X` by forward substitution over the columns of the
/// upper-triangular matrix `g`. Every division must be exact; otherwise `d`
/// is not in the row module of `g`. The product is re-verified before
/// returning.
pub fn solve_left_factor(g: &PolyMatrix, d: &PolyMatrix) -> Result<PolyMatrix> {
    let n = g.rows();
    if g.cols() != n {
        return Err(Error::NotSquare);
    }
    if !g.is_upper_triangular() || (0..n).any(|i| g.entry(i, i).is_zero()) {
        return Err(Error::Precondition(
            "solve_left_factor needs an upper-triangular g with nonzero diagonal".into(),
        ));
    }
    if d.cols() != n {
        return Err(Error::ShapeMismatch("column counts differ".into()));
    }
    let mut x = PolyMatrix::zeros(g.spec(), d.rows(), n);
    for i in 0..d.rows() {
        for j in 0..n {
            let mut acc = d.entry(i, j).clone();
            for h in 0..j {
                acc = &acc - &(x.entry(i, h) * g.entry(h, j));
            }
            let q = acc.exact_div(g.entry(j, j)).map_err(|_| Error::NotInRowModule)?;
            x.set(i, j, q);
        }
    }
    if x.matmul(g) != *d {
        return Err(Error::Internal("solve_left_factor product check failed".into()));
    }
    Ok(x)
}

/// A matrix of Laurent polynomials; carries the intermediate stages of the
/// dual construction.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> LaurentMatrix {
        assert_eq!(entries.len(), rows * cols);
        LaurentMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = (0..self.cols)
                .map(|j| self.entry(i, j).to_string())
                .collect();
            write!(f, "{}", cells.join(" | "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

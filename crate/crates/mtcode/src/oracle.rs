//! Brute-force verification layer, independent of the GPM machinery: MT
//! codes expanded to F_q generator matrices in reduced row echelon form,
//! duals and intersections by nullspace linear algebra, and minimum distance
//! by full enumeration.

use std::sync::Arc;

use crate::code::MTCode;
use crate::error::{Error, Result};
use crate::gf::{lcm, FieldElement, FieldSpec};

/// A linear code as an F_q-subspace: its generator matrix in canonical RREF.
/// Subspace equality is row-list equality.
#[derive(Clone, Debug)]
pub struct ExpandedCode {
    rows: Vec<Vec<FieldElement>>,
    n: usize,
    spec: Arc<FieldSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualSide {
    Euclidean,
    Right,
    Left,
}

fn rref(n: usize, mut rows: Vec<Vec<FieldElement>>) -> Vec<Vec<FieldElement>> {
    let mut pivot_row = 0;
    for col in 0..n {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].inv().expect("nonzero pivot");
        for c in rows[pivot_row].iter_mut() {
            *c = &*c * &inv;
        }
        for r in 0..rows.len() {
            if r == pivot_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..n {
                let sub = &factor * &rows[pivot_row][c];
                rows[r][c] = &rows[r][c] - &sub;
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.retain(|row| row.iter().any(|c| !c.is_zero()));
    rows
}

/// Reduces `v` against an echelon basis (rows with leading 1, sorted by
/// pivot column) and inserts the nonzero remainder; returns whether the rank
/// grew.
fn echelon_insert(echelon: &mut Vec<Vec<FieldElement>>, mut v: Vec<FieldElement>) -> bool {
    let n = v.len();
    for row in echelon.iter() {
        let pivot = row.iter().position(|c| !c.is_zero()).unwrap();
        if !v[pivot].is_zero() {
            let factor = v[pivot].clone();
            for c in 0..n {
                let sub = &factor * &row[c];
                v[c] = &v[c] - &sub;
            }
        }
    }
    let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
        return false;
    };
    let inv = v[pivot].inv().expect("nonzero pivot");
    for c in v.iter_mut() {
        *c = &*c * &inv;
    }
    let pos = echelon
        .iter()
        .position(|row| row.iter().position(|c| !c.is_zero()).unwrap() > pivot)
        .unwrap_or(echelon.len());
    echelon.insert(pos, v);
    true
}

impl ExpandedCode {
    /// RREF of arbitrary spanning vectors.
    pub fn from_vectors(
        spec: &Arc<FieldSpec>,
        n: usize,
        vectors: Vec<Vec<FieldElement>>,
    ) -> Result<ExpandedCode> {
        for v in &vectors {
            if v.len() != n {
                return Err(Error::ShapeMismatch("vector length mismatch".into()));
            }
            for c in v {
                if !c.spec().compatible(spec) {
                    return Err(Error::SpecMismatch);
                }
            }
        }
        Ok(ExpandedCode { rows: rref(n, vectors), n, spec: spec.clone() })
    }

    /// Expands an MT code by spanning the twisted shifts of its GPM rows,
    /// with early exit once the rank reaches the code dimension.
    pub fn expand(c: &MTCode) -> Result<ExpandedCode> {
        let n = c.length();
        let k = c.dimension();
        let mut period: u64 = 1;
        for (lambda, &m) in c.shifts().iter().zip(c.block_lengths()) {
            period = lcm(period, lambda.multiplicative_order()? * m as u64);
        }
        let mut echelon: Vec<Vec<FieldElement>> = Vec::new();
        'rows: for i in 0..c.index() {
            let mut reduced = Vec::with_capacity(c.index());
            for (j, p) in c.gpm().row(i).iter().enumerate() {
                let lam_inv = c.shifts()[j].inv()?;
                reduced.push(
                    p.to_laurent()
                        .reduce_in_quotient(c.block_lengths()[j], &lam_inv)?,
                );
            }
            let mut v = c.phi_encode(&reduced)?;
            for _ in 0..period {
                echelon_insert(&mut echelon, v.clone());
                if echelon.len() == k {
                    break 'rows;
                }
                v = c.shift_codeword(&v)?;
            }
        }
        let out = ExpandedCode { rows: rref(n, echelon), n, spec: c.spec().clone() };
        if out.dimension() != k {
            return Err(Error::Internal(
                "expanded rank does not match the code dimension".into(),
            ));
        }
        Ok(out)
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut v = v.to_vec();
        for row in &self.rows {
            let pivot = row.iter().position(|c| !c.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let factor = v[pivot].clone();
                for c in 0..self.n {
                    let sub = &factor * &row[c];
                    v[c] = &v[c] - &sub;
                }
            }
        }
        v.iter().all(|c| c.is_zero())
    }

    /// Basis of the Euclidean nullspace (the dual subspace), in RREF.
    fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let pivots: Vec<usize> = self
            .rows
            .iter()
            .map(|row| row.iter().position(|c| !c.is_zero()).unwrap())
            .collect();
        let mut basis = Vec::with_capacity(self.n - self.rows.len());
        for col in 0..self.n {
            if pivots.contains(&col) {
                continue;
            }
            let mut v = vec![self.spec.zero(); self.n];
            v[col] = self.spec.one();
            for (row, &p) in self.rows.iter().zip(&pivots) {
                v[p] = -&row[col];
            }
            basis.push(v);
        }
        rref(self.n, basis)
    }

    /// Dual subspace under the kappa-Galois inner product, by nullspace
    /// linear algebra: right solves sum c_i sigma^kappa(a_i) = 0, left
    /// solves sum a_i sigma^kappa(c_i) = 0.
    pub fn nullspace_dual(&self, kappa: usize, side: DualSide) -> Result<ExpandedCode> {
        let e = self.spec.e();
        if kappa >= e {
            return Err(Error::Precondition(format!(
                "kappa must satisfy 0 <= kappa < e = {e}, got {kappa}"
            )));
        }
        let rows = match side {
            DualSide::Euclidean => self.nullspace(),
            DualSide::Right => {
                // a is a solution iff sigma^kappa(a) is in the Euclidean dual
                let basis = self.nullspace();
                basis
                    .into_iter()
                    .map(|v| v.into_iter().map(|c| c.frobenius(e - kappa)).collect())
                    .collect()
            }
            DualSide::Left => {
                let twisted: Vec<Vec<FieldElement>> = self
                    .rows
                    .iter()
                    .map(|row| row.iter().map(|c| c.frobenius(kappa)).collect())
                    .collect();
                let twisted = ExpandedCode {
                    rows: rref(self.n, twisted),
                    n: self.n,
                    spec: self.spec.clone(),
                };
                twisted.nullspace()
            }
        };
        Ok(ExpandedCode { rows: rref(self.n, rows), n: self.n, spec: self.spec.clone() })
    }

    /// Subspace intersection via the dual of the sum of duals.
    pub fn intersect(&self, other: &ExpandedCode) -> Result<ExpandedCode> {
        if self.n != other.n || !self.spec.compatible(&other.spec) {
            return Err(Error::ShapeMismatch("codes have different ambient spaces".into()));
        }
        let mut stacked = self.nullspace();
        stacked.extend(other.nullspace());
        let dual_sum = ExpandedCode {
            rows: rref(self.n, stacked),
            n: self.n,
            spec: self.spec.clone(),
        };
        Ok(ExpandedCode {
            rows: dual_sum.nullspace(),
            n: self.n,
            spec: self.spec.clone(),
        })
    }

    /// True iff the two subspaces intersect trivially and their dimensions
    /// sum to n.
    pub fn direct_sum(&self, other: &ExpandedCode) -> Result<bool> {
        let inter = self.intersect(other)?;
        Ok(inter.dimension() == 0 && self.dimension() + other.dimension() == self.n)
    }

    /// Minimum Hamming weight over all nonzero codewords, by enumeration of
    /// the q^k messages. Errors for the zero code and when q^k exceeds the
    /// cap.
    pub fn min_distance(&self, cap: u64) -> Result<usize> {
        let k = self.rows.len();
        if k == 0 {
            return Err(Error::Precondition(
                "minimum distance is undefined for the zero code".into(),
            ));
        }
        let q = self.spec.order();
        let total = (q as u128).checked_pow(k as u32);
        if total.is_none_or(|t| t > cap as u128) {
            return Err(Error::Precondition("enumeration too large".into()));
        }
        let nonzero: Vec<FieldElement> =
            self.spec.elements().filter(|a| !a.is_zero()).collect();
        let mut best = self.n + 1;
        let start = vec![self.spec.zero(); self.n];
        search_weights(&self.rows, &nonzero, 0, 0, &start, &mut best);
        Ok(best)
    }
}

fn search_weights(
    rows: &[Vec<FieldElement>],
    nonzero: &[FieldElement],
    depth: usize,
    nonzero_coords: usize,
    partial: &[FieldElement],
    best: &mut usize,
) {
    // rows are in RREF, so the codeword weight is at least the number of
    // nonzero message coordinates
    if nonzero_coords >= *best {
        return;
    }
    if depth == rows.len() {
        if nonzero_coords > 0 {
            let w = partial.iter().filter(|c| !c.is_zero()).count();
            if w < *best {
                *best = w;
            }
        }
        return;
    }
    search_weights(rows, nonzero, depth + 1, nonzero_coords, partial, best);
    for alpha in nonzero {
        let next: Vec<FieldElement> = partial
            .iter()
            .zip(&rows[depth])
            .map(|(p, r)| p + &(alpha * r))
            .collect();
        search_weights(rows, nonzero, depth + 1, nonzero_coords + 1, &next, best);
    }
}

impl PartialEq for ExpandedCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for ExpandedCode {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::samples::{f16_code, f3_code, gf16};
    use crate::duals;
    use crate::poly::Poly;

    #[test]
    fn expansion_ranks() {
        let f = FieldSpec::prime_field(3).unwrap();
        let m_lambda =
            MTCode::from_generator_rows(&f, vec![f.from_u64(2)], vec![4], &[]).unwrap();
        assert_eq!(ExpandedCode::expand(&m_lambda).unwrap().dimension(), 0);
        assert_eq!(ExpandedCode::expand(&f3_code()).unwrap().dimension(), 6);
        assert_eq!(ExpandedCode::expand(&f16_code()).unwrap().dimension(), 5);
    }

    #[test]
    fn expansion_matches_membership() {
        let code = f16_code();
        let expanded = ExpandedCode::expand(&code).unwrap();
        let f = code.spec().clone();
        let mut state = 99u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let v: Vec<FieldElement> = (0..11)
                .map(|_| {
                    let a = f.generator_power(next() % 15).unwrap();
                    if next() % 3 == 0 {
                        f.zero()
                    } else {
                        a
                    }
                })
                .collect();
            assert_eq!(code.contains(&v).unwrap(), expanded.contains(&v));
        }
    }

    #[test]
    fn euclidean_nullspace_dual_matches_gpm_dual() {
        let code = f3_code();
        let expanded = ExpandedCode::expand(&code).unwrap();
        let dual = duals::euclidean_dual(&code).unwrap();
        let odual = expanded.nullspace_dual(0, DualSide::Euclidean).unwrap();
        assert_eq!(odual.dimension(), 54);
        assert_eq!(odual, ExpandedCode::expand(&dual).unwrap());
    }

    #[test]
    fn galois_nullspace_duals_match_gpm_duals() {
        let code = f16_code();
        let expanded = ExpandedCode::expand(&code).unwrap();
        for kappa in 0..4 {
            let right = duals::right_galois_dual(&code, kappa).unwrap();
            let left = duals::left_galois_dual(&code, kappa).unwrap();
            assert_eq!(
                expanded.nullspace_dual(kappa, DualSide::Right).unwrap(),
                ExpandedCode::expand(&right).unwrap(),
                "right, kappa = {kappa}"
            );
            assert_eq!(
                expanded.nullspace_dual(kappa, DualSide::Left).unwrap(),
                ExpandedCode::expand(&left).unwrap(),
                "left, kappa = {kappa}"
            );
        }
    }

    #[test]
    fn galois_pairing_vanishes() {
        // exhaustive pairing check: every codeword against every right-dual
        // basis word, and symmetrically for the left dual
        let f = gf16();
        let lam = FieldElement::parse("g^10", &f).unwrap();
        let rows = vec![vec![
            Poly::parse("g^5 + x", &f).unwrap(),
            Poly::parse("g^2 + x^2", &f).unwrap(),
        ]];
        let code =
            MTCode::from_generator_rows(&f, vec![f.one(), lam], vec![2, 3], &rows).unwrap();
        let expanded = ExpandedCode::expand(&code).unwrap();
        let kappa = 3;
        let right = expanded.nullspace_dual(kappa, DualSide::Right).unwrap();
        let left = expanded.nullspace_dual(kappa, DualSide::Left).unwrap();
        for c in all_codewords(&expanded) {
            for a in right.basis() {
                let mut acc = f.zero();
                for (ci, ai) in c.iter().zip(a) {
                    acc = &acc + &(ci * &ai.frobenius(kappa));
                }
                assert!(acc.is_zero());
            }
            for a in left.basis() {
                let mut acc = f.zero();
                for (ci, ai) in c.iter().zip(a) {
                    acc = &acc + &(ai * &ci.frobenius(kappa));
                }
                assert!(acc.is_zero());
            }
        }
    }

    fn all_codewords(code: &ExpandedCode) -> Vec<Vec<FieldElement>> {
        let spec = code.spec().clone();
        let k = code.dimension();
        let elems: Vec<FieldElement> = spec.elements().collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; k];
        loop {
            let mut v = vec![spec.zero(); code.n()];
            for (i, row) in code.basis().iter().enumerate() {
                for (c, r) in v.iter_mut().zip(row) {
                    *c = &*c + &(&elems[idx[i]] * r);
                }
            }
            out.push(v);
            let mut d = 0;
            loop {
                if d == k {
                    return out;
                }
                idx[d] += 1;
                if idx[d] < elems.len() {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
        }
    }

    #[test]
    fn intersection_and_direct_sum() {
        let code = f16_code();
        let expanded = ExpandedCode::expand(&code).unwrap();
        assert_eq!(expanded.intersect(&expanded).unwrap(), expanded);

        let right = expanded.nullspace_dual(3, DualSide::Right).unwrap();
        let left = expanded.nullspace_dual(3, DualSide::Left).unwrap();
        assert_eq!(right.intersect(&left).unwrap().dimension(), 2);
        assert!(!right.direct_sum(&left).unwrap());
    }

    #[test]
    fn dual_of_whole_space_is_zero() {
        let f = FieldSpec::prime_field(2).unwrap();
        let rows = vec![vec![Poly::one(&f)]];
        let whole = MTCode::from_generator_rows(&f, vec![f.one()], vec![4], &rows).unwrap();
        let expanded = ExpandedCode::expand(&whole).unwrap();
        let dual = expanded.nullspace_dual(0, DualSide::Euclidean).unwrap();
        assert_eq!(dual.dimension(), 0);
        // and the whole space has minimum distance 1
        assert_eq!(expanded.min_distance(1 << 24).unwrap(), 1);
    }

    #[test]
    fn min_distance_examples() {
        // binary [7,4] cyclic code generated by 1 + x + x^3 has distance 3
        let f = FieldSpec::prime_field(2).unwrap();
        let g = Poly::parse("1 + x + x^3", &f).unwrap();
        let code =
            MTCode::from_generator_rows(&f, vec![f.one()], vec![7], &[vec![g]]).unwrap();
        let expanded = ExpandedCode::expand(&code).unwrap();
        assert_eq!(expanded.min_distance(1 << 24).unwrap(), 3);

        assert!(matches!(
            expanded.min_distance(1),
            Err(Error::Precondition(_))
        ));
        let zero = ExpandedCode::from_vectors(&f, 3, vec![]).unwrap();
        assert!(zero.min_distance(1 << 24).is_err());
    }
}

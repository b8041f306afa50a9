//! Multi-twisted codes: construction from generator data, the reduced GPM
//! and its companion matrix, the correspondence between coordinate vectors
//! and polynomial vectors, the twisted shift, and membership testing.
//!
//! A code is identified by its shift constants, block lengths, and reduced
//! GPM `G`; the companion matrix `A` satisfies `A * G = D` exactly, where
//! `D = diag(x^{m_j} - lambda_j)`.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::poly::Poly;
use crate::polymat::{solve_left_factor, PolyMatrix};

#[derive(Clone)]
pub struct MTCode {
    spec: Arc<FieldSpec>,
    block_lengths: Vec<usize>,
    shifts: Vec<FieldElement>,
    gpm: PolyMatrix,
    companion: PolyMatrix,
}

/// diag(x^{m_j} - lambda_j)
pub fn twist_diagonal(
    spec: &Arc<FieldSpec>,
    block_lengths: &[usize],
    shifts: &[FieldElement],
) -> PolyMatrix {
    let diag = block_lengths
        .iter()
        .zip(shifts)
        .map(|(&m, lambda)| Poly::twist_modulus(m, lambda))
        .collect();
    PolyMatrix::diagonal(spec, diag)
}

impl MTCode {
    /// Builds the smallest MT code with the given shifts and block lengths
    /// that contains the given generator rows. Rows are reduced
    /// componentwise modulo x^{m_j} - lambda_j, stacked above
    /// diag(x^{m_j} - lambda_j), and brought to Hermite normal form; the
    /// companion matrix is recovered by exact triangular solving.
    pub fn from_generator_rows(
        spec: &Arc<FieldSpec>,
        shifts: Vec<FieldElement>,
        block_lengths: Vec<usize>,
        rows: &[Vec<Poly>],
    ) -> Result<MTCode> {
        let ell = block_lengths.len();
        if ell == 0 {
            return Err(Error::Precondition("index must be >= 1".into()));
        }
        if shifts.len() != ell {
            return Err(Error::ShapeMismatch(
                "shifts and block lengths must have equal length".into(),
            ));
        }
        for &m in &block_lengths {
            if m == 0 {
                return Err(Error::Precondition("block lengths must be >= 1".into()));
            }
        }
        for lambda in &shifts {
            if lambda.is_zero() {
                return Err(Error::ZeroShift);
            }
            if !lambda.spec().compatible(spec) {
                return Err(Error::SpecMismatch);
            }
        }

        let mut stacked: Vec<Vec<Poly>> = Vec::with_capacity(rows.len() + ell);
        for row in rows {
            if row.len() != ell {
                return Err(Error::ShapeMismatch(format!(
                    "generator row has {} entries, expected {ell}",
                    row.len()
                )));
            }
            let mut reduced = Vec::with_capacity(ell);
            for (j, entry) in row.iter().enumerate() {
                if !entry.spec().compatible(spec) {
                    return Err(Error::SpecMismatch);
                }
                // representative in R_{m_j, lambda_j}: x^{m_j} = lambda_j
                let lam_inv = shifts[j].inv()?;
                reduced.push(
                    entry
                        .to_laurent()
                        .reduce_in_quotient(block_lengths[j], &lam_inv)?,
                );
            }
            stacked.push(reduced);
        }
        let d = twist_diagonal(spec, &block_lengths, &shifts);
        for i in 0..ell {
            stacked.push(d.row_vec(i));
        }
        let stack = PolyMatrix::from_rows(spec, stacked)?;
        let gpm = stack.hermite_normal_form().square()?;
        let companion = solve_left_factor(&gpm, &d)?;
        let code = MTCode { spec: spec.clone(), block_lengths, shifts, gpm, companion };
        code.validate()?;
        Ok(code)
    }

    /// Assembles a code from parts already known to satisfy the reduced-GPM
    /// and identical-equation invariants.
    pub(crate) fn from_parts(
        spec: Arc<FieldSpec>,
        shifts: Vec<FieldElement>,
        block_lengths: Vec<usize>,
        gpm: PolyMatrix,
        companion: PolyMatrix,
    ) -> Result<MTCode> {
        let code = MTCode { spec, block_lengths, shifts, gpm, companion };
        code.validate()?;
        Ok(code)
    }

    fn validate(&self) -> Result<()> {
        let ell = self.index();
        let fail = |msg: &str| Err(Error::Internal(format!("invalid MT code: {msg}")));
        if !self.gpm.is_upper_triangular() {
            return fail("GPM not upper triangular");
        }
        for i in 0..ell {
            let gii = self.gpm.entry(i, i);
            if !gii.is_monic() {
                return fail("diagonal not monic");
            }
            let dii = gii.degree().unwrap();
            for h in 0..i {
                if self.gpm.entry(h, i).degree().is_some_and(|dg| dg >= dii) {
                    return fail("entry above diagonal not degree-reduced");
                }
            }
            for h in i + 1..ell {
                if self.gpm.entry(i, h).degree().is_some_and(|dg| dg >= self.block_lengths[h]) {
                    return fail("entry degree exceeds block length");
                }
            }
            if dii > self.block_lengths[i] {
                return fail("diagonal degree exceeds block length");
            }
        }
        let d = twist_diagonal(&self.spec, &self.block_lengths, &self.shifts);
        if self.companion.matmul(&self.gpm) != d {
            return fail("identical equation does not hold");
        }
        Ok(())
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    /// The index: the number of blocks.
    pub fn index(&self) -> usize {
        self.block_lengths.len()
    }

    pub fn block_lengths(&self) -> &[usize] {
        &self.block_lengths
    }

    pub fn shifts(&self) -> &[FieldElement] {
        &self.shifts
    }

    /// Code length n, the sum of the block lengths.
    pub fn length(&self) -> usize {
        self.block_lengths.iter().sum()
    }

    /// The reduced GPM.
    pub fn gpm(&self) -> &PolyMatrix {
        &self.gpm
    }

    /// The matrix A with A * G = diag(x^{m_j} - lambda_j).
    pub fn companion(&self) -> &PolyMatrix {
        &self.companion
    }

    pub fn twist_diagonal(&self) -> PolyMatrix {
        twist_diagonal(&self.spec, &self.block_lengths, &self.shifts)
    }

    /// Dimension as an F_q-vector space: sum of (m_j - deg g_{j,j}), which
    /// equals deg det A.
    pub fn dimension(&self) -> usize {
        let k: usize = (0..self.index())
            .map(|j| self.block_lengths[j] - self.gpm.entry(j, j).degree().unwrap())
            .sum();
        debug_assert_eq!(
            self.companion.determinant().unwrap().degree().unwrap_or(0),
            k
        );
        k
    }

    /// Polynomial vector -> coordinate vector, blockwise ascending
    /// coefficients. Component degrees must already be below the block
    /// lengths.
    pub fn phi_encode(&self, pv: &[Poly]) -> Result<Vec<FieldElement>> {
        if pv.len() != self.index() {
            return Err(Error::ShapeMismatch("wrong number of components".into()));
        }
        let mut out = Vec::with_capacity(self.length());
        for (j, p) in pv.iter().enumerate() {
            let m = self.block_lengths[j];
            if p.degree().is_some_and(|d| d >= m) {
                return Err(Error::Precondition(
                    "component degree exceeds block length; reduce first".into(),
                ));
            }
            for i in 0..m {
                out.push(p.coeff(i));
            }
        }
        Ok(out)
    }

    /// Coordinate vector -> polynomial vector.
    pub fn phi_decode(&self, v: &[FieldElement]) -> Result<Vec<Poly>> {
        if v.len() != self.length() {
            return Err(Error::ShapeMismatch(format!(
                "vector length {} does not match code length {}",
                v.len(),
                self.length()
            )));
        }
        let mut out = Vec::with_capacity(self.index());
        let mut offset = 0;
        for &m in &self.block_lengths {
            out.push(Poly::new(self.spec.clone(), v[offset..offset + m].to_vec()));
            offset += m;
        }
        Ok(out)
    }

    /// The twisted shift: each block rotates one step, the wrapped
    /// coordinate picking up the block's shift constant.
    pub fn shift_codeword(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.length() {
            return Err(Error::ShapeMismatch("vector length mismatch".into()));
        }
        let mut out = Vec::with_capacity(v.len());
        let mut offset = 0;
        for (j, &m) in self.block_lengths.iter().enumerate() {
            out.push(&self.shifts[j] * &v[offset + m - 1]);
            for i in 0..m - 1 {
                out.push(v[offset + i].clone());
            }
            offset += m;
        }
        Ok(out)
    }

    /// Membership test by exact division against the reduced GPM.
    pub fn contains(&self, v: &[FieldElement]) -> Result<bool> {
        let pv = self.phi_decode(v)?;
        let row = PolyMatrix::from_rows(&self.spec, vec![pv])?;
        match solve_left_factor(&self.gpm, &row) {
            Ok(_) => Ok(true),
            Err(Error::NotInRowModule) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// When `self` is a subcode of `other`, returns the upper-triangular Y
    /// with `self.gpm = Y * other.gpm`; otherwise `None`.
    pub fn subcode_of(&self, other: &MTCode) -> Result<Option<PolyMatrix>> {
        if self.block_lengths != other.block_lengths || self.shifts != other.shifts {
            return Err(Error::ShapeMismatch(
                "codes have different shifts or block lengths".into(),
            ));
        }
        match solve_left_factor(&other.gpm, &self.gpm) {
            Ok(y) => Ok(Some(y)),
            Err(Error::NotInRowModule) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

impl PartialEq for MTCode {
    /// Code equality is reduced-GPM equality over matching shifts and block
    /// lengths.
    fn eq(&self, other: &Self) -> bool {
        self.block_lengths == other.block_lengths
            && self.shifts == other.shifts
            && self.gpm == other.gpm
    }
}

impl Eq for MTCode {}

impl std::fmt::Debug for MTCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MTCode(m={:?}, shifts={:?}, gpm={:?})",
            self.block_lengths, self.shifts, self.gpm
        )
    }
}

/// Serialized description of a field, shifts, block lengths, and generator
/// rows; the CLI input format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeSpecFile {
    pub field: FieldSpecFile,
    pub shifts: Vec<String>,
    pub block_lengths: Vec<usize>,
    #[serde(default)]
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldSpecFile {
    pub p: u64,
    pub e: usize,
    pub modulus: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Coeffs(Vec<u64>),
    Text(String),
}

impl CodeSpecFile {
    pub fn load(path: &Path) -> Result<CodeSpecFile> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn field_spec(&self) -> Result<Arc<FieldSpec>> {
        let generator = match &self.field.generator {
            None => None,
            Some(GeneratorSpec::Coeffs(c)) => Some(c.clone()),
            Some(GeneratorSpec::Text(t)) => {
                let bare =
                    FieldSpec::new(self.field.p, self.field.e, self.field.modulus.clone(), None)?;
                Some(FieldElement::parse(t, &bare)?.coeffs().to_vec())
            }
        };
        FieldSpec::new(self.field.p, self.field.e, self.field.modulus.clone(), generator)
    }

    pub fn build(&self) -> Result<MTCode> {
        let spec = self.field_spec()?;
        let shifts = self
            .shifts
            .iter()
            .map(|s| FieldElement::parse(s, &spec))
            .collect::<Result<Vec<_>>>()?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| Poly::parse(p, &spec))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MTCode::from_generator_rows(&spec, shifts, self.block_lengths.clone(), &rows)
    }
}

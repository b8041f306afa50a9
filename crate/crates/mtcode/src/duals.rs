//! Dual constructions for MT codes.
//!
//! The Euclidean dual GPM comes from the companion matrix `A` of the reduced
//! GPM in four steps: substitute x -> 1/x, scale entry (i,j) by
//! x^{m_i - d_j}, reduce row i modulo x^{m_i} - 1/lambda_i, transpose. Galois
//! duals are Frobenius images of the Euclidean dual. The two-sided dual is
//! the intersection of the right and left duals, computed by exact linear
//! algebra and certified by an (X, Y) matrix pair.

use crate::code::MTCode;
use crate::error::{Error, Result};
use crate::gf::{gcd, FieldElement};
use crate::oracle::ExpandedCode;
use crate::poly::Poly;
use crate::polymat::{solve_left_factor, LaurentMatrix, PolyMatrix};

/// Intermediate matrices of the Euclidean dual construction.
#[derive(Clone, Debug)]
pub struct EuclideanDualSteps {
    pub a_inverse: LaurentMatrix,
    pub a_star: LaurentMatrix,
    pub a_star_star: PolyMatrix,
    pub h: PolyMatrix,
}

fn dual_shifts(c: &MTCode) -> Result<Vec<FieldElement>> {
    c.shifts().iter().map(|l| l.inv()).collect()
}

/// The Euclidean dual: an MT code with inverted shift constants and the same
/// block lengths, along with the intermediate matrices.
pub fn euclidean_dual_steps(c: &MTCode) -> Result<(MTCode, EuclideanDualSteps)> {
    let spec = c.spec();
    let ell = c.index();
    let m = c.block_lengths();
    let degrees: Vec<i64> = (0..ell)
        .map(|j| c.gpm().entry(j, j).degree().unwrap() as i64)
        .collect();

    let mut inv_entries = Vec::with_capacity(ell * ell);
    let mut star_entries = Vec::with_capacity(ell * ell);
    let mut star_star_rows: Vec<Vec<Poly>> = vec![Vec::with_capacity(ell); ell];
    for i in 0..ell {
        for j in 0..ell {
            let inv = c.companion().entry(i, j).subst_inverse();
            let star = inv.shift_mul(m[i] as i64 - degrees[j]);
            let reduced = star.reduce_in_quotient(m[i], &c.shifts()[i])?;
            inv_entries.push(inv);
            star_entries.push(star);
            star_star_rows[i].push(reduced);
        }
    }
    let a_inverse = LaurentMatrix::from_entries(ell, ell, inv_entries);
    let a_star = LaurentMatrix::from_entries(ell, ell, star_entries);
    let a_star_star = PolyMatrix::from_rows(spec, star_star_rows)?;
    let h = a_star_star.transpose();

    let rows: Vec<Vec<Poly>> = (0..ell).map(|i| h.row_vec(i)).collect();
    let dual = MTCode::from_generator_rows(spec, dual_shifts(c)?, m.to_vec(), &rows)?;
    if dual.dimension() + c.dimension() != c.length() {
        return Err(Error::Internal("dual dimension is not n - k".into()));
    }
    Ok((dual, EuclideanDualSteps { a_inverse, a_star, a_star_star, h }))
}

pub fn euclidean_dual(c: &MTCode) -> Result<MTCode> {
    Ok(euclidean_dual_steps(c)?.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualSpecialCase {
    QuasiCyclic,
    QuasiTwisted,
    GeneralizedQuasiCyclic,
}

/// Detects which of the specialized dual formulas applies.
pub fn dual_special_case(c: &MTCode) -> Option<DualSpecialCase> {
    let equal_m = c.block_lengths().windows(2).all(|w| w[0] == w[1]);
    let equal_lambda = c.shifts().windows(2).all(|w| w[0] == w[1]);
    let all_one = c.shifts().iter().all(|l| l.is_one());
    if all_one && equal_m {
        Some(DualSpecialCase::QuasiCyclic)
    } else if equal_lambda && equal_m {
        Some(DualSpecialCase::QuasiTwisted)
    } else if all_one {
        Some(DualSpecialCase::GeneralizedQuasiCyclic)
    } else {
        None
    }
}

/// The specialized QC/QT/GQC dual GPM. Generates the same code as
/// [`euclidean_dual`]; errors when the code matches no special case.
pub fn qc_qt_gqc_dual_gpm(c: &MTCode) -> Result<PolyMatrix> {
    let Some(case) = dual_special_case(c) else {
        return Err(Error::Precondition(
            "code is not QC, QT, or GQC; use the general dual".into(),
        ));
    };
    let spec = c.spec();
    let ell = c.index();
    let m = c.block_lengths();
    let degrees: Vec<i64> = (0..ell)
        .map(|j| c.gpm().entry(j, j).degree().unwrap() as i64)
        .collect();
    let mut h = PolyMatrix::zeros(spec, ell, ell);
    match case {
        DualSpecialCase::QuasiCyclic | DualSpecialCase::QuasiTwisted => {
            // H = (A(1/x) diag[x^{m-d_1},...,x^{m-d_l}] mod x^m - 1/lambda)^t
            let co_index = m[0];
            let lambda = &c.shifts()[0];
            for i in 0..ell {
                for j in 0..ell {
                    let scaled = c
                        .companion()
                        .entry(i, j)
                        .subst_inverse()
                        .shift_mul(co_index as i64 - degrees[j]);
                    h.set(j, i, scaled.reduce_in_quotient(co_index, lambda)?);
                }
            }
        }
        DualSpecialCase::GeneralizedQuasiCyclic => {
            // Column_j(H) = row_j(A(1/x) diag[x^{m_j-d_1},...]) mod x^{m_j}-1
            let one = spec.one();
            for j in 0..ell {
                for hcol in 0..ell {
                    let scaled = c
                        .companion()
                        .entry(j, hcol)
                        .subst_inverse()
                        .shift_mul(m[j] as i64 - degrees[hcol]);
                    h.set(hcol, j, scaled.reduce_in_quotient(m[j], &one)?);
                }
            }
        }
    }
    Ok(h)
}

/// The image of the code under sigma^mu: shifts, GPM, and companion map
/// entrywise, and the result is again a reduced GPM.
pub fn frobenius_code(c: &MTCode, mu: usize) -> Result<MTCode> {
    let shifts = c.shifts().iter().map(|l| l.frobenius(mu)).collect();
    MTCode::from_parts(
        c.spec().clone(),
        shifts,
        c.block_lengths().to_vec(),
        c.gpm().frobenius(mu),
        c.companion().frobenius(mu),
    )
}

fn check_kappa(c: &MTCode, kappa: usize) -> Result<()> {
    let e = c.spec().e();
    if kappa >= e {
        return Err(Error::Precondition(format!(
            "kappa must satisfy 0 <= kappa < e = {e}, got {kappa}"
        )));
    }
    Ok(())
}

/// Right kappa-Galois dual: sigma^{e-kappa} applied to the Euclidean dual.
pub fn right_galois_dual(c: &MTCode, kappa: usize) -> Result<MTCode> {
    check_kappa(c, kappa)?;
    let e = c.spec().e();
    frobenius_code(&euclidean_dual(c)?, e - kappa)
}

/// Left kappa-Galois dual: sigma^kappa applied to the Euclidean dual.
pub fn left_galois_dual(c: &MTCode, kappa: usize) -> Result<MTCode> {
    check_kappa(c, kappa)?;
    frobenius_code(&euclidean_dual(c)?, kappa)
}

/// Outcome of checking the six interrelations between the right and left
/// Galois duals as reduced-GPM equalities.
#[derive(Clone, Debug)]
pub struct GaloisIdentityReport {
    pub kappa: usize,
    /// Results of identities 1 through 6.
    pub identities: [bool; 6],
    pub right_equals_left: bool,
    pub sigma_2kappa_fixes_code: bool,
}

impl GaloisIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|&b| b)
    }
}

pub fn galois_identities_check(c: &MTCode, kappa: usize) -> Result<GaloisIdentityReport> {
    check_kappa(c, kappa)?;
    let e = c.spec().e();
    let eu = euclidean_dual(c)?;
    let right = right_galois_dual(c, kappa)?;
    let left = left_galois_dual(c, kappa)?;

    let id1 = left_galois_dual(&right, kappa)? == *c;
    let id2 = right_galois_dual(&frobenius_code(c, kappa)?, kappa)? == eu
        && frobenius_code(&right, kappa)? == eu;
    let id3 = left_galois_dual(&frobenius_code(c, e - kappa)?, kappa)? == eu
        && frobenius_code(&left, e - kappa)? == eu;
    let id4 = right == left_galois_dual(&frobenius_code(c, 2 * (e - kappa))?, kappa)?
        && right == frobenius_code(&left, 2 * (e - kappa))?;
    let id5 = left == right_galois_dual(&frobenius_code(c, 2 * kappa)?, kappa)?
        && left == frobenius_code(&right, 2 * kappa)?;
    let right_equals_left = right == left;
    let sigma_2kappa_fixes_code = frobenius_code(c, 2 * kappa)? == *c;
    let id6 = right_equals_left == sigma_2kappa_fixes_code;

    Ok(GaloisIdentityReport {
        kappa,
        identities: [id1, id2, id3, id4, id5, id6],
        right_equals_left,
        sigma_2kappa_fixes_code,
    })
}

/// Witness for a two-sided dual or sigma-intersection GPM: upper-triangular
/// `X` over the subfield and `Y` over the full field with
/// `X * Y = sigma^{e-kappa}(B)` and `Y * sigma^{e-kappa}(H)` over the
/// subfield. The intersection dimension is `deg det X`.
#[derive(Clone, Debug)]
pub struct DualCertificate {
    pub x_matrix: PolyMatrix,
    pub y_matrix: PolyMatrix,
    /// `y_matrix * sigma^{e-kappa}(H)`: the reduced GPM of the intersection.
    pub gpm_product: PolyMatrix,
    pub upsilon: usize,
    pub kappa: usize,
    pub tau: usize,
}

impl DualCertificate {
    /// Re-checks every certificate condition against the right dual's GPM
    /// and companion image.
    pub fn verify(&self, right_gpm: &PolyMatrix, b_image: &PolyMatrix) -> Result<()> {
        let fail = |msg: &str| Err(Error::Internal(format!("certificate check failed: {msg}")));
        if !self.x_matrix.is_upper_triangular() || !self.y_matrix.is_upper_triangular() {
            return fail("X or Y not upper triangular");
        }
        if !self.x_matrix.entries_in_subfield(self.upsilon)? {
            return fail("X not over the subfield");
        }
        if self.y_matrix.matmul(right_gpm) != self.gpm_product {
            return fail("Y times the right-dual GPM is not the stated product");
        }
        if !self.gpm_product.entries_in_subfield(self.upsilon)? {
            return fail("product GPM not over the subfield");
        }
        if self.x_matrix.matmul(&self.y_matrix) != *b_image {
            return fail("X*Y does not reproduce the companion image");
        }
        if !trace_auxiliary_check(self, b_image)? {
            return fail("trace equation does not hold");
        }
        Ok(())
    }

    /// deg det X, the dimension of the certified intersection.
    pub fn certified_dimension(&self) -> usize {
        self.x_matrix
            .determinant()
            .expect("X is square")
            .degree()
            .unwrap_or(0)
    }
}

/// The auxiliary trace equation `X * Tr(Y) = Tr(sigma^{e-kappa}(B))`; holds
/// for every valid certificate.
pub fn trace_auxiliary_check(cert: &DualCertificate, b_image: &PolyMatrix) -> Result<bool> {
    let lhs = cert
        .x_matrix
        .matmul(&cert.y_matrix.trace_to_subfield(cert.upsilon)?);
    let rhs = b_image.trace_to_subfield(cert.upsilon)?;
    Ok(lhs == rhs)
}

/// The intersection of the right kappa-Galois dual with its sigma^{2 kappa
/// tau} image, as an MT code with its certificate. Requires e | 4*kappa*tau
/// and every shift constant in F_{p^upsilon} with
/// upsilon = gcd(e, 2*kappa*tau).
pub fn sigma_intersection(
    c: &MTCode,
    kappa: usize,
    tau: usize,
) -> Result<(MTCode, DualCertificate)> {
    check_kappa(c, kappa)?;
    let e = c.spec().e();
    if tau == 0 {
        return Err(Error::Precondition("tau must be >= 1".into()));
    }
    if (4 * kappa * tau) % e != 0 {
        return Err(Error::Precondition(format!(
            "e does not divide 4*kappa*tau (e = {e}, kappa = {kappa}, tau = {tau})"
        )));
    }
    let upsilon = gcd(e as u64, (2 * kappa * tau) as u64) as usize;
    for lambda in c.shifts() {
        if !lambda.in_subfield(upsilon)? {
            return Err(Error::Precondition(format!(
                "shift constants not in F_{{p^{upsilon}}}"
            )));
        }
    }

    let eu = euclidean_dual(c)?;
    let right = frobenius_code(&eu, e - kappa)?;
    // sigma^{2 kappa tau} of the right dual is sigma^{kappa(2 tau - 1)} of
    // the Euclidean dual
    let other = frobenius_code(&eu, (kappa * (2 * tau - 1)) % e)?;

    let expanded_right = ExpandedCode::expand(&right)?;
    let expanded_other = ExpandedCode::expand(&other)?;
    let intersection = expanded_right.intersect(&expanded_other)?;

    let rows = intersection
        .basis()
        .iter()
        .map(|v| right.phi_decode(v))
        .collect::<Result<Vec<_>>>()?;
    let inter_code = MTCode::from_generator_rows(
        c.spec(),
        right.shifts().to_vec(),
        c.block_lengths().to_vec(),
        &rows,
    )?;
    if inter_code.dimension() != intersection.dimension() {
        return Err(Error::Internal(
            "intersection is not closed under the twisted shift".into(),
        ));
    }

    let y = solve_left_factor(right.gpm(), inter_code.gpm())?;
    let b_image = eu.companion().frobenius(e - kappa);
    let cert = DualCertificate {
        x_matrix: inter_code.companion().clone(),
        y_matrix: y,
        gpm_product: inter_code.gpm().clone(),
        upsilon,
        kappa,
        tau,
    };
    cert.verify(right.gpm(), &b_image)?;
    if cert.certified_dimension() != inter_code.dimension() {
        return Err(Error::Internal("deg det X differs from the intersection dimension".into()));
    }
    Ok((inter_code, cert))
}

/// The two-sided kappa-Galois dual: the intersection of the right and left
/// duals. Requires e | 4*kappa and shift constants in F_{p^upsilon} with
/// upsilon = gcd(e, 2*kappa).
pub fn two_sided_galois_dual(c: &MTCode, kappa: usize) -> Result<(MTCode, DualCertificate)> {
    let e = c.spec().e();
    if (4 * kappa) % e != 0 {
        return Err(Error::Precondition(format!(
            "e does not divide 4*kappa (e = {e}, kappa = {kappa})"
        )));
    }
    sigma_intersection(c, kappa, 1)
}

/// True iff F_q^n splits as the direct sum of the right and left
/// kappa-Galois duals. Requires dim = n/2 on top of the two-sided-dual
/// preconditions.
pub fn direct_sum_check(c: &MTCode, kappa: usize) -> Result<bool> {
    if 2 * c.dimension() != c.length() {
        return Err(Error::Precondition(format!(
            "code dimension {} is not half the length {}",
            c.dimension(),
            c.length()
        )));
    }
    let (two_sided, cert) = two_sided_galois_dual(c, kappa)?;
    Ok(two_sided.dimension() == 0 && cert.certified_dimension() == 0)
}

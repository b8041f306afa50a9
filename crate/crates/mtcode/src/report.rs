//! JSON report structures emitted by the CLI. Matrices serialize as nested
//! string arrays in the canonical polynomial text form, so reports are
//! byte-identical across runs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::code::MTCode;
use crate::duals::{DualCertificate, EuclideanDualSteps, GaloisIdentityReport};
use crate::polymat::{LaurentMatrix, PolyMatrix};

pub fn matrix_text(m: &PolyMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|p| p.to_string()).collect())
        .collect()
}

pub fn laurent_matrix_text(m: &LaurentMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.entry(i, j).to_string()).collect())
        .collect()
}

#[derive(Serialize)]
pub struct FieldReport {
    pub p: u64,
    pub e: usize,
    pub modulus: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

#[derive(Serialize)]
pub struct StepsReport {
    pub a_inverse: Vec<Vec<String>>,
    pub a_star: Vec<Vec<String>>,
    pub a_star_star: Vec<Vec<String>>,
    pub h: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct CertificateReport {
    pub x_matrix: Vec<Vec<String>>,
    pub y_matrix: Vec<Vec<String>>,
    pub gpm_product: Vec<Vec<String>>,
    pub upsilon: usize,
    pub kappa: usize,
    pub tau: usize,
    pub trace_equation_holds: bool,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub name: String,
    pub ok: bool,
}

#[derive(Serialize)]
pub struct IdentityChecksReport {
    pub kappa: usize,
    pub identities: Vec<bool>,
    pub right_equals_left: bool,
    pub sigma_2kappa_fixes_code: bool,
}

/// One structured record per CLI run: the construction performed, the input
/// code, the output GPM, and any certificate or check results.
#[derive(Serialize)]
pub struct Report {
    pub construction: String,
    pub field: FieldReport,
    pub shifts: Vec<String>,
    pub block_lengths: Vec<usize>,
    pub input_gpm: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub companion: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_shifts: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_gpm: Option<Vec<Vec<String>>>,
    pub dimensions: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<StepsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity_checks: Option<Vec<IdentityChecksReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimum_distance: Option<usize>,
}

impl Report {
    pub fn new(construction: &str, code: &MTCode) -> Report {
        let spec = code.spec();
        let mut dimensions = BTreeMap::new();
        dimensions.insert("length".to_string(), code.length());
        dimensions.insert("dimension".to_string(), code.dimension());
        Report {
            construction: construction.to_string(),
            field: FieldReport {
                p: spec.p(),
                e: spec.e(),
                modulus: spec.modulus().to_vec(),
                generator: spec
                    .has_designated_generator()
                    .then(|| spec.generator().expect("designated").to_string()),
            },
            shifts: code.shifts().iter().map(|l| l.to_string()).collect(),
            block_lengths: code.block_lengths().to_vec(),
            input_gpm: matrix_text(code.gpm()),
            companion: None,
            output_shifts: None,
            output_gpm: None,
            dimensions,
            steps: None,
            certificate: None,
            identity_checks: None,
            checks: None,
            minimum_distance: None,
        }
    }

    pub fn with_output(mut self, label: &str, code: &MTCode) -> Report {
        self.output_shifts = Some(code.shifts().iter().map(|l| l.to_string()).collect());
        self.output_gpm = Some(matrix_text(code.gpm()));
        self.dimensions.insert(label.to_string(), code.dimension());
        self
    }

    pub fn with_steps(mut self, steps: &EuclideanDualSteps) -> Report {
        self.steps = Some(StepsReport {
            a_inverse: laurent_matrix_text(&steps.a_inverse),
            a_star: laurent_matrix_text(&steps.a_star),
            a_star_star: matrix_text(&steps.a_star_star),
            h: matrix_text(&steps.h),
        });
        self
    }

    pub fn with_certificate(mut self, cert: &DualCertificate, trace_ok: bool) -> Report {
        self.certificate = Some(CertificateReport {
            x_matrix: matrix_text(&cert.x_matrix),
            y_matrix: matrix_text(&cert.y_matrix),
            gpm_product: matrix_text(&cert.gpm_product),
            upsilon: cert.upsilon,
            kappa: cert.kappa,
            tau: cert.tau,
            trace_equation_holds: trace_ok,
        });
        self
    }

    pub fn with_identity_checks(mut self, reports: &[GaloisIdentityReport]) -> Report {
        self.identity_checks = Some(
            reports
                .iter()
                .map(|r| IdentityChecksReport {
                    kappa: r.kappa,
                    identities: r.identities.to_vec(),
                    right_equals_left: r.right_equals_left,
                    sigma_2kappa_fixes_code: r.sigma_2kappa_fixes_code,
                })
                .collect(),
        );
        self
    }
}

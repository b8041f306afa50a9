//! Acceptance suite: every criterion is exercised end to end at exact
//! (bitwise) tolerance and prints one pass/fail line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use mtcode::duals;
use mtcode::{
    CodeSpecFile, DualSide, ExpandedCode, FieldElement, FieldSpec, LaurentPoly, MTCode, Poly,
    PolyMatrix,
};

fn criterion<F: FnOnce()>(number: usize, name: &str, budget: Duration, body: F) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let ok = outcome.is_ok() && elapsed <= budget;
    println!(
        "criterion {number} ({name}): {} in {elapsed:.2?} (budget {budget:.0?})",
        if ok { "PASS" } else { "FAIL" }
    );
    if let Err(panic) = outcome {
        std::panic::resume_unwind(panic);
    }
    assert!(
        elapsed <= budget,
        "criterion {number} exceeded its runtime budget: {elapsed:?} > {budget:?}"
    );
}

fn fixture(name: &str) -> MTCode {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    CodeSpecFile::load(&path).unwrap().build().unwrap()
}

fn mat(text: &str, spec: &Arc<FieldSpec>) -> PolyMatrix {
    PolyMatrix::parse(text, spec).unwrap()
}

#[test]
fn criterion_1_f3_dimension_and_companion() {
    criterion(1, "F_3 dimension and companion", Duration::from_secs(1), || {
        let code = fixture("f3_m20_40.json");
        assert_eq!(code.dimension(), 6);
        assert_eq!(
            code.companion()
                .determinant()
                .unwrap()
                .degree(),
            Some(6)
        );
        let expected_a = mat(
            "2 + 2*x + x^4 + x^5 + x^6 | 2*x + 2*x^2 + 2*x^4 + 2*x^5\n0 | 1",
            code.spec(),
        );
        assert_eq!(*code.companion(), expected_a);
    });
}

#[test]
fn criterion_2_f3_euclidean_dual_intermediates() {
    criterion(2, "F_3 dual pipeline intermediates", Duration::from_secs(1), || {
        let code = fixture("f3_m20_40.json");
        let f = code.spec().clone();
        let (dual, steps) = duals::euclidean_dual_steps(&code).unwrap();

        let lau = |low: i64, coeffs: &[u64]| {
            LaurentPoly::new(low, coeffs.iter().map(|&c| f.from_u64(c)).collect(), f.clone())
        };
        // A(1/x)
        assert_eq!(*steps.a_inverse.entry(0, 0), lau(-6, &[1, 1, 1, 0, 0, 2, 2]));
        assert_eq!(*steps.a_inverse.entry(0, 1), lau(-5, &[2, 2, 0, 2, 2]));
        assert!(steps.a_inverse.entry(1, 0).is_zero());
        assert_eq!(*steps.a_inverse.entry(1, 1), lau(0, &[1]));
        // A*
        assert_eq!(*steps.a_star.entry(0, 0), lau(0, &[1, 1, 1, 0, 0, 2, 2]));
        assert_eq!(*steps.a_star.entry(0, 1), lau(-25, &[2, 2, 0, 2, 2]));
        assert!(steps.a_star.entry(1, 0).is_zero());
        assert_eq!(*steps.a_star.entry(1, 1), lau(0, &[1]));
        // A** and H
        let expected_ss = mat(
            "1 + x + x^2 + 2*x^5 + 2*x^6 | 2*x^15 + 2*x^16 + 2*x^18 + 2*x^19\n0 | 1",
            &f,
        );
        assert_eq!(steps.a_star_star, expected_ss);
        assert_eq!(steps.h, expected_ss.transpose());
        // reduced GPM of the dual
        let expected_reduced = mat(
            "1 | 2*x + 2*x^2 + x^3 + x^4 + x^5\n0 | 2 + 2*x + 2*x^2 + x^5 + x^6",
            &f,
        );
        assert_eq!(*dual.gpm(), expected_reduced);
    });
}

#[test]
fn criterion_3_f16_galois_duals_and_certificate() {
    criterion(3, "F_16 Galois duals, distance, certificate", Duration::from_secs(10), || {
        let code = fixture("f16_m3_4_4.json");
        let f = code.spec().clone();
        assert_eq!(code.dimension(), 5);

        let expanded = ExpandedCode::expand(&code).unwrap();
        assert_eq!(expanded.min_distance(1 << 24).unwrap(), 5);

        let right = duals::right_galois_dual(&code, 3).unwrap();
        let left = duals::left_galois_dual(&code, 3).unwrap();
        let sigma_h = mat(
            "1 | g^3 | g^3 + x + g^2*x^2 + g^3*x^3\n\
             0 | g^10 + x | g^9*x + g^8*x^2 + g^11*x^3\n\
             0 | 0 | g^10 + x^4",
            &f,
        );
        let sigma_b = mat(
            "1 + x^3 | g^8 + g^13*x + g^3*x^2 | g^8 + g^13*x + g^3*x^2\n\
             0 | 1 + g^5*x + g^10*x^2 + x^3 | g^14*x + g^11*x^2\n\
             0 | 0 | 1",
            &f,
        );
        let sigma3_h = mat(
            "1 | g^12 | g^12 + x + g^8*x^2 + g^12*x^3\n\
             0 | g^10 + x | g^6*x + g^2*x^2 + g^14*x^3\n\
             0 | 0 | g^10 + x^4",
            &f,
        );
        let sigma3_b = mat(
            "1 + x^3 | g^2 + g^7*x + g^12*x^2 | g^2 + g^7*x + g^12*x^2\n\
             0 | 1 + g^5*x + g^10*x^2 + x^3 | g^11*x + g^14*x^2\n\
             0 | 0 | 1",
            &f,
        );
        assert_eq!(*right.gpm(), sigma_h);
        assert_eq!(*right.companion(), sigma_b);
        assert_eq!(*left.gpm(), sigma3_h);
        assert_eq!(*left.companion(), sigma3_b);

        let (two_sided, cert) = duals::two_sided_galois_dual(&code, 3).unwrap();
        let expected_gpm = mat(
            "g^10 + x | 0 | 0\n0 | g^10 + x^4 | 0\n0 | 0 | g^10 + x^4",
            &f,
        );
        assert_eq!(*two_sided.gpm(), expected_gpm);
        assert_eq!(two_sided.dimension(), 2);
        assert_eq!(cert.certified_dimension(), 2);

        // certificate conditions against sigma(B) and sigma(H)
        assert_eq!(cert.x_matrix.matmul(&cert.y_matrix), sigma_b);
        assert_eq!(cert.y_matrix.matmul(&sigma_h), cert.gpm_product);
        assert!(cert.gpm_product.entries_in_subfield(2).unwrap());
        assert!(cert.x_matrix.entries_in_subfield(2).unwrap());
        assert!(duals::trace_auxiliary_check(&cert, &sigma_b).unwrap());
        // the trace equation's right-hand side as printed
        let expected_rhs = mat(
            "0 | 1 + g^5*x + g^10*x^2 | 1 + g^5*x + g^10*x^2\n\
             0 | 0 | g^10*x + g^10*x^2\n\
             0 | 0 | 0",
            &f,
        );
        assert_eq!(sigma_b.trace_to_subfield(2).unwrap(), expected_rhs);
        assert_eq!(
            cert.x_matrix
                .matmul(&cert.y_matrix.trace_to_subfield(2).unwrap()),
            expected_rhs
        );
    });
}

#[test]
fn criterion_4_f81_direct_sum() {
    criterion(4, "F_81 direct sum of Galois duals", Duration::from_secs(5), || {
        let code = fixture("f81_m4_8.json");
        assert_eq!(2 * code.dimension(), code.length());
        assert!(duals::direct_sum_check(&code, 1).unwrap());
    });
}

fn sweep_fields() -> Vec<Arc<FieldSpec>> {
    vec![
        FieldSpec::prime_field(2).unwrap(),
        FieldSpec::prime_field(3).unwrap(),
        FieldSpec::new(2, 2, vec![1, 1, 1], None).unwrap(),
    ]
}

fn random_poly(rng: &mut StdRng, elems: &[FieldElement], max_len: usize) -> Poly {
    let spec = elems[0].spec().clone();
    let len = rng.gen_range(0..=max_len);
    let coeffs = (0..len)
        .map(|_| elems[rng.gen_range(0..elems.len())].clone())
        .collect();
    Poly::new(spec, coeffs)
}

fn random_code(
    rng: &mut StdRng,
    spec: &Arc<FieldSpec>,
    elems: &[FieldElement],
    blocks: &[usize],
    shifts: &[FieldElement],
) -> MTCode {
    let ell = blocks.len();
    let row_count = rng.gen_range(0..=ell);
    let rows: Vec<Vec<Poly>> = (0..row_count)
        .map(|_| (0..ell).map(|j| random_poly(rng, elems, blocks[j])).collect())
        .collect();
    MTCode::from_generator_rows(spec, shifts.to_vec(), blocks.to_vec(), &rows).unwrap()
}

/// All tuples of nonzero field elements of the given length.
fn shift_tuples(spec: &Arc<FieldSpec>, len: usize) -> Vec<Vec<FieldElement>> {
    let nonzero: Vec<FieldElement> = spec.elements().filter(|a| !a.is_zero()).collect();
    let mut out: Vec<Vec<FieldElement>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                nonzero.iter().map(move |l| {
                    let mut t = prefix.clone();
                    t.push(l.clone());
                    t
                })
            })
            .collect();
    }
    out
}

#[test]
fn criterion_5_differential_dual_sweep() {
    criterion(5, "differential dual sweep", Duration::from_secs(120), || {
        let mut rng = StdRng::seed_from_u64(0x5eed_0005);
        let mut checked = 0usize;
        for spec in sweep_fields() {
            let e = spec.e();
            let elems: Vec<FieldElement> = spec.elements().collect();
            for ell in 1..=2usize {
                let mut block_choices: Vec<Vec<usize>> = Vec::new();
                if ell == 1 {
                    block_choices.extend((1..=4).map(|m| vec![m]));
                } else {
                    for m1 in 1..=4 {
                        for m2 in 1..=4 {
                            block_choices.push(vec![m1, m2]);
                        }
                    }
                }
                for blocks in &block_choices {
                    for shifts in shift_tuples(&spec, ell) {
                        for _ in 0..50 {
                            let code = random_code(&mut rng, &spec, &elems, blocks, &shifts);
                            let expanded = ExpandedCode::expand(&code).unwrap();
                            let dual = duals::euclidean_dual(&code).unwrap();
                            assert_eq!(
                                ExpandedCode::expand(&dual).unwrap(),
                                expanded.nullspace_dual(0, DualSide::Euclidean).unwrap()
                            );
                            for kappa in 0..e {
                                let right = duals::right_galois_dual(&code, kappa).unwrap();
                                let left = duals::left_galois_dual(&code, kappa).unwrap();
                                assert_eq!(
                                    ExpandedCode::expand(&right).unwrap(),
                                    expanded.nullspace_dual(kappa, DualSide::Right).unwrap()
                                );
                                assert_eq!(
                                    ExpandedCode::expand(&left).unwrap(),
                                    expanded.nullspace_dual(kappa, DualSide::Left).unwrap()
                                );
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(checked, (20 + 72 + 156) * 50);
    });
}

#[test]
fn criterion_6_property_suite() {
    criterion(6, "property suite on random codes", Duration::from_secs(120), || {
        let mut rng = StdRng::seed_from_u64(0x5eed_0006);
        let fields = [
            FieldSpec::prime_field(2).unwrap(),
            FieldSpec::prime_field(3).unwrap(),
            FieldSpec::new(2, 2, vec![1, 1, 1], None).unwrap(),
            FieldSpec::new(3, 2, vec![1, 0, 1], None).unwrap(),
        ];
        for trial in 0..200 {
            let spec = fields[rng.gen_range(0..fields.len())].clone();
            let elems: Vec<FieldElement> = spec.elements().collect();
            let nonzero: Vec<FieldElement> =
                elems.iter().filter(|a| !a.is_zero()).cloned().collect();
            let ell = rng.gen_range(1..=3usize);
            let quasi_twisted = trial % 4 == 0;
            let blocks: Vec<usize> = if quasi_twisted {
                vec![rng.gen_range(1..=5); ell]
            } else {
                (0..ell).map(|_| rng.gen_range(1..=5)).collect()
            };
            let shifts: Vec<FieldElement> = if quasi_twisted {
                vec![nonzero[rng.gen_range(0..nonzero.len())].clone(); ell]
            } else {
                (0..ell)
                    .map(|_| nonzero[rng.gen_range(0..nonzero.len())].clone())
                    .collect()
            };
            let code = random_code(&mut rng, &spec, &elems, &blocks, &shifts);

            // identical equation, exactly
            assert_eq!(code.companion().matmul(code.gpm()), code.twist_diagonal());
            // dimension formula double identity
            let k = code.dimension();
            assert_eq!(
                code.companion().determinant().unwrap().degree().unwrap_or(0),
                k
            );
            // dual involution and dimension sum
            let dual = duals::euclidean_dual(&code).unwrap();
            assert_eq!(duals::euclidean_dual(&dual).unwrap(), code);
            assert_eq!(k + dual.dimension(), code.length());
            // all six Galois-dual identities, every kappa
            for kappa in 0..spec.e() {
                let report = duals::galois_identities_check(&code, kappa).unwrap();
                assert!(report.all_hold(), "trial {trial} kappa {kappa}: {report:?}");
            }
            // quasi-twisted commutativity: G A = D as well
            if quasi_twisted {
                assert_eq!(code.gpm().matmul(code.companion()), code.twist_diagonal());
            }
            // HNF invariance under random unimodular transforms
            let stack = code.gpm().stack_vertical(&code.twist_diagonal());
            let base = stack.hermite_normal_form();
            assert_eq!(base.square().unwrap(), *code.gpm());
            for _ in 0..20 {
                let u = random_unimodular(&mut rng, &spec, &nonzero, stack.rows());
                let transformed = u.matmul(&stack);
                let res = transformed.hermite_normal_form();
                assert_eq!(res.hnf, base.hnf);
                assert_eq!(
                    res.transform.determinant().unwrap().degree(),
                    Some(0)
                );
            }
        }
    });
}

/// A product of random elementary row operations.
fn random_unimodular(
    rng: &mut StdRng,
    spec: &Arc<FieldSpec>,
    nonzero: &[FieldElement],
    n: usize,
) -> PolyMatrix {
    let mut u = PolyMatrix::identity(spec, n);
    for _ in 0..8 {
        let mut elementary = PolyMatrix::identity(spec, n);
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 => {
                // swap rows i and j
                if i != j {
                    elementary.set(i, i, Poly::zero(spec));
                    elementary.set(j, j, Poly::zero(spec));
                    elementary.set(i, j, Poly::one(spec));
                    elementary.set(j, i, Poly::one(spec));
                }
            }
            1 => {
                // scale row i by a unit
                let c = nonzero[rng.gen_range(0..nonzero.len())].clone();
                elementary.set(i, i, Poly::constant(c));
            }
            _ => {
                // add a polynomial multiple of row j to row i
                if i != j {
                    let deg = rng.gen_range(0..=3);
                    let c = nonzero[rng.gen_range(0..nonzero.len())].clone();
                    elementary.set(i, j, Poly::monomial(c, deg));
                }
            }
        }
        u = elementary.matmul(&u);
    }
    u
}

#[test]
fn criterion_7_two_sided_sweep() {
    criterion(7, "two-sided certificate sweep over F_4", Duration::from_secs(60), || {
        let spec = FieldSpec::new(2, 2, vec![1, 1, 1], None).unwrap();
        let elems: Vec<FieldElement> = spec.elements().collect();
        let mut rng = StdRng::seed_from_u64(0x5eed_0007);
        let kappa = 1usize;
        for trial in 0..50 {
            let ell = rng.gen_range(1..=2usize);
            let blocks: Vec<usize> = (0..ell).map(|_| rng.gen_range(1..=4)).collect();
            // shift constants restricted to the prime subfield F_2
            let shifts = vec![spec.one(); ell];
            let code = random_code(&mut rng, &spec, &elems, &blocks, &shifts);

            let (two_sided, cert) = duals::two_sided_galois_dual(&code, kappa).unwrap();
            let right = duals::right_galois_dual(&code, kappa).unwrap();
            let b_image = duals::euclidean_dual(&code)
                .unwrap()
                .companion()
                .frobenius(spec.e() - kappa);
            cert.verify(right.gpm(), &b_image).unwrap();

            let oracle_dim = ExpandedCode::expand(&right)
                .unwrap()
                .intersect(
                    &ExpandedCode::expand(&duals::left_galois_dual(&code, kappa).unwrap())
                        .unwrap(),
                )
                .unwrap()
                .dimension();
            assert_eq!(cert.certified_dimension(), oracle_dim, "trial {trial}");
            assert_eq!(two_sided.dimension(), oracle_dim);
        }
    });
}

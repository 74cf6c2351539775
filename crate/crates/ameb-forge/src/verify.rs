//! Numerical certification of basis properties with machine-readable
//! reports.
//!
//! Three checks are provided, all with absolute tolerances:
//!
//! - [`gram_check`]: orthonormality; every inner product within a basis
//!   must match the identity Gram matrix;
//! - [`unbiased_check`]: mutual unbiasedness; every cross inner product
//!   between two bases must have modulus `1/√D`;
//! - [`ame_check`]: absolute maximal entanglement; every single-subsystem
//!   reduction of every vector must be maximally mixed. For a tripartite
//!   pure state the two-party reductions carry the same nonzero spectrum as
//!   their single-party complements, so the three single-party checks
//!   settle all bipartitions.
//!
//! The D² inner-product grids are partitioned across worker threads; the
//! max-reductions are order-independent, so reports are deterministic
//! regardless of worker count.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::basis::{BasisLabel, LabeledBasis, StateVector, TripartiteDims};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("bases live in different spaces: {left:?} vs {right:?}")]
    DimsMismatch {
        left: (usize, usize, usize),
        right: (usize, usize, usize),
    },
    #[error("a family needs at least one basis")]
    EmptyFamily,
    #[error("density matrix violates {invariant} by {deviation:e}")]
    InvalidDensityMatrix { invariant: &'static str, deviation: f64 },
}

/// Which subsystem of the triple to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    First,
    Second,
    Third,
}

impl Subsystem {
    pub const ALL: [Subsystem; 3] = [Subsystem::First, Subsystem::Second, Subsystem::Third];

    pub fn dim(&self, dims: TripartiteDims) -> usize {
        match self {
            Subsystem::First => dims.d1(),
            Subsystem::Second => dims.d2(),
            Subsystem::Third => dims.d3(),
        }
    }

    pub fn index(&self) -> u8 {
        match self {
            Subsystem::First => 1,
            Subsystem::Second => 2,
            Subsystem::Third => 3,
        }
    }
}

/// A reduced density operator with conjugate-symmetric storage: entry (r, c)
/// is written together with its mirror, so Hermiticity holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// Real eigenvalues in ascending order (the matrix is Hermitian by
    /// construction).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let m = nalgebra::DMatrix::from_fn(self.dim, self.dim, |r, c| self.entry(r, c));
        let mut values: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }

    /// Checks the density-matrix invariants: Hermitian, unit trace and
    /// positive semidefinite, each within `tol`.
    pub fn validate(&self, tol: f64) -> Result<(), VerifyError> {
        let mut herm_dev: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                herm_dev = herm_dev.max((self.entry(r, c) - self.entry(c, r).conj()).norm());
            }
        }
        if herm_dev > tol {
            return Err(VerifyError::InvalidDensityMatrix {
                invariant: "Hermiticity",
                deviation: herm_dev,
            });
        }
        let trace_dev = (self.trace() - Complex64::new(1.0, 0.0)).norm();
        if trace_dev > tol {
            return Err(VerifyError::InvalidDensityMatrix {
                invariant: "unit trace",
                deviation: trace_dev,
            });
        }
        let min_eig = self.eigenvalues().first().copied().unwrap_or(0.0);
        if min_eig < -tol {
            return Err(VerifyError::InvalidDensityMatrix {
                invariant: "positive semidefiniteness",
                deviation: -min_eig,
            });
        }
        Ok(())
    }

    /// Max entrywise deviation from `I / dim`.
    pub fn deviation_from_maximally_mixed(&self) -> f64 {
        let target = 1.0 / self.dim as f64;
        let mut dev: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let want = if r == c { target } else { 0.0 };
                dev = dev.max((self.entry(r, c) - Complex64::new(want, 0.0)).norm());
            }
        }
        dev
    }
}

/// The reduced density operator of `state` on the kept subsystem, computed
/// by index contraction without materializing the D×D projector.
pub fn partial_trace(state: &StateVector, keep: Subsystem) -> DensityMatrix {
    let dims = state.dims();
    let (d1, d2, d3) = (dims.d1(), dims.d2(), dims.d3());
    let dim = keep.dim(dims);
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    let set = |r: usize, c: usize, v: Complex64, entries: &mut Vec<Complex64>| {
        entries[r * dim + c] = v;
        if r != c {
            entries[c * dim + r] = v.conj();
        }
    };
    for r in 0..dim {
        for c in r..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            match keep {
                Subsystem::First => {
                    for j in 0..d2 {
                        for k in 0..d3 {
                            acc += state.amp(r, j, k) * state.amp(c, j, k).conj();
                        }
                    }
                }
                Subsystem::Second => {
                    for i in 0..d1 {
                        for k in 0..d3 {
                            acc += state.amp(i, r, k) * state.amp(i, c, k).conj();
                        }
                    }
                }
                Subsystem::Third => {
                    for i in 0..d1 {
                        for j in 0..d2 {
                            acc += state.amp(i, j, r) * state.amp(i, j, c).conj();
                        }
                    }
                }
            }
            if r == c {
                // keep the diagonal exactly real
                acc = Complex64::new(acc.re, 0.0);
            }
            set(r, c, acc, &mut entries);
        }
    }
    DensityMatrix { dim, entries }
}

/// What a report certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Gram,
    Unbiased,
    Ame,
}

/// The vector (or vector pair, or vector–subsystem pair) realizing the worst
/// deviation of a check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub left_index: usize,
    pub left_label: BasisLabel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_label: Option<BasisLabel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subsystem: Option<u8>,
}

/// Tolerance-tagged outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: CheckKind,
    pub max_deviation: f64,
    pub target: f64,
    pub tol: f64,
    pub pass: bool,
    pub worst_witness: Option<Witness>,
}

impl VerificationReport {
    fn new(kind: CheckKind, max_deviation: f64, target: f64, tol: f64, witness: Option<Witness>) -> Self {
        VerificationReport {
            kind,
            max_deviation,
            target,
            tol,
            pass: max_deviation <= tol,
            worst_witness: witness,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Deterministic max-reduce: larger deviation wins; exact ties prefer the
/// smaller index pair, so the witness does not depend on thread scheduling.
fn better(a: (f64, usize, usize), b: (f64, usize, usize)) -> (f64, usize, usize) {
    if a.0 > b.0 || (a.0 == b.0 && (a.1, a.2) <= (b.1, b.2)) {
        a
    } else {
        b
    }
}

/// Orthonormality check: max over all D² inner products of
/// `|⟨u|v⟩ − δ_uv|`.
pub fn gram_check(basis: &LabeledBasis, tol: f64) -> VerificationReport {
    let vectors = basis.vectors();
    let worst = (0..vectors.len())
        .into_par_iter()
        .map(|u| {
            let mut row_worst = (f64::MIN, 0usize, 0usize);
            for v in 0..vectors.len() {
                let g = inner(vectors[u].state.amps(), vectors[v].state.amps());
                let delta = if u == v { 1.0 } else { 0.0 };
                let dev = (g - Complex64::new(delta, 0.0)).norm();
                row_worst = better(row_worst, (dev, u, v));
            }
            row_worst
        })
        .reduce(|| (f64::MIN, usize::MAX, usize::MAX), better);
    let witness = Witness {
        left_index: worst.1,
        left_label: vectors[worst.1].label,
        right_index: Some(worst.2),
        right_label: Some(vectors[worst.2].label),
        subsystem: None,
    };
    VerificationReport::new(CheckKind::Gram, worst.0, 0.0, tol, Some(witness))
}

/// Mutual-unbiasedness check: max over all D² cross pairs of
/// `||⟨u|v⟩| − 1/√D|`.
pub fn unbiased_check(
    left: &LabeledBasis,
    right: &LabeledBasis,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    check_dims(left, right)?;
    let target = 1.0 / (left.dims().total() as f64).sqrt();
    let lv = left.vectors();
    let rv = right.vectors();
    let worst = (0..lv.len())
        .into_par_iter()
        .map(|u| {
            let mut row_worst = (f64::MIN, 0usize, 0usize);
            for v in 0..rv.len() {
                let modulus = inner(lv[u].state.amps(), rv[v].state.amps()).norm();
                row_worst = better(row_worst, ((modulus - target).abs(), u, v));
            }
            row_worst
        })
        .reduce(|| (f64::MIN, usize::MAX, usize::MAX), better);
    let witness = Witness {
        left_index: worst.1,
        left_label: lv[worst.1].label,
        right_index: Some(worst.2),
        right_label: Some(rv[worst.2].label),
        subsystem: None,
    };
    Ok(VerificationReport::new(
        CheckKind::Unbiased,
        worst.0,
        target,
        tol,
        Some(witness),
    ))
}

/// Absolute-maximal-entanglement check: for every vector and every single
/// subsystem, the max entrywise deviation of the reduction from `I / dim`.
pub fn ame_check(basis: &LabeledBasis, tol: f64) -> VerificationReport {
    let vectors = basis.vectors();
    let worst = (0..vectors.len())
        .into_par_iter()
        .map(|u| {
            let mut vec_worst = (f64::MIN, 0usize, 0usize);
            for (si, subsystem) in Subsystem::ALL.iter().enumerate() {
                let rho = partial_trace(&vectors[u].state, *subsystem);
                let dev = rho.deviation_from_maximally_mixed();
                vec_worst = better(vec_worst, (dev, u, si));
            }
            vec_worst
        })
        .reduce(|| (f64::MIN, usize::MAX, usize::MAX), better);
    let witness = Witness {
        left_index: worst.1,
        left_label: vectors[worst.1].label,
        right_index: None,
        right_label: None,
        subsystem: Some(Subsystem::ALL[worst.2].index()),
    };
    VerificationReport::new(CheckKind::Ame, worst.0, 0.0, tol, Some(witness))
}

fn check_dims(left: &LabeledBasis, right: &LabeledBasis) -> Result<(), VerifyError> {
    if left.dims() != right.dims() {
        let l = left.dims();
        let r = right.dims();
        return Err(VerifyError::DimsMismatch {
            left: (l.d1(), l.d2(), l.d3()),
            right: (r.d1(), r.d2(), r.d3()),
        });
    }
    Ok(())
}

/// Aggregate verification of a family: a Gram report per basis and an
/// unbiasedness report per unordered pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyVerification {
    pub gram: Vec<VerificationReport>,
    pub unbiased: Vec<PairReport>,
    pub pass: bool,
    pub worst_deviation: f64,
}

/// Unbiasedness report for the basis pair (left, right).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    pub left: usize,
    pub right: usize,
    #[serde(flatten)]
    pub report: VerificationReport,
}

/// Runs [`gram_check`] on every basis and [`unbiased_check`] on every
/// unordered pair; passes iff every report passes.
pub fn verify_mub_family(
    bases: &[LabeledBasis],
    tol: f64,
) -> Result<FamilyVerification, VerifyError> {
    let first = bases.first().ok_or(VerifyError::EmptyFamily)?;
    for b in bases {
        check_dims(first, b)?;
    }
    let gram: Vec<VerificationReport> = bases.iter().map(|b| gram_check(b, tol)).collect();
    let mut unbiased = Vec::new();
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            let report = unbiased_check(&bases[i], &bases[j], tol)?;
            unbiased.push(PairReport {
                left: i,
                right: j,
                report,
            });
        }
    }
    let pass = gram.iter().all(|r| r.pass) && unbiased.iter().all(|p| p.report.pass);
    let worst_deviation = gram
        .iter()
        .map(|r| r.max_deviation)
        .chain(unbiased.iter().map(|p| p.report.max_deviation))
        .fold(0.0, f64::max);
    Ok(FamilyVerification {
        gram,
        unbiased,
        pass,
        worst_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{
        build_ameb_equal_dims, build_ameb_mixed_dims, build_product_basis, root_of_unity,
        BasisError, CoefficientVector, LabeledVector,
    };
    use crate::latin::LatinSquare;
    use crate::DEFAULT_TOL;

    fn fig1_left() -> LatinSquare {
        LatinSquare::from_rows(&[vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]]).unwrap()
    }

    fn fig1_right() -> LatinSquare {
        LatinSquare::from_rows(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap()
    }

    fn fig2_squares() -> Vec<LatinSquare> {
        vec![
            LatinSquare::from_rows(&[
                vec![0, 1, 2, 3],
                vec![3, 2, 1, 0],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
            ])
            .unwrap(),
            LatinSquare::from_rows(&[
                vec![0, 3, 1, 2],
                vec![3, 0, 2, 1],
                vec![1, 2, 0, 3],
                vec![2, 1, 3, 0],
            ])
            .unwrap(),
            LatinSquare::from_rows(&[
                vec![0, 2, 3, 1],
                vec![3, 1, 0, 2],
                vec![1, 3, 2, 0],
                vec![2, 0, 1, 3],
            ])
            .unwrap(),
        ]
    }

    fn example1_bases() -> (LabeledBasis, LabeledBasis) {
        let phi = build_ameb_equal_dims(&fig1_left(), None).unwrap();
        let coeffs = CoefficientVector::new(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            root_of_unity(3, 1),
        ])
        .unwrap();
        let psi = build_ameb_equal_dims(&fig1_right(), Some(&coeffs)).unwrap();
        (phi, psi)
    }

    /// Independent oracle: materialize the D×D projector |v⟩⟨v| and sum the
    /// diagonal blocks of the traced-out subsystems.
    fn partial_trace_via_projector(state: &StateVector, keep: Subsystem) -> Vec<Complex64> {
        let dims = state.dims();
        let total = dims.total();
        let amps = state.amps();
        let mut projector = vec![Complex64::new(0.0, 0.0); total * total];
        for a in 0..total {
            for b in 0..total {
                projector[a * total + b] = amps[a] * amps[b].conj();
            }
        }
        let (d1, d2, d3) = (dims.d1(), dims.d2(), dims.d3());
        let dim = keep.dim(dims);
        let mut rho = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..d1 {
            for j in 0..d2 {
                for k in 0..d3 {
                    for i2 in 0..d1 {
                        for j2 in 0..d2 {
                            for k2 in 0..d3 {
                                let a = dims.index(i, j, k);
                                let b = dims.index(i2, j2, k2);
                                let (r, c, keepers) = match keep {
                                    Subsystem::First => (i, i2, j == j2 && k == k2),
                                    Subsystem::Second => (j, j2, i == i2 && k == k2),
                                    Subsystem::Third => (k, k2, i == i2 && j == j2),
                                };
                                if keepers {
                                    rho[r * dim + c] += projector[a * total + b];
                                }
                            }
                        }
                    }
                }
            }
        }
        rho
    }

    #[test]
    fn gram_of_reference_bases_is_identity() {
        let (phi, psi) = example1_bases();
        for basis in [&phi, &psi] {
            let report = gram_check(basis, DEFAULT_TOL);
            assert!(report.pass, "max dev {}", report.max_deviation);
            assert!(report.max_deviation < 1e-9);
        }
    }

    #[test]
    fn duplicated_vector_fails_gram_with_unit_deviation() {
        let basis = build_product_basis(2, 2).unwrap();
        let mut vectors: Vec<LabeledVector> = basis.vectors().to_vec();
        let copied = vectors[0].state.clone();
        vectors[1].state = copied;
        let broken = LabeledBasis::new(basis.dims(), "dup", vectors).unwrap();
        let report = gram_check(&broken, DEFAULT_TOL);
        assert!(!report.pass);
        assert!((report.max_deviation - 1.0).abs() < 1e-12);
        let witness = report.worst_witness.unwrap();
        assert_eq!(
            (witness.left_index, witness.right_index),
            (0, Some(1)),
            "deterministic witness at the duplicated pair"
        );
    }

    #[test]
    fn single_vector_basis_has_zero_gram_deviation() {
        let basis = build_product_basis(1, 1).unwrap();
        let report = gram_check(&basis, DEFAULT_TOL);
        assert!(report.pass);
        assert!(report.max_deviation < 1e-15);
    }

    #[test]
    fn reference_bases_are_unbiased_at_the_printed_modulus() {
        let (phi, psi) = example1_bases();
        let report = unbiased_check(&phi, &psi, DEFAULT_TOL).unwrap();
        assert!(report.pass, "max dev {}", report.max_deviation);
        assert!((report.target - 1.0 / 27f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mixed_dims_bases_are_unbiased_at_one_quarter() {
        let bases: Vec<LabeledBasis> = fig2_squares()
            .iter()
            .map(|sq| build_ameb_mixed_dims(sq, 2, 2).unwrap())
            .collect();
        for i in 0..bases.len() {
            for j in i + 1..bases.len() {
                let report = unbiased_check(&bases[i], &bases[j], DEFAULT_TOL).unwrap();
                assert!(report.pass);
                assert!((report.target - 0.25).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn a_basis_is_never_unbiased_with_itself() {
        let basis = build_product_basis(2, 2).unwrap();
        let report = unbiased_check(&basis, &basis, DEFAULT_TOL).unwrap();
        assert!(!report.pass);
        let expected = 1.0 - 0.25; // diagonal pairs have modulus 1
        assert!((report.max_deviation - expected).abs() < 1e-12);
    }

    #[test]
    fn unbiased_check_rejects_different_spaces() {
        let a = build_product_basis(2, 2).unwrap();
        let b = build_product_basis(2, 3).unwrap();
        assert!(matches!(
            unbiased_check(&a, &b, DEFAULT_TOL),
            Err(VerifyError::DimsMismatch { .. })
        ));
    }

    #[test]
    fn unbiased_check_is_symmetric() {
        let (phi, psi) = example1_bases();
        let ab = unbiased_check(&phi, &psi, DEFAULT_TOL).unwrap();
        let ba = unbiased_check(&psi, &phi, DEFAULT_TOL).unwrap();
        assert!((ab.max_deviation - ba.max_deviation).abs() <= 1e-15);
    }

    #[test]
    fn product_state_reduction_is_a_pure_projector() {
        // |000⟩ in dims (2, 2, 4): the first reduction is diag(1, 0)
        let dims = crate::basis::TripartiteDims::new(2, 2, 4).unwrap();
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        amps[dims.index(0, 0, 0)] = Complex64::new(1.0, 0.0);
        let state = StateVector::new(dims, amps).unwrap();
        let rho = partial_trace(&state, Subsystem::First);
        assert!((rho.entry(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        for (r, c) in [(0, 1), (1, 0), (1, 1)] {
            assert!(rho.entry(r, c).norm() < 1e-15);
        }
    }

    #[test]
    fn reference_vector_reductions_are_maximally_mixed() {
        let (phi, _) = example1_bases();
        let v = &phi.vectors()[0];
        for subsystem in Subsystem::ALL {
            let rho = partial_trace(&v.state, subsystem);
            assert!(rho.deviation_from_maximally_mixed() < 1e-12);
            rho.validate(DEFAULT_TOL).unwrap();
        }
    }

    #[test]
    fn mixed_dims_third_reduction_is_identity_over_four() {
        let basis = build_ameb_mixed_dims(&fig2_squares()[0], 2, 2).unwrap();
        let rho = partial_trace(&basis.vectors()[0].state, Subsystem::Third);
        assert_eq!(rho.dim(), 4);
        assert!(rho.deviation_from_maximally_mixed() < 1e-12);
    }

    #[test]
    fn contraction_matches_the_projector_oracle() {
        // every total dimension up to 64 that the constructions reach
        let (phi, psi) = example1_bases();
        let fig2 = build_ameb_mixed_dims(&fig2_squares()[0], 2, 2).unwrap();
        let d64 = build_ameb_equal_dims(&LatinSquare::cyclic(4), None).unwrap();
        let d1 = build_ameb_equal_dims(&LatinSquare::cyclic(1), None).unwrap();
        for basis in [&phi, &psi, &fig2, &d64, &d1] {
            for v in basis.vectors() {
                for subsystem in Subsystem::ALL {
                    let fast = partial_trace(&v.state, subsystem);
                    let slow = partial_trace_via_projector(&v.state, subsystem);
                    let dim = fast.dim();
                    for r in 0..dim {
                        for c in 0..dim {
                            assert!(
                                (fast.entry(r, c) - slow[r * dim + c]).norm() < 1e-12,
                                "{subsystem:?} ({r}, {c})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reductions_have_unit_trace_and_spectra_in_range() {
        let (phi, _) = example1_bases();
        for v in phi.vectors().iter().take(5) {
            for subsystem in Subsystem::ALL {
                let rho = partial_trace(&v.state, subsystem);
                assert!((rho.trace().re - 1.0).abs() < 1e-12);
                assert!(rho.trace().im.abs() < 1e-15);
                let eigs = rho.eigenvalues();
                assert!((eigs.iter().sum::<f64>() - 1.0).abs() < 1e-10);
                assert!(eigs.iter().all(|&e| e >= -DEFAULT_TOL && e <= 1.0 + DEFAULT_TOL));
            }
        }
    }

    #[test]
    fn hermiticity_is_exact_by_storage() {
        let (_, psi) = example1_bases();
        let rho = partial_trace(&psi.vectors()[7].state, Subsystem::Second);
        for r in 0..rho.dim() {
            for c in 0..rho.dim() {
                // exact equality, not a tolerance: the mirror entry is stored
                // as the conjugate of the same accumulated sum
                let a = rho.entry(r, c);
                let b = rho.entry(c, r).conj();
                assert!(a.re == b.re && a.im == b.im);
            }
        }
    }

    #[test]
    fn reference_basis_passes_ame() {
        let (phi, psi) = example1_bases();
        for basis in [&phi, &psi] {
            let report = ame_check(basis, DEFAULT_TOL);
            assert!(report.pass, "max dev {}", report.max_deviation);
        }
    }

    #[test]
    fn product_basis_fails_ame() {
        let basis = build_product_basis(2, 2).unwrap();
        let report = ame_check(&basis, DEFAULT_TOL);
        assert!(!report.pass);
        // the third register is a computational ket: deviation 1 − 1/4
        assert!((report.max_deviation - 0.75).abs() < 1e-12);

        // the first subsystem's reduction is a rank-1 Fourier projector,
        // off by 1/2 entrywise from I/2
        let rho = partial_trace(&basis.vectors()[0].state, Subsystem::First);
        let dev = rho.deviation_from_maximally_mixed();
        assert!((dev - 0.5).abs() < 1e-12);
        assert!(dev >= 0.25);
    }

    #[test]
    fn four_bases_of_the_reference_quadruple_are_mutually_unbiased() {
        let mut bases: Vec<LabeledBasis> = fig2_squares()
            .iter()
            .map(|sq| build_ameb_mixed_dims(sq, 2, 2).unwrap())
            .collect();
        bases.push(build_product_basis(2, 2).unwrap());
        let family = verify_mub_family(&bases, DEFAULT_TOL).unwrap();
        assert!(family.pass);
        assert_eq!(family.gram.len(), 4);
        assert_eq!(family.unbiased.len(), 6);
        assert!(family.worst_deviation < 1e-9);
    }

    #[test]
    fn two_bases_of_the_reference_pair_are_mutually_unbiased() {
        let (phi, psi) = example1_bases();
        let family = verify_mub_family(&[phi, psi], DEFAULT_TOL).unwrap();
        assert!(family.pass);
    }

    #[test]
    fn family_with_a_repeated_basis_fails() {
        let basis = build_ameb_mixed_dims(&fig2_squares()[0], 2, 2).unwrap();
        let family = verify_mub_family(&[basis.clone(), basis], DEFAULT_TOL).unwrap();
        assert!(!family.pass);
    }

    #[test]
    fn empty_family_is_rejected() {
        assert!(matches!(
            verify_mub_family(&[], DEFAULT_TOL),
            Err(VerifyError::EmptyFamily)
        ));
    }

    #[test]
    fn relabeling_changes_only_the_witness_identity() {
        let basis = build_ameb_mixed_dims(&fig2_squares()[1], 2, 2).unwrap();
        let mut vectors = basis.vectors().to_vec();
        vectors.reverse();
        let permuted = LabeledBasis::new(basis.dims(), "permuted", vectors).unwrap();
        let a = gram_check(&basis, DEFAULT_TOL);
        let b = gram_check(&permuted, DEFAULT_TOL);
        assert_eq!(a.pass, b.pass);
        assert!((a.max_deviation - b.max_deviation).abs() < 1e-15);
    }

    #[test]
    fn reports_serialize_with_witness_labels() {
        let (phi, psi) = example1_bases();
        let report = unbiased_check(&phi, &psi, DEFAULT_TOL).unwrap();
        let json = report.to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["kind"], "unbiased");
        assert!(value["worst_witness"]["left_label"]["n"].is_number());
        // round-trip through the schema
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn density_validation_catches_broken_matrices() {
        let bad = DensityMatrix {
            dim: 2,
            entries: vec![
                Complex64::new(0.9, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.9, 0.0),
            ],
        };
        assert!(matches!(
            bad.validate(DEFAULT_TOL),
            Err(VerifyError::InvalidDensityMatrix {
                invariant: "unit trace",
                ..
            })
        ));
    }

    #[test]
    fn state_vector_errors_are_reported_not_panicked() {
        let dims = crate::basis::TripartiteDims::equal(2);
        let result = StateVector::new(dims, vec![Complex64::new(1.0, 0.0); 3]);
        assert!(matches!(result, Err(BasisError::DimensionMismatch(_))));
    }
}

//! Orthonormal bases of `C^d1 ⊗ C^d2 ⊗ C^d3` built from Latin squares.
//!
//! Three constructions are provided:
//!
//! - [`build_ameb_equal_dims`]: the equal-dimension family over `C^d ⊗ C^d
//!   ⊗ C^d`. For each label (n, m, l) the vector spreads phase-weighted
//!   amplitude over the d cells of the square holding entry `(k + l) mod d`.
//!   An optional bi-unimodular coefficient vector reweights the entry
//!   register; two such bases built from a pair of orthogonal squares are
//!   mutually unbiased.
//! - [`build_ameb_mixed_dims`]: the mixed-dimension family over `C^d1 ⊗
//!   C^d2 ⊗ C^(d1·d2)`, driven by one row of a square of order d1·d2 per
//!   label; bases from pairwise weak-orthogonal squares are mutually
//!   unbiased.
//! - [`build_product_basis`]: the fully factorized basis (Fourier ⊗
//!   Fourier ⊗ computational) that is mutually unbiased with every
//!   mixed-dimension basis yet maximally *un*entangled.
//!
//! Amplitudes are indexed `a = (i·d2 + j)·d3 + k` for the ket `|i⟩|j⟩|k⟩`.
//! In the equal-dimension family the first tensor factor is the entry
//! register and the remaining two are the row and column registers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jsonf;
use crate::latin::LatinSquare;
use crate::DEFAULT_TOL;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BasisError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("square order {got} does not match the required order {expected}")]
    OrderMismatch { expected: usize, got: usize },
    #[error("coefficient vector violates {invariant} by {deviation:e}")]
    FlatnessViolation { invariant: &'static str, deviation: f64 },
    #[error("amplitude vector has norm {norm} (expected 1 within {tol:e})")]
    NotNormalized { norm: f64, tol: f64 },
    #[error("amplitudes must be finite")]
    NonFiniteAmplitude,
    #[error("labels must enumerate the full (n, m, l) cube exactly once")]
    BadLabels,
}

/// Subsystem dimensions (d1, d2, d3) of a tripartite space; the total
/// dimension is `d1·d2·d3`. Legal shapes are the equal-dimension cube
/// (d, d, d) and the mixed shape (d1, d2, d1·d2) with d1 ≤ d2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripartiteDims {
    d1: usize,
    d2: usize,
    d3: usize,
}

impl TripartiteDims {
    pub fn equal(d: usize) -> TripartiteDims {
        assert!(d >= 1, "dimension must be at least 1");
        TripartiteDims { d1: d, d2: d, d3: d }
    }

    pub fn mixed(d1: usize, d2: usize) -> Result<TripartiteDims, BasisError> {
        if d1 < 1 || d2 < 1 {
            return Err(BasisError::DimensionMismatch(
                "dimensions must be at least 1".into(),
            ));
        }
        if d1 > d2 {
            return Err(BasisError::DimensionMismatch(format!(
                "mixed dims require d1 ≤ d2, got ({d1}, {d2})"
            )));
        }
        Ok(TripartiteDims {
            d1,
            d2,
            d3: d1 * d2,
        })
    }

    /// Validates an explicit triple against the two legal shapes.
    pub fn new(d1: usize, d2: usize, d3: usize) -> Result<TripartiteDims, BasisError> {
        let equal = d1 == d2 && d2 == d3 && d1 >= 1;
        let mixed = d1 >= 1 && d1 <= d2 && d3 == d1 * d2;
        if equal || mixed {
            Ok(TripartiteDims { d1, d2, d3 })
        } else {
            Err(BasisError::DimensionMismatch(format!(
                "({d1}, {d2}, {d3}) is neither (d, d, d) nor (d1, d2, d1·d2) with d1 ≤ d2"
            )))
        }
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn d3(&self) -> usize {
        self.d3
    }

    /// Total dimension D = d1·d2·d3.
    pub fn total(&self) -> usize {
        self.d1 * self.d2 * self.d3
    }

    /// Flat amplitude index of the ket `|i⟩|j⟩|k⟩`.
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.d1 && j < self.d2 && k < self.d3);
        (i * self.d2 + j) * self.d3 + k
    }
}

/// The (n, m, l) label of a basis vector, plus the optional family index of
/// the square that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisLabel {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub s: Option<usize>,
}

impl BasisLabel {
    pub fn new(n: usize, m: usize, l: usize) -> BasisLabel {
        BasisLabel { n, m, l, s: None }
    }
}

/// A unit vector in `C^d1 ⊗ C^d2 ⊗ C^d3`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: TripartiteDims,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Validates length, finiteness and unit norm (within [`DEFAULT_TOL`]).
    pub fn new(dims: TripartiteDims, amps: Vec<Complex64>) -> Result<StateVector, BasisError> {
        if amps.len() != dims.total() {
            return Err(BasisError::DimensionMismatch(format!(
                "expected {} amplitudes, got {}",
                dims.total(),
                amps.len()
            )));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(BasisError::NonFiniteAmplitude);
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > DEFAULT_TOL {
            return Err(BasisError::NotNormalized {
                norm,
                tol: DEFAULT_TOL,
            });
        }
        Ok(StateVector { dims, amps })
    }

    pub fn dims(&self) -> TripartiteDims {
        self.dims
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.amps[self.dims.index(i, j, k)]
    }

    /// Number of amplitudes with modulus above `tol`.
    pub fn support_size(&self, tol: f64) -> usize {
        self.amps.iter().filter(|a| a.norm() > tol).count()
    }
}

/// One labeled member of a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledVector {
    pub label: BasisLabel,
    pub state: StateVector,
}

/// A complete orthonormal basis of `C^d1 ⊗ C^d2 ⊗ C^d3`: exactly D vectors
/// whose labels enumerate `[0, d1) × [0, d2) × [0, d3)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledBasis {
    dims: TripartiteDims,
    provenance: String,
    vectors: Vec<LabeledVector>,
}

impl LabeledBasis {
    pub fn new(
        dims: TripartiteDims,
        provenance: impl Into<String>,
        vectors: Vec<LabeledVector>,
    ) -> Result<LabeledBasis, BasisError> {
        if vectors.len() != dims.total() {
            return Err(BasisError::BadLabels);
        }
        let mut seen = vec![false; dims.total()];
        for v in &vectors {
            let BasisLabel { n, m, l, .. } = v.label;
            if n >= dims.d1 || m >= dims.d2 || l >= dims.d3 {
                return Err(BasisError::BadLabels);
            }
            let slot = (n * dims.d2 + m) * dims.d3 + l;
            if seen[slot] {
                return Err(BasisError::BadLabels);
            }
            seen[slot] = true;
            if v.state.dims() != dims {
                return Err(BasisError::DimensionMismatch(
                    "vector dims differ from basis dims".into(),
                ));
            }
        }
        Ok(LabeledBasis {
            dims,
            provenance: provenance.into(),
            vectors,
        })
    }

    pub fn dims(&self) -> TripartiteDims {
        self.dims
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn set_provenance(&mut self, provenance: impl Into<String>) {
        self.provenance = provenance.into();
    }

    pub fn vectors(&self) -> &[LabeledVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Stamps every label with the family index `s`.
    pub fn with_family_index(mut self, s: usize) -> LabeledBasis {
        for v in &mut self.vectors {
            v.label.s = Some(s);
        }
        self
    }
}

/// `exp(2πi · e / d)`, with the exponent reduced mod d before evaluating.
pub fn root_of_unity(d: usize, e: usize) -> Complex64 {
    debug_assert!(d >= 1);
    let angle = 2.0 * std::f64::consts::PI * (e % d) as f64 / d as f64;
    Complex64::new(angle.cos(), angle.sin())
}

/// A bi-unimodular coefficient vector `(a_0, …, a_{d−1})`: every entry has
/// modulus 1 and every frequency of its discrete Fourier transform has
/// modulus √d. Both properties are verified at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    a: Vec<Complex64>,
}

impl CoefficientVector {
    pub fn new(a: Vec<Complex64>) -> Result<CoefficientVector, BasisError> {
        let d = a.len();
        if d == 0 {
            return Err(BasisError::DimensionMismatch(
                "coefficient vector must be nonempty".into(),
            ));
        }
        if a.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(BasisError::NonFiniteAmplitude);
        }
        let unimod_dev = a
            .iter()
            .map(|c| (c.norm() - 1.0).abs())
            .fold(0.0, f64::max);
        if unimod_dev > DEFAULT_TOL {
            return Err(BasisError::FlatnessViolation {
                invariant: "unimodularity",
                deviation: unimod_dev,
            });
        }
        let target = (d as f64).sqrt();
        let mut flat_dev: f64 = 0.0;
        for t in 0..d {
            let sum: Complex64 = a
                .iter()
                .enumerate()
                .map(|(k, &ak)| root_of_unity(d, t * k % d) * ak)
                .sum();
            flat_dev = flat_dev.max((sum.norm() - target).abs());
        }
        if flat_dev > DEFAULT_TOL {
            return Err(BasisError::FlatnessViolation {
                invariant: "Fourier flatness",
                deviation: flat_dev,
            });
        }
        Ok(CoefficientVector { a })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.a[k]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.a
    }
}

/// The quadratic-phase (Gauss) coefficient vector: `a_k = ω_d^(k²)` for odd
/// d and `a_k = ω_(2d)^(k²)` for even d. Validated before return.
pub fn flat_fourier_coeffs(d: usize) -> Result<CoefficientVector, BasisError> {
    assert!(d >= 1, "dimension must be at least 1");
    let a = if d % 2 == 1 {
        (0..d).map(|k| root_of_unity(d, k * k % d)).collect()
    } else {
        (0..d).map(|k| root_of_unity(2 * d, k * k % (2 * d))).collect()
    };
    CoefficientVector::new(a)
}

/// Flattens a (row, column) pair of `Z_d1 × Z_d2` into `Z_(d1·d2)` as
/// `d2·i + j`.
pub fn pair_index(i: usize, j: usize, d2: usize) -> usize {
    debug_assert!(j < d2);
    d2 * i + j
}

/// The equal-dimension basis of `C^d ⊗ C^d ⊗ C^d` from one order-d square.
///
/// For label (n, m, l), the amplitude of `|k⟩|i⟩|j⟩` is
/// `(a_k / d) · ω_d^(nk) · ω_d^(mi)` when `j` is the column of entry
/// `(k + l) mod d` in row `i`, and 0 otherwise. Without `coeffs` every
/// `a_k` is 1.
pub fn build_ameb_equal_dims(
    square: &LatinSquare,
    coeffs: Option<&CoefficientVector>,
) -> Result<LabeledBasis, BasisError> {
    let d = square.order();
    if let Some(cv) = coeffs {
        if cv.len() != d {
            return Err(BasisError::DimensionMismatch(format!(
                "coefficient vector has length {} but the square has order {d}",
                cv.len()
            )));
        }
    }
    let dims = TripartiteDims::equal(d);
    let scale = 1.0 / d as f64;

    // column_of lookup: position[i][e] = column of entry e in row i
    let mut position = vec![0usize; d * d];
    for i in 0..d {
        for c in 0..d {
            position[i * d + square.entry(i, c) as usize] = c;
        }
    }

    let mut vectors = Vec::with_capacity(dims.total());
    for n in 0..d {
        for m in 0..d {
            for l in 0..d {
                let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
                for k in 0..d {
                    let a_k = coeffs.map_or(Complex64::new(1.0, 0.0), |cv| cv.coeff(k));
                    let weight = a_k * root_of_unity(d, n * k % d) * scale;
                    let entry = (k + l) % d;
                    for i in 0..d {
                        let j = position[i * d + entry];
                        amps[dims.index(k, i, j)] = weight * root_of_unity(d, m * i % d);
                    }
                }
                vectors.push(LabeledVector {
                    label: BasisLabel::new(n, m, l),
                    state: StateVector::new(dims, amps)?,
                });
            }
        }
    }
    let tag = if coeffs.is_some() { "theorem2" } else { "theorem1" };
    LabeledBasis::new(dims, format!("{tag}:order={d}"), vectors)
}

/// The mixed-dimension basis of `C^d1 ⊗ C^d2 ⊗ C^(d1·d2)` from one square
/// of order d1·d2.
///
/// For label (n, m, l), the amplitude of `|i⟩|j⟩|k⟩` is
/// `ω_d1^(ni) · ω_d2^(mj) / √(d1·d2)` when `k = square(l, d2·i + j)`, and 0
/// otherwise.
pub fn build_ameb_mixed_dims(
    square: &LatinSquare,
    d1: usize,
    d2: usize,
) -> Result<LabeledBasis, BasisError> {
    let dims = TripartiteDims::mixed(d1, d2)?;
    let q = d1 * d2;
    if square.order() != q {
        return Err(BasisError::OrderMismatch {
            expected: q,
            got: square.order(),
        });
    }
    let scale = 1.0 / (q as f64).sqrt();
    let mut vectors = Vec::with_capacity(dims.total());
    for n in 0..d1 {
        for m in 0..d2 {
            for l in 0..q {
                let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
                for i in 0..d1 {
                    let row_phase = root_of_unity(d1, n * i % d1) * scale;
                    for j in 0..d2 {
                        let k = square.entry(l, pair_index(i, j, d2)) as usize;
                        amps[dims.index(i, j, k)] = row_phase * root_of_unity(d2, m * j % d2);
                    }
                }
                vectors.push(LabeledVector {
                    label: BasisLabel::new(n, m, l),
                    state: StateVector::new(dims, amps)?,
                });
            }
        }
    }
    LabeledBasis::new(dims, format!("theorem3:dims=({d1},{d2},{q})"), vectors)
}

/// The fully factorized product basis of `C^d1 ⊗ C^d2 ⊗ C^(d1·d2)`: each
/// vector is (Fourier vector in C^d1) ⊗ (Fourier vector in C^d2) ⊗ |l⟩.
pub fn build_product_basis(d1: usize, d2: usize) -> Result<LabeledBasis, BasisError> {
    let dims = TripartiteDims::mixed(d1, d2)?;
    let q = d1 * d2;
    let scale = 1.0 / (q as f64).sqrt();
    let mut vectors = Vec::with_capacity(dims.total());
    for n in 0..d1 {
        for m in 0..d2 {
            for l in 0..q {
                let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
                for i in 0..d1 {
                    let row_phase = root_of_unity(d1, n * i % d1) * scale;
                    for j in 0..d2 {
                        amps[dims.index(i, j, l)] = row_phase * root_of_unity(d2, m * j % d2);
                    }
                }
                vectors.push(LabeledVector {
                    label: BasisLabel::new(n, m, l),
                    state: StateVector::new(dims, amps)?,
                });
            }
        }
    }
    LabeledBasis::new(dims, format!("theorem5:dims=({d1},{d2},{q})"), vectors)
}

// ---------------------------------------------------------------------------
// JSON file format
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum BasisIoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid basis: {0}")]
    Invalid(#[from] BasisError),
}

#[derive(Serialize, Deserialize)]
struct BasisFile {
    dims: DimsRepr,
    provenance: String,
    vectors: Vec<VectorRepr>,
}

#[derive(Serialize, Deserialize)]
struct DimsRepr {
    d1: usize,
    d2: usize,
    d3: usize,
}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    label: BasisLabel,
    amps: Vec<[f64; 2]>,
}

/// Serializes a basis to the JSON file format. Reals carry 17 significant
/// digits, so the file reproduces every amplitude bit-for-bit.
pub fn basis_to_json(basis: &LabeledBasis) -> String {
    let file = BasisFile {
        dims: DimsRepr {
            d1: basis.dims().d1(),
            d2: basis.dims().d2(),
            d3: basis.dims().d3(),
        },
        provenance: basis.provenance().to_string(),
        vectors: basis
            .vectors()
            .iter()
            .map(|v| VectorRepr {
                label: v.label,
                amps: v.state.amps().iter().map(|a| [a.re, a.im]).collect(),
            })
            .collect(),
    };
    jsonf::to_string_17(&file).expect("basis serialization cannot fail")
}

/// Parses and fully validates a basis file (dims shape, unit norms, label
/// cube).
pub fn basis_from_json(text: &str) -> Result<LabeledBasis, BasisIoError> {
    let file: BasisFile = serde_json::from_str(text)?;
    let dims = TripartiteDims::new(file.dims.d1, file.dims.d2, file.dims.d3)?;
    let vectors = file
        .vectors
        .into_iter()
        .map(|v| {
            let amps = v.amps.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
            Ok(LabeledVector {
                label: v.label,
                state: StateVector::new(dims, amps)?,
            })
        })
        .collect::<Result<Vec<_>, BasisError>>()?;
    Ok(LabeledBasis::new(dims, file.provenance, vectors)?)
}

//! Verbatim transcriptions of the bundled reference squares and the
//! order-3 coefficient triple. Validated once at first access; any
//! transcription error fails loudly.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::basis::{root_of_unity, CoefficientVector};
use crate::latin::{are_mols, are_mwols, LatinSquare, Symbol};

const FIG1_LEFT: [[Symbol; 3]; 3] = [[0, 2, 1], [1, 0, 2], [2, 1, 0]];
const FIG1_RIGHT: [[Symbol; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];

const FIG2_A: [[Symbol; 4]; 4] = [[0, 1, 2, 3], [3, 2, 1, 0], [1, 0, 3, 2], [2, 3, 0, 1]];
const FIG2_B: [[Symbol; 4]; 4] = [[0, 3, 1, 2], [3, 0, 2, 1], [1, 2, 0, 3], [2, 1, 3, 0]];
const FIG2_C: [[Symbol; 4]; 4] = [[0, 2, 3, 1], [3, 1, 0, 2], [1, 3, 2, 0], [2, 0, 1, 3]];

const EX4_L1: [[Symbol; 10]; 10] = [
    [0, 4, 1, 7, 2, 9, 8, 3, 6, 5],
    [8, 1, 5, 2, 7, 3, 9, 4, 0, 6],
    [9, 8, 2, 6, 3, 7, 4, 5, 1, 0],
    [5, 9, 8, 3, 0, 4, 7, 6, 2, 1],
    [7, 6, 9, 8, 4, 1, 5, 0, 3, 2],
    [6, 7, 0, 9, 8, 5, 2, 1, 4, 3],
    [3, 0, 7, 1, 9, 8, 6, 2, 5, 4],
    [1, 2, 3, 4, 5, 6, 0, 7, 8, 9],
    [2, 3, 4, 5, 6, 0, 1, 8, 9, 7],
    [4, 5, 6, 0, 1, 2, 3, 9, 7, 8],
];

const EX4_L2: [[Symbol; 10]; 10] = [
    [0, 1, 2, 3, 4, 5, 6, 7, 9, 8],
    [1, 3, 6, 8, 0, 7, 9, 2, 4, 5],
    [2, 5, 8, 6, 7, 9, 0, 1, 3, 4],
    [3, 7, 9, 4, 6, 2, 8, 5, 0, 1],
    [4, 8, 5, 7, 9, 6, 1, 0, 2, 3],
    [5, 6, 0, 1, 2, 3, 4, 8, 7, 9],
    [6, 0, 1, 2, 3, 4, 5, 9, 8, 7],
    [7, 9, 3, 5, 1, 8, 2, 4, 6, 0],
    [8, 4, 7, 9, 5, 0, 3, 6, 1, 2],
    [9, 2, 4, 0, 8, 1, 7, 3, 5, 6],
];

pub(crate) struct Bundle {
    pub fig1_left: LatinSquare,
    pub fig1_right: LatinSquare,
    pub fig2: [LatinSquare; 3],
    pub ex4: [LatinSquare; 2],
    pub ex1_coeffs: CoefficientVector,
}

fn square<const N: usize>(rows: &[[Symbol; N]; N]) -> LatinSquare {
    let rows: Vec<Vec<Symbol>> = rows.iter().map(|r| r.to_vec()).collect();
    LatinSquare::from_rows(&rows).expect("bundled square must be Latin")
}

pub(crate) fn bundle() -> &'static Bundle {
    static BUNDLE: OnceLock<Bundle> = OnceLock::new();
    BUNDLE.get_or_init(|| {
        let b = Bundle {
            fig1_left: square(&FIG1_LEFT),
            fig1_right: square(&FIG1_RIGHT),
            fig2: [square(&FIG2_A), square(&FIG2_B), square(&FIG2_C)],
            ex4: [square(&EX4_L1), square(&EX4_L2)],
            ex1_coeffs: CoefficientVector::new(vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                root_of_unity(3, 1),
            ])
            .expect("(1, 1, ω₃) is bi-unimodular"),
        };
        // designated pair properties, checked once per process
        assert_eq!(
            are_mols(&b.fig1_left, &b.fig1_right),
            Ok(true),
            "fig1 pair must be orthogonal"
        );
        assert_eq!(
            are_mwols(&b.fig1_left, &b.fig1_right),
            Ok(true),
            "fig1 pair must be weak orthogonal"
        );
        for i in 0..3 {
            for j in i + 1..3 {
                assert_eq!(
                    are_mwols(&b.fig2[i], &b.fig2[j]),
                    Ok(true),
                    "fig2 squares {i} and {j} must be weak orthogonal"
                );
            }
        }
        assert_eq!(
            are_mwols(&b.ex4[0], &b.ex4[1]),
            Ok(true),
            "the order-10 pair must be weak orthogonal"
        );
        b
    })
}

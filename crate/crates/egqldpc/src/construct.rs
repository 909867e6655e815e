//! Assembly of quasi-cyclic parity-check matrices from cyclic line classes,
//! and their self-orthogonal adaptation.
//!
//! Type-I stacks one circulant per cyclic class (lines as rows); Type-II is
//! its transpose (points as rows). Appending an all-ones column — plus an
//! identity block when the row weight is even — makes every row weight and
//! every pairwise overlap even, which is exactly `H * H^T = 0` over GF(2)
//! *provided* the Type-II rows pairwise overlap exactly once. That premise
//! holds for q = 2 at full class count but fails in general (points that are
//! scalar multiples of each other share only a line through the origin), so
//! [`adapt_self_orthogonal`] always verifies its output and reports the
//! verdict instead of assuming it.

use crate::binmat::{BinMatrix, BinVector};
use crate::error::{Error, Result};
use crate::field::factor_prime_power;
use crate::geometry::{counts, Geometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Type1,
    Type2,
    Orth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityCase {
    Odd,
    Even,
}

impl std::fmt::Display for ParityCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParityCase::Odd => write!(f, "odd"),
            ParityCase::Even => write!(f, "even"),
        }
    }
}

/// Construction parameters and the bounds they imply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    pub q: u64,
    pub m: u32,
    pub ell: usize,
    /// q^m - 1, the circulant size and the Type-II row count.
    pub n: usize,
    pub kind: MatrixKind,
    /// Column count of the final matrix: `ell*n + 1` for odd row weight,
    /// `(ell+1)*n + 1` for even.
    pub length: usize,
    /// Column weight of the Type-II core (q).
    pub col_weight: usize,
    /// Row weight of the Type-II core (ell * q).
    pub row_weight: usize,
    /// Parity of the core row weight; selects the adaptation case.
    pub parity: ParityCase,
    pub class_count: usize,
    /// Null-space distance bound for the Type-I stack: ell*q + 1.
    pub d_type1_lower: usize,
    /// Null-space distance bound for the adapted matrix: q + 1.
    pub d_orth_lower: usize,
}

/// Derives every [`CodeSpec`] field from `(q, m, ell)` for the adapted
/// (self-orthogonal) construction.
pub fn code_summary(q: u64, m: u32, ell: usize) -> Result<CodeSpec> {
    factor_prime_power(q)?;
    if m < 2 {
        return Err(Error::InvalidParameter(
            "construction needs dimension m >= 2".into(),
        ));
    }
    let class_count = counts::cyclic_class_count(m, q) as usize;
    if ell < 1 || ell > class_count {
        return Err(Error::ClassOutOfRange {
            ell,
            available: class_count,
        });
    }
    let n = (q.pow(m) - 1) as usize;
    let row_weight = ell * q as usize;
    let parity = if row_weight % 2 == 1 {
        ParityCase::Odd
    } else {
        ParityCase::Even
    };
    let length = match parity {
        ParityCase::Odd => ell * n + 1,
        ParityCase::Even => (ell + 1) * n + 1,
    };
    Ok(CodeSpec {
        q,
        m,
        ell,
        n,
        kind: MatrixKind::Orth,
        length,
        col_weight: q as usize,
        row_weight,
        parity,
        class_count,
        d_type1_lower: row_weight + 1,
        d_orth_lower: q as usize + 1,
    })
}

fn class_vectors(g: &Geometry, ell: usize) -> Result<Vec<BinVector>> {
    let classes = g.cyclic_classes()?;
    if ell < 1 || ell > classes.len() {
        return Err(Error::ClassOutOfRange {
            ell,
            available: classes.len(),
        });
    }
    classes[..ell]
        .iter()
        .map(|c| g.incidence_vector(&c.representative))
        .collect()
}

/// Vertical stack of `ell` circulants, one per cyclic class: size
/// `ell*n x n`, column weight `ell*q`, row weight `q`.
pub fn type1_matrix(g: &Geometry, ell: usize) -> Result<BinMatrix> {
    let vectors = class_vectors(g, ell)?;
    let mut stacked: Option<BinMatrix> = None;
    for v in &vectors {
        let block = BinMatrix::circulant(v)?;
        stacked = Some(match stacked {
            None => block,
            Some(m) => m.vstack(&block)?,
        });
    }
    Ok(stacked.expect("ell >= 1"))
}

/// Transpose of the Type-I stack: size `n x ell*n`, row weight `ell*q`,
/// column weight `q`. Rows correspond to the non-origin points, columns to
/// the chosen non-origin lines.
pub fn type2_matrix(g: &Geometry, ell: usize) -> Result<BinMatrix> {
    Ok(type1_matrix(g, ell)?.transpose())
}

/// Output of [`adapt_self_orthogonal`]: the widened matrix together with the
/// verified verdict.
#[derive(Debug, Clone)]
pub struct AdaptedMatrix {
    pub matrix: BinMatrix,
    pub case: ParityCase,
    pub self_orthogonal: bool,
    /// First row pair (diagonal included) with odd inner product, when the
    /// verdict is negative.
    pub violation: Option<(usize, usize)>,
}

/// Widens a Type-II matrix to even row weights: `[H^T | 1]` when the row
/// weight is odd, `[H^T | 1 | I]` when it is even. The input must have
/// uniform row weight. The result is checked for self-orthogonality rather
/// than assumed.
pub fn adapt_self_orthogonal(ht: &BinMatrix) -> Result<AdaptedMatrix> {
    let expected = ht.row_weight(0);
    for r in 1..ht.rows() {
        let w = ht.row_weight(r);
        if w != expected {
            return Err(Error::NonUniformRows {
                row: r,
                weight: w,
                expected,
            });
        }
    }
    let case = if expected % 2 == 1 {
        ParityCase::Odd
    } else {
        ParityCase::Even
    };
    let mut matrix = ht.hstack(&BinMatrix::ones_column(ht.rows()))?;
    if case == ParityCase::Even {
        matrix = matrix.hstack(&BinMatrix::identity(ht.rows()))?;
    }
    let violation = matrix.first_self_orthogonality_violation();
    Ok(AdaptedMatrix {
        matrix,
        case,
        self_orthogonal: violation.is_none(),
        violation,
    })
}

/// Binary vector of length `n` with ones at the given exponent positions.
pub fn characteristic_vector(exponents: &[usize], n: usize) -> Result<BinVector> {
    if exponents.is_empty() {
        return Err(Error::InvalidParameter(
            "characteristic vector needs at least one exponent".into(),
        ));
    }
    let mut v = BinVector::zeros(n);
    for &e in exponents {
        if e >= n {
            return Err(Error::InvalidParameter(format!(
                "exponent {e} out of range for length {n}"
            )));
        }
        v.set(e, true);
    }
    Ok(v)
}

/// The n x n circulant permutation matrix whose row `r` is the
/// characteristic vector of exponent `(i + r) mod n`.
pub fn characteristic_matrix(exponent: usize, n: usize) -> Result<BinMatrix> {
    BinMatrix::circulant(&characteristic_vector(&[exponent], n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binmat::MinDistance;

    fn geometry(m: u32, q: u64) -> Geometry {
        Geometry::new(m, q).unwrap()
    }

    #[test]
    fn type1_eg22_is_the_circulant_of_011() {
        let m = type1_matrix(&geometry(2, 2), 1).unwrap();
        assert_eq!(
            m,
            BinMatrix::from_bit_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
        );
    }

    #[test]
    fn type1_eg32_dimensions_and_weights() {
        let m = type1_matrix(&geometry(3, 2), 3).unwrap();
        assert_eq!((m.rows(), m.cols()), (21, 7));
        assert!(m.row_weights().iter().all(|&w| w == 2));
        assert!(m.col_weights().iter().all(|&w| w == 6));
    }

    #[test]
    fn type2_eg32_dimensions_and_weights() {
        let m = type2_matrix(&geometry(3, 2), 3).unwrap();
        assert_eq!((m.rows(), m.cols()), (7, 21));
        assert!(m.row_weights().iter().all(|&w| w == 6));
        assert!(m.col_weights().iter().all(|&w| w == 2));
    }

    #[test]
    fn type2_eg32_rows_overlap_exactly_once() {
        let m = type2_matrix(&geometry(3, 2), 3).unwrap();
        assert!(m.overlap_profile().is_uniform(1));
    }

    #[test]
    fn type2_eg24_dimensions_and_weights() {
        let m = type2_matrix(&geometry(2, 4), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (15, 15));
        assert!(m.row_weights().iter().all(|&w| w == 4));
        assert!(m.col_weights().iter().all(|&w| w == 4));
    }

    #[test]
    fn ell_out_of_range_rejected() {
        let g = geometry(2, 2);
        assert!(matches!(
            type1_matrix(&g, 2),
            Err(Error::ClassOutOfRange { .. })
        ));
        assert!(matches!(
            type1_matrix(&g, 0),
            Err(Error::ClassOutOfRange { .. })
        ));
    }

    #[test]
    fn adapt_eg22_even_case_rows() {
        let ht = type2_matrix(&geometry(2, 2), 1).unwrap();
        let adapted = adapt_self_orthogonal(&ht).unwrap();
        assert_eq!(adapted.case, ParityCase::Even);
        assert!(adapted.self_orthogonal);
        assert_eq!(
            adapted.matrix,
            BinMatrix::from_bit_rows(&[
                &[0, 1, 1, 1, 1, 0, 0],
                &[1, 0, 1, 1, 0, 1, 0],
                &[1, 1, 0, 1, 0, 0, 1],
            ])
        );
        assert!(adapted.matrix.overlap_profile().is_uniform(2));
    }

    #[test]
    fn adapt_eg32_even_case() {
        let ht = type2_matrix(&geometry(3, 2), 3).unwrap();
        let adapted = adapt_self_orthogonal(&ht).unwrap();
        assert_eq!((adapted.matrix.rows(), adapted.matrix.cols()), (7, 29));
        assert!(adapted.self_orthogonal);
        assert_eq!(adapted.matrix.cols(), code_summary(2, 3, 3).unwrap().length);
    }

    #[test]
    fn adapt_odd_case_from_point_line_incidence() {
        // The 4-point toy geometry: all lines (origin included as a row),
        // odd row weight 3, Case 1 widening by the all-ones column.
        let g = geometry(2, 2);
        let lines = g
            .enumerate_lines(crate::geometry::LineFilter::All)
            .unwrap();
        let mut incidence = BinMatrix::zeros(lines.len(), g.num_points() as usize);
        for (r, line) in lines.iter().enumerate() {
            for p in line.points() {
                incidence.set(r, p.rep() as usize, true);
            }
        }
        let ht = incidence.transpose();
        let adapted = adapt_self_orthogonal(&ht).unwrap();
        assert_eq!(adapted.case, ParityCase::Odd);
        assert_eq!((adapted.matrix.rows(), adapted.matrix.cols()), (4, 7));
        assert!(adapted.self_orthogonal);
    }

    #[test]
    fn adapt_rejects_non_uniform_rows() {
        let m = BinMatrix::from_bit_rows(&[&[1, 1, 0], &[1, 0, 0]]);
        assert!(matches!(
            adapt_self_orthogonal(&m),
            Err(Error::NonUniformRows { row: 1, .. })
        ));
    }

    #[test]
    fn adapt_eg24_fails_self_orthogonality() {
        // Points that are F_4 multiples of each other never share a
        // non-origin line, so some pairs overlap only in the ones column.
        let ht = type2_matrix(&geometry(2, 4), 1).unwrap();
        let profile = ht.overlap_profile();
        assert_eq!(profile.count(0), 15);
        assert_eq!(profile.count(1), 90);
        let adapted = adapt_self_orthogonal(&ht).unwrap();
        assert!(!adapted.self_orthogonal);
        assert_eq!(adapted.violation, Some((0, 5)));
    }

    #[test]
    fn adapted_row_weights_are_even() {
        for (q, m, ell) in [(2u64, 2u32, 1usize), (2, 3, 3), (4, 2, 1)] {
            let ht = type2_matrix(&geometry(m, q), ell).unwrap();
            let adapted = adapt_self_orthogonal(&ht).unwrap();
            for r in 0..adapted.matrix.rows() {
                assert_eq!(adapted.matrix.row_weight(r) % 2, 0);
            }
        }
    }

    #[test]
    fn even_case_rank_is_full() {
        let ht = type2_matrix(&geometry(3, 2), 3).unwrap();
        let adapted = adapt_self_orthogonal(&ht).unwrap();
        assert_eq!(adapted.matrix.rank_gf2(), 7);
    }

    #[test]
    fn code_summary_examples() {
        let s = code_summary(2, 3, 3).unwrap();
        assert_eq!((s.n, s.class_count, s.row_weight), (7, 3, 6));
        assert_eq!(s.parity, ParityCase::Even);
        assert_eq!(s.length, 29);
        assert_eq!(s.d_orth_lower, 3);

        let s = code_summary(2, 2, 1).unwrap();
        assert_eq!((s.n, s.length, s.d_orth_lower), (3, 7, 3));

        let s = code_summary(4, 2, 1).unwrap();
        assert_eq!((s.n, s.class_count, s.row_weight), (15, 1, 4));
        assert_eq!(s.parity, ParityCase::Even);
        assert_eq!(s.length, 31);
    }

    #[test]
    fn code_summary_odd_case_length() {
        let s = code_summary(3, 2, 1).unwrap();
        assert_eq!(s.parity, ParityCase::Odd);
        assert_eq!(s.length, 9);
    }

    #[test]
    fn code_summary_rejects_bad_ell() {
        assert!(code_summary(2, 3, 4).is_err());
        assert!(code_summary(2, 3, 0).is_err());
        assert!(code_summary(6, 2, 1).is_err());
    }

    #[test]
    fn characteristic_vector_examples() {
        assert_eq!(
            characteristic_vector(&[2], 8).unwrap(),
            BinVector::from_bits(&[0, 0, 1, 0, 0, 0, 0, 0])
        );
        assert_eq!(characteristic_vector(&[2, 3, 5], 8).unwrap().weight(), 3);
        assert_eq!(
            characteristic_vector(&[0], 3).unwrap(),
            BinVector::from_bits(&[1, 0, 0])
        );
        assert!(characteristic_vector(&[8], 8).is_err());
        assert!(characteristic_vector(&[], 8).is_err());
    }

    #[test]
    fn characteristic_matrix_is_permutation() {
        let a0 = characteristic_matrix(0, 3).unwrap();
        assert_eq!(a0, BinMatrix::identity(3));
        let a1 = characteristic_matrix(1, 5).unwrap();
        for i in 0..5 {
            assert_eq!(a1.row_weight(i), 1);
            assert_eq!(a1.col_weight(i), 1);
        }
        // A(a^i) * A(a^i)^T = I.
        let prod = a1.mul(&a1.transpose()).unwrap();
        assert_eq!(prod, BinMatrix::identity(5));
    }

    #[test]
    fn characteristic_matrices_compose_additively() {
        let n = 7;
        for i in 0..n {
            for j in 0..n {
                let prod = characteristic_matrix(i, n)
                    .unwrap()
                    .mul(&characteristic_matrix(j, n).unwrap())
                    .unwrap();
                assert_eq!(prod, characteristic_matrix((i + j) % n, n).unwrap());
            }
        }
    }

    #[test]
    fn characteristic_matrix_rows_are_shifted_vectors() {
        let n = 6;
        let i = 2;
        let a = characteristic_matrix(i, n).unwrap();
        for r in 0..n {
            assert_eq!(
                a.row_vec(r),
                characteristic_vector(&[(i + r) % n], n).unwrap()
            );
        }
    }

    #[test]
    fn single_circulant_has_no_four_cycles_and_girth_at_least_six() {
        // Any two columns of one circulant share at most one row, so its
        // Tanner graph is 4-cycle-free.
        let m = type1_matrix(&geometry(2, 4), 1).unwrap();
        let report = m.four_cycles_and_girth();
        assert_eq!(report.four_cycle_total, 0);
        assert!(report.girth.is_none_or(|g| g >= 6));
    }

    #[test]
    fn type1_null_space_distance_bound() {
        // Column weight 6, rows pairwise overlapping at most once: the
        // Type-I null space has distance at least ell*q + 1 = 7; here it is
        // exactly 7 (the all-ones word is a codeword of weight 7).
        let m = type1_matrix(&geometry(3, 2), 3).unwrap();
        assert_eq!(m.min_distance_exhaustive(7), MinDistance::Exact(7));
    }
}

//! CSS stabilizer codes from self-orthogonal parity-check matrices.
//!
//! A self-orthogonal H yields the self-dual CSS pair Hx = Hz = H: X-type
//! generators from the rows read as X-strings, Z-type from the same rows as
//! Z-strings. Pauli strings use the binary symplectic (x|z) representation;
//! the global phase of Y = iXZ is not tracked, since no property in scope
//! depends on it.
//!
//! Both the nominal dimension `N - 2n` (which can be negative when the rows
//! are dependent) and the rank-exact dimension `N - 2*rank(H)` are reported
//! side by side.

use std::fmt;
use std::io::Write;

use crate::binmat::BinMatrix;
use crate::construct::CodeSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct StabilizerCode {
    hx: BinMatrix,
    hz: BinMatrix,
    /// Physical qubits, the column count N.
    pub num_qubits: usize,
    /// Generator rows per block, the row count n.
    pub num_checks: usize,
    /// GF(2) rank of the check matrix.
    pub rank: usize,
    /// N - 2n; negative values are possible and must be flagged by consumers.
    pub k_nominal: i64,
    /// N - 2*rank; never negative for a self-orthogonal block.
    pub k_exact: usize,
    /// Lower bound on the distance (q + 1), when the construction knows one.
    pub d_lower: Option<usize>,
}

impl StabilizerCode {
    pub fn hx(&self) -> &BinMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BinMatrix {
        &self.hz
    }
}

/// Builds the self-dual CSS code for a constructed matrix; `spec` supplies
/// the distance bound q + 1. Rejects matrices that are not self-orthogonal,
/// naming the violating row pair.
pub fn css_from_self_orthogonal(h: &BinMatrix, spec: &CodeSpec) -> Result<StabilizerCode> {
    css_from_matrix(h, Some(spec.d_orth_lower))
}

/// Same construction for matrices of unknown provenance (e.g. loaded from a
/// file), with no distance claim.
pub fn css_from_matrix(h: &BinMatrix, d_lower: Option<usize>) -> Result<StabilizerCode> {
    if let Some((i, j)) = h.first_self_orthogonality_violation() {
        return Err(Error::NotSelfOrthogonal(i, j));
    }
    let num_qubits = h.cols();
    let num_checks = h.rows();
    let rank = h.rank_gf2();
    Ok(StabilizerCode {
        hx: h.clone(),
        hz: h.clone(),
        num_qubits,
        num_checks,
        rank,
        k_nominal: num_qubits as i64 - 2 * num_checks as i64,
        k_exact: num_qubits - 2 * rank,
        d_lower,
    })
}

/// True iff every X-type generator commutes with every Z-type generator,
/// i.e. `Hx * Hz^T = 0` over GF(2). Generators within one block commute
/// trivially. For the self-dual case this is `H * H^T = 0`.
pub fn symplectic_commutes(hx: &BinMatrix, hz: &BinMatrix) -> bool {
    first_anticommuting_pair(hx, hz).is_none()
}

/// First `(i, j)` such that X-generator `i` and Z-generator `j` anticommute.
pub fn first_anticommuting_pair(hx: &BinMatrix, hz: &BinMatrix) -> Option<(usize, usize)> {
    for i in 0..hx.rows() {
        let xi = hx.row_vec(i);
        for j in 0..hz.rows() {
            if xi.parity_overlap(&hz.row_vec(j)) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn check_commutation(code: &StabilizerCode) -> bool {
    symplectic_commutes(&code.hx, &code.hz)
}

/// Exhaustive quantum distance: the minimum weight over null-space words
/// that are not stabilizers (row-space members). Only attempted up to
/// `max_qubits` physical qubits; larger codes get `None` rather than a
/// synthesized claim.
pub fn quantum_distance_exhaustive(code: &StabilizerCode, max_qubits: usize) -> Option<usize> {
    if code.num_qubits > max_qubits {
        return None;
    }
    let h = &code.hx;
    let null_basis = h.null_space_basis();
    let row_basis = crate::binmat::RowBasis::new(h);
    let mut best: Option<usize> = None;
    let k = null_basis.len();
    let mut current = crate::binmat::BinVector::zeros(h.cols());
    for gray in 1u64..(1u64 << k) {
        current.xor_assign(&null_basis[gray.trailing_zeros() as usize]);
        if !row_basis.contains(&current) {
            let w = current.weight();
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Z,
    Y,
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Z => 'Z',
            Pauli::Y => 'Y',
        };
        write!(f, "{c}")
    }
}

/// A Pauli operator on `num_qubits` qubits, phase-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliString(pub Vec<Pauli>);

impl PauliString {
    /// Builds the string from its binary symplectic components.
    pub fn from_xz(x_bits: &crate::binmat::BinVector, z_bits: &crate::binmat::BinVector) -> Self {
        assert_eq!(x_bits.len(), z_bits.len());
        PauliString(
            (0..x_bits.len())
                .map(|i| match (x_bits.get(i), z_bits.get(i)) {
                    (false, false) => Pauli::I,
                    (true, false) => Pauli::X,
                    (false, true) => Pauli::Z,
                    (true, true) => Pauli::Y,
                })
                .collect(),
        )
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|p| **p != Pauli::I).count()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// The stabilizer generators as Pauli strings: one X-string per row of Hx,
/// then one Z-string per row of Hz.
pub fn export_stabilizer(code: &StabilizerCode) -> Vec<PauliString> {
    let zeros = crate::binmat::BinVector::zeros(code.num_qubits);
    let mut out = Vec::with_capacity(2 * code.num_checks);
    for r in 0..code.hx.rows() {
        out.push(PauliString::from_xz(&code.hx.row_vec(r), &zeros));
    }
    for r in 0..code.hz.rows() {
        out.push(PauliString::from_xz(&zeros, &code.hz.row_vec(r)));
    }
    out
}

/// Plain-text export: one generator per line, prefixed with its index.
pub fn write_stabilizer_text<W: Write>(code: &StabilizerCode, mut w: W) -> std::io::Result<()> {
    for (i, s) in export_stabilizer(code).iter().enumerate() {
        writeln!(w, "{i} {s}")?;
    }
    Ok(())
}

//! Syndrome-based sum-product decoding and CSS error classification.
//!
//! The decoder runs the textbook sum-product algorithm with a flooding
//! schedule on the Tanner graph of a parity-check matrix, adjusted for
//! syndrome decoding: a check node with syndrome bit 1 negates the sign of
//! its outgoing messages. Knobs are fully pinned for reproducibility:
//! messages and posteriors saturate at `±LLR_SATURATION`, damping blends a
//! fraction of the previous check message into the new one, and iteration
//! stops as soon as the hard decision reproduces the target syndrome.
//!
//! Damping defaults to 0.5 rather than off. The matrices built here carry an
//! all-ones column, and an error there lights up every check at once; with
//! undamped flooding, the first iteration's messages (magnitude about
//! `prior - ln(deg-1)`) flip every weight-2 variable simultaneously, and that
//! transient happens to satisfy the syndrome, so early stopping would return
//! a maximally wrong estimate. At damping 0.5 the same posterior works out
//! to `ln(deg-1) > 0` for a weight-2 variable regardless of the prior, so
//! the transient cannot form.
//!
//! CSS decoding treats the X and Z error components as two independent
//! binary channels with marginal flip probability 2p/3 under depolarizing
//! noise; the correlation introduced by Y errors is deliberately ignored.

use serde::{Deserialize, Serialize};

use crate::binmat::{BinMatrix, BinVector, RowBasis};
use crate::error::{Error, Result};
use crate::quantum::StabilizerCode;

/// Cap on message and posterior magnitudes, in LLR units. Also the prior
/// assigned to a noiseless channel.
pub const LLR_SATURATION: f64 = 25.0;

pub const DEFAULT_MAX_ITER: usize = 50;

/// Fraction of the previous check message blended into the new one. See the
/// module docs for why 0.5 is the default instead of 0.
pub const DEFAULT_DAMPING: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    Bsc,
    Depolarizing,
}

impl std::fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChannelKind::Bsc => write!(f, "bsc"),
            ChannelKind::Depolarizing => write!(f, "depolarizing"),
        }
    }
}

/// A memoryless channel: BSC with flip probability p, or the depolarizing
/// channel with total error probability p split evenly over X, Y, Z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub kind: ChannelKind,
    pub p: f64,
}

impl ChannelModel {
    pub fn new(kind: ChannelKind, p: f64) -> Result<Self> {
        let max = match kind {
            ChannelKind::Bsc => 0.5,
            // The per-component marginal 2p/3 must stay below 1/2.
            ChannelKind::Depolarizing => 0.75,
        };
        if !(0.0..max).contains(&p) {
            return Err(Error::ChannelOutOfRange {
                p,
                kind: kind.to_string(),
                max,
            });
        }
        Ok(ChannelModel { kind, p })
    }

    /// Per-bit flip probability of one binary component: p for the BSC,
    /// 2p/3 for depolarizing (an X error on a component comes from X or Y,
    /// each with probability p/3; likewise for Z).
    pub fn marginal_flip_prob(&self) -> f64 {
        match self.kind {
            ChannelKind::Bsc => self.p,
            ChannelKind::Depolarizing => 2.0 * self.p / 3.0,
        }
    }

    /// Prior log-likelihood ratio ln((1-pi)/pi) of "no flip", saturated at
    /// [`LLR_SATURATION`]; p = 0 maps to the saturation constant.
    pub fn prior_llr(&self) -> f64 {
        let pi = self.marginal_flip_prob();
        if pi <= 0.0 {
            return LLR_SATURATION;
        }
        ((1.0 - pi) / pi).ln().clamp(-LLR_SATURATION, LLR_SATURATION)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub estimate: BinVector,
    pub converged: bool,
    /// Iterations executed before the syndrome was met; 0 when the initial
    /// hard decision already satisfies it.
    pub iterations: usize,
}

/// Reusable Tanner-graph structure for one parity-check matrix. Decoding
/// keeps all per-call state on the stack of the call, so one decoder can
/// serve any number of concurrent decodes.
#[derive(Debug, Clone)]
pub struct SyndromeBpDecoder {
    rows: usize,
    cols: usize,
    /// Variables adjacent to each check, with each variable's slot index in
    /// its own adjacency list.
    check_vars: Vec<Vec<(u32, u32)>>,
    /// Checks adjacent to each variable, with each check's slot index.
    var_checks: Vec<Vec<(u32, u32)>>,
}

impl SyndromeBpDecoder {
    pub fn new(h: &BinMatrix) -> Self {
        let rows = h.rows();
        let cols = h.cols();
        let mut check_vars: Vec<Vec<(u32, u32)>> = vec![Vec::new(); rows];
        let mut var_checks: Vec<Vec<(u32, u32)>> = vec![Vec::new(); cols];
        for r in 0..rows {
            for c in h.row_support(r) {
                check_vars[r].push((c as u32, var_checks[c].len() as u32));
                var_checks[c].push((r as u32, (check_vars[r].len() - 1) as u32));
            }
        }
        SyndromeBpDecoder {
            rows,
            cols,
            check_vars,
            var_checks,
        }
    }

    pub fn num_checks(&self) -> usize {
        self.rows
    }

    pub fn num_vars(&self) -> usize {
        self.cols
    }

    fn syndrome_satisfied(&self, estimate: &BinVector, syndrome: &BinVector) -> bool {
        for (r, vars) in self.check_vars.iter().enumerate() {
            let mut parity = false;
            for &(v, _) in vars {
                parity ^= estimate.get(v as usize);
            }
            if parity != syndrome.get(r) {
                return false;
            }
        }
        true
    }

    /// Sum-product decoding toward the target syndrome. `priors` holds the
    /// per-variable prior LLR (positive favors 0). Deterministic for fixed
    /// inputs.
    pub fn decode(
        &self,
        syndrome: &BinVector,
        priors: &[f64],
        max_iter: usize,
        damping: f64,
    ) -> Result<DecodeResult> {
        if syndrome.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "syndrome length {} but matrix has {} rows",
                syndrome.len(),
                self.rows
            )));
        }
        if priors.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{} priors but matrix has {} columns",
                priors.len(),
                self.cols
            )));
        }

        let mut estimate = BinVector::zeros(self.cols);
        for (v, &llr) in priors.iter().enumerate() {
            if llr < 0.0 {
                estimate.set(v, true);
            }
        }
        if self.syndrome_satisfied(&estimate, syndrome) {
            return Ok(DecodeResult {
                estimate,
                converged: true,
                iterations: 0,
            });
        }

        // Messages indexed per edge: var_to_check by [check][slot],
        // check_to_var by [var][slot].
        let mut var_to_check: Vec<Vec<f64>> = self
            .check_vars
            .iter()
            .map(|vars| vars.iter().map(|&(v, _)| priors[v as usize]).collect())
            .collect();
        let mut check_to_var: Vec<Vec<f64>> = self
            .var_checks
            .iter()
            .map(|checks| vec![0.0; checks.len()])
            .collect();
        let mut scratch: Vec<f64> = Vec::new();

        for iteration in 1..=max_iter {
            // Check update: product of tanh(m/2) over all other inputs, sign
            // negated by an unsatisfied syndrome bit.
            for (c, vars) in self.check_vars.iter().enumerate() {
                let inputs = &var_to_check[c];
                let deg = inputs.len();
                scratch.clear();
                scratch.resize(2 * (deg + 1), 1.0);
                let (prefix, suffix) = scratch.split_at_mut(deg + 1);
                for k in 0..deg {
                    prefix[k + 1] = prefix[k] * (0.5 * inputs[k]).tanh();
                }
                for k in (0..deg).rev() {
                    suffix[k] = suffix[k + 1] * (0.5 * inputs[k]).tanh();
                }
                let sign = if syndrome.get(c) { -1.0 } else { 1.0 };
                for (k, &(v, slot)) in vars.iter().enumerate() {
                    let product = (prefix[k] * suffix[k + 1]).clamp(-MAX_TANH, MAX_TANH);
                    let msg = (sign * 2.0 * product.atanh())
                        .clamp(-LLR_SATURATION, LLR_SATURATION);
                    let old = check_to_var[v as usize][slot as usize];
                    check_to_var[v as usize][slot as usize] =
                        (1.0 - damping) * msg + damping * old;
                }
            }

            // Variable update and hard decision.
            for (v, checks) in self.var_checks.iter().enumerate() {
                let inputs = &check_to_var[v];
                let total: f64 = priors[v] + inputs.iter().sum::<f64>();
                estimate.set(v, total < 0.0);
                for (k, &(c, slot)) in checks.iter().enumerate() {
                    var_to_check[c as usize][slot as usize] =
                        (total - inputs[k]).clamp(-LLR_SATURATION, LLR_SATURATION);
                }
            }

            if self.syndrome_satisfied(&estimate, syndrome) {
                return Ok(DecodeResult {
                    estimate,
                    converged: true,
                    iterations: iteration,
                });
            }
        }

        Ok(DecodeResult {
            estimate,
            converged: false,
            iterations: max_iter,
        })
    }
}

/// Keeps atanh finite when every other input to a check has saturated.
const MAX_TANH: f64 = 1.0 - 1e-12;

/// One-shot convenience wrapper around [`SyndromeBpDecoder`].
pub fn bp_syndrome_decode(
    h: &BinMatrix,
    syndrome: &BinVector,
    priors: &[f64],
    max_iter: usize,
    damping: f64,
) -> Result<DecodeResult> {
    SyndromeBpDecoder::new(h).decode(syndrome, priors, max_iter, damping)
}

/// Two independent syndrome decoders for a CSS code, one per error
/// component.
#[derive(Debug, Clone)]
pub struct CssDecoder {
    /// Decodes the X error component from the Z-type measurement syndrome.
    x_decoder: SyndromeBpDecoder,
    /// Decodes the Z error component from the X-type measurement syndrome.
    z_decoder: SyndromeBpDecoder,
    num_qubits: usize,
}

impl CssDecoder {
    pub fn new(code: &StabilizerCode) -> Self {
        CssDecoder {
            x_decoder: SyndromeBpDecoder::new(code.hz()),
            z_decoder: SyndromeBpDecoder::new(code.hx()),
            num_qubits: code.num_qubits,
        }
    }

    /// Decodes both components. `syndrome_x` holds the X-type generator
    /// outcomes (sensitive to Z errors), `syndrome_z` the Z-type outcomes
    /// (sensitive to X errors). Returns the X-component result first.
    pub fn decode(
        &self,
        syndrome_x: &BinVector,
        syndrome_z: &BinVector,
        ch: &ChannelModel,
        max_iter: usize,
        damping: f64,
    ) -> Result<(DecodeResult, DecodeResult)> {
        let priors = vec![ch.prior_llr(); self.num_qubits];
        let x_hat = self.x_decoder.decode(syndrome_z, &priors, max_iter, damping)?;
        let z_hat = self.z_decoder.decode(syndrome_x, &priors, max_iter, damping)?;
        Ok((x_hat, z_hat))
    }
}

/// CSS decoding with default damping; see [`CssDecoder::decode`] for the
/// syndrome conventions.
pub fn css_decode(
    code: &StabilizerCode,
    syndrome_x: &BinVector,
    syndrome_z: &BinVector,
    ch: &ChannelModel,
    max_iter: usize,
) -> Result<(DecodeResult, DecodeResult)> {
    CssDecoder::new(code).decode(syndrome_x, syndrome_z, ch, max_iter, DEFAULT_DAMPING)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualClass {
    /// Estimate equals the actual error.
    Exact,
    /// The residual is a row-space element, i.e. a stabilizer: physically
    /// harmless.
    DegenerateSuccess,
    LogicalFailure,
}

/// Classifies `actual xor estimate` against the row space of `h`.
pub fn classify_residual(
    actual: &BinVector,
    estimate: &BinVector,
    h: &BinMatrix,
) -> Result<ResidualClass> {
    classify_residual_with_basis(actual, estimate, &RowBasis::new(h))
}

/// Same classification against a precomputed row basis (the hot path for
/// simulations).
pub fn classify_residual_with_basis(
    actual: &BinVector,
    estimate: &BinVector,
    basis: &RowBasis,
) -> Result<ResidualClass> {
    if actual.len() != estimate.len() || actual.len() != basis.cols() {
        return Err(Error::DimensionMismatch(format!(
            "classify_residual over lengths {} and {} against width {}",
            actual.len(),
            estimate.len(),
            basis.cols()
        )));
    }
    let mut residual = actual.clone();
    residual.xor_assign(estimate);
    if residual.is_zero() {
        Ok(ResidualClass::Exact)
    } else if basis.contains(&residual) {
        Ok(ResidualClass::DegenerateSuccess)
    } else {
        Ok(ResidualClass::LogicalFailure)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{adapt_self_orthogonal, code_summary, type2_matrix};
    use crate::geometry::Geometry;
    use crate::quantum::css_from_self_orthogonal;

    fn eg32_code() -> StabilizerCode {
        let g = Geometry::new(3, 2).unwrap();
        let adapted = adapt_self_orthogonal(&type2_matrix(&g, 3).unwrap()).unwrap();
        css_from_self_orthogonal(&adapted.matrix, &code_summary(2, 3, 3).unwrap()).unwrap()
    }

    #[test]
    fn channel_priors() {
        let ch = ChannelModel::new(ChannelKind::Bsc, 0.0).unwrap();
        assert_eq!(ch.prior_llr(), LLR_SATURATION);
        let ch = ChannelModel::new(ChannelKind::Depolarizing, 0.03).unwrap();
        assert!((ch.marginal_flip_prob() - 0.02).abs() < 1e-15);
        assert!(ChannelModel::new(ChannelKind::Bsc, 0.5).is_err());
        assert!(ChannelModel::new(ChannelKind::Depolarizing, 0.75).is_err());
        assert!(ChannelModel::new(ChannelKind::Bsc, -0.1).is_err());
    }

    #[test]
    fn zero_syndrome_decodes_to_zero_without_iterating() {
        let code = eg32_code();
        let ch = ChannelModel::new(ChannelKind::Depolarizing, 0.01).unwrap();
        let priors = vec![ch.prior_llr(); 29];
        let result = bp_syndrome_decode(
            code.hx(),
            &BinVector::zeros(7),
            &priors,
            DEFAULT_MAX_ITER,
            0.0,
        )
        .unwrap();
        assert!(result.converged);
        assert_eq!(result.iterations, 0);
        assert!(result.estimate.is_zero());
    }

    #[test]
    fn weight_one_syndromes_decode_exactly() {
        // All 29 columns are distinct and nonzero, so every weight-1 error
        // has a unique weight-1 explanation; the decoder must find it.
        let code = eg32_code();
        let h = code.hx();
        let ch = ChannelModel::new(ChannelKind::Depolarizing, 0.01).unwrap();
        let priors = vec![ch.prior_llr(); h.cols()];
        for j in 0..h.cols() {
            let error = BinVector::from_support(h.cols(), &[j]);
            let syndrome = h.mul_vector(&error).unwrap();
            let result =
                bp_syndrome_decode(h, &syndrome, &priors, DEFAULT_MAX_ITER, DEFAULT_DAMPING)
                    .unwrap();
            assert!(result.converged, "coordinate {j} did not converge");
            assert_eq!(result.estimate, error, "coordinate {j} misdecoded");
        }
    }

    #[test]
    fn undamped_flooding_misdecodes_the_all_ones_column() {
        // The pathology the damping default guards against: an error on the
        // all-ones column makes every check unsatisfied, and the undamped
        // first iteration flips all 21 weight-2 variables plus the ones
        // column, which also satisfies the syndrome.
        let code = eg32_code();
        let h = code.hx();
        let priors =
            vec![ChannelModel::new(ChannelKind::Depolarizing, 0.01).unwrap().prior_llr(); 29];
        let error = BinVector::from_support(29, &[21]);
        let syndrome = h.mul_vector(&error).unwrap();
        let undamped = bp_syndrome_decode(h, &syndrome, &priors, DEFAULT_MAX_ITER, 0.0).unwrap();
        assert!(undamped.converged);
        assert_eq!(undamped.estimate.weight(), 22);
        let damped =
            bp_syndrome_decode(h, &syndrome, &priors, DEFAULT_MAX_ITER, DEFAULT_DAMPING).unwrap();
        assert_eq!(damped.estimate, error);
    }

    #[test]
    fn weight_one_syndromes_decode_exactly_on_the_small_code() {
        let g = Geometry::new(2, 2).unwrap();
        let adapted = adapt_self_orthogonal(&type2_matrix(&g, 1).unwrap()).unwrap();
        let h = &adapted.matrix;
        let priors =
            vec![ChannelModel::new(ChannelKind::Depolarizing, 0.01).unwrap().prior_llr(); 7];
        for j in 0..7 {
            let error = BinVector::from_support(7, &[j]);
            let syndrome = h.mul_vector(&error).unwrap();
            let result =
                bp_syndrome_decode(h, &syndrome, &priors, DEFAULT_MAX_ITER, DEFAULT_DAMPING)
                    .unwrap();
            assert!(result.converged);
            assert_eq!(result.estimate, error, "coordinate {j}");
        }
    }

    #[test]
    fn toy_case1_matrix_corrects_single_errors() {
        let ht = BinMatrix::from_bit_rows(&[
            &[1, 1, 0, 0],
            &[1, 0, 1, 0],
            &[1, 0, 0, 1],
            &[0, 1, 1, 0],
            &[0, 1, 0, 1],
            &[0, 0, 1, 1],
        ])
        .transpose();
        let adapted = adapt_self_orthogonal(&ht).unwrap();
        let h = &adapted.matrix;
        let priors = vec![ChannelModel::new(ChannelKind::Bsc, 0.01).unwrap().prior_llr(); 7];
        for j in 0..7 {
            let error = BinVector::from_support(7, &[j]);
            let syndrome = h.mul_vector(&error).unwrap();
            let result =
                bp_syndrome_decode(h, &syndrome, &priors, DEFAULT_MAX_ITER, DEFAULT_DAMPING)
                    .unwrap();
            assert!(result.converged);
            assert_eq!(result.estimate, error);
        }
    }

    #[test]
    fn converged_estimates_satisfy_the_syndrome() {
        let code = eg32_code();
        let h = code.hx();
        let priors =
            vec![ChannelModel::new(ChannelKind::Depolarizing, 0.05).unwrap().prior_llr(); 29];
        // Deterministic error patterns of growing weight, under both the
        // default and the undamped setting.
        for damping in [DEFAULT_DAMPING, 0.0] {
            for seed in 0..40usize {
                let support: Vec<usize> =
                    (0..29).filter(|i| (seed * 7 + i * 13) % 11 < 2).collect();
                let error = BinVector::from_support(29, &support);
                let syndrome = h.mul_vector(&error).unwrap();
                let result =
                    bp_syndrome_decode(h, &syndrome, &priors, DEFAULT_MAX_ITER, damping).unwrap();
                if result.converged {
                    assert_eq!(h.mul_vector(&result.estimate).unwrap(), syndrome);
                }
            }
        }
    }

    #[test]
    fn bp_is_exact_on_the_cycle_free_identity_graph() {
        // Each variable sits in exactly one check: BP on a tree reproduces
        // the bitwise maximum-likelihood decision, which is the syndrome
        // itself.
        let h = BinMatrix::identity(6);
        let priors = vec![2.0; 6];
        let syndrome = BinVector::from_bits(&[1, 0, 1, 1, 0, 0]);
        let result = bp_syndrome_decode(&h, &syndrome, &priors, 5, 0.0).unwrap();
        assert!(result.converged);
        assert_eq!(result.estimate, syndrome);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let h = BinMatrix::identity(4);
        let priors = vec![1.0; 4];
        assert!(bp_syndrome_decode(&h, &BinVector::zeros(3), &priors, 5, 0.0).is_err());
        assert!(bp_syndrome_decode(&h, &BinVector::zeros(4), &[1.0; 3], 5, 0.0).is_err());
    }

    #[test]
    fn css_decode_single_x_error() {
        let code = eg32_code();
        let ch = ChannelModel::new(ChannelKind::Depolarizing, 0.01).unwrap();
        let error_x = BinVector::from_support(29, &[4]);
        let syndrome_z = code.hz().mul_vector(&error_x).unwrap();
        let (x_hat, z_hat) = css_decode(
            &code,
            &BinVector::zeros(7),
            &syndrome_z,
            &ch,
            DEFAULT_MAX_ITER,
        )
        .unwrap();
        assert_eq!(x_hat.estimate, error_x);
        assert!(z_hat.estimate.is_zero());
    }

    #[test]
    fn css_decode_single_y_error() {
        // A Y error is a coincident X and Z flip; both components recover
        // the same coordinate.
        let code = eg32_code();
        let ch = ChannelModel::new(ChannelKind::Depolarizing, 0.01).unwrap();
        let coord = 11;
        let component = BinVector::from_support(29, &[coord]);
        let syndrome_z = code.hz().mul_vector(&component).unwrap();
        let syndrome_x = code.hx().mul_vector(&component).unwrap();
        let (x_hat, z_hat) =
            css_decode(&code, &syndrome_x, &syndrome_z, &ch, DEFAULT_MAX_ITER).unwrap();
        assert_eq!(x_hat.estimate, component);
        assert_eq!(z_hat.estimate, component);
    }

    #[test]
    fn css_decode_zero_syndromes() {
        let code = eg32_code();
        let ch = ChannelModel::new(ChannelKind::Depolarizing, 0.02).unwrap();
        let (x_hat, z_hat) = css_decode(
            &code,
            &BinVector::zeros(7),
            &BinVector::zeros(7),
            &ch,
            DEFAULT_MAX_ITER,
        )
        .unwrap();
        assert!(x_hat.estimate.is_zero() && z_hat.estimate.is_zero());
    }

    #[test]
    fn classify_exact_and_degenerate() {
        let code = eg32_code();
        let h = code.hx();
        let actual = BinVector::from_support(29, &[3]);
        assert_eq!(
            classify_residual(&actual, &actual, h).unwrap(),
            ResidualClass::Exact
        );
        let mut estimate = actual.clone();
        estimate.xor_assign(&h.row_vec(0));
        assert_eq!(
            classify_residual(&actual, &estimate, h).unwrap(),
            ResidualClass::DegenerateSuccess
        );
    }

    #[test]
    fn classify_logical_failure_on_eg22() {
        // The weight-3 null-space word on the first three columns is not in
        // the rank-3 row space, so missing it entirely is a logical failure.
        let g = Geometry::new(2, 2).unwrap();
        let adapted = adapt_self_orthogonal(&type2_matrix(&g, 1).unwrap()).unwrap();
        let h = &adapted.matrix;
        let codeword = BinVector::from_support(7, &[0, 1, 2]);
        assert!(h.mul_vector(&codeword).unwrap().is_zero());
        assert_eq!(
            classify_residual(&codeword, &BinVector::zeros(7), h).unwrap(),
            ResidualClass::LogicalFailure
        );
    }

    #[test]
    fn classify_length_mismatch_rejected() {
        let h = BinMatrix::identity(3);
        assert!(classify_residual(&BinVector::zeros(3), &BinVector::zeros(2), &h).is_err());
    }
}

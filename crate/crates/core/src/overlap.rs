//! Similarity of two test patterns through the shared meaning space.
//!
//! Both tests are represented over the same encoded memory, giving
//! post-selected states with real weights `w_i(j) = cos(d_H(p_j, x_i)·π/2n)`.
//! The overlap is their normalized inner product; `fidelity_sq` is its
//! square, which is what a SWAP test measures.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bits::BitPattern;
use crate::encoder::encode;
use crate::error::{Error, Result};
use crate::hamming::{classical_weights, csv_field, represent, TestPattern};
use crate::patterns::PatternSet;
use crate::sim::{Register, StateVector};
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OverlapMethod {
    Analytic,
    SwapTest,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapResult {
    /// `|⟨ψ₀|ψ₁⟩|`.
    pub overlap: f64,
    /// `|⟨ψ₀|ψ₁⟩|²`.
    pub fidelity_sq: f64,
    pub method: OverlapMethod,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    /// SWAP-test ancilla `P(0)`: exact, and as estimated from the shots.
    pub ancilla_zero_probability: Option<f64>,
    pub ancilla_zero_estimate: Option<f64>,
}

fn check_width(patterns: &PatternSet, x: TestPattern) -> Result<()> {
    if x.width() != patterns.width() {
        return Err(Error::WidthMismatch {
            expected: patterns.width(),
            found: x.width(),
        });
    }
    Ok(())
}

/// Closed-form overlap from the classical weights.
pub fn analytic_overlap(
    patterns: &PatternSet,
    x0: TestPattern,
    x1: TestPattern,
) -> Result<OverlapResult> {
    check_width(patterns, x0)?;
    check_width(patterns, x1)?;
    let w0 = classical_weights(patterns, x0)?;
    let w1 = classical_weights(patterns, x1)?;
    let k = patterns.len() as f64;
    let n0: f64 = w0.iter().map(|w| w * w).sum();
    let n1: f64 = w1.iter().map(|w| w * w).sum();
    for norm in [n0, n1] {
        if norm / k < tolerance::POST_SELECT {
            return Err(Error::ZeroNorm {
                probability: norm / k,
            });
        }
    }
    let dot: f64 = w0.iter().zip(&w1).map(|(a, b)| a * b).sum();
    let overlap = (dot / (n0 * n1).sqrt()).abs().min(1.0);
    Ok(OverlapResult {
        overlap,
        fidelity_sq: overlap * overlap,
        method: OverlapMethod::Analytic,
        shots: None,
        seed: None,
        ancilla_zero_probability: None,
        ancilla_zero_estimate: None,
    })
}

/// Runs encode → represent → post-select for `x` and returns the memory
/// register's state.
fn prepare_memory_state(patterns: &PatternSet, x: TestPattern) -> Result<Vec<Complex64>> {
    let memory = encode(patterns)?;
    Ok(represent(&memory, x)?.memory_amplitudes())
}

/// Builds `|ψ₀⟩_A ⊗ |ψ₁⟩_B ⊗ |0⟩_anc` and runs the SWAP-test circuit
/// (H, controlled swaps, H) on it. Register A holds qubits `0..n`, B holds
/// `n..2n`, the ancilla is qubit `2n`.
pub fn swap_test_circuit(psi0: &[Complex64], psi1: &[Complex64]) -> Result<StateVector> {
    if psi0.len() != psi1.len() || !psi0.len().is_power_of_two() || psi0.len() < 2 {
        return Err(Error::InvalidParameter(
            "SWAP test needs two registers of equal power-of-two size".into(),
        ));
    }
    let n = psi0.len().trailing_zeros() as usize;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << (2 * n + 1)];
    for (b, vb) in psi1.iter().enumerate() {
        for (a, va) in psi0.iter().enumerate() {
            amps[(b << n) | a] = va * vb;
        }
    }
    let mut state = StateVector::from_amplitudes(amps)?;
    let ancilla = 2 * n;
    state.apply_h(ancilla)?;
    for j in 0..n {
        // Fredkin(ancilla; A_j, B_j) = CX(B→A) · Toffoli(anc, A → B) · CX(B→A).
        state.apply_cx(n + j, j)?;
        state.apply_toffoli(ancilla, j, n + j)?;
        state.apply_cx(n + j, j)?;
    }
    state.apply_h(ancilla)?;
    Ok(state)
}

/// Estimates the overlap from `shots` SWAP-test measurements:
/// `P(0) = (1 + |⟨ψ₀|ψ₁⟩|²)/2`.
pub fn swap_test_overlap(
    patterns: &PatternSet,
    x0: TestPattern,
    x1: TestPattern,
    shots: u64,
    seed: u64,
) -> Result<OverlapResult> {
    if shots == 0 {
        return Err(Error::InvalidParameter("shots must be at least 1".into()));
    }
    check_width(patterns, x0)?;
    check_width(patterns, x1)?;
    let psi0 = prepare_memory_state(patterns, x0)?;
    let psi1 = prepare_memory_state(patterns, x1)?;
    let state = swap_test_circuit(&psi0, &psi1)?;
    let ancilla = Register {
        offset: 2 * patterns.width(),
        width: 1,
    };
    let exact = state.probability(ancilla.offset, false)?;
    let hist = state.sample_register(ancilla, shots, seed)?;
    let p0 = hist.count(0) as f64 / shots as f64;
    let fidelity_sq = (2.0 * p0 - 1.0).max(0.0);
    Ok(OverlapResult {
        overlap: fidelity_sq.sqrt(),
        fidelity_sq,
        method: OverlapMethod::SwapTest,
        shots: Some(shots),
        seed: Some(seed),
        ancilla_zero_probability: Some(exact),
        ancilla_zero_estimate: Some(p0),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankedOverlap {
    pub label: Option<String>,
    pub pattern: BitPattern,
    pub result: OverlapResult,
}

pub const RANKED_CSV_HEADER: &str = "label,pattern,overlap,fidelity_sq,method";

/// Compares `reference` against each candidate and sorts by descending
/// overlap (ties by pattern value). `shots = None` uses the analytic route;
/// SWAP-test runs use `seed + i` for the i-th candidate.
pub fn rank_candidates(
    patterns: &PatternSet,
    reference: TestPattern,
    candidates: &[(Option<String>, BitPattern)],
    shots: Option<u64>,
    seed: u64,
) -> Result<Vec<RankedOverlap>> {
    let mut out = candidates
        .iter()
        .enumerate()
        .map(|(i, (label, p))| {
            let result = match shots {
                None => analytic_overlap(patterns, reference, *p)?,
                Some(s) => {
                    swap_test_overlap(patterns, reference, *p, s, seed.wrapping_add(i as u64))?
                }
            };
            Ok(RankedOverlap {
                label: label.clone(),
                pattern: *p,
                result,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| {
        b.result
            .overlap
            .total_cmp(&a.result.overlap)
            .then(a.pattern.cmp(&b.pattern))
    });
    Ok(out)
}

pub fn ranked_csv(rows: &[RankedOverlap]) -> String {
    let mut out = String::from(RANKED_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let method = match r.result.method {
            OverlapMethod::Analytic => "analytic",
            OverlapMethod::SwapTest => "swap-test",
        };
        let _ = writeln!(
            out,
            "{},{},{:.6},{:.6},{}",
            csv_field(r.label.as_deref().unwrap_or("")),
            r.pattern,
            r.result.overlap,
            r.result.fidelity_sq,
            method
        );
    }
    out
}

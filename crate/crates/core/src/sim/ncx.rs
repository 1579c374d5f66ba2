//! Multi-controlled X from Toffolis, borrowing idle qubits as scratch.

use super::{Matrix2, StateVector};
use crate::error::{Error, Result};

impl StateVector {
    /// Flips `target` when every control is set.
    ///
    /// Up to two controls map straight onto X, CX or a Toffoli. For `k ≥ 3`
    /// controls the gate is built from `4(k-2)` Toffolis over `k-2` scratch
    /// qubits. The scratch qubits may hold any state (they need not be
    /// `|0⟩`) and are returned to it afterwards.
    pub fn apply_ncx(
        &mut self,
        controls: &[usize],
        target: usize,
        scratch: &[usize],
    ) -> Result<()> {
        let k = controls.len();
        let needed = k.saturating_sub(2);
        if scratch.len() < needed {
            return Err(Error::InsufficientScratch {
                controls: k,
                needed,
                available: scratch.len(),
            });
        }
        let scratch = &scratch[..needed];
        let mut seen: Vec<usize> = controls.to_vec();
        seen.push(target);
        seen.extend_from_slice(scratch);
        for (i, &q) in seen.iter().enumerate() {
            if q >= self.num_qubits() {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits: self.num_qubits(),
                });
            }
            if seen[..i].contains(&q) {
                return Err(Error::OverlappingQubits(q));
            }
        }

        match k {
            0 => self.apply_controlled_u(&[], target, &Matrix2::pauli_x()),
            1 => self.apply_cx(controls[0], target),
            2 => self.apply_toffoli(controls[0], controls[1], target),
            _ => {
                // c_i = controls[i-1], s_i = scratch[i-1] in the usual 1-based
                // labelling; ladder(i) is Toffoli(c_{i+2}, s_i → s_{i+1}).
                let ladder = |sv: &mut StateVector, i: usize| {
                    sv.apply_toffoli(controls[i + 1], scratch[i - 1], scratch[i])
                };
                let top = |sv: &mut StateVector| {
                    sv.apply_toffoli(controls[k - 1], scratch[k - 3], target)
                };
                let base =
                    |sv: &mut StateVector| sv.apply_toffoli(controls[0], controls[1], scratch[0]);
                let sweep = |sv: &mut StateVector| -> Result<()> {
                    for i in (1..k - 2).rev() {
                        ladder(sv, i)?;
                    }
                    base(sv)?;
                    for i in 1..k - 2 {
                        ladder(sv, i)?;
                    }
                    Ok(())
                };
                top(self)?;
                sweep(self)?;
                top(self)?;
                sweep(self)
            }
        }
    }
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Gate tally under a fixed decomposition into one-qubit gates
/// (X, Ry, H, arbitrary U) and singly-controlled two-qubit gates
/// (CX, CRy, controlled-V).
///
/// A gate with `k ≥ 1` positive controls costs `2·3^(k-1) − 1` two-qubit
/// calls: `C^kU = CV·C^(k-1)X·CV†·C^(k-1)X·C^(k-1)V` with `V² = U`, so two
/// controls give the usual five-gate Toffoli. Each negative-polarity control
/// adds an X before and after. `apply_ncx` with scratch is tallied through
/// the Toffolis it actually issues.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounter {
    pub one_qubit_calls: u64,
    pub two_qubit_calls: u64,
    /// Native invocations keyed by gate name, e.g. `x`, `ry`, `c2-u`.
    pub native: BTreeMap<String, u64>,
}

impl GateCounter {
    pub fn two_qubit_cost(controls: usize) -> u64 {
        match controls {
            0 => 0,
            k => 2 * 3u64.pow(k as u32 - 1) - 1,
        }
    }

    pub(crate) fn record_single(&mut self, name: &str) {
        self.one_qubit_calls += 1;
        *self.native.entry(name.to_string()).or_default() += 1;
    }

    pub(crate) fn record_controlled(
        &mut self,
        controls: usize,
        negative: usize,
        target_is_x: bool,
    ) {
        self.one_qubit_calls += 2 * negative as u64;
        self.two_qubit_calls += Self::two_qubit_cost(controls);
        let name = format!("c{controls}-{}", if target_is_x { "x" } else { "u" });
        *self.native.entry(name).or_default() += 1;
    }

    pub fn total(&self) -> u64 {
        self.one_qubit_calls + self.two_qubit_calls
    }

    /// Structured text report (TOML).
    pub fn to_report(&self) -> String {
        toml::to_string(self).expect("gate counter serializes")
    }
}

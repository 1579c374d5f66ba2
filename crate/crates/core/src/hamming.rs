//! Weights an encoded memory by Hamming distance to a test pattern.
//!
//! For every bit position a doubly-controlled `Ry(π/n)` on `u1` fires when
//! the test bit and the memory bit are both 1, and again (after flipping
//! both) when both are 0. A stored pattern at distance `d` therefore
//! collects `n - d` rotations and `u1` reads 1 with amplitude
//! `sin((n-d)π/2n) = cos(dπ/2n)`. Post-selecting `u1 = 1` leaves
//! `P(p) ∝ cos²(d_H(p, x)·π/2n)`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bits::BitPattern;
use crate::encoder::EncodedMemory;
use crate::error::{Error, Result};
use crate::patterns::PatternSet;
use crate::sim::{Control, Histogram, Matrix2, RegisterLayout, StateVector};
use crate::tolerance;

/// Test patterns share the representation of stored ones.
pub type TestPattern = BitPattern;

/// Amplitude weight of a pattern at Hamming distance `distance` in width `n`.
pub fn distance_weight(distance: u32, width: usize) -> f64 {
    (distance as f64 * PI / (2.0 * width as f64)).cos()
}

/// `cos(d_H(p_j, x)·π/2n)` for each stored pattern, in storage order.
pub fn classical_weights(patterns: &PatternSet, x: TestPattern) -> Result<Vec<f64>> {
    patterns
        .patterns()
        .map(|p| Ok(distance_weight(p.hamming_distance(x)?, patterns.width())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedPattern {
    pub pattern: BitPattern,
    pub label: Option<String>,
    pub distance: u32,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedDistribution {
    pub test: BitPattern,
    /// `⟨P⟩`: probability that `u1` read 1 before renormalization.
    pub success_probability: f64,
    /// Stored patterns in storage order.
    pub entries: Vec<WeightedPattern>,
    pub histogram: Option<Histogram>,
}

pub const CSV_HEADER: &str = "label,pattern,hamming_distance,probability,count";

impl WeightedDistribution {
    pub fn probability_of(&self, p: BitPattern) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.pattern == p)
            .map(|e| e.probability)
    }

    pub fn count_of(&self, p: BitPattern) -> Option<u64> {
        self.histogram.as_ref().map(|h| h.count(p.value()))
    }

    /// Entries ordered by descending probability, ties by pattern value.
    /// Probability falls strictly with distance, so the order is taken from
    /// the exact distances rather than rounded floats.
    pub fn ranked(&self) -> Vec<&WeightedPattern> {
        let mut v: Vec<&WeightedPattern> = self.entries.iter().collect();
        v.sort_by_key(|e| (e.distance, e.pattern));
        v
    }

    /// One row per stored pattern. `count` is empty when nothing was sampled.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for e in self.ranked() {
            let count = self
                .count_of(e.pattern)
                .map(|c| c.to_string())
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{:.12},{}",
                csv_field(e.label.as_deref().unwrap_or("")),
                e.pattern,
                e.distance,
                e.probability,
                count
            );
        }
        out
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn check_reset(state: &StateVector, layout: &RegisterLayout) -> Result<()> {
    let low = 1usize << layout.width;
    let stray = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i >= low)
        .map(|(_, a)| a.norm())
        .fold(0.0f64, f64::max);
    if stray > tolerance::AMPLITUDE {
        return Err(Error::InvalidParameter(format!(
            "registers a and u are not in |0⟩ (stray amplitude {stray:e})"
        )));
    }
    Ok(())
}

/// Copies the encoded state and writes `x` into the auxiliary register.
pub fn load_test_pattern(memory: &EncodedMemory, x: TestPattern) -> Result<StateVector> {
    let layout = memory.layout;
    if x.width() != layout.width {
        return Err(Error::WidthMismatch {
            expected: layout.width,
            found: x.width(),
        });
    }
    check_reset(&memory.state, &layout)?;
    let mut state = memory.state.clone();
    state.take_gate_counter();
    for j in (0..layout.width).filter(|&j| x.bit(j)) {
        state.apply_x(layout.a(j))?;
    }
    Ok(state)
}

/// Rotates `u1` by `π/n` once per bit where the auxiliary and memory
/// registers agree.
pub fn apply_distance_rotations(state: &mut StateVector, layout: &RegisterLayout) -> Result<()> {
    let n = layout.width;
    let rot = Matrix2::ry(PI / n as f64);
    for j in 0..n {
        let controls = [Control::set(layout.a(j)), Control::set(layout.m(j))];
        state.apply_controlled_u(&controls, layout.u1(), &rot)?;
        state.apply_x(layout.a(j))?;
        state.apply_x(layout.m(j))?;
        state.apply_controlled_u(&controls, layout.u1(), &rot)?;
        state.apply_x(layout.a(j))?;
        state.apply_x(layout.m(j))?;
    }
    Ok(())
}

/// Post-selects `u1 = 1`, clears the test pattern from `a`, and reads off
/// the renormalized memory distribution over the stored patterns.
pub fn project_and_normalize(
    state: &mut StateVector,
    layout: &RegisterLayout,
    patterns: &PatternSet,
    x: TestPattern,
) -> Result<WeightedDistribution> {
    let success_probability = state.post_select(layout.u1(), true)?;
    for j in (0..layout.width).filter(|&j| x.bit(j)) {
        state.apply_x(layout.a(j))?;
    }
    let marginal = state.marginal(layout.memory())?;
    let entries = patterns
        .entries()
        .iter()
        .map(|e| {
            Ok(WeightedPattern {
                pattern: e.pattern,
                label: e.label.clone(),
                distance: e.pattern.hamming_distance(x)?,
                probability: marginal[e.pattern.value() as usize],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightedDistribution {
        test: x,
        success_probability,
        entries,
        histogram: None,
    })
}

/// The post-selected state and its distribution.
#[derive(Clone, Debug)]
pub struct Representation {
    pub state: StateVector,
    pub layout: RegisterLayout,
    pub distribution: WeightedDistribution,
}

impl Representation {
    /// Memory-register amplitudes of the post-selected state
    /// (`a = 0`, `u1 = 1`, `u2 = 0`).
    pub fn memory_amplitudes(&self) -> Vec<num_complex::Complex64> {
        (0..1u64 << self.layout.width)
            .map(|m| self.state.amplitude(self.layout.index(0, 0b01, m)))
            .collect()
    }

    /// Samples the memory register and attaches the histogram.
    pub fn sample(&mut self, shots: u64, seed: u64) -> Result<&WeightedDistribution> {
        let h = self
            .state
            .sample_register(self.layout.memory(), shots, seed)?;
        self.distribution.histogram = Some(h);
        Ok(&self.distribution)
    }
}

/// Runs load → rotate → post-select on a copy of `memory`.
pub fn represent(memory: &EncodedMemory, x: TestPattern) -> Result<Representation> {
    let mut state = load_test_pattern(memory, x)?;
    apply_distance_rotations(&mut state, &memory.layout)?;
    let distribution = project_and_normalize(&mut state, &memory.layout, &memory.patterns, x)?;
    Ok(Representation {
        state,
        layout: memory.layout,
        distribution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::encode;

    fn set(bits: &[&str]) -> PatternSet {
        PatternSet::from_patterns(bits.iter().map(|b| b.parse::<BitPattern>().unwrap())).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert!((distance_weight(0, 5) - 1.0).abs() < 1e-15);
        assert!(distance_weight(5, 5).abs() < 1e-15);
        assert!((distance_weight(2, 5) - 0.809_016_994_374_947_4).abs() < 1e-12);
    }

    #[test]
    fn loading_sets_aux_bits() {
        let mem = encode(&set(&["00111", "01000"])).unwrap();
        let x: BitPattern = "00111".parse().unwrap();
        let s = load_test_pattern(&mem, x).unwrap();
        let aux = s.marginal(mem.layout.auxiliary()).unwrap();
        assert!((aux[0b00111] - 1.0).abs() < 1e-12);
        let m = s.marginal(mem.layout.memory()).unwrap();
        assert!((m[0b00111] - 0.5).abs() < 1e-12);

        let zero = load_test_pattern(&mem, "00000".parse().unwrap()).unwrap();
        assert!((zero.marginal(mem.layout.auxiliary()).unwrap()[0] - 1.0).abs() < 1e-12);
        assert!(matches!(
            load_test_pattern(&mem, "0011".parse().unwrap()),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn u1_amplitude_tracks_distance() {
        // One stored pattern at a time: u1 reads 1 with amplitude cos(dπ/2n).
        for (stored, test, d) in [
            ("10110", "10110", 0),
            ("00000", "11111", 5),
            ("11000", "10100", 2),
        ] {
            let mem = encode(&set(&[stored])).unwrap();
            let x: BitPattern = test.parse().unwrap();
            let mut s = load_test_pattern(&mem, x).unwrap();
            apply_distance_rotations(&mut s, &mem.layout).unwrap();
            let p1 = s.probability(mem.layout.u1(), true).unwrap();
            let expect = distance_weight(d, 5).powi(2);
            assert!(
                (p1 - expect).abs() < 1e-12,
                "{stored} vs {test}: {p1} vs {expect}"
            );
        }
    }

    #[test]
    fn sole_pattern_equal_to_test() {
        let mem = encode(&set(&["0110"])).unwrap();
        let r = represent(&mem, "0110".parse().unwrap()).unwrap();
        assert!((r.distribution.success_probability - 1.0).abs() < 1e-12);
        assert_eq!(r.distribution.entries.len(), 1);
        assert!((r.distribution.entries[0].probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complement_only_memory_is_zero_norm() {
        let mem = encode(&set(&["0110"])).unwrap();
        assert!(matches!(
            represent(&mem, "1001".parse().unwrap()),
            Err(Error::ZeroNorm { .. })
        ));
    }

    #[test]
    fn csv_has_fixed_columns() {
        let mem = encode(&set(&["01", "10"])).unwrap();
        let mut r = represent(&mem, "01".parse().unwrap()).unwrap();
        r.sample(10, 3).unwrap();
        let csv = r.distribution.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.next(), Some(",01,0,1.000000000000,10"));
    }
}

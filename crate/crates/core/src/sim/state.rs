use num_complex::Complex64;

use super::{GateCounter, Matrix2, Register};
use crate::error::{Error, Result};
use crate::tolerance;

/// Largest register the simulator will allocate (2^28 amplitudes = 4 GiB).
pub const MAX_QUBITS: usize = 28;

/// A control qubit together with the value it must hold for the gate to fire.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub on: bool,
}

impl Control {
    pub fn set(qubit: usize) -> Self {
        Self { qubit, on: true }
    }

    pub fn unset(qubit: usize) -> Self {
        Self { qubit, on: false }
    }
}

/// Dense amplitudes over `num_qubits` qubits.
///
/// While few amplitudes are non-zero the state also keeps their indices
/// (`support`), and gates visit only those. Once the support passes
/// `dim / SPARSE_FRACTION` the list is dropped and gates sweep the whole
/// vector. Both paths do the same arithmetic on every non-zero pair.
#[derive(Clone, Debug)]
pub struct StateVector {
    amps: Vec<Complex64>,
    num_qubits: usize,
    counter: GateCounter,
    /// Exactly the indices with a non-zero amplitude, in no particular order.
    support: Option<Vec<usize>>,
}

const SPARSE_FRACTION: usize = 8;
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn is_zero(a: Complex64) -> bool {
    a.re == 0.0 && a.im == 0.0
}

impl StateVector {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn new(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                what: "state-vector qubits",
                requested: num_qubits,
                limit: MAX_QUBITS,
            });
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} outside a {num_qubits}-qubit space"
            )));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            amps,
            num_qubits,
            counter: GateCounter::default(),
            support: Some(vec![index]),
        })
    }

    /// Wraps raw amplitudes. The vector length must be a power of two and
    /// the norm must be one.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "{len} amplitudes is not a power of two"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                what: "state-vector qubits",
                requested: num_qubits,
                limit: MAX_QUBITS,
            });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > tolerance::NORM {
            return Err(Error::InvalidParameter(format!(
                "amplitudes have squared norm {norm}"
            )));
        }
        let mut state = Self {
            amps,
            num_qubits,
            counter: GateCounter::default(),
            support: None,
        };
        state.rebuild_support();
        Ok(state)
    }

    fn rebuild_support(&mut self) {
        let limit = self.amps.len() / SPARSE_FRACTION;
        let mut support = Vec::new();
        for (i, a) in self.amps.iter().enumerate() {
            if !is_zero(*a) {
                if support.len() == limit {
                    self.support = None;
                    return;
                }
                support.push(i);
            }
        }
        self.support = Some(support);
    }

    /// Number of non-zero amplitudes, when tracked.
    pub fn support_len(&self) -> Option<usize> {
        self.support.as_ref().map(Vec::len)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        match &self.support {
            Some(support) => support.iter().map(|&i| self.amps[i].norm_sqr()).sum(),
            None => self.amps.iter().map(|a| a.norm_sqr()).sum(),
        }
    }

    pub fn gate_counter(&self) -> &GateCounter {
        &self.counter
    }

    pub fn take_gate_counter(&mut self) -> GateCounter {
        std::mem::take(&mut self.counter)
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    pub fn apply_x(&mut self, qubit: usize) -> Result<()> {
        self.check_qubit(qubit)?;
        self.kernel(&[], qubit, &Matrix2::pauli_x());
        self.counter.record_single("x");
        Ok(())
    }

    pub fn apply_ry(&mut self, qubit: usize, theta: f64) -> Result<()> {
        if !theta.is_finite() {
            return Err(Error::InvalidParameter(format!("rotation angle {theta}")));
        }
        self.check_qubit(qubit)?;
        self.kernel(&[], qubit, &Matrix2::ry(theta));
        self.counter.record_single("ry");
        Ok(())
    }

    pub fn apply_h(&mut self, qubit: usize) -> Result<()> {
        self.check_qubit(qubit)?;
        self.kernel(&[], qubit, &Matrix2::hadamard());
        self.counter.record_single("h");
        Ok(())
    }

    /// Applies `u` to `target` on the subspace where every control holds its
    /// required value. With no controls this is a plain one-qubit gate.
    pub fn apply_controlled_u(
        &mut self,
        controls: &[Control],
        target: usize,
        u: &Matrix2,
    ) -> Result<()> {
        self.check_qubit(target)?;
        for (i, c) in controls.iter().enumerate() {
            self.check_qubit(c.qubit)?;
            if c.qubit == target || controls[..i].iter().any(|o| o.qubit == c.qubit) {
                return Err(Error::OverlappingQubits(c.qubit));
            }
        }
        if !u.is_unitary(1e-12) {
            return Err(Error::InvalidParameter("matrix is not unitary".into()));
        }
        self.kernel(controls, target, u);
        if controls.is_empty() {
            self.counter
                .record_single(if u.is_pauli_x() { "x" } else { "u" });
        } else {
            let negative = controls.iter().filter(|c| !c.on).count();
            self.counter
                .record_controlled(controls.len(), negative, u.is_pauli_x());
        }
        Ok(())
    }

    pub fn apply_cx(&mut self, control: usize, target: usize) -> Result<()> {
        self.apply_controlled_u(&[Control::set(control)], target, &Matrix2::pauli_x())
    }

    pub fn apply_toffoli(&mut self, c0: usize, c1: usize, target: usize) -> Result<()> {
        self.apply_controlled_u(
            &[Control::set(c0), Control::set(c1)],
            target,
            &Matrix2::pauli_x(),
        )
    }

    /// Applies `u` to every amplitude pair `(|…0_t…⟩, |…1_t…⟩)` whose
    /// control bits match.
    fn kernel(&mut self, controls: &[Control], target: usize, u: &Matrix2) {
        let control_mask: usize = controls.iter().map(|c| 1usize << c.qubit).sum();
        let set_mask: usize = controls
            .iter()
            .filter(|c| c.on)
            .map(|c| 1usize << c.qubit)
            .sum();
        let tbit = 1usize << target;
        let is_x = u.is_pauli_x();
        let apply = |amps: &mut [Complex64], i0: usize| {
            let i1 = i0 | tbit;
            if is_x {
                amps.swap(i0, i1);
            } else {
                let (b0, b1) = u.apply(amps[i0], amps[i1]);
                amps[i0] = b0;
                amps[i1] = b1;
            }
        };

        let Some(support) = self.support.take() else {
            let mut fixed: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
            fixed.push(target);
            fixed.sort_unstable();
            let free = self.num_qubits - fixed.len();
            for r in 0..(1usize << free) {
                let mut i0 = r;
                for &p in &fixed {
                    let low = i0 & ((1usize << p) - 1);
                    i0 = ((i0 >> p) << (p + 1)) | low;
                }
                apply(&mut self.amps, i0 | set_mask);
            }
            return;
        };

        // Each touched pair is listed once, by its |0_t⟩ index: either that
        // index is in the support, or only its partner is.
        let amps = &mut self.amps;
        let mut pairs = Vec::new();
        let mut next = Vec::with_capacity(support.len() * 2);
        for &i in &support {
            if i & control_mask != set_mask {
                next.push(i);
            } else if i & tbit == 0 {
                pairs.push(i);
            } else if is_zero(amps[i ^ tbit]) {
                pairs.push(i ^ tbit);
            }
        }
        for &i0 in &pairs {
            apply(amps, i0);
        }
        for &i0 in &pairs {
            for i in [i0, i0 | tbit] {
                if !is_zero(amps[i]) {
                    next.push(i);
                }
            }
        }
        if next.len() <= amps.len() / SPARSE_FRACTION {
            self.support = Some(next);
        }
    }

    /// Probability that `qubit` reads `outcome`.
    pub fn probability(&self, qubit: usize, outcome: bool) -> Result<f64> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        if let Some(support) = &self.support {
            return Ok(support
                .iter()
                .filter(|&&i| (i & bit != 0) == outcome)
                .map(|&i| self.amps[i].norm_sqr())
                .sum());
        }
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| (i & bit != 0) == outcome)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Projects `qubit` onto `outcome` and renormalizes. Returns the
    /// probability of the outcome before projection. The state is left
    /// untouched when that probability is numerically zero.
    pub fn post_select(&mut self, qubit: usize, outcome: bool) -> Result<f64> {
        let probability = self.probability(qubit, outcome)?;
        if probability < tolerance::POST_SELECT {
            return Err(Error::ZeroNorm { probability });
        }
        let bit = 1usize << qubit;
        let scale = 1.0 / probability.sqrt();
        if let Some(support) = self.support.as_mut() {
            support.retain(|&i| {
                if (i & bit != 0) == outcome {
                    self.amps[i] *= scale;
                    true
                } else {
                    self.amps[i] = ZERO;
                    false
                }
            });
            return Ok(probability);
        }
        for (i, a) in self.amps.iter_mut().enumerate() {
            if (i & bit != 0) == outcome {
                *a *= scale;
            } else {
                *a = ZERO;
            }
        }
        self.rebuild_support();
        Ok(probability)
    }

    /// Marginal distribution of `register`, indexed by the register value.
    pub fn marginal(&self, register: Register) -> Result<Vec<f64>> {
        if register.width == 0 {
            return Err(Error::InvalidParameter("empty register".into()));
        }
        self.check_qubit(register.offset + register.width - 1)?;
        let mask = (1usize << register.width) - 1;
        let mut out = vec![0.0; 1usize << register.width];
        match &self.support {
            Some(support) => {
                for &i in support {
                    out[(i >> register.offset) & mask] += self.amps[i].norm_sqr();
                }
            }
            None => {
                for (i, a) in self.amps.iter().enumerate() {
                    out[(i >> register.offset) & mask] += a.norm_sqr();
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn x_flips_and_is_an_involution() {
        let mut s = StateVector::new(1).unwrap();
        s.apply_x(0).unwrap();
        assert_eq!(s.amplitude(1), c(1.0));
        s.apply_x(0).unwrap();
        assert!((s.amplitude(0) - c(1.0)).norm() < 1e-12);
        assert_eq!(s.gate_counter().one_qubit_calls, 2);
    }

    #[test]
    fn x_on_high_qubit_is_little_endian() {
        // (|00⟩+|01⟩)/√2 has qubit 0 in superposition; X on qubit 1 gives (|10⟩+|11⟩)/√2.
        let mut s =
            StateVector::from_amplitudes(vec![c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), c(0.0), c(0.0)])
                .unwrap();
        s.apply_x(1).unwrap();
        assert!((s.amplitude(2) - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((s.amplitude(3) - c(FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn ry_examples() {
        let mut s = StateVector::new(1).unwrap();
        s.apply_ry(0, PI).unwrap();
        assert!((s.amplitude(1).norm() - 1.0).abs() < 1e-12);
        let mut s = StateVector::new(1).unwrap();
        s.apply_ry(0, PI / 2.0).unwrap();
        assert!((s.amplitude(0).re - (PI / 4.0).cos()).abs() < 1e-15);
        assert!((s.amplitude(1).re - (PI / 4.0).sin()).abs() < 1e-15);
        assert!(s.apply_ry(0, f64::NAN).is_err());
    }

    #[test]
    fn cx_fires_only_when_control_set() {
        // |10⟩ with qubit 1 as control: label written q1 q0.
        let mut s = StateVector::basis(2, 0b10).unwrap();
        s.apply_cx(1, 0).unwrap();
        assert_eq!(s.amplitude(0b11), c(1.0));
        let mut s = StateVector::basis(2, 0b00).unwrap();
        s.apply_cx(1, 0).unwrap();
        assert_eq!(s.amplitude(0b00), c(1.0));
        assert_eq!(s.gate_counter().two_qubit_calls, 1);
    }

    #[test]
    fn doubly_controlled_ry_with_controls_unset_is_identity() {
        let mut s = StateVector::new(3).unwrap();
        s.apply_controlled_u(
            &[Control::set(0), Control::set(1)],
            2,
            &Matrix2::ry(PI / 4.0),
        )
        .unwrap();
        assert_eq!(s.amplitude(0), c(1.0));
        assert_eq!(s.gate_counter().two_qubit_calls, 5);
    }

    #[test]
    fn negative_controls_fire_on_zero() {
        let mut s = StateVector::new(2).unwrap();
        s.apply_controlled_u(&[Control::unset(0)], 1, &Matrix2::pauli_x())
            .unwrap();
        assert_eq!(s.amplitude(0b10), c(1.0));
        assert_eq!(s.gate_counter().one_qubit_calls, 2);
    }

    #[test]
    fn gate_argument_errors() {
        let mut s = StateVector::new(2).unwrap();
        assert!(matches!(
            s.apply_x(2),
            Err(Error::QubitOutOfRange { qubit: 2, .. })
        ));
        assert!(matches!(s.apply_cx(1, 1), Err(Error::OverlappingQubits(1))));
        assert!(matches!(
            s.apply_controlled_u(&[Control::set(0), Control::set(0)], 1, &Matrix2::pauli_x()),
            Err(Error::OverlappingQubits(0))
        ));
        assert!(s
            .apply_controlled_u(&[], 0, &Matrix2::real(1.0, 1.0, 0.0, 1.0))
            .is_err());
        assert!(StateVector::new(MAX_QUBITS + 1).is_err());
    }

    #[test]
    fn post_select_examples() {
        let mut s = StateVector::from_amplitudes(vec![c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap();
        let p = s.post_select(0, false).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        assert!((s.amplitude(0) - c(1.0)).norm() < 1e-15);

        let mut s = StateVector::new(1).unwrap();
        assert!(matches!(
            s.post_select(0, true),
            Err(Error::ZeroNorm { .. })
        ));
        assert_eq!(s.amplitude(0), c(1.0));
    }

    #[test]
    fn marginal_sums_over_other_qubits() {
        let mut s = StateVector::new(3).unwrap();
        s.apply_h(0).unwrap();
        s.apply_x(2).unwrap();
        let m = s
            .marginal(Register {
                offset: 1,
                width: 2,
            })
            .unwrap();
        assert!((m[0b10] - 1.0).abs() < 1e-15);
    }
}

//! Loads `N` distinct patterns into an equal superposition on the memory
//! register.
//!
//! Each pattern is written into the auxiliary register, copied into the
//! active branch, marked, and then split off the active branch by a
//! controlled carve rotation `S(N+1-i)` so that every stored pattern ends
//! with weight `1/N`. The active branch is the one with `u = (u1, u2) = (0, 1)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::patterns::PatternSet;
use crate::sim::{Control, GateCounter, Matrix2, RegisterLayout, StateVector, MAX_QUBITS};

/// `S(i) = [[√((i-1)/i), 1/√i], [-1/√i, √((i-1)/i)]] = Ry(-acos((i-2)/i))`.
pub fn carve_matrix(i: usize) -> Result<Matrix2> {
    if i == 0 {
        return Err(Error::InvalidParameter(
            "carve index must be positive".into(),
        ));
    }
    let i = i as f64;
    let keep = ((i - 1.0) / i).sqrt();
    let split = 1.0 / i.sqrt();
    Ok(Matrix2::real(keep, split, -split, keep))
}

/// The rotation angle with `Ry(φ(i)) = S(i)`.
pub fn carve_angle(i: usize) -> f64 {
    let i = i as f64;
    -((i - 2.0) / i).acos()
}

/// Result of encoding: `a = 0`, `u = 00`, and `m = (1/√N) Σ |p_i⟩`.
#[derive(Clone, Debug)]
pub struct EncodedMemory {
    pub state: StateVector,
    pub layout: RegisterLayout,
    pub patterns: PatternSet,
    pub gates: GateCounter,
}

/// Step-by-step encoder; [`encode`] runs it to completion.
#[derive(Debug)]
pub struct Encoder {
    state: StateVector,
    layout: RegisterLayout,
    patterns: PatternSet,
    next: usize,
}

impl Encoder {
    pub fn new(patterns: PatternSet) -> Result<Self> {
        let n = patterns.width();
        let capacity = if n >= usize::BITS as usize {
            usize::MAX
        } else {
            1usize << n
        };
        if patterns.len() > capacity {
            return Err(Error::Capacity {
                what: "patterns for register width",
                requested: patterns.len(),
                limit: capacity,
            });
        }
        let layout = RegisterLayout::new(n);
        if layout.num_qubits() > MAX_QUBITS {
            return Err(Error::Capacity {
                what: "state-vector qubits",
                requested: layout.num_qubits(),
                limit: MAX_QUBITS,
            });
        }
        let mut state = StateVector::new(layout.num_qubits())?;
        state.apply_x(layout.u2())?;
        Ok(Self {
            state,
            layout,
            patterns,
            next: 0,
        })
    }

    pub fn encoded(&self) -> usize {
        self.next
    }

    pub fn is_done(&self) -> bool {
        self.next == self.patterns.len()
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    /// Encodes the next pattern. Returns `false` once every pattern is stored.
    pub fn step(&mut self) -> Result<bool> {
        if self.is_done() {
            return Ok(false);
        }
        let pattern = self.patterns.entries()[self.next].pattern;
        let total = self.patterns.len();
        let l = self.layout;
        let n = l.width;
        let s = &mut self.state;

        let set_bits: Vec<usize> = (0..n).filter(|&j| pattern.bit(j)).collect();
        let m: Vec<usize> = (0..n).map(|j| l.m(j)).collect();
        let scratch: Vec<usize> = (0..n.saturating_sub(2)).map(|j| l.a(j)).collect();

        for &j in &set_bits {
            s.apply_x(l.a(j))?;
        }
        // Copy a into m on the active branch.
        for j in 0..n {
            s.apply_toffoli(l.a(j), l.u2(), l.m(j))?;
        }
        // m_j ← 1 where m_j == a_j.
        for j in 0..n {
            s.apply_cx(l.a(j), l.m(j))?;
            s.apply_x(l.m(j))?;
        }
        s.apply_ncx(&m, l.u1(), &scratch)?;
        let carve = carve_matrix(total - self.next)?;
        s.apply_controlled_u(&[Control::set(l.u1())], l.u2(), &carve)?;
        s.apply_ncx(&m, l.u1(), &scratch)?;
        for j in (0..n).rev() {
            s.apply_x(l.m(j))?;
            s.apply_cx(l.a(j), l.m(j))?;
        }
        for j in (0..n).rev() {
            s.apply_toffoli(l.a(j), l.u2(), l.m(j))?;
        }
        for &j in &set_bits {
            s.apply_x(l.a(j))?;
        }

        self.next += 1;
        Ok(true)
    }

    /// Largest amplitude deviation from the expected intermediate state:
    /// each stored pattern at `1/√N` with `u = 00`, the active branch at
    /// `√((N-i)/N)` with `u = 01` and `m = 0`, and nothing anywhere else.
    pub fn checkpoint_error(&self) -> f64 {
        let total = self.patterns.len() as f64;
        let mut expected = Vec::with_capacity(self.next + 1);
        for e in &self.patterns.entries()[..self.next] {
            expected.push((
                self.layout.index(0, 0, e.pattern.value()),
                1.0 / total.sqrt(),
            ));
        }
        let remaining = (self.patterns.len() - self.next) as f64;
        if remaining > 0.0 {
            expected.push((self.layout.index(0, 0b10, 0), (remaining / total).sqrt()));
        }
        max_deviation(&self.state, &expected)
    }

    pub fn finish(mut self) -> Result<EncodedMemory> {
        while self.step()? {}
        let gates = self.state.gate_counter().clone();
        Ok(EncodedMemory {
            state: self.state,
            layout: self.layout,
            patterns: self.patterns,
            gates,
        })
    }
}

pub fn encode(patterns: &PatternSet) -> Result<EncodedMemory> {
    Encoder::new(patterns.clone())?.finish()
}

/// `max_i |ψ_i − target_i|` where `target` is sparse and real.
pub(crate) fn max_deviation(state: &StateVector, target: &[(usize, f64)]) -> f64 {
    let mut worst = 0.0f64;
    let mut listed = vec![false; state.amplitudes().len()];
    for &(i, v) in target {
        listed[i] = true;
        worst = worst.max((state.amplitude(i) - Complex64::new(v, 0.0)).norm());
    }
    for (i, a) in state.amplitudes().iter().enumerate() {
        if !listed[i] {
            worst = worst.max(a.norm());
        }
    }
    worst
}

impl EncodedMemory {
    /// Largest deviation from `a = 0, u = 00, m = (1/√N) Σ |p⟩`.
    pub fn deviation_from_ideal(&self) -> f64 {
        let amp = 1.0 / (self.patterns.len() as f64).sqrt();
        let target: Vec<(usize, f64)> = self
            .patterns
            .patterns()
            .map(|p| (self.layout.index(0, 0, p.value()), amp))
            .collect();
        max_deviation(&self.state, &target)
    }
}

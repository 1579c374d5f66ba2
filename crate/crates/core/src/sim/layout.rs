use serde::{Deserialize, Serialize};

/// A contiguous run of qubits, least-significant first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub offset: usize,
    pub width: usize,
}

impl Register {
    pub fn qubit(&self, j: usize) -> usize {
        debug_assert!(j < self.width);
        self.offset + j
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.offset..self.offset + self.width
    }
}

/// Memory register `m` (n qubits) on the lowest indices, then the two
/// control qubits `u = (u1, u2)`, then the auxiliary register `a` (n qubits).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    pub width: usize,
}

impl RegisterLayout {
    pub fn new(width: usize) -> Self {
        Self { width }
    }

    pub fn num_qubits(&self) -> usize {
        2 * self.width + 2
    }

    pub fn memory(&self) -> Register {
        Register {
            offset: 0,
            width: self.width,
        }
    }

    pub fn control(&self) -> Register {
        Register {
            offset: self.width,
            width: 2,
        }
    }

    pub fn auxiliary(&self) -> Register {
        Register {
            offset: self.width + 2,
            width: self.width,
        }
    }

    pub fn u1(&self) -> usize {
        self.width
    }

    pub fn u2(&self) -> usize {
        self.width + 1
    }

    pub fn m(&self, j: usize) -> usize {
        self.memory().qubit(j)
    }

    pub fn a(&self, j: usize) -> usize {
        self.auxiliary().qubit(j)
    }

    /// Basis-state index with the given register contents.
    pub fn index(&self, aux: u64, control: u64, memory: u64) -> usize {
        ((aux as usize) << (self.width + 2)) | ((control as usize) << self.width) | memory as usize
    }
}

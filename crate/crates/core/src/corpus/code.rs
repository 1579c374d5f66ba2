use serde::{Deserialize, Serialize};

use crate::bits::{BitPattern, MAX_WIDTH};
use crate::{Error, Result};

/// `2n` codewords of width `n` where the Hamming distance between two
/// codewords equals their cyclic index distance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCode {
    pub width: usize,
    pub codewords: Vec<BitPattern>,
}

impl CyclicCode {
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Cyclic index distance, which the code maps onto Hamming distance.
    pub fn index_distance(&self, i: usize, j: usize) -> usize {
        let d = i.abs_diff(j);
        d.min(self.len() - d)
    }
}

/// Fills ones in from the low end, then clears them from the low end:
/// `000, 001, 011, 111, 110, 100` for `n = 3`.
pub fn generate_cyclic_code(n: usize) -> Result<CyclicCode> {
    if n == 0 || n > MAX_WIDTH {
        return Err(Error::InvalidParameter(format!(
            "cyclic code width must be in 1..={MAX_WIDTH}, got {n}"
        )));
    }
    let mut values = Vec::with_capacity(2 * n);
    let mut p = 0u64;
    for _ in 0..=n {
        values.push(p);
        p = 2 * p + 1;
    }
    let top = values[n];
    for i in 1..n {
        values.push(top - values[i]);
    }
    let codewords = values
        .into_iter()
        .map(|v| BitPattern::new(v, n))
        .collect::<Result<_>>()?;
    Ok(CyclicCode {
        width: n,
        codewords,
    })
}

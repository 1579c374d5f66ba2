//! Fixed-width bit strings.
//!
//! Strings are written most-significant bit first, as in `01100`. Bit `j`
//! of a pattern (counted from the least-significant end) lives on qubit
//! `offset + j` of the register that holds it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_WIDTH: usize = 63;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitPattern {
    value: u64,
    width: u8,
}

impl BitPattern {
    pub fn new(value: u64, width: usize) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::InvalidParameter(format!(
                "pattern width {width} outside 1..={MAX_WIDTH}"
            )));
        }
        if value >> width != 0 {
            return Err(Error::InvalidParameter(format!(
                "value {value} does not fit in {width} bits"
            )));
        }
        Ok(Self {
            value,
            width: width as u8,
        })
    }

    pub fn zeros(width: usize) -> Result<Self> {
        Self::new(0, width)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    /// Bit `j`, counted from the least-significant end.
    pub fn bit(self, j: usize) -> bool {
        (self.value >> j) & 1 == 1
    }

    pub fn count_ones(self) -> u32 {
        self.value.count_ones()
    }

    pub fn hamming_distance(self, other: BitPattern) -> Result<u32> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width(),
                found: other.width(),
            });
        }
        Ok((self.value ^ other.value).count_ones())
    }

    pub fn complement(self) -> Self {
        let mask = (1u64 << self.width) - 1;
        Self {
            value: !self.value & mask,
            width: self.width,
        }
    }

    /// `high ∥ low`: `high` occupies the most-significant bits.
    pub fn concat(high: BitPattern, low: BitPattern) -> Result<Self> {
        let width = high.width() + low.width();
        Self::new((high.value << low.width) | low.value, width)
    }

    /// Splits off the `low_width` least-significant bits: `(high, low)`.
    pub fn split(self, low_width: usize) -> Result<(BitPattern, BitPattern)> {
        if low_width == 0 || low_width >= self.width() {
            return Err(Error::InvalidParameter(format!(
                "cannot split {} bits at {low_width}",
                self.width
            )));
        }
        let low = self.value & ((1u64 << low_width) - 1);
        Ok((
            Self::new(self.value >> low_width, self.width() - low_width)?,
            Self::new(low, low_width)?,
        ))
    }
}

impl FromStr for BitPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidParameter(format!(
                "'{s}' is not a binary string"
            )));
        }
        if s.len() > MAX_WIDTH {
            return Err(Error::InvalidParameter(format!(
                "'{s}' is longer than {MAX_WIDTH} bits"
            )));
        }
        let value = u64::from_str_radix(s, 2)
            .map_err(|e| Error::InvalidParameter(format!("'{s}': {e}")))?;
        Self::new(value, s.len())
    }
}

impl fmt::Display for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.width())
    }
}

impl fmt::Debug for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPattern({self})")
    }
}

impl Serialize for BitPattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitPattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

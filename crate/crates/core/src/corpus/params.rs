use serde::{Deserialize, Serialize};

use super::Reducer;
use crate::{Error, Result};

/// Environment variable names for `n_nouns`, `n_verbs`, `w_nouns`,
/// `w_verbs` and `w_vn`, in that order.
pub const ENV_NAMES: [&str; 5] = [
    "NUM_BASIS_NOUN",
    "NUM_BASIS_VERB",
    "BASIS_NOUN_DIST_CUTOFF",
    "BASIS_VERB_DIST_CUTOFF",
    "VERB_NOUN_DIST_CUTOFF",
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreprocessParams {
    pub n_nouns: usize,
    pub n_verbs: usize,
    pub w_nouns: usize,
    pub w_verbs: usize,
    pub w_vn: usize,
    #[serde(default)]
    pub reducer: Reducer,
}

impl Default for PreprocessParams {
    fn default() -> Self {
        Self {
            n_nouns: 8,
            n_verbs: 4,
            w_nouns: 5,
            w_verbs: 5,
            w_vn: 4,
            reducer: Reducer::Min,
        }
    }
}

impl PreprocessParams {
    pub fn validate(&self) -> Result<()> {
        for (name, n) in [("n_nouns", self.n_nouns), ("n_verbs", self.n_verbs)] {
            if n < 2 || n % 2 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be even and at least 2, got {n}"
                )));
            }
        }
        for (name, w) in [
            ("w_nouns", self.w_nouns),
            ("w_verbs", self.w_verbs),
            ("w_vn", self.w_vn),
        ] {
            if w == 0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be at least 1"
                )));
            }
        }
        Ok(())
    }

    /// Code widths for the noun and verb registers.
    pub fn widths(&self) -> (usize, usize) {
        (self.n_nouns / 2, self.n_verbs / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(PreprocessParams::default().validate().is_ok());
        let odd = PreprocessParams {
            n_nouns: 7,
            ..Default::default()
        };
        assert!(odd.validate().is_err());
        let zero = PreprocessParams {
            w_vn: 0,
            ..Default::default()
        };
        assert!(zero.validate().is_err());
        assert_eq!(PreprocessParams::default().widths(), (4, 2));
    }
}

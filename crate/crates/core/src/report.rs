//! Machine-readable check certificates: every quantitative check emits a
//! record with the measured value, the bound it must respect, the relative
//! slack, and a digest of the inputs that produced it.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub check: String,
    /// Truncated SHA-256 of the canonical input description.
    pub inputs_digest: String,
    pub measured: f64,
    pub bound: f64,
    /// measured/bound − 1 (negative when the bound holds strictly); for
    /// exactness checks where the bound is 0, the measured value itself.
    pub slack: f64,
    pub pass: bool,
}

impl Certificate {
    pub fn new(check: impl Into<String>, inputs: &str, measured: f64, bound: f64) -> Self {
        let slack = if bound > 0.0 { measured / bound - 1.0 } else { measured };
        Certificate {
            check: check.into(),
            inputs_digest: digest(inputs),
            measured,
            bound,
            slack,
            pass: measured <= bound,
        }
    }

    /// Certificate for a boolean verdict (measured 0/1 against bound 1).
    pub fn verdict(check: impl Into<String>, inputs: &str, pass: bool) -> Self {
        Certificate {
            check: check.into(),
            inputs_digest: digest(inputs),
            measured: f64::from(u8::from(pass)),
            bound: 1.0,
            slack: 0.0,
            pass,
        }
    }
}

pub fn digest(inputs: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(inputs.as_bytes());
    let hex = format!("{:x}", hasher.finalize());
    hex[..16].to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable_and_short() {
        assert_eq!(digest("abc"), digest("abc"));
        assert_ne!(digest("abc"), digest("abd"));
        assert_eq!(digest("abc").len(), 16);
    }

    #[test]
    fn slack_sign_tracks_the_bound() {
        let ok = Certificate::new("c", "x", 0.5, 1.0);
        assert!(ok.pass && ok.slack < 0.0);
        let bad = Certificate::new("c", "x", 2.0, 1.0);
        assert!(!bad.pass && bad.slack > 0.0);
    }
}

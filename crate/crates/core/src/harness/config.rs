//! Validated run parameters shared by every command.

use super::report::Format;
use crate::algebra::MAX_FIELD_SIZE;
use crate::error::{Error, Result};
use crate::glgroup::{gl_order, MAX_N, MAX_ORDER};
use crate::numeric::prime_power;
use std::path::PathBuf;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub q: u32,
    pub n: usize,
    pub m: Option<usize>,
    pub psi_a: u32,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub tolerance: Option<f64>,
}

impl RunConfig {
    pub fn new(q: u32, n: usize) -> RunConfig {
        RunConfig {
            q,
            n,
            m: None,
            psi_a: 1,
            format: Format::Text,
            cache_dir: None,
            jobs: None,
            tolerance: None,
        }
    }

    /// Largest rank touched by the run.
    pub fn max_n(&self) -> usize {
        self.n.max(self.m.unwrap_or(0))
    }

    /// Checks everything against the envelope before any computation.
    pub fn validate(&self) -> Result<()> {
        check_envelope(self.q, self.n)?;
        if let Some(m) = self.m {
            check_envelope(self.q, m)?;
        }
        if self.psi_a == 0 || self.psi_a >= self.q {
            return Err(Error::Config(format!(
                "--psi-a {} must be a nonzero element of F_{} (1..{})",
                self.psi_a,
                self.q,
                self.q - 1
            )));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("--jobs must be at least 1".into()));
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::Config(format!("--tolerance {t} must lie in (0, 1)")));
            }
        }
        Ok(())
    }
}

/// Refuses (q, n) outside the supported envelope, naming the limit.
pub fn check_envelope(q: u32, n: usize) -> Result<()> {
    if q < 2 || prime_power(q as u64).is_none() {
        return Err(Error::NonPrime(q as u64));
    }
    if n == 0 {
        return Err(Error::Config("n must be at least 1".into()));
    }
    if n > MAX_N {
        return Err(Error::EnvelopeExceeded {
            n,
            q,
            reason: format!("n is limited to {MAX_N}"),
        });
    }
    let ext = (q as u64).saturating_pow(n as u32);
    if ext > MAX_FIELD_SIZE {
        return Err(Error::TooLarge(ext));
    }
    let order = gl_order(q as u64, n);
    if order > MAX_ORDER {
        return Err(Error::EnvelopeExceeded {
            n,
            q,
            reason: format!("|GL_{n}(F_{q})| = {order} exceeds {MAX_ORDER}"),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope() {
        assert!(RunConfig::new(3, 2).validate().is_ok());
        assert!(matches!(RunConfig::new(6, 2).validate(), Err(Error::NonPrime(6))));
        assert!(matches!(RunConfig::new(3, 4).validate(), Err(Error::EnvelopeExceeded { .. })));
        assert!(matches!(RunConfig::new(2, 5).validate(), Err(Error::EnvelopeExceeded { .. })));
        let mut c = RunConfig::new(3, 2);
        c.psi_a = 3;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        c.psi_a = 2;
        c.m = Some(4);
        assert!(c.validate().is_err());
        c.m = Some(1);
        c.tolerance = Some(2.0);
        assert!(c.validate().is_err());
    }
}

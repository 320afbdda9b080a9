use crate::error::{Error, Result};

/// Truncation settings shared by the explicit-formula, series and Bartz
/// evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationConfig {
    /// Number of zeros (pairs ρ, ρ̄ for real sums) taken from the table.
    pub zero_pairs: usize,
    /// Stop threshold for convergent series (trivial-zero and A-series).
    pub series_tol: f64,
    /// Cutoff Q for sums over q such as the pole series in ϖ₃.
    pub q_cutoff: u64,
    /// Initial Simpson panel width for contour integrals.
    pub quad_step: f64,
    /// Upper limit of the vertical integral; `None` picks one from the
    /// integrand's decay bound.
    pub t_cut: Option<f64>,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        TruncationConfig {
            zero_pairs: 100,
            series_tol: 1e-16,
            q_cutoff: 10_000,
            quad_step: 0.05,
            t_cut: None,
        }
    }
}

impl TruncationConfig {
    /// Checks positivity and that the zero count fits a table of
    /// `table_len` entries.
    pub fn validate(&self, table_len: usize) -> Result<()> {
        if self.zero_pairs > table_len {
            return Err(Error::TableTooSmall {
                requested: self.zero_pairs,
                available: table_len,
            });
        }
        if !(self.series_tol > 0.0) {
            return Err(Error::Domain("series_tol must be positive".into()));
        }
        if self.q_cutoff == 0 {
            return Err(Error::Domain("q_cutoff must be positive".into()));
        }
        if !(self.quad_step > 0.0) {
            return Err(Error::Domain("quad_step must be positive".into()));
        }
        if let Some(t) = self.t_cut {
            if !(t > 0.0) {
                return Err(Error::Domain("t_cut must be positive".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        assert!(TruncationConfig::default().validate(100).is_ok());
        assert!(TruncationConfig::default().validate(99).is_err());
        let bad = TruncationConfig {
            quad_step: 0.0,
            ..TruncationConfig::default()
        };
        assert!(bad.validate(100).is_err());
        let bad = TruncationConfig {
            t_cut: Some(-1.0),
            ..TruncationConfig::default()
        };
        assert!(bad.validate(100).is_err());
    }
}

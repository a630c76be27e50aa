use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::eta_expand;

use super::ClassicalForm;

/// A weight-2 eta-quotient newform paired with an elliptic curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewformRecord {
    pub label: String,
    pub level: u64,
    /// Pairs `(d, r_d)` of `prod eta(d z)^{r_d}`.
    pub eta: Vec<(u64, i64)>,
    /// Weierstrass coefficients `[a1, a2, a3, a4, a6]`.
    pub curve: [i64; 5],
    pub note: String,
}

impl NewformRecord {
    /// Checks weight 2 and an integral, nonnegative exponent shift.
    pub fn validate(&self) -> Result<()> {
        let weight2: i64 = self.eta.iter().map(|&(_, r)| r).sum();
        if weight2 != 4 {
            return Err(Error::UnsupportedEtaQuotient(format!(
                "{}: sum of exponents {weight2} is not 4",
                self.label
            )));
        }
        if let Some(&(d, _)) = self.eta.iter().find(|&&(d, _)| d == 0 || self.level % d != 0) {
            return Err(Error::UnsupportedEtaQuotient(format!("{}: {d} does not divide the level", self.label)));
        }
        eta_expand(&self.eta, 0).map(|_| ())
    }

    pub fn form(&self, precision: usize) -> Result<ClassicalForm> {
        ClassicalForm::new(eta_expand(&self.eta, precision)?, 2, self.level, true)
    }
}

static REGISTRY: OnceLock<Vec<NewformRecord>> = OnceLock::new();

/// The shipped eta-quotient newforms, ordered by level.
pub fn registry_newforms() -> &'static [NewformRecord] {
    REGISTRY.get_or_init(|| {
        let mut recs: Vec<NewformRecord> =
            serde_json::from_str(include_str!("../../data/newforms.json")).expect("registry data parses");
        recs.sort_by_key(|r| r.level);
        recs
    })
}

pub fn registry_lookup(level: u64) -> Option<&'static NewformRecord> {
    registry_newforms().iter().find(|r| r.level == level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::QExpansion;

    #[test]
    fn levels_present() {
        let levels: Vec<u64> = registry_newforms().iter().map(|r| r.level).collect();
        assert_eq!(levels, vec![11, 14, 15, 20, 24, 27, 32, 36]);
        assert!(registry_lookup(13).is_none());
    }

    #[test]
    fn level_eleven_entry() {
        let r = registry_lookup(11).unwrap();
        assert_eq!(r.eta, vec![(1, 2), (11, 2)]);
        assert_eq!(r.curve, [0, -1, 1, 0, 0]);
        let f = r.form(5).unwrap();
        assert_eq!(f.expansion, QExpansion::from_i64(5, &[0, 1, -2, -1, 2, 1]).unwrap());
    }

    #[test]
    fn records_validate_and_are_normalized() {
        for r in registry_newforms() {
            r.validate().unwrap();
            assert!(r.form(10).unwrap().is_normalized(), "{}", r.label);
        }
    }
}

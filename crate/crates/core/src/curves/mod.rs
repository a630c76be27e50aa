//! The arithmetic side: point counts of elliptic and genus-2 curves over
//! finite fields, Frobenius polynomials, and local and global L-functions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod elliptic;
mod frobenius;
mod genus2;
mod lfunction;

pub use elliptic::{
    ec_ap, ec_ap_table, ec_local_factor, local_ap, point_count_ap, reduction_type, EllipticCurveQ, Reduction,
};
pub use frobenius::{abelian_local_lfactor, frobenius_from_counts, frobenius_poly, FrobeniusPoly};
pub use genus2::{genus2_counts, Genus2CurveQ};
pub use lfunction::{expand_dirichlet_coefficients, global_l_eval, LEval};

/// Prime-indexed `a_p` values with their provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApTable {
    pub source: String,
    pub bound: u64,
    pub entries: BTreeMap<u64, i64>,
    pub bad_primes: BTreeSet<u64>,
}

impl ApTable {
    pub fn from_rows(source: String, bound: u64, rows: Vec<(u64, i64, bool)>) -> Self {
        let mut entries = BTreeMap::new();
        let mut bad_primes = BTreeSet::new();
        for (p, a, bad) in rows {
            entries.insert(p, a);
            if bad {
                bad_primes.insert(p);
            }
        }
        ApTable { source, bound, entries, bad_primes }
    }

    /// CSV with header `p,ap,bad`, one row per prime in ascending order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,ap,bad\n");
        for (p, a) in &self.entries {
            let bad = u8::from(self.bad_primes.contains(p));
            writeln!(out, "{p},{a},{bad}").expect("writing to a String");
        }
        out
    }

    pub fn from_csv(source: String, bound: u64, csv: &str) -> Result<Self> {
        let mut lines = csv.lines();
        if lines.next().map(str::trim) != Some("p,ap,bad") {
            return Err(Error::InvalidInput("missing header p,ap,bad".into()));
        }
        let mut rows = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let parse = |s: &str| s.parse::<i64>().map_err(|e| Error::InvalidInput(format!("{line}: {e}")));
            if fields.len() != 3 {
                return Err(Error::InvalidInput(format!("bad row {line}")));
            }
            rows.push((parse(fields[0])? as u64, parse(fields[1])?, parse(fields[2])? != 0));
        }
        Ok(Self::from_rows(source, bound, rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let t = ApTable::from_rows("test".into(), 5, vec![(2, -2, false), (3, -1, false), (5, 1, true)]);
        let csv = t.to_csv();
        assert_eq!(csv, "p,ap,bad\n2,-2,0\n3,-1,0\n5,1,1\n");
        assert_eq!(ApTable::from_csv("test".into(), 5, &csv).unwrap(), t);
    }
}

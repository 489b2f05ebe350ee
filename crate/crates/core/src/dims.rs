//! Dimension bookkeeping: level-2 elliptic isotypic series, Fricke splits,
//! Yoshida-type multiplicities and the predicted isotypic tables for
//! `S_{j,2}(Gamma_2[2])`.

use crate::exact::{tseries_coeff, RationalSeries};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimsError {
    #[error("weight {0} must be even and greater than 2")]
    Weight(u32),
    #[error("j = {0} must be even")]
    OddJ(u32),
    #[error("unsupported partition {0:?}")]
    Partition(Vec<u32>),
    #[error("parity mismatch at weight {k}: total {total}, difference {d}")]
    Parity { k: u32, total: i64, d: i64 },
}

fn coeff(shift: usize, factors: &[usize], n: u32) -> i64 {
    tseries_coeff(&RationalSeries::monomial_over(shift, factors), n as usize)
}

/// `dim S_k(Gamma_1)`: coefficient of `t^k` in `t^12 / ((1-t^4)(1-t^6))`.
pub fn level1_dim(k: u32) -> i64 {
    coeff(12, &[4, 6], k)
}

/// `(a_k, b_k, c_k)`, the multiplicities of `s[3]`, `s[2,1]` and `s[1^3]` in
/// `S_k(Gamma_1[2])`, from `t^12/((1-t^4)(1-t^6))`, `t^8/((1-t^2)(1-t^6))`
/// and `t^6/((1-t^4)(1-t^6))`.
pub fn level2_elliptic_dims(k: u32) -> (i64, i64, i64) {
    (level1_dim(k), coeff(8, &[2, 6], k), coeff(6, &[4, 6], k))
}

/// `(dim S_k^+(Gamma0(2))^new, dim S_k^-(Gamma0(2))^new)`: the total is
/// `b_k - a_k` and the difference is `-1, 0, 0, 1` for `k = 2, 4, 6, 0 mod 8`.
pub fn fricke_split(k: u32) -> Result<(i64, i64), DimsError> {
    if k % 2 == 1 || k <= 2 {
        return Err(DimsError::Weight(k));
    }
    let (a, b, _) = level2_elliptic_dims(k);
    let total = b - a;
    let d = match k % 8 {
        2 => -1,
        0 => 1,
        _ => 0,
    };
    if (total - d) % 2 != 0 {
        return Err(DimsError::Parity { k, total, d });
    }
    Ok(((total + d) / 2, (total - d) / 2))
}

fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}

pub const P_1_6: [u32; 6] = [1, 1, 1, 1, 1, 1];
pub const P_2_1_4: [u32; 5] = [2, 1, 1, 1, 1];
pub const P_2_3: [u32; 3] = [2, 2, 2];

/// Multiplicity of the `s[partition]` part of `S_{j,2}(Gamma_2[2])`
/// spanned by Yoshida-type lifts from weight `j + 2`:
/// `[1^6]: dim+ dim-`, `[2,1^4]: C(c_{j+2}, 2)`, `[2^3]: C(dim+, 2) + C(dim-, 2)`.
pub fn yoshida_multiplicity(j: u32, partition: &[u32]) -> Result<i64, DimsError> {
    if j % 2 == 1 {
        return Err(DimsError::OddJ(j));
    }
    let w = j + 2;
    let split = || if w > 2 { fricke_split(w) } else { Ok((0, 0)) };
    match partition {
        [1, 1, 1, 1, 1, 1] => split().map(|(p, m)| p * m),
        [2, 1, 1, 1, 1] => Ok(choose2(level2_elliptic_dims(w).2)),
        [2, 2, 2] => split().map(|(p, m)| choose2(p) + choose2(m)),
        _ => Err(DimsError::Partition(partition.to_vec())),
    }
}

/// All partitions of 6, largest parts first.
pub fn partitions_of_6() -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(6, 6, &mut Vec::new(), &mut out);
    out
}

fn partition_label(p: &[u32]) -> String {
    let mut s = String::from("[");
    let mut i = 0;
    while i < p.len() {
        let n = p[i..].iter().take_while(|&&x| x == p[i]).count();
        if i > 0 {
            s.push(',');
        }
        if n == 1 {
            let _ = write!(s, "{}", p[i]);
        } else {
            let _ = write!(s, "{}^{}", p[i], n);
        }
        i += n;
    }
    s.push(']');
    s
}

/// Predicted multiplicities of the isotypic parts of `S_{j,2}(Gamma_2[2])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicTable {
    pub j: u32,
    pub entries: BTreeMap<Vec<u32>, i64>,
}

impl IsotypicTable {
    pub fn get(&self, partition: &[u32]) -> i64 {
        self.entries.get(partition).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|&x| x == 0)
    }

    pub fn to_json(&self) -> Value {
        let e: serde_json::Map<String, Value> =
            self.entries.iter().map(|(p, m)| (partition_label(p), json!(m))).collect();
        json!({"j": self.j, "status": if self.j <= 30 { "consistent for j <= 30" } else { "predicted" }, "entries": e})
    }
}

/// Every partition of 6, with the Yoshida-type counts in the three
/// supported slots and zero elsewhere.
pub fn conjecture_table(j: u32) -> Result<IsotypicTable, DimsError> {
    let mut entries = BTreeMap::new();
    for p in partitions_of_6() {
        let m = match p.as_slice() {
            [1, 1, 1, 1, 1, 1] | [2, 1, 1, 1, 1] | [2, 2, 2] => yoshida_multiplicity(j, &p)?,
            _ => 0,
        };
        entries.insert(p, m);
    }
    Ok(IsotypicTable { j, entries })
}

/// `dim S_{j,2}(Gamma_2, eps)` predicted by `t^12/((1-t^6)(1-t^8)(1-t^12))`.
pub fn eps_weight2_series(j: u32) -> i64 {
    coeff(12, &[6, 8, 12], j)
}

/// `dim S_{j,7}(Gamma_2)` from `t^12/((1-t^2)(1-t^6)(1-t^8)(1-t^12))`.
pub fn weight7_dim(j: u32) -> i64 {
    coeff(12, &[2, 6, 8, 12], j)
}

/// Dimension of the target of the diagonal restriction on `S_{j,7}`:
/// `sum_{i<j/2} dim S_{j+7-i} dim S_{7+i} + dim wedge^2 S_{j/2+7}`.
pub fn restriction_target_dim(j: u32) -> i64 {
    let pairs: i64 = (0..j / 2).map(|i| level1_dim(j + 7 - i) * level1_dim(7 + i)).sum();
    pairs + choose2(level1_dim(j / 2 + 7))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub j: u32,
    pub identity: &'static str,
    pub lhs: i64,
    pub rhs: i64,
}

impl CheckLine {
    pub fn ok(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub lines: Vec<CheckLine>,
}

impl ConsistencyReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(CheckLine::ok)
    }

    pub fn to_json(&self) -> Value {
        let lines: Vec<Value> = self
            .lines
            .iter()
            .map(|l| json!({"j": l.j, "identity": l.identity, "lhs": l.lhs, "rhs": l.rhs, "ok": l.ok()}))
            .collect();
        json!({"all_pass": self.all_pass(), "lines": lines})
    }
}

/// For even `j <= min(jmax, 30)`: the weight-2 series against the `[1^6]`
/// Yoshida count, and `dim S_{j,7} - dim S_{j,2}(eps)` against the
/// dimension of the restriction target.
pub fn consistency_checks(jmax: u32) -> ConsistencyReport {
    let mut lines = Vec::new();
    for j in (0..=jmax.min(30)).step_by(2) {
        let eps = eps_weight2_series(j);
        lines.push(CheckLine {
            j,
            identity: "eps_series_vs_yoshida",
            lhs: eps,
            rhs: yoshida_multiplicity(j, &P_1_6).expect("even j"),
        });
        lines.push(CheckLine {
            j,
            identity: "weight7_exact_sequence",
            lhs: weight7_dim(j) - eps,
            rhs: restriction_target_dim(j),
        });
    }
    ConsistencyReport { lines }
}

/// Which table the `dims` command prints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Conjecture,
    Series,
    Yoshida,
}

/// Header and rows of a table for even `j` (or `k`) up to `jmax`.
pub fn table_rows(kind: TableKind, jmax: u32) -> Result<(Vec<String>, Vec<Vec<String>>), DimsError> {
    let mut rows = Vec::new();
    let header: Vec<String> = match kind {
        TableKind::Conjecture => {
            let mut h = vec!["j".to_string()];
            h.extend(partitions_of_6().iter().map(|p| partition_label(p)));
            for j in (0..=jmax).step_by(2) {
                let t = conjecture_table(j)?;
                let mut r = vec![j.to_string()];
                r.extend(partitions_of_6().iter().map(|p| t.get(p).to_string()));
                rows.push(r);
            }
            h
        }
        TableKind::Series => {
            for k in (0..=jmax).step_by(2) {
                let (a, b, c) = level2_elliptic_dims(k);
                let (p, m) = if k > 2 { fricke_split(k)? } else { (0, 0) };
                rows.push([k as i64, a, b, c, p, m].iter().map(i64::to_string).collect());
            }
            ["k", "a_k", "b_k", "c_k", "new_plus", "new_minus"].map(String::from).to_vec()
        }
        TableKind::Yoshida => {
            for j in (0..=jmax).step_by(2) {
                let vals = [
                    j as i64,
                    eps_weight2_series(j),
                    yoshida_multiplicity(j, &P_1_6)?,
                    yoshida_multiplicity(j, &P_2_1_4)?,
                    yoshida_multiplicity(j, &P_2_3)?,
                    weight7_dim(j),
                    restriction_target_dim(j),
                ];
                rows.push(vals.iter().map(i64::to_string).collect());
            }
            ["j", "eps_series", "y_1^6", "y_2,1^4", "y_2^3", "dim_S_j7", "restriction_target"].map(String::from).to_vec()
        }
    };
    Ok((header, rows))
}

pub fn to_csv(header: &[String], rows: &[Vec<String>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level2_examples() {
        assert_eq!(level2_elliptic_dims(12), (1, 1, 1));
        assert_eq!(level2_elliptic_dims(8), (0, 1, 0));
        assert_eq!(level2_elliptic_dims(6), (0, 0, 1));
    }

    #[test]
    fn fricke_examples() {
        assert_eq!(fricke_split(14), Ok((1, 1)));
        assert_eq!(fricke_split(8), Ok((1, 0)));
        assert_eq!(fricke_split(26), Ok((1, 2)));
        assert!(fricke_split(7).is_err());
    }

    #[test]
    fn yoshida_examples() {
        assert_eq!(yoshida_multiplicity(12, &P_1_6), Ok(1));
        assert_eq!(yoshida_multiplicity(24, &P_1_6), Ok(2));
        assert_eq!(yoshida_multiplicity(24, &P_2_3), Ok(1));
        assert_eq!(yoshida_multiplicity(24, &P_2_1_4), Ok(1));
        assert!(yoshida_multiplicity(12, &[3, 3]).is_err());
    }

    #[test]
    fn conjecture_tables() {
        assert_eq!(partitions_of_6().len(), 11);
        assert!(conjecture_table(10).unwrap().is_zero());
        let t = conjecture_table(12).unwrap();
        assert_eq!(t.get(&P_1_6), 1);
        assert_eq!(t.entries.values().sum::<i64>(), 1);
        let t = conjecture_table(24).unwrap();
        assert_eq!((t.get(&P_1_6), t.get(&P_2_1_4), t.get(&P_2_3)), (2, 1, 1));
    }

    #[test]
    fn consistency_up_to_30() {
        let r = consistency_checks(30);
        assert_eq!(r.lines.len(), 32);
        assert!(r.all_pass(), "{:?}", r.lines.iter().filter(|l| !l.ok()).collect::<Vec<_>>());
        assert_eq!(eps_weight2_series(14), 0);
        assert_eq!(restriction_target_dim(14), 1);
    }

    #[test]
    fn labels() {
        assert_eq!(partition_label(&P_2_1_4), "[2,1^4]");
        assert_eq!(partition_label(&[6]), "[6]");
    }
}

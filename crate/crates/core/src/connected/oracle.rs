use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::trichotomy::{components_on, extend_type_ii, trichotomy, type_ii_slots, TrichotomyCase};
use crate::colorings::{ColorTable, EdgeColoring};
use crate::engine::OracleSummary;
use crate::error::ensure;
use crate::{ColorId, Result, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrichotomyOracle {
    pub summary: OracleSummary,
    /// Colorings certified as case (i), (ii), (iii).
    pub case_counts: [u64; 3],
    /// Colorings whose `[n-1]` is case (ii), with the new vertex classified.
    pub extension_checked: u64,
    /// Among those: the new vertex fits exactly one part.
    pub extension_one_part: u64,
    /// Among those: it fits no part and `[n]` has a spanning color.
    pub extension_spanning: u64,
    pub extension_failures: u64,
}

fn table(n: u32, mut idx: u64) -> ColorTable {
    let e = (n * (n - 1) / 2) as usize;
    let mut digits = Vec::with_capacity(e);
    for _ in 0..e {
        digits.push((idx % 3) as u8);
        idx /= 3;
    }
    ColorTable::from_pair_colors(n, 3, digits)
}

/// Every 3-coloring of `K_n` (`n ≤ 6`): a validated certificate, and for colorings whose
/// `[n-1]` is case (ii), the vertex `n` fits exactly one part unless `[n]` has a spanning color.
pub fn trichotomy_oracle(n: u32) -> Result<TrichotomyOracle> {
    ensure!((2..=6).contains(&n), Budget, "exhaustive trichotomy oracle supports 2 ≤ n ≤ 6");
    let total = 3u64.pow(n * (n - 1) / 2);
    // (cases, ext_checked, ext_one, ext_span, ext_fail, failures, first_failure)
    type Acc = ([u64; 3], u64, u64, u64, u64, u64, Option<u64>);
    let zero: fn() -> Acc = || ([0; 3], 0, 0, 0, 0, 0, None);
    let merge = |a: Acc, b: Acc| -> Acc {
        (
            [a.0[0] + b.0[0], a.0[1] + b.0[1], a.0[2] + b.0[2]],
            a.1 + b.1,
            a.2 + b.2,
            a.3 + b.3,
            a.4 + b.4,
            a.5 + b.5,
            match (a.6, b.6) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            },
        )
    };
    let acc = (0..total)
        .into_par_iter()
        .map(|idx| {
            let t = table(n, idx);
            let mut a = zero();
            match trichotomy(&t) {
                Ok(cert) => {
                    let i = match cert.case {
                        TrichotomyCase::I => 0,
                        TrichotomyCase::II => 1,
                        TrichotomyCase::III => 2,
                    };
                    a.0[i] = 1;
                }
                Err(_) => {
                    a.5 = 1;
                    a.6 = Some(idx);
                }
            }
            if n >= 3 {
                let sub = ColorTable::from_coloring(&Restricted { host: &t, n: n - 1 });
                if let Ok(cert) = trichotomy(&sub) {
                    if cert.case == TrichotomyCase::II {
                        a.1 = 1;
                        let slots = type_ii_slots(&t, &cert, n);
                        let verts: Vec<Vertex> = (1..=n).collect();
                        let spans = (0..3).any(|c| components_on(&t, &verts, ColorId(c)).len() == 1);
                        let extended = extend_type_ii(&t, &cert);
                        match (slots.len(), spans, extended) {
                            (1, _, Ok(Some(_))) => a.2 = 1,
                            (0, true, Ok(None)) => a.3 = 1,
                            _ => a.4 = 1,
                        }
                    }
                }
            }
            a
        })
        .reduce(zero, merge);
    let summary = OracleSummary {
        oracle: "trichotomy".into(),
        n,
        instances: total,
        symmetry_pruned: false,
        extremal_value: None,
        extremal_coloring: None,
        failures: acc.5 + acc.4,
        first_failure: acc.6.map(|i| format!("coloring index {i}")),
    };
    Ok(TrichotomyOracle {
        summary,
        case_counts: acc.0,
        extension_checked: acc.1,
        extension_one_part: acc.2,
        extension_spanning: acc.3,
        extension_failures: acc.4,
    })
}

struct Restricted<'a> {
    host: &'a ColorTable,
    n: u32,
}

impl EdgeColoring for Restricted<'_> {
    fn order(&self) -> u32 {
        self.n
    }
    fn num_colors(&self) -> u8 {
        self.host.num_colors()
    }
    fn is_directed(&self) -> bool {
        false
    }
    fn color(&self, u: Vertex, v: Vertex) -> ColorId {
        self.host.color(u, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_exhaustive() {
        let o = trichotomy_oracle(4).unwrap();
        assert!(o.summary.passed(), "{o:?}");
        assert_eq!(o.case_counts.iter().sum::<u64>(), 729);
    }
}

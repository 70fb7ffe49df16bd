use serde::{Deserialize, Serialize};

use crate::error::ensure;
use crate::{Result, Vertex};

/// Integer-valued function descriptor for growth rules such as `h(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IntFn {
    Const { c: u64 },
    /// `a * n + b`
    Linear { a: u64, b: u64 },
    /// `n^e`
    Power { e: u32 },
    /// `base^n`
    Exp { base: u64 },
    Factorial,
    /// `values[n - 1]`; undefined past the end.
    Table { values: Vec<u64> },
}

impl IntFn {
    pub fn eval(&self, n: u64) -> Option<u64> {
        match self {
            IntFn::Const { c } => Some(*c),
            IntFn::Linear { a, b } => Some(a.saturating_mul(n).saturating_add(*b)),
            IntFn::Power { e } => Some(n.saturating_pow(*e)),
            IntFn::Exp { base } => Some(base.saturating_pow(n.min(u32::MAX as u64) as u32)),
            IntFn::Factorial => Some((2..=n).fold(1u64, |acc, i| acc.saturating_mul(i))),
            IntFn::Table { values } => values.get(n.checked_sub(1)? as usize).copied(),
        }
    }

    /// Rejects functions that decrease somewhere in their checkable range.
    pub fn validate_nondecreasing(&self) -> Result<()> {
        let horizon = match self {
            IntFn::Table { values } => {
                ensure!(!values.is_empty(), Param, "empty growth table");
                values.len() as u64
            }
            _ => 64,
        };
        let mut prev = 0;
        for n in 1..=horizon {
            let v = self.eval(n).unwrap_or(u64::MAX);
            ensure!(v >= prev, Param, "growth function decreases at n={n} ({prev} -> {v})");
            prev = v;
        }
        Ok(())
    }
}

/// How interval sizes are generated, by 1-based position in the sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SizeRule {
    /// Finite list; the partition covers only `sum(sizes)`.
    Explicit { sizes: Vec<u64> },
    /// `s_1 = first`, `s_{p+1} = ceil(s_p * num / den)`.
    Geometric { first: u64, num: u64, den: u64 },
    /// `s_p = p!`
    Factorial,
    /// `s_p = max(1, h(p))`, or `max(1, p * h(p))` when `times_position` is set.
    Function { h: IntFn, times_position: bool },
}

/// A partition of the naturals into consecutive intervals `A_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalPartition {
    pub rule: SizeRule,
    /// Label of the first interval (`A_0` or `A_1` depending on the construction).
    #[serde(default = "one")]
    pub first_index: u32,
}

fn one() -> u32 {
    1
}

impl IntervalPartition {
    pub fn explicit(sizes: Vec<u64>, first_index: u32) -> Self {
        IntervalPartition { rule: SizeRule::Explicit { sizes }, first_index }
    }

    pub fn factorial(first_index: u32) -> Self {
        IntervalPartition { rule: SizeRule::Factorial, first_index }
    }

    pub fn geometric(first: u64, num: u64, den: u64, first_index: u32) -> Self {
        IntervalPartition { rule: SizeRule::Geometric { first, num, den }, first_index }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.rule {
            SizeRule::Explicit { sizes } => {
                ensure!(!sizes.is_empty(), Param, "explicit partition has no intervals");
                ensure!(sizes.iter().all(|&s| s > 0), Param, "interval sizes must be positive");
            }
            SizeRule::Geometric { first, num, den } => {
                ensure!(*first > 0 && *den > 0, Param, "geometric partition needs first, den > 0");
                ensure!(num >= den, Param, "geometric ratio must be at least 1");
            }
            SizeRule::Factorial => {}
            SizeRule::Function { h, .. } => h.validate_nondecreasing()?,
        }
        Ok(())
    }

    /// Size of the interval at 1-based position `p`, if defined.
    fn size_at(&self, p: u64, prev: u64) -> Option<u64> {
        match &self.rule {
            SizeRule::Explicit { sizes } => sizes.get(p as usize - 1).copied(),
            SizeRule::Geometric { first, num, den } => {
                if p == 1 {
                    Some(*first)
                } else {
                    Some(((prev as u128 * *num as u128).div_ceil(*den as u128)).min(u64::MAX as u128) as u64)
                }
            }
            SizeRule::Factorial => IntFn::Factorial.eval(p),
            SizeRule::Function { h, times_position } => {
                let v = h.eval(p)?;
                let v = if *times_position { v.saturating_mul(p) } else { v };
                Some(v.max(1))
            }
        }
    }

    /// Materialize the intervals meeting `[n]`. The last interval is truncated at `n`.
    pub fn materialize(&self, n: u32) -> Result<Intervals> {
        self.validate()?;
        let mut ends = Vec::new();
        let mut full_sizes = Vec::new();
        let mut covered: u64 = 0;
        let mut prev = 0;
        let mut p = 1;
        while covered < n as u64 {
            let s = self
                .size_at(p, prev)
                .ok_or_else(|| crate::Error::Param(format!("partition covers only [{covered}], need [{n}]")))?;
            ensure!(s > 0, Param, "interval sizes must be positive");
            full_sizes.push(s);
            covered = covered.saturating_add(s);
            ends.push(covered.min(n as u64) as Vertex);
            prev = s;
            p += 1;
        }
        let mut class = Vec::with_capacity(n as usize);
        let mut start = 1;
        for (i, &e) in ends.iter().enumerate() {
            class.extend(std::iter::repeat(i as u32).take((e + 1 - start) as usize));
            start = e + 1;
        }
        Ok(Intervals { first_index: self.first_index, ends, full_sizes, class })
    }

    /// Whether `|A_p| / (|A_1| + ... + |A_p|)` is nondecreasing from position 2 on,
    /// over the intervals fully contained in `[n]`.
    pub fn is_fast_growing(&self, n: u32) -> Result<bool> {
        let iv = self.materialize(n)?;
        let mut sum: u128 = 0;
        let mut last: Option<(u128, u128)> = None;
        for (p, &s) in iv.full_sizes.iter().enumerate() {
            sum += s as u128;
            if sum > n as u128 {
                break;
            }
            if p == 0 {
                continue;
            }
            let cur = (s as u128, sum);
            if let Some((a, b)) = last {
                if cur.0 * b < a * cur.1 {
                    return Ok(false);
                }
            }
            last = Some(cur);
        }
        Ok(true)
    }
}

/// Intervals of a partition restricted to `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intervals {
    pub first_index: u32,
    /// Inclusive right end of each interval (the last one clipped at `n`).
    pub ends: Vec<Vertex>,
    /// Untruncated sizes.
    pub full_sizes: Vec<u64>,
    class: Vec<u32>,
}

impl Intervals {
    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    /// 0-based position of the interval containing `v`.
    pub fn position(&self, v: Vertex) -> u32 {
        self.class[v as usize - 1]
    }

    /// Label (`first_index + position`) of the interval containing `v`.
    pub fn label(&self, v: Vertex) -> u32 {
        self.first_index + self.position(v)
    }

    pub fn start(&self, pos: usize) -> Vertex {
        if pos == 0 {
            1
        } else {
            self.ends[pos - 1] + 1
        }
    }

    pub fn range(&self, pos: usize) -> std::ops::RangeInclusive<Vertex> {
        self.start(pos)..=self.ends[pos]
    }

    /// Ends of intervals lying entirely within the prefix.
    pub fn complete_ends(&self) -> Vec<Vertex> {
        let mut start: u64 = 1;
        let mut out = Vec::new();
        for (i, &e) in self.ends.iter().enumerate() {
            if start + self.full_sizes[i] - 1 == e as u64 {
                out.push(e);
            }
            start = e as u64 + 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_partition_classes() {
        let iv = IntervalPartition::explicit(vec![1, 2, 4], 1).materialize(7).unwrap();
        assert_eq!(iv.ends, vec![1, 3, 7]);
        assert_eq!(iv.label(1), 1);
        assert_eq!(iv.label(3), 2);
        assert_eq!(iv.label(7), 3);
        assert!(IntervalPartition::explicit(vec![1, 2, 4], 1).materialize(8).is_err());
    }

    #[test]
    fn truncated_last_interval() {
        let iv = IntervalPartition::factorial(1).materialize(10).unwrap();
        assert_eq!(iv.ends, vec![1, 3, 9, 10]);
        assert_eq!(iv.complete_ends(), vec![1, 3, 9]);
    }

    #[test]
    fn fast_growing_detection() {
        assert!(IntervalPartition::factorial(1).is_fast_growing(10_000).unwrap());
        assert!(!IntervalPartition::geometric(1, 2, 1, 1).is_fast_growing(10_000).unwrap());
        assert!(!IntervalPartition::explicit(vec![1, 2, 4], 1).is_fast_growing(7).unwrap());
    }

    #[test]
    fn geometric_sizes() {
        let iv = IntervalPartition::geometric(1, 2, 1, 0).materialize(15).unwrap();
        assert_eq!(iv.ends, vec![1, 3, 7, 15]);
        let iv = IntervalPartition::geometric(2, 3, 2, 0).materialize(20).unwrap();
        assert_eq!(iv.full_sizes, vec![2, 3, 5, 8, 12]);
    }

    #[test]
    fn decreasing_table_rejected() {
        let h = IntFn::Table { values: vec![3, 2, 5] };
        assert!(h.validate_nondecreasing().is_err());
        assert!(IntFn::Const { c: 1 }.validate_nondecreasing().is_ok());
    }
}

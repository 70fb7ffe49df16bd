use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::colorings::IntervalPartition;
use crate::error::ensure;
use crate::{Ratio, Result};

/// Per-interval tolerances `ε_n`, lower sizes `k_n` and the resulting interval sizes `a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub eps: Vec<Ratio>,
    pub k: Vec<u32>,
    pub sizes: Vec<u64>,
}

fn ceil(r: Ratio) -> u64 {
    r.ceil().to_integer()
}

fn default_eps(i: usize) -> Ratio {
    Ratio::new(1, i as u64 + 4)
}

fn default_k(eps: Ratio) -> u32 {
    ceil(Ratio::from_integer(3) / eps) as u32
}

fn check(eps: &[Ratio], k: &[u32]) -> Result<()> {
    ensure!(!eps.is_empty() && eps.len() == k.len(), Param, "need equally many eps and k values, at least one");
    for (i, (&e, &k)) in eps.iter().zip(k).enumerate() {
        ensure!(e > Ratio::zero() && e < Ratio::one(), Param, "eps[{i}] = {e} must lie in (0, 1)");
        ensure!(Ratio::from_integer(k as u64) * e >= Ratio::from_integer(3), Param, "k[{i}] = {k} is below 3/eps");
    }
    Ok(())
}

impl Schedule {
    /// `a_n = ⌈4 k_n / ε_n⌉`
    pub fn upper(eps: Vec<Ratio>, k: Vec<u32>) -> Result<Schedule> {
        check(&eps, &k)?;
        let sizes = eps.iter().zip(&k).map(|(&e, &k)| ceil(Ratio::from_integer(4 * k as u64) / e)).collect();
        Ok(Schedule { eps, k, sizes })
    }

    /// `ε_n = 1/(n+3)`, `k_n = ⌈3/ε_n⌉`, `a_n = ⌈4k_n/ε_n⌉`, with enough intervals to cover `[n]`.
    pub fn upper_default(n: u32) -> Schedule {
        let (mut eps, mut k, mut covered) = (Vec::new(), Vec::new(), 0u64);
        while covered < n as u64 {
            let e = default_eps(eps.len());
            let kk = default_k(e);
            covered += ceil(Ratio::from_integer(4 * kk as u64) / e);
            eps.push(e);
            k.push(kk);
        }
        Schedule::upper(eps, k).expect("default schedule is valid")
    }

    /// `a_n = max(k_n, 6, ⌈(1 − ε_n)/ε_n · (a_1 + ... + a_{n-1})⌉)`, so every interval has
    /// local density at least `1 − ε_n`.
    pub fn strong(eps: Vec<Ratio>, k: Vec<u32>) -> Result<Schedule> {
        check(&eps, &k)?;
        let mut sizes = Vec::with_capacity(eps.len());
        let mut prefix = 0u64;
        for (&e, &k) in eps.iter().zip(&k) {
            let grow = ceil((Ratio::one() - e) / e * Ratio::from_integer(prefix));
            let a = grow.max(k as u64).max(6);
            sizes.push(a);
            prefix += a;
        }
        Ok(Schedule { eps, k, sizes })
    }

    /// The strong schedule for `ε_n = 1/(n+3)`, `k_n = ⌈3/ε_n⌉`, covering `[n]`.
    pub fn strong_default(n: u32) -> Schedule {
        let mut count = 1;
        loop {
            let eps: Vec<Ratio> = (0..count).map(default_eps).collect();
            let k = eps.iter().map(|&e| default_k(e)).collect();
            let s = Schedule::strong(eps, k).expect("default schedule is valid");
            if s.sizes.iter().sum::<u64>() >= n as u64 {
                return s;
            }
            count += 1;
        }
    }

    pub fn partition(&self) -> IntervalPartition {
        IntervalPartition::explicit(self.sizes.clone(), 1)
    }
}

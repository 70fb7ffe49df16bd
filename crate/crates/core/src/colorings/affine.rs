use crate::error::ensure;
use crate::Result;

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// The affine plane AG(2, q) over the prime field of order `q`.
///
/// Points are numbered `0..q*q` with point `c` at `(c mod q, c div q)`.
/// Parallel classes are numbered `0..q` for slopes and `q` for verticals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePlane {
    q: u32,
    inverse: Vec<u32>,
}

impl AffinePlane {
    pub fn new(q: u32) -> Result<Self> {
        ensure!(is_prime(q), Param, "affine plane order {q} is not prime");
        ensure!(q <= 1021, Param, "affine plane order {q} too large");
        let mut inverse = vec![0; q as usize];
        for a in 1..q {
            inverse[a as usize] = (1..q).find(|b| (a * b) % q == 1).unwrap();
        }
        Ok(AffinePlane { q, inverse })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn num_points(&self) -> u32 {
        self.q * self.q
    }

    pub fn num_parallel_classes(&self) -> u32 {
        self.q + 1
    }

    pub fn point(&self, c: u32) -> (u32, u32) {
        (c % self.q, c / self.q)
    }

    /// Parallel class of the unique line through distinct points `a` and `b`.
    pub fn parallel_class(&self, a: u32, b: u32) -> u32 {
        debug_assert_ne!(a, b);
        let q = self.q;
        let (x1, y1) = self.point(a);
        let (x2, y2) = self.point(b);
        if x1 == x2 {
            return q;
        }
        let dx = (x2 + q - x1) % q;
        let dy = (y2 + q - y1) % q;
        (dy * self.inverse[dx as usize]) % q
    }

    /// All lines as `(parallel class, sorted points)`, built from their equations.
    pub fn lines(&self) -> Vec<(u32, Vec<u32>)> {
        let q = self.q;
        let mut out = Vec::new();
        for m in 0..q {
            for b in 0..q {
                let mut pts: Vec<u32> = (0..q).map(|x| ((m * x + b) % q) * q + x).collect();
                pts.sort_unstable();
                out.push((m, pts));
            }
        }
        for x in 0..q {
            out.push((q, (0..q).map(|y| y * q + x).collect()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&q| is_prime(q)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(AffinePlane::new(4).is_err());
    }

    #[test]
    fn ag23_has_twelve_lines_and_is_pairwise_balanced() {
        let plane = AffinePlane::new(3).unwrap();
        let lines = plane.lines();
        assert_eq!(lines.len(), 12);
        for a in 0..9 {
            for b in 0..9 {
                if a == b {
                    continue;
                }
                let through: Vec<_> = lines.iter().filter(|(_, l)| l.contains(&a) && l.contains(&b)).collect();
                assert_eq!(through.len(), 1, "points {a},{b}");
                assert_eq!(through[0].0, plane.parallel_class(a, b));
            }
        }
        for k in 0..4 {
            let mut cover: Vec<u32> = lines.iter().filter(|(c, _)| *c == k).flat_map(|(_, l)| l.clone()).collect();
            cover.sort_unstable();
            assert_eq!(cover, (0..9).collect::<Vec<_>>());
        }
    }
}

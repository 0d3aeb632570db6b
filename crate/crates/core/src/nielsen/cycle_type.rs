use std::fmt;

use super::perm::{Perm, MAX_DEGREE};
use crate::error::{Error, Result};

/// Partition of `n` recording the cycle lengths of a permutation, descending,
/// fixed points included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<u8>,
}

impl CycleType {
    pub fn new(mut parts: Vec<u8>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n: usize = parts.iter().map(|&p| p as usize).sum();
        if parts.contains(&0) || n == 0 || n > MAX_DEGREE {
            return Err(Error::Domain(format!("{parts:?} is not a partition of 1..={MAX_DEGREE}")));
        }
        Ok(Self { parts })
    }

    pub fn of(p: &Perm) -> Self {
        Self { parts: p.cycle_lengths() }
    }

    /// Parses the compact notation used for ramification data in degree `n`:
    /// factors `k` or `k^m` joined by `.` (or written as `(k)` / `(k)^m`),
    /// padded with fixed points. `"4.2"` in degree 8 is `4+2+1+1`; `"1"` is
    /// the identity.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("cycle type {s:?}: {why}"));
        if n == 0 || n > MAX_DEGREE {
            return Err(bad("degree out of range"));
        }
        let normalized = s.trim().replace(")(", ".").replace(['(', ')'], "");
        if normalized.is_empty() {
            return Err(bad("empty"));
        }
        let mut parts = Vec::new();
        for factor in normalized.split('.') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e),
                None => (factor, "1"),
            };
            let base: usize = base.trim().parse().map_err(|_| bad("bad cycle length"))?;
            let exp: usize = exp.trim().parse().map_err(|_| bad("bad exponent"))?;
            if base == 0 || base > n || exp > n {
                return Err(bad("cycle length or multiplicity exceeds degree"));
            }
            if base > 1 {
                parts.extend(std::iter::repeat(base as u8).take(exp));
            }
        }
        let used: usize = parts.iter().map(|&p| p as usize).sum();
        if used > n {
            return Err(bad("cycles exceed degree"));
        }
        parts.extend(std::iter::repeat(1u8).take(n - used));
        Self::new(parts)
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    /// `n - #cycles`, the ramification contributed by one branch point.
    pub fn index(&self) -> usize {
        self.degree() - self.parts.len()
    }

    pub fn is_even(&self) -> bool {
        self.index() % 2 == 0
    }

    /// Size of the centralizer `prod k^(m_k) m_k!`.
    pub fn centralizer_order(&self) -> u64 {
        let mut out = 1u64;
        let mut i = 0;
        while i < self.parts.len() {
            let k = self.parts[i] as u64;
            let mut m = 0u64;
            while i < self.parts.len() && self.parts[i] as u64 == k {
                m += 1;
                i += 1;
            }
            out *= k.pow(m as u32) * (1..=m).product::<u64>();
        }
        out
    }

    pub fn class_size(&self) -> u64 {
        (1..=self.degree() as u64).product::<u64>() / self.centralizer_order()
    }

    /// Canonical element: consecutive points in cycles of decreasing length.
    pub fn representative(&self) -> Perm {
        let n = self.degree();
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &k in &self.parts {
            let k = k as usize;
            for j in 0..k {
                images[start + j] = start + (j + 1) % k;
            }
            start += k;
        }
        Perm::from_images(&images).expect("valid by construction")
    }

    /// Every permutation of this cycle type, in a fixed order.
    pub fn elements(&self) -> Vec<Perm> {
        let n = self.degree();
        let mut remaining = [0usize; MAX_DEGREE + 1];
        for &p in &self.parts {
            remaining[p as usize] += 1;
        }
        let mut out = Vec::with_capacity(self.class_size() as usize);
        let mut state = Builder {
            n,
            img: [0u8; MAX_DEGREE],
            used: [false; MAX_DEGREE],
            remaining,
        };
        state.open_cycle(&mut out);
        out
    }
}

/// Each permutation is produced once: the smallest unused point opens the next
/// cycle, the cycle length is drawn from the remaining multiset, and the other
/// points follow in any order.
struct Builder {
    n: usize,
    img: [u8; MAX_DEGREE],
    used: [bool; MAX_DEGREE],
    remaining: [usize; MAX_DEGREE + 1],
}

impl Builder {
    fn open_cycle(&mut self, out: &mut Vec<Perm>) {
        let Some(start) = (0..self.n).find(|&p| !self.used[p]) else {
            out.push(Perm::from_raw(self.n, self.img));
            return;
        };
        for k in 1..=self.n {
            if self.remaining[k] == 0 {
                continue;
            }
            self.remaining[k] -= 1;
            self.used[start] = true;
            let mut cycle = Vec::with_capacity(k);
            cycle.push(start);
            self.grow(k, &mut cycle, out);
            self.used[start] = false;
            self.remaining[k] += 1;
        }
    }

    fn grow(&mut self, k: usize, cycle: &mut Vec<usize>, out: &mut Vec<Perm>) {
        if cycle.len() == k {
            for j in 0..k {
                self.img[cycle[j]] = cycle[(j + 1) % k] as u8;
            }
            self.open_cycle(out);
            return;
        }
        for p in cycle[0] + 1..self.n {
            if self.used[p] {
                continue;
            }
            self.used[p] = true;
            cycle.push(p);
            self.grow(k, cycle, out);
            cycle.pop();
            self.used[p] = false;
        }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.parts.len() {
            let k = self.parts[i];
            let mut m = 0;
            while i < self.parts.len() && self.parts[i] == k {
                m += 1;
                i += 1;
            }
            if k == 1 {
                continue;
            }
            if !first {
                write!(f, ".")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{k}")?;
            } else {
                write!(f, "{k}^{m}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

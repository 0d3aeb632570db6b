use std::fmt;

use crate::error::{domain, Result};

/// Largest supported permutation degree.
pub const MAX_DEGREE: usize = 12;

/// Permutation of `{0, .., n-1}` for `n <= MAX_DEGREE`.
///
/// Products compose left to right: `a.then(&b)` maps `i` to `b(a(i))`.
/// Image slots past `n` are always zero so derived equality is exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_DEGREE],
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE && n > 0, "degree {n} out of range");
        let mut img = [0u8; MAX_DEGREE];
        for (i, v) in img.iter_mut().enumerate().take(n) {
            *v = i as u8;
        }
        Self { n: n as u8, img }
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return domain(format!("permutation degree {n} outside 1..={MAX_DEGREE}"));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut p = Self::identity(n);
        for (i, &v) in images.iter().enumerate() {
            if v >= n || seen[v] {
                return domain(format!("{images:?} is not a permutation"));
            }
            seen[v] = true;
            p.img[i] = v as u8;
        }
        Ok(p)
    }

    /// Builds from disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a >= n || used[a] {
                    return domain(format!("bad cycle {cyc:?} in degree {n}"));
                }
                used[a] = true;
                images[a] = cyc[(k + 1) % cyc.len()];
            }
        }
        Self::from_images(&images)
    }

    pub(crate) fn from_raw(n: usize, img: [u8; MAX_DEGREE]) -> Self {
        Self { n: n as u8, img }
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img[..self.n as usize]
    }

    #[inline]
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut img = [0u8; MAX_DEGREE];
        for i in 0..self.n as usize {
            img[i] = other.img[self.img[i] as usize];
        }
        Self { n: self.n, img }
    }

    pub fn inverse(&self) -> Self {
        let mut img = [0u8; MAX_DEGREE];
        for i in 0..self.n as usize {
            img[self.img[i] as usize] = i as u8;
        }
        Self { n: self.n, img }
    }

    /// `g^-1 self g`
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().then(self).then(g)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n as usize).all(|i| self.img[i] as usize == i)
    }

    /// Number of points moved.
    pub fn support(&self) -> usize {
        (0..self.n as usize).filter(|&i| self.img[i] as usize != i).count()
    }

    /// Cycle lengths in descending order, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<u8> {
        let n = self.n as usize;
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::with_capacity(n);
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0u8;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.img[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_lengths().len()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation with 1-based points, `()` for the identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n as usize;
        let mut seen = [false; MAX_DEGREE];
        let mut any = false;
        for s in 0..n {
            if seen[s] || self.img[s] as usize == s {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = s;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.img[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

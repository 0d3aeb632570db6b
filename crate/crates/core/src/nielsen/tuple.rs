use std::fmt;

use super::cycle_type::CycleType;
use super::group::group_order_of;
use super::perm::{Perm, MAX_DEGREE};
use crate::error::{domain, Result};

/// Branch-cycle tuple: permutations with product one generating a transitive group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NielsenTuple {
    sigma: Vec<Perm>,
}

/// Canonical label of a tuple up to simultaneous conjugation.
pub type CanonicalKey = Box<[u8]>;

impl NielsenTuple {
    pub fn new(sigma: Vec<Perm>) -> Result<Self> {
        if sigma.is_empty() {
            return domain("empty tuple");
        }
        let n = sigma[0].degree();
        if sigma.iter().any(|s| s.degree() != n) {
            return domain("mixed permutation degrees");
        }
        let t = Self { sigma };
        if !t.product().is_identity() {
            return domain("product of the tuple is not the identity");
        }
        if !is_transitive(&t.sigma) {
            return domain("tuple generates an intransitive group");
        }
        Ok(t)
    }

    pub(crate) fn new_unchecked(sigma: Vec<Perm>) -> Self {
        Self { sigma }
    }

    pub fn perms(&self) -> &[Perm] {
        &self.sigma
    }

    pub fn degree(&self) -> usize {
        self.sigma[0].degree()
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn product(&self) -> Perm {
        self.sigma
            .iter()
            .fold(Perm::identity(self.degree()), |acc, s| acc.then(s))
    }

    pub fn cycle_types(&self) -> Vec<CycleType> {
        self.sigma.iter().map(CycleType::of).collect()
    }

    pub fn conjugate_by(&self, g: &Perm) -> Self {
        Self { sigma: self.sigma.iter().map(|s| s.conjugate_by(g)).collect() }
    }

    /// Hurwitz move `Q_i` (0-based `i`):
    /// `(.., s_i, s_i+1, ..) -> (.., s_i s_i+1 s_i^-1, s_i, ..)`.
    pub fn hurwitz(&self, i: usize) -> Self {
        let mut sigma = self.sigma.clone();
        let (a, b) = (sigma[i], sigma[i + 1]);
        sigma[i] = a.then(&b).then(&a.inverse());
        sigma[i + 1] = a;
        Self { sigma }
    }

    /// Inverse of [`Self::hurwitz`]: `(s_i, s_i+1) -> (s_i+1, s_i+1^-1 s_i s_i+1)`.
    pub fn hurwitz_inverse(&self, i: usize) -> Self {
        let mut sigma = self.sigma.clone();
        let (a, b) = (sigma[i], sigma[i + 1]);
        sigma[i] = b;
        sigma[i + 1] = b.inverse().then(&a).then(&b);
        Self { sigma }
    }

    /// Order of the monodromy group `<s_1, .., s_r>`.
    pub fn group_order(&self) -> u64 {
        group_order_of(&self.sigma, self.degree())
    }

    /// Lexicographically least relabeling over all breadth-first labelings;
    /// equal keys iff the tuples are simultaneously conjugate (for transitive
    /// tuples).
    pub fn canonical_key(&self) -> CanonicalKey {
        canonical_key(&self.sigma)
    }

    /// The conjugate whose image arrays spell the canonical key.
    pub fn canonical(&self) -> Self {
        let key = self.canonical_key();
        let n = self.degree();
        Self {
            sigma: key
                .chunks(n)
                .map(|c| {
                    let mut img = [0u8; MAX_DEGREE];
                    img[..n].copy_from_slice(c);
                    Perm::from_raw(n, img)
                })
                .collect(),
        }
    }
}

impl fmt::Debug for NielsenTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NielsenTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.sigma.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

pub fn is_transitive(gens: &[Perm]) -> bool {
    let n = gens[0].degree();
    let mut seen = [false; MAX_DEGREE];
    let mut stack = [0usize; MAX_DEGREE];
    let mut top = 1;
    seen[0] = true;
    let mut count = 1;
    while top > 0 {
        top -= 1;
        let x = stack[top];
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack[top] = y;
                top += 1;
                count += 1;
            }
        }
    }
    count == n
}

pub(crate) fn canonical_key(sigma: &[Perm]) -> CanonicalKey {
    let n = sigma[0].degree();
    let r = sigma.len();
    let mut best: Option<Vec<u8>> = None;
    let mut cand = vec![0u8; n * r];
    for start in 0..n {
        let mut label = [u8::MAX; MAX_DEGREE];
        let mut order = [0usize; MAX_DEGREE];
        label[start] = 0;
        order[0] = start;
        let mut next = 1usize;
        let mut head = 0usize;
        while head < next {
            let x = order[head];
            head += 1;
            for s in sigma {
                let y = s.apply(x);
                if label[y] == u8::MAX {
                    label[y] = next as u8;
                    order[next] = y;
                    next += 1;
                }
            }
        }
        debug_assert_eq!(next, n, "canonical key needs a transitive tuple");
        for (i, s) in sigma.iter().enumerate() {
            for (new, &old) in order[..n].iter().enumerate() {
                cand[i * n + new] = label[s.apply(old)];
            }
        }
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand.clone());
        }
    }
    best.expect("n >= 1").into_boxed_slice()
}

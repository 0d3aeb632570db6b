//! Order of a permutation group by deterministic Schreier–Sims.

use super::perm::{Perm, MAX_DEGREE};

struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `transversal[x]` maps the base point to `x`.
    transversal: [Option<Perm>; MAX_DEGREE],
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, n: usize) -> Self {
        let mut transversal = [None; MAX_DEGREE];
        transversal[base] = Some(Perm::identity(n));
        Self { base, gens: Vec::new(), transversal, orbit: vec![base] }
    }

    fn rebuild_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            let ux = self.transversal[x].expect("orbit point has transversal");
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    self.transversal[y] = Some(ux.then(g));
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

struct StabChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Strips `g` through the levels from `start`; returns the residue and
    /// the level where it stopped.
    fn sift(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let x = g.apply(level.base);
            match &level.transversal[x] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    /// Adds `g` (which fixes the first `j` base points) as a strong
    /// generator at level `j`, then restores the chain invariant: for every
    /// level, each Schreier generator sifts to the identity below it.
    fn extend(&mut self, j: usize, g: Perm) {
        self.insert(j, g);
        'restart: loop {
            for level in (0..self.levels.len()).rev() {
                self.rebuild(level);
                if let Some((k, res)) = self.failing_schreier(level) {
                    self.insert(k, res);
                    continue 'restart;
                }
            }
            break;
        }
    }

    fn insert(&mut self, j: usize, g: Perm) {
        if j == self.levels.len() {
            let base = (0..self.n).find(|&i| g.apply(i) != i).expect("non-identity");
            self.levels.push(Level::new(base, self.n));
        }
        self.levels[j].gens.push(g);
    }

    /// Recomputes the orbit of level `j` under the generators of all levels `>= j`.
    fn rebuild(&mut self, j: usize) {
        let gens: Vec<Perm> = self.levels[j..].iter().flat_map(|l| l.gens.iter().copied()).collect();
        let level = &mut self.levels[j];
        let saved = std::mem::take(&mut level.gens);
        level.gens = gens;
        level.rebuild_orbit();
        level.gens = saved;
    }

    fn failing_schreier(&self, j: usize) -> Option<(usize, Perm)> {
        let level = &self.levels[j];
        for &x in &level.orbit {
            let ux = level.transversal[x].expect("orbit");
            for s in self.levels[j..].iter().flat_map(|l| l.gens.iter()) {
                let y = s.apply(x);
                let uy = level.transversal[y].expect("closed orbit");
                let schreier = ux.then(s).then(&uy.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (res, k) = self.sift(schreier, j + 1);
                if !res.is_identity() {
                    return Some((k, res));
                }
            }
        }
        None
    }
}

/// Permutation group with a base and strong generating set.
pub struct PermGroup {
    chain: StabChain,
}

impl PermGroup {
    pub fn new(gens: &[Perm], n: usize) -> Self {
        let mut chain = StabChain { n, levels: Vec::new() };
        for g in gens {
            let (res, k) = chain.sift(*g, 0);
            if !res.is_identity() {
                chain.extend(k, res);
            }
        }
        Self { chain }
    }

    pub fn order(&self) -> u64 {
        self.chain.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.chain.n && self.chain.sift(*p, 0).0.is_identity()
    }
}

/// Order of `<gens>` acting on `n` points.
pub fn group_order_of(gens: &[Perm], n: usize) -> u64 {
    PermGroup::new(gens, n).order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u64) -> u64 {
        (1..=n).product()
    }

    #[test]
    fn symmetric_and_alternating() {
        for n in 2..=MAX_DEGREE {
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let c = Perm::from_images(&cycle).unwrap();
            let t = Perm::from_cycles(n, &[&[0, 1]]).unwrap();
            assert_eq!(group_order_of(&[c, t], n), factorial(n as u64), "S_{n}");
        }
        let a = Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(5, &[&[2, 3, 4]]).unwrap();
        assert_eq!(group_order_of(&[a, b], 5), 60);
    }

    #[test]
    fn membership() {
        let a = Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(5, &[&[2, 3, 4]]).unwrap();
        let g = PermGroup::new(&[a, b], 5);
        assert!(g.contains(&a.then(&b)));
        assert!(!g.contains(&Perm::from_cycles(5, &[&[0, 1]]).unwrap()));
        assert!(g.contains(&Perm::identity(5)));
    }

    #[test]
    fn small_groups() {
        assert_eq!(group_order_of(&[], 4), 1);
        let d4 = [
            Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 2]]).unwrap(),
        ];
        assert_eq!(group_order_of(&d4, 4), 8);
        // Klein four-group on 4 points
        let k = [
            Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
        ];
        assert_eq!(group_order_of(&k, 4), 4);
        // PSL(2,7) and PGL(2,7) on the projective line over F_7
        let x = Perm::from_images(&[1, 2, 3, 4, 5, 6, 0, 7]).unwrap(); // z -> z + 1, 7 = infinity
        let inv: Vec<usize> = (0..8)
            .map(|z| match z {
                0 => 7,
                7 => 0,
                z => (1..7).find(|w| (z * w) % 7 == 6).unwrap(),
            })
            .collect(); // z -> -1/z
        let y = Perm::from_images(&inv).unwrap();
        assert_eq!(group_order_of(&[x, y], 8), 168);
        let scale: Vec<usize> = (0..8).map(|z| if z == 7 { 7 } else { (3 * z) % 7 }).collect();
        let m = Perm::from_images(&scale).unwrap();
        assert_eq!(group_order_of(&[x, y, m], 8), 336);
    }
}

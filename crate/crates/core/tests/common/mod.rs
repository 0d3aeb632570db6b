#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use splitjac::nielsen::{is_transitive, CycleType, NielsenTuple, Perm};

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut img: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        img.swap(i, rng.gen_range(0..=i));
    }
    Perm::from_images(&img).unwrap()
}

/// Random transitive product-one tuple in `S_n`, `3 <= n <= 8`, length 3 to 6.
pub fn random_tuple(seed: u64) -> NielsenTuple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=8);
    let r = rng.gen_range(3..=6);
    loop {
        let mut sigma: Vec<Perm> = (0..r - 1).map(|_| random_perm(&mut rng, n)).collect();
        let prod = sigma.iter().fold(Perm::identity(n), |acc, p| acc.then(p));
        sigma.push(prod.inverse());
        if is_transitive(&sigma) {
            return NielsenTuple::new(sigma).unwrap();
        }
    }
}

pub fn sorted_types(t: &NielsenTuple) -> Vec<CycleType> {
    let mut v = t.cycle_types();
    v.sort_by(|a, b| a.parts().cmp(b.parts()));
    v
}

pub fn orbit_table_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/orbit_table.json")
}

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::cycle_type::CycleType;
use super::perm::{Perm, MAX_DEGREE};
use super::tuple::{canonical_key, is_transitive, CanonicalKey, NielsenTuple};
use crate::error::{domain, Result};

/// Result of [`enumerate_nielsen`]: one canonical tuple per
/// simultaneous-conjugacy class, sorted by canonical key.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub tuples: Vec<NielsenTuple>,
    /// Set when the cycle types cannot occur (the list is then empty).
    pub diagnostic: Option<String>,
}

/// Reason a signature admits no transitive product-one tuple, if one is
/// visible from the indices alone.
pub fn infeasibility(n: usize, types: &[CycleType]) -> Option<String> {
    let total: usize = types.iter().map(CycleType::index).sum();
    if total % 2 == 1 {
        return Some(format!("total index {total} is odd: the product cannot be the identity"));
    }
    if total < 2 * n - 2 {
        return Some(format!(
            "total index {total} < 2n-2 = {}: no transitive tuple (negative genus)",
            2 * n - 2
        ));
    }
    None
}

/// All product-one transitive tuples with the given cycle types (in this
/// order), modulo simultaneous conjugation in `S_n`.
///
/// `s_1` is pinned to the class representative, `s_2 .. s_r-1` range over
/// their full classes and `s_r` is forced by the product relation; survivors
/// are deduplicated by canonical key. Work is split over `s_2`.
pub fn enumerate_nielsen(n: usize, types: &[CycleType]) -> Result<Enumeration> {
    if types.len() < 3 {
        return domain("need at least three branch cycles");
    }
    if n == 0 || n > MAX_DEGREE {
        return domain(format!("degree {n} outside 1..={MAX_DEGREE}"));
    }
    if let Some(t) = types.iter().find(|t| t.degree() != n) {
        return domain(format!("cycle type {t} is not a partition of {n}"));
    }
    if let Some(why) = infeasibility(n, types) {
        return Ok(Enumeration { tuples: Vec::new(), diagnostic: Some(why) });
    }
    let r = types.len();
    let first = types[0].representative();
    let middle: Vec<Vec<Perm>> = types[1..r - 1].iter().map(CycleType::elements).collect();
    let last = types[r - 1].parts().to_vec();

    let keys: BTreeSet<CanonicalKey> = middle[0]
        .par_iter()
        .map(|s2| {
            let mut found = BTreeSet::new();
            let mut stack = vec![first, *s2];
            let prefix = first.then(s2);
            search(&middle[1..], prefix, &last, &mut stack, &mut found);
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });

    let tuples = keys
        .into_iter()
        .map(|k| NielsenTuple::new_unchecked(perms_from_key(&k, n)))
        .collect();
    Ok(Enumeration { tuples, diagnostic: None })
}

fn search(
    rest: &[Vec<Perm>],
    prefix: Perm,
    last: &[u8],
    stack: &mut Vec<Perm>,
    found: &mut BTreeSet<CanonicalKey>,
) {
    match rest.split_first() {
        None => {
            let closing = prefix.inverse();
            if !has_cycle_type(&closing, last) {
                return;
            }
            stack.push(closing);
            if is_transitive(stack) {
                found.insert(canonical_key(stack));
            }
            stack.pop();
        }
        Some((class, tail)) => {
            for s in class {
                stack.push(*s);
                search(tail, prefix.then(s), last, stack, found);
                stack.pop();
            }
        }
    }
}

fn has_cycle_type(p: &Perm, parts: &[u8]) -> bool {
    let n = p.degree();
    let mut seen = [false; MAX_DEGREE];
    let mut lens = [0u8; MAX_DEGREE];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p.apply(x);
            len += 1;
        }
        if count == parts.len() {
            return false;
        }
        lens[count] = len;
        count += 1;
    }
    if count != parts.len() {
        return false;
    }
    let lens = &mut lens[..count];
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens == parts
}

pub(crate) fn perms_from_key(key: &[u8], n: usize) -> Vec<Perm> {
    key.chunks(n)
        .map(|c| {
            let images: Vec<usize> = c.iter().map(|&v| v as usize).collect();
            Perm::from_images(&images).expect("keys hold permutations")
        })
        .collect()
}

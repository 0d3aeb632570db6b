use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::cycle_type::CycleType;
use super::tuple::{CanonicalKey, NielsenTuple};
use crate::error::{domain, Result};

/// Hurwitz action on conjugacy classes of tuples, over every arrangement of
/// the cycle types reachable from a seed.
pub struct OrbitGraph {
    states: Vec<NielsenTuple>,
    keys: Vec<CanonicalKey>,
    signatures: Vec<Vec<CycleType>>,
    /// `moves[i][s]`: state reached from `s` by `Q_(i+1)`.
    moves: Vec<Vec<usize>>,
}

impl OrbitGraph {
    pub fn explore(seed: &NielsenTuple) -> Self {
        let r = seed.len();
        let seed = seed.canonical();
        let mut index: HashMap<CanonicalKey, usize> = HashMap::new();
        let mut states = vec![seed.clone()];
        let mut keys = vec![seed.canonical_key()];
        index.insert(keys[0].clone(), 0);
        let mut moves: Vec<Vec<usize>> = vec![Vec::new(); r - 1];
        let mut head = 0;
        while head < states.len() {
            let cur = states[head].clone();
            for (i, table) in moves.iter_mut().enumerate() {
                let next = cur.hurwitz(i);
                let key = next.canonical_key();
                let id = *index.entry(key.clone()).or_insert_with(|| {
                    states.push(next.canonical());
                    keys.push(key);
                    states.len() - 1
                });
                table.push(id);
            }
            head += 1;
        }
        let signatures = states.iter().map(NielsenTuple::cycle_types).collect();
        Self { states, keys, signatures, moves }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, i: usize) -> &NielsenTuple {
        &self.states[i]
    }

    pub fn key(&self, i: usize) -> &CanonicalKey {
        &self.keys[i]
    }

    pub fn signature(&self, i: usize) -> &[CycleType] {
        &self.signatures[i]
    }

    pub fn arity(&self) -> usize {
        self.moves.len() + 1
    }

    /// States whose cycle types appear in the given order.
    pub fn with_signature<'a>(&'a self, sig: &'a [CycleType]) -> impl Iterator<Item = usize> + 'a {
        (0..self.len()).filter(move |&i| self.signatures[i] == sig)
    }

    /// Action of a braid word; `+k` is `Q_k`, `-k` its inverse (1-based),
    /// applied left to right.
    pub fn word(&self, word: &[i32]) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.len()).collect();
        for &letter in word {
            let i = letter.unsigned_abs() as usize - 1;
            let table = if letter > 0 { self.moves[i].clone() } else { invert(&self.moves[i]) };
            perm = perm.iter().map(|&s| table[s]).collect();
        }
        perm
    }
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Number of cycles of `p` restricted to the invariant subset `domain`.
fn cycle_count(p: &[usize], domain: &[usize]) -> usize {
    let pos: HashMap<usize, usize> = domain.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut seen = vec![false; domain.len()];
    let mut cycles = 0;
    for i in 0..domain.len() {
        if seen[i] {
            continue;
        }
        cycles += 1;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = pos[&p[domain[j]]];
        }
    }
    cycles
}

/// Braid orbit restricted to one ordering of the cycle types.
#[derive(Clone, Debug, Serialize)]
pub struct BraidOrbit {
    #[serde(serialize_with = "ser_tuple")]
    pub representative: NielsenTuple,
    pub length: usize,
    pub group_order: u64,
    pub genus: Option<i64>,
    #[serde(skip)]
    pub(crate) members: Vec<CanonicalKey>,
}

fn ser_tuple<S: serde::Serializer>(t: &NielsenTuple, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_string())
}

impl BraidOrbit {
    pub fn members(&self) -> &[CanonicalKey] {
        &self.members
    }
}

/// Splits the union of the braid orbits of `tuples` into orbits.
///
/// An orbit is explored through every arrangement of the cycle types and
/// then restricted to the arrangement of the input, so `length` counts
/// conjugacy classes of tuples in the input order. When the input is a full
/// enumeration, the lengths sum to its size. Orbits come back sorted by
/// their least canonical key.
pub fn braid_orbits(tuples: &[NielsenTuple]) -> Result<Vec<BraidOrbit>> {
    let Some(first) = tuples.first() else {
        return Ok(Vec::new());
    };
    let sig = first.cycle_types();
    if tuples.iter().any(|t| t.cycle_types() != sig) {
        return domain("braid_orbits needs tuples of one signature (same cycle types in the same order)");
    }
    let mut pending: BTreeMap<CanonicalKey, &NielsenTuple> =
        tuples.iter().map(|t| (t.canonical_key(), t)).collect();
    let mut orbits = Vec::new();
    while let Some((_, seed)) = pending.pop_first() {
        let graph = OrbitGraph::explore(seed);
        let mut members: Vec<CanonicalKey> =
            graph.with_signature(&sig).map(|i| graph.key(i).clone()).collect();
        members.sort();
        for m in &members {
            pending.remove(m);
        }
        let representative = NielsenTuple::new_unchecked(super::enumerate::perms_from_key(
            &members[0],
            seed.degree(),
        ));
        let group_order = representative.group_order();
        orbits.push(BraidOrbit { representative, length: members.len(), group_order, genus: None, members });
    }
    orbits.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    Ok(orbits)
}

/// Candidate conventions for the genus of the curve attached to a 4-point
/// braid orbit. Each is a Riemann–Hurwitz count `g = 1 - L + sum(ind)/2`
/// over three mapping classes with product one, `ind = L - #cycles`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenusConvention {
    /// Ordered branch points over the cross-ratio line: the pure twists
    /// `Q1^2`, `Q2 Q1^2 Q2^-1`, `Q2^2` acting on the orbit in the input
    /// ordering of cycle types. The default.
    PureLambdaLine,
    /// Unordered branch points over the j-line: `Q1 Q2`, `Q1 Q2 Q1`, `Q2`
    /// acting on all arrangements modulo the Klein group
    /// `<Q1 Q3^-1, (Q1 Q2 Q3)^2>`.
    ReducedJLine,
    /// `Q1 Q2`, `Q1 Q2 Q1`, `Q2` on all arrangements without the Klein
    /// quotient.
    FullArrangement,
}

impl GenusConvention {
    pub const ALL: [GenusConvention; 3] =
        [Self::PureLambdaLine, Self::ReducedJLine, Self::FullArrangement];
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenusReport {
    pub convention: GenusConvention,
    /// Size of the set the three mapping classes act on.
    pub degree: usize,
    /// Orbits of the acting group on that set; the genus is a sum over them.
    pub components: usize,
    pub indices: [usize; 3],
    pub genus: i64,
}

/// Genus under [`GenusConvention::PureLambdaLine`].
pub fn orbit_genus(o: &BraidOrbit) -> Result<i64> {
    Ok(orbit_genus_with(o, GenusConvention::PureLambdaLine)?.genus)
}

pub fn orbit_genus_with(o: &BraidOrbit, convention: GenusConvention) -> Result<GenusReport> {
    if o.representative.len() != 4 {
        return domain(format!("orbit genus needs 4 branch points, got {}", o.representative.len()));
    }
    let graph = OrbitGraph::explore(&o.representative);
    let sig = o.representative.cycle_types();
    let (elements, domain_set): (Vec<Vec<usize>>, Vec<usize>) = match convention {
        GenusConvention::PureLambdaLine => {
            let words: [&[i32]; 3] = [&[1, 1], &[2, 1, 1, -2], &[2, 2]];
            (words.iter().map(|w| graph.word(w)).collect(), graph.with_signature(&sig).collect())
        }
        GenusConvention::FullArrangement => {
            let words: [&[i32]; 3] = [&[1, 2], &[1, 2, 1], &[2]];
            (words.iter().map(|w| graph.word(w)).collect(), (0..graph.len()).collect())
        }
        GenusConvention::ReducedJLine => {
            let klein = [graph.word(&[1, -3]), graph.word(&[1, 2, 3, 1, 2, 3])];
            let (class, count) = partition(&klein, graph.len());
            let words: [&[i32]; 3] = [&[1, 2], &[1, 2, 1], &[2]];
            let mut induced = Vec::new();
            for w in words {
                let p = graph.word(w);
                let mut out = vec![usize::MAX; count];
                for (s, &c) in class.iter().enumerate() {
                    let t = class[p[s]];
                    if out[c] != usize::MAX && out[c] != t {
                        return Err(crate::Error::Inconclusive(
                            "Klein group is not normalized by the braid action".into(),
                        ));
                    }
                    out[c] = t;
                }
                induced.push(out);
            }
            (induced, (0..count).collect())
        }
    };
    let l = domain_set.len();
    let indices = [0, 1, 2].map(|k| l - cycle_count(&elements[k], &domain_set));
    let total: usize = indices.iter().sum();
    if total % 2 == 1 {
        return Err(crate::Error::Inconclusive(format!("odd total index {total}")));
    }
    let (_, components) = partition_on(&elements, &domain_set);
    Ok(GenusReport {
        convention,
        degree: l,
        components,
        indices,
        genus: 1 - l as i64 + (total / 2) as i64,
    })
}

/// Orbits of `<perms>` on `0..n`: class id per point and class count.
fn partition(perms: &[Vec<usize>], n: usize) -> (Vec<usize>, usize) {
    let mut class = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if class[s] != usize::MAX {
            continue;
        }
        class[s] = count;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for p in perms {
                let y = p[x];
                if class[y] == usize::MAX {
                    class[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    (class, count)
}

fn partition_on(perms: &[Vec<usize>], domain_set: &[usize]) -> (Vec<usize>, usize) {
    let pos: HashMap<usize, usize> = domain_set.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let local: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| domain_set.iter().map(|s| pos[&p[*s]]).collect())
        .collect();
    partition(&local, domain_set.len())
}

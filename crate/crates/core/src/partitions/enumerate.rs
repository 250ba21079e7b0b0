use std::collections::BTreeMap;

use super::Partition;
use crate::qseries::{FactorSign, Generator};

/// Restrictions on the partitions produced by [`enumerate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraints {
    modulus: u64,
    /// `allowed[r]` for residue `r` mod `modulus`.
    allowed: Vec<bool>,
    min_part: u64,
    max_part: Option<u64>,
    num_parts: Option<usize>,
    distinct: bool,
    min_gap: Option<u64>,
    class_gap: u64,
    caps: BTreeMap<u64, u32>,
}

impl Default for Constraints {
    fn default() -> Self {
        Self::new(1)
    }
}

impl Constraints {
    /// No restriction beyond a modulus for later residue constraints.
    pub fn new(modulus: u64) -> Self {
        assert!(modulus > 0);
        Constraints {
            modulus,
            allowed: vec![true; modulus as usize],
            min_part: 1,
            max_part: None,
            num_parts: None,
            distinct: false,
            min_gap: None,
            class_gap: 0,
            caps: BTreeMap::new(),
        }
    }

    /// Parts must lie in one of `residues` mod the modulus.
    pub fn residues(mut self, residues: &[u64]) -> Self {
        self.allowed = vec![false; self.modulus as usize];
        for &r in residues {
            self.allowed[(r % self.modulus) as usize] = true;
        }
        self
    }

    pub fn min_part(mut self, p: u64) -> Self {
        self.min_part = p.max(1);
        self
    }

    pub fn max_part(mut self, p: u64) -> Self {
        self.max_part = Some(p);
        self
    }

    pub fn num_parts(mut self, m: usize) -> Self {
        self.num_parts = Some(m);
        self
    }

    pub fn distinct(mut self) -> Self {
        self.distinct = true;
        self
    }

    /// Successive parts differ by more than `g`.
    pub fn min_gap(mut self, g: u64) -> Self {
        self.min_gap = Some(g);
        self
    }

    /// Successive parts within one residue class differ by at least `g`.
    pub fn class_gap(mut self, g: u64) -> Self {
        self.class_gap = g;
        self
    }

    /// Parts in residue class `r` repeat at most `cap` times each.
    pub fn max_multiplicity(mut self, r: u64, cap: u32) -> Self {
        self.caps.insert(r % self.modulus, cap);
        self
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Whether `lambda` satisfies every constraint (weight excluded).
    pub fn admits(&self, lambda: &Partition) -> bool {
        let parts = lambda.parts_desc();
        if self.num_parts.is_some_and(|m| m != parts.len()) {
            return false;
        }
        let mut last_in_class: BTreeMap<u64, u64> = BTreeMap::new();
        for (i, &p) in parts.iter().enumerate() {
            let r = p % self.modulus;
            if !self.allowed[r as usize] || p < self.min_part || self.max_part.is_some_and(|mx| p > mx) {
                return false;
            }
            if i > 0 {
                let prev = parts[i - 1];
                if self.distinct && prev == p {
                    return false;
                }
                if self.min_gap.is_some_and(|g| prev - p <= g) {
                    return false;
                }
            }
            if self.class_gap > 0 {
                if let Some(&q) = last_in_class.get(&r) {
                    if q - p < self.class_gap {
                        return false;
                    }
                }
                last_in_class.insert(r, p);
            }
            if let Some(&cap) = self.caps.get(&r) {
                if lambda.multiplicity(p) > cap {
                    return false;
                }
            }
        }
        true
    }
}

/// Visits every partition of `n` admitted by `c`, as a descending part
/// list, in lexicographically descending order.
pub fn for_each_partition(n: u64, c: &Constraints, mut visit: impl FnMut(&[u64])) {
    let top = c.max_part.map_or(n, |mx| mx.min(n));
    let candidates: Vec<u64> = (c.min_part..=top)
        .rev()
        .filter(|&p| c.allowed[(p % c.modulus) as usize])
        .collect();
    let mut walker = Walker {
        c,
        candidates: &candidates,
        stack: Vec::new(),
        last_in_class: vec![None; c.modulus as usize],
        visit: &mut visit,
    };
    walker.descend(n, 0);
}

struct Walker<'a, F: FnMut(&[u64])> {
    c: &'a Constraints,
    candidates: &'a [u64],
    stack: Vec<u64>,
    last_in_class: Vec<Option<u64>>,
    visit: &'a mut F,
}

impl<F: FnMut(&[u64])> Walker<'_, F> {
    fn descend(&mut self, remaining: u64, from: usize) {
        if remaining == 0 {
            if self.c.num_parts.is_none_or(|m| m == self.stack.len()) {
                (self.visit)(&self.stack);
            }
            return;
        }
        if let Some(m) = self.c.num_parts {
            if self.stack.len() >= m {
                return;
            }
        }
        for idx in from..self.candidates.len() {
            let p = self.candidates[idx];
            if p > remaining {
                continue;
            }
            if let Some(m) = self.c.num_parts {
                // the remaining slots cannot absorb `remaining` with parts <= p
                if (m - self.stack.len()) as u64 * p < remaining {
                    break;
                }
            }
            if !self.fits(p) {
                continue;
            }
            let r = (p % self.c.modulus) as usize;
            let saved = self.last_in_class[r];
            self.last_in_class[r] = Some(p);
            self.stack.push(p);
            self.descend(remaining - p, idx);
            self.stack.pop();
            self.last_in_class[r] = saved;
        }
    }

    fn fits(&self, p: u64) -> bool {
        if let Some(&prev) = self.stack.last() {
            if prev == p && (self.c.distinct || self.c.min_gap.is_some()) {
                return false;
            }
            if self.c.min_gap.is_some_and(|g| prev - p <= g) {
                return false;
            }
        }
        let r = p % self.c.modulus;
        if self.c.class_gap > 0 {
            if let Some(q) = self.last_in_class[r as usize] {
                if q - p < self.c.class_gap {
                    return false;
                }
            }
        }
        if let Some(&cap) = self.c.caps.get(&r) {
            let run = self.stack.iter().rev().take_while(|&&x| x == p).count();
            if run as u32 >= cap {
                return false;
            }
        }
        true
    }
}

/// Every partition of `n` admitted by `c`, ordered lexicographically
/// descending on the sorted part lists.
pub fn enumerate(n: u64, c: &Constraints) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, c, |parts| out.push(Partition::from_parts(parts)));
    out
}

pub fn count(n: u64, c: &Constraints) -> u64 {
    let mut total = 0;
    for_each_partition(n, c, |_| total += 1);
    total
}

/// Brute-force coefficient oracle for a product of generators.
///
/// Walks every multiset over the labelled generators (a generator may
/// repeat only if its sign is [`FactorSign::Reciprocal`]) with total weight
/// `<= max_weight`, and returns `counts[n][m]`: the number of such
/// multisets of weight `n` using `m` z-carrying generators. Coinciding
/// exponents are distinct labels, so this counts colored partitions.
pub fn count_generated(max_weight: u64, gens: &[Generator]) -> Vec<BTreeMap<u64, u64>> {
    let mut counts = vec![BTreeMap::new(); max_weight as usize + 1];
    fn walk(
        gens: &[Generator],
        weight: u64,
        zdeg: u64,
        max_weight: u64,
        counts: &mut [BTreeMap<u64, u64>],
    ) {
        let Some((g, rest)) = gens.split_first() else {
            *counts[weight as usize].entry(zdeg).or_insert(0) += 1;
            return;
        };
        let cap = match g.sign {
            FactorSign::Reciprocal => u64::MAX,
            FactorSign::Distinct => 1,
        };
        let mut t = 0;
        while t <= cap && weight + t * g.exponent <= max_weight {
            walk(
                rest,
                weight + t * g.exponent,
                zdeg + if g.z { t } else { 0 },
                max_weight,
                counts,
            );
            t += 1;
        }
    }
    walk(gens, 0, 0, max_weight, &mut counts);
    counts
}

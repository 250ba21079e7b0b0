use std::fmt;

use serde::{Deserialize, Serialize};

use super::Partition;
use crate::error::{Error, Result};

/// A partition into parts from two labelled families `offset_f + j M`.
///
/// Each family is stored as the multiset of its levels `j` (the quotient
/// rows of the diagram left after removing the family's end). When the two
/// families share part values, equal values in different families are
/// different objects, exactly as in the generating function
/// `1/(q^{o_0}, q^{o_1}; q^M)_L`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColoredPartition {
    modulus: u64,
    offsets: [u64; 2],
    levels: [Vec<u64>; 2],
}

impl ColoredPartition {
    pub fn new(modulus: u64, offsets: [u64; 2], mut levels: [Vec<u64>; 2]) -> Self {
        assert!(modulus > 0 && offsets[0] > 0 && offsets[1] > 0);
        for l in &mut levels {
            l.sort_unstable_by(|a, b| b.cmp(a));
        }
        ColoredPartition {
            modulus,
            offsets,
            levels,
        }
    }

    /// Reads an ordinary partition whose parts are `offsets[f] + j M`.
    /// Fails if some part fits neither family or fits both.
    pub fn from_partition(lambda: &Partition, modulus: u64, offsets: [u64; 2]) -> Result<Self> {
        let mut levels = [Vec::new(), Vec::new()];
        for p in lambda.parts_desc() {
            let fits: Vec<usize> = (0..2)
                .filter(|&f| p >= offsets[f] && (p - offsets[f]).is_multiple_of(modulus))
                .collect();
            match fits.as_slice() {
                [f] => levels[*f].push((p - offsets[*f]) / modulus),
                [] => return Err(Error::ResidueViolation { part: p, modulus }),
                _ => return Err(Error::AmbiguousPart { part: p }),
            }
        }
        Ok(Self::new(modulus, offsets, levels))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn offsets(&self) -> [u64; 2] {
        self.offsets
    }

    /// Levels of family `f`, largest first.
    pub fn levels(&self, f: usize) -> &[u64] {
        &self.levels[f]
    }

    /// Number of parts in family `f`.
    pub fn count(&self, f: usize) -> usize {
        self.levels[f].len()
    }

    pub fn weight(&self) -> u64 {
        (0..2)
            .map(|f| {
                self.offsets[f] * self.levels[f].len() as u64
                    + self.modulus * self.levels[f].iter().sum::<u64>()
            })
            .sum()
    }

    pub fn num_parts(&self) -> usize {
        self.levels[0].len() + self.levels[1].len()
    }

    pub fn max_level(&self) -> Option<u64> {
        self.levels.iter().filter_map(|l| l.first().copied()).max()
    }

    /// Whether some part value could belong to either family.
    pub fn families_overlap(&self) -> bool {
        self.offsets[0] % self.modulus == self.offsets[1] % self.modulus
    }

    /// Forgets the labels.
    pub fn to_partition(&self) -> Partition {
        let mut p = Partition::empty();
        for f in 0..2 {
            for &j in &self.levels[f] {
                p.insert(self.offsets[f] + j * self.modulus, 1);
            }
        }
        p
    }

    fn family_partition(&self, f: usize) -> Partition {
        let mut p = Partition::empty();
        for &j in &self.levels[f] {
            p.insert(self.offsets[f] + j * self.modulus, 1);
        }
        p
    }
}

/// Frequency notation of the underlying partition; when the families can
/// share values they are written separately as `first | second`.
impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.families_overlap() {
            write!(f, "{} | {}", self.family_partition(0), self.family_partition(1))
        } else {
            write!(f, "{}", self.to_partition())
        }
    }
}

/// All colored partitions of `n` with levels `j < length` in both
/// families, ordered by the underlying partition (descending) and then by
/// labels.
pub fn enumerate_colored(n: u64, modulus: u64, offsets: [u64; 2], length: u64) -> Vec<ColoredPartition> {
    // (family, exponent), largest exponent first
    let mut gens: Vec<(usize, u64, u64)> = Vec::new();
    for (f, &o) in offsets.iter().enumerate() {
        for j in 0..length {
            let e = o + j * modulus;
            if e <= n {
                gens.push((f, j, e));
            }
        }
    }
    gens.sort_by(|x, y| y.2.cmp(&x.2).then(x.0.cmp(&y.0)));

    let mut out = Vec::new();
    let mut chosen = [Vec::new(), Vec::new()];
    fn walk(
        gens: &[(usize, u64, u64)],
        remaining: u64,
        chosen: &mut [Vec<u64>; 2],
        out: &mut Vec<[Vec<u64>; 2]>,
    ) {
        if remaining == 0 {
            out.push(chosen.clone());
            return;
        }
        let Some((&(f, j, e), rest)) = gens.split_first() else {
            return;
        };
        let mut t = remaining / e;
        // try larger multiplicities first
        loop {
            for _ in 0..t {
                chosen[f].push(j);
            }
            walk(rest, remaining - t * e, chosen, out);
            for _ in 0..t {
                chosen[f].pop();
            }
            if t == 0 {
                break;
            }
            t -= 1;
        }
    }
    let mut raw = Vec::new();
    walk(&gens, n, &mut chosen, &mut raw);
    out.extend(raw.into_iter().map(|levels| ColoredPartition::new(modulus, offsets, levels)));
    out.sort_by(|x, y| y.to_partition().cmp(&x.to_partition()).then(y.cmp(x)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate, Constraints};

    #[test]
    fn agrees_with_plain_enumeration_without_overlap() {
        let colored = enumerate_colored(52, 10, [4, 6], 2);
        let plain = enumerate(52, &Constraints::new(10).residues(&[4, 6]).max_part(16));
        let forgotten: Vec<Partition> = colored.iter().map(|c| c.to_partition()).collect();
        assert_eq!(forgotten, plain);
    }

    #[test]
    fn overlapping_families_are_labelled() {
        // offsets 2 and 5 mod 3: 5 = 2 + 3 is a level-1 first-family part
        // and a level-0 second-family part
        let all = enumerate_colored(5, 3, [2, 5], 2);
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|c| c.weight() == 5 && c.families_overlap()));
        assert_eq!(
            ColoredPartition::from_partition(&Partition::from_parts(&[5]), 3, [2, 5]),
            Err(Error::AmbiguousPart { part: 5 })
        );
    }

    #[test]
    fn round_trip_through_partition() {
        let lam = Partition::from_freq(&[(16, 2), (14, 1), (6, 1)]);
        let c = ColoredPartition::from_partition(&lam, 10, [4, 6]).unwrap();
        assert_eq!(c.levels(0), &[1]);
        assert_eq!(c.levels(1), &[1, 1, 0]);
        assert_eq!(c.to_partition(), lam);
        assert_eq!(c.weight(), 52);
        assert_eq!(c.to_string(), "16²,14,6");
        assert!(ColoredPartition::from_partition(&Partition::from_parts(&[5]), 10, [4, 6]).is_err());
    }
}

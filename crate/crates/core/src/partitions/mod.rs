//! Partitions, M-modular diagrams, and the brute-force enumeration oracle.

mod colored;
mod diagram;
mod enumerate;

pub use colored::{enumerate_colored, ColoredPartition};
pub use diagram::{split_ends, MModularDiagram, Row, SplitEnds};
pub(crate) use diagram::reattach_ends;
pub use enumerate::{count, count_generated, enumerate, for_each_partition, Constraints};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A multiset of positive integers, stored as part -> multiplicity.
///
/// Ordering is lexicographic on the descending part list, largest first,
/// which is also the order [`enumerate`] produces (in reverse).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    freq: BTreeMap<u64, u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// # Panics
    /// If any part is zero.
    pub fn from_parts(parts: &[u64]) -> Self {
        let mut p = Self::empty();
        for &x in parts {
            p.insert(x, 1);
        }
        p
    }

    /// Frequency notation: `[(16, 3), (4, 1)]` is `16^3, 4`.
    pub fn from_freq(freq: &[(u64, u32)]) -> Self {
        let mut p = Self::empty();
        for &(x, mult) in freq {
            p.insert(x, mult);
        }
        p
    }

    pub fn insert(&mut self, part: u64, mult: u32) {
        assert!(part > 0, "parts are positive integers");
        if mult > 0 {
            *self.freq.entry(part).or_insert(0) += mult;
        }
    }

    pub fn weight(&self) -> u64 {
        self.freq.iter().map(|(&p, &m)| p * u64::from(m)).sum()
    }

    pub fn num_parts(&self) -> usize {
        self.freq.values().map(|&m| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.freq.is_empty()
    }

    pub fn multiplicity(&self, part: u64) -> u32 {
        self.freq.get(&part).copied().unwrap_or(0)
    }

    pub fn max_part(&self) -> Option<u64> {
        self.freq.keys().next_back().copied()
    }

    pub fn is_distinct(&self) -> bool {
        self.freq.values().all(|&m| m == 1)
    }

    /// `(part, multiplicity)` with the largest part first.
    pub fn freq_desc(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.freq.iter().rev().map(|(&p, &m)| (p, m))
    }

    /// Parts listed largest first, with repetition.
    pub fn parts_desc(&self) -> Vec<u64> {
        self.freq_desc()
            .flat_map(|(p, m)| std::iter::repeat_n(p, m as usize))
            .collect()
    }

    /// `nu_j`: the number of parts congruent to `j` mod `modulus`.
    pub fn nu(&self, j: u64, modulus: u64) -> usize {
        self.freq
            .iter()
            .filter(|(&p, _)| p % modulus == j % modulus)
            .map(|(_, &m)| m as usize)
            .sum()
    }

    /// Frequency notation with `^` for exponents, e.g. `16^3,4`.
    pub fn to_ascii(&self) -> String {
        self.render(|m| format!("^{m}"))
    }

    fn render(&self, exp: impl Fn(u32) -> String) -> String {
        if self.is_empty() {
            return "()".into();
        }
        self.freq_desc()
            .map(|(p, m)| if m == 1 { p.to_string() } else { format!("{p}{}", exp(m)) })
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub(crate) fn superscript(text: &str) -> String {
    text.chars()
        .map(|c| match c {
            '0' => '⁰',
            '1' => '¹',
            '2' => '²',
            '3' => '³',
            '4' => '⁴',
            '5' => '⁵',
            '6' => '⁶',
            '7' => '⁷',
            '8' => '⁸',
            '9' => '⁹',
            'a' => 'ᵃ',
            'b' => 'ᵇ',
            other => other,
        })
        .collect()
}

/// Frequency notation with superscript multiplicities, e.g. `16³,4`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|m| superscript(&m.to_string())))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.freq.iter().rev().flat_map(|(&p, &m)| std::iter::repeat_n(p, m as usize));
        let mut b = other.freq.iter().rev().flat_map(|(&p, &m)| std::iter::repeat_n(p, m as usize));
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized as `[[part, mult], ...]`, largest part first.
impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.freq_desc().map(|(p, m)| [p, u64::from(m)]))
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<[u64; 2]>::deserialize(d)?;
        let mut p = Partition::empty();
        for [part, mult] in pairs {
            if part == 0 || mult == 0 {
                return Err(serde::de::Error::custom("parts and multiplicities must be positive"));
            }
            let mult = u32::try_from(mult).map_err(serde::de::Error::custom)?;
            p.insert(part, mult);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_counts() {
        let lam = Partition::from_freq(&[(53, 2), (46, 1), (36, 1), (16, 1), (11, 1), (1, 1)]);
        assert_eq!(lam.nu(6, 10), 3);
        assert_eq!(lam.nu(3, 10), 2);
        assert_eq!(lam.nu(1, 10), 2);
        assert_eq!(Partition::empty().nu(0, 10), 0);
        assert_eq!(Partition::from_freq(&[(4, 7), (6, 4)]).nu(4, 10), 7);
    }

    #[test]
    fn notation() {
        let lam = Partition::from_freq(&[(16, 3), (4, 1)]);
        assert_eq!(lam.to_string(), "16³,4");
        assert_eq!(lam.to_ascii(), "16^3,4");
        assert_eq!(Partition::from_freq(&[(1, 14), (19, 2)]).to_string(), "19²,1¹⁴");
        assert_eq!(lam.weight(), 52);
        assert_eq!(lam.num_parts(), 4);
    }

    #[test]
    fn ordering_is_lexicographic_descending() {
        let a = Partition::from_parts(&[16, 16, 16, 4]);
        let b = Partition::from_parts(&[16, 16, 14, 6]);
        let c = Partition::from_parts(&[4; 13]);
        assert!(a > b && b > c);
    }

    #[test]
    fn serde_frequency_list() {
        let lam = Partition::from_freq(&[(9, 2), (11, 3), (1, 1)]);
        let text = serde_json::to_string(&lam).unwrap();
        assert_eq!(text, "[[11,3],[9,2],[1,1]]");
        assert_eq!(serde_json::from_str::<Partition>(&text).unwrap(), lam);
        assert!(serde_json::from_str::<Partition>("[[0,1]]").is_err());
    }
}

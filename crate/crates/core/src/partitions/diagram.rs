use std::fmt;

use serde::{Deserialize, Serialize};

use super::Partition;
use crate::error::{Error, Result};

/// One row of an M-modular diagram: `quot` copies of `M` followed by the
/// end `end`, representing the value `quot * M + end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Row {
    pub quot: u64,
    pub end: u64,
}

/// Rows sorted by non-increasing value. Rows of value zero are allowed and
/// counted; diagrams obtained by stripping ends routinely contain them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MModularDiagram {
    modulus: u64,
    rows: Vec<Row>,
}

impl MModularDiagram {
    pub fn empty(modulus: u64) -> Self {
        assert!(modulus > 0);
        MModularDiagram {
            modulus,
            rows: Vec::new(),
        }
    }

    pub fn from_partition(lambda: &Partition, modulus: u64) -> Self {
        assert!(modulus > 0);
        let rows = lambda
            .parts_desc()
            .into_iter()
            .map(|p| Row {
                quot: p / modulus,
                end: p % modulus,
            })
            .collect();
        MModularDiagram { modulus, rows }
    }

    /// A diagram of pure `M` columns (every end zero). Quotients may come
    /// in any order.
    pub fn from_quotients(modulus: u64, quotients: &[u64]) -> Self {
        assert!(modulus > 0);
        let mut rows: Vec<Row> = quotients.iter().map(|&quot| Row { quot, end: 0 }).collect();
        rows.sort_unstable_by(|a, b| b.cmp(a));
        MModularDiagram { modulus, rows }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn quotients(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.quot).collect()
    }

    pub fn zero_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.quot == 0 && r.end == 0).count()
    }

    pub fn weight(&self) -> u64 {
        self.rows.iter().map(|r| r.quot * self.modulus + r.end).sum()
    }

    /// Largest quotient, 0 for an empty diagram.
    pub fn max_quot(&self) -> u64 {
        self.rows.first().map_or(0, |r| r.quot)
    }

    /// Quotient of the `i`-th row (0-based); missing rows count as 0.
    fn quot_at(&self, i: usize) -> u64 {
        self.rows.get(i).map_or(0, |r| r.quot)
    }

    /// Difference between the `y`-th and `(y+1)`-st largest quotients
    /// (1-based), i.e. how many columns have length exactly `y`.
    pub fn columns_of_length(&self, y: usize) -> u64 {
        assert!(y >= 1, "column lengths start at 1");
        self.quot_at(y - 1) - self.quot_at(y)
    }

    pub fn has_k_columns(&self, y: usize, k: u64) -> bool {
        self.columns_of_length(y) >= k
    }

    /// Smallest quotient gap between successive rows; `None` with fewer
    /// than two rows.
    pub fn min_row_gap(&self) -> Option<u64> {
        self.rows.windows(2).map(|w| w[0].quot - w[1].quot).min()
    }

    /// Adds one `M` to each of the top `r` rows.
    pub fn attach_column(&self, r: usize) -> Result<Self> {
        if r == 0 || r > self.rows.len() {
            return Err(Error::ColumnTooLong {
                length: r,
                rows: self.rows.len(),
            });
        }
        let mut out = self.clone();
        for row in &mut out.rows[..r] {
            row.quot += 1;
        }
        Ok(out)
    }

    /// Removes one `M` from each of the top `r` rows; requires a column of
    /// length exactly `r` to exist.
    pub fn remove_column(&self, r: usize) -> Result<Self> {
        if r == 0 || r > self.rows.len() || self.columns_of_length(r) == 0 {
            return Err(Error::NoSuchColumn(r));
        }
        let mut out = self.clone();
        for row in &mut out.rows[..r] {
            row.quot -= 1;
        }
        Ok(out)
    }

    /// Text rendering in the usual picture: each row lists its `M` cells
    /// then its end; a zero row is drawn as `0`.
    pub fn render(&self) -> String {
        self.rows
            .iter()
            .map(|r| {
                let mut cells: Vec<String> = vec![self.modulus.to_string(); r.quot as usize];
                if r.end > 0 || cells.is_empty() {
                    cells.push(r.end.to_string());
                }
                cells.join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for MModularDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A partition with all parts `= +-b (mod M)`, split into the diagram of
/// `b`-class parts with their ends removed and likewise for `M - b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEnds {
    pub residue: u64,
    /// Parts `= b`, end `b` removed.
    pub low: MModularDiagram,
    /// Parts `= M - b`, end `M - b` removed.
    pub high: MModularDiagram,
}

impl SplitEnds {
    pub fn modulus(&self) -> u64 {
        self.low.modulus()
    }

    /// `(nu_b, nu_{M-b})`.
    pub fn counts(&self) -> (usize, usize) {
        (self.low.num_rows(), self.high.num_rows())
    }

    /// Reattaches ends `b` and `M - b`.
    pub fn reattach(&self) -> Partition {
        let m = self.modulus();
        reattach_ends(&self.low, self.residue, &self.high, m - self.residue)
    }
}

/// Builds the partition whose rows are `low` with end `low_end` together
/// with `high` with end `high_end`.
pub(crate) fn reattach_ends(
    low: &MModularDiagram,
    low_end: u64,
    high: &MModularDiagram,
    high_end: u64,
) -> Partition {
    let mut p = Partition::empty();
    for (diag, end) in [(low, low_end), (high, high_end)] {
        for row in diag.rows() {
            p.insert(row.quot * diag.modulus() + row.end + end, 1);
        }
    }
    p
}

/// Splits `lambda` by residue `b` and `M - b`.
pub fn split_ends(lambda: &Partition, modulus: u64, b: u64) -> Result<SplitEnds> {
    if b == 0 || b >= modulus || 2 * b == modulus {
        return Err(Error::ParamViolation(format!(
            "split residue must satisfy 0 < b < {modulus}, 2b != {modulus}; got {b}"
        )));
    }
    let mut low = Vec::new();
    let mut high = Vec::new();
    for p in lambda.parts_desc() {
        match p % modulus {
            r if r == b => low.push(p / modulus),
            r if r == modulus - b => high.push(p / modulus),
            _ => return Err(Error::ResidueViolation { part: p, modulus }),
        }
    }
    Ok(SplitEnds {
        residue: b,
        low: MModularDiagram::from_quotients(modulus, &low),
        high: MModularDiagram::from_quotients(modulus, &high),
    })
}

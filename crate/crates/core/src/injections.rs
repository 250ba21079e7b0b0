//! Executable partition injections, their image classifiers, and an
//! exhaustive audit harness.
//!
//! Two families are implemented:
//!
//! - `phi1` / `phi_l`: parts `a + jM, b + jM` into parts `1 + jM, c + jM`
//!   where `1 + c = a + b` and `a` does not divide `b`. The case split uses
//!   divisibility by `a / gcd(a, b)`; [`DivisibilityRule::Unreduced`]
//!   keeps the older test by `a`, which collides when `gcd(a, b) > 1`.
//! - `phik` and its distinct-parts and gap variants: partitions into `m`
//!   parts `= +-b (mod M)` into partitions into `m` parts `= +-a`, built
//!   by attaching or removing a single column of `M`s.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{
    enumerate_colored, split_ends, ColoredPartition, MModularDiagram, Partition,
};

/// Which case of an injection an element fell into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseTag {
    #[serde(rename = "1")]
    C1,
    #[serde(rename = "2")]
    C2,
    #[serde(rename = "3")]
    C3,
    #[serde(rename = "2a")]
    C2a,
    #[serde(rename = "2b")]
    C2b,
    /// `k = m/2`: ends are swapped and nothing else moves.
    #[serde(rename = "swap")]
    Swap,
}

impl CaseTag {
    pub fn label(self) -> &'static str {
        match self {
            CaseTag::C1 => "1",
            CaseTag::C2 => "2",
            CaseTag::C3 => "3",
            CaseTag::C2a => "2a",
            CaseTag::C2b => "2b",
            CaseTag::Swap => "swap",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

// ---------------------------------------------------------------------------
// phi_1 and phi_L

/// `(a, b, c)` with `1 < a < b < c`, `1 + c = a + b` and `a` not dividing
/// `b`; `d = gcd(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Phi1Params {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl Phi1Params {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        if !(1 < a && a < b && b < c) {
            return Err(Error::ParamViolation(format!(
                "need 1 < a < b < c, got ({a}, {b}, {c})"
            )));
        }
        if 1 + c != a + b {
            return Err(Error::ParamViolation(format!(
                "need 1 + c = a + b, got ({a}, {b}, {c})"
            )));
        }
        if b.is_multiple_of(a) {
            return Err(Error::ParamViolation(format!("{a} divides {b}")));
        }
        Ok(Phi1Params { a, b, c, d: a.gcd(&b) })
    }
}

/// Case-3 divisibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DivisibilityRule {
    /// `(a/d) | (l - k)`: injective for every admissible `(a, b)`.
    #[default]
    Reduced,
    /// `a | (l - k)`: only separates the cases when `gcd(a, b) = 1`.
    Unreduced,
}

/// `(1^ones, c^cs)` together with the case that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Phi1Image {
    pub ones: u64,
    pub cs: u64,
    pub tag: CaseTag,
}

/// Maps `(a^k, b^l)` to `(1^ones, c^cs)` of the same weight.
pub fn phi1(p: &Phi1Params, k: u64, l: u64) -> Phi1Image {
    phi1_with_rule(p, k, l, DivisibilityRule::Reduced)
}

pub fn phi1_with_rule(p: &Phi1Params, k: u64, l: u64, rule: DivisibilityRule) -> Phi1Image {
    let (a, b) = (p.a, p.b);
    if k >= l {
        return Phi1Image {
            ones: l + a * (k - l),
            cs: l,
            tag: CaseTag::C1,
        };
    }
    let excess = l - k;
    let divisor = match rule {
        DivisibilityRule::Reduced => a / p.d,
        DivisibilityRule::Unreduced => a,
    };
    if !excess.is_multiple_of(divisor) {
        Phi1Image {
            ones: k + b * excess,
            cs: k,
            tag: CaseTag::C2,
        }
    } else {
        // the last two excess b's become (1^{b-a+1}, c) each
        assert!(excess >= 2, "case 3 needs at least two excess b's");
        Phi1Image {
            ones: k + 1 + b * (excess - 1) - a,
            cs: k + 1,
            tag: CaseTag::C3,
        }
    }
}

/// Recovers the case of an image point `(1^ones, c^cs)` from
/// `ones - cs` alone.
pub fn phi1_image_case(ones: u64, cs: u64, p: &Phi1Params) -> Result<CaseTag> {
    let diff = ones as i128 - cs as i128;
    let (a, b) = (p.a as i128, p.b as i128);
    if diff.rem_euclid(a) == 0 {
        Ok(CaseTag::C1)
    } else if diff.rem_euclid(b) == 0 {
        Ok(CaseTag::C2)
    } else if diff.rem_euclid(a) == (-b).rem_euclid(a) && diff.rem_euclid(b) == (-a).rem_euclid(b) {
        Ok(CaseTag::C3)
    } else {
        Err(Error::NotInImage(format!("1^{ones}, c^{cs}")))
    }
}

/// Applies `phi1` to the ends of `lambda` (families `a` and `b`) and
/// reattaches `1`-ends and `c`-ends to the stripped diagrams. Surplus ends
/// become standalone parts at level 0.
pub fn phi_l(lambda: &ColoredPartition, p: &Phi1Params) -> Result<(ColoredPartition, CaseTag)> {
    phi_l_with_rule(lambda, p, DivisibilityRule::Reduced)
}

pub fn phi_l_with_rule(
    lambda: &ColoredPartition,
    p: &Phi1Params,
    rule: DivisibilityRule,
) -> Result<(ColoredPartition, CaseTag)> {
    if lambda.offsets() != [p.a, p.b] {
        return Err(Error::PreconditionViolation(format!(
            "expected families ({}, {}), got {:?}",
            p.a,
            p.b,
            lambda.offsets()
        )));
    }
    let (diag_a, diag_b) = (lambda.levels(0), lambda.levels(1));
    let (k, l) = (diag_a.len() as u64, diag_b.len() as u64);
    let img = phi1_with_rule(p, k, l, rule);
    // (diagram receiving 1-ends, diagram receiving c-ends)
    let (to_ones, to_cs) = match img.tag {
        CaseTag::C1 => (diag_a, diag_b),
        _ => (diag_b, diag_a),
    };
    let pad = |rows: &[u64], ends: u64, what: &str| -> Result<Vec<u64>> {
        let have = rows.len() as u64;
        if ends < have {
            return Err(Error::InsufficientEnds(format!(
                "{ends} {what}-ends for {have} rows of {lambda}"
            )));
        }
        let mut out = rows.to_vec();
        out.extend(std::iter::repeat_n(0, (ends - have) as usize));
        Ok(out)
    };
    let ones = pad(to_ones, img.ones, "1")?;
    let cs = pad(to_cs, img.cs, "c")?;
    Ok((
        ColoredPartition::new(lambda.modulus(), [1, p.c], [ones, cs]),
        img.tag,
    ))
}

/// `phi_l` on an ordinary partition with parts in
/// `{a + jM, b + jM : 0 <= j < length}`.
pub fn phi_l_partition(
    lambda: &Partition,
    p: &Phi1Params,
    modulus: u64,
    length: u64,
) -> Result<(Partition, CaseTag)> {
    let colored = ColoredPartition::from_partition(lambda, modulus, [p.a, p.b])?;
    if colored.max_level().is_some_and(|j| j >= length) {
        return Err(Error::PreconditionViolation(format!(
            "{lambda} has a part above level {}",
            length.saturating_sub(1)
        )));
    }
    let (mu, tag) = phi_l(&colored, p)?;
    Ok((mu.to_partition(), tag))
}

/// Audits `phi_l` on every colored partition of `n` into parts
/// `a + jM, b + jM` with `j < length`.
pub fn phi_l_audit(p: &Phi1Params, modulus: u64, length: u64, n: u64) -> Report<ColoredPartition> {
    let domain = enumerate_colored(n, modulus, [p.a, p.b], length);
    verify_injection(
        &domain,
        |lam| phi_l(lam, p),
        |mu| mu.offsets() == [1, p.c] && mu.max_level().is_none_or(|j| j < length),
        AuditOptions::default(),
    )
}

// ---------------------------------------------------------------------------
// phi_k and variants

/// `(a, b, M, L)` with `1 <= a < b < M/2` and `gcd(b, M) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PhikParams {
    pub a: u64,
    pub b: u64,
    pub modulus: u64,
    pub length: u64,
}

impl PhikParams {
    pub fn new(a: u64, b: u64, modulus: u64, length: u64) -> Result<Self> {
        if !(1 <= a && a < b && 2 * b < modulus) {
            return Err(Error::ParamViolation(format!(
                "need 1 <= a < b < M/2, got (a, b, M) = ({a}, {b}, {modulus})"
            )));
        }
        if b.gcd(&modulus) != 1 {
            return Err(Error::ParamViolation(format!("gcd({b}, {modulus}) != 1")));
        }
        Ok(PhikParams {
            a,
            b,
            modulus,
            length,
        })
    }

    /// Whether weights `= M/2 (mod M)` are also covered.
    pub fn has_half_class(&self) -> bool {
        self.modulus.is_multiple_of(2) && self.a % 2 == 1
    }

    /// Largest part allowed in the domain, `LM - b`.
    pub fn domain_max(&self) -> u64 {
        (self.length * self.modulus).saturating_sub(self.b)
    }

    /// Largest part allowed in the codomain, `LM + a`.
    pub fn codomain_max(&self) -> u64 {
        self.length * self.modulus + self.a
    }

    /// `m - 2k` must be `0 (mod M)`, or `M/2 (mod M)` in the half class.
    fn excess_ok(&self, excess: u64) -> bool {
        excess.is_multiple_of(self.modulus)
            || (self.has_half_class() && excess % self.modulus == self.modulus / 2)
    }

    /// `(y, z) = ((b-a)(m-2k)/M, (M-b-a)(m-2k)/M)`.
    fn column_lengths(&self, excess: u64) -> (usize, usize) {
        let m = self.modulus;
        (
            ((self.b - self.a) * excess / m) as usize,
            ((m - self.b - self.a) * excess / m) as usize,
        )
    }
}

/// Shared skeleton: `gap` is the minimal quotient gap required between
/// successive rows of each stripped diagram, and the case split asks for
/// `gap + 1` columns of length `y`.
fn phik_core(lambda: &Partition, p: &PhikParams, k: usize, gap: u64) -> Result<(Partition, CaseTag)> {
    let m_mod = p.modulus;
    let split = split_ends(lambda, m_mod, p.b).map_err(|e| match e {
        Error::ResidueViolation { part, .. } => Error::PreconditionViolation(format!(
            "part {part} is not = +-{} mod {m_mod}",
            p.b
        )),
        other => other,
    })?;
    let (low, high) = (&split.low, &split.high);
    if p.length == 0 && !lambda.is_empty() {
        return Err(Error::PreconditionViolation("L = 0 admits only the empty partition".into()));
    }
    if low.max_quot() >= p.length.max(1) || high.max_quot() >= p.length.max(1) {
        return Err(Error::PreconditionViolation(format!(
            "{lambda} has a part above {}",
            p.domain_max()
        )));
    }
    for d in [low, high] {
        if d.min_row_gap().is_some_and(|g| g < gap) {
            return Err(Error::PreconditionViolation(format!(
                "{lambda} has same-class parts closer than {}",
                gap * m_mod
            )));
        }
    }
    let (nu_b, nu_mb) = split.counts();
    let m = nu_b + nu_mb;
    if nu_b.min(nu_mb) != k {
        return Err(Error::PreconditionViolation(format!(
            "{lambda} is not in slice k = {k} (nu_b = {nu_b}, nu_(M-b) = {nu_mb})"
        )));
    }
    let a_end = p.a;
    let ma_end = m_mod - p.a;
    let build = |a_diag: &MModularDiagram, ma_diag: &MModularDiagram| {
        crate::partitions::reattach_ends(a_diag, a_end, ma_diag, ma_end)
    };
    if 2 * k == m {
        return Ok((build(low, high), CaseTag::Swap));
    }
    let excess = (m - 2 * k) as u64;
    if !p.excess_ok(excess) {
        return Err(Error::PreconditionViolation(format!(
            "m - 2k = {excess} is not admissible mod {m_mod}"
        )));
    }
    let (y, z) = p.column_lengths(excess);
    if nu_mb == k {
        // excess b's: a y-column goes onto the b diagram
        let grown = low.attach_column(y)?;
        Ok((build(&grown, high), CaseTag::C1))
    } else if !high.has_k_columns(y, gap + 1) {
        let grown = high.attach_column(z)?;
        Ok((build(&grown, low), CaseTag::C2a))
    } else {
        let shrunk = high.remove_column(y)?;
        Ok((build(low, &shrunk), CaseTag::C2b))
    }
}

/// The column injection on `P_k(nM, m, b, LM - b)`.
pub fn phik(lambda: &Partition, p: &PhikParams, k: usize) -> Result<(Partition, CaseTag)> {
    phik_core(lambda, p, k, 0)
}

/// Distinct-parts version: cases 2a/2b ask for two columns of length `y`.
pub fn phik_distinct(lambda: &Partition, p: &PhikParams, k: usize) -> Result<(Partition, CaseTag)> {
    if !lambda.is_distinct() {
        return Err(Error::PreconditionViolation(format!("{lambda} repeats a part")));
    }
    let (mu, tag) = phik_core(lambda, p, k, 1)?;
    if !mu.is_distinct() {
        return Err(Error::DistinctnessViolation(format!("{lambda} -> {mu}")));
    }
    Ok((mu, tag))
}

/// Gap version: same-class parts at least `dM` apart, and cases 2a/2b ask
/// for `d + 1` columns of length `y`. `d = 0` is [`phik`] and `d = 1` is
/// [`phik_distinct`].
pub fn phik_gap(lambda: &Partition, p: &PhikParams, k: usize, d: u64) -> Result<(Partition, CaseTag)> {
    phik_core(lambda, p, k, d)
}

/// Classifies `mu` in the image of [`phik_gap`] (use `d = 0` for
/// [`phik`], `d = 1` for [`phik_distinct`]).
pub fn phik_image_case(mu: &Partition, p: &PhikParams, k: usize, d: u64) -> Result<CaseTag> {
    let not_in = || Error::NotInImage(mu.to_string());
    let split = split_ends(mu, p.modulus, p.a).map_err(|_| not_in())?;
    let (nu_a, nu_ma) = split.counts();
    if nu_a.min(nu_ma) != k {
        return Err(not_in());
    }
    if nu_a == nu_ma {
        return Ok(CaseTag::Swap);
    }
    let excess = (nu_a.abs_diff(nu_ma)) as u64;
    if !p.excess_ok(excess) {
        return Err(not_in());
    }
    let (y, _) = p.column_lengths(excess);
    Ok(if nu_a < nu_ma {
        CaseTag::C2b
    } else if split.low.has_k_columns(y, d + 1) {
        CaseTag::C1
    } else {
        CaseTag::C2a
    })
}

// ---------------------------------------------------------------------------
// audit harness

/// What the harness needs from a domain element.
pub trait Audited: Clone + Ord + fmt::Display {
    fn weight(&self) -> u64;
    fn num_parts(&self) -> usize;
}

impl Audited for Partition {
    fn weight(&self) -> u64 {
        Partition::weight(self)
    }
    fn num_parts(&self) -> usize {
        Partition::num_parts(self)
    }
}

impl Audited for ColoredPartition {
    fn weight(&self) -> u64 {
        ColoredPartition::weight(self)
    }
    fn num_parts(&self) -> usize {
        ColoredPartition::num_parts(self)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AuditOptions {
    /// Also require `num_parts(image) == num_parts(preimage)`.
    pub part_count: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MappingRow<T> {
    pub preimage: T,
    pub case: CaseTag,
    pub image: T,
    pub in_codomain: bool,
}

/// A failed proof obligation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding<T> {
    MapFailed { preimage: T, error: String },
    OutsideCodomain { preimage: T, image: T },
    WeightChanged { preimage: T, image: T },
    PartCountChanged { preimage: T, image: T },
    Collision { first: T, second: T, image: T },
}

/// Outcome of [`verify_injection`]. Every field is derived from `table`
/// and the map failures, so shards can be merged in any grouping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report<T> {
    pub domain_size: usize,
    pub well_defined: bool,
    pub weight_preserving: bool,
    pub part_count_preserving: Option<bool>,
    pub injective: bool,
    pub case_histogram: BTreeMap<CaseTag, usize>,
    pub findings: Vec<Finding<T>>,
    pub table: Vec<MappingRow<T>>,
}

impl<T: Audited> Report<T> {
    fn from_rows(rows: Vec<MappingRow<T>>, failures: Vec<Finding<T>>, options: AuditOptions) -> Self {
        let mut findings = failures;
        let map_failures = findings.len();
        let mut case_histogram = BTreeMap::new();
        let mut weight_ok = true;
        let mut count_ok = true;
        let mut codomain_ok = true;
        let mut seen: BTreeMap<&T, &T> = BTreeMap::new();
        let mut collisions = Vec::new();
        for row in &rows {
            *case_histogram.entry(row.case).or_insert(0) += 1;
            if !row.in_codomain {
                codomain_ok = false;
                findings.push(Finding::OutsideCodomain {
                    preimage: row.preimage.clone(),
                    image: row.image.clone(),
                });
            }
            if row.preimage.weight() != row.image.weight() {
                weight_ok = false;
                findings.push(Finding::WeightChanged {
                    preimage: row.preimage.clone(),
                    image: row.image.clone(),
                });
            }
            if options.part_count && row.preimage.num_parts() != row.image.num_parts() {
                count_ok = false;
                findings.push(Finding::PartCountChanged {
                    preimage: row.preimage.clone(),
                    image: row.image.clone(),
                });
            }
            if let Some(first) = seen.insert(&row.image, &row.preimage) {
                collisions.push(Finding::Collision {
                    first: first.clone(),
                    second: row.preimage.clone(),
                    image: row.image.clone(),
                });
            }
        }
        let injective = collisions.is_empty();
        findings.extend(collisions);
        Report {
            domain_size: rows.len() + map_failures,
            well_defined: map_failures == 0 && codomain_ok,
            weight_preserving: weight_ok,
            part_count_preserving: options.part_count.then_some(count_ok),
            injective,
            case_histogram,
            findings,
            table: rows,
        }
    }

    pub fn passed(&self) -> bool {
        self.well_defined
            && self.weight_preserving
            && self.injective
            && self.part_count_preserving.unwrap_or(true)
    }

    /// Combines reports over disjoint domain shards.
    pub fn merge(self, other: Report<T>) -> Report<T> {
        let options = AuditOptions {
            part_count: self.part_count_preserving.is_some() || other.part_count_preserving.is_some(),
        };
        let mut rows = self.table;
        rows.extend(other.table);
        let failures = self
            .findings
            .into_iter()
            .chain(other.findings)
            .filter(|f| matches!(f, Finding::MapFailed { .. }))
            .collect();
        Report::from_rows(rows, failures, options)
    }

    /// Number of distinct images.
    pub fn image_size(&self) -> usize {
        let mut images: Vec<&T> = self.table.iter().map(|r| &r.image).collect();
        images.sort();
        images.dedup();
        images.len()
    }

    /// `preimage ->^case image`, one row per line.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        for row in &self.table {
            let tag = match row.case {
                CaseTag::Swap => "ˢ".to_string(),
                other => crate::partitions::superscript(other.label()),
            };
            out.push_str(&format!("{} →{} {}\n", row.preimage, tag, row.image));
        }
        out
    }
}

/// Maps every domain element and records the proof obligations: images
/// lie in the codomain, weight (and optionally part count) is preserved,
/// and no two elements share an image.
pub fn verify_injection<T, F, P>(domain: &[T], map: F, codomain: P, options: AuditOptions) -> Report<T>
where
    T: Audited,
    F: Fn(&T) -> Result<(T, CaseTag)>,
    P: Fn(&T) -> bool,
{
    let mut rows = Vec::with_capacity(domain.len());
    let mut failures = Vec::new();
    for x in domain {
        match map(x) {
            Ok((image, case)) => rows.push(MappingRow {
                in_codomain: codomain(&image),
                preimage: x.clone(),
                case,
                image,
            }),
            Err(e) => failures.push(Finding::MapFailed {
                preimage: x.clone(),
                error: e.to_string(),
            }),
        }
    }
    Report::from_rows(rows, failures, options)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p469() -> Phi1Params {
        Phi1Params::new(4, 6, 9).unwrap()
    }

    #[test]
    fn phi1_worked_pairs() {
        let p = p469();
        assert_eq!(p.d, 2);
        assert_eq!(
            phi1(&p, 7, 4),
            Phi1Image { ones: 16, cs: 4, tag: CaseTag::C1 }
        );
        assert_eq!(
            phi1(&p, 4, 6),
            Phi1Image { ones: 7, cs: 5, tag: CaseTag::C3 }
        );
        assert_eq!(phi1(&p, 0, 0), Phi1Image { ones: 0, cs: 0, tag: CaseTag::C1 });
        // unreduced rule sends 4^4 6^6 to case 2 and collides
        assert_eq!(
            phi1_with_rule(&p, 4, 6, DivisibilityRule::Unreduced),
            Phi1Image { ones: 16, cs: 4, tag: CaseTag::C2 }
        );
    }

    #[test]
    fn phi1_param_checks() {
        assert!(matches!(Phi1Params::new(2, 4, 5), Err(Error::ParamViolation(_))));
        assert!(Phi1Params::new(4, 6, 10).is_err());
        assert!(Phi1Params::new(1, 6, 6).is_err());
    }

    #[test]
    fn image_classifier() {
        let p = p469();
        assert_eq!(phi1_image_case(16, 4, &p), Ok(CaseTag::C1));
        assert_eq!(phi1_image_case(7, 5, &p), Ok(CaseTag::C3));
        assert_eq!(phi1_image_case(0, 0, &p), Ok(CaseTag::C1));
        assert!(phi1_image_case(1, 0, &p).is_err());
    }

    #[test]
    fn phi_l_rows() {
        let p = p469();
        let map = |parts: &[(u64, u32)]| {
            phi_l_partition(&Partition::from_freq(parts), &p, 10, 2).unwrap()
        };
        assert_eq!(
            map(&[(16, 2), (14, 1), (6, 1)]),
            (Partition::from_freq(&[(19, 1), (11, 2), (9, 1), (1, 2)]), CaseTag::C3)
        );
        assert_eq!(map(&[(4, 13)]), (Partition::from_freq(&[(1, 52)]), CaseTag::C1));
        assert_eq!(map(&[]), (Partition::empty(), CaseTag::C1));
        assert!(phi_l_partition(&Partition::from_parts(&[24, 4]), &p, 10, 2).is_err());
        assert!(phi_l_partition(&Partition::from_parts(&[5]), &p, 10, 2).is_err());
    }

    #[test]
    fn phik_hand_traces() {
        let p = PhikParams::new(1, 2, 5, 2).unwrap();
        let pair = Partition::from_parts(&[2, 3]);
        assert_eq!(phik(&pair, &p, 1).unwrap(), (Partition::from_parts(&[1, 4]), CaseTag::Swap));
        assert_eq!(phik_distinct(&pair, &p, 1).unwrap().0, Partition::from_parts(&[1, 4]));

        let (mu, tag) = phik(&Partition::from_freq(&[(2, 5)]), &p, 0).unwrap();
        assert_eq!((mu.clone(), tag), (Partition::from_freq(&[(6, 1), (1, 4)]), CaseTag::C1));
        assert_eq!(phik_image_case(&mu, &p, 0, 0), Ok(CaseTag::C1));

        let (mu, tag) = phik(&Partition::from_freq(&[(3, 5)]), &p, 0).unwrap();
        assert_eq!((mu.clone(), tag), (Partition::from_freq(&[(6, 2), (1, 3)]), CaseTag::C2a));
        assert_eq!(phik_image_case(&mu, &p, 0, 0), Ok(CaseTag::C2a));

        let empty = phik(&Partition::empty(), &p, 0).unwrap();
        assert_eq!(empty, (Partition::empty(), CaseTag::Swap));
    }

    #[test]
    fn phik_case_2b_removes_a_column() {
        // (8, 3^4): M - b diagram quotients 1,0,0,0,0 has a column of length 1
        let p = PhikParams::new(1, 2, 5, 2).unwrap();
        let lam = Partition::from_freq(&[(8, 1), (3, 4)]);
        let (mu, tag) = phik(&lam, &p, 0).unwrap();
        assert_eq!(tag, CaseTag::C2b);
        assert_eq!(mu, Partition::from_freq(&[(4, 5)]));
        assert_eq!(mu.weight(), lam.weight());
        assert_eq!(phik_image_case(&mu, &p, 0, 0), Ok(CaseTag::C2b));
    }

    #[test]
    fn phik_preconditions() {
        let p = PhikParams::new(1, 2, 5, 1).unwrap();
        assert!(matches!(
            phik(&Partition::from_parts(&[4]), &p, 0),
            Err(Error::PreconditionViolation(_))
        ));
        // 7 exceeds LM - b = 3
        assert!(phik(&Partition::from_parts(&[7, 3]), &p, 1).is_err());
        // wrong slice
        assert!(phik(&Partition::from_parts(&[2, 3]), &p, 0).is_err());
        // m - 2k = 1 is not a multiple of 5
        assert!(phik(&Partition::from_parts(&[2]), &p, 0).is_err());
        assert!(phik_distinct(&Partition::from_parts(&[2, 2, 3, 3]), &p, 2).is_err());
        assert!(PhikParams::new(2, 3, 6, 1).is_err());
        assert!(PhikParams::new(1, 3, 6, 1).is_err());
    }

    #[test]
    fn unreduced_rule_is_not_injective() {
        let p = p469();
        let domain: Vec<ColoredPartition> = [[(4u64, 7u32), (6, 4)], [(4, 4), (6, 6)]]
            .iter()
            .map(|f| ColoredPartition::from_partition(&Partition::from_freq(f), 12, [4, 6]).unwrap())
            .collect();
        let bad = verify_injection(
            &domain,
            |l| phi_l_with_rule(l, &p, DivisibilityRule::Unreduced),
            |_| true,
            AuditOptions::default(),
        );
        assert!(!bad.injective);
        assert!(matches!(bad.findings[0], Finding::Collision { .. }));
        let good = verify_injection(&domain, |l| phi_l(l, &p), |_| true, AuditOptions::default());
        assert!(good.passed());
        assert_eq!(good.image_size(), 2);
    }

    #[test]
    fn empty_domain_passes_vacuously() {
        let r: Report<Partition> = verify_injection(
            &[],
            |x| Ok((x.clone(), CaseTag::C1)),
            |_| false,
            AuditOptions { part_count: true },
        );
        assert!(r.passed());
        assert_eq!(r.domain_size, 0);
    }

    #[test]
    fn merge_detects_cross_shard_collisions() {
        let a = Partition::from_parts(&[2]);
        let b = Partition::from_parts(&[1, 1]);
        let to_two = |_: &Partition| Ok((Partition::from_parts(&[2]), CaseTag::C1));
        let left = verify_injection(&[a], to_two, |_| true, AuditOptions::default());
        let right = verify_injection(&[b], to_two, |_| true, AuditOptions::default());
        assert!(left.passed() && right.passed());
        let merged = left.merge(right);
        assert!(!merged.injective);
        assert_eq!(merged.domain_size, 2);
    }
}

//! Theorem checkers and parameter searches.
//!
//! Every checker works at a finite degree: it expands the relevant product
//! difference exactly, inspects only the coefficients the statement makes a
//! claim about, and where an injection exists audits it exhaustively on the
//! small weights and cross-checks series, enumeration and image counts.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::antitelescope::{anti_telescope, kr_family};
use crate::error::{Error, Result};
use crate::injections::{
    phi_l, phik_gap, phik_image_case, verify_injection, AuditOptions, Audited, CaseTag, Finding,
    Phi1Params, PhikParams, Report,
};
use crate::partitions::{enumerate, enumerate_colored, Constraints, Partition};
use crate::qseries::{FactorSign, Length, ProductSpec, QPoly, ZQPoly};

fn as_string<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// A single coefficient; `m` is the power of `z` for two-variable series.
/// The value is serialized as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coefficient {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    pub n: u64,
    #[serde(serialize_with = "as_string")]
    pub value: BigInt,
}

impl Coefficient {
    pub fn q(n: u64, value: BigInt) -> Self {
        Coefficient { m: None, n, value }
    }

    pub fn zq(m: u64, n: u64, value: BigInt) -> Self {
        Coefficient { m: Some(m), n, value }
    }
}

impl std::fmt::Display for Coefficient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.m {
            Some(m) => write!(f, "z^{m} q^{}: {}", self.n, self.value),
            None => write!(f, "q^{}: {}", self.n, self.value),
        }
    }
}

pub(crate) fn serialize_violation<S: Serializer>(
    v: &Option<(u64, BigInt)>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref()
        .map(|(n, value)| Coefficient::q(*n, value.clone()))
        .serialize(s)
}

/// Why a check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// A claimed coefficient is negative.
    Negative(Coefficient),
    /// An injection audit found a broken obligation.
    Audit { audit: String, finding: String },
    /// Series and enumeration disagree; this is a fault in the tool.
    CountMismatch {
        m: Option<u64>,
        n: u64,
        series: String,
        enumerated: String,
    },
    /// Two constructions of the same series disagree.
    RouteMismatch { route: String, n: u64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Negative(c) => write!(f, "negative coefficient at {c}"),
            Violation::Audit { audit, finding } => write!(f, "{audit}: {finding}"),
            Violation::CountMismatch { m, n, series, enumerated } => write!(
                f,
                "count mismatch at m = {m:?}, n = {n}: series {series}, enumeration {enumerated}"
            ),
            Violation::RouteMismatch { route, n } => write!(f, "{route} disagrees at q^{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Nothing contradicts the statement, but the witness it predicts was
    /// not found within the searched range.
    Inconclusive,
}

/// Condensed [`Report`], aggregated over weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub label: String,
    pub domain_size: usize,
    pub image_size: usize,
    pub well_defined: bool,
    pub weight_preserving: bool,
    pub part_count_preserving: Option<bool>,
    pub injective: bool,
    /// Whether the image classifier recovers every case tag.
    pub classifier_agrees: Option<bool>,
    pub case_histogram: BTreeMap<CaseTag, usize>,
    pub first_finding: Option<String>,
}

impl AuditSummary {
    pub fn new(label: impl Into<String>) -> Self {
        AuditSummary {
            label: label.into(),
            domain_size: 0,
            image_size: 0,
            well_defined: true,
            weight_preserving: true,
            part_count_preserving: None,
            injective: true,
            classifier_agrees: None,
            case_histogram: BTreeMap::new(),
            first_finding: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.well_defined
            && self.weight_preserving
            && self.injective
            && self.part_count_preserving.unwrap_or(true)
            && self.classifier_agrees.unwrap_or(true)
    }

    /// Folds in a report over a weight not seen before.
    pub fn absorb<T: Audited + Serialize>(&mut self, report: &Report<T>) {
        self.domain_size += report.domain_size;
        self.image_size += report.image_size();
        self.well_defined &= report.well_defined;
        self.weight_preserving &= report.weight_preserving;
        self.injective &= report.injective;
        if let Some(ok) = report.part_count_preserving {
            self.part_count_preserving = Some(self.part_count_preserving.unwrap_or(true) && ok);
        }
        for (tag, n) in &report.case_histogram {
            *self.case_histogram.entry(*tag).or_insert(0) += n;
        }
        if self.first_finding.is_none() {
            self.first_finding = report.findings.first().map(describe_finding);
        }
    }

    fn record_classifier(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.classifier_agrees = Some(self.classifier_agrees.unwrap_or(true) && ok);
        if !ok && self.first_finding.is_none() {
            self.first_finding = Some(what());
        }
    }

    fn violation(&self) -> Option<Violation> {
        (!self.passed()).then(|| Violation::Audit {
            audit: self.label.clone(),
            finding: self.first_finding.clone().unwrap_or_default(),
        })
    }
}

fn describe_finding<T: std::fmt::Display>(f: &Finding<T>) -> String {
    match f {
        Finding::MapFailed { preimage, error } => format!("{preimage} could not be mapped: {error}"),
        Finding::OutsideCodomain { preimage, image } => format!("{preimage} -> {image} leaves the codomain"),
        Finding::WeightChanged { preimage, image } => format!("{preimage} -> {image} changes weight"),
        Finding::PartCountChanged { preimage, image } => {
            format!("{preimage} -> {image} changes the number of parts")
        }
        Finding::Collision { first, second, image } => format!("{first} and {second} both map to {image}"),
    }
}

/// Outcome of a checker. `pass` holds exactly when `verdict` is
/// [`Verdict::Pass`]; a failing check always carries `first_violation`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub family: String,
    pub params: String,
    pub trunc: u64,
    pub verdict: Verdict,
    pub pass: bool,
    pub first_violation: Option<Violation>,
    /// Residues of `n` mod `M` whose coefficients were asserted.
    pub residues_checked: Vec<u64>,
    /// A coefficient the statement predicts, when the check looks for one.
    pub witness: Option<Coefficient>,
    pub audits: Vec<AuditSummary>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    fn new(family: &str, params: String, trunc: u64) -> Self {
        CheckResult {
            family: family.into(),
            params,
            trunc,
            verdict: Verdict::Pass,
            pass: true,
            first_violation: None,
            residues_checked: Vec::new(),
            witness: None,
            audits: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn fail(&mut self, v: Violation) {
        if self.first_violation.is_none() {
            self.first_violation = Some(v);
        }
        self.verdict = Verdict::Fail;
        self.pass = false;
    }

    fn fail_if(&mut self, v: Option<Violation>) {
        if let Some(v) = v {
            self.fail(v);
        }
    }

    fn inconclusive(&mut self, note: String) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Inconclusive;
            self.pass = false;
        }
        self.notes.push(note);
    }

    fn finish(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

/// Which Kanade-Russell difference [`check_kr`] treats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KrIdentity {
    /// `1/(q,q^4,q^5,q^9,q^11;q^12) - 1/(q,q^5,q^7,q^8,q^9;q^12)`.
    First,
    /// `1/(q,q^3,q^7,q^8,q^11;q^12) - 1/(q^3,q^4,q^5,q^7,q^11;q^12)`.
    Second,
}

/// The extra factor `1/(1 - z^e q^{LM+a})` in the two-variable theorem:
/// with `z` it records the extra part in the part count, which is what the
/// injection preserves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtraFactor {
    #[default]
    WithZ,
    WithoutZ,
}

/// A checker invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum TheoremParams {
    /// Two-family difference `1/(q,q^c;q^M)_L - 1/(q^a,q^b;q^M)_L`.
    T11 {
        a: u64,
        b: u64,
        c: u64,
        modulus: u64,
        length: u64,
        trunc: u64,
    },
    /// Two-variable reciprocal difference with the extra factor.
    T12 {
        a: u64,
        b: u64,
        modulus: u64,
        length: u64,
        trunc: u64,
        extra: ExtraFactor,
        audit_weight: u64,
    },
    /// Two-variable distinct-parts difference with `(1 + z q^{LM+a})`.
    T13 {
        a: u64,
        b: u64,
        modulus: u64,
        length: u64,
        trunc: u64,
        audit_weight: u64,
    },
    /// Gap-`d` partition counts, by enumeration.
    P21 {
        a: u64,
        b: u64,
        modulus: u64,
        length: u64,
        d: u64,
        max_weight: u64,
    },
    /// `1/(q,q^{M-1};q^M)_L - 1/(q^r,q^{M-r};q^M)_L`.
    BG53 {
        r: u64,
        modulus: u64,
        length: u64,
        trunc: u64,
    },
    /// Quadruple-product difference for `(L, m, x, y, z, r, s, u)`.
    BGrizzell { octuple: [u64; 8], trunc: u64 },
    KR { which: KrIdentity, trunc: u64 },
}

impl TheoremParams {
    pub fn check(&self) -> Result<CheckResult> {
        match *self {
            TheoremParams::T11 { a, b, c, modulus, length, trunc } => check_t11(a, b, c, modulus, length, trunc),
            TheoremParams::T12 { a, b, modulus, length, trunc, extra, audit_weight } => {
                check_t12(a, b, modulus, length, trunc, extra, audit_weight)
            }
            TheoremParams::T13 { a, b, modulus, length, trunc, audit_weight } => {
                check_t13(a, b, modulus, length, trunc, audit_weight)
            }
            TheoremParams::P21 { a, b, modulus, length, d, max_weight } => {
                check_p21(a, b, modulus, length, d, max_weight)
            }
            TheoremParams::BG53 { r, modulus, length, trunc } => check_bg53(r, modulus, length, trunc),
            TheoremParams::BGrizzell { octuple, trunc } => check_bgrizzell(octuple, trunc),
            TheoremParams::KR { which, trunc } => check_kr(which, trunc),
        }
    }
}

fn count_mismatch(m: Option<u64>, n: u64, series: &BigInt, enumerated: impl ToString) -> Violation {
    Violation::CountMismatch {
        m,
        n,
        series: series.to_string(),
        enumerated: enumerated.to_string(),
    }
}

// ---------------------------------------------------------------------------
// one-variable two-family difference

/// Expands `1/(q,q^c;q^M)_L - 1/(q^a,q^b;q^M)_L` to `q^trunc`, audits
/// `phi_L` on every weight up to `min(trunc, 50)`, and checks that series
/// coefficients, enumeration counts and image counts agree.
pub fn check_t11(a: u64, b: u64, c: u64, modulus: u64, length: u64, trunc: u64) -> Result<CheckResult> {
    let start = Instant::now();
    if modulus == 0 {
        return Err(Error::ParamViolation("M must be positive".into()));
    }
    // a | b is outside the statement but still expanded: it is where the
    // inequality breaks
    let p = match Phi1Params::new(a, b, c) {
        Ok(p) => Some(p),
        Err(_) if 1 < a && a < b && b < c && 1 + c == a + b => None,
        Err(e) => return Err(e),
    };
    let mut res = CheckResult::new(
        "T1.1",
        format!("a={a} b={b} c={c} M={modulus} L={length}"),
        trunc,
    );
    let l = Length::Finite(length);
    let upper = ProductSpec::reciprocal(modulus, l, &[1, c]).expand_q(trunc)?;
    let lower = ProductSpec::reciprocal(modulus, l, &[a, b]).expand_q(trunc)?;
    let diff = &upper - &lower;
    res.residues_checked = (0..modulus).collect();
    if let Some((n, v)) = diff.first_negative() {
        res.fail(Violation::Negative(Coefficient::q(n, v)));
    }

    let Some(p) = p else {
        res.notes.push(format!("{a} divides {b}: outside the hypotheses, no injection to audit"));
        return Ok(res.finish(start));
    };
    let mut audit = AuditSummary::new("phi_L");
    let mut mismatch = None;
    for w in 0..=trunc.min(50) {
        let domain = enumerate_colored(w, modulus, [a, b], length);
        let codomain_size = enumerate_colored(w, modulus, [1, c], length).len();
        let report = verify_injection(
            &domain,
            |lam| phi_l(lam, &p),
            |mu| mu.offsets() == [1, c] && mu.max_level().is_none_or(|j| j < length),
            AuditOptions::default(),
        );
        audit.absorb(&report);
        let i = w as usize;
        if mismatch.is_none() {
            if upper.coeffs()[i] != BigInt::from(codomain_size) {
                mismatch = Some(count_mismatch(None, w, &upper.coeffs()[i], codomain_size));
            } else if lower.coeffs()[i] != BigInt::from(domain.len()) {
                mismatch = Some(count_mismatch(None, w, &lower.coeffs()[i], domain.len()));
            } else if report.injective
                && diff.coeffs()[i] != BigInt::from(codomain_size) - BigInt::from(report.image_size())
            {
                mismatch = Some(count_mismatch(None, w, &diff.coeffs()[i], codomain_size - report.image_size()));
            }
        }
    }
    res.fail_if(audit.violation());
    res.fail_if(mismatch);
    res.audits.push(audit);
    Ok(res.finish(start))
}

// ---------------------------------------------------------------------------
// two-variable differences and the gap family

/// The residues of `n` mod `M` a column-injection statement covers.
fn claimed_residues(p: &PhikParams) -> Vec<u64> {
    if p.has_half_class() {
        vec![0, p.modulus / 2]
    } else {
        vec![0]
    }
}

fn in_claimed(n: u64, modulus: u64, residues: &[u64]) -> bool {
    residues.contains(&(n % modulus))
}

/// Domain and codomain constraints for gap `d`.
fn gap_classes(p: &PhikParams, d: u64) -> (Constraints, Constraints) {
    let m = p.modulus;
    let domain = Constraints::new(m)
        .residues(&[p.b, m - p.b])
        .max_part(p.domain_max())
        .class_gap(d * m);
    let codomain = Constraints::new(m)
        .residues(&[p.a, m - p.a])
        .max_part(p.codomain_max())
        .class_gap(d * m);
    (domain, codomain)
}

/// `k = min(nu_b, nu_{M-b})` of a domain partition.
fn slice_of(lambda: &Partition, modulus: u64, r: u64) -> usize {
    lambda.nu(r, modulus).min(lambda.nu(modulus - r, modulus))
}

/// Audits the gap-`d` column injection on every claimed weight up to
/// `max_weight` and compares `#codomain - #domain` per `(m, n)` against
/// `series` when given (or against zero from below when not).
fn audit_column_family(
    res: &mut CheckResult,
    p: &PhikParams,
    d: u64,
    max_weight: u64,
    series: Option<&ZQPoly>,
) {
    let residues = claimed_residues(p);
    let (dom_c, cod_c) = gap_classes(p, d);
    let mut audit = AuditSummary::new(format!("phi_k gap {d}"));
    let mut first_bad = None;
    for w in (0..=max_weight).filter(|&w| in_claimed(w, p.modulus, &residues)) {
        let domain = enumerate(w, &dom_c);
        let codomain = enumerate(w, &cod_c);
        let report = verify_injection(
            &domain,
            |lam| phik_gap(lam, p, slice_of(lam, p.modulus, p.b), d),
            |mu| cod_c.admits(mu),
            AuditOptions { part_count: true },
        );
        audit.absorb(&report);
        for row in &report.table {
            let k = slice_of(&row.preimage, p.modulus, p.b);
            let ok = phik_image_case(&row.image, p, k, d) == Ok(row.case);
            audit.record_classifier(ok, || {
                format!("{} -> {} not classified as case {}", row.preimage, row.image, row.case)
            });
        }
        let mut by_m: BTreeMap<u64, (i64, i64)> = BTreeMap::new();
        for lam in &domain {
            by_m.entry(lam.num_parts() as u64).or_default().0 += 1;
        }
        for mu in &codomain {
            by_m.entry(mu.num_parts() as u64).or_default().1 += 1;
        }
        let top = series.map_or(0, |s| s.row(w).len() as u64).max(by_m.keys().last().map_or(0, |m| m + 1));
        for m in 0..top {
            if first_bad.is_some() {
                break;
            }
            let (dom, cod) = by_m.get(&m).copied().unwrap_or((0, 0));
            let enumerated = BigInt::from(cod - dom);
            match series {
                Some(s) if s.coeff(m, w) != enumerated => {
                    first_bad = Some(count_mismatch(Some(m), w, &s.coeff(m, w), &enumerated));
                }
                None if enumerated.is_negative() => {
                    first_bad = Some(Violation::Negative(Coefficient::zq(m, w, enumerated)));
                }
                _ => {}
            }
        }
    }
    res.fail_if(first_bad);
    res.fail_if(audit.violation());
    res.audits.push(audit);
}

/// Least negative `(m, n)` coefficient of `s` with `n` in a claimed class.
fn first_claimed_negative(s: &ZQPoly, modulus: u64, residues: &[u64]) -> Option<Coefficient> {
    s.negatives()
        .find(|(_, n, _)| in_claimed(*n, modulus, residues))
        .map(|(m, n, v)| Coefficient::zq(m, n, v))
}

fn t12_difference(p: &PhikParams, trunc: u64, extra: Option<ExtraFactor>) -> Result<ZQPoly> {
    let (m, l) = (p.modulus, Length::Finite(p.length));
    let mut upper = ProductSpec::uniform(m, l, &[p.a, m - p.a], true, FactorSign::Reciprocal);
    if let Some(x) = extra {
        upper = upper.with_extra(p.codomain_max(), x == ExtraFactor::WithZ, FactorSign::Reciprocal);
    }
    let lower = ProductSpec::uniform(m, l, &[p.b, m - p.b], true, FactorSign::Reciprocal);
    Ok(&upper.expand_zq(trunc)? - &lower.expand_zq(trunc)?)
}

/// Two-variable difference
/// `1/((zq^a, zq^{M-a}; q^M)_L (1 - z q^{LM+a})) - 1/(zq^b, zq^{M-b}; q^M)_L`,
/// asserted only on `n = 0 (mod M)`, plus `n = M/2` when `M` is even and
/// `a` odd. Column-injection audits cover claimed weights up to
/// `audit_weight`.
pub fn check_t12(
    a: u64,
    b: u64,
    modulus: u64,
    length: u64,
    trunc: u64,
    extra: ExtraFactor,
    audit_weight: u64,
) -> Result<CheckResult> {
    let start = Instant::now();
    let p = PhikParams::new(a, b, modulus, length)?;
    let mut res = CheckResult::new(
        "T1.2",
        format!("a={a} b={b} M={modulus} L={length} extra={extra:?}"),
        trunc,
    );
    let residues = claimed_residues(&p);
    let diff = t12_difference(&p, trunc, Some(extra))?;
    res.residues_checked = residues.clone();
    if let Some(c) = first_claimed_negative(&diff, modulus, &residues) {
        res.fail(Violation::Negative(c));
    }
    let off_class = diff.negatives().filter(|(_, n, _)| !in_claimed(*n, modulus, &residues)).count();
    if off_class > 0 {
        res.notes.push(format!("{off_class} negative coefficients outside the claimed classes (not asserted)"));
    }
    let other = match extra {
        ExtraFactor::WithZ => ExtraFactor::WithoutZ,
        ExtraFactor::WithoutZ => ExtraFactor::WithZ,
    };
    let alt = t12_difference(&p, trunc, Some(other))?;
    match first_claimed_negative(&alt, modulus, &residues) {
        Some(c) => res.notes.push(format!("with the extra factor {other:?}: negative at {c}")),
        None => res.notes.push(format!("with the extra factor {other:?}: claimed classes nonnegative")),
    }
    let weight = audit_weight.min(trunc);
    match extra {
        ExtraFactor::WithZ => audit_column_family(&mut res, &p, 0, weight, Some(&diff)),
        ExtraFactor::WithoutZ => {
            res.notes.push("count cross-check skipped: without z the series does not count parts".into());
            audit_column_family(&mut res, &p, 0, weight, None);
        }
    }
    Ok(res.finish(start))
}

fn t13_difference(p: &PhikParams, trunc: u64, extra: bool) -> Result<ZQPoly> {
    let (m, l) = (p.modulus, Length::Finite(p.length));
    let mut upper = ProductSpec::uniform(m, l, &[p.a, m - p.a], true, FactorSign::Distinct);
    if extra {
        upper = upper.with_extra(p.codomain_max(), true, FactorSign::Distinct);
    }
    let lower = ProductSpec::uniform(m, l, &[p.b, m - p.b], true, FactorSign::Distinct);
    Ok(&upper.expand_zq(trunc)? - &lower.expand_zq(trunc)?)
}

/// Distinct-parts difference
/// `(-zq^a, -zq^{M-a}; q^M)_L (1 + z q^{LM+a}) - (-zq^b, -zq^{M-b}; q^M)_L`
/// on the same classes as [`check_t12`].
pub fn check_t13(a: u64, b: u64, modulus: u64, length: u64, trunc: u64, audit_weight: u64) -> Result<CheckResult> {
    let start = Instant::now();
    let p = PhikParams::new(a, b, modulus, length)?;
    let mut res = CheckResult::new("T1.3", format!("a={a} b={b} M={modulus} L={length}"), trunc);
    let residues = claimed_residues(&p);
    let diff = t13_difference(&p, trunc, true)?;
    res.residues_checked = residues.clone();
    if let Some(c) = first_claimed_negative(&diff, modulus, &residues) {
        res.fail(Violation::Negative(c));
    }
    audit_column_family(&mut res, &p, 1, audit_weight.min(trunc), Some(&diff));
    Ok(res.finish(start))
}

/// Gap-`d` inequality by enumeration: for every claimed weight up to
/// `max_weight` and every part count `m`, partitions into parts `= +-a`
/// at most `LM + a` outnumber those into parts `= +-b` at most `LM - b`,
/// same-class parts differing by at least `dM` on both sides.
pub fn check_p21(a: u64, b: u64, modulus: u64, length: u64, d: u64, max_weight: u64) -> Result<CheckResult> {
    let start = Instant::now();
    let p = PhikParams::new(a, b, modulus, length)?;
    let mut res = CheckResult::new(
        "P2.1",
        format!("a={a} b={b} M={modulus} L={length} d={d}"),
        max_weight,
    );
    res.residues_checked = claimed_residues(&p);
    audit_column_family(&mut res, &p, d, max_weight, None);
    Ok(res.finish(start))
}

/// `1/(q, q^{M-1}; q^M)_L - 1/(q^r, q^{M-r}; q^M)_L` is nonnegative exactly
/// when `r` does not divide `M - r`. When it does, the check passes only
/// once a negative coefficient is found up to `q^trunc`, and is
/// inconclusive otherwise.
pub fn check_bg53(r: u64, modulus: u64, length: u64, trunc: u64) -> Result<CheckResult> {
    let start = Instant::now();
    if !(1 <= r && 2 * r < modulus) || length == 0 {
        return Err(Error::ParamViolation(format!(
            "need 1 <= r < M/2 and L >= 1, got r={r} M={modulus} L={length}"
        )));
    }
    if r == 1 {
        return Err(Error::ParamViolation("r = 1 compares a product with itself".into()));
    }
    let mut res = CheckResult::new("BG5.3", format!("r={r} M={modulus} L={length}"), trunc);
    let l = Length::Finite(length);
    let diff = &ProductSpec::reciprocal(modulus, l, &[1, modulus - 1]).expand_q(trunc)?
        - &ProductSpec::reciprocal(modulus, l, &[r, modulus - r]).expand_q(trunc)?;
    res.residues_checked = (0..modulus).collect();
    let negative = diff.first_negative().map(|(n, v)| Coefficient::q(n, v));
    if !(modulus - r).is_multiple_of(r) {
        if let Some(c) = negative {
            res.fail(Violation::Negative(c));
        }
    } else {
        res.notes.push(format!("{r} divides {}: a negative coefficient is expected", modulus - r));
        match negative {
            Some(c) => res.witness = Some(c),
            None => res.inconclusive(format!("no negative coefficient up to q^{trunc}")),
        }
    }
    Ok(res.finish(start))
}

/// `1/(q^x, q^y, q^z, q^{rx+sy+uz}; q^m)_L - 1/(q^{rx}, q^{sy}, q^{uz}, q^{x+y+z}; q^m)_L`
/// for the octuple `(L, m, x, y, z, r, s, u)`.
pub fn check_bgrizzell(octuple: [u64; 8], trunc: u64) -> Result<CheckResult> {
    let start = Instant::now();
    if octuple.contains(&0) {
        return Err(Error::ParamViolation(format!("octuple entries must be positive: {octuple:?}")));
    }
    let [length, m, x, y, z, r, s, u] = octuple;
    let mut res = CheckResult::new("BGrizzell", format!("{octuple:?}"), trunc);
    let l = Length::Finite(length);
    let diff = &ProductSpec::reciprocal(m, l, &[x, y, z, r * x + s * y + u * z]).expand_q(trunc)?
        - &ProductSpec::reciprocal(m, l, &[r * x, s * y, u * z, x + y + z]).expand_q(trunc)?;
    res.residues_checked = (0..m).collect();
    if let Some((n, v)) = diff.first_negative() {
        res.fail(Violation::Negative(Coefficient::q(n, v)));
    }
    Ok(res.finish(start))
}

fn mul_reciprocal(series: &QPoly, shifts: &[u64], modulus: u64) -> QPoly {
    let mut out = series.clone();
    for g in ProductSpec::reciprocal(modulus, Length::Infinite, shifts).generators(out.trunc()) {
        out.div_one_minus(g.exponent);
    }
    out
}

fn route_mismatch(route: &str, a: &QPoly, b: &QPoly) -> Option<Violation> {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .position(|(x, y)| x != y)
        .map(|n| Violation::RouteMismatch {
            route: route.into(),
            n: n as u64,
        })
}

/// One of the two Kanade-Russell differences, by direct expansion and by
/// its proof route: the first through anti-telescoping times
/// `1/(q^5, q^9; q^12)`, the second through the two-family difference
/// `(4, 5, 8, 12)` times `1/(q^3, q^7, q^11; q^12)`.
pub fn check_kr(which: KrIdentity, trunc: u64) -> Result<CheckResult> {
    let start = Instant::now();
    let (label, upper, lower): (&str, &[u64], &[u64]) = match which {
        KrIdentity::First => ("KR3.1", &[1, 4, 5, 9, 11], &[1, 5, 7, 8, 9]),
        KrIdentity::Second => ("KR3.2", &[1, 3, 7, 8, 11], &[3, 4, 5, 7, 11]),
    };
    let mut res = CheckResult::new(label, String::new(), trunc);
    res.residues_checked = (0..12).collect();
    let direct = &ProductSpec::reciprocal(12, Length::Infinite, upper).expand_q(trunc)?
        - &ProductSpec::reciprocal(12, Length::Infinite, lower).expand_q(trunc)?;
    if let Some((n, v)) = direct.first_negative() {
        res.fail(Violation::Negative(Coefficient::q(n, v)));
    }
    // enough levels that every factor up to q^trunc is present
    let length = trunc / 12 + 1;
    let route = match which {
        KrIdentity::First => {
            let (p, q) = kr_family();
            let terms = anti_telescope(&p, &q, length, trunc)?;
            let mut sum = QPoly::zero(trunc);
            let mut negative_terms = 0;
            for t in &terms {
                if let Some((n, v)) = t.series.first_negative() {
                    negative_terms += 1;
                    res.fail(Violation::Negative(Coefficient::q(n, v)));
                }
                sum = &sum + &t.series;
            }
            res.notes.push(format!(
                "{} anti-telescoping terms, {negative_terms} with a negative coefficient",
                terms.len()
            ));
            mul_reciprocal(&sum, &[5, 9], 12)
        }
        KrIdentity::Second => {
            let finite = check_t11(4, 5, 8, 12, length, trunc)?;
            res.fail_if(finite.first_violation.clone());
            res.notes.push(format!("two-family difference (4, 5, 8, 12) with L = {length}"));
            let l = Length::Finite(length);
            let diff = &ProductSpec::reciprocal(12, l, &[1, 8]).expand_q(trunc)?
                - &ProductSpec::reciprocal(12, l, &[4, 5]).expand_q(trunc)?;
            mul_reciprocal(&diff, &[3, 7, 11], 12)
        }
    };
    res.fail_if(route_mismatch("proof route", &route, &direct));
    Ok(res.finish(start))
}

// ---------------------------------------------------------------------------
// searches and parameter enumeration

/// `(a, b, c, M)` with `1 < a < b < c = a + b - 1 <= c_factor * M`, `a` not
/// dividing `b`, and `2 <= M <= max_modulus`.
pub fn t11_admissible(max_modulus: u64, c_factor: u64) -> Vec<(u64, u64, u64, u64)> {
    let mut out = Vec::new();
    for m in 2..=max_modulus {
        for a in 2..=c_factor * m {
            for b in a + 1.. {
                let c = a + b - 1;
                if c > c_factor * m {
                    break;
                }
                if b % a != 0 {
                    out.push((a, b, c, m));
                }
            }
        }
    }
    out
}

/// `(a, b, M)` with `1 <= a < b < M/2`, `gcd(b, M) = 1`, `M <= max_modulus`.
pub fn phik_admissible(max_modulus: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for m in 1..=max_modulus {
        for b in 2..m {
            if 2 * b >= m || b.gcd(&m) != 1 {
                continue;
            }
            out.extend((1..b).map(|a| (a, b, m)));
        }
    }
    out
}

/// A negative `d'(m, nM)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RemarkViolation {
    pub a: u64,
    pub b: u64,
    pub modulus: u64,
    pub length: u64,
    pub m: u64,
    pub n: u64,
    #[serde(serialize_with = "as_string")]
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub max_modulus: u64,
    pub max_length: u64,
    pub max_weight: u64,
    pub tuples_checked: usize,
    /// Every `(a, b, M)` with at least one violation.
    pub offending: Vec<(u64, u64, u64)>,
    pub violations: Vec<RemarkViolation>,
}

/// Negative coefficients `d'(m, nM)`, `nM <= max_weight`, of the
/// distinct-parts difference without its extra factor, over every
/// admissible `(a, b, M)` with `M <= max_modulus` and `1 <= L <= max_length`.
/// `workers > 1` shards the tuples over a thread pool; the output is
/// sorted and does not depend on the worker count.
pub fn search_remark(max_modulus: u64, max_length: u64, max_weight: u64, workers: usize) -> Result<SearchReport> {
    let tuples: Vec<(u64, u64, u64, u64)> = phik_admissible(max_modulus)
        .into_iter()
        .flat_map(|(a, b, m)| (1..=max_length).map(move |l| (a, b, m, l)))
        .collect();
    let scan = |&(a, b, m, l): &(u64, u64, u64, u64)| -> Result<Vec<RemarkViolation>> {
        let p = PhikParams::new(a, b, m, l)?;
        let diff = t13_difference(&p, max_weight, false)?;
        Ok(diff
            .negatives()
            .filter(|(_, n, _)| *n > 0 && n % m == 0)
            .map(|(zm, n, value)| RemarkViolation {
                a,
                b,
                modulus: m,
                length: l,
                m: zm,
                n,
                value,
            })
            .collect())
    };
    let chunks: Vec<Vec<RemarkViolation>> = if workers <= 1 {
        tuples.iter().map(scan).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::ParamViolation(format!("cannot start {workers} workers: {e}")))?;
        pool.install(|| tuples.par_iter().map(scan).collect::<Result<_>>())?
    };
    let mut violations: Vec<RemarkViolation> = chunks.into_iter().flatten().collect();
    violations.sort();
    let mut offending: Vec<(u64, u64, u64)> = violations.iter().map(|v| (v.a, v.b, v.modulus)).collect();
    offending.dedup();
    offending.sort();
    offending.dedup();
    Ok(SearchReport {
        max_modulus,
        max_length,
        max_weight,
        tuples_checked: tuples.len(),
        offending,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t11_counterexample_at_q4() {
        let r = check_t11(2, 4, 5, 6, 1, 20).unwrap();
        assert!(!r.pass);
        assert_eq!(
            r.first_violation,
            Some(Violation::Negative(Coefficient::q(4, BigInt::from(-1))))
        );
        assert!(r.audits.is_empty());
        assert!(check_t11(2, 4, 6, 6, 1, 20).is_err());
    }

    #[test]
    fn t11_small_instance_passes() {
        let r = check_t11(4, 6, 9, 12, 2, 60).unwrap();
        assert!(r.pass, "{:?}", r.first_violation);
        assert!(r.audits[0].passed());
        let empty = check_t11(4, 6, 9, 12, 0, 30).unwrap();
        assert!(empty.pass);
    }

    #[test]
    fn t12_without_z_fails_on_claimed_class() {
        let with_z = check_t12(1, 2, 5, 1, 30, ExtraFactor::WithZ, 30).unwrap();
        assert!(with_z.pass, "{:?}", with_z.first_violation);
        let printed = check_t12(1, 2, 5, 1, 30, ExtraFactor::WithoutZ, 30).unwrap();
        assert_eq!(
            printed.first_violation,
            Some(Violation::Negative(Coefficient::zq(5, 10, BigInt::from(-1))))
        );
    }

    #[test]
    fn t13_and_p21_pass_small() {
        assert!(check_t13(1, 2, 5, 2, 40, 40).unwrap().pass);
        assert!(check_p21(1, 2, 5, 2, 1, 40).unwrap().pass);
        assert!(check_p21(1, 5, 12, 2, 2, 36).unwrap().pass);
    }

    #[test]
    fn bg53_directions() {
        assert!(check_bg53(2, 5, 3, 60).unwrap().pass);
        let r = check_bg53(2, 6, 1, 20).unwrap();
        assert!(r.pass);
        assert_eq!(r.witness, Some(Coefficient::q(4, BigInt::from(-1))));
        assert!(check_bg53(1, 3, 1, 10).is_err());
    }

    #[test]
    fn bgrizzell_symmetric_octuple_is_zero() {
        let r = check_bgrizzell([1, 2, 1, 1, 1, 1, 1, 1], 30).unwrap();
        assert!(r.pass);
        assert!(check_bgrizzell([0, 2, 1, 1, 1, 1, 1, 1], 30).is_err());
    }

    #[test]
    fn admissible_sets() {
        assert!(phik_admissible(5).contains(&(1, 2, 5)));
        // gcd(b, 6) = 1 and b < 3 leave nothing for M = 6
        assert!(!phik_admissible(6).iter().any(|&(_, _, m)| m == 6));
        assert!(phik_admissible(8).contains(&(2, 3, 8)));
        assert!(!t11_admissible(4, 2).contains(&(4, 6, 9, 4)));
        assert!(t11_admissible(12, 2).contains(&(4, 6, 9, 12)));
        assert!(!t11_admissible(12, 2).iter().any(|&(a, b, _, _)| b % a == 0));
    }

    #[test]
    fn search_is_worker_independent() {
        let one = search_remark(7, 3, 70, 1).unwrap();
        let four = search_remark(7, 3, 70, 4).unwrap();
        assert_eq!(one, four);
        assert_eq!(search_remark(0, 5, 50, 1).unwrap().violations, vec![]);
    }
}

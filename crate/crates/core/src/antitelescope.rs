//! Anti-telescoping decompositions of product differences, and the
//! Andrews-Baxter recurrence for the Rogers-Ramanujan products.
//!
//! For two families `P(j) = (q^{p_1}, ..., q^{p_r}; q^M)_j` and `Q(j)`
//! likewise,
//!
//! ```text
//! 1/P(L) - 1/Q(L) = sum_{j=1}^{L} (Q(j)/Q(j-1) - P(j)/P(j-1)) / ((Q(L)/Q(j-1)) P(j))
//! ```
//!
//! and each summand is a polynomial bracket over a finite product of
//! `(1 - q^e)` factors, which is how it is expanded here.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::injections::{verify_injection, AuditOptions, CaseTag, Report};
use crate::partitions::{enumerate, Constraints, Partition};
use crate::qseries::{FactorSign, Length, ProductSpec, QPoly};

/// One summand of an anti-telescoping decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TelescopeTerm {
    pub j: u64,
    /// `Q(j)/Q(j-1) - P(j)/P(j-1)` as an exact polynomial.
    pub bracket: QPoly,
    /// Exponents `e` of the `(1 - q^e)` factors of `(Q(L)/Q(j-1)) P(j)`.
    pub denominator: Vec<u64>,
    pub series: QPoly,
}

impl TelescopeTerm {
    /// The denominator as a reciprocal product spec.
    pub fn denominator_spec(&self) -> ProductSpec {
        self.denominator
            .iter()
            .fold(ProductSpec::new(1, Length::Finite(0)), |spec, &e| {
                spec.with_extra(e, false, FactorSign::Reciprocal)
            })
    }
}

/// `(shifts, modulus)` of a plain `1/(q^{s_1}, ...; q^M)` family.
fn plain_shifts(spec: &ProductSpec) -> Result<Vec<u64>> {
    spec.validate()?;
    if spec.is_bivariate()
        || !spec.extras.is_empty()
        || spec.factors.iter().any(|f| f.sign != FactorSign::Reciprocal)
    {
        return Err(Error::InvalidSpec(
            "anti-telescoping needs plain reciprocal q-products".into(),
        ));
    }
    Ok(spec.factors.iter().map(|f| f.shift).collect())
}

/// Level `i` factors `prod_s (1 - q^{s + iM})` as a polynomial.
fn level_poly(shifts: &[u64], modulus: u64, i: u64, trunc: u64) -> QPoly {
    let mut p = QPoly::one(trunc);
    for &s in shifts {
        p.mul_one_minus(s + i * modulus);
    }
    p
}

/// Splits `1/P(L) - 1/Q(L)` into `L` terms, each expanded to `q^trunc`.
/// Only the shifts and moduli of `p` and `q` are used; their lengths are
/// replaced by the levels `j` and `length`.
pub fn anti_telescope(p: &ProductSpec, q: &ProductSpec, length: u64, trunc: u64) -> Result<Vec<TelescopeTerm>> {
    if p.modulus != q.modulus {
        return Err(Error::InvalidSpec(format!(
            "moduli differ: {} and {}",
            p.modulus, q.modulus
        )));
    }
    let (ps, qs) = (plain_shifts(p)?, plain_shifts(q)?);
    let m = p.modulus;
    let terms = (1..=length)
        .into_par_iter()
        .map(|j| {
            let bracket = &level_poly(&qs, m, j - 1, trunc) - &level_poly(&ps, m, j - 1, trunc);
            let mut denominator: Vec<u64> = (j - 1..length)
                .flat_map(|i| qs.iter().map(move |&s| s + i * m))
                .chain((0..j).flat_map(|i| ps.iter().map(move |&s| s + i * m)))
                .collect();
            denominator.sort_unstable();
            let mut series = bracket.clone();
            for &e in &denominator {
                series.div_one_minus(e);
            }
            TelescopeTerm {
                j,
                bracket,
                denominator,
                series,
            }
        })
        .collect();
    Ok(terms)
}

/// The Kanade-Russell pair `P = (q, q^4, q^11; q^12)`, `Q = (q, q^7, q^8; q^12)`.
pub fn kr_family() -> (ProductSpec, ProductSpec) {
    (
        ProductSpec::reciprocal(12, Length::Infinite, &[1, 4, 11]),
        ProductSpec::reciprocal(12, Length::Infinite, &[1, 7, 8]),
    )
}

/// Record of the closed-form construction of one Kanade-Russell term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KrCertificate {
    pub j: u64,
    pub lowest_degree: Option<u64>,
    /// Exponents `e` of the `(1 - q^e)` factors cancelled against the
    /// bracket.
    pub cancelled: Vec<u64>,
    pub nonnegative: bool,
    #[serde(serialize_with = "crate::inequalities::serialize_violation")]
    pub first_negative: Option<(u64, BigInt)>,
}

/// Builds term `j` as `q^{12j-8}(1 + q + q^2)` over the product left after
/// cancelling `(1 - q^4)`, `(1 - q^{12j-11})` and `(1 - q)`, and checks it
/// against the generic term from [`anti_telescope`].
pub fn kr_term_certificate(j: u64, length: u64, trunc: u64) -> Result<(QPoly, KrCertificate)> {
    if j == 0 || j > length {
        return Err(Error::ParamViolation(format!("need 1 <= j <= L, got j = {j}, L = {length}")));
    }
    let lead = 12 * j - 8;
    let mut closed = QPoly::from_terms(&[(lead, 1), (lead + 1, 1), (lead + 2, 1)], trunc);
    let runs: [(u64, u64); 6] = [
        (12 * j + 1, length - j),
        (12 * j - 5, length - j + 1),
        (12 * j - 4, length - j + 1),
        (13, j - 1),
        (16, j - 1),
        (11, j),
    ];
    for (start, count) in runs {
        for i in 0..count {
            closed.div_one_minus(start + 12 * i);
        }
    }
    let (p, q) = kr_family();
    let generic = anti_telescope(&p, &q, length, trunc)?
        .into_iter()
        .find(|t| t.j == j)
        .expect("term j exists for j <= L");
    if generic.series != closed {
        let n = generic
            .series
            .coeffs()
            .iter()
            .zip(closed.coeffs())
            .position(|(x, y)| x != y)
            .unwrap_or(0);
        return Err(Error::Mismatch(format!("term {j} of length {length} differs at q^{n}")));
    }
    let first_negative = closed.first_negative();
    let cert = KrCertificate {
        j,
        lowest_degree: closed.lowest_degree(),
        cancelled: vec![4, 12 * j - 11, 1],
        nonnegative: first_negative.is_none(),
        first_negative,
    };
    Ok((closed, cert))
}

/// Checks `q^4 + q^11 - q^7 - q^8 = q^4 (1 - q^3)(1 - q^4)` and
/// `(1 - q^3)/(1 - q) = 1 + q + q^2` as exact polynomial identities.
pub fn kr_bracket_identities() -> bool {
    let bracket = QPoly::from_terms(&[(4, 1), (7, -1), (8, -1), (11, 1)], 11);
    let mut factored = QPoly::monomial(BigInt::one(), 4, 11);
    factored.mul_one_minus(3);
    factored.mul_one_minus(4);
    let mut quotient = QPoly::one(3);
    quotient.mul_one_minus(3);
    quotient.div_one_minus(1);
    bracket == factored && quotient == QPoly::from_i64s(&[1, 1, 1, 0], 3)
}

/// `G_1, G_2, ...` with `G_1 = 1/(q, q^4; q^5)_inf`, `G_2 = 1/(q^2, q^3; q^5)_inf`
/// and `q^{i-2} G_i = G_{i-2} - G_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSequence {
    trunc: u64,
    terms: Vec<QPoly>,
}

/// Outcome of the Empirical Hypothesis check for one `G_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub i: u64,
    pub certified_trunc: u64,
    pub holds: bool,
    /// `(n, coefficient)` of the first offending coefficient.
    #[serde(serialize_with = "crate::inequalities::serialize_violation")]
    pub first_violation: Option<(u64, BigInt)>,
}

impl GSequence {
    pub fn trunc(&self) -> u64 {
        self.trunc
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `G_i`, `i >= 1`.
    pub fn g(&self, i: u64) -> Option<&QPoly> {
        i.checked_sub(1).and_then(|k| self.terms.get(k as usize))
    }

    /// Degree up to which `G_i` is known: `N - (i-2)(i-1)/2` for `i >= 2`.
    pub fn certified_trunc(i: u64, trunc: u64) -> Option<u64> {
        if i <= 2 {
            return Some(trunc);
        }
        trunc.checked_sub((i - 2) * (i - 1) / 2)
    }

    /// `G_i = 1 + sum_{n >= i} g_{i,n} q^n` with every `g_{i,n} >= 0`.
    pub fn hypothesis(&self, i: u64) -> Option<HypothesisCheck> {
        let g = self.g(i)?;
        let first_violation = g.coeffs().iter().enumerate().find_map(|(n, c)| {
            let n = n as u64;
            let ok = match n {
                0 => c.is_one(),
                n if n < i => c.is_zero(),
                _ => *c >= BigInt::zero(),
            };
            (!ok).then(|| (n, c.clone()))
        });
        Some(HypothesisCheck {
            i,
            certified_trunc: g.trunc(),
            holds: first_violation.is_none(),
            first_violation,
        })
    }

    /// Re-checks `q^{i-2} G_i = G_{i-2} - G_{i-1}` coefficient by
    /// coefficient on the window where `G_i` is known.
    pub fn recurrence_holds(&self) -> bool {
        (3..=self.terms.len() as u64).all(|i| {
            let gi = self.g(i).expect("index in range");
            let rhs = self.g(i - 2).expect("in range") - self.g(i - 1).expect("in range");
            let shift = (i - 2) as usize;
            rhs.coeffs()[..shift].iter().all(Zero::is_zero)
                && gi.trunc() + i - 2 <= rhs.trunc()
                && gi
                    .coeffs()
                    .iter()
                    .enumerate()
                    .all(|(n, c)| *c == rhs.coeffs()[n + shift])
        })
    }
}

/// Runs the recurrence up to `G_imax` starting from products truncated at
/// `q^trunc`.
pub fn g_sequence(imax: u64, trunc: u64) -> Result<GSequence> {
    if imax < 2 {
        return Err(Error::ParamViolation(format!("need imax >= 2, got {imax}")));
    }
    let g1 = ProductSpec::reciprocal(5, Length::Infinite, &[1, 4]).expand_q(trunc)?;
    let g2 = ProductSpec::reciprocal(5, Length::Infinite, &[2, 3]).expand_q(trunc)?;
    let mut terms = vec![g1, g2];
    for i in 3..=imax {
        if GSequence::certified_trunc(i, trunc).is_none() {
            return Err(Error::TruncationExhausted { index: i as usize });
        }
        let k = terms.len();
        let diff = &terms[k - 2] - &terms[k - 1];
        terms.push(diff.shift_down(i - 2)?);
    }
    Ok(GSequence { trunc, terms })
}

/// Result of [`kr5_injection_check`].
#[derive(Clone, Debug, Serialize)]
pub struct Kr5Check {
    pub trunc: u64,
    pub difference_nonnegative: bool,
    #[serde(serialize_with = "crate::inequalities::serialize_violation")]
    pub first_negative: Option<(u64, BigInt)>,
    /// Enumeration counts equal the series coefficients on both sides.
    pub counts_match: bool,
    pub audit_weight: u64,
    pub audit: Report<Partition>,
}

impl Kr5Check {
    pub fn passed(&self) -> bool {
        self.difference_nonnegative && self.counts_match && self.audit.passed()
    }
}

/// `1/(q^2; q^4)_inf prod_{n >= 0} (1 + q^{4n+r} + q^{2(4n+r)})`.
pub fn kr5_side(r: u64, trunc: u64) -> QPoly {
    let mut p = QPoly::one(trunc);
    let mut e = 2;
    while e <= trunc {
        p.div_one_minus(e);
        e += 4;
    }
    // 1 + x + x^2 = (1 - x^3)/(1 - x)
    let mut e = r;
    while e <= trunc {
        p.mul_one_minus(3 * e);
        p.div_one_minus(e);
        e += 4;
    }
    p
}

/// Partitions with free parts `= 2 (mod 4)` and parts `= r (mod 4)` used
/// at most twice.
pub fn kr5_class(r: u64) -> Constraints {
    Constraints::new(4).residues(&[2, r]).max_multiplicity(r, 2)
}

/// Replaces every part `4n + 3` by the pair `4n + 1, 2`.
pub fn kr5_map(lambda: &Partition) -> Result<(Partition, CaseTag)> {
    let mut mu = Partition::empty();
    for (part, mult) in lambda.freq_desc() {
        match part % 4 {
            2 => mu.insert(part, mult),
            3 => {
                mu.insert(part - 2, mult);
                mu.insert(2, mult);
            }
            _ => return Err(Error::ResidueViolation { part, modulus: 4 }),
        }
    }
    Ok((mu, CaseTag::C1))
}

/// Compares the two KR5 products to `q^trunc` and audits [`kr5_map`] on
/// every weight up to `min(trunc, 40)`.
pub fn kr5_injection_check(trunc: u64) -> Kr5Check {
    let upper = kr5_side(1, trunc);
    let lower = kr5_side(3, trunc);
    let diff = &upper - &lower;
    let first_negative = diff.first_negative();
    let audit_weight = trunc.min(40);
    let (from, to) = (kr5_class(3), kr5_class(1));
    let mut counts_match = true;
    let mut audit: Option<Report<Partition>> = None;
    for n in 0..=audit_weight {
        let domain = enumerate(n, &from);
        let codomain_size = crate::partitions::count(n, &to);
        counts_match &= BigInt::from(domain.len()) == upper.coeffs()[n as usize].clone() - &diff.coeffs()[n as usize]
            && BigInt::from(codomain_size) == upper.coeffs()[n as usize];
        let report = verify_injection(&domain, kr5_map, |mu| to.admits(mu), AuditOptions::default());
        audit = Some(match audit {
            None => report,
            Some(acc) => acc.merge(report),
        });
    }
    Kr5Check {
        trunc,
        difference_nonnegative: first_negative.is_none(),
        first_negative,
        counts_match,
        audit_weight,
        audit: audit.expect("weight 0 is always audited"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_term_is_the_whole_difference() {
        let (p, q) = kr_family();
        let terms = anti_telescope(&p, &q, 1, 40).unwrap();
        assert_eq!(terms.len(), 1);
        let direct = &ProductSpec::reciprocal(12, Length::Finite(1), &[1, 4, 11]).expand_q(40).unwrap()
            - &ProductSpec::reciprocal(12, Length::Finite(1), &[1, 7, 8]).expand_q(40).unwrap();
        assert_eq!(terms[0].series, direct);
    }

    #[test]
    fn first_kr_term_starts_at_q4() {
        let (p, q) = kr_family();
        let terms = anti_telescope(&p, &q, 3, 30).unwrap();
        assert_eq!(terms[0].series.lowest_degree(), Some(4));
        assert_eq!(terms[0].series.coeff(4), Some(&BigInt::one()));
        assert_eq!(terms[0].denominator_spec().expand_q(30).unwrap().coeff(0), Some(&BigInt::one()));
    }

    #[test]
    fn closed_form_matches() {
        let (series, cert) = kr_term_certificate(1, 3, 60).unwrap();
        assert!(cert.nonnegative);
        assert_eq!(cert.cancelled, vec![4, 1, 1]);
        assert_eq!(series.lowest_degree(), Some(4));
        assert!(kr_term_certificate(4, 3, 60).is_err());
    }

    #[test]
    fn bracket_identities() {
        assert!(kr_bracket_identities());
    }

    #[test]
    fn rejects_mixed_families() {
        let p = ProductSpec::distinct(12, Length::Infinite, &[1]);
        let q = ProductSpec::reciprocal(12, Length::Infinite, &[1]);
        assert!(anti_telescope(&p, &q, 2, 10).is_err());
        let r = ProductSpec::reciprocal(5, Length::Infinite, &[1]);
        assert!(anti_telescope(&q, &r, 2, 10).is_err());
    }

    #[test]
    fn g_sequence_basics() {
        let g = g_sequence(6, 40).unwrap();
        assert_eq!(g.len(), 6);
        let d = g.g(1).unwrap() - g.g(2).unwrap();
        assert_eq!(d.lowest_degree(), Some(1));
        assert_eq!(d.coeff(1), Some(&BigInt::one()));
        assert!(g.recurrence_holds());
        assert_eq!(g.g(6).unwrap().trunc(), 40 - 10);
        assert!((1..=6).all(|i| g.hypothesis(i).unwrap().holds));
        assert!(matches!(g_sequence(12, 20), Err(Error::TruncationExhausted { index: 8 })));
        assert!(g_sequence(1, 20).is_err());
    }

    #[test]
    fn kr5_smallest_move() {
        let (mu, _) = kr5_map(&Partition::from_parts(&[3])).unwrap();
        assert_eq!(mu, Partition::from_parts(&[2, 1]));
        let check = kr5_injection_check(30);
        assert!(check.passed(), "{:?}", check.audit.findings);
    }
}

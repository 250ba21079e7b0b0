use std::collections::BTreeSet;

use partineq::injections::{
    phi1, phi1_image_case, phi1_with_rule, phi_l_audit, phik, phik_distinct, phik_gap, phik_image_case,
    verify_injection, AuditOptions, CaseTag, DivisibilityRule, Phi1Params, PhikParams,
};
use partineq::partitions::{enumerate, Constraints};
use partineq::Partition;
use proptest::prelude::*;

const GOLDEN: &str = include_str!("golden/example_injection_table.txt");

#[test]
fn colored_table_matches_golden_file() {
    let p = Phi1Params::new(4, 6, 9).unwrap();
    let report = phi_l_audit(&p, 10, 2, 52);
    assert!(report.passed());
    assert_eq!(report.table.len(), 23);
    assert_eq!(report.render_table(), GOLDEN);
    assert!(GOLDEN.lines().next().unwrap() == "16³,4 →³ 11³,9²,1");
    let images: BTreeSet<_> = report.table.iter().map(|r| r.image.clone()).collect();
    assert_eq!(images.len(), 23);
}

#[test]
fn phi1_is_injective_and_classified() {
    for (a, b, c) in [(4, 6, 9), (2, 3, 4), (3, 5, 7), (6, 9, 14), (4, 10, 13), (6, 10, 15)] {
        let p = Phi1Params::new(a, b, c).unwrap();
        let mut seen = BTreeSet::new();
        for k in 0..40 {
            for l in 0..40 {
                let img = phi1(&p, k, l);
                assert_eq!(img.ones + c * img.cs, a * k + b * l);
                assert_eq!(phi1_image_case(img.ones, img.cs, &p), Ok(img.tag));
                assert!(seen.insert((img.ones, img.cs)), "({a},{b},{c}) collides at ({k},{l})");
            }
        }
    }
}

#[test]
fn unreduced_rule_collides_exactly_when_gcd_exceeds_one() {
    for (a, b, c) in [(4, 6, 9), (2, 3, 4), (3, 5, 7), (6, 9, 14)] {
        let p = Phi1Params::new(a, b, c).unwrap();
        let mut seen = BTreeSet::new();
        let mut collided = false;
        for k in 0..30 {
            for l in 0..30 {
                let img = phi1_with_rule(&p, k, l, DivisibilityRule::Unreduced);
                collided |= !seen.insert((img.ones, img.cs));
            }
        }
        assert_eq!(collided, p.d > 1, "({a},{b},{c})");
    }
}

fn domain(p: &PhikParams, n: u64, gap: u64) -> Vec<Partition> {
    let m = p.modulus;
    enumerate(
        n,
        &Constraints::new(m).residues(&[p.b, m - p.b]).max_part(p.domain_max()).class_gap(gap * m),
    )
}

fn slice(lam: &Partition, p: &PhikParams) -> usize {
    lam.nu(p.b, p.modulus).min(lam.nu(p.modulus - p.b, p.modulus))
}

#[test]
fn column_maps_are_injective_with_recoverable_cases() {
    for (a, b, m, l) in [(1, 2, 5, 3), (2, 3, 7, 2), (1, 3, 8, 2), (1, 4, 9, 2)] {
        let p = PhikParams::new(a, b, m, l).unwrap();
        let cod = Constraints::new(m).residues(&[a, m - a]).max_part(p.codomain_max());
        for n in (0..=60).filter(|n| n % m == 0 || (p.has_half_class() && n % m == m / 2)) {
            let dom = domain(&p, n, 0);
            let report = verify_injection(
                &dom,
                |lam| phik(lam, &p, slice(lam, &p)),
                |mu| cod.admits(mu),
                AuditOptions { part_count: true },
            );
            assert!(report.passed(), "{:?} n={n}: {:?}", p, report.findings.first());
            for row in &report.table {
                let k = slice(&row.preimage, &p);
                assert_eq!(phik_image_case(&row.image, &p, k, 0), Ok(row.case));
            }
        }
    }
}

#[test]
fn distinct_and_gap_variants_agree_where_they_overlap() {
    let p = PhikParams::new(1, 2, 5, 4).unwrap();
    for n in [5, 10, 15, 20, 25, 30] {
        for lam in domain(&p, n, 1) {
            let k = slice(&lam, &p);
            let (mu, tag) = phik_distinct(&lam, &p, k).unwrap();
            assert_eq!(phik_gap(&lam, &p, k, 1).unwrap(), (mu.clone(), tag));
            assert!(mu.is_distinct());
        }
        for lam in domain(&p, n, 0) {
            let k = slice(&lam, &p);
            assert_eq!(phik_gap(&lam, &p, k, 0).unwrap(), phik(&lam, &p, k).unwrap());
        }
    }
}

#[test]
fn every_case_occurs() {
    let p = PhikParams::new(1, 2, 5, 3).unwrap();
    let mut tags = BTreeSet::new();
    for n in (0..=50).step_by(5) {
        for lam in domain(&p, n, 0) {
            tags.insert(phik(&lam, &p, slice(&lam, &p)).unwrap().1);
        }
    }
    assert_eq!(
        tags,
        BTreeSet::from([CaseTag::C1, CaseTag::C2a, CaseTag::C2b, CaseTag::Swap])
    );
}

proptest! {
    #[test]
    fn column_map_preserves_weight_and_parts(levels in prop::collection::vec((0u64..3, prop::bool::ANY), 0..12)) {
        let p = PhikParams::new(2, 3, 7, 3).unwrap();
        let lam = Partition::from_parts(
            &levels.iter().map(|&(j, hi)| j * 7 + if hi { 4 } else { 3 }).collect::<Vec<_>>(),
        );
        let k = slice(&lam, &p);
        match phik(&lam, &p, k) {
            Ok((mu, tag)) => {
                prop_assert_eq!(mu.weight(), lam.weight());
                prop_assert_eq!(mu.num_parts(), lam.num_parts());
                prop_assert!(mu.max_part().unwrap_or(0) <= p.codomain_max());
                prop_assert_eq!(phik_image_case(&mu, &p, k, 0), Ok(tag));
            }
            // only weights outside the covered classes are rejected
            Err(_) => prop_assert!(!lam.weight().is_multiple_of(7)),
        }
    }
}

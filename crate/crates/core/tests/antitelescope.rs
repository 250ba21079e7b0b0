use num_bigint::BigInt;
use partineq::antitelescope::{anti_telescope, g_sequence, kr5_injection_check, kr5_map, kr_family, kr_term_certificate};
use partineq::partitions::{count, Constraints};
use partineq::qseries::Length;
use partineq::{Partition, ProductSpec, QPoly};
use proptest::prelude::*;

#[test]
fn g_i_counts_gap_two_partitions_with_parts_at_least_i() {
    let g = g_sequence(8, 60).unwrap();
    for i in 1..=8u64 {
        let gi = g.g(i).unwrap();
        let c = Constraints::new(1).min_gap(1).min_part(i);
        for n in 0..=gi.trunc() {
            assert_eq!(gi.coeff(n), Some(&BigInt::from(count(n, &c))), "G_{i} at q^{n}");
        }
    }
}

#[test]
fn certified_windows_shrink_as_documented() {
    let g = g_sequence(10, 100).unwrap();
    for i in 1..=10u64 {
        let expected = if i <= 2 { 100 } else { 100 - (i - 2) * (i - 1) / 2 };
        assert_eq!(g.g(i).unwrap().trunc(), expected);
    }
}

#[test]
fn kr_terms_nonnegative_and_closed_form() {
    for l in 1..=6 {
        for j in 1..=l {
            let (series, cert) = kr_term_certificate(j, l, 150).unwrap();
            assert!(cert.nonnegative);
            assert_eq!(cert.lowest_degree, Some(12 * j - 8));
            assert!(series.is_nonnegative());
        }
    }
}

#[test]
fn kr5_weight_three_and_full_check() {
    let (mu, _) = kr5_map(&Partition::from_parts(&[3])).unwrap();
    assert_eq!(mu, Partition::from_parts(&[2, 1]));
    assert!(kr5_map(&Partition::from_parts(&[1])).is_err());
    let check = kr5_injection_check(120);
    assert!(check.passed());
    assert_eq!(check.audit_weight, 40);
}

proptest! {
    #[test]
    fn telescoping_identity(
        m in 2u64..9,
        ps in prop::collection::vec(1u64..9, 1..4),
        qs in prop::collection::vec(1u64..9, 1..4),
        l in 1u64..5,
    ) {
        let n = 50;
        let p = ProductSpec::reciprocal(m, Length::Infinite, &ps);
        let q = ProductSpec::reciprocal(m, Length::Infinite, &qs);
        let terms = anti_telescope(&p, &q, l, n).unwrap();
        prop_assert_eq!(terms.len() as u64, l);
        let sum = terms.iter().fold(QPoly::zero(n), |acc, t| &acc + &t.series);
        let direct = &ProductSpec::reciprocal(m, Length::Finite(l), &ps).expand_q(n).unwrap()
            - &ProductSpec::reciprocal(m, Length::Finite(l), &qs).expand_q(n).unwrap();
        prop_assert_eq!(sum, direct);
    }
}

#[test]
fn kr_family_is_the_documented_pair() {
    let (p, q) = kr_family();
    assert_eq!(p.factors.iter().map(|f| f.shift).collect::<Vec<_>>(), vec![1, 4, 11]);
    assert_eq!(q.factors.iter().map(|f| f.shift).collect::<Vec<_>>(), vec![1, 7, 8]);
}

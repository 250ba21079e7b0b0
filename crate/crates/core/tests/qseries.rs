use num_bigint::BigInt;
use partineq::partitions::{count, count_generated, Constraints};
use partineq::qseries::{rr_product_side, rr_sum_side, FactorSign, Length, RrVariant};
use partineq::{ProductSpec, QPoly};
use proptest::prelude::*;

fn poly(max_len: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-50i64..50, 1..max_len).prop_map(|c| {
        let trunc = c.len() as u64 - 1;
        QPoly::from_i64s(&c, trunc)
    })
}

fn unit_poly() -> impl Strategy<Value = QPoly> {
    (prop::bool::ANY, prop::collection::vec(-9i64..9, 0..12)).prop_map(|(neg, mut c)| {
        c.insert(0, if neg { -1 } else { 1 });
        let trunc = c.len() as u64 - 1;
        QPoly::from_i64s(&c, trunc)
    })
}

fn spec() -> impl Strategy<Value = ProductSpec> {
    let factor = (1u64..9, prop::bool::ANY, prop::bool::ANY);
    let extra = (1u64..30, prop::bool::ANY, prop::bool::ANY);
    (
        1u64..9,
        prop_oneof![(0u64..4).prop_map(Length::Finite), Just(Length::Infinite)],
        prop::collection::vec(factor, 0..3),
        prop::collection::vec(extra, 0..2),
    )
        .prop_map(|(m, l, factors, extras)| {
            let sign = |d: bool| if d { FactorSign::Distinct } else { FactorSign::Reciprocal };
            let mut s = ProductSpec::new(m, l);
            for (shift, z, d) in factors {
                s.factors.push(partineq::qseries::Factor { shift, z, sign: sign(d) });
            }
            for (e, z, d) in extras {
                s = s.with_extra(e, z, sign(d));
            }
            s
        })
}

proptest! {
    #[test]
    fn ring_axioms(f in poly(16), g in poly(16), h in poly(16)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        let n = f.trunc().min(g.trunc());
        prop_assert_eq!((&f + &g).trunc(), n);
    }

    #[test]
    fn inverse_is_two_sided(f in unit_poly()) {
        let inv = f.invert().unwrap();
        prop_assert_eq!(&f * &inv, QPoly::one(f.trunc()));
        prop_assert_eq!(inv.invert().unwrap(), f);
    }

    #[test]
    fn factor_ops_match_multiplication(f in poly(20), e in 1u64..6) {
        let n = f.trunc();
        let mut binom = QPoly::from_terms(&[(0, 1), (e, -1)], n);
        if e > n {
            binom = QPoly::one(n);
        }
        let mut g = f.clone();
        g.mul_one_minus(e);
        prop_assert_eq!(&g, &(&f * &binom));
        g.div_one_minus(e);
        prop_assert_eq!(g, f);
    }

    #[test]
    fn spec_json_round_trip(s in spec()) {
        let text = s.to_json();
        prop_assert_eq!(ProductSpec::from_json(&text).unwrap(), s);
    }

    #[test]
    fn expansion_matches_multiset_oracle(s in spec()) {
        let w = 24;
        let counts = count_generated(w, &s.generators(w));
        let zq = s.expand_zq(w).unwrap();
        let q = s.expand_q(w).unwrap();
        for (n, row) in counts.iter().enumerate() {
            for (&m, &c) in row {
                prop_assert_eq!(zq.coeff(m, n as u64), BigInt::from(c));
            }
            let total: u64 = row.values().sum();
            prop_assert_eq!(q.coeff(n as u64), Some(&BigInt::from(total)));
        }
    }
}

#[test]
fn reciprocal_products_count_residue_partitions() {
    for (m, shifts) in [(5u64, vec![1u64, 4]), (6, vec![2, 4]), (7, vec![1, 3, 6]), (1, vec![1])] {
        let s = ProductSpec::reciprocal(m, Length::Infinite, &shifts).expand_q(40).unwrap();
        let c = Constraints::new(m).residues(&shifts);
        for n in 0..=40 {
            assert_eq!(s.coeff(n), Some(&BigInt::from(count(n, &c))), "M={m} n={n}");
        }
    }
}

#[test]
fn distinct_products_count_distinct_partitions() {
    for (m, l, shifts) in [(5u64, 3u64, vec![1u64, 4]), (4, 10, vec![1, 3]), (7, 2, vec![2, 5])] {
        let s = ProductSpec::distinct(m, Length::Finite(l), &shifts).expand_q(40).unwrap();
        let c = Constraints::new(m).residues(&shifts).max_part((l - 1) * m + shifts.iter().max().unwrap()).distinct();
        for n in 0..=40 {
            assert_eq!(s.coeff(n), Some(&BigInt::from(count(n, &c))), "M={m} L={l} n={n}");
        }
    }
}

#[test]
fn rogers_ramanujan_sum_equals_product() {
    for v in [1u8, 2] {
        let v = RrVariant::try_from(v).unwrap();
        assert_eq!(rr_sum_side(v, 120), rr_product_side(v).expand_q(120).unwrap());
    }
    assert!(RrVariant::try_from(3).is_err());
}

#[test]
fn display_and_geometric_series() {
    let mut g = QPoly::one(5);
    g.div_one_minus(1);
    assert_eq!(g.to_string(), "1 + q + q^2 + q^3 + q^4 + q^5");
    assert_eq!(QPoly::zero(3).to_string(), "0");
    assert_eq!(ProductSpec::new(5, Length::Finite(0)).expand_q(5).unwrap().to_string(), "1");
}

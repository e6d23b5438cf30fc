//! Randomized structural laws of the exact engines.
//!
//! Each property states an algebraic fact the engines must satisfy on all
//! inputs — norm axioms, agreement between the interval-restricted dynamic
//! programs and the exhaustive subset oracle, hereditariness of the set
//! families, convexity of the averaging hierarchy — and checks it on
//! proptest-generated cases. Sizes stay small enough that every evaluation
//! is exact and fast; the point is breadth of shapes, not scale.

use std::collections::BTreeSet;

use proptest::prelude::*;

use num_traits::{Signed, Zero};
use tsirelson_core::averages::repeated_average;
use tsirelson_core::constructions::{
    distance_in_distribution, equals_in_distribution, l1m_average_block, mixing_r,
    solve_mixing_target,
};
use tsirelson_core::norms::{self, implicit, oracle, spreading_norm, NormSpec, TruncatedInner};
use tsirelson_core::ordinal::{parse_ordinal, OrdinalCnf};
use tsirelson_core::rat::{int, q, Rational};
use tsirelson_core::schreier::{FiniteSet, SchreierCtx};
use tsirelson_core::stream::IndexStream;
use tsirelson_core::vector::RationalVector;
use tsirelson_core::Error;

/// Nonzero rationals with small numerators and denominators, both signs.
fn coeff() -> impl Strategy<Value = Rational> {
    (1i64..=4, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| if neg { -q(n, d) } else { q(n, d) })
}

/// Nonzero vectors with support inside `1..=max_index`.
fn sparse_vector(max_index: u64, max_support: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::btree_set(1u64..=max_index, 1..=max_support)
        .prop_flat_map(|idx| {
            let len = idx.len();
            (Just(idx), prop::collection::vec(coeff(), len))
        })
        .prop_map(|(idx, vals)| {
            RationalVector::from_entries(idx.into_iter().zip(vals).collect())
                .expect("indices strictly increase and coefficients are nonzero")
        })
}

/// The interval-engine specs cheap enough for broad random testing.
fn light_specs() -> Vec<NormSpec> {
    vec![
        NormSpec::Tsirelson,
        NormSpec::TsirelsonQ(q(1, 5)),
        NormSpec::N1(q(7, 10)),
        NormSpec::N4,
        NormSpec::TruncJ(2, q(1, 5)),
        NormSpec::TruncQ(2, q(1, 5)),
        NormSpec::SupJ(q(1, 5)),
        NormSpec::Triple(q(1, 5)),
    ]
}

/// The recursive engines whose oracle re-evaluation is exponential twice
/// over; they get smaller inputs.
fn heavy_specs() -> Vec<NormSpec> {
    vec![NormSpec::N2(q(1, 2)), NormSpec::N3]
}

fn flip_subset(x: &RationalVector, flips: &BTreeSet<u64>) -> RationalVector {
    RationalVector::from_entries(
        x.entries()
            .iter()
            .map(|(i, v)| {
                if flips.contains(i) {
                    (*i, -v.clone())
                } else {
                    (*i, v.clone())
                }
            })
            .collect(),
    )
    .expect("sign flips preserve canonical form")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ordinal_render_parse_round_trips(
        terms in prop::collection::btree_map(0u32..=4, 1u64..=9, 1..=3)
    ) {
        let mut list: Vec<(u32, u64)> = terms.into_iter().collect();
        list.reverse();
        let ordinal = OrdinalCnf::from_terms(list)
            .expect("strictly decreasing exponents, positive coefficients");
        let rendered = ordinal.render();
        let parsed = parse_ordinal(&rendered).expect("rendered form is parseable");
        prop_assert_eq!(parsed, ordinal);
    }

    #[test]
    fn spreading_norm_ignores_zero_insertion(
        coeffs in prop::collection::vec(coeff(), 1..=8),
        positions in prop::collection::vec(0usize..=10, 1..=3),
    ) {
        let reference = spreading_norm(&coeffs);
        let mut padded = coeffs;
        for pos in positions {
            let at = pos.min(padded.len());
            padded.insert(at, Rational::zero());
        }
        prop_assert_eq!(spreading_norm(&padded), reference);
    }

    #[test]
    fn mixing_curve_is_nondecreasing_and_inverts_targets(
        n1 in 0i64..=24,
        n2 in 0i64..=24,
        den in 2i64..=40,
        off in 1i64..=39,
    ) {
        let (lo, hi) = if n1 <= n2 { (n1, n2) } else { (n2, n1) };
        let r_lo = mixing_r(&q(lo, 24)).expect("t in [0, 1]");
        let r_hi = mixing_r(&q(hi, 24)).expect("t in [0, 1]");
        prop_assert!(r_lo <= r_hi);

        let target = q(den + off.min(den - 1), den);
        let t = solve_mixing_target(&target).expect("target in (1, 2)");
        prop_assert_eq!(mixing_r(&t).expect("solution in [0, 1]"), target);
    }

    #[test]
    fn l1m_blocks_are_constant_normalized_and_consecutive(
        m in 1u64..=10,
        extra in 0u64..=8,
    ) {
        let start = m + extra;
        let block = l1m_average_block(m, start).expect("start >= m");
        let entries = block.entries();
        prop_assert_eq!(entries.len() as u64, m);
        let expected = if m == 1 { int(1) } else { q(2, m as i64) };
        for (k, (i, v)) in entries.iter().enumerate() {
            prop_assert_eq!(*i, start + k as u64);
            prop_assert_eq!(v.clone(), expected.clone());
        }
        prop_assert_eq!(implicit::tsirelson_norm(&block), int(1));
        if m >= 2 {
            prop_assert_eq!(block.l1(), int(2));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn implicit_norms_satisfy_the_norm_axioms(
        x in sparse_vector(10, 5),
        y in sparse_vector(10, 5),
        (sn, sd, sneg) in (0i64..=3, 1i64..=3, any::<bool>()),
        flips in prop::collection::btree_set(1u64..=10, 0..=5),
        shrink in prop::collection::vec(0i64..=4, 5),
        unit_index in 1u64..=30,
    ) {
        let scalar = if sneg { -q(sn, sd) } else { q(sn, sd) };
        for spec in light_specs() {
            let nx = norms::evaluate(&spec, &x).expect("valid parameters");
            let ny = norms::evaluate(&spec, &y).expect("valid parameters");

            // positivity on nonzero vectors, except for the truncated
            // levels, which are zero below their level threshold
            if !matches!(spec, NormSpec::TruncJ(..) | NormSpec::TruncQ(..)) {
                prop_assert!(nx > Rational::zero());
            }

            // absolute homogeneity
            let scaled = norms::evaluate(&spec, &x.scale(&scalar)).expect("valid parameters");
            prop_assert_eq!(scaled, scalar.abs() * &nx);

            // triangle inequality
            let nsum = norms::evaluate(&spec, &x.add(&y)).expect("valid parameters");
            prop_assert!(nsum <= &nx + &ny);

            // invariance under sign flips
            let nflip = norms::evaluate(&spec, &flip_subset(&x, &flips)).expect("valid parameters");
            prop_assert_eq!(nflip, nx.clone());

            // solidity: shrinking coordinates never raises the value
            let shrunk = RationalVector::collect(
                x.entries()
                    .iter()
                    .zip(shrink.iter().cycle())
                    .map(|((i, v), f)| (*i, v * q(*f, 4))),
            )
            .expect("indices stay valid");
            let nshrunk = norms::evaluate(&spec, &shrunk).expect("valid parameters");
            prop_assert!(nshrunk <= nx.clone());

            // sup / l1 sandwich for the full norms; unit vectors sit on
            // the sphere of everything except the bonus-carrying variants
            match spec {
                NormSpec::Tsirelson | NormSpec::N1(_) | NormSpec::N4 => {
                    prop_assert!(x.sup_abs() <= nx.clone());
                    prop_assert!(nx.clone() <= x.l1());
                    let unit = norms::evaluate(&spec, &RationalVector::unit(unit_index))
                        .expect("valid parameters");
                    prop_assert_eq!(unit, int(1));
                }
                _ => {}
            }
        }
    }

    #[test]
    fn alignment_distance_is_a_pseudometric(
        xs in prop::collection::vec(coeff(), 1..=4),
        ys in prop::collection::vec(coeff(), 1..=4),
        zs in prop::collection::vec(coeff(), 1..=4),
    ) {
        let spec = NormSpec::Spreading;
        let d = |a: &[Rational], b: &[Rational]| {
            distance_in_distribution(a, b, &spec)
                .expect("within the alignment size cap")
                .achieved
        };
        prop_assert!(d(&xs, &xs).is_zero());
        let dxy = d(&xs, &ys);
        prop_assert_eq!(&dxy, &d(&ys, &xs));
        prop_assert_eq!(dxy.is_zero(), equals_in_distribution(&xs, &ys));
        let dxz = d(&xs, &zs);
        let dyz = d(&ys, &zs);
        prop_assert!(dxz <= dxy + dyz);
    }

    #[test]
    fn interval_engines_match_the_subset_oracle(x in sparse_vector(8, 5)) {
        for spec in light_specs() {
            let fast = norms::evaluate(&spec, &x).expect("valid parameters");
            let slow = oracle::oracle_norm(&spec, &x).expect("support fits the oracle cap");
            prop_assert_eq!(fast, slow);
        }
    }

    #[test]
    fn sup_truncation_equals_the_pointwise_maximum(x in sparse_vector(9, 5)) {
        let qv = q(1, 5);
        let sup = implicit::sup_j_norm(&x, &qv).expect("q in range");
        let top = x.max_support().expect("nonzero vector");
        let mut best = Rational::zero();
        for n in 1..=top {
            let (plain, _) = implicit::truncated_norms(&x, n, &qv, TruncatedInner::QNorm)
                .expect("level >= 1");
            if plain > best {
                best = plain;
            }
        }
        prop_assert_eq!(sup, best);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn recursive_engines_match_the_subset_oracle(x in sparse_vector(7, 4)) {
        for spec in heavy_specs() {
            let fast = norms::evaluate(&spec, &x).expect("valid parameters");
            let slow = oracle::oracle_norm(&spec, &x).expect("support fits the oracle cap");
            prop_assert_eq!(fast, slow);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn schreier_families_are_hereditary_and_spreading(
        alpha_pick in 0usize..4,
        f in prop::collection::btree_set(1u64..=12, 1..=5),
        submask in prop::collection::vec(any::<bool>(), 5),
        deltas in prop::collection::vec(0u64..=3, 5),
    ) {
        let alpha = parse_ordinal(["1", "2", "w", "w+1"][alpha_pick]).expect("literal");
        let ctx = SchreierCtx::new();
        let elements: Vec<u64> = f.into_iter().collect();
        let fset = FiniteSet::new(elements.clone()).expect("sorted and distinct");
        if !ctx.member(&fset, &alpha) {
            return Ok(());
        }

        // hereditary: subsets of members are members
        let sub: Vec<u64> = elements
            .iter()
            .zip(&submask)
            .filter(|(_, keep)| **keep)
            .map(|(v, _)| *v)
            .collect();
        let subset = FiniteSet::new(sub).expect("subsequence stays sorted");
        prop_assert!(ctx.member(&subset, &alpha));

        // spreading: moving elements to the right preserves membership
        let mut moved = Vec::with_capacity(elements.len());
        let mut prev = 0u64;
        for (v, d) in elements.iter().zip(&deltas) {
            let h = (v + d).max(prev + 1);
            moved.push(h);
            prev = h;
        }
        let moved = FiniteSet::new(moved).expect("strictly increasing by construction");
        prop_assert!(ctx.member(&moved, &alpha));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn repeated_averages_are_schreier_convex_combinations(
        alpha_pick in 0usize..3,
        stream_pick in 0usize..4,
        start in 1u64..=5,
        step in 1u64..=3,
        n_raw in 1u64..=3,
    ) {
        let alpha = parse_ordinal(["1", "2", "w"][alpha_pick]).expect("literal");
        let stream = match stream_pick {
            0 => IndexStream::naturals(),
            1 => IndexStream::evens(),
            2 => IndexStream::arithmetic(start, step).expect("start, step >= 1"),
            _ => IndexStream::explicit_then_arithmetic(vec![1, 4, 9], step)
                .expect("increasing prefix"),
        };
        // beyond level 1 the element consumption explodes past any
        // desk-scale budget after the first term
        let n = if alpha_pick == 0 { n_raw } else { 1 };
        match repeated_average(&alpha, &stream, n, 200_000) {
            Err(Error::BudgetExceeded { .. }) => {}
            Err(other) => prop_assert!(false, "unexpected error: {other}"),
            Ok(res) => {
                let mut total = Rational::zero();
                for (i, v) in res.vector.entries() {
                    prop_assert!(*v > Rational::zero());
                    prop_assert!(stream.position_of(*i).is_some());
                    total += v.clone();
                }
                prop_assert_eq!(total, int(1));
                prop_assert_eq!(&res.support, &res.vector.support());
                prop_assert!(SchreierCtx::new().member(&res.support, &alpha));
            }
        }
    }
}

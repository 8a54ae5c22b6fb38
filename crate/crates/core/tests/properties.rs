use num_bigint::BigInt;
use proptest::prelude::*;

use mrbound_core::multirec::{identically_vanishing_subsums, shell, shell_size, LatticePoint, MultiPoly, Term};
use mrbound_core::verifier::{bound_ratio, norm_bound_check, scan_shells, RatioOutcome, VerifierConfig};
use mrbound_core::{Error, FieldElement, MultiRecurrence, NumberField, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn q5() -> NumberField {
    NumberField::from_i64(&[-5, 0, 1]).unwrap()
}

fn cbrt2() -> NumberField {
    NumberField::from_i64(&[-2, 0, 0, 1]).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn coords(d: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), d)
}

fn elem(k: &NumberField, c: Vec<Rational>) -> FieldElement {
    k.element(c).unwrap()
}

fn field_case() -> impl Strategy<Value = (bool, Vec<Rational>, Vec<Rational>, Vec<Rational>)> {
    any::<bool>().prop_flat_map(|cubic| {
        let d = if cubic { 3 } else { 2 };
        (Just(cubic), coords(d), coords(d), coords(d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn ring_axioms((cubic, a, b, c) in field_case()) {
        let k = if cubic { cbrt2() } else { q5() };
        let (x, y, z) = (elem(&k, a), elem(&k, b), elem(&k, c));
        let lhs = x.add(&y).unwrap().mul(&z).unwrap();
        let rhs = x.mul(&z).unwrap().add(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_round_trip((cubic, a, _, _) in field_case()) {
        let k = if cubic { cbrt2() } else { q5() };
        let x = elem(&k, a);
        prop_assume!(!x.is_zero());
        prop_assert!(x.mul(&x.inv().unwrap()).unwrap().is_one());
        prop_assert_eq!(k.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn minimal_polynomial_vanishes((cubic, a, _, _) in field_case()) {
        let k = if cubic { cbrt2() } else { q5() };
        let x = elem(&k, a);
        let mut acc = k.zero();
        for (i, c) in x.minimal_polynomial().coeffs().iter().enumerate() {
            acc = acc.add(&x.pow(i as u64).scale(&Rational::from_integer(c.clone()))).unwrap();
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn embeddings_match_trace_and_norm((cubic, a, _, _) in field_case()) {
        let k = if cubic { cbrt2() } else { q5() };
        let x = elem(&k, a);
        let emb = x.embeddings(96).unwrap();
        prop_assert_eq!(emb.len(), k.degree());
        let mut sum = emb[0].clone();
        let mut prod = emb[0].clone();
        for e in &emb[1..] {
            sum = sum.add(e);
            prod = prod.mul(e);
        }
        prop_assert!(sum.re.contains_rational(&x.trace()));
        prop_assert!(sum.im.contains_rational(&q(0, 1)));
        prop_assert!(prod.re.contains_rational(&x.norm()));
        prop_assert!(prod.im.contains_rational(&q(0, 1)));
    }

    #[test]
    fn house_is_submultiplicative((cubic, a, b, _) in field_case()) {
        let k = if cubic { cbrt2() } else { q5() };
        let (x, y) = (elem(&k, a), elem(&k, b));
        let hxy = x.mul(&y).unwrap().house(64).unwrap();
        let bound = x.house(64).unwrap().mul(&y.house(64).unwrap());
        prop_assert!(hxy.lo() <= bound.hi());
    }

    #[test]
    fn denominator_clears((cubic, a, _, _) in field_case()) {
        let k = if cubic { cbrt2() } else { q5() };
        let x = elem(&k, a);
        let d = x.denominator();
        prop_assert!(d >= BigInt::from(1));
        prop_assert!(x.scale(&Rational::from_integer(d)).is_algebraic_integer());
    }
}

/// Algebraic integers of Q(√5) used as bases: 1, -1, 2, 3, φ, ψ, √5.
const BASES: [(i64, i64, i64, i64); 7] = [(1, 1, 0, 1), (-1, 1, 0, 1), (2, 1, 0, 1), (3, 1, 0, 1), (1, 2, 1, 2), (1, 2, -1, 2), (0, 1, 1, 1)];

type RawTerm = (Vec<(u32, u32, i64, i64)>, usize, usize);

fn raw_term() -> impl Strategy<Value = RawTerm> {
    (prop::collection::vec((0u32..=2, 0u32..=2, -4i64..=4, -3i64..=3), 1..=3), 0..BASES.len(), 0..BASES.len())
}

fn build(k: &NumberField, raw: &[RawTerm], scale: &Rational) -> Vec<Term> {
    let base = |i: usize| {
        let (a, b, c, d) = BASES[i];
        k.element(vec![q(a, b), q(c, d)]).unwrap()
    };
    raw.iter()
        .filter_map(|(monos, b1, b2)| {
            let terms = monos.iter().map(|&(e1, e2, a, c)| (vec![e1, e2], k.element(vec![q(a, 1), q(c, 2)]).unwrap()));
            let poly = MultiPoly::from_terms(k, 2, terms).unwrap().scale(scale);
            (!poly.is_zero()).then(|| Term::new(poly, vec![base(*b1), base(*b2)]).unwrap())
        })
        .collect()
}

fn point() -> impl Strategy<Value = LatticePoint> {
    (0u64..=6, 0u64..=6).prop_filter("non-zero", |(a, b)| a + b > 0).prop_map(|(a, b)| LatticePoint::new(vec![a, b]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn canonical_sum_matches_raw_sum(raw in prop::collection::vec(raw_term(), 1..=5), pts in prop::collection::vec(point(), 20)) {
        let k = q5();
        let terms = build(&k, &raw, &q(1, 1));
        prop_assume!(!terms.is_empty());
        let canon = MultiRecurrence::canonicalize(terms.clone());
        for n in &pts {
            let mut raw_sum = k.zero();
            for t in &terms {
                raw_sum = raw_sum.add(&t.eval(n).unwrap()).unwrap();
            }
            match &canon {
                Ok(g) => prop_assert_eq!(g.eval(n).unwrap(), raw_sum),
                Err(e) => {
                    prop_assert_eq!(e, &Error::EmptyRecurrence);
                    prop_assert!(raw_sum.is_zero());
                }
            }
        }
    }

    #[test]
    fn vanishing_subsets_sum_to_zero(raw in prop::collection::vec(raw_term(), 1..=5), n in point()) {
        let k = q5();
        let Ok(g) = MultiRecurrence::canonicalize(build(&k, &raw, &q(1, 1))) else { return Ok(()) };
        let values = g.term_values(&n).unwrap();
        for i0 in 1..=g.len() {
            for s in g.pointwise_vanishing_subsums(&n, i0).unwrap() {
                prop_assert!(s.contains(&i0));
                let mut acc = k.zero();
                for i in &s {
                    acc = acc.add(&values[i - 1]).unwrap();
                }
                prop_assert!(acc.is_zero());
            }
            prop_assert!(identically_vanishing_subsums(g.terms(), i0, 16).unwrap().is_empty());
        }
    }

    #[test]
    fn single_term_never_vanishes(raw in raw_term(), n in point()) {
        let k = q5();
        let terms = build(&k, &[raw], &q(1, 1));
        prop_assume!(!terms.is_empty());
        let g = MultiRecurrence::canonicalize(terms).unwrap();
        prop_assume!(!g.terms()[0].poly().eval(&n).unwrap().is_zero());
        prop_assert!(g.pointwise_vanishing_subsums(&n, 1).unwrap().is_empty());
    }

    #[test]
    fn skip_classification_is_scale_invariant(
        raw in prop::collection::vec(raw_term(), 1..=4),
        s in rational(),
        n in point(),
    ) {
        prop_assume!(s != q(0, 1));
        let k = q5();
        let (Ok(g), Ok(h)) = (
            MultiRecurrence::canonicalize(build(&k, &raw, &q(1, 1))),
            MultiRecurrence::canonicalize(build(&k, &raw, &s)),
        ) else { return Ok(()) };
        let cfg = VerifierConfig::new(q(1, 10), 1, 6);
        let kind = |o: RatioOutcome| match o {
            RatioOutcome::SkipZeroF => Some(Vec::new()),
            RatioOutcome::SkipVanishing(v) => Some(v),
            _ => None,
        };
        prop_assert_eq!(kind(bound_ratio(&g, &cfg, &n).unwrap()), kind(bound_ratio(&h, &cfg, &n).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scans_partition_points_and_are_antitone(raw in prop::collection::vec(raw_term(), 1..=4), e1 in 1i64..=20, de in 1i64..=20) {
        let k = q5();
        let Ok(g) = MultiRecurrence::canonicalize(build(&k, &raw, &q(1, 1))) else { return Ok(()) };
        let small = scan_shells(&g, &VerifierConfig::new(q(e1, 40), 1, 8)).unwrap();
        let large = scan_shells(&g, &VerifierConfig::new(q(e1 + de, 40), 1, 8)).unwrap();
        for s in small.shells.iter().chain(&large.shells) {
            prop_assert_eq!(s.points_total, shell_size(2, s.norm));
            prop_assert_eq!(s.points_total, shell(2, s.norm).len() as u64);
            prop_assert_eq!(s.evaluated + s.skipped_vanishing + s.skipped_zero_f + s.undecided, s.points_total);
        }
        if let (Some(t1), Some(t2)) = (small.threshold, large.threshold) {
            prop_assert!(t2 <= t1, "threshold({}/40) = {} > threshold({}/40) = {}", e1 + de, t2, e1, t1);
        }
        prop_assert_eq!(&small, &scan_shells(&g, &VerifierConfig::new(q(e1, 40), 1, 8)).unwrap());
    }

    #[test]
    fn norm_bound_never_fails(raw in prop::collection::vec(raw_term(), 1..=4), n in point()) {
        let k = q5();
        let Ok(g) = MultiRecurrence::canonicalize(build(&k, &raw, &q(1, 1))) else { return Ok(()) };
        prop_assert!(norm_bound_check(&g, &n, 128).unwrap().holds);
    }
}

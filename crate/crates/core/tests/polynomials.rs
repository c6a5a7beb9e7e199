use arboreal::pcf::{
    critical_block_is_square, critical_product, disc_iterate, embedding_target, pcf_classify,
    PcfError, SymbolicProducts, DEFAULT_ORBIT_BOUND,
};
use arboreal::polyarith::{discriminant, is_square_rat, parse_rat, rat, resultant, IterPoly, Rat};
use num_traits::{One, Zero};
use proptest::prelude::*;

mod common;
use common::{assert_square_quotient, CORPUS};

fn poly(coeffs: &[i64]) -> IterPoly {
    IterPoly::from_ints(coeffs)
}

/// Determinant of the Sylvester matrix by fraction Gaussian elimination.
fn sylvester_resultant(f: &IterPoly, g: &IterPoly) -> Rat {
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    let size = m + n;
    let mut rows = vec![vec![Rat::zero(); size]; size];
    for r in 0..n {
        for (i, c) in f.coeffs().iter().rev().enumerate() {
            rows[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in g.coeffs().iter().rev().enumerate() {
            rows[n + r][r + i] = c.clone();
        }
    }
    let mut det = Rat::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !rows[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        let lead = rows[col][col].clone();
        det *= &lead;
        for r in col + 1..size {
            let factor = &rows[r][col] / &lead;
            if factor.is_zero() {
                continue;
            }
            let (upper, lower) = rows.split_at_mut(r);
            for (target, source) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *target -= &factor * source;
            }
        }
    }
    det
}

fn nonzero_poly(max_degree: usize) -> impl Strategy<Value = IterPoly> {
    (1..=max_degree)
        .prop_flat_map(|deg| (prop::collection::vec(-6i64..=6, deg), prop_oneof![-4i64..=-1, 1i64..=4]))
        .prop_map(|(mut low, lead)| {
            low.push(lead);
            IterPoly::from_ints(&low)
        })
}

fn small_rational() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(a, b)| Rat::new(a.into(), b.into()))
}

#[test]
fn discriminant_of_a_shifted_belyi_cubic() {
    let f = poly(&[1, 0, -3, 2]);
    assert_eq!(discriminant(&f.minus_constant(&rat(3))).unwrap(), rat(-648));
}

#[test]
fn recursion_matches_the_direct_discriminant() {
    let f = poly(&[1, 0, -3, 2]);
    for alpha in [rat(3), rat(-2)] {
        for n in 1..=3 {
            let report = disc_iterate(&f, &alpha, n).unwrap();
            assert_eq!(report.disc_value, report.oracle_value);
            let direct = discriminant(&f.iterate(n).minus_constant(&alpha)).unwrap();
            assert_eq!(report.disc_value, direct, "alpha={alpha} n={n}");
        }
    }
}

#[test]
fn recursion_over_the_corpus() {
    for coeffs in CORPUS {
        let f = poly(coeffs);
        for alpha in ["5", "-1/2", "7/3"] {
            let alpha = parse_rat(alpha).unwrap();
            let n_max = if f.degree() == Some(2) { 3 } else { 2 };
            for n in 1..=n_max {
                let report = disc_iterate(&f, &alpha, n).unwrap();
                assert_eq!(report.disc_value, report.oracle_value, "{coeffs:?} alpha={alpha} n={n}");
            }
        }
    }
}

#[test]
fn disc_of_the_second_iterate_is_a_square() {
    let f = poly(&[1, 0, -3, 2]);
    for alpha in [rat(3), rat(-2)] {
        let disc = discriminant(&f.iterate(2).minus_constant(&alpha)).unwrap();
        assert!(!disc.is_zero());
        assert!(is_square_rat(&disc), "alpha={alpha}: {disc}");
    }
}

#[test]
fn nonsquare_quotient_over_the_corpus() {
    for coeffs in CORPUS {
        let f = poly(coeffs);
        for alpha in ["3", "-2", "5", "2/3"] {
            let alpha = parse_rat(alpha).unwrap();
            for n in 1..=3 {
                assert_square_quotient(&f, &alpha, n);
            }
        }
    }
}

#[test]
fn pcf_profiles_and_targets() {
    let cases: [(&[i64], (usize, usize), &str); 4] = [
        (&[1, 0, -3, 2], (0, 1), "E_n^2"),
        (&[0, 0, 3, -2], (0, 1), "E_n^2"),
        (&[0, -3, 0, 4], (1, 1), "E_n^2"),
        (&[-1, 0, 1], (0, 2), "F_n^(3,1)"),
    ];
    for (coeffs, (tail, period), label) in cases {
        let profile = pcf_classify(&poly(coeffs), DEFAULT_ORBIT_BOUND).unwrap();
        assert_eq!((profile.tail, profile.period), (tail, period), "{coeffs:?}");
        assert_eq!(embedding_target(&profile).label(), label, "{coeffs:?}");
    }
}

#[test]
fn generic_cubics_are_not_pcf() {
    for coeffs in [[1i64, 2, 1, 1], [2, -1, 3, 1], [-1, 1, 1, 2]] {
        match pcf_classify(&poly(&coeffs), DEFAULT_ORBIT_BOUND) {
            Err(PcfError::NotPcf) | Err(PcfError::NotPcfWithinBound { .. }) => {}
            other => panic!("{coeffs:?}: {other:?}"),
        }
    }
}

#[test]
fn periodic_critical_block_telescopes() {
    let f = poly(&[1, 0, -3, 2]);
    let symbolic = SymbolicProducts::new(&f, 4).unwrap();
    assert!(critical_block_is_square(&symbolic, 2, 3));
    assert!(critical_block_is_square(&symbolic, 1, 4) == critical_block_is_square(&symbolic, 1, 2));
    for alpha in [rat(3), rat(-2), parse_rat("5/7").unwrap()] {
        for k in 1..=3 {
            assert_eq!(
                symbolic.evaluate(&symbolic.critical[k - 1], &alpha),
                critical_product(&f, &alpha, k).unwrap()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_matches_the_sylvester_determinant(f in nonzero_poly(4), g in nonzero_poly(4)) {
        prop_assert_eq!(resultant(&f, &g).unwrap(), sylvester_resultant(&f, &g));
    }

    #[test]
    fn resultant_is_multiplicative(f in nonzero_poly(3), g in nonzero_poly(3), h in nonzero_poly(3)) {
        let product = resultant(&f, &(&g * &h)).unwrap();
        prop_assert_eq!(product, resultant(&f, &g).unwrap() * resultant(&f, &h).unwrap());
    }

    #[test]
    fn discriminant_vanishes_exactly_on_repeated_roots(f in nonzero_poly(4)) {
        prop_assume!(f.degree().unwrap() >= 1);
        let repeated = f.gcd(&f.derivative()).degree().unwrap_or(0) > 0;
        prop_assert_eq!(discriminant(&f).unwrap().is_zero(), repeated);
    }

    #[test]
    fn squared_factor_kills_the_discriminant(f in nonzero_poly(2), r in -5i64..=5) {
        let linear = poly(&[-r, 1]);
        let g = &(&f * &linear) * &linear;
        prop_assert!(discriminant(&g).unwrap().is_zero());
    }

    #[test]
    fn composition_is_associative(f in nonzero_poly(3), g in nonzero_poly(3), h in nonzero_poly(2)) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
    }

    #[test]
    fn iterates_add(f in nonzero_poly(3), a in 0usize..3, b in 0usize..3) {
        prop_assume!(f.degree().unwrap() >= 2);
        prop_assert_eq!(f.iterate(a + b), f.iterate(a).compose(&f.iterate(b)));
    }

    #[test]
    fn recursion_on_random_cubics(
        low in prop::collection::vec(-4i64..=4, 3),
        lead in prop_oneof![-3i64..=-1, 1i64..=3],
        alpha in small_rational(),
        n in 1usize..=2,
    ) {
        let mut coeffs = low;
        coeffs.push(lead);
        let f = poly(&coeffs);
        let report = disc_iterate(&f, &alpha, n).unwrap();
        prop_assert_eq!(&report.disc_value, &report.oracle_value);
        assert_square_quotient(&f, &alpha, n);
    }

    #[test]
    fn recursion_on_random_quadratics(
        low in prop::collection::vec(-4i64..=4, 2),
        lead in prop_oneof![-3i64..=-1, 1i64..=3],
        alpha in small_rational(),
        n in 1usize..=3,
    ) {
        let mut coeffs = low;
        coeffs.push(lead);
        let f = poly(&coeffs);
        let report = disc_iterate(&f, &alpha, n).unwrap();
        prop_assert_eq!(&report.disc_value, &report.oracle_value);
        assert_square_quotient(&f, &alpha, n);
    }
}

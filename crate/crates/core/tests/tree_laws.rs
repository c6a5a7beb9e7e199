use arboreal::permgroup::{conjugating_inverter, Permutation};
use arboreal::treewreath::{Sign, SignatureKind, TreeShape, WreathElement};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn local_perms(d: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        for x in 0..d {
            if !prefix.contains(&x) {
                prefix.push(x);
                rec(d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(d, &mut Vec::new(), &mut out);
    out
}

fn all_elements(shape: TreeShape) -> Vec<WreathElement> {
    let perms = local_perms(shape.d);
    let slots = shape.internal_vertices();
    let total = perms.len().pow(slots as u32);
    (0..total)
        .map(|mut code| {
            let chosen: Vec<Vec<usize>> = (0..slots)
                .map(|_| {
                    let p = perms[code % perms.len()].clone();
                    code /= perms.len();
                    p
                })
                .collect();
            WreathElement::from_vertex_perms(shape, &chosen).unwrap()
        })
        .collect()
}

fn kinds(n: usize) -> Vec<SignatureKind> {
    let mut out = vec![SignatureKind::Total];
    for m in 1..=n {
        out.push(SignatureKind::Restricted(m));
        out.push(SignatureKind::BlockProduct(m));
        for m2 in 1..m {
            out.push(SignatureKind::Pair(m, m2));
        }
    }
    out
}

fn sig(e: &WreathElement, k: SignatureKind) -> Sign {
    e.signature(k).unwrap()
}

/// Sign identities for odd degree: `sgn = sgn_m · sgn^m` and
/// `sgn^(m1,m2) = sgn_m1 · sgn_m2`.
fn check_identities(e: &WreathElement) {
    let n = e.shape().n;
    let total = sig(e, SignatureKind::Total);
    for m in 1..n {
        assert_eq!(
            total,
            sig(e, SignatureKind::Restricted(m)) * sig(e, SignatureKind::BlockProduct(m)),
            "{e} m={m}"
        );
    }
    for m1 in 2..=n {
        for m2 in 1..m1 {
            assert_eq!(
                sig(e, SignatureKind::Pair(m1, m2)),
                sig(e, SignatureKind::Restricted(m1)) * sig(e, SignatureKind::Restricted(m2)),
                "{e} ({m1},{m2})"
            );
        }
    }
}

fn check_multiplicative(a: &WreathElement, b: &WreathElement, kinds: &[SignatureKind]) {
    let ab = a.compose(b).unwrap();
    for &k in kinds {
        assert_eq!(sig(&ab, k), sig(a, k) * sig(b, k), "{a} ∘ {b} under {k:?}");
    }
}

#[test]
fn sign_laws_exhaustive_depth_two() {
    let shape = TreeShape::new(3, 2).unwrap();
    let all = all_elements(shape);
    assert_eq!(all.len(), 1296);
    let ks = kinds(2);
    for e in &all {
        check_identities(e);
    }
    let table: Vec<Vec<Sign>> = all.iter().map(|e| ks.iter().map(|&k| sig(e, k)).collect()).collect();
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            let ab = a.compose(b).unwrap();
            for (slot, &k) in ks.iter().enumerate() {
                assert_eq!(sig(&ab, k), table[i][slot] * table[j][slot]);
            }
        }
    }
}

#[test]
fn sign_laws_random_depth_three() {
    let shape = TreeShape::new(3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ks = kinds(3);
    for _ in 0..10_000 {
        let a = WreathElement::random(shape, &mut rng);
        let b = WreathElement::random(shape, &mut rng);
        check_identities(&a);
        check_multiplicative(&a, &b, &ks);
    }
}

#[test]
fn even_degree_total_sign_is_the_bottom_block_product() {
    let shape = TreeShape::new(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pair_differs = false;
    for _ in 0..2_000 {
        let e = WreathElement::random(shape, &mut rng);
        assert_eq!(sig(&e, SignatureKind::Total), sig(&e, SignatureKind::BlockProduct(2)));
        let pair = sig(&e, SignatureKind::Pair(2, 1));
        let product = sig(&e, SignatureKind::Restricted(2)) * sig(&e, SignatureKind::Restricted(1));
        pair_differs |= pair != product;
    }
    assert!(pair_differs, "the pair sign and the product of restricted signs differ for even d");
}

/// `E_n^m = (E_(n-1)^m ≀ S_d) ∩ ker(sgn_m)` for `n >= m`, with no sign
/// condition below `m`.
fn recursive_e(e: &WreathElement, m: usize) -> bool {
    let shape = e.shape();
    if shape.n == 1 {
        return m > 1 || sig(e, SignatureKind::Total).is_plus();
    }
    let children_ok = (0..shape.d).all(|i| recursive_e(&e.section(1, i).unwrap(), m));
    children_ok && (shape.n < m || sig(e, SignatureKind::Restricted(m)).is_plus())
}

fn recursive_f(e: &WreathElement, m1: usize, m2: usize) -> bool {
    let shape = e.shape();
    if shape.n == 1 {
        return true;
    }
    let children_ok = (0..shape.d).all(|i| recursive_f(&e.section(1, i).unwrap(), m1, m2));
    children_ok && (shape.n < m1 || sig(e, SignatureKind::Pair(m1, m2)).is_plus())
}

#[test]
fn membership_matches_recursive_definition() {
    let shape = TreeShape::new(3, 2).unwrap();
    let mut e_count = 0;
    let mut f_count = 0;
    for e in all_elements(shape) {
        let in_e = e.is_member_e(2).unwrap();
        assert_eq!(in_e, recursive_e(&e, 2), "{e}");
        assert_eq!(e.is_member_f(2, 1).unwrap(), recursive_f(&e, 2, 1), "{e}");
        e_count += in_e as usize;
        f_count += e.is_member_f(2, 1).unwrap() as usize;
    }
    assert_eq!((e_count, f_count), (648, 648));
    let deep = TreeShape::new(3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..3_000 {
        let e = WreathElement::random(deep, &mut rng);
        assert_eq!(e.is_member_e(2).unwrap(), recursive_e(&e, 2));
        assert_eq!(e.is_member_e(3).unwrap(), recursive_e(&e, 3));
        assert_eq!(e.is_member_f(3, 1).unwrap(), recursive_f(&e, 3, 1));
        assert_eq!(e.is_member_f(2, 1).unwrap(), recursive_f(&e, 2, 1));
    }
}

#[test]
fn e_and_f_differ() {
    let shape = TreeShape::new(3, 2).unwrap();
    let e = WreathElement::parse(shape, "(1 2)[(1 2),(1 2),1]").unwrap();
    assert!(e.is_member_f(2, 1).unwrap());
    assert!(!e.is_member_e(2).unwrap());
}

#[test]
fn every_element_is_conjugate_to_its_inverse() {
    let shape = TreeShape::new(3, 2).unwrap();
    for e in all_elements(shape) {
        let t = conjugating_inverter(&e);
        let conj = t.compose(&e).unwrap().compose(&t.inverse()).unwrap();
        assert_eq!(conj, e.inverse(), "{e}");
    }
}

fn element_strategy(d: usize, n: usize) -> impl Strategy<Value = WreathElement> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        WreathElement::random(TreeShape::new(d, n).unwrap(), &mut rng)
    })
}

proptest! {
    #[test]
    fn compose_is_associative(a in element_strategy(3, 3), b in element_strategy(3, 3), c in element_strategy(3, 3)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn flattening_is_a_homomorphism(a in element_strategy(4, 2), b in element_strategy(4, 2)) {
        let flat: Permutation = a.compose(&b).unwrap().to_flat();
        prop_assert_eq!(flat, a.to_flat().compose(&b.to_flat()));
        prop_assert_eq!(WreathElement::from_flat(a.shape(), &a.to_flat()).unwrap(), a.clone());
    }

    #[test]
    fn inverse_cancels(a in element_strategy(2, 4)) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
    }

    #[test]
    fn text_round_trips(a in element_strategy(3, 3)) {
        let back = WreathElement::parse(a.shape(), &a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn inverter_conjugates_to_inverse(a in element_strategy(5, 2)) {
        let t = conjugating_inverter(&a);
        prop_assert_eq!(t.compose(&a).unwrap().compose(&t.inverse()).unwrap(), a.inverse());
    }
}

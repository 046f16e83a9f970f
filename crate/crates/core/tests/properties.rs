use proptest::prelude::*;

use gwloc::algebra::{Field, Rational, TFunction};
use gwloc::gkm::{is_diagonal, tangent_weights, FixedPoint, Target, WeightAssignment};
use gwloc::graph::{automorphism_order, canonical_form, decode_canonical, enumerate_graphs, Degree, Edge, FixedGraph};
use gwloc::localization::{dimension_check, edge_bundle_oracle, twist_value};
use gwloc::schubert::{classical_product, partitions_in_box, schur_eval, CohomologyVector, Partition2, Poly2};

fn rat() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..100).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn partition(n: u32) -> impl Strategy<Value = Partition2> {
    (0..=n - 2)
        .prop_flat_map(move |a| (Just(a), 0..=a))
        .prop_map(|(a, b)| Partition2::new(a, b).unwrap())
}

fn permuted(g: &FixedGraph, perm: &[usize]) -> FixedGraph {
    let mut labels = vec![g.label(0); g.vertex_count()];
    for (v, &p) in perm.iter().enumerate() {
        labels[p] = g.label(v);
    }
    let edges = g
        .edges()
        .iter()
        .rev()
        .map(|e| Edge {
            u: perm[e.v],
            v: perm[e.u],
            degree: e.degree,
        })
        .collect();
    let marks = g.marks().iter().map(|&v| perm[v]).collect();
    FixedGraph::new(g.target(), g.n(), labels, edges, marks).unwrap()
}

fn sample_graphs() -> Vec<FixedGraph> {
    let mut out = Vec::new();
    for (target, degree, m) in [
        (Target::Grassmannian, Degree::Total(2), 2),
        (Target::ProductPP, Degree::Bi(2, 1), 1),
        (Target::Projective, Degree::Total(3), 1),
    ] {
        out.extend(
            enumerate_graphs(target, 4, degree, m)
                .unwrap()
                .into_iter()
                .map(|g| g.graph),
        );
    }
    out
}

proptest! {
    #[test]
    fn schur_is_symmetric(mu in partition(7), x in rat(), y in rat()) {
        prop_assert_eq!(schur_eval(mu, &x, &y), schur_eval(mu, &y, &x));
    }

    #[test]
    fn schur_on_the_diagonal_matches_the_monomial_expansion(mu in partition(7), x in rat()) {
        let poly = Poly2::schur(mu);
        let deg = mu.codimension();
        let coeff: i64 = (0..=deg).map(|e| i64::try_from(poly.coeff(e, deg - e)).unwrap()).sum();
        let expect = Rational::from_i64(coeff) * x.clone().try_pow(deg as i64).unwrap();
        prop_assert_eq!(schur_eval(mu, &x, &x), expect);
    }

    #[test]
    fn classical_product_commutes_and_associates(
        n in 3u32..7,
        picks in proptest::collection::vec(0usize..64, 3),
    ) {
        let basis = partitions_in_box(n).unwrap();
        let v: Vec<CohomologyVector> =
            picks.iter().map(|&i| CohomologyVector::basis(basis[i % basis.len()])).collect();
        prop_assert_eq!(classical_product(&v[0], &v[1], n), classical_product(&v[1], &v[0], n));
        let left = classical_product(&classical_product(&v[0], &v[1], n), &v[2], n);
        let right = classical_product(&v[0], &classical_product(&v[1], &v[2], n), n);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn tfunction_field_laws(a in rat(), b in rat(), c in rat(), k in 0i64..4) {
        let f = &TFunction::t_plus(a.clone()) * &TFunction::t_plus(b.clone()).try_pow(-k).unwrap();
        let g = TFunction::t_plus(c.clone());
        let h = TFunction::constant(a - c);
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn edge_lemma_closed_form(d in 1u32..=6, c0 in rat(), cinf in rat()) {
        prop_assume!(!c0.is_zero() && !cinf.is_zero());
        let sign = if d % 2 == 1 { 1 } else { -1 };
        let v = edge_bundle_oracle(d, &c0, &cinf).unwrap();
        prop_assert_eq!(v, Rational::from_i64(sign) * c0 * cinf);
    }

    #[test]
    fn dimension_difference_is_two(n in 3u32..12, d in 0u32..8, m in 0usize..10) {
        prop_assert_eq!(dimension_check(n, 2, d, m, &[]).difference, 2);
    }

    #[test]
    fn canonical_form_ignores_vertex_order(idx in 0usize..10_000, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let graphs = sample_graphs();
        let g = &graphs[idx % graphs.len()];
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = permuted(g, &perm);
        prop_assert_eq!(canonical_form(g), canonical_form(&h));
        prop_assert_eq!(automorphism_order(g), automorphism_order(&h));
        let back = decode_canonical(&canonical_form(&h)).unwrap();
        prop_assert_eq!(canonical_form(&back), canonical_form(g));
    }

    #[test]
    fn decoder_never_panics(bytes in proptest::collection::vec(any::<u8>(), 0..64)) {
        if let Ok(g) = decode_canonical(&bytes) {
            prop_assert_eq!(canonical_form(&g), bytes);
        }
    }

    #[test]
    fn big_torus_weights_are_isolated(n in 3u32..6, seed in any::<u64>()) {
        let w = WeightAssignment::random(n, seed);
        for i in 0..n {
            for j in 0..n {
                let mut ws = tangent_weights(&FixedPoint::PP(i, j), &w);
                prop_assert_eq!(ws.len(), 2 * (n as usize - 1));
                prop_assert!(ws.iter().all(|x| !x.is_zero()));
                ws.sort();
                ws.dedup();
                prop_assert_eq!(ws.len(), 2 * (n as usize - 1));
            }
        }
    }

    #[test]
    fn small_torus_doubles_diagonal_weights(n in 3u32..6, seed in any::<u64>()) {
        let w = WeightAssignment::random(n, seed).specialize().unwrap();
        for i in 0..n {
            let p = FixedPoint::PP(i, i);
            prop_assert!(is_diagonal(&p).unwrap());
            let mut ws = tangent_weights(&p, &w);
            ws.sort();
            for pair in ws.chunks(2) {
                prop_assert_eq!(&pair[0], &pair[1]);
            }
        }
    }

    #[test]
    fn twist_at_zero_is_quadratic_in_the_weights(idx in 0usize..10_000, seed in any::<u64>(), k in 1i64..50) {
        let graphs: Vec<FixedGraph> = enumerate_graphs(Target::ProductPP, 3, Degree::Bi(1, 1), 1)
            .unwrap()
            .into_iter()
            .map(|g| g.graph)
            .filter(|g| g.labels().iter().all(|p| !is_diagonal(p).unwrap()))
            .collect();
        let g = &graphs[idx % graphs.len()];
        let w = WeightAssignment::random(3, seed);
        let k = Rational::from_i64(-k);
        let zero = Rational::from_i64(0);
        let a = twist_value(g, &w.lambda::<Rational>(), &zero).unwrap();
        let b = twist_value(g, &w.scaled(&k).lambda::<Rational>(), &zero).unwrap();
        prop_assert_eq!(b, k.clone() * k * a);
    }
}

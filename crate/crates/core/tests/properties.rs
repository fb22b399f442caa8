//! Structural invariants checked on randomly drawn inputs.

use proptest::prelude::*;

use wchar::admissible::{
    dominant_representative, enumerate, enumerate_shifted, exceptional_partition, in_mtilde, star_action, LevelData,
};
use wchar::brst::{build_complex, homology, ComplexOptions, FiniteModule};
use wchar::characters::{bk_equivalent, bk_nonvanishing, euler_character};
use wchar::linalg::rank_fraction_free;
use wchar::rational::{frac, int, Rational};
use wchar::rootdata::{all_roots, CentralizerCartan, GoodGrading, Partition, Root, RowPermutationGroup};
use wchar::weights::integral_roots;

fn partition_strategy(max_n: usize) -> impl Strategy<Value = Partition> {
    (2..=max_n).prop_flat_map(|n| {
        let all = Partition::all(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn small_level() -> impl Strategy<Value = LevelData> {
    let levels: Vec<LevelData> = wchar::verify::admissible_levels(4, 6, 3);
    (0..levels.len()).prop_map(move |i| levels[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grading_invariants(part in partition_strategy(9)) {
        let g = GoodGrading::new(&part).unwrap();
        let n = part.n();
        // numbering runs down columns, left to right
        for a in 0..n {
            for b in a + 1..n {
                prop_assert!(g.col(a) < g.col(b) || (g.col(a) == g.col(b) && g.row(a) < g.row(b)));
            }
        }
        for &(a, b) in g.fsupport() {
            prop_assert_eq!(g.row(a), g.row(b));
            prop_assert_eq!(g.col(b), g.col(a) + 1);
            prop_assert_eq!(g.h0()[a] - g.h0()[b], 2);
        }
        for f in g.f_roots() {
            prop_assert_eq!(g.degree(f), -1);
        }
        for a in all_roots(n) {
            prop_assert_eq!(g.in_delta0(a), g.col(a.i) == g.col(a.j));
            prop_assert_eq!(g.in_delta_f(a), g.row(a.i) == g.row(a.j));
        }
        let audit = g.audit().unwrap();
        prop_assert!(audit.surjective);
        prop_assert_eq!(2 * g.dchi() + part.centralizer_dim(), n * n - 1);
    }

    #[test]
    fn centralizer_cartan_invariants(part in partition_strategy(9)) {
        let g = GoodGrading::new(&part).unwrap();
        let c = CentralizerCartan::new(&g);
        let z = c.zbasis();
        for b in 0..part.n() {
            prop_assert_eq!(z.iter().map(|row| u32::from(row[b])).sum::<u32>(), 1);
        }
        for a in all_roots(part.n()) {
            let zero = c.restrict_root(a).iter().all(|&x| x == 0);
            if g.in_delta_f(a) {
                prop_assert!(zero);
            }
            if g.in_delta0(a) {
                prop_assert!(!zero);
            }
        }
        prop_assert!(RowPermutationGroup::new(&g).fixes_centralizer_cartan(&c));
        let order: u128 = part.parts().iter().map(|&p| (1..=p as u128).product::<u128>()).product();
        prop_assert_eq!(RowPermutationGroup::new(&g).order(), order);
    }

    #[test]
    fn mtilde_avoids_row_roots(level in small_level()) {
        let part = exceptional_partition(level.n, level.p, level.q).unwrap();
        let g = GoodGrading::new(&part).unwrap();
        let set = enumerate(&level, &g).unwrap();
        for w in &set.weights {
            let integral = integral_roots(&w.weight).unwrap().finite_integral;
            let meets = integral.iter().any(|a| g.in_delta_f(*a));
            prop_assert_eq!(w.in_mtilde, !meets, "{:?}", w.shifted);
        }
    }

    #[test]
    fn star_action_closes_mtilde(level in small_level()) {
        let part = exceptional_partition(level.n, level.p, level.q).unwrap();
        let g = GoodGrading::new(&part).unwrap();
        let w = RowPermutationGroup::new(&g);
        let shifted = enumerate_shifted(&level);
        let set: std::collections::BTreeSet<Vec<i64>> = shifted.iter().cloned().collect();
        for j in shifted.iter().filter(|j| in_mtilde(j, level.q, &g)) {
            let rep = dominant_representative(j, &level);
            prop_assert_eq!(rep.as_ref(), Some(j));
            for &gen in w.generators() {
                let image = star_action(j, gen, &level).unwrap();
                prop_assert!(set.contains(&image) && in_mtilde(&image, level.q, &g), "{:?} -> {:?}", j, image);
            }
        }
    }

    #[test]
    fn bk_constant_on_orbits(
        num in proptest::collection::vec(-12i64..12, 4),
        den in 1i64..5,
        swaps in proptest::collection::vec(0usize..8, 0..6),
    ) {
        let g = GoodGrading::new(&Partition::parse("2,2").unwrap()).unwrap();
        let w = RowPermutationGroup::new(&g);
        let rho = g.rhobar().to_vec();
        let lam: Vec<Rational> = num.iter().map(|&x| frac(x, den)).collect();
        // mu + rho = w (lambda + rho)
        let mut shifted: Vec<Rational> = lam.iter().zip(&rho).map(|(a, b)| a + b).collect();
        for s in swaps {
            let gens = w.generators();
            shifted = RowPermutationGroup::apply(&shifted, gens[s % gens.len()]);
        }
        let mu: Vec<Rational> = shifted.iter().zip(&rho).map(|(a, b)| a - b).collect();
        prop_assert!(bk_equivalent(&lam, &mu, &w));
        // moving weight between rows changes the class
        let mut moved = lam.clone();
        moved[0] += int(1);
        moved[1] -= int(1);
        prop_assert!(!bk_equivalent(&lam, &moved, &w));
        // sorting lambda + rho ascending within rows reaches the nonvanishing locus
        let mut sorted = shifted.clone();
        for row in g.rows() {
            let mut vals: Vec<Rational> = row.iter().map(|&b| shifted[b]).collect();
            vals.sort();
            for (&b, v) in row.iter().zip(vals) {
                sorted[b] = v;
            }
        }
        let nu: Vec<Rational> = sorted.iter().zip(&rho).map(|(a, b)| a - b).collect();
        prop_assert!(bk_nonvanishing(&nu, &g));
        prop_assert!(bk_equivalent(&nu, &lam, &w));
    }

    #[test]
    fn brst_complex_invariants(part in partition_strategy(3), a in 0u32..3, b in 0u32..3, scale in 1i64..5) {
        let labels: Vec<u32> = if part.n() == 2 { vec![a + b] } else { vec![a, b] };
        let g = GoodGrading::new(&part).unwrap();
        let m = FiniteModule::highest_weight(&labels);
        let one = build_complex(&m, &g, ComplexOptions::default()).unwrap();
        let scaled = build_complex(&m, &g, ComplexOptions { chi_scale: frac(scale, 3), ..Default::default() }).unwrap();
        let h1 = homology(&one, "m");
        let h2 = homology(&scaled, "m");
        prop_assert_eq!(&h1.dims, &h2.dims);
        prop_assert!(h1.euler_characteristic_ok);
        // total ranks agree with unblocked exact elimination
        for (p, d) in one.differentials.iter().enumerate() {
            prop_assert_eq!(h1.ranks[p + 1], rank_fraction_free(d));
        }
        let euler: i64 = h1.dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        if g.dchi() > 0 {
            prop_assert_eq!(euler, 0);
            prop_assert!(h1.vanishes());
        } else {
            prop_assert_eq!(h1.dims[0], m.dim());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn characters_stable_under_truncation(idx in 0usize..8) {
        let level = LevelData::new(4, 5, 2).unwrap();
        let g = GoodGrading::new(&Partition::parse("2,2").unwrap()).unwrap();
        let c = CentralizerCartan::new(&g);
        let set = enumerate(&level, &g).unwrap();
        let mt: Vec<_> = set.mtilde().collect();
        let w = mt[idx % mt.len()];
        let a = euler_character(&w.weight, &g, &c, 3, 5).unwrap();
        let b = euler_character(&w.weight, &g, &c, 4, 8).unwrap();
        prop_assert!(a.agrees_within(&b).is_ok());
        prop_assert!(!a.is_zero());
    }
}

#[test]
fn principal_negative_roots() {
    let g = GoodGrading::new(&Partition::principal(3).unwrap()).unwrap();
    assert_eq!(g.dchi(), 3);
    assert!(g.delta_neg().iter().all(|a: &Root| !a.is_positive()));
}

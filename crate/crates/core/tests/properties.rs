use cechtower::abelian::{quotient_invariants, smith_normal_form, solve_in_image, AbelianGroup, GroupElement, GroupHom, IntMatrix};
use cechtower::cech::{coboundary, cohomology, giraud_cocycle, is_coboundary, is_cocycle, Cochain, TransitionData};
use cechtower::complexes::{catalog, Complex, CoverRecord};
use cechtower::exactseq::{connecting_map, ShortExactSequence};
use cechtower::spectral::build_filtered;
use cechtower::towers::{classify, enumerate_classes, extend_from_class, LinkStack, TowerCocycle};
use cechtower::Int;
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const COMPLEXES: [&str; 7] = ["circle(4)", "sphere2", "torus7", "rp2_6", "klein8", "simplex(3)", "sphere(3)"];

fn groups() -> Vec<AbelianGroup> {
    vec![
        AbelianGroup::integers(),
        AbelianGroup::cyclic(2),
        AbelianGroup::cyclic(6),
        AbelianGroup::new(1, vec![Int::from(4)]),
    ]
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r)
            .prop_map(move |rows| IntMatrix::from_rows(c, rows.into_iter().map(|r| r.into_iter().map(Int::from).collect::<Vec<_>>())))
    })
}

fn small_group() -> impl Strategy<Value = AbelianGroup> {
    (0usize..=2, prop::collection::vec(2u64..=12, 0..=2))
        .prop_map(|(r, t)| AbelianGroup::new(r, t.into_iter().map(Int::from).collect()))
}

fn element(g: &AbelianGroup, raw: &[i64]) -> GroupElement {
    let coords: Vec<Int> = (0..g.ngens()).map(|i| Int::from(raw[i % raw.len()])).collect();
    GroupElement::new(g.clone(), coords).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_decomposition_is_exact(m in matrix()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal.clone());
        prop_assert_eq!(s.left.determinant().magnitude().clone(), 1u32.into());
        prop_assert_eq!(s.right.determinant().magnitude().clone(), 1u32.into());
        for w in s.invariants.windows(2) {
            prop_assert!((&w[1] % &w[0]) == Int::from(0));
        }
    }

    #[test]
    fn quotients_ignore_order_and_redundancy(g in small_group(), raw in prop::collection::vec(prop::collection::vec(-9i64..=9, 1..4), 0..4)) {
        let gens: Vec<GroupElement> = raw.iter().map(|r| element(&g, r)).collect();
        let q = quotient_invariants(&g, &gens).unwrap();
        let mut reversed = gens.clone();
        reversed.reverse();
        prop_assert_eq!(&quotient_invariants(&g, &reversed).unwrap(), &q);
        let mut padded = gens.clone();
        if let (Some(a), Some(b)) = (gens.first(), gens.last()) {
            padded.push(a.add(b).unwrap());
            padded.push(a.scale(&Int::from(3)));
        }
        padded.push(g.identity_element());
        prop_assert_eq!(&quotient_invariants(&g, &padded).unwrap(), &q);
    }

    #[test]
    fn images_can_be_solved(s in small_group(), t in small_group(), raw in prop::collection::vec(-5i64..=5, 16), x in prop::collection::vec(-7i64..=7, 1..4)) {
        // a torsion column of order d may only hit rows where d kills it
        let (smod, tmod) = (s.moduli(), t.moduli());
        let rows = (0..t.ngens()).map(|i| {
            (0..s.ngens())
                .map(|j| {
                    let e = Int::from(raw[(i * 4 + j) % 16]);
                    match (smod[j] == Int::from(0), tmod[i] == Int::from(0)) {
                        (true, _) => e,
                        (false, true) => Int::from(0),
                        (false, false) => e * (&tmod[i] / smod[j].gcd(&tmod[i])),
                    }
                })
                .collect::<Vec<_>>()
        });
        let m = IntMatrix::from_rows(s.ngens(), rows);
        let h = GroupHom::new(s.clone(), t.clone(), m).unwrap();
        let x = element(&s, &x);
        let y = h.apply(&x).unwrap();
        let found = solve_in_image(&h, &y).unwrap().expect("y is in the image");
        prop_assert_eq!(h.apply(&found).unwrap(), y);
    }

    #[test]
    fn closure_is_idempotent(gens in prop::collection::vec(prop::collection::btree_set(0u32..8, 1..5), 0..6)) {
        let x = Complex::closure(gens.iter().map(|s| s.iter().copied().collect::<Vec<_>>())).unwrap();
        let again = Complex::closure(x.all_simplices().cloned().collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(&again, &x);
        let from_facets = Complex::closure(x.facets()).unwrap();
        prop_assert_eq!(&from_facets, &x);
    }

    #[test]
    fn nerves_are_complexes(subsets in prop::collection::vec(prop::collection::btree_set(0u32..7, 1..4), 1..8)) {
        let records: Vec<CoverRecord> = subsets.iter().map(|s| CoverRecord::nonempty(&s.iter().copied().collect::<Vec<_>>())).collect();
        let x = Complex::nerve_from_cover(&records).unwrap();
        for s in x.all_simplices() {
            prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
            for i in 0..s.len() {
                if s.len() > 1 {
                    let mut face = s.clone();
                    face.remove(i);
                    prop_assert!(x.contains(&face));
                }
            }
        }
        for s in &subsets {
            prop_assert!(x.contains(&s.iter().copied().collect::<Vec<_>>()));
        }
    }

    #[test]
    fn d_squared_vanishes_on_catalog(which in 0usize..7, gi in 0usize..4, k in 0usize..3, seed in any::<u64>()) {
        let x = catalog(COMPLEXES[which]).unwrap();
        let g = &groups()[gi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Cochain::random(&x, g, k, &mut rng);
        prop_assert!(coboundary(&coboundary(&c)).is_zero());
    }

    #[test]
    fn repeated_indices_evaluate_to_zero(which in 0usize..7, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let x = catalog(COMPLEXES[which]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Cochain::random(&x, &AbelianGroup::integers(), 1, &mut rng);
        let v = x.vertices()[pick.index(x.vertices().len())];
        prop_assert!(c.value(&[v, v]).unwrap().is_zero());
    }

    #[test]
    fn giraud_output_is_a_cocycle(torus in any::<bool>(), gi in 0usize..4, seed in any::<u64>()) {
        let x = catalog(if torus { "torus7" } else { "rp2_6" }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = TransitionData::new(Cochain::random(&x, &groups()[gi], 1, &mut rng)).unwrap();
        prop_assert!(is_cocycle(&giraud_cocycle(&u)));
    }

    #[test]
    fn reduce_vanishes_exactly_on_coboundaries(which in 0usize..5, gi in 0usize..4, k in 1usize..3, seed in any::<u64>()) {
        let x = catalog(COMPLEXES[which]).unwrap();
        let g = &groups()[gi];
        let h = cohomology(&x, g, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // a random cocycle: a random combination of basis cocycles plus a coboundary
        let b = coboundary(&Cochain::random(&x, g, k - 1, &mut rng));
        let class = GroupElement::new(h.invariants().clone(), (0..h.invariants().ngens()).map(|i| Int::from((seed >> (4 * i)) as i64 % 3)).collect()).unwrap();
        let c = h.representative(&class).unwrap().checked_add(&b).unwrap();
        let reduced = h.reduce(&c).unwrap();
        prop_assert_eq!(&reduced, &class);
        prop_assert_eq!(reduced.is_zero(), is_coboundary(&c));
        prop_assert!(h.reduce(&b).unwrap().is_zero());
    }

    #[test]
    fn classification_ignores_coboundaries_and_lower_levels(v in 0i64..3, seed in any::<u64>()) {
        let x = catalog("sphere(3)").unwrap();
        let base = TowerCocycle::zero(&x, LinkStack::new(vec![AbelianGroup::integers()]).unwrap());
        let z3 = AbelianGroup::cyclic(3);
        let class = z3.element(&[v]).unwrap();
        let t = extend_from_class(&base, z3.clone(), &class).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top = t.top().checked_add(&coboundary(&Cochain::random(&x, &z3, 2, &mut rng))).unwrap();
        let lower = coboundary(&Cochain::random(&x, &AbelianGroup::integers(), 1, &mut rng));
        let moved = t.with_top(top).unwrap().with_level(1, lower).unwrap();
        prop_assert_eq!(classify(&moved).unwrap(), class);
    }

    #[test]
    fn connecting_maps_compose_to_zero(which in 0usize..5, m in 2u64..5, k in 0usize..2) {
        let x = catalog(COMPLEXES[which]).unwrap();
        for s in [ShortExactSequence::integer_reduction(m).unwrap(), ShortExactSequence::bockstein(m).unwrap()] {
            let delta = connecting_map(&s, &x, k).unwrap();
            let h_sub = cohomology(&x, s.sub(), k + 1);
            let h_mid = cohomology(&x, s.middle(), k + 1);
            // push each image of delta into A and reduce there
            for i in 0..delta.source().ngens() {
                let mut e = vec![Int::from(0); delta.source().ngens()];
                e[i] = Int::from(1);
                let image = delta.apply(&GroupElement::new(delta.source().clone(), e).unwrap()).unwrap();
                let rep = h_sub.representative(&image).unwrap();
                let pushed = rep.map_coefficients(s.inject()).unwrap();
                prop_assert!(h_mid.reduce(&pushed).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn enumeration_matches_group_order() {
    for (name, m, k) in [("circle(4)", 3u64, 1usize), ("rp2_6", 2, 1), ("rp2_6", 2, 2), ("sphere(2)", 4, 2), ("circle(5)", 2, 0)] {
        let x = catalog(name).unwrap();
        let g = AbelianGroup::cyclic(m);
        let reps = enumerate_classes(&x, &g, k).unwrap();
        let order = cohomology(&x, &g, k).invariants().order().unwrap();
        assert_eq!(Int::from(reps.len()), order, "{name} Z/{m} degree {k}");
    }
}

#[test]
fn extend_and_classify_are_inverse() {
    let x = catalog("rp2_6").unwrap();
    let z2 = AbelianGroup::cyclic(2);
    for v in 0..2 {
        let class = z2.element(&[v]).unwrap();
        let t = TowerCocycle::from_class(&x, z2.clone(), &class).unwrap();
        assert_eq!(classify(&t).unwrap(), class);
        // rebuilding from the classified class gives the same class again
        let rebuilt = TowerCocycle::from_class(&x, z2.clone(), &classify(&t).unwrap()).unwrap();
        assert_eq!(classify(&rebuilt).unwrap(), class);
    }
}

#[test]
fn spectral_terms_do_not_depend_on_the_page() {
    let stacks = [
        vec![AbelianGroup::cyclic(2), AbelianGroup::integers()],
        vec![AbelianGroup::integers(), AbelianGroup::zero(), AbelianGroup::cyclic(6)],
    ];
    for name in ["rp2_6", "klein8", "sphere2"] {
        let x = catalog(name).unwrap();
        for links in &stacks {
            let f = build_filtered(&x, LinkStack::new(links.clone()).unwrap());
            for p in 0..links.len() {
                for k in 0..=3usize {
                    let q = k as i64 - p as i64;
                    let first = f.e_page(p, q, 1).unwrap().invariants;
                    assert_eq!(first, *cohomology(&x, &links[p], k).invariants(), "{name} p={p} k={k}");
                    for r in 2..=3 {
                        assert_eq!(f.e_page(p, q, r).unwrap().invariants, first);
                    }
                    assert_eq!(f.e_infinity_at(p, k).unwrap().invariants, first);
                }
            }
        }
    }
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::complexes::catalog;

fn z() -> AbelianGroup {
    AbelianGroup::integers()
}

fn groups() -> Vec<AbelianGroup> {
    vec![
        z(),
        AbelianGroup::cyclic(2),
        AbelianGroup::cyclic(6),
        AbelianGroup::new(1, vec![Int::from(4)]),
    ]
}

fn elem(g: &AbelianGroup, xs: &[i64]) -> GroupElement {
    g.element(xs).unwrap()
}

#[test]
fn coboundary_of_zero_cochain_on_edge() {
    let edge = Complex::closure([[0u32, 1]]).unwrap();
    let mut f = Cochain::zero(&edge, &z(), 0);
    f.set(&[0], &elem(&z(), &[3])).unwrap();
    f.set(&[1], &elem(&z(), &[10])).unwrap();
    let df = coboundary(&f);
    assert_eq!(df.value(&[0, 1]).unwrap(), elem(&z(), &[7]));
    assert_eq!(df.value(&[1, 0]).unwrap(), elem(&z(), &[-7]));
}

#[test]
fn hollow_triangle_has_no_two_cochains() {
    let c = catalog("circle(3)").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let u = Cochain::random(&c, &z(), 1, &mut rng);
    let du = coboundary(&u);
    assert_eq!(du.degree(), 2);
    assert!(du.values().is_empty());
    assert!(is_cocycle(&u));
}

#[test]
fn coboundary_matrix_matches_direct_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for name in ["torus7", "rp2_6", "simplex(3)"] {
        let x = catalog(name).unwrap();
        for g in groups() {
            for k in 0..3 {
                let c = Cochain::random(&x, &g, k, &mut rng);
                let space = c.space();
                let lifted = space.coboundary_matrix(k).mul_vec(c.values());
                assert_eq!(Cochain::from_flat(&x, &g, k + 1, lifted), coboundary(&c), "{name} {g} k={k}");
            }
        }
    }
}

#[test]
fn d_squared_vanishes_exhaustively_on_small_complex() {
    // all 2^6 one-cochains of the tetrahedron with Z/2 coefficients
    let x = catalog("simplex(3)").unwrap();
    let g = AbelianGroup::cyclic(2);
    for mask in 0u32..64 {
        let values = (0..6).map(|i| Int::from((mask >> i) & 1)).collect();
        let c = Cochain::from_flat(&x, &g, 1, values);
        assert!(coboundary(&coboundary(&c)).is_zero());
    }
}

#[test]
fn alternation_and_degenerate_tuples() {
    let x = catalog("simplex(3)").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in groups() {
        let c = Cochain::random(&x, &g, 2, &mut rng);
        let v = c.value(&[0, 1, 2]).unwrap();
        assert_eq!(c.value(&[1, 0, 2]).unwrap(), v.neg());
        assert_eq!(c.value(&[1, 2, 0]).unwrap(), v);
        assert!(c.value(&[0, 0, 1]).unwrap().is_zero());
        assert!(c.value(&[2, 1, 2]).unwrap().is_zero());
    }
    let hollow = catalog("circle(3)").unwrap();
    let c = Cochain::zero(&hollow, &z(), 2);
    assert!(matches!(c.value(&[0, 1, 2]), Err(Error::NotASimplex(_))));
}

#[test]
fn cocycle_and_coboundary_examples() {
    let x = catalog("circle(3)").unwrap();
    let zero = Cochain::zero(&x, &z(), 1);
    assert!(is_cocycle(&zero));
    assert_eq!(coboundary_witness(&zero).map(|w| w.is_zero()), Some(true));

    // Values (1,0,0) on edges (01, 02, 12). Any coboundary df satisfies
    // (df)_01 − (df)_02 + (df)_12 = (f1−f0) − (f2−f0) + (f2−f1) = 0,
    // while this cochain gives 1, so the 3×3 system has no integer solution.
    let c = Cochain::from_flat(&x, &z(), 1, vec![Int::from(1), Int::from(0), Int::from(0)]);
    assert!(is_cocycle(&c));
    assert!(!is_coboundary(&c));
    assert!(coboundary_witness(&c).is_none());
}

#[test]
fn coboundaries_have_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for name in ["torus7", "klein8", "rp2_6"] {
        let x = catalog(name).unwrap();
        for g in groups() {
            for k in 0..2 {
                let b = Cochain::random(&x, &g, k, &mut rng);
                let db = coboundary(&b);
                let w = coboundary_witness(&db).expect("d(b) is a coboundary");
                assert_eq!(coboundary(&w), db, "{name} {g} k={k}");
            }
        }
    }
}

#[test]
fn degree_zero_coboundaries() {
    let x = catalog("circle(3)").unwrap();
    assert!(is_coboundary(&Cochain::zero(&x, &z(), 0)));
    let mut one = Cochain::zero(&x, &z(), 0);
    one.set(&[0], &elem(&z(), &[1])).unwrap();
    assert!(!is_coboundary(&one));
}

#[test]
fn classical_groups() {
    let cases: &[(&str, usize, AbelianGroup)] = &[
        ("circle(3)", 0, z()),
        ("circle(3)", 1, z()),
        ("circle(3)", 2, AbelianGroup::zero()),
        ("rp2_6", 1, AbelianGroup::zero()),
        ("rp2_6", 2, AbelianGroup::cyclic(2)),
        ("sphere2", 2, z()),
        ("sphere2", 1, AbelianGroup::zero()),
    ];
    for (name, k, expected) in cases {
        let h = cohomology(&catalog(name).unwrap(), &z(), *k);
        assert_eq!(h.invariants(), expected, "H^{k}({name}; Z)");
    }
    // H^1(RP^2; Z/2) = Z/2 and H^2(RP^2; Z/2) = Z/2 (universal coefficients)
    let rp2 = catalog("rp2_6").unwrap();
    let z2 = AbelianGroup::cyclic(2);
    assert_eq!(cohomology(&rp2, &z2, 1).invariants(), &z2);
    assert_eq!(cohomology(&rp2, &z2, 2).invariants(), &z2);
}

#[test]
fn cone_is_acyclic_for_every_group() {
    let x = catalog("simplex(5)").unwrap();
    for g in groups() {
        assert_eq!(cohomology(&x, &g, 0).invariants(), &g);
        for k in 1..7 {
            assert!(cohomology(&x, &g, k).is_zero(), "H^{k}(simplex(5); {g})");
        }
    }
}

#[test]
fn empty_complex_has_zero_cohomology() {
    let x = Complex::empty();
    for k in 0..3 {
        assert!(cohomology(&x, &z(), k).is_zero());
    }
}

#[test]
fn basis_reduces_to_units_and_reduce_detects_coboundaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in ["torus7", "rp2_6", "klein8"] {
        let x = catalog(name).unwrap();
        for g in groups() {
            for k in 0..3 {
                let h = cohomology(&x, &g, k);
                let n = h.invariants().ngens();
                for (j, b) in h.basis().iter().enumerate() {
                    assert!(is_cocycle(b));
                    let mut unit = vec![Int::zero(); n];
                    unit[j] = Int::from(1);
                    assert_eq!(h.reduce(b).unwrap().coords(), unit.as_slice());
                }
                // random cocycle = random class + random coboundary
                for _ in 0..3 {
                    let coords: Vec<Int> = h
                        .invariants()
                        .moduli()
                        .iter()
                        .map(|d| if d.is_zero() { Int::from(rng.gen_range(-3..4)) } else { Int::from(rng.gen_range(0..3)) })
                        .collect();
                    let class = GroupElement::new(h.invariants().clone(), coords).unwrap();
                    let rep = h.representative(&class).unwrap();
                    let c = if k > 0 {
                        &rep + &coboundary(&Cochain::random(&x, &g, k - 1, &mut rng))
                    } else {
                        rep
                    };
                    let reduced = h.reduce(&c).unwrap();
                    assert_eq!(reduced, class);
                    assert_eq!(reduced.is_zero(), is_coboundary(&c), "{name} {g} k={k}");
                }
            }
        }
    }
}

#[test]
fn reduce_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let x = catalog("torus7").unwrap();
    let g = AbelianGroup::new(1, vec![Int::from(4)]);
    let h = cohomology(&x, &g, 1);
    let random_cocycle = |rng: &mut ChaCha8Rng| {
        let mut c = coboundary(&Cochain::random(&x, &g, 0, rng));
        for b in h.basis() {
            c = &c + &b.scale(&Int::from(rng.gen_range(-2..3)));
        }
        c
    };
    for _ in 0..5 {
        let a = random_cocycle(&mut rng);
        let b = random_cocycle(&mut rng);
        let lhs = h.reduce(&(&a + &b)).unwrap();
        let rhs = h.reduce(&a).unwrap().add(&h.reduce(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn reduce_rejects_non_cocycles_and_foreign_cochains() {
    let x = catalog("sphere(2)").unwrap();
    let h = cohomology(&x, &z(), 1);
    let mut c = Cochain::zero(&x, &z(), 1);
    c.set(&[0, 1], &elem(&z(), &[1])).unwrap();
    assert_eq!(h.reduce(&c), Err(Error::NotACocycle(1)));
    assert!(matches!(h.reduce(&Cochain::zero(&x, &z(), 2)), Err(Error::Mismatch(_))));
}

#[test]
fn giraud_examples() {
    let x = catalog("simplex(3)").unwrap();
    // u = d(f) satisfies u_ik = u_ij + u_jk: trivialized gerbe
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = Cochain::random(&x, &z(), 0, &mut rng);
    let t = TransitionData::new(coboundary(&f)).unwrap();
    assert!(giraud_cocycle(&t).is_zero());

    // constant u_ij = g for i < j gives c_ijk = g − g + g = g
    let g = AbelianGroup::cyclic(6);
    let five = elem(&g, &[5]);
    let u = Cochain::from_fn(&x, &g, 1, |_| five.clone()).unwrap();
    let c = giraud_cocycle(&TransitionData::new(u).unwrap());
    for s in x.simplices(2) {
        assert_eq!(c.value(s).unwrap(), five);
    }
}

#[test]
fn giraud_output_is_the_coboundary_of_u() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let x = catalog("torus7").unwrap();
    for g in groups() {
        let u = Cochain::random(&x, &g, 1, &mut rng);
        let c = giraud_cocycle(&TransitionData::new(u.clone()).unwrap());
        assert_eq!(c, coboundary(&u));
        // brute-force d(c) over every ordered 3-tuple of the complex's tetrahedra
        assert!(is_cocycle(&c));
    }
    assert!(TransitionData::new(Cochain::zero(&x, &z(), 2)).is_err());
}

#[test]
fn cone_homotopy_identity() {
    // dK + Kd = id in positive degrees on a cone
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let x = catalog("simplex(4)").unwrap();
    for g in groups() {
        for k in 1..4 {
            let c = Cochain::random(&x, &g, k, &mut rng);
            let lhs = &coboundary(&cone_homotopy(&c, 0).unwrap()) + &cone_homotopy(&coboundary(&c), 0).unwrap();
            assert_eq!(lhs, c, "{g} k={k}");
        }
    }
}

#[test]
fn cone_contraction_examples() {
    let x = catalog("simplex(4)").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    assert!(cone_contraction(&Cochain::zero(&x, &z(), 2), 0).unwrap().is_zero());
    for k in 1..4 {
        let c = coboundary(&Cochain::random(&x, &z(), k - 1, &mut rng));
        let h = cone_contraction(&c, 0).unwrap();
        assert_eq!(coboundary(&h), c);
        // any apex works on a full simplex
        assert_eq!(coboundary(&cone_contraction(&c, 3).unwrap()), c);
    }

    // star of edges: every 1-cochain is a cocycle
    let star = Complex::closure([[0u32, 1], [0, 2], [0, 3]]).unwrap();
    let c = Cochain::random(&star, &z(), 1, &mut rng);
    let h = cone_contraction(&c, 0).unwrap();
    let dh = coboundary(&h);
    for e in star.simplices(1) {
        assert_eq!(dh.value(e).unwrap(), c.value(e).unwrap());
    }
}

#[test]
fn cone_contraction_errors() {
    let hollow = catalog("circle(3)").unwrap();
    let c = Cochain::zero(&hollow, &z(), 1);
    assert_eq!(
        cone_contraction(&c, 0),
        Err(Error::NotACone {
            apex: 0,
            missing: vec![0, 1, 2]
        })
    );
    let x = catalog("simplex(3)").unwrap();
    let mut bad = Cochain::zero(&x, &z(), 1);
    bad.set(&[1, 2], &elem(&z(), &[1])).unwrap();
    assert_eq!(cone_contraction(&bad, 0), Err(Error::NotACocycle(1)));
    assert!(cone_contraction(&Cochain::zero(&x, &z(), 0), 0).is_err());
    assert_eq!(cone_contraction(&bad, 9), Err(Error::MissingVertex(9)));
}

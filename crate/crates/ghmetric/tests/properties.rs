//! Cross-module invariants on seeded random corpora.

use ghmetric::{
    build_tower, canonicalize, disjoint_union, gh_dist_bnb, gh_dist_bruteforce, glue,
    hausdorff_dist, in_neighborhood, is_isometric, kuratowski_embed, lower_bound_diam,
    quotient_zero, realize, realizing_cross_distance, upper_bound_full, Correspondence,
    FiniteMetricSpace, Scalar, SemiMetricSpace,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random metric space: complete-graph weights from a small rational grid,
/// metricized by all-pairs shortest paths.
#[allow(clippy::needless_range_loop)] // symmetric fill indexes both triangles
fn random_space(n: usize, rng: &mut ChaCha8Rng) -> FiniteMetricSpace {
    let mut w = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = Scalar::ratio(rng.gen_range(1..=8), 4);
            w[i][j] = v.clone();
            w[j][i] = v;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let via = &w[i][k] + &w[k][j];
                    if via < w[i][j] {
                        w[i][j] = via;
                    }
                }
            }
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FiniteMetricSpace::new(labels, w).expect("shortest-path metric is valid")
}

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Random correspondence: one random partner per left point, then random
/// extra pairs, then patch right coverage.
fn random_correspondence(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    rng: &mut ChaCha8Rng,
) -> Correspondence {
    let (nx, ny) = (x.len(), y.len());
    let mut pairs: Vec<(usize, usize)> = (0..nx).map(|i| (i, rng.gen_range(0..ny))).collect();
    for _ in 0..rng.gen_range(0..=nx) {
        pairs.push((rng.gen_range(0..nx), rng.gen_range(0..ny)));
    }
    for j in 0..ny {
        if !pairs.iter().any(|&(_, b)| b == j) {
            pairs.push((rng.gen_range(0..nx), j));
        }
    }
    Correspondence::new(x.clone(), y.clone(), pairs).expect("patched to be surjective")
}

#[test]
fn gh_symmetry_and_bounds_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..60 {
        let x = random_space(rng.gen_range(1..=4), &mut rng);
        let y = random_space(rng.gen_range(1..=4), &mut rng);
        let xy = gh_dist_bruteforce(&x, &y).unwrap();
        let yx = gh_dist_bruteforce(&y, &x).unwrap();
        assert_eq!(xy.value, yx.value);
        assert!(lower_bound_diam(&x, &y) <= xy.value);
        assert!(xy.value <= upper_bound_full(&x, &y));
    }
}

#[test]
fn gh_triangle_inequality_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..40 {
        let x = random_space(rng.gen_range(1..=4), &mut rng);
        let y = random_space(rng.gen_range(1..=4), &mut rng);
        let z = random_space(rng.gen_range(1..=4), &mut rng);
        let xy = gh_dist_bruteforce(&x, &y).unwrap().value;
        let yz = gh_dist_bruteforce(&y, &z).unwrap().value;
        let xz = gh_dist_bruteforce(&x, &z).unwrap().value;
        assert!(xz <= &xy + &yz);
    }
}

#[test]
fn gh_zero_iff_isometric_and_canonical_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..40 {
        let x = random_space(rng.gen_range(1..=4), &mut rng);
        let y = if rng.gen_bool(0.5) {
            x.relabel(&random_perm(x.len(), &mut rng)).unwrap()
        } else {
            random_space(rng.gen_range(1..=4), &mut rng)
        };
        let gh_zero = gh_dist_bruteforce(&x, &y).unwrap().value.is_zero();
        let witness = is_isometric(&x, &y);
        assert_eq!(gh_zero, witness.is_some());
        if x.len() == y.len() {
            let same_canon = canonicalize(&x).unwrap() == canonicalize(&y).unwrap();
            assert_eq!(gh_zero, same_canon);
        }
    }
}

#[test]
fn gh_isometry_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..25 {
        let x = random_space(rng.gen_range(2..=4), &mut rng);
        let y = random_space(rng.gen_range(2..=4), &mut rng);
        let base = gh_dist_bruteforce(&x, &y).unwrap().value;
        let xr = x.relabel(&random_perm(x.len(), &mut rng)).unwrap();
        let yr = y.relabel(&random_perm(y.len(), &mut rng)).unwrap();
        assert_eq!(base, gh_dist_bruteforce(&xr, &yr).unwrap().value);
        assert_eq!(base, gh_dist_bnb(&xr, &yr).value);
    }
}

#[test]
fn solvers_agree_with_identical_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..60 {
        let x = random_space(rng.gen_range(1..=4), &mut rng);
        let y = random_space(rng.gen_range(1..=5), &mut rng);
        if x.len() * y.len() > ghmetric::BRUTE_DEFAULT_LIMIT {
            continue;
        }
        let brute = gh_dist_bruteforce(&x, &y).unwrap();
        let bnb = gh_dist_bnb(&x, &y);
        assert_eq!(brute.value, bnb.value);
        assert_eq!(brute.witness.pairs(), bnb.witness.pairs());
        assert_eq!(bnb.value, bnb.witness.distortion().half());
    }
}

#[test]
fn admissible_cross_blocks_dominate_gh() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for _ in 0..40 {
        let x = random_space(rng.gen_range(1..=4), &mut rng);
        let y = random_space(rng.gen_range(1..=4), &mut rng);
        let corr = random_correspondence(&x, &y, &mut rng);
        let slack = corr.distortion().half() + Scalar::ratio(rng.gen_range(0..=4), 8);
        let union = realizing_cross_distance(&corr, &slack).unwrap();
        let gh = gh_dist_bruteforce(&x, &y).unwrap().value;
        let a: Vec<usize> = (0..x.len()).collect();
        let b: Vec<usize> = (x.len()..x.len() + y.len()).collect();
        let blocks = hausdorff_dist(&union, &a, &b).unwrap();
        assert!(blocks >= gh, "blocks {blocks} < gh {gh}");
    }
}

#[test]
fn realization_attains_gh_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..30 {
        let x = random_space(rng.gen_range(1..=4), &mut rng);
        let y = random_space(rng.gen_range(1..=4), &mut rng);
        let r = realize(&x, &y).unwrap();
        assert_eq!(r.value, gh_dist_bruteforce(&x, &y).unwrap().value);
        assert_eq!(r.hausdorff_between_ranges(), r.value);
    }
}

#[test]
fn joint_sup_embedding_reproduces_union_and_dominates_gh() {
    use ghmetric::kuratowski_joint;
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    for _ in 0..20 {
        let x = random_space(rng.gen_range(1..=4), &mut rng);
        let y = random_space(rng.gen_range(1..=4), &mut rng);
        let corr = random_correspondence(&x, &y, &mut rng);
        let slack = corr.distortion().half() + Scalar::ratio(rng.gen_range(0..=2), 8);
        let joint = kuratowski_joint(&corr, &slack).unwrap();
        let union = realizing_cross_distance(&corr, &slack).unwrap();
        assert_eq!(joint.ambient.rows(), union.rows());
        for i in 0..x.len() {
            for j in 0..x.len() {
                assert_eq!(&joint.left[i].sup_dist(&joint.left[j]), x.dist(i, j));
            }
        }
        for i in 0..y.len() {
            for j in 0..y.len() {
                assert_eq!(&joint.right[i].sup_dist(&joint.right[j]), y.dist(i, j));
            }
        }
        let a: Vec<usize> = (0..x.len()).collect();
        let b: Vec<usize> = (x.len()..x.len() + y.len()).collect();
        let h = hausdorff_dist(&joint.ambient, &a, &b).unwrap();
        assert!(h >= gh_dist_bruteforce(&x, &y).unwrap().value);
    }
}

#[test]
fn kuratowski_exact_on_random_spaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for _ in 0..40 {
        let x = random_space(rng.gen_range(1..=7), &mut rng);
        let emb = kuratowski_embed(&x);
        for i in 0..x.len() {
            for j in 0..x.len() {
                assert_eq!(&emb.points[i].sup_dist(&emb.points[j]), x.dist(i, j));
            }
        }
    }
}

/// Random semimetric: a random metric with some points duplicated at
/// distance zero.
fn random_semimetric(rng: &mut ChaCha8Rng) -> SemiMetricSpace {
    let n = rng.gen_range(1..=4);
    let base = random_space(n, rng);
    let copies: Vec<usize> = (0..base.len())
        .map(|_| rng.gen_range(1..=2usize))
        .collect();
    let total: usize = copies.iter().sum();
    let origin: Vec<usize> = (0..base.len())
        .flat_map(|i| std::iter::repeat_n(i, copies[i]))
        .collect();
    let labels = (0..total).map(|i| format!("q{i}")).collect();
    let rows = (0..total)
        .map(|a| {
            (0..total)
                .map(|b| base.dist(origin[a], origin[b]).clone())
                .collect()
        })
        .collect();
    SemiMetricSpace::new(labels, rows).expect("duplicated metric is a semimetric")
}

#[test]
fn quotient_zero_validates_and_pulls_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    for _ in 0..40 {
        let s = random_semimetric(&mut rng);
        let (q, proj) = quotient_zero(&s);
        assert_eq!(proj.len(), s.len());
        for i in 0..s.len() {
            for j in 0..s.len() {
                assert_eq!(s.dist(i, j), q.dist(proj[i], proj[j]));
            }
        }
    }
}

#[test]
fn glue_on_random_shared_subspace() {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    for _ in 0..25 {
        let x = random_space(rng.gen_range(1..=3), &mut rng);
        // Extend x into two different ambient spaces through admissible
        // cross distances with strictly positive slack.
        let extend = |rng: &mut ChaCha8Rng| {
            let m = rng.gen_range(1..=3);
            let v = random_space(m, rng);
            let corr = random_correspondence(&x, &v, rng);
            let slack = corr.distortion().half() + Scalar::ratio(1, 8);
            let union = realizing_cross_distance(&corr, &slack).unwrap();
            let (metric, proj) = quotient_zero(&union);
            let map: Vec<usize> = (0..x.len()).map(|i| proj[i]).collect();
            (metric, map)
        };
        let (y, phi) = extend(&mut rng);
        let (z, psi) = extend(&mut rng);
        let g = glue(&x, &y, &z, &phi, &psi).unwrap();
        for (xi, (&py, &pz)) in phi.iter().zip(&psi).enumerate() {
            assert_eq!(g.from_left.apply(py), g.from_right.apply(pz), "glue point {xi}");
        }
        for i in 0..y.len() {
            for j in 0..y.len() {
                assert_eq!(
                    g.space.dist(g.from_left.apply(i), g.from_left.apply(j)),
                    y.dist(i, j)
                );
            }
        }
    }
}

#[test]
fn tower_hausdorff_equals_step_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    for _ in 0..8 {
        let spaces: Vec<FiniteMetricSpace> = (0..3)
            .map(|_| random_space(rng.gen_range(1..=3), &mut rng))
            .collect();
        let tower = build_tower(&spaces).unwrap();
        let top = tower.top();
        for k in 0..tower.step_values.len() {
            assert_eq!(top.hausdorff_between(k, k + 1), tower.step_values[k]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hausdorff_symmetry_and_least_radius(seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ambient = random_space(rng.gen_range(2..=5), &mut rng).into_semi();
        let n = ambient.len();
        let pick = |rng: &mut ChaCha8Rng| -> Vec<usize> {
            let size = rng.gen_range(1..=n);
            (0..size).map(|_| rng.gen_range(0..n)).collect()
        };
        let a = pick(&mut rng);
        let b = pick(&mut rng);
        let h = hausdorff_dist(&ambient, &a, &b).unwrap();
        prop_assert_eq!(&h, &hausdorff_dist(&ambient, &b, &a).unwrap());

        let mut radii: Vec<Scalar> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| ambient.dist(i, j).clone())
            .collect();
        radii.sort();
        radii.dedup();
        let least = radii
            .iter()
            .find(|r| {
                in_neighborhood(&ambient, &a, &b, r).unwrap()
                    && in_neighborhood(&ambient, &b, &a, r).unwrap()
            })
            .expect("the diameter always works");
        prop_assert_eq!(&h, least);
    }

    #[test]
    fn disjoint_union_roundtrips_blocks(seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_space(rng.gen_range(1..=3), &mut rng);
        let y = random_space(rng.gen_range(1..=3), &mut rng);
        let corr = random_correspondence(&x, &y, &mut rng);
        let slack = corr.distortion().half() + Scalar::ratio(1, 4);
        let cross: Vec<Vec<Scalar>> = (0..x.len())
            .map(|a| {
                (0..y.len())
                    .map(|b| {
                        corr.pairs()
                            .iter()
                            .map(|&(i, j)| x.dist(a, i) + &slack + y.dist(j, b))
                            .min()
                            .unwrap()
                    })
                    .collect()
            })
            .collect();
        let union = disjoint_union(&x, &y, &cross).unwrap();
        for i in 0..x.len() {
            for j in 0..x.len() {
                prop_assert_eq!(union.dist(i, j), x.dist(i, j));
            }
        }
        for i in 0..y.len() {
            for j in 0..y.len() {
                prop_assert_eq!(union.dist(x.len() + i, x.len() + j), y.dist(i, j));
            }
        }
    }

    #[test]
    fn canonical_orbit_invariance(seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_space(rng.gen_range(1..=6), &mut rng);
        let base = canonicalize(&x).unwrap();
        let y = x.relabel(&random_perm(x.len(), &mut rng)).unwrap();
        prop_assert_eq!(canonicalize(&y).unwrap(), base);
    }
}

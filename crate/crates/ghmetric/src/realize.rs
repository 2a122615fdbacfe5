//! Realizing the GH distance by an explicit common ambient space, and the
//! Kuratowski sup-norm embedding.
//!
//! For finite spaces the GH infimum is attained: given an optimal
//! correspondence with distortion `2r`, the cross distance
//! `c(x, y) = min over (x', y') in R of d_X(x, x') + r + d_Y(y', y)` makes
//! the disjoint union a semimetric space whose two blocks embed
//! isometrically and sit at Hausdorff distance exactly `r`. Quotienting
//! zero distances yields the realizing metric space.

use crate::error::Error;
use crate::gh::{gh_dist_bnb, Correspondence};
use crate::hausdorff::hausdorff_dist;
use crate::isometry::IsometricEmbedding;
use crate::scalar::Scalar;
use crate::space::{disjoint_union, quotient_zero, FiniteMetricSpace, SemiMetricSpace};

/// The semimetric on the disjoint union induced by a correspondence and a
/// slack radius `r >= distortion(R) / 2`.
///
/// Rejects smaller slacks with [`Error::SlackTooSmall`]: below half the
/// distortion the formula is not guaranteed admissible.
pub fn realizing_cross_distance(
    corr: &Correspondence,
    slack: &Scalar,
) -> Result<SemiMetricSpace, Error> {
    let half_dis = corr.distortion().half();
    if slack < &half_dis {
        return Err(Error::SlackTooSmall {
            slack: slack.to_string(),
            distortion: corr.distortion().to_string(),
        });
    }
    let (x, y) = (corr.left(), corr.right());
    let cross: Vec<Vec<Scalar>> = (0..x.len())
        .map(|a| {
            (0..y.len())
                .map(|b| {
                    corr.pairs()
                        .iter()
                        .map(|&(i, j)| x.dist(a, i) + slack + y.dist(j, b))
                        .min()
                        .expect("correspondence is nonempty")
                })
                .collect()
        })
        .collect();
    disjoint_union(x, y, &cross)
}

/// A metric space realizing the GH distance of two spaces, together with
/// the isometric copies of both inside it. The Hausdorff distance between
/// the two embedded ranges equals `value` exactly.
#[derive(Debug, Clone)]
pub struct Realization {
    pub glued: FiniteMetricSpace,
    pub embed_left: IsometricEmbedding,
    pub embed_right: IsometricEmbedding,
    pub value: Scalar,
    pub witness: Correspondence,
    pub node_count: u64,
}

/// Builds the realizing space for the optimal correspondence found by the
/// branch-and-bound solver, with slack equal to the GH distance itself.
/// When the distance is zero the quotient merges the corresponding points,
/// which certifies the isometry.
pub fn realize(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<Realization, Error> {
    let solved = gh_dist_bnb(x, y);
    let union = realizing_cross_distance(&solved.witness, &solved.value)?;
    let (glued, projection) = quotient_zero(&union);
    let left_map: Vec<usize> = (0..x.len()).map(|i| projection[i]).collect();
    let right_map: Vec<usize> = (0..y.len()).map(|j| projection[x.len() + j]).collect();
    let embed_left = IsometricEmbedding::verify(x.as_semi(), glued.as_semi(), left_map)?;
    let embed_right = IsometricEmbedding::verify(y.as_semi(), glued.as_semi(), right_map)?;
    Ok(Realization {
        glued,
        embed_left,
        embed_right,
        value: solved.value,
        witness: solved.witness,
        node_count: solved.node_count,
    })
}

impl Realization {
    /// Exact Hausdorff distance between the two embedded ranges; equal to
    /// `value` by construction.
    pub fn hausdorff_between_ranges(&self) -> Scalar {
        hausdorff_dist(
            self.glued.as_semi(),
            &self.embed_left.range(),
            &self.embed_right.range(),
        )
        .expect("ranges are nonempty subsets of the glued space")
    }
}

/// A point of a finite-dimensional sup-norm space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupNormPoint(pub Vec<Scalar>);

impl SupNormPoint {
    /// Maximum absolute coordinate difference.
    pub fn sup_dist(&self, other: &SupNormPoint) -> Scalar {
        assert_eq!(self.0.len(), other.0.len(), "dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(Scalar::zero)
    }
}

/// Pairwise sup distances of a point list, as a semimetric space. The sup
/// norm satisfies the triangle inequality, so this always validates.
pub fn sup_space(points: &[SupNormPoint], labels: Vec<String>) -> Result<SemiMetricSpace, Error> {
    let rows = points
        .iter()
        .map(|p| points.iter().map(|q| p.sup_dist(q)).collect())
        .collect();
    SemiMetricSpace::new(labels, rows)
}

/// The Kuratowski embedding of a finite space: point `i` maps to its
/// distance row, a vector in the sup-norm space with one coordinate per
/// point. The certificate is the verified identity embedding into the
/// space of pairwise sup distances, which reproduces the original matrix
/// (coordinate `j` attains `|d(i,j) - 0| = d(i,j)`; no coordinate exceeds
/// it by the triangle inequality).
#[derive(Debug, Clone)]
pub struct KuratowskiEmbedding {
    pub points: Vec<SupNormPoint>,
    pub sup_image: FiniteMetricSpace,
    pub certificate: IsometricEmbedding,
}

pub fn kuratowski_embed(x: &FiniteMetricSpace) -> KuratowskiEmbedding {
    let points: Vec<SupNormPoint> = x.rows().into_iter().map(SupNormPoint).collect();
    let image = sup_space(&points, x.labels().to_vec())
        .expect("sup distances always form a semimetric")
        .into_metric()
        .expect("distinct points of a metric space have distinct rows");
    let certificate = IsometricEmbedding::verify(
        x.as_semi(),
        image.as_semi(),
        (0..x.len()).collect(),
    )
    .expect("sup distance of distance rows reproduces the metric");
    KuratowskiEmbedding {
        points,
        sup_image: image,
        certificate,
    }
}

/// Isometric copies of two spaces inside one sup-norm space.
///
/// Coordinates are indexed by the points of `X` followed by the points of
/// `Y`; missing coordinates are padded through the realizing cross
/// distance of the given correspondence, so each block keeps its own
/// metric exactly and the whole configuration reproduces the realizing
/// semimetric on the disjoint union.
#[derive(Debug, Clone)]
pub struct JointEmbedding {
    pub left: Vec<SupNormPoint>,
    pub right: Vec<SupNormPoint>,
    pub ambient: SemiMetricSpace,
}

pub fn kuratowski_joint(
    corr: &Correspondence,
    slack: &Scalar,
) -> Result<JointEmbedding, Error> {
    let union = realizing_cross_distance(corr, slack)?;
    let nx = corr.left().len();
    let points: Vec<SupNormPoint> = union.rows().into_iter().map(SupNormPoint).collect();
    let ambient = sup_space(&points, union.labels().to_vec())?;
    debug_assert_eq!(ambient.rows(), union.rows());
    let (left, right) = points.split_at(nx);
    Ok(JointEmbedding {
        left: left.to_vec(),
        right: right.to_vec(),
        ambient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gh::gh_dist_bruteforce;
    use crate::space::line_space;

    fn sc(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn one_point() -> FiniteMetricSpace {
        FiniteMetricSpace::new(vec!["o".into()], vec![vec![sc("0")]]).unwrap()
    }

    fn two_points(d: &str) -> FiniteMetricSpace {
        FiniteMetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![sc("0"), sc(d)], vec![sc(d), sc("0")]],
        )
        .unwrap()
    }

    #[test]
    fn cross_distance_identity_zero_slack() {
        let x = line_space(&[sc("0"), sc("1"), sc("3")]).unwrap();
        let corr = Correspondence::identity(x.clone());
        let union = realizing_cross_distance(&corr, &Scalar::zero()).unwrap();
        // Cross block equals the distance matrix itself; copies coincide.
        for i in 0..x.len() {
            for j in 0..x.len() {
                assert_eq!(union.dist(i, x.len() + j), x.dist(i, j));
            }
            assert!(union.dist(i, x.len() + i).is_zero());
        }
    }

    #[test]
    fn cross_distance_point_vs_pair() {
        let x = one_point();
        let y = two_points("1");
        let corr = Correspondence::full(x, y);
        let union = realizing_cross_distance(&corr, &sc("1/2")).unwrap();
        assert_eq!(union.dist(0, 1), &sc("1/2"));
        assert_eq!(union.dist(0, 2), &sc("1/2"));
    }

    #[test]
    fn cross_distance_matching_two_pairs() {
        let x = two_points("1");
        let y = two_points("3");
        let corr = Correspondence::new(x, y, vec![(0, 0), (1, 1)]).unwrap();
        let union = realizing_cross_distance(&corr, &Scalar::one()).unwrap();
        assert_eq!(union.dist(0, 2), &sc("1"));
        assert_eq!(union.dist(0, 3), &sc("2"));
        assert_eq!(union.dist(1, 2), &sc("2"));
        assert_eq!(union.dist(1, 3), &sc("1"));
    }

    #[test]
    fn cross_distance_rejects_small_slack() {
        let x = two_points("1");
        let y = two_points("3");
        let corr = Correspondence::new(x, y, vec![(0, 0), (1, 1)]).unwrap();
        assert!(matches!(
            realizing_cross_distance(&corr, &sc("1/2")).unwrap_err(),
            Error::SlackTooSmall { .. }
        ));
    }

    #[test]
    fn strict_slack_yields_genuine_metric() {
        let x = two_points("1");
        let y = two_points("3");
        let corr = Correspondence::new(x, y, vec![(0, 0), (1, 1)]).unwrap();
        let union = realizing_cross_distance(&corr, &sc("3/2")).unwrap();
        assert!(!union.has_zero_off_diagonal());
    }

    #[test]
    fn realize_identical_spaces() {
        let x = line_space(&[sc("0"), sc("1"), sc("3")]).unwrap();
        let r = realize(&x, &x).unwrap();
        assert!(r.value.is_zero());
        assert_eq!(r.glued.len(), x.len());
        assert_eq!(r.embed_left, r.embed_right);
        assert!(r.hausdorff_between_ranges().is_zero());
    }

    #[test]
    fn realize_point_vs_pair() {
        let r = realize(&one_point(), &two_points("1")).unwrap();
        assert_eq!(r.value, sc("1/2"));
        assert_eq!(r.glued.len(), 3);
        assert_eq!(r.hausdorff_between_ranges(), sc("1/2"));
        let p = r.embed_left.apply(0);
        for &q in r.embed_right.map() {
            assert_eq!(r.glued.dist(p, q), &sc("1/2"));
        }
    }

    #[test]
    fn realize_two_pairs() {
        let x = two_points("1");
        let y = two_points("3");
        let r = realize(&x, &y).unwrap();
        assert_eq!(r.value, sc("1"));
        assert_eq!(r.glued.len(), 4);
        assert_eq!(r.hausdorff_between_ranges(), sc("1"));
        assert_eq!(r.value, gh_dist_bruteforce(&x, &y).unwrap().value);
    }

    #[test]
    fn realize_zero_distance_certifies_isometry() {
        let x = line_space(&[sc("0"), sc("1"), sc("3")]).unwrap();
        let y = x.relabel(&[2, 0, 1]).unwrap();
        let r = realize(&x, &y).unwrap();
        assert!(r.value.is_zero());
        assert_eq!(r.embed_left.range(), r.embed_right.range());
        // Composing one embedding with the inverse of the other gives an
        // isometry X -> Y.
        let mut inverse = vec![usize::MAX; r.glued.len()];
        for (j, &g) in r.embed_right.map().iter().enumerate() {
            inverse[g] = j;
        }
        let map: Vec<usize> = r.embed_left.map().iter().map(|&g| inverse[g]).collect();
        assert!(IsometricEmbedding::verify(x.as_semi(), y.as_semi(), map).is_ok());
    }

    #[test]
    fn kuratowski_examples() {
        let single = kuratowski_embed(&one_point());
        assert_eq!(single.points, vec![SupNormPoint(vec![sc("0")])]);

        let pair = kuratowski_embed(&two_points("1"));
        assert_eq!(pair.points[0], SupNormPoint(vec![sc("0"), sc("1")]));
        assert_eq!(pair.points[1], SupNormPoint(vec![sc("1"), sc("0")]));
        assert_eq!(pair.points[0].sup_dist(&pair.points[1]), sc("1"));

        let triangle = FiniteMetricSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![sc("0"), sc("1"), sc("1")],
                vec![sc("1"), sc("0"), sc("1")],
                vec![sc("1"), sc("1"), sc("0")],
            ],
        )
        .unwrap();
        let emb = kuratowski_embed(&triangle);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(&emb.points[i].sup_dist(&emb.points[j]), triangle.dist(i, j));
            }
        }
    }

    #[test]
    fn kuratowski_is_exact_isometry() {
        let x = line_space(&[sc("0"), sc("1/2"), sc("2"), sc("7/2")]).unwrap();
        let emb = kuratowski_embed(&x);
        for i in 0..x.len() {
            for j in 0..x.len() {
                assert_eq!(&emb.points[i].sup_dist(&emb.points[j]), x.dist(i, j));
            }
        }
        assert_eq!(emb.sup_image.rows(), x.rows());
    }

    #[test]
    fn joint_embedding_reproduces_union_and_bounds_gh() {
        let x = line_space(&[sc("0"), sc("1")]).unwrap();
        let y = line_space(&[sc("0"), sc("2"), sc("3")]).unwrap();
        let solved = gh_dist_bruteforce(&x, &y).unwrap();
        let joint = kuratowski_joint(&solved.witness, &solved.value).unwrap();
        // Both blocks embed isometrically.
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
        // Hausdorff distance of the images is at least the GH distance.
        let a: Vec<usize> = (0..x.len()).collect();
        let b: Vec<usize> = (x.len()..x.len() + y.len()).collect();
        let h = hausdorff_dist(&joint.ambient, &a, &b).unwrap();
        assert!(h >= solved.value);
    }
}

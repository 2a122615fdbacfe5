//! Hausdorff distance between nonempty subsets of a common ambient space.

use crate::error::Error;
use crate::scalar::Scalar;
use crate::space::SemiMetricSpace;

fn check_subset(ambient: &SemiMetricSpace, set: &[usize]) -> Result<Vec<usize>, Error> {
    if set.is_empty() {
        return Err(Error::EmptySubset);
    }
    for &i in set {
        if i >= ambient.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: ambient.len(),
            });
        }
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(sorted)
}

fn directed(ambient: &SemiMetricSpace, from: &[usize], to: &[usize]) -> Scalar {
    from.iter()
        .map(|&a| {
            to.iter()
                .map(|&b| ambient.dist(a, b).clone())
                .min()
                .expect("nonempty subset")
        })
        .max()
        .expect("nonempty subset")
}

/// Exact Hausdorff distance between the point sets `a` and `b` inside
/// `ambient`: the larger of the two directed max-min distances. For finite
/// sets this attains the textbook infimum.
pub fn hausdorff_dist(
    ambient: &SemiMetricSpace,
    a: &[usize],
    b: &[usize],
) -> Result<Scalar, Error> {
    let a = check_subset(ambient, a)?;
    let b = check_subset(ambient, b)?;
    Ok(directed(ambient, &a, &b).max(directed(ambient, &b, &a)))
}

/// True when every point of `a` lies within distance `r` of some point of
/// `b`.
pub fn in_neighborhood(
    ambient: &SemiMetricSpace,
    a: &[usize],
    b: &[usize],
    r: &Scalar,
) -> Result<bool, Error> {
    let a = check_subset(ambient, a)?;
    let b = check_subset(ambient, b)?;
    Ok(a.iter()
        .all(|&p| b.iter().any(|&q| ambient.dist(p, q) <= r)))
}

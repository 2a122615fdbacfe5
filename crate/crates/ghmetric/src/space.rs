//! Finite metric and semimetric spaces with exact distances.
//!
//! A space is a list of labeled points plus a square matrix of [`Scalar`]
//! distances. Construction validates the axioms, so a value of either type
//! is a certificate that they hold; everything downstream relies on that.
//! All algorithms are positional — labels are carried only for readability.

use crate::error::Error;
use crate::scalar::Scalar;

/// A finite semimetric space: symmetric, nonnegative, zero diagonal,
/// triangle inequality, but distinct points may sit at distance zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiMetricSpace {
    labels: Vec<String>,
    n: usize,
    dist: Vec<Scalar>, // row-major n*n
}

/// A finite metric space: a [`SemiMetricSpace`] whose distinct points are
/// at strictly positive distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetricSpace(SemiMetricSpace);

fn check_labels(labels: &[String]) -> Result<(), Error> {
    if labels.is_empty() {
        return Err(Error::EmptySpace);
    }
    for (i, a) in labels.iter().enumerate() {
        if labels[..i].contains(a) {
            return Err(Error::DuplicateLabel(a.clone()));
        }
    }
    Ok(())
}

fn flatten(n: usize, rows: Vec<Vec<Scalar>>) -> Result<Vec<Scalar>, Error> {
    if rows.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            row: 0,
            found: rows.len(),
        });
    }
    let mut dist = Vec::with_capacity(n * n);
    for (i, row) in rows.into_iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                row: i,
                found: row.len(),
            });
        }
        dist.extend(row);
    }
    Ok(dist)
}

/// The semimetric axioms on a flat matrix. Quadratic checks run before the
/// cubic triangle scan so the cheapest violation is reported first.
fn check_axioms(n: usize, dist: &[Scalar]) -> Result<(), Error> {
    for i in 0..n {
        if !dist[i * n + i].is_zero() {
            return Err(Error::NonzeroDiagonal(i));
        }
        for j in (i + 1)..n {
            if dist[i * n + j] != dist[j * n + i] {
                return Err(Error::AsymmetricMatrix(i, j));
            }
            if dist[i * n + j].is_negative() {
                return Err(Error::NegativeDistance(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let through = &dist[i * n + j];
            for k in 0..n {
                if dist[i * n + k] > through + &dist[j * n + k] {
                    return Err(Error::TriangleViolation(i, j, k));
                }
            }
        }
    }
    Ok(())
}

impl SemiMetricSpace {
    /// Validates and builds a semimetric space from matrix rows.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        check_labels(&labels)?;
        let n = labels.len();
        let dist = flatten(n, rows)?;
        check_axioms(n, &dist)?;
        Ok(SemiMetricSpace { labels, n, dist })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn dist(&self, i: usize, j: usize) -> &Scalar {
        &self.dist[i * self.n + j]
    }

    /// Largest distance in the space; zero for a single point.
    pub fn diam(&self) -> Scalar {
        self.dist.iter().max().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Matrix rows, cloned.
    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.n)
            .map(|i| self.dist[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn has_zero_off_diagonal(&self) -> bool {
        (0..self.n).any(|i| (0..i).any(|j| self.dist(i, j).is_zero()))
    }

    /// Reinterprets as a metric space, failing on any zero off-diagonal pair.
    pub fn into_metric(self) -> Result<FiniteMetricSpace, Error> {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.dist(i, j).is_zero() {
                    return Err(Error::ZeroOffDiagonal(i, j));
                }
            }
        }
        Ok(FiniteMetricSpace(self))
    }
}

impl FiniteMetricSpace {
    /// Validates and builds a genuine metric space from matrix rows.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        SemiMetricSpace::new(labels, rows)?.into_metric()
    }

    pub fn as_semi(&self) -> &SemiMetricSpace {
        &self.0
    }

    pub fn into_semi(self) -> SemiMetricSpace {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        self.0.labels()
    }

    pub fn label(&self, i: usize) -> &str {
        self.0.label(i)
    }

    pub fn dist(&self, i: usize, j: usize) -> &Scalar {
        self.0.dist(i, j)
    }

    pub fn diam(&self) -> Scalar {
        self.0.diam()
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.0.rows()
    }

    /// Maximum distance from point `i` to any other point.
    pub fn eccentricity(&self, i: usize) -> Scalar {
        (0..self.len())
            .map(|j| self.dist(i, j).clone())
            .max()
            .expect("nonempty space")
    }

    /// The same space with points reordered: new index `i` is old index
    /// `perm[i]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, Error> {
        let n = self.len();
        if perm.len() != n {
            return Err(Error::MapLengthMismatch {
                expected: n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n {
                return Err(Error::IndexOutOfRange { index: p, len: n });
            }
            if seen[p] {
                return Err(Error::Internal(format!("index {p} repeated in permutation")));
            }
            seen[p] = true;
        }
        let labels = perm.iter().map(|&p| self.label(p).to_string()).collect();
        let mut dist = Vec::with_capacity(n * n);
        for &p in perm {
            for &q in perm {
                dist.push(self.dist(p, q).clone());
            }
        }
        Ok(FiniteMetricSpace(SemiMetricSpace { labels, n, dist }))
    }

    /// The subspace on the given points (distinct, in the given order).
    pub fn subspace(&self, indices: &[usize]) -> Result<Self, Error> {
        if indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        let n = self.len();
        let mut seen = vec![false; n];
        for &i in indices {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
            if seen[i] {
                return Err(Error::Internal(format!("index {i} repeated in subspace")));
            }
            seen[i] = true;
        }
        let labels = indices.iter().map(|&i| self.label(i).to_string()).collect();
        let m = indices.len();
        let mut dist = Vec::with_capacity(m * m);
        for &i in indices {
            for &j in indices {
                dist.push(self.dist(i, j).clone());
            }
        }
        Ok(FiniteMetricSpace(SemiMetricSpace { labels, n: m, dist }))
    }
}

/// Collapses every zero-distance class of a semimetric space to a single
/// point, yielding a genuine metric space plus the projection that sends
/// each input point to its class.
///
/// The induced distance does not depend on the chosen representatives: if
/// d(a,b) = 0 then |d(a,c) - d(b,c)| <= d(a,b) = 0 by the triangle
/// inequality. Classes are numbered by first occurrence and keep the label
/// of their smallest member.
pub fn quotient_zero(space: &SemiMetricSpace) -> (FiniteMetricSpace, Vec<usize>) {
    let n = space.len();
    let mut class_of = Vec::with_capacity(n);
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        let found = reps
            .iter()
            .position(|&r| space.dist(r, i).is_zero());
        class_of.push(match found {
            Some(c) => c,
            None => {
                reps.push(i);
                reps.len() - 1
            }
        });
    }
    let m = reps.len();
    let labels = reps.iter().map(|&r| space.label(r).to_string()).collect();
    let mut dist = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            dist.push(space.dist(a, b).clone());
        }
    }
    let quotient = SemiMetricSpace { labels, n: m, dist };
    debug_assert!(!quotient.has_zero_off_diagonal());
    (FiniteMetricSpace(quotient), class_of)
}

/// Joins two metric spaces into one semimetric space on their disjoint
/// union, using `cross[i][j]` as the distance between left point `i` and
/// right point `j`. Fails with [`Error::TriangleViolation`] (indices in the
/// union) when the cross block is not admissible.
///
/// Left points keep their labels prefixed `l:`, right points `r:`, so the
/// union's labels stay distinct even when `x` and `y` share labels.
pub fn disjoint_union(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    cross: &[Vec<Scalar>],
) -> Result<SemiMetricSpace, Error> {
    let (nx, ny) = (x.len(), y.len());
    if cross.len() != nx {
        return Err(Error::DimensionMismatch {
            expected: nx,
            row: 0,
            found: cross.len(),
        });
    }
    for (i, row) in cross.iter().enumerate() {
        if row.len() != ny {
            return Err(Error::DimensionMismatch {
                expected: ny,
                row: i,
                found: row.len(),
            });
        }
    }
    let n = nx + ny;
    let mut labels = Vec::with_capacity(n);
    labels.extend(x.labels().iter().map(|l| format!("l:{l}")));
    labels.extend(y.labels().iter().map(|l| format!("r:{l}")));
    let mut dist = vec![Scalar::zero(); n * n];
    for i in 0..nx {
        for j in 0..nx {
            dist[i * n + j] = x.dist(i, j).clone();
        }
        for j in 0..ny {
            dist[i * n + (nx + j)] = cross[i][j].clone();
            dist[(nx + j) * n + i] = cross[i][j].clone();
        }
    }
    for i in 0..ny {
        for j in 0..ny {
            dist[(nx + i) * n + (nx + j)] = y.dist(i, j).clone();
        }
    }
    check_axioms(n, &dist)?;
    Ok(SemiMetricSpace { labels, n, dist })
}

/// Convenience constructor used throughout the tests: points on a line with
/// the absolute-difference metric.
pub fn line_space(coords: &[Scalar]) -> Result<FiniteMetricSpace, Error> {
    let labels = coords.iter().map(|c| c.to_string()).collect();
    let rows = coords
        .iter()
        .map(|a| coords.iter().map(|b| (a - b).abs()).collect())
        .collect();
    FiniteMetricSpace::new(labels, rows)
}

//! Distance-preserving maps, the isometry decision, and canonical forms.

use crate::error::Error;
use crate::scalar::Scalar;
use crate::space::{FiniteMetricSpace, SemiMetricSpace};

/// A verified distance-preserving map between spaces, stored positionally:
/// source point `i` lands on target point `map[i]`.
///
/// Construction through [`IsometricEmbedding::verify`] checks every pair, so
/// holding a value of this type is a certificate. When the source is a
/// genuine metric space the map is automatically injective (two source
/// points sharing a target would be at distance zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometricEmbedding {
    map: Vec<usize>,
}

impl IsometricEmbedding {
    pub fn verify(
        source: &SemiMetricSpace,
        target: &SemiMetricSpace,
        map: Vec<usize>,
    ) -> Result<Self, Error> {
        if map.len() != source.len() {
            return Err(Error::MapLengthMismatch {
                expected: source.len(),
                found: map.len(),
            });
        }
        for &t in &map {
            if t >= target.len() {
                return Err(Error::IndexOutOfRange {
                    index: t,
                    len: target.len(),
                });
            }
        }
        for i in 0..map.len() {
            for j in (i + 1)..map.len() {
                if target.dist(map[i], map[j]) != source.dist(i, j) {
                    return Err(Error::NotIsometric(i, j));
                }
            }
        }
        Ok(IsometricEmbedding { map })
    }

    pub fn identity(space: &SemiMetricSpace) -> Self {
        IsometricEmbedding {
            map: (0..space.len()).collect(),
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Image of the source, sorted and deduplicated.
    pub fn range(&self) -> Vec<usize> {
        let mut r = self.map.clone();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// `outer . self`: first this embedding, then `outer`. Compositions of
    /// distance-preserving maps need no re-verification.
    pub fn then(&self, outer: &IsometricEmbedding) -> IsometricEmbedding {
        IsometricEmbedding {
            map: self.map.iter().map(|&i| outer.apply(i)).collect(),
        }
    }
}

/// Sorted distance row of a point, the cheapest relabeling invariant.
fn sorted_row(space: &FiniteMetricSpace, i: usize) -> Vec<Scalar> {
    let mut row: Vec<Scalar> = (0..space.len()).map(|j| space.dist(i, j).clone()).collect();
    row.sort();
    row
}

/// Searches for a distance-preserving bijection from `x` onto `y`,
/// returning the point map if one exists.
///
/// Exhaustive backtracking over bijections: point `i` of `x` may only land
/// on points of `y` with an identical sorted distance row, and every
/// partial assignment is checked against all previously assigned pairs.
/// Candidates are tried in increasing index order, so the returned witness
/// is the lexicographically least isometry.
pub fn is_isometric(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Option<Vec<usize>> {
    let n = x.len();
    if n != y.len() || x.diam() != y.diam() {
        return None;
    }
    let rows_x: Vec<_> = (0..n).map(|i| sorted_row(x, i)).collect();
    let rows_y: Vec<_> = (0..n).map(|j| sorted_row(y, j)).collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| rows_x[i] == rows_y[j]).collect())
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }

    fn extend(
        x: &FiniteMetricSpace,
        y: &FiniteMetricSpace,
        candidates: &[Vec<usize>],
        assigned: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = assigned.len();
        if i == x.len() {
            return true;
        }
        for &j in &candidates[i] {
            if used[j] {
                continue;
            }
            if assigned
                .iter()
                .enumerate()
                .all(|(k, &jk)| x.dist(i, k) == y.dist(j, jk))
            {
                assigned.push(j);
                used[j] = true;
                if extend(x, y, candidates, assigned, used) {
                    return true;
                }
                assigned.pop();
                used[j] = false;
            }
        }
        false
    }

    let mut assigned = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(x, y, &candidates, &mut assigned, &mut used).then_some(assigned)
}

/// Default point-count cap for [`canonicalize`]; the search is factorial in
/// the worst case.
pub const CANONICAL_DEFAULT_LIMIT: usize = 10;

/// A relabeling-invariant representative of a metric space: the
/// lexicographically minimal distance matrix (row-major order) over all
/// point orderings, plus one ordering achieving it.
///
/// Equality compares matrices only; two spaces are isometric exactly when
/// their canonical matrices coincide.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    matrix: Vec<Vec<Scalar>>,
    perm: Vec<usize>,
}

impl CanonicalForm {
    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    /// A witnessing ordering: canonical position `i` holds original point
    /// `perm[i]`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for CanonicalForm {}

pub fn canonicalize(x: &FiniteMetricSpace) -> Result<CanonicalForm, Error> {
    canonicalize_with_limit(x, CANONICAL_DEFAULT_LIMIT)
}

/// Lexicographic matrix minimization by backtracking.
///
/// The first row of the minimal matrix is forced: for any ordering that
/// starts at point `p`, the best arrangement of the remaining points makes
/// row 0 the ascending sort of `p`'s distance row, so the minimal first row
/// is the minimum of those sorts over all `p`. The search therefore only
/// considers orderings whose first row equals that vector — the remaining
/// freedom is permuting points inside blocks of equal distance to the start
/// point — and compares full candidate matrices. Candidates are tried in
/// increasing index order, so the witnessing permutation is deterministic
/// (lowest indices first among ties).
pub fn canonicalize_with_limit(
    x: &FiniteMetricSpace,
    limit: usize,
) -> Result<CanonicalForm, Error> {
    let n = x.len();
    if n > limit {
        return Err(Error::SizeLimitExceeded(n, limit));
    }

    let sorted_rows: Vec<Vec<Scalar>> = (0..n).map(|i| sorted_row(x, i)).collect();
    let first_row = sorted_rows.iter().min().expect("nonempty space").clone();

    fn descend(
        x: &FiniteMetricSpace,
        first_row: &[Scalar],
        perm: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut Option<(Vec<Scalar>, Vec<usize>)>,
    ) {
        let n = x.len();
        let k = perm.len();
        if k == n {
            let flat = flatten_perm(x, perm);
            match best {
                Some((best_flat, _)) if flat >= *best_flat => {}
                _ => *best = Some((flat, perm.clone())),
            }
            return;
        }
        for cand in 0..n {
            if used[cand] || x.dist(perm[0], cand) != &first_row[k] {
                continue;
            }
            perm.push(cand);
            used[cand] = true;
            descend(x, first_row, perm, used, best);
            perm.pop();
            used[cand] = false;
        }
    }

    let mut best: Option<(Vec<Scalar>, Vec<usize>)> = None;
    let mut used = vec![false; n];
    for start in 0..n {
        if sorted_rows[start] != first_row {
            continue;
        }
        let mut perm = vec![start];
        used[start] = true;
        descend(x, &first_row, &mut perm, &mut used, &mut best);
        used[start] = false;
    }

    let (flat, perm) = best.expect("at least one ordering exists");
    let matrix = flat.chunks(n).map(|row| row.to_vec()).collect();
    Ok(CanonicalForm { matrix, perm })
}

fn flatten_perm(x: &FiniteMetricSpace, perm: &[usize]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(perm.len() * perm.len());
    for &a in perm {
        for &b in perm {
            out.push(x.dist(a, b).clone());
        }
    }
    out
}

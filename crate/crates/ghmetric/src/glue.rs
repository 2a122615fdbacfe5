//! Gluing metric spaces along isometric subspaces, inductive towers, and
//! Cauchy-limit approximations.
//!
//! Given embeddings of a common space X into Y and Z, the glued space
//! identifies the two copies of X; the distance between y and z is the
//! shortest route through a glue point, `min over x of d_Y(y, phi x) +
//! d_Z(psi x, z)`. Because both embeddings preserve distances this cross
//! block always satisfies the mixed triangle inequalities, and quotienting
//! zero distances merges exactly the two copies of X.
//!
//! A tower embeds a whole sequence of spaces into one ambient space by
//! gluing, at every step, the previous level to the realizing space of the
//! next consecutive pair along their shared copy, so consecutive copies sit
//! at Hausdorff distance exactly their GH distance.

use crate::error::Error;
use crate::hausdorff::hausdorff_dist;
use crate::isometry::IsometricEmbedding;
use crate::realize::realize;
use crate::scalar::Scalar;
use crate::space::{disjoint_union, quotient_zero, FiniteMetricSpace};

/// Result of gluing `left` and `right` along a common subspace: the glued
/// metric space plus the isometric copies of both inputs inside it.
#[derive(Debug, Clone)]
pub struct GluedSpace {
    pub space: FiniteMetricSpace,
    pub from_left: IsometricEmbedding,
    pub from_right: IsometricEmbedding,
}

/// Glues `left` and `right` along `via`, where `phi` embeds `via` into
/// `left` and `psi` embeds it into `right` (both are verified). The two
/// copies of each glue point coincide in the result; distances inside
/// `left` and inside `right` are preserved exactly.
pub fn glue(
    via: &FiniteMetricSpace,
    left: &FiniteMetricSpace,
    right: &FiniteMetricSpace,
    phi: &[usize],
    psi: &[usize],
) -> Result<GluedSpace, Error> {
    let phi = IsometricEmbedding::verify(via.as_semi(), left.as_semi(), phi.to_vec())?;
    let psi = IsometricEmbedding::verify(via.as_semi(), right.as_semi(), psi.to_vec())?;
    glue_embedded(via, left, right, &phi, &psi)
}

/// [`glue`] for already-verified embeddings.
pub fn glue_embedded(
    via: &FiniteMetricSpace,
    left: &FiniteMetricSpace,
    right: &FiniteMetricSpace,
    phi: &IsometricEmbedding,
    psi: &IsometricEmbedding,
) -> Result<GluedSpace, Error> {
    let cross: Vec<Vec<Scalar>> = (0..left.len())
        .map(|l| {
            (0..right.len())
                .map(|r| {
                    (0..via.len())
                        .map(|x| left.dist(l, phi.apply(x)) + right.dist(psi.apply(x), r))
                        .min()
                        .expect("glue set is nonempty")
                })
                .collect()
        })
        .collect();
    let union = disjoint_union(left, right, &cross).map_err(|e| {
        Error::Internal(format!("glue union failed the semimetric axioms: {e}"))
    })?;
    let (space, projection) = quotient_zero(&union);
    let left_map: Vec<usize> = (0..left.len()).map(|i| projection[i]).collect();
    let right_map: Vec<usize> = (0..right.len())
        .map(|j| projection[left.len() + j])
        .collect();
    let from_left = IsometricEmbedding::verify(left.as_semi(), space.as_semi(), left_map)?;
    let from_right = IsometricEmbedding::verify(right.as_semi(), space.as_semi(), right_map)?;
    Ok(GluedSpace {
        space,
        from_left,
        from_right,
    })
}

/// One level of the completion tower: an ambient space carrying exact
/// isometric copies of every member space seen so far. `members[k]` is the
/// k-th input space and `embeddings[k]` its copy in `space`; the last
/// embedding is the copy the next extension glues onto.
#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub space: FiniteMetricSpace,
    pub members: Vec<FiniteMetricSpace>,
    pub embeddings: Vec<IsometricEmbedding>,
}

impl TowerLevel {
    /// The base level: the first space embedded in itself.
    pub fn root(space: &FiniteMetricSpace) -> Self {
        TowerLevel {
            space: space.clone(),
            members: vec![space.clone()],
            embeddings: vec![IsometricEmbedding::identity(space.as_semi())],
        }
    }

    pub fn embed_last(&self) -> &IsometricEmbedding {
        self.embeddings.last().expect("a level is never empty")
    }

    /// Hausdorff distance between the copies of members `a` and `b` inside
    /// this level's space.
    pub fn hausdorff_between(&self, a: usize, b: usize) -> Scalar {
        hausdorff_dist(
            self.space.as_semi(),
            &self.embeddings[a].range(),
            &self.embeddings[b].range(),
        )
        .expect("embedded ranges are nonempty")
    }
}

/// Extends a level by one more space: the realizing space of
/// (last member, `next`) is glued onto the level along their shared copy of
/// the last member. Returns the new level and the GH distance of the step;
/// inside the new space the copies of the two consecutive members sit at
/// exactly that Hausdorff distance.
pub fn tower_extend(
    level: &TowerLevel,
    next: &FiniteMetricSpace,
) -> Result<(TowerLevel, Scalar), Error> {
    let last = level.members.last().expect("a level is never empty");
    let step = realize(last, next)?;
    let glued = glue_embedded(
        last,
        &level.space,
        &step.glued,
        level.embed_last(),
        &step.embed_left,
    )?;
    let mut embeddings: Vec<IsometricEmbedding> = level
        .embeddings
        .iter()
        .map(|e| e.then(&glued.from_left))
        .collect();
    embeddings.push(step.embed_right.then(&glued.from_right));
    let mut members = level.members.clone();
    members.push(next.clone());
    Ok((
        TowerLevel {
            space: glued.space,
            members,
            embeddings,
        },
        step.value,
    ))
}

/// A fully built tower: all intermediate levels plus the GH distance of
/// every consecutive step.
#[derive(Debug, Clone)]
pub struct Tower {
    pub levels: Vec<TowerLevel>,
    pub step_values: Vec<Scalar>,
}

impl Tower {
    pub fn top(&self) -> &TowerLevel {
        self.levels.last().expect("a tower is never empty")
    }
}

/// Builds the tower level by level over the whole sequence.
pub fn build_tower(spaces: &[FiniteMetricSpace]) -> Result<Tower, Error> {
    let first = spaces.first().ok_or(Error::EmptyInput("spaces"))?;
    let mut levels = vec![TowerLevel::root(first)];
    let mut step_values = Vec::new();
    for next in &spaces[1..] {
        let (level, value) = tower_extend(levels.last().expect("nonempty"), next)?;
        levels.push(level);
        step_values.push(value);
    }
    Ok(Tower {
        levels,
        step_values,
    })
}

/// Declared bound sequence for a Cauchy sequence of spaces.
#[derive(Debug, Clone)]
pub enum CauchyBounds {
    /// `b_n = 2^-n`, summable with geometric tails.
    Dyadic,
    /// An explicit finite list `b_0, b_1, ...`; entries beyond the verified
    /// prefix are the declared tail.
    Explicit(Vec<Scalar>),
}

impl CauchyBounds {
    pub fn bound(&self, k: usize) -> Option<Scalar> {
        match self {
            CauchyBounds::Dyadic => Some(Scalar::pow2(-(k as i32))),
            CauchyBounds::Explicit(b) => b.get(k).cloned(),
        }
    }

    /// Sum of all declared bounds from index `k` on: the certified distance
    /// from the k-th space to the (unconstructed) limit.
    fn tail(&self, k: usize) -> Scalar {
        match self {
            // sum_{j >= k} 2^-j = 2^(1-k)
            CauchyBounds::Dyadic => Scalar::pow2(1 - k as i32),
            CauchyBounds::Explicit(b) => {
                b.iter().skip(k).cloned().sum()
            }
        }
    }
}

/// The final tower level's copy of the last space, offered as the limit
/// approximation, with a certified error bound.
#[derive(Debug, Clone)]
pub struct CauchyLimit {
    /// Isometric copy of the last space, cut out of the top tower level.
    pub approx: FiniteMetricSpace,
    /// Certified GH distance from `approx` to the limit of the declared
    /// sequence: the sum of the declared bounds beyond the verified prefix.
    pub error_bound: Scalar,
    pub tower: Tower,
    /// Exact Hausdorff distances between consecutive copies inside the top
    /// level; each is at most its declared bound.
    pub consecutive_hausdorff: Vec<Scalar>,
}

/// Verifies that the sequence is Cauchy at the declared rate, builds the
/// tower, and returns the last copy as the limit approximation.
///
/// Fails with [`Error::CauchyBoundViolated`] as soon as some consecutive GH
/// distance exceeds its declared bound `b_n`.
pub fn cauchy_limit(
    spaces: &[FiniteMetricSpace],
    bounds: &CauchyBounds,
) -> Result<CauchyLimit, Error> {
    if spaces.is_empty() {
        return Err(Error::EmptyInput("spaces"));
    }
    let tower = build_tower(spaces)?;
    for (k, value) in tower.step_values.iter().enumerate() {
        let bound = bounds.bound(k).ok_or(Error::CauchyBoundMissing(k))?;
        if *value > bound {
            return Err(Error::CauchyBoundViolated {
                step: k,
                actual: value.to_string(),
                bound: bound.to_string(),
            });
        }
    }
    let top = tower.top();
    let consecutive_hausdorff: Vec<Scalar> = (0..tower.step_values.len())
        .map(|k| top.hausdorff_between(k, k + 1))
        .collect();
    // The consecutive copies must sit at exactly the step's GH distance
    // (and hence within its bound); anything else is a construction bug.
    if consecutive_hausdorff != tower.step_values {
        return Err(Error::Internal(
            "tower copies drifted from their realizing distances".into(),
        ));
    }
    let approx = top.space.subspace(top.embed_last().map())?;
    let error_bound = bounds.tail(spaces.len() - 1);
    Ok(CauchyLimit {
        approx,
        error_bound,
        tower,
        consecutive_hausdorff,
    })
}

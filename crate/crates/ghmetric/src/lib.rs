//! Exact computations on finite metric spaces.
//!
//! All distances are arbitrary-precision rationals, so every result — a
//! Hausdorff distance, a Gromov-Hausdorff (GH) distance with an optimal
//! correspondence, an isometry decision, a glued space — is exact and every
//! claimed identity can be checked with `==`.
//!
//! The pieces:
//!
//! - [`space`]: validated metric and semimetric spaces, quotients by zero
//!   distance, disjoint unions.
//! - [`isometry`]: distance-preserving maps, the isometry decision, and
//!   canonical (relabeling-invariant) forms.
//! - [`hausdorff`]: Hausdorff distance between subsets of a common space.
//! - [`gh`]: exact GH distance by correspondence-distortion minimization,
//!   with a brute-force oracle, a branch-and-bound solver, and cheap
//!   certified bounds.
//! - [`realize`]: explicit common ambient spaces attaining the GH distance,
//!   and the Kuratowski sup-norm embedding.
//! - [`glue`]: gluing along isometric subspaces, completion towers, and
//!   certified Cauchy-limit approximations.

pub mod error;
pub mod gh;
pub mod glue;
pub mod hausdorff;
pub mod isometry;
pub mod realize;
pub mod scalar;
pub mod space;

pub use error::Error;
pub use gh::{
    gh_dist_bnb, gh_dist_bruteforce, gh_dist_bruteforce_with_limit, lower_bound_diam,
    upper_bound_full, Correspondence, GHResult, BRUTE_DEFAULT_LIMIT,
};
pub use glue::{
    build_tower, cauchy_limit, glue, tower_extend, CauchyBounds, CauchyLimit, GluedSpace, Tower,
    TowerLevel,
};
pub use hausdorff::{hausdorff_dist, in_neighborhood};
pub use isometry::{
    canonicalize, canonicalize_with_limit, is_isometric, CanonicalForm, IsometricEmbedding,
    CANONICAL_DEFAULT_LIMIT,
};
pub use realize::{
    kuratowski_embed, kuratowski_joint, realize, realizing_cross_distance, sup_space,
    JointEmbedding, KuratowskiEmbedding, Realization, SupNormPoint,
};
pub use scalar::Scalar;
pub use space::{
    disjoint_union, line_space, quotient_zero, FiniteMetricSpace, SemiMetricSpace,
};

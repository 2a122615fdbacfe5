//! Exact Gromov-Hausdorff distance between finite metric spaces.
//!
//! For finite spaces the GH distance is half the minimal distortion over
//! all correspondences (relations covering both point sets). Two solvers
//! compute it: [`gh_dist_bruteforce`] enumerates every correspondence and
//! serves as the oracle; [`gh_dist_bnb`] branches per left point over
//! subsets of right points with pruning and scales to larger instances.
//! Both return the same value and the same witness on any input where both
//! run.
//!
//! Witness tie-breaking is lexicographic: correspondences are compared as
//! their sorted pair lists under the usual sequence order (a proper prefix
//! precedes its extensions). Distortion comparisons inside the solvers use
//! integer ranks into the sorted table of achievable |d_X - d_Y| values;
//! reported values are recomputed from the witness in exact rationals.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::Error;
use crate::scalar::Scalar;
use crate::space::FiniteMetricSpace;

/// A relation between the points of two spaces that covers both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    left: FiniteMetricSpace,
    right: FiniteMetricSpace,
    pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    /// Validates surjectivity onto both sides; pairs are stored sorted and
    /// deduplicated.
    pub fn new(
        left: FiniteMetricSpace,
        right: FiniteMetricSpace,
        mut pairs: Vec<(usize, usize)>,
    ) -> Result<Self, Error> {
        pairs.sort_unstable();
        pairs.dedup();
        for &(i, j) in &pairs {
            if i >= left.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: left.len(),
                });
            }
            if j >= right.len() {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    len: right.len(),
                });
            }
        }
        for i in 0..left.len() {
            if !pairs.iter().any(|&(a, _)| a == i) {
                return Err(Error::NotSurjective {
                    side: "left",
                    index: i,
                });
            }
        }
        for j in 0..right.len() {
            if !pairs.iter().any(|&(_, b)| b == j) {
                return Err(Error::NotSurjective {
                    side: "right",
                    index: j,
                });
            }
        }
        Ok(Correspondence { left, right, pairs })
    }

    /// The full relation: every left point paired with every right point.
    pub fn full(left: FiniteMetricSpace, right: FiniteMetricSpace) -> Self {
        let pairs = (0..left.len())
            .flat_map(|i| (0..right.len()).map(move |j| (i, j)))
            .collect();
        Correspondence { left, right, pairs }
    }

    /// The identity relation on one space against itself.
    pub fn identity(space: FiniteMetricSpace) -> Self {
        let pairs = (0..space.len()).map(|i| (i, i)).collect();
        Correspondence {
            left: space.clone(),
            right: space,
            pairs,
        }
    }

    pub fn left(&self) -> &FiniteMetricSpace {
        &self.left
    }

    pub fn right(&self) -> &FiniteMetricSpace {
        &self.right
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Maximum deviation `|d_X(x,x') - d_Y(y,y')|` over all pairs of pairs,
    /// computed directly in exact rationals.
    pub fn distortion(&self) -> Scalar {
        let mut max = Scalar::zero();
        for (a, &(i, j)) in self.pairs.iter().enumerate() {
            for &(k, l) in &self.pairs[a..] {
                let dev = (self.left.dist(i, k) - self.right.dist(j, l)).abs();
                if dev > max {
                    max = dev;
                }
            }
        }
        max
    }
}

/// Outcome of a GH solve: the exact distance, an optimal correspondence
/// with `value = distortion(witness) / 2`, and search statistics.
#[derive(Debug, Clone)]
pub struct GHResult {
    pub value: Scalar,
    pub witness: Correspondence,
    pub node_count: u64,
}

/// `|diam X - diam Y| / 2`, a certified lower bound: any correspondence
/// contains pairs hitting both diameters.
pub fn lower_bound_diam(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Scalar {
    (x.diam() - y.diam()).abs().half()
}

/// Distortion of the full correspondence over two, a certified upper bound.
pub fn upper_bound_full(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Scalar {
    Correspondence::full(x.clone(), y.clone()).distortion().half()
}

/// Shared solver precomputation: every achievable deviation value
/// `|d_X(i,k) - d_Y(j,l)|`, sorted and deduplicated, plus a rank table so
/// the search loops compare integers instead of rationals.
struct Instance {
    nx: usize,
    ny: usize,
    distinct: Vec<Scalar>,
    rank: Vec<u32>, // [((i * nx + k) * ny + j) * ny + l]
}

impl Instance {
    fn new(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Self {
        let (nx, ny) = (x.len(), y.len());
        let mut values: Vec<Scalar> = Vec::with_capacity(nx * nx * ny * ny);
        for i in 0..nx {
            for k in 0..nx {
                for j in 0..ny {
                    for l in 0..ny {
                        values.push((x.dist(i, k) - y.dist(j, l)).abs());
                    }
                }
            }
        }
        let mut distinct = values.clone();
        distinct.sort();
        distinct.dedup();
        let index: BTreeMap<&Scalar, u32> = distinct
            .iter()
            .enumerate()
            .map(|(r, v)| (v, r as u32))
            .collect();
        let rank = values.iter().map(|v| index[v]).collect();
        Instance {
            nx,
            ny,
            distinct,
            rank,
        }
    }

    #[inline]
    fn cost(&self, i: usize, k: usize, j: usize, l: usize) -> u32 {
        self.rank[((i * self.nx + k) * self.ny + j) * self.ny + l]
    }

    fn rank_of(&self, value: &Scalar) -> u32 {
        self.distinct
            .binary_search(value)
            .expect("value achievable by some pair of pairs") as u32
    }
}

/// Default cap on `|X| * |Y|` for the brute-force solver.
pub const BRUTE_DEFAULT_LIMIT: usize = 20;

/// Exhaustive minimum over all correspondences.
///
/// Every subset of the `|X| x |Y|` pair grid that covers both sides is
/// enumerated by a depth-first scan over grid cells in lexicographic order
/// (include branch first), skipping only branches that can no longer cover
/// a row or column. The first optimum in that order is the
/// lexicographically least one, so the witness is deterministic.
/// `node_count` reports how many complete correspondences were evaluated.
pub fn gh_dist_bruteforce(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<GHResult, Error> {
    gh_dist_bruteforce_with_limit(x, y, BRUTE_DEFAULT_LIMIT)
}

pub fn gh_dist_bruteforce_with_limit(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    limit: usize,
) -> Result<GHResult, Error> {
    let cells = x.len() * y.len();
    if cells > limit {
        return Err(Error::SizeLimitExceeded(cells, limit));
    }
    let inst = Instance::new(x, y);
    let mut scan = CellScan::new(&inst, None);
    scan.run();
    let pairs = scan.best_pairs.expect("full correspondence always valid");
    let witness = Correspondence::new(x.clone(), y.clone(), pairs)
        .expect("search yields surjective pairs");
    let value = witness.distortion().half();
    debug_assert_eq!(value, inst.distinct[scan.best_rank as usize].half());
    Ok(GHResult {
        value,
        witness,
        node_count: scan.leaves,
    })
}

/// Depth-first scan over the pair grid shared by the brute-force solver
/// (no value bound: enumerate everything, keep the first minimum) and the
/// branch-and-bound witness extraction (bound fixed at the known optimum:
/// the first surviving leaf is the lexicographically least optimal
/// witness, matching the brute-force choice by construction).
struct CellScan<'a> {
    inst: &'a Instance,
    bound: Option<u32>,
    chosen: Vec<(usize, usize)>,
    row_count: Vec<u32>,
    col_count: Vec<u32>,
    cur_max: u32,
    best_rank: u32,
    best_pairs: Option<Vec<(usize, usize)>>,
    leaves: u64,
    stop_at_first: bool,
}

impl<'a> CellScan<'a> {
    fn new(inst: &'a Instance, bound: Option<u32>) -> Self {
        CellScan {
            inst,
            bound,
            chosen: Vec::new(),
            row_count: vec![0; inst.nx],
            col_count: vec![0; inst.ny],
            cur_max: 0,
            best_rank: u32::MAX,
            best_pairs: None,
            leaves: 0,
            stop_at_first: bound.is_some(),
        }
    }

    fn run(&mut self) {
        self.visit(0);
    }

    /// Returns true when the scan should stop entirely.
    fn visit(&mut self, cell: usize) -> bool {
        let (nx, ny) = (self.inst.nx, self.inst.ny);
        if cell == nx * ny {
            self.leaves += 1;
            if self.cur_max < self.best_rank {
                self.best_rank = self.cur_max;
                self.best_pairs = Some(self.chosen.clone());
                if self.stop_at_first {
                    return true;
                }
            }
            return false;
        }
        let (i, j) = (cell / ny, cell % ny);

        // Include branch first: subsets are visited in lexicographic order
        // of their sorted pair lists.
        let mut inc_max = self.cur_max;
        for &(k, l) in &self.chosen {
            inc_max = inc_max.max(self.inst.cost(i, k, j, l));
        }
        let within_bound = match self.bound {
            Some(b) => inc_max <= b,
            None => true,
        };
        if within_bound {
            let saved = self.cur_max;
            self.cur_max = inc_max;
            self.chosen.push((i, j));
            self.row_count[i] += 1;
            self.col_count[j] += 1;
            if self.visit(cell + 1) {
                return true;
            }
            self.chosen.pop();
            self.row_count[i] -= 1;
            self.col_count[j] -= 1;
            self.cur_max = saved;
        }

        // Exclude branch, unless that abandons a row or column for good:
        // later cells are in later rows, and column j never reappears after
        // the last row.
        let row_dead = j == ny - 1 && self.row_count[i] == 0;
        let col_dead = i == nx - 1 && self.col_count[j] == 0;
        if !row_dead && !col_dead {
            return self.visit(cell + 1);
        }
        false
    }
}

/// Branch-and-bound solver for the same minimum.
///
/// The value search branches per left point (in decreasing-eccentricity
/// order) over nonempty subsets of right points, pruning a branch as soon
/// as its partial distortion reaches the best known bound, which is seeded
/// by a greedy correspondence. The diameter gap is used as a certified
/// lower bound for early exit. Top-level subtrees run in parallel; the
/// shared bound may be read stale, which only costs pruning, never
/// correctness. The witness is then extracted by a second, sequential scan
/// bounded at the optimum, so the result is deterministic regardless of
/// thread schedule and identical to the brute-force witness.
///
/// Practical up to roughly 8x8 on random metrics (larger for structured
/// ones). The smaller space, over whose subsets the search branches, is
/// capped at 22 points: the per-subset tables are exponential in it.
pub fn gh_dist_bnb(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> GHResult {
    // Identical matrices short-circuit: the identity correspondence is the
    // lexicographically least zero-distortion relation.
    if x.rows() == y.rows() {
        return GHResult {
            value: Scalar::zero(),
            witness: Correspondence::identity(x.clone()),
            node_count: 0,
        };
    }

    let inst = Instance::new(x, y);
    let lower = inst.rank_of(&(x.diam() - y.diam()).abs());

    // Branch over subsets of the smaller side; only the value search cares
    // about orientation, the witness scan below runs on the original one.
    let swapped = y.len() > x.len();
    let value_search = if swapped {
        BnbValue::new(&inst, y, x, Orientation::Swapped)
    } else {
        BnbValue::new(&inst, x, y, Orientation::Original)
    };
    let (value_rank, value_nodes) = value_search.solve(lower);

    let mut scan = CellScan::new(&inst, Some(value_rank));
    scan.run();
    let pairs = scan
        .best_pairs
        .expect("an optimal correspondence exists at the proven optimum");
    let witness =
        Correspondence::new(x.clone(), y.clone(), pairs).expect("scan yields surjective pairs");
    let value = witness.distortion().half();
    debug_assert_eq!(value, inst.distinct[value_rank as usize].half());
    GHResult {
        value,
        witness,
        node_count: value_nodes + scan.leaves,
    }
}

#[derive(Clone, Copy)]
enum Orientation {
    Original,
    Swapped,
}

struct BnbValue<'a> {
    inst: &'a Instance,
    orientation: Orientation,
    nl: usize, // branching (left) side size
    nr: usize, // subset (right) side size
    order: Vec<usize>,
    intra: Vec<u32>,
    masks_by_intra: Vec<u64>,
    full_mask: u64,
    best: AtomicU32,
    nodes: AtomicU64,
}

impl<'a> BnbValue<'a> {
    fn new(
        inst: &'a Instance,
        left: &FiniteMetricSpace,
        right: &FiniteMetricSpace,
        orientation: Orientation,
    ) -> Self {
        let (nl, nr) = (left.len(), right.len());
        assert!(nr <= 22, "subset side too large for mask tables");

        // Eccentricity-descending branching order, lowest index first on ties.
        let mut order: Vec<usize> = (0..nl).collect();
        let eccs: Vec<Scalar> = (0..nl).map(|i| left.eccentricity(i)).collect();
        order.sort_by(|&a, &b| eccs[b].cmp(&eccs[a]).then(a.cmp(&b)));

        // intra[mask]: distortion contributed by pairing one left point with
        // every right point in `mask` (deviation |0 - d_R(j,l)|).
        let mut intra = vec![0u32; 1 << nr];
        for mask in 1u64..(1 << nr) {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let mut m = intra[rest as usize];
            let mut bits = rest;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                m = m.max(Self::pair_gap(inst, orientation, low, j));
            }
            intra[mask as usize] = m;
        }
        let mut masks_by_intra: Vec<u64> = (1..(1u64 << nr)).collect();
        masks_by_intra.sort_by_key(|&m| (intra[m as usize], m));

        BnbValue {
            inst,
            orientation,
            nl,
            nr,
            order,
            intra,
            masks_by_intra,
            full_mask: (1u64 << nr) - 1,
            best: AtomicU32::new(u32::MAX),
            nodes: AtomicU64::new(0),
        }
    }

    /// Rank of |d_R(j, l)|: the deviation of two right points paired with a
    /// common left point.
    fn pair_gap(inst: &Instance, orientation: Orientation, j: usize, l: usize) -> u32 {
        match orientation {
            Orientation::Original => inst.cost(0, 0, j, l),
            Orientation::Swapped => inst.cost(j, l, 0, 0),
        }
    }

    /// Rank of |d_L(i, k) - d_R(j, l)| in value-search orientation.
    #[inline]
    fn cost(&self, i: usize, k: usize, j: usize, l: usize) -> u32 {
        match self.orientation {
            Orientation::Original => self.inst.cost(i, k, j, l),
            Orientation::Swapped => self.inst.cost(j, l, i, k),
        }
    }

    fn solve(&self, lower: u32) -> (u32, u64) {
        let greedy = self.greedy_rank();
        self.best.store(greedy, Ordering::Relaxed);
        if greedy > lower {
            let first_row = self.order[0];
            self.masks_by_intra.par_iter().for_each(|&mask| {
                if self.best.load(Ordering::Relaxed) <= lower {
                    return;
                }
                let m = mask as usize;
                if self.intra[m] >= self.best.load(Ordering::Relaxed) {
                    return;
                }
                self.nodes.fetch_add(1, Ordering::Relaxed);
                let total = self.intra[m];
                if self.nl == 1 {
                    if mask == self.full_mask {
                        self.best.fetch_min(total, Ordering::Relaxed);
                    }
                    return;
                }
                let mut chosen: Vec<(usize, usize)> = mask_bits(mask)
                    .map(|j| (first_row, j))
                    .collect();
                self.descend(1, mask, total, &mut chosen, lower);
            });
        }
        (
            self.best.load(Ordering::Relaxed),
            self.nodes.load(Ordering::Relaxed),
        )
    }

    fn descend(
        &self,
        depth: usize,
        covered: u64,
        cur: u32,
        chosen: &mut Vec<(usize, usize)>,
        lower: u32,
    ) {
        if self.best.load(Ordering::Relaxed) <= lower {
            return;
        }
        let i = self.order[depth];
        let last = depth == self.nl - 1;

        // Cost of pairing row i with column j against everything chosen.
        let mut colcost = vec![0u32; self.nr];
        for &(k, l) in chosen.iter() {
            for (j, cc) in colcost.iter_mut().enumerate() {
                *cc = (*cc).max(self.cost(i, k, j, l));
            }
        }

        let missing = self.full_mask & !covered;
        for &mask in &self.masks_by_intra {
            let best_now = self.best.load(Ordering::Relaxed);
            if best_now <= lower || cur >= best_now {
                return;
            }
            let m = mask as usize;
            if self.intra[m] >= best_now {
                break; // masks are sorted by intra; nothing later fits
            }
            if last && (mask & missing) != missing {
                continue;
            }
            let mut total = cur.max(self.intra[m]);
            let mut bits = mask;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                total = total.max(colcost[j]);
                if total >= best_now {
                    break;
                }
            }
            if total >= best_now {
                continue;
            }
            self.nodes.fetch_add(1, Ordering::Relaxed);
            if last {
                self.best.fetch_min(total, Ordering::Relaxed);
                continue;
            }
            let before = chosen.len();
            chosen.extend(mask_bits(mask).map(|j| (i, j)));
            self.descend(depth + 1, covered | mask, total, chosen, lower);
            chosen.truncate(before);
        }
    }

    /// Greedy upper bound: assign each left point (in branching order) its
    /// cheapest single partner, then cover leftover right points with their
    /// cheapest rows. Ties pick the lowest index.
    fn greedy_rank(&self) -> u32 {
        let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(self.nl + self.nr);
        let mut cur = 0u32;
        let mut covered = 0u64;
        for d in 0..self.nl {
            let i = self.order[d];
            let (mut best_j, mut best_cost) = (0usize, u32::MAX);
            for j in 0..self.nr {
                let mut c = 0u32;
                for &(k, l) in &chosen {
                    c = c.max(self.cost(i, k, j, l));
                    if c >= best_cost {
                        break;
                    }
                }
                if c < best_cost {
                    best_cost = c;
                    best_j = j;
                }
            }
            chosen.push((i, best_j));
            covered |= 1 << best_j;
            cur = cur.max(best_cost);
        }
        for j in 0..self.nr {
            if covered >> j & 1 == 1 {
                continue;
            }
            let (mut best_i, mut best_cost) = (0usize, u32::MAX);
            for i in 0..self.nl {
                let mut c = 0u32;
                for &(k, l) in &chosen {
                    c = c.max(self.cost(i, k, j, l));
                    if c >= best_cost {
                        break;
                    }
                }
                if c < best_cost {
                    best_cost = c;
                    best_i = i;
                }
            }
            chosen.push((best_i, j));
            cur = cur.max(best_cost);
        }
        cur
    }
}

fn mask_bits(mask: u64) -> impl Iterator<Item = usize> {
    std::iter::successors(
        if mask == 0 { None } else { Some(mask) },
        |&m| {
            let rest = m & (m - 1);
            (rest != 0).then_some(rest)
        },
    )
    .map(|m| m.trailing_zeros() as usize)
}

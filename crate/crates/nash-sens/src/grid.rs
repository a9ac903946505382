//! Uniform grids over products of strategy boxes, plus the set machinery
//! (sorted index sets, dilation, Hausdorff distance) built on top of them.
//!
//! Every strategy axis `[lo, hi]` with `n` points is discretized as
//! `lo + (hi - lo) * k / (n - 1)`, with the two endpoints pinned exactly.
//! All metric computations run on index deltas scaled by the stored axis
//! spacing rather than on coordinate differences, so that geometric
//! predicates (is this point within `2 * spacing` of that one?) are exact
//! for the lattice instead of depending on accumulated rounding in the
//! coordinates themselves.

use std::io::Write as _;
use std::ops::Range;
use std::path::Path;

use crate::error::{Error, Result};

/// One strategy axis: a closed interval and the number of grid points on it.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AxisSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl AxisSpec {
    pub fn new(lo: f64, hi: f64, points: usize) -> Self {
        AxisSpec { lo, hi, points }
    }

    fn validate(&self) -> Result<()> {
        if !self.lo.is_finite() || !self.hi.is_finite() || self.lo >= self.hi || self.points < 2 {
            return Err(Error::InvalidAxis {
                lo: self.lo,
                hi: self.hi,
                points: self.points,
            });
        }
        Ok(())
    }
}

/// Per-player lists of axes describing the joint strategy space.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GridSpec {
    pub players: Vec<Vec<AxisSpec>>,
}

impl GridSpec {
    pub fn new(players: Vec<Vec<AxisSpec>>) -> Self {
        GridSpec { players }
    }

    /// Same interval and resolution on every axis of every player.
    pub fn uniform(dims: &[usize], lo: f64, hi: f64, points: usize) -> Self {
        GridSpec {
            players: dims
                .iter()
                .map(|&d| vec![AxisSpec::new(lo, hi, points); d])
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
struct Axis {
    spec: AxisSpec,
    /// fl((hi - lo) / (points - 1)); the scale used by the index metric.
    spacing: f64,
    coords: Vec<f64>,
    /// Row-major stride of this axis inside a full profile index.
    stride: usize,
}

/// A discretized product strategy space shared by all set operations.
///
/// The grid owns the coordinate tables and the row-major layout: profile
/// indices enumerate players in order and axes within each player, last
/// axis fastest.
#[derive(Debug, Clone)]
pub struct Grid {
    axes: Vec<Axis>,
    /// Which slice of `axes` belongs to each player.
    player_axes: Vec<Range<usize>>,
    /// Number of grid points in each player's own strategy box.
    player_sizes: Vec<usize>,
    /// Stride of each player's block inside a full profile index.
    player_strides: Vec<usize>,
    len: usize,
    id: u64,
}

impl Grid {
    /// Validate a spec and build the coordinate tables.
    pub fn build(spec: &GridSpec) -> Result<Self> {
        if spec.players.is_empty() || spec.players.iter().any(|p| p.is_empty()) {
            return Err(Error::GridMismatch(
                "grid spec needs at least one player, each with at least one axis".into(),
            ));
        }
        let mut axes = Vec::new();
        let mut player_axes = Vec::new();
        for player in &spec.players {
            let start = axes.len();
            for &a in player {
                a.validate()?;
                let n = a.points;
                let spacing = (a.hi - a.lo) / (n - 1) as f64;
                let mut coords = Vec::with_capacity(n);
                for k in 0..n {
                    let c = if k == 0 {
                        a.lo
                    } else if k == n - 1 {
                        a.hi
                    } else {
                        a.lo + (a.hi - a.lo) * (k as f64 / (n - 1) as f64)
                    };
                    coords.push(c);
                }
                // Strict monotonicity keeps every index-to-coordinate map
                // injective; it can only fail for pathological intervals.
                if coords.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidAxis {
                        lo: a.lo,
                        hi: a.hi,
                        points: n,
                    });
                }
                axes.push(Axis {
                    spec: a,
                    spacing,
                    coords,
                    stride: 0,
                });
            }
            player_axes.push(start..axes.len());
        }
        let mut len = 1usize;
        for ax in &axes {
            len = len
                .checked_mul(ax.spec.points)
                .ok_or_else(|| Error::Domain("grid size overflows usize".into()))?;
        }
        // Row-major strides, last axis fastest.
        let mut stride = 1usize;
        for ax in axes.iter_mut().rev() {
            ax.stride = stride;
            stride *= ax.spec.points;
        }
        let player_sizes: Vec<usize> = player_axes
            .iter()
            .map(|r| axes[r.clone()].iter().map(|a| a.spec.points).product())
            .collect();
        let player_strides: Vec<usize> = player_axes
            .iter()
            .map(|r| axes[r.end - 1].stride)
            .collect();
        let id = fingerprint(spec);
        Ok(Grid {
            axes,
            player_axes,
            player_sizes,
            player_strides,
            len,
            id,
        })
    }

    /// Total number of joint strategy profiles.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Structural fingerprint; two grids with equal specs share it.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn num_players(&self) -> usize {
        self.player_axes.len()
    }

    /// Number of grid points in player `i`'s own box.
    pub fn player_size(&self, i: usize) -> usize {
        self.player_sizes[i]
    }

    /// Stride of player `i`'s block inside a profile index.
    pub fn player_stride(&self, i: usize) -> usize {
        self.player_strides[i]
    }

    /// Number of axes (strategy dimensions) of player `i`.
    pub fn player_dims(&self, i: usize) -> usize {
        self.player_axes[i].len()
    }

    /// Total number of strategy coordinates across all players.
    pub fn total_dims(&self) -> usize {
        self.axes.len()
    }

    /// Spacing of axis `d` of player `i`.
    pub fn spacing(&self, i: usize, d: usize) -> f64 {
        self.axes[self.player_axes[i].start + d].spacing
    }

    /// Declared interval and resolution of axis `d` of player `i`.
    pub fn axis_spec(&self, i: usize, d: usize) -> AxisSpec {
        self.axes[self.player_axes[i].start + d].spec
    }

    /// Offset of player `i`'s first coordinate inside a joint coordinate
    /// vector of length `total_dims()`.
    pub fn player_coord_offset(&self, i: usize) -> usize {
        self.player_axes[i].start
    }

    /// Smallest axis spacing anywhere on the grid.
    pub fn min_spacing(&self) -> f64 {
        self.axes
            .iter()
            .map(|a| a.spacing)
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest axis spacing anywhere on the grid.
    pub fn max_spacing(&self) -> f64 {
        self.axes.iter().map(|a| a.spacing).fold(0.0, f64::max)
    }

    /// Write the joint coordinates of `profile` into `out`
    /// (player-major order, `out.len() == total_dims()`).
    pub fn profile_coords_into(&self, profile: usize, out: &mut [f64]) {
        debug_assert!(profile < self.len);
        debug_assert_eq!(out.len(), self.axes.len());
        for (slot, ax) in out.iter_mut().zip(&self.axes) {
            let k = (profile / ax.stride) % ax.spec.points;
            *slot = ax.coords[k];
        }
    }

    /// Allocating convenience wrapper around [`Self::profile_coords_into`].
    pub fn profile_coords(&self, profile: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.axes.len()];
        self.profile_coords_into(profile, &mut out);
        out
    }

    /// Allocating convenience wrapper around
    /// [`Self::player_point_coords_into`].
    pub fn player_point_coords(&self, i: usize, p: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.player_dims(i)];
        self.player_point_coords_into(i, p, &mut out);
        out
    }

    /// Coordinates of player `i`'s point `p` (an index into the player's own
    /// row-major box, `p < player_size(i)`).
    pub fn player_point_coords_into(&self, i: usize, p: usize, out: &mut [f64]) {
        let axes = &self.axes[self.player_axes[i].clone()];
        debug_assert_eq!(out.len(), axes.len());
        let mut rem = p;
        for (slot, ax) in out.iter_mut().zip(axes).rev() {
            let k = rem % ax.spec.points;
            rem /= ax.spec.points;
            *slot = ax.coords[k];
        }
    }

    /// Replace player `i`'s block inside `profile` with point `p`.
    pub fn with_player_point(&self, profile: usize, i: usize, p: usize) -> usize {
        let stride = self.player_strides[i];
        let size = self.player_sizes[i];
        let old = (profile / stride) % size;
        // Modular arithmetic: the true result is always in range.
        profile.wrapping_add(p.wrapping_sub(old).wrapping_mul(stride))
    }

    /// Player `i`'s point index inside `profile`.
    pub fn player_point_of(&self, profile: usize, i: usize) -> usize {
        (profile / self.player_strides[i]) % self.player_sizes[i]
    }

    /// Compose a profile index from one point index per player.
    pub fn compose(&self, points: &[usize]) -> usize {
        debug_assert_eq!(points.len(), self.num_players());
        points
            .iter()
            .zip(&self.player_strides)
            .map(|(&p, &s)| p * s)
            .sum()
    }

    /// Euclidean distance between two joint profiles, computed on index
    /// deltas scaled by axis spacing.
    pub fn profile_distance(&self, a: usize, b: usize) -> f64 {
        let mut acc = 0.0;
        for ax in &self.axes {
            let ka = (a / ax.stride) % ax.spec.points;
            let kb = (b / ax.stride) % ax.spec.points;
            let d = (ka as f64 - kb as f64) * ax.spacing;
            acc += d * d;
        }
        acc.sqrt()
    }

    /// Euclidean distance between two of player `i`'s points.
    pub fn player_distance(&self, i: usize, a: usize, b: usize) -> f64 {
        let axes = &self.axes[self.player_axes[i].clone()];
        let mut acc = 0.0;
        let (mut ra, mut rb) = (a, b);
        for ax in axes.iter().rev() {
            let ka = ra % ax.spec.points;
            let kb = rb % ax.spec.points;
            ra /= ax.spec.points;
            rb /= ax.spec.points;
            let d = (ka as f64 - kb as f64) * ax.spacing;
            acc += d * d;
        }
        acc.sqrt()
    }

    fn axis_index(&self, profile: usize, axis: usize) -> usize {
        let ax = &self.axes[axis];
        (profile / ax.stride) % ax.spec.points
    }
}

fn fingerprint(spec: &GridSpec) -> u64 {
    // FNV-1a over the structural content; collisions across the handful of
    // grids alive in one process are not a practical concern.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
    };
    eat(&(spec.players.len() as u64).to_le_bytes());
    for player in &spec.players {
        eat(&(player.len() as u64).to_le_bytes());
        for a in player {
            eat(&a.lo.to_bits().to_le_bytes());
            eat(&a.hi.to_bits().to_le_bytes());
            eat(&(a.points as u64).to_le_bytes());
        }
    }
    h
}

/// A set of one player's grid points, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    pub player: usize,
    indices: Vec<usize>,
    grid_id: u64,
}

impl PointSet {
    pub fn from_indices(player: usize, mut indices: Vec<usize>, grid: &Grid) -> Self {
        indices.sort_unstable();
        indices.dedup();
        PointSet {
            player,
            indices,
            grid_id: grid.id(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.indices.binary_search(&p).is_ok()
    }

    pub fn grid_id(&self) -> u64 {
        self.grid_id
    }
}

/// A set of joint strategy profiles on one grid, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileSet {
    indices: Vec<usize>,
    grid_id: u64,
}

impl ProfileSet {
    pub fn empty(grid: &Grid) -> Self {
        ProfileSet {
            indices: Vec::new(),
            grid_id: grid.id(),
        }
    }

    pub fn from_indices(mut indices: Vec<usize>, grid: &Grid) -> Self {
        indices.sort_unstable();
        indices.dedup();
        ProfileSet {
            indices,
            grid_id: grid.id(),
        }
    }

    /// Every profile on the grid.
    pub fn full(grid: &Grid) -> Self {
        ProfileSet {
            indices: (0..grid.len()).collect(),
            grid_id: grid.id(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn grid_id(&self) -> u64 {
        self.grid_id
    }

    pub fn contains(&self, profile: usize) -> bool {
        self.indices.binary_search(&profile).is_ok()
    }

    fn check_same_grid(&self, other: &ProfileSet) -> Result<()> {
        if self.grid_id != other.grid_id {
            return Err(Error::GridIdentityMismatch);
        }
        Ok(())
    }

    fn check_grid(&self, grid: &Grid) -> Result<()> {
        if self.grid_id != grid.id() {
            return Err(Error::GridIdentityMismatch);
        }
        Ok(())
    }

    pub fn union(&self, other: &ProfileSet) -> Result<ProfileSet> {
        self.check_same_grid(other)?;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.indices.len() && j < other.indices.len() {
            match self.indices[i].cmp(&other.indices[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.indices[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.indices[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.indices[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.indices[i..]);
        out.extend_from_slice(&other.indices[j..]);
        Ok(ProfileSet {
            indices: out,
            grid_id: self.grid_id,
        })
    }

    pub fn intersect(&self, other: &ProfileSet) -> Result<ProfileSet> {
        self.check_same_grid(other)?;
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.indices.len() && j < other.indices.len() {
            match self.indices[i].cmp(&other.indices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.indices[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(ProfileSet {
            indices: out,
            grid_id: self.grid_id,
        })
    }

    /// True when every profile of `self` also lies in `other`.
    pub fn is_subset_of(&self, other: &ProfileSet) -> Result<bool> {
        self.check_same_grid(other)?;
        let mut j = 0;
        for &p in &self.indices {
            while j < other.indices.len() && other.indices[j] < p {
                j += 1;
            }
            if j == other.indices.len() || other.indices[j] != p {
                return Ok(false);
            }
            j += 1;
        }
        Ok(true)
    }

    /// Profiles of `self` missing from `other`, capped at `limit` witnesses.
    pub fn subset_witnesses(&self, other: &ProfileSet, limit: usize) -> Result<Vec<usize>> {
        self.check_same_grid(other)?;
        let mut missing = Vec::new();
        for &p in &self.indices {
            if !other.contains(p) {
                missing.push(p);
                if missing.len() >= limit {
                    break;
                }
            }
        }
        Ok(missing)
    }
}

/// Distance from one profile to the nearest member of `set`
/// (`+inf` for an empty set).
pub fn distance_to_set(profile: usize, set: &ProfileSet, grid: &Grid) -> Result<f64> {
    set.check_grid(grid)?;
    let mut best = f64::INFINITY;
    for q in set.iter() {
        let d = grid.profile_distance(profile, q);
        if d < best {
            best = d;
        }
    }
    Ok(best)
}

/// All grid profiles within `radius` of `set` under the joint Euclidean
/// metric. `closed` decides whether distance exactly `radius` is in.
///
/// Implemented by enumerating the axis-aligned offset box around each member
/// and filtering by the exact index metric, so runtime scales with
/// `|set| * prod(2 * radius / spacing + 1)` rather than with the grid.
pub fn dilate(set: &ProfileSet, radius: f64, grid: &Grid, closed: bool) -> Result<ProfileSet> {
    set.check_grid(grid)?;
    if !(radius >= 0.0) {
        return Err(Error::Domain(format!(
            "dilation radius must be nonnegative, got {radius}"
        )));
    }
    let n_axes = grid.axes.len();
    // Max index offset along each axis that can still be within radius.
    let reach: Vec<isize> = grid
        .axes
        .iter()
        .map(|ax| {
            let r = (radius / ax.spacing).floor() as isize;
            // Guard against radius/spacing landing barely under an integer.
            let r = r + 1;
            r.min(ax.spec.points as isize - 1)
        })
        .collect();
    let inside = |d: f64| if closed { d <= radius } else { d < radius };
    let mut out = Vec::new();
    let mut offsets = vec![0isize; n_axes];
    for center in set.iter() {
        let base: Vec<isize> = (0..n_axes)
            .map(|ax| grid.axis_index(center, ax) as isize)
            .collect();
        for (o, r) in offsets.iter_mut().zip(&reach) {
            *o = -r;
        }
        'walk: loop {
            let mut ok = true;
            let mut candidate = 0usize;
            let mut acc = 0.0;
            for ax in 0..n_axes {
                let k = base[ax] + offsets[ax];
                let axis = &grid.axes[ax];
                if k < 0 || k >= axis.spec.points as isize {
                    ok = false;
                    break;
                }
                candidate += (k as usize) * axis.stride;
                let d = offsets[ax] as f64 * axis.spacing;
                acc += d * d;
            }
            if ok && inside(acc.sqrt()) {
                out.push(candidate);
            }
            // Advance odometer.
            let mut ax = n_axes;
            loop {
                if ax == 0 {
                    break 'walk;
                }
                ax -= 1;
                if offsets[ax] < reach[ax] {
                    offsets[ax] += 1;
                    for (j, o) in offsets.iter_mut().enumerate().skip(ax + 1) {
                        *o = -reach[j];
                    }
                    continue 'walk;
                }
            }
        }
    }
    Ok(ProfileSet::from_indices(out, grid))
}

/// Directed Hausdorff distance `sup_{a in A} inf_{b in B} d(a, b)`.
/// Empty `A` contributes 0; empty `B` with nonempty `A` gives `+inf`.
pub fn directed_hausdorff(a: &ProfileSet, b: &ProfileSet, grid: &Grid) -> Result<f64> {
    a.check_grid(grid)?;
    b.check_grid(grid)?;
    if a.is_empty() {
        return Ok(0.0);
    }
    if b.is_empty() {
        return Ok(f64::INFINITY);
    }
    let mut worst = 0.0f64;
    for p in a.iter() {
        let mut best = f64::INFINITY;
        for q in b.iter() {
            let d = grid.profile_distance(p, q);
            if d < best {
                best = d;
                if best <= worst {
                    break; // cannot raise the running sup
                }
            }
        }
        if best > worst {
            worst = best;
        }
    }
    Ok(worst)
}

/// Symmetric Hausdorff distance between two profile sets on one grid.
/// Both empty gives 0; exactly one empty gives `+inf`.
pub fn hausdorff(a: &ProfileSet, b: &ProfileSet, grid: &Grid) -> Result<f64> {
    if a.is_empty() && b.is_empty() {
        return Ok(0.0);
    }
    let ab = directed_hausdorff(a, b, grid)?;
    let ba = directed_hausdorff(b, a, grid)?;
    Ok(ab.max(ba))
}

/// True when every member of `a` is within `delta` (closed) of some member
/// of `b`. Empty `a` passes trivially.
pub fn contains_within(a: &ProfileSet, b: &ProfileSet, delta: f64, grid: &Grid) -> Result<bool> {
    a.check_grid(grid)?;
    b.check_grid(grid)?;
    for p in a.iter() {
        let mut hit = false;
        for q in b.iter() {
            if grid.profile_distance(p, q) <= delta {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Write a profile set as CSV: `profile_index` followed by one column per
/// strategy coordinate, named `y_<player>_<dim>` (both 1-based). Floats are
/// rendered as `{:.16e}` so files are reproducible byte for byte.
pub fn write_profiles_csv(set: &ProfileSet, grid: &Grid, path: &Path) -> Result<()> {
    set.check_grid(grid)?;
    let mut buf = Vec::new();
    render_profiles_csv(set, grid, &mut buf);
    std::fs::write(path, &buf).map_err(|e| Error::io(path, e))
}

/// In-memory CSV rendering used by both the file writer and the driver's
/// digest pipeline.
pub fn render_profiles_csv(set: &ProfileSet, grid: &Grid, buf: &mut Vec<u8>) {
    buf.clear();
    let mut header = String::from("profile_index");
    for i in 0..grid.num_players() {
        for d in 0..grid.player_dims(i) {
            header.push_str(&format!(",y_{}_{}", i + 1, d + 1));
        }
    }
    header.push('\n');
    buf.extend_from_slice(header.as_bytes());
    let mut coords = vec![0.0; grid.total_dims()];
    for p in set.iter() {
        grid.profile_coords_into(p, &mut coords);
        write!(buf, "{p}").unwrap();
        for &c in &coords {
            write!(buf, ",{c:.16e}").unwrap();
        }
        buf.push(b'\n');
    }
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn small_grid() -> Grid {
        Grid::build(&GridSpec::uniform(&[1, 1], 0.0, 1.0, 7)).unwrap()
    }

    proptest! {
        #[test]
        fn union_is_commutative_and_contains_both(
            xs in proptest::collection::vec(0usize..49, 0..20),
            ys in proptest::collection::vec(0usize..49, 0..20),
        ) {
            let g = small_grid();
            let a = ProfileSet::from_indices(xs, &g);
            let b = ProfileSet::from_indices(ys, &g);
            let u1 = a.union(&b).unwrap();
            let u2 = b.union(&a).unwrap();
            prop_assert_eq!(&u1, &u2);
            prop_assert!(a.is_subset_of(&u1).unwrap());
            prop_assert!(b.is_subset_of(&u1).unwrap());
        }

        #[test]
        fn dilation_is_monotone_in_radius(
            xs in proptest::collection::vec(0usize..49, 1..6),
            r1 in 0.0f64..0.5,
            r2 in 0.0f64..0.5,
        ) {
            let g = small_grid();
            let s = ProfileSet::from_indices(xs, &g);
            let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
            let d_lo = dilate(&s, lo, &g, true).unwrap();
            let d_hi = dilate(&s, hi, &g, true).unwrap();
            prop_assert!(d_lo.is_subset_of(&d_hi).unwrap());
            prop_assert!(s.is_subset_of(&d_lo).unwrap());
        }

        #[test]
        fn hausdorff_is_symmetric_and_zero_iff_equal(
            xs in proptest::collection::vec(0usize..49, 1..8),
            ys in proptest::collection::vec(0usize..49, 1..8),
        ) {
            let g = small_grid();
            let a = ProfileSet::from_indices(xs, &g);
            let b = ProfileSet::from_indices(ys, &g);
            let dab = hausdorff(&a, &b, &g).unwrap();
            let dba = hausdorff(&b, &a, &g).unwrap();
            prop_assert_eq!(dab, dba);
            prop_assert_eq!(dab == 0.0, a == b);
        }

        #[test]
        fn triangle_inequality_on_profiles(
            p in 0usize..49, q in 0usize..49, r in 0usize..49,
        ) {
            let g = small_grid();
            let pq = g.profile_distance(p, q);
            let qr = g.profile_distance(q, r);
            let pr = g.profile_distance(p, r);
            prop_assert!(pr <= pq + qr + 1e-12);
        }
    }
}

//! Finite sampled metric measure spaces: weighted sites, a metric oracle,
//! and exact open-ball range queries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::scalar::{dist2d, Scalar};

/// An open metric ball, identified with its center/radius pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball<T: Scalar> {
    pub center: [T; 2],
    pub radius: T,
}

impl<T: Scalar> Ball<T> {
    pub fn new(center: [T; 2], radius: T) -> Self {
        Self { center, radius }
    }

    /// The dilated ball `tau B`: same center, scaled radius.
    pub fn dilate(&self, tau: T) -> Self {
        Self { center: self.center, radius: self.radius * tau }
    }

    pub fn contains(&self, p: [T; 2]) -> bool {
        dist2d(self.center, p) < self.radius
    }
}

/// How distances between sites are realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricKind {
    #[serde(rename = "euclidean-2d")]
    Euclidean2d,
    #[serde(rename = "table")]
    Table,
}

#[derive(Debug, Clone)]
enum MetricData<T: Scalar> {
    Euclidean2d { points: Vec<[T; 2]>, index: GridIndex<T> },
    Table { dist: Vec<Vec<T>> },
}

/// A weighted point cloud with a metric oracle and a spatial index.
///
/// Immutable after construction; all queries are pure. Ball queries use the
/// open-ball convention (`d < r`, strict) everywhere and return site indices
/// in ascending order.
#[derive(Debug, Clone)]
pub struct SampledSpace<T: Scalar> {
    metric: MetricData<T>,
    weights: Vec<T>,
}

impl<T: Scalar> SampledSpace<T> {
    /// Build a planar space from coordinates and quadrature weights.
    pub fn euclidean(points: Vec<[T; 2]>, weights: Vec<T>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewSites { need: 2, got: points.len() });
        }
        check_weights(&weights, points.len())?;
        let index = GridIndex::build(&points);
        Ok(Self { metric: MetricData::Euclidean2d { points, index }, weights })
    }

    /// Build a space from an explicit symmetric distance table.
    pub fn from_table(dist: Vec<Vec<T>>, weights: Vec<T>) -> Result<Self> {
        let n = dist.len();
        if n < 2 {
            return Err(Error::TooFewSites { need: 2, got: n });
        }
        for (row, r) in dist.iter().enumerate() {
            if r.len() != n {
                return Err(Error::TableShape { sites: n, row, len: r.len() });
            }
        }
        for i in 0..n {
            if dist[i][i] != T::zero() {
                return Err(Error::NonzeroDiagonal { i });
            }
            for j in (i + 1)..n {
                if dist[i][j] != dist[j][i] {
                    return Err(Error::AsymmetricTable {
                        i,
                        j,
                        dij: dist[i][j].f64(),
                        dji: dist[j][i].f64(),
                    });
                }
            }
        }
        check_weights(&weights, n)?;
        Ok(Self { metric: MetricData::Table { dist }, weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn metric_kind(&self) -> MetricKind {
        match self.metric {
            MetricData::Euclidean2d { .. } => MetricKind::Euclidean2d,
            MetricData::Table { .. } => MetricKind::Table,
        }
    }

    pub fn weight(&self, i: usize) -> T {
        self.weights[i]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn total_mass(&self) -> T {
        self.weights.iter().copied().fold(T::zero(), |a, b| a + b)
    }

    /// Planar coordinates of a site, when the metric is euclidean.
    pub fn point(&self, i: usize) -> Option<[T; 2]> {
        match &self.metric {
            MetricData::Euclidean2d { points, .. } => Some(points[i]),
            MetricData::Table { .. } => None,
        }
    }

    pub fn points(&self) -> Option<&[[T; 2]]> {
        match &self.metric {
            MetricData::Euclidean2d { points, .. } => Some(points),
            MetricData::Table { .. } => None,
        }
    }

    pub fn table(&self) -> Option<&Vec<Vec<T>>> {
        match &self.metric {
            MetricData::Table { dist } => Some(dist),
            MetricData::Euclidean2d { .. } => None,
        }
    }

    /// Distance between two sites.
    pub fn dist(&self, i: usize, j: usize) -> T {
        match &self.metric {
            MetricData::Euclidean2d { points, .. } => dist2d(points[i], points[j]),
            MetricData::Table { dist } => dist[i][j],
        }
    }

    /// Sites inside the open ball around site `center`, ascending.
    pub fn ball_query(&self, center: usize, r: T) -> Result<Vec<usize>> {
        if r <= T::zero() {
            return Err(Error::NonPositiveRadius(r.f64()));
        }
        if center >= self.len() {
            return Err(Error::IndexOutOfRange { index: center, len: self.len() });
        }
        match &self.metric {
            MetricData::Euclidean2d { points, index } => {
                Ok(index.query(points, points[center], r))
            }
            MetricData::Table { dist } => {
                Ok((0..self.len()).filter(|&j| dist[center][j] < r).collect())
            }
        }
    }

    /// Sites inside the open ball around a free planar point, ascending.
    pub fn ball_query_point(&self, center: [T; 2], r: T) -> Result<Vec<usize>> {
        if r <= T::zero() {
            return Err(Error::NonPositiveRadius(r.f64()));
        }
        match &self.metric {
            MetricData::Euclidean2d { points, index } => Ok(index.query(points, center, r)),
            MetricData::Table { .. } => Err(Error::NoCoordinates),
        }
    }

    /// Total weight of a set of sites.
    pub fn measure_of(&self, sites: &[usize]) -> Result<T> {
        let mut acc = T::zero();
        for &i in sites {
            if i >= self.len() {
                return Err(Error::IndexOutOfRange { index: i, len: self.len() });
            }
            acc += self.weights[i];
        }
        Ok(acc)
    }

    /// Largest observed triangle-inequality defect over random triples.
    ///
    /// Nonpositive values mean the inequality held on every sampled triple.
    pub fn triangle_defect(&self, triples: usize, seed: u64) -> T {
        let mut rng = SplitMix64::new(seed);
        let n = self.len();
        let mut worst = T::neg_infinity();
        for _ in 0..triples {
            let a = rng.next_index(n);
            let b = rng.next_index(n);
            let c = rng.next_index(n);
            let defect = self.dist(a, c) - (self.dist(a, b) + self.dist(b, c));
            if defect > worst {
                worst = defect;
            }
        }
        worst
    }
}

fn check_weights<T: Scalar>(weights: &[T], sites: usize) -> Result<()> {
    if weights.len() != sites {
        return Err(Error::WeightLengthMismatch { weights: weights.len(), sites });
    }
    for (i, &w) in weights.iter().enumerate() {
        if !w.is_finite() || w < T::zero() {
            return Err(Error::NegativeWeight { site: i, value: w.f64() });
        }
    }
    let total: T = weights.iter().copied().fold(T::zero(), |a, b| a + b);
    if !(total > T::zero()) {
        return Err(Error::ZeroTotalMass);
    }
    Ok(())
}

/// Uniform-bucket index over planar sites. Queries are exact: candidates are
/// gathered from the covered buckets and filtered by the true distance.
#[derive(Debug, Clone)]
struct GridIndex<T: Scalar> {
    xmin: T,
    ymin: T,
    cell: T,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<u32>>,
}

impl<T: Scalar> GridIndex<T> {
    fn build(points: &[[T; 2]]) -> Self {
        let mut xmin = T::infinity();
        let mut xmax = T::neg_infinity();
        let mut ymin = T::infinity();
        let mut ymax = T::neg_infinity();
        for p in points {
            xmin = xmin.min(p[0]);
            xmax = xmax.max(p[0]);
            ymin = ymin.min(p[1]);
            ymax = ymax.max(p[1]);
        }
        let extent = (xmax - xmin).max(ymax - ymin).max(T::cast(1e-12));
        // Aim for O(1) sites per bucket on roughly uniform clouds.
        let target = T::cast((points.len() as f64).sqrt().ceil());
        let cell = extent / target;
        let nx = ((xmax - xmin) / cell).f64() as usize + 1;
        let ny = ((ymax - ymin) / cell).f64() as usize + 1;
        let mut buckets = vec![Vec::new(); nx * ny];
        for (i, p) in points.iter().enumerate() {
            let (bx, by) = Self::bucket_of(xmin, ymin, cell, nx, ny, *p);
            buckets[by * nx + bx].push(i as u32);
        }
        Self { xmin, ymin, cell, nx, ny, buckets }
    }

    fn bucket_of(xmin: T, ymin: T, cell: T, nx: usize, ny: usize, p: [T; 2]) -> (usize, usize) {
        let bx = ((p[0] - xmin) / cell).floor().f64() as isize;
        let by = ((p[1] - ymin) / cell).floor().f64() as isize;
        (bx.clamp(0, nx as isize - 1) as usize, by.clamp(0, ny as isize - 1) as usize)
    }

    fn query(&self, points: &[[T; 2]], center: [T; 2], r: T) -> Vec<usize> {
        let lo = [center[0] - r, center[1] - r];
        let hi = [center[0] + r, center[1] + r];
        let (bx0, by0) = Self::bucket_of(self.xmin, self.ymin, self.cell, self.nx, self.ny, lo);
        let (bx1, by1) = Self::bucket_of(self.xmin, self.ymin, self.cell, self.nx, self.ny, hi);
        let mut out = Vec::new();
        for by in by0..=by1 {
            for bx in bx0..=bx1 {
                for &i in &self.buckets[by * self.nx + bx] {
                    if dist2d(points[i as usize], center) < r {
                        out.push(i as usize);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Doubling diagnostics: the worst sampled ratio of the mass of a doubled
/// ball to the mass of the ball itself.
#[derive(Debug, Clone)]
pub struct DoublingReport<T: Scalar> {
    /// Largest sampled ratio `mass(2B) / mass(B)`.
    pub constant: T,
    /// `(center, radius)` attaining the largest ratio.
    pub witness: Option<(usize, T)>,
    /// Sampled pairs whose inner ball was empty, skipped rather than fatal.
    pub skipped: Vec<(usize, T)>,
    pub samples: usize,
}

/// Estimate the doubling constant by sampling centers and radii.
pub fn estimate_doubling_constant<T: Scalar>(
    space: &SampledSpace<T>,
    centers: &[usize],
    radii: &[T],
) -> Result<DoublingReport<T>> {
    let mut best = T::zero();
    let mut witness = None;
    let mut skipped = Vec::new();
    let mut samples = 0usize;
    for &z in centers {
        for &r in radii {
            let inner = space.measure_of(&space.ball_query(z, r)?)?;
            if inner <= T::zero() {
                skipped.push((z, r));
                continue;
            }
            let outer = space.measure_of(&space.ball_query(z, r + r)?)?;
            let ratio = outer / inner;
            samples += 1;
            if ratio > best {
                best = ratio;
                witness = Some((z, r));
            }
        }
    }
    Ok(DoublingReport { constant: best, witness, skipped, samples })
}

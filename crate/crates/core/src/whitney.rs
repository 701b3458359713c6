//! Whitney ball cover of the interior: balls whose radii are an eighth of
//! the boundary distance, binned into dyadic levels, with bounded overlap,
//! plus the boundary anchors and anchor neighborhoods each ball projects to.

use rayon::prelude::*;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dilation factor for the enlarged anchor neighborhood `U*`. The level-gap
/// bound for intersecting balls forces anchors of all interacting balls into
/// this dilate of each other's neighborhoods.
pub const ANCHOR_DILATION: f64 = 256.0;

/// Dyadic level of a radius: the unique `i` with `2^(i-1) < r <= 2^i`.
pub fn level_of_radius<T: Scalar>(r: T) -> i32 {
    let two = T::cast(2.0);
    let mut i = r.log2().ceil().to_i32().expect("radius in float range");
    while r > two.powi(i) {
        i += 1;
    }
    while r <= two.powi(i - 1) {
        i -= 1;
    }
    i
}

/// One ball of the cover.
#[derive(Debug, Clone)]
pub struct WhitneyBall<T: Scalar> {
    /// Dyadic level `i` with `2^(i-1) < r <= 2^i`.
    pub level: i32,
    /// Ordinal within the level, in emission order.
    pub ordinal: usize,
    /// Site index of the center.
    pub center: usize,
    /// Exactly one eighth of the center's boundary distance.
    pub radius: T,
    /// Nearest true-boundary site to the center (smallest index on ties).
    pub anchor: Option<usize>,
    /// Boundary sites within `radius` of the anchor.
    pub u_sites: Vec<u32>,
    /// Boundary sites within `ANCHOR_DILATION * radius` of the anchor.
    pub ustar_sites: Vec<u32>,
    /// Radius below half the grid step; the ball covers only its center.
    pub subscale: bool,
    /// Anchor neighborhood was empty and widened to the anchor alone.
    pub u_widened: bool,
}

/// Whitney cover with site/ball incidence maps.
#[derive(Debug, Clone)]
pub struct WhitneyCover<T: Scalar> {
    pub balls: Vec<WhitneyBall<T>>,
    /// For each site, the balls (ascending id) whose core ball contains it.
    pub covering: Vec<Vec<u32>>,
    /// For each site, the balls (ascending id) whose doubled ball contains it.
    pub covering_2b: Vec<Vec<u32>>,
    /// Max multiplicity of the doubled balls over interior sites.
    pub overlap_max: usize,
    /// Number of balls below the grid scale (each covers only its center).
    pub subscale_count: usize,
}

impl<T: Scalar> WhitneyCover<T> {
    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }
}

/// Greedy Whitney cover: walk interior sites in ascending index and emit a
/// ball at every site not yet covered. The radius rule keeps the doubled
/// ball clear of the boundary, so every property is inherited ball by ball.
///
/// Sites closer to the boundary than four grid steps produce balls below
/// the grid scale; these cover only their own center and are flagged so
/// reports can count them.
pub fn build_whitney<T: Scalar>(domain: &Domain<T>) -> Result<WhitneyCover<T>> {
    if domain.interior.is_empty() {
        return Err(Error::FieldMismatch("domain has no interior sites".into()));
    }
    let n = domain.space.len();
    let eighth = T::cast(0.125);
    let subscale_cut = T::cast(4.0) * domain.h;
    let mut covered = vec![false; n];
    let mut balls: Vec<WhitneyBall<T>> = Vec::new();
    let mut level_counts: std::collections::HashMap<i32, usize> = std::collections::HashMap::new();
    for &site in &domain.interior {
        if covered[site] {
            continue;
        }
        let d = domain.distance_to_boundary(site)?;
        let r = d * eighth;
        let level = level_of_radius(r);
        let ordinal = {
            let c = level_counts.entry(level).or_insert(0);
            let o = *c;
            *c += 1;
            o
        };
        for m in domain.interior_ball(site, r)? {
            covered[m] = true;
        }
        balls.push(WhitneyBall {
            level,
            ordinal,
            center: site,
            radius: r,
            anchor: None,
            u_sites: Vec::new(),
            ustar_sites: Vec::new(),
            subscale: d < subscale_cut,
            u_widened: false,
        });
    }
    // A site first covered by a later ball may also lie in balls emitted
    // afterwards; build both incidences in one pass over the final list.
    let mut covering: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut covering_2b: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (id, b) in balls.iter().enumerate() {
        for m in domain.interior_ball(b.center, b.radius)? {
            covering[m].push(id as u32);
        }
        for m in domain.interior_ball(b.center, b.radius + b.radius)? {
            covering_2b[m].push(id as u32);
        }
    }
    for &site in &domain.interior {
        if covering[site].is_empty() {
            return Err(Error::UncoveredSite(site));
        }
    }
    let overlap_max = domain
        .interior
        .iter()
        .map(|&s| covering_2b[s].len())
        .max()
        .unwrap_or(0);
    let subscale_count = balls.iter().filter(|b| b.subscale).count();
    Ok(WhitneyCover { balls, covering, covering_2b, overlap_max, subscale_count })
}

/// Verification report for the cover.
#[derive(Debug, Clone)]
pub struct WhitneyReport<T: Scalar> {
    pub n_balls: usize,
    pub n_interior: usize,
    /// Interior sites in no core ball.
    pub coverage_violations: Vec<usize>,
    /// Balls whose radius leaves its dyadic level bin.
    pub level_bin_violations: Vec<usize>,
    /// Balls whose radius is not an eighth of the center clearance.
    pub radius_rule_violations: Vec<usize>,
    /// Balls whose doubled ball touches a boundary site.
    pub boundary_leak_violations: Vec<usize>,
    /// Intersecting pairs (core vs doubled, on sites) at level gap > 3.
    pub level_gap_violations: Vec<(usize, usize)>,
    /// Number of intersecting pairs examined by the level-gap check.
    pub intersecting_pairs: usize,
    /// Pairs at level gap > 3 whose geometric separation is not positive.
    pub separation_violations: Vec<(usize, usize)>,
    /// Histogram of doubled-ball multiplicity over interior sites.
    pub overlap_histogram: Vec<usize>,
    pub overlap_max: usize,
    /// For each requested dilation, the max same-level neighbor count.
    pub sigma_counts: Vec<(f64, usize)>,
    /// Same-level neighbor counts per level for the largest dilation.
    pub sigma_by_level: Vec<(i32, usize)>,
    pub max_level: i32,
    pub min_level: i32,
    _marker: std::marker::PhantomData<T>,
}

impl<T: Scalar> WhitneyReport<T> {
    pub fn pass(&self) -> bool {
        self.coverage_violations.is_empty()
            && self.level_bin_violations.is_empty()
            && self.radius_rule_violations.is_empty()
            && self.boundary_leak_violations.is_empty()
            && self.level_gap_violations.is_empty()
            && self.separation_violations.is_empty()
    }
}

/// Check the cover properties exactly and measure the overlap statistics.
pub fn verify_whitney<T: Scalar>(
    cover: &WhitneyCover<T>,
    domain: &Domain<T>,
    sigmas: &[f64],
) -> Result<WhitneyReport<T>> {
    let two = T::cast(2.0);
    let tol = T::cast(1e-12);

    let coverage_violations: Vec<usize> = domain
        .interior
        .iter()
        .copied()
        .filter(|&s| cover.covering[s].is_empty())
        .collect();

    let mut level_bin_violations = Vec::new();
    let mut radius_rule_violations = Vec::new();
    let mut boundary_leak_violations = Vec::new();
    for (id, b) in cover.balls.iter().enumerate() {
        let lo = two.powi(b.level - 1);
        let hi = two.powi(b.level);
        if !(b.radius > lo && b.radius <= hi) {
            level_bin_violations.push(id);
        }
        let d = domain.distance_to_boundary(b.center)?;
        if (b.radius - d * T::cast(0.125)).abs() > tol * d.max(T::one()) {
            radius_rule_violations.push(id);
        }
        let doubled = domain.space.ball_query(b.center, b.radius + b.radius)?;
        if doubled.iter().any(|&s| domain.is_boundary(s)) {
            boundary_leak_violations.push(id);
        }
    }

    // Site-level intersection pairs: a site lying in the doubled ball of one
    // and the core ball of the other.
    let mut pairs = std::collections::HashSet::new();
    for &site in &domain.interior {
        for &big in &cover.covering_2b[site] {
            for &core in &cover.covering[site] {
                if big != core {
                    pairs.insert((big.min(core), big.max(core)));
                }
            }
        }
    }
    let intersecting_pairs = pairs.len();
    let level_gap_violations: Vec<(usize, usize)> = pairs
        .iter()
        .filter(|&&(a, b)| {
            (cover.balls[a as usize].level - cover.balls[b as usize].level).abs() > 3
        })
        .map(|&(a, b)| (a as usize, b as usize))
        .collect();

    // Pairs separated by more than three levels must be geometrically
    // apart: the doubled small ball cannot reach the core of the large one.
    let by_level = group_by_level(cover);
    let mut separation_violations = Vec::new();
    let levels: Vec<i32> = by_level.keys().copied().collect();
    for &li in &levels {
        for &lj in &levels {
            if lj - li <= 3 {
                continue;
            }
            for &a in &by_level[&li] {
                for &b in &by_level[&lj] {
                    let (small, large) = (&cover.balls[a], &cover.balls[b]);
                    let d = domain.space.dist(small.center, large.center);
                    let sep = d - (large.radius + small.radius + small.radius);
                    if sep <= T::zero() {
                        separation_violations.push((a, b));
                    }
                }
            }
        }
    }

    let mut overlap_histogram = vec![0usize; cover.overlap_max + 1];
    for &s in &domain.interior {
        overlap_histogram[cover.covering_2b[s].len()] += 1;
    }

    let mut sigma_counts = Vec::new();
    let mut sigma_by_level = Vec::new();
    for &sigma in sigmas {
        let sig = T::cast(sigma);
        let mut worst = 0usize;
        for (&level, ids) in &by_level {
            let mut level_worst = 0usize;
            for &a in ids {
                let ball_a = &cover.balls[a];
                let mut count = 0usize;
                for &b in ids {
                    if a == b {
                        continue;
                    }
                    let ball_b = &cover.balls[b];
                    let d = domain.space.dist(ball_a.center, ball_b.center);
                    if d < sig * (ball_a.radius + ball_b.radius) {
                        count += 1;
                    }
                }
                level_worst = level_worst.max(count);
            }
            worst = worst.max(level_worst);
            if sigma == *sigmas.last().unwrap() {
                sigma_by_level.push((level, level_worst));
            }
        }
        sigma_counts.push((sigma, worst));
    }
    sigma_by_level.sort_unstable();

    let max_level = cover.balls.iter().map(|b| b.level).max().unwrap_or(0);
    let min_level = cover.balls.iter().map(|b| b.level).min().unwrap_or(0);

    Ok(WhitneyReport {
        n_balls: cover.balls.len(),
        n_interior: domain.interior.len(),
        coverage_violations,
        level_bin_violations,
        radius_rule_violations,
        boundary_leak_violations,
        level_gap_violations,
        intersecting_pairs,
        separation_violations,
        overlap_histogram,
        overlap_max: cover.overlap_max,
        sigma_counts,
        sigma_by_level,
        max_level,
        min_level,
        _marker: std::marker::PhantomData,
    })
}

fn group_by_level<T: Scalar>(
    cover: &WhitneyCover<T>,
) -> std::collections::BTreeMap<i32, Vec<usize>> {
    let mut map: std::collections::BTreeMap<i32, Vec<usize>> = Default::default();
    for (id, b) in cover.balls.iter().enumerate() {
        map.entry(b.level).or_default().push(id);
    }
    map
}

/// Report of the anchor construction.
#[derive(Debug, Clone)]
pub struct AnchorReport<T: Scalar> {
    /// Balls whose anchor neighborhood had to be widened to the nearest
    /// boundary site (neighborhoods centered at the anchor always contain
    /// the anchor itself, so this stays empty for site-anchored covers).
    pub widened: Vec<usize>,
    /// Max same-level overlap count of the enlarged neighborhoods.
    pub ustar_same_level_overlap: usize,
    /// Per-level same-level overlap counts.
    pub ustar_overlap_by_level: Vec<(i32, usize)>,
    /// Largest ratio `nu(U*) / nu(U)` over the cover.
    pub nu_ratio_max: T,
}

/// Fill the boundary anchors and the `U`, `U*` neighborhoods of every ball.
pub fn boundary_anchors<T: Scalar>(
    cover: &mut WhitneyCover<T>,
    domain: &Domain<T>,
) -> Result<AnchorReport<T>> {
    if domain.boundary.is_empty() {
        return Err(Error::EmptyBoundary);
    }
    let dilation = T::cast(ANCHOR_DILATION);
    let filled: Vec<(usize, Vec<u32>, Vec<u32>)> = cover
        .balls
        .par_iter()
        .map(|b| {
            let anchor = domain.nearest_boundary_site(b.center);
            let u: Vec<u32> =
                domain.nu_ball_sites(anchor, b.radius).into_iter().map(|s| s as u32).collect();
            let ustar: Vec<u32> = domain
                .nu_ball_sites(anchor, dilation * b.radius)
                .into_iter()
                .map(|s| s as u32)
                .collect();
            (anchor, u, ustar)
        })
        .collect();
    let mut widened = Vec::new();
    let mut nu_ratio_max = T::zero();
    for (id, (anchor, u, ustar)) in filled.into_iter().enumerate() {
        let b = &mut cover.balls[id];
        b.anchor = Some(anchor);
        if u.is_empty() {
            // fall back to the anchor alone and flag the ball
            b.u_sites = vec![anchor as u32];
            b.u_widened = true;
            widened.push(id);
        } else {
            b.u_sites = u;
        }
        b.ustar_sites = ustar;
        let nu_u = b
            .u_sites
            .iter()
            .map(|&s| domain.nu[s as usize])
            .fold(T::zero(), |a, v| a + v);
        let nu_star = b
            .ustar_sites
            .iter()
            .map(|&s| domain.nu[s as usize])
            .fold(T::zero(), |a, v| a + v);
        if nu_u > T::zero() {
            nu_ratio_max = nu_ratio_max.max(nu_star / nu_u);
        }
    }

    // Same-level overlap of the enlarged neighborhoods, via anchor distance.
    let by_level = group_by_level(cover);
    let mut worst = 0usize;
    let mut by_level_counts = Vec::new();
    for (&level, ids) in &by_level {
        let mut level_worst = 0usize;
        for &a in ids {
            let (ca, ra) = (cover.balls[a].anchor.unwrap(), cover.balls[a].radius);
            let mut count = 0usize;
            for &b in ids {
                if a == b {
                    continue;
                }
                let (cb, rb) = (cover.balls[b].anchor.unwrap(), cover.balls[b].radius);
                if domain.space.dist(ca, cb) < dilation * (ra + rb) {
                    count += 1;
                }
            }
            level_worst = level_worst.max(count);
        }
        by_level_counts.push((level, level_worst));
        worst = worst.max(level_worst);
    }

    Ok(AnchorReport {
        widened,
        ustar_same_level_overlap: worst,
        ustar_overlap_by_level: by_level_counts,
        nu_ratio_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{build_domain, Preset};

    #[test]
    fn radius_and_level_formula() {
        // a ball centered at height 1 in the half-plane
        let r: f64 = 1.0 / 8.0;
        assert_eq!(level_of_radius(r), -3);
        assert!(0.5f64.powi(4) < r && r <= 0.5f64.powi(3));
        assert_eq!(level_of_radius(0.25), -2); // exact powers stay in their level
        assert_eq!(level_of_radius(0.2500001), -1);
        assert_eq!(level_of_radius(1.0), 0);
        assert_eq!(level_of_radius(3.0), 2);
    }

    #[test]
    fn doubled_balls_stay_interior() {
        let d = build_domain(Preset::HalfplaneWindow, 1.0 / 8.0, 1.0).unwrap();
        let cover = build_whitney(&d).unwrap();
        for b in &cover.balls {
            let doubled = d.space.ball_query(b.center, 2.0 * b.radius).unwrap();
            assert!(doubled.iter().all(|&s| d.is_interior(s)));
        }
    }

    #[test]
    fn cover_verifies_on_halfplane() {
        let d = build_domain(Preset::HalfplaneWindow, 1.0 / 8.0, 1.0).unwrap();
        let cover = build_whitney(&d).unwrap();
        let rep = verify_whitney(&cover, &d, &[1.0, 2.0]).unwrap();
        assert!(rep.pass(), "violations: {:?}", rep.level_gap_violations);
        assert!(rep.intersecting_pairs > 0);
    }

    #[test]
    fn overlap_bound_on_halfplane_fine() {
        let d = build_domain(Preset::HalfplaneWindow, 1.0 / 16.0, 1.0).unwrap();
        let cover = build_whitney(&d).unwrap();
        // exact count oracle: recount the doubled-ball multiplicity directly
        let mut max_count = 0usize;
        for &s in &d.interior {
            let p = d.space.point(s).unwrap();
            let mut c = 0usize;
            for b in &cover.balls {
                let q = d.space.point(b.center).unwrap();
                if crate::scalar::dist2d(p, q) < 2.0 * b.radius {
                    c += 1;
                }
            }
            max_count = max_count.max(c);
        }
        assert_eq!(max_count, cover.overlap_max);
        assert!(cover.overlap_max <= 40, "overlap {}", cover.overlap_max);
    }

    #[test]
    fn anchors_on_halfplane() {
        let d = build_domain(Preset::HalfplaneWindow, 1.0 / 16.0, 1.0).unwrap();
        let mut cover = build_whitney(&d).unwrap();
        let rep = boundary_anchors(&mut cover, &d).unwrap();
        assert!(rep.widened.is_empty());
        // a ball centered at (3, 1) anchors at (3, 0) with a 1/8 window
        let ball = cover
            .balls
            .iter()
            .find(|b| d.space.point(b.center) == Some([3.0, 1.0]));
        if let Some(b) = ball {
            let anchor = b.anchor.unwrap();
            assert_eq!(d.space.point(anchor), Some([3.0, 0.0]));
            for &s in &b.u_sites {
                assert!(d.space.dist(anchor, s as usize) < b.radius);
            }
        }
        for b in &cover.balls {
            // U always sits inside U*
            let ustar: std::collections::HashSet<u32> = b.ustar_sites.iter().copied().collect();
            assert!(b.u_sites.iter().all(|s| ustar.contains(s)));
        }
        assert!(rep.nu_ratio_max >= 1.0);
    }

    #[test]
    fn gap_pairs_are_separated() {
        let d = build_domain(Preset::HalfplaneWindow, 1.0 / 8.0, 1.0).unwrap();
        let cover = build_whitney(&d).unwrap();
        let rep = verify_whitney(&cover, &d, &[1.0]).unwrap();
        assert!(rep.separation_violations.is_empty());
        // there are pairs at gap exactly 4 on this grid, so the check bites
        let has_gap4 = cover.balls.iter().any(|a| {
            cover.balls.iter().any(|b| (a.level - b.level).abs() == 4)
        });
        assert!(has_gap4);
    }

    #[test]
    fn interacting_radii_are_comparable() {
        let d = build_domain(Preset::HalfplaneWindow, 1.0 / 8.0, 1.0).unwrap();
        let cover = build_whitney(&d).unwrap();
        // site-level interacting pairs have radius ratio within [1/16, 16]
        for &site in &d.interior {
            for &a in &cover.covering_2b[site] {
                for &b in &cover.covering[site] {
                    let ra = cover.balls[a as usize].radius;
                    let rb = cover.balls[b as usize].radius;
                    let ratio: f64 = ra / rb;
                    assert!(
                        (1.0 / 16.0..=16.0).contains(&ratio),
                        "ratio {ratio} at site {site}"
                    );
                }
            }
        }
    }
}

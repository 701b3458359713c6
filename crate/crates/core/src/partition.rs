//! Partition of unity subordinate to a Whitney cover: clamped tent bumps,
//! one per ball, normalized so they sum to one at every interior site.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::whitney::WhitneyCover;

/// Normalized bump values at every interior site, stored sparsely.
#[derive(Debug, Clone)]
pub struct PartitionOfUnity<T: Scalar> {
    /// For each site, `(ball id, value)` pairs with ascending ids; empty off
    /// the interior. Values at a site sum to one.
    pub per_site: Vec<Vec<(u32, T)>>,
}

impl<T: Scalar> PartitionOfUnity<T> {
    /// Value of one bump at one site (zero off its doubled ball).
    pub fn value(&self, ball: u32, site: usize) -> T {
        self.per_site[site]
            .iter()
            .find(|(b, _)| *b == ball)
            .map(|&(_, v)| v)
            .unwrap_or_else(T::zero)
    }

    /// Sum of all bumps at a site.
    pub fn sum_at(&self, site: usize) -> T {
        self.per_site[site].iter().map(|&(_, v)| v).fold(T::zero(), |a, b| a + b)
    }
}

/// Raw tent bump of a ball before normalization: one on the core ball,
/// tapering linearly to zero at the doubled radius.
fn tent<T: Scalar>(dist: T, radius: T) -> T {
    (T::cast(2.0) - dist / radius).max(T::zero()).min(T::one())
}

/// Build the normalized partition from a cover.
///
/// Every interior site must lie in some core ball; the raw sums are then at
/// least one and the normalization is well conditioned.
pub fn build_partition<T: Scalar>(
    cover: &WhitneyCover<T>,
    domain: &Domain<T>,
) -> Result<PartitionOfUnity<T>> {
    let n = domain.space.len();
    let mut per_site: Vec<Vec<(u32, T)>> = vec![Vec::new(); n];
    for &site in &domain.interior {
        let mut raw: Vec<(u32, T)> = Vec::with_capacity(cover.covering_2b[site].len());
        let mut total = T::zero();
        for &id in &cover.covering_2b[site] {
            let b = &cover.balls[id as usize];
            let d = domain.space.dist(site, b.center);
            let v = tent(d, b.radius);
            if v > T::zero() {
                total += v;
                raw.push((id, v));
            }
        }
        if !(total > T::zero()) {
            return Err(Error::UncoveredSite(site));
        }
        for (_, v) in raw.iter_mut() {
            *v /= total;
        }
        per_site[site] = raw;
    }
    Ok(PartitionOfUnity { per_site })
}

/// Largest deviation of the partition sum from one over the interior.
pub fn partition_sum_defect<T: Scalar>(
    pou: &PartitionOfUnity<T>,
    domain: &Domain<T>,
) -> T {
    domain
        .interior
        .iter()
        .map(|&s| (pou.sum_at(s) - T::one()).abs())
        .fold(T::zero(), |a, b| a.max(b))
}

/// Measured Lipschitz constant of the bumps in units of the ball radius:
/// the largest `|phi(x) - phi(y)| * r / d(x, y)` over in-support pairs of
/// grid neighbors. Neighbor pairs probe the steepest local variation and
/// keep the estimate comparable across resolutions.
pub fn partition_lipschitz<T: Scalar>(
    pou: &PartitionOfUnity<T>,
    cover: &WhitneyCover<T>,
    domain: &Domain<T>,
) -> Result<T> {
    let step = domain.h * T::cast(1.5);
    let mut worst = T::zero();
    for &site in &domain.interior {
        let neighbors = domain.interior_ball(site, step)?;
        for &other in &neighbors {
            if other <= site {
                continue;
            }
            let d = domain.space.dist(site, other);
            if !(d > T::zero()) {
                continue;
            }
            for &(id, v) in &pou.per_site[site] {
                let w = pou.value(id, other);
                let r = cover.balls[id as usize].radius;
                worst = worst.max((v - w).abs() * r / d);
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{build_domain, Preset};
    use crate::whitney::build_whitney;

    #[test]
    fn lone_ball_gives_unit_bump() {
        let d = build_domain(Preset::Square, 0.5, 1.0).unwrap();
        let cover = build_whitney(&d).unwrap();
        assert_eq!(cover.balls.len(), 1);
        let pou = build_partition(&cover, &d).unwrap();
        let site = d.interior[0];
        assert_eq!(pou.value(0, site), 1.0);
        assert_eq!(pou.sum_at(site), 1.0);
    }

    #[test]
    fn sums_to_one_everywhere() {
        let d = build_domain(Preset::HalfplaneWindow, 1.0 / 8.0, 1.0).unwrap();
        let cover = build_whitney(&d).unwrap();
        let pou = build_partition(&cover, &d).unwrap();
        assert!(partition_sum_defect(&pou, &d) <= 1e-9);
    }

    #[test]
    fn values_subordinate_to_doubled_balls() {
        let d = build_domain(Preset::LShape, 0.25, 1.0).unwrap();
        let cover = build_whitney(&d).unwrap();
        let pou = build_partition(&cover, &d).unwrap();
        for &site in &d.interior {
            for &(id, v) in &pou.per_site[site] {
                assert!(v >= 0.0 && v <= 1.0);
                let b = &cover.balls[id as usize];
                assert!(d.space.dist(site, b.center) < 2.0 * b.radius);
            }
        }
    }

    #[test]
    fn lipschitz_constant_is_stable_under_refinement() {
        let measure = |h: f64| {
            let d = build_domain(Preset::HalfplaneWindow, h, 1.0).unwrap();
            let cover = build_whitney(&d).unwrap();
            let pou = build_partition(&cover, &d).unwrap();
            partition_lipschitz(&pou, &cover, &d).unwrap()
        };
        let coarse = measure(1.0 / 8.0);
        let fine = measure(1.0 / 16.0);
        assert!(coarse > 0.0 && fine > 0.0);
        let ratio = fine / coarse;
        assert!((0.75..=1.3333).contains(&ratio), "ratio {ratio}");
    }
}

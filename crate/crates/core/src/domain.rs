//! The discrete domain: a sampled space split into interior sites carrying
//! the bulk measure and true-boundary sites carrying the boundary measure,
//! plus the codimension audit relating the two.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{dist2d, Scalar};
use crate::space::SampledSpace;

/// Built-in model geometries.
///
/// `HalfplaneWindow` truncates the upper half-plane to `[0,8] x [0,4]`; the
/// lower edge is the true boundary and the three other window edges are
/// artificial truncation edges. `Square` is the unit square with its full
/// perimeter as boundary. `LShape` is `[0,2]^2` minus the open quadrant
/// `(1,2) x (1,2)`, again with the full perimeter as boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    #[serde(rename = "halfplane")]
    HalfplaneWindow,
    #[serde(rename = "square")]
    Square,
    #[serde(rename = "lshape")]
    LShape,
}

impl Preset {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "halfplane" | "halfplane-window" => Ok(Preset::HalfplaneWindow),
            "square" => Ok(Preset::Square),
            "lshape" => Ok(Preset::LShape),
            other => Err(Error::UnknownPreset(other.into())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::HalfplaneWindow => "halfplane",
            Preset::Square => "square",
            Preset::LShape => "lshape",
        }
    }
}

/// Bounding region of the sampled window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window<T> {
    pub xmin: T,
    pub xmax: T,
    pub ymin: T,
    pub ymax: T,
}

impl<T: Scalar> Window<T> {
    pub fn contains(&self, p: [T; 2], slack: T) -> bool {
        p[0] >= self.xmin - slack
            && p[0] <= self.xmax + slack
            && p[1] >= self.ymin - slack
            && p[1] <= self.ymax + slack
    }
}

/// A sampled domain `(interior, boundary)` with bulk weights on the interior
/// and boundary weights on the true boundary, both extended by zero to the
/// other part so that ball masses can be summed without masking.
#[derive(Debug, Clone)]
pub struct Domain<T: Scalar> {
    pub space: SampledSpace<T>,
    pub interior: Vec<usize>,
    pub boundary: Vec<usize>,
    /// Interior sites lying on artificial truncation edges of the window.
    pub artificial: Vec<usize>,
    /// Boundary weights, full length, zero off the true boundary.
    pub nu: Vec<T>,
    /// Codimension exponent relating bulk and boundary measures.
    pub theta: T,
    /// Uniformity constant of the preset geometry.
    pub uniformity: T,
    pub window: Window<T>,
    pub preset: Option<Preset>,
    /// Grid resolution the domain was sampled at.
    pub h: T,
    dist_bdry: Vec<T>,
    is_interior: Vec<bool>,
    is_boundary: Vec<bool>,
}

impl<T: Scalar> Domain<T> {
    /// Assemble a domain from parts, checking the structural invariants.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        space: SampledSpace<T>,
        interior: Vec<usize>,
        boundary: Vec<usize>,
        artificial: Vec<usize>,
        nu_weights: Vec<T>,
        theta: T,
        uniformity: T,
        window: Window<T>,
        preset: Option<Preset>,
        h: T,
    ) -> Result<Self> {
        let n = space.len();
        if !(theta > T::zero()) {
            return Err(Error::InvalidTheta("theta > 0".into()));
        }
        if boundary.is_empty() {
            return Err(Error::EmptyBoundary);
        }
        if nu_weights.len() != boundary.len() {
            return Err(Error::FieldMismatch(format!(
                "nu weights {} vs boundary sites {}",
                nu_weights.len(),
                boundary.len()
            )));
        }
        let mut is_interior = vec![false; n];
        let mut is_boundary = vec![false; n];
        for &i in &interior {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
            is_interior[i] = true;
        }
        for &i in &boundary {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
            if is_interior[i] {
                return Err(Error::FieldMismatch(format!(
                    "site {i} is both interior and boundary"
                )));
            }
            is_boundary[i] = true;
        }
        if interior.len() + boundary.len() != n {
            return Err(Error::FieldMismatch(
                "interior and boundary must partition the site set".into(),
            ));
        }
        for &i in &artificial {
            if !is_interior[i] {
                return Err(Error::FieldMismatch(format!(
                    "artificial site {i} must be an interior site"
                )));
            }
        }
        // Bulk weights vanish on the boundary, boundary weights are positive.
        for &i in &boundary {
            if space.weight(i) != T::zero() {
                return Err(Error::FieldMismatch(format!(
                    "boundary site {i} carries a bulk weight"
                )));
            }
        }
        for &i in &interior {
            if !(space.weight(i) > T::zero()) {
                return Err(Error::FieldMismatch(format!(
                    "interior site {i} has nonpositive bulk weight"
                )));
            }
        }
        let mut nu = vec![T::zero(); n];
        for (&i, &w) in boundary.iter().zip(&nu_weights) {
            if !(w > T::zero()) {
                return Err(Error::FieldMismatch(format!(
                    "boundary site {i} has nonpositive boundary weight"
                )));
            }
            nu[i] = w;
        }
        let mut dom = Self {
            space,
            interior,
            boundary,
            artificial,
            nu,
            theta,
            uniformity,
            window,
            preset,
            h,
            dist_bdry: Vec::new(),
            is_interior,
            is_boundary,
        };
        dom.dist_bdry = dom.compute_boundary_distances()?;
        Ok(dom)
    }

    fn compute_boundary_distances(&self) -> Result<Vec<T>> {
        let n = self.space.len();
        let mut d = vec![T::zero(); n];
        for &i in &self.interior {
            let di = match (self.preset, self.space.point(i)) {
                // The half-plane distance is known in closed form; using it
                // keeps constructions independent of the boundary sampling.
                (Some(Preset::HalfplaneWindow), Some(p)) => p[1],
                _ => {
                    let mut best = T::infinity();
                    for &b in &self.boundary {
                        let v = self.space.dist(i, b);
                        if v < best {
                            best = v;
                        }
                    }
                    best
                }
            };
            if !(di > T::zero()) {
                return Err(Error::FieldMismatch(format!(
                    "interior site {i} has zero distance to the boundary"
                )));
            }
            d[i] = di;
        }
        Ok(d)
    }

    pub fn is_interior(&self, i: usize) -> bool {
        self.is_interior[i]
    }

    pub fn is_boundary(&self, i: usize) -> bool {
        self.is_boundary[i]
    }

    /// Distance from an interior site to the true boundary.
    pub fn distance_to_boundary(&self, site: usize) -> Result<T> {
        if site >= self.space.len() {
            return Err(Error::IndexOutOfRange { index: site, len: self.space.len() });
        }
        if !self.is_interior[site] {
            return Err(Error::NotInterior(site));
        }
        Ok(self.dist_bdry[site])
    }

    /// Distance from a free planar point to the true boundary.
    pub fn distance_point_to_boundary(&self, p: [T; 2]) -> T {
        match self.preset {
            Some(Preset::HalfplaneWindow) => p[1],
            _ => {
                let mut best = T::infinity();
                for &b in &self.boundary {
                    if let Some(q) = self.space.point(b) {
                        let v = dist2d(p, q);
                        if v < best {
                            best = v;
                        }
                    }
                }
                best
            }
        }
    }

    /// Nearest true-boundary site; ties broken by the smallest index.
    pub fn nearest_boundary_site(&self, site: usize) -> usize {
        let mut best = T::infinity();
        let mut arg = self.boundary[0];
        for &b in &self.boundary {
            let v = self.space.dist(site, b);
            if v < best {
                best = v;
                arg = b;
            }
        }
        arg
    }

    /// Bulk mass of the open ball around a site (boundary sites carry zero
    /// bulk weight, so no masking is needed).
    pub fn mu_ball(&self, center: usize, r: T) -> Result<T> {
        let ids = self.space.ball_query(center, r)?;
        self.space.measure_of(&ids)
    }

    pub fn mu_ball_point(&self, center: [T; 2], r: T) -> Result<T> {
        let ids = self.space.ball_query_point(center, r)?;
        self.space.measure_of(&ids)
    }

    /// Interior sites inside the open ball around a point.
    pub fn interior_ball_point(&self, center: [T; 2], r: T) -> Result<Vec<usize>> {
        Ok(self
            .space
            .ball_query_point(center, r)?
            .into_iter()
            .filter(|&i| self.is_interior[i])
            .collect())
    }

    /// Interior sites inside the open ball around a site.
    pub fn interior_ball(&self, center: usize, r: T) -> Result<Vec<usize>> {
        Ok(self
            .space
            .ball_query(center, r)?
            .into_iter()
            .filter(|&i| self.is_interior[i])
            .collect())
    }

    /// True-boundary sites within the open ball around a boundary site,
    /// ascending. Linear in the boundary size, which is small.
    pub fn nu_ball_sites(&self, center: usize, r: T) -> Vec<usize> {
        self.boundary
            .iter()
            .copied()
            .filter(|&b| self.space.dist(center, b) < r)
            .collect()
    }

    /// Boundary mass of the open ball around a boundary site.
    pub fn nu_ball(&self, center: usize, r: T) -> T {
        self.boundary
            .iter()
            .copied()
            .filter(|&b| self.space.dist(center, b) < r)
            .map(|b| self.nu[b])
            .fold(T::zero(), |a, b| a + b)
    }

    pub fn nu_mass(&self, sites: &[usize]) -> T {
        sites.iter().map(|&i| self.nu[i]).fold(T::zero(), |a, b| a + b)
    }

    pub fn mu_mass(&self, sites: &[usize]) -> T {
        sites.iter().map(|&i| self.space.weight(i)).fold(T::zero(), |a, b| a + b)
    }

    pub fn total_nu(&self) -> T {
        self.nu.iter().copied().fold(T::zero(), |a, b| a + b)
    }

    /// Diameter of the true boundary (largest pairwise site distance).
    pub fn boundary_diameter(&self) -> T {
        let mut best = T::zero();
        for (a, &i) in self.boundary.iter().enumerate() {
            for &j in &self.boundary[a + 1..] {
                let v = self.space.dist(i, j);
                if v > best {
                    best = v;
                }
            }
        }
        best
    }

    /// Whether a planar point lies in the closed domain region.
    pub fn region_contains(&self, p: [T; 2], slack: T) -> bool {
        if !self.window.contains(p, slack) {
            return false;
        }
        match self.preset {
            Some(Preset::LShape) => {
                let one = T::one();
                !(p[0] > one + slack && p[1] > one + slack)
            }
            _ => true,
        }
    }
}

/// Build a preset domain at resolution `h`.
///
/// Interior sites carry trapezoidal cell areas, boundary sites carry
/// trapezoidal arclength shares of the boundary polyline.
pub fn build_domain<T: Scalar>(preset: Preset, h: T, theta: T) -> Result<Domain<T>> {
    if !(theta > T::zero()) {
        return Err(Error::InvalidTheta("theta > 0".into()));
    }
    if !(h > T::zero()) {
        return Err(Error::InvalidResolution(h.f64()));
    }
    match preset {
        Preset::HalfplaneWindow => build_halfplane(h, theta),
        Preset::Square => build_square(h, theta),
        Preset::LShape => build_lshape(h, theta),
    }
}

fn steps<T: Scalar>(extent: f64, h: T) -> Result<usize> {
    let n = extent / h.f64();
    let rounded = n.round();
    if (n - rounded).abs() > 1e-9 || rounded < 1.0 {
        return Err(Error::InvalidResolution(h.f64()));
    }
    Ok(rounded as usize)
}

fn build_halfplane<T: Scalar>(h: T, theta: T) -> Result<Domain<T>> {
    let nx = steps(8.0, h)? + 1;
    let ny = steps(4.0, h)? + 1;
    let mut points = Vec::with_capacity(nx * ny);
    let mut weights = Vec::with_capacity(nx * ny);
    let mut interior = Vec::new();
    let mut boundary = Vec::new();
    let mut artificial = Vec::new();
    let mut nu_weights = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let idx = j * nx + i;
            points.push([T::cast_usize(i) * h, T::cast_usize(j) * h]);
            if j == 0 {
                // True boundary along the lower edge; carries arclength.
                boundary.push(idx);
                let half = if i == 0 || i == nx - 1 { T::cast(0.5) } else { T::one() };
                nu_weights.push(h * half);
                weights.push(T::zero());
            } else {
                interior.push(idx);
                let fx = if i == 0 || i == nx - 1 { T::cast(0.5) } else { T::one() };
                let fy = if j == ny - 1 { T::cast(0.5) } else { T::one() };
                weights.push(h * h * fx * fy);
                if i == 0 || i == nx - 1 || j == ny - 1 {
                    artificial.push(idx);
                }
            }
        }
    }
    let space = SampledSpace::euclidean(points, weights)?;
    Domain::from_parts(
        space,
        interior,
        boundary,
        artificial,
        nu_weights,
        theta,
        T::cast(std::f64::consts::SQRT_2),
        Window { xmin: T::zero(), xmax: T::cast(8.0), ymin: T::zero(), ymax: T::cast(4.0) },
        Some(Preset::HalfplaneWindow),
        h,
    )
}

fn build_square<T: Scalar>(h: T, theta: T) -> Result<Domain<T>> {
    let n = steps(1.0, h)? + 1;
    let mut points = Vec::with_capacity(n * n);
    let mut weights = Vec::with_capacity(n * n);
    let mut interior = Vec::new();
    let mut boundary = Vec::new();
    let mut nu_weights = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let idx = j * n + i;
            points.push([T::cast_usize(i) * h, T::cast_usize(j) * h]);
            let on_edge = i == 0 || i == n - 1 || j == 0 || j == n - 1;
            if on_edge {
                boundary.push(idx);
                // Every perimeter site owns two half-segments of arclength.
                nu_weights.push(h);
                weights.push(T::zero());
            } else {
                interior.push(idx);
                weights.push(h * h);
            }
        }
    }
    let space = SampledSpace::euclidean(points, weights)?;
    Domain::from_parts(
        space,
        interior,
        boundary,
        Vec::new(),
        nu_weights,
        theta,
        T::cast(std::f64::consts::SQRT_2),
        Window { xmin: T::zero(), xmax: T::one(), ymin: T::zero(), ymax: T::one() },
        Some(Preset::Square),
        h,
    )
}

fn build_lshape<T: Scalar>(h: T, theta: T) -> Result<Domain<T>> {
    let n = steps(2.0, h)? + 1;
    let mid = steps(1.0, h)?;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut interior = Vec::new();
    let mut boundary = Vec::new();
    let mut nu_weights = Vec::new();
    // Perimeter: outer edges of [0,2]^2 restricted to the L, plus the two
    // notch edges meeting at the reflex corner (1,1).
    for j in 0..n {
        for i in 0..n {
            if i > mid && j > mid {
                continue; // inside the removed quadrant
            }
            let idx = points.len();
            points.push([T::cast_usize(i) * h, T::cast_usize(j) * h]);
            let on_outer = i == 0 || j == 0 || (i == n - 1 && j <= mid) || (j == n - 1 && i <= mid);
            let on_notch = (i == mid && j >= mid) || (j == mid && i >= mid);
            if on_outer || on_notch {
                boundary.push(idx);
                nu_weights.push(h);
                weights.push(T::zero());
            } else {
                interior.push(idx);
                weights.push(h * h);
            }
        }
    }
    let space = SampledSpace::euclidean(points, weights)?;
    Domain::from_parts(
        space,
        interior,
        boundary,
        Vec::new(),
        nu_weights,
        theta,
        T::cast(4.0),
        Window { xmin: T::zero(), xmax: T::cast(2.0), ymin: T::zero(), ymax: T::cast(2.0) },
        Some(Preset::LShape),
        h,
    )
}

/// One sampled ratio of the codimension comparison.
#[derive(Debug, Clone, Copy)]
pub struct CodimSample<T: Scalar> {
    pub center: usize,
    pub radius: T,
    /// `mu(B cap interior) / (r^theta * nu(B cap boundary))`.
    pub ratio: T,
}

/// Report of the codimension audit.
#[derive(Debug, Clone)]
pub struct CodimReport<T: Scalar> {
    pub samples: Vec<CodimSample<T>>,
    pub min_ratio: T,
    pub max_ratio: T,
    /// Smallest admissible two-sided comparison constant, `>= 1`.
    pub constant: T,
    /// Sampled pairs with an empty boundary ball, skipped.
    pub skipped: Vec<(usize, T)>,
}

/// Audit the codimension relation between bulk and boundary measure over
/// sampled boundary centers and radii.
pub fn check_codimension<T: Scalar>(
    domain: &Domain<T>,
    centers: &[usize],
    radii: &[T],
) -> Result<CodimReport<T>> {
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    let mut min_ratio = T::infinity();
    let mut max_ratio = T::zero();
    for &zeta in centers {
        if !domain.is_boundary(zeta) {
            return Err(Error::NotBoundary(zeta));
        }
        for &r in radii {
            if r <= T::zero() {
                return Err(Error::NonPositiveRadius(r.f64()));
            }
            let nu = domain.nu_ball(zeta, r);
            if !(nu > T::zero()) {
                skipped.push((zeta, r));
                continue;
            }
            let mu = domain.mu_ball(zeta, r)?;
            let ratio = mu / (r.powf(domain.theta) * nu);
            min_ratio = min_ratio.min(ratio);
            max_ratio = max_ratio.max(ratio);
            samples.push(CodimSample { center: zeta, radius: r, ratio });
        }
    }
    let constant = if samples.is_empty() {
        T::one()
    } else {
        max_ratio.max(min_ratio.recip()).max(T::one())
    };
    Ok(CodimReport { samples, min_ratio, max_ratio, constant, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halfplane_boundary_count() {
        let d: Domain<f64> = build_domain(Preset::HalfplaneWindow, 1.0 / 16.0, 1.0).unwrap();
        // one boundary site per grid step along the 8-long lower edge
        assert_eq!(d.boundary.len(), 129);
        assert!(d.artificial.len() > 0);
        assert!((d.total_nu() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn square_halfstep_is_nine_sites() {
        let d: Domain<f64> = build_domain(Preset::Square, 0.5, 1.0).unwrap();
        assert_eq!(d.space.len(), 9);
        assert_eq!(d.boundary.len(), 8);
        assert_eq!(d.interior.len(), 1);
        assert!((d.total_nu() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn lshape_interior_distances_positive() {
        let d: Domain<f64> = build_domain(Preset::LShape, 0.125, 1.0).unwrap();
        for &i in &d.interior {
            assert!(d.distance_to_boundary(i).unwrap() > 0.0);
        }
        assert!((d.total_nu() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_preset_is_usage_error() {
        assert!(matches!(Preset::parse("torus"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn theta_gate() {
        assert!(build_domain::<f64>(Preset::Square, 0.5, 0.0).is_err());
        assert!(build_domain::<f64>(Preset::Square, 0.5, -1.0).is_err());
    }

    #[test]
    fn halfplane_distance_is_height() {
        let d: Domain<f64> = build_domain(Preset::HalfplaneWindow, 0.25, 1.0).unwrap();
        let site = d
            .interior
            .iter()
            .copied()
            .find(|&i| d.space.point(i) == Some([3.0, 0.5]))
            .unwrap();
        assert_eq!(d.distance_to_boundary(site).unwrap(), 0.5);
        let b = d.boundary[0];
        assert!(matches!(d.distance_to_boundary(b), Err(Error::NotInterior(_))));
    }

    #[test]
    fn square_center_distance() {
        let d: Domain<f64> = build_domain(Preset::Square, 0.5, 1.0).unwrap();
        let c = d.interior[0];
        assert_eq!(d.distance_to_boundary(c).unwrap(), 0.5);
    }

    #[test]
    fn lshape_distance_matches_brute_force() {
        let d: Domain<f64> = build_domain(Preset::LShape, 0.125, 1.0).unwrap();
        // site diagonally adjacent to the reflex corner: nearest boundary
        // point is the corner itself
        let diag = d
            .interior
            .iter()
            .copied()
            .find(|&i| d.space.point(i) == Some([0.875, 0.875]))
            .unwrap();
        let brute = |site: usize| {
            d.boundary
                .iter()
                .map(|&b| d.space.dist(site, b))
                .fold(f64::INFINITY, f64::min)
        };
        assert_eq!(d.distance_to_boundary(diag).unwrap(), brute(diag));
        let corner_dist = 0.125 * std::f64::consts::SQRT_2;
        assert!((d.distance_to_boundary(diag).unwrap() - corner_dist).abs() < 1e-12);
        // site beside the vertical notch edge: nearest point is the foot of
        // the perpendicular, which the grid sampling contains as a site
        let beside = d
            .interior
            .iter()
            .copied()
            .find(|&i| d.space.point(i) == Some([0.875, 1.25]))
            .unwrap();
        assert_eq!(d.distance_to_boundary(beside).unwrap(), brute(beside));
        assert!((d.distance_to_boundary(beside).unwrap() - 0.125).abs() < 1e-12);
    }

    #[test]
    fn nearest_boundary_tie_breaks_to_smallest_index() {
        let d: Domain<f64> = build_domain(Preset::Square, 0.5, 1.0).unwrap();
        // the center is equidistant from all four mid-edge sites
        let anchor = d.nearest_boundary_site(d.interior[0]);
        assert_eq!(d.space.point(anchor), Some([0.5, 0.0]));
    }

    fn edge_centers(d: &Domain<f64>, lo: f64, hi: f64, stride: usize) -> Vec<usize> {
        d.boundary
            .iter()
            .copied()
            .filter(|&b| {
                let p = d.space.point(b).unwrap();
                p[0] >= lo && p[0] <= hi
            })
            .step_by(stride)
            .collect()
    }

    #[test]
    fn codimension_near_quarter_pi() {
        let h = 1.0 / 16.0;
        let d: Domain<f64> = build_domain(Preset::HalfplaneWindow, h, 1.0).unwrap();
        let centers = edge_centers(&d, 1.5, 6.5, 8);
        let radii = [4.0 * h, 8.0 * h, 16.0 * h, 0.5, 1.0];
        let rep = check_codimension(&d, &centers, &radii).unwrap();
        assert!(rep.skipped.is_empty());
        // continuum value pi/4; quadrature brings the small radii down
        for s in &rep.samples {
            assert!(s.ratio > 0.6 && s.ratio < 1.0, "ratio {} at r {}", s.ratio, s.radius);
        }
        assert!(rep.constant <= 1.5, "constant {}", rep.constant);
    }

    #[test]
    fn codimension_square_midedge() {
        let h = 1.0 / 32.0;
        let d: Domain<f64> = build_domain(Preset::Square, h, 1.0).unwrap();
        let mid = d
            .boundary
            .iter()
            .copied()
            .find(|&b| d.space.point(b) == Some([0.5, 0.0]))
            .unwrap();
        let rep = check_codimension(&d, &[mid], &[4.0 * h, 8.0 * h]).unwrap();
        for s in &rep.samples {
            assert!((s.ratio - std::f64::consts::FRAC_PI_4).abs() < 0.2, "ratio {}", s.ratio);
        }
    }

    #[test]
    fn codimension_theta_two_drifts_like_inverse_radius() {
        let h = 1.0 / 16.0;
        let d: Domain<f64> = build_domain(Preset::HalfplaneWindow, h, 2.0).unwrap();
        let centers = edge_centers(&d, 3.0, 5.0, 16);
        let radii = [0.25, 0.5, 1.0];
        let rep = check_codimension(&d, &centers, &radii).unwrap();
        // ratio * r should be roughly constant (the theta = 1 value)
        for s in &rep.samples {
            let flat = s.ratio * s.radius;
            assert!((flat - std::f64::consts::FRAC_PI_4).abs() < 0.2, "flattened {flat}");
        }
        // and the raw ratios drift monotonically across the radius grid
        let r25: Vec<f64> =
            rep.samples.iter().filter(|s| s.radius == 0.25).map(|s| s.ratio).collect();
        let r100: Vec<f64> =
            rep.samples.iter().filter(|s| s.radius == 1.0).map(|s| s.ratio).collect();
        assert!(r25.iter().cloned().fold(f64::INFINITY, f64::min)
            > r100.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    }
}

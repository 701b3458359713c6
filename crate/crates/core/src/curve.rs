//! Polyline curves joining boundary points through the interior, with the
//! two-sided uniformity (cigar) checks.

use crate::domain::{Domain, Preset};
use crate::error::{Error, Result};
use crate::scalar::{dist2d, Scalar};

/// An arclength-parameterized polyline with endpoints on the true boundary.
#[derive(Debug, Clone)]
pub struct Curve<T: Scalar> {
    pub vertices: Vec<[T; 2]>,
    /// Cumulative arclength at each vertex; last entry is the total length.
    pub cumlen: Vec<T>,
    pub xi: usize,
    pub zeta: usize,
}

impl<T: Scalar> Curve<T> {
    pub fn from_vertices(vertices: Vec<[T; 2]>, xi: usize, zeta: usize) -> Self {
        let mut cumlen = Vec::with_capacity(vertices.len());
        let mut acc = T::zero();
        cumlen.push(acc);
        for w in vertices.windows(2) {
            acc += dist2d(w[0], w[1]);
            cumlen.push(acc);
        }
        Self { vertices, cumlen, xi, zeta }
    }

    pub fn length(&self) -> T {
        *self.cumlen.last().unwrap()
    }

    /// Point at arclength `s` from the first vertex, clamped to the curve.
    pub fn point_at(&self, s: T) -> [T; 2] {
        if s <= T::zero() {
            return self.vertices[0];
        }
        if s >= self.length() {
            return *self.vertices.last().unwrap();
        }
        let seg = match self
            .cumlen
            .windows(2)
            .position(|w| s >= w[0] && s < w[1])
        {
            Some(k) => k,
            None => self.vertices.len() - 2,
        };
        let t = (s - self.cumlen[seg]) / (self.cumlen[seg + 1] - self.cumlen[seg]);
        let a = self.vertices[seg];
        let b = self.vertices[seg + 1];
        [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
    }

    /// Same trajectory traversed from the far endpoint.
    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self::from_vertices(v, self.zeta, self.xi)
    }
}

/// Measured uniformity ratios of a curve.
#[derive(Debug, Clone, Copy)]
pub struct UniformityCheck<T: Scalar> {
    /// `length / d(xi, zeta)`.
    pub length_ratio: T,
    /// Largest sampled `min(len to either end) / d_Omega(z)`.
    pub cigar_ratio: T,
}

impl<T: Scalar> UniformityCheck<T> {
    pub fn passes(&self, a: T) -> bool {
        let slack = T::cast(1.0 + 1e-9);
        self.length_ratio <= a * slack && self.cigar_ratio <= a * slack
    }
}

/// Evaluate both uniformity conditions along the curve, sampling each
/// segment densely in addition to the vertices.
pub fn check_uniformity<T: Scalar>(
    curve: &Curve<T>,
    domain: &Domain<T>,
    samples_per_segment: usize,
) -> UniformityCheck<T> {
    let total = curve.length();
    let endpoint_dist = dist2d(curve.vertices[0], *curve.vertices.last().unwrap());
    let length_ratio = total / endpoint_dist;
    let mut cigar = T::zero();
    let m = samples_per_segment.max(1);
    for seg in 0..curve.vertices.len() - 1 {
        for q in 0..=m {
            let s = curve.cumlen[seg]
                + (curve.cumlen[seg + 1] - curve.cumlen[seg]) * T::cast_usize(q)
                    / T::cast_usize(m);
            if s <= T::zero() || s >= total {
                continue; // endpoints sit on the boundary
            }
            let z = curve.point_at(s);
            let reach = s.min(total - s);
            let d = domain.distance_point_to_boundary(z);
            if d > T::zero() {
                cigar = cigar.max(reach / d);
            } else {
                cigar = T::infinity();
            }
        }
    }
    UniformityCheck { length_ratio, cigar_ratio: cigar }
}

/// Construct the preset uniform curve between two true-boundary sites.
///
/// Half-plane pairs get the tent through the point above the midpoint at
/// half the separation; the bounded presets route through a deep interior
/// waypoint, which keeps the curve inside the region for opposite-edge
/// pairs (a tent of that height would graze the far boundary).
pub fn uniform_curve<T: Scalar>(
    domain: &Domain<T>,
    xi: usize,
    zeta: usize,
) -> Result<Curve<T>> {
    if xi == zeta {
        return Err(Error::EndpointsCoincide);
    }
    for &e in &[xi, zeta] {
        if !domain.is_boundary(e) {
            return Err(Error::NotBoundary(e));
        }
    }
    let p = domain.space.point(xi).ok_or(Error::NoCoordinates)?;
    let q = domain.space.point(zeta).ok_or(Error::NoCoordinates)?;
    if dist2d(p, q) == T::zero() {
        return Err(Error::EndpointsCoincide);
    }
    let half = T::cast(0.5);
    let vertices = match domain.preset {
        Some(Preset::HalfplaneWindow) => {
            let apex = [(p[0] + q[0]) * half, dist2d(p, q) * half];
            vec![p, apex, q]
        }
        Some(Preset::Square) => {
            let c = [half, half];
            vec![p, c, q]
        }
        Some(Preset::LShape) => {
            let c = [half, half];
            vec![p, c, q]
        }
        None => {
            return Err(Error::CurveNotUniform(
                "no preset curve family for generic domains".into(),
            ))
        }
    };
    let slack = T::cast(1e-9);
    for v in &vertices {
        if !domain.region_contains(*v, slack) {
            return Err(Error::CurveLeavesDomain(v[0].f64(), v[1].f64()));
        }
    }
    let curve = Curve::from_vertices(vertices, xi, zeta);
    let check = check_uniformity(&curve, domain, 64);
    if !check.passes(domain.uniformity) {
        return Err(Error::CurveNotUniform(format!(
            "length ratio {:.3}, cigar ratio {:.3}, allowed {:.3}",
            check.length_ratio.f64(),
            check.cigar_ratio.f64(),
            domain.uniformity.f64()
        )));
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::build_domain;

    fn boundary_site_at(d: &Domain<f64>, p: [f64; 2]) -> usize {
        d.boundary
            .iter()
            .copied()
            .find(|&b| d.space.point(b) == Some(p))
            .unwrap()
    }

    #[test]
    fn halfplane_tent() {
        let d = build_domain(Preset::HalfplaneWindow, 1.0 / 16.0, 1.0).unwrap();
        let xi = boundary_site_at(&d, [0.0, 0.0]);
        let zeta = boundary_site_at(&d, [1.0, 0.0]);
        let c = uniform_curve(&d, xi, zeta).unwrap();
        assert_eq!(c.vertices[1], [0.5, 0.5]);
        assert!((c.length() - std::f64::consts::SQRT_2).abs() < 1e-12);
        let chk = check_uniformity(&c, &d, 64);
        // tent legs sit at 45 degrees: both ratios equal sqrt(2)
        assert!((chk.length_ratio - std::f64::consts::SQRT_2).abs() < 1e-9);
        assert!(chk.cigar_ratio <= std::f64::consts::SQRT_2 * (1.0 + 1e-9));
        assert!(chk.passes(d.uniformity));
    }

    #[test]
    fn adjacent_pair_scales_tent() {
        let h = 1.0 / 16.0;
        let d = build_domain(Preset::HalfplaneWindow, h, 1.0).unwrap();
        let xi = boundary_site_at(&d, [3.0, 0.0]);
        let zeta = boundary_site_at(&d, [3.0 + h, 0.0]);
        let c = uniform_curve(&d, xi, zeta).unwrap();
        assert!(c.length() <= std::f64::consts::SQRT_2 * h + 1e-12);
    }

    #[test]
    fn square_opposite_edges_route_through_center() {
        let d = build_domain(Preset::Square, 0.125, 1.0).unwrap();
        let xi = boundary_site_at(&d, [0.5, 0.0]);
        let zeta = boundary_site_at(&d, [0.5, 1.0]);
        let c = uniform_curve(&d, xi, zeta).unwrap();
        for v in &c.vertices {
            assert!(d.region_contains(*v, 1e-12));
        }
        let chk = check_uniformity(&c, &d, 128);
        assert!(chk.passes(d.uniformity), "cigar {}", chk.cigar_ratio);
    }

    #[test]
    fn coinciding_endpoints_rejected() {
        let d = build_domain(Preset::Square, 0.25, 1.0).unwrap();
        let b = d.boundary[0];
        assert!(matches!(uniform_curve(&d, b, b), Err(Error::EndpointsCoincide)));
    }

    #[test]
    fn interior_endpoint_rejected() {
        let d = build_domain(Preset::Square, 0.25, 1.0).unwrap();
        let b = d.boundary[0];
        let i = d.interior[0];
        assert!(matches!(uniform_curve(&d, i, b), Err(Error::NotBoundary(_))));
    }
}

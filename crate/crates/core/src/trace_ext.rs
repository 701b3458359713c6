//! The extension operator (anchor-average blend through the partition of
//! unity), the trace operator (shrinking ball averages at boundary sites),
//! the roundtrip audit, the chain oscillation estimate, and empirical
//! operator-norm measurements.

use rayon::prelude::*;

use crate::besov::{besov_dyadic, dirichlet_energy, local_lip, BesovParams};
use crate::chain::ConeChain;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::field::{Provenance, ScalarField, Support};
use crate::scalar::Scalar;
use crate::whitney::{WhitneyCover, ANCHOR_DILATION};
use crate::partition::PartitionOfUnity;

/// Discretization of the shrinking-ball limit defining the trace.
#[derive(Debug, Clone)]
pub struct TraceParams<T: Scalar> {
    /// Strictly decreasing radii; the smallest admissible one is used.
    pub radii: Vec<T>,
    /// Minimum interior sample count for a radius to be admissible.
    pub m_min: usize,
    /// Convergence flag threshold on the last two admissible averages.
    pub tol: T,
}

impl<T: Scalar> TraceParams<T> {
    pub fn new(radii: Vec<T>, m_min: usize, tol: T) -> Result<Self> {
        if radii.len() < 2 || radii.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::InvalidParams(
                "trace radii must be strictly decreasing with at least two entries".into(),
            ));
        }
        if radii.last().copied().unwrap() <= T::zero() {
            return Err(Error::InvalidParams("trace radii must be positive".into()));
        }
        Ok(Self { radii, m_min, tol })
    }

    /// Geometric schedule anchored at the resolution: radii from `32h` down
    /// to `2h`, so the probed scales shrink with the grid.
    pub fn for_resolution(h: T) -> Self {
        let radii = [32.0, 16.0, 8.0, 4.0, 2.0]
            .iter()
            .map(|&m| h * T::cast(m))
            .collect();
        Self { radii, m_min: 4, tol: h }
    }
}

/// Trace values with per-site convergence evidence.
#[derive(Debug, Clone)]
pub struct TraceResult<T: Scalar> {
    pub field: ScalarField<T>,
    /// Whether the last two admissible averages agreed within tolerance.
    pub converged: Vec<bool>,
    /// Radius actually used per boundary site, `None` if none admissible.
    pub radius_used: Vec<Option<T>>,
    pub missing: usize,
}

/// Mean of the boundary data over a ball's anchor neighborhood.
fn anchor_average<T: Scalar>(f: &ScalarField<T>, domain: &Domain<T>, u_sites: &[u32]) -> T {
    let mut mass = T::zero();
    let mut sum = T::zero();
    for &s in u_sites {
        let w = domain.nu[s as usize];
        mass += w;
        sum += w * f.value(s as usize);
    }
    sum / mass
}

/// Extend boundary data into the interior: at each site, blend the anchor
/// neighborhood averages of all balls whose doubled ball contains the site,
/// weighted by the partition of unity.
pub fn extend<T: Scalar>(
    f: &ScalarField<T>,
    cover: &WhitneyCover<T>,
    pou: &PartitionOfUnity<T>,
    domain: &Domain<T>,
) -> Result<ScalarField<T>> {
    if f.support != Support::Boundary || f.values.len() != domain.space.len() {
        return Err(Error::FieldMismatch("boundary-supported field required".into()));
    }
    f.validate_on(&domain.boundary)?;
    if cover.balls.iter().any(|b| b.anchor.is_none()) {
        return Err(Error::FieldMismatch("cover lacks boundary anchors".into()));
    }
    if pou.per_site.len() != domain.space.len() {
        return Err(Error::FieldMismatch("partition does not match the domain".into()));
    }
    let averages: Vec<T> = cover
        .balls
        .iter()
        .map(|b| anchor_average(f, domain, &b.u_sites))
        .collect();
    let values: Vec<(usize, T)> = domain
        .interior
        .par_iter()
        .map(|&site| {
            let v = pou.per_site[site]
                .iter()
                .map(|&(id, phi)| averages[id as usize] * phi)
                .fold(T::zero(), |a, b| a + b);
            (site, v)
        })
        .collect();
    let mut out = vec![T::zero(); domain.space.len()];
    for (site, v) in values {
        out[site] = v;
    }
    Ok(ScalarField::new(out, Support::Interior, Provenance::Extension))
}

/// Trace an interior field to the boundary through shrinking ball averages.
///
/// The value is the average at the smallest admissible radius, not an
/// extrapolated limit; the convergence flag records how settled the
/// sequence was.
pub fn trace<T: Scalar>(
    u: &ScalarField<T>,
    domain: &Domain<T>,
    params: &TraceParams<T>,
) -> Result<TraceResult<T>> {
    if u.support != Support::Interior || u.values.len() != domain.space.len() {
        return Err(Error::FieldMismatch("interior-supported field required".into()));
    }
    u.validate_on(&domain.interior)?;
    let rows: Vec<(usize, Option<(T, T, bool)>)> = domain
        .boundary
        .par_iter()
        .map(|&zeta| {
            let mut averages: Vec<(T, T)> = Vec::new();
            for &r in &params.radii {
                let sites = domain.interior_ball(zeta, r).expect("radii validated positive");
                if sites.len() < params.m_min {
                    continue;
                }
                let mass = domain.mu_mass(&sites);
                if !(mass > T::zero()) {
                    continue;
                }
                let mean = sites
                    .iter()
                    .map(|&i| domain.space.weight(i) * u.value(i))
                    .fold(T::zero(), |a, b| a + b)
                    / mass;
                averages.push((r, mean));
            }
            let out = averages.last().map(|&(r, a)| {
                let converged = if averages.len() >= 2 {
                    let prev = averages[averages.len() - 2].1;
                    (a - prev).abs() <= params.tol
                } else {
                    false
                };
                (r, a, converged)
            });
            (zeta, out)
        })
        .collect();
    let n = domain.space.len();
    let mut values = vec![T::zero(); n];
    let mut converged = vec![false; n];
    let mut radius_used = vec![None; n];
    let mut missing = 0usize;
    for (zeta, row) in rows {
        match row {
            Some((r, a, c)) => {
                values[zeta] = a;
                converged[zeta] = c;
                radius_used[zeta] = Some(r);
            }
            None => missing += 1,
        }
    }
    Ok(TraceResult {
        field: ScalarField::new(values, Support::Boundary, Provenance::Trace),
        converged,
        radius_used,
        missing,
    })
}

/// Errors of tracing back an extension against the original boundary data.
#[derive(Debug, Clone)]
pub struct RoundtripReport<T: Scalar> {
    pub sup_err: T,
    pub lp_err: T,
    /// Per boundary site absolute error, indexed like the site array.
    pub per_site: Vec<(usize, T)>,
    /// Balls flagged during anchoring, excluded from acceptance sums.
    pub n_flagged: usize,
    /// Boundary sites with no admissible trace radius.
    pub n_missing: usize,
}

/// Roundtrip audit: extend, trace back, compare.
pub fn roundtrip_error<T: Scalar>(
    f: &ScalarField<T>,
    domain: &Domain<T>,
    cover: &WhitneyCover<T>,
    pou: &PartitionOfUnity<T>,
    params: &TraceParams<T>,
    p: T,
) -> Result<RoundtripReport<T>> {
    let extended = extend(f, cover, pou, domain)?;
    let traced = trace(&extended, domain, params)?;
    // Neighborhoods centered at a boundary anchor always contain the anchor,
    // so widening only triggers on degenerate inputs; the count carries
    // through to the report either way.
    let n_flagged = cover.balls.iter().filter(|b| b.u_widened).count();
    let mut per_site = Vec::with_capacity(domain.boundary.len());
    let mut sup = T::zero();
    let mut lp_acc = T::zero();
    let mut nu_total = T::zero();
    let mut n_missing = 0usize;
    for &zeta in &domain.boundary {
        if traced.radius_used[zeta].is_none() {
            n_missing += 1;
            continue;
        }
        let err = (traced.field.value(zeta) - f.value(zeta)).abs();
        per_site.push((zeta, err));
        sup = sup.max(err);
        lp_acc += domain.nu[zeta] * err.powf(p);
        nu_total += domain.nu[zeta];
    }
    let lp_err = (lp_acc / nu_total).powf(p.recip());
    Ok(RoundtripReport { sup_err: sup, lp_err, per_site, n_flagged, n_missing })
}

/// Both sides of the telescoped oscillation estimate along one chain.
#[derive(Debug, Clone, Copy)]
pub struct OscillationEstimate<T: Scalar> {
    /// Difference of the traced values at the two endpoints.
    pub lhs: T,
    /// Calibrated chain bound.
    pub rhs: T,
    pub ratio: T,
}

/// Evaluate the chain oscillation bound for a traced field.
///
/// For `p > 1` the bound splits into a gradient sum and a radius sum by
/// Hölder's inequality; for `p = 1` it degenerates to the plain weighted
/// gradient sum, which forces the codimension exponent below one.
#[allow(clippy::too_many_arguments)]
pub fn chain_oscillation_estimate<T: Scalar>(
    u: &ScalarField<T>,
    grad: &ScalarField<T>,
    chain: &ConeChain<T>,
    domain: &Domain<T>,
    trace_params: &TraceParams<T>,
    p: T,
    epsilon: T,
    calibration: T,
) -> Result<OscillationEstimate<T>> {
    let theta = domain.theta;
    if !(theta + epsilon < p) {
        return Err(Error::InvalidParams(format!(
            "need theta + epsilon < p, got {} + {} vs {}",
            theta.f64(),
            epsilon.f64(),
            p.f64()
        )));
    }
    if chain.balls.is_empty() {
        return Err(Error::EmptyBall { what: "cone chain has no balls".into() });
    }
    let traced = trace(u, domain, trace_params)?;
    let endpoints = chain_endpoints(chain, domain)?;
    let lhs = (traced.field.value(endpoints.0) - traced.field.value(endpoints.1)).abs();

    let four_tau = T::cast(4.0) * chain.tau;
    let mut grad_sum = T::zero();
    let mut radius_sum = T::zero();
    for b in &chain.balls {
        let sites = domain.interior_ball_point(b.center, four_tau * b.radius)?;
        let mass = domain.mu_mass(&sites);
        if !(mass > T::zero()) {
            return Err(Error::EmptyBall {
                what: format!("dilated chain ball k={}", b.k),
            });
        }
        let mean_gp = sites
            .iter()
            .map(|&i| domain.space.weight(i) * grad.value(i).abs().powf(p))
            .fold(T::zero(), |a, b| a + b)
            / mass;
        if p > T::one() {
            grad_sum += b.radius.powf(theta + epsilon) * mean_gp;
            radius_sum += b.radius.powf((p - theta - epsilon) / (p - T::one()));
        } else {
            grad_sum += b.radius * mean_gp;
        }
    }
    let rhs = if p > T::one() {
        calibration * grad_sum.powf(p.recip()) * radius_sum.powf(T::one() - p.recip())
    } else {
        calibration * grad_sum
    };
    let ratio = if rhs > T::zero() { lhs / rhs } else { T::zero() };
    Ok(OscillationEstimate { lhs, rhs, ratio })
}

/// Boundary sites the chain runs between: nearest boundary sites to the
/// limits of the two sides.
fn chain_endpoints<T: Scalar>(chain: &ConeChain<T>, domain: &Domain<T>) -> Result<(usize, usize)> {
    let toward_start = chain.balls.last().unwrap();
    let toward_end = chain.balls.first().unwrap();
    let find = |p: [T; 2]| -> usize {
        let mut best = T::infinity();
        let mut arg = domain.boundary[0];
        for &b in &domain.boundary {
            if let Some(q) = domain.space.point(b) {
                let v = crate::scalar::dist2d(p, q);
                if v < best {
                    best = v;
                    arg = b;
                }
            }
        }
        arg
    };
    Ok((find(toward_start.center), find(toward_end.center)))
}

/// Per-ball locality constant of the extension: bulk p-mass of the
/// extension on each ball against the scaled boundary p-mass on the
/// enlarged anchor neighborhood.
pub fn locality_constant<T: Scalar>(
    f: &ScalarField<T>,
    extension: &ScalarField<T>,
    cover: &WhitneyCover<T>,
    domain: &Domain<T>,
    p: T,
) -> Result<T> {
    let theta = domain.theta;
    let mut worst = T::zero();
    for b in &cover.balls {
        let sites = domain.interior_ball(b.center, b.radius)?;
        let num = sites
            .iter()
            .map(|&i| domain.space.weight(i) * extension.value(i).abs().powf(p))
            .fold(T::zero(), |a, v| a + v);
        let den_mass = b
            .ustar_sites
            .iter()
            .map(|&s| domain.nu[s as usize] * f.value(s as usize).abs().powf(p))
            .fold(T::zero(), |a, v| a + v);
        let den = T::cast(2.0).powi(b.level).powf(theta) * den_mass;
        if den > T::zero() {
            worst = worst.max(num / den);
        }
    }
    Ok(worst)
}

/// Layer constant of the extension: bulk p-mass on boundary-centered balls
/// against the scaled boundary p-mass on the dilated boundary balls.
pub fn layer_constant<T: Scalar>(
    f: &ScalarField<T>,
    extension: &ScalarField<T>,
    domain: &Domain<T>,
    centers: &[usize],
    radii: &[T],
    p: T,
) -> Result<T> {
    let theta = domain.theta;
    let dilation = T::cast(ANCHOR_DILATION);
    let mut worst = T::zero();
    for &zeta in centers {
        for &r in radii {
            let sites = domain.interior_ball(zeta, r)?;
            let num = sites
                .iter()
                .map(|&i| domain.space.weight(i) * extension.value(i).abs().powf(p))
                .fold(T::zero(), |a, v| a + v);
            let den_mass = domain
                .nu_ball_sites(zeta, dilation * r)
                .iter()
                .map(|&s| domain.nu[s] * f.value(s).abs().powf(p))
                .fold(T::zero(), |a, v| a + v);
            let den = r.powf(theta) * den_mass;
            if den > T::zero() {
                worst = worst.max(num / den);
            }
        }
    }
    Ok(worst)
}

/// Ratio data for one test function in an operator-norm sweep.
#[derive(Debug, Clone)]
pub struct FunctionRatio<T: Scalar> {
    pub name: String,
    pub input_norm: T,
    pub output_norm: T,
    pub ratio: T,
}

/// Empirical operator norm over a family of test functions.
#[derive(Debug, Clone)]
pub struct OperatorNormReport<T: Scalar> {
    pub per_function: Vec<FunctionRatio<T>>,
    pub k_max: T,
}

impl<T: Scalar> OperatorNormReport<T> {
    fn from_rows(per_function: Vec<FunctionRatio<T>>) -> Self {
        let k_max = per_function
            .iter()
            .map(|r| r.ratio)
            .fold(T::zero(), |a, b| a.max(b));
        Self { per_function, k_max }
    }
}

/// Extension-side empirical norm: Dirichlet energy of the extension over
/// the boundary seminorm of the datum, maximized over the family.
pub fn extension_norms<T: Scalar>(
    family: &[(String, ScalarField<T>)],
    domain: &Domain<T>,
    cover: &WhitneyCover<T>,
    pou: &PartitionOfUnity<T>,
    params: &BesovParams<T>,
) -> Result<OperatorNormReport<T>> {
    let rho = T::cast(2.0) * domain.h;
    let mut rows = Vec::new();
    for (name, f) in family {
        let input = besov_dyadic(f, domain, params)?.root;
        if !(input > T::zero()) {
            continue; // constants have zero seminorm and no ratio
        }
        let extension = extend(f, cover, pou, domain)?;
        let grad = local_lip(&extension, domain, rho)?;
        let output = dirichlet_energy(&grad, domain, params.p)?;
        rows.push(FunctionRatio {
            name: name.clone(),
            input_norm: input,
            output_norm: output,
            ratio: output / input,
        });
    }
    Ok(OperatorNormReport::from_rows(rows))
}

/// Trace-side empirical norm: boundary seminorm of the trace over the
/// Dirichlet energy of the field, maximized over the family.
pub fn trace_norms<T: Scalar>(
    family: &[(String, ScalarField<T>)],
    domain: &Domain<T>,
    trace_params: &TraceParams<T>,
    params: &BesovParams<T>,
) -> Result<OperatorNormReport<T>> {
    let rho = T::cast(2.0) * domain.h;
    let mut rows = Vec::new();
    for (name, u) in family {
        let grad = local_lip(u, domain, rho)?;
        let input = dirichlet_energy(&grad, domain, params.p)?;
        if !(input > T::zero()) {
            continue;
        }
        let traced = trace(u, domain, trace_params)?;
        let output = besov_dyadic(&traced.field, domain, params)?.root;
        rows.push(FunctionRatio {
            name: name.clone(),
            input_norm: input,
            output_norm: output,
            ratio: output / input,
        });
    }
    Ok(OperatorNormReport::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{build_domain, Preset};
    use crate::partition::build_partition;
    use crate::whitney::{boundary_anchors, build_whitney};

    struct Pipeline {
        domain: Domain<f64>,
        cover: WhitneyCover<f64>,
        pou: PartitionOfUnity<f64>,
    }

    fn pipeline(preset: Preset, h: f64) -> Pipeline {
        let domain = build_domain(preset, h, 1.0).unwrap();
        let mut cover = build_whitney(&domain).unwrap();
        boundary_anchors(&mut cover, &domain).unwrap();
        let pou = build_partition(&cover, &domain).unwrap();
        Pipeline { domain, cover, pou }
    }

    fn boundary_field(d: &Domain<f64>, f: impl Fn(f64) -> f64) -> ScalarField<f64> {
        ScalarField::from_fn(d.space.len(), &d.boundary, Support::Boundary, |i| {
            f(d.space.point(i).unwrap()[0])
        })
    }

    fn interior_field(d: &Domain<f64>, f: impl Fn([f64; 2]) -> f64) -> ScalarField<f64> {
        ScalarField::from_fn(d.space.len(), &d.interior, Support::Interior, |i| {
            f(d.space.point(i).unwrap())
        })
    }

    #[test]
    fn extension_preserves_constants() {
        let pl = pipeline(Preset::HalfplaneWindow, 1.0 / 8.0);
        let f = boundary_field(&pl.domain, |_| 2.718281828);
        let ext = extend(&f, &pl.cover, &pl.pou, &pl.domain).unwrap();
        for &i in &pl.domain.interior {
            assert!((ext.value(i) - 2.718281828).abs() <= 1e-12);
        }
    }

    #[test]
    fn extension_is_linear() {
        let pl = pipeline(Preset::HalfplaneWindow, 1.0 / 8.0);
        let f = boundary_field(&pl.domain, |x| (x * 0.9).sin());
        let g = boundary_field(&pl.domain, |x| (x - 3.0).abs());
        let combo = f.linear_combination(1.75, &g, -0.5).unwrap();
        let ec = extend(&combo, &pl.cover, &pl.pou, &pl.domain).unwrap();
        let ef = extend(&f, &pl.cover, &pl.pou, &pl.domain).unwrap();
        let eg = extend(&g, &pl.cover, &pl.pou, &pl.domain).unwrap();
        for &i in &pl.domain.interior {
            let direct = 1.75 * ef.value(i) - 0.5 * eg.value(i);
            assert!((ec.value(i) - direct).abs() <= 1e-12);
        }
    }

    #[test]
    fn extension_of_coordinate_tracks_coordinate_near_boundary() {
        let pl = pipeline(Preset::HalfplaneWindow, 1.0 / 16.0);
        let f = boundary_field(&pl.domain, |x| x);
        let ext = extend(&f, &pl.cover, &pl.pou, &pl.domain).unwrap();
        for &i in &pl.domain.interior {
            let p = pl.domain.space.point(i).unwrap();
            if p[0] < 1.0 || p[0] > 7.0 || p[1] > 1.0 {
                continue; // window edges and far field are not at stake
            }
            let err = (ext.value(i) - p[0]).abs();
            assert!(
                err <= 0.75 * p[1] + 2.0 * pl.domain.h,
                "err {err} at ({}, {})",
                p[0],
                p[1]
            );
        }
    }

    #[test]
    fn trace_of_constant_converges() {
        let d = build_domain(Preset::HalfplaneWindow, 1.0 / 8.0, 1.0).unwrap();
        let u = interior_field(&d, |_| -4.25);
        let params = TraceParams::for_resolution(d.h);
        let tr = trace(&u, &d, &params).unwrap();
        assert_eq!(tr.missing, 0);
        for &z in &d.boundary {
            assert!((tr.field.value(z) + 4.25).abs() <= 1e-12);
            assert!(tr.converged[z]);
        }
    }

    #[test]
    fn trace_of_coordinate_recovers_position() {
        let d = build_domain(Preset::HalfplaneWindow, 1.0 / 16.0, 1.0).unwrap();
        let u = interior_field(&d, |p| p[0]);
        let params = TraceParams::for_resolution(d.h);
        let tr = trace(&u, &d, &params).unwrap();
        for &z in &d.boundary {
            let x = d.space.point(z).unwrap()[0];
            if !(1.0..=7.0).contains(&x) {
                continue;
            }
            // half-disk average of the coordinate is the center coordinate
            assert!((tr.field.value(z) - x).abs() <= 3.0 * d.h, "at x={x}");
        }
    }

    #[test]
    fn trace_of_height_shrinks_with_schedule() {
        let d = build_domain(Preset::HalfplaneWindow, 1.0 / 16.0, 1.0).unwrap();
        let u = interior_field(&d, |p| p[1]);
        let z = d
            .boundary
            .iter()
            .copied()
            .find(|&b| d.space.point(b) == Some([4.0, 0.0]))
            .unwrap();
        let value_at = |r_lo: f64| {
            let radii: Vec<f64> = [8.0, 4.0, 2.0, 1.0]
                .iter()
                .map(|&m| m * r_lo)
                .filter(|&r| r >= 2.0 * d.h)
                .collect();
            let params = TraceParams::new(radii, 4, d.h).unwrap();
            let tr = trace(&u, &d, &params).unwrap();
            (tr.field.value(z), tr.radius_used[z].unwrap())
        };
        let (coarse, rc) = value_at(16.0 * d.h);
        let (fine, rf) = value_at(2.0 * d.h);
        assert!(rf < rc);
        assert!(fine < coarse, "half-disk height average must shrink");
        // continuum half-disk average of the height is 4r/(3 pi)
        let c = 4.0 / (3.0 * std::f64::consts::PI);
        assert!((fine / rf - c).abs() <= 0.2, "ratio {}", fine / rf);
    }

    #[test]
    fn roundtrip_on_constant_is_exact() {
        let pl = pipeline(Preset::HalfplaneWindow, 1.0 / 8.0);
        let f = boundary_field(&pl.domain, |_| 1.5);
        let params = TraceParams::for_resolution(pl.domain.h);
        let rep = roundtrip_error(&f, &pl.domain, &pl.cover, &pl.pou, &params, 2.0).unwrap();
        assert!(rep.sup_err <= 1e-9, "sup {}", rep.sup_err);
        assert_eq!(rep.n_flagged, 0);
        assert_eq!(rep.n_missing, 0);
    }

    #[test]
    fn roundtrip_error_halves_under_refinement() {
        let sup_at = |h: f64| {
            let pl = pipeline(Preset::HalfplaneWindow, h);
            let f = boundary_field(&pl.domain, |x| x / 8.0);
            let params = TraceParams::for_resolution(pl.domain.h);
            roundtrip_error(&f, &pl.domain, &pl.cover, &pl.pou, &params, 2.0)
                .unwrap()
                .sup_err
        };
        let coarse = sup_at(1.0 / 8.0);
        let fine = sup_at(1.0 / 16.0);
        assert!(
            fine * 1.5 <= coarse,
            "coarse {coarse} fine {fine}: refinement gain below 1.5"
        );
    }

    #[test]
    fn roundtrip_lp_error_shrinks_on_cosine() {
        let lp_at = |h: f64| {
            let pl = pipeline(Preset::HalfplaneWindow, h);
            let f = boundary_field(&pl.domain, |x| (2.0 * std::f64::consts::PI * x).cos());
            let params = TraceParams::for_resolution(pl.domain.h);
            roundtrip_error(&f, &pl.domain, &pl.cover, &pl.pou, &params, 2.0)
                .unwrap()
                .lp_err
        };
        assert!(lp_at(1.0 / 16.0) < lp_at(1.0 / 8.0));
    }

    #[test]
    fn roundtrip_argmax_stable_under_scaling() {
        let pl = pipeline(Preset::HalfplaneWindow, 1.0 / 8.0);
        let f = boundary_field(&pl.domain, |x| (2.0 * std::f64::consts::PI * x / 8.0).sin());
        let params = TraceParams::for_resolution(pl.domain.h);
        let argmax = |field: &ScalarField<f64>| {
            let rep =
                roundtrip_error(field, &pl.domain, &pl.cover, &pl.pou, &params, 2.0).unwrap();
            rep.per_site
                .iter()
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .map(|&(s, _)| s)
                .unwrap()
        };
        assert_eq!(argmax(&f), argmax(&f.scaled(5.0)));
    }

    #[test]
    fn operator_ratios_scale_invariant() {
        let pl = pipeline(Preset::HalfplaneWindow, 1.0 / 8.0);
        let params = BesovParams::trace_space(&pl.domain, 2.0).unwrap();
        let f = boundary_field(&pl.domain, |x| (2.0 * std::f64::consts::PI * x / 8.0).cos());
        let fam1 = vec![("cos".to_string(), f.clone())];
        let fam5 = vec![("cos5".to_string(), f.scaled(5.0))];
        let r1 = extension_norms(&fam1, &pl.domain, &pl.cover, &pl.pou, &params).unwrap();
        let r5 = extension_norms(&fam5, &pl.domain, &pl.cover, &pl.pou, &params).unwrap();
        assert!(r1.k_max > 0.0 && r1.k_max.is_finite());
        assert!((r1.k_max - r5.k_max).abs() <= 1e-10 * r1.k_max);
    }

    #[test]
    fn single_mode_norms_are_finite_positive() {
        let pl = pipeline(Preset::HalfplaneWindow, 1.0 / 8.0);
        let params = BesovParams::trace_space(&pl.domain, 2.0).unwrap();
        let trace_params = TraceParams::for_resolution(pl.domain.h);
        let f = boundary_field(&pl.domain, |x| (2.0 * std::f64::consts::PI * x / 8.0).cos());
        let e = extension_norms(
            &[("cos".into(), f)],
            &pl.domain,
            &pl.cover,
            &pl.pou,
            &params,
        )
        .unwrap();
        let u = interior_field(&pl.domain, |p| {
            let w = 2.0 * std::f64::consts::PI / 8.0;
            (w * p[0]).cos() * (-w * p[1]).exp()
        });
        let t = trace_norms(&[("mode".into(), u)], &pl.domain, &trace_params, &params).unwrap();
        assert!(e.k_max.is_finite() && e.k_max > 0.0);
        assert!(t.k_max.is_finite() && t.k_max > 0.0);
    }
}

//! Boundary smoothness seminorms in three equivalent forms, the local
//! Lipschitz gradient surrogate, the interior Dirichlet energy, and an
//! empirical Poincaré ratio check.

use rayon::prelude::*;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::field::{Provenance, ScalarField, Support};
use crate::scalar::Scalar;

/// Parameters of the smoothness seminorm.
#[derive(Debug, Clone, Copy)]
pub struct BesovParams<T: Scalar> {
    /// Smoothness exponent.
    pub alpha: T,
    /// Integrability exponent, `>= 1`.
    pub p: T,
    /// Secondary exponent; only `q == p` is implemented.
    pub q: T,
    /// Radius base of the dyadic form: level `l` uses balls of radius
    /// `base * 2^l`. The equivalence holds for every positive base.
    pub base: T,
    pub l_min: i32,
    pub l_max: i32,
}

impl<T: Scalar> BesovParams<T> {
    pub fn new(alpha: T, p: T, base: T, domain: &Domain<T>) -> Result<Self> {
        if !(p >= T::one()) {
            return Err(Error::InvalidParams(format!("p >= 1 required, got {p}")));
        }
        if !(alpha >= T::zero()) {
            return Err(Error::InvalidParams(format!("alpha >= 0 required, got {alpha}")));
        }
        if !(base > T::zero()) {
            return Err(Error::InvalidParams(format!("positive base required, got {base}")));
        }
        // Scales below the sample spacing hold no pairs; scales above the
        // diameter are saturated. One level of headroom on top.
        let l_min = domain.h.log2().ceil().to_i32().unwrap();
        let l_max = domain.boundary_diameter().log2().ceil().to_i32().unwrap() + 1;
        Ok(Self { alpha, p, q: p, base, l_min, l_max })
    }

    /// Parameters of the trace-space seminorm for integrability `p`:
    /// the smoothness is one minus the codimension over `p`.
    pub fn trace_space(domain: &Domain<T>, p: T) -> Result<Self> {
        let alpha = T::one() - domain.theta / p;
        if !(alpha > T::zero()) {
            return Err(Error::InvalidParams(
                "trace smoothness requires theta < p".into(),
            ));
        }
        Self::new(alpha, p, T::one(), domain)
    }
}

/// A computed seminorm: the p-th power, its root, and the level breakdown
/// when the form has one.
#[derive(Debug, Clone)]
pub struct BesovValue<T: Scalar> {
    pub power: T,
    pub root: T,
    pub per_level: Vec<(i32, T)>,
    pub skipped: usize,
}

fn require_boundary_field<T: Scalar>(f: &ScalarField<T>, domain: &Domain<T>) -> Result<()> {
    if f.support != Support::Boundary || f.values.len() != domain.space.len() {
        return Err(Error::FieldMismatch("boundary-supported field required".into()));
    }
    f.validate_on(&domain.boundary)
}

/// Dyadic-level form: over each level `l`, boundary-average the p-th power
/// of increments within balls of radius `base * 2^l` and weight the level by
/// `2^(-l alpha p)`.
pub fn besov_dyadic<T: Scalar>(
    f: &ScalarField<T>,
    domain: &Domain<T>,
    params: &BesovParams<T>,
) -> Result<BesovValue<T>> {
    require_boundary_field(f, domain)?;
    let p = params.p;
    let ap = params.alpha * p;
    let mut per_level = Vec::new();
    let mut power = T::zero();
    let skipped = 0usize;
    for l in params.l_min..=params.l_max {
        let radius = params.base * T::cast(2.0).powi(l);
        let terms: Vec<T> = domain
            .boundary
            .par_iter()
            .map(|&y| {
                let ball = domain.nu_ball_sites(y, radius);
                let mass: T = ball.iter().map(|&x| domain.nu[x]).fold(T::zero(), |a, b| a + b);
                if !(mass > T::zero()) {
                    return T::zero(); // cannot happen: the center carries mass
                }
                let fy = f.value(y);
                let sum: T = ball
                    .iter()
                    .map(|&x| domain.nu[x] * (fy - f.value(x)).abs().powf(p))
                    .fold(T::zero(), |a, b| a + b);
                domain.nu[y] * sum / mass
            })
            .collect();
        let level_sum: T = terms.into_iter().fold(T::zero(), |a, b| a + b);
        let weighted = T::cast(2.0).powf(-T::cast(l as f64) * ap) * level_sum;
        per_level.push((l, weighted));
        power += weighted;
    }
    Ok(BesovValue { power, root: power.powf(p.recip()), per_level, skipped })
}

/// Pairwise form: sum over ordered pairs of distinct boundary sites of the
/// p-th power of the increment, divided by the distance to the `alpha p`
/// and the boundary mass of the ball reaching from one site to the other.
/// The diagonal is excluded: sampled sites are atoms, and the continuum
/// diagonal carries no mass.
pub fn besov_double_integral<T: Scalar>(
    f: &ScalarField<T>,
    domain: &Domain<T>,
    params: &BesovParams<T>,
) -> Result<BesovValue<T>> {
    require_boundary_field(f, domain)?;
    let p = params.p;
    let ap = params.alpha * p;
    // duplicate boundary sites make the pair kernel singular
    for (a, &i) in domain.boundary.iter().enumerate() {
        for &j in &domain.boundary[a + 1..] {
            if domain.space.dist(i, j) == T::zero() {
                return Err(Error::DuplicateBoundarySites { i, j });
            }
        }
    }
    let terms: Vec<T> = domain
        .boundary
        .par_iter()
        .map(|&y| {
            let fy = f.value(y);
            let mut acc = T::zero();
            for &x in &domain.boundary {
                if x == y {
                    continue;
                }
                let d = domain.space.dist(y, x);
                let ball_mass = domain.nu_ball(y, d);
                acc += domain.nu[y] * domain.nu[x] * (fy - f.value(x)).abs().powf(p)
                    / (d.powf(ap) * ball_mass);
            }
            acc
        })
        .collect();
    let power: T = terms.into_iter().fold(T::zero(), |a, b| a + b);
    Ok(BesovValue { power, root: power.powf(p.recip()), per_level: Vec::new(), skipped: 0 })
}

/// Logarithmic radius grid spanning the resolved scales of the boundary.
pub fn log_radius_grid<T: Scalar>(domain: &Domain<T>, per_octave: usize) -> Vec<T> {
    let lo = domain.h;
    let hi = domain.boundary_diameter();
    let octaves = (hi / lo).log2().ceil().f64() as usize;
    let n = (octaves * per_octave).max(2);
    let ratio = (hi / lo).powf(T::cast_usize(n).recip());
    let mut grid = Vec::with_capacity(n + 1);
    let mut r = lo;
    for _ in 0..=n {
        grid.push(r);
        r = r * ratio;
    }
    grid
}

/// Continuous-scale form: log-trapezoid quadrature of the outer scale
/// integral of the definition over the given radius grid.
pub fn besov_continuous<T: Scalar>(
    f: &ScalarField<T>,
    domain: &Domain<T>,
    params: &BesovParams<T>,
    r_grid: &[T],
) -> Result<BesovValue<T>> {
    require_boundary_field(f, domain)?;
    if r_grid.len() < 2 || r_grid.windows(2).any(|w| !(w[1] > w[0])) || r_grid[0] <= T::zero() {
        return Err(Error::InvalidParams(
            "radius grid must be positive, sorted, with at least two nodes".into(),
        ));
    }
    let p = params.p;
    let ap = params.alpha * p;
    // integrand of the dr/r integral at a fixed scale
    let g_at = |radius: T| -> T {
        let terms: Vec<T> = domain
            .boundary
            .par_iter()
            .map(|&y| {
                let ball = domain.nu_ball_sites(y, radius);
                let mass: T = ball.iter().map(|&x| domain.nu[x]).fold(T::zero(), |a, b| a + b);
                if !(mass > T::zero()) {
                    return T::zero();
                }
                let fy = f.value(y);
                let sum: T = ball
                    .iter()
                    .map(|&x| domain.nu[x] * (fy - f.value(x)).abs().powf(p))
                    .fold(T::zero(), |a, b| a + b);
                domain.nu[y] * sum / mass
            })
            .collect();
        terms.into_iter().fold(T::zero(), |a, b| a + b) * radius.powf(-ap)
    };
    let values: Vec<T> = r_grid.iter().map(|&r| g_at(r)).collect();
    let mut power = T::zero();
    for w in r_grid.windows(2).zip(values.windows(2)) {
        let (rs, gs) = w;
        let dlog = (rs[1] / rs[0]).ln();
        power += (gs[0] + gs[1]) * T::cast(0.5) * dlog;
    }
    Ok(BesovValue { power, root: power.powf(p.recip()), per_level: Vec::new(), skipped: 0 })
}

/// Local Lipschitz gradient surrogate: at each interior site, the largest
/// difference quotient against interior neighbors within `rho`.
pub fn local_lip<T: Scalar>(
    u: &ScalarField<T>,
    domain: &Domain<T>,
    rho: T,
) -> Result<ScalarField<T>> {
    if u.support != Support::Interior || u.values.len() != domain.space.len() {
        return Err(Error::FieldMismatch("interior-supported field required".into()));
    }
    u.validate_on(&domain.interior)?;
    if rho < T::cast(2.0) * domain.h {
        return Err(Error::InvalidParams(format!(
            "stencil radius {} below twice the resolution {}",
            rho.f64(),
            domain.h.f64()
        )));
    }
    let values: Vec<(usize, T)> = domain
        .interior
        .par_iter()
        .map(|&i| {
            let ui = u.value(i);
            let mut best = T::zero();
            for j in domain.interior_ball(i, rho).expect("positive stencil radius") {
                if j == i {
                    continue;
                }
                let d = domain.space.dist(i, j);
                if d > T::zero() {
                    best = best.max((u.value(j) - ui).abs() / d);
                }
            }
            (i, best)
        })
        .collect();
    let mut out = vec![T::zero(); domain.space.len()];
    for (i, v) in values {
        out[i] = v;
    }
    Ok(ScalarField::new(out, Support::Interior, Provenance::GradientSurrogate))
}

/// Interior p-energy of a gradient surrogate field.
pub fn dirichlet_energy<T: Scalar>(
    grad: &ScalarField<T>,
    domain: &Domain<T>,
    p: T,
) -> Result<T> {
    if grad.support != Support::Interior || grad.values.len() != domain.space.len() {
        return Err(Error::FieldMismatch("interior-supported field required".into()));
    }
    let sum: T = domain
        .interior
        .iter()
        .map(|&i| domain.space.weight(i) * grad.value(i).abs().powf(p))
        .fold(T::zero(), |a, b| a + b);
    Ok(sum.powf(p.recip()))
}

/// One sampled ball of the Poincaré check.
#[derive(Debug, Clone, Copy)]
pub struct PoincareSample<T: Scalar> {
    pub center: usize,
    pub radius: T,
    pub ratio: T,
}

#[derive(Debug, Clone)]
pub struct PoincareReport<T: Scalar> {
    pub samples: Vec<PoincareSample<T>>,
    pub worst_ratio: T,
    /// Balls skipped because the local gradient mass vanished.
    pub skipped: usize,
}

/// Empirical Poincaré ratio over sampled balls: mean oscillation of `u` on
/// the ball against radius times the p-mean of the gradient surrogate on
/// the dilated ball.
pub fn check_poincare<T: Scalar>(
    domain: &Domain<T>,
    u: &ScalarField<T>,
    grad: &ScalarField<T>,
    p: T,
    lambda: T,
    balls: &[(usize, T)],
) -> Result<PoincareReport<T>> {
    let mut samples = Vec::new();
    let mut skipped = 0usize;
    let mut worst = T::zero();
    for &(center, radius) in balls {
        let ids = domain.interior_ball(center, radius)?;
        let mass = domain.mu_mass(&ids);
        if !(mass > T::zero()) {
            skipped += 1;
            continue;
        }
        let mean: T = ids
            .iter()
            .map(|&i| domain.space.weight(i) * u.value(i))
            .fold(T::zero(), |a, b| a + b)
            / mass;
        let osc: T = ids
            .iter()
            .map(|&i| domain.space.weight(i) * (u.value(i) - mean).abs())
            .fold(T::zero(), |a, b| a + b)
            / mass;
        let dil = domain.interior_ball(center, lambda * radius)?;
        let dil_mass = domain.mu_mass(&dil);
        let gp: T = dil
            .iter()
            .map(|&i| domain.space.weight(i) * grad.value(i).abs().powf(p))
            .fold(T::zero(), |a, b| a + b);
        let rhs = radius * (gp / dil_mass).powf(p.recip());
        if !(rhs > T::zero()) {
            skipped += 1;
            continue;
        }
        let ratio = osc / rhs;
        worst = worst.max(ratio);
        samples.push(PoincareSample { center, radius, ratio });
    }
    Ok(PoincareReport { samples, worst_ratio: worst, skipped })
}

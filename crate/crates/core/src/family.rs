//! Deterministic test-function families used by the verification suites:
//! oscillating modes, tents, and seeded random Lipschitz fields, on the
//! boundary and on the interior.

use crate::domain::{Domain, Preset};
use crate::error::{Error, Result};
use crate::field::{Provenance, ScalarField, Support};
use crate::rng::SplitMix64;
use crate::scalar::Scalar;

/// Normalized boundary parameter per site: position along the boundary
/// scaled to `[0, 1]`. For the half-plane window this is the horizontal
/// coordinate over the edge length; for the bounded presets it is the
/// perimeter arclength from the origin corner.
pub fn boundary_parameter<T: Scalar>(domain: &Domain<T>) -> Result<Vec<(usize, T)>> {
    let preset = domain
        .preset
        .ok_or_else(|| Error::InvalidParams("test families need a preset domain".into()))?;
    let mut out = Vec::with_capacity(domain.boundary.len());
    match preset {
        Preset::HalfplaneWindow => {
            for &b in &domain.boundary {
                let p = domain.space.point(b).ok_or(Error::NoCoordinates)?;
                out.push((b, p[0] / T::cast(8.0)));
            }
        }
        Preset::Square => {
            for &b in &domain.boundary {
                let p = domain.space.point(b).ok_or(Error::NoCoordinates)?;
                let t = perimeter_position(p, &[
                    ([T::zero(), T::zero()], [T::one(), T::zero()]),
                    ([T::one(), T::zero()], [T::one(), T::one()]),
                    ([T::one(), T::one()], [T::zero(), T::one()]),
                    ([T::zero(), T::one()], [T::zero(), T::zero()]),
                ]);
                out.push((b, t / T::cast(4.0)));
            }
        }
        Preset::LShape => {
            let two = T::cast(2.0);
            let one = T::one();
            for &b in &domain.boundary {
                let p = domain.space.point(b).ok_or(Error::NoCoordinates)?;
                let t = perimeter_position(p, &[
                    ([T::zero(), T::zero()], [two, T::zero()]),
                    ([two, T::zero()], [two, one]),
                    ([two, one], [one, one]),
                    ([one, one], [one, two]),
                    ([one, two], [T::zero(), two]),
                    ([T::zero(), two], [T::zero(), T::zero()]),
                ]);
                out.push((b, t / T::cast(8.0)));
            }
        }
    }
    Ok(out)
}

/// Arclength of the first position of `p` along a closed polygonal path.
fn perimeter_position<T: Scalar>(p: [T; 2], edges: &[([T; 2], [T; 2])]) -> T {
    let tol = T::cast(1e-9);
    let mut acc = T::zero();
    for &(a, b) in edges {
        let ab = [b[0] - a[0], b[1] - a[1]];
        let len = (ab[0] * ab[0] + ab[1] * ab[1]).sqrt();
        let ap = [p[0] - a[0], p[1] - a[1]];
        let t = (ap[0] * ab[0] + ap[1] * ab[1]) / (len * len);
        if t >= -tol && t <= T::one() + tol {
            let foot = [a[0] + t * ab[0], a[1] + t * ab[1]];
            let off = crate::scalar::dist2d(p, foot);
            if off <= tol {
                return acc + t.max(T::zero()).min(T::one()) * len;
            }
        }
        acc += len;
    }
    acc
}

fn tent<T: Scalar>(t: T, center: T, half_width: T) -> T {
    (T::one() - (t - center).abs() / half_width).max(T::zero())
}

/// Seeded random Lipschitz function of the unit parameter: piecewise linear
/// with slopes drawn uniformly from `[-1, 1]` on a fixed knot grid.
fn random_lipschitz_profile(seed: u64, knots: usize) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    let mut values = Vec::with_capacity(knots + 1);
    let mut v = 0.0f64;
    values.push(v);
    for _ in 0..knots {
        v += rng.next_range(-1.0, 1.0) / knots as f64;
        values.push(v);
    }
    values
}

fn eval_profile<T: Scalar>(profile: &[f64], t: T) -> T {
    let knots = profile.len() - 1;
    let x = (t.max(T::zero()).min(T::one()) * T::cast_usize(knots)).f64();
    let k = (x.floor() as usize).min(knots - 1);
    let frac = x - k as f64;
    T::cast(profile[k] * (1.0 - frac) + profile[k + 1] * frac)
}

/// Twelve boundary test functions: four cosine and four sine modes, two
/// tents, two seeded random Lipschitz profiles. Constants are deliberately
/// absent; every member has a positive seminorm.
pub fn boundary_family<T: Scalar>(
    domain: &Domain<T>,
    seed: u64,
) -> Result<Vec<(String, ScalarField<T>)>> {
    let param = boundary_parameter(domain)?;
    let n = domain.space.len();
    let two_pi = T::cast(std::f64::consts::TAU);
    let mut family: Vec<(String, ScalarField<T>)> = Vec::new();
    for k in 1..=4 {
        let w = two_pi * T::cast_usize(k);
        family.push((
            format!("cos{k}"),
            field_from_param(n, &param, |t| (w * t).cos()),
        ));
        family.push((
            format!("sin{k}"),
            field_from_param(n, &param, |t| (w * t).sin()),
        ));
    }
    family.push((
        "tent-wide".into(),
        field_from_param(n, &param, |t| tent(t, T::cast(0.5), T::cast(0.25))),
    ));
    family.push((
        "tent-narrow".into(),
        field_from_param(n, &param, |t| tent(t, T::cast(0.375), T::cast(0.125))),
    ));
    for (j, s) in [seed, seed.wrapping_add(1)].into_iter().enumerate() {
        let profile = random_lipschitz_profile(s, 16);
        family.push((
            format!("rand{j}"),
            field_from_param(n, &param, |t| eval_profile(&profile, t)),
        ));
    }
    Ok(family)
}

fn field_from_param<T: Scalar>(
    n: usize,
    param: &[(usize, T)],
    f: impl Fn(T) -> T,
) -> ScalarField<T> {
    let mut values = vec![T::zero(); n];
    for &(site, t) in param {
        values[site] = f(t);
    }
    ScalarField::new(values, Support::Boundary, Provenance::Input)
}

/// Twelve interior test functions matching the boundary family in spirit:
/// decaying oscillating modes, two coordinate-slope fields, two seeded
/// random superpositions of low-frequency plane waves.
pub fn interior_family<T: Scalar>(
    domain: &Domain<T>,
    seed: u64,
) -> Result<Vec<(String, ScalarField<T>)>> {
    if domain.preset.is_none() {
        return Err(Error::InvalidParams("test families need a preset domain".into()));
    }
    let width = domain.window.xmax - domain.window.xmin;
    let n = domain.space.len();
    let two_pi = T::cast(std::f64::consts::TAU);
    let mut family: Vec<(String, ScalarField<T>)> = Vec::new();
    let make = |f: &dyn Fn([T; 2]) -> T| -> ScalarField<T> {
        let mut values = vec![T::zero(); n];
        for &i in &domain.interior {
            values[i] = f(domain.space.point(i).expect("preset domains are planar"));
        }
        ScalarField::new(values, Support::Interior, Provenance::Input)
    };
    for k in 1..=4 {
        let w = two_pi * T::cast_usize(k) / width;
        family.push((
            format!("hcos{k}"),
            make(&|p: [T; 2]| (w * p[0]).cos() * (-w * p[1]).exp()),
        ));
        family.push((
            format!("hsin{k}"),
            make(&|p: [T; 2]| (w * p[0]).sin() * (-w * p[1]).exp()),
        ));
    }
    family.push(("slope-x".into(), make(&|p: [T; 2]| p[0] / width)));
    family.push(("slope-y".into(), make(&|p: [T; 2]| p[1] / width)));
    for (j, s) in [seed.wrapping_add(2), seed.wrapping_add(3)].into_iter().enumerate() {
        let mut rng = SplitMix64::new(s);
        let mut waves = Vec::new();
        for _ in 0..4 {
            let wx = T::cast(rng.next_range(-2.0, 2.0));
            let wy = T::cast(rng.next_range(-2.0, 2.0));
            let phase = T::cast(rng.next_range(0.0, std::f64::consts::TAU));
            let amp = T::cast(rng.next_range(0.2, 1.0));
            waves.push((wx, wy, phase, amp));
        }
        family.push((
            format!("wave{j}"),
            make(&|p: [T; 2]| {
                waves
                    .iter()
                    .map(|&(wx, wy, phase, amp)| amp * (wx * p[0] + wy * p[1] + phase).cos())
                    .fold(T::zero(), |a, b| a + b)
            }),
        ));
    }
    Ok(family)
}

/// Seeded random pairs of distinct true-boundary sites at least
/// `min_separation` apart.
pub fn random_boundary_pairs<T: Scalar>(
    domain: &Domain<T>,
    count: usize,
    min_separation: T,
    seed: u64,
) -> Vec<(usize, usize)> {
    let mut rng = SplitMix64::new(seed);
    let mut pairs = Vec::with_capacity(count);
    let mut guard = 0usize;
    while pairs.len() < count && guard < 10_000 {
        guard += 1;
        let a = domain.boundary[rng.next_index(domain.boundary.len())];
        let b = domain.boundary[rng.next_index(domain.boundary.len())];
        if a != b && domain.space.dist(a, b) >= min_separation {
            pairs.push((a, b));
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::build_domain;

    #[test]
    fn families_have_twelve_members() {
        let d: Domain<f64> = build_domain(Preset::HalfplaneWindow, 0.25, 1.0).unwrap();
        assert_eq!(boundary_family(&d, 42).unwrap().len(), 12);
        assert_eq!(interior_family(&d, 42).unwrap().len(), 12);
    }

    #[test]
    fn boundary_parameter_covers_unit_interval() {
        for (preset, h) in [(Preset::Square, 0.125), (Preset::LShape, 0.25)] {
            let d: Domain<f64> = build_domain(preset, h, 1.0).unwrap();
            let param = boundary_parameter(&d).unwrap();
            assert_eq!(param.len(), d.boundary.len());
            let min = param.iter().map(|&(_, t)| t).fold(f64::INFINITY, f64::min);
            let max = param.iter().map(|&(_, t)| t).fold(0.0f64, f64::max);
            assert!(min >= 0.0 && min < 0.01, "{preset:?} min {min}");
            assert!(max > 0.85 && max < 1.0 + 1e-9, "{preset:?} max {max}");
        }
    }

    #[test]
    fn random_fields_are_deterministic() {
        let d: Domain<f64> = build_domain(Preset::HalfplaneWindow, 0.25, 1.0).unwrap();
        let a = boundary_family(&d, 7).unwrap();
        let b = boundary_family(&d, 7).unwrap();
        for ((na, fa), (nb, fb)) in a.iter().zip(&b) {
            assert_eq!(na, nb);
            assert_eq!(fa.values, fb.values);
        }
    }

    #[test]
    fn random_pairs_respect_separation() {
        let d: Domain<f64> = build_domain(Preset::HalfplaneWindow, 0.25, 1.0).unwrap();
        let pairs = random_boundary_pairs(&d, 10, 1.0, 99);
        assert_eq!(pairs.len(), 10);
        for (a, b) in pairs {
            assert!(d.space.dist(a, b) >= 1.0);
        }
    }
}

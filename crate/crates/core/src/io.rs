//! File formats: space and domain JSON, field CSV.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::domain::{Domain, Preset, Window};
use crate::error::{Error, Result};
use crate::field::{Provenance, ScalarField, Support};
use crate::scalar::Scalar;
use crate::space::{MetricKind, SampledSpace};

/// On-disk space schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceJson {
    pub metric: MetricKind,
    pub points: Option<Vec<[f64; 2]>>,
    pub table: Option<Vec<Vec<f64>>>,
    pub weights: Vec<f64>,
}

/// On-disk domain schema: the space plus the interior/boundary split,
/// boundary weights, exponents, and the window descriptor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainJson {
    #[serde(flatten)]
    pub space: SpaceJson,
    pub interior: Vec<usize>,
    pub boundary: Vec<usize>,
    pub artificial: Vec<usize>,
    pub nu_weights: Vec<f64>,
    pub theta: f64,
    #[serde(rename = "A")]
    pub uniformity: f64,
    pub window: WindowJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowJson {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub h: f64,
    pub preset: Option<Preset>,
}

pub fn space_to_json<T: Scalar>(space: &SampledSpace<T>) -> SpaceJson {
    SpaceJson {
        metric: space.metric_kind(),
        points: space
            .points()
            .map(|ps| ps.iter().map(|p| [p[0].f64(), p[1].f64()]).collect()),
        table: space
            .table()
            .map(|t| t.iter().map(|row| row.iter().map(|d| d.f64()).collect()).collect()),
        weights: space.weights().iter().map(|w| w.f64()).collect(),
    }
}

pub fn space_from_json<T: Scalar>(json: &SpaceJson) -> Result<SampledSpace<T>> {
    let weights: Vec<T> = json.weights.iter().map(|&w| T::cast(w)).collect();
    match json.metric {
        MetricKind::Euclidean2d => {
            let points = json
                .points
                .as_ref()
                .ok_or_else(|| Error::InvalidParams("euclidean space without points".into()))?
                .iter()
                .map(|p| [T::cast(p[0]), T::cast(p[1])])
                .collect();
            SampledSpace::euclidean(points, weights)
        }
        MetricKind::Table => {
            let table = json
                .table
                .as_ref()
                .ok_or_else(|| Error::InvalidParams("table space without table".into()))?
                .iter()
                .map(|row| row.iter().map(|&d| T::cast(d)).collect())
                .collect();
            SampledSpace::from_table(table, weights)
        }
    }
}

pub fn domain_to_json<T: Scalar>(domain: &Domain<T>) -> DomainJson {
    DomainJson {
        space: space_to_json(&domain.space),
        interior: domain.interior.clone(),
        boundary: domain.boundary.clone(),
        artificial: domain.artificial.clone(),
        nu_weights: domain.boundary.iter().map(|&b| domain.nu[b].f64()).collect(),
        theta: domain.theta.f64(),
        uniformity: domain.uniformity.f64(),
        window: WindowJson {
            xmin: domain.window.xmin.f64(),
            xmax: domain.window.xmax.f64(),
            ymin: domain.window.ymin.f64(),
            ymax: domain.window.ymax.f64(),
            h: domain.h.f64(),
            preset: domain.preset,
        },
    }
}

pub fn domain_from_json<T: Scalar>(json: &DomainJson) -> Result<Domain<T>> {
    let space = space_from_json(&json.space)?;
    Domain::from_parts(
        space,
        json.interior.clone(),
        json.boundary.clone(),
        json.artificial.clone(),
        json.nu_weights.iter().map(|&w| T::cast(w)).collect(),
        T::cast(json.theta),
        T::cast(json.uniformity),
        Window {
            xmin: T::cast(json.window.xmin),
            xmax: T::cast(json.window.xmax),
            ymin: T::cast(json.window.ymin),
            ymax: T::cast(json.window.ymax),
        },
        json.window.preset,
        T::cast(json.window.h),
    )
}

pub fn write_domain<T: Scalar>(domain: &Domain<T>, path: &Path) -> Result<()> {
    let json = domain_to_json(domain);
    let mut file = std::fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut file, &json)?;
    file.write_all(b"\n")?;
    Ok(())
}

pub fn read_domain<T: Scalar>(path: &Path) -> Result<Domain<T>> {
    let file = std::fs::File::open(path)?;
    let json: DomainJson = serde_json::from_reader(BufReader::new(file))?;
    domain_from_json(&json)
}

/// Write a field as `site_index,value` rows with a header.
pub fn write_field<T: Scalar>(field: &ScalarField<T>, sites: &[usize], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["site_index", "value"])?;
    for &i in sites {
        w.write_record([i.to_string(), format!("{:.17e}", field.value(i).f64())])?;
    }
    w.flush()?;
    Ok(())
}

/// Read a field CSV onto the given support of a domain. Every support site
/// must be assigned a finite value.
pub fn read_field<T: Scalar>(
    path: &Path,
    domain: &Domain<T>,
    support: Support,
) -> Result<ScalarField<T>> {
    let file = std::fs::File::open(path)?;
    let mut values = vec![T::zero(); domain.space.len()];
    let mut seen = vec![false; domain.space.len()];
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with("site_index") {
            continue;
        }
        let mut parts = trimmed.split(',');
        let idx: usize = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::FieldFile(format!("bad site index on line {}", lineno + 1)))?;
        let val: f64 = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::FieldFile(format!("bad value on line {}", lineno + 1)))?;
        if idx >= values.len() {
            return Err(Error::FieldFile(format!(
                "site index {idx} out of range {} on line {}",
                values.len(),
                lineno + 1
            )));
        }
        values[idx] = T::cast(val);
        seen[idx] = true;
    }
    let support_sites: &[usize] = match support {
        Support::Interior => &domain.interior,
        Support::Boundary => &domain.boundary,
        Support::AllSites => {
            return Err(Error::InvalidParams("field files carry one support".into()))
        }
    };
    for &i in support_sites {
        if !seen[i] {
            return Err(Error::FieldFile(format!("missing value for site {i}")));
        }
    }
    let field = ScalarField::new(values, support, Provenance::Input);
    field.validate_on(support_sites)?;
    Ok(field)
}

/// Round to 12 significant decimal digits, the precision reports commit to.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exp = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(11 - exp);
    (x * scale).round() / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::build_domain;

    #[test]
    fn domain_json_round_trip() {
        let d: Domain<f64> = build_domain(Preset::Square, 0.25, 1.0).unwrap();
        let tmp = std::env::temp_dir().join("besov_trace_domain_roundtrip.json");
        write_domain(&d, &tmp).unwrap();
        let back: Domain<f64> = read_domain(&tmp).unwrap();
        assert_eq!(back.space.len(), d.space.len());
        assert_eq!(back.boundary, d.boundary);
        assert_eq!(back.theta, d.theta);
        assert_eq!(back.h, d.h);
        assert_eq!(back.preset, d.preset);
        std::fs::remove_file(tmp).ok();
    }

    #[test]
    fn field_csv_round_trip() {
        let d: Domain<f64> = build_domain(Preset::Square, 0.25, 1.0).unwrap();
        let f = ScalarField::from_fn(d.space.len(), &d.boundary, Support::Boundary, |i| {
            d.space.point(i).unwrap()[0] * 1.5 - 0.125
        });
        let tmp = std::env::temp_dir().join("besov_trace_field_roundtrip.csv");
        write_field(&f, &d.boundary, &tmp).unwrap();
        let back: ScalarField<f64> = read_field(&tmp, &d, Support::Boundary).unwrap();
        for &b in &d.boundary {
            assert_eq!(back.value(b), f.value(b));
        }
        std::fs::remove_file(tmp).ok();
    }

    #[test]
    fn missing_sites_rejected() {
        let d: Domain<f64> = build_domain(Preset::Square, 0.5, 1.0).unwrap();
        let tmp = std::env::temp_dir().join("besov_trace_field_missing.csv");
        std::fs::write(&tmp, "site_index,value\n0,1.0\n").unwrap();
        assert!(read_field::<f64>(&tmp, &d, Support::Boundary).is_err());
        std::fs::remove_file(tmp).ok();
    }

    #[test]
    fn sig12_rounds() {
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(1.0 / 3.0), 0.333333333333);
        assert_eq!(sig12(123456789.123456), 123456789.123);
        assert_eq!(sig12(-1.23456789012345e-7), -1.23456789012e-7);
    }
}

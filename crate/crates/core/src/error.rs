use thiserror::Error;

/// Errors surfaced by construction and evaluation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("need at least {need} sites, got {got}")]
    TooFewSites { need: usize, got: usize },
    #[error("weight vector length {weights} does not match site count {sites}")]
    WeightLengthMismatch { weights: usize, sites: usize },
    #[error("negative weight {value} at site {site}")]
    NegativeWeight { site: usize, value: f64 },
    #[error("total mass must be positive")]
    ZeroTotalMass,
    #[error("distance table must be square of side {sites}, row {row} has length {len}")]
    TableShape { sites: usize, row: usize, len: usize },
    #[error("distance table asymmetric at ({i},{j}): {dij} vs {dji}")]
    AsymmetricTable { i: usize, j: usize, dij: f64, dji: f64 },
    #[error("distance table has nonzero diagonal at {i}")]
    NonzeroDiagonal { i: usize },
    #[error("ball radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("site index {index} out of range {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("point-centered queries need planar coordinates; this space is table-backed")]
    NoCoordinates,
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("codimension exponent must satisfy {0}")]
    InvalidTheta(String),
    #[error("resolution must divide the preset window; got h = {0}")]
    InvalidResolution(f64),
    #[error("site {0} is not an interior site")]
    NotInterior(usize),
    #[error("site {0} is not a true boundary site")]
    NotBoundary(usize),
    #[error("curve endpoints coincide")]
    EndpointsCoincide,
    #[error("curve of this preset is not uniform for the requested endpoints: {0}")]
    CurveNotUniform(String),
    #[error("curve leaves the closed domain region near ({0}, {1})")]
    CurveLeavesDomain(f64, f64),
    #[error("dilation parameter must satisfy tau >= 1, got {0}")]
    TauBelowOne(f64),
    #[error("interior site {0} is covered by no ball; cover is not a cover")]
    UncoveredSite(usize),
    #[error("domain has no true boundary sites")]
    EmptyBoundary,
    #[error("field support/size does not match the domain: {0}")]
    FieldMismatch(String),
    #[error("non-finite value {value} at site {site}")]
    NonFiniteValue { site: usize, value: f64 },
    #[error("distinct boundary sites {i} and {j} at zero distance")]
    DuplicateBoundarySites { i: usize, j: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("empty ball at ({what})")]
    EmptyBall { what: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("field file: {0}")]
    FieldFile(String),
}

pub type Result<A> = std::result::Result<A, Error>;

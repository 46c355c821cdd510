//! JSON inputs and outputs, all tagged `"schema": "finegraph/1"`.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use finegraph::arc_graphs::ChainCertificate;
use finegraph::germs_width::{GermSpec, Similarity};
use finegraph::surfaces::{AnnulusArc, CurveError, SurfaceModel, TorusCurve};
use finegraph::RatPoint;

pub const SCHEMA: &str = "finegraph/1";

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected schema \"{SCHEMA}\", found {0:?}")]
    Schema(String),
    #[error("invalid curve {index}: {source}")]
    Curve { index: usize, source: CurveError },
    #[error("invalid germ: {0}")]
    Germ(String),
}

#[derive(Deserialize)]
struct Tagged {
    schema: String,
}

fn check_schema(text: &str) -> Result<(), InputError> {
    let t: Tagged = serde_json::from_str(text)?;
    if t.schema != SCHEMA {
        return Err(InputError::Schema(t.schema));
    }
    Ok(())
}

#[derive(Deserialize)]
struct CurvesInput {
    curves: Vec<Vec<RatPoint>>,
}

/// `{"schema", "curves": [[[x, y], ...], ...]}`, each curve one lifted
/// period with rational coordinates as strings.
pub fn parse_curves(text: &str) -> Result<Vec<TorusCurve>, InputError> {
    check_schema(text)?;
    let input: CurvesInput = serde_json::from_str(text)?;
    input
        .curves
        .into_iter()
        .enumerate()
        .map(|(index, lift)| TorusCurve::new(lift).map_err(|source| InputError::Curve { index, source }))
        .collect()
}

#[derive(Deserialize)]
struct PairInput<T> {
    a: T,
    b: T,
}

/// `{"schema", "a": lift, "b": lift}` as torus curves.
pub fn parse_curve_pair(text: &str) -> Result<(TorusCurve, TorusCurve), InputError> {
    check_schema(text)?;
    let p: PairInput<Vec<RatPoint>> = serde_json::from_str(text)?;
    let a = TorusCurve::new(p.a).map_err(|source| InputError::Curve { index: 0, source })?;
    let b = TorusCurve::new(p.b).map_err(|source| InputError::Curve { index: 1, source })?;
    Ok((a, b))
}

/// `{"schema", "a": lift, "b": lift}` as arcs of an annulus model.
pub fn parse_arc_pair(text: &str, model: SurfaceModel) -> Result<(AnnulusArc, AnnulusArc), InputError> {
    check_schema(text)?;
    let p: PairInput<Vec<RatPoint>> = serde_json::from_str(text)?;
    let a = AnnulusArc::new(model, p.a).map_err(|source| InputError::Curve { index: 0, source })?;
    let b = AnnulusArc::new(model, p.b).map_err(|source| InputError::Curve { index: 1, source })?;
    Ok((a, b))
}

/// `{"schema", "a": germ, "b": germ}` with germs as
/// `{"prefix", "generator", "lambda", "rot": [cos, sin]}`.
pub fn parse_germ_pair(text: &str) -> Result<(GermSpec, GermSpec), InputError> {
    check_schema(text)?;
    let p: PairInput<GermSpec> = serde_json::from_str(text)?;
    for g in [&p.a, &p.b] {
        let (cos, sin) = g.m.rot.clone();
        Similarity::new(g.m.lambda.clone(), cos, sin).map_err(|e| InputError::Germ(e.to_string()))?;
        g.validate().map_err(|e| InputError::Germ(e.to_string()))?;
    }
    Ok((p.a, p.b))
}

#[derive(Deserialize)]
struct CertificateInput {
    certificate: ChainCertificate,
}

/// `{"schema", "certificate": {"edges", "moves"}}`.
pub fn parse_certificate(text: &str) -> Result<ChainCertificate, InputError> {
    check_schema(text)?;
    let c: CertificateInput = serde_json::from_str(text)?;
    Ok(c.certificate)
}

/// Edge label attached to a suite fixture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeLabel {
    Disjoint,
    Transverse,
    NonEdge,
}

#[derive(Clone, Debug)]
pub struct EdgeFixture {
    pub name: String,
    pub a: TorusCurve,
    pub b: TorusCurve,
    pub label: EdgeLabel,
}

#[derive(Deserialize)]
struct EdgeFixtureInput {
    name: Option<String>,
    a: Vec<RatPoint>,
    b: Vec<RatPoint>,
    label: EdgeLabel,
}

/// `{"schema", "name"?, "a", "b", "label"}`: a pair of torus curves with
/// its claimed edge label.
pub fn parse_edge_fixture(text: &str, default_name: &str) -> Result<EdgeFixture, InputError> {
    check_schema(text)?;
    let f: EdgeFixtureInput = serde_json::from_str(text)?;
    let a = TorusCurve::new(f.a).map_err(|source| InputError::Curve { index: 0, source })?;
    let b = TorusCurve::new(f.b).map_err(|source| InputError::Curve { index: 1, source })?;
    Ok(EdgeFixture { name: f.name.unwrap_or_else(|| default_name.to_string()), a, b, label: f.label })
}

/// `body` as a JSON object with `schema` and `kind` in front.
pub fn envelope<T: Serialize>(kind: &str, body: &T) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), Value::from(SCHEMA));
    m.insert("kind".into(), Value::from(kind));
    match serde_json::to_value(body).expect("outputs serialize") {
        Value::Object(o) => m.extend(o),
        v => {
            m.insert("value".into(), v);
        }
    }
    Value::Object(m)
}

pub fn lift_of(c: &TorusCurve) -> Vec<RatPoint> {
    c.lift().to_vec()
}

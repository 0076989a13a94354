//! One document format for every object kind the tools exchange.
//!
//! Documents are TOML with a top-level `kind` tag naming the payload —
//! `"spectrum"`, `"fixed_points"`, `"curve"`, or `"model"` — and a single
//! section of the same name holding it. Counts and fixed-point values are
//! written as decimal strings so they never overflow a machine integer;
//! small values may be given as plain integers for convenience. Curve
//! coefficients are either integers (reduced into the field) or
//! little-endian residue digit lists; if a file pins a `modulus`, it must
//! be the canonical one the field tower actually uses, since residues
//! would silently change meaning under any other.
//!
//! [`spectrum_document`] is the inverse of parsing for spectra and is
//! deterministic: equal spectra serialize to byte-identical documents.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Deserialize;
use thiserror::Error;

use crate::covmodel::{CovError, FiniteOrbitModel, Perm};
use crate::ffgeom::{build_field, CurveKind, CurveModel, FfError};
use crate::spectrum::{FixedPointTable, OrbitSpectrum, SpectrumError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("document is not valid TOML: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("unknown document kind {0:?} (expected spectrum, fixed_points, curve, or model)")]
    UnknownKind(String),
    #[error("document kind is {kind:?} but the [{kind}] section is missing")]
    MissingSection { kind: &'static str },
    #[error("{field}: {message}")]
    Invalid { field: &'static str, message: String },
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Model(#[from] CovError),
}

/// A parsed input document.
#[derive(Debug, Clone)]
pub enum Document {
    Spectrum(OrbitSpectrum),
    FixedPoints(FixedPointTable),
    Curve(CurveModel),
    /// A finite model together with commuting-candidate generators; the
    /// group closure (and the commutation check) happens where the action
    /// is built.
    Model {
        model: FiniteOrbitModel,
        generators: Vec<Perm>,
    },
}

impl Document {
    /// The `kind` tag this payload serializes under.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Document::Spectrum(_) => "spectrum",
            Document::FixedPoints(_) => "fixed_points",
            Document::Curve(_) => "curve",
            Document::Model { .. } => "model",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    kind: String,
    spectrum: Option<RawSpectrum>,
    fixed_points: Option<RawFixedPoints>,
    curve: Option<RawCurve>,
    model: Option<RawModel>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    base: u64,
    horizon: u64,
    complete: bool,
    #[serde(default)]
    counts: BTreeMap<String, IntOrString>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFixedPoints {
    base: u64,
    values: Vec<IntOrString>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    p: u64,
    #[serde(default = "one")]
    e: usize,
    degree: u32,
    genus: Option<u32>,
    kind: String,
    modulus: Option<Vec<u64>>,
    monomials: Vec<RawMonomial>,
}

fn one() -> usize {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonomial {
    exps: (u32, u32, u32),
    coeff: Coeff,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coeff {
    Int(i64),
    Residue(Vec<u64>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    n: usize,
    phi: Vec<usize>,
    #[serde(default)]
    generators: Vec<Vec<usize>>,
}

/// Arbitrary-size non-negative integers, written as decimal strings when
/// they might not fit a machine word.
#[derive(Deserialize)]
#[serde(untagged)]
enum IntOrString {
    Int(u64),
    Str(String),
}

impl IntOrString {
    fn to_biguint(&self, field: &'static str) -> Result<BigUint, InputError> {
        match self {
            IntOrString::Int(v) => Ok(BigUint::from(*v)),
            IntOrString::Str(s) => s.trim().parse().map_err(|_| InputError::Invalid {
                field,
                message: format!("{s:?} is not a decimal integer"),
            }),
        }
    }
}

/// Parses one document, dispatching on its `kind` tag and validating the
/// payload as far as construction of the in-memory object goes.
pub fn parse_document(text: &str) -> Result<Document, InputError> {
    let raw: RawDocument = toml::from_str(text)?;
    match raw.kind.as_str() {
        "spectrum" => {
            let body = raw.spectrum.ok_or(InputError::MissingSection { kind: "spectrum" })?;
            let mut counts = BTreeMap::new();
            for (key, value) in &body.counts {
                let degree: u64 = key.parse().map_err(|_| InputError::Invalid {
                    field: "spectrum.counts",
                    message: format!("degree key {key:?} is not an integer"),
                })?;
                if degree == 0 {
                    return Err(InputError::Invalid {
                        field: "spectrum.counts",
                        message: "orbit degrees start at 1".into(),
                    });
                }
                counts.insert(degree, value.to_biguint("spectrum.counts")?);
            }
            let s = OrbitSpectrum::new(body.base, counts, body.horizon, body.complete)?;
            Ok(Document::Spectrum(s))
        }
        "fixed_points" => {
            let body =
                raw.fixed_points.ok_or(InputError::MissingSection { kind: "fixed_points" })?;
            let values = body
                .values
                .iter()
                .map(|v| v.to_biguint("fixed_points.values"))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Document::FixedPoints(FixedPointTable::new(body.base, values)))
        }
        "curve" => {
            let body = raw.curve.ok_or(InputError::MissingSection { kind: "curve" })?;
            let field = build_field(body.p, body.e)?;
            if let Some(modulus) = &body.modulus {
                if modulus != field.modulus() {
                    return Err(InputError::Invalid {
                        field: "curve.modulus",
                        message: format!(
                            "residues are defined over the canonical modulus {:?}; \
                             this document pins {:?}",
                            field.modulus(),
                            modulus
                        ),
                    });
                }
            }
            let kind = match body.kind.as_str() {
                "smooth_plane" => CurveKind::SmoothPlane,
                "weierstrass" => CurveKind::Weierstrass,
                "custom" => CurveKind::Custom,
                other => {
                    return Err(InputError::Invalid {
                        field: "curve.kind",
                        message: format!(
                            "{other:?} is not one of smooth_plane, weierstrass, custom"
                        ),
                    })
                }
            };
            let mut monomials = Vec::with_capacity(body.monomials.len());
            for m in &body.monomials {
                let c = match &m.coeff {
                    Coeff::Int(v) => field.scalar(*v),
                    Coeff::Residue(digits) => {
                        if digits.len() > body.e {
                            return Err(InputError::Invalid {
                                field: "curve.monomials",
                                message: format!(
                                    "residue {:?} has more than e = {} digits",
                                    digits, body.e
                                ),
                            });
                        }
                        field.from_coeffs(digits)
                    }
                };
                monomials.push((m.exps.0, m.exps.1, m.exps.2, c));
            }
            let curve = CurveModel::new(field, monomials, body.degree, kind, body.genus)?;
            Ok(Document::Curve(curve))
        }
        "model" => {
            let body = raw.model.ok_or(InputError::MissingSection { kind: "model" })?;
            if body.phi.len() != body.n {
                return Err(InputError::Invalid {
                    field: "model.phi",
                    message: format!("image list has length {}, n = {}", body.phi.len(), body.n),
                });
            }
            let model = FiniteOrbitModel::new(Perm::new(body.phi)?)?;
            let mut generators = Vec::with_capacity(body.generators.len());
            for (i, images) in body.generators.iter().enumerate() {
                if images.len() != body.n {
                    return Err(InputError::Invalid {
                        field: "model.generators",
                        message: format!(
                            "generator {i} has length {}, n = {}",
                            images.len(),
                            body.n
                        ),
                    });
                }
                generators.push(Perm::new(images.clone())?);
            }
            Ok(Document::Model { model, generators })
        }
        other => Err(InputError::UnknownKind(other.to_string())),
    }
}

/// Serializes a spectrum to its canonical document: fixed section order,
/// counts as decimal strings in degree order, one trailing newline.
/// Parsing the result reproduces the spectrum exactly.
pub fn spectrum_document(s: &OrbitSpectrum) -> String {
    let mut out = String::new();
    out.push_str("kind = \"spectrum\"\n\n[spectrum]\n");
    out.push_str(&format!("base = {}\n", s.base_q()));
    out.push_str(&format!("horizon = {}\n", s.horizon()));
    out.push_str(&format!("complete = {}\n", s.complete()));
    out.push_str("\n[spectrum.counts]\n");
    for (degree, count) in s.counts() {
        out.push_str(&format!("{degree} = \"{count}\"\n"));
    }
    out
}

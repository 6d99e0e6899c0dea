//! JSON encodings of library values.

use epikit_core::abelianization::SxEntry;
use epikit_core::rational::format_q;
use epikit_core::stability::{ConeCertificate, SupportProfile};
use epikit_core::{AffineRoot, Error, IwahoriWeylElement, Q, Result, Root};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineRootJson {
    pub gradient: Vec<i64>,
    pub level: i64,
}

/// One entry of a profiles file. A missing `upper` means the support is known exactly.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileJson {
    pub lower: Vec<AffineRootJson>,
    #[serde(default)]
    pub upper: Option<Vec<AffineRootJson>>,
}

fn to_root(r: &AffineRootJson) -> AffineRoot {
    AffineRoot::new(Root::new(r.gradient.clone()), r.level)
}

pub fn parse_profiles(text: &str, rank: usize) -> Result<Vec<SupportProfile>> {
    let raw: Vec<ProfileJson> =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("profiles file: {e}")))?;
    raw.iter()
        .map(|p| {
            let all = p.lower.iter().chain(p.upper.iter().flatten());
            if let Some(r) = all.clone().find(|r| r.gradient.len() != rank) {
                return Err(Error::RankMismatch { expected: rank, got: r.gradient.len() });
            }
            let lower: Vec<AffineRoot> = p.lower.iter().map(to_root).collect();
            match &p.upper {
                Some(u) => SupportProfile::new(lower, u.iter().map(to_root)),
                None => Ok(SupportProfile::exact(lower)),
            }
        })
        .collect()
}

pub fn rational(x: &Q) -> Value {
    Value::String(format_q(x))
}

pub fn rationals(xs: &[Q]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

pub fn affine_root(r: &AffineRoot) -> Value {
    json!({ "gradient": r.gradient.coords, "level": r.level })
}

pub fn affine_roots<'a>(rs: impl IntoIterator<Item = &'a AffineRoot>) -> Value {
    Value::Array(rs.into_iter().map(affine_root).collect())
}

pub fn entry(e: &SxEntry) -> Value {
    match e {
        SxEntry::Single(r) => json!({ "single": affine_root(r) }),
        SxEntry::Tuple(rs) => json!({ "tuple": affine_roots(rs) }),
    }
}

fn bigint(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => Value::String(x.to_string()),
    }
}

pub fn certificate(c: &ConeCertificate) -> Value {
    match c {
        ConeCertificate::NontrivialRay(ray) => json!({ "ray": ray.iter().map(bigint).collect::<Vec<_>>() }),
        ConeCertificate::PositiveCombination { coeffs, spanning } => json!({
            "positive_combination": coeffs
                .iter()
                .map(|(r, a)| json!({ "gradient": r.coords, "coefficient": rational(a) }))
                .collect::<Vec<_>>(),
            "spanning": spanning.iter().map(|r| r.coords.clone()).collect::<Vec<_>>(),
        }),
    }
}

/// Word uses 1-based simple reflection indices, applied right to left.
pub fn element(w: &IwahoriWeylElement) -> Value {
    json!({ "translation": w.translation, "word": w.finite.word_1based() })
}

//! Command-line driver for epikit-core: parses flags, runs one subcommand
//! and renders the result as JSON (sorted keys) or aligned text.

mod text;
mod wire;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use epikit_core::abelianization::compute_sx;
use epikit_core::affine::{delta2_x, delta_x, kac_to_point, simple_affine_roots, KacCoords, Lattice};
use epikit_core::depth::min_depth;
use epikit_core::intertwine::intertwiners;
use epikit_core::stability::{is_cone_trivial, SupportProfile};
use epikit_core::{BuildingPoint, Error, Family, Result, RootSystem};
use serde_json::{json, Value};

pub use text::to_text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subcommand {
    Roots,
    Kac,
    Delta,
    Abelianize,
    Stable,
    Depth,
    Intertwine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Order of the non-affine Kac entries on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KacOrder {
    /// Along the affine Dynkin diagram starting at the affine node; differs
    /// from Bourbaki only for G2, where the long simple root comes first.
    Diagram,
    /// Bourbaki numbering of the simple roots.
    Bourbaki,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeArg {
    SimplyConnected,
    Adjoint,
}

impl From<LatticeArg> for Lattice {
    fn from(l: LatticeArg) -> Self {
        match l {
            LatticeArg::SimplyConnected => Lattice::SimplyConnected,
            LatticeArg::Adjoint => Lattice::Adjoint,
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "epikit", version, about = "Affine root combinatorics at facet barycentres")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub subcommand: Subcommand,
    /// Root system, e.g. G2 or B5.
    #[arg(long = "type")]
    pub type_: String,
    /// Residue characteristic.
    #[arg(long)]
    pub p: Option<u64>,
    /// Residue field size; defaults to p.
    #[arg(long)]
    pub q: Option<u64>,
    /// Kac coordinates b0,b1,...,bn with the affine node first.
    #[arg(long, value_delimiter = ',')]
    pub kac: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = KacOrder::Diagram)]
    pub kac_order: KacOrder,
    #[arg(long, value_enum, default_value_t = LatticeArg::SimplyConnected)]
    pub lattice: LatticeArg,
    /// JSON array of {"lower": [...], "upper": [...]} affine-root lists.
    #[arg(long)]
    pub profiles: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Output document and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn reorder(sys: &RootSystem, order: KacOrder, b: &[u64]) -> Vec<u64> {
    let mut b = b.to_vec();
    if order == KacOrder::Diagram && sys.family == Family::G && b.len() == 3 {
        b.swap(1, 2);
    }
    b
}

struct Context {
    sys: RootSystem,
    cfg: RunConfig,
}

impl Context {
    fn kac(&self) -> Result<KacCoords> {
        let b = self.cfg.kac.as_ref().ok_or_else(|| Error::InvalidInput("--kac is required".into()))?;
        if b.len() != self.sys.rank + 1 {
            return Err(Error::InvalidKac(format!("expected {} entries, got {}", self.sys.rank + 1, b.len())));
        }
        KacCoords::new(reorder(&self.sys, self.cfg.kac_order, b))
    }

    fn point(&self) -> Result<BuildingPoint> {
        kac_to_point(&self.sys, &self.kac()?)
    }

    fn field(&self) -> Result<(u64, u64)> {
        let p = self.cfg.p.ok_or_else(|| Error::InvalidInput("--p is required".into()))?;
        Ok((p, self.cfg.q.unwrap_or(p)))
    }

    /// Profiles from the file, or the exact support of the functional
    /// nonzero on every line of the abelianisation.
    fn profiles(&self) -> Result<Vec<SupportProfile>> {
        match &self.cfg.profiles {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
                wire::parse_profiles(&text, self.sys.rank)
            }
            None => {
                let (p, q) = self.field()?;
                Ok(vec![SupportProfile::exact(compute_sx(&self.sys, p, q, &self.point()?)?.roots())])
            }
        }
    }
}

fn roots(sys: &RootSystem) -> Value {
    json!({
        "type": sys.name(),
        "rank": sys.rank,
        "cartan": sys.cartan,
        "marks": sys.marks,
        "highest_root": sys.highest_root.coords,
        "positive_roots": sys.positive_roots.iter().map(|r| r.coords.clone()).collect::<Vec<_>>(),
        "num_roots": sys.num_roots(),
        "weyl_order": sys.weyl_order().to_string(),
    })
}

fn dispatch(ctx: &Context) -> Result<Value> {
    let sys = &ctx.sys;
    match ctx.cfg.subcommand {
        Subcommand::Roots => Ok(roots(sys)),
        Subcommand::Kac => {
            let k = ctx.kac()?;
            let x = kac_to_point(sys, &k)?;
            let values: Vec<_> = simple_affine_roots(sys).iter().map(|r| r.eval(&x)).collect();
            let delta = delta_x(sys, &x).ok().map(|d| wire::rational(&d.delta));
            Ok(json!({
                "kac_bourbaki": k.b,
                "normalizer": k.normalizer(sys),
                "point": wire::rationals(&x.coords),
                "simple_affine_values": wire::rationals(&values),
                "barycentre": delta.is_some(),
                "delta": delta,
            }))
        }
        Subcommand::Delta => {
            let x = ctx.point()?;
            let d = delta_x(sys, &x)?;
            Ok(json!({
                "delta": wire::rational(&d.delta),
                "roots": wire::affine_roots(&d.roots),
                "double_delta_roots": wire::affine_roots(&delta2_x(sys, &x)?),
            }))
        }
        Subcommand::Abelianize => {
            let (p, q) = ctx.field()?;
            let v = compute_sx(sys, p, q, &ctx.point()?)?;
            Ok(json!({
                "dim": v.dim(),
                "entries": v.entries.iter().map(wire::entry).collect::<Vec<_>>(),
            }))
        }
        Subcommand::Stable => {
            let family = ctx.profiles()?;
            if family.is_empty() {
                return Err(Error::EmptyFamily);
            }
            let mut all = true;
            let mut out = Vec::new();
            for (i, p) in family.iter().enumerate() {
                if p.lower.is_empty() {
                    return Err(Error::InvalidInput(format!("profile {i} has an empty lower set")));
                }
                let v = is_cone_trivial(&p.lower_gradients())?;
                all &= v.trivial;
                out.push(json!({ "index": i, "trivial": v.trivial, "certificate": wire::certificate(&v.certificate) }));
            }
            Ok(json!({ "stable": all, "profiles": out }))
        }
        Subcommand::Depth => {
            let r = min_depth(sys, &ctx.profiles()?)?;
            Ok(json!({
                "depth": wire::rational(&r.depth),
                "witness": wire::rationals(&r.witness.coords),
                "profile": r.profile,
            }))
        }
        Subcommand::Intertwine => {
            let s = intertwiners(sys, &ctx.point()?, &ctx.profiles()?, ctx.cfg.lattice.into())?;
            Ok(Value::Array(s.iter().map(wire::element).collect()))
        }
    }
}

fn error_doc(kind: &str, message: String) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Text => to_text(v),
    }
}

/// Runs one subcommand for an already parsed configuration.
pub fn run(cfg: RunConfig) -> Outcome {
    let format = cfg.format;
    let result = cfg
        .type_
        .parse::<RootSystem>()
        .and_then(|sys| dispatch(&Context { sys, cfg }));
    match result {
        Ok(v) => Outcome { stdout: render(&v, format), code: 0 },
        Err(e) => {
            let code = if matches!(e, Error::Unsupported(_)) { 2 } else { 1 };
            Outcome { stdout: render(&error_doc(e.kind(), e.to_string()), format), code }
        }
    }
}

/// Parses arguments (including the program name) and runs.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(cfg),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                Outcome { stdout: e.to_string(), code: 0 }
            }
            _ => Outcome { stdout: render(&error_doc("usage", e.to_string()), Format::Json), code: 1 },
        },
    }
}

/// Sizes the global thread pool from `EPIKIT_THREADS` when set.
pub fn configure_threads() -> std::result::Result<(), String> {
    let Ok(v) = std::env::var("EPIKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("EPIKIT_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("EPIKIT_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

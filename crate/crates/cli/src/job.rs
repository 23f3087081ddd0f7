//! Job files for `convolve` and `verify`. Relative paths resolve against the
//! directory of the job file.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use singconv::bases::{load_user_class, BundleFile, InnerRegistry, RegistryJson};
use singconv::fans::exponent_of;
use singconv::germ::GermJson;
use singconv::newton::Convenience;
use singconv::{ConvolutionJob, GermClassBundle, GermPoly, ScaledLattice};

#[derive(Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum BundleRef {
    Builtin { builtin: String, d: Option<u32> },
    File { file: PathBuf },
    Inline { class: BundleFile },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RegistryRef {
    Policy(String),
    File { file: PathBuf },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvolveJobFile {
    pub bundles: Vec<BundleRef>,
    #[serde(default = "sum_policy")]
    pub registry: RegistryRef,
    pub m: Option<u32>,
}

fn sum_policy() -> RegistryRef {
    RegistryRef::Policy("sum".into())
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GermRef {
    File { file: PathBuf },
    Inline(GermJson),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyJobFile {
    pub f: GermRef,
    pub g: Vec<GermRef>,
    /// Exponents of the inner germs; computed from their polyhedra if absent.
    pub d: Option<Vec<u32>>,
    /// Computed as the exponent of `f` on the `d` lattice if absent.
    pub m: Option<u32>,
}

pub struct LoadedConvolve {
    pub job: ConvolutionJob,
    pub sum_registry: bool,
}

pub struct LoadedVerify {
    pub f: GermPoly,
    pub g: Vec<GermPoly>,
    pub d: Vec<u32>,
    pub m: u32,
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

pub fn load_bundle_file(path: &Path) -> Result<GermClassBundle> {
    load_user_class(&read(path)?).with_context(|| format!("bad bundle file {}", path.display()))
}

pub fn load_germ(path: &Path) -> Result<GermPoly> {
    GermPoly::parse_str(&read(path)?).with_context(|| format!("bad germ file {}", path.display()))
}

fn bundle(base: &Path, r: &BundleRef) -> Result<GermClassBundle> {
    Ok(match r {
        BundleRef::Builtin { builtin, d } => GermClassBundle::builtin(builtin, *d)?,
        BundleRef::File { file } => load_bundle_file(&resolve(base, file))?,
        BundleRef::Inline { class } => load_user_class(&serde_json::to_string(class)?)?,
    })
}

pub fn load_convolve(path: &Path) -> Result<LoadedConvolve> {
    let parsed: ConvolveJobFile =
        serde_json::from_str(&read(path)?).with_context(|| format!("bad job file {}", path.display()))?;
    if parsed.bundles.is_empty() {
        bail!(singconv::Error::Parse("job has no bundles".into()));
    }
    let base = base_dir(path);
    let bundles = parsed.bundles.iter().map(|r| bundle(&base, r)).collect::<Result<Vec<_>>>()?;
    match &parsed.registry {
        RegistryRef::Policy(p) if p == "sum" => {
            Ok(LoadedConvolve { job: ConvolutionJob::for_sum(bundles, parsed.m)?, sum_registry: true })
        }
        RegistryRef::Policy(p) => bail!(singconv::Error::Parse(format!("unknown registry policy {p:?}"))),
        RegistryRef::File { file } => {
            let file = resolve(&base, file);
            let j: RegistryJson = serde_json::from_str(&read(&file)?)
                .with_context(|| format!("bad registry file {}", file.display()))?;
            let registry = InnerRegistry::from_json(&j)?;
            if parsed.m.is_some_and(|m| m != registry.m()) {
                bail!(singconv::Error::Parse(format!("job m differs from registry m = {}", registry.m())));
            }
            Ok(LoadedConvolve { job: ConvolutionJob::new(bundles, registry)?, sum_registry: false })
        }
    }
}

fn germ(base: &Path, r: &GermRef) -> Result<GermPoly> {
    match r {
        GermRef::File { file } => load_germ(&resolve(base, file)),
        GermRef::Inline(j) => Ok(GermPoly::from_json(j)?),
    }
}

pub fn load_verify(path: &Path) -> Result<LoadedVerify> {
    let parsed: VerifyJobFile =
        serde_json::from_str(&read(path)?).with_context(|| format!("bad job file {}", path.display()))?;
    let base = base_dir(path);
    let f = germ(&base, &parsed.f)?;
    let g = parsed.g.iter().map(|r| germ(&base, r)).collect::<Result<Vec<_>>>()?;
    if g.len() != f.nvars() {
        bail!(singconv::Error::Parse(format!("f has {} variables but {} inner germs", f.nvars(), g.len())));
    }
    let d = match parsed.d {
        Some(d) => d,
        None => g
            .iter()
            .map(|gi| Ok(exponent_of(gi, &ScaledLattice::standard(gi.nvars()), Convenience::Relax)?.m as u32))
            .collect::<Result<Vec<_>>>()?,
    };
    if d.len() != f.nvars() {
        bail!(singconv::Error::Parse(format!("f has {} variables but d has {} entries", f.nvars(), d.len())));
    }
    let m = match parsed.m {
        Some(m) => m,
        None => exponent_of(&f, &ScaledLattice::new(d.clone())?, Convenience::Relax)?.m as u32,
    };
    Ok(LoadedVerify { f, g, d, m })
}

//! `weakhopf build`: constructors writing canonical artifacts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use weakhopf::algebra::{coopposite, dual, opposite, star_cop, tensor_product, WeakHopfAlgebra};
use weakhopf::corpus;
use weakhopf::double::{quantum_double, r_bar, r_matrix, QuasiBicrossedProduct};
use weakhopf::io::{AlgebraDoc, Artifact, CliffordSpecDoc, Document, DoubleDoc, FileRef, ModuleDoc, MonoidDoc, ProvenanceDoc, RMatrixDoc};
use weakhopf::monoid::{
    assemble_clifford, check_monoid, matrix_clifford_monoid, matrix_clifford_spec, matrix_semilattice, monoid_algebra, unit_matrix_group,
    FiniteMonoid, MatrixGroupSpec,
};
use weakhopf::repr::{regular_module, trivial_module};

use crate::cache::Cache;
use crate::files::{self, Loaded};
use crate::{usage, Context};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Monoid,
    MatrixGroup,
    CliffordSpec,
    Clifford,
    Algebra,
    Dual,
    Op,
    Cop,
    StarCop,
    Tensor,
    Double,
    RMatrix,
    Module,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(value_enum)]
    kind: Kind,

    /// Built-in monoid or algebra (see `--list`).
    #[arg(long)]
    corpus: Option<String>,

    /// Monoid table to validate and normalize.
    #[arg(long)]
    input: Option<PathBuf>,

    #[arg(long)]
    modulus: Option<u64>,

    /// Clifford specification file; without it the built-in matrix specification is used.
    #[arg(long)]
    spec: Option<PathBuf>,

    #[arg(long)]
    monoid: Option<PathBuf>,

    #[arg(long)]
    algebra: Option<PathBuf>,

    /// Second tensor factor.
    #[arg(long)]
    with: Option<PathBuf>,

    #[arg(long)]
    double: Option<PathBuf>,

    /// Build `R̄` instead of `R`.
    #[arg(long)]
    bar: bool,

    /// Build the trivial (counit) module instead of the regular one.
    #[arg(long)]
    trivial: bool,

    /// List the built-in corpus names and exit.
    #[arg(long)]
    list: bool,

    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub const MONOID_NAMES: [&str; 7] = ["Sprime", "S3", "S3e", "Y", "Z2", "Z3", "S"];

pub fn corpus_monoid(name: &str) -> Result<FiniteMonoid> {
    Ok(match name {
        "Sprime" => corpus::s_prime(),
        "S3" => corpus::symmetric_group_3(),
        "S3e" => corpus::s3_with_zero(),
        "Y" => matrix_semilattice(),
        "Z2" => FiniteMonoid::cyclic(2),
        "Z3" => FiniteMonoid::cyclic(3),
        "S" => matrix_clifford_monoid()?,
        other => bail!(usage(format!("unknown corpus monoid {other:?}; known: {}", MONOID_NAMES.join(", ")))),
    })
}

fn need<'a, T>(opt: &'a Option<T>, flag: &str, kind: Kind) -> Result<&'a T> {
    opt.as_ref().ok_or_else(|| usage(format!("build {} needs --{flag}", kind.to_possible_value().unwrap().get_name())))
}

/// Collects input hashes for the provenance block.
struct Inputs(BTreeMap<String, String>);

impl Inputs {
    fn add(&mut self, role: &str, l: &Loaded) {
        self.0.insert(format!("{role}:{}", l.name()), l.sha256.clone());
    }
}

pub fn load_monoid(l: &Loaded) -> Result<FiniteMonoid> {
    match l.document() {
        Document::Monoid(doc) => Ok(doc.to_monoid()?),
        other => bail!(usage(format!("{} is a {} document, expected a monoid", l.name(), other.kind()))),
    }
}

pub fn load_algebra(l: &Loaded) -> Result<WeakHopfAlgebra> {
    match l.document() {
        Document::Algebra(doc) => Ok(doc.to_weak()?),
        other => bail!(usage(format!("{} is a {} document, expected an algebra", l.name(), other.kind()))),
    }
}

pub fn load_double(ctx: &Context, l: &Loaded) -> Result<QuasiBicrossedProduct> {
    match l.document() {
        Document::Double(doc) => Ok(doc.to_double(ctx.double_options())?),
        other => bail!(usage(format!("{} is a {} document, expected a double", l.name(), other.kind()))),
    }
}

pub fn load_spec_monoid(spec_path: &Path, r: &FileRef) -> weakhopf::error::Result<FiniteMonoid> {
    use weakhopf::error::Error;
    let path = files::relative_to(spec_path, &r.file);
    let l = files::load(&path).map_err(|e| Error::Format(format!("{e:#}")))?;
    if let Some(h) = &r.sha256 {
        if *h != l.sha256 {
            return Err(Error::Format(format!("{} changed since it was referenced (sha256 mismatch)", path.display())));
        }
    }
    match l.document() {
        Document::Monoid(doc) => doc.to_monoid(),
        other => Err(Error::Format(format!("{} is a {} document, expected a monoid", path.display(), other.kind()))),
    }
}

/// The matrix group over `Z_n`, through the cache.
pub fn matrix_group(cache: &Cache, modulus: u64) -> Result<FiniteMonoid> {
    let spec = MatrixGroupSpec::new(modulus)?;
    let key = Cache::key(&["matrix-group", &modulus.to_string()]);
    cache.get_or_insert(
        &key,
        &format!("matrix group mod {modulus}"),
        |a| match &a.document {
            Document::Monoid(doc) => doc.to_monoid().ok(),
            _ => None,
        },
        || {
            let g = unit_matrix_group(spec);
            let art = Artifact::new(Document::Monoid(MonoidDoc::from_monoid(&g)), provenance(format!("matrix-group modulus={modulus}"), BTreeMap::new()));
            Ok((g, art))
        },
    )
}

/// `D(H)` through the cache, keyed by the canonical algebra document.
pub fn cached_double(ctx: &Context, h: &WeakHopfAlgebra, source_hash: Option<&str>) -> Result<QuasiBicrossedProduct> {
    let doc = Document::Algebra(AlgebraDoc::from_weak(h)).to_json();
    let algebra_hash = files::sha256_hex(doc.as_bytes());
    let key = Cache::key(&["double", &algebra_hash, &ctx.max_terms.to_string(), &ctx.force.to_string()]);
    let opts = ctx.double_options();
    let d = ctx.cache.get_or_insert(
        &key,
        &format!("double of a {}-dimensional algebra", h.dim()),
        |a| match &a.document {
            Document::Double(doc) => doc.to_double(opts).ok(),
            _ => None,
        },
        || {
            let d = quantum_double(h, opts)?;
            let art = Artifact::new(Document::Double(DoubleDoc::from_double(&d)), provenance("double".into(), BTreeMap::new()));
            Ok((d, art))
        },
    )?;
    Ok(match source_hash {
        Some(s) => d.with_source_hash(s),
        None => d,
    })
}

fn provenance(construction: String, inputs: BTreeMap<String, String>) -> ProvenanceDoc {
    ProvenanceDoc { construction, inputs }
}

/// A path to `target` as seen from the directory of `output`.
fn reference_path(target: &Path, output: Option<&Path>) -> String {
    let abs = |p: &Path| p.canonicalize().ok();
    let out_dir = output.and_then(|o| o.parent()).map(|d| if d.as_os_str().is_empty() { Path::new(".") } else { d });
    if let (Some(t), Some(d)) = (abs(target), out_dir.and_then(abs)) {
        if let Ok(rel) = t.strip_prefix(&d) {
            return rel.display().to_string();
        }
        return t.display().to_string();
    }
    target.display().to_string()
}

pub fn run(ctx: &Context, args: BuildArgs) -> Result<()> {
    if args.list {
        println!("monoids: {}", MONOID_NAMES.join(", "));
        println!("algebras: {}", corpus::NAMES.join(", "));
        return Ok(());
    }
    let kind = args.kind;
    let mut inputs = Inputs(BTreeMap::new());
    let field = ctx.field;
    let load = |p: &PathBuf, role: &str, inputs: &mut Inputs| -> Result<Loaded> {
        let l = files::load(p)?;
        inputs.add(role, &l);
        Ok(l)
    };
    let (document, construction) = match kind {
        Kind::Monoid => {
            let (m, how) = match (&args.corpus, &args.input) {
                (Some(name), None) => (corpus_monoid(name)?, format!("monoid corpus={name}")),
                (None, Some(p)) => (load_monoid(&load(p, "monoid", &mut inputs)?)?, "monoid".to_string()),
                _ => bail!(usage("build monoid needs exactly one of --corpus, --input")),
            };
            let report = check_monoid(&m);
            if !report.passed() {
                bail!(weakhopf::error::Error::InvalidMonoid(report.to_text()));
            }
            (Document::Monoid(MonoidDoc::from_monoid(&m)), how)
        }
        Kind::MatrixGroup => {
            let n = *need(&args.modulus, "modulus", kind)?;
            let g = matrix_group(&ctx.cache, n)?;
            (Document::Monoid(MonoidDoc::from_monoid(&g)), format!("matrix-group modulus={n}"))
        }
        Kind::CliffordSpec => (Document::CliffordSpec(CliffordSpecDoc::from_spec(&matrix_clifford_spec()?)), "clifford-spec matrix".into()),
        Kind::Clifford => {
            let spec = match &args.spec {
                Some(p) => {
                    let l = load(p, "spec", &mut inputs)?;
                    match l.document() {
                        Document::CliffordSpec(doc) => doc.to_spec(&|r| load_spec_monoid(p, r))?,
                        other => bail!(usage(format!("{} is a {} document, expected a clifford-spec", l.name(), other.kind()))),
                    }
                }
                None => matrix_clifford_spec()?,
            };
            (Document::Monoid(MonoidDoc::from_monoid(&assemble_clifford(&spec)?)), "clifford".into())
        }
        Kind::Algebra => {
            let h = match (&args.corpus, &args.monoid) {
                (Some(name), None) => {
                    if let Some(h) = corpus::named(name, field) {
                        h
                    } else {
                        monoid_algebra(&corpus_monoid(name).map_err(|_| {
                            usage(format!(
                                "unknown corpus algebra {name:?}; known: {} (or a monoid name: {})",
                                corpus::NAMES.join(", "),
                                MONOID_NAMES.join(", ")
                            ))
                        })?, field)?
                    }
                }
                (None, Some(p)) => monoid_algebra(&load_monoid(&load(p, "monoid", &mut inputs)?)?, field)?,
                _ => bail!(usage("build algebra needs exactly one of --corpus, --monoid")),
            };
            let how = match &args.corpus {
                Some(name) => format!("algebra corpus={name} field={field}"),
                None => format!("monoid-algebra field={field}"),
            };
            (Document::Algebra(AlgebraDoc::from_weak(&h)), how)
        }
        Kind::Dual | Kind::Op | Kind::Cop | Kind::StarCop => {
            let h = load_algebra(&load(need(&args.algebra, "algebra", kind)?, "algebra", &mut inputs)?)?;
            let (out, name) = match kind {
                Kind::Dual => (dual(&h), "dual"),
                Kind::Op => (opposite(&h)?, "op"),
                Kind::Cop => (coopposite(&h)?, "cop"),
                _ => (star_cop(&h)?, "star-cop"),
            };
            (Document::Algebra(AlgebraDoc::from_weak(&out)), name.into())
        }
        Kind::Tensor => {
            let h = load_algebra(&load(need(&args.algebra, "algebra", kind)?, "left", &mut inputs)?)?;
            let k = load_algebra(&load(need(&args.with, "with", kind)?, "right", &mut inputs)?)?;
            (Document::Algebra(AlgebraDoc::from_weak(&tensor_product(&h, &k)?)), "tensor".into())
        }
        Kind::Double => {
            let l = load(need(&args.algebra, "algebra", kind)?, "algebra", &mut inputs)?;
            let d = cached_double(ctx, &load_algebra(&l)?, Some(&l.sha256))?;
            (Document::Double(DoubleDoc::from_double(&d)), "double".into())
        }
        Kind::RMatrix => {
            let l = load(need(&args.double, "double", kind)?, "double", &mut inputs)?;
            let d = load_double(ctx, &l)?;
            let r = if args.bar { r_bar(&d)? } else { r_matrix(&d)? };
            (Document::RMatrix(RMatrixDoc::from_r(&r)), if args.bar { "r-bar" } else { "r-matrix" }.into())
        }
        Kind::Module => {
            let (path, role) = match (&args.double, &args.algebra) {
                (Some(p), None) => (p, "double"),
                (None, Some(p)) => (p, "algebra"),
                _ => bail!(usage("build module needs exactly one of --double, --algebra")),
            };
            let l = load(path, role, &mut inputs)?;
            let base = match l.document() {
                Document::Double(_) => load_double(ctx, &l)?.algebra().clone(),
                _ => load_algebra(&l)?.into_base(),
            };
            let act = if args.trivial { trivial_module(&base) } else { regular_module(&base) };
            let r = FileRef {
                file: reference_path(path, args.output.as_deref()),
                sha256: Some(l.sha256.clone()),
            };
            (Document::Module(ModuleDoc::from_module(&act, r)), if args.trivial { "trivial-module" } else { "regular-module" }.into())
        }
    };
    let artifact = Artifact::new(document, provenance(construction, inputs.0));
    files::emit(args.output.as_deref(), &artifact.to_json())
}

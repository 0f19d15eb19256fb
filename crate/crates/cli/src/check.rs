//! `weakhopf check`: run named checks on an artifact.

use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use weakhopf::algebra::{
    check_algebra_axioms, check_almost_bialgebra, check_anti_bialgebra_morphism, check_coalgebra_axioms, check_coperfect, check_perfect,
    check_perfect_variant, check_weak_antipode, AlmostBialgebra, WeakHopfAlgebra,
};
use weakhopf::double::{
    check_bicrossed_structure, check_inverse, check_qybe, check_quasi_braided, check_quasi_cocommutative, check_regular, r_bar, r_matrix,
    QuasiBicrossedProduct, QuasiRMatrix,
};
use weakhopf::error::Error;
use weakhopf::io::Document;
use weakhopf::monoid::{assemble_clifford, check_clifford, check_monoid, check_semilattice, FiniteMonoid};
use weakhopf::pairing::{check_skew_pair, check_weak_hopf_pair, BilinearForm};
use weakhopf::report::CheckReport;
use weakhopf::repr::{
    braid_inverse_operator, braid_operator, check_braid_and_regularity, check_crossed_bimodule, check_module, crossed_to_double_module,
    double_module_to_crossed, ModuleAction,
};

use crate::build::{load_algebra, load_double, load_spec_monoid};
use crate::files::{self, Loaded};
use crate::report::ReportDocument;
use crate::{usage, Context};

#[derive(Args, Debug)]
pub struct CheckArgs {
    target: PathBuf,

    /// Comma-separated check names; defaults depend on the artifact kind.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,

    /// The double an r-matrix belongs to.
    #[arg(long)]
    double: Option<PathBuf>,

    /// Left algebra `X` of a bilinear form `X⊗A → k`.
    #[arg(long)]
    left: Option<PathBuf>,

    /// Right algebra `A` of a bilinear form.
    #[arg(long)]
    right: Option<PathBuf>,

    /// List the checks available for the target's kind and exit.
    #[arg(long)]
    list: bool,

    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Available and default checks per kind.
fn catalogue(kind: &str) -> Option<(&'static [&'static str], &'static [&'static str])> {
    Some(match kind {
        "monoid" => (&["monoid", "clifford", "semilattice"], &["monoid"]),
        "clifford-spec" => (&["assemble"], &["assemble"]),
        "algebra" => (
            &["algebra", "coalgebra", "almost-bialgebra", "weak-antipode", "anti-morphism", "perfect", "coperfect", "perfect-variant"],
            &["algebra", "coalgebra", "almost-bialgebra", "weak-antipode", "anti-morphism", "perfect", "coperfect"],
        ),
        "double" => (
            &["structure", "quasi-cocommutative", "quasi-braided", "qybe", "regular", "inverse", "braid", "crossed"],
            &["structure", "quasi-cocommutative", "quasi-braided", "qybe", "regular"],
        ),
        "r-matrix" => (&["quasi-cocommutative", "quasi-braided", "qybe"], &["quasi-cocommutative", "quasi-braided", "qybe"]),
        "form" => (&["pair", "skew-pair"], &["skew-pair"]),
        "module" => (&["module", "crossed"], &["module"]),
        _ => return None,
    })
}

/// Precondition failures become failed reports; guards become skips.
fn guarded(name: &str, r: weakhopf::error::Result<CheckReport>) -> CheckReport {
    match r {
        Ok(r) => r,
        Err(e @ Error::TooManyTerms { .. }) => CheckReport::skipped(name, e.to_string()),
        Err(e) => CheckReport::failed(name, e.to_string()),
    }
}

pub fn run(ctx: &Context, args: CheckArgs) -> Result<bool> {
    let target = files::load(&args.target)?;
    let kind = target.document().kind();
    let Some((available, defaults)) = catalogue(kind) else {
        bail!(usage(format!("no checks apply to {kind} documents")));
    };
    if args.list {
        for name in available {
            println!("{name}{}", if defaults.contains(name) { " (default)" } else { "" });
        }
        return Ok(true);
    }
    let names: Vec<String> = if args.checks.is_empty() { defaults.iter().map(|s| s.to_string()).collect() } else { args.checks.clone() };
    for n in &names {
        if !available.contains(&n.as_str()) {
            bail!(usage(format!("unknown check {n:?} for {kind} documents; available: {}", available.join(", "))));
        }
    }
    let mut doc = ReportDocument::new(&format!("check {}", names.join(",")), ctx.timings);
    doc.input(target.name(), target.sha256.clone());
    match target.document() {
        Document::Monoid(m) => check_monoid_doc(&mut doc, &m.to_monoid()?, &names),
        Document::CliffordSpec(s) => {
            let spec = s.to_spec(&|r| load_spec_monoid(&target.path, r))?;
            doc.timed(|| match assemble_clifford(&spec) {
                Ok(m) => check_clifford(&m).with_info("elements", m.len()),
                Err(e) => CheckReport::failed("assemble", e.to_string()),
            });
        }
        Document::Algebra(_) => check_algebra_doc(&mut doc, &target, &names)?,
        Document::Double(_) => {
            let d = load_double(ctx, &target)?;
            check_double(ctx, &mut doc, &d, &names);
        }
        Document::RMatrix(r) => {
            let r = r.to_r()?;
            let l = load_extra(&mut doc, args.double.as_ref(), "double", "an r-matrix")?;
            let d = load_double(ctx, &l)?;
            if r.dim() != d.dim() {
                bail!(usage(format!("r-matrix of dimension {} does not live in a double of dimension {}", r.dim(), d.dim())));
            }
            check_r(ctx, &mut doc, &d, &r, &names);
        }
        Document::Form(f) => {
            let form = f.to_form()?;
            let x = load_algebra(&load_extra(&mut doc, args.left.as_ref(), "left", "a form")?)?;
            let a = load_algebra(&load_extra(&mut doc, args.right.as_ref(), "right", "a form")?)?;
            check_form(&mut doc, &x, &a, &form, &names);
        }
        Document::Module(m) => {
            let act = m.to_module()?;
            let path = files::relative_to(&target.path, &m.algebra.file);
            let l = files::load(&path)?;
            if let Some(h) = &m.algebra.sha256 {
                if *h != l.sha256 {
                    bail!(usage(format!("{} changed since the module was built (sha256 mismatch)", path.display())));
                }
            }
            doc.input(l.name(), l.sha256.clone());
            let double = match l.document() {
                Document::Double(_) => Some(load_double(ctx, &l)?),
                _ => None,
            };
            let base = match &double {
                Some(d) => d.algebra().clone(),
                None => load_algebra(&l)?.into_base(),
            };
            if act.algebra_dim() != base.dim() {
                bail!(usage(format!("module over a {}-dimensional algebra, but {} has dimension {}", act.algebra_dim(), l.name(), base.dim())));
            }
            check_module_doc(&mut doc, &base, double.as_ref(), &act, &names);
        }
        Document::Tensor(_) => unreachable!("no catalogue entry"),
    }
    crate::files::emit(args.output.as_deref(), &doc.render(ctx.report))?;
    Ok(doc.passed())
}

fn load_extra(doc: &mut ReportDocument, path: Option<&PathBuf>, flag: &str, what: &str) -> Result<Loaded> {
    let p = path.ok_or_else(|| usage(format!("checking {what} needs --{flag}")))?;
    let l = files::load(p)?;
    doc.input(l.name(), l.sha256.clone());
    Ok(l)
}

fn check_monoid_doc(doc: &mut ReportDocument, m: &FiniteMonoid, names: &[String]) {
    for n in names {
        match n.as_str() {
            "monoid" => doc.timed(|| check_monoid(m).with_info("elements", m.len())),
            "clifford" => doc.timed(|| check_clifford(m)),
            _ => doc.timed(|| check_semilattice(m)),
        }
    }
}

fn check_algebra_doc(doc: &mut ReportDocument, target: &Loaded, names: &[String]) -> Result<()> {
    let Document::Algebra(a) = target.document() else { unreachable!() };
    let base: AlmostBialgebra = a.to_almost()?;
    let weak: Option<WeakHopfAlgebra> = match a.antipode {
        Some(_) => Some(load_algebra(target)?),
        None => None,
    };
    for n in names {
        let name = n.as_str();
        match name {
            "algebra" => doc.timed(|| check_algebra_axioms(&base)),
            "coalgebra" => doc.timed(|| check_coalgebra_axioms(&base)),
            "almost-bialgebra" => doc.timed(|| check_almost_bialgebra(&base)),
            _ => {
                let Some(h) = &weak else {
                    doc.push(CheckReport::skipped(name, "the algebra has no antipode"));
                    continue;
                };
                match name {
                    "weak-antipode" => doc.timed(|| check_weak_antipode(h)),
                    "anti-morphism" => doc.timed(|| check_anti_bialgebra_morphism(h)),
                    "perfect" => doc.timed(|| check_perfect(h)),
                    "coperfect" => doc.timed(|| check_coperfect(h)),
                    _ => doc.timed(|| guarded(name, check_perfect_variant(h))),
                }
            }
        }
    }
    Ok(())
}

fn r_pair(d: &QuasiBicrossedProduct) -> weakhopf::error::Result<(QuasiRMatrix, QuasiRMatrix)> {
    Ok((r_matrix(d)?, r_bar(d)?))
}

fn check_double(ctx: &Context, doc: &mut ReportDocument, d: &QuasiBicrossedProduct, names: &[String]) {
    let rs = r_pair(d);
    for n in names {
        let name = n.as_str();
        if name == "structure" {
            doc.timed(|| check_bicrossed_structure(d));
            continue;
        }
        let (r, rb) = match &rs {
            Ok(p) => p,
            Err(e) => {
                doc.push(CheckReport::failed(name, e.to_string()));
                continue;
            }
        };
        match name {
            "quasi-cocommutative" | "quasi-braided" | "qybe" => check_r(ctx, doc, d, r, std::slice::from_ref(n)),
            "regular" => doc.timed(|| check_regular(d, r, rb)),
            "inverse" => doc.timed(|| check_inverse(d, r, rb)),
            "braid" => doc.timed(|| {
                let act = weakhopf::repr::regular_module(d);
                let c = braid_operator(&act, r);
                guarded("braid operator", check_braid_and_regularity(&c, &braid_inverse_operator(&act, rb)))
            }),
            _ => doc.timed(|| crossed_round_trip(d, &weakhopf::repr::regular_module(d))),
        }
    }
}

fn check_r(ctx: &Context, doc: &mut ReportDocument, d: &QuasiBicrossedProduct, r: &QuasiRMatrix, names: &[String]) {
    for n in names {
        match n.as_str() {
            "quasi-cocommutative" => doc.timed(|| check_quasi_cocommutative(d, r)),
            "quasi-braided" => doc.timed(|| check_quasi_braided(d, r)),
            _ => doc.timed(|| guarded("QYBE", check_qybe(d, r, ctx.max_terms))),
        }
    }
}

fn check_form(doc: &mut ReportDocument, x: &WeakHopfAlgebra, a: &WeakHopfAlgebra, form: &BilinearForm, names: &[String]) {
    for n in names {
        match n.as_str() {
            "pair" => doc.timed(|| check_weak_hopf_pair(x, a, form).report()),
            _ => doc.timed(|| guarded("weak Hopf skew-pair", check_skew_pair(x, a, form).map(|c| c.report()))),
        }
    }
}

/// Crossed-bimodule laws of the transported structure and the round trip.
fn crossed_round_trip(d: &QuasiBicrossedProduct, act: &ModuleAction) -> CheckReport {
    let name = "crossed bimodule round trip";
    let cb = match double_module_to_crossed(d, act) {
        Ok(cb) => cb,
        Err(e) => return CheckReport::failed(name, e.to_string()),
    };
    let laws = check_crossed_bimodule(&cb);
    let back = match crossed_to_double_module(d, &cb) {
        Ok(m) if m.to_tensor() == act.to_tensor() => CheckReport::pass("double -> crossed -> double"),
        Ok(_) => CheckReport::failed("double -> crossed -> double", "the action changed"),
        Err(e) => CheckReport::failed("double -> crossed -> double", e.to_string()),
    };
    CheckReport::group(name, vec![laws, back])
}

fn check_module_doc(doc: &mut ReportDocument, base: &AlmostBialgebra, double: Option<&QuasiBicrossedProduct>, act: &ModuleAction, names: &[String]) {
    for n in names {
        match (n.as_str(), double) {
            ("module", _) => doc.timed(|| check_module(base, act).with_info("dimension", act.dim())),
            (_, Some(d)) => doc.timed(|| crossed_round_trip(d, act)),
            (name, None) => doc.push(CheckReport::skipped(name, "the module is not over a double")),
        }
    }
}

//! `weakhopf paper-suite`: the matrix Clifford monoid pipeline end to end,
//! then the desk-scale double suite.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use weakhopf::algebra::{check_anti_bialgebra_morphism, check_coperfect, check_perfect, check_weak_antipode};
use weakhopf::corpus;
use weakhopf::double::{check_closed_form, check_qybe, check_quasi_cocommutative, r_matrix, DoubleKernel};
use weakhopf::io::{Artifact, Document, MonoidDoc, ProvenanceDoc};
use weakhopf::monoid::{check_clifford, matrix_clifford_monoid, matrix_semilattice, monoid_algebra, FiniteMonoid};
use weakhopf::report::CheckReport;

use crate::build::{cached_double, matrix_group};
use crate::cache::Cache;
use crate::report::ReportDocument;
use crate::Context;

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Sampled products for the closed-form check.
    #[arg(long, default_value_t = 50)]
    samples: usize,

    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,

    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Groups in lattice order beta, gamma, rho, sigma.
const GROUPS: [(&str, u64, usize); 4] = [("beta", 2, 6), ("gamma", 4, 96), ("rho", 3, 48), ("sigma", 6, 288)];

fn failure(name: &str, e: impl std::fmt::Display) -> CheckReport {
    CheckReport::failed(name, e.to_string())
}

fn clifford_monoid(cache: &Cache) -> Result<FiniteMonoid> {
    cache.get_or_insert(
        &Cache::key(&["clifford", "matrix"]),
        "matrix Clifford monoid",
        |a| match &a.document {
            Document::Monoid(doc) => doc.to_monoid().ok(),
            _ => None,
        },
        || {
            let s = matrix_clifford_monoid()?;
            let prov = ProvenanceDoc {
                construction: "clifford matrix".into(),
                inputs: Default::default(),
            };
            let art = Artifact::new(Document::Monoid(MonoidDoc::from_monoid(&s)), prov);
            Ok((s, art))
        },
    )
}

fn group_orders(ctx: &Context, s: Option<&FiniteMonoid>) -> CheckReport {
    let name = "matrix group orders";
    let mut orders = Vec::new();
    let mut children = Vec::new();
    for (node, n, want) in GROUPS {
        match matrix_group(&ctx.cache, n) {
            Ok(g) => {
                orders.push(g.len().to_string());
                let child = format!("|G_{node}| = |U(Z_{n}^2x2)| = {want}");
                children.push(if g.len() == want { CheckReport::pass(child) } else { failure(&child, format!("order {}", g.len())) });
            }
            Err(e) => return failure(name, format!("{e:#}")),
        }
    }
    let size = s.map_or("?".to_string(), |s| s.len().to_string());
    let child = "|S| = 440";
    children.push(match s {
        Some(s) if s.len() == 440 => CheckReport::pass(child),
        _ => failure(child, format!("|S| = {size}")),
    });
    CheckReport::group(name, children).with_info("orders", format!("{}; |S|={size}", orders.join(", ")))
}

fn component_table(s: &FiniteMonoid) -> CheckReport {
    let name = "semilattice of idempotents";
    let y = matrix_semilattice();
    let comps = match s.components() {
        Ok(c) => c,
        Err(e) => return failure(name, e),
    };
    let mut idem = vec![None; y.len()];
    let mut sizes = Vec::new();
    for (e, members) in &comps {
        let node = s.label(*e).split(':').next().unwrap_or_default();
        if let Some(i) = y.index_of(node) {
            idem[i] = Some(*e);
            sizes.push(format!("{node}={}", members.len()));
        }
    }
    let Some(idem) = idem.into_iter().collect::<Option<Vec<usize>>>() else {
        return failure(name, "a lattice node has no component");
    };
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for u in 0..y.len() {
        let mut row = Vec::new();
        for v in 0..y.len() {
            let got = s.mul(idem[u], idem[v]);
            let want = idem[y.mul(u, v)];
            row.push(s.label(got).split(':').next().unwrap_or_default().to_string());
            if got != want {
                bad.push(format!("{}·{} = {}, expected {}", y.label(u), y.label(v), s.label(got), s.label(want)));
            }
        }
        rows.push(format!("{}: {}", y.label(u), row.join(" ")));
    }
    let mut r = if bad.is_empty() {
        CheckReport::pass(name)
    } else {
        bad.iter().fold(failure(name, format!("{} of 36 products differ", bad.len())), |r, b| r.with_note(b.clone()))
    };
    r = r.with_info("components", sizes.join(", "));
    for row in rows {
        r = r.with_info("row", row);
    }
    r
}

fn monoid_algebra_axioms(ctx: &Context, s: &FiniteMonoid) -> CheckReport {
    let name = "kS weak Hopf axioms";
    match monoid_algebra(s, ctx.field) {
        Ok(h) => CheckReport::group(name, vec![check_weak_antipode(&h), check_anti_bialgebra_morphism(&h), check_perfect(&h), check_coperfect(&h)])
            .with_info("dim kS", h.dim()),
        Err(e) => failure(name, e),
    }
}

fn closed_form(ctx: &Context, s: &FiniteMonoid, samples: usize, seed: u64) -> CheckReport {
    let name = "closed-form products in D(kS)";
    let run = || -> weakhopf::error::Result<CheckReport> {
        let kernel = DoubleKernel::new(&monoid_algebra(s, ctx.field)?)?;
        check_closed_form(&kernel, s, samples, seed)
    };
    match run() {
        Ok(r) => r.with_info("seed", format!("{seed:#x}")).with_info("dim D(kS)", s.len() * s.len()),
        Err(e) => failure(name, e),
    }
}

fn desk_double(ctx: &Context, label: &str, corpus_name: &str) -> CheckReport {
    let name = format!("D({label})");
    let Some(h) = corpus::named(corpus_name, ctx.field) else {
        return failure(&name, "not in the corpus");
    };
    let d = match cached_double(ctx, &h, None) {
        Ok(d) => d,
        Err(e) => return failure(&name, format!("{e:#}")),
    };
    let r = match r_matrix(&d) {
        Ok(r) => r,
        Err(e) => return failure(&name, e),
    };
    let qybe = match check_qybe(&d, &r, ctx.max_terms) {
        Ok(q) => q,
        Err(e) => CheckReport::skipped("QYBE", e.to_string()),
    };
    CheckReport::group(name, vec![check_quasi_cocommutative(&d, &r), qybe])
        .with_info("dim", d.dim())
        .with_info("R monomials", r.monomial_count())
}

pub fn run(ctx: &Context, args: SuiteArgs) -> Result<bool> {
    let mut doc = ReportDocument::new("paper-suite", ctx.timings);
    let s = clifford_monoid(&ctx.cache);
    if let Err(e) = &s {
        doc.push(failure("matrix Clifford monoid", format!("{e:#}")));
    }
    let s = s.ok();
    doc.timed(|| group_orders(ctx, s.as_ref()));
    if let Some(s) = &s {
        doc.timed(|| check_clifford(s).with_info("elements", s.len()));
        doc.timed(|| component_table(s));
        doc.push({
            let n = s.len() as u128;
            let name = "dim kS⊗(kS)^*";
            let r = if n * n == 193_600 { CheckReport::pass(name) } else { failure(name, format!("|S|^2 = {}", n * n)) };
            r.with_info("dim", n * n).with_note("computed from |S|^2; the algebra is not materialized")
        });
        doc.timed(|| monoid_algebra_axioms(ctx, s));
        doc.timed(|| closed_form(ctx, s, args.samples, args.seed));
    }
    for (label, name) in [("kS'", "kSprime"), ("kY", "kY"), ("kZ3", "kZ3"), ("kS3e⊗dual", "kS3e-tensor-dual")] {
        doc.timed(|| desk_double(ctx, label, name));
    }
    let dim = s.as_ref().map_or(0, |s| s.len() * s.len());
    doc.push(
        CheckReport::skipped("D(kS) QYBE", "out of desk scale")
            .with_info("dim D(kS)", dim)
            .with_note("the QYBE expansion of the full double of the 440-element monoid is not attempted"),
    );
    crate::files::emit(args.output.as_deref(), &doc.render(ctx.report))?;
    Ok(doc.passed())
}

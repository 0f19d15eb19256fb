//! `weakhopf inspect`: a human-readable summary of an artifact.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use weakhopf::io::{AlgebraDoc, Document};

use crate::files;

#[derive(Args, Debug)]
pub struct InspectArgs {
    target: PathBuf,

    /// Print the full multiplication table of small monoids.
    #[arg(long)]
    table: bool,
}

fn preview(labels: &[String]) -> String {
    const SHOWN: usize = 8;
    let head = labels.iter().take(SHOWN).cloned().collect::<Vec<_>>().join(", ");
    if labels.len() > SHOWN {
        format!("{head}, ... ({} more)", labels.len() - SHOWN)
    } else {
        head
    }
}

fn algebra_lines(out: &mut String, prefix: &str, a: &AlgebraDoc) -> Result<()> {
    writeln!(out, "{prefix}field: {}", a.field)?;
    writeln!(out, "{prefix}dimension: {}", a.dim())?;
    writeln!(out, "{prefix}basis: {}", preview(&a.labels))?;
    writeln!(out, "{prefix}structure constants: mul {}, comul {}", a.mul.len(), a.comul.len())?;
    match &a.antipode {
        Some(t) => writeln!(out, "{prefix}antipode: {} entries", t.len())?,
        None => writeln!(out, "{prefix}antipode: none")?,
    }
    if let Ok(h) = a.to_almost() {
        writeln!(out, "{prefix}commutative: {}, cocommutative: {}", h.is_commutative(), h.is_cocommutative())?;
    }
    Ok(())
}

pub fn run(args: InspectArgs) -> Result<()> {
    let l = files::load(&args.target)?;
    let mut out = String::new();
    writeln!(out, "{}: {} document, sha256 {}", l.name(), l.document().kind(), l.sha256)?;
    if let Some(p) = &l.artifact.provenance {
        writeln!(out, "construction: {}", p.construction)?;
        for (k, v) in &p.inputs {
            writeln!(out, "  input {k} sha256={v}")?;
        }
    }
    match l.document() {
        Document::Monoid(m) => {
            let monoid = m.to_monoid()?;
            writeln!(out, "elements: {}", monoid.len())?;
            writeln!(out, "identity: {}", monoid.label(monoid.identity()))?;
            writeln!(out, "idempotents: {}", monoid.idempotents().len())?;
            writeln!(out, "commutative: {}", monoid.is_commutative())?;
            if let Ok(comps) = monoid.components() {
                let sizes: Vec<String> = comps.iter().map(|(e, c)| format!("{}:{}", monoid.label(*e), c.len())).collect();
                writeln!(out, "Clifford components: {}", sizes.join(", "))?;
            }
            if args.table {
                for (x, row) in monoid.table_rows().iter().enumerate() {
                    let cells: Vec<&str> = row.iter().map(|&y| monoid.label(y)).collect();
                    writeln!(out, "{} | {}", monoid.label(x), cells.join(" "))?;
                }
            }
        }
        Document::CliffordSpec(s) => {
            writeln!(out, "groups: {}", s.groups.len())?;
            writeln!(out, "homomorphisms: {}", s.homs.keys().cloned().collect::<Vec<_>>().join(", "))?;
        }
        Document::Algebra(a) => algebra_lines(&mut out, "", a)?,
        Document::Double(d) => {
            writeln!(out, "double construction: {}", d.construction)?;
            if let Some(h) = &d.source_hash {
                writeln!(out, "source sha256: {h}")?;
            }
            writeln!(out, "dimension: {} = {} x {}", d.x.dim() * d.a.dim(), d.x.dim(), d.a.dim())?;
            writeln!(out, "product table: {}", if d.product.is_some() { "stored" } else { "rebuilt on load" })?;
            writeln!(out, "X:")?;
            algebra_lines(&mut out, "  ", &d.x)?;
            writeln!(out, "A:")?;
            algebra_lines(&mut out, "  ", &d.a)?;
        }
        Document::RMatrix(r) => {
            writeln!(out, "field: {}", r.field)?;
            writeln!(out, "dimension of D: {}", r.dim)?;
            writeln!(out, "monomials: {}", r.terms.len())?;
        }
        Document::Form(f) => {
            writeln!(out, "field: {}", f.field)?;
            writeln!(out, "shape: {} x {}", f.rows, f.cols)?;
            writeln!(out, "non-zero entries: {}", f.entries.len())?;
            if let Ok(b) = f.to_form() {
                writeln!(out, "rank: {}", b.rank())?;
            }
        }
        Document::Module(m) => {
            writeln!(out, "field: {}", m.field)?;
            writeln!(out, "algebra: {} (dimension {})", m.algebra.file, m.algebra_dim)?;
            writeln!(out, "dimension: {}", m.dim)?;
            writeln!(out, "non-zero action entries: {}", m.action.len())?;
        }
        Document::Tensor(t) => {
            writeln!(out, "field: {}", t.field)?;
            writeln!(out, "shape: {:?}", t.shape)?;
            writeln!(out, "non-zero entries: {}", t.entries.len())?;
        }
    }
    print!("{out}");
    Ok(())
}

use metzler_core::spectra::{decay_bound, eigenvalues, metzler_spectrum_closed, multiset_distance};
use metzler_core::{MetzlerAssembly, Result};

use crate::document::{Check, Output, ResultDocument, Table};
use crate::source::GraphSource;

pub fn run(mut doc: ResultDocument, source: &str, src: &GraphSource, tol: Option<f64>) -> Result<Output> {
    let g = &src.graph;
    doc.param("graph", source);
    let asm = MetzlerAssembly::from_digraph(g)?;
    let num = eigenvalues(&asm.a_cal)?;
    doc.result("decay_bound", decay_bound(&asm)?);
    let closed = match (g.constant_rates(), g.is_symmetric(), g.regular_degree()) {
        (Some((beta, delta)), true, Some(d)) if d >= 2 => Some(metzler_spectrum_closed(g, beta, delta)?),
        _ => None,
    };
    if let Some(c) = &closed {
        let dist = multiset_distance(&c.eigenvalues, &num.eigenvalues);
        doc.check(
            Check::within("closed-form", dist, tol.unwrap_or(1e-6)).with_detail("closed-form vs numeric spectrum"),
        );
        doc.result("closed_form", c);
    }
    let mut table = Table::new(&["re", "im"]);
    for z in &num.eigenvalues {
        table.push(vec![format!("{:e}", z.re), format!("{:e}", z.im)]);
    }
    doc.result("numeric", num);
    Ok(Output { document: doc, table })
}

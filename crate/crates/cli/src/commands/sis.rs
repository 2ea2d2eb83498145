use metzler_core::sis::{bound_report, gillespie_run, DecayOptions, DecayOutcome};
use metzler_core::Result;

use crate::document::{Check, Output, ResultDocument, Table};
use crate::source::GraphSource;

pub struct SisArgs {
    pub trials: usize,
    pub t_max: f64,
    pub options: DecayOptions,
}

pub fn run(
    mut doc: ResultDocument,
    source: &str,
    src: &GraphSource,
    args: &SisArgs,
    tol: Option<f64>,
) -> Result<Output> {
    let g = &src.graph;
    doc.param("graph", source);
    doc.param("trials", args.trials);
    doc.param("t_max", args.t_max);
    doc.param("options", args.options);
    let report = bound_report(g, args.trials, args.t_max, doc.seed, args.options)?;
    let bound = report.bound.bound;
    if let Some(exact) = report.exact {
        let slack = tol.unwrap_or(1e-8);
        doc.check(Check {
            name: "exact-respects-bound".into(),
            passed: exact >= bound - slack,
            measured: bound - exact,
            tolerance: slack,
            detail: Some("bound - exact rate; must not exceed the tolerance".into()),
        });
    }
    if let DecayOutcome::Estimate(e) = &report.estimate {
        doc.check(Check {
            name: "estimate-respects-bound".into(),
            passed: e.gamma_hat >= bound - 3.0 * e.stderr,
            measured: (bound - e.gamma_hat) / e.stderr,
            tolerance: 3.0,
            detail: Some("(bound - estimate) / stderr".into()),
        });
    }
    doc.result("report", &report);

    // Trajectory of the first trial stream, for `--format csv`.
    let mut table = Table::new(&["time", "infected"]);
    for (t, k) in gillespie_run(g, args.t_max, doc.seed)? {
        table.push(vec![format!("{t:e}"), k.to_string()]);
    }
    Ok(Output { document: doc, table })
}

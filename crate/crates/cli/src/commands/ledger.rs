use metzler_core::ledger::{discrepancy_ledger, Evidence, Verdict, CONFIRMED_BELOW};
use metzler_core::Result;

use crate::document::{to_value, Check, Output, ResultDocument, Table};

pub fn run(mut doc: ResultDocument) -> Result<Output> {
    let ledger = discrepancy_ledger()?;
    let mut table = Table::new(&["id", "verdict", "printed_error", "rederived_error"]);
    for e in &ledger {
        let verdict = to_value(e.verdict).as_str().unwrap_or_default().to_string();
        let (p, r, err) = match &e.evidence {
            Evidence::Numeric {
                printed_error,
                rederived_error,
                ..
            } => (
                format!("{printed_error:e}"),
                format!("{rederived_error:e}"),
                *rederived_error,
            ),
            Evidence::Structural { .. } => (String::new(), String::new(), 0.0),
        };
        table.push(vec![e.id.into(), verdict.clone(), p, r]);
        let mut check = Check::within(e.id, err, CONFIRMED_BELOW).with_detail(verdict);
        check.passed = e.verdict != Verdict::Unconfirmed;
        doc.check(check);
    }
    doc.result("entries", &ledger);
    Ok(Output { document: doc, table })
}

use std::fmt;
use std::str::FromStr;

use metzler_core::zeta::{
    grover_coin, identity_coin, identity_coin_zeta, limit_convergence_table, metzler_zeta_finite, metzler_zeta_limit,
    random_stochastic_coin, random_unitary_coin, walk_zeta, CoinWalk, MAX_DIRECT_DIM,
};
use metzler_core::{CMatrix, Complex64, Error, Result, ZetaValue};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::document::{to_value, Check, Output, ResultDocument, Table};

/// Successive finite-`N` differences must shrink this much per step, unless
/// already at rounding level.
const SHRINK: f64 = 10.0;
const DIFF_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinKind {
    Identity,
    Grover,
    RandomUnitary,
    RandomStochastic,
}

impl FromStr for CoinKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Self::Identity),
            "grover" => Ok(Self::Grover),
            "random-unitary" => Ok(Self::RandomUnitary),
            "random-stochastic" => Ok(Self::RandomStochastic),
            _ => Err(Error::InvalidInput(format!(
                "unknown coin `{s}` (identity, grover, random-unitary, random-stochastic)"
            ))),
        }
    }
}

impl fmt::Display for CoinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Identity => "identity",
            Self::Grover => "grover",
            Self::RandomUnitary => "random-unitary",
            Self::RandomStochastic => "random-stochastic",
        })
    }
}

impl CoinKind {
    fn build(self, d: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self {
            Self::Identity => identity_coin(d),
            Self::Grover => grover_coin(d),
            Self::RandomUnitary => random_unitary_coin(d, &mut rng),
            Self::RandomStochastic => random_stochastic_coin(d, &mut rng),
        }
    }
}

fn value_row(table: &mut Table, n: usize, z: &ZetaValue) {
    table.push(vec![
        to_value(z.method).as_str().unwrap_or_default().to_string(),
        n.to_string(),
        format!("{:e}", z.value.re),
        format!("{:e}", z.value.im),
        format!("{:e}", z.log_value.re),
        format!("{:e}", z.log_value.im),
    ]);
}

const HEADER: [&str; 6] = ["method", "n", "value_re", "value_im", "log_re", "log_im"];

#[allow(clippy::too_many_arguments)]
pub fn metzler(
    mut doc: ResultDocument,
    d: usize,
    sides: &[usize],
    beta: f64,
    delta: f64,
    u: f64,
    q: usize,
    tol: Option<f64>,
) -> Result<Output> {
    doc.param("d", d);
    doc.param("N", sides);
    doc.param("beta", beta);
    doc.param("delta", delta);
    doc.param("u", u);
    doc.param("q", q);
    let tol = tol.unwrap_or(1e-9);
    let mut table = Table::new(&HEADER);

    let mut finite = Vec::new();
    for &n in sides {
        let dim = (2 * d + 1) * n.pow(d as u32);
        if dim > MAX_DIRECT_DIM {
            continue;
        }
        let (direct, spectral) = metzler_zeta_finite(d, n, beta, delta, u)?;
        let err = (direct.value - spectral.value).norm() / direct.value.norm();
        doc.check(Check::within(format!("finite-N={n}"), err, tol).with_detail("direct vs spectral reciprocal zeta"));
        value_row(&mut table, n, &direct);
        value_row(&mut table, n, &spectral);
        finite.push(serde_json::json!({ "N": n, "direct": direct, "spectral": spectral }));
    }
    doc.result("finite", finite);

    let limit = metzler_zeta_limit(d, beta, delta, u, q)?;
    value_row(&mut table, q, &limit);
    doc.result("limit", &limit);

    let conv = limit_convergence_table(d, beta, delta, u, sides)?;
    let diffs: Vec<f64> = conv.rows.iter().filter_map(|r| r.diff).collect();
    for (i, w) in diffs.windows(2).enumerate() {
        let (prev, next) = (w[0], w[1]);
        let ok = next <= prev / SHRINK || next <= DIFF_FLOOR;
        doc.check(Check {
            name: format!("shrink-N={}", conv.rows[i + 2].n),
            passed: ok,
            measured: next / prev.max(f64::MIN_POSITIVE),
            tolerance: 1.0 / SHRINK,
            detail: Some(format!(
                "successive difference {next:e} after {prev:e}; floor {DIFF_FLOOR:e}"
            )),
        });
    }
    doc.result("convergence", &conv);
    Ok(Output { document: doc, table })
}

pub fn walk(
    mut doc: ResultDocument,
    d: usize,
    sides: &[usize],
    coin: CoinKind,
    u: Complex64,
    tol: Option<f64>,
) -> Result<Output> {
    doc.param("d", d);
    doc.param("N", sides);
    doc.param("coin", coin.to_string());
    doc.param("u", u);
    let closed_tol = tol.unwrap_or(1e-12);
    let tol = tol.unwrap_or(1e-9);
    let a = coin.build(d, doc.seed);
    let rows: Vec<Vec<Complex64>> = (0..a.nrows()).map(|i| a.row(i).iter().copied().collect()).collect();
    doc.result("coin", rows);
    let mut table = Table::new(&HEADER);
    let mut values = Vec::new();
    for &n in sides {
        let w = CoinWalk::new(d, n, a.clone())?;
        let (direct, fourier) = walk_zeta(&w, u)?;
        doc.check(
            Check::within(format!("fourier-N={n}"), (direct.value - fourier.value).norm(), tol)
                .with_detail("direct vs Fourier-product reciprocal zeta"),
        );
        let mut entry = serde_json::json!({ "N": n, "direct": direct, "fourier": fourier });
        if coin == CoinKind::Identity {
            let closed = identity_coin_zeta(d, n, u);
            doc.check(
                Check::within(format!("closed-form-N={n}"), (direct.value - closed).norm(), closed_tol)
                    .with_detail("identity coin: (1 - u^N)^(2d/N)"),
            );
            entry["closed_form"] = serde_json::json!(closed);
        }
        value_row(&mut table, n, &direct);
        value_row(&mut table, n, &fourier);
        values.push(entry);
    }
    doc.result("values", values);
    Ok(Output { document: doc, table })
}

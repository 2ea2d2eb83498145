use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use metzler_core::graph::{proposition1_residual, GraphSpec};
use metzler_core::linalg::{det_complex, max_row_sum, pencil, to_complex, to_real, RMatrix};
use metzler_core::polydet::{
    corollary_eval, ihara_zeta_recip, theorem5_poly, weinstein_aronszajn_check, CorollaryKind,
};
use metzler_core::spectra::{eigenvalues, metzler_charpoly_regular, metzler_spectrum_closed, multiset_distance};
use metzler_core::zeta::{random_unitary_coin, walk_zeta, CoinWalk};
use metzler_core::{poly_det_pencil, Complex64, Digraph, Error, MetzlerAssembly, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::document::{Check, Output, ResultDocument, Table};
use crate::source::GraphSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckName {
    Prop1,
    Thm1,
    Thm2,
    Thm4,
    Thm5,
    Cor1,
    Cor2,
    Cor3,
    Cor4,
    Cor5,
}

const ALL: [CheckName; 10] = [
    CheckName::Prop1,
    CheckName::Thm1,
    CheckName::Thm2,
    CheckName::Thm4,
    CheckName::Thm5,
    CheckName::Cor1,
    CheckName::Cor2,
    CheckName::Cor3,
    CheckName::Cor4,
    CheckName::Cor5,
];

impl CheckName {
    fn as_str(self) -> &'static str {
        match self {
            Self::Prop1 => "prop1",
            Self::Thm1 => "thm1",
            Self::Thm2 => "thm2",
            Self::Thm4 => "thm4",
            Self::Thm5 => "thm5",
            Self::Cor1 => "cor1",
            Self::Cor2 => "cor2",
            Self::Cor3 => "cor3",
            Self::Cor4 => "cor4",
            Self::Cor5 => "cor5",
        }
    }

    fn default_tolerance(self) -> f64 {
        match self {
            Self::Prop1 => 0.0,
            Self::Thm1 | Self::Thm4 => 1e-10,
            Self::Thm5 => 1e-8,
            Self::Cor5 => 1e-6,
            _ => 1e-9,
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL.iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown check `{s}`")))
    }
}

/// Expands `all` and rejects checks that do not apply to the graph.
pub fn select(names: &[String], src: &GraphSource) -> Result<Vec<CheckName>> {
    let mut out = Vec::new();
    for n in names {
        if n == "all" {
            out.extend(ALL.iter().copied().filter(|c| applicability(*c, src).is_ok()));
        } else {
            let c: CheckName = n.parse()?;
            applicability(c, src)
                .map_err(|reason| Error::InvalidInput(format!("check {c} does not apply: {reason}")))?;
            out.push(c);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn torus_shape(spec: Option<GraphSpec>) -> Option<(usize, usize)> {
    match spec? {
        GraphSpec::Torus { d, side } => Some((d, side)),
        GraphSpec::Cycle { n } => Some((1, n)),
        _ => None,
    }
}

fn applicability(c: CheckName, src: &GraphSource) -> std::result::Result<(), &'static str> {
    let g = &src.graph;
    let constant = g.constant_rates().is_some();
    let symmetric = g.is_symmetric();
    let regular = symmetric && g.regular_degree().is_some_and(|d| d >= 2);
    let ok = |cond: bool, reason| if cond { Ok(()) } else { Err(reason) };
    match c {
        CheckName::Prop1 | CheckName::Thm4 | CheckName::Thm5 => Ok(()),
        CheckName::Thm1 => ok(symmetric, "needs a symmetric digraph"),
        CheckName::Thm2 => ok(torus_shape(src.spec).is_some(), "needs a torus or cycle generator"),
        CheckName::Cor1 => ok(constant, "needs constant rates"),
        CheckName::Cor2 => ok(constant && symmetric, "needs constant rates on a symmetric digraph"),
        CheckName::Cor3 | CheckName::Cor4 | CheckName::Cor5 => ok(
            constant && regular,
            "needs constant rates on a regular symmetric digraph of degree >= 2",
        ),
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// `count` points on the circle of radius `r`, rotated off the real axis.
fn circle(count: usize, r: f64) -> Vec<Complex64> {
    (0..count)
        .map(|k| Complex64::from_polar(r, 2.0 * PI * (k as f64 + 0.25) / count as f64))
        .collect()
}

fn run_check(c: CheckName, src: &GraphSource, asm: &MetzlerAssembly, tol: f64, seed: u64) -> Result<Check> {
    let g = &src.graph;
    let name = c.as_str();
    match c {
        CheckName::Prop1 => {
            let r = proposition1_residual(asm);
            Ok(Check::within(name, r as f64, tol).with_detail("max |H - (KᵀL - J)|, exact integers"))
        }
        CheckName::Thm1 => {
            let edges = g.undirected_edges();
            let mut worst = 0.0f64;
            for k in 1..=8 {
                let u = 0.04 * k as f64 * if k % 2 == 0 { -1.0 } else { 1.0 };
                let v = ihara_zeta_recip(g.n_vertices(), &edges, u)?;
                worst = worst.max((v.edge_form - v.bass_form).abs() / v.edge_form.abs().max(1e-300));
            }
            Ok(Check::within(name, worst, tol).with_detail("edge form vs vertex form, 8 points"))
        }
        CheckName::Thm2 => {
            let (d, side) = torus_shape(src.spec).expect("checked applicability");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = CoinWalk::new(d, side, random_unitary_coin(d, &mut rng))?;
            let mut worst = 0.0f64;
            for u in circle(4, 0.3) {
                let (direct, fourier) = walk_zeta(&w, u)?;
                worst = worst.max((direct.value - fourier.value).norm());
            }
            Ok(Check::within(name, worst, tol)
                .with_detail("direct vs Fourier walk zeta, random unitary coin, |u| = 0.3"))
        }
        CheckName::Thm4 => {
            let top = to_real(&asm.k) * &asm.bp * 0.1;
            let bottom = &asm.d2p * to_real(&asm.l).transpose();
            let mut pairs = vec![(top, bottom)];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..4 {
                let (r, s) = (rng.random_range(1..=8), rng.random_range(1..=12));
                let a = RMatrix::from_fn(r, s, |_, _| rng.random_range(-0.5..0.5));
                let b = RMatrix::from_fn(s, r, |_, _| rng.random_range(-0.5..0.5));
                pairs.push((a, b));
            }
            let mut worst = 0.0f64;
            for (a, b) in &pairs {
                let (x, y) = weinstein_aronszajn_check(a, b)?;
                worst = worst.max((x - y).abs() / x.abs().max(1.0));
            }
            Ok(Check::within(name, worst, tol)
                .with_detail("det(I - AB) vs det(I - BA): graph blocks and 4 random pairs"))
        }
        CheckName::Thm5 => {
            let f = theorem5_poly(asm)?;
            let p = poly_det_pencil(&asm.a_cal)?;
            // Relative error, with an absolute floor of 1e-10 for small coefficients.
            let floor = 1e-10 / tol;
            let worst = (0..=f.degree().max(p.degree()))
                .map(|k| (f.coeff(k) - p.coeff(k)).abs() / p.coeff(k).abs().max(floor))
                .fold(0.0, f64::max);
            let mut c = Check::within(name, worst, tol).with_detail(format!(
                "coefficients of the factored form (degree {}) vs the pencil polynomial (degree {})",
                f.degree(),
                p.degree()
            ));
            c.passed &= f.degree() == p.degree();
            Ok(c)
        }
        CheckName::Cor1 | CheckName::Cor2 | CheckName::Cor3 => {
            let kind = match c {
                CheckName::Cor1 => CorollaryKind::GeneralDigraph,
                CheckName::Cor2 => CorollaryKind::Undirected,
                _ => CorollaryKind::Regular,
            };
            let (beta, delta) = g.constant_rates().expect("checked applicability");
            let a = to_complex(&asm.a_cal);
            let r = 0.5 / (1.0 + max_row_sum(&asm.a_cal));
            let mut worst = 0.0f64;
            let mut used = 0;
            for u in circle(16, r) {
                match corollary_eval(kind, g, beta, delta, u) {
                    Ok(v) => {
                        worst = worst.max(rel(v, det_complex(&pencil(&a, u))));
                        used += 1;
                    }
                    Err(Error::Pole { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            Ok(Check::within(name, worst, tol)
                .with_detail(format!("{} form vs direct determinant at {used} points", kind.name())))
        }
        CheckName::Cor4 => {
            let (beta, delta) = g.constant_rates().expect("checked applicability");
            let a = to_complex(&asm.a_cal);
            let scale = 1.0 + max_row_sum(&asm.a_cal);
            let mut worst = 0.0f64;
            for lambda in circle(8, scale) {
                let mut x = a.map(|v| -v);
                for i in 0..x.nrows() {
                    x[(i, i)] += lambda;
                }
                worst = worst.max(rel(metzler_charpoly_regular(g, beta, delta, lambda)?, det_complex(&x)));
            }
            Ok(Check::within(name, worst, tol).with_detail("characteristic polynomial vs det(λI - 𝒜) at 8 points"))
        }
        CheckName::Cor5 => {
            let (beta, delta) = g.constant_rates().expect("checked applicability");
            let closed = metzler_spectrum_closed(g, beta, delta)?;
            let num = eigenvalues(&asm.a_cal)?;
            let dist = multiset_distance(&closed.eigenvalues, &num.eigenvalues);
            Ok(Check::within(name, dist, tol).with_detail("closed-form vs numeric spectrum, matching distance"))
        }
    }
}

pub fn run(
    mut doc: ResultDocument,
    source: &str,
    src: &GraphSource,
    names: &[String],
    tol: Option<f64>,
) -> Result<Output> {
    let checks = select(names, src)?;
    let g: &Digraph = &src.graph;
    let asm = MetzlerAssembly::from_digraph(g)?;
    doc.param("graph", source);
    doc.param("checks", checks.iter().map(|c| c.as_str()).collect::<Vec<_>>());
    if let Some(t) = tol {
        doc.param("tol", t);
    }
    doc.result(
        "graph",
        serde_json::json!({
            "n": asm.n, "m": asm.m, "m0": asm.m0, "m1": asm.m1,
            "constant_rates": g.constant_rates(),
        }),
    );
    let mut table = Table::new(&["check", "passed", "measured", "tolerance"]);
    for c in checks {
        let check = run_check(c, src, &asm, tol.unwrap_or(c.default_tolerance()), doc.seed)?;
        table.push(vec![
            check.name.clone(),
            check.passed.to_string(),
            format!("{:e}", check.measured),
            format!("{:e}", check.tolerance),
        ]);
        doc.check(check);
    }
    Ok(Output { document: doc, table })
}

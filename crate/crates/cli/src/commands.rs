//! The per-point subcommands.
//!
//! Every row carries a `status`. Singular points (`hicks_undefined`,
//! `allen_undefined`) are normal output; `domain_error` rows make the run
//! exit 1 and `numerical_error` rows (a finite-difference stencil leaving
//! the domain) exit 3, after all rows are written.

use std::io::Write;

use prodgeom::classify::{classify_allen_singular, classify_ces, classify_developable, ClassificationVerdict, Family};
use prodgeom::elasticity::{allen, bordered_hessian, ces_probe, hicks, hicks_from_jet, relative_bordered_det};
use prodgeom::geometry::{curvature_from_jet, gauss_kronecker};
use prodgeom::jets::{fd_jet, jet_multivariate, max_relative_error, Jet2N, StepPolicy};
use prodgeom::sampling::{log_uniform_points, rng_from_seed};
use prodgeom::{eval, Error, FunctionSpec};

use crate::args::{ClassifyArgs, ElasticityArgs, PointArgs};
use crate::output::{coordinate_cells, coordinate_columns, Cell, Table};
use crate::points::load_points;
use crate::{load_spec, CliError, EXIT_DOMAIN, EXIT_NUMERICAL, EXIT_OK};

/// Tracks the worst row failure seen so far.
#[derive(Default)]
struct Outcome {
    domain: bool,
    numerical: bool,
}

impl Outcome {
    /// Status for a failed computation; logs the error with its context.
    fn failure(&mut self, err: &mut dyn Write, context: &str, e: &Error) -> &'static str {
        let _ = writeln!(err, "{context}: {e}");
        match e {
            Error::Domain(_) => {
                self.domain = true;
                "domain_error"
            }
            _ => {
                self.numerical = true;
                "numerical_error"
            }
        }
    }

    fn exit_code(&self) -> i32 {
        if self.numerical {
            EXIT_NUMERICAL
        } else if self.domain {
            EXIT_DOMAIN
        } else {
            EXIT_OK
        }
    }
}

/// Error context naming a row by its 1-based position and coordinates.
fn at(row: usize, point: &[f64]) -> String {
    format!("point {} {point:?}", row + 1)
}

fn columns(n: usize, quantities: &[&str]) -> Vec<String> {
    let mut cols = coordinate_columns(n);
    cols.extend(quantities.iter().map(|q| q.to_string()));
    cols
}

fn fd_of(spec: &FunctionSpec, point: &[f64]) -> Result<Jet2N, Error> {
    fd_jet(|x| eval(spec, x), point, StepPolicy::default())
}

pub fn eval_cmd(args: &PointArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let spec = load_spec(&args.spec)?;
    let n = spec.dim();
    let points = load_points(&args.points, n)?;
    let mut quantities = vec!["value"];
    if args.fd_check {
        quantities.extend(["fd_gradient_error", "fd_hessian_error"]);
    }
    quantities.push("status");
    let mut table = Table::new(args.output.format, columns(n, &quantities), out)?;
    let mut outcome = Outcome::default();

    for (r, x) in points.iter().enumerate() {
        let mut cells = coordinate_cells(x);
        let width = quantities.len() - 1;
        let status = match jet_multivariate(&spec, x) {
            Ok(jet) => {
                cells.push(Cell::Num(jet.value));
                if args.fd_check {
                    match fd_of(&spec, x) {
                        Ok(fd) => {
                            cells.push(Cell::Num(max_relative_error(&jet.gradient, &fd.gradient)));
                            cells.push(Cell::Num(max_relative_error(jet.hessian.iter(), fd.hessian.iter())));
                            "ok"
                        }
                        Err(e) => {
                            cells.extend([Cell::Null, Cell::Null]);
                            outcome.failure(err, &at(r, x), &e)
                        }
                    }
                } else {
                    "ok"
                }
            }
            Err(e) => {
                cells.extend(std::iter::repeat(Cell::Null).take(width));
                outcome.failure(err, &at(r, x), &e)
            }
        };
        cells.push(Cell::text(status));
        table.row(&cells)?;
    }
    table.finish()?;
    Ok(outcome.exit_code())
}

pub fn curvature_cmd(args: &PointArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let spec = load_spec(&args.spec)?;
    let n = spec.dim();
    let points = load_points(&args.points, n)?;
    let tol = args.output.tol;
    let mut quantities = vec!["value", "omega", "det_hessian", "gk", "developable"];
    if args.fd_check {
        quantities.extend(["fd_det_hessian", "fd_gk"]);
    }
    quantities.push("status");
    let mut table = Table::new(args.output.format, columns(n, &quantities), out)?;
    let mut outcome = Outcome::default();

    for (r, x) in points.iter().enumerate() {
        let mut cells = coordinate_cells(x);
        let computed = eval(&spec, x).and_then(|v| Ok((v, gauss_kronecker(&spec, x)?)));
        let status = match computed {
            Ok((value, rec)) => {
                cells.extend([
                    Cell::Num(value),
                    Cell::Num(rec.omega),
                    Cell::Num(rec.hessian_det),
                    Cell::Num(rec.gk_curvature),
                    Cell::Bool(rec.gk_curvature.abs() <= tol),
                ]);
                if args.fd_check {
                    match fd_of(&spec, x) {
                        Ok(fd) => {
                            let fd_rec = curvature_from_jet(&fd);
                            cells.extend([Cell::Num(fd_rec.hessian_det), Cell::Num(fd_rec.gk_curvature)]);
                            "ok"
                        }
                        Err(e) => {
                            cells.extend([Cell::Null, Cell::Null]);
                            outcome.failure(err, &at(r, x), &e)
                        }
                    }
                } else {
                    "ok"
                }
            }
            Err(e) => {
                cells.extend(std::iter::repeat(Cell::Null).take(quantities.len() - 1));
                outcome.failure(err, &at(r, x), &e)
            }
        };
        cells.push(Cell::text(status));
        table.row(&cells)?;
    }
    table.finish()?;
    Ok(outcome.exit_code())
}

/// Parses `i,j[;i,j...]` into 1-based pairs within `1..=n`.
pub fn parse_pairs(text: &str, n: usize) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(';')
        .map(|pair| {
            let bad = || CliError::input(format!("--pairs: '{pair}' is not i,j with distinct indices in 1..={n}"));
            let (i, j) = pair.split_once(',').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            if i == j || i == 0 || j == 0 || i > n || j > n {
                return Err(bad());
            }
            Ok((i, j))
        })
        .collect()
}

fn is_undefined(e: &Error) -> bool {
    matches!(
        e,
        Error::HicksUndefined { .. } | Error::AllenUndefined { .. } | Error::ZeroGradient { .. }
    )
}

pub fn elasticity_cmd(args: &ElasticityArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let base = &args.base;
    let spec = load_spec(&base.spec)?;
    let n = spec.dim();
    if n < 2 {
        return Err(CliError::input("elasticity needs a spec with at least two variables"));
    }
    let pairs = match &args.pairs {
        Some(text) => parse_pairs(text, n)?,
        None => (1..=n).flat_map(|i| ((i + 1)..=n).map(move |j| (i, j))).collect(),
    };
    let points = load_points(&base.points, n)?;
    let mut quantities = vec!["i", "j", "hicks", "allen", "bordered_det"];
    if base.fd_check {
        quantities.push("fd_hicks");
    }
    quantities.push("status");
    let mut table = Table::new(base.output.format, columns(n, &quantities), out)?;
    let mut outcome = Outcome::default();

    for (r, x) in points.iter().enumerate() {
        let fd = if base.fd_check { Some(fd_of(&spec, x)) } else { None };
        for &(i, j) in &pairs {
            let mut cells = coordinate_cells(x);
            cells.extend([Cell::Int(i), Cell::Int(j)]);
            let h = hicks(&spec, x, i, j);
            let a = allen(&spec, x, i, j);
            let det = bordered_hessian(&spec, x).map(|(_, d)| d);
            let hard = [h.as_ref().err(), a.as_ref().err(), det.as_ref().err()]
                .into_iter()
                .flatten()
                .find(|e| !is_undefined(e))
                .cloned();
            let status = match hard {
                Some(e) => {
                    cells.extend(std::iter::repeat(Cell::Null).take(quantities.len() - 3));
                    outcome.failure(err, &at(r, x), &e)
                }
                None => {
                    cells.extend([
                        Cell::opt(h.as_ref().ok().copied()),
                        Cell::opt(a.as_ref().ok().copied()),
                        Cell::opt(det.as_ref().ok().copied()),
                    ]);
                    let mut status = if h.is_err() {
                        "hicks_undefined"
                    } else if a.is_err() {
                        "allen_undefined"
                    } else {
                        "ok"
                    };
                    match &fd {
                        Some(Ok(jet)) => cells.push(Cell::opt(hicks_from_jet(jet, x, i, j).ok())),
                        Some(Err(e)) => {
                            cells.push(Cell::Null);
                            status = outcome.failure(err, &at(r, x), e);
                        }
                        None => {}
                    }
                    status
                }
            };
            cells.push(Cell::text(status));
            table.row(&cells)?;
        }
    }
    table.finish()?;
    Ok(outcome.exit_code())
}

/// Numeric evidence for a verdict: the probe name, its value and whether it
/// agrees with the verdict at `tol`.
fn confirm(
    spec: &FunctionSpec,
    verdict: &ClassificationVerdict,
    check: &str,
    points: &[Vec<f64>],
    tol: f64,
) -> Result<(&'static str, f64, bool), Error> {
    match check {
        "developable" => {
            let mut max = 0.0f64;
            for p in points {
                max = max.max(gauss_kronecker(spec, p)?.gk_curvature.abs());
            }
            let claimed = matches!(verdict.family, Family::Thm31A | Family::Thm31B);
            Ok(("max_abs_gk", max, claimed == (max <= tol)))
        }
        "allen_singular" => {
            let mut max = 0.0f64;
            for p in points {
                max = max.max(relative_bordered_det(spec, p)?.abs());
            }
            let claimed = matches!(verdict.family, Family::Thm41A | Family::Thm41B);
            Ok(("max_relative_bordered_det", max, claimed == (max <= tol)))
        }
        _ => {
            let probe = ces_probe(spec, points, tol)?;
            let claimed = matches!(verdict.family, Family::Thm51A | Family::Thm51B | Family::Thm51C);
            Ok(("hicks_spread", probe.spread, claimed == probe.is_constant))
        }
    }
}

pub fn classify_cmd(args: &ClassifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let spec = load_spec(&args.spec)?;
    let n = spec.dim();
    let points = match &args.points {
        Some(source) => load_points(source, n)?,
        None => log_uniform_points(&mut rng_from_seed(args.seed), n, 20, 0.5, 2.0),
    };
    let tol = args.output.tol;
    let cols = ["check", "family", "certificate", "notes", "probe", "probe_value", "confirmed", "status"];
    let mut table = Table::new(args.output.format, cols.iter().map(|c| c.to_string()).collect(), out)?;
    let mut outcome = Outcome::default();

    type Classifier = fn(&FunctionSpec) -> prodgeom::Result<ClassificationVerdict>;
    let checks: [(&str, Classifier); 3] = [
        ("developable", classify_developable),
        ("allen_singular", classify_allen_singular),
        ("ces", classify_ces),
    ];
    for (check, classifier) in checks {
        // a spec error means the check does not apply to this kind of spec
        let verdict = match classifier(&spec) {
            Ok(v) => v,
            Err(Error::Spec(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        let mut cells = vec![
            Cell::text(check),
            Cell::text(verdict.family.as_str()),
            Cell::Json(serde_json::to_value(&verdict.certificate).expect("certificates serialize")),
            Cell::text(verdict.notes.clone()),
        ];
        let status = match confirm(&spec, &verdict, check, &points, tol) {
            Ok((probe, value, confirmed)) => {
                cells.extend([Cell::text(probe), Cell::Num(value), Cell::Bool(confirmed)]);
                "ok"
            }
            Err(e) => {
                cells.extend([Cell::Null, Cell::Null, Cell::Null]);
                outcome.failure(err, &format!("{check} confirmation"), &e)
            }
        };
        cells.push(Cell::text(status));
        table.row(&cells)?;
    }
    table.finish()?;
    Ok(outcome.exit_code())
}

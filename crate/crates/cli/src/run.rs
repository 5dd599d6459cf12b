use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::Rational64;
use rayon::prelude::*;

use equikh::algebra::{Field, F2};
use equikh::complex::{build_cube, scan_reduce, verify_mirror_duality, verify_reduced_mirror_duality, ComplexError, ScanOptions};
use equikh::corpus;
use equikh::diagram::LinkDiagram;
use equikh::frobenius::{check_axioms, check_delooping, elementary_degree_check, self_dual_iso};
use equikh::invariant::{rasmussen_s_crosscheck, sweep, GrT, InvariantError, Mode, Prepared, RationalT, Settings};

use crate::config::RunConfig;
use crate::record::{CheckRow, Flags, InputEcho, ResultRecord, SelftestRow, Status, Timing, ValueRow};
use crate::CliError;

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match &e {
            InvariantError::BadT(_)
            | InvariantError::Diagram(_)
            | InvariantError::Complex(ComplexError::CrossingCap { .. } | ComplexError::NoBasepoint | ComplexError::Diagram(_)) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

fn echo(d: &LinkDiagram, cfg: &RunConfig) -> InputEcho {
    InputEcho {
        pd: d.to_string(),
        crossings: d.ncrossings(),
        components: d.ncomponents(),
        basepoint: d.basepoint(),
        field: cfg.field.to_string(),
        mode: match cfg.mode {
            Mode::Scan => "scan".into(),
            Mode::Cube => "cube".into(),
        },
    }
}

fn evaluate<F: Field>(p: &Prepared<F>, ts: &[RationalT]) -> Result<Vec<GrT>, InvariantError> {
    ts.par_iter().map(|t| p.s(*t)).collect()
}

fn flags(ts: &[RationalT], full: &[GrT], red: Option<&[GrT]>) -> Flags {
    let at: BTreeMap<RationalT, Rational64> = full.iter().map(|g| (g.t, g.value)).collect();
    let symmetric = at.iter().all(|(t, v)| at.get(&t.reflect()).is_none_or(|w| w == v));
    let q = ts.iter().fold(1i64, |acc, t| num_integer::lcm(acc, t.denom() as i64));
    let rational = full.iter().all(|g| (g.value * q).is_integer());
    let stable = full.iter().chain(red.unwrap_or_default()).all(|g| g.stable);
    let reduced_bound = red.map(|r| r.iter().zip(full).all(|(a, b)| !(a.stable && b.stable) || a.value <= b.value + 2));
    Flags { symmetric, rational, stable, reduced_bound }
}

pub fn compute<F: Field>(d: &LinkDiagram, cfg: &RunConfig) -> Result<ResultRecord, CliError> {
    let start = Instant::now();
    let full = Prepared::<F>::new(d, &cfg.settings(false))?;
    let red = if cfg.reduced { Some(Prepared::<F>::new(d, &cfg.settings(true))?) } else { None };
    let prepared = start.elapsed();
    let values = evaluate(&full, &cfg.t)?;
    let reduced = red.as_ref().map(|p| evaluate(p, &cfg.t)).transpose()?;
    let s_f = if d.ncomponents() == 1 && d.ncrossings() <= cfg.max_crossings {
        Some(rasmussen_s_crosscheck::<F>(d, cfg.max_crossings)?)
    } else {
        None
    };
    let evaluated = start.elapsed() - prepared;
    let rows = values
        .iter()
        .enumerate()
        .map(|(k, g)| ValueRow {
            t: g.t.to_string(),
            value: g.value.to_string(),
            stable: g.stable,
            reduced_value: reduced.as_ref().map(|r| r[k].value.to_string()),
            reduced_stable: reduced.as_ref().map(|r| r[k].stable),
        })
        .collect();
    Ok(ResultRecord {
        input: echo(d, cfg),
        flags: flags(&cfg.t, &values, reduced.as_deref()),
        values: rows,
        s_f,
        localized_ranks: full.localized.clone(),
        verification: None,
        timing: cfg.timing.then_some(Timing { prepare_ms: prepared.as_millis(), evaluate_ms: evaluated.as_millis() }),
    })
}

fn algebra_checks<F: Field>() -> Vec<CheckRow> {
    let degrees = || -> Result<String, String> {
        for k in 0..=8 {
            elementary_degree_check::<F>(Rational64::new(k, 4), 3)?;
        }
        Ok("all four elementary maps at t = k/4".into())
    };
    vec![
        CheckRow::new("frobenius axioms", check_axioms::<F>().map(|_| "multiplication, comultiplication, counit, involution".into())),
        CheckRow::new("delooping", check_delooping::<F>().map(|_| "split and merge are inverse".into())),
        CheckRow::new("self-duality", self_dual_iso::<F>().map(|_| "intertwiner identities".into())),
        CheckRow::new("elementary degrees", degrees()),
    ]
}

/// Every applicable check on one diagram. Failures become rows, never errors.
pub fn verify<F: Field>(d: &LinkDiagram, cfg: &RunConfig) -> Vec<CheckRow> {
    let mut rows = algebra_checks::<F>();
    let small = d.ncrossings() <= cfg.max_crossings;
    let scanned = scan_reduce::<F>(d, &ScanOptions::default()).map_err(|e| e.to_string()).map(|x| x.0);
    rows.push(CheckRow::new(
        "complex (scan)",
        scanned.as_ref().map_err(Clone::clone).and_then(|c| c.check().map(|_| format!("d^2 = 0 and homogeneous, rank {}", c.total_rank())).map_err(|e| e.to_string())),
    ));
    if small {
        let cube = build_cube::<F>(d, cfg.max_crossings).map_err(|e| e.to_string());
        rows.push(CheckRow::new(
            "complex (cube)",
            cube.and_then(|c| c.complex.check().map(|_| format!("d^2 = 0 and homogeneous, rank {}", c.complex.total_rank())).map_err(|e| e.to_string())),
        ));
        rows.push(CheckRow::new(
            "mirror duality",
            verify_mirror_duality::<F>(d).map(|_| "intertwiner is a graded chain isomorphism".into()).map_err(|e| e.to_string()),
        ));
        if d.basepoint().is_some() {
            rows.push(CheckRow::new(
                "reduced mirror duality",
                verify_reduced_mirror_duality::<F>(d).map(|_| "intertwiner is a graded chain isomorphism".into()).map_err(|e| e.to_string()),
            ));
        } else {
            rows.push(CheckRow::skip("reduced mirror duality", "no basepoint"));
        }
    } else {
        for c in ["complex (cube)", "mirror duality", "reduced mirror duality"] {
            rows.push(CheckRow::skip(c, "above the crossing cap"));
        }
    }
    let prep = Prepared::<F>::new(d, &cfg.settings(false)).map_err(|e| e.to_string());
    let expected = 1usize << d.ncomponents();
    rows.push(CheckRow::new(
        "localized rank",
        prep.as_ref().map_err(Clone::clone).and_then(|p| {
            let total: usize = p.localized.values().sum();
            let by_degree = format!("{:?}", p.localized);
            if total == expected {
                Ok(format!("{total} = 2^{} in degrees {by_degree}", d.ncomponents()))
            } else {
                Err(format!("{total} != {expected}, degrees {by_degree}"))
            }
        }),
    ));
    let q = cfg.q.unwrap_or(crate::config::DEFAULT_Q);
    rows.push(CheckRow::new(
        "symmetry",
        prep.as_ref().map_err(Clone::clone).and_then(|p| {
            let prof = sweep(p, q).map_err(|e| e.to_string())?;
            if prof.symmetric {
                Ok(format!("s_t = s_(2-t) on the 1/{q} grid"))
            } else {
                Err(format!("asymmetric on the 1/{q} grid"))
            }
        }),
    ));
    if d.ncrossings() <= 6 && small {
        let cube = Settings { mode: Mode::Cube, ..cfg.settings(false) };
        let scan = Settings { mode: Mode::Scan, ..cfg.settings(false) };
        let run = |s: &Settings| Prepared::<F>::new(d, s).and_then(|p| sweep(&p, q)).map_err(|e| e.to_string());
        let agree = run(&scan).and_then(|a| {
            let b = run(&cube)?;
            if a == b {
                Ok(format!("identical on the 1/{q} grid"))
            } else {
                Err("scan and cube profiles differ".into())
            }
        });
        rows.push(CheckRow::new("scan vs cube", agree));
    } else {
        rows.push(CheckRow::skip("scan vs cube", "more than 6 crossings"));
    }
    rows
}

/// Known constant profiles, or `None` where only symmetry is checked.
fn expectations() -> Vec<(&'static str, LinkDiagram, u32, Option<i64>)> {
    let known: BTreeMap<&str, (u32, i64)> = [
        ("unknot", (8, 0)),
        ("unknot+kink", (8, 0)),
        ("unknot-kink", (8, 0)),
        ("trefoil", (8, 2)),
        ("trefoil-left", (8, -2)),
        ("trefoil+kink", (8, 2)),
        ("trefoil+unknot", (8, 3)),
        ("T(3,-4)", (2, -6)),
    ]
    .into_iter()
    .collect();
    corpus::all()
        .into_iter()
        .map(|(name, d)| {
            let (q, v) = known.get(name).map(|(q, v)| (*q, Some(*v))).unwrap_or((8, None));
            (name, d, q, v)
        })
        .collect()
}

/// The bundled corpus over F2.
pub fn selftest() -> Vec<SelftestRow> {
    expectations()
        .into_iter()
        .map(|(name, d, q, expected)| {
            let prof = Prepared::<F2>::new(&d, &Settings::default()).and_then(|p| sweep(&p, q));
            let (values, symmetric, ok) = match prof {
                Ok(p) => {
                    let vals: Vec<String> = p.points.iter().map(|x| x.value.to_string()).collect();
                    let hit = expected.is_none_or(|v| p.points.iter().all(|x| x.value == Rational64::from_integer(v)));
                    (vals.join(","), p.symmetric, hit && p.symmetric)
                }
                Err(e) => (e.to_string(), false, false),
            };
            SelftestRow {
                name: name.into(),
                crossings: d.ncrossings(),
                field: "f2".into(),
                values,
                expected,
                symmetric,
                status: if ok { Status::Pass } else { Status::Fail },
            }
        })
        .collect()
}

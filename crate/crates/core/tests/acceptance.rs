//! End-to-end checks on the regression corpus. One line per criterion; exits 1 on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Rational64;

use equikh::algebra::{Field, F2, Q};
use equikh::complex::{build_cube, scan_reduce, verify_mirror_duality, verify_reduced_mirror_duality, ScanOptions};
use equikh::corpus;
use equikh::diagram::LinkDiagram;
use equikh::frobenius::{check_axioms, check_delooping, elementary_degree_check, self_dual_iso};
use equikh::invariant::{rasmussen_s_crosscheck, s_tilde_t, sweep, Mode, PLProfile, Prepared, RationalT, Settings};

type Check = Result<String, String>;

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn profile<F: Field>(d: &LinkDiagram, mode: Mode, q: u32) -> Result<PLProfile, String> {
    profile_with::<F>(d, &Settings { mode, ..Settings::default() }, q)
}

fn profile_with<F: Field>(d: &LinkDiagram, s: &Settings, q: u32) -> Result<PLProfile, String> {
    let p = Prepared::<F>::new(d, s).map_err(|e| e.to_string())?;
    sweep(&p, q).map_err(|e| e.to_string())
}

fn constant(p: &PLProfile, v: i64) -> Result<(), String> {
    match p.points.iter().find(|x| x.value != r(v)) {
        Some(x) => Err(format!("s_{} = {}, expected {v}", x.t, x.value)),
        None => Ok(()),
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let e = start.elapsed();
    if e < limit {
        Ok(())
    } else {
        Err(format!("took {e:?}, limit {limit:?}"))
    }
}

fn unknot() -> Check {
    let start = Instant::now();
    for d in [corpus::unknot(), corpus::unknot_positive_kink()] {
        constant(&profile::<Q>(&d, Mode::Scan, 8)?, 0)?;
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!("0 and 1 crossing diagrams give 0 on the 1/8 grid ({:?})", start.elapsed()))
}

fn trefoil() -> Check {
    let start = Instant::now();
    let d = corpus::trefoil();
    let p = profile::<Q>(&d, Mode::Scan, 8)?;
    constant(&p, 2)?;
    if !p.points[0].stable {
        return Err("s_0 did not stabilize".into());
    }
    within(Duration::from_secs(10), start)?;
    let sf = rasmussen_s_crosscheck::<Q>(&d, 12).map_err(|e| e.to_string())?;
    if sf != 2 {
        return Err(format!("s_F = {sf}"));
    }
    Ok(format!("s_t = 2, s_0 stable, s_F = 2 ({:?})", start.elapsed()))
}

fn torus() -> Check {
    let start = Instant::now();
    let d = corpus::torus_3_m4();
    let p = Prepared::<F2>::new(&d, &Settings::default()).map_err(|e| e.to_string())?;
    for t in ["0", "1/2", "1", "3/2", "2"] {
        let t: RationalT = t.parse().unwrap();
        let v = p.s(t).map_err(|e| e.to_string())?;
        if v.value != r(-6) {
            return Err(format!("s_{t} = {}", v.value));
        }
    }
    within(Duration::from_secs(600), start)?;
    Ok(format!("s_t = -6 at 0, 1/2, 1, 3/2, 2 over F2 ({:?})", start.elapsed()))
}

fn localized_ranks() -> Check {
    let cases = [
        ("unknot", corpus::unknot(), 2),
        ("trefoil", corpus::trefoil(), 2),
        ("hopf", corpus::hopf(), 4),
        ("unlink2", corpus::unlink2(), 4),
    ];
    for (name, d, want) in cases {
        let p = Prepared::<Q>::new(&d, &Settings::default()).map_err(|e| e.to_string())?;
        let total: usize = p.localized.values().sum();
        if total != want {
            return Err(format!("{name}: rank {total}, expected {want}"));
        }
        if name == "trefoil" && p.localized.keys().ne([0].iter()) {
            return Err(format!("trefoil: degrees {:?}", p.localized));
        }
    }
    Ok("unknot 2, trefoil 2 in degree 0, hopf 4, unlink2 4".into())
}

fn symmetry() -> Check {
    for (name, d) in corpus::all() {
        let p = profile_for(&d, false)?;
        if !p.symmetric {
            return Err(format!("{name} is not symmetric"));
        }
    }
    Ok(format!("{} corpus diagrams symmetric on the 1/8 grid", corpus::all().len()))
}

fn disjoint_union() -> Check {
    constant(&profile::<Q>(&corpus::trefoil_plus_unknot(), Mode::Scan, 8)?, 3)?;
    Ok("s_t = 3 on the 1/8 grid".into())
}

fn connected_sum() -> Check {
    let p = Prepared::<Q>::new(&corpus::trefoil_sum_trefoil(), &Settings::default()).map_err(|e| e.to_string())?;
    let mut vals = Vec::new();
    for t in ["1/2", "1", "3/2"] {
        let t: RationalT = t.parse().unwrap();
        let v = p.s(t).map_err(|e| e.to_string())?.value;
        if v < r(4) || v > r(6) {
            return Err(format!("s_{t} = {v}"));
        }
        vals.push(v.to_string());
    }
    Ok(format!("s_t = {} at 1/2, 1, 3/2", vals.join(", ")))
}

fn properties_over<F: Field>() -> Result<(), String> {
    check_axioms::<F>()?;
    check_delooping::<F>()?;
    self_dual_iso::<F>()?;
    for k in 0..=8 {
        elementary_degree_check::<F>(Rational64::new(k, 4), 3)?;
    }
    for (name, d) in corpus::all() {
        let (scanned, _) = scan_reduce::<F>(&d, &ScanOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        scanned.check().map_err(|e| format!("{name} (scan): {e}"))?;
        if d.ncrossings() <= 6 {
            let cube = build_cube::<F>(&d, 12).map_err(|e| format!("{name}: {e}"))?;
            cube.complex.check().map_err(|e| format!("{name} (cube): {e}"))?;
        }
    }
    for d in [corpus::unknot_positive_kink(), corpus::trefoil()] {
        verify_mirror_duality::<F>(&d).map_err(|e| format!("duality: {e:?}"))?;
        verify_reduced_mirror_duality::<F>(&d.with_basepoint(1).unwrap()).map_err(|e| format!("reduced duality: {e:?}"))?;
    }
    Ok(())
}

fn properties() -> Check {
    properties_over::<Q>().map_err(|e| format!("over Q: {e}"))?;
    properties_over::<F2>().map_err(|e| format!("over F2: {e}"))?;
    Ok("algebra axioms, d^2 = 0, homogeneity, degree bounds, delooping, duality over Q and F2".into())
}

fn oracle() -> Check {
    let mut n = 0;
    for (name, d) in corpus::all() {
        if d.ncrossings() > 6 {
            continue;
        }
        let a = profile::<Q>(&d, Mode::Scan, 8)?;
        let b = profile::<Q>(&d, Mode::Cube, 8)?;
        if a != b {
            return Err(format!("{name}: scan and cube differ"));
        }
        n += 1;
    }
    Ok(format!("{n} diagrams agree on the 1/8 grid"))
}

fn reduced() -> Check {
    let s = Settings::default();
    let u0 = corpus::unknot().with_basepoint(1).unwrap();
    let u1 = corpus::unknot_positive_kink().with_basepoint(1).unwrap();
    for t in RationalT::grid(8) {
        let a = s_tilde_t::<Q>(&u0, t, &s).map_err(|e| e.to_string())?.value;
        let b = s_tilde_t::<Q>(&u1, t, &s).map_err(|e| e.to_string())?.value;
        if a != b {
            return Err(format!("based unknots differ at {t}: {a} vs {b}"));
        }
    }
    let mut n = 0;
    for (name, d) in corpus::all() {
        if d.ncomponents() != 1 || d.ncrossings() == 0 {
            continue;
        }
        let d = d.with_basepoint(d.edge_labels()[0]).unwrap();
        let full = profile_for(&d, false)?;
        let red = profile_for(&d, true)?;
        for (x, y) in red.points.iter().zip(&full.points) {
            if x.value > y.value + 2 {
                return Err(format!("{name}: reduced {} > s + 2 = {} at {}", x.value, y.value + 2, x.t));
            }
        }
        n += 1;
    }
    Ok(format!("based unknots agree; bound holds on {n} knots"))
}

/// Q up to six crossings, F2 beyond.
fn profile_for(d: &LinkDiagram, reduced: bool) -> Result<PLProfile, String> {
    let s = Settings { reduced, ..Settings::default() };
    if d.ncrossings() > 6 {
        profile_with::<F2>(d, &s, 8)
    } else {
        profile_with::<Q>(d, &s, 8)
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("unknot", unknot),
        ("right-handed trefoil", trefoil),
        ("T(3,-4)", torus),
        ("localized ranks", localized_ranks),
        ("symmetry", symmetry),
        ("disjoint union", disjoint_union),
        ("connected sum", connected_sum),
        ("property suites", properties),
        ("scan vs cube", oracle),
        ("reduced theory", reduced),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

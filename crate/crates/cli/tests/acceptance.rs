//! Acceptance gate: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use colorlie_core::algebra::{check_jacobi, check_symmetries, from_associative, Element, GradedAlgebra, Kind, Matrix};
use colorlie_core::constructions::*;
use colorlie_core::factor::{validate_factor, Bicharacter};
use colorlie_core::grading::AbelianGroup;
use colorlie_core::oscillator::{differential_realization, lambda_decoloration_check, quon_matrix_units, quon_realization};
use colorlie_core::report::VerificationReport;
use colorlie_core::scalar::CycloScalar;
use colorlie_core::spec_file::AssociativeSpecFile;

type Outcome = Result<String, String>;
/// Name, check, and optional runtime limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exhaustive_pass(r: &VerificationReport) -> Result<(), String> {
    ensure(r.passed(), || format!("{r}"))?;
    ensure(!r.is_sampled(), || format!("{} was sampled", r.name))
}

fn super_z2() -> Bicharacter {
    Bicharacter::new(AbelianGroup::cyclic(2), 2, vec![vec![1]]).unwrap()
}

fn trivial_gl(m: usize) -> GradedAlgebra {
    build_color_gl(&ColorGlSpec::enumerated(vec![m], Bicharacter::trivial(AbelianGroup::trivial())).unwrap())
        .unwrap()
        .0
}

fn factor_axioms() -> Outcome {
    let g = AbelianGroup::new(vec![3, 3]).unwrap();
    let good = Bicharacter::new(g.clone(), 3, vec![vec![0, 1], vec![-1, 0]]).unwrap();
    let r = validate_factor(&good);
    exhaustive_pass(&r)?;
    let pairs = r.identity("N(a,b)N(b,a)=1").map(|i| i.checks);
    let triples = r.identity("N(a,b+c)=N(a,b)N(a,c)").map(|i| i.checks);
    ensure(pairs == Some(81) && triples == Some(729), || format!("pairs {pairs:?}, triples {triples:?}"))?;
    let bad = validate_factor(&Bicharacter::new(g, 3, vec![vec![0, 1], vec![1, 0]]).unwrap());
    let c = bad
        .counterexamples
        .iter()
        .find(|c| c.identity == "N(a,b)N(b,a)=1")
        .ok_or("mutated factor passed axiom 1")?;
    Ok(format!("81 pairs, 729 triples; mutated witness ({})", c.witness.join(", ")))
}

fn color_gl() -> Outcome {
    let spec = ColorGlSpec::enumerated(vec![1, 1, 1], Bicharacter::trivial(AbelianGroup::cyclic(3))).unwrap();
    let (a, _) = build_color_gl(&spec).map_err(|e| e.to_string())?;
    exhaustive_pass(&check_symmetries(&a, None))?;
    let j = check_jacobi(&a, None);
    exhaustive_pass(&j)?;
    ensure(j.checks_run == 729, || format!("{} Jacobi triples", j.checks_run))?;
    Ok("9^3 Jacobi triples".into())
}

fn mat222() -> Outcome {
    let (a, _) = build_mat_order3(2, 2, 2, false).map_err(|e| e.to_string())?;
    exhaustive_pass(&check_symmetries(&a, None))?;
    let j = check_jacobi(&a, None);
    exhaustive_pass(&j)?;
    for g in [1, 2] {
        let n = format!("cyclic Y,{{|Y..Y|}} (grade {g})");
        let c = j.identity(&n).map(|i| i.checks);
        ensure(c == Some(12u64.pow(4)), || format!("{n}: {c:?}"))?;
    }
    let env = from_associative(
        Kind::LieOrderF,
        Bicharacter::trivial(AbelianGroup::trivial()),
        &mat_associative(2, 2, 2).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    ensure(env == a, || "differs from the block matrix envelope".into())?;
    Ok(format!("{} checks incl. 12^4 per grade; equals envelope", j.checks_run))
}

fn iso3() -> Outcome {
    let a = build_iso3_poincare(4).map_err(|e| e.to_string())?;
    let j = check_jacobi(&a, None);
    exhaustive_pass(&j)?;
    ensure(j.identities.len() == 4, || format!("{} identities", j.identities.len()))?;
    let v = |l: &str| a.element(l).unwrap();
    let p = |l: &str, c: i64| Element::basis(a.index_of(l).unwrap(), a.root_order()).scaled(&a.scalar(c));
    ensure(a.f_bracket(&[v("V0"), v("V0"), v("V0")]).unwrap() == p("P0", 3), || "{V0,V0,V0} != 3P0".into())?;
    ensure(a.bracket(&v("L0_1"), &v("P0")).unwrap() == p("P1", -1), || "[L01,P0] != -P1".into())?;
    Ok(format!("{} checks, spot values exact", j.checks_run))
}

fn clifford_reps() -> Outcome {
    for n in 2..=5u32 {
        let (cl, rep) = build_generalized_clifford(n, 2).map_err(|e| e.to_string())?;
        let rep = rep.map_err(|e| e.to_string())?;
        let r1 = &rep.matrices[cl.generator(0)];
        let r2 = &rep.matrices[cl.generator(1)];
        let zeta = CycloScalar::root_of_unity(n, 1);
        ensure(r1.mul(r2) == r2.mul(r1).scaled(&zeta), || format!("commutation fails at n={n}"))?;
        let id = Matrix::identity(rep.dimension, n);
        for r in [r1, r2] {
            ensure(r.pow(n, n) == id, || format!("rho(e)^{n} != 1"))?;
        }
    }
    Ok("n = 2..5".into())
}

fn decoloration() -> Outcome {
    let mut notes = Vec::new();
    for (m, budget) in [(1, None), (2, Some(20_000))] {
        let a = tensor_clifford(&trivial_gl(m), 3, 2).map_err(|e| e.to_string())?;
        let sigma = default_multiplier(a.factor()).map_err(|e| e.to_string())?;
        let d = decolor(&a, &sigma).map_err(|e| e.to_string())?;
        ensure(d.factor().is_trivial(), || "factor not trivial".into())?;
        let j = check_jacobi(&d, budget);
        ensure(j.passed(), || format!("{j}"))?;
        ensure(j.is_sampled() == budget.is_some(), || "unexpected sampling mode".into())?;
        ensure(recolor(&d, &sigma, a.factor().clone(), a.kind()).map_err(|e| e.to_string())? == a, || {
            "recoloring does not restore the table".into()
        })?;
        notes.push(match j.sample_seed {
            Some(seed) => format!("gl({m}) sampled {} checks seed {seed:#x}", j.checks_run),
            None => format!("gl({m}) full {} checks", j.checks_run),
        });
    }
    Ok(notes.join("; "))
}

fn quons() -> Outcome {
    let mut total = 0;
    for n in 1..=6 {
        let (q, e) = quon_matrix_units(n).map_err(|e| e.to_string())?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs = q.multiply(&e[i][j], &e[k][l]);
                        let rhs = if j == k { e[i][l].clone() } else { Default::default() };
                        ensure(lhs == rhs, || format!("n={n}: e^{i}_{j} e^{k}_{l}"))?;
                        total += 1;
                    }
                }
            }
        }
    }
    let (a, rep) = build_mat_order3(1, 1, 1, false).map_err(|e| e.to_string())?;
    let r = quon_realization(&a, &rep).map_err(|e| e.to_string())?;
    ensure(r.report.passed(), || format!("{}", r.report))?;
    ensure(r.report.identities.iter().any(|i| i.name.starts_with("{|y..y|}") && i.checks > 0), || {
        "no trilinear constants checked".into()
    })?;
    Ok(format!("{total} unit products; mat(1,1,1) realization {} checks", r.report.checks_run))
}

fn oscillator() -> Outcome {
    let (a, rep) = build_color_gl(&ColorGlSpec::enumerated(vec![1, 1], super_z2()).unwrap()).map_err(|e| e.to_string())?;
    let r = differential_realization(&a, &rep, 1).map_err(|e| e.to_string())?;
    ensure(r.report.passed(), || format!("{}", r.report))?;
    ensure(r.report.identities.len() == 3 && r.report.identities.iter().all(|i| i.checks > 0), || {
        format!("{}", r.report)
    })?;
    Ok(format!("3 relations, {} checks", r.report.checks_run))
}

fn lambda() -> Outcome {
    let a = tensor_clifford(&trivial_gl(1), 3, 2).map_err(|e| e.to_string())?;
    let r1 = lambda_decoloration_check(&a, 3).map_err(|e| e.to_string())?;
    exhaustive_pass(&r1)?;
    let b = clifford_tensor_gl(&ColorGlSpec::enumerated(vec![1, 1], super_z2()).unwrap()).map_err(|e| e.to_string())?;
    let r2 = lambda_decoloration_check(&b, 3).map_err(|e| e.to_string())?;
    exhaustive_pass(&r2)?;
    Ok(format!("{} + {} checks", r1.checks_run, r2.checks_run))
}

fn colorlie(args: &[&str], threads: Option<&str>) -> Result<(i32, String), String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_colorlie"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("RAYON_NUM_THREADS", t);
    }
    let o = cmd.output().map_err(|e| e.to_string())?;
    Ok((o.status.code().unwrap_or(-1), String::from_utf8_lossy(&o.stdout).into_owned()))
}

fn cli() -> Outcome {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let path = |n: &str| -> PathBuf { dir.path().join(n) };
    let s = |p: &Path| p.to_str().unwrap().to_string();

    let assoc = AssociativeSpecFile::from_associative(
        Kind::LieOrderF,
        &Bicharacter::trivial(AbelianGroup::trivial()),
        &mat_associative(1, 2, 1).map_err(|e| e.to_string())?,
    );
    fs::write(path("assoc.json"), assoc.to_json()).map_err(|e| e.to_string())?;
    let builds: Vec<(&str, Vec<String>)> = vec![
        ("color_gl", vec!["--sizes".into(), "1,1,1".into(), "--group".into(), "3".into()]),
        ("clifford", vec!["--n".into(), "3".into(), "--p".into(), "2".into()]),
        ("tensor_clifford", vec!["--sizes".into(), "2".into()]),
        ("mat3", vec!["--sizes".into(), "1,1,1".into()]),
        ("iso3", vec!["--dim".into(), "4".into()]),
        ("adjoint3", vec!["--sizes".into(), "2".into()]),
        ("color3_family", vec!["--sizes".into(), "1,1".into()]),
        ("decolor", vec!["--input".into(), s(&path("tensor_clifford.json"))]),
        ("from_associative", vec!["--input".into(), s(&path("assoc.json"))]),
    ];
    for (name, params) in &builds {
        let out = s(&path(&format!("{name}.json")));
        let mut args = vec!["build", name];
        args.extend(params.iter().map(String::as_str));
        args.extend(["-o", &out]);
        let (code, _) = colorlie(&args, None)?;
        ensure(code == 0, || format!("build {name} exited {code}"))?;
        let (code, _) = colorlie(&["verify", &out], None)?;
        ensure(code == 0, || format!("verify {name} exited {code}"))?;
    }

    let mat = fs::read_to_string(path("mat3.json")).map_err(|e| e.to_string())?;
    let mut v: serde_json::Value = serde_json::from_str(&mat).map_err(|e| e.to_string())?;
    let num = &mut v["bilinear"][0]["value"][0]["scalar"][0]["num"];
    *num = (-num.as_i64().ok_or("no numerator")?).into();
    fs::write(path("corrupt.json"), v.to_string()).map_err(|e| e.to_string())?;
    let (code, out) = colorlie(&["verify", &s(&path("corrupt.json"))], None)?;
    ensure(code == 1 && out.contains("counterexample for"), || format!("mutation exited {code}"))?;

    fs::write(path("nonsense.json"), "nonsense").map_err(|e| e.to_string())?;
    let (code, _) = colorlie(&["verify", &s(&path("nonsense.json"))], None)?;
    ensure(code == 2, || format!("malformed input exited {code}"))?;

    let mut reports = Vec::new();
    for (k, threads) in [None, Some("1"), Some("8"), None].into_iter().enumerate() {
        let rp = s(&path(&format!("report{k}.json")));
        let (code, _) = colorlie(&["verify", &s(&path("tensor_clifford.json")), "--budget", "5000", "--report", &rp], threads)?;
        ensure(code == 0, || format!("sampled verify exited {code}"))?;
        reports.push(fs::read(&rp).map_err(|e| e.to_string())?);
    }
    ensure(reports.windows(2).all(|w| w[0] == w[1]), || "reports differ between runs".into())?;
    Ok(format!("{} constructions round trip; mutation 1; malformed 2; reports identical", builds.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 factor axioms", factor_axioms, Some(1)),
        ("2 color gl(1,1,1) over Z3", color_gl, Some(5)),
        ("3 mat(2,2,2) order-3 Jacobi", mat222, Some(60)),
        ("4 iso3 Poincare order 3", iso3, None),
        ("5 generalized Clifford reps", clifford_reps, None),
        ("6 decoloration", decoloration, None),
        ("7 quons", quons, Some(10)),
        ("8 oscillator realization", oscillator, None),
        ("9 lambda decoloration", lambda, None),
        ("10 command line", cli, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(s) => Err(format!("took {elapsed:.2?}, limit {s} s")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

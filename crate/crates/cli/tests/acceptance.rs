//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use bmwcert::job::{run_job, JobConfig, Mode};
use bmwcert_core::bmw::{
    check_intertwining, detect_nu, factor_pairings, factor_pairings_gauged, kappa_of, skew_inverse,
    skew_inverse_mirror, xy_matrices, RMatrixSystem,
};
use bmwcert_core::families::{
    build_standard, expected_pairings, family_spec, prepare_family, validate_twist, Series,
    TwistSpec,
};
use bmwcert_core::scalar::parse;
use bmwcert_core::{
    BmwError, FamilyError, Field, FieldMatrix, LaurentPoly, Rational, Scalar, TensorOperator,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestError, TestRunner};
use serde_json::Value;

type Check = Result<String, String>;

const FAMILIES: [(&str, usize); 5] = [("so", 3), ("so", 4), ("so", 5), ("sp", 2), ("sp", 4)];

const REQUIRED_CHECKS: &[&str] = &[
    "yang-baxter",
    "braid.far-commute",
    "bmw.cubic",
    "bmw.eigen-left",
    "bmw.eigen-right",
    "bmw.kappa-rinv",
    "bmw.kappa-square",
    "bmw.krk",
    "bmw.krinvk",
    "bmw.kk-rinv",
    "bmw.kk-up",
    "bmw.kk-down",
    "bmw.kkk-up",
    "bmw.kkk-down",
    "bmw.krk-up",
    "bmw.krinvk-up",
    "skew.left",
    "skew.right",
    "skew.c-trace",
    "skew.d-trace",
    "psi.c-left",
    "psi.c-right",
    "psi.d-left",
    "psi.d-right",
    "cd.c-trace",
    "cd.d-trace",
    "cd.commute",
    "rank.k",
    "trace.k-d",
    "trace.k-c",
    "trace.d-rinv",
    "cd.product",
    "dc.product",
    "trace.dk",
    "trace.d",
    "trace.c",
    "pairing.factor",
    "xy.inverse",
    "charpoly.reciprocity",
    "charpoly.det-identity",
    "rtt.lemma",
];

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn p(s: &str) -> Scalar {
    parse(s).unwrap()
}

fn series(name: &str) -> Series {
    name.parse().unwrap()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
    elapsed: Duration,
}

fn bmwcert(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_bmwcert"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        elapsed: start.elapsed(),
    }
}

fn json(run: &Run) -> Result<Value, String> {
    serde_json::from_str(&run.stdout)
        .map_err(|e| format!("report is not JSON ({e}); stderr: {}", run.stderr))
}

fn check_vector(report: &Value) -> Vec<(String, bool)> {
    report["checks"]
        .as_array()
        .map(|a| {
            a.iter()
                .map(|c| {
                    (
                        c["id"].as_str().unwrap_or("").to_string(),
                        c["pass"].as_bool().unwrap_or(false),
                    )
                })
                .collect()
        })
        .unwrap_or_default()
}

fn write_twist(dir: &Path, name: &str, rows: &[Vec<String>]) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::json!({ "d": rows }).to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

fn so4_twist_rows() -> Vec<Vec<String>> {
    ["q", "1", "1", "q^-1"]
        .iter()
        .map(|x| vec![x.to_string(); 4])
        .collect()
}

fn sp2_twist_rows() -> Vec<Vec<String>> {
    vec![vec!["1".into(), "q".into()], vec!["1".into(), "1".into()]]
}

fn family_certification() -> Check {
    let mut detail = Vec::new();
    for (s, n) in FAMILIES {
        let dim = n.to_string();
        let run = bmwcert(&["verify", "--family", s, "--dim", &dim, "--report", "json"]);
        let report = json(&run)?;
        ensure(run.code == 0, format!("{s}_{n}: exit {}", run.code))?;
        ensure(
            report["status"] == "pass",
            format!("{s}_{n}: status {}", report["status"]),
        )?;
        let checks = check_vector(&report);
        if let Some((id, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(format!("{s}_{n}: {id} fails"));
        }
        for id in REQUIRED_CHECKS {
            ensure(
                checks.iter().any(|(c, _)| c == id),
                format!("{s}_{n}: check {id} missing"),
            )?;
        }
        ensure(
            report["derived"]["rank_K"] == 1,
            format!("{s}_{n}: rank K = {}", report["derived"]["rank_K"]),
        )?;
        ensure(
            report["derived"]["epsilon"].is_i64(),
            format!("{s}_{n}: epsilon not computed"),
        )?;
        let limit = if n <= 4 {
            Duration::from_secs(60)
        } else {
            Duration::from_secs(600)
        };
        ensure(
            run.elapsed <= limit,
            format!("{s}_{n}: took {:?}", run.elapsed),
        )?;
        detail.push(format!(
            "{s}_{n} {} checks {:.2}s",
            checks.len(),
            run.elapsed.as_secs_f64()
        ));
    }
    Ok(detail.join(", "))
}

fn nu_values() -> Check {
    for n in 3..=5 {
        let r = build_standard(Series::So, n).unwrap().r().clone();
        let nu = detect_nu(&r, &Scalar::q()).map_err(|e| e.to_string())?;
        ensure(
            nu == Scalar::q_pow(1 - n as i32),
            format!("so_{n}: detected {nu}"),
        )?;
    }
    for n in [2usize, 4] {
        let r = build_standard(Series::Sp, n).unwrap().r().clone();
        let nu = detect_nu(&r, &Scalar::q()).map_err(|e| e.to_string())?;
        let expected = -Scalar::q_pow(-(n as i32) - 1);
        ensure(
            nu == expected,
            format!("sp_{n}: detected {nu}, expected {expected}"),
        )?;
        let run = bmwcert(&[
            "verify",
            "--family",
            "sp",
            "--dim",
            &n.to_string(),
            "--report",
            "json",
        ]);
        let report = json(&run)?;
        let flagged = report["notes"].as_array().is_some_and(|a| {
            a.iter()
                .any(|x| x.as_str().is_some_and(|t| t.contains("-1-2N")))
        });
        ensure(
            flagged,
            format!("sp_{n}: report does not flag the exponent notation"),
        )?;
    }
    Ok("so_3..5 = q^(1-N), sp_2/sp_4 = -q^(-N-1), sp reports flag -q^(-1-2N)".into())
}

fn derived_scalar(report: &Value, key: &str) -> Result<Scalar, String> {
    let text = report["derived"][key]
        .as_str()
        .ok_or(format!("{key} missing"))?;
    parse(text).map_err(|e| e.to_string())
}

fn spot_values() -> Check {
    let so3 = json(&bmwcert(&[
        "verify", "--family", "so", "--dim", "3", "--report", "json",
    ]))?;
    ensure(derived_scalar(&so3, "mu")? == p("q + 1 + q^-1"), "so_3 mu")?;
    ensure(
        derived_scalar(&so3, "trace_C")? == p("q^-1 + q^-2 + q^-3"),
        "so_3 Tr C",
    )?;
    ensure(
        derived_scalar(&so3, "trace_D")? == p("q^-1 + q^-2 + q^-3"),
        "so_3 Tr D",
    )?;
    let sp2 = json(&bmwcert(&[
        "verify", "--family", "sp", "--dim", "2", "--report", "json",
    ]))?;
    ensure(derived_scalar(&sp2, "mu")? == p("-(q^2 + q^-2)"), "sp_2 mu")?;
    ensure(
        derived_scalar(&sp2, "trace_D")? == p("q^-1 + q^-5"),
        "sp_2 Tr D",
    )?;
    let skew =
        skew_inverse(build_standard(Series::Sp, 2).unwrap().r()).map_err(|e| e.to_string())?;
    let cd = skew.c.mul(&skew.d).unwrap();
    ensure(
        cd == FieldMatrix::identity(2).scale(&p("q^-6")),
        format!("sp_2 CD = {:?}", cd.diagonal()),
    )?;
    Ok("so_3 mu, Tr C, Tr D; sp_2 mu, Tr D, CD = q^-6 I".into())
}

fn standard_pairings() -> Check {
    for (s, n) in FAMILIES {
        let sys = build_standard(series(s), n).unwrap();
        let kappa = kappa_of(&sys).map_err(|e| e.to_string())?;
        let pair = factor_pairings(&kappa).map_err(|e| e.to_string())?;
        let expected = expected_pairings(&family_spec(series(s), n).unwrap());
        let c = pair
            .gauge_ratio(&expected)
            .ok_or(format!("{s}_{n}: no common gauge scalar"))?;
        let x = xy_matrices(&pair).map_err(|e| e.to_string())?.x;
        ensure(
            x == FieldMatrix::identity(n),
            format!("{s}_{n}: X is not I"),
        )?;
        let _ = c;
    }
    Ok("closed-form g, gbar agree up to gauge and X = I for all five families".into())
}

fn twist_suite() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("sp", 2usize, sp2_twist_rows(), vec!["q^-1", "q"]),
        ("so", 4, so4_twist_rows(), vec!["q^-2", "1", "1", "q^2"]),
    ];
    let mut detail = Vec::new();
    for (s, n, rows, x_expected) in cases {
        let path = write_twist(dir.path(), &format!("{s}{n}.json"), &rows);
        let run = bmwcert(&[
            "verify",
            "--family",
            s,
            "--dim",
            &n.to_string(),
            "--twist",
            &path,
            "--report",
            "json",
        ]);
        let report = json(&run)?;
        ensure(run.code == 0, format!("{s}_{n} twisted: exit {}", run.code))?;
        let checks = check_vector(&report);
        if let Some((id, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(format!("{s}_{n} twisted: {id} fails"));
        }
        for id in [
            "twist.compat",
            "twist.closed-form",
            "xy.closed-form",
            "pairing.closed-form",
        ] {
            ensure(
                checks.iter().any(|(c, ok)| c == id && *ok),
                format!("{s}_{n} twisted: {id} missing"),
            )?;
        }
        let xs: Vec<Scalar> = report["derived"]["X_diag"]
            .as_array()
            .ok_or("X_diag missing")?
            .iter()
            .map(|v| p(v.as_str().unwrap()))
            .collect();
        // d_{i'i} / d_{ii'} from the twist rows, independent of the pipeline.
        let d: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|x| p(x)).collect())
            .collect();
        let oracle: Vec<Scalar> = (0..n)
            .map(|i| d[n - 1 - i][i].checked_div(&d[i][n - 1 - i]).unwrap())
            .collect();
        ensure(
            xs == oracle,
            format!("{s}_{n}: X_diag {xs:?} differs from d_(i'i)/d_(ii')"),
        )?;
        ensure(
            xs == x_expected.iter().map(|x| p(x)).collect::<Vec<_>>(),
            format!("{s}_{n}: unexpected X"),
        )?;
        ensure(
            xs.iter().any(|x| *x != xs[0]),
            format!("{s}_{n}: X is scalar"),
        )?;
        ensure(
            report["derived"]["epsilon"] == 1,
            format!("{s}_{n}: epsilon {}", report["derived"]["epsilon"]),
        )?;
        let det = xs.iter().fold(Scalar::one(), |a, b| a * b);
        ensure(det == Scalar::one(), format!("{s}_{n}: det X = {det}"))?;
        detail.push(format!(
            "{s}_{n} X = diag({})",
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    Ok(detail.join("; "))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i32..=3, -4i64..=4), 0..4).prop_map(|t| {
        LaurentPoly::from_terms(t.into_iter().map(|(e, c)| (e, Rational::from_i64(c))))
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (
        laurent(),
        laurent().prop_filter("nonzero", |x| !x.is_zero()),
    )
        .prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

fn property_suites() -> Check {
    let cases = 128;
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    let mut names: Vec<&str> = Vec::new();
    fn run<T: std::fmt::Debug>(
        names: &mut Vec<&'static str>,
        name: &'static str,
        r: Result<(), TestError<T>>,
    ) -> Result<(), String> {
        names.push(name);
        r.map_err(|e| format!("{name}: {e}"))
    }

    let kappas: Vec<_> = [
        build_standard(Series::So, 3).unwrap(),
        build_standard(Series::Sp, 2).unwrap(),
        {
            let d = TwistSpec {
                d: vec![vec![p("1"), p("q")], vec![p("1"), p("1")]],
            };
            prepare_family(Series::Sp, 2, Some(&d)).unwrap().system
        },
    ]
    .iter()
    .map(|s| kappa_of(s).unwrap())
    .collect();
    run(
        &mut names,
        "gauge invariance",
        runner.run(
            &(0usize..3, scalar().prop_filter("nonzero", |c| !c.is_zero())),
            |(k, c)| {
                let base = xy_matrices(&factor_pairings(&kappas[k]).unwrap()).unwrap();
                let gauged = xy_matrices(&factor_pairings_gauged(&kappas[k], &c).unwrap()).unwrap();
                prop_assert_eq!(gauged, base);
                Ok(())
            },
        ),
    )?;
    run(
        &mut names,
        "field axioms",
        runner.run(&(scalar(), scalar(), scalar()), |(a, b, c)| {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            Ok(())
        }),
    )?;
    let s: Rational = "3/2".parse().unwrap();
    run(
        &mut names,
        "evaluate homomorphism",
        runner.run(&(scalar(), scalar()), |(a, b)| {
            let (Ok(ea), Ok(eb)) = (a.evaluate(&s), b.evaluate(&s)) else {
                return Ok(());
            };
            prop_assert_eq!((&a + &b).evaluate(&s).unwrap(), &ea + &eb);
            prop_assert_eq!((&a * &b).evaluate(&s).unwrap(), &ea * &eb);
            Ok(())
        }),
    )?;
    let twisted_p = |n: usize, d: &[LaurentPoly]| {
        let entries = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| {
                (
                    vec![j, i],
                    vec![i, j],
                    Scalar::from_laurent(d[(i - 1) * 3 + j - 1].clone()),
                )
            });
        TensorOperator::from_entries(n, 2, entries).unwrap()
    };
    let weights = || prop::collection::vec(laurent().prop_filter("nonzero", |x| !x.is_zero()), 9);
    run(
        &mut names,
        "CD = DC for skew-invertible non-BMW inputs",
        runner.run(&(2usize..=3, weights()), |(n, d)| {
            let r = twisted_p(n, &d);
            let skew = skew_inverse(&r).unwrap();
            let sys = RMatrixSystem::new(Scalar::q(), r, Scalar::one()).unwrap();
            let outcomes = check_intertwining(&sys, &skew);
            prop_assert!(outcomes.iter().all(|o| o.pass));
            prop_assert_eq!(skew.c.mul(&skew.d).unwrap(), skew.d.mul(&skew.c).unwrap());
            Ok(())
        }),
    )?;
    run(
        &mut names,
        "uniqueness of the skew inverse",
        runner.run(&(2usize..=3, weights()), |(n, d)| {
            let r = twisted_p(n, &d);
            prop_assert_eq!(skew_inverse(&r).unwrap(), skew_inverse_mirror(&r).unwrap());
            Ok(())
        }),
    )?;
    Ok(format!(
        "{} suites x {cases} cases: {}",
        names.len(),
        names.join(", ")
    ))
}

fn negative_controls() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let identity = dir.path().join("identity.json");
    let entries: Vec<Value> = (1..=3)
        .flat_map(|i| {
            (1..=3).map(move |j| serde_json::json!({"out": [i, j], "in": [i, j], "coeff": "1"}))
        })
        .collect();
    std::fs::write(
        &identity,
        serde_json::json!({"dim": 3, "entries": entries}).to_string(),
    )
    .unwrap();
    let run = bmwcert(&[
        "verify",
        "--input",
        identity.to_str().unwrap(),
        "--report",
        "json",
    ]);
    let report = json(&run)?;
    ensure(
        run.code == 1 && report["status"] == "aborted",
        format!("identity: exit {}, status {}", run.code, report["status"]),
    )?;
    let reason = report["reason"].as_str().unwrap_or("");
    ensure(
        reason == BmwError::NotSkewInvertible.to_string(),
        format!("identity: reason {reason:?}"),
    )?;
    ensure(
        matches!(
            skew_inverse(&TensorOperator::<Scalar>::identity(3, 2)),
            Err(BmwError::NotSkewInvertible)
        ),
        "identity: library",
    )?;

    let perm = RMatrixSystem::new(
        Scalar::q(),
        TensorOperator::permutation(3, 2, 1, 2).unwrap(),
        Scalar::one(),
    )
    .unwrap();
    ensure(
        matches!(kappa_of(&perm), Err(BmwError::KappaNotIdempotentScaled)),
        "P: kappa accepted",
    )?;

    let run = bmwcert(&[
        "verify", "--family", "sp", "--dim", "2", "--nu", "q^-3", "--report", "json",
    ]);
    let report = json(&run)?;
    ensure(
        run.code == 1 && report["status"] == "fail",
        format!("wrong nu: exit {}", run.code),
    )?;
    let eigen = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "bmw.eigen-left")
        .ok_or("eigen check missing")?;
    ensure(
        eigen["pass"] == false && eigen["witness"].is_object(),
        "wrong nu: R K = nu K not failing with a witness",
    )?;

    let bad = write_twist(
        dir.path(),
        "bad.json",
        &[
            vec!["q".into(), "1".into(), "1".into()],
            vec!["1".into(), "1".into(), "1".into()],
            vec!["1".into(), "1".into(), "1".into()],
        ],
    );
    let run = bmwcert(&["verify", "--family", "so", "--dim", "3", "--twist", &bad]);
    ensure(
        run.code == 2 && run.stderr.contains("invalid twist parameters"),
        format!("invalid twist: exit {}", run.code),
    )?;
    let d = TwistSpec {
        d: vec![
            vec![p("q"), p("1"), p("1")],
            vec![p("1"); 3],
            vec![p("1"); 3],
        ],
    };
    ensure(
        matches!(
            validate_twist(&d),
            Err(FamilyError::InvalidTwistParameters(_))
        ),
        "invalid twist: library",
    )?;
    Ok("identity aborts NotSkewInvertible, P rejected, wrong nu fails R K = nu K, bad twist exits 2".into())
}

fn numeric_shadowing() -> Check {
    let mut detail = Vec::new();
    let mut worst = f64::INFINITY;
    for (s, n) in FAMILIES {
        let dim = n.to_string();
        let sym = json(&bmwcert(&[
            "verify", "--family", s, "--dim", &dim, "--report", "json",
        ]))?;
        let num = json(&bmwcert(&[
            "verify", "--family", s, "--dim", &dim, "--at-s", "3/2", "--report", "json",
        ]))?;
        ensure(
            check_vector(&sym) == check_vector(&num),
            format!("{s}_{n}: numeric pass/fail vector differs"),
        )?;
        ensure(
            sym["status"] == num["status"],
            format!("{s}_{n}: status differs"),
        )?;

        let cfg = JobConfig::family(series(s), n);
        let timed = |cfg: &JobConfig| {
            let start = Instant::now();
            for _ in 0..5 {
                run_job(cfg).unwrap();
            }
            start.elapsed().as_secs_f64()
        };
        let t_sym = timed(&cfg);
        let t_num = timed(&JobConfig {
            mode: Mode::Numeric("3/2".parse().unwrap()),
            ..cfg.clone()
        });
        let ratio = t_sym / t_num;
        worst = worst.min(ratio);
        detail.push(format!("{s}_{n} x{ratio:.1}"));
    }
    let soft = if worst >= 10.0 { "met" } else { "not met" };
    Ok(format!(
        "pass/fail vectors agree; speed-up {} (soft target >= 10x {soft})",
        detail.join(", ")
    ))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 8] = [
        ("family certification", family_certification),
        ("nu values", nu_values),
        ("closed-form spot values", spot_values),
        ("standard pairings", standard_pairings),
        ("twist suite", twist_suite),
        ("property suites", property_suites),
        ("negative controls", negative_controls),
        ("numeric shadowing", numeric_shadowing),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or(e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or("panic".into()))
        });
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

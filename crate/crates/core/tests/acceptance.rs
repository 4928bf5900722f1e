//! Exit criteria. Runs without the libtest harness so that each criterion
//! always prints its PASS/FAIL line; exits non-zero if any criterion fails.

mod common;

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::panic;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

use common::{gauge_oracle, naive_eventual_image, orbit_partition_oracle, rule_file};
use prep::rep_variety::DEFAULT_BUDGET;
use prep::substitution_complex::Approximant;
use prep::{
    compose, conjugacy_classes, cyclic_group, dihedral_group, enumerate_homs, evaluate,
    eventual_image, induced_class_map, induced_point_map, reduce, symmetric_group, FiniteGroup,
    FreeHomomorphism, HomPoint, Letter, SubstitutionRule, Word,
};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

const QUICK_RUNTIME: Duration = Duration::from_secs(1);
const SCALE_RUNTIME: Duration = Duration::from_secs(5);
const PROPERTY_CASES: u32 = 256;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
    elapsed: Duration,
}

fn prep(args: &[&str]) -> Run {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_prep"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        elapsed: started.elapsed(),
    }
}

fn prep_json(args: &[&str]) -> Result<(Value, Duration), String> {
    let mut full = args.to_vec();
    full.push("--json");
    let run = prep(&full);
    if run.code != 0 {
        return Err(format!("exit {}: {}", run.code, run.stderr.trim()));
    }
    let v = serde_json::from_str(&run.stdout).map_err(|e| format!("bad JSON: {e}"))?;
    Ok((v, run.elapsed))
}

fn path_str(p: &Path) -> String {
    p.to_str().unwrap().to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s3() -> FiniteGroup {
    symmetric_group(3).unwrap().with_s3_letter_labels().unwrap()
}

/// Orbit (from the perm-level oracle) containing a tuple of element labels.
fn oracle_orbit_of(
    group: &FiniteGroup,
    orbits: &[BTreeSet<Vec<Vec<usize>>>],
    labels: &[&str],
) -> Result<usize, String> {
    let key: Vec<Vec<usize>> = labels
        .iter()
        .map(|l| {
            group
                .index_of_label(l)
                .map(|g| group.element(g).images().to_vec())
                .ok_or_else(|| format!("unknown label {l}"))
        })
        .collect::<Result<_, _>>()?;
    orbits
        .iter()
        .position(|o| o.contains(&key))
        .ok_or_else(|| format!("{labels:?} lies in no orbit"))
}

fn members_of(report: &Value) -> Vec<Vec<String>> {
    report["limit"]["members"]
        .as_array()
        .map(|ms| {
            ms.iter()
                .map(|m| {
                    m["tuple"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|s| s.as_str().unwrap().to_string())
                        .collect()
                })
                .collect()
        })
        .unwrap_or_default()
}

/// Runs `limit` and compares its members class-wise with `expected`.
fn reference_limit(rule: &str, expected: &[[&str; 2]]) -> Outcome {
    let (report, elapsed) = prep_json(&[
        "limit",
        "--group",
        "S3",
        "--rule",
        &path_str(&rule_file(rule)),
        "--collar",
        "0",
    ])?;
    let g = s3();
    let orbits = orbit_partition_oracle(&g, 2);
    let got: BTreeSet<usize> = members_of(&report)
        .iter()
        .map(|t| oracle_orbit_of(&g, &orbits, &[&t[0], &t[1]]))
        .collect::<Result<_, _>>()?;
    let want: BTreeSet<usize> = expected
        .iter()
        .map(|t| oracle_orbit_of(&g, &orbits, t))
        .collect::<Result<_, _>>()?;
    let size = report["limit"]["size"].as_u64().unwrap_or(0) as usize;
    ensure(size == expected.len(), || {
        format!("expected {} members, got {size}", expected.len())
    })?;
    ensure(got == want, || {
        format!("member classes {got:?} differ from {want:?}")
    })?;
    ensure(elapsed < QUICK_RUNTIME, || format!("took {elapsed:?}"))?;
    Ok(format!("{size} members, class-wise equal, {elapsed:.0?}"))
}

fn criterion_1() -> Outcome {
    let (report, elapsed) = prep_json(&["count", "--group", "S3", "--rank", "2"])?;
    let homs = report["counts"]["homs"].as_u64();
    let classes = report["counts"]["classes"].as_u64();
    ensure(homs == Some(36) && classes == Some(11), || {
        format!("homs {homs:?}, classes {classes:?}")
    })?;
    let text = prep(&["count", "--group", "S3", "--rank", "2"]);
    ensure(text.stdout.contains("homs: 36, classes: 11"), || {
        format!("text output: {}", text.stdout)
    })?;
    ensure(elapsed < QUICK_RUNTIME, || format!("took {elapsed:?}"))?;
    Ok(format!("homs 36, classes 11, {elapsed:.0?}"))
}

fn criterion_2() -> Outcome {
    reference_limit("tm.sub", &[["1", "1"], ["a", "a"]])
}

fn criterion_3() -> Outcome {
    reference_limit(
        "pd.sub",
        &[
            ["1", "1"],
            ["1", "b"],
            ["a", "a"],
            ["1", "a"],
            ["a2", "a"],
            ["a2", "1"],
        ],
    )
}

fn criterion_4() -> Outcome {
    let size = |rule: &str| -> Result<u64, String> {
        let (r, _) = prep_json(&[
            "limit",
            "--group",
            "S3",
            "--rule",
            &path_str(&rule_file(rule)),
        ])?;
        r["limit"]["size"].as_u64().ok_or_else(|| "no size".into())
    };
    let (tm, pd) = (size("tm.sub")?, size("pd.sub")?);
    ensure(tm == 2 && pd == 6, || format!("sizes {tm} and {pd}"))?;
    Ok(format!("Thue-Morse {tm} != period doubling {pd}"))
}

/// Library classes as sets of perm-image tuples, for comparison with the oracle.
fn library_orbits(group: &FiniteGroup, k: usize) -> Vec<BTreeSet<Vec<Vec<usize>>>> {
    let space = enumerate_homs(group, k, DEFAULT_BUDGET).unwrap();
    let part = conjugacy_classes(&space, group);
    let mut orbits = vec![BTreeSet::new(); part.len()];
    for i in 0..space.len() {
        let key = space
            .point(i)
            .0
            .iter()
            .map(|&g| group.element(g).images().to_vec())
            .collect();
        orbits[part.class_of(i)].insert(key);
    }
    orbits
}

fn criterion_5() -> Outcome {
    let groups: Vec<(&str, FiniteGroup)> = vec![
        ("S3", s3()),
        ("C2", cyclic_group(2).unwrap()),
        ("C3", cyclic_group(3).unwrap()),
        ("D4", dihedral_group(4).unwrap()),
    ];
    let rules: Vec<(&str, SubstitutionRule, bool)> = vec![
        ("TM", common::tm(), true),
        ("PD", common::pd(), true),
        ("split", common::split(), false),
        ("doubling", common::doubling(), true),
    ];
    let mut checked = 0;
    for (gname, g) in &groups {
        for (rname, rule, accepted) in &rules {
            for collar in 0..=1u8 {
                let ap = Approximant::build(rule, collar);
                if !accepted {
                    ensure(ap.is_err(), || {
                        format!("{rname} collar {collar} was not rejected")
                    })?;
                    continue;
                }
                let ap = ap.map_err(|e| format!("{rname} collar {collar}: {e}"))?;
                let k = ap.pi1.rank;
                let space = enumerate_homs(g, k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                let part = conjugacy_classes(&space, g);
                let pm = induced_point_map(&ap.endomorphism, g, &space).unwrap();
                let cm = induced_class_map(&ap.endomorphism, g, &space, &part).unwrap();
                let tag = format!("{gname} × {rname} collar {collar}");
                ensure(
                    eventual_image(&pm).members == naive_eventual_image(&pm),
                    || format!("{tag}: point-map eventual image differs from naive iteration"),
                )?;
                ensure(
                    eventual_image(&cm).members == naive_eventual_image(&cm),
                    || format!("{tag}: class-map eventual image differs from naive iteration"),
                )?;
                ensure(library_orbits(g, k) == orbit_partition_oracle(g, k), || {
                    format!("{tag}: conjugacy classes differ from the orbit oracle")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} (group, rule, collar) cases agree; split rule rejected"
    ))
}

fn property_groups() -> Vec<FiniteGroup> {
    vec![
        symmetric_group(3).unwrap(),
        dihedral_group(4).unwrap(),
        cyclic_group(3).unwrap(),
        symmetric_group(4).unwrap(),
    ]
}

fn words(k: usize, n: usize) -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(
        prop::collection::vec((0..k, any::<bool>()), 0..=6).prop_map(move |ls| {
            reduce(
                ls.into_iter()
                    .map(|(generator, inverse)| Letter { generator, inverse }),
                k,
            )
            .unwrap()
        }),
        n,
    )
}

fn criterion_6() -> Outcome {
    let groups = property_groups();
    let ng = groups.len();
    let strategy = (0..ng, 1usize..=2).prop_flat_map(|(gi, k)| {
        (
            Just(gi),
            Just(k),
            words(k, k),
            words(k, k),
            words(k, 2),
            prop::collection::vec(any::<usize>(), k + 1),
            prop::collection::vec((0..k, any::<bool>()), 0..=16),
        )
    });
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    let counts: RefCell<HashMap<&str, u32>> = RefCell::default();
    runner
        .run(&strategy, |(gi, k, s, t, pair, seed, raw)| {
            let g = &groups[gi];
            let sigma = FreeHomomorphism::new(k, k, s).unwrap();
            let tau = FreeHomomorphism::new(k, k, t).unwrap();
            let tuple: Vec<usize> = seed[..k].iter().map(|x| x % g.order()).collect();
            let h = seed[k] % g.order();
            let space = enumerate_homs(g, k, DEFAULT_BUDGET).unwrap();
            let part = conjugacy_classes(&space, g);

            let total: usize = part.classes().iter().map(|c| c.orbit_size).sum();
            prop_assert!(part
                .classes()
                .iter()
                .all(|c| g.order().is_multiple_of(c.orbit_size)));
            prop_assert_eq!(total, space.len());
            *counts.borrow_mut().entry("orbit sizes").or_default() += 1;

            let map = |f: &FreeHomomorphism, t: &[usize]| -> Vec<usize> {
                f.images().iter().map(|w| evaluate(w, g, t)).collect()
            };
            let lhs = map(&sigma, &HomPoint(tuple.clone()).conjugate(g, h).0);
            let rhs = HomPoint(map(&sigma, &tuple)).conjugate(g, h).0;
            prop_assert_eq!(lhs, rhs);
            *counts
                .borrow_mut()
                .entry("conjugation commutes")
                .or_default() += 1;

            let pm = induced_point_map(&sigma, g, &space).unwrap();
            let ptau = induced_point_map(&tau, g, &space).unwrap();
            let composite = induced_point_map(&compose(&sigma, &tau).unwrap(), g, &space).unwrap();
            prop_assert_eq!(composite, ptau.then(&pm));
            *counts.borrow_mut().entry("contravariance").or_default() += 1;

            let cm = induced_class_map(&sigma, g, &space, &part).unwrap();
            let based = eventual_image(&pm);
            let classes = eventual_image(&cm);
            prop_assert_eq!(&based.members, &eventual_image(&pm.then(&pm)).members);
            prop_assert_eq!(&classes.members, &eventual_image(&cm.then(&cm)).members);
            *counts.borrow_mut().entry("power invariance").or_default() += 1;

            let image: BTreeSet<usize> = based.members.iter().map(|&i| part.class_of(i)).collect();
            prop_assert_eq!(
                image,
                classes.members.iter().copied().collect::<BTreeSet<_>>()
            );
            *counts
                .borrow_mut()
                .entry("quotient surjectivity")
                .or_default() += 1;

            let joined = pair[0].concat(&pair[1]).unwrap();
            prop_assert_eq!(
                evaluate(&joined, g, &tuple),
                g.multiply(evaluate(&pair[0], g, &tuple), evaluate(&pair[1], g, &tuple))
            );
            *counts
                .borrow_mut()
                .entry("evaluate homomorphism")
                .or_default() += 1;

            let once = reduce(
                raw.iter()
                    .map(|&(generator, inverse)| Letter { generator, inverse }),
                k,
            )
            .unwrap();
            prop_assert_eq!(&once, &reduce(once.letters().to_vec(), k).unwrap());
            *counts.borrow_mut().entry("reduce idempotence").or_default() += 1;
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let counts = counts.into_inner();
    let min = counts.values().copied().min().unwrap_or(0);
    ensure(counts.len() == 7 && min >= 200, || {
        format!("only {min} cases for some property")
    })?;
    Ok(format!("7 properties × {min} cases"))
}

/// Collar-1 limit sizes over S3, fixed from the edge-labeling gauge oracle:
/// (rule, rank, class limit, based limit).
const COLLARED_GOLDENS: [(&str, usize, usize, usize); 3] =
    [("TM", 3, 10, 36), ("PD", 2, 6, 12), ("doubling", 1, 2, 3)];

fn criterion_7() -> Outcome {
    for (name, rule) in [("TM", common::tm()), ("PD", common::pd())] {
        let ap = Approximant::build(&rule, 0).map_err(|e| e.to_string())?;
        ensure(
            ap.graph.vertex_count == 1 && ap.graph.edges.len() == 2,
            || {
                format!(
                    "{name}: {} vertices, {} edges",
                    ap.graph.vertex_count,
                    ap.graph.edges.len()
                )
            },
        )?;
        ensure(ap.pi1.rank == 2, || format!("{name}: rank {}", ap.pi1.rank))?;
        ensure(ap.endomorphism == rule.as_endomorphism(), || {
            format!("{name}: induced endomorphism differs from the substitution")
        })?;
    }

    let g = s3();
    let rules = [
        ("TM", common::tm()),
        ("PD", common::pd()),
        ("doubling", common::doubling()),
    ];
    let mut summary = Vec::new();
    for ((name, rule), (gname, rank, classes, based)) in rules.iter().zip(COLLARED_GOLDENS) {
        assert_eq!(*name, gname);
        let ap = Approximant::build(rule, 1).map_err(|e| format!("{name}: {e}"))?;
        ensure(ap.graph.is_connected(), || {
            format!("{name}: collared graph disconnected")
        })?;
        ensure(ap.pi1.rank == rank, || {
            format!("{name}: rank {} != {rank}", ap.pi1.rank)
        })?;
        let cl =
            prep::class_limit(&ap.endomorphism, &g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let bl =
            prep::based_limit(&ap.endomorphism, &g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(cl.limit.len() == classes && bl.limit.len() == based, || {
            format!(
                "{name}: limits {} / {} differ from goldens {classes} / {based}",
                cl.limit.len(),
                bl.limit.len()
            )
        })?;
        let (variety, oracle_classes) = gauge_oracle(&ap.rule, &g, None);
        ensure(
            variety == cl.partition.len() && oracle_classes == classes,
            || format!("{name}: gauge oracle gives {variety} classes, limit {oracle_classes}"),
        )?;
        let transport: Vec<(usize, bool)> =
            ap.transport().iter().map(|s| (s.edge, s.forward)).collect();
        let (_, oracle_based) = gauge_oracle(&ap.rule, &g, Some((0, &transport)));
        ensure(oracle_based == based, || {
            format!("{name}: gauge oracle based limit {oracle_based}")
        })?;
        summary.push(format!("{name} {classes}/{based}"));
    }
    Ok(format!(
        "collar 0 wedges match; collar 1 class/based limits {}",
        summary.join(", ")
    ))
}

fn criterion_8() -> Outcome {
    let (based, t1) = prep_json(&["based-limit", "--group", "S4", "--rank", "2"])?;
    ensure(based["counts"]["homs"].as_u64() == Some(576), || {
        "S4 rank 2 is not 576 points".into()
    })?;
    ensure(t1 < SCALE_RUNTIME, || format!("based-limit took {t1:?}"))?;
    let tm = path_str(&rule_file("tm.sub"));
    let (_, t2) = prep_json(&["based-limit", "--group", "S4", "--rule", &tm])?;
    ensure(t2 < SCALE_RUNTIME, || {
        format!("based-limit with TM took {t2:?}")
    })?;
    let (count, t3) = prep_json(&["count", "--group", "S5", "--rank", "2"])?;
    ensure(count["counts"]["homs"].as_u64() == Some(14_400), || {
        "S5 rank 2 is not 14400".into()
    })?;
    ensure(t3 < SCALE_RUNTIME, || format!("count took {t3:?}"))?;

    for args in [
        vec!["count", "--group", "S5", "--rank", "4"],
        vec!["count", "--group", "S3", "--rank", "2", "--budget", "35"],
        vec!["count", "--group", "S9", "--rank", "1"],
    ] {
        let run = prep(&args);
        ensure(run.code == 3 && run.stderr.contains("exceeds"), || {
            format!("{args:?}: exit {} ({})", run.code, run.stderr.trim())
        })?;
    }
    Ok(format!(
        "S4 based {t1:.0?}, S4 TM {t2:.0?}, S5 count {t3:.0?}; caps exit 3"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 8] = [
        ("reference: variety size", criterion_1),
        ("reference: Thue-Morse", criterion_2),
        ("reference: period doubling", criterion_3),
        ("distinguishing power", criterion_4),
        ("oracle equivalence", criterion_5),
        ("property suites", criterion_6),
        ("approximant checks", criterion_7),
        ("scale and budget", criterion_8),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                println!("[FAIL] criterion {}: {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}

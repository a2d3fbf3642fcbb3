//! One PASS/FAIL line per acceptance criterion. Runs without the test harness so the
//! table always prints.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lojex::classify::{boundary_case, classify_facets, Case};
use lojex::corpus::{convenient_corpus, random_corpus, weighted_homogeneous_corpus};
use lojex::diagram::{build_diagram, face_part};
use lojex::exponent::{
    fukui_bound, main_theorem_value, newton_number_3d, newton_number_of_diagram,
    quasihomogeneous_exponent, surface_exponent, ExponentOptions, Method,
};
use lojex::modp::default_primes;
use lojex::nondegeneracy::{is_nondegenerate, Verdict};
use lojex::oracle::{monte_carlo_newton_volumes, torus_degeneracy_search, OracleConfig};
use lojex::report::{analyze, AnalysisReport, AnalyzeOptions};
use lojex::scalar::{rat_int, rational_to_f64, GaussianRational};
use lojex::{parse_germ, PolyGerm};

const CORPUS_SEED: u64 = 20240;
const CORPUS_SIZE: usize = 500;
const EXAMPLE_TIME_LIMIT: Duration = Duration::from_secs(1);
const PROBE_TIME_LIMIT: Duration = Duration::from_secs(10);
const SUITE_TIME_LIMIT: Duration = Duration::from_secs(120);
const MC_SAMPLES: u64 = 1_000_000;
const MC_GERMS: usize = 20;
const MC_SIGMAS: f64 = 3.0;
const QH_GERMS: usize = 50;

/// Criteria that cannot hold as stated; they must print FAIL, and passing is itself an error.
const KNOWN_UNATTAINABLE: &[u32] = &[3];

fn germ(s: &str, n: usize) -> PolyGerm {
    parse_germ(s, n).unwrap()
}

fn run_analyze(f: &PolyGerm, curve_probe: Option<u32>) -> AnalysisReport {
    let opts = AnalyzeOptions {
        exponent: ExponentOptions {
            curve_probe,
            conjecture: false,
        },
        config: OracleConfig::default(),
    };
    analyze(f, &opts).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(failures: &mut Vec<String>, cond: bool, what: impl Into<String>) {
    if !cond {
        failures.push(what.into());
    }
}

fn finish(failures: Vec<String>, elapsed: Duration, limit: Duration, summary: String) -> Outcome {
    let mut failures = failures;
    check(
        &mut failures,
        elapsed < limit,
        format!("took {elapsed:.2?}, limit {limit:?}"),
    );
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: format!("{summary} ({elapsed:.2?})"),
        }
    } else {
        Outcome {
            pass: false,
            detail: failures.join("; "),
        }
    }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let f = germ("z1^3+z2^3+z3^2+z1*z2", 3);
    let r = run_analyze(&f, None);
    let elapsed = t.elapsed();
    let mut bad = Vec::new();
    let dg = r.diagram.as_ref().unwrap();
    let facets: Vec<_> = dg.faces.iter().filter(|s| s.dim == 2).collect();
    check(
        &mut bad,
        facets.len() == 2,
        format!("{} facets", facets.len()),
    );
    check(
        &mut bad,
        facets
            .iter()
            .all(|s| s.exceptional_axes.as_ref().is_some_and(|a| !a.is_empty())),
        "a facet is unexceptional",
    );
    check(
        &mut bad,
        dg.boundary_case == Some(Case::AllExceptional),
        format!("case {:?}", dg.boundary_case),
    );
    check(
        &mut bad,
        dg.j_segment.as_deref() == Some("I_3^2"),
        format!("segment {:?}", dg.j_segment),
    );
    let e = r.exponent.as_ref().unwrap();
    check(
        &mut bad,
        e.exact == Some(rat_int(1)),
        format!("exact {:?}", e.exact),
    );
    check(&mut bad, e.s_f == Some(2), format!("s_f {:?}", e.s_f));
    check(
        &mut bad,
        e.value_of(Method::NewtonNumberMilnor) == Some(&rat_int(1)),
        "Milnor route missing",
    );
    check(
        &mut bad,
        r.newton_number
            .as_ref()
            .is_some_and(|nn| nn.nu == rat_int(1)),
        "ν ≠ 1",
    );
    finish(
        bad,
        elapsed,
        EXAMPLE_TIME_LIMIT,
        "2 exceptional facets, I_3^2, exact 1, s(f) 2, ν 1".into(),
    )
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let r = run_analyze(&germ("z2^3+z1*z3+z1^2*z3^2", 3), None);
    let elapsed = t.elapsed();
    let mut bad = Vec::new();
    let dg = r.diagram.as_ref().unwrap();
    check(&mut bad, dg.faces.iter().all(|s| s.dim < 2), "has facets");
    check(
        &mut bad,
        dg.boundary_case == Some(Case::NoFacets),
        format!("case {:?}", dg.boundary_case),
    );
    check(
        &mut bad,
        dg.j_segment.as_deref() == Some("I_2^3"),
        format!("segment {:?}", dg.j_segment),
    );
    let e = r.exponent.as_ref().unwrap();
    check(
        &mut bad,
        e.exact == Some(rat_int(2)),
        format!("exact {:?}", e.exact),
    );
    finish(
        bad,
        elapsed,
        EXAMPLE_TIME_LIMIT,
        "no facets, I_2^3, exact 2".into(),
    )
}

/// The printed germ has no pure `z3` power and is not isolated (the curve probe finds a curve
/// along which the gradient vanishes). With `z3^20` added the facet data match; the exact
/// value 5 does not follow because the large facet is degenerate, and a monomial curve
/// gives the lower bound 19.
fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let literal = germ("z1^3+z2^3+z1*z3^4+z2*z3^4", 3);
    let lr = run_analyze(&literal, Some(4));
    check(
        &mut bad,
        lr.exponent.as_ref().is_some_and(|e| e.exact.is_none()),
        "printed germ unexpectedly gets an exact value",
    );
    let f = germ("z1^3+z2^3+z1*z3^4+z2*z3^4+z3^20", 3);
    let d = build_diagram(&f).unwrap();
    let classes = classify_facets(&d).unwrap();
    check(
        &mut bad,
        classes.len() == 2,
        format!("{} facets", classes.len()),
    );
    let s1 = d.find_by_vertices(
        &[[0, 1, 4], [0, 3, 0], [1, 0, 4], [3, 0, 0]].map(|v| lojex::ExpVec(v.to_vec())),
    );
    let s2 =
        d.find_by_vertices(&[[0, 0, 20], [0, 1, 4], [1, 0, 4]].map(|v| lojex::ExpVec(v.to_vec())));
    match (s1, s2) {
        (Some(s1), Some(s2)) => {
            let ex: Vec<usize> = classes
                .iter()
                .filter(|c| !c.unexceptional())
                .map(|c| c.face_id)
                .collect();
            check(
                &mut bad,
                ex == vec![s2.id],
                format!("E_f = {ex:?}, S2 = #{}", s2.id),
            );
            check(
                &mut bad,
                s1.m() == rat_int(6),
                format!("m(S1) = {}", s1.m()),
            );
        }
        _ => bad.push("S1 or S2 missing".into()),
    }
    let (case, main) = main_theorem_value(&d).unwrap();
    check(
        &mut bad,
        case == Case::HasUnexceptional && main == rat_int(5),
        format!("main bound {main}"),
    );
    let fukui = fukui_bound(&f).unwrap();
    check(&mut bad, fukui == rat_int(19), format!("Fukui {fukui}"));
    let r = run_analyze(&f, Some(4));
    let e = r.exponent.as_ref().unwrap();
    check(
        &mut bad,
        e.exact == Some(rat_int(5)),
        format!(
            "with the curve probe: exact {:?}, lower {:?} (face parts degenerate: {:?})",
            e.exact.as_ref().map(|x| x.to_string()),
            e.lower.as_ref().map(|x| x.to_string()),
            r.nondegeneracy.as_ref().map(|n| n.verdict)
        ),
    );
    finish(
        bad,
        t.elapsed(),
        PROBE_TIME_LIMIT,
        "facets, E_f, main bound 5, Fukui 19, exact 5".into(),
    )
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for (s, want) in [("z1^2+z2^3", 2), ("z1*z2+z1^3", 1), ("z1^2+z2^2", 1)] {
        let t = Instant::now();
        let r = run_analyze(&germ(s, 2), None);
        slowest = slowest.max(t.elapsed());
        let e = r.exponent.as_ref().unwrap();
        check(
            &mut bad,
            e.exact == Some(rat_int(want)),
            format!("{s}: exact {:?}, want {want}", e.exact),
        );
    }
    finish(bad, slowest, EXAMPLE_TIME_LIMIT, "2, 1, 1".into())
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let f = germ("z1*z2+z1*z3", 3);
    let nd = is_nondegenerate(&f).unwrap();
    check(
        &mut bad,
        nd.verdict == Verdict::Nondegenerate,
        format!("verdict {:?}", nd.verdict),
    );
    check(
        &mut bad,
        nd.faces.iter().all(|v| v.verdict == Verdict::Nondegenerate),
        "a face is not nondegenerate",
    );
    // the curve (0, t, -t) lies off the torus, so it does not contradict nondegeneracy
    for t in 1..=5 {
        let z = [
            GaussianRational::zero(),
            GaussianRational::from_int(t),
            GaussianRational::from_int(-t),
        ];
        check(
            &mut bad,
            f.gradient().iter().all(|g| g.eval(&z).is_zero()),
            format!("∇f(0,{t},-{t}) ≠ 0"),
        );
    }
    let d = build_diagram(&f).unwrap();
    for s in d.faces() {
        let fs = face_part(&f, s).unwrap();
        if let Some(w) = torus_degeneracy_search(&fs, &default_primes(2), 200, 7) {
            bad.push(format!("torus witness {:?} on face #{}", w.point, s.id));
        }
    }
    finish(
        bad,
        t.elapsed(),
        EXAMPLE_TIME_LIMIT,
        "nondegenerate; ∇f vanishes on (0,t,-t) off the torus".into(),
    )
}

fn corpus() -> Vec<PolyGerm> {
    random_corpus(CORPUS_SEED, CORPUS_SIZE)
}

fn criterion_6(corpus: &[PolyGerm]) -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut bad = Vec::new();
    let mut by_kind = std::collections::BTreeMap::<&str, usize>::new();
    for f in corpus {
        let normals: Vec<Vec<i64>> = (0..8)
            .map(|_| (0..f.arity()).map(|_| rng.gen_range(1..=50)).collect())
            .collect();
        for (kind, msg) in common::geometry_checks(f, &normals) {
            *by_kind.entry(kind).or_default() += 1;
            if bad.len() < 5 {
                bad.push(format!("[{kind}] {f}: {msg}"));
            }
        }
    }
    let dims = corpus.iter().filter(|f| f.arity() == 2).count();
    if !by_kind.is_empty() {
        bad.push(format!("violations by property: {by_kind:?}"));
    }
    finish(
        bad,
        t.elapsed(),
        SUITE_TIME_LIMIT,
        format!(
            "{} germs ({dims} plane, {} surface), zero violations",
            corpus.len(),
            corpus.len() - dims
        ),
    )
}

fn criterion_7(corpus: &[PolyGerm]) -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut discrepancies = 0;
    for f in corpus {
        let v = common::brute_force_agreement(&build_diagram(f).unwrap());
        if !v.is_empty() {
            discrepancies += 1;
            if bad.len() < 3 {
                bad.push(format!("{f}: {v:?}"));
            }
        }
    }
    check(
        &mut bad,
        discrepancies == 0,
        format!("{discrepancies} discrepancies"),
    );
    finish(
        bad,
        t.elapsed(),
        SUITE_TIME_LIMIT,
        format!("{} germs, zero discrepancies", corpus.len()),
    )
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for (k, f) in convenient_corpus(CORPUS_SEED, MC_GERMS).iter().enumerate() {
        let d = build_diagram(f).unwrap();
        let nn = newton_number_of_diagram(&d).unwrap();
        let est = monte_carlo_newton_volumes(&d, MC_SAMPLES, CORPUS_SEED + k as u64).unwrap();
        let z = (rational_to_f64(&nn.V3) - est.v3).abs() / est.stderr.max(f64::MIN_POSITIVE);
        worst = worst.max(z);
        check(
            &mut bad,
            z <= MC_SIGMAS,
            format!("{f}: V3 {} vs {:.5} ± {:.5}", nn.V3, est.v3, est.stderr),
        );
    }
    let nn = newton_number_3d(&germ("z1^3+z2^3+z3^2+z1*z2", 3)).unwrap();
    check(
        &mut bad,
        (nn.V3.clone(), nn.V2.clone(), nn.V1.clone(), nn.nu.clone())
            == (rat_int(2), rat_int(9), rat_int(8), rat_int(1)),
        format!(
            "hand values: V3 {} V2 {} V1 {} ν {}",
            nn.V3, nn.V2, nn.V1, nn.nu
        ),
    );
    let morse = newton_number_3d(&germ("z1^2+z2^2+z3^2", 3)).unwrap();
    check(
        &mut bad,
        morse.nu == rat_int(1),
        format!("Morse ν = {}", morse.nu),
    );
    finish(
        bad,
        t.elapsed(),
        SUITE_TIME_LIMIT,
        format!("{MC_GERMS} germs × {MC_SAMPLES} samples, worst {worst:.2}σ; hand values match"),
    )
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let (mut first, mut second) = (0, 0);
    for f in weighted_homogeneous_corpus(CORPUS_SEED, QH_GERMS) {
        let q = quasihomogeneous_exponent(&f).unwrap().exact.unwrap();
        let d = build_diagram(&f).unwrap();
        match main_theorem_value(&d) {
            Ok((Case::HasUnexceptional, v)) => {
                second += 1;
                check(
                    &mut bad,
                    v == q,
                    format!("{f}: weights give {q}, upper bound {v}"),
                );
            }
            Ok((_, v)) => {
                first += 1;
                let s = surface_exponent(&f, None).map(|r| r.exact);
                check(
                    &mut bad,
                    v == q && s.as_ref().is_ok_and(|x| x.as_ref() == Some(&q)),
                    format!("{f}: weights give {q}, main value {v}"),
                );
            }
            Err(e) => bad.push(format!("{f}: {e}")),
        }
    }
    finish(
        bad,
        t.elapsed(),
        SUITE_TIME_LIMIT,
        format!("{QH_GERMS} germs ({first} exact case, {second} bound case), zero disagreements"),
    )
}

fn criterion_10(corpus: &[PolyGerm]) -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    let extra = convenient_corpus(CORPUS_SEED + 1, 100);
    for f in corpus.iter().chain(&extra) {
        let d = build_diagram(f).unwrap();
        if !d.has_facets() {
            continue;
        }
        if f.arity() == 3 && boundary_case(&d).is_err() {
            bad.push(format!("{f}: boundary case failed"));
            continue;
        }
        if is_nondegenerate(f).is_ok_and(|r| r.verdict == Verdict::Nondegenerate) {
            checked += 1;
        }
        for v in common::bound_ordering(f, &d) {
            if bad.len() < 5 {
                bad.push(format!("{f}: {v}"));
            }
        }
    }
    finish(
        bad,
        t.elapsed(),
        SUITE_TIME_LIMIT,
        format!("{checked} nondegenerate germs with facets, zero violations"),
    )
}

fn main() {
    let corpus = corpus();
    let results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6(&corpus)),
        (7, criterion_7(&corpus)),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10(&corpus)),
    ];
    let mut unexpected = Vec::new();
    for (k, o) in &results {
        let known = KNOWN_UNATTAINABLE.contains(k);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {k:>2}: {tag:<12} {}", o.detail);
        if o.pass == known {
            unexpected.push(*k);
        }
    }
    assert!(
        unexpected.is_empty(),
        "criteria with an unexpected outcome: {unexpected:?}"
    );
}

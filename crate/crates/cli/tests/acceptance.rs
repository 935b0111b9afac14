//! Acceptance run: one PASS/FAIL line per criterion with its timing.
//! Time limits are pinned below; the process exits nonzero if any
//! criterion fails.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use scn_cli::{run, EXIT_OK, EXIT_VERIFICATION};
use scn_core::abgroup::ulm_kaplansky;
use scn_core::homs::{in_radical_by_layers, is_automorphism, is_nilpotent, is_radical};
use scn_core::oracle::{
    brute_is_bijective, brute_is_nilpotent, check_bcm, check_lu, check_nj_equivalence, check_quasi_regular_and_nc,
    enumerate_end, finite_abelian_groups, p_group_exponents, ulm_kaplansky_by_definition, EndRing,
};
use scn_core::ringprops::{is_end_commutative, is_j_reduced_end, Status};
use scn_core::{
    parse_expression, smith_normal_form, verify_result, Bounds, Engine, FgAbGroup, Matrix, PrimaryComponent,
    ResultStatus, SpaceDescriptor, Truth,
};

const REFERENCE_LIMIT: Duration = Duration::from_secs(1);
const RANDOM_LIMIT: Duration = Duration::from_secs(10);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const LAB_LIMIT: Duration = Duration::from_secs(60);
const SNF_LIMIT: Duration = Duration::from_secs(5);

/// Rings larger than this are checked on a seeded sample of elements.
const EXHAUSTIVE_RING: u64 = 4096;
const SAMPLES: u64 = 300;

const REFERENCE_VALUES: &[(&str, u32)] = &[
    ("S^2 x S^5 x S^7", 7),
    ("K(Z/2,3) x K(Z/3,3) x K(Z,5)", 5),
    ("CP^2 x CP^3", 2),
    ("HP^2 x HP^3", 4),
    ("RP^2 x RP^5", 5),
    ("L(5,3) x L(7,5)", 7),
    ("M(Z/2,2) x M(Z,4) x M(Z/12,7)", 7),
];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scn(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("scn").chain(args.iter().copied()), &mut out, &mut err);
    let mut text = String::from_utf8_lossy(&out).into_owned();
    text.push_str(&String::from_utf8_lossy(&err));
    (code, text)
}

fn verify_json(json: &str) -> i32 {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    scn(&["verify", f.path().to_str().unwrap()]).0
}

fn ne_json(expr: &str) -> Result<Value, String> {
    let (code, out) = scn(&["ne", expr, "--json"]);
    ensure(code == EXIT_OK, || format!("`ne {expr}` exited {code}: {out}"))?;
    serde_json::from_str(&out).map_err(|e| format!("`ne {expr}`: {e}"))
}

fn reference_values() -> Check {
    let mut slowest = Duration::ZERO;
    for &(expr, value) in REFERENCE_VALUES {
        let start = Instant::now();
        let r = ne_json(expr)?;
        ensure(r["status"] == "EXACT" && r["value"] == value, || {
            format!("{expr}: got {} {}, expected EXACT {value}", r["status"], r["value"])
        })?;
        let code = verify_json(&r.to_string());
        ensure(code == EXIT_OK, || format!("{expr}: verify exited {code}"))?;
        let t = start.elapsed();
        ensure(t < REFERENCE_LIMIT, || format!("{expr}: {t:.2?} exceeds {REFERENCE_LIMIT:?}"))?;
        slowest = slowest.max(t);
    }
    Ok(format!(
        "{} products EXACT and verified, slowest {slowest:.2?} (each must be under {REFERENCE_LIMIT:?})",
        REFERENCE_VALUES.len()
    ))
}

fn random_space(rng: &mut ChaCha8Rng) -> String {
    const GROUPS: &[&str] = &["Z", "Z/2", "Z/3", "Z/4", "Z/6", "Z/12", "Z+Z/2", "Z/2+Z/2"];
    let g = GROUPS[rng.gen_range(0..GROUPS.len())];
    match rng.gen_range(0..7) {
        0 => format!("S^{}", rng.gen_range(1..=9)),
        1 => format!("M({g},{})", rng.gen_range(2..=8)),
        2 => format!("K({g},{})", rng.gen_range(1..=6)),
        3 => format!("RP^{}", rng.gen_range(2..=7)),
        4 => format!("CP^{}", rng.gen_range(2..=4)),
        5 => format!("HP^{}", rng.gen_range(2..=3)),
        _ => format!("L({},{})", 2 * rng.gen_range(1..=3) + 1, [2, 3, 5, 7][rng.gen_range(0..4)]),
    }
}

fn random_products() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let engine = Engine::default();
    let mut exact = 0;
    for _ in 0..100 {
        let expr = (0..rng.gen_range(1..=4))
            .map(|_| random_space(&mut rng))
            .collect::<Vec<_>>()
            .join(" x ");
        let factors = parse_expression(&expr).map_err(|e| format!("{expr}: {e}"))?.factors;
        let r = engine.compute_ne(&factors).map_err(|e| format!("{expr}: {e}"))?;
        let bound = factors.iter().map(SpaceDescriptor::self_closeness).max().unwrap();
        ensure(r.value == bound, || format!("{expr}: value {} but max factor is {bound}", r.value))?;
        ensure((r.status == ResultStatus::Exact) == r.certificate.is_some(), || {
            format!("{expr}: status and certificate disagree")
        })?;
        verify_result(engine.catalog(), &r).map_err(|e| format!("{expr}: {e}"))?;
        exact += usize::from(r.status == ResultStatus::Exact);
    }
    Ok(format!("100 products sound, {exact} EXACT with verified certificates"))
}

fn wide() -> Bounds {
    Bounds {
        max_order: 1 << 12,
        max_end: u64::MAX,
        max_hom_pairs: 1 << 16,
    }
}

fn indices(ring: &EndRing, seed: u64) -> (Vec<u64>, bool) {
    if ring.size() <= EXHAUSTIVE_RING {
        return ((0..ring.size()).collect(), false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<u64> = (0..SAMPLES).map(|_| rng.gen_range(0..ring.size())).collect();
    v.extend([0, ring.identity()]);
    (v, true)
}

fn oracle_equivalence() -> Check {
    let default = Bounds::default();
    let (mut elements, mut sampled) = (0u64, 0usize);
    for (i, g) in finite_abelian_groups(64).iter().enumerate() {
        let ring = enumerate_end(g, &wide()).map_err(|e| e.to_string())?;
        let (idx, was_sampled) = indices(&ring, i as u64);
        sampled += usize::from(was_sampled);
        for x in idx {
            let f = ring.to_hom(x);
            ensure(is_automorphism(&f) == Ok(brute_is_bijective(&f)), || format!("automorphism {g}: {f}"))?;
            ensure(is_nilpotent(&f) == Ok(brute_is_nilpotent(&f)), || format!("nilpotent {g}: {f}"))?;
            elements += 1;
        }
    }
    for (i, g) in finite_abelian_groups(32).iter().enumerate() {
        let ring = enumerate_end(g, &wide()).map_err(|e| e.to_string())?;
        let in_bounds = ring.size() <= default.max_end;
        for x in indices(&ring, 100 + i as u64).0 {
            let f = ring.to_hom(x);
            let truth = if in_bounds {
                ring.radical_contains(x)
            } else {
                ring.radical_contains_by_quasi_regularity(x)
            };
            ensure(in_radical_by_layers(&f) == Ok(truth), || format!("radical layers {g}: {f}"))?;
            ensure(is_radical(&f, &default) == Ok(Truth::from(truth)), || format!("is_radical {g}: {f}"))?;
        }
        let commutative = is_end_commutative(g);
        let pair = (1..ring.size()).find_map(|a| (a + 1..ring.size()).find(|&b| !ring.commutes(a, b)));
        ensure(commutative.status != Status::Unknown && commutative.recheck(g), || format!("commutativity verdict {g}"))?;
        ensure((commutative.status == Status::Yes) == pair.is_none(), || format!("commutativity {g}"))?;

        let reduced = is_j_reduced_end(g);
        ensure(reduced.status != Status::Unknown && reduced.recheck(g), || format!("J-reduced verdict {g}"))?;
        let nilpotents_in_j = if in_bounds {
            ring.nilpotents().iter().all(|&t| ring.radical_contains(t))
        } else {
            !(0..ring.size())
                .filter(|&t| ring.is_nilpotent(t))
                .take(64)
                .any(|t| !ring.radical_contains_by_quasi_regularity(t))
        };
        ensure((reduced.status == Status::Yes) == nilpotents_in_j, || format!("J-reduced {g}"))?;
    }
    let mut uk = 0;
    for (p, max_exp) in [(2u64, 6u32), (3, 4)] {
        for exponents in p_group_exponents(max_exp) {
            let c = PrimaryComponent { prime: p, exponents };
            for s in 0..=max_exp {
                ensure(ulm_kaplansky(&c, s) == ulm_kaplansky_by_definition(&c, s), || format!("UK {c:?} s={s}"))?;
                uk += 1;
            }
        }
    }
    Ok(format!(
        "{elements} endomorphisms over 117 groups ({sampled} large rings sampled), {uk} UK invariants"
    ))
}

fn group(s: &str) -> FgAbGroup {
    s.parse().unwrap()
}

fn ring_labs() -> Check {
    let b = wide();
    for g in ["Z/4", "Z/2+Z/2", "Z/2+Z/4", "Z/9+Z/3"] {
        let ring = enumerate_end(&group(g), &b).map_err(|e| e.to_string())?;
        let r = check_quasi_regular_and_nc(&ring);
        ensure(r.passed, || format!("QR/NC on End({g}): {:?}", r.counterexamples))?;
    }
    let lists: &[(u64, &[u32])] = &[
        (2, &[1]),
        (2, &[2]),
        (2, &[1, 1]),
        (2, &[1, 2]),
        (2, &[2, 2]),
        (2, &[1, 3]),
        (3, &[1]),
        (3, &[1, 2]),
    ];
    for &(prime, exps) in lists {
        let c = PrimaryComponent { prime, exponents: exps.to_vec() };
        let r = check_nj_equivalence(&c, &b).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("NJ on p={prime} {exps:?}: {r:?}"))?;
    }
    let pool = ["Z/2", "Z/3", "Z/4", "Z/9", "Z/2+Z/4"];
    let mut pairs = 0;
    for (i, a) in pool.iter().enumerate() {
        for bb in &pool[i..] {
            let r = check_bcm(&group(a), &group(bb), &b).map_err(|e| e.to_string())?;
            if r.common_direct_factor {
                continue;
            }
            ensure(r.violations == 0, || format!("BCM on {a} + {bb}: {} violations", r.violations))?;
            pairs += 1;
        }
    }
    let swap = check_bcm(&group("Z/2"), &group("Z/2"), &b).map_err(|e| e.to_string())?;
    ensure(swap.violations > 0 && swap.counterexample.is_some(), || "swap counterexample not found".into())?;
    let mut factored = 0;
    for gs in [&["Z/2", "Z/4"][..], &["Z/2", "Z/3", "Z/5"]] {
        let r = check_lu(&gs.iter().map(|g| group(g)).collect::<Vec<_>>(), &b).map_err(|e| e.to_string())?;
        ensure(r.passed && r.factored == r.reducible_automorphisms, || format!("LU on {gs:?}: {r:?}"))?;
        factored += r.factored;
    }
    Ok(format!(
        "QR/NC on 4 rings, NJ on {} lists, BCM on {pairs} pairs plus swap, LU on {factored} automorphisms",
        lists.len()
    ))
}

fn divides(a: i64, b: i64) -> bool {
    if a == 0 {
        b == 0
    } else {
        b % a == 0
    }
}

fn snf_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut nonsingular = 0;
    for _ in 0..1000 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect()).collect();
        let a = Matrix::from_rows(&rows, c).unwrap();
        let s = smith_normal_form(&a).map_err(|e| format!("{a:?}: {e}"))?;
        let uav = s.left.mul(&a).and_then(|m| m.mul(&s.right)).map_err(|e| e.to_string())?;
        ensure(uav == s.diagonal, || format!("U·A·V != D for {a:?}"))?;
        let off_diagonal = (0..r).any(|i| (0..c).any(|j| i != j && s.diagonal.get(i, j) != 0));
        let d = s.diagonal_entries();
        ensure(!off_diagonal && d.iter().all(|&x| x >= 0), || format!("D not diagonal for {a:?}"))?;
        ensure(d.windows(2).all(|w| divides(w[0], w[1])), || format!("divisibility fails for {a:?}"))?;
        let unimodular = |m: &Matrix| m.determinant().map(|x| x.abs() == 1).unwrap_or(false);
        ensure(unimodular(&s.left) && unimodular(&s.right), || format!("transform not unimodular for {a:?}"))?;
        if r == c {
            let det = a.determinant().map_err(|e| e.to_string())?;
            if det != 0 {
                let product: i128 = d.iter().map(|&x| x as i128).product();
                ensure(det.abs() == product, || format!("determinant not preserved for {a:?}"))?;
                nonsingular += 1;
            }
        }
    }
    Ok(format!("1000 matrices, {nonsingular} square nonsingular"))
}

fn tamperings(result: &Value) -> Vec<(&'static str, Value)> {
    let mut out = Vec::new();
    let mut v = result.clone();
    v["value"] = Value::from(v["value"].as_u64().unwrap() + 1);
    v["certificate"]["conclusion"]["value"] = v["value"].clone();
    out.push(("inflated value", v));
    let mut v = result.clone();
    v["certificate"]["premises"].as_array_mut().unwrap().pop();
    out.push(("dropped premise", v));
    let mut v = result.clone();
    let last = v["certificate"]["premises"].as_array().unwrap().len() - 1;
    v["certificate"]["premises"][last]["sub"]["rule_id"] = Value::from("single-factor");
    out.push(("swapped rule", v));
    let mut v = result.clone();
    v["certificate"]["conclusion"]["factors"][0] = serde_json::json!({"kind": "sphere", "n": 11});
    v["factors"][0] = serde_json::json!({"kind": "sphere", "n": 11});
    out.push(("changed factor", v));
    let mut v = result.clone();
    v["certificate"] = Value::Null;
    out.push(("missing certificate", v));
    out
}

fn honesty() -> Check {
    for expr in ["S^2 x S^2", "S^3 x K(Z,3)"] {
        let r = ne_json(expr)?;
        ensure(r["status"] == "LOWER_BOUND" && r.get("certificate").is_none(), || {
            format!("{expr}: expected LOWER_BOUND, got {}", r["status"])
        })?;
        let mut forged = r.clone();
        forged["status"] = Value::from("EXACT");
        let code = verify_json(&forged.to_string());
        ensure(code == EXIT_VERIFICATION, || format!("{expr}: forged EXACT accepted ({code})"))?;
    }
    let mut caught = 0;
    for &(expr, _) in REFERENCE_VALUES {
        let r = ne_json(expr)?;
        for (what, forged) in tamperings(&r) {
            let code = verify_json(&forged.to_string());
            ensure(code == EXIT_VERIFICATION, || format!("{expr}: {what} not detected ({code})"))?;
            caught += 1;
        }
    }
    Ok(format!("2 lower bounds reported honestly, {caught} tampered documents rejected"))
}

fn criterion(id: u32, name: &str, limit: Duration, check: fn() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    let t = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(_) if t >= limit => (false, format!("took {t:.2?}, limit {limit:?}")),
        Ok(d) => (true, d),
        Err(e) => (false, e),
    };
    println!(
        "{} [{id}] {name}: {detail} ({:.2} s, limit {} s)",
        if ok { "PASS" } else { "FAIL" },
        t.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn main() {
    // Silence the default hook: panics are reported on the criterion line.
    std::panic::set_hook(Box::new(|_| {}));
    let results = [
        criterion(1, "reference values", REFERENCE_LIMIT * REFERENCE_VALUES.len() as u32, reference_values),
        criterion(2, "lower-bound soundness", RANDOM_LIMIT, random_products),
        criterion(3, "oracle equivalence", ORACLE_LIMIT, oracle_equivalence),
        criterion(4, "ring-lemma labs", LAB_LIMIT, ring_labs),
        criterion(5, "smith normal form", SNF_LIMIT, snf_suite),
        criterion(6, "honesty and tampering", Duration::from_secs(10), honesty),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

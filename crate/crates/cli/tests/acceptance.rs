//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use ct3_core::arith::{q, Q};
use ct3_core::blowup::{numerator_weight, CertificateKind, SingularityPresentation};
use ct3_core::classify::{
    check_boundindex, check_sm_lower, check_sm_not_ab1, classify_interval, rule_names, scan_assumption_a,
    scan_bezout, scan_ca_split, scan_delta, ClassifyOptions, IntervalSpec,
};
use ct3_core::poly::parse_poly;
use ct3_core::threshold::{brieskorn_ct, ct_upper_bound};
use ct3_core::weights::{enumerate_family, FamilyBounds, FamilyTag};
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Verdict = Result<String, String>;

/// Name, check and runtime limit in seconds.
type Criterion = (&'static str, fn() -> Verdict, u64);

/// `x = 1/2 + 1/t` with `t >= 3` an integer, or `x = 4/5`.
fn expected(x: Q) -> bool {
    if x == q(4, 5) {
        return true;
    }
    let r = x - q(1, 2);
    r > q(0, 1) && *r.numer() == 1 && *r.denom() >= 3
}

fn c1() -> Verdict {
    for t in 3..=50i64 {
        let c = 2i64.lcm(&t) as u64;
        let got = brieskorn_ct(2, t as u64, c).map_err(|e| e.to_string())?;
        if got != q(t + 2, 2 * t) {
            return Err(format!("t = {t}: {got}"));
        }
    }
    Ok("t = 3..50".into())
}

fn c2() -> Verdict {
    let s = SingularityPresentation::smooth();
    let mut n = 0;
    for a in 2..=6i64 {
        for b in a..=6i64 {
            let c = a.lcm(&b);
            let f = parse_poly(&format!("x^{a}+y^{b}+z^{c}"), 3).unwrap();
            let got = ct_upper_bound(&s, &f, (1 + a + b) as u64).map_err(|e| e.to_string())?;
            if got.value != q(1, a) + q(1, b) {
                return Err(format!("({a},{b},{c}): search {} vs {}", got.value, q(1, a) + q(1, b)));
            }
            n += 1;
        }
    }
    Ok(format!("{n} triples"))
}

fn c3() -> Verdict {
    let phi = parse_poly("x*y+x^7+z^2+u^3", 4).unwrap();
    let s = SingularityPresentation::index1(phi).unwrap();
    let f = parse_poly("y", 4).unwrap();
    let c = ct_upper_bound(&s, &f, 11).map_err(|e| e.to_string())?;
    if c.value == q(4, 5) && c.certificate == CertificateKind::GenericLinear {
        Ok(format!("4/5 via {} ({})", c.weight, c.certificate))
    } else {
        Err(format!("{} via {} ({})", c.value, c.weight, c.certificate))
    }
}

fn c4() -> Verdict {
    let all = check_sm_lower(25);
    let ab1 = check_sm_not_ab1(25);
    if all.counterexamples.is_empty() && ab1.counterexamples.is_empty() {
        Ok(format!("{} pairs, {} tuples, {} with m = ab+1", all.pairs, all.tuples, ab1.tuples))
    } else {
        Err(format!("{:?} {:?}", all.counterexamples, ab1.counterexamples))
    }
}

fn c5() -> Verdict {
    let out = Command::new(env!("CARGO_BIN_EXE_ct3"))
        .args(["classify", "--all", "--interval", "2", "--a-max", "25"])
        .env_remove("CT3_CACHE_DIR")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {:?}", out.status.code()));
    }
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let mut values = BTreeSet::new();
    for fam in v["families"].as_array().ok_or("no families")? {
        let name = fam["family"].as_str().unwrap_or_default();
        let surv = fam["survivors"].as_array().ok_or("no survivors")?;
        if name.starts_with("cD") && !surv.is_empty() {
            return Err(format!("{name} has {} survivors", surv.len()));
        }
        for s in surv {
            let x: Q = s["ct"].as_str().unwrap_or_default().parse().map_err(|_| "bad ct")?;
            values.insert(x);
        }
    }
    match values.iter().find(|x| !expected(**x)) {
        Some(x) => Err(format!("unexpected value {x}")),
        None => Ok(format!("{} distinct values, cD and cD/2 empty", values.len())),
    }
}

fn c6() -> Verdict {
    let bounds = FamilyBounds { a_max: 40, d_max: 6, n_max: 6, min_discrepancy: 1 };
    let mut n = 0;
    for tag in FamilyTag::ALL {
        for p in enumerate_family(tag, &bounds) {
            let w = p.family_weight().map_err(|e| e.to_string())?;
            let idx = w.index() as i64;
            // n * discrepancy = sum of numerators - n * sum of equation weights - n.
            let mut a = w.numerators().iter().sum::<u64>() as i64 - idx;
            if tag != FamilyTag::Smooth {
                let model = SingularityPresentation::normal_form(&p).map_err(|e| e.to_string())?;
                for eq in model.equations() {
                    a -= eq.iter().map(|m| numerator_weight(&w, m)).min().unwrap_or(0) as i64;
                }
            }
            if a != p.discrepancy() as i64 {
                return Err(format!("{p}: {a}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} family weights"))
}

fn c7() -> Verdict {
    let reps = [("bezout", scan_bezout(200)), ("cA split", scan_ca_split(60, 4)), ("delta", scan_delta(6, 60, 2))];
    let mut parts = Vec::new();
    for (name, r) in reps {
        if let Some(f) = r.failures.first() {
            return Err(format!("{name}: {f}"));
        }
        parts.push(format!("{name} {}", r.checked));
    }
    Ok(parts.join(", "))
}

fn c8() -> Verdict {
    let bounds = FamilyBounds { a_max: 25, d_max: 8, n_max: 4, min_discrepancy: 1 };
    let mut total = 0;
    for tag in FamilyTag::ALL.into_iter().filter(|&t| t != FamilyTag::Smooth) {
        let r = scan_assumption_a(tag, &bounds, 100);
        if r.checked != 100 {
            return Err(format!("{tag}: only {} pairs", r.checked));
        }
        if let Some(f) = r.failures.first() {
            return Err(format!("{tag}: {f}"));
        }
        total += r.checked;
    }
    Ok(format!("{total} pairs over 6 families"))
}

fn c9() -> Verdict {
    let two = check_boundindex(2, &FamilyBounds::classification(25, 6, 8));
    if two.max_index.is_some_and(|n| n != 2) {
        return Err(format!("(1/2,1): max index {:?}", two.max_index));
    }
    let three = check_boundindex(3, &FamilyBounds::classification(15, 6, 12));
    if three.max_index.is_some_and(|n| n > 9) || !three.violations.is_empty() {
        return Err(format!("(1/3,1/2): max index {:?}", three.max_index));
    }
    let max = |m: Option<u64>| m.map_or("none".to_string(), |n| n.to_string());
    Ok(format!(
        "(1/2,1): {} survivors, max n {}; (1/3,1/2): {} survivors, max n {}",
        two.survivors,
        max(two.max_index),
        three.survivors,
        max(three.max_index)
    ))
}

fn c10() -> Verdict {
    let spec = IntervalSpec::reciprocal(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for tag in FamilyTag::ALL {
        let bounds = if tag == FamilyTag::Smooth {
            FamilyBounds { a_max: 20, ..FamilyBounds::default() }
        } else {
            FamilyBounds::classification(12, 6, 6)
        };
        let key = |order: Option<Vec<&'static str>>| {
            let r = classify_interval(tag, spec, &bounds, &ClassifyOptions { audit: false, order });
            let s: Vec<_> = r.survivors.iter().map(|s| (s.params, s.m, s.ct)).collect();
            (s, r.pruned_count)
        };
        let base = key(None);
        for _ in 0..20 {
            let mut order = rule_names(tag).to_vec();
            order.shuffle(&mut rng);
            if key(Some(order.clone())) != base {
                return Err(format!("{tag}: order {order:?} changes the survivors"));
            }
        }
    }
    Ok("20 permutations per family".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Brieskorn formula", c1, 1),
        ("search agrees with formula", c2, 10),
        ("cA_1 value 4/5", c3, 30),
        ("smooth lower bound suite", c4, 10),
        ("interval classification", c5, 120),
        ("family discrepancy identity", c6, 60),
        ("number-theory identities", c7, 30),
        ("Assumption A pairs", c8, 10),
        ("index bound", c9, 120),
        ("rule-order independence", c10, 120),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let took = start.elapsed();
        let verdict = match verdict {
            Ok(d) if took > Duration::from_secs(*limit) => Err(format!("{d}; over the {limit} s limit")),
            v => v,
        };
        let (tag, detail) = match &verdict {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(verdict.is_err());
        println!("criterion {:>2} {tag}  {name}: {detail} [{:.2} s]", i + 1, took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}

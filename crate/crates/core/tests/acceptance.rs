//! Acceptance criteria, one line per criterion. Run with
//! `cargo test --release -p torcob --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use common::{brute_canonical, brute_lens, cofactor_det, determinantal_divisor, family, i};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use torcob::charfun::{
    rach1_condition, validate_hyper, validate_rational_simplex, HyperCharFn, RationalCharFn,
};
use torcob::cobord::{
    build_certificate, eps_search_dim3, eps_search_general, extension_is_valid, lem2_chain,
    verify_certificate, verify_chain, ReductionNode,
};
use torcob::exactlin::{ivec, smith_form, IntMatrix};
use torcob::lensid::{canonical_form, class_key, identify, lenscla2_translate, LensClass};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Option<Duration>, elapsed: Duration) -> Result<(), String> {
    match limit {
        Some(l) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
        _ => Ok(()),
    }
}

fn survey_q1() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = torcob::cli::run(
        [
            "torcob",
            "survey",
            "--dim",
            "2",
            "--max-sum",
            "50",
            "--jobs",
            "4",
        ],
        &mut out,
        &mut err,
    );
    let text = String::from_utf8(out).unwrap();
    check(code == 0, || format!("exit status {code}"))?;
    check(text.contains("\nfailures: 0\n"), || {
        "nonzero failures".into()
    })?;
    check(text.contains("\nbound: 50\n"), || "bound below 50".into())?;
    // independent count of the family
    let expected = family(2, 50).len();
    let line = text
        .lines()
        .find(|l| l.starts_with("tuples: "))
        .unwrap_or("");
    check(line == format!("tuples: {expected}"), || {
        format!("{line}, expected {expected}")
    })?;
    Ok(format!("{expected} tuples, 0 failures"))
}

fn worked_example() -> Outcome {
    let b: IntMatrix = "3,5;2,3".parse().unwrap();
    let r = lenscla2_translate(&i(8), &ivec(&[-5, -7]), &b).map_err(|e| e.to_string())?;
    let got = canonical_form(&i(8), &r).unwrap();
    let want = canonical_form(&i(8), &ivec(&[1, 3])).unwrap();
    check(got == want, || format!("canonical {got:?} != {want:?}"))?;
    check(
        brute_canonical(&i(8), &r) == brute_canonical(&i(8), &ivec(&[1, 3])),
        || "brute-force canonical forms differ".into(),
    )?;
    Ok(format!("r = {r:?}, canonical {got:?}"))
}

fn identify_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1001);
    let mut done = 0;
    let mut tries = 0u64;
    while done < 1000 {
        tries += 1;
        let n = rng.gen_range(1..=2usize);
        let cols: Vec<Vec<BigInt>> = (0..=n)
            .map(|_| (0..=n).map(|_| i(rng.gen_range(-6..=6))).collect())
            .collect();
        if !validate_hyper(n, &cols).unwrap().is_valid() {
            continue;
        }
        let rows: Vec<Vec<BigInt>> = (0..=n)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let d = cofactor_det(&rows).abs();
        if d < i(2) || d > i(30) {
            continue;
        }
        let f = HyperCharFn::new(cols.clone()).unwrap();
        let got = identify(&f).map_err(|e| format!("{cols:?}: {e}"))?;
        let (p, r) =
            brute_lens(&cols).ok_or_else(|| format!("{cols:?}: oracle found no generator"))?;
        let LensClass::Lens { p: gp, r: gr } = class_key(&got).unwrap() else {
            return Err(format!("{cols:?}: identified {got}"));
        };
        check(gp == p && gr == brute_canonical(&p, &r), || {
            format!("{cols:?}: {got} vs oracle L({p}; {r:?})")
        })?;
        done += 1;
    }
    Ok(format!("1000 agreements ({tries} draws)"))
}

fn chains() -> Outcome {
    let mut count = 0;
    for p in 2..=200i64 {
        for q in 1..p {
            if q.gcd(&p) != 1 {
                continue;
            }
            let c = lem2_chain(&i(q), &i(p)).map_err(|e| format!("({q},{p}): {e}"))?;
            verify_chain(&c).map_err(|d| format!("({q},{p}): {d}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} chains accepted"))
}

fn walk(node: &ReductionNode) -> Result<(), String> {
    if node.children.is_empty() {
        return check(node.p.is_one(), || format!("leaf with p = {}", node.p));
    }
    for c in &node.children {
        check(c.p < node.p, || format!("p {} -> {}", node.p, c.p))?;
        walk(c)?;
    }
    Ok(())
}

fn certify_all(tuples: &[(Vec<BigInt>, BigInt)]) -> Result<usize, String> {
    let mut nodes = 0;
    for (q, p) in tuples {
        let t = build_certificate(p, q)
            .map_err(|e| format!("L({p}; {q:?}): {e}"))?
            .ok_or_else(|| format!("L({p}; {q:?}): no certificate"))?;
        let report = verify_certificate(&t);
        check(report.accepted(), || format!("L({p}; {q:?}): {report}"))?;
        walk(&t.root).map_err(|e| format!("L({p}; {q:?}): {e}"))?;
        nodes += t.root.node_count();
    }
    Ok(nodes)
}

fn trees_dim3() -> Outcome {
    let tuples = family(2, 50);
    let nodes = certify_all(&tuples)?;
    Ok(format!("{} trees, {nodes} nodes", tuples.len()))
}

fn trees_higher() -> Outcome {
    let tuples: Vec<_> = family(3, 15 + 3 * 14)
        .into_iter()
        .filter(|(q, p)| {
            p <= &i(15) && (0..3).all(|a| (a + 1..3).all(|b| q[a].gcd(&q[b]).is_one()))
        })
        .collect();
    check(tuples.contains(&(ivec(&[1, 2, 3]), i(5))), || {
        "(5,(1,2,3)) not enumerated".into()
    })?;
    let nodes = certify_all(&tuples)?;
    Ok(format!("{} trees, {nodes} nodes", tuples.len()))
}

fn equivalences() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for k in 0..10_000 {
        let p: i64 = rng.gen_range(2..=120);
        let units: Vec<i64> = (1..p).filter(|x| x.gcd(&p) == 1).collect();
        let (q1, q2) = (
            units[rng.gen_range(0..units.len())],
            units[rng.gen_range(0..units.len())],
        );
        let (a, b, c) = if k % 2 == 0 {
            (-(rng.gen_range(0..=1)), -(rng.gen_range(0..=1)), 1)
        } else {
            (
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
            )
        };
        let eta = vec![
            ivec(&[-q1, -q2, p]),
            ivec(&[1, 0, 0]),
            ivec(&[0, 1, 0]),
            ivec(&[a, b, c]),
        ];
        let generic = validate_rational_simplex(3, &eta).unwrap().is_valid();
        let fast = rach1_condition(&i(a), &i(b), &i(c), &i(q1), &i(q2), &i(p));
        check(generic == fast, || {
            format!("(a,b,c)=({a},{b},{c}) q=({q1},{q2}) p={p}")
        })?;
    }
    let tuples = family(2, 40);
    for (q, p) in &tuples {
        let fast = eps_search_dim3(&q[0], &q[1], p).unwrap();
        let slow = eps_search_general(q, p).unwrap();
        check(fast.is_some() == slow.is_some(), || format!("{q:?} {p}"))?;
        for e in fast.iter().chain(slow.iter()) {
            check(extension_is_valid(p, q, e).unwrap(), || {
                format!("{q:?} {p} {e}")
            })?;
        }
    }
    // the extension used by the dim-3 search is a genuine rational function
    let _ = RationalCharFn::simplex(RationalCharFn::lens_extension_vectors(
        &i(5),
        &ivec(&[2, 4]),
        &[-1, 0],
    ))
    .map_err(|e| e.to_string())?;
    Ok(format!("10000 random instances, {} tuples", tuples.len()))
}

fn exact_linalg() -> Outcome {
    let mut rng = StdRng::seed_from_u64(42);
    for _ in 0..1000 {
        let (r, c) = (rng.gen_range(1..=5usize), rng.gen_range(1..=5usize));
        let rows: Vec<Vec<BigInt>> = (0..r)
            .map(|_| (0..c).map(|_| i(rng.gen_range(-20..=20))).collect())
            .collect();
        let a = IntMatrix::from_rows(&rows).unwrap();
        let s = smith_form(&a);
        let uav =
            s.u.checked_mul(&a)
                .and_then(|m| m.checked_mul(&s.v))
                .unwrap();
        check(uav == s.d, || format!("U A V != D for {a}"))?;
        let as_rows = |m: &IntMatrix| -> Vec<Vec<BigInt>> {
            (0..m.rows()).map(|k| m.row(k).to_vec()).collect()
        };
        check(cofactor_det(&as_rows(&s.u)).abs().is_one(), || {
            format!("U not unimodular for {a}")
        })?;
        check(cofactor_det(&as_rows(&s.v)).abs().is_one(), || {
            format!("V not unimodular for {a}")
        })?;
        check(s.d.is_diagonal(), || format!("D not diagonal for {a}"))?;
        let diag = s.d.diagonal();
        check(diag.iter().all(|x| !x.is_negative()), || {
            format!("negative divisor for {a}")
        })?;
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            };
            check(ok, || {
                format!("divisibility chain broken for {a}: {diag:?}")
            })?;
        }
        // d_1 ... d_k = gcd of k x k minors
        if r.max(c) <= 4 {
            let mut prod = BigInt::one();
            for (k, d) in diag.iter().enumerate() {
                prod *= d;
                check(prod == determinantal_divisor(&rows, k + 1), || {
                    format!("determinantal divisor {} mismatch for {a}", k + 1)
                })?;
            }
        }
    }
    let mut count = 0;
    for x in itertools4(-3..=3) {
        let m = IntMatrix::from_rows(&[vec![x[0], x[1]], vec![x[2], x[3]]]).unwrap();
        let rows = vec![ivec(&[x[0], x[1]]), ivec(&[x[2], x[3]])];
        check(m.det().unwrap() == cofactor_det(&rows), || {
            format!("det mismatch {x:?}")
        })?;
        count += 1;
    }
    Ok(format!("1000 Smith forms, {count} 2x2 determinants"))
}

fn itertools4(range: std::ops::RangeInclusive<i64>) -> Vec<[i64; 4]> {
    let v: Vec<i64> = range.collect();
    let mut out = Vec::new();
    for &a in &v {
        for &b in &v {
            for &c in &v {
                for &d in &v {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 8] = [
        (
            "question 1 survey, sum <= 50",
            survey_q1,
            Some(Duration::from_secs(5)),
        ),
        (
            "L(8;-5,-7) translates to the class of L(8;1,3)",
            worked_example,
            None,
        ),
        (
            "identify vs subgroup enumeration",
            identify_oracle,
            Some(Duration::from_secs(30)),
        ),
        (
            "unimodular chains, p <= 200",
            chains,
            Some(Duration::from_secs(10)),
        ),
        ("reduction trees, n = 2, sum <= 50", trees_dim3, None),
        (
            "reduction trees, n = 3 pairwise coprime, p <= 15",
            trees_higher,
            None,
        ),
        ("rach1 / question 2 equivalences", equivalences, None),
        ("exact linear algebra", exact_linalg, None),
    ];
    let mut failed = 0;
    for (k, (name, f, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let res = f().and_then(|msg| within(limit, start.elapsed()).map(|_| msg));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("[PASS] {} {name}: {msg} ({secs:.2}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {} {name}: {msg} ({secs:.2}s)", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}

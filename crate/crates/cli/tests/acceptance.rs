//! Acceptance suite: one line per criterion, exact oracles, pinned time
//! limits. Runs without the libtest harness so the lines always print.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use piso_lab_core::covariance::{
    check_covariant_pair, check_left_nica, check_piso_rep, check_right_nica, criterion_equivalence_audit, AuditKind,
};
use piso_lab_core::padic::{
    bd_invariants, beta_apply, coset_count, fourier_probe, mult_order, stability_exponent, CyclicContext,
    GroupAlgebraElement, OdometerPoint,
};
use piso_lab_core::{
    qa_decomposition, sup_norm, BasisPoint, BpFunction, CrossedProductElement, Element, NormMethod, RepresentationKind,
    RepresentationSpec, Semigroup, SpanningMonomial, System, WindowSpec,
};

type Check = Result<String, String>;

const SEED: u64 = 0x5eed_2024;
const PROBE_TOLERANCE: f64 = 1e-9;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn window(spec: &str) -> (WindowSpec, Semigroup, Vec<Element>) {
    let w: WindowSpec = spec.parse().expect("window spec");
    let elements = w.enumerate().expect("window");
    (w.clone(), w.semigroup(), elements)
}

fn rep_for(spec: &str, kind: RepresentationKind) -> (RepresentationSpec, Vec<Element>, Vec<BasisPoint>) {
    let (w, d, elements) = window(spec);
    let rep = RepresentationSpec::build(&d, kind).expect("representation");
    let basis = rep.basis_for(&w).expect("basis");
    (rep, elements, basis)
}

fn rational(rng: &mut ChaCha8Rng) -> BigRational {
    let mut num = 0i64;
    while num == 0 {
        num = rng.random_range(-6..=6);
    }
    BigRational::new(num.into(), rng.random_range(1i64..=4).into())
}

/// Multiples of each point of `big` inside `big`: `Pg` for the left side,
/// `gP` for the right, built from the multiplication table alone.
fn multiples(d: &Semigroup, big: &[Element], left: bool) -> BTreeMap<Element, BTreeSet<Element>> {
    let members: BTreeSet<&Element> = big.iter().collect();
    let mut out: BTreeMap<Element, BTreeSet<Element>> = BTreeMap::new();
    for g in big {
        let set = out.entry(g.clone()).or_default();
        for s in big {
            let z = if left { d.multiply(s, g) } else { d.multiply(g, s) }.expect("product");
            if members.contains(&z) {
                set.insert(z);
            }
        }
    }
    out
}

fn brute_lcm(table: &BTreeMap<Element, BTreeSet<Element>>, x: &Element, y: &Element) -> Option<Element> {
    let common: BTreeSet<&Element> = table[x].intersection(&table[y]).collect();
    if common.is_empty() {
        return None;
    }
    let gens: Vec<&Element> = common
        .iter()
        .copied()
        .filter(|g| common.iter().all(|z| table[*g].contains(*z)))
        .collect();
    assert_eq!(
        gens.len(),
        1,
        "intersection of ideals of {x}, {y} has generators {gens:?}"
    );
    Some(gens[0].clone())
}

fn lcm_correctness() -> Check {
    let specs = [
        "Nk:k=2,max=6",
        "Free:n=2,len=4",
        "NTimes:primes=2,3,5;maxexp=2",
        "Op:Free:n=2,len=3",
        "Prod:Nk:k=1,max=3|Free:n=2,len=2",
    ];
    let mut pairs = 0;
    for spec in specs {
        let (w, d, elements) = window(spec);
        let big = w.doubled().enumerate().expect("doubled window");
        let left = multiples(&d, &big, true);
        let right = multiples(&d, &big, false);
        for x in &elements {
            for y in &elements {
                let l = d.left_lcm(x, y).expect("left_lcm");
                let r = d.right_lcm(x, y).expect("right_lcm");
                ensure(l == brute_lcm(&left, x, y), || {
                    format!("{spec}: left_lcm({x}, {y}) = {l:?}")
                })?;
                ensure(r == brute_lcm(&right, x, y), || {
                    format!("{spec}: right_lcm({x}, {y}) = {r:?}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs over {} windows", specs.len()))
}

fn canonical_covariance() -> Check {
    let mut runs = Vec::new();
    for spec in ["Nk:k=2,max=6", "Free:n=2,len=4", "NTimes:primes=2,3,5;maxexp=2"] {
        let (rep, elements, basis) = rep_for(spec, RepresentationKind::CanonicalW);
        for report in [
            check_piso_rep(&rep, &elements, &basis).expect("piso_rep"),
            check_right_nica(&rep, &elements, &basis).expect("right_nica"),
        ] {
            ensure(report.passed(), || {
                format!("{spec}: {} failed: {:?}", report.check, report.witnesses.first())
            })?;
            runs.push(report.check);
        }
    }
    let (rep, elements, basis) = rep_for("Nk:k=1,max=6", RepresentationKind::CanonicalW);
    let report = check_left_nica(&rep, &elements, &basis).expect("left_nica");
    ensure(report.passed(), || {
        format!("N: left_nica failed: {:?}", report.witnesses.first())
    })?;
    Ok(format!("{} checks on 3 families + left_nica over N", runs.len()))
}

fn negative_detection() -> Check {
    let (rep, elements, basis) = rep_for("Free:n=2,len=3", RepresentationKind::DegenerateFree);
    let ab = vec!["a".to_string(), "b".to_string()];
    let right = check_right_nica(&rep, &elements, &basis).expect("right_nica");
    let w = right.witnesses.first().ok_or("right_nica passed on degenerate_free")?;
    ensure(
        w.elements == ab && w.basis_point == "e[1]" && w.lhs == "e[1]" && w.rhs == "0",
        || format!("right_nica witness {w:?}"),
    )?;
    let left = check_left_nica(&rep, &elements, &basis).expect("left_nica");
    let w = left.witnesses.first().ok_or("left_nica passed on degenerate_free")?;
    ensure(w.elements == ab && w.basis_point == "e[0]", || {
        format!("left_nica witness {w:?}")
    })?;
    for check in ["right_nica", "left_nica"] {
        let status = Command::new(env!("CARGO_BIN_EXE_piso-lab"))
            .args([
                "check",
                "--semigroup",
                "Free:n=2,len=3",
                "--rep",
                "degenerate_free",
                "--checks",
                check,
            ])
            .output()
            .expect("cli runs")
            .status;
        ensure(status.code() == Some(1), || format!("cli {check} exit {status:?}"))?;
    }
    Ok("witnesses (a,b,e[1]) and (a,b,e[0]); cli exit 1".into())
}

fn criterion_audits() -> Check {
    let mut cases = Vec::new();
    for kind in [RepresentationKind::CanonicalW, RepresentationKind::DegenerateFree] {
        for audit in [AuditKind::FreeRight, AuditKind::FreeLeft] {
            cases.push(("Free:n=2,len=4", kind, audit));
        }
    }
    cases.push((
        "NTimes:primes=2,3;maxexp=2",
        RepresentationKind::CanonicalW,
        AuditKind::NTimesBicov,
    ));
    cases.push(("Nk:k=2,max=6", RepresentationKind::CanonicalW, AuditKind::N2Bicov));
    let mut verdicts = Vec::new();
    for (spec, kind, audit) in cases {
        let (rep, elements, basis) = rep_for(spec, kind);
        let report = criterion_equivalence_audit(&rep, audit, &elements, &basis).expect("audit");
        ensure(report.agree(), || {
            format!(
                "{kind} {}: criterion {} vs direct {}",
                audit.name(),
                report.criterion_holds(),
                report.direct_holds()
            )
        })?;
        verdicts.push(format!("{kind}/{}={}", audit.name(), report.criterion_holds()));
    }
    Ok(verdicts.join(" "))
}

fn covariant_pair() -> Check {
    let mut points = 0;
    for spec in ["Nk:k=1,max=8", "Nk:k=2,max=4", "Free:n=2,len=3"] {
        let (rep, elements, basis) = rep_for(spec, RepresentationKind::Compressed);
        let d = rep.semigroup().clone();
        let generators: Vec<BpFunction> = elements
            .iter()
            .map(|u| BpFunction::indicator(&d, u).expect("indicator"))
            .collect();
        let report = check_covariant_pair(&rep, &elements, &generators, &basis).expect("covariant_pair");
        ensure(report.passed(), || format!("{spec}: {:?}", report.witnesses.first()))?;
        points += basis.len();
    }
    Ok(format!("3 semigroups, {points} compressed basis points"))
}

fn qa_calculus() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for spec in ["Nk:k=2,max=6", "Free:n=2,len=4", "NTimes:primes=2,3,5;maxexp=2"] {
        let (_, d, elements) = window(spec);
        let unit = BpFunction::unit(&d);
        for _ in 0..200 {
            let size = rng.random_range(1..=5);
            let family: Vec<Element> = elements.choose_multiple(&mut rng, size).cloned().collect();
            let report = qa_decomposition(&d, &family).expect("qa");
            ensure(report.sum() == unit, || format!("{spec}: Σ Q_A ≠ 1_e for {family:?}"))?;
            for (i, a) in report.entries.iter().enumerate() {
                for b in &report.entries[i + 1..] {
                    let product = a.projection.multiply(&b.projection).expect("product");
                    ensure(product.is_zero(), || {
                        format!("{spec}: Q_A Q_B ≠ 0 for {:?}, {:?}", a.subset, b.subset)
                    })?;
                }
                let seen = elements
                    .iter()
                    .any(|r| !a.projection.evaluate(r).expect("eval").eq(&BigRational::default()));
                ensure(seen == a.nonzero, || {
                    format!("{spec}: nonzero flag of {:?} for {family:?}", a.subset)
                })?;
            }
        }
        for _ in 0..100 {
            let size = rng.random_range(1..=5);
            let family: Vec<Element> = elements.choose_multiple(&mut rng, size).cloned().collect();
            let terms: Vec<(Element, BigRational)> = family.into_iter().map(|u| (u, rational(&mut rng))).collect();
            let f = BpFunction::from_terms(&d, terms).expect("function");
            let formula = sup_norm(&f, NormMethod::Formula).expect("formula");
            let windowed = sup_norm(&f, NormMethod::Window(&elements)).expect("window");
            ensure(formula == windowed, || {
                format!("{spec}: ‖{f}‖ formula {formula} vs window {windowed}")
            })?;
        }
    }
    Ok("600 families, 300 norms".into())
}

fn random_element(d: &Semigroup, elements: &[Element], rng: &mut ChaCha8Rng) -> CrossedProductElement {
    let mut total = CrossedProductElement::zero(d, System::Diagonal);
    for _ in 0..rng.random_range(1..=2) {
        let x = elements.choose(rng).unwrap();
        let y = elements.choose(rng).unwrap();
        let terms: Vec<(Element, BigRational)> = (0..rng.random_range(1..=2))
            .map(|_| (elements.choose(rng).unwrap().clone(), rational(rng)))
            .collect();
        let f = BpFunction::from_terms(d, terms).expect("function");
        let m = SpanningMonomial::new(x, &f, y).expect("monomial");
        let term = CrossedProductElement::from_monomial(&m, System::Diagonal).expect("element");
        total = total.add(&term.scale(&rational(rng))).expect("sum");
    }
    total
}

fn composed(
    u: &CrossedProductElement,
    v: &CrossedProductElement,
    rep: &RepresentationSpec,
    b: &BasisPoint,
) -> Vec<(BigRational, BasisPoint)> {
    let mut acc: BTreeMap<BasisPoint, BigRational> = BTreeMap::new();
    for (c, p) in v.represent(rep, b).expect("represent") {
        for (c2, p2) in u.represent(rep, &p).expect("represent") {
            *acc.entry(p2).or_default() += &c * c2;
        }
    }
    acc.into_iter()
        .filter(|(_, c)| *c != BigRational::default())
        .map(|(p, c)| (c, p))
        .collect()
}

fn crossed_product_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut evaluations = 0usize;
    for spec in [
        "Nk:k=1,max=3",
        "Nk:k=2,max=2",
        "Free:n=2,len=2",
        "NTimes:primes=2,3;maxexp=1",
    ] {
        let (rep, elements, basis) = rep_for(spec, RepresentationKind::Compressed);
        let d = rep.semigroup().clone();
        for _ in 0..1000 {
            let u = random_element(&d, &elements, &mut rng);
            let v = random_element(&d, &elements, &mut rng);
            let uv = u.multiply(&v).expect("multiply");
            for b in &basis {
                let direct = uv.represent(&rep, b).expect("represent");
                ensure(direct == composed(&u, &v, &rep, b), || {
                    format!("{spec}: ({u})·({v}) at {b}")
                })?;
            }
            evaluations += basis.len();
        }
        for _ in 0..200 {
            let u = random_element(&d, &elements, &mut rng);
            let v = random_element(&d, &elements, &mut rng);
            let w = random_element(&d, &elements, &mut rng);
            let left = u.multiply(&v).and_then(|uv| uv.multiply(&w)).expect("multiply");
            let right = v.multiply(&w).and_then(|vw| u.multiply(&vw)).expect("multiply");
            ensure(left == right, || {
                format!("{spec}: associativity fails for {u}; {v}; {w}")
            })?;
        }
    }
    Ok(format!("{evaluations} pointwise comparisons, 800 triples"))
}

fn brute_order(q: u64, n: u64) -> u64 {
    let (mut x, mut t) = (q % n, 1);
    while x != 1 {
        x = x * q % n;
        t += 1;
    }
    t
}

fn order_stabilization() -> Check {
    let mut checked = 0;
    for p in [3u64, 5, 7, 11] {
        for q in [2u64, 3, 5, 7].into_iter().filter(|&q| q != p) {
            let l = stability_exponent(p, q).expect("stability exponent");
            let ord_p = mult_order(&BigUint::from(q), &BigUint::from(p)).expect("order");
            for ell in 1..=8u32 {
                let modulus = BigUint::from(p).pow(ell);
                let got = mult_order(&BigUint::from(q), &modulus).expect("order");
                let want = BigUint::from(p).pow(ell.saturating_sub(l)) * &ord_p;
                ensure(got == want, || format!("ord_{p}^{ell}({q}) = {got}, formula {want}"))?;
                if let Ok(small) = u64::try_from(&modulus) {
                    if small <= 200_000 {
                        let brute = brute_order(q, small);
                        ensure(got == BigUint::from(brute), || {
                            format!("ord_{small}({q}) = {got}, brute {brute}")
                        })?;
                    }
                }
                checked += 1;
            }
            let bd = bd_invariants(p, q).expect("bd");
            ensure(bd.l == l, || format!("bd L for ({p},{q})"))?;
            for k in l..=l + 4 {
                let count = coset_count(p, k, q).expect("coset count");
                ensure(count == bd.count, || {
                    format!("coset_count({p},{k},{q}) = {count} vs {}", bd.count)
                })?;
            }
        }
    }
    let wieferich = stability_exponent(1093, 2).expect("stability exponent");
    ensure(wieferich >= 2, || format!("L_1093(2) = {wieferich}"))?;
    Ok(format!("{checked} orders, L_1093(2) = {wieferich}"))
}

fn beta_laws() -> Check {
    let ctx = CyclicContext::new(3, 5, 2, 1).expect("context");
    let modulus = ctx.modulus();
    let basis: Vec<GroupAlgebraElement> = (0..modulus).map(|r| GroupAlgebraElement::basis(modulus, r)).collect();
    let exponents: Vec<(u32, u32)> = (0..=3).flat_map(|m| (0..=2).map(move |n| (m, n))).collect();
    for u in &basis {
        ensure(beta_apply(&ctx, (0, 0), u).expect("beta") == *u, || {
            "β_(0,0) ≠ id".into()
        })?;
    }
    for &(m, n) in &exponents {
        for &(a, b) in &exponents {
            for u in &basis {
                let twice = beta_apply(&ctx, (a, b), &beta_apply(&ctx, (m, n), u).expect("beta")).expect("beta");
                let once = beta_apply(&ctx, (m + a, n + b), u).expect("beta");
                ensure(twice == once, || {
                    format!("β_({a},{b})β_({m},{n}) ≠ β_({},{})", m + a, n + b)
                })?;
            }
        }
    }
    for &(m, n) in exponents.iter().filter(|(m, n)| *m <= ctx.k && *n <= ctx.l) {
        let e = beta_apply(&ctx, (m, n), &basis[0]).expect("beta");
        ensure(e.multiply(&e).expect("product") == e, || {
            format!("β_({m},{n})(u_0) not idempotent")
        })?;
    }
    let mut worst: f64 = 0.0;
    for &mn in &exponents {
        let probe = fourier_probe(&ctx, mn).expect("probe");
        ensure(probe.passes(PROBE_TOLERANCE), || format!("probe at {mn:?}: {probe:?}"))?;
        worst = worst.max(probe.max_error);
    }
    Ok(format!(
        "Z/{modulus}, {} exponents, probe max error {worst:.1e}",
        exponents.len()
    ))
}

fn odometer() -> Check {
    let start = OdometerPoint::new(2, 3, 2, &[1, 2, 0]).expect("point");
    ensure(start.step().digits() == [0, 0, 1], || {
        format!("(1,2,0) ↦ {}", start.step())
    })?;
    let zero = OdometerPoint::zero(2, 3, 2).expect("point");
    ensure(zero.step().digits() == [1, 0, 0], || {
        format!("(0,0,0) ↦ {}", zero.step())
    })?;
    for (d, p, depth) in [(2u64, 3u64, 4usize), (4, 5, 3)] {
        let origin = OdometerPoint::zero(d, p, depth).expect("point");
        let expected = d * p.pow(depth as u32);
        let mut seen = BTreeSet::new();
        let mut point = origin.clone();
        loop {
            ensure(seen.insert(point.digits().to_vec()), || {
                format!("orbit of ({d},{p},{depth}) revisits {point}")
            })?;
            point = point.step();
            if point == origin {
                break;
            }
        }
        ensure(
            seen.len() as u64 == expected && origin.period() == u128::from(expected),
            || format!("cycle length {} for ({d},{p},{depth}), expected {expected}", seen.len()),
        )?;
    }
    Ok("carry example reproduced; cycles of length 162 and 500".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() {
    if let Ok(threads) = std::env::var("PISO_LAB_THREADS") {
        if let Ok(n) = threads.parse() {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
        }
    }
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "lcm correctness",
            limit: secs(5),
            run: lcm_correctness,
        },
        Criterion {
            id: 2,
            name: "canonical covariance",
            limit: secs(30),
            run: canonical_covariance,
        },
        Criterion {
            id: 3,
            name: "negative detection",
            limit: secs(5),
            run: negative_detection,
        },
        Criterion {
            id: 4,
            name: "criterion audits",
            limit: secs(60),
            run: criterion_audits,
        },
        Criterion {
            id: 5,
            name: "covariant pair",
            limit: secs(60),
            run: covariant_pair,
        },
        Criterion {
            id: 6,
            name: "Q_A calculus",
            limit: secs(60),
            run: qa_calculus,
        },
        Criterion {
            id: 7,
            name: "crossed-product oracle",
            limit: secs(120),
            run: crossed_product_oracle,
        },
        Criterion {
            id: 8,
            name: "order stabilization",
            limit: secs(10),
            run: order_stabilization,
        },
        Criterion {
            id: 9,
            name: "beta action laws",
            limit: secs(10),
            run: beta_laws,
        },
        Criterion {
            id: 10,
            name: "odometer",
            limit: secs(5),
            run: odometer,
        },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    for c in criteria {
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| c.name.contains(f.as_str()) || f == &c.id.to_string())
        {
            continue;
        }
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        let elapsed = started.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; over the time limit")),
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(detail) => ("PASS", detail),
            Err(detail) => ("FAIL", detail),
        };
        println!(
            "criterion {:>2} {:<24} {status} {:>7.2}s (limit {:>3}s)  {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        failures += usize::from(outcome.is_err());
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}

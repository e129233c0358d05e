//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use gexp_core::constructor::{certify_theorem, construct, kostant_oracle, Case, CertifyOptions};
use gexp_core::exterior_oracle::{adjoint_report, little_adjoint_report};
use gexp_core::genexp::{base_theta, base_theta_short, binomial_identity_holds, closed_e, covered_weights, recur_e};
use gexp_core::gpartitions::{count_lr, GPartition};
use gexp_core::orders::{
    all_subsets, coordinatewise_leq_raw, dominance_leq_raw, enumerate_dominant_below, is_small_raw, two_rho_minus_delta,
    OrderFilter,
};
use gexp_core::recurrence::{max_index, minuscule_row, verify_aggregate};
use gexp_core::weyl_oracle::{freudenthal, klimyk_tensor, lusztig_e, weyl_dim, Caps};
use gexp_core::{build_root_datum, Family, PolyT, RootDatum, Weight};

type Outcome = (bool, String);

fn datum(f: Family, n: usize) -> RootDatum {
    build_root_datum(f, n).expect("root datum")
}

fn two_rho(d: &RootDatum) -> Weight {
    d.weight(d.rho.coords2.iter().map(|c| 2 * c).collect()).unwrap()
}

fn fw(d: &RootDatum, c: &[i64]) -> Weight {
    d.weight_from_fundamental(c).unwrap()
}

fn c1_census() -> Outcome {
    let d = datum(Family::C, 3);
    let bound = two_rho(&d);
    let dom = enumerate_dominant_below(&d, &bound, OrderFilter::Dominance).unwrap().len();
    let cw = enumerate_dominant_below(&d, &bound, OrderFilter::DominanceAndCoordinatewise).unwrap().len();
    let small = enumerate_dominant_below(&d, &bound, OrderFilter::Small).unwrap().len();
    let mut delta = 0;
    let mut delta_fail = 0;
    for set in all_subsets(3).into_iter().filter(|s| !s.is_empty()) {
        let (v, _) = two_rho_minus_delta(&d, &set).unwrap();
        if d.is_dominant(&v.coords2) {
            delta += 1;
            if !coordinatewise_leq_raw(&v.coords2, &bound.coords2) {
                delta_fail += 1;
            }
        }
    }
    let ok = dom == 35 && cw == 30 && small == 4 && delta == 7 && delta_fail == 4;
    (ok, format!("dominance {dom} (want 35), coordinatewise {cw} (want 30), small {small} (want 4), 2rho-delta_I {delta} (want 7) of which not coordinatewise {delta_fail} (want 4)"))
}

fn c2_golden() -> Outcome {
    let mut bad = Vec::new();
    let mut check = |name: &str, f: Family, n: usize, coeffs: &[i64], want: &[i64]| {
        let d = datum(f, n);
        let cert = construct(&d, &fw(&d, coeffs)).unwrap();
        if cert.partition.flat() != want || !cert.passed() {
            bad.push(format!("{name}: got {}", cert.partition));
        }
    };
    check("C3 2w3", Family::C, 3, &[0, 0, 2], &[1, 1, 1, 1, 1, 1, 0, 0, 0]);
    check("C3 4w1", Family::C, 3, &[4, 0, 0], &[0, 0, 0, 0, 1, 1, 2, 2, 2]);
    check("B3 4w1+2w3", Family::B, 3, &[4, 0, 2], &[0, 0, 0, 0, 1, 1, 0, 0, 0]);
    check("B3 4w1", Family::B, 3, &[4, 0, 0], &[0, 0, 0, 0, 1, 1, 1, 1, 1]);

    let d = datum(Family::C, 4);
    let cert = construct(&d, &fw(&d, &[0, 0, 0, 1])).unwrap();
    let mut want = GPartition::zero(4);
    for i in 1..=4 {
        want.set_ms(i, 2);
    }
    want.set_m(3, 4, 1);
    want.set_mp(3, 4, 1);
    want.set_m(2, 4, 2);
    want.set_mp(2, 4, 1);
    for (i, j) in [(1, 2), (1, 4)] {
        want.set_m(i, j, 1);
        want.set_mp(i, j, 1);
    }
    want.set_m(1, 3, 1);
    if cert.partition != want || !cert.passed() || cert.case_used != Case::B {
        bad.push(format!("C4 w4: got {}", cert.partition));
    }
    (bad.is_empty(), if bad.is_empty() { "5 constructions bit-exact".into() } else { bad.join("; ") })
}

const SWEEP: [(Family, usize); 7] =
    [(Family::B, 2), (Family::B, 3), (Family::B, 4), (Family::C, 2), (Family::C, 3), (Family::C, 4), (Family::D, 4)];

fn c3_theorem_sweep() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (f, n) in SWEEP {
        let rep = certify_theorem(&datum(f, n), &CertifyOptions::default()).unwrap();
        ok &= rep.failures.is_empty() && rep.total > 0;
        parts.push(format!("{f}{n} {}/{}", rep.passed, rep.total));
    }
    (ok, parts.join(", "))
}

fn c4_kostant() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (f, n) in [(Family::B, 2), (Family::B, 3), (Family::C, 2), (Family::C, 3), (Family::D, 4)] {
        let o = kostant_oracle(&datum(f, n), &Caps::default()).unwrap();
        ok &= o.holds();
        parts.push(format!("{f}{n} {}/{} extra {}", o.confirmed, o.below, o.extra.len()));
    }
    (ok, parts.join(", "))
}

fn small_fundamental_combos(d: &RootDatum) -> Vec<Weight> {
    let n = d.rank;
    let mut out = vec![d.zero()];
    for i in 0..n {
        let mut c = vec![0; n];
        c[i] = 1;
        out.push(fw(d, &c));
        for j in i..n {
            let mut c2 = c.clone();
            c2[j] += 1;
            out.push(fw(d, &c2));
        }
    }
    out
}

fn c5_lr() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (f, n) in [(Family::B, 2), (Family::B, 3), (Family::C, 2), (Family::C, 3), (Family::D, 4)] {
        let d = datum(f, n);
        let ws = small_fundamental_combos(&d);
        let mut pairs = 0;
        let mut bad = 0;
        for l in &ws {
            for m in &ws {
                let tensor = klimyk_tensor(&d, l, m, &Caps::default()).unwrap();
                let top = d.weight(d.add(&l.coords2, &m.coords2)).unwrap();
                for nu in enumerate_dominant_below(&d, &top, OrderFilter::Dominance).unwrap() {
                    let (c, _) = count_lr(&d, l, m, &nu, false).unwrap();
                    if c as i64 != tensor.get(&nu.coords2) {
                        bad += 1;
                    }
                }
                if tensor.mults.keys().any(|k| !dominance_leq_raw(&d, k, &top.coords2)) {
                    bad += 1;
                }
                pairs += 1;
            }
        }
        ok &= bad == 0;
        parts.push(format!("{f}{n} {pairs} pairs, {bad} mismatches"));
    }
    (ok, parts.join(", "))
}

fn c6_genexp() -> Outcome {
    let caps = Caps::default();
    let mut parts = Vec::new();
    let mut ok = true;
    for (f, n) in [
        (Family::B, 2),
        (Family::B, 3),
        (Family::B, 4),
        (Family::C, 2),
        (Family::C, 3),
        (Family::C, 4),
        (Family::D, 4),
        (Family::D, 5),
    ] {
        let d = datum(f, n);
        let recur = recur_e(&d).unwrap();
        let covered = covered_weights(&d).unwrap();
        let mut good = 0;
        for cw in &covered {
            let closed = closed_e(&d, &cw.weight).unwrap();
            let rec = recur.iter().find(|(w, _)| w.coords2 == cw.weight.coords2).map(|(_, p)| p.clone());
            let oracle = lusztig_e(&d, &cw.weight, &caps).unwrap();
            if rec.as_ref() == Some(&closed) && oracle == closed {
                good += 1;
            }
        }
        let mut base = lusztig_e(&d, &d.theta, &caps).unwrap() == base_theta(&d);
        if let Some(ts) = &d.theta_short {
            base &= lusztig_e(&d, ts, &caps).unwrap() == base_theta_short(&d).unwrap();
        }
        ok &= good == covered.len() && base;
        parts.push(format!("{f}{n} {good}/{} base {}", covered.len(), if base { "ok" } else { "bad" }));
    }
    (ok, parts.join(", "))
}

fn c7_recurrence() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (f, n) in [(Family::B, 3), (Family::B, 4), (Family::D, 4), (Family::D, 5)] {
        let d = datum(f, n);
        let mut checks = 0;
        let mut failed = Vec::new();
        for k in 1..=max_index(f, n) {
            let rep = verify_aggregate(&d, k, &Caps::default()).unwrap();
            checks += rep.checks.len();
            failed.extend(rep.checks.iter().filter(|c| !c.pass).map(|c| format!("k={k} {}", c.name)));
        }
        ok &= failed.is_empty();
        parts.push(if failed.is_empty() {
            format!("{f}{n} {checks} checks")
        } else {
            format!("{f}{n} failed [{}]", failed.join(", "))
        });
    }
    (ok, parts.join(", "))
}

fn c8_exterior() -> Outcome {
    let caps = Caps::default();
    let mut parts = Vec::new();
    let mut ok = true;
    let mut report = |label: String, checks: &[gexp_core::recurrence::Check]| {
        let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        ok &= failed.is_empty();
        parts.push(if failed.is_empty() {
            format!("{label} {} checks", checks.len())
        } else {
            format!("{label} failed [{}]", failed.join(", "))
        });
    };
    for f in [Family::B, Family::C] {
        let rep = adjoint_report(&datum(f, 2), &caps).unwrap();
        report(format!("{f}2 adjoint"), &rep.checks);
    }
    for (f, n) in [(Family::B, 2), (Family::B, 3), (Family::C, 2), (Family::C, 3), (Family::G2, 2)] {
        let rep = little_adjoint_report(&datum(f, n), &caps).unwrap();
        report(format!("{f}{n} little adjoint"), &rep.checks);
    }
    let d = datum(Family::B, 3);
    let rep = adjoint_report(&d, &caps).unwrap();
    let fact: Vec<_> = rep.checks.iter().filter(|c| c.name == "factorization[omega2]").cloned().collect();
    let present = fact.len() == 1;
    report("B3 adjoint w2 factorization".into(), &fact);
    (ok && present, parts.join(", "))
}

fn c9_properties() -> Outcome {
    let caps = Caps::default();
    let mut bad = Vec::new();

    for (f, n) in [(Family::B, 3), (Family::C, 3), (Family::D, 4)] {
        let d = datum(f, n);
        let ws: Vec<Vec<i64>> =
            enumerate_dominant_below(&d, &two_rho(&d), OrderFilter::Dominance).unwrap().into_iter().map(|w| w.coords2).collect();
        for a in &ws {
            if !dominance_leq_raw(&d, a, a) || !coordinatewise_leq_raw(a, a) {
                bad.push(format!("{f}{n} reflexivity"));
            }
            for b in &ws {
                for (name, le) in [
                    ("dominance", &(|x: &[i64], y: &[i64]| dominance_leq_raw(&d, x, y)) as &dyn Fn(&[i64], &[i64]) -> bool),
                    ("coordinatewise", &|x: &[i64], y: &[i64]| coordinatewise_leq_raw(x, y)),
                ] {
                    if a != b && le(a, b) && le(b, a) {
                        bad.push(format!("{f}{n} {name} antisymmetry"));
                    }
                    if le(a, b) {
                        for c in &ws {
                            if le(b, c) && !le(a, c) {
                                bad.push(format!("{f}{n} {name} transitivity"));
                            }
                        }
                    }
                }
            }
        }
    }

    for (f, n) in [(Family::B, 2), (Family::C, 3), (Family::D, 4), (Family::G2, 2)] {
        let d = datum(f, n);
        let fund = d.fundamental_weights.clone();
        for l in &fund {
            let dim = weyl_dim(&d, l).unwrap();
            if freudenthal(&d, l, &caps).unwrap().mults.values().sum::<i64>() as i128 != dim {
                bad.push(format!("{f}{n} Weyl dimension of {}", d.label(l)));
            }
            for m in &fund {
                let t = klimyk_tensor(&d, l, m, &caps).unwrap();
                if t.total_dim(&d) != dim * weyl_dim(&d, m).unwrap() {
                    bad.push(format!("{f}{n} tensor dimension {} x {}", d.label(l), d.label(m)));
                }
            }
        }
    }

    for (f, n) in [(Family::B, 3), (Family::C, 3), (Family::D, 4)] {
        let d = datum(f, n);
        for cw in covered_weights(&d).unwrap() {
            let e = lusztig_e(&d, &cw.weight, &caps).unwrap();
            if e.value_at_one() != freudenthal(&d, &cw.weight, &caps).unwrap().get(&d.zero().coords2) {
                bad.push(format!("{f}{n} E(1) at {}", d.label(&cw.weight)));
            }
        }
        for lam in enumerate_dominant_below(&d, &two_rho(&d), OrderFilter::Small).unwrap() {
            if lam.is_zero() {
                continue;
            }
            let row = minuscule_row(&d, &lam, &caps).unwrap();
            let mut acc = PolyT::zero();
            for (mu, c) in &row.entries {
                let e = lusztig_e(&d, &d.weight(mu.clone()).unwrap(), &caps).unwrap();
                acc += &(c.at_q_zero() * &e.subs_pow(2));
            }
            if !acc.is_zero() {
                bad.push(format!("{f}{n} annihilation at {}", d.label(&lam)));
            }
            if !is_small_raw(&d, &lam.coords2) {
                bad.push(format!("{f}{n} small filter"));
            }
        }
    }

    for n in 1..=8 {
        for s in 0..=n {
            if !binomial_identity_holds(n, s).unwrap() {
                bad.push(format!("t-binomial n={n} s={s}"));
            }
        }
    }
    bad.dedup();
    (bad.is_empty(), if bad.is_empty() { "order axioms, dimensions, E(1), annihilation, t-binomials".into() } else { bad.join("; ") })
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("C3 census", Duration::from_secs(1), c1_census),
        ("golden constructions", Duration::from_secs(1), c2_golden),
        ("theorem sweep", Duration::from_secs(60), c3_theorem_sweep),
        ("Kostant oracle", Duration::from_secs(300), c4_kostant),
        ("LR oracle equivalence", Duration::from_secs(600), c5_lr),
        ("generalized exponents", Duration::from_secs(120), c6_genexp),
        ("recurrence identities", Duration::from_secs(120), c7_recurrence),
        ("exterior algebra", Duration::from_secs(600), c8_exterior),
        ("property suites", Duration::from_secs(600), c9_properties),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let pass = ok && in_time;
        if !pass {
            failed += 1;
        }
        let time_note = if in_time { String::new() } else { format!(" over the {} s limit", limit.as_secs()) };
        println!(
            "criterion {} {}: {name} ({:.2} s{time_note}): {detail}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

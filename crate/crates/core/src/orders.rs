//! Dominance and coordinatewise orders, small weights and bounded enumeration.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::rootdata::{Family, RootDatum, Weight};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OrderFilter {
    Dominance,
    DominanceAndCoordinatewise,
    Small,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub mu: Weight,
    pub lambda: Weight,
    pub dominance_leq: bool,
    pub coordinatewise_leq: bool,
    /// Doubled partial sums of `lambda - mu`.
    pub partial_sums: Vec<i64>,
    /// The difference is integral, with even coordinate sum in types C and D.
    pub parity_ok: bool,
    /// `lambda - mu` in the basis of simple roots, when integral.
    pub simple_coords: Option<Vec<i64>>,
}

/// `mu <= lambda`: the difference is a nonnegative integer combination of simple roots.
pub fn dominance_leq(datum: &RootDatum, mu: &Weight, lambda: &Weight) -> Result<bool> {
    datum.check(mu)?;
    datum.check(lambda)?;
    Ok(dominance_leq_raw(datum, &mu.coords2, &lambda.coords2))
}

pub fn dominance_leq_raw(datum: &RootDatum, mu: &[i64], lambda: &[i64]) -> bool {
    let diff = datum.sub(lambda, mu);
    match datum.simple_coords(&diff) {
        Some(c) => c.iter().all(|&x| x >= 0),
        None => false,
    }
}

pub fn order_report(datum: &RootDatum, mu: &Weight, lambda: &Weight) -> Result<OrderReport> {
    let dominance = dominance_leq(datum, mu, lambda)?;
    let diff = datum.sub(&lambda.coords2, &mu.coords2);
    let partial_sums: Vec<i64> = diff
        .iter()
        .scan(0, |acc, &d| {
            *acc += d;
            Some(*acc)
        })
        .collect();
    let integral = diff.iter().all(|d| d % 2 == 0);
    let total: i64 = diff.iter().sum::<i64>() / 2;
    let parity_ok = integral && (!matches!(datum.family, Family::C | Family::D) || total % 2 == 0);
    Ok(OrderReport {
        mu: mu.clone(),
        lambda: lambda.clone(),
        dominance_leq: dominance,
        coordinatewise_leq: coordinatewise_leq(mu, lambda)?,
        partial_sums,
        parity_ok,
        simple_coords: datum.simple_coords(&diff),
    })
}

/// `mu ≲ lambda`: `lambda_i - mu_i >= 0` and `|lambda_i| >= |mu_i|` for every coordinate.
pub fn coordinatewise_leq(mu: &Weight, lambda: &Weight) -> Result<bool> {
    if mu.coords2.len() != lambda.coords2.len() {
        return Err(Error::LengthMismatch { expected: lambda.coords2.len(), got: mu.coords2.len() });
    }
    Ok(coordinatewise_leq_raw(&mu.coords2, &lambda.coords2))
}

pub fn coordinatewise_leq_raw(mu: &[i64], lambda: &[i64]) -> bool {
    mu.iter().zip(lambda).all(|(m, l)| l - m >= 0 && l.abs() >= m.abs())
}

/// Root lattice member with neither `2 theta <= lambda` nor `2 theta_s <= lambda`.
pub fn is_small(datum: &RootDatum, lambda: &Weight) -> bool {
    is_small_raw(datum, &lambda.coords2)
}

pub fn is_small_raw(datum: &RootDatum, lambda: &[i64]) -> bool {
    if !datum.in_root_lattice(lambda) {
        return false;
    }
    let twice = |w: &Weight| -> Vec<i64> { w.coords2.iter().map(|c| 2 * c).collect() };
    if dominance_leq_raw(datum, &twice(&datum.theta), lambda) {
        return false;
    }
    match &datum.theta_short {
        Some(ts) => !dominance_leq_raw(datum, &twice(ts), lambda),
        None => true,
    }
}

/// Dominant weights below `bound`, sorted lexicographically by doubled coordinates.
pub fn enumerate_dominant_below(datum: &RootDatum, bound: &Weight, filter: OrderFilter) -> Result<Vec<Weight>> {
    datum.check(bound)?;
    if !datum.is_dominant(&bound.coords2) {
        return Err(Error::NotDominant(bound.to_string()));
    }
    let all = match datum.family {
        Family::B | Family::C | Family::D => box_enumerate(datum, &bound.coords2),
        _ => descend_enumerate(datum, &bound.coords2),
    };
    Ok(all
        .into_iter()
        .filter(|mu| match filter {
            OrderFilter::Dominance => true,
            OrderFilter::DominanceAndCoordinatewise => coordinatewise_leq_raw(mu, &bound.coords2),
            OrderFilter::Small => is_small_raw(datum, mu),
        })
        .map(|v| datum.weight_canon(v))
        .collect())
}

/// Dominant coordinate vectors whose prefix sums stay below those of the bound, filtered
/// by the exact dominance test.
fn box_enumerate(datum: &RootDatum, bound: &[i64]) -> BTreeSet<Vec<i64>> {
    let n = datum.dim;
    let prefix: Vec<i64> = bound
        .iter()
        .scan(0, |acc, &d| {
            *acc += d;
            Some(*acc)
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut cur = vec![0i64; n];
    fn rec(
        datum: &RootDatum,
        bound: &[i64],
        prefix: &[i64],
        i: usize,
        sum: i64,
        cur: &mut Vec<i64>,
        out: &mut BTreeSet<Vec<i64>>,
    ) {
        let n = cur.len();
        if i == n {
            if dominance_leq_raw(datum, cur, bound) {
                out.insert(cur.clone());
            }
            return;
        }
        let top = if i == 0 { bound[0] } else { cur[i - 1] };
        let hi = top.min(prefix[i] - sum);
        let lo = if datum.family == Family::D && i == n - 1 { -top } else { 0 };
        let mut v = lo;
        while v <= hi {
            cur[i] = v;
            rec(datum, bound, prefix, i + 1, sum + v, cur, out);
            v += 1;
        }
        cur[i] = 0;
    }
    rec(datum, bound, &prefix, 0, 0, &mut cur, &mut out);
    out
}

/// Downward closure from the bound by subtracting positive roots, keeping dominant weights.
pub(crate) fn descend_enumerate(datum: &RootDatum, bound: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(bound.to_vec());
    queue.push_back(bound.to_vec());
    while let Some(mu) = queue.pop_front() {
        for a in &datum.positive_roots {
            let next = datum.sub(&mu, &a.coords2);
            if datum.is_dominant(&next) && !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    seen
}

/// `2 rho - delta_I` and the number of connected components of the Dynkin subdiagram on `I`.
/// Indices are 1-based.
pub fn two_rho_minus_delta(datum: &RootDatum, subset: &[usize]) -> Result<(Weight, usize)> {
    let mut idx: Vec<usize> = subset.to_vec();
    idx.sort();
    idx.dedup();
    for &i in &idx {
        if i == 0 || i > datum.rank {
            return Err(Error::IndexOutOfRange { index: i, max: datum.rank });
        }
    }
    let mut v: Vec<i64> = datum.rho.coords2.iter().map(|c| 2 * c).collect();
    for &i in &idx {
        v = datum.sub(&v, &datum.simple_roots[i - 1].coords2);
    }
    // Components: union-find over adjacent simple roots.
    let mut parent: Vec<usize> = (0..idx.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            let (ra, rb) = (&datum.simple_roots[idx[a] - 1].coords2, &datum.simple_roots[idx[b] - 1].coords2);
            if datum.form(ra, rb) != 0 {
                let (x, y) = (find(&mut parent, a), find(&mut parent, b));
                parent[x] = y;
            }
        }
    }
    let comps = (0..idx.len()).filter(|&a| find(&mut parent, a) == a).count();
    Ok((datum.weight_canon(v), comps))
}

/// All subsets of `1..=n`, as sorted index lists, in binary-counter order.
pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).map(|mask| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;

    fn two_rho(d: &RootDatum) -> Weight {
        d.weight_canon(d.rho.coords2.iter().map(|c| 2 * c).collect())
    }

    #[test]
    fn c3_examples() {
        let d = build_root_datum(Family::C, 3).unwrap();
        let w = |c: &[i64]| d.weight_from_fundamental(c).unwrap();
        assert!(dominance_leq(&d, &w(&[0, 1, 0]), &w(&[2, 0, 0])).unwrap());
        assert!(!dominance_leq(&d, &w(&[1, 0, 0]), &w(&[2, 0, 0])).unwrap());
        assert!(!coordinatewise_leq(&w(&[0, 1, 0]), &w(&[2, 0, 0])).unwrap());
        assert!(coordinatewise_leq(&w(&[1, 0, 0]), &w(&[0, 1, 0])).unwrap());
        let r = order_report(&d, &w(&[1, 0, 0]), &w(&[2, 0, 0])).unwrap();
        assert!(!r.parity_ok);
        assert!(r.partial_sums.iter().all(|&s| s >= 0));
    }

    #[test]
    fn c3_census() {
        let d = build_root_datum(Family::C, 3).unwrap();
        let b = two_rho(&d);
        assert_eq!(enumerate_dominant_below(&d, &b, OrderFilter::Dominance).unwrap().len(), 35);
        let cw = enumerate_dominant_below(&d, &b, OrderFilter::DominanceAndCoordinatewise).unwrap();
        // Independent count: descending triples under (6,4,2) whose difference is in the cone.
        let mut brute = 0;
        for a in 0..=6i64 {
            for bb in 0..=a.min(4) {
                for c in 0..=bb.min(2) {
                    let diff = [6 - a, 4 - bb, 2 - c];
                    let p = [diff[0], diff[0] + diff[1], diff[0] + diff[1] + diff[2]];
                    if p.iter().all(|&x| x >= 0) && p[2] % 2 == 0 {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(cw.len(), brute);
        assert_eq!(cw.len(), 29);
        let small = enumerate_dominant_below(&d, &b, OrderFilter::Small).unwrap();
        let labels: Vec<String> = small.iter().map(|w| d.label(w)).collect();
        assert_eq!(labels, vec!["0", "w2", "2w1", "w1+w3"]);
        let failing: Vec<Vec<usize>> = all_subsets(3)
            .into_iter()
            .filter(|s| !s.is_empty())
            .filter(|s| !coordinatewise_leq(&two_rho_minus_delta(&d, s).unwrap().0, &b).unwrap())
            .collect();
        assert_eq!(failing, vec![vec![1], vec![2], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn two_rho_minus_delta_examples() {
        let d = build_root_datum(Family::C, 3).unwrap();
        let (w, c) = two_rho_minus_delta(&d, &[]).unwrap();
        assert_eq!((w, c), (two_rho(&d), 0));
        let (w, c) = two_rho_minus_delta(&d, &[3]).unwrap();
        assert_eq!((w.coords2, c), (vec![12, 8, 0], 1));
        assert_eq!(two_rho_minus_delta(&d, &[1, 3]).unwrap().1, 2);
        assert_eq!(two_rho_minus_delta(&d, &[1, 2, 3]).unwrap().1, 1);
        assert!(two_rho_minus_delta(&d, &[4]).is_err());
    }

    #[test]
    fn zero_bound_and_small_examples() {
        let d = build_root_datum(Family::B, 3).unwrap();
        let z = d.zero();
        assert_eq!(enumerate_dominant_below(&d, &z, OrderFilter::Dominance).unwrap(), vec![z.clone()]);
        assert!(is_small(&d, &z));
        assert!(is_small(&d, &d.theta));
        let spin = d.weight_from_fundamental(&[0, 0, 1]).unwrap();
        assert!(!is_small(&d, &spin));
        assert!(enumerate_dominant_below(&d, &spin, OrderFilter::Dominance).is_ok());
        let nd = d.weight(vec![0, 2, 0]).unwrap();
        assert!(enumerate_dominant_below(&d, &nd, OrderFilter::Dominance).is_err());
    }

    #[test]
    fn d_type_partial_sums_are_not_enough() {
        // 2w3 and 2w4 in D4 differ by 2 eps_4: prefix sums agree but the weights are incomparable.
        let d = build_root_datum(Family::D, 4).unwrap();
        let a = d.weight_from_fundamental(&[0, 0, 2, 0]).unwrap();
        let b = d.weight_from_fundamental(&[0, 0, 0, 2]).unwrap();
        let r = order_report(&d, &a, &b).unwrap();
        assert!(r.partial_sums.iter().all(|&s| s >= 0) && r.parity_ok);
        assert!(!r.dominance_leq);
        assert!(!dominance_leq(&d, &b, &a).unwrap());
    }

    #[test]
    fn box_and_descent_enumerations_agree() {
        for (f, n) in [(Family::B, 2), (Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::C, 2)] {
            let d = build_root_datum(f, n).unwrap();
            let b = two_rho(&d);
            let boxed = box_enumerate(&d, &b.coords2);
            let desc = descend_enumerate(&d, &b.coords2);
            assert_eq!(boxed, desc, "{f}{n}");
        }
    }

    #[test]
    fn dominance_is_a_partial_order_below_two_rho() {
        for (f, n) in [(Family::B, 2), (Family::C, 3), (Family::D, 3), (Family::B, 3)] {
            let d = build_root_datum(f, n).unwrap();
            let ws = enumerate_dominant_below(&d, &two_rho(&d), OrderFilter::Dominance).unwrap();
            let leq = |a: &Weight, b: &Weight| dominance_leq(&d, a, b).unwrap();
            for a in &ws {
                assert!(leq(a, a));
                for b in &ws {
                    if a != b && leq(a, b) {
                        assert!(!leq(b, a));
                    }
                    for c in &ws {
                        if leq(a, b) && leq(b, c) {
                            assert!(leq(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_closed_downward() {
        let d = build_root_datum(Family::C, 3).unwrap();
        let ws = enumerate_dominant_below(&d, &two_rho(&d), OrderFilter::Dominance).unwrap();
        let set: BTreeSet<_> = ws.iter().cloned().collect();
        for a in &ws {
            for r in &d.positive_roots {
                let next = d.sub(&a.coords2, &r.coords2);
                if d.is_dominant(&next) {
                    assert!(set.contains(&d.weight_canon(next)));
                }
            }
        }
    }

    #[test]
    fn orders_are_incomparable_in_c3() {
        let d = build_root_datum(Family::C, 3).unwrap();
        let w = |c: &[i64]| d.weight_from_fundamental(c).unwrap();
        // dominance without coordinatewise
        assert!(dominance_leq(&d, &w(&[0, 1, 0]), &w(&[2, 0, 0])).unwrap());
        assert!(!coordinatewise_leq(&w(&[0, 1, 0]), &w(&[2, 0, 0])).unwrap());
        // coordinatewise without dominance
        assert!(coordinatewise_leq(&w(&[1, 0, 0]), &w(&[0, 1, 0])).unwrap());
        assert!(!dominance_leq(&d, &w(&[1, 0, 0]), &w(&[0, 1, 0])).unwrap());
    }

    #[test]
    fn small_weights_are_coordinatewise_below_two_rho() {
        for (f, n) in [(Family::B, 2), (Family::B, 3), (Family::B, 4), (Family::C, 2), (Family::C, 3), (Family::C, 4)] {
            let d = build_root_datum(f, n).unwrap();
            let b = two_rho(&d);
            for w in enumerate_dominant_below(&d, &b, OrderFilter::Small).unwrap() {
                assert!(coordinatewise_leq(&w, &b).unwrap(), "{f}{n} {w}");
            }
        }
    }

    #[test]
    fn d_type_small_exceptions() {
        // 2 rho has last coordinate 0 in type D, so small weights with lambda_n != 0 escape ≲.
        for (n, expect) in [(4, vec!["2w3", "2w4"]), (5, vec!["w1+2w4", "w1+2w5"])] {
            let d = build_root_datum(Family::D, n).unwrap();
            let b = two_rho(&d);
            let mut bad: Vec<String> = enumerate_dominant_below(&d, &b, OrderFilter::Small)
                .unwrap()
                .into_iter()
                .filter(|w| !coordinatewise_leq(w, &b).unwrap())
                .inspect(|w| assert_ne!(w.coords2[n - 1], 0))
                .map(|w| d.label(&w))
                .collect();
            bad.sort();
            assert_eq!(bad, expect, "D{n}");
        }
    }
}

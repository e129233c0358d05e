//! Brute-force representation theory used as an independent oracle.
//!
//! - Freudenthal multiplicities over dominant weights, extended by orbits.
//! - Weyl dimension formula.
//! - Brauer–Klimyk tensor rule.
//! - q-analog of Kostant's partition function and Lusztig's q-analog of the zero weight
//!   multiplicity.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::orders::descend_enumerate;
use crate::poly::PolyT;
use crate::rootdata::{Family, RootDatum, Weight};

/// Resource guards for the brute-force oracles.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_weights: usize,
    pub max_weyl_order: usize,
    pub max_exterior_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_weights: 200_000, max_weyl_order: 50_000, max_exterior_dim: 24 }
    }
}

/// Multiplicities keyed by doubled coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultMap {
    pub family: Family,
    pub rank: usize,
    pub mults: BTreeMap<Vec<i64>, i64>,
}

impl WeightMultMap {
    pub fn get(&self, v: &[i64]) -> i64 {
        self.mults.get(v).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> i64 {
        self.mults.values().sum()
    }
}

/// Dominant weight to multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub family: Family,
    pub rank: usize,
    pub mults: BTreeMap<Vec<i64>, i64>,
}

impl Decomposition {
    pub fn get(&self, v: &[i64]) -> i64 {
        self.mults.get(v).copied().unwrap_or(0)
    }

    pub fn total_dim(&self, datum: &RootDatum) -> i128 {
        self.mults.iter().map(|(v, &m)| m as i128 * weyl_dim_raw(datum, v)).sum()
    }
}

fn require_dominant(datum: &RootDatum, w: &Weight) -> Result<()> {
    datum.check(w)?;
    if !datum.is_dominant(&w.coords2) || !datum.in_weight_lattice(&w.coords2) {
        return Err(Error::NotDominant(w.to_string()));
    }
    Ok(())
}

/// Multiplicities of the dominant weights of `V_lambda`.
pub fn dominant_character(datum: &RootDatum, lambda: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let doms = descend_enumerate(datum, lambda);
    let mut order: Vec<Vec<i64>> = doms.iter().cloned().collect();
    order.sort_by_key(|v| std::cmp::Reverse(datum.height(v)));

    let lr = datum.add(lambda, &datum.rho.coords2);
    let top = datum.form(&lr, &lr);
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let mut rep_cache: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    for mu in order {
        if mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mr = datum.add(&mu, &datum.rho.coords2);
        let den = top - datum.form(&mr, &mr);
        let mut num = 0i64;
        for a in &datum.positive_roots {
            let mut x = mu.clone();
            loop {
                x = datum.add(&x, &a.coords2);
                let rep = rep_cache.entry(x.clone()).or_insert_with(|| datum.dominant_rep(&x)).clone();
                if !doms.contains(&rep) {
                    break;
                }
                num += mult[&rep] * datum.form(&x, &a.coords2);
            }
        }
        let num = 2 * num;
        assert!(den > 0 && num % den == 0, "Freudenthal step not integral at {mu:?}");
        mult.insert(mu, num / den);
    }
    mult
}

/// Full weight system of `V_lambda` with multiplicities.
pub fn freudenthal(datum: &RootDatum, lambda: &Weight, caps: &Caps) -> Result<WeightMultMap> {
    require_dominant(datum, lambda)?;
    freudenthal_raw(datum, &lambda.coords2, caps)
}

pub(crate) fn freudenthal_raw(datum: &RootDatum, lambda: &[i64], caps: &Caps) -> Result<WeightMultMap> {
    let dom = dominant_character(datum, lambda);
    let mut mults = BTreeMap::new();
    for (mu, &m) in &dom {
        for w in datum.orbit(mu) {
            mults.insert(w, m);
        }
        if mults.len() > caps.max_weights {
            return Err(Error::CapExceeded { what: "weight system".into(), limit: caps.max_weights });
        }
    }
    Ok(WeightMultMap { family: datum.family, rank: datum.rank, mults })
}

pub fn weyl_dim(datum: &RootDatum, lambda: &Weight) -> Result<i128> {
    require_dominant(datum, lambda)?;
    Ok(weyl_dim_raw(datum, &lambda.coords2))
}

pub(crate) fn weyl_dim_raw(datum: &RootDatum, lambda: &[i64]) -> i128 {
    let lr = datum.add(lambda, &datum.rho.coords2);
    let (mut num, mut den) = (1i128, 1i128);
    for a in &datum.positive_roots {
        num *= datum.form(&lr, &a.coords2) as i128;
        den *= datum.form(&datum.rho.coords2, &a.coords2) as i128;
        let g = num.gcd(&den);
        num /= g;
        den /= g;
    }
    assert_eq!(den, 1, "Weyl dimension not integral");
    num
}

/// Decompose `V_lambda ⊗ V_mu` by reducing `lambda + nu'` for each weight `nu'` of `V_mu`.
pub fn klimyk_tensor(datum: &RootDatum, lambda: &Weight, mu: &Weight, caps: &Caps) -> Result<Decomposition> {
    require_dominant(datum, lambda)?;
    require_dominant(datum, mu)?;
    klimyk_raw(datum, &lambda.coords2, &mu.coords2, caps)
}

pub(crate) fn klimyk_raw(datum: &RootDatum, lambda: &[i64], mu: &[i64], caps: &Caps) -> Result<Decomposition> {
    let wm = freudenthal_raw(datum, mu, caps)?;
    let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (nu, &m) in &wm.mults {
        let shifted = datum.add(lambda, nu);
        if let Some((dom, sign)) = datum.reduce_shifted(&shifted) {
            *acc.entry(dom).or_insert(0) += sign as i64 * m;
        }
    }
    acc.retain(|_, m| *m != 0);
    assert!(acc.values().all(|&m| m > 0), "negative tensor multiplicity");
    Ok(Decomposition { family: datum.family, rank: datum.rank, mults: acc })
}

/// Memoized q-analog of Kostant's partition function.
pub struct KostantCounter<'a> {
    datum: &'a RootDatum,
    /// Positive roots in simple-root coordinates, non-simple roots first.
    roots: Vec<Vec<i64>>,
    first_simple: usize,
    memo: HashMap<(usize, Vec<i64>), PolyT>,
}

impl<'a> KostantCounter<'a> {
    pub fn new(datum: &'a RootDatum) -> Self {
        let mut roots: Vec<Vec<i64>> =
            datum.positive_roots.iter().map(|r| datum.simple_coords(&r.coords2).unwrap()).collect();
        roots.sort_by_key(|r| (r.iter().sum::<i64>() == 1, std::cmp::Reverse(r.iter().sum::<i64>()), r.clone()));
        let first_simple = roots.iter().position(|r| r.iter().sum::<i64>() == 1).unwrap();
        KostantCounter { datum, roots, first_simple, memo: HashMap::new() }
    }

    /// Graded count of expressions of `beta` (raw coordinates) as sums of positive roots.
    pub fn count(&mut self, beta: &[i64]) -> PolyT {
        match self.datum.simple_coords(beta) {
            Some(sc) if sc.iter().all(|&c| c >= 0) => self.rec(0, sc),
            _ => PolyT::zero(),
        }
    }

    fn rec(&mut self, k: usize, beta: Vec<i64>) -> PolyT {
        if k == self.first_simple {
            return PolyT::monomial(1, beta.iter().sum::<i64>() as i32);
        }
        if let Some(p) = self.memo.get(&(k, beta.clone())) {
            return p.clone();
        }
        let mut out = PolyT::zero();
        let mut cur = beta.clone();
        let mut c = 0;
        loop {
            out += &self.rec(k + 1, cur.clone()).shift(c);
            for (x, r) in cur.iter_mut().zip(&self.roots[k]) {
                *x -= r;
            }
            if cur.iter().any(|&x| x < 0) {
                break;
            }
            c += 1;
        }
        self.memo.insert((k, beta), out.clone());
        out
    }
}

pub fn q_kostant(datum: &RootDatum, beta: &Weight) -> Result<PolyT> {
    datum.check(beta)?;
    Ok(KostantCounter::new(datum).count(&beta.coords2))
}

/// `E_lambda(t) = sum_w sgn(w) P_t(w(lambda + rho) - rho)`.
pub fn lusztig_e(datum: &RootDatum, lambda: &Weight, caps: &Caps) -> Result<PolyT> {
    require_dominant(datum, lambda)?;
    if !datum.in_root_lattice(&lambda.coords2) {
        return Err(Error::Precondition(format!("{} is not in the root lattice", datum.label(lambda))));
    }
    if datum.weyl_order() > caps.max_weyl_order {
        return Err(Error::CapExceeded { what: "Weyl group order".into(), limit: caps.max_weyl_order });
    }
    let mut counter = KostantCounter::new(datum);
    let start = datum.add(&lambda.coords2, &datum.rho.coords2);
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(start.clone(), 1i64)]);
    seen.insert(start);
    let mut out = PolyT::zero();
    while let Some((v, sign)) = queue.pop_front() {
        let beta = datum.sub(&v, &datum.rho.coords2);
        out += &counter.count(&beta).scale(sign);
        for i in 0..datum.rank {
            let w = datum.reflect(&v, i);
            if seen.insert(w.clone()) {
                queue.push_back((w, -sign));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::{enumerate_dominant_below, OrderFilter};
    use crate::rootdata::build_root_datum;

    fn d(f: Family, n: usize) -> RootDatum {
        build_root_datum(f, n).unwrap()
    }

    #[test]
    fn freudenthal_examples() {
        let c2 = d(Family::C, 2);
        let caps = Caps::default();
        let w1 = c2.weight_from_fundamental(&[1, 0]).unwrap();
        let m = freudenthal(&c2, &w1, &caps).unwrap();
        assert_eq!(m.mults.len(), 4);
        assert!(m.mults.values().all(|&x| x == 1));
        let z = freudenthal(&c2, &c2.zero(), &caps).unwrap();
        assert_eq!(z.mults, BTreeMap::from([(vec![0, 0], 1)]));
        let b2 = d(Family::B, 2);
        let adj = freudenthal(&b2, &b2.theta, &caps).unwrap();
        assert_eq!(adj.get(&[0, 0]), 2);
        assert_eq!(adj.dim(), 10);
    }

    #[test]
    fn weyl_dim_examples() {
        let c2 = d(Family::C, 2);
        assert_eq!(weyl_dim(&c2, &c2.zero()).unwrap(), 1);
        assert_eq!(weyl_dim(&c2, &c2.weight_from_fundamental(&[1, 0]).unwrap()).unwrap(), 4);
        let b3 = d(Family::B, 3);
        assert_eq!(weyl_dim(&b3, &b3.weight_from_fundamental(&[0, 0, 2]).unwrap()).unwrap(), 35);
        let g2 = d(Family::G2, 2);
        assert_eq!(weyl_dim(&g2, &g2.fundamental_weights[0]).unwrap(), 7);
        assert_eq!(weyl_dim(&g2, &g2.fundamental_weights[1]).unwrap(), 14);
        let d4 = d(Family::D, 4);
        assert_eq!(weyl_dim(&d4, &d4.rho).unwrap(), 4096);
        let a2 = d(Family::A, 2);
        assert_eq!(weyl_dim(&a2, &a2.weight_from_fundamental(&[1, 1]).unwrap()).unwrap(), 8);
    }

    #[test]
    fn freudenthal_dims_match_weyl() {
        let caps = Caps::default();
        for (f, n) in [(Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::G2, 2), (Family::A, 3)] {
            let dt = d(f, n);
            let two_rho = dt.weight_canon(dt.rho.coords2.iter().map(|c| 2 * c).collect());
            let bound = if f == Family::D { dt.rho.clone() } else { two_rho };
            for lam in descend_enumerate(&dt, &bound.coords2).into_iter().take(25) {
                let w = dt.weight_canon(lam);
                let m = freudenthal(&dt, &w, &caps).unwrap();
                assert_eq!(m.dim() as i128, weyl_dim(&dt, &w).unwrap(), "{f}{n} {w}");
                // Orbit invariance spot check.
                for (v, &x) in m.mults.iter().take(10) {
                    assert_eq!(m.get(&dt.reflect(v, 0)), x);
                }
            }
        }
    }

    #[test]
    fn klimyk_examples() {
        let caps = Caps::default();
        let c2 = d(Family::C, 2);
        let w1 = c2.weight_from_fundamental(&[1, 0]).unwrap();
        let dec = klimyk_tensor(&c2, &w1, &w1, &caps).unwrap();
        let expect = BTreeMap::from([(vec![4, 0], 1), (vec![2, 2], 1), (vec![0, 0], 1)]);
        assert_eq!(dec.mults, expect);
        let lam = c2.weight_from_fundamental(&[2, 1]).unwrap();
        let dec = klimyk_tensor(&c2, &lam, &c2.zero(), &caps).unwrap();
        assert_eq!(dec.mults, BTreeMap::from([(lam.coords2.clone(), 1)]));
    }

    #[test]
    fn klimyk_symmetric_and_dimension_identity() {
        let caps = Caps::default();
        for (f, n) in [(Family::B, 2), (Family::C, 3), (Family::D, 4), (Family::G2, 2)] {
            let dt = d(f, n);
            let ws: Vec<Weight> = (0..n)
                .map(|i| dt.fundamental_weights[i].clone())
                .chain([dt.zero(), dt.theta.clone()])
                .collect();
            for a in &ws {
                for b in &ws {
                    let ab = klimyk_tensor(&dt, a, b, &caps).unwrap();
                    let ba = klimyk_tensor(&dt, b, a, &caps).unwrap();
                    assert_eq!(ab, ba, "{f}{n}");
                    let lhs = ab.total_dim(&dt);
                    assert_eq!(lhs, weyl_dim(&dt, a).unwrap() * weyl_dim(&dt, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn g2_little_adjoint_square() {
        let g2 = d(Family::G2, 2);
        let caps = Caps::default();
        let dec = klimyk_tensor(&g2, &g2.rho_short, &g2.rho_short, &caps).unwrap();
        let bound = g2.weight_canon(g2.rho_short.coords2.iter().map(|c| 2 * c).collect());
        let below: Vec<Vec<i64>> = enumerate_dominant_below(&g2, &bound, OrderFilter::Dominance)
            .unwrap()
            .into_iter()
            .map(|w| w.coords2)
            .collect();
        let support: Vec<Vec<i64>> = dec.mults.keys().cloned().collect();
        let mut below_sorted = below.clone();
        below_sorted.sort();
        assert_eq!(support, below_sorted);
    }

    #[test]
    fn q_kostant_examples() {
        let c2 = d(Family::C, 2);
        assert_eq!(q_kostant(&c2, &c2.zero()).unwrap(), PolyT::one());
        let a1 = c2.weight(vec![2, -2]).unwrap();
        assert_eq!(q_kostant(&c2, &a1).unwrap(), PolyT::monomial(1, 1));
        let two_e1 = c2.weight(vec![4, 0]).unwrap();
        // {2e1}, {e1-e2, e1+e2} and {e1-e2, e1-e2, 2e2}.
        assert_eq!(q_kostant(&c2, &two_e1).unwrap(), PolyT::from_coeffs(&[0, 1, 1, 1]));
        let neg = c2.weight(vec![-2, 2]).unwrap();
        assert!(q_kostant(&c2, &neg).unwrap().is_zero());
    }

    #[test]
    fn q_kostant_at_one_matches_brute_force() {
        // Count multisets of positive roots summing to beta by direct recursion.
        fn brute(roots: &[Vec<i64>], beta: &[i64]) -> i64 {
            if beta.iter().all(|&x| x == 0) {
                return 1;
            }
            if roots.is_empty() {
                return 0;
            }
            let mut total = 0;
            let mut cur = beta.to_vec();
            loop {
                total += brute(&roots[1..], &cur);
                for (x, r) in cur.iter_mut().zip(&roots[0]) {
                    *x -= r;
                }
                if cur.iter().any(|&x| x < 0) {
                    break;
                }
            }
            total
        }
        let b3 = d(Family::B, 3);
        let roots: Vec<Vec<i64>> = b3.positive_roots.iter().map(|r| b3.simple_coords(&r.coords2).unwrap()).collect();
        let mut kc = KostantCounter::new(&b3);
        for beta_sc in [[1, 1, 1], [2, 2, 2], [1, 2, 3], [3, 1, 2], [2, 3, 4]] {
            let mut v = vec![0; 3];
            for (c, a) in beta_sc.iter().zip(&b3.simple_roots) {
                for (x, y) in v.iter_mut().zip(&a.coords2) {
                    *x += c * y;
                }
            }
            assert_eq!(kc.count(&v).value_at_one(), brute(&roots, &beta_sc));
        }
    }

    #[test]
    fn lusztig_examples() {
        let caps = Caps::default();
        let b3 = d(Family::B, 3);
        assert_eq!(lusztig_e(&b3, &b3.zero(), &caps).unwrap(), PolyT::one());
        assert_eq!(lusztig_e(&b3, &b3.theta, &caps).unwrap(), PolyT::from_coeffs(&[0, 1, 0, 1, 0, 1]));
        assert_eq!(lusztig_e(&b3, b3.theta_short.as_ref().unwrap(), &caps).unwrap(), PolyT::monomial(1, 3));
        let spin = b3.weight_from_fundamental(&[0, 0, 1]).unwrap();
        assert!(lusztig_e(&b3, &spin, &caps).is_err());
        let g2 = d(Family::G2, 2);
        // Adjoint: the exponents 1 and 5.
        assert_eq!(lusztig_e(&g2, &g2.theta, &caps).unwrap(), PolyT::from_coeffs(&[0, 1, 0, 0, 0, 1]));
    }

    #[test]
    fn lusztig_at_one_is_zero_weight_multiplicity() {
        let caps = Caps::default();
        for (f, n) in [(Family::B, 2), (Family::C, 3), (Family::D, 4), (Family::G2, 2)] {
            let dt = d(f, n);
            let two_rho = dt.weight_canon(dt.rho.coords2.iter().map(|c| 2 * c).collect());
            for w in enumerate_dominant_below(&dt, &two_rho, OrderFilter::Small).unwrap() {
                let e = lusztig_e(&dt, &w, &caps).unwrap();
                let m = freudenthal(&dt, &w, &caps).unwrap();
                assert!(e.has_nonneg_coeffs());
                assert_eq!(e.value_at_one(), m.get(&vec![0; dt.dim]), "{f}{n} {w}");
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        let d5 = d(Family::D, 5);
        let caps = Caps { max_weyl_order: 100, ..Caps::default() };
        assert!(matches!(lusztig_e(&d5, &d5.theta, &caps), Err(Error::CapExceeded { .. })));
        let caps = Caps { max_weights: 10, ..Caps::default() };
        assert!(matches!(freudenthal(&d5, &d5.rho, &caps), Err(Error::CapExceeded { .. })));
    }
}

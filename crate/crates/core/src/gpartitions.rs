//! g-partitions and the Berenstein–Zelevinsky linear forms.
//!
//! A g-partition stores `m_ij` (coefficient of `e_i - e_j`), `m+_ij` (of `e_i + e_j`) and
//! `m_i` (of `e_i`) in the flat layout `(m12, m+12, m13, m+13, ..., m_{n-1,n}, m+_{n-1,n}, m1, ..., mn)`.
//! Indices in the public accessors are 1-based.
//!
//! Forms are keyed by kind, subscript `j` and an index `t` of the ordered set
//! `0̄ < 1 < 1̄ < ... < n < n̄`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rootdata::{Family, RootDatum, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GPartition {
    pub n: usize,
    flat: Vec<i64>,
}

fn num_pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl GPartition {
    pub fn zero(n: usize) -> Self {
        GPartition { n, flat: vec![0; 2 * num_pairs(n) + n] }
    }

    pub fn from_flat(n: usize, flat: Vec<i64>) -> Result<Self> {
        let expected = 2 * num_pairs(n) + n;
        if flat.len() != expected {
            return Err(Error::LengthMismatch { expected, got: flat.len() });
        }
        if flat.iter().any(|&x| x < 0) {
            return Err(Error::Precondition("g-partition entries must be nonnegative".into()));
        }
        Ok(GPartition { n, flat })
    }

    pub fn flat(&self) -> &[i64] {
        &self.flat
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        // pairs (1,2), (1,3), ..., (1,n), (2,3), ...
        let n = self.n;
        let before: usize = (1..i).map(|r| n - r).sum();
        before + (j - i - 1)
    }

    /// `m_ij`, zero outside `1 <= i < j <= n`.
    pub fn m(&self, i: usize, j: usize) -> i64 {
        if i == 0 || i >= j || j > self.n {
            return 0;
        }
        self.flat[2 * self.pair_index(i, j)]
    }

    /// `m+_ij`, zero outside `1 <= i < j <= n`.
    pub fn mp(&self, i: usize, j: usize) -> i64 {
        if i == 0 || i >= j || j > self.n {
            return 0;
        }
        self.flat[2 * self.pair_index(i, j) + 1]
    }

    /// `m_i`, zero outside `1..=n`.
    pub fn ms(&self, i: usize) -> i64 {
        if i == 0 || i > self.n {
            return 0;
        }
        self.flat[2 * num_pairs(self.n) + i - 1]
    }

    pub fn set_m(&mut self, i: usize, j: usize, v: i64) {
        let k = 2 * self.pair_index(i, j);
        self.flat[k] = v;
    }

    pub fn set_mp(&mut self, i: usize, j: usize, v: i64) {
        let k = 2 * self.pair_index(i, j) + 1;
        self.flat[k] = v;
    }

    pub fn set_ms(&mut self, i: usize, v: i64) {
        let k = 2 * num_pairs(self.n) + i - 1;
        self.flat[k] = v;
    }

    /// Parity constraints on `m_i`: even in type C, zero in type D.
    pub fn is_valid_for(&self, family: Family) -> bool {
        (1..=self.n).all(|i| match family {
            Family::C => self.ms(i) % 2 == 0,
            Family::D => self.ms(i) == 0,
            _ => true,
        })
    }

    /// `M(i,j) = m_ij - m+_ij`.
    pub fn big_m(&self, i: usize, j: usize) -> i64 {
        self.m(i, j) - self.mp(i, j)
    }

    /// `N(i) = m_i - m_{i+1}`.
    pub fn big_n(&self, i: usize) -> i64 {
        self.ms(i) - self.ms(i + 1)
    }

    /// `R(i,j) = m+_ij - m+_{i+1,j}`.
    pub fn big_r(&self, i: usize, j: usize) -> i64 {
        self.mp(i, j) - self.mp(i + 1, j)
    }

    /// `S(i,c)`: the drop of `m + m+` in column `c` from row `i` to row `i+1`.
    pub fn big_s(&self, i: usize, c: usize) -> i64 {
        self.m(i, c) - self.m(i + 1, c) + self.mp(i, c) - self.mp(i + 1, c)
    }

    pub fn add(&self, other: &GPartition) -> GPartition {
        GPartition { n: self.n, flat: self.flat.iter().zip(&other.flat).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for GPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.flat.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Weight associated to a partition, in integer epsilon coordinates.
pub fn weight_vector(p: &GPartition) -> Vec<i64> {
    let n = p.n;
    let mut v = vec![0; n];
    for i in 1..=n {
        for j in i + 1..=n {
            v[i - 1] += p.m(i, j) + p.mp(i, j);
            v[j - 1] += p.mp(i, j) - p.m(i, j);
        }
        v[i - 1] += p.ms(i);
    }
    v
}

pub fn weight_of(datum: &RootDatum, p: &GPartition) -> Result<Weight> {
    if p.n != datum.rank || !matches!(datum.family, Family::B | Family::C | Family::D) {
        return Err(Error::DatumMismatch);
    }
    Ok(datum.weight_canon(weight_vector(p).iter().map(|x| 2 * x).collect()))
}

/// Element of the ordered index set `0̄ < 1 < 1̄ < ... < n < n̄`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TIdx {
    pub value: usize,
    pub barred: bool,
}

impl TIdx {
    pub fn plain(value: usize) -> Self {
        TIdx { value, barred: false }
    }

    pub fn bar(value: usize) -> Self {
        TIdx { value, barred: true }
    }
}

impl fmt::Display for TIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "{}bar", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormKind {
    L,
    N0,
    N1,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormKey {
    pub kind: FormKind,
    pub j: usize,
    pub t: TIdx,
}

impl fmt::Display for FormKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            FormKind::L => "L",
            FormKind::N0 => "N0",
            FormKind::N1 => "N1",
        };
        write!(f, "{k}[j={},t={}]", self.j, self.t)
    }
}

pub type FormValues = BTreeMap<FormKey, i64>;

/// `{0̄} ∪ {u, ū : lo <= u <= hi}`-style helper: both plain and barred values in a range.
fn both(lo: usize, hi: usize) -> impl Iterator<Item = TIdx> {
    (lo..=hi).flat_map(|u| [TIdx::plain(u), TIdx::bar(u)])
}

/// The form keys admitted for a family and rank.
pub fn admitted_keys(family: Family, n: usize) -> Vec<FormKey> {
    let key = |kind, j, t| FormKey { kind, j, t };
    let mut out = Vec::new();
    match family {
        Family::B | Family::C => {
            for j in 1..=n {
                out.push(key(FormKind::L, j, TIdx::bar(0)));
                out.extend(both(1, j - 1).map(|t| key(FormKind::L, j, t)));
            }
            for j in 1..n {
                out.push(key(FormKind::N0, j, TIdx::bar(j)));
                out.extend(both(j + 1, n - 1).map(|t| key(FormKind::N0, j, t)));
                out.push(key(FormKind::N0, j, TIdx::plain(n)));
                out.extend(both(j + 1, n - 1).map(|t| key(FormKind::N1, j, t)));
                out.push(key(FormKind::N1, j, TIdx::plain(n)));
            }
            out.push(key(FormKind::N1, n, TIdx::plain(n)));
        }
        Family::D => {
            for j in 1..n {
                out.push(key(FormKind::L, j, TIdx::bar(0)));
                out.extend(both(1, j - 1).map(|t| key(FormKind::L, j, t)));
            }
            out.push(key(FormKind::L, n, TIdx::bar(0)));
            out.extend(both(1, n - 2).map(|t| key(FormKind::L, n, t)));
            for j in 1..n - 1 {
                out.push(key(FormKind::N0, j, TIdx::bar(j)));
                out.extend(both(j + 1, n - 2).map(|t| key(FormKind::N0, j, t)));
                out.push(key(FormKind::N0, j, TIdx::plain(n - 1)));
                out.extend(both(j + 1, n - 1).map(|t| key(FormKind::N1, j, t)));
                out.push(key(FormKind::N1, j, TIdx::plain(n)));
            }
            out.push(key(FormKind::N1, n - 1, TIdx::plain(n)));
            out.push(key(FormKind::N1, n, TIdx::plain(n)));
        }
        _ => {}
    }
    out.sort();
    out
}

fn l_general(p: &GPartition, j: usize, t: TIdx) -> i64 {
    let u = t.value;
    if t.barred {
        (1..=u).map(|i| p.big_m(i, j + 1) - p.big_m(i, j)).sum::<i64>() + p.m(u + 1, j + 1)
    } else {
        (1..u).map(|i| p.big_m(i, j + 1) - p.big_m(i, j)).sum::<i64>() - p.big_m(u, j) + p.m(u, j + 1)
    }
}

fn l_last(family: Family, p: &GPartition, t: TIdx) -> i64 {
    let n = p.n;
    let u = t.value;
    let sum_m = |hi: usize, col: usize| (1..=hi).map(|i| p.big_m(i, col)).sum::<i64>();
    match family {
        Family::B => {
            let s = if t.barred { p.ms(u + 1) } else { p.ms(u) };
            -2 * sum_m(u, n) + s
        }
        Family::C => {
            let s = if t.barred { p.ms(u + 1) } else { p.ms(u) };
            -sum_m(u, n) + s / 2
        }
        Family::D => {
            if t.barred {
                -sum_m(u, n) - sum_m(u, n - 1) + p.mp(u + 1, n)
            } else {
                -sum_m(u.saturating_sub(1), n) - sum_m(u, n - 1) + p.mp(u, n)
            }
        }
        _ => unreachable!(),
    }
}

fn n0(p: &GPartition, i: usize, t: TIdx) -> i64 {
    let n = p.n;
    let head = p.mp(i, i + 1);
    let r_sum = |hi: usize| (i + 1..=hi).map(|j| p.big_r(i, j + 1)).sum::<i64>();
    let u = t.value;
    if u == n && !t.barred {
        head + r_sum(n - 1) + p.big_n(i)
    } else if t.barred {
        head + r_sum(u)
    } else {
        head + r_sum(u - 1) + p.mp(i, u + 1) - p.m(i + 1, u + 1)
    }
}

fn n1(family: Family, p: &GPartition, i: usize, t: TIdx) -> i64 {
    let n = p.n;
    if i == n {
        return match family {
            Family::B => p.ms(n),
            Family::C => p.ms(n) / 2,
            Family::D => p.mp(n - 1, n),
            _ => unreachable!(),
        };
    }
    let u = t.value;
    let r_sum: i64 = (i + 1..u).map(|j| p.big_r(i, j + 1)).sum();
    let s_sum: i64 = (u..n).map(|j| p.big_s(i, j + 1)).sum();
    let m_term = if t.barred { 0 } else { p.big_m(i, u) };
    p.mp(i, i + 1) + p.big_n(i) + m_term + r_sum + s_sum
}

/// Evaluate every admitted form on `p` with the rearranged expressions.
pub fn evaluate_forms(datum: &RootDatum, p: &GPartition) -> FormValues {
    let n = datum.rank;
    let f = datum.family;
    admitted_keys(f, n)
        .into_iter()
        .map(|k| {
            let v = match k.kind {
                FormKind::L if k.j == n => l_last(f, p, k.t),
                FormKind::L => l_general(p, k.j, k.t),
                FormKind::N0 => n0(p, k.j, k.t),
                FormKind::N1 => n1(f, p, k.j, k.t),
            };
            (k, v)
        })
        .collect()
}

/// The same forms computed from the interleaved `Delta` definitions.
pub fn evaluate_forms_delta(datum: &RootDatum, p: &GPartition) -> FormValues {
    let n = datum.rank;
    let f = datum.family;
    // Delta on the ordered index set; `x` and `y` are (value, barred).
    let delta = |q: &GPartition, x: TIdx, y: TIdx| -> i64 {
        match (x.barred, y.barred) {
            (false, false) => q.big_m(x.value, y.value),
            (true, true) => q.big_m(x.value + 1, y.value + 1),
            _ => {
                let (i, j) = if x.barred { (x.value, y.value) } else { (x.value, y.value) };
                if j < n {
                    q.mp(i, j + 1) - q.m(i + 1, j + 1)
                } else {
                    q.ms(i) - q.ms(i + 1)
                }
            }
        }
    };
    let range = |lo: TIdx, hi: TIdx| -> Vec<TIdx> {
        (0..=n).flat_map(|u| [TIdx::plain(u), TIdx::bar(u)]).filter(|s| *s >= lo && *s <= hi).collect()
    };
    let l_form = |q: &GPartition, j: usize, t: TIdx| -> i64 {
        let mut total = 0;
        for s in range(TIdx::bar(0), t) {
            if !s.barred && s.value == 0 {
                continue;
            }
            total -= delta(q, s, TIdx::plain(j));
        }
        total
    };
    let n0_form = |q: &GPartition, j: usize, t: TIdx| -> i64 {
        let mut total = delta(q, TIdx::bar(j), TIdx::plain(j));
        for s in range(TIdx::plain(j + 1), t) {
            total += delta(q, TIdx::bar(j), s);
        }
        total
    };
    let hat = |q: &GPartition| -> GPartition {
        let mut h = q.clone();
        for i in 1..n {
            h.set_m(i, n, q.mp(i, n));
            h.set_mp(i, n, q.m(i, n));
        }
        h
    };
    admitted_keys(f, n)
        .into_iter()
        .map(|k| {
            let v = match (k.kind, f) {
                (FormKind::L, Family::B) if k.j == n => {
                    let a: i64 = range(TIdx::plain(1), k.t)
                        .into_iter()
                        .filter(|s| !s.barred)
                        .map(|s| delta(p, s, TIdx::plain(n)))
                        .sum();
                    let b: i64 = range(TIdx::bar(0), k.t)
                        .into_iter()
                        .filter(|s| s.barred)
                        .map(|s| delta(p, s, TIdx::plain(n)))
                        .sum();
                    -(2 * a + b)
                }
                (FormKind::L, Family::C) if k.j == n => {
                    let a: i64 = range(TIdx::plain(1), k.t)
                        .into_iter()
                        .filter(|s| !s.barred)
                        .map(|s| delta(p, s, TIdx::plain(n)))
                        .sum();
                    let b: i64 = range(TIdx::bar(0), k.t)
                        .into_iter()
                        .filter(|s| s.barred)
                        .map(|s| delta(p, s, TIdx::plain(n)))
                        .sum();
                    -(a + b / 2)
                }
                (FormKind::L, Family::D) if k.j == n => l_form(&hat(p), n - 1, k.t),
                (FormKind::L, _) => l_form(p, k.j, k.t),
                (FormKind::N0, _) => n0_form(p, k.j, k.t),
                (FormKind::N1, _) if k.j == n => n1(f, p, n, k.t),
                (FormKind::N1, _) => {
                    let mut total = n0_form(p, k.j, TIdx::plain(n));
                    for s in range(k.t, TIdx::plain(n)) {
                        total += delta(p, TIdx::plain(k.j), s);
                    }
                    total
                }
            };
            (k, v)
        })
        .collect()
}

/// Every admitted form within its bound: `L^t_j <= a_j`, `N^{t,*}_j <= b_j`.
pub fn is_admissible(datum: &RootDatum, p: &GPartition, a: &[i64], b: &[i64]) -> bool {
    first_violation(datum, p, a, b).is_none()
}

/// The first form exceeding its bound, if any.
pub fn first_violation(datum: &RootDatum, p: &GPartition, a: &[i64], b: &[i64]) -> Option<(FormKey, i64)> {
    evaluate_forms(datum, p).into_iter().find(|(k, v)| {
        let bound = match k.kind {
            FormKind::L => a[k.j - 1],
            _ => b[k.j - 1],
        };
        *v > bound
    })
}

/// Visit every g-partition of the family associated to the integer vector `beta`.
pub fn for_each_partition(family: Family, beta: &[i64], visit: &mut dyn FnMut(&GPartition)) {
    let n = beta.len();
    let mut p = GPartition::zero(n);
    let mut resid = beta.to_vec();
    row(family, 1, &mut p, &mut resid, visit);
}

fn row(family: Family, i: usize, p: &mut GPartition, resid: &mut [i64], visit: &mut dyn FnMut(&GPartition)) {
    let n = p.n;
    if i > n {
        visit(p);
        return;
    }
    slot(family, i, i + 1, p, resid, visit);
}

fn slot(family: Family, i: usize, j: usize, p: &mut GPartition, resid: &mut [i64], visit: &mut dyn FnMut(&GPartition)) {
    let n = p.n;
    if j > n {
        let rest = resid[i - 1];
        let ok = rest >= 0
            && match family {
                Family::C => rest % 2 == 0,
                Family::D => rest == 0,
                _ => true,
            };
        if !ok {
            return;
        }
        // Later rows only add nonnegative amounts to every prefix sum.
        let mut acc = 0;
        for r in &resid[i..] {
            acc += r;
            if acc < 0 {
                return;
            }
        }
        p.set_ms(i, rest);
        resid[i - 1] = 0;
        row(family, i + 1, p, resid, visit);
        resid[i - 1] = rest;
        p.set_ms(i, 0);
        return;
    }
    let budget = resid[i - 1];
    for a in 0..=budget {
        for b in 0..=budget - a {
            p.set_m(i, j, a);
            p.set_mp(i, j, b);
            resid[i - 1] -= a + b;
            resid[j - 1] += a - b;
            slot(family, i, j + 1, p, resid, visit);
            resid[i - 1] += a + b;
            resid[j - 1] -= a - b;
        }
    }
    p.set_m(i, j, 0);
    p.set_mp(i, j, 0);
}

/// `c_{lambda mu}^nu` as the number of admissible partitions of `lambda + mu - nu`.
pub fn count_lr(
    datum: &RootDatum,
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
    want_witnesses: bool,
) -> Result<(u64, Vec<GPartition>)> {
    if !matches!(datum.family, Family::B | Family::C | Family::D) {
        return Err(Error::UnsupportedDatum { family: datum.family.to_string(), rank: datum.rank });
    }
    for w in [lambda, mu, nu] {
        datum.check(w)?;
        if !datum.is_dominant(&w.coords2) {
            return Err(Error::NotDominant(w.to_string()));
        }
    }
    let beta2: Vec<i64> = (0..datum.rank).map(|i| lambda.coords2[i] + mu.coords2[i] - nu.coords2[i]).collect();
    if beta2.iter().any(|x| x % 2 != 0) {
        return Ok((0, Vec::new()));
    }
    let beta: Vec<i64> = beta2.iter().map(|x| x / 2).collect();
    let a = datum.fundamental_coeffs(lambda);
    let b = datum.fundamental_coeffs(mu);
    let mut count = 0u64;
    let mut wit = Vec::new();
    for_each_partition(datum.family, &beta, &mut |p| {
        if is_admissible(datum, p, &a, &b) {
            count += 1;
            if want_witnesses {
                wit.push(p.clone());
            }
        }
    });
    wit.sort();
    Ok((count, wit))
}

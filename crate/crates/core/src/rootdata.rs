//! Root data in explicit epsilon coordinates.
//!
//! Weights store doubled coordinates so that spin weights and `rho` in type B stay integral.
//! Type A lives in `n + 1` coordinates modulo `(1, ..., 1)`, normalized so the last entry is 0.
//! G2 lives in 3 coordinates summing to zero.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G" | "G2" => Ok(Family::G2),
            _ => Err(Error::UnsupportedDatum { family: s.to_string(), rank: 0 }),
        }
    }
}

/// A weight in doubled epsilon coordinates, tagged with its root datum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub family: Family,
    pub rank: usize,
    pub coords2: Vec<i64>,
}

impl Weight {
    pub fn is_zero(&self) -> bool {
        self.coords2.iter().all(|&c| c == 0)
    }

    /// Coordinates as strings, halving the stored values.
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords2
            .iter()
            .map(|&c| if c % 2 == 0 { (c / 2).to_string() } else { format!("{c}/2") })
            .collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coord_strings().join(","))
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub family: Family,
    pub rank: usize,
    /// Number of ambient coordinates.
    pub dim: usize,
    pub positive_roots: Vec<Weight>,
    pub simple_roots: Vec<Weight>,
    pub fundamental_weights: Vec<Weight>,
    pub rho: Weight,
    pub rho_short: Weight,
    pub theta: Weight,
    pub theta_short: Option<Weight>,
    pub exponents: Vec<i64>,
    pub coxeter_number: i64,
    /// Number of short simple roots; all simple roots count as short when simply laced.
    pub num_short_simple: usize,
}

/// Build a root datum for the public rank ranges: A_n (n >= 1), B_n, C_n (n >= 2), D_n (n >= 3), G2.
pub fn build_root_datum(family: Family, rank: usize) -> Result<RootDatum> {
    let ok = match family {
        Family::A => rank >= 1,
        Family::B | Family::C => rank >= 2,
        Family::D => rank >= 3,
        Family::G2 => rank == 2,
    };
    if !ok {
        return Err(unsupported(family, rank));
    }
    build_unchecked(family, rank)
}

fn unsupported(family: Family, rank: usize) -> Error {
    Error::UnsupportedDatum { family: family.to_string(), rank }
}

/// Also admits the degenerate ranks B_1, C_1 and D_2 used by rank-recursive checks.
pub(crate) fn build_unchecked(family: Family, n: usize) -> Result<RootDatum> {
    let (dim, pos, simple, fund, exponents, h): (usize, Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<i64>, i64) =
        match family {
            Family::A if n >= 1 => {
                let dim = n + 1;
                let mut pos = Vec::new();
                for i in 0..dim {
                    for j in i + 1..dim {
                        pos.push(diff2(dim, i, j));
                    }
                }
                let simple = (0..n).map(|i| diff2(dim, i, i + 1)).collect();
                let fund = (1..=n).map(|i| prefix2(dim, i, 2)).collect();
                (dim, pos, simple, fund, (1..=n as i64).collect(), n as i64 + 1)
            }
            Family::B | Family::C if n >= 1 => {
                let long_unit = if family == Family::C { 4 } else { 2 };
                let mut pos = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        pos.push(diff2(n, i, j));
                        pos.push(sum2(n, i, j));
                    }
                    pos.push(unit(n, i, long_unit));
                }
                let mut simple: Vec<Vec<i64>> = (0..n - 1).map(|i| diff2(n, i, i + 1)).collect();
                simple.push(unit(n, n - 1, long_unit));
                let mut fund: Vec<Vec<i64>> = (1..n).map(|i| prefix2(n, i, 2)).collect();
                fund.push(prefix2(n, n, if family == Family::B { 1 } else { 2 }));
                let ex = (0..n as i64).map(|i| 2 * i + 1).collect();
                (n, pos, simple, fund, ex, 2 * n as i64)
            }
            Family::D if n >= 2 => {
                let mut pos = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        pos.push(diff2(n, i, j));
                        pos.push(sum2(n, i, j));
                    }
                }
                let mut simple: Vec<Vec<i64>> = (0..n - 1).map(|i| diff2(n, i, i + 1)).collect();
                simple.push(sum2(n, n - 2, n - 1));
                let mut fund: Vec<Vec<i64>> = (1..n - 1).map(|i| prefix2(n, i, 2)).collect();
                let mut minus = prefix2(n, n, 1);
                minus[n - 1] = -1;
                fund.push(minus);
                fund.push(prefix2(n, n, 1));
                let mut ex: Vec<i64> = (0..n as i64 - 1).map(|i| 2 * i + 1).collect();
                ex.push(n as i64 - 1);
                ex.sort();
                (n, pos, simple, fund, ex, 2 * n as i64 - 2)
            }
            Family::G2 if n == 2 => {
                let v = |a: i64, b: i64, c: i64| vec![2 * a, 2 * b, 2 * c];
                let pos = vec![v(1, -1, 0), v(-2, 1, 1), v(-1, 0, 1), v(0, -1, 1), v(1, -2, 1), v(-1, -1, 2)];
                let simple = vec![v(1, -1, 0), v(-2, 1, 1)];
                let fund = vec![v(0, -1, 1), v(-1, -1, 2)];
                (3, pos, simple, fund, vec![1, 5], 6)
            }
            _ => return Err(unsupported(family, n)),
        };

    let mut datum = RootDatum {
        family,
        rank: n,
        dim,
        positive_roots: Vec::new(),
        simple_roots: Vec::new(),
        fundamental_weights: Vec::new(),
        rho: Weight { family, rank: n, coords2: vec![0; dim] },
        rho_short: Weight { family, rank: n, coords2: vec![0; dim] },
        theta: Weight { family, rank: n, coords2: vec![0; dim] },
        theta_short: None,
        exponents,
        coxeter_number: h,
        num_short_simple: 0,
    };
    datum.positive_roots = pos.into_iter().map(|v| datum.weight_canon(v)).collect();
    datum.simple_roots = simple.into_iter().map(|v| datum.weight_canon(v)).collect();
    datum.fundamental_weights = fund.into_iter().map(|v| datum.weight_canon(v)).collect();

    let rho = sum_vecs(dim, datum.fundamental_weights.iter().map(|w| &w.coords2[..]));
    datum.rho = datum.weight_canon(rho);

    let lengths: Vec<i64> = datum.positive_roots.iter().map(|r| datum.form(&r.coords2, &r.coords2)).collect();
    let short_len = *lengths.iter().min().unwrap();
    let simply_laced = lengths.iter().all(|&l| l == short_len);
    let short: Vec<&Weight> =
        datum.positive_roots.iter().zip(&lengths).filter(|(_, &l)| l == short_len).map(|(r, _)| r).collect();
    let half_sum = sum_vecs(dim, short.iter().map(|r| &r.coords2[..])).iter().map(|c| c / 2).collect();
    datum.rho_short = if simply_laced { datum.rho.clone() } else { datum.weight_canon(half_sum) };
    datum.theta = datum.highest(datum.positive_roots.iter());
    datum.theta_short = if simply_laced { None } else { Some(datum.highest(short.into_iter())) };
    datum.num_short_simple = datum
        .simple_roots
        .iter()
        .filter(|r| simply_laced || datum.form(&r.coords2, &r.coords2) == short_len)
        .count();
    Ok(datum)
}

fn unit(dim: usize, i: usize, val: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = val;
    v
}

fn diff2(dim: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 2;
    v[j] = -2;
    v
}

fn sum2(dim: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 2;
    v[j] = 2;
    v
}

fn prefix2(dim: usize, k: usize, val: i64) -> Vec<i64> {
    (0..dim).map(|i| if i < k { val } else { 0 }).collect()
}

fn sum_vecs<'a>(dim: usize, vs: impl Iterator<Item = &'a [i64]>) -> Vec<i64> {
    let mut acc = vec![0; dim];
    for v in vs {
        for (a, b) in acc.iter_mut().zip(v) {
            *a += b;
        }
    }
    acc
}

impl RootDatum {
    pub fn name(&self) -> String {
        match self.family {
            Family::G2 => "G2".to_string(),
            f => format!("{f}{}", self.rank),
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        self.theta_short.is_none()
    }

    /// Weight from raw doubled coordinates, normalized for type A.
    pub fn weight(&self, coords2: Vec<i64>) -> Result<Weight> {
        if coords2.len() != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, got: coords2.len() });
        }
        Ok(self.weight_canon(coords2))
    }

    pub(crate) fn weight_canon(&self, mut coords2: Vec<i64>) -> Weight {
        self.canon(&mut coords2);
        Weight { family: self.family, rank: self.rank, coords2 }
    }

    pub fn zero(&self) -> Weight {
        self.weight_canon(vec![0; self.dim])
    }

    pub fn check(&self, w: &Weight) -> Result<()> {
        if w.family != self.family || w.rank != self.rank || w.coords2.len() != self.dim {
            return Err(Error::DatumMismatch);
        }
        Ok(())
    }

    /// Normalize a coordinate vector in place (only type A changes).
    pub fn canon(&self, v: &mut [i64]) {
        if self.family == Family::A {
            let last = v[v.len() - 1];
            for c in v.iter_mut() {
                *c -= last;
            }
        }
    }

    /// A positive multiple of the invariant form on doubled coordinates.
    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let dot: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        if self.family == Family::A {
            let (sa, sb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            (self.dim as i64) * dot - sa * sb
        } else {
            dot
        }
    }

    /// `<v, alpha_i^vee>` for the i-th simple root (0-based).
    pub fn coroot_pairing(&self, v: &[i64], i: usize) -> i64 {
        let a = &self.simple_roots[i].coords2;
        let num = 2 * self.form(v, a);
        let den = self.form(a, a);
        debug_assert_eq!(num % den, 0, "not in the weight lattice");
        num / den
    }

    /// Fundamental-weight coefficients (Dynkin labels).
    pub fn dynkin_labels(&self, v: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| self.coroot_pairing(v, i)).collect()
    }

    /// True when all Dynkin labels are integers.
    pub fn in_weight_lattice(&self, v: &[i64]) -> bool {
        (0..self.rank).all(|i| {
            let a = &self.simple_roots[i].coords2;
            (2 * self.form(v, a)) % self.form(a, a) == 0
        })
    }

    /// Coordinates in the basis of simple roots, if they are all integers.
    pub fn simple_coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.rank);
        for (w, a) in self.fundamental_weights.iter().zip(&self.simple_roots) {
            let num = 2 * self.form(v, &w.coords2);
            let den = self.form(&a.coords2, &a.coords2);
            if num % den != 0 {
                return None;
            }
            out.push(num / den);
        }
        Some(out)
    }

    pub fn in_root_lattice(&self, v: &[i64]) -> bool {
        self.simple_coords(v).is_some()
    }

    pub fn is_dominant(&self, v: &[i64]) -> bool {
        (0..self.rank).all(|i| self.form(v, &self.simple_roots[i].coords2) >= 0)
    }

    /// Height proxy: a positive multiple of `(v, 2 rho)`.
    pub fn height(&self, v: &[i64]) -> i64 {
        self.form(v, &self.rho.coords2)
    }

    pub fn reflect(&self, v: &[i64], i: usize) -> Vec<i64> {
        let a = &self.simple_roots[i].coords2;
        let c = self.coroot_pairing(v, i);
        let mut out: Vec<i64> = v.iter().zip(a).map(|(x, y)| x - c * y).collect();
        self.canon(&mut out);
        out
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.canon(&mut out);
        out
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.canon(&mut out);
        out
    }

    /// Dominant representative of the orbit of `v`, with the parity of the reflections used.
    pub fn to_dominant_with_sign(&self, v: &[i64]) -> (Vec<i64>, i32) {
        let mut cur = v.to_vec();
        let mut sign = 1;
        'outer: loop {
            for i in 0..self.rank {
                if self.form(&cur, &self.simple_roots[i].coords2) < 0 {
                    cur = self.reflect(&cur, i);
                    sign = -sign;
                    continue 'outer;
                }
            }
            return (cur, sign);
        }
    }

    pub fn dominant_rep(&self, v: &[i64]) -> Vec<i64> {
        self.to_dominant_with_sign(v).0
    }

    /// Dot-action reduction on raw coordinates: `sigma(mu + rho) = lambda + rho`.
    pub fn reduce_shifted(&self, mu: &[i64]) -> Option<(Vec<i64>, i32)> {
        let shifted = self.add(mu, &self.rho.coords2);
        let (dom, sign) = self.to_dominant_with_sign(&shifted);
        if (0..self.rank).any(|i| self.form(&dom, &self.simple_roots[i].coords2) == 0) {
            return None;
        }
        Some((self.sub(&dom, &self.rho.coords2), sign))
    }

    /// Returns `None` when `mu + rho` is singular; otherwise the dominant `lambda` and `(-1)^{l(sigma)}`.
    pub fn reduce_to_dominant(&self, mu: &Weight) -> Result<Option<(Weight, i32)>> {
        self.check(mu)?;
        Ok(self.reduce_shifted(&mu.coords2).map(|(v, s)| (self.weight_canon(v), s)))
    }

    /// `sum_i coeffs[i] * omega_i`.
    pub fn weight_from_fundamental(&self, coeffs: &[i64]) -> Result<Weight> {
        if coeffs.len() != self.rank {
            return Err(Error::LengthMismatch { expected: self.rank, got: coeffs.len() });
        }
        let mut acc = vec![0; self.dim];
        for (c, w) in coeffs.iter().zip(&self.fundamental_weights) {
            for (a, b) in acc.iter_mut().zip(&w.coords2) {
                *a += c * b;
            }
        }
        Ok(self.weight_canon(acc))
    }

    /// Fundamental-weight coefficients of `w`.
    pub fn fundamental_coeffs(&self, w: &Weight) -> Vec<i64> {
        self.dynkin_labels(&w.coords2)
    }

    /// Readable label such as `2w1+w3`.
    pub fn label(&self, w: &Weight) -> String {
        let parts: Vec<String> = self
            .fundamental_coeffs(w)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match c {
                1 => format!("w{}", i + 1),
                -1 => format!("-w{}", i + 1),
                _ => format!("{c}w{}", i + 1),
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+").replace("+-", "-")
        }
    }

    /// Full orbit of `v` under the simple reflections, in discovery order.
    pub fn orbit(&self, v: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(v.to_vec(), ());
        queue.push_back(v.to_vec());
        while let Some(cur) = queue.pop_front() {
            for i in 0..self.rank {
                if self.coroot_pairing(&cur, i) == 0 {
                    continue;
                }
                let next = self.reflect(&cur, i);
                if seen.insert(next.clone(), ()).is_none() {
                    queue.push_back(next);
                }
            }
            order.push(cur);
        }
        order
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> usize {
        let n = self.rank;
        let fact: usize = (1..=n).product();
        match self.family {
            Family::A => fact * (n + 1),
            Family::B | Family::C => fact << n,
            Family::D => fact << (n - 1),
            Family::G2 => 12,
        }
    }

    fn highest<'a>(&self, roots: impl Iterator<Item = &'a Weight>) -> Weight {
        roots.max_by_key(|r| (self.height(&r.coords2), r.coords2.clone())).unwrap().clone()
    }
}

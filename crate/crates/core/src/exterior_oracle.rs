//! Graded characters of exterior algebras of small modules, their decomposition into
//! irreducibles, and the closed polynomials they are compared with.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::genexp::closed_e;
use crate::orders::{all_subsets, dominance_leq_raw, enumerate_dominant_below, two_rho_minus_delta, OrderFilter};
use crate::poly::PolyT;
use crate::recurrence::Check;
use crate::rootdata::{Family, RootDatum, Weight};
use crate::weyl_oracle::{freudenthal, freudenthal_raw, klimyk_raw, Caps, WeightMultMap};

/// Weight `->` polynomial in `t`; the coefficient of `t^k` is the weight multiplicity in degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCharacter {
    pub family: Family,
    pub rank: usize,
    /// Dimension of the underlying module.
    pub dim: usize,
    pub coeffs: BTreeMap<Vec<i64>, PolyT>,
}

impl GradedCharacter {
    pub fn get(&self, v: &[i64]) -> PolyT {
        self.coeffs.get(v).cloned().unwrap_or_default()
    }

    /// Graded dimension, `(1 + t)^dim`.
    pub fn total(&self) -> PolyT {
        self.coeffs.values().fold(PolyT::zero(), |acc, p| acc + p)
    }
}

/// `prod_mu (1 + t e^mu)` over the weights of the module, with multiplicity.
pub fn graded_exterior_character(datum: &RootDatum, module: &WeightMultMap, caps: &Caps) -> Result<GradedCharacter> {
    if module.family != datum.family || module.rank != datum.rank {
        return Err(Error::DatumMismatch);
    }
    let d: i64 = module.mults.values().sum();
    if d as usize > caps.max_exterior_dim {
        return Err(Error::CapExceeded { what: format!("module dimension {d}"), limit: caps.max_exterior_dim });
    }
    let d = d as usize;
    let mut lines: Vec<(&Vec<i64>, i64)> = module.mults.iter().map(|(k, &m)| (k, m)).collect();
    lines.sort_by(|a, b| b.0.cmp(a.0));

    let mut acc: HashMap<Vec<i64>, Vec<i64>> = HashMap::from([(vec![0; datum.dim], vec![1])]);
    for (mu, m) in lines {
        for _ in 0..m {
            let mut next: HashMap<Vec<i64>, Vec<i64>> = HashMap::with_capacity(acc.len() * 2);
            for (w, p) in &acc {
                add_into(next.entry(w.clone()).or_default(), p, 0);
                add_into(next.entry(datum.add(w, mu)).or_default(), p, 1);
            }
            acc = next;
        }
    }
    let coeffs = acc.into_iter().map(|(w, p)| (w, PolyT::from_coeffs(&p))).filter(|(_, p)| !p.is_zero()).collect();
    Ok(GradedCharacter { family: datum.family, rank: datum.rank, dim: d, coeffs })
}

fn add_into(dst: &mut Vec<i64>, src: &[i64], shift: usize) {
    if dst.len() < src.len() + shift {
        dst.resize(src.len() + shift, 0);
    }
    for (i, &c) in src.iter().enumerate() {
        dst[i + shift] += c;
    }
}

/// Splits a graded character into irreducibles, `nu -> P(V_nu, Lambda, t)`.
///
/// Peels the highest remaining dominant weight, ordered by its pairing with `rho` and then
/// lexicographically.
pub fn graded_decompose(datum: &RootDatum, gc: &GradedCharacter, caps: &Caps) -> Result<BTreeMap<Vec<i64>, PolyT>> {
    let rho2 = &datum.rho.coords2;
    let mut rest = gc.coeffs.clone();
    let mut out = BTreeMap::new();
    loop {
        let top = rest
            .keys()
            .filter(|v| datum.is_dominant(v))
            .max_by_key(|v| (datum.form(v, rho2), (*v).clone()))
            .cloned();
        let Some(nu) = top else { break };
        let p = rest[&nu].clone();
        let chr = freudenthal_raw(datum, &nu, caps)?;
        for (w, &m) in &chr.mults {
            let slot = rest.entry(w.clone()).or_default();
            *slot -= &p.scale(m);
            if !slot.has_nonneg_coeffs() {
                return Err(Error::NotACharacter(format!("{w:?}")));
            }
            if slot.is_zero() {
                rest.remove(w);
            }
        }
        out.insert(nu, p);
    }
    if let Some(w) = rest.keys().next() {
        return Err(Error::NotACharacter(format!("{w:?}")));
    }
    Ok(out)
}

/// Closed polynomials compared against the decomposition of the exterior algebra of the adjoint module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reference {
    /// `prod_i (1 + t^{2e_i+1})`.
    HksInvariants,
    /// `(1 + q^{-1}) prod_{i<n} (q^{2e_i+1} + 1) sum_i q^{2e_i}`.
    BazlovAdjoint,
    /// `t^{|Phi+|-|I|}(t+1)^{n-c(I)}(t^2+1)^{|I|-c(I)}(t^3+1)^{c(I)}`, simple indices 1-based.
    ReederDeltaI(Vec<usize>),
}

fn one_plus(e: i32) -> PolyT {
    PolyT::one() + PolyT::monomial(1, e)
}

fn sorted_exponents(datum: &RootDatum) -> Vec<i32> {
    let mut e: Vec<i32> = datum.exponents.iter().map(|&x| x as i32).collect();
    e.sort_unstable();
    e
}

pub fn reference_polynomial(datum: &RootDatum, which: &Reference) -> Result<PolyT> {
    let e = sorted_exponents(datum);
    match which {
        Reference::HksInvariants => Ok(e.iter().fold(PolyT::one(), |acc, &x| acc * one_plus(2 * x + 1))),
        Reference::BazlovAdjoint => {
            let n = e.len();
            let prod = e[..n - 1].iter().fold(one_plus(-1), |acc, &x| acc * one_plus(2 * x + 1));
            let sum = e.iter().fold(PolyT::zero(), |acc, &x| acc + PolyT::monomial(1, 2 * x));
            Ok(prod * sum)
        }
        Reference::ReederDeltaI(set) => {
            let (_, c) = two_rho_minus_delta(datum, set)?;
            let mut idx = set.clone();
            idx.sort_unstable();
            idx.dedup();
            let (c, size) = (c as u32, idx.len() as u32);
            let n = datum.rank as u32;
            let p = PolyT::monomial(1, (datum.positive_roots.len() - idx.len()) as i32)
                * one_plus(1).pow(n - c)
                * one_plus(2).pow(size - c)
                * one_plus(3).pow(c);
            Ok(p)
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExteriorReport {
    pub family: Family,
    pub rank: usize,
    pub module: String,
    pub dim: usize,
    pub decomposition: BTreeMap<Vec<i64>, PolyT>,
    pub checks: Vec<Check>,
}

impl ExteriorReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn eq_check(name: impl Into<String>, got: &PolyT, want: &PolyT) -> Check {
    let pass = got == want;
    let detail = if pass { String::new() } else { format!("got {got}; expected {want}") };
    Check { name: name.into(), pass, detail }
}

fn decompose_module(datum: &RootDatum, highest: &Weight, caps: &Caps) -> Result<(usize, BTreeMap<Vec<i64>, PolyT>)> {
    let module = freudenthal(datum, highest, caps)?;
    let gc = graded_exterior_character(datum, &module, caps)?;
    Ok((gc.dim, graded_decompose(datum, &gc, caps)?))
}

/// Totals at `t = 1` against `factor` times the tensor square of `half`.
fn tensor_square_check(
    datum: &RootDatum,
    dec: &BTreeMap<Vec<i64>, PolyT>,
    half: &[i64],
    factor: i64,
    name: &str,
    caps: &Caps,
) -> Result<Check> {
    let tensor = klimyk_raw(datum, half, half, caps)?;
    let mut bad = Vec::new();
    let mut keys: Vec<&Vec<i64>> = dec.keys().chain(tensor.mults.keys()).collect();
    keys.sort();
    keys.dedup();
    for k in keys {
        let got = dec.get(k).map_or(0, |p| p.value_at_one());
        let want = factor * tensor.get(k);
        if got != want {
            bad.push(format!("{k:?}: {got} vs {want}"));
        }
    }
    Ok(Check { name: name.into(), pass: bad.is_empty(), detail: bad.join("; ") })
}

/// Exterior algebra of the adjoint module: invariants, adjoint, `2 rho - delta_I`, the tensor
/// square of `V_rho`, small modules and the type B/C factorizations.
pub fn adjoint_report(datum: &RootDatum, caps: &Caps) -> Result<ExteriorReport> {
    let (dim, dec) = decompose_module(datum, &datum.theta, caps)?;
    let get = |v: &[i64]| dec.get(v).cloned().unwrap_or_default();
    let mut checks = Vec::new();

    checks.push(eq_check("hks_invariants", &get(&datum.zero().coords2), &reference_polynomial(datum, &Reference::HksInvariants)?));
    checks.push(eq_check("bazlov_adjoint", &get(&datum.theta.coords2), &reference_polynomial(datum, &Reference::BazlovAdjoint)?));

    for set in all_subsets(datum.rank) {
        let (v, _) = two_rho_minus_delta(datum, &set)?;
        let v = v.coords2;
        if !datum.is_dominant(&v) {
            continue;
        }
        let want = reference_polynomial(datum, &Reference::ReederDeltaI(set.clone()))?;
        checks.push(eq_check(format!("reeder_delta{set:?}"), &get(&v), &want));
    }

    let factor = 1i64 << datum.rank;
    checks.push(tensor_square_check(datum, &dec, &datum.rho.coords2, factor, "rho_tensor_square", caps)?);

    let two_rho = datum.weight(datum.rho.coords2.iter().map(|c| 2 * c).collect())?;
    let mut bad = Vec::new();
    for lam in enumerate_dominant_below(datum, &two_rho, OrderFilter::Small)? {
        let zero_mult = freudenthal(datum, &lam, caps)?.get(&datum.zero().coords2);
        let got = get(&lam.coords2).value_at_one();
        if got != factor * zero_mult {
            bad.push(format!("{}: {got} vs {}", datum.label(&lam), factor * zero_mult));
        }
    }
    checks.push(Check { name: "small_equality".into(), pass: bad.is_empty(), detail: bad.join("; ") });

    for (j, want) in factorizations(datum)? {
        let w = &datum.fundamental_weights[j - 1];
        checks.push(eq_check(format!("factorization[omega{j}]"), &get(&w.coords2), &want));
    }
    Ok(ExteriorReport { family: datum.family, rank: datum.rank, module: "adjoint".into(), dim, decomposition: dec, checks })
}

/// Factored forms of `P(V_{omega_j}, Lambda g, q)` for the small fundamental weights of B and C.
pub fn factorizations(datum: &RootDatum) -> Result<Vec<(usize, PolyT)>> {
    let n = datum.rank;
    let e = sorted_exponents(datum);
    let prod = |m: usize| e[..m].iter().fold(PolyT::one(), |acc, &x| acc * one_plus(2 * x + 1));
    let mut out = Vec::new();
    let mut push = |j: usize, a: usize, b: usize| -> Result<()> {
        let w = &datum.fundamental_weights[j - 1];
        let ew = closed_e(datum, w)?.subs_pow(2);
        out.push((j, one_plus(-1) * prod(a) * prod(b) * ew));
        Ok(())
    };
    match datum.family {
        Family::B => {
            for j in 1..n {
                let s = j / 2;
                if j % 2 == 0 {
                    push(j, n - s, s - 1)?;
                } else {
                    push(j, s, n - s - 1)?;
                }
            }
        }
        Family::C => {
            for k in 1..=n / 2 {
                push(2 * k, n - k, k - 1)?;
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Exterior algebra of the little adjoint module: the tensor square of `V_{rho_s}` and the
/// support condition `lambda <= 2 rho_s`.
pub fn little_adjoint_report(datum: &RootDatum, caps: &Caps) -> Result<ExteriorReport> {
    let ts = datum
        .theta_short
        .clone()
        .ok_or_else(|| Error::Precondition(format!("{} is simply laced", datum.name())))?;
    let (dim, dec) = decompose_module(datum, &ts, caps)?;
    let mut checks = Vec::new();
    let factor = 1i64 << datum.num_short_simple;
    checks.push(tensor_square_check(datum, &dec, &datum.rho_short.coords2, factor, "rho_short_tensor_square", caps)?);

    let bound: Vec<i64> = datum.rho_short.coords2.iter().map(|c| 2 * c).collect();
    let below = enumerate_dominant_below(datum, &datum.weight(bound.clone())?, OrderFilter::Dominance)?;
    let mut bad = Vec::new();
    for lam in &below {
        if !dec.contains_key(&lam.coords2) {
            bad.push(format!("missing {}", datum.label(lam)));
        }
    }
    for k in dec.keys() {
        if !dominance_leq_raw(datum, k, &bound) {
            bad.push(format!("extra {k:?}"));
        }
    }
    let name = if datum.family == Family::C { "conjecture-check: support below 2 rho_s" } else { "support below 2 rho_s" };
    checks.push(Check { name: name.into(), pass: bad.is_empty(), detail: bad.join("; ") });
    Ok(ExteriorReport { family: datum.family, rank: datum.rank, module: "little-adjoint".into(), dim, decomposition: dec, checks })
}

//! Explicit admissible g-partitions associated to `2rho - lambda` for the tensor square
//! of `V_rho`, built by the three iterative cases A, B and C.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gpartitions::{count_lr, first_violation, weight_of, GPartition};
use crate::orders::{coordinatewise_leq_raw, dominance_leq_raw, enumerate_dominant_below, OrderFilter};
use crate::rootdata::{Family, RootDatum, Weight};
use crate::weyl_oracle::{klimyk_raw, Caps};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    A,
    B,
    C,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::A => "A",
            Case::B => "B",
            Case::C => "C",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub lambda: Weight,
    /// `2c_i`, where `c_i = 2|rho_i| - |lambda_i|`.
    pub c2: Vec<i64>,
    pub case_used: Case,
    /// 1-based index pairs for Case B.
    pub pairing: Vec<(usize, usize)>,
    /// 1-based odd indices for Case C.
    pub odd_set: Vec<usize>,
    pub partition: GPartition,
    pub associated_ok: bool,
    pub admissible_ok: bool,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.associated_ok && self.admissible_ok
    }
}

/// Options for [`construct_with`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructOptions {
    /// In type B, use Case C whenever there are odd `c_i`, even if Case B applies.
    pub prefer_case_c: bool,
}

pub fn construct(datum: &RootDatum, lambda: &Weight) -> Result<Certificate> {
    construct_with(datum, lambda, ConstructOptions::default())
}

pub fn construct_with(datum: &RootDatum, lambda: &Weight, opts: ConstructOptions) -> Result<Certificate> {
    let family = datum.family;
    if !matches!(family, Family::B | Family::C | Family::D) {
        return Err(Error::UnsupportedDatum { family: family.to_string(), rank: datum.rank });
    }
    datum.check(lambda)?;
    if !datum.is_dominant(&lambda.coords2) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let two_rho: Vec<i64> = datum.rho.coords2.iter().map(|c| 2 * c).collect();
    if !dominance_leq_raw(datum, &lambda.coords2, &two_rho) {
        return Err(Error::Precondition(format!("{lambda} is not below 2rho in the dominance order")));
    }
    if !coordinatewise_leq_raw(&lambda.coords2, &two_rho) {
        return Err(Error::Precondition(format!("{lambda} is not below 2rho in the coordinatewise order")));
    }
    let n = datum.rank;
    let lam: Vec<i64> = lambda.coords2.iter().map(|c| c / 2).collect();
    let two_rho_int: Vec<i64> = datum.rho.coords2.clone();
    let c2: Vec<i64> = (0..n).map(|i| 2 * (two_rho_int[i].abs() - lam[i].abs())).collect();
    let c: Vec<i64> = c2.iter().map(|x| x / 2).collect();
    let odd: Vec<usize> = (1..=n).filter(|&i| c[i - 1] % 2 != 0).collect();

    let case_b_ok = odd.len() % 2 == 0 && (c[n - 1] % 2 == 0 || lam[n - 1] != 0);
    let case = if odd.is_empty() {
        Case::A
    } else if family == Family::B && (opts.prefer_case_c || !case_b_ok) {
        Case::C
    } else if case_b_ok {
        Case::B
    } else {
        return Err(Error::Precondition(format!("no construction case applies to {lambda}")));
    };

    let mut pairing = Vec::new();
    let mut odd_set = Vec::new();
    let partition = match case {
        Case::A => case_a(&two_rho_int, &lam)?,
        Case::B => {
            let k = odd.len() / 2;
            pairing = (0..k).map(|j| (odd[j], odd[j + k])).collect();
            let mut lp = lam.clone();
            for &(a, b) in &pairing {
                lp[a - 1] += 1;
                lp[b - 1] -= 1;
            }
            let mut m = case_a(&two_rho_int, &lp)?;
            for &(a, b) in &pairing {
                let v = m.m(a, b);
                m.set_m(a, b, v + 1);
            }
            m
        }
        Case::C => {
            odd_set = odd.clone();
            let mut lp = lam.clone();
            for &i in &odd_set {
                lp[i - 1] += 1;
            }
            let mut m = case_a(&two_rho_int, &lp)?;
            for &i in &odd_set {
                m.set_ms(i, 1);
            }
            m
        }
    };

    let target = datum.sub(&two_rho, &lambda.coords2);
    let associated_ok = weight_of(datum, &partition)?.coords2 == target;
    let ones = vec![1; n];
    let admissible_ok = first_violation(datum, &partition, &ones, &ones).is_none();
    Ok(Certificate { lambda: lambda.clone(), c2, case_used: case, pairing, odd_set, partition, associated_ok, admissible_ok })
}

/// Case A on integer coordinates `lam`, with `two_rho` the integer vector `2rho`.
fn case_a(two_rho: &[i64], lam: &[i64]) -> Result<GPartition> {
    let n = lam.len();
    let c: Vec<i64> = (0..n).map(|i| two_rho[i].abs() - lam[i].abs()).collect();
    if c.iter().any(|&x| x < 0 || x % 2 != 0) {
        return Err(Error::Precondition(format!("Case A needs nonnegative even c, got {c:?}")));
    }
    let ci = |i: usize| c[i - 1];
    let mut m = GPartition::zero(n);
    m.set_ms(n, if ci(n) == 0 { 0 } else { 2 });
    for i in (2..=n).rev() {
        let p = i - 1;
        if ci(p) == 0 {
            continue;
        }
        if ci(p) == ci(i) + 2 {
            for j in i + 1..=n {
                m.set_m(p, j, m.m(i, j));
                m.set_mp(p, j, m.mp(i, j));
            }
            m.set_ms(p, m.ms(i));
            m.set_m(p, i, 1);
            m.set_mp(p, i, 1);
        } else if ci(i) >= ci(p) {
            let s = if m.ms(i) == 0 { ci(p) / 2 } else { ci(p) / 2 - 1 };
            // J_i in decreasing order; the s-th entry bounds the copied range from below.
            let jset: Vec<usize> = (i + 1..=n).rev().filter(|&j| m.m(i, j) != 0).collect();
            let lo = if s <= 0 {
                n + 1
            } else if (s as usize) <= jset.len() {
                jset[s as usize - 1]
            } else {
                i + 1
            };
            for j in lo..=n {
                m.set_m(p, j, m.m(i, j));
                m.set_mp(p, j, m.mp(i, j));
            }
            m.set_ms(p, m.ms(i));
        } else {
            return Err(Error::Precondition(format!("Case A step undefined at index {p}: c = {c:?}")));
        }
    }
    Ok(m)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub oracle: bool,
    pub rank_cap: usize,
    pub prefer_case_c: bool,
    pub caps: Caps,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { oracle: false, rank_cap: 4, prefer_case_c: false, caps: Caps::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyFailure {
    pub lambda: Weight,
    pub stage: String,
}

/// Brauer–Klimyk check of `V_rho ⊗ V_rho` against the weights below `2rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    /// Number of dominant weights below `2rho`.
    pub below: usize,
    /// Number of those occurring in the tensor square.
    pub confirmed: usize,
    /// Below `2rho` but absent from the tensor square.
    pub missing: Vec<Weight>,
    /// Occurring but not below `2rho`.
    pub extra: Vec<Weight>,
}

impl OracleCheck {
    pub fn holds(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyReport {
    pub family: Family,
    pub rank: usize,
    pub total: usize,
    pub passed: usize,
    pub certificates: Vec<Certificate>,
    pub failures: Vec<CertifyFailure>,
    pub oracle: Option<OracleCheck>,
}

/// Construct a certificate for every dominant `lambda` below `2rho` in both orders.
/// A rank above `opts.rank_cap` yields an empty report.
pub fn certify_theorem(datum: &RootDatum, opts: &CertifyOptions) -> Result<CertifyReport> {
    let mut report = CertifyReport {
        family: datum.family,
        rank: datum.rank,
        total: 0,
        passed: 0,
        certificates: Vec::new(),
        failures: Vec::new(),
        oracle: None,
    };
    if datum.rank > opts.rank_cap {
        return Ok(report);
    }
    let two_rho = datum.weight_canon(datum.rho.coords2.iter().map(|c| 2 * c).collect());
    let weights = enumerate_dominant_below(datum, &two_rho, OrderFilter::DominanceAndCoordinatewise)?;
    let copts = ConstructOptions { prefer_case_c: opts.prefer_case_c };
    let results: Vec<(Weight, Result<Certificate>)> =
        weights.par_iter().map(|w| (w.clone(), construct_with(datum, w, copts))).collect();
    report.total = results.len();
    for (w, r) in results {
        match r {
            Ok(cert) => {
                if !cert.associated_ok {
                    report.failures.push(CertifyFailure { lambda: w.clone(), stage: "associated".into() });
                } else if !cert.admissible_ok {
                    report.failures.push(CertifyFailure { lambda: w.clone(), stage: "admissible".into() });
                } else {
                    report.passed += 1;
                }
                report.certificates.push(cert);
            }
            Err(e) => report.failures.push(CertifyFailure { lambda: w, stage: format!("construct: {e}") }),
        }
    }
    if opts.oracle {
        report.oracle = Some(kostant_oracle(datum, &opts.caps)?);
    }
    Ok(report)
}

/// Compare the support of `V_rho ⊗ V_rho` with the dominant weights below `2rho`.
pub fn kostant_oracle(datum: &RootDatum, caps: &Caps) -> Result<OracleCheck> {
    let two_rho = datum.weight_canon(datum.rho.coords2.iter().map(|c| 2 * c).collect());
    let below = enumerate_dominant_below(datum, &two_rho, OrderFilter::Dominance)?;
    let dec = klimyk_raw(datum, &datum.rho.coords2, &datum.rho.coords2, caps)?;
    let mut missing = Vec::new();
    let mut confirmed = 0;
    for w in &below {
        if dec.get(&w.coords2) >= 1 {
            confirmed += 1;
        } else {
            missing.push(w.clone());
        }
    }
    let extra = dec
        .mults
        .iter()
        .filter(|(v, &c)| c != 0 && !dominance_leq_raw(datum, v, &two_rho.coords2))
        .map(|(v, _)| datum.weight_canon(v.clone()))
        .collect();
    Ok(OracleCheck { below: below.len(), confirmed, missing, extra })
}

/// Number of admissible partitions for `lambda` in `V_rho ⊗ V_rho`.
pub fn rho_square_multiplicity(datum: &RootDatum, lambda: &Weight) -> Result<u64> {
    Ok(count_lr(datum, &datum.rho, &datum.rho, lambda, false)?.0)
}

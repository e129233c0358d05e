//! Generalized exponents of small representations in types B, C and D.
//!
//! Closed formulas, the `q = 0` recurrences that produce them, and the graded
//! multiplicity series in the symmetric algebra.

use crate::error::{Error, Result};
use crate::poly::PolyT;
use crate::rootdata::{Family, RootDatum, Weight};
use crate::weyl_oracle::{lusztig_e, Caps};

/// `(n)_t = 1 + t + ... + t^{n-1}`.
pub fn t_analog(n: usize) -> PolyT {
    PolyT::from_coeffs(&vec![1; n])
}

/// Gaussian binomial via `binom(n,k) = binom(n-1,k) + t^{n-k} binom(n-1,k-1)`.
pub fn t_binomial(n: usize, k: usize) -> Result<PolyT> {
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    let mut row = vec![PolyT::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let a = if j < m { row[j].clone() } else { PolyT::zero() };
            let b = if j > 0 { row[j - 1].shift((m - j) as i32) } else { PolyT::zero() };
            next.push(a + b);
        }
        row = next;
    }
    Ok(row[k].clone())
}

fn t_pow_minus_one(k: i32) -> PolyT {
    PolyT::monomial(1, k) - PolyT::one()
}

/// A covered small weight, with its position in the family's recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveredWeight {
    pub index: usize,
    pub weight: Weight,
}

/// Small weights with a closed formula, in recurrence order.
/// B: `w_k` for `k < n`, then `2w_n` at index `n`.
/// C: `w_{2k}` at index `k`.
/// D: `w_{2k}` at index `k` for `2k <= n-2`, then `w_{n-1}+w_n` (n odd) or `2w_{n-1}`, `2w_n` (n even).
pub fn covered_weights(datum: &RootDatum) -> Result<Vec<CoveredWeight>> {
    let n = datum.rank;
    let fund = |i: usize, c: i64| -> Result<Weight> {
        let mut v = vec![0; n];
        v[i - 1] = c;
        datum.weight_from_fundamental(&v)
    };
    let mut out = vec![CoveredWeight { index: 0, weight: datum.zero() }];
    match datum.family {
        Family::B => {
            for k in 1..n {
                out.push(CoveredWeight { index: k, weight: fund(k, 1)? });
            }
            out.push(CoveredWeight { index: n, weight: fund(n, 2)? });
        }
        Family::C => {
            for k in 1..=n / 2 {
                out.push(CoveredWeight { index: k, weight: fund(2 * k, 1)? });
            }
        }
        Family::D => {
            for k in 1..=(n - 2) / 2 {
                out.push(CoveredWeight { index: k, weight: fund(2 * k, 1)? });
            }
            if n % 2 == 1 {
                let mut v = vec![0; n];
                v[n - 2] = 1;
                v[n - 1] = 1;
                out.push(CoveredWeight { index: n / 2, weight: datum.weight_from_fundamental(&v)? });
            } else {
                out.push(CoveredWeight { index: n / 2, weight: fund(n - 1, 2)? });
                out.push(CoveredWeight { index: n / 2, weight: fund(n, 2)? });
            }
        }
        _ => return Err(Error::UnsupportedDatum { family: datum.family.to_string(), rank: n }),
    }
    Ok(out)
}

fn covered_index(datum: &RootDatum, lambda: &Weight) -> Result<usize> {
    covered_weights(datum)?
        .into_iter()
        .find(|c| c.weight == *lambda)
        .map(|c| c.index)
        .ok_or_else(|| Error::UnsupportedFormula(format!("no closed formula for {} in {}", datum.label(lambda), datum.name())))
}

/// Closed formula for a covered small weight.
pub fn closed_e(datum: &RootDatum, lambda: &Weight) -> Result<PolyT> {
    datum.check(lambda)?;
    let k = covered_index(datum, lambda)?;
    let n = datum.rank;
    if k == 0 {
        return Ok(PolyT::one());
    }
    let bin = |m: usize| -> Result<PolyT> { Ok(t_binomial(n, m)?.subs_pow(2)) };
    match datum.family {
        Family::B => {
            if k == n {
                Ok(bin(n / 2)?.shift((n - n / 2) as i32))
            } else if k % 2 == 0 {
                Ok(bin(k / 2)?.shift((k / 2) as i32))
            } else {
                Ok(bin(k / 2)?.shift((n - k / 2) as i32))
            }
        }
        Family::C => {
            let num = t_analog(n - 2 * k + 1).subs_pow(2) * bin(k)?;
            Ok(num.div_exact(&t_analog(n - k + 1).subs_pow(2))?.shift(2 * k as i32))
        }
        Family::D => {
            let den = PolyT::monomial(1, n as i32) + PolyT::one();
            let factor = if 2 * k == n { PolyT::one() } else { PolyT::monomial(1, (n - 2 * k) as i32) + PolyT::one() };
            Ok((factor * bin(k)?).div_exact(&den)?.shift(k as i32))
        }
        _ => unreachable!(),
    }
}

/// `b_i = -t^{n-i+1}(t^{2i-1} - 1)`.
pub fn b_coeff(n: usize, i: usize) -> PolyT {
    t_pow_minus_one(2 * i as i32 - 1).shift((n + 1) as i32 - i as i32).scale(-1)
}

/// `c_k = t^k - 1`.
pub fn c_coeff(k: usize) -> PolyT {
    t_pow_minus_one(k as i32)
}

/// Left side of the type-B relation at index `k` on the table `e` (indices `0..=k`).
pub fn b_relation(n: usize, k: usize, e: &[PolyT]) -> PolyT {
    let mut acc = c_coeff(k) * &e[k];
    for i in 1..=k / 2 {
        acc += &(b_coeff(n, n - k + i + 1) * &e[k - 2 * i]);
    }
    for i in 1..=(k + 1) / 2 {
        acc += &(b_coeff(n, i) * &e[k + 1 - 2 * i]);
    }
    acc
}

fn b_solve(n: usize, k: usize, e: &[PolyT]) -> Result<PolyT> {
    let mut rest = PolyT::zero();
    for i in 1..=k / 2 {
        rest += &(b_coeff(n, n - k + i + 1) * &e[k - 2 * i]);
    }
    for i in 1..=(k + 1) / 2 {
        rest += &(b_coeff(n, i) * &e[k + 1 - 2 * i]);
    }
    (-rest).div_exact(&c_coeff(k))
}

/// `b_{k,n}(0,t)`.
pub fn d_b_at_zero(k: usize, n: usize) -> PolyT {
    // (t - q) -> t; the remaining factor over t^{n-k}(t-1) or t^k(t-1).
    if n == 2 * k {
        t_analog(2 * k).shift(1 - k as i32)
    } else {
        let f = PolyT::monomial(1, n as i32 - 2 * k as i32) + PolyT::one();
        (t_analog(n) * f).shift(1 - (n as i32 - k as i32))
    }
}

/// Diagonal coefficient of the type-D relation at `q = 0`, `(t^{2k}-1)/(t^{n-1}(t-1))`.
pub fn d_diag_at_zero(k: usize, n: usize) -> PolyT {
    t_analog(2 * k).shift(1 - n as i32)
}

fn d_solve(n: usize, k: usize, e: &[PolyT]) -> Result<PolyT> {
    let mut rhs = PolyT::zero();
    for i in 1..=k {
        rhs += &(d_b_at_zero(i, n - 2 * (k - i)) * &e[k - i]);
    }
    rhs.div_exact(&d_diag_at_zero(k, n))
}

/// Type-C step `E_{w_{2(k+1)}} = t^2 (t^{2(n-2k-1)}-1)(t^{2(n-k+1)}-1) / ((t^{2(n-2k+1)}-1)(t^{2(k+1)}-1)) E_{w_{2k}}`.
pub fn c_step(n: usize, k: usize, e_k: &PolyT) -> Result<PolyT> {
    let (n, k) = (n as i32, k as i32);
    let num = t_pow_minus_one(2 * (n - 2 * k - 1)) * t_pow_minus_one(2 * (n - k + 1)) * e_k;
    let den = t_pow_minus_one(2 * (n - 2 * k + 1)) * t_pow_minus_one(2 * (k + 1));
    Ok(num.div_exact(&den)?.shift(2))
}

/// `E_theta` and `E_{theta_s}` for the family.
pub fn base_theta(datum: &RootDatum) -> PolyT {
    datum.exponents.iter().fold(PolyT::zero(), |acc, &e| acc + PolyT::monomial(1, e as i32))
}

pub fn base_theta_short(datum: &RootDatum) -> Result<PolyT> {
    let n = datum.rank;
    match datum.family {
        Family::B => Ok(PolyT::monomial(1, n as i32)),
        Family::C => Ok(t_analog(n - 1).subs_pow(2).shift(2)),
        _ => Err(Error::UnsupportedFormula(format!("{} has no short roots", datum.name()))),
    }
}

/// Generalized exponents of every covered weight, from the recurrences alone.
/// Returned in the order of [`covered_weights`].
pub fn recur_e(datum: &RootDatum) -> Result<Vec<(Weight, PolyT)>> {
    let n = datum.rank;
    let cov = covered_weights(datum)?;
    let top = cov.iter().map(|c| c.index).max().unwrap_or(0);
    let mut e: Vec<PolyT> = vec![PolyT::one()];
    match datum.family {
        Family::B => {
            // E_1 = E_{theta_s}; E_2 = E_theta (for n = 2 the index 2 is 2w_2 = theta).
            e.push(base_theta_short(datum)?);
            if top >= 2 {
                e.push(base_theta(datum));
            }
            for k in 3..=top {
                let v = b_solve(n, k, &e)?;
                e.push(v);
            }
        }
        Family::C => {
            if top >= 1 {
                e.push(base_theta_short(datum)?);
            }
            for k in 1..top {
                let v = c_step(n, k, &e[k])?;
                e.push(v);
            }
        }
        Family::D => {
            e.push(base_theta(datum));
            for k in 2..=top {
                let v = d_solve(n, k, &e)?;
                e.push(v);
            }
        }
        _ => unreachable!(),
    }
    Ok(cov.into_iter().map(|c| (c.weight, e[c.index].clone())).collect())
}

/// Solve the recurrences from `E_0 = 1` alone, including the indices normally seeded.
pub fn recur_e_unseeded(datum: &RootDatum) -> Result<Vec<PolyT>> {
    let n = datum.rank;
    let top = covered_weights(datum)?.iter().map(|c| c.index).max().unwrap_or(0);
    let mut e = vec![PolyT::one()];
    for k in 1..=top {
        let v = match datum.family {
            Family::B => b_solve(n, k, &e)?,
            Family::C => c_step(n, k - 1, &e[k - 1])?,
            Family::D => d_solve(n, k, &e)?,
            _ => unreachable!(),
        };
        e.push(v);
    }
    Ok(e)
}

/// `(t^s - 1) binom(n,s)_t = sum_{j<s} t^j (t^{n-2j} - 1) binom(n,j)_t`.
pub fn binomial_identity_holds(n: usize, s: usize) -> Result<bool> {
    let lhs = t_pow_minus_one(s as i32) * t_binomial(n, s)?;
    let mut rhs = PolyT::zero();
    for j in 0..s {
        rhs += &(t_pow_minus_one(n as i32 - 2 * j as i32) * t_binomial(n, j)?).shift(j as i32);
    }
    Ok(lhs == rhs)
}

/// First `num + 1` coefficients of `E_lambda(t) / prod (1 - t^{e_i + 1})`.
pub fn symmetric_series(datum: &RootDatum, lambda: &Weight, num: usize, caps: &Caps) -> Result<Vec<i64>> {
    let e = match closed_e(datum, lambda) {
        Ok(p) => p,
        Err(Error::UnsupportedFormula(_) | Error::UnsupportedDatum { .. }) => lusztig_e(datum, lambda, caps)?,
        Err(e) => return Err(e),
    };
    let mut series = vec![0i64; num + 1];
    for (d, c) in e.terms() {
        if d >= 0 && (d as usize) <= num {
            series[d as usize] += c;
        }
    }
    for &ex in &datum.exponents {
        let step = ex + 1;
        let step = step as usize;
        for i in step..=num {
            series[i] += series[i - step];
        }
    }
    Ok(series)
}

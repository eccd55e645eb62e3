//! Factorization of monic polynomials over Q into spectrum elements.
//!
//! Linear factors come from the rational root theorem. The squarefree part
//! that remains is split by searching for quadratic and cubic factors with
//! Kronecker's interpolation method; pieces of degree at most 3 are then
//! irreducible. Anything of higher degree must be covered by a hint.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Certification, IrreduciblePoly};
use crate::error::{Error, Result};
use crate::exactfield::rational::{divisors, int};
use crate::exactfield::{Polynomial, Rational};

// Upper bound on interpolation candidates tried per factor degree.
const KRONECKER_BUDGET: usize = 400_000;

/// Distinct rational roots, ascending.
pub fn rational_roots(p: &Polynomial) -> Vec<Rational> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let ints = integer_coeffs(p);
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero");
    if low > 0 {
        roots.push(Rational::zero());
    }
    let (c0, cd) = (&ints[low], &ints[d]);
    for a in divisors(c0) {
        for b in divisors(cd) {
            for s in [a.clone(), -a.clone()] {
                let r = Rational::new(s, b.clone());
                if r.denom() == &b && p.eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Integer coefficients of `c·p` for the least common denominator `c`.
fn integer_coeffs(p: &Polynomial) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// Factors a monic `P` as a product of powers of spectrum elements, in
/// canonical order.
///
/// Hints are divided out first, then rational roots, then the squarefree
/// remainder is split into pieces of degree at most 3. A remainder without
/// such pieces is reported as [`Error::Unfactored`].
pub fn factor_with_hints(
    p: &Polynomial,
    hints: &[IrreduciblePoly],
) -> Result<Vec<(IrreduciblePoly, u32)>> {
    if !p.is_monic() {
        return Err(Error::NotMonic(p.to_string()));
    }
    let mut found: BTreeMap<IrreduciblePoly, u32> = BTreeMap::new();
    let mut rem = p.clone();
    let mut strip = |rem: &mut Polynomial, f: &IrreduciblePoly| -> Result<()> {
        while let Some(q) = rem.exact_div(f.poly())? {
            *rem = q;
            *found.entry(f.clone()).or_insert(0) += 1;
        }
        Ok(())
    };
    for h in hints {
        strip(&mut rem, h)?;
    }
    for r in rational_roots(&rem) {
        strip(&mut rem, &IrreduciblePoly::linear(&r))?;
    }
    if rem.degree().unwrap_or(0) > 0 {
        let squarefree = rem
            .exact_div(&rem.gcd(&rem.derivative()))?
            .expect("gcd divides");
        let mut unfactored = Vec::new();
        let mut pieces = Vec::new();
        split_squarefree(squarefree, &mut pieces, &mut unfactored);
        if !unfactored.is_empty() {
            let remainder = unfactored
                .iter()
                .fold(Polynomial::one(), |acc, u| &acc * u);
            return Err(Error::Unfactored {
                remainder: remainder.to_string(),
            });
        }
        for piece in pieces {
            strip(
                &mut rem,
                &IrreduciblePoly::from_trusted(piece, Certification::Proven),
            )?;
        }
    }
    debug_assert_eq!(rem, Polynomial::one());
    Ok(found.into_iter().collect())
}

/// Splits a monic squarefree polynomial without rational roots.
fn split_squarefree(f: Polynomial, pieces: &mut Vec<Polynomial>, unfactored: &mut Vec<Polynomial>) {
    let d = f.degree().expect("nonzero");
    if d <= 3 {
        pieces.push(f);
        return;
    }
    for r in [2, 3] {
        if 2 * r > d {
            break;
        }
        if let Some(g) = kronecker_factor(&f, r) {
            let h = f.exact_div(&g).expect("nonzero").expect("factor divides");
            split_squarefree(g, pieces, unfactored);
            split_squarefree(h, pieces, unfactored);
            return;
        }
    }
    unfactored.push(f);
}

/// Least `c ≥ 1` with `c⋆f` integral; always divides the lcm of the
/// denominators. Small `c` keeps the interpolation values small.
fn integral_dilation(f: &Polynomial) -> BigInt {
    let d = f.degree().expect("nonzero");
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let mut candidates = divisors(&lcm);
    candidates.sort();
    candidates
        .into_iter()
        .find(|c| {
            f.coeffs()
                .iter()
                .enumerate()
                .all(|(k, a)| (a * Rational::from_integer(c.pow((d - k) as u32))).is_integer())
        })
        .unwrap_or(lcm)
}

/// A monic factor of degree `r` of monic `f`, found by interpolating
/// candidate values at small integer points.
fn kronecker_factor(f: &Polynomial, r: usize) -> Option<Polynomial> {
    // Make f integral and monic via a dilation, factor, and dilate back.
    let c = Rational::from_integer(integral_dilation(f));
    let g = super::star_poly(&c, f).ok()?;
    let ints = integer_coeffs(&g);

    let eval = |x: i64| -> BigInt {
        ints.iter()
            .rev()
            .fold(BigInt::zero(), |acc, a| acc * x + a)
    };
    let mut points: Vec<(i64, BigInt)> = (-8..=8).map(|x| (x, eval(x))).collect();
    points.retain(|(_, v)| !v.is_zero());
    points.sort_by_cached_key(|(x, v)| (divisors(v).len(), x.abs()));
    if points.len() < r + 1 {
        return None;
    }
    let nodes = points[..r].to_vec();
    let choices: Vec<Vec<BigInt>> = nodes
        .iter()
        .map(|(_, v)| {
            divisors(v)
                .into_iter()
                .flat_map(|d| [d.clone(), -d])
                .collect()
        })
        .collect();
    let total = choices.iter().map(Vec::len).product::<usize>();
    if total > KRONECKER_BUDGET {
        return None;
    }
    let xs: Vec<Rational> = nodes.iter().map(|(x, _)| int(*x)).collect();
    let base = xs
        .iter()
        .fold(Polynomial::one(), |acc, x| &acc * &Polynomial::linear(x));
    let lagrange: Vec<Polynomial> = (0..r)
        .map(|i| {
            let mut l = Polynomial::one();
            for j in (0..r).filter(|&j| j != i) {
                let scale = (&xs[i] - &xs[j]).recip();
                l = &l * &Polynomial::linear(&xs[j]).scale(&scale);
            }
            l
        })
        .collect();
    // Cheap integer filters: a candidate's value at every other point must
    // be a nonzero integer dividing f's value there. Each is kept as
    // (common denominator, scaled base value, scaled weights, f's value).
    let filters: Vec<(BigInt, BigInt, Vec<BigInt>, BigInt)> = points[r..]
        .iter()
        .take(4)
        .map(|(x, v)| {
            let x = int(*x);
            let weights: Vec<Rational> = lagrange.iter().map(|l| l.eval(&x)).collect();
            let b = base.eval(&x);
            let den = weights.iter().fold(b.denom().clone(), |acc, w| acc.lcm(w.denom()));
            let scale = |q: &Rational| (q * Rational::from_integer(den.clone())).to_integer();
            (den.clone(), scale(&b), weights.iter().map(scale).collect(), v.clone())
        })
        .collect();

    let mut idx = vec![0usize; r];
    loop {
        let passes = filters.iter().all(|(den, b, w, v)| {
            let mut num = b.clone();
            for i in 0..r {
                num += &w[i] * &choices[i][idx[i]];
            }
            let (val, rem) = num.div_rem(den);
            rem.is_zero() && !val.is_zero() && (v % &val).is_zero()
        });
        if passes {
            let mut cand = base.clone();
            for i in 0..r {
                let y = Rational::from_integer(choices[i][idx[i]].clone());
                cand = &cand + &lagrange[i].scale(&y);
            }
            if cand.coeffs().iter().all(|a| a.is_integer()) {
                if let Ok(Some(_)) = g.exact_div(&cand) {
                    return super::star_poly(&c.recip(), &cand).ok();
                }
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == r {
                return None;
            }
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

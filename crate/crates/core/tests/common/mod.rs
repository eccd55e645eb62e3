//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls the structured solvers: brackets come from structure
//! constants, similarity is decided by commutant dimensions, and the
//! characteristic polynomial by Faddeev-LeVerrier.

#![allow(dead_code)]

use jordanable::exactfield::rational::{int, rational_roots_of_power};
use jordanable::oracle::{brute_solve_with, EquationSpec, OracleConfig};
use jordanable::{IrreduciblePoly, Matrix, MultiplicityFunction, Rational};
use num_traits::{One, Zero};

pub fn ip(s: &str) -> IrreduciblePoly {
    IrreduciblePoly::parse(s).unwrap()
}

pub fn aleph(items: &[(&str, usize, usize)]) -> MultiplicityFunction {
    MultiplicityFunction::from_entries(items.iter().map(|(p, n, m)| (ip(p), *n, *m))).unwrap()
}

pub fn ints(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn unit(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

/// Oracle with a cap large enough for every fixture in the suite.
pub fn oracle() -> OracleConfig {
    OracleConfig { cap: 400 }
}

pub fn brute_dim(spec: EquationSpec) -> usize {
    brute_solve_with(&spec, &oracle()).unwrap().unwrap().dim()
}

/// `dim C(A, B)` with `Δ A = B Δ`.
pub fn commutant_dim(a: &Matrix, b: &Matrix) -> usize {
    brute_dim(EquationSpec::Intertwine {
        t1: a.clone(),
        t2: b.clone(),
    })
}

/// `A ∼ B` iff `dim C(A, A) = dim C(A, B) = dim C(B, B)`.
pub fn similar(a: &Matrix, b: &Matrix) -> bool {
    let d = commutant_dim(a, a);
    d == commutant_dim(a, b) && d == commutant_dim(b, b)
}

/// Coefficients `c_0..c_n` of `det(X - A)`, constant term first.
pub fn char_poly(a: &Matrix) -> Vec<Rational> {
    let n = a.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &Matrix::scalar(n, &c[n - k + 1]);
        let am = a * &m;
        let tr: Rational = (0..n).map(|i| am[(i, i)].clone()).sum();
        c[n - k] = -tr / int(k as i64);
    }
    c
}

/// Every `λ` for which `λ A ∼ B` is possible on characteristic polynomial
/// grounds; `{1}` when `A` is nilpotent.
pub fn candidate_lambdas(a: &Matrix, b: &Matrix) -> Vec<Rational> {
    let (ca, cb) = (char_poly(a), char_poly(b));
    let n = a.rows();
    for k in 1..=n {
        if !ca[n - k].is_zero() {
            return rational_roots_of_power(&(&cb[n - k] / &ca[n - k]), k as u32);
        }
    }
    vec![Rational::one()]
}

/// Exhaustive projective similarity test.
pub fn projectively_similar(a: &Matrix, b: &Matrix) -> Option<Rational> {
    candidate_lambdas(a, b)
        .into_iter()
        .find(|l| similar(&a.scale(l), b))
}

/// `[x, y]` in the algebra with `ad_{e₀} = ad`, coordinates `e₀` first.
pub fn bracket(ad: &Matrix, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = ad.rows();
    let xv = &x[1..];
    let yv = &y[1..];
    let a = ad.mul_vec(yv);
    let b = ad.mul_vec(xv);
    let mut out = vec![Rational::zero(); n + 1];
    for i in 0..n {
        out[i + 1] = &x[0] * &a[i] - &y[0] * &b[i];
    }
    out
}

/// `φ[e_i, e_j] = [φ e_i, φ e_j]` on all basis pairs.
pub fn preserves_bracket(ad: &Matrix, phi: &Matrix) -> bool {
    let n = ad.rows() + 1;
    for i in 0..n {
        for j in i + 1..n {
            let lhs = phi.mul_vec(&bracket(ad, &unit(n, i), &unit(n, j)));
            let rhs = bracket(ad, &phi.column(i), &phi.column(j));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j]` on all basis pairs.
pub fn is_derivation(ad: &Matrix, d: &Matrix) -> bool {
    let n = ad.rows() + 1;
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.mul_vec(&bracket(ad, &unit(n, i), &unit(n, j)));
            let a = bracket(ad, &d.column(i), &unit(n, j));
            let b = bracket(ad, &unit(n, i), &d.column(j));
            let rhs: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

//! Structured solutions of `X T = λ T X`, `Y T - T Y = T` and
//! `Z J + Jᵀ Z = 0`, built from the structural matrices `V_n`, `U_n`, `P_n`,
//! `W_p` and the intertwiner bases between Jordan blocks.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactfield::rational::{int, pow};
use crate::exactfield::{kernel, row_reduce, Matrix, Rational};
use crate::jordan::{canonical_form, similarity_transform_with, JordanForm};
use crate::multiplicity::MultiplicityFunction;
use crate::spectrum::{companion, Convention, IrreduciblePoly};

/// An affine (or linear, when `offset` is `None`) space of matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub shape: (usize, usize),
    pub offset: Option<Matrix>,
    pub basis: Vec<Matrix>,
}

impl SolutionSpace {
    pub fn linear(shape: (usize, usize), basis: Vec<Matrix>) -> Self {
        SolutionSpace {
            shape,
            offset: None,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `offset + Σ cᵢ basisᵢ`.
    pub fn element(&self, coeffs: &[Rational]) -> Result<Matrix> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::mismatch(self.basis.len(), coeffs.len()));
        }
        let mut acc = self
            .offset
            .clone()
            .unwrap_or_else(|| Matrix::zeros(self.shape.0, self.shape.1));
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = &acc + &b.scale(c);
            }
        }
        Ok(acc)
    }

    fn basis_columns(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(Matrix::vec).collect()
    }

    fn span_rank(&self, extra: &[Vec<Rational>]) -> usize {
        let mut cols = self.basis_columns();
        cols.extend_from_slice(extra);
        if cols.is_empty() {
            return 0;
        }
        Matrix::from_columns(self.shape.0 * self.shape.1, &cols).rank()
    }

    /// True when the basis vectors are independent.
    pub fn is_independent(&self) -> bool {
        self.span_rank(&[]) == self.dim()
    }

    /// Membership of `m` in the linear span of the basis (ignores offset).
    pub fn spans(&self, m: &Matrix) -> bool {
        self.span_rank(&[m.vec()]) == self.span_rank(&[])
    }

    /// Membership of `m` in the affine space.
    pub fn contains(&self, m: &Matrix) -> bool {
        if m.shape() != self.shape {
            return false;
        }
        match &self.offset {
            Some(o) => self.spans(&(m - o)),
            None => self.spans(m),
        }
    }

    /// Equal linear parts: same dimension and mutual containment.
    pub fn same_span(&self, other: &SolutionSpace) -> bool {
        if self.shape != other.shape {
            return false;
        }
        let r = self.span_rank(&[]);
        r == other.span_rank(&[])
            && self.span_rank(&other.basis_columns()) == r
    }

    /// `left · X · right` applied to offset and basis.
    pub fn conjugate(&self, left: &Matrix, right: &Matrix) -> SolutionSpace {
        SolutionSpace {
            shape: (left.rows(), right.cols()),
            offset: self.offset.as_ref().map(|o| &(left * o) * right),
            basis: self.basis.iter().map(|b| &(left * b) * right).collect(),
        }
    }

    /// `left · X` applied to offset and basis.
    pub fn premultiply(&self, left: &Matrix) -> SolutionSpace {
        let id = Matrix::identity(self.shape.1);
        self.conjugate(left, &id)
    }

    /// Basis replaced by the reduced echelon form of its vectorization.
    pub fn echelon(&self) -> SolutionSpace {
        let (r, c) = self.shape;
        let basis = if self.basis.is_empty() {
            Vec::new()
        } else {
            let rows: Vec<Vec<Rational>> = self.basis_columns();
            let red = row_reduce(&Matrix::from_rows(rows).expect("rectangular"));
            (0..red.rank())
                .map(|i| Matrix::unvec(r, c, red.rref.row(i)))
                .collect()
        };
        SolutionSpace {
            shape: self.shape,
            offset: self.offset.clone(),
            basis,
        }
    }

    /// The linear subspace where a linear map on matrices vanishes.
    pub fn subspace_where(&self, map: impl Fn(&Matrix) -> Matrix) -> SolutionSpace {
        if self.basis.is_empty() {
            return SolutionSpace::linear(self.shape, Vec::new());
        }
        let images: Vec<Vec<Rational>> = self.basis.iter().map(|b| map(b).vec()).collect();
        let len = images[0].len();
        let basis = if len == 0 {
            self.basis.clone()
        } else {
            kernel(&Matrix::from_columns(len, &images))
                .iter()
                .map(|c| {
                    SolutionSpace::linear(self.shape, self.basis.clone())
                        .element(c)
                        .expect("coefficient count")
                })
                .collect()
        };
        SolutionSpace::linear(self.shape, basis)
    }
}

/// `V_n(λ) = diag(λ, λ², …, λⁿ)`.
pub fn v_matrix(n: usize, lambda: &Rational) -> Result<Matrix> {
    if lambda.is_zero() {
        return Err(Error::ZeroScalar);
    }
    Ok(Matrix::diagonal(
        &(1..=n).map(|i| pow(lambda, i as i64)).collect::<Vec<_>>(),
    ))
}

/// `U_n = diag(n-1, …, 1, 0)`.
pub fn u_matrix(n: usize) -> Matrix {
    Matrix::diagonal(&(0..n).rev().map(|i| int(i as i64)).collect::<Vec<_>>())
}

/// `P_n`: ones on the antidiagonal.
pub fn p_matrix(n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, n - 1 - i)] = Rational::one();
    }
    m
}

/// `μ_1, …, μ_(d-1)` from `μ_n = -a_(d-n) - Σ_(k<n) a_(d-n+k) μ_k`.
fn mu_sequence(p: &IrreduciblePoly) -> Vec<Rational> {
    let d = p.degree();
    let a = |i: usize| p.poly().coeff(i);
    let mut mu: Vec<Rational> = vec![Rational::zero()];
    for n in 1..d {
        let mut v = -a(d - n);
        for (k, mk) in mu.iter().enumerate().skip(1).take(n - 1) {
            v -= a(d - n + k) * mk;
        }
        mu.push(v);
    }
    mu
}

/// The symmetric `W_p^ε` with `W x_p = x_pᵀ W`: a Hankel matrix with 1 on
/// the antidiagonal and `μ_k` on the `k`-th diagonal below it.
pub fn w_matrix(p: &IrreduciblePoly, conv: Convention) -> Result<Matrix> {
    let d = p.degree();
    if conv == Convention::Real {
        // The rotation form only exists for these degrees.
        companion(p, conv)?;
    }
    let mut mu = mu_sequence(p);
    if conv == Convention::Real && d == 2 {
        mu[1] = Rational::zero();
    }
    let mut w = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let s = i + j;
            if s == d - 1 {
                w[(i, j)] = Rational::one();
            } else if s > d - 1 {
                w[(i, j)] = mu[s - (d - 1)].clone();
            }
        }
    }
    Ok(w)
}

/// `C(N_m, N_n)`: the `n×m` matrices `B` with `B N_m = N_n B`.
pub fn nilpotent_intertwiners(m: usize, n: usize) -> SolutionSpace {
    let l = m.min(n);
    let basis = (0..l)
        .map(|k| {
            let mut b = Matrix::zeros(n, m);
            for i in 0..l - k {
                b[(i, m - l + i + k)] = Rational::one();
            }
            b
        })
        .collect();
    SolutionSpace::linear((n, m), basis)
}

/// `C(J(q, m), J(p, n))`: matrices `B` with `B J(q, m) = J(p, n) B`.
pub fn jordan_intertwiners(
    p: &IrreduciblePoly,
    m: usize,
    q: &IrreduciblePoly,
    n: usize,
    conv: Convention,
) -> Result<SolutionSpace> {
    let shape = (n * p.degree(), m * q.degree());
    if p != q {
        return Ok(SolutionSpace::linear(shape, Vec::new()));
    }
    let x = companion(p, conv)?.matrix;
    let powers: Vec<Matrix> = (0..p.degree() as u32).map(|j| x.pow(j)).collect();
    let basis = nilpotent_intertwiners(m, n)
        .basis
        .iter()
        .flat_map(|b| powers.iter().map(move |xj| b.kron(xj)))
        .collect();
    Ok(SolutionSpace::linear(shape, basis))
}

/// `V(λ; ℵ) = ⊕ V_n(λ⁻¹) ⊗ V_(deg p)(λ|λ|^(ε-1))`, blocks in form order.
pub fn v_aleph(form: &JordanForm, lambda: &Rational) -> Result<Matrix> {
    if lambda.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let s = form.convention.dilation_scalar(lambda);
    let inv = lambda.recip();
    let blocks = form
        .slots
        .iter()
        .map(|slot| Ok(v_matrix(slot.n, &inv)?.kron(&v_matrix(slot.p.degree(), &s)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::direct_sum(&blocks))
}

/// The block matrices `R` with `R J = J' R`, where `J'` replaces every block
/// `J(p, n)` of `form` by `J(λ⋆p, n)` in place.
pub fn star_intertwiners(form: &JordanForm, lambda: &Rational) -> Result<SolutionSpace> {
    let dim = form.dim();
    let mut basis = Vec::new();
    for row in &form.slots {
        let target = row.p.star(lambda)?;
        for col in form.slots.iter().filter(|c| c.p == target) {
            let space = jordan_intertwiners(&target, col.n, &col.p, row.n, form.convention)?;
            for b in space.basis {
                let mut full = Matrix::zeros(dim, dim);
                full.set_block(row.offset, col.offset, &b);
                basis.push(full);
            }
        }
    }
    Ok(SolutionSpace::linear((dim, dim), basis))
}

/// All `X` with `X J = λ J X` for a canonical form `J`: `X = V(λ; ℵ) R`.
pub fn lambda_comm_jordan(form: &JordanForm, lambda: &Rational) -> Result<SolutionSpace> {
    let v = v_aleph(form, lambda)?;
    Ok(star_intertwiners(form, lambda)?.premultiply(&v))
}

/// All `X` with `X T = λ T X`, as `S⁻¹ V(λ; ℵ) R S`.
pub fn solve_lambda_comm(
    t: &Matrix,
    lambda: &Rational,
    hints: &[IrreduciblePoly],
) -> Result<SolutionSpace> {
    if lambda.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let n = t.require_square()?;
    if t.is_zero() {
        // Every matrix commutes with zero up to any scalar.
        let basis = (0..n * n)
            .map(|i| {
                let mut e = vec![Rational::zero(); n * n];
                e[i] = Rational::one();
                Matrix::unvec(n, n, &e)
            })
            .collect();
        return Ok(SolutionSpace::linear((n, n), basis));
    }
    let (s, form) = similarity_transform_with(t, hints, Convention::Standard)?;
    let inner = lambda_comm_jordan(&form, lambda)?;
    Ok(inner.conjugate(&s.inverse()?, &s))
}

/// `U(ℵ) = ⊕ U_n`, for `ℵ` supported at `X`.
pub fn u_aleph(form: &JordanForm) -> Matrix {
    let blocks: Vec<Matrix> = form.slots.iter().map(|s| u_matrix(s.n)).collect();
    Matrix::direct_sum(&blocks)
}

/// Solutions of `Y T - T Y = T`: `S⁻¹(U(ℵ) + C(J(ℵ)))S` when the support of
/// `ℵ_T` is `{X}`, and `None` otherwise.
pub fn solve_inhom_comm(t: &Matrix, hints: &[IrreduciblePoly]) -> Result<Option<SolutionSpace>> {
    t.require_square()?;
    if t.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let (s, form) = similarity_transform_with(t, hints, Convention::Standard)?;
    if !form.aleph.supported_at_zero() {
        return Ok(None);
    }
    let mut inner = lambda_comm_jordan(&form, &Rational::one())?;
    inner.offset = Some(u_aleph(&form));
    Ok(Some(inner.conjugate(&s.inverse()?, &s)))
}

/// `W(ℵ) = ⊕ P_n ⊗ W_p^ε`.
pub fn w_aleph(form: &JordanForm) -> Result<Matrix> {
    let blocks = form
        .slots
        .iter()
        .map(|s| Ok(p_matrix(s.n).kron(&w_matrix(&s.p, form.convention)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::direct_sum(&blocks))
}

/// All `Z` with `Z J(ℵ) + J(ℵ)ᵀ Z = 0`, as `W(ℵ) A` with `A J = -J A`.
pub fn solve_transpose_pair(aleph: &MultiplicityFunction, conv: Convention) -> Result<SolutionSpace> {
    let form = canonical_form(aleph, conv)?;
    transpose_pair_in(&form)
}

pub(crate) fn transpose_pair_in(form: &JordanForm) -> Result<SolutionSpace> {
    let a = lambda_comm_jordan(form, &int(-1))?;
    Ok(a.premultiply(&w_aleph(form)?))
}

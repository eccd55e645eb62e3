//! Brute-force reference solver and seeded random instances.
//!
//! Every matrix equation is vectorized column-stacked, using
//! `vec(A X B) = (Bᵀ ⊗ A) vec X`, and solved by plain row reduction. Nothing
//! here depends on the structured solvers, so the two can check each other.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::equations::SolutionSpace;
use crate::error::{Error, Result};
use crate::exactfield::rational::int;
use crate::exactfield::{solve_linear, Matrix, Polynomial, Rational};
use crate::jordan::{canonical_form, JordanForm};
use crate::multiplicity::MultiplicityFunction;
use crate::spectrum::{Convention, IrreduciblePoly};

/// Default bound on the number of scalar unknowns.
pub const DEFAULT_CAP: usize = 400;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_VAR: &str = "JORDANABLE_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_CAP }
    }
}

impl OracleConfig {
    /// The default cap, unless the environment sets a valid one.
    pub fn from_env() -> Self {
        std::env::var(CAP_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(|cap| OracleConfig { cap })
            .unwrap_or_default()
    }
}

/// A matrix equation for the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquationSpec {
    /// `Δ T₁ = T₂ Δ`.
    Intertwine { t1: Matrix, t2: Matrix },
    /// `X T = λ T X`.
    LambdaComm { t: Matrix, lambda: Rational },
    /// `Y T - T Y = T`.
    InhomComm { t: Matrix },
    /// `Z J + Jᵀ Z = 0`.
    TransposePair { j: Matrix },
    /// Derivations of the almost Abelian algebra with `ad_{e₀} = ad`.
    Derivation { ad: Matrix },
    /// Symmetric `Z` with `Z J + Jᵀ Z = 0`.
    SymmetricTransposePair { j: Matrix },
}

impl EquationSpec {
    /// Shape of the unknown matrix.
    pub fn unknown_shape(&self) -> Result<(usize, usize)> {
        Ok(match self {
            EquationSpec::Intertwine { t1, t2 } => (t2.require_square()?, t1.require_square()?),
            EquationSpec::LambdaComm { t, .. } | EquationSpec::InhomComm { t } => {
                let n = t.require_square()?;
                (n, n)
            }
            EquationSpec::TransposePair { j } | EquationSpec::SymmetricTransposePair { j } => {
                let n = j.require_square()?;
                (n, n)
            }
            EquationSpec::Derivation { ad } => {
                let n = ad.require_square()? + 1;
                (n, n)
            }
        })
    }
}

/// `K` with `K vec X = vec Xᵀ` for square `n×n` matrices.
fn commutation(n: usize) -> Matrix {
    let mut k = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            k[(j + i * n, i + j * n)] = Rational::one();
        }
    }
    k
}

fn stack(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.rows() + b.rows(), a.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), 0, b);
    out
}

/// Structure constants `c[i][j][k]` of `[e_i, e_j] = Σ c_ijk e_k` for the
/// algebra with `ad_{e₀} = ad`, basis `e₀, e₁, …`.
fn structure_constants(ad: &Matrix) -> Vec<Vec<Vec<Rational>>> {
    let n = ad.rows() + 1;
    let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
    for j in 1..n {
        for k in 1..n {
            let v = ad[(k - 1, j - 1)].clone();
            c[0][j][k] = v.clone();
            c[j][0][k] = -v;
        }
    }
    c
}

/// Rows of `D[e_i, e_j] - [D e_i, e_j] - [e_i, D e_j] = 0` in `vec D`.
fn derivation_system(ad: &Matrix) -> Matrix {
    let n = ad.rows() + 1;
    let c = structure_constants(ad);
    let at = |a: usize, b: usize| a + b * n;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for l in 0..n {
                    // D[e_i, e_j]: Σ_l c_ijl D_kl
                    if !c[i][j][l].is_zero() {
                        row[at(k, l)] += &c[i][j][l];
                    }
                    // [D e_i, e_j]: Σ_l D_li c_ljk
                    if !c[l][j][k].is_zero() {
                        row[at(l, i)] -= &c[l][j][k];
                    }
                    // [e_i, D e_j]: Σ_l D_lj c_ilk
                    if !c[i][l][k].is_zero() {
                        row[at(l, j)] -= &c[i][l][k];
                    }
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, n * n);
    }
    Matrix::from_rows(rows).expect("rectangular")
}

/// Coefficient matrix and right-hand side of the vectorized system.
fn system(spec: &EquationSpec) -> Result<(Matrix, Vec<Rational>)> {
    let (r, c) = spec.unknown_shape()?;
    let zero_rhs = |m: &Matrix| vec![Rational::zero(); m.rows()];
    let a = match spec {
        EquationSpec::Intertwine { t1, t2 } => {
            &t1.transpose().kron(&Matrix::identity(r)) - &Matrix::identity(c).kron(t2)
        }
        EquationSpec::LambdaComm { t, lambda } => {
            if lambda.is_zero() {
                return Err(Error::ZeroScalar);
            }
            &t.transpose().kron(&Matrix::identity(r)) - &Matrix::identity(c).kron(t).scale(lambda)
        }
        EquationSpec::InhomComm { t } => {
            let a = &t.transpose().kron(&Matrix::identity(r)) - &Matrix::identity(c).kron(t);
            return Ok((a, t.vec()));
        }
        EquationSpec::TransposePair { j } => {
            &j.transpose().kron(&Matrix::identity(r)) + &Matrix::identity(c).kron(&j.transpose())
        }
        EquationSpec::SymmetricTransposePair { j } => {
            let a = &j.transpose().kron(&Matrix::identity(r)) + &Matrix::identity(c).kron(&j.transpose());
            let sym = &commutation(r) - &Matrix::identity(r * r);
            stack(&a, &sym)
        }
        EquationSpec::Derivation { ad } => derivation_system(ad),
    };
    let rhs = zero_rhs(&a);
    Ok((a, rhs))
}

/// Solves a spec with the cap taken from the environment.
pub fn brute_solve(spec: &EquationSpec) -> Result<Option<SolutionSpace>> {
    brute_solve_with(spec, &OracleConfig::from_env())
}

/// Exact solution set of `spec`; `None` when an affine system is
/// inconsistent. Linear kinds carry no offset.
pub fn brute_solve_with(spec: &EquationSpec, config: &OracleConfig) -> Result<Option<SolutionSpace>> {
    let (r, c) = spec.unknown_shape()?;
    if r * c > config.cap {
        return Err(Error::CapExceeded {
            unknowns: r * c,
            cap: config.cap,
        });
    }
    let (a, b) = system(spec)?;
    let a = if a.rows() == 0 {
        Matrix::zeros(1, r * c)
    } else {
        a
    };
    let b = if b.is_empty() { vec![Rational::zero()] } else { b };
    let Some(sol) = solve_linear(&a, &b)? else {
        return Ok(None);
    };
    let basis = sol
        .nullspace
        .iter()
        .map(|v| Matrix::unvec(r, c, v))
        .collect();
    let offset = matches!(spec, EquationSpec::InhomComm { .. }).then(|| Matrix::unvec(r, c, &sol.particular));
    Ok(Some(SolutionSpace {
        shape: (r, c),
        offset,
        basis,
    }))
}

/// Bounds for [`random_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Profile {
    pub max_dim: usize,
    pub max_degree: usize,
    pub max_block: usize,
    /// Bound on the random multipliers in the elementary operations.
    pub entry_bound: i64,
    /// Restrict the support to `{X}`.
    pub nilpotent: bool,
}

impl Default for Profile {
    fn default() -> Self {
        Profile {
            max_dim: 12,
            max_degree: 3,
            max_block: 3,
            entry_bound: 2,
            nilpotent: false,
        }
    }
}

/// A random Jordanable operator with known answer: `T = S⁻¹ J(ℵ) S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub aleph: MultiplicityFunction,
    pub form: JordanForm,
    pub s: Matrix,
    pub t: Matrix,
}

fn random_spectrum_element(rng: &mut ChaCha8Rng, max_degree: usize) -> IrreduciblePoly {
    loop {
        let d = rng.random_range(1..=max_degree);
        let mut coeffs: Vec<Rational> = (0..d).map(|_| int(rng.random_range(-3..=3))).collect();
        coeffs.push(Rational::one());
        if let Ok(p) = IrreduciblePoly::new(Polynomial::new(coeffs)) {
            return p;
        }
    }
}

/// Product of random elementary row operations: an integer matrix with
/// determinant ±1.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Matrix {
    let mut s = Matrix::identity(n);
    if n < 2 {
        return s;
    }
    for _ in 0..3 * n {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        if rng.random_bool(0.2) {
            // Row swap.
            let mut e = Matrix::identity(n);
            e[(i, i)] = Rational::zero();
            e[(j, j)] = Rational::zero();
            e[(i, j)] = Rational::one();
            e[(j, i)] = Rational::one();
            s = &e * &s;
        } else {
            let mut c = 0;
            while c == 0 {
                c = rng.random_range(-bound..=bound);
            }
            let mut e = Matrix::identity(n);
            e[(i, j)] = int(c);
            s = &e * &s;
        }
    }
    s
}

/// Deterministic per seed; never returns the zero operator.
pub fn random_instance(seed: u64, profile: &Profile) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let aleph = loop {
        let a = random_aleph(&mut rng, profile)?;
        // All blocks `X¹` would give the zero operator.
        if !a.entries().all(|(p, n, _)| p.is_x() && n == 1) {
            break a;
        }
    };
    let form = canonical_form(&aleph, Convention::Standard)?;
    let s = random_unimodular(&mut rng, form.dim(), profile.entry_bound);
    let t = &(&s.inverse()? * &form.matrix) * &s;
    Ok(Instance { aleph, form, s, t })
}

fn random_aleph(rng: &mut ChaCha8Rng, profile: &Profile) -> Result<MultiplicityFunction> {
    let target = rng.random_range(1..=profile.max_dim.max(1));
    let mut aleph = MultiplicityFunction::new();
    while aleph.dim() < target {
        let p = if profile.nilpotent {
            IrreduciblePoly::x()
        } else {
            random_spectrum_element(rng, profile.max_degree)
        };
        let room = (target - aleph.dim()) / p.degree();
        if room == 0 {
            if aleph.dim() > 0 && rng.random_bool(0.5) {
                break;
            }
            continue;
        }
        let n = rng.random_range(1..=room.min(profile.max_block));
        aleph.add(p, n, 1)?;
    }
    Ok(aleph)
}

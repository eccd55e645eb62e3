//! Almost Abelian Lie algebras `A(ℵ) = F e₀ ⋉ V` with `ad_{e₀} = J(ℵ)`.
//!
//! Algebra elements are coefficient vectors of length `1 + dim ℵ`: the `e₀`
//! coefficient first, then the `V` coordinates of the canonical form.
//! Subspaces of `V` alone (centre, lower central series) are returned in
//! `V` coordinates.

use std::fmt;

use num_traits::{One, Zero};

use crate::equations::{lambda_comm_jordan, transpose_pair_in, u_aleph, SolutionSpace};
use crate::error::{Error, Result};
use crate::exactfield::rational::format_rational;
use crate::exactfield::{independent, kernel, Matrix, Rational, Subspace};
use crate::jordan::{canonical_form, similarity_transform, JordanForm};
use crate::multiplicity::{dilation_symmetries, projectively_equal, DilationGroup, MultiplicityFunction};
use crate::spectrum::{Convention, IrreduciblePoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostAbelianAlgebra {
    pub aleph: MultiplicityFunction,
    pub form: JordanForm,
}

impl AlmostAbelianAlgebra {
    /// Rejects the zero multiplicity function, whose algebra is Abelian.
    pub fn new(aleph: &MultiplicityFunction, conv: Convention) -> Result<Self> {
        Ok(AlmostAbelianAlgebra {
            aleph: aleph.clone(),
            form: canonical_form(aleph, conv)?,
        })
    }

    pub fn dim(&self) -> usize {
        1 + self.form.dim()
    }

    pub fn v_dim(&self) -> usize {
        self.form.dim()
    }

    pub fn ad_e0(&self) -> &Matrix {
        &self.form.matrix
    }

    pub fn convention(&self) -> Convention {
        self.form.convention
    }

    /// `e0` followed by `e^{m,k}_α(p,n)` labels, `α` counted from 1.
    pub fn labels(&self) -> Vec<String> {
        std::iter::once("e0".to_string())
            .chain(self.form.index.iter().map(|b| {
                format!("e^{{{},{}}}_{}({},{})", b.m, b.k, b.alpha + 1, b.p, b.n)
            }))
            .collect()
    }

    /// The `V`-vector `v` as an algebra element.
    pub fn embed(&self, v: &[Rational]) -> Vec<Rational> {
        std::iter::once(Rational::zero()).chain(v.iter().cloned()).collect()
    }

    /// The unit vector of coordinate `i` of the algebra.
    pub fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// True for the Heisenberg algebra `A(1×X²)`.
    pub fn is_heisenberg(&self) -> bool {
        self.aleph.entries().eq([(&IrreduciblePoly::x(), 2, 1)])
    }

    /// `ad_x` as a matrix on algebra coordinates.
    pub fn ad(&self, x: &[Rational]) -> Result<Matrix> {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for j in 0..n {
            let col = bracket(self, x, &self.unit(j))?;
            for (i, c) in col.into_iter().enumerate() {
                out[(i, j)] = c;
            }
        }
        Ok(out)
    }
}

/// `[a e₀ + u, b e₀ + w] = a J w - b J u`.
pub fn bracket(l: &AlmostAbelianAlgebra, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
    let n = l.dim();
    for v in [x, y] {
        if v.len() != n {
            return Err(Error::mismatch(n, v.len()));
        }
    }
    let jw = l.ad_e0().mul_vec(&y[1..]);
    let ju = l.ad_e0().mul_vec(&x[1..]);
    let mut out = vec![Rational::zero(); n];
    for i in 0..n - 1 {
        out[i + 1] = &x[0] * &jw[i] - &y[0] * &ju[i];
    }
    Ok(out)
}

/// Basis of the centre `ker J(ℵ)`: the vectors `e^{1,0}_α(X, n)`.
pub fn centre(l: &AlmostAbelianAlgebra) -> Vec<Vec<Rational>> {
    let dim = l.v_dim();
    l.form
        .slots
        .iter()
        .filter(|s| s.p.is_x())
        .map(|s| {
            let mut v = vec![Rational::zero(); dim];
            v[s.coordinate(1, 0)] = Rational::one();
            v
        })
        .collect()
}

/// Basis of `L_(k) = J(ℵ)^k V`: chain positions `m ≤ n - k` of `X`-blocks
/// and every coordinate of the other blocks.
pub fn lower_central_series(l: &AlmostAbelianAlgebra, k: usize) -> Result<Vec<Vec<Rational>>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let dim = l.v_dim();
    let mut out = Vec::new();
    for (i, b) in l.form.index.iter().enumerate() {
        if !b.p.is_x() || b.m + k <= b.n {
            let mut v = vec![Rational::zero(); dim];
            v[i] = Rational::one();
            out.push(v);
        }
    }
    Ok(out)
}

pub fn is_nilpotent(l: &AlmostAbelianAlgebra) -> bool {
    l.aleph.supported_at_zero()
}

/// `A(ℵ) = A(ℵ₀) ⊕ F^w` with `w = ℵ(X, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub l0: MultiplicityFunction,
    pub w_dim: usize,
}

pub fn decompose(l: &AlmostAbelianAlgebra) -> Decomposition {
    let x = IrreduciblePoly::x();
    let (w, l0) = l.aleph.split_off(|p, n| *p == x && n == 1);
    Decomposition {
        l0,
        w_dim: w.get(&x, 1),
    }
}

/// Outcome of a successful isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub lambda: Rational,
    /// Invertible `M` with `λ·M·T₁ = T₂·M`.
    pub matrix: Matrix,
}

/// Decides whether `A(T₁) ≅ A(T₂)`, i.e. whether `λ T₁ ∼ T₂` for some `λ`.
///
/// With `S_i T_i S_i⁻¹ = J_i`, the witness is `S₂⁻¹ Π V(λ; ℵ₁)⁻¹ S₁`, where
/// `V(λ; ℵ₁)` carries `λ J₁` to the blockwise dilated form and `Π` sorts its
/// blocks into canonical order.
pub fn classify_iso(t1: &Matrix, t2: &Matrix, hints: &[IrreduciblePoly]) -> Result<Option<IsoWitness>> {
    let n = t1.require_square()?;
    if t2.require_square()? != n {
        return Ok(None);
    }
    if t1.is_zero() || t2.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let (s1, f1) = similarity_transform(t1, hints)?;
    let (s2, f2) = similarity_transform(t2, hints)?;
    let Some(lambda) = projectively_equal(&f1.aleph, &f2.aleph) else {
        return Ok(None);
    };
    let v = crate::equations::v_aleph(&f1, &lambda)?;
    let mut pi = Matrix::zeros(n, n);
    let mut used = vec![false; f2.slots.len()];
    for slot in &f1.slots {
        let target = slot.p.star(&lambda)?;
        let j = (0..f2.slots.len())
            .find(|&j| !used[j] && f2.slots[j].p == target && f2.slots[j].n == slot.n)
            .expect("projectively equal forms match blockwise");
        used[j] = true;
        for i in 0..slot.size() {
            pi[(f2.slots[j].offset + i, slot.offset + i)] = Rational::one();
        }
    }
    let matrix = &(&(&s2.inverse()? * &pi) * &v.inverse()?) * &s1;
    debug_assert_eq!((&matrix * t1).scale(&lambda), t2 * &matrix);
    Ok(Some(IsoWitness { lambda, matrix }))
}

/// Automorphisms `(ν 0; γ Δ)` grouped by `ν ∈ Dil`.
///
/// Each family is an affine space of matrices; automorphisms are its
/// invertible elements. For a decomposable algebra the families also carry
/// the maps between `L₀` and `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismSpace {
    pub dil: DilationGroup,
    pub gamma_dim: usize,
    dim: usize,
    l0_form: JordanForm,
    // Algebra coordinate of each coordinate of A(ℵ₀), e₀ first.
    embed: Vec<usize>,
    extra: Vec<Matrix>,
}

impl AutomorphismSpace {
    /// The affine family with `e₀ ↦ ν e₀ + γ`; errors unless `ν ∈ Dil`.
    pub fn family(&self, nu: &Rational) -> Result<SolutionSpace> {
        if !self.dil.contains(nu) {
            return Err(Error::NotDilationSymmetry(format_rational(nu)));
        }
        let n = self.dim;
        let lift = |m: &Matrix| {
            let mut out = Matrix::zeros(n, n);
            for (i, &fi) in self.embed.iter().enumerate() {
                for (j, &fj) in self.embed.iter().enumerate() {
                    out[(fi, fj)] = m[(i, j)].clone();
                }
            }
            out
        };
        let n0 = self.embed.len();
        let mut offset = Matrix::zeros(n0, n0);
        offset[(0, 0)] = nu.clone();
        let mut basis = Vec::new();
        for i in 1..n0 {
            let mut g = Matrix::zeros(n0, n0);
            g[(i, 0)] = Rational::one();
            basis.push(lift(&g));
        }
        for d in lambda_comm_jordan(&self.l0_form, nu)?.basis {
            let mut m = Matrix::zeros(n0, n0);
            m.set_block(1, 1, &d);
            basis.push(lift(&m));
        }
        basis.extend(self.extra.iter().cloned());
        Ok(SolutionSpace {
            shape: (n, n),
            offset: Some(lift(&offset)),
            basis,
        })
    }

    /// The `ν` with explicitly listed families: all of `Dil` when finite,
    /// otherwise just `1`.
    pub fn listed_scalars(&self) -> Vec<Rational> {
        match &self.dil {
            DilationGroup::Finite(v) => v.clone(),
            DilationGroup::AllScalars => vec![Rational::one()],
        }
    }

    /// Membership test: invertible and inside the family of its `(0,0)` entry.
    pub fn contains(&self, m: &Matrix) -> bool {
        if m.shape() != (self.dim, self.dim) || m.rank() != self.dim {
            return false;
        }
        self.family(&m[(0, 0)]).is_ok_and(|f| f.contains(m))
    }
}

fn reject_heisenberg(l: &AlmostAbelianAlgebra) -> Result<()> {
    if l.is_heisenberg() {
        Err(Error::Heisenberg)
    } else {
        Ok(())
    }
}

/// `Aut(A(ℵ))` for indecomposable, non-Heisenberg `ℵ`.
pub fn automorphism_space(l: &AlmostAbelianAlgebra) -> Result<AutomorphismSpace> {
    reject_heisenberg(l)?;
    let dec = decompose(l);
    if dec.w_dim > 0 {
        return Err(Error::Decomposable { w_dim: dec.w_dim });
    }
    Ok(AutomorphismSpace {
        dil: dilation_symmetries(&l.aleph)?,
        gamma_dim: l.v_dim(),
        dim: l.dim(),
        l0_form: l.form.clone(),
        embed: (0..l.dim()).collect(),
        extra: Vec::new(),
    })
}

fn der_indecomposable(l: &AlmostAbelianAlgebra) -> Result<SolutionSpace> {
    let n = l.dim();
    let mut basis = Vec::new();
    for i in 1..n {
        let mut g = Matrix::zeros(n, n);
        g[(i, 0)] = Rational::one();
        basis.push(g);
    }
    for d in lambda_comm_jordan(&l.form, &Rational::one())?.basis {
        let mut m = Matrix::zeros(n, n);
        m.set_block(1, 1, &d);
        basis.push(m);
    }
    if is_nilpotent(l) {
        let mut m = Matrix::zeros(n, n);
        m[(0, 0)] = Rational::one();
        m.set_block(1, 1, &u_aleph(&l.form));
        basis.push(m);
    }
    Ok(SolutionSpace::linear((n, n), basis))
}

/// `Der(A(ℵ))`; decomposable algebras go through [`compose_decomposable`].
pub fn derivation_space(l: &AlmostAbelianAlgebra) -> Result<SolutionSpace> {
    reject_heisenberg(l)?;
    if decompose(l).w_dim > 0 {
        return Ok(compose_decomposable(l)?.der);
    }
    der_indecomposable(l)
}

/// Automorphisms and derivations of `L = L₀ ⊕ W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposableDescription {
    pub l0: MultiplicityFunction,
    pub w_dim: usize,
    pub aut: AutomorphismSpace,
    pub der: SolutionSpace,
}

/// Block description `(φ₀₀ φ₀₁; φ₁₀ φ₁₁)` with `φ₀₀` an automorphism or
/// derivation of `L₀`, `φ₀₁(W) ⊂ Z(L₀)`, `(L₀)_(1) ⊂ ker φ₁₀` and `φ₁₁`
/// arbitrary (invertible for automorphisms).
pub fn compose_decomposable(l: &AlmostAbelianAlgebra) -> Result<DecomposableDescription> {
    let dec = decompose(l);
    if dec.w_dim == 0 {
        return Err(Error::Indecomposable);
    }
    let n = l.dim();
    let w_coords: Vec<usize> = l
        .form
        .slots
        .iter()
        .filter(|s| s.p.is_x() && s.n == 1)
        .map(|s| 1 + s.offset)
        .collect();
    let embed: Vec<usize> = (0..n).filter(|i| !w_coords.contains(i)).collect();

    if dec.l0.is_zero() {
        return Err(Error::ZeroMultiplicity);
    }
    let l0 = AlmostAbelianAlgebra::new(&dec.l0, l.convention())?;
    reject_heisenberg(&l0)?;

    let mut extra = Vec::new();
    // φ₀₁: W into the centre of L₀.
    for &w in &w_coords {
        for z in centre(&l0) {
            let mut m = Matrix::zeros(n, n);
            for (i, c) in l0.embed(&z).into_iter().enumerate() {
                m[(embed[i], w)] = c;
            }
            extra.push(m);
        }
    }
    // φ₁₀: functionals on L₀ vanishing on (L₀)_(1) = J₀ V₀.
    let mut functionals = vec![l0.unit(0)];
    for f in kernel(&l0.ad_e0().transpose()) {
        functionals.push(l0.embed(&f));
    }
    for &w in &w_coords {
        for f in &functionals {
            let mut m = Matrix::zeros(n, n);
            for (j, c) in f.iter().enumerate() {
                m[(w, embed[j])] = c.clone();
            }
            extra.push(m);
        }
    }
    // φ₁₁: any map W → W.
    for &wi in &w_coords {
        for &wj in &w_coords {
            let mut m = Matrix::zeros(n, n);
            m[(wi, wj)] = Rational::one();
            extra.push(m);
        }
    }

    let lift = |m: &Matrix| {
        let mut out = Matrix::zeros(n, n);
        for (i, &fi) in embed.iter().enumerate() {
            for (j, &fj) in embed.iter().enumerate() {
                out[(fi, fj)] = m[(i, j)].clone();
            }
        }
        out
    };
    let mut der_basis: Vec<Matrix> = der_indecomposable(&l0)?.basis.iter().map(lift).collect();
    der_basis.extend(extra.iter().cloned());
    let aut = AutomorphismSpace {
        dil: dilation_symmetries(&dec.l0)?,
        gamma_dim: l0.v_dim(),
        dim: n,
        l0_form: l0.form.clone(),
        embed,
        extra,
    };
    Ok(DecomposableDescription {
        l0: dec.l0,
        w_dim: dec.w_dim,
        aut,
        der: SolutionSpace::linear((n, n), der_basis),
    })
}

/// `D[x, y] = [D x, y] + [x, D y]` on all pairs of basis vectors.
pub fn is_derivation(l: &AlmostAbelianAlgebra, d: &Matrix) -> Result<bool> {
    let n = l.dim();
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (l.unit(i), l.unit(j));
            let lhs = d.mul_vec(&bracket(l, &x, &y)?);
            let a = bracket(l, &d.mul_vec(&x), &y)?;
            let b = bracket(l, &x, &d.mul_vec(&y))?;
            if lhs.iter().zip(a.iter().zip(&b)).any(|(u, (v, w))| *u != v + w) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Invertible and `φ[x, y] = [φ x, φ y]` on all pairs of basis vectors.
pub fn is_automorphism(l: &AlmostAbelianAlgebra, phi: &Matrix) -> Result<bool> {
    let n = l.dim();
    if phi.shape() != (n, n) || phi.rank() != n {
        return Ok(false);
    }
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (l.unit(i), l.unit(j));
            if phi.mul_vec(&bracket(l, &x, &y)?) != bracket(l, &phi.mul_vec(&x), &phi.mul_vec(&y))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A quadratic Casimir `Q(x) = Σ A_ij x_i x_j` on the `V` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirElement {
    pub matrix: Matrix,
}

impl fmt::Display for CasimirElement {
    /// Collected monomials in the symbols `x1, x2, …` for the `V` basis.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.matrix;
        let mut terms: Vec<String> = Vec::new();
        for i in 0..a.rows() {
            for j in i..a.cols() {
                let c = if i == j {
                    a[(i, i)].clone()
                } else {
                    &a[(i, j)] + &a[(j, i)]
                };
                if c.is_zero() {
                    continue;
                }
                let mono = if i == j {
                    format!("x{}^2", i + 1)
                } else {
                    format!("x{}*x{}", i + 1, j + 1)
                };
                let coeff = if c.is_one() {
                    String::new()
                } else if c == -Rational::one() {
                    "-".to_string()
                } else {
                    format!("{}*", format_rational(&c))
                };
                terms.push(format!("{coeff}{mono}"));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {t}")),
            }
        }
        write!(f, "{out}")
    }
}

/// Basis of `{A = Aᵀ : A J + Jᵀ A = 0}`, in reduced echelon order.
pub fn casimir_basis(l: &AlmostAbelianAlgebra) -> Result<Vec<CasimirElement>> {
    let j = l.ad_e0();
    let space = transpose_pair_in(&l.form)?
        .subspace_where(|z| z - &z.transpose())
        .echelon();
    let out: Vec<CasimirElement> = space
        .basis
        .into_iter()
        .map(|matrix| CasimirElement { matrix })
        .collect();
    for c in &out {
        let a = &c.matrix;
        assert!(a.is_symmetric() && (&(a * j) + &(&j.transpose() * a)).is_zero());
    }
    Ok(out)
}

fn checked_span(l: &AlmostAbelianAlgebra, vectors: &[Vec<Rational>]) -> Result<Subspace> {
    let n = l.dim();
    if let Some(v) = vectors.iter().find(|v| v.len() != n) {
        return Err(Error::mismatch(n, v.len()));
    }
    if !independent(vectors, n) {
        return Err(Error::DependentVectors);
    }
    Ok(Subspace::spanned_by(n, vectors))
}

/// Closed under the bracket.
pub fn check_subalgebra(l: &AlmostAbelianAlgebra, vectors: &[Vec<Rational>]) -> Result<bool> {
    let span = checked_span(l, vectors)?;
    for (i, x) in vectors.iter().enumerate() {
        for y in &vectors[i + 1..] {
            if !span.contains(&bracket(l, x, y)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `[L, span] ⊂ span`.
pub fn check_ideal(l: &AlmostAbelianAlgebra, vectors: &[Vec<Rational>]) -> Result<bool> {
    let span = checked_span(l, vectors)?;
    for i in 0..l.dim() {
        for y in vectors {
            if !span.contains(&bracket(l, &l.unit(i), y)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

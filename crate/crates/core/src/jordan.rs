//! Jordan blocks `J(p, n)`, canonical forms `J(ℵ)`, multiplicity extraction,
//! similarity transforms and invariant subspaces.
//!
//! Coordinates of a block `J(p, n)` with `d = deg p` are ordered chain
//! position first: `e^{m,k}` sits at `(m - 1)·d + k`, and `N e^m = e^{m-1}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{independent, solve_linear, Matrix, Polynomial, Rational, Subspace};
use crate::multiplicity::MultiplicityFunction;
use crate::spectrum::{companion, factor_with_hints, minimal_polynomial, Convention, IrreduciblePoly};

/// Label of one coordinate of a canonical form: the vector `e_α^{m,k}(p, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockIndex {
    pub p: IrreduciblePoly,
    pub n: usize,
    pub alpha: usize,
    /// Chain position, 1-based.
    pub m: usize,
    /// Extension coordinate, `0..deg p`.
    pub k: usize,
}

/// Placement of one block inside a canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSlot {
    pub p: IrreduciblePoly,
    pub n: usize,
    pub alpha: usize,
    pub offset: usize,
}

impl BlockSlot {
    pub fn size(&self) -> usize {
        self.n * self.p.degree()
    }

    /// Coordinate of `e^{m,k}` within the whole form.
    pub fn coordinate(&self, m: usize, k: usize) -> usize {
        self.offset + (m - 1) * self.p.degree() + k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanForm {
    pub matrix: Matrix,
    pub aleph: MultiplicityFunction,
    pub convention: Convention,
    pub index: Vec<BlockIndex>,
    pub slots: Vec<BlockSlot>,
}

impl JordanForm {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn slot(&self, p: &IrreduciblePoly, n: usize, alpha: usize) -> Option<&BlockSlot> {
        self.slots
            .iter()
            .find(|s| s.p == *p && s.n == n && s.alpha == alpha)
    }

    /// `x_p` acting on every `p`-block, zero elsewhere. This is the action
    /// of the generator of `F_p` in the adapted basis.
    pub fn fp_generator(&self, p: &IrreduciblePoly) -> Result<Matrix> {
        let x = companion(p, self.convention)?.matrix;
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for s in self.slots.iter().filter(|s| s.p == *p) {
            let block = Matrix::identity(s.n).kron(&x);
            out.set_block(s.offset, s.offset, &block);
        }
        Ok(out)
    }

    /// The shift `N` on every `p`-block, zero elsewhere.
    pub fn chain_shift(&self, p: &IrreduciblePoly) -> Matrix {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for s in self.slots.iter().filter(|s| s.p == *p) {
            let block = Matrix::shift(s.n).kron(&Matrix::identity(s.p.degree()));
            out.set_block(s.offset, s.offset, &block);
        }
        out
    }

    /// Row/column cut positions between `x_p`-sized sub-blocks, for
    /// partitioned display.
    pub fn cuts(&self) -> Vec<usize> {
        self.slots
            .iter()
            .flat_map(|s| (0..s.n).map(move |m| s.offset + m * s.p.degree()))
            .filter(|&c| c > 0)
            .collect()
    }
}

/// `J(p, n) = id_n ⊗ x_p + N_n ⊗ id_d`.
pub fn jordan_block(p: &IrreduciblePoly, n: usize, conv: Convention) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("block length must be at least 1".into()));
    }
    let x = companion(p, conv)?.matrix;
    let d = p.degree();
    Ok(&Matrix::identity(n).kron(&x) + &Matrix::shift(n).kron(&Matrix::identity(d)))
}

/// Block-diagonal sum of `J(p, n)` in exactly the given order.
pub fn assemble(blocks: &[(IrreduciblePoly, usize)], conv: Convention) -> Result<Matrix> {
    let mats = blocks
        .iter()
        .map(|(p, n)| jordan_block(p, *n, conv))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::direct_sum(&mats))
}

/// `J(ℵ)` with its coordinate labels.
pub fn canonical_form(aleph: &MultiplicityFunction, conv: Convention) -> Result<JordanForm> {
    if aleph.is_zero() {
        return Err(Error::ZeroMultiplicity);
    }
    let mut slots = Vec::new();
    let mut index = Vec::new();
    let mut offset = 0;
    for b in aleph.blocks() {
        let d = b.p.degree();
        for m in 1..=b.n {
            for k in 0..d {
                index.push(BlockIndex {
                    p: b.p.clone(),
                    n: b.n,
                    alpha: b.alpha,
                    m,
                    k,
                });
            }
        }
        slots.push(BlockSlot {
            p: b.p.clone(),
            n: b.n,
            alpha: b.alpha,
            offset,
        });
        offset += b.n * d;
    }
    let pairs: Vec<(IrreduciblePoly, usize)> = slots.iter().map(|s| (s.p.clone(), s.n)).collect();
    Ok(JordanForm {
        matrix: assemble(&pairs, conv)?,
        aleph: aleph.clone(),
        convention: conv,
        index,
        slots,
    })
}

fn columns_matrix(rows: usize, vectors: &[Vec<Rational>]) -> Matrix {
    if vectors.is_empty() {
        Matrix::zeros(rows, 0)
    } else {
        Matrix::from_columns(rows, vectors)
    }
}

/// Kernels of `P^0, P^1, …, P^(e+1)`.
fn kernel_tower(pm: &Matrix, e: usize) -> Vec<Vec<Vec<Rational>>> {
    let n = pm.rows();
    let mut out = vec![Vec::new()];
    let mut power = Matrix::identity(n);
    for _ in 0..=e {
        power = &power * pm;
        out.push(crate::exactfield::kernel(&power));
    }
    out
}

/// `ℵ_T` from kernel dimensions of powers of `p(T)`.
///
/// With `q_j = dim ker p(T)^j - dim p(T) ker p(T)^(j+1)`, the count of
/// blocks of length `n` is `(q_n - q_(n-1)) / deg p`.
pub fn multiplicity_of(t: &Matrix, hints: &[IrreduciblePoly]) -> Result<MultiplicityFunction> {
    let size = t.require_square()?;
    let mut aleph = MultiplicityFunction::new();
    if size == 0 {
        return Ok(aleph);
    }
    for (p, e) in factor_with_hints(&minimal_polynomial(t)?, hints)? {
        let e = e as usize;
        let pm = t.eval_poly(p.poly());
        let kernels = kernel_tower(&pm, e);
        let q: Vec<usize> = (0..=e)
            .map(|j| {
                let image = &pm * &columns_matrix(size, &kernels[j + 1]);
                kernels[j].len() - image.rank()
            })
            .collect();
        let d = p.degree();
        for n in 1..=e {
            let diff = q[n] - q[n - 1];
            debug_assert_eq!(diff % d, 0);
            aleph.add(p.clone(), n, diff / d)?;
        }
    }
    debug_assert_eq!(aleph.dim(), size);
    Ok(aleph)
}

/// Krylov matrix with columns `v, A v, …, A^(len-1) v`.
fn krylov(a: &Matrix, v: &[Rational], len: usize) -> Matrix {
    let mut cols = Vec::with_capacity(len);
    let mut cur = v.to_vec();
    for _ in 0..len {
        let next = a.mul_vec(&cur);
        cols.push(cur);
        cur = next;
    }
    columns_matrix(a.rows(), &cols)
}

/// `(S, J)` with `S·T·S⁻¹ = J`, in the standard convention.
pub fn similarity_transform(t: &Matrix, hints: &[IrreduciblePoly]) -> Result<(Matrix, JordanForm)> {
    similarity_transform_with(t, hints, Convention::Standard)
}

/// `(S, J)` with `S·T·S⁻¹ = J` and `J` built in the given convention.
///
/// For every spectrum element `p` and every length `n`, generators are
/// picked greedily from a kernel basis of `p(T)^n` outside
/// `ker p(T)^(n-1) + p(T) ker p(T)^(n+1)` and the `F_p`-span of earlier
/// picks. Each generator `v` is cyclic of order `p^n`, so the Krylov
/// matrices of `v` under `T` and of the top chain vector under `J(p, n)`
/// determine the block of `S⁻¹`.
pub fn similarity_transform_with(
    t: &Matrix,
    hints: &[IrreduciblePoly],
    conv: Convention,
) -> Result<(Matrix, JordanForm)> {
    let size = t.require_square()?;
    if size == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    let aleph = multiplicity_of(t, hints)?;
    let form = canonical_form(&aleph, conv)?;
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(size);

    let mut generators: BTreeMap<(IrreduciblePoly, usize), Vec<Vec<Rational>>> = BTreeMap::new();
    for p in aleph.supp() {
        let d = p.degree();
        let e = aleph.entries().filter(|(q, _, _)| **q == p).map(|(_, n, _)| n).max().expect("in support");
        let pm = t.eval_poly(p.poly());
        let kernels = kernel_tower(&pm, e);
        for n in (1..=e).rev() {
            let want = aleph.get(&p, n);
            if want == 0 {
                continue;
            }
            let mut modulo = Subspace::spanned_by(size, &kernels[n - 1]);
            for v in &kernels[n + 1] {
                modulo.insert(&pm.mul_vec(v));
            }
            let mut picked = Vec::new();
            for w in &kernels[n] {
                if picked.len() == want {
                    break;
                }
                if modulo.contains(w) {
                    continue;
                }
                let mut cur = w.clone();
                for _ in 0..d {
                    modulo.insert(&cur);
                    cur = t.mul_vec(&cur);
                }
                picked.push(w.clone());
            }
            if picked.len() != want {
                return Err(Error::InvalidArgument("chain construction failed".into()));
            }
            generators.insert((p.clone(), n), picked);
        }
    }

    for slot in &form.slots {
        let len = slot.size();
        let jb = jordan_block(&slot.p, slot.n, conv)?;
        let mut top = vec![Rational::zero(); len];
        top[(slot.n - 1) * slot.p.degree()] = Rational::one();
        let kj = krylov(&jb, &top, len);
        let v = &generators[&(slot.p.clone(), slot.n)][slot.alpha];
        let kt = krylov(t, v, len);
        let phi = &kt * &kj.inverse()?;
        columns.extend(phi.columns());
    }
    let s_inv = Matrix::from_columns(size, &columns);
    let s = s_inv.inverse()?;
    if &(&s * t) * &s_inv != form.matrix {
        return Err(Error::InvalidArgument("similarity check failed".into()));
    }
    Ok((s, form))
}

/// Key of one coefficient `μ_p(n, β; k, α, shift)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MuKey {
    pub p: IrreduciblePoly,
    pub n: usize,
    pub beta: usize,
    pub k: usize,
    pub alpha: usize,
    pub shift: usize,
}

/// Data describing an invariant subspace of a canonical form.
///
/// Each coefficient is an element of `F_p`, given as a residue polynomial
/// in `x_p`; absent keys are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantSubspaceSpec {
    pub beth: MultiplicityFunction,
    pub mu: BTreeMap<MuKey, Polynomial>,
}

impl InvariantSubspaceSpec {
    pub fn new(beth: MultiplicityFunction) -> Self {
        InvariantSubspaceSpec {
            beth,
            mu: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, key: MuKey, value: Polynomial) -> &mut Self {
        self.mu.insert(key, value);
        self
    }

    /// The spec selecting every block of `aleph` as itself.
    pub fn identity(aleph: &MultiplicityFunction) -> Self {
        let mut spec = Self::new(aleph.clone());
        for b in aleph.blocks() {
            spec.set(
                MuKey {
                    p: b.p.clone(),
                    n: b.n,
                    beta: b.alpha,
                    k: b.n,
                    alpha: b.alpha,
                    shift: 0,
                },
                Polynomial::one(),
            );
        }
        spec
    }
}

fn add_into(acc: &mut [Rational], v: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += b;
        }
    }
}

/// Basis of the invariant subspace generated by the chains
/// `η^m_β(p, n) = Σ μ_p(n, β; k, α, m - l) e_α^l(p, k)`.
///
/// The returned vectors are `x_p^j η^m` for `j < deg p`, grouped by chain.
/// The chain identities `N η^m = η^(m-1)`, `N η^1 = 0`, independence and
/// invariance are all checked.
pub fn invariant_subspace_from(
    form: &JordanForm,
    spec: &InvariantSubspaceSpec,
) -> Result<Vec<Vec<Rational>>> {
    let dim = form.dim();
    for key in spec.mu.keys() {
        if key.shift >= key.n || form.slot(&key.p, key.k, key.alpha).is_none() {
            return Err(Error::InvalidSubspaceSpec(format!(
                "coefficient ({}, {}, {}; {}, {}, {}) does not fit the form",
                key.p, key.n, key.beta, key.k, key.alpha, key.shift
            )));
        }
    }
    let mut out = Vec::new();
    for chain in spec.beth.blocks() {
        let (p, n, beta) = (&chain.p, chain.n, chain.alpha);
        let d = p.degree();
        let xp = form.fp_generator(p)?;
        let shift_op = form.chain_shift(p);
        let coeff = |k: usize, alpha: usize, s: usize| {
            spec.mu.get(&MuKey {
                p: p.clone(),
                n,
                beta,
                k,
                alpha,
                shift: s,
            })
        };
        let anchored = form.slots.iter().any(|s| {
            s.p == *p && s.n >= n && coeff(s.n, s.alpha, 0).is_some_and(|v| v.rem(p.poly()).is_ok_and(|r| !r.is_zero()))
        });
        if !anchored {
            return Err(Error::InvalidSubspaceSpec(format!(
                "no nonzero leading coefficient for chain ({p}, {n}, {beta})"
            )));
        }
        let mut etas: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for m in 1..=n {
            let mut eta = vec![Rational::zero(); dim];
            for slot in form.slots.iter().filter(|s| s.p == *p) {
                for l in 1..=slot.n.min(m) {
                    let Some(r) = coeff(slot.n, slot.alpha, m - l) else {
                        continue;
                    };
                    let mut e = vec![Rational::zero(); dim];
                    e[slot.coordinate(l, 0)] = Rational::one();
                    add_into(&mut eta, &xp.eval_poly(r).mul_vec(&e));
                }
            }
            etas.push(eta);
        }
        for m in 0..n {
            let down = shift_op.mul_vec(&etas[m]);
            let ok = if m == 0 {
                down.iter().all(Zero::is_zero)
            } else {
                down == etas[m - 1]
            };
            if !ok {
                return Err(Error::InvalidSubspaceSpec(format!(
                    "chain ({p}, {n}, {beta}) breaks at position {}",
                    m + 1
                )));
            }
        }
        for eta in etas {
            let mut cur = eta;
            for _ in 0..d {
                let next = xp.mul_vec(&cur);
                out.push(cur);
                cur = next;
            }
        }
    }
    if !independent(&out, dim) {
        return Err(Error::DependentVectors);
    }
    let span = Subspace::spanned_by(dim, &out);
    if out.iter().any(|w| !span.contains(&form.matrix.mul_vec(w))) {
        return Err(Error::InvalidSubspaceSpec("span is not invariant".into()));
    }
    Ok(out)
}

/// `ℵ` of `T` restricted to `span W`, or `None` when `T W ⊄ span W`.
pub fn check_invariant_and_restrict(
    t: &Matrix,
    w: &[Vec<Rational>],
    hints: &[IrreduciblePoly],
) -> Result<Option<MultiplicityFunction>> {
    let size = t.require_square()?;
    if let Some(v) = w.iter().find(|v| v.len() != size) {
        return Err(Error::mismatch(size, v.len()));
    }
    if !independent(w, size) {
        return Err(Error::DependentVectors);
    }
    if w.is_empty() {
        return Ok(Some(MultiplicityFunction::new()));
    }
    let basis = Matrix::from_columns(size, w);
    let mut restricted = Matrix::zeros(w.len(), w.len());
    for (j, v) in w.iter().enumerate() {
        match solve_linear(&basis, &t.mul_vec(v))? {
            None => return Ok(None),
            Some(sol) => {
                for (i, x) in sol.particular.into_iter().enumerate() {
                    restricted[(i, j)] = x;
                }
            }
        }
    }
    multiplicity_of(&restricted, hints).map(Some)
}

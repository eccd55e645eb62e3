//! Multiplicity functions: finite maps `(p, n) ↦ ℵ(p, n)` counting Jordan
//! blocks, with the dilation action and its isotropy groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactfield::rational::rational_roots_of_power;
use crate::exactfield::Rational;
use crate::spectrum::IrreduciblePoly;

/// A multiplicity function with finite support and finite values.
///
/// Keys iterate in canonical block order: spectrum order on `p`, then `n`
/// ascending. Zero multiplicities are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiplicityFunction {
    entries: BTreeMap<(IrreduciblePoly, usize), usize>,
}

/// One Jordan block of a multiplicity function, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockKey {
    pub p: IrreduciblePoly,
    pub n: usize,
    /// Position among the `ℵ(p, n)` copies, from 0.
    pub alpha: usize,
}

impl MultiplicityFunction {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from `(p, n, mult)` triples; repeated keys accumulate.
    pub fn from_entries(
        entries: impl IntoIterator<Item = (IrreduciblePoly, usize, usize)>,
    ) -> Result<Self> {
        let mut m = Self::new();
        for (p, n, mult) in entries {
            m.add(p, n, mult)?;
        }
        Ok(m)
    }

    /// Adds `mult` copies of `J(p, n)`.
    pub fn add(&mut self, p: IrreduciblePoly, n: usize, mult: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("block length must be at least 1".into()));
        }
        if mult > 0 {
            *self.entries.entry((p, n)).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn get(&self, p: &IrreduciblePoly, n: usize) -> usize {
        self.entries.get(&(p.clone(), n)).copied().unwrap_or(0)
    }

    /// `(p, n, ℵ(p, n))` in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&IrreduciblePoly, usize, usize)> {
        self.entries.iter().map(|((p, n), m)| (p, *n, *m))
    }

    /// Every block, with multiplicities expanded, in canonical order.
    pub fn blocks(&self) -> Vec<BlockKey> {
        self.entries()
            .flat_map(|(p, n, mult)| {
                (0..mult).map(move |alpha| BlockKey {
                    p: p.clone(),
                    n,
                    alpha,
                })
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ n·ℵ(p, n)·deg p`.
    pub fn dim(&self) -> usize {
        self.entries().map(|(p, n, m)| n * m * p.degree()).sum()
    }

    pub fn supp(&self) -> BTreeSet<IrreduciblePoly> {
        self.entries.keys().map(|(p, _)| p.clone()).collect()
    }

    /// True when the support is contained in `{X}`.
    pub fn supported_at_zero(&self) -> bool {
        self.entries.keys().all(|(p, _)| p.is_x())
    }

    /// The pushforward `[λ⋆ℵ](λ⋆p, n) = ℵ(p, n)`.
    pub fn star(&self, lambda: &Rational) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let mut out = Self::new();
        for (p, n, m) in self.entries() {
            out.add(p.star(lambda)?, n, m)?;
        }
        Ok(out)
    }

    /// Removes every `(p, n)` entry matching the predicate and returns them.
    pub fn split_off(&self, mut pred: impl FnMut(&IrreduciblePoly, usize) -> bool) -> (Self, Self) {
        let (mut taken, mut kept) = (Self::new(), Self::new());
        for ((p, n), m) in &self.entries {
            let target = if pred(p, *n) { &mut taken } else { &mut kept };
            target.entries.insert((p.clone(), *n), *m);
        }
        (taken, kept)
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).expect("digit") as usize])
        .collect()
}

impl fmt::Display for MultiplicityFunction {
    /// The shorthand `(m₁×p₁^n₁, …)`, e.g. `(1×(X^3 - 2)², 1×X¹)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries()
            .map(|(p, n, m)| {
                let shown = p.to_string();
                let base = if shown.contains(' ') || shown.starts_with('-') {
                    format!("({shown})")
                } else {
                    shown
                };
                format!("{m}×{base}{}", superscript(n))
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for MultiplicityFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiplicityFunction{self}")
    }
}

/// The isotropy group `Dil(ℵ) = {λ : λ⋆ℵ = ℵ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DilationGroup {
    /// Every nonzero scalar; happens exactly when the support is `{X}`.
    AllScalars,
    /// Listed elements, `1` first.
    Finite(Vec<Rational>),
}

impl DilationGroup {
    pub fn contains(&self, lambda: &Rational) -> bool {
        match self {
            DilationGroup::AllScalars => !lambda.is_zero(),
            DilationGroup::Finite(v) => v.contains(lambda),
        }
    }
}

pub fn dim_and_supp(aleph: &MultiplicityFunction) -> (usize, BTreeSet<IrreduciblePoly>) {
    (aleph.dim(), aleph.supp())
}

pub fn star_aleph(lambda: &Rational, aleph: &MultiplicityFunction) -> Result<MultiplicityFunction> {
    aleph.star(lambda)
}

/// Scalars `λ` that could carry `from` onto some support element of `to`:
/// roots of `λ^d = a₀(q)/a₀(p)` for one fixed `p ≠ X` in `from`.
fn candidate_scalars(from: &MultiplicityFunction, to: &MultiplicityFunction) -> Vec<Rational> {
    let Some(p) = from.supp().into_iter().find(|p| !p.is_x()) else {
        return Vec::new();
    };
    let d = p.degree();
    let a0 = p.poly().coeff(0);
    let mut out: Vec<Rational> = Vec::new();
    for q in to.supp().iter().filter(|q| q.degree() == d && !q.is_x()) {
        for lambda in rational_roots_of_power(&(q.poly().coeff(0) / &a0), d as u32) {
            if !out.contains(&lambda) {
                out.push(lambda);
            }
        }
    }
    // Positive first, then by size, so that witnesses are stable under
    // swapping the two arguments.
    out.sort_by(|a, b| {
        b.is_positive()
            .cmp(&a.is_positive())
            .then_with(|| a.abs().cmp(&b.abs()))
    });
    out
}

/// `Dil(ℵ)`; rejects the zero multiplicity function.
pub fn dilation_symmetries(aleph: &MultiplicityFunction) -> Result<DilationGroup> {
    if aleph.is_zero() {
        return Err(Error::ZeroMultiplicity);
    }
    if aleph.supported_at_zero() {
        return Ok(DilationGroup::AllScalars);
    }
    let mut found = Vec::new();
    for lambda in candidate_scalars(aleph, aleph) {
        if aleph.star(&lambda)? == *aleph {
            found.push(lambda);
        }
    }
    found.sort_by(|a, b| b.cmp(a));
    debug_assert!(found.first().is_some_and(One::is_one));
    Ok(DilationGroup::Finite(found))
}

/// Some `λ` with `λ⋆a1 = a2`, preferring a positive one.
pub fn projectively_equal(a1: &MultiplicityFunction, a2: &MultiplicityFunction) -> Option<Rational> {
    if a1.dim() != a2.dim() || a1.supp().len() != a2.supp().len() {
        return None;
    }
    if a1.supported_at_zero() || a2.supported_at_zero() {
        return (a1 == a2).then(Rational::one);
    }
    candidate_scalars(a1, a2)
        .into_iter()
        .find(|lambda| a1.star(lambda).is_ok_and(|s| s == *a2))
}

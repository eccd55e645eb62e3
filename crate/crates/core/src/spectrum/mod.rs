//! The spectrum of Q: monic irreducible polynomials, the dilation action
//! `λ⋆P`, companion matrices and minimal polynomials.

mod factor;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactfield::rational::{int, pow, rational_roots_of_power, sign};
use crate::exactfield::{row_reduce, Matrix, Polynomial, Rational};

pub use factor::{factor_with_hints, rational_roots};

/// How irreducibility of a spectrum element was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certification {
    /// Degree at most 3 and no rational root.
    Proven,
    /// Asserted by the caller.
    Hinted,
}

/// A monic irreducible polynomial over Q.
///
/// Equality, hashing and ordering ignore the certification. The order is
/// the canonical block order: higher degree first, then coefficients
/// compared lexicographically from the constant term up.
#[derive(Clone)]
pub struct IrreduciblePoly {
    poly: Polynomial,
    certification: Certification,
}

impl IrreduciblePoly {
    /// Certifies `p` autonomously; only degrees 1 to 3 can be proven.
    pub fn new(p: Polynomial) -> Result<Self> {
        let d = check_monic(&p)?;
        if d > 3 {
            return Err(Error::NeedsHint(p.to_string()));
        }
        if d > 1 && !rational_roots(&p).is_empty() {
            return Err(Error::Reducible(p.to_string()));
        }
        Ok(IrreduciblePoly {
            poly: p,
            certification: Certification::Proven,
        })
    }

    /// Accepts `p` on the caller's word. Low degrees are still checked and
    /// come back `Proven`.
    pub fn hinted(p: Polynomial) -> Result<Self> {
        if check_monic(&p)? <= 3 {
            return Self::new(p);
        }
        Ok(IrreduciblePoly {
            poly: p,
            certification: Certification::Hinted,
        })
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self::linear(&Rational::zero())
    }

    /// `X - r`.
    pub fn linear(r: &Rational) -> Self {
        IrreduciblePoly {
            poly: Polynomial::linear(r),
            certification: Certification::Proven,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(Polynomial::parse(s)?)
    }

    pub(crate) fn from_trusted(poly: Polynomial, certification: Certification) -> Self {
        IrreduciblePoly {
            poly,
            certification,
        }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn certification(&self) -> Certification {
        self.certification
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("nonzero")
    }

    pub fn is_x(&self) -> bool {
        self.degree() == 1 && self.poly.coeff(0).is_zero()
    }

    /// `λ⋆p`, again monic irreducible of the same degree.
    pub fn star(&self, lambda: &Rational) -> Result<Self> {
        Ok(IrreduciblePoly {
            poly: star_poly(lambda, &self.poly)?,
            certification: self.certification,
        })
    }
}

fn check_monic(p: &Polynomial) -> Result<usize> {
    match p.degree() {
        Some(d) if d >= 1 && p.is_monic() => Ok(d),
        _ => Err(Error::NotMonic(p.to_string())),
    }
}

impl PartialEq for IrreduciblePoly {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl Eq for IrreduciblePoly {}

impl Hash for IrreduciblePoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.poly.hash(state);
    }
}

impl Ord for IrreduciblePoly {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| self.poly.lex_cmp(&other.poly))
    }
}

impl PartialOrd for IrreduciblePoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IrreduciblePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Debug for IrreduciblePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IrreduciblePoly({}, {:?})", self.poly, self.certification)
    }
}

/// Choice of matrix realization for roots of quadratics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    /// ε = 1: the standard companion form.
    #[default]
    Standard,
    /// ε = 0: the rotation-scaling form `[[a, -b], [b, a]]` for
    /// `(X - a)² + b²`.
    Real,
}

impl Convention {
    pub fn from_epsilon(epsilon: u8) -> Result<Self> {
        match epsilon {
            1 => Ok(Convention::Standard),
            0 => Ok(Convention::Real),
            e => Err(Error::InvalidArgument(format!("epsilon must be 0 or 1, got {e}"))),
        }
    }

    pub fn epsilon(self) -> u8 {
        match self {
            Convention::Standard => 1,
            Convention::Real => 0,
        }
    }

    /// `λ|λ|^(ε-1)`: `λ` itself for ε = 1 and its sign for ε = 0.
    pub fn dilation_scalar(self, lambda: &Rational) -> Rational {
        match self {
            Convention::Standard => lambda.clone(),
            Convention::Real => sign(lambda),
        }
    }
}

/// The matrix `x_p` of a spectrum element under a convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionMatrix {
    pub matrix: Matrix,
    pub source: IrreduciblePoly,
    pub convention: Convention,
}

/// `[λ⋆P](X) = λ^deg P · P(X/λ)`; coefficient `k` is scaled by `λ^(deg P - k)`.
pub fn star_poly(lambda: &Rational, p: &Polynomial) -> Result<Polynomial> {
    if lambda.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let Some(d) = p.degree() else {
        return Ok(Polynomial::zero());
    };
    Ok(Polynomial::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, a)| a * pow(lambda, (d - k) as i64))
            .collect(),
    ))
}

/// `(a, b)` with `p = (X - a)² + b²` and `b > 0`, when `b` is rational.
pub fn rotation_parameters(p: &IrreduciblePoly) -> Result<(Rational, Rational)> {
    let unavailable = |reason: &str| Error::ConventionUnavailable {
        poly: p.to_string(),
        reason: reason.to_string(),
    };
    if p.degree() != 2 {
        return Err(unavailable("the rotation form exists only for quadratics"));
    }
    let a = -p.poly.coeff(1) / int(2);
    let b2 = p.poly.coeff(0) - &a * &a;
    let b = rational_roots_of_power(&b2, 2)
        .into_iter()
        .find(Signed::is_positive)
        .ok_or_else(|| unavailable("b² has no rational square root"))?;
    Ok((a, b))
}

/// The companion matrix `x_p`. Degree-one polynomials `X + a₀` give `(-a₀)`
/// under either convention.
pub fn companion(p: &IrreduciblePoly, conv: Convention) -> Result<CompanionMatrix> {
    let d = p.degree();
    let matrix = if d == 1 {
        Matrix::from_rows(vec![vec![-p.poly.coeff(0)]])?
    } else if conv == Convention::Real {
        let (a, b) = rotation_parameters(p)?;
        Matrix::from_rows(vec![vec![a.clone(), -b.clone()], vec![b, a]])?
    } else {
        let mut m = Matrix::zeros(d, d);
        for i in 1..d {
            m[(i, i - 1)] = Rational::one();
        }
        for i in 0..d {
            m[(i, d - 1)] = -p.poly.coeff(i);
        }
        m
    };
    Ok(CompanionMatrix {
        matrix,
        source: p.clone(),
        convention: conv,
    })
}

/// Lowest-degree monic `P` with `P(T) = 0`, from the first linear
/// dependence among `I, T, T², …`.
pub fn minimal_polynomial(t: &Matrix) -> Result<Polynomial> {
    let n = t.require_square()?;
    let mut columns = Vec::with_capacity(n + 1);
    let mut power = Matrix::identity(n);
    for _ in 0..=n {
        columns.push(power.vec());
        power = &power * t;
    }
    let red = row_reduce(&Matrix::from_columns(n * n, &columns));
    let first_free = red.free_columns()[0];
    let mut coeffs = vec![Rational::zero(); first_free + 1];
    coeffs[first_free] = Rational::one();
    for (r, &p) in red.pivots.iter().enumerate().take_while(|(_, &p)| p < first_free) {
        coeffs[p] = -red.rref[(r, first_free)].clone();
    }
    Ok(Polynomial::new(coeffs))
}

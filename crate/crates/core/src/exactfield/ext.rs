//! Elements of a simple extension `Q[X]/(p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Polynomial;
use crate::error::{Error, Result};

/// A residue class modulo a monic modulus `p`, stored reduced
/// (`deg residue < deg p`).
///
/// Irreducibility of the modulus is the caller's promise; it is only
/// detected, as [`Error::InvalidModulus`], when an inverse fails to exist
/// for a nonzero residue.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElement {
    residue: Polynomial,
    modulus: Polynomial,
}

impl ExtElement {
    pub fn new(residue: Polynomial, modulus: Polynomial) -> Result<Self> {
        if !modulus.is_monic() || modulus.degree() == Some(0) {
            return Err(Error::NotMonic(modulus.to_string()));
        }
        let residue = residue.rem(&modulus)?;
        Ok(ExtElement { residue, modulus })
    }

    /// The class of `X`, i.e. the root `x_p`.
    pub fn generator(modulus: Polynomial) -> Result<Self> {
        Self::new(Polynomial::x(), modulus)
    }

    pub fn one(modulus: Polynomial) -> Result<Self> {
        Self::new(Polynomial::one(), modulus)
    }

    pub fn residue(&self) -> &Polynomial {
        &self.residue
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    fn same_field(&self, other: &ExtElement) {
        assert_eq!(
            self.modulus, other.modulus,
            "arithmetic across different extension fields"
        );
    }

    fn reduced(&self, residue: Polynomial) -> ExtElement {
        ExtElement {
            residue: residue.rem(&self.modulus).expect("modulus is nonzero"),
            modulus: self.modulus.clone(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(&self) -> Result<ExtElement> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let (g, s, _) = self.residue.ext_gcd(&self.modulus);
        if g != Polynomial::one() {
            return Err(Error::InvalidModulus(self.modulus.to_string()));
        }
        Ok(self.reduced(s))
    }
}

impl Add for &ExtElement {
    type Output = ExtElement;
    fn add(self, rhs: &ExtElement) -> ExtElement {
        self.same_field(rhs);
        self.reduced(&self.residue + &rhs.residue)
    }
}

impl Sub for &ExtElement {
    type Output = ExtElement;
    fn sub(self, rhs: &ExtElement) -> ExtElement {
        self.same_field(rhs);
        self.reduced(&self.residue - &rhs.residue)
    }
}

impl Mul for &ExtElement {
    type Output = ExtElement;
    fn mul(self, rhs: &ExtElement) -> ExtElement {
        self.same_field(rhs);
        self.reduced(&self.residue * &rhs.residue)
    }
}

impl Neg for &ExtElement {
    type Output = ExtElement;
    fn neg(self) -> ExtElement {
        self.reduced(-&self.residue)
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self.residue, self.modulus)
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

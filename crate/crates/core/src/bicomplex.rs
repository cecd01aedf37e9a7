//! Bicomplex numbers `ξ = a₀ + i₁a₁ + i₂a₂ + i₁i₂a₃` with two commuting
//! imaginary units (`i₁² = i₂² = −1`, `(i₁i₂)² = +1`).
//!
//! The canonical storage is the four real coefficients. The `(z₁, z₂)` view,
//! with `ξ = z₁ + i₂z₂`, and the idempotent view `ξ = ξ₁e₁ + ξ₂e₂` are derived
//! on demand. Complex numbers here are always complex in `i₁`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative scale of the singularity test `|z₁² + z₂²| ≤ ε (1 + ‖ξ‖²)`.
pub const SINGULAR_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[repr(C)]
pub struct Bicomplex {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

/// The two idempotent components of a bicomplex number, elements of the
/// auxiliary complex spaces `A₁` and `A₂`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IdempotentPair {
    #[serde(with = "complex_pair")]
    pub xi1: Complex64,
    #[serde(with = "complex_pair")]
    pub xi2: Complex64,
}

impl IdempotentPair {
    pub const fn new(xi1: Complex64, xi2: Complex64) -> Self {
        Self { xi1, xi2 }
    }

    pub fn get(&self, component: Component) -> Complex64 {
        match component {
            Component::First => self.xi1,
            Component::Second => self.xi2,
        }
    }
}

/// Selects one of the two idempotent directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    First,
    Second,
}

impl Component {
    pub const BOTH: [Component; 2] = [Component::First, Component::Second];

    pub fn index(self) -> u8 {
        match self {
            Component::First => 1,
            Component::Second => 2,
        }
    }
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex::new_unchecked(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Bicomplex = Bicomplex::new_unchecked(1.0, 0.0, 0.0, 0.0);
    pub const I1: Bicomplex = Bicomplex::new_unchecked(0.0, 1.0, 0.0, 0.0);
    pub const I2: Bicomplex = Bicomplex::new_unchecked(0.0, 0.0, 1.0, 0.0);
    /// The hyperbolic unit `i₁i₂`.
    pub const J: Bicomplex = Bicomplex::new_unchecked(0.0, 0.0, 0.0, 1.0);
    /// `e₁ = (1 + i₁i₂)/2`.
    pub const E1: Bicomplex = Bicomplex::new_unchecked(0.5, 0.0, 0.0, 0.5);
    /// `e₂ = (1 − i₁i₂)/2`.
    pub const E2: Bicomplex = Bicomplex::new_unchecked(0.5, 0.0, 0.0, -0.5);

    /// Builds `a₀ + i₁a₁ + i₂a₂ + i₁i₂a₃`, rejecting non-finite coefficients.
    pub fn from_components(a0: f64, a1: f64, a2: f64, a3: f64) -> Result<Self> {
        if [a0, a1, a2, a3].iter().all(|v| v.is_finite()) {
            Ok(Self::new_unchecked(a0, a1, a2, a3))
        } else {
            Err(Error::InvalidArgument(format!(
                "bicomplex coefficients must be finite, got ({a0}, {a1}, {a2}, {a3})"
            )))
        }
    }

    pub const fn new_unchecked(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Self { a0, a1, a2, a3 }
    }

    pub const fn real(c: f64) -> Self {
        Self::new_unchecked(c, 0.0, 0.0, 0.0)
    }

    /// Embeds a complex number `x + i₁y`.
    pub const fn from_complex(z: Complex64) -> Self {
        Self::new_unchecked(z.re, z.im, 0.0, 0.0)
    }

    /// `ξ = z₁ + i₂z₂`.
    pub fn from_z(z1: Complex64, z2: Complex64) -> Self {
        Self::new_unchecked(z1.re, z1.im, z2.re, z2.im)
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    pub fn z1(&self) -> Complex64 {
        Complex64::new(self.a0, self.a1)
    }

    pub fn z2(&self) -> Complex64 {
        Complex64::new(self.a2, self.a3)
    }

    pub fn is_finite(&self) -> bool {
        self.coefficients().iter().all(|v| v.is_finite())
    }

    /// Projections `P₁(ξ) = z₁ − i₁z₂` and `P₂(ξ) = z₁ + i₁z₂`.
    pub fn to_idempotent(&self) -> IdempotentPair {
        IdempotentPair {
            xi1: Complex64::new(self.a0 + self.a3, self.a1 - self.a2),
            xi2: Complex64::new(self.a0 - self.a3, self.a1 + self.a2),
        }
    }

    /// Inverse of [`Bicomplex::to_idempotent`]: `z₁ = (ξ₁+ξ₂)/2`, `z₂ = i₁(ξ₁−ξ₂)/2`.
    pub fn from_idempotent(p: IdempotentPair) -> Self {
        let z1 = (p.xi1 + p.xi2) * 0.5;
        let z2 = Complex64::i() * (p.xi1 - p.xi2) * 0.5;
        Self::from_z(z1, z2)
    }

    pub fn projection(&self, component: Component) -> Complex64 {
        self.to_idempotent().get(component)
    }

    /// `√(a₀² + a₁² + a₂² + a₃²)`.
    pub fn norm(&self) -> f64 {
        let [a0, a1, a2, a3] = self.coefficients();
        (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3).sqrt()
    }

    /// `z₁² + z₂²`, which equals the product `ξ₁ξ₂` of the idempotent components.
    pub fn singular_measure(&self) -> Complex64 {
        let (z1, z2) = (self.z1(), self.z2());
        z1 * z1 + z2 * z2
    }

    /// Membership in the singular set `O₂`, tested as
    /// `|z₁² + z₂²| ≤ 1e−12 · (1 + ‖ξ‖²)`.
    pub fn is_singular(&self) -> bool {
        let n = self.norm();
        self.singular_measure().norm() <= SINGULAR_EPS * (1.0 + n * n)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_singular() {
            return Err(Error::Singular(self.to_string()));
        }
        let p = self.to_idempotent();
        Ok(Self::from_idempotent(IdempotentPair::new(
            p.xi1.inv(),
            p.xi2.inv(),
        )))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.inverse()?)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new_unchecked(self.a0 * c, self.a1 * c, self.a2 * c, self.a3 * c)
    }

    /// Largest magnitude among the `i₁`, `i₂` and `i₁i₂` coefficients.
    pub fn non_real_defect(&self) -> f64 {
        self.a1.abs().max(self.a2.abs()).max(self.a3.abs())
    }

    /// Coefficientwise comparison with a tolerance relative to `1 + max(‖x‖, ‖y‖)`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let scale = 1.0 + self.norm().max(other.norm());
        self.coefficients()
            .iter()
            .zip(other.coefficients())
            .all(|(a, b)| (a - b).abs() <= tol * scale)
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, rhs: Self) -> Self {
        Self::new_unchecked(
            self.a0 + rhs.a0,
            self.a1 + rhs.a1,
            self.a2 + rhs.a2,
            self.a3 + rhs.a3,
        )
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, rhs: Self) -> Self {
        Self::new_unchecked(
            self.a0 - rhs.a0,
            self.a1 - rhs.a1,
            self.a2 - rhs.a2,
            self.a3 - rhs.a3,
        )
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    /// `(z₁ + i₂z₂)(w₁ + i₂w₂) = (z₁w₁ − z₂w₂) + i₂(z₁w₂ + z₂w₁)`.
    fn mul(self, rhs: Self) -> Self {
        let (z1, z2) = (self.z1(), self.z2());
        let (w1, w2) = (rhs.z1(), rhs.z2());
        Self::from_z(z1 * w1 - z2 * w2, z1 * w2 + z2 * w1)
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a0, self.a1, self.a2, self.a3)
    }
}

/// Parses the `"a0,a1,a2,a3"` text form.
impl FromStr for Bicomplex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "expected four comma-separated reals \"a0,a1,a2,a3\", got `{s}`"
            )));
        }
        let mut a = [0.0; 4];
        for (slot, part) in a.iter_mut().zip(&parts) {
            *slot = part
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("`{part}`: {e}")))?;
        }
        Self::from_components(a[0], a[1], a[2], a[3])
    }
}

/// Serializes a complex number as `[re, im]`.
pub(crate) mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

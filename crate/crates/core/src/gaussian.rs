//! Exact arithmetic over the Gaussian integers ℤ[i]: scalars, 2×2 matrices,
//! points of the projective line over ℚ(i) and the Möbius action.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Gaussian integer `re + im·i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

/// Floor division for signed integers with a positive divisor.
pub(crate) fn floor_div(n: i64, d: i64) -> i64 {
    debug_assert!(d > 0);
    let q = n / d;
    if n % d != 0 && n < 0 {
        q - 1
    } else {
        q
    }
}

/// Nearest integer to `n / d` (`d > 0`), ties rounded toward −∞.
fn round_half_down(n: i128, d: i128) -> i128 {
    // ceil((2n - d) / 2d)
    let num = 2 * n - d;
    let den = 2 * d;
    let q = num / den;
    if num % den != 0 && num > 0 {
        q + 1
    } else {
        q
    }
}

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt { re: 0, im: 0 };
    pub const ONE: GaussianInt = GaussianInt { re: 1, im: 0 };
    pub const I: GaussianInt = GaussianInt { re: 0, im: 1 };

    /// The four units in the order `1, i, −1, −i`.
    pub const UNITS: [GaussianInt; 4] = [
        GaussianInt { re: 1, im: 0 },
        GaussianInt { re: 0, im: 1 },
        GaussianInt { re: -1, im: 0 },
        GaussianInt { re: 0, im: -1 },
    ];

    pub const fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    pub const fn from_int(n: i64) -> Self {
        GaussianInt { re: n, im: 0 }
    }

    pub fn conj(self) -> Self {
        GaussianInt::new(self.re, -self.im)
    }

    /// The field norm `re² + im²`.
    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// Multiplicative inverse of a unit.
    pub fn unit_inverse(self) -> Result<Self> {
        if self.is_unit() {
            Ok(self.conj())
        } else {
            Err(Error::NotUnit(self))
        }
    }

    pub fn mul_i(self) -> Self {
        GaussianInt::new(-self.im, self.re)
    }

    /// True if the associate lies in the canonical quadrant `re > 0, im ≥ 0`.
    pub fn is_canonical(self) -> bool {
        self.re > 0 && self.im >= 0
    }

    /// The unit `ε` such that `ε·self` is canonical. Zero maps to `1`.
    pub fn canonical_unit(self) -> GaussianInt {
        if self.is_zero() {
            return GaussianInt::ONE;
        }
        for u in GaussianInt::UNITS {
            if (u * self).is_canonical() {
                return u;
            }
        }
        unreachable!("every nonzero Gaussian integer has a canonical associate")
    }

    /// The associate in the quadrant `re > 0, im ≥ 0` (zero stays zero).
    pub fn canonical(self) -> Self {
        self.canonical_unit() * self
    }

    /// Quotient `self / rhs` rounded componentwise to the nearest integer.
    pub fn div_round(self, rhs: GaussianInt) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self * rhs.conj();
        let d = rhs.norm() as i128;
        Ok(GaussianInt::new(round_half_down(num.re as i128, d) as i64, round_half_down(num.im as i128, d) as i64))
    }

    /// Exact quotient, if `rhs` divides `self`.
    pub fn div_exact(self, rhs: GaussianInt) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let num = self * rhs.conj();
        let d = rhs.norm();
        if num.re % d == 0 && num.im % d == 0 {
            Some(GaussianInt::new(num.re / d, num.im / d))
        } else {
            None
        }
    }

    pub fn divides(self, other: GaussianInt) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    pub fn rem_round(self, rhs: GaussianInt) -> Result<Self> {
        let q = self.div_round(rhs)?;
        Ok(self - q * rhs)
    }

    /// True iff `self ≡ 0 (mod 1+i)`, i.e. `re + im` is even.
    pub fn divisible_by_one_plus_i(self) -> bool {
        (self.re + self.im).rem_euclid(2) == 0
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (r, 0) => write!(f, "{r}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, m) => write!(f, "{m}i"),
            (r, 1) => write!(f, "{r}+i"),
            (r, -1) => write!(f, "{r}-i"),
            (r, m) if m > 0 => write!(f, "{r}+{m}i"),
            (r, m) => write!(f, "{r}{m}i"),
        }
    }
}

impl std::str::FromStr for GaussianInt {
    type Err = Error;

    /// Parses forms such as `3`, `-i`, `2i`, `3+2i`, `-1-4i`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("not a Gaussian integer: {s:?}"));
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return t.parse::<i64>().map(GaussianInt::from_int).map_err(|_| bad());
        };
        // split point: last '+' or '-' that is not the leading sign
        let split = body.char_indices().rev().find(|&(k, c)| k > 0 && (c == '+' || c == '-')).map(|(k, _)| k);
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let re = re_part.parse::<i64>().map_err(|_| bad())?;
        let im = match im_part {
            "" | "+" => 1,
            "-" => -1,
            p => p.parse::<i64>().map_err(|_| bad())?,
        };
        Ok(GaussianInt::new(re, im))
    }
}

impl From<i64> for GaussianInt {
    fn from(n: i64) -> Self {
        GaussianInt::from_int(n)
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: Self) -> Self {
        GaussianInt::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for GaussianInt {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: Self) -> Self {
        GaussianInt::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> Self {
        GaussianInt::new(-self.re, -self.im)
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: Self) -> Self {
        GaussianInt::new(self.re * rhs.re - self.im * rhs.im, self.re * rhs.im + self.im * rhs.re)
    }
}

impl Mul<i64> for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: i64) -> Self {
        GaussianInt::new(self.re * rhs, self.im * rhs)
    }
}

/// Shorthand constructor.
pub const fn gi(re: i64, im: i64) -> GaussianInt {
    GaussianInt::new(re, im)
}

pub fn is_unit(a: GaussianInt) -> bool {
    a.is_unit()
}

/// Greatest common divisor by the Euclidean algorithm, normalized to the
/// canonical associate.
pub fn gauss_gcd(a: GaussianInt, b: GaussianInt) -> Result<GaussianInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut x, mut y) = (a, b);
    while !y.is_zero() {
        let r = x.rem_round(y)?;
        x = y;
        y = r;
    }
    Ok(x.canonical())
}

/// A vector of ℤ[i]², written as a column `(x, y)`.
pub type GaussVec = [GaussianInt; 2];

/// Multiplies a vector by a scalar.
pub fn vec_scale(s: GaussianInt, v: GaussVec) -> GaussVec {
    [s * v[0], s * v[1]]
}

pub fn vec_add(a: GaussVec, b: GaussVec) -> GaussVec {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn vec_sub(a: GaussVec, b: GaussVec) -> GaussVec {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn vec_neg(a: GaussVec) -> GaussVec {
    [-a[0], -a[1]]
}

/// Determinant of the matrix with columns `a`, `b`.
pub fn det2(a: GaussVec, b: GaussVec) -> GaussianInt {
    a[0] * b[1] - a[1] * b[0]
}

/// Unit `ε` making the first nonzero coordinate of `v` canonical.
pub fn vec_canonical_unit(v: GaussVec) -> GaussianInt {
    if !v[0].is_zero() {
        v[0].canonical_unit()
    } else {
        v[1].canonical_unit()
    }
}

/// A point of ℙ¹(ℚ(i)) as the class of a primitive pair `(p, q)`; `(1, 0)` is ∞.
///
/// Construction always yields the canonical representative: coprime
/// coordinates with the first nonzero one in the quadrant `re > 0, im ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    p: GaussianInt,
    q: GaussianInt,
}

impl ProjectivePoint {
    pub const INFINITY: ProjectivePoint = ProjectivePoint { p: GaussianInt::ONE, q: GaussianInt::ZERO };

    pub fn new(p: GaussianInt, q: GaussianInt) -> Result<Self> {
        let g = gauss_gcd(p, q)?;
        let (p, q) = (p.div_exact(g).expect("gcd divides"), q.div_exact(g).expect("gcd divides"));
        let u = vec_canonical_unit([p, q]);
        Ok(ProjectivePoint { p: u * p, q: u * q })
    }

    pub fn p(&self) -> GaussianInt {
        self.p
    }

    pub fn q(&self) -> GaussianInt {
        self.q
    }

    pub fn as_vec(&self) -> GaussVec {
        [self.p, self.q]
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// A 2×2 Gaussian-integer matrix with columns `(alpha, beta)` and
/// `(gamma, delta)`, i.e. rows `(alpha gamma; beta delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussMatrix2 {
    pub alpha: GaussianInt,
    pub beta: GaussianInt,
    pub gamma: GaussianInt,
    pub delta: GaussianInt,
}

/// Coset of `PSL₂(ℤ[i])` inside `PGL₂(ℤ[i])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CosetClass {
    Psl,
    NonPsl,
}

impl GaussMatrix2 {
    pub const IDENTITY: GaussMatrix2 = GaussMatrix2 {
        alpha: GaussianInt::ONE,
        beta: GaussianInt::ZERO,
        gamma: GaussianInt::ZERO,
        delta: GaussianInt::ONE,
    };

    /// Builds the matrix `(r00 r01; r10 r11)` from its rows.
    pub const fn from_rows(r00: GaussianInt, r01: GaussianInt, r10: GaussianInt, r11: GaussianInt) -> Self {
        GaussMatrix2 { alpha: r00, gamma: r01, beta: r10, delta: r11 }
    }

    pub const fn from_columns(c0: GaussVec, c1: GaussVec) -> Self {
        GaussMatrix2 { alpha: c0[0], beta: c0[1], gamma: c1[0], delta: c1[1] }
    }

    pub fn col0(&self) -> GaussVec {
        [self.alpha, self.beta]
    }

    pub fn col1(&self) -> GaussVec {
        [self.gamma, self.delta]
    }

    pub fn det(&self) -> GaussianInt {
        self.alpha * self.delta - self.beta * self.gamma
    }

    pub fn has_unit_det(&self) -> bool {
        self.det().is_unit()
    }

    pub fn scale(&self, s: GaussianInt) -> Self {
        GaussMatrix2 { alpha: s * self.alpha, beta: s * self.beta, gamma: s * self.gamma, delta: s * self.delta }
    }

    pub fn mul(&self, rhs: &GaussMatrix2) -> GaussMatrix2 {
        GaussMatrix2::from_rows(
            self.alpha * rhs.alpha + self.gamma * rhs.beta,
            self.alpha * rhs.gamma + self.gamma * rhs.delta,
            self.beta * rhs.alpha + self.delta * rhs.beta,
            self.beta * rhs.gamma + self.delta * rhs.delta,
        )
    }

    pub fn apply(&self, v: GaussVec) -> GaussVec {
        [self.alpha * v[0] + self.gamma * v[1], self.beta * v[0] + self.delta * v[1]]
    }

    /// Exact inverse via the adjugate; requires a unit determinant.
    pub fn inverse(&self) -> Result<GaussMatrix2> {
        let d = self.det();
        let dinv = d.unit_inverse().map_err(|_| Error::NonUnitDeterminant(d))?;
        Ok(GaussMatrix2::from_rows(self.delta, -self.gamma, -self.beta, self.alpha).scale(dinv))
    }

    pub fn ensure_unit_det(&self) -> Result<()> {
        let d = self.det();
        if d.is_unit() {
            Ok(())
        } else {
            Err(Error::NonUnitDeterminant(d))
        }
    }

    /// Equality in `PGL₂(ℤ[i])`: equal up to a unit scalar.
    pub fn projectively_eq(&self, other: &GaussMatrix2) -> bool {
        GaussianInt::UNITS.iter().any(|&u| self.scale(u) == *other)
    }
}

impl fmt::Display for GaussMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.alpha, self.gamma, self.beta, self.delta)
    }
}

pub fn mat_mul(a: &GaussMatrix2, b: &GaussMatrix2) -> GaussMatrix2 {
    a.mul(b)
}

pub fn mat_det(m: &GaussMatrix2) -> GaussianInt {
    m.det()
}

pub fn mat_inverse(m: &GaussMatrix2) -> Result<GaussMatrix2> {
    m.inverse()
}

/// Möbius action `M·(p, q)ᵀ`, returned in canonical form.
pub fn mobius_apply(m: &GaussMatrix2, x: &ProjectivePoint) -> Result<ProjectivePoint> {
    m.ensure_unit_det()?;
    let [p, q] = m.apply(x.as_vec());
    ProjectivePoint::new(p, q)
}

/// `Psl` iff `det(M) ∈ {1, −1}`.
pub fn coset_class(m: &GaussMatrix2) -> Result<CosetClass> {
    m.ensure_unit_det()?;
    if m.det().im == 0 {
        Ok(CosetClass::Psl)
    } else {
        Ok(CosetClass::NonPsl)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force gcd: the divisor of largest norm common to both inputs.
    fn brute_gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt {
        let bound = a.norm().max(b.norm());
        let r = (bound as f64).sqrt() as i64 + 1;
        let mut best = GaussianInt::ONE;
        for x in -r..=r {
            for y in -r..=r {
                let d = gi(x, y);
                if d.is_zero() {
                    continue;
                }
                if d.divides(a) && d.divides(b) && d.norm() > best.norm() {
                    best = d;
                }
            }
        }
        best.canonical()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gauss_gcd(gi(5, 0), GaussianInt::ZERO).unwrap(), gi(5, 0));
        assert_eq!(brute_gcd(gi(1, 1), gi(1, -1)), gi(1, 1));
        assert_eq!(gauss_gcd(gi(1, 1), gi(1, -1)).unwrap(), gi(1, 1));
        assert_eq!(brute_gcd(gi(3, 2), gi(3, -2)), GaussianInt::ONE);
        assert_eq!(gauss_gcd(gi(3, 2), gi(3, -2)).unwrap(), GaussianInt::ONE);
        assert!(matches!(gauss_gcd(GaussianInt::ZERO, GaussianInt::ZERO), Err(Error::ZeroGcd)));
    }

    #[test]
    fn gcd_agrees_with_brute_force_small_norms() {
        for a in -6..=6 {
            for b in -6..=6 {
                for c in -4..=4 {
                    for d in -4..=4 {
                        let (x, y) = (gi(a, b), gi(c, d));
                        if x.is_zero() && y.is_zero() {
                            continue;
                        }
                        assert_eq!(gauss_gcd(x, y).unwrap(), brute_gcd(x, y), "{x} {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn units() {
        assert!(is_unit(gi(1, 0)));
        assert!(is_unit(gi(0, -1)));
        assert!(!is_unit(gi(1, 1)));
        assert!(!is_unit(GaussianInt::ZERO));
    }

    #[test]
    fn canonical_associate_is_unique() {
        for a in -5..=5 {
            for b in -5..=5 {
                let z = gi(a, b);
                if z.is_zero() {
                    continue;
                }
                let count = GaussianInt::UNITS.iter().filter(|&&u| (u * z).is_canonical()).count();
                assert_eq!(count, 1);
            }
        }
    }

    #[test]
    fn rounding_ties_go_down() {
        // (1+i)/2 = 0.5 + 0.5i rounds to 0
        assert_eq!(gi(1, 1).div_round(gi(2, 0)).unwrap(), GaussianInt::ZERO);
        // -0.5 rounds to -1
        assert_eq!(gi(-1, 0).div_round(gi(2, 0)).unwrap(), gi(-1, 0));
        assert_eq!(gi(3, 0).div_round(gi(5, 0)).unwrap(), gi(1, 0));
    }

    #[test]
    fn mobius_examples() {
        let x = ProjectivePoint::new(gi(3, 0), gi(2, 0)).unwrap();
        assert_eq!(mobius_apply(&GaussMatrix2::IDENTITY, &x).unwrap(), x);
        let m = GaussMatrix2::from_rows(gi(1, 0), gi(0, 0), gi(1, 0), gi(1, 0));
        let img = mobius_apply(&m, &ProjectivePoint::INFINITY).unwrap();
        assert_eq!((img.p(), img.q()), (gi(1, 0), gi(1, 0)));
        let m = GaussMatrix2::from_rows(gi(0, 0), gi(0, 1), gi(0, 1), gi(1, 0));
        let img = mobius_apply(&m, &ProjectivePoint::INFINITY).unwrap();
        assert_eq!((img.p(), img.q()), (gi(0, 0), gi(1, 0)));
        let bad = GaussMatrix2::from_rows(gi(2, 0), gi(0, 0), gi(0, 0), gi(1, 0));
        assert!(matches!(mobius_apply(&bad, &x), Err(Error::NonUnitDeterminant(_))));
    }

    #[test]
    fn coset_examples() {
        assert_eq!(coset_class(&GaussMatrix2::IDENTITY).unwrap(), CosetClass::Psl);
        let d = GaussMatrix2::from_rows(gi(0, 1), gi(0, 0), gi(0, 0), gi(1, 0));
        assert_eq!(coset_class(&d).unwrap(), CosetClass::NonPsl);
        let m = GaussMatrix2::from_rows(gi(-1, 0), gi(0, 1), gi(0, 1), gi(0, 0));
        assert_eq!(m.det(), GaussianInt::ONE);
        assert_eq!(coset_class(&m).unwrap(), CosetClass::Psl);
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(mat_det(&GaussMatrix2::IDENTITY), GaussianInt::ONE);
        let m = GaussMatrix2::from_columns([gi(3, 2), gi(3, -2)], [gi(5, 2), gi(4, -4)]);
        assert_eq!(mat_det(&m), GaussianInt::ONE);
        let m = GaussMatrix2::from_rows(gi(0, 0), gi(0, 1), gi(0, 1), gi(1, 0));
        let inv = mat_inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), GaussMatrix2::IDENTITY);
        let singular = GaussMatrix2::from_rows(gi(1, 0), gi(1, 0), gi(1, 0), gi(1, 0));
        assert!(mat_inverse(&singular).is_err());
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["3", "-i", "i", "2i", "3+2i", "-1-4i", "0", "7-i"] {
            let z: GaussianInt = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
        }
        assert_eq!("1 + i".parse::<GaussianInt>().unwrap(), gi(1, 1));
        assert!("1+".parse::<GaussianInt>().is_err());
        assert!("x".parse::<GaussianInt>().is_err());
    }
}

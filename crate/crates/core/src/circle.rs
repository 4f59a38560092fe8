//! Oriented Gaussian circles described by curvature `b`, co-curvature `bp`
//! and curvature-centre `z`, together with the Hermitian forms that produce
//! them from matrices.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{CosetClass, GaussMatrix2, GaussVec, GaussianInt, ProjectivePoint};
use crate::lax::{LaxLattice, Superbasis};

/// Exact rational used for Euclidean data.
pub type Q = Ratio<i128>;

/// An oriented circle (or line) with integer parameters.
///
/// The derived order is lexicographic on `(b, bp, re z, im z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Circle {
    pub b: i64,
    pub bp: i64,
    pub z: GaussianInt,
}

impl Circle {
    /// Validates `bp·b = N(z) − 1`, evenness of `b`, `bp` and mixed parity of `z`.
    pub fn new(b: i64, bp: i64, z: GaussianInt) -> Result<Circle> {
        let c = Circle { b, bp, z };
        if !c.is_valid() {
            return Err(Error::Parse(format!("({b}, {bp}, {z}) is not a Gaussian circle")));
        }
        Ok(c)
    }

    pub const fn new_unchecked(b: i64, bp: i64, z: GaussianInt) -> Circle {
        Circle { b, bp, z }
    }

    pub fn satisfies_norm_relation(&self) -> bool {
        self.bp * self.b == self.z.norm() - 1
    }

    pub fn has_gaussian_parity(&self) -> bool {
        self.b % 2 == 0 && self.bp % 2 == 0 && (self.z.re + self.z.im).rem_euclid(2) == 1
    }

    pub fn is_valid(&self) -> bool {
        self.satisfies_norm_relation() && self.has_gaussian_parity()
    }

    pub fn is_line(&self) -> bool {
        self.b == 0
    }

    /// Coset of the matrices producing this circle: `Psl` iff `re z` is even.
    pub fn coset(&self) -> CosetClass {
        if self.z.re.rem_euclid(2) == 0 {
            CosetClass::Psl
        } else {
            CosetClass::NonPsl
        }
    }

    /// Value of `b|p|² − 2 Re(p q̄ z̄) + bp|q|²`, zero iff `p/q` lies on the circle.
    pub fn power(&self, p: GaussianInt, q: GaussianInt) -> i128 {
        let pq = p * q.conj() * self.z.conj();
        self.b as i128 * p.norm() as i128 - 2 * pq.re as i128 + self.bp as i128 * q.norm() as i128
    }

    pub fn contains_point(&self, x: &ProjectivePoint) -> bool {
        self.power(x.p(), x.q()) == 0
    }

    /// Translates by the Gaussian integer `t`.
    pub fn translate(&self, t: GaussianInt) -> Circle {
        let zt = self.z * t.conj();
        Circle { b: self.b, bp: self.bp + 2 * zt.re + self.b * t.norm(), z: self.z + t * self.b }
    }
}

impl fmt::Display for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(b={}, bp={}, z={})", self.b, self.bp, self.z)
    }
}

/// Circle `M(ℝ)` with `ℝ` oriented rightward:
/// `b = 2 Im(β δ̄)`, `bp = 2 Im(α γ̄)`, `z = i(γ β̄ − α δ̄)`.
pub fn circle_from_matrix(m: &GaussMatrix2) -> Result<Circle> {
    m.ensure_unit_det()?;
    Ok(circle_from_columns(m.col0(), m.col1()))
}

fn circle_from_columns(c0: GaussVec, c1: GaussVec) -> Circle {
    let [alpha, beta] = c0;
    let [gamma, delta] = c1;
    let b = 2 * (beta * delta.conj()).im;
    let bp = 2 * (alpha * gamma.conj()).im;
    let z = GaussianInt::I * (gamma * beta.conj() - alpha * delta.conj());
    Circle { b, bp, z }
}

pub fn circle_from_lattice(l: &LaxLattice) -> Circle {
    circle_from_columns(l.u, l.v)
}

/// Reverses orientation.
pub fn reorient(c: &Circle) -> Circle {
    Circle { b: -c.b, bp: -c.bp, z: -c.z }
}

/// Hermitian form with matrix `(a, b; b̄, d)`, evaluated as `h(u, v) = Σ A_jk u_j v̄_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HermitianForm {
    pub a: i64,
    pub d: i64,
    pub b: GaussianInt,
}

impl HermitianForm {
    pub const ZERO: HermitianForm = HermitianForm { a: 0, d: 0, b: GaussianInt::ZERO };
    /// Yields the curvature.
    pub const CURVATURE: HermitianForm = HermitianForm { a: 0, d: 2, b: GaussianInt::ZERO };
    /// Yields the co-curvature.
    pub const COCURVATURE: HermitianForm = HermitianForm { a: 2, d: 0, b: GaussianInt::ZERO };
    /// Yields the real part of the curvature-centre.
    pub const CENTRE_RE: HermitianForm = HermitianForm { a: 0, d: 0, b: GaussianInt::ONE };
    /// Yields the imaginary part of the curvature-centre.
    pub const CENTRE_IM: HermitianForm = HermitianForm { a: 0, d: 0, b: GaussianInt::new(0, -1) };
}

pub fn herm_eval(h: &HermitianForm, u: GaussVec, v: GaussVec) -> GaussianInt {
    let (v0, v1) = (v[0].conj(), v[1].conj());
    u[0] * v0 * h.a + h.b * u[0] * v1 + h.b.conj() * u[1] * v0 + u[1] * v1 * h.d
}

/// Imaginary part of `h(u, v)`.
pub fn h_imag(h: &HermitianForm, u: GaussVec, v: GaussVec) -> i64 {
    herm_eval(h, u, v).im
}

/// Value of `H` at the kingdom vertex carrying lattice `l`.
pub fn h_at_vertex(h: &HermitianForm, l: &LaxLattice) -> i64 {
    h_imag(h, l.u, l.v)
}

/// `h(w−iv, iu−v) + h(w+iv, iu+v) − h(iv, v) − h(iw, w) − h(iu, u)`, which is
/// real whenever `u + v + w = 0`.
pub fn hermitian_defect(h: &HermitianForm, s: &Superbasis) -> GaussianInt {
    use crate::gaussian::{vec_add, vec_scale, vec_sub};
    let i = GaussianInt::I;
    let (u, v, w) = (s.u, s.v, s.w);
    let (iu, iv, iw) = (vec_scale(i, u), vec_scale(i, v), vec_scale(i, w));
    herm_eval(h, vec_sub(w, iv), vec_sub(iu, v)) + herm_eval(h, vec_add(w, iv), vec_add(iu, v))
        - herm_eval(h, iv, v)
        - herm_eval(h, iw, w)
        - herm_eval(h, iu, u)
}

/// Checks `H(w−iv, iu−v) + H(w+iv, iu+v) = 2(H(u, iv) + H(v, iw) + H(w, iu))`.
pub fn hermitian_descartes_check(h: &HermitianForm, s: &Superbasis) -> bool {
    use crate::gaussian::{vec_add, vec_scale, vec_sub};
    let i = GaussianInt::I;
    let (u, v, w) = (s.u, s.v, s.w);
    let (iu, iv, iw) = (vec_scale(i, u), vec_scale(i, v), vec_scale(i, w));
    let lhs = h_imag(h, vec_sub(w, iv), vec_sub(iu, v)) + h_imag(h, vec_add(w, iv), vec_add(iu, v));
    let rhs = 2 * (h_imag(h, u, iv) + h_imag(h, v, iw) + h_imag(h, w, iu));
    lhs == rhs
}

/// The common point of two tangent circles, `(z₁ + z₂)/(b₁ + b₂)`, or ∞ for
/// two parallel lines.
pub fn tangency_point(c1: &Circle, c2: &Circle) -> Result<ProjectivePoint> {
    let inner = crate::minkowski::mink_inner(&c1.into(), &c2.into());
    if inner != Q::from_integer(-1) {
        return Err(Error::NotTangent(inner.to_string()));
    }
    if *c2 == reorient(c1) {
        // a circle and its reversal share every point
        return Err(Error::NotTangent("circle against its own reversal".into()));
    }
    let num = c1.z + c2.z;
    let den = c1.b + c2.b;
    if den == 0 {
        return Ok(ProjectivePoint::INFINITY);
    }
    ProjectivePoint::new(num, GaussianInt::from_int(den))
}

/// Euclidean description of a circle, for rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EuclidParams {
    /// Centre `z/b` and radius `1/|b|`; `clockwise` iff `b > 0`.
    Round { centre: (Q, Q), radius: Q, clockwise: bool },
    /// The line `{x : Re(x · n̄) = offset}` with unit normal `n = z`.
    Line { normal: GaussianInt, offset: Q },
}

pub fn euclid_params(c: &Circle) -> EuclidParams {
    if c.b == 0 {
        EuclidParams::Line { normal: c.z, offset: Q::new(c.bp as i128, 2) }
    } else {
        let b = c.b as i128;
        EuclidParams::Round {
            centre: (Q::new(c.z.re as i128, b), Q::new(c.z.im as i128, b)),
            radius: Q::new(1, b.abs()),
            clockwise: c.b > 0,
        }
    }
}

/// Closed axis-aligned rectangle with rational corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub x0: Q,
    pub y0: Q,
    pub x1: Q,
    pub y1: Q,
}

impl Window {
    pub fn new(x0: Q, y0: Q, x1: Q, y1: Q) -> Result<Window> {
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::InvalidConfig("window must have positive width and height".into()));
        }
        Ok(Window { x0, y0, x1, y1 })
    }

    pub fn from_ints(x0: i64, y0: i64, x1: i64, y1: i64) -> Result<Window> {
        let q = |n: i64| Q::from_integer(n as i128);
        Window::new(q(x0), q(y0), q(x1), q(y1))
    }

    /// Smallest window containing both.
    pub fn hull(&self, other: &Window) -> Window {
        Window {
            x0: self.x0.min(other.x0),
            y0: self.y0.min(other.y0),
            x1: self.x1.max(other.x1),
            y1: self.y1.max(other.y1),
        }
    }

    pub fn intersects(&self, other: &Window) -> bool {
        self.x0 <= other.x1 && other.x0 <= self.x1 && self.y0 <= other.y1 && other.y0 <= self.y1
    }

    /// True iff the closed disk of a round circle, or the line itself, meets the window.
    pub fn meets(&self, c: &Circle) -> bool {
        match euclid_params(c) {
            EuclidParams::Round { centre: (cx, cy), radius, .. } => {
                let zero = Q::from_integer(0);
                let dx = (self.x0 - cx).max(cx - self.x1).max(zero);
                let dy = (self.y0 - cy).max(cy - self.y1).max(zero);
                dx * dx + dy * dy <= radius * radius
            }
            EuclidParams::Line { normal, offset } => {
                // Gaussian lines are axis-parallel: normal ∈ {±1, ±i}
                if normal.im == 0 {
                    let x = offset * Q::from_integer(normal.re as i128);
                    self.x0 <= x && x <= self.x1
                } else {
                    let y = offset * Q::from_integer(normal.im as i128);
                    self.y0 <= y && y <= self.y1
                }
            }
        }
    }

    /// Bounding box of a round circle's disk.
    pub fn of_disk(c: &Circle) -> Option<Window> {
        match euclid_params(c) {
            EuclidParams::Round { centre: (cx, cy), radius, .. } => {
                Some(Window { x0: cx - radius, y0: cy - radius, x1: cx + radius, y1: cy + radius })
            }
            EuclidParams::Line { .. } => None,
        }
    }
}

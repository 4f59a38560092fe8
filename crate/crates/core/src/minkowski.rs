//! Pedoe embedding of oriented circles into Minkowski spacetime, Descartes
//! quadruple criteria and the integer Lorentz action of `PGL₂(ℤ[i])`.
//!
//! Coordinates are `(b, bp, re z, im z)` with the form
//! `⟨x, y⟩ = −½(x_b y_bp + x_bp y_b) + x_r y_r + x_m y_m`.

use std::fmt;

use num_traits::{One, Zero};

use crate::circle::{Circle, Q};
use crate::error::{Error, Result};
use crate::gaussian::{GaussMatrix2, GaussianInt};

/// Image of a circle on the unit hyperboloid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PedoeVector(pub [i64; 4]);

impl PedoeVector {
    pub fn b(&self) -> i64 {
        self.0[0]
    }

    pub fn bp(&self) -> i64 {
        self.0[1]
    }

    pub fn to_circle(&self) -> Circle {
        let [b, bp, r, m] = self.0;
        Circle::new_unchecked(b, bp, GaussianInt::new(r, m))
    }

    pub fn neg(&self) -> PedoeVector {
        PedoeVector(self.0.map(|x| -x))
    }
}

impl From<&Circle> for PedoeVector {
    fn from(c: &Circle) -> Self {
        PedoeVector([c.b, c.bp, c.z.re, c.z.im])
    }
}

impl From<Circle> for PedoeVector {
    fn from(c: Circle) -> Self {
        PedoeVector::from(&c)
    }
}

impl fmt::Display for PedoeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

pub fn pedoe(c: &Circle) -> PedoeVector {
    PedoeVector::from(c)
}

/// Twice the Minkowski form, which is integral: `2⟨x, y⟩`.
pub fn mink_inner_twice(x: &PedoeVector, y: &PedoeVector) -> i128 {
    let [xb, xbp, xr, xm] = x.0.map(i128::from);
    let [yb, ybp, yr, ym] = y.0.map(i128::from);
    -(xb * ybp + xbp * yb) + 2 * (xr * yr + xm * ym)
}

pub fn mink_inner(x: &PedoeVector, y: &PedoeVector) -> Q {
    Q::new(mink_inner_twice(x, y), 2)
}

/// The Minkowski form matrix, exactly.
pub fn minkowski_form() -> [[Q; 4]; 4] {
    let h = Q::new(-1, 2);
    let z = Q::zero();
    let o = Q::one();
    [[z, h, z, z], [h, z, z, z], [z, z, o, z], [z, z, z, o]]
}

/// How two oriented circles meet, read from their Pedoe inner product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairRelation {
    ExternallyTangent,
    InternallyTangent,
    Orthogonal,
    /// Crossing at the angle with this cosine.
    Meeting(Q),
    Disjoint,
}

pub fn classify_pair(c1: &Circle, c2: &Circle) -> PairRelation {
    let t = mink_inner_twice(&c1.into(), &c2.into());
    match t {
        -2 => PairRelation::ExternallyTangent,
        2 => PairRelation::InternallyTangent,
        0 => PairRelation::Orthogonal,
        t if t.abs() < 2 => PairRelation::Meeting(Q::new(t, 2)),
        _ => PairRelation::Disjoint,
    }
}

/// `2(a² + b² + c² + d²) = (a + b + c + d)²`.
pub fn descartes_scalar_check(a: i64, b: i64, c: i64, d: i64) -> bool {
    let [a, b, c, d] = [a, b, c, d].map(i128::from);
    2 * (a * a + b * b + c * c + d * d) == (a + b + c + d).pow(2)
}

/// The other completion `d' = 2(a + b + c) − d`.
pub fn descartes_companion(a: i64, b: i64, c: i64, d: i64) -> i64 {
    2 * (a + b + c) - d
}

/// Four Pedoe vectors, the columns of the matrix `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadruple(pub [PedoeVector; 4]);

impl Quadruple {
    pub fn from_circles(c: [Circle; 4]) -> Quadruple {
        Quadruple(c.map(|x| PedoeVector::from(&x)))
    }

    pub fn circles(&self) -> [Circle; 4] {
        self.0.map(|v| v.to_circle())
    }

    /// The columns sorted; identifies the unordered quadruple.
    pub fn key(&self) -> [Circle; 4] {
        let mut c = self.circles();
        c.sort();
        c
    }

    /// The matrix whose columns are the Pedoe vectors, as rows of integers.
    pub fn matrix(&self) -> [[i64; 4]; 4] {
        let mut a = [[0; 4]; 4];
        for (j, col) in self.0.iter().enumerate() {
            for i in 0..4 {
                a[i][j] = col.0[i];
            }
        }
        a
    }

    pub fn from_matrix(a: &[[i64; 4]; 4]) -> Quadruple {
        let mut cols = [PedoeVector([0; 4]); 4];
        for (j, col) in cols.iter_mut().enumerate() {
            for i in 0..4 {
                col.0[i] = a[i][j];
            }
        }
        Quadruple(cols)
    }

    pub fn permuted(&self, perm: [usize; 4]) -> Quadruple {
        Quadruple(perm.map(|k| self.0[k]))
    }

    pub fn det(&self) -> i128 {
        det4(&self.matrix().map(|r| r.map(i128::from)))
    }

    /// Reorders the columns, if needed, by one transposition so the determinant is positive.
    pub fn positively_ordered(&self) -> Quadruple {
        if self.det() < 0 {
            self.permuted([1, 0, 2, 3])
        } else {
            *self
        }
    }
}

/// The base quadruple: the real axis, the line `Im x = 1` and the two circles
/// of curvature 2 between them.
pub fn base_quadruple() -> Quadruple {
    Quadruple([
        PedoeVector([0, 0, 0, -1]),
        PedoeVector([0, 2, 0, 1]),
        PedoeVector([2, 2, 2, 1]),
        PedoeVector([2, 0, 0, 1]),
    ])
}

/// Gram matrix `AᵀMA`; entries are integers for Gaussian circles.
pub fn gram(q: &Quadruple) -> [[Q; 4]; 4] {
    let mut g = [[Q::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            g[i][j] = mink_inner(&q.0[i], &q.0[j]);
        }
    }
    g
}

pub fn is_descartes(q: &Quadruple) -> bool {
    (0..4).all(|i| {
        (0..4).all(|j| {
            let t = mink_inner_twice(&q.0[i], &q.0[j]);
            t == if i == j { 2 } else { -2 }
        })
    })
}

/// Replaces column `i` by `2 Σ_{j≠i} v_j − v_i`.
pub fn swap(q: &Quadruple, i: usize) -> Result<Quadruple> {
    if !is_descartes(q) {
        return Err(Error::NotDescartes);
    }
    Ok(swap_unchecked(q, i))
}

pub(crate) fn swap_unchecked(q: &Quadruple, i: usize) -> Quadruple {
    let mut out = *q;
    for c in 0..4 {
        let others: i64 = (0..4).filter(|&j| j != i).map(|j| q.0[j].0[c]).sum();
        out.0[i].0[c] = 2 * others - q.0[i].0[c];
    }
    out
}

/// Sign of `det A`; Descartes quadruples have `|det A| = 8`.
pub fn ordering_sign(q: &Quadruple) -> Result<i32> {
    let d = q.det();
    match d {
        8 => Ok(1),
        -8 => Ok(-1),
        _ => Err(Error::BadDeterminant(d)),
    }
}

fn det4(a: &[[i128; 4]; 4]) -> i128 {
    fn det3(m: [[i128; 3]; 3]) -> i128 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
    let mut total = 0;
    for col in 0..4 {
        let mut minor = [[0; 3]; 3];
        for r in 1..4 {
            let mut k = 0;
            for c in 0..4 {
                if c != col {
                    minor[r - 1][k] = a[r][c];
                    k += 1;
                }
            }
        }
        let sign = if col % 2 == 0 { 1 } else { -1 };
        total += sign * a[0][col] * det3(minor);
    }
    total
}

/// A 4×4 integer matrix acting on Pedoe vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LorentzMatrix(pub [[i64; 4]; 4]);

impl LorentzMatrix {
    pub const IDENTITY: LorentzMatrix = LorentzMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);

    pub fn mul(&self, rhs: &LorentzMatrix) -> LorentzMatrix {
        let mut out = [[0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        LorentzMatrix(out)
    }

    pub fn transpose(&self) -> LorentzMatrix {
        let mut out = [[0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[j][i];
            }
        }
        LorentzMatrix(out)
    }

    pub fn det(&self) -> i128 {
        det4(&self.0.map(|r| r.map(i128::from)))
    }

    /// `NᵀMN = M`, checked on the integral form `2M`.
    pub fn preserves_form(&self) -> bool {
        let cols: [PedoeVector; 4] = std::array::from_fn(|j| PedoeVector(std::array::from_fn(|i| self.0[i][j])));
        let basis: [PedoeVector; 4] = std::array::from_fn(|j| PedoeVector(std::array::from_fn(|i| (i == j) as i64)));
        (0..4).all(|i| (0..4).all(|j| mink_inner_twice(&cols[i], &cols[j]) == mink_inner_twice(&basis[i], &basis[j])))
    }

    /// The image of `t = (1, 1, 0, 0)` has positive projection on `t`.
    pub fn preserves_time(&self) -> bool {
        let t = PedoeVector([1, 1, 0, 0]);
        let nt = lorentz_apply(self, &t);
        // ⟨t, t⟩ < 0, so forward means ⟨Nt, t⟩ < 0
        mink_inner_twice(&nt, &t) < 0
    }

    pub fn is_proper_orthochronous(&self) -> bool {
        self.preserves_form() && self.det() == 1 && self.preserves_time()
    }
}

impl fmt::Display for LorentzMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} {} {} {}", r[0], r[1], r[2], r[3])?;
        }
        Ok(())
    }
}

pub fn lorentz_apply(n: &LorentzMatrix, v: &PedoeVector) -> PedoeVector {
    PedoeVector(std::array::from_fn(|i| (0..4).map(|k| n.0[i][k] * v.0[k]).sum()))
}

pub fn lorentz_apply_quadruple(n: &LorentzMatrix, q: &Quadruple) -> Quadruple {
    Quadruple(q.0.map(|v| lorentz_apply(n, &v)))
}

/// The Lorentz matrix of `M`, from the Hermitian action `H ↦ M H M̄ᵀ` with
/// `H = (bp, z; z̄, b)`.
///
/// With this layout `z ↦ iz` maps to the transpose of the matrix usually
/// displayed for it (that one is the image of `z ↦ −iz`); the defining
/// property is `pedoe(M·C) = spinor(M)·pedoe(C)`.
pub fn spinor(m: &GaussMatrix2) -> Result<LorentzMatrix> {
    m.ensure_unit_det()?;
    let adj = GaussMatrix2::from_rows(m.alpha.conj(), m.beta.conj(), m.gamma.conj(), m.delta.conj());
    let zero = GaussianInt::ZERO;
    let one = GaussianInt::ONE;
    let i = GaussianInt::I;
    // Hermitian matrices of the basis vectors e_b, e_bp, e_r, e_m
    let basis = [
        GaussMatrix2::from_rows(zero, zero, zero, one),
        GaussMatrix2::from_rows(one, zero, zero, zero),
        GaussMatrix2::from_rows(zero, one, one, zero),
        GaussMatrix2::from_rows(zero, i, -i, zero),
    ];
    let mut n = [[0; 4]; 4];
    for (j, h) in basis.iter().enumerate() {
        let img = m.mul(h).mul(&adj);
        // rows (alpha gamma; beta delta) = (bp', z'; z̄', b')
        let col = [img.delta.re, img.alpha.re, img.gamma.re, img.gamma.im];
        for (r, x) in col.into_iter().enumerate() {
            n[r][j] = x;
        }
    }
    Ok(LorentzMatrix(n))
}

/// The image of `z ↦ iz` as it is usually displayed; equals
/// `spinor(diag(i, 1))ᵀ`.
pub const DISPLAYED_ROTATION: LorentzMatrix = LorentzMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]);

fn rational_inverse(a: &[[i64; 4]; 4]) -> Option<[[Q; 4]; 4]> {
    let mut m: [[Q; 8]; 4] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if j < 4 {
                Q::from_integer(a[i][j] as i128)
            } else if j - 4 == i {
                Q::one()
            } else {
                Q::zero()
            }
        })
    });
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                let pivot_row = m[col];
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(std::array::from_fn(|i| std::array::from_fn(|j| m[i][j + 4])))
}

/// The unique `N` with `N·B = A`, for positively ordered Descartes quadruples.
pub fn relate_quadruples(a: &Quadruple, b: &Quadruple) -> Result<LorentzMatrix> {
    for q in [a, b] {
        if !is_descartes(q) {
            return Err(Error::NotDescartes);
        }
        if ordering_sign(q)? < 0 {
            return Err(Error::NegativelyOrdered);
        }
    }
    let binv = rational_inverse(&b.matrix()).ok_or(Error::NotDescartes)?;
    let am = a.matrix();
    let mut n = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let x: Q = (0..4).map(|k| Q::from_integer(am[i][k] as i128) * binv[k][j]).sum();
            if !x.is_integer() {
                return Err(Error::NonIntegral);
            }
            n[i][j] = *x.numer() as i64;
        }
    }
    let n = LorentzMatrix(n);
    debug_assert!(n.is_proper_orthochronous());
    debug_assert_eq!(lorentz_apply_quadruple(&n, b), *a);
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{circle_from_matrix, reorient};
    use crate::gaussian::gi;

    #[test]
    fn pedoe_examples() {
        let c = Circle::new_unchecked(0, 0, gi(0, -1));
        assert_eq!(pedoe(&c), PedoeVector([0, 0, 0, -1]));
        let c = Circle::new_unchecked(2, 2, gi(2, 1));
        assert_eq!(pedoe(&c), PedoeVector([2, 2, 2, 1]));
        assert_eq!(pedoe(&reorient(&c)), pedoe(&c).neg());
    }

    #[test]
    fn inner_products() {
        assert_eq!(mink_inner(&PedoeVector([0, 0, 0, -1]), &PedoeVector([0, 2, 0, 1])), Q::from_integer(-1));
        for v in base_quadruple().0 {
            assert_eq!(mink_inner(&v, &v), Q::one());
        }
        let v = PedoeVector([2, 8, 4, 1]);
        assert_eq!(mink_inner(&v, &v), Q::one());
        // half-integers appear when curvatures are odd
        assert_eq!(mink_inner(&PedoeVector([1, 0, 0, 0]), &PedoeVector([0, 1, 0, 0])), Q::new(-1, 2));
    }

    #[test]
    fn classify_examples() {
        let q = base_quadruple().circles();
        assert_eq!(classify_pair(&q[0], &q[1]), PairRelation::ExternallyTangent);
        assert_eq!(classify_pair(&q[2], &q[2]), PairRelation::InternallyTangent);
        // circle centred 1/2 of radius 1/2 crosses the real axis at right angles
        let ortho = Circle::new(2, 0, gi(1, 0)).unwrap();
        assert_eq!(classify_pair(&ortho, &q[0]), PairRelation::Orthogonal);
        let far = Circle::new(2, 8, gi(4, 1)).unwrap();
        assert_eq!(classify_pair(&far, &q[3]), PairRelation::Disjoint);
    }

    #[test]
    fn orthogonal_circle_is_gaussian() {
        // some small unit-determinant matrix maps ℝ onto (2, 0, 1)
        let target = Circle::new_unchecked(2, 0, gi(1, 0));
        let small = [gi(0, 0), gi(1, 0), gi(-1, 0), gi(0, 1), gi(0, -1), gi(1, 1), gi(1, -1), gi(-1, 1), gi(-1, -1)];
        let mut found = false;
        for &a in &small {
            for &b in &small {
                for &c in &small {
                    for &d in &small {
                        let m = GaussMatrix2::from_rows(a, b, c, d);
                        if m.has_unit_det() && circle_from_matrix(&m).unwrap() == target {
                            found = true;
                        }
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn descartes_examples() {
        let base = base_quadruple();
        assert!(is_descartes(&base));
        let mut neg = base;
        neg.0[0] = neg.0[0].neg();
        assert!(!is_descartes(&neg));
        let mut rep = base;
        rep.0[1] = rep.0[0];
        assert!(!is_descartes(&rep));
        let g = gram(&base);
        for (i, row) in g.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, Q::from_integer(if i == j { 1 } else { -1 }));
            }
        }
    }

    #[test]
    fn scalar_checks() {
        assert!(descartes_scalar_check(0, 0, 2, 2));
        assert!(descartes_scalar_check(-1, 2, 2, 3));
        assert!(!descartes_scalar_check(1, 1, 1, 1));
        assert_eq!(descartes_companion(0, 0, 2, 2), 2);
    }

    #[test]
    fn swap_examples() {
        let base = base_quadruple();
        let s = swap(&base, 3).unwrap();
        assert_eq!(s.0[3], PedoeVector([2, 8, 4, 1]));
        assert!(is_descartes(&s));
        assert_eq!(swap(&s, 3).unwrap(), base);
        assert_eq!(s.0[3].b(), descartes_companion(0, 0, 2, 2));
        let mut bad = base;
        bad.0[0] = bad.0[0].neg();
        assert_eq!(swap(&bad, 0), Err(Error::NotDescartes));
    }

    #[test]
    fn ordering_examples() {
        let base = base_quadruple();
        assert_eq!(base.det(), 8);
        assert_eq!(ordering_sign(&base).unwrap(), 1);
        assert_eq!(ordering_sign(&base.permuted([1, 0, 2, 3])).unwrap(), -1);
        let mut positive = 0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let mut seen = [false; 4];
                        p.iter().for_each(|&k| seen[k] = true);
                        if seen.iter().all(|&s| s) && ordering_sign(&base.permuted(p)).unwrap() == 1 {
                            positive += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(positive, 12);
        let mut rep = base;
        rep.0[1] = rep.0[0];
        assert!(matches!(ordering_sign(&rep), Err(Error::BadDeterminant(0))));
    }

    #[test]
    fn spinor_examples() {
        assert_eq!(spinor(&GaussMatrix2::IDENTITY).unwrap(), LorentzMatrix::IDENTITY);
        let rot = GaussMatrix2::from_rows(gi(0, 1), gi(0, 0), gi(0, 0), gi(1, 0));
        let n = spinor(&rot).unwrap();
        assert_eq!(n, DISPLAYED_ROTATION.transpose());
        let shift = GaussMatrix2::from_rows(gi(1, 0), gi(1, 0), gi(0, 0), gi(1, 0));
        let n = spinor(&shift).unwrap();
        // b ↦ b, bp ↦ bp + 2r + b, r ↦ r + b, m ↦ m
        assert_eq!(n, LorentzMatrix([[1, 0, 0, 0], [1, 1, 2, 0], [1, 0, 1, 0], [0, 0, 0, 1]]));
        assert!(n.is_proper_orthochronous());
        let bad = GaussMatrix2::from_rows(gi(1, 1), gi(0, 0), gi(0, 0), gi(1, 0));
        assert!(spinor(&bad).is_err());
    }

    #[test]
    fn relate_examples() {
        let base = base_quadruple();
        assert_eq!(relate_quadruples(&base, &base).unwrap(), LorentzMatrix::IDENTITY);
        let s = swap(&base, 3).unwrap().positively_ordered();
        let n = relate_quadruples(&s, &base).unwrap();
        assert!(n.is_proper_orthochronous());
        assert_eq!(lorentz_apply_quadruple(&n, &base), s);
        let neg = base.permuted([1, 0, 2, 3]);
        assert_eq!(relate_quadruples(&neg, &base), Err(Error::NegativelyOrdered));
    }
}

//! Lax vectors, bases, superbases, lax lattices and ultrabasis chambers of
//! ℤ[i]².
//!
//! A chamber is stored with its four vertex lattices in a fixed order: the
//! three wall vertices `(u, iv)`, `(v, iw)`, `(w, iu)` followed by the apex.
//! Edge `k` joins the vertex pair `CHAMBER_EDGES[k]`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::circle::{circle_from_lattice, Circle};
use crate::error::{Error, Result};
use crate::gaussian::{
    det2, gauss_gcd, vec_add, vec_canonical_unit, vec_neg, vec_scale, vec_sub, GaussMatrix2, GaussVec, GaussianInt,
    ProjectivePoint,
};

/// A primitive vector of ℤ[i]² up to units, stored by its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaxVector {
    v: GaussVec,
}

impl LaxVector {
    pub fn vec(&self) -> GaussVec {
        self.v
    }

    pub fn from_point(p: &ProjectivePoint) -> LaxVector {
        LaxVector { v: p.as_vec() }
    }

    pub fn to_point(&self) -> ProjectivePoint {
        ProjectivePoint::new(self.v[0], self.v[1]).expect("lax vectors are nonzero")
    }

    /// Shorthand for building a lax vector from two Gaussian integers.
    pub fn of(x: GaussianInt, y: GaussianInt) -> Result<LaxVector> {
        lax_canonical([x, y])
    }
}

impl fmt::Display for LaxVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v[0], self.v[1])
    }
}

/// Canonical representative of the unit class of a primitive vector.
pub fn lax_canonical(v: GaussVec) -> Result<LaxVector> {
    let g = gauss_gcd(v[0], v[1]).map_err(|_| Error::NotPrimitive(v[0], v[1]))?;
    if !g.is_unit() {
        return Err(Error::NotPrimitive(v[0], v[1]));
    }
    Ok(LaxVector { v: vec_scale(vec_canonical_unit(v), v) })
}

pub fn is_basis(a: &LaxVector, b: &LaxVector) -> bool {
    det2(a.v, b.v).is_unit()
}

/// Three vectors with `u + v + w = 0`, any two of which form a basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Superbasis {
    pub u: GaussVec,
    pub v: GaussVec,
    pub w: GaussVec,
}

impl Superbasis {
    /// Validates an explicit zero-sum triple.
    pub fn new(u: GaussVec, v: GaussVec, w: GaussVec) -> Result<Superbasis> {
        if vec_add(vec_add(u, v), w) != [GaussianInt::ZERO; 2] || !det2(u, v).is_unit() {
            return Err(Error::NotSuperbasis);
        }
        Ok(Superbasis { u, v, w })
    }

    pub fn lax(&self) -> [LaxVector; 3] {
        [self.u, self.v, self.w].map(|x| lax_canonical(x).expect("superbasis vectors are primitive"))
    }

    /// The same superbasis with every representative multiplied by `unit`.
    pub fn scaled(&self, unit: GaussianInt) -> Superbasis {
        Superbasis { u: vec_scale(unit, self.u), v: vec_scale(unit, self.v), w: vec_scale(unit, self.w) }
    }
}

fn find_zero_sum(a: &LaxVector, b: &LaxVector, c: &LaxVector) -> Option<Superbasis> {
    if !(is_basis(a, b) && is_basis(b, c) && is_basis(a, c)) {
        return None;
    }
    let u = a.v;
    GaussianInt::UNITS.iter().find_map(|&eps| {
        let v = vec_scale(eps, b.v);
        let w = vec_neg(vec_add(u, v));
        (lax_canonical(w).ok()? == *c).then_some(Superbasis { u, v, w })
    })
}

pub fn is_superbasis(a: &LaxVector, b: &LaxVector, c: &LaxVector) -> bool {
    find_zero_sum(a, b, c).is_some()
}

/// Zero-sum representatives `(u, v, w)` of a superbasis, with `u` the
/// canonical representative of `a`.
pub fn superbasis_zero_sum(a: &LaxVector, b: &LaxVector, c: &LaxVector) -> Result<Superbasis> {
    find_zero_sum(a, b, c).ok_or(Error::NotSuperbasis)
}

/// An ordered ℤ[i]-basis `(u, v)` of ℤ[i]², standing for the oriented lax lattice it spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LaxLattice {
    pub u: GaussVec,
    pub v: GaussVec,
}

impl LaxLattice {
    pub fn new(u: GaussVec, v: GaussVec) -> Result<LaxLattice> {
        let d = det2(u, v);
        if !d.is_unit() {
            return Err(Error::NonUnitDeterminant(d));
        }
        Ok(LaxLattice { u, v })
    }

    pub fn from_matrix(m: &GaussMatrix2) -> Result<LaxLattice> {
        LaxLattice::new(m.col0(), m.col1())
    }

    pub fn matrix(&self) -> GaussMatrix2 {
        GaussMatrix2::from_columns(self.u, self.v)
    }

    /// The associated circle, which is a faithful key for the lattice.
    pub fn key(&self) -> Circle {
        circle_from_lattice(self)
    }

    /// Integer coordinates `(a, b)` with `y = a·u + b·v`, if they exist.
    pub fn integer_coords(&self, y: GaussVec) -> Option<(i64, i64)> {
        let d = det2(self.u, self.v);
        let dinv = d.unit_inverse().ok()?;
        let a = det2(y, self.v) * dinv;
        let b = det2(self.u, y) * dinv;
        (a.im == 0 && b.im == 0).then_some((a.re, b.re))
    }
}

impl fmt::Display for LaxLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix())
    }
}

/// True iff `M₂ = ε·M₁·T` for a unit `ε` and an integer `T` with `det T = 1`.
pub fn lattice_equal(l1: &LaxLattice, l2: &LaxLattice) -> bool {
    let Ok(inv) = l1.matrix().inverse() else {
        return false;
    };
    let x = inv.mul(&l2.matrix());
    GaussianInt::UNITS.iter().any(|&eps| {
        let t = x.scale(eps);
        [t.alpha, t.beta, t.gamma, t.delta].iter().all(|e| e.im == 0) && t.det() == GaussianInt::ONE
    })
}

/// True iff `x` or `i·x` lies in the ℤ-span of the lattice basis.
pub fn contains_lax(l: &LaxLattice, x: &LaxVector) -> bool {
    l.integer_coords(x.v).is_some() || l.integer_coords(vec_scale(GaussianInt::I, x.v)).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Handedness {
    Left,
    Right,
}

/// Vertex pairs joined by each of the six chamber edges.
pub const CHAMBER_EDGES: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2)];

/// An ultrabasis chamber: a tetrahedron with lax-lattice vertices and lax-vector edges.
#[derive(Clone, Debug)]
pub struct Chamber {
    pub vertices: [LaxLattice; 4],
    pub edges: [LaxVector; 6],
    pub handedness: Handedness,
}

impl Chamber {
    pub fn circles(&self) -> [Circle; 4] {
        self.vertices.map(|l| circle_from_lattice(&l))
    }

    /// Sorted circles of the four vertices; identifies the chamber.
    pub fn key(&self) -> [Circle; 4] {
        let mut c = self.circles();
        c.sort();
        c
    }

    /// Indices of the three edges not touching vertex `k`.
    pub fn face_edges(k: usize) -> [usize; 3] {
        let mut out = [0; 3];
        let mut n = 0;
        for (e, &(a, b)) in CHAMBER_EDGES.iter().enumerate() {
            if a != k && b != k {
                out[n] = e;
                n += 1;
            }
        }
        out
    }

    /// Indices of the three edges touching vertex `k`.
    pub fn vertex_edges(k: usize) -> [usize; 3] {
        let mut out = [0; 3];
        let mut n = 0;
        for (e, &(a, b)) in CHAMBER_EDGES.iter().enumerate() {
            if a == k || b == k {
                out[n] = e;
                n += 1;
            }
        }
        out
    }

    /// The wall opposite vertex `k`, as lax vectors.
    pub fn face(&self, k: usize) -> [LaxVector; 3] {
        Chamber::face_edges(k).map(|e| self.edges[e])
    }

    /// The chamber sharing the wall opposite vertex `k`.
    pub fn neighbor(&self, k: usize) -> Result<Chamber> {
        let [a, b, c] = self.face(k);
        let s = superbasis_zero_sum(&a, &b, &c)?;
        let (left, right) = complete_wall(&s)?;
        let own = self.key();
        if left.key() != own {
            Ok(left)
        } else {
            Ok(right)
        }
    }

    /// The edge joining vertices `a` and `b`.
    pub fn edge_between(&self, a: usize, b: usize) -> LaxVector {
        let e = CHAMBER_EDGES
            .iter()
            .position(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
            .expect("distinct vertices are joined");
        self.edges[e]
    }
}

/// The two standard chambers sharing the wall `{u, v, w}`.
///
/// Wall vertices are `(u, iv)`, `(v, iw)`, `(w, iu)`; the left apex is
/// `(w − iv, iu − v)` and the right apex `(w + iv, iu + v)`. The apex edges of
/// the left chamber are `u + iv`, `v + iw`, `w + iu` and those of the right
/// chamber `u − iv`, `v − iw`, `w − iu`.
pub fn complete_wall(s: &Superbasis) -> Result<(Chamber, Chamber)> {
    let Superbasis { u, v, w } = Superbasis::new(s.u, s.v, s.w)?;
    let i = GaussianInt::I;
    let iu = vec_scale(i, u);
    let iv = vec_scale(i, v);
    let iw = vec_scale(i, w);
    let wall = [LaxLattice::new(u, iv)?, LaxLattice::new(v, iw)?, LaxLattice::new(w, iu)?];
    let wall_edges = [lax_canonical(v)?, lax_canonical(w)?, lax_canonical(u)?];

    let build = |handedness: Handedness| -> Result<Chamber> {
        let (apex, apex_edges) = match handedness {
            Handedness::Left => {
                (LaxLattice::new(vec_sub(w, iv), vec_sub(iu, v))?, [vec_add(u, iv), vec_add(v, iw), vec_add(w, iu)])
            }
            Handedness::Right => {
                (LaxLattice::new(vec_add(w, iv), vec_add(iu, v))?, [vec_sub(u, iv), vec_sub(v, iw), vec_sub(w, iu)])
            }
        };
        let [e0, e1, e2] = apex_edges;
        Ok(Chamber {
            vertices: [wall[0], wall[1], wall[2], apex],
            edges: [
                wall_edges[0],
                wall_edges[1],
                wall_edges[2],
                lax_canonical(e0)?,
                lax_canonical(e1)?,
                lax_canonical(e2)?,
            ],
            handedness,
        })
    };
    Ok((build(Handedness::Left)?, build(Handedness::Right)?))
}

/// The chamber whose vertices map to the base quadruple.
pub fn base_chamber() -> Chamber {
    let one = GaussianInt::ONE;
    let zero = GaussianInt::ZERO;
    let i = GaussianInt::I;
    let s = Superbasis::new([one, zero], [zero, -i], [-one, i]).expect("base superbasis");
    complete_wall(&s).expect("base superbasis").0
}

/// Integer binary quadratic form `a x² + 2b xy + c y²` given by a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticForm {
    pub fn eval(&self, (x, y): (i64, i64)) -> i64 {
        self.a * x * x + 2 * self.b * x * y + self.c * y * y
    }
}

/// Outcome of surveying the court around a prince vertex.
#[derive(Clone, Debug, Default)]
pub struct CourtReport {
    /// Titles (integer coordinates in the prince's basis, sign-normalized).
    pub titles: BTreeSet<(i64, i64)>,
    /// Joined title pairs.
    pub joins: BTreeSet<((i64, i64), (i64, i64))>,
    /// Number of chambers around the prince, i.e. nodes of the dual tree.
    pub dual_nodes: usize,
    pub dual_edges: usize,
    /// Joined pairs that are not a ℤ-basis, or bases that are not joined.
    pub basis_mismatches: usize,
    /// Interior dual nodes whose degree is not 3.
    pub valence_failures: usize,
    pub is_tree: bool,
    /// Parallelogram-law instances checked and failed.
    pub parallelogram_checks: usize,
    pub parallelogram_failures: usize,
}

impl CourtReport {
    pub fn passed(&self) -> bool {
        self.basis_mismatches == 0 && self.valence_failures == 0 && self.is_tree && self.parallelogram_failures == 0
    }
}

fn normalize_title((x, y): (i64, i64)) -> (i64, i64) {
    if x < 0 || (x == 0 && y < 0) {
        (-x, -y)
    } else {
        (x, y)
    }
}

/// Surveys the subjects adjacent to the prince lattice `l` out to `radius`
/// steps in the dual tree of chambers around the prince, checking that the
/// titles form a copy of Conway's palace and that `forms` obey the
/// parallelogram law on it.
pub fn court_check(l: &LaxLattice, radius: usize, forms: &[QuadraticForm]) -> Result<CourtReport> {
    let prince = l.key();
    let (u, v) = (l.u, l.v);
    let i = GaussianInt::I;
    // the prince is the (u', i v') vertex of the wall u' = u, v' = -iv
    let vp = vec_scale(-i, v);
    let wp = vec_neg(vec_add(u, vp));
    let seed = complete_wall(&Superbasis::new(u, vp, wp)?)?.0;

    let title_of = |x: &LaxVector| -> Option<(i64, i64)> {
        l.integer_coords(x.v).or_else(|| l.integer_coords(vec_scale(i, x.v))).map(normalize_title)
    };

    let mut report = CourtReport::default();
    let mut index: HashMap<[Circle; 4], usize> = HashMap::new();
    let mut adjacency: Vec<BTreeSet<usize>> = Vec::new();
    let mut depth_of: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert(seed.key(), 0);
    adjacency.push(BTreeSet::new());
    depth_of.push(0);
    queue.push_back((seed, 0usize));

    while let Some((chamber, id)) = queue.pop_front() {
        let circles = chamber.circles();
        let p = circles.iter().position(|c| *c == prince).expect("chamber touches the prince");
        let subjects: Vec<usize> = (0..4).filter(|&k| k != p).collect();
        let mut titles = Vec::new();
        for &s in &subjects {
            let t = title_of(&chamber.edge_between(p, s)).ok_or(Error::NotSuperbasis)?;
            report.titles.insert(t);
            titles.push(t);
        }
        for a in 0..3 {
            for b in (a + 1)..3 {
                let (x, y) = (titles[a].min(titles[b]), titles[a].max(titles[b]));
                report.joins.insert((x, y));
            }
        }
        if depth_of[id] >= radius {
            continue;
        }
        // walls touching the prince are those opposite the subjects
        for &s in &subjects {
            let next = chamber.neighbor(s)?;
            let key = next.key();
            let nid = match index.get(&key) {
                Some(&n) => n,
                None => {
                    let n = adjacency.len();
                    index.insert(key, n);
                    adjacency.push(BTreeSet::new());
                    depth_of.push(depth_of[id] + 1);
                    queue.push_back((next, n));
                    n
                }
            };
            adjacency[id].insert(nid);
            adjacency[nid].insert(id);
        }
    }

    report.dual_nodes = adjacency.len();
    report.dual_edges = adjacency.iter().map(|a| a.len()).sum::<usize>() / 2;
    report.is_tree = report.dual_edges + 1 == report.dual_nodes;
    report.valence_failures = adjacency.iter().zip(&depth_of).filter(|&(a, &d)| d < radius && a.len() != 3).count();

    let det = |a: (i64, i64), b: (i64, i64)| a.0 * b.1 - a.1 * b.0;
    let titles: Vec<_> = report.titles.iter().copied().collect();
    for (k, &a) in titles.iter().enumerate() {
        for &b in &titles[k + 1..] {
            let (x, y) = (a.min(b), a.max(b));
            let joined = report.joins.contains(&(x, y));
            if joined != (det(a, b).abs() == 1) {
                report.basis_mismatches += 1;
            }
        }
    }

    let values: BTreeMap<(i64, i64), ()> = titles.iter().map(|&t| (t, ())).collect();
    for &(a, b) in &report.joins {
        let sum = normalize_title((a.0 + b.0, a.1 + b.1));
        let diff = normalize_title((a.0 - b.0, a.1 - b.1));
        if !(values.contains_key(&sum) && values.contains_key(&diff)) {
            continue;
        }
        for f in forms {
            report.parallelogram_checks += 1;
            if f.eval(sum) + f.eval(diff) != 2 * f.eval(a) + 2 * f.eval(b) {
                report.parallelogram_failures += 1;
            }
        }
    }
    Ok(report)
}

//! Invariant suites shared by the `verify` command and the test-suite.
//! Each suite counts checks and failures and keeps the first failure.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circle::{circle_from_matrix, hermitian_defect, hermitian_descartes_check, Circle, HermitianForm, Window};
use crate::error::Result;
use crate::explorer::{
    explore_palace, half_primitive_check, lockstep_verify, random_unimodular, tangent_centres_congruent,
    ExplorationConfig, PalaceGraph,
};
use crate::gaussian::{coset_class, gi, GaussMatrix2, GaussianInt};
use crate::lax::Superbasis;
use crate::minkowski::{
    base_quadruple, descartes_companion, descartes_scalar_check, is_descartes, lorentz_apply, lorentz_apply_quadruple,
    mink_inner_twice, pedoe, relate_quadruples, spinor, swap, Quadruple, DISPLAYED_ROTATION,
};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn new(name: &str) -> SuiteReport {
        SuiteReport { name: name.to_string(), ..Default::default() }
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(msg());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.checks > 0 && self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} checks, {} failures", self.name, self.checks, self.failures)?;
        if let Some(m) = &self.first_failure {
            write!(f, " (first: {m})")?;
        }
        Ok(())
    }
}

/// Window used for packings between two parallel lines when none is given.
pub fn default_strip_window() -> Window {
    Window::from_ints(-2, -1, 3, 2).expect("nonempty")
}

/// Where a packing comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Strip,
    Coset(GaussMatrix2),
}

impl Source {
    pub fn parse(s: &str) -> Result<Source> {
        match s {
            "strip" | "base" => Ok(Source::Strip),
            "coset" => Ok(Source::Coset(crate::explorer::example_coset())),
            other => Ok(Source::Coset(crate::render::parse_matrix(other)?)),
        }
    }
}

/// Explores a packing by swaps. Packings between two lines get the default
/// strip window unless one is given.
pub fn packing(source: Source, max_curvature: i64, window: Option<Window>) -> Result<PalaceGraph> {
    let seed = match source {
        Source::Strip => base_quadruple(),
        Source::Coset(n) => lorentz_apply_quadruple(&spinor(&n)?, &base_quadruple()),
    };
    let two_lines = seed.circles().iter().filter(|c| c.b == 0).count() == 2;
    let window = window.or(two_lines.then(default_strip_window));
    let cfg = ExplorationConfig { max_curvature, window, ..Default::default() };
    explore_palace(&seed, &cfg)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn max_entry(m: &GaussMatrix2) -> i64 {
    [m.alpha, m.beta, m.gamma, m.delta].iter().map(|x| x.re.abs().max(x.im.abs())).max().unwrap_or(0)
}

/// A random unit-determinant matrix whose entries have parts bounded by `bound`.
pub fn random_bounded_unimodular<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> GaussMatrix2 {
    loop {
        let len = rng.gen_range(1..16);
        let m = random_unimodular(rng, len);
        if max_entry(&m) <= bound {
            return m;
        }
    }
}

fn random_gauss<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> GaussianInt {
    gi(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

/// The Descartes relation for Hermitian forms on random zero-sum superbases,
/// and the realness of the quantity it rests on.
pub fn hermitian_suite(superbases: usize, forms_each: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("hermitian");
    let mut rng = rng(seed);
    let mut made = 0;
    while made < superbases {
        let m = random_bounded_unimodular(&mut rng, 20);
        let (u, v) = (m.col0(), m.col1());
        let w = [-(u[0] + v[0]), -(u[1] + v[1])];
        if w.iter().any(|x| x.re.abs() > 20 || x.im.abs() > 20) {
            continue;
        }
        let Ok(s) = Superbasis::new(u, v, w) else {
            r.check(false, || format!("columns of {m} do not give a superbasis"));
            made += 1;
            continue;
        };
        made += 1;
        for _ in 0..forms_each {
            let h =
                HermitianForm { a: rng.gen_range(-20..=20), d: rng.gen_range(-20..=20), b: random_gauss(&mut rng, 20) };
            r.check(hermitian_descartes_check(&h, &s), || format!("relation fails for {h:?} on {s:?}"));
            r.check(hermitian_defect(&h, &s).im == 0, || format!("non-real quantity for {h:?} on {s:?}"));
        }
    }
    r
}

/// Parity and norm conditions of the circles of random unit-determinant matrices.
pub fn parity_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("parity");
    let mut rng = rng(seed);
    for _ in 0..samples {
        let m = random_bounded_unimodular(&mut rng, 1000);
        let c = match circle_from_matrix(&m) {
            Ok(c) => c,
            Err(e) => {
                r.check(false, || format!("{m}: {e}"));
                continue;
            }
        };
        r.check(c.b % 2 == 0 && c.bp % 2 == 0, || format!("{m} gives odd curvature in {c}"));
        r.check((c.z.re + c.z.im) % 2 != 0, || format!("{m} gives unmixed centre parity in {c}"));
        r.check(coset_class(&m).ok() == Some(c.coset()), || format!("{m}: coset of {c} disagrees"));
        r.check((c.b as i128) * (c.bp as i128) == (c.z.re as i128).pow(2) + (c.z.im as i128).pow(2) - 1, || {
            format!("{m}: norm relation fails for {c}")
        });
    }
    r
}

/// Homomorphism, form preservation and equivariance of the spinor map, plus
/// the rotation convention.
pub fn spinor_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("spinor");
    let mut rng = rng(seed);
    let rot = GaussMatrix2::from_rows(gi(0, 1), gi(0, 0), gi(0, 0), gi(1, 0));
    r.check(spinor(&rot).ok() == Some(DISPLAYED_ROTATION.transpose()), || "rotation convention".into());
    for _ in 0..samples {
        let m1 = random_bounded_unimodular(&mut rng, 50);
        let m2 = random_bounded_unimodular(&mut rng, 50);
        let (Ok(s1), Ok(s2), Ok(s12)) = (spinor(&m1), spinor(&m2), spinor(&m1.mul(&m2))) else {
            r.check(false, || format!("spinor failed on {m1} or {m2}"));
            continue;
        };
        r.check(s12 == s1.mul(&s2), || format!("not multiplicative on {m1}, {m2}"));
        r.check(s1.preserves_form(), || format!("spinor({m1}) does not preserve the form"));
        r.check(s1.is_proper_orthochronous(), || format!("spinor({m1}) is not proper orthochronous"));
        // m2 doubles as the matrix of a random circle
        let (Ok(c), Ok(mc)) = (circle_from_matrix(&m2), circle_from_matrix(&m1.mul(&m2))) else {
            r.check(false, || format!("circle of {m2} failed"));
            continue;
        };
        r.check(lorentz_apply(&s1, &pedoe(&c)) == pedoe(&mc), || format!("spinor({m1}) moves {c} wrongly"));
    }
    r
}

/// Descartes identities on every chamber of a packing.
pub fn descartes_suite(graph: &PalaceGraph) -> SuiteReport {
    let mut r = SuiteReport::new("descartes");
    for key in graph.chambers.keys() {
        let q = Quadruple::from_circles(*key);
        let b = key.map(|c| c.b);
        r.check(is_descartes(&q), || format!("Gram matrix of {key:?}"));
        r.check(descartes_scalar_check(b[0], b[1], b[2], b[3]), || format!("curvature relation for {b:?}"));
        r.check(key.iter().filter(|c| c.b < 0).count() <= 1, || format!("two negative circles in {key:?}"));
        for i in 0..4 {
            let s = match swap(&q, i) {
                Ok(s) => s,
                Err(e) => {
                    r.check(false, || format!("swap {i} of {key:?}: {e}"));
                    continue;
                }
            };
            let mut others = b;
            others.swap(0, i);
            let expected = descartes_companion(others[1], others[2], others[3], others[0]);
            r.check(s.0[i].b() == expected, || format!("swap {i} curvature of {b:?}"));
            r.check(s.0[i].b() == 2 * (b.iter().sum::<i64>() - b[i]) - b[i], || format!("swap {i} row of {b:?}"));
            r.check(is_descartes(&s), || format!("swap {i} of {key:?} is not Descartes"));
        }
    }
    for (a, b) in graph.edges.keys() {
        r.check(mink_inner_twice(&pedoe(a), &pedoe(b)) == -2, || format!("{a} and {b} are not tangent"));
    }
    r
}

/// Tangent circles have curvature-centres congruent mod 1+i and not divisible by it.
pub fn congruence_suite(graph: &PalaceGraph) -> SuiteReport {
    let mut r = SuiteReport::new("congruence");
    for (a, b) in graph.edges.keys() {
        r.check(tangent_centres_congruent(a, b), || format!("{a} and {b}"));
    }
    r
}

pub fn primitivity_suite(circles: &[Circle]) -> SuiteReport {
    let mut r = SuiteReport::new("primitivity");
    let rep = half_primitive_check(circles);
    r.check(rep.passed(), || format!("{rep:?}"));
    r
}

/// `relate_quadruples` on random pairs of chambers of a packing.
pub fn relate_suite(graph: &PalaceGraph, pairs: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("relate");
    let mut rng = rng(seed);
    let chambers: Vec<_> = graph.chambers.keys().collect();
    if chambers.is_empty() {
        return r;
    }
    for _ in 0..pairs {
        let a = Quadruple::from_circles(**chambers.choose(&mut rng).expect("nonempty")).positively_ordered();
        let b = Quadruple::from_circles(**chambers.choose(&mut rng).expect("nonempty")).positively_ordered();
        match relate_quadruples(&a, &b) {
            Ok(n) => {
                r.check(n.det() == 1, || format!("det {} relating {a:?} and {b:?}", n.det()));
                r.check(n.preserves_form(), || format!("form not preserved relating {a:?} and {b:?}"));
                r.check(lorentz_apply_quadruple(&n, &b) == a, || format!("N·B ≠ A for {a:?}, {b:?}"));
            }
            Err(e) => r.check(false, || format!("{e} relating {a:?} and {b:?}")),
        }
    }
    r
}

pub fn lockstep_suite(depth: usize) -> Result<SuiteReport> {
    let rep = lockstep_verify(depth)?;
    let mut r = SuiteReport::new("lockstep");
    r.checks = rep.edges_checked + rep.chambers;
    r.failures = rep.mismatches;
    r.first_failure = rep.first_mismatch;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        assert!(hermitian_suite(20, 5, 1).passed());
        assert!(parity_suite(50, 2).passed());
        assert!(spinor_suite(50, 3).passed());
        assert!(lockstep_suite(2).unwrap().passed());
    }

    #[test]
    fn packing_suites_pass() {
        let g = packing(Source::Strip, 10, None).unwrap();
        assert!(descartes_suite(&g).passed());
        assert!(congruence_suite(&g).passed());
        assert!(relate_suite(&g, 20, 4).passed());
        let circles: Vec<_> = g.circles.iter().copied().collect();
        assert!(primitivity_suite(&circles).passed());
    }

    #[test]
    fn failures_are_reported() {
        let mut r = SuiteReport::new("x");
        r.check(true, || unreachable!());
        r.check(false, || "first".into());
        r.check(false, || "second".into());
        assert_eq!((r.checks, r.failures, r.first_failure.as_deref()), (3, 2, Some("first")));
        assert!(!r.passed());
        assert_eq!(r.to_string(), "x: 3 checks, 2 failures (first: first)");
    }

    #[test]
    fn sources() {
        assert_eq!(Source::parse("strip").unwrap(), Source::Strip);
        assert!(matches!(Source::parse("coset").unwrap(), Source::Coset(_)));
        assert!(Source::parse("2,0,0,1").is_err());
    }
}

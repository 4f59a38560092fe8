//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;

use apollonian::circle::{circle_from_lattice, Circle, Window};
use apollonian::explorer::{
    enumerate_superpacking, example_coset, explore_palace, half_primitive_check, lockstep_verify, strip_packing,
    strip_relation_holds, ExplorationConfig, Mode,
};
use apollonian::gaussian::{gi, GaussianInt, ProjectivePoint};
use apollonian::lax::{base_chamber, is_superbasis, LaxVector};
use apollonian::minkowski::base_quadruple;
use apollonian::verify::{self, Source, SuiteReport};

const SEED: u64 = 20240601;

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_suite(r: &SuiteReport) -> Outcome {
    Outcome { ok: r.passed(), detail: r.to_string() }
}

fn all(parts: &[&SuiteReport]) -> Outcome {
    Outcome {
        ok: parts.iter().all(|r| r.passed()),
        detail: parts.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; "),
    }
}

fn c(b: i64, bp: i64, re: i64, im: i64) -> Circle {
    Circle::new(b, bp, gi(re, im)).unwrap()
}

fn base_correspondence() -> Outcome {
    let frozen = [c(0, 0, 0, -1), c(0, 2, 0, 1), c(2, 2, 2, 1), c(2, 0, 0, 1)];
    let columns = base_quadruple().circles();
    let v = base_chamber().circles();
    let from_vertices = [v[0], v[2], v[3], v[1]];
    let direct: Vec<Circle> = base_chamber().vertices.iter().map(circle_from_lattice).collect();
    Outcome {
        ok: columns == frozen && from_vertices == frozen && direct == v.to_vec(),
        detail: columns.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
    }
}

fn lockstep() -> Outcome {
    match lockstep_verify(6) {
        Ok(r) => Outcome {
            ok: r.passed() && r.chambers == 1457 && r.per_depth == vec![1, 4, 12, 36, 108, 324, 972],
            detail: format!(
                "{} chambers, {} circles, {} edges, {} mismatches{}",
                r.chambers,
                r.circles,
                r.edges_checked,
                r.mismatches,
                r.first_mismatch.map(|m| format!(" (first: {m})")).unwrap_or_default()
            ),
        },
        Err(e) => Outcome { ok: false, detail: e.to_string() },
    }
}

fn packings(bound: i64) -> Vec<apollonian::explorer::PalaceGraph> {
    vec![
        verify::packing(Source::Strip, bound, None).unwrap(),
        verify::packing(Source::Coset(example_coset()), bound, None).unwrap(),
    ]
}

fn descartes() -> Outcome {
    let g = packings(100);
    all(&[&verify::descartes_suite(&g[0]), &verify::descartes_suite(&g[1])])
}

fn relate() -> Outcome {
    let g = packings(100);
    all(&[&verify::relate_suite(&g[0], 100, SEED), &verify::relate_suite(&g[1], 100, SEED + 1)])
}

fn congruence() -> Outcome {
    let g = packings(100);
    all(&[&verify::congruence_suite(&g[0]), &verify::congruence_suite(&g[1])])
}

fn strip_duality() -> Outcome {
    let cfg = ExplorationConfig::with_curvature(20).window(verify::default_strip_window());
    let orbit = strip_packing(&cfg).unwrap();
    let swaps = explore_palace(&base_quadruple(), &cfg).unwrap();
    let same = orbit.circles == swaps.circles && orbit.edges == swaps.edges && orbit.chambers == swaps.chambers;
    let relation = strip_relation_holds().unwrap();
    Outcome {
        ok: same && relation,
        detail: format!("{} circles, {} chambers; relation {relation}", orbit.circles.len(), orbit.chambers.len()),
    }
}

fn half_primitivity() -> Outcome {
    let g = packings(40);
    let reports: Vec<_> =
        g.iter().map(|p| half_primitive_check(&p.circles.iter().copied().collect::<Vec<_>>())).collect();
    Outcome {
        ok: reports.iter().all(|r| r.passed()),
        detail: reports
            .iter()
            .map(|r| format!("{} circles, half gcd {}", r.circles, r.half_gcd))
            .collect::<Vec<_>>()
            .join("; "),
    }
}

/// Recomputes the co-curvature after moving the curvature-centre.
fn with_centre(b: i64, z: GaussianInt) -> Circle {
    Circle::new(b, (z.norm() - 1) / b, z).unwrap()
}

fn superpacking_stability() -> Outcome {
    let window = Window::from_ints(0, 0, 1, 1).unwrap();
    let cfg = |margin| ExplorationConfig {
        max_curvature: 40,
        window: Some(window),
        mode: Mode::Superpacking,
        margin,
        ..Default::default()
    };
    let a = enumerate_superpacking(&cfg(2)).unwrap();
    let b = enumerate_superpacking(&cfg(4)).unwrap();
    let set: BTreeSet<Circle> = a.circles.iter().copied().collect();
    // quarter turn and mirror of the unit square about its centre
    let turn: BTreeSet<Circle> =
        set.iter().map(|c| with_centre(c.b, c.z.mul_i() + GaussianInt::from_int(c.b))).collect();
    let mirror: BTreeSet<Circle> =
        set.iter().map(|c| with_centre(c.b, -c.z.conj() + GaussianInt::from_int(c.b))).collect();
    let strip = verify::packing(Source::Strip, 40, Some(window)).unwrap();
    let strip_in: BTreeSet<Circle> = strip.circles_in(&window).into_iter().filter(|c| c.b > 0 && c.b < 40).collect();
    let checks = [a.circles == b.circles, turn == set, mirror == set, strip_in.is_subset(&set), !strip_in.is_empty()];
    Outcome {
        ok: checks.iter().all(|x| *x),
        detail: format!(
            "{} circles at margin 2, {} at margin 4; symmetric {}/{}; {} strip circles contained",
            a.circles.len(),
            b.circles.len(),
            turn == set,
            mirror == set,
            strip_in.len()
        ),
    }
}

fn tangency_values() -> Outcome {
    let cases = [((5, 12), 13, ((3, 2), (3, -2))), ((3, 7), 8, ((5, 2), (4, -4))), ((13, 33), 37, ((3, 5), (6, -1)))];
    let mut ok = true;
    let mut labels = Vec::new();
    for ((re, im), den, ((a, b), (c, d))) in cases {
        let p = ProjectivePoint::new(gi(re, im), GaussianInt::from_int(den)).unwrap();
        let got = LaxVector::from_point(&p);
        let want = LaxVector::of(gi(a, b), gi(c, d)).unwrap();
        ok &= got == want;
        labels.push(got);
    }
    let sb = is_superbasis(&labels[0], &labels[1], &labels[2]);
    Outcome { ok: ok && sb, detail: format!("{} {} {}; superbasis {sb}", labels[0], labels[1], labels[2]) }
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("base correspondence", Box::new(base_correspondence)),
        ("lockstep bijection to depth 6", Box::new(lockstep)),
        ("descartes identities at bound 100", Box::new(descartes)),
        ("hermitian relation", Box::new(|| from_suite(&verify::hermitian_suite(1000, 20, SEED)))),
        ("parity of matrix circles", Box::new(|| from_suite(&verify::parity_suite(1000, SEED)))),
        ("spinor map", Box::new(|| from_suite(&verify::spinor_suite(1000, SEED)))),
        ("quadruples related by integer Lorentz matrices", Box::new(relate)),
        ("tangent centres congruent mod 1+i", Box::new(congruence)),
        ("strip orbit equals swap closure", Box::new(strip_duality)),
        ("half-primitivity", Box::new(half_primitivity)),
        ("superpacking stability", Box::new(superpacking_stability)),
        ("tangency lax vectors", Box::new(tangency_values)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        if !out.ok {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {}", i + 1, if out.ok { "PASS" } else { "FAIL" }, out.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Breadth-first generation of packings (palaces) and of the kingdom of
//! chambers, with the checks that tie the two together.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circle::{circle_from_lattice, tangency_point, Circle, Window, Q};
use crate::error::{Error, Result};
use crate::gaussian::{gi, GaussMatrix2, GaussianInt};
use crate::lax::{base_chamber, lattice_equal, Chamber, LaxVector, CHAMBER_EDGES};
use crate::minkowski::{
    base_quadruple, is_descartes, lorentz_apply, lorentz_apply_quadruple, pedoe, spinor, swap_unchecked, LorentzMatrix,
    Quadruple,
};

/// Which kind of enumeration a configuration drives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Palace,
    Superpacking,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorationConfig {
    /// Bound on `|b|` for every circle of an explored chamber.
    pub max_curvature: i64,
    /// Maximum number of swaps away from the seed.
    pub max_depth: Option<usize>,
    /// Region of interest; required for packings between two parallel lines.
    pub window: Option<Window>,
    pub mode: Mode,
    /// Superpacking exploration keeps circles with `|b| ≤ margin · max_curvature`.
    pub margin: i64,
}

impl Default for ExplorationConfig {
    fn default() -> Self {
        ExplorationConfig { max_curvature: 20, max_depth: None, window: None, mode: Mode::Palace, margin: 2 }
    }
}

impl ExplorationConfig {
    pub fn with_curvature(max_curvature: i64) -> Self {
        ExplorationConfig { max_curvature, ..Default::default() }
    }

    /// Depth-limited exploration with no curvature bound.
    pub fn with_depth(depth: usize) -> Self {
        ExplorationConfig { max_curvature: i64::MAX, max_depth: Some(depth), ..Default::default() }
    }

    pub fn window(mut self, w: Window) -> Self {
        self.window = Some(w);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_curvature < 0 {
            return Err(Error::InvalidConfig("max curvature must be nonnegative".into()));
        }
        if self.margin < 1 {
            return Err(Error::InvalidConfig("pruning margin must be at least 1".into()));
        }
        Ok(())
    }
}

/// The tangency graph of the explored part of a packing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PalaceGraph {
    pub circles: BTreeSet<Circle>,
    /// Tangent pairs `(smaller, larger)` labelled by their tangency point.
    pub edges: BTreeMap<(Circle, Circle), LaxVector>,
    /// Chambers (sorted circle quadruples) with their BFS depth.
    pub chambers: BTreeMap<[Circle; 4], usize>,
}

impl PalaceGraph {
    /// Circles meeting `w`, in sorted order.
    pub fn circles_in(&self, w: &Window) -> Vec<Circle> {
        self.circles.iter().copied().filter(|c| w.meets(c)).collect()
    }

    fn record(&mut self, key: [Circle; 4], depth: usize) -> Result<()> {
        for c in key {
            self.circles.insert(c);
        }
        for a in 0..4 {
            for b in (a + 1)..4 {
                if let std::collections::btree_map::Entry::Vacant(e) = self.edges.entry((key[a], key[b])) {
                    e.insert(LaxVector::from_point(&tangency_point(&key[a], &key[b])?));
                }
            }
        }
        self.chambers.insert(key, depth);
        Ok(())
    }
}

fn sorted_key(q: &Quadruple) -> [Circle; 4] {
    q.key()
}

/// Bounding box of the region holding a chamber and everything generated from it.
fn extent(key: &[Circle; 4]) -> Option<Window> {
    if let Some(neg) = key.iter().find(|c| c.b < 0) {
        return Window::of_disk(neg);
    }
    key.iter().filter_map(Window::of_disk).reduce(|a, b| a.hull(&b))
}

fn line_count(key: &[Circle; 4]) -> usize {
    key.iter().filter(|c| c.b == 0).count()
}

/// Chamber admissibility shared by every palace generator.
#[derive(Clone, Debug)]
struct Pruner {
    max_curvature: i64,
    window: Option<Window>,
    /// Window widened to reach the seed, used for chambers between two lines.
    strip_window: Option<Window>,
}

impl Pruner {
    fn new(seed: &[Circle; 4], cfg: &ExplorationConfig) -> Result<Pruner> {
        cfg.validate()?;
        if cfg.window.is_none() && cfg.max_depth.is_none() && line_count(seed) == 2 {
            return Err(Error::UnboundedWithoutWindow);
        }
        let strip_window = match (&cfg.window, extent(seed)) {
            (Some(w), Some(e)) => Some(w.hull(&e)),
            (w, _) => *w,
        };
        Ok(Pruner { max_curvature: cfg.max_curvature, window: cfg.window, strip_window })
    }

    fn admits(&self, key: &[Circle; 4]) -> bool {
        if key.iter().any(|c| c.b.abs() > self.max_curvature) {
            return false;
        }
        let Some(w) = &self.window else {
            return true;
        };
        let target = if line_count(key) == 2 { self.strip_window.as_ref().unwrap_or(w) } else { w };
        match extent(key) {
            Some(e) => e.intersects(target),
            None => true,
        }
    }
}

/// Generic chamber BFS. `expand` yields the four neighbours of a state.
fn chamber_bfs<S, F>(
    seed: S,
    seed_key: [Circle; 4],
    pruner: &Pruner,
    max_depth: Option<usize>,
    mut shuffle: Option<&mut dyn rand::RngCore>,
    mut expand: F,
) -> Result<PalaceGraph>
where
    S: Clone,
    F: FnMut(&S) -> Result<Vec<(S, [Circle; 4])>>,
{
    let mut graph = PalaceGraph::default();
    let mut seen: HashSet<[Circle; 4]> = HashSet::new();
    seen.insert(seed_key);
    graph.record(seed_key, 0)?;
    let mut layer = vec![seed];
    let mut depth = 0;
    while !layer.is_empty() {
        if max_depth.is_some_and(|d| depth >= d) {
            break;
        }
        if let Some(rng) = shuffle.as_deref_mut() {
            layer.shuffle(rng);
        }
        let mut next = Vec::new();
        for state in &layer {
            for (s, key) in expand(state)? {
                if !pruner.admits(&key) || !seen.insert(key) {
                    continue;
                }
                graph.record(key, depth + 1)?;
                next.push(s);
            }
        }
        layer = next;
        depth += 1;
    }
    Ok(graph)
}

/// Closure of a Descartes quadruple under the four swaps, pruned by `cfg`.
pub fn explore_palace(seed: &Quadruple, cfg: &ExplorationConfig) -> Result<PalaceGraph> {
    explore_palace_shuffled(seed, cfg, None)
}

/// As [`explore_palace`], visiting each BFS layer in an order drawn from `rng`.
pub fn explore_palace_shuffled(
    seed: &Quadruple,
    cfg: &ExplorationConfig,
    rng: Option<&mut dyn rand::RngCore>,
) -> Result<PalaceGraph> {
    if !is_descartes(seed) {
        return Err(Error::NotDescartes);
    }
    let key = sorted_key(seed);
    let pruner = Pruner::new(&key, cfg)?;
    if !pruner.admits(&key) {
        return Ok(PalaceGraph::default());
    }
    chamber_bfs(*seed, key, &pruner, cfg.max_depth, rng, |q| {
        Ok((0..4)
            .map(|i| {
                let s = swap_unchecked(q, i);
                (s, sorted_key(&s))
            })
            .collect())
    })
}

/// Chambers reached from `seed` by crossing walls, keyed by their circles.
#[derive(Clone, Debug, Default)]
pub struct KingdomExploration {
    pub chambers: BTreeMap<[Circle; 4], (Chamber, usize)>,
}

impl KingdomExploration {
    pub fn keys(&self) -> BTreeSet<[Circle; 4]> {
        self.chambers.keys().copied().collect()
    }

    /// Edge labels keyed by the sorted circle pair at their ends.
    pub fn edge_labels(&self) -> BTreeMap<(Circle, Circle), LaxVector> {
        let mut out = BTreeMap::new();
        for (ch, _) in self.chambers.values() {
            let circles = ch.circles();
            for (e, &(a, b)) in CHAMBER_EDGES.iter().enumerate() {
                let (x, y) = (circles[a].min(circles[b]), circles[a].max(circles[b]));
                out.insert((x, y), ch.edges[e]);
            }
        }
        out
    }
}

/// Wall-crossing BFS on chambers of the kingdom, without reference to circles
/// except for deduplication.
pub fn explore_kingdom_algebraic(seed: &Chamber, depth: usize) -> Result<KingdomExploration> {
    let mut out = KingdomExploration::default();
    out.chambers.insert(seed.key(), (seed.clone(), 0));
    let mut queue = VecDeque::from([(seed.clone(), 0usize)]);
    while let Some((ch, d)) = queue.pop_front() {
        if d >= depth {
            continue;
        }
        for k in 0..4 {
            let n = ch.neighbor(k)?;
            let key = n.key();
            if out.chambers.contains_key(&key) {
                continue;
            }
            out.chambers.insert(key, (n.clone(), d + 1));
            queue.push_back((n, d + 1));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct LockstepReport {
    pub depth: usize,
    pub chambers: usize,
    pub circles: usize,
    pub edges_checked: usize,
    /// Chambers per BFS depth.
    pub per_depth: Vec<usize>,
    pub mismatches: usize,
    pub first_mismatch: Option<String>,
}

impl LockstepReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    fn fail(&mut self, msg: impl FnOnce() -> String) {
        self.mismatches += 1;
        if self.first_mismatch.is_none() {
            self.first_mismatch = Some(msg());
        }
    }
}

/// Walks the kingdom from the base chamber and the packing from the base
/// quadruple side by side, checking that vertex lattices give the circles,
/// wall crossings match swaps, and edge labels match tangency points.
pub fn lockstep_verify(depth: usize) -> Result<LockstepReport> {
    let mut report = LockstepReport { depth, ..Default::default() };
    let seed_chamber = base_chamber();
    let seed_quad = base_quadruple();

    let mut seen: HashSet<[Circle; 4]> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(seed_chamber.key());
    queue.push_back((seed_chamber, seed_quad, 0usize));
    let mut per_depth = vec![0usize; depth + 1];

    while let Some((ch, quad, d)) = queue.pop_front() {
        per_depth[d] += 1;
        let circles = ch.circles();
        // column j of the quadruple carrying the circle of vertex k
        let mut column = [usize::MAX; 4];
        let qc = quad.circles();
        for k in 0..4 {
            match qc.iter().position(|c| *c == circles[k]) {
                Some(j) => column[k] = j,
                None => report.fail(|| format!("vertex {k} circle {} missing from quadruple at depth {d}", circles[k])),
            }
        }
        if column.contains(&usize::MAX) {
            continue;
        }
        for (e, &(a, b)) in CHAMBER_EDGES.iter().enumerate() {
            report.edges_checked += 1;
            match tangency_point(&circles[a], &circles[b]) {
                Ok(p) if LaxVector::from_point(&p) == ch.edges[e] => {}
                Ok(p) => report.fail(|| format!("edge {e}: label {} but tangency at {p}", ch.edges[e])),
                Err(err) => report.fail(|| format!("edge {e}: {err}")),
            }
        }
        if d >= depth {
            continue;
        }
        for k in 0..4 {
            let n = ch.neighbor(k)?;
            let nq = swap_unchecked(&quad, column[k]);
            if n.key() != nq.key() {
                report.fail(|| format!("crossing wall {k} at depth {d}: kingdom and swap disagree"));
                continue;
            }
            // shared wall vertices carry the same lattices on both sides
            for (a, la) in ch.vertices.iter().enumerate() {
                if a == k {
                    continue;
                }
                let ok = n.vertices.iter().any(|lb| lattice_equal(la, lb));
                if !ok {
                    report.fail(|| format!("wall vertex {a} lattice not shared across wall {k}"));
                }
            }
            if seen.insert(n.key()) {
                queue.push_back((n, nq, d + 1));
            }
        }
    }

    // the two explorations run independently must agree as well
    let kingdom = explore_kingdom_algebraic(&base_chamber(), depth)?;
    let palace = explore_palace(&seed_quad, &ExplorationConfig::with_depth(depth))?;
    let palace_keys: BTreeSet<_> = palace.chambers.keys().copied().collect();
    if kingdom.keys() != palace_keys {
        report.fail(|| "kingdom and palace chamber sets differ".into());
    }
    let kingdom_circles: BTreeSet<Circle> = kingdom.keys().iter().flatten().copied().collect();
    if kingdom_circles != palace.circles {
        report.fail(|| "kingdom and palace circle sets differ".into());
    }
    if kingdom.edge_labels() != palace.edges {
        report.fail(|| "kingdom and palace edge labels differ".into());
    }
    for (ch, _) in kingdom.chambers.values() {
        for l in &ch.vertices {
            let c = circle_from_lattice(l);
            if !c.is_valid() {
                report.fail(|| format!("lattice {l} gives invalid circle {c}"));
            }
        }
    }
    report.chambers = seen.len();
    report.circles = palace.circles.len();
    report.per_depth = per_depth;
    Ok(report)
}

/// The generators of the strip group: `(1 0; 1 1)` and `(0 i; i 1)`.
pub fn strip_generators() -> [GaussMatrix2; 2] {
    let (o, z, i) = (GaussianInt::ONE, GaussianInt::ZERO, GaussianInt::I);
    [GaussMatrix2::from_rows(o, z, o, o), GaussMatrix2::from_rows(z, i, i, o)]
}

/// The coset representative of the packing image `(i 0; 1 i)`.
pub fn example_coset() -> GaussMatrix2 {
    GaussMatrix2::from_rows(gi(0, 1), gi(0, 0), gi(1, 0), gi(0, 1))
}

/// Checks `A = B⁻¹DBD⁻¹B⁻¹DB` in `PGL₂(ℤ[i])` for `A = (0 −1; 1 0)`,
/// `B = (0 i; i 1)`, `C = (1 −1; 1 0)` and `D = C⁻¹A`; also that `D` is the
/// first strip generator.
pub fn strip_relation_holds() -> Result<bool> {
    let (o, z, i) = (GaussianInt::ONE, GaussianInt::ZERO, GaussianInt::I);
    let a = GaussMatrix2::from_rows(z, -o, o, z);
    let b = GaussMatrix2::from_rows(z, i, i, o);
    let c = GaussMatrix2::from_rows(o, -o, o, z);
    let d = c.inverse()?.mul(&a);
    let bi = b.inverse()?;
    let di = d.inverse()?;
    let word = [bi, d, b, di, bi, d, b].iter().fold(GaussMatrix2::IDENTITY, |acc, m| acc.mul(m));
    Ok(word.projectively_eq(&a) && d.projectively_eq(&strip_generators()[0]))
}

fn projective_canonical(m: &GaussMatrix2) -> GaussMatrix2 {
    let first = [m.alpha, m.gamma, m.beta, m.delta].into_iter().find(|x| !x.is_zero()).unwrap_or(GaussianInt::ONE);
    m.scale(first.canonical_unit())
}

/// Elements `h_k` of the strip group with `h_k · base = swap_k(base)` as
/// unordered quadruples, found by a breadth-first search over words.
pub fn strip_wall_crossers() -> &'static [GaussMatrix2; 4] {
    static CROSSERS: OnceLock<[GaussMatrix2; 4]> = OnceLock::new();
    CROSSERS.get_or_init(|| {
        let base = base_quadruple();
        let targets: Vec<[Circle; 4]> = (0..4).map(|k| swap_unchecked(&base, k).key()).collect();
        let mut found: [Option<GaussMatrix2>; 4] = [None; 4];
        let gens = strip_generators();
        let mut letters = Vec::new();
        for g in gens {
            letters.push(g);
            letters.push(g.inverse().expect("unit determinant"));
        }
        let mut seen = HashSet::from([projective_canonical(&GaussMatrix2::IDENTITY)]);
        let mut layer = vec![GaussMatrix2::IDENTITY];
        while found.iter().any(Option::is_none) && !layer.is_empty() {
            let mut next = Vec::new();
            for w in &layer {
                for l in &letters {
                    let m = w.mul(l);
                    if !seen.insert(projective_canonical(&m)) {
                        continue;
                    }
                    let img = lorentz_apply_quadruple(&spinor(&m).expect("unit determinant"), &base).key();
                    for (k, t) in targets.iter().enumerate() {
                        if found[k].is_none() && *t == img {
                            found[k] = Some(m);
                        }
                    }
                    next.push(m);
                }
            }
            layer = next;
        }
        found.map(|m| m.expect("the strip group moves the base chamber across each wall"))
    })
}

/// Images of the base quadruple under `N·Γ`, generated through the spinor map.
pub fn coset_packing(n: &GaussMatrix2, cfg: &ExplorationConfig) -> Result<PalaceGraph> {
    n.ensure_unit_det()?;
    let base = base_quadruple();
    let seed_quad = lorentz_apply_quadruple(&spinor(n)?, &base);
    let key = seed_quad.key();
    let pruner = Pruner::new(&key, cfg)?;
    if !pruner.admits(&key) {
        return Ok(PalaceGraph::default());
    }
    let crossers = strip_wall_crossers();
    chamber_bfs(*n, key, &pruner, cfg.max_depth, None, |g| {
        crossers
            .iter()
            .map(|h| {
                let m = g.mul(h);
                let q = lorentz_apply_quadruple(&spinor(&m)?, &base);
                Ok((m, q.key()))
            })
            .collect()
    })
}

pub fn strip_packing(cfg: &ExplorationConfig) -> Result<PalaceGraph> {
    coset_packing(&GaussMatrix2::IDENTITY, cfg)
}

/// Summary of the integrality of a set of circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPrimitiveReport {
    pub circles: usize,
    pub all_even: bool,
    /// gcd of the half-curvatures (of the curvatures when some are odd).
    pub half_gcd: i64,
    /// Curvature-centres are Gaussian integers; always true for stored circles.
    pub strongly_integral: bool,
}

impl HalfPrimitiveReport {
    pub fn passed(&self) -> bool {
        self.circles > 0 && self.all_even && self.half_gcd == 1 && self.strongly_integral
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn half_primitive_check(circles: &[Circle]) -> HalfPrimitiveReport {
    let all_even = circles.iter().all(|c| c.b % 2 == 0);
    let g = circles.iter().fold(0, |g, c| gcd(g, c.b));
    HalfPrimitiveReport {
        circles: circles.len(),
        all_even,
        half_gcd: if all_even { g / 2 } else { g },
        strongly_integral: true,
    }
}

/// Moves a circle by the translation putting its curvature-centre in
/// `[0, |b|)²`; lines are moved through the origin.
pub fn translation_canonical(c: &Circle) -> (Circle, GaussianInt) {
    use crate::gaussian::floor_div;
    if c.b == 0 {
        // bp' = bp + 2 Re(z t̄) with z a unit; take t = s z
        let s = -c.bp / 2;
        let t = c.z * s;
        return (c.translate(t), t);
    }
    let b = c.b.abs();
    let t = GaussianInt::new(-floor_div(c.z.re, b), -floor_div(c.z.im, b));
    let t = if c.b > 0 { t } else { -t };
    (c.translate(t), t)
}

/// Translates `t` with `|bp(c + t)| ≤ bound`, for a translation-canonical `c`.
fn inversion_translates(c: &Circle, bound: i64) -> Vec<GaussianInt> {
    if c.b == 0 {
        // only the offset of a line changes: bp' = bp + 2s for t = s z
        let half = bound / 2;
        return (-half..=half).map(|s| c.z * s).filter(|t| c.translate(*t).bp.abs() <= bound).collect();
    }
    let b = c.b.abs() as f64;
    let (cx, cy) = (c.z.re as f64 / c.b as f64, c.z.im as f64 / c.b as f64);
    let r = (bound as f64 * b + 1.0).sqrt() / b + 1.0;
    let mut out = Vec::new();
    for x in ((-cx - r).floor() as i64)..=((-cx + r).ceil() as i64) {
        for y in ((-cy - r).floor() as i64)..=((-cy + r).ceil() as i64) {
            let t = GaussianInt::new(x, y);
            if c.translate(t).bp.abs() <= bound {
                out.push(t);
            }
        }
    }
    out
}

/// Outcome of a superpacking enumeration.
#[derive(Clone, Debug, Default)]
pub struct Superpacking {
    /// Circles with `0 < b < max_curvature` meeting the window, sorted.
    pub circles: Vec<Circle>,
    /// Translation classes of oriented circles visited, of either sign.
    pub visited_classes: usize,
    /// Translation classes with `0 < b < max_curvature`, one representative each.
    pub circle_classes: BTreeSet<Circle>,
}

/// All Gaussian circles with `0 < b < max_curvature` meeting the window.
///
/// The superpacking is the orbit of the real line under `PGL₂(ℤ[i])`. The
/// orbit is explored modulo translations by ℤ[i], closing under
/// `(i 0; 0 1)` and `(0 −1; 1 0)` applied after every translation, keeping
/// circles with `|b| ≤ margin · max_curvature`.
///
/// Margin 1 is already complete. A circle with `b ≠ 0` can be translated to
/// put its centre in `[−½, ½]²`, and inverting it then gives a circle with at
/// most half its curvature, so every circle descends through bounded circles
/// to a line.
pub fn enumerate_superpacking(cfg: &ExplorationConfig) -> Result<Superpacking> {
    cfg.validate()?;
    let window = cfg.window.ok_or(Error::UnboundedWithoutWindow)?;
    let bound =
        cfg.margin.checked_mul(cfg.max_curvature).ok_or_else(|| Error::InvalidConfig("bound overflows".into()))?;
    let (o, z, i) = (GaussianInt::ONE, GaussianInt::ZERO, GaussianInt::I);
    let invert = spinor(&GaussMatrix2::from_rows(z, -o, o, z))?;
    let rotate = spinor(&GaussMatrix2::from_rows(i, z, z, o))?;
    let apply = |m: &LorentzMatrix, c: &Circle| lorentz_apply(m, &pedoe(c)).to_circle();

    let real_line = translation_canonical(&Circle::new(0, 0, gi(0, -1))?).0;
    let mut seen = HashSet::from([real_line]);
    let mut queue = VecDeque::from([real_line]);
    let mut push = |c: Circle, queue: &mut VecDeque<Circle>| {
        if c.b.abs() > bound {
            return;
        }
        let k = translation_canonical(&c).0;
        if seen.insert(k) {
            queue.push_back(k);
        }
    };
    let mut classes = BTreeSet::new();
    let mut visited = 0;
    while let Some(c) = queue.pop_front() {
        visited += 1;
        if c.b > 0 && c.b < cfg.max_curvature {
            classes.insert(c);
        }
        push(apply(&rotate, &c), &mut queue);
        for t in inversion_translates(&c, bound) {
            push(apply(&invert, &c.translate(t)), &mut queue);
        }
    }

    let circles = place_in_window(&classes, &window);
    Ok(Superpacking { circles, visited_classes: visited, circle_classes: classes })
}

/// Every translate of the given round circles meeting the window, sorted.
pub fn place_in_window(classes: &BTreeSet<Circle>, window: &Window) -> Vec<Circle> {
    let mut out = BTreeSet::new();
    for c in classes {
        debug_assert!(c.b > 0);
        let b = c.b as i128;
        let r = Q::new(1, b);
        let (cx, cy) = (Q::new(c.z.re as i128, b), Q::new(c.z.im as i128, b));
        let lo = |w: Q, x: Q| ((w - r - x).floor().to_integer()) as i64;
        let hi = |w: Q, x: Q| ((w + r - x).ceil().to_integer()) as i64;
        for tx in lo(window.x0, cx)..=hi(window.x1, cx) {
            for ty in lo(window.y0, cy)..=hi(window.y1, cy) {
                let moved = c.translate(GaussianInt::new(tx, ty));
                if window.meets(&moved) {
                    out.insert(moved);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Draws a pseudo-random element of `PGL₂(ℤ[i])` as a word of `len` letters.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, len: usize) -> GaussMatrix2 {
    let (o, z, i) = (GaussianInt::ONE, GaussianInt::ZERO, GaussianInt::I);
    let letters = [
        GaussMatrix2::from_rows(o, o, z, o),
        GaussMatrix2::from_rows(o, -o, z, o),
        GaussMatrix2::from_rows(o, i, z, o),
        GaussMatrix2::from_rows(o, -i, z, o),
        GaussMatrix2::from_rows(z, -o, o, z),
        GaussMatrix2::from_rows(i, z, z, o),
        GaussMatrix2::from_rows(o, z, o, o),
        GaussMatrix2::from_rows(o, z, i, o),
    ];
    (0..len).fold(GaussMatrix2::IDENTITY, |acc, _| acc.mul(&letters[rng.gen_range(0..letters.len())]))
}

/// Curvature-centre congruence for tangent circles: `z₁ ≡ z₂ ≢ 0 (mod 1+i)`.
pub fn tangent_centres_congruent(c1: &Circle, c2: &Circle) -> bool {
    let d = c1.z - c2.z;
    d.divisible_by_one_plus_i() && !c1.z.divisible_by_one_plus_i() && !c2.z.divisible_by_one_plus_i()
}

use std::collections::HashMap;
use std::sync::OnceLock;

use anyhow::{ensure, Result};

use super::perm::Permutation;

/// A permutation group given by generators, with a lazily built stabilizer chain.
pub struct GeneratedGroup {
    degree: u32,
    generators: Vec<Permutation>,
    chain: OnceLock<BaseChain>,
}

impl Clone for GeneratedGroup {
    fn clone(&self) -> Self {
        GeneratedGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for GeneratedGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GeneratedGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl GeneratedGroup {
    pub fn new(degree: u32, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            ensure!(
                g.degree() == degree,
                "generator degree {} != group degree {}",
                g.degree(),
                degree
            );
        }
        let mut generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        if generators.is_empty() {
            generators.push(Permutation::identity(degree));
        }
        Ok(GeneratedGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: u32) -> Self {
        GeneratedGroup::new(degree, vec![]).unwrap()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &BaseChain {
        self.chain
            .get_or_init(|| BaseChain::build(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_member(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain().sift(g.clone()).is_none()
    }

    /// The subgroup fixing every point of `points`, as an explicitly generated group.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> GeneratedGroup {
        let chain = BaseChain::build(self.degree, &self.generators, points);
        let gens = chain.stabilizer_generators(points.len());
        GeneratedGroup::new(self.degree, gens).unwrap()
    }

    /// The subgroup preserving the set `{a, b}`.
    pub fn two_set_stabilizer(&self, a: u32, b: u32) -> GeneratedGroup {
        assert_ne!(a, b);
        let fix = self.pointwise_stabilizer(&[a, b]);
        let mut gens = fix.generators().to_vec();
        let swap = transporter(&self.generators, (a, b), (b, a), |g, &(x, y)| {
            (g.apply(x), g.apply(y))
        });
        if let Some(t) = swap {
            gens.push(t);
        }
        GeneratedGroup::new(self.degree, gens).unwrap()
    }

    /// The conjugate group `t^-1 G t`.
    pub fn conjugated(&self, t: &Permutation) -> GeneratedGroup {
        let gens = self
            .generators
            .iter()
            .map(|g| g.conjugate_by(t))
            .collect();
        GeneratedGroup::new(self.degree, gens).unwrap()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0
            && orbit(&self.generators, 0u32, |g, &x| g.apply(x)).len() as u32 == self.degree
    }

    /// Whether the group is k-transitive on its domain.
    pub fn is_k_transitive(&self, k: u32) -> bool {
        assert!(k >= 1 && k <= self.degree);
        let start: Vec<u32> = (0..k).collect();
        let expected: u128 = (0..k).map(|i| (self.degree - i) as u128).product();
        let orb = orbit(&self.generators, start, |g, t| {
            t.iter().map(|&x| g.apply(x)).collect::<Vec<u32>>()
        });
        orb.len() as u128 == expected
    }

    /// All elements by breadth-first closure, in a deterministic order, or
    /// `None` if the group has more than `cap` elements.
    pub fn enumerate_elements(&self, cap: usize) -> Option<Vec<Permutation>> {
        let id = Permutation::identity(self.degree);
        let mut seen: std::collections::HashSet<Permutation> = std::collections::HashSet::new();
        let mut out = vec![id.clone()];
        seen.insert(id);
        let mut head = 0;
        while head < out.len() {
            let cur = out[head].clone();
            head += 1;
            for g in &self.generators {
                let next = cur.compose(g);
                if seen.insert(next.clone()) {
                    if out.len() >= cap {
                        return None;
                    }
                    out.push(next);
                }
            }
        }
        Some(out)
    }
}

/// One level of a stabilizer chain: the orbit of `point` under the level's
/// generators, with explicit transversal permutations mapping `point` to each
/// orbit element.
struct Level {
    point: u32,
    orbit: Vec<u32>,
    transversal: HashMap<u32, Permutation>,
}

impl Level {
    fn compute(degree: u32, point: u32, gens: &[Permutation]) -> Level {
        let (orbit, transversal) =
            orbit_transversal(degree, gens, point, |g, &x| g.apply(x));
        Level {
            point,
            orbit,
            transversal,
        }
    }
}

/// A base and strong generating set with explicit transversals, built by the
/// deterministic Schreier-Sims procedure. The construction verifies itself by
/// sifting every Schreier generator at every level (that is what the main loop
/// does before it is allowed to finish) and, as a final check, every original
/// generator.
pub struct BaseChain {
    degree: u32,
    base: Vec<u32>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl BaseChain {
    pub fn build(degree: u32, generators: &[Permutation], base_prefix: &[u32]) -> BaseChain {
        let mut base: Vec<u32> = Vec::new();
        for &p in base_prefix {
            assert!(p < degree, "base point {} out of range", p);
            assert!(!base.contains(&p), "base prefix repeats point {}", p);
            base.push(p);
        }
        let mut strong: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved().unwrap());
            }
        }
        if base.is_empty() {
            // trivial group with no forced base points
            return BaseChain {
                degree,
                base,
                strong,
                levels: Vec::new(),
            };
        }

        let level_gens = |strong: &[Permutation], base: &[u32], i: usize| -> Vec<Permutation> {
            strong
                .iter()
                .filter(|g| base[..i].iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect()
        };

        let mut levels: Vec<Level> = (0..base.len())
            .map(|i| Level::compute(degree, base[i], &level_gens(&strong, &base, i)))
            .collect();

        let mut i = levels.len() as isize - 1;
        'outer: while i >= 0 {
            let iu = i as usize;
            levels[iu] = Level::compute(degree, base[iu], &level_gens(&strong, &base, iu));
            let gens_here = level_gens(&strong, &base, iu);
            for oi in 0..levels[iu].orbit.len() {
                let p = levels[iu].orbit[oi];
                let tp = levels[iu].transversal[&p].clone();
                for s in &gens_here {
                    let g = tp.compose(s);
                    let q = g.apply(base[iu]);
                    let schreier = g.compose(&levels[iu].transversal[&q].inverse());
                    if let Some((j, residue)) = sift_from(&levels, &base, iu + 1, schreier) {
                        if base.iter().all(|&b| residue.apply(b) == b) {
                            // residue fixes the whole base: extend it
                            base.push(residue.first_moved().unwrap());
                            levels.push(Level::compute(degree, *base.last().unwrap(), &[]));
                            strong.push(residue);
                            i = base.len() as isize - 1;
                        } else {
                            strong.push(residue);
                            i = j as isize;
                        }
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }

        let chain = BaseChain {
            degree,
            base,
            strong,
            levels,
        };
        for g in generators {
            assert!(
                chain.sift(g.clone()).is_none(),
                "stabilizer chain failed to absorb a generator"
            );
        }
        chain
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .expect("group order overflows u128")
        })
    }

    /// Sifts `g` through the chain; `None` means membership, otherwise the
    /// level and residue where sifting got stuck.
    fn sift(&self, g: Permutation) -> Option<(usize, Permutation)> {
        sift_from_raw(&self.levels, 0, g)
    }

    /// Generators of the stabilizer of the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        assert!(k <= self.base.len() || self.strong.is_empty());
        self.strong
            .iter()
            .filter(|g| self.base[..k.min(self.base.len())].iter().all(|&b| g.apply(b) == b))
            .cloned()
            .collect()
    }

    /// Size of the orbit of the first base point (level-0 orbit).
    pub fn top_orbit_len(&self) -> usize {
        self.levels.first().map_or(1, |l| l.orbit.len())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

/// Sift starting at `start`, working against already-verified deeper levels.
/// Returns the failure level and residue, or `None` when `g` sifts to identity.
fn sift_from(
    levels: &[Level],
    _base: &[u32],
    start: usize,
    g: Permutation,
) -> Option<(usize, Permutation)> {
    sift_from_raw(levels, start, g)
}

fn sift_from_raw(levels: &[Level], start: usize, mut g: Permutation) -> Option<(usize, Permutation)> {
    for (j, level) in levels.iter().enumerate().skip(start) {
        let x = g.apply(level.point);
        match level.transversal.get(&x) {
            Some(t) => g = g.compose(&t.inverse()),
            None => return Some((j, g)),
        }
    }
    if g.is_identity() {
        None
    } else {
        Some((levels.len(), g))
    }
}

/// Orbit of `start` under `gens` in breadth-first order, with a transversal
/// mapping `start` to each orbit element.
pub fn orbit_transversal<T, F>(
    degree: u32,
    gens: &[Permutation],
    start: T,
    apply: F,
) -> (Vec<T>, HashMap<T, Permutation>)
where
    T: Eq + std::hash::Hash + Clone,
    F: Fn(&Permutation, &T) -> T,
{
    let mut orbit = vec![start.clone()];
    let mut transversal = HashMap::new();
    transversal.insert(start, Permutation::identity(degree));
    let mut head = 0;
    while head < orbit.len() {
        let cur = orbit[head].clone();
        head += 1;
        let cur_t = transversal[&cur].clone();
        for g in gens {
            let next = apply(g, &cur);
            if !transversal.contains_key(&next) {
                transversal.insert(next.clone(), cur_t.compose(g));
                orbit.push(next);
            }
        }
    }
    (orbit, transversal)
}

/// Orbit of `start` under `gens`, in breadth-first order.
pub fn orbit<T, F>(gens: &[Permutation], start: T, apply: F) -> Vec<T>
where
    T: Eq + std::hash::Hash + Clone,
    F: Fn(&Permutation, &T) -> T,
{
    let mut seen: std::collections::HashSet<T> = std::collections::HashSet::new();
    let mut orbit = vec![start.clone()];
    seen.insert(start);
    let mut head = 0;
    while head < orbit.len() {
        let cur = orbit[head].clone();
        head += 1;
        for g in gens {
            let next = apply(g, &cur);
            if seen.insert(next.clone()) {
                orbit.push(next);
            }
        }
    }
    orbit
}

/// A group element mapping `from` to `to` under the given action, found by
/// breadth-first search over the generators, or `None` if the two lie in
/// different orbits.
pub fn transporter<T, F>(gens: &[Permutation], from: T, to: T, apply: F) -> Option<Permutation>
where
    T: Eq + std::hash::Hash + Clone,
    F: Fn(&Permutation, &T) -> T,
{
    let degree = match gens.first() {
        Some(g) => g.degree(),
        None => return None,
    };
    let (_, transversal) = orbit_transversal(degree, gens, from, apply);
    transversal.get(&to).cloned()
}

/// Partition of `domain` into orbits. Each orbit is in breadth-first order
/// seeded from the earliest unseen domain element, and orbits appear in the
/// order their seeds occur in `domain`.
pub fn orbits_on<T, F, I>(gens: &[Permutation], domain: I, apply: F) -> Vec<Vec<T>>
where
    T: Eq + std::hash::Hash + Clone,
    F: Fn(&Permutation, &T) -> T,
    I: IntoIterator<Item = T>,
{
    let mut seen: std::collections::HashSet<T> = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in domain {
        if seen.contains(&x) {
            continue;
        }
        let orb = orbit(gens, x, &apply);
        for y in &orb {
            seen.insert(y.clone());
        }
        out.push(orb);
    }
    out
}

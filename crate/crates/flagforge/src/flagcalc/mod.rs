//! The core pipeline: orbits on complement flags, feasibility, orbits on
//! compatible flag pairs, self-pairedness, graph construction and the
//! symmetry certificate.

use std::collections::{HashMap, HashSet};

use anyhow::{ensure, Context, Result};

use crate::catalog::CatalogEntry;
use crate::designs::Flag;
use crate::permcore::{orbit, orbit_transversal, orbits_on, transporter, Permutation};

/// Sorted list of the points avoiding a line.
pub fn co_line(entry: &CatalogEntry, line: u32) -> Vec<u32> {
    (0..entry.points())
        .filter(|&p| !entry.space.line_contains(line, p))
        .collect()
}

/// Canonical sort key for a complement flag: the point together with the
/// sorted set of points it shares a co-block with.
fn flag_key(entry: &CatalogEntry, f: Flag) -> (u32, Vec<u32>) {
    (f.point, co_line(entry, f.line))
}

fn canonical_min(entry: &CatalogEntry, flags: &[Flag]) -> Flag {
    *flags
        .iter()
        .min_by_key(|f| flag_key(entry, **f))
        .expect("non-empty orbit")
}

/// One orbit of the group on the complement flags of its linear space.
#[derive(Clone, Debug)]
pub struct FlagOrbit {
    pub representative: Flag,
    pub size: u128,
    /// Number of orbit flags based at any one point.
    pub per_point_count: u64,
    pub feasible: bool,
    pub reason: String,
}

/// All orbits on complement flags, in canonical-representative order, with
/// feasibility evaluated on each.
pub fn flag_orbits(entry: &CatalogEntry) -> Vec<FlagOrbit> {
    let flags = entry.space.complement_flags();
    let orbits = orbits_on(entry.group.generators(), flags, |g, &f| {
        entry.apply_flag(g, f)
    });
    let mut out: Vec<FlagOrbit> = orbits
        .iter()
        .map(|orb| {
            let representative = canonical_min(entry, orb);
            let u = entry.points() as u128;
            let size = orb.len() as u128;
            // point-transitivity spreads the orbit evenly over the points
            assert_eq!(size % u, 0, "flag orbit not balanced over points");
            let per_point_count = (size / u) as u64;
            let mut fo = FlagOrbit {
                representative,
                size,
                per_point_count,
                feasible: false,
                reason: String::new(),
            };
            let (feasible, reason) = check_feasible(entry, &fo);
            fo.feasible = feasible;
            fo.reason = reason;
            fo
        })
        .collect();
    out.sort_by_key(|o| flag_key(entry, o.representative));
    out
}

/// Feasibility of a flag orbit: at least two flags per point, and the flag
/// stabilizer transitive on the remaining points of the co-block.
pub fn check_feasible(entry: &CatalogEntry, fo: &FlagOrbit) -> (bool, String) {
    if fo.per_point_count < 2 {
        return (false, "fewer than two orbit flags per point".to_string());
    }
    let f = fo.representative;
    let stab = entry.flag_stabilizer_in(&entry.group, f);
    let rest: Vec<u32> = co_line(entry, f.line)
        .into_iter()
        .filter(|&p| p != f.point)
        .collect();
    let orb = orbit(stab.generators(), rest[0], |g, &x| g.apply(x));
    debug_assert!(orb.iter().all(|x| rest.contains(x)));
    if orb.len() == rest.len() {
        (true, "feasible".to_string())
    } else {
        (
            false,
            format!(
                "flag stabilizer has orbit of length {} on the {} remaining co-block points",
                orb.len(),
                rest.len()
            ),
        )
    }
}

/// Advisory arithmetic screens evaluated before the full feasibility check.
/// Neither is a substitute for `check_feasible`.
#[derive(Clone, Copy, Debug)]
pub struct PrefilterReport {
    /// |L|·(|L|−1) divides |P|−1.
    pub pair_count_divides: bool,
    /// (|P|−|L|)·(|P|−|L|−1) divides the order of a line stabilizer.
    pub line_stabilizer_divides: bool,
}

pub fn prefilter(entry: &CatalogEntry) -> PrefilterReport {
    let u = entry.points() as u128;
    let l = entry.space.line_size() as u128;
    let gl = entry.line_stabilizer_in(&entry.group, 0).order();
    PrefilterReport {
        pair_count_divides: (u - 1) % (l * (l - 1)) == 0,
        line_stabilizer_divides: gl % ((u - l) * (u - l - 1)) == 0,
    }
}

/// One orbit of the group on compatible ordered pairs of complement flags,
/// i.e. one candidate adjacency relation.
#[derive(Clone, Debug)]
pub struct PairClass {
    /// Canonical pair ((σ,L),(τ,N)): σ≠τ and neither point lies on either line.
    pub rep: (Flag, Flag),
    /// Size of the whole orbit on ordered pairs.
    pub orbit_size: u128,
    /// Orbit of the second flag under the stabilizer of the first; this is
    /// the neighbour set of the first flag in the graph this class defines.
    pub neighbours: Vec<Flag>,
    /// Cross-block valency: the orbit of N under the stabilizer of σ, τ, L.
    pub ell: u64,
    pub self_paired: bool,
    /// An element exchanging the two flags of `rep`, when one exists.
    pub witness: Option<Permutation>,
}

/// Classify the compatible second flags under the stabilizer of a fixed
/// representative first flag. Because the graph's vertex orbit is a single
/// group orbit, these stabilizer orbits biject with the group orbits on
/// compatible pairs.
pub fn pair_classes(entry: &CatalogEntry, fo: &FlagOrbit) -> Result<Vec<PairClass>> {
    ensure!(fo.feasible, "pair classification requires a feasible orbit");
    let f1 = fo.representative;
    let orbit_flags = orbit(entry.group.generators(), f1, |g, &f| entry.apply_flag(g, f));
    let mut compatible: Vec<Flag> = orbit_flags
        .iter()
        .copied()
        .filter(|f2| {
            f2.point != f1.point
                && !entry.space.line_contains(f1.line, f2.point)
                && !entry.space.line_contains(f2.line, f1.point)
        })
        .collect();
    compatible.sort_by_cached_key(|f| flag_key(entry, *f));

    let stab = entry.flag_stabilizer_in(&entry.group, f1);
    let u = entry.points() as u64;
    let l = entry.space.line_size() as u64;
    let mut classes = Vec::new();
    for orb in orbits_on(stab.generators(), compatible, |g, &f| entry.apply_flag(g, f)) {
        let f2 = canonical_min(entry, &orb);
        // the stabilizer is transitive on the candidate second points, so
        // the orbit splits evenly over them
        assert_eq!(orb.len() as u64 % (u - l - 1), 0, "unbalanced pair class");
        let ell = orb.len() as u64 / (u - l - 1);
        // independent recount: orbit of the second line under the
        // stabilizer of both points and the first line
        let ell_check = {
            let s = stab.pointwise_stabilizer(&[f2.point]);
            orbit(s.generators(), f2.line, |g, &n| entry.apply_line(g, n)).len() as u64
        };
        assert_eq!(ell, ell_check, "cross-block valency mismatch");
        let witness = swap_witness(entry, f1, f2);
        classes.push(PairClass {
            rep: (f1, f2),
            orbit_size: fo.size * orb.len() as u128,
            neighbours: orb,
            ell,
            self_paired: witness.is_some(),
            witness,
        });
    }
    classes.sort_by_cached_key(|c| (c.ell, flag_key(entry, c.rep.1)));
    Ok(classes)
}

/// An element carrying (f1,f2) to (f2,f1), if the reversed pair lies in the
/// same orbit. Any element g0 carrying f1 to f2 reduces the question to
/// whether the stabilizer of f2 carries the image of f2 back to f1.
pub fn swap_witness(entry: &CatalogEntry, f1: Flag, f2: Flag) -> Option<Permutation> {
    let g0 = transporter(entry.group.generators(), f1, f2, |g, &f| {
        entry.apply_flag(g, f)
    })
    .expect("flags lie in the same orbit");
    let stab2 = entry.flag_stabilizer_in(&entry.group, f2);
    let k = transporter(
        stab2.generators(),
        entry.apply_flag(&g0, f2),
        f1,
        |g, &f| entry.apply_flag(g, f),
    )?;
    let w = g0.compose(&k);
    assert_eq!(entry.apply_flag(&w, f1), f2);
    assert_eq!(entry.apply_flag(&w, f2), f1);
    Some(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildMode {
    Stats,
    Full,
}

/// Statistics of one flag graph, computed either from stabilizer orbits
/// alone (stats mode) or measured on a materialized graph (full mode).
#[derive(Clone, Debug)]
pub struct FlagGraphReport {
    pub entry: String,
    pub order: u128,
    pub per_point_count: u64,
    pub cross_block_vertex_count: u64,
    pub ell: u64,
    pub valency: u64,
    pub arc_count: u128,
    /// Block-design parameters of the partition into per-point blocks:
    /// each block is a point set of size v, each other block cuts out a
    /// block of size k, giving b blocks and replication number r.
    pub v: u64,
    pub b: u64,
    pub k: u64,
    pub r: u64,
    pub quotient_complete: Option<bool>,
    pub blocks_independent: Option<bool>,
    pub dual_design_repeated_blocks: Option<bool>,
}

/// Materialized flag graph in compressed adjacency form. Every vertex has
/// the same degree, so vertex i's neighbours occupy the i-th uniform slice
/// of `adj`.
pub struct FlagGraph {
    pub vertices: Vec<Flag>,
    pub index: HashMap<Flag, u32>,
    pub valency: usize,
    pub adj: Vec<u32>,
}

impl FlagGraph {
    pub fn neighbours(&self, v: u32) -> &[u32] {
        let s = v as usize * self.valency;
        &self.adj[s..s + self.valency]
    }

    pub fn edge_count(&self) -> u128 {
        self.adj.len() as u128 / 2
    }
}

/// Build the graph a self-paired class defines on a feasible flag orbit.
pub fn build_graph(
    entry: &CatalogEntry,
    fo: &FlagOrbit,
    cls: &PairClass,
    mode: BuildMode,
    workers: usize,
) -> Result<(FlagGraphReport, Option<FlagGraph>)> {
    ensure!(cls.self_paired, "graph construction requires a self-paired class");
    let u = entry.points() as u64;
    let l = entry.space.line_size() as u64;
    let valency = (u - l - 1) * cls.ell;
    let arc_count = fo
        .size
        .checked_mul(valency as u128)
        .context("arc count overflow")?;
    assert_eq!(arc_count, cls.orbit_size, "arc count disagrees with pair orbit size");

    let (f1, f2) = cls.rep;
    // cross-block vertex count from the two-point stabilizer
    let s2 = entry.group.pointwise_stabilizer(&[f1.point, f2.point]);
    let cross = orbit(s2.generators(), f1.line, |g, &n| entry.apply_line(g, n)).len() as u64;

    let v = fo.per_point_count;
    let b = u - 1;
    let k = cross;
    ensure!((k as u128 * b as u128) % v as u128 == 0, "replication count not integral");
    let r = ((k as u128 * b as u128) / v as u128) as u64;

    let report = FlagGraphReport {
        entry: entry.name.clone(),
        order: fo.size,
        per_point_count: v,
        cross_block_vertex_count: cross,
        ell: cls.ell,
        valency,
        arc_count,
        v,
        b,
        k,
        r,
        quotient_complete: None,
        blocks_independent: None,
        dual_design_repeated_blocks: None,
    };
    if mode == BuildMode::Stats {
        return Ok((report, None));
    }

    let (orbit_flags, transversal) =
        orbit_transversal(entry.group.degree(), entry.group.generators(), f1, |g, &f| {
            entry.apply_flag(g, f)
        });
    let mut vertices = orbit_flags;
    vertices.sort_by_cached_key(|f| flag_key(entry, *f));
    let index: HashMap<Flag, u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, f)| (*f, i as u32))
        .collect();

    // translate the stored neighbour set of the representative to every
    // vertex via its transversal element
    let val = valency as usize;
    let mut adj = vec![0u32; vertices.len() * val];
    let workers = workers.max(1);
    let chunk = vertices.len().div_ceil(workers);
    std::thread::scope(|scope| {
        for (vs, slab) in vertices.chunks(chunk).zip(adj.chunks_mut(chunk * val)) {
            let index = &index;
            let transversal = &transversal;
            let neigh = &cls.neighbours;
            scope.spawn(move || {
                for (f, row) in vs.iter().zip(slab.chunks_mut(val)) {
                    let t = &transversal[f];
                    for (slot, n) in row.iter_mut().zip(neigh.iter()) {
                        *slot = index[&entry.apply_flag(t, *n)];
                    }
                    row.sort_unstable();
                }
            });
        }
    });

    let graph = FlagGraph {
        vertices,
        index,
        valency: val,
        adj,
    };
    Ok((report, Some(graph)))
}

/// Outcome of the six structural checks on a materialized graph.
#[derive(Clone, Debug, Default)]
pub struct SymmetryCertificate {
    pub violations: Vec<String>,
}

impl SymmetryCertificate {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
    pub fn failed(&self, tag: &str) -> bool {
        self.violations.iter().any(|v| v.contains(tag))
    }
}

/// The six checks certifying that the built graph is symmetric under the
/// group with the per-point partition as an invariant block system:
/// generator adjacency preservation, arc-orbit size, block independence,
/// complete quotient, neighbour-block reconstruction, and dual-design
/// block distinctness.
pub fn verify_symmetric(
    entry: &CatalogEntry,
    cls: &PairClass,
    graph: &FlagGraph,
) -> SymmetryCertificate {
    let mut cert = SymmetryCertificate::default();
    let n = graph.vertices.len();
    let u = entry.points() as usize;

    // (1) every generator maps adjacency lists onto adjacency lists
    'gens: for g in entry.group.generators() {
        for vi in 0..n as u32 {
            let img = graph.index[&entry.apply_flag(g, graph.vertices[vi as usize])];
            let mut mapped: Vec<u32> = graph
                .neighbours(vi)
                .iter()
                .map(|&w| graph.index[&entry.apply_flag(g, graph.vertices[w as usize])])
                .collect();
            mapped.sort_unstable();
            if mapped != graph.neighbours(img) {
                cert.violations
                    .push("a generator does not preserve adjacency".to_string());
                break 'gens;
            }
        }
    }

    // (2) the orbit of one arc covers every arc: |Ψ| = 2·|edges|
    if cls.orbit_size != graph.adj.len() as u128 {
        cert.violations.push(format!(
            "arc orbit size {} != 2·edges = {}",
            cls.orbit_size,
            graph.adj.len()
        ));
    }

    // (3) each per-point block is independent
    let mut independent = true;
    // (5) the neighbour blocks of (σ, P∖L) are exactly the points of
    // P∖L other than σ
    let mut reconstructs = true;
    let mut nb_points: Vec<Vec<u32>> = Vec::with_capacity(n);
    for vi in 0..n {
        let f = graph.vertices[vi];
        let mut pts: Vec<u32> = graph
            .neighbours(vi as u32)
            .iter()
            .map(|&w| graph.vertices[w as usize].point)
            .collect();
        if pts.iter().any(|&p| p == f.point) {
            independent = false;
        }
        pts.sort_unstable();
        pts.dedup();
        let expected: Vec<u32> = co_line(entry, f.line)
            .into_iter()
            .filter(|&p| p != f.point)
            .collect();
        if pts != expected {
            reconstructs = false;
        }
        nb_points.push(pts);
    }
    if !independent {
        cert.violations
            .push("a per-point block is not independent".to_string());
    }
    if !reconstructs {
        cert.violations
            .push("neighbour-block reconstruction failed".to_string());
    }

    // (4) quotient over the blocks is the complete graph
    let mut seen_pair = vec![false; u * u];
    for vi in 0..n {
        let p = graph.vertices[vi].point as usize;
        for &q in &nb_points[vi] {
            seen_pair[p * u + q as usize] = true;
        }
    }
    let complete = (0..u).all(|p| (0..u).all(|q| p == q || seen_pair[p * u + q]));
    if !complete {
        cert.violations
            .push("quotient graph is not complete".to_string());
    }

    // (6) distinct vertices in a block see distinct neighbour-block sets
    let mut by_block: HashMap<u32, HashSet<&[u32]>> = HashMap::new();
    let mut block_sizes: HashMap<u32, usize> = HashMap::new();
    for vi in 0..n {
        let p = graph.vertices[vi].point;
        by_block.entry(p).or_default().insert(&nb_points[vi]);
        *block_sizes.entry(p).or_default() += 1;
    }
    if by_block
        .iter()
        .any(|(p, sets)| sets.len() != block_sizes[p])
    {
        cert.violations
            .push("dual design has repeated blocks".to_string());
    }

    cert
}

/// Edges of the bipartite subgraph between the blocks of two points, as
/// index pairs (vertex in the first block, vertex in the second).
pub fn cross_block_edges(graph: &FlagGraph, sigma: u32, tau: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for vi in 0..graph.vertices.len() as u32 {
        if graph.vertices[vi as usize].point != sigma {
            continue;
        }
        for &w in graph.neighbours(vi) {
            if graph.vertices[w as usize].point == tau {
                out.push((vi, w));
            }
        }
    }
    out
}

/// If the given bipartite edge set is a perfect matching on its support
/// (a disjoint union of m single edges), return m.
pub fn matching_size(edges: &[(u32, u32)]) -> Option<usize> {
    let mut seen = HashSet::new();
    for &(a, b) in edges {
        if !seen.insert(a) || !seen.insert(b) {
            return None;
        }
    }
    Some(edges.len())
}

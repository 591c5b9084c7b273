//! Mathieu groups and the exceptional A7 actions.
//!
//! M24 comes from the published degree-24 generators bundled in
//! `data/m24.gens`; M23 and M22 are point-stabilizer restrictions of it.
//! The smaller sporadic actions (M12, both M11 actions, A7 on 15 points)
//! are loaded from frozen generator files that were produced by the
//! deterministic searches in this module; tests re-run the searches and
//! compare against the frozen files.

#[cfg(test)]
use std::collections::{HashMap, HashSet};

use anyhow::{ensure, Context, Result};

use super::CatalogEntry;
use crate::data::read_data_file;
use crate::designs::LinearSpace;
use crate::permcore::{parse_generator_file, GeneratedGroup, Permutation};

fn load_group(file: &str, expect_degree: u32) -> Result<GeneratedGroup> {
    let (degree, gens) = parse_generator_file(&read_data_file(file)?)
        .with_context(|| format!("parsing {}", file))?;
    ensure!(degree == expect_degree, "{}: unexpected degree {}", file, degree);
    GeneratedGroup::new(degree, gens)
}

/// Restricts a permutation that fixes all points >= k to degree k.
fn restrict(g: &Permutation, k: u32) -> Permutation {
    for x in k..g.degree() {
        assert_eq!(g.apply(x), x, "restriction would lose a moved point");
    }
    Permutation::from_images(g.images()[..k as usize].to_vec()).unwrap()
}

fn restricted_stabilizer(g: &GeneratedGroup, fixed: &[u32], k: u32) -> Result<GeneratedGroup> {
    let stab = g.pointwise_stabilizer(fixed);
    let gens = stab.generators().iter().map(|p| restrict(p, k)).collect();
    GeneratedGroup::new(k, gens)
}

pub fn mathieu_entry(name: &str) -> Result<CatalogEntry> {
    match name {
        "M24" => {
            let g = load_group("m24.gens", 24)?;
            CatalogEntry::improper("M24", "Mathieu group M24 on K_24", g, 244_823_040)
        }
        "M23" => {
            let m24 = load_group("m24.gens", 24)?;
            let g = restricted_stabilizer(&m24, &[23], 23)?;
            CatalogEntry::improper("M23", "Mathieu group M23 on K_23", g, 10_200_960)
        }
        "M22" => {
            let m24 = load_group("m24.gens", 24)?;
            let g = restricted_stabilizer(&m24, &[22, 23], 22)?;
            CatalogEntry::improper("M22", "Mathieu group M22 on K_22", g, 443_520)
        }
        "M12" => {
            let g = load_group("m12.gens", 12)?;
            ensure!(g.is_k_transitive(5), "M12 must be 5-transitive");
            CatalogEntry::improper("M12", "Mathieu group M12 on K_12", g, 95_040)
        }
        "M11" => {
            let g = load_group("m11.gens", 11)?;
            ensure!(g.is_k_transitive(4), "M11 must be 4-transitive");
            CatalogEntry::improper("M11", "Mathieu group M11 on K_11", g, 7_920)
        }
        "M11_K12" => {
            let g = load_group("m11_k12.gens", 12)?;
            ensure!(g.is_k_transitive(3), "M11 on 12 points must be 3-transitive");
            CatalogEntry::improper(
                "M11_K12",
                "Mathieu group M11 in its 3-transitive action of degree 12, on K_12",
                g,
                7_920,
            )
        }
        _ => anyhow::bail!("unknown Mathieu entry {:?}", name),
    }
}

/// A7 acting 2-transitively on the 15 points of PG(3,2), either with the
/// complete linear space K_15 (improper) or with the projective space
/// itself.
pub fn a7_on_15_entry(proper: bool) -> Result<CatalogEntry> {
    let g = load_group("a7_15.gens", 15)?;
    if proper {
        CatalogEntry::proper(
            "A7_PG32",
            "A7 < GL(4,2) on the 15 points of PG(3,2)",
            g.generators().to_vec(),
            LinearSpace::pg32(),
            2_520,
            None,
        )
    } else {
        CatalogEntry::improper("A7_K15", "A7 < GL(4,2) on K_15", g, 2_520)
    }
}

// ---- deterministic derivations behind the frozen files (exercised by
// the tests below, including the ignored regeneration test) ----

/// The Steiner system S(5,6,12), built as a 132-block orbit under the
/// natural degree-12 action of PSL(2,11): scan hexads in lexicographic
/// order and return the orbit of the first one whose orbit is a Steiner
/// system (132 blocks covering each 5-subset exactly once). Blocks are
/// returned as sorted 12-bit masks.
#[cfg(test)]
pub(crate) fn steiner_5_6_12() -> Vec<u16> {
    let gens = super::projective::psl2_11_degree12_generators();
    let apply = |g: &Permutation, mask: &u16| -> u16 {
        (0..12)
            .filter(|&i| mask & (1 << i) != 0)
            .fold(0u16, |m, i| m | 1 << g.apply(i))
    };
    for seed in 0u16..(1 << 12) {
        if seed.count_ones() != 6 {
            continue;
        }
        let orb = crate::permcore::orbit(&gens, seed, apply);
        if orb.len() != 132 {
            continue;
        }
        let mut covered = HashSet::new();
        let steiner = orb.iter().all(|&b| {
            (0..12)
                .filter(|&i| b & (1 << i) != 0)
                .all(|i| covered.insert(b & !(1 << i)))
        });
        if steiner {
            assert_eq!(covered.len(), 792, "every 5-subset lies in a block");
            let mut blocks = orb;
            blocks.sort_unstable();
            return blocks;
        }
    }
    panic!("no hexad orbit forms S(5,6,12)")
}

/// Generators of the automorphism group of the Steiner system above
/// (known to be M12), found
/// by a backtrack over point images (in lexicographic order) and collected
/// until they generate a group of order 95040.
#[cfg(test)]
pub(crate) fn derive_m12() -> Vec<Permutation> {
    let blocks = steiner_5_6_12();
    let block_set: HashSet<u16> = blocks.iter().copied().collect();
    let block_of: HashMap<u16, u16> = blocks
        .iter()
        .flat_map(|&b| {
            (0..12)
                .filter(move |i| b & (1 << i) != 0)
                .map(move |i| (b & !(1 << i), b))
        })
        .collect();
    let _ = &block_set;

    struct Search<'a> {
        block_of: &'a HashMap<u16, u16>,
        img: [u32; 12],
        used: u16,
        gens: Vec<Permutation>,
        group_order: u128,
    }

    impl Search<'_> {
        fn done(&self) -> bool {
            self.group_order == 95_040
        }

        fn record(&mut self) {
            let p = Permutation::from_images(self.img.to_vec()).unwrap();
            if p.is_identity() {
                return;
            }
            let mut cand = self.gens.clone();
            cand.push(p.clone());
            let g = GeneratedGroup::new(12, cand).unwrap();
            if g.order() > self.group_order {
                self.group_order = g.order();
                self.gens.push(p);
            }
        }

        fn extend(&mut self, k: usize) {
            if self.done() {
                return;
            }
            if k == 12 {
                self.record();
                return;
            }
            'image: for v in 0..12u32 {
                if self.used & (1 << v) != 0 {
                    continue;
                }
                self.img[k] = v;
                self.used |= 1 << v;
                // every 5-subset of the assigned points must map to a
                // 5-subset whose blocks restrict consistently
                if k >= 4 {
                    let assigned: u16 = (1 << (k + 1)) - 1;
                    let mut ok = true;
                    'subsets: for t in five_subsets_through(k as u32, assigned) {
                        let b = self.block_of[&t];
                        let t_img = self.mask_image(t);
                        let b_img = self.block_of[&t_img];
                        if self.mask_image(b & assigned) != b_img & self.used {
                            ok = false;
                            break 'subsets;
                        }
                    }
                    if !ok {
                        self.used &= !(1 << v);
                        continue 'image;
                    }
                }
                self.extend(k + 1);
                self.used &= !(1 << v);
                if self.done() {
                    return;
                }
            }
        }

        fn mask_image(&self, mask: u16) -> u16 {
            (0..12)
                .filter(|&i| mask & (1 << i) != 0)
                .fold(0u16, |m, i| m | 1 << self.img[i as usize])
        }
    }

    // 5-subsets of `assigned` containing the point `last`
    fn five_subsets_through(last: u32, assigned: u16) -> Vec<u16> {
        let others: Vec<u32> = (0..12)
            .filter(|&i| i != last && assigned & (1 << i) != 0)
            .collect();
        let mut out = Vec::new();
        let n = others.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        out.push(
                            (1 << last)
                                | (1 << others[a])
                                | (1 << others[b])
                                | (1 << others[c])
                                | (1 << others[d]),
                        );
                    }
                }
            }
        }
        out
    }

    let mut search = Search {
        block_of: &block_of,
        img: [0; 12],
        used: 0,
        gens: Vec::new(),
        group_order: 1,
    };
    search.extend(0);
    assert!(search.done(), "automorphism search did not reach order 95040");
    search.gens
}

/// The point stabilizer of the derived M12, restricted to 11 points.
#[cfg(test)]
pub(crate) fn derive_m11() -> Vec<Permutation> {
    let m12 = GeneratedGroup::new(12, derive_m12()).unwrap();
    let stab = m12.pointwise_stabilizer(&[11]);
    assert_eq!(stab.order(), 7_920);
    stab.generators().iter().map(|p| restrict(p, 11)).collect()
}

/// A transitive M11 inside the derived M12: pair the first element of
/// order 11 with the first partner generating a transitive subgroup of
/// order 7920.
#[cfg(test)]
#[cfg(test)]
pub(crate) fn derive_m11_k12() -> Vec<Permutation> {
    let m12 = GeneratedGroup::new(12, derive_m12()).unwrap();
    let elements = m12.enumerate_elements(100_000).unwrap();
    assert_eq!(elements.len(), 95_040);
    let a = elements.iter().find(|e| e.order() == 11).unwrap();
    for b in &elements {
        let h = GeneratedGroup::new(12, vec![a.clone(), b.clone()]).unwrap();
        if let Some(members) = h.enumerate_elements(7_921) {
            if members.len() == 7_920 && h.is_transitive() {
                return vec![a.clone(), b.clone()];
            }
        }
    }
    panic!("no transitive subgroup of order 7920 found")
}

/// A 2-transitive A7 inside GL(4,2) acting on the 15 nonzero vectors:
/// pair the first element of order 7 with the first partner generating a
/// 2-transitive subgroup of order 2520.
#[cfg(test)]
pub(crate) fn derive_a7_15() -> Vec<Permutation> {
    // GL(4,2) from elementary matrices, as permutations of the vectors 1..15
    let apply_mat = |m: &[u32; 4], v: u32| -> u32 {
        // rows of m are bitmasks; v * M with v a row vector of bits
        (0..4).fold(0, |acc, i| {
            if v & (1 << i) != 0 {
                acc ^ m[i]
            } else {
                acc
            }
        })
    };
    let mut gens = Vec::new();
    for i in 0..4u32 {
        for j in 0..4u32 {
            if i != j {
                let mut m = [1u32, 2, 4, 8];
                m[i as usize] |= 1 << j;
                let images: Vec<u32> = (1..16).map(|v| apply_mat(&m, v) - 1).collect();
                gens.push(Permutation::from_images(images).unwrap());
            }
        }
    }
    let gl42 = GeneratedGroup::new(15, gens).unwrap();
    let elements = gl42.enumerate_elements(21_000).unwrap();
    assert_eq!(elements.len(), 20_160);
    let a = elements.iter().find(|e| e.order() == 7).unwrap();
    for b in &elements {
        let h = GeneratedGroup::new(15, vec![a.clone(), b.clone()]).unwrap();
        if let Some(members) = h.enumerate_elements(2_521) {
            if members.len() == 2_520 && h.is_k_transitive(2) {
                return vec![a.clone(), b.clone()];
            }
        }
    }
    panic!("no 2-transitive subgroup of order 2520 found")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::orbit;

    fn frozen(file: &str, degree: u32) -> Vec<Permutation> {
        let (d, gens) = parse_generator_file(&read_data_file(file).unwrap()).unwrap();
        assert_eq!(d, degree);
        gens
    }

    #[test]
    fn frozen_m12_matches_derivation() {
        assert_eq!(derive_m12(), frozen("m12.gens", 12));
    }

    #[test]
    fn frozen_m11_matches_derivation() {
        assert_eq!(derive_m11(), frozen("m11.gens", 11));
    }

    #[test]
    fn frozen_m11_k12_matches_derivation() {
        assert_eq!(derive_m11_k12(), frozen("m11_k12.gens", 12));
    }

    #[test]
    fn frozen_a7_matches_derivation() {
        assert_eq!(derive_a7_15(), frozen("a7_15.gens", 15));
    }

    /// Rewrites the frozen generator files from the derivations above.
    /// Run manually: cargo test -p flagforge regenerate -- --ignored
    #[test]
    #[ignore]
    fn regenerate_frozen_generator_files() {
        let write = |file: &str, comment: &str, degree: u32, gens: &[Permutation]| {
            let mut text = String::new();
            for line in comment.lines() {
                text.push_str(&format!("# {}\n", line));
            }
            text.push_str(&format!("degree {}\n", degree));
            for g in gens {
                text.push_str(&format!("{}\n", g));
            }
            std::fs::write(crate::data::data_dir().join(file), text).unwrap();
        };
        write(
            "m12.gens",
            "Generators of M12: automorphisms of the lexicographic Steiner system\nS(5,6,12), found by the deterministic backtrack in the catalog code.",
            12,
            &derive_m12(),
        );
        write(
            "m11.gens",
            "Generators of M11 of degree 11: point stabilizer of the M12 in\nm12.gens, restricted.",
            11,
            &derive_m11(),
        );
        write(
            "m11_k12.gens",
            "Generators of the transitive M11 of degree 12 inside the M12 in\nm12.gens, found by the deterministic search in the catalog code.",
            12,
            &derive_m11_k12(),
        );
        write(
            "a7_15.gens",
            "Generators of a 2-transitive A7 inside GL(4,2) acting on the 15\nnonzero vectors of F_2^4, found by the deterministic search in the\ncatalog code.",
            15,
            &derive_a7_15(),
        );
    }

    #[test]
    fn a7_fixes_no_steiner_triple_structure() {
        // sanity: the frozen A7 preserves the PG(3,2) line set
        let gens = frozen("a7_15.gens", 15);
        let pg = LinearSpace::pg32();
        for g in &gens {
            assert!(pg.preserves_lines(g));
        }
    }

    #[test]
    fn m24_is_5_transitive_with_known_suborders() {
        let m24 = mathieu_entry("M24").unwrap();
        assert!(m24.group.is_k_transitive(5));
        // sharp bound: |M24| = 24*23*22*21*20*48
        assert_eq!(24 * 23 * 22 * 21 * 20 * 48u128, 244_823_040);
    }

    #[test]
    fn m23_and_m22_restrictions() {
        let m23 = mathieu_entry("M23").unwrap();
        assert!(m23.group.is_k_transitive(4));
        let m22 = mathieu_entry("M22").unwrap();
        assert!(m22.group.is_k_transitive(3));
    }

    #[test]
    fn steiner_system_block_intersections() {
        let blocks = steiner_5_6_12();
        // five points determine a unique block, so two distinct blocks
        // share at most 4 points; a 1-point meet is also impossible
        for (i, &x) in blocks.iter().enumerate() {
            for &y in &blocks[i + 1..] {
                let m = (x & y).count_ones();
                assert!(matches!(m, 0 | 2 | 3 | 4), "blocks meet in {} points", m);
            }
        }
    }

    #[test]
    fn orbit_check_frozen_groups_are_transitive() {
        for (file, degree) in [("m12.gens", 12u32), ("m11.gens", 11), ("m11_k12.gens", 12)] {
            let gens = frozen(file, degree);
            assert_eq!(orbit(&gens, 0u32, |g, &x| g.apply(x)).len() as u32, degree);
        }
    }
}

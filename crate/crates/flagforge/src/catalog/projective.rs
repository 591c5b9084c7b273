//! Projective entries: fractional-linear groups on a projective line,
//! PSL(2,11) in its exceptional degree-11 action, and the groups between
//! PSL(3,q) and PГL(3,q) acting on the projective plane.

use std::collections::HashMap;

use anyhow::{Context, Result};

use super::{CatalogEntry, PlaneData};
use crate::designs::LinearSpace;
use crate::field::{semilinear_closure, FieldTable, SemilinearMap1D};
use crate::permcore::{GeneratedGroup, Permutation};

/// Points of the projective line PG(1,q): indices `0..q` are the field
/// elements, index `q` is the point at infinity.
fn moebius_generators(field: &FieldTable, gamma: bool) -> Vec<Permutation> {
    let q = field.q;
    let inf = q;
    let perm = |f: &dyn Fn(u32) -> u32, f_inf: u32, pole: Option<u32>, pole_to: u32| {
        let images: Vec<u32> = (0..=q)
            .map(|x| {
                if x == inf {
                    f_inf
                } else if pole == Some(x) {
                    pole_to
                } else {
                    f(x)
                }
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    let mut gens = vec![
        perm(&|x| field.add(x, 1), inf, None, 0),
        perm(&|x| field.mul(field.omega(), x), inf, None, 0),
        perm(&|x| field.inv(x), 0, Some(0), inf),
    ];
    if gamma && field.n > 1 {
        gens.push(perm(&|x| field.frobenius(x, 1), inf, None, 0));
    }
    gens
}

/// PГL(2, p^n) acting on the q+1 points of the projective line, viewed as
/// the complete linear space K_{q+1}.
pub fn pgammal2_entry(p: u32, n: u32) -> Result<CatalogEntry> {
    let field = FieldTable::get(p, n)?;
    let q = field.q as u128;
    let order = q * (q + 1) * (q - 1) * n as u128;
    let group = GeneratedGroup::new(field.q + 1, moebius_generators(&field, true))?;
    CatalogEntry::improper(
        &format!("PGammaL2_{}", field.q),
        &format!("PGammaL(2,{}) on the projective line K_{}", field.q, field.q + 1),
        group,
        order,
    )
}

/// PSL(2,11) in its 2-transitive action of degree 11, realized as the
/// action on the cosets of an A5 subgroup of the natural degree-12 copy.
/// The natural degree-12 generators of PSL(2,11) (x+1, omega^2 x, -1/x on
/// the projective line over F_11).
pub(crate) fn psl2_11_degree12_generators() -> Vec<Permutation> {
    let field = FieldTable::get(11, 1).expect("F_11 table");
    let inf = 11u32;
    let build = |f: &dyn Fn(u32) -> u32, f_inf: u32, pole: Option<u32>, pole_to: u32| {
        let images: Vec<u32> = (0..=11)
            .map(|x| {
                if x == inf {
                    f_inf
                } else if pole == Some(x) {
                    pole_to
                } else {
                    f(x)
                }
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    let w2 = field.mul(field.omega(), field.omega());
    vec![
        build(&|x| field.add(x, 1), inf, None, 0),
        build(&|x| field.mul(w2, x), inf, None, 0),
        build(&|x| field.neg(field.inv(x)), 0, Some(0), inf),
    ]
}

/// PSL(2,11) in its 2-transitive action of degree 11, realized as the
/// action on the cosets of an A5 subgroup of the natural degree-12 copy.
pub fn psl2_11_on_11() -> Result<CatalogEntry> {
    let g12 = GeneratedGroup::new(12, psl2_11_degree12_generators())?;
    let elements = g12
        .enumerate_elements(700)
        .context("PSL(2,11) larger than expected")?;
    anyhow::ensure!(elements.len() == 660, "PSL(2,11) enumeration size mismatch");

    // Deterministic search for an A5 subgroup: pair the first element of
    // order 5 with the first partner generating a subgroup of order 60.
    let a = elements
        .iter()
        .find(|e| e.order() == 5)
        .context("no element of order 5")?;
    let mut subgroup: Option<Vec<Permutation>> = None;
    'search: for b in &elements {
        let h = GeneratedGroup::new(12, vec![a.clone(), b.clone()])?;
        if let Some(members) = h.enumerate_elements(61) {
            if members.len() == 60 {
                subgroup = Some(members);
                break 'search;
            }
        }
    }
    let subgroup = subgroup.context("no A5 subgroup found")?;

    // cosets H g, named by their lexicographically least member
    let coset_rep = |g: &Permutation| -> Permutation {
        subgroup.iter().map(|h| h.compose(g)).min().unwrap()
    };
    let mut coset_id: HashMap<Permutation, u32> = HashMap::new();
    for e in &elements {
        let rep = coset_rep(e);
        let next = coset_id.len() as u32;
        coset_id.entry(rep).or_insert(next);
    }
    anyhow::ensure!(coset_id.len() == 11, "expected 11 cosets of A5");
    let reps: Vec<Permutation> = {
        let mut v: Vec<(Permutation, u32)> = coset_id.iter().map(|(r, &i)| (r.clone(), i)).collect();
        v.sort_by_key(|&(_, i)| i);
        v.into_iter().map(|(r, _)| r).collect()
    };
    let gens11: Vec<Permutation> = g12
        .generators()
        .iter()
        .map(|s| {
            let images: Vec<u32> = reps.iter().map(|r| coset_id[&coset_rep(&r.compose(s))]).collect();
            Permutation::from_images(images).unwrap()
        })
        .collect();
    CatalogEntry::improper(
        "PSL2_11",
        "PSL(2,11) in its exceptional 2-transitive action of degree 11, on K_11",
        GeneratedGroup::new(11, gens11)?,
        660,
    )
}

/// Which group between PSL(3,q) and PГL(3,q) to build on the plane.
#[derive(Clone, Copy, Debug)]
pub enum PlaneLevel {
    Psl,
    Pgl,
    /// PSL(3,q) extended by the Frobenius field automorphism.
    PslFrobenius,
    Pgammal,
    /// PSL(3,q) extended by diag(1, ω^t, 1) and the map combining
    /// diag(1, ω^e, 1) with the s-th power of Frobenius.
    Custom { t: u32, e: u32, s: u32 },
}

type Mat = [[u32; 3]; 3];

fn identity_mat() -> Mat {
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
}

/// Permutation of the extended-free plane points induced by x -> x^(p^j) A.
fn plane_perm(field: &FieldTable, space: &LinearSpace, a: Mat, j: u32) -> Permutation {
    let points = crate::designs::projective_points(field.q);
    let index: HashMap<[u32; 3], u32> = points
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32))
        .collect();
    let images: Vec<u32> = points
        .iter()
        .map(|x| {
            let x: Vec<u32> = x.iter().map(|&c| field.frobenius(c, j)).collect();
            let mut y = [0u32; 3];
            for (col, yc) in y.iter_mut().enumerate() {
                for row in 0..3 {
                    *yc = field.add(*yc, field.mul(x[row], a[row][col]));
                }
            }
            let lead = *y.iter().find(|&&c| c != 0).expect("singular matrix");
            let inv = field.inv(lead);
            let norm = [field.mul(y[0], inv), field.mul(y[1], inv), field.mul(y[2], inv)];
            index[&norm]
        })
        .collect();
    debug_assert_eq!(space.points() as usize, images.len());
    Permutation::from_images(images).unwrap()
}

/// Builds the catalog entry for a group G with PSL(3,q) <= G <= PГL(3,q)
/// acting on the projective plane of order q.
pub fn plane_entry(p: u32, n: u32, level: PlaneLevel) -> Result<CatalogEntry> {
    let field = FieldTable::get(p, n)?;
    let q = field.q;
    let space = LinearSpace::projective_plane(&field);
    let d = if (q - 1) % 3 == 0 { 3 } else { 1 };

    // transvections generating SL(3,q)
    let mut gens: Vec<Permutation> = Vec::new();
    for &(i, j) in &[(0usize, 1usize), (1, 0), (1, 2), (2, 1)] {
        for k in 0..n {
            let mut m = identity_mat();
            m[i][j] = field.exp(k);
            gens.push(plane_perm(&field, &space, m, 0));
        }
    }

    // the diagonal/Frobenius part, tracked 1-dimensionally for the
    // closed-form predictions
    let mut semilinear = vec![SemilinearMap1D { c: field.exp(d), j: 0 }];
    let mut extra: Vec<(u32, u32)> = Vec::new(); // (log c, j) pairs to realize
    match level {
        PlaneLevel::Psl => {}
        PlaneLevel::Pgl => extra.push((1, 0)),
        PlaneLevel::PslFrobenius => extra.push((0, 1)),
        PlaneLevel::Pgammal => {
            extra.push((1, 0));
            extra.push((0, 1));
        }
        PlaneLevel::Custom { t, e, s } => {
            extra.push((t, 0));
            extra.push((e, s));
        }
    }
    for &(logc, j) in &extra {
        let mut m = identity_mat();
        m[1][1] = field.exp(logc);
        gens.push(plane_perm(&field, &space, m, j));
        semilinear.push(SemilinearMap1D { c: field.exp(logc), j: j % n });
    }

    // |G| = |PSL(3,q)| * |Λ(H)| / |<ω^d>|, where Λ(H) is the 1-dimensional
    // semilinear group generated by the diagonal part
    let q128 = q as u128;
    let gl = (q128.pow(3) - 1) * (q128.pow(3) - q128) * (q128.pow(3) - q128 * q128);
    let psl = gl / (q128 - 1) / d as u128;
    let lambda = semilinear_closure(&field, &semilinear).len() as u128;
    let order = psl * lambda * d as u128 / (q128 - 1);

    let name = match level {
        PlaneLevel::Psl => format!("PSL3_{}", q),
        PlaneLevel::Pgl => format!("PGL3_{}", q),
        PlaneLevel::PslFrobenius => format!("PSigmaL3_{}", q),
        PlaneLevel::Pgammal => format!("PGammaL3_{}", q),
        PlaneLevel::Custom { t, e, s } => format!("PSL3_{}_t{}e{}s{}", q, t, e, s),
    };
    CatalogEntry::proper(
        &name,
        &format!("{} on the projective plane of order {}", name, q),
        gens,
        space,
        order,
        Some(PlaneData {
            p,
            n,
            semilinear,
        }),
    )
}

//! Alternating/symmetric entries and the affine families: groups of the
//! form (translations of F_q^d) ⋊ (matrix group), acting on the q^d
//! vectors, always on the complete linear space.

use anyhow::{bail, Result};

use super::CatalogEntry;
use crate::field::FieldTable;
use crate::permcore::{GeneratedGroup, Permutation};

pub fn alternating_entry(u: u32) -> Result<CatalogEntry> {
    let three = Permutation::from_cycles(u, &[vec![0, 1, 2]])?;
    let big = if u % 2 == 1 {
        Permutation::from_cycles(u, &[(0..u).collect()])?
    } else {
        Permutation::from_cycles(u, &[(1..u).collect()])?
    };
    let order: u128 = (1..=u as u128).product::<u128>() / 2;
    CatalogEntry::improper(
        &format!("A{}", u),
        &format!("alternating group A{} on K_{}", u, u),
        GeneratedGroup::new(u, vec![three, big])?,
        order,
    )
}

pub fn symmetric_entry(u: u32) -> Result<CatalogEntry> {
    let swap = Permutation::from_cycles(u, &[vec![0, 1]])?;
    let cycle = Permutation::from_cycles(u, &[(0..u).collect()])?;
    let order: u128 = (1..=u as u128).product();
    CatalogEntry::improper(
        &format!("S{}", u),
        &format!("symmetric group S{} on K_{}", u, u),
        GeneratedGroup::new(u, vec![swap, cycle])?,
        order,
    )
}

/// AGL(1, p^n) = {x -> ax + b}, optionally extended by Frobenius.
pub fn agl1_entry(p: u32, n: u32, gamma: bool) -> Result<CatalogEntry> {
    let field = FieldTable::get(p, n)?;
    let q = field.q;
    let perm = |f: &dyn Fn(u32) -> u32| {
        Permutation::from_images((0..q).map(f).collect()).unwrap()
    };
    let mut gens = vec![
        perm(&|x| field.add(x, 1)),
        perm(&|x| field.mul(field.omega(), x)),
    ];
    let mut order = q as u128 * (q as u128 - 1);
    let name;
    if gamma {
        gens.push(perm(&|x| field.frobenius(x, 1)));
        order *= n as u128;
        name = format!("AGammaL1_{}", q);
    } else {
        name = format!("AGL1_{}", q);
    }
    CatalogEntry::improper(
        &name,
        &format!("{} on K_{}", name, q),
        GeneratedGroup::new(q, gens)?,
        order,
    )
}

/// Vectors of F_q^dim indexed by base-q digit strings (coordinate 0 least
/// significant).
struct VectorSpace {
    field: FieldTable,
    dim: usize,
}

impl VectorSpace {
    fn points(&self) -> u32 {
        self.field.q.pow(self.dim as u32)
    }

    fn decode(&self, mut idx: u32) -> Vec<u32> {
        let mut v = vec![0u32; self.dim];
        for c in v.iter_mut() {
            *c = idx % self.field.q;
            idx /= self.field.q;
        }
        v
    }

    fn encode(&self, v: &[u32]) -> u32 {
        v.iter().rev().fold(0, |acc, &c| acc * self.field.q + c)
    }

    fn translation(&self, t: &[u32]) -> Permutation {
        let images = (0..self.points())
            .map(|i| {
                let v = self.decode(i);
                let w: Vec<u32> = v.iter().zip(t).map(|(&a, &b)| self.field.add(a, b)).collect();
                self.encode(&w)
            })
            .collect();
        Permutation::from_images(images).unwrap()
    }

    /// x -> x A with x a row vector.
    fn linear(&self, a: &[Vec<u32>]) -> Permutation {
        let images = (0..self.points())
            .map(|i| {
                let x = self.decode(i);
                let mut y = vec![0u32; self.dim];
                for (col, yc) in y.iter_mut().enumerate() {
                    for (row, &xr) in x.iter().enumerate() {
                        *yc = self.field.add(*yc, self.field.mul(xr, a[row][col]));
                    }
                }
                self.encode(&y)
            })
            .collect();
        Permutation::from_images(images).unwrap()
    }

    fn basis_translations(&self) -> Vec<Permutation> {
        (0..self.dim)
            .map(|i| {
                let mut e = vec![0u32; self.dim];
                e[i] = 1;
                self.translation(&e)
            })
            .collect()
    }

    /// Elementary matrices E_ij(1) for all i != j; these generate SL(dim, q)
    /// when q is prime.
    fn sl_generators_prime(&self) -> Vec<Permutation> {
        let mut gens = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    let mut m = self.identity();
                    m[i][j] = 1;
                    gens.push(self.linear(&m));
                }
            }
        }
        gens
    }

    fn identity(&self) -> Vec<Vec<u32>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| u32::from(i == j)).collect())
            .collect()
    }

    /// Symplectic transvection x -> x + B(x, v) v for the standard
    /// alternating form B(x,y) = x1 y2 - x2 y1 + x3 y4 - x4 y3 (dim 4).
    fn symplectic_transvection(&self, v: &[u32]) -> Permutation {
        assert_eq!(self.dim, 4);
        let f = &self.field;
        let form = |x: &[u32], y: &[u32]| {
            let a = f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
            let b = f.sub(f.mul(x[2], y[3]), f.mul(x[3], y[2]));
            f.add(a, b)
        };
        let images = (0..self.points())
            .map(|i| {
                let x = self.decode(i);
                let c = form(&x, v);
                let w: Vec<u32> = x
                    .iter()
                    .zip(v)
                    .map(|(&xi, &vi)| f.add(xi, f.mul(c, vi)))
                    .collect();
                self.encode(&w)
            })
            .collect();
        Permutation::from_images(images).unwrap()
    }
}

fn gl_order(q: u128, d: u32) -> u128 {
    (0..d).map(|i| q.pow(d) - q.pow(i)).product()
}

pub fn affine_matrix_entry(name: &str) -> Result<CatalogEntry> {
    let (space, mut gens, order, description): (VectorSpace, Vec<Permutation>, u128, String) =
        match name {
            "AGL2_2" => {
                let vs = VectorSpace { field: FieldTable::get(2, 1)?, dim: 2 };
                let gens = vs.sl_generators_prime();
                (vs, gens, 4 * 6, "AGL(2,2) on K_4".into())
            }
            "F4C3" => {
                let vs = VectorSpace { field: FieldTable::get(2, 1)?, dim: 2 };
                let c = vs.linear(&[vec![0, 1], vec![1, 1]]);
                (vs, vec![c], 4 * 3, "F_2^2 . C_3 on K_4".into())
            }
            "ASL2_3" | "AGL2_3" | "ASL3_3" | "AGL3_3" | "ASL4_3" | "AGL4_3" => {
                let dim = name.as_bytes()[3] - b'0';
                let general = name.starts_with("AGL");
                let vs = VectorSpace { field: FieldTable::get(3, 1)?, dim: dim as usize };
                let mut gens = vs.sl_generators_prime();
                let mut order = gl_order(3, dim as u32) / 2;
                if general {
                    let mut m = vs.identity();
                    m[0][0] = 2;
                    gens.push(vs.linear(&m));
                    order *= 2;
                }
                let points = 3u128.pow(dim as u32);
                (
                    vs,
                    gens,
                    points * order,
                    format!("{} on K_{}", name, points),
                )
            }
            "ASp4_3" => {
                let vs = VectorSpace { field: FieldTable::get(3, 1)?, dim: 4 };
                let vectors = [
                    vec![1, 0, 0, 0],
                    vec![0, 1, 0, 0],
                    vec![0, 0, 1, 0],
                    vec![0, 0, 0, 1],
                    vec![1, 0, 1, 0],
                    vec![0, 1, 0, 1],
                ];
                let gens = vectors.iter().map(|v| vs.symplectic_transvection(v)).collect();
                (vs, gens, 81 * 51840, "ASp(4,3) on K_81".into())
            }
            "ASL2_4" => {
                let vs = VectorSpace { field: FieldTable::get(2, 2)?, dim: 2 };
                let mut gens = Vec::new();
                for &(i, j) in &[(0usize, 1usize), (1, 0)] {
                    for lam in [1, vs.field.omega()] {
                        let mut m = vs.identity();
                        m[i][j] = lam;
                        gens.push(vs.linear(&m));
                    }
                }
                (vs, gens, 16 * 60, "ASL(2,4) on K_16".into())
            }
            _ => bail!("unknown affine entry {:?}", name),
        };
    gens.extend(space.basis_translations());
    CatalogEntry::improper(
        name,
        &description,
        GeneratedGroup::new(space.points(), gens)?,
        order,
    )
}

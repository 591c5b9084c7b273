//! Small finite fields F_{p^n} via log/antilog tables, 1-dimensional
//! semilinear maps, and the canonical parameters (t, e, s) of subgroups of
//! the semilinear group ГL(1, p^n).

use std::collections::{BTreeSet, HashMap};

use anyhow::{bail, ensure, Context, Result};

use crate::data::read_data_file;

/// Field elements are integers in `0..q` encoding base-p digit vectors:
/// the element c_0 + c_1 x + ... + c_{n-1} x^{n-1} is stored as
/// c_0 + c_1 p + ... + c_{n-1} p^{n-1}, with x the primitive element used
/// to build the tables.
#[derive(Clone, Debug)]
pub struct FieldTable {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    exp: Vec<u32>, // exp[i] = x^i, length q-1
    log: Vec<u32>, // log[a] defined for a in 1..q
}

impl FieldTable {
    /// Builds the table for F_{p^n} from the bundled reduction rules and
    /// checks that the chosen element is primitive.
    pub fn get(p: u32, n: u32) -> Result<FieldTable> {
        let text = read_data_file("fields.txt")?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse().context("bad number in fields.txt"))
                .collect::<Result<_>>()?;
            ensure!(nums.len() >= 3, "short line in fields.txt");
            if nums[0] == p && nums[1] == n {
                ensure!(nums.len() as u32 == n + 2, "wrong coefficient count for {},{}", p, n);
                return FieldTable::build(p, n, &nums[2..]);
            }
        }
        bail!("no reduction rule for F_{{{}^{}}} in fields.txt", p, n)
    }

    fn build(p: u32, n: u32, reduction: &[u32]) -> Result<FieldTable> {
        let q = p.pow(n);
        // multiplication by x on digit vectors, using x^n = sum reduction[i] x^i
        let times_x = |a: u32| -> u32 {
            let mut digits = vec![0u32; n as usize + 1];
            let mut v = a;
            for d in digits.iter_mut().take(n as usize) {
                *d = v % p;
                v /= p;
            }
            digits.rotate_right(1);
            let carry = digits[n as usize];
            let mut out = 0u32;
            for i in (0..n as usize).rev() {
                out = out * p + (digits[i] + carry * reduction[i]) % p;
            }
            out
        };
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = 1u32;
        for i in 0..q - 1 {
            ensure!(
                cur != 0 && log[cur as usize] == u32::MAX,
                "reduction rule for F_{{{}^{}}} is not primitive",
                p,
                n
            );
            log[cur as usize] = i;
            exp.push(cur);
            cur = times_x(cur);
        }
        ensure!(cur == 1, "reduction rule for F_{{{}^{}}} is not primitive", p, n);
        Ok(FieldTable { p, n, q, exp, log })
    }

    /// The primitive element the tables are built on.
    pub fn omega(&self) -> u32 {
        self.exp[if self.q == 2 { 0 } else { 1 } as usize]
    }

    pub fn exp(&self, i: u32) -> u32 {
        self.exp[(i % (self.q - 1)) as usize]
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: u32) -> u32 {
        assert!(a != 0 && a < self.q, "log of {} undefined", a);
        self.log[a as usize]
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        for _ in 0..self.n {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        for _ in 0..self.n {
            out += (self.p - a % self.p) % self.p * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp((self.log(a) + self.log(b)) % (self.q - 1))
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.exp(((self.q - 1) - self.log(a)) % (self.q - 1))
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, k: u32) -> u32 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        self.exp((self.log(a) as u64 * k as u64 % (self.q as u64 - 1)) as u32)
    }

    /// The Frobenius a -> a^(p^j).
    pub fn frobenius(&self, a: u32, j: u32) -> u32 {
        self.pow(a, self.p.pow(j % self.n))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

/// The semilinear map y -> c * y^(p^j) on F_{p^n}, c nonzero, 0 <= j < n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemilinearMap1D {
    pub c: u32,
    pub j: u32,
}

impl SemilinearMap1D {
    pub fn identity() -> Self {
        SemilinearMap1D { c: 1, j: 0 }
    }

    pub fn apply(&self, field: &FieldTable, y: u32) -> u32 {
        field.mul(self.c, field.frobenius(y, self.j))
    }

    /// `self` followed by `other`.
    pub fn compose(&self, field: &FieldTable, other: &SemilinearMap1D) -> SemilinearMap1D {
        SemilinearMap1D {
            c: field.mul(other.c, field.frobenius(self.c, other.j)),
            j: (self.j + other.j) % field.n,
        }
    }
}

/// Closure of a set of semilinear maps under composition, sorted.
pub fn semilinear_closure(field: &FieldTable, gens: &[SemilinearMap1D]) -> BTreeSet<SemilinearMap1D> {
    let mut set: BTreeSet<SemilinearMap1D> = BTreeSet::new();
    let mut queue = vec![SemilinearMap1D::identity()];
    set.insert(queue[0]);
    while let Some(cur) = queue.pop() {
        for g in gens {
            let next = cur.compose(field, g);
            if set.insert(next) {
                queue.push(next);
            }
        }
    }
    set
}

/// All parameter triples (t, e, s) that name a subgroup of ГL(1, p^n):
/// t > 0 divides p^n - 1; s > 0 divides n; 0 <= e < t with
/// t | e * (p^n - 1) / (p^s - 1).
pub fn valid_parameter_triples(field: &FieldTable) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for t in 1..=field.q - 1 {
        if (field.q - 1) % t != 0 {
            continue;
        }
        for s in 1..=field.n {
            if field.n % s != 0 {
                continue;
            }
            let quotient = (field.q as u64 - 1) / (field.p.pow(s) as u64 - 1);
            for e in 0..t {
                if (e as u64 * quotient) % t as u64 == 0 {
                    out.push((t, e, s));
                }
            }
        }
    }
    out
}

/// The subgroup named by (t, e, s): generated by multiplication by ω^t and
/// the map y -> ω^e * y^(p^s).
pub fn subgroup_from_parameters(
    field: &FieldTable,
    (t, e, s): (u32, u32, u32),
) -> BTreeSet<SemilinearMap1D> {
    let gens = [
        SemilinearMap1D { c: field.exp(t), j: 0 },
        SemilinearMap1D { c: field.exp(e), j: s % field.n },
    ];
    semilinear_closure(field, &gens)
}

/// The unique canonical parameters (t, e, s) of the subgroup generated by
/// `gens`, found by scanning every valid triple and regenerating its
/// subgroup. Exactly one triple must match; anything else is a bug.
pub fn standard_parameters(field: &FieldTable, gens: &[SemilinearMap1D]) -> (u32, u32, u32) {
    let target = semilinear_closure(field, gens);
    let matches: Vec<(u32, u32, u32)> = valid_parameter_triples(field)
        .into_iter()
        .filter(|&triple| subgroup_from_parameters(field, triple) == target)
        .collect();
    assert_eq!(
        matches.len(),
        1,
        "subgroup of ГL(1,{}) matched {} parameter triples",
        field.q,
        matches.len()
    );
    matches[0]
}

/// Check that distinct valid triples name distinct subgroups and that every
/// subgroup arising from a triple round-trips through `standard_parameters`.
pub fn parameter_map_is_bijective(field: &FieldTable) -> Result<()> {
    let mut seen: HashMap<Vec<SemilinearMap1D>, (u32, u32, u32)> = HashMap::new();
    for triple in valid_parameter_triples(field) {
        let sub: Vec<SemilinearMap1D> =
            subgroup_from_parameters(field, triple).into_iter().collect();
        if let Some(prev) = seen.insert(sub, triple) {
            bail!(
                "triples {:?} and {:?} name the same subgroup of ГL(1,{})",
                prev,
                triple,
                field.q
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = FieldTable::get(2, 2).unwrap();
        assert_eq!(f.q, 4);
        // x^2 = x + 1, elements 0,1,x=2,x+1=3
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(2, 3), 1);
        assert_eq!(f.inv(2), 3);
        assert_eq!(f.frobenius(2, 1), 3);
    }

    #[test]
    fn f9_has_multiplicative_order_8() {
        let f = FieldTable::get(3, 2).unwrap();
        let w = f.omega();
        let mut seen = std::collections::HashSet::new();
        let mut cur = 1u32;
        for _ in 0..8 {
            assert!(seen.insert(cur));
            cur = f.mul(cur, w);
        }
        assert_eq!(cur, 1);
        // char 3 addition
        assert_eq!(f.add(1, f.add(1, 1)), 0);
    }

    #[test]
    fn prime_fields_match_modular_arithmetic() {
        for p in [2u32, 3, 5, 7] {
            let f = FieldTable::get(p, 1).unwrap();
            for a in 0..p {
                for b in 0..p {
                    assert_eq!(f.add(a, b), (a + b) % p);
                    assert_eq!(f.mul(a, b), (a * b) % p);
                }
            }
        }
    }

    #[test]
    fn field_axioms_hold_in_f8() {
        let f = FieldTable::get(2, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = FieldTable::get(3, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(
                    f.frobenius(f.add(a, b), 1),
                    f.add(f.frobenius(a, 1), f.frobenius(b, 1))
                );
            }
        }
    }

    #[test]
    fn semilinear_composition_matches_pointwise() {
        let f = FieldTable::get(2, 4).unwrap();
        let maps = [
            SemilinearMap1D { c: 3, j: 1 },
            SemilinearMap1D { c: f.omega(), j: 3 },
            SemilinearMap1D { c: 7, j: 2 },
        ];
        for a in &maps {
            for b in &maps {
                let ab = a.compose(&f, b);
                for y in f.elements() {
                    assert_eq!(ab.apply(&f, y), b.apply(&f, a.apply(&f, y)));
                }
            }
        }
    }

    #[test]
    fn full_semilinear_group_has_expected_order() {
        let f = FieldTable::get(2, 3).unwrap();
        let gens = [
            SemilinearMap1D { c: f.omega(), j: 0 },
            SemilinearMap1D { c: 1, j: 1 },
        ];
        assert_eq!(semilinear_closure(&f, &gens).len(), 21); // (8-1) * 3
        assert_eq!(standard_parameters(&f, &gens), (1, 0, 1));
    }

    #[test]
    fn parameters_of_plain_multiplicative_subgroups() {
        let f = FieldTable::get(3, 2).unwrap();
        let cube = [SemilinearMap1D { c: f.exp(2), j: 0 }];
        assert_eq!(standard_parameters(&f, &cube), (2, 0, 2));
        let trivial: [SemilinearMap1D; 0] = [];
        assert_eq!(standard_parameters(&f, &trivial), (8, 0, 2));
    }

    #[test]
    fn parameter_triples_name_distinct_subgroups() {
        for (p, n) in [(2u32, 2u32), (2, 3), (3, 2), (2, 4)] {
            let f = FieldTable::get(p, n).unwrap();
            parameter_map_is_bijective(&f).unwrap();
        }
    }
}

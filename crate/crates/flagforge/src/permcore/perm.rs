use std::fmt;

use anyhow::{bail, ensure, Context, Result};

/// A permutation of `{0, 1, ..., degree-1}`, stored as an image table.
///
/// Composition is left-to-right: `(a.compose(&b)).apply(x) == b.apply(a.apply(x))`,
/// matching the exponent convention `x^(ab) = (x^a)^b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: u32) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from an image table, checking it is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            ensure!((im as usize) < n, "image {} out of range 0..{}", im, n);
            ensure!(!seen[im as usize], "image {} repeated", im);
            seen[im as usize] = true;
        }
        Ok(Permutation {
            images: images.into(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles (0-based points).
    pub fn from_cycles(degree: u32, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree).collect();
        let mut touched = vec![false; degree as usize];
        for cyc in cycles {
            for &p in cyc {
                ensure!(p < degree, "point {} out of range 0..{}", p, degree);
                ensure!(!touched[p as usize], "point {} appears twice", p);
                touched[p as usize] = true;
            }
            for i in 0..cyc.len() {
                images[cyc[i] as usize] = cyc[(i + 1) % cyc.len()];
            }
        }
        Ok(Permutation {
            images: images.into(),
        })
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.images.len() as u32
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// Smallest point moved by this permutation, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &im)| i as u32 != im)
            .map(|(i, _)| i as u32)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im as usize] = i as u32;
        }
        Permutation { images: inv.into() }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().compose(self).compose(other)
    }

    /// Cycle decomposition, fixed points omitted; each cycle starts at its
    /// smallest point, cycles ordered by smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start as usize] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x as usize] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Multiplicative order of the permutation.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points, e.g. `(1,2,4)(3,5)`; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (i, p) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Parses one permutation in cycle notation with 1-based points,
/// e.g. `(1,2,3)(4,5)`. Whitespace between cycles is allowed.
pub fn parse_cycles(degree: u32, text: &str) -> Result<Permutation> {
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut rest = text.trim();
    if rest == "()" {
        return Ok(Permutation::identity(degree));
    }
    while !rest.is_empty() {
        ensure!(
            rest.starts_with('('),
            "expected '(' in cycle notation at {:?}",
            rest
        );
        let close = rest.find(')').context("unclosed cycle")?;
        let body = &rest[1..close];
        let mut cyc = Vec::new();
        for tok in body.split(',') {
            let p: u32 = tok.trim().parse().with_context(|| format!("bad point {:?}", tok))?;
            ensure!(p >= 1 && p <= degree, "point {} outside 1..={}", p, degree);
            cyc.push(p - 1);
        }
        ensure!(cyc.len() >= 2, "cycle of length < 2 in {:?}", text);
        cycles.push(cyc);
        rest = rest[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles)
}

/// Parses a generator file: a `degree N` header line followed by one
/// permutation per line in 1-based cycle notation. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_generator_file(text: &str) -> Result<(u32, Vec<Permutation>)> {
    let mut degree: Option<u32> = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match degree {
            None => {
                let rest = line
                    .strip_prefix("degree")
                    .with_context(|| format!("line {}: expected 'degree N' header", lineno + 1))?;
                degree = Some(rest.trim().parse().context("bad degree")?);
            }
            Some(n) => {
                gens.push(
                    parse_cycles(n, line)
                        .with_context(|| format!("line {}: bad permutation", lineno + 1))?,
                );
            }
        }
    }
    match degree {
        Some(n) if !gens.is_empty() => Ok((n, gens)),
        Some(_) => bail!("generator file has no generators"),
        None => bail!("generator file has no degree header"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_convention_is_left_to_right() {
        let a = parse_cycles(4, "(1,2)").unwrap();
        let b = parse_cycles(4, "(2,3)").unwrap();
        let ab = a.compose(&b);
        // 0 -> a -> 1 -> b -> 2
        assert_eq!(ab.apply(0), 2);
        assert_eq!(ab.apply(2), 1);
        assert_eq!(ab.apply(1), 0);
    }

    #[test]
    fn inverse_and_conjugate() {
        let g = parse_cycles(5, "(1,2,3)(4,5)").unwrap();
        assert!(g.compose(&g.inverse()).is_identity());
        let h = parse_cycles(5, "(1,4)").unwrap();
        let c = g.conjugate_by(&h);
        // conjugation relabels points: (1,2,3)(4,5)^(1,4) = (4,2,3)(1,5)
        assert_eq!(c, parse_cycles(5, "(2,3,4)(1,5)").unwrap());
    }

    #[test]
    fn display_round_trips() {
        let g = parse_cycles(6, "(1,3,5)(2,6)").unwrap();
        assert_eq!(parse_cycles(6, &g.to_string()).unwrap(), g);
        assert!(Permutation::identity(6).to_string() == "()");
    }

    #[test]
    fn order_of_product_of_cycles() {
        let g = parse_cycles(7, "(1,2,3)(4,5)(6,7)").unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(Permutation::identity(3).order(), 1);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_cycles(4, "(1,2,9)").is_err());
        assert!(parse_cycles(4, "(1,1)").is_err());
        assert!(parse_cycles(4, "(1,2").is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn generator_file_parsing() {
        let (n, gens) = parse_generator_file("# comment\ndegree 5\n(1,2,3,4,5)\n(1,2)\n").unwrap();
        assert_eq!(n, 5);
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].apply(4), 0);
        assert!(parse_generator_file("degree 5\n").is_err());
        assert!(parse_generator_file("(1,2)\n").is_err());
    }
}

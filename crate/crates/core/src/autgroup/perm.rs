//! Permutations, automorphism pairs, and a deterministic Schreier–Sims
//! chain used for group orders and point stabilizers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::incidence::{is_permutation, IncidenceStructure};

/// `p[x]` is the image of `x`.
pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `(p ∘ q)(x) = p(q(x))`.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&x| p[x]).collect()
}

pub fn invert(p: &[usize]) -> Perm {
    let mut out = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        out[y] = x;
    }
    out
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// Pair of bijections on points and lines.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AutPair {
    pub point_perm: Perm,
    pub line_perm: Perm,
}

impl AutPair {
    pub fn identity(n_points: usize, n_lines: usize) -> Self {
        AutPair {
            point_perm: identity(n_points),
            line_perm: identity(n_lines),
        }
    }

    /// Line permutation induced by a point permutation; `None` when some
    /// line is not mapped onto a line.
    pub fn from_point_perm(s: &IncidenceStructure, point_perm: Perm) -> Option<Self> {
        if point_perm.len() != s.n_points() || !is_permutation(&point_perm) {
            return None;
        }
        let mut line_perm = Vec::with_capacity(s.n_lines());
        for l in s.lines() {
            let image = l.iter().map(|&p| point_perm[p]);
            let first = point_perm[*l.first()?];
            let target = s
                .pencil(first)
                .iter()
                .copied()
                .find(|&m| s.line(m).len() == l.len() && image.clone().all(|q| s.incident(q, m)))?;
            line_perm.push(target);
        }
        is_permutation(&line_perm).then_some(AutPair { point_perm, line_perm })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AutPair) -> AutPair {
        AutPair {
            point_perm: compose(&self.point_perm, &other.point_perm),
            line_perm: compose(&self.line_perm, &other.line_perm),
        }
    }

    pub fn inverse(&self) -> AutPair {
        AutPair {
            point_perm: invert(&self.point_perm),
            line_perm: invert(&self.line_perm),
        }
    }

    pub fn is_identity(&self) -> bool {
        is_identity(&self.point_perm) && is_identity(&self.line_perm)
    }

    /// Bijective, and `a I l ⇔ φ'(a) I φ''(l)`.
    pub fn is_automorphism_of(&self, s: &IncidenceStructure) -> bool {
        self.is_isomorphism(s, s)
    }

    pub fn is_isomorphism(&self, s1: &IncidenceStructure, s2: &IncidenceStructure) -> bool {
        if self.point_perm.len() != s1.n_points()
            || self.line_perm.len() != s1.n_lines()
            || s1.n_points() != s2.n_points()
            || s1.n_lines() != s2.n_lines()
            || s1.incidence_count() != s2.incidence_count()
            || !is_permutation(&self.point_perm)
            || !is_permutation(&self.line_perm)
        {
            return false;
        }
        s1.pencils().iter().enumerate().all(|(a, pencil)| {
            pencil
                .iter()
                .all(|&l| s2.incident(self.point_perm[a], self.line_perm[l]))
        })
    }

    /// Smallest `k ≥ 1` with `self^k = id`.
    pub fn order(&self) -> u64 {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.compose(self);
            k += 1;
        }
        k
    }

    /// As one permutation of the Levi graph (points first, then lines).
    pub fn to_levi(&self) -> Perm {
        let n = self.point_perm.len();
        self.point_perm
            .iter()
            .copied()
            .chain(self.line_perm.iter().map(|&l| l + n))
            .collect()
    }

    pub fn from_levi(p: &[usize], n_points: usize) -> AutPair {
        AutPair {
            point_perm: p[..n_points].to_vec(),
            line_perm: p[n_points..].iter().map(|&l| l - n_points).collect(),
        }
    }
}

/// Base and strong generating set, built deterministically.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    base: Vec<usize>,
    gens: Vec<Vec<Perm>>,
    trans: Vec<Vec<Option<Perm>>>,
}

impl StabChain {
    /// Chain for `⟨gens⟩` whose base starts with `prefix`.
    pub fn new(degree: usize, gens: &[Perm], prefix: &[usize]) -> Self {
        let gens: Vec<Perm> = gens.iter().filter(|g| !is_identity(g)).cloned().collect();
        let mut chain = StabChain {
            degree,
            base: Vec::new(),
            gens: Vec::new(),
            trans: Vec::new(),
        };
        for &b in prefix {
            chain.push_level(b);
        }
        if gens.is_empty() {
            return chain;
        }
        if !gens.iter().any(|g| chain.base.iter().any(|&b| g[b] != b)) {
            let moved = (0..degree).find(|&x| gens[0][x] != x).unwrap();
            chain.push_level(moved);
        }
        for l in 0..chain.base.len() {
            let fixed = &chain.base[..l];
            chain.gens[l] = gens
                .iter()
                .filter(|g| fixed.iter().all(|&b| g[b] == b))
                .cloned()
                .collect();
            chain.rebuild(l);
        }
        chain.complete();
        chain
    }

    fn push_level(&mut self, b: usize) {
        self.base.push(b);
        self.gens.push(Vec::new());
        let mut t = vec![None; self.degree];
        t[b] = Some(identity(self.degree));
        self.trans.push(t);
    }

    fn rebuild(&mut self, l: usize) {
        let b = self.base[l];
        let mut t: Vec<Option<Perm>> = vec![None; self.degree];
        t[b] = Some(identity(self.degree));
        let mut queue = vec![b];
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            let u = t[g].clone().unwrap();
            for s in &self.gens[l] {
                let d = s[g];
                if t[d].is_none() {
                    t[d] = Some(compose(s, &u));
                    queue.push(d);
                }
            }
            i += 1;
        }
        self.trans[l] = t;
    }

    fn orbit(&self, l: usize) -> Vec<usize> {
        (0..self.degree).filter(|&x| self.trans[l][x].is_some()).collect()
    }

    /// Sifts `g` from level `from`; returns the residue and the level where
    /// sifting stopped (`base.len()` when it went through).
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.base.len() {
            let x = g[self.base[l]];
            match &self.trans[l][x] {
                Some(u) => g = compose(&invert(u), &g),
                None => return (g, l),
            }
        }
        (g, self.base.len())
    }

    fn complete(&mut self) {
        let mut i = self.base.len() as isize - 1;
        while i >= 0 {
            let l = i as usize;
            let mut jump = None;
            'scan: for beta in self.orbit(l) {
                let u_beta = self.trans[l][beta].clone().unwrap();
                for s in self.gens[l].clone() {
                    let u_sb = self.trans[l][s[beta]].as_ref().unwrap();
                    let h = compose(&invert(u_sb), &compose(&s, &u_beta));
                    let (y, j) = self.strip(h, l + 1);
                    if j == self.base.len() && is_identity(&y) {
                        continue;
                    }
                    if j == self.base.len() {
                        let moved = (0..self.degree).find(|&x| y[x] != x).unwrap();
                        self.push_level(moved);
                    }
                    for m in l + 1..=j {
                        self.gens[m].push(y.clone());
                        self.rebuild(m);
                    }
                    jump = Some(j);
                    break 'scan;
                }
            }
            match jump {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        (0..self.base.len()).map(|l| self.orbit(l).len()).collect()
    }

    pub fn order(&self) -> Result<u128> {
        self.order_from(0)
    }

    /// Order of the stabilizer of `base[..level]`.
    pub fn order_from(&self, level: usize) -> Result<u128> {
        (level..self.base.len()).try_fold(1u128, |acc, l| {
            acc.checked_mul(self.orbit(l).len() as u128)
                .ok_or_else(|| Error::SearchCapExceeded("group order overflows".into()))
        })
    }

    /// Strong generators of the stabilizer of `base[..level]`.
    pub fn generators_from(&self, level: usize) -> Vec<Perm> {
        let mut out: Vec<Perm> = self.gens.get(level).cloned().unwrap_or_default();
        out.sort();
        out.dedup();
        out
    }

    pub fn contains(&self, g: &[usize]) -> bool {
        let (y, j) = self.strip(g.to_vec(), 0);
        j == self.base.len() && is_identity(&y)
    }
}

/// Automorphism group given by generators and its exact order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermGroup {
    pub n_points: usize,
    pub n_lines: usize,
    pub generators: Vec<AutPair>,
    pub order: u128,
    /// Base vertices of the search (Levi indices, lines offset by the
    /// point count) and the orbit length found at each.
    pub base: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
}

impl PermGroup {
    pub fn levi_generators(&self) -> Vec<Perm> {
        self.generators.iter().map(AutPair::to_levi).collect()
    }

    pub fn chain(&self, prefix: &[usize]) -> StabChain {
        StabChain::new(self.n_points + self.n_lines, &self.levi_generators(), prefix)
    }

    pub fn contains(&self, f: &AutPair) -> bool {
        self.chain(&[]).contains(&f.to_levi())
    }

    /// Orbits of the group on points, each sorted, ordered by least point.
    pub fn point_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.n_points;
        let mut orbit_of = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if orbit_of[a] != usize::MAX {
                continue;
            }
            let id = out.len();
            orbit_of[a] = id;
            let mut orbit = vec![a];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.generators {
                    let y = g.point_perm[x];
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = id;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// All elements, when the order is at most `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<AutPair>> {
        if self.order > cap {
            return Err(Error::SearchCapExceeded(format!(
                "group of order {} exceeds enumeration cap {cap}",
                self.order
            )));
        }
        let id = AutPair::identity(self.n_points, self.n_lines);
        let mut seen = std::collections::HashSet::new();
        seen.insert(id.clone());
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let h = g.compose(&out[i]);
                if seen.insert(h.clone()) {
                    out.push(h);
                }
            }
            i += 1;
        }
        out.sort();
        Ok(out)
    }

    /// Stabilizer of a point, via a chain whose base starts at it.
    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        let chain = self.chain(&[point]);
        let generators = chain
            .generators_from(1)
            .iter()
            .map(|p| AutPair::from_levi(p, self.n_points))
            .collect();
        Ok(PermGroup {
            n_points: self.n_points,
            n_lines: self.n_lines,
            generators,
            order: chain.order_from(1)?,
            base: chain.base()[1..].to_vec(),
            orbit_sizes: chain.orbit_sizes()[1..].to_vec(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Perm {
        (0..n).map(|i| (i + 1) % n).collect()
    }

    #[test]
    fn compose_and_invert() {
        let p = cycle(5);
        let q = invert(&p);
        assert!(is_identity(&compose(&p, &q)));
        assert_eq!(compose(&p, &p), vec![2, 3, 4, 0, 1]);
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=7 {
            let mut swap = identity(n);
            swap.swap(0, 1);
            let chain = StabChain::new(n, &[cycle(n), swap], &[]);
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(chain.order().unwrap(), fact);
        }
    }

    #[test]
    fn dihedral_and_stabilizer() {
        let n = 8;
        let refl: Perm = (0..n).map(|i| (n - i) % n).collect();
        let chain = StabChain::new(n, &[cycle(n), refl.clone()], &[3]);
        assert_eq!(chain.order().unwrap(), 16);
        assert_eq!(chain.order_from(1).unwrap(), 2);
        assert!(chain.contains(&refl));
        let mut swap = identity(n);
        swap.swap(0, 1);
        assert!(!chain.contains(&swap));
    }

    #[test]
    fn trivial_group() {
        let chain = StabChain::new(4, &[identity(4)], &[]);
        assert_eq!(chain.order().unwrap(), 1);
    }
}

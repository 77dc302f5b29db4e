//! Individualise-and-refine search on the Levi graph.
//!
//! Vertices `0..n` are points and `n..n+m` are lines. Colour refinement
//! sorts vertices by (colour, sorted neighbour colours) until the number
//! of cells is stable; colour indices are ranks of those keys, so equal
//! inputs give equal colourings on both sides of an isomorphism test.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::budget::Budget;
use crate::error::Result;
use crate::incidence::IncidenceStructure;

use super::perm::Perm;

pub(crate) struct Levi<'a> {
    s: &'a IncidenceStructure,
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl<'a> Levi<'a> {
    pub(crate) fn new(s: &'a IncidenceStructure) -> Self {
        let n = s.n_points();
        let mut adj: Vec<Vec<usize>> = s.pencils().iter().map(|p| p.iter().map(|&l| l + n).collect()).collect();
        adj.extend(s.lines().iter().cloned());
        Levi { s, n, adj }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        match (u < self.n, v < self.n) {
            (true, false) => self.s.incident(u, v - self.n),
            (false, true) => self.s.incident(v, u - self.n),
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
struct Node {
    color: Vec<u32>,
    ncolors: usize,
    trace: u64,
}

impl Node {
    fn root(g: &Levi, budget: &mut Budget) -> Result<Node> {
        let color = (0..g.len()).map(|v| u32::from(v >= g.n)).collect();
        let ncolors = if g.n == 0 || g.len() == g.n { 1 } else { 2 };
        let mut node = Node {
            color,
            ncolors,
            trace: 0,
        };
        node.refine(g, budget)?;
        Ok(node)
    }

    fn refine(&mut self, g: &Levi, budget: &mut Budget) -> Result<()> {
        budget.step()?;
        let n = g.len();
        let mut hasher = DefaultHasher::new();
        self.trace.hash(&mut hasher);
        loop {
            let keys: Vec<(u32, Vec<u32>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<u32> = g.adj[v].iter().map(|&w| self.color[w]).collect();
                    nb.sort_unstable();
                    (self.color[v], nb)
                })
                .collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
            let mut new = vec![0u32; n];
            let mut c = 0u32;
            for (i, &v) in order.iter().enumerate() {
                if i > 0 && keys[v] != keys[order[i - 1]] {
                    keys[order[i - 1]].hash(&mut hasher);
                    c += 1;
                }
                new[v] = c;
            }
            if let Some(&last) = order.last() {
                keys[last].hash(&mut hasher);
            }
            let count = if n == 0 { 0 } else { c as usize + 1 };
            count.hash(&mut hasher);
            let stable = count == self.ncolors;
            self.color = new;
            self.ncolors = count;
            if stable {
                break;
            }
        }
        self.trace = hasher.finish();
        Ok(())
    }

    fn individualize(&self, g: &Levi, v: usize, budget: &mut Budget) -> Result<Node> {
        let mut child = self.clone();
        child.color[v] = child.ncolors as u32;
        child.ncolors += 1;
        child.refine(g, budget)?;
        Ok(child)
    }

    fn is_discrete(&self) -> bool {
        self.ncolors == self.color.len()
    }

    /// Vertices of the first non-singleton cell, sorted.
    fn target_cell(&self) -> Vec<usize> {
        let mut size = vec![0usize; self.ncolors];
        for &c in &self.color {
            size[c as usize] += 1;
        }
        let Some(c) = size.iter().position(|&s| s > 1) else {
            return Vec::new();
        };
        self.cell(c as u32)
    }

    fn cell(&self, c: u32) -> Vec<usize> {
        (0..self.color.len()).filter(|&v| self.color[v] == c).collect()
    }

    fn matches(&self, other: &Node) -> bool {
        self.ncolors == other.ncolors && self.trace == other.trace
    }
}

/// Bijection from `left` to `right` carrying one discrete colouring onto
/// the other, if it preserves adjacency.
fn leaf_map(g1: &Levi, g2: &Levi, left: &Node, right: &Node) -> Option<Perm> {
    let n = left.color.len();
    let mut by_color = vec![usize::MAX; n];
    for v in 0..n {
        by_color[right.color[v] as usize] = v;
    }
    let p: Perm = (0..n).map(|v| by_color[left.color[v] as usize]).collect();
    if p.contains(&usize::MAX) || (0..g1.n).any(|u| p[u] >= g2.n) {
        return None;
    }
    let ok = (0..g1.n).all(|u| g1.adj[u].iter().all(|&w| g2.adjacent(p[u], p[w])));
    ok.then_some(p)
}

fn find_iso(g1: &Levi, g2: &Levi, left: &Node, right: &Node, budget: &mut Budget) -> Result<Option<Perm>> {
    if !left.matches(right) {
        return Ok(None);
    }
    if left.is_discrete() {
        return Ok(leaf_map(g1, g2, left, right));
    }
    let cell = left.target_cell();
    let c = left.color[cell[0]];
    let other = right.cell(c);
    if other.len() != cell.len() {
        return Ok(None);
    }
    let l2 = left.individualize(g1, cell[0], budget)?;
    for y in other {
        let r2 = right.individualize(g2, y, budget)?;
        if let Some(p) = find_iso(g1, g2, &l2, &r2, budget)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

pub(crate) struct GroupSearch<'a> {
    g: Levi<'a>,
    gens: Vec<Perm>,
    base: Vec<usize>,
    orbit_sizes: Vec<usize>,
}

fn orbit(gens: &[Perm], start: usize, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g[x];
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

impl<'a> GroupSearch<'a> {
    pub(crate) fn run(s: &'a IncidenceStructure, budget: &mut Budget) -> Result<SearchResult> {
        let mut search = GroupSearch {
            g: Levi::new(s),
            gens: Vec::new(),
            base: Vec::new(),
            orbit_sizes: Vec::new(),
        };
        let root = Node::root(&search.g, budget)?;
        let order = search.level(&root, 0, budget)?;
        let mut gens = search.gens;
        gens.sort();
        gens.dedup();
        Ok(SearchResult {
            generators: gens,
            order,
            base: search.base,
            orbit_sizes: search.orbit_sizes,
        })
    }

    fn level(&mut self, node: &Node, depth: usize, budget: &mut Budget) -> Result<u128> {
        if node.is_discrete() {
            return Ok(1);
        }
        let start = self.gens.len();
        let cell = node.target_cell();
        let v = cell[0];
        self.base.push(v);
        self.orbit_sizes.push(1);
        let child = node.individualize(&self.g, v, budget)?;
        let sub = self.level(&child, depth + 1, budget)?;
        let n = self.g.len();
        let mut in_orbit = orbit(&self.gens[start..], v, n);
        let mut rejected = vec![false; n];
        for &w in &cell[1..] {
            if in_orbit[w] || rejected[w] {
                continue;
            }
            let other = node.individualize(&self.g, w, budget)?;
            match find_iso(&self.g, &self.g, &child, &other, budget)? {
                Some(p) => {
                    self.gens.push(p);
                    in_orbit = orbit(&self.gens[start..], v, n);
                }
                None => {
                    let o = orbit(&self.gens[start..], w, n);
                    for (r, x) in rejected.iter_mut().zip(o) {
                        *r |= x;
                    }
                }
            }
        }
        let size = in_orbit.iter().filter(|&&x| x).count();
        self.orbit_sizes[depth] = size;
        (size as u128)
            .checked_mul(sub)
            .ok_or_else(|| crate::error::Error::SearchCapExceeded("group order overflows".into()))
    }
}

pub(crate) struct SearchResult {
    pub generators: Vec<Perm>,
    pub order: u128,
    pub base: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
}

/// Levi-graph isomorphism `s1 → s2` mapping points to points.
pub(crate) fn isomorphism(
    s1: &IncidenceStructure,
    s2: &IncidenceStructure,
    budget: &mut Budget,
) -> Result<Option<Perm>> {
    if s1.n_points() != s2.n_points() || s1.n_lines() != s2.n_lines() || s1.incidence_count() != s2.incidence_count() {
        return Ok(None);
    }
    let g1 = Levi::new(s1);
    let g2 = Levi::new(s2);
    let r1 = Node::root(&g1, budget)?;
    let r2 = Node::root(&g2, budget)?;
    find_iso(&g1, &g2, &r1, &r2, budget)
}

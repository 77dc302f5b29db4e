//! Finite groups: products of cyclic groups in additive notation, and
//! arbitrary groups given by a Cayley table.
//!
//! Elements are addressed by a canonical index. For a cyclic product the
//! index is the mixed-radix encoding of the residue sequence with the first
//! coordinate most significant, so numeric order on indices is the
//! lexicographic order on residues. For a Cayley table the index is the row
//! number.

use std::collections::BTreeSet;
use std::fmt;

use crate::budget::Caps;
use crate::error::{Error, Result};

/// Canonical index of a group element.
pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    CyclicProduct { moduli: Vec<usize> },
    Cayley { table: Vec<Vec<usize>> },
}

/// How a group is described before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescription {
    CyclicProduct(Vec<usize>),
    Cayley(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    kind: GroupKind,
    order: usize,
    identity: Element,
    // cyclic products: place values of the mixed radix; cayley: unused
    weights: Vec<usize>,
    // cayley only
    inverses: Vec<Element>,
}

pub fn make_group(desc: &GroupDescription, caps: &Caps) -> Result<GroupSpec> {
    match desc {
        GroupDescription::CyclicProduct(m) => GroupSpec::cyclic_product_capped(m, caps.cyclic_order),
        GroupDescription::Cayley(t) => GroupSpec::from_table(t.clone(), caps.cayley_order),
    }
}

impl GroupSpec {
    /// `C_{n_1} ⊕ … ⊕ C_{n_r}` with the default order cap.
    pub fn cyclic_product(moduli: &[usize]) -> Result<Self> {
        Self::cyclic_product_capped(moduli, Caps::default().cyclic_order)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::cyclic_product(&[n])
    }

    pub fn cyclic_product_capped(moduli: &[usize], cap: usize) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::Invalid("a cyclic product needs at least one modulus".into()));
        }
        if let Some(m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::Invalid(format!("modulus {m} is smaller than 2")));
        }
        let mut order: usize = 1;
        for &m in moduli {
            order = order
                .checked_mul(m)
                .filter(|&o| o <= cap)
                .ok_or(Error::OrderCapExceeded {
                    order: order.saturating_mul(m),
                    cap,
                })?;
        }
        let mut weights = vec![1; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * moduli[i + 1];
        }
        Ok(GroupSpec {
            kind: GroupKind::CyclicProduct {
                moduli: moduli.to_vec(),
            },
            order,
            identity: 0,
            weights,
            inverses: Vec::new(),
        })
    }

    /// Validates a Cayley table: Latin square, two-sided identity and
    /// inverses, associativity.
    pub fn from_table(table: Vec<Vec<usize>>, cap: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NonGroupTable("empty table".into()));
        }
        if n > cap {
            return Err(Error::OrderCapExceeded { order: n, cap });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonGroupTable(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NonGroupTable(format!("row {i} is not a permutation")));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return Err(Error::NonGroupTable(format!("column {j} is not a permutation")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NonGroupTable("no identity".into()))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            let b = (0..n).find(|&b| table[a][b] == identity).unwrap();
            if table[b][a] != identity {
                return Err(Error::NonGroupTable(format!("element {a} has no two-sided inverse")));
            }
            inverses[a] = b;
        }
        check_associative(&table)?;
        Ok(GroupSpec {
            kind: GroupKind::Cayley { table },
            order: n,
            identity,
            weights: Vec::new(),
            inverses,
        })
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn moduli(&self) -> Option<&[usize]> {
        match &self.kind {
            GroupKind::CyclicProduct { moduli } => Some(moduli),
            GroupKind::Cayley { .. } => None,
        }
    }

    /// `Some(n)` for a single cyclic factor `C_n`.
    pub fn cyclic_modulus(&self) -> Option<usize> {
        match self.moduli() {
            Some([n]) => Some(*n),
            _ => None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        match &self.kind {
            GroupKind::CyclicProduct { .. } => true,
            GroupKind::Cayley { table } => (0..self.order).all(|a| (0..a).all(|b| table[a][b] == table[b][a])),
        }
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn check(&self, a: Element) -> Result<Element> {
        if a < self.order {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange(a.to_string()))
        }
    }

    #[inline]
    pub fn op(&self, a: Element, b: Element) -> Element {
        match &self.kind {
            GroupKind::CyclicProduct { moduli } => {
                let mut out = 0;
                for (i, &m) in moduli.iter().enumerate() {
                    let w = self.weights[i];
                    let x = (a / w) % m;
                    let y = (b / w) % m;
                    let s = x + y;
                    out += if s >= m { s - m } else { s } * w;
                }
                out
            }
            GroupKind::Cayley { table } => table[a][b],
        }
    }

    #[inline]
    pub fn inverse(&self, a: Element) -> Element {
        match &self.kind {
            GroupKind::CyclicProduct { moduli } => {
                let mut out = 0;
                for (i, &m) in moduli.iter().enumerate() {
                    let w = self.weights[i];
                    let x = (a / w) % m;
                    out += ((m - x) % m) * w;
                }
                out
            }
            GroupKind::Cayley { .. } => self.inverses[a],
        }
    }

    /// `a · b⁻¹`
    #[inline]
    pub fn div(&self, a: Element, b: Element) -> Element {
        self.op(a, self.inverse(b))
    }

    /// `a⁻¹ · b`
    #[inline]
    pub fn ldiv(&self, a: Element, b: Element) -> Element {
        self.op(self.inverse(a), b)
    }

    pub fn pow(&self, a: Element, mut e: u64) -> Element {
        let mut base = a;
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.op(acc, base);
            }
            base = self.op(base, base);
            e >>= 1;
        }
        acc
    }

    /// Residue sequence of an element (cayley groups: the one-element
    /// sequence holding the index).
    pub fn residues(&self, a: Element) -> Vec<usize> {
        match &self.kind {
            GroupKind::CyclicProduct { moduli } => {
                moduli.iter().zip(&self.weights).map(|(&m, &w)| (a / w) % m).collect()
            }
            GroupKind::Cayley { .. } => vec![a],
        }
    }

    pub fn from_residues(&self, residues: &[usize]) -> Result<Element> {
        match &self.kind {
            GroupKind::CyclicProduct { moduli } => {
                if residues.len() != moduli.len() {
                    return Err(Error::ElementOutOfRange(format!("{residues:?}")));
                }
                let mut out = 0;
                for ((&x, &m), &w) in residues.iter().zip(moduli).zip(&self.weights) {
                    if x >= m {
                        return Err(Error::ElementOutOfRange(format!("{residues:?}")));
                    }
                    out += x * w;
                }
                Ok(out)
            }
            GroupKind::Cayley { .. } => match residues {
                [a] => self.check(*a),
                _ => Err(Error::ElementOutOfRange(format!("{residues:?}"))),
            },
        }
    }

    /// `(1,2)` for multi-coordinate elements, `3` otherwise.
    pub fn format_element(&self, a: Element) -> String {
        format_residues(&self.residues(a))
    }

    /// Parses `3`, `1,2` or `(1,2)`.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let t = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let residues = t
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::ElementOutOfRange(text.to_string()))?;
        self.from_residues(&residues)
    }

    /// Closure of `S ∪ S⁻¹ ∪ {1}` under the group operation, sorted.
    pub fn subgroup_generated(&self, gens: &[Element]) -> Vec<Element> {
        let mut gens: Vec<Element> = gens.to_vec();
        gens.extend(gens.clone().into_iter().map(|g| self.inverse(g)));
        gens.sort_unstable();
        gens.dedup();
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut queue = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.op(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| member[x]).collect()
    }

    /// `G_D = {g : g·D = D}`, sorted.
    pub fn left_stabilizer(&self, set: &[Element]) -> Vec<Element> {
        let Some(&d0) = set.iter().min() else {
            return self.elements().collect();
        };
        let members: BTreeSet<Element> = set.iter().copied().collect();
        // g·d0 ∈ D forces g ∈ D·d0⁻¹
        let mut out: Vec<Element> = members
            .iter()
            .map(|&d| self.div(d, d0))
            .filter(|&g| members.iter().all(|&d| members.contains(&self.op(g, d))))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Left translate `a·D`, sorted.
    pub fn translate(&self, a: Element, set: &[Element]) -> Vec<Element> {
        let mut out: Vec<Element> = set.iter().map(|&d| self.op(a, d)).collect();
        out.sort_unstable();
        out
    }

    /// The full Cayley table, used when a product involves a table group.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        match &self.kind {
            GroupKind::Cayley { table } => table.clone(),
            GroupKind::CyclicProduct { .. } => (0..self.order)
                .map(|a| (0..self.order).map(|b| self.op(a, b)).collect())
                .collect(),
        }
    }
}

fn check_associative(table: &[Vec<usize>]) -> Result<()> {
    // Light's test: the elements g with (xg)y = x(gy) for all x,y form a
    // submagma, so checking a magma-generating set suffices.
    let n = table.len();
    let mut reached = vec![false; n];
    let mut reached_list: Vec<usize> = Vec::new();
    let mut gens = Vec::new();
    while reached_list.len() < n {
        let g = (0..n).find(|&x| !reached[x]).unwrap();
        gens.push(g);
        if !reached[g] {
            reached[g] = true;
            reached_list.push(g);
        }
        let mut i = 0;
        while i < reached_list.len() {
            let a = reached_list[i];
            for &b in &gens {
                for c in [table[a][b], table[b][a]] {
                    if !reached[c] {
                        reached[c] = true;
                        reached_list.push(c);
                    }
                }
            }
            // products among reached elements with earlier ones
            for j in 0..=i {
                let b = reached_list[j];
                for c in [table[a][b], table[b][a]] {
                    if !reached[c] {
                        reached[c] = true;
                        reached_list.push(c);
                    }
                }
            }
            i += 1;
        }
    }
    for &g in &gens {
        for x in 0..n {
            let xg = table[x][g];
            for y in 0..n {
                if table[xg][y] != table[x][table[g][y]] {
                    return Err(Error::NonGroupTable(format!("associativity fails for ({x},{g},{y})")));
                }
            }
        }
    }
    Ok(())
}

pub fn format_residues(r: &[usize]) -> String {
    match r {
        [x] => x.to_string(),
        _ => {
            let inner: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("({})", inner.join(","))
        }
    }
}

/// `G₁ ⊕ G₂`. Cyclic products concatenate their moduli; anything else is
/// realised as a Cayley table indexed by `a·|G₂| + b`.
pub fn direct_sum(g1: &GroupSpec, g2: &GroupSpec, caps: &Caps) -> Result<GroupSpec> {
    match (g1.moduli(), g2.moduli()) {
        (Some(m1), Some(m2)) => {
            let moduli: Vec<usize> = m1.iter().chain(m2).copied().collect();
            GroupSpec::cyclic_product_capped(&moduli, caps.cyclic_order)
        }
        _ => {
            let n2 = g2.order();
            let order = g1.order().saturating_mul(n2);
            if order > caps.cayley_order {
                return Err(Error::OrderCapExceeded {
                    order,
                    cap: caps.cayley_order,
                });
            }
            let table = (0..order)
                .map(|x| {
                    (0..order)
                        .map(|y| g1.op(x / n2, y / n2) * n2 + g2.op(x % n2, y % n2))
                        .collect()
                })
                .collect();
            GroupSpec::from_table(table, caps.cayley_order)
        }
    }
}

/// Inclusion `G₁ → G₁ ⊕ G₂`.
pub fn embed_first(g2: &GroupSpec, a: Element) -> Element {
    a * g2.order() + g2.identity()
}

/// Inclusion `G₂ → G₁ ⊕ G₂`.
pub fn embed_second(g1: &GroupSpec, g2: &GroupSpec, b: Element) -> Element {
    g1.identity() * g2.order() + b
}

pub fn project_first(g2: &GroupSpec, x: Element) -> Element {
    x / g2.order()
}

pub fn project_second(g2: &GroupSpec, x: Element) -> Element {
    x % g2.order()
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Units of `Z_n` in increasing order.
pub fn units(n: usize) -> Vec<usize> {
    (1..n.max(2)).filter(|&a| gcd(a, n) == 1).collect()
}

/// A multiplier of a subset of a cyclic group: `α·D = q + D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Multiplier {
    pub alpha: usize,
    pub shift: Element,
}

/// All units `α` of `Z_n` for which `α·D` is a translate of `D`, with the
/// witnessing translation.
pub fn multiplier_maps(group: &GroupSpec, set: &[Element]) -> Result<Vec<Multiplier>> {
    let n = group.cyclic_modulus().ok_or(Error::NotCyclic)?;
    let mut base: Vec<Element> = set.to_vec();
    base.sort_unstable();
    base.dedup();
    let mut out = Vec::new();
    for alpha in units(n) {
        let mut image: Vec<Element> = base.iter().map(|&d| d * alpha % n).collect();
        image.sort_unstable();
        for q in 0..n {
            if group.translate(q, &base) == image {
                out.push(Multiplier { alpha, shift: q });
            }
        }
    }
    Ok(out)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GroupKind::CyclicProduct { moduli } => {
                let parts: Vec<String> = moduli.iter().map(|m| format!("C{m}")).collect();
                write!(f, "{}", parts.join("+"))
            }
            GroupKind::Cayley { .. } => write!(f, "Cayley({})", self.order),
        }
    }
}

//! Quasi difference sets and the set arithmetic built on them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::budget::Caps;
use crate::error::{Error, Result};
use crate::groups::{self, direct_sum, embed_first, embed_second, units, Element, GroupSpec};

/// A subset of a group, translated so that it contains the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QDSet {
    group: GroupSpec,
    elements: Vec<Element>,
    shift: Element,
}

impl QDSet {
    /// Validates the elements and normalises by `d₀⁻¹·D` (with `d₀` the
    /// least element) when the identity is missing.
    pub fn new(group: GroupSpec, elements: &[Element]) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyDelta);
        }
        for &e in elements {
            group.check(e)?;
        }
        let mut set = elements.to_vec();
        set.sort_unstable();
        set.dedup();
        let e = group.identity();
        let shift = if set.binary_search(&e).is_ok() { e } else { set[0] };
        if shift != e {
            set = group.translate(group.inverse(shift), &set);
        }
        Ok(QDSet {
            group,
            elements: set,
            shift,
        })
    }

    pub fn from_residues(group: GroupSpec, residues: &[Vec<usize>]) -> Result<Self> {
        let elements = residues
            .iter()
            .map(|r| group.from_residues(r))
            .collect::<Result<Vec<_>>>()?;
        QDSet::new(group, &elements)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: Element) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// The element `s` with `elements = s⁻¹ · input`; the identity when no
    /// translation was needed.
    pub fn normalization_shift(&self) -> Element {
        self.shift
    }

    pub fn is_qds(&self) -> bool {
        is_qds(&self.group, &self.elements)
    }

    pub fn residues(&self) -> Vec<Vec<usize>> {
        self.elements.iter().map(|&a| self.group.residues(a)).collect()
    }
}

fn difference_counts(g: &GroupSpec, d: &[Element]) -> Vec<u32> {
    let mut counts = vec![0u32; g.order()];
    for &a in d {
        for &b in d {
            if a != b {
                counts[g.div(a, b)] += 1;
            }
        }
    }
    counts
}

fn dedup_sorted(d: &[Element]) -> Vec<Element> {
    let mut v = d.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn is_qds(g: &GroupSpec, d: &[Element]) -> bool {
    let d = dedup_sorted(d);
    if d.iter().any(|&a| a >= g.order()) {
        return false;
    }
    difference_counts(g, &d).iter().all(|&c| c <= 1)
}

pub fn is_perfect_difference_set(g: &GroupSpec, d: &[Element]) -> bool {
    let d = dedup_sorted(d);
    if d.iter().any(|&a| a >= g.order()) {
        return false;
    }
    let counts = difference_counts(g, &d);
    g.elements().filter(|&c| c != g.identity()).all(|c| counts[c] == 1)
}

/// `D·D⁻¹` as a membership table.
fn quotient_table(g: &GroupSpec, d: &[Element]) -> Vec<bool> {
    let mut member = vec![false; g.order()];
    for &a in d {
        for &b in d {
            member[g.div(a, b)] = true;
        }
    }
    member
}

/// Condition (★): whenever `d₁d₂⁻¹d₃d₄⁻¹ ∈ D·D⁻¹`, one of `d₁=d₂`,
/// `d₃=d₄`, `d₁=d₄`, `d₃=d₂` holds.
pub fn satisfies_star(g: &GroupSpec, d: &[Element]) -> Result<bool> {
    if !is_qds(g, d) {
        return Err(Error::NotAQds);
    }
    Ok(star_counterexample(g, d).is_none())
}

/// First quadruple (in index order) violating (★).
pub fn star_counterexample(g: &GroupSpec, d: &[Element]) -> Option<[Element; 4]> {
    let d = dedup_sorted(d);
    let quot = quotient_table(g, &d);
    for &d1 in &d {
        for &d2 in &d {
            if d1 == d2 {
                continue;
            }
            let x = g.div(d1, d2);
            for &d3 in &d {
                if d3 == d2 {
                    continue;
                }
                let y = g.op(x, d3);
                for &d4 in &d {
                    if d3 == d4 || d1 == d4 {
                        continue;
                    }
                    if quot[g.div(y, d4)] {
                        return Some([d1, d2, d3, d4]);
                    }
                }
            }
        }
    }
    None
}

/// `𝒟_r = {0, e₁, …, e_r}` in `C_{n₁} ⊕ … ⊕ C_{n_r}`.
pub fn canonical_set(moduli: &[usize]) -> Result<QDSet> {
    let g = GroupSpec::cyclic_product(moduli)?;
    let r = moduli.len();
    let mut residues = vec![vec![0; r]];
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        residues.push(e);
    }
    QDSet::from_residues(g, &residues)
}

/// `D₁ ⊎ D₂ = ε₁(D₁) ∪ ε₂(D₂)` in `G₁ ⊕ G₂`.
pub fn qds_sum(d1: &QDSet, d2: &QDSet, caps: &Caps) -> Result<QDSet> {
    if !d1.is_qds() || !d2.is_qds() {
        return Err(Error::NotAQds);
    }
    let (g1, g2) = (d1.group(), d2.group());
    let g = direct_sum(g1, g2, caps)?;
    let mut elements: Vec<Element> = d1.elements().iter().map(|&a| embed_first(g2, a)).collect();
    elements.extend(d2.elements().iter().map(|&b| embed_second(g1, g2, b)));
    QDSet::new(g, &elements)
}

/// `D ⊎ … ⊎ D` (`n` copies).
pub fn qds_power(d: &QDSet, n: usize, caps: &Caps) -> Result<QDSet> {
    if n == 0 {
        return Err(Error::Invalid("power exponent must be at least 1".into()));
    }
    let mut acc = d.clone();
    for _ in 1..n {
        acc = qds_sum(&acc, d, caps)?;
    }
    Ok(acc)
}

/// Translation class of perfect difference sets, listed by its members
/// that contain 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranslationClass {
    pub representative: Vec<Element>,
    pub members: Vec<Vec<Element>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingerSearch {
    pub q: usize,
    pub n: usize,
    /// Sorted by representative.
    pub classes: Vec<TranslationClass>,
    /// Indices into `classes`, grouped by `x ↦ αx` equivalence.
    pub multiplier_classes: Vec<Vec<usize>>,
}

impl SingerSearch {
    /// Members of the first translation class as normalised sets.
    pub fn primary(&self) -> Result<Vec<QDSet>> {
        let g = GroupSpec::cyclic(self.n)?;
        self.classes[0]
            .members
            .iter()
            .map(|m| QDSet::new(g.clone(), m))
            .collect()
    }
}

fn normalized_translates(n: usize, d: &[Element]) -> Vec<Vec<Element>> {
    let mut out: Vec<Vec<Element>> = d
        .iter()
        .map(|&s| {
            let mut t: Vec<Element> = d.iter().map(|&x| (x + n - s) % n).collect();
            t.sort_unstable();
            t
        })
        .collect();
    out.sort();
    out
}

/// All perfect difference sets of size `q+1` in `C_{q²+q+1}`, grouped
/// into translation classes and multiplier classes.
pub fn singer_search(q: usize, caps: &Caps) -> Result<SingerSearch> {
    if q < 2 {
        return Err(Error::Invalid("q must be at least 2".into()));
    }
    let n = q
        .checked_mul(q)
        .and_then(|x| x.checked_add(q + 1))
        .filter(|&n| n <= caps.cyclic_order)
        .ok_or_else(|| Error::SearchCapExceeded(format!("q = {q}")))?;
    let k = q + 1;
    let mut budget = caps.budget();
    let mut found: Vec<Vec<Element>> = Vec::new();
    let mut chosen = vec![0usize];
    let mut used = vec![false; n];
    extend_pds(n, k, &mut chosen, &mut used, &mut found, &mut budget)?;

    let mut classes: BTreeMap<Vec<Element>, Vec<Vec<Element>>> = BTreeMap::new();
    for d in &found {
        let members = normalized_translates(n, d);
        classes.entry(members[0].clone()).or_insert(members);
    }
    let classes: Vec<TranslationClass> = classes
        .into_iter()
        .map(|(representative, members)| TranslationClass {
            representative,
            members,
        })
        .collect();
    let index: BTreeMap<&[Element], usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.representative.as_slice(), i))
        .collect();
    let mut orbit_of = vec![usize::MAX; classes.len()];
    let mut multiplier_classes = Vec::new();
    for i in 0..classes.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::new();
        for alpha in units(n) {
            let image: Vec<Element> = classes[i].representative.iter().map(|&x| x * alpha % n).collect();
            let key = normalized_translates(n, &image).swap_remove(0);
            let j = index[key.as_slice()];
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = multiplier_classes.len();
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        multiplier_classes.push(orbit);
    }
    Ok(SingerSearch {
        q,
        n,
        classes,
        multiplier_classes,
    })
}

fn extend_pds(
    n: usize,
    k: usize,
    chosen: &mut Vec<Element>,
    used: &mut [bool],
    found: &mut Vec<Vec<Element>>,
    budget: &mut crate::budget::Budget,
) -> Result<()> {
    budget.step()?;
    if chosen.len() == k {
        found.push(chosen.clone());
        return Ok(());
    }
    let start = chosen.last().map_or(0, |&x| x + 1);
    'next: for x in start..n {
        let mut added = Vec::with_capacity(2 * chosen.len());
        for &y in chosen.iter() {
            for diff in [(x + n - y) % n, (y + n - x) % n] {
                if used[diff] || added.contains(&diff) {
                    for &a in &added {
                        used[a] = false;
                    }
                    continue 'next;
                }
                used[diff] = true;
                added.push(diff);
            }
        }
        chosen.push(x);
        extend_pds(n, k, chosen, used, found, budget)?;
        chosen.pop();
        for &a in &added {
            used[a] = false;
        }
    }
    Ok(())
}

/// Witness `(d₁,d₂,d₃,d₄)` for the Pappus embedding hypothesis:
/// `dᵢ ∈ D∖{1}`, `d₁ ≠ d₃`, `d₁² = d₂⁻¹`, `d₃² = d₄⁻¹`.
pub fn pappus_condition(g: &GroupSpec, d: &[Element]) -> Result<Option<[Element; 4]>> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let d = dedup_sorted(d);
    let e = g.identity();
    let rest: Vec<Element> = d.iter().copied().filter(|&x| x != e).collect();
    let partner = |x: Element| {
        let y = g.inverse(g.op(x, x));
        rest.binary_search(&y).ok().map(|_| y)
    };
    for &d1 in &rest {
        let Some(d2) = partner(d1) else { continue };
        for &d3 in &rest {
            if d3 == d1 {
                continue;
            }
            if let Some(d4) = partner(d3) {
                return Ok(Some([d1, d2, d3, d4]));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "elements", rename_all = "snake_case")]
pub enum TriangleCondition {
    All,
    AllButOne(Element),
    Fails(Vec<Element>),
}

/// For every `dᵢ ∈ D`, are there `d_j, d_r ∈ D` (possibly equal) with
/// `dᵢ + d_j + d_r = 0`?
pub fn triangle_condition(g: &GroupSpec, d: &[Element]) -> Result<TriangleCondition> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let d = dedup_sorted(d);
    let e = g.identity();
    let missing: Vec<Element> = d
        .iter()
        .copied()
        .filter(|&di| !d.iter().any(|&dj| d.iter().any(|&dr| g.op(g.op(di, dj), dr) == e)))
        .collect();
    Ok(match missing.as_slice() {
        [] => TriangleCondition::All,
        [s] => TriangleCondition::AllButOne(*s),
        _ => TriangleCondition::Fails(missing),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffProfile {
    pub neg_d: Vec<Element>,
    pub d_plus_d: Vec<Element>,
    pub neg_2d: Vec<Element>,
    pub diff_dd: Vec<Element>,
    pub size4_admissible: Vec<Element>,
    pub size3_admissible: Vec<Element>,
}

pub fn diff_profile(g: &GroupSpec, d: &[Element]) -> Result<DiffProfile> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let d = dedup_sorted(d);
    let n = g.order();
    let mark = |it: &mut dyn Iterator<Item = Element>| {
        let mut m = vec![false; n];
        for x in it {
            m[x] = true;
        }
        m
    };
    let neg_d = mark(&mut d.iter().map(|&x| g.inverse(x)));
    let d_plus_d = mark(&mut d.iter().flat_map(|&a| d.iter().map(move |&b| g.op(a, b))));
    let neg_2d = mark(&mut d.iter().map(|&x| g.inverse(g.op(x, x))));
    let diff_dd = mark(&mut d.iter().flat_map(|&a| d.iter().map(move |&b| g.div(a, b))));
    let in_d = mark(&mut d.iter().copied());
    let neg_sum = mark(&mut (0..n).filter(|&x| d_plus_d[x]).map(|x| g.inverse(x)));
    let list = |m: &[bool]| (0..n).filter(|&x| m[x]).collect::<Vec<_>>();
    let size4: Vec<Element> = (0..n)
        .filter(|&x| neg_sum[x] && in_d[x] && !neg_2d[x] && !neg_d[x])
        .collect();
    let size3: Vec<Element> = (0..n)
        .filter(|&x| neg_sum[x] && in_d[x] && neg_2d[x] && !neg_d[x])
        .collect();
    Ok(DiffProfile {
        neg_d: list(&neg_d),
        d_plus_d: list(&d_plus_d),
        neg_2d: list(&neg_2d),
        diff_dd: list(&diff_dd),
        size4_admissible: size4,
        size3_admissible: size3,
    })
}

/// Multiplier maps of a normalised set; see [`groups::multiplier_maps`].
pub fn multipliers(d: &QDSet) -> Result<Vec<groups::Multiplier>> {
    groups::multiplier_maps(d.group(), d.elements())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(m: &[usize]) -> GroupSpec {
        GroupSpec::cyclic_product(m).unwrap()
    }

    #[test]
    fn normalisation_records_shift() {
        let d = QDSet::new(c(&[7]), &[2, 3, 5]).unwrap();
        assert_eq!(d.elements(), &[0, 1, 3]);
        assert_eq!(d.normalization_shift(), 2);
        assert_eq!(QDSet::new(c(&[7]), &[]), Err(Error::EmptyDelta));
        assert!(QDSet::new(c(&[7]), &[7]).is_err());
    }

    #[test]
    fn qds_examples() {
        assert!(is_qds(&c(&[7]), &[0, 1, 3]));
        assert!(!is_qds(&c(&[5]), &[0, 1, 2]));
        assert!(is_qds(&c(&[5]), &[0]));
        assert!(is_perfect_difference_set(&c(&[7]), &[0, 1, 3]));
        assert!(is_perfect_difference_set(&c(&[13]), &[0, 1, 3, 9]));
        assert!(!is_perfect_difference_set(&c(&[7]), &[0, 1, 2]));
    }

    #[test]
    fn star_examples() {
        let d = canonical_set(&[4, 4]).unwrap();
        assert_eq!(satisfies_star(d.group(), d.elements()), Ok(true));
        let d = canonical_set(&[3, 3]).unwrap();
        assert_eq!(satisfies_star(d.group(), d.elements()), Ok(false));
        assert_eq!(satisfies_star(&c(&[7]), &[0, 1, 3]), Ok(false));
        assert_eq!(satisfies_star(&c(&[5]), &[0, 1, 2]), Err(Error::NotAQds));
    }

    #[test]
    fn star_counterexample_for_fano() {
        // 1 - 0 + 3 - 0 = 4 = 0 - 3 ∈ D - D
        let g = c(&[7]);
        let w = star_counterexample(&g, &[0, 1, 3]).unwrap();
        let [d1, d2, d3, d4] = w;
        assert!(d1 != d2 && d3 != d4 && d1 != d4 && d3 != d2);
        assert!(quotient_table(&g, &[0, 1, 3])[(d1 + 7 - d2 + d3 + 7 - d4) % 7]);
    }

    #[test]
    fn canonical_examples() {
        let d = canonical_set(&[3, 3]).unwrap();
        assert_eq!(d.residues(), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(canonical_set(&[3, 3, 3]).unwrap().len(), 4);
        let d = canonical_set(&[2]).unwrap();
        assert_eq!(d.elements(), &[0, 1]);
    }

    #[test]
    fn sum_examples() {
        let caps = Caps::default();
        let a = QDSet::new(c(&[3]), &[0, 1]).unwrap();
        let f = QDSet::new(c(&[7]), &[0, 1, 3]).unwrap();
        let s = qds_sum(&a, &f, &caps).unwrap();
        assert_eq!(s.residues(), vec![vec![0, 0], vec![0, 1], vec![0, 3], vec![1, 0]]);
        assert!(s.is_qds());
        assert_eq!(qds_sum(&a, &a, &caps).unwrap(), canonical_set(&[3, 3]).unwrap());
        let z = QDSet::new(c(&[2]), &[0]).unwrap();
        let s = qds_sum(&z, &f, &caps).unwrap();
        assert_eq!(s.residues(), vec![vec![0, 0], vec![0, 1], vec![0, 3]]);
        let bad = QDSet::new(c(&[5]), &[0, 1, 2]).unwrap();
        assert_eq!(qds_sum(&bad, &f, &caps), Err(Error::NotAQds));
    }

    #[test]
    fn singer_q2() {
        let s = singer_search(2, &Caps::default()).unwrap();
        assert_eq!(s.n, 7);
        assert_eq!(s.classes.len(), 2);
        assert_eq!(s.classes[0].members, vec![vec![0, 1, 3], vec![0, 2, 6], vec![0, 4, 5]]);
        assert_eq!(s.multiplier_classes, vec![vec![0, 1]]);
    }

    #[test]
    fn singer_q3() {
        let s = singer_search(3, &Caps::default()).unwrap();
        assert_eq!(s.n, 13);
        assert_eq!(
            s.classes[0].members,
            vec![
                vec![0, 1, 3, 9],
                vec![0, 2, 8, 12],
                vec![0, 4, 5, 7],
                vec![0, 6, 10, 11]
            ]
        );
        for class in &s.classes {
            for m in &class.members {
                assert!(is_perfect_difference_set(&c(&[13]), m));
            }
        }
        assert_eq!(s.multiplier_classes.len(), 1);
        assert!(singer_search(1, &Caps::default()).is_err());
    }

    #[test]
    fn pappus_condition_examples() {
        let d = canonical_set(&[3, 3]).unwrap();
        let [d1, d2, d3, d4] = pappus_condition(d.group(), d.elements()).unwrap().unwrap();
        let g = d.group();
        assert_ne!(d1, d3);
        assert_eq!(g.op(d1, d1), g.inverse(d2));
        assert_eq!(g.op(d3, d3), g.inverse(d4));
        let mut pair = [g.residues(d1), g.residues(d3)];
        pair.sort();
        assert_eq!(pair, [vec![0, 1], vec![1, 0]]);
        assert_eq!(pappus_condition(&c(&[7]), &[0, 1, 3]), Ok(None));
        assert_eq!(pappus_condition(&c(&[13]), &[0, 1, 3, 9]), Ok(None));
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(triangle_condition(&c(&[13]), &[0, 1, 3, 9]), Ok(TriangleCondition::All));
        assert_eq!(
            triangle_condition(&c(&[13]), &[0, 2, 8, 12]),
            Ok(TriangleCondition::AllButOne(8))
        );
        assert_eq!(triangle_condition(&c(&[7]), &[0, 1, 3]), Ok(TriangleCondition::All));
    }

    #[test]
    fn profile_examples() {
        let p = diff_profile(&c(&[7]), &[0, 1, 3]).unwrap();
        assert_eq!(p.neg_d, vec![0, 4, 6]);
        assert_eq!(p.neg_2d, vec![0, 1, 5]);
        assert_eq!(p.size4_admissible, vec![3]);
        assert_eq!(p.size3_admissible, vec![1]);
        let p = diff_profile(&c(&[13]), &[0, 1, 3, 9]).unwrap();
        assert_eq!(p.size4_admissible, vec![1, 3, 9]);
        assert!(p.size3_admissible.is_empty());
        let p = diff_profile(&c(&[5]), &[0]).unwrap();
        assert_eq!(p.neg_d, vec![0]);
        assert_eq!(p.diff_dd, vec![0]);
        assert!(p.size4_admissible.is_empty());
    }
}

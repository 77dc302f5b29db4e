//! Exhaustive checks of Veblen, Desargues, Pappus embeddings, unique
//! triangle completion, and the neighbourhood line profile of powers of
//! cyclic planes.

use serde::Serialize;

use crate::budget::{Budget, Caps};
use crate::error::{Error, Result};
use crate::groups::Element;
use crate::incidence::IncidenceStructure;
use crate::qds;

const NONE: u32 = u32::MAX;

/// Join and meet lookup tables for a partial linear space.
pub struct Tables {
    n: usize,
    m: usize,
    join: Vec<u32>,
    meet: Vec<u32>,
}

impl Tables {
    pub fn new(s: &IncidenceStructure) -> Result<Self> {
        if !s.is_pls() {
            return Err(Error::NotPls);
        }
        let (n, m) = (s.n_points(), s.n_lines());
        let mut join = vec![NONE; n * n];
        for (l, pts) in s.lines().iter().enumerate() {
            for &a in pts {
                for &b in pts {
                    if a != b {
                        join[a * n + b] = l as u32;
                    }
                }
            }
        }
        let mut meet = vec![NONE; m * m];
        for (a, pencil) in s.pencils().iter().enumerate() {
            for &l1 in pencil {
                for &l2 in pencil {
                    if l1 != l2 {
                        meet[l1 * m + l2] = a as u32;
                    }
                }
            }
        }
        Ok(Tables { n, m, join, meet })
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let l = self.join[a * self.n + b];
        (l != NONE).then_some(l as usize)
    }

    #[inline]
    pub fn meet(&self, l1: usize, l2: usize) -> Option<usize> {
        let p = self.meet[l1 * self.m + l2];
        (p != NONE).then_some(p as usize)
    }

    /// Some line carries all given points (repeats allowed).
    pub fn collinear(&self, s: &IncidenceStructure, pts: &[usize]) -> bool {
        let mut distinct: Vec<usize> = pts.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        match distinct.as_slice() {
            [] => true,
            [a] => !s.pencil(*a).is_empty(),
            [a, b, rest @ ..] => match self.join(*a, *b) {
                Some(l) => rest.iter().all(|&c| s.incident(c, l)),
                None => false,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeblenCounterexample {
    pub point: usize,
    pub lines: [usize; 2],
    pub transversals: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeblenReport {
    pub holds: bool,
    pub counterexample: Option<VeblenCounterexample>,
    pub checked: u64,
}

/// Two lines through a point, and two lines crossing both away from the
/// point, must meet. The reported counterexample is the least
/// `(a, b₁, b₂, g₁, g₂)` in index order.
pub fn veblen_check(s: &IncidenceStructure, caps: &Caps) -> Result<VeblenReport> {
    let t = Tables::new(s)?;
    let mut budget = caps.budget();
    let mut checked = 0u64;
    for a in 0..s.n_points() {
        let pencil = s.pencil(a);
        for (i, &b1) in pencil.iter().enumerate() {
            for &b2 in &pencil[i + 1..] {
                let mut trans = Vec::new();
                for &p in s.line(b1) {
                    if p == a {
                        continue;
                    }
                    for &g in s.pencil(p) {
                        if g != b1 && t.meet(g, b2).is_some() {
                            trans.push(g);
                        }
                    }
                }
                trans.sort_unstable();
                trans.dedup();
                for (j, &g1) in trans.iter().enumerate() {
                    for &g2 in &trans[j + 1..] {
                        budget.step()?;
                        checked += 1;
                        if t.meet(g1, g2).is_none() {
                            return Ok(VeblenReport {
                                holds: false,
                                counterexample: Some(VeblenCounterexample {
                                    point: a,
                                    lines: [b1, b2],
                                    transversals: [g1, g2],
                                }),
                                checked,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(VeblenReport {
        holds: true,
        counterexample: None,
        checked,
    })
}

impl VeblenCounterexample {
    /// Re-derives the failure on `s`.
    pub fn replay(&self, s: &IncidenceStructure) -> bool {
        let [b1, b2] = self.lines;
        let [g1, g2] = self.transversals;
        let meets = |x: usize, y: usize| s.line(x).iter().any(|&p| s.incident(p, y));
        s.incident(self.point, b1)
            && s.incident(self.point, b2)
            && b1 != b2
            && g1 != g2
            && !s.incident(self.point, g1)
            && !s.incident(self.point, g2)
            && meets(g1, b1)
            && meets(g1, b2)
            && meets(g2, b1)
            && meets(g2, b2)
            && !meets(g1, g2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesarguesCounterexample {
    pub center: usize,
    pub lines: [usize; 3],
    pub triangle: [usize; 3],
    pub triangle2: [usize; 3],
    /// Meets of corresponding sides 12, 13, 23.
    pub meets: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesarguesReport {
    pub holds: bool,
    pub counterexample: Option<DesarguesCounterexample>,
    pub checked: u64,
}

/// Centrally perspective triangles whose corresponding sides all meet have
/// collinear meets. Triangles are three pairwise collinear points not on a
/// common line.
pub fn desargues_check(s: &IncidenceStructure, caps: &Caps) -> Result<DesarguesReport> {
    let t = Tables::new(s)?;
    let mut budget = caps.budget();
    let mut checked = 0u64;
    for o in 0..s.n_points() {
        let pencil = s.pencil(o);
        let r = pencil.len();
        for i1 in 0..r {
            for i2 in i1 + 1..r {
                for i3 in i2 + 1..r {
                    let lines = [pencil[i1], pencil[i2], pencil[i3]];
                    if let Some(cx) = desargues_at(s, &t, o, lines, &mut budget, &mut checked)? {
                        return Ok(DesarguesReport {
                            holds: false,
                            counterexample: Some(cx),
                            checked,
                        });
                    }
                }
            }
        }
    }
    Ok(DesarguesReport {
        holds: true,
        counterexample: None,
        checked,
    })
}

fn desargues_at(
    s: &IncidenceStructure,
    t: &Tables,
    o: usize,
    lines: [usize; 3],
    budget: &mut Budget,
    checked: &mut u64,
) -> Result<Option<DesarguesCounterexample>> {
    let pts: Vec<Vec<usize>> = lines
        .iter()
        .map(|&l| s.line(l).iter().copied().filter(|&p| p != o).collect())
        .collect();
    for &p1 in &pts[0] {
        for &q1 in &pts[0] {
            if q1 <= p1 {
                continue;
            }
            for &p2 in &pts[1] {
                let Some(s12) = t.join(p1, p2) else { continue };
                for &q2 in &pts[1] {
                    if q2 == p2 {
                        continue;
                    }
                    let Some(t12) = t.join(q1, q2) else { continue };
                    let Some(r12) = t.meet(s12, t12) else { continue };
                    for &p3 in &pts[2] {
                        if s.incident(p3, s12) {
                            continue;
                        }
                        let (Some(s13), Some(s23)) = (t.join(p1, p3), t.join(p2, p3)) else {
                            continue;
                        };
                        for &q3 in &pts[2] {
                            if q3 == p3 || s.incident(q3, t12) {
                                continue;
                            }
                            let (Some(t13), Some(t23)) = (t.join(q1, q3), t.join(q2, q3)) else {
                                continue;
                            };
                            let (Some(r13), Some(r23)) = (t.meet(s13, t13), t.meet(s23, t23)) else {
                                continue;
                            };
                            budget.step()?;
                            *checked += 1;
                            if !t.collinear(s, &[r12, r13, r23]) {
                                return Ok(Some(DesarguesCounterexample {
                                    center: o,
                                    lines,
                                    triangle: [p1, p2, p3],
                                    triangle2: [q1, q2, q3],
                                    meets: [r12, r13, r23],
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Image of the Pappus configuration: `point_map[i]` and `line_map[j]` are
/// indexed by the points and lines of `D(C₃⊕C₃, {(0,0),(0,1),(1,0)})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub point_map: Vec<usize>,
    pub line_map: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingMethod {
    LemmaTable,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PappusReport {
    pub embedding: Option<Embedding>,
    pub method: EmbeddingMethod,
    /// The `(d₁,d₂,d₃,d₄)` used by the table construction.
    pub witness: Option<[Element; 4]>,
}

pub fn pappus_configuration() -> IncidenceStructure {
    IncidenceStructure::build_canonical(&[3, 3], &Caps::default()).expect("small canonical structure")
}

impl Embedding {
    /// Injective on points and lines, and incidences of the pattern hold.
    pub fn is_valid(&self, pattern: &IncidenceStructure, s: &IncidenceStructure) -> bool {
        let inj = |v: &[usize], bound: usize| {
            let mut seen = vec![false; bound];
            v.iter().all(|&x| x < bound && !std::mem::replace(&mut seen[x], true))
        };
        self.point_map.len() == pattern.n_points()
            && self.line_map.len() == pattern.n_lines()
            && inj(&self.point_map, s.n_points())
            && inj(&self.line_map, s.n_lines())
            && pattern
                .lines()
                .iter()
                .enumerate()
                .all(|(l, pts)| pts.iter().all(|&p| s.incident(self.point_map[p], self.line_map[l])))
    }
}

/// Embedding built from a witness with the point and line tables of the
/// Pappus lemma (abelian groups only).
pub fn pappus_from_witness(s: &IncidenceStructure, w: [Element; 4]) -> Result<Embedding> {
    let prov = s.require_provenance()?;
    let g = prov.group();
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let [d1, d2, d3, d4] = w;
    let e = g.identity();
    let i2 = g.inverse(d2);
    let i4 = g.inverse(d4);
    let pattern = pappus_configuration();
    let pp = pattern.provenance().unwrap();
    let pg = pp.group();
    let points: [([usize; 2], Element); 9] = [
        ([0, 0], e),
        ([1, 0], d1),
        ([0, 1], d3),
        ([1, 2], i2),
        ([2, 1], i4),
        ([1, 1], g.op(i2, i4)),
        ([2, 2], g.op(d1, d3)),
        ([0, 2], g.op(i2, d3)),
        ([2, 0], g.op(i4, d1)),
    ];
    let lines: [([usize; 2], Element); 9] = [
        ([0, 0], e),
        ([1, 1], g.op(i2, i4)),
        ([2, 2], g.op(d1, d3)),
        ([0, 2], i2),
        ([2, 0], i4),
        ([1, 2], d1),
        ([1, 0], g.op(d1, i4)),
        ([2, 1], d3),
        ([0, 1], g.op(d3, i2)),
    ];
    let mut point_map = vec![0; 9];
    for (r, x) in points {
        point_map[pg.from_residues(&r)?] = x;
    }
    let mut line_map = vec![0; 9];
    for (r, b) in lines {
        line_map[pp.line_of_label(pg.from_residues(&r)?)] = prov.line_of_label(b);
    }
    Ok(Embedding { point_map, line_map })
}

/// Finds a Pappus configuration in `s`: through the lemma table when its
/// hypothesis holds, otherwise by backtracking.
pub fn pappus_embed(s: &IncidenceStructure, caps: &Caps) -> Result<PappusReport> {
    let t = Tables::new(s)?;
    let pattern = pappus_configuration();
    if let Some(prov) = s.provenance() {
        let g = prov.group();
        if g.is_abelian() {
            if let Some(w) = qds::pappus_condition(g, prov.qds().elements())? {
                let emb = pappus_from_witness(s, w)?;
                if emb.is_valid(&pattern, s) {
                    return Ok(PappusReport {
                        embedding: Some(emb),
                        method: EmbeddingMethod::LemmaTable,
                        witness: Some(w),
                    });
                }
            }
        }
    }
    let mut budget = caps.budget();
    let embedding = embed_search(&pattern, s, &t, &mut budget)?;
    Ok(PappusReport {
        embedding,
        method: EmbeddingMethod::Search,
        witness: None,
    })
}

/// Backtracking embedding of `pattern` into `s` (points and lines
/// injective, incidences preserved). For point-transitive `s` (coset
/// structures) the first pattern point is pinned to point 0.
pub fn embed_search(
    pattern: &IncidenceStructure,
    s: &IncidenceStructure,
    t: &Tables,
    budget: &mut Budget,
) -> Result<Option<Embedding>> {
    let np = pattern.n_points();
    if np == 0 {
        return Ok(Some(Embedding {
            point_map: Vec::new(),
            line_map: Vec::new(),
        }));
    }
    // BFS order keeps each new point collinear with an earlier one
    let mut order = Vec::with_capacity(np);
    let mut seen = vec![false; np];
    for start in 0..np {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        order.push(start);
        let mut i = order.len() - 1;
        while i < order.len() {
            for x in pattern.collinear_points(order[i]) {
                if !seen[x] {
                    seen[x] = true;
                    order.push(x);
                }
            }
            i += 1;
        }
    }
    let mut state = EmbedState {
        pattern,
        s,
        t,
        order,
        image: vec![usize::MAX; np],
        used: vec![false; s.n_points()],
        pinned: s.provenance().is_some(),
    };
    state.extend(0, budget)
}

struct EmbedState<'a> {
    pattern: &'a IncidenceStructure,
    s: &'a IncidenceStructure,
    t: &'a Tables,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    pinned: bool,
}

impl EmbedState<'_> {
    fn extend(&mut self, depth: usize, budget: &mut Budget) -> Result<Option<Embedding>> {
        if depth == self.order.len() {
            return Ok(self.finish());
        }
        let x = self.order[depth];
        let anchor = self
            .pattern
            .collinear_points(x)
            .into_iter()
            .find(|&y| y != x && self.image[y] != usize::MAX);
        let candidates: Vec<usize> = match anchor {
            Some(y) => self.s.collinear_points(self.image[y]),
            None if depth == 0 && self.pinned => vec![0],
            None => (0..self.s.n_points()).collect(),
        };
        for c in candidates {
            if self.used[c] {
                continue;
            }
            budget.step()?;
            self.image[x] = c;
            if self.consistent(x) {
                self.used[c] = true;
                if let Some(e) = self.extend(depth + 1, budget)? {
                    return Ok(Some(e));
                }
                self.used[c] = false;
            }
            self.image[x] = usize::MAX;
        }
        Ok(None)
    }

    fn consistent(&self, x: usize) -> bool {
        for &l in self.pattern.pencil(x) {
            let imgs: Vec<usize> = self
                .pattern
                .line(l)
                .iter()
                .map(|&p| self.image[p])
                .filter(|&p| p != usize::MAX)
                .collect();
            if imgs.len() >= 2 && !self.t.collinear(self.s, &imgs) {
                return false;
            }
        }
        true
    }

    fn finish(&self) -> Option<Embedding> {
        let mut line_map = Vec::with_capacity(self.pattern.n_lines());
        for l in self.pattern.lines() {
            if l.len() < 2 {
                return None;
            }
            line_map.push(self.t.join(self.image[l[0]], self.image[l[1]])?);
        }
        let emb = Embedding {
            point_map: self.image.clone(),
            line_map,
        };
        emb.is_valid(self.pattern, self.s).then_some(emb)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletionReport {
    pub holds: bool,
    /// Triples `(o, L₁, L₂, p)` by number of completions.
    pub none: u64,
    pub exactly_one: u64,
    pub several: u64,
    /// Every ordered line pair at a point has exactly one uncompletable
    /// point on its first line.
    pub one_excluded_per_pair: bool,
}

/// For every point `o`, lines `L₁ ≠ L₂` through it and `p ≠ o` on `L₁`,
/// counts the points `q ≠ o` on `L₂` collinear with `p`.
pub fn unique_completion_check(s: &IncidenceStructure, caps: &Caps) -> Result<CompletionReport> {
    let t = Tables::new(s)?;
    let mut budget = caps.budget();
    let (mut none, mut one, mut several) = (0u64, 0u64, 0u64);
    let mut one_excluded_per_pair = true;
    for o in 0..s.n_points() {
        for &l1 in s.pencil(o) {
            for &l2 in s.pencil(o) {
                if l1 == l2 {
                    continue;
                }
                let mut excluded = 0;
                for &p in s.line(l1) {
                    if p == o {
                        continue;
                    }
                    budget.step()?;
                    let c = s.line(l2).iter().filter(|&&q| q != o && t.join(p, q).is_some()).count();
                    match c {
                        0 => {
                            none += 1;
                            excluded += 1;
                        }
                        1 => one += 1,
                        _ => several += 1,
                    }
                }
                one_excluded_per_pair &= excluded == 1;
            }
        }
    }
    let holds = several == 0 && (none == 0 || one_excluded_per_pair);
    Ok(CompletionReport {
        holds,
        none,
        exactly_one: one,
        several,
        one_excluded_per_pair: none > 0 && one_excluded_per_pair,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileLine {
    pub line: usize,
    pub label: Vec<Element>,
    pub local_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerLineProfile {
    pub exponent: usize,
    pub modulus: usize,
    pub size4_admissible: Vec<Element>,
    pub size3_admissible: Vec<Element>,
    /// Lines `[y]` with `|supp(y)| = 2` by observed local size.
    pub size4_lines: Vec<ProfileLine>,
    pub size3_lines: Vec<ProfileLine>,
    pub size4_matches: bool,
    pub size3_matches: bool,
    /// Lines meeting the neighbourhood have `|supp| ≤ 3`, and local size 2
    /// when `|supp| = 3`.
    pub support_bound_holds: bool,
    /// Largest `|supp(u)|` over `u ∈ D − D`.
    pub max_difference_support: usize,
}

impl PowerLineProfile {
    pub fn matches(&self) -> bool {
        self.size4_matches && self.size3_matches && self.support_bound_holds
    }
}

/// Local sizes of the lines `[y]`, `|supp(y)| = 2`, in the neighbourhood of
/// `θ` in an `n`-th power of a cyclic structure, compared with the
/// admissible-set predictions.
pub fn power_line_profile(s: &IncidenceStructure) -> Result<PowerLineProfile> {
    let prov = s.require_provenance()?;
    let base = &prov.factors()[0];
    if prov.factors().iter().any(|f| f != base) {
        return Err(Error::BadProvenance("summands are not all equal".into()));
    }
    let k = base
        .group()
        .cyclic_modulus()
        .ok_or_else(|| Error::BadProvenance("base group is not cyclic".into()))?;
    if prov.stabilizer().len() != 1 {
        return Err(Error::LabelMapUnavailable);
    }
    let profile = qds::diff_profile(base.group(), base.elements())?;
    let theta = prov.group().identity();
    let nb = s.neighborhood(theta);
    let supp = |y: &[Element]| y.iter().filter(|&&c| c != 0).count();
    let in4 = |c: Element| profile.size4_admissible.binary_search(&c).is_ok();
    let in3 = |c: Element| profile.size3_admissible.binary_search(&c).is_ok();
    let mut size4_lines = Vec::new();
    let mut size3_lines = Vec::new();
    let (mut size4_matches, mut size3_matches, mut support_bound_holds) = (true, true, true);
    for (l, &rep) in prov.line_reps().iter().enumerate() {
        let y = prov.coords(rep);
        let local = nb.local_size(l);
        let sp = supp(&y);
        if local > 0 && (sp > 3 || (sp == 3 && local != 2)) {
            support_bound_holds = false;
        }
        if sp != 2 {
            continue;
        }
        let nz: Vec<Element> = y.iter().copied().filter(|&c| c != 0).collect();
        let pred4 = nz.iter().all(|&c| in4(c));
        let pred3 = (in4(nz[0]) && in3(nz[1])) || (in3(nz[0]) && in4(nz[1]));
        size4_matches &= pred4 == (local == 4);
        size3_matches &= pred3 == (local == 3);
        let entry = ProfileLine {
            line: l,
            label: y,
            local_size: local,
        };
        match local {
            4 => size4_lines.push(entry),
            3 => size3_lines.push(entry),
            _ => {}
        }
    }
    let g = prov.group();
    let d = prov.qds().elements();
    let max_difference_support = d
        .iter()
        .flat_map(|&a| d.iter().map(move |&b| g.div(a, b)))
        .map(|u| supp(&prov.coords(u)))
        .max()
        .unwrap_or(0);
    Ok(PowerLineProfile {
        exponent: prov.factors().len(),
        modulus: k,
        size4_admissible: profile.size4_admissible,
        size3_admissible: profile.size3_admissible,
        size4_lines,
        size3_lines,
        size4_matches,
        size3_matches,
        support_bound_holds,
        max_difference_support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;
    use crate::qds::QDSet;

    fn fano() -> IncidenceStructure {
        IncidenceStructure::build(&QDSet::new(GroupSpec::cyclic(7).unwrap(), &[0, 1, 3]).unwrap()).unwrap()
    }

    fn canonical(m: &[usize]) -> IncidenceStructure {
        IncidenceStructure::build_canonical(m, &Caps::default()).unwrap()
    }

    #[test]
    fn fano_is_veblen_and_desargues() {
        let caps = Caps::default();
        assert!(veblen_check(&fano(), &caps).unwrap().holds);
        assert!(desargues_check(&fano(), &caps).unwrap().holds);
    }

    #[test]
    fn multi_pappus_fails_veblen() {
        let caps = Caps::default();
        let s = canonical(&[3, 3, 3]);
        let r = veblen_check(&s, &caps).unwrap();
        assert!(!r.holds);
        assert!(r.counterexample.unwrap().replay(&s));
        assert!(desargues_check(&s, &caps).unwrap().holds);
    }

    #[test]
    fn c4_square_is_veblen_and_desargues() {
        let caps = Caps::default();
        let s = canonical(&[4, 4]);
        assert!(veblen_check(&s, &caps).unwrap().holds);
        assert!(desargues_check(&s, &caps).unwrap().holds);
        assert_eq!(pappus_embed(&s, &caps).unwrap().embedding, None);
    }

    fn desargues_configuration(with_axis: bool) -> IncidenceStructure {
        let mut lines = vec![
            vec![0, 1, 4],
            vec![0, 2, 5],
            vec![0, 3, 6],
            vec![1, 2, 7],
            vec![4, 5, 7],
            vec![1, 3, 8],
            vec![4, 6, 8],
            vec![2, 3, 9],
            vec![5, 6, 9],
        ];
        if with_axis {
            lines.push(vec![7, 8, 9]);
        }
        IncidenceStructure::from_lines(10, lines).unwrap()
    }

    #[test]
    fn missing_axis_is_found() {
        let caps = Caps::default();
        assert!(desargues_check(&desargues_configuration(true), &caps).unwrap().holds);
        let r = desargues_check(&desargues_configuration(false), &caps).unwrap();
        assert!(!r.holds);
        let cx = r.counterexample.unwrap();
        let mut meets = cx.meets;
        meets.sort_unstable();
        assert_eq!(meets, [7, 8, 9]);
    }

    #[test]
    fn pg23_is_desarguesian() {
        let s = IncidenceStructure::build(&QDSet::new(GroupSpec::cyclic(13).unwrap(), &[0, 1, 3, 9]).unwrap()).unwrap();
        let r = desargues_check(&s, &Caps::default()).unwrap();
        assert!(r.holds);
        assert!(r.checked > 0);
    }

    #[test]
    fn pappus_contains_itself() {
        let p = pappus_configuration();
        let r = pappus_embed(&p, &Caps::default()).unwrap();
        let e = r.embedding.unwrap();
        assert!(e.is_valid(&p, &p));
        assert_eq!(r.method, EmbeddingMethod::LemmaTable);
    }

    #[test]
    fn non_pls_is_rejected() {
        let s = IncidenceStructure::build(&QDSet::new(GroupSpec::cyclic(5).unwrap(), &[0, 1, 2]).unwrap()).unwrap();
        assert!(matches!(veblen_check(&s, &Caps::default()), Err(Error::NotPls)));
    }

    #[test]
    fn completion_counts() {
        let caps = Caps::default();
        for m in [&[3, 3][..], &[3, 3, 3]] {
            let r = unique_completion_check(&canonical(m), &caps).unwrap();
            assert!(r.holds);
            assert_eq!((r.none, r.several), (0, 0));
        }
        let r = unique_completion_check(&canonical(&[4, 4]), &caps).unwrap();
        assert!(r.holds);
        assert!(r.one_excluded_per_pair);
        let r = unique_completion_check(&fano(), &caps).unwrap();
        assert!(!r.holds);
        assert!(r.several > 0);
    }

    #[test]
    fn fano_square_profile() {
        let caps = Caps::default();
        let f = QDSet::new(GroupSpec::cyclic(7).unwrap(), &[0, 1, 3]).unwrap();
        let f2 = IncidenceStructure::build_power(&f, 2, &caps).unwrap();
        let p = power_line_profile(&f2).unwrap();
        assert!(p.matches());
        let labels: Vec<Vec<usize>> = p.size4_lines.iter().map(|l| l.label.clone()).collect();
        assert_eq!(labels, vec![vec![3, 3]]);
        let labels: Vec<Vec<usize>> = p.size3_lines.iter().map(|l| l.label.clone()).collect();
        assert_eq!(labels, vec![vec![1, 3], vec![3, 1]]);
        assert_eq!(p.max_difference_support, 2);
    }
}

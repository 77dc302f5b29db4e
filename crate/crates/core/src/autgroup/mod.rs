//! Automorphism groups, isomorphisms, and the explicit automorphisms of
//! coset structures (translations, lifted group automorphisms, coordinate
//! permutations, product maps, cyclic lifts).

mod perm;
mod search;

use std::collections::HashSet;

use serde::Serialize;

pub use perm::{compose, identity, invert, AutPair, Perm, PermGroup, StabChain};

use crate::budget::Caps;
use crate::error::{Error, Result};
use crate::groups::{Element, GroupSpec};
use crate::incidence::{IncidenceStructure, Provenance};
use crate::qds::QDSet;

/// Full automorphism group. The order from the search tree is checked
/// against a Schreier–Sims chain built from the returned generators.
pub fn automorphism_group(s: &IncidenceStructure, caps: &Caps) -> Result<PermGroup> {
    let mut budget = caps.budget();
    let found = search::GroupSearch::run(s, &mut budget)?;
    let n = s.n_points();
    let generators: Vec<AutPair> = found.generators.iter().map(|p| AutPair::from_levi(p, n)).collect();
    debug_assert!(generators.iter().all(|g| g.is_automorphism_of(s)));
    let group = PermGroup {
        n_points: n,
        n_lines: s.n_lines(),
        generators,
        order: found.order,
        base: found.base,
        orbit_sizes: found.orbit_sizes,
    };
    let check = group.chain(&[]).order()?;
    if check != group.order {
        return Err(Error::Invalid(format!(
            "search order {} disagrees with generated order {check}",
            group.order
        )));
    }
    Ok(group)
}

/// An isomorphism `s1 → s2`, or `None` after an exhaustive search.
pub fn isomorphism(s1: &IncidenceStructure, s2: &IncidenceStructure, caps: &Caps) -> Result<Option<AutPair>> {
    let mut budget = caps.budget();
    let found = search::isomorphism(s1, s2, &mut budget)?;
    Ok(found.map(|p| AutPair::from_levi(&p, s1.n_points())))
}

/// Isomorphism onto the dual structure.
pub fn self_duality(s: &IncidenceStructure, caps: &Caps) -> Result<Option<AutPair>> {
    isomorphism(s, &s.dual(), caps)
}

pub fn stabilizer(group: &PermGroup, point: usize) -> Result<PermGroup> {
    if point >= group.n_points {
        return Err(Error::ElementOutOfRange(point.to_string()));
    }
    group.stabilizer(point)
}

/// Order of the subgroup fixing every point of `line`.
pub fn line_pointwise_stabilizer_order(group: &PermGroup, s: &IncidenceStructure, line: usize) -> Result<u128> {
    let fixed = s.line(line);
    group.chain(fixed).order_from(fixed.len())
}

/// Order of the kernel of the action of the stabilizer of `point` on its
/// pencil; 1 means the action is faithful.
pub fn pencil_kernel_order(group: &PermGroup, s: &IncidenceStructure, point: usize) -> Result<u128> {
    let n = s.n_points();
    let mut prefix = vec![point];
    prefix.extend(s.pencil(point).iter().map(|&l| l + n));
    group.chain(&prefix).order_from(prefix.len())
}

fn line_perm_from_labels(prov: &Provenance, label_image: impl Fn(Element) -> Element) -> Perm {
    prov.line_reps()
        .iter()
        .map(|&b| prov.line_of_label(label_image(b)))
        .collect()
}

/// `τ_a : x ↦ a·x` for every `a ∈ G`, in element order.
pub fn translations(s: &IncidenceStructure) -> Result<Vec<AutPair>> {
    let prov = s.require_provenance()?;
    let g = prov.group();
    Ok(g.elements().map(|a| translation(prov, a)).collect())
}

pub fn translation(prov: &Provenance, a: Element) -> AutPair {
    let g = prov.group();
    AutPair {
        point_perm: g.elements().map(|x| g.op(a, x)).collect(),
        line_perm: line_perm_from_labels(prov, |b| g.op(a, b)),
    }
}

/// Checks that `f` (as an element table) is an automorphism of `g`.
pub fn check_group_automorphism(g: &GroupSpec, f: &[Element]) -> Result<()> {
    if f.len() != g.order() || !crate::incidence::is_permutation(f) {
        return Err(Error::NotGroupAutomorphism);
    }
    for a in g.elements() {
        for b in g.elements() {
            if f[g.op(a, b)] != g.op(f[a], f[b]) {
                return Err(Error::NotGroupAutomorphism);
            }
        }
    }
    Ok(())
}

/// `x ↦ αx` on a cyclic group.
pub fn multiplication_map(g: &GroupSpec, alpha: usize) -> Result<Vec<Element>> {
    let n = g.cyclic_modulus().ok_or(Error::NotCyclic)?;
    Ok((0..n).map(|x| x * alpha % n).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedAutomorphism {
    pub map: AutPair,
    /// `f(D) = q·D`.
    pub shift: Element,
}

/// The automorphism induced by a group automorphism `f` with
/// `f(D) = q·D`; `None` when `f(D)` is no translate of `D`.
pub fn lift_group_automorphism(s: &IncidenceStructure, f: &[Element]) -> Result<Option<LiftedAutomorphism>> {
    let prov = s.require_provenance()?;
    let g = prov.group();
    check_group_automorphism(g, f)?;
    let d = prov.qds().elements();
    let mut image: Vec<Element> = d.iter().map(|&x| f[x]).collect();
    image.sort_unstable();
    let Some(q) = image.iter().copied().find(|&q| g.translate(q, d) == image) else {
        return Ok(None);
    };
    // f(b·D) = f(b)·q·D
    let map = AutPair {
        point_perm: f.to_vec(),
        line_perm: line_perm_from_labels(prov, |b| g.op(f[b], q)),
    };
    debug_assert!(map.is_automorphism_of(s));
    Ok(Some(LiftedAutomorphism { map, shift: q }))
}

fn require_power(prov: &Provenance) -> Result<&QDSet> {
    let first = &prov.factors()[0];
    if prov.factors().iter().any(|f| f != first) {
        return Err(Error::BadProvenance("summands are not all equal".into()));
    }
    Ok(first)
}

/// Block permutation `(x₁,…,x_n) ↦ y` with `y_{β(i)} = x_i` on an `n`-th
/// power.
pub fn coordinate_permutation_aut(s: &IncidenceStructure, beta: &[usize]) -> Result<AutPair> {
    let prov = s.require_provenance()?;
    require_power(prov)?;
    let n = prov.factors().len();
    if beta.len() != n || !crate::incidence::is_permutation(beta) {
        return Err(Error::BadCoordinates(format!(
            "{beta:?} is not a permutation of {n} summands"
        )));
    }
    let permute = |x: Element| -> Element {
        let c = prov.coords(x);
        let mut y = vec![0; n];
        for i in 0..n {
            y[beta[i]] = c[i];
        }
        prov.from_coords(&y).expect("coordinates stay in range")
    };
    let g = prov.group();
    Ok(AutPair {
        point_perm: g.elements().map(permute).collect(),
        line_perm: line_perm_from_labels(prov, permute),
    })
}

/// Product of per-summand automorphisms, defined when each factor map
/// sends `[a]` to `[f'(a)]`; `None` otherwise.
pub fn product_automorphism(s: &IncidenceStructure, fs: &[AutPair]) -> Result<Option<AutPair>> {
    let prov = s.require_provenance()?;
    let factors = prov.factors();
    if fs.len() != factors.len() {
        return Err(Error::BadProvenance(format!(
            "{} maps for {} summands",
            fs.len(),
            factors.len()
        )));
    }
    for (f, q) in fs.iter().zip(factors) {
        let fs_i = IncidenceStructure::build(q)?;
        if !f.is_automorphism_of(&fs_i) {
            return Err(Error::BadProvenance("factor map is not an automorphism".into()));
        }
        let fp = fs_i.provenance().unwrap();
        let agrees = q
            .group()
            .elements()
            .all(|a| f.line_perm[fp.line_of_label(a)] == fp.line_of_label(f.point_perm[a]));
        if !agrees {
            return Ok(None);
        }
    }
    let apply = |x: Element| -> Element {
        let c: Vec<Element> = prov.coords(x).iter().zip(fs).map(|(&xi, f)| f.point_perm[xi]).collect();
        prov.from_coords(&c).expect("coordinates stay in range")
    };
    let g = prov.group();
    let map = AutPair {
        point_perm: g.elements().map(apply).collect(),
        line_perm: line_perm_from_labels(prov, apply),
    };
    debug_assert!(map.is_automorphism_of(s));
    Ok(Some(map))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "step", rename_all = "snake_case")]
pub enum LiftOutcome {
    Closes,
    /// The recursion broke at this index: either `f'_i` is not an
    /// automorphism, or `i = k` and the sequence did not return to `f₀`.
    FailsAt(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicLift {
    pub outcome: LiftOutcome,
    /// `f₀, f₁, …` as computed.
    pub sequence: Vec<AutPair>,
    /// On `D(C_k ⊕ G₀, {0,1} ⊎ D₀)`, when the recursion closes.
    pub automorphism: Option<AutPair>,
}

/// Iterates `f₀ = f`, `f'_{i+1} = f''_i` on `D(G₀,D₀)` for `k` steps.
pub fn cyclic_lift(s0: &IncidenceStructure, f: &AutPair, k: usize, caps: &Caps) -> Result<CyclicLift> {
    let prov = s0.require_provenance()?;
    if prov.stabilizer().len() != 1 {
        return Err(Error::LabelMapUnavailable);
    }
    if k < 2 {
        return Err(Error::Invalid("k must be at least 2".into()));
    }
    if !f.is_automorphism_of(s0) {
        return Err(Error::Invalid("f is not an automorphism".into()));
    }
    let mut sequence = vec![f.clone()];
    for i in 1..=k {
        let prev = &sequence[i - 1];
        // f''_{i-1} read as a map on labels
        let mut next: Perm = vec![0; s0.n_points()];
        for (l, &b) in prov.line_reps().iter().enumerate() {
            next[b] = prov.line_reps()[prev.line_perm[l]];
        }
        match AutPair::from_point_perm(s0, next) {
            Some(fi) if i < k => sequence.push(fi),
            Some(fi) => {
                if fi.point_perm != f.point_perm {
                    return Ok(CyclicLift {
                        outcome: LiftOutcome::FailsAt(k),
                        sequence,
                        automorphism: None,
                    });
                }
            }
            None => {
                return Ok(CyclicLift {
                    outcome: LiftOutcome::FailsAt(i),
                    sequence,
                    automorphism: None,
                })
            }
        }
    }
    let ck = QDSet::new(GroupSpec::cyclic(k)?, &[0, 1])?;
    let target = IncidenceStructure::build_sum(&[ck, prov.qds().clone()], caps)?;
    let tp = target.provenance().unwrap();
    let point_perm: Perm = (0..target.n_points())
        .map(|x| {
            let c = tp.coords(x);
            tp.from_coords(&[c[0], sequence[c[0]].point_perm[c[1]]]).unwrap()
        })
        .collect();
    let automorphism = AutPair::from_point_perm(&target, point_perm).filter(|a| a.is_automorphism_of(&target));
    let outcome = if automorphism.is_some() {
        LiftOutcome::Closes
    } else {
        LiftOutcome::FailsAt(k)
    };
    Ok(CyclicLift {
        outcome,
        sequence,
        automorphism,
    })
}

/// The structural content of `Aut ≅ Stab ⋉ G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranslationReport {
    pub translations_are_automorphisms: bool,
    pub transitive: bool,
    pub translations_normal: bool,
    pub order_is_product: bool,
    pub stabilizer_matches: bool,
    pub group_order: u128,
    pub stabilizer_order: u128,
    pub translation_count: usize,
}

impl TranslationReport {
    pub fn passes(&self) -> bool {
        self.translations_are_automorphisms
            && self.transitive
            && self.translations_normal
            && self.order_is_product
            && self.stabilizer_matches
    }
}

pub fn verify_translation_structure(
    s: &IncidenceStructure,
    group: &PermGroup,
    expected_stabilizer_order: u128,
) -> Result<TranslationReport> {
    let prov = s.require_provenance()?;
    let g = prov.group();
    let trans = translations(s)?;
    let translations_are_automorphisms = trans.iter().all(|t| t.is_automorphism_of(s) && group.contains(t));
    let mut reached = vec![false; s.n_points()];
    for t in &trans {
        reached[t.point_perm[g.identity()]] = true;
    }
    let transitive = reached.iter().all(|&x| x);
    let set: HashSet<&AutPair> = trans.iter().collect();
    let translations_normal = group.generators.iter().all(|f| {
        let finv = f.inverse();
        trans.iter().all(|t| set.contains(&f.compose(t).compose(&finv)))
    });
    let stab = group.stabilizer(g.identity())?;
    let order_is_product = (g.order() as u128).checked_mul(stab.order) == Some(group.order);
    Ok(TranslationReport {
        translations_are_automorphisms,
        transitive,
        translations_normal,
        order_is_product,
        stabilizer_matches: stab.order == expected_stabilizer_order,
        group_order: group.order,
        stabilizer_order: stab.order,
        translation_count: trans.len(),
    })
}

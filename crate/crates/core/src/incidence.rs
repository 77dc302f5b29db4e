//! The coset structure `D(G,D)`: points are group elements, lines are the
//! distinct left cosets `b·D`, and `(a)` lies on `[b]` iff `b⁻¹a ∈ D`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::budget::Caps;
use crate::error::{Error, Result};
use crate::groups::{Element, GroupSpec};
use crate::qds::{self, QDSet};

/// Group data behind a structure built from a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    qds: QDSet,
    stabilizer: Vec<Element>,
    line_reps: Vec<Element>,
    line_of_label: Vec<usize>,
    factors: Vec<QDSet>,
}

impl Provenance {
    pub fn qds(&self) -> &QDSet {
        &self.qds
    }

    pub fn group(&self) -> &GroupSpec {
        self.qds.group()
    }

    /// `G_D`; each stored line stands for `|G_D|` equal cosets.
    pub fn stabilizer(&self) -> &[Element] {
        &self.stabilizer
    }

    /// Least coset representative of each line.
    pub fn line_reps(&self) -> &[Element] {
        &self.line_reps
    }

    /// Line index of the coset `[b]`.
    pub fn line_of_label(&self, b: Element) -> usize {
        self.line_of_label[b]
    }

    /// Summands, in order; a single entry when the set is not a sum.
    pub fn factors(&self) -> &[QDSet] {
        &self.factors
    }

    pub fn is_sum(&self) -> bool {
        self.factors.len() > 1
    }

    /// Splits an element of the sum into factor coordinates.
    pub fn coords(&self, mut x: Element) -> Vec<Element> {
        let mut out = vec![0; self.factors.len()];
        for (i, f) in self.factors.iter().enumerate().rev() {
            let n = f.group().order();
            out[i] = x % n;
            x /= n;
        }
        out
    }

    pub fn from_coords(&self, coords: &[Element]) -> Result<Element> {
        if coords.len() != self.factors.len() {
            return Err(Error::BadCoordinates(format!("{coords:?}")));
        }
        let mut x = 0;
        for (f, &c) in self.factors.iter().zip(coords) {
            let n = f.group().order();
            if c >= n {
                return Err(Error::BadCoordinates(format!("{coords:?}")));
            }
            x = x * n + c;
        }
        Ok(x)
    }

    /// Eq. (2) style test: `(a)` on `[b]` iff `b⁻¹a ∈ D`.
    pub fn incident_by_formula(&self, a: Element, b: Element) -> bool {
        self.qds.contains(self.group().ldiv(b, a))
    }

    /// `{[a·d⁻¹] : d ∈ D}` as line indices.
    pub fn pencil_by_formula(&self, a: Element) -> Vec<usize> {
        let g = self.group();
        let out: BTreeSet<usize> = self
            .qds
            .elements()
            .iter()
            .map(|&d| self.line_of_label[g.div(a, d)])
            .collect();
        out.into_iter().collect()
    }

    /// `[a·d₁⁻¹]` for `a⁻¹b = d₁⁻¹d₂`.
    pub fn join_by_formula(&self, a: Element, b: Element) -> Option<usize> {
        if a == b {
            return None;
        }
        let g = self.group();
        let x = g.ldiv(a, b);
        let d = self.qds.elements();
        d.iter()
            .find(|&&d1| self.qds.contains(g.op(d1, x)))
            .map(|&d1| self.line_of_label[g.div(a, d1)])
    }

    /// `(a·d₁)` for lines `[a]`, `[b]` with `a⁻¹b = d₁d₂⁻¹`.
    pub fn meet_by_formula(&self, l1: usize, l2: usize) -> Option<Element> {
        if l1 == l2 {
            return None;
        }
        let g = self.group();
        let (a, b) = (self.line_reps[l1], self.line_reps[l2]);
        let x = g.ldiv(a, b);
        let d = self.qds.elements();
        d.iter()
            .find(|&&d1| self.qds.contains(g.ldiv(x, d1)))
            .map(|&d1| g.op(a, d1))
    }
}

/// Points and lines with a fixed incidence relation. Lines are stored as
/// sorted point sets and are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    point_labels: Vec<String>,
    line_labels: Vec<String>,
    lines: Vec<Vec<usize>>,
    pencils: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
    provenance: Option<Provenance>,
}

fn line_label(g: &GroupSpec, b: Element) -> String {
    let r: Vec<String> = g.residues(b).iter().map(|x| x.to_string()).collect();
    format!("[{}]", r.join(","))
}

impl IncidenceStructure {
    /// `D(G,D)`.
    pub fn build(qds: &QDSet) -> Result<Self> {
        Self::build_with_factors(qds, vec![qds.clone()])
    }

    /// `D(G₁,D₁) ⊕ … ⊕ D(G_m,D_m)`, remembering the summands.
    pub fn build_sum(factors: &[QDSet], caps: &Caps) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::Invalid("a sum needs at least one summand".into()))?;
        let mut acc = first.clone();
        for f in rest {
            acc = qds::qds_sum(&acc, f, caps)?;
        }
        Self::build_with_factors(&acc, factors.to_vec())
    }

    /// `n`-th power `D(G,D)^{⊕n}`.
    pub fn build_power(qds: &QDSet, n: usize, caps: &Caps) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("power exponent must be at least 1".into()));
        }
        Self::build_sum(&vec![qds.clone(); n], caps)
    }

    /// `D(C_{n₁}⊕…⊕C_{n_r}, 𝒟_r)` as the sum of the `{0,1}` summands.
    pub fn build_canonical(moduli: &[usize], caps: &Caps) -> Result<Self> {
        let factors = moduli
            .iter()
            .map(|&m| QDSet::new(GroupSpec::cyclic(m)?, &[0, 1]))
            .collect::<Result<Vec<_>>>()?;
        Self::build_sum(&factors, caps)
    }

    fn build_with_factors(qds: &QDSet, factors: Vec<QDSet>) -> Result<Self> {
        let g = qds.group();
        let n = g.order();
        let check: usize = factors.iter().map(|f| f.group().order()).product();
        if check != n {
            return Err(Error::BadProvenance("factor orders do not multiply to |G|".into()));
        }
        let d = qds.elements();
        let stabilizer = g.left_stabilizer(d);
        let mut line_of_label = vec![usize::MAX; n];
        let mut line_reps = Vec::new();
        let mut lines = Vec::new();
        let mut labels = Vec::new();
        for b in g.elements() {
            if line_of_label[b] != usize::MAX {
                continue;
            }
            let idx = lines.len();
            for &s in &stabilizer {
                line_of_label[g.op(b, s)] = idx;
            }
            lines.push(g.translate(b, d));
            line_reps.push(b);
            labels.push(line_label(g, b));
        }
        let point_labels = g.elements().map(|a| g.format_element(a)).collect();
        let mut s = Self::assemble(n, lines, point_labels, labels);
        s.provenance = Some(Provenance {
            qds: qds.clone(),
            stabilizer,
            line_reps,
            line_of_label,
            factors,
        });
        Ok(s)
    }

    /// Free-standing structure from explicit lines. Points inside a line
    /// are deduplicated; repeated lines are rejected.
    pub fn from_lines(n_points: usize, lines: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashMap::new();
        let mut clean = Vec::with_capacity(lines.len());
        for (j, mut l) in lines.into_iter().enumerate() {
            l.sort_unstable();
            l.dedup();
            if let Some(&p) = l.iter().find(|&&p| p >= n_points) {
                return Err(Error::Invalid(format!("line {j} has point {p} out of range")));
            }
            if seen.insert(l.clone(), j).is_some() {
                return Err(Error::Invalid(format!("line {j} repeats an earlier line")));
            }
            clean.push(l);
        }
        let point_labels = (0..n_points).map(|i| i.to_string()).collect();
        let line_labels = (0..clean.len()).map(|j| format!("L{j}")).collect();
        Ok(Self::assemble(n_points, clean, point_labels, line_labels))
    }

    /// Replaces point labels (length must match).
    pub fn with_point_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n_points() {
            return Err(Error::Invalid("label count does not match point count".into()));
        }
        self.point_labels = labels;
        Ok(self)
    }

    fn assemble(n_points: usize, lines: Vec<Vec<usize>>, point_labels: Vec<String>, line_labels: Vec<String>) -> Self {
        let words = lines.len().div_ceil(64).max(1);
        let mut bits = vec![0u64; n_points * words];
        let mut pencils = vec![Vec::new(); n_points];
        for (j, l) in lines.iter().enumerate() {
            for &p in l {
                bits[p * words + j / 64] |= 1 << (j % 64);
                pencils[p].push(j);
            }
        }
        IncidenceStructure {
            point_labels,
            line_labels,
            lines,
            pencils,
            words,
            bits,
            provenance: None,
        }
    }

    pub fn n_points(&self) -> usize {
        self.pencils.len()
    }

    pub fn n_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line(&self, l: usize) -> &[usize] {
        &self.lines[l]
    }

    pub fn pencils(&self) -> &[Vec<usize>] {
        &self.pencils
    }

    /// Line indices through `a`, sorted.
    pub fn pencil(&self, a: usize) -> &[usize] {
        &self.pencils[a]
    }

    pub fn point_label(&self, a: usize) -> &str {
        &self.point_labels[a]
    }

    pub fn line_label(&self, l: usize) -> &str {
        &self.line_labels[l]
    }

    pub fn point_labels(&self) -> &[String] {
        &self.point_labels
    }

    pub fn line_labels(&self) -> &[String] {
        &self.line_labels
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn require_provenance(&self) -> Result<&Provenance> {
        self.provenance.as_ref().ok_or(Error::NoProvenance)
    }

    #[inline]
    pub fn incident(&self, a: usize, l: usize) -> bool {
        self.bits[a * self.words + l / 64] >> (l % 64) & 1 == 1
    }

    pub fn incidence_count(&self) -> usize {
        self.lines.iter().map(Vec::len).sum()
    }

    /// Common line size, if constant.
    pub fn line_size(&self) -> Option<usize> {
        constant(self.lines.iter().map(Vec::len))
    }

    /// Common number of lines per point, if constant.
    pub fn point_degree(&self) -> Option<usize> {
        constant(self.pencils.iter().map(Vec::len))
    }

    /// Two distinct points share at most one line.
    pub fn is_pls(&self) -> bool {
        let n = self.n_points();
        let mut mark = vec![usize::MAX; n];
        for a in 0..n {
            for &l in &self.pencils[a] {
                for &b in &self.lines[l] {
                    if b == a {
                        continue;
                    }
                    if mark[b] == a {
                        return false;
                    }
                    mark[b] = a;
                }
            }
        }
        true
    }

    pub fn is_configuration(&self) -> bool {
        match (self.line_size(), self.point_degree()) {
            (Some(k), Some(r)) => k == r && k >= 2 && self.is_pls(),
            _ => false,
        }
    }

    /// Line through two distinct points.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        self.pencils[a].iter().copied().find(|&l| self.incident(b, l))
    }

    /// Common point of two distinct lines.
    pub fn meet(&self, l1: usize, l2: usize) -> Result<Option<usize>> {
        if l1 == l2 {
            return Err(Error::DuplicateLine);
        }
        Ok(self.lines[l1].iter().copied().find(|&p| self.incident(p, l2)))
    }

    /// A point counts as collinear with itself when it lies on some line.
    pub fn collinear(&self, a: usize, b: usize) -> bool {
        if a == b {
            !self.pencils[a].is_empty()
        } else {
            self.join(a, b).is_some()
        }
    }

    /// Points collinear with `a`, including `a`, sorted.
    pub fn collinear_points(&self, a: usize) -> Vec<usize> {
        let mut out: BTreeSet<usize> = BTreeSet::new();
        out.insert(a);
        for &l in &self.pencils[a] {
            out.extend(self.lines[l].iter().copied());
        }
        out.into_iter().collect()
    }

    /// Substructure on `points`: every line meeting the set in at least
    /// `min_size` points, cut down to the set. Returns the structure and the
    /// original index of each kept line.
    pub fn restrict(&self, points: &[usize], min_size: usize) -> (IncidenceStructure, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n_points()];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i;
        }
        let mut lines = Vec::new();
        let mut kept = Vec::new();
        let mut labels = Vec::new();
        for (j, l) in self.lines.iter().enumerate() {
            let local: Vec<usize> = l
                .iter()
                .filter(|&&p| index[p] != usize::MAX)
                .map(|&p| index[p])
                .collect();
            if !local.is_empty() && local.len() >= min_size {
                let mut local = local;
                local.sort_unstable();
                lines.push(local);
                kept.push(j);
                labels.push(self.line_labels[j].clone());
            }
        }
        // distinct lines may cut the set in the same points
        let mut seen = HashMap::new();
        let mut keep = vec![true; lines.len()];
        for (i, l) in lines.iter().enumerate() {
            if seen.insert(l.clone(), i).is_some() {
                keep[i] = false;
            }
        }
        let mut it = keep.iter();
        lines.retain(|_| *it.next().unwrap());
        let mut it = keep.iter();
        kept.retain(|_| *it.next().unwrap());
        let mut it = keep.iter();
        labels.retain(|_| *it.next().unwrap());
        let point_labels = points.iter().map(|&p| self.point_labels[p].clone()).collect();
        (Self::assemble(points.len(), lines, point_labels, labels), kept)
    }

    /// Connected component of `a` under collinearity, sorted.
    pub fn component_points(&self, a: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n_points()];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &l in &self.pencils[x] {
                for &y in &self.lines[l] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        (0..self.n_points()).filter(|&x| seen[x]).collect()
    }

    pub fn component(&self, a: usize) -> Component {
        let points = self.component_points(a);
        let (structure, lines) = self.restrict(&points, 1);
        Component {
            points,
            lines,
            structure,
        }
    }

    /// All components, ordered by least point.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.n_points()];
        let mut out = Vec::new();
        for a in 0..self.n_points() {
            if !done[a] {
                let c = self.component_points(a);
                for &x in &c {
                    done[x] = true;
                }
                out.push(c);
            }
        }
        out
    }

    pub fn neighborhood(&self, a: usize) -> Neighborhood {
        let points = self.collinear_points(a);
        let mut member = vec![false; self.n_points()];
        for &p in &points {
            member[p] = true;
        }
        let mut lines = Vec::new();
        let mut meeting = Vec::new();
        for (j, l) in self.lines.iter().enumerate() {
            let local: Vec<usize> = l.iter().copied().filter(|&p| member[p]).collect();
            if local.is_empty() {
                continue;
            }
            let entry = LocalLine { line: j, points: local };
            if entry.points.len() >= 2 {
                lines.push(entry.clone());
            }
            meeting.push(entry);
        }
        Neighborhood {
            center: a,
            points,
            lines,
            meeting,
        }
    }

    /// Points and lines swapped. Points with equal pencils would give equal
    /// lines; only the first such line is kept.
    pub fn dual(&self) -> IncidenceStructure {
        let mut seen = HashMap::new();
        let mut lines = Vec::new();
        let mut labels = Vec::new();
        for (a, p) in self.pencils.iter().enumerate() {
            if seen.insert(p.clone(), a).is_none() {
                lines.push(p.clone());
                labels.push(self.point_labels[a].clone());
            }
        }
        Self::assemble(self.n_lines(), lines, self.line_labels.clone(), labels)
    }

    /// The `J`-part through `c`: points agreeing with `c` outside the
    /// summands in `J`, with the isomorphism onto the sub-sum over `J`.
    pub fn j_part(&self, j: &[usize], c: Element, caps: &Caps) -> Result<JPart> {
        let prov = self.require_provenance()?;
        let m = prov.factors().len();
        let mut js = j.to_vec();
        js.sort_unstable();
        js.dedup();
        if js.is_empty() || js.len() != j.len() || js.iter().any(|&i| i >= m) {
            return Err(Error::BadCoordinates(format!("index set {j:?} for {m} summands")));
        }
        if c >= prov.group().order() {
            return Err(Error::BadCoordinates(format!("base point {c}")));
        }
        let base = prov.coords(c);
        let points: Vec<usize> = (0..self.n_points())
            .filter(|&x| {
                let cx = prov.coords(x);
                (0..m).all(|i| js.contains(&i) || cx[i] == base[i])
            })
            .collect();
        let (structure, lines) = self.restrict(&points, 2);
        let sub: Vec<QDSet> = js.iter().map(|&i| prov.factors()[i].clone()).collect();
        let target = IncidenceStructure::build_sum(&sub, caps)?;
        let tprov = target.provenance().unwrap();
        let point_map: Vec<usize> = points
            .iter()
            .map(|&x| {
                let cx = prov.coords(x);
                let proj: Vec<usize> = js.iter().map(|&i| cx[i]).collect();
                tprov.from_coords(&proj)
            })
            .collect::<Result<_>>()?;
        let index: HashMap<&[usize], usize> = target
            .lines()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_slice(), i))
            .collect();
        let line_map = structure
            .lines()
            .iter()
            .map(|l| {
                let mut img: Vec<usize> = l.iter().map(|&p| point_map[p]).collect();
                img.sort_unstable();
                index
                    .get(img.as_slice())
                    .copied()
                    .ok_or_else(|| Error::Invalid("part line has no counterpart".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(JPart {
            points,
            lines,
            structure,
            target,
            point_map,
            line_map,
        })
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Json => {
                let doc = ExportDoc {
                    points: &self.point_labels,
                    lines: self
                        .lines
                        .iter()
                        .zip(&self.line_labels)
                        .map(|(p, label)| ExportLine { label, points: p })
                        .collect(),
                    line_size: self.line_size(),
                    point_degree: self.point_degree(),
                };
                let mut s = serde_json::to_string_pretty(&doc).expect("serialisable");
                s.push('\n');
                s
            }
            ExportFormat::Matrix => {
                let mut s = String::with_capacity(self.n_points() * (self.n_lines() + 1));
                for a in 0..self.n_points() {
                    for l in 0..self.n_lines() {
                        s.push(if self.incident(a, l) { '1' } else { '0' });
                    }
                    s.push('\n');
                }
                s
            }
            ExportFormat::LeviDot => {
                let mut s = String::from("graph levi {\n");
                for a in 0..self.n_points() {
                    let _ = writeln!(s, "  p{a} [label=\"{}\"];", escape(&self.point_labels[a]));
                }
                for l in 0..self.n_lines() {
                    let _ = writeln!(s, "  L{l} [label=\"{}\"];", escape(&self.line_labels[l]));
                }
                for a in 0..self.n_points() {
                    for &l in &self.pencils[a] {
                        let _ = writeln!(s, "  p{a} -- L{l};");
                    }
                }
                s.push_str("}\n");
                s
            }
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn constant(mut it: impl Iterator<Item = usize>) -> Option<usize> {
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

#[derive(Serialize)]
struct ExportDoc<'a> {
    points: &'a [String],
    lines: Vec<ExportLine<'a>>,
    line_size: Option<usize>,
    point_degree: Option<usize>,
}

#[derive(Serialize)]
struct ExportLine<'a> {
    label: &'a str,
    points: &'a [usize],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Matrix,
    LeviDot,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "matrix" => Ok(ExportFormat::Matrix),
            "levi-dot" => Ok(ExportFormat::LeviDot),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub points: Vec<usize>,
    /// Original indices of the lines in `structure`.
    pub lines: Vec<usize>,
    pub structure: IncidenceStructure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalLine {
    pub line: usize,
    pub points: Vec<usize>,
}

impl LocalLine {
    pub fn local_size(&self) -> usize {
        self.points.len()
    }
}

/// Points collinear with `center` (the center included), the lines with at
/// least two of them, and every line meeting them at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Neighborhood {
    pub center: usize,
    pub points: Vec<usize>,
    pub lines: Vec<LocalLine>,
    pub meeting: Vec<LocalLine>,
}

impl Neighborhood {
    pub fn local_size(&self, line: usize) -> usize {
        self.meeting
            .iter()
            .find(|l| l.line == line)
            .map_or(0, LocalLine::local_size)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JPart {
    pub points: Vec<usize>,
    pub lines: Vec<usize>,
    pub structure: IncidenceStructure,
    pub target: IncidenceStructure,
    /// Part point index to target point index.
    pub point_map: Vec<usize>,
    /// Part line index to target line index.
    pub line_map: Vec<usize>,
}

/// `D(G₁,D₁) ⊕ D(G₂,D₂)`, keeping the summands of both sides.
pub fn sum_structure(s1: &IncidenceStructure, s2: &IncidenceStructure, caps: &Caps) -> Result<IncidenceStructure> {
    let p1 = s1.require_provenance()?;
    let p2 = s2.require_provenance()?;
    let factors: Vec<QDSet> = p1.factors().iter().chain(p2.factors()).cloned().collect();
    let qds = qds::qds_sum(p1.qds(), p2.qds(), caps)?;
    IncidenceStructure::build_with_factors(&qds, factors)
}

/// A pair of maps points → lines and lines → points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Correlation {
    pub point_to_line: Vec<usize>,
    pub line_to_point: Vec<usize>,
}

impl Correlation {
    /// Bijective and incidence-reversing.
    pub fn is_correlation_of(&self, s: &IncidenceStructure) -> bool {
        let (n, m) = (s.n_points(), s.n_lines());
        if self.point_to_line.len() != n || self.line_to_point.len() != m || n != m {
            return false;
        }
        if !is_permutation(&self.point_to_line) || !is_permutation(&self.line_to_point) {
            return false;
        }
        (0..n).all(|a| (0..m).all(|l| s.incident(a, l) == s.incident(self.line_to_point[l], self.point_to_line[a])))
    }

    /// `κ² = id`.
    pub fn is_involution(&self) -> bool {
        (0..self.point_to_line.len()).all(|a| self.line_to_point[self.point_to_line[a]] == a)
    }
}

pub(crate) fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

/// `κ((a)) = [a⁻¹]`, `κ([a]) = (a⁻¹)` on an abelian coset structure.
pub fn standard_correlation(s: &IncidenceStructure) -> Result<Correlation> {
    let prov = s.require_provenance()?;
    let g = prov.group();
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if prov.stabilizer().len() != 1 {
        return Err(Error::LabelMapUnavailable);
    }
    let point_to_line = g.elements().map(|a| prov.line_of_label(g.inverse(a))).collect();
    let line_to_point = prov.line_reps().iter().map(|&b| g.inverse(b)).collect();
    Ok(Correlation {
        point_to_line,
        line_to_point,
    })
}

/// Points lying on their image under the standard correlation.
pub fn selfconjugate_points(s: &IncidenceStructure) -> Result<Vec<usize>> {
    let k = standard_correlation(s)?;
    Ok((0..s.n_points())
        .filter(|&a| s.incident(a, k.point_to_line[a]))
        .collect())
}

//! Kirillov-Reshetikhin dual equivalence graphs on zero-weight spaces.
//!
//! Vertices are the standard-content elements of `B^{R_1} ⊗ ... ⊗ B^{R_k}`.
//! Edges are generated by the crystal commutators
//! `C_i = e_i e_{i+1} f_i f_{i+1}` (indices cyclic in `[n]`), and optionally
//! labelled by the explicit moves `t_i`, `t_n`, `t̄_1` and `t̄_{n-1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::charge::charge;
use crate::crystal::{
    enumerate_zero_weight, grid_inner_slide, grid_is_semistandard, grid_outer_slide, grid_to_segment,
    segment_to_grid, RectSeq, TensorElement,
};
use crate::error::{Error, Result};
use crate::par;
use crate::tableaux::{Entry, Rectangle, Tableau};

// ---------------------------------------------------------------------------
// Descent sets

/// A subset of `[n]` with `n <= 63`, stored as a bitmask (bit `i-1` for `i`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentSet(u64);

impl DescentSet {
    pub fn empty() -> Self {
        DescentSet(0)
    }

    pub fn from_members(members: impl IntoIterator<Item = Entry>) -> Self {
        let mut d = DescentSet(0);
        for i in members {
            d.insert(i);
        }
        d
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, i: Entry) {
        debug_assert!((1..=64).contains(&i));
        self.0 |= 1 << (i - 1);
    }

    pub fn contains(&self, i: Entry) -> bool {
        (1..=64).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn members(&self) -> Vec<Entry> {
        (1..=64).filter(|&i| self.contains(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &DescentSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Neither set contains the other.
    pub fn incomparable(&self, other: &DescentSet) -> bool {
        !self.is_subset(other) && !other.is_subset(self)
    }

    /// `{ i mod n + 1 : i ∈ D }`.
    pub fn rotate(&self, n: Entry) -> DescentSet {
        DescentSet::from_members(self.members().into_iter().map(|i| i % n + 1))
    }

    /// The set with `n` removed, as used for fundamental quasisymmetric functions.
    pub fn without(&self, i: Entry) -> DescentSet {
        let mut d = *self;
        if d.contains(i) {
            d.0 &= !(1 << (i - 1));
        }
        d
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for DescentSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DescentSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<Entry>::deserialize(d)?;
        if let Some(bad) = members.iter().find(|&&i| i == 0 || i > 64) {
            return Err(serde::de::Error::custom(format!("descent {bad} out of range")));
        }
        Ok(DescentSet::from_members(members))
    }
}

/// `pos[v]` is the index of letter `v` in a standard-content word.
fn positions(word: &[Entry]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; word.len() + 1];
    for (p, &v) in word.iter().enumerate() {
        pos[v as usize] = p;
    }
    pos
}

fn descents_of(t: &TensorElement) -> DescentSet {
    let n = t.n();
    let mut d = DescentSet(0);
    if n < 2 {
        return d;
    }
    let pos = positions(t.word());
    for i in 1..n {
        if pos[i as usize + 1] < pos[i as usize] {
            d.insert(i);
        }
    }
    let pr = positions(t.promote().word());
    if pr[2] < pr[1] {
        d.insert(n);
    }
    d
}

fn require_standard(t: &TensorElement) -> Result<()> {
    if t.is_zero_weight() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{t} does not use every letter of [{}] exactly once", t.n())))
    }
}

/// `D(T)`: the classical descents `i` (with `i+1` left of `i` in the row word)
/// together with `n` whenever `1 ∈ D(pr(T))`.
pub fn descent_set(t: &TensorElement) -> Result<DescentSet> {
    require_standard(t)?;
    Ok(descents_of(t))
}

// ---------------------------------------------------------------------------
// Edge labels

/// The move that produced an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    /// `t_i` for `i ∈ [n-1]`: swap the letters `i` and `i+1`.
    Swap(Entry),
    /// `t_n`: the affine move exchanging `n` and `1` across two factors.
    AffineSwap,
    /// `t̄_1`.
    Bar1,
    /// `t̄_{n-1}`.
    BarNminus1,
    /// The crystal commutator `C_i`.
    Commutator(Entry),
}

impl EdgeLabel {
    pub fn is_commutator(&self) -> bool {
        matches!(self, EdgeLabel::Commutator(_))
    }

    /// Display name for alphabet `[n]`: `t3`, `t8` (affine when `n = 8`),
    /// `tbar1`, `tbar7`, `C2`.
    pub fn name(&self, n: Entry) -> String {
        match self {
            EdgeLabel::Swap(i) => format!("t{i}"),
            EdgeLabel::AffineSwap => format!("t{n}"),
            EdgeLabel::Bar1 => "tbar1".into(),
            EdgeLabel::BarNminus1 => format!("tbar{}", n.saturating_sub(1)),
            EdgeLabel::Commutator(i) => format!("C{i}"),
        }
    }

    /// Inverse of [`EdgeLabel::name`].
    pub fn parse(s: &str, n: Entry) -> Result<EdgeLabel> {
        let bad = || Error::Parse(format!("unknown edge label {s:?} for n = {n}"));
        let num = |rest: &str| rest.parse::<Entry>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("tbar") {
            let i = num(rest)?;
            if i == 1 && n >= 3 {
                return Ok(EdgeLabel::Bar1);
            }
            if n >= 3 && i == n - 1 {
                return Ok(EdgeLabel::BarNminus1);
            }
            return Err(bad());
        }
        if let Some(rest) = s.strip_prefix('t') {
            let i = num(rest)?;
            return match i {
                0 => Err(bad()),
                i if i < n => Ok(EdgeLabel::Swap(i)),
                i if i == n => Ok(EdgeLabel::AffineSwap),
                _ => Err(bad()),
            };
        }
        if let Some(rest) = s.strip_prefix('C') {
            let i = num(rest)?;
            return if (1..=n).contains(&i) { Ok(EdgeLabel::Commutator(i)) } else { Err(bad()) };
        }
        Err(bad())
    }

    /// Every explicit (non-commutator) move available on `[n]`.
    pub fn definitional(n: Entry) -> Vec<EdgeLabel> {
        let mut out: Vec<EdgeLabel> = (1..n).map(EdgeLabel::Swap).collect();
        if n >= 2 {
            out.push(EdgeLabel::AffineSwap);
        }
        if n >= 3 {
            out.push(EdgeLabel::Bar1);
            out.push(EdgeLabel::BarNminus1);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Commutator edges

fn commutator_unchecked(t: &TensorElement, i: Entry) -> Option<TensorElement> {
    let n = t.n();
    let j = i % n + 1;
    let out = t
        .f_unchecked(j)?
        .f_unchecked(i)?
        .e_unchecked(j)?
        .e_unchecked(i)?;
    (out != *t).then_some(out)
}

/// `C_i(T) = e_i e_{i+1} f_i f_{i+1} (T)` with `i+1` read cyclically in `[n]`.
///
/// Returns `None` when a step is undefined or the composite fixes `T`.
pub fn commutator_edge(t: &TensorElement, i: Entry) -> Result<Option<TensorElement>> {
    require_standard(t)?;
    let n = t.n();
    if i == 0 || i > n {
        return Err(Error::Domain(format!("commutator index {i} is outside [1, {n}]")));
    }
    if n < 2 {
        return Ok(None);
    }
    let out = commutator_unchecked(t, i);
    if let Some(o) = &out {
        if !o.is_zero_weight() {
            return Err(Error::Verification(format!("C_{i}({t}) = {o} left the zero-weight space")));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Definitional edges

fn rebuild(t: &TensorElement, f: usize, grid: &[Entry]) -> Option<TensorElement> {
    let rect = t.shapes().rects()[f];
    if !grid_is_semistandard(grid, rect) {
        return None;
    }
    let mut word = t.word().to_vec();
    grid_to_segment(grid, rect, &mut word[t.shapes().segment(f)]);
    Some(TensorElement::from_word_unchecked(t.shapes_arc().clone(), word, t.n()))
}

fn cell_of(grid: &[Entry], rect: Rectangle, v: Entry) -> Option<(usize, usize)> {
    grid.iter().position(|&x| x == v).map(|idx| (idx / rect.cols, idx % rect.cols))
}

/// Exchanges the letters `i` and `i+1`, if the result is still semistandard.
fn swap_letters(t: &TensorElement, i: Entry) -> Option<TensorElement> {
    let pos = positions(t.word());
    let (p, q) = (pos[i as usize], pos[i as usize + 1]);
    let mut word = t.word().to_vec();
    word.swap(p, q);
    let swapped = TensorElement::from_word_unchecked(t.shapes_arc().clone(), word, t.n());
    let fp = t.factor_of_position(p);
    if fp == t.factor_of_position(q)
        && !grid_is_semistandard(&swapped.factor_grid(fp), t.shapes().rects()[fp])
    {
        return None;
    }
    Some(swapped)
}

fn affine_swap(t: &TensorElement) -> Option<TensorElement> {
    let n = t.n();
    let pos = positions(t.word());
    let (fn_, f1) = (t.factor_of_position(pos[n as usize]), t.factor_of_position(pos[1]));
    if fn_ == f1 {
        return None;
    }
    let shapes = t.shapes();
    let mut word = t.word().to_vec();

    // n leaves its factor through the top-left corner and comes back as 1
    let rect = shapes.rects()[fn_];
    let mut grid = segment_to_grid(&word[shapes.segment(fn_)], rect);
    let (r, c) = cell_of(&grid, rect, n)?;
    let (er, ec) = grid_outer_slide(&mut grid, rect, r, c);
    grid[er * rect.cols + ec] = 1;
    grid_to_segment(&grid, rect, &mut word[shapes.segment(fn_)]);

    // 1 leaves its factor through the bottom-right corner and comes back as n
    let rect = shapes.rects()[f1];
    let mut grid = segment_to_grid(&word[shapes.segment(f1)], rect);
    let (er, ec) = grid_inner_slide(&mut grid, rect, 0, 0);
    grid[er * rect.cols + ec] = n;
    grid_to_segment(&grid, rect, &mut word[shapes.segment(f1)]);

    Some(TensorElement::from_word_unchecked(t.shapes_arc().clone(), word, n))
}

fn bar_one(t: &TensorElement, d: DescentSet) -> Option<TensorElement> {
    let n = t.n();
    if n < 3 || !d.contains(n) {
        return None;
    }
    let pos = positions(t.word());
    let f = t.factor_of_position(pos[1]);
    if t.factor_of_position(pos[2]) != f || t.factor_of_position(pos[n as usize]) != f {
        return None;
    }
    // row word of the factor reads n ... 1 2 ...
    if !(pos[n as usize] < pos[1] && pos[2] == pos[1] + 1) {
        return None;
    }
    let rect = t.shapes().rects()[f];
    let mut grid = t.factor_grid(f);
    let (r, c) = cell_of(&grid, rect, n)?;
    let (hr, hc) = grid_outer_slide(&mut grid, rect, r, c);
    grid[hr * rect.cols + hc] = 0;
    let one = grid.iter().position(|&x| x == 1)?;
    let two = grid.iter().position(|&x| x == 2)?;
    grid.swap(one, two);
    let (er, ec) = grid_inner_slide(&mut grid, rect, hr, hc);
    grid[er * rect.cols + ec] = n;
    rebuild(t, f, &grid)
}

fn bar_n_minus_one(t: &TensorElement, d: DescentSet) -> Option<TensorElement> {
    let n = t.n();
    if n < 3 || d.contains(n) {
        return None;
    }
    let pos = positions(t.word());
    let (pn, pm, p1) = (pos[n as usize], pos[n as usize - 1], pos[1]);
    let f = t.factor_of_position(p1);
    // only n before n-1 is required: 1 may precede n-1 when n-1 sits in the first row
    if t.factor_of_position(pn) != f || t.factor_of_position(pm) != f || pn > pm {
        return None;
    }
    let rect = t.shapes().rects()[f];
    let cols = rect.cols;
    let mut grid = t.factor_grid(f);

    // (i) slide n out through the top-left corner, refilling with 1
    let (r, c) = cell_of(&grid, rect, n)?;
    let (er, ec) = grid_outer_slide(&mut grid, rect, r, c);
    grid[er * cols + ec] = 1;
    // (ii) slide n-1 out the same way, leaving a hole at the corner
    let (r, c) = cell_of(&grid, rect, n - 1)?;
    let (hr, hc) = grid_outer_slide(&mut grid, rect, r, c);
    grid[hr * cols + hc] = 0;
    // (iii) push the first-row 1 and then the hole out through the bottom-right corner
    let c1 = (1..cols).rev().find(|&c| grid[c] == 1)?;
    let (er, ec) = grid_inner_slide(&mut grid, rect, 0, c1);
    grid[er * cols + ec] = n - 1;
    let (er, ec) = grid_inner_slide(&mut grid, rect, hr, hc);
    grid[er * cols + ec] = n;
    rebuild(t, f, &grid)
}

/// The raw move for `label`, before the incomparability filter.
fn definitional_move(t: &TensorElement, label: EdgeLabel, d: DescentSet) -> Option<TensorElement> {
    let n = t.n();
    match label {
        EdgeLabel::Swap(i) if i >= 1 && i < n => swap_letters(t, i),
        EdgeLabel::AffineSwap if n >= 2 => affine_swap(t),
        EdgeLabel::Bar1 => bar_one(t, d),
        EdgeLabel::BarNminus1 => bar_n_minus_one(t, d),
        _ => None,
    }
}

fn accepts(label: EdgeLabel, d: DescentSet, d2: DescentSet) -> bool {
    match label {
        EdgeLabel::Swap(_) | EdgeLabel::AffineSwap => d.incomparable(&d2),
        _ => true,
    }
}

/// Applies one of the explicit moves `t_i`, `t_n`, `t̄_1`, `t̄_{n-1}`.
///
/// Returns `None` when the precondition of the move fails, when `t_i` or
/// `t_n` yields comparable descent sets, or when the result is not a vertex.
pub fn definitional_edge(t: &TensorElement, label: EdgeLabel) -> Result<Option<TensorElement>> {
    require_standard(t)?;
    if label.is_commutator() {
        return Err(Error::Domain("commutators are not definitional moves; use commutator_edge".into()));
    }
    if let EdgeLabel::Swap(i) = label {
        if i == 0 || i >= t.n() {
            return Err(Error::Domain(format!("t_{i} needs 1 <= i < {}", t.n())));
        }
    }
    let d = descents_of(t);
    let Some(out) = definitional_move(t, label, d) else { return Ok(None) };
    Ok(accepts(label, d, descents_of(&out)).then_some(out))
}

// ---------------------------------------------------------------------------
// The graph

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub element: TensorElement,
    pub descents: DescentSet,
    pub charge: u64,
}

/// An undirected edge `u < v` with every move that realizes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub labels: Vec<EdgeLabel>,
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Refuse to build when the predicted vertex count exceeds this.
    pub limit: Option<u128>,
    /// Also run the explicit moves and attach their labels.
    pub definitional_labels: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { limit: None, definitional_labels: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRDegGraph {
    shapes: Arc<RectSeq>,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

fn find_vertex(vertices: &[Vertex], word: &[Entry]) -> Option<usize> {
    vertices.binary_search_by(|v| v.element.word().cmp(word)).ok()
}

/// Builds `𝒯(R)`.
pub fn build_graph(shapes: &RectSeq, opts: &BuildOptions) -> Result<KRDegGraph> {
    if let Some(limit) = opts.limit {
        let predicted = shapes.predicted_vertex_count();
        if predicted > limit {
            return Err(Error::Resource(format!(
                "{} has {predicted} vertices, above the limit of {limit}",
                shapes.canonical()
            )));
        }
    }
    let elements = enumerate_zero_weight(shapes);
    let stats: Vec<Result<(DescentSet, u64)>> = par::map(&elements, |t| Ok((descents_of(t), charge(t)?)));
    let mut vertices = Vec::with_capacity(elements.len());
    for (element, s) in elements.into_iter().zip(stats) {
        let (descents, charge) = s?;
        vertices.push(Vertex { element, descents, charge });
    }
    let n = shapes.n();
    let ids: Vec<usize> = (0..vertices.len()).collect();

    let probed: Vec<Result<Vec<(usize, usize, EdgeLabel)>>> = par::map(&ids, |&u| {
        let t = &vertices[u].element;
        let mut out = Vec::new();
        if n < 2 {
            return Ok(out);
        }
        for i in 1..=n {
            if let Some(w) = commutator_unchecked(t, i) {
                let v = find_vertex(&vertices, w.word()).ok_or_else(|| {
                    Error::Verification(format!("C_{i}({t}) = {w} is not a vertex"))
                })?;
                out.push((u.min(v), u.max(v), EdgeLabel::Commutator(i)));
            }
        }
        if opts.definitional_labels {
            let d = vertices[u].descents;
            for label in EdgeLabel::definitional(n) {
                let Some(w) = definitional_move(t, label, d) else { continue };
                let Some(v) = find_vertex(&vertices, w.word()) else { continue };
                if accepts(label, d, vertices[v].descents) {
                    out.push((u.min(v), u.max(v), label));
                }
            }
        }
        Ok(out)
    });
    let mut triples = Vec::new();
    for p in probed {
        triples.extend(p?);
    }
    par::sort(&mut triples);
    triples.dedup();

    let mut edges: Vec<Edge> = Vec::new();
    for (u, v, label) in triples {
        match edges.last_mut() {
            Some(e) if e.u == u && e.v == v => e.labels.push(label),
            _ => edges.push(Edge { u, v, labels: vec![label] }),
        }
    }
    Ok(KRDegGraph::assemble(Arc::new(shapes.clone()), vertices, edges))
}

impl KRDegGraph {
    fn assemble(shapes: Arc<RectSeq>, vertices: Vec<Vertex>, edges: Vec<Edge>) -> KRDegGraph {
        let mut uf = UnionFind::new(vertices.len());
        for e in &edges {
            uf.union(e.u, e.v);
        }
        let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut component_of = vec![0; vertices.len()];
        for (x, slot) in component_of.iter_mut().enumerate() {
            let root = uf.find(x);
            let c = *by_root.entry(root).or_insert_with(|| {
                components.push(Vec::new());
                components.len() - 1
            });
            components[c].push(x);
            *slot = c;
        }
        KRDegGraph { shapes, vertices, edges, components, component_of }
    }

    pub fn shapes(&self) -> &RectSeq {
        &self.shapes
    }

    pub fn n(&self) -> Entry {
        self.shapes.n()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Components ordered by their smallest vertex; each is sorted.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn index_of(&self, t: &TensorElement) -> Option<usize> {
        if t.shapes() != self.shapes.as_ref() {
            return None;
        }
        find_vertex(&self.vertices, t.word())
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<&Edge> {
        let (a, b) = (u.min(v), u.max(v));
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(a, b)))
            .ok()
            .map(|k| &self.edges[k])
    }

    /// Edges realized only by commutators or only by explicit moves. Empty
    /// when both constructions agree (and the graph was built with labels).
    pub fn construction_mismatches(&self) -> Vec<&Edge> {
        self.edges
            .iter()
            .filter(|e| {
                let c = e.labels.iter().any(EdgeLabel::is_commutator);
                let t = e.labels.iter().any(|l| !l.is_commutator());
                c != t
            })
            .collect()
    }

    /// Maps each residue of charge mod `d_R` to its component, checking that
    /// there are exactly `d_R` components and each one is a full residue class.
    pub fn components_by_charge(&self) -> Result<BTreeMap<usize, usize>> {
        let d = self.shapes.d_r();
        if self.components.len() != d {
            return Err(Error::Verification(format!(
                "{} has {} components but d_R = {d}",
                self.shapes.canonical(),
                self.components.len()
            )));
        }
        let mut out = BTreeMap::new();
        for (c, comp) in self.components.iter().enumerate() {
            let residue = (self.vertices[comp[0]].charge % d as u64) as usize;
            if let Some(&v) = comp.iter().find(|&&v| (self.vertices[v].charge % d as u64) as usize != residue) {
                return Err(Error::Verification(format!(
                    "component {c} mixes charges {} and {} mod {d}",
                    self.vertices[comp[0]].charge, self.vertices[v].charge
                )));
            }
            if let Some(prev) = out.insert(residue, c) {
                return Err(Error::Verification(format!(
                    "components {prev} and {c} share the charge residue {residue} mod {d}"
                )));
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_repr()).expect("graph serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_repr()).expect("graph serializes")
    }

    fn to_json_repr(&self) -> GraphJson {
        let n = self.n();
        GraphJson {
            shapes: (*self.shapes).clone(),
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexJson {
                    id,
                    factors: v.element.factors().iter().map(Tableau::entry_rows).collect(),
                    descents: v.descents,
                    charge: v.charge,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson { u: e.u, v: e.v, labels: e.labels.iter().map(|l| l.name(n)).collect() })
                .collect(),
            components: self.components.clone(),
        }
    }

    /// Reads a graph written by [`KRDegGraph::to_json`], validating every vertex.
    pub fn from_json(s: &str) -> Result<KRDegGraph> {
        let g: GraphJson = serde_json::from_str(s)?;
        let shapes = Arc::new(g.shapes);
        let n = shapes.n();
        let mut vertices = Vec::with_capacity(g.vertices.len());
        for (idx, v) in g.vertices.into_iter().enumerate() {
            if v.id != idx {
                return Err(Error::Parse(format!("vertex ids must be 0..; found {} at {idx}", v.id)));
            }
            let factors = v
                .factors
                .into_iter()
                .map(Tableau::from_rows)
                .collect::<Result<Vec<_>>>()?;
            let element = TensorElement::new(shapes.clone(), &factors, n)?;
            vertices.push(Vertex { element, descents: v.descents, charge: v.charge });
        }
        if vertices.windows(2).any(|w| w[0].element.word() >= w[1].element.word()) {
            return Err(Error::Parse("vertices must be sorted by row word".into()));
        }
        let mut edges = Vec::with_capacity(g.edges.len());
        for e in g.edges {
            if e.u >= e.v || e.v >= vertices.len() {
                return Err(Error::Parse(format!("bad edge ({}, {})", e.u, e.v)));
            }
            let labels = e
                .labels
                .iter()
                .map(|l| EdgeLabel::parse(l, n))
                .collect::<Result<Vec<_>>>()?;
            edges.push(Edge { u: e.u, v: e.v, labels });
        }
        let graph = KRDegGraph::assemble(shapes, vertices, edges);
        if graph.components != g.components {
            return Err(Error::Parse("stored components disagree with the edges".into()));
        }
        Ok(graph)
    }

    /// Graphviz rendering with one cluster per component.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let n = self.n();
        let sep = if n >= 10 { " " } else { "" };
        let mut out = String::from("graph krdeg {\n  node [shape=box, fontname=\"monospace\"];\n");
        for (c, comp) in self.components.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{c} {{\n    label=\"component {c}\";");
            for &v in comp {
                let word: Vec<String> = self.vertices[v].element.word().iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "    v{v} [label=\"{}\"];", word.join(sep));
            }
            out.push_str("  }\n");
        }
        for e in &self.edges {
            let labels: Vec<String> = e.labels.iter().map(|l| l.name(n)).collect();
            let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.u, e.v, labels.join(","));
        }
        out.push_str("}\n");
        out
    }

    /// Plain-text listing grouped by component.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let n = self.n();
        let d = self.shapes.d_r() as u64;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}: {} vertices, {} edges, {} components (d_R = {d})",
            self.shapes.canonical(),
            self.vertices.len(),
            self.edges.len(),
            self.components.len()
        );
        for (c, comp) in self.components.iter().enumerate() {
            let residue = self.vertices[comp[0]].charge % d;
            let _ = writeln!(out, "component {c}: {} vertices, charge ≡ {residue} mod {d}", comp.len());
            for &v in comp {
                let x = &self.vertices[v];
                let _ = writeln!(out, "  {v}: {}  D={}  charge={}", x.element, x.descents, x.charge);
            }
        }
        let _ = writeln!(out, "edges:");
        for e in &self.edges {
            let labels: Vec<String> = e.labels.iter().map(|l| l.name(n)).collect();
            let _ = writeln!(out, "  {} -- {}  {}", e.u, e.v, labels.join(","));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: usize,
    factors: Vec<Vec<Vec<Entry>>>,
    descents: DescentSet,
    charge: u64,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: usize,
    v: usize,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    shapes: RectSeq,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    components: Vec<Vec<usize>>,
}

// ---------------------------------------------------------------------------
// Superstandard fillings and promotion paths

/// `row_m(R)` together with its column maxima `c_{m,i}` and row maxima `a_{m,i}`.
#[derive(Clone, Debug)]
pub struct Superstandard {
    pub m: usize,
    pub element: TensorElement,
    /// `column_max[i-1] = c_{m,i}`, the largest entry of column `i` below row
    /// `m`; `None` when no rectangle has such a cell.
    pub column_max: Vec<Option<Entry>>,
    /// `row_max[i-1] = a_{m,i}`.
    pub row_max: Vec<Entry>,
}

impl Superstandard {
    /// The values of `d` for which `row_m(R)` is joined to `pr^{n-d}(row_m(R))`
    /// by the swap sequences: every `c_{m,i}`, and `a_{m,m}` when `m >= 1`.
    pub fn promotion_steps(&self) -> Vec<Entry> {
        let mut out: Vec<Entry> = self.column_max.iter().flatten().copied().collect();
        if self.m >= 1 {
            out.push(self.row_max[self.m - 1]);
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// The filling `row_m(R)`: the first `m` rows of every rectangle are numbered
/// row by row across all factors, then the remaining cells column by column,
/// reading the factors from right to left.
pub fn superstandard(shapes: &RectSeq, m: usize) -> Result<Superstandard> {
    let rmax = shapes.max_rows();
    if m > rmax {
        return Err(Error::Domain(format!("m = {m} exceeds the largest row count {rmax}")));
    }
    let rects = shapes.rects();
    let mut grids: Vec<Vec<Entry>> = rects.iter().map(|r| vec![0; r.cells()]).collect();
    let mut next: Entry = 1;
    for row in 0..m {
        for (f, r) in rects.iter().enumerate() {
            if row < r.rows {
                for c in 0..r.cols {
                    grids[f][row * r.cols + c] = next;
                    next += 1;
                }
            }
        }
    }
    for col in 0..shapes.max_cols() {
        for (f, r) in rects.iter().enumerate().rev() {
            if col < r.cols {
                for row in m..r.rows {
                    grids[f][row * r.cols + col] = next;
                    next += 1;
                }
            }
        }
    }
    let column_max = (0..shapes.max_cols())
        .map(|c| {
            rects
                .iter()
                .zip(&grids)
                .filter(|(r, _)| c < r.cols)
                .flat_map(|(r, g)| (m..r.rows).map(move |row| g[row * r.cols + c]))
                .max()
        })
        .collect();
    let row_max = (0..rmax)
        .map(|row| {
            rects
                .iter()
                .zip(&grids)
                .filter(|(r, _)| row < r.rows)
                .flat_map(|(r, g)| g[row * r.cols..(row + 1) * r.cols].iter().copied())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let factors = rects
        .iter()
        .zip(&grids)
        .map(|(&r, g)| Tableau::rectangle(r, g))
        .collect::<Result<Vec<_>>>()?;
    let element = TensorElement::new(Arc::new(shapes.clone()), &factors, shapes.n())?;
    Ok(Superstandard { m, element, column_max, row_max })
}

/// `row(R)`, the row superstandard filling.
pub fn row_superstandard(shapes: &RectSeq) -> Result<TensorElement> {
    Ok(superstandard(shapes, shapes.max_rows())?.element)
}

/// gcd of the promotion steps over every `m`.
pub fn promotion_step_gcd(shapes: &RectSeq) -> Result<usize> {
    let mut g = 0usize;
    for m in 0..=shapes.max_rows() {
        for d in superstandard(shapes, m)?.promotion_steps() {
            g = g.gcd(&(d as usize));
        }
    }
    Ok(g)
}

/// Applies `t_i` if it is an edge of the graph.
pub fn apply_swap(t: &TensorElement, i: Entry) -> Result<Option<TensorElement>> {
    definitional_edge(t, EdgeLabel::Swap(i))
}

#[derive(Clone, Debug)]
pub struct SSequencePath {
    pub d: Entry,
    /// `milestones[k-1]` is `T^{(k)}`, the element after `S_{d+k-1} ... S_d`.
    pub milestones: Vec<TensorElement>,
    /// Every swap actually applied, with the element it produced.
    pub steps: Vec<(Entry, TensorElement)>,
}

impl SSequencePath {
    pub fn end<'a>(&'a self, start: &'a TensorElement) -> &'a TensorElement {
        self.milestones.last().unwrap_or(start)
    }
}

/// Walks `S_{n-1} ... S_d (row_m(R))` with `S_j = t_{j-d+1} ... t_{j-1} t_j`,
/// skipping swaps that are not edges, and checks that it ends at
/// `pr^{n-d}(row_m(R))`.
pub fn s_sequence_path(shapes: &RectSeq, m: usize, d: Entry) -> Result<SSequencePath> {
    let start = superstandard(shapes, m)?;
    let n = shapes.n();
    if d != n && !start.promotion_steps().contains(&d) {
        return Err(Error::Domain(format!(
            "d = {d} is not one of the promotion steps {:?} of row_{m}",
            start.promotion_steps()
        )));
    }
    let mut cur = start.element.clone();
    let mut milestones = Vec::new();
    let mut steps = Vec::new();
    for j in d..n {
        for i in (j + 1 - d..=j).rev() {
            if let Some(next) = apply_swap(&cur, i)? {
                steps.push((i, next.clone()));
                cur = next;
            }
        }
        milestones.push(cur.clone());
    }
    let expected = start.element.promote_power((n - d) as i64);
    if cur != expected {
        return Err(Error::Verification(format!(
            "swap sequence from row_{m} with d = {d} ended at {cur}, expected pr^{}(T) = {expected}",
            n - d
        )));
    }
    Ok(SSequencePath { d, milestones, steps })
}

// ---------------------------------------------------------------------------
// Row combing

/// A single step of the combing procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CombMove {
    Swap(Entry),
    InversePromotion,
}

fn descents_in(d: DescentSet, i: Entry, j: Entry) -> Vec<Entry> {
    (i..=j).filter(|&x| d.contains(x)).collect()
}

fn pcomb_logged(t: &TensorElement, i: Entry, j: Entry, log: &mut Vec<CombMove>) -> Result<TensorElement> {
    let n = t.n();
    if i == 0 || i > j || j >= n {
        return Err(Error::Domain(format!("pcomb needs 1 <= i <= j < n, got i = {i}, j = {j}, n = {n}")));
    }
    let d = descent_set(t)?;
    if descents_in(d, i, j) != [j] {
        return Err(Error::Domain(format!("pcomb_{{{i},{j}}} needs D(T) ∩ [{i},{j}] = {{{j}}}, but D(T) = {d}")));
    }
    if i == j {
        return Ok(t.clone());
    }
    let mut cur = t.clone();
    for k in (i..=j).rev() {
        if let Some(next) = apply_swap(&cur, k)? {
            log.push(CombMove::Swap(k));
            cur = next;
        }
    }
    let d2 = descents_of(&cur);
    if descents_in(d2, i, j) != [i] {
        return Err(Error::Verification(format!(
            "pcomb_{{{i},{j}}}({t}) = {cur} has D ∩ [{i},{j}] = {:?}",
            descents_in(d2, i, j)
        )));
    }
    Ok(cur)
}

/// Moves the single descent in `[i, j]` from `j` down to `i` by a chain of swaps.
pub fn pcomb(t: &TensorElement, i: Entry, j: Entry) -> Result<TensorElement> {
    pcomb_logged(t, i, j, &mut Vec::new())
}

/// `a_i`: the number of cells in rows `1..=i` across all rectangles, for `i = 0..=r'`.
fn row_prefix_counts(shapes: &RectSeq) -> Vec<Entry> {
    (0..=shapes.max_rows())
        .map(|i| shapes.rects().iter().map(|r| (r.cols * r.rows.min(i)) as Entry).sum())
        .collect()
}

fn rcomb_logged(t: &TensorElement, log: &mut Vec<CombMove>) -> Result<Option<TensorElement>> {
    let shapes = t.shapes();
    let row = row_superstandard(shapes)?;
    if *t == row {
        return Ok(None);
    }
    let a = row_prefix_counts(shapes);
    let d = descent_set(t)?;
    let j = d
        .members()
        .into_iter()
        .find(|x| !a[1..].contains(x))
        .ok_or_else(|| Error::Verification(format!("{t} differs from row(R) but has no descent to comb")))?;
    let i = (0..a.len() - 1)
        .find(|&i| a[i] < j && j < a[i + 1])
        .expect("every letter below n lies between consecutive row counts");
    let mut cur = pcomb_logged(t, a[i] + 1, j, log)?;
    for l in (0..i).rev() {
        cur = pcomb_logged(&cur, a[l] + 1, a[l + 1], log)?;
    }
    log.push(CombMove::InversePromotion);
    Ok(Some(cur.promote_inverse()))
}

/// One iteration of row combing; `None` when `T` already equals `row(R)`.
pub fn rcomb(t: &TensorElement) -> Result<Option<TensorElement>> {
    rcomb_logged(t, &mut Vec::new())
}

#[derive(Clone, Debug)]
pub struct CombResult {
    /// `T` is joined by graph edges to `pr^power(row(R))`, with `0 <= power < n`.
    pub power: Entry,
    /// Elements after each iteration; the last one is `row(R)`.
    pub iterations: Vec<TensorElement>,
    pub moves: Vec<CombMove>,
}

/// Iterates [`rcomb`] until `row(R)` is reached.
pub fn comb_to_row(t: &TensorElement) -> Result<CombResult> {
    require_standard(t)?;
    let n = t.n();
    let cap = (n as u128) * t.shapes().predicted_vertex_count();
    let mut cur = t.clone();
    let mut iterations = Vec::new();
    let mut moves = Vec::new();
    while let Some(next) = rcomb_logged(&cur, &mut moves)? {
        iterations.push(next.clone());
        cur = next;
        if iterations.len() as u128 > cap {
            return Err(Error::Verification(format!("row combing of {t} did not stop after {cap} iterations")));
        }
    }
    Ok(CombResult { power: (iterations.len() % n as usize) as Entry, iterations, moves })
}

impl FromStr for EdgeLabel {
    type Err = Error;

    /// Parses the `n`-independent forms `t<i>`, `tbar1` and `C<i>`. Use
    /// [`EdgeLabel::parse`] to recognise `t_n` and `t̄_{n-1}`.
    fn from_str(s: &str) -> Result<Self> {
        EdgeLabel::parse(s, Entry::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: &[&[Entry]]) -> Tableau {
        Tableau::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn tensor(factors: &[&[&[Entry]]]) -> TensorElement {
        let tabs: Vec<Tableau> = factors.iter().map(|f| t(f)).collect();
        let rects: Vec<Rectangle> = tabs.iter().map(|x| x.as_rectangle().unwrap().0).collect();
        let shapes = Arc::new(RectSeq::new(rects).unwrap());
        let n = shapes.n();
        TensorElement::new(shapes, &tabs, n).unwrap()
    }

    fn col(entries: &[Entry]) -> Vec<Vec<Entry>> {
        entries.iter().map(|&e| vec![e]).collect()
    }

    fn colt(a: &[Entry], b: &[Entry]) -> TensorElement {
        let (a, b) = (col(a), col(b));
        let a: Vec<&[Entry]> = a.iter().map(Vec::as_slice).collect();
        let b: Vec<&[Entry]> = b.iter().map(Vec::as_slice).collect();
        tensor(&[&a, &b])
    }

    fn ds(members: &[Entry]) -> DescentSet {
        DescentSet::from_members(members.iter().copied())
    }

    #[test]
    fn descent_examples() {
        assert_eq!(descent_set(&tensor(&[&[&[1, 2], &[3, 5]], &[&[4]]])).unwrap(), ds(&[2, 4, 5]));
        let x = tensor(&[&[&[1, 2], &[3, 5]], &[&[4, 7], &[6, 8]]]);
        assert_eq!(descent_set(&x).unwrap(), ds(&[2, 4, 7, 8]));
        let row = tensor(&[&[&[1, 2, 3, 4]]]);
        let d = descent_set(&row).unwrap();
        assert_eq!(d.contains(4), descent_set(&row.promote()).unwrap().contains(1));
        let bad = TensorElement::new(row.shapes_arc().clone(), &[t(&[&[1, 1, 2, 3]])], 4).unwrap();
        assert!(matches!(descent_set(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn labels_round_trip() {
        for l in EdgeLabel::definitional(8).into_iter().chain((1..=8).map(EdgeLabel::Commutator)) {
            assert_eq!(EdgeLabel::parse(&l.name(8), 8).unwrap(), l);
        }
        assert_eq!(EdgeLabel::AffineSwap.name(8), "t8");
        assert_eq!(EdgeLabel::BarNminus1.name(13), "tbar12");
        assert!(EdgeLabel::parse("t9", 8).is_err());
    }

    #[test]
    fn commutator_examples() {
        let x = tensor(&[&[&[1, 2], &[3, 5]], &[&[4]]]);
        assert_eq!(commutator_edge(&x, 2).unwrap().unwrap(), tensor(&[&[&[1, 2], &[4, 5]], &[&[3]]]));
        // single row word 45123 as a skew shape: five one-cell factors
        let word = tensor(&[&[&[4]], &[&[5]], &[&[1]], &[&[2]], &[&[3]]]);
        let c3 = commutator_edge(&word, 3).unwrap().unwrap();
        assert_eq!(c3.word(), &[3, 5, 1, 2, 4]);
    }

    #[test]
    fn definitional_examples() {
        let x = tensor(&[&[&[1, 2], &[3, 5]], &[&[4, 7], &[6, 8]]]);
        assert_eq!(
            definitional_edge(&x, EdgeLabel::Swap(3)).unwrap().unwrap(),
            tensor(&[&[&[1, 2], &[4, 5]], &[&[3, 7], &[6, 8]]])
        );
        assert_eq!(definitional_edge(&x, EdgeLabel::Swap(5)).unwrap(), None);
        assert_eq!(
            definitional_edge(&x, EdgeLabel::AffineSwap).unwrap().unwrap(),
            tensor(&[&[&[2, 5], &[3, 8]], &[&[1, 4], &[6, 7]]])
        );
        let y = tensor(&[&[&[1, 2, 8], &[5, 10, 12], &[7, 11, 13]], &[&[3, 6], &[4, 9]]]);
        assert_eq!(descent_set(&y).unwrap(), ds(&[3, 4, 6, 9, 10, 12, 13]));
        let y1 = definitional_edge(&y, EdgeLabel::Bar1).unwrap().unwrap();
        assert_eq!(y1, tensor(&[&[&[1, 5, 8], &[2, 10, 12], &[7, 11, 13]], &[&[3, 6], &[4, 9]]]));
        assert_eq!(descent_set(&y1).unwrap(), ds(&[1, 3, 4, 6, 9, 10, 12]));
        let y2 = definitional_edge(&y1, EdgeLabel::BarNminus1).unwrap().unwrap();
        assert_eq!(y2, tensor(&[&[&[1, 5, 8], &[2, 7, 10], &[11, 12, 13]], &[&[3, 6], &[4, 9]]]));
        assert_eq!(descent_set(&y2).unwrap(), ds(&[1, 3, 4, 6, 9, 10, 13]));
    }

    fn edge_set(g: &KRDegGraph) -> Vec<(String, String, Vec<String>)> {
        let n = g.n();
        let mut out: Vec<_> = g
            .edges()
            .iter()
            .map(|e| {
                let a = g.vertices()[e.u].element.to_string();
                let b = g.vertices()[e.v].element.to_string();
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                (a, b, e.labels.iter().map(|l| l.name(n)).collect())
            })
            .collect();
        out.sort();
        out
    }

    fn named(pairs: &[(&TensorElement, &TensorElement, &[&str])]) -> Vec<(String, String, Vec<String>)> {
        let mut out: Vec<_> = pairs
            .iter()
            .map(|(x, y, l)| {
                let (a, b) = (x.to_string(), y.to_string());
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                (a, b, l.iter().map(|s| s.to_string()).collect())
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn kr_deg_figure() {
        let n1 = tensor(&[&[&[1, 2], &[3, 5]], &[&[4]]]);
        let n2 = tensor(&[&[&[1, 3], &[2, 4]], &[&[5]]]);
        let n3 = tensor(&[&[&[1, 3], &[2, 5]], &[&[4]]]);
        let n4 = tensor(&[&[&[1, 2], &[3, 4]], &[&[5]]]);
        let n5 = tensor(&[&[&[1, 2], &[4, 5]], &[&[3]]]);
        let n6 = tensor(&[&[&[1, 4], &[3, 5]], &[&[2]]]);
        let n7 = tensor(&[&[&[2, 3], &[4, 5]], &[&[1]]]);
        let n8 = tensor(&[&[&[1, 3], &[4, 5]], &[&[2]]]);
        let n9 = tensor(&[&[&[2, 4], &[3, 5]], &[&[1]]]);
        let n10 = tensor(&[&[&[1, 4], &[2, 5]], &[&[3]]]);
        let g = build_graph(n1.shapes(), &BuildOptions::default()).unwrap();
        assert_eq!(g.vertices().len(), 10);
        assert_eq!(g.components().len(), 1);
        let expected = named(&[
            (&n2, &n4, &["t2", "C1", "C2"]),
            (&n2, &n3, &["t4", "C3", "C4"]),
            (&n1, &n3, &["t2", "tbar1", "C1", "C5"]),
            (&n1, &n5, &["t3", "C2", "C3"]),
            (&n7, &n9, &["t3", "C2", "C3"]),
            (&n7, &n8, &["t1", "C1", "C5"]),
            (&n6, &n8, &["t3", "tbar4", "C3", "C4"]),
            (&n6, &n10, &["t2", "C1", "C2"]),
            (&n4, &n9, &["t5", "C4", "C5"]),
            (&n5, &n10, &["tbar1", "tbar4", "C4", "C5"]),
        ]);
        assert_eq!(edge_set(&g), expected);
        assert!(g.construction_mismatches().is_empty());
    }

    #[test]
    fn second_kr_deg_figure() {
        let v1 = tensor(&[&[&[1, 2]], &[&[3], &[4]]]);
        let g = build_graph(v1.shapes(), &BuildOptions::default()).unwrap();
        let v2 = tensor(&[&[&[2, 3]], &[&[1], &[4]]]);
        let v3 = tensor(&[&[&[3, 4]], &[&[1], &[2]]]);
        let v4 = tensor(&[&[&[1, 4]], &[&[2], &[3]]]);
        let v5 = tensor(&[&[&[1, 3]], &[&[2], &[4]]]);
        let v6 = tensor(&[&[&[2, 4]], &[&[1], &[3]]]);
        let pairs: Vec<(usize, usize, EdgeLabel)> = vec![
            (0, 4, EdgeLabel::Swap(2)),
            (1, 4, EdgeLabel::Swap(1)),
            (2, 4, EdgeLabel::AffineSwap),
            (3, 4, EdgeLabel::Swap(3)),
            (0, 5, EdgeLabel::AffineSwap),
            (1, 5, EdgeLabel::Swap(3)),
            (2, 5, EdgeLabel::Swap(2)),
            (3, 5, EdgeLabel::Swap(1)),
        ];
        let vs = [&v1, &v2, &v3, &v4, &v5, &v6];
        assert_eq!(g.vertices().len(), 6);
        assert_eq!(g.edges().len(), 8);
        assert_eq!(g.components().len(), 1);
        for (a, b, l) in pairs {
            let (u, v) = (g.index_of(vs[a]).unwrap(), g.index_of(vs[b]).unwrap());
            let e = g.edge_between(u, v).unwrap_or_else(|| panic!("missing edge {a}-{b}"));
            assert!(e.labels.contains(&l), "edge {a}-{b} lacks {l:?}: {:?}", e.labels);
        }
    }

    #[test]
    fn two_column_figure_and_charges() {
        let shapes = RectSeq::from_dims(&[(3, 1), (3, 1)]).unwrap();
        let g = build_graph(&shapes, &BuildOptions::default()).unwrap();
        assert_eq!(g.vertices().len(), 20);
        let sizes: Vec<usize> = g.components().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![10, 10]);
        let by_charge = g.components_by_charge().unwrap();
        let even = colt(&[1, 3, 5], &[2, 4, 6]);
        let odd = colt(&[2, 4, 6], &[1, 3, 5]);
        assert_eq!(by_charge[&0], g.component_of(g.index_of(&even).unwrap()));
        assert_eq!(by_charge[&1], g.component_of(g.index_of(&odd).unwrap()));

        let left = [
            ([1, 3, 5], [2, 4, 6]),
            ([1, 2, 5], [3, 4, 6]),
            ([1, 3, 4], [2, 5, 6]),
            ([3, 5, 6], [1, 2, 4]),
            ([1, 2, 4], [3, 5, 6]),
            ([3, 4, 6], [1, 2, 5]),
            ([2, 5, 6], [1, 3, 4]),
            ([1, 2, 3], [4, 5, 6]),
            ([3, 4, 5], [1, 2, 6]),
            ([1, 5, 6], [2, 3, 4]),
        ];
        let left_edges = [(1, 2, 2), (1, 3, 4), (1, 4, 6), (2, 5, 4), (3, 6, 6), (4, 7, 2), (3, 5, 2), (4, 6, 4), (2, 7, 6), (5, 8, 3), (6, 9, 5), (7, 10, 1)];
        let right = [
            ([2, 4, 6], [1, 3, 5]),
            ([2, 3, 6], [1, 4, 5]),
            ([2, 4, 5], [1, 3, 6]),
            ([1, 4, 6], [2, 3, 5]),
            ([2, 3, 5], [1, 4, 6]),
            ([1, 4, 5], [2, 3, 6]),
            ([1, 3, 6], [2, 4, 5]),
            ([2, 3, 4], [1, 5, 6]),
            ([4, 5, 6], [1, 2, 3]),
            ([1, 2, 6], [3, 4, 5]),
        ];
        let right_edges = [(1, 2, 3), (1, 3, 5), (1, 4, 1), (2, 5, 5), (3, 6, 1), (4, 7, 3), (3, 5, 3), (4, 6, 5), (2, 7, 1), (5, 8, 4), (6, 9, 6), (7, 10, 2)];
        for (verts, edges) in [(&left, &left_edges), (&right, &right_edges)] {
            let ids: Vec<usize> = verts.iter().map(|(a, b)| g.index_of(&colt(a, b)).unwrap()).collect();
            let comp = g.component_of(ids[0]);
            let mut sorted = ids.clone();
            sorted.sort_unstable();
            assert_eq!(g.components()[comp], sorted);
            for &(a, b, i) in edges.iter() {
                let e = g.edge_between(ids[a - 1], ids[b - 1]).unwrap();
                let want = if i == 6 { EdgeLabel::AffineSwap } else { EdgeLabel::Swap(i) };
                assert!(e.labels.contains(&want));
            }
            let internal = g.edges().iter().filter(|e| g.component_of(e.u) == comp).count();
            assert_eq!(internal, edges.len());
        }
    }

    #[test]
    fn graph_json_round_trip() {
        let shapes = RectSeq::from_dims(&[(2, 2), (1, 1)]).unwrap();
        let g = build_graph(&shapes, &BuildOptions::default()).unwrap();
        let json = g.to_json();
        assert!(json.starts_with("{\"shapes\":[[2,2],[1,1]],\"vertices\":[{\"id\":0,\"factors\":"));
        assert_eq!(KRDegGraph::from_json(&json).unwrap(), g);
        let dot = g.to_dot();
        assert_eq!(dot.matches("subgraph cluster_").count(), 1);
        assert_eq!(dot.matches("[label=\"").count(), 20);
    }

    #[test]
    fn vertex_limit_refuses() {
        let shapes = RectSeq::from_dims(&[(2, 2), (2, 2), (2, 2)]).unwrap();
        let err = build_graph(&shapes, &BuildOptions { limit: Some(1000), definitional_labels: true }).unwrap_err();
        assert!(err.to_string().contains("277200"));
    }

    fn big() -> RectSeq {
        RectSeq::from_dims(&[(2, 2), (3, 3), (3, 3)]).unwrap()
    }

    #[test]
    fn superstandard_examples() {
        let col = superstandard(&big(), 0).unwrap();
        assert_eq!(
            col.element,
            tensor(&[&[&[7, 15], &[8, 16]], &[&[4, 12, 20], &[5, 13, 21], &[6, 14, 22]], &[&[1, 9, 17], &[2, 10, 18], &[3, 11, 19]]])
        );
        assert_eq!(col.column_max, vec![Some(8), Some(16), Some(22)]);
        assert_eq!(superstandard(&big(), 3).unwrap().column_max, vec![None, None, None]);
        assert_eq!(
            superstandard(&big(), 3).unwrap().element,
            tensor(&[&[&[1, 2], &[9, 10]], &[&[3, 4, 5], &[11, 12, 13], &[17, 18, 19]], &[&[6, 7, 8], &[14, 15, 16], &[20, 21, 22]]])
        );
        let two = superstandard(&big(), 2).unwrap();
        assert_eq!(
            two.element,
            tensor(&[&[&[1, 2], &[9, 10]], &[&[3, 4, 5], &[11, 12, 13], &[18, 20, 22]], &[&[6, 7, 8], &[14, 15, 16], &[17, 19, 21]]])
        );
        assert_eq!(two.row_max[1], 16);
        assert!(superstandard(&big(), 4).is_err());
    }

    #[test]
    fn column_superstandard_path() {
        let path = s_sequence_path(&big(), 0, 8).unwrap();
        let m = &path.milestones;
        assert_eq!(m.len(), 14);
        assert_eq!(
            m[2],
            tensor(&[&[&[10, 15], &[11, 16]], &[&[7, 12, 20], &[8, 13, 21], &[9, 14, 22]], &[&[1, 4, 17], &[2, 5, 18], &[3, 6, 19]]])
        );
        assert_eq!(
            m[5],
            tensor(&[&[&[13, 15], &[14, 16]], &[&[4, 10, 20], &[5, 11, 21], &[6, 12, 22]], &[&[1, 7, 17], &[2, 8, 18], &[3, 9, 19]]])
        );
        assert_eq!(
            m[7],
            tensor(&[&[&[7, 15], &[8, 16]], &[&[4, 12, 20], &[5, 13, 21], &[6, 14, 22]], &[&[1, 9, 17], &[2, 10, 18], &[3, 11, 19]]])
        );
        assert_eq!(
            m[10],
            tensor(&[&[&[7, 18], &[8, 19]], &[&[4, 15, 20], &[5, 16, 21], &[6, 17, 22]], &[&[1, 9, 12], &[2, 10, 13], &[3, 11, 14]]])
        );
        assert_eq!(
            m[13],
            tensor(&[&[&[7, 21], &[8, 22]], &[&[4, 12, 18], &[5, 13, 19], &[6, 14, 20]], &[&[1, 9, 15], &[2, 10, 16], &[3, 11, 17]]])
        );
    }

    #[test]
    fn second_row_superstandard_path() {
        let path = s_sequence_path(&big(), 2, 16).unwrap();
        let expected = [
            tensor(&[&[&[2, 3], &[10, 11]], &[&[4, 5, 6], &[12, 13, 14], &[18, 20, 22]], &[&[1, 8, 9], &[7, 16, 17], &[15, 19, 21]]]),
            tensor(&[&[&[3, 4], &[11, 12]], &[&[2, 6, 7], &[5, 14, 15], &[13, 20, 22]], &[&[1, 9, 10], &[8, 17, 18], &[16, 19, 21]]]),
            tensor(&[&[&[4, 5], &[12, 13]], &[&[2, 7, 8], &[6, 15, 16], &[14, 20, 22]], &[&[1, 3, 11], &[9, 10, 19], &[17, 18, 21]]]),
            tensor(&[&[&[5, 6], &[13, 14]], &[&[2, 4, 9], &[7, 8, 17], &[15, 16, 22]], &[&[1, 3, 12], &[10, 11, 20], &[18, 19, 21]]]),
            tensor(&[&[&[6, 7], &[14, 15]], &[&[2, 4, 10], &[8, 9, 18], &[16, 17, 22]], &[&[1, 3, 5], &[11, 12, 13], &[19, 20, 21]]]),
            tensor(&[&[&[7, 8], &[15, 16]], &[&[2, 4, 6], &[9, 10, 11], &[17, 18, 19]], &[&[1, 3, 5], &[12, 13, 14], &[20, 21, 22]]]),
        ];
        assert_eq!(path.milestones, expected);
    }

    #[test]
    fn trivial_path_and_gcd() {
        let path = s_sequence_path(&big(), 0, 22).unwrap();
        assert!(path.milestones.is_empty());
        assert_eq!(promotion_step_gcd(&big()).unwrap(), big().d_r());
        let cube = RectSeq::from_dims(&[(2, 2), (2, 2), (2, 2)]).unwrap();
        assert_eq!(promotion_step_gcd(&cube).unwrap(), 3);
    }

    fn comb_example() -> TensorElement {
        tensor(&[&[&[1, 2, 3], &[9, 10, 15], &[11, 16, 20]], &[&[4, 5, 6], &[13, 18, 21], &[14, 19, 22]], &[&[7, 8], &[12, 17]]])
    }

    #[test]
    fn partial_combs() {
        let x = comb_example();
        let y = pcomb(&x, 9, 10).unwrap();
        assert_eq!(
            y,
            tensor(&[&[&[1, 2, 3], &[9, 11, 15], &[10, 16, 20]], &[&[4, 5, 6], &[13, 18, 21], &[14, 19, 22]], &[&[7, 8], &[12, 17]]])
        );
        let z = pcomb(&y, 1, 8).unwrap();
        assert_eq!(
            z,
            tensor(&[&[&[1, 3, 4], &[2, 11, 15], &[10, 16, 20]], &[&[5, 6, 7], &[13, 18, 21], &[14, 19, 22]], &[&[8, 9], &[12, 17]]])
        );
        assert!(matches!(pcomb(&y, 9, 10), Err(Error::Domain(_))));
        assert_eq!(pcomb(&y, 9, 9).unwrap(), y);
        assert_eq!(pcomb(&z, 1, 1).unwrap(), z);
    }

    #[test]
    fn row_combing() {
        assert_eq!(
            rcomb(&comb_example()).unwrap().unwrap(),
            tensor(&[&[&[1, 2, 3], &[9, 10, 14], &[15, 19, 22]], &[&[4, 5, 6], &[12, 17, 20], &[13, 18, 21]], &[&[7, 8], &[11, 16]]])
        );
        let x = tensor(&[&[&[1, 2], &[3, 6]], &[&[4, 5], &[7, 8]]]);
        let res = comb_to_row(&x).unwrap();
        assert_eq!(
            res.iterations,
            vec![
                tensor(&[&[&[1, 2], &[5, 8]], &[&[3, 4], &[6, 7]]]),
                tensor(&[&[&[1, 2], &[5, 6]], &[&[3, 4], &[7, 8]]]),
            ]
        );
        assert_eq!(res.power, 2);
        let row = row_superstandard(x.shapes()).unwrap();
        assert!(rcomb(&row).unwrap().is_none());
        assert_eq!(comb_to_row(&row).unwrap().power, 0);
    }

    #[test]
    fn descent_set_ops() {
        let d = ds(&[2, 4, 5]);
        assert_eq!(d.rotate(5), ds(&[1, 3, 5]));
        assert!(d.incomparable(&ds(&[1, 2])));
        assert!(!d.incomparable(&ds(&[2, 4])));
        assert_eq!(serde_json::to_string(&d).unwrap(), "[2,4,5]");
        assert_eq!(d.to_string(), "{2,4,5}");
        assert_eq!(d.without(5), ds(&[2, 4]));
    }
}

//! Type A crystal operators on words, Kirillov-Reshetikhin crystals of
//! rectangles, and tensor products of rectangular tableaux.
//!
//! A [`TensorElement`] stores the concatenated row reading word
//! `rw(T_1) rw(T_2) ... rw(T_k)`. Crystal operators act on this word directly,
//! and factors are materialized as [`Tableau`] values only on request.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::par;
use crate::tableaux::{Entry, Partition, Rectangle, Tableau};

/// Position of the letter changed by `f_i` in `word`, if any.
///
/// Letters `i+1` open a bracket and letters `i` close one; `f_i` acts on the
/// right-most unmatched `i`.
pub(crate) fn f_position(word: &[Entry], i: Entry) -> Option<usize> {
    // scanning right to left, an `i` is unmatched when no pending `i+1`
    // to its left is available; equivalently track unmatched i's from the left
    let mut open = 0usize;
    let mut unmatched_i: Vec<usize> = Vec::new();
    for (p, &x) in word.iter().enumerate() {
        if x == i + 1 {
            open += 1;
        } else if x == i {
            if open > 0 {
                open -= 1;
            } else {
                unmatched_i.push(p);
            }
        }
    }
    unmatched_i.last().copied()
}

/// Position of the letter changed by `e_i`: the left-most unmatched `i+1`.
pub(crate) fn e_position(word: &[Entry], i: Entry) -> Option<usize> {
    let mut open: Vec<usize> = Vec::new();
    for (p, &x) in word.iter().enumerate() {
        if x == i + 1 {
            open.push(p);
        } else if x == i {
            open.pop();
        }
    }
    open.first().copied()
}

fn check_classical_index(i: Entry, n: Entry) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::Domain(format!("crystal index {i} is outside [1, {}]", n.saturating_sub(1))));
    }
    Ok(())
}

/// Lowering operator `f_i` on a word over `[n]`, or `None` if it is undefined.
pub fn crystal_f(word: &[Entry], i: Entry, n: Entry) -> Result<Option<Vec<Entry>>> {
    check_classical_index(i, n)?;
    Ok(f_position(word, i).map(|p| {
        let mut w = word.to_vec();
        w[p] += 1;
        w
    }))
}

/// Raising operator `e_i` on a word over `[n]`, or `None` if it is undefined.
pub fn crystal_e(word: &[Entry], i: Entry, n: Entry) -> Result<Option<Vec<Entry>>> {
    check_classical_index(i, n)?;
    Ok(e_position(word, i).map(|p| {
        let mut w = word.to_vec();
        w[p] -= 1;
        w
    }))
}

/// An ordered list of rectangles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RectSeq {
    rects: Vec<Rectangle>,
    offsets: Vec<usize>,
}

impl RectSeq {
    pub fn new(rects: Vec<Rectangle>) -> Result<Self> {
        if rects.is_empty() {
            return Err(Error::Shape("a rectangle sequence needs at least one rectangle".into()));
        }
        if let Some(r) = rects.iter().find(|r| r.rows == 0 || r.cols == 0) {
            return Err(Error::Shape(format!("rectangle {r} must have positive sides")));
        }
        let mut offsets = Vec::with_capacity(rects.len() + 1);
        let mut acc = 0;
        for r in &rects {
            offsets.push(acc);
            acc += r.cells();
        }
        offsets.push(acc);
        if acc > 63 {
            return Err(Error::Resource(format!("{acc} cells exceed the supported maximum of 63")));
        }
        Ok(RectSeq { rects, offsets })
    }

    /// Convenience constructor from `(rows, cols)` pairs.
    pub fn from_dims(dims: &[(usize, usize)]) -> Result<Self> {
        Self::new(dims.iter().map(|&(rows, cols)| Rectangle { rows, cols }).collect())
    }

    pub fn rects(&self) -> &[Rectangle] {
        &self.rects
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Total number of cells, which is also the alphabet bound of the zero-weight space.
    pub fn n(&self) -> Entry {
        *self.offsets.last().unwrap() as Entry
    }

    /// Index range of factor `f` inside the concatenated row word.
    pub fn segment(&self, f: usize) -> std::ops::Range<usize> {
        self.offsets[f]..self.offsets[f + 1]
    }

    /// Distinct rectangles with their multiplicities, in order of first appearance.
    pub fn multiplicities(&self) -> Vec<(Rectangle, usize)> {
        let mut out: Vec<(Rectangle, usize)> = Vec::new();
        for r in &self.rects {
            match out.iter_mut().find(|(s, _)| s == r) {
                Some((_, m)) => *m += 1,
                None => out.push((*r, 1)),
            }
        }
        out
    }

    /// gcd of the multiplicities.
    pub fn d_r(&self) -> usize {
        self.multiplicities().iter().fold(0, |g, &(_, m)| g.gcd(&m))
    }

    /// Equal rectangles form contiguous blocks.
    pub fn is_grouped(&self) -> bool {
        let mut seen: Vec<Rectangle> = Vec::new();
        for (idx, r) in self.rects.iter().enumerate() {
            if idx > 0 && self.rects[idx - 1] == *r {
                continue;
            }
            if seen.contains(r) {
                return false;
            }
            seen.push(*r);
        }
        true
    }

    /// Stable permutation bringing equal rectangles together (order of first appearance).
    pub fn grouped(&self) -> RectSeq {
        let mut rects = Vec::with_capacity(self.len());
        for (r, m) in self.multiplicities() {
            rects.extend(std::iter::repeat_n(r, m));
        }
        RectSeq::new(rects).expect("regrouping keeps a valid sequence")
    }

    pub fn max_rows(&self) -> usize {
        self.rects.iter().map(|r| r.rows).max().unwrap_or(0)
    }

    pub fn max_cols(&self) -> usize {
        self.rects.iter().map(|r| r.cols).max().unwrap_or(0)
    }

    /// `rows x cols` tokens joined by commas, e.g. `2x2,1x1`.
    pub fn canonical(&self) -> String {
        self.rects.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }

    /// Size of the zero-weight space: multinomial coefficient times standard tableau counts.
    pub fn predicted_vertex_count(&self) -> u128 {
        let mut count: u128 = 1;
        let mut used: u128 = 0;
        for r in &self.rects {
            let c = r.cells() as u128;
            for j in 1..=c {
                count = count * (used + j) / j;
            }
            used += c;
            count *= r.partition().hook_length_count();
        }
        count
    }
}

impl fmt::Display for RectSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl FromStr for RectSeq {
    type Err = Error;

    /// Accepts comma separated tokens. A token is either `RxS` (R rows, S columns)
    /// or a rectangle in exponent notation `s^r`, where a bare `s` means one row.
    fn from_str(s: &str) -> Result<Self> {
        let mut rects = Vec::new();
        for token in s.split(',').map(str::trim) {
            let parse = |t: &str| -> Result<usize> {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad number {t:?} in shape token {token:?}")))
            };
            let rect = if let Some((r, c)) = token.split_once(['x', 'X']) {
                Rectangle::new(parse(r)?, parse(c)?)?
            } else if let Some((c, r)) = token.split_once('^') {
                Rectangle::new(parse(r)?, parse(c)?)?
            } else if !token.is_empty() {
                Rectangle::new(1, parse(token)?)?
            } else {
                return Err(Error::Parse(format!("empty shape token in {s:?}")));
            };
            rects.push(rect);
        }
        RectSeq::new(rects)
    }
}

impl Serialize for RectSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let dims: Vec<[usize; 2]> = self.rects.iter().map(|r| [r.rows, r.cols]).collect();
        dims.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RectSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let dims = Vec::<[usize; 2]>::deserialize(d)?;
        RectSeq::from_dims(&dims.iter().map(|&[r, c]| (r, c)).collect::<Vec<_>>()).map_err(D::Error::custom)
    }
}

/// Row-major index of row-word position `p` in an `rows x cols` rectangle.
#[inline]
fn rw_to_grid(p: usize, rows: usize, cols: usize) -> usize {
    (rows - 1 - p / cols) * cols + p % cols
}

pub(crate) fn segment_to_grid(seg: &[Entry], rect: Rectangle) -> Vec<Entry> {
    let mut grid = vec![0; seg.len()];
    for (p, &v) in seg.iter().enumerate() {
        grid[rw_to_grid(p, rect.rows, rect.cols)] = v;
    }
    grid
}

pub(crate) fn grid_to_segment(grid: &[Entry], rect: Rectangle, seg: &mut [Entry]) {
    for (p, slot) in seg.iter_mut().enumerate() {
        *slot = grid[rw_to_grid(p, rect.rows, rect.cols)];
    }
}

pub(crate) fn grid_is_semistandard(grid: &[Entry], rect: Rectangle) -> bool {
    let (rows, cols) = (rect.rows, rect.cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = grid[r * cols + c];
            if c + 1 < cols && v > grid[r * cols + c + 1] {
                return false;
            }
            if r + 1 < rows && v >= grid[(r + 1) * cols + c] {
                return false;
            }
        }
    }
    true
}

/// Outer slide in a row-major rectangle: the hole at `(r, c)` moves up or left,
/// taking the larger neighbour (the upper one on ties). Returns where it stops.
pub(crate) fn grid_outer_slide(grid: &mut [Entry], rect: Rectangle, mut r: usize, mut c: usize) -> (usize, usize) {
    let cols = rect.cols;
    loop {
        let up = (r > 0).then(|| grid[(r - 1) * cols + c]);
        let left = (c > 0).then(|| grid[r * cols + c - 1]);
        let (nr, nc) = match (up, left) {
            (None, None) => break,
            (Some(_), None) => (r - 1, c),
            (None, Some(_)) => (r, c - 1),
            (Some(u), Some(l)) => {
                if u >= l {
                    (r - 1, c)
                } else {
                    (r, c - 1)
                }
            }
        };
        grid[r * cols + c] = grid[nr * cols + nc];
        r = nr;
        c = nc;
    }
    (r, c)
}

/// Inner slide in a row-major rectangle: the hole at `(r, c)` moves right or
/// down, taking the smaller neighbour (the lower one on ties).
pub(crate) fn grid_inner_slide(grid: &mut [Entry], rect: Rectangle, mut r: usize, mut c: usize) -> (usize, usize) {
    let (rows, cols) = (rect.rows, rect.cols);
    loop {
        let right = (c + 1 < cols).then(|| grid[r * cols + c + 1]);
        let down = (r + 1 < rows).then(|| grid[(r + 1) * cols + c]);
        let (nr, nc) = match (right, down) {
            (None, None) => break,
            (Some(_), None) => (r, c + 1),
            (None, Some(_)) => (r + 1, c),
            (Some(x), Some(y)) => {
                if y <= x {
                    (r + 1, c)
                } else {
                    (r, c + 1)
                }
            }
        };
        grid[r * cols + c] = grid[nr * cols + nc];
        r = nr;
        c = nc;
    }
    (r, c)
}

/// Promotion on a row-major rectangle. Entries must lie in `[1, n]`.
pub(crate) fn grid_promote(grid: &mut [Entry], rect: Rectangle, n: Entry) {
    let (rows, cols) = (rect.rows, rect.cols);
    // every n sits in the last row; slide them out left to right
    let last = (rows - 1) * cols;
    if let Some(start) = (0..cols).find(|&c| grid[last + c] == n) {
        for c0 in start..cols {
            let (r, c) = grid_outer_slide(grid, rect, rows - 1, c0);
            grid[r * cols + c] = 0;
        }
    }
    for v in grid.iter_mut() {
        *v += 1;
    }
}

/// Inverse promotion on a row-major rectangle.
pub(crate) fn grid_promote_inverse(grid: &mut [Entry], rect: Rectangle, n: Entry) {
    let cols = rect.cols;
    let ones = (0..cols).take_while(|&c| grid[c] == 1).count();
    for c0 in (0..ones).rev() {
        let (r, c) = grid_inner_slide(grid, rect, 0, c0);
        grid[r * cols + c] = n + 1;
    }
    for v in grid.iter_mut() {
        *v -= 1;
    }
}

/// `T_1 ⊗ ... ⊗ T_k` with each `T_i` a semistandard tableau of shape `R_i`
/// and entries in `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElement {
    n: Entry,
    shapes: Arc<RectSeq>,
    word: Vec<Entry>,
}

impl TensorElement {
    /// Builds an element from its factors and validates every invariant.
    pub fn new(shapes: Arc<RectSeq>, factors: &[Tableau], n: Entry) -> Result<Self> {
        if factors.len() != shapes.len() {
            return Err(Error::Shape(format!(
                "{} factors given for {} rectangles",
                factors.len(),
                shapes.len()
            )));
        }
        let mut word = Vec::with_capacity(shapes.n() as usize);
        for (idx, (t, rect)) in factors.iter().zip(shapes.rects()).enumerate() {
            match t.as_rectangle() {
                Some((r, _)) if r == *rect => {}
                _ => {
                    return Err(Error::Shape(format!(
                        "factor {} does not have shape {rect}",
                        idx + 1
                    )))
                }
            }
            t.validate(n)
                .map_err(|e| Error::Invalid(format!("factor {}: {e}", idx + 1)))?;
            word.extend(t.row_reading_word());
        }
        Ok(TensorElement { n, shapes, word })
    }

    /// Builds an element from a concatenated row word, validating it.
    pub fn from_word(shapes: Arc<RectSeq>, word: Vec<Entry>, n: Entry) -> Result<Self> {
        if word.len() != shapes.n() as usize {
            return Err(Error::Shape(format!("word of length {} for {} cells", word.len(), shapes.n())));
        }
        let t = TensorElement { n, shapes, word };
        if let Some(bad) = t.word.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::Domain(format!("entry {bad} is outside [1, {n}]")));
        }
        for f in 0..t.shapes.len() {
            if !grid_is_semistandard(&t.factor_grid(f), t.shapes.rects()[f]) {
                return Err(Error::Invalid(format!("factor {} is not semistandard", f + 1)));
            }
        }
        Ok(t)
    }

    pub(crate) fn from_word_unchecked(shapes: Arc<RectSeq>, word: Vec<Entry>, n: Entry) -> Self {
        TensorElement { n, shapes, word }
    }

    pub fn n(&self) -> Entry {
        self.n
    }

    pub fn shapes(&self) -> &RectSeq {
        &self.shapes
    }

    pub fn shapes_arc(&self) -> &Arc<RectSeq> {
        &self.shapes
    }

    /// The concatenated row reading word.
    pub fn word(&self) -> &[Entry] {
        &self.word
    }

    pub fn num_factors(&self) -> usize {
        self.shapes.len()
    }

    pub(crate) fn factor_grid(&self, f: usize) -> Vec<Entry> {
        segment_to_grid(&self.word[self.shapes.segment(f)], self.shapes.rects()[f])
    }

    pub fn factor(&self, f: usize) -> Tableau {
        let rect = self.shapes.rects()[f];
        Tableau::rectangle(rect, &self.factor_grid(f)).expect("segments match their rectangles")
    }

    pub fn factors(&self) -> Vec<Tableau> {
        (0..self.num_factors()).map(|f| self.factor(f)).collect()
    }

    /// Index of the factor holding row-word position `p`.
    pub fn factor_of_position(&self, p: usize) -> usize {
        (0..self.num_factors())
            .find(|&f| self.shapes.segment(f).contains(&p))
            .expect("position inside the word")
    }

    /// Letter occurrence counts over `[n]`.
    pub fn weight(&self) -> Vec<usize> {
        let mut w = vec![0; self.n as usize];
        for &x in &self.word {
            w[x as usize - 1] += 1;
        }
        w
    }

    pub fn is_zero_weight(&self) -> bool {
        self.word.len() == self.n as usize && self.weight().iter().all(|&c| c == 1)
    }

    fn map_factors(&self, op: impl Fn(&mut [Entry], Rectangle)) -> TensorElement {
        let mut word = self.word.clone();
        for (f, &rect) in self.shapes.rects().iter().enumerate() {
            let seg = self.shapes.segment(f);
            let mut grid = segment_to_grid(&word[seg.clone()], rect);
            op(&mut grid, rect);
            grid_to_segment(&grid, rect, &mut word[seg]);
        }
        TensorElement { n: self.n, shapes: self.shapes.clone(), word }
    }

    /// Factorwise promotion with respect to the global alphabet `[n]`.
    pub fn promote(&self) -> TensorElement {
        let n = self.n;
        self.map_factors(|g, r| grid_promote(g, r, n))
    }

    pub fn promote_inverse(&self) -> TensorElement {
        let n = self.n;
        self.map_factors(|g, r| grid_promote_inverse(g, r, n))
    }

    /// `pr^k`, with negative powers meaning inverse promotion.
    pub fn promote_power(&self, k: i64) -> TensorElement {
        let mut t = self.clone();
        for _ in 0..k.unsigned_abs() {
            t = if k >= 0 { t.promote() } else { t.promote_inverse() };
        }
        t
    }

    fn check_index(&self, i: Entry) -> Result<()> {
        if self.n < 2 || i == 0 || i > self.n {
            return Err(Error::Domain(format!("crystal index {i} is outside [1, {}]", self.n)));
        }
        Ok(())
    }

    fn classical_step(&self, i: Entry, raise: bool) -> Option<TensorElement> {
        let pos = if raise { e_position(&self.word, i) } else { f_position(&self.word, i) }?;
        let mut word = self.word.clone();
        if raise {
            word[pos] -= 1;
        } else {
            word[pos] += 1;
        }
        Some(TensorElement { n: self.n, shapes: self.shapes.clone(), word })
    }

    fn step(&self, i: Entry, raise: bool) -> Option<TensorElement> {
        if i < self.n {
            self.classical_step(i, raise)
        } else {
            self.promote()
                .classical_step(1, raise)
                .map(|t| t.promote_inverse())
        }
    }

    /// `f_i` for `i ∈ [n]`; `f_n` is conjugated from `f_1` by promotion.
    pub fn f(&self, i: Entry) -> Result<Option<TensorElement>> {
        self.check_index(i)?;
        Ok(self.step(i, false))
    }

    /// `e_i` for `i ∈ [n]`; `e_n` is conjugated from `e_1` by promotion.
    pub fn e(&self, i: Entry) -> Result<Option<TensorElement>> {
        self.check_index(i)?;
        Ok(self.step(i, true))
    }

    pub(crate) fn f_unchecked(&self, i: Entry) -> Option<TensorElement> {
        self.step(i, false)
    }

    pub(crate) fn e_unchecked(&self, i: Entry) -> Option<TensorElement> {
        self.step(i, true)
    }

    /// Element with factors `i` and `i+1` (0-based `i`) replaced.
    pub(crate) fn with_pair(&self, i: usize, shapes: Arc<RectSeq>, a: &Tableau, b: &Tableau) -> TensorElement {
        let mut word = Vec::with_capacity(self.word.len());
        for f in 0..self.num_factors() {
            if f == i {
                word.extend(a.row_reading_word());
                word.extend(b.row_reading_word());
            } else if f != i + 1 {
                word.extend_from_slice(&self.word[self.shapes.segment(f)]);
            }
        }
        TensorElement { n: self.n, shapes, word }
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, t) in self.factors().iter().enumerate() {
            if idx > 0 {
                write!(f, " ⊗ ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    n: Entry,
    shapes: RectSeq,
    factors: Vec<Vec<Vec<Entry>>>,
}

impl Serialize for TensorElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorJson {
            n: self.n,
            shapes: (*self.shapes).clone(),
            factors: self.factors().iter().map(Tableau::entry_rows).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TensorJson::deserialize(d)?;
        let factors = raw
            .factors
            .into_iter()
            .map(Tableau::from_rows)
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        TensorElement::new(Arc::new(raw.shapes), &factors, raw.n).map_err(D::Error::custom)
    }
}

/// Standard fillings of a rectangle, each given as the rank (0-based) of the
/// entry at every row-word position.
pub(crate) fn standard_rw_labelings(rect: Rectangle) -> Vec<Vec<u8>> {
    fn rec(rect: Rectangle, lens: &mut Vec<usize>, next: u8, grid: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if next as usize == rect.cells() {
            let mut labels = vec![0u8; grid.len()];
            for (p, slot) in labels.iter_mut().enumerate() {
                *slot = grid[rw_to_grid(p, rect.rows, rect.cols)];
            }
            out.push(labels);
            return;
        }
        for r in 0..rect.rows {
            let c = lens[r];
            if c < rect.cols && (r == 0 || lens[r - 1] > c) {
                grid[r * rect.cols + c] = next;
                lens[r] += 1;
                rec(rect, lens, next + 1, grid, out);
                lens[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(rect, &mut vec![0; rect.rows], 0, &mut vec![0; rect.cells()], &mut out);
    out
}

/// All tensor elements using every letter of `[n]` exactly once, sorted by row word.
pub fn enumerate_zero_weight(shapes: &RectSeq) -> Vec<TensorElement> {
    let shapes = Arc::new(shapes.clone());
    let n = shapes.n();
    let labelings: Vec<Vec<Vec<u8>>> = shapes.rects().iter().map(|&r| standard_rw_labelings(r)).collect();

    // first factor's value set is the unit of parallel work
    let first_size = shapes.rects()[0].cells();
    let all: Vec<Entry> = (1..=n).collect();
    let first_choices = combinations(&all, first_size);

    fn fill(
        shapes: &RectSeq,
        labelings: &[Vec<Vec<u8>>],
        f: usize,
        remaining: &[Entry],
        word: &mut Vec<Entry>,
        out: &mut Vec<Vec<Entry>>,
    ) {
        if f == shapes.len() {
            out.push(word.clone());
            return;
        }
        let size = shapes.rects()[f].cells();
        for subset in combinations(remaining, size) {
            let rest: Vec<Entry> = remaining.iter().copied().filter(|x| !subset.contains(x)).collect();
            for lab in &labelings[f] {
                let base = word.len();
                word.extend(lab.iter().map(|&k| subset[k as usize]));
                fill(shapes, labelings, f + 1, &rest, word, out);
                word.truncate(base);
            }
        }
    }

    let chunks: Vec<Vec<Vec<Entry>>> = par::map(&first_choices, |subset| {
        let rest: Vec<Entry> = all.iter().copied().filter(|x| !subset.contains(x)).collect();
        let mut out = Vec::new();
        for lab in &labelings[0] {
            let mut word: Vec<Entry> = lab.iter().map(|&k| subset[k as usize]).collect();
            fill(&shapes, &labelings, 1, &rest, &mut word, &mut out);
        }
        out
    });
    let mut words: Vec<Vec<Entry>> = chunks.into_iter().flatten().collect();
    par::sort(&mut words);
    words
        .into_iter()
        .map(|word| TensorElement { n, shapes: shapes.clone(), word })
        .collect()
}

/// All `k`-subsets of `items`, each in increasing order, in lexicographic order.
pub(crate) fn combinations(items: &[Entry], k: usize) -> Vec<Vec<Entry>> {
    fn rec(items: &[Entry], k: usize, start: usize, cur: &mut Vec<Entry>, out: &mut Vec<Vec<Entry>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=items.len().saturating_sub(need) {
            if i >= items.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        rec(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// All semistandard fillings of a straight shape with entries in `[n]`.
pub fn semistandard_tableaux(shape: &Partition, n: Entry) -> Vec<Tableau> {
    let parts = shape.parts().to_vec();
    let cells: Vec<(usize, usize)> = parts
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<Entry>> = parts.iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();
    fn rec(idx: usize, cells: &[(usize, usize)], rows: &mut Vec<Vec<Entry>>, n: Entry, out: &mut Vec<Tableau>) {
        if idx == cells.len() {
            out.push(Tableau::from_rows(rows.clone()).expect("straight shape"));
            return;
        }
        let (r, c) = cells[idx];
        let lo_row = if c > 0 { rows[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=n {
            rows[r][c] = v;
            rec(idx + 1, cells, rows, n, out);
        }
        rows[r][c] = 0;
    }
    rec(0, &cells, &mut rows, n, &mut out);
    out
}

/// The KR crystal of a single rectangle: vertices and arrows `T -> f_i(T)`.
#[derive(Clone, Debug)]
pub struct KrCrystal {
    pub rect: Rectangle,
    pub n: Entry,
    pub vertices: Vec<Tableau>,
    /// `(source, target, i)`
    pub arrows: Vec<(usize, usize, Entry)>,
}

pub fn build_kr_crystal(rect: Rectangle, n: Entry) -> Result<KrCrystal> {
    if n < 2 {
        return Err(Error::Domain("a KR crystal needs n >= 2".into()));
    }
    let shapes = Arc::new(RectSeq::new(vec![rect])?);
    let vertices = semistandard_tableaux(&rect.partition(), n);
    let elements: Vec<TensorElement> = vertices
        .iter()
        .map(|t| TensorElement::new(shapes.clone(), std::slice::from_ref(t), n))
        .collect::<Result<_>>()?;
    let mut arrows = Vec::new();
    for (s, t) in elements.iter().enumerate() {
        for i in 1..=n {
            if let Some(u) = t.f_unchecked(i) {
                let target = elements
                    .iter()
                    .position(|x| *x == u)
                    .ok_or_else(|| Error::Verification(format!("f_{i} left the crystal at {t}")))?;
                arrows.push((s, target, i));
            }
        }
    }
    Ok(KrCrystal { rect, n, vertices, arrows })
}

//! Partitions and (skew) semistandard tableaux.
//!
//! Tableaux use English orientation: row 1 is the top row. A row is stored as
//! a list of optional entries where the leading `None`s are the cells of the
//! inner shape, so a straight tableau has no `None` at all.
//!
//! The public cell coordinates ([`Cell`]) are 1-based.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Entry = u32;

/// Weakly decreasing list of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Shape(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), or zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition((0..width).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Number of standard Young tableaux of this shape, by the hook length formula.
    /// Saturates at `u128::MAX`.
    pub fn hook_length_count(&self) -> u128 {
        use num_bigint::BigUint;
        use num_traits::{One, ToPrimitive};
        let conj = self.conjugate();
        let mut num = BigUint::one();
        for k in 1..=self.size() {
            num *= k;
        }
        let mut den = BigUint::one();
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len {
                den *= (len - c) + (conj.part(c) - r) - 1;
            }
        }
        (num / den).to_u128().unwrap_or(u128::MAX)
    }

    /// All partitions of `n`, in reverse lexicographic order (largest first).
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The rectangle with `rows` rows of length `cols`, i.e. the partition `(cols^rows)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rectangle {
    pub rows: usize,
    pub cols: usize,
}

impl Rectangle {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("rectangle {rows}x{cols} must have positive sides")));
        }
        Ok(Rectangle { rows, cols })
    }

    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }

    pub fn partition(&self) -> Partition {
        Partition(vec![self.cols; self.rows])
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// 1-based cell coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlideKind {
    /// The empty box sits inside the inner shape and moves right/down.
    Inner,
    /// The empty box sits just outside the outer shape and moves up/left.
    Outer,
}

/// A (possibly skew) tableau. Structural equality: same shape, same entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<Option<Entry>>>,
}

impl Tableau {
    pub fn empty() -> Self {
        Tableau { rows: Vec::new() }
    }

    /// Straight-shape tableau from its rows. Does not check semistandardness.
    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self> {
        Self::skew(rows.into_iter().map(|r| r.into_iter().map(Some).collect()).collect())
    }

    /// Skew tableau; `None` marks inner cells and must form a prefix of each row.
    pub fn skew(mut rows: Vec<Vec<Option<Entry>>>) -> Result<Self> {
        while rows.last().is_some_and(|r| r.iter().all(Option::is_none)) {
            rows.pop();
        }
        let t = Tableau { rows };
        t.check_shape()?;
        Ok(t)
    }

    /// Rectangular tableau from a row-major list of entries.
    pub fn rectangle(rect: Rectangle, entries: &[Entry]) -> Result<Self> {
        if entries.len() != rect.cells() {
            return Err(Error::Shape(format!(
                "{} entries do not fill a {rect} rectangle",
                entries.len()
            )));
        }
        Self::from_rows(entries.chunks(rect.cols).map(<[Entry]>::to_vec).collect())
    }

    fn check_shape(&self) -> Result<()> {
        let mut prev_inner = usize::MAX;
        let mut prev_outer = usize::MAX;
        for (r, row) in self.rows.iter().enumerate() {
            let inner = row.iter().take_while(|c| c.is_none()).count();
            if row[inner..].iter().any(Option::is_none) {
                return Err(Error::Shape(format!("row {} has an inner cell after an entry", r + 1)));
            }
            if inner > prev_inner || row.len() > prev_outer {
                return Err(Error::Shape(format!("row {} breaks the skew shape", r + 1)));
            }
            prev_inner = inner;
            prev_outer = row.len();
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<Option<Entry>>] {
        &self.rows
    }

    /// Rows with inner cells dropped.
    pub fn entry_rows(&self) -> Vec<Vec<Entry>> {
        self.rows.iter().map(|r| r.iter().flatten().copied().collect()).collect()
    }

    pub fn outer(&self) -> Partition {
        Partition::from_unsorted(self.rows.iter().map(Vec::len).collect())
    }

    pub fn inner(&self) -> Partition {
        Partition::from_unsorted(self.rows.iter().map(|r| r.iter().take_while(|c| c.is_none()).count()).collect())
    }

    pub fn is_straight(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Option::is_some))
    }

    pub fn num_cells(&self) -> usize {
        self.rows.iter().map(|r| r.iter().flatten().count()).sum()
    }

    pub fn get(&self, cell: Cell) -> Option<Entry> {
        if cell.row == 0 || cell.col == 0 {
            return None;
        }
        self.rows.get(cell.row - 1)?.get(cell.col - 1).copied().flatten()
    }

    /// First cell (reading rows top to bottom) holding `value`.
    pub fn find(&self, value: Entry) -> Option<Cell> {
        self.rows.iter().enumerate().find_map(|(r, row)| {
            row.iter().position(|&c| c == Some(value)).map(|c| Cell::new(r + 1, c + 1))
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = Entry> + '_ {
        self.rows.iter().flat_map(|r| r.iter().flatten().copied())
    }

    pub fn map_entries(&self, f: impl Fn(Entry) -> Entry) -> Tableau {
        Tableau {
            rows: self.rows.iter().map(|r| r.iter().map(|c| c.map(&f)).collect()).collect(),
        }
    }

    /// Rows weakly increase, columns strictly increase.
    pub fn is_semistandard(&self) -> bool {
        for (r, row) in self.rows.iter().enumerate() {
            let cells: Vec<Entry> = row.iter().flatten().copied().collect();
            if cells.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            if r > 0 {
                let above = &self.rows[r - 1];
                for (c, v) in row.iter().enumerate() {
                    if let (Some(v), Some(Some(u))) = (v, above.get(c)) {
                        if u >= v {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Semistandard with every entry in `[1, n]`.
    pub fn validate(&self, n: Entry) -> Result<()> {
        if !self.is_semistandard() {
            return Err(Error::Invalid(format!("tableau {self} is not semistandard")));
        }
        if let Some(bad) = self.entries().find(|&e| e == 0 || e > n) {
            return Err(Error::Domain(format!("entry {bad} is outside [1, {n}]")));
        }
        Ok(())
    }

    /// Rows from bottom to top, each read left to right.
    pub fn row_reading_word(&self) -> Vec<Entry> {
        self.rows.iter().rev().flat_map(|r| r.iter().flatten().copied()).collect()
    }

    /// Columns from left to right, each read bottom to top.
    pub fn column_reading_word(&self) -> Vec<Entry> {
        let width = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut word = Vec::with_capacity(self.num_cells());
        for c in 0..width {
            for row in self.rows.iter().rev() {
                if let Some(Some(v)) = row.get(c) {
                    word.push(*v);
                }
            }
        }
        word
    }

    /// Jeu de taquin slide into the empty box `cell`.
    pub fn jdt_slide(&self, cell: Cell, kind: SlideKind) -> Result<Tableau> {
        if cell.row == 0 || cell.col == 0 {
            return Err(Error::Shape("cells are 1-based".into()));
        }
        let (r, c) = (cell.row - 1, cell.col - 1);
        let mut grid = Grid::from(self);
        match kind {
            SlideKind::Inner => {
                grid.check_inner_box(r, c)?;
                grid.slide_inner(r, c);
            }
            SlideKind::Outer => {
                grid.check_outer_box(r, c)?;
                grid.slide_outer(r, c);
            }
        }
        Ok(grid.into_tableau())
    }

    /// Slide the entry at `cell` out of a rectangle: drop every cell weakly
    /// south-east of it, slide the hole north-west, fill the vacated inner cell
    /// with 0 and put the dropped cells (except `cell` itself) back.
    pub fn partial_jdt(&self, cell: Cell) -> Result<Tableau> {
        if !self.is_straight() || self.rows.iter().any(|r| r.len() != self.rows[0].len()) {
            return Err(Error::Shape("partial slides need a rectangular tableau".into()));
        }
        if self.get(cell).is_none() {
            return Err(Error::Shape(format!("cell ({},{}) is not in the tableau", cell.row, cell.col)));
        }
        let (r0, c0) = (cell.row - 1, cell.col - 1);
        let mut kept = self.rows.clone();
        let mut removed = Vec::new();
        for (r, row) in kept.iter_mut().enumerate().skip(r0) {
            for (c, &x) in row.iter().enumerate().skip(c0) {
                if (r, c) != (r0, c0) {
                    removed.push((r, c, x));
                }
            }
            row.truncate(c0);
        }
        let mut grid = Grid { rows: kept };
        grid.rows[r0].push(None);
        grid.slide_outer_filling(r0, c0, 0);
        let mut rows = grid.rows;
        for (r, c, v) in removed {
            if rows[r].len() == c {
                rows[r].push(v);
            } else {
                rows[r][c] = v;
            }
        }
        Ok(Tableau { rows })
    }

    /// Promotion with respect to the alphabet `[n]`.
    pub fn promote(&self, n: Entry) -> Result<Tableau> {
        self.validate(n)?;
        Ok(self.promote_unchecked(n))
    }

    pub(crate) fn promote_unchecked(&self, n: Entry) -> Tableau {
        let mut grid = Grid::from(self);
        // n's form a horizontal strip; slide them out bottom to top, left to right
        for r in (0..grid.rows.len()).rev() {
            let positions: Vec<usize> = (0..grid.rows[r].len()).filter(|&c| grid.rows[r][c] == Some(n)).collect();
            for c in positions {
                grid.rows[r][c] = None;
                grid.slide_outer_filling(r, c, 0);
            }
        }
        grid.into_tableau().map_entries(|e| e + 1)
    }

    /// Inverse of [`Tableau::promote`].
    pub fn promote_inverse(&self, n: Entry) -> Result<Tableau> {
        self.validate(n)?;
        Ok(self.promote_inverse_unchecked(n))
    }

    pub(crate) fn promote_inverse_unchecked(&self, n: Entry) -> Tableau {
        let mut grid = Grid::from(self);
        for r in 0..grid.rows.len() {
            let positions: Vec<usize> = (0..grid.rows[r].len()).filter(|&c| grid.rows[r][c] == Some(1)).collect();
            for c in positions.into_iter().rev() {
                grid.rows[r][c] = None;
                grid.slide_inner_filling(r, c, n + 1);
            }
        }
        grid.into_tableau().map_entries(|e| e - 1)
    }

    /// RSK row insertion of `k`; the tableau must have straight shape.
    pub fn row_insert(&self, k: Entry) -> Tableau {
        let mut rows = self.entry_rows();
        row_insert_rows(&mut rows, k);
        Tableau::from_rows(rows).expect("row insertion keeps a straight shape")
    }

    /// The tableau as a rectangle in row-major order, if it is one.
    pub fn as_rectangle(&self) -> Option<(Rectangle, Vec<Entry>)> {
        let cols = self.rows.first()?.len();
        if !self.is_straight() || self.rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some((Rectangle { rows: self.rows.len(), cols }, self.entries().collect()))
    }
}

/// Insert `k` into straight rows, bumping as in RSK. Returns the row index
/// where the new cell was created.
pub(crate) fn row_insert_rows(rows: &mut Vec<Vec<Entry>>, mut k: Entry) -> usize {
    for (r, row) in rows.iter_mut().enumerate() {
        match row.iter().position(|&x| x > k) {
            Some(pos) => k = std::mem::replace(&mut row[pos], k),
            None => {
                row.push(k);
                return r;
            }
        }
    }
    rows.push(vec![k]);
    rows.len() - 1
}

/// Shape of the insertion tableau only; avoids building a `Tableau`.
pub(crate) fn insertion_rows(word: &[Entry]) -> Vec<Vec<Entry>> {
    let mut rows = Vec::new();
    for &k in word {
        row_insert_rows(&mut rows, k);
    }
    rows
}

/// Left-to-right row insertion of `word` into the empty tableau.
pub fn insertion_tableau(word: &[Entry]) -> Tableau {
    Tableau::from_rows(insertion_rows(word)).expect("insertion produces a straight shape")
}

/// Largest total length of `k` disjoint weakly increasing subsequences of `word`.
///
/// Exact search over the subsequence assignments; meant for short words.
pub fn greene_invariant(word: &[Entry], k: usize) -> usize {
    fn go(word: &[Entry], i: usize, lasts: &mut Vec<Entry>, memo: &mut HashMap<(usize, Vec<Entry>), usize>) -> usize {
        if i == word.len() {
            return 0;
        }
        let key = (i, lasts.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut best = go(word, i + 1, lasts, memo);
        let x = word[i];
        let mut tried = Vec::new();
        for s in 0..lasts.len() {
            let last = lasts[s];
            if last <= x && !tried.contains(&last) {
                tried.push(last);
                lasts[s] = x;
                let mut sorted = lasts.clone();
                sorted.sort_unstable();
                let mut sorted_lasts = sorted;
                best = best.max(1 + go(word, i + 1, &mut sorted_lasts, memo));
                lasts[s] = last;
            }
        }
        memo.insert(key, best);
        best
    }
    if k == 0 {
        return 0;
    }
    // 0 stands for an empty subsequence that accepts anything
    go(word, 0, &mut vec![0; k], &mut HashMap::new())
}

/// Mutable working copy used during slides. `None` is an inner cell or the hole.
struct Grid {
    rows: Vec<Vec<Option<Entry>>>,
}

impl From<&Tableau> for Grid {
    fn from(t: &Tableau) -> Self {
        Grid { rows: t.rows.clone() }
    }
}

impl Grid {
    fn at(&self, r: usize, c: usize) -> Option<Entry> {
        self.rows.get(r).and_then(|row| row.get(c)).copied().flatten()
    }

    fn inner_len(&self, r: usize) -> usize {
        self.rows.get(r).map_or(0, |row| row.iter().take_while(|c| c.is_none()).count())
    }

    fn outer_len(&self, r: usize) -> usize {
        self.rows.get(r).map_or(0, Vec::len)
    }

    fn check_inner_box(&self, r: usize, c: usize) -> Result<()> {
        let is_corner = r < self.rows.len() && c + 1 == self.inner_len(r) && self.inner_len(r + 1) <= c;
        if is_corner {
            Ok(())
        } else {
            Err(Error::Shape(format!("({},{}) is not an inner box", r + 1, c + 1)))
        }
    }

    fn check_outer_box(&self, r: usize, c: usize) -> Result<()> {
        let fits = if r < self.rows.len() {
            c == self.outer_len(r) && (r == 0 || c < self.outer_len(r - 1))
        } else {
            r == self.rows.len() && r > 0 && c <= self.inner_len(r - 1) && c < self.outer_len(r - 1)
        };
        let touches = (c > 0 && self.at(r, c - 1).is_some()) || (r > 0 && self.at(r - 1, c).is_some());
        if fits && touches {
            Ok(())
        } else {
            Err(Error::Shape(format!("({},{}) is not an outer box", r + 1, c + 1)))
        }
    }

    /// Moves the hole at (r, c) right/down until it leaves the shape. Returns the final position.
    fn slide_inner(&mut self, mut r: usize, mut c: usize) -> (usize, usize) {
        loop {
            let right = self.at(r, c + 1);
            let down = self.at(r + 1, c);
            let (nr, nc) = match (right, down) {
                (None, None) => break,
                (Some(_), None) => (r, c + 1),
                (None, Some(_)) => (r + 1, c),
                // ties: the lower entry moves up
                (Some(x), Some(y)) => {
                    if y <= x {
                        (r + 1, c)
                    } else {
                        (r, c + 1)
                    }
                }
            };
            self.rows[r][c] = self.rows[nr][nc].take();
            r = nr;
            c = nc;
        }
        self.rows[r].pop();
        while self.rows.last().is_some_and(|row| row.iter().all(Option::is_none)) {
            self.rows.pop();
        }
        (r, c)
    }

    fn slide_inner_filling(&mut self, r: usize, c: usize, fill: Entry) {
        let (er, ec) = self.slide_inner(r, c);
        while self.rows.len() <= er {
            self.rows.push(Vec::new());
        }
        while self.rows[er].len() < ec {
            self.rows[er].push(None);
        }
        self.rows[er].push(Some(fill));
    }

    /// Moves the hole at (r, c) up/left until it reaches the inner boundary.
    fn slide_outer(&mut self, mut r: usize, mut c: usize) -> (usize, usize) {
        if r == self.rows.len() {
            self.rows.push(vec![None; c]);
        }
        if c == self.rows[r].len() {
            self.rows[r].push(None);
        }
        loop {
            let up = if r > 0 { self.at(r - 1, c) } else { None };
            let left = if c > 0 { self.at(r, c - 1) } else { None };
            let (nr, nc) = match (up, left) {
                (None, None) => break,
                (Some(_), None) => (r - 1, c),
                (None, Some(_)) => (r, c - 1),
                // ties: the higher entry moves down
                (Some(x), Some(y)) => {
                    if x >= y {
                        (r - 1, c)
                    } else {
                        (r, c - 1)
                    }
                }
            };
            self.rows[r][c] = self.rows[nr][nc].take();
            r = nr;
            c = nc;
        }
        (r, c)
    }

    fn slide_outer_filling(&mut self, r: usize, c: usize, fill: Entry) {
        let (er, ec) = self.slide_outer(r, c);
        self.rows[er][ec] = Some(fill);
    }

    fn into_tableau(self) -> Tableau {
        let mut rows = self.rows;
        while rows.last().is_some_and(|row| row.iter().all(Option::is_none)) {
            rows.pop();
        }
        Tableau { rows }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                match c {
                    Some(v) => write!(f, "{v}")?,
                    None => write!(f, ".")?,
                }
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    outer: Vec<usize>,
    #[serde(default)]
    inner: Vec<usize>,
    rows: Vec<Vec<Option<Entry>>>,
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauJson {
            outer: self.outer().0,
            inner: self.inner().0,
            rows: self.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TableauJson::deserialize(d)?;
        // rows may omit the leading nulls; rebuild them from `inner`
        let mut rows = Vec::with_capacity(raw.rows.len());
        for (r, row) in raw.rows.into_iter().enumerate() {
            let inner = raw.inner.get(r).copied().unwrap_or(0);
            let outer = raw.outer.get(r).copied().unwrap_or(row.len());
            let row = if row.len() + inner == outer && inner > 0 && row.first().is_some_and(Option::is_some) {
                std::iter::repeat_n(None, inner).chain(row).collect()
            } else {
                row
            };
            if row.len() != outer || row.iter().take_while(|c| c.is_none()).count() != inner {
                return Err(D::Error::custom(format!("row {} disagrees with outer/inner shape", r + 1)));
            }
            rows.push(row);
        }
        if raw.outer.len() > rows.len() && raw.outer[rows.len()..].iter().any(|&p| p > 0) {
            return Err(D::Error::custom("outer shape has more rows than given"));
        }
        Tableau::skew(rows).map_err(D::Error::custom)
    }
}

//! Combinatorial R-matrices, charge and semicharge.

use std::sync::Arc;

use crate::crystal::{e_position, f_position, RectSeq, TensorElement};
use crate::error::{Error, Result};
use crate::tableaux::{insertion_rows, Entry, Rectangle, Tableau};

/// Row word of the tableau of shape `rect` whose row `i` is filled with `i`.
fn yamanouchi_word(rect: Rectangle) -> Vec<Entry> {
    (1..=rect.rows as Entry)
        .rev()
        .flat_map(|i| std::iter::repeat_n(i, rect.cols))
        .collect()
}

/// Finds the filling `a` of `rect` with the given content such that
/// `rw(a) · suffix` has no unmatched `i+1` for any `i`.
///
/// Cells are filled in reverse row-word order (top row first, right to left),
/// so every partial assignment is a suffix of the final word.
fn highest_weight_prefix(rect: Rectangle, content: &mut [usize], suffix_counts: &mut Vec<usize>) -> Option<Vec<Entry>> {
    let (rows, cols) = (rect.rows, rect.cols);
    let mut grid = vec![0 as Entry; rows * cols];
    let order: Vec<(usize, usize)> = (0..rows).flat_map(|r| (0..cols).rev().map(move |c| (r, c))).collect();

    fn rec(
        idx: usize,
        order: &[(usize, usize)],
        cols: usize,
        grid: &mut [Entry],
        content: &mut [usize],
        counts: &mut Vec<usize>,
    ) -> bool {
        let Some(&(r, c)) = order.get(idx) else {
            return true;
        };
        let hi = if c + 1 < cols { grid[r * cols + c + 1] } else { content.len() as Entry };
        let lo = if r > 0 { grid[(r - 1) * cols + c] + 1 } else { 1 };
        for x in lo..=hi {
            let xi = x as usize - 1;
            if content[xi] == 0 {
                continue;
            }
            if xi > 0 && counts[xi] + 1 > counts[xi - 1] {
                continue;
            }
            content[xi] -= 1;
            counts[xi] += 1;
            grid[r * cols + c] = x;
            if rec(idx + 1, order, cols, grid, content, counts) {
                return true;
            }
            grid[r * cols + c] = 0;
            counts[xi] -= 1;
            content[xi] += 1;
        }
        false
    }

    if !rec(0, &order, cols, &mut grid, content, suffix_counts) {
        return None;
    }
    // row word: rows bottom to top
    Some((0..rows).rev().flat_map(|r| grid[r * cols..(r + 1) * cols].to_vec()).collect())
}

/// R-matrix on row words: `w1` fills `r1`, `w2` fills `r2`. Returns the row
/// words of the factors of shape `r2` and `r1`.
pub(crate) fn r_matrix_words(w1: &[Entry], r1: Rectangle, w2: &[Entry], r2: Rectangle) -> Result<(Vec<Entry>, Vec<Entry>)> {
    if r1 == r2 {
        return Ok((w1.to_vec(), w2.to_vec()));
    }
    let mut w: Vec<Entry> = w1.iter().chain(w2).copied().collect();
    let top = w.iter().copied().max().unwrap_or(1);

    // raise to the highest weight, remembering the path
    let mut path: Vec<Entry> = Vec::new();
    loop {
        let mut moved = false;
        for i in 1..top {
            while let Some(p) = e_position(&w, i) {
                w[p] -= 1;
                path.push(i);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }

    let alphabet = top.max(r1.rows as Entry).max(r2.rows as Entry) as usize;
    let mut content = vec![0usize; alphabet];
    for &x in &w {
        content[x as usize - 1] += 1;
    }
    let yam = yamanouchi_word(r1);
    let mut suffix_counts = vec![0usize; alphabet];
    for &x in &yam {
        let slot = &mut content[x as usize - 1];
        if *slot == 0 {
            return Err(Error::Verification(format!(
                "highest weight {content:?} has no component of shape {r2} ⊗ {r1}"
            )));
        }
        *slot -= 1;
        suffix_counts[x as usize - 1] += 1;
    }
    let prefix = highest_weight_prefix(r2, &mut content, &mut suffix_counts).ok_or_else(|| {
        Error::Verification(format!("no highest weight element of shape {r2} ⊗ {r1} with this weight"))
    })?;

    let mut image: Vec<Entry> = prefix.into_iter().chain(yam).collect();
    for &i in path.iter().rev() {
        let p = f_position(&image, i)
            .ok_or_else(|| Error::Verification(format!("f_{i} undefined while lowering the R-matrix image")))?;
        image[p] += 1;
    }

    let original: Vec<Entry> = w1.iter().chain(w2).copied().collect();
    if insertion_rows(&image) != insertion_rows(&original) {
        return Err(Error::Verification("R-matrix image is not Knuth equivalent to its input".into()));
    }
    let split = r2.cells();
    Ok((image[..split].to_vec(), image[split..].to_vec()))
}

fn rectangle_of(t: &Tableau, which: &str) -> Result<Rectangle> {
    let (rect, _) = t
        .as_rectangle()
        .ok_or_else(|| Error::Shape(format!("{which} factor {t} is not a rectangle")))?;
    if !t.is_semistandard() || t.entries().any(|e| e == 0) {
        return Err(Error::Invalid(format!("{which} factor {t} is not a semistandard tableau")));
    }
    Ok(rect)
}

fn tableau_from_rw(word: &[Entry], rect: Rectangle) -> Tableau {
    let rows: Vec<Vec<Entry>> = word.chunks(rect.cols).rev().map(<[Entry]>::to_vec).collect();
    Tableau::from_rows(rows).expect("rectangular rows")
}

/// The combinatorial R-matrix `T1 ⊗ T2 ↦ A ⊗ B` with `A` of the shape of `T2`
/// and `B` of the shape of `T1`.
///
/// The image is found by transporting along the classical crystal: raise the
/// row word to its highest weight, replace it by the highest weight element of
/// the swapped tensor product with the same weight, and lower back. Products
/// of two rectangles are multiplicity free, so this element is unique. The
/// result is certified by comparing insertion tableaux.
pub fn r_matrix(t1: &Tableau, t2: &Tableau) -> Result<(Tableau, Tableau)> {
    let r1 = rectangle_of(t1, "left")?;
    let r2 = rectangle_of(t2, "right")?;
    let (a, b) = r_matrix_words(&t1.row_reading_word(), r1, &t2.row_reading_word(), r2)?;
    Ok((tableau_from_rw(&a, r2), tableau_from_rw(&b, r1)))
}

/// Applies `σ_i`, swapping factors `i` and `i+1` (1-based).
pub fn apply_sigma(t: &TensorElement, i: usize) -> Result<TensorElement> {
    let k = t.num_factors();
    if i == 0 || i >= k {
        return Err(Error::Domain(format!("σ_{i} needs 1 <= i < {k}")));
    }
    let shapes = t.shapes();
    let (r1, r2) = (shapes.rects()[i - 1], shapes.rects()[i]);
    let (a, b) = r_matrix_words(
        &t.word()[shapes.segment(i - 1)],
        r1,
        &t.word()[shapes.segment(i)],
        r2,
    )?;
    let mut rects = shapes.rects().to_vec();
    rects.swap(i - 1, i);
    let new_shapes = if r1 == r2 { t.shapes_arc().clone() } else { Arc::new(RectSeq::new(rects)?) };
    Ok(t.with_pair(i - 1, new_shapes, &tableau_from_rw(&a, r2), &tableau_from_rw(&b, r1)))
}

fn local_charge_words(w1: &[Entry], rows1: usize, w2: &[Entry], rows2: usize) -> usize {
    let word: Vec<Entry> = w1.iter().chain(w2).copied().collect();
    let p = insertion_rows(&word);
    p.iter().skip(rows1.max(rows2)).map(Vec::len).sum()
}

/// Cells below row `max(r1, r2)` in `P(rw(T1) rw(T2))`.
pub fn local_charge(t1: &Tableau, t2: &Tableau) -> Result<usize> {
    let r1 = rectangle_of(t1, "left")?;
    let r2 = rectangle_of(t2, "right")?;
    Ok(local_charge_words(&t1.row_reading_word(), r1.rows, &t2.row_reading_word(), r2.rows))
}

/// Charge: the sum over pairs `i < j` of the local charge between factor `i`,
/// carried to position `j-1` by R-matrices, and factor `j`.
pub fn charge(t: &TensorElement) -> Result<u64> {
    let shapes = t.shapes();
    let k = t.num_factors();
    let mut total = 0u64;
    for i in 0..k {
        let mut cur = t.word()[shapes.segment(i)].to_vec();
        let cur_rect = shapes.rects()[i];
        for j in i + 1..k {
            let rj = shapes.rects()[j];
            let wj = &t.word()[shapes.segment(j)];
            total += local_charge_words(&cur, cur_rect.rows, wj, rj.rows) as u64;
            if j + 1 < k {
                let (_, moved) = r_matrix_words(&cur, cur_rect, wj, rj)?;
                cur = moved;
            }
        }
    }
    Ok(total)
}

/// Semicharge: `Σ i · charge(T_i ⊗ T_{i+1})` over adjacent pairs of equal shape.
pub fn semicharge(t: &TensorElement) -> u64 {
    let shapes = t.shapes();
    (1..t.num_factors())
        .filter(|&i| shapes.rects()[i - 1] == shapes.rects()[i])
        .map(|i| {
            let r = shapes.rects()[i];
            let local = local_charge_words(
                &t.word()[shapes.segment(i - 1)],
                r.rows,
                &t.word()[shapes.segment(i)],
                r.rows,
            );
            i as u64 * local as u64
        })
        .sum()
}

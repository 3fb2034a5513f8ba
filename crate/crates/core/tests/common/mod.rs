#![allow(dead_code)]

use std::sync::Arc;

use krdeg::charge::apply_sigma;
use krdeg::crystal::{semistandard_tableaux, RectSeq, TensorElement};
use krdeg::tableaux::{greene_invariant, insertion_tableau, Cell, Entry, Partition, Rectangle, SlideKind, Tableau};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn t(rows: &[&[Entry]]) -> Tableau {
    Tableau::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

/// Tensor element of rectangular factors with `n` = total number of cells.
pub fn tensor(factors: &[&[&[Entry]]]) -> TensorElement {
    let tabs: Vec<Tableau> = factors.iter().map(|f| t(f)).collect();
    let rects: Vec<Rectangle> = tabs.iter().map(|x| x.as_rectangle().unwrap().0).collect();
    let shapes = Arc::new(RectSeq::new(rects).unwrap());
    let n = shapes.n();
    TensorElement::new(shapes, &tabs, n).unwrap()
}

pub fn tensor_n(factors: &[Tableau], n: Entry) -> TensorElement {
    let rects = factors.iter().map(|x| x.as_rectangle().unwrap().0).collect();
    TensorElement::new(Arc::new(RectSeq::new(rects).unwrap()), factors, n).unwrap()
}

/// Two single-column factors.
pub fn colt(a: &[Entry], b: &[Entry]) -> TensorElement {
    let col = |x: &[Entry]| Tableau::from_rows(x.iter().map(|&e| vec![e]).collect()).unwrap();
    tensor_n(&[col(a), col(b)], (a.len() + b.len()) as Entry)
}

pub fn random_rect(rng: &mut ChaCha8Rng, max_cells: usize) -> Rectangle {
    loop {
        let r = rng.gen_range(1..=max_cells);
        let c = rng.gen_range(1..=max_cells);
        if r * c <= max_cells {
            return Rectangle::new(r, c).unwrap();
        }
    }
}

pub fn random_ssyt(rng: &mut ChaCha8Rng, shape: &Partition, n: Entry) -> Tableau {
    semistandard_tableaux(shape, n).choose(rng).expect("n at least the number of rows").clone()
}

/// A random element of `B^{R_1} ⊗ ... ⊗ B^{R_k}` with letters up to `n`.
pub fn random_tensor(rng: &mut ChaCha8Rng, shapes: &RectSeq, n: Entry) -> TensorElement {
    let factors: Vec<Tableau> = shapes.rects().iter().map(|r| random_ssyt(rng, &r.partition(), n)).collect();
    TensorElement::new(Arc::new(shapes.clone()), &factors, n).unwrap()
}

pub fn random_shapes(rng: &mut ChaCha8Rng, k: usize, max_cells: usize) -> RectSeq {
    RectSeq::new((0..k).map(|_| random_rect(rng, max_cells)).collect()).unwrap()
}

pub fn random_word(rng: &mut ChaCha8Rng, len: usize, n: Entry) -> Vec<Entry> {
    (0..len).map(|_| rng.gen_range(1..=n)).collect()
}

pub fn random_partition(rng: &mut ChaCha8Rng, size: usize) -> Partition {
    Partition::all(size).choose(rng).unwrap().clone()
}

fn candidate_cells(t: &Tableau) -> Vec<Cell> {
    let h = t.rows().len() + 1;
    let w = t.rows().iter().map(Vec::len).max().unwrap_or(0) + 1;
    (1..=h).flat_map(|r| (1..=w).map(move |c| Cell::new(r, c))).collect()
}

pub fn slide_targets(t: &Tableau, kind: SlideKind) -> Vec<Cell> {
    candidate_cells(t).into_iter().filter(|&c| t.jdt_slide(c, kind).is_ok()).collect()
}

/// `f_i` and `e_i` undo each other wherever defined, for every `i ∈ [n]`.
pub fn crystal_round_trip(x: &TensorElement) -> Result<(), String> {
    for i in 1..=x.n() {
        if let Some(y) = x.f(i).map_err(|e| e.to_string())? {
            if y.e(i).map_err(|e| e.to_string())?.as_ref() != Some(x) {
                return Err(format!("e_{i} f_{i} fails on {x}"));
            }
        }
        if let Some(y) = x.e(i).map_err(|e| e.to_string())? {
            if y.f(i).map_err(|e| e.to_string())?.as_ref() != Some(x) {
                return Err(format!("f_{i} e_{i} fails on {x}"));
            }
        }
    }
    Ok(())
}

/// Random outer slides keep the insertion tableau of the reading word, and
/// rectifying with inner slides recovers it.
pub fn knuth_invariance(rng: &mut ChaCha8Rng, start: &Tableau, slides: usize) -> Result<(), String> {
    let p = insertion_tableau(&start.row_reading_word());
    let mut cur = start.clone();
    for _ in 0..slides {
        let targets = slide_targets(&cur, SlideKind::Outer);
        let Some(&cell) = targets.choose(rng) else { break };
        cur = cur.jdt_slide(cell, SlideKind::Outer).map_err(|e| e.to_string())?;
        if insertion_tableau(&cur.row_reading_word()) != p {
            return Err(format!("outer slide at {cell:?} changed the insertion tableau of {start:?}"));
        }
    }
    while !cur.is_straight() {
        let targets = slide_targets(&cur, SlideKind::Inner);
        let &cell = targets.choose(rng).ok_or("no inner corner on a skew tableau")?;
        cur = cur.jdt_slide(cell, SlideKind::Inner).map_err(|e| e.to_string())?;
    }
    if cur != p {
        return Err(format!("rectification of {start:?} is {cur:?}, not its insertion tableau"));
    }
    Ok(())
}

/// Greene's invariants of a word are the partial sums of its insertion shape.
pub fn greene_agreement(word: &[Entry]) -> Result<(), String> {
    let shape = insertion_tableau(word).outer();
    let mut acc = 0;
    for k in 1..=shape.len() + 1 {
        acc += shape.part(k - 1);
        let g = greene_invariant(word, k);
        if g != acc {
            return Err(format!("word {word:?}: greene({k}) = {g}, shape {shape}"));
        }
    }
    Ok(())
}

fn count_syt(lambda: &Partition) -> u128 {
    if lambda.size() <= 1 {
        return 1;
    }
    let parts = lambda.parts();
    (0..parts.len())
        .filter(|&i| i + 1 == parts.len() || parts[i + 1] < parts[i])
        .map(|i| {
            let mut p = parts.to_vec();
            p[i] -= 1;
            count_syt(&Partition::from_unsorted(p))
        })
        .sum()
}

/// The hook length formula agrees with counting standard tableaux by corner removal.
pub fn hook_length(lambda: &Partition) -> Result<(), String> {
    let (h, c) = (lambda.hook_length_count(), count_syt(lambda));
    if h == c {
        Ok(())
    } else {
        Err(format!("{lambda}: hook formula {h}, corner recursion {c}"))
    }
}

/// `σ_i` is an involution and the braid relation holds on three factors.
pub fn sigma_laws(x: &TensorElement) -> Result<(), String> {
    let s = |y: &TensorElement, i: usize| apply_sigma(y, i).map_err(|e| e.to_string());
    for i in 1..x.num_factors() {
        if s(&s(x, i)?, i)? != *x {
            return Err(format!("σ_{i} is not an involution on {x}"));
        }
    }
    if x.num_factors() >= 3 {
        let a = s(&s(&s(x, 1)?, 2)?, 1)?;
        let b = s(&s(&s(x, 2)?, 1)?, 2)?;
        if a != b {
            return Err(format!("braid relation fails on {x}"));
        }
    }
    Ok(())
}

//! Acceptance run: prints one `criterion N: pass|FAIL` line per criterion and
//! exits nonzero if any fails. Set `KRDEG_LONG=1` to include the 277200-vertex
//! graph in criteria 1 and 2.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use krdeg::charge::{charge, r_matrix, semicharge};
use krdeg::crystal::RectSeq;
use krdeg::deg::{build_graph, comb_to_row, row_superstandard, s_sequence_path, superstandard, BuildOptions, KRDegGraph};
use krdeg::symfun::{
    component_character, cyclic_character, graph_character, rectangle_product, Basis, SymFunc,
};
use krdeg::tableaux::{Partition, Rectangle};
use krdeg::verify::{exhaustive_two_factor_checks, promotion_automorphism_check, run_suite, Outcome, Suite};

type Verdict = Result<String, String>;

const BATTERY: [(&str, usize, usize); 4] =
    [("2x2,1x1", 10, 1), ("1x2,2x1", 6, 1), ("3x1,3x1", 20, 2), ("2x1,2x1,1x2,1x2", 2520, 2)];
const LONG: (&str, usize, usize) = ("2x2,2x2,2x2", 277200, 3);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn build(s: &str) -> KRDegGraph {
    build_graph(&s.parse::<RectSeq>().unwrap(), &BuildOptions::default()).unwrap()
}

fn long_enabled() -> bool {
    std::env::var("KRDEG_LONG").is_ok_and(|v| v == "1")
}

fn vertex_counts(graphs: &mut Vec<KRDegGraph>) -> Verdict {
    let start = Instant::now();
    for (s, v, _) in BATTERY {
        let g = build(s);
        ensure(g.vertices().len() == v, || format!("{s}: {} vertices, expected {v}", g.vertices().len()))?;
        graphs.push(g);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("battery took {elapsed:?}"))?;
    let mut note = format!("battery built in {elapsed:.2?}");
    if long_enabled() {
        let start = Instant::now();
        let g = build(LONG.0);
        ensure(g.vertices().len() == LONG.1, || format!("{}: {} vertices", LONG.0, g.vertices().len()))?;
        ensure(start.elapsed() < Duration::from_secs(600), || "long build exceeded 10 minutes".into())?;
        note += &format!("; 277200 vertices in {:.2?}", start.elapsed());
        graphs.push(g);
    } else {
        note += "; long case skipped";
    }
    Ok(note)
}

fn component_structure(graphs: &[KRDegGraph]) -> Verdict {
    let expected: Vec<usize> = BATTERY.iter().chain([&LONG]).map(|b| b.2).collect();
    for (g, &c) in graphs.iter().zip(&expected) {
        let s = g.shapes().canonical();
        ensure(g.components().len() == c, || format!("{s}: {} components, expected {c}", g.components().len()))?;
        g.components_by_charge().map_err(|e| format!("{s}: {e}"))?;
    }
    let g = &graphs[2];
    let even = [
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
    let odd = [
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
    let by_charge = g.components_by_charge().map_err(|e| e.to_string())?;
    for (residue, listed) in [(0, &even), (1, &odd)] {
        let mut ids: Vec<usize> = listed
            .iter()
            .map(|(a, b)| g.index_of(&colt(a, b)).ok_or_else(|| format!("{a:?} ⊗ {b:?} is not a vertex")))
            .collect::<Result<_, _>>()?;
        ids.sort_unstable();
        ensure(g.components()[by_charge[&residue]] == ids, || {
            format!("charge {residue} component differs from the figure")
        })?;
    }
    Ok(format!("component counts {:?}", graphs.iter().map(|g| g.components().len()).collect::<Vec<_>>()))
}

fn charge_values() -> Verdict {
    let x = tensor_n(
        &[t(&[&[4, 5, 6], &[9, 13, 14], &[10, 16, 17]]), t(&[&[2, 8], &[3, 11]]), t(&[&[1, 7], &[12, 15]])],
        17,
    );
    let c = charge(&x).map_err(|e| e.to_string())?;
    ensure(c == 7, || format!("charge {c}, expected 7"))?;
    let s = semicharge(&x);
    ensure(s == 4, || format!("semicharge {s}, expected 4"))?;
    let y = tensor_n(&[t(&[&[2, 3], &[7, 8]]), t(&[&[1, 5], &[4, 6]])], 8);
    let fy = y.f(8).map_err(|e| e.to_string())?.ok_or("f_8 undefined")?;
    let (a, b) = (charge(&y).unwrap(), charge(&fy).unwrap());
    ensure((a, b) == (2, 1), || format!("f_8 takes charge {a} to {b}, expected 2 to 1"))?;
    Ok("charge 7, semicharge 4, f_8: 2 -> 1".into())
}

fn r_matrix_laws() -> Verdict {
    let (a, b) = r_matrix(&t(&[&[4, 5, 6], &[9, 13, 14], &[10, 16, 17]]), &t(&[&[2, 8], &[3, 11]]))
        .map_err(|e| e.to_string())?;
    ensure(a == t(&[&[4, 9], &[10, 16]]) && b == t(&[&[2, 6, 8], &[3, 11, 14], &[5, 13, 17]]), || {
        format!("worked example gives {a:?} ⊗ {b:?}")
    })?;
    let (p, q) = (t(&[&[2, 8], &[3, 11]]), t(&[&[1, 7], &[12, 15]]));
    ensure(r_matrix(&p, &q).unwrap() == (p.clone(), q.clone()), || "not the identity on equal shapes".into())?;
    let cases = 200;
    for seed in 0..cases {
        let mut r = rng(seed);
        let shapes = random_shapes(&mut r, 3, 4);
        let n = shapes.max_rows() as u32 + 1;
        sigma_laws(&random_tensor(&mut r, &shapes, n))?;
    }
    Ok(format!("worked example, equal shapes, {cases} random involution and braid cases"))
}

fn edge_equivalence(graphs: &[KRDegGraph]) -> Verdict {
    let mut edges = 0;
    for g in graphs {
        let bad = g.construction_mismatches();
        ensure(bad.is_empty(), || format!("{}: {} mismatched edges", g.shapes().canonical(), bad.len()))?;
        edges += g.edges().len();
    }
    Ok(format!("{edges} edges agree"))
}

fn promotion_automorphism(graphs: &[KRDegGraph]) -> Verdict {
    for g in graphs {
        let c = promotion_automorphism_check(g);
        ensure(c.outcome == Outcome::Pass, || format!("{}: {}", g.shapes().canonical(), c.detail))?;
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn charge_laws(graphs: &[KRDegGraph]) -> Verdict {
    let mut total = 0;
    for c in exhaustive_two_factor_checks(8) {
        ensure(c.outcome == Outcome::Pass, || format!("{}: {}", c.name, c.detail))?;
        total += 1;
    }
    for g in graphs.iter().take(BATTERY.len()) {
        let report = run_suite(Suite::PropsCharge, g);
        ensure(report.passed, || report.to_string())?;
        total += report.checks.len();
    }
    Ok(format!("{total} checks"))
}

fn row_combing() -> Verdict {
    let x = tensor(&[&[&[1, 2], &[3, 6]], &[&[4, 5], &[7, 8]]]);
    let res = comb_to_row(&x).map_err(|e| e.to_string())?;
    let expected = vec![
        tensor(&[&[&[1, 2], &[5, 8]], &[&[3, 4], &[6, 7]]]),
        tensor(&[&[&[1, 2], &[5, 6]], &[&[3, 4], &[7, 8]]]),
    ];
    ensure(res.iterations == expected, || format!("intermediates {:?}", res.iterations))?;
    let row = row_superstandard(x.shapes()).unwrap();
    ensure(res.iterations.last() == Some(&row), || "did not end at row(R)".into())?;
    let mut combed = 0;
    for s in ["3x1,3x1", "2x2,1x1"] {
        let g = build(s);
        for v in g.vertices() {
            comb_to_row(&v.element).map_err(|e| format!("{s}: {} does not comb: {e}", v.element))?;
            combed += 1;
        }
    }
    Ok(format!("example in 2 iterations; {combed} vertices combed"))
}

fn s_sequences() -> Verdict {
    let big = RectSeq::from_dims(&[(2, 2), (3, 3), (3, 3)]).unwrap();
    let path = s_sequence_path(&big, 0, 8).map_err(|e| e.to_string())?;
    let figure = [
        (2, tensor(&[&[&[10, 15], &[11, 16]], &[&[7, 12, 20], &[8, 13, 21], &[9, 14, 22]], &[&[1, 4, 17], &[2, 5, 18], &[3, 6, 19]]])),
        (5, tensor(&[&[&[13, 15], &[14, 16]], &[&[4, 10, 20], &[5, 11, 21], &[6, 12, 22]], &[&[1, 7, 17], &[2, 8, 18], &[3, 9, 19]]])),
        (7, tensor(&[&[&[7, 15], &[8, 16]], &[&[4, 12, 20], &[5, 13, 21], &[6, 14, 22]], &[&[1, 9, 17], &[2, 10, 18], &[3, 11, 19]]])),
        (10, tensor(&[&[&[7, 18], &[8, 19]], &[&[4, 15, 20], &[5, 16, 21], &[6, 17, 22]], &[&[1, 9, 12], &[2, 10, 13], &[3, 11, 14]]])),
        (13, tensor(&[&[&[7, 21], &[8, 22]], &[&[4, 12, 18], &[5, 13, 19], &[6, 14, 20]], &[&[1, 9, 15], &[2, 10, 16], &[3, 11, 17]]])),
    ];
    for (i, want) in &figure {
        ensure(path.milestones.get(*i) == Some(want), || format!("milestone {i} of the column path differs"))?;
    }
    let start = superstandard(&big, 0).unwrap().element;
    ensure(*path.end(&start) == start.promote_power(14), || "column path does not end at pr^14".into())?;

    let path = s_sequence_path(&big, 2, 16).map_err(|e| e.to_string())?;
    let expected = [
        tensor(&[&[&[2, 3], &[10, 11]], &[&[4, 5, 6], &[12, 13, 14], &[18, 20, 22]], &[&[1, 8, 9], &[7, 16, 17], &[15, 19, 21]]]),
        tensor(&[&[&[3, 4], &[11, 12]], &[&[2, 6, 7], &[5, 14, 15], &[13, 20, 22]], &[&[1, 9, 10], &[8, 17, 18], &[16, 19, 21]]]),
        tensor(&[&[&[4, 5], &[12, 13]], &[&[2, 7, 8], &[6, 15, 16], &[14, 20, 22]], &[&[1, 3, 11], &[9, 10, 19], &[17, 18, 21]]]),
        tensor(&[&[&[5, 6], &[13, 14]], &[&[2, 4, 9], &[7, 8, 17], &[15, 16, 22]], &[&[1, 3, 12], &[10, 11, 20], &[18, 19, 21]]]),
        tensor(&[&[&[6, 7], &[14, 15]], &[&[2, 4, 10], &[8, 9, 18], &[16, 17, 22]], &[&[1, 3, 5], &[11, 12, 13], &[19, 20, 21]]]),
        tensor(&[&[&[7, 8], &[15, 16]], &[&[2, 4, 6], &[9, 10, 11], &[17, 18, 19]], &[&[1, 3, 5], &[12, 13, 14], &[20, 21, 22]]]),
    ];
    ensure(path.milestones == expected, || "second-row path milestones differ".into())?;
    let start = superstandard(&big, 2).unwrap().element;
    ensure(*path.end(&start) == start.promote_power(6), || "second-row path does not end at pr^6".into())?;
    Ok("5 + 6 milestones, endpoints pr^14 and pr^6".into())
}

fn schur(terms: &[(&[usize], i64)]) -> SymFunc {
    let degree = terms[0].0.iter().sum();
    SymFunc::from_int_terms(Basis::Schur, degree, terms).unwrap()
}

fn characters(graphs: &[KRDegGraph]) -> Verdict {
    let start = Instant::now();
    for g in graphs.iter().take(BATTERY.len()) {
        let total = graph_character(g).map_err(|e| e.to_string())?;
        let product = rectangle_product(g.shapes()).map_err(|e| e.to_string())?;
        ensure(total == product, || format!("{}: {total} != {product}", g.shapes().canonical()))?;
    }
    let printed: [(usize, [SymFunc; 2]); 2] = [
        (2, [schur(&[(&[2, 1, 1, 1, 1], 1), (&[2, 2, 2], 1)]), schur(&[(&[1, 1, 1, 1, 1, 1], 1), (&[2, 2, 1, 1], 1)])]),
        (
            3,
            [
                schur(&[
                    (&[6, 2], 1), (&[5, 2, 1], 2), (&[5, 1, 1, 1], 2), (&[4, 4], 1), (&[4, 3, 1], 2),
                    (&[4, 2, 2], 3), (&[4, 2, 1, 1], 2), (&[4, 1, 1, 1, 1], 2), (&[3, 3, 1, 1], 3),
                    (&[3, 2, 2, 1], 2), (&[3, 2, 1, 1, 1], 2), (&[2, 2, 2, 2], 1), (&[2, 2, 1, 1, 1, 1], 1),
                ]),
                schur(&[
                    (&[6, 1, 1], 1), (&[5, 3], 1), (&[5, 2, 1], 2), (&[5, 1, 1, 1], 1), (&[4, 3, 1], 2),
                    (&[4, 2, 2], 1), (&[4, 2, 1, 1], 4), (&[4, 1, 1, 1, 1], 1), (&[3, 3, 2], 2),
                    (&[3, 3, 1, 1], 1), (&[3, 2, 2, 1], 2), (&[3, 2, 1, 1, 1], 2), (&[3, 1, 1, 1, 1, 1], 1),
                    (&[2, 2, 2, 1, 1], 1),
                ]),
            ],
        ),
    ];
    for (idx, expected) in &printed {
        let g = &graphs[*idx];
        let by_charge = g.components_by_charge().map_err(|e| e.to_string())?;
        for (residue, want) in expected.iter().enumerate() {
            let got = component_character(g, by_charge[&residue]).map_err(|e| e.to_string())?;
            ensure(got == *want, || format!("{} charge {residue}: {got}", g.shapes().canonical()))?;
        }
    }
    let ell = |k, i| cyclic_character(k, i).unwrap().convert(Basis::Schur).unwrap();
    ensure(ell(2, 0) == SymFunc::schur(Partition::new(vec![2]).unwrap()), || "ℓ_2^(0) != s_2".into())?;
    ensure(ell(2, 1) == SymFunc::schur(Partition::new(vec![1, 1]).unwrap()), || "ℓ_2^(1) != s_11".into())?;
    ensure(ell(3, 1) == ell(3, 2), || "ℓ_3^(1) != ℓ_3^(2)".into())?;
    for k in 1..=6 {
        let mut sum = SymFunc::zero(Basis::PowerSum, k);
        for i in 0..k {
            sum = sum.add(&cyclic_character(k, i).unwrap()).unwrap();
        }
        ensure(sum == SymFunc::powersum(Partition::from_unsorted(vec![1; k])), || format!("Σ ℓ_{k} != p_1^{k}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("battery totals, 4 printed components, cyclic identities in {elapsed:.2?}"))
}

fn property_suites() -> Verdict {
    let cases = 250u64;
    for seed in 0..cases {
        let mut r = rng(seed);
        let shapes = random_shapes(&mut r, 2, 4);
        let n = shapes.max_rows() as u32 + 1 + (seed % 3) as u32;
        crystal_round_trip(&random_tensor(&mut r, &shapes, n))?;
    }
    for seed in 0..cases {
        let mut r = rng(1_000 + seed);
        let shape = random_partition(&mut r, 1 + (seed as usize % 8));
        let start = random_ssyt(&mut r, &shape, shape.len() as u32 + (seed % 3) as u32);
        knuth_invariance(&mut r, &start, 1 + (seed as usize % 4))?;
    }
    for seed in 0..cases {
        let mut r = rng(2_000 + seed);
        let word = random_word(&mut r, seed as usize % 11, 5);
        greene_agreement(&word)?;
    }
    for seed in 0..cases {
        let mut r = rng(3_000 + seed);
        let lambda = random_partition(&mut r, seed as usize % 13);
        hook_length(&lambda)?;
        let shapes = RectSeq::new((0..2).map(|_| random_rect(&mut r, 3)).collect::<Vec<Rectangle>>()).unwrap();
        let count = krdeg::crystal::enumerate_zero_weight(&shapes).len() as u128;
        ensure(count == shapes.predicted_vertex_count(), || format!("{}: {count} zero-weight elements", shapes.canonical()))?;
    }
    Ok(format!("4 suites x {cases} cases"))
}

fn main() {
    let mut graphs: Vec<KRDegGraph> = Vec::new();
    let mut results: Vec<(usize, Verdict)> = Vec::new();
    let mut run = |n: usize, f: &mut dyn FnMut() -> Verdict| {
        let r = catch_unwind(AssertUnwindSafe(&mut *f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match &r {
            Ok(detail) => println!("criterion {n}: pass ({detail})"),
            Err(reason) => println!("criterion {n}: FAIL ({reason})"),
        }
        results.push((n, r));
    };
    run(1, &mut || vertex_counts(&mut graphs));
    run(2, &mut || component_structure(&graphs));
    run(3, &mut charge_values);
    run(4, &mut r_matrix_laws);
    run(5, &mut || edge_equivalence(&graphs));
    run(6, &mut || promotion_automorphism(&graphs));
    run(7, &mut || charge_laws(&graphs));
    run(8, &mut row_combing);
    run(9, &mut s_sequences);
    run(10, &mut || characters(&graphs));
    run(11, &mut property_suites);
    let failed: Vec<usize> = results.iter().filter(|(_, r)| r.is_err()).map(|(n, _)| *n).collect();
    if failed.is_empty() {
        println!("acceptance: all 11 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}

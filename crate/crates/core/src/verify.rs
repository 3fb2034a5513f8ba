//! Verification suites over built graphs, producing machine-readable reports.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::charge::{charge, semicharge};
use crate::crystal::{enumerate_zero_weight, RectSeq, TensorElement};
use crate::deg::{descent_set, KRDegGraph};
use crate::error::{Error, Result};
use crate::symfun::{component_character, conjectured_character, graph_character, rectangle_product};
use crate::tableaux::{Entry, Rectangle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ThmComponents,
    ThmCommutator,
    ThmCharacters,
    ConjPlethysm,
    PropsCharge,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::ThmComponents, Suite::ThmCommutator, Suite::ThmCharacters, Suite::ConjPlethysm, Suite::PropsCharge];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::ThmComponents => "thm-components",
            Suite::ThmCommutator => "thm-commutator",
            Suite::ThmCharacters => "thm-characters",
            Suite::ConjPlethysm => "conj-plethysm",
            Suite::PropsCharge => "props-charge",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(Suite::name).collect();
            Error::Parse(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), outcome: if ok { Outcome::Pass } else { Outcome::Fail }, detail: detail.into() }
    }

    fn skip(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), outcome: Outcome::Skip, detail: detail.into() }
    }

    /// Turns a list of counterexamples into a check, quoting the first few.
    fn from_failures(name: &str, total: usize, failures: Vec<String>) -> Self {
        if failures.is_empty() {
            return Check::new(name, true, format!("{total} cases"));
        }
        let shown: Vec<_> = failures.iter().take(3).cloned().collect();
        Check::new(name, false, format!("{} of {total} cases fail, e.g. {}", failures.len(), shown.join("; ")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub shapes: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} on {}: {}", self.suite, self.shapes, if self.passed { "pass" } else { "FAIL" })?;
        for c in &self.checks {
            let tag = match c.outcome {
                Outcome::Pass => "pass",
                Outcome::Fail => "FAIL",
                Outcome::Skip => "skip",
            };
            writeln!(f, "  [{tag}] {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Runs one suite on a built graph.
pub fn run_suite(suite: Suite, g: &KRDegGraph) -> Report {
    let checks = match suite {
        Suite::ThmComponents => components_checks(g),
        Suite::ThmCommutator => commutator_checks(g),
        Suite::ThmCharacters => character_checks(g),
        Suite::ConjPlethysm => plethysm_checks(g),
        Suite::PropsCharge => charge_checks(g),
    };
    Report {
        suite,
        shapes: g.shapes().canonical(),
        passed: checks.iter().all(|c| c.outcome != Outcome::Fail),
        checks,
    }
}

fn components_checks(g: &KRDegGraph) -> Vec<Check> {
    let d = g.shapes().d_r();
    let sizes: Vec<usize> = g.components().iter().map(Vec::len).collect();
    let mut checks = vec![Check::new(
        "component count equals d_R",
        sizes.len() == d,
        format!("{} components of sizes {sizes:?}, d_R = {d}", sizes.len()),
    )];
    checks.push(match g.components_by_charge() {
        Ok(map) => {
            let pairs: Vec<String> = map.iter().map(|(r, c)| format!("charge {r} mod {d} -> component {c}")).collect();
            Check::new("components are charge classes", true, pairs.join(", "))
        }
        Err(e) => Check::new("components are charge classes", false, e.to_string()),
    });
    checks
}

fn commutator_checks(g: &KRDegGraph) -> Vec<Check> {
    let n = g.n();
    let bad: Vec<String> = g
        .construction_mismatches()
        .iter()
        .map(|e| {
            let names: Vec<_> = e.labels.iter().map(|l| l.name(n)).collect();
            format!("{}-{} [{}]", e.u, e.v, names.join(","))
        })
        .collect();
    vec![
        Check::from_failures("commutator edges equal explicit edges", g.edges().len(), bad),
        promotion_automorphism_check(g),
    ]
}

/// Promotion maps vertices to vertices, rotates descent sets and preserves edges.
pub fn promotion_automorphism_check(g: &KRDegGraph) -> Check {
    let n = g.n();
    let mut failures = Vec::new();
    let mut image = Vec::with_capacity(g.vertices().len());
    for (i, v) in g.vertices().iter().enumerate() {
        let p = v.element.promote();
        match g.index_of(&p) {
            Some(j) => {
                if g.vertices()[j].descents != v.descents.rotate(n) {
                    failures.push(format!("vertex {i}: D(pr T) = {} but D(T) = {}", g.vertices()[j].descents, v.descents));
                }
                image.push(j);
            }
            None => {
                failures.push(format!("vertex {i}: pr(T) is not a vertex"));
                image.push(usize::MAX);
            }
        }
    }
    for e in g.edges() {
        let (a, b) = (image[e.u], image[e.v]);
        if a != usize::MAX && b != usize::MAX && g.edge_between(a, b).is_none() {
            failures.push(format!("edge {}-{} is not mapped to an edge", e.u, e.v));
        }
    }
    Check::from_failures("promotion is a graph automorphism", g.vertices().len() + g.edges().len(), failures)
}

fn character_checks(g: &KRDegGraph) -> Vec<Check> {
    let name = "fundamental sum equals the rectangle Schur product";
    let result = graph_character(g).and_then(|total| Ok((rectangle_product(g.shapes())?, total)));
    vec![match result {
        Ok((expected, total)) => Check::new(name, expected == total, format!("{total}")),
        Err(Error::Resource(m)) => Check::skip(name, m),
        Err(e) => Check::new(name, false, e.to_string()),
    }]
}

fn plethysm_checks(g: &KRDegGraph) -> Vec<Check> {
    let map = match g.components_by_charge() {
        Ok(m) => m,
        Err(e) => return vec![Check::new("components are charge classes", false, e.to_string())],
    };
    let d = g.shapes().d_r();
    map.into_iter()
        .map(|(residue, c)| {
            let name = format!("component {c} (charge {residue} mod {d}) is a cyclic plethysm");
            let pair = component_character(g, c).and_then(|got| Ok((conjectured_character(g.shapes(), residue)?, got)));
            match pair {
                Ok((want, got)) if want == got => Check::new(name, true, got.to_string()),
                Ok((want, got)) => Check::new(name, false, format!("counterexample: component is {got}, predicted {want}")),
                Err(Error::Resource(m)) => Check::skip(name, m),
                Err(e) => Check::new(name, false, e.to_string()),
            }
        })
        .collect()
}

fn modulo(x: i64, d: usize) -> i64 {
    x.rem_euclid(d as i64)
}

/// Index of the single factor in which `a` and `b` differ.
fn changed_factor(a: &TensorElement, b: &TensorElement) -> Option<usize> {
    let diff: Vec<usize> = (0..a.num_factors()).filter(|&f| a.factor(f) != b.factor(f)).collect();
    (diff.len() == 1).then(|| diff[0])
}

fn charge_checks(g: &KRDegGraph) -> Vec<Check> {
    let shapes = g.shapes();
    let d = shapes.d_r();
    let n = g.n();
    let mut checks = Vec::new();

    let mut bad = Vec::new();
    for (i, v) in g.vertices().iter().enumerate() {
        if let Ok(Some(w)) = v.element.f(1) {
            match charge(&w) {
                Ok(c) if c == v.charge => {}
                Ok(c) => bad.push(format!("vertex {i}: charge {} becomes {c} under f_1", v.charge)),
                Err(e) => bad.push(e.to_string()),
            }
        }
    }
    checks.push(Check::from_failures("classical operators keep charge", g.vertices().len(), bad));

    if !shapes.is_grouped() {
        checks.push(Check::skip("semicharge laws", "equal shapes are not contiguous"));
        return checks;
    }
    let sc: Vec<i64> = g.vertices().iter().map(|v| semicharge(&v.element) as i64).collect();

    let bad = g
        .vertices()
        .iter()
        .enumerate()
        .filter(|(i, v)| modulo(v.charge as i64 - sc[*i], d) != 0)
        .map(|(i, v)| format!("vertex {i}: charge {} semicharge {}", v.charge, sc[i]))
        .collect();
    checks.push(Check::from_failures("charge agrees with semicharge mod d_R", sc.len(), bad));

    let bad = g
        .edges()
        .iter()
        .filter(|e| modulo(sc[e.u] - sc[e.v], d) != 0)
        .map(|e| format!("edge {}-{}", e.u, e.v))
        .collect();
    checks.push(Check::from_failures("semicharge is constant mod d_R on edges", g.edges().len(), bad));

    let bad = g
        .vertices()
        .iter()
        .enumerate()
        .filter_map(|(i, v)| {
            let j = g.index_of(&v.element.promote())?;
            (modulo(sc[j] - sc[i] + 1, d) != 0).then(|| format!("vertex {i}: {} -> {}", sc[i], sc[j]))
        })
        .collect();
    checks.push(Check::from_failures("promotion lowers semicharge by 1 mod d_R", sc.len(), bad));

    let mut bad = Vec::new();
    let mut total = 0;
    for (i, v) in g.vertices().iter().enumerate() {
        for (raise, step) in [(true, 1i64), (false, -1)] {
            let moved = if raise { v.element.e(n) } else { v.element.f(n) };
            if let Ok(Some(w)) = moved {
                total += 1;
                let s = semicharge(&w) as i64;
                if modulo(s - sc[i] - step, d) != 0 {
                    let op = if raise { "e" } else { "f" };
                    bad.push(format!("vertex {i}: {op}_{n} takes semicharge {} to {s}", sc[i]));
                }
            }
        }
    }
    checks.push(Check::from_failures("affine operators shift semicharge by 1 mod d_R", total, bad));

    if shapes.len() == 2 && shapes.rects()[0] == shapes.rects()[1] {
        let elems: Vec<TensorElement> = g.vertices().iter().map(|v| v.element.clone()).collect();
        checks.extend(two_factor_checks(&elems));
    }
    checks
}

/// The exact charge laws on two equal rectangles: `e_n` on the left factor
/// raises charge by one and on the right lowers it (the reverse for `f_n`),
/// and promotion changes semicharge by -1, +1 or 0 according to which factor
/// holds `n`.
pub fn two_factor_checks(elements: &[TensorElement]) -> Vec<Check> {
    let mut bad_ops = Vec::new();
    let mut bad_pr = Vec::new();
    let mut ops = 0;
    for t in elements {
        let n = t.n();
        let c = match charge(t) {
            Ok(c) => c as i64,
            Err(e) => {
                bad_ops.push(e.to_string());
                continue;
            }
        };
        for (raise, sign) in [(true, 1i64), (false, -1)] {
            let moved = if raise { t.e(n) } else { t.f(n) };
            let Ok(Some(w)) = moved else { continue };
            ops += 1;
            let expected = match changed_factor(t, &w) {
                Some(0) => c + sign,
                Some(_) => c - sign,
                None => {
                    bad_ops.push(format!("{t}: affine operator changed more than one factor"));
                    continue;
                }
            };
            match charge(&w) {
                Ok(got) if got as i64 == expected => {}
                Ok(got) => bad_ops.push(format!("{t}: charge {c} -> {got}, expected {expected}")),
                Err(e) => bad_ops.push(e.to_string()),
            }
        }
        let count_n = t.word().iter().filter(|&&x| x == n).count();
        if count_n <= 1 && t.word().iter().all(|&x| t.word().iter().filter(|&&y| y == x).count() == 1) {
            let holder = t.factor(0).entries().any(|x| x == n);
            let delta = semicharge(&t.promote()) as i64 - semicharge(t) as i64;
            let expected = match (count_n, holder) {
                (0, _) => 0,
                (_, true) => -1,
                (_, false) => 1,
            };
            if delta != expected {
                bad_pr.push(format!("{t}: promotion changes semicharge by {delta}, expected {expected}"));
            }
        }
    }
    vec![
        Check::from_failures("two-factor affine charge law", ops, bad_ops),
        Check::from_failures("two-factor promotion semicharge law", elements.len(), bad_pr),
    ]
}

/// Every pair of equal rectangles with at most `max_cells` cells in total.
pub fn equal_pair_shapes(max_cells: usize) -> Vec<RectSeq> {
    let mut out = Vec::new();
    for rows in 1..=max_cells / 2 {
        for cols in 1..=max_cells / (2 * rows) {
            let r = Rectangle::new(rows, cols).expect("positive dimensions");
            out.push(RectSeq::new(vec![r, r]).expect("nonempty"));
        }
    }
    out
}

/// Runs the two-factor laws on every 0-weight element of every equal pair
/// with at most `max_cells` cells.
pub fn exhaustive_two_factor_checks(max_cells: usize) -> Vec<Check> {
    equal_pair_shapes(max_cells)
        .into_iter()
        .flat_map(|shapes| {
            let elements = enumerate_zero_weight(&shapes);
            two_factor_checks(&elements).into_iter().map(move |mut c| {
                c.name = format!("{} on {}", c.name, shapes.canonical());
                c
            })
        })
        .collect()
}

/// Descent set of `pr(T)` is the rotation of the descent set of `T`.
pub fn descent_rotation_holds(t: &TensorElement) -> Result<bool> {
    let n: Entry = t.n();
    Ok(descent_set(&t.promote())? == descent_set(t)?.rotate(n))
}

//! Symmetric functions over the rationals in the power sum, Schur and
//! monomial bases, fundamental quasisymmetric functions, and the characters of
//! graph components.
//!
//! Power sums are the working basis: products and plethysm are computed there,
//! and Schur coefficients are reached through symmetric group characters
//! (Murnaghan-Nakayama rule) or Kostka numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::crystal::RectSeq;
use crate::deg::{DescentSet, KRDegGraph};
use crate::error::{Error, Result};
use crate::tableaux::Partition;

/// Largest degree accepted by basis conversions involving Schur or monomial functions.
pub const MAX_DEGREE: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "p")]
    PowerSum,
    #[serde(rename = "s")]
    Schur,
    #[serde(rename = "m")]
    Monomial,
}

impl Basis {
    pub fn symbol(&self) -> &'static str {
        match self {
            Basis::PowerSum => "p",
            Basis::Schur => "s",
            Basis::Monomial => "m",
        }
    }
}

type Terms = BTreeMap<Partition, BigRational>;

/// A homogeneous symmetric function of a fixed degree in one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    degree: usize,
    terms: Terms,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn add_term(terms: &mut Terms, key: Partition, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let slot = terms.entry(key.clone()).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        terms.remove(&key);
    }
}

impl SymFunc {
    pub fn zero(basis: Basis, degree: usize) -> Self {
        SymFunc { basis, degree, terms: Terms::new() }
    }

    /// The constant function 1 (degree 0).
    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, Partition::empty())
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> Self {
        let degree = lambda.size();
        let mut terms = Terms::new();
        terms.insert(lambda, BigRational::one());
        SymFunc { basis, degree, terms }
    }

    pub fn schur(lambda: Partition) -> Self {
        Self::basis_element(Basis::Schur, lambda)
    }

    pub fn powersum(mu: Partition) -> Self {
        Self::basis_element(Basis::PowerSum, mu)
    }

    pub fn monomial(mu: Partition) -> Self {
        Self::basis_element(Basis::Monomial, mu)
    }

    /// Builds a function from `(partition, coefficient)` pairs, all of size `degree`.
    pub fn from_terms(
        basis: Basis,
        degree: usize,
        terms: impl IntoIterator<Item = (Partition, BigRational)>,
    ) -> Result<Self> {
        let mut out = SymFunc::zero(basis, degree);
        for (lambda, c) in terms {
            if lambda.size() != degree {
                return Err(Error::Domain(format!("{lambda} has size {} but the degree is {degree}", lambda.size())));
            }
            add_term(&mut out.terms, lambda, c);
        }
        Ok(out)
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(basis: Basis, degree: usize, terms: &[(&[usize], i64)]) -> Result<Self> {
        let items = terms
            .iter()
            .map(|(p, c)| Ok((Partition::new(p.to_vec())?, rat(*c))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(basis, degree, items)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lambda: &Partition) -> BigRational {
        self.terms.get(lambda).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> SymFunc {
        let mut out = SymFunc::zero(self.basis, self.degree);
        for (k, v) in &self.terms {
            add_term(&mut out.terms, k.clone(), v * c);
        }
        out
    }

    /// Sum, expressed in the basis of `self`.
    pub fn add(&self, other: &SymFunc) -> Result<SymFunc> {
        if self.degree != other.degree && !(self.is_zero() || other.is_zero()) {
            return Err(Error::Domain(format!(
                "cannot add functions of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let other = other.convert(self.basis)?;
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (k, v) in other.terms {
            add_term(&mut out.terms, k, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymFunc) -> Result<SymFunc> {
        self.add(&other.scale(&rat(-1)))
    }

    /// Equality as symmetric functions, regardless of basis.
    pub fn equals(&self, other: &SymFunc) -> Result<bool> {
        if self.is_zero() && other.is_zero() {
            return Ok(true);
        }
        Ok(self.degree == other.degree && *self == other.convert(self.basis)?)
    }

    /// Exact change of basis.
    pub fn convert(&self, target: Basis) -> Result<SymFunc> {
        if target == self.basis {
            return Ok(self.clone());
        }
        if self.degree > MAX_DEGREE {
            return Err(Error::Resource(format!(
                "basis conversion in degree {} exceeds the limit of {MAX_DEGREE}",
                self.degree
            )));
        }
        let n = self.degree;
        let mut out = SymFunc::zero(target, n);
        match (self.basis, target) {
            (Basis::PowerSum, Basis::Schur) => {
                for (mu, c) in &self.terms {
                    for lambda in Partition::all(n) {
                        let chi = character(&lambda, mu);
                        if chi != 0 {
                            add_term(&mut out.terms, lambda, c * rat(chi));
                        }
                    }
                }
            }
            (Basis::Schur, Basis::PowerSum) => {
                for (lambda, c) in &self.terms {
                    for mu in Partition::all(n) {
                        let chi = character(lambda, &mu);
                        if chi != 0 {
                            let z = BigRational::from_integer(z_factor(&mu));
                            add_term(&mut out.terms, mu, c * rat(chi) / z);
                        }
                    }
                }
            }
            (Basis::Schur, Basis::Monomial) => {
                for (lambda, c) in &self.terms {
                    for mu in Partition::all(n) {
                        let k = kostka(lambda, &mu);
                        if k != 0 {
                            add_term(&mut out.terms, mu, c * rat(k as i64));
                        }
                    }
                }
            }
            (Basis::Monomial, Basis::Schur) => {
                // Kostka matrix is unitriangular for lexicographic order
                let mut rest = self.terms.clone();
                for lambda in Partition::all(n) {
                    let Some(c) = rest.get(&lambda).cloned() else { continue };
                    for mu in Partition::all(n) {
                        let k = kostka(&lambda, &mu);
                        if k != 0 {
                            add_term(&mut rest, mu, -(&c * rat(k as i64)));
                        }
                    }
                    add_term(&mut out.terms, lambda, c);
                }
                debug_assert!(rest.is_empty());
            }
            (from, to) => return self.convert(Basis::Schur)?.convert(to).map_err(|e| match e {
                Error::Resource(_) => e,
                other => Error::Verification(format!("{from:?} -> {to:?}: {other}")),
            }),
        }
        Ok(out)
    }

    fn powersum_terms(&self) -> Result<Terms> {
        Ok(self.convert(Basis::PowerSum)?.terms)
    }

    /// Product, expressed in the basis of `self`.
    pub fn multiply(&self, other: &SymFunc) -> Result<SymFunc> {
        let terms = p_mul(&self.powersum_terms()?, &other.powersum_terms()?);
        SymFunc { basis: Basis::PowerSum, degree: self.degree + other.degree, terms }.convert(self.basis)
    }

    pub fn pow(&self, e: usize) -> Result<SymFunc> {
        let terms = p_pow(&self.powersum_terms()?, e);
        SymFunc { basis: Basis::PowerSum, degree: self.degree * e, terms }.convert(self.basis)
    }

    /// The plethysm `self[inner]`, expressed in the basis of `inner`.
    pub fn plethysm(&self, inner: &SymFunc) -> Result<SymFunc> {
        let outer = self.powersum_terms()?;
        let f = inner.powersum_terms()?;
        let mut cache: HashMap<usize, Terms> = HashMap::new();
        let mut terms = Terms::new();
        for (nu, c) in &outer {
            let mut prod = p_one();
            for &d in nu.parts() {
                let pd = cache.entry(d).or_insert_with(|| p_adams(d, &f));
                prod = p_mul(&prod, pd);
            }
            for (k, v) in prod {
                add_term(&mut terms, k, v * c);
            }
        }
        SymFunc { basis: Basis::PowerSum, degree: self.degree * inner.degree, terms }.convert(inner.basis)
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_terms(&self) -> Option<Vec<(Partition, i64)>> {
        self.terms
            .iter()
            .map(|(k, v)| v.is_integer().then(|| v.to_integer().to_i64()).flatten().map(|c| (k.clone(), c)))
            .collect()
    }
}

fn bracket(lambda: &Partition) -> String {
    let parts: Vec<String> = lambda.parts().iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// `s[6,2] + 2*s[5,2,1] - 1/2*s[4,4]`, largest partitions first.
impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (lambda, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}{}", self.basis.symbol(), bracket(lambda))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SymFuncJson {
    basis: Basis,
    degree: usize,
    terms: BTreeMap<String, serde_json::Value>,
}

impl Serialize for SymFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| {
                let value = match v.is_integer().then(|| v.to_integer().to_i64()).flatten() {
                    Some(i) => serde_json::Value::from(i),
                    None => serde_json::Value::from(v.to_string()),
                };
                (bracket(k), value)
            })
            .collect();
        SymFuncJson { basis: self.basis, degree: self.degree, terms }.serialize(s)
    }
}

fn parse_bracket(key: &str) -> Result<Partition> {
    let inner = key
        .trim()
        .strip_prefix('[')
        .and_then(|k| k.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("partition key {key:?} must look like [3,1]")))?;
    let parts = inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad part {t:?} in {key:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

fn parse_coefficient(v: &serde_json::Value) -> Result<BigRational> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| Error::Parse(format!("coefficient {n} is not an integer; write fractions as strings"))),
        serde_json::Value::String(s) => s.parse::<BigRational>().map_err(|_| Error::Parse(format!("bad coefficient {s:?}"))),
        other => Err(Error::Parse(format!("bad coefficient {other}"))),
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SymFuncJson::deserialize(d)?;
        let terms = raw
            .terms
            .iter()
            .map(|(k, v)| Ok((parse_bracket(k)?, parse_coefficient(v)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        SymFunc::from_terms(raw.basis, raw.degree, terms).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Power sum arithmetic

fn p_one() -> Terms {
    let mut t = Terms::new();
    t.insert(Partition::empty(), BigRational::one());
    t
}

fn p_mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (x, cx) in a {
        for (y, cy) in b {
            let mut parts = x.parts().to_vec();
            parts.extend_from_slice(y.parts());
            add_term(&mut out, Partition::from_unsorted(parts), cx * cy);
        }
    }
    out
}

fn p_pow(a: &Terms, e: usize) -> Terms {
    (0..e).fold(p_one(), |acc, _| p_mul(&acc, a))
}

/// `p_d[f]`: every `p_m` becomes `p_{dm}`.
fn p_adams(d: usize, f: &Terms) -> Terms {
    f.iter()
        .map(|(mu, c)| (Partition::from_unsorted(mu.parts().iter().map(|&m| m * d).collect()), c.clone()))
        .collect()
}

/// `z_μ = Π i^{m_i} m_i!`.
pub fn z_factor(mu: &Partition) -> BigInt {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in mu.parts() {
        *counts.entry(p).or_default() += 1;
    }
    let mut z = BigInt::one();
    for (i, m) in counts {
        for k in 1..=m {
            z *= BigInt::from(i) * BigInt::from(k);
        }
    }
    z
}

// ---------------------------------------------------------------------------
// Characters and Kostka numbers

type PairCache = RwLock<HashMap<(Partition, Partition), i64>>;

fn character_cache() -> &'static PairCache {
    static CACHE: OnceLock<PairCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn kostka_cache() -> &'static PairCache {
    static CACHE: OnceLock<PairCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Removes every rim hook of length `h`, returning `(λ minus hook, (-1)^height)`.
fn remove_rim_hooks(lambda: &Partition, h: usize) -> Vec<(Partition, i64)> {
    let l = lambda.len();
    let beta: Vec<usize> = (0..l).map(|j| lambda.part(j) + l - 1 - j).collect();
    let mut out = Vec::new();
    for (j, &b) in beta.iter().enumerate() {
        if b < h || beta.contains(&(b - h)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > b - h && x < b).count();
        let mut nb = beta.clone();
        nb[j] = b - h;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts = nb.iter().enumerate().map(|(i, &x)| x - (l - 1 - i)).collect();
        out.push((Partition::from_unsorted(parts), if jumped % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// The irreducible character `χ^λ` of `S_n` at the class of cycle type `μ`.
pub fn character(lambda: &Partition, mu: &Partition) -> i64 {
    if lambda.size() != mu.size() {
        return 0;
    }
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(&v) = character_cache().read().unwrap().get(&key) {
        return v;
    }
    let rest = Partition::from_unsorted(mu.parts()[1..].to_vec());
    let v = remove_rim_hooks(lambda, mu.parts()[0])
        .into_iter()
        .map(|(nu, sign)| sign * character(&nu, &rest))
        .sum();
    character_cache().write().unwrap().insert(key, v);
    v
}

/// Number of semistandard tableaux of shape `λ` and content `μ`.
pub fn kostka(lambda: &Partition, mu: &Partition) -> u64 {
    if lambda.size() != mu.size() {
        return 0;
    }
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(&v) = kostka_cache().read().unwrap().get(&key) {
        return v as u64;
    }
    let k = *mu.parts().last().unwrap();
    let rest = Partition::from_unsorted(mu.parts()[..mu.len() - 1].to_vec());
    // remove a horizontal strip of size k: row j shrinks to somewhere in [λ_{j+1}, λ_j]
    fn strips(lambda: &Partition, j: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if j == lambda.len() {
            if left == 0 {
                out.push(Partition::from_unsorted(cur.clone()));
            }
            return;
        }
        let (hi, lo) = (lambda.part(j), lambda.part(j + 1));
        for keep in (lo..=hi).rev() {
            let take = hi - keep;
            if take > left {
                break;
            }
            cur.push(keep);
            strips(lambda, j + 1, left - take, cur, out);
            cur.pop();
        }
    }
    let mut nus = Vec::new();
    strips(lambda, 0, k, &mut Vec::new(), &mut nus);
    let v: u64 = nus.iter().map(|nu| kostka(nu, &rest)).sum();
    kostka_cache().write().unwrap().insert(key, v as i64);
    v
}

// ---------------------------------------------------------------------------
// Cyclic characters

fn totient(n: usize) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

fn mobius(mut n: usize) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Ramanujan's sum `c_d(i) = μ(d/g) φ(d) / φ(d/g)` with `g = gcd(i, d)`.
pub fn ramanujan_sum(i: usize, d: usize) -> i64 {
    let g = i.gcd(&d);
    let q = d / g;
    mobius(q) * (totient(d) / totient(q)) as i64
}

/// `ℓ_k^{(i)} = (1/k) Σ_{d | k} c_d(i) p_d^{k/d}`, the Frobenius image of the
/// character of `S_k` induced from the cyclic character `i` of `C_k`.
/// The residue `i` is read mod `k`.
pub fn cyclic_character(k: usize, i: usize) -> Result<SymFunc> {
    if k == 0 {
        return Err(Error::Domain("cyclic characters need k >= 1".into()));
    }
    let i = i % k;
    let mut out = SymFunc::zero(Basis::PowerSum, k);
    for d in (1..=k).filter(|d| k.is_multiple_of(*d)) {
        let c = ramanujan_sum(i, d);
        if c != 0 {
            let mu = Partition::from_unsorted(vec![d; k / d]);
            add_term(&mut out.terms, mu, BigRational::new(BigInt::from(c), BigInt::from(k)));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Quasisymmetric functions

/// An integer combination of fundamental quasisymmetric functions `F_A`, `A ⊆ [n-1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QSymFunc {
    n: usize,
    terms: BTreeMap<DescentSet, i64>,
}

impl QSymFunc {
    pub fn zero(n: usize) -> Self {
        QSymFunc { n, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<DescentSet, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: &DescentSet) -> i64 {
        self.terms.get(a).copied().unwrap_or(0)
    }

    /// Adds `c · F_A`; members of `A` outside `[n-1]` are an error.
    pub fn add_term(&mut self, a: DescentSet, c: i64) -> Result<()> {
        if a.members().iter().any(|&i| i as usize >= self.n) {
            return Err(Error::Domain(format!("F_{a} is not indexed by a subset of [{}]", self.n.saturating_sub(1))));
        }
        let slot = self.terms.entry(a).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&a);
        }
        Ok(())
    }

    /// `Σ_{T ∈ SYT(λ)} F_{Des(T)}`, which equals `s_λ`.
    pub fn schur(lambda: &Partition) -> QSymFunc {
        let mut q = QSymFunc::zero(lambda.size());
        for &(mask, count) in descent_distribution(lambda).iter() {
            q.terms.insert(DescentSet::from_members(mask_members(mask)), count as i64);
        }
        q
    }

    /// Monomial expansion of a symmetric `q`: the coefficient of `m_μ` is
    /// `Σ_{A ⊆ S(μ)} q_A` where `S(μ)` is the set of partial sums of `μ`.
    pub fn monomial_expansion(&self) -> SymFunc {
        let mut out = SymFunc::zero(Basis::Monomial, self.n);
        for mu in Partition::all(self.n) {
            let s = partial_sums(&mu);
            let c: i64 = self.terms.iter().filter(|(a, _)| a.is_subset(&s)).map(|(_, &c)| c).sum();
            add_term(&mut out.terms, mu, rat(c));
        }
        out
    }
}

fn mask_members(mask: u64) -> impl Iterator<Item = u32> {
    (0..64).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
}

/// `{λ_1, λ_1+λ_2, ...}` without the final total.
fn partial_sums(lambda: &Partition) -> DescentSet {
    let mut acc = 0;
    let mut d = DescentSet::empty();
    for &p in &lambda.parts()[..lambda.len().saturating_sub(1)] {
        acc += p;
        d.insert(acc as u32);
    }
    d
}

type Distribution = Arc<Vec<(u64, u64)>>;

/// Counts of standard tableaux of shape `λ` by descent set (`i` is a descent
/// when `i+1` lies in a lower row than `i`).
fn descent_distribution(lambda: &Partition) -> Distribution {
    static CACHE: OnceLock<RwLock<HashMap<Partition, Distribution>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.read().unwrap().get(lambda) {
        return d.clone();
    }
    let rows = lambda.len();
    let mut states: HashMap<(Vec<usize>, usize), HashMap<u64, u64>> = HashMap::new();
    states.insert((vec![0; rows], usize::MAX), HashMap::from([(0, 1)]));
    for k in 1..=lambda.size() {
        let mut next: HashMap<(Vec<usize>, usize), HashMap<u64, u64>> = HashMap::new();
        for ((shape, last), masks) in states {
            for r in 0..rows {
                if shape[r] >= lambda.part(r) || (r > 0 && shape[r - 1] <= shape[r]) {
                    continue;
                }
                let mut s = shape.clone();
                s[r] += 1;
                let bit = if k >= 2 && r > last { 1u64 << (k - 2) } else { 0 };
                let slot = next.entry((s, r)).or_default();
                for (&m, &c) in &masks {
                    *slot.entry(m | bit).or_default() += c;
                }
            }
        }
        states = next;
    }
    let mut total: BTreeMap<u64, u64> = BTreeMap::new();
    for masks in states.into_values() {
        for (m, c) in masks {
            *total.entry(m).or_default() += c;
        }
    }
    let d: Distribution = Arc::new(total.into_iter().collect());
    cache.write().unwrap().insert(lambda.clone(), d.clone());
    d
}

impl fmt::Display for QSymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (a, &c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "F{a}")?;
        }
        Ok(())
    }
}

/// `Σ F_{D \ {n}}` over the given descent sets of vertices on `[n]`.
pub fn fundamental_sum<'a>(n: usize, descents: impl IntoIterator<Item = &'a DescentSet>) -> Result<QSymFunc> {
    let mut q = QSymFunc::zero(n);
    for d in descents {
        q.add_term(d.without(n as u32), 1)?;
    }
    Ok(q)
}

/// Schur expansion of a symmetric `q` by peeling off `s_λ` for `λ` in
/// decreasing lexicographic order, reading the coefficient of `F_{S(λ)}`.
pub fn f_to_schur(q: &QSymFunc) -> Result<SymFunc> {
    let n = q.n;
    if n > MAX_DEGREE {
        return Err(Error::Resource(format!("degree {n} exceeds the limit of {MAX_DEGREE}")));
    }
    let mut rest = q.terms.clone();
    let mut out = SymFunc::zero(Basis::Schur, n);
    for lambda in Partition::all(n) {
        let c = rest.get(&partial_sums(&lambda)).copied().unwrap_or(0);
        if c == 0 {
            continue;
        }
        if c < 0 {
            return Err(Error::NotSymmetric(format!("negative coefficient {c} for s{}", bracket(&lambda))));
        }
        for &(mask, count) in descent_distribution(&lambda).iter() {
            let key = DescentSet::from_members(mask_members(mask));
            let slot = rest.entry(key).or_insert(0);
            *slot -= c * count as i64;
            if *slot == 0 {
                rest.remove(&key);
            }
        }
        add_term(&mut out.terms, lambda, rat(c));
    }
    if !rest.is_empty() {
        let left = QSymFunc { n, terms: rest };
        return Err(Error::NotSymmetric(format!("remainder {left} after Schur peeling")));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Graph characters

/// Schur expansion of the fundamental sum over one component.
pub fn component_character(g: &KRDegGraph, component: usize) -> Result<SymFunc> {
    let comp = g
        .components()
        .get(component)
        .ok_or_else(|| Error::Domain(format!("component {component} does not exist")))?;
    let q = fundamental_sum(g.n() as usize, comp.iter().map(|&v| &g.vertices()[v].descents))?;
    f_to_schur(&q)
}

/// Schur expansion of the fundamental sum over the whole graph.
pub fn graph_character(g: &KRDegGraph) -> Result<SymFunc> {
    let q = fundamental_sum(g.n() as usize, g.vertices().iter().map(|v| &v.descents))?;
    f_to_schur(&q)
}

/// `s_{R_1} ⋯ s_{R_k}` in the Schur basis.
pub fn rectangle_product(shapes: &RectSeq) -> Result<SymFunc> {
    shapes
        .rects()
        .iter()
        .try_fold(SymFunc::one(Basis::Schur), |acc, r| acc.multiply(&SymFunc::schur(r.partition())))
}

/// `ℓ_{d_R}^{(i)}[Π_j s_{R_j}^{m_j / d_R}]` in the Schur basis: the predicted
/// character of the component whose charges are `i` mod `d_R`.
pub fn conjectured_character(shapes: &RectSeq, residue: usize) -> Result<SymFunc> {
    let d = shapes.d_r();
    let mut inner = SymFunc::one(Basis::PowerSum);
    for (rect, m) in shapes.multiplicities() {
        inner = inner.multiply(&SymFunc::schur(rect.partition()).pow(m / d)?)?;
    }
    cyclic_character(d, residue)?.plethysm(&inner.convert(Basis::Schur)?)
}

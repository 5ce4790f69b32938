//! The polynomial model of the annulus skein algebra, generated by the closed
//! symmetrizers h̃_n: power sums by Newton recurrence, type-B Schur elements
//! as determinants, conversion into the Schur basis by an exact linear solve,
//! Newell-Littlewood structure constants, Chebyshev polynomials, and the η
//! map onto the single-curve Kauffman-bracket annulus.
//!
//! Indexing convention throughout: a partition λ names the monomial
//! h̃_{λ₁}···h̃_{λ_r}, with h̃₀ = 1 and h̃_m = 0 for negative m.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::{partitions_up_to, Partition};
use crate::ring::{Rat, RingElem};

// ---- Polynomials in the h̃ generators ----

/// An element of the h̃-polynomial algebra: finite sum of h̃-monomials with
/// nonzero field coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HPolynomial {
    terms: BTreeMap<Partition, RingElem>,
}

impl HPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RingElem::one())
    }

    pub fn constant(c: RingElem) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Partition::empty(), c);
        }
        Self { terms }
    }

    /// The generator h̃_n, honoring h̃₀ = 1 and h̃_m = 0 for m < 0.
    pub fn h(n: i64) -> Self {
        if n < 0 {
            Self::zero()
        } else if n == 0 {
            Self::one()
        } else {
            Self::monomial(Partition::new(vec![n]), RingElem::one())
        }
    }

    pub fn monomial(lambda: Partition, c: RingElem) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(lambda, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &RingElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> RingElem {
        self.terms.get(lambda).cloned().unwrap_or_else(RingElem::zero)
    }

    /// Largest monomial size present.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|l| l.size()).max().unwrap_or(0)
    }

    fn insert_add(&mut self, lambda: Partition, c: RingElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.insert_add(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (l1, c1) in &self.terms {
            for (l2, c2) in &other.terms {
                out.insert_add(l1.merge(l2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(l, k)| (l.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "basis": "h",
            "terms": term_list_json(&self.terms),
        })
    }
}

fn term_list_json(terms: &BTreeMap<Partition, RingElem>) -> serde_json::Value {
    serde_json::Value::Array(
        terms
            .iter()
            .rev()
            .map(|(l, c)| serde_json::json!([l.to_json(), c.to_json()]))
            .collect(),
    )
}

fn format_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<Partition, RingElem>,
    symbol: &str,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (l, c)) in terms.iter().rev().enumerate() {
        let body = format!("{symbol}{l}");
        write_term(f, i, c, Some(&body))?;
    }
    Ok(())
}

/// Shared "± coefficient*body" formatting for basis expansions. A `None`
/// body prints the bare coefficient.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    position: usize,
    c: &RingElem,
    body: Option<&str>,
) -> fmt::Result {
    let (sign, magnitude) = coefficient_pieces(c);
    if position == 0 {
        if sign < 0 {
            write!(f, "-")?;
        }
    } else if sign < 0 {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    match body {
        None => write!(f, "{magnitude}"),
        Some(body) => {
            if magnitude == "1" {
                write!(f, "{body}")
            } else {
                write!(f, "{magnitude}*{body}")
            }
        }
    }
}

/// Split a coefficient into a display sign and a magnitude string;
/// multi-term coefficients are parenthesized, with an overall sign factored
/// out when their leading term is negative.
fn coefficient_pieces(c: &RingElem) -> (i32, String) {
    if let Some(r) = c.as_rat() {
        if r.is_negative() {
            return (-1, format!("{}", -r));
        }
        return (1, format!("{r}"));
    }
    if c.den().is_one() && c.num().num_terms() == 1 {
        let rendered = format!("{c}");
        if let Some(stripped) = rendered.strip_prefix('-') {
            return (-1, stripped.to_string());
        }
        return (1, rendered);
    }
    let leading_negative = c
        .num()
        .iter()
        .last()
        .map(|(_, r)| r.is_negative())
        .unwrap_or(false);
    if leading_negative {
        (-1, format!("({})", c.neg()))
    } else {
        (1, format!("({c})"))
    }
}

impl fmt::Display for HPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.terms, "h")
    }
}

// ---- Schur-basis combinations ----

/// A finite combination of the type-B Schur elements S_λ.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SCombination {
    terms: BTreeMap<Partition, RingElem>,
}

impl SCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::monomial(Partition::empty(), RingElem::one())
    }

    pub fn monomial(lambda: Partition, c: RingElem) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(lambda, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &RingElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> RingElem {
        self.terms.get(lambda).cloned().unwrap_or_else(RingElem::zero)
    }

    pub fn insert_add(&mut self, lambda: Partition, c: RingElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.insert_add(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.insert_add(l.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(l, k)| (l.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Expand back into the h̃ generators.
    pub fn to_h(&self) -> HPolynomial {
        let mut out = HPolynomial::zero();
        for (l, c) in &self.terms {
            out = out.add(&schur_type_b(l).scale(c));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "basis": "S",
            "terms": term_list_json(&self.terms),
        })
    }
}

impl fmt::Display for SCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.terms, "S")
    }
}

// ---- Newton power sums ----

static POWER_SUM_CACHE: Mutex<Option<HashMap<i64, HPolynomial>>> = Mutex::new(None);

/// The power-sum element P̃_k, defined by the logarithmic generating
/// function and computed through the Newton recurrence
/// n·h̃_n = Σ_{j=1..n} P̃_j·h̃_{n−j}. The same expansion serves both the
/// Dubrovnik and HOMFLYPT theories in their respective generators.
pub fn newton_power_sum(k: i64) -> HPolynomial {
    assert!(k >= 1, "power sums are indexed by positive integers");
    {
        let guard = POWER_SUM_CACHE.lock().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(hit) = map.get(&k) {
                return hit.clone();
            }
        }
    }
    let mut known: Vec<HPolynomial> = Vec::new();
    for n in 1..=k {
        let mut p = HPolynomial::h(n).scale(&RingElem::from_int(n));
        for j in 1..n {
            p = p.sub(&known[(j - 1) as usize].mul(&HPolynomial::h(n - j)));
        }
        known.push(p);
    }
    let result = known.pop().expect("k >= 1");
    let mut guard = POWER_SUM_CACHE.lock().unwrap();
    let map = guard.get_or_insert_with(HashMap::new);
    for (i, p) in known.into_iter().enumerate() {
        map.entry(i as i64 + 1).or_insert(p);
    }
    map.insert(k, result.clone());
    result
}

// ---- Type-B Schur elements ----

static SCHUR_CACHE: Mutex<Option<HashMap<Partition, HPolynomial>>> = Mutex::new(None);

/// S_λ as a determinant in the h̃ generators: row i has first-column entry
/// h̃_{λ_i−i} and later entries h̃_{λ_i−i+j} + h̃_{λ_i−i−j}.
pub fn schur_type_b(lambda: &Partition) -> HPolynomial {
    {
        let guard = SCHUR_CACHE.lock().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(hit) = map.get(lambda) {
                return hit.clone();
            }
        }
    }
    let r = lambda.len();
    let result = if r == 0 {
        HPolynomial::one()
    } else {
        let entry = |i: usize, j: usize| -> HPolynomial {
            let base = lambda.row(i) - i as i64;
            if j == 0 {
                HPolynomial::h(base)
            } else {
                HPolynomial::h(base + j as i64).add(&HPolynomial::h(base - j as i64))
            }
        };
        determinant(r, &entry)
    };
    let mut guard = SCHUR_CACHE.lock().unwrap();
    guard
        .get_or_insert_with(HashMap::new)
        .insert(lambda.clone(), result.clone());
    result
}

/// Determinant by first-column Laplace expansion, memoized on the surviving
/// row set so each of the 2^r minors is computed once.
fn determinant(r: usize, entry: &dyn Fn(usize, usize) -> HPolynomial) -> HPolynomial {
    fn minor(
        rows: u32,
        col: usize,
        r: usize,
        entry: &dyn Fn(usize, usize) -> HPolynomial,
        memo: &mut HashMap<u32, HPolynomial>,
    ) -> HPolynomial {
        if col == r {
            return HPolynomial::one();
        }
        if let Some(hit) = memo.get(&rows) {
            return hit.clone();
        }
        let mut det = HPolynomial::zero();
        let mut sign = 1i64;
        for i in 0..r {
            if rows & (1 << i) == 0 {
                continue;
            }
            let sub = minor(rows & !(1 << i), col + 1, r, entry, memo);
            let contribution = entry(i, col).mul(&sub);
            det = if sign > 0 {
                det.add(&contribution)
            } else {
                det.sub(&contribution)
            };
            sign = -sign;
        }
        memo.insert(rows, det.clone());
        det
    }
    let mut memo = HashMap::new();
    minor((1u32 << r) - 1, 0, r, entry, &mut memo)
}

// ---- Schur-basis conversion ----

struct SBasisData {
    maxdeg: i64,
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    inverse: Vec<Vec<Rat>>,
}

static SBASIS_CACHE: Mutex<Option<Arc<SBasisData>>> = Mutex::new(None);

fn sbasis_data(maxdeg: i64) -> Arc<SBasisData> {
    {
        let guard = SBASIS_CACHE.lock().unwrap();
        if let Some(data) = guard.as_ref() {
            if data.maxdeg >= maxdeg {
                return data.clone();
            }
        }
    }
    let parts = partitions_up_to(maxdeg);
    let n = parts.len();
    let index: HashMap<Partition, usize> = parts
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    // Coefficient of the h̃-monomial (row) in S_λ (column); always an exact
    // rational constant.
    let mut matrix = vec![vec![Rat::zero(); n]; n];
    for (col, lambda) in parts.iter().enumerate() {
        for (mu, c) in schur_type_b(lambda).iter() {
            let row = *index
                .get(mu)
                .expect("Schur expansion stays within the degree bound");
            matrix[row][col] = c.as_rat().expect("integer Schur coefficients");
        }
    }
    let inverse = invert_rational_matrix(matrix);
    let data = Arc::new(SBasisData {
        maxdeg,
        parts,
        index,
        inverse,
    });
    *SBASIS_CACHE.lock().unwrap() = Some(data.clone());
    data
}

fn invert_rational_matrix(mut a: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Schur transition matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let lead = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &lead;
            inv[col][j] /= &lead;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let av = &a[col][j] * &factor;
                a[r][j] -= av;
                let iv = &inv[col][j] * &factor;
                inv[r][j] -= iv;
            }
        }
    }
    inv
}

/// Rewrite an h̃-polynomial in the S-basis by solving the transition system
/// over all partitions of size at most `maxdeg`.
pub fn to_schur_basis(x: &HPolynomial, maxdeg: i64) -> Result<SCombination> {
    if x.degree() > maxdeg {
        return Err(Error::DegreeOverflow {
            got: x.degree(),
            max: maxdeg,
        });
    }
    let data = sbasis_data(maxdeg);
    let mut out = SCombination::zero();
    for (col, lambda) in data.parts.iter().enumerate() {
        if lambda.size() > maxdeg {
            continue;
        }
        let mut acc = RingElem::zero();
        for (mu, c) in x.iter() {
            let row = data.index[mu];
            let w = &data.inverse[col][row];
            if !w.is_zero() {
                acc = acc.add(&c.scale(w));
            }
        }
        if !acc.is_zero() {
            out.insert_add(lambda.clone(), acc);
        }
    }
    Ok(out)
}

// ---- Structure constants ----

static STRUCTURE_CACHE: Mutex<Option<HashMap<(Partition, Partition), BTreeMap<Partition, RingElem>>>> =
    Mutex::new(None);

/// Coefficients of S_μ·S_ν in the S-basis.
pub fn structure_constants(
    mu: &Partition,
    nu: &Partition,
) -> Result<BTreeMap<Partition, RingElem>> {
    let key = (mu.clone(), nu.clone());
    {
        let guard = STRUCTURE_CACHE.lock().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(hit) = map.get(&key) {
                return Ok(hit.clone());
            }
        }
    }
    let product = schur_type_b(mu).mul(&schur_type_b(nu));
    let expanded = to_schur_basis(&product, mu.size() + nu.size())?;
    let result: BTreeMap<Partition, RingElem> = expanded
        .iter()
        .map(|(l, c)| (l.clone(), c.clone()))
        .collect();
    STRUCTURE_CACHE
        .lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(key, result.clone());
    Ok(result)
}

// ---- Littlewood-Richardson and Newell-Littlewood numbers ----

/// c^λ_{μν}: the number of Littlewood-Richardson skew tableaux of shape λ/μ
/// and content ν, counted by direct backtracking over semistandard fillings
/// whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) {
        return 0;
    }
    if nu.is_empty() {
        return 1;
    }
    // Cells in lattice-reading order: rows top to bottom, right to left.
    let mut cells: Vec<(usize, i64)> = Vec::new();
    for i in 0..lambda.len() {
        for j in (mu.row(i)..lambda.row(i)).rev() {
            cells.push((i, j));
        }
    }
    let mut grid: HashMap<(usize, i64), usize> = HashMap::new();
    let mut counts = vec![0i64; nu.len()];
    fn place(
        pos: usize,
        cells: &[(usize, i64)],
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
        grid: &mut HashMap<(usize, i64), usize>,
        counts: &mut Vec<i64>,
    ) -> u64 {
        if pos == cells.len() {
            return 1;
        }
        let (i, j) = cells[pos];
        let mut total = 0;
        for t in 1..=nu.len() {
            if counts[t - 1] >= nu.row(t - 1) {
                continue;
            }
            if t >= 2 && counts[t - 1] >= counts[t - 2] {
                continue;
            }
            if j + 1 < lambda.row(i) {
                if let Some(&right) = grid.get(&(i, j + 1)) {
                    if t > right {
                        continue;
                    }
                }
            }
            if i > 0 && j >= mu.row(i - 1) {
                if let Some(&above) = grid.get(&(i - 1, j)) {
                    if t <= above {
                        continue;
                    }
                }
            }
            grid.insert((i, j), t);
            counts[t - 1] += 1;
            total += place(pos + 1, cells, lambda, mu, nu, grid, counts);
            counts[t - 1] -= 1;
            grid.remove(&(i, j));
        }
        total
    }
    place(0, &cells, lambda, mu, nu, &mut grid, &mut counts)
}

/// The Newell-Littlewood number N^λ_{μν} = Σ c^μ_{αβ} c^ν_{αγ} c^λ_{βγ},
/// the combinatorial oracle for [`structure_constants`].
pub fn newell_littlewood(mu: &Partition, nu: &Partition, lambda: &Partition) -> u64 {
    let mut total = 0;
    // 2|α| = |μ| + |ν| − |λ| is forced; skip impossible parities outright.
    let excess = mu.size() + nu.size() - lambda.size();
    if excess < 0 || excess % 2 != 0 {
        return 0;
    }
    let asize = excess / 2;
    for alpha in crate::partitions::partitions_of(asize) {
        for beta in crate::partitions::partitions_of(mu.size() - asize) {
            let c1 = lr_coefficient(mu, &alpha, &beta);
            if c1 == 0 {
                continue;
            }
            for gamma in crate::partitions::partitions_of(nu.size() - asize) {
                let c2 = lr_coefficient(nu, &alpha, &gamma);
                if c2 == 0 {
                    continue;
                }
                let c3 = lr_coefficient(lambda, &beta, &gamma);
                if c3 != 0 {
                    total += c1 * c2 * c3;
                }
            }
        }
    }
    total
}

// ---- The single-curve algebra and Chebyshev polynomials ----

/// A Laurent polynomial in the core curve z with v-free coefficients. True
/// polynomials have no negative degrees; negative powers appear only through
/// explicit substitution helpers.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ZPolynomial {
    coeffs: BTreeMap<i64, RingElem>,
}

/// Which Chebyshev family to generate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChebyshevKind {
    /// First kind, normalized so T_k(z + z⁻¹) = zᵏ + z⁻ᵏ.
    T,
    /// Second kind; U_n is the image of h̃_n under η.
    U,
}

impl ZPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RingElem::one())
    }

    pub fn constant(c: RingElem) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        Self { coeffs }
    }

    pub fn z() -> Self {
        Self::monomial(1, RingElem::one())
    }

    pub fn monomial(degree: i64, c: RingElem) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &RingElem)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, degree: i64) -> RingElem {
        self.coeffs.get(&degree).cloned().unwrap_or_else(RingElem::zero)
    }

    fn insert_add(&mut self, degree: i64, c: RingElem) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(degree) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.insert_add(*d, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.insert_add(*d, c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &other.coeffs {
                out.insert_add(d1 + d2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, k)| (*d, k.mul(c)))
                .collect(),
        }
    }

    /// Evaluate at z ↦ the given Laurent polynomial; the degree must be
    /// nonnegative everywhere in `self`.
    pub fn substitute(&self, value: &ZPolynomial) -> ZPolynomial {
        let mut out = ZPolynomial::zero();
        for (d, c) in &self.coeffs {
            assert!(*d >= 0, "substitution into a true polynomial only");
            let mut power = ZPolynomial::one();
            for _ in 0..*d {
                power = power.mul(value);
            }
            out = out.add(&power.scale(c));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "basis": "z",
            "terms": serde_json::Value::Array(
                self.coeffs
                    .iter()
                    .rev()
                    .map(|(d, c)| serde_json::json!([d, c.to_json()]))
                    .collect(),
            ),
        })
    }
}

impl fmt::Display for ZPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.coeffs.iter().rev().enumerate() {
            let body = match d {
                0 => None,
                1 => Some("z".to_string()),
                _ => Some(format!("z^{d}")),
            };
            write_term(f, i, c, body.as_deref())?;
        }
        Ok(())
    }
}

/// Chebyshev polynomials under the skein normalization: T₀ = 2, T₁ = z,
/// U₀ = 1, U₁ = z, both continued by X_k = z·X_{k−1} − X_{k−2}.
pub fn chebyshev(kind: ChebyshevKind, k: i64) -> ZPolynomial {
    assert!(k >= 0, "Chebyshev index must be nonnegative");
    let mut prev = match kind {
        ChebyshevKind::T => ZPolynomial::constant(RingElem::from_int(2)),
        ChebyshevKind::U => ZPolynomial::one(),
    };
    if k == 0 {
        return prev;
    }
    let mut curr = ZPolynomial::z();
    for _ in 1..k {
        let next = ZPolynomial::z().mul(&curr).sub(&prev);
        prev = curr;
        curr = next;
    }
    curr
}

/// The η map onto the Kauffman-bracket annulus: h̃_n ↦ U_n on generators,
/// v ↦ −s⁻³ on coefficients.
pub fn eta_annulus(x: &HPolynomial) -> Result<ZPolynomial> {
    let mut out = ZPolynomial::zero();
    for (lambda, c) in x.iter() {
        let mut image = ZPolynomial::constant(c.specialize_framing()?);
        for &part in lambda.parts() {
            image = image.mul(&chebyshev(ChebyshevKind::U, part));
        }
        out = out.add(&image);
    }
    Ok(out)
}

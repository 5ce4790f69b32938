//! The three presented torus skein algebras. The Dubrovnik and HOMFLYPT
//! algebras are spanned by PBW-ordered words in power-sum generators indexed
//! by lattice points, with multiplication defined by rewriting out-of-order
//! pairs through the presented bracket; the Kauffman-bracket algebra carries
//! the Frohman-Gelca product-to-sum multiplication directly. On top of the
//! presentations live the specialization onto the bracket algebra, the
//! symmetrization into the oriented algebra, the SL2(Z) relabeling action,
//! and a constructive algorithm expressing every generator in terms of five.
//!
//! Unoriented indices are stored canonically: the representative of {x, -x}
//! with positive first entry, or zero first entry and nonnegative second.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::annulus::write_term;
use crate::error::{Error, Result};
use crate::ring::{brace, RingElem};
use crate::Theory;

// ---- Lattice indices ----

/// A generator index on the torus: a point of the lattice, folded to a
/// canonical representative in the unoriented theories.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TorusIndex {
    a: i64,
    b: i64,
    theory: Theory,
}

impl TorusIndex {
    pub fn new(a: i64, b: i64, theory: Theory) -> Self {
        let (a, b) = match theory {
            Theory::Homflypt => (a, b),
            Theory::Dubrovnik | Theory::KauffmanBracket => {
                if a < 0 || (a == 0 && b < 0) {
                    (-a, -b)
                } else {
                    (a, b)
                }
            }
        };
        Self { a, b, theory }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn is_origin(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn negated(&self) -> Self {
        Self::new(-self.a, -self.b, self.theory)
    }

    fn to_json(self) -> serde_json::Value {
        serde_json::json!([self.a, self.b])
    }
}

/// The canonical representative of a lattice index in the given theory.
pub fn canonical_index(a: i64, b: i64, theory: Theory) -> TorusIndex {
    TorusIndex::new(a, b, theory)
}

/// Determinant of the pair of lattice vectors.
pub fn det(x: &TorusIndex, y: &TorusIndex) -> i64 {
    x.a * y.b - x.b * y.a
}

impl Ord for TorusIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |i: &Self| (!i.is_origin(), i.a, i.b, i.theory.letter());
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for TorusIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TorusIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

// ---- Elements of the presented power-sum algebras ----

type Word = Vec<TorusIndex>;

/// An element of the Dubrovnik or HOMFLYPT torus algebra: a combination of
/// PBW-ordered words in the power-sum generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PElem {
    theory: Theory,
    terms: BTreeMap<Word, RingElem>,
}

fn assert_presented_theory(theory: Theory) {
    assert!(
        matches!(theory, Theory::Dubrovnik | Theory::Homflypt),
        "words in power-sum generators exist in the Dubrovnik and HOMFLYPT theories"
    );
}

impl PElem {
    pub fn zero(theory: Theory) -> Self {
        assert_presented_theory(theory);
        Self {
            theory,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(theory: Theory) -> Self {
        Self::from_term(theory, Vec::new(), RingElem::one())
    }

    pub fn generator(theory: Theory, a: i64, b: i64) -> Self {
        let idx = TorusIndex::new(a, b, theory);
        Self::from_term(theory, vec![idx], RingElem::one())
    }

    pub fn from_term(theory: Theory, word: Word, c: RingElem) -> Self {
        let mut out = Self::zero(theory);
        for (w, k) in reduce(vec![(word, c)], true) {
            out.insert_add(w, k);
        }
        out
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &RingElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[TorusIndex]) -> RingElem {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(RingElem::zero)
    }

    fn insert_add(&mut self, word: Word, c: RingElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
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
        assert_eq!(self.theory, other.theory, "theory tags must match");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_add(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            theory: self.theory,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.theory);
        }
        Self {
            theory: self.theory,
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.theory, other.theory, "theory tags must match");
        let mut raw = Vec::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut word = w1.clone();
                word.extend(w2.iter().copied());
                raw.push((word, c1.mul(c2)));
            }
        }
        let mut out = Self::zero(self.theory);
        for (w, c) in reduce(raw, true) {
            out.insert_add(w, c);
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Terms sorted for output: longer words first, then reverse
    /// lexicographic order among words of equal length.
    fn sorted_terms(&self) -> Vec<(&Word, &RingElem)> {
        let mut pairs: Vec<_> = self.terms.iter().collect();
        pairs.sort_by(|(w1, _), (w2, _)| {
            w2.len().cmp(&w1.len()).then_with(|| w2.cmp(w1))
        });
        pairs
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "theory": self.theory.letter(),
            "terms": serde_json::Value::Array(
                self.sorted_terms()
                    .into_iter()
                    .map(|(w, c)| {
                        serde_json::json!([
                            serde_json::Value::Array(
                                w.iter().map(|i| i.to_json()).collect()
                            ),
                            c.to_json(),
                        ])
                    })
                    .collect(),
            ),
        })
    }
}

impl fmt::Display for PElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (word, c)) in self.sorted_terms().into_iter().enumerate() {
            let body = if word.is_empty() {
                None
            } else {
                Some(
                    word.iter()
                        .map(|i| format!("P{i}"))
                        .collect::<Vec<_>>()
                        .join("*"),
                )
            };
            write_term(f, pos, c, body.as_deref())?;
        }
        Ok(())
    }
}

// ---- PBW rewriting ----

/// Presented bracket of two generators, as generator-coefficient pairs.
fn bracket_terms(x: TorusIndex, y: TorusIndex) -> Vec<(TorusIndex, RingElem)> {
    let d = det(&x, &y);
    if d == 0 {
        return Vec::new();
    }
    let theory = x.theory;
    let plus = TorusIndex::new(x.a + y.a, x.b + y.b, theory);
    match theory {
        Theory::Dubrovnik => {
            let minus = TorusIndex::new(x.a - y.a, x.b - y.b, theory);
            vec![(plus, brace(d)), (minus, brace(d).neg())]
        }
        Theory::Homflypt => vec![(plus, brace(d))],
        Theory::KauffmanBracket => unreachable!(),
    }
}

/// The presented bracket of two generator indices as an element.
pub fn bracket(x: &TorusIndex, y: &TorusIndex) -> PElem {
    assert_eq!(x.theory, y.theory, "theory tags must match");
    assert_presented_theory(x.theory);
    let mut out = PElem::zero(x.theory);
    for (g, c) in bracket_terms(*x, *y) {
        out.insert_add(vec![g], c);
    }
    out
}

/// Rewrite raw word-coefficient pairs into PBW normal form by repeatedly
/// exchanging an out-of-order adjacent pair and inserting its bracket. Each
/// step lowers (word length, inversion count), so the rewriting terminates;
/// the choice of which inversion to resolve does not change the result.
fn reduce(raw: Vec<(Word, RingElem)>, leftmost: bool) -> BTreeMap<Word, RingElem> {
    let mut out: BTreeMap<Word, RingElem> = BTreeMap::new();
    let mut stack = raw;
    while let Some((word, coeff)) = stack.pop() {
        if coeff.is_zero() {
            continue;
        }
        let inversion = if leftmost {
            (1..word.len()).find(|&i| word[i - 1] > word[i])
        } else {
            (1..word.len()).rev().find(|&i| word[i - 1] > word[i])
        };
        match inversion {
            None => {
                if let Some(existing) = out.get_mut(&word) {
                    *existing = existing.add(&coeff);
                    if existing.is_zero() {
                        out.remove(&word);
                    }
                } else {
                    out.insert(word, coeff);
                }
            }
            Some(i) => {
                let mut swapped = word.clone();
                swapped.swap(i - 1, i);
                for (g, c) in bracket_terms(word[i - 1], word[i]) {
                    let mut shorter: Word = word[..i - 1].to_vec();
                    shorter.push(g);
                    shorter.extend_from_slice(&word[i + 1..]);
                    stack.push((shorter, coeff.mul(&c)));
                }
                stack.push((swapped, coeff));
            }
        }
    }
    out
}

/// Normal-order a product of generators.
pub fn normal_order(word: &[TorusIndex], theory: Theory) -> PElem {
    assert_presented_theory(theory);
    PElem::from_term(theory, word.to_vec(), RingElem::one())
}

/// Normal ordering that resolves the rightmost inversion first; the result
/// must agree with the default strategy.
pub(crate) fn normal_order_rightmost(word: &[TorusIndex], theory: Theory) -> PElem {
    let mut out = PElem::zero(theory);
    for (w, c) in reduce(vec![(word.to_vec(), RingElem::one())], false) {
        out.insert_add(w, c);
    }
    out
}

// ---- The Frohman-Gelca algebra ----

/// An element of the Kauffman-bracket torus algebra in the multicurve
/// generators, plus a scalar multiple of the empty curve.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KElem {
    unit: RingElem,
    terms: BTreeMap<TorusIndex, RingElem>,
}

impl KElem {
    pub fn zero() -> Self {
        Self {
            unit: RingElem::zero(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: RingElem) -> Self {
        Self {
            unit: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(RingElem::one())
    }

    /// The multicurve generator, with the empty index folded to the scalar 2.
    pub fn generator(a: i64, b: i64) -> Self {
        let idx = TorusIndex::new(a, b, Theory::KauffmanBracket);
        if idx.is_origin() {
            return Self::scalar(RingElem::from_int(2));
        }
        let mut out = Self::zero();
        out.terms.insert(idx, RingElem::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && self.terms.is_empty()
    }

    pub fn unit_part(&self) -> &RingElem {
        &self.unit
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TorusIndex, &RingElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: i64, b: i64) -> RingElem {
        let idx = TorusIndex::new(a, b, Theory::KauffmanBracket);
        self.terms.get(&idx).cloned().unwrap_or_else(RingElem::zero)
    }

    fn insert_add(&mut self, idx: TorusIndex, c: RingElem) {
        if c.is_zero() {
            return;
        }
        if idx.is_origin() {
            self.unit = self.unit.add(&c.mul(&RingElem::from_int(2)));
            return;
        }
        match self.terms.entry(idx) {
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
        out.unit = out.unit.add(&other.unit);
        for (i, c) in &other.terms {
            out.insert_add(*i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            unit: self.unit.neg(),
            terms: self.terms.iter().map(|(i, c)| (*i, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            unit: self.unit.mul(c),
            terms: self.terms.iter().map(|(i, k)| (*i, k.mul(c))).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(i, c)| serde_json::json!([[i.to_json()], c.to_json()]))
            .collect();
        if !self.unit.is_zero() {
            terms.push(serde_json::json!([[], self.unit.to_json()]));
        }
        serde_json::json!({
            "theory": "K",
            "terms": serde_json::Value::Array(terms),
        })
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pos = 0;
        for (i, c) in self.terms.iter().rev() {
            write_term(f, pos, c, Some(&format!("T{i}")))?;
            pos += 1;
        }
        if !self.unit.is_zero() {
            write_term(f, pos, &self.unit, None)?;
        }
        Ok(())
    }
}

/// The product-to-sum multiplication, extended bilinearly.
pub fn k_multiply(x: &KElem, y: &KElem) -> KElem {
    let mut out = KElem::zero();
    out.unit = x.unit.mul(&y.unit);
    for (i, c) in &x.terms {
        out.insert_add(*i, c.mul(&y.unit));
    }
    for (j, c) in &y.terms {
        out.insert_add(*j, c.mul(&x.unit));
    }
    for (i, ci) in &x.terms {
        for (j, cj) in &y.terms {
            let d = det(i, j);
            let c = ci.mul(cj);
            for (exponent, sa, sb) in [(d, i.a + j.a, i.b + j.b), (-d, i.a - j.a, i.b - j.b)] {
                let idx = TorusIndex::new(sa, sb, Theory::KauffmanBracket);
                out.insert_add(idx, c.mul(&RingElem::s_pow(exponent)));
            }
        }
    }
    out
}

// ---- Specialization and symmetrization morphisms ----

/// Specialize a Dubrovnik element onto the Kauffman-bracket algebra:
/// generators pass to multicurves, words multiply out through the
/// product-to-sum formula, and coefficients specialize their framing.
pub fn eta_torus(x: &PElem) -> Result<KElem> {
    assert_eq!(x.theory, Theory::Dubrovnik, "the specialization starts from the Dubrovnik algebra");
    let mut out = KElem::zero();
    for (word, c) in x.iter() {
        let mut image = KElem::scalar(c.specialize_framing()?);
        for idx in word {
            image = k_multiply(&image, &KElem::generator(idx.a, idx.b));
        }
        out = out.add(&image);
    }
    Ok(out)
}

/// Symmetrize a Dubrovnik element into the oriented algebra by sending each
/// generator to the sum of its two lifts.
pub fn phi_torus(x: &PElem) -> PElem {
    assert_eq!(x.theory, Theory::Dubrovnik, "the symmetrization starts from the Dubrovnik algebra");
    let mut out = PElem::zero(Theory::Homflypt);
    for (word, c) in x.iter() {
        let mut image = PElem::one(Theory::Homflypt).scale(c);
        for idx in word {
            let lift = PElem::generator(Theory::Homflypt, idx.a, idx.b)
                .add(&PElem::generator(Theory::Homflypt, -idx.a, -idx.b));
            image = image.mul(&lift);
        }
        out = out.add(&image);
    }
    out
}

/// Relabel every generator index through a determinant-one integer matrix,
/// then restore normal order.
pub fn sl2_act(g: [[i64; 2]; 2], x: &PElem) -> Result<PElem> {
    if g[0][0] * g[1][1] - g[0][1] * g[1][0] != 1 {
        return Err(Error::NotUnimodular);
    }
    let mut out = PElem::zero(x.theory);
    for (word, c) in x.iter() {
        let mapped: Word = word
            .iter()
            .map(|i| {
                TorusIndex::new(
                    i.a * g[0][0] + i.b * g[1][0],
                    i.a * g[0][1] + i.b * g[1][1],
                    x.theory,
                )
            })
            .collect();
        out = out.add(&PElem::from_term(x.theory, mapped, c.clone()));
    }
    Ok(out)
}

// ---- Lattice arithmetic for the generating algorithm ----

/// Split a primitive direction (p, q) into a unimodular pair of shallower
/// directions: u + w = p, v + z = q, uz - vw = 1, 0 < u, w < p.
pub fn diophantine(p: i64, q: i64) -> Result<(i64, i64, i64, i64)> {
    if p <= 0 || q <= 0 || q >= p {
        return Err(Error::BadInput(format!(
            "need 0 < q < p, got p = {p}, q = {q}"
        )));
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(Error::BadInput(format!(
            "need coprime entries, got gcd({p}, {q}) > 1"
        )));
    }
    // The inverse b of q modulo p gives b*q - a*p = 1 with 0 < b < p.
    let mut b = 0;
    for candidate in 1..p {
        if (candidate * q) % p == 1 {
            b = candidate;
            break;
        }
    }
    let a = (b * q - 1) / p;
    Ok((b, a, p - b, q - a))
}

// ---- Expressing generators through five ----

/// A formal expression over the five distinguished generators, built from
/// sums, scalar multiples, and commutators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GeneratorExpression {
    Generator(TorusIndex),
    Add(Box<GeneratorExpression>, Box<GeneratorExpression>),
    Scale(RingElem, Box<GeneratorExpression>),
    Commutator(Box<GeneratorExpression>, Box<GeneratorExpression>),
}

impl GeneratorExpression {
    pub fn evaluate(&self) -> PElem {
        match self {
            Self::Generator(i) => PElem::generator(i.theory, i.a, i.b),
            Self::Add(l, r) => l.evaluate().add(&r.evaluate()),
            Self::Scale(c, e) => e.evaluate().scale(c),
            Self::Commutator(l, r) => l.evaluate().commutator(&r.evaluate()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Self::Generator(i) => serde_json::json!(["gen", i.to_json()]),
            Self::Add(l, r) => serde_json::json!(["add", l.to_json(), r.to_json()]),
            Self::Scale(c, e) => serde_json::json!(["scale", c.to_json(), e.to_json()]),
            Self::Commutator(l, r) => {
                serde_json::json!(["commutator", l.to_json(), r.to_json()])
            }
        }
    }
}

impl fmt::Display for GeneratorExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Generator(i) => write!(f, "P{i}"),
            Self::Add(l, r) => write!(f, "({l} + {r})"),
            Self::Scale(c, e) => write!(f, "({c})*{e}"),
            Self::Commutator(l, r) => write!(f, "[{l}, {r}]"),
        }
    }
}

fn leaf(a: i64, b: i64) -> GeneratorExpression {
    GeneratorExpression::Generator(TorusIndex::new(a, b, Theory::Dubrovnik))
}

fn combine(
    scalar: RingElem,
    lhs: GeneratorExpression,
    rhs: GeneratorExpression,
    tail: GeneratorExpression,
) -> GeneratorExpression {
    GeneratorExpression::Add(
        Box::new(GeneratorExpression::Scale(
            scalar,
            Box::new(GeneratorExpression::Commutator(Box::new(lhs), Box::new(rhs))),
        )),
        Box::new(tail),
    )
}

pub(crate) fn brace_inv(n: i64) -> RingElem {
    brace(n).inv().expect("nonzero index")
}

fn build_expression(a: i64, b: i64) -> GeneratorExpression {
    let idx = TorusIndex::new(a, b, Theory::Dubrovnik);
    let (a, b) = (idx.a, idx.b);
    match (a, b) {
        (0, 0) | (1, 0) | (0, 1) | (1, 1) | (2, 0) => leaf(a, b),
        // Seed the far anti-diagonal by rearranging the meridian bracket.
        (1, -1) => GeneratorExpression::Add(
            Box::new(leaf(1, 1)),
            Box::new(GeneratorExpression::Scale(
                brace_inv(1).neg(),
                Box::new(GeneratorExpression::Commutator(
                    Box::new(leaf(1, 0)),
                    Box::new(leaf(0, 1)),
                )),
            )),
        ),
        // The vertical axis comes last, from the two flanking columns.
        (0, m) => combine(
            brace_inv(m),
            build_expression(1, m),
            leaf(1, 0),
            build_expression(2, m),
        ),
        _ => {
            if b > 2 - a {
                // Walk down a vertical line toward the seeded band.
                combine(
                    brace_inv(a),
                    build_expression(a, b - 1),
                    leaf(0, 1),
                    build_expression(a, b - 2),
                )
            } else if b < 1 - a {
                // Walk up a vertical line toward the seeded band.
                combine(
                    brace_inv(a).neg(),
                    build_expression(a, b + 1),
                    leaf(0, 1),
                    build_expression(a, b + 2),
                )
            } else {
                // On one of the two seeded anti-diagonals: step along it.
                combine(
                    brace_inv(a + b).neg(),
                    build_expression(a - 1, b + 1),
                    build_expression(1, -1),
                    build_expression(a - 2, b + 2),
                )
            }
        }
    }
}

/// Express a generator as a five-generator expression following the
/// constructive generation of the lattice: seed the anti-diagonal through
/// (1, -1), extend both seeded anti-diagonals, climb vertical lines, and
/// recover the vertical axis from its neighbors.
pub fn express_in_generators(x: &TorusIndex) -> GeneratorExpression {
    assert_eq!(
        x.theory,
        Theory::Dubrovnik,
        "the five-generator algorithm lives in the Dubrovnik algebra"
    );
    build_expression(x.a, x.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn d() -> Theory {
        Theory::Dubrovnik
    }

    fn h() -> Theory {
        Theory::Homflypt
    }

    fn idx(a: i64, b: i64) -> TorusIndex {
        TorusIndex::new(a, b, d())
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(canonical_index(-1, 2, d()), idx(1, -2));
        assert_eq!(canonical_index(0, -3, d()), idx(0, 3));
        let kept = canonical_index(2, 1, h());
        assert_eq!((kept.a(), kept.b()), (2, 1));
        let negated = canonical_index(-2, 1, h());
        assert_eq!((negated.a(), negated.b()), (-2, 1));
    }

    #[test]
    fn index_order_puts_origin_first() {
        let origin = idx(0, 0);
        assert!(origin < idx(0, 1));
        assert!(idx(0, 1) < idx(1, -1));
        assert!(idx(1, -1) < idx(1, 0));
    }

    #[test]
    fn bracket_examples() {
        let b = bracket(&idx(1, 0), &idx(0, 1));
        let expect = PElem::generator(d(), 1, 1)
            .sub(&PElem::generator(d(), 1, -1))
            .scale(&brace(1));
        assert_eq!(b, expect);
        assert!(bracket(&idx(2, 3), &idx(2, 3)).is_zero());
        for n in 1..=5 {
            let b = bracket(&idx(1, 0), &idx(0, n));
            let expect = PElem::generator(d(), 1, n)
                .sub(&PElem::generator(d(), 1, -n))
                .scale(&brace(n));
            assert_eq!(b, expect, "n = {n}");
        }
    }

    #[test]
    fn normal_order_examples() {
        let word = [idx(1, 0), idx(0, 1)];
        let ordered = normal_order(&word, d());
        let mut expect = PElem::from_term(d(), vec![idx(0, 1), idx(1, 0)], RingElem::one());
        expect = expect.add(
            &PElem::generator(d(), 1, 1)
                .sub(&PElem::generator(d(), 1, -1))
                .scale(&brace(1)),
        );
        assert_eq!(ordered, expect);
        assert_eq!(
            format!("{ordered}"),
            "P[0,1]*P[1,0] + (s - s^-1)*P[1,1] - (s - s^-1)*P[1,-1]"
        );

        let single = normal_order(&[idx(2, -3)], d());
        assert_eq!(single, PElem::generator(d(), 2, -3));

        let central = normal_order(&[idx(1, 2), idx(0, 0)], d());
        assert_eq!(
            central,
            PElem::from_term(d(), vec![idx(0, 0), idx(1, 2)], RingElem::one())
        );
    }

    #[test]
    fn rewriting_is_confluent() {
        let mut rng = StdRng::seed_from_u64(0x70725573);
        for theory in [d(), h()] {
            for _ in 0..50 {
                let len = rng.gen_range(1..=4);
                let word: Vec<TorusIndex> = (0..len)
                    .map(|_| {
                        TorusIndex::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3), theory)
                    })
                    .collect();
                assert_eq!(
                    normal_order(&word, theory),
                    normal_order_rightmost(&word, theory),
                    "word {word:?}"
                );
            }
        }
    }

    #[test]
    fn jacobi_identity_small_grid() {
        let points: Vec<TorusIndex> = (-2..=2)
            .flat_map(|a| (-2..=2).map(move |b| idx(a, b)))
            .collect();
        for x in &points {
            for y in &points {
                for z in &points {
                    let xy = bracket(x, y);
                    let yz = bracket(y, z);
                    let zx = bracket(z, x);
                    let pz = PElem::generator(d(), z.a(), z.b());
                    let px = PElem::generator(d(), x.a(), x.b());
                    let py = PElem::generator(d(), y.a(), y.b());
                    let total = xy
                        .commutator(&pz)
                        .add(&yz.commutator(&px))
                        .add(&zx.commutator(&py));
                    assert!(total.is_zero(), "Jacobi fails at {x}, {y}, {z}");
                }
            }
        }
    }

    #[test]
    fn product_to_sum_examples() {
        let product = k_multiply(&KElem::generator(1, 0), &KElem::generator(0, 1));
        let mut expect = KElem::generator(1, 1).scale(&RingElem::s_pow(1));
        expect = expect.add(&KElem::generator(1, -1).scale(&RingElem::s_pow(-1)));
        assert_eq!(product, expect);

        let square = k_multiply(&KElem::generator(1, 0), &KElem::generator(1, 0));
        let expect = KElem::generator(2, 0).add(&KElem::scalar(RingElem::from_int(2)));
        assert_eq!(square, expect);
        assert_eq!(format!("{square}"), "T[2,0] + 2");

        let by_unit = k_multiply(&KElem::one(), &KElem::generator(4, -3));
        assert_eq!(by_unit, KElem::generator(4, -3));
    }

    #[test]
    fn k_bracket_identity() {
        let mut rng = StdRng::seed_from_u64(0x6b627261);
        for _ in 0..25 {
            let x = KElem::generator(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let y = KElem::generator(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let (Some((i, _)), Some((j, _))) = (x.iter().next(), y.iter().next()) else {
                continue;
            };
            let dxy = det(i, j);
            let commutator = k_multiply(&x, &y).sub(&k_multiply(&y, &x));
            let sum = KElem::generator(i.a() + j.a(), i.b() + j.b());
            let diff = KElem::generator(i.a() - j.a(), i.b() - j.b());
            let expect = sum
                .sub(&diff)
                .scale(&RingElem::s_pow(dxy).sub(&RingElem::s_pow(-dxy)));
            assert_eq!(commutator, expect);
        }
    }

    #[test]
    fn eta_examples() {
        assert_eq!(
            eta_torus(&PElem::generator(d(), 1, 1)).unwrap(),
            KElem::generator(1, 1)
        );
        assert_eq!(
            eta_torus(&PElem::generator(d(), 0, 0)).unwrap(),
            KElem::scalar(RingElem::from_int(2))
        );
        let ordered = normal_order(&[idx(1, 0), idx(0, 1)], d());
        assert_eq!(
            eta_torus(&ordered).unwrap(),
            k_multiply(&KElem::generator(1, 0), &KElem::generator(0, 1))
        );
    }

    #[test]
    fn eta_is_multiplicative_on_sampled_pairs() {
        let mut rng = StdRng::seed_from_u64(0x65746131);
        for _ in 0..50 {
            let x = idx(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let y = idx(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let product = normal_order(&[x, y], d());
            let lhs = eta_torus(&product).unwrap();
            let rhs = k_multiply(
                &eta_torus(&PElem::generator(d(), x.a(), x.b())).unwrap(),
                &eta_torus(&PElem::generator(d(), y.a(), y.b())).unwrap(),
            );
            assert_eq!(lhs, rhs, "pair {x}, {y}");
        }
    }

    #[test]
    fn phi_examples() {
        let image = phi_torus(&PElem::generator(d(), 1, 0));
        let expect =
            PElem::generator(h(), 1, 0).add(&PElem::generator(h(), -1, 0));
        assert_eq!(image, expect);

        let origin = phi_torus(&PElem::generator(d(), 0, 0));
        assert_eq!(
            origin,
            PElem::generator(h(), 0, 0).scale(&RingElem::from_int(2))
        );
    }

    #[test]
    fn phi_respects_brackets() {
        let mut rng = StdRng::seed_from_u64(0x70686931);
        for _ in 0..50 {
            let x = idx(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let y = idx(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let lhs = phi_torus(&bracket(&x, &y));
            let rhs = phi_torus(&PElem::generator(d(), x.a(), x.b()))
                .commutator(&phi_torus(&PElem::generator(d(), y.a(), y.b())));
            assert_eq!(lhs, rhs, "pair {x}, {y}");
        }
    }

    #[test]
    fn phi_image_is_negation_invariant() {
        let negate = |x: &PElem| -> PElem {
            let mut out = PElem::zero(h());
            for (word, c) in x.iter() {
                let mapped: Vec<TorusIndex> = word.iter().map(|i| i.negated()).collect();
                out = out.add(&PElem::from_term(h(), mapped, c.clone()));
            }
            out
        };
        let sample = phi_torus(&normal_order(&[idx(2, 1), idx(1, -1)], d()));
        assert_eq!(negate(&sample), sample);
    }

    #[test]
    fn sl2_action() {
        let identity = [[1, 0], [0, 1]];
        let sample = normal_order(&[idx(1, 0), idx(0, 1)], d());
        assert_eq!(sl2_act(identity, &sample).unwrap(), sample);

        let shear = [[1, 1], [0, 1]];
        assert_eq!(
            sl2_act(shear, &PElem::generator(d(), 1, 0)).unwrap(),
            PElem::generator(d(), 1, 1)
        );

        assert!(matches!(
            sl2_act([[2, 0], [0, 1]], &sample),
            Err(Error::NotUnimodular)
        ));
    }

    #[test]
    fn sl2_action_is_natural() {
        let matrices = [[[1, 1], [0, 1]], [[0, -1], [1, 0]], [[2, 1], [1, 1]]];
        let mut rng = StdRng::seed_from_u64(0x736c3261);
        for g in matrices {
            for theory in [d(), h()] {
                for _ in 0..10 {
                    let len = rng.gen_range(1..=3);
                    let word: Vec<TorusIndex> = (0..len)
                        .map(|_| {
                            TorusIndex::new(
                                rng.gen_range(-2..=2),
                                rng.gen_range(-2..=2),
                                theory,
                            )
                        })
                        .collect();
                    let mapped: Vec<TorusIndex> = word
                        .iter()
                        .map(|i| {
                            TorusIndex::new(
                                i.a() * g[0][0] + i.b() * g[1][0],
                                i.a() * g[0][1] + i.b() * g[1][1],
                                theory,
                            )
                        })
                        .collect();
                    assert_eq!(
                        sl2_act(g, &normal_order(&word, theory)).unwrap(),
                        normal_order(&mapped, theory),
                        "matrix {g:?}, word {word:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn diophantine_splits() {
        assert_eq!(diophantine(5, 2).unwrap(), (3, 1, 2, 1));
        assert_eq!(diophantine(2, 1).unwrap(), (1, 0, 1, 1));
        assert_eq!(diophantine(3, 2).unwrap(), (2, 1, 1, 1));
        for (p, q) in [(5, 2), (2, 1), (3, 2), (7, 3), (11, 4)] {
            let (u, v, w, z) = diophantine(p, q).unwrap();
            assert_eq!(u * z - v * w, 1);
            assert_eq!(u + w, p);
            assert_eq!(v + z, q);
            assert!(0 < u && u < p && 0 < w && w < p);
        }
        assert!(diophantine(4, 2).is_err());
        assert!(diophantine(2, 3).is_err());
    }

    #[test]
    fn five_generator_expressions() {
        for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)] {
            assert_eq!(
                express_in_generators(&idx(a, b)),
                GeneratorExpression::Generator(idx(a, b))
            );
        }

        let seed = express_in_generators(&idx(1, -1));
        let GeneratorExpression::Add(first, second) = &seed else {
            panic!("seed should be a sum");
        };
        assert_eq!(**first, leaf(1, 1));
        let GeneratorExpression::Scale(c, inner) = &**second else {
            panic!("seed correction should be scaled");
        };
        assert_eq!(*c, brace_inv(1).neg());
        let GeneratorExpression::Commutator(l, r) = &**inner else {
            panic!("seed correction should be a commutator");
        };
        assert_eq!((&**l, &**r), (&leaf(1, 0), &leaf(0, 1)));
        assert_eq!(seed.evaluate(), PElem::generator(d(), 1, -1));

        for a in -4..=4 {
            for b in -4..=4i64 {
                let target = idx(a, b);
                let expression = express_in_generators(&target);
                assert_eq!(
                    expression.evaluate(),
                    PElem::generator(d(), a, b),
                    "target {target}"
                );
            }
        }
    }

    #[test]
    fn serialization_shape() {
        let ordered = normal_order(&[idx(1, 0), idx(0, 1)], d());
        let json = ordered.to_json();
        assert_eq!(json["theory"], "D");
        let terms = json["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0][0], serde_json::json!([[0, 1], [1, 0]]));
        assert_eq!(terms[1][0], serde_json::json!([[1, 1]]));
        assert_eq!(terms[2][0], serde_json::json!([[1, -1]]));

        let k = k_multiply(&KElem::generator(1, 0), &KElem::generator(1, 0));
        assert_eq!(
            k.to_json(),
            serde_json::json!({
                "theory": "K",
                "terms": [
                    [[[2, 0]], {"num": [[0, 0, "1/1"]], "den": [[0, 0, "1/1"]]}],
                    [[], {"num": [[0, 0, "2/1"]], "den": [[0, 0, "1/1"]]}],
                ],
            })
        );
    }
}

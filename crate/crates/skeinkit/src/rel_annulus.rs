//! The relative annulus bimodule: Laurent polynomials in the winding curve a
//! with symmetrizer-monomial coefficients, carrying two actions of the closed
//! annulus algebra. The left action is multiplication; the right action
//! rewrites each generator through the experimentally discovered transition
//! coefficients and extends as an algebra map, which is exactly the statement
//! that the action operators commute with winding shifts and left factors.
//!
//! Everything here is stored in the left normal form, the basis of elements
//! aⁱ·(h̃_λ·e). The skew-commutator and determinant identities at the bottom
//! are equalities between normal forms, so each check is a finite decision.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use crate::annulus::{newton_power_sum, write_term, HPolynomial};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::ring::RingElem;
use crate::Theory;

// ---- Elements in left normal form ----

/// An element of the relative annulus, indexed by winding number and the
/// symmetrizer monomial acting from the left of e.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelElem {
    theory: Theory,
    terms: BTreeMap<(i64, Partition), RingElem>,
}

fn assert_rel_theory(theory: Theory) {
    assert!(
        matches!(theory, Theory::Dubrovnik | Theory::Homflypt),
        "the relative annulus is modeled for the Dubrovnik and HOMFLYPT theories"
    );
}

impl RelElem {
    pub fn zero(theory: Theory) -> Self {
        assert_rel_theory(theory);
        Self {
            theory,
            terms: BTreeMap::new(),
        }
    }

    /// The empty diagram e, the unit of the algebra.
    pub fn e(theory: Theory) -> Self {
        Self::monomial(theory, 0, Partition::empty(), RingElem::one())
    }

    pub fn a_power(theory: Theory, i: i64) -> Self {
        Self::monomial(theory, i, Partition::empty(), RingElem::one())
    }

    pub fn monomial(theory: Theory, winding: i64, lambda: Partition, c: RingElem) -> Self {
        let mut out = Self::zero(theory);
        out.insert_add(winding, lambda, c);
        out
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, Partition), &RingElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, winding: i64, lambda: &Partition) -> RingElem {
        self.terms
            .get(&(winding, lambda.clone()))
            .cloned()
            .unwrap_or_else(RingElem::zero)
    }

    fn insert_add(&mut self, winding: i64, lambda: Partition, c: RingElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((winding, lambda)) {
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
        for ((i, l), c) in &other.terms {
            out.insert_add(*i, l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.theory, other.theory, "theory tags must match");
        let mut out = self.clone();
        for ((i, l), c) in &other.terms {
            out.insert_add(*i, l.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            theory: self.theory,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
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
                .map(|(k, x)| (k.clone(), x.mul(c)))
                .collect(),
        }
    }

    /// Product in the commutative algebra: windings add, monomials merge.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.theory, other.theory, "theory tags must match");
        let mut out = Self::zero(self.theory);
        for ((i1, l1), c1) in &self.terms {
            for ((i2, l2), c2) in &other.terms {
                out.insert_add(i1 + i2, l1.merge(l2), c1.mul(c2));
            }
        }
        out
    }

    /// Multiplication by the winding curve a^shift.
    pub fn shift_winding(&self, shift: i64) -> Self {
        Self {
            theory: self.theory,
            terms: self
                .terms
                .iter()
                .map(|((i, l), c)| ((i + shift, l.clone()), c.clone()))
                .collect(),
        }
    }

    /// Left action of the closed annulus algebra.
    pub fn left_mul(&self, x: &HPolynomial) -> Self {
        let mut out = Self::zero(self.theory);
        for ((i, l), c) in &self.terms {
            for (mu, k) in x.iter() {
                out.insert_add(*i, l.merge(mu), c.mul(k));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "theory": self.theory.letter(),
            "terms": serde_json::Value::Array(
                self.terms
                    .iter()
                    .rev()
                    .map(|((i, l), c)| serde_json::json!([i, l.to_json(), c.to_json()]))
                    .collect(),
            ),
        })
    }
}

impl fmt::Display for RelElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, ((i, l), c)) in self.terms.iter().rev().enumerate() {
            let mut factors = Vec::new();
            match i {
                0 => {}
                1 => factors.push("a".to_string()),
                _ => factors.push(format!("a^{i}")),
            }
            if !l.is_empty() {
                factors.push(format!("h{l}*e"));
            }
            if factors.is_empty() {
                factors.push("e".to_string());
            }
            write_term(f, pos, c, Some(&factors.join("*")))?;
        }
        Ok(())
    }
}

// ---- Transition coefficients ----

/// Which side of the two-basis transition a coefficient family expands.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TransitionKind {
    /// The family d_i, writing h̃_n·e in the elements e·h̃_{n−i}.
    D,
    /// The family d̄_i, writing e·h̃_n in the elements h̃_{n−i}·e.
    DBar,
}

/// A single transition coefficient: a Laurent polynomial in the winding
/// curve, stored as winding exponent against scalar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransitionCoeff {
    index: i64,
    value: BTreeMap<i64, RingElem>,
}

impl TransitionCoeff {
    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn value(&self) -> &BTreeMap<i64, RingElem> {
        &self.value
    }

    pub fn coeff(&self, winding: i64) -> RingElem {
        self.value.get(&winding).cloned().unwrap_or_else(RingElem::zero)
    }
}

/// The i-th transition coefficient of the chosen family and theory.
pub fn transition(i: i64, kind: TransitionKind, theory: Theory) -> TransitionCoeff {
    assert!(i >= 0, "transition coefficients are indexed from zero");
    assert_rel_theory(theory);
    let mut value: BTreeMap<i64, RingElem> = BTreeMap::new();
    let mut put = |winding: i64, c: RingElem| {
        if c.is_zero() {
            return;
        }
        let entry = value.entry(winding).or_insert_with(RingElem::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            value.remove(&winding);
        }
    };
    if i == 0 {
        put(0, RingElem::one());
        return TransitionCoeff { index: 0, value };
    }
    let one = RingElem::one();
    // 1 - s^2 and 1 - s^-2, the two crossing-resolution weights.
    let up = one.sub(&RingElem::monomial(2, 0));
    let down = one.sub(&RingElem::monomial(-2, 0));
    match theory {
        Theory::Dubrovnik => {
            for l in 0..i {
                match kind {
                    TransitionKind::D => {
                        put(i - 2 * l, up.mul(&RingElem::s_pow(2 * l - i)));
                        put(2 * l - i, down.mul(&RingElem::s_pow(i - 2 * l)));
                    }
                    TransitionKind::DBar => {
                        put(i - 2 * l, down.mul(&RingElem::s_pow(i - 2 * l)));
                        put(2 * l - i, up.mul(&RingElem::s_pow(2 * l - i)));
                    }
                }
            }
        }
        Theory::Homflypt => match kind {
            TransitionKind::D => put(i, up.mul(&RingElem::s_pow(-i))),
            TransitionKind::DBar => put(i, down.mul(&RingElem::s_pow(i))),
        },
        Theory::KauffmanBracket => unreachable!(),
    }
    TransitionCoeff { index: i, value }
}

// ---- The two action maps ----

static GENERATOR_IMAGE_CACHE: Mutex<Option<HashMap<(char, u8, i64), RelElem>>> = Mutex::new(None);

/// Expansion of one generator through a transition family: the image of
/// h̃_n·e under the d-rewriting, or of e·h̃_n under the d̄-rewriting, read in
/// the opposite one-sided basis but stored in the shared (winding, monomial)
/// term representation.
fn generator_image(n: i64, kind: TransitionKind, theory: Theory) -> RelElem {
    let key = (
        theory.letter().chars().next().unwrap(),
        matches!(kind, TransitionKind::DBar) as u8,
        n,
    );
    {
        let guard = GENERATOR_IMAGE_CACHE.lock().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(hit) = map.get(&key) {
                return hit.clone();
            }
        }
    }
    let mut out = RelElem::zero(theory);
    for i in 0..=n {
        let coeff = transition(i, kind, theory);
        let lambda = if n - i > 0 {
            Partition::new(vec![n - i])
        } else {
            Partition::empty()
        };
        for (winding, c) in coeff.value() {
            out.insert_add(*winding, lambda.clone(), c.clone());
        }
    }
    GENERATOR_IMAGE_CACHE
        .lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(key, out.clone());
    out
}

/// Rewrite every symmetrizer factor of every term through the chosen
/// transition family, multiplying the expansions out in the commutative
/// algebra. Applying the d̄-family to a right-basis expression yields its
/// left normal form; applying the d-family undoes it.
pub(crate) fn expand_through(x: &RelElem, kind: TransitionKind) -> RelElem {
    let mut out = RelElem::zero(x.theory);
    for ((i, l), c) in &x.terms {
        let mut product = RelElem::monomial(x.theory, *i, Partition::empty(), c.clone());
        for &part in l.parts() {
            product = product.mul(&generator_image(part, kind, x.theory));
        }
        out = out.add(&product);
    }
    out
}

/// The image e·x in left normal form; an algebra homomorphism in x.
fn right_image(x: &HPolynomial, theory: Theory) -> RelElem {
    let mut symbols = RelElem::zero(theory);
    for (l, c) in x.iter() {
        symbols.insert_add(0, l.clone(), c.clone());
    }
    expand_through(&symbols, TransitionKind::DBar)
}

/// Right action of the closed annulus algebra on the bimodule: each
/// generator expands through the d̄ coefficients and the result multiplies
/// the element in the commutative model.
pub fn right_act(x: &HPolynomial, w: &RelElem) -> RelElem {
    w.mul(&right_image(x, w.theory))
}

/// The commutator e·x − x·e measuring the failure of the two actions to
/// agree on the unit.
pub fn commutator_e(x: &HPolynomial, theory: Theory) -> RelElem {
    right_image(x, theory).sub(&RelElem::e(theory).left_mul(x))
}

// ---- Skew-commutator and determinant identities ----

/// The named two-sided identities that can be checked at given indices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SkewIdentity {
    SkewCommutator1,
    SkewCommutator4,
    DetGym3Plus,
    DetGym3Minus,
}

impl SkewIdentity {
    pub fn parse(id: &str) -> Result<Self> {
        match id {
            "skewcommutator1" => Ok(Self::SkewCommutator1),
            "skewcommutator4" => Ok(Self::SkewCommutator4),
            "detgym3_plus" => Ok(Self::DetGym3Plus),
            "detgym3_minus" => Ok(Self::DetGym3Minus),
            other => Err(Error::BadInput(format!("unknown identity `{other}`"))),
        }
    }
}

/// h̃_{n+k} + h̃_{n−k}, the symmetric pair entering every determinant row.
fn h_pair(n: i64, k: i64) -> HPolynomial {
    HPolynomial::h(n + k).add(&HPolynomial::h(n - k))
}

/// Left-multiplied pair: (h̃_{n+k} + h̃_{n−k})·e.
fn left_pair(n: i64, k: i64) -> RelElem {
    RelElem::e(Theory::Dubrovnik).left_mul(&h_pair(n, k))
}

/// Right-multiplied pair: e·(h̃_{n+k} + h̃_{n−k}).
fn right_pair(n: i64, k: i64) -> RelElem {
    right_image(&h_pair(n, k), Theory::Dubrovnik)
}

/// The symmetrized commutator t(n, k).
fn t_pair(n: i64, k: i64) -> RelElem {
    left_pair(n, k).sub(&right_pair(n, k))
}

/// The skew commutators ς±(n, k).
fn skew_pair(n: i64, k: i64, positive: bool) -> RelElem {
    let (outer, inner, shift) = if positive {
        (RingElem::s_pow(-1), RingElem::s_pow(1), 1)
    } else {
        (RingElem::s_pow(1), RingElem::s_pow(-1), -1)
    };
    left_pair(n, k)
        .scale(&outer)
        .sub(&right_pair(n, k).scale(&inner))
        .shift_winding(shift)
}

fn require(param: Option<i64>, name: &'static str, id: &'static str) -> Result<i64> {
    param.ok_or(Error::MissingParameter(name, id))
}

/// Decide one instance of a named identity by normal-form comparison.
pub fn skew_identity_check(
    id: SkewIdentity,
    n: i64,
    m: Option<i64>,
    k: Option<i64>,
) -> Result<bool> {
    match id {
        SkewIdentity::SkewCommutator1 => {
            if n < -1 {
                return Err(Error::IndexOutOfRange(format!(
                    "skewcommutator1 requires n >= -1, got {n}"
                )));
            }
            let pair = HPolynomial::h(n + 2).add(&HPolynomial::h(n));
            let lhs = right_image(&pair, Theory::Dubrovnik)
                .sub(&RelElem::e(Theory::Dubrovnik).left_mul(&pair));
            let mid = HPolynomial::h(n + 1);
            let up = right_image(&mid, Theory::Dubrovnik);
            let down = RelElem::e(Theory::Dubrovnik).left_mul(&mid);
            let rhs = up
                .shift_winding(1)
                .scale(&RingElem::s_pow(1))
                .add(&up.shift_winding(-1).scale(&RingElem::s_pow(-1)))
                .sub(&down.shift_winding(1).scale(&RingElem::s_pow(-1)))
                .sub(&down.shift_winding(-1).scale(&RingElem::s_pow(1)));
            Ok(lhs == rhs)
        }
        SkewIdentity::SkewCommutator4 => {
            let k = require(k, "k", "skewcommutator4")?;
            if k < 0 {
                return Err(Error::IndexOutOfRange(format!(
                    "skewcommutator4 requires k >= 0, got {k}"
                )));
            }
            let lhs = t_pair(n, k + 1).add(&t_pair(n, k - 1));
            let rhs = skew_pair(n, k, true).add(&skew_pair(n, k, false));
            Ok(lhs == rhs)
        }
        SkewIdentity::DetGym3Plus | SkewIdentity::DetGym3Minus => {
            let positive = id == SkewIdentity::DetGym3Plus;
            let name = if positive { "detgym3_plus" } else { "detgym3_minus" };
            let m = require(m, "m", name)?;
            let k = require(k, "k", name)?;
            if n < 0 || m < 0 || k < 0 {
                return Err(Error::IndexOutOfRange(format!(
                    "{name} requires nonnegative indices, got ({n}, {m}, {k})"
                )));
            }
            let det = |first: &dyn Fn(i64) -> RelElem| -> RelElem {
                first(n)
                    .mul(&skew_pair(m, k, positive))
                    .sub(&first(m).mul(&skew_pair(n, k, positive)))
            };
            let lhs = det(&|j| left_pair(j, k));
            let rhs = det(&|j| right_pair(j, k));
            let factor = RingElem::s_pow(if positive { 2 } else { -2 });
            Ok(lhs == rhs.scale(&factor))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::brace;

    fn d() -> Theory {
        Theory::Dubrovnik
    }

    fn h() -> Theory {
        Theory::Homflypt
    }

    fn weight_up() -> RingElem {
        RingElem::one().sub(&RingElem::monomial(2, 0))
    }

    fn weight_down() -> RingElem {
        RingElem::one().sub(&RingElem::monomial(-2, 0))
    }

    #[test]
    fn transition_base_cases() {
        for theory in [d(), h()] {
            for kind in [TransitionKind::D, TransitionKind::DBar] {
                let t0 = transition(0, kind, theory);
                assert_eq!(t0.value().len(), 1);
                assert!(t0.coeff(0).is_one());
            }
        }
    }

    #[test]
    fn transition_examples() {
        let t1 = transition(1, TransitionKind::D, d());
        assert_eq!(t1.coeff(1), weight_up().mul(&RingElem::s_pow(-1)));
        assert_eq!(t1.coeff(-1), weight_down().mul(&RingElem::s_pow(1)));
        assert_eq!(t1.value().len(), 2);

        let t2 = transition(2, TransitionKind::D, d());
        assert_eq!(t2.coeff(2), weight_up().mul(&RingElem::s_pow(-2)));
        assert_eq!(t2.coeff(-2), weight_down().mul(&RingElem::s_pow(2)));
        assert_eq!(t2.coeff(0), weight_up().add(&weight_down()));
        assert_eq!(t2.value().len(), 3);
    }

    #[test]
    fn homflypt_transitions_are_single_terms() {
        for i in 1..=5 {
            let fwd = transition(i, TransitionKind::D, h());
            assert_eq!(fwd.coeff(i), weight_up().mul(&RingElem::s_pow(-i)));
            assert_eq!(fwd.value().len(), 1);
            let bwd = transition(i, TransitionKind::DBar, h());
            assert_eq!(bwd.coeff(i), weight_down().mul(&RingElem::s_pow(i)));
            assert_eq!(bwd.value().len(), 1);
        }
    }

    #[test]
    fn right_action_on_unit() {
        let acted = right_act(&HPolynomial::h(1), &RelElem::e(d()));
        let mut expect = RelElem::monomial(d(), 0, Partition::new(vec![1]), RingElem::one());
        expect.insert_add(1, Partition::empty(), brace(1));
        expect.insert_add(-1, Partition::empty(), brace(1).neg());
        assert_eq!(acted, expect);

        let acted_h = right_act(&HPolynomial::h(1), &RelElem::e(h()));
        let mut expect = RelElem::monomial(h(), 0, Partition::new(vec![1]), RingElem::one());
        expect.insert_add(1, Partition::empty(), brace(1));
        assert_eq!(acted_h, expect);
    }

    #[test]
    fn unit_of_algebra_acts_trivially() {
        let w = RelElem::monomial(d(), 2, Partition::new(vec![2, 1]), brace(3))
            .add(&RelElem::a_power(d(), -1));
        assert_eq!(right_act(&HPolynomial::one(), &w), w);
        assert_eq!(w.left_mul(&HPolynomial::one()), w);
    }

    #[test]
    fn power_sum_commutators() {
        for k in 1..=6 {
            let com = commutator_e(&newton_power_sum(k), d());
            let expect = RelElem::a_power(d(), k)
                .sub(&RelElem::a_power(d(), -k))
                .scale(&brace(k));
            assert_eq!(com, expect, "Dubrovnik k = {k}");

            let com = commutator_e(&newton_power_sum(k), h());
            let expect = RelElem::a_power(h(), k).scale(&brace(k));
            assert_eq!(com, expect, "HOMFLYPT k = {k}");
        }
    }

    #[test]
    fn winding_twisted_commutators() {
        for k in 1..=4 {
            let image = right_image(&newton_power_sum(k), d());
            let left = RelElem::e(d()).left_mul(&newton_power_sum(k));
            for i in -3..=3i64 {
                let diff = image.shift_winding(i).sub(&left.shift_winding(i));
                let expect = RelElem::a_power(d(), k + i)
                    .sub(&RelElem::a_power(d(), -k + i))
                    .scale(&brace(k));
                assert_eq!(diff, expect, "k = {k}, i = {i}");
            }
        }
    }

    #[test]
    fn transition_families_invert_each_other() {
        for theory in [d(), h()] {
            for n in 1..=8 {
                let start = RelElem::monomial(theory, 0, Partition::new(vec![n]), RingElem::one());
                let there = expand_through(&start, TransitionKind::DBar);
                assert_eq!(expand_through(&there, TransitionKind::D), start, "{theory} n = {n}");
                let back = expand_through(&start, TransitionKind::D);
                assert_eq!(expand_through(&back, TransitionKind::DBar), start, "{theory} n = {n}");
            }
        }
    }

    #[test]
    fn action_operators_commute() {
        let samples = [
            RelElem::e(d()),
            RelElem::monomial(d(), -2, Partition::new(vec![2]), RingElem::s_pow(1)),
            RelElem::monomial(d(), 1, Partition::new(vec![1, 1]), brace(2))
                .add(&RelElem::a_power(d(), 3)),
        ];
        for w in &samples {
            for m in 1..=5 {
                for n in 1..=5 {
                    let mn = right_act(&HPolynomial::h(m), &right_act(&HPolynomial::h(n), w));
                    let nm = right_act(&HPolynomial::h(n), &right_act(&HPolynomial::h(m), w));
                    assert_eq!(mn, nm, "m = {m}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn skew_commutator_identities() {
        for n in -1..=6 {
            assert!(skew_identity_check(SkewIdentity::SkewCommutator1, n, None, None).unwrap());
        }
        for n in 0..=5 {
            for k in 0..=3 {
                assert!(
                    skew_identity_check(SkewIdentity::SkewCommutator4, n, None, Some(k)).unwrap(),
                    "n = {n}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn commutator_from_skew_commutators() {
        let inv_brace_plus = crate::ring::brace_plus(1).inv().unwrap();
        let inv_brace = brace(1).inv().unwrap();
        for n in 0..=5 {
            for k in 0..=3 {
                let plus_part = skew_pair(n, k, true).shift_winding(-1);
                let minus_part = skew_pair(n, k, false).shift_winding(1);
                let commutator = plus_part.add(&minus_part).scale(&inv_brace_plus);
                assert_eq!(t_pair(n, k), commutator, "n = {n}, k = {k}");
                let anticommutator = plus_part.sub(&minus_part).scale(&inv_brace.neg());
                assert_eq!(
                    left_pair(n, k).add(&right_pair(n, k)),
                    anticommutator,
                    "n = {n}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn determinant_identities() {
        for n in 0..=4 {
            for m in 0..=4 {
                for k in 0..=4 {
                    assert!(
                        skew_identity_check(SkewIdentity::DetGym3Plus, n, Some(m), Some(k))
                            .unwrap(),
                        "plus at ({n}, {m}, {k})"
                    );
                    assert!(
                        skew_identity_check(SkewIdentity::DetGym3Minus, n, Some(m), Some(k))
                            .unwrap(),
                        "minus at ({n}, {m}, {k})"
                    );
                }
            }
        }
    }

    #[test]
    fn identity_argument_errors() {
        assert!(matches!(
            skew_identity_check(SkewIdentity::SkewCommutator1, -2, None, None),
            Err(Error::IndexOutOfRange(_))
        ));
        assert!(matches!(
            skew_identity_check(SkewIdentity::SkewCommutator4, 1, None, None),
            Err(Error::MissingParameter("k", _))
        ));
        assert!(matches!(
            skew_identity_check(SkewIdentity::DetGym3Plus, 1, None, Some(2)),
            Err(Error::MissingParameter("m", _))
        ));
        assert!(SkewIdentity::parse("detgym3_minus").is_ok());
        assert!(SkewIdentity::parse("detgym5").is_err());
    }

    #[test]
    fn serialization_shape() {
        let w = right_act(&HPolynomial::h(1), &RelElem::e(d()));
        let json = w.to_json();
        assert_eq!(json["theory"], "D");
        let terms = json["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0][0], 1);
        assert_eq!(terms[0][1], serde_json::json!([]));
        assert_eq!(terms[1][1], serde_json::json!([1]));
        assert_eq!(
            format!("{w}"),
            "(s - s^-1)*a + h[1]*e - (s - s^-1)*a^-1"
        );
    }
}

//! Central meridian images expanded in commuting Jucys-Murphy symbols, the
//! content-eigenvalue formulas they specialize to, and the substitution
//! connecting the two. The first symbol is the identity, so expressions
//! carry exponent vectors only for the second symbol onward.
//!
//! The expansion sums over every strand including the first; the variant
//! that starts at the second strand is kept alongside for comparison, since
//! only the full sum matches the content eigenvalues.

use std::collections::BTreeMap;
use std::fmt;

use crate::annulus::write_term;
use crate::error::{Error, Result};
use crate::partitions::{Partition, UpDownTableau};
use crate::ring::{brace, RingElem};
use crate::solid_torus::{meridian_eigenvalue, ExtRingElem};

// ---- Laurent polynomials in the commuting symbols ----

/// A Laurent polynomial in the symbols M_2, ..., M_n: each term keys an
/// exponent vector for those symbols to an extended coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JMExpression {
    strands: i64,
    terms: BTreeMap<Vec<i64>, ExtRingElem>,
}

impl JMExpression {
    pub fn zero(strands: i64) -> Self {
        assert!(strands >= 1, "at least one strand");
        Self {
            strands,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(strands: i64, c: ExtRingElem) -> Self {
        let mut out = Self::zero(strands);
        out.insert_add(vec![0; (strands - 1) as usize], c);
        out
    }

    /// A single term; the exponent vector addresses M_2 through M_n.
    pub fn monomial(strands: i64, exponents: Vec<i64>, c: ExtRingElem) -> Self {
        assert_eq!(
            exponents.len(),
            (strands - 1) as usize,
            "one exponent per symbol from the second strand on"
        );
        let mut out = Self::zero(strands);
        out.insert_add(exponents, c);
        out
    }

    pub fn strands(&self) -> i64 {
        self.strands
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &ExtRingElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[i64]) -> ExtRingElem {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    fn insert_add(&mut self, exponents: Vec<i64>, c: ExtRingElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
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
        assert_eq!(self.strands, other.strands, "strand counts must match");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &ExtRingElem) -> Self {
        let mut out = Self::zero(self.strands);
        for (e, k) in &self.terms {
            out.insert_add(e.clone(), k.mul(c));
        }
        out
    }

    fn exponent_body(exponents: &[i64]) -> Option<String> {
        let pieces: Vec<String> = exponents
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(i, e)| {
                let symbol = i + 2;
                if *e == 1 {
                    format!("M{symbol}")
                } else {
                    format!("M{symbol}^{e}")
                }
            })
            .collect();
        if pieces.is_empty() {
            None
        } else {
            Some(pieces.join("*"))
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "strands": self.strands,
            "terms": serde_json::Value::Array(
                self.terms
                    .iter()
                    .rev()
                    .map(|(e, c)| serde_json::json!([e, c.to_json()]))
                    .collect(),
            ),
        })
    }
}

impl fmt::Display for JMExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (exponents, c)) in self.terms.iter().rev().enumerate() {
            let body = Self::exponent_body(exponents);
            match (c.as_single(), &body) {
                (Some((symbols, k)), _) => {
                    let combined = match (symbols, &body) {
                        (Some(g), Some(m)) => Some(format!("{g}*{m}")),
                        (Some(g), None) => Some(g),
                        (None, Some(m)) => Some(m.clone()),
                        (None, None) => None,
                    };
                    write_term(f, pos, &k, combined.as_deref())?;
                }
                (None, Some(m)) => {
                    if pos > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "({c})*{m}")?;
                }
                (None, None) => {
                    if pos > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}")?;
                }
            }
        }
        Ok(())
    }
}

// ---- Meridian images ----

fn psi_terms(n: i64, k: i64, first_index: i64) -> JMExpression {
    assert!(n >= 1 && k >= 1, "strand count and curve index are positive");
    let mut out = JMExpression::constant(n, ExtRingElem::symbol(k));
    for i in first_index..=n {
        if i == 1 {
            let constant = brace(k)
                .mul(&RingElem::v_pow(-k).sub(&RingElem::v_pow(k)));
            out = out.add(&JMExpression::constant(n, ExtRingElem::from_ring(constant)));
            continue;
        }
        let slot = (i - 2) as usize;
        for (sign, exponent) in [(1i64, k), (-1, -k)] {
            let mut exponents = vec![0; (n - 1) as usize];
            exponents[slot] = exponent;
            let base = brace(k).mul(&RingElem::v_pow(-sign * k));
            let coefficient = if sign == 1 { base } else { base.neg() };
            out = out.add(&JMExpression::monomial(
                n,
                exponents,
                ExtRingElem::from_ring(coefficient),
            ));
        }
    }
    out
}

/// Expansion of the k-th meridian image over all n strands.
pub fn psi_expansion(n: i64, k: i64) -> JMExpression {
    psi_terms(n, k, 1)
}

/// The same expansion with the identity strand omitted, as printed; kept
/// for comparison because it misses the constant that the content
/// eigenvalues require.
pub fn psi_expansion_from_index_two(n: i64, k: i64) -> JMExpression {
    psi_terms(n, k, 2)
}

/// Content eigenvalue of the k-th meridian on a partition-indexed closure.
pub fn zl_eigenvalue(k: i64, lambda: &Partition) -> ExtRingElem {
    meridian_eigenvalue(k, lambda)
}

// ---- Content substitution ----

fn added_content(prev: &Partition, next: &Partition) -> Result<i64> {
    if next.size() != prev.size() + 1 || !next.contains(prev) {
        return Err(Error::ShapeMismatch(format!(
            "step from {prev} to {next} does not add a single cell"
        )));
    }
    for i in 0..next.len() {
        let row = i as i64;
        if next.row(i) != prev.row(i) {
            return Ok(next.row(i) - 1 - row);
        }
    }
    Err(Error::ShapeMismatch(format!(
        "no added cell between {prev} and {next}"
    )))
}

/// Substitute the braiding eigenvalue of each added cell for its symbol:
/// the i-th symbol becomes s to twice the content of the cell added at the
/// i-th step of the filling.
pub fn jm_substitute(expr: &JMExpression, filling: &UpDownTableau) -> Result<ExtRingElem> {
    let shapes = filling.seq();
    if shapes.len() != expr.strands() as usize {
        return Err(Error::ShapeMismatch(format!(
            "filling of length {} against {} strands",
            shapes.len(),
            expr.strands()
        )));
    }
    let mut contents = Vec::with_capacity(shapes.len().saturating_sub(1));
    for window in shapes.windows(2) {
        contents.push(added_content(&window[0], &window[1])?);
    }
    let mut out = ExtRingElem::zero();
    for (exponents, c) in expr.iter() {
        let mut weight = RingElem::one();
        for (slot, e) in exponents.iter().enumerate() {
            if *e != 0 {
                weight = weight.mul(&RingElem::s_pow(2 * contents[slot] * e));
            }
        }
        out = out.add(&c.scale(&weight));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{partitions_up_to, standard_tableaux};
    use crate::ring::{c_lambda, delta_d};
    use crate::solid_torus::ExtRingElem;

    fn part(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn single_strand_expansion() {
        for k in 1..=4 {
            let expansion = psi_expansion(1, k);
            let constant = brace(k).mul(&RingElem::v_pow(-k).sub(&RingElem::v_pow(k)));
            let expect = JMExpression::constant(
                1,
                ExtRingElem::symbol(k).add(&ExtRingElem::from_ring(constant)),
            );
            assert_eq!(expansion, expect, "k = {k}");
        }
    }

    #[test]
    fn two_strand_expansion_shape() {
        let expansion = psi_expansion(2, 1);
        let constant = ExtRingElem::symbol(1).add(&ExtRingElem::from_ring(
            brace(1).mul(&RingElem::v_pow(-1).sub(&RingElem::v_pow(1))),
        ));
        assert_eq!(expansion.coeff(&[0]), constant);
        assert_eq!(
            expansion.coeff(&[1]),
            ExtRingElem::from_ring(brace(1).mul(&RingElem::v_pow(-1)))
        );
        assert_eq!(
            expansion.coeff(&[-1]),
            ExtRingElem::from_ring(brace(1).mul(&RingElem::v_pow(1)).neg())
        );
    }

    #[test]
    fn three_strand_squared_expansion() {
        let expansion = psi_expansion(3, 2);
        for slot in 0..2 {
            let mut up = vec![0; 2];
            up[slot] = 2;
            assert_eq!(
                expansion.coeff(&up),
                ExtRingElem::from_ring(brace(2).mul(&RingElem::v_pow(-2)))
            );
            let mut down = vec![0; 2];
            down[slot] = -2;
            assert_eq!(
                expansion.coeff(&down),
                ExtRingElem::from_ring(brace(2).mul(&RingElem::v_pow(2)).neg())
            );
        }
    }

    #[test]
    fn eigenvalue_examples() {
        for k in 1..=3 {
            assert_eq!(
                zl_eigenvalue(k, &Partition::empty()),
                ExtRingElem::symbol(k),
                "k = {k}"
            );
        }

        let single = zl_eigenvalue(1, &part(&[1]));
        let expect = delta_d().add(&brace(1).mul(&RingElem::v_pow(-1).sub(&RingElem::v_pow(1))));
        assert_eq!(single, ExtRingElem::from_ring(expect));

        let column = zl_eigenvalue(2, &part(&[1, 1]));
        let inner = RingElem::v_pow(-2)
            .mul(&RingElem::one().add(&RingElem::s_pow(-4)))
            .sub(&RingElem::v_pow(2).mul(&RingElem::one().add(&RingElem::s_pow(4))));
        let expect = ExtRingElem::symbol(2).add(&ExtRingElem::from_ring(brace(2).mul(&inner)));
        assert_eq!(column, expect);
    }

    #[test]
    fn eigenvalue_specializes_to_content_formula() {
        for lambda in partitions_up_to(6) {
            assert_eq!(
                zl_eigenvalue(1, &lambda),
                ExtRingElem::from_ring(c_lambda(&lambda)),
                "at {lambda}"
            );
        }
    }

    #[test]
    fn eigenvalues_distinct_for_each_power() {
        let shapes = partitions_up_to(6);
        for k in 1..=3 {
            let values: Vec<ExtRingElem> =
                shapes.iter().map(|l| zl_eigenvalue(k, l)).collect();
            for i in 0..values.len() {
                for j in i + 1..values.len() {
                    assert_ne!(
                        values[i], values[j],
                        "k = {k}: {} vs {}",
                        shapes[i], shapes[j]
                    );
                }
            }
        }
    }

    #[test]
    fn substitution_identity_on_single_strand() {
        let expansion = psi_expansion(1, 3);
        let filling = UpDownTableau::try_new(vec![part(&[1])]).unwrap();
        let substituted = jm_substitute(&expansion, &filling).unwrap();
        assert_eq!(substituted, expansion.coeff(&[]));
    }

    #[test]
    fn substitution_on_a_row() {
        let expansion = psi_expansion(2, 1);
        let filling = UpDownTableau::try_new(vec![part(&[1]), part(&[2])]).unwrap();
        let substituted = jm_substitute(&expansion, &filling).unwrap();
        let expect = delta_d()
            .add(&brace(1).mul(&RingElem::v_pow(-1).sub(&RingElem::v_pow(1))))
            .add(&brace(1).mul(
                &RingElem::v_pow(-1)
                    .mul(&RingElem::s_pow(2))
                    .sub(&RingElem::v_pow(1).mul(&RingElem::s_pow(-2))),
            ));
        assert_eq!(substituted, ExtRingElem::from_ring(expect));
        assert_eq!(substituted, zl_eigenvalue(1, &part(&[2])));
    }

    #[test]
    fn substitution_recovers_content_eigenvalue() {
        for lambda in partitions_up_to(5) {
            if lambda.is_empty() {
                continue;
            }
            let n = lambda.size();
            for k in 1..=4 {
                let expansion = psi_expansion(n, k);
                for filling in standard_tableaux(&lambda) {
                    assert_eq!(
                        jm_substitute(&expansion, &filling).unwrap(),
                        zl_eigenvalue(k, &lambda),
                        "shape {lambda}, k = {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn printed_variant_misses_the_identity_strand() {
        let full = psi_expansion(2, 1);
        let printed = psi_expansion_from_index_two(2, 1);
        let filling = UpDownTableau::try_new(vec![part(&[1]), part(&[2])]).unwrap();
        let gap = jm_substitute(&full, &filling)
            .unwrap()
            .sub(&jm_substitute(&printed, &filling).unwrap());
        let expect = brace(1).mul(&RingElem::v_pow(-1).sub(&RingElem::v_pow(1)));
        assert_eq!(gap, ExtRingElem::from_ring(expect));
        assert_ne!(
            jm_substitute(&printed, &filling).unwrap(),
            zl_eigenvalue(1, &part(&[2]))
        );
    }

    #[test]
    fn substitution_rejects_mismatched_fillings() {
        let expansion = psi_expansion(3, 1);
        let short = UpDownTableau::try_new(vec![part(&[1]), part(&[2])]).unwrap();
        assert!(matches!(
            jm_substitute(&expansion, &short),
            Err(Error::ShapeMismatch(_))
        ));

        let with_removal = UpDownTableau::try_new(vec![
            part(&[1]),
            part(&[2]),
            part(&[1]),
        ])
        .unwrap();
        assert!(matches!(
            jm_substitute(&psi_expansion(3, 1), &with_removal),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn serialization_shape() {
        let expansion = psi_expansion(2, 1);
        let json = expansion.to_json();
        assert_eq!(json["strands"], 2);
        let terms = json["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0][0], serde_json::json!([1]));
        assert_eq!(terms[1][0], serde_json::json!([0]));
        assert_eq!(terms[2][0], serde_json::json!([-1]));

        let text = format!("{expansion}");
        assert!(text.contains("M2"), "display was {text}");
        assert!(text.contains("g1") || text.contains("v^-1"), "display was {text}");
    }
}

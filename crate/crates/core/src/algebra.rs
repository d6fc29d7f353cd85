//! The free twisted descent algebra: sparse integer combinations of set
//! compositions with the convolution product `∗`, the composition product
//! `∘`, the coproduct `δ`, and the right action of the symmetric group.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::{FiniteSet, Permutation, SetComposition};
use crate::error::{Error, Result};
use crate::limits::Limits;

pub type Coeff = BigInt;

fn accumulate<K: Ord>(terms: &mut BTreeMap<K, Coeff>, key: K, coeff: Coeff) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// An element of the twisted descent algebra.
///
/// Terms are kept in the canonical order of [`SetComposition`]; no stored
/// coefficient is zero, so the zero element is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TDElement {
    terms: BTreeMap<SetComposition, Coeff>,
}

impl TDElement {
    pub fn zero() -> Self {
        TDElement::default()
    }

    /// The unit `1_∅` of the convolution product.
    pub fn one() -> Self {
        Self::basis(SetComposition::empty())
    }

    pub fn basis(sc: SetComposition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(sc, Coeff::one());
        TDElement { terms }
    }

    /// The single-block element `1_S`, the `∘`-unit of the component of degree `S`.
    pub fn characteristic(s: FiniteSet) -> Self {
        Self::basis(SetComposition::single(s))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (SetComposition, Coeff)>) -> Self {
        let mut out = TDElement::zero();
        for (sc, c) in terms {
            out.add_term(sc, c);
        }
        out
    }

    pub fn add_term(&mut self, sc: SetComposition, coeff: Coeff) {
        accumulate(&mut self.terms, sc, coeff);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SetComposition, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, sc: &SetComposition) -> Coeff {
        self.terms.get(sc).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `a ∗ b`: concatenation on disjoint supports, zero on overlap.
    pub fn convolve(&self, other: &TDElement) -> TDElement {
        let mut out = TDElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(ab) = a.concat(b) {
                    out.add_term(ab, ca * cb);
                }
            }
        }
        out
    }

    /// `a ∘ b`: blockwise intersections on equal supports, zero across supports.
    pub fn compose(&self, other: &TDElement) -> TDElement {
        let mut out = TDElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(ab) = a.compose(b) {
                    out.add_term(ab, ca * cb);
                }
            }
        }
        out
    }

    /// `δ(a)` under the default limits.
    pub fn coproduct(&self) -> Result<TensorElement> {
        self.coproduct_limited(&Limits::default())
    }

    /// `δ(a)`: every blockwise split of every term, empty blocks dropped.
    pub fn coproduct_limited(&self, limits: &Limits) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (sc, c) in &self.terms {
            let n = sc.degree();
            if n >= 64 || (1u64 << n) > limits.max_coproduct_terms {
                return Err(Error::size(
                    "coproduct splits",
                    1u128.checked_shl(n as u32).unwrap_or(u128::MAX),
                    limits.max_coproduct_terms,
                ));
            }
            for (l, r) in sc.splits() {
                out.add_term(l, r, c.clone());
            }
        }
        Ok(out)
    }

    /// Right action `1_{(S_1..S_k)} · σ = 1_{(σ⁻¹(S_1)..σ⁻¹(S_k))}`, extended linearly.
    pub fn act(&self, p: &Permutation) -> Result<TDElement> {
        let mut out = TDElement::zero();
        for (sc, c) in &self.terms {
            out.add_term(sc.act(p)?, c.clone());
        }
        Ok(out)
    }

    /// The terms whose support is exactly `s`.
    pub fn graded_component(&self, s: &FiniteSet) -> TDElement {
        TDElement {
            terms: self
                .terms
                .iter()
                .filter(|(sc, _)| sc.degree() == s.len() && &sc.support() == s)
                .map(|(sc, c)| (sc.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Coeff) -> TDElement {
        if k.is_zero() {
            return TDElement::zero();
        }
        TDElement {
            terms: self.terms.iter().map(|(sc, c)| (sc.clone(), c * k)).collect(),
        }
    }
}

impl Add for &TDElement {
    type Output = TDElement;

    fn add(self, rhs: &TDElement) -> TDElement {
        let mut out = self.clone();
        for (sc, c) in &rhs.terms {
            out.add_term(sc.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TDElement {
    type Output = TDElement;

    fn sub(self, rhs: &TDElement) -> TDElement {
        self + &(-rhs)
    }
}

impl Neg for &TDElement {
    type Output = TDElement;

    fn neg(self) -> TDElement {
        TDElement {
            terms: self.terms.iter().map(|(sc, c)| (sc.clone(), -c)).collect(),
        }
    }
}

impl Mul<&TDElement> for &TDElement {
    type Output = TDElement;

    /// Convolution.
    fn mul(self, rhs: &TDElement) -> TDElement {
        self.convolve(rhs)
    }
}

impl FromIterator<(SetComposition, Coeff)> for TDElement {
    fn from_iter<I: IntoIterator<Item = (SetComposition, Coeff)>>(iter: I) -> Self {
        TDElement::from_terms(iter)
    }
}

/// A rank-two tensor in `𝒯 ⊗ 𝒯`, the codomain of `δ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TensorElement {
    terms: BTreeMap<(SetComposition, SetComposition), Coeff>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn basis(left: SetComposition, right: SetComposition) -> Self {
        let mut out = TensorElement::zero();
        out.add_term(left, right, Coeff::one());
        out
    }

    /// `a ⊗ b` for arbitrary elements.
    pub fn tensor(a: &TDElement, b: &TDElement) -> Self {
        let mut out = TensorElement::zero();
        for (l, cl) in a.terms() {
            for (r, cr) in b.terms() {
                out.add_term(l.clone(), r.clone(), cl * cr);
            }
        }
        out
    }

    pub fn add_term(&mut self, left: SetComposition, right: SetComposition, coeff: Coeff) {
        accumulate(&mut self.terms, (left, right), coeff);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SetComposition, &SetComposition, &Coeff)> {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn coeff(&self, left: &SetComposition, right: &SetComposition) -> Coeff {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn legwise(
        &self,
        other: &TensorElement,
        op: impl Fn(&SetComposition, &SetComposition) -> Option<SetComposition>,
    ) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a1, a2), ca) in &self.terms {
            for ((b1, b2), cb) in &other.terms {
                if let (Some(l), Some(r)) = (op(a1, b1), op(a2, b2)) {
                    out.add_term(l, r, ca * cb);
                }
            }
        }
        out
    }

    /// `x ∗₂ y`: convolution on each leg.
    pub fn convolve(&self, other: &TensorElement) -> TensorElement {
        self.legwise(other, SetComposition::concat)
    }

    /// `x ∘₂ y`: composition product on each leg.
    pub fn compose(&self, other: &TensorElement) -> TensorElement {
        self.legwise(other, SetComposition::compose)
    }

    /// `m(x)`: convolve the two legs of every term.
    pub fn multiply_legs(&self) -> TDElement {
        let mut out = TDElement::zero();
        for ((l, r), c) in &self.terms {
            if let Some(lr) = l.concat(r) {
                out.add_term(lr, c.clone());
            }
        }
        out
    }

    /// Exchanges the two legs.
    pub fn swap(&self) -> TensorElement {
        TensorElement {
            terms: self
                .terms
                .iter()
                .map(|((l, r), c)| ((r.clone(), l.clone()), c.clone()))
                .collect(),
        }
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;

    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), c) in &rhs.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_element, parse_tensor};

    fn el(s: &str) -> TDElement {
        parse_element(s).unwrap()
    }

    fn tensor(s: &str) -> TensorElement {
        parse_tensor(s).unwrap()
    }

    fn perm(images: &[u32]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(el("[{3,5}]").convolve(&el("[{1,4}]")), el("[{3,5}|{1,4}]"));
        assert!(el("[{1,2}]").convolve(&el("[{1,2}]")).is_zero());
        let x = el("2*[{3,5}|{1,4}] - [{2}]");
        assert_eq!(TDElement::one().convolve(&x), x);
        assert_eq!(x.convolve(&TDElement::one()), x);
    }

    #[test]
    fn composition_examples() {
        assert_eq!(el("[{3,5}|{1,4}]").compose(&el("[{5}|{1,3,4}]")), el("[{5}|{3}|{1,4}]"));
        assert_eq!(
            el("[{1,3,5}|{2,4}]").compose(&el("[{3}|{4}|{5}|{2}|{1}]")),
            el("[{3}|{5}|{1}|{4}|{2}]")
        );
        assert!(el("[{1,2}]").compose(&el("[{3}]")).is_zero());
    }

    #[test]
    fn mixed_support_composition_is_termwise() {
        let a = el("[{1}] + [{1}|{2}]");
        let b = el("[{1,2}] + 3*[{1}]");
        assert_eq!(a.compose(&b), el("3*[{1}] + [{1}|{2}]"));
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(
            el("[{1,2}]").coproduct().unwrap(),
            tensor("[]⊗[{1,2}] + [{1}]⊗[{2}] + [{2}]⊗[{1}] + [{1,2}]⊗[]")
        );
        assert_eq!(TDElement::one().coproduct().unwrap(), tensor("[]⊗[]"));
        assert_eq!(
            el("[{1}|{2}]").coproduct().unwrap(),
            tensor("[]⊗[{1}|{2}] + [{1}]⊗[{2}] + [{2}]⊗[{1}] + [{1}|{2}]⊗[]")
        );
    }

    #[test]
    fn coproduct_cap() {
        let limits = Limits {
            max_coproduct_terms: 4,
            ..Limits::default()
        };
        assert!(el("[{1,2}]").coproduct_limited(&limits).is_ok());
        let err = el("[{1,2,3}]").coproduct_limited(&limits).unwrap_err();
        assert!(err.is_size_limit());
    }

    #[test]
    fn tensor_convolution_examples() {
        assert_eq!(
            tensor("[{1}]⊗[{2}]").convolve(&tensor("[{2}]⊗[{1}]")),
            tensor("[{1}|{2}]⊗[{2}|{1}]")
        );
        let d = el("[{1,2}]").coproduct().unwrap();
        assert_eq!(
            d.convolve(&d),
            tensor("2*[{1,2}]⊗[{1,2}] + [{1}|{2}]⊗[{2}|{1}] + [{2}|{1}]⊗[{1}|{2}]")
        );
        assert!(d.convolve(&TensorElement::zero()).is_zero());
    }

    #[test]
    fn tensor_composition_examples() {
        let x = tensor("[{1}]⊗[{2}]");
        assert_eq!(x.compose(&x), x);
        assert!(x.compose(&tensor("[{2}]⊗[{1}]")).is_zero());
        let a = el("[{1}|{2}]");
        let b = el("[{2}|{1}]");
        let lhs = a.coproduct().unwrap().compose(&b.coproduct().unwrap());
        assert_eq!(lhs, a.compose(&b).coproduct().unwrap());
        assert_eq!(a.compose(&b), a);
    }

    #[test]
    fn multiply_legs_examples() {
        assert_eq!(tensor("[{1}]⊗[{2}]").multiply_legs(), el("[{1}|{2}]"));
        assert!(tensor("[{1,2}]⊗[{1,2}]").multiply_legs().is_zero());
        assert_eq!(
            el("[{1,2}]").coproduct().unwrap().multiply_legs(),
            el("2*[{1,2}] + [{1}|{2}] + [{2}|{1}]")
        );
    }

    #[test]
    fn action_examples() {
        assert_eq!(el("[{1}|{2}]").act(&perm(&[2, 1])).unwrap(), el("[{2}|{1}]"));
        assert_eq!(el("[{1,2}]").act(&perm(&[2, 1])).unwrap(), el("[{1,2}]"));
        assert_eq!(el("[{1,3}|{2}]").act(&perm(&[3, 1, 2])).unwrap(), el("[{1,2}|{3}]"));
        assert!(el("[{3}]").act(&perm(&[2, 1])).is_err());
    }

    #[test]
    fn graded_components() {
        let s12 = FiniteSet::range(2);
        assert_eq!(el("[{1}] + [{1}|{2}]").graded_component(&s12), el("[{1}|{2}]"));
        assert_eq!(el("3*[] + [{1}]").graded_component(&FiniteSet::empty()), el("3*[]"));
        assert!(TDElement::zero().graded_component(&s12).is_zero());
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = el("[{1}] - [{1}]");
        assert!(x.is_zero());
        let y = &el("2*[{1}]") - &el("2*[{1}]");
        assert!(y.is_zero());
    }
}

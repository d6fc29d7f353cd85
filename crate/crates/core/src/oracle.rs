//! Brute-force ground truth for the symbolic products.
//!
//! The free twisted bialgebra `ℬ` on primitive generators `α_S` has, in
//! degree `S`, the words `α_{S_1}⋯α_{S_k}` with `S_1 ⊔ ⋯ ⊔ S_k = S` as a
//! basis. Restricted to the subsets of a finite universe this basis is
//! finite, and a graded endomorphism is a finite table. Basis elements of
//! the twisted descent algebra are realised here as actual endomorphisms
//! (iterated convolutions of characteristic maps), so the formulas in
//! [`crate::algebra`] can be checked against plain function composition.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{Coeff, TDElement};
use crate::combinat::{enumerate_subset_compositions, FiniteSet, SetComposition};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::text::write_sum;

/// A word `α_{S_1}⋯α_{S_k}` of `ℬ`; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BWord {
    letters: SetComposition,
}

impl BWord {
    pub fn new(letters: Vec<FiniteSet>) -> Result<Self> {
        Ok(BWord {
            letters: SetComposition::new(letters)?,
        })
    }

    pub fn unit() -> Self {
        BWord::default()
    }

    /// The generator `α_S`.
    pub fn letter(s: FiniteSet) -> Self {
        BWord {
            letters: SetComposition::single(s),
        }
    }

    pub fn letters(&self) -> &[FiniteSet] {
        self.letters.blocks()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The grading degree, i.e. the union of the letters.
    pub fn degree(&self) -> FiniteSet {
        self.letters.support()
    }

    fn subword(&self, mask: u64, keep: bool) -> BWord {
        let letters = self
            .letters()
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i & 1 == 1) == keep)
            .map(|(_, s)| s.clone())
            .collect();
        BWord {
            letters: SetComposition::from_blocks_unchecked(letters),
        }
    }
}

impl From<SetComposition> for BWord {
    fn from(letters: SetComposition) -> Self {
        BWord { letters }
    }
}

impl fmt::Display for BWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("()");
        }
        for s in self.letters() {
            write!(f, "a{s}")?;
        }
        Ok(())
    }
}

/// Concatenation of words; the degrees must be disjoint.
pub fn b_product(u: &BWord, v: &BWord) -> Result<BWord> {
    u.letters
        .concat(&v.letters)
        .map(|letters| BWord { letters })
        .ok_or_else(|| Error::domain(format!("product of {u} and {v}: degrees overlap")))
}

/// Elements of `ℬ ⊗ ℬ` in the word basis.
pub type BTensor = BTreeMap<(BWord, BWord), Coeff>;

/// The deshuffle coproduct: all `2^k` ways to split the letter positions
/// into two complementary order-preserving subsequences.
pub fn b_coproduct(u: &BWord) -> BTensor {
    let mut out = BTensor::new();
    for mask in 0u64..(1u64 << u.len()) {
        *out.entry((u.subword(mask, true), u.subword(mask, false))).or_default() += 1;
    }
    out
}

/// A finite integer combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BElement {
    terms: BTreeMap<BWord, Coeff>,
}

impl BElement {
    pub fn zero() -> Self {
        BElement::default()
    }

    pub fn basis(w: BWord) -> Self {
        let mut out = BElement::zero();
        out.add_term(w, Coeff::one());
        out
    }

    pub fn add_term(&mut self, w: BWord, k: Coeff) {
        if k.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e += k;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BWord, &Coeff)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms(), |f, w| write!(f, "{w}"))
    }
}

/// The words of `ℬ` whose degree lies in a fixed universe.
#[derive(Debug)]
pub struct WordBasis {
    universe: FiniteSet,
    words: Vec<BWord>,
    index: HashMap<BWord, usize>,
}

impl WordBasis {
    pub fn new(universe: FiniteSet, limits: &Limits) -> Result<Arc<Self>> {
        limits.check_universe(universe.len())?;
        let words: Vec<BWord> = enumerate_subset_compositions(&universe, limits)?
            .into_iter()
            .map(BWord::from)
            .collect();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(Arc::new(WordBasis { universe, words, index }))
    }

    pub fn universe(&self) -> &FiniteSet {
        &self.universe
    }

    pub fn words(&self) -> &[BWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    fn index_of(&self, w: &BWord) -> Result<usize> {
        self.index
            .get(w)
            .copied()
            .ok_or_else(|| Error::domain(format!("word {w} lies outside the universe {}", self.universe)))
    }
}

/// A degree-preserving linear endomorphism of `ℬ`, stored as a dense table
/// over the word basis of a universe.
#[derive(Clone, Debug)]
pub struct BEndomorphism {
    basis: Arc<WordBasis>,
    images: Vec<BElement>,
}

impl PartialEq for BEndomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.basis.universe == other.basis.universe && self.images == other.images
    }
}

impl Eq for BEndomorphism {}

impl BEndomorphism {
    pub fn zero(basis: &Arc<WordBasis>) -> Self {
        BEndomorphism {
            basis: basis.clone(),
            images: vec![BElement::zero(); basis.len()],
        }
    }

    pub fn identity(basis: &Arc<WordBasis>) -> Self {
        BEndomorphism {
            basis: basis.clone(),
            images: basis.words.iter().cloned().map(BElement::basis).collect(),
        }
    }

    /// The characteristic map `1_S`: identity in degree `S`, zero elsewhere.
    pub fn characteristic(s: &FiniteSet, basis: &Arc<WordBasis>) -> Result<Self> {
        if !s.is_subset(&basis.universe) {
            return Err(Error::domain(format!("{s} is not contained in the universe {}", basis.universe)));
        }
        Ok(BEndomorphism {
            basis: basis.clone(),
            images: basis
                .words
                .iter()
                .map(|w| {
                    if &w.degree() == s {
                        BElement::basis(w.clone())
                    } else {
                        BElement::zero()
                    }
                })
                .collect(),
        })
    }

    pub fn basis(&self) -> &Arc<WordBasis> {
        &self.basis
    }

    pub fn apply(&self, w: &BWord) -> Result<&BElement> {
        Ok(&self.images[self.basis.index_of(w)?])
    }

    pub fn apply_element(&self, x: &BElement) -> Result<BElement> {
        let mut out = BElement::zero();
        for (w, k) in x.terms() {
            for (v, c) in self.apply(w)?.terms() {
                out.add_term(v.clone(), k * c);
            }
        }
        Ok(out)
    }

    fn same_universe(&self, other: &BEndomorphism) -> Result<()> {
        if self.basis.universe != other.basis.universe {
            return Err(Error::domain(format!(
                "endomorphisms live on different universes {} and {}",
                self.basis.universe, other.basis.universe
            )));
        }
        Ok(())
    }

    /// `f ∗ g = m ∘ (f ⊗ g) ∘ δ`.
    pub fn convolve(&self, other: &BEndomorphism) -> Result<BEndomorphism> {
        self.same_universe(other)?;
        let images = self
            .basis
            .words
            .iter()
            .map(|w| {
                let mut out = BElement::zero();
                for ((l, r), k) in b_coproduct(w) {
                    let fl = self.apply(&l)?;
                    let gr = other.apply(&r)?;
                    for (u, cu) in fl.terms() {
                        for (v, cv) in gr.terms() {
                            out.add_term(b_product(u, v)?, &k * cu * cv);
                        }
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BEndomorphism {
            basis: self.basis.clone(),
            images,
        })
    }

    /// Plain composition `f ∘ g`: apply `g`, then `f`.
    pub fn compose(&self, other: &BEndomorphism) -> Result<BEndomorphism> {
        self.same_universe(other)?;
        let images = other
            .images
            .iter()
            .map(|gw| self.apply_element(gw))
            .collect::<Result<Vec<_>>>()?;
        Ok(BEndomorphism {
            basis: self.basis.clone(),
            images,
        })
    }

    pub fn add(&self, other: &BEndomorphism) -> Result<BEndomorphism> {
        self.same_universe(other)?;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| {
                let mut out = a.clone();
                for (w, k) in b.terms() {
                    out.add_term(w.clone(), k.clone());
                }
                out
            })
            .collect();
        Ok(BEndomorphism {
            basis: self.basis.clone(),
            images,
        })
    }

    fn scale(&self, k: &Coeff) -> BEndomorphism {
        BEndomorphism {
            basis: self.basis.clone(),
            images: self
                .images
                .iter()
                .map(|x| BElement {
                    terms: x.terms().map(|(w, c)| (w.clone(), c * k)).filter(|(_, c)| !c.is_zero()).collect(),
                })
                .collect(),
        }
    }

    /// `1_{(S_1,...,S_k)} = 1_{S_1} ∗ ⋯ ∗ 1_{S_k}`, folded from the left
    /// starting at the unit `1_∅`.
    pub fn represent(sc: &SetComposition, basis: &Arc<WordBasis>) -> Result<BEndomorphism> {
        check_support(sc, basis)?;
        let mut acc = Self::characteristic(&FiniteSet::empty(), basis)?;
        for b in sc.blocks() {
            acc = acc.convolve(&Self::characteristic(b, basis)?)?;
        }
        Ok(acc)
    }

    /// The same product folded from the right.
    pub fn represent_right_fold(sc: &SetComposition, basis: &Arc<WordBasis>) -> Result<BEndomorphism> {
        check_support(sc, basis)?;
        let mut acc = Self::characteristic(&FiniteSet::empty(), basis)?;
        for b in sc.blocks().iter().rev() {
            acc = Self::characteristic(b, basis)?.convolve(&acc)?;
        }
        Ok(acc)
    }

    /// Linear extension of [`BEndomorphism::represent`].
    pub fn represent_element(x: &TDElement, basis: &Arc<WordBasis>) -> Result<BEndomorphism> {
        let mut acc = Self::zero(basis);
        for (sc, k) in x.terms() {
            acc = acc.add(&Self::represent(sc, basis)?.scale(k))?;
        }
        Ok(acc)
    }

    /// One line per basis word: `word -> image`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (w, img) in self.basis.words.iter().zip(&self.images) {
            writeln!(s, "{w} -> {img}").expect("writing to a String");
        }
        s
    }
}

fn check_support(sc: &SetComposition, basis: &WordBasis) -> Result<()> {
    if !sc.support().is_subset(&basis.universe) {
        return Err(Error::domain(format!(
            "support of {sc} is not contained in the universe {}",
            basis.universe
        )));
    }
    Ok(())
}

/// Characteristic endomorphism of `s` on the word basis of `universe`.
pub fn characteristic_endo(s: &FiniteSet, universe: &FiniteSet, limits: &Limits) -> Result<BEndomorphism> {
    BEndomorphism::characteristic(s, &WordBasis::new(universe.clone(), limits)?)
}

/// Endomorphism realising the basis element `1_sc` on the word basis of `universe`.
pub fn represent(sc: &SetComposition, universe: &FiniteSet, limits: &Limits) -> Result<BEndomorphism> {
    BEndomorphism::represent(sc, &WordBasis::new(universe.clone(), limits)?)
}

/// Compares the symbolic product `1_a ∘ 1_b` with the composition of the
/// endomorphisms realising `1_a` and `1_b`, on every word of the universe
/// `support(a) ∪ support(b)`.
pub fn oracle_check_composition(a: &SetComposition, b: &SetComposition, limits: &Limits) -> Result<bool> {
    let basis = WordBasis::new(a.support().union(&b.support()), limits)?;
    let lhs = BEndomorphism::represent(a, &basis)?.compose(&BEndomorphism::represent(b, &basis)?)?;
    let product = TDElement::basis(a.clone()).compose(&TDElement::basis(b.clone()));
    Ok(lhs == BEndomorphism::represent_element(&product, &basis)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u32]) -> FiniteSet {
        FiniteSet::new(xs.to_vec()).unwrap()
    }

    fn word(letters: &[&[u32]]) -> BWord {
        BWord::from(SetComposition::from_lists(letters).unwrap())
    }

    fn sc(blocks: &[&[u32]]) -> SetComposition {
        SetComposition::from_lists(blocks).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(b_product(&word(&[&[3, 5]]), &word(&[&[1, 4]])).unwrap(), word(&[&[3, 5], &[1, 4]]));
        let w = word(&[&[2], &[1]]);
        assert_eq!(b_product(&BWord::unit(), &w).unwrap(), w);
        assert!(b_product(&word(&[&[1]]), &word(&[&[1]])).is_err());
    }

    #[test]
    fn coproducts() {
        let a12 = word(&[&[1, 2]]);
        let d = b_coproduct(&a12);
        assert_eq!(d.len(), 2);
        assert!(d.contains_key(&(BWord::unit(), a12.clone())));
        assert!(d.contains_key(&(a12.clone(), BWord::unit())));

        let d = b_coproduct(&word(&[&[1], &[2]]));
        let expected: BTensor = [
            (BWord::unit(), word(&[&[1], &[2]])),
            (word(&[&[1]]), word(&[&[2]])),
            (word(&[&[2]]), word(&[&[1]])),
            (word(&[&[1], &[2]]), BWord::unit()),
        ]
        .into_iter()
        .map(|k| (k, Coeff::one()))
        .collect();
        assert_eq!(d, expected);

        let d = b_coproduct(&BWord::unit());
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![((BWord::unit(), BWord::unit()), Coeff::one())]);
    }

    #[test]
    fn characteristic_maps() {
        let l = Limits::default();
        let u = set(&[1, 2]);
        let one12 = characteristic_endo(&set(&[1, 2]), &u, &l).unwrap();
        let w = word(&[&[1], &[2]]);
        assert_eq!(one12.apply(&w).unwrap(), &BElement::basis(w.clone()));
        assert!(one12.apply(&word(&[&[1]])).unwrap().is_zero());
        let eta = characteristic_endo(&FiniteSet::empty(), &u, &l).unwrap();
        assert_eq!(eta.apply(&BWord::unit()).unwrap(), &BElement::basis(BWord::unit()));
        assert!(characteristic_endo(&set(&[3]), &u, &l).is_err());
    }

    #[test]
    fn convolution_of_characteristic_maps() {
        let l = Limits::default();
        let basis = WordBasis::new(set(&[1, 2]), &l).unwrap();
        let c1 = BEndomorphism::characteristic(&set(&[1]), &basis).unwrap();
        let c2 = BEndomorphism::characteristic(&set(&[2]), &basis).unwrap();
        let f = c1.convolve(&c2).unwrap();
        let a1a2 = word(&[&[1], &[2]]);
        assert_eq!(f.apply(&a1a2).unwrap(), &BElement::basis(a1a2.clone()));
        assert_eq!(f.apply(&word(&[&[2], &[1]])).unwrap(), &BElement::basis(a1a2.clone()));
        assert_eq!(c1.convolve(&c1).unwrap(), BEndomorphism::zero(&basis));
    }

    #[test]
    fn composition_of_endomorphisms() {
        let l = Limits::default();
        let basis = WordBasis::new(set(&[1, 2]), &l).unwrap();
        let f = BEndomorphism::represent(&sc(&[&[1], &[2]]), &basis).unwrap();
        assert_eq!(BEndomorphism::identity(&basis).compose(&f).unwrap(), f);
        let c1 = BEndomorphism::characteristic(&set(&[1]), &basis).unwrap();
        let c12 = BEndomorphism::characteristic(&set(&[1, 2]), &basis).unwrap();
        assert_eq!(c1.compose(&c12).unwrap(), BEndomorphism::zero(&basis));

        let basis = WordBasis::new(set(&[1, 3, 4, 5]), &l).unwrap();
        let a = BEndomorphism::represent(&sc(&[&[3, 5], &[1, 4]]), &basis).unwrap();
        let b = BEndomorphism::represent(&sc(&[&[5], &[1, 3, 4]]), &basis).unwrap();
        let c = BEndomorphism::represent(&sc(&[&[5], &[3], &[1, 4]]), &basis).unwrap();
        assert_eq!(a.compose(&b).unwrap(), c);
    }

    #[test]
    fn universe_mismatch() {
        let l = Limits::default();
        let b1 = WordBasis::new(set(&[1]), &l).unwrap();
        let b2 = WordBasis::new(set(&[1, 2]), &l).unwrap();
        let f = BEndomorphism::identity(&b1);
        let g = BEndomorphism::identity(&b2);
        assert!(f.convolve(&g).is_err());
        assert!(f.compose(&g).is_err());
    }

    #[test]
    fn representations() {
        let l = Limits::default();
        let u = set(&[1, 2]);
        let f = represent(&sc(&[&[1], &[2]]), &u, &l).unwrap();
        assert_eq!(
            f.apply(&word(&[&[2], &[1]])).unwrap(),
            &BElement::basis(word(&[&[1], &[2]]))
        );
        // One block and two letters: the characteristic map of the degree fixes the word.
        let g = represent(&sc(&[&[1, 2]]), &u, &l).unwrap();
        let a1a2 = word(&[&[1], &[2]]);
        assert_eq!(g.apply(&a1a2).unwrap(), &BElement::basis(a1a2.clone()));
        // More blocks than letters, or a non-reordering, vanishes.
        assert!(f.apply(&word(&[&[1, 2]])).unwrap().is_zero());
        let h = represent(&sc(&[&[2], &[1]]), &u, &l).unwrap();
        assert_eq!(h.apply(&a1a2).unwrap(), &BElement::basis(word(&[&[2], &[1]])));
        let basis = WordBasis::new(u.clone(), &l).unwrap();
        assert_eq!(
            represent(&SetComposition::empty(), &u, &l).unwrap(),
            BEndomorphism::characteristic(&FiniteSet::empty(), &basis).unwrap()
        );
        assert!(represent(&sc(&[&[3]]), &u, &l).is_err());
    }

    #[test]
    fn oracle_examples() {
        let l = Limits::default();
        assert!(oracle_check_composition(&sc(&[&[3, 5], &[1, 4]]), &sc(&[&[5], &[1, 3, 4]]), &l).unwrap());
        assert!(oracle_check_composition(&sc(&[&[1, 2]]), &sc(&[&[3]]), &l).unwrap());
        let big = sc(&[&[1, 2, 3, 4, 5]]);
        assert!(oracle_check_composition(&big, &big, &l).unwrap_err().is_size_limit());
    }

    #[test]
    fn word_basis_size() {
        let l = Limits::default();
        // 1 + 4·1 + 6·3 + 4·13 + 75
        assert_eq!(WordBasis::new(FiniteSet::range(4), &l).unwrap().len(), 150);
    }

    #[test]
    fn dump_format() {
        let l = Limits::default();
        let f = represent(&sc(&[&[1], &[2]]), &set(&[1, 2]), &l).unwrap();
        let dump = f.dump();
        assert!(dump.contains("a{2}a{1} -> 1*a{1}a{2}\n"), "{dump}");
        assert!(dump.contains("a{1,2} -> 0\n"), "{dump}");
        assert!(dump.starts_with("() -> 0\n"), "{dump}");
    }
}

//! Solomon's descent algebra and its copies inside the twisted descent algebra.
//!
//! `𝒟_n` is handled degreewise: the basis element `1_{n_1,...,n_k}` only ever
//! acts through its weight-`n` components, so [`DescentElement`] stores
//! integer compositions of a fixed weight and [`DescentElement::truncate`]
//! maps them to orbit sums in `𝒯_{[n]}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{Coeff, TDElement};
use crate::combinat::{
    check_increasing_partition, FiniteSet, IntegerComposition, Permutation, SetComposition,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::text::write_sum;

/// A homogeneous element of `𝒟_n` in the basis `1_{n_1,...,n_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DescentElement {
    weight: usize,
    terms: BTreeMap<IntegerComposition, Coeff>,
}

impl DescentElement {
    pub fn zero(weight: usize) -> Self {
        DescentElement {
            weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(c: IntegerComposition) -> Self {
        let mut out = Self::zero(c.weight());
        out.terms.insert(c, Coeff::one());
        out
    }

    /// `1_n`, the `∘`-unit of `𝒟_n`.
    pub fn unit(n: usize) -> Self {
        let parts = if n == 0 { vec![] } else { vec![n as u32] };
        Self::basis(IntegerComposition::new(parts).expect("positive part"))
    }

    pub fn from_terms(weight: usize, terms: impl IntoIterator<Item = (IntegerComposition, Coeff)>) -> Result<Self> {
        let mut out = Self::zero(weight);
        for (c, k) in terms {
            out.add_term(c, k)?;
        }
        Ok(out)
    }

    pub fn add_term(&mut self, c: IntegerComposition, k: Coeff) -> Result<()> {
        if c.weight() != self.weight {
            return Err(Error::domain(format!(
                "composition {c} has weight {}, element has weight {}",
                c.weight(),
                self.weight
            )));
        }
        self.push(c, k);
        Ok(())
    }

    fn push(&mut self, c: IntegerComposition, k: Coeff) {
        if k.is_zero() {
            return;
        }
        let e = self.terms.entry(c).or_default();
        *e += k;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntegerComposition, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, c: &IntegerComposition) -> Coeff {
        self.terms.get(c).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Composition product by Solomon's rule: a sum over nonnegative integer
    /// matrices with row sums `n_i` and column sums `m_j`, each read row by
    /// row with zero entries dropped. Different weights multiply to zero.
    pub fn compose(&self, other: &DescentElement) -> DescentElement {
        let mut out = Self::zero(self.weight);
        if self.weight != other.weight {
            return out;
        }
        for (a, ka) in &self.terms {
            for (b, kb) in &other.terms {
                let k = ka * kb;
                for m in flattened_matrices(a.parts(), b.parts()) {
                    out.push(IntegerComposition::new(m).expect("nonzero entries"), k.clone());
                }
            }
        }
        out
    }

    /// Convolution: `1_C ∗ 1_D = 1_{CD}`.
    pub fn convolve(&self, other: &DescentElement) -> DescentElement {
        let mut out = Self::zero(self.weight + other.weight);
        for (a, ka) in &self.terms {
            for (b, kb) in &other.terms {
                out.push(a.concat(b), ka * kb);
            }
        }
        out
    }

    /// The truncation `1_C ↦ O_C` into `𝒯_{[n]}`, extended linearly.
    pub fn truncate(&self, limits: &Limits) -> Result<TDElement> {
        let mut out = TDElement::zero();
        for (c, k) in &self.terms {
            for (sc, _) in orbit_sum(c, limits)?.terms() {
                out.add_term(sc.clone(), k.clone());
            }
        }
        Ok(out)
    }

    /// Reads an element of the fixed space `ℱ_n` back in the orbit-sum basis.
    ///
    /// Returns `None` when `x` is not an integer combination of orbit sums of
    /// weight `n`.
    pub fn from_orbit_sums(x: &TDElement, n: usize) -> Option<DescentElement> {
        let range = FiniteSet::range(n);
        let mut by_type: BTreeMap<IntegerComposition, (Coeff, u128)> = BTreeMap::new();
        for (sc, k) in x.terms() {
            if sc.support() != range {
                return None;
            }
            let entry = by_type.entry(sc.type_of()).or_insert_with(|| (k.clone(), 0));
            if &entry.0 != k {
                return None;
            }
            entry.1 += 1;
        }
        let mut out = Self::zero(n);
        for (c, (k, count)) in by_type {
            if count != c.multinomial() {
                return None;
            }
            out.push(c, k);
        }
        Some(out)
    }
}

/// Every matrix with the given row and column sums, flattened row by row
/// with zeros dropped, in lexicographic order of the matrices.
fn flattened_matrices(rows: &[u32], cols: &[u32]) -> Vec<Vec<u32>> {
    fn fill_row(target: u32, remaining: &[u32], j: usize, row: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == remaining.len() {
            if target == 0 {
                out.push(row.clone());
            }
            return;
        }
        let later: u32 = remaining[j + 1..].iter().sum();
        let lo = target.saturating_sub(later);
        for a in lo..=target.min(remaining[j]) {
            row.push(a);
            fill_row(target - a, remaining, j + 1, row, out);
            row.pop();
        }
    }

    fn walk(rows: &[u32], remaining: &mut Vec<u32>, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&first, rest)) = rows.split_first() else {
            if remaining.iter().all(|&c| c == 0) {
                out.push(acc.clone());
            }
            return;
        };
        let mut candidates = Vec::new();
        fill_row(first, remaining, 0, &mut Vec::new(), &mut candidates);
        for row in candidates {
            let mark = acc.len();
            for (j, &a) in row.iter().enumerate() {
                remaining[j] -= a;
                if a > 0 {
                    acc.push(a);
                }
            }
            walk(rest, remaining, acc, out);
            acc.truncate(mark);
            for (j, &a) in row.iter().enumerate() {
                remaining[j] += a;
            }
        }
    }

    let mut out = Vec::new();
    if rows.iter().sum::<u32>() != cols.iter().sum::<u32>() {
        return out;
    }
    walk(rows, &mut cols.to_vec(), &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for DescentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms(), |f, c| write!(f, "({c})"))
    }
}

fn combinations(elems: &[u32], k: usize) -> Vec<Vec<u32>> {
    fn rec(elems: &[u32], k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in 0..elems.len() {
            if elems.len() - i < need {
                break;
            }
            cur.push(elems[i]);
            rec(&elems[i + 1..], k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(elems, k, &mut Vec::new(), &mut out);
    out
}

/// `1_{n_1,...,n_k}(S)`: the sum of all set compositions of `s` of type `c`.
pub fn descent_basis_expand(c: &IntegerComposition, s: &FiniteSet, limits: &Limits) -> Result<TDElement> {
    if c.weight() != s.len() {
        return Err(Error::domain(format!(
            "composition {c} has weight {}, set {s} has {} elements",
            c.weight(),
            s.len()
        )));
    }
    let count = c.multinomial();
    if count > limits.max_expansion_terms as u128 {
        return Err(Error::size("descent basis expansion", count, limits.max_expansion_terms));
    }

    fn rec(parts: &[u32], rest: &FiniteSet, acc: &mut Vec<FiniteSet>, out: &mut TDElement) {
        let Some((&p, tail)) = parts.split_first() else {
            out.add_term(SetComposition::from_blocks_unchecked(acc.clone()), Coeff::one());
            return;
        };
        for block in combinations(rest.elements(), p as usize) {
            let block = FiniteSet::from_sorted_unchecked(block);
            let remaining = rest.difference(&block);
            acc.push(block);
            rec(tail, &remaining, acc, out);
            acc.pop();
        }
    }

    let mut out = TDElement::zero();
    rec(c.parts(), s, &mut Vec::new(), &mut out);
    Ok(out)
}

/// The orbit sum `O_C`, i.e. [`descent_basis_expand`] on `{1..n}`.
pub fn orbit_sum(c: &IntegerComposition, limits: &Limits) -> Result<TDElement> {
    descent_basis_expand(c, &FiniteSet::range(c.weight()), limits)
}

/// Whether truncation carries `a ∘ b` (Solomon's rule) to the `∘`-product of
/// the truncations in `𝒯_{[n]}`.
pub fn truncation_check(a: &DescentElement, b: &DescentElement, limits: &Limits) -> Result<bool> {
    let lhs = a.compose(b).truncate(limits)?;
    let rhs = a.truncate(limits)?.compose(&b.truncate(limits)?);
    Ok(lhs == rhs)
}

/// An integer combination of permutations of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElement {
    degree: usize,
    terms: BTreeMap<Permutation, Coeff>,
}

impl GroupAlgebraElement {
    pub fn zero(degree: usize) -> Self {
        GroupAlgebraElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(p: Permutation) -> Self {
        let mut out = Self::zero(p.degree());
        out.terms.insert(p, Coeff::one());
        out
    }

    pub fn add_term(&mut self, p: Permutation, k: Coeff) -> Result<()> {
        if p.degree() != self.degree {
            return Err(Error::domain(format!(
                "permutation {p} has degree {}, element has degree {}",
                p.degree(),
                self.degree
            )));
        }
        if k.is_zero() {
            return Ok(());
        }
        let e = self.terms.entry(p).or_default();
        *e += k;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Coeff)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Permutation> {
        self.terms.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The linear map `σ ↦ σ⁻¹`.
    pub fn star(&self) -> GroupAlgebraElement {
        GroupAlgebraElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(p, k)| (p.inverse(), k.clone())).collect(),
        }
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|k| !k.is_negative())
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms(), |f, p| write!(f, "({p})"))
    }
}

/// `D_C`: the sum of all permutations whose descent set lies in the partial sums of `c`.
pub fn descent_class(c: &IntegerComposition, limits: &Limits) -> Result<GroupAlgebraElement> {
    let n = c.weight();
    if n > limits.max_descent_class_n {
        return Err(Error::size("descent class degree", n as u128, limits.max_descent_class_n as u128));
    }
    let allowed = c.partial_sums();
    let mut out = GroupAlgebraElement::zero(n);
    for p in Permutation::all(n) {
        if p.descent_set().is_subset(&allowed) {
            out.terms.insert(p, Coeff::one());
        }
    }
    Ok(out)
}

fn partition_composition(parts: &[FiniteSet], p: &Permutation) -> Result<SetComposition> {
    let n = check_increasing_partition(parts)?;
    if p.degree() != n {
        return Err(Error::domain(format!(
            "permutation {p} has degree {}, partition covers [{n}]",
            p.degree()
        )));
    }
    Ok(SetComposition::from_blocks_unchecked(parts.to_vec()))
}

/// Whether `1_{(S_1..S_k)} ∘ 1_σ` is the identity chamber.
pub fn shuffle_test(parts: &[FiniteSet], p: &Permutation) -> Result<bool> {
    let sc = partition_composition(parts, p)?;
    let product = sc.compose(&SetComposition::chamber(p)).expect("equal supports");
    Ok(product == SetComposition::chamber(&Permutation::identity(p.degree())))
}

/// Factors `σ = β ∘ τ` with `β` in the Young subgroup of the partition and
/// `τ` a shuffle; `β` is read off the chamber `1_{(S_1..S_k)} ∘ 1_σ`.
pub fn young_decompose(parts: &[FiniteSet], p: &Permutation) -> Result<(Permutation, Permutation)> {
    let sc = partition_composition(parts, p)?;
    let chamber = sc.compose(&SetComposition::chamber(p)).expect("equal supports");
    let beta = chamber.to_permutation().expect("product of a chamber is a chamber of [n]");
    let shuffle = beta.inverse().compose(p)?;
    Ok((beta, shuffle))
}

/// Whether `p` maps every part of the partition onto itself.
pub fn in_young_subgroup(parts: &[FiniteSet], p: &Permutation) -> bool {
    parts.iter().all(|s| {
        FiniteSet::from_unsorted(s.elements().iter().map(|&x| p.apply(x))).is_ok_and(|img| &img == s)
    })
}

/// Checks that every orbit sum of weight `n` is fixed by `S_n` and that the
/// orbit sums span a `∘`-subalgebra of `𝒯_{[n]}`.
pub fn fixed_space_check(n: usize, limits: &Limits) -> Result<bool> {
    if n > limits.max_fixed_space_n {
        return Err(Error::size("fixed space weight", n as u128, limits.max_fixed_space_n as u128));
    }
    let sums = IntegerComposition::all(n)
        .iter()
        .map(|c| orbit_sum(c, limits))
        .collect::<Result<Vec<_>>>()?;
    let perms = Permutation::all(n);
    for o in &sums {
        for p in &perms {
            if &o.act(p)? != o {
                return Ok(false);
            }
        }
    }
    for a in &sums {
        for b in &sums {
            if DescentElement::from_orbit_sums(&a.compose(b), n).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

//! Invariant suites: every law is checked over an exhaustive or seeded random
//! family of cases and summarised as a [`LawReport`].
//!
//! Scales are per suite. `max_n` replaces the suite's main degree bound and
//! shifts its secondary bounds by the same amount, so `--max-n` can both
//! shrink and grow a run. Exhaustive sweeps run in parallel but are merged
//! in enumeration order, so reports (and the first counterexample of a
//! failing law) do not depend on scheduling.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{Coeff, TDElement, TensorElement};
use crate::combinat::{
    enumerate_set_compositions, enumerate_shuffles, enumerate_subset_compositions, FiniteSet, IntegerComposition,
    Permutation, SetComposition,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::oracle::{b_coproduct, b_product, BEndomorphism, BTensor, BWord, WordBasis};
use crate::solomon::{
    descent_class, fixed_space_check, in_young_subgroup, shuffle_test, truncation_check, young_decompose,
    DescentElement,
};
use crate::text::parse_tensor;

pub const SUITES: &[&str] = &[
    "assoc-conv",
    "assoc-comp",
    "bialgebra",
    "reciprocity",
    "remarkable",
    "oracle",
    "solomon",
    "equivariance",
    "shuffles",
    "fixed-space",
    "dims",
];

pub const DEFAULT_SEED: u64 = 0x7d5e_ed00;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_n: Option<usize>,
    /// Oracle universe size, and the support bound of random elements.
    pub max_support: Option<usize>,
    pub max_terms: Option<u64>,
    /// Random trials; each randomized suite has its own default.
    pub trials: Option<usize>,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: None,
            max_support: None,
            max_terms: None,
            trials: None,
            seed: DEFAULT_SEED,
        }
    }
}

impl VerifyConfig {
    pub fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(t) = self.max_terms {
            l.max_coproduct_terms = t;
            l.max_expansion_terms = t;
        }
        if let Some(s) = self.max_support {
            l.max_universe = s;
        }
        l
    }

    fn n(&self, suite_default: usize) -> usize {
        self.max_n.unwrap_or(suite_default)
    }

    /// A secondary bound, moved along with the main one.
    fn scaled(&self, suite_default: usize, law_default: usize) -> usize {
        let shift = self.n(suite_default) as isize - suite_default as isize;
        (law_default as isize + shift).max(0) as usize
    }

    fn support(&self, default: usize) -> usize {
        self.max_support.unwrap_or(default)
    }

    fn trials(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    fn rng(&self, suite: &str) -> ChaCha8Rng {
        let salt = suite
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
        ChaCha8Rng::seed_from_u64(self.seed ^ salt)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub cases: u64,
    pub failures: u64,
    pub counterexample: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub laws: Vec<LawReport>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            laws: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawReport::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "laws": self.laws.iter().map(|l| json!({
                "law": l.law,
                "passed": l.passed(),
                "cases": l.cases,
                "failures": l.failures,
                "counterexample": l.counterexample,
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }

    fn push(&mut self, law: &str, t: Tally) {
        self.laws.push(t.report(law));
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for l in &self.laws {
            let status = if l.passed() { "PASS" } else { "FAIL" };
            write!(f, "  {status}  {} ({} cases", l.law, l.cases)?;
            if l.failures > 0 {
                write!(f, ", {} failed", l.failures)?;
            }
            writeln!(f, ")")?;
            if let Some(c) = &l.counterexample {
                writeln!(f, "        counterexample: {c}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Default)]
struct Tally {
    cases: u64,
    failures: u64,
    example: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, example: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(example());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.failures += other.failures;
        self.example = self.example.or(other.example);
        self
    }

    fn report(self, law: &str) -> LawReport {
        LawReport {
            law: law.to_string(),
            cases: self.cases,
            failures: self.failures,
            counterexample: self.example,
        }
    }
}

/// Runs `f` on every item in parallel and merges the tallies in item order.
fn sweep<T, F>(items: &[T], f: F) -> Result<Tally>
where
    T: Sync,
    F: Fn(&T, &mut Tally) -> Result<()> + Sync,
{
    let parts: Vec<Result<Tally>> = items
        .par_iter()
        .map(|x| {
            let mut t = Tally::default();
            f(x, &mut t)?;
            Ok(t)
        })
        .collect();
    parts.into_iter().try_fold(Tally::default(), |acc, t| Ok(acc.merge(t?)))
}

/// Runs one suite, or all of them for `"all"`.
pub fn run(suite: &str, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    if suite == "all" {
        return SUITES.iter().map(|s| run_one(s, cfg)).collect();
    }
    Ok(vec![run_one(suite, cfg)?])
}

pub fn run_one(suite: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    match suite {
        "assoc-conv" => assoc_conv(cfg),
        "assoc-comp" => assoc_comp(cfg),
        "bialgebra" => bialgebra(cfg),
        "reciprocity" => reciprocity(cfg),
        "remarkable" => remarkable(cfg),
        "oracle" => oracle(cfg),
        "solomon" => solomon(cfg),
        "equivariance" => equivariance(cfg),
        "shuffles" => shuffles(cfg),
        "fixed-space" => fixed_space(cfg),
        "dims" => dims(cfg),
        _ => Err(Error::domain(format!(
            "unknown suite {suite:?}; available: {}, all",
            SUITES.join(", ")
        ))),
    }
}

fn compositions_of(n: usize, limits: &Limits) -> Result<Vec<SetComposition>> {
    Ok(enumerate_set_compositions(&FiniteSet::range(n), limits)?.collect())
}

/// Ordered pairs `(A, S \ A)` over all subsets `A` of `s`.
fn splittings(s: &FiniteSet) -> Vec<(FiniteSet, FiniteSet)> {
    s.subsets().map(|a| (a.clone(), s.difference(&a))).collect()
}

fn random_subset(rng: &mut ChaCha8Rng, ground: &FiniteSet, size: usize) -> FiniteSet {
    let picked = ground.elements().choose_multiple(rng, size).copied();
    FiniteSet::from_unsorted(picked).expect("distinct positive labels")
}

fn random_composition(rng: &mut ChaCha8Rng, s: &FiniteSet) -> SetComposition {
    let mut xs = s.elements().to_vec();
    xs.shuffle(rng);
    let mut blocks = Vec::new();
    let mut cur = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        cur.push(x);
        if i + 1 == xs.len() || rng.gen_bool(0.5) {
            blocks.push(FiniteSet::from_unsorted(cur.drain(..)).expect("distinct positive labels"));
        }
    }
    SetComposition::new(blocks).expect("blocks partition s")
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Coeff {
    let k: i64 = rng.gen_range(1..=3);
    Coeff::from(if rng.gen_bool(0.5) { k } else { -k })
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<u32> = (1..=n as u32).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("rearrangement of 1..n")
}

/// A random element with 1 to 3 terms; `support` picks each term's support.
fn random_element(rng: &mut ChaCha8Rng, mut support: impl FnMut(&mut ChaCha8Rng) -> FiniteSet) -> TDElement {
    let mut out = TDElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let s = support(rng);
        let sc = random_composition(rng, &s);
        out.add_term(sc, random_coeff(rng));
    }
    out
}

fn triple(a: &TDElement, b: &TDElement, c: &TDElement) -> String {
    format!("a = {a}; b = {b}; c = {c}")
}

fn assoc_conv(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let max_s = cfg.support(5);
    let ground = FiniteSet::range(2 * max_s + 2);
    let mut rng = cfg.rng("assoc-conv");
    let mut assoc = Tally::default();
    let mut unit = Tally::default();
    let mut nonzero = 0;
    let one = TDElement::one();
    for _ in 0..cfg.trials(200) {
        let el = |rng: &mut ChaCha8Rng| {
            random_element(rng, |rng| {
                let k = rng.gen_range(0..=max_s);
                random_subset(rng, &ground, k)
            })
        };
        let (a, b, c) = (el(&mut rng), el(&mut rng), el(&mut rng));
        let lhs = a.convolve(&b).convolve(&c);
        nonzero += usize::from(!lhs.is_zero());
        assoc.check(lhs == a.convolve(&b.convolve(&c)), || triple(&a, &b, &c));
        unit.check(one.convolve(&a) == a && a.convolve(&one) == a, || format!("a = {a}"));
    }
    let mut r = SuiteReport::new("assoc-conv");
    r.push("(a∗b)∗c = a∗(b∗c)", assoc);
    r.push("[]∗a = a∗[] = a", unit);
    r.notes.push(format!("{nonzero} of the random triples have a nonzero product"));
    Ok(r)
}

fn assoc_comp(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let max_s = cfg.support(5).max(1);
    let ground = FiniteSet::range(max_s);
    let mut rng = cfg.rng("assoc-comp");
    let mut assoc = Tally::default();
    let mut annihilation = Tally::default();
    let mut nonzero = 0;
    for _ in 0..cfg.trials(200) {
        let size = rng.gen_range(1..=max_s);
        let s = random_subset(&mut rng, &ground, size);
        // Mostly on one support, occasionally mixed.
        let el = |rng: &mut ChaCha8Rng| {
            random_element(rng, |rng| {
                if rng.gen_bool(0.8) {
                    s.clone()
                } else {
                    let k = rng.gen_range(1..=max_s);
                    random_subset(rng, &ground, k)
                }
            })
        };
        let (a, b, c) = (el(&mut rng), el(&mut rng), el(&mut rng));
        let lhs = a.compose(&b).compose(&c);
        nonzero += usize::from(!lhs.is_zero());
        assoc.check(lhs == a.compose(&b.compose(&c)), || triple(&a, &b, &c));

        let t = loop {
            let k = rng.gen_range(0..=max_s);
            let t = random_subset(&mut rng, &ground, k);
            if t != s {
                break t;
            }
        };
        let x = random_element(&mut rng, |_| s.clone());
        let y = random_element(&mut rng, |_| t.clone());
        annihilation.check(x.compose(&y).is_zero() && y.compose(&x).is_zero(), || {
            format!("a = {x}; b = {y}")
        });
    }

    let mut unit = Tally::default();
    for n in 0..=max_s {
        let one_s = TDElement::basis(SetComposition::single(FiniteSet::range(n)));
        for sc in compositions_of(n, &limits)? {
            let x = TDElement::basis(sc);
            unit.check(one_s.compose(&x) == x && x.compose(&one_s) == x, || format!("x = {x}"));
        }
    }

    let mut r = SuiteReport::new("assoc-comp");
    r.push("(a∘b)∘c = a∘(b∘c)", assoc);
    r.push("1_S∘x = x∘1_S = x", unit);
    r.push("a∘b = 0 across supports", annihilation);
    r.notes.push(format!("{nonzero} of the random triples have a nonzero product"));
    Ok(r)
}

type Triple = BTreeMap<(SetComposition, SetComposition, SetComposition), Coeff>;

fn add_triple(out: &mut Triple, key: (SetComposition, SetComposition, SetComposition), c: Coeff) {
    let e = out.entry(key.clone()).or_default();
    *e += c;
    if e.is_zero() {
        out.remove(&key);
    }
}

/// `(δ⊗id)x` when `left`, `(id⊗δ)x` otherwise.
fn coproduct_on_leg(x: &TensorElement, left: bool, limits: &Limits) -> Result<Triple> {
    let mut out = Triple::new();
    for (l, r, c) in x.terms() {
        let leg = if left { l } else { r };
        for (a, b, k) in TDElement::basis(leg.clone()).coproduct_limited(limits)?.terms() {
            let key = if left {
                (a.clone(), b.clone(), r.clone())
            } else {
                (l.clone(), a.clone(), b.clone())
            };
            add_triple(&mut out, key, c * k);
        }
    }
    Ok(out)
}

fn bialgebra(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let n_max = cfg.n(4);
    let mut r = SuiteReport::new("bialgebra");

    let mut comp_law = Tally::default();
    for n in 0..=n_max {
        let basis = compositions_of(n, &limits)?;
        let deltas = basis
            .iter()
            .map(|x| TDElement::basis(x.clone()).coproduct_limited(&limits))
            .collect::<Result<Vec<_>>>()?;
        let idx: Vec<usize> = (0..basis.len()).collect();
        comp_law = comp_law.merge(sweep(&idx, |&i, t| {
            for j in 0..basis.len() {
                let prod = TDElement::basis(basis[i].clone()).compose(&TDElement::basis(basis[j].clone()));
                let lhs = prod.coproduct_limited(&limits)?;
                t.check(lhs == deltas[i].compose(&deltas[j]), || {
                    format!("a = {}; b = {}", basis[i], basis[j])
                });
            }
            Ok(())
        })?);
    }
    r.push("δ(a∘b) = δ(a)∘₂δ(b), support [n]", comp_law);

    let mut conv_law = Tally::default();
    for (a_set, b_set) in FiniteSet::range(n_max)
        .subsets()
        .flat_map(|s| splittings(&s))
    {
        let left = enumerate_set_compositions(&a_set, &limits)?.collect::<Vec<_>>();
        let right = enumerate_set_compositions(&b_set, &limits)?.collect::<Vec<_>>();
        for a in &left {
            let da = TDElement::basis(a.clone()).coproduct_limited(&limits)?;
            for b in &right {
                let db = TDElement::basis(b.clone()).coproduct_limited(&limits)?;
                let lhs = TDElement::basis(a.clone())
                    .convolve(&TDElement::basis(b.clone()))
                    .coproduct_limited(&limits)?;
                conv_law.check(lhs == da.convolve(&db), || format!("a = {a}; b = {b}"));
            }
        }
    }
    r.push("δ(a∗b) = δ(a)∗₂δ(b), disjoint supports", conv_law);

    let co_n = cfg.scaled(4, 5);
    let mut coassoc = Tally::default();
    let mut cocomm = Tally::default();
    for n in 0..=co_n {
        let basis = compositions_of(n, &limits)?;
        let t = sweep(&basis, |x, t| {
            let d = TDElement::basis(x.clone()).coproduct_limited(&limits)?;
            let ok = coproduct_on_leg(&d, true, &limits)? == coproduct_on_leg(&d, false, &limits)?;
            t.check(ok, || format!("x = {x}"));
            Ok(())
        })?;
        coassoc = coassoc.merge(t);
        let t = sweep(&basis, |x, t| {
            let d = TDElement::basis(x.clone()).coproduct_limited(&limits)?;
            t.check(d.swap() == d, || format!("x = {x}"));
            Ok(())
        })?;
        cocomm = cocomm.merge(t);
    }
    r.push("(δ⊗id)δ = (id⊗δ)δ", coassoc);
    r.push("δ is cocommutative", cocomm);

    // The naive law for (∗, δ) must fail on 1_{12} ∗ 1_{12}, with this exact value.
    let x = TDElement::basis(SetComposition::single(FiniteSet::range(2)));
    let lhs = x.convolve(&x).coproduct_limited(&limits)?;
    let dx = x.coproduct_limited(&limits)?;
    let rhs = dx.convolve(&dx);
    let expected = parse_tensor("2*[{1,2}]⊗[{1,2}] + [{1}|{2}]⊗[{2}|{1}] + [{2}|{1}]⊗[{1}|{2}]")?;
    let mut witness = Tally::default();
    witness.check(lhs.is_zero() && rhs == expected, || {
        format!("δ([{{1,2}}]∗[{{1,2}}]) = {lhs}; δ([{{1,2}}])∗₂δ([{{1,2}}]) = {rhs}")
    });
    r.push("naive δ(a∗b) = δ(a)∗₂δ(b) fails for a = b = [{1,2}] (expected)", witness);
    r.notes.push(format!("witness: δ([{{1,2}}])∗₂δ([{{1,2}}]) = {rhs}, δ([{{1,2}}]∗[{{1,2}}]) = 0"));
    Ok(r)
}

fn reciprocity(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let mut law = Tally::default();
    for n in 0..=cfg.n(5) {
        let s = FiniteSet::range(n);
        let mut pairs = Vec::new();
        for (a, b) in splittings(&s) {
            let left = enumerate_set_compositions(&a, &limits)?.collect::<Vec<_>>();
            let right = enumerate_set_compositions(&b, &limits)?.collect::<Vec<_>>();
            for f in &left {
                for g in &right {
                    pairs.push((f.clone(), g.clone()));
                }
            }
        }
        let hs = compositions_of(n, &limits)?;
        law = law.merge(sweep(&hs, |h, t| {
            let hb = TDElement::basis(h.clone());
            let dh = hb.coproduct_limited(&limits)?;
            for (f, g) in &pairs {
                let lhs = TDElement::basis(f.clone()).convolve(&TDElement::basis(g.clone())).compose(&hb);
                let rhs = TensorElement::basis(f.clone(), g.clone()).compose(&dh).multiply_legs();
                t.check(lhs == rhs, || format!("f = {f}; g = {g}; h = {h}"));
            }
            Ok(())
        })?);
    }
    let mut r = SuiteReport::new("reciprocity");
    r.push("(f∗g)∘h = m((f⊗g)∘₂δ(h))", law);
    Ok(r)
}

fn remarkable(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let mut law = Tally::default();
    for n in 0..=cfg.n(5) {
        for (a, b) in splittings(&FiniteSet::range(n)) {
            let square = |s: &FiniteSet| -> Result<Vec<(SetComposition, SetComposition)>> {
                let cs = enumerate_set_compositions(s, &limits)?.collect::<Vec<_>>();
                Ok(cs.iter().flat_map(|x| cs.iter().map(move |y| (x.clone(), y.clone()))).collect())
            };
            let fg = square(&a)?;
            let hk = square(&b)?;
            law = law.merge(sweep(&fg, |(f, g), t| {
                let fg = TDElement::basis(f.clone()).compose(&TDElement::basis(g.clone()));
                for (h, k) in &hk {
                    let lhs = fg.convolve(&TDElement::basis(h.clone()).compose(&TDElement::basis(k.clone())));
                    if lhs.is_zero() {
                        continue;
                    }
                    let fh = TDElement::basis(f.clone()).convolve(&TDElement::basis(h.clone()));
                    let gk = TDElement::basis(g.clone()).convolve(&TDElement::basis(k.clone()));
                    t.check(lhs == fh.compose(&gk), || format!("f = {f}; g = {g}; h = {h}; k = {k}"));
                }
                Ok(())
            })?);
        }
    }
    let mut r = SuiteReport::new("remarkable");
    r.push("(f∘g)∗(h∘k) = (f∗h)∘(g∗k) when nonzero", law);
    Ok(r)
}

fn product_tensor(x: &BTensor, y: &BTensor) -> Result<BTensor> {
    let mut out = BTensor::new();
    for ((xl, xr), cx) in x {
        for ((yl, yr), cy) in y {
            let key = (b_product(xl, yl)?, b_product(xr, yr)?);
            let e = out.entry(key.clone()).or_default();
            *e += cx * cy;
            if e.is_zero() {
                out.remove(&key);
            }
        }
    }
    Ok(out)
}

fn oracle(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let universe = FiniteSet::range(cfg.support(4));
    let basis = WordBasis::new(universe.clone(), &limits)?;
    let comps = enumerate_subset_compositions(&universe, &limits)?;
    let reps = comps
        .par_iter()
        .map(|sc| BEndomorphism::represent(sc, &basis))
        .collect::<Result<Vec<_>>>()?;
    let index: HashMap<&SetComposition, usize> = comps.iter().enumerate().map(|(i, sc)| (sc, i)).collect();
    let lookup = |x: &TDElement| -> Result<BEndomorphism> {
        match x.terms().next() {
            Some((sc, k)) if x.len() == 1 && k.is_one() => Ok(reps[index[sc]].clone()),
            _ => BEndomorphism::represent_element(x, &basis),
        }
    };
    let idx: Vec<usize> = (0..comps.len()).collect();
    let mut r = SuiteReport::new("oracle");

    let mut folds = Tally::default();
    for (sc, rep) in comps.iter().zip(&reps) {
        folds.check(&BEndomorphism::represent_right_fold(sc, &basis)? == rep, || format!("{sc}"));
    }
    r.push("left and right folds of ∗ agree", folds);

    let mut free = Tally::default();
    let mut seen = HashSet::new();
    for (sc, rep) in comps.iter().zip(&reps) {
        free.check(seen.insert(rep.dump()), || format!("{sc} has the table of an earlier basis element"));
    }
    r.push("basis elements have distinct endomorphisms", free);

    let comp = sweep(&idx, |&i, t| {
        for (j, b) in comps.iter().enumerate() {
            let a = &comps[i];
            if a.support() != b.support() {
                continue;
            }
            let lhs = reps[i].compose(&reps[j])?;
            let product = TDElement::basis(a.clone()).compose(&TDElement::basis(b.clone()));
            t.check(lhs == lookup(&product)?, || format!("a = {a}; b = {b}"));
        }
        Ok(())
    })?;
    r.push("1_a∘1_b as maps = symbolic a∘b, equal supports", comp);

    let cross = sweep(&idx, |&i, t| {
        for (j, b) in comps.iter().enumerate() {
            let a = &comps[i];
            if a.support() == b.support() {
                continue;
            }
            t.check(reps[i].compose(&reps[j])? == BEndomorphism::zero(&basis), || {
                format!("a = {a}; b = {b}")
            });
        }
        Ok(())
    })?;
    r.push("1_a∘1_b as maps = 0 across supports", cross);

    let conv = sweep(&idx, |&i, t| {
        for (j, b) in comps.iter().enumerate() {
            let a = &comps[i];
            if !a.support().is_disjoint(&b.support()) {
                continue;
            }
            let lhs = reps[i].convolve(&reps[j])?;
            let product = TDElement::basis(a.clone()).convolve(&TDElement::basis(b.clone()));
            t.check(lhs == lookup(&product)?, || format!("a = {a}; b = {b}"));
        }
        Ok(())
    })?;
    r.push("1_a∗1_b as maps = symbolic a∗b", conv);

    let words = basis.words();
    let word_idx: Vec<usize> = (0..words.len()).collect();
    let compat = sweep(&word_idx, |&i, t| {
        let u = &words[i];
        for v in words {
            if !u.degree().is_disjoint(&v.degree()) {
                continue;
            }
            let lhs = b_coproduct(&b_product(u, v)?);
            let rhs = product_tensor(&b_coproduct(u), &b_coproduct(v))?;
            t.check(lhs == rhs, || format!("u = {u}; v = {v}"));
        }
        Ok(())
    })?;
    r.push("δ(uv) = δ(u)δ(v) in ℬ", compat);

    let subsets: Vec<FiniteSet> = universe.subsets().collect();
    let copr = sweep(&subsets, |tset, t| {
        let one_t = BEndomorphism::characteristic(tset, &basis)?;
        let pieces = splittings(tset)
            .into_iter()
            .map(|(a, b)| Ok((BEndomorphism::characteristic(&a, &basis)?, BEndomorphism::characteristic(&b, &basis)?)))
            .collect::<Result<Vec<_>>>()?;
        for w in words {
            let mut lhs = BTensor::new();
            for (x, k) in one_t.apply(w)?.terms() {
                for (key, c) in b_coproduct(x) {
                    add_btensor(&mut lhs, key, c * k);
                }
            }
            let mut rhs = BTensor::new();
            for ((l, rr), c) in b_coproduct(w) {
                for (fa, fb) in &pieces {
                    for (x, kx) in fa.apply(&l)?.terms() {
                        for (y, ky) in fb.apply(&rr)?.terms() {
                            add_btensor(&mut rhs, (x.clone(), y.clone()), &c * kx * ky);
                        }
                    }
                }
            }
            t.check(lhs == rhs, || format!("T = {tset}; w = {w}"));
        }
        Ok(())
    })?;
    r.push("δ∘1_T = Σ (1_{T1}⊗1_{T2})∘δ", copr);

    let mut cocomm = Tally::default();
    for w in words {
        let d = b_coproduct(w);
        let swapped: BTensor = d.iter().map(|((l, rr), c)| ((rr.clone(), l.clone()), c.clone())).collect();
        cocomm.check(swapped == d, || format!("w = {w}"));
    }
    r.push("δ on ℬ is cocommutative", cocomm);
    r.notes.push(format!("universe {universe}, {} words", words.len()));
    Ok(r)
}

fn add_btensor(out: &mut BTensor, key: (BWord, BWord), c: Coeff) {
    let e = out.entry(key.clone()).or_default();
    *e += c;
    if e.is_zero() {
        out.remove(&key);
    }
}

fn solomon(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let n_max = cfg.n(5);
    let mut r = SuiteReport::new("solomon");

    let mut trunc = Tally::default();
    let mut nonneg = Tally::default();
    for n in 1..=n_max {
        let cs = IntegerComposition::all(n);
        trunc = trunc.merge(sweep(&cs, |a, t| {
            for b in &cs {
                let (x, y) = (DescentElement::basis(a.clone()), DescentElement::basis(b.clone()));
                t.check(truncation_check(&x, &y, &limits)?, || format!("a = {a}; b = {b}"));
            }
            Ok(())
        })?);
        for a in &cs {
            for b in &cs {
                let p = DescentElement::basis(a.clone()).compose(&DescentElement::basis(b.clone()));
                nonneg.check(p.terms().all(|(_, k)| !k.is_negative()), || format!("({a})∘({b}) = {p}"));
            }
        }
    }
    r.push("Solomon's rule = ∘ of orbit sums in 𝒯_[n]", trunc);
    r.push("structure constants are nonnegative", nonneg);

    let mut assoc = Tally::default();
    for n in 1..=cfg.scaled(5, 4) {
        let cs = IntegerComposition::all(n);
        for a in &cs {
            for b in &cs {
                let ab = DescentElement::basis(a.clone()).compose(&DescentElement::basis(b.clone()));
                for c in &cs {
                    let cb = DescentElement::basis(c.clone());
                    let lhs = ab.compose(&cb);
                    let rhs = DescentElement::basis(a.clone())
                        .compose(&DescentElement::basis(b.clone()).compose(&cb));
                    assoc.check(lhs == rhs, || format!("a = {a}; b = {b}; c = {c}"));
                }
            }
        }
    }
    r.push("Solomon's rule is associative", assoc);

    let mut unit = Tally::default();
    for n in 1..=cfg.scaled(5, 6) {
        let one = DescentElement::unit(n);
        for c in IntegerComposition::all(n) {
            let x = DescentElement::basis(c.clone());
            unit.check(one.compose(&x) == x && x.compose(&one) == x, || format!("({c})"));
        }
    }
    r.push("1_n is the unit", unit);
    Ok(r)
}

fn equivariance(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let n_max = cfg.n(5);
    let exhaustive = cfg.scaled(5, 3);
    let mut product = Tally::default();
    let mut action = Tally::default();
    for n in 0..=exhaustive {
        let basis = compositions_of(n, &limits)?;
        let perms = Permutation::all(n);
        for a in &basis {
            let x = TDElement::basis(a.clone());
            for s in &perms {
                let xs = x.act(s)?;
                for b in &basis {
                    let y = TDElement::basis(b.clone());
                    let ok = x.compose(&y).act(s)? == xs.compose(&y.act(s)?);
                    product.check(ok, || format!("a = {a}; b = {b}; σ = {s}"));
                }
                for tau in &perms {
                    let ok = xs.act(tau)? == x.act(&s.compose(tau)?)?;
                    action.check(ok, || format!("a = {a}; σ = {s}; τ = {tau}"));
                }
            }
        }
    }

    let mut rng = cfg.rng("equivariance");
    let lo = (exhaustive + 1).min(n_max);
    if n_max > exhaustive {
        for _ in 0..cfg.trials(500) {
            let n = rng.gen_range(lo..=n_max);
            let s = FiniteSet::range(n);
            let a = random_element(&mut rng, |_| s.clone());
            let b = random_element(&mut rng, |_| s.clone());
            let sigma = random_permutation(&mut rng, n);
            let tau = random_permutation(&mut rng, n);
            let ok = a.compose(&b).act(&sigma)? == a.act(&sigma)?.compose(&b.act(&sigma)?);
            product.check(ok, || format!("a = {a}; b = {b}; σ = {sigma}"));
            let ok = a.act(&sigma)?.act(&tau)? == a.act(&sigma.compose(&tau)?)?;
            action.check(ok, || format!("a = {a}; σ = {sigma}; τ = {tau}"));
        }
    }

    let mut r = SuiteReport::new("equivariance");
    r.push("(a∘b)·σ = (a·σ)∘(b·σ)", product);
    r.push("(a·σ)·τ = a·(σ∘τ)", action);
    Ok(r)
}

/// The chamber obtained by listing the word of `p` block by block.
fn unshuffled(blocks: &[FiniteSet], p: &Permutation) -> SetComposition {
    let mut out = Vec::new();
    for b in blocks {
        out.extend(p.images().iter().filter(|&&x| b.contains(x)).map(|&x| FiniteSet::from_sorted_unchecked(vec![x])));
    }
    SetComposition::from_blocks_unchecked(out)
}

fn shuffles(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let n_max = cfg.n(6);
    let mut r = SuiteReport::new("shuffles");

    let mut duality = Tally::default();
    let mut counts = Tally::default();
    let mut enumerated = Tally::default();
    for n in 1..=n_max {
        let perms = Permutation::all(n);
        for c in IntegerComposition::all(n) {
            let parts = c.increasing_partition();
            let mut tested = BTreeSet::new();
            for p in &perms {
                if shuffle_test(&parts, p)? {
                    tested.insert(p.clone());
                }
            }
            let star: BTreeSet<Permutation> = descent_class(&c, &limits)?.star().support().into_iter().collect();
            duality.check(tested == star, || format!("C = ({c})"));
            counts.check(tested.len() as u128 == c.multinomial() && star.len() as u128 == c.multinomial(), || {
                format!("C = ({c}): {} shuffles, |D_C*| = {}, multinomial {}", tested.len(), star.len(), c.multinomial())
            });
            let listed: BTreeSet<Permutation> = enumerate_shuffles(&parts)?.into_iter().collect();
            enumerated.check(listed == tested, || format!("C = ({c})"));
        }
    }
    r.push("shuffles of type C = support of D_C*", duality);
    r.push("|shuffles| = |D_C*| = n!/(n_1!⋯n_k!)", counts);
    r.push("enumerated shuffles = shuffle test", enumerated);

    let mut young = Tally::default();
    let mut unique = Tally::default();
    for n in 1..=cfg.scaled(6, 4) {
        let perms = Permutation::all(n);
        for c in IntegerComposition::all(n) {
            let parts = c.increasing_partition();
            let mut betas = BTreeSet::new();
            let mut taus = BTreeSet::new();
            let mut seen = BTreeSet::new();
            for p in &perms {
                let (beta, tau) = young_decompose(&parts, p)?;
                let ok = consecutive_young(&c, &beta) && shuffle_test(&parts, &tau)? && &beta.compose(&tau)? == p;
                young.check(ok, || format!("C = ({c}); σ = {p}; β = {beta}; τ = {tau}"));
                seen.insert((beta.clone(), tau.clone()));
                betas.insert(beta);
                taus.insert(tau);
            }
            let young_order: u128 = c.parts().iter().map(|&k| (1..=k as u128).product::<u128>()).product();
            let ok = seen.len() == perms.len()
                && betas.len() as u128 == young_order
                && taus.len() as u128 == c.multinomial()
                && young_order * c.multinomial() == perms.len() as u128;
            unique.check(ok, || format!("C = ({c}): {} Young elements, {} shuffles", betas.len(), taus.len()));
        }
    }
    r.push("σ = β∘τ, β Young, τ shuffle", young);
    r.push("|Young| × |shuffles| = n!, factorization unique", unique);

    let mut absorb = Tally::default();
    for n in 0..=cfg.scaled(6, 4) {
        let basis = compositions_of(n, &limits)?;
        for p in Permutation::all(n) {
            let ch = TDElement::basis(SetComposition::chamber(&p));
            for x in &basis {
                absorb.check(ch.compose(&TDElement::basis(x.clone())) == ch, || format!("σ = {p}; x = {x}"));
            }
        }
    }
    r.push("chamber∘x = chamber", absorb);

    let mut unsh = Tally::default();
    for n in 0..=cfg.scaled(6, 5) {
        let basis = compositions_of(n, &limits)?;
        let perms = Permutation::all(n);
        unsh = unsh.merge(sweep(&basis, |sc, t| {
            for p in &perms {
                let got = TDElement::basis(sc.clone()).compose(&TDElement::basis(SetComposition::chamber(p)));
                let want = TDElement::basis(unshuffled(sc.blocks(), p));
                t.check(got == want, || format!("S = {sc}; σ = {p}"));
            }
            Ok(())
        })?);
    }
    r.push("1_(S_1..S_k)∘1_σ = σ read block by block", unsh);
    Ok(r)
}

/// Membership in `S_{n_1} × ⋯ × S_{n_k}` placed on consecutive intervals.
fn consecutive_young(c: &IntegerComposition, p: &Permutation) -> bool {
    let mut block_of = Vec::with_capacity(c.weight());
    for (b, &k) in c.parts().iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, k as usize));
    }
    (1..=c.weight() as u32).all(|i| block_of[i as usize - 1] == block_of[p.apply(i) as usize - 1])
}

fn fixed_space(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let mut r = SuiteReport::new("fixed-space");
    let mut fixed = Tally::default();
    for n in 1..=cfg.n(4) {
        fixed.check(fixed_space_check(n, &limits)?, || format!("n = {n}"));
    }
    r.push("orbit sums are S_n-fixed and closed under ∘", fixed);

    let mut stab = Tally::default();
    for n in 1..=cfg.scaled(4, 5) {
        let perms = Permutation::all(n);
        for c in IntegerComposition::all(n) {
            let parts = c.increasing_partition();
            let sc = SetComposition::from_blocks_unchecked(parts.clone());
            for p in &perms {
                let fixes = sc.act(p)? == sc;
                let ok = fixes == consecutive_young(&c, p) && fixes == in_young_subgroup(&parts, p);
                stab.check(ok, || format!("C = ({c}); σ = {p}"));
            }
        }
    }
    r.push("stabilizer of 1_(S_1..S_k) = Young subgroup", stab);
    Ok(r)
}

/// Ordered set partitions of an `n`-set as `Σ_k k!·S(n,k)`.
pub fn fubini_by_stirling(n: usize) -> u128 {
    let mut row = vec![1u128];
    for m in 1..=n {
        let mut next = vec![0u128; m + 1];
        for k in 1..=m {
            let stay = if k < row.len() { k as u128 * row[k] } else { 0 };
            next[k] = stay + row[k - 1];
        }
        row = next;
    }
    let mut fact = 1u128;
    let mut total = 0u128;
    for (k, s) in row.iter().enumerate() {
        if k > 0 {
            fact *= k as u128;
        }
        total += fact * s;
    }
    total
}

fn dims(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let mut law = Tally::default();
    let mut counts = Vec::new();
    for n in 0..=cfg.n(5) {
        let listed = compositions_of(n, &limits)?;
        let distinct = listed.windows(2).all(|w| w[0] < w[1]);
        let count = listed.len() as u128;
        let oracle = fubini_by_stirling(n);
        law.check(distinct && count == oracle, || format!("n = {n}: enumerated {count}, expected {oracle}"));
        counts.push(count.to_string());
    }
    let mut r = SuiteReport::new("dims");
    r.push("dim 𝒯_[n] = Σ_k k!·S(n,k)", law);
    r.notes.push(format!("dims {}", counts.join(" ")));
    Ok(r)
}

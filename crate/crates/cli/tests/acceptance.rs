//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p twisted-descent-cli --test acceptance`.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use twisted_descent::oracle::{BEndomorphism, WordBasis};
use twisted_descent::solomon::{fixed_space_check, in_young_subgroup, shuffle_test, young_decompose};
use twisted_descent::text::parse_tensor;
use twisted_descent::verify::{fubini_by_stirling, run_one, SuiteReport, VerifyConfig};
use twisted_descent::{
    enumerate_set_compositions, FiniteSet, IntegerComposition, Limits, Permutation, SetComposition, TDElement,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn tda(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = tda::run(std::iter::once("tda").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn sc(text: &str) -> SetComposition {
    twisted_descent::text::parse_set_composition(text).unwrap()
}

fn perm(images: &[u32]) -> Permutation {
    Permutation::new(images.to_vec()).unwrap()
}

fn fubini(n: usize) -> u64 {
    fubini_by_stirling(n) as u64
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Checks that `law` ran exactly `cases` cases without a failure.
fn law(report: &SuiteReport, name: &str, cases: u64) -> Result<(), String> {
    let l = report
        .laws
        .iter()
        .find(|l| l.law == name)
        .ok_or_else(|| format!("law {name:?} missing from suite {}", report.suite))?;
    if !l.passed() {
        return Err(format!(
            "{name}: {} of {} cases failed, e.g. {}",
            l.failures,
            l.cases,
            l.counterexample.as_deref().unwrap_or("?")
        ));
    }
    if l.cases != cases {
        return Err(format!("{name}: ran {} cases, expected {cases}", l.cases));
    }
    Ok(())
}

fn suite(name: &str) -> Result<SuiteReport, String> {
    run_one(name, &VerifyConfig::default()).map_err(|e| e.to_string())
}

fn worked_composition() -> Outcome {
    let args = ["comp", "[{3,5}|{1,4}]", "[{5}|{1,3,4}]"];
    tda(&args);
    let start = Instant::now();
    let (code, out) = tda(&args);
    let elapsed = start.elapsed();
    if code != 0 || out != "1*[{5}|{3}|{1,4}]\n" {
        return Err(format!("exit {code}, output {out:?}"));
    }
    if elapsed >= Duration::from_millis(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{:.3} ms", elapsed.as_secs_f64() * 1e3))
}

fn unshuffling_example() -> Outcome {
    let got = sc("{1,3,5}|{2,4}").compose(&SetComposition::chamber(&perm(&[3, 4, 5, 2, 1])));
    let want = SetComposition::chamber(&perm(&[3, 5, 1, 4, 2]));
    match got {
        Some(c) if c == want => Ok(format!("{c}")),
        other => Err(format!("got {other:?}")),
    }
}

fn non_bialgebra_witness() -> Outcome {
    let x = TDElement::basis(sc("{1,2}"));
    let lhs = x.convolve(&x).coproduct().map_err(|e| e.to_string())?;
    let dx = x.coproduct().map_err(|e| e.to_string())?;
    let rhs = dx.convolve(&dx);
    let want = parse_tensor("2*[{1,2}]⊗[{1,2}] + [{1}|{2}]⊗[{2}|{1}] + [{2}|{1}]⊗[{1}|{2}]").unwrap();
    if !lhs.is_zero() || rhs != want {
        return Err(format!("δ(x∗x) = {lhs}; δ(x)∗₂δ(x) = {rhs}"));
    }
    Ok(format!("{rhs}"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let limits = Limits::default();
    let universe = FiniteSet::range(4);
    let basis = WordBasis::new(universe.clone(), &limits).map_err(|e| e.to_string())?;
    let mut pairs = 0u64;
    let mut mismatches = Vec::new();
    for t in universe.subsets() {
        let comps: Vec<SetComposition> = enumerate_set_compositions(&t, &limits).unwrap().collect();
        let reps: HashMap<&SetComposition, BEndomorphism> = comps
            .iter()
            .map(|c| (c, BEndomorphism::represent(c, &basis).unwrap()))
            .collect();
        for a in &comps {
            for b in &comps {
                pairs += 1;
                let maps = reps[a].compose(&reps[b]).unwrap();
                let symbolic = TDElement::basis(a.clone()).compose(&TDElement::basis(b.clone()));
                if maps != BEndomorphism::represent_element(&symbolic, &basis).unwrap() {
                    mismatches.push(format!("{a} ∘ {b}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let expected: u64 = (0..=4).map(|k| binom(4, k) * fubini(k) * fubini(k)).sum();
    if !mismatches.is_empty() {
        return Err(format!("{} mismatches, first {}", mismatches.len(), mismatches[0]));
    }
    if pairs != expected {
        return Err(format!("{pairs} pairs, expected {expected}"));
    }
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{pairs} pairs over {} words, {:.2} s", basis.len(), elapsed.as_secs_f64()))
}

fn bialgebra_laws() -> Outcome {
    let r = suite("bialgebra")?;
    let comp_pairs: u64 = (0..=4).map(|n| fubini(n) * fubini(n)).sum();
    // Ordered disjoint (A, B) inside [4], one basis element on each.
    let conv_pairs: u64 = (0..=4)
        .flat_map(|a| (0..=4 - a).map(move |b| (a, b)))
        .map(|(a, b)| binom(4, a) * binom(4 - a, b) * fubini(a) * fubini(b))
        .sum();
    law(&r, "δ(a∘b) = δ(a)∘₂δ(b), support [n]", comp_pairs)?;
    law(&r, "δ(a∗b) = δ(a)∗₂δ(b), disjoint supports", conv_pairs)?;
    Ok(format!("{comp_pairs} ∘-pairs, {conv_pairs} ∗-pairs"))
}

fn reciprocity_and_remarkable() -> Outcome {
    let split_sum = |n: usize, pow: u32| -> u64 {
        (0..=n).map(|a| binom(n, a) * (fubini(a) * fubini(n - a)).pow(pow)).sum()
    };
    let triples: u64 = (0..=5).map(|n| fubini(n) * split_sum(n, 1)).sum();
    let quadruples: u64 = (0..=5).map(|n| split_sum(n, 2)).sum();
    law(&suite("reciprocity")?, "(f∗g)∘h = m((f⊗g)∘₂δ(h))", triples)?;
    law(&suite("remarkable")?, "(f∘g)∗(h∘k) = (f∗h)∘(g∗k) when nonzero", quadruples)?;
    Ok(format!("{triples} triples, {quadruples} quadruples"))
}

fn solomon_rule() -> Outcome {
    let r = suite("solomon")?;
    let pairs: u64 = (1..=5).map(|n| 1u64 << (2 * (n - 1))).sum();
    let units: u64 = (1..=6).map(|n| 1u64 << (n - 1)).sum();
    law(&r, "Solomon's rule = ∘ of orbit sums in 𝒯_[n]", pairs)?;
    law(&r, "structure constants are nonnegative", pairs)?;
    law(&r, "1_n is the unit", units)?;
    Ok(format!("{pairs} pairs"))
}

fn shuffle_duality() -> Outcome {
    let r = suite("shuffles")?;
    let comps: u64 = (1..=6).map(|n| 1u64 << (n - 1)).sum();
    law(&r, "shuffles of type C = support of D_C*", comps)?;
    law(&r, "|shuffles| = |D_C*| = n!/(n_1!⋯n_k!)", comps)?;
    Ok(format!("{comps} compositions"))
}

fn young_factorization() -> Outcome {
    let perms = Permutation::all(4);
    let mut checked = 0;
    for c in IntegerComposition::all(4) {
        let parts = c.increasing_partition();
        let mut young = std::collections::BTreeSet::new();
        let mut shuffles = std::collections::BTreeSet::new();
        for p in &perms {
            let (beta, tau) = young_decompose(&parts, p).map_err(|e| e.to_string())?;
            let ok = in_young_subgroup(&parts, &beta)
                && shuffle_test(&parts, &tau).unwrap()
                && &beta.compose(&tau).unwrap() == p;
            if !ok {
                return Err(format!("C = ({c}), σ = {p}: β = {beta}, τ = {tau}"));
            }
            young.insert(beta);
            shuffles.insert(tau);
            checked += 1;
        }
        let order: u64 = c.parts().iter().map(|&k| factorial(k as usize)).product();
        if young.len() as u64 != order || young.len() * shuffles.len() != 24 {
            return Err(format!("C = ({c}): {} Young elements, {} shuffles", young.len(), shuffles.len()));
        }
    }
    Ok(format!("{checked} factorizations"))
}

fn equivariance_and_fixed_space() -> Outcome {
    let r = suite("equivariance")?;
    let exhaustive: u64 = (0..=3).map(|n| fubini(n) * fubini(n) * factorial(n)).sum();
    law(&r, "(a∘b)·σ = (a·σ)∘(b·σ)", exhaustive + 500)?;
    let action: u64 = (0..=3).map(|n| fubini(n) * factorial(n) * factorial(n)).sum();
    law(&r, "(a·σ)·τ = a·(σ∘τ)", action + 500)?;
    for n in 1..=4 {
        if !fixed_space_check(n, &Limits::default()).map_err(|e| e.to_string())? {
            return Err(format!("fixed space check fails at n = {n}"));
        }
    }
    Ok(format!("{exhaustive} exhaustive + 500 random"))
}

fn dimension_table() -> Outcome {
    let limits = Limits::default();
    let mut dims = Vec::new();
    for n in 1..=5 {
        let count = enumerate_set_compositions(&FiniteSet::range(n), &limits).unwrap().count() as u64;
        if count != fubini(n) {
            return Err(format!("n = {n}: {count} vs {}", fubini(n)));
        }
        dims.push(count);
    }
    if dims != [1, 3, 13, 75, 541] {
        return Err(format!("{dims:?}"));
    }
    Ok(format!("{dims:?}"))
}

fn whole_suite() -> Outcome {
    let start = Instant::now();
    let (code, first) = tda(&["verify", "all", "--format", "json"]);
    let elapsed = start.elapsed();
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    if elapsed >= Duration::from_secs(300) {
        return Err(format!("took {elapsed:?}"));
    }
    let (_, second) = tda(&["verify", "all", "--format", "json"]);
    if first != second {
        return Err("two runs under the default seed differ".into());
    }
    Ok(format!("{:.1} s, identical reruns", elapsed.as_secs_f64()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("worked composition example, byte-exact, under 1 ms", worked_composition),
        ("unshuffling example", unshuffling_example),
        ("(∗, δ) non-bialgebra witness", non_bialgebra_witness),
        ("symbolic ∘ = endomorphism composition over [4], under 60 s", oracle_equivalence),
        ("bialgebra laws for ∘ and ∗", bialgebra_laws),
        ("reciprocity and the remarkable identity", reciprocity_and_remarkable),
        ("Solomon's rule vs truncation, nonnegativity, unit", solomon_rule),
        ("shuffles = support of D_C*", shuffle_duality),
        ("Young factorization in S_4", young_factorization),
        ("equivariance and fixed space", equivariance_and_fixed_space),
        ("dimension table 1 3 13 75 541", dimension_table),
        ("verify all under 5 min, deterministic", whole_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2}  {name}  [{detail}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}  {name}  [{why}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

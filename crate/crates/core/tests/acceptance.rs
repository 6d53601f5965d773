//! Acceptance run: one pass/fail line per criterion, then a nonzero exit if any failed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use spiralss::io::{from_json, to_json, Object};
use spiralss::oracle::{classical_coss, classical_ss, copi_pi, pi_pi, random_cochain_corpus, random_corpus, total_homology};
use spiralss::pages::{
    compare_pages, compare_with_source, cosimplicial_ss, obstruction_images, spiral_ss_of_chains, spiral_ss_of_space,
    truncated_ss, truncated_ss_with, ChaseChoices, SpectralPages,
};
use spiralss::simplicial::{dold_kan, normalize, Bicomplex, BicomplexBuilder, SimplicialSpace};
use spiralss::spiral::{spiral_les_of_space, spiral_system};
use spiralss::stems::examples::spliced_stem;
use spiralss::stems::stem_of_chains;
use spiralss::zmod::{smith_normal_form, FgAbGroup};

mod common;

const CORPUS_SEED: u64 = 20_240_917;
const CORPUS_SIZE: usize = 100;
const COCHAIN_SEED: u64 = 20_240_918;
const COCHAIN_SIZE: usize = 50;
const PROPERTY_CASES: u32 = 500;

type Verdict = Result<String, String>;

struct Run {
    failed: usize,
}

impl Run {
    fn criterion(&mut self, n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Verdict) {
        let start = Instant::now();
        let verdict = f();
        let took = start.elapsed();
        let verdict = match (verdict, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {:.1}s, limit {}s", took.as_secs_f64(), l.as_secs())),
            (v, _) => v,
        };
        let (tag, detail) = match &verdict {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        if verdict.is_err() {
            self.failed += 1;
        }
        println!("[{tag}] {n:>2} {name}: {detail} ({:.1}s)", took.as_secs_f64());
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn stable(b: &Bicomplex) -> usize {
    b.max_s() + b.max_t() + 2
}

/// Horizontal simplicial object of a corpus complex; its normalization is the complex.
fn space(b: &Bicomplex) -> SimplicialSpace {
    SimplicialSpace::gamma(b, b.max_s()).space
}

fn e2_against(pages: &SpectralPages, expected: &std::collections::BTreeMap<(i64, i64), FgAbGroup>) -> Result<(), String> {
    let page = pages.page(2);
    let positions: std::collections::BTreeSet<_> = page.entries.keys().chain(expected.keys()).copied().collect();
    for p in positions {
        let ours = page.group(p);
        let theirs = expected.get(&p).cloned().unwrap_or_else(FgAbGroup::zero);
        if ours.invariants() != theirs.invariants() {
            return Err(format!("E2 at {p:?} is {ours}, expected {theirs}"));
        }
    }
    Ok(())
}

fn e2_identity(corpus: &[Bicomplex]) -> Verdict {
    let mut entries = 0;
    for (i, b) in corpus.iter().enumerate() {
        let ss = spiral_ss_of_space(&space(b), 2);
        let pp = pi_pi(b);
        entries += pp.values().filter(|g| !g.is_trivial()).count();
        e2_against(&ss, &pp).map_err(|e| format!("object {i}: {e}"))?;
    }
    Ok(format!("{} objects, {entries} nonzero entries, exact invariants", corpus.len()))
}

fn oracle_agreement(corpus: &[Bicomplex]) -> Verdict {
    let mut minus = 0;
    let mut nonzero = 0;
    for (i, b) in corpus.iter().enumerate() {
        let ours = spiral_ss_of_chains(b, 4);
        let theirs = classical_ss(b, 4);
        let a = compare_pages(&ours, &theirs, 1, 4).map_err(|e| format!("object {i}: page {} at {:?}: {}", e.r, e.pos, e.reason))?;
        minus += a.signs.iter().filter(|&&s| s < 0).count();
        nonzero += ours.pages.iter().flat_map(|p| p.diffs.values()).filter(|d| !d.is_zero()).count();
    }
    Ok(format!("{} objects, pages 1..4, {nonzero} nonzero differentials, {minus} pages with sign -1", corpus.len()))
}

fn convergence(corpus: &[Bicomplex]) -> Verdict {
    for (i, b) in corpus.iter().enumerate() {
        let ss = spiral_ss_of_chains(b, stable(b));
        let inf = ss.last();
        let tot = total_homology(b);
        let mut degrees: std::collections::BTreeSet<i64> = tot.degrees.keys().copied().collect();
        degrees.extend(inf.entries.keys().map(|p| p.0 + p.1));
        for m in degrees {
            for s in 0..=m.max(0) {
                let ours = inf.group((s, m - s));
                let theirs = tot
                    .degrees
                    .get(&m)
                    .and_then(|d| d.quotients.get(&s))
                    .cloned()
                    .unwrap_or_else(FgAbGroup::zero);
                if ours.invariants() != theirs.invariants() {
                    return Err(format!("object {i}: E∞ at ({s},{}) is {ours}, total homology quotient {theirs}", m - s));
                }
            }
        }
    }
    Ok(format!("{} objects, E∞ at page max(s)+max(t)+2 against the filtered total homology", corpus.len()))
}

fn les_exactness(corpus: &[Bicomplex]) -> Verdict {
    let mut nodes = 0;
    for (i, b) in corpus.iter().enumerate() {
        let les = spiral_les_of_space(&space(b), 8);
        les.check_exact().map_err(|e| format!("object {i}: inexact at {:?} in row {}", e.node, e.row))?;
        if !les.h0_is_iso() {
            return Err(format!("object {i}: h_0 is not an isomorphism"));
        }
        nodes += les.rows.values().map(|r| r.nodes.len()).sum::<usize>();
    }
    Ok(format!("{} objects, rows t <= 8, {nodes} nodes exact, every h_0 iso", corpus.len()))
}

fn stem_vanishing(corpus: &[Bicomplex]) -> Verdict {
    let mut windows = 0;
    for (i, b) in corpus.iter().enumerate() {
        for r in 0..=2 {
            let sys = spiral_system(&stem_of_chains(b, r), b.max_s() + 2)
                .map_err(|v| format!("object {i}, r = {r}: stem rejected ({:?})", v.axiom))?;
            sys.check_vanishing().map_err(|e| format!("object {i}, r = {r}: {e:?}"))?;
            windows += sys.windows.len();
        }
    }
    Ok(format!("{} objects, r in 0..=2, {windows} windows", corpus.len()))
}

fn witness() -> Bicomplex {
    BicomplexBuilder::new()
        .free(2, 0, 1)
        .free(1, 0, 1)
        .free(1, 1, 1)
        .free(0, 1, 1)
        .dh(2, 0, vec![vec![1]])
        .dv(1, 1, vec![vec![1]])
        .dh(1, 1, vec![vec![1]])
        .build()
        .expect("witness")
}

fn one_stem(corpus: &[Bicomplex]) -> Verdict {
    for (i, b) in corpus.iter().enumerate() {
        let stem = stem_of_chains(b, 1);
        let t = truncated_ss(&stem).map_err(|e| format!("object {i}: {e:?}"))?;
        compare_with_source(&t, &stem)
            .expect("realized")
            .map_err(|e| format!("object {i}: page {} at {:?}: {}", e.r, e.pos, e.reason))?;
        let e3 = t.next.as_ref().ok_or(format!("object {i}: d2 d2 != 0"))?;
        let full = spiral_ss_of_chains(b, 3);
        let positions: std::collections::BTreeSet<_> = e3.entries.keys().chain(full.page(3).entries.keys()).copied().collect();
        for p in positions {
            let (x, y) = (e3.group(p), full.group(3, p));
            if x.invariants() != y.invariants() {
                return Err(format!("object {i}: E3 at {p:?} is {x}, full {y}"));
            }
        }
    }
    let w = witness();
    let stem = stem_of_chains(&w, 1);
    let t = truncated_ss(&stem).map_err(|e| format!("witness: {e:?}"))?;
    let d2 = t.page(2).diffs.get(&(2, 0)).ok_or("witness: no d2 at (2,0)")?;
    if !(d2.domain().invariants() == FgAbGroup::free(1).invariants() && d2.is_iso()) {
        return Err(format!("witness: d2 is {} -> {}, iso {}", d2.domain(), d2.codomain(), d2.is_iso()));
    }
    let e3 = t.next.as_ref().ok_or("witness: no E3")?;
    if !e3.entries.values().all(|e| e.value().is_trivial()) {
        return Err("witness: E3 is not zero".into());
    }
    if !total_homology(&w).degrees.values().all(|d| d.group.is_trivial()) {
        return Err("witness: total complex is not acyclic".into());
    }
    Ok(format!("{} objects pages 1..3; witness d2 : Z -> Z iso, E3 = 0, total complex acyclic", corpus.len()))
}

fn truncation(corpus: &[Bicomplex]) -> Verdict {
    let mut reruns = 0;
    let mut minus = 0;
    for (i, b) in corpus.iter().enumerate() {
        for r in 1..=3 {
            let stem = stem_of_chains(b, r);
            let t = truncated_ss(&stem).map_err(|e| format!("object {i}, r = {r}: {e:?}"))?;
            let a = compare_with_source(&t, &stem)
                .expect("realized")
                .map_err(|e| format!("object {i}, r = {r}: page {} at {:?}: {}", e.r, e.pos, e.reason))?;
            minus += a.signs.iter().filter(|&&s| s < 0).count();
            for seed in 0..2 {
                let seed = (i * 10 + r) as u64 * 2 + seed;
                let u = truncated_ss_with(&stem, Some(ChaseChoices { seed }))
                    .map_err(|e| format!("object {i}, r = {r}, seed {seed}: {e:?}"))?;
                if !t.same_pages(&u) {
                    return Err(format!("object {i}, r = {r}: lift choices with seed {seed} change the pages"));
                }
                reruns += 1;
            }
        }
    }
    Ok(format!(
        "{} objects, r in 1..=3, pages 1..r+1 up to sign ({minus} with sign -1), {reruns} permuted-lift reruns identical",
        corpus.len()
    ))
}

fn boundaries(corpus: &[Bicomplex]) -> Verdict {
    for (i, b) in corpus.iter().enumerate() {
        for r in 1..=2 {
            let t = truncated_ss(&stem_of_chains(b, r)).map_err(|e| format!("object {i}, r = {r}: {e:?}"))?;
            t.check_boundaries().map_err(|e| format!("object {i}, r = {r}: page {} at {:?}: {}", e.r, e.pos, e.reason))?;
        }
    }
    Ok(format!("{} objects, r in 1..=2", corpus.len()))
}

fn obstruction(corpus: &[Bicomplex]) -> Verdict {
    for (i, b) in corpus.iter().enumerate() {
        for r in 0..=3 {
            let t = truncated_ss(&stem_of_chains(b, r)).map_err(|e| format!("object {i}, r = {r}: {e:?}"))?;
            if let Some((p, q, g)) = obstruction_images(&t).first() {
                return Err(format!("object {i}, r = {r}: obstruction {p:?} -> {q:?} with image {g}"));
            }
        }
    }
    let t = truncated_ss(&spliced_stem()).map_err(|e| format!("spliced stem: {e:?}"))?;
    let obs = obstruction_images(&t);
    let Some((p, q, g)) = obs.iter().find(|o| !o.2.is_trivial()) else {
        return Err("spliced stem: obstruction vanishes".into());
    };
    Ok(format!("zero on {} objects for r <= 3; spliced 1-stem: {p:?} -> {q:?} image {g}", corpus.len()))
}

fn cosimplicial() -> Verdict {
    let corpus = random_cochain_corpus(COCHAIN_SEED, COCHAIN_SIZE);
    for (i, k) in corpus.iter().enumerate() {
        let ours = cosimplicial_ss(k, 4);
        e2_against(&ours, &copi_pi(k)).map_err(|e| format!("object {i}: {e}"))?;
        let theirs = classical_coss(k, 4);
        compare_pages(&ours, &theirs, 1, 4).map_err(|e| format!("object {i}: page {} at {:?}: {}", e.r, e.pos, e.reason))?;
    }
    Ok(format!("{} cochain objects, E2 against normalized cochain cohomology, pages 1..4 against the oracle", corpus.len()))
}

fn property<S: Strategy>(strategy: S, check: impl Fn(S::Value) -> Result<(), String>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() });
    runner
        .run(&strategy, |x| check(x).map_err(TestCaseError::fail))
        .map_err(|e| e.to_string())
}

fn infrastructure() -> Verdict {
    property(common::complex(), |c| {
        let n = normalize(&dold_kan(&c, 5));
        for t in 0..=5 {
            if n.group(t).invariants() != c.group(t).invariants()
                || n.homology(t).value().invariants() != c.homology(t).value().invariants()
            {
                return Err(format!("Dold–Kan changes degree {t}"));
            }
        }
        Ok(())
    })?;
    property(common::matrix(6), |m| {
        let snf = smith_normal_form(&m);
        if snf.u.mul(&m).mul(&snf.v) != snf.d_matrix() {
            return Err("U M V != D".into());
        }
        if !snf.diag.windows(2).all(|w| w[0].divides(&w[1])) {
            return Err("divisibility chain fails".into());
        }
        Ok(())
    })?;
    property(common::bicomplex(6), |b| {
        let doc = to_json(&Object::Bicomplex(b));
        match from_json(&doc) {
            Ok(x) if to_json(&x) == doc => Ok(()),
            Ok(_) => Err("reloaded document differs".into()),
            Err(e) => Err(e.to_string()),
        }
    })?;
    Ok(format!("{PROPERTY_CASES} cases each: Dold–Kan round trip, Smith form contract, serialization round trip"))
}

fn main() -> ExitCode {
    let corpus = random_corpus(CORPUS_SEED, CORPUS_SIZE);
    let mut run = Run { failed: 0 };
    run.criterion(1, "E2 identity", secs(60), || e2_identity(&corpus));
    run.criterion(2, "oracle agreement", secs(300), || oracle_agreement(&corpus));
    run.criterion(3, "convergence", None, || convergence(&corpus));
    run.criterion(4, "spiral sequence exactness", None, || les_exactness(&corpus));
    run.criterion(5, "stem vanishing", None, || stem_vanishing(&corpus));
    run.criterion(6, "d2 and E3 from the 1-stem", None, || one_stem(&corpus));
    run.criterion(7, "truncated pages from r-stems", None, || truncation(&corpus));
    run.criterion(8, "image of d^{r+1} as a kernel", None, || boundaries(&corpus));
    run.criterion(9, "obstruction", None, || obstruction(&corpus));
    run.criterion(10, "cosimplicial duals", secs(180), cosimplicial);
    run.criterion(11, "infrastructure properties", secs(30), infrastructure);
    if run.failed == 0 {
        println!("all 11 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("{} of 11 criteria fail", run.failed);
        ExitCode::FAILURE
    }
}

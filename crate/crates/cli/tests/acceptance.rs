//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use cbrws::graph::{free_abelian, integers, suite_graphs, two_vertex, BundleGraph, BundlePresentation};
use cbrws::kb::check_complete;
use cbrws::normal::{block_decompose, brute_force_growth, AcLengthOracle, IrreducibleAutomaton, TwoBundleLayout};
use cbrws::orders::{lemma_precedence, rpo_greater, DisorderCache, DEFAULT_LENGTH_CAP};
use cbrws::reduce::{reduce, reduce_random, rewrite_once};
use cbrws::word::Letter;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const STEP_CAP: usize = 100_000;

type Check = Result<String, String>;

/// Calls `f` on every word over `letters` of length `0..=max_len`.
fn for_each_word(letters: &[Letter], max_len: usize, mut f: impl FnMut(&[Letter]) -> Result<(), String>) -> Result<u64, String> {
    let mut digits: Vec<usize> = Vec::with_capacity(max_len);
    let mut word: Vec<Letter> = Vec::with_capacity(max_len);
    let mut count = 0;
    loop {
        f(&word)?;
        count += 1;
        // Odometer increment, growing the word when every digit wraps.
        let mut i = digits.len();
        loop {
            if i == 0 {
                if digits.len() == max_len {
                    return Ok(count);
                }
                digits.insert(0, 0);
                digits.iter_mut().for_each(|d| *d = 0);
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < letters.len() {
                break;
            }
            digits[i] = 0;
        }
        word.clear();
        word.extend(digits.iter().map(|&d| letters[d]));
    }
}

fn blue_loop_graphs() -> Vec<(String, BundleGraph)> {
    let mut graphs: Vec<_> = suite_graphs().into_iter().filter(|(name, _)| name == "blue-loop").collect();
    graphs.push(("blue-loop-m1".into(), two_vertex(1, 1, 0).add_loop("k", "v", 1)));
    graphs
}

fn lemma() -> Check {
    let start = Instant::now();
    let mut rules = 0;
    for (name, g) in suite_graphs() {
        let p = BundlePresentation::new(&g).map_err(|e| e.to_string())?;
        let prec = lemma_precedence(&p);
        let partition = p.restricted();
        for rule in partition.restricted().rules() {
            rules += 1;
            if !rpo_greater(&rule.lhs, &rule.rhs, &prec).map_err(|e| e.to_string())? {
                return Err(format!("{name}: {} is not RPO-decreasing", partition.restricted().format_rule(rule)));
            }
        }
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(10) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{rules}/{rules} restricted rules decrease over {} graphs in {took:.2?}", suite_graphs().len()))
}

fn psi_decrease() -> Check {
    let mut applications = 0u64;
    let mut words = 0;
    for (name, g) in blue_loop_graphs() {
        let p = BundlePresentation::new(&g).map_err(|e| e.to_string())?;
        let full = p.system();
        let partition = p.restricted();
        let mut cache = DisorderCache::new(&partition, DEFAULT_LENGTH_CAP);
        let letters = p.letters();
        let l = &letters.loops[0];
        let mut sample = Vec::new();
        for x in [letters.fiber[p.loop_vertex(0)], l.t, l.r, l.s] {
            sample.extend([x, x.inverse()]);
        }
        words += for_each_word(&sample, 6, |w| {
            let before = cache.psi_profile(w).map_err(|e| e.to_string())?;
            for occ in full.matcher().all_occurrences(w) {
                let next = rewrite_once(w, occ.position, full.rule(occ.rule)).map_err(|e| e.to_string())?;
                applications += 1;
                if cache.psi_profile(&next).map_err(|e| e.to_string())? >= before {
                    return Err(format!("{name}: {} -> {} does not decrease psi", full.format_word(w), full.format_word(&next)));
                }
            }
            Ok(())
        })?;
    }
    Ok(format!("0 violations in {applications} rule applications over {words} words"))
}

fn completeness() -> Check {
    let mut parts = Vec::new();
    for (name, g) in suite_graphs() {
        let p = BundlePresentation::new(&g).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let full = check_complete(&p.system(), STEP_CAP);
        let restricted = check_complete(p.restricted().restricted(), STEP_CAP);
        let took = start.elapsed();
        for (which, r) in [("R", &full), ("R'", &restricted)] {
            if !r.is_complete() {
                return Err(format!("{name} {which}: {r}"));
            }
        }
        if took >= Duration::from_secs(60) {
            return Err(format!("{name}: took {took:?}"));
        }
        parts.push(format!("{name} {}+{}", full.pair_count(), restricted.pair_count()));
    }
    Ok(format!("all pairs resolved ({})", parts.join(", ")))
}

fn soundness() -> Check {
    let mut total = 0;
    for (name, g) in suite_graphs() {
        let p = BundlePresentation::new(&g).map_err(|e| e.to_string())?;
        let sys = p.system();
        for r in p.defining_relators() {
            total += 1;
            let nf = reduce(&r, &sys, STEP_CAP).map_err(|e| e.to_string())?;
            if !nf.is_empty() {
                return Err(format!("{name}: {} reduces to {}", sys.format_word(&r), sys.format_word(&nf)));
            }
        }
    }
    Ok(format!("{total}/{total} relators reduce to 1"))
}

fn confluence() -> Check {
    let sys = BundlePresentation::new(&two_vertex(1, 1, 0)).map_err(|e| e.to_string())?.system();
    let letters: Vec<Letter> = sys.alphabet().letters().collect();
    let mut rngs: Vec<ChaCha8Rng> = (0..20).map(ChaCha8Rng::seed_from_u64).collect();
    let words = for_each_word(&letters, 6, |w| {
        let nf = reduce(w, &sys, STEP_CAP).map_err(|e| e.to_string())?;
        for (i, rng) in rngs.iter_mut().enumerate() {
            let other = reduce_random(w, &sys, rng, STEP_CAP).map_err(|e| e.to_string())?;
            if other != nf {
                return Err(format!("strategy {i}: {} -> {} vs {}", sys.format_word(w), sys.format_word(&other), sys.format_word(&nf)));
            }
        }
        Ok(())
    })?;
    Ok(format!("{words} words agree under leftmost and 20 random strategies"))
}

fn block_structure() -> Check {
    let p = BundlePresentation::new(&two_vertex(1, 1, 0)).map_err(|e| e.to_string())?;
    let sys = p.system();
    let layout = TwoBundleLayout::new(&p).map_err(|e| e.to_string())?;
    let oracle = AcLengthOracle::new(&sys, &layout, 6, STEP_CAP).map_err(|e| e.to_string())?;
    let mut parsed = 0;
    let mut compared = 0;
    for theta in IrreducibleAutomaton::new(&sys).enumerate(6) {
        let d = block_decompose(&theta, &sys, &layout).map_err(|e| format!("{}: {e}", sys.format_word(&theta)))?;
        parsed += 1;
        if let Some(k) = oracle.lookup(&theta) {
            compared += 1;
            if k != d.k() {
                return Err(format!("{}: {} blocks but AC-length {k}", sys.format_word(&theta), d.k()));
            }
        }
    }
    Ok(format!("{parsed} irreducible words parsed, {compared} compared against the radius-6 oracle, 0 mismatches"))
}

fn growth() -> Check {
    let z = IrreducibleAutomaton::new(&integers()).growth(4).map_err(|e| e.to_string())?;
    let z2 = IrreducibleAutomaton::new(&free_abelian(2)).growth(4).map_err(|e| e.to_string())?;
    let z2_brute = brute_force_growth(&free_abelian(2), 4, STEP_CAP).map_err(|e| e.to_string())?;
    if z != [1, 2, 2, 2, 2] || z2 != [1, 4, 8, 12, 16] || z2_brute != z2 {
        return Err(format!("Z {z:?}, Z^2 {z2:?}, brute force {z2_brute:?}"));
    }
    Ok(format!("Z {z:?}, Z^2 {z2:?} (brute force agrees)"))
}

fn negative_control() -> Check {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/broken.rws");
    let out = Command::new(env!("CARGO_BIN_EXE_cbrws"))
        .args(["check", "--system"])
        .arg(&data)
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    match out.status.code() {
        Some(2) if stdout.contains("UNRESOLVED") => Ok("`cbrws check` exits 2 and lists the unresolved pair".into()),
        code => Err(format!("exit {code:?}: {stdout}")),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("lemma reproduction", lemma),
        ("psi decrease", psi_decrease),
        ("completeness", completeness),
        ("soundness", soundness),
        ("confluence by exhaustion", confluence),
        ("block structure", block_structure),
        ("fixture growth", growth),
        ("negative control", negative_control),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(msg) => println!("criterion {} {name}: PASS ({msg}) [{:.2?}]", i + 1, start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({msg}) [{:.2?}]", i + 1, start.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

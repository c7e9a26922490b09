//! Acceptance suite. Runs every criterion in sequence, prints one PASS/FAIL
//! line per criterion and exits nonzero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use theta_cli::run_args;
use theta_core::cartan::verify_all;
use theta_core::centralizers::{enumerate_e6_m, enumerate_e8_c};
use theta_core::characters::{mu_limit_denominator, mu_sign_exponent};
use theta_core::multiplicity::{
    e6_closed_form, e6_congruence, e6_weights_up_to, e8_closed_form, e8_lemma_route,
};
use theta_core::oracle::{Decomposition, GradedDecomposition, ScaleLimits};
use theta_core::weights::{dominant_weights_up_to, positive_roots};
use theta_core::{
    char_at, chi_mu_limit, pairing, residue_sets, rho, Case, Cyclotomic, E6Weight,
    EigenvalueMultiset, HighestWeight, MultiplicityEngine,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < budget, || format!("{what} took {took:?}, budget {budget:?}"))
}

fn e6(v: [u32; 6]) -> E6Weight {
    E6Weight::new(v[0], v[1], v[2], v[3], v[4], v[5]).unwrap()
}

fn w9(head: &[i64]) -> HighestWeight {
    HighestWeight::padded(head, 9).unwrap()
}

fn n(x: u32) -> BigUint {
    BigUint::from(x)
}

fn criterion_1(engine: &MultiplicityEngine) -> Check {
    let start = Instant::now();
    let weights = e6_weights_up_to(3);
    for w in &weights {
        let closed = e6_closed_form(w).map_err(|e| format!("{w}: {e}"))?;
        let avg = engine.e6_averaging(w).map_err(|e| format!("{w}: {e}"))?;
        ensure(closed == avg, || format!("{w}: closed {closed} ≠ averaging {avg}"))?;
    }
    within(start, Duration::from_secs(60), "E6 sweep")?;
    for (w, expected) in [([0; 6], 1), ([1, 0, 0, 0, 0, 0], 0), ([1, 0, 1, 0, 1, 0], 3)] {
        let got = e6_closed_form(&e6(w)).unwrap();
        ensure(got == n(expected), || format!("{w:?} → {got}, expected {expected}"))?;
    }
    ensure(!e6_congruence(&e6([1, 0, 0, 0, 0, 0])), || "congruence".into())?;
    Ok(format!("{} E6 weights agree in {:.2?}", weights.len(), start.elapsed()))
}

fn criterion_2(engine: &MultiplicityEngine) -> Check {
    let start = Instant::now();
    let weights = dominant_weights_up_to(9, 2);
    for l in &weights {
        let closed = e8_closed_form(l).map_err(|e| format!("{l}: {e}"))?;
        let avg = engine.e8_full_averaging(l).map_err(|e| format!("{l}: {e}"))?;
        ensure(closed == avg, || format!("{l}: closed {closed} ≠ averaging {avg}"))?;
        if l.size() % 3 == 0 {
            let lemma = e8_lemma_route(l).map_err(|e| format!("{l}: {e}"))?;
            ensure(closed == lemma, || format!("{l}: closed {closed} ≠ lemma {lemma}"))?;
        } else {
            ensure(closed == n(0), || format!("{l}: |Λ| ≢ 0 but closed = {closed}"))?;
        }
    }
    within(start, Duration::from_secs(60), "E8 sweep")?;
    for (l, expected) in [(HighestWeight::zero(9), 1), (w9(&[1, 1, 1]), 6), (w9(&[1]), 0)] {
        let got = e8_closed_form(&l).unwrap();
        ensure(got == n(expected), || format!("{l} → {got}, expected {expected}"))?;
    }
    Ok(format!("{} E8 weights agree in {:.2?}", weights.len(), start.elapsed()))
}

fn criterion_3() -> Check {
    ensure(mu_limit_denominator() == BigInt::from(157_464), || "denominator ≠ 2³3⁹".into())?;
    let mut samples = dominant_weights_up_to(9, 2);
    samples.extend(dominant_weights_up_to(9, 4).into_iter().filter(|l| l.entries()[0] > 2));
    let mu = EigenvalueMultiset::mu();
    let (mut checked, mut vanishing) = (0, 0);
    for l in samples.iter().filter(|l| l.size() % 3 == 0) {
        let limit = chi_mu_limit(l).map_err(|e| format!("{l}: {e}"))?;
        let direct = char_at(l, &mu).map_err(|e| format!("{l}: {e}"))?;
        ensure(limit == direct, || format!("{l}: limit {limit} ≠ χ(μ) {direct}"))?;
        let s0 = residue_sets(l).sizes()[0];
        ensure(limit.is_zero() == (s0 > 9), || format!("{l}: |S0| = {s0} but limit = {limit}"))?;
        vanishing += usize::from(s0 > 9);
        checked += 1;
    }
    let sign = mu_sign_exponent(&w9(&[1, 1, 1]));
    ensure(char_at(&w9(&[1, 1, 1]), &mu).unwrap() == Cyclotomic::from_integer(3), || "χ(1,1,1)(μ) ≠ 3".into())?;
    Ok(format!("{checked} weights, {vanishing} with |S0| > 9; sign exponent at (1,1,1) = {sign}"))
}

fn criterion_4() -> Check {
    let sizes = residue_sets(&HighestWeight::zero(9)).sizes();
    ensure(sizes == [9, 15, 12], || format!("|S_j(0)| = {sizes:?}"))?;
    let total: i64 = positive_roots(9).map(|a| pairing(a, &rho(9))).sum();
    ensure(total == 120, || format!("Σ⟨α,ρ⟩ = {total}"))?;
    Ok("|S0|,|S1|,|S2| = 9,15,12 and Σ⟨α,ρ⟩ = 120".into())
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let m = enumerate_e6_m().map_err(|e| e.to_string())?;
    ensure(m.order() == 81, || format!("|M| = {}", m.order()))?;
    let mut trivial = 0;
    for g in m.elements() {
        if g.acts_trivially() {
            trivial += 1;
        } else {
            let eigs = g.eigenvalues().map_err(|e| e.to_string())?;
            ensure(eigs.iter().all(|e| e.cube_root_counts() == Some([1, 1, 1])), || {
                format!("{g:?} has eigenvalues outside {{1, ζ3, ζ3²}}")
            })?;
        }
    }
    ensure(trivial == 9, || format!("{trivial} elements act trivially"))?;
    let c = enumerate_e8_c().map_err(|e| e.to_string())?;
    ensure(c.order() == 81, || format!("|C| = {}", c.order()))?;
    let mu = EigenvalueMultiset::mu().sorted();
    let central = c.elements().iter().filter(|g| g.as_scalar().is_some()).count();
    let like_mu = c
        .elements()
        .iter()
        .filter(|g| g.as_scalar().is_none() && g.eigenvalues().map(|e| e.sorted() == mu).unwrap_or(false))
        .count();
    ensure(central == 3 && like_mu == 78, || format!("central {central}, μ-class {like_mu}"))?;
    within(start, Duration::from_secs(5), "group enumeration")?;
    Ok(format!("|M| = 81 (9 trivial), |C| = 81 (3 central, 78 ~ μ) in {:.2?}", start.elapsed()))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let checks = verify_all();
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    ensure(failed.is_empty(), || format!("failed: {failed:?}"))?;
    within(start, Duration::from_secs(5), "Cartan suite")?;
    Ok(format!("{} identities hold exactly in {:.2?}", checks.len(), start.elapsed()))
}

/// Peak resident set size of this process in KiB.
fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn harmonics_bounded(g: &GradedDecomposition, bound: impl Fn(&[i64]) -> BigUint) -> Result<usize, String> {
    let mut labels: Vec<&Vec<i64>> = g.degrees().iter().flat_map(|d| d.keys()).collect();
    labels.sort();
    labels.dedup();
    for label in &labels {
        let h = g.harmonic_series(label).map_err(|e| format!("{label:?}: {e}"))?;
        let sum = BigUint::from(h.partial_sum() as u64);
        let cap = bound(label);
        ensure(sum <= cap, || format!("{label:?}: harmonic partial sum {sum} > {cap}"))?;
    }
    Ok(labels.len())
}

fn criterion_7() -> Check {
    let limits = ScaleLimits::default();
    let g6 = GradedDecomposition::compute(Case::E6, 8, &limits).map_err(|e| e.to_string())?;
    let cauchy = Decomposition::from([
        (vec![1, 1, 1, 1, 2, 0], 1),
        (vec![1, 1, 2, 0, 1, 1], 1),
        (vec![2, 0, 1, 1, 1, 1], 1),
        (vec![2, 0, 2, 0, 2, 0], 1),
    ]);
    ensure(g6.degree(2) == Some(&cauchy), || format!("Sym² = {:?}", g6.degree(2)))?;
    for d in 0..=8 {
        ensure(g6.conserves_dimension(d).unwrap(), || format!("E6 degree {d} loses dimension"))?;
    }
    let p6 = g6.invariant_series();
    ensure(p6.coefficients()[..7] == [1, 0, 0, 0, 0, 0, 1], || format!("E6 invariants {p6:?}"))?;
    let e6_labels = harmonics_bounded(&g6, |l| e6_closed_form(&E6Weight::from_slice(l).unwrap()).unwrap())?;

    let start = Instant::now();
    let g8 = GradedDecomposition::compute(Case::E8, 6, &limits).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    for d in 0..=6 {
        ensure(g8.conserves_dimension(d).unwrap(), || format!("E8 degree {d} loses dimension"))?;
    }
    let p8 = g8.invariant_series();
    ensure(p8.coefficients() == [1, 0, 0, 0, 0, 0, 0], || format!("E8 invariants {p8:?}"))?;
    let e8_labels = harmonics_bounded(&g8, |l| e8_closed_form(&HighestWeight::new(l.to_vec()).unwrap()).unwrap())?;
    ensure(took < Duration::from_secs(600), || format!("E8 d = 6 took {took:?}"))?;
    let peak = peak_rss_kib();
    if let Some(kib) = peak {
        ensure(kib < 2 * 1024 * 1024, || format!("peak RSS {kib} KiB"))?;
    }
    let peak = peak.map_or("unknown".to_string(), |k| format!("{} MiB", k / 1024));
    Ok(format!(
        "Sym² Cauchy, conservation, invariant series and {} harmonic bounds hold; E8 d = 6 in {took:.2?}, peak RSS {peak}",
        e6_labels + e8_labels
    ))
}

fn criterion_8() -> Check {
    let table = |case: &str, threads: &str| {
        let out = run_args(["theta", "--threads", threads, "table", case, "--max", "2"], None);
        (out.code, out.stdout)
    };
    for case in ["e6", "e8"] {
        let first = table(case, "1");
        ensure(first.0 == 0, || format!("{case} table exited {}", first.0))?;
        for threads in ["1", "4", "8"] {
            ensure(table(case, threads) == first, || format!("{case} table differs with {threads} threads"))?;
        }
    }
    let csv = |threads| run_args(["theta", "--threads", threads, "--output", "csv", "table", "e8", "--max", "2"], None);
    ensure(csv("1") == csv("6"), || "csv output differs across thread counts".into())?;
    Ok("table output byte-identical across runs and thread counts 1, 4, 8".into())
}

fn run(name: &str, f: impl FnOnce() -> Check) -> bool {
    let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    match result {
        Ok(detail) => {
            println!("PASS {name}: {detail}");
            true
        }
        Err(why) => {
            println!("FAIL {name}: {why}");
            false
        }
    }
}

fn main() -> ExitCode {
    let engine = MultiplicityEngine::new().expect("centralizer groups");
    let results = [
        run("criterion 1 (E6 closed form = averaging, entries ≤ 3)", || criterion_1(&engine)),
        run("criterion 2 (E8 closed = lemma = averaging, entries ≤ 2)", || criterion_2(&engine)),
        run("criterion 3 (limit formula for χ(μ))", criterion_3),
        run("criterion 4 (root constants)", criterion_4),
        run("criterion 5 (group structure)", criterion_5),
        run("criterion 6 (Cartan suite)", criterion_6),
        run("criterion 7 (graded oracle)", criterion_7),
        run("criterion 8 (determinism)", criterion_8),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} acceptance criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

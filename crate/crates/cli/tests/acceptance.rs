//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. All comparisons are exact.

use std::process::{Command, ExitCode};
use std::time::Instant;

use seqrules::axioms::{
    check_anonymity, check_clone_axiom, check_committee_monotonicity, check_committee_separability, check_continuity,
    check_generator_consistency, check_independence_of_losers, check_information_basis, check_neutrality,
    check_non_imposition, generator_of, AxiomReport, Bounds, CloneAxiom, Verdict,
};
use seqrules::counting::weight_from_counting;
use seqrules::engine::{generator_step, weighted_approval_step};
use seqrules::oracle::{binomial, brute_force_optimal, enumerate_profiles, multiset_count, ProfileUniverse};
use seqrules::witnesses::{
    cc_tiebreak_continuity, witness_clone_acceptance, witness_clone_proportionality, witness_clone_rejection,
    witness_distrust, Witness,
};
use seqrules::{catalog, CandSet, Profile, Rational, Rule, ThieleCounting, Valuation};
use seqrules_cli::commands::{self, Input};
use seqrules_cli::report::render;
use seqrules_cli::{format_profile, parse_profile, AxiomsArgs};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn expect(report: &AxiomReport, verdict: Verdict) -> Result<(), String> {
    ensure(report.verdict == verdict, || {
        format!(
            "{} on {}: expected {}, got {} ({})",
            report.axiom,
            report.subject,
            verdict.as_str(),
            report.verdict.as_str(),
            report.witness.as_ref().map(|w| w.summary.as_str()).unwrap_or("no witness")
        )
    })
}

/// A violation must come with a witness the rule reproduces.
fn expect_violation(report: &AxiomReport, rule: &Rule) -> Result<(), String> {
    expect(report, Verdict::Violation)?;
    let w = report.witness.as_ref().ok_or("violation without witness")?;
    ensure(w.replay(rule).map_err(err)?, || format!("{} witness does not replay", report.axiom))
}

fn profiles(m: usize, n: usize) -> Result<Vec<Profile>, String> {
    Ok(enumerate_profiles(&ProfileUniverse::new(m, n).map_err(err)?).map_err(err)?.collect())
}

fn five_rules(m: usize) -> Result<Vec<Rule>, String> {
    ["seqAV", "seqPAV", "seqCCAV", "seqSAV", "seqAV-CC-alternating"]
        .iter()
        .map(|name| catalog::by_name(name, m).map_err(err))
        .collect()
}

fn sequential_vs_optimal() -> Check {
    let rule = catalog::seq_av(3).map_err(err)?;
    let v = Valuation::thiele(ThieleCounting::av(3).map_err(err)?);
    let mut cases = 0;
    for a in profiles(3, 3)? {
        for k in 0..=3 {
            let seq = rule.apply(&a, k).map_err(err)?;
            let opt = brute_force_optimal(&v, &a, k).map_err(err)?;
            ensure(seq == opt, || format!("{} at k={k}: {seq:?} vs {opt:?}", a.summary()))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (profile, k) cases"))
}

fn sequential_rules_are_consistent() -> Check {
    let mut checks = 0;
    for rule in five_rules(4)? {
        let bounds = Bounds::default();
        // every voter arrangement is replayed, so n is one below the default
        expect(&check_anonymity(&rule, &bounds.with_voters(4, 3)).map_err(err)?, Verdict::PassExhaustive)?;
        expect(&check_neutrality(&rule, &bounds).map_err(err)?, Verdict::PassExhaustive)?;
        expect(&check_committee_monotonicity(&rule, &bounds).map_err(err)?, Verdict::PassExhaustive)?;
        let pairs = Bounds::default().with_m(2, 3).with_voters(5, 2);
        expect(&check_generator_consistency(&generator_of(&rule), &pairs).map_err(err)?, Verdict::PassExhaustive)?;
        checks += 4;
    }
    Ok(format!("{checks} exhaustive checks over 5 rules"))
}

fn weighted_approval_bridge() -> Check {
    let mut cases = 0;
    for (name, h) in catalog::counting_tables(4).map_err(err)? {
        let step = Valuation::step(h.clone());
        let own = catalog::by_name(name, 4).map_err(err)?.valuation().cloned().ok_or("rule has no valuation")?;
        let weights = weight_from_counting(&h);
        for m in 1..=4 {
            for a in profiles(m, 3)? {
                for w in a.candidates().all_committees().into_iter().filter(|w| w.len() < m) {
                    let v = weights.for_target_size(w.len() + 1).map_err(err)?;
                    let bridged = weighted_approval_step(&v, &a, w).map_err(err)?;
                    let direct = generator_step(&step, &a, w).map_err(err)?;
                    let native = generator_step(&own, &a, w).map_err(err)?;
                    ensure(bridged == direct && direct == native, || {
                        format!("{name} on {} with W={}: {bridged:?} {direct:?} {native:?}", a.summary(), w.letters())
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (table, A, W) cases"))
}

fn separations() -> Check {
    let bounds = Bounds::default().with_m(2, 4).with_voters(4, 4);
    let sav = catalog::seq_sav(4).map_err(err)?;
    expect_violation(&check_independence_of_losers(&sav, &bounds).map_err(err)?, &sav)?;
    let alt = catalog::av_cc_alternating(4).map_err(err)?;
    expect_violation(&check_committee_separability(&alt, &bounds).map_err(err)?, &alt)?;
    for name in ["seqAV", "seqPAV", "seqCCAV", "clone-trusting"] {
        let rule = catalog::by_name(name, 4).map_err(err)?;
        expect(&check_independence_of_losers(&rule, &bounds).map_err(err)?, Verdict::PassExhaustive)?;
        expect(&check_committee_separability(&rule, &bounds).map_err(err)?, Verdict::PassExhaustive)?;
    }
    Ok("seqSAV loses independence of losers, alternating loses separability, 4 Thiele rules pass".into())
}

fn replay(w: &Witness, rule: &Rule, profile: &str, params: (usize, Rational, u64)) -> Result<(), String> {
    let check = w.verify(rule).map_err(err)?;
    ensure(check.holds(), || format!("{} witness does not replay on {}", w.axiom, rule.name()))?;
    ensure(format_profile(&w.profile) == profile, || {
        format!("{} witness profile {:?}, expected {profile:?}", w.axiom, format_profile(&w.profile))
    })?;
    ensure((w.x, w.delta.clone(), w.ell) == params, || {
        format!("{} parameters {:?}, expected {params:?}", w.axiom, (w.x, &w.delta, w.ell))
    })
}

fn clone_witnesses() -> Check {
    let q = |p, d| Rational::new(p, d).expect("nonzero denominator");
    let av = ThieleCounting::av(3).map_err(err)?;
    let pav = ThieleCounting::pav(3).map_err(err)?;
    let cc = ThieleCounting::ccav(3).map_err(err)?;
    let trusting = ThieleCounting::clone_trusting(3).map_err(err)?;
    let (seq_av, seq_pav, seq_cc) =
        (catalog::seq_av(3).map_err(err)?, catalog::seq_pav(3).map_err(err)?, catalog::seq_ccav(3).map_err(err)?);
    let ct = catalog::clone_trusting(3).map_err(err)?;

    let w = witness_clone_rejection(&av).map_err(err)?;
    replay(&w, &seq_av, "m=3\n1: 2\n4: 0 1\n", (2, q(1, 1), 2))?;
    let f2 = &w.verify(&seq_av).map_err(err)?.observed[2];
    ensure(f2.unique() == Some(CandSet::from_indices(&[0, 1]).map_err(err)?), || format!("f(A,2) = {f2:?}"))?;

    let w = witness_distrust(&trusting).map_err(err)?;
    replay(&w, &ct, "m=3\n2: 0\n2: 2\n1: 0 1\n", (2, q(3, 1), 1))?;

    let w = witness_clone_acceptance(&pav).map_err(err)?;
    replay(&w, &seq_pav, "m=3\n2: 2\n3: 0 1\n", (2, q(1, 2), 3))?;
    let w = witness_clone_acceptance(&cc).map_err(err)?;
    let check = w.verify(&seq_cc).map_err(err)?;
    ensure(check.holds() && (w.x, w.ell) == (2, 2), || "seqCCAV clone-acceptance witness".into())?;

    let w = witness_clone_proportionality(&av).map_err(err)?;
    replay(&w, &seq_av, "m=3\n3: 2\n4: 0 1\n", (2, q(1, 2), 2))?;
    let w = witness_clone_proportionality(&cc).map_err(err)?;
    replay(&w, &seq_cc, "m=3\n2: 2\n5: 0 1\n", (2, q(1, 2), 2))?;

    let positive = Bounds::default().with_m(3, 3).with_voters(5, 3);
    expect(&check_clone_axiom(&seq_cc, CloneAxiom::Rejection, &positive).map_err(err)?, Verdict::PassExhaustive)?;
    expect(&check_clone_axiom(&seq_av, CloneAxiom::Acceptance, &positive).map_err(err)?, Verdict::PassExhaustive)?;
    expect(&check_clone_axiom(&seq_av, CloneAxiom::Distrust, &positive).map_err(err)?, Verdict::PassExhaustive)?;
    let blocs = Bounds { max_bloc: 8, max_bloc_k: 3, ..Bounds::default().with_m(2, 4) };
    let pav4 = catalog::seq_pav(4).map_err(err)?;
    expect(&check_clone_axiom(&pav4, CloneAxiom::Proportionality, &blocs).map_err(err)?, Verdict::PassExhaustive)?;
    Ok("6 witnesses replayed, 4 positive directions exhaustive".into())
}

/// The universal checks of the characterization, run on a zoo rule: every
/// one must pass except `fails`, which must be violated.
fn universal_matrix(rule: &Rule, fails: Option<seqrules::axioms::Axiom>) -> Result<usize, String> {
    use seqrules::axioms::Axiom;
    let bounds = Bounds::default();
    let reports = vec![
        check_anonymity(rule, &bounds).map_err(err)?,
        check_neutrality(rule, &bounds).map_err(err)?,
        check_committee_monotonicity(rule, &bounds).map_err(err)?,
        check_generator_consistency(&generator_of(rule), &bounds).map_err(err)?,
    ];
    for r in &reports {
        if Some(r.axiom) == fails {
            expect(r, Verdict::Violation)?;
            let w = r.witness.as_ref().ok_or("violation without witness")?;
            let replays = match r.axiom {
                Axiom::GeneratorConsistency => w.replay_generator(&generator_of(rule)),
                _ => w.replay(rule),
            };
            ensure(replays.map_err(err)?, || format!("{} witness for {} does not replay", r.axiom, rule.name()))?;
        } else {
            expect(r, Verdict::PassExhaustive)?;
        }
    }
    Ok(reports.len())
}

fn independence_matrix() -> Check {
    use seqrules::axioms::Axiom;
    let mut checks = 0;
    checks += universal_matrix(&catalog::voter1_doubled_seq_av(), Some(Axiom::Anonymity))?;
    checks += universal_matrix(&catalog::candidate_a_doubled_seq_av(), Some(Axiom::Neutrality))?;

    let trivial = catalog::trivial();
    checks += universal_matrix(&trivial, None)?;
    let ni = check_non_imposition(&trivial, &Bounds::default()).map_err(err)?;
    expect(&ni, Verdict::Inconclusive)?;
    ensure(ni.note.contains("structural"), || format!("non-imposition note lacks the tie diagnosis: {}", ni.note))?;

    let cc = catalog::cc_tiebreak_seq_av();
    checks += universal_matrix(&cc, None)?;
    let w = cc_tiebreak_continuity();
    let cont = check_continuity(&cc, &w.a, &w.a_prime, w.k, Bounds::default().j_max).map_err(err)?;
    expect(&cont, Verdict::Inconclusive)?;

    let reverse = catalog::by_name("reverse-seqPAV", 4).map_err(err)?;
    checks += universal_matrix(&reverse, Some(Axiom::GeneratorConsistency))?;
    Ok(format!("{checks} universal checks over 5 zoo rules, plus non-imposition and continuity diagnoses"))
}

fn information_basis() -> Check {
    let bounds = Bounds { max_w: 2, ..Bounds::default().with_m(4, 4).with_voters(2, 2) };
    let mut instances = 0;
    for (name, h) in catalog::counting_tables(4).map_err(err)? {
        let report = check_information_basis(name, &Valuation::step(h), &bounds).map_err(err)?;
        expect(&report, Verdict::PassExhaustive)?;
        instances += report.instances;
    }
    Ok(format!("{instances} (table, A, W) instances"))
}

fn infrastructure() -> Check {
    for m in 1..=3 {
        for a in profiles(m, 3)? {
            let text = format_profile(&a);
            let back = parse_profile(&text).map_err(err)?;
            ensure(back.anon_eq(&a) && format_profile(&back) == text, || format!("round trip of {text:?}"))?;
        }
    }

    let p1 = Input { path: "P1", text: "m=3\n3: 0 1\n1: 2\n" };
    let compute = || commands::compute("seqPAV", p1, 3, None, None).map(|o| render(&o.report)).map_err(err);
    ensure(compute()? == compute()?, || "compute reports differ".into())?;
    let args = AxiomsArgs { bounds: Bounds::small(3, 3).with_voters(3, 2), ..AxiomsArgs::default() };
    let axioms = || commands::axioms("seqPAV", "all", args, None).map(|o| render(&o.report)).map_err(err);
    ensure(axioms()? == axioms()?, || "axiom reports differ".into())?;
    let dir = std::env::temp_dir().join(format!("seqrules-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let path = dir.join("p1.txt");
    std::fs::write(&path, p1.text).map_err(err)?;
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_seqrules"))
            .args(["compute", "seqCCAV", path.to_str().expect("utf-8 path"), "2"])
            .output()
            .map(|o| o.stdout)
            .map_err(err)
    };
    let first = run()?;
    ensure(!first.is_empty() && first == run()?, || "binary output differs between runs".into())?;

    for m in 1..=3 {
        for n in 1..=4 {
            let u = ProfileUniverse::exactly(m, n).map_err(err)?;
            let listed = enumerate_profiles(&u).map_err(err)?.count() as u128;
            let formula = binomial((1 << m) - 1 + n as u128 - 1, n as u128);
            ensure(listed == formula && multiset_count(m, n) == formula, || {
                format!("m={m}, n={n}: enumerated {listed}, formula {formula}")
            })?;
        }
    }
    Ok("round trip, byte-identical reports, multiset counts".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("seqAV equals optimizing AV (m=3, n<=3, k<=3)", sequential_vs_optimal),
        ("sequential rules are anonymous, neutral, monotone and consistent", sequential_rules_are_consistent),
        ("step generators equal weighted approval steps (m<=4, n<=3)", weighted_approval_bridge),
        ("independence of losers and separability separations (m<=4, n<=4)", separations),
        ("clone witnesses replay; positive clone directions pass", clone_witnesses),
        ("zoo rules fail exactly their advertised axiom", independence_matrix),
        ("generators depend only on n-statistics (m=4, n<=2, |W|<=2)", information_basis),
        ("profile round trip, deterministic reports, profile counts", infrastructure),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {title} [{detail}; {secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title} [{why}; {secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

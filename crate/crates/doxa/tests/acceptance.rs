//! Acceptance criteria, one line each.
//!
//! Every numeric comparison is exact rational equality (tolerance 0), and
//! every sweep tolerates 0 violating instances. Sweep seeds and bounds are
//! pinned below.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use doxa::format::{read_market, read_structure};
use doxa_core::betting::{expectations_at, is_common_belief_agreeable, is_common_knowledge_agreeable, Bet};
use doxa_core::harness::oracles::{common_belief_fixed_point, strong_cbt_brute};
use doxa_core::harness::{
    brute_cb_bet_exists, check_no_betting_s5, generate, instance_config, sweep, Claim, Outcome, SweepConfig,
};
use doxa_core::market::{simulate, Action, Termination};
use doxa_core::priors::{find_common_delusional_prior, find_common_standard_prior, has_unique_prior, PriorMode};
use doxa_core::rational::{parse_rational, ratio};
use doxa_core::reachability::{common_belief_holds, strong_cbt, weak_cbt};
use doxa_core::revision::{is_delusional_prior, posterior_expectation};
use doxa_core::structures::classify;
use doxa_core::{Distribution, ProbabilisticBeliefStructure, RandomVariable, StateSet, StateSpace};

const SWEEP_COUNT: usize = 1000;
const SWEEP_SEED: u64 = 1;
const MAX_STATES: usize = 6;
const MAX_PLAYERS: usize = 3;
const MAX_WEIGHT: u32 = 6;
const ORACLE_SEED: u64 = 9;
const BRUTE_STATE_LIMIT: usize = 12;

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn structure(name: &str) -> ProbabilisticBeliefStructure {
    read_structure(&std::fs::read_to_string(example(name)).expect("golden file")).expect("valid golden file")
}

fn dist(space: &StateSpace, masses: &[&str]) -> Distribution {
    Distribution::new(space, masses.iter().map(|m| parse_rational(m).unwrap()).collect()).unwrap()
}

fn rv(space: &StateSpace, values: &[&str]) -> RandomVariable {
    RandomVariable::new(space, values.iter().map(|m| parse_rational(m).unwrap()).collect()).unwrap()
}

fn set(space: &StateSpace, names: &[&str]) -> StateSet {
    space.set_of(names.iter().copied()).unwrap()
}

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn criterion1() -> Check {
    let pbs = structure("example1.structure");
    let sp = pbs.space();
    let standard = find_common_standard_prior(&pbs).map_err(|e| e.to_string())?;
    ensure(standard.prior() == Some(&dist(sp, &["0", "1/2", "1/2"])), "standard prior is not (0,1/2,1/2)")?;
    ensure(has_unique_prior(&pbs, PriorMode::Standard).unwrap(), "standard prior is not unique")?;
    for mu in [["0", "1/2", "1/2"], ["1/3", "1/3", "1/3"]] {
        let mu = dist(sp, &mu);
        ensure(
            pbs.players().all(|i| is_delusional_prior(&mu, pbs.type_function(i))),
            "a listed delusional prior fails to verify",
        )?;
    }
    Ok("unique standard prior (0,1/2,1/2); (0,1/2,1/2) and (1/3,1/3,1/3) are delusional priors".into())
}

fn criterion2() -> Check {
    let pbs = structure("example2.structure");
    let sp = pbs.space();
    let bs = pbs.belief_structure();
    let cert = find_common_delusional_prior(&pbs).map_err(|e| e.to_string())?;
    let mu = cert.prior().ok_or("no common delusional prior")?;
    ensure(pbs.players().all(|i| is_delusional_prior(mu, pbs.type_function(i))), "prior fails to verify")?;
    let h = RandomVariable::indicator(sp, &set(sp, &["w1", "w2"]));
    let want = [ratio(2, 3), ratio(1, 2)];
    for s in sp.states() {
        for i in pbs.players() {
            ensure(
                posterior_expectation(&h, pbs.type_function(i), s) == want[i.0],
                "posterior of H differs from 2/3, 1/2",
            )?;
        }
    }
    let bet = Bet::against(rv(sp, &["5/12", "5/12", "-7/12"]));
    for s in sp.states() {
        ensure(is_common_belief_agreeable(&bet, &pbs, &bs, s), "1^H - 7/12 is not common-belief agreeable")?;
        ensure(weak_cbt(&bs, s).is_none(), "weak common belief in truth holds somewhere")?;
    }
    Ok("delusional prior exists; E[1^H] = 2/3, 1/2; 1^H - 7/12 agreeable by common belief; weak CBT fails at all 3 states".into())
}

fn criterion3() -> Check {
    let pbs = structure("example3.structure");
    let sp = pbs.space();
    let bs = pbs.belief_structure();
    let d = classify(&bs);
    let deluded = set(sp, &["3", "4"]);
    ensure(d.deluded.iter().all(|x| *x == deluded), "delusion sets are not {3,4}")?;
    ensure(!d.interpersonal_credibility, "interpersonal credibility holds")?;
    ensure(d.non_singular, "structure is singular")?;
    ensure(sp.states().all(|s| strong_cbt(&bs, s)), "strong CBT fails somewhere")?;
    let cert = find_common_delusional_prior(&pbs).map_err(|e| e.to_string())?;
    let mu = cert.prior().ok_or("no common delusional prior")?;
    ensure(pbs.players().all(|i| is_delusional_prior(mu, pbs.type_function(i))), "prior fails to verify")?;
    ensure(sp.states().all(|s| !brute_cb_bet_exists(&pbs, s)), "a common-belief agreeable bet exists")?;
    Ok(format!("delusion {{3,4}}; non-singular; strong CBT everywhere; prior {mu}; no bet at any state"))
}

fn criterion4() -> Check {
    let pbs = structure("example3-closing.structure");
    let sp = pbs.space();
    let bet = Bet::against(rv(sp, &["1/4", "1/4", "-6", "3", "-1/8", "1/32", "1/32"]));
    ensure(sp.states().all(|s| is_common_knowledge_agreeable(&bet, &pbs, s)), "bet is not CK agreeable")?;
    let at = |name: &str, player: usize| expectations_at(&bet, &pbs, sp.lookup(name).unwrap())[player].clone();
    ensure(at("3", 0) == ratio(5, 16), "player i on {3,4,5} is not 5/16")?;
    ensure(at("1", 1) == ratio(1, 3), "player j on {1,2,3,4} is not 1/3")?;
    ensure(at("5", 1) == ratio(1, 48), "player j on {5,6,7} is not 1/48")?;
    ensure(!find_common_standard_prior(&pbs).unwrap().exists(), "a common prior exists")?;
    let v = check_no_betting_s5(&pbs).map_err(|e| e.to_string())?;
    ensure(v.outcome == Outcome::Pass, "no-betting check does not pass")?;
    Ok("bet CK agreeable everywhere; expectations 5/16, 1/3, 1/48; no common prior".into())
}

fn criterion5() -> Check {
    let config = read_market(&std::fs::read_to_string(example("cascade.market")).unwrap()).map_err(|e| e.to_string())?;
    let sp = config.space();
    let r = simulate(&config);
    let expect: [[(&[&str], Action); 2]; 3] = [
        [(&["1", "2", "3", "4"], Action::Sell), (&["4", "5", "6"], Action::Buy)],
        [(&["4"], Action::Buy), (&["4", "5", "6"], Action::Buy)],
        [(&["4"], Action::Buy), (&["4"], Action::Buy)],
    ];
    ensure(r.termination == Termination::FixedPoint && r.rounds.len() == 3, "not a 3-round fixed point")?;
    for (log, want) in r.rounds.iter().zip(expect) {
        for (t, (names, action)) in log.traders.iter().zip(want) {
            ensure(t.set == set(sp, names) && t.action == action, "trace differs")?;
        }
    }
    let truth = config.true_state();
    let last = r.final_round().unwrap();
    ensure(last.traders.iter().all(|t| !t.set.contains(&truth)), "true state kept")?;
    let honest = simulate(&config.undistorted());
    ensure(honest.termination == Termination::FixedPoint, "honest run does not converge")?;
    let last = honest.final_round().unwrap();
    ensure(last.traders.iter().all(|t| t.set.contains(&truth)), "honest run drops the true state")?;
    ensure(
        last.traders.iter().all(|t| t.posterior == last.traders[0].posterior),
        "honest posteriors differ",
    )?;
    Ok(format!(
        "distorted: 3 rounds to {{4}}, true state excluded; honest: fixed point after {} rounds, posterior {}",
        honest.rounds_elapsed, last.traders[0].posterior
    ))
}

fn sweep_config(claim: Claim) -> SweepConfig {
    SweepConfig {
        claim,
        count: SWEEP_COUNT,
        seed: SWEEP_SEED,
        max_states: MAX_STATES,
        max_players: MAX_PLAYERS,
        max_weight: MAX_WEIGHT,
    }
}

fn criterion6() -> Check {
    let r = sweep(&sweep_config(Claim::Prop1)).map_err(|e| e.to_string())?;
    let non_singular = r.instances.iter().filter(|i| i.config.non_singular).count();
    ensure(r.tally.pass == SWEEP_COUNT, &format!("{} of {SWEEP_COUNT} instances fail", SWEEP_COUNT - r.tally.pass))?;
    Ok(format!("{SWEEP_COUNT}/{SWEEP_COUNT} instances ({non_singular} generated non-singular)"))
}

fn criterion7() -> Check {
    let r = sweep(&sweep_config(Claim::Theorem1)).map_err(|e| e.to_string())?;
    let verdicts = || r.instances.iter().flat_map(|i| &i.verdicts);
    let checked = verdicts().filter(|v| v.outcome != Outcome::NotApplicable).count();
    let xor = verdicts()
        .filter(|v| v.outcome == Outcome::Fail && v.counterexample.as_ref().is_some_and(|c| c.separating.is_some() || c.prior.is_some()))
        .count();
    let xor_instances = r
        .instances
        .iter()
        .filter(|i| i.verdicts.iter().any(|v| v.outcome == Outcome::Fail && v.counterexample.as_ref().is_some_and(|c| c.separating.is_some() || c.prior.is_some())))
        .count();
    let disagree = verdicts().filter(|v| v.outcome == Outcome::Inconsistent).count();
    let summary = format!(
        "{checked} weak-CBT states checked; {xor} XOR violations with verified certificates in {xor_instances} instances; {disagree} pipeline disagreements; {} extension stuck",
        r.tally.stuck
    );
    if xor == 0 && disagree == 0 && r.tally.stuck == 0 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn criterion8() -> Check {
    let t2 = sweep(&sweep_config(Claim::Theorem2)).map_err(|e| e.to_string())?;
    let s5 = sweep(&sweep_config(Claim::NoBettingS5)).map_err(|e| e.to_string())?;
    let summary = format!(
        "non-singular {}/{SWEEP_COUNT}, S5 {}/{SWEEP_COUNT}",
        t2.tally.pass, s5.tally.pass
    );
    if t2.tally.pass == SWEEP_COUNT && s5.tally.pass == SWEEP_COUNT {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn criterion9() -> Check {
    let mut structures: Vec<ProbabilisticBeliefStructure> =
        ["example1.structure", "example2.structure", "example3.structure", "example3-closing.structure"]
            .iter()
            .map(|n| structure(n))
            .collect();
    let oracle = SweepConfig {
        seed: ORACLE_SEED,
        ..sweep_config(Claim::Prop1)
    };
    structures.extend((0..SWEEP_COUNT).map(|k| generate(&instance_config(&oracle, k))));
    let (mut events, mut brute) = (0usize, 0usize);
    for pbs in &structures {
        let bs = pbs.belief_structure();
        let n = pbs.space().len();
        for mask in 0u32..1 << n {
            let e: StateSet = (0..n).filter(|k| mask & (1 << k) != 0).map(doxa_core::State).collect();
            let fixed = common_belief_fixed_point(&bs, &e);
            for s in pbs.space().states() {
                ensure(fixed.contains(&s) == common_belief_holds(&bs, &e, s), "common belief oracle disagrees")?;
            }
            events += 1;
        }
        if n <= BRUTE_STATE_LIMIT {
            for s in pbs.space().states() {
                ensure(strong_cbt_brute(&bs, s) == strong_cbt(&bs, s), "strong CBT oracle disagrees")?;
                brute += 1;
            }
        }
    }
    Ok(format!(
        "{} structures, {events} events agree with the fixed point; {brute} states agree with the subset search",
        structures.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Example 1 priors", criterion1),
        ("Example 2 prior and bet coexist", criterion2),
        ("Example 3 delusion, priors and no bet", criterion3),
        ("closing S5 bet and no common prior", criterion4),
        ("market cascade", criterion5),
        ("sweep: strong CBT everywhere iff non-singular", criterion6),
        ("sweep: weak CBT implies prior XOR bet", criterion7),
        ("sweep: non-singular and S5 XOR", criterion8),
        ("oracle agreement", criterion9),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} ({ms} ms)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail} ({ms} ms)", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

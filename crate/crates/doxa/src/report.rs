//! Command results as serializable reports.
//!
//! Every report renders either as JSON or as text, and both renderings are
//! produced from the same strings, so the numbers always match.

use std::fmt::Write as _;

use serde::Serialize;

use doxa_core::betting::{
    expectations_at, find_cb_agreeable_bet, joint_bet, Bet, BetSearch, ExtensionCase,
};
use doxa_core::harness::{self, Claim, Counterexample, InstanceReport, Outcome, SweepReport, Verdict};
use doxa_core::market::{Action, BreakdownCause, MarketConfig, SimulationResult, Termination};
use doxa_core::priors::{find_common_prior, separating_bet, PriorCertificate, PriorMode, SeparatingBet};
use doxa_core::reachability::{common_belief_set, meet, strong_cbt, weak_cbt};
use doxa_core::structures::classify;
use doxa_core::{Distribution, Error, ProbabilisticBeliefStructure, Rational, State, StateSet, StateSpace};

pub trait Report: Serialize {
    fn human(&self) -> String;

    fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

pub fn rational(r: &Rational) -> String {
    r.to_string()
}

fn names(space: &StateSpace, set: &StateSet) -> Vec<String> {
    set.iter().map(|s| space.name(*s).to_string()).collect()
}

fn masses(d: &Distribution) -> Vec<String> {
    d.masses().iter().map(rational).collect()
}

fn braces(set: &[String]) -> String {
    format!("{{{}}}", set.join(","))
}

fn cells(list: &[Vec<String>]) -> String {
    list.iter().map(|c| braces(c)).collect::<Vec<_>>().join(" | ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug, Serialize)]
pub struct ValidateReport {
    pub states: usize,
    pub players: usize,
    pub partitional: bool,
    pub kd45: bool,
    pub s5: bool,
}

impl ValidateReport {
    /// Parsing already enforced partitionality and the KD45 axioms.
    pub fn new(pbs: &ProbabilisticBeliefStructure) -> Self {
        Self {
            states: pbs.space().len(),
            players: pbs.num_players(),
            partitional: true,
            kd45: true,
            s5: pbs.belief_structure().is_s5(),
        }
    }
}

impl Report for ValidateReport {
    fn human(&self) -> String {
        format!(
            "partitional: {}; KD45: {}\nstates: {}; players: {}; S5: {}\n",
            yes(self.partitional),
            yes(self.kd45),
            self.states,
            self.players,
            yes(self.s5)
        )
    }
}

#[derive(Debug, Serialize)]
pub struct PlayerSummary {
    pub name: String,
    pub partition: Vec<Vec<String>>,
    /// One possibility set per partition cell.
    pub beliefs: Vec<Vec<String>>,
    pub deluded: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct WeakCbtSummary {
    pub state: String,
    pub witness: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub players: Vec<PlayerSummary>,
    pub s5: bool,
    pub non_singular: bool,
    pub interpersonal_credibility: bool,
    pub mixed: Vec<String>,
    pub meet: Vec<Vec<String>>,
    pub strong_cbt: Vec<String>,
    pub weak_cbt: Vec<WeakCbtSummary>,
}

impl ClassifyReport {
    pub fn new(pbs: &ProbabilisticBeliefStructure) -> Self {
        let space = pbs.space();
        let bs = pbs.belief_structure();
        let d = classify(&bs);
        let players = pbs
            .players()
            .map(|i| {
                let part = bs.partition(i);
                PlayerSummary {
                    name: pbs.player_name(i).to_string(),
                    partition: part.cells().iter().map(|c| names(space, c)).collect(),
                    beliefs: part
                        .cells()
                        .iter()
                        .map(|c| names(space, bs.belief(i, *c.iter().next().expect("non-empty cell"))))
                        .collect(),
                    deluded: names(space, &d.deluded[i.0]),
                }
            })
            .collect();
        Self {
            players,
            s5: bs.is_s5(),
            non_singular: d.non_singular,
            interpersonal_credibility: d.interpersonal_credibility,
            mixed: names(space, &d.mixed),
            meet: meet(space, pbs.partitions()).cells().iter().map(|c| names(space, c)).collect(),
            strong_cbt: names(space, &space.states().filter(|s| strong_cbt(&bs, *s)).collect()),
            weak_cbt: space
                .states()
                .map(|s| WeakCbtSummary {
                    state: space.name(s).to_string(),
                    witness: weak_cbt(&bs, s).map(|w| space.name(w).to_string()),
                })
                .collect(),
        }
    }
}

impl Report for ClassifyReport {
    fn human(&self) -> String {
        let mut out = String::new();
        for p in &self.players {
            let _ = writeln!(out, "player {}", p.name);
            let _ = writeln!(out, "  partition: {}", cells(&p.partition));
            let _ = writeln!(out, "  beliefs:   {}", cells(&p.beliefs));
            let _ = writeln!(out, "  deluded:   {}", braces(&p.deluded));
        }
        let _ = writeln!(out, "S5: {}", yes(self.s5));
        let _ = writeln!(out, "non-singular: {}", yes(self.non_singular));
        let _ = writeln!(out, "interpersonal credibility: {}", yes(self.interpersonal_credibility));
        let _ = writeln!(out, "mixed states: {}", braces(&self.mixed));
        let _ = writeln!(out, "meet: {}", cells(&self.meet));
        let _ = writeln!(out, "strong common belief in truth at: {}", braces(&self.strong_cbt));
        let weak: Vec<String> = self
            .weak_cbt
            .iter()
            .map(|w| match &w.witness {
                Some(v) => format!("{} (via {v})", w.state),
                None => format!("{} (none)", w.state),
            })
            .collect();
        let _ = writeln!(out, "weak common belief in truth: {}", weak.join(", "));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct Payoff {
    pub player: String,
    pub values: Vec<String>,
}

fn payoffs(pbs: &ProbabilisticBeliefStructure, variables: &[doxa_core::RandomVariable]) -> Vec<Payoff> {
    pbs.players()
        .zip(variables)
        .map(|(i, f)| Payoff {
            player: pbs.player_name(i).to_string(),
            values: f.values().iter().map(rational).collect(),
        })
        .collect()
}

fn bet_payoffs(pbs: &ProbabilisticBeliefStructure, bet: &Bet) -> Vec<Payoff> {
    payoffs(pbs, bet.payoffs())
}

fn separating_payoffs(pbs: &ProbabilisticBeliefStructure, sep: &SeparatingBet) -> Vec<Payoff> {
    payoffs(pbs, &sep.payoffs)
}

fn render_payoffs(out: &mut String, list: &[Payoff], indent: &str) {
    for p in list {
        let _ = writeln!(out, "{indent}{}: {}", p.player, p.values.join(" "));
    }
}

fn mode_name(mode: PriorMode) -> &'static str {
    match mode {
        PriorMode::Standard => "standard",
        PriorMode::Delusional => "delusional",
    }
}

#[derive(Debug, Serialize)]
pub struct PriorReport {
    pub mode: &'static str,
    pub states: Vec<String>,
    pub exists: bool,
    pub prior: Option<Vec<String>>,
    /// A bet whose payoffs sum to at most zero everywhere but which every
    /// player expects to win weakly, and someone strictly.
    pub separating_bet: Option<Vec<Payoff>>,
}

impl PriorReport {
    pub fn new(pbs: &ProbabilisticBeliefStructure, mode: PriorMode) -> Result<Self, Error> {
        let cert = find_common_prior(pbs, mode)?;
        let separating = match &cert {
            PriorCertificate::Exists(_) => None,
            PriorCertificate::None => separating_bet(pbs, mode)?.map(|s| separating_payoffs(pbs, &s)),
        };
        Ok(Self {
            mode: mode_name(mode),
            states: pbs.space().names().to_vec(),
            exists: cert.exists(),
            prior: cert.prior().map(masses),
            separating_bet: separating,
        })
    }
}

impl Report for PriorReport {
    fn human(&self) -> String {
        let mut out = String::new();
        match &self.prior {
            Some(p) => {
                let _ = writeln!(out, "{}", p.join(" "));
            }
            None => {
                let _ = writeln!(out, "NO-PRIOR");
                if let Some(sep) = &self.separating_bet {
                    let _ = writeln!(out, "separating bet over {}:", self.states.join(" "));
                    render_payoffs(&mut out, sep, "  ");
                }
            }
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct StepSummary {
    pub state: String,
    pub case: &'static str,
    pub payer: String,
}

#[derive(Debug, Serialize)]
pub struct Expectations {
    pub state: String,
    pub values: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct BetReport {
    pub state: String,
    pub common_belief_set: Vec<String>,
    pub weak_cbt: bool,
    /// `constructive` or `joint`.
    pub method: &'static str,
    pub bet: bool,
    pub payoffs: Option<Vec<Payoff>>,
    pub expectations: Option<Vec<Expectations>>,
    pub core: Option<Vec<String>>,
    pub steps: Vec<StepSummary>,
    pub prior: Option<Vec<String>>,
    /// `global` or `core`.
    pub prior_scope: Option<&'static str>,
}

impl BetReport {
    pub fn new(pbs: &ProbabilisticBeliefStructure, state: State) -> Result<Self, Error> {
        let space = pbs.space();
        let bs = pbs.belief_structure();
        let q = common_belief_set(&bs, state).members;
        let global = find_common_prior(pbs, PriorMode::Delusional)?;
        let mut report = Self {
            state: space.name(state).to_string(),
            common_belief_set: names(space, &q),
            weak_cbt: weak_cbt(&bs, state).is_some(),
            method: "constructive",
            bet: false,
            payoffs: None,
            expectations: None,
            core: None,
            steps: Vec::new(),
            prior: global.prior().map(masses),
            prior_scope: global.exists().then_some("global"),
        };
        let found = if report.weak_cbt {
            match find_cb_agreeable_bet(pbs, state)? {
                BetSearch::Bet { bet, core, steps } => {
                    report.core = Some(names(space, &core));
                    report.steps = steps
                        .iter()
                        .map(|s| StepSummary {
                            state: space.name(s.state).to_string(),
                            case: match s.case {
                                ExtensionCase::Forward => "forward",
                                ExtensionCase::ZeroSelfMass => "zero-self-mass",
                            },
                            payer: pbs.player_name(s.payer).to_string(),
                        })
                        .collect();
                    Some(bet)
                }
                BetSearch::NoBet { core, core_prior } => {
                    report.core = Some(names(space, &core));
                    if !global.exists() {
                        report.prior = Some(masses(&core_prior));
                        report.prior_scope = Some("core");
                    }
                    None
                }
            }
        } else {
            report.method = "joint";
            let (margin, bet) = joint_bet(pbs, &q);
            (margin > doxa_core::rational::zero()).then_some(bet)
        };
        if let Some(bet) = found {
            report.bet = true;
            report.expectations = Some(
                q.iter()
                    .map(|s| Expectations {
                        state: space.name(*s).to_string(),
                        values: expectations_at(&bet, pbs, *s).iter().map(rational).collect(),
                    })
                    .collect(),
            );
            report.payoffs = Some(bet_payoffs(pbs, &bet));
            report.prior = None;
            report.prior_scope = None;
        }
        Ok(report)
    }
}

impl Report for BetReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let head = if self.bet { "BET" } else { "NO-BET" };
        let _ = writeln!(
            out,
            "{head} at {} (common belief set {})",
            self.state,
            braces(&self.common_belief_set)
        );
        if !self.weak_cbt {
            let _ = writeln!(out, "weak common belief in truth fails; answered by the joint program");
        }
        if let Some(core) = &self.core {
            let _ = writeln!(out, "core: {}", braces(core));
        }
        for s in &self.steps {
            let _ = writeln!(out, "extended to {} ({}, paid by {})", s.state, s.case, s.payer);
        }
        if let Some(p) = &self.payoffs {
            let _ = writeln!(out, "payoffs:");
            render_payoffs(&mut out, p, "  ");
        }
        if let Some(list) = &self.expectations {
            let _ = writeln!(out, "expectations:");
            for e in list {
                let _ = writeln!(out, "  {}: {}", e.state, e.values.join(" "));
            }
        }
        if let (Some(p), Some(scope)) = (&self.prior, self.prior_scope) {
            let _ = writeln!(out, "prior ({scope}): {}", p.join(" "));
        }
        out
    }
}

pub fn claim_name(claim: Claim) -> &'static str {
    match claim {
        Claim::Theorem1 => "theorem1",
        Claim::Theorem2 => "theorem2",
        Claim::NoBettingS5 => "no-betting",
        Claim::Prop1 => "prop1",
    }
}

pub fn outcome_name(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::NotApplicable => "n/a",
        Outcome::Inconsistent => "inconsistent",
    }
}

#[derive(Debug, Serialize)]
pub struct CoreSummary {
    pub states: Vec<String>,
    pub prior: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CounterexampleSummary {
    pub state: Option<String>,
    pub prior: Option<Vec<String>>,
    pub bet: Option<Vec<Payoff>>,
    pub separating_bet: Option<Vec<Payoff>>,
    pub cores: Vec<CoreSummary>,
}

impl CounterexampleSummary {
    fn new(pbs: &ProbabilisticBeliefStructure, cx: &Counterexample) -> Self {
        let space = pbs.space();
        Self {
            state: cx.state.map(|s| space.name(s).to_string()),
            prior: cx.prior.as_ref().map(masses),
            bet: cx.bet.as_ref().map(|b| bet_payoffs(pbs, b)),
            separating_bet: cx.separating.as_ref().map(|s| separating_payoffs(pbs, s)),
            cores: cx
                .cores
                .iter()
                .map(|(c, mu)| CoreSummary {
                    states: names(space, c),
                    prior: masses(mu),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerdictSummary {
    pub claim: &'static str,
    pub state: Option<String>,
    pub outcome: &'static str,
    pub note: Option<String>,
    pub counterexample: Option<CounterexampleSummary>,
}

impl VerdictSummary {
    pub fn new(pbs: &ProbabilisticBeliefStructure, v: &Verdict) -> Self {
        Self {
            claim: claim_name(v.claim),
            state: v.state.map(|s| pbs.space().name(s).to_string()),
            outcome: outcome_name(v.outcome),
            note: v.note.clone(),
            counterexample: v.counterexample.as_ref().map(|c| CounterexampleSummary::new(pbs, c)),
        }
    }

    fn render(&self, out: &mut String, indent: &str) {
        let at = self.state.as_ref().map(|s| format!(" at {s}")).unwrap_or_default();
        let note = self.note.as_ref().map(|n| format!(": {n}")).unwrap_or_default();
        let _ = writeln!(out, "{indent}{}{at} {}{note}", self.claim, self.outcome.to_uppercase());
        if let Some(cx) = &self.counterexample {
            let deeper = format!("{indent}  ");
            if let Some(p) = &cx.prior {
                let _ = writeln!(out, "{deeper}prior: {}", p.join(" "));
            }
            if let Some(b) = &cx.bet {
                let _ = writeln!(out, "{deeper}bet:");
                render_payoffs(out, b, &format!("{deeper}  "));
            }
            if let Some(b) = &cx.separating_bet {
                let _ = writeln!(out, "{deeper}separating bet:");
                render_payoffs(out, b, &format!("{deeper}  "));
            }
            for c in &cx.cores {
                let _ = writeln!(out, "{deeper}core {} with prior {}", braces(&c.states), c.prior.join(" "));
            }
        }
    }
}

fn is_failure(outcome: &str) -> bool {
    outcome == "fail" || outcome == "inconsistent"
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub verdicts: Vec<VerdictSummary>,
}

impl CheckReport {
    pub fn new(pbs: &ProbabilisticBeliefStructure, claim: Claim) -> Result<Self, Error> {
        Ok(Self {
            verdicts: harness::check_instance(claim, pbs)?
                .iter()
                .map(|v| VerdictSummary::new(pbs, v))
                .collect(),
        })
    }

    pub fn failed(&self) -> bool {
        self.verdicts.iter().any(|v| is_failure(v.outcome))
    }
}

impl Report for CheckReport {
    fn human(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            v.render(&mut out, "");
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct InstanceSummary {
    pub index: usize,
    pub seed: u64,
    pub states: usize,
    pub players: usize,
    pub digest: String,
    pub outcome: &'static str,
    /// Failing and inconsistent verdicts only.
    pub failures: Vec<VerdictSummary>,
}

impl InstanceSummary {
    fn new(inst: &InstanceReport) -> Self {
        let outcome = outcome_name(inst.outcome());
        let failures = if is_failure(outcome) {
            let pbs = harness::generate(&inst.config);
            inst.verdicts
                .iter()
                .filter(|v| is_failure(outcome_name(v.outcome)))
                .map(|v| VerdictSummary::new(&pbs, v))
                .collect()
        } else {
            Vec::new()
        };
        Self {
            index: inst.index,
            seed: inst.config.seed,
            states: inst.config.num_states,
            players: inst.config.num_players,
            digest: format!("{:016x}", inst.digest),
            outcome,
            failures,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SweepSummary {
    pub claim: &'static str,
    pub count: usize,
    pub seed: u64,
    pub max_states: usize,
    pub max_players: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub inconsistent: usize,
    pub stuck: usize,
    pub instances: Vec<InstanceSummary>,
}

impl SweepSummary {
    pub fn new(r: &SweepReport) -> Self {
        Self {
            claim: claim_name(r.config.claim),
            count: r.config.count,
            seed: r.config.seed,
            max_states: r.config.max_states,
            max_players: r.config.max_players,
            pass: r.tally.pass,
            fail: r.tally.fail,
            not_applicable: r.tally.not_applicable,
            inconsistent: r.tally.inconsistent,
            stuck: r.tally.stuck,
            instances: r.instances.iter().map(InstanceSummary::new).collect(),
        }
    }

    pub fn failed(&self) -> bool {
        self.fail > 0 || self.inconsistent > 0
    }
}

impl Report for SweepSummary {
    fn human(&self) -> String {
        let mut out = String::new();
        for i in &self.instances {
            let _ = writeln!(
                out,
                "{:>5} seed={} states={} players={} digest={} {}",
                i.index,
                i.seed,
                i.states,
                i.players,
                i.digest,
                i.outcome.to_uppercase()
            );
            for v in &i.failures {
                v.render(&mut out, "      ");
            }
        }
        let _ = writeln!(
            out,
            "{}: {} instances, pass {}, fail {}, n/a {}, inconsistent {}, extension stuck {}",
            self.claim, self.count, self.pass, self.fail, self.not_applicable, self.inconsistent, self.stuck
        );
        out
    }
}

#[derive(Debug, Serialize)]
pub struct StateAnalysis {
    pub state: String,
    pub common_belief_set: Vec<String>,
    pub strong_cbt: bool,
    pub weak_cbt: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub structure: ClassifyReport,
    pub standard_prior: PriorReport,
    pub delusional_prior: PriorReport,
    pub states: Vec<StateAnalysis>,
    pub verdicts: Vec<VerdictSummary>,
}

impl AnalyzeReport {
    pub fn new(pbs: &ProbabilisticBeliefStructure) -> Result<Self, Error> {
        let space = pbs.space();
        let bs = pbs.belief_structure();
        let mut verdicts = Vec::new();
        for claim in [Claim::Prop1, Claim::Theorem1, Claim::Theorem2, Claim::NoBettingS5] {
            verdicts.extend(harness::check_instance(claim, pbs)?.iter().map(|v| VerdictSummary::new(pbs, v)));
        }
        Ok(Self {
            structure: ClassifyReport::new(pbs),
            standard_prior: PriorReport::new(pbs, PriorMode::Standard)?,
            delusional_prior: PriorReport::new(pbs, PriorMode::Delusional)?,
            states: space
                .states()
                .map(|s| StateAnalysis {
                    state: space.name(s).to_string(),
                    common_belief_set: names(space, &common_belief_set(&bs, s).members),
                    strong_cbt: strong_cbt(&bs, s),
                    weak_cbt: weak_cbt(&bs, s).map(|w| space.name(w).to_string()),
                })
                .collect(),
            verdicts,
        })
    }

    pub fn failed(&self) -> bool {
        self.verdicts.iter().any(|v| is_failure(v.outcome))
    }
}

impl Report for AnalyzeReport {
    fn human(&self) -> String {
        let mut out = self.structure.human();
        for p in [&self.standard_prior, &self.delusional_prior] {
            let _ = write!(out, "{} prior: {}", p.mode, p.human());
        }
        for s in &self.states {
            let _ = writeln!(
                out,
                "state {}: common belief set {}; strong CBT {}; weak CBT {}",
                s.state,
                braces(&s.common_belief_set),
                yes(s.strong_cbt),
                s.weak_cbt.as_ref().map(|w| format!("via {w}")).unwrap_or_else(|| "no".into())
            );
        }
        for v in &self.verdicts {
            v.render(&mut out, "");
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct TraderLine {
    pub trader: String,
    pub set: Vec<String>,
    pub posterior: String,
    pub action: &'static str,
}

#[derive(Debug, Serialize)]
pub struct RoundSummary {
    pub round: usize,
    pub traders: Vec<TraderLine>,
}

#[derive(Debug, Serialize)]
pub struct BreakdownSummary {
    pub round: usize,
    pub trader: String,
    pub cause: &'static str,
}

#[derive(Debug, Serialize)]
pub struct SimulationReport {
    pub true_state: String,
    /// `fixed point`, `breakdown` or `round cap`.
    pub termination: &'static str,
    pub rounds_elapsed: usize,
    pub breakdown: Option<BreakdownSummary>,
    pub last_round: Option<RoundSummary>,
    /// Every round; present only when tracing.
    pub rounds: Option<Vec<RoundSummary>>,
}

fn action_name(a: Action) -> &'static str {
    match a {
        Action::Buy => "Buy",
        Action::Sell => "Sell",
    }
}

impl SimulationReport {
    pub fn new(config: &MarketConfig, result: &SimulationResult, trace: bool) -> Self {
        let space = config.space();
        let round = |r: &doxa_core::market::RoundLog| RoundSummary {
            round: r.round,
            traders: config
                .traders()
                .iter()
                .zip(&r.traders)
                .map(|(t, line)| TraderLine {
                    trader: t.name.clone(),
                    set: names(space, &line.set),
                    posterior: rational(&line.posterior),
                    action: action_name(line.action),
                })
                .collect(),
        };
        let (termination, breakdown) = match result.termination {
            Termination::FixedPoint => ("fixed point", None),
            Termination::RoundCap => ("round cap", None),
            Termination::Breakdown { round, trader, cause } => (
                "breakdown",
                Some(BreakdownSummary {
                    round,
                    trader: config.traders()[trader].name.clone(),
                    cause: match cause {
                        BreakdownCause::EmptySet => "empty possibility set",
                        BreakdownCause::ZeroMass => "zero prior mass",
                    },
                }),
            ),
        };
        Self {
            true_state: space.name(config.true_state()).to_string(),
            termination,
            rounds_elapsed: result.rounds_elapsed,
            breakdown,
            last_round: result.final_round().map(round),
            rounds: trace.then(|| result.rounds.iter().map(round).collect()),
        }
    }
}

fn render_round(out: &mut String, r: &RoundSummary) {
    for t in &r.traders {
        let _ = writeln!(
            out,
            "{:>5}  {:<10} {:<20} {:<8} {}",
            r.round,
            t.trader,
            braces(&t.set),
            t.posterior,
            t.action
        );
    }
}

impl Report for SimulationReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:>5}  {:<10} {:<20} {:<8} action", "round", "trader", "set", "P(E|set)");
        match &self.rounds {
            Some(all) => all.iter().for_each(|r| render_round(&mut out, r)),
            None => {
                if let Some(r) = &self.last_round {
                    render_round(&mut out, r);
                }
            }
        }
        let _ = writeln!(
            out,
            "{} after {} round(s); true state {}",
            self.termination, self.rounds_elapsed, self.true_state
        );
        if let Some(b) = &self.breakdown {
            let _ = writeln!(out, "breakdown in round {}: {} ({})", b.round, b.trader, b.cause);
        }
        out
    }
}

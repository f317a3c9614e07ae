//! Attack strategies: synthesis from a final verifier, exhaustive
//! validation and simulated plays.
//!
//! A strategy is a Mealy machine. Its states are type-I states of the final
//! verifier plus the initial state; on each observed event (or `ε` at the
//! start) it outputs the attack decision, and when it attacks, the next
//! state depends on the attack result. Edges are labeled `e/N`, `e/Y0`
//! and `e/Y1`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::attack_observer::{AttackObserver, StateType};
use crate::automaton::{EventId, Label, StateId};
use crate::error::{SimulationError, StrategyError};
use crate::violation::SubAutomaton;

/// Worst-case number of steps to a violating state; `Infinite` when the
/// intruder cannot force one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rank {
    Finite(u32),
    Infinite,
}

impl Rank {
    fn succ(self) -> Rank {
        match self {
            Rank::Finite(r) => Rank::Finite(r + 1),
            Rank::Infinite => Rank::Infinite,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Rank::Finite(r) => Some(r),
            Rank::Infinite => None,
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(r) => write!(f, "{r}"),
            Rank::Infinite => f.write_str("inf"),
        }
    }
}

/// Ranks of the states of a final verifier.
#[derive(Clone, Debug, Default)]
pub struct Ranks(BTreeMap<usize, Rank>);

impl Ranks {
    /// Rank of `id`; states outside the final verifier are `Infinite`.
    pub fn get(&self, id: usize) -> Rank {
        self.0.get(&id).copied().unwrap_or(Rank::Infinite)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Rank)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }
}

/// Progress ranks of the kept states of `fv`.
///
/// Least solution of: violating type-I states have rank 0; a type-III
/// state is one more than its best kept decision; a type-II state is one
/// more than its worst attack result; any other type-I state is one more
/// than its worst event. Successors outside `fv` count as infinite.
pub fn compute_ranks(fv: &SubAutomaton) -> Ranks {
    let aobs = fv.parent();
    let mut ranks: BTreeMap<usize, Rank> = fv.kept().iter().map(|&s| (s, Rank::Infinite)).collect();
    let get = |r: &BTreeMap<usize, Rank>, t: usize| r.get(&t).copied().unwrap_or(Rank::Infinite);
    loop {
        let mut changed = false;
        for &s in fv.kept() {
            let new = if aobs.is_violating(s) {
                Rank::Finite(0)
            } else {
                let succ = aobs.outgoing(s).map(|(_, t)| get(&ranks, t));
                match aobs.state_type(s) {
                    StateType::TypeIII => succ.min().unwrap_or(Rank::Infinite).succ(),
                    _ => succ.max().map(Rank::succ).unwrap_or(Rank::Infinite),
                }
            };
            if new < ranks[&s] {
                ranks.insert(s, new);
                changed = true;
            }
        }
        if !changed {
            return Ranks(ranks);
        }
    }
}

/// The intruder's choice in one round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Decision {
    Skip,
    Attack,
}

impl Decision {
    pub fn label(self) -> Label {
        match self {
            Decision::Skip => Label::Skip,
            Decision::Attack => Label::Attack,
        }
    }
}

/// What the strategy reads: `ε` at the start, then plant events.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Input {
    Epsilon,
    Event(EventId),
}

/// What a strategy edge records: no attack, or an attack and its result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MealyOutput {
    Skip,
    /// An attack whose result was `1` when `true` and `0` otherwise.
    Attack(bool),
}

impl MealyOutput {
    pub fn decision(self) -> Decision {
        match self {
            MealyOutput::Skip => Decision::Skip,
            MealyOutput::Attack(_) => Decision::Attack,
        }
    }
}

impl fmt::Display for MealyOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MealyOutput::Skip => "N",
            MealyOutput::Attack(false) => "Y0",
            MealyOutput::Attack(true) => "Y1",
        })
    }
}

/// How the intruder picks among valid decisions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Policy {
    /// Choose decisions that make the rank strictly decrease every round.
    #[default]
    Ranked,
    /// Skip whenever skipping stays in the final verifier, else attack.
    FirstValid,
}

/// A strategy edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MealyEdge {
    pub source: usize,
    pub input: Input,
    pub output: MealyOutput,
    pub target: usize,
}

/// A synthesized attack strategy over an attack-observer.
#[derive(Clone, Debug)]
pub struct MealyStrategy {
    aobs: Arc<AttackObserver>,
    states: BTreeSet<usize>,
    edges: BTreeMap<(usize, Input), Vec<(MealyOutput, usize)>>,
    ranks: Ranks,
}

impl MealyStrategy {
    pub fn aobs(&self) -> &Arc<AttackObserver> {
        &self.aobs
    }

    pub fn initial(&self) -> usize {
        self.aobs.initial()
    }

    /// Strategy states, as attack-observer positions.
    pub fn states(&self) -> &BTreeSet<usize> {
        &self.states
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn rank(&self, id: usize) -> Rank {
        self.ranks.get(id)
    }

    pub fn ranks(&self) -> &Ranks {
        &self.ranks
    }

    /// Edges leaving `source` on `input`.
    pub fn moves(&self, source: usize, input: Input) -> &[(MealyOutput, usize)] {
        self.edges.get(&(source, input)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn edges(&self) -> impl Iterator<Item = MealyEdge> + '_ {
        self.edges.iter().flat_map(|(&(source, input), outs)| {
            outs.iter().map(move |&(output, target)| MealyEdge {
                source,
                input,
                output,
                target,
            })
        })
    }

    /// Renders an edge label such as `ε/N` or `b/Y0`.
    pub fn edge_label(&self, input: Input, output: MealyOutput) -> String {
        let e = match input {
            Input::Epsilon => "ε".to_string(),
            Input::Event(e) => self.aobs.plant().event_name(e).to_string(),
        };
        format!("{e}/{output}")
    }

    /// Replaces the decision taken at `source` on `input`, rebuilding its
    /// edges from the attack-observer.
    pub fn override_decision(&mut self, source: usize, input: Input, decision: Decision) -> Result<(), StrategyError> {
        let y = match input {
            Input::Epsilon => Some(self.aobs.initial()),
            Input::Event(e) => self.aobs.successor(source, Label::Event(e)),
        };
        let outs = y.and_then(|y| expand(&self.aobs, y, decision, |_| true));
        match outs {
            Some(outs) if !outs.is_empty() => {
                self.states.extend(outs.iter().map(|&(_, t)| t));
                self.edges.insert((source, input), outs);
                Ok(())
            }
            _ => Err(StrategyError::NoValidDecision {
                state: self.aobs.state_label(source),
                event: input_name(&self.aobs, input),
            }),
        }
    }
}

fn input_name(aobs: &AttackObserver, input: Input) -> String {
    match input {
        Input::Epsilon => "ε".to_string(),
        Input::Event(e) => aobs.plant().event_name(e).to_string(),
    }
}

/// The edges produced by `decision` at type-III state `y`, restricted to
/// targets accepted by `keep`; `None` if the decision is not available.
fn expand(
    aobs: &AttackObserver,
    y: usize,
    decision: Decision,
    keep: impl Fn(usize) -> bool,
) -> Option<Vec<(MealyOutput, usize)>> {
    let z = aobs.successor(y, decision.label())?;
    if !keep(z) {
        return None;
    }
    Some(match decision {
        Decision::Skip => vec![(MealyOutput::Skip, z)],
        Decision::Attack => aobs
            .outgoing(z)
            .filter(|&(_, t)| keep(t))
            .map(|(l, t)| (MealyOutput::Attack(l == Label::Inside), t))
            .collect(),
    })
}

/// Builds a strategy from a nonempty final verifier.
///
/// Starting from the initial state on input `ε`, and then at every
/// discovered type-I state for every event the system can fire there, one
/// decision is chosen whose successors stay in `fv`. Skipping yields one
/// `e/N` edge; attacking yields one `e/Y0` or `e/Y1` edge per possible
/// result.
///
/// With [`Policy::Ranked`], a round starting at rank `r` skips when that
/// lands strictly below `r`, and otherwise takes the decision whose worst
/// outcome has the smallest rank (skipping on ties). Ranks then strictly
/// decrease along every play, so every play violates within the initial
/// rank.
pub fn synthesize_strategy(fv: &SubAutomaton, policy: Policy) -> Result<MealyStrategy, StrategyError> {
    let root = fv.initial().ok_or(StrategyError::EmptyFinalVerifier)?;
    let aobs = fv.parent().clone();
    let ranks = compute_ranks(fv);
    let mut strategy = MealyStrategy {
        aobs: aobs.clone(),
        states: BTreeSet::from([root]),
        edges: BTreeMap::new(),
        ranks,
    };
    let mut queue = VecDeque::new();

    let visit = |strategy: &mut MealyStrategy, queue: &mut VecDeque<usize>, source: usize, input: Input, y: Option<usize>| {
        let reference = strategy.ranks.get(source);
        let outs = y
            .filter(|&y| fv.contains(y))
            .and_then(|y| choose(fv, &strategy.ranks, y, reference, policy))
            .ok_or_else(|| StrategyError::NoValidDecision {
                state: aobs.state_label(source),
                event: input_name(&aobs, input),
            })?;
        for &(_, t) in &outs {
            if strategy.states.insert(t) {
                queue.push_back(t);
            }
        }
        strategy.edges.insert((source, input), outs);
        Ok::<(), StrategyError>(())
    };

    visit(&mut strategy, &mut queue, root, Input::Epsilon, Some(root))?;
    while let Some(x) = queue.pop_front() {
        for e in aobs.enabled_events(x) {
            let y = aobs.successor(x, Label::Event(e));
            visit(&mut strategy, &mut queue, x, Input::Event(e), y)?;
        }
    }
    Ok(strategy)
}

/// The edges of the decision taken at type-III state `y` in a round that
/// started at rank `reference`.
fn choose(
    fv: &SubAutomaton,
    ranks: &Ranks,
    y: usize,
    reference: Rank,
    policy: Policy,
) -> Option<Vec<(MealyOutput, usize)>> {
    let aobs = fv.parent();
    let skip = expand(aobs, y, Decision::Skip, |t| fv.contains(t));
    let attack = expand(aobs, y, Decision::Attack, |t| fv.contains(t)).filter(|o| !o.is_empty());
    let first_valid = || skip.clone().or_else(|| attack.clone());
    if policy == Policy::FirstValid || matches!(reference, Rank::Finite(0) | Rank::Infinite) {
        return first_valid();
    }
    let skip_rank = skip.as_ref().map(|o| ranks.get(o[0].1));
    let attack_rank = attack.as_ref().map(|_| {
        let z = aobs.successor(y, Label::Attack).expect("attack edge exists");
        aobs.outgoing(z).map(|(_, t)| ranks.get(t)).max().unwrap_or(Rank::Infinite)
    });
    match (skip_rank, attack_rank) {
        (Some(s), _) if s < reference => skip,
        (Some(s), Some(a)) if a < s => attack,
        (Some(_), _) => skip,
        (None, _) => attack,
    }
}

/// Why a strategy fails validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlawKind {
    /// The play can return to a state it already visited without violating.
    Loop,
    /// The system can fire an event the strategy has no move for.
    MissingMove,
    /// The play reaches a non-violating state where the system cannot move.
    Deadlock,
    /// An attack result that can occur has no edge.
    MissingResult,
    /// An edge target disagrees with the attack-observer.
    WrongTarget,
    /// More attacks than the budget allows.
    BudgetExceeded,
}

/// A play exhibiting a flaw, as the strategy states visited and the edge
/// labels taken.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub kind: FlawKind,
    pub states: Vec<String>,
    pub moves: Vec<String>,
}

/// Outcome of [`validate_strategy`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// Every play ends at a violating estimate within the budget.
    pub sound: bool,
    /// Longest play, in rounds, when sound.
    pub max_rounds: Option<u32>,
    /// Largest number of attacks along any play, when sound.
    pub max_attacks: Option<u32>,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Copy)]
enum Mark {
    Open,
    Done { rounds: u32, attacks: u32 },
}

/// Unfolds every play of `strategy` against every system event and attack
/// result, and checks that each one reaches a violating estimate.
pub fn validate_strategy(strategy: &MealyStrategy) -> Result<ValidationReport, StrategyError> {
    if strategy.is_empty() {
        return Err(StrategyError::EmptyStrategy);
    }
    let mut v = Validator {
        s: strategy,
        marks: BTreeMap::new(),
        path: Vec::new(),
        moves: Vec::new(),
    };
    let root = strategy.initial();
    let result = v.round(root, Input::Epsilon, root);
    Ok(match result {
        Ok((rounds, attacks)) => ValidationReport {
            sound: true,
            max_rounds: Some(rounds),
            max_attacks: Some(attacks),
            counterexample: None,
        },
        Err(c) => ValidationReport {
            sound: false,
            max_rounds: None,
            max_attacks: None,
            counterexample: Some(c),
        },
    })
}

struct Validator<'a> {
    s: &'a MealyStrategy,
    marks: BTreeMap<usize, Mark>,
    path: Vec<usize>,
    moves: Vec<String>,
}

impl Validator<'_> {
    fn flaw(&self, kind: FlawKind) -> Counterexample {
        let aobs = self.s.aobs();
        Counterexample {
            kind,
            states: self.path.iter().map(|&p| aobs.state_label(p)).collect(),
            moves: self.moves.clone(),
        }
    }

    /// Checks the round played at `source` on `input`, where `y` is the
    /// attack-observer's type-III state after the input. Returns the
    /// longest remaining play and the most attacks along it.
    fn round(&mut self, source: usize, input: Input, y: usize) -> Result<(u32, u32), Counterexample> {
        let aobs = self.s.aobs().clone();
        let outs = self.s.moves(source, input).to_vec();
        if outs.is_empty() {
            self.moves.push(input_name(&aobs, input));
            return Err(self.flaw(FlawKind::MissingMove));
        }
        let decision = outs[0].0.decision();
        if outs.iter().any(|(o, _)| o.decision() != decision) {
            return Err(self.flaw(FlawKind::WrongTarget));
        }
        let Some(z) = aobs.successor(y, decision.label()) else {
            self.moves.push(self.s.edge_label(input, outs[0].0));
            return Err(self.flaw(if decision == Decision::Attack {
                FlawKind::BudgetExceeded
            } else {
                FlawKind::WrongTarget
            }));
        };
        let expected: Vec<(MealyOutput, usize)> = match decision {
            Decision::Skip => vec![(MealyOutput::Skip, z)],
            Decision::Attack => aobs
                .outgoing(z)
                .map(|(l, t)| (MealyOutput::Attack(l == Label::Inside), t))
                .collect(),
        };
        let mut worst = (0, 0);
        for (output, target) in expected {
            self.moves.push(self.s.edge_label(input, output));
            match outs.iter().find(|(o, _)| *o == output) {
                None => return Err(self.flaw(FlawKind::MissingResult)),
                Some(&(_, t)) if t != target => return Err(self.flaw(FlawKind::WrongTarget)),
                Some(_) => {}
            }
            let (rounds, attacks) = self.visit(target)?;
            let attacks = attacks + u32::from(decision == Decision::Attack);
            if attacks > aobs.spec().budget {
                return Err(self.flaw(FlawKind::BudgetExceeded));
            }
            worst = (worst.0.max(rounds + 1), worst.1.max(attacks));
            self.moves.pop();
        }
        Ok(worst)
    }

    fn visit(&mut self, x: usize) -> Result<(u32, u32), Counterexample> {
        let aobs = self.s.aobs().clone();
        if aobs.is_violating(x) {
            return Ok((0, 0));
        }
        match self.marks.get(&x) {
            Some(Mark::Done { rounds, attacks }) => return Ok((*rounds, *attacks)),
            Some(Mark::Open) => {
                self.path.push(x);
                return Err(self.flaw(FlawKind::Loop));
            }
            None => {}
        }
        self.marks.insert(x, Mark::Open);
        self.path.push(x);
        let events = aobs.enabled_events(x);
        if events.is_empty() {
            return Err(self.flaw(FlawKind::Deadlock));
        }
        let mut worst = (0, 0);
        for e in events {
            let y = aobs.successor(x, Label::Event(e)).expect("enabled event");
            let r = self.round(x, Input::Event(e), y)?;
            worst = (worst.0.max(r.0), worst.1.max(r.1));
        }
        self.path.pop();
        self.marks.insert(
            x,
            Mark::Done {
                rounds: worst.0,
                attacks: worst.1,
            },
        );
        Ok(worst)
    }
}

/// How the simulated system picks its moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemPolicy {
    /// Uniformly random initial state, event and successor, from a seed.
    RandomSeeded(u64),
    /// The move whose resulting strategy state has the highest rank.
    Adversarial,
}

/// One round of a simulated play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayRound {
    /// `None` in the opening round.
    pub event: Option<EventId>,
    pub output: MealyOutput,
    /// The plant state after the event.
    pub true_state: StateId,
    /// The strategy state after the round.
    pub strategy_state: usize,
}

/// How a simulated play ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlayOutcome {
    /// The estimate became violating.
    Violated,
    /// The round limit was reached first.
    MaxRounds,
    /// The plant reached a state with no outgoing event.
    Halted,
}

/// A simulated play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Play {
    pub rounds: Vec<PlayRound>,
    pub outcome: PlayOutcome,
    pub true_state: StateId,
}

impl Play {
    /// The strategy state the play ended in.
    pub fn final_state(&self) -> usize {
        self.rounds.last().expect("a play has an opening round").strategy_state
    }
}

/// Plays `strategy` against a system following `policy` for at most
/// `max_rounds` rounds after the opening one.
///
/// The simulator tracks the true plant state; attack results are computed
/// from it.
pub fn simulate_play(strategy: &MealyStrategy, policy: SystemPolicy, max_rounds: u32) -> Result<Play, SimulationError> {
    let aobs = strategy.aobs();
    let plant = aobs.plant();
    let mut rng = match policy {
        SystemPolicy::RandomSeeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        SystemPolicy::Adversarial => None,
    };

    let opening: Vec<(Option<EventId>, StateId)> = plant.initial().iter().map(|&x| (None, x)).collect();
    let (_, x0) = pick(strategy, strategy.initial(), &opening, &mut rng)?;
    let first = step(strategy, strategy.initial(), None, x0)?;
    let mut rounds = vec![first];
    loop {
        let cur = rounds.last().expect("nonempty");
        let (x, true_state) = (cur.strategy_state, cur.true_state);
        let outcome = if aobs.is_violating(x) {
            Some(PlayOutcome::Violated)
        } else if rounds.len() as u32 > max_rounds {
            Some(PlayOutcome::MaxRounds)
        } else {
            None
        };
        let moves: Vec<(Option<EventId>, StateId)> = plant
            .enabled_at(true_state)
            .into_iter()
            .flat_map(|e| plant.successors(true_state, e).iter().map(move |&t| (Some(e), t)))
            .collect();
        let outcome = outcome.or(moves.is_empty().then_some(PlayOutcome::Halted));
        if let Some(outcome) = outcome {
            return Ok(Play {
                rounds,
                outcome,
                true_state,
            });
        }
        let (e, t) = pick(strategy, x, &moves, &mut rng)?;
        rounds.push(step(strategy, x, e, t)?);
    }
}

/// Chooses a system move from `moves` at strategy state `x`.
fn pick(
    strategy: &MealyStrategy,
    x: usize,
    moves: &[(Option<EventId>, StateId)],
    rng: &mut Option<ChaCha8Rng>,
) -> Result<(Option<EventId>, StateId), SimulationError> {
    match rng {
        Some(rng) => {
            let events: BTreeSet<Option<EventId>> = moves.iter().map(|m| m.0).collect();
            let events: Vec<_> = events.into_iter().collect();
            let e = *events.choose(rng).expect("nonempty");
            let targets: Vec<_> = moves.iter().filter(|m| m.0 == e).collect();
            Ok(**targets.choose(rng).expect("nonempty"))
        }
        None => {
            let mut best: Option<((Option<EventId>, StateId), Rank)> = None;
            for &(e, t) in moves {
                let r = strategy.rank(step(strategy, x, e, t)?.strategy_state);
                if best.is_none_or(|(_, b)| r > b) {
                    best = Some(((e, t), r));
                }
            }
            Ok(best.expect("nonempty").0)
        }
    }
}

/// Plays one round from strategy state `x` when the system fires `event`
/// and the plant moves to `true_state`.
fn step(strategy: &MealyStrategy, x: usize, event: Option<EventId>, true_state: StateId) -> Result<PlayRound, SimulationError> {
    let aobs = strategy.aobs();
    let input = event.map_or(Input::Epsilon, Input::Event);
    let outs = strategy.moves(x, input);
    let Some(&(first, _)) = outs.first() else {
        return Err(SimulationError::MissingMove {
            state: aobs.state_label(x),
            event: input_name(aobs, input),
        });
    };
    let output = match first {
        MealyOutput::Skip => MealyOutput::Skip,
        MealyOutput::Attack(_) => MealyOutput::Attack(aobs.spec().attacked.contains(&true_state)),
    };
    let (_, target) = outs
        .iter()
        .find(|(o, _)| *o == output)
        .copied()
        .ok_or_else(|| SimulationError::MissingResult {
            state: aobs.state_label(x),
            result: u8::from(output == MealyOutput::Attack(true)),
        })?;
    Ok(PlayRound {
        event,
        output,
        true_state,
        strategy_state: target,
    })
}

//! Liveness of free-choice nets decided by the siphon/trap condition, plus
//! witness constructions for a failing verdict.
//!
//! A free-choice net without isolated places is live at `m0` iff every
//! nonempty siphon contains a trap marked at `m0`. Because any trap inside a
//! siphon also lies inside every larger siphon, only minimal siphons need to be
//! checked, and because traps are closed under union, a siphon contains a
//! marked trap iff its maximal trap is marked.
//!
//! Two kinds of witness back a `NotLive` verdict:
//!
//! * [`run_priority_strategy`] starts from a failing siphon `S` and drives the
//!   net into a marking where every transition of `S•` is dead, by
//!   repeatedly firing transitions outside `S•` followed by one *priority*
//!   transition from a [`PriorityPlan`].
//! * [`siphon_from_dead_marking`] goes the other way: given a reachable
//!   marking where every transition is either dead or live (and some are
//!   dead), it assembles an unmarked nonempty siphon from one empty input
//!   place per dead transition.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::net::{
    Marking, Net, PlaceId, PlaceSet, SequenceError, TransitionId, TransitionSet, ValidationReport,
};
use crate::reachability::{
    self, dead_set, live_set, NodeId, OracleVerdict, ReachError, ReachGraph,
};
use crate::structural::{self, is_siphon, maximal_trap_within, StructuralError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommonerError {
    #[error("net is not admissible (free-choice without isolated places)")]
    Inadmissible(ValidationReport),
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error(transparent)]
    Reach(#[from] ReachError),
    #[error(transparent)]
    Replay(#[from] SequenceError),
    #[error("precondition violated: {0}")]
    Contract(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Live,
    NotLive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanStep {
    pub transition: TransitionId,
    /// `R_i`: the part of the siphon not yet drained by earlier steps.
    pub residual: PlaceSet,
}

/// Priority transitions `t_1..t_k` peeling a siphon `S` down to its maximal
/// trap `Q`.
///
/// `R_1 = S`, `R_{i+1} = R_i ∖ •t_i`, and each `t_i` consumes from `R_i`
/// without producing into it. When an initial marking is known, `bounds[i]`
/// caps how often `t_i` can fire along any run that only uses transitions
/// outside `S•` besides the priority ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PriorityPlan {
    pub siphon: PlaceSet,
    pub max_trap: PlaceSet,
    pub chain: Vec<PlanStep>,
    pub bounds: Option<Vec<u64>>,
}

impl PriorityPlan {
    pub fn priority_transitions(&self) -> impl Iterator<Item = TransitionId> + '_ {
        self.chain.iter().map(|s| s.transition)
    }

    /// Verifies every structural invariant of the plan.
    pub fn check_invariants(&self, net: &Net) -> Result<(), String> {
        let s = &self.siphon;
        let q = &self.max_trap;
        if s.is_empty() || !is_siphon(net, s) {
            return Err("plan siphon is not a nonempty siphon".into());
        }
        if maximal_trap_within(net, s) != *q {
            return Err("plan trap is not the maximal trap of the siphon".into());
        }
        let s_post = net.postset_of_places(s);
        let mut expected = s.clone();
        for (i, step) in self.chain.iter().enumerate() {
            let t = step.transition;
            let name = net.transition_name(t);
            if step.residual != expected {
                return Err(format!(
                    "R_{} does not equal S minus earlier presets",
                    i + 1
                ));
            }
            if !(q.is_subset(&expected) && *q != expected) {
                return Err(format!("R_{} is not a strict superset of Q", i + 1));
            }
            if !s_post.contains(t) {
                return Err(format!("{name} is not in S•"));
            }
            if !net.preset(t).intersects(&expected) {
                return Err(format!("{name} does not consume from R_{}", i + 1));
            }
            if net.postset(t).intersects(&expected) {
                return Err(format!("{name} produces into R_{}", i + 1));
            }
            if net.preset(t).intersects(q) {
                return Err(format!("{name} consumes from Q"));
            }
            expected.difference_with(net.preset(t));
        }
        if expected != *q {
            return Err("chain does not end at the maximal trap".into());
        }
        if let Some(bounds) = &self.bounds {
            if bounds.len() != self.chain.len() {
                return Err("bounds and chain lengths differ".into());
            }
        }
        Ok(())
    }
}

/// Occurrence bounds for the chain of `plan` at `m0`.
///
/// Tokens reach `R_i ∖ R_{i+1}` only from later priority transitions, one
/// per firing, so `m_k = min m0(R_k ∖ Q)` and
/// `m_i = Σ_{j>i} m_j + min m0(R_i ∖ R_{i+1})`.
pub fn occurrence_bounds(net: &Net, plan: &PriorityPlan, m0: &Marking) -> Vec<u64> {
    let k = plan.chain.len();
    let mut bounds = vec![0u64; k];
    let mut later_sum = 0u64;
    for i in (0..k).rev() {
        let next = match plan.chain.get(i + 1) {
            Some(step) => &step.residual,
            None => &plan.max_trap,
        };
        let drained = plan.chain[i].residual.difference(next);
        let least = drained.iter().map(|p| u64::from(m0[p])).min().unwrap_or(0);
        bounds[i] = later_sum.saturating_add(least);
        later_sum = later_sum.saturating_add(bounds[i]);
    }
    debug_assert_eq!(net.n_places(), m0.as_slice().len());
    bounds
}

/// Builds the priority chain for a siphon whose maximal trap is unmarked.
///
/// `t_i` is the lowest-indexed transition in `R_i• ∖ •R_i`; such a
/// transition exists because `R_i ⊋ Q` is not a trap.
pub fn build_priority_plan(
    net: &Net,
    siphon: &PlaceSet,
    m0: Option<&Marking>,
) -> Result<PriorityPlan, CommonerError> {
    if siphon.is_empty() || !is_siphon(net, siphon) {
        return Err(CommonerError::Contract(format!(
            "{:?} is not a nonempty siphon",
            net.place_names(siphon)
        )));
    }
    let max_trap = maximal_trap_within(net, siphon);
    if let Some(m0) = m0 {
        if !m0.is_zero_on(&max_trap) {
            return Err(CommonerError::Contract(
                "the maximal trap of the siphon is marked".into(),
            ));
        }
    }
    let mut chain = Vec::new();
    let mut residual = siphon.clone();
    while residual != max_trap {
        let leaving = net
            .postset_of_places(&residual)
            .difference(&net.preset_of_places(&residual));
        let t = leaving.first().ok_or_else(|| {
            CommonerError::Contract("residual set above the maximal trap is a trap".into())
        })?;
        chain.push(PlanStep {
            transition: t,
            residual: residual.clone(),
        });
        residual.difference_with(net.preset(t));
    }
    let mut plan = PriorityPlan {
        siphon: siphon.clone(),
        max_trap,
        chain,
        bounds: None,
    };
    if let Some(m0) = m0 {
        plan.bounds = Some(occurrence_bounds(net, &plan, m0));
    }
    debug_assert_eq!(plan.check_invariants(net), Ok(()));
    Ok(plan)
}

/// A firing sequence from `m0` to a marking at which `dead_transitions` are
/// all dead, with an empty input place named for each of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeadWitness {
    pub trace: Vec<TransitionId>,
    pub marking: Marking,
    pub dead_transitions: TransitionSet,
    pub siphon: PlaceSet,
    /// `(t, p_t)` with `p_t ∈ •t` and `marking(p_t) = 0`, in transition order.
    pub picked_places: Vec<(TransitionId, PlaceId)>,
}

impl DeadWitness {
    /// Replays the trace and checks the self-contained witness properties:
    /// the trace reaches `marking`, `siphon` is a nonempty siphon, and every
    /// picked place is an unmarked input of its dead transition.
    pub fn check(&self, net: &Net, m0: &Marking) -> Result<(), String> {
        let reached = net
            .fire_sequence(m0, &self.trace)
            .map_err(|e| e.to_string())?;
        if reached != self.marking {
            return Err("trace does not reach the recorded marking".into());
        }
        if self.siphon.is_empty() || !is_siphon(net, &self.siphon) {
            return Err("witness siphon is not a nonempty siphon".into());
        }
        let picked: TransitionSet = TransitionSet::from_ids(
            net.n_transitions(),
            self.picked_places.iter().map(|&(t, _)| t),
        );
        if picked != self.dead_transitions {
            return Err("picked places do not cover exactly the dead transitions".into());
        }
        for &(t, p) in &self.picked_places {
            if !net.preset(t).contains(p) || self.marking[p] != 0 {
                return Err(format!(
                    "{} is not an empty input place of {}",
                    net.place_name(p),
                    net.transition_name(t)
                ));
            }
        }
        Ok(())
    }

    pub fn picked_range(&self, net: &Net) -> PlaceSet {
        PlaceSet::from_ids(net.n_places(), self.picked_places.iter().map(|&(_, p)| p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyOutcome {
    Witness(DeadWitness),
    /// The closure under transitions outside `S•` exceeded the state cap.
    Inconclusive {
        max_states: usize,
    },
}

/// BFS states with, for each, the predecessor state and transition.
type Closure = (Vec<Marking>, Vec<Option<(usize, TransitionId)>>);

/// Markings reachable from `start` using only `allowed` transitions, in BFS
/// order, with parent links. `None` when more than `max_states` turn up.
fn restricted_closure(
    net: &Net,
    start: &Marking,
    allowed: &TransitionSet,
    max_states: usize,
) -> Result<Option<Closure>, CommonerError> {
    let mut markings = vec![start.clone()];
    let mut parent = vec![None];
    let mut seen = HashMap::from([(start.clone(), 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for t in allowed.iter() {
            if !net.is_enabled(&markings[u], t) {
                continue;
            }
            let next = net
                .fire(&markings[u], t)
                .map_err(|source| SequenceError { index: 0, source })?;
            if seen.contains_key(&next) {
                continue;
            }
            if markings.len() >= max_states {
                return Ok(None);
            }
            seen.insert(next.clone(), markings.len());
            queue.push_back(markings.len());
            markings.push(next);
            parent.push(Some((u, t)));
        }
    }
    Ok(Some((markings, parent)))
}

fn path_to(parent: &[Option<(usize, TransitionId)>], node: usize) -> Vec<TransitionId> {
    let mut path = Vec::new();
    let mut current = node;
    while let Some((prev, t)) = parent[current] {
        path.push(t);
        current = prev;
    }
    path.reverse();
    path
}

/// Drives the net from `m0` into a marking where all of `S•` is dead.
///
/// From the current marking, explores the closure under `T ∖ S•` (which
/// never touches the siphon). If some state there enables a priority
/// transition, the path to the first such state (trying `t_1, t_2, ...` in
/// chain order) plus that transition is appended to the trace and the
/// search restarts. Otherwise no `(T ∖ S•)*·t_i` sequence is enabled and,
/// by the free-choice property, no transition of `S•` can ever fire again.
pub fn run_priority_strategy(
    net: &Net,
    m0: &Marking,
    plan: &PriorityPlan,
    max_states: usize,
) -> Result<StrategyOutcome, CommonerError> {
    plan.check_invariants(net)
        .map_err(CommonerError::Contract)?;
    if !m0.is_zero_on(&plan.max_trap) {
        return Err(CommonerError::Contract(
            "the maximal trap of the siphon is marked".into(),
        ));
    }
    let bounds = match &plan.bounds {
        Some(b) => b.clone(),
        None => occurrence_bounds(net, plan, m0),
    };
    let siphon_post = net.postset_of_places(&plan.siphon);
    let outside = siphon_post.complement();
    let mut fired = vec![0u64; plan.chain.len()];
    let mut trace = Vec::new();
    let mut current = m0.clone();

    while !plan.chain.is_empty() {
        let Some((states, parent)) = restricted_closure(net, &current, &outside, max_states)?
        else {
            return Ok(StrategyOutcome::Inconclusive { max_states });
        };
        let next_step = plan.chain.iter().enumerate().find_map(|(i, step)| {
            states
                .iter()
                .position(|m| net.is_enabled(m, step.transition))
                .map(|node| (i, node))
        });
        let Some((i, node)) = next_step else {
            break;
        };
        fired[i] += 1;
        if fired[i] > bounds[i] {
            return Err(CommonerError::Contract(format!(
                "{} fired more than its bound of {}",
                net.transition_name(plan.chain[i].transition),
                bounds[i]
            )));
        }
        let mut segment = path_to(&parent, node);
        segment.push(plan.chain[i].transition);
        current = net.fire_sequence(&current, &segment)?;
        trace.extend(segment);
    }

    let mut picked_places = Vec::new();
    for t in siphon_post.iter() {
        let p = net
            .preset(t)
            .iter()
            .find(|&p| current[p] == 0)
            .ok_or_else(|| {
                CommonerError::Contract(format!(
                    "{} is still enabled at the final marking",
                    net.transition_name(t)
                ))
            })?;
        picked_places.push((t, p));
    }
    Ok(StrategyOutcome::Witness(DeadWitness {
        trace,
        marking: current,
        dead_transitions: siphon_post,
        siphon: plan.siphon.clone(),
        picked_places,
    }))
}

/// Assembles `S = {p_t | t ∈ D_M}` at a node where `D_M ∪ L_M = T` and
/// `D_M ≠ ∅`.
///
/// For each dead `t` the lowest-indexed `p ∈ •t` with `M(p) = 0` and
/// `p ∉ (L_M)•` is picked. The result satisfies `•S ⊆ D_M ⊆ S•`, so it is a
/// nonempty siphon, and it is unmarked at `M`.
pub fn siphon_from_dead_marking(
    net: &Net,
    g: &ReachGraph,
    node: NodeId,
) -> Result<DeadWitness, CommonerError> {
    let dead = dead_set(net, g, node)?;
    let live = live_set(net, g, node)?;
    if dead.is_empty() {
        return Err(CommonerError::Contract(
            "no transition is dead at this marking".into(),
        ));
    }
    if !dead.union(&live).complement().is_empty() {
        return Err(CommonerError::Contract(
            "some transition is neither dead nor live at this marking".into(),
        ));
    }
    let marking = g.marking(node).clone();
    let fed_by_live = net.postset_of_transitions(&live);
    let mut picked_places = Vec::new();
    let mut siphon = net.empty_places();
    for t in dead.iter() {
        let p = net
            .preset(t)
            .iter()
            .find(|&p| marking[p] == 0 && !fed_by_live.contains(p))
            .ok_or_else(|| {
                CommonerError::Contract(format!(
                    "dead transition {} has no empty input place outside (L_M)•; \
                     is the net free-choice?",
                    net.transition_name(t)
                ))
            })?;
        picked_places.push((t, p));
        siphon.insert(p);
    }
    Ok(DeadWitness {
        trace: g.trace_to(node),
        marking,
        dead_transitions: dead,
        siphon,
        picked_places,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiphonCheck {
    pub siphon: PlaceSet,
    pub max_trap: PlaceSet,
    pub initially_marked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(DeadWitness),
    Inconclusive { max_states: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub siphon: PlaceSet,
    pub max_trap: PlaceSet,
    pub plan: PriorityPlan,
    pub witness: Option<WitnessOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub verdict: Verdict,
    pub checked_siphons: Vec<SiphonCheck>,
    pub violation: Option<Violation>,
    pub oracle_verdict: Option<OracleVerdict>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Branch-node budget for minimal siphon enumeration.
    pub work_limit: u64,
    /// Run the priority strategy on a violation, with this closure cap.
    pub witness_max_states: Option<usize>,
    /// Also run the explicit-state oracle, with this state cap.
    pub oracle_max_states: Option<usize>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            work_limit: structural::DEFAULT_WORK_LIMIT,
            witness_max_states: None,
            oracle_max_states: None,
        }
    }
}

/// Decides liveness of an admissible net at `m0`.
pub fn check_commoner(
    net: &Net,
    m0: &Marking,
    options: &CheckOptions,
) -> Result<AnalysisReport, CommonerError> {
    let validation = net.validate();
    if !validation.is_admissible() {
        return Err(CommonerError::Inadmissible(validation));
    }
    let siphons = structural::minimal_siphons(net, options.work_limit)?;
    let checked_siphons: Vec<SiphonCheck> = siphons
        .into_iter()
        .map(|siphon| {
            let max_trap = maximal_trap_within(net, &siphon);
            let initially_marked = !m0.is_zero_on(&max_trap);
            SiphonCheck {
                siphon,
                max_trap,
                initially_marked,
            }
        })
        .collect();
    let violation = match checked_siphons.iter().find(|c| !c.initially_marked) {
        None => None,
        Some(failing) => {
            let plan = build_priority_plan(net, &failing.siphon, Some(m0))?;
            let witness = match options.witness_max_states {
                None => None,
                Some(cap) => Some(match run_priority_strategy(net, m0, &plan, cap)? {
                    StrategyOutcome::Witness(w) => WitnessOutcome::Found(w),
                    StrategyOutcome::Inconclusive { max_states } => {
                        WitnessOutcome::Inconclusive { max_states }
                    }
                }),
            };
            Some(Violation {
                siphon: failing.siphon.clone(),
                max_trap: failing.max_trap.clone(),
                plan,
                witness,
            })
        }
    };
    let verdict = if violation.is_some() {
        Verdict::NotLive
    } else {
        Verdict::Live
    };
    let oracle_verdict = options
        .oracle_max_states
        .map(|cap| reachability::liveness_oracle(net, m0, cap));
    Ok(AnalysisReport {
        verdict,
        checked_siphons,
        violation,
        oracle_verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::NetBuilder;
    use crate::reachability::{explore, liveness_oracle};
    use crate::testnets::{drain, marking, self_loop};

    #[test]
    fn self_loop_is_live() {
        let net = self_loop();
        let m0 = marking(&net, &[("p", 1)]);
        let report = check_commoner(&net, &m0, &CheckOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Live);
        assert!(report.violation.is_none());
        assert_eq!(report.checked_siphons.len(), 1);
        assert!(report.checked_siphons[0].initially_marked);
    }

    #[test]
    fn drain_is_not_live() {
        let net = drain();
        let m0 = marking(&net, &[("p1", 1)]);
        let report = check_commoner(&net, &m0, &CheckOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::NotLive);
        let v = report.violation.unwrap();
        assert_eq!(v.siphon, net.all_places());
        assert!(v.max_trap.is_empty());
        assert_eq!(
            liveness_oracle(&net, &m0, 100),
            reachability::OracleVerdict::NotLive
        );
    }

    #[test]
    fn drain_priority_plan() {
        let net = drain();
        let t = |n| net.transition(n).unwrap();
        let s = net.all_places();
        let plan = build_priority_plan(&net, &s, None).unwrap();
        assert_eq!(
            plan.chain,
            vec![
                PlanStep {
                    transition: t("c"),
                    residual: s.clone()
                },
                PlanStep {
                    transition: t("a"),
                    residual: net.place_set(["p1"]).unwrap()
                },
            ]
        );
        assert!(plan.max_trap.is_empty());
        assert_eq!(plan.bounds, None);

        let m0 = marking(&net, &[("p1", 1)]);
        let plan = build_priority_plan(&net, &s, Some(&m0)).unwrap();
        assert_eq!(plan.bounds, Some(vec![1, 1]));
    }

    #[test]
    fn plan_rejects_bad_input() {
        let net = drain();
        let p1 = net.place_set(["p1"]).unwrap();
        assert!(matches!(
            build_priority_plan(&net, &p1, None),
            Err(CommonerError::Contract(_))
        ));
        assert!(matches!(
            build_priority_plan(&net, &net.empty_places(), None),
            Err(CommonerError::Contract(_))
        ));
        let n1 = self_loop();
        let m0 = marking(&n1, &[("p", 1)]);
        assert!(matches!(
            build_priority_plan(&n1, &n1.all_places(), Some(&m0)),
            Err(CommonerError::Contract(_))
        ));
    }

    #[test]
    fn drain_priority_strategy() {
        let net = drain();
        let t = |n| net.transition(n).unwrap();
        let m0 = marking(&net, &[("p1", 1)]);
        let plan = build_priority_plan(&net, &net.all_places(), Some(&m0)).unwrap();
        let StrategyOutcome::Witness(w) = run_priority_strategy(&net, &m0, &plan, 1000).unwrap()
        else {
            panic!("expected a witness");
        };
        assert_eq!(w.trace, vec![t("a"), t("c")]);
        assert_eq!(w.marking, Marking::zero(&net));
        assert_eq!(w.dead_transitions, net.all_transitions());
        assert_eq!(w.check(&net, &m0), Ok(()));
        assert!(w.trace.len() as u64 <= plan.bounds.unwrap().iter().sum::<u64>());
    }

    #[test]
    fn empty_plan_gives_empty_trace() {
        // p -> t -> p with an unmarked trap: the siphon is its own maximal trap
        let net = self_loop();
        let m0 = Marking::zero(&net);
        let plan = build_priority_plan(&net, &net.all_places(), Some(&m0)).unwrap();
        assert!(plan.chain.is_empty());
        let StrategyOutcome::Witness(w) = run_priority_strategy(&net, &m0, &plan, 10).unwrap()
        else {
            panic!("expected a witness");
        };
        assert!(w.trace.is_empty());
        assert_eq!(w.dead_transitions, net.all_transitions());
    }

    #[test]
    fn strategy_reports_unbounded_closure() {
        // src: -> q is outside S• for S = {p}; the closure never ends
        let mut b = NetBuilder::new();
        let p = b.add_place("p").unwrap();
        let q = b.add_place("q").unwrap();
        b.add_transition("drain", &[p], &[]).unwrap();
        b.add_transition("src", &[], &[q]).unwrap();
        b.add_transition("sink", &[q], &[]).unwrap();
        let net = b.build();
        let m0 = marking(&net, &[("p", 1)]);
        let s = net.place_set(["p"]).unwrap();
        let plan = build_priority_plan(&net, &s, Some(&m0)).unwrap();
        assert_eq!(
            run_priority_strategy(&net, &m0, &plan, 50).unwrap(),
            StrategyOutcome::Inconclusive { max_states: 50 }
        );
    }

    #[test]
    fn dead_marking_siphon_e2() {
        let net = drain();
        let m0 = marking(&net, &[("p1", 1)]);
        let g = explore(&net, &m0, 100).unwrap();
        let zero = g.node_of(&Marking::zero(&net)).unwrap();
        let w = siphon_from_dead_marking(&net, &g, zero).unwrap();
        let p = |n| net.place(n).unwrap();
        let t = |n| net.transition(n).unwrap();
        assert_eq!(
            w.picked_places,
            vec![(t("a"), p("p1")), (t("b"), p("p2")), (t("c"), p("p2"))]
        );
        assert_eq!(w.siphon, net.all_places());
        assert!(w.marking.is_zero_on(&w.siphon));
        assert_eq!(w.check(&net, &m0), Ok(()));
        // the initial node is not saturated
        assert!(matches!(
            siphon_from_dead_marking(&net, &g, 0),
            Err(CommonerError::Contract(_))
        ));
    }

    #[test]
    fn inadmissible_nets_are_refused() {
        let mut b = NetBuilder::new();
        let p = b.add_place("p").unwrap();
        let q = b.add_place("q").unwrap();
        b.add_transition("t1", &[p, q], &[p]).unwrap();
        b.add_transition("t2", &[q], &[q]).unwrap();
        let net = b.build();
        let m0 = Marking::zero(&net);
        assert!(matches!(
            check_commoner(&net, &m0, &CheckOptions::default()),
            Err(CommonerError::Inadmissible(_))
        ));
    }

    #[test]
    fn witness_option_attaches_strategy_result() {
        let net = drain();
        let m0 = marking(&net, &[("p1", 1)]);
        let options = CheckOptions {
            witness_max_states: Some(100),
            oracle_max_states: Some(100),
            ..CheckOptions::default()
        };
        let report = check_commoner(&net, &m0, &options).unwrap();
        assert_eq!(report.oracle_verdict, Some(OracleVerdict::NotLive));
        let witness = report.violation.unwrap().witness.unwrap();
        assert!(matches!(witness, WitnessOutcome::Found(ref w) if w.trace.len() == 2));
    }
}

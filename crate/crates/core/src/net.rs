//! Place/transition nets with unweighted arcs, markings and the firing rule.

use std::collections::HashMap;
use std::fmt;
use std::ops::Index;

use thiserror::Error;

use crate::sets::{IdSet, Idx};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PlaceId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TransitionId(pub usize);

impl Idx for PlaceId {
    fn from_index(index: usize) -> Self {
        PlaceId(index)
    }
    fn index(self) -> usize {
        self.0
    }
}

impl Idx for TransitionId {
    fn from_index(index: usize) -> Self {
        TransitionId(index)
    }
    fn index(self) -> usize {
        self.0
    }
}

pub type PlaceSet = IdSet<PlaceId>;
pub type TransitionSet = IdSet<TransitionId>;

/// Token count of a single place.
pub type Tokens = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("invalid identifier {0:?}: expected [A-Za-z0-9_]+")]
    InvalidId(String),
    #[error("duplicate place {0:?}")]
    DuplicatePlace(String),
    #[error("duplicate transition {0:?}")]
    DuplicateTransition(String),
    #[error("identifier {0:?} is used both as a place and as a transition")]
    IdCollision(String),
    #[error("duplicate arc between {from:?} and {to:?}")]
    DuplicateArc { from: String, to: String },
    #[error("unknown place {0:?}")]
    UnknownPlace(String),
    #[error("unknown transition {0:?}")]
    UnknownTransition(String),
    #[error("marking has {got} entries but the net has {expected} places")]
    MarkingSize { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FireError {
    #[error("transition {0:?} is not enabled")]
    NotEnabled(TransitionId),
    #[error("token count overflow on {place:?} while firing {transition:?}")]
    Overflow {
        transition: TransitionId,
        place: PlaceId,
    },
}

/// A disabled or overflowing step inside a firing sequence.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {index} of the firing sequence failed: {source}")]
pub struct SequenceError {
    pub index: usize,
    #[source]
    pub source: FireError,
}

/// One element of the flow relation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Arc {
    Input(PlaceId, TransitionId),
    Output(TransitionId, PlaceId),
}

pub(crate) fn is_valid_id(id: &str) -> bool {
    !id.is_empty() && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// An immutable net `(P, T, F)` with presets and postsets precomputed for
/// every node.
#[derive(Clone, PartialEq, Eq)]
pub struct Net {
    places: Vec<String>,
    transitions: Vec<String>,
    place_index: HashMap<String, PlaceId>,
    transition_index: HashMap<String, TransitionId>,
    // indexed by transition
    pre_t: Vec<PlaceSet>,
    post_t: Vec<PlaceSet>,
    // indexed by place
    pre_p: Vec<TransitionSet>,
    post_p: Vec<TransitionSet>,
}

impl fmt::Debug for Net {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("Net");
        s.field("places", &self.places);
        let trans: Vec<String> = self
            .transitions()
            .map(|t| {
                format!(
                    "{}: {:?} -> {:?}",
                    self.transition_name(t),
                    self.place_names(self.preset(t)),
                    self.place_names(self.postset(t))
                )
            })
            .collect();
        s.field("transitions", &trans);
        s.finish()
    }
}

impl Net {
    pub fn n_places(&self) -> usize {
        self.places.len()
    }

    pub fn n_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn places(&self) -> impl ExactSizeIterator<Item = PlaceId> + Clone {
        (0..self.places.len()).map(PlaceId)
    }

    pub fn transitions(&self) -> impl ExactSizeIterator<Item = TransitionId> + Clone {
        (0..self.transitions.len()).map(TransitionId)
    }

    pub fn place(&self, name: &str) -> Result<PlaceId, NetError> {
        self.place_index
            .get(name)
            .copied()
            .ok_or_else(|| NetError::UnknownPlace(name.to_string()))
    }

    pub fn transition(&self, name: &str) -> Result<TransitionId, NetError> {
        self.transition_index
            .get(name)
            .copied()
            .ok_or_else(|| NetError::UnknownTransition(name.to_string()))
    }

    pub fn place_name(&self, p: PlaceId) -> &str {
        &self.places[p.0]
    }

    pub fn transition_name(&self, t: TransitionId) -> &str {
        &self.transitions[t.0]
    }

    pub fn place_names<'a>(&'a self, set: &PlaceSet) -> Vec<&'a str> {
        set.iter().map(|p| self.place_name(p)).collect()
    }

    pub fn transition_names<'a>(&'a self, set: &TransitionSet) -> Vec<&'a str> {
        set.iter().map(|t| self.transition_name(t)).collect()
    }

    pub fn empty_places(&self) -> PlaceSet {
        PlaceSet::empty(self.n_places())
    }

    pub fn all_places(&self) -> PlaceSet {
        PlaceSet::full(self.n_places())
    }

    pub fn empty_transitions(&self) -> TransitionSet {
        TransitionSet::empty(self.n_transitions())
    }

    pub fn all_transitions(&self) -> TransitionSet {
        TransitionSet::full(self.n_transitions())
    }

    pub fn place_set<'a>(
        &self,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<PlaceSet, NetError> {
        let mut set = self.empty_places();
        for name in names {
            set.insert(self.place(name)?);
        }
        Ok(set)
    }

    pub fn transition_set<'a>(
        &self,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<TransitionSet, NetError> {
        let mut set = self.empty_transitions();
        for name in names {
            set.insert(self.transition(name)?);
        }
        Ok(set)
    }

    /// `•t`
    pub fn preset(&self, t: TransitionId) -> &PlaceSet {
        &self.pre_t[t.0]
    }

    /// `t•`
    pub fn postset(&self, t: TransitionId) -> &PlaceSet {
        &self.post_t[t.0]
    }

    /// `•p`
    pub fn place_preset(&self, p: PlaceId) -> &TransitionSet {
        &self.pre_p[p.0]
    }

    /// `p•`
    pub fn place_postset(&self, p: PlaceId) -> &TransitionSet {
        &self.post_p[p.0]
    }

    /// `•X` for a set of places: all transitions producing into `xs`.
    pub fn preset_of_places(&self, xs: &PlaceSet) -> TransitionSet {
        union_of(
            self.empty_transitions(),
            xs.iter().map(|p| &self.pre_p[p.0]),
        )
    }

    /// `X•` for a set of places: all transitions consuming from `xs`.
    pub fn postset_of_places(&self, xs: &PlaceSet) -> TransitionSet {
        union_of(
            self.empty_transitions(),
            xs.iter().map(|p| &self.post_p[p.0]),
        )
    }

    pub fn preset_of_transitions(&self, xs: &TransitionSet) -> PlaceSet {
        union_of(self.empty_places(), xs.iter().map(|t| &self.pre_t[t.0]))
    }

    pub fn postset_of_transitions(&self, xs: &TransitionSet) -> PlaceSet {
        union_of(self.empty_places(), xs.iter().map(|t| &self.post_t[t.0]))
    }

    /// The flow relation, inputs before outputs, grouped per transition.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.transitions().flat_map(move |t| {
            self.preset(t)
                .iter()
                .map(move |p| Arc::Input(p, t))
                .chain(self.postset(t).iter().map(move |p| Arc::Output(t, p)))
        })
    }

    pub fn is_enabled(&self, m: &Marking, t: TransitionId) -> bool {
        self.preset(t).iter().all(|p| m.0[p.0] > 0)
    }

    pub fn enabled<'a>(&'a self, m: &'a Marking) -> impl Iterator<Item = TransitionId> + 'a {
        self.transitions().filter(move |&t| self.is_enabled(m, t))
    }

    /// `M' = M - •t + t•`.
    pub fn fire(&self, m: &Marking, t: TransitionId) -> Result<Marking, FireError> {
        if !self.is_enabled(m, t) {
            return Err(FireError::NotEnabled(t));
        }
        let mut next = m.clone();
        for p in self.preset(t) {
            next.0[p.0] -= 1;
        }
        for p in self.postset(t) {
            next.0[p.0] = next.0[p.0].checked_add(1).ok_or(FireError::Overflow {
                transition: t,
                place: p,
            })?;
        }
        Ok(next)
    }

    pub fn fire_sequence(
        &self,
        m: &Marking,
        sequence: &[TransitionId],
    ) -> Result<Marking, SequenceError> {
        sequence
            .iter()
            .enumerate()
            .try_fold(m.clone(), |current, (index, &t)| {
                self.fire(&current, t)
                    .map_err(|source| SequenceError { index, source })
            })
    }

    /// Checks the structural hypotheses of the liveness theorem.
    pub fn validate(&self) -> ValidationReport {
        let mut free_choice_violations = Vec::new();
        for t in self.transitions() {
            for u in self.transitions().skip(t.0 + 1) {
                let (a, b) = (self.preset(t), self.preset(u));
                if a.intersects(b) && a != b {
                    free_choice_violations.push((t, u));
                }
            }
        }
        let isolated_places = self
            .places()
            .filter(|&p| self.place_preset(p).is_empty() && self.place_postset(p).is_empty())
            .collect();
        let source_transitions = self
            .transitions()
            .filter(|&t| self.preset(t).is_empty())
            .collect();
        ValidationReport {
            free_choice_violations,
            isolated_places,
            source_transitions,
        }
    }
}

fn union_of<'a, I: Idx + 'a>(
    mut acc: IdSet<I>,
    sets: impl Iterator<Item = &'a IdSet<I>>,
) -> IdSet<I> {
    for s in sets {
        acc.union_with(s);
    }
    acc
}

/// Outcome of [`Net::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    /// Pairs `(t, u)`, `t < u`, whose presets overlap without being equal.
    pub free_choice_violations: Vec<(TransitionId, TransitionId)>,
    pub isolated_places: Vec<PlaceId>,
    /// Transitions with an empty preset. Not a violation, but such
    /// transitions are always enabled and usually make the net unbounded.
    pub source_transitions: Vec<TransitionId>,
}

impl ValidationReport {
    pub fn is_free_choice(&self) -> bool {
        self.free_choice_violations.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.free_choice_violations.is_empty() && self.isolated_places.is_empty()
    }

    pub fn describe(&self, net: &Net) -> Vec<String> {
        let mut lines = Vec::new();
        for &(t, u) in &self.free_choice_violations {
            lines.push(format!(
                "error: not free-choice: {} and {} have overlapping but different presets",
                net.transition_name(t),
                net.transition_name(u)
            ));
        }
        for &p in &self.isolated_places {
            lines.push(format!("error: isolated place {}", net.place_name(p)));
        }
        for &t in &self.source_transitions {
            lines.push(format!(
                "warning: transition {} has an empty preset; the net is unbounded if it can fire",
                net.transition_name(t)
            ));
        }
        lines
    }
}

/// Incremental constructor for [`Net`].
#[derive(Default, Debug, Clone)]
pub struct NetBuilder {
    places: Vec<String>,
    transitions: Vec<String>,
    place_index: HashMap<String, PlaceId>,
    transition_index: HashMap<String, TransitionId>,
    inputs: Vec<Vec<PlaceId>>,
    outputs: Vec<Vec<PlaceId>>,
}

impl NetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_place(&mut self, name: &str) -> Result<PlaceId, NetError> {
        if !is_valid_id(name) {
            return Err(NetError::InvalidId(name.to_string()));
        }
        if self.place_index.contains_key(name) {
            return Err(NetError::DuplicatePlace(name.to_string()));
        }
        if self.transition_index.contains_key(name) {
            return Err(NetError::IdCollision(name.to_string()));
        }
        let id = PlaceId(self.places.len());
        self.places.push(name.to_string());
        self.place_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn place(&self, name: &str) -> Option<PlaceId> {
        self.place_index.get(name).copied()
    }

    pub fn has_transition(&self, name: &str) -> bool {
        self.transition_index.contains_key(name)
    }

    pub fn add_transition(
        &mut self,
        name: &str,
        inputs: &[PlaceId],
        outputs: &[PlaceId],
    ) -> Result<TransitionId, NetError> {
        if !is_valid_id(name) {
            return Err(NetError::InvalidId(name.to_string()));
        }
        if self.transition_index.contains_key(name) {
            return Err(NetError::DuplicateTransition(name.to_string()));
        }
        if self.place_index.contains_key(name) {
            return Err(NetError::IdCollision(name.to_string()));
        }
        for p in inputs.iter().chain(outputs) {
            if p.0 >= self.places.len() {
                return Err(NetError::UnknownPlace(format!("#{}", p.0)));
            }
        }
        if let Some(p) = first_duplicate(inputs) {
            return Err(NetError::DuplicateArc {
                from: self.places[p.0].clone(),
                to: name.to_string(),
            });
        }
        if let Some(p) = first_duplicate(outputs) {
            return Err(NetError::DuplicateArc {
                from: name.to_string(),
                to: self.places[p.0].clone(),
            });
        }
        let id = TransitionId(self.transitions.len());
        self.transitions.push(name.to_string());
        self.transition_index.insert(name.to_string(), id);
        self.inputs.push(inputs.to_vec());
        self.outputs.push(outputs.to_vec());
        Ok(id)
    }

    pub fn build(self) -> Net {
        let (np, nt) = (self.places.len(), self.transitions.len());
        let mut pre_p = vec![TransitionSet::empty(nt); np];
        let mut post_p = vec![TransitionSet::empty(nt); np];
        let mut pre_t = Vec::with_capacity(nt);
        let mut post_t = Vec::with_capacity(nt);
        for (i, (ins, outs)) in self.inputs.iter().zip(&self.outputs).enumerate() {
            let t = TransitionId(i);
            for p in ins {
                post_p[p.0].insert(t);
            }
            for p in outs {
                pre_p[p.0].insert(t);
            }
            pre_t.push(PlaceSet::from_ids(np, ins.iter().copied()));
            post_t.push(PlaceSet::from_ids(np, outs.iter().copied()));
        }
        Net {
            places: self.places,
            transitions: self.transitions,
            place_index: self.place_index,
            transition_index: self.transition_index,
            pre_t,
            post_t,
            pre_p,
            post_p,
        }
    }
}

fn first_duplicate(ids: &[PlaceId]) -> Option<PlaceId> {
    ids.iter()
        .enumerate()
        .find(|(i, p)| ids[..*i].contains(p))
        .map(|(_, &p)| p)
}

/// A multiset of places: one token count per place of the owning net.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking(Vec<Tokens>);

impl Marking {
    pub fn zero(net: &Net) -> Self {
        Marking(vec![0; net.n_places()])
    }

    pub fn new(net: &Net, counts: Vec<Tokens>) -> Result<Self, NetError> {
        if counts.len() != net.n_places() {
            return Err(NetError::MarkingSize {
                expected: net.n_places(),
                got: counts.len(),
            });
        }
        Ok(Marking(counts))
    }

    /// Builds a marking from `(place, tokens)` pairs; unnamed places get 0.
    pub fn from_named<'a>(
        net: &Net,
        entries: impl IntoIterator<Item = (&'a str, Tokens)>,
    ) -> Result<Self, NetError> {
        let mut m = Self::zero(net);
        for (name, tokens) in entries {
            m.0[net.place(name)?.0] = tokens;
        }
        Ok(m)
    }

    pub fn get(&self, p: PlaceId) -> Tokens {
        self.0[p.0]
    }

    pub fn set(&mut self, p: PlaceId, tokens: Tokens) {
        self.0[p.0] = tokens;
    }

    pub fn as_slice(&self) -> &[Tokens] {
        &self.0
    }

    /// Places holding at least one token.
    pub fn support(&self) -> PlaceSet {
        PlaceSet::from_ids(
            self.0.len(),
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(i, _)| PlaceId(i)),
        )
    }

    /// `M|R = 0`
    pub fn is_zero_on(&self, places: &PlaceSet) -> bool {
        places.iter().all(|p| self.0[p.0] == 0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&n| u64::from(n)).sum()
    }
}

impl Index<PlaceId> for Marking {
    type Output = Tokens;

    fn index(&self, p: PlaceId) -> &Tokens {
        &self.0[p.0]
    }
}

impl fmt::Debug for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

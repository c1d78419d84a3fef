//! Traps, siphons, greatest-fixpoint maximal traps/siphons and minimal
//! siphon enumeration, with brute-force counterparts used as test oracles.

use thiserror::Error;

use crate::net::{Net, PlaceSet};

/// Default number of branch nodes explored by [`minimal_siphons`].
pub const DEFAULT_WORK_LIMIT: u64 = 1_000_000;

/// Default place-count cap for the brute-force enumerators.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("siphon enumeration exceeded the work limit of {limit} branch nodes")]
    WorkLimitExceeded { limit: u64 },
    #[error("brute-force enumeration refused: {places} places exceeds the cap of {cap}")]
    TooManyPlaces { places: usize, cap: usize },
}

/// `Q• ⊆ •Q`
pub fn is_trap(net: &Net, q: &PlaceSet) -> bool {
    net.postset_of_places(q).is_subset(&net.preset_of_places(q))
}

/// `•S ⊆ S•`
pub fn is_siphon(net: &Net, s: &PlaceSet) -> bool {
    net.preset_of_places(s).is_subset(&net.postset_of_places(s))
}

/// The largest trap contained in `s` (the union of all traps inside `s`).
///
/// Repeatedly deletes the lowest-indexed place `p` that has an output
/// transition `t` with `t• ∩ R = ∅`; such a `p` cannot belong to any trap
/// inside the current `R`.
pub fn maximal_trap_within(net: &Net, s: &PlaceSet) -> PlaceSet {
    let mut r = s.clone();
    while let Some(p) = r.iter().find(|&p| {
        net.place_postset(p)
            .iter()
            .any(|t| net.postset(t).is_disjoint(&r))
    }) {
        r.remove(p);
    }
    r
}

/// The largest siphon contained in `s`.
///
/// Dual of [`maximal_trap_within`]: deletes places `p` having an input
/// transition `t` with `•t ∩ R = ∅`.
pub fn maximal_siphon_within(net: &Net, s: &PlaceSet) -> PlaceSet {
    let mut r = s.clone();
    while let Some(p) = r.iter().find(|&p| {
        net.place_preset(p)
            .iter()
            .any(|t| net.preset(t).is_disjoint(&r))
    }) {
        r.remove(p);
    }
    r
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<(), StructuralError> {
        self.used += 1;
        if self.used > self.limit {
            return Err(StructuralError::WorkLimitExceeded { limit: self.limit });
        }
        Ok(())
    }
}

/// All inclusion-minimal nonempty siphons, in canonical order.
///
/// For every place `p` (in declaration order) a branch-and-bound search
/// grows candidate sets containing `p` and no earlier place. While some
/// transition `t ∈ •R ∖ R•` exists, every siphon extending `R` must contain a
/// place of `•t`, so the search branches on those places (each branch also
/// excluding the places tried by earlier sibling branches). Candidates that
/// already contain a found siphon are pruned. `work_limit` bounds the number
/// of branch nodes visited.
pub fn minimal_siphons(net: &Net, work_limit: u64) -> Result<Vec<PlaceSet>, StructuralError> {
    let mut budget = Budget {
        used: 0,
        limit: work_limit,
    };
    let mut found: Vec<PlaceSet> = Vec::new();
    for p in net.places() {
        let mut candidate = net.empty_places();
        candidate.insert(p);
        let allowed = PlaceSet::from_ids(net.n_places(), net.places().filter(|q| q.0 > p.0));
        grow_siphon(net, candidate, allowed, &mut found, &mut budget)?;
    }
    Ok(inclusion_minimal(found))
}

fn grow_siphon(
    net: &Net,
    candidate: PlaceSet,
    mut allowed: PlaceSet,
    found: &mut Vec<PlaceSet>,
    budget: &mut Budget,
) -> Result<(), StructuralError> {
    budget.tick()?;
    if found.iter().any(|f| f.is_subset(&candidate)) {
        return Ok(());
    }
    let uncovered = net
        .preset_of_places(&candidate)
        .difference(&net.postset_of_places(&candidate));
    let Some(t) = uncovered.first() else {
        found.push(candidate);
        return Ok(());
    };
    // t ∉ R•, so no place of •t is in the candidate yet. An empty •t leaves
    // nothing to branch on and the branch dies.
    for q in net.preset(t).iter() {
        if !allowed.contains(q) {
            continue;
        }
        let mut next = candidate.clone();
        next.insert(q);
        grow_siphon(net, next, allowed.clone(), found, budget)?;
        allowed.remove(q);
    }
    Ok(())
}

/// Keeps the sets that have no proper subset in the input; removes
/// duplicates and the empty set; sorts canonically.
pub fn inclusion_minimal(sets: Vec<PlaceSet>) -> Vec<PlaceSet> {
    let mut sets: Vec<PlaceSet> = sets.into_iter().filter(|s| !s.is_empty()).collect();
    sets.sort();
    sets.dedup();
    let minimal: Vec<PlaceSet> = sets
        .iter()
        .filter(|s| !sets.iter().any(|o| o != *s && o.is_subset(s)))
        .cloned()
        .collect();
    minimal
}

fn brute_force(
    net: &Net,
    cap: usize,
    keep: impl Fn(&Net, &PlaceSet) -> bool,
) -> Result<Vec<PlaceSet>, StructuralError> {
    let n = net.n_places();
    if n > cap || n >= 64 {
        return Err(StructuralError::TooManyPlaces { places: n, cap });
    }
    let mut out: Vec<PlaceSet> = (0..1u64 << n)
        .map(|mask| PlaceSet::from_mask(n, mask))
        .filter(|s| keep(net, s))
        .collect();
    out.sort();
    Ok(out)
}

/// Every siphon of the net (including `∅`), by testing all `2^|P|` subsets.
pub fn brute_force_siphons(net: &Net, cap: usize) -> Result<Vec<PlaceSet>, StructuralError> {
    brute_force(net, cap, is_siphon)
}

/// Every trap of the net (including `∅`), by testing all `2^|P|` subsets.
pub fn brute_force_traps(net: &Net, cap: usize) -> Result<Vec<PlaceSet>, StructuralError> {
    brute_force(net, cap, is_trap)
}

/// Union of all traps in `traps` that lie inside `s`.
pub fn union_of_traps_within(net: &Net, traps: &[PlaceSet], s: &PlaceSet) -> PlaceSet {
    let mut out = net.empty_places();
    for q in traps.iter().filter(|q| q.is_subset(s)) {
        out.union_with(q);
    }
    out
}

//! Separation and connectivity over dominated regions.
//!
//! Two sets are separated when their dominated regions are disjoint, which
//! decomposes into four elementary intersections (set/set, set/neighborhood
//! both ways, neighborhood/neighborhood). A set is connected when it admits
//! no bipartition into two nonempty separated halves.

use crate::closure::{neighborhood, region};
use crate::error::{Error, Result};
use crate::system::{NodeId, NodeSet, System};
use crate::transform::NodeMap;

/// The four-way decomposition of a region overlap. `separated` holds exactly
/// when all four witnesses are absent.
#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub separated: bool,
    /// Witness in `X ∩ Z`.
    pub set_set: Option<NodeId>,
    /// Witness in `X ∩ Z.neighborhood`.
    pub set_nbhd: Option<NodeId>,
    /// Witness in `X.neighborhood ∩ Z`.
    pub nbhd_set: Option<NodeId>,
    /// Witness in `X.neighborhood ∩ Z.neighborhood`.
    pub nbhd_nbhd: Option<NodeId>,
}

pub fn are_separated(s: &System, x: &NodeSet, z: &NodeSet) -> Result<SeparationReport> {
    s.validate_set(x)?;
    s.validate_set(z)?;
    let nx = neighborhood(s, x)?;
    let nz = neighborhood(s, z)?;
    let report = SeparationReport {
        separated: false,
        set_set: x.intersection(z).first(),
        set_nbhd: x.intersection(&nz).first(),
        nbhd_set: nx.intersection(z).first(),
        nbhd_nbhd: nx.intersection(&nz).first(),
    };
    let separated = report.set_set.is_none()
        && report.set_nbhd.is_none()
        && report.nbhd_set.is_none()
        && report.nbhd_nbhd.is_none();
    debug_assert_eq!(
        separated,
        region(s, x)?.is_disjoint(&region(s, z)?),
        "four-way decomposition must equal region disjointness"
    );
    Ok(SeparationReport { separated, ..report })
}

/// Connectivity of a nonempty set: no bipartition into separated halves.
///
/// Because a set's region is the union of its members' singleton regions,
/// a bipartition `X ∪ Z` is separated exactly when no member of `X` shares
/// region overlap with a member of `Z`; connectivity therefore reduces to
/// connectivity of the overlap graph on the members. The brute-force
/// bipartition oracle in the tests audits this reduction.
pub fn is_connected_set(s: &System, y: &NodeSet) -> Result<bool> {
    s.validate_set(y)?;
    if y.is_empty() {
        return Err(Error::EmptySet);
    }
    let members: Vec<NodeId> = y.iter().collect();
    let regions: Vec<NodeSet> = members
        .iter()
        .map(|&v| region(s, &s.set_from_ids([v])))
        .collect::<Result<_>>()?;
    let k = members.len();
    let mut reached = vec![false; k];
    let mut stack = vec![0usize];
    reached[0] = true;
    let mut seen = 1usize;
    while let Some(i) = stack.pop() {
        for j in 0..k {
            if !reached[j] && !regions[i].is_disjoint(&regions[j]) {
                reached[j] = true;
                seen += 1;
                stack.push(j);
            }
        }
    }
    Ok(seen == k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreservationOutcome {
    /// Hypotheses held and the images stayed separated.
    Confirms,
    /// Hypotheses held, the map is continuous, yet the images touch; a
    /// reportable counterexample.
    Contradicts,
    /// The size hypothesis failed, so the claim is silent on this instance.
    VacuousHypothesis,
    /// The map is discontinuous, so the claim is silent on this instance.
    VacuousDiscontinuous,
    /// Continuity was not established either way.
    Unchecked,
}

/// Outcome of checking that a monotone continuous map carries separated sets
/// to separated sets, under the operationalized "sufficiently large"
/// hypothesis (see [`check_separation_preservation`]).
#[derive(Debug, Clone)]
pub struct PreservationReport {
    pub hypothesis_holds: bool,
    /// Source nodes that violate the non-isolation hypothesis.
    pub isolated: Vec<NodeId>,
    pub images_separated: bool,
    pub map_continuous: Option<bool>,
    pub outcome: PreservationOutcome,
    /// Human-readable statement of the hypothesis that was applied.
    pub hypothesis: &'static str,
}

const HYPOTHESIS: &str = "sufficiently large = every member of X and Z, and every source node \
mapping into the image regions, has a nonempty out-neighborhood";

/// Checks one instance of separation preservation. `x` and `z` must be
/// separated in the source. "Sufficiently large" is not a formal quantity
/// here; it is operationalized as non-isolation of the points involved, and
/// the report states the hypothesis it used.
pub fn check_separation_preservation(
    f: &NodeMap,
    x: &NodeSet,
    z: &NodeSet,
    max_n: usize,
) -> Result<PreservationReport> {
    let s = f.source();
    if !are_separated(s, x, z)?.separated {
        return Err(Error::Config(
            "separation preservation requires separated inputs".to_string(),
        ));
    }
    let fx = f.apply(x)?;
    let fz = f.apply(z)?;
    let images_separated = are_separated(f.target(), &fx, &fz)?.separated;

    let mut relevant = x.union(z);
    let image_regions = region(f.target(), &fx)?.union(&region(f.target(), &fz)?);
    for v in s.nodes() {
        if let Some(w) = f.image(v) {
            if image_regions.contains(w) {
                relevant.insert(v);
            }
        }
    }
    let isolated: Vec<NodeId> = relevant
        .iter()
        .filter(|&v| s.out_degree(v) == 0)
        .collect();
    let hypothesis_holds = isolated.is_empty();

    let map_continuous = match f.is_continuous(max_n) {
        Ok(v) => Some(v.continuous),
        Err(Error::SizeLimit { .. }) => None,
        Err(e) => return Err(e),
    };

    let outcome = if !hypothesis_holds {
        PreservationOutcome::VacuousHypothesis
    } else {
        match map_continuous {
            Some(true) if images_separated => PreservationOutcome::Confirms,
            Some(true) => PreservationOutcome::Contradicts,
            Some(false) => PreservationOutcome::VacuousDiscontinuous,
            None => PreservationOutcome::Unchecked,
        }
    };

    Ok(PreservationReport {
        hypothesis_holds,
        isolated,
        images_separated,
        map_continuous,
        outcome,
        hypothesis: HYPOTHESIS,
    })
}

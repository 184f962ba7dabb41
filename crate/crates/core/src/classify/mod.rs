//! Locality, delays, irreducibility, finite type and almost finite type.
//! The two classification tests are each computed in two independent ways
//! which must agree.

mod delay;
mod locality;
mod pairs;

pub use delay::{delay, DelayResult, DelayWitness, Side};
pub use locality::{locality, EqualLabelPaths, LocalityWitness};

use crate::automata::{fischer_component, krieger_of, Automaton, ShiftPresentation};
use crate::error::{Error, Result};
use crate::semigroup::{local_pseudovariety_check, syntactic_graph, syntactic_semigroup, LocalProperty};

/// Whether the shift is irreducible: its Krieger cover has a unique terminal
/// component presenting every block.
pub fn is_irreducible(p: &ShiftPresentation) -> Result<bool> {
    is_irreducible_of(&p.to_automaton())
}

pub fn is_irreducible_of(a: &Automaton) -> Result<bool> {
    let a = a.essential_part();
    if a.is_empty() {
        return Err(Error::EmptyShift);
    }
    if a.is_strongly_connected() {
        return Ok(true);
    }
    Ok(fischer_component(&krieger_of(&a)?.automaton).is_some())
}

/// Which cover the locality test ran on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverKind {
    Fischer,
    Krieger,
}

impl CoverKind {
    pub fn name(self) -> &'static str {
        match self {
            CoverKind::Fischer => "fischer",
            CoverKind::Krieger => "krieger",
        }
    }
}

/// Both finite-type tests and their shared verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTypeReport {
    pub verdict: bool,
    pub cover: CoverKind,
    pub locality: LocalityWitness,
    /// Largest rank of a regular D-class of the syntactic semigroup.
    pub max_regular_rank: usize,
}

/// A shift has finite type iff its Krieger cover (Fischer cover when
/// irreducible) is local, iff every regular D-class of its syntactic
/// semigroup has rank at most 1.
pub fn is_finite_type(p: &ShiftPresentation) -> Result<FiniteTypeReport> {
    is_finite_type_of(&p.to_automaton())
}

pub fn is_finite_type_of(a: &Automaton) -> Result<FiniteTypeReport> {
    let a = a.essential_part();
    if a.is_empty() {
        return Err(Error::EmptyShift);
    }
    let krieger = krieger_of(&a)?.automaton.essential_part();
    let (cover, kind) = match fischer_component(&krieger) {
        Some(comp) => {
            let mut keep = vec![false; krieger.num_states()];
            for q in comp {
                keep[q] = true;
            }
            (krieger.induced(&keep).0, CoverKind::Fischer)
        }
        None => (krieger, CoverKind::Krieger),
    };
    let witness = locality(&cover, None);
    let graph = syntactic_graph(&cover)?;
    let max_rank = graph.nodes.iter().map(|n| n.rank).max().unwrap_or(0);
    if witness.is_local() != (max_rank <= 1) {
        return Err(Error::Inconsistent(format!(
            "{} cover local: {}, but largest regular rank is {max_rank}",
            kind.name(),
            witness.is_local()
        )));
    }
    Ok(FiniteTypeReport {
        verdict: witness.is_local(),
        cover: kind,
        locality: witness,
        max_regular_rank: max_rank,
    })
}

/// Both almost-finite-type tests and their shared verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostFiniteTypeReport {
    pub verdict: bool,
    pub left_delay: DelayResult,
    pub idempotents_commute: bool,
}

/// An irreducible shift has almost finite type iff its Fischer cover has
/// finite left delay, iff idempotents commute in every local submonoid of
/// its syntactic semigroup.
pub fn is_almost_finite_type(p: &ShiftPresentation) -> Result<AlmostFiniteTypeReport> {
    is_almost_finite_type_of(&p.to_automaton())
}

pub fn is_almost_finite_type_of(a: &Automaton) -> Result<AlmostFiniteTypeReport> {
    let fischer = crate::automata::fischer_of(a)?.automaton;
    let left = delay(&fischer, Side::Left);
    let commute = local_pseudovariety_check(&syntactic_semigroup(a)?, LocalProperty::IdempotentsCommute);
    if left.is_finite() != commute {
        return Err(Error::Inconsistent(format!(
            "left delay finite: {}, idempotents commute locally: {commute}",
            left.is_finite()
        )));
    }
    Ok(AlmostFiniteTypeReport {
        verdict: commute,
        left_delay: left,
        idempotents_commute: commute,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::ForbiddenWords;

    fn even() -> ShiftPresentation {
        Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "b", "1")],
        )
        .unwrap()
        .into()
    }

    #[test]
    fn finite_type_verdicts() {
        let golden = ForbiddenWords::parse(&["a", "b"], &["bb"]).unwrap().into();
        assert!(is_finite_type(&golden).unwrap().verdict);
        assert!(!is_finite_type(&even()).unwrap().verdict);
        let ba: ShiftPresentation = ForbiddenWords::parse(&["a", "b"], &["ba"]).unwrap().into();
        let r = is_finite_type(&ba).unwrap();
        assert!(r.verdict);
        assert_eq!(r.cover, CoverKind::Krieger);
        assert!(r.locality.admits(1, 0));
        assert!(!is_irreducible(&ba).unwrap());
    }

    #[test]
    fn almost_finite_type_verdicts() {
        assert!(is_almost_finite_type(&even()).unwrap().verdict);
        let a: ShiftPresentation = Automaton::from_edges(
            &["a", "b", "c"],
            &["1", "2"],
            &[
                ("1", "a", "1"),
                ("1", "b", "1"),
                ("1", "c", "2"),
                ("2", "a", "1"),
                ("2", "b", "2"),
            ],
        )
        .unwrap()
        .into();
        let r = is_almost_finite_type(&a).unwrap();
        assert!(!r.verdict);
        assert!(!r.left_delay.is_finite());
    }

    #[test]
    fn reducible_shift_has_no_almost_finite_type_verdict() {
        let ba: ShiftPresentation = ForbiddenWords::parse(&["a", "b"], &["ba"]).unwrap().into();
        assert_eq!(is_almost_finite_type(&ba), Err(Error::NotIrreducible));
    }
}

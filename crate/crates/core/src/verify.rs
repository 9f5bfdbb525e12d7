//! Oracle cross-checks on a single graph: the fast pipeline against
//! exhaustive enumeration.

use serde::Serialize;

use crate::clar::{enumerate_clar_covers, solve_clar, verify_unique_after_removal_with, ClarError};
use crate::decomp::{decompose_with, elementary_components, is_elementary, BondClass};
use crate::forcing::{brute_force_max_forcing, max_forcing_from, Budget, ForcingError};
use crate::matching::{perfect_matchings_within, resonant_faces, MatchingError};
use crate::planegraph::PlaneBipartiteGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass(_))
    }

    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail(_))
    }

    pub fn skipped(&self) -> bool {
        matches!(self.outcome, Outcome::Skipped(_))
    }
}

pub const CHECK_NAMES: [&str; 5] = [
    "clar-lower-bound",
    "face-resonance",
    "unique-remainder",
    "forcing-equals-clar",
    "decomposition",
];

#[derive(Debug)]
enum Stop {
    Budget(String),
    Fail(String),
}

impl From<ForcingError> for Stop {
    fn from(e: ForcingError) -> Self {
        match e {
            ForcingError::BudgetExceeded(_) | ForcingError::DepthExceeded(_) => {
                Stop::Budget(e.to_string())
            }
            other => Stop::Fail(other.to_string()),
        }
    }
}

impl From<ClarError> for Stop {
    fn from(e: ClarError) -> Self {
        Stop::Fail(e.to_string())
    }
}

impl From<MatchingError> for Stop {
    fn from(e: MatchingError) -> Self {
        match e {
            MatchingError::BudgetExceeded(_) => Stop::Budget(e.to_string()),
            other => Stop::Fail(other.to_string()),
        }
    }
}

type Verdict = Result<Result<String, String>, Stop>;

fn run(name: &'static str, check: impl FnOnce() -> Verdict) -> Check {
    let outcome = match check() {
        Ok(Ok(msg)) => Outcome::Pass(msg),
        Ok(Err(msg)) | Err(Stop::Fail(msg)) => Outcome::Fail(msg),
        Err(Stop::Budget(msg)) => Outcome::Skipped(msg),
    };
    Check { name, outcome }
}

fn check_budget(count: usize, budget: Budget) -> Result<(), Stop> {
    if count > budget.matchings {
        Err(Stop::Budget(format!(
            "more than {} Clar covers",
            budget.matchings
        )))
    } else {
        Ok(())
    }
}

/// Runs every check. Fails only when `g` has no perfect matching.
pub fn run_checks(g: &PlaneBipartiteGraph, budget: Budget) -> Result<Vec<Check>, MatchingError> {
    let clar = match solve_clar(g) {
        Ok(r) => r,
        Err(ClarError::NoPerfectMatching) => return Err(MatchingError::NoPerfectMatching),
        Err(e) => panic!("Clar solver failed on a matchable graph: {e}"),
    };
    let c = clar.clar_number;
    let brute = brute_force_max_forcing(g, budget);

    let lower = run(CHECK_NAMES[0], || {
        let (f, _) = brute.clone()?;
        Ok(if f >= c {
            Ok(format!("F={f} >= C={c}"))
        } else {
            Err(format!("F={f} < C={c}"))
        })
    });

    let resonance = run(CHECK_NAMES[1], || {
        let resonant = resonant_faces(g)?.len();
        let elementary = is_elementary(g)?;
        let all = resonant == g.face_count();
        let msg = format!(
            "resonant {resonant}/{} faces, elementary={elementary}",
            g.face_count()
        );
        Ok(if all == elementary { Ok(msg) } else { Err(msg) })
    });

    let unique = run(CHECK_NAMES[2], || {
        let mut count = 0;
        for cover in enumerate_clar_covers(g, Some(c)) {
            count += 1;
            check_budget(count, budget)?;
            if !verify_unique_after_removal_with(g, &cover, c)? {
                return Ok(Err(format!(
                    "faces {:?} leave more than one perfect matching",
                    cover.faces
                )));
            }
        }
        Ok(Ok(format!(
            "{count} maximum cover(s), each leaves a unique perfect matching"
        )))
    });

    let equal = run(CHECK_NAMES[3], || {
        let fast = max_forcing_from(g, &elementary_components(g)?)?.max_forcing;
        let mut enumerated = 0;
        for (i, cover) in enumerate_clar_covers(g, None).enumerate() {
            check_budget(i + 1, budget)?;
            enumerated = enumerated.max(cover.faces.len());
        }
        let (f, _) = brute.clone()?;
        let msg =
            format!("brute F={f}, component sum={fast}, enumerated C={enumerated}, solver C={c}");
        Ok(if f == fast && fast == enumerated && enumerated == c {
            Ok(msg)
        } else {
            Err(msg)
        })
    });

    let decomposition = run(CHECK_NAMES[4], || {
        let dec = elementary_components(g)?;
        let all = perfect_matchings_within(g, budget.matchings)?;
        let oracle: Vec<BondClass> = g
            .edge_ids()
            .map(|e| match all.iter().filter(|m| m.contains(e)).count() {
                0 => BondClass::FixedSingle,
                n if n == all.len() => BondClass::FixedDouble,
                _ => BondClass::DoubleBond,
            })
            .collect();
        if oracle != dec.bond_class {
            return Ok(Err("bond classes differ from enumeration".to_string()));
        }
        for m in &all {
            let other = decompose_with(g, m)?;
            if other.bond_class != dec.bond_class || other.component_of != dec.component_of {
                return Ok(Err(
                    "decomposition depends on the reference matching".to_string()
                ));
            }
        }
        let (whole, _) = brute.clone()?;
        let mut parts = 0;
        for comp in &dec.components {
            parts += brute_force_max_forcing(&comp.subgraph.graph, budget)?.0;
        }
        let msg = format!(
            "{} component(s), {} fixed bond(s), F={whole} = sum of component F={parts}",
            dec.components.len(),
            dec.fixed_bonds().count()
        );
        Ok(if parts == whole { Ok(msg) } else { Err(msg) })
    });

    Ok(vec![lower, resonance, unique, equal, decomposition])
}

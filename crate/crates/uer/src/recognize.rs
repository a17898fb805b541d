//! Top-level dispatch: the trivial cycle case, variant selection, and the
//! automatic choice of the cheapest recognizer that is complete for the
//! given input.

use crate::candidate::{match_rotation, RectangleCandidate};
use crate::drawing::{validate, GridDrawing, Model};
use crate::graph::Graph;
use crate::inner2::{is_inner2, recognize_inner2};
use crate::outcome::{
    check_cycle, ConstraintError, Constraints, RecognitionOutcome, RecognitionStats, RejectReason,
};
use crate::rf_general::{recognize_rf_fixed_angles, recognize_rf_fpt_with_jobs};
use crate::rf_restricted::recognize_rf_no_internal_deg3;
use crate::usf::recognize_usf;

/// Which recognizer to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecognizerVariant {
    Auto,
    NoInternalDeg3,
    Inner2,
    FixedAngles,
    Fpt,
}

impl std::str::FromStr for RecognizerVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Self::Auto),
            "no-internal-deg3" => Ok(Self::NoInternalDeg3),
            "inner2" => Ok(Self::Inner2),
            "fixed-angles" => Ok(Self::FixedAngles),
            "fpt" => Ok(Self::Fpt),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

/// The trivial case: a cycle admits a rectangular-face drawing iff its
/// length is even. The widest rectangle is reported unless corners force a
/// different split.
pub fn cycle_outcome(g: &Graph, constraints: &Constraints, model: Model) -> RecognitionOutcome {
    debug_assert!(g.is_cycle());
    let stats = RecognitionStats::default();
    let k = g.vertex_count();
    if k % 2 == 1 || k < 4 {
        return RecognitionOutcome::reject(vec![RejectReason::CycleOddLength], stats);
    }
    if model == Model::Usf && k != 4 {
        return RecognitionOutcome::reject(vec![RejectReason::CycleNotUnitSquare], stats);
    }
    let order = g.cycle_order();
    let cand = match constraints.corners {
        Some(corners) => match RectangleCandidate::with_corner_vertices(g, &order, corners) {
            Ok(c) => c,
            Err(r) => return RecognitionOutcome::reject(vec![r], stats),
        },
        None => {
            let w = k / 2 - 1;
            RectangleCandidate::new(g, &order, [0, w, w + 1, 2 * w + 1])
                .expect("widest split of an even cycle")
        }
    };
    let positions = cand
        .boundary_positions(g.vertex_count())
        .into_iter()
        .map(Option::unwrap)
        .collect();
    let d = GridDrawing::new(g.clone(), positions, model).expect("cycle rectangle");
    debug_assert!(validate(&d).valid);
    match &constraints.rotation {
        Some(rot) => match match_rotation(&d, rot) {
            Some(m) => RecognitionOutcome::accept(m, stats),
            None => RecognitionOutcome::reject(vec![RejectReason::RotationNotPreserved], stats),
        },
        None => RecognitionOutcome::accept(d, stats),
    }
}

/// Runs the requested variant; `Auto` picks the cheapest recognizer that is
/// complete for the input: the unit-square algorithm for that model, the
/// trivial cycle test, the restricted algorithm when no vertex can end up as
/// an internal degree-3 vertex (none exist, or all lie on a prescribed
/// external cycle), the inner-2 scan when the prescribed cycle leaves only
/// paths and cycles, and the fixed-parameter search otherwise.
pub fn recognize(
    g: &Graph,
    model: Model,
    variant: RecognizerVariant,
    constraints: &Constraints,
    jobs: usize,
) -> Result<RecognitionOutcome, ConstraintError> {
    match variant {
        RecognizerVariant::Auto => match model {
            Model::Usf => recognize_usf(g, constraints),
            Model::Rf => {
                if let Some(a) = &constraints.angles {
                    return recognize_rf_fixed_angles(g, a, constraints);
                }
                if g.is_cycle() {
                    return Ok(cycle_outcome(g, constraints, Model::Rf));
                }
                let deg3 = g.vertices_of_degree(3);
                if deg3.is_empty() {
                    return recognize_rf_no_internal_deg3(g, constraints);
                }
                if let Some(cycle) = &constraints.external_cycle {
                    check_cycle(g, cycle)?;
                    if is_inner2(g, cycle) {
                        return recognize_inner2(g, cycle, constraints);
                    }
                    if deg3.iter().all(|v| cycle.contains(v)) {
                        return recognize_rf_no_internal_deg3(g, constraints);
                    }
                }
                recognize_rf_fpt_with_jobs(g, constraints, jobs)
            }
        },
        RecognizerVariant::NoInternalDeg3 => {
            require_rf(model)?;
            recognize_rf_no_internal_deg3(g, constraints)
        }
        RecognizerVariant::Inner2 => {
            require_rf(model)?;
            let cycle = constraints
                .external_cycle
                .as_ref()
                .ok_or(ConstraintError::MissingConstraint("external cycle"))?;
            recognize_inner2(g, cycle, constraints)
        }
        RecognizerVariant::FixedAngles => {
            require_rf(model)?;
            let angles = constraints
                .angles
                .as_ref()
                .ok_or(ConstraintError::MissingConstraint("angles"))?;
            recognize_rf_fixed_angles(g, angles, constraints)
        }
        RecognizerVariant::Fpt => {
            require_rf(model)?;
            recognize_rf_fpt_with_jobs(g, constraints, jobs)
        }
    }
}

fn require_rf(model: Model) -> Result<(), ConstraintError> {
    if model == Model::Usf {
        return Err(ConstraintError::MissingConstraint(
            "this variant applies to the rf model",
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::canonicalize;

    #[test]
    fn cycle_family_matches_the_trivial_test() {
        for k in 2..=10usize {
            let even = Graph::cycle(2 * k);
            let out = recognize(
                &even,
                Model::Rf,
                RecognizerVariant::Auto,
                &Constraints::none(),
                1,
            )
            .unwrap();
            let d = out.drawing().expect("even cycle accepted");
            let c = canonicalize(d);
            assert_eq!((c.width(), c.height()), ((k - 1) as i64, 1));

            let odd = Graph::cycle(2 * k + 1);
            let out = recognize(
                &odd,
                Model::Rf,
                RecognizerVariant::Auto,
                &Constraints::none(),
                1,
            )
            .unwrap();
            assert!(!out.is_accept());

            let usf = recognize(
                &even,
                Model::Usf,
                RecognizerVariant::Auto,
                &Constraints::none(),
                1,
            )
            .unwrap();
            assert_eq!(usf.is_accept(), 2 * k == 4);
        }
    }

    #[test]
    fn variant_constraint_requirements() {
        let g = Graph::cycle(4);
        assert!(matches!(
            recognize(
                &g,
                Model::Rf,
                RecognizerVariant::Inner2,
                &Constraints::none(),
                1
            ),
            Err(ConstraintError::MissingConstraint(_))
        ));
        assert!(matches!(
            recognize(
                &g,
                Model::Rf,
                RecognizerVariant::FixedAngles,
                &Constraints::none(),
                1
            ),
            Err(ConstraintError::MissingConstraint(_))
        ));
        assert!(matches!(
            recognize(
                &g,
                Model::Usf,
                RecognizerVariant::Fpt,
                &Constraints::none(),
                1
            ),
            Err(ConstraintError::MissingConstraint(_))
        ));
    }
}

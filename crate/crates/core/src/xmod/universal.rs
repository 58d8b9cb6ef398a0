//! Universal properties decided by enumerating mediating morphisms.

use super::limits::{XModCone, XModEqualizer};
use super::{enumerate_xmod_morphisms, CrossedModule, XModMorphism};
use crate::error::{Error, Result};
use crate::hom::guard;
use crate::morphism::Morphism;
use crate::report::{Report, Violation};

/// A candidate limit together with the diagram it should be a limit of.
///
/// Terminal, initial, product and pullback are limits over a fixed base
/// `X`: every morphism involved is the identity on `X`. The equalizer is
/// checked among all crossed module morphisms.
#[derive(Debug, Clone, Copy)]
pub enum UniversalProblem<'a> {
    Terminal(&'a CrossedModule),
    Initial(&'a CrossedModule),
    Product(&'a XModCone),
    Pullback {
        cone: &'a XModCone,
        f: &'a XModMorphism,
        g: &'a XModMorphism,
    },
    Equalizer {
        eq: &'a XModEqualizer,
        f: &'a XModMorphism,
        g: &'a XModMorphism,
    },
}

impl UniversalProblem<'_> {
    pub fn kind(&self) -> &'static str {
        match self {
            UniversalProblem::Terminal(_) => "terminal",
            UniversalProblem::Initial(_) => "initial",
            UniversalProblem::Product(_) => "product",
            UniversalProblem::Pullback { .. } => "pullback",
            UniversalProblem::Equalizer { .. } => "equalizer",
        }
    }

    fn apex(&self) -> &CrossedModule {
        match self {
            UniversalProblem::Terminal(c) | UniversalProblem::Initial(c) => c,
            UniversalProblem::Product(cone) | UniversalProblem::Pullback { cone, .. } => &cone.apex,
            UniversalProblem::Equalizer { eq, .. } => &eq.apex,
        }
    }
}

/// Mediator counts per cone, and a report that passes iff every count is 1.
#[derive(Debug, Clone)]
pub struct ConeCheck {
    pub report: Report,
    /// `(cone label, number of mediating morphisms)`.
    pub counts: Vec<(String, usize)>,
}

impl ConeCheck {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

fn slice_homs(a: &CrossedModule, b: &CrossedModule, max: usize) -> Result<Vec<XModMorphism>> {
    let id = Morphism::identity(a.c0());
    enumerate_xmod_morphisms(a, b, Some(&id), max)
}

fn composite_is(leg: &XModMorphism, m: &XModMorphism, target: &XModMorphism) -> bool {
    leg.after(m).is_ok_and(|c| c.same_maps(target))
}

/// For every tester and every cone from it, counts the mediating morphisms
/// into the candidate limit.
pub fn verify_universal_cone(
    problem: UniversalProblem<'_>,
    testers: &[CrossedModule],
    max_size: usize,
) -> Result<ConeCheck> {
    let apex = problem.apex();
    let base = apex.c0();
    let slice = !matches!(problem, UniversalProblem::Equalizer { .. });
    let mut report = Report::new(format!("{}:{}", problem.kind(), apex.name()));
    let mut counts = Vec::new();
    guard(
        format!("candidate {}", apex.name()),
        apex.c1().len().max(apex.c0().len()),
        max_size,
    )?;
    for t in testers {
        guard(format!("tester {}", t.name()), t.c1().len().max(t.c0().len()), max_size)?;
        if slice && **t.c0() != **base {
            return Err(Error::structural(format!(
                "tester {} is not over {}",
                t.name(),
                base.name()
            )));
        }
        // (label, legs the mediator must reproduce)
        let mut cones: Vec<(String, Vec<XModMorphism>)> = Vec::new();
        let candidates: Vec<XModMorphism>;
        let mut legs_of: Vec<&XModMorphism> = Vec::new();
        match problem {
            UniversalProblem::Terminal(c) => {
                cones.push((t.name().to_string(), Vec::new()));
                candidates = slice_homs(t, c, max_size)?;
            }
            UniversalProblem::Initial(c) => {
                cones.push((t.name().to_string(), Vec::new()));
                candidates = slice_homs(c, t, max_size)?;
            }
            UniversalProblem::Product(cone) => {
                let us = slice_homs(t, &cone.left.dst, max_size)?;
                let vs = slice_homs(t, &cone.right.dst, max_size)?;
                for (i, u) in us.iter().enumerate() {
                    for (j, v) in vs.iter().enumerate() {
                        cones.push((format!("{}#{i}.{j}", t.name()), vec![u.clone(), v.clone()]));
                    }
                }
                legs_of = vec![&cone.left, &cone.right];
                candidates = slice_homs(t, &cone.apex, max_size)?;
            }
            UniversalProblem::Pullback { cone, f, g } => {
                let us = slice_homs(t, &f.src, max_size)?;
                let vs = slice_homs(t, &g.src, max_size)?;
                for (i, u) in us.iter().enumerate() {
                    for (j, v) in vs.iter().enumerate() {
                        let fu = f.after(u)?;
                        let gv = g.after(v)?;
                        if fu.same_maps(&gv) {
                            cones.push((format!("{}#{i}.{j}", t.name()), vec![u.clone(), v.clone()]));
                        }
                    }
                }
                legs_of = vec![&cone.left, &cone.right];
                candidates = slice_homs(t, &cone.apex, max_size)?;
            }
            UniversalProblem::Equalizer { eq, f, g } => {
                for (i, u) in enumerate_xmod_morphisms(t, &f.src, None, max_size)?
                    .into_iter()
                    .enumerate()
                {
                    if f.after(&u)?.same_maps(&g.after(&u)?) {
                        cones.push((format!("{}#{i}", t.name()), vec![u]));
                    }
                }
                legs_of = vec![&eq.inclusion];
                candidates = enumerate_xmod_morphisms(t, &eq.apex, None, max_size)?;
            }
        }
        for (label, legs) in cones {
            let n = candidates
                .iter()
                .filter(|m| {
                    legs_of
                        .iter()
                        .zip(&legs)
                        .all(|(leg, target)| composite_is(leg, m, target))
                })
                .count();
            let law = format!("mediator[{label}]");
            let outcome = if n == 1 {
                Ok(())
            } else {
                Err(Violation::new(law.clone(), format!("count={n}")))
            };
            report.record(law, outcome);
            counts.push((label, n));
        }
    }
    Ok(ConeCheck { report, counts })
}

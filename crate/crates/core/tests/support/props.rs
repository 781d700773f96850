//! Single-case checks of ranking invariants, shared by the property tests
//! and the acceptance runner. Each returns a description of the violation.

#![allow(dead_code)]

use msa_decide_core::engine::Requirements;
use msa_decide_core::knowledge::Effect;
use msa_decide_core::{recommend, DecisionModel, RecommendationReport};

pub const SCALES: [f64; 3] = [0.5, 2.0, 10.0];

pub fn ids(report: &RecommendationReport) -> Vec<&str> {
    report
        .entries
        .iter()
        .map(|e| e.pattern_id.as_str())
        .collect()
}

pub fn scaled(req: &Requirements, c: f64) -> Requirements {
    let mut out = req.clone();
    for w in out.weights.values_mut() {
        *w *= c;
    }
    out
}

/// Ranking unchanged and scores multiplied by `c`.
pub fn check_scale(model: &DecisionModel, req: &Requirements, c: f64) -> Result<(), String> {
    let base = recommend(model, req).map_err(|e| e.to_string())?;
    let up = recommend(model, &scaled(req, c)).map_err(|e| e.to_string())?;
    if ids(&base) != ids(&up) {
        return Err(format!(
            "x{c}: ranking {:?} became {:?}",
            ids(&base),
            ids(&up)
        ));
    }
    for (a, b) in base.entries.iter().zip(&up.entries) {
        if (a.score * c - b.score).abs() > 1e-9 * (1.0 + b.score.abs()) {
            return Err(format!(
                "x{c}: {} scored {} then {}",
                a.pattern_id, a.score, b.score
            ));
        }
    }
    Ok(())
}

/// Raising the weight of a QA on which an eligible pattern has an
/// unconditional positive impact never lowers its score, and never lets a
/// pattern without a positive impact on that QA overtake it.
pub fn check_monotone(model: &DecisionModel, req: &Requirements, bump: f64) -> Result<(), String> {
    let base = recommend(model, req).map_err(|e| e.to_string())?;
    for entry in &base.entries {
        let p = model.pattern(&entry.pattern_id).unwrap();
        for i in p
            .impacts
            .iter()
            .filter(|i| i.effect == Effect::Positive && i.condition.is_none())
        {
            let raised = req.clone().with_weight(&i.qa, req.weight(&i.qa) + bump);
            let after = recommend(model, &raised).map_err(|e| e.to_string())?;
            let moved = after
                .entry(&p.id)
                .ok_or_else(|| format!("{} left the ranking", p.id))?;
            if moved.score < entry.score {
                return Err(format!(
                    "{} score fell from {} to {} raising {}",
                    p.id, entry.score, moved.score, i.qa
                ));
            }
            for other in base.entries.iter().filter(|o| o.rank > entry.rank) {
                let o = model.pattern(&other.pattern_id).unwrap();
                if o.impacts
                    .iter()
                    .any(|j| j.qa == i.qa && j.effect == Effect::Positive)
                {
                    continue;
                }
                if after.entry(&o.id).unwrap().rank < moved.rank {
                    return Err(format!(
                        "{} fell behind {} after raising {}",
                        p.id, o.id, i.qa
                    ));
                }
            }
        }
    }
    Ok(())
}

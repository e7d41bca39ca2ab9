use std::io::Write as _;

use anyhow::{bail, Result};
use clap::ValueEnum;
use fliplab::complexes::{
    arc_complex, ball_common_arcs, check_duality, dual_subcomplex, full_flip_graph, two_ball_check,
    unflippable_witness, TwoBallOutcome,
};
use fliplab::rigidity::{
    count_tree_extensions, enumerate_injective_simplicial_maps, extensions, farey_linear_map, induce_flip_map,
    rigidity_report, round_trip, DomainKind,
};
use fliplab::{Arc, FlipSubgraph, Model, Triangulation};
use serde_json::{json, Value};

use crate::Target;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Duality,
    TwoBall,
    Pipeline,
    Rigidity,
    FareyTree,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Duality => "duality",
            Suite::TwoBall => "two-ball",
            Suite::Pipeline => "pipeline",
            Suite::Rigidity => "rigidity",
            Suite::FareyTree => "farey-tree",
        }
    }
}

/// Matrices of determinant ±1 used as arc maps on the torus.
const TORUS_MATRICES: [[[i64; 2]; 2]; 5] = [
    [[1, 0], [0, 1]],
    [[1, 1], [0, 1]],
    [[1, 0], [1, 1]],
    [[0, 1], [1, 0]],
    [[2, 1], [1, 1]],
];

#[derive(Default)]
struct Tally {
    passed: usize,
    failed: usize,
    skipped: usize,
}

impl Tally {
    fn emit(&mut self, mut line: Value, pass: Option<bool>) {
        match pass {
            Some(true) => self.passed += 1,
            Some(false) => self.failed += 1,
            None => self.skipped += 1,
        }
        line["status"] = json!(match pass {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "skipped",
        });
        emit_line(&line);
    }
}

/// Print one JSON line; a closed pipe ends the process quietly.
pub fn emit_line(line: &Value) {
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").and_then(|()| out.flush()).is_err() {
        std::process::exit(0);
    }
}

fn arcs(items: impl IntoIterator<Item = Arc>) -> Value {
    json!(items.into_iter().map(|a| a.to_string()).collect::<Vec<_>>())
}

fn require_finite(model: &Model, suite: Suite) -> Result<()> {
    if !model.is_finite() {
        bail!("the {} suite needs a finite model, got {model}", suite.name());
    }
    Ok(())
}

pub fn run(suite: Suite, target: &Target, seed: u64) -> Result<bool> {
    let mut tally = Tally::default();
    match suite {
        Suite::Duality => duality(target, &mut tally)?,
        Suite::TwoBall => two_ball(target, seed, &mut tally)?,
        Suite::Pipeline => pipeline(target, &mut tally)?,
        Suite::Rigidity => rigidity(target, &mut tally)?,
        Suite::FareyTree => farey_tree(target, &mut tally)?,
    }
    let pass = tally.failed == 0;
    emit_line(&json!({
            "summary": suite.name(),
            "model": target.model.to_string(),
            "passed": tally.passed,
            "failed": tally.failed,
            "skipped": tally.skipped,
            "pass": pass,
    }));
    Ok(pass)
}

fn duality(target: &Target, tally: &mut Tally) -> Result<()> {
    let x_f = target.flip_graph(2)?;
    let report = check_duality(&x_f);
    let mut line = report.to_json();
    line["check"] = json!("duality");
    line["vertices"] = json!(x_f.vertex_count());
    line["edges"] = json!(x_f.edge_count());
    tally.emit(line, Some(report.passed()));
    Ok(())
}

fn two_ball(target: &Target, seed: u64, tally: &mut Tally) -> Result<()> {
    let model = &target.model;
    let x_f = target.flip_graph(if model.is_finite() { 2 } else { 6 })?;
    let centers: Vec<Triangulation> = if target.full {
        x_f.vertices().to_vec()
    } else {
        let r = x_f.radius().unwrap_or(0);
        let reach = r.saturating_sub(2);
        if r < 2 {
            bail!("the two-ball suite needs --radius 2 or more");
        }
        if model.is_finite() {
            x_f.vertices()
                .iter()
                .enumerate()
                .filter(|(v, _)| x_f.distance(*v).is_some_and(|d| d <= reach))
                .map(|(_, t)| t.clone())
                .collect()
        } else {
            x_f.sample_within(reach, 20, seed)
        }
    };
    for c in &centers {
        let outcome = two_ball_check(&x_f, c)?;
        let (pass, common) = match &outcome {
            TwoBallOutcome::Pass => (Some(true), Vec::new()),
            TwoBallOutcome::Fail(set) => (Some(false), set.iter().copied().collect()),
            TwoBallOutcome::Skipped => (None, Vec::new()),
        };
        tally.emit(
            json!({ "check": "two-ball", "center": c.to_string(), "common": arcs(common) }),
            pass,
        );
        unflippable_lines(&x_f, c, tally)?;
    }
    Ok(())
}

/// For each unflippable arc of `c`: it survives the 1-ball, vanishes from
/// the 2-ball, and the two-flip witness removes it.
fn unflippable_lines(x_f: &FlipSubgraph, c: &Triangulation, tally: &mut Tally) -> Result<()> {
    let model = x_f.model();
    for &a in c.arcs() {
        if model.flippable(c, a)? {
            continue;
        }
        let r1 = ball_common_arcs(x_f, c, 1)?;
        let r2 = ball_common_arcs(x_f, c, 2)?;
        let mut line = json!({
            "check": "unflippable",
            "center": c.to_string(),
            "arc": a.to_string(),
            "common_r1": arcs(r1.iter().copied()),
            "common_r2": arcs(r2.iter().copied()),
        });
        let pass = match unflippable_witness(model, c, a) {
            Ok(w) => {
                line["witness"] = json!({
                    "outer": w.outer.to_string(),
                    "inner": w.inner.to_string(),
                    "middle": w.middle.to_string(),
                    "end": w.end.to_string(),
                });
                r1.contains(&a) && r2.is_empty()
            }
            Err(e) => {
                line["error"] = json!(e.to_string());
                false
            }
        };
        tally.emit(line, Some(pass));
    }
    Ok(())
}

fn pipeline(target: &Target, tally: &mut Tally) -> Result<()> {
    let model = &target.model;
    let x_f = target.flip_graph(2)?;
    let x_a = dual_subcomplex(&x_f)?;
    // Images may leave a ball, so morphisms are checked against the whole
    // flip graph. On the torus induce_flip_map's own edge check is the test.
    let whole = if model.is_finite() {
        Some(full_flip_graph(model)?.as_complex())
    } else {
        None
    };
    let graph = x_f.as_complex();
    let maps = if model.is_finite() {
        enumerate_injective_simplicial_maps(&x_a, &arc_complex(model)?, DomainKind::ArcComplex)
    } else {
        let domain: Vec<Arc> = x_a.vertices().iter().copied().collect();
        TORUS_MATRICES
            .iter()
            .map(|&m| farey_linear_map(m, &domain))
            .collect::<Result<_, _>>()?
    };
    tally.emit(
        json!({ "check": "lambda-count", "vertices": x_f.vertex_count(), "arcs": x_a.vertices().len(), "lambda_count": maps.len() }),
        Some(!maps.is_empty()),
    );
    for lambda_a in &maps {
        let mut line = json!({ "check": "round-trip", "lambda": lambda_a.to_json() });
        let pass = match round_trip(lambda_a, &x_f, model) {
            Ok(trip) => {
                let morphism = match &whole {
                    Some(w) => fliplab::rigidity::is_injective_simplicial(&trip.lambda_f, &graph, w)?,
                    None => true,
                };
                line["graph_morphism"] = json!(morphism);
                line["agrees"] = json!(trip.agrees);
                morphism && trip.agrees
            }
            Err(e) => {
                line["error"] = json!(e.to_string());
                false
            }
        };
        tally.emit(line, Some(pass));
    }
    Ok(())
}

fn rigidity(target: &Target, tally: &mut Tally) -> Result<()> {
    let model = &target.model;
    require_finite(model, Suite::Rigidity)?;
    let x_f = target.flip_graph(1)?;
    let x_a = dual_subcomplex(&x_f)?;
    let full = full_flip_graph(model)?;
    let whole_a = arc_complex(model)?;
    let whole_f = full.as_complex();
    let report = rigidity_report(&x_a, &whole_a, &whole_a, DomainKind::ArcComplex, true)?;
    let mut line = report.to_json();
    line["check"] = json!("rigidity");
    line["arcs"] = json!(x_a.vertices().len());
    tally.emit(
        line,
        Some(report.unique() + report.none() + report.multiple() == report.lambda_count()),
    );
    // Extensions on the arc side and on the flip side must correspond.
    for r in &report.records {
        let lambda_f = induce_flip_map(&r.lambda, &x_f, model)?;
        let lifted = extensions(&lambda_f, &x_f.as_complex(), &whole_f, &whole_f)?;
        let mut induced = r
            .extensions
            .as_ref()
            .expect("extensions kept")
            .iter()
            .map(|phi| induce_flip_map(phi, &full, model))
            .collect::<Result<Vec<_>, _>>()?;
        induced.sort();
        tally.emit(
            json!({
                "check": "extension-transfer",
                "lambda": r.lambda.to_json(),
                "arc_extensions": r.extension_count,
                "flip_extensions": lifted.len(),
            }),
            Some(lifted == induced),
        );
    }
    Ok(())
}

fn farey_tree(target: &Target, tally: &mut Tally) -> Result<()> {
    let r_max = target.radius.unwrap_or(2).max(1);
    for r in 1..=r_max {
        let count = count_tree_extensions(r)?;
        tally.emit(
            json!({
                "check": "farey-tree",
                "radius": r,
                "shell_vertices": count.shell_vertices,
                "lambda_count": count.lambda_count,
                "extensions": count.extension_count,
                "expected": count.expected.to_string(),
                "non_rigid": count.extension_count > 1,
            }),
            Some(count.matches()),
        );
    }
    Ok(())
}

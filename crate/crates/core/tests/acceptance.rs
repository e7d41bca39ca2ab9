//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use fliplab::complexes::{
    arc_complex, ball_common_arcs, check_duality, dual_subcomplex, flip_ball, full_flip_graph, two_ball_check,
    unflippable_witness, TwoBallOutcome,
};
use fliplab::rigidity::{
    count_tree_extensions, enumerate_injective_simplicial_maps, is_injective_simplicial, rigidity_report, round_trip,
    DomainKind,
};
use fliplab::{Arc, FlipSubgraph, Model};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Triangulations of a convex n-gon by the recursion on the triangle over
/// one fixed side.
fn catalan_oracle(n: usize) -> usize {
    let mut t = vec![0usize; n + 1];
    t[2] = 1;
    for m in 3..=n {
        t[m] = (2..m).map(|k| t[k] * t[m - k + 1]).sum();
    }
    t[n]
}

fn finite_models() -> Vec<Model> {
    let mut models: Vec<Model> = (5..=7).map(|n| Model::polygon(n).unwrap()).collect();
    models.extend((3..=4).map(|n| Model::punctured_polygon(n).unwrap()));
    models
}

fn torus_ball(r: usize) -> FlipSubgraph {
    let m = Model::once_punctured_torus();
    flip_ball(&m, &m.base_triangulation(), r).unwrap()
}

fn catalan_counts() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for n in 4..=8 {
        let got = full_flip_graph(&Model::polygon(n as u32).unwrap())
            .map_err(|e| e.to_string())?
            .vertex_count();
        ensure(got == catalan_oracle(n), || {
            format!("polygon:{n} has {got}, oracle says {}", catalan_oracle(n))
        })?;
        counts.push(got);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("counts {counts:?} in {elapsed:.2?}"))
}

fn duality() -> Outcome {
    let mut graphs: Vec<FlipSubgraph> = finite_models().iter().map(|m| full_flip_graph(m).unwrap()).collect();
    graphs.extend((0..=5).map(torus_ball));
    let mut pairs = 0;
    for g in &graphs {
        let report = check_duality(g);
        ensure(report.passed(), || {
            format!("{} violations on {}", report.violations.len(), g.model())
        })?;
        pairs += report.pairs_checked;
    }
    Ok(format!("{} graphs, {pairs} pairs, no violations", graphs.len()))
}

fn two_ball() -> Outcome {
    let mut checked = 0;
    for m in finite_models() {
        let g = full_flip_graph(&m).unwrap();
        for c in g.vertices() {
            match two_ball_check(&g, c).map_err(|e| e.to_string())? {
                TwoBallOutcome::Pass => checked += 1,
                TwoBallOutcome::Skipped => {}
                TwoBallOutcome::Fail(common) => return Err(format!("{m}: {c} keeps {common:?}")),
            }
        }
    }
    let ball = torus_ball(6);
    let centers = ball.sample_within(4, 20, 7);
    ensure(centers.len() >= 20, || format!("only {} Farey centres", centers.len()))?;
    for c in &centers {
        ensure(two_ball_check(&ball, c) == Ok(TwoBallOutcome::Pass), || {
            format!("Farey centre {c}")
        })?;
    }

    let m = Model::punctured_polygon(3).unwrap();
    let g = full_flip_graph(&m).unwrap();
    let t = m.base_triangulation();
    let (loop0, radial0) = (Arc::Loop(0), Arc::Radial(0));
    let r1 = ball_common_arcs(&g, &t, 1).map_err(|e| e.to_string())?;
    let r2 = ball_common_arcs(&g, &t, 2).map_err(|e| e.to_string())?;
    ensure(r1 == BTreeSet::from([radial0]), || format!("1-ball keeps {r1:?}"))?;
    ensure(r2.is_empty(), || format!("2-ball keeps {r2:?}"))?;
    let w = unflippable_witness(&m, &t, radial0).map_err(|e| e.to_string())?;
    let (middle, _) = m.flip(&t, loop0).map_err(|e| e.to_string())?;
    let (end, _) = m.flip(&middle, radial0).map_err(|e| e.to_string())?;
    ensure(
        w.outer == loop0 && w.inner == radial0 && w.middle == middle && w.end == end && !end.contains(&radial0),
        || format!("unexpected witness {w:?}"),
    )?;
    Ok(format!(
        "{checked} finite centres, {} Farey centres, R(0) witness via {} then {}",
        centers.len(),
        w.outer,
        w.inner
    ))
}

fn pipeline() -> Outcome {
    let mut summary = Vec::new();
    for m in [
        Model::polygon(5).unwrap(),
        Model::polygon(6).unwrap(),
        Model::punctured_polygon(3).unwrap(),
    ] {
        let x_f = full_flip_graph(&m).unwrap();
        let x_a = dual_subcomplex(&x_f).unwrap();
        let graph = x_f.as_complex();
        let maps = enumerate_injective_simplicial_maps(&x_a, &arc_complex(&m).unwrap(), DomainKind::ArcComplex);
        if m == Model::polygon(5).unwrap() {
            ensure(maps.len() == 10, || format!("pentagon has {} maps", maps.len()))?;
        }
        for lambda in &maps {
            let trip = round_trip(lambda, &x_f, &m).map_err(|e| format!("{m}: {e}"))?;
            let morphism = is_injective_simplicial(&trip.lambda_f, &graph, &graph).map_err(|e| e.to_string())?;
            ensure(morphism && trip.agrees, || {
                format!("{m}: round trip fails for {lambda}")
            })?;
        }
        summary.push(format!("{m}: {}", maps.len()));
    }
    Ok(format!("round trips {}", summary.join(", ")))
}

fn finite_rigidity() -> Outcome {
    let start = Instant::now();
    let m = Model::polygon(5).unwrap();
    let a = arc_complex(&m).unwrap();
    let chord = |i, j| Arc::Chord { i, j };
    let path = a.induced(&BTreeSet::from([chord(0, 3), chord(0, 2), chord(2, 4)]));
    let report = rigidity_report(&path, &a, &a, DomainKind::ArcComplex, false).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        report.rigid() && report.lambda_count() == 10 && report.unique() == 10,
        || format!("report {}", report.to_json()),
    )?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("RIGID, 10 λ each with 1 extension, {elapsed:.2?}"))
}

fn farey_non_rigidity() -> Outcome {
    let mut found = Vec::new();
    for r in [1usize, 2] {
        let count = count_tree_extensions(r).map_err(|e| e.to_string())?;
        let expected = 1usize << (3 * (1 << (r - 1)));
        ensure(count.extension_count == expected, || {
            format!("r={r}: {} extensions, expected {expected}", count.extension_count)
        })?;
        found.push(count.extension_count);
    }
    Ok(format!("identity extensions {found:?}"))
}

fn flips_and_bfs() -> Outcome {
    let mut graphs: Vec<FlipSubgraph> = finite_models().iter().map(|m| full_flip_graph(m).unwrap()).collect();
    graphs.push(torus_ball(5));
    let mut flips = 0;
    for g in &graphs {
        let m = g.model();
        for t in g.vertices() {
            for &a in t.arcs() {
                if !m.flippable(t, a).unwrap() {
                    continue;
                }
                let (u, b) = m.flip(t, a).unwrap();
                let (back, c) = m.flip(&u, b).unwrap();
                ensure(&back == t && c == a, || {
                    format!("{m}: flip of {a} in {t} does not invert")
                })?;
                flips += 1;
            }
        }
    }
    for m in finite_models() {
        let full = full_flip_graph(&m).unwrap();
        let diameter = (0..full.vertex_count())
            .map(|v| full.distances_from(v).into_iter().flatten().max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        for r in [diameter, diameter + 1] {
            let ball = flip_ball(&m, &m.base_triangulation(), r).unwrap();
            ensure(ball == full, || {
                format!("{m}: ball of radius {r} differs from full graph")
            })?;
        }
    }
    Ok(format!("{flips} flips inverted, BFS matches exhaustive on 5 models"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("Catalan counts", catalan_counts),
        ("Duality", duality),
        ("2-ball lemma", two_ball),
        ("Pipeline round trip", pipeline),
        ("Finite rigidity exhibit", finite_rigidity),
        ("Farey non-rigidity", farey_non_rigidity),
        ("Flip involution and BFS cross-check", flips_and_bfs),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL {name}: {detail}", k + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}

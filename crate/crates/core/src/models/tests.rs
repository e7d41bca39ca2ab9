use std::collections::{HashSet, VecDeque};

use itertools::Itertools;

use super::*;

fn chord(i: u32, j: u32) -> Arc {
    Arc::Chord { i, j }
}

fn slope(p: i64, q: i64) -> Arc {
    Arc::slope(p, q).unwrap()
}

fn pc(i: u32, j: u32, side: u8) -> Arc {
    Arc::PChord {
        i,
        j,
        side: PunctureSide::from_index(side).unwrap(),
    }
}

/// Triangulations of a convex polygon with `n` vertices, counted by the
/// recursion on the triangle standing on edge (0, n-1).
fn polygon_count_oracle(n: usize) -> u64 {
    let mut t = vec![0u64; n.max(3) + 1];
    t[2] = 1;
    for m in 3..=n {
        t[m] = (2..m).map(|k| t[k] * t[m - k + 1]).sum();
    }
    t[n]
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Ideal triangulations of a once-punctured n-gon. Tagged triangulations
/// number (3n-2)/n · C(2n-2, n-1); those with a plain/notched pair at the
/// puncture correspond to a loop+radial pair and number n·Catalan(n-1);
/// the remaining tagged ones split evenly between all-plain and
/// all-notched, and only the all-plain half are ideal.
fn punctured_count_oracle(n: u64) -> u64 {
    let tagged = (3 * n - 2) * binomial(2 * n - 2, n - 1) / n;
    let paired = n * polygon_count_oracle((n + 1) as usize);
    (tagged + paired) / 2
}

fn finite_models() -> Vec<Model> {
    let mut models: Vec<Model> = (4..=8).map(|n| Model::polygon(n).unwrap()).collect();
    models.extend((3..=5).map(|n| Model::punctured_polygon(n).unwrap()));
    models
}

fn farey_ball(radius: usize) -> Vec<Triangulation> {
    let torus = Model::once_punctured_torus();
    let base = torus.base_triangulation();
    let mut seen: HashSet<Triangulation> = HashSet::from([base.clone()]);
    let mut queue = VecDeque::from([(base, 0)]);
    let mut out = Vec::new();
    while let Some((t, d)) = queue.pop_front() {
        if d < radius {
            for (_, next, _) in torus.flip_neighbors(&t).unwrap() {
                if seen.insert(next.clone()) {
                    queue.push_back((next, d + 1));
                }
            }
        }
        out.push(t);
    }
    out
}

#[test]
fn oracles_agree_with_known_values() {
    let catalan: Vec<u64> = (4..=8).map(polygon_count_oracle).collect();
    assert_eq!(catalan, vec![2, 5, 14, 42, 132]);
    assert_eq!(punctured_count_oracle(3), 10);
    assert_eq!(punctured_count_oracle(4), 35);
}

#[test]
fn model_signatures() {
    assert_eq!(Model::polygon(5).unwrap().surface().to_string(), "S_{0,0,(5)}");
    assert_eq!(
        Model::punctured_polygon(3).unwrap().surface().to_string(),
        "S_{0,1,(3)}"
    );
    assert_eq!(Model::once_punctured_torus().surface().to_string(), "S_{1,1}");
    assert_eq!(Model::polygon(4).unwrap().complexity(), 1);
    assert!(Model::polygon(3).is_err());
    assert!(Model::punctured_polygon(2).is_err());
    for spec in ["polygon:6", "ppolygon:4", "torus"] {
        assert_eq!(spec.parse::<Model>().unwrap().to_string(), spec);
    }
    assert!("hexagon:6".parse::<Model>().is_err());
    assert!("polygon:x".parse::<Model>().is_err());
}

#[test]
fn all_arcs_examples() {
    let pentagon = Model::polygon(5).unwrap();
    assert_eq!(
        pentagon.all_arcs().unwrap(),
        vec![chord(0, 2), chord(0, 3), chord(1, 3), chord(1, 4), chord(2, 4)]
    );
    assert_eq!(Model::polygon(4).unwrap().all_arcs().unwrap().len(), 2);

    let p3 = Model::punctured_polygon(3).unwrap().all_arcs().unwrap();
    assert_eq!(p3.len(), 9);
    let radial = p3.iter().filter(|a| matches!(a, Arc::Radial(_))).count();
    let loops = p3.iter().filter(|a| matches!(a, Arc::Loop(_))).count();
    assert_eq!((radial, loops), (3, 3));
    assert!(p3.contains(&pc(0, 1, 0)));
    assert!(p3.contains(&pc(1, 2, 0)));
    assert!(p3.contains(&pc(0, 2, 1)));

    assert!(matches!(
        Model::once_punctured_torus().all_arcs(),
        Err(ModelError::Unbounded(_))
    ));
}

#[test]
fn punctured_polygon_has_n_squared_arcs() {
    for n in 3..=7 {
        let m = Model::punctured_polygon(n).unwrap();
        assert_eq!(m.all_arcs().unwrap().len(), (n * n) as usize);
    }
}

#[test]
fn inessential_arcs_are_rejected() {
    let p4 = Model::punctured_polygon(4).unwrap();
    // Puncture on the far side of an adjacent pair: boundary-parallel.
    assert!(!p4.contains(pc(0, 1, 1)));
    assert!(p4.contains(pc(0, 1, 0)));
    let pentagon = Model::polygon(5).unwrap();
    assert!(!pentagon.contains(chord(0, 4)));
    assert!(!pentagon.contains(chord(1, 2)));
    assert!(!pentagon.contains(Arc::Radial(0)));
    assert!(!Model::once_punctured_torus().contains(Arc::Slope { p: 2, q: 4 }));
}

#[test]
fn disjoint_examples() {
    let torus = Model::once_punctured_torus();
    assert!(torus.disjoint(slope(0, 1), slope(1, 0)).unwrap());
    assert!(!torus.disjoint(slope(1, 0), slope(1, 2)).unwrap());
    let pentagon = Model::polygon(5).unwrap();
    assert!(!pentagon.disjoint(chord(0, 2), chord(1, 3)).unwrap());
    assert!(pentagon.disjoint(chord(0, 2), chord(0, 3)).unwrap());
    assert!(matches!(
        pentagon.disjoint(chord(0, 2), slope(0, 1)),
        Err(ModelError::ModelMismatch { .. })
    ));
}

#[test]
fn disjointness_is_symmetric_and_reflexive() {
    for m in finite_models() {
        let arcs = m.all_arcs().unwrap();
        for &a in &arcs {
            assert!(m.disjoint(a, a).unwrap());
            for &b in &arcs {
                assert_eq!(m.disjoint(a, b).unwrap(), m.disjoint(b, a).unwrap(), "{m}: {a} {b}");
            }
        }
    }
}

#[test]
fn polygon_disjointness_matches_crossing_oracle() {
    // Chords (a,b), (c,d) cross iff exactly one of c, d lies strictly
    // between a and b.
    for n in 4..=9 {
        let m = Model::polygon(n).unwrap();
        for (&x, &y) in m.all_arcs().unwrap().iter().tuple_combinations() {
            let (Arc::Chord { i: a, j: b }, Arc::Chord { i: c, j: d }) = (x, y) else {
                unreachable!()
            };
            let inside = |v: u32| a < v && v < b;
            let shares = a == c || a == d || b == c || b == d;
            let crosses = !shares && (inside(c) != inside(d));
            assert_eq!(m.disjoint(x, y).unwrap(), !crosses);
        }
    }
}

#[test]
fn is_triangulation_examples() {
    let pentagon = Model::polygon(5).unwrap();
    assert!(pentagon.is_triangulation(&[chord(0, 2), chord(0, 3)]));
    assert!(!pentagon.is_triangulation(&[chord(0, 2)]));
    assert!(!pentagon.is_triangulation(&[chord(0, 2), chord(1, 3)]));
    let torus = Model::once_punctured_torus();
    assert!(torus.is_triangulation(&[slope(0, 1), slope(1, 0), slope(1, 1)]));
    assert!(!torus.is_triangulation(&[slope(0, 1), slope(1, 0)]));
    assert!(!torus.is_triangulation(&[slope(0, 1), slope(1, 0), slope(1, 2)]));
    assert!(!torus.is_triangulation(&[slope(1, 1), slope(1, 1), slope(0, 1)]));
}

#[test]
fn triangulation_counts_match_oracles() {
    for n in 4..=8u32 {
        let m = Model::polygon(n).unwrap();
        assert_eq!(
            m.all_triangulations().unwrap().len() as u64,
            polygon_count_oracle(n as usize)
        );
    }
    for n in 3..=5u32 {
        let m = Model::punctured_polygon(n).unwrap();
        assert_eq!(
            m.all_triangulations().unwrap().len() as u64,
            punctured_count_oracle(u64::from(n))
        );
    }
}

#[test]
fn maximal_sets_have_complexity_many_arcs() {
    // Both directions: every maximal disjoint set has d arcs, and every
    // disjoint set of d arcs is maximal.
    for m in finite_models() {
        let d = m.complexity();
        let maximal: HashSet<Vec<Arc>> = m.maximal_disjoint_sets().unwrap().into_iter().collect();
        assert!(maximal.iter().all(|s| s.len() == d), "{m}");
        if m.all_arcs().unwrap().len() > 20 {
            continue;
        }
        let disjoint_d_sets: HashSet<Vec<Arc>> = m
            .all_arcs()
            .unwrap()
            .into_iter()
            .combinations(d)
            .filter(|c| c.iter().tuple_combinations().all(|(&a, &b)| m.disjoint(a, b).unwrap()))
            .collect();
        assert_eq!(disjoint_d_sets, maximal, "{m}");
        for set in &maximal {
            assert!(m.is_triangulation(set));
        }
    }
}

#[test]
fn faces_examples() {
    let pentagon = Model::polygon(5).unwrap();
    let fan = pentagon.triangulation([chord(0, 2), chord(0, 3)]).unwrap();
    let faces = pentagon.faces(&fan).unwrap();
    let expected = vec![
        Face::new([Side::Boundary(0), Side::Boundary(1), Side::Arc(chord(0, 2))]),
        Face::new([Side::Arc(chord(0, 2)), Side::Boundary(2), Side::Arc(chord(0, 3))]),
        Face::new([Side::Arc(chord(0, 3)), Side::Boundary(3), Side::Boundary(4)]),
    ];
    let mut expected = expected;
    expected.sort();
    assert_eq!(faces, expected);
    assert!(faces.iter().all(|f| !f.self_folded()));

    let p3 = Model::punctured_polygon(3).unwrap();
    for t in p3.all_triangulations().unwrap() {
        if t.contains(&Arc::Loop(0)) && t.contains(&Arc::Radial(0)) {
            let folded: Vec<Face> = p3.faces(&t).unwrap().into_iter().filter(Face::self_folded).collect();
            assert_eq!(
                folded,
                vec![Face::new([
                    Side::Arc(Arc::Loop(0)),
                    Side::Arc(Arc::Radial(0)),
                    Side::Arc(Arc::Radial(0))
                ])]
            );
            assert_eq!(folded[0].inner_arc(), Some(Arc::Radial(0)));
            assert_eq!(folded[0].outer_side(), Some(Side::Arc(Arc::Loop(0))));
        }
    }

    let torus = Model::once_punctured_torus();
    let faces = torus.faces(&torus.base_triangulation()).unwrap();
    assert_eq!(faces.len(), 2);
    for f in &faces {
        assert!(!f.self_folded());
        for a in torus.base_triangulation().arcs() {
            assert_eq!(f.slots(*a), 1);
        }
    }
}

#[test]
fn face_count_identity() {
    let check = |m: &Model, t: &Triangulation| {
        let faces = m.faces(t).unwrap();
        assert_eq!(3 * faces.len(), 2 * m.complexity() + m.boundary_segments(), "{m} {t}");
        for &a in t.arcs() {
            let slots: usize = faces.iter().map(|f| f.slots(a)).sum();
            assert_eq!(slots, 2, "{m} {t} {a}");
        }
        let boundary: usize = faces
            .iter()
            .flat_map(|f| f.sides())
            .filter(|s| matches!(s, Side::Boundary(_)))
            .count();
        assert_eq!(boundary, m.boundary_segments());
    };
    for m in finite_models() {
        for t in m.all_triangulations().unwrap() {
            check(&m, &t);
        }
    }
    let torus = Model::once_punctured_torus();
    for t in farey_ball(6) {
        check(&torus, &t);
    }
}

#[test]
fn flippable_examples_and_characterisation() {
    for n in 4..=7 {
        let m = Model::polygon(n).unwrap();
        for t in m.all_triangulations().unwrap() {
            for &a in t.arcs() {
                assert!(m.flippable(&t, a).unwrap());
            }
        }
    }
    for m in (3..=5).map(|n| Model::punctured_polygon(n).unwrap()) {
        for t in m.all_triangulations().unwrap() {
            for &a in t.arcs() {
                let folded_pattern = matches!(a, Arc::Radial(i) if t.contains(&Arc::Loop(i)));
                assert_eq!(m.flippable(&t, a).unwrap(), !folded_pattern, "{m} {t} {a}");
            }
        }
    }
    let p3 = Model::punctured_polygon(3).unwrap();
    let base = p3.base_triangulation();
    assert!(!p3.flippable(&base, Arc::Radial(0)).unwrap());
    assert_eq!(
        p3.flip(&base, Arc::Radial(0)),
        Err(ModelError::NotFlippable(Arc::Radial(0)))
    );
    assert_eq!(
        p3.flippable(&base, Arc::Radial(1)),
        Err(ModelError::ArcNotInTriangulation(Arc::Radial(1)))
    );

    let torus = Model::once_punctured_torus();
    for t in farey_ball(6) {
        for &a in t.arcs() {
            assert!(torus.flippable(&t, a).unwrap());
        }
    }
}

#[test]
fn flip_examples() {
    let pentagon = Model::polygon(5).unwrap();
    let fan = pentagon.triangulation([chord(0, 2), chord(0, 3)]).unwrap();
    let (next, added) = pentagon.flip(&fan, chord(0, 2)).unwrap();
    assert_eq!(added, chord(1, 3));
    assert_eq!(next, pentagon.triangulation([chord(1, 3), chord(0, 3)]).unwrap());

    let torus = Model::once_punctured_torus();
    let base = torus.base_triangulation();
    let (next, added) = torus.flip(&base, slope(1, 1)).unwrap();
    assert_eq!(added, slope(-1, 1));
    assert_eq!(
        next,
        torus.triangulation([slope(0, 1), slope(1, 0), slope(-1, 1)]).unwrap()
    );
    let (back, restored) = torus.flip(&next, added).unwrap();
    assert_eq!((back, restored), (base, slope(1, 1)));
}

#[test]
fn flips_are_involutions_and_stay_triangulations() {
    let mut cases: Vec<(Model, Vec<Triangulation>)> = finite_models()
        .into_iter()
        .map(|m| {
            let ts = m.all_triangulations().unwrap();
            (m, ts)
        })
        .collect();
    cases.push((Model::once_punctured_torus(), farey_ball(5)));
    for (m, ts) in cases {
        for t in ts {
            for (removed, next, added) in m.flip_neighbors(&t).unwrap() {
                assert_ne!(removed, added);
                assert!(m.is_triangulation(next.arcs()), "{m} {next}");
                assert_eq!(next.difference(&t), vec![added]);
                assert_eq!(m.flip(&next, added).unwrap(), (t.clone(), removed));
            }
        }
    }
}

#[test]
fn completions_detect_flippability() {
    for m in finite_models() {
        for t in m.all_triangulations().unwrap() {
            for &a in t.arcs() {
                let rest: Vec<Arc> = t.arcs().iter().copied().filter(|&b| b != a).collect();
                let count = m.completions(&rest).unwrap().len();
                let expected = if m.flippable(&t, a).unwrap() { 2 } else { 1 };
                assert_eq!(count, expected, "{m} {t} {a}");
            }
        }
    }
}

#[test]
fn polygon_flip_is_the_other_quadrilateral_diagonal() {
    for n in 4..=7 {
        let m = Model::polygon(n).unwrap();
        for t in m.all_triangulations().unwrap() {
            for &a in t.arcs() {
                let Arc::Chord { i, j } = a else { unreachable!() };
                // Corners of the two triangles on `a`, minus its endpoints.
                let corners: Vec<u32> = m
                    .faces(&t)
                    .unwrap()
                    .iter()
                    .filter(|f| f.slots(a) == 1)
                    .flat_map(|f| {
                        f.sides().iter().flat_map(|s| match *s {
                            Side::Arc(Arc::Chord { i, j }) => vec![i, j],
                            Side::Boundary(k) => vec![k, (k + 1) % n],
                            _ => unreachable!(),
                        })
                    })
                    .filter(|&v| v != i && v != j)
                    .unique()
                    .collect();
                assert_eq!(corners.len(), 2);
                let expected = Arc::Chord {
                    i: corners[0],
                    j: corners[1],
                }
                .canonical()
                .unwrap();
                assert_eq!(m.flip(&t, a).unwrap().1, expected);
            }
        }
    }
}

#[test]
fn base_triangulations() {
    let hexagon = Model::polygon(6).unwrap();
    assert_eq!(
        hexagon.base_triangulation().arcs(),
        &[chord(0, 2), chord(0, 3), chord(0, 4)]
    );
    let torus = Model::once_punctured_torus();
    assert_eq!(
        torus.base_triangulation().arcs(),
        &[slope(0, 1), slope(1, 0), slope(1, 1)]
    );
    for m in finite_models().into_iter().chain([torus]) {
        let base = m.base_triangulation();
        assert!(m.is_triangulation(base.arcs()), "{m}");
        assert_eq!(base.len(), m.complexity());
    }
    let p3 = Model::punctured_polygon(3).unwrap().base_triangulation();
    assert!(p3.contains(&Arc::Loop(0)) && p3.contains(&Arc::Radial(0)));
}

#[test]
fn triangulation_text_round_trip() {
    for m in finite_models() {
        for t in m.all_triangulations().unwrap() {
            assert_eq!(m.parse_triangulation(&t.to_string()).unwrap(), t);
        }
    }
    let torus = Model::once_punctured_torus();
    assert_eq!(
        torus.parse_triangulation("0/1, 1/0, 1/1").unwrap(),
        torus.base_triangulation()
    );
    assert!(torus.parse_triangulation("0/1, 1/0").is_err());
}

#[test]
fn arcs_produced_are_canonical() {
    for m in finite_models() {
        for t in m.all_triangulations().unwrap() {
            for (_, next, added) in m.flip_neighbors(&t).unwrap() {
                assert!(added.is_canonical());
                assert!(next.arcs().iter().all(|a| a.is_canonical()));
            }
        }
    }
}

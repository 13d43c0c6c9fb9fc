mod support;

use std::collections::BTreeSet;

use coxorb::coxeter::spherical_poset;
use coxorb::decompose::{
    acyclicity_certificate, check_certificate, classify_special, decompose, CertNode,
    CertificateError, Decomposition, Geometry, Kind,
};
use coxorb::detect::{CircuitFlag, FeatureSet, Wall};
use coxorb::ell2::{chi_orb, chi_orb_inclusion_exclusion};
use coxorb::{LabeledComplex, SphereNerve};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use support::oracle::{
    brute_force_euclidean_triangles, brute_force_right_angled_4cycles, random_flag_sphere,
};

/// Pieces and walls by vertex name, so decompositions of relabeled inputs
/// can be compared directly.
type Named = (Vec<(Kind, Geometry, Vec<String>, usize)>, Vec<Vec<String>>);

fn by_name(d: &Decomposition) -> Named {
    let mut pieces: Vec<_> = d
        .pieces
        .iter()
        .map(|p| (p.kind, p.geometry, p.support.clone(), p.caps.len()))
        .collect();
    pieces.sort();
    let mut walls: Vec<_> = d.walls.iter().map(|w| w.vertices.clone()).collect();
    walls.sort();
    (pieces, walls)
}

fn shuffled(c: &LabeledComplex, rng: &mut StdRng) -> SphereNerve {
    let mut order: Vec<usize> = (0..c.vertex_count()).collect();
    order.shuffle(rng);
    SphereNerve::new(c.permuted(&order)).unwrap()
}

#[test]
fn corpus_examples() {
    type Expected<'a> = (&'a str, &'a [(Geometry, usize)], usize);
    let expect: &[Expected] = &[
        ("octahedron", &[(Geometry::E3, 1)], 0),
        ("icosahedron", &[(Geometry::H3, 1)], 0),
        ("tetra-affine", &[(Geometry::E3, 1)], 0),
        ("tetra-hyperbolic", &[(Geometry::H3, 1)], 0),
        ("susp-333-ra", &[(Geometry::E3, 1)], 0),
        ("susp-334-ra", &[(Geometry::H2xE, 1)], 0),
        (
            "two-hemispheres",
            &[(Geometry::H3, 2), (Geometry::E2xI, 1)],
            1,
        ),
        (
            "seifert-disk-completion",
            &[(Geometry::H3, 1), (Geometry::H2xE, 5)],
            5,
        ),
    ];
    for &(stem, geometries, walls) in expect {
        let d = decompose(&support::sphere(stem)).unwrap();
        for &(g, k) in geometries {
            assert_eq!(d.count(g), k, "{stem} {g}");
        }
        assert_eq!(
            d.pieces.len(),
            geometries.iter().map(|g| g.1).sum::<usize>(),
            "{stem}"
        );
        assert_eq!(d.walls.len(), walls, "{stem}");
    }
}

#[test]
fn special_cases_are_recognized() {
    for stem in [
        "octahedron",
        "tetra-affine",
        "tetra-hyperbolic",
        "susp-333-ra",
        "susp-236-ra",
        "susp-345-ra",
    ] {
        assert!(
            classify_special(&support::sphere(stem)).unwrap().is_some(),
            "{stem}"
        );
    }
    for stem in ["icosahedron", "two-hemispheres", "seifert-disk-completion"] {
        assert!(
            classify_special(&support::sphere(stem)).unwrap().is_none(),
            "{stem}"
        );
    }
}

#[test]
fn relabeling_invariance() {
    let mut rng = StdRng::seed_from_u64(17);
    for (stem, n) in support::spheres() {
        let base = decompose(&n).unwrap();
        for _ in 0..10 {
            let p = shuffled(&n, &mut rng);
            let d = decompose(&p).unwrap();
            assert_eq!(d.summary(), base.summary(), "{stem}");
            assert_eq!(by_name(&d), by_name(&base), "{stem}");
        }
    }
}

#[test]
fn geometry_matches_kind() {
    for (stem, n) in support::spheres() {
        for p in decompose(&n).unwrap().pieces {
            let ok = match p.kind {
                Kind::RaCone | Kind::EuclideanWall => p.geometry == Geometry::E2xI,
                Kind::RaSuspension => matches!(p.geometry, Geometry::H2xE | Geometry::E3),
                Kind::HyperbolicCapped | Kind::HyperbolicStarIdeal => p.geometry == Geometry::H3,
                Kind::WholeSpecial => true,
            };
            assert!(ok, "{stem}: {:?} {:?}", p.kind, p.geometry);
        }
    }
}

fn assert_atoroidal(stem: &str, d: &Decomposition) {
    for &i in &d.atoroidal_complement {
        let p = &d.pieces[i];
        let Some(z) = &p.capped else { continue };
        let c = &z.complex;
        let capped: BTreeSet<BTreeSet<usize>> = z
            .caps
            .iter()
            .map(|k| k.cycle.iter().copied().collect())
            .collect();
        for t in brute_force_euclidean_triangles(c) {
            assert!(
                capped.contains(&t.into_iter().collect()),
                "{stem}: uncapped Euclidean 3-circuit"
            );
        }
        for q in brute_force_right_angled_4cycles(c) {
            assert!(capped.contains(&q), "{stem}: uncapped 4-circuit");
        }
        for v in 0..c.vertex_count() {
            let ns: Vec<usize> = c.neighbors(v).iter().copied().collect();
            let cone = ns.len() == 3
                && ns.iter().all(|&x| c.label(v, x) == Some(2))
                && brute_force_euclidean_triangles(c).contains(&[ns[0], ns[1], ns[2]]);
            assert!(!cone, "{stem}: RA-cone in H3 piece");
        }
        if let Some(r) = &p.andreev {
            assert!(r.passed, "{stem}");
        }
    }
}

#[test]
fn hyperbolic_pieces_are_atoroidal() {
    for (stem, n) in support::spheres() {
        assert_atoroidal(&stem, &decompose(&n).unwrap());
    }
}

#[test]
fn walls_are_features_and_supports_cover() {
    for (stem, n) in support::spheres() {
        let f = FeatureSet::detect(&n);
        let d = decompose(&n).unwrap();
        for w in &d.walls {
            let ok = match &w.wall {
                Wall::Three(t) => {
                    f.euclidean_3circuits.iter().any(|c| {
                        let mut v = c.vertices;
                        let mut u = *t;
                        v.sort_unstable();
                        u.sort_unstable();
                        v == u && c.flag != CircuitFlag::NonRaConeBoundary
                    }) || f
                        .euclidean_3circuits
                        .iter()
                        .any(|c| c.vertices.iter().all(|x| t.contains(x)))
                }
                Wall::Four(q) => f.euclidean_4circuits.contains(q),
            };
            assert!(ok, "{stem}: wall {:?}", w.vertices);
            assert!(w.wall.is_euclidean_in(&n));
            assert!(!w.pieces.is_empty());
        }
        let covered: BTreeSet<&String> = d.pieces.iter().flat_map(|p| &p.support).collect();
        assert_eq!(covered.len(), n.vertex_count(), "{stem}");
        for t in n.triangles() {
            let names = n.names_of(t);
            assert!(
                d.pieces
                    .iter()
                    .any(|p| names.iter().all(|v| p.support.contains(v))),
                "{stem}: triangle {names:?} in no piece"
            );
        }
        let walls: Vec<BTreeSet<String>> = d
            .walls
            .iter()
            .map(|w| w.vertices.iter().cloned().collect())
            .collect();
        for (i, &a) in d.atoroidal_complement.iter().enumerate() {
            for &b in &d.atoroidal_complement[i + 1..] {
                let sa: BTreeSet<&String> = d.pieces[a].support.iter().collect();
                let common: Vec<&String> = d.pieces[b]
                    .support
                    .iter()
                    .filter(|v| sa.contains(v))
                    .collect();
                for v in common {
                    assert!(
                        walls.iter().any(|w| w.contains(v)),
                        "{stem}: H3 pieces meet off the walls"
                    );
                }
            }
        }
    }
}

#[test]
fn chi_orb_by_inclusion_exclusion() {
    for (stem, n) in support::spheres() {
        let d = decompose(&n).unwrap();
        let supports: Vec<BTreeSet<usize>> = d
            .pieces
            .iter()
            .map(|p| n.resolve(&p.support).unwrap().into_iter().collect())
            .collect();
        let total = chi_orb(&spherical_poset(&n));
        assert!(total.is_zero(), "{stem}: {total}");
        assert_eq!(chi_orb_inclusion_exclusion(&n, &supports), total, "{stem}");
    }
}

/// Random labels on a flag sphere, repaired until every triangle is
/// spherical.
fn random_labeling(rng: &mut StdRng) -> LabeledComplex {
    let c = random_flag_sphere(rng, 20);
    let mut labels: Vec<((usize, usize), u32)> = c
        .edges()
        .keys()
        .map(|&e| {
            (
                e,
                if rng.gen_bool(0.7) {
                    2
                } else {
                    rng.gen_range(3..=6)
                },
            )
        })
        .collect();
    loop {
        let get = |ls: &[((usize, usize), u32)], a: usize, b: usize| {
            ls.iter()
                .find(|(e, _)| *e == (a.min(b), a.max(b)))
                .unwrap()
                .1
        };
        let bad = c.triangles().iter().find(|t| {
            let (p, q, r) = (
                get(&labels, t[0], t[1]) as u64,
                get(&labels, t[1], t[2]) as u64,
                get(&labels, t[0], t[2]) as u64,
            );
            p * q + q * r + r * p <= p * q * r
        });
        let Some(t) = bad else { break };
        let (a, b) = [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])][rng.gen_range(0..3)];
        labels.iter_mut().find(|(e, _)| *e == (a, b)).unwrap().1 = 2;
    }
    let edges: Vec<(String, String, u32)> = labels
        .iter()
        .map(|&((a, b), m)| (c.vertex_name(a).to_owned(), c.vertex_name(b).to_owned(), m))
        .collect();
    LabeledComplex::new("random-labels", c.vertices(), &edges).unwrap()
}

#[test]
fn random_labelings_have_zero_chi_and_decompose() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..100 {
        let c = random_labeling(&mut rng);
        let n = SphereNerve::new(c).expect("labels keep the nerve a sphere");
        assert!(chi_orb(&spherical_poset(&n)).is_zero());
        let d = decompose(&n).unwrap_or_else(|e| panic!("{e}\n{}", n.serialize()));
        let cert = acyclicity_certificate(&n, &d).unwrap();
        check_certificate(&n, &d, &cert).unwrap();
        let p = shuffled(&n, &mut rng);
        assert_eq!(
            by_name(&decompose(&p).unwrap()),
            by_name(&d),
            "{}",
            n.serialize()
        );
        assert_atoroidal("random", &d);
    }
}

#[test]
fn certificates_validate_and_tampering_is_caught() {
    for (stem, n) in support::spheres() {
        let d = decompose(&n).unwrap();
        let cert = acyclicity_certificate(&n, &d).unwrap();
        check_certificate(&n, &d, &cert).unwrap_or_else(|e| panic!("{stem}: {e}"));

        let mut bad = cert.clone();
        bad.conclusion = "h_0(L) = 0".into();
        assert!(matches!(
            check_certificate(&n, &d, &bad),
            Err(CertificateError::Conclusion(_))
        ));

        if let CertNode::MayerVietoris { parts, walls } = &cert.root {
            let mut dropped = parts.clone();
            dropped.pop();
            let bad = coxorb::decompose::Certificate {
                root: CertNode::MayerVietoris {
                    parts: dropped,
                    walls: walls.clone(),
                },
                conclusion: cert.conclusion.clone(),
            };
            assert!(
                matches!(
                    check_certificate(&n, &d, &bad),
                    Err(CertificateError::PieceCount(..))
                ),
                "{stem}"
            );

            let mut doubled = parts.clone();
            doubled.push(parts[0].clone());
            let bad = coxorb::decompose::Certificate {
                root: CertNode::MayerVietoris {
                    parts: doubled,
                    walls: walls.clone(),
                },
                conclusion: cert.conclusion.clone(),
            };
            assert!(check_certificate(&n, &d, &bad).is_err());

            let nested = coxorb::decompose::Certificate {
                root: CertNode::MayerVietoris {
                    parts: vec![cert.root.clone()],
                    walls: vec![],
                },
                conclusion: cert.conclusion.clone(),
            };
            assert!(matches!(
                check_certificate(&n, &d, &nested),
                Err(CertificateError::Shape)
            ));
        }

        let mut swapped = cert.clone();
        let leaf = match &mut swapped.root {
            CertNode::MayerVietoris { parts, .. } => &mut parts[0],
            other => other,
        };
        if let CertNode::Piece { axiom, .. } = leaf {
            *axiom = "made-up.axiom";
        }
        assert!(check_certificate(&n, &d, &swapped).is_err(), "{stem}");
    }
}

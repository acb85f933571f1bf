//! Cross-module checks: presentation torsion against the graph closed
//! form, multiplicativity on random representation pairs, invariance under
//! relabeling, and the soundness of every search row.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use torwidth::algebra::{Field, LaurentPoly};
use torwidth::graph::{graph_torsion, GraphStructure, GraphVertex, Side};
use torwidth::group::{CohomClass, Presentation};
use torwidth::job::SearchParams;
use torwidth::rep::Representation;
use torwidth::search::run_search;
use torwidth::torsion::{multiplicativity_check, torsion};

/// The product of a genus-2 surface with a circle: one closed Seifert
/// piece, Euler characteristic -2, fiber class value 1. The relators are
/// ordered so the surface relation sits in the row dual to the fiber
/// generator `t`, which is where the product CW structure's 3-cell
/// boundary lands with coefficient `1 - t`.
fn surface_times_circle() -> (Presentation, CohomClass, Vec<i64>) {
    let p = Presentation::parse(
        &["a", "b", "c", "d", "t"],
        &["t a T A", "t b T B", "t c T C", "t d T D", "a b A B c d C D"],
    )
    .unwrap();
    let theta = CohomClass::new(vec![0, 0, 0, 0, 1]);
    let alpha = vec![0, 0, 0, 0, 1];
    (p, theta, alpha)
}

fn single_piece_graph() -> GraphStructure {
    GraphStructure {
        vertices: vec![GraphVertex {
            name: "sigma2".into(),
            side: Side::Plus,
            chi: -2,
            m: 1,
            alpha: 1,
            slots: 0,
        }],
        edges: vec![],
    }
}

#[test]
fn closed_fixture_agrees_with_the_graph_closed_form() {
    let (p, theta, alpha) = surface_times_circle();
    assert_eq!(p.deficiency(), 0);
    let field = Field::Cyclotomic(3);
    let w = Representation::augmentation(field, 3).unwrap();
    let rep = w.restrict(&p, &alpha).unwrap();
    let tv = torsion(&p, &theta, &rep).unwrap();
    assert!(tv.is_acyclic());
    assert_eq!(tv.width(), 4);

    let report = graph_torsion(&single_piece_graph(), &w).unwrap();
    assert_eq!(report.width, tv.width());
    assert_eq!(report.signed_width, -4);
    assert_eq!(report.en_norm, 2);
    assert_eq!(report.dim, 2);
    assert!(report.detected);

    let fiber = LaurentPoly::from_integers(field, 0, &[1, 1, 1]);
    let (num, den) = tv.normalized();
    assert_eq!(num, fiber.pow(4));
    assert_eq!(den, fiber.pow(2));
    assert_eq!(report.factors[0].poly, fiber);
}

fn trefoil() -> (Presentation, CohomClass) {
    let p = Presentation::parse(&["a", "b"], &["a b a B A B"]).unwrap();
    (p, CohomClass::new(vec![1, 1]))
}

fn fig8() -> (Presentation, CohomClass) {
    let p = Presentation::parse(&["a", "b"], &["a B A b a B a b A B"]).unwrap();
    (p, CohomClass::new(vec![1, 1]))
}

fn random_cyclic_rep(rng: &mut StdRng, p: &Presentation, n: u64) -> Representation {
    let field = Field::Cyclotomic(n as u32);
    let base = if rng.gen_bool(0.5) {
        Representation::cyclic_character(field, n, rng.gen_range(1..n)).unwrap()
    } else {
        Representation::augmentation(field, n).unwrap()
    };
    let c = rng.gen_range(0..n as i64);
    base.restrict(p, &vec![c; p.gens()]).unwrap()
}

#[test]
fn torsion_is_multiplicative_on_random_pairs() {
    let mut rng = StdRng::seed_from_u64(0x0ddba11);
    for case in 0..40 {
        let (p, theta) = if case % 2 == 0 { trefoil() } else { fig8() };
        let n = [2u64, 3, 4, 5][rng.gen_range(0..4)];
        let a = random_cyclic_rep(&mut rng, &p, n);
        let b = random_cyclic_rep(&mut rng, &p, n);
        assert!(
            multiplicativity_check(&p, &theta, &a, &b).unwrap(),
            "case {case}: {:?} + {:?}",
            a.provenance(),
            b.provenance()
        );
    }
}

#[test]
fn width_survives_generator_relabeling() {
    let (p, theta) = trefoil();
    let swapped = Presentation::parse(&["b", "a"], &["b a b A B A"]).unwrap();
    for rep_of in [
        |q: &Presentation| Representation::trivial(Field::rational(), q.gens()),
        |q: &Presentation| {
            Representation::augmentation(Field::Cyclotomic(3), 3)
                .unwrap()
                .restrict(q, &[1, 1])
                .unwrap()
        },
    ] {
        let original = torsion(&p, &theta, &rep_of(&p)).unwrap();
        let relabeled = torsion(&swapped, &theta, &rep_of(&swapped)).unwrap();
        assert_eq!(original.width(), relabeled.width());
        assert!(original.eq_up_to_unit(&relabeled));
    }
}

#[test]
fn every_search_row_respects_the_reference_norm() {
    let (p, theta) = trefoil();
    let params = SearchParams { n_max: Some(5), det_budget: None, ms_budget: None };
    let outcome = run_search(&p, &theta, &params, &[3, 5], Some(1)).unwrap();
    assert!(!outcome.budget_exhausted);
    for row in &outcome.rows {
        let report = &row.report;
        assert_eq!(report.consistent, Some(true), "row n={} {}", row.n, row.rep);
        assert!(report.width <= report.dim as i64);
        if report.acyclic {
            assert!(report.width >= 0);
        }
    }
    let best = &outcome.rows[outcome.best];
    assert_eq!(best.report.detected, Some(true));
    assert_eq!(best.report.width, best.report.dim as i64);
}

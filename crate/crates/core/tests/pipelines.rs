use lequiver::construct::{
    apply_traced, grid_to_le_script, quiver_from_le, quiver_via_script, restricted_grid,
};
use lequiver::plabic::{gamma_graph, plabic_graph, quiver_via_plabic};
use lequiver::quiver::Quiver;
use lequiver::{enumerate, random_diagram, LeDiagram, VertexId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Quiver<i64>;

fn corpus() -> Vec<LeDiagram> {
    let mut out: Vec<LeDiagram> = enumerate(3, 3, None).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e_d1a6);
    out.extend((0..200).map(|_| random_diagram(4, 4, &mut rng)));
    out
}

#[test]
fn construction_matches_plabic_label_exactly() {
    for d in corpus() {
        let a: Q = quiver_from_le(&d);
        let b: Q = quiver_via_plabic(&d).unwrap();
        assert!(
            a.same_as(&b),
            "{}: {:?} vs {:?}",
            d.to_compact(),
            a.arrows(),
            b.arrows()
        );
    }
}

#[test]
fn script_matches_construction_on_mutable_parts() {
    for d in corpus() {
        let a = quiver_from_le::<i64>(&d).mutable_part();
        let s = quiver_via_script::<i64>(&d).unwrap().mutable_part();
        assert!(
            a.is_isomorphic(&s),
            "{}: {:?} vs {:?}",
            d.to_compact(),
            a.arrows(),
            s.arrows()
        );
    }
}

#[test]
fn each_zero_box_removes_at_most_one_mutable_vertex() {
    for d in corpus() {
        let start = restricted_grid::<i64>(&d).mutable_count();
        let end = quiver_from_le::<i64>(&d).mutable_count();
        let script = grid_to_le_script(&d);
        assert!(script.trace.iter().all(|t| t.deletions <= 1));
        let removed: usize = script.trace.iter().map(|t| t.deletions).sum();
        assert_eq!(start - removed, end, "{}", d.to_compact());
    }
}

#[test]
fn script_mutates_only_mutable_vertices() {
    for d in enumerate(3, 3, None) {
        let script = grid_to_le_script(&d);
        let mut steps = 0;
        apply_traced(&Q::grid(d.rows(), d.cols()), &script, |_, _| steps += 1).unwrap();
        assert_eq!(steps, script.len());
    }
}

#[test]
fn frozen_after_cut_iff_boundary_face() {
    for d in corpus() {
        let cut: Q = restricted_grid(&d);
        let full = LeDiagram::all_ones(d.shape().clone());
        let faces = plabic_graph(&gamma_graph(&full)).faces().unwrap();
        for face in &faces.faces {
            for anchor in &face.anchors {
                assert_eq!(
                    cut.is_frozen(anchor),
                    Some(face.boundary),
                    "{} {anchor}",
                    d.to_compact()
                );
            }
        }
    }
}

#[test]
fn face_count_is_ones_plus_one() {
    for d in enumerate(3, 3, None) {
        let faces = plabic_graph(&gamma_graph(&d)).faces().unwrap();
        assert_eq!(faces.len(), d.ones().count() + 1, "{}", d.to_compact());
        let q: Q = quiver_from_le(&d);
        assert_eq!(q.len(), faces.len());
        assert_eq!(q.is_frozen(&VertexId::Origin), Some(true));
    }
}

#[test]
fn larger_random_diagrams_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for (r, c) in [(5, 5), (4, 6), (6, 4)] {
        for _ in 0..150 {
            let d = random_diagram(r, c, &mut rng);
            let a: Q = quiver_from_le(&d);
            assert!(
                a.same_as(&quiver_via_plabic(&d).unwrap()),
                "{}",
                d.to_compact()
            );
            let s = quiver_via_script::<i64>(&d).unwrap().mutable_part();
            assert!(a.mutable_part().is_isomorphic(&s), "{}", d.to_compact());
        }
    }
}

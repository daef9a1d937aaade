//! Colors from `G⁻¹` against c-vectors read off the framed quiver.

use lequiver::construct::quiver_from_le;
use lequiver::gseed::{Color, GSeed};
use lequiver::quiver::Quiver;
use lequiver::{random_diagram, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Quiver<i128>;

/// The mutable part with a frozen copy `k'` of every vertex and an arrow
/// `k -> k'`.
fn framed(q: &Q) -> (Q, Vec<VertexId>) {
    let m = q.mutable_part();
    let copies: Vec<VertexId> = m
        .ids()
        .iter()
        .map(|v| VertexId::Label(format!("{v}'")))
        .collect();
    let verts = m
        .ids()
        .iter()
        .map(|v| (v.clone(), false))
        .chain(copies.iter().map(|c| (c.clone(), true)));
    let mut f = Q::with_vertices(verts).unwrap();
    for (u, w, x) in m.arrows() {
        f.add_arrows(&u, &w, x as i64).unwrap();
    }
    for (v, c) in m.ids().iter().zip(&copies) {
        f.add_arrows(v, c, 1).unwrap();
    }
    (f, copies)
}

fn random_quiver(rng: &mut ChaCha8Rng) -> Q {
    let n = rng.gen_range(1..=5);
    let ids: Vec<VertexId> = (0..n).map(|k| VertexId::Label(format!("x{k}"))).collect();
    let mut q = Q::with_vertices(ids.iter().map(|v| (v.clone(), false))).unwrap();
    for a in 0..n {
        for b in a + 1..n {
            let m = rng.gen_range(-2..=2);
            if m != 0 {
                q.add_arrows(&ids[a], &ids[b], m).unwrap();
            }
        }
    }
    q
}

fn check_walk(q: &Q, rng: &mut ChaCha8Rng, steps: usize) {
    let (mut f, copies) = framed(q);
    let mut seed = GSeed::initial(q);
    let ids = seed.ids().to_vec();
    for _ in 0..steps {
        let k = rng.gen_range(0..ids.len());
        seed = seed.mutate_at(k).unwrap();
        f = f.mutate(&ids[k]).unwrap();
        let inv = seed.inverse().unwrap();
        let n = ids.len();
        for (r, v) in ids.iter().enumerate() {
            let c: Vec<i128> = copies.iter().map(|cp| f.arrows_between(v, cp)).collect();
            assert_eq!(
                &inv[r * n..(r + 1) * n],
                c.as_slice(),
                "row {r} of G^-1 vs c-vector of {v}"
            );
            let color = if c.iter().all(|&x| x >= 0) {
                Color::Green
            } else {
                Color::Red
            };
            assert_eq!(seed.color_at(r), color);
        }
        assert_eq!(seed.quiver().matrix(), f.mutable_part().matrix());
    }
}

#[test]
fn random_quivers_agree_with_framed_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let q = random_quiver(&mut rng);
        check_walk(&q, &mut rng, 8);
    }
}

#[test]
fn le_quivers_agree_with_framed_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let d = random_diagram(3, 4, &mut rng);
        let q: Q = quiver_from_le(&d);
        if q.mutable_count() > 0 {
            check_walk(&q, &mut rng, 10);
        }
    }
}

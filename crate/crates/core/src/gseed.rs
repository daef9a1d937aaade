//! g-seeds: a quiver's mutable part together with one g-vector per vertex.
//!
//! Colors are read off the exact inverse of the g-vector matrix `G` (column
//! `k` is `g_k`): row `k` of `G⁻¹` holds the coefficients of the standard
//! basis vectors on `g_k`, so `k` is green when that row is nonnegative and
//! red when it is nonpositive. A row of mixed sign is reported as a sign
//! coherence violation.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::quiver::Quiver;
use crate::scalar::{Overflow, Scalar};
use crate::vertex::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GSeedError {
    #[error("{0} is not a mutable vertex of the seed")]
    NotMutable(VertexId),
    #[error("sign coherence violated at {0}")]
    SignCoherenceViolation(VertexId),
    #[error("mutation at {0} did not change its color")]
    ColorDidNotFlip(VertexId),
    #[error("g-vectors do not form a lattice basis")]
    NotUnimodular,
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Green,
    Red,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Green => "green",
            Color::Red => "red",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceMode {
    /// Any mutations, ending with every mutable vertex red.
    GreenToRed,
    /// As above, and every mutation happens at a green vertex.
    MaximalGreen,
}

/// Exact inverse and determinant of a square integer matrix given row-major,
/// by fraction-free Gauss-Jordan elimination. Returns `None` when singular.
///
/// The inverse is only integral for unimodular input; callers check the
/// determinant first.
pub fn bareiss_inverse<T: Scalar>(a: &[T], n: usize) -> Result<Option<(T, Vec<T>)>, Overflow> {
    if n == 0 {
        return Ok(Some((T::one(), Vec::new())));
    }
    let w = 2 * n;
    let mut m = vec![T::zero(); n * w];
    for i in 0..n {
        for j in 0..n {
            m[i * w + j] = a[i * n + j].clone();
        }
        m[i * w + n + i] = T::one();
    }
    let mut swaps_odd = false;
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&p| !m[p * w + k].is_zero()) else {
            return Ok(None);
        };
        if p != k {
            for j in 0..w {
                m.swap(p * w + j, k * w + j);
            }
            swaps_odd = !swaps_odd;
        }
        let pivot = m[k * w + k].clone();
        for i in (0..n).filter(|&i| i != k) {
            let factor = m[i * w + k].clone();
            for j in (0..w).filter(|&j| j != k) {
                let lhs = pivot.mul_c(&m[i * w + j])?;
                let rhs = factor.mul_c(&m[k * w + j])?;
                m[i * w + j] = lhs.sub_c(&rhs)? / prev.clone();
            }
            m[i * w + k] = T::zero();
        }
        prev = pivot;
    }
    // left block is now prev * I, right block prev * A^{-1}
    let det = if swaps_odd {
        prev.neg_c()?
    } else {
        prev.clone()
    };
    let mut inv = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let x = &m[i * w + n + j];
            inv[i * n + j] = if prev.abs().is_one() {
                x.clone() * prev.clone()
            } else {
                x.clone() / prev.clone()
            };
        }
    }
    Ok(Some((det, inv)))
}

/// A g-seed over the mutable part of a quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSeed<T> {
    quiver: Quiver<T>,
    /// Row-major `n x n`; column `k` is the g-vector of vertex `k`.
    g: Vec<T>,
    colors: Vec<Color>,
}

impl<T: Scalar> GSeed<T> {
    /// The initial seed: frozen vertices stripped, `G = I`, all green.
    pub fn initial(q: &Quiver<T>) -> Self {
        let quiver = q.mutable_part();
        let n = quiver.len();
        let mut g = vec![T::zero(); n * n];
        for i in 0..n {
            g[i * n + i] = T::one();
        }
        GSeed {
            quiver,
            g,
            colors: vec![Color::Green; n],
        }
    }

    /// Seed with explicit g-vectors (columns of `g`), checked for
    /// unimodularity and sign coherence.
    pub fn with_g_matrix(q: &Quiver<T>, g: Vec<Vec<T>>) -> Result<Self, GSeedError> {
        let quiver = q.mutable_part();
        let n = quiver.len();
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(GSeedError::NotUnimodular);
        }
        let g: Vec<T> = g.into_iter().flatten().collect();
        let colors = compute_colors(quiver.ids(), &g)?;
        Ok(GSeed { quiver, g, colors })
    }

    pub fn len(&self) -> usize {
        self.quiver.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quiver.is_empty()
    }

    pub fn quiver(&self) -> &Quiver<T> {
        &self.quiver
    }

    pub fn ids(&self) -> &[VertexId] {
        self.quiver.ids()
    }

    pub fn index_of(&self, id: &VertexId) -> Option<usize> {
        self.quiver.index_of(id)
    }

    /// `G` as rows.
    pub fn g_matrix(&self) -> Vec<Vec<T>> {
        let n = self.len();
        (0..n)
            .map(|i| self.g[i * n..(i + 1) * n].to_vec())
            .collect()
    }

    pub fn g_vector(&self, k: usize) -> Vec<T> {
        let n = self.len();
        (0..n).map(|i| self.g[i * n + k].clone()).collect()
    }

    pub fn determinant(&self) -> Result<T, Overflow> {
        Ok(bareiss_inverse(&self.g, self.len())?
            .map(|(d, _)| d)
            .unwrap_or_else(T::zero))
    }

    /// Row-major exact inverse of `G`.
    pub fn inverse(&self) -> Result<Vec<T>, GSeedError> {
        unimodular_inverse(&self.g, self.len())
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color_at(&self, k: usize) -> Color {
        self.colors[k]
    }

    pub fn vertex_color(&self, id: &VertexId) -> Result<Color, GSeedError> {
        let k = self
            .index_of(id)
            .ok_or_else(|| GSeedError::NotMutable(id.clone()))?;
        Ok(self.colors[k])
    }

    /// True when every vertex is red; vacuously true for the empty seed.
    pub fn all_red(&self) -> bool {
        self.colors.iter().all(|&c| c == Color::Red)
    }

    pub fn green_vertices(&self) -> Vec<VertexId> {
        self.ids()
            .iter()
            .zip(&self.colors)
            .filter(|(_, &c)| c == Color::Green)
            .map(|(v, _)| v.clone())
            .collect()
    }

    pub fn mutate(&self, id: &VertexId) -> Result<Self, GSeedError> {
        let k = self
            .index_of(id)
            .ok_or_else(|| GSeedError::NotMutable(id.clone()))?;
        self.mutate_at(k)
    }

    /// Mutation at position `k`: the quiver mutates and `g_k` is replaced by
    /// `-g_k` plus the g-vectors at the other ends of the arrows into `k`
    /// (green) or out of `k` (red), with multiplicity.
    pub fn mutate_at(&self, k: usize) -> Result<Self, GSeedError> {
        let n = self.len();
        let before = self.colors[k];
        let mut g = self.g.clone();
        for i in 0..n {
            let mut acc = self.g[i * n + k].neg_c()?;
            for j in 0..n {
                let mult = match before {
                    Color::Green => self.quiver.at(j, k).pos_part(),
                    Color::Red => self.quiver.at(k, j).pos_part(),
                };
                if !mult.is_zero() {
                    acc = acc.add_c(&mult.mul_c(&self.g[i * n + j])?)?;
                }
            }
            g[i * n + k] = acc;
        }
        let mut quiver = self.quiver.clone();
        quiver.mutate_in_place(k)?;
        let colors = compute_colors(quiver.ids(), &g)?;
        if colors[k] == before {
            return Err(GSeedError::ColorDidNotFlip(quiver.ids()[k].clone()));
        }
        Ok(GSeed { quiver, g, colors })
    }

    /// Hashable exact state `(B, G)` of the seed.
    pub fn state_key(&self) -> (Vec<T>, Vec<T>) {
        (self.quiver.raw().to_vec(), self.g.clone())
    }
}

fn unimodular_inverse<T: Scalar>(g: &[T], n: usize) -> Result<Vec<T>, GSeedError> {
    match bareiss_inverse(g, n)? {
        Some((det, inv)) if det.abs().is_one() => Ok(inv),
        _ => Err(GSeedError::NotUnimodular),
    }
}

fn compute_colors<T: Scalar>(ids: &[VertexId], g: &[T]) -> Result<Vec<Color>, GSeedError> {
    let n = ids.len();
    let inv = unimodular_inverse(g, n)?;
    (0..n)
        .map(|k| {
            let row = &inv[k * n..(k + 1) * n];
            if row.iter().all(|x| !x.is_negative()) {
                Ok(Color::Green)
            } else if row.iter().all(|x| !x.is_positive()) {
                Ok(Color::Red)
            } else {
                Err(GSeedError::SignCoherenceViolation(ids[k].clone()))
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub vertex: VertexId,
    /// Color of the vertex just before it was mutated.
    pub color: Color,
}

/// Result of replaying a mutation sequence from the initial seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<T> {
    pub accepted: bool,
    pub reason: String,
    pub steps: Vec<Step>,
    pub final_seed: GSeed<T>,
}

impl<T: Scalar> Verdict<T> {
    pub fn to_json(&self) -> Value {
        let seed = &self.final_seed;
        let g: Vec<Vec<Value>> = seed
            .g_matrix()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        x.to_i64()
                            .map_or_else(|| json!(x.to_string()), |v| json!(v))
                    })
                    .collect()
            })
            .collect();
        let colors: serde_json::Map<String, Value> = seed
            .ids()
            .iter()
            .zip(seed.colors())
            .map(|(v, c)| (v.to_string(), json!(c.to_string())))
            .collect();
        json!({
            "accepted": self.accepted,
            "reason": self.reason,
            "steps": self.steps.iter().map(|s| json!({"vertex": s.vertex.to_string(), "color": s.color})).collect::<Vec<_>>(),
            "vertices": seed.ids().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "g": g,
            "final_colors": colors,
        })
    }
}

/// Replays `seq` from the initial seed of `q`.
pub fn verify_sequence<T: Scalar>(
    q: &Quiver<T>,
    seq: &[VertexId],
    mode: SequenceMode,
) -> Result<Verdict<T>, GSeedError> {
    let mut seed = GSeed::initial(q);
    let mut steps = Vec::with_capacity(seq.len());
    for (pos, v) in seq.iter().enumerate() {
        let color = seed.vertex_color(v)?;
        steps.push(Step {
            vertex: v.clone(),
            color,
        });
        if mode == SequenceMode::MaximalGreen && color == Color::Red {
            return Ok(Verdict {
                accepted: false,
                reason: format!("step {} mutates {v}, which is red", pos + 1),
                steps,
                final_seed: seed,
            });
        }
        seed = seed.mutate(v)?;
    }
    let (accepted, reason) = if seed.all_red() {
        (true, "all mutable vertices are red".to_string())
    } else {
        let green: Vec<String> = seed
            .green_vertices()
            .iter()
            .map(|v| v.to_string())
            .collect();
        (
            false,
            format!("green vertices remain: {}", green.join(", ")),
        )
    };
    Ok(Verdict {
        accepted,
        reason,
        steps,
        final_seed: seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quiver<i64>;

    fn v(s: &str) -> VertexId {
        VertexId::from(s)
    }

    fn a2() -> Q {
        let mut q = Q::with_vertices([(v("1"), false), (v("2"), false)]).unwrap();
        q.add_arrows(&v("1"), &v("2"), 1).unwrap();
        q
    }

    fn single() -> Q {
        Q::with_vertices([(v("1"), false)]).unwrap()
    }

    #[test]
    fn bareiss_inverts_unimodular_matrices() {
        let a: Vec<i64> = vec![2, 3, 1, 1, 2, 1, 0, 1, 2];
        let (det, inv) = bareiss_inverse(&a, 3).unwrap().unwrap();
        assert_eq!(det.abs(), 1);
        for i in 0..3 {
            for j in 0..3 {
                let s: i64 = (0..3).map(|k| a[i * 3 + k] * inv[k * 3 + j]).sum();
                assert_eq!(s, i64::from(i == j));
            }
        }
        // needs a row swap
        let b: Vec<i64> = vec![0, 1, 1, 0];
        let (det, inv) = bareiss_inverse(&b, 2).unwrap().unwrap();
        assert_eq!(det, -1);
        assert_eq!(inv, vec![0, 1, 1, 0]);
        assert!(bareiss_inverse(&[1i64, 2, 2, 4], 2).unwrap().is_none());
    }

    #[test]
    fn initial_seed() {
        let s = GSeed::initial(&single());
        assert_eq!(s.g_matrix(), vec![vec![1]]);
        assert_eq!(s.colors(), &[Color::Green]);
        let s = GSeed::initial(&a2());
        assert_eq!(s.g_matrix(), vec![vec![1, 0], vec![0, 1]]);
        assert!(s.colors().iter().all(|&c| c == Color::Green));
        let empty = GSeed::initial(&Q::grid(1, 3));
        assert!(empty.is_empty());
        assert!(empty.all_red());
    }

    #[test]
    fn colors_after_mutation() {
        let s = GSeed::initial(&single()).mutate(&v("1")).unwrap();
        assert_eq!(s.g_matrix(), vec![vec![-1]]);
        assert_eq!(s.vertex_color(&v("1")), Ok(Color::Red));

        let s = GSeed::initial(&a2()).mutate(&v("1")).unwrap();
        assert_eq!(s.g_vector(0), vec![-1, 0]);
        assert_eq!(s.g_vector(1), vec![0, 1]);
        assert_eq!(s.vertex_color(&v("1")), Ok(Color::Red));
        assert_eq!(s.vertex_color(&v("2")), Ok(Color::Green));

        let s = s.mutate(&v("2")).unwrap();
        assert_eq!(s.g_matrix(), vec![vec![-1, 0], vec![0, -1]]);
        assert!(s.all_red());
    }

    #[test]
    fn green_mutation_uses_incoming_arrows() {
        // mutating 2 first: arrow 1 -> 2 feeds g_1 into g_2
        let s = GSeed::initial(&a2()).mutate(&v("2")).unwrap();
        assert_eq!(s.g_vector(1), vec![1, -1]);
        assert_eq!(s.vertex_color(&v("2")), Ok(Color::Red));
        // involution
        let back = s.mutate(&v("2")).unwrap();
        assert_eq!(back, GSeed::initial(&a2()));
    }

    #[test]
    fn mixed_signs_are_rejected() {
        let q = a2();
        let err = GSeed::with_g_matrix(&q, vec![vec![1, 1], vec![0, 1]]);
        assert!(matches!(err, Err(GSeedError::SignCoherenceViolation(_))));
        let err = GSeed::with_g_matrix(&q, vec![vec![2, 0], vec![0, 1]]);
        assert_eq!(err, Err(GSeedError::NotUnimodular));
    }

    #[test]
    fn verify_examples() {
        let verdict = verify_sequence(&single(), &[v("1")], SequenceMode::MaximalGreen).unwrap();
        assert!(verdict.accepted);
        let verdict = verify_sequence(&a2(), &[v("1"), v("2")], SequenceMode::GreenToRed).unwrap();
        assert!(verdict.accepted);
        assert_eq!(
            verdict.steps.iter().map(|s| s.color).collect::<Vec<_>>(),
            vec![Color::Green, Color::Green]
        );
        let verdict = verify_sequence(&a2(), &[], SequenceMode::GreenToRed).unwrap();
        assert!(!verdict.accepted);
        assert!(verdict.reason.contains("green"));
        let verdict =
            verify_sequence(&a2(), &[v("1"), v("1")], SequenceMode::MaximalGreen).unwrap();
        assert!(!verdict.accepted);
        assert!(
            !verify_sequence(&Q::grid(2, 2), &[], SequenceMode::GreenToRed)
                .unwrap()
                .accepted
        );
        assert!(
            verify_sequence(&Q::grid(1, 2), &[], SequenceMode::GreenToRed)
                .unwrap()
                .accepted
        );
        assert_eq!(
            verify_sequence(
                &Q::grid(2, 2),
                &[VertexId::Origin],
                SequenceMode::GreenToRed
            ),
            Err(GSeedError::NotMutable(VertexId::Origin))
        );
    }

    #[test]
    fn verdict_json_has_trace() {
        let verdict = verify_sequence(&a2(), &[v("1"), v("2")], SequenceMode::GreenToRed).unwrap();
        let j = verdict.to_json();
        assert_eq!(j["accepted"], json!(true));
        assert_eq!(j["steps"][1]["color"], json!("green"));
        assert_eq!(j["final_colors"]["2"], json!("red"));
    }
}

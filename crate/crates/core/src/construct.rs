//! Quivers of Le-diagrams from the rectangular grid quiver.
//!
//! [`quiver_from_le`] deletes the boxes outside the shape and merges the
//! vertex sets of the 0-boxes. [`grid_to_le_script`] reaches the same
//! mutable part through mutations and deletions only, tracking which vertex
//! currently sits at which grid position as vertices slide southeast.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::le::{Cell, LeDiagram, ZeroCase};
use crate::quiver::{Quiver, QuiverError};
use crate::scalar::Scalar;
use crate::vertex::VertexId;

/// Whether `v` stays mutable once the grid is cut down to `d`'s shape.
fn mutable_in_shape(d: &LeDiagram, v: &VertexId) -> bool {
    match v.as_cell() {
        Some((i, j)) => d.shape().contains((i + 1, j + 1)),
        None => false,
    }
}

fn outside_shape(d: &LeDiagram) -> Vec<VertexId> {
    let shape = d.shape();
    let mut out = Vec::new();
    for i in 1..=shape.rows() {
        for j in shape.row_len(i) + 1..=shape.cols() {
            out.push(VertexId::cell(i, j));
        }
    }
    out
}

fn frozen_after_cut(d: &LeDiagram) -> BTreeSet<VertexId> {
    std::iter::once(VertexId::Origin)
        .chain(d.shape().cells().map(|(i, j)| VertexId::cell(i, j)))
        .filter(|v| !mutable_in_shape(d, v))
        .collect()
}

/// The grid quiver of the bounding rectangle restricted to the shape, with
/// `v{i},{j}` mutable iff box `(i+1, j+1)` is in the shape.
pub fn restricted_grid<T: Scalar>(d: &LeDiagram) -> Quiver<T> {
    let grid = Quiver::grid(d.rows(), d.cols());
    let cut = grid
        .delete_vertices(&outside_shape(d))
        .expect("boxes of the bounding rectangle");
    cut.refreeze(|v| !mutable_in_shape(d, v))
}

/// Delete-then-merge: the restricted grid with every merge cluster collapsed
/// to its least member.
pub fn quiver_from_le<T: Scalar>(d: &LeDiagram) -> Quiver<T> {
    let mut q = restricted_grid(d);
    for cluster in d.merge_clusters() {
        if cluster.len() > 1 {
            q = q
                .merge_vertices(&cluster)
                .expect("clusters consist of present vertices");
        }
    }
    q
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Instruction {
    Delete {
        vertex: VertexId,
    },
    Mutate {
        vertex: VertexId,
    },
    /// Resets frozen flags: exactly the listed vertices are frozen afterwards.
    Refreeze {
        frozen: BTreeSet<VertexId>,
    },
}

/// What sits at a grid position while the script is generated.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Occupant {
    Vertex(VertexId),
    /// A mutable vertex deleted because it merged into a frozen one; the
    /// position now behaves like a frozen vertex.
    FrozenGhost,
}

/// Occupancy after one 0-box has been processed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub zero_box: Cell,
    pub deletions: usize,
    /// Position to vertex; ghost positions are omitted.
    pub occupancy: Vec<(Cell, VertexId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationScript {
    pub rows: usize,
    pub cols: usize,
    /// Target diagram in compact form.
    pub diagram: String,
    pub instructions: Vec<Instruction>,
    pub trace: Vec<TraceEntry>,
}

impl MutationScript {
    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn mutation_count(&self) -> usize {
        self.instructions
            .iter()
            .filter(|i| matches!(i, Instruction::Mutate { .. }))
            .count()
    }

    pub fn to_json(&self, with_trace: bool) -> Value {
        let mut v = json!({
            "rows": self.rows,
            "cols": self.cols,
            "diagram": self.diagram,
            "instructions": self.instructions,
        });
        if with_trace {
            v["trace"] = serde_json::to_value(&self.trace).expect("trace serializes");
        }
        v
    }
}

/// Mutations and deletions taking `grid(r, c)` to a quiver whose mutable
/// part matches that of [`quiver_from_le`].
///
/// 0-boxes are processed in reading order. When the vertex at the box is
/// mutable, the diagonal run of mutable vertices starting there is mutated
/// in order, its last vertex deleted, and the rest slide one step
/// southeast. When it is frozen the merge can only swallow its partner: the
/// nearest occupied position above (vertical case) or to the left
/// (horizontal case), or a mutable occupant of the three positions
/// northwest of the box (hook case); if that partner is mutable it is
/// deleted.
pub fn grid_to_le_script(d: &LeDiagram) -> MutationScript {
    let shape = d.shape();
    let mut instructions: Vec<Instruction> = outside_shape(d)
        .into_iter()
        .map(|vertex| Instruction::Delete { vertex })
        .collect();
    instructions.push(Instruction::Refreeze {
        frozen: frozen_after_cut(d),
    });

    let mut occ: BTreeMap<Cell, Occupant> = shape
        .cells()
        .map(|(i, j)| ((i, j), Occupant::Vertex(VertexId::cell(i, j))))
        .collect();
    let mut mutable: BTreeSet<VertexId> = shape
        .cells()
        .map(|(i, j)| VertexId::cell(i, j))
        .filter(|v| mutable_in_shape(d, v))
        .collect();
    let is_mut = |o: Option<&Occupant>, mutable: &BTreeSet<VertexId>| match o {
        Some(Occupant::Vertex(v)) => mutable.contains(v),
        _ => false,
    };

    let mut trace = Vec::new();
    for cell in d.zeros() {
        let before = instructions.len();
        if is_mut(occ.get(&cell), &mutable) {
            let mut run = vec![cell];
            loop {
                let (i, j) = *run.last().unwrap();
                if is_mut(occ.get(&(i + 1, j + 1)), &mutable) {
                    run.push((i + 1, j + 1));
                } else {
                    break;
                }
            }
            let verts: Vec<VertexId> = run
                .iter()
                .map(|p| match &occ[p] {
                    Occupant::Vertex(v) => v.clone(),
                    Occupant::FrozenGhost => unreachable!(),
                })
                .collect();
            for v in &verts {
                instructions.push(Instruction::Mutate { vertex: v.clone() });
            }
            let last = verts.last().unwrap().clone();
            instructions.push(Instruction::Delete {
                vertex: last.clone(),
            });
            mutable.remove(&last);
            for t in (0..verts.len() - 1).rev() {
                occ.insert(run[t + 1], Occupant::Vertex(verts[t].clone()));
            }
            occ.remove(&run[0]);
        } else {
            let (i, j) = cell;
            let partner = match d.zero_box_case(cell).expect("zero box") {
                ZeroCase::Vertical => (1..i).rev().map(|ii| (ii, j)).find(|p| occ.contains_key(p)),
                ZeroCase::Horizontal => {
                    (1..j).rev().map(|jj| (i, jj)).find(|p| occ.contains_key(p))
                }
                ZeroCase::Hook => [(i - 1, j - 1), (i - 1, j), (i, j - 1)]
                    .into_iter()
                    .find(|p| is_mut(occ.get(p), &mutable)),
            };
            if let Some(p) = partner {
                if let Some(Occupant::Vertex(v)) =
                    occ.get(&p).filter(|o| is_mut(Some(o), &mutable)).cloned()
                {
                    instructions.push(Instruction::Delete { vertex: v.clone() });
                    mutable.remove(&v);
                    occ.insert(p, Occupant::FrozenGhost);
                }
            }
        }
        trace.push(TraceEntry {
            zero_box: cell,
            deletions: instructions[before..]
                .iter()
                .filter(|i| matches!(i, Instruction::Delete { .. }))
                .count(),
            occupancy: occ
                .iter()
                .filter_map(|(p, o)| match o {
                    Occupant::Vertex(v) => Some((*p, v.clone())),
                    Occupant::FrozenGhost => None,
                })
                .collect(),
        });
    }
    MutationScript {
        rows: d.rows(),
        cols: d.cols(),
        diagram: d.to_compact(),
        instructions,
        trace,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("script step {step}: {source}")]
pub struct ScriptError {
    pub step: usize,
    #[source]
    pub source: QuiverError,
}

/// Replays `script` on `q`.
pub fn apply_script<T: Scalar>(
    q: &Quiver<T>,
    script: &MutationScript,
) -> Result<Quiver<T>, ScriptError> {
    apply_traced(q, script, |_, _| {})
}

/// Replays `script`, handing every intermediate quiver to `visit`.
pub fn apply_traced<T: Scalar>(
    q: &Quiver<T>,
    script: &MutationScript,
    mut visit: impl FnMut(usize, &Quiver<T>),
) -> Result<Quiver<T>, ScriptError> {
    let mut cur = q.clone();
    for (step, ins) in script.instructions.iter().enumerate() {
        let wrap = |source| ScriptError { step, source };
        cur = match ins {
            Instruction::Delete { vertex } => cur.delete_vertices([vertex]).map_err(wrap)?,
            Instruction::Mutate { vertex } => cur.mutate(vertex).map_err(wrap)?,
            Instruction::Refreeze { frozen } => {
                if let Some(v) = frozen.iter().find(|v| !cur.contains(v)) {
                    return Err(wrap(QuiverError::UnknownVertex(v.clone())));
                }
                cur.refreeze(|v| frozen.contains(v))
            }
        };
        visit(step, &cur);
    }
    Ok(cur)
}

/// The script route end to end: the grid of the bounding rectangle with the
/// script applied.
pub fn quiver_via_script<T: Scalar>(d: &LeDiagram) -> Result<Quiver<T>, ScriptError> {
    apply_script(&Quiver::grid(d.rows(), d.cols()), &grid_to_le_script(d))
}

//! Le-diagram → Γ-graph → plabic graph → faces → dual quiver.
//!
//! Geometry is integral. Box `(i, j)` occupies `[8(j-1), 8j] x [-8i, -8(i-1)]`;
//! its internal vertex sits at the box center. Rotation systems are read off
//! the directions of the first segment of each edge, so no floating point is
//! involved anywhere.
//!
//! Faces are named through anchor points: the face holding a point just
//! inside the southeast corner of box `(i, j)` carries `v{i},{j}`, the face
//! holding the northwest corner of box `(1, 1)` carries `v0`. A face is named
//! by the least anchor it holds.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::le::{Cell, LeDiagram, Shape};
use crate::quiver::{Quiver, QuiverError};
use crate::scalar::Scalar;
use crate::vertex::VertexId;

/// Integer point.
pub type Pt = (i64, i64);

const UNIT: i64 = 8;

fn box_center((i, j): Cell) -> Pt {
    (UNIT * j as i64 - 4, -UNIT * i as i64 + 4)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlabicError {
    #[error("embedding is inconsistent: V - E + F = {euler}, expected {expected}")]
    InconsistentEmbedding { euler: i64, expected: i64 },
    #[error("anchor {0} does not lie in exactly one face")]
    AmbiguousAnchor(VertexId),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

// ---------------------------------------------------------------------------
// Γ-graph
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaKind {
    /// Vertex placed in a box filled with 1.
    Internal(Cell),
    /// Intersection of a vertical and a horizontal line away from any 1-box.
    Crossing(Cell),
    /// Boundary source at the right end of a row.
    Source(usize),
    /// Boundary sink at the bottom of a column.
    Sink(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGraph {
    shape: Shape,
    vertices: Vec<GammaKind>,
    /// Directed edges: vertical ones point down, horizontal ones point left.
    edges: Vec<(usize, usize)>,
    /// Boundary vertices along the lattice path, upper right to lower left.
    boundary: Vec<usize>,
}

impl GammaGraph {
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn vertices(&self) -> &[GammaKind] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn internal_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|k| matches!(k, GammaKind::Internal(_)))
            .count()
    }

    pub fn crossing_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|k| matches!(k, GammaKind::Crossing(_)))
            .count()
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary.len()
    }

    fn position(&self, v: usize) -> Pt {
        match self.vertices[v] {
            GammaKind::Internal(c) | GammaKind::Crossing(c) => box_center(c),
            GammaKind::Source(i) => (UNIT * self.shape.row_len(i) as i64, -UNIT * i as i64 + 4),
            GammaKind::Sink(j) => (UNIT * j as i64 - 4, -UNIT * self.shape.col_len(j) as i64),
        }
    }

    /// Follows downward edges from `v` to the end of its line.
    pub fn walk_down(&self, mut v: usize) -> usize {
        while let Some(&(_, w)) = self
            .edges
            .iter()
            .find(|&&(a, b)| a == v && self.position(b).0 == self.position(a).0)
        {
            v = w;
        }
        v
    }

    /// Follows horizontal edges backwards from `v` to the source feeding it.
    pub fn walk_to_source(&self, mut v: usize) -> usize {
        while let Some(&(u, _)) = self
            .edges
            .iter()
            .find(|&&(a, b)| b == v && self.position(b).1 == self.position(a).1)
        {
            v = u;
        }
        v
    }
}

/// Builds the Γ-graph: one internal vertex per 1-box, a line down and a line
/// right from each, boundary vertices in the middle of each lattice-path step
/// (vertical steps are sources, horizontal steps sinks).
pub fn gamma_graph(d: &LeDiagram) -> GammaGraph {
    let shape = d.shape().clone();
    let mut vertices = Vec::new();
    let mut at_cell: BTreeMap<Cell, usize> = BTreeMap::new();
    for cell in shape.cells() {
        let (i, j) = cell;
        let kind = if d.is_one(cell) {
            Some(GammaKind::Internal(cell))
        } else {
            let line_through_row = (1..j).any(|jj| d.is_one((i, jj)));
            let line_through_col = (1..i).any(|ii| d.is_one((ii, j)));
            (line_through_row && line_through_col).then_some(GammaKind::Crossing(cell))
        };
        if let Some(kind) = kind {
            at_cell.insert(cell, vertices.len());
            vertices.push(kind);
        }
    }
    let mut boundary = Vec::new();
    let mut source_of = BTreeMap::new();
    let mut sink_of = BTreeMap::new();
    for i in 1..=shape.rows() {
        source_of.insert(i, vertices.len());
        boundary.push(vertices.len());
        vertices.push(GammaKind::Source(i));
        let next_len = shape.row_len(i + 1);
        for j in (next_len + 1..=shape.row_len(i)).rev() {
            sink_of.insert(j, vertices.len());
            boundary.push(vertices.len());
            vertices.push(GammaKind::Sink(j));
        }
    }
    let mut edges = Vec::new();
    for i in 1..=shape.rows() {
        let mut line: Vec<usize> = (1..=shape.row_len(i))
            .filter_map(|j| at_cell.get(&(i, j)).copied())
            .collect();
        if line.is_empty() {
            continue;
        }
        line.push(source_of[&i]);
        for w in line.windows(2) {
            edges.push((w[1], w[0]));
        }
    }
    for j in 1..=shape.cols() {
        let mut line: Vec<usize> = (1..=shape.col_len(j))
            .filter_map(|i| at_cell.get(&(i, j)).copied())
            .collect();
        if line.is_empty() {
            continue;
        }
        line.push(sink_of[&j]);
        for w in line.windows(2) {
            edges.push((w[0], w[1]));
        }
    }
    GammaGraph {
        shape,
        vertices,
        edges,
        boundary,
    }
}

// ---------------------------------------------------------------------------
// Plabic graph
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tint {
    Black,
    White,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlabicVertex {
    pub tint: Tint,
    pub pos: Pt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfEdge {
    pub origin: usize,
    pub twin: usize,
    /// Intermediate points from `origin` towards the twin's origin.
    pub waypoints: Vec<Pt>,
    /// Boundary arc of the disk rather than a graph edge.
    pub arc: bool,
    /// For arcs: runs in path order, with the outside of the disk on its left.
    pub forward: bool,
}

/// Bicolored graph in a disk. Boundary arcs between consecutive boundary
/// vertices are stored as extra edges so that face traversal closes up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlabicGraph {
    vertices: Vec<PlabicVertex>,
    half_edges: Vec<HalfEdge>,
    /// Outgoing half-edges of each vertex, counterclockwise.
    rotation: Vec<Vec<usize>>,
    boundary: Vec<usize>,
    anchors: Vec<(VertexId, Pt)>,
}

fn half_plane(v: Pt) -> u8 {
    if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
        0
    } else {
        1
    }
}

/// Counterclockwise order of directions starting from the positive x axis.
fn angle_cmp(a: Pt, b: Pt) -> Ordering {
    half_plane(a).cmp(&half_plane(b)).then_with(|| {
        let cross = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&cross)
    })
}

impl PlabicGraph {
    /// Empty graph to be filled with [`add_vertex`](Self::add_vertex) and
    /// [`add_edge`](Self::add_edge); call [`finish`](Self::finish) afterwards.
    pub fn new() -> Self {
        PlabicGraph {
            vertices: Vec::new(),
            half_edges: Vec::new(),
            rotation: Vec::new(),
            boundary: Vec::new(),
            anchors: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, tint: Tint, pos: Pt) -> usize {
        self.vertices.push(PlabicVertex { tint, pos });
        self.rotation.push(Vec::new());
        if tint == Tint::Boundary {
            self.boundary.push(self.vertices.len() - 1);
        }
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize, waypoints: Vec<Pt>) -> usize {
        self.push_edge(a, b, waypoints, false)
    }

    fn push_edge(&mut self, a: usize, b: usize, waypoints: Vec<Pt>, arc: bool) -> usize {
        let h = self.half_edges.len();
        let mut back = waypoints.clone();
        back.reverse();
        self.half_edges.push(HalfEdge {
            origin: a,
            twin: h + 1,
            waypoints,
            arc,
            forward: arc,
        });
        self.half_edges.push(HalfEdge {
            origin: b,
            twin: h,
            waypoints: back,
            arc,
            forward: false,
        });
        self.rotation[a].push(h);
        self.rotation[b].push(h + 1);
        h
    }

    pub fn add_anchor(&mut self, id: VertexId, at: Pt) {
        self.anchors.push((id, at));
    }

    /// Sorts every rotation counterclockwise by first-segment direction.
    pub fn finish(&mut self) {
        for v in 0..self.vertices.len() {
            let mut rot = std::mem::take(&mut self.rotation[v]);
            rot.sort_by(|&a, &b| angle_cmp(self.direction(a), self.direction(b)));
            self.rotation[v] = rot;
        }
    }

    fn direction(&self, h: usize) -> Pt {
        let he = &self.half_edges[h];
        let from = self.vertices[he.origin].pos;
        let to = he
            .waypoints
            .first()
            .copied()
            .unwrap_or(self.vertices[self.half_edges[he.twin].origin].pos);
        (to.0 - from.0, to.1 - from.1)
    }

    pub fn vertices(&self) -> &[PlabicVertex] {
        &self.vertices
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v]
            .iter()
            .filter(|&&h| !self.half_edges[h].arc)
            .count()
    }

    /// Boundary vertices in cyclic order.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    /// Graph edges (arcs excluded).
    pub fn edge_count(&self) -> usize {
        self.half_edges.iter().filter(|h| !h.arc).count() / 2
    }

    pub fn tint_count(&self, tint: Tint) -> usize {
        self.vertices.iter().filter(|v| v.tint == tint).count()
    }

    fn head(&self, h: usize) -> usize {
        self.half_edges[self.half_edges[h].twin].origin
    }

    /// The half-edge following `h` around the face on its left.
    fn next_in_face(&self, h: usize) -> usize {
        let t = self.half_edges[h].twin;
        let v = self.half_edges[t].origin;
        let rot = &self.rotation[v];
        let pos = rot
            .iter()
            .position(|&x| x == t)
            .expect("twin listed at its origin");
        rot[(pos + rot.len() - 1) % rot.len()]
    }

    /// Splits the edge of half-edge `h` with a new vertex of the given tint
    /// at the midpoint of its first segment. Coordinates are doubled first so
    /// the midpoint stays integral. Returns the new vertex.
    pub fn subdivide_edge(&mut self, h: usize, tint: Tint) -> usize {
        let dbl = |p: &mut Pt| *p = (2 * p.0, 2 * p.1);
        self.vertices.iter_mut().for_each(|v| dbl(&mut v.pos));
        self.half_edges
            .iter_mut()
            .for_each(|e| e.waypoints.iter_mut().for_each(dbl));
        self.anchors.iter_mut().for_each(|(_, p)| dbl(p));

        let t = self.half_edges[h].twin;
        let a = self.half_edges[h].origin;
        let b = self.half_edges[t].origin;
        let first = self.half_edges[h]
            .waypoints
            .first()
            .copied()
            .unwrap_or(self.vertices[b].pos);
        let from = self.vertices[a].pos;
        let mid = ((from.0 + first.0) / 2, (from.1 + first.1) / 2);
        let x = self.vertices.len();
        self.vertices.push(PlabicVertex { tint, pos: mid });

        // h becomes a -> x, t becomes b -> x; the new pair runs x -> b and x -> a
        let rest: Vec<Pt> = self.half_edges[h].waypoints.drain(..).collect();
        let mut back = rest.clone();
        back.reverse();
        let (hx, tx) = (self.half_edges.len(), self.half_edges.len() + 1);
        let (arc, fwd_h, fwd_t) = (
            self.half_edges[h].arc,
            self.half_edges[h].forward,
            self.half_edges[t].forward,
        );
        self.half_edges.push(HalfEdge {
            origin: x,
            twin: t,
            waypoints: rest,
            arc,
            forward: fwd_h,
        });
        self.half_edges.push(HalfEdge {
            origin: x,
            twin: h,
            waypoints: Vec::new(),
            arc,
            forward: fwd_t,
        });
        self.half_edges[t].waypoints = back;
        self.half_edges[h].twin = tx;
        self.half_edges[t].twin = hx;
        self.rotation.push(vec![hx, tx]);
        self.finish();
        x
    }

    /// Repeatedly removes interior vertices of degree 2, gluing their two
    /// edges into one.
    pub fn simplify(&self) -> PlabicGraph {
        let mut g = self.clone();
        let mut alive_v = vec![true; g.vertices.len()];
        let mut alive_h = vec![true; g.half_edges.len()];
        loop {
            let candidate = (0..g.vertices.len()).find(|&x| {
                alive_v[x] && g.vertices[x].tint != Tint::Boundary && g.rotation[x].len() == 2 && {
                    let h1 = g.rotation[x][0];
                    g.half_edges[h1].twin != g.rotation[x][1]
                }
            });
            let Some(x) = candidate else { break };
            let (h1, h2) = (g.rotation[x][0], g.rotation[x][1]);
            let (t1, t2) = (g.half_edges[h1].twin, g.half_edges[h2].twin);
            let px = g.vertices[x].pos;
            let mut w1 = g.half_edges[t1].waypoints.clone();
            w1.push(px);
            w1.extend(g.half_edges[h2].waypoints.iter().copied());
            let mut w2 = g.half_edges[t2].waypoints.clone();
            w2.push(px);
            w2.extend(g.half_edges[h1].waypoints.iter().copied());
            g.half_edges[t1].waypoints = w1;
            g.half_edges[t1].twin = t2;
            g.half_edges[t2].waypoints = w2;
            g.half_edges[t2].twin = t1;
            alive_v[x] = false;
            alive_h[h1] = false;
            alive_h[h2] = false;
            g.rotation[x].clear();
        }
        g.compact(&alive_v, &alive_h)
    }

    fn compact(&self, alive_v: &[bool], alive_h: &[bool]) -> PlabicGraph {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut hmap = vec![usize::MAX; self.half_edges.len()];
        let mut out = PlabicGraph::new();
        out.anchors = self.anchors.clone();
        for (v, vert) in self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(v, _)| alive_v[v])
        {
            vmap[v] = out.vertices.len();
            out.vertices.push(vert.clone());
            out.rotation.push(Vec::new());
        }
        for (h, _) in self
            .half_edges
            .iter()
            .enumerate()
            .filter(|&(h, _)| alive_h[h])
        {
            hmap[h] = out.half_edges.len();
            out.half_edges.push(self.half_edges[h].clone());
        }
        for he in &mut out.half_edges {
            he.origin = vmap[he.origin];
            he.twin = hmap[he.twin];
        }
        for (v, rot) in self
            .rotation
            .iter()
            .enumerate()
            .filter(|&(v, _)| alive_v[v])
        {
            out.rotation[vmap[v]] = rot.iter().map(|&h| hmap[h]).collect();
        }
        out.boundary = self.boundary.iter().map(|&v| vmap[v]).collect();
        out
    }

    fn polygon(&self, face: &[usize]) -> Vec<Pt> {
        let mut pts = Vec::new();
        for &h in face {
            pts.push(self.vertices[self.half_edges[h].origin].pos);
            pts.extend(self.half_edges[h].waypoints.iter().copied());
        }
        pts
    }

    fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for he in &self.half_edges {
            let (a, b) = (
                find(&mut parent, he.origin),
                find(&mut parent, self.head_of(he)),
            );
            parent[a.max(b)] = a.min(b);
        }
        (0..self.vertices.len())
            .filter(|&v| find(&mut parent, v) == v)
            .count()
    }

    fn head_of(&self, he: &HalfEdge) -> usize {
        self.half_edges[he.twin].origin
    }

    /// Face traversal: orbits of "next half-edge = clockwise neighbour of the
    /// twin". The region outside the disk is split off; faces touching a
    /// boundary arc are flagged.
    pub fn faces(&self) -> Result<FaceSet, PlabicError> {
        if self.vertices.is_empty() {
            return Ok(FaceSet {
                faces: vec![Face {
                    half_edges: Vec::new(),
                    boundary: true,
                    anchors: std::iter::once(VertexId::Origin).collect(),
                    label: VertexId::Origin,
                }],
                face_of: Vec::new(),
            });
        }
        let n_h = self.half_edges.len();
        let mut orbit_of = vec![usize::MAX; n_h];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..n_h {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            while orbit_of[h] == usize::MAX {
                orbit_of[h] = orbits.len();
                cycle.push(h);
                h = self.next_in_face(h);
            }
            orbits.push(cycle);
        }

        let v = self.vertices.len() as i64;
        let e = (n_h / 2) as i64;
        let f = orbits.len() as i64;
        let expected = 1 + self.component_count() as i64;
        if v - e + f != expected {
            return Err(PlabicError::InconsistentEmbedding {
                euler: v - e + f,
                expected,
            });
        }

        let has_arcs = self.half_edges.iter().any(|h| h.arc);
        let areas: Vec<i128> = orbits
            .iter()
            .map(|o| signed_area2(&self.polygon(o)))
            .collect();
        let unbounded = (0..orbits.len()).min_by_key(|&k| areas[k]).unwrap();
        let outside = if has_arcs {
            let h = self
                .half_edges
                .iter()
                .position(|h| h.arc && h.forward)
                .unwrap();
            Some(orbit_of[h])
        } else {
            None
        };

        let mut faces = Vec::new();
        let mut face_of = vec![None; n_h];
        let mut orbit_face = vec![None; orbits.len()];
        for (k, orbit) in orbits.iter().enumerate() {
            if Some(k) == outside {
                continue;
            }
            let boundary = if has_arcs {
                orbit.iter().any(|&h| self.half_edges[h].arc)
            } else {
                k == unbounded
            };
            orbit_face[k] = Some(faces.len());
            for &h in orbit {
                face_of[h] = Some(faces.len());
            }
            faces.push(Face {
                half_edges: orbit.clone(),
                boundary,
                anchors: BTreeSet::new(),
                label: VertexId::Origin,
            });
        }

        let polys: Vec<Vec<Pt>> = faces.iter().map(|f| self.polygon(&f.half_edges)).collect();
        for (id, pt) in &self.anchors {
            let hits: Vec<usize> = (0..faces.len())
                .filter(|&k| winding_number(&polys[k], *pt) == 1)
                .collect();
            let target = match hits.as_slice() {
                [k] => *k,
                [] if !has_arcs => orbit_face[unbounded].unwrap(),
                _ => return Err(PlabicError::AmbiguousAnchor(id.clone())),
            };
            faces[target].anchors.insert(id.clone());
        }
        for (k, face) in faces.iter_mut().enumerate() {
            face.label = face
                .anchors
                .iter()
                .next()
                .cloned()
                .unwrap_or_else(|| VertexId::Label(format!("f{k}")));
        }
        Ok(FaceSet { faces, face_of })
    }

    /// One vertex per face (frozen on the boundary), one arrow per
    /// black-white edge between distinct faces with the black endpoint on
    /// the arrow's left. Opposite arrows cancel; frozen-frozen arrows vanish.
    pub fn dual_quiver<T: Scalar>(&self) -> Result<Quiver<T>, PlabicError> {
        let fs = self.faces()?;
        let mut order: Vec<usize> = (0..fs.faces.len()).collect();
        order.sort_by(|&a, &b| fs.faces[a].label.cmp(&fs.faces[b].label));
        let mut q = Quiver::with_vertices(
            order
                .iter()
                .map(|&k| (fs.faces[k].label.clone(), fs.faces[k].boundary)),
        )?;
        for (h, he) in self.half_edges.iter().enumerate() {
            if he.arc {
                continue;
            }
            let from = self.vertices[he.origin].tint;
            let to = self.vertices[self.head(h)].tint;
            if from != Tint::White || to != Tint::Black {
                continue;
            }
            // face left of white->black, to the face left of black->white
            if let (Some(a), Some(b)) = (fs.face_of[h], fs.face_of[he.twin]) {
                if a != b {
                    q.add_arrows(&fs.faces[a].label, &fs.faces[b].label, 1)?;
                }
            }
        }
        Ok(q)
    }

    /// Graphviz rendering with pinned positions; boundary vertices are
    /// placed on a circle in cyclic order.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph plabic {\n  node [label=\"\", width=0.15, height=0.15];\n");
        let nb = self.boundary.len().max(1) as f64;
        let (cx, cy, radius) = self.frame();
        for (v, vert) in self.vertices.iter().enumerate() {
            let (x, y, style) = match vert.tint {
                Tint::Boundary => {
                    let k = self.boundary.iter().position(|&b| b == v).unwrap() as f64;
                    let t = std::f64::consts::PI / 4.0 - 2.0 * std::f64::consts::PI * k / nb;
                    (cx + radius * t.cos(), cy + radius * t.sin(), "shape=point")
                }
                Tint::Black => (
                    vert.pos.0 as f64,
                    vert.pos.1 as f64,
                    "shape=circle, style=filled, fillcolor=black",
                ),
                Tint::White => (
                    vert.pos.0 as f64,
                    vert.pos.1 as f64,
                    "shape=circle, style=filled, fillcolor=white",
                ),
            };
            let _ = writeln!(
                s,
                "  n{v} [{style}, pos=\"{:.2},{:.2}!\"];",
                x / 8.0,
                y / 8.0
            );
        }
        for (h, he) in self.half_edges.iter().enumerate() {
            if he.arc || h > he.twin {
                continue;
            }
            let _ = writeln!(s, "  n{} -- n{};", he.origin, self.head(h));
        }
        s.push_str("}\n");
        s
    }

    fn frame(&self) -> (f64, f64, f64) {
        let xs = self.vertices.iter().map(|v| v.pos.0);
        let ys = self.vertices.iter().map(|v| v.pos.1);
        let (x0, x1) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
        let (y0, y1) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
        let (cx, cy) = ((x0 + x1) as f64 / 2.0, (y0 + y1) as f64 / 2.0);
        let r = (((x1 - x0).pow(2) + (y1 - y0).pow(2)) as f64).sqrt() / 2.0 + 8.0;
        (cx, cy, r)
    }
}

impl Default for PlabicGraph {
    fn default() -> Self {
        Self::new()
    }
}

fn signed_area2(poly: &[Pt]) -> i128 {
    let n = poly.len();
    (0..n)
        .map(|k| {
            let (a, b) = (poly[k], poly[(k + 1) % n]);
            a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128
        })
        .sum()
}

/// Winding number of a closed polyline around `p`, which must not lie on it.
fn winding_number(poly: &[Pt], p: Pt) -> i32 {
    let n = poly.len();
    let mut wn = 0;
    for k in 0..n {
        let (a, b) = (poly[k], poly[(k + 1) % n]);
        let side =
            (b.0 - a.0) as i128 * (p.1 - a.1) as i128 - (p.0 - a.0) as i128 * (b.1 - a.1) as i128;
        if a.1 <= p.1 {
            if b.1 > p.1 && side > 0 {
                wn += 1;
            }
        } else if b.1 <= p.1 && side < 0 {
            wn -= 1;
        }
    }
    wn
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Boundary walk with the face on the left.
    pub half_edges: Vec<usize>,
    pub boundary: bool,
    pub anchors: BTreeSet<VertexId>,
    pub label: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    /// Face to the left of each half-edge; `None` outside the disk.
    face_of: Vec<Option<usize>>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn boundary_count(&self) -> usize {
        self.faces.iter().filter(|f| f.boundary).count()
    }

    pub fn face_left_of(&self, h: usize) -> Option<usize> {
        self.face_of.get(h).copied().flatten()
    }

    pub fn by_label(&self, id: &VertexId) -> Option<&Face> {
        self.faces.iter().find(|f| &f.label == id)
    }

    /// Debug dump: label, boundary flag, anchors, and the vertex cycle.
    pub fn to_json(&self, graph: &PlabicGraph) -> Value {
        Value::Array(
            self.faces
                .iter()
                .map(|f| {
                    json!({
                        "label": f.label.to_string(),
                        "boundary": f.boundary,
                        "anchors": f.anchors.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                        "cycle": f.half_edges.iter().map(|&h| graph.half_edges[h].origin).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Ports {
    north: Option<usize>,
    east: Option<usize>,
    south: Option<usize>,
    west: Option<usize>,
}

/// Replaces every internal vertex of the Γ-graph by its local gadget, chosen
/// by whether another internal vertex lies above it in its column and
/// whether one lies to its left in its row:
///
/// * neither: a black vertex joined right and down;
/// * left only: a white vertex joined left, right and down;
/// * above only: a black vertex joined up, right and down;
/// * both: a black vertex joined up and right, with a white vertex to its
///   southwest joined left and down.
///
/// Boundary vertices with no line get a white leaf so that every boundary
/// vertex has exactly one edge.
pub fn plabic_graph(gamma: &GammaGraph) -> PlabicGraph {
    assert_eq!(
        gamma.crossing_count(),
        0,
        "Γ-graphs of Le-diagrams have no bare crossings"
    );
    let shape = gamma.shape();
    let mut g = PlabicGraph::new();
    if shape.is_empty() {
        return g;
    }
    let pos = |v: usize| gamma.position(v);
    let mut ports = vec![Ports::default(); gamma.vertices.len()];
    let has_above = |v: usize| {
        gamma
            .edges
            .iter()
            .any(|&(a, b)| b == v && pos(a).0 == pos(b).0)
    };
    let has_left = |v: usize| {
        gamma
            .edges
            .iter()
            .any(|&(a, b)| a == v && pos(a).1 == pos(b).1)
    };

    let mut boundary_plabic = vec![usize::MAX; gamma.vertices.len()];
    for &b in &gamma.boundary {
        boundary_plabic[b] = g.add_vertex(Tint::Boundary, pos(b));
    }
    for (v, kind) in gamma.vertices.iter().enumerate() {
        match kind {
            GammaKind::Internal(_) => {
                let c = pos(v);
                ports[v] = match (has_above(v), has_left(v)) {
                    (false, false) => {
                        let x = g.add_vertex(Tint::Black, c);
                        Ports {
                            east: Some(x),
                            south: Some(x),
                            ..Ports::default()
                        }
                    }
                    (false, true) => {
                        let x = g.add_vertex(Tint::White, c);
                        Ports {
                            east: Some(x),
                            south: Some(x),
                            west: Some(x),
                            north: None,
                        }
                    }
                    (true, false) => {
                        let x = g.add_vertex(Tint::Black, c);
                        Ports {
                            north: Some(x),
                            east: Some(x),
                            south: Some(x),
                            west: None,
                        }
                    }
                    (true, true) => {
                        let b = g.add_vertex(Tint::Black, c);
                        let w = g.add_vertex(Tint::White, (c.0 - 2, c.1 - 2));
                        g.add_edge(b, w, Vec::new());
                        Ports {
                            north: Some(b),
                            east: Some(b),
                            south: Some(w),
                            west: Some(w),
                        }
                    }
                };
            }
            GammaKind::Source(_) | GammaKind::Sink(_) => {
                let p = boundary_plabic[v];
                ports[v] = Ports {
                    north: Some(p),
                    east: Some(p),
                    south: Some(p),
                    west: Some(p),
                };
            }
            GammaKind::Crossing(_) => unreachable!(),
        }
    }
    for &(a, b) in &gamma.edges {
        let vertical = pos(a).0 == pos(b).0;
        let (x, y) = if vertical {
            (ports[a].south.unwrap(), ports[b].north.unwrap())
        } else {
            // horizontal edges run right to left
            (ports[b].east.unwrap(), ports[a].west.unwrap())
        };
        g.add_edge(x, y, Vec::new());
    }
    for &b in &gamma.boundary {
        let p = boundary_plabic[b];
        if g.rotation[p].is_empty() {
            let (x, y) = pos(b);
            let leaf_pos = match gamma.vertices[b] {
                GammaKind::Source(_) => (x - 2, y),
                _ => (x, y + 2),
            };
            let leaf = g.add_vertex(Tint::White, leaf_pos);
            g.add_edge(p, leaf, Vec::new());
        }
    }

    // boundary arcs along the lattice path, then back around the northwest
    let corners = lattice_corners(shape);
    let m = gamma.boundary.len();
    for k in 0..m {
        let a = boundary_plabic[gamma.boundary[k]];
        let b = boundary_plabic[gamma.boundary[(k + 1) % m]];
        let waypoints = if k + 1 < m {
            vec![corners[k + 1]]
        } else {
            let (c, r) = (shape.cols() as i64, shape.rows() as i64);
            vec![
                corners[m],
                (-UNIT, -UNIT * r),
                (-UNIT, UNIT),
                (UNIT * c, UNIT),
                corners[0],
            ]
        };
        g.push_edge(a, b, waypoints, true);
    }

    g.add_anchor(VertexId::Origin, (1, -1));
    for (i, j) in shape.cells() {
        g.add_anchor(
            VertexId::cell(i, j),
            (UNIT * j as i64 - 1, -UNIT * i as i64 + 1),
        );
    }
    g.finish();
    g
}

/// Corners of the lattice path from the upper right to the lower left;
/// step `k` runs from `corners[k]` to `corners[k + 1]`.
fn lattice_corners(shape: &Shape) -> Vec<Pt> {
    let mut pts = vec![(UNIT * shape.cols() as i64, 0)];
    for i in 1..=shape.rows() {
        let x = UNIT * shape.row_len(i) as i64;
        let y = -UNIT * i as i64;
        pts.push((x, y));
        for j in (shape.row_len(i + 1) + 1..=shape.row_len(i)).rev() {
            pts.push((UNIT * (j as i64 - 1), y));
        }
    }
    pts
}

/// The whole plabic route from a diagram to its quiver.
pub fn quiver_via_plabic<T: Scalar>(d: &LeDiagram) -> Result<Quiver<T>, PlabicError> {
    plabic_graph(&gamma_graph(d)).dual_quiver()
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quiver<i64>;

    fn sample() -> LeDiagram {
        LeDiagram::parse_compact("01010/1101/00/01").unwrap()
    }

    fn arrow_set(q: &Q) -> BTreeSet<(String, String, i64)> {
        q.arrows()
            .into_iter()
            .map(|(a, b, m)| (a.to_string(), b.to_string(), m))
            .collect()
    }

    #[test]
    fn gamma_of_sample_diagram() {
        let g = gamma_graph(&sample());
        assert_eq!(g.internal_count(), 6);
        assert_eq!(g.boundary_count(), 9);
        assert_eq!(g.crossing_count(), 0);
        // every internal vertex drains to a sink and is fed by a source
        for (v, kind) in g.vertices().iter().enumerate() {
            if let GammaKind::Internal(_) = kind {
                assert!(matches!(g.vertices()[g.walk_down(v)], GammaKind::Sink(_)));
                assert!(matches!(
                    g.vertices()[g.walk_to_source(v)],
                    GammaKind::Source(_)
                ));
            }
        }
    }

    #[test]
    fn gamma_trivial_cases() {
        let zeros = gamma_graph(&LeDiagram::parse_compact("000/00").unwrap());
        assert_eq!(zeros.internal_count(), 0);
        assert_eq!(zeros.boundary_count(), 5);
        assert!(zeros.edges().is_empty());
        let one = gamma_graph(&LeDiagram::parse("1").unwrap());
        assert_eq!(one.internal_count(), 1);
        assert_eq!(
            one.vertices()
                .iter()
                .filter(|k| matches!(k, GammaKind::Source(_)))
                .count(),
            1
        );
        assert_eq!(
            one.vertices()
                .iter()
                .filter(|k| matches!(k, GammaKind::Sink(_)))
                .count(),
            1
        );
    }

    #[test]
    fn single_box_has_two_faces() {
        let p = plabic_graph(&gamma_graph(&LeDiagram::parse("1").unwrap()));
        let fs = p.faces().unwrap();
        assert_eq!(fs.len(), 2);
        let q: Q = p.dual_quiver().unwrap();
        assert!(q.same_as(&Q::grid(1, 1)));
    }

    #[test]
    fn rectangle_faces_and_quiver() {
        let d = LeDiagram::all_ones(Shape::rectangle(4, 5));
        let p = plabic_graph(&gamma_graph(&d));
        let fs = p.faces().unwrap();
        assert_eq!(fs.len(), 21);
        assert_eq!(fs.boundary_count(), 9);
        let q: Q = p.dual_quiver().unwrap();
        assert!(q.same_as(&Q::grid(4, 5)), "{:?}", arrow_set(&q));
    }

    #[test]
    fn sample_diagram_faces_and_quiver() {
        let p = plabic_graph(&gamma_graph(&sample()));
        let fs = p.faces().unwrap();
        assert_eq!(fs.len(), 7);
        assert_eq!(fs.boundary_count(), 6);
        let q: Q = p.dual_quiver().unwrap();
        assert_eq!(q.mutable_ids(), vec![VertexId::cell(1, 2)]);
        let expected: BTreeSet<_> = [
            ("v1,2", "v0"),
            ("v1,4", "v1,2"),
            ("v2,2", "v1,2"),
            ("v1,2", "v2,4"),
        ]
        .iter()
        .map(|&(a, b)| (a.to_string(), b.to_string(), 1))
        .collect();
        assert_eq!(arrow_set(&q), expected);
    }

    #[test]
    fn empty_diagram_is_single_frozen_vertex() {
        let q: Q = quiver_via_plabic(&LeDiagram::empty()).unwrap();
        assert_eq!(q.ids(), &[VertexId::Origin]);
        assert_eq!(q.is_frozen(&VertexId::Origin), Some(true));
    }

    #[test]
    fn simplify_path() {
        let mut g = PlabicGraph::new();
        let a = g.add_vertex(Tint::Black, (0, 0));
        let x = g.add_vertex(Tint::White, (2, 0));
        let b = g.add_vertex(Tint::Black, (4, 0));
        let c = g.add_vertex(Tint::White, (4, 4));
        let d = g.add_vertex(Tint::White, (0, 4));
        g.add_edge(a, x, vec![]);
        g.add_edge(x, b, vec![]);
        g.add_edge(b, c, vec![]);
        g.add_edge(c, d, vec![]);
        g.add_edge(d, a, vec![]);
        g.finish();
        let s = g.simplify();
        // x, c and d all have degree 2; the cycle collapses to a loop at one vertex
        assert_eq!(s.vertices().len(), 1);
        assert_eq!(s.simplify(), s);
        let mut p = PlabicGraph::new();
        let a = p.add_vertex(Tint::Black, (0, 0));
        let x = p.add_vertex(Tint::White, (2, 0));
        let b = p.add_vertex(Tint::Black, (4, 0));
        p.add_edge(a, x, vec![]);
        p.add_edge(x, b, vec![]);
        p.finish();
        let s = p.simplify();
        assert_eq!(s.vertices().len(), 2);
        assert_eq!(s.edge_count(), 1);
        assert_eq!(s.half_edges()[0].waypoints, vec![(2, 0)]);
    }

    #[test]
    fn subdividing_keeps_faces_and_quiver() {
        let d = sample();
        let p = plabic_graph(&gamma_graph(&d));
        let q: Q = p.dual_quiver().unwrap();
        let mut s = p.clone();
        let edges: Vec<usize> = (0..s.half_edges.len())
            .filter(|&h| !s.half_edges[h].arc)
            .step_by(3)
            .collect();
        for (k, h) in edges.into_iter().enumerate() {
            s.subdivide_edge(h, if k % 2 == 0 { Tint::Black } else { Tint::White });
        }
        assert_eq!(s.faces().unwrap().len(), 7);
        assert!(s.dual_quiver::<i64>().unwrap().same_as(&q));
        let simple = s.simplify();
        assert!(simple.dual_quiver::<i64>().unwrap().same_as(&q));
        assert!(simple.vertices.len() < s.vertices.len());
    }

    #[test]
    fn simplify_leaves_star_alone() {
        let mut g = PlabicGraph::new();
        let c = g.add_vertex(Tint::Black, (0, 0));
        for p in [(2, 0), (0, 2), (-2, -2)] {
            let w = g.add_vertex(Tint::White, p);
            g.add_edge(c, w, vec![]);
        }
        g.finish();
        assert_eq!(g.simplify(), g);
    }

    #[test]
    fn closed_square_has_two_faces() {
        let mut g = PlabicGraph::new();
        let pts = [(0, 0), (4, 0), (4, 4), (0, 4)];
        let vs: Vec<usize> = pts
            .iter()
            .enumerate()
            .map(|(k, &p)| g.add_vertex(if k % 2 == 0 { Tint::Black } else { Tint::White }, p))
            .collect();
        for k in 0..4 {
            g.add_edge(vs[k], vs[(k + 1) % 4], vec![]);
        }
        g.add_anchor(VertexId::Label("inside".into()), (2, 2));
        g.finish();
        let fs = g.faces().unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs.boundary_count(), 1);
        let inner = fs.by_label(&VertexId::Label("inside".into())).unwrap();
        assert!(!inner.boundary);
        let q: Q = g.dual_quiver().unwrap();
        assert!(q.arrows().is_empty());
    }

    #[test]
    fn broken_rotation_fails_euler() {
        let d = LeDiagram::all_ones(Shape::rectangle(2, 2));
        let mut p = plabic_graph(&gamma_graph(&d));
        let v = (0..p.vertices.len())
            .find(|&v| p.rotation[v].len() == 3 && p.vertices[v].tint != Tint::Boundary)
            .unwrap();
        p.rotation[v].swap(0, 1);
        assert!(matches!(
            p.faces(),
            Err(PlabicError::InconsistentEmbedding { .. })
        ));
    }
}

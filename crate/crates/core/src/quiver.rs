//! Quivers with frozen vertices, stored as a skew-symmetric matrix of signed
//! arrow multiplicities.
//!
//! `b(u, w) > 0` means `b(u, w)` arrows `u -> w`. Arrows between two frozen
//! vertices are always dropped. Every operation returns a new quiver.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::scalar::{Overflow, Scalar};
use crate::vertex::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {0} is frozen")]
    FrozenVertex(VertexId),
    #[error("vertex {0} appears twice")]
    DuplicateVertex(VertexId),
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(VertexId, VertexId),
    #[error("matrix has {got} rows/columns but there are {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot merge an empty vertex set")]
    EmptyMerge,
    #[error(transparent)]
    Overflow(#[from] Overflow),
    #[error("malformed quiver JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver<T> {
    ids: Vec<VertexId>,
    frozen: Vec<bool>,
    b: Vec<T>,
}

impl<T: Scalar> Quiver<T> {
    /// Quiver with no arrows.
    pub fn with_vertices(
        vertices: impl IntoIterator<Item = (VertexId, bool)>,
    ) -> Result<Self, QuiverError> {
        let (ids, frozen): (Vec<_>, Vec<_>) = vertices.into_iter().unzip();
        let mut seen = BTreeSet::new();
        for id in &ids {
            if !seen.insert(id) {
                return Err(QuiverError::DuplicateVertex(id.clone()));
            }
        }
        let n = ids.len();
        Ok(Quiver {
            ids,
            frozen,
            b: vec![T::zero(); n * n],
        })
    }

    /// Builds a quiver from vertices and a full matrix. Frozen-frozen
    /// entries are discarded.
    pub fn from_matrix(
        vertices: impl IntoIterator<Item = (VertexId, bool)>,
        matrix: Vec<Vec<T>>,
    ) -> Result<Self, QuiverError> {
        let mut q = Self::with_vertices(vertices)?;
        let n = q.len();
        if matrix.len() != n {
            return Err(QuiverError::DimensionMismatch {
                expected: n,
                got: matrix.len(),
            });
        }
        for (u, row) in matrix.into_iter().enumerate() {
            if row.len() != n {
                return Err(QuiverError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for (w, x) in row.into_iter().enumerate() {
                q.b[u * n + w] = x;
            }
        }
        for u in 0..n {
            for w in u..n {
                if q.b[u * n + w] != -q.b[w * n + u].clone()
                    || (u == w && !q.b[u * n + u].is_zero())
                {
                    return Err(QuiverError::NotSkewSymmetric(
                        q.ids[u].clone(),
                        q.ids[w].clone(),
                    ));
                }
            }
        }
        q.zero_frozen_pairs();
        Ok(q)
    }

    /// Adds `mult` arrows `from -> to` (negative reverses them).
    pub fn add_arrows(
        &mut self,
        from: &VertexId,
        to: &VertexId,
        mult: i64,
    ) -> Result<(), QuiverError> {
        let u = self.require(from)?;
        let w = self.require(to)?;
        if u == w {
            return Ok(());
        }
        let n = self.len();
        let m = T::of_i64(mult);
        self.b[u * n + w] = self.b[u * n + w].add_c(&m)?;
        self.b[w * n + u] = self.b[w * n + u].sub_c(&m)?;
        if self.frozen[u] && self.frozen[w] {
            self.b[u * n + w] = T::zero();
            self.b[w * n + u] = T::zero();
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn index_of(&self, id: &VertexId) -> Option<usize> {
        self.ids.iter().position(|v| v == id)
    }

    fn require(&self, id: &VertexId) -> Result<usize, QuiverError> {
        self.index_of(id)
            .ok_or_else(|| QuiverError::UnknownVertex(id.clone()))
    }

    pub fn contains(&self, id: &VertexId) -> bool {
        self.index_of(id).is_some()
    }

    pub fn is_frozen_at(&self, idx: usize) -> bool {
        self.frozen[idx]
    }

    pub fn is_frozen(&self, id: &VertexId) -> Option<bool> {
        self.index_of(id).map(|i| self.frozen[i])
    }

    pub fn frozen_flags(&self) -> &[bool] {
        &self.frozen
    }

    pub fn mutable_ids(&self) -> Vec<VertexId> {
        self.ids
            .iter()
            .zip(&self.frozen)
            .filter(|(_, &f)| !f)
            .map(|(v, _)| v.clone())
            .collect()
    }

    pub fn mutable_count(&self) -> usize {
        self.frozen.iter().filter(|&&f| !f).count()
    }

    /// Entry by position.
    pub fn at(&self, u: usize, w: usize) -> &T {
        &self.b[u * self.len() + w]
    }

    /// Signed multiplicity of arrows `from -> to`; zero for unknown vertices.
    pub fn arrows_between(&self, from: &VertexId, to: &VertexId) -> T {
        match (self.index_of(from), self.index_of(to)) {
            (Some(u), Some(w)) => self.at(u, w).clone(),
            _ => T::zero(),
        }
    }

    pub fn matrix(&self) -> Vec<Vec<T>> {
        let n = self.len();
        (0..n)
            .map(|u| self.b[u * n..(u + 1) * n].to_vec())
            .collect()
    }

    pub(crate) fn raw(&self) -> &[T] {
        &self.b
    }

    /// Every positive entry as `(from, to, multiplicity)`.
    pub fn arrows(&self) -> Vec<(VertexId, VertexId, T)> {
        let n = self.len();
        let mut out = Vec::new();
        for u in 0..n {
            for w in 0..n {
                let x = &self.b[u * n + w];
                if x.is_positive() {
                    out.push((self.ids[u].clone(), self.ids[w].clone(), x.clone()));
                }
            }
        }
        out
    }

    /// Total number of arrows counted with multiplicity.
    pub fn arrow_count(&self) -> T {
        self.b
            .iter()
            .filter(|x| x.is_positive())
            .fold(T::zero(), |acc, x| acc + x.clone())
    }

    fn zero_frozen_pairs(&mut self) {
        let n = self.len();
        for u in 0..n {
            if !self.frozen[u] {
                continue;
            }
            for w in 0..n {
                if self.frozen[w] {
                    self.b[u * n + w] = T::zero();
                }
            }
        }
    }

    fn debug_check(&self) {
        if cfg!(debug_assertions) {
            let n = self.len();
            for u in 0..n {
                debug_assert!(self.b[u * n + u].is_zero());
                for w in 0..n {
                    debug_assert_eq!(self.b[u * n + w], -self.b[w * n + u].clone());
                    if self.frozen[u] && self.frozen[w] {
                        debug_assert!(self.b[u * n + w].is_zero());
                    }
                }
            }
        }
    }

    /// The rectangular grid quiver of the all-ones `rows x cols` diagram.
    ///
    /// Vertices are `v0` followed by `v{i},{j}` in reading order. The last
    /// row, the last column and `v0` are frozen.
    pub fn grid(rows: usize, cols: usize) -> Self {
        if rows == 0 || cols == 0 {
            return Self::with_vertices([(VertexId::Origin, true)]).unwrap();
        }
        let mut verts = vec![(VertexId::Origin, true)];
        for i in 1..=rows {
            for j in 1..=cols {
                verts.push((VertexId::cell(i, j), i == rows || j == cols));
            }
        }
        let mut q = Self::with_vertices(verts).unwrap();
        let v = VertexId::cell;
        q.add_arrows(&v(1, 1), &VertexId::Origin, 1).unwrap();
        for i in 1..=rows {
            for j in 1..=cols {
                if i < rows && j >= 2 {
                    q.add_arrows(&v(i, j), &v(i, j - 1), 1).unwrap();
                }
                if i >= 2 && j < cols {
                    q.add_arrows(&v(i, j), &v(i - 1, j), 1).unwrap();
                }
                if i < rows && j < cols {
                    q.add_arrows(&v(i, j), &v(i + 1, j + 1), 1).unwrap();
                }
            }
        }
        q.debug_check();
        q
    }

    /// Mutation at a mutable vertex.
    pub fn mutate(&self, k: &VertexId) -> Result<Self, QuiverError> {
        let k = self.require(k)?;
        if self.frozen[k] {
            return Err(QuiverError::FrozenVertex(self.ids[k].clone()));
        }
        let mut out = self.clone();
        out.mutate_in_place(k)?;
        Ok(out)
    }

    /// Mutation by position; the caller guarantees `k` is mutable.
    pub(crate) fn mutate_in_place(&mut self, k: usize) -> Result<(), Overflow> {
        let n = self.len();
        let old = self.b.clone();
        for u in 0..n {
            for w in 0..n {
                let idx = u * n + w;
                if u == k || w == k {
                    self.b[idx] = old[idx].neg_c()?;
                    continue;
                }
                let uk = &old[u * n + k];
                let kw = &old[k * n + w];
                let prod = uk.mul_c(kw)?;
                if prod.is_positive() {
                    self.b[idx] = if uk.is_positive() {
                        old[idx].add_c(&prod)?
                    } else {
                        old[idx].sub_c(&prod)?
                    };
                }
            }
        }
        self.zero_frozen_pairs();
        self.debug_check();
        Ok(())
    }

    /// Full subquiver on the vertices not in `remove`. Frozen flags are kept.
    pub fn delete_vertices<'a>(
        &self,
        remove: impl IntoIterator<Item = &'a VertexId>,
    ) -> Result<Self, QuiverError> {
        let mut drop = vec![false; self.len()];
        for id in remove {
            drop[self.require(id)?] = true;
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&i| !drop[i]).collect();
        Ok(self.subquiver(&keep))
    }

    fn subquiver(&self, keep: &[usize]) -> Self {
        let n = self.len();
        let m = keep.len();
        let mut b = Vec::with_capacity(m * m);
        for &u in keep {
            for &w in keep {
                b.push(self.b[u * n + w].clone());
            }
        }
        Quiver {
            ids: keep.iter().map(|&i| self.ids[i].clone()).collect(),
            frozen: keep.iter().map(|&i| self.frozen[i]).collect(),
            b,
        }
    }

    /// Resets frozen flags from a predicate, then drops frozen-frozen arrows.
    pub fn refreeze(&self, frozen: impl Fn(&VertexId) -> bool) -> Self {
        let mut out = self.clone();
        for (f, id) in out.frozen.iter_mut().zip(&self.ids) {
            *f = frozen(id);
        }
        out.zero_frozen_pairs();
        out
    }

    /// Marks the given vertices frozen (others keep their flags).
    pub fn freeze<'a>(
        &self,
        ids: impl IntoIterator<Item = &'a VertexId>,
    ) -> Result<Self, QuiverError> {
        let mut out = self.clone();
        for id in ids {
            let i = self.require(id)?;
            out.frozen[i] = true;
        }
        out.zero_frozen_pairs();
        Ok(out)
    }

    /// Collapses `set` to one vertex named by its least member.
    ///
    /// The new row is the sum of the members' rows, which cancels loops and
    /// 2-cycles. The vertex is frozen iff some member was; frozen-frozen
    /// arrows are dropped. It takes the position of the earliest member.
    pub fn merge_vertices<'a>(
        &self,
        set: impl IntoIterator<Item = &'a VertexId>,
    ) -> Result<Self, QuiverError> {
        let mut member = vec![false; self.len()];
        for id in set {
            member[self.require(id)?] = true;
        }
        let first = member
            .iter()
            .position(|&m| m)
            .ok_or(QuiverError::EmptyMerge)?;
        let n = self.len();
        let name = (0..n)
            .filter(|&i| member[i])
            .map(|i| &self.ids[i])
            .min()
            .unwrap()
            .clone();
        let frozen_new = (0..n).any(|i| member[i] && self.frozen[i]);

        // new positions: every non-member keeps order, the merged vertex sits at `first`
        let keep: Vec<usize> = (0..n).filter(|&i| !member[i] || i == first).collect();
        let m = keep.len();
        let mut b = vec![T::zero(); m * m];
        let mut row_of_merged = vec![T::zero(); n];
        for u in (0..n).filter(|&u| member[u]) {
            for w in 0..n {
                if !member[w] {
                    row_of_merged[w] = row_of_merged[w].add_c(&self.b[u * n + w])?;
                }
            }
        }
        for (a, &u) in keep.iter().enumerate() {
            for (c, &w) in keep.iter().enumerate() {
                b[a * m + c] = match (u == first, w == first) {
                    (true, true) => T::zero(),
                    (true, false) => row_of_merged[w].clone(),
                    (false, true) => row_of_merged[u].neg_c()?,
                    (false, false) => self.b[u * n + w].clone(),
                };
            }
        }
        let mut out = Quiver {
            ids: keep
                .iter()
                .map(|&i| {
                    if i == first {
                        name.clone()
                    } else {
                        self.ids[i].clone()
                    }
                })
                .collect(),
            frozen: keep
                .iter()
                .map(|&i| {
                    if i == first {
                        frozen_new
                    } else {
                        self.frozen[i]
                    }
                })
                .collect(),
            b,
        };
        out.zero_frozen_pairs();
        out.debug_check();
        Ok(out)
    }

    /// Full subquiver on the mutable vertices.
    pub fn mutable_part(&self) -> Self {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| !self.frozen[i]).collect();
        self.subquiver(&keep)
    }

    /// Same quiver with vertices renamed through `f`.
    pub fn relabel(&self, f: impl Fn(&VertexId) -> VertexId) -> Result<Self, QuiverError> {
        let mut out = self.clone();
        out.ids = self.ids.iter().map(f).collect();
        let mut seen = BTreeSet::new();
        for id in &out.ids {
            if !seen.insert(id) {
                return Err(QuiverError::DuplicateVertex(id.clone()));
            }
        }
        Ok(out)
    }

    /// Same quiver with vertices listed in sorted id order.
    pub fn sorted(&self) -> Self {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.ids[a].cmp(&self.ids[b]));
        self.subquiver(&order)
    }

    /// Label-exact equality irrespective of vertex order.
    pub fn same_as(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }

    /// Converts entries to another scalar type.
    pub fn cast<U: Scalar>(&self) -> Result<Quiver<U>, Overflow> {
        let b = self
            .b
            .iter()
            .map(|x| x.to_string().parse::<U>().map_err(|_| Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Quiver {
            ids: self.ids.clone(),
            frozen: self.frozen.clone(),
            b,
        })
    }

    /// Finds a vertex bijection `self -> other` preserving frozen flags and
    /// every matrix entry, by backtracking over invariant-compatible
    /// candidates.
    pub fn isomorphism(&self, other: &Self) -> Option<BTreeMap<VertexId, VertexId>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |q: &Self, u: usize| {
            let mut row: Vec<T> = (0..n)
                .map(|w| q.at(u, w).clone())
                .filter(|x| !x.is_zero())
                .collect();
            row.sort();
            (q.frozen[u], row)
        };
        let sig_a: Vec<_> = (0..n).map(|u| sig(self, u)).collect();
        let sig_b: Vec<_> = (0..n).map(|u| sig(other, u)).collect();
        {
            let mut sa = sig_a.clone();
            let mut sb = sig_b.clone();
            sa.sort();
            sb.sort();
            if sa != sb {
                return None;
            }
        }
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|u| (0..n).filter(|&w| sig_a[u] == sig_b[w]).collect())
            .collect();

        // order: fewest candidates first, then prefer vertices adjacent to placed ones
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        for _ in 0..n {
            let next = (0..n)
                .filter(|&u| !placed[u])
                .max_by_key(|&u| {
                    let links = order.iter().filter(|&&p| !self.at(u, p).is_zero()).count();
                    (
                        links,
                        std::cmp::Reverse(candidates[u].len()),
                        std::cmp::Reverse(u),
                    )
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }

        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend_iso(other, &order, 0, &candidates, &mut map, &mut used) {
            Some(
                (0..n)
                    .map(|u| (self.ids[u].clone(), other.ids[map[u]].clone()))
                    .collect(),
            )
        } else {
            None
        }
    }

    fn extend_iso(
        &self,
        other: &Self,
        order: &[usize],
        depth: usize,
        candidates: &[Vec<usize>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&u) = order.get(depth) else {
            return true;
        };
        for &w in &candidates[u] {
            if used[w] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&p| self.at(u, p) == other.at(w, map[p]));
            if !consistent {
                continue;
            }
            map[u] = w;
            used[w] = true;
            if self.extend_iso(other, order, depth + 1, candidates, map, used) {
                return true;
            }
            used[w] = false;
            map[u] = usize::MAX;
        }
        false
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.isomorphism(other).is_some()
    }

    /// `{"vertices":[{"id":..,"frozen":..}],"b":[[..]]}`; entries outside the
    /// i64 range are written as decimal strings.
    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .ids
            .iter()
            .zip(&self.frozen)
            .map(|(id, f)| json!({"id": id.to_string(), "frozen": f}))
            .collect();
        let b: Vec<Value> = self
            .matrix()
            .into_iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|x| match x.to_i64() {
                            Some(v) => json!(v),
                            None => json!(x.to_string()),
                        })
                        .collect(),
                )
            })
            .collect();
        json!({"vertices": vertices, "b": b})
    }

    pub fn from_json(value: &Value) -> Result<Self, QuiverError> {
        let bad = |m: &str| QuiverError::Json(m.to_string());
        let verts = value
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"vertices\" array"))?;
        let mut vs = Vec::with_capacity(verts.len());
        for v in verts {
            let id = v
                .get("id")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("vertex without string \"id\""))?;
            let frozen = match v.get("frozen") {
                None => false,
                Some(f) => f
                    .as_bool()
                    .ok_or_else(|| bad("\"frozen\" must be a boolean"))?,
            };
            vs.push((id.parse::<VertexId>().unwrap(), frozen));
        }
        let rows = value
            .get("b")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"b\" matrix"))?;
        let mut matrix = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| bad("matrix rows must be arrays"))?;
            let mut out = Vec::with_capacity(row.len());
            for x in row {
                let parsed = match x {
                    Value::Number(num) => num.as_i64().map(T::of_i64),
                    Value::String(s) => s.parse::<T>().ok(),
                    _ => None,
                };
                out.push(parsed.ok_or_else(|| bad("matrix entries must be integers"))?);
            }
            matrix.push(out);
        }
        Self::from_matrix(vs, matrix)
    }

    pub fn parse_json(text: &str) -> Result<Self, QuiverError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| QuiverError::Json(e.to_string()))?;
        Self::from_json(&value)
    }

    /// Graphviz rendering: frozen vertices boxed, multiplicities above one
    /// written on the arrow.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for (id, &f) in self.ids.iter().zip(&self.frozen) {
            let shape = if f { "box" } else { "circle" };
            let _ = writeln!(s, "  \"{id}\" [shape={shape}];");
        }
        for (u, w, m) in self.arrows() {
            if m.is_one() {
                let _ = writeln!(s, "  \"{u}\" -> \"{w}\";");
            } else {
                let _ = writeln!(s, "  \"{u}\" -> \"{w}\" [label=\"{m}\"];");
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = Quiver<i64>;

    fn v(s: &str) -> VertexId {
        VertexId::from(s)
    }

    fn arrow_set(q: &Q) -> BTreeSet<(String, String, i64)> {
        q.arrows()
            .into_iter()
            .map(|(a, b, m)| (a.to_string(), b.to_string(), m))
            .collect()
    }

    fn set(list: &[(&str, &str)]) -> BTreeSet<(String, String, i64)> {
        list.iter()
            .map(|&(a, b)| (a.to_string(), b.to_string(), 1))
            .collect()
    }

    fn path(n: usize) -> Q {
        let mut q = Q::with_vertices((1..=n).map(|i| (v(&i.to_string()), false))).unwrap();
        for i in 1..n {
            q.add_arrows(&v(&i.to_string()), &v(&(i + 1).to_string()), 1)
                .unwrap();
        }
        q
    }

    #[test]
    fn grid_two_by_two() {
        let q = Q::grid(2, 2);
        assert_eq!(q.mutable_ids(), vec![v("v1,1")]);
        assert_eq!(
            arrow_set(&q),
            set(&[
                ("v1,1", "v0"),
                ("v1,2", "v1,1"),
                ("v2,1", "v1,1"),
                ("v1,1", "v2,2")
            ])
        );
    }

    #[test]
    fn grid_degenerate() {
        let q = Q::grid(1, 5);
        assert_eq!(q.len(), 6);
        assert_eq!(q.mutable_count(), 0);
        assert!(q.arrows().is_empty());
        let z = Q::grid(0, 3);
        assert_eq!(z.ids(), &[VertexId::Origin]);
        assert_eq!(z.is_frozen(&VertexId::Origin), Some(true));
    }

    #[test]
    fn grid_four_by_five_counts() {
        let q = Q::grid(4, 5);
        assert_eq!(q.len(), 21);
        assert_eq!(q.mutable_count(), 12);
        assert_eq!(q.arrow_count(), 37);
    }

    #[test]
    fn mutate_single_arrow() {
        let q = path(2);
        let m = q.mutate(&v("2")).unwrap();
        assert_eq!(arrow_set(&m), set(&[("2", "1")]));
    }

    #[test]
    fn mutate_path_of_three() {
        let m = path(3).mutate(&v("2")).unwrap();
        assert_eq!(arrow_set(&m), set(&[("1", "3"), ("2", "1"), ("3", "2")]));
    }

    #[test]
    fn mutate_square_cancels_two_cycles() {
        let mut q = Q::with_vertices(["v11", "v12", "v21", "v22"].map(|s| (v(s), false))).unwrap();
        for (a, b) in [
            ("v12", "v11"),
            ("v21", "v11"),
            ("v11", "v22"),
            ("v22", "v12"),
            ("v22", "v21"),
        ] {
            q.add_arrows(&v(a), &v(b), 1).unwrap();
        }
        let m = q.mutate(&v("v11")).unwrap();
        assert_eq!(
            arrow_set(&m),
            set(&[("v11", "v12"), ("v11", "v21"), ("v22", "v11")])
        );
    }

    #[test]
    fn mutate_errors() {
        let q = Q::grid(2, 2);
        assert_eq!(
            q.mutate(&VertexId::Origin),
            Err(QuiverError::FrozenVertex(VertexId::Origin))
        );
        assert_eq!(q.mutate(&v("zz")), Err(QuiverError::UnknownVertex(v("zz"))));
    }

    #[test]
    fn mutation_overflow_is_reported() {
        let mut q = Q::with_vertices([(v("a"), false), (v("b"), false), (v("c"), false)]).unwrap();
        q.add_arrows(&v("a"), &v("b"), i64::MAX / 2).unwrap();
        q.add_arrows(&v("b"), &v("c"), 4).unwrap();
        assert_eq!(q.mutate(&v("b")), Err(QuiverError::Overflow(Overflow)));
        let big: Quiver<BigInt> = q.cast().unwrap();
        assert!(big.mutate(&v("b")).is_ok());
    }

    #[test]
    fn delete_and_refreeze() {
        let q = Q::grid(2, 2);
        let d = q.delete_vertices([&v("v2,2")]).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.mutable_count(), 1);
        let r = d.refreeze(|_| true);
        assert_eq!(r.mutable_count(), 0);
        assert!(r.arrows().is_empty());
        let all: Vec<VertexId> = q.ids().to_vec();
        assert!(q.delete_vertices(all.iter()).unwrap().is_empty());
        assert_eq!(
            q.delete_vertices([&v("nope")]),
            Err(QuiverError::UnknownVertex(v("nope")))
        );
    }

    #[test]
    fn merge_cancels_two_cycle() {
        let mut q = Q::with_vertices([(v("a"), false), (v("x"), false), (v("y"), false)]).unwrap();
        q.add_arrows(&v("a"), &v("x"), 1).unwrap();
        q.add_arrows(&v("y"), &v("a"), 1).unwrap();
        let m = q.merge_vertices([&v("x"), &v("y")]).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.arrows().is_empty());
        let single = q.merge_vertices([&v("x")]).unwrap();
        assert_eq!(single, q);
        assert_eq!(
            q.merge_vertices(std::iter::empty()),
            Err(QuiverError::EmptyMerge)
        );
    }

    #[test]
    fn merge_frozen_member_freezes() {
        let mut q = Q::with_vertices([
            (v("a"), false),
            (v("f"), true),
            (v("m"), false),
            (v("g"), true),
        ])
        .unwrap();
        q.add_arrows(&v("a"), &v("m"), 1).unwrap();
        q.add_arrows(&v("m"), &v("g"), 1).unwrap();
        let m = q.merge_vertices([&v("f"), &v("m")]).unwrap();
        assert_eq!(m.is_frozen(&v("f")), Some(true));
        assert_eq!(arrow_set(&m), set(&[("a", "f")]));
    }

    #[test]
    fn mutable_part_matches_deletion() {
        let q = Q::grid(3, 4);
        let frozen: Vec<VertexId> = q
            .ids()
            .iter()
            .filter(|id| q.is_frozen(id) == Some(true))
            .cloned()
            .collect();
        assert_eq!(q.mutable_part(), q.delete_vertices(frozen.iter()).unwrap());
        assert_eq!(Q::grid(2, 2).mutable_part().ids(), &[v("v1,1")]);
        assert!(Q::grid(1, 5).mutable_part().is_empty());
    }

    #[test]
    fn isomorphism_cases() {
        let a = path(2);
        let b = a
            .relabel(|id| if id == &v("1") { v("2") } else { v("1") })
            .unwrap();
        let iso = a.isomorphism(&b).unwrap();
        assert_eq!(iso[&v("1")], v("2"));
        let isolated = Q::with_vertices([(v("1"), false), (v("2"), false)]).unwrap();
        assert!(a.isomorphism(&isolated).is_none());
        let g = Q::grid(3, 4);
        let renamed = g.relabel(|id| VertexId::Label(format!("x{id}"))).unwrap();
        assert!(g.is_isomorphic(&renamed));
        let frozen_moved = g.refreeze(|_| true);
        assert!(!g.is_isomorphic(&frozen_moved));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let q = Q::grid(3, 3);
        let back = Q::from_json(&q.to_json()).unwrap();
        assert_eq!(back, q);
        assert!(matches!(
            Q::parse_json("{\"vertices\":[]}"),
            Err(QuiverError::Json(_))
        ));
        let bad = r#"{"vertices":[{"id":"a","frozen":false},{"id":"b","frozen":false}],"b":[[0,1],[1,0]]}"#;
        assert!(matches!(
            Q::parse_json(bad),
            Err(QuiverError::NotSkewSymmetric(_, _))
        ));
        let huge = r#"{"vertices":[{"id":"a","frozen":false},{"id":"b","frozen":false}],
            "b":[[0,"100000000000000000000"],["-100000000000000000000",0]]}"#;
        let big = Quiver::<BigInt>::parse_json(huge).unwrap();
        assert_eq!(big.to_json()["b"][0][1], json!("100000000000000000000"));
    }

    #[test]
    fn dot_output() {
        let mut q = Q::with_vertices([(v("a"), false), (v("b"), true)]).unwrap();
        q.add_arrows(&v("a"), &v("b"), 2).unwrap();
        let dot = q.to_dot();
        assert!(dot.contains("\"b\" [shape=box]"));
        assert!(dot.contains("\"a\" -> \"b\" [label=\"2\"]"));
    }
}

//! Le-diagrams: partitions with a 0/1 filling in which every 0 has only 0s
//! to its left or only 0s above it.
//!
//! Boxes are addressed as `(row, col)`, both 1-based, rows counted from the
//! top. The text format is one line of `0`/`1` characters per row, top row
//! first; the compact form joins the rows with `/`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vertex::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LeError {
    #[error("row {row} is longer than the row above it")]
    NotAPartition { row: usize },
    #[error("row {row} is empty")]
    EmptyRow { row: usize },
    #[error("unexpected character {ch:?} in row {row}")]
    BadChar { row: usize, ch: char },
    #[error("Le-property fails at box ({}, {})", .0.0, .0.1)]
    LeViolation((usize, usize)),
    #[error("box ({}, {}) is not in the shape", .0.0, .0.1)]
    OutOfShape((usize, usize)),
    #[error("box ({}, {}) is not filled with 0", .0.0, .0.1)]
    BoxNotZero((usize, usize)),
}

/// Box coordinate `(row, col)`, 1-based.
pub type Cell = (usize, usize);

/// A partition drawn as a Young diagram, top row first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    row_lengths: Vec<usize>,
}

impl Shape {
    pub fn new(row_lengths: Vec<usize>) -> Result<Self, LeError> {
        for (idx, &len) in row_lengths.iter().enumerate() {
            if len == 0 {
                return Err(LeError::EmptyRow { row: idx + 1 });
            }
            if idx > 0 && len > row_lengths[idx - 1] {
                return Err(LeError::NotAPartition { row: idx + 1 });
            }
        }
        Ok(Shape { row_lengths })
    }

    pub fn empty() -> Self {
        Shape {
            row_lengths: Vec::new(),
        }
    }

    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if rows == 0 || cols == 0 {
            return Self::empty();
        }
        Shape {
            row_lengths: vec![cols; rows],
        }
    }

    pub fn row_lengths(&self) -> &[usize] {
        &self.row_lengths
    }

    /// Number of nonempty rows.
    pub fn rows(&self) -> usize {
        self.row_lengths.len()
    }

    /// Length of the first row.
    pub fn cols(&self) -> usize {
        self.row_lengths.first().copied().unwrap_or(0)
    }

    pub fn row_len(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.row_lengths.get(row - 1).copied().unwrap_or(0)
    }

    /// Length of column `col` (the conjugate partition).
    pub fn col_len(&self, col: usize) -> usize {
        if col == 0 {
            return 0;
        }
        self.row_lengths.iter().take_while(|&&l| l >= col).count()
    }

    pub fn contains(&self, (row, col): Cell) -> bool {
        row >= 1 && col >= 1 && col <= self.row_len(row)
    }

    pub fn size(&self) -> usize {
        self.row_lengths.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.row_lengths.is_empty()
    }

    /// Boxes in reading order (top to bottom, left to right).
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.row_lengths
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| (i + 1, j)))
    }

    /// All partitions fitting in a `rows x cols` box, lexicographic in their
    /// row-length vectors (so `[] < [1] < [1,1] < [2] < ...`).
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Shape> {
        fn go(rows: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Shape>) {
            out.push(Shape {
                row_lengths: cur.clone(),
            });
            if cur.len() == rows {
                return;
            }
            for p in 1..=max_part {
                cur.push(p);
                go(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cols, &mut Vec::new(), &mut out);
        out
    }
}

/// Which of the three mutually exclusive configurations a 0-box is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroCase {
    /// Everything to the left is 0 and some box above is 1.
    Vertical,
    /// Everything above is 0 and some box to the left is 1.
    Horizontal,
    /// Everything above and to the left is 0.
    Hook,
}

/// Vertex set merged when a box is filled with 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeSet {
    pub zero_box: Cell,
    pub case: ZeroCase,
    pub members: BTreeSet<VertexId>,
}

/// Outcome of checking a filling against the Le-property.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Cell>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every 0-box of `filling` (rows of booleans, `true` = 1) against the
/// Le-property and lists the offending boxes in reading order.
///
/// The filling must have one entry per box of `shape`.
pub fn validate(shape: &Shape, filling: &[Vec<bool>]) -> ValidationReport {
    assert_eq!(
        filling.len(),
        shape.rows(),
        "filling must be total on the shape"
    );
    let mut one_above = vec![false; shape.cols() + 1];
    let mut violations = Vec::new();
    for (i, row) in filling.iter().enumerate() {
        assert_eq!(
            row.len(),
            shape.row_len(i + 1),
            "filling must be total on the shape"
        );
        let mut one_left = false;
        for (j, &bit) in row.iter().enumerate() {
            if !bit && one_left && one_above[j + 1] {
                violations.push((i + 1, j + 1));
            }
            if bit {
                one_left = true;
                one_above[j + 1] = true;
            }
        }
    }
    ValidationReport { violations }
}

/// A validated Le-diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeDiagram {
    shape: Shape,
    filling: Vec<Vec<bool>>,
}

impl LeDiagram {
    pub fn new(shape: Shape, filling: Vec<Vec<bool>>) -> Result<Self, LeError> {
        if filling.len() != shape.rows()
            || filling
                .iter()
                .enumerate()
                .any(|(i, r)| r.len() != shape.row_len(i + 1))
        {
            return Err(LeError::NotAPartition {
                row: filling.len().min(shape.rows()) + 1,
            });
        }
        let report = validate(&shape, &filling);
        if let Some(&cell) = report.violations.first() {
            return Err(LeError::LeViolation(cell));
        }
        Ok(LeDiagram { shape, filling })
    }

    /// Builds a diagram from rows of bits, deriving the shape from the row
    /// lengths.
    pub fn from_rows(rows: Vec<Vec<bool>>) -> Result<Self, LeError> {
        let shape = Shape::new(rows.iter().map(Vec::len).collect())?;
        Self::new(shape, rows)
    }

    pub fn all_ones(shape: Shape) -> Self {
        let filling = shape.row_lengths().iter().map(|&l| vec![true; l]).collect();
        LeDiagram { shape, filling }
    }

    pub fn empty() -> Self {
        LeDiagram {
            shape: Shape::empty(),
            filling: Vec::new(),
        }
    }

    /// Parses newline-separated rows of `0`/`1`. A single trailing newline is
    /// ignored and the empty string is the diagram of the empty partition.
    pub fn parse(text: &str) -> Result<Self, LeError> {
        let text = text.strip_suffix('\n').unwrap_or(text);
        if text.is_empty() {
            return Ok(Self::empty());
        }
        Self::parse_rows(text.split('\n'))
    }

    /// Parses the single-line form with `/` between rows.
    pub fn parse_compact(text: &str) -> Result<Self, LeError> {
        let text = text.trim();
        if text.is_empty() || text == "-" {
            return Ok(Self::empty());
        }
        Self::parse_rows(text.split('/'))
    }

    fn parse_rows<'a>(lines: impl Iterator<Item = &'a str>) -> Result<Self, LeError> {
        let mut rows = Vec::new();
        for (idx, line) in lines.enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            let row = line
                .chars()
                .map(|ch| match ch {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(LeError::BadChar { row: idx + 1, ch }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Self::from_rows(rows)
    }

    pub fn to_compact(&self) -> String {
        self.row_strings().join("/")
    }

    fn row_strings(&self) -> Vec<String> {
        self.filling
            .iter()
            .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn rows(&self) -> usize {
        self.shape.rows()
    }

    pub fn cols(&self) -> usize {
        self.shape.cols()
    }

    pub fn filling(&self) -> &[Vec<bool>] {
        &self.filling
    }

    /// Filling at a box; `None` outside the shape.
    pub fn get(&self, (row, col): Cell) -> Option<bool> {
        if !self.shape.contains((row, col)) {
            return None;
        }
        Some(self.filling[row - 1][col - 1])
    }

    pub fn is_one(&self, cell: Cell) -> bool {
        self.get(cell) == Some(true)
    }

    pub fn ones(&self) -> impl Iterator<Item = Cell> + '_ {
        self.shape.cells().filter(|&c| self.is_one(c))
    }

    pub fn zeros(&self) -> impl Iterator<Item = Cell> + '_ {
        self.shape.cells().filter(|&c| self.get(c) == Some(false))
    }

    fn require_zero(&self, cell: Cell) -> Result<(), LeError> {
        match self.get(cell) {
            None => Err(LeError::OutOfShape(cell)),
            Some(true) => Err(LeError::BoxNotZero(cell)),
            Some(false) => Ok(()),
        }
    }

    /// Classifies a 0-box. Empty ranges count as all-zero.
    pub fn zero_box_case(&self, cell: Cell) -> Result<ZeroCase, LeError> {
        self.require_zero(cell)?;
        let (i, j) = cell;
        let left_zero = (1..j).all(|jj| !self.is_one((i, jj)));
        let above_zero = (1..i).all(|ii| !self.is_one((ii, j)));
        match (left_zero, above_zero) {
            (true, true) => Ok(ZeroCase::Hook),
            (true, false) => Ok(ZeroCase::Vertical),
            (false, true) => Ok(ZeroCase::Horizontal),
            (false, false) => Err(LeError::LeViolation(cell)),
        }
    }

    /// The set of vertices merged when `cell` holds a 0.
    pub fn merge_set(&self, cell: Cell) -> Result<MergeSet, LeError> {
        let case = self.zero_box_case(cell)?;
        let (i, j) = cell;
        let members: BTreeSet<VertexId> = match case {
            ZeroCase::Vertical => {
                let top = (1..i)
                    .rev()
                    .find(|&ii| self.is_one((ii, j)))
                    .expect("some 1 above");
                (top..=i).map(|ii| VertexId::cell(ii, j)).collect()
            }
            ZeroCase::Horizontal => {
                let left = (1..j)
                    .rev()
                    .find(|&jj| self.is_one((i, jj)))
                    .expect("some 1 to the left");
                (left..=j).map(|jj| VertexId::cell(i, jj)).collect()
            }
            ZeroCase::Hook => {
                // the box joins the face northwest of it; index 0 stands for v0
                let at = |a: usize, b: usize| {
                    if a == 0 || b == 0 {
                        VertexId::Origin
                    } else {
                        VertexId::cell(a, b)
                    }
                };
                [at(i, j), at(i - 1, j), at(i, j - 1), at(i - 1, j - 1)]
                    .into_iter()
                    .collect()
            }
        };
        Ok(MergeSet {
            zero_box: cell,
            case,
            members,
        })
    }

    pub fn merge_sets(&self) -> Vec<MergeSet> {
        self.zeros()
            .map(|c| self.merge_set(c).expect("zero box of a valid diagram"))
            .collect()
    }

    /// Partition of `{v0} ∪ {v_ij}` into the classes generated by all merge
    /// sets, each class sorted, classes ordered by their least member.
    pub fn merge_clusters(&self) -> Vec<BTreeSet<VertexId>> {
        let sets: Vec<Vec<VertexId>> = self
            .merge_sets()
            .into_iter()
            .map(|m| m.members.into_iter().collect())
            .collect();
        self.clusters_from_sets(sets.iter().map(|s| s.as_slice()))
    }

    /// Union-find closure of the given families, processed in iteration order.
    pub fn clusters_from_sets<'a>(
        &self,
        sets: impl IntoIterator<Item = &'a [VertexId]>,
    ) -> Vec<BTreeSet<VertexId>> {
        let ids: Vec<VertexId> = std::iter::once(VertexId::Origin)
            .chain(self.shape.cells().map(|(i, j)| VertexId::cell(i, j)))
            .collect();
        let index: BTreeMap<&VertexId, usize> =
            ids.iter().enumerate().map(|(k, v)| (v, k)).collect();
        let mut dsu = Dsu::new(ids.len());
        for set in sets {
            let mut it = set.iter().map(|v| index[v]);
            if let Some(first) = it.next() {
                for other in it {
                    dsu.union(first, other);
                }
            }
        }
        let mut classes: BTreeMap<usize, BTreeSet<VertexId>> = BTreeMap::new();
        for (k, v) in ids.iter().enumerate() {
            classes.entry(dsu.find(k)).or_default().insert(v.clone());
        }
        let mut out: Vec<_> = classes.into_values().collect();
        out.sort();
        out
    }
}

impl fmt::Display for LeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.row_strings().join("\n"))
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Deterministic stream of every Le-diagram whose shape fits in a
/// `rows x cols` box: shapes in lexicographic order, then fillings in binary
/// order (first box in reading order is the most significant bit).
#[derive(Debug, Clone)]
pub struct LeEnumerator {
    shapes: Vec<Shape>,
    shape_idx: usize,
    mask: u64,
}

impl LeEnumerator {
    pub fn new(rows: usize, cols: usize) -> Self {
        let shapes = Shape::all_in_box(rows, cols);
        assert!(
            shapes.iter().all(|s| s.size() < 64),
            "box too large to enumerate"
        );
        LeEnumerator {
            shapes,
            shape_idx: 0,
            mask: 0,
        }
    }
}

impl Iterator for LeEnumerator {
    type Item = LeDiagram;

    fn next(&mut self) -> Option<LeDiagram> {
        while let Some(shape) = self.shapes.get(self.shape_idx) {
            let n = shape.size();
            while self.mask < (1u64 << n) {
                let mask = self.mask;
                self.mask += 1;
                let mut bit = n;
                let filling: Vec<Vec<bool>> = shape
                    .row_lengths()
                    .iter()
                    .map(|&len| {
                        (0..len)
                            .map(|_| {
                                bit -= 1;
                                (mask >> bit) & 1 == 1
                            })
                            .collect()
                    })
                    .collect();
                if validate(shape, &filling).is_ok() {
                    return Some(LeDiagram {
                        shape: shape.clone(),
                        filling,
                    });
                }
            }
            self.shape_idx += 1;
            self.mask = 0;
        }
        None
    }
}

/// Every Le-diagram fitting in `rows x cols`, optionally capped.
pub fn enumerate(
    rows: usize,
    cols: usize,
    limit: Option<usize>,
) -> impl Iterator<Item = LeDiagram> {
    LeEnumerator::new(rows, cols).take(limit.unwrap_or(usize::MAX))
}

/// A random Le-diagram fitting in `rows x cols`: a uniformly chosen shape,
/// then boxes in reading order, each a fair coin unless the Le-property
/// forces a 1.
pub fn random_diagram<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> LeDiagram {
    let shapes = Shape::all_in_box(rows, cols);
    let shape = shapes[rng.gen_range(0..shapes.len())].clone();
    let mut filling: Vec<Vec<bool>> = shape
        .row_lengths()
        .iter()
        .map(|&l| vec![false; l])
        .collect();
    for (i, j) in shape.cells() {
        let one_left = filling[i - 1][..j - 1].iter().any(|&b| b);
        let one_above = (1..i).any(|ii| filling[ii - 1][j - 1]);
        filling[i - 1][j - 1] = (one_left && one_above) || rng.gen_bool(0.5);
    }
    LeDiagram { shape, filling }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "01010\n1101\n00\n01";

    fn sample() -> LeDiagram {
        LeDiagram::parse(SAMPLE).unwrap()
    }

    fn ids(list: &[&str]) -> BTreeSet<VertexId> {
        list.iter().map(|&s| VertexId::from(s)).collect()
    }

    #[test]
    fn parses_sample_diagram() {
        let d = sample();
        assert_eq!(d.shape().row_lengths(), &[5, 4, 2, 2]);
        let ones: Vec<Cell> = d.ones().collect();
        assert_eq!(ones, vec![(1, 2), (1, 4), (2, 1), (2, 2), (2, 4), (4, 2)]);
        assert_eq!(d.to_string(), SAMPLE);
        assert_eq!(d.to_compact(), "01010/1101/00/01");
        assert_eq!(LeDiagram::parse_compact("01010/1101/00/01").unwrap(), d);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            LeDiagram::parse("0\n00"),
            Err(LeError::NotAPartition { row: 2 })
        );
        assert_eq!(
            LeDiagram::parse("11\n10"),
            Err(LeError::LeViolation((2, 2)))
        );
        assert!(matches!(
            LeDiagram::parse("1x"),
            Err(LeError::BadChar { row: 1, ch: 'x' })
        ));
        assert!(matches!(
            LeDiagram::parse("1\n\n1"),
            Err(LeError::EmptyRow { row: 2 })
        ));
        let one = LeDiagram::parse("1").unwrap();
        assert_eq!(one.shape().row_lengths(), &[1]);
        assert_eq!(one.ones().count(), 1);
        let empty = LeDiagram::parse("").unwrap();
        assert!(empty.shape().is_empty());
    }

    #[test]
    fn validation_reports() {
        let d = sample();
        assert!(validate(d.shape(), d.filling()).is_ok());
        let sq = Shape::rectangle(2, 2);
        let r = validate(&sq, &[vec![true, true], vec![true, false]]);
        assert_eq!(r.violations, vec![(2, 2)]);
        let ones = vec![vec![true; 4]; 3];
        assert!(validate(&Shape::rectangle(3, 4), &ones).is_ok());
    }

    #[test]
    fn zero_box_cases_of_sample_diagram() {
        let d = sample();
        assert_eq!(d.zero_box_case((4, 1)), Ok(ZeroCase::Vertical));
        assert_eq!(d.zero_box_case((2, 3)), Ok(ZeroCase::Horizontal));
        assert_eq!(d.zero_box_case((1, 1)), Ok(ZeroCase::Hook));
        assert_eq!(d.zero_box_case((1, 2)), Err(LeError::BoxNotZero((1, 2))));
        assert_eq!(d.zero_box_case((3, 3)), Err(LeError::OutOfShape((3, 3))));
    }

    #[test]
    fn merge_sets_of_sample_diagram() {
        let d = sample();
        let expected = [
            ((1, 1), vec!["v0", "v1,1"]),
            ((1, 3), vec!["v1,2", "v1,3"]),
            ((1, 5), vec!["v1,4", "v1,5"]),
            ((2, 3), vec!["v2,2", "v2,3"]),
            ((3, 1), vec!["v2,1", "v3,1"]),
            ((3, 2), vec!["v2,2", "v3,2"]),
            ((4, 1), vec!["v2,1", "v3,1", "v4,1"]),
        ];
        let sets = d.merge_sets();
        assert_eq!(sets.len(), expected.len());
        for (set, (cell, members)) in sets.iter().zip(expected) {
            assert_eq!(set.zero_box, cell);
            assert_eq!(set.members, ids(&members));
        }
    }

    #[test]
    fn clusters_of_sample_diagram() {
        let clusters = sample().merge_clusters();
        let expected = vec![
            ids(&["v0", "v1,1"]),
            ids(&["v1,2", "v1,3"]),
            ids(&["v1,4", "v1,5"]),
            ids(&["v2,1", "v3,1", "v4,1"]),
            ids(&["v2,2", "v2,3", "v3,2"]),
            ids(&["v2,4"]),
            ids(&["v4,2"]),
        ];
        assert_eq!(clusters, expected);
    }

    #[test]
    fn clusters_trivial_cases() {
        let ones = LeDiagram::all_ones(Shape::rectangle(2, 3));
        assert!(ones.merge_clusters().iter().all(|c| c.len() == 1));
        assert_eq!(ones.merge_clusters().len(), 7);
        let zero = LeDiagram::parse("0").unwrap();
        assert_eq!(zero.merge_clusters(), vec![ids(&["v0", "v1,1"])]);
    }

    #[test]
    fn shapes_in_lex_order() {
        let s: Vec<Vec<usize>> = Shape::all_in_box(2, 2)
            .iter()
            .map(|s| s.row_lengths().to_vec())
            .collect();
        assert_eq!(
            s,
            vec![vec![], vec![1], vec![1, 1], vec![2], vec![2, 1], vec![2, 2]]
        );
    }

    #[test]
    fn enumeration_counts_and_order() {
        let all: Vec<String> = enumerate(1, 1, None).map(|d| d.to_compact()).collect();
        assert_eq!(all, vec!["", "0", "1"]);
        assert_eq!(enumerate(1, 2, None).count(), 7);
        assert_eq!(enumerate(2, 2, None).count(), 33);
        assert_eq!(enumerate(3, 3, Some(5)).count(), 5);
        assert_eq!(enumerate(0, 5, None).count(), 1);
    }
}

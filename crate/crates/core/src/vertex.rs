use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Quiver vertex label.
///
/// Vertices built from a Le-diagram are `v0` (the face at the northwest
/// corner) and `v{i},{j}` (the face at the southeast corner of box `(i, j)`).
/// Anything else read from a file is kept as an opaque label. The derived
/// order puts `v0` first, then cells in reading order, then labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexId {
    Origin,
    Cell(usize, usize),
    Label(String),
}

impl VertexId {
    pub fn cell(row: usize, col: usize) -> Self {
        VertexId::Cell(row, col)
    }

    pub fn as_cell(&self) -> Option<(usize, usize)> {
        match *self {
            VertexId::Cell(i, j) => Some((i, j)),
            _ => None,
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Origin => write!(f, "v0"),
            VertexId::Cell(i, j) => write!(f, "v{i},{j}"),
            VertexId::Label(s) => f.write_str(s),
        }
    }
}

impl FromStr for VertexId {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "v0" {
            return Ok(VertexId::Origin);
        }
        if let Some(rest) = s.strip_prefix('v') {
            if let Some((a, b)) = rest.split_once(',') {
                if let (Ok(i), Ok(j)) = (a.parse::<usize>(), b.parse::<usize>()) {
                    // only canonical spellings map to cells, so Display round-trips
                    if i >= 1 && j >= 1 && format!("v{i},{j}") == s {
                        return Ok(VertexId::Cell(i, j));
                    }
                }
            }
        }
        Ok(VertexId::Label(s.to_string()))
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        s.parse().unwrap()
    }
}

impl Serialize for VertexId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ok(s.parse().unwrap())
    }
}

//! Runs the three routes on one diagram and compares the results.

use serde_json::{json, Value};

use crate::construct::{quiver_from_le, quiver_via_script};
use crate::le::LeDiagram;
use crate::plabic::quiver_via_plabic;
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub diagram: String,
    /// Construction and plabic quivers isomorphic, frozen flags included.
    pub construction_plabic: bool,
    /// Script and construction quivers have isomorphic mutable parts.
    pub script_construction: bool,
    /// Script and plabic quivers have isomorphic mutable parts.
    pub script_plabic: bool,
    /// First error raised by any route.
    pub error: Option<String>,
}

impl Comparison {
    pub fn ok(&self) -> bool {
        self.error.is_none()
            && self.construction_plabic
            && self.script_construction
            && self.script_plabic
    }

    pub fn to_json(&self) -> Value {
        json!({
            "diagram": self.diagram,
            "construction_plabic": self.construction_plabic,
            "script_construction": self.script_construction,
            "script_plabic": self.script_plabic,
            "error": self.error,
        })
    }
}

pub fn compare(d: &LeDiagram) -> Comparison {
    let construction: Quiver<i64> = quiver_from_le(d);
    let mut out = Comparison {
        diagram: d.to_compact(),
        construction_plabic: false,
        script_construction: false,
        script_plabic: false,
        error: None,
    };
    let plabic = match quiver_via_plabic::<i64>(d) {
        Ok(q) => q,
        Err(e) => {
            out.error = Some(format!("plabic: {e}"));
            return out;
        }
    };
    let script = match quiver_via_script::<i64>(d) {
        Ok(q) => q.mutable_part(),
        Err(e) => {
            out.error = Some(format!("script: {e}"));
            return out;
        }
    };
    out.construction_plabic = construction.is_isomorphic(&plabic);
    out.script_construction = script.is_isomorphic(&construction.mutable_part());
    out.script_plabic = script.is_isomorphic(&plabic.mutable_part());
    out
}

//! Serializable views of library results, shared by the text and JSON
//! renderers and by the class-table cache.

use braid3::{BlockForm, ClassReport, CyclicClass, NormalForm};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicClassView {
    pub representative: NormalForm,
    pub size: usize,
    pub members: Vec<NormalForm>,
}

impl From<&CyclicClass> for CyclicClassView {
    fn from(c: &CyclicClass) -> Self {
        CyclicClassView {
            representative: c.representative(),
            size: c.len(),
            members: c.members().to_vec(),
        }
    }
}

/// A conjugacy class with its cyclic decomposition, independent of which
/// member was queried.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassView {
    pub representative: NormalForm,
    pub size: usize,
    pub coincides: bool,
    pub cyclic_classes: Vec<CyclicClassView>,
}

impl From<&ClassReport> for ClassView {
    fn from(r: &ClassReport) -> Self {
        ClassView {
            representative: r.representative(),
            size: r.conjugacy_class.len(),
            coincides: r.coincides,
            cyclic_classes: r.cyclic_classes.iter().map(|c| c.as_ref().into()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTable {
    pub length: usize,
    pub braid_count: usize,
    pub class_count: usize,
    pub classes: Vec<ClassView>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockFormView {
    pub start: u8,
    pub exponents: Vec<u32>,
    pub shape: braid3::LemmaShape,
}

impl From<&BlockForm> for BlockFormView {
    fn from(b: &BlockForm) -> Self {
        BlockFormView {
            start: b.start().index(),
            exponents: b.exponents().to_vec(),
            shape: b.shape(),
        }
    }
}

pub fn class_text(class: &ClassView, out: &mut String) {
    use std::fmt::Write;
    let _ = writeln!(
        out,
        "class {} ({} braids, {} cyclic class{})",
        class.representative,
        class.size,
        class.cyclic_classes.len(),
        if class.cyclic_classes.len() == 1 {
            ""
        } else {
            "es"
        }
    );
    for c in &class.cyclic_classes {
        let members: Vec<String> = c.members.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "  [{}]↻ = {{{}}}",
            c.representative,
            members.join(", ")
        );
    }
}

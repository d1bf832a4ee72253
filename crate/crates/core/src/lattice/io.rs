use serde::{Deserialize, Serialize};

use super::{FiniteLattice, FinitePoset};
use crate::error::Result;

/// Serialised lattice: element labels and covering pairs `(lower, upper)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    pub covers: Vec<(usize, usize)>,
}

impl FiniteLattice {
    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            elements: self.labels().to_vec(),
            covers: self.covers(),
        }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Self> {
        let p = FinitePoset::from_relations(j.elements.clone(), &j.covers)?;
        FiniteLattice::from_poset(&p)
    }

    /// Hasse diagram in DOT, bottom-up, covering edges only.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{}\" {{\n  rankdir=BT;\n", escape(name));
        for (i, l) in self.labels().iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{}\"];\n", escape(l)));
        }
        for (a, b) in self.covers() {
            s.push_str(&format!("  n{a} -> n{b} [arrowhead=none];\n"));
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

//! Serializable summaries of Schur rings.

use serde::Serialize;

use crate::algebra::SchurRing;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SRingFlags {
    pub rational: bool,
    pub central: bool,
    pub primitive: bool,
}

/// `λ_{ijk}` with `T̄_i T̄_j = Σ_k λ_{ijk} T̄_k`, nonzero entries only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SRingReport {
    pub group: String,
    pub field: String,
    pub dimension: usize,
    pub blocks: Vec<Vec<String>>,
    pub sizes: Vec<usize>,
    pub structure_constants: Vec<StructureConstant>,
    pub flags: SRingFlags,
}

impl SRingReport {
    pub fn new(s: &SchurRing) -> Result<Self> {
        let g = s.group();
        Ok(SRingReport {
            group: g.describe(),
            field: s.field().to_string(),
            dimension: s.dimension(),
            blocks: s
                .blocks()
                .iter()
                .map(|b| b.iter().map(|&x| g.label(x)).collect())
                .collect(),
            sizes: s.partition().sizes(),
            structure_constants: s
                .structure_constants()
                .into_iter()
                .map(|(i, j, k, value)| StructureConstant { i, j, k, value })
                .collect(),
            flags: SRingFlags {
                rational: s.is_rational()?,
                central: s.is_central(),
                primitive: s.is_primitive()?,
            },
        })
    }

    /// A plain-text rendering, one block per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} over {}, dimension {}\n", self.group, self.field, self.dimension);
        for (i, b) in self.blocks.iter().enumerate() {
            out.push_str(&format!("  T{i} ({}): {{{}}}\n", b.len(), b.join(", ")));
        }
        out.push_str(&format!(
            "  rational: {}, central: {}, primitive: {}\n",
            self.flags.rational, self.flags.central, self.flags.primitive
        ));
        out
    }
}

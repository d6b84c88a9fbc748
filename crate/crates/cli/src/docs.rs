//! JSON documents emitted by the commands.

use std::collections::BTreeMap;

use parahoric::momentgraph::{Character, MomentGraph};
use parahoric::{FixedPoint, LVector, ParahoricData, StratumKey};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub n: usize,
    pub k: usize,
    pub omega: usize,
    pub s: Vec<usize>,
}

impl From<&ParahoricData> for InstanceDoc {
    fn from(p: &ParahoricData) -> Self {
        Self {
            n: p.n(),
            k: p.k(),
            omega: p.omega(),
            s: p.s().to_vec(),
        }
    }
}

/// Tail lengths keyed by chain label.
pub fn lvector_doc(l: &LVector) -> BTreeMap<usize, usize> {
    l.0.iter().enumerate().map(|(j, &x)| (j + 1, x)).collect()
}

/// Stratum key with 1-based end vertices.
pub fn stratum_doc(key: &StratumKey) -> Vec<(usize, usize)> {
    key.0.iter().map(|&(v, len)| (v + 1, len)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternDoc {
    pub pattern: Vec<Vec<usize>>,
    pub lvector: BTreeMap<usize, usize>,
    pub energy: usize,
    pub stratum: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateDoc {
    pub instance: InstanceDoc,
    pub patterns: Vec<PatternDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareDoc {
    pub instance: InstanceDoc,
    pub poincare: String,
    pub coefficients: Vec<u64>,
}

/// Nonzero ε-coefficients keyed by index, plus the δ-coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterDoc {
    pub eps: BTreeMap<usize, i64>,
    pub delta: i64,
}

impl From<&Character> for CharacterDoc {
    fn from(c: &Character) -> Self {
        Self {
            eps: c
                .eps
                .iter()
                .enumerate()
                .filter(|&(_, &x)| x != 0)
                .map(|(a, &x)| (a + 1, x))
                .collect(),
            delta: c.delta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveDoc {
    pub donor: usize,
    pub recipient: usize,
    pub amount: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: usize,
    pub lvector: BTreeMap<usize, usize>,
    pub pattern: Vec<Vec<usize>>,
    pub energy: usize,
}

impl VertexDoc {
    fn new(id: usize, fp: &FixedPoint) -> Self {
        Self {
            id,
            lvector: lvector_doc(&fp.lvector),
            pattern: fp.pattern.0.clone(),
            energy: fp.energy,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub source: usize,
    pub target: usize,
    #[serde(rename = "move")]
    pub mv: MoveDoc,
    pub character: CharacterDoc,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
}

impl From<&MomentGraph> for GraphDoc {
    fn from(g: &MomentGraph) -> Self {
        Self {
            vertices: g
                .vertices
                .iter()
                .enumerate()
                .map(|(id, fp)| VertexDoc::new(id, fp))
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    source: e.source,
                    target: e.target,
                    mv: MoveDoc {
                        donor: e.mv.donor,
                        recipient: e.mv.recipient,
                        amount: e.mv.amount,
                    },
                    character: CharacterDoc::from(&e.character),
                    label: e.character.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentGraphDoc {
    pub instance: InstanceDoc,
    pub graph: GraphDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub index: Vec<usize>,
    pub top: Vec<Vec<usize>>,
    pub closure_size: usize,
    pub poincare: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentsDoc {
    pub instance: InstanceDoc,
    pub dimension: usize,
    pub components: Vec<ComponentDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntryDoc {
    pub from: Vec<Vec<usize>>,
    pub to: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionDoc {
    pub instance: InstanceDoc,
    pub s_prime: Vec<usize>,
    pub patterns: Vec<MapEntryDoc>,
    pub onto: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutDimDoc {
    pub instance: InstanceDoc,
    pub formula: usize,
    pub oracle: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatEntryDoc {
    pub i: usize,
    pub j: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatPointDoc {
    pub restriction: Vec<Vec<usize>>,
    pub tangent_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatComponentDoc {
    pub index: Vec<usize>,
    pub dim_vector: Vec<HatEntryDoc>,
    pub fixed_points: Vec<HatPointDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesingDoc {
    pub instance: InstanceDoc,
    pub aut_dim: usize,
    pub components: Vec<HatComponentDoc>,
}

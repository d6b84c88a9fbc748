//! Instances `(n, k, ω, S)`, the ambient representation `U_{ωn,S}` and its
//! chain decomposition.
//!
//! The ambient representation has the space `C^{ωn}` at every vertex of `Δ_r`
//! and the arrow `i → i+1` shifts basis indices by the gap `q_i = s_{i+1} − s_i`.
//! Every basis vector lies on exactly one chain: a maximal path of the shift
//! maps, starting at a vector outside all images and ending at a vector that is
//! killed. There are `n` chains, each of length `ωr`.

use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rep::{Arrow, CoordRep};

/// A validated instance `(n, k, ω, S)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParahoricData {
    n: usize,
    k: usize,
    omega: usize,
    s: Vec<usize>,
    gaps: Vec<usize>,
}

impl ParahoricData {
    /// Validates the inputs. `s` may be given in any order.
    pub fn new(n: usize, k: usize, omega: usize, s: &[usize]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroN);
        }
        if omega == 0 {
            return Err(Error::ZeroOmega);
        }
        if k > n {
            return Err(Error::KOutOfRange { k, n });
        }
        if s.is_empty() {
            return Err(Error::EmptyS);
        }
        if let Some(&value) = s.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::SOutOfRange { value, n });
        }
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateS(w[0]));
        }
        let r = sorted.len();
        let gaps = (0..r)
            .map(|i| {
                if i + 1 < r {
                    sorted[i + 1] - sorted[i]
                } else {
                    sorted[0] + n - sorted[i]
                }
            })
            .collect();
        Ok(Self {
            n,
            k,
            omega,
            s: sorted,
            gaps,
        })
    }

    /// The instance with `S = [n]` and the same `(n, k, ω)`.
    pub fn full(&self) -> Self {
        let s: Vec<usize> = (1..=self.n).collect();
        Self::new(self.n, self.k, self.omega, &s).expect("full instance is valid")
    }

    /// Same `(n, k, ω)` over a different subset.
    pub fn with_s(&self, s: &[usize]) -> Result<Self> {
        Self::new(self.n, self.k, self.omega, s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn omega(&self) -> usize {
        self.omega
    }

    /// The sorted elements `s_1 < … < s_r`.
    pub fn s(&self) -> &[usize] {
        &self.s
    }

    /// Gaps `q_i = s_{i+1} − s_i` with `s_{r+1} = s_1 + n`.
    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    pub fn r(&self) -> usize {
        self.s.len()
    }

    /// Per-vertex ambient dimension `ωn`.
    pub fn m(&self) -> usize {
        self.omega * self.n
    }

    /// Chain length `ωr`.
    pub fn chain_len(&self) -> usize {
        self.omega * self.r()
    }

    /// Target dimension `kω` at every vertex.
    pub fn kw(&self) -> usize {
        self.k * self.omega
    }

    /// `ωk(n − k)`.
    pub fn expected_dim(&self) -> usize {
        self.omega * self.k * (self.n - self.k)
    }

    pub fn gap(&self, vertex: usize) -> usize {
        self.gaps[vertex % self.r()]
    }

    /// Quiver vertex carrying the element `value` of `S`.
    pub fn vertex_of(&self, value: usize) -> Option<usize> {
        self.s.binary_search(&value).ok()
    }

    pub fn is_full(&self) -> bool {
        self.r() == self.n
    }

    /// Torus label `s_i − t + 1 (mod n)` of the basis vector `(i, t)`, in `[1, n]`.
    pub fn torus_label(&self, vertex: usize, index: usize) -> usize {
        let n = self.n as i64;
        let raw = self.s[vertex] as i64 - index as i64 + 1;
        ((raw - 1).rem_euclid(n) + 1) as usize
    }
}

/// Validates and builds an instance.
pub fn make_parahoric(n: usize, k: usize, omega: usize, s: &[usize]) -> Result<ParahoricData> {
    ParahoricData::new(n, k, omega, s)
}

/// A basis vector `v_index^{(vertex)}`: vertex is 0-based, index 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisVector {
    pub vertex: usize,
    pub index: usize,
}

/// The shift representation of `Δ_r`: arrow `i` sends `(i, t)` to
/// `(i+1, t + offsets[i])`, or to zero when that exceeds `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftRepresentation {
    pub r: usize,
    pub dim: usize,
    pub offsets: Vec<usize>,
}

impl ShiftRepresentation {
    /// Image of basis index `index` (1-based) under arrow `vertex`.
    pub fn apply(&self, vertex: usize, index: usize) -> Option<usize> {
        let t = index + self.offsets[vertex % self.r];
        (t <= self.dim).then_some(t)
    }

    /// The `dim × dim` 0/1 matrix of arrow `vertex`, rows indexed by target.
    pub fn arrow_matrix(&self, vertex: usize) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.dim]; self.dim];
        for l in 1..=self.dim {
            if let Some(k) = self.apply(vertex, l) {
                m[k - 1][l - 1] = 1;
            }
        }
        m
    }

    /// Follows `steps` arrows starting at `start`.
    pub fn compose(&self, start: BasisVector, steps: usize) -> Option<BasisVector> {
        let mut cur = start;
        for _ in 0..steps {
            let index = self.apply(cur.vertex, cur.index)?;
            cur = BasisVector {
                vertex: (cur.vertex + 1) % self.r,
                index,
            };
        }
        Some(cur)
    }

    /// Basis-aligned form for the generic oracles (basis position `p` is index `p + 1`).
    pub fn to_coord_rep(&self) -> CoordRep {
        let arrows = (0..self.r)
            .map(|i| Arrow {
                source: i,
                target: (i + 1) % self.r,
                map: (1..=self.dim).map(|t| self.apply(i, t).map(|x| x - 1)).collect(),
            })
            .collect();
        CoordRep::new(vec![self.dim; self.r], arrows)
    }
}

/// Builds `U_{ωn,S}`.
pub fn build_ambient(p: &ParahoricData) -> ShiftRepresentation {
    ShiftRepresentation {
        r: p.r(),
        dim: p.m(),
        offsets: p.gaps().to_vec(),
    }
}

/// One indecomposable summand of the ambient, as the list of basis vectors it
/// spans in arrow order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub label: usize,
    pub entries: Vec<BasisVector>,
}

impl Chain {
    pub fn start_vertex(&self) -> usize {
        self.entries[0].vertex
    }

    pub fn end_vertex(&self) -> usize {
        self.entries.last().expect("chains are nonempty").vertex
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The last `length` entries.
    pub fn tail(&self, length: usize) -> &[BasisVector] {
        &self.entries[self.entries.len() - length..]
    }
}

/// The `n` chains of `U_{ωn,S}`, sorted by label (`result[j - 1]` has label `j`).
pub fn chains(p: &ParahoricData) -> Result<Vec<Chain>> {
    let amb = build_ambient(p);
    let r = p.r();
    let mut out: Vec<Option<Chain>> = vec![None; p.n()];
    for vertex in 0..r {
        // Vectors at `vertex` outside the image of the incoming arrow.
        let incoming = p.gap(vertex + r - 1);
        for index in 1..=incoming.min(p.m()) {
            let label = p.torus_label(vertex, index);
            let mut entries = Vec::with_capacity(p.chain_len());
            let mut cur = Some(BasisVector { vertex, index });
            while let Some(b) = cur {
                if p.torus_label(b.vertex, b.index) != label {
                    return Err(Error::Inconsistent(format!(
                        "torus label changes along chain {label} at {b:?}"
                    )));
                }
                entries.push(b);
                cur = amb.compose(b, 1);
            }
            if entries.len() != p.chain_len() {
                return Err(Error::Inconsistent(format!(
                    "chain {label} has length {} instead of {}",
                    entries.len(),
                    p.chain_len()
                )));
            }
            let slot = &mut out[label - 1];
            if slot.is_some() {
                return Err(Error::Inconsistent(format!("label {label} used twice")));
            }
            *slot = Some(Chain { label, entries });
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(j, c)| c.ok_or_else(|| Error::Inconsistent(format!("no chain with label {}", j + 1))))
        .collect()
}

/// Per-vertex nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(r: usize) -> Self {
        Self(vec![0; r])
    }

    pub fn constant(r: usize, value: usize) -> Self {
        Self(vec![value; r])
    }
}

impl Add for &DimVector {
    type Output = DimVector;

    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// Dimension vector of the indecomposable of the given length ending at
/// `end_vertex`: vertex `v` counts the `p < length` with `end_vertex − p ≡ v`.
pub fn indec_dim_vector(p: &ParahoricData, end_vertex: usize, length: usize) -> Result<DimVector> {
    if length > p.chain_len() {
        return Err(Error::LengthOutOfRange {
            length,
            max: p.chain_len(),
        });
    }
    let r = p.r();
    let mut dims = vec![0; r];
    for step in 0..length {
        dims[(end_vertex + r * length - step) % r] += 1;
    }
    Ok(DimVector(dims))
}

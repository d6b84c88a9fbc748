//! Basis-aligned quiver representations: every arrow sends each distinguished
//! basis vector to another basis vector or to zero.
//!
//! Both the shift representations of `Δ_r` and the extended representations of
//! `Δ̂_r` have this form, as do their coordinate subrepresentations and the
//! corresponding quotients.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    /// `map[x]` is the image of basis position `x` at `source`.
    pub map: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordRep {
    dims: Vec<usize>,
    arrows: Vec<Arrow>,
}

impl CoordRep {
    pub fn new(dims: Vec<usize>, arrows: Vec<Arrow>) -> Self {
        for a in &arrows {
            assert!(a.source < dims.len() && a.target < dims.len());
            assert_eq!(a.map.len(), dims[a.source], "arrow map has wrong length");
            assert!(a.map.iter().flatten().all(|&y| y < dims[a.target]));
        }
        Self { dims, arrows }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.len()
    }

    /// Whether the per-vertex basis subsets span a subrepresentation.
    pub fn is_closed(&self, parts: &[Vec<usize>]) -> bool {
        let member = self.membership(parts);
        self.arrows.iter().all(|a| {
            parts[a.source]
                .iter()
                .all(|&x| a.map[x].is_none_or(|y| member[a.target][y]))
        })
    }

    fn membership(&self, parts: &[Vec<usize>]) -> Vec<Vec<bool>> {
        self.dims
            .iter()
            .zip(parts)
            .map(|(&d, part)| {
                let mut m = vec![false; d];
                for &x in part {
                    m[x] = true;
                }
                m
            })
            .collect()
    }

    /// The subrepresentation spanned by `parts` (which must be closed), with
    /// basis positions renumbered in increasing order.
    pub fn subrep(&self, parts: &[Vec<usize>]) -> CoordRep {
        let pos: Vec<Vec<Option<usize>>> = self.renumber(parts, true);
        let dims = parts.iter().map(Vec::len).collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                source: a.source,
                target: a.target,
                map: parts[a.source]
                    .iter()
                    .map(|&x| a.map[x].map(|y| pos[a.target][y].expect("subrepresentation is closed")))
                    .collect(),
            })
            .collect();
        CoordRep::new(dims, arrows)
    }

    /// The quotient by the subrepresentation spanned by `parts`.
    pub fn quotient(&self, parts: &[Vec<usize>]) -> CoordRep {
        let pos = self.renumber(parts, false);
        let dims: Vec<usize> = self.dims.iter().zip(parts).map(|(d, p)| d - p.len()).collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                source: a.source,
                target: a.target,
                map: (0..self.dims[a.source])
                    .filter(|&x| pos[a.source][x].is_some())
                    .map(|x| a.map[x].and_then(|y| pos[a.target][y]))
                    .collect(),
            })
            .collect();
        CoordRep::new(dims, arrows)
    }

    /// New positions of the basis vectors inside (`inside = true`) or outside `parts`.
    fn renumber(&self, parts: &[Vec<usize>], inside: bool) -> Vec<Vec<Option<usize>>> {
        let member = self.membership(parts);
        member
            .iter()
            .map(|m| {
                let mut next = 0;
                m.iter()
                    .map(|&is_in| {
                        (is_in == inside).then(|| {
                            next += 1;
                            next - 1
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Relabels the basis at each vertex: old position `x` becomes `perm[v][x]`.
    pub fn permuted(&self, perm: &[Vec<usize>]) -> CoordRep {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                let mut map = vec![None; self.dims[a.source]];
                for (x, y) in a.map.iter().enumerate() {
                    map[perm[a.source][x]] = y.map(|y| perm[a.target][y]);
                }
                Arrow {
                    source: a.source,
                    target: a.target,
                    map,
                }
            })
            .collect();
        CoordRep::new(self.dims.clone(), arrows)
    }
}

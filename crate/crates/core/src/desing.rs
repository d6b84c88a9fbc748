//! The extended quiver `Δ̂_r` and the desingularizations `X̂^I`.
//!
//! `Δ̂_r` has vertices `(i, j)` for `i ∈ Z_r`, `j ∈ [ωr]`, arrows
//! `a: (i, j) → (i, j+1)` and `b: (i, j) → (i+1, j−1)`. The functor `Λ` sends
//! a representation `M` to `M^{(i,j)} = image of the j−1 arrows out of vertex i`,
//! a subspace of `M` at vertex `i + j − 1`; `a` is the arrow of `M` and `b` is
//! the inclusion. For shift representations every such image is spanned by
//! the chain entries of position at least `j − 1`, so everything stays
//! basis-aligned.

use serde::{Deserialize, Serialize};

use crate::ambient::{chains, Chain, ParahoricData};
use crate::error::{Error, Result};
use crate::fixedpoints::{to_lvector, JugglingPattern, LVector};
use crate::geometry::{top_pattern, ComponentIndex};
use crate::oracle::{end_space_dim, enumerate_subreps, Budget, CoordinateSubrep};
use crate::rep::{Arrow, CoordRep};

/// Vertex bookkeeping for `Δ̂_r`; vertex `(i, j)` has id `i·ωr + j − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtendedQuiver {
    pub r: usize,
    pub levels: usize,
}

impl ExtendedQuiver {
    pub fn vertex_count(&self) -> usize {
        self.r * self.levels
    }

    /// `i` 0-based, `j` 1-based.
    pub fn id(&self, i: usize, j: usize) -> usize {
        (i % self.r) * self.levels + j - 1
    }

    pub fn coords(&self, id: usize) -> (usize, usize) {
        (id / self.levels, id % self.levels + 1)
    }

    /// Quiver vertex of `Δ_r` carrying the space at `(i, j)`.
    pub fn base_vertex(&self, id: usize) -> usize {
        let (i, j) = self.coords(id);
        (i + j - 1) % self.r
    }
}

/// Dimension vector on `Δ̂_r`, indexed by [`ExtendedQuiver::id`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HatDimVector(pub Vec<usize>);

/// `Λ(U_{ωn,S})` with its distinguished basis.
#[derive(Debug, Clone)]
pub struct HatRepresentation {
    data: ParahoricData,
    quiver: ExtendedQuiver,
    chains: Vec<Chain>,
    /// `(chain index, position)` per vertex, sorted by ambient basis index.
    basis: Vec<Vec<(usize, usize)>>,
    rep: CoordRep,
}

impl HatRepresentation {
    pub fn data(&self) -> &ParahoricData {
        &self.data
    }

    pub fn quiver(&self) -> ExtendedQuiver {
        self.quiver
    }

    pub fn rep(&self) -> &CoordRep {
        &self.rep
    }

    pub fn dims(&self) -> &[usize] {
        self.rep.dims()
    }

    /// Ambient basis index of basis position `x` at vertex `id`.
    pub fn ambient_index(&self, id: usize, x: usize) -> usize {
        let (c, pos) = self.basis[id][x];
        self.chains[c].entries[pos].index
    }

    /// `Λ` of the fixed point with tail lengths `l`: at `(i, j)`, the entries
    /// whose position inside the tail is at least `j − 1`.
    pub fn lambda(&self, l: &LVector) -> CoordinateSubrep {
        let len = self.data.chain_len();
        let parts = (0..self.quiver.vertex_count())
            .map(|id| {
                let (_, j) = self.quiver.coords(id);
                self.basis[id]
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(c, pos))| pos + l.0[c] >= len + j - 1)
                    .map(|(x, _)| x)
                    .collect()
            })
            .collect();
        CoordinateSubrep { parts }
    }
}

pub fn build_hat_ambient(p: &ParahoricData) -> Result<HatRepresentation> {
    let chains = chains(p)?;
    let (r, levels) = (p.r(), p.chain_len());
    let quiver = ExtendedQuiver { r, levels };
    let mut basis = Vec::with_capacity(quiver.vertex_count());
    for id in 0..quiver.vertex_count() {
        let (_, j) = quiver.coords(id);
        let at = quiver.base_vertex(id);
        let mut entries: Vec<(usize, usize)> = chains
            .iter()
            .enumerate()
            .flat_map(|(c, chain)| {
                chain
                    .entries
                    .iter()
                    .enumerate()
                    .skip(j - 1)
                    .filter(move |(_, b)| b.vertex == at)
                    .map(move |(pos, _)| (c, pos))
            })
            .collect();
        entries.sort_by_key(|&(c, pos)| chains[c].entries[pos].index);
        basis.push(entries);
    }
    let position = |id: usize, entry: (usize, usize)| basis[id].iter().position(|&e| e == entry);

    let mut arrows = Vec::new();
    for i in 0..r {
        for j in 1..levels {
            let (s, t) = (quiver.id(i, j), quiver.id(i, j + 1));
            let map = basis[s]
                .iter()
                .map(|&(c, pos)| (pos + 1 < levels).then(|| position(t, (c, pos + 1)).expect("a-image in basis")))
                .collect();
            arrows.push(Arrow {
                source: s,
                target: t,
                map,
            });
        }
        for j in 2..=levels {
            let (s, t) = (quiver.id(i, j), quiver.id(i + 1, j - 1));
            let map = basis[s]
                .iter()
                .map(|&e| Some(position(t, e).expect("b-image in basis")))
                .collect();
            arrows.push(Arrow {
                source: s,
                target: t,
                map,
            });
        }
    }
    let dims = basis.iter().map(Vec::len).collect();
    Ok(HatRepresentation {
        data: p.clone(),
        quiver,
        chains,
        basis,
        rep: CoordRep::new(dims, arrows),
    })
}

fn top_lvector(p: &ParahoricData, index: &ComponentIndex) -> Result<LVector> {
    to_lvector(p, &top_pattern(p, index)?)
}

/// Dimension vector of `Λ(U_I)`, where `U_I` is the top fixed point of `I`.
pub fn hat_dim_vector(hat: &HatRepresentation, index: &ComponentIndex) -> Result<HatDimVector> {
    let l = top_lvector(&hat.data, index)?;
    Ok(HatDimVector(hat.lambda(&l).dims()))
}

/// Torus fixed points of `X̂^I`, by brute force over the distinguished basis.
pub fn hat_fixed_points(
    hat: &HatRepresentation,
    index: &ComponentIndex,
    budget: Budget,
) -> Result<Vec<CoordinateSubrep>> {
    let dims = hat_dim_vector(hat, index)?;
    enumerate_subreps(&hat.rep, &dims.0, budget)
}

/// The level-one spaces of a point of `X̂^I`, as a juggling pattern.
pub fn restrict(hat: &HatRepresentation, point: &CoordinateSubrep) -> JugglingPattern {
    JugglingPattern(
        (0..hat.data.r())
            .map(|i| {
                let id = hat.quiver.id(i, 1);
                let mut part: Vec<usize> = point.parts[id].iter().map(|&x| hat.ambient_index(id, x)).collect();
                part.sort_unstable();
                part
            })
            .collect(),
    )
}

/// `dim Hom(V, M/V)` for a coordinate subrepresentation `V ⊆ M`.
pub fn tangent_dim(ambient: &CoordRep, sub: &CoordinateSubrep) -> usize {
    end_space_dim(&ambient.subrep(&sub.parts), &ambient.quotient(&sub.parts))
}

/// `dim End(Λ(U_{ωn,S}))`.
pub fn hat_aut_dim_oracle(hat: &HatRepresentation) -> usize {
    end_space_dim(&hat.rep, &hat.rep)
}

/// The induced point over `S′ ⊆ S`: the space at `(t, j′)` is the space over
/// `S` at `(i, j)`, where `i` carries `s′_t` and `j − 1` arrows of `Δ_r`
/// cover the same stretch as `j′ − 1` arrows of `Δ_{r′}`.
pub fn project_hat(
    from: &HatRepresentation,
    to: &HatRepresentation,
    point: &CoordinateSubrep,
) -> Result<CoordinateSubrep> {
    let (big, small) = (&from.data, &to.data);
    if (big.n(), big.k(), big.omega()) != (small.n(), small.k(), small.omega()) {
        return Err(Error::IncompatibleInstances);
    }
    let start: Vec<usize> = small
        .s()
        .iter()
        .map(|&x| big.vertex_of(x))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::NotSubset {
            sub: small.s().to_vec(),
            sup: big.s().to_vec(),
        })?;
    let mut parts = vec![Vec::new(); to.quiver.vertex_count()];
    for (t, &i) in start.iter().enumerate() {
        let mut distance = 0;
        let mut j = 1;
        let mut covered = 0;
        for j_sub in 1..=small.chain_len() {
            if j_sub > 1 {
                distance += small.gap(t + j_sub - 2);
                while covered < distance {
                    covered += big.gap(i + j - 1);
                    j += 1;
                }
                if covered != distance {
                    return Err(Error::Inconsistent("arrow paths over S and S' do not align".into()));
                }
            }
            let src = from.quiver.id(i, j);
            let dst = to.quiver.id(t, j_sub);
            let mut part = Vec::with_capacity(point.parts[src].len());
            for &x in &point.parts[src] {
                let index = from.ambient_index(src, x);
                let y = (0..to.basis[dst].len())
                    .find(|&y| to.ambient_index(dst, y) == index)
                    .ok_or_else(|| Error::Inconsistent(format!("basis index {index} missing at projected vertex")))?;
                part.push(y);
            }
            part.sort_unstable();
            parts[dst] = part;
        }
    }
    Ok(CoordinateSubrep { parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{build_ambient, make_parahoric};
    use crate::fixedpoints::Grassmannian;

    fn at(hat: &HatRepresentation, i: usize, j: usize) -> usize {
        hat.dims()[hat.quiver().id(i, j)]
    }

    #[test]
    fn worked_hat_ambients() {
        let hat = build_hat_ambient(&make_parahoric(2, 1, 1, &[1, 2]).unwrap()).unwrap();
        assert_eq!(
            (at(&hat, 0, 1), at(&hat, 1, 1), at(&hat, 0, 2), at(&hat, 1, 2)),
            (2, 2, 1, 1)
        );
        assert_eq!(hat.rep().arrows().len(), 4);
        let hat = build_hat_ambient(&make_parahoric(2, 1, 1, &[1]).unwrap()).unwrap();
        assert_eq!(hat.dims(), &[2]);
        let hat = build_hat_ambient(&make_parahoric(2, 1, 2, &[1]).unwrap()).unwrap();
        assert_eq!((at(&hat, 0, 1), at(&hat, 0, 2)), (4, 2));
    }

    #[test]
    fn worked_dim_vectors() {
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        let hat = build_hat_ambient(&p).unwrap();
        let d = hat_dim_vector(&hat, &ComponentIndex(vec![1])).unwrap();
        let q = hat.quiver();
        assert_eq!(
            (d.0[q.id(0, 1)], d.0[q.id(1, 1)], d.0[q.id(0, 2)], d.0[q.id(1, 2)]),
            (1, 1, 1, 0)
        );
        let p = make_parahoric(2, 1, 1, &[1]).unwrap();
        let hat = build_hat_ambient(&p).unwrap();
        assert_eq!(hat_dim_vector(&hat, &ComponentIndex(vec![1])).unwrap().0, vec![1]);
        assert_eq!(
            hat_dim_vector(&hat, &ComponentIndex(vec![2])),
            Err(Error::NotAComponent(vec![2]))
        );
        let p = make_parahoric(3, 0, 2, &[1, 3]).unwrap();
        let hat = build_hat_ambient(&p).unwrap();
        let d = hat_dim_vector(&hat, &ComponentIndex(vec![])).unwrap();
        assert!(d.0.iter().all(|&x| x == 0));
    }

    #[test]
    fn worked_fixed_points() {
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        let hat = build_hat_ambient(&p).unwrap();
        let pts = hat_fixed_points(&hat, &ComponentIndex(vec![1]), Budget::default()).unwrap();
        assert_eq!(pts.len(), 2);
        let mut res: Vec<JugglingPattern> = pts.iter().map(|v| restrict(&hat, v)).collect();
        res.sort();
        assert_eq!(
            res,
            vec![
                JugglingPattern(vec![vec![1], vec![2]]),
                JugglingPattern(vec![vec![2], vec![2]])
            ]
        );
        for v in &pts {
            assert_eq!(tangent_dim(hat.rep(), v), 1);
        }

        let p = make_parahoric(2, 1, 1, &[1]).unwrap();
        let hat = build_hat_ambient(&p).unwrap();
        assert_eq!(
            hat_fixed_points(&hat, &ComponentIndex(vec![1]), Budget::default())
                .unwrap()
                .len(),
            2
        );
        let p = make_parahoric(3, 0, 1, &[1, 2]).unwrap();
        let hat = build_hat_ambient(&p).unwrap();
        let pts = hat_fixed_points(&hat, &ComponentIndex(vec![]), Budget::default()).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(tangent_dim(hat.rep(), &pts[0]), 0);
    }

    #[test]
    fn singular_point_of_two_lines() {
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        let amb = build_ambient(&p).to_coord_rep();
        // ({2},{2}) as 0-based positions
        let v = CoordinateSubrep {
            parts: vec![vec![1], vec![1]],
        };
        assert_eq!(tangent_dim(&amb, &v), 2);
        let v = CoordinateSubrep {
            parts: vec![vec![0], vec![1]],
        };
        assert_eq!(tangent_dim(&amb, &v), 1);
    }

    #[test]
    fn restriction_inverts_lambda() {
        for (n, k, w, s) in [(2, 1, 1, vec![1, 2]), (3, 1, 2, vec![1, 3]), (3, 2, 2, vec![2])] {
            let p = make_parahoric(n, k, w, &s).unwrap();
            let hat = build_hat_ambient(&p).unwrap();
            let g = Grassmannian::new(&p).unwrap();
            for fp in g.points() {
                let v = hat.lambda(&fp.lvector);
                assert!(hat.rep().is_closed(&v.parts));
                assert_eq!(restrict(&hat, &v), fp.pattern);
            }
        }
    }

    #[test]
    fn a_arrows_surject() {
        let p = make_parahoric(3, 1, 2, &[1, 2]).unwrap();
        let hat = build_hat_ambient(&p).unwrap();
        let q = hat.quiver();
        for a in hat.rep().arrows() {
            let (i, j) = q.coords(a.source);
            if a.target == q.id(i, j + 1) && j < q.levels {
                let mut hit: Vec<usize> = a.map.iter().flatten().copied().collect();
                hit.sort_unstable();
                hit.dedup();
                assert_eq!(hit.len(), hat.dims()[a.target]);
            } else {
                assert!(a.map.iter().all(Option::is_some));
            }
        }
    }

    #[test]
    fn worked_aut_dims() {
        let hat = build_hat_ambient(&make_parahoric(2, 1, 1, &[1, 2]).unwrap()).unwrap();
        assert_eq!(hat_aut_dim_oracle(&hat), 4);
        let hat = build_hat_ambient(&make_parahoric(2, 1, 1, &[1]).unwrap()).unwrap();
        assert_eq!(hat_aut_dim_oracle(&hat), 4);
    }

    #[test]
    fn worked_hat_projection() {
        let big = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        let small = make_parahoric(2, 1, 1, &[1]).unwrap();
        let (hb, hs) = (build_hat_ambient(&big).unwrap(), build_hat_ambient(&small).unwrap());
        let index = ComponentIndex(vec![1]);
        let src = hat_fixed_points(&hb, &index, Budget::default()).unwrap();
        let dst = hat_fixed_points(&hs, &index, Budget::default()).unwrap();
        let mut image: Vec<CoordinateSubrep> = src.iter().map(|v| project_hat(&hb, &hs, v).unwrap()).collect();
        image.sort();
        image.dedup();
        assert_eq!(image, dst);
        for v in &src {
            assert_eq!(project_hat(&hb, &hb, v).unwrap(), *v);
        }
        assert!(matches!(project_hat(&hs, &hb, &dst[0]), Err(Error::NotSubset { .. })));
    }
}

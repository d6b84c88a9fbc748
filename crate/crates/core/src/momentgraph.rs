//! The moment graph: fixed points joined by one-dimensional torus orbits.
//!
//! Every orbit comes from a cut-and-paste move that takes the first `q`
//! entries of the tail of a donor chain `i` and appends `q` entries to the
//! tail of a recipient chain `j`, vertex by vertex. The basis-index offset `d`
//! between an added and the matching removed vector is the `C*`-weight of the
//! orbit parameter. The orbit is oriented from the endpoint with `d > 0`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ambient::{chains, Chain, ParahoricData};
use crate::error::{Error, Result};
use crate::fixedpoints::{FixedPoint, Grassmannian, JugglingPattern, LVector};

/// Cut-and-paste move `f_{i,j,q}`; chain labels are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub donor: usize,
    pub recipient: usize,
    pub amount: usize,
}

/// `Σ eps[a−1] ε_a + delta · δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub eps: Vec<i64>,
    pub delta: i64,
}

impl Character {
    /// Torus weight `ε_label + (index − 1) δ` of a basis vector.
    pub fn of_basis(n: usize, label: usize, index: usize) -> Self {
        let mut eps = vec![0; n];
        eps[label - 1] = 1;
        Self {
            eps,
            delta: index as i64 - 1,
        }
    }

    pub fn minus(&self, other: &Character) -> Character {
        Character {
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a - b).collect(),
            delta: self.delta - other.delta,
        }
    }

    /// Value on the cocharacter that is `λ` on every `γ`.
    pub fn diagonal_pairing(&self) -> i64 {
        self.eps.iter().sum::<i64>() + self.delta
    }

    /// One `+1` and one `−1` in the ε-part and nothing else.
    pub fn is_root_shaped(&self) -> bool {
        let plus = self.eps.iter().filter(|&&c| c == 1).count();
        let minus = self.eps.iter().filter(|&&c| c == -1).count();
        plus == 1 && minus == 1 && self.eps.iter().all(|&c| (-1..=1).contains(&c))
    }
}

/// Signed terms, positive ε first, e.g. `+e2 -e1 +3d`.
impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, usize)> = self
            .eps
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(a, &c)| (c, a + 1))
            .collect();
        terms.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let mut parts: Vec<String> = terms
            .iter()
            .map(|&(c, a)| match c {
                1 => format!("+e{a}"),
                -1 => format!("-e{a}"),
                c => format!("{c:+}e{a}"),
            })
            .collect();
        match self.delta {
            0 => {}
            1 => parts.push("+d".into()),
            -1 => parts.push("-d".into()),
            d => parts.push(format!("{d:+}d")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// A move applicable to some `ℓ`, with its result and index offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleMove {
    pub mv: Move,
    pub target: LVector,
    pub offset: i64,
    /// Weight of an added vector minus the weight of the matching removed one.
    pub character: Character,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub mv: Move,
    pub character: Character,
    pub offset: i64,
}

#[derive(Debug, Clone)]
pub struct MomentGraph {
    pub vertices: Vec<FixedPoint>,
    pub edges: Vec<Edge>,
}

impl MomentGraph {
    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.source] += 1;
        }
        deg
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.target] += 1;
        }
        deg
    }

    /// The subgraph induced on the given vertex indices, renumbered in order.
    pub fn induced(&self, keep: &[usize]) -> MomentGraph {
        let mut pos = vec![None; self.vertices.len()];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = Some(new);
        }
        MomentGraph {
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            edges: self
                .edges
                .iter()
                .filter_map(|e| {
                    Some(Edge {
                        source: pos[e.source]?,
                        target: pos[e.target]?,
                        ..e.clone()
                    })
                })
                .collect(),
        }
    }
}

pub fn admissible_moves(p: &ParahoricData, l: &LVector) -> Result<Vec<AdmissibleMove>> {
    moves_with(p, &chains(p)?, l)
}

fn moves_with(p: &ParahoricData, chains: &[Chain], l: &LVector) -> Result<Vec<AdmissibleMove>> {
    let (n, len) = (p.n(), p.chain_len());
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (li, lj) = (l.0[i], l.0[j]);
            'amount: for q in 1..=li.min(len - lj) {
                let mut offset = None;
                for step in 0..q {
                    let removed = chains[i].entries[len - li + step];
                    let added = chains[j].entries[len - lj - q + step];
                    if removed.vertex != added.vertex {
                        continue 'amount;
                    }
                    let d = added.index as i64 - removed.index as i64;
                    match offset {
                        None => offset = Some(d),
                        Some(prev) if prev != d => {
                            return Err(Error::Inconsistent(format!(
                                "index offset varies along move ({}, {}, {q})",
                                i + 1,
                                j + 1
                            )))
                        }
                        Some(_) => {}
                    }
                }
                let offset = offset.expect("q >= 1");
                let removed = chains[i].entries[len - li];
                let added = chains[j].entries[len - lj - q];
                let character =
                    Character::of_basis(n, j + 1, added.index).minus(&Character::of_basis(n, i + 1, removed.index));
                let mut target = l.0.clone();
                target[i] -= q;
                target[j] += q;
                out.push(AdmissibleMove {
                    mv: Move {
                        donor: i + 1,
                        recipient: j + 1,
                        amount: q,
                    },
                    target: LVector(target),
                    offset,
                    character,
                });
            }
        }
    }
    Ok(out)
}

pub fn build_graph(p: &ParahoricData) -> Result<MomentGraph> {
    graph_of(&Grassmannian::new(p)?)
}

/// The moment graph on the fixed points of `g`, vertices in the order of
/// [`Grassmannian::points`].
pub fn graph_of(g: &Grassmannian) -> Result<MomentGraph> {
    let p = g.data();
    let index: std::collections::HashMap<&LVector, usize> =
        g.points().iter().enumerate().map(|(a, fp)| (&fp.lvector, a)).collect();
    let mut edges = Vec::new();
    let mut incoming_expected = vec![0usize; g.len()];
    for (a, fp) in g.points().iter().enumerate() {
        for am in moves_with(p, g.chains(), &fp.lvector)? {
            let b = *index
                .get(&am.target)
                .ok_or_else(|| Error::Inconsistent(format!("move {:?} leaves the fixed-point set", am.mv)))?;
            match am.offset {
                0 => {
                    return Err(Error::Inconsistent(format!(
                        "move {:?} at {:?} has zero index offset",
                        am.mv, fp.lvector
                    )))
                }
                d if d > 0 => edges.push(Edge {
                    source: a,
                    target: b,
                    mv: am.mv,
                    character: am.character,
                    offset: d,
                }),
                _ => incoming_expected[a] += 1,
            }
        }
    }
    let graph = MomentGraph {
        vertices: g.points().to_vec(),
        edges,
    };
    if graph.in_degrees() != incoming_expected {
        return Err(Error::Inconsistent(
            "orbits seen from their two endpoints do not pair up".into(),
        ));
    }
    Ok(graph)
}

/// A partial order on `0..size`; `ge(a, b)` means `a ≥ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOrder {
    size: usize,
    rows: Vec<Vec<u64>>,
}

impl PartialOrder {
    fn empty(size: usize) -> Self {
        Self {
            size,
            rows: vec![vec![0; size.div_ceil(64)]; size],
        }
    }

    fn set(&mut self, a: usize, b: usize) {
        self.rows[a][b / 64] |= 1 << (b % 64);
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ge(&self, a: usize, b: usize) -> bool {
        self.rows[a][b / 64] >> (b % 64) & 1 == 1
    }

    /// Elements `b ≤ a`, ascending.
    pub fn below(&self, a: usize) -> Vec<usize> {
        (0..self.size).filter(|&b| self.ge(a, b)).collect()
    }

    /// Pairs `(a, b)` on which the two orders disagree, capped at `limit`.
    pub fn differences(&self, other: &PartialOrder, limit: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            if self.rows[a] == other.rows[a] {
                continue;
            }
            for b in 0..self.size {
                if self.ge(a, b) != other.ge(a, b) {
                    out.push((a, b));
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
        out
    }
}

/// Reflexive-transitive closure of the edges; a directed cycle is an error.
pub fn reachability_order(g: &MomentGraph) -> Result<PartialOrder> {
    let size = g.vertices.len();
    let mut succ = vec![Vec::new(); size];
    let mut indeg = vec![0; size];
    for e in &g.edges {
        succ[e.source].push(e.target);
        indeg[e.target] += 1;
    }
    let mut queue: VecDeque<usize> = (0..size).filter(|&v| indeg[v] == 0).collect();
    let mut topo = Vec::with_capacity(size);
    while let Some(v) = queue.pop_front() {
        topo.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if topo.len() != size {
        return Err(Error::Inconsistent("moment graph has a directed cycle".into()));
    }
    let mut order = PartialOrder::empty(size);
    for &v in topo.iter().rev() {
        order.set(v, v);
        let mut row = std::mem::take(&mut order.rows[v]);
        for &w in &succ[v] {
            for (x, y) in row.iter_mut().zip(&order.rows[w]) {
                *x |= y;
            }
        }
        order.rows[v] = row;
    }
    Ok(order)
}

/// Vertex-wise dominance on the given patterns.
pub fn dominance_order(patterns: &[JugglingPattern]) -> PartialOrder {
    let mut order = PartialOrder::empty(patterns.len());
    for (a, pa) in patterns.iter().enumerate() {
        for (b, pb) in patterns.iter().enumerate() {
            if pa.dominates(pb) {
                order.set(a, b);
            }
        }
    }
    order
}

/// Fixed points of the closure of the cell of `j`: all `J′ ≤ J`, sorted.
pub fn cell_closure(p: &ParahoricData, j: &JugglingPattern) -> Result<Vec<JugglingPattern>> {
    let g = Grassmannian::new(p)?;
    if g.index_of(j).is_none() {
        crate::fixedpoints::validate_pattern(p, j)?;
        return Err(Error::MalformedPattern("not a fixed point of this instance".into()));
    }
    Ok(g.points()
        .iter()
        .filter(|fp| j.dominates(&fp.pattern))
        .map(|fp| fp.pattern.clone())
        .collect())
}

/// The printed δ-coefficient `ℓ_i − ℓ_j − q` of a move out of `l`.
pub fn printed_delta(l: &LVector, mv: &Move) -> i64 {
    l.get(mv.donor) as i64 - l.get(mv.recipient) as i64 - mv.amount as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::make_parahoric;

    fn lv(v: &[usize]) -> LVector {
        LVector(v.to_vec())
    }

    fn mv(donor: usize, recipient: usize, amount: usize) -> Move {
        Move {
            donor,
            recipient,
            amount,
        }
    }

    #[test]
    fn worked_moves() {
        let p = make_parahoric(2, 1, 2, &[1]).unwrap();
        let moves = admissible_moves(&p, &lv(&[2, 0])).unwrap();
        let summary: Vec<(Move, LVector, i64)> = moves.iter().map(|m| (m.mv, m.target.clone(), m.offset)).collect();
        assert_eq!(
            summary,
            vec![(mv(1, 2, 1), lv(&[1, 1]), 3), (mv(1, 2, 2), lv(&[0, 2]), 1)]
        );
        let moves = admissible_moves(&p, &lv(&[1, 1])).unwrap();
        assert!(moves.iter().all(|m| m.offset < 0));
        let back = moves.iter().find(|m| m.mv == mv(2, 1, 1)).unwrap();
        assert_eq!(back.offset, -3);

        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        let moves = admissible_moves(&p, &lv(&[2, 0])).unwrap();
        assert_eq!(moves.len(), 1);
        assert_eq!((moves[0].mv, moves[0].offset), (mv(1, 2, 1), 1));
    }

    #[test]
    fn worked_graphs() {
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        let g = build_graph(&p).unwrap();
        assert_eq!(g.vertices.len(), 3);
        let mut labels: Vec<(LVector, LVector, String)> = g
            .edges
            .iter()
            .map(|e| {
                (
                    g.vertices[e.source].lvector.clone(),
                    g.vertices[e.target].lvector.clone(),
                    e.character.to_string(),
                )
            })
            .collect();
        labels.sort();
        assert_eq!(
            labels,
            vec![
                (lv(&[0, 2]), lv(&[1, 1]), "+e1 -e2 +d".to_string()),
                (lv(&[2, 0]), lv(&[1, 1]), "+e2 -e1 +d".to_string()),
            ]
        );

        let p = make_parahoric(2, 1, 1, &[1]).unwrap();
        let g = build_graph(&p).unwrap();
        assert_eq!(g.edges.len(), 1);
        let e = &g.edges[0];
        assert_eq!(g.vertices[e.source].lvector, lv(&[1, 0]));
        assert_eq!(g.vertices[e.target].lvector, lv(&[0, 1]));
        assert_eq!(e.character.to_string(), "+e2 -e1 +d");

        let p = make_parahoric(2, 1, 2, &[1]).unwrap();
        let g = build_graph(&p).unwrap();
        let energies: Vec<usize> = g.vertices.iter().map(|v| v.energy).collect();
        assert_eq!(g.out_degrees(), energies);
        assert_eq!(energies, vec![2, 1, 0]);
    }

    #[test]
    fn orders() {
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        let g = build_graph(&p).unwrap();
        let reach = reachability_order(&g).unwrap();
        let pats: Vec<JugglingPattern> = g.vertices.iter().map(|v| v.pattern.clone()).collect();
        assert_eq!(reach, dominance_order(&pats));
        // ({1},{2}), ({2},{1}) incomparable; ({2},{2}) below both
        assert!(!reach.ge(0, 1) && !reach.ge(1, 0));
        assert!(reach.ge(0, 2) && reach.ge(1, 2));

        let p = make_parahoric(2, 1, 2, &[1]).unwrap();
        let reach = reachability_order(&build_graph(&p).unwrap()).unwrap();
        assert!(reach.ge(0, 1) && reach.ge(1, 2) && reach.ge(0, 2));
        assert_eq!(reach.below(0), vec![0, 1, 2]);

        let p = make_parahoric(3, 0, 1, &[1]).unwrap();
        let reach = reachability_order(&build_graph(&p).unwrap()).unwrap();
        assert_eq!(reach.size(), 1);
        assert!(reach.ge(0, 0));
    }

    #[test]
    fn cycles_are_rejected() {
        let p = make_parahoric(2, 1, 1, &[1]).unwrap();
        let mut g = build_graph(&p).unwrap();
        let mut back = g.edges[0].clone();
        std::mem::swap(&mut back.source, &mut back.target);
        g.edges.push(back);
        assert!(matches!(reachability_order(&g), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn closures() {
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        let j = JugglingPattern(vec![vec![1], vec![2]]);
        assert_eq!(
            cell_closure(&p, &j).unwrap(),
            vec![j.clone(), JugglingPattern(vec![vec![2], vec![2]])]
        );
        let low = JugglingPattern(vec![vec![2], vec![2]]);
        assert_eq!(cell_closure(&p, &low).unwrap(), vec![low.clone()]);
        let p = make_parahoric(2, 1, 2, &[1]).unwrap();
        let j = JugglingPattern(vec![vec![1, 3]]);
        assert_eq!(cell_closure(&p, &j).unwrap().len(), 3);
    }

    #[test]
    fn printed_delta_for_full_s() {
        let p = make_parahoric(3, 1, 2, &[1, 2, 3]).unwrap();
        let g = build_graph(&p).unwrap();
        for e in &g.edges {
            let l = &g.vertices[e.source].lvector;
            assert_eq!(printed_delta(l, &e.mv), e.offset);
        }
        let p = make_parahoric(2, 1, 2, &[1]).unwrap();
        let moves = admissible_moves(&p, &lv(&[2, 0])).unwrap();
        assert_eq!(moves[0].offset, 3);
        assert_eq!(printed_delta(&lv(&[2, 0]), &moves[0].mv), 1);
    }

    #[test]
    fn character_display() {
        let c = Character {
            eps: vec![-1, 1, 0],
            delta: 3,
        };
        assert_eq!(c.to_string(), "+e2 -e1 +3d");
        let c = Character {
            eps: vec![1, 0, -1],
            delta: -2,
        };
        assert_eq!(c.to_string(), "+e1 -e3 -2d");
        assert!(c.is_root_shaped());
        assert_eq!(c.diagonal_pairing(), -2);
    }
}
